//! The atlas of 24 Kummer solution shapes for a concrete equation:
//! enumeration with termination status, counting of distinct well-defined
//! series, and grouping into solution orbits.
//!
//! Orbit grouping is symbolic first — each degeneracy case has a fixed
//! catalog mapping structural slots to solutions on the normal form, which
//! is pulled back through the reducing transform — and then cross-validated
//! numerically by constant-ratio checks.

use std::collections::HashMap;

use num_complex::Complex64;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::degeneracy::{degeneracy_case, CaseTag};
use crate::error::{Error, Result};
use crate::params::{EquationParams, SingPoint};
use crate::rational::{format_rational, Rational};
use crate::series::{series_status, EvalOptions, SeriesStatus};
use crate::solution::{SeriesPart, SolutionSpec, Term};
use crate::scalar::Scalar;
use crate::transforms::{compose, transform, FracLinTransform};

/// One of the 24 Kummer solution shapes of E(a, b, c).
#[derive(Debug, Clone, PartialEq)]
pub struct KummerDescriptor {
    /// structural slot 0..23
    pub slot: usize,
    /// stable output label k01..k24 (sorted by argument kind, then inner
    /// parameters)
    pub label: String,
    pub transform: FracLinTransform,
    /// inner parameters (A, B, C) of the series F(A, B; C; φ(z))
    pub inner: (Rational, Rational, Rational),
    pub status: SeriesStatus,
    pub base_point: SingPoint,
}

impl KummerDescriptor {
    /// The descriptor as an evaluable expression prefactor(z)·F(A,B;C;φ(z)).
    pub fn to_solution_spec(&self, p: &EquationParams) -> SolutionSpec {
        SolutionSpec::new(
            self.label.clone(),
            p.clone(),
            vec![Term::new(
                Scalar::one(),
                self.transform.prefactor.clone(),
                SeriesPart::Hpg {
                    a: self.inner.0.clone(),
                    b: self.inner.1.clone(),
                    c: self.inner.2.clone(),
                    arg: self.transform.phi,
                },
            )],
        )
    }

    pub fn is_defined(&self) -> bool {
        self.status != SeriesStatus::Undefined
    }

    pub fn is_terminating(&self) -> bool {
        matches!(self.status, SeriesStatus::Terminating(_))
    }

    /// Literal coincidence key: two descriptors with equal keys denote the
    /// same series (same argument, same prefactor exponents, same inner
    /// parameter multiset).
    fn literal_key(&self) -> String {
        let (lo, hi) = if self.inner.0 <= self.inner.1 {
            (&self.inner.0, &self.inner.1)
        } else {
            (&self.inner.1, &self.inner.0)
        };
        format!(
            "{}|{}|{}|{}|{}|{}",
            self.transform.phi.rank(),
            format_rational(&self.transform.alpha),
            format_rational(&self.transform.beta),
            format_rational(lo),
            format_rational(hi),
            format_rational(&self.inner.2),
        )
    }
}

impl Serialize for KummerDescriptor {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = ser.serialize_map(None)?;
        m.serialize_entry("label", &self.label)?;
        m.serialize_entry("slot", &self.slot)?;
        m.serialize_entry("argument", &format!("{}", self.transform.phi))?;
        let prefactor: Vec<serde_json::Value> = self
            .transform
            .prefactor
            .iter()
            .map(|(atom, e)| {
                serde_json::json!({"base": format!("{atom}"), "exponent": format_rational(e)})
            })
            .collect();
        m.serialize_entry("prefactor", &prefactor)?;
        m.serialize_entry("a", &format_rational(&self.inner.0))?;
        m.serialize_entry("b", &format_rational(&self.inner.1))?;
        m.serialize_entry("c", &format_rational(&self.inner.2))?;
        let (status, degree) = match self.status {
            SeriesStatus::NonTerminating => ("non-terminating", None),
            SeriesStatus::Terminating(d) => ("terminating", Some(d)),
            SeriesStatus::Undefined => ("undefined", None),
        };
        m.serialize_entry("status", status)?;
        if let Some(d) = degree {
            m.serialize_entry("degree", &d)?;
        }
        m.serialize_entry("base_point", &format!("{}", self.base_point))?;
        m.end()
    }
}

/// All 24 descriptors of E(a, b, c), in structural slot order, with labels
/// assigned by the stable output ordering (argument kind in the fixed
/// order, then the inner parameter pair).
pub fn enumerate_24(p: &EquationParams) -> Vec<KummerDescriptor> {
    let mut descs: Vec<KummerDescriptor> = (0..24)
        .map(|slot| {
            let t = transform(slot, false, p);
            let inner = (
                t.target_params.a.clone(),
                t.target_params.b.clone(),
                t.target_params.c.clone(),
            );
            let status = series_status(&inner.0, &inner.1, &inner.2);
            KummerDescriptor {
                slot,
                label: String::new(),
                base_point: t.phi.base_point(),
                status,
                inner,
                transform: t,
            }
        })
        .collect();

    let mut order: Vec<usize> = (0..24).collect();
    order.sort_by(|&i, &j| {
        let key = |d: &KummerDescriptor| {
            let (lo, hi) = if d.inner.0 <= d.inner.1 {
                (d.inner.0.clone(), d.inner.1.clone())
            } else {
                (d.inner.1.clone(), d.inner.0.clone())
            };
            (d.transform.phi.rank(), lo, hi, d.slot)
        };
        key(&descs[i]).cmp(&key(&descs[j]))
    });
    for (rank, &slot) in order.iter().enumerate() {
        descs[slot].label = format!("k{:02}", rank + 1);
    }
    descs
}

/// Number of distinct well-defined series among the 24 (literal
/// coincidence; constant terminating series with different parameters or
/// argument stay distinct).
pub fn distinct_series_count(descs: &[KummerDescriptor]) -> usize {
    let mut keys: Vec<String> = descs
        .iter()
        .filter(|d| d.is_defined())
        .map(|d| d.literal_key())
        .collect();
    keys.sort();
    keys.dedup();
    keys.len()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OrbitKind {
    Terminating,
    NonTerminating,
    LogarithmicCompanion,
}

/// A maximal set of descriptors representing one Gauss hypergeometric
/// solution (equal up to constant factors).
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionOrbit {
    /// structural slots of the defined members
    pub members: Vec<usize>,
    pub kind: OrbitKind,
    /// distinct terminating expressions
    pub terminating_expressions: usize,
    /// distinct non-terminating expressions
    pub nonterminating_expressions: usize,
}

impl SolutionOrbit {
    pub fn distinct_series(&self) -> usize {
        self.terminating_expressions + self.nonterminating_expressions
    }

    /// Table signature "t+u" or a bare count for purely non-terminating
    /// orbits.
    pub fn signature(&self) -> String {
        if self.terminating_expressions > 0 {
            format!(
                "{}+{}",
                self.terminating_expressions, self.nonterminating_expressions
            )
        } else {
            format!("{}", self.nonterminating_expressions)
        }
    }
}

impl Serialize for SolutionOrbit {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = ser.serialize_map(None)?;
        m.serialize_entry("members", &self.members)?;
        m.serialize_entry("kind", &self.kind)?;
        m.serialize_entry("terminating_expressions", &self.terminating_expressions)?;
        m.serialize_entry(
            "nonterminating_expressions",
            &self.nonterminating_expressions,
        )?;
        m.serialize_entry("signature", &self.signature())?;
        m.end()
    }
}

const B1: [usize; 4] = [0, 1, 2, 3];
const B2: [usize; 4] = [4, 5, 6, 7];
const B3: [usize; 4] = [8, 9, 10, 11];
const B4: [usize; 4] = [12, 13, 14, 15];
const B5: [usize; 4] = [16, 17, 18, 19];
const B6: [usize; 4] = [20, 21, 22, 23];

/// Slot partition of the normal form equation per case: which slots carry
/// the same solution.
fn base_partition(tag: CaseTag) -> Vec<Vec<usize>> {
    let blocks = |bs: &[&[usize]]| bs.iter().flat_map(|b| b.iter().copied()).collect::<Vec<_>>();
    match tag {
        CaseTag::Generic | CaseTag::Case2 => vec![
            B1.to_vec(),
            B2.to_vec(),
            B3.to_vec(),
            B4.to_vec(),
            B5.to_vec(),
            B6.to_vec(),
        ],
        // the terminating solution collects the slots of its exponent at
        // every point; the subdominant slots stay separate. The normal form
        // E(−n, a, c) carries the integer in the first parameter, so the
        // slots at infinity come from the first exponent family there;
        // E(a, −n, m+1) carries it in the second.
        CaseTag::Case1 => vec![
            blocks(&[&B1, &B3, &B5]),
            B2.to_vec(),
            B4.to_vec(),
            B6.to_vec(),
        ],
        CaseTag::Case3 => vec![
            blocks(&[&B1, &B3, &B6]),
            B2.to_vec(),
            B4.to_vec(),
            B5.to_vec(),
        ],
        // the two invariant lines split the first block between them
        CaseTag::Case4 => vec![
            {
                let mut v = vec![0, 2];
                v.extend_from_slice(&B3);
                v.extend_from_slice(&B5);
                v
            },
            {
                let mut v = vec![1, 3];
                v.extend_from_slice(&B4);
                v.extend_from_slice(&B6);
                v
            },
            B2.to_vec(),
        ],
        CaseTag::Case5 => vec![
            vec![0, 2, 8, 9, 10, 11, 16, 18],
            vec![1, 3, 12, 14, 20, 21, 22, 23],
            vec![4, 5, 6, 7, 13, 15, 17, 19],
        ],
        CaseTag::Case6 => vec![
            blocks(&[&B1, &B3, &B5]),
            B2.to_vec(),
            B4.to_vec(),
            B6.to_vec(),
        ],
    }
}

/// Group the 24 descriptors into solution orbits.
///
/// The case catalog is applied on the normal form and pulled back through
/// the reducing transform; orbits sharing a literally coincident defined
/// member are merged; the result is confirmed numerically by constant-ratio
/// checks at shared sample points.
pub fn group_orbits(
    p: &EquationParams,
    descs: &[KummerDescriptor],
) -> Result<Vec<SolutionOrbit>> {
    let dc = degeneracy_case(p);
    let reduction_index = dc.reduction.slot * 2 + usize::from(dc.reduction.swap_ab);
    let base = base_partition(dc.tag);

    // pull the normal-form partition back to p's slots
    let mut orbit_of = [usize::MAX; 24];
    for (oid, group) in base.iter().enumerate() {
        for &j in group {
            let h = compose(2 * j, reduction_index);
            orbit_of[h / 2] = oid;
        }
    }
    debug_assert!(orbit_of.iter().all(|&o| o != usize::MAX));

    // merge orbits connected by literal coincidence of defined members
    let mut parent: Vec<usize> = (0..base.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut by_key: HashMap<String, usize> = HashMap::new();
    for d in descs.iter().filter(|d| d.is_defined()) {
        let key = d.literal_key();
        let o = orbit_of[d.slot];
        if let Some(&other) = by_key.get(&key) {
            let (ra, rb) = (find(&mut parent, o), find(&mut parent, other));
            if ra != rb {
                parent[ra] = rb;
            }
        } else {
            by_key.insert(key, o);
        }
    }

    // collect defined members per merged orbit
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for d in descs.iter().filter(|d| d.is_defined()) {
        let root = find(&mut parent, orbit_of[d.slot]);
        groups.entry(root).or_default().push(d.slot);
    }
    let mut orbits: Vec<SolutionOrbit> = Vec::new();
    let mut roots: Vec<usize> = groups.keys().copied().collect();
    roots.sort_by_key(|r| groups[r].iter().min().copied().unwrap_or(usize::MAX));
    for root in roots {
        let mut members = groups.remove(&root).unwrap();
        members.sort();
        // distinct expression counts by status
        let mut keys_t: Vec<String> = Vec::new();
        let mut keys_n: Vec<String> = Vec::new();
        for &s in &members {
            let d = &descs[s];
            if d.is_terminating() {
                keys_t.push(d.literal_key());
            } else {
                keys_n.push(d.literal_key());
            }
        }
        keys_t.sort();
        keys_t.dedup();
        keys_n.sort();
        keys_n.dedup();
        let has_term = !keys_t.is_empty();
        let kind = if has_term {
            OrbitKind::Terminating
        } else {
            let at_log_point = members.iter().any(|&s| {
                crate::degeneracy::is_logarithmic_point(p, descs[s].base_point)
            });
            if at_log_point {
                OrbitKind::LogarithmicCompanion
            } else {
                OrbitKind::NonTerminating
            }
        };
        orbits.push(SolutionOrbit {
            members,
            kind,
            terminating_expressions: keys_t.len(),
            nonterminating_expressions: keys_n.len(),
        });
    }

    confirm_orbits_numerically(p, descs, &orbits)?;
    Ok(orbits)
}

/// Candidate sample points covering neighbourhoods of all three singular
/// points, all in the upper half-plane.
fn candidate_points() -> Vec<Complex64> {
    let mut pts = Vec::new();
    let phi = 0.6180339887498949_f64;
    let sq2 = 0.41421356237309515_f64;
    for j in 1..=14 {
        let x = 0.1 + 0.75 * ((j as f64) * phi).fract();
        let y = 0.1 + 0.45 * ((j as f64) * sq2).fract();
        let u = Complex64::new(x, y);
        pts.push(u); // near 0/1
        pts.push(Complex64::new(-x, y)); // left half
        pts.push(Complex64::new(1.0 + x, y)); // right of z = 1
        pts.push(-1.0 / u); // large |z|
    }
    pts
}

/// Check that members of each orbit are pairwise proportional where their
/// domains overlap (constant ratio at two shared points).
fn confirm_orbits_numerically(
    p: &EquationParams,
    descs: &[KummerDescriptor],
    orbits: &[SolutionOrbit],
) -> Result<()> {
    let opts = EvalOptions::default();
    let pool = candidate_points();
    for orbit in orbits {
        if orbit.members.len() < 2 {
            continue;
        }
        let specs: Vec<SolutionSpec> = orbit
            .members
            .iter()
            .map(|&s| descs[s].to_solution_spec(p))
            .collect();
        let mut validated = vec![false; specs.len()];
        validated[0] = true;
        loop {
            let mut progressed = false;
            for i in 0..specs.len() {
                if validated[i] {
                    continue;
                }
                for j in 0..specs.len() {
                    if !validated[j] {
                        continue;
                    }
                    let mut ratios: Vec<Complex64> = Vec::new();
                    for &z in &pool {
                        if ratios.len() >= 2 {
                            break;
                        }
                        if !specs[i].domain_ok(z) || !specs[j].domain_ok(z) {
                            continue;
                        }
                        let vi = match specs[i].eval(z, &opts) {
                            Ok(v) => v,
                            Err(_) => continue,
                        };
                        let vj = match specs[j].eval(z, &opts) {
                            Ok(v) => v,
                            Err(_) => continue,
                        };
                        if vj.norm() < 1e-12 {
                            continue;
                        }
                        ratios.push(vi / vj);
                    }
                    if ratios.len() == 2 {
                        let dev = (ratios[0] - ratios[1]).norm()
                            / ratios[0].norm().max(ratios[1].norm()).max(1e-30);
                        if dev > 1e-6 {
                            return Err(Error::InconsistentOrbit(format!(
                                "slots {} and {} grouped together but ratio varies by {dev:.3e}",
                                orbit.members[i], orbit.members[j]
                            )));
                        }
                        validated[i] = true;
                        progressed = true;
                        break;
                    }
                }
            }
            if validated.iter().all(|&v| v) {
                break;
            }
            if !progressed {
                // no shared domain points left to compare; accept the
                // symbolic grouping for the remaining members
                break;
            }
        }
    }
    Ok(())
}
