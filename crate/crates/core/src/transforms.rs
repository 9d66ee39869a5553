//! The fractional-linear transformation group acting on hypergeometric
//! equations, and the 24 structural slots it carves out.
//!
//! Each slot is one Kummer solution shape: a Möbius argument, a power
//! prefactor, and an inner parameter triple that is an affine function of
//! (a, b, c). Together with the a↔b swap the slots generate a group of 48
//! parameter maps; closure is checked exhaustively in the tests.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::params::{EquationParams, SingPoint};
use crate::rational::{rat, Rational};

/// The six Möbius arguments, in fixed order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ArgKind {
    /// z
    Z,
    /// z/(z−1)
    ZOverZm1,
    /// 1−z
    OneMinusZ,
    /// 1−1/z
    OneMinusInvZ,
    /// 1/z
    InvZ,
    /// 1/(1−z)
    InvOneMinusZ,
}

impl ArgKind {
    pub const ALL: [ArgKind; 6] = [
        ArgKind::Z,
        ArgKind::ZOverZm1,
        ArgKind::OneMinusZ,
        ArgKind::OneMinusInvZ,
        ArgKind::InvZ,
        ArgKind::InvOneMinusZ,
    ];

    /// Rank in the fixed ordering (used for stable output ordering).
    pub fn rank(self) -> usize {
        ArgKind::ALL.iter().position(|&k| k == self).unwrap()
    }

    /// The singular point at which a series in this argument is local.
    pub fn base_point(self) -> SingPoint {
        match self {
            ArgKind::Z | ArgKind::ZOverZm1 => SingPoint::Zero,
            ArgKind::OneMinusZ | ArgKind::OneMinusInvZ => SingPoint::One,
            ArgKind::InvZ | ArgKind::InvOneMinusZ => SingPoint::Infinity,
        }
    }

    /// Evaluate the argument map and its first two derivatives at z.
    pub fn eval(self, z: Complex64) -> (Complex64, Complex64, Complex64) {
        let one = Complex64::new(1.0, 0.0);
        match self {
            ArgKind::Z => (z, one, Complex64::new(0.0, 0.0)),
            ArgKind::ZOverZm1 => {
                let d = z - 1.0;
                (z / d, -1.0 / (d * d), 2.0 / (d * d * d))
            }
            ArgKind::OneMinusZ => (one - z, -one, Complex64::new(0.0, 0.0)),
            ArgKind::OneMinusInvZ => (one - 1.0 / z, 1.0 / (z * z), -2.0 / (z * z * z)),
            ArgKind::InvZ => (1.0 / z, -1.0 / (z * z), 2.0 / (z * z * z)),
            ArgKind::InvOneMinusZ => {
                let d = one - z;
                (1.0 / d, 1.0 / (d * d), 2.0 / (d * d * d))
            }
        }
    }

    /// Point correspondence: the x-plane singular point that the z-plane
    /// point `p` is carried to under this argument map.
    pub fn maps_point_to(self, p: SingPoint) -> SingPoint {
        use SingPoint::*;
        match (self, p) {
            (ArgKind::Z, q) => q,
            (ArgKind::ZOverZm1, Zero) => Zero,
            (ArgKind::ZOverZm1, One) => Infinity,
            (ArgKind::ZOverZm1, Infinity) => One,
            (ArgKind::OneMinusZ, Zero) => One,
            (ArgKind::OneMinusZ, One) => Zero,
            (ArgKind::OneMinusZ, Infinity) => Infinity,
            (ArgKind::OneMinusInvZ, Zero) => Infinity,
            (ArgKind::OneMinusInvZ, One) => Zero,
            (ArgKind::OneMinusInvZ, Infinity) => One,
            (ArgKind::InvZ, Zero) => Infinity,
            (ArgKind::InvZ, One) => One,
            (ArgKind::InvZ, Infinity) => Zero,
            (ArgKind::InvOneMinusZ, Zero) => One,
            (ArgKind::InvOneMinusZ, One) => Infinity,
            (ArgKind::InvOneMinusZ, Infinity) => Zero,
        }
    }
}

impl std::fmt::Display for ArgKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            ArgKind::Z => "z",
            ArgKind::ZOverZm1 => "z/(z-1)",
            ArgKind::OneMinusZ => "1-z",
            ArgKind::OneMinusInvZ => "1-1/z",
            ArgKind::InvZ => "1/z",
            ArgKind::InvOneMinusZ => "1/(1-z)",
        };
        write!(f, "{s}")
    }
}

/// Base of a power prefactor. The sign choices (−z vs z, z−1 vs 1−z) fix
/// principal branches so the solution identities hold on the upper
/// half-plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Atom {
    Z,
    NegZ,
    OneMinusZ,
    ZMinusOne,
}

impl Atom {
    pub fn eval(self, z: Complex64) -> Complex64 {
        let one = Complex64::new(1.0, 0.0);
        match self {
            Atom::Z => z,
            Atom::NegZ => -z,
            Atom::OneMinusZ => one - z,
            Atom::ZMinusOne => z - one,
        }
    }

    /// d(atom)/dz.
    pub fn derivative(self) -> f64 {
        match self {
            Atom::Z | Atom::ZMinusOne => 1.0,
            Atom::NegZ | Atom::OneMinusZ => -1.0,
        }
    }

    /// Which singular point the atom vanishes at.
    pub fn vanishes_at(self) -> SingPoint {
        match self {
            Atom::Z | Atom::NegZ => SingPoint::Zero,
            Atom::OneMinusZ | Atom::ZMinusOne => SingPoint::One,
        }
    }
}

impl std::fmt::Display for Atom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Atom::Z => "z",
            Atom::NegZ => "-z",
            Atom::OneMinusZ => "1-z",
            Atom::ZMinusOne => "z-1",
        };
        write!(f, "{s}")
    }
}

/// One element of the 48-group, together with the analytic data of the
/// corresponding Kummer solution shape: the solution is
/// `prefactor(z) · F(A, B; C; φ(z))` with (A, B, C) = `target_params`.
#[derive(Debug, Clone, PartialEq)]
pub struct FracLinTransform {
    /// structural slot 0..24
    pub slot: usize,
    pub swap_ab: bool,
    pub phi: ArgKind,
    /// exponent of z in the prefactor z^{−α}
    pub alpha: Rational,
    /// exponent of (1−z) in the prefactor (1−z)^{−β}
    pub beta: Rational,
    /// branch-precise prefactor atoms with exponents
    pub prefactor: Vec<(Atom, Rational)>,
    pub target_params: EquationParams,
}

/// Inner data of a slot before ordering: argument, prefactor, parameters.
fn slot_recipe(slot: usize, p: &EquationParams) -> (ArgKind, Vec<(Atom, Rational)>, EquationParams) {
    let a = &p.a;
    let b = &p.b;
    let c = &p.c;
    let one = rat(1);
    match slot {
        // local series at z = 0, exponent 0
        0 => (ArgKind::Z, vec![], EquationParams::new(a.clone(), b.clone(), c.clone())),
        1 => (ArgKind::Z,
            vec![(Atom::OneMinusZ, c - a - b)],
            EquationParams::new(c - a, c - b, c.clone()),
        ),
        2 => (ArgKind::ZOverZm1,
            vec![(Atom::OneMinusZ, -a)],
            EquationParams::new(a.clone(), c - b, c.clone()),
        ),
        3 => (ArgKind::ZOverZm1,
            vec![(Atom::OneMinusZ, -b)],
            EquationParams::new(c - a, b.clone(), c.clone()),
        ),
        // z = 0, exponent 1−c
        4 => (ArgKind::Z,
            vec![(Atom::Z, &one - c)],
            EquationParams::new(&one + a - c, &one + b - c, rat(2) - c),
        ),
        5 => (ArgKind::Z,
            vec![(Atom::Z, &one - c), (Atom::OneMinusZ, c - a - b)],
            EquationParams::new(&one - a, &one - b, rat(2) - c),
        ),
        6 => (ArgKind::ZOverZm1,
            vec![(Atom::Z, &one - c), (Atom::OneMinusZ, c - a - &one)],
            EquationParams::new(&one + a - c, &one - b, rat(2) - c),
        ),
        7 => (ArgKind::ZOverZm1,
            vec![(Atom::Z, &one - c), (Atom::OneMinusZ, c - b - &one)],
            EquationParams::new(&one - a, &one + b - c, rat(2) - c),
        ),
        // z = 1, exponent 0
        8 => (ArgKind::OneMinusZ,
            vec![],
            EquationParams::new(a.clone(), b.clone(), &one + a + b - c),
        ),
        9 => (ArgKind::OneMinusZ,
            vec![(Atom::Z, &one - c)],
            EquationParams::new(&one + a - c, &one + b - c, &one + a + b - c),
        ),
        10 => (ArgKind::OneMinusInvZ,
            vec![(Atom::Z, -a)],
            EquationParams::new(a.clone(), &one + a - c, &one + a + b - c),
        ),
        11 => (ArgKind::OneMinusInvZ,
            vec![(Atom::Z, -b)],
            EquationParams::new(b.clone(), &one + b - c, &one + a + b - c),
        ),
        // z = 1, exponent c−a−b
        12 => (ArgKind::OneMinusZ,
            vec![(Atom::OneMinusZ, c - a - b)],
            EquationParams::new(c - a, c - b, &one + c - a - b),
        ),
        13 => (ArgKind::OneMinusZ,
            vec![(Atom::Z, &one - c), (Atom::OneMinusZ, c - a - b)],
            EquationParams::new(&one - a, &one - b, &one + c - a - b),
        ),
        14 => (ArgKind::OneMinusInvZ,
            vec![(Atom::Z, a - c), (Atom::OneMinusZ, c - a - b)],
            EquationParams::new(&one - a, c - a, &one + c - a - b),
        ),
        15 => (ArgKind::OneMinusInvZ,
            vec![(Atom::Z, b - c), (Atom::OneMinusZ, c - a - b)],
            EquationParams::new(&one - b, c - b, &one + c - a - b),
        ),
        // z = ∞, exponent a
        16 => (ArgKind::InvZ,
            vec![(Atom::NegZ, -a)],
            EquationParams::new(a.clone(), &one + a - c, &one + a - b),
        ),
        17 => (ArgKind::InvZ,
            vec![(Atom::NegZ, b - c), (Atom::OneMinusZ, c - a - b)],
            EquationParams::new(&one - b, c - b, &one + a - b),
        ),
        18 => (ArgKind::InvOneMinusZ,
            vec![(Atom::OneMinusZ, -a)],
            EquationParams::new(a.clone(), c - b, &one + a - b),
        ),
        19 => (ArgKind::InvOneMinusZ,
            vec![(Atom::NegZ, &one - c), (Atom::OneMinusZ, c - a - &one)],
            EquationParams::new(&one + a - c, &one - b, &one + a - b),
        ),
        // z = ∞, exponent b
        20 => (ArgKind::InvZ,
            vec![(Atom::NegZ, -b)],
            EquationParams::new(b.clone(), &one + b - c, &one + b - a),
        ),
        21 => (ArgKind::InvZ,
            vec![(Atom::NegZ, a - c), (Atom::OneMinusZ, c - a - b)],
            EquationParams::new(&one - a, c - a, &one + b - a),
        ),
        22 => (ArgKind::InvOneMinusZ,
            vec![(Atom::OneMinusZ, -b)],
            EquationParams::new(b.clone(), c - a, &one + b - a),
        ),
        23 => (ArgKind::InvOneMinusZ,
            vec![(Atom::NegZ, &one - c), (Atom::OneMinusZ, c - b - &one)],
            EquationParams::new(&one + b - c, &one - a, &one + b - a),
        ),
        _ => unreachable!("slot out of range"),
    }
}

/// Build the transform for a structural slot and swap flag.
pub fn transform(slot: usize, swap_ab: bool, p: &EquationParams) -> FracLinTransform {
    let (phi, prefactor, params) = slot_recipe(slot, p);
    let target_params = if swap_ab { params.swapped() } else { params };
    let mut alpha = rat(0);
    let mut beta = rat(0);
    for (atom, e) in &prefactor {
        match atom.vanishes_at() {
            SingPoint::Zero => alpha -= e,
            SingPoint::One => beta -= e,
            SingPoint::Infinity => unreachable!(),
        }
    }
    FracLinTransform {
        slot,
        swap_ab,
        phi,
        alpha,
        beta,
        prefactor,
        target_params,
    }
}

/// Parameter image of group element `index` (0..48): slot-major, swap minor.
pub fn param_image(index: usize, p: &EquationParams) -> EquationParams {
    let slot = index / 2;
    let swap = index % 2 == 1;
    let (_, _, params) = slot_recipe(slot, p);
    if swap {
        params.swapped()
    } else {
        params
    }
}

pub const GROUP_ORDER: usize = 48;

/// Index of the composite map p ↦ f(g(p)) within the group, determined by
/// evaluating on a generic base triple. Panics if the composite is not in
/// the set (closure is exhaustively tested).
pub fn compose(f: usize, g: usize) -> usize {
    let p0 = EquationParams::new(
        crate::rational::ratq(1, 5),
        crate::rational::ratq(1, 7),
        crate::rational::ratq(1, 11),
    );
    let image = param_image(f, &param_image(g, &p0));
    for idx in 0..GROUP_ORDER {
        if param_image(idx, &p0) == image {
            return idx;
        }
    }
    panic!("composite map not found in the 48-group");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::local_exponents;
    use crate::rational::ratq;
    use std::collections::HashSet;

    fn generic() -> EquationParams {
        EquationParams::new(ratq(1, 5), ratq(1, 7), ratq(1, 11))
    }

    /// Exponent bookkeeping: for every slot, the inner equation's local
    /// exponents at the mapped points, shifted by the prefactor, must
    /// reproduce the original equation's exponents.
    #[test]
    fn all_24_slots_match_local_exponents() {
        let p = generic();
        let orig = local_exponents(&p);
        let orig_pairs = |pt: SingPoint| match pt {
            SingPoint::Zero => orig.at_zero.clone(),
            SingPoint::One => orig.at_one.clone(),
            SingPoint::Infinity => orig.at_infinity.clone(),
        };
        for slot in 0..24 {
            let t = transform(slot, false, &p);
            let inner = local_exponents(&t.target_params);
            // prefactor shifts
            let mut d0 = rat(0);
            let mut d1 = rat(0);
            for (atom, e) in &t.prefactor {
                match atom.vanishes_at() {
                    SingPoint::Zero => d0 += e,
                    SingPoint::One => d1 += e,
                    SingPoint::Infinity => {}
                }
            }
            let dinf = -(d0.clone() + d1.clone());
            for pt in SingPoint::ALL {
                let q = t.phi.maps_point_to(pt);
                let shift = match pt {
                    SingPoint::Zero => d0.clone(),
                    SingPoint::One => d1.clone(),
                    SingPoint::Infinity => dinf.clone(),
                };
                let inner_pair = match q {
                    SingPoint::Zero => inner.at_zero.clone(),
                    SingPoint::One => inner.at_one.clone(),
                    SingPoint::Infinity => inner.at_infinity.clone(),
                };
                let mut got = vec![&inner_pair.0 + &shift, &inner_pair.1 + &shift];
                let pair = orig_pairs(pt);
                let mut want = vec![pair.0.clone(), pair.1.clone()];
                got.sort();
                want.sort();
                assert_eq!(got, want, "slot {slot} at point {pt}");
            }
        }
    }

    #[test]
    fn images_are_distinct_on_generic_triple() {
        let p = generic();
        let mut seen = HashSet::new();
        for idx in 0..GROUP_ORDER {
            let img = param_image(idx, &p);
            assert!(
                seen.insert(format!("{img}")),
                "duplicate image at index {idx}"
            );
        }
    }

    #[test]
    fn group_closure_all_2304_compositions() {
        // compose() panics if a composite escapes the set
        for f in 0..GROUP_ORDER {
            for g in 0..GROUP_ORDER {
                let _ = compose(f, g);
            }
        }
    }

    #[test]
    fn identity_and_inverses() {
        assert_eq!(compose(0, 0), 0);
        for g in 0..GROUP_ORDER {
            // each element has an inverse: some h with h∘g = identity
            let mut found = false;
            for h in 0..GROUP_ORDER {
                if compose(h, g) == 0 {
                    found = true;
                    break;
                }
            }
            assert!(found, "no inverse for {g}");
        }
    }

    #[test]
    fn exponent_difference_multiset_invariance() {
        // {±e0, ±e1, ±e∞} is the same for every image equation
        let p = generic();
        let canon = |q: &EquationParams| {
            let e = local_exponents(q);
            let mut v = vec![
                e.e0.clone(),
                -e.e0.clone(),
                e.e1.clone(),
                -e.e1.clone(),
                e.einf.clone(),
                -e.einf.clone(),
            ];
            v.sort();
            v
        };
        let want = canon(&p);
        for idx in 0..GROUP_ORDER {
            assert_eq!(canon(&param_image(idx, &p)), want, "index {idx}");
        }
    }

    #[test]
    fn half_shift_quadruple_invariance() {
        // (−1/2+a, 1/2−b, −1/2+c−a, 1/2+b−c) is permuted, possibly with a
        // simultaneous sign flip, by every group element
        let p = generic();
        let quad = |q: &EquationParams| {
            let mut v = vec![
                ratq(-1, 2) + &q.a,
                ratq(1, 2) - &q.b,
                ratq(-1, 2) + &q.c - &q.a,
                ratq(1, 2) + &q.b - &q.c,
            ];
            v.sort();
            v
        };
        let base = quad(&p);
        let neg_base: Vec<_> = {
            let mut v: Vec<_> = base.iter().map(|x| -x.clone()).collect();
            v.sort();
            v
        };
        for idx in 0..GROUP_ORDER {
            let got = quad(&param_image(idx, &p));
            assert!(
                got == base || got == neg_base,
                "index {idx}: quadruple not preserved"
            );
        }
    }
}
