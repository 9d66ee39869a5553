//! Command-line interface: classification, the atlas of 24 solution
//! shapes, point evaluation, identity verification, and reproduction of
//! the degenerate-case count table.
//!
//! Exit codes: 0 on success (and when every verification passes), 1 when a
//! verification or table row fails, 2 on usage or parse errors.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use kummer24_core::atlas::{distinct_series_count, enumerate_24, group_orbits};
use kummer24_core::params::local_exponents;
use kummer24_core::series::EvalOptions;
use kummer24_core::verify::{run_case_suite, SamplePolicy};
use kummer24_core::{
    classify_monodromy, degeneracy_case, is_logarithmic_point, EquationParams, SingPoint,
};

#[derive(Parser)]
#[command(
    name = "kummer24",
    about = "Degenerate Gauss hypergeometric equations: classification, solution atlas, numerical verification",
    long_about = None,
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Args)]
struct ParamArgs {
    /// first upper parameter, as an exact rational `p/q` or `p`
    #[arg(short, allow_hyphen_values = true)]
    a: String,
    /// second upper parameter
    #[arg(short, allow_hyphen_values = true)]
    b: String,
    /// lower parameter
    #[arg(short, allow_hyphen_values = true)]
    c: String,
}

impl ParamArgs {
    fn parse(&self) -> EquationParams {
        match EquationParams::parse(&self.a, &self.b, &self.c) {
            Ok(p) => p,
            Err(e) => usage_error(&format!("{e}")),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Monodromy class, degeneracy case, witnesses, local exponents, and
    /// logarithmic points
    Classify {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// The 24 solution shapes with termination status, and their grouping
    /// into solutions
    Solutions {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Evaluate a labelled solution expression at a point.
    ///
    /// Labels: k01..k24 for the atlas shapes; case labels such as T.0,
    /// U1.log1, U2.lp2, U3.log1.mn, S1.e3, R2.0, P1.4 for the constructed
    /// solution expressions of the instance's normal form (list them with
    /// `solutions`).
    Eval {
        #[command(flatten)]
        params: ParamArgs,
        /// evaluation point, as `re+imi` decimals, e.g. 0.3+0.4i
        #[arg(short)]
        z: String,
        /// expression label
        #[arg(long)]
        solution: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the full identity/residual verification suite for an instance
    Verify {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// sample seed
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// points per record
        #[arg(long, default_value_t = 8)]
        points: usize,
        /// override every record tolerance
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Reproduce the degenerate-case count table on built-in witnesses
    Table {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn usage_error(msg: &str) -> ! {
    eprintln!("error: {msg}");
    std::process::exit(2);
}

fn parse_complex(s: &str) -> Complex64 {
    let t = s.trim().replace(' ', "");
    let fail = || usage_error(&format!("bad complex literal `{s}`; use re+imi, e.g. 0.3+0.4i"));
    if let Some(body) = t.strip_suffix('i') {
        // find the split between real and imaginary parts
        let bytes = body.as_bytes();
        for i in (1..bytes.len()).rev() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'e' && bytes[i - 1] != b'E'
            {
                let re: f64 = body[..i].parse().unwrap_or_else(|_| fail());
                let im_str = &body[i..];
                let im: f64 = if im_str == "+" {
                    1.0
                } else if im_str == "-" {
                    -1.0
                } else {
                    im_str.parse().unwrap_or_else(|_| fail())
                };
                return Complex64::new(re, im);
            }
        }
        let im: f64 = if body.is_empty() {
            1.0
        } else {
            body.parse().unwrap_or_else(|_| fail())
        };
        return Complex64::new(0.0, im);
    }
    Complex64::new(t.parse().unwrap_or_else(|_| fail()), 0.0)
}

fn main() {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Classify { params, format } => cmd_classify(&params.parse(), format),
        Command::Solutions { params, format } => cmd_solutions(&params.parse(), format),
        Command::Eval {
            params,
            z,
            solution,
            format,
        } => cmd_eval(&params.parse(), &z, &solution, format),
        Command::Verify {
            params,
            format,
            seed,
            points,
            tol,
        } => cmd_verify(&params.parse(), format, seed, points, tol),
        Command::Table { format } => cmd_table(format),
    };
    std::process::exit(code);
}

fn cmd_classify(p: &EquationParams, format: Format) -> i32 {
    let monodromy = classify_monodromy(p);
    let dc = degeneracy_case(p);
    let e = local_exponents(p);
    let log_points: Vec<String> = SingPoint::ALL
        .iter()
        .filter(|&&pt| is_logarithmic_point(p, pt))
        .map(|pt| pt.to_string())
        .collect();
    match format {
        Format::Json => {
            let value = serde_json::json!({
                "equation": p,
                "monodromy": monodromy.to_string(),
                "case": dc.tag.to_string(),
                "witness": dc.witness,
                "normal_form": dc.normal_form,
                "reduction": {
                    "slot": dc.reduction.slot,
                    "swap": dc.reduction.swap_ab,
                    "argument": dc.reduction.phi.to_string(),
                },
                "exponent_differences": {
                    "at_0": kummer24_core::format_rational(&e.e0),
                    "at_1": kummer24_core::format_rational(&e.e1),
                    "at_infinity": kummer24_core::format_rational(&e.einf),
                },
                "logarithmic_points": log_points,
            });
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        }
        Format::Text | Format::Latex => {
            println!("{p}");
            println!("  monodromy:      {monodromy}");
            println!("  case:           {}", dc.tag);
            let w = &dc.witness;
            let mut witness_bits = Vec::new();
            if let Some(n) = w.n {
                witness_bits.push(format!("n={n}"));
            }
            if let Some(m) = w.m {
                witness_bits.push(format!("m={m}"));
            }
            if let Some(l) = w.ell {
                witness_bits.push(format!("l={l}"));
            }
            if let Some(r) = &w.residual {
                witness_bits.push(r.clone());
            }
            println!(
                "  witness:        {}",
                if witness_bits.is_empty() {
                    "-".to_string()
                } else {
                    witness_bits.join(", ")
                }
            );
            println!("  normal form:    {}", dc.normal_form);
            println!(
                "  reduction:      slot {}{}, argument {}",
                dc.reduction.slot,
                if dc.reduction.swap_ab { " (swapped)" } else { "" },
                dc.reduction.phi
            );
            println!(
                "  exponent diffs: 1-c = {}, c-a-b = {}, b-a = {}",
                kummer24_core::format_rational(&e.e0),
                kummer24_core::format_rational(&e.e1),
                kummer24_core::format_rational(&e.einf)
            );
            println!(
                "  log points:     {}",
                if log_points.is_empty() {
                    "none".to_string()
                } else {
                    format!("{{{}}}", log_points.join(", "))
                }
            );
        }
    }
    0
}

fn cmd_solutions(p: &EquationParams, format: Format) -> i32 {
    let descs = enumerate_24(p);
    let orbits = match group_orbits(p, &descs) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let mut order: Vec<usize> = (0..descs.len()).collect();
    order.sort_by_key(|&i| descs[i].label.clone());
    let constructed: Vec<serde_json::Value> = match kummer24_core::cases::build(p) {
        Ok(solutions) => solutions
            .groups
            .iter()
            .map(|g| {
                serde_json::json!({
                    "solution": g.label,
                    "expressions": g
                        .expressions
                        .iter()
                        .map(|e| e.label.clone())
                        .collect::<Vec<_>>(),
                })
            })
            .collect(),
        Err(_) => vec![],
    };
    match format {
        Format::Json => {
            let value = serde_json::json!({
                "equation": p,
                "distinct_series": distinct_series_count(&descs),
                "descriptors": order.iter().map(|&i| &descs[i]).collect::<Vec<_>>(),
                "orbits": orbits,
                "constructed": constructed,
            });
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        }
        Format::Latex => {
            for &i in &order {
                let d = &descs[i];
                println!("% {}", d.label);
                println!("{}", d.to_solution_spec(p).latex());
            }
        }
        Format::Text => {
            println!("{p}: 24 shapes, {} distinct well-defined series", distinct_series_count(&descs));
            for &i in &order {
                let d = &descs[i];
                let status = match d.status {
                    kummer24_core::series::SeriesStatus::NonTerminating => "non-terminating".into(),
                    kummer24_core::series::SeriesStatus::Terminating(deg) => {
                        format!("terminating({deg})")
                    }
                    kummer24_core::series::SeriesStatus::Undefined => "undefined".into(),
                };
                let pref: String = d
                    .transform
                    .prefactor
                    .iter()
                    .map(|(atom, e)| format!("({atom})^({}) ", kummer24_core::format_rational(e)))
                    .collect();
                println!(
                    "  {} [slot {:2}] {}F({}, {}; {}; {})  {} at z={}",
                    d.label,
                    d.slot,
                    pref,
                    kummer24_core::format_rational(&d.inner.0),
                    kummer24_core::format_rational(&d.inner.1),
                    kummer24_core::format_rational(&d.inner.2),
                    d.transform.phi,
                    status,
                    d.base_point
                );
            }
            println!("solutions (orbits):");
            for (i, o) in orbits.iter().enumerate() {
                let members: Vec<&str> = o
                    .members
                    .iter()
                    .map(|&s| descs[s].label.as_str())
                    .collect();
                println!(
                    "  #{i}: {} [{}] members {}",
                    o.signature(),
                    match o.kind {
                        kummer24_core::atlas::OrbitKind::Terminating => "terminating",
                        kummer24_core::atlas::OrbitKind::NonTerminating => "non-terminating",
                        kummer24_core::atlas::OrbitKind::LogarithmicCompanion =>
                            "logarithmic companion",
                    },
                    members.join(" ")
                );
            }
            if !constructed.is_empty() {
                println!("constructed expressions (usable with `eval --solution`):");
                for g in &constructed {
                    let labels: Vec<String> = g["expressions"]
                        .as_array()
                        .unwrap()
                        .iter()
                        .map(|v| v.as_str().unwrap().to_string())
                        .collect();
                    println!("  {}: {}", g["solution"].as_str().unwrap(), labels.join(" "));
                }
            }
        }
    }
    0
}

fn cmd_eval(p: &EquationParams, z_str: &str, label: &str, format: Format) -> i32 {
    let z = parse_complex(z_str);
    if z.norm() < 1e-12 || (z - 1.0).norm() < 1e-12 {
        usage_error(&format!("evaluation point {z} is a singular point"));
    }
    // descriptor labels first, then case expression labels
    let spec = if label.starts_with('k') && label.len() == 3 {
        let descs = enumerate_24(p);
        match descs.iter().find(|d| d.label == label) {
            Some(d) if !d.is_defined() => {
                eprintln!("error: series `{label}` is undefined for {p}");
                return 1;
            }
            Some(d) => d.to_solution_spec(p),
            None => usage_error(&format!("unknown solution label `{label}`")),
        }
    } else {
        let solutions = match kummer24_core::cases::build(p) {
            Ok(s) => s,
            Err(e) => usage_error(&format!("{e}")),
        };
        match solutions.find(label) {
            Some(s) => s.clone(),
            None => {
                let known: Vec<String> = solutions
                    .all_expressions()
                    .map(|e| e.label.clone())
                    .collect();
                usage_error(&format!(
                    "unknown solution label `{label}`; known: k01..k24, {}",
                    known.join(", ")
                ))
            }
        }
    };
    if !spec.domain_ok(z) {
        eprintln!("error: {z} is outside the summable region of `{label}`");
        return 1;
    }
    let opts = EvalOptions::default();
    match spec.eval_with_derivatives(z, &opts) {
        Ok((v, d1, d2)) => match format {
            Format::Json => {
                let value = serde_json::json!({
                    "equation": p,
                    "label": label,
                    "z": { "re": z.re, "im": z.im },
                    "value": { "re": v.re, "im": v.im },
                    "derivative": { "re": d1.re, "im": d1.im },
                    "second_derivative": { "re": d2.re, "im": d2.im },
                });
                println!("{}", serde_json::to_string_pretty(&value).unwrap());
            }
            Format::Latex => {
                println!("{}", spec.latex());
                println!("% value at z = {z}: {v}");
            }
            Format::Text => {
                println!("{label} at z = {z}");
                println!("  value = {:.15e} + {:.15e} i", v.re, v.im);
                println!("  y'    = {:.15e} + {:.15e} i", d1.re, d1.im);
                println!("  y''   = {:.15e} + {:.15e} i", d2.re, d2.im);
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    }
    0
}

fn cmd_verify(p: &EquationParams, format: Format, seed: u64, points: usize, tol: Option<f64>) -> i32 {
    let policy = SamplePolicy {
        count: points,
        seed,
    };
    let mut outcome = match run_case_suite(p, &policy) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    if let Some(t) = tol {
        for r in &mut outcome.reports {
            r.pass = r.max_rel_deviation < t;
        }
    }
    let failures = outcome.reports.iter().filter(|r| !r.pass).count();
    match format {
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&outcome.reports).unwrap()
            );
        }
        Format::Text | Format::Latex => {
            println!(
                "{p}: case `{}`, {} records",
                outcome.solutions.case.tag,
                outcome.reports.len()
            );
            for r in &outcome.reports {
                println!(
                    "  {} {:<46} {:>10.3e} ({} pts)",
                    if r.pass { "ok  " } else { "FAIL" },
                    r.id,
                    r.max_rel_deviation,
                    r.points_tested
                );
            }
            println!(
                "{} passed, {} failed",
                outcome.reports.len() - failures,
                failures
            );
        }
    }
    i32::from(failures > 0)
}

fn cmd_table(format: Format) -> i32 {
    struct Row {
        case: &'static str,
        params: (&'static str, &'static str, &'static str),
        expect_count: usize,
        expect_sigs: &'static [&'static str],
    }
    let rows = [
        Row {
            case: "generic",
            params: ("1/3", "2/5", "1/7"),
            expect_count: 24,
            expect_sigs: &["4", "4", "4", "4", "4", "4"],
        },
        Row {
            case: "1",
            params: ("-2", "1/3", "1/5"),
            expect_count: 24,
            expect_sigs: &["4", "4", "4", "6+6"],
        },
        Row {
            case: "2",
            params: ("1/3", "2/5", "2"),
            expect_count: 20,
            expect_sigs: &["4", "4", "4", "4", "4"],
        },
        Row {
            case: "2 (all zero diffs)",
            params: ("1/2", "1/2", "1"),
            expect_count: 6,
            expect_sigs: &["2", "2", "2"],
        },
        Row {
            case: "3",
            params: ("1/3", "-2", "2"),
            expect_count: 20,
            expect_sigs: &["4", "4", "8+4"],
        },
        Row {
            case: "4",
            params: ("-1", "-5/3", "-3"),
            expect_count: 24,
            expect_sigs: &["4", "6+4", "6+4"],
        },
        Row {
            case: "5",
            params: ("-1", "2", "-2"),
            expect_count: 24,
            expect_sigs: &["6+2", "6+2", "6+2"],
        },
        Row {
            case: "6",
            params: ("-1", "-3", "-8"),
            expect_count: 16,
            expect_sigs: &["10+2", "4"],
        },
    ];
    let mut all_match = true;
    let mut json_rows = Vec::new();
    if format == Format::Text {
        println!(
            "{:<20} {:<16} {:>7} {:>9}  {:<24} match",
            "case", "equation", "series", "expected", "solutions"
        );
    }
    for row in rows {
        let p = EquationParams::parse(row.params.0, row.params.1, row.params.2).unwrap();
        let descs = enumerate_24(&p);
        let count = distinct_series_count(&descs);
        let mut sigs: Vec<String> = match group_orbits(&p, &descs) {
            Ok(o) => o.iter().map(|x| x.signature()).collect(),
            Err(e) => {
                eprintln!("error: {e}");
                return 1;
            }
        };
        sigs.sort();
        let matched = count == row.expect_count
            && sigs == row.expect_sigs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        all_match &= matched;
        match format {
            Format::Json => json_rows.push(serde_json::json!({
                "case": row.case,
                "equation": p,
                "distinct_series": count,
                "expected_series": row.expect_count,
                "solutions": sigs,
                "expected_solutions": row.expect_sigs,
                "match": matched,
            })),
            Format::Text | Format::Latex => {
                println!(
                    "{:<20} {:<16} {:>7} {:>9}  {:<24} {}",
                    row.case,
                    format!("{p}"),
                    count,
                    row.expect_count,
                    sigs.join(", "),
                    if matched { "yes" } else { "NO" }
                );
            }
        }
    }
    if format == Format::Json {
        println!("{}", serde_json::to_string_pretty(&json_rows).unwrap());
    }
    i32::from(!all_match)
}
