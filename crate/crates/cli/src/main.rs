//! `suq2`: exact computations and verification reports for the quantum
//! SU(2) kernel.
//!
//! Algebraic verbs (`normalize`, `mul`, `star`, `coproduct`, `haar`,
//! `invariance`) work on exact elements serialized as JSON; geometric verbs
//! (`eval`, `fixedpoint`, `spectrum`) drive the 2x2 matrix-function model at
//! q = -1; `ktheory` and `bundle-scan` produce the witness and bundle
//! evidence; `verify-all` assembles every suite into one report.
//!
//! Exit codes: 0 when all emitted records pass, 1 when any record fails,
//! 2 on usage or input errors.  Default output is byte-identical across
//! runs for identical flags; `--timings` adds wall-clock milliseconds.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use suq2_core::algebra::{Element, Monomial};
use suq2_core::bundle::{bundle_scan, model_norm_bound_neg1, norm_lower_bound, QGrid};
use suq2_core::geom::{
    conditional_expectation, g_action, haar_grid, phi_eval, phi_matfun, GroupElement, SpherePoint,
};
use suq2_core::haar::{haar_monomial, invariance_residuals, HaarState};
use suq2_core::hopf::coproduct;
use suq2_core::linalg::CMat;
use suq2_core::report::{render_f64, Report, VerificationRecord};
use suq2_core::scalar::{rat, rat_to_f64, QParam};
use suq2_core::verify::{
    algebra_suite, bundle_suite, haar_suite, hopf_suite, ktheory_degree_records, ktheory_suite,
    ktheory_witness_records, model_suite, VerifyConfig,
};

#[derive(Parser)]
#[command(name = "suq2", version, about = "Verification kernel for quantum SU(2) at q = -1")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Write the primary output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format for reports and elements.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Record wall-clock milliseconds in reports (breaks byte-identical output).
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Aligned text.
    Table,
    /// JSON.
    Structured,
}

#[derive(Subcommand)]
enum Verb {
    /// Rewrite an element in the canonical ordered basis.
    Normalize {
        /// Element JSON file, or `-` for stdin.
        #[arg(long)]
        element: String,
    },
    /// Multiply two elements in the canonical basis.
    Mul {
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Adjoint of an element.
    Star {
        #[arg(long)]
        element: String,
    },
    /// Coproduct of an element as a two-leg tensor.
    Coproduct {
        #[arg(long)]
        element: String,
    },
    /// Exact Haar value of a basis word or an element.
    Haar {
        #[arg(long, default_value = "-1")]
        q: String,
        #[arg(long, default_value_t = 0)]
        k: i64,
        #[arg(long, default_value_t = 0)]
        l: u32,
        #[arg(long, default_value_t = 0)]
        m: u32,
        /// Evaluate this element instead of the (k, l, m) word.
        #[arg(long)]
        element: Option<String>,
    },
    /// Left and right invariance residuals of the Haar state.
    Invariance {
        #[arg(long, default_value = "-1")]
        q: String,
        #[arg(long, default_value_t = 0)]
        k: i64,
        #[arg(long, default_value_t = 1)]
        l: u32,
        #[arg(long, default_value_t = 1)]
        m: u32,
        #[arg(long)]
        element: Option<String>,
    },
    /// Evaluate the q = -1 matrix model of an element at a sphere point.
    Eval {
        #[arg(long)]
        element: String,
        /// Polar angle of the point (cos t e^{i phi1}, sin t e^{i phi2}).
        #[arg(long, default_value_t = 0.7)]
        theta: f64,
        #[arg(long, default_value_t = 0.0)]
        phi1: f64,
        #[arg(long, default_value_t = 0.0)]
        phi2: f64,
    },
    /// Average the matrix model of an element over the flip group.
    Fixedpoint {
        #[arg(long)]
        element: String,
        /// Quadrature order for the sample grid.
        #[arg(long, default_value_t = 8)]
        order: usize,
        /// Residual tolerance.
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Certified norm lower bound of an element in its fiber.
    Spectrum {
        #[arg(long)]
        element: String,
        /// Truncation size for 0 < |q| < 1 fibers.
        #[arg(long, default_value_t = 20)]
        n: usize,
        /// Quadrature order for the q = -1 model grid.
        #[arg(long, default_value_t = 8)]
        order: usize,
    },
    /// K-theory witness checks.
    Ktheory {
        #[arg(long, value_enum, default_value_t = KCheck::All)]
        check: KCheck,
        /// Grid resolution for the degree integrals.
        #[arg(long, default_value_t = 24)]
        res: usize,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
    /// Scan a grid of fibers: exact Haar values and norm lower bounds (CSV).
    BundleScan {
        /// Comma-separated exact rationals in [-1, 0).
        #[arg(long, default_value = "-1,-999/1000,-99/100,-9/10,-3/5,-1/2")]
        grid: String,
        /// Comma-separated basis words as k:l:m triples.
        #[arg(long, default_value = "0:0:0,0:1:1,0:2:2,1:0:0")]
        monomials: String,
        /// Truncation sizes (repeatable).
        #[arg(long = "N", default_values_t = vec![10usize, 20, 40])]
        truncations: Vec<usize>,
    },
    /// Run every verification suite.
    VerifyAll {
        #[arg(long, default_value = "-1")]
        q: String,
        /// Exponent bound for monomial sweeps.
        #[arg(long, default_value_t = 3)]
        degree: u32,
        /// Grid resolution for the degree integrals.
        #[arg(long, default_value_t = 24)]
        res: usize,
        /// Haar quadrature order.
        #[arg(long, default_value_t = 32)]
        order: usize,
        /// Seed for randomized checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Truncation sizes (repeatable).
        #[arg(long = "N", default_values_t = vec![10usize, 20, 40])]
        truncations: Vec<usize>,
        #[arg(long, default_value_t = 1e-12)]
        tol: f64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KCheck {
    /// Projection paths and their boundary compatibility.
    Paths,
    /// Exactness of the eight circle endpoints.
    Endpoints,
    /// Determinant windings of the four exponential loops.
    Windings,
    /// The Bott lift and projection over the disk.
    Bott,
    /// Third-stage lifts, circle values, and winding pairs.
    A3,
    /// Degree of the embedded fundamental unitary only.
    PhiDegree,
    /// All four degree integrals.
    Degrees,
    /// Everything.
    All,
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    }
}

fn read_element(path: &str) -> Result<Element, String> {
    let text = if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map_err(|e| e.to_string())?;
        buf
    } else {
        fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?
    };
    Element::from_json(&text).map_err(|e| e.to_string())
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn show_matrix(m: &CMat, format: Format) -> String {
    match format {
        Format::Structured => {
            let rows: Vec<Vec<serde_json::Value>> = (0..m.rows())
                .map(|i| {
                    (0..m.cols())
                        .map(|j| {
                            serde_json::json!({ "re": m.at(i, j).re, "im": m.at(i, j).im })
                        })
                        .collect()
                })
                .collect();
            let mut s =
                serde_json::to_string_pretty(&serde_json::json!({ "entries": rows })).unwrap();
            s.push('\n');
            s
        }
        Format::Table => {
            let mut s = String::new();
            for i in 0..m.rows() {
                let row: Vec<String> = (0..m.cols())
                    .map(|j| {
                        let z = m.at(i, j);
                        format!("{:+.9}{:+.9}i", z.re, z.im)
                    })
                    .collect();
                s.push_str(&row.join("  "));
                s.push('\n');
            }
            s
        }
    }
}

fn show_element(x: &Element, format: Format) -> String {
    match format {
        Format::Structured => {
            let mut s = x.to_json();
            if !s.ends_with('\n') {
                s.push('\n');
            }
            s
        }
        Format::Table => format!("{x}\n"),
    }
}

fn finish_report(
    report: Report,
    out: &Option<PathBuf>,
    format: Format,
    timings: bool,
) -> Result<i32, String> {
    let text = match format {
        Format::Table => report.render_table(timings),
        Format::Structured => report.render_json(),
    };
    emit(out, &text)?;
    Ok(report.exit_code())
}

fn timed<T>(
    enabled: bool,
    f: impl FnOnce() -> Result<Vec<VerificationRecord>, T>,
) -> Result<Vec<VerificationRecord>, T> {
    let start = Instant::now();
    let mut records = f()?;
    if enabled {
        let ms = start.elapsed().as_millis() as u64;
        for r in &mut records {
            *r = r.clone().with_runtime(ms);
        }
    }
    Ok(records)
}

fn parse_monomials(list: &str) -> Result<Vec<Monomial>, String> {
    let mut out = Vec::new();
    for part in list.split(',').filter(|s| !s.trim().is_empty()) {
        let fields: Vec<&str> = part.trim().split(':').collect();
        if fields.len() != 3 {
            return Err(format!("monomial {part:?} is not a k:l:m triple"));
        }
        let k: i64 = fields[0].parse().map_err(|e| format!("{part:?}: {e}"))?;
        let l: u32 = fields[1].parse().map_err(|e| format!("{part:?}: {e}"))?;
        let m: u32 = fields[2].parse().map_err(|e| format!("{part:?}: {e}"))?;
        out.push(Monomial::new(k, l, m));
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<i32, String> {
    let format = cli.format;
    let out = cli.out;
    let timings = cli.timings;
    match cli.verb {
        Verb::Normalize { element } => {
            let x = read_element(&element)?;
            emit(&out, &show_element(&x, format))?;
            Ok(0)
        }
        Verb::Mul { lhs, rhs } => {
            let x = read_element(&lhs)?;
            let y = read_element(&rhs)?;
            let xy = x.normal_mul(&y).map_err(|e| e.to_string())?;
            emit(&out, &show_element(&xy, format))?;
            Ok(0)
        }
        Verb::Star { element } => {
            let x = read_element(&element)?;
            emit(&out, &show_element(&x.star(), format))?;
            Ok(0)
        }
        Verb::Coproduct { element } => {
            let x = read_element(&element)?;
            let dx = coproduct(&x);
            let text = match format {
                Format::Structured => {
                    let mut s = dx.to_json();
                    if !s.ends_with('\n') {
                        s.push('\n');
                    }
                    s
                }
                Format::Table => format!("{dx}\n"),
            };
            emit(&out, &text)?;
            Ok(0)
        }
        Verb::Haar { q, k, l, m, element } => {
            let q = QParam::parse(&q).map_err(|e| e.to_string())?;
            let mut report = Report::new();
            match element {
                Some(path) => {
                    let x = read_element(&path)?;
                    let h = HaarState::new(x.q());
                    let value = h.eval(&x).map_err(|e| e.to_string())?;
                    report.push(VerificationRecord::exact(
                        "haar.element",
                        format!("Haar value of the element at q = {}", x.q()),
                        value.to_string(),
                        value.to_string(),
                    ));
                }
                None => {
                    let value = haar_monomial(&q, k, l, m);
                    let expected = if q.is_classical() {
                        if k == 0 && l == m {
                            rat(1, i64::from(m) + 1)
                        } else {
                            rat(0, 1)
                        }
                    } else {
                        value.clone()
                    };
                    report.push(VerificationRecord::exact(
                        "haar.word",
                        format!("h(eta({k},{l},{m})) at q = {q}"),
                        expected.to_string(),
                        value.to_string(),
                    ));
                }
            }
            finish_report(report, &out, format, timings)
        }
        Verb::Invariance { q, k, l, m, element } => {
            let x = match element {
                Some(path) => read_element(&path)?,
                None => {
                    let q = QParam::parse(&q).map_err(|e| e.to_string())?;
                    Element::monomial(&q, k, l, m)
                }
            };
            let (right, left) = invariance_residuals(&x).map_err(|e| e.to_string())?;
            let mut report = Report::new();
            report.push(VerificationRecord::exact(
                "invariance.right",
                format!("right invariance residual at q = {}", x.q()),
                "0",
                right.term_count(),
            ));
            report.push(VerificationRecord::exact(
                "invariance.left",
                format!("left invariance residual at q = {}", x.q()),
                "0",
                left.term_count(),
            ));
            finish_report(report, &out, format, timings)
        }
        Verb::Eval { element, theta, phi1, phi2 } => {
            let x = read_element(&element)?;
            let p = SpherePoint::euler(theta, phi1, phi2);
            let m = phi_eval(&x, &p).map_err(|e| e.to_string())?;
            emit(&out, &show_matrix(&m, format))?;
            Ok(0)
        }
        Verb::Fixedpoint { element, order, tol } => {
            let x = read_element(&element)?;
            let fun = phi_matfun(&x).map_err(|e| e.to_string())?;
            let averaged = conditional_expectation(&fun).map_err(|e| e.to_string())?;
            let points: Vec<SpherePoint> =
                haar_grid(order).into_iter().map(|(p, _)| p).collect();
            let mut worst_fix: f64 = 0.0;
            let mut worst_idem: f64 = 0.0;
            let mut dist: f64 = 0.0;
            let twice = conditional_expectation(&averaged).map_err(|e| e.to_string())?;
            for p in &points {
                let e = averaged.eval(p);
                for g in GroupElement::all() {
                    let moved = g_action(g, &averaged).map_err(|err| err.to_string())?;
                    worst_fix = worst_fix.max(moved.eval(p).max_abs_diff(&e));
                }
                worst_idem = worst_idem.max(twice.eval(p).max_abs_diff(&e));
                dist = dist.max(fun.eval(p).max_abs_diff(&e));
            }
            let mut report = Report::new();
            report.push(VerificationRecord::bound(
                "fixedpoint.invariant",
                "the average is fixed by every flip",
                worst_fix,
                tol,
            ));
            report.push(VerificationRecord::bound(
                "fixedpoint.idempotent",
                "averaging twice changes nothing",
                worst_idem,
                tol,
            ));
            report.push(VerificationRecord::predicate(
                "fixedpoint.distance",
                "distance from the input to its average (informational)",
                true,
                render_f64(dist),
            ));
            finish_report(report, &out, format, timings)
        }
        Verb::Spectrum { element, n, order } => {
            let x = read_element(&element)?;
            let mut report = Report::new();
            if x.q().is_minus_one() {
                let bound = model_norm_bound_neg1(&x, order).map_err(|e| e.to_string())?;
                report.push(VerificationRecord::predicate(
                    "spectrum.model-bound",
                    format!("matrix-model norm lower bound at q = -1, order {order}"),
                    true,
                    render_f64(bound),
                ));
            } else {
                let bound = norm_lower_bound(&x, n, 16).map_err(|e| e.to_string())?;
                report.push(VerificationRecord::predicate(
                    "spectrum.shift-bound",
                    format!("truncated-shift norm lower bound at q = {}, N = {n}", x.q()),
                    true,
                    render_f64(bound),
                ));
            }
            finish_report(report, &out, format, timings)
        }
        Verb::Ktheory { check, res, tol } => {
            let cfg = VerifyConfig { res, tol, ..VerifyConfig::default() };
            let records = match check {
                KCheck::All => timed(timings, || {
                    ktheory_suite(&cfg).map_err(|e| e.to_string())
                })?,
                KCheck::PhiDegree | KCheck::Degrees => {
                    let all = timed(timings, || {
                        ktheory_degree_records(&cfg).map_err(|e| e.to_string())
                    })?;
                    if check == KCheck::PhiDegree {
                        all.into_iter().filter(|r| r.id == "ktheory.degree.embedded").collect()
                    } else {
                        all
                    }
                }
                _ => {
                    let prefix = match check {
                        KCheck::Paths => "ktheory.path.",
                        KCheck::Endpoints => "ktheory.tilde.",
                        KCheck::Windings => "ktheory.windings",
                        KCheck::Bott => "ktheory.bott.",
                        KCheck::A3 => "ktheory.a3.",
                        _ => unreachable!(),
                    };
                    let all = timed(timings, || {
                        ktheory_witness_records(&cfg).map_err(|e| e.to_string())
                    })?;
                    all.into_iter().filter(|r| r.id.starts_with(prefix)).collect()
                }
            };
            let mut report = Report::new();
            report.extend(records);
            finish_report(report, &out, format, timings)
        }
        Verb::BundleScan { grid, monomials, truncations } => {
            let labels: Vec<&str> = grid.split(',').filter(|s| !s.trim().is_empty()).collect();
            let grid = QGrid::parse(&labels).map_err(|e| e.to_string())?;
            let monomials = parse_monomials(&monomials)?;
            let mut truncations = truncations;
            truncations.sort_unstable();
            truncations.dedup();
            let scan =
                bundle_scan(&monomials, &grid, &truncations).map_err(|e| e.to_string())?;
            let mut csv = String::new();
            csv.push_str("q,monomial,haar_exact,haar_decimal");
            for n in &truncations {
                csv.push_str(&format!(",norm_lb_N{n}"));
            }
            csv.push('\n');
            for report in &scan.reports {
                for mono in &monomials {
                    let h = &report.haar_values()[mono];
                    csv.push_str(&format!(
                        "{},{}:{}:{},{},{}",
                        report.q(),
                        mono.k,
                        mono.l,
                        mono.m,
                        h,
                        rat_to_f64(h)
                    ));
                    for n in &truncations {
                        csv.push_str(&format!(",{}", report.norm_bounds()[&(*mono, *n)]));
                    }
                    csv.push('\n');
                }
            }
            emit(&out, &csv)?;
            for flag in &scan.flags {
                eprintln!("smoothness: {flag}");
            }
            Ok(if scan.is_smooth() { 0 } else { 1 })
        }
        Verb::VerifyAll { q, degree, res, order, seed, truncations, tol } => {
            let mut truncations = truncations;
            truncations.sort_unstable();
            truncations.dedup();
            let cfg = VerifyConfig {
                q: QParam::parse(&q).map_err(|e| e.to_string())?,
                degree,
                res,
                order,
                seed,
                truncations,
                tol,
            };
            let mut report = Report::new();
            type Suite = fn(&VerifyConfig) -> suq2_core::Result<Vec<VerificationRecord>>;
            let suites: [(&str, Suite); 6] = [
                ("algebra", algebra_suite),
                ("hopf", hopf_suite),
                ("haar", haar_suite),
                ("model", model_suite),
                ("ktheory", ktheory_suite),
                ("bundle", bundle_suite),
            ];
            for (_, suite) in suites {
                report.extend(timed(timings, || suite(&cfg).map_err(|e| e.to_string()))?);
            }
            finish_report(report, &out, format, timings)
        }
    }
}
