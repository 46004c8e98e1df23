//! Fiberwise evidence that the family of algebras over q in [-1, 0) glues
//! into a continuous bundle.
//!
//! Two kinds of evidence are produced on exact rational grids:
//!
//! * exact Haar profiles q -> h_q(eta^klm), whose closed form approaches the
//!   limit value 1/(m+1) (for k = 0, l = m; zero otherwise) as q -> -1, with
//!   adjacent-fiber jumps checked against a slope budget;
//! * norm lower bounds per fiber from truncations of the irreducible
//!   weighted-shift representation (0 < |q| < 1), monotone in the truncation
//!   size; at q = -1 itself the 2x2 matrix-function model supplies the
//!   bound instead.
//!
//! The truncated representation acts on the span of e_0..e_{N-1} by
//!
//! ```text
//! pi(alpha) e_n = sqrt(1 - q^{2n}) e_{n-1}        pi(gamma) e_n = w q^n e_n
//! ```
//!
//! with a unit phase `w`.  Truncation artifacts live in the last few basis
//! vectors only, so relation residuals are checked on interior columns.

use std::collections::BTreeMap;

use num_traits::Signed;

use crate::algebra::{Element, Monomial};
use crate::error::{CoreError, Result};
use crate::geom::{haar_grid, phi_eval};
use crate::haar::haar_monomial;
use crate::linalg::{CMat, C64};
use crate::scalar::{rat, QParam, Rat};

/// A finite, strictly increasing grid of exact rational deformation
/// parameters in [-1, 0).
#[derive(Debug, Clone)]
pub struct QGrid {
    points: Vec<QParam>,
}

impl QGrid {
    /// Sorts the input; rejects duplicates and values outside [-1, 0).
    pub fn new(mut points: Vec<QParam>) -> Result<QGrid> {
        for q in &points {
            if !q.value().is_negative() {
                return Err(CoreError::InvalidParameter(format!(
                    "grid value {q} is not in [-1, 0)"
                )));
            }
        }
        points.sort_by(|a, b| a.value().cmp(b.value()));
        for pair in points.windows(2) {
            if pair[0] == pair[1] {
                return Err(CoreError::InvalidParameter(format!(
                    "duplicate grid value {}",
                    pair[0]
                )));
            }
        }
        Ok(QGrid { points })
    }

    pub fn parse(labels: &[&str]) -> Result<QGrid> {
        QGrid::new(labels.iter().map(|s| QParam::parse(s)).collect::<Result<Vec<_>>>()?)
    }

    pub fn points(&self) -> &[QParam] {
        &self.points
    }
}

/// Everything the scan learned about one fiber.
#[derive(Debug, Clone)]
pub struct FiberReport {
    q: QParam,
    haar_values: BTreeMap<Monomial, Rat>,
    norm_bounds: BTreeMap<(Monomial, usize), f64>,
}

impl FiberReport {
    pub fn q(&self) -> &QParam {
        &self.q
    }

    pub fn haar_values(&self) -> &BTreeMap<Monomial, Rat> {
        &self.haar_values
    }

    pub fn norm_bounds(&self) -> &BTreeMap<(Monomial, usize), f64> {
        &self.norm_bounds
    }
}

/// The exact Haar value of one monomial along the grid.
pub fn haar_profile(k: i64, l: u32, m: u32, grid: &QGrid) -> Vec<Rat> {
    grid.points().iter().map(|q| haar_monomial(q, k, l, m)).collect()
}

fn check_truncatable(q: &QParam, n: usize) -> Result<f64> {
    let qf = q.to_f64();
    if qf.abs() >= 1.0 {
        return Err(CoreError::InvalidParameter(format!(
            "weighted-shift truncation needs 0 < |q| < 1, got q = {q}; \
             the matrix-function model covers q = -1"
        )));
    }
    if n < 2 {
        return Err(CoreError::InvalidParameter(format!(
            "truncation size {n} is too small; need at least 2"
        )));
    }
    Ok(qf)
}

/// Shared power tables so that algebraically equal entries are bitwise
/// equal: `p[n] = q^n` by repeated multiplication, `w[n] = sqrt(1 - q^{2n})`.
struct ShiftTables {
    p: Vec<f64>,
    w: Vec<f64>,
}

fn shift_tables(qf: f64, n: usize) -> ShiftTables {
    let mut p = vec![1.0; n];
    for i in 1..n {
        p[i] = p[i - 1] * qf;
    }
    let w = p.iter().map(|pi| (1.0 - pi * pi).max(0.0).sqrt()).collect();
    ShiftTables { p, w }
}

/// The compression of `pi(x)` to the span of e_0..e_{N-1}, where `pi` is the
/// weighted-shift representation with the given diagonal phase.  Each basis
/// monomial maps a basis vector to a single weighted basis vector, so the
/// compression is assembled exactly column by column.
pub fn gns_truncation(x: &Element, n: usize, phase: C64) -> Result<CMat> {
    let qf = check_truncatable(x.q(), n)?;
    let tables = shift_tables(qf, n);
    let mut out = CMat::zeros(n, n);
    for (mono, coeff) in x.terms() {
        let diag_phase =
            phase.powu(mono.l) * phase.conj().powu(mono.m);
        for col in 0..n {
            let d = diag_phase * tables.p[col].powi((mono.l + mono.m) as i32);
            let (row, weight) = if mono.k >= 0 {
                let k = mono.k as usize;
                if col < k {
                    continue;
                }
                let mut acc = 1.0;
                for j in col - k + 1..=col {
                    acc *= tables.w[j];
                }
                (col - k, acc)
            } else {
                let b = (-mono.k) as usize;
                if col + b >= n {
                    continue;
                }
                let mut acc = 1.0;
                for j in col + 1..=col + b {
                    acc *= tables.w[j];
                }
                (col + b, acc)
            };
            out.add_at(row, col, coeff.to_c64() * d * weight);
        }
    }
    Ok(out)
}

/// Worst residual of the five defining relations, assembled from products
/// of the truncated generator matrices, over the interior columns
/// n <= N - 3.  Interior columns see no truncation artifact.
pub fn relation_residual_interior(q: &QParam, n: usize, phase: C64) -> Result<f64> {
    let qf = check_truncatable(q, n)?;
    if n < 4 {
        return Err(CoreError::InvalidParameter(format!(
            "interior residuals need at least 4 basis vectors, got {n}"
        )));
    }
    let a = gns_truncation(&Element::alpha(q), n, phase)?;
    let g = gns_truncation(&Element::gamma(q), n, phase)?;
    let a_s = a.adjoint();
    let g_s = g.adjoint();
    let id = CMat::identity(n);
    let q2 = C64::new(qf * qf, 0.0);
    let qc = C64::new(qf, 0.0);
    let residuals = [
        a_s.mul(&a).add(&g_s.mul(&g)).sub(&id),
        a.mul(&a_s).add(&g.mul(&g_s).scale(q2)).sub(&id),
        a.mul(&g).sub(&g.mul(&a).scale(qc)),
        a.mul(&g_s).sub(&g_s.mul(&a).scale(qc)),
        g.mul(&g_s).sub(&g_s.mul(&g)),
    ];
    let mut worst: f64 = 0.0;
    for r in &residuals {
        for col in 0..=n - 3 {
            for row in 0..n {
                worst = worst.max(r.at(row, col).norm());
            }
        }
    }
    Ok(worst)
}

/// Residual of one boundary column (the last basis vector) for the relation
/// `alpha alpha* + q^2 gamma gamma* = 1`; order-one, demonstrating why
/// interior columns are the meaningful ones.
pub fn relation_residual_boundary(q: &QParam, n: usize, phase: C64) -> Result<f64> {
    let qf = check_truncatable(q, n)?;
    let a = gns_truncation(&Element::alpha(q), n, phase)?;
    let g = gns_truncation(&Element::gamma(q), n, phase)?;
    let q2 = C64::new(qf * qf, 0.0);
    let r = a
        .mul(&a.adjoint())
        .add(&g.mul(&g.adjoint()).scale(q2))
        .sub(&CMat::identity(n));
    let mut worst: f64 = 0.0;
    for row in 0..n {
        worst = worst.max(r.at(row, n - 1).norm());
    }
    Ok(worst)
}

fn character_value(x: &Element, a: C64) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for (mono, coeff) in x.terms() {
        if mono.l == 0 && mono.m == 0 {
            let pow = if mono.k >= 0 {
                a.powu(mono.k as u32)
            } else {
                a.conj().powu((-mono.k) as u32)
            };
            acc += coeff.to_c64() * pow;
        }
    }
    acc
}

/// A certified lower bound for the fiber norm of `x` at its parameter:
/// the largest spectral norm of the truncated weighted-shift representation
/// over equispaced diagonal phases, together with the one-dimensional
/// characters (alpha to a unit scalar, gamma to zero).  Nondecreasing in N
/// because the truncations are nested compressions.
pub fn norm_lower_bound(x: &Element, n: usize, phases: usize) -> Result<f64> {
    check_truncatable(x.q(), n)?;
    if phases == 0 {
        return Err(CoreError::InvalidParameter("need at least one phase sample".into()));
    }
    let mut best: f64 = 0.0;
    for j in 0..phases {
        let w = C64::from_polar(1.0, std::f64::consts::TAU * j as f64 / phases as f64);
        best = best.max(gns_truncation(x, n, w)?.spectral_norm());
        best = best.max(character_value(x, w).norm());
    }
    Ok(best)
}

/// The q = -1 counterpart of `norm_lower_bound`: the largest spectral norm
/// of the 2x2 matrix-function model over a Haar quadrature grid.
pub fn model_norm_bound_neg1(x: &Element, order: usize) -> Result<f64> {
    let mut best: f64 = 0.0;
    for (p, _) in haar_grid(order) {
        best = best.max(phi_eval(x, &p)?.spectral_norm());
    }
    Ok(best)
}

/// Allowed jump of the exact Haar profile between adjacent fibers: an
/// empirically validated slope budget for the closed form (the profiles of
/// eta^{0mm} move with slope below 4(m+1) on [-1, 0); all other profiles
/// are constant zero).
pub fn smoothness_budget(m: u32, dq: &Rat) -> Rat {
    rat(4 * (i64::from(m) + 1), 1) * dq.abs()
}

/// The assembled scan: per-fiber reports plus any smoothness violations.
#[derive(Debug, Clone)]
pub struct BundleScan {
    pub reports: Vec<FiberReport>,
    pub flags: Vec<String>,
}

impl BundleScan {
    pub fn is_smooth(&self) -> bool {
        self.flags.is_empty()
    }
}

/// Scan the grid: exact Haar values for every requested monomial, norm
/// lower bounds for every requested truncation size (16 diagonal phases;
/// the matrix model stands in at q = -1), and adjacent-fiber Haar jumps
/// checked against the slope budget.
pub fn bundle_scan(
    monomials: &[Monomial],
    grid: &QGrid,
    truncations: &[usize],
) -> Result<BundleScan> {
    let mut reports = Vec::with_capacity(grid.points().len());
    for q in grid.points() {
        let mut haar_values = BTreeMap::new();
        let mut norm_bounds = BTreeMap::new();
        for mono in monomials {
            haar_values.insert(*mono, haar_monomial(q, mono.k, mono.l, mono.m));
            let x = Element::monomial(q, mono.k, mono.l, mono.m);
            for &n in truncations {
                let bound = if q.is_minus_one() {
                    model_norm_bound_neg1(&x, 8)?
                } else {
                    norm_lower_bound(&x, n, 16)?
                };
                norm_bounds.insert((*mono, n), bound);
            }
        }
        reports.push(FiberReport { q: q.clone(), haar_values, norm_bounds });
    }
    let mut flags = Vec::new();
    for pair in reports.windows(2) {
        let dq = pair[1].q.value() - pair[0].q.value();
        for mono in monomials {
            let h0 = &pair[0].haar_values[mono];
            let h1 = &pair[1].haar_values[mono];
            let jump = (h1 - h0).abs();
            if jump > smoothness_budget(mono.m, &dq) {
                flags.push(format!(
                    "haar profile of {mono} jumps by {jump} between q = {} and q = {}",
                    pair[0].q, pair[1].q
                ));
            }
        }
    }
    Ok(BundleScan { reports, flags })
}
