//! Topological witnesses for the q = -1 algebra.
//!
//! The sphere carries the filtration
//!
//! ```text
//! X1 = {(1,0),(0,1)}  ⊂  X2 = {Im a = Im c = 0}
//!   ⊂  X3 = {Im a, Im c >= 0, Im(a)·Im(c) = 0}  ⊂  X4 = {Im a, Im c >= 0},
//! ```
//!
//! and restriction of the fixed-point algebra to these stages cuts the
//! K-theory computation into elementary pieces.  This module constructs the
//! concrete witnesses that drive each stage and the numerical invariants
//! that certify them:
//!
//! * the projection paths `p0`, `q0` on the quarter arc, their flip-symmetric
//!   extensions to the real circle, and the det-windings of the four
//!   exponential loops (second stage);
//! * the 4x4 unitary lift over the closed disk whose compression is the
//!   rank-one projection family (index map into the disk algebra);
//! * the positive lifts over the third stage, their exponentials, and the
//!   winding pairs of the resulting diagonal loops;
//! * the degree (the normalized trace integral of `(u^{-1}du)^3`) of sphere
//!   unitaries, which detects the image of the fundamental unitary under the
//!   matrix-function embedding.

use std::f64::consts::{FRAC_PI_2, PI, TAU};
use std::sync::Arc;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::algebra::make_uq;
use crate::error::{CoreError, Result};
use crate::geom::{phi_eval, SpherePoint};
use crate::linalg::{exp_2pi_i_herm2, CMat, C64};
use crate::scalar::QParam;

/// Orientation constant for the degree integral: fixed once so that the
/// fundamental unitary `[[a, -conj(c)], [c, conj(a)]]` has degree +1 in the
/// ordered coordinates (theta, phi1, phi2).
const DEGREE_ORIENTATION: f64 = -1.0;

fn c(re: f64, im: f64) -> C64 {
    Complex64::new(re, im)
}

// ---------------------------------------------------------------------------
// projection paths on [0,1] and their circle extensions
// ---------------------------------------------------------------------------

/// Which of the two generating projection families to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessKind {
    P,
    Q,
}

fn check_unit_interval(t: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&t) {
        return Err(CoreError::InvalidParameter(format!(
            "path parameter {t} outside [0, 1]"
        )));
    }
    Ok(())
}

fn p0_mat(t: f64) -> CMat {
    let w = (t / 2.0 - t * t / 4.0).max(0.0).sqrt();
    CMat::from_rows(&[
        vec![c(1.0 - t / 2.0, 0.0), c(w, 0.0)],
        vec![c(w, 0.0), c(t / 2.0, 0.0)],
    ])
    .expect("fixed shape")
}

fn q0_mat(t: f64) -> CMat {
    let w = (t / 2.0 - t * t / 4.0).max(0.0).sqrt();
    CMat::from_rows(&[
        vec![c(t / 2.0, 0.0), c(w, 0.0)],
        vec![c(w, 0.0), c(1.0 - t / 2.0, 0.0)],
    ])
    .expect("fixed shape")
}

/// The first generating projection path: `[[1-t/2, w], [w, t/2]]` with
/// `w = sqrt(t/2 - t^2/4)`.
pub fn p0(t: f64) -> Result<CMat> {
    check_unit_interval(t)?;
    Ok(p0_mat(t))
}

/// The second generating projection path, the mirror of `p0`.
pub fn q0(t: f64) -> Result<CMat> {
    check_unit_interval(t)?;
    Ok(q0_mat(t))
}

/// A path of 2x2 matrices on [0,1], expected to consist of projections.
#[derive(Clone)]
pub struct PathProjection {
    f: Arc<dyn Fn(f64) -> CMat + Send + Sync>,
}

impl PathProjection {
    pub fn from_fn(f: impl Fn(f64) -> CMat + Send + Sync + 'static) -> Self {
        PathProjection { f: Arc::new(f) }
    }

    pub fn generator(kind: WitnessKind) -> Self {
        match kind {
            WitnessKind::P => PathProjection::from_fn(p0_mat),
            WitnessKind::Q => PathProjection::from_fn(q0_mat),
        }
    }

    pub fn eval(&self, t: f64) -> Result<CMat> {
        check_unit_interval(t)?;
        Ok((self.f)(t))
    }

    /// Worst violation of `p^2 = p = p*` over an equispaced grid.
    pub fn projection_residual(&self, samples: usize) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..samples {
            let t = i as f64 / (samples - 1).max(1) as f64;
            let p = (self.f)(t);
            worst = worst.max(p.mul(&p).max_abs_diff(&p));
            worst = worst.max(p.adjoint().max_abs_diff(&p));
        }
        worst
    }

    /// Do the endpoints sit in the two diagonal/anti-diagonal boundary
    /// algebras?  `p(0)` must commute with `diag(1,-1)`, `p(1)` with the
    /// swap matrix.
    pub fn boundary_compatibility(&self) -> bool {
        let vr = CMat::diag(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        let vs = CMat::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]])
            .expect("fixed shape");
        let p_start = (self.f)(0.0);
        let p_end = (self.f)(1.0);
        let comm = |a: &CMat, b: &CMat| a.mul(b).sub(&b.mul(a)).max_abs();
        comm(&p_start, &vr) <= 1e-12 && comm(&p_end, &vs) <= 1e-12
    }
}

/// The flip-symmetric extension of a generating projection path from the
/// quarter arc to the whole real circle: the arc carries the arclength
/// parameter (`(1,0) -> 0`, `(0,1) -> 1`), other quadrants are reached by
/// conjugating with the swap matrix (sign of `x`) and `diag(1,-1)` (sign of
/// `y`).  Input is any nonzero real pair; it is normalized onto the circle.
pub fn tilde_projection(kind: WitnessKind, x: f64, y: f64) -> Result<CMat> {
    if x.hypot(y) < 1e-9 {
        return Err(CoreError::Domain(
            "cannot place a near-zero real pair on the circle".into(),
        ));
    }
    let t = y.abs().atan2(x.abs()) / FRAC_PI_2;
    let mut m = match kind {
        WitnessKind::P => p0_mat(t),
        WitnessKind::Q => q0_mat(t),
    };
    if x < 0.0 {
        let vs = CMat::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]])
            .expect("fixed shape");
        m = vs.mul(&m).mul(&vs);
    }
    if y < 0.0 {
        let vr = CMat::diag(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        m = vr.mul(&m).mul(&vr);
    }
    Ok(m)
}

// ---------------------------------------------------------------------------
// loops and windings
// ---------------------------------------------------------------------------

/// The net phase change of a closed loop in the nonzero complex numbers,
/// divided by 2 pi.  The loop is sampled at `samples + 1` equispaced
/// parameters in [0, 1]; adjacent phase steps must stay below pi and the
/// total must land within 0.05 of an integer, otherwise the resolution is
/// deemed insufficient.
pub fn winding_number(loop_fn: impl Fn(f64) -> C64, samples: usize) -> Result<i64> {
    if samples < 8 {
        return Err(CoreError::InvalidParameter(format!(
            "winding needs at least 8 samples, got {samples}"
        )));
    }
    let mut prev = loop_fn(0.0);
    let mut total = 0.0;
    for i in 1..=samples {
        let z = loop_fn(i as f64 / samples as f64);
        if z.norm() < 1e-9 || prev.norm() < 1e-9 {
            return Err(CoreError::Domain("loop passes through zero".into()));
        }
        let step = (z / prev).arg();
        if step.abs() >= PI * (1.0 - 1e-9) {
            return Err(CoreError::Resolution(format!(
                "phase step {step:.4} at sample {i} reaches pi; increase the sample count"
            )));
        }
        total += step;
        prev = z;
    }
    let w = total / TAU;
    let rounded = w.round();
    if (w - rounded).abs() > 0.05 {
        return Err(CoreError::Resolution(format!(
            "net phase change {w:.6} turns is not within 0.05 of an integer"
        )));
    }
    Ok(rounded as i64)
}

/// A closed loop of n x n unitaries, parametrized by [0, 1].
#[derive(Clone)]
pub struct LoopUnitary {
    n: usize,
    f: Arc<dyn Fn(f64) -> CMat + Send + Sync>,
}

impl LoopUnitary {
    pub fn from_fn(n: usize, f: impl Fn(f64) -> CMat + Send + Sync + 'static) -> Self {
        LoopUnitary { n, f: Arc::new(f) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eval(&self, t: f64) -> CMat {
        (self.f)(t)
    }

    pub fn closure_residual(&self) -> f64 {
        self.eval(0.0).max_abs_diff(&self.eval(1.0))
    }

    pub fn unitarity_residual(&self, samples: usize) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..samples {
            let t = i as f64 / samples as f64;
            worst = worst.max(self.eval(t).unitarity_residual());
        }
        worst
    }

    pub fn det_winding(&self, samples: usize) -> Result<i64> {
        winding_number(|t| self.eval(t).det(), samples)
    }
}

/// The j-th exponential loop `t -> exp(2 pi i f_j(t))`, j = 1..4, where the
/// `f_j` interpolate the four rank-one endpoint projections:
///
/// ```text
/// f1 = diag(1-t, 0)   f2 = diag(0, 1-t)
/// f3 = (t/2) [[1,1],[1,1]]   f4 = (t/2) [[1,-1],[-1,1]]
/// ```
///
/// Every loop closes because the endpoint exponents have integer spectrum.
pub fn exp_loop(j: usize) -> Result<LoopUnitary> {
    if !(1..=4).contains(&j) {
        return Err(CoreError::InvalidParameter(format!(
            "exponential loop index {j} outside 1..=4"
        )));
    }
    Ok(LoopUnitary::from_fn(2, move |t| {
        let h = match j {
            1 => CMat::diag(&[c(1.0 - t, 0.0), c(0.0, 0.0)]),
            2 => CMat::diag(&[c(0.0, 0.0), c(1.0 - t, 0.0)]),
            3 => CMat::from_rows(&[
                vec![c(t / 2.0, 0.0), c(t / 2.0, 0.0)],
                vec![c(t / 2.0, 0.0), c(t / 2.0, 0.0)],
            ])
            .expect("fixed shape"),
            _ => CMat::from_rows(&[
                vec![c(t / 2.0, 0.0), c(-t / 2.0, 0.0)],
                vec![c(-t / 2.0, 0.0), c(t / 2.0, 0.0)],
            ])
            .expect("fixed shape"),
        };
        exp_2pi_i_herm2(&h)
    }))
}

// ---------------------------------------------------------------------------
// the unitary lift over the closed disk
// ---------------------------------------------------------------------------

/// The 4x4 unitary over the closed unit disk that lifts the boundary loop
/// `diag(t, 1, conj(t), 1)`:
///
/// ```text
/// u(t) = [[t, 0, -s, 0], [0, 1, 0, 0], [s, 0, conj(t), 0], [0, 0, 0, 1]]
/// ```
///
/// with `s = sqrt(1 - |t|^2)`.  Values with `|t|` within 1e-12 of the
/// boundary snap to `s = 0` so boundary identities hold to machine
/// precision.
pub fn bott_lift(t: C64) -> Result<CMat> {
    let r2 = t.norm_sqr();
    if r2 > 1.0 + 1e-12 {
        return Err(CoreError::InvalidParameter(format!(
            "disk parameter with |t| = {} lies outside the closed disk",
            r2.sqrt()
        )));
    }
    let gap = (1.0 - r2).max(0.0);
    let s = if gap < 1e-12 { 0.0 } else { gap.sqrt() };
    let zero = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    CMat::from_rows(&[
        vec![t, zero, c(-s, 0.0), zero],
        vec![zero, one, zero, zero],
        vec![c(s, 0.0), zero, t.conj(), zero],
        vec![zero, zero, zero, one],
    ])
}

/// The rank-one projection family over the disk that the lift compresses
/// to: `B(t) = [[|t|^2, t s], [conj(t) s, 1 - |t|^2]]`.
pub fn bott_projection(t: C64) -> Result<CMat> {
    let r2 = t.norm_sqr();
    if r2 > 1.0 + 1e-12 {
        return Err(CoreError::InvalidParameter(format!(
            "disk parameter with |t| = {} lies outside the closed disk",
            r2.sqrt()
        )));
    }
    let gap = (1.0 - r2).max(0.0);
    let s = if gap < 1e-12 { 0.0 } else { gap.sqrt() };
    CMat::from_rows(&[
        vec![c(r2.min(1.0), 0.0), t * s],
        vec![t.conj() * s, c(gap, 0.0)],
    ])
}

/// Max residual over the grid of
/// `reorder(u diag(1,1,0,0) u*) - (B(t) (+) diag(1,0))`,
/// where the reordering interleaves the two 2x2 blocks (indices 0,2|1,3).
pub fn bott_projection_check(grid: &[C64]) -> Result<f64> {
    let rank2 = CMat::diag(&[c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
    let mut worst: f64 = 0.0;
    for &t in grid {
        let u = bott_lift(t)?;
        let compressed = u.mul(&rank2).mul(&u.adjoint()).permuted(&[0, 2, 1, 3]);
        let expected = bott_projection(t)?.block_diag(&CMat::diag(&[c(1.0, 0.0), c(0.0, 0.0)]));
        worst = worst.max(compressed.max_abs_diff(&expected));
    }
    Ok(worst)
}

/// An equispaced polar grid on the closed disk (center, interior rings,
/// boundary ring).
pub fn disk_grid(radii: usize, angles: usize) -> Vec<C64> {
    let mut grid = vec![c(0.0, 0.0)];
    for i in 1..=radii {
        let r = i as f64 / radii as f64;
        for j in 0..angles {
            grid.push(C64::from_polar(r, TAU * j as f64 / angles as f64));
        }
    }
    grid
}

// ---------------------------------------------------------------------------
// positive lifts over the third filtration stage
// ---------------------------------------------------------------------------

const STAGE_TOL: f64 = 1e-9;

/// The boundary phase `exp(-2 pi i Im(a)^2)` that the exponentials of the
/// third-stage lifts trace along the degenerate circles.
pub fn lambda_phase(a: C64) -> C64 {
    C64::from_polar(1.0, -TAU * a.im * a.im)
}

/// Normalized real-part direction of a point, the circle parameter the
/// third-stage lifts feed into the extended projections.
fn real_direction(p: &SpherePoint) -> (f64, f64) {
    (p.a().re, p.c().re)
}

/// The positive lift of an extended generating projection over the third
/// filtration stage `{Im a, Im c >= 0, Im(a) Im(c) = 0}`:
///
/// ```text
/// (1 - Im(a)^2) proj(t(a,c))   if Im(c) = 0, Im(a) != 1
/// (1 - Im(c)^2) proj(t(a,c))   if Im(a) = 0, Im(c) != 1
/// 0                            if Im(a) = 1 or Im(c) = 1
/// ```
///
/// where `t(a,c)` normalizes the pair of real parts onto the circle.
pub fn a3_lift(kind: WitnessKind, p: &SpherePoint) -> Result<CMat> {
    let ia = p.a().im;
    let ic = p.c().im;
    if ia < -STAGE_TOL || ic < -STAGE_TOL || (ia > STAGE_TOL && ic > STAGE_TOL) {
        return Err(CoreError::Domain(format!(
            "point with Im(a) = {ia}, Im(c) = {ic} lies outside the third filtration stage"
        )));
    }
    if (1.0 - ia).abs() <= STAGE_TOL || (1.0 - ic).abs() <= STAGE_TOL {
        return Ok(CMat::zeros(2, 2));
    }
    let factor = if ic.abs() <= STAGE_TOL { 1.0 - ia * ia } else { 1.0 - ic * ic };
    let (x, y) = real_direction(p);
    Ok(tilde_projection(kind, x, y)?.scale(c(factor, 0.0)))
}

/// `exp(2 pi i lift)` at a point of the third stage.
pub fn a3_exp(kind: WitnessKind, p: &SpherePoint) -> Result<CMat> {
    Ok(exp_2pi_i_herm2(&a3_lift(kind, p)?))
}

/// Windings of the two diagonal entries of `exp(2 pi i lift)` along the
/// closed half-circle path `(e^{i psi}, 0)`, `psi` from 0 to pi, which runs
/// through the upper degenerate arc and closes at the real endpoints.
pub fn a3_winding_pair(kind: WitnessKind, samples: usize) -> Result<(i64, i64)> {
    let entry_loop = move |idx: usize| {
        move |t: f64| {
            let p = SpherePoint::euler(0.0, PI * t, 0.0);
            a3_exp(kind, &p).expect("path stays inside the stage").at(idx, idx)
        }
    };
    Ok((
        winding_number(entry_loop(0), samples)?,
        winding_number(entry_loop(1), samples)?,
    ))
}

// ---------------------------------------------------------------------------
// sphere unitaries and the degree
// ---------------------------------------------------------------------------

/// A pointwise-unitary matrix function on the sphere.
#[derive(Clone)]
pub struct SphereUnitary {
    n: usize,
    f: Arc<dyn Fn(&SpherePoint) -> CMat + Send + Sync>,
}

impl SphereUnitary {
    pub fn from_fn(n: usize, f: impl Fn(&SpherePoint) -> CMat + Send + Sync + 'static) -> Self {
        SphereUnitary { n, f: Arc::new(f) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eval(&self, p: &SpherePoint) -> CMat {
        (self.f)(p)
    }

    /// The fundamental unitary `[[a, -conj(c)], [c, conj(a)]]` (the identity
    /// map of the sphere, degree +1 by convention).
    pub fn fundamental() -> Self {
        SphereUnitary::from_fn(2, |p| {
            CMat::from_rows(&[vec![p.a(), -p.c().conj()], vec![p.c(), p.a().conj()]])
                .expect("fixed shape")
        })
    }

    /// The degree-one witness `[[a, conj(c)], [c, -conj(a)]]`.
    pub fn witness_x() -> Self {
        SphereUnitary::from_fn(2, |p| {
            CMat::from_rows(&[vec![p.a(), p.c().conj()], vec![p.c(), -p.a().conj()]])
                .expect("fixed shape")
        })
    }

    /// The degree-one witness `[[-a, conj(c)], [c, conj(a)]]`.
    pub fn witness_y() -> Self {
        SphereUnitary::from_fn(2, |p| {
            CMat::from_rows(&[vec![-p.a(), p.c().conj()], vec![p.c(), p.a().conj()]])
                .expect("fixed shape")
        })
    }

    pub fn constant(m: CMat) -> Self {
        let n = m.rows();
        SphereUnitary::from_fn(n, move |_| m.clone())
    }

    /// The image of the fundamental unitary of the q = -1 algebra under the
    /// entrywise matrix-function embedding: a 4x4 sphere unitary.
    pub fn embedded_fundamental() -> Self {
        let q = QParam::minus_one();
        let uq = make_uq(&q);
        SphereUnitary::from_fn(4, move |p| {
            let mut out = CMat::zeros(4, 4);
            for bi in 0..2 {
                for bj in 0..2 {
                    let block = phi_eval(uq.entry(bi, bj), p).expect("parameter is -1");
                    for r in 0..2 {
                        for s in 0..2 {
                            out.set(2 * bi + r, 2 * bj + s, block.at(r, s));
                        }
                    }
                }
            }
            out
        })
    }

    pub fn block_diag(&self, other: &SphereUnitary) -> SphereUnitary {
        let (a, b) = (self.clone(), other.clone());
        SphereUnitary::from_fn(self.n + other.n, move |p| a.eval(p).block_diag(&b.eval(p)))
    }

    pub fn pointwise_mul(&self, other: &SphereUnitary) -> Result<SphereUnitary> {
        if self.n != other.n {
            return Err(CoreError::DimensionMismatch { expected: self.n, found: other.n });
        }
        let (a, b) = (self.clone(), other.clone());
        Ok(SphereUnitary::from_fn(self.n, move |p| a.eval(p).mul(&b.eval(p))))
    }

    pub fn unitarity_residual(&self, points: &[SpherePoint]) -> f64 {
        points
            .iter()
            .map(|p| self.eval(p).unitarity_residual())
            .fold(0.0, f64::max)
    }
}

/// 4th-order finite-difference weights: interior central stencil and the
/// four one-sided edge stencils, all over five nodes.
const CENTRAL: [f64; 5] = [1.0, -8.0, 0.0, 8.0, -1.0];
const EDGE0: [f64; 5] = [-25.0, 48.0, -36.0, 16.0, -3.0];
const EDGE1: [f64; 5] = [-3.0, -10.0, 18.0, -6.0, 1.0];

fn lin5(mats: [&CMat; 5], coeffs: [f64; 5], denom: f64) -> CMat {
    let mut out = CMat::zeros(mats[0].rows(), mats[0].cols());
    for (m, w) in mats.iter().zip(coeffs) {
        if w != 0.0 {
            out = out.add(&m.scale(c(w / denom, 0.0)));
        }
    }
    out
}

fn trace_product_re(a: &CMat, b: &CMat) -> f64 {
    let n = a.rows();
    let mut acc = c(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            acc += a.at(i, j) * b.at(j, i);
        }
    }
    acc.re
}

/// The degree of a smooth sphere unitary: the normalized integral
/// `-(1/24 pi^2) \int tr((u^{-1} du)^3)` evaluated on an Euler-angle grid
/// `(theta, phi1, phi2)` of the given resolution per axis, rounded to the
/// nearest integer when within 0.05.  Half-step offsets in theta avoid the
/// coordinate-singular circles; derivatives are 4th-order finite
/// differences (periodic in the phases, one-sided at the theta edges).
pub fn degree3(u: &SphereUnitary, resolution: usize) -> Result<i64> {
    if resolution < 24 {
        return Err(CoreError::InvalidParameter(format!(
            "degree grid resolution {resolution} is below the supported minimum of 24"
        )));
    }
    let n = resolution;
    let ht = FRAC_PI_2 / n as f64;
    let hp = TAU / n as f64;

    // evaluate the unitary once per grid node, one contiguous row per theta
    let values: Vec<Vec<CMat>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let theta = (i as f64 + 0.5) * ht;
            let mut row = Vec::with_capacity(n * n);
            for j in 0..n {
                let phi1 = j as f64 * hp;
                for k in 0..n {
                    let phi2 = k as f64 * hp;
                    row.push(u.eval(&SpherePoint::euler(theta, phi1, phi2)));
                }
            }
            row
        })
        .collect();

    // per-row partial sums in a fixed order keep the reduction deterministic
    let row_sums: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut acc = 0.0;
            for j in 0..n {
                for k in 0..n {
                    let at = |ii: usize, jj: usize, kk: usize| &values[ii][jj * n + kk];
                    let du_t = match i {
                        0 => lin5(
                            [at(0, j, k), at(1, j, k), at(2, j, k), at(3, j, k), at(4, j, k)],
                            EDGE0,
                            12.0 * ht,
                        ),
                        1 => lin5(
                            [at(0, j, k), at(1, j, k), at(2, j, k), at(3, j, k), at(4, j, k)],
                            EDGE1,
                            12.0 * ht,
                        ),
                        i if i == n - 2 => lin5(
                            [
                                at(n - 5, j, k),
                                at(n - 4, j, k),
                                at(n - 3, j, k),
                                at(n - 2, j, k),
                                at(n - 1, j, k),
                            ],
                            [-EDGE1[4], -EDGE1[3], -EDGE1[2], -EDGE1[1], -EDGE1[0]],
                            12.0 * ht,
                        ),
                        i if i == n - 1 => lin5(
                            [
                                at(n - 5, j, k),
                                at(n - 4, j, k),
                                at(n - 3, j, k),
                                at(n - 2, j, k),
                                at(n - 1, j, k),
                            ],
                            [-EDGE0[4], -EDGE0[3], -EDGE0[2], -EDGE0[1], -EDGE0[0]],
                            12.0 * ht,
                        ),
                        _ => lin5(
                            [
                                at(i - 2, j, k),
                                at(i - 1, j, k),
                                at(i, j, k),
                                at(i + 1, j, k),
                                at(i + 2, j, k),
                            ],
                            CENTRAL,
                            12.0 * ht,
                        ),
                    };
                    let wrap = |x: usize, off: i64| ((x as i64 + off).rem_euclid(n as i64)) as usize;
                    let du_1 = lin5(
                        [
                            at(i, wrap(j, -2), k),
                            at(i, wrap(j, -1), k),
                            at(i, j, k),
                            at(i, wrap(j, 1), k),
                            at(i, wrap(j, 2), k),
                        ],
                        CENTRAL,
                        12.0 * hp,
                    );
                    let du_2 = lin5(
                        [
                            at(i, j, wrap(k, -2)),
                            at(i, j, wrap(k, -1)),
                            at(i, j, k),
                            at(i, j, wrap(k, 1)),
                            at(i, j, wrap(k, 2)),
                        ],
                        CENTRAL,
                        12.0 * hp,
                    );
                    let ustar = at(i, j, k).adjoint();
                    let mt = ustar.mul(&du_t);
                    let m1 = ustar.mul(&du_1);
                    let m2 = ustar.mul(&du_2);
                    let comm = m1.mul(&m2).sub(&m2.mul(&m1));
                    acc += trace_product_re(&mt, &comm);
                }
            }
            acc
        })
        .collect();

    let total: f64 = row_sums.iter().sum();
    let value = DEGREE_ORIENTATION * total * ht * hp * hp / (8.0 * PI * PI);
    let rounded = value.round();
    if (value - rounded).abs() > 0.05 {
        return Err(CoreError::Resolution(format!(
            "degree integral {value:.6} is not within 0.05 of an integer; increase the resolution"
        )));
    }
    Ok(rounded as i64)
}

/// Degree of the embedded fundamental unitary; the certified value is 2,
/// pinning the index computation of the whole tower.
pub fn phi_u_degree(resolution: usize) -> Result<i64> {
    degree3(&SphereUnitary::embedded_fundamental(), resolution)
}
