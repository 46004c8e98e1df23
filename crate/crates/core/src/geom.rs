//! The geometric model of the q = -1 algebra.
//!
//! Points of the unit 3-sphere are pairs `(a, c)` of complex numbers with
//! `|a|^2 + |c|^2 = 1`.  The algebra embeds into 2x2 matrix functions on the
//! sphere by
//!
//! ```text
//! phi(alpha)(a,c) = [[a, 0], [0, -a]]      phi(gamma)(a,c) = [[0, c], [c, 0]]
//! ```
//!
//! and its image is exactly the fixed-point algebra of the Klein four-group
//! action generated by
//!
//! ```text
//! b1(F)(a,c) = v_r F(a,-c) v_r        v_r = diag(1, -1)
//! b2(F)(a,c) = v_s F(-a,c) v_s        v_s = [[0,1],[1,0]]
//! ```
//!
//! Irreducible representations are the characters at the two degenerate
//! circles (`c = 0` or `a = 0`) and the 2x2 evaluations elsewhere; the orbit
//! of `(a, c)` under the sign flips labels the equivalence class.  The
//! module also carries the Haar quadrature on the sphere, which connects the
//! exact Haar state of the symbolic layer to the trace of the model.

use std::f64::consts::TAU;
use std::sync::Arc;

use crate::algebra::Element;
use crate::error::{CoreError, Result};
use crate::linalg::{gauss_legendre_01, CMat, C64};
use crate::scalar::QParam;

/// Numerical tolerance used for degeneracy decisions on sphere points.
pub const POINT_TOL: f64 = 1e-12;

/// A point `(a, c)` of the unit sphere in C^2, renormalized on construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint {
    a: C64,
    c: C64,
}

impl SpherePoint {
    /// Build a point, scaling the pair onto the unit sphere.  Rejects pairs
    /// too close to the origin to normalize meaningfully.
    pub fn new(a: C64, c: C64) -> Result<Self> {
        let n = (a.norm_sqr() + c.norm_sqr()).sqrt();
        if n < 1e-9 {
            return Err(CoreError::Domain("cannot normalize a near-zero pair".into()));
        }
        if (n - 1.0).abs() <= POINT_TOL {
            Ok(SpherePoint { a, c })
        } else {
            Ok(SpherePoint { a: a / n, c: c / n })
        }
    }

    /// The point `(cos t e^{i p1}, sin t e^{i p2})`.
    pub fn euler(theta: f64, phi1: f64, phi2: f64) -> Self {
        let a = C64::from_polar(theta.cos(), phi1);
        let c = C64::from_polar(theta.sin(), phi2);
        SpherePoint { a, c }
    }

    pub fn a(&self) -> C64 {
        self.a
    }

    pub fn c(&self) -> C64 {
        self.c
    }

    /// Is the point on one of the two degenerate circles?
    pub fn is_degenerate(&self) -> bool {
        self.a.norm() * self.c.norm() <= POINT_TOL
    }

    pub fn flip_a(&self) -> SpherePoint {
        SpherePoint { a: -self.a, c: self.c }
    }

    pub fn flip_c(&self) -> SpherePoint {
        SpherePoint { a: self.a, c: -self.c }
    }

    pub fn apply(&self, g: GroupElement) -> SpherePoint {
        let mut p = *self;
        if g.flips_a {
            p = p.flip_a();
        }
        if g.flips_c {
            p = p.flip_c();
        }
        p
    }

    /// Left translation by the SU(2) element with first column `(a, c)`.
    pub fn translate_left(&self, g: &SpherePoint) -> SpherePoint {
        SpherePoint {
            a: g.a * self.a - g.c.conj() * self.c,
            c: g.c * self.a + g.a.conj() * self.c,
        }
    }

    /// Geodesic distance on the 3-sphere (range [0, pi]).
    pub fn distance(&self, other: &SpherePoint) -> f64 {
        let inner = (self.a.conj() * other.a + self.c.conj() * other.c).re;
        inner.clamp(-1.0, 1.0).acos()
    }
}

/// An element of the Klein four-group of sign flips.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupElement {
    /// negate the `a` coordinate
    pub flips_a: bool,
    /// negate the `c` coordinate
    pub flips_c: bool,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement { flips_a: false, flips_c: false };
    pub const FLIP_A: GroupElement = GroupElement { flips_a: true, flips_c: false };
    pub const FLIP_C: GroupElement = GroupElement { flips_a: false, flips_c: true };
    pub const FLIP_BOTH: GroupElement = GroupElement { flips_a: true, flips_c: true };

    pub fn all() -> [GroupElement; 4] {
        [Self::IDENTITY, Self::FLIP_A, Self::FLIP_C, Self::FLIP_BOTH]
    }

    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        GroupElement {
            flips_a: self.flips_a ^ other.flips_a,
            flips_c: self.flips_c ^ other.flips_c,
        }
    }

    /// The unitary that intertwines the 2x2 representation at `p` with the
    /// one at `g . p`: the swap matrix accompanies the `a` flip, the
    /// diagonal sign matrix the `c` flip.
    pub fn intertwiner(&self) -> CMat {
        let mut v = CMat::identity(2);
        if self.flips_a {
            v = swap_matrix().mul(&v);
        }
        if self.flips_c {
            v = v.mul(&sign_matrix());
        }
        v
    }
}

fn sign_matrix() -> CMat {
    CMat::diag(&[C64::new(1.0, 0.0), C64::new(-1.0, 0.0)])
}

fn swap_matrix() -> CMat {
    let mut m = CMat::zeros(2, 2);
    m.set(0, 1, C64::new(1.0, 0.0));
    m.set(1, 0, C64::new(1.0, 0.0));
    m
}

/// A matrix-valued function on the sphere, evaluated lazily.
#[derive(Clone)]
pub struct MatFun {
    n: usize,
    f: Arc<dyn Fn(&SpherePoint) -> CMat + Send + Sync>,
}

impl MatFun {
    pub fn from_fn(n: usize, f: impl Fn(&SpherePoint) -> CMat + Send + Sync + 'static) -> Self {
        MatFun { n, f: Arc::new(f) }
    }

    pub fn constant(m: CMat) -> Self {
        let n = m.rows();
        MatFun::from_fn(n, move |_| m.clone())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn eval(&self, p: &SpherePoint) -> CMat {
        (self.f)(p)
    }

    /// Evaluate once per point of a grid.
    pub fn sample(&self, points: &[SpherePoint]) -> Vec<CMat> {
        points.iter().map(|p| self.eval(p)).collect()
    }

    pub fn add(&self, other: &MatFun) -> Result<MatFun> {
        if self.n != other.n {
            return Err(CoreError::DimensionMismatch { expected: self.n, found: other.n });
        }
        let (f, g) = (self.clone(), other.clone());
        Ok(MatFun::from_fn(self.n, move |p| f.eval(p).add(&g.eval(p))))
    }

    pub fn scale(&self, s: C64) -> MatFun {
        let f = self.clone();
        MatFun::from_fn(self.n, move |p| f.eval(p).scale(s))
    }
}

/// Evaluate the embedding `phi` of an exact q = -1 element at one point:
/// always the 2x2 formula, whatever the point.
pub fn phi_eval(x: &Element, p: &SpherePoint) -> Result<CMat> {
    require_minus_one(x)?;
    let mut out = CMat::zeros(2, 2);
    for (mono, coeff) in x.terms() {
        let (d0, d1) = alpha_block_diag(mono.k, p.a);
        let scal = p.c.powu(mono.l) * p.c.conj().powu(mono.m);
        let c = coeff.to_c64() * scal;
        if (mono.l + mono.m) % 2 == 0 {
            out.add_at(0, 0, c * d0);
            out.add_at(1, 1, c * d1);
        } else {
            out.add_at(0, 1, c * d0);
            out.add_at(1, 0, c * d1);
        }
    }
    Ok(out)
}

/// diag entries of `phi(alpha)^k` at the point (handles negative powers).
fn alpha_block_diag(k: i64, a: C64) -> (C64, C64) {
    if k >= 0 {
        let p = a.powu(k as u32);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        (p, p * sign)
    } else {
        let p = a.conj().powu((-k) as u32);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        (p, p * sign)
    }
}

/// The embedding as a matrix function.
pub fn phi_matfun(x: &Element) -> Result<MatFun> {
    require_minus_one(x)?;
    let x = x.clone();
    Ok(MatFun::from_fn(2, move |p| phi_eval(&x, p).expect("parameter checked at construction")))
}

/// Evaluate the irreducible representation attached to the point:
/// a character (1x1) on the degenerate circles, the 2x2 evaluation
/// elsewhere.
pub fn rep_eval(x: &Element, p: &SpherePoint) -> Result<CMat> {
    require_minus_one(x)?;
    let zero = C64::new(0.0, 0.0);
    if p.c.norm() <= POINT_TOL {
        // character alpha -> a, gamma -> 0
        let mut v = zero;
        for (mono, coeff) in x.terms() {
            if mono.l == 0 && mono.m == 0 {
                v += coeff.to_c64() * signed_power(p.a, mono.k);
            }
        }
        let mut m = CMat::zeros(1, 1);
        m.set(0, 0, v);
        return Ok(m);
    }
    if p.a.norm() <= POINT_TOL {
        // character alpha -> 0, gamma -> c
        let mut v = zero;
        for (mono, coeff) in x.terms() {
            if mono.k == 0 {
                v += coeff.to_c64() * p.c.powu(mono.l) * p.c.conj().powu(mono.m);
            }
        }
        let mut m = CMat::zeros(1, 1);
        m.set(0, 0, v);
        return Ok(m);
    }
    phi_eval(x, p)
}

fn signed_power(a: C64, k: i64) -> C64 {
    if k >= 0 {
        a.powu(k as u32)
    } else {
        a.conj().powu((-k) as u32)
    }
}

fn require_minus_one(x: &Element) -> Result<()> {
    if !x.q().is_minus_one() {
        return Err(CoreError::ParameterMismatch {
            left: "-1".into(),
            right: x.q().to_string(),
        });
    }
    Ok(())
}

/// The action of a flip-group element on 2x2 matrix functions: the `c` flip
/// conjugates by `diag(1,-1)` after composing with `(a,c) -> (a,-c)`, the
/// `a` flip conjugates by the swap matrix after composing with
/// `(a,c) -> (-a,c)`.
pub fn g_action(g: GroupElement, fun: &MatFun) -> Result<MatFun> {
    if fun.n() != 2 {
        return Err(CoreError::DimensionMismatch { expected: 2, found: fun.n() });
    }
    let inner = fun.clone();
    Ok(MatFun::from_fn(2, move |p| {
        let mut value = inner.eval(&p.apply(g));
        if g.flips_c {
            let v = sign_matrix();
            value = v.mul(&value).mul(&v);
        }
        if g.flips_a {
            let v = swap_matrix();
            value = v.mul(&value).mul(&v);
        }
        value
    }))
}

/// Averaging over the four flips: the conditional expectation onto the
/// fixed-point algebra.  Idempotent, and the identity on embedded elements.
pub fn conditional_expectation(fun: &MatFun) -> Result<MatFun> {
    let mut parts = Vec::with_capacity(4);
    for g in GroupElement::all() {
        parts.push(g_action(g, fun)?);
    }
    let quarter = C64::new(0.25, 0.0);
    Ok(MatFun::from_fn(2, move |p| {
        let mut acc = CMat::zeros(2, 2);
        for part in &parts {
            acc = acc.add(&part.eval(p));
        }
        acc.scale(quarter)
    }))
}

/// Worst violation, over a grid, of the entry symmetries that cut out the
/// fixed-point algebra.  Writing `F = f 1 + g d + h x + k y` with
/// `d = diag(1,-1)`, `x = [[0,1],[1,0]]`, `y = [[0,1],[-1,0]]`, the
/// components must satisfy (with `r`: a-flip, `s`: c-flip)
///
/// ```text
/// f = f.r = f.s      g = -g.r = g.s      h = h.r = -h.s      k = -k.r = -k.s
/// ```
pub fn symmetry_decomposition_check(fun: &MatFun, grid: &[SpherePoint]) -> Result<f64> {
    if fun.n() != 2 {
        return Err(CoreError::DimensionMismatch { expected: 2, found: fun.n() });
    }
    let mut worst: f64 = 0.0;
    for p in grid {
        let here = components(&fun.eval(p));
        let ra = components(&fun.eval(&p.flip_a()));
        let sc = components(&fun.eval(&p.flip_c()));
        let (f0, g0, h0, k0) = here;
        let (fr, gr, hr, kr) = ra;
        let (fs, gs, hs, ks) = sc;
        for v in [
            (f0 - fr).norm(),
            (f0 - fs).norm(),
            (g0 + gr).norm(),
            (g0 - gs).norm(),
            (h0 - hr).norm(),
            (h0 + hs).norm(),
            (k0 + kr).norm(),
            (k0 + ks).norm(),
        ] {
            worst = worst.max(v);
        }
    }
    Ok(worst)
}

fn components(m: &CMat) -> (C64, C64, C64, C64) {
    let half = C64::new(0.5, 0.0);
    (
        (m.at(0, 0) + m.at(1, 1)) * half,
        (m.at(0, 0) - m.at(1, 1)) * half,
        (m.at(0, 1) + m.at(1, 0)) * half,
        (m.at(0, 1) - m.at(1, 0)) * half,
    )
}

/// The Haar-measure quadrature grid on the sphere for a given order:
/// Gauss-Legendre in `u = sin^2(theta)` (the radial density is exactly
/// uniform in `u`), uniform periodic grids in the two phases.
pub fn haar_grid(order: usize) -> Vec<(SpherePoint, f64)> {
    let radial = gauss_legendre_01(order);
    let phase_w = 1.0 / (order * order) as f64;
    let mut grid = Vec::with_capacity(order * order * order);
    for (u, wu) in radial {
        let theta = u.sqrt().asin();
        for i in 0..order {
            let phi1 = TAU * i as f64 / order as f64;
            for j in 0..order {
                let phi2 = TAU * j as f64 / order as f64;
                grid.push((SpherePoint::euler(theta, phi1, phi2), wu * phase_w));
            }
        }
    }
    grid
}

/// Integrate a scalar function against the Haar measure.
pub fn haar_quadrature(f: impl Fn(&SpherePoint) -> C64, order: usize) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    for (p, w) in haar_grid(order) {
        acc += f(&p) * w;
    }
    acc
}

/// Integrate a matrix function entrywise against the Haar measure.
pub fn haar_quadrature_mat(fun: &MatFun, order: usize) -> CMat {
    let mut acc = CMat::zeros(fun.n(), fun.n());
    for (p, w) in haar_grid(order) {
        acc = acc.add(&fun.eval(&p).scale(C64::new(w, 0.0)));
    }
    acc
}

/// The composition (classical Haar integral) o (normalized trace) o phi —
/// the numeric shadow of the exact q = -1 Haar state.
pub fn haar_trace_state(x: &Element, order: usize) -> Result<C64> {
    require_minus_one(x)?;
    Ok(haar_quadrature(
        |p| phi_eval(x, p).expect("parameter checked").normalized_trace(),
        order,
    ))
}

/// Canonical representative of the flip orbit of `p`: signs are chosen so
/// that `(Re a, Im a)` is lexicographically maximal, then `(Re c, Im c)`.
/// Degenerate points are their own orbit and are returned unchanged.
pub fn orbit_canonical(p: &SpherePoint) -> SpherePoint {
    if p.is_degenerate() {
        return *p;
    }
    let pick = |z: C64| -> C64 {
        if z.re > POINT_TOL {
            z
        } else if z.re < -POINT_TOL {
            -z
        } else if z.im >= 0.0 {
            z
        } else {
            -z
        }
    };
    SpherePoint { a: pick(p.a), c: pick(p.c) }
}

/// Do two points label equivalent representations?  Away from the
/// degenerate circles the orbit is the four sign combinations, so the
/// squares `(a^2, c^2)` classify; on the circles points only match
/// themselves.
pub fn orbit_equal(p: &SpherePoint, other: &SpherePoint, tol: f64) -> bool {
    match (p.is_degenerate(), other.is_degenerate()) {
        (true, true) => (p.a - other.a).norm() <= tol && (p.c - other.c).norm() <= tol,
        (false, false) => {
            (p.a * p.a - other.a * other.a).norm() <= tol
                && (p.c * p.c - other.c * other.c).norm() <= tol
        }
        _ => false,
    }
}

/// Residual of the intertwining relation at a nondegenerate point:
/// `v pi_p(x) v* = pi_{g.p}(x)` checked on both generators.
pub fn intertwiner_check(p: &SpherePoint, g: GroupElement) -> Result<f64> {
    if p.is_degenerate() {
        return Err(CoreError::Domain(
            "flip intertwiners only relate the 2x2 representations; the point is degenerate".into(),
        ));
    }
    let q = QParam::minus_one();
    let v = g.intertwiner();
    let vs = v.adjoint();
    let gp = p.apply(g);
    let mut worst: f64 = 0.0;
    for x in [Element::alpha(&q), Element::gamma(&q)] {
        let lhs = v.mul(&rep_eval(&x, p)?).mul(&vs);
        let rhs = rep_eval(&x, &gp)?;
        worst = worst.max(lhs.max_abs_diff(&rhs));
    }
    Ok(worst)
}

/// A smooth fixed-point element that is the identity on the orbit of
/// `target` and vanishes on the orbits of `family`: a compactly supported
/// radial bump around each flip translate of the target, radius half the
/// separation, averaged over the group.
///
/// Errors if the target orbit meets the family (no such element exists).
pub fn separating_element(family: &[SpherePoint], target: &SpherePoint) -> Result<MatFun> {
    if family.is_empty() {
        return Ok(MatFun::constant(CMat::identity(2)));
    }
    // distinct flip translates of the target
    let mut centers: Vec<SpherePoint> = Vec::new();
    for g in GroupElement::all() {
        let t = target.apply(g);
        if !centers.iter().any(|c| c.distance(&t) <= POINT_TOL) {
            centers.push(t);
        }
    }
    // full flip saturation of the family
    let mut obstacles: Vec<SpherePoint> = Vec::new();
    for p in family {
        for g in GroupElement::all() {
            obstacles.push(p.apply(g));
        }
    }
    let mut min_gap = f64::INFINITY;
    for c in &centers {
        for o in &obstacles {
            min_gap = min_gap.min(c.distance(o));
        }
    }
    if min_gap <= 1e-9 {
        return Err(CoreError::Domain(
            "target orbit meets the family; no separating element exists".into(),
        ));
    }
    let mut intra = f64::INFINITY;
    for i in 0..centers.len() {
        for j in i + 1..centers.len() {
            intra = intra.min(centers[i].distance(&centers[j]));
        }
    }
    let radius = 0.5 * min_gap.min(intra);
    let centers_owned = centers.clone();
    let scalar = MatFun::from_fn(2, move |p| {
        let mut v = 0.0;
        for c in &centers_owned {
            v += bump(p.distance(c) / radius);
        }
        CMat::identity(2).scale(C64::new(v, 0.0))
    });
    // already flip-invariant, but route it through the expectation so the
    // output is fixed by construction, not by accident
    conditional_expectation(&scalar)
}

/// `exp(1 - 1/(1 - s^2))` on [0, 1), zero beyond: a C-infinity cutoff with
/// value 1 at the center.
fn bump(s: f64) -> f64 {
    if s >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - s * s)).exp()
    }
}
