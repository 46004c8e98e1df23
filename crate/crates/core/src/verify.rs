//! Verification suites: every module's headline guarantees packaged as
//! pass/fail records for the command-line front end.
//!
//! Each suite is deterministic for a fixed configuration — randomized
//! checks draw from a seeded generator, grids and summation orders are
//! fixed — so identical configurations produce byte-identical reports.

use num_complex::Complex64;
use num_traits::{One, Signed, Zero};

use crate::algebra::{make_uq, Element, Monomial};
use crate::bundle::{
    bundle_scan, haar_profile, norm_lower_bound, relation_residual_interior, QGrid,
};
use crate::error::Result;
use crate::geom::{
    conditional_expectation, g_action, haar_grid, haar_trace_state, intertwiner_check,
    phi_matfun, separating_element, symmetry_decomposition_check, GroupElement, SpherePoint,
};
use crate::haar::{
    haar_monomial, invariance_residuals, invariance_residuals_with, recursion_check_neg1,
};
use crate::hopf::{closed_form_neg1, coassociativity_holds, counit, Coproduct};
use crate::ktheory::{
    a3_exp, a3_lift, a3_winding_pair, bott_lift, bott_projection_check, disk_grid, exp_loop,
    lambda_phase, phi_u_degree, tilde_projection, degree3, PathProjection, SphereUnitary,
    WitnessKind,
};
use crate::linalg::{CMat, C64};
use crate::report::{Report, VerificationRecord};
use crate::sampling::{random_element_of_degree, seeded_rng};
use crate::scalar::{rat, QParam, Rat};

/// Shared knobs for the suites; the defaults match the command-line
/// defaults.
#[derive(Debug, Clone)]
pub struct VerifyConfig {
    /// Deformation parameter for the algebraic suites.
    pub q: QParam,
    /// Exponent bound for monomial sweeps.
    pub degree: u32,
    /// Grid resolution for the degree-three pairing.
    pub res: usize,
    /// Haar quadrature order.
    pub order: usize,
    /// Seed for randomized checks.
    pub seed: u64,
    /// Truncation sizes for fiber norm bounds.
    pub truncations: Vec<usize>,
    /// Residual tolerance for floating-point checks.
    pub tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            q: QParam::minus_one(),
            degree: 3,
            res: 24,
            order: 32,
            seed: 0,
            truncations: vec![10, 20, 40],
            tol: 1e-12,
        }
    }
}

fn relation_elements(q: &QParam) -> Result<Vec<(&'static str, Element)>> {
    let a = Element::alpha(q);
    let a_s = Element::alpha_star(q);
    let g = Element::gamma(q);
    let g_s = Element::gamma_star(q);
    let one = Element::unit(q);
    let q_rat = q.value().clone();
    Ok(vec![
        ("a*a+g*g=1", a_s.normal_mul(&a)?.add(&g_s.normal_mul(&g)?)?.sub(&one)?),
        (
            "aa*+q^2gg*=1",
            a.normal_mul(&a_s)?
                .add(&g.normal_mul(&g_s)?.scale_rat(&(&q_rat * &q_rat)))?
                .sub(&one)?,
        ),
        ("ag=qga", a.normal_mul(&g)?.sub(&g.normal_mul(&a)?.scale_rat(&q_rat))?),
        ("ag*=qg*a", a.normal_mul(&g_s)?.sub(&g_s.normal_mul(&a)?.scale_rat(&q_rat))?),
        ("gg*=g*g", g.normal_mul(&g_s)?.sub(&g_s.normal_mul(&g)?)?),
    ])
}

/// Exact algebra: defining relations, star structure, associativity, the
/// unitarity of the fundamental corepresentation matrix, serialization.
pub fn algebra_suite(cfg: &VerifyConfig) -> Result<Vec<VerificationRecord>> {
    let q = &cfg.q;
    let mut out = Vec::new();
    for (name, rel) in relation_elements(q)? {
        out.push(VerificationRecord::exact(
            format!("algebra.relation.{name}"),
            format!("relation {name} holds identically at q = {q}"),
            "0",
            rel.term_count(),
        ));
    }
    let u = make_uq(q);
    let id_minus = |m: &crate::algebra::AlgMatrix| -> usize {
        let mut worst = 0;
        for i in 0..m.n() {
            for j in 0..m.n() {
                let mut e = m.entry(i, j).clone();
                if i == j {
                    e = e.sub(&Element::unit(q)).unwrap();
                }
                worst += e.term_count();
            }
        }
        worst
    };
    out.push(VerificationRecord::exact(
        "algebra.uq.left-unitary",
        format!("u* u = 1 entrywise at q = {q}"),
        "0",
        id_minus(&u.star().mul(&u)?),
    ));
    out.push(VerificationRecord::exact(
        "algebra.uq.right-unitary",
        format!("u u* = 1 entrywise at q = {q}"),
        "0",
        id_minus(&u.mul(&u.star())?),
    ));
    let mut rng = seeded_rng(cfg.seed);
    let mut star_defects = 0usize;
    let mut assoc_defects = 0usize;
    let mut json_defects = 0usize;
    for _ in 0..5 {
        let x = random_element_of_degree(q, cfg.degree.min(3), 4, &mut rng);
        let y = random_element_of_degree(q, cfg.degree.min(3), 4, &mut rng);
        let z = random_element_of_degree(q, 2, 3, &mut rng);
        if !x.star().star().sub(&x)?.is_zero() {
            star_defects += 1;
        }
        if !x.normal_mul(&y)?.star().sub(&y.star().normal_mul(&x.star())?)?.is_zero() {
            star_defects += 1;
        }
        if !x
            .normal_mul(&y)?
            .normal_mul(&z)?
            .sub(&x.normal_mul(&y.normal_mul(&z)?)?)?
            .is_zero()
        {
            assoc_defects += 1;
        }
        if !Element::from_json(&x.to_json())?.sub(&x)?.is_zero() {
            json_defects += 1;
        }
    }
    out.push(VerificationRecord::exact(
        "algebra.star.antihomomorphism",
        "star is an antimultiplicative involution on random elements",
        "0",
        star_defects,
    ));
    out.push(VerificationRecord::exact(
        "algebra.associativity",
        "normal-form product is associative on random triples",
        "0",
        assoc_defects,
    ));
    out.push(VerificationRecord::exact(
        "algebra.serialization",
        "elements round-trip through JSON",
        "0",
        json_defects,
    ));
    Ok(out)
}

/// Coalgebra: homomorphism property, coassociativity, counit laws, and the
/// closed form of the coproduct at q = -1.
pub fn hopf_suite(cfg: &VerifyConfig) -> Result<Vec<VerificationRecord>> {
    let q = &cfg.q;
    let mut ctx = Coproduct::new(q);
    let mut rng = seeded_rng(cfg.seed);
    let mut out = Vec::new();
    let mut hom_defects = 0usize;
    let mut coassoc_defects = 0usize;
    let mut counit_defects = 0usize;
    for _ in 0..3 {
        let x = random_element_of_degree(q, 2, 3, &mut rng);
        let y = random_element_of_degree(q, 2, 3, &mut rng);
        let dx = ctx.of_element(&x)?;
        let dy = ctx.of_element(&y)?;
        let dxy = ctx.of_element(&x.normal_mul(&y)?)?;
        if !dxy.sub(&dx.tensor_mul(&dy)?)?.is_zero() {
            hom_defects += 1;
        }
        if !coassociativity_holds(&mut ctx, &x)? {
            coassoc_defects += 1;
        }
        if !dx.apply_left_state(counit).sub(&x)?.is_zero() {
            counit_defects += 1;
        }
        if !dx.apply_right_state(counit).sub(&x)?.is_zero() {
            counit_defects += 1;
        }
    }
    out.push(VerificationRecord::exact(
        "hopf.homomorphism",
        format!("coproduct is multiplicative on random elements at q = {q}"),
        "0",
        hom_defects,
    ));
    out.push(VerificationRecord::exact(
        "hopf.coassociativity",
        "both iterated coproducts agree on random elements",
        "0",
        coassoc_defects,
    ));
    out.push(VerificationRecord::exact(
        "hopf.counit",
        "the counit collapses either leg of the coproduct to the identity",
        "0",
        counit_defects,
    ));
    if q.is_minus_one() {
        let mut closed_defects = 0usize;
        for (k, l, m) in [(0i64, 1u32, 1u32), (1, 0, 0), (2, 1, 0), (1, 2, 1), (3, 1, 2)] {
            let direct = ctx.of_monomial(&Monomial::new(k, l, m));
            if !closed_form_neg1(k, l, m)?.sub(&direct)?.is_zero() {
                closed_defects += 1;
            }
        }
        out.push(VerificationRecord::exact(
            "hopf.closed-form",
            "the closed-form coproduct at q = -1 matches the recursive one",
            "0",
            closed_defects,
        ));
    }
    Ok(out)
}

/// Render an exact rational for a report cell.
fn show_rat(r: &Rat) -> String {
    r.to_string()
}

/// The Haar state: boundary values, sample exact values, bi-invariance over
/// a monomial sweep, the diagonal recursion, and the detection of a wrong
/// normalization.
pub fn haar_suite(cfg: &VerifyConfig) -> Result<Vec<VerificationRecord>> {
    let mut out = Vec::new();
    let q_minus = QParam::minus_one();
    for m in 0..=6u32 {
        let expected = rat(1, i64::from(m) + 1);
        out.push(VerificationRecord::exact(
            format!("haar.boundary.m{m}"),
            format!("h(eta(0,{m},{m})) at q = -1 equals 1/{}", m + 1),
            show_rat(&expected),
            show_rat(&haar_monomial(&q_minus, 0, m, m)),
        ));
    }
    out.push(VerificationRecord::exact(
        "haar.sample.half",
        "h(eta(0,1,1)) at q = -1/2 equals 4/5",
        "4/5",
        show_rat(&haar_monomial(&QParam::parse("-1/2")?, 0, 1, 1)),
    ));
    out.push(VerificationRecord::exact(
        "haar.sample.fine",
        "h(eta(0,1,1)) at q = -99/100 equals 10000/19801",
        "10000/19801",
        show_rat(&haar_monomial(&QParam::parse("-99/100")?, 0, 1, 1)),
    ));
    let q = &cfg.q;
    let deg = cfg.degree as i64;
    let mut nonzero = 0usize;
    for k in -deg..=deg {
        for l in 0..=cfg.degree {
            for m in 0..=cfg.degree {
                let x = Element::monomial(q, k, l, m);
                let (right, left) = invariance_residuals(&x)?;
                if !right.is_zero() || !left.is_zero() {
                    nonzero += 1;
                }
            }
        }
    }
    out.push(VerificationRecord::exact(
        "haar.invariance",
        format!(
            "left and right invariance residuals vanish for |k|,l,m <= {} at q = {q}",
            cfg.degree
        ),
        "0",
        nonzero,
    ));
    let mut recursion_defects = 0usize;
    for m in 1..=8u32 {
        if !recursion_check_neg1(m)?.is_zero() {
            recursion_defects += 1;
        }
    }
    out.push(VerificationRecord::exact(
        "haar.recursion",
        "the diagonal recursion at q = -1 vanishes for m <= 8",
        "0",
        recursion_defects,
    ));
    // a deliberately mis-normalized state (odd exponent in the geometric
    // denominator) must be caught by the invariance residuals
    let q_half = QParam::parse("-1/2")?;
    let mut ctx = Coproduct::new(&q_half);
    let wrong = |mono: &Monomial| -> Rat {
        if mono.k != 0 || mono.l != mono.m {
            return Rat::zero();
        }
        let one = Rat::one();
        (&one - q_half.pow(2)) / (&one - q_half.pow(2 * i64::from(mono.m) + 1))
    };
    let x = Element::monomial(&q_half, 0, 1, 1);
    let (right, _) = invariance_residuals_with(&mut ctx, &x, wrong)?;
    out.push(VerificationRecord::predicate(
        "haar.normalization-detector",
        "an off-by-one normalization produces a nonzero invariance residual",
        !right.is_zero(),
        format!("{} residual terms", right.term_count()),
    ));
    let (right, left) = invariance_residuals(&x)?;
    out.push(VerificationRecord::exact(
        "haar.normalization-true",
        "the true normalization keeps both residuals at zero",
        "0",
        right.term_count() + left.term_count(),
    ));
    Ok(out)
}

fn grid_points(order: usize) -> Vec<SpherePoint> {
    haar_grid(order).into_iter().map(|(p, _)| p).collect()
}

/// The q = -1 matrix-function model: representation property, symmetry
/// decomposition, averaging, intertwiners, point separation, and the
/// quadrature realization of the Haar state.
pub fn model_suite(cfg: &VerifyConfig) -> Result<Vec<VerificationRecord>> {
    let q = QParam::minus_one();
    let mut out = Vec::new();
    let points = grid_points(8);
    let mut worst_rel: f64 = 0.0;
    for (_, rel) in relation_elements(&q)? {
        let fun = phi_matfun(&rel)?;
        for p in &points {
            worst_rel = worst_rel.max(fun.eval(p).max_abs());
        }
    }
    out.push(VerificationRecord::bound(
        "model.relations",
        "the matrix model annihilates the defining relations on the sphere",
        worst_rel,
        cfg.tol,
    ));
    let mut rng = seeded_rng(cfg.seed);
    let mut worst_sym: f64 = 0.0;
    let mut worst_avg: f64 = 0.0;
    for _ in 0..8 {
        let x = random_element_of_degree(&q, 3, 4, &mut rng);
        let fun = phi_matfun(&x)?;
        worst_sym = worst_sym.max(symmetry_decomposition_check(&fun, &points)?);
        let e = conditional_expectation(&fun)?;
        let ee = conditional_expectation(&e)?;
        for p in &points {
            worst_avg = worst_avg.max(ee.eval(p).max_abs_diff(&e.eval(p)));
            for g in GroupElement::all() {
                worst_avg = worst_avg.max(g_action(g, &e)?.eval(p).max_abs_diff(&e.eval(p)));
            }
        }
    }
    out.push(VerificationRecord::bound(
        "model.symmetry",
        "matrix components decompose under the flip group with the stated signs",
        worst_sym,
        cfg.tol,
    ));
    out.push(VerificationRecord::bound(
        "model.averaging",
        "group averaging is idempotent and lands in the fixed-point algebra",
        worst_avg,
        cfg.tol,
    ));
    let mut worst_int: f64 = 0.0;
    for i in 0..20 {
        let theta = 0.2 + 1.1 * (i as f64) / 20.0;
        let p = SpherePoint::euler(theta, 0.9 * i as f64, 0.4 * i as f64);
        for g in GroupElement::all() {
            worst_int = worst_int.max(intertwiner_check(&p, g)?);
        }
    }
    out.push(VerificationRecord::bound(
        "model.intertwiners",
        "flip translations are implemented by the stated unitaries off the circles",
        worst_int,
        cfg.tol,
    ));
    let family: Vec<SpherePoint> = (0..4)
        .map(|i| SpherePoint::euler(0.3 + 0.35 * i as f64, 0.5 * i as f64, 1.1 * i as f64))
        .collect();
    let mut worst_sep: f64 = 0.0;
    for target_idx in 0..family.len() {
        let others: Vec<SpherePoint> = family
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != target_idx)
            .map(|(_, p)| *p)
            .collect();
        let sep = separating_element(&others, &family[target_idx])?;
        for (j, p) in family.iter().enumerate() {
            let v = sep.eval(p);
            let want = if j == target_idx { CMat::identity(2) } else { CMat::zeros(2, 2) };
            worst_sep = worst_sep.max(v.max_abs_diff(&want));
        }
    }
    out.push(VerificationRecord::bound(
        "model.separation",
        "the separating element is 1 at its target orbit and 0 on the rest",
        worst_sep,
        cfg.tol,
    ));
    let mut worst_quad: f64 = 0.0;
    for k in -2i64..=2 {
        for l in 0..=2u32 {
            for m in 0..=2u32 {
                let x = Element::monomial(&q, k, l, m);
                let exact = haar_monomial(&q, k, l, m);
                let approx = haar_trace_state(&x, cfg.order)?;
                let exact_f = crate::scalar::rat_to_f64(&exact);
                worst_quad = worst_quad.max((approx - Complex64::new(exact_f, 0.0)).norm());
            }
        }
    }
    out.push(VerificationRecord::bound(
        "model.quadrature",
        format!(
            "the trace quadrature of order {} reproduces the exact Haar values",
            cfg.order
        ),
        worst_quad,
        1e-8,
    ));
    Ok(out)
}

/// K-theory witnesses: path projections, loop windings, the Bott element,
/// and the lifted projections over the sphere (everything except the degree
/// integrals, which `ktheory_degree_records` covers).
pub fn ktheory_witness_records(cfg: &VerifyConfig) -> Result<Vec<VerificationRecord>> {
    let mut out = Vec::new();
    for kind in [WitnessKind::P, WitnessKind::Q] {
        let path = PathProjection::generator(kind);
        out.push(VerificationRecord::bound(
            format!("ktheory.path.{kind:?}.projection"),
            format!("the {kind:?} path consists of projections"),
            path.projection_residual(1001),
            cfg.tol,
        ));
        out.push(VerificationRecord::predicate(
            format!("ktheory.path.{kind:?}.boundary"),
            "endpoints commute with the boundary symmetries",
            path.boundary_compatibility(),
            "checked",
        ));
    }
    let mut worst_endpoint: f64 = 0.0;
    for (x, y) in [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)] {
        for kind in [WitnessKind::P, WitnessKind::Q] {
            let m = tilde_projection(kind, x, y)?;
            let sq = m.mul(&m).sub(&m).max_abs();
            worst_endpoint = worst_endpoint.max(sq);
        }
    }
    out.push(VerificationRecord::exact(
        "ktheory.tilde.endpoints",
        "the eight circle endpoints of the lifted projections are exact",
        "0",
        crate::report::render_f64(worst_endpoint),
    ));
    let mut signature = Vec::new();
    for j in 1..=4 {
        signature.push(exp_loop(j)?.det_winding(720)?);
    }
    out.push(VerificationRecord::predicate(
        "ktheory.windings",
        "the four determinant windings read (-1, -1, 1, 1)",
        signature == vec![-1, -1, 1, 1],
        format!("{signature:?}"),
    ));
    let grid = disk_grid(10, 10);
    let mut worst_unitary: f64 = 0.0;
    let mut worst_boundary: f64 = 0.0;
    for t in &grid {
        worst_unitary = worst_unitary.max(bott_lift(*t)?.unitarity_residual());
    }
    for j in 0..24 {
        let z = C64::from_polar(1.0, std::f64::consts::TAU * j as f64 / 24.0);
        let u = bott_lift(z)?;
        let want = CMat::diag(&[z, C64::one(), z.conj(), C64::one()]);
        worst_boundary = worst_boundary.max(u.max_abs_diff(&want));
    }
    out.push(VerificationRecord::bound(
        "ktheory.bott.unitary",
        "the Bott lift is unitary across the disk",
        worst_unitary,
        1e-14,
    ));
    out.push(VerificationRecord::bound(
        "ktheory.bott.boundary",
        "the Bott lift is diag(z, 1, conj z, 1) on the boundary circle",
        worst_boundary,
        1e-14,
    ));
    out.push(VerificationRecord::bound(
        "ktheory.bott.projection",
        "conjugating the rank-two projection realizes the Bott projection",
        bott_projection_check(&grid)?,
        cfg.tol,
    ));
    let mut worst_vanish: f64 = 0.0;
    for kind in [WitnessKind::P, WitnessKind::Q] {
        for (a, c) in [(C64::new(0.0, 1.0), C64::zero()), (C64::zero(), C64::new(0.0, 1.0))] {
            let p = SpherePoint::new(a, c)?;
            worst_vanish = worst_vanish.max(a3_lift(kind, &p)?.max_abs());
        }
    }
    out.push(VerificationRecord::bound(
        "ktheory.a3.vanishing",
        "the sphere lifts vanish at the imaginary poles",
        worst_vanish,
        cfg.tol,
    ));
    let mut worst_diag: f64 = 0.0;
    for j in 0..12 {
        // the upper unit half-circle of the first coordinate, avoiding the
        // quarter boundaries where the diagonal blocks hand over
        let psi = std::f64::consts::PI * (j as f64 + 0.5) / 12.0;
        let p = SpherePoint::euler(0.0, psi, 0.0);
        let lam = lambda_phase(p.a());
        let (want_p, want_q) = if p.a().re > 0.0 {
            (CMat::diag(&[lam, C64::one()]), CMat::diag(&[C64::one(), lam]))
        } else {
            (CMat::diag(&[C64::one(), lam]), CMat::diag(&[lam, C64::one()]))
        };
        worst_diag = worst_diag.max(a3_exp(WitnessKind::P, &p)?.max_abs_diff(&want_p));
        worst_diag = worst_diag.max(a3_exp(WitnessKind::Q, &p)?.max_abs_diff(&want_q));
    }
    out.push(VerificationRecord::bound(
        "ktheory.a3.circle-values",
        "the exponentials reduce to the stated diagonal phases on the circles",
        worst_diag,
        cfg.tol,
    ));
    let mut worst_v1: f64 = 0.0;
    for j in 0..=12 {
        // the upper arc keeps Im(c) >= 0, inside the filtration stage
        let psi = std::f64::consts::PI * j as f64 / 12.0;
        let p = SpherePoint::euler(std::f64::consts::FRAC_PI_2, 0.0, psi);
        let ep = a3_exp(WitnessKind::P, &p)?;
        let eq = a3_exp(WitnessKind::Q, &p)?;
        worst_v1 = worst_v1.max(ep.max_abs_diff(&eq));
    }
    out.push(VerificationRecord::bound(
        "ktheory.a3.agreement",
        "both exponentials agree on the joint eigenspace circle",
        worst_v1,
        cfg.tol,
    ));
    let wp = a3_winding_pair(WitnessKind::P, 720)?;
    let wq = a3_winding_pair(WitnessKind::Q, 720)?;
    out.push(VerificationRecord::predicate(
        "ktheory.a3.windings",
        "the two winding pairs are opposite unit pairs",
        wp == (-1, 1) && wq == (1, -1),
        format!("{wp:?} {wq:?}"),
    ));
    Ok(out)
}

/// The degree-three pairing: the embedded fundamental unitary pairs to 2,
/// the three 2x2 witnesses pair to 1.
pub fn ktheory_degree_records(cfg: &VerifyConfig) -> Result<Vec<VerificationRecord>> {
    let mut out = Vec::new();
    out.push(VerificationRecord::exact(
        "ktheory.degree.embedded",
        format!("the embedded fundamental unitary has degree 2 at resolution {}", cfg.res),
        "2",
        phi_u_degree(cfg.res)?,
    ));
    for (name, u) in [
        ("fundamental", SphereUnitary::fundamental()),
        ("witness-x", SphereUnitary::witness_x()),
        ("witness-y", SphereUnitary::witness_y()),
    ] {
        out.push(VerificationRecord::exact(
            format!("ktheory.degree.{name}"),
            format!("the {name} unitary has degree 1 at resolution {}", cfg.res),
            "1",
            degree3(&u, cfg.res)?,
        ));
    }
    Ok(out)
}

/// Both halves of the K-theory evidence.
pub fn ktheory_suite(cfg: &VerifyConfig) -> Result<Vec<VerificationRecord>> {
    let mut out = ktheory_witness_records(cfg)?;
    out.extend(ktheory_degree_records(cfg)?);
    Ok(out)
}

/// Fiberwise bundle evidence: boundary approach of the Haar profiles,
/// interior relation residuals of the truncated representation, and
/// monotone norm lower bounds.
pub fn bundle_suite(cfg: &VerifyConfig) -> Result<Vec<VerificationRecord>> {
    let mut out = Vec::new();
    let grid = QGrid::parse(&["-999/1000", "-99/100", "-9/10", "-4/5"])?;
    let two = rat(2, 1);
    let mut worst_excess = Rat::zero();
    for m in 0..=4u32 {
        let profile = haar_profile(0, m, m, &grid);
        for (q, h) in grid.points().iter().zip(&profile) {
            let gap = (h - rat(1, i64::from(m) + 1)).abs();
            let budget = &two * rat(i64::from(m) + 1, 1) * (q.value() + Rat::one()).abs();
            if gap > budget {
                worst_excess = (&gap - &budget).max(worst_excess.clone());
            }
        }
    }
    out.push(VerificationRecord::exact(
        "bundle.boundary-bound",
        "Haar profiles approach 1/(m+1) within 2(1+m)|1+q| near the boundary",
        "0",
        show_rat(&worst_excess),
    ));
    let mut worst_interior: f64 = 0.0;
    for qs in ["-1/2", "-3/5"] {
        let q = QParam::parse(qs)?;
        for phase_idx in 0..4 {
            let phase = Complex64::from_polar(1.0, std::f64::consts::TAU * phase_idx as f64 / 4.0);
            worst_interior = worst_interior.max(relation_residual_interior(&q, 20, phase)?);
        }
    }
    out.push(VerificationRecord::bound(
        "bundle.relations-interior",
        "truncated representations satisfy the relations on interior vectors",
        worst_interior,
        cfg.tol,
    ));
    let mut rng = seeded_rng(cfg.seed);
    let q = QParam::parse("-3/5")?;
    let mut monotone = true;
    let mut witness = String::new();
    for _ in 0..4 {
        let x = random_element_of_degree(&q, 2, 3, &mut rng);
        let mut prev = 0.0;
        for &n in &cfg.truncations {
            let b = norm_lower_bound(&x, n, 16)?;
            if b + 1e-12 < prev {
                monotone = false;
                witness = format!("drop {prev} -> {b} at N = {n}");
            }
            prev = b;
        }
    }
    out.push(VerificationRecord::predicate(
        "bundle.norm-monotone",
        format!("norm lower bounds are nondecreasing in N over {:?}", cfg.truncations),
        monotone,
        if witness.is_empty() { "nondecreasing".into() } else { witness },
    ));
    let scan_grid = QGrid::parse(&["-1", "-99/100", "-9/10", "-3/5", "-1/2"])?;
    let scan = bundle_scan(
        &[Monomial::new(0, 1, 1), Monomial::new(0, 2, 2)],
        &scan_grid,
        &[cfg.truncations[0]],
    )?;
    out.push(VerificationRecord::exact(
        "bundle.scan-smooth",
        "the default scan raises no smoothness flags",
        "0",
        scan.flags.len(),
    ));
    Ok(out)
}

/// Run every suite and assemble the full report, in a fixed order.
pub fn verify_all(cfg: &VerifyConfig) -> Result<Report> {
    let mut report = Report::new();
    report.extend(algebra_suite(cfg)?);
    report.extend(hopf_suite(cfg)?);
    report.extend(haar_suite(cfg)?);
    report.extend(model_suite(cfg)?);
    report.extend(ktheory_suite(cfg)?);
    report.extend(bundle_suite(cfg)?);
    Ok(report)
}
