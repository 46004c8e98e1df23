//! The Haar state in closed form, exactly.
//!
//! On basis words the unique bi-invariant state is diagonal:
//!
//! ```text
//! h(eta(k,l,m)) = (1 - q^2) / (1 - q^{2m+2})   if k = 0 and l = m, |q| < 1
//!              = 1 / (m + 1)                   if k = 0 and l = m, q = +-1
//!              = 0                             otherwise
//! ```
//!
//! The denominator exponent `2m+2` matters: with `2m+1` in its place the
//! functional stops being invariant under the coproduct, and the invariance
//! residual machinery below detects that (see the discrimination test).
//! Invariance itself is checked exactly through the hopf layer:
//! `(id (x) h) D(x) = h(x) 1 = (h (x) id) D(x)`.

use num_traits::{One, Zero};

use crate::algebra::{Element, Monomial};
use crate::error::{CoreError, Result};
use crate::hopf::Coproduct;
use crate::scalar::{GaussianRational, QParam, Rat};

/// Haar value of a single basis word at parameter `q`.
pub fn haar_monomial(q: &QParam, k: i64, l: u32, m: u32) -> Rat {
    if k != 0 || l != m {
        return Rat::zero();
    }
    if q.is_classical() {
        // q = +-1: the even power q^{2m+2} degenerates; the limit value is
        // the classical moment 1/(m+1).
        return Rat::new(1.into(), (m as i64 + 1).into());
    }
    let one = Rat::one();
    let num = &one - q.pow(2);
    let den = &one - q.pow(2 * m as i64 + 2);
    num / den
}

/// The Haar state bundled with its parameter.
#[derive(Debug, Clone)]
pub struct HaarState {
    q: QParam,
}

impl HaarState {
    pub fn new(q: &QParam) -> Self {
        HaarState { q: q.clone() }
    }

    pub fn q(&self) -> &QParam {
        &self.q
    }

    /// Value on a basis word.
    pub fn value(&self, m: &Monomial) -> Rat {
        haar_monomial(&self.q, m.k, m.l, m.m)
    }

    /// Value on a general element, by linearity (exact, possibly complex).
    pub fn eval(&self, x: &Element) -> Result<GaussianRational> {
        if x.q() != &self.q {
            return Err(CoreError::ParameterMismatch {
                left: self.q.to_string(),
                right: x.q().to_string(),
            });
        }
        let mut acc = GaussianRational::zero();
        for (m, c) in x.terms() {
            acc += c.scale(&self.value(m));
        }
        Ok(acc)
    }
}

/// Both invariance residuals of a state functional `h` on one element:
///
/// ```text
/// (id (x) h) D(x) - h(x) 1      and      (h (x) id) D(x) - h(x) 1
/// ```
///
/// For the Haar state both must be the zero element, exactly.  The state is
/// passed as a closure so that deliberately perturbed or misprinted
/// functionals can be probed with the same machinery.
pub fn invariance_residuals_with(
    ctx: &mut Coproduct,
    x: &Element,
    h: impl Fn(&Monomial) -> Rat,
) -> Result<(Element, Element)> {
    let dx = ctx.of_element(x)?;
    let mut hx = GaussianRational::zero();
    for (m, c) in x.terms() {
        hx += c.scale(&h(m));
    }
    let scaled_unit = Element::unit(x.q()).scale(&hx);
    let right = dx.apply_right_state(&h).sub(&scaled_unit)?;
    let left = dx.apply_left_state(&h).sub(&scaled_unit)?;
    Ok((right, left))
}

/// Invariance residuals of the genuine Haar state.
pub fn invariance_residuals(x: &Element) -> Result<(Element, Element)> {
    let mut ctx = Coproduct::new(x.q());
    let h = HaarState::new(x.q());
    invariance_residuals_with(&mut ctx, x, |m| h.value(m))
}

/// The q = -1 recursion extracted from right-invariance on the diagonal
/// words: for `m >= 1`
///
/// ```text
/// -m h(eta(0,m,m)) + m^2 h(eta(0,m-1,m-1)) - m^2 h(eta(0,m,m)) = 0.
/// ```
///
/// Returns the left-hand side, which must vanish identically.
pub fn recursion_check_neg1(m: u32) -> Result<Rat> {
    if m == 0 {
        return Err(CoreError::Domain("the recursion starts at m = 1".into()));
    }
    let q = QParam::minus_one();
    let h_m = haar_monomial(&q, 0, m, m);
    let h_prev = haar_monomial(&q, 0, m - 1, m - 1);
    let m_rat = Rat::new((m as i64).into(), 1.into());
    let m_sq = &m_rat * &m_rat;
    Ok(-&m_rat * &h_m + &m_sq * &h_prev - &m_sq * &h_m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hopf::coproduct;
    use crate::sampling::{random_element_of_degree, seeded_rng};
    use crate::scalar::rat;

    #[test]
    fn closed_form_values_on_basis_words() {
        let qm1 = QParam::minus_one();
        // diagonal family at q = -1 is the classical moment sequence
        assert_eq!(haar_monomial(&qm1, 0, 0, 0), rat(1, 1));
        assert_eq!(haar_monomial(&qm1, 0, 2, 2), rat(1, 3));
        assert_eq!(haar_monomial(&qm1, 0, 6, 6), rat(1, 7));
        // off-diagonal words vanish
        assert_eq!(haar_monomial(&qm1, 1, 1, 1), rat(0, 1));
        assert_eq!(haar_monomial(&qm1, 0, 2, 1), rat(0, 1));
        // interior parameter
        let qh = QParam::parse("-1/2").unwrap();
        assert_eq!(haar_monomial(&qh, 0, 1, 1), rat(4, 5));
        // (1 - q^2)/(1 - q^6) at q = -1/2 is (3/4)/(63/64) = 16/21
        assert_eq!(haar_monomial(&qh, 0, 2, 2), rat(16, 21));
    }

    #[test]
    fn state_is_linear_and_complex_capable() {
        let q = QParam::minus_one();
        let h = HaarState::new(&q);
        // 2 eta(0,1,1) - 1 has value 2*(1/2) - 1 = 0
        let x = Element::monomial(&q, 0, 1, 1)
            .scale_rat(&rat(2, 1))
            .sub(&Element::unit(&q))
            .unwrap();
        assert!(h.eval(&x).unwrap().is_zero());
        // eta(1,1,0) + i eta(0,2,2) picks up only the diagonal summand
        let x = Element::monomial(&q, 1, 1, 0)
            .add(&Element::monomial(&q, 0, 2, 2).scale(&GaussianRational::i()))
            .unwrap();
        assert_eq!(h.eval(&x).unwrap(), GaussianRational::new(rat(0, 1), rat(1, 3)));
    }

    #[test]
    fn state_is_positive_on_sampled_squares() {
        for q in [QParam::minus_one(), QParam::parse("-1/2").unwrap()] {
            let h = HaarState::new(&q);
            let mut rng = seeded_rng(17);
            for _ in 0..20 {
                let x = random_element_of_degree(&q, 2, 3, &mut rng);
                let xx = x.star().normal_mul(&x).unwrap();
                let v = h.eval(&xx).unwrap();
                assert!(v.is_real(), "h(x* x) must be real");
                assert!(v.re >= Rat::zero(), "h(x* x) must be nonnegative, got {}", v.re);
            }
        }
    }

    #[test]
    fn invariance_on_specific_words() {
        let qh = QParam::parse("-1/2").unwrap();
        let (r, l) = invariance_residuals(&Element::monomial(&qh, 0, 1, 1)).unwrap();
        assert!(r.is_zero() && l.is_zero());

        let qm1 = QParam::minus_one();
        let (r, l) = invariance_residuals(&Element::monomial(&qm1, 2, 1, 0)).unwrap();
        assert!(r.is_zero() && l.is_zero());
    }

    /// The slice (id (x) h) D(eta(0,1,1)) collapses to h(eta(0,1,1)) 1; at
    /// q = -1 that is the constant 1/2.
    #[test]
    fn right_slice_of_gamma_gammastar_is_half() {
        let q = QParam::minus_one();
        let h = HaarState::new(&q);
        let dx = coproduct(&Element::monomial(&q, 0, 1, 1));
        let sliced = dx.apply_right_state(|m| h.value(m));
        assert_eq!(sliced, Element::unit(&q).scale_rat(&rat(1, 2)));
        // and the left slice of D(alpha) vanishes since h(alpha) = 0
        let da = coproduct(&Element::alpha(&q));
        assert!(da.apply_left_state(|m| h.value(m)).is_zero());
    }

    /// Any perturbation of the diagonal values breaks invariance; this is
    /// the uniqueness probe for the closed form.
    #[test]
    fn perturbed_state_fails_invariance() {
        let q = QParam::parse("-1/2").unwrap();
        let h = HaarState::new(&q);
        let mut ctx = Coproduct::new(&q);
        let x = Element::monomial(&q, 0, 1, 1);
        let eps = rat(1, 100);
        let (r, l) = invariance_residuals_with(&mut ctx, &x, |m| {
            let mut v = h.value(m);
            if m.k == 0 && m.l == 1 && m.m == 1 {
                v += &eps;
            }
            v
        })
        .unwrap();
        assert!(!r.is_zero() || !l.is_zero());
    }

    /// Swapping the denominator exponent 2m+2 for 2m+1 (a plausible
    /// misprint) also breaks invariance already at eta(0,1,1).
    #[test]
    fn misprinted_denominator_exponent_fails_invariance() {
        let q = QParam::parse("-1/2").unwrap();
        let mut ctx = Coproduct::new(&q);
        let x = Element::monomial(&q, 0, 1, 1);
        let wrong = |mono: &Monomial| -> Rat {
            if mono.k != 0 || mono.l != mono.m {
                return Rat::zero();
            }
            let one = Rat::one();
            (&one - q.pow(2)) / (&one - q.pow(2 * mono.m as i64 + 1))
        };
        let (r, l) = invariance_residuals_with(&mut ctx, &x, wrong).unwrap();
        assert!(!r.is_zero() && !l.is_zero());
        // the correct exponent, same machinery, passes
        let h = HaarState::new(&q);
        let (r, l) = invariance_residuals_with(&mut ctx, &x, |m| h.value(m)).unwrap();
        assert!(r.is_zero() && l.is_zero());
    }

    #[test]
    fn recursion_vanishes_for_small_orders() {
        for m in 1..=5 {
            assert_eq!(recursion_check_neg1(m).unwrap(), Rat::zero(), "m = {m}");
        }
        assert!(recursion_check_neg1(0).is_err());
    }
}
