//! Exact scalar arithmetic: rational deformation parameters and
//! Gaussian-rational coefficients.
//!
//! All symbolic computations in this crate stay inside `Q(i)`: coefficients
//! are pairs of arbitrary-precision rationals `re + im*i`, and the
//! deformation parameter is a fixed nonzero rational in [-1, 1].  Keeping the
//! parameter rational means every structure constant produced by the
//! commutation rules (integer powers of q) is again exactly representable.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{CoreError, Result};

/// Arbitrary-precision rational number.
pub type Rat = BigRational;

/// Parse a rational from `"p"` or `"p/q"` form (signs allowed on `p`).
pub fn parse_rat(s: &str) -> Result<Rat> {
    Rat::from_str(s.trim()).map_err(|e| CoreError::Parse(format!("bad rational {s:?}: {e}")))
}

/// Shorthand for small rational constants.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// `q^e` for a nonzero rational `q` and a (possibly negative) integer `e`.
pub fn qpow(q: &Rat, e: i64) -> Rat {
    if e == 0 {
        return Rat::one();
    }
    let p = q.pow(i32::try_from(e.unsigned_abs()).expect("exponent fits in i32"));
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

/// The deformation parameter: an exact nonzero rational in [-1, 1].
///
/// The two endpoint values are explicitly allowed (q = -1 is the case of
/// primary interest, q = 1 the classical one); q = 0 is rejected because the
/// commutation rules divide by q.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QParam(Rat);

impl QParam {
    pub fn new(value: Rat) -> Result<Self> {
        if value.is_zero() {
            return Err(CoreError::InvalidParameter(
                "q = 0 is excluded (the commutation rules divide by q)".into(),
            ));
        }
        if value.abs() > Rat::one() {
            return Err(CoreError::InvalidParameter(format!(
                "|q| must be at most 1, got {value}"
            )));
        }
        Ok(QParam(value))
    }

    /// Parse from `"p"` or `"p/q"` text.
    pub fn parse(s: &str) -> Result<Self> {
        QParam::new(parse_rat(s)?)
    }

    /// q = -1, the distinguished boundary point.
    pub fn minus_one() -> Self {
        QParam(-Rat::one())
    }

    /// q = 1, the classical commutative point.
    pub fn one() -> Self {
        QParam(Rat::one())
    }

    pub fn value(&self) -> &Rat {
        &self.0
    }

    /// `q^e` with negative exponents allowed.
    pub fn pow(&self, e: i64) -> Rat {
        qpow(&self.0, e)
    }

    pub fn is_minus_one(&self) -> bool {
        self.0 == -Rat::one()
    }

    pub fn is_classical(&self) -> bool {
        self.0.abs() == Rat::one()
    }

    /// Approximate floating-point value (for the numeric layers).
    pub fn to_f64(&self) -> f64 {
        rat_to_f64(&self.0)
    }
}

impl fmt::Display for QParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Convert a rational to the nearest f64 (good to one ulp for our sizes).
pub fn rat_to_f64(r: &Rat) -> f64 {
    // Scale down huge numerators/denominators pairwise; the values handled
    // here (Haar values, powers of q) are all well inside f64 range.
    let n = r.numer();
    let d = r.denom();
    let nf = bigint_to_f64(n);
    let df = bigint_to_f64(d);
    nf / df
}

fn bigint_to_f64(b: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    b.to_f64().unwrap_or(f64::NAN)
}

/// An exact complex number `re + im*i` with rational parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rat,
    pub im: Rat,
}

impl GaussianRational {
    pub fn new(re: Rat, im: Rat) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_rat(re: Rat) -> Self {
        GaussianRational { re, im: Rat::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational::from_rat(rat(n, 1))
    }

    pub fn zero() -> Self {
        GaussianRational::from_int(0)
    }

    pub fn one() -> Self {
        GaussianRational::from_int(1)
    }

    pub fn i() -> Self {
        GaussianRational { re: Rat::zero(), im: Rat::one() }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Complex conjugate.
    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -self.im.clone() }
    }

    /// Scale by an exact rational.
    pub fn scale(&self, r: &Rat) -> Self {
        GaussianRational { re: &self.re * r, im: &self.im * r }
    }

    /// |z|^2, exact.
    pub fn norm_sqr(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Nearest floating complex value.
    pub fn to_c64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(rat_to_f64(&self.re), rat_to_f64(&self.im))
    }
}

impl Add for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: GaussianRational) -> GaussianRational {
        GaussianRational { re: self.re + rhs.re, im: self.im + rhs.im }
    }
}

impl<'a> Add<&'a GaussianRational> for GaussianRational {
    type Output = GaussianRational;
    fn add(self, rhs: &'a GaussianRational) -> GaussianRational {
        GaussianRational { re: self.re + &rhs.re, im: self.im + &rhs.im }
    }
}

impl AddAssign<GaussianRational> for GaussianRational {
    fn add_assign(&mut self, rhs: GaussianRational) {
        self.re += rhs.re;
        self.im += rhs.im;
    }
}

impl Sub for GaussianRational {
    type Output = GaussianRational;
    fn sub(self, rhs: GaussianRational) -> GaussianRational {
        GaussianRational { re: self.re - rhs.re, im: self.im - rhs.im }
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational { re: -self.re, im: -self.im }
    }
}

impl Mul for GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: GaussianRational) -> GaussianRational {
        &self * &rhs
    }
}

impl Mul<&GaussianRational> for &GaussianRational {
    type Output = GaussianRational;
    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qparam_rejects_zero_and_out_of_range() {
        assert!(QParam::new(Rat::zero()).is_err());
        assert!(QParam::parse("3/2").is_err());
        assert!(QParam::parse("-5/4").is_err());
        assert!(QParam::parse("-1").is_ok());
        assert!(QParam::parse("1").is_ok());
        assert!(QParam::parse("-99/100").is_ok());
    }

    #[test]
    fn qparam_powers_cover_negative_exponents() {
        let q = QParam::parse("-1/2").unwrap();
        assert_eq!(q.pow(2), rat(1, 4));
        assert_eq!(q.pow(-1), rat(-2, 1));
        assert_eq!(q.pow(0), rat(1, 1));
        assert_eq!(q.pow(-3), rat(-8, 1));
    }

    #[test]
    fn rational_parsing_round_trips_display() {
        for s in ["1/3", "-1/2", "4/5", "0", "7", "-3"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert!(parse_rat("one half").is_err());
    }

    #[test]
    fn gaussian_multiplication_matches_hand_expansion() {
        // (1 + 2i)(3 - i) = 5 + 5i
        let a = GaussianRational::new(rat(1, 1), rat(2, 1));
        let b = GaussianRational::new(rat(3, 1), rat(-1, 1));
        let p = &a * &b;
        assert_eq!(p, GaussianRational::new(rat(5, 1), rat(5, 1)));
        // conjugation is multiplicative up to order
        assert_eq!(p.conj(), &a.conj() * &b.conj());
    }

    #[test]
    fn gaussian_norm_and_conversion() {
        let z = GaussianRational::new(rat(3, 5), rat(4, 5));
        assert_eq!(z.norm_sqr(), rat(1, 1));
        let c = z.to_c64();
        assert!((c.re - 0.6).abs() < 1e-15 && (c.im - 0.8).abs() < 1e-15);
    }
}
