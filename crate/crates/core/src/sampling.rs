//! Seeded random generators for test inputs: algebra elements, sphere
//! points, phases.  Everything is driven by a caller-supplied ChaCha stream
//! so that suites are reproducible run to run and across platforms.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Element, Monomial};
use crate::scalar::{rat, GaussianRational, QParam};

/// The RNG used across all randomized suites.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random element with at most `terms` monomials, alpha exponent in
/// `[-max_k, max_k]`, gamma exponents in `[0, max_lm]`, and small rational
/// coefficients (possibly complex).  Duplicated monomials merge, so the
/// result may have fewer terms.
pub fn random_element(
    q: &QParam,
    max_k: i64,
    max_lm: u32,
    terms: usize,
    rng: &mut impl Rng,
) -> Element {
    let mut x = Element::zero(q);
    for _ in 0..terms {
        let k = rng.gen_range(-max_k..=max_k);
        let l = rng.gen_range(0..=max_lm);
        let m = rng.gen_range(0..=max_lm);
        let c = GaussianRational::new(
            rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)),
            rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)),
        );
        x.add_term(Monomial::new(k, l, m), c);
    }
    x
}

/// A random element of word length at most `deg` (filter on `|k|+l+m`).
pub fn random_element_of_degree(
    q: &QParam,
    deg: u32,
    terms: usize,
    rng: &mut impl Rng,
) -> Element {
    let mut x = Element::zero(q);
    for _ in 0..terms {
        loop {
            let k = rng.gen_range(-(deg as i64)..=deg as i64);
            let l = rng.gen_range(0..=deg);
            let m = rng.gen_range(0..=deg);
            let mono = Monomial::new(k, l, m);
            if mono.degree() <= deg {
                let c = GaussianRational::new(
                    rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)),
                    rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)),
                );
                x.add_term(mono, c);
                break;
            }
        }
    }
    x
}

/// A uniform random phase on the unit circle.
pub fn random_phase(rng: &mut impl Rng) -> Complex64 {
    let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    Complex64::new(t.cos(), t.sin())
}

/// A uniform random point of the unit 3-sphere as a pair `(a, c)` of complex
/// numbers with `|a|^2 + |c|^2 = 1` (Haar-distributed under the standard
/// identification with SU(2)).
pub fn random_sphere_pair(rng: &mut impl Rng) -> (Complex64, Complex64) {
    // sin^2(theta) is uniform on [0,1] under the Haar measure.
    let u: f64 = rng.gen_range(0.0..1.0);
    let theta = u.sqrt().asin();
    let a = random_phase(rng) * theta.cos();
    let c = random_phase(rng) * theta.sin();
    (a, c)
}
