//! The universal *-algebra on two generators `alpha`, `gamma` subject to the
//! quantum-SU(2) relations at a fixed rational deformation parameter q:
//!
//! ```text
//! alpha* alpha + gamma* gamma = 1          alpha alpha* + q^2 gamma gamma* = 1
//! alpha gamma  = q gamma  alpha            alpha gamma* = q gamma* alpha
//! gamma gamma* = gamma* gamma
//! ```
//!
//! Elements are stored in the normal-form basis
//!
//! ```text
//! eta(k,l,m) = alpha^k     gamma^l gamma*^m   (k >= 0)
//! eta(k,l,m) = alpha*^{-k} gamma^l gamma*^m   (k <  0)
//! ```
//!
//! with `l, m >= 0`, ordered lexicographically by `(k, l, m)`.  Products are
//! reduced to this basis with the derived commutation rules
//! `gamma alpha = q^{-1} alpha gamma` (and its starred variants) together
//! with the mixed-power cancellations `alpha alpha* = 1 - q^2 gamma gamma*`
//! and `alpha* alpha = 1 - gamma gamma*`.  All coefficients stay in `Q(i)`,
//! so every identity below is checked exactly.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{CoreError, Result};
use crate::scalar::{parse_rat, GaussianRational, QParam, Rat};

/// A basis word `eta(k,l,m)`.  `k` carries the sign of the `alpha` block
/// (negative powers mean `alpha*`), `l` and `m` count `gamma` and `gamma*`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub k: i64,
    pub l: u32,
    pub m: u32,
}

impl Monomial {
    pub fn new(k: i64, l: u32, m: u32) -> Self {
        Monomial { k, l, m }
    }

    /// Word length `|k| + l + m`.
    pub fn degree(&self) -> u32 {
        self.k.unsigned_abs() as u32 + self.l + self.m
    }

    /// The identity word.
    pub fn unit() -> Self {
        Monomial { k: 0, l: 0, m: 0 }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "eta({},{},{})", self.k, self.l, self.m)
    }
}

/// An element of the algebra at a fixed deformation parameter: a finite
/// Gaussian-rational combination of basis words, always kept in normal form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    q: QParam,
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl Element {
    pub fn zero(q: &QParam) -> Self {
        Element { q: q.clone(), terms: BTreeMap::new() }
    }

    pub fn unit(q: &QParam) -> Self {
        Element::monomial(q, 0, 0, 0)
    }

    /// The basis element `eta(k,l,m)`.
    pub fn monomial(q: &QParam, k: i64, l: u32, m: u32) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::new(k, l, m), GaussianRational::one());
        Element { q: q.clone(), terms }
    }

    pub fn alpha(q: &QParam) -> Self {
        Element::monomial(q, 1, 0, 0)
    }

    pub fn alpha_star(q: &QParam) -> Self {
        Element::monomial(q, -1, 0, 0)
    }

    pub fn gamma(q: &QParam) -> Self {
        Element::monomial(q, 0, 1, 0)
    }

    pub fn gamma_star(q: &QParam) -> Self {
        Element::monomial(q, 0, 0, 1)
    }

    pub fn q(&self) -> &QParam {
        &self.q
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest word length appearing in the element (0 for the zero element).
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Coefficient of a basis word (zero if absent).
    pub fn coeff(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_else(GaussianRational::zero)
    }

    /// Add `c * eta(mono)` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, mono: Monomial, c: GaussianRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mono).or_insert_with(GaussianRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&mono);
        }
    }

    fn check_same_q(&self, other: &Element) -> Result<()> {
        if self.q != other.q {
            return Err(CoreError::ParameterMismatch {
                left: self.q.to_string(),
                right: other.q.to_string(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.check_same_q(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        let terms = self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect();
        Element { q: self.q.clone(), terms }
    }

    pub fn scale(&self, c: &GaussianRational) -> Element {
        if c.is_zero() {
            return Element::zero(&self.q);
        }
        let terms = self.terms.iter().map(|(m, x)| (*m, x * c)).collect();
        Element { q: self.q.clone(), terms }
    }

    pub fn scale_rat(&self, r: &Rat) -> Element {
        self.scale(&GaussianRational::from_rat(r.clone()))
    }

    /// Product, reduced to the normal-form basis.
    pub fn normal_mul(&self, other: &Element) -> Result<Element> {
        self.check_same_q(other)?;
        let mut out = Element::zero(&self.q);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let cab = ca * cb;
                for (mono, structure) in mul_mono(&self.q, ma, mb) {
                    out.add_term(mono, cab.scale(&structure));
                }
            }
        }
        Ok(out)
    }

    /// `x^n` by repeated multiplication (`x^0 = 1`).
    pub fn pow(&self, n: u32) -> Element {
        let mut out = Element::unit(&self.q);
        for _ in 0..n {
            out = out.normal_mul(self).expect("same parameter by construction");
        }
        out
    }

    /// The involution.  On basis words
    /// `eta(k,l,m)* = q^{k(l+m)} eta(-k,m,l)`; coefficients conjugate.
    pub fn star(&self) -> Element {
        let mut out = Element::zero(&self.q);
        for (m, c) in &self.terms {
            let factor = self.q.pow(m.k * (m.l as i64 + m.m as i64));
            out.add_term(Monomial::new(-m.k, m.m, m.l), c.conj().scale(&factor));
        }
        out
    }

    /// Serialize to the canonical JSON record (terms sorted by `(k,l,m)`).
    pub fn to_json(&self) -> String {
        let record = ElementRecord {
            q: self.q.to_string(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermRecord {
                    k: m.k,
                    l: m.l as u64,
                    m: m.m as u64,
                    re: c.re.to_string(),
                    im: c.im.to_string(),
                })
                .collect(),
        };
        serde_json::to_string(&record).expect("element records always serialize")
    }

    /// Parse the JSON record produced by [`Element::to_json`].  Duplicate
    /// words accumulate and zero coefficients are dropped, so the result is
    /// canonical even for non-canonical input.
    pub fn from_json(s: &str) -> Result<Element> {
        let record: ElementRecord =
            serde_json::from_str(s).map_err(|e| CoreError::Parse(format!("element record: {e}")))?;
        let q = QParam::parse(&record.q)?;
        let mut out = Element::zero(&q);
        for t in &record.terms {
            let l = u32::try_from(t.l)
                .map_err(|_| CoreError::Parse(format!("gamma exponent {} too large", t.l)))?;
            let m = u32::try_from(t.m)
                .map_err(|_| CoreError::Parse(format!("gamma* exponent {} too large", t.m)))?;
            let c = GaussianRational::new(parse_rat(&t.re)?, parse_rat(&t.im)?);
            out.add_term(Monomial::new(t.k, l, m), c);
        }
        Ok(out)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *m == Monomial::unit() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{m}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ElementRecord {
    q: String,
    terms: Vec<TermRecord>,
}

#[derive(Serialize, Deserialize)]
struct TermRecord {
    k: i64,
    l: u64,
    m: u64,
    re: String,
    im: String,
}

/// Structure constants of the product of two basis words: the list of
/// `(word, rational coefficient)` pairs making up `x * y` in normal form.
///
/// Derivation: first the whole `gamma` block of `x` slides across the
/// `alpha` block of `y`, each crossing contributing `q^{-sign}`; then mixed
/// `alpha`/`alpha*` powers cancel pairwise through the sphere relations,
/// leaving a polynomial in `gamma gamma*`; finally `gamma` blocks merge.
pub fn mul_mono(q: &QParam, x: &Monomial, y: &Monomial) -> Vec<(Monomial, Rat)> {
    // gamma^l1 gamma*^m1 across alpha^{k2} (signed): factor q^{-k2 (l1+m1)}.
    let crossings = -(y.k) * (x.l as i64 + x.m as i64);
    let factor = q.pow(crossings);
    let l = x.l + y.l;
    let m = x.m + y.m;
    let k = x.k + y.k;

    if x.k == 0 || y.k == 0 || (x.k > 0) == (y.k > 0) {
        return vec![(Monomial::new(k, l, m), factor)];
    }

    // Mixed block: reduce to sum_j c_j alpha^k (gamma gamma*)^j.
    let poly = if x.k > 0 {
        reduce_alpha_then_star(q, x.k as u32, (-y.k) as u32)
    } else {
        reduce_star_then_alpha(q, (-x.k) as u32, y.k as u32)
    };
    poly.into_iter()
        .map(|(j, c)| (Monomial::new(k, l + j, m + j), &factor * &c))
        .collect()
}

/// Normal form of `alpha^a alpha*^b` (`a, b >= 1`) as coefficients of
/// `(gamma gamma*)^j` against the residual power `alpha^{a-b}`:
/// repeated use of `alpha alpha* = 1 - q^2 gamma gamma*` unrolls to the
/// product of the commuting factors `(1 - q^{2(b-i)} gamma gamma*)`.
fn reduce_alpha_then_star(q: &QParam, a: u32, b: u32) -> Vec<(u32, Rat)> {
    let steps = a.min(b);
    let factors: Vec<Rat> = (0..steps).map(|i| q.pow(2 * (b as i64 - i as i64))).collect();
    expand_gamma_product(&factors)
}

/// Normal form of `alpha*^b alpha^a` (`a, b >= 1`), via
/// `alpha* alpha = 1 - gamma gamma*`: the unrolled factors are
/// `(1 - q^{-2(a-1-i)} gamma gamma*)`.
fn reduce_star_then_alpha(q: &QParam, b: u32, a: u32) -> Vec<(u32, Rat)> {
    let steps = a.min(b);
    let factors: Vec<Rat> = (0..steps).map(|i| q.pow(-2 * (a as i64 - 1 - i as i64))).collect();
    expand_gamma_product(&factors)
}

/// Expand `prod_i (1 - w_i * G)` as coefficients of `G^j`.
fn expand_gamma_product(weights: &[Rat]) -> Vec<(u32, Rat)> {
    let mut coeffs = vec![Rat::one()];
    for w in weights {
        let mut next = vec![Rat::zero(); coeffs.len() + 1];
        for (j, c) in coeffs.iter().enumerate() {
            next[j] += c;
            let t = c * w;
            next[j + 1] -= t;
        }
        coeffs = next;
    }
    coeffs
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| (j as u32, c))
        .collect()
}

/// A square matrix with algebra entries (row-major).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgMatrix {
    q: QParam,
    n: usize,
    entries: Vec<Element>,
}

impl AlgMatrix {
    pub fn from_entries(q: &QParam, n: usize, entries: Vec<Element>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(CoreError::DimensionMismatch { expected: n * n, found: entries.len() });
        }
        for e in &entries {
            if e.q() != q {
                return Err(CoreError::ParameterMismatch {
                    left: q.to_string(),
                    right: e.q().to_string(),
                });
            }
        }
        Ok(AlgMatrix { q: q.clone(), n, entries })
    }

    pub fn identity(q: &QParam, n: usize) -> Self {
        let mut entries = vec![Element::zero(q); n * n];
        for i in 0..n {
            entries[i * n + i] = Element::unit(q);
        }
        AlgMatrix { q: q.clone(), n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> &QParam {
        &self.q
    }

    pub fn entry(&self, i: usize, j: usize) -> &Element {
        &self.entries[i * self.n + j]
    }

    pub fn mul(&self, other: &AlgMatrix) -> Result<AlgMatrix> {
        if self.n != other.n {
            return Err(CoreError::DimensionMismatch { expected: self.n, found: other.n });
        }
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = Element::zero(&self.q);
                for t in 0..n {
                    acc = acc.add(&self.entry(i, t).normal_mul(other.entry(t, j))?)?;
                }
                entries.push(acc);
            }
        }
        AlgMatrix::from_entries(&self.q, n, entries)
    }

    /// Conjugate transpose: entrywise star, indices swapped.
    pub fn star(&self) -> AlgMatrix {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(self.entry(j, i).star());
            }
        }
        AlgMatrix { q: self.q.clone(), n, entries }
    }

    pub fn sub(&self, other: &AlgMatrix) -> Result<AlgMatrix> {
        if self.n != other.n {
            return Err(CoreError::DimensionMismatch { expected: self.n, found: other.n });
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.sub(b))
            .collect::<Result<Vec<_>>>()?;
        AlgMatrix::from_entries(&self.q, self.n, entries)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Element::is_zero)
    }
}

/// The fundamental 2x2 matrix `[[alpha, -q gamma*], [gamma, alpha*]]`,
/// unitary over the algebra for every admissible q.
pub fn make_uq(q: &QParam) -> AlgMatrix {
    let minus_q = GaussianRational::from_rat(-q.value().clone());
    AlgMatrix::from_entries(
        q,
        2,
        vec![
            Element::alpha(q),
            Element::gamma_star(q).scale(&minus_q),
            Element::gamma(q),
            Element::alpha_star(q),
        ],
    )
    .expect("fixed 2x2 shape")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn q_half() -> QParam {
        QParam::parse("-1/2").unwrap()
    }

    fn sample_qs() -> Vec<QParam> {
        ["-1", "-1/2", "-3/5", "1"].iter().map(|s| QParam::parse(s).unwrap()).collect()
    }

    /// The five defining relations, reduced through `normal_mul`, must all
    /// collapse to the exact zero element.
    #[test]
    fn defining_relations_reduce_to_zero() {
        for q in sample_qs() {
            let a = Element::alpha(&q);
            let as_ = Element::alpha_star(&q);
            let g = Element::gamma(&q);
            let gs = Element::gamma_star(&q);
            let one = Element::unit(&q);
            let qsq = GaussianRational::from_rat(q.pow(2));
            let qq = GaussianRational::from_rat(q.value().clone());

            let r1 = as_.normal_mul(&a).unwrap().add(&gs.normal_mul(&g).unwrap()).unwrap().sub(&one).unwrap();
            let r2 = a
                .normal_mul(&as_)
                .unwrap()
                .add(&g.normal_mul(&gs).unwrap().scale(&qsq))
                .unwrap()
                .sub(&one)
                .unwrap();
            let r3 = a.normal_mul(&g).unwrap().sub(&g.normal_mul(&a).unwrap().scale(&qq)).unwrap();
            let r4 = a.normal_mul(&gs).unwrap().sub(&gs.normal_mul(&a).unwrap().scale(&qq)).unwrap();
            let r5 = g.normal_mul(&gs).unwrap().sub(&gs.normal_mul(&g).unwrap()).unwrap();
            for (i, r) in [r1, r2, r3, r4, r5].iter().enumerate() {
                assert!(r.is_zero(), "relation {} fails at q={}: {}", i + 1, q, r);
            }
        }
    }

    /// alpha alpha* = 1 - q^2 eta(0,1,1) and alpha* alpha = 1 - eta(0,1,1).
    #[test]
    fn mixed_pair_cancellations() {
        for q in sample_qs() {
            let prod = Element::alpha(&q).normal_mul(&Element::alpha_star(&q)).unwrap();
            let mut expected = Element::unit(&q);
            expected.add_term(Monomial::new(0, 1, 1), GaussianRational::from_rat(-q.pow(2)));
            assert_eq!(prod, expected, "alpha alpha* at q={q}");

            let prod = Element::alpha_star(&q).normal_mul(&Element::alpha(&q)).unwrap();
            let mut expected = Element::unit(&q);
            expected.add_term(Monomial::new(0, 1, 1), -GaussianRational::one());
            assert_eq!(prod, expected, "alpha* alpha at q={q}");
        }
    }

    /// gamma * alpha picks up exactly one inverse power of q.
    /// Frozen from the commutation rule; the representation-theoretic
    /// cross-check lives in tests/oracles.rs.
    #[test]
    fn gamma_alpha_reorders_with_inverse_q() {
        let q = q_half();
        let prod = Element::gamma(&q).normal_mul(&Element::alpha(&q)).unwrap();
        let expected = Element::monomial(&q, 1, 1, 0).scale_rat(&rat(-2, 1)); // q^{-1} = -2
        assert_eq!(prod, expected);

        let qm1 = QParam::minus_one();
        let prod = Element::gamma(&qm1).normal_mul(&Element::alpha(&qm1)).unwrap();
        let expected = Element::monomial(&qm1, 1, 1, 0).scale_rat(&rat(-1, 1));
        assert_eq!(prod, expected);
    }

    /// gamma and gamma* commute past everything up to powers of q only, so
    /// words of the shape eta(k,l,m)·eta(0,l',m') merge without expansion.
    #[test]
    fn gamma_blocks_merge_without_expansion() {
        let q = q_half();
        let x = Element::monomial(&q, 2, 1, 0);
        let y = Element::monomial(&q, 0, 0, 3);
        let p = x.normal_mul(&y).unwrap();
        assert_eq!(p, Element::monomial(&q, 2, 1, 3));
        // and in the other order three crossings appear
        let p = y.normal_mul(&x).unwrap();
        assert_eq!(p, Element::monomial(&q, 2, 1, 3).scale_rat(&q.pow(-6)));
    }

    #[test]
    fn higher_mixed_powers_match_stepwise_reduction() {
        for q in sample_qs() {
            let a = Element::alpha(&q);
            let as_ = Element::alpha_star(&q);
            // alpha^2 alpha*^2 computed two ways: direct normal form vs
            // ((alpha (alpha alpha*)) alpha*) by explicit nesting.
            let direct = a.pow(2).normal_mul(&as_.pow(2)).unwrap();
            let nested = a
                .normal_mul(&a.normal_mul(&as_).unwrap())
                .unwrap()
                .normal_mul(&as_)
                .unwrap();
            assert_eq!(direct, nested, "q={q}");
            // and the star-first orientation
            let direct = as_.pow(2).normal_mul(&a.pow(2)).unwrap();
            let nested = as_
                .normal_mul(&as_.normal_mul(&a).unwrap())
                .unwrap()
                .normal_mul(&a)
                .unwrap();
            assert_eq!(direct, nested, "starred, q={q}");
        }
    }

    #[test]
    fn associativity_on_seeded_triples() {
        use crate::sampling::random_element;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for q in [QParam::minus_one(), q_half()] {
            for _ in 0..40 {
                let x = random_element(&q, 2, 2, 3, &mut rng);
                let y = random_element(&q, 2, 2, 3, &mut rng);
                let z = random_element(&q, 2, 2, 3, &mut rng);
                let left = x.normal_mul(&y).unwrap().normal_mul(&z).unwrap();
                let right = x.normal_mul(&y.normal_mul(&z).unwrap()).unwrap();
                assert_eq!(left, right, "associativity at q={q}");
            }
        }
    }

    #[test]
    fn star_is_an_antimultiplicative_involution() {
        use crate::sampling::random_element;
        use rand::SeedableRng;
        let q = q_half();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let x = random_element(&q, 2, 2, 3, &mut rng);
            let y = random_element(&q, 2, 2, 3, &mut rng);
            assert_eq!(x.star().star(), x, "involution");
            let lhs = x.normal_mul(&y).unwrap().star();
            let rhs = y.star().normal_mul(&x.star()).unwrap();
            assert_eq!(lhs, rhs, "antimultiplicativity");
        }
    }

    #[test]
    fn star_on_basis_words() {
        let q = q_half();
        // alpha* is the k = -1 word
        assert_eq!(Element::alpha(&q).star(), Element::alpha_star(&q));
        // pure gamma words swap their exponents with no q factor
        assert_eq!(Element::monomial(&q, 0, 2, 1).star(), Element::monomial(&q, 0, 1, 2));
        // mixed words pick up q^{k(l+m)}
        let x = Element::monomial(&q, 1, 1, 0).star();
        assert_eq!(x, Element::monomial(&q, -1, 0, 1).scale_rat(&rat(-1, 2)));
    }

    /// At q = -1 the squares of the generators are central.
    #[test]
    fn squares_are_central_at_minus_one() {
        let q = QParam::minus_one();
        let asq = Element::alpha(&q).pow(2);
        let gsq = Element::gamma(&q).pow(2);
        for k in -3i64..=3 {
            for l in 0u32..=3 {
                for m in 0u32..=3 {
                    let x = Element::monomial(&q, k, l, m);
                    for central in [&asq, &gsq] {
                        let lhs = central.normal_mul(&x).unwrap();
                        let rhs = x.normal_mul(central).unwrap();
                        assert_eq!(lhs, rhs, "center fails at eta({k},{l},{m})");
                    }
                }
            }
        }
    }

    #[test]
    fn fundamental_matrix_is_unitary() {
        for q in [QParam::minus_one(), q_half(), QParam::one()] {
            let u = make_uq(&q);
            let id = AlgMatrix::identity(&q, 2);
            assert!(u.mul(&u.star()).unwrap().sub(&id).unwrap().is_zero(), "u u* at q={q}");
            assert!(u.star().mul(&u).unwrap().sub(&id).unwrap().is_zero(), "u* u at q={q}");
        }
    }

    #[test]
    fn mismatched_parameters_are_rejected() {
        let x = Element::alpha(&QParam::minus_one());
        let y = Element::alpha(&q_half());
        assert!(matches!(x.normal_mul(&y), Err(CoreError::ParameterMismatch { .. })));
        assert!(matches!(x.add(&y), Err(CoreError::ParameterMismatch { .. })));
    }

    #[test]
    fn json_round_trip_and_canonical_shape() {
        let q = q_half();
        let mut x = Element::monomial(&q, -1, 0, 2).scale(&GaussianRational::new(rat(1, 3), rat(-2, 1)));
        x = x.add(&Element::unit(&q)).unwrap();
        let s = x.to_json();
        assert_eq!(
            s,
            r#"{"q":"-1/2","terms":[{"k":-1,"l":0,"m":2,"re":"1/3","im":"-2"},{"k":0,"l":0,"m":0,"re":"1","im":"0"}]}"#
        );
        assert_eq!(Element::from_json(&s).unwrap(), x);
        // duplicate and zero terms collapse on input
        let messy = r#"{"q":"-1/2","terms":[
            {"k":0,"l":1,"m":1,"re":"1/2","im":"0"},
            {"k":0,"l":1,"m":1,"re":"1/2","im":"0"},
            {"k":5,"l":0,"m":0,"re":"0","im":"0"}]}"#;
        let parsed = Element::from_json(messy).unwrap();
        assert_eq!(parsed, Element::monomial(&q, 0, 1, 1));
    }

    #[test]
    fn malformed_json_is_a_parse_error() {
        assert!(matches!(Element::from_json("{"), Err(CoreError::Parse(_))));
        let bad_q = r#"{"q":"0","terms":[]}"#;
        assert!(Element::from_json(bad_q).is_err());
        let bad_frac = r#"{"q":"-1","terms":[{"k":0,"l":0,"m":0,"re":"x","im":"0"}]}"#;
        assert!(matches!(Element::from_json(bad_frac), Err(CoreError::Parse(_))));
    }
}
