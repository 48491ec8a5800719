//! Sparse complex homogeneous polynomials and the witness families used to
//! certify lower bounds.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Exponent vector `α = (α₁, …, αₙ)` of a monomial `z^α`.
///
/// Ordered lexicographically; this order fixes the term iteration order and
/// therefore the floating-point summation order of [`HomogeneousPolynomial::evaluate`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    /// `|α|`
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

impl From<Vec<u32>> for MultiIndex {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// `P(z) = Σ_{|α| = m} a_α z^α` on `ℂⁿ`, stored sparsely.
///
/// Immutable once built. Zero coefficients are never stored, so the zero
/// polynomial is the one with no terms.
#[derive(Debug, Clone, PartialEq)]
pub struct HomogeneousPolynomial {
    dimension: usize,
    degree: u32,
    terms: BTreeMap<MultiIndex, Complex64>,
}

impl HomogeneousPolynomial {
    /// Builds a polynomial, rejecting wrong lengths or degrees, duplicate
    /// multi-indices and non-finite coefficients. Zero coefficients are dropped.
    pub fn new<I, A>(dimension: usize, degree: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (A, Complex64)>,
        A: Into<MultiIndex>,
    {
        if dimension == 0 {
            return Err(Error::InvalidPolynomial("dimension must be positive".into()));
        }
        if degree == 0 {
            return Err(Error::InvalidPolynomial("degree must be positive".into()));
        }
        let mut map = BTreeMap::new();
        for (alpha, coeff) in terms {
            let alpha = alpha.into();
            if alpha.len() != dimension {
                return Err(Error::InvalidPolynomial(format!(
                    "multi-index {alpha} has length {}, expected {dimension}",
                    alpha.len()
                )));
            }
            if alpha.degree() != degree {
                return Err(Error::InvalidPolynomial(format!(
                    "multi-index {alpha} has degree {}, expected {degree}",
                    alpha.degree()
                )));
            }
            if !(coeff.re.is_finite() && coeff.im.is_finite()) {
                return Err(Error::NonFinite(format!("coefficient of {alpha}")));
            }
            if map.contains_key(&alpha) {
                return Err(Error::InvalidPolynomial(format!("duplicate multi-index {alpha}")));
            }
            map.insert(alpha, coeff);
        }
        map.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        Ok(Self { dimension, degree, terms: map })
    }

    pub fn zero(dimension: usize, degree: u32) -> Result<Self> {
        Self::new(dimension, degree, std::iter::empty::<(MultiIndex, Complex64)>())
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of non-zero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic multi-index order.
    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, alpha: &[u32]) -> Complex64 {
        self.terms
            .get(&MultiIndex(alpha.to_vec()))
            .copied()
            .unwrap_or_default()
    }

    /// `λ·P`.
    pub fn scaled(&self, lambda: Complex64) -> Result<Self> {
        Self::new(
            self.dimension,
            self.degree,
            self.terms.iter().map(|(a, c)| (a.clone(), c * lambda)),
        )
    }

    /// Relabels variables: variable `j` of the result is variable `perm[j]`
    /// of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.dimension];
        if perm.len() != self.dimension || perm.iter().any(|&k| k >= self.dimension) {
            return Err(Error::InvalidPolynomial("not a permutation".into()));
        }
        for &k in perm {
            if std::mem::replace(&mut seen[k], true) {
                return Err(Error::InvalidPolynomial("not a permutation".into()));
            }
        }
        Self::new(
            self.dimension,
            self.degree,
            self.terms.iter().map(|(a, c)| {
                let alpha: Vec<u32> = perm.iter().map(|&k| a.0[k]).collect();
                (MultiIndex(alpha), *c)
            }),
        )
    }

    fn check_point(&self, z: &[Complex64]) -> Result<()> {
        if z.len() != self.dimension {
            return Err(Error::DimensionMismatch { expected: self.dimension, got: z.len() });
        }
        Ok(())
    }

    /// `Σ a_α z^α`.
    pub fn evaluate(&self, z: &[Complex64]) -> Result<Complex64> {
        self.check_point(z)?;
        Ok(self.evaluate_unchecked(z))
    }

    pub(crate) fn evaluate_unchecked(&self, z: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(alpha, a)| a * monomial(alpha, z))
            .sum()
    }

    /// `(∂P/∂z₁, …, ∂P/∂zₙ)` at `z`.
    pub fn complex_gradient(&self, z: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_point(z)?;
        Ok(self.value_and_gradient(z).1)
    }

    pub(crate) fn value_and_gradient(&self, z: &[Complex64]) -> (Complex64, Vec<Complex64>) {
        let n = self.dimension;
        let mut value = Complex64::new(0.0, 0.0);
        let mut grad = vec![Complex64::new(0.0, 0.0); n];
        let mut powers = vec![Complex64::new(1.0, 0.0); n];
        for (alpha, a) in &self.terms {
            for (k, (&e, zk)) in alpha.0.iter().zip(z).enumerate() {
                powers[k] = zk.powu(e);
            }
            value += a * powers.iter().product::<Complex64>();
            for j in 0..n {
                let e = alpha.0[j];
                if e == 0 {
                    continue;
                }
                let mut d = a * f64::from(e) * z[j].powu(e - 1);
                for (k, pk) in powers.iter().enumerate() {
                    if k != j {
                        d *= pk;
                    }
                }
                grad[j] += d;
            }
        }
        (value, grad)
    }

    /// `(Σ |a_α|^ρ)^{1/ρ}` for `ρ ≥ 1`; `ρ = ∞` gives the largest modulus.
    pub fn coefficient_norm(&self, rho: f64) -> Result<f64> {
        if rho.is_nan() || rho < 1.0 {
            return Err(Error::Domain(format!("coefficient norm needs rho >= 1, got {rho}")));
        }
        let largest = self.terms.values().map(|c| c.norm()).fold(0.0, f64::max);
        if largest == 0.0 {
            return Ok(0.0);
        }
        if rho.is_infinite() {
            return Ok(largest);
        }
        // Rescale by the largest modulus so large rho cannot overflow.
        let sum: f64 = self.terms.values().map(|c| (c.norm() / largest).powf(rho)).sum();
        Ok(largest * sum.powf(rho.recip()))
    }
}

fn monomial(alpha: &MultiIndex, z: &[Complex64]) -> Complex64 {
    alpha
        .0
        .iter()
        .zip(z)
        .filter(|(&e, _)| e > 0)
        .map(|(&e, zk)| zk.powu(e))
        .product()
}

/// `Q₂(z₁, z₂) = z₁² − z₂² + c·z₁z₂`.
pub fn witness_q2(c: f64) -> Result<HomogeneousPolynomial> {
    witness_qm(2, c)
}

/// `Qₘ(z) = z₃⋯zₘ · Q₂(z₁, z₂)` on `ℂᵐ`.
pub fn witness_qm(m: u32, c: f64) -> Result<HomogeneousPolynomial> {
    if m < 2 {
        return Err(Error::Domain(format!("Q_m needs m >= 2, got {m}")));
    }
    let n = m as usize;
    let term = |a: u32, b: u32| {
        let mut alpha = vec![1u32; n];
        alpha[0] = a;
        alpha[1] = b;
        alpha
    };
    HomogeneousPolynomial::new(
        n,
        m,
        [
            (term(2, 0), Complex64::new(1.0, 0.0)),
            (term(0, 2), Complex64::new(-1.0, 0.0)),
            (term(1, 1), Complex64::new(c, 0.0)),
        ],
    )
}

/// `Pₘ(z) = z₁z₂⋯zₘ` on `ℂᵐ`.
pub fn witness_pm(m: u32) -> Result<HomogeneousPolynomial> {
    if m < 2 {
        return Err(Error::Domain(format!("P_m needs m >= 2, got {m}")));
    }
    HomogeneousPolynomial::new(m as usize, m, [(vec![1u32; m as usize], Complex64::new(1.0, 0.0))])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn evaluate_examples() {
        let p2 = witness_pm(2).unwrap();
        assert_eq!(p2.evaluate(&[c(1.0, 0.0), c(1.0, 0.0)]).unwrap(), c(1.0, 0.0));
        // 1 − i² + i = 2 + i
        let q2 = witness_q2(1.0).unwrap();
        assert_eq!(q2.evaluate(&[c(1.0, 0.0), c(0.0, 1.0)]).unwrap(), c(2.0, 1.0));
        assert_eq!(q2.evaluate(&[c(0.0, 0.0); 2]).unwrap(), c(0.0, 0.0));
        assert_eq!(q2.evaluate(&[c(1.0, 0.0), c(1.0, 0.0)]).unwrap(), c(1.0, 0.0));
    }

    #[test]
    fn dimension_mismatch() {
        let p = witness_pm(3).unwrap();
        assert_eq!(
            p.evaluate(&[c(1.0, 0.0); 2]),
            Err(Error::DimensionMismatch { expected: 3, got: 2 })
        );
        assert!(p.complex_gradient(&[c(1.0, 0.0); 4]).is_err());
    }

    #[test]
    fn coefficient_norms() {
        let q = witness_q2(0.0).unwrap();
        assert!((q.coefficient_norm(2.0).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        for rho in [1.0, 1.5, 2.0, 7.0, f64::INFINITY] {
            assert_eq!(witness_pm(4).unwrap().coefficient_norm(rho).unwrap(), 1.0);
            let cc = 3.5f64;
            let expected = (2.0 + cc.powf(rho)).powf(rho.recip());
            let got = witness_q2(cc).unwrap().coefficient_norm(rho).unwrap();
            if rho.is_finite() {
                assert!((got - expected).abs() < 1e-12 * expected, "rho={rho}");
            } else {
                assert_eq!(got, 3.5);
            }
        }
        assert_eq!(HomogeneousPolynomial::zero(3, 2).unwrap().coefficient_norm(2.0), Ok(0.0));
        assert!(q.coefficient_norm(0.5).is_err());
        assert!(q.coefficient_norm(f64::NAN).is_err());
    }

    #[test]
    fn large_rho_does_not_overflow() {
        let p = witness_q2(10.0).unwrap();
        let v = p.coefficient_norm(5000.0).unwrap();
        assert!((v - 10.0).abs() < 1e-9);
    }

    #[test]
    fn witness_shapes() {
        let q2 = witness_q2(2.0).unwrap();
        assert_eq!(q2.coefficient(&[1, 1]), c(2.0, 0.0));
        assert_eq!(q2.coefficient(&[2, 0]), c(1.0, 0.0));
        assert_eq!(q2.coefficient(&[0, 2]), c(-1.0, 0.0));
        assert_eq!(witness_qm(2, 2.0).unwrap(), q2);

        let q4 = witness_qm(4, 1.0).unwrap();
        assert_eq!(q4.len(), 3);
        assert_eq!(q4.coefficient(&[2, 0, 1, 1]), c(1.0, 0.0));
        assert_eq!(q4.coefficient(&[0, 2, 1, 1]), c(-1.0, 0.0));
        assert_eq!(q4.coefficient(&[1, 1, 1, 1]), c(1.0, 0.0));

        let q3 = witness_qm(3, 0.0).unwrap();
        assert_eq!(q3.len(), 2);
        assert!((q3.coefficient_norm(2.0).unwrap() - 2f64.sqrt()).abs() < 1e-15);

        let p2 = witness_pm(2).unwrap();
        assert_eq!(p2.len(), 1);
        assert_eq!(p2.coefficient(&[1, 1]), c(1.0, 0.0));
        assert_eq!(witness_pm(3).unwrap().evaluate(&[c(1.0, 0.0); 3]).unwrap(), c(1.0, 0.0));

        assert!(witness_qm(1, 1.0).is_err());
        assert!(witness_pm(1).is_err());
    }

    #[test]
    fn gradient_examples() {
        let p2 = witness_pm(2).unwrap();
        assert_eq!(p2.complex_gradient(&[c(1.0, 0.0); 2]).unwrap(), vec![c(1.0, 0.0); 2]);
        let q = witness_q2(0.0).unwrap();
        assert_eq!(
            q.complex_gradient(&[c(1.0, 0.0), c(0.0, 0.0)]).unwrap(),
            vec![c(2.0, 0.0), c(0.0, 0.0)]
        );
        let q5 = witness_qm(5, 1.3).unwrap();
        assert!(q5
            .complex_gradient(&[c(0.0, 0.0); 5])
            .unwrap()
            .iter()
            .all(|g| *g == c(0.0, 0.0)));
    }

    #[test]
    fn construction_errors() {
        let one = c(1.0, 0.0);
        assert!(HomogeneousPolynomial::new(2, 2, [(vec![1, 1, 0], one)]).is_err());
        assert!(HomogeneousPolynomial::new(2, 2, [(vec![2, 1], one)]).is_err());
        assert!(HomogeneousPolynomial::new(2, 2, [(vec![1, 1], one), (vec![1, 1], one)]).is_err());
        assert!(HomogeneousPolynomial::new(2, 2, [(vec![1, 1], c(f64::NAN, 0.0))]).is_err());
        assert!(HomogeneousPolynomial::new(0, 2, [(vec![], one)]).is_err());
        let p = HomogeneousPolynomial::new(2, 2, [(vec![1, 1], c(0.0, 0.0))]).unwrap();
        assert!(p.is_zero());
    }

    #[test]
    fn permutation_relabels_variables() {
        let q = witness_q2(2.0).unwrap();
        let swapped = q.permuted(&[1, 0]).unwrap();
        assert_eq!(swapped.coefficient(&[0, 2]), c(1.0, 0.0));
        assert_eq!(swapped.coefficient(&[2, 0]), c(-1.0, 0.0));
        assert!(q.permuted(&[0, 0]).is_err());
        assert!(q.permuted(&[0]).is_err());
    }
}
