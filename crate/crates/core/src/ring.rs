//! Weight systems, monomials and weighted degrees.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Positive integer weights `A_0..A_m` on the variables of a polynomial ring,
/// together with their least common multiple `A` and the cofactors
/// `a_i = A / A_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightSystem {
    weights: Vec<u64>,
    lcm: u64,
    cofactors: Vec<u64>,
}

impl WeightSystem {
    pub fn new(weights: Vec<u64>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::EmptyWeights);
        }
        if let Some(i) = weights.iter().position(|&w| w == 0) {
            return Err(Error::NonPositiveWeight(i));
        }
        let mut lcm = 1u64;
        for &w in &weights {
            let g = lcm.gcd(&w);
            lcm = (lcm / g)
                .checked_mul(w)
                .ok_or(Error::Overflow("lcm of weights"))?;
        }
        let cofactors = weights.iter().map(|&w| lcm / w).collect();
        Ok(Self {
            weights,
            lcm,
            cofactors,
        })
    }

    /// Convenience constructor used mostly by tests and examples.
    pub fn from_slice(weights: &[u64]) -> Result<Self> {
        Self::new(weights.to_vec())
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> u64 {
        self.weights[i]
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    /// Index of the last variable, i.e. `nvars - 1`.
    pub fn m(&self) -> usize {
        self.weights.len() - 1
    }

    /// `A = lcm(A_0, .., A_m)`.
    pub fn lcm_weight(&self) -> u64 {
        self.lcm
    }

    /// `a_i = A / A_i`, so that `X_i^{a_i}` has degree exactly `A`.
    pub fn cofactors(&self) -> &[u64] {
        &self.cofactors
    }

    pub fn max_weight(&self) -> u64 {
        self.weights.iter().copied().max().unwrap_or(1)
    }

    pub fn check_dim(&self, m: &Monomial) -> Result<()> {
        if m.nvars() != self.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                found: m.nvars(),
            });
        }
        Ok(())
    }

    /// `Σ c_i A_i`, with overflow reported as an error.
    pub fn degree(&self, m: &Monomial) -> Result<WeightedDegree> {
        self.check_dim(m)?;
        self.degree_of_exponents(m.exponents()).map(WeightedDegree)
    }

    pub(crate) fn degree_of_exponents(&self, exps: &[u64]) -> Result<u64> {
        exps.iter()
            .zip(&self.weights)
            .try_fold(0u64, |acc, (&c, &w)| {
                c.checked_mul(w).and_then(|t| acc.checked_add(t))
            })
            .ok_or(Error::Overflow("weighted degree"))
    }
}

/// Free-function form of [`WeightSystem::degree`].
pub fn weighted_degree(w: &WeightSystem, m: &Monomial) -> Result<WeightedDegree> {
    w.degree(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WeightedDegree(pub u64);

impl WeightedDegree {
    pub fn value(self) -> u64 {
        self.0
    }
}

impl fmt::Display for WeightedDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// An exponent vector. Monomials carry no weights; the ring is always passed
/// alongside.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Monomial(Vec<u64>);

impl Monomial {
    pub fn new(exponents: Vec<u64>) -> Self {
        Monomial(exponents)
    }

    /// The monomial `1` in `nvars` variables.
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    /// `X_i^e` in `nvars` variables.
    pub fn var_power(nvars: usize, i: usize, e: u64) -> Self {
        let mut v = vec![0; nvars];
        v[i] = e;
        Monomial(v)
    }

    pub fn exponents(&self) -> &[u64] {
        &self.0
    }

    pub fn into_exponents(self) -> Vec<u64> {
        self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().sum()
    }

    fn check_same_dim(&self, other: &Monomial) -> Result<()> {
        if self.nvars() != other.nvars() {
            return Err(Error::DimensionMismatch {
                expected: self.nvars(),
                found: other.nvars(),
            });
        }
        Ok(())
    }

    /// Product of monomials (exponentwise sum).
    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        self.check_same_dim(other)?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a.checked_add(b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
            .ok_or(Error::Overflow("monomial product"))
    }

    /// `self^k`.
    pub fn pow(&self, k: u64) -> Result<Monomial> {
        self.0
            .iter()
            .map(|&a| a.checked_mul(k))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
            .ok_or(Error::Overflow("monomial power"))
    }

    /// Whether `self` divides `other`, without a dimension check.
    pub(crate) fn divides_unchecked(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `Some(other / self)` when `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> Result<Option<Monomial>> {
        self.check_same_dim(other)?;
        if !self.divides_unchecked(other) {
            return Ok(None);
        }
        Ok(Some(Monomial(
            other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect(),
        )))
    }

    /// Render with the given variable names, e.g. `x^3*y*z^2`; `1` for the
    /// unit monomial.
    pub fn display<'a>(&'a self, names: &'a [String]) -> MonomialDisplay<'a> {
        MonomialDisplay { mono: self, names }
    }
}

/// Free-function form of [`Monomial::divides`].
pub fn divides(d: &Monomial, m: &Monomial) -> Result<Option<Monomial>> {
    d.divides(m)
}

impl From<Vec<u64>> for Monomial {
    fn from(v: Vec<u64>) -> Self {
        Monomial(v)
    }
}

impl<const N: usize> From<[u64; N]> for Monomial {
    fn from(v: [u64; N]) -> Self {
        Monomial(v.to_vec())
    }
}

pub struct MonomialDisplay<'a> {
    mono: &'a Monomial,
    names: &'a [String],
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.mono.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            match self.names.get(i) {
                Some(n) => f.write_str(n)?,
                None => write!(f, "x{i}")?,
            }
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// Default variable names: `x, y, z, w` for up to four variables, then
/// `x0, x1, ..`.
pub fn default_variable_names(nvars: usize) -> Vec<String> {
    if nvars <= 4 {
        ["x", "y", "z", "w"][..nvars]
            .iter()
            .map(|s| s.to_string())
            .collect()
    } else {
        (0..nvars).map(|i| format!("x{i}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ws(w: &[u64]) -> WeightSystem {
        WeightSystem::from_slice(w).unwrap()
    }

    #[test]
    fn degree_examples() {
        let w = ws(&[15, 10, 6]);
        assert_eq!(w.degree(&[4, 0, 0].into()).unwrap().value(), 60);
        assert_eq!(w.degree(&Monomial::one(3)).unwrap().value(), 0);
        assert_eq!(ws(&[2, 3]).degree(&[2, 1].into()).unwrap().value(), 7);
    }

    #[test]
    fn degree_errors() {
        let w = ws(&[2, 3]);
        assert!(matches!(
            w.degree(&[1, 1, 1].into()),
            Err(Error::DimensionMismatch { expected: 2, found: 3 })
        ));
        assert_eq!(
            w.degree(&[u64::MAX, 0].into()),
            Err(Error::Overflow("weighted degree"))
        );
    }

    #[test]
    fn derive_examples() {
        let w = ws(&[15, 10, 6]);
        assert_eq!(w.lcm_weight(), 30);
        assert_eq!(w.cofactors(), &[2, 3, 5]);
        assert_eq!(w.m(), 2);
        let w = ws(&[3, 3]);
        assert_eq!((w.lcm_weight(), w.cofactors()), (3, &[1u64, 1][..]));
        let w = ws(&[2, 3]);
        assert_eq!((w.lcm_weight(), w.cofactors()), (6, &[3u64, 2][..]));
    }

    #[test]
    fn derive_errors() {
        assert_eq!(WeightSystem::new(vec![]), Err(Error::EmptyWeights));
        assert_eq!(
            WeightSystem::new(vec![2, 0, 1]),
            Err(Error::NonPositiveWeight(1))
        );
    }

    #[test]
    fn divides_examples() {
        let q = Monomial::from([2, 1]).divides(&[4, 1].into()).unwrap();
        assert_eq!(q, Some([2, 0].into()));
        assert_eq!(Monomial::from([4, 0]).divides(&[3, 9].into()).unwrap(), None);
        let m = Monomial::from([5, 7]);
        assert_eq!(Monomial::one(2).divides(&m).unwrap(), Some(m));
        assert!(Monomial::one(2).divides(&Monomial::one(3)).is_err());
    }

    #[test]
    fn display() {
        let names = default_variable_names(3);
        assert_eq!(Monomial::from([3, 1, 2]).display(&names).to_string(), "x^3*y*z^2");
        assert_eq!(Monomial::one(3).display(&names).to_string(), "1");
        assert_eq!(default_variable_names(5)[4], "x4");
    }

    fn weights_and_two_monomials() -> impl Strategy<Value = (Vec<u64>, Vec<u64>, Vec<u64>)> {
        (1usize..5).prop_flat_map(|n| {
            (
                prop::collection::vec(1u64..20, n),
                prop::collection::vec(0u64..50, n),
                prop::collection::vec(0u64..50, n),
            )
        })
    }

    proptest! {
        #[test]
        fn degree_is_additive((w, a, b) in weights_and_two_monomials()) {
            let w = WeightSystem::new(w).unwrap();
            let (a, b) = (Monomial::new(a), Monomial::new(b));
            let ab = a.mul(&b).unwrap();
            prop_assert_eq!(
                w.degree(&ab).unwrap().value(),
                w.degree(&a).unwrap().value() + w.degree(&b).unwrap().value()
            );
        }

        #[test]
        fn cofactor_powers_have_degree_lcm(w in prop::collection::vec(1u64..30, 1..6)) {
            let w = WeightSystem::new(w).unwrap();
            for (i, &a) in w.cofactors().iter().enumerate() {
                prop_assert_eq!(a * w.weight(i), w.lcm_weight());
                let x = Monomial::var_power(w.nvars(), i, a);
                prop_assert_eq!(w.degree(&x).unwrap().value(), w.lcm_weight());
            }
            // least: no proper divisor of A is a common multiple
            let a = w.lcm_weight();
            for d in 1..a {
                if a.is_multiple_of(d) {
                    prop_assert!(w.weights().iter().any(|&x| d % x != 0));
                }
            }
        }

        #[test]
        fn divisor_degree_is_smaller((w, a, b) in weights_and_two_monomials()) {
            let w = WeightSystem::new(w).unwrap();
            let (a, b) = (Monomial::new(a), Monomial::new(b));
            if let Some(q) = a.divides(&b).unwrap() {
                prop_assert!(w.degree(&a).unwrap() <= w.degree(&b).unwrap());
                prop_assert_eq!(a.mul(&q).unwrap(), b);
            }
        }
    }
}
