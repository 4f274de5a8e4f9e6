//! Sparse integer polynomials, division by a single relation, and
//! integral-dependence checks in a hypersurface ring.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::ring::Monomial;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SparsePolynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, i64>,
}

impl SparsePolynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(Monomial::one(nvars), 1)
    }

    pub fn monomial(m: Monomial, coeff: i64) -> Self {
        let mut p = Self::zero(m.nvars());
        if coeff != 0 {
            p.terms.insert(m, coeff);
        }
        p
    }

    /// Collect `(monomial, coefficient)` pairs, summing repeats.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, i64)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (m, c) in terms {
            p.check_mono(&m)?;
            p.add_term(m, c)?;
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    fn check_mono(&self, m: &Monomial) -> Result<()> {
        if m.nvars() != self.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: m.nvars(),
            });
        }
        Ok(())
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    fn add_term(&mut self, m: Monomial, c: i64) -> Result<()> {
        if c == 0 {
            return Ok(());
        }
        let old = self.terms.get(&m).copied().unwrap_or(0);
        let new = old
            .checked_add(c)
            .ok_or(Error::Overflow("polynomial coefficient"))?;
        if new == 0 {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, new);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c)?;
        }
        Ok(out)
    }

    pub fn neg(&self) -> Result<Self> {
        self.scale(-1)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg()?)
    }

    pub fn scale(&self, k: i64) -> Result<Self> {
        let mut out = Self::zero(self.nvars);
        for (m, &c) in &self.terms {
            let c = c
                .checked_mul(k)
                .ok_or(Error::Overflow("polynomial coefficient"))?;
            out.add_term(m.clone(), c)?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = Self::zero(self.nvars);
        for (a, &ca) in &self.terms {
            for (b, &cb) in &other.terms {
                let c = ca
                    .checked_mul(cb)
                    .ok_or(Error::Overflow("polynomial coefficient"))?;
                out.add_term(a.mul(b)?, c)?;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u64) -> Result<Self> {
        let mut out = Self::one(self.nvars);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Multiply by a single term `c * x^m`.
    fn mul_term(&self, m: &Monomial, c: i64) -> Result<Self> {
        self.mul(&Self::monomial(m.clone(), c))
    }

    pub fn leading_term(&self, order: &TermOrder) -> Option<(&Monomial, i64)> {
        self.terms
            .iter()
            .max_by(|a, b| order.cmp(a.0, b.0))
            .map(|(m, &c)| (m, c))
    }
}

/// Weighted graded lexicographic order: compare weighted degree first, then
/// exponents lexicographically with the first declared variable largest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermOrder {
    weights: Vec<u64>,
}

impl TermOrder {
    pub fn graded_lex(weights: Vec<u64>) -> Result<Self> {
        if let Some(i) = weights.iter().position(|&w| w == 0) {
            return Err(Error::NonPositiveWeight(i));
        }
        Ok(Self { weights })
    }

    /// Plain graded lex (every weight 1).
    pub fn standard(nvars: usize) -> Self {
        Self {
            weights: vec![1; nvars],
        }
    }

    fn degree(&self, m: &Monomial) -> u128 {
        m.exponents()
            .iter()
            .zip(&self.weights)
            .map(|(&c, &w)| c as u128 * w as u128)
            .sum()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.degree(a)
            .cmp(&self.degree(b))
            .then_with(|| a.exponents().cmp(b.exponents()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Division {
    pub quotient: SparsePolynomial,
    pub remainder: SparsePolynomial,
}

/// Divide `p` by `f`: `p = q*f + r` with no term of `r` divisible by the
/// leading monomial of `f`. The leading coefficient of `f` must be `±1`.
pub fn divide(p: &SparsePolynomial, f: &SparsePolynomial, order: &TermOrder) -> Result<Division> {
    p.check_same(f)?;
    if order.weights.len() != p.nvars {
        return Err(Error::DimensionMismatch {
            expected: p.nvars,
            found: order.weights.len(),
        });
    }
    let (lead, lc) = match f.leading_term(order) {
        Some((m, c)) => (m.clone(), c),
        None => return Err(Error::ZeroDivisor),
    };
    if lc != 1 && lc != -1 {
        return Err(Error::NonUnitLeadingCoefficient(lc));
    }
    let mut rest = p.clone();
    let mut quotient = SparsePolynomial::zero(p.nvars);
    let mut remainder = SparsePolynomial::zero(p.nvars);
    while let Some((m, c)) = rest.leading_term(order).map(|(m, c)| (m.clone(), c)) {
        match lead.divides(&m)? {
            Some(shift) => {
                let k = c
                    .checked_mul(lc)
                    .ok_or(Error::Overflow("polynomial coefficient"))?;
                quotient.add_term(shift.clone(), k)?;
                rest = rest.sub(&f.mul_term(&shift, k)?)?;
            }
            None => {
                remainder.add_term(m.clone(), c)?;
                rest.terms.remove(&m);
            }
        }
    }
    Ok(Division {
        quotient,
        remainder,
    })
}

pub fn reduce_mod(p: &SparsePolynomial, f: &SparsePolynomial, order: &TermOrder) -> Result<SparsePolynomial> {
    Ok(divide(p, f, order)?.remainder)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependenceCheck {
    /// `g^n + a_1 g^{n-1} + .. + a_n` reduced modulo the relation.
    pub remainder: SparsePolynomial,
    /// Per coefficient `a_i`: whether every term lies in `I^i`. Empty when
    /// no witness ideal was given.
    pub coefficient_membership: Vec<bool>,
}

impl DependenceCheck {
    pub fn equation_holds(&self) -> bool {
        self.remainder.is_zero()
    }

    pub fn holds(&self) -> bool {
        self.equation_holds() && self.coefficient_membership.iter().all(|&b| b)
    }
}

/// Check `g^n + a_1 g^{n-1} + .. + a_n = 0` in `k[x]/(f)`, and optionally
/// that each `a_i` lies in `I^i` term by term.
pub fn check_dependence(
    f: &SparsePolynomial,
    g: &SparsePolynomial,
    coeffs: &[SparsePolynomial],
    witness: Option<&MonomialIdeal>,
    order: &TermOrder,
) -> Result<DependenceCheck> {
    if coeffs.is_empty() {
        return Err(Error::InvalidArgument("at least one coefficient is required".into()));
    }
    f.check_same(g)?;
    let n = coeffs.len() as u64;
    let mut expr = g.pow(n)?;
    for (i, a) in coeffs.iter().enumerate() {
        f.check_same(a)?;
        let i = i as u64 + 1;
        expr = expr.add(&a.mul(&g.pow(n - i)?)?)?;
    }
    let remainder = reduce_mod(&expr, f, order)?;
    let mut coefficient_membership = Vec::new();
    if let Some(ideal) = witness {
        if ideal.ring().nvars() != f.nvars {
            return Err(Error::DimensionMismatch {
                expected: f.nvars,
                found: ideal.ring().nvars(),
            });
        }
        let mut power = ideal.clone();
        for (i, a) in coeffs.iter().enumerate() {
            if i > 0 {
                power = power.product(ideal)?;
            }
            let ok = a.terms().all(|(m, _)| power.contains_unchecked(m));
            coefficient_membership.push(ok);
        }
    }
    Ok(DependenceCheck {
        remainder,
        coefficient_membership,
    })
}
