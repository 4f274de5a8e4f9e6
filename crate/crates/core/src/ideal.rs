//! Monomial ideals stored as canonical minimal generating sets.

use std::cmp::Reverse;

use crate::error::{Error, Result};
use crate::ring::{Monomial, WeightSystem};

/// A monomial ideal of the polynomial ring over `ring`, kept as its unique
/// set of minimal monomial generators in canonical order.
///
/// The canonical order is descending lexicographic on exponent vectors, so
/// `x^12, x^10*y, .., y^9` is already canonical. An empty generator list is
/// the zero ideal; the single generator `1` is the unit ideal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    ring: WeightSystem,
    generators: Vec<Monomial>,
}

/// Sort into canonical order.
pub(crate) fn canonical_sort(gens: &mut [Monomial]) {
    gens.sort_unstable_by(|a, b| b.cmp(a));
}

/// Keep only the divisibility-minimal elements of `gens`, in canonical order.
pub(crate) fn minimal_elements(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    // A proper divisor has strictly smaller total degree.
    gens.sort_unstable_by_key(|g| (g.total_degree(), Reverse(g.clone())));
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides_unchecked(&g)) {
            kept.push(g);
        }
    }
    canonical_sort(&mut kept);
    kept
}

impl MonomialIdeal {
    /// Ideal generated by `gens`; redundant generators are dropped.
    pub fn minimalize(ring: &WeightSystem, gens: Vec<Monomial>) -> Result<Self> {
        for g in &gens {
            ring.check_dim(g)?;
        }
        Ok(Self {
            ring: ring.clone(),
            generators: minimal_elements(gens),
        })
    }

    /// Build from generators already known to be minimal and canonical.
    pub(crate) fn from_canonical(ring: WeightSystem, generators: Vec<Monomial>) -> Self {
        Self { ring, generators }
    }

    pub fn zero(ring: &WeightSystem) -> Self {
        Self::from_canonical(ring.clone(), Vec::new())
    }

    pub fn unit(ring: &WeightSystem) -> Self {
        Self::from_canonical(ring.clone(), vec![Monomial::one(ring.nvars())])
    }

    pub fn ring(&self) -> &WeightSystem {
        &self.ring
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    /// Number of minimal generators; the zero ideal has none.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_one()
    }

    pub fn contains(&self, m: &Monomial) -> Result<bool> {
        self.ring.check_dim(m)?;
        Ok(self.contains_unchecked(m))
    }

    pub(crate) fn contains_unchecked(&self, m: &Monomial) -> bool {
        self.generators.iter().any(|g| g.divides_unchecked(m))
    }

    fn check_ring(&self, other: &MonomialIdeal) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        self.check_ring(other)?;
        let mut cands = Vec::with_capacity(self.len() * other.len());
        for g in &self.generators {
            for h in &other.generators {
                cands.push(g.mul(h)?);
            }
        }
        Ok(Self::from_canonical(self.ring.clone(), minimal_elements(cands)))
    }

    pub fn power(&self, p: u64) -> Result<MonomialIdeal> {
        if p == 0 {
            return Err(Error::ZeroPower);
        }
        let mut acc = self.clone();
        for _ in 1..p {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    pub fn equals(&self, other: &MonomialIdeal) -> Result<bool> {
        self.check_ring(other)?;
        Ok(self.generators == other.generators)
    }

    /// `true` when every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> Result<bool> {
        self.check_ring(other)?;
        Ok(other.generators.iter().all(|g| self.contains_unchecked(g)))
    }
}

/// Minimal monomial generators of `R_{>=alpha}`, the ideal generated by all
/// monomials of weighted degree at least `alpha`.
///
/// A monomial `g` is a minimal generator iff `deg g >= alpha` and
/// `deg g - A_i < alpha` for every variable occurring in `g`. For a fixed
/// prefix `c_0..c_{m-1}` that leaves at most one choice of the last exponent.
pub fn truncation_ideal(w: &WeightSystem, alpha: u64) -> Result<MonomialIdeal> {
    let mut out = Vec::new();
    if alpha == 0 {
        return Ok(MonomialIdeal::unit(w));
    }
    let mut exps = vec![0u64; w.nvars()];
    enumerate_truncation(w, alpha, 0, 0, u64::MAX, &mut exps, &mut out)?;
    canonical_sort(&mut out);
    Ok(MonomialIdeal::from_canonical(w.clone(), out))
}

fn enumerate_truncation(
    w: &WeightSystem,
    alpha: u64,
    i: usize,
    partial: u64,
    min_used: u64,
    exps: &mut Vec<u64>,
    out: &mut Vec<Monomial>,
) -> Result<()> {
    let overflow = || Error::Overflow("truncation degree");
    let n = w.nvars();
    let wi = w.weight(i);
    if i + 1 == n {
        let (c, deg) = if partial >= alpha {
            (0, partial)
        } else {
            let c = (alpha - partial).div_ceil(wi);
            let deg = c
                .checked_mul(wi)
                .and_then(|t| t.checked_add(partial))
                .ok_or_else(overflow)?;
            (c, deg)
        };
        let min_used = if c > 0 { min_used.min(wi) } else { min_used };
        // deg - A_j < alpha for every used j; the binding one is the lightest.
        if min_used == u64::MAX || deg - min_used < alpha {
            exps[i] = c;
            out.push(Monomial::new(exps.clone()));
            exps[i] = 0;
        }
        return Ok(());
    }
    let mut c = 0u64;
    loop {
        let deg = c
            .checked_mul(wi)
            .and_then(|t| t.checked_add(partial))
            .ok_or_else(overflow)?;
        let used = if c > 0 { min_used.min(wi) } else { min_used };
        if used != u64::MAX && deg >= alpha.checked_add(used).ok_or_else(overflow)? {
            break;
        }
        exps[i] = c;
        enumerate_truncation(w, alpha, i + 1, deg, used, exps, out)?;
        c += 1;
    }
    exps[i] = 0;
    Ok(())
}
