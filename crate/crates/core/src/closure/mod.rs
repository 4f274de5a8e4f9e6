//! Integral closure of monomial ideals.
//!
//! A monomial `x^v` is integral over a monomial ideal `I` exactly when `v`
//! lies in the Newton polyhedron `conv(exponents of I) + R^n_{>=0}`. That is
//! decided here with exact rational arithmetic. Independently,
//! [`power_membership_oracle`] checks the defining condition
//! `(x^v)^N in I^N` directly, and every monomial the closure adds carries
//! a certificate `(lambda, N)` that replays through the oracle.

pub mod feasibility;

use std::collections::HashSet;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::ideal::{canonical_sort, MonomialIdeal};
use crate::ring::Monomial;
use feasibility::{check_inside, check_outside, common_denominator, newton_feasibility, Feasibility, IntCut};

/// Why a monomial is or is not in the Newton polyhedron.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NewtonMembership {
    /// Convex weights on the ideal's generators (in generator order).
    Inside(Vec<BigRational>),
    Outside(feasibility::Cut),
}

fn gen_slices(ideal: &MonomialIdeal) -> Vec<&[u64]> {
    ideal.generators().iter().map(|g| g.exponents()).collect()
}

fn nonzero(ideal: &MonomialIdeal) -> Result<()> {
    if ideal.is_zero() {
        return Err(Error::ZeroIdeal);
    }
    Ok(())
}

/// Decide Newton-polyhedron membership and return the evidence.
pub fn np_membership(ideal: &MonomialIdeal, v: &Monomial) -> Result<NewtonMembership> {
    nonzero(ideal)?;
    ideal.ring().check_dim(v)?;
    if let Some(i) = ideal.generators().iter().position(|g| g.divides_unchecked(v)) {
        let mut lambda = vec![BigRational::from_integer(0.into()); ideal.len()];
        lambda[i] = BigRational::from_integer(1.into());
        return Ok(NewtonMembership::Inside(lambda));
    }
    let gens = gen_slices(ideal);
    Ok(match newton_feasibility(&gens, v.exponents()) {
        Feasibility::Inside(lambda) => {
            assert!(check_inside(&gens, v.exponents(), &lambda), "simplex returned an infeasible point");
            NewtonMembership::Inside(lambda)
        }
        Feasibility::Outside(cut) => {
            assert!(check_outside(&gens, v.exponents(), &cut), "simplex returned an invalid cut");
            NewtonMembership::Outside(cut)
        }
    })
}

pub fn np_member(ideal: &MonomialIdeal, v: &Monomial) -> Result<bool> {
    Ok(matches!(np_membership(ideal, v)?, NewtonMembership::Inside(_)))
}

/// Does `(x^v)^n` lie in `I^n`? Searches for non-negative integers `mu_i`
/// with `sum mu_i = n` and `sum mu_i gamma_i <= n v`, which is exactly
/// membership of `x^{nv}` in the ideal generated by products of `n`
/// generators.
pub fn power_membership_oracle(ideal: &MonomialIdeal, v: &Monomial, n: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::ZeroPower);
    }
    ideal.ring().check_dim(v)?;
    if ideal.is_zero() {
        return Ok(false);
    }
    let target = v.pow(n)?;
    let gens = gen_slices(ideal);
    let dim = v.nvars();
    // suffix_min[i][j] = min over generators i.. of gamma_j
    let mut suffix_min = vec![vec![u64::MAX; dim]; gens.len() + 1];
    for i in (0..gens.len()).rev() {
        for j in 0..dim {
            suffix_min[i][j] = suffix_min[i + 1][j].min(gens[i][j]);
        }
    }
    let mut residual = target.into_exponents();
    let mut dead = HashSet::new();
    Ok(compose(&gens, &suffix_min, 0, n, &mut residual, &mut dead))
}

fn compose(
    gens: &[&[u64]],
    suffix_min: &[Vec<u64>],
    idx: usize,
    remaining: u64,
    residual: &mut Vec<u64>,
    dead: &mut HashSet<(usize, u64, Vec<u64>)>,
) -> bool {
    if remaining == 0 {
        return true;
    }
    if idx == gens.len() {
        return false;
    }
    let fits = suffix_min[idx]
        .iter()
        .zip(residual.iter())
        .all(|(&m, &r)| m.checked_mul(remaining).is_some_and(|need| need <= r));
    if !fits {
        return false;
    }
    let key = (idx, remaining, residual.clone());
    if dead.contains(&key) {
        return false;
    }
    let g = gens[idx];
    let most = g
        .iter()
        .zip(residual.iter())
        .filter(|(&c, _)| c > 0)
        .map(|(&c, &r)| r / c)
        .min()
        .unwrap_or(u64::MAX)
        .min(remaining);
    for mu in (0..=most).rev() {
        for (r, &c) in residual.iter_mut().zip(g) {
            *r -= mu * c;
        }
        let ok = compose(gens, suffix_min, idx + 1, remaining - mu, residual, dead);
        for (r, &c) in residual.iter_mut().zip(g) {
            *r += mu * c;
        }
        if ok {
            return true;
        }
    }
    dead.insert(key);
    false
}

/// Evidence that a monomial outside `I` is integral over `I`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureCertificate {
    pub monomial: Monomial,
    /// Convex weights on the ideal's generators.
    pub lambda: Vec<BigRational>,
    /// Common denominator of `lambda`; `monomial^N` lies in `I^N`.
    pub oracle_n: u64,
}

impl ClosureCertificate {
    /// Check `lambda` exactly and replay the oracle at `N`.
    pub fn replay(&self, ideal: &MonomialIdeal) -> std::result::Result<(), String> {
        let gens = gen_slices(ideal);
        if ideal.ring().check_dim(&self.monomial).is_err() {
            return Err("certificate monomial has the wrong dimension".into());
        }
        if !check_inside(&gens, self.monomial.exponents(), &self.lambda) {
            return Err(format!(
                "{:?}: lambda is not a feasible convex combination",
                self.monomial.exponents()
            ));
        }
        if common_denominator(&self.lambda).to_u64() != Some(self.oracle_n) {
            return Err(format!(
                "{:?}: N = {} is not the common denominator of lambda",
                self.monomial.exponents(),
                self.oracle_n
            ));
        }
        match power_membership_oracle(ideal, &self.monomial, self.oracle_n) {
            Ok(true) => Ok(()),
            Ok(false) => Err(format!(
                "{:?}: oracle rejects membership at N = {}",
                self.monomial.exponents(),
                self.oracle_n
            )),
            Err(e) => Err(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureReport {
    pub ideal: MonomialIdeal,
    pub closure: MonomialIdeal,
    /// Minimal generators of the closure that are not in the ideal.
    pub added: Vec<Monomial>,
    pub integrally_closed: bool,
    /// One per element of `added`, same order.
    pub certificates: Vec<ClosureCertificate>,
}

/// Integral closure of a non-zero monomial ideal.
///
/// Every minimal generator of the closure lies in the box bounded by the
/// per-coordinate maxima of the generators: a point beyond the box in
/// coordinate `j` stays in the polyhedron after lowering `v_j` by one. The
/// box is swept in increasing index order; membership is upward closed, so
/// a point only needs an LP when none of its immediate predecessors is
/// inside and it is not in `I`. Separating hyperplanes from failed LPs are
/// cached and tried first.
pub fn integral_closure(ideal: &MonomialIdeal) -> Result<ClosureReport> {
    nonzero(ideal)?;
    let ring = ideal.ring();
    let n = ring.nvars();
    let gens = gen_slices(ideal);
    let bounds: Vec<u64> = (0..n)
        .map(|j| gens.iter().map(|g| g[j]).max().unwrap_or(0))
        .collect();
    let mut strides = vec![1usize; n];
    let mut size = 1usize;
    for j in (0..n).rev() {
        strides[j] = size;
        size = (bounds[j] as usize + 1)
            .checked_mul(size)
            .ok_or(Error::Overflow("closure box size"))?;
    }
    let generator_set: HashSet<&[u64]> = gens.iter().copied().collect();
    let mut in_ideal = vec![false; size];
    let mut in_closure = vec![false; size];
    let mut cuts: Vec<IntCut> = Vec::new();
    let mut minimal: Vec<Monomial> = Vec::new();
    let mut certificates = Vec::new();

    // Row-major with the last coordinate fastest: predecessors come first.
    let mut v = vec![0u64; n];
    for idx in 0..size {
        let preds = (0..n).filter(|&j| v[j] > 0).map(|j| idx - strides[j]);
        let (mut pred_ideal, mut pred_closure) = (false, false);
        for p in preds {
            pred_ideal |= in_ideal[p];
            pred_closure |= in_closure[p];
        }
        in_ideal[idx] = pred_ideal || generator_set.contains(v.as_slice());
        if pred_closure {
            in_closure[idx] = true;
        } else if in_ideal[idx] {
            in_closure[idx] = true;
            minimal.push(Monomial::new(v.clone()));
        } else if !cuts.iter().any(|c| c.separates(&v)) {
            match newton_feasibility(&gens, &v) {
                Feasibility::Inside(lambda) => {
                    assert!(check_inside(&gens, &v, &lambda), "simplex returned an infeasible point");
                    let den = common_denominator(&lambda);
                    let oracle_n = den.to_u64().ok_or(Error::Overflow("certificate denominator"))?;
                    let mono = Monomial::new(v.clone());
                    if !power_membership_oracle(ideal, &mono, oracle_n)? {
                        return Err(Error::InvalidArgument(format!(
                            "oracle disagrees with the polyhedron at {v:?}, N = {oracle_n}"
                        )));
                    }
                    in_closure[idx] = true;
                    minimal.push(mono.clone());
                    certificates.push(ClosureCertificate {
                        monomial: mono,
                        lambda,
                        oracle_n,
                    });
                }
                Feasibility::Outside(cut) => {
                    assert!(check_outside(&gens, &v, &cut), "simplex returned an invalid cut");
                    cuts.push(cut.to_integer());
                }
            }
        }
        for j in (0..n).rev() {
            if v[j] < bounds[j] {
                v[j] += 1;
                break;
            }
            v[j] = 0;
        }
    }

    canonical_sort(&mut minimal);
    let closure = MonomialIdeal::from_canonical(ring.clone(), minimal);
    let mut added: Vec<Monomial> = certificates.iter().map(|c| c.monomial.clone()).collect();
    canonical_sort(&mut added);
    certificates.sort_by(|a, b| b.monomial.cmp(&a.monomial));
    let integrally_closed = added.is_empty();
    Ok(ClosureReport {
        ideal: ideal.clone(),
        closure,
        added,
        integrally_closed,
        certificates,
    })
}

pub fn is_integrally_closed(ideal: &MonomialIdeal) -> Result<bool> {
    Ok(integral_closure(ideal)?.integrally_closed)
}

impl ClosureReport {
    /// Replay a report: recompute the closure, compare, and run every
    /// certificate through the oracle. Returns the list of violations.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let fresh = match integral_closure(&self.ideal) {
            Ok(r) => r,
            Err(e) => return vec![e.to_string()],
        };
        if fresh.closure != self.closure {
            out.push("closure generators do not match the recomputed closure".into());
        }
        if fresh.added != self.added {
            out.push("added generators do not match the recomputed closure".into());
        }
        if self.integrally_closed != self.added.is_empty() {
            out.push("integrally_closed flag is inconsistent with added".into());
        }
        let certified: Vec<&Monomial> = self.certificates.iter().map(|c| &c.monomial).collect();
        if certified.len() != self.added.len() || certified.iter().zip(&self.added).any(|(a, b)| *a != b) {
            out.push("certificates do not cover exactly the added generators".into());
        }
        for c in &self.certificates {
            if self.ideal.contains_unchecked(&c.monomial) {
                out.push(format!("{:?} is already in the ideal", c.monomial.exponents()));
            }
            if let Err(e) = c.replay(&self.ideal) {
                out.push(e);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::truncation_ideal;
    use crate::ring::WeightSystem;

    fn ideal(w: &[u64], gens: &[&[u64]]) -> MonomialIdeal {
        let w = WeightSystem::from_slice(w).unwrap();
        MonomialIdeal::minimalize(&w, gens.iter().map(|g| Monomial::new(g.to_vec())).collect()).unwrap()
    }

    fn cube_of_r7() -> MonomialIdeal {
        let w = WeightSystem::from_slice(&[2, 3]).unwrap();
        truncation_ideal(&w, 7).unwrap().power(3).unwrap()
    }

    #[test]
    fn np_member_examples() {
        let cube = cube_of_r7();
        assert!(!np_member(&cube, &[11, 0].into()).unwrap());
        for g in cube.generators() {
            assert!(np_member(&cube, g).unwrap());
        }
        let i = ideal(&[1, 1], &[&[2, 0], &[0, 2]]);
        assert!(np_member(&i, &[1, 1].into()).unwrap());
    }

    #[test]
    fn np_member_errors() {
        let w = WeightSystem::from_slice(&[1, 1]).unwrap();
        assert_eq!(np_member(&MonomialIdeal::zero(&w), &[1, 1].into()), Err(Error::ZeroIdeal));
        let i = ideal(&[1, 1], &[&[2, 0]]);
        assert!(np_member(&i, &[1, 1, 1].into()).is_err());
    }

    #[test]
    fn oracle_examples() {
        let i = ideal(&[1, 1], &[&[2, 0], &[0, 2]]);
        assert!(power_membership_oracle(&i, &[1, 1].into(), 2).unwrap());
        assert!(!power_membership_oracle(&i, &[1, 1].into(), 1).unwrap());
        assert!(!power_membership_oracle(&i, &[1, 1].into(), 3).unwrap());
        let cube = cube_of_r7();
        for n in 1..=6 {
            assert!(!power_membership_oracle(&cube, &[11, 0].into(), n).unwrap());
        }
        for g in cube.generators() {
            assert!(power_membership_oracle(&cube, g, 1).unwrap());
        }
        assert_eq!(power_membership_oracle(&i, &[1, 1].into(), 0), Err(Error::ZeroPower));
    }

    #[test]
    fn closure_of_two_squares() {
        let i = ideal(&[1, 1], &[&[2, 0], &[0, 2]]);
        let r = integral_closure(&i).unwrap();
        assert_eq!(r.added, vec![Monomial::from([1, 1])]);
        assert_eq!(r.closure.generators(), &[[2, 0].into(), [1, 1].into(), [0, 2].into()]);
        assert!(!r.integrally_closed);
        assert_eq!(r.certificates[0].oracle_n, 2);
        assert!(r.violations().is_empty());
        assert!(!is_integrally_closed(&i).unwrap());
    }

    #[test]
    fn cube_of_r7_is_closed() {
        let cube = cube_of_r7();
        let r = integral_closure(&cube).unwrap();
        assert!(r.integrally_closed);
        assert_eq!(r.closure, cube);
        let w = WeightSystem::from_slice(&[2, 3]).unwrap();
        assert!(!r.closure.equals(&truncation_ideal(&w, 21).unwrap()).unwrap());
    }

    #[test]
    fn unit_and_principal_ideals() {
        let w = WeightSystem::from_slice(&[1, 1]).unwrap();
        let u = MonomialIdeal::unit(&w);
        assert_eq!(integral_closure(&u).unwrap().closure, u);
        assert!(is_integrally_closed(&ideal(&[1, 1], &[&[3, 1]])).unwrap());
        assert_eq!(integral_closure(&MonomialIdeal::zero(&w)), Err(Error::ZeroIdeal));
    }

    #[test]
    fn example_one_truncation_is_closed() {
        let w = WeightSystem::from_slice(&[15, 10, 6]).unwrap();
        assert!(is_integrally_closed(&truncation_ideal(&w, 60).unwrap()).unwrap());
    }

    #[test]
    fn closure_is_idempotent_and_extensive() {
        let cases: &[&[&[u64]]] = &[
            &[&[4, 0], &[0, 3]],
            &[&[5, 0, 0], &[0, 5, 0], &[0, 0, 5]],
            &[&[3, 0, 1], &[0, 2, 0], &[1, 1, 3]],
            &[&[6, 1], &[1, 6]],
        ];
        for gens in cases {
            let n = gens[0].len();
            let i = ideal(&vec![1; n], gens);
            let r = integral_closure(&i).unwrap();
            assert!(r.closure.contains_ideal(&i).unwrap());
            assert!(is_integrally_closed(&r.closure).unwrap());
            assert!(r.violations().is_empty());
        }
    }

    #[test]
    fn tampered_report_is_rejected() {
        let i = ideal(&[1, 1], &[&[2, 0], &[0, 2]]);
        let mut r = integral_closure(&i).unwrap();
        r.certificates[0].oracle_n = 3;
        assert!(!r.violations().is_empty());
        let mut r = integral_closure(&i).unwrap();
        r.integrally_closed = true;
        assert!(!r.violations().is_empty());
    }
}
