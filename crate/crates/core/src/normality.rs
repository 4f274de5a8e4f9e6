//! Normality of `R_{>=mA}`: the threshold `mA`, checking
//! `(R_{>=alpha})^p = R_{>=p*alpha}`, and explicit factorization
//! certificates for every generator of `R_{>=pmA}`.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ideal::{truncation_ideal, MonomialIdeal};
use crate::ring::{Monomial, WeightSystem};

/// The degree `mA` for a ring with variables `X_0..X_m` and `A` the lcm of
/// the weights.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalityThreshold {
    pub ring: WeightSystem,
    pub m: u64,
    pub lcm_weight: u64,
    pub threshold: u64,
}

impl NormalityThreshold {
    /// `p * m * A`, the degree of the truncation that should equal `I^p`.
    pub fn target(&self, p: u64) -> Result<u64> {
        p.checked_mul(self.threshold)
            .ok_or(Error::Overflow("power target degree"))
    }
}

pub fn normal_threshold(w: &WeightSystem) -> Result<NormalityThreshold> {
    if w.nvars() < 2 {
        return Err(Error::TooFewVariables);
    }
    let m = w.m() as u64;
    let threshold = m
        .checked_mul(w.lcm_weight())
        .ok_or(Error::Overflow("normality threshold"))?;
    Ok(NormalityThreshold {
        ring: w.clone(),
        m,
        lcm_weight: w.lcm_weight(),
        threshold,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PowerVerdict {
    Equal,
    /// A minimal generator of `R_{>=p*alpha}` that is not in `(R_{>=alpha})^p`.
    Counterexample(Monomial),
}

impl PowerVerdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, PowerVerdict::Equal)
    }
}

/// Walks `p = 1, 2, ..` comparing `I^p` with `R_{>=p*alpha}` for
/// `I = R_{>=alpha}`.
///
/// `I^p` is never materialized. Since `I^p` is always contained in
/// `R_{>=p*alpha}`, equality holds iff every minimal generator `u` of the
/// truncation lies in `I^p`. Membership is decided exactly: `u` is in `I^p`
/// iff some `g` in `I` divides `u` with `u/g` in `I^{p-1}`. When the previous
/// level was already equal, `I^{p-1}` is a degree test and the search
/// collapses to finding a divisor `g` of `u` with
/// `alpha <= deg g <= deg u - (p-1)*alpha`.
pub struct TruncationPowers {
    ring: WeightSystem,
    alpha: u64,
    base: MonomialIdeal,
    /// `equal[t-1]` is the verdict for `I^t`.
    equal: Vec<bool>,
    memo: HashMap<(Monomial, u64), bool>,
}

impl TruncationPowers {
    pub fn new(w: &WeightSystem, alpha: u64) -> Result<Self> {
        if alpha == 0 {
            return Err(Error::InvalidArgument("alpha must be at least 1".into()));
        }
        Ok(Self {
            ring: w.clone(),
            alpha,
            base: truncation_ideal(w, alpha)?,
            equal: Vec::new(),
            memo: HashMap::new(),
        })
    }

    pub fn base(&self) -> &MonomialIdeal {
        &self.base
    }

    /// Number of levels decided so far.
    pub fn levels(&self) -> u64 {
        self.equal.len() as u64
    }

    /// Decide the next power level. Returns the verdict together with the
    /// truncation ideal it was compared against.
    pub fn next_level(&mut self) -> Result<(PowerVerdict, MonomialIdeal)> {
        let p = self.levels() + 1;
        let target = p
            .checked_mul(self.alpha)
            .ok_or(Error::Overflow("power target degree"))?;
        let trunc = truncation_ideal(&self.ring, target)?;
        let verdict = if p == 1 {
            PowerVerdict::Equal
        } else if self.equal[p as usize - 2] {
            let (ring, alpha) = (&self.ring, self.alpha);
            let missing = trunc
                .generators()
                .par_iter()
                .position_first(|u| !window_member(ring, alpha, u, p));
            match missing {
                Some(i) => PowerVerdict::Counterexample(trunc.generators()[i].clone()),
                None => PowerVerdict::Equal,
            }
        } else {
            let mut verdict = PowerVerdict::Equal;
            for u in trunc.generators() {
                if !self.member(u, p)? {
                    verdict = PowerVerdict::Counterexample(u.clone());
                    break;
                }
            }
            verdict
        };
        self.equal.push(verdict.is_equal());
        Ok((verdict, trunc))
    }

    /// Is `u` in `I^t`, for a level `t` whose predecessor has been decided?
    fn member(&mut self, u: &Monomial, t: u64) -> Result<bool> {
        let deg = self.ring.degree_of_exponents(u.exponents())?;
        if deg < t * self.alpha {
            return Ok(false);
        }
        if t == 1 {
            return Ok(true);
        }
        if self.equal[t as usize - 2] {
            return Ok(window_member(&self.ring, self.alpha, u, t));
        }
        if let Some(&hit) = self.memo.get(&(u.clone(), t)) {
            return Ok(hit);
        }
        let mut found = false;
        let gens: Vec<Monomial> = self
            .base
            .generators()
            .iter()
            .filter(|g| g.divides_unchecked(u))
            .cloned()
            .collect();
        for g in gens {
            let rest = g.divides(u)?.expect("filtered divisor");
            if self.member(&rest, t - 1)? {
                found = true;
                break;
            }
        }
        self.memo.insert((u.clone(), t), found);
        Ok(found)
    }
}

/// `u` in `I^t` given `I^{t-1} = R_{>=(t-1)alpha}`: look for a divisor `g`
/// of `u` with `alpha <= deg g <= deg u - (t-1)*alpha`.
fn window_member(w: &WeightSystem, alpha: u64, u: &Monomial, t: u64) -> bool {
    let Ok(deg) = w.degree_of_exponents(u.exponents()) else {
        return false;
    };
    let Some(hi) = (t - 1).checked_mul(alpha).and_then(|r| deg.checked_sub(r)) else {
        return false;
    };
    if hi < alpha {
        return false;
    }
    // suffix[i] = degree of u restricted to variables i..
    let n = w.nvars();
    let mut suffix = vec![0u64; n + 1];
    for i in (0..n).rev() {
        suffix[i] = suffix[i + 1] + u.exponents()[i] * w.weight(i);
    }
    divisor_in_window(w, u.exponents(), &suffix, 0, 0, alpha, hi)
}

fn divisor_in_window(
    w: &WeightSystem,
    u: &[u64],
    suffix: &[u64],
    i: usize,
    partial: u64,
    lo: u64,
    hi: u64,
) -> bool {
    let a = w.weight(i);
    if i + 1 == u.len() {
        let need = lo.saturating_sub(partial).div_ceil(a);
        return need <= u[i] && partial + need * a <= hi;
    }
    for c in 0..=u[i] {
        let deg = partial + c * a;
        if deg > hi {
            break;
        }
        if deg + suffix[i + 1] < lo {
            continue;
        }
        if divisor_in_window(w, u, suffix, i + 1, deg, lo, hi) {
            return true;
        }
    }
    false
}

/// Compare `(R_{>=alpha})^p` with `R_{>=p*alpha}`; on inequality, return the
/// canonically first generator of the truncation missing from the power.
pub fn verify_truncation_power(w: &WeightSystem, alpha: u64, p: u64) -> Result<PowerVerdict> {
    if p == 0 {
        return Err(Error::ZeroPower);
    }
    let mut walk = TruncationPowers::new(w, alpha)?;
    loop {
        let (verdict, _) = walk.next_level()?;
        if walk.levels() == p {
            return Ok(verdict);
        }
    }
}

/// A monomial written as a product of `p` factors, each of weighted degree
/// at least `mA`. Such a factorization shows the monomial lies in
/// `(R_{>=mA})^p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationCertificate {
    pub ring: WeightSystem,
    pub input: Monomial,
    pub p: u64,
    pub factors: Vec<Monomial>,
}

impl FactorizationCertificate {
    /// Check the certificate against `threshold`, using only exponent sums
    /// and degrees.
    pub fn check(&self, threshold: u64) -> std::result::Result<(), String> {
        let name = |m: &Monomial| format!("{:?}", m.exponents());
        if self.factors.len() as u64 != self.p {
            return Err(format!(
                "{}: expected {} factors, found {}",
                name(&self.input),
                self.p,
                self.factors.len()
            ));
        }
        let mut sum = Monomial::one(self.ring.nvars());
        for f in &self.factors {
            let deg = self.ring.degree(f).map_err(|e| e.to_string())?.value();
            if deg < threshold {
                return Err(format!(
                    "{}: factor {} has degree {deg} < {threshold}",
                    name(&self.input),
                    name(f)
                ));
            }
            sum = sum.mul(f).map_err(|e| e.to_string())?;
        }
        if sum != self.input {
            return Err(format!(
                "{}: factors multiply to {}",
                name(&self.input),
                name(&sum)
            ));
        }
        Ok(())
    }
}

/// Split `mono` into `p` factors of degree at least `mA`.
///
/// Repeatedly peel off one factor of degree exactly `mA`: a pure power
/// `X_i^{m a_i}` when some `c_i >= m a_i`; otherwise, with
/// `k_i = floor(c_i / a_i)`, the degree bound forces `sum k_i >= m` and the
/// factor is `prod X_i^{s_i a_i}` with `s_i` chosen greedily in index order.
/// The last factor is whatever remains.
pub fn decompose(w: &WeightSystem, mono: &Monomial, p: u64) -> Result<FactorizationCertificate> {
    if p == 0 {
        return Err(Error::ZeroPower);
    }
    let th = normal_threshold(w)?;
    let degree = w.degree(mono)?.value();
    let required = th.target(p)?;
    if degree < required {
        return Err(Error::DegreeTooSmall { degree, required });
    }
    let m = th.m;
    let a = w.cofactors();
    let n = w.nvars();
    let mut rest = mono.exponents().to_vec();
    let mut factors = Vec::with_capacity(p as usize);
    for _ in 1..p {
        let mut piece = vec![0u64; n];
        if let Some(i) = (0..n).find(|&i| rest[i] >= m * a[i]) {
            piece[i] = m * a[i];
        } else {
            let k: Vec<u64> = (0..n).map(|i| rest[i] / a[i]).collect();
            if k.iter().sum::<u64>() < m {
                // Unreachable when deg(rest) >= 2mA.
                return Err(Error::CertificationFailed {
                    p,
                    reason: format!("counting bound failed for {:?}", rest),
                });
            }
            let mut left = m;
            for i in 0..n {
                let s = k[i].min(left);
                piece[i] = s * a[i];
                left -= s;
            }
        }
        for (r, q) in rest.iter_mut().zip(&piece) {
            *r -= q;
        }
        factors.push(Monomial::new(piece));
    }
    factors.push(Monomial::new(rest));
    Ok(FactorizationCertificate {
        ring: w.clone(),
        input: mono.clone(),
        p,
        factors,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerCertificate {
    pub p: u64,
    pub verdict: PowerVerdict,
    pub factorizations: Vec<FactorizationCertificate>,
}

/// Evidence that `R_{>=mA}` has `I^p = R_{>=pmA}` for `p = 1..=p_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalityCertificate {
    pub ring: WeightSystem,
    pub threshold: u64,
    pub powers: Vec<PowerCertificate>,
}

pub fn certify_normal(w: &WeightSystem, p_max: u64) -> Result<NormalityCertificate> {
    if p_max == 0 {
        return Err(Error::ZeroPower);
    }
    let th = normal_threshold(w)?;
    let mut walk = TruncationPowers::new(w, th.threshold)?;
    let mut powers = Vec::with_capacity(p_max as usize);
    for p in 1..=p_max {
        let (verdict, trunc) = walk.next_level()?;
        if let PowerVerdict::Counterexample(u) = &verdict {
            return Err(Error::CertificationFailed {
                p,
                reason: format!("{:?} is not in the power", u.exponents()),
            });
        }
        let factorizations = trunc
            .generators()
            .par_iter()
            .map(|g| decompose(w, g, p))
            .collect::<Result<Vec<_>>>()?;
        powers.push(PowerCertificate {
            p,
            verdict,
            factorizations,
        });
    }
    Ok(NormalityCertificate {
        ring: w.clone(),
        threshold: th.threshold,
        powers,
    })
}

impl NormalityCertificate {
    /// Replay the certificate: the threshold must be `mA`, each level must
    /// factor exactly the minimal generators of `R_{>=pmA}`, and every
    /// factorization must multiply out with factors of degree at least `mA`.
    /// Returns the list of violations (empty when valid).
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let th = match normal_threshold(&self.ring) {
            Ok(th) => th,
            Err(e) => return vec![e.to_string()],
        };
        if th.threshold != self.threshold {
            out.push(format!(
                "threshold {} differs from mA = {}",
                self.threshold, th.threshold
            ));
        }
        for (idx, level) in self.powers.iter().enumerate() {
            let p = level.p;
            if p != idx as u64 + 1 {
                out.push(format!("power levels out of sequence: found p = {p} at position {idx}"));
                continue;
            }
            if !level.verdict.is_equal() {
                out.push(format!("p = {p}: verdict is not equal"));
            }
            let trunc = match th.target(p).and_then(|d| truncation_ideal(&self.ring, d)) {
                Ok(t) => t,
                Err(e) => {
                    out.push(e.to_string());
                    continue;
                }
            };
            let inputs: Vec<&Monomial> = level.factorizations.iter().map(|f| &f.input).collect();
            if inputs.len() != trunc.len() || inputs.iter().zip(trunc.generators()).any(|(a, b)| *a != b) {
                out.push(format!(
                    "p = {p}: factorized monomials are not the minimal generators of R_>={}",
                    p * th.threshold
                ));
            }
            let bad: Vec<String> = level
                .factorizations
                .par_iter()
                .filter_map(|f| {
                    if f.p != p || f.ring != self.ring {
                        return Some(format!("p = {p}: factorization header mismatch"));
                    }
                    f.check(th.threshold).err().map(|e| format!("p = {p}: {e}"))
                })
                .collect();
            out.extend(bad);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::MonomialIdeal;

    fn ws(w: &[u64]) -> WeightSystem {
        WeightSystem::from_slice(w).unwrap()
    }

    #[test]
    fn threshold_examples() {
        assert_eq!(normal_threshold(&ws(&[15, 10, 6])).unwrap().threshold, 60);
        assert_eq!(normal_threshold(&ws(&[1, 1, 2])).unwrap().threshold, 4);
        let (a, b, c) = (2, 3, 5);
        let th = normal_threshold(&ws(&[b * c, a * c, a * b])).unwrap();
        assert_eq!(th.threshold, 2 * a * b * c);
        assert_eq!(th.target(3).unwrap(), 180);
        assert_eq!(normal_threshold(&ws(&[7])), Err(Error::TooFewVariables));
    }

    #[test]
    fn cube_of_r7_misses_x11() {
        let v = verify_truncation_power(&ws(&[2, 3]), 7, 3).unwrap();
        assert_eq!(v, PowerVerdict::Counterexample([11, 0].into()));
    }

    #[test]
    fn first_power_is_always_equal() {
        for (w, a) in [(vec![2, 3], 7), (vec![1, 5, 2], 9), (vec![4], 3)] {
            assert_eq!(verify_truncation_power(&ws(&w), a, 1).unwrap(), PowerVerdict::Equal);
        }
    }

    #[test]
    fn example_one_second_power() {
        assert_eq!(
            verify_truncation_power(&ws(&[15, 10, 6]), 60, 2).unwrap(),
            PowerVerdict::Equal
        );
    }

    #[test]
    fn argument_errors() {
        assert_eq!(verify_truncation_power(&ws(&[2, 3]), 7, 0), Err(Error::ZeroPower));
        assert!(verify_truncation_power(&ws(&[2, 3]), 0, 2).is_err());
        assert_eq!(
            decompose(&ws(&[2, 3]), &[1, 1].into(), 2),
            Err(Error::DegreeTooSmall { degree: 5, required: 12 })
        );
        assert_eq!(certify_normal(&ws(&[3]), 2).unwrap_err(), Error::TooFewVariables);
    }

    #[test]
    fn decompose_examples() {
        let w = ws(&[15, 10, 6]);
        let cert = decompose(&w, &[4, 6, 10].into(), 2).unwrap();
        assert_eq!(cert.factors, vec![[4, 0, 0].into(), [0, 6, 10].into()]);
        assert!(cert.check(60).is_ok());

        let cert = decompose(&w, &[1, 3, 3].into(), 1).unwrap();
        assert_eq!(cert.factors, vec![[1, 3, 3].into()]);

        let w = ws(&[2, 3]);
        let cert = decompose(&w, &[3, 2].into(), 2).unwrap();
        assert_eq!(cert.factors, vec![[3, 0].into(), [0, 2].into()]);
    }

    #[test]
    fn decompose_uses_greedy_split() {
        // weights (15,10,6): a = (2,3,5), m = 2. c = (3,5,9) has no c_i >= m a_i,
        // k = (1,1,1) so s = (1,1,0) and the first factor is x^2 y^3.
        let w = ws(&[15, 10, 6]);
        let cert = decompose(&w, &[3, 5, 9].into(), 2).unwrap();
        assert_eq!(cert.factors[0], [2, 3, 0].into());
        assert!(cert.check(60).is_ok());
    }

    #[test]
    fn tampered_factorization_fails_check() {
        let w = ws(&[2, 3]);
        let mut cert = decompose(&w, &[3, 2].into(), 2).unwrap();
        cert.factors[1] = [0, 3].into();
        assert!(cert.check(6).is_err());
        let mut cert = decompose(&w, &[3, 2].into(), 2).unwrap();
        cert.factors = vec![[3, 2].into()];
        assert!(cert.check(6).is_err());
    }

    #[test]
    fn certificates_replay() {
        for w in [vec![15, 10, 6], vec![1, 1], vec![2, 3]] {
            let cert = certify_normal(&ws(&w), 3).unwrap();
            assert_eq!(cert.powers.len(), 3);
            assert!(cert.violations().is_empty());
        }
        let mut cert = certify_normal(&ws(&[2, 3]), 2).unwrap();
        cert.threshold = 7;
        assert!(!cert.violations().is_empty());
        let mut cert = certify_normal(&ws(&[2, 3]), 2).unwrap();
        cert.powers[1].factorizations.pop();
        assert!(!cert.violations().is_empty());
    }

    /// Brute force: compare the materialized power with the truncation on
    /// every monomial of a box large enough to hold all their generators.
    fn brute_force_equal(w: &WeightSystem, alpha: u64, p: u64) -> bool {
        let power = truncation_ideal(w, alpha).unwrap().power(p).unwrap();
        let bound = (p * alpha) / w.weights().iter().min().unwrap() + 2;
        let n = w.nvars();
        let mut e = vec![0u64; n];
        loop {
            let m = Monomial::new(e.clone());
            let in_trunc = w.degree(&m).unwrap().value() >= p * alpha;
            if in_trunc != power.contains(&m).unwrap() {
                return false;
            }
            let mut k = 0;
            loop {
                if k == n {
                    return true;
                }
                if e[k] < bound {
                    e[k] += 1;
                    break;
                }
                e[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn verdicts_agree_with_materialized_powers() {
        let cases: &[(&[u64], u64, u64)] = &[
            (&[2, 3], 7, 2),
            (&[2, 3], 7, 3),
            (&[2, 3], 6, 3),
            (&[2, 3], 5, 2),
            (&[1, 2], 3, 3),
            (&[1, 1, 2], 4, 2),
            (&[1, 2, 3], 5, 2),
            (&[2, 3, 5], 7, 2),
            (&[3, 4], 5, 3),
        ];
        for &(w, alpha, p) in cases {
            let w = ws(w);
            let fast = verify_truncation_power(&w, alpha, p).unwrap();
            assert_eq!(fast.is_equal(), brute_force_equal(&w, alpha, p), "{w:?} {alpha} {p}");
            let slow = truncation_ideal(&w, alpha).unwrap().power(p).unwrap();
            let trunc = truncation_ideal(&w, p * alpha).unwrap();
            assert_eq!(fast.is_equal(), slow.equals(&trunc).unwrap());
            if let PowerVerdict::Counterexample(u) = fast {
                let first_missing = trunc
                    .generators()
                    .iter()
                    .find(|g| !slow.contains(g).unwrap())
                    .unwrap();
                assert_eq!(&u, first_missing);
            }
        }
    }

    #[test]
    fn power_contained_in_truncation() {
        for w in [vec![2, 3], vec![1, 4], vec![2, 2, 3]] {
            let w = ws(&w);
            for alpha in 1..9 {
                for p in 1..4 {
                    let power = truncation_ideal(&w, alpha).unwrap().power(p).unwrap();
                    let trunc = truncation_ideal(&w, p * alpha).unwrap();
                    assert!(trunc.contains_ideal(&power).unwrap());
                }
            }
        }
    }

    #[test]
    fn counting_bound_on_small_boxes() {
        // deg >= 2mA and every c_i < m a_i  ==>  sum floor(c_i / a_i) >= m
        for w in [vec![2, 3], vec![1, 2, 3], vec![4, 6], vec![2, 3, 5], vec![1, 1, 4]] {
            let w = ws(&w);
            let th = normal_threshold(&w).unwrap();
            let a = w.cofactors();
            let n = w.nvars();
            let mut e = vec![0u64; n];
            loop {
                let deg = w.degree_of_exponents(&e).unwrap();
                let below = (0..n).all(|i| e[i] < th.m * a[i]);
                if below && deg >= 2 * th.threshold {
                    let k: u64 = (0..n).map(|i| e[i] / a[i]).sum();
                    assert!(k >= th.m, "{w:?} {e:?}");
                }
                let mut k = 0;
                loop {
                    if k == n {
                        break;
                    }
                    if e[k] + 1 < th.m * a[k] {
                        e[k] += 1;
                        break;
                    }
                    e[k] = 0;
                    k += 1;
                }
                if k == n {
                    break;
                }
            }
        }
    }

    #[test]
    fn decomposition_implies_equality() {
        for w in [vec![2, 3], vec![1, 1, 2], vec![3, 4, 5]] {
            let w = ws(&w);
            let th = normal_threshold(&w).unwrap();
            for p in 1..4 {
                let trunc = truncation_ideal(&w, th.target(p).unwrap()).unwrap();
                let all = trunc
                    .generators()
                    .iter()
                    .all(|g| decompose(&w, g, p).unwrap().check(th.threshold).is_ok());
                assert!(all);
                assert_eq!(
                    verify_truncation_power(&w, th.threshold, p).unwrap(),
                    PowerVerdict::Equal
                );
            }
        }
    }

    #[test]
    fn base_ideal_is_exposed() {
        let walk = TruncationPowers::new(&ws(&[2, 3]), 7).unwrap();
        let expected =
            MonomialIdeal::minimalize(walk.base().ring(), vec![[4, 0].into(), [2, 1].into(), [1, 2].into(), [0, 3].into()])
                .unwrap();
        assert_eq!(walk.base(), &expected);
    }
}
