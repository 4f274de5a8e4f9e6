//! Exact rational feasibility for Newton-polyhedron membership.
//!
//! Decides whether `v` lies in `conv(gamma_1..gamma_k) + R^n_{>=0}`, i.e.
//! whether some `lambda >= 0` with `sum lambda = 1` has
//! `sum lambda_i gamma_i <= v`. The system
//!
//! ```text
//!   sum_i gamma_ij lambda_i + s_j = v_j      (j = 1..n)
//!   sum_i lambda_i            + t   = 1
//! ```
//!
//! is solved by a phase-1 simplex minimizing the artificial `t`, starting
//! from the basis `{s_1..s_n, t}`. Bland's rule keeps it finite. When the
//! optimum is positive, the simplex multipliers give a hyperplane
//! `<w, x> >= b` with `w >= 0` that holds on every generator but not on `v`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    /// Convex weights on the generators, one per generator.
    Inside(Vec<BigRational>),
    /// `<normal, gamma_i> >= offset` for all generators, `<normal, v> < offset`.
    Outside(Cut),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cut {
    pub normal: Vec<BigRational>,
    pub offset: BigRational,
}

impl Cut {
    /// Scale to an integer cut `<w, x> >= b`.
    pub fn to_integer(&self) -> IntCut {
        let mut den = BigInt::one();
        for q in self.normal.iter().chain(std::iter::once(&self.offset)) {
            den = num_integer::Integer::lcm(&den, q.denom());
        }
        let scale = |q: &BigRational| (q * BigRational::from_integer(den.clone())).to_integer();
        IntCut {
            normal: self.normal.iter().map(scale).collect(),
            offset: scale(&self.offset),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntCut {
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
}

impl IntCut {
    pub fn separates(&self, v: &[u64]) -> bool {
        let lhs: BigInt = self
            .normal
            .iter()
            .zip(v)
            .map(|(w, &x)| w * BigInt::from(x))
            .sum();
        lhs < self.offset
    }
}

fn q(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Decide membership of `v` in the Newton polyhedron of `gens`.
/// `gens` must be non-empty and all of dimension `v.len()`.
pub fn newton_feasibility(gens: &[&[u64]], v: &[u64]) -> Feasibility {
    let k = gens.len();
    let n = v.len();
    assert!(k > 0, "newton_feasibility needs at least one generator");
    let rows = n + 1;
    // columns: lambda (k), slacks (n), artificial (1), rhs
    let cols = k + n + 1;
    let art = k + n;
    let mut tab: Vec<Vec<BigRational>> = Vec::with_capacity(rows);
    for j in 0..n {
        let mut row = vec![BigRational::zero(); cols + 1];
        for (i, g) in gens.iter().enumerate() {
            row[i] = q(g[j]);
        }
        row[k + j] = BigRational::one();
        row[cols] = q(v[j]);
        tab.push(row);
    }
    let mut sum_row = vec![BigRational::zero(); cols + 1];
    for x in sum_row.iter_mut().take(k) {
        *x = BigRational::one();
    }
    sum_row[art] = BigRational::one();
    sum_row[cols] = BigRational::one();
    tab.push(sum_row);
    let mut basis: Vec<usize> = (k..k + n).chain(std::iter::once(art)).collect();

    // Reduced costs for min t; obj[cols] holds -z.
    let mut obj = vec![BigRational::zero(); cols + 1];
    for c in &mut obj[..k] {
        *c = -BigRational::one();
    }
    obj[cols] = -BigRational::one();

    while let Some(enter) = (0..cols).find(|&j| obj[j].is_negative()) {
        let mut leave: Option<(usize, BigRational)> = None;
        for r in 0..rows {
            let a = &tab[r][enter];
            if !a.is_positive() {
                continue;
            }
            let ratio = &tab[r][cols] / a;
            let better = match &leave {
                None => true,
                Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
            };
            if better {
                leave = Some((r, ratio));
            }
        }
        // Phase 1 is bounded below by zero.
        let (r, _) = leave.expect("phase-1 objective is bounded");
        pivot(&mut tab, &mut obj, r, enter);
        basis[r] = enter;
    }

    let z = -obj[cols].clone();
    if z.is_zero() {
        let mut lambda = vec![BigRational::zero(); k];
        for (r, &b) in basis.iter().enumerate() {
            if b < k {
                lambda[b] = tab[r][cols].clone();
            }
        }
        Feasibility::Inside(lambda)
    } else {
        // y_j = -rc(s_j), y_0 = 1 - rc(t); w = -y_j, b = y_0.
        let normal = (0..n).map(|j| obj[k + j].clone()).collect();
        let offset = BigRational::one() - obj[art].clone();
        Feasibility::Outside(Cut { normal, offset })
    }
}

fn pivot(tab: &mut [Vec<BigRational>], obj: &mut [BigRational], r: usize, c: usize) {
    let p = tab[r][c].clone();
    for x in tab[r].iter_mut() {
        *x = &*x / &p;
    }
    let prow = tab[r].clone();
    for (i, row) in tab.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
            continue;
        }
        let f = row[c].clone();
        for (x, y) in row.iter_mut().zip(&prow) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
    }
    if !obj[c].is_zero() {
        let f = obj[c].clone();
        for (x, y) in obj.iter_mut().zip(&prow) {
            if !y.is_zero() {
                *x -= &f * y;
            }
        }
    }
}

/// Exact check that `lambda` is a convex combination with
/// `sum lambda_i gamma_i <= v`.
pub fn check_inside(gens: &[&[u64]], v: &[u64], lambda: &[BigRational]) -> bool {
    if lambda.len() != gens.len() || lambda.iter().any(|l| l.is_negative()) {
        return false;
    }
    if lambda.iter().sum::<BigRational>() != BigRational::one() {
        return false;
    }
    (0..v.len()).all(|j| {
        let lhs: BigRational = gens.iter().zip(lambda).map(|(g, l)| l * q(g[j])).sum();
        lhs <= q(v[j])
    })
}

/// Exact check that `cut` is valid on the polyhedron and excludes `v`.
pub fn check_outside(gens: &[&[u64]], v: &[u64], cut: &Cut) -> bool {
    if cut.normal.iter().any(|w| w.is_negative()) {
        return false;
    }
    let eval = |x: &[u64]| -> BigRational { cut.normal.iter().zip(x).map(|(w, &c)| w * q(c)).sum() };
    gens.iter().all(|g| eval(g) >= cut.offset) && eval(v) < cut.offset
}

/// Least common multiple of the denominators of `lambda`.
pub fn common_denominator(lambda: &[BigRational]) -> BigInt {
    lambda.iter().fold(BigInt::one(), |acc, l| {
        num_integer::Integer::lcm(&acc, l.denom())
    })
}
