//! Independent oracles: dense exact linear algebra and hand-rolled Fox calculus,
//! sharing nothing with the library beyond plain integer data.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Rank by plain Gaussian elimination over Q.
pub fn rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        let pivot = m[r][c].clone();
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = &m[i][c] / &pivot;
                for j in c..cols {
                    let v = &m[r][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Determinant by elimination over Q.
pub fn det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut d = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            m.swap(p, c);
            d = -d;
        }
        d *= &m[c][c];
        for i in c + 1..n {
            let f = &m[i][c] / &m[c][c];
            for j in c..n {
                let v = &m[c][j] * &f;
                m[i][j] -= v;
            }
        }
    }
    d
}

/// Fox derivative of a word with respect to generator `g` (1-based), as
/// `(coefficient, prefix word)` terms, prefixes freely reduced.
pub fn fox(word: &[i32], g: i32) -> Vec<(i64, Vec<i32>)> {
    let mut out = Vec::new();
    let mut prefix: Vec<i32> = Vec::new();
    for &l in word {
        if l == g {
            out.push((1, prefix.clone()));
        }
        if l == -g {
            let mut p = prefix.clone();
            push_reduced(&mut p, l);
            out.push((-1, p));
        }
        push_reduced(&mut prefix, l);
    }
    out
}

fn push_reduced(w: &mut Vec<i32>, l: i32) {
    if w.last() == Some(&-l) {
        w.pop();
    } else {
        w.push(l);
    }
}

fn exp_sum(w: &[i32], phi: &[i64]) -> i64 {
    w.iter()
        .map(|&l| phi[l.unsigned_abs() as usize - 1] * l.signum() as i64)
        .sum()
}

/// Betti numbers over Q of the k-fold cyclic cover along `phi` of the
/// presentation complex `<gens | relators>`, by explicit dense matrices.
pub fn cyclic_cover_betti(gens: usize, relators: &[Vec<i32>], phi: &[i64], k: usize) -> Vec<usize> {
    let kk = k as i64;
    let shift = |p: usize, s: i64| ((p as i64 + s).rem_euclid(kk)) as usize;
    // column (j, p) of ∂1: edge j at sheet p runs from p to p + phi(x_j)
    let mut d1 = vec![vec![q(0); gens * k]; k];
    for j in 0..gens {
        for p in 0..k {
            d1[shift(p, phi[j])][j * k + p] += q(1);
            d1[p][j * k + p] -= q(1);
        }
    }
    let mut d2 = vec![vec![q(0); relators.len() * k]; gens * k];
    for (f, r) in relators.iter().enumerate() {
        for j in 0..gens {
            for (c, w) in fox(r, j as i32 + 1) {
                for p in 0..k {
                    d2[j * k + shift(p, exp_sum(&w, phi))][f * k + p] += q(c);
                }
            }
        }
    }
    let r1 = rank(d1);
    let r2 = if relators.is_empty() { 0 } else { rank(d2) };
    let mut b = vec![k - r1, gens * k - r1 - r2];
    if !relators.is_empty() {
        b.push(relators.len() * k - r2);
    }
    b
}

/// Genus-g surface relator `Π [a_j, b_j]`.
pub fn surface_relator(genus: usize) -> Vec<i32> {
    (0..genus as i32)
        .flat_map(|j| [2 * j + 1, 2 * j + 2, -(2 * j + 1), -(2 * j + 2)])
        .collect()
}
