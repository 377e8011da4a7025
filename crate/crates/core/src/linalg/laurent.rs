//! Laurent polynomials over the rationals and matrices of them.
//!
//! Ranks over the rational function field are computed in two ways: a fast
//! path evaluating at a few generic rational points, and fraction-free
//! (Bareiss) elimination over the polynomial ring. Evaluation can only
//! under-estimate the rank (at roots of some minor), so whenever the
//! evaluations disagree the exact elimination decides.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::sparse::SparseMatrix;
use crate::error::{Error, Result};

/// Dense polynomial, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly(Vec<BigRational>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn one() -> Self {
        Poly(vec![BigRational::one()])
    }

    pub fn from_coeffs(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Poly(c)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> &BigRational {
        self.0.last().expect("nonzero polynomial")
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        let n = self.0.len().max(rhs.0.len());
        let z = BigRational::zero();
        Poly::from_coeffs(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&z) - rhs.0.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    /// Quotient of an exact division; panics if `rhs` does not divide `self`.
    pub fn div_exact(&self, rhs: &Poly) -> Poly {
        assert!(!rhs.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Poly::zero();
        }
        let mut rem = self.0.clone();
        let dr = rhs.0.len() - 1;
        if rem.len() < rhs.0.len() {
            panic!("inexact polynomial division");
        }
        let mut q = vec![BigRational::zero(); rem.len() - dr];
        let lead_inv = rhs.lead().recip();
        for k in (0..q.len()).rev() {
            let c = &rem[k + dr] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                rem[k + j] -= &c * b;
            }
            q[k] = c;
        }
        assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
        Poly::from_coeffs(q)
    }
}

/// A Laurent polynomial `t^low * (c0 + c1 t + ...)` with `c0 != 0`.
/// The zero polynomial has `low = 0` and no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn t() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn monomial(c: BigRational, exponent: i64) -> Self {
        Self::from_coeffs(exponent, vec![c])
    }

    /// Coefficients starting at exponent `low`; normalizes both ends.
    pub fn from_coeffs(low: i64, mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead_zeros);
        LaurentPoly {
            low: low + lead_zeros as i64,
            coeffs,
        }
    }

    pub fn from_integers(low: i64, coeffs: &[i64]) -> Self {
        Self::from_coeffs(low, coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn low(&self) -> i64 {
        self.low
    }

    /// Highest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn high(&self) -> i64 {
        if self.is_zero() {
            0
        } else {
            self.low + self.coeffs.len() as i64 - 1
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coefficient(&self, exponent: i64) -> BigRational {
        let k = exponent - self.low;
        if k < 0 {
            return BigRational::zero();
        }
        self.coeffs.get(k as usize).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn shift(&self, by: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            low: self.low + by,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        if self.is_zero() {
            return BigRational::zero();
        }
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc * pow_rational(x, self.low)
    }

    /// Polynomial part after multiplying by `t^-shift`; requires `low >= shift`.
    pub fn to_poly(&self, shift: i64) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let offset = (self.low - shift) as usize;
        let mut c = vec![BigRational::zero(); offset];
        c.extend(self.coeffs.iter().cloned());
        Poly::from_coeffs(c)
    }

    pub fn from_poly(p: &Poly, shift: i64) -> Self {
        Self::from_coeffs(shift, p.coeffs().to_vec())
    }
}

fn pow_rational(x: &BigRational, e: i64) -> BigRational {
    let mut base = if e < 0 { x.recip() } else { x.clone() };
    let mut e = e.unsigned_abs();
    let mut acc = BigRational::one();
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        base = &base * &base;
        e >>= 1;
    }
    acc
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high().max(rhs.high());
        LaurentPoly::from_coeffs(
            low,
            (low..=high).map(|e| self.coefficient(e) + rhs.coefficient(e)).collect(),
        )
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        LaurentPoly::from_coeffs(self.low + rhs.low, out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let e = self.low + k as i64;
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let coeff = if a.is_one() && e != 0 { String::new() } else { a.to_string() };
            match e {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}t")?,
                _ => write!(f, "{coeff}t^{e}")?,
            }
        }
        Ok(())
    }
}

/// Dense matrix of Laurent polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        LaurentMatrix {
            rows,
            cols,
            entries: vec![LaurentPoly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged Laurent matrix rows".into()));
        }
        Ok(LaurentMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(LaurentPoly::is_zero)
    }

    pub fn mul(&self, rhs: &LaurentMatrix) -> Result<LaurentMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.entries[idx] = &out.entries[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &LaurentMatrix) -> Result<LaurentMatrix> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::Dimension("shapes differ".into()));
        }
        Ok(LaurentMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().zip(&rhs.entries).map(|(a, b)| a - b).collect(),
        })
    }

    /// Entrywise evaluation at a nonzero rational, as an integer matrix with
    /// the same row space.
    pub fn eval(&self, x: &BigRational) -> SparseMatrix {
        let rows = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .filter(|&j| !self.get(i, j).is_zero())
                    .map(|j| (j, self.get(i, j).eval(x)))
                    .collect()
            })
            .collect();
        SparseMatrix::from_rational_rows(self.cols, rows)
    }

    /// Rows shifted into the polynomial ring, with the total shift applied.
    fn to_poly_rows(&self) -> (Vec<Vec<Poly>>, i64) {
        let mut total = 0;
        let rows = (0..self.rows)
            .map(|i| {
                let row = &self.entries[i * self.cols..(i + 1) * self.cols];
                let shift = row.iter().filter(|e| !e.is_zero()).map(LaurentPoly::low).min().unwrap_or(0);
                total += shift;
                row.iter().map(|e| e.to_poly(shift)).collect()
            })
            .collect();
        (rows, total)
    }

    /// Ranks at the generic evaluation points.
    pub fn evaluation_ranks(&self) -> [usize; 3] {
        let pts = evaluation_points();
        [self.eval(&pts[0]).rank(), self.eval(&pts[1]).rank(), self.eval(&pts[2]).rank()]
    }

    /// Rank over Q(t) by fraction-free elimination in Q[t].
    pub fn rank_exact(&self) -> usize {
        let (mut a, _) = self.to_poly_rows();
        bareiss(&mut a, self.cols).0
    }
}

/// Three distinct rationals avoiding 0 and ±1, fixed for reproducibility.
pub fn evaluation_points() -> &'static [BigRational; 3] {
    static POINTS: OnceLock<[BigRational; 3]> = OnceLock::new();
    POINTS.get_or_init(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(0x6c32_6265_7474_69);
        let mut pts: Vec<BigRational> = Vec::new();
        while pts.len() < 3 {
            let p: i64 = rng.gen_range(-1000..=1000);
            let q: i64 = rng.gen_range(1..=1000);
            let x = BigRational::new(BigInt::from(p), BigInt::from(q));
            if x.is_zero() || x.abs().is_one() || pts.contains(&x) {
                continue;
            }
            pts.push(x);
        }
        [pts[0].clone(), pts[1].clone(), pts[2].clone()]
    })
}

/// Fraction-free elimination; returns the rank and, when the matrix is
/// square and nonsingular, its determinant.
fn bareiss(a: &mut [Vec<Poly>], cols: usize) -> (usize, Option<Poly>) {
    let rows = a.len();
    let mut prev = Poly::one();
    let mut r = 0;
    let mut negate = false;
    let mut full = true;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            full = false;
            continue;
        };
        if p != r {
            a.swap(p, r);
            negate = !negate;
        }
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = a[r][c].mul(&a[i][j]).sub(&a[i][c].mul(&a[r][j]));
                a[i][j] = v.div_exact(&prev);
            }
            a[i][c] = Poly::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    let det = if full && rows == cols && r == rows {
        let d = if rows == 0 { Poly::one() } else { prev };
        Some(if negate { Poly::zero().sub(&d) } else { d })
    } else {
        None
    };
    (r, det)
}

/// Rank over Q(t).
///
/// Fast path: ranks at three generic points; if they agree that value is
/// returned, otherwise exact elimination decides.
pub fn rank_laurent(m: &LaurentMatrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let r = m.evaluation_ranks();
    if r[0] == r[1] && r[1] == r[2] {
        r[0]
    } else {
        m.rank_exact()
    }
}

/// Exact determinant of a square Laurent matrix.
pub fn det_laurent(m: &LaurentMatrix) -> Result<LaurentPoly> {
    if m.rows != m.cols {
        return Err(Error::NotSquare {
            rows: m.rows,
            cols: m.cols,
        });
    }
    let (mut a, shift) = m.to_poly_rows();
    let (_, det) = bareiss(&mut a, m.cols);
    Ok(match det {
        Some(d) => LaurentPoly::from_poly(&d, shift),
        None => LaurentPoly::zero(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lp(low: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::from_integers(low, c)
    }

    fn mat(rows: Vec<Vec<LaurentPoly>>) -> LaurentMatrix {
        LaurentMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn normalization() {
        let p = LaurentPoly::from_integers(-2, &[0, 0, 3, 0]);
        assert_eq!((p.low(), p.high()), (0, 0));
        assert_eq!(p, LaurentPoly::from_integers(0, &[3]));
        assert!(LaurentPoly::from_integers(5, &[0, 0]).is_zero());
        assert_eq!(lp(0, &[1, -1, 1]).to_string(), "t^2 - t + 1");
        assert_eq!(lp(-1, &[-2, 0, 1]).to_string(), "t - 2t^-1");
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_laurent(&mat(vec![vec![lp(0, &[-1, 1])]])), 1);
        assert_eq!(rank_laurent(&LaurentMatrix::zeros(3, 2)), 0);
        let m = mat(vec![
            vec![lp(0, &[1, -1]), lp(1, &[1])],
            vec![lp(0, &[2, -2]), lp(1, &[2])],
        ]);
        assert_eq!(rank_laurent(&m), 1);
        assert_eq!(m.rank_exact(), 1);
    }

    #[test]
    fn det_examples() {
        assert_eq!(det_laurent(&LaurentMatrix::identity(2)).unwrap(), LaurentPoly::one());
        let one_minus_t = lp(0, &[1, -1]);
        let m = mat(vec![
            vec![one_minus_t.clone(), LaurentPoly::zero()],
            vec![LaurentPoly::zero(), one_minus_t.clone()],
        ]);
        assert_eq!(det_laurent(&m).unwrap(), &one_minus_t * &one_minus_t);
        let m = mat(vec![vec![lp(0, &[1]), lp(1, &[1])], vec![lp(1, &[1]), lp(0, &[1])]]);
        assert_eq!(det_laurent(&m).unwrap(), lp(0, &[1, 0, -1]));
        assert!(det_laurent(&LaurentMatrix::zeros(2, 3)).is_err());
        assert_eq!(det_laurent(&LaurentMatrix::zeros(0, 0)).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn det_with_negative_exponents_and_swaps() {
        let m = mat(vec![
            vec![LaurentPoly::zero(), lp(-1, &[1])],
            vec![lp(-2, &[1]), LaurentPoly::zero()],
        ]);
        assert_eq!(det_laurent(&m).unwrap(), lp(-3, &[-1]));
    }

    #[test]
    fn evaluation_underestimates_at_roots_only() {
        // rank drops at t = 1 but not generically
        let m = mat(vec![vec![lp(0, &[-1, 1]), lp(0, &[-1, 1])], vec![lp(0, &[1]), lp(0, &[2])]]);
        assert_eq!(m.eval(&BigRational::one()).rank(), 1);
        assert_eq!(rank_laurent(&m), 2);
    }

    fn small_poly() -> impl Strategy<Value = LaurentPoly> {
        (-2i64..=1, prop::collection::vec(-2i64..=2, 0..3)).prop_map(|(l, c)| lp(l, &c))
    }

    fn small_matrix(r: usize, c: usize) -> impl Strategy<Value = LaurentMatrix> {
        prop::collection::vec(small_poly(), r * c).prop_map(move |e| {
            let mut m = LaurentMatrix::zeros(r, c);
            for (k, v) in e.into_iter().enumerate() {
                m.set(k / c, k % c, v);
            }
            m
        })
    }

    proptest! {
        #[test]
        fn fast_rank_agrees_with_exact(m in (1usize..5, 1usize..5).prop_flat_map(|(r, c)| small_matrix(r, c))) {
            prop_assert_eq!(rank_laurent(&m), m.rank_exact());
        }

        #[test]
        fn rank_of_low_rank_product(a in small_matrix(4, 2), b in small_matrix(2, 4)) {
            let p = a.mul(&b).unwrap();
            prop_assert!(p.rank_exact() <= 2);
            prop_assert_eq!(rank_laurent(&p), p.rank_exact());
        }

        #[test]
        fn det_is_multiplicative(a in small_matrix(3, 3), b in small_matrix(3, 3)) {
            let ab = a.mul(&b).unwrap();
            prop_assert_eq!(det_laurent(&ab).unwrap(), det_laurent(&a).unwrap() * det_laurent(&b).unwrap());
        }

        #[test]
        fn det_vanishes_iff_rank_deficient(a in small_matrix(3, 3)) {
            prop_assert_eq!(det_laurent(&a).unwrap().is_zero(), a.rank_exact() < 3);
        }
    }
}
