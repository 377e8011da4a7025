use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Reduced row echelon form over the rationals. Returns the pivot columns.
pub fn rref(m: &mut [Vec<BigRational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let d = &f * &m[r][j];
                    m[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of the integer kernel `{x : A x = 0}`, each vector primitive.
///
/// `cols` is passed separately so that a matrix with no rows still has a
/// well-defined kernel.
pub fn integer_nullspace(a: &[Vec<i64>], cols: usize) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut v = vec![BigRational::zero(); cols];
        v[f] = BigRational::one();
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = -m[r][f].clone();
        }
        let lcm = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
        let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
        basis.push(
            ints.iter()
                .map(|x| (x / &g).to_i64().expect("cocycle value fits in i64"))
                .collect(),
        );
    }
    basis
}

/// Determinant over the rationals by elimination.
pub fn det_rational(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c].clone();
        for i in c + 1..n {
            if !a[i][c].is_zero() {
                let f = &a[i][c] / &a[c][c];
                for j in c..n {
                    let d = &f * &a[c][j];
                    a[i][j] -= d;
                }
            }
        }
    }
    det
}

pub fn rational(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_of_commutator_row() {
        // a b a^-1 b^-1 abelianizes to zero
        assert_eq!(integer_nullspace(&[vec![0, 0]], 2).len(), 2);
        let basis = integer_nullspace(&[vec![1, -1]], 2);
        assert_eq!(basis, vec![vec![1, 1]]);
        assert_eq!(integer_nullspace(&[], 3).len(), 3);
    }

    #[test]
    fn determinant() {
        let m: Vec<Vec<BigRational>> = [[2, 1], [4, 3]]
            .iter()
            .map(|r| r.iter().map(|&x| rational(x)).collect())
            .collect();
        assert_eq!(det_rational(&m), rational(2));
    }
}
