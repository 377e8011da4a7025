use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A sparse row is a list of `(column, value)` with strictly increasing
/// columns and nonzero values.
pub type SparseRow = Vec<(usize, BigInt)>;

/// A sparse integer matrix stored by rows.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseRow>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    /// Builds from unsorted triplets; duplicate positions are summed.
    pub fn from_triplets(rows: usize, cols: usize, triplets: Vec<(usize, usize, BigInt)>) -> Self {
        let mut acc: Vec<HashMap<usize, BigInt>> = vec![HashMap::new(); rows];
        for (i, j, v) in triplets {
            assert!(i < rows && j < cols, "triplet ({i},{j}) outside {rows}x{cols}");
            *acc[i].entry(j).or_insert_with(BigInt::zero) += v;
        }
        let data = acc
            .into_iter()
            .map(|m| {
                let mut row: SparseRow = m.into_iter().filter(|(_, v)| !v.is_zero()).collect();
                row.sort_by_key(|(j, _)| *j);
                row
            })
            .collect();
        SparseMatrix { rows, cols, data }
    }

    pub fn from_dense(rows: &[Vec<BigInt>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut t = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    t.push((i, j, v.clone()));
                }
            }
        }
        Self::from_triplets(r, c, t)
    }

    /// Clears denominators row by row; the row space (hence the rank) is unchanged.
    pub fn from_rational_rows(cols: usize, rows: Vec<Vec<(usize, BigRational)>>) -> Self {
        let n = rows.len();
        let data = rows
            .into_iter()
            .map(|row| {
                let lcm = row
                    .iter()
                    .fold(BigInt::one(), |l, (_, v)| l.lcm(v.denom()));
                let mut out: SparseRow = row
                    .into_iter()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| (j, v.numer() * (&lcm / v.denom())))
                    .collect();
                out.sort_by_key(|(j, _)| *j);
                out
            })
            .collect();
        SparseMatrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &SparseRow {
        &self.data[i]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn get(&self, i: usize, j: usize) -> BigInt {
        match self.data[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => self.data[i][k].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (i, row) in self.data.iter().enumerate() {
            for (j, v) in row {
                out[i][*j] = v.clone();
            }
        }
        out
    }

    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        let mut t = Vec::new();
        for (i, row) in self.data.iter().enumerate() {
            let mut acc: HashMap<usize, BigInt> = HashMap::new();
            for (k, a) in row {
                for (j, b) in &rhs.data[*k] {
                    *acc.entry(*j).or_insert_with(BigInt::zero) += a * b;
                }
            }
            t.extend(acc.into_iter().map(|(j, v)| (i, j, v)));
        }
        SparseMatrix::from_triplets(self.rows, rhs.cols, t)
    }

    /// Exact rank over the rationals by fraction-free sparse elimination.
    pub fn rank(&self) -> usize {
        let mut order: Vec<usize> = (0..self.rows).filter(|&i| !self.data[i].is_empty()).collect();
        order.sort_by_key(|&i| self.data[i].len());
        let mut pivots: HashMap<usize, SparseRow> = HashMap::new();
        for i in order {
            let mut row = self.data[i].clone();
            normalize(&mut row);
            while let Some((lead, _)) = row.first() {
                match pivots.get(lead) {
                    Some(p) => {
                        row = eliminate(&row, p);
                    }
                    None => {
                        pivots.insert(*lead, row);
                        break;
                    }
                }
            }
        }
        pivots.len()
    }
}

/// `a*row - b*pivot` scaled so that the common leading column cancels.
fn eliminate(row: &SparseRow, pivot: &SparseRow) -> SparseRow {
    let pa = &pivot[0].1;
    let ra = &row[0].1;
    let g = pa.gcd(ra);
    let a = pa / &g;
    let b = ra / &g;
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut x, mut y) = (1, 1);
    while x < row.len() || y < pivot.len() {
        let cx = row.get(x).map(|e| e.0);
        let cy = pivot.get(y).map(|e| e.0);
        match (cx, cy) {
            (Some(i), Some(j)) if i == j => {
                let v = &a * &row[x].1 - &b * &pivot[y].1;
                if !v.is_zero() {
                    out.push((i, v));
                }
                x += 1;
                y += 1;
            }
            (Some(i), Some(j)) if i < j => {
                out.push((i, &a * &row[x].1));
                x += 1;
            }
            (Some(i), None) => {
                out.push((i, &a * &row[x].1));
                x += 1;
            }
            (_, Some(j)) => {
                out.push((j, -(&b * &pivot[y].1)));
                y += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    normalize(&mut out);
    out
}

/// Divides by the content and makes the leading entry positive.
fn normalize(row: &mut SparseRow) {
    let Some(first) = row.first() else { return };
    let mut g = first.1.abs();
    for (_, v) in row.iter().skip(1) {
        if g.is_one() {
            break;
        }
        g = g.gcd(v);
    }
    if first.1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, v) in row.iter_mut() {
            *v = &*v / &g;
        }
    }
}
