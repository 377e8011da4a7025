use num_bigint::BigInt;

use super::element::GroupRingElement;
use super::word::Word;
use crate::error::{Error, Result};

/// A dense matrix over the integral group ring.
///
/// Boundary maps use the column convention: column `j` of `∂_d` lists the
/// boundary of the j-th d-cell as a left-module combination of (d-1)-cells.
/// With left modules, composing maps multiplies entries in the opposite
/// order, see [`GroupRingMatrix::compose`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupRingMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<GroupRingElement>,
}

impl GroupRingMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        GroupRingMatrix {
            rows,
            cols,
            entries: vec![GroupRingElement::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, GroupRingElement::one());
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<GroupRingElement>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(GroupRingMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Integer matrix with identity words.
    pub fn from_integers(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, GroupRingElement::integer(x));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &GroupRingElement {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, e: GroupRingElement) {
        self.entries[i * self.cols + j] = e;
    }

    pub fn add_to(&mut self, i: usize, j: usize, e: &GroupRingElement) {
        let k = i * self.cols + j;
        self.entries[k] = &self.entries[k] + e;
    }

    /// Nonzero entries as `(row, col, entry)`, row-major.
    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, &GroupRingElement)> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(move |(k, e)| (k / self.cols, k % self.cols, e))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GroupRingElement::is_zero)
    }

    /// The map "`self` after `rhs`".
    ///
    /// Entry `(i, k)` is `Σ_j rhs[j][k] · self[i][j]`: the coefficient of the
    /// intermediate cell is multiplied on the left.
    pub fn compose(&self, rhs: &GroupRingMatrix) -> Result<GroupRingMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension(format!(
                "cannot compose {}x{} after {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for (j, k, b) in rhs.nonzero() {
            for i in 0..self.rows {
                let a = self.get(i, j);
                if !a.is_zero() {
                    out.add_to(i, k, &(b * a));
                }
            }
        }
        Ok(out)
    }

    pub fn map_entries<F: FnMut(&GroupRingElement) -> GroupRingElement>(&self, f: F) -> Self {
        GroupRingMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn map_words<F: FnMut(&Word) -> Word>(&self, mut f: F) -> Self {
        self.map_entries(|e| e.map_words(&mut f))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        self.map_entries(|e| e.scale(c))
    }

    /// Rows and columns picked by index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    /// Assembles a block matrix; every block in a block row must have the same
    /// number of rows and every block in a block column the same number of columns.
    pub fn block(blocks: &[Vec<&GroupRingMatrix>]) -> Result<Self> {
        let row_sizes: Vec<usize> = blocks
            .iter()
            .map(|br| br.first().map_or(0, |b| b.rows))
            .collect();
        let col_sizes: Vec<usize> = blocks
            .first()
            .map(|br| br.iter().map(|b| b.cols).collect())
            .unwrap_or_default();
        for br in blocks {
            if br.len() != col_sizes.len() {
                return Err(Error::Dimension("ragged block rows".into()));
            }
        }
        let total_r: usize = row_sizes.iter().sum();
        let total_c: usize = col_sizes.iter().sum();
        let mut m = Self::zeros(total_r, total_c);
        let mut r0 = 0;
        for (bi, br) in blocks.iter().enumerate() {
            let mut c0 = 0;
            for (bj, b) in br.iter().enumerate() {
                if b.rows != row_sizes[bi] || b.cols != col_sizes[bj] {
                    return Err(Error::Dimension(format!("block ({bi},{bj}) has wrong shape")));
                }
                for (i, j, e) in b.nonzero() {
                    m.set(r0 + i, c0 + j, e.clone());
                }
                c0 += col_sizes[bj];
            }
            r0 += row_sizes[bi];
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(l: &[i32]) -> GroupRingElement {
        GroupRingElement::word(Word::new(l.to_vec()))
    }

    #[test]
    fn compose_multiplies_in_opposite_order() {
        let mut a = GroupRingMatrix::zeros(1, 1);
        a.set(0, 0, g(&[1]));
        let mut b = GroupRingMatrix::zeros(1, 1);
        b.set(0, 0, g(&[2]));
        // a after b: coefficient of b is applied first, then a's
        assert_eq!(a.compose(&b).unwrap().get(0, 0), &g(&[2, 1]));
    }

    #[test]
    fn block_assembly() {
        let i2 = GroupRingMatrix::identity(2);
        let z = GroupRingMatrix::zeros(2, 1);
        let m = GroupRingMatrix::block(&[vec![&i2, &z]]).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 3));
        assert_eq!(m.get(1, 1), &GroupRingElement::one());
        assert!(GroupRingMatrix::block(&[vec![&i2], vec![&z, &z]]).is_err());
    }
}
