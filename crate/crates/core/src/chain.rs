//! Equivariant cellular chain complexes and their Betti numbers under a
//! specialization.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::group_ring::{Cocycle, FpGroup, GroupRingElement, GroupRingMatrix, Specialization, Specialized};

/// A finite free chain complex over the group ring of `group`: the cellular
/// chains of the universal cover of a finite CW complex.
///
/// `boundaries[d - 1]` is `∂_d`, an `n_{d-1} x n_d` matrix. Cells may carry a
/// text label (sutured data uses `R+`, `R-` and `gamma`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivariantComplex {
    group: FpGroup,
    cell_counts: Vec<usize>,
    boundaries: Vec<GroupRingMatrix>,
    labels: Vec<Vec<Option<String>>>,
}

/// Position of a cell: degree and index within that degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell {
    pub degree: usize,
    pub index: usize,
}

impl Cell {
    pub fn new(degree: usize, index: usize) -> Self {
        Cell { degree, index }
    }
}

impl EquivariantComplex {
    pub fn new(group: FpGroup, cell_counts: Vec<usize>, boundaries: Vec<GroupRingMatrix>) -> Result<Self> {
        let labels = cell_counts.iter().map(|&n| vec![None; n]).collect();
        Self::with_labels(group, cell_counts, boundaries, labels)
    }

    pub fn with_labels(
        group: FpGroup,
        cell_counts: Vec<usize>,
        boundaries: Vec<GroupRingMatrix>,
        labels: Vec<Vec<Option<String>>>,
    ) -> Result<Self> {
        if cell_counts.is_empty() {
            return Err(Error::Dimension("a complex needs at least degree 0".into()));
        }
        if boundaries.len() + 1 != cell_counts.len() {
            return Err(Error::Dimension(format!(
                "{} boundary maps for top degree {}",
                boundaries.len(),
                cell_counts.len() - 1
            )));
        }
        for (k, b) in boundaries.iter().enumerate() {
            let d = k + 1;
            if b.rows() != cell_counts[d - 1] || b.cols() != cell_counts[d] {
                return Err(Error::Dimension(format!(
                    "boundary {d} is {}x{}, expected {}x{}",
                    b.rows(),
                    b.cols(),
                    cell_counts[d - 1],
                    cell_counts[d]
                )));
            }
            for (_, _, e) in b.nonzero() {
                for (w, _) in e.terms() {
                    w.check(group.generator_count())?;
                }
            }
        }
        if labels.len() != cell_counts.len() || labels.iter().zip(&cell_counts).any(|(l, &n)| l.len() != n) {
            return Err(Error::Dimension("label grid does not match cell counts".into()));
        }
        Ok(EquivariantComplex {
            group,
            cell_counts,
            boundaries,
            labels,
        })
    }

    pub fn group(&self) -> &FpGroup {
        &self.group
    }

    pub fn top_degree(&self) -> usize {
        self.cell_counts.len() - 1
    }

    pub fn cell_counts(&self) -> &[usize] {
        &self.cell_counts
    }

    pub fn cell_count(&self, d: usize) -> usize {
        self.cell_counts.get(d).copied().unwrap_or(0)
    }

    pub fn total_cells(&self) -> usize {
        self.cell_counts.iter().sum()
    }

    /// `∂_d` for `1 <= d <= top_degree`.
    pub fn boundary(&self, d: usize) -> &GroupRingMatrix {
        &self.boundaries[d - 1]
    }

    pub fn boundaries(&self) -> &[GroupRingMatrix] {
        &self.boundaries
    }

    pub fn labels(&self) -> &[Vec<Option<String>>] {
        &self.labels
    }

    pub fn label(&self, c: Cell) -> Option<&str> {
        self.labels[c.degree][c.index].as_deref()
    }

    pub fn set_label(&mut self, c: Cell, label: Option<String>) {
        self.labels[c.degree][c.index] = label;
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.cell_counts
            .iter()
            .enumerate()
            .flat_map(|(d, &n)| (0..n).map(move |i| Cell::new(d, i)))
    }

    /// Cells whose label is in `names`.
    pub fn cells_labeled(&self, names: &[&str]) -> BTreeSet<Cell> {
        self.cells()
            .filter(|&c| self.label(c).is_some_and(|l| names.contains(&l)))
            .collect()
    }

    /// Faces of a cell: cells with a nonzero entry in its boundary column.
    pub fn faces(&self, c: Cell) -> Vec<Cell> {
        if c.degree == 0 {
            return Vec::new();
        }
        let b = self.boundary(c.degree);
        (0..b.rows())
            .filter(|&i| !b.get(i, c.index).is_zero())
            .map(|i| Cell::new(c.degree - 1, i))
            .collect()
    }

    /// Smallest subcomplex containing `cells`.
    pub fn closure(&self, cells: &BTreeSet<Cell>) -> BTreeSet<Cell> {
        let mut out = cells.clone();
        let mut stack: Vec<Cell> = cells.iter().copied().collect();
        while let Some(c) = stack.pop() {
            for f in self.faces(c) {
                if out.insert(f) {
                    stack.push(f);
                }
            }
        }
        out
    }

    /// First incidence leaving `cells`, if `cells` is not a subcomplex.
    pub fn subcomplex_violation(&self, cells: &BTreeSet<Cell>) -> Option<(Cell, Cell)> {
        for &c in cells {
            for f in self.faces(c) {
                if !cells.contains(&f) {
                    return Some((c, f));
                }
            }
        }
        None
    }

    /// The subcomplex spanned by `cells` with its own cells renumbered in order;
    /// coefficients stay in the ambient group ring.
    pub fn restrict(&self, cells: &BTreeSet<Cell>) -> Result<EquivariantComplex> {
        if let Some((c, f)) = self.subcomplex_violation(cells) {
            return Err(Error::NotSubcomplex(format!(
                "cell {}:{} has face {}:{} outside the set",
                c.degree, c.index, f.degree, f.index
            )));
        }
        Ok(self.select(&|c| cells.contains(&c)))
    }

    /// Keeps the cells passing `keep`, restricting boundary matrices to them.
    fn select(&self, keep: &dyn Fn(Cell) -> bool) -> EquivariantComplex {
        let kept: Vec<Vec<usize>> = self
            .cell_counts
            .iter()
            .enumerate()
            .map(|(d, &n)| (0..n).filter(|&i| keep(Cell::new(d, i))).collect())
            .collect();
        let boundaries = (1..=self.top_degree())
            .map(|d| self.boundary(d).submatrix(&kept[d - 1], &kept[d]))
            .collect();
        let labels = kept
            .iter()
            .enumerate()
            .map(|(d, idx)| idx.iter().map(|&i| self.labels[d][i].clone()).collect())
            .collect();
        EquivariantComplex {
            group: self.group.clone(),
            cell_counts: kept.iter().map(Vec::len).collect(),
            boundaries,
            labels,
        }
    }

    /// Replaces the group, e.g. after renaming generators. Words are checked.
    pub fn with_group(&self, group: FpGroup) -> Result<EquivariantComplex> {
        Self::with_labels(group, self.cell_counts.clone(), self.boundaries.clone(), self.labels.clone())
    }
}

/// Betti numbers of a specialized complex.
///
/// `unnormalized[d]` is a dimension over Q (finite covers and augmentation)
/// or over Q(t) (twists); `index` is the number of sheets of the cover, and
/// the normalized values divide by it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiVector {
    pub unnormalized: Vec<usize>,
    pub index: usize,
}

impl BettiVector {
    pub fn normalized(&self) -> Vec<BigRational> {
        self.unnormalized
            .iter()
            .map(|&b| BigRational::new((b as i64).into(), (self.index as i64).into()))
            .collect()
    }

    pub fn get(&self, d: usize) -> usize {
        self.unnormalized.get(d).copied().unwrap_or(0)
    }

    /// Alternating sum of unnormalized values.
    pub fn euler(&self) -> i64 {
        self.unnormalized
            .iter()
            .enumerate()
            .map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }

    pub fn is_zero(&self) -> bool {
        self.unnormalized.iter().all(|&b| b == 0)
    }
}

/// Result of checking `s(∂_{d-1}) s(∂_d) = 0` in every degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexCheck {
    pub valid: bool,
    /// Degrees `d` with `s(∂_{d-1}) s(∂_d) != 0`.
    pub failing_degrees: Vec<usize>,
}

fn specialize_all(x: &EquivariantComplex, s: &Specialization) -> Result<Vec<Specialized>> {
    s.ensure_valid(x.group())?;
    Ok(x.boundaries.par_iter().map(|b| s.apply(b)).collect())
}

fn composite_failures(x: &EquivariantComplex, spec: &[Specialized]) -> Result<Vec<usize>> {
    let mut failing = Vec::new();
    for d in 2..=x.top_degree() {
        if !spec[d - 2].product_is_zero(&spec[d - 1])? {
            failing.push(d);
        }
    }
    Ok(failing)
}

/// Checks that all boundary composites vanish exactly under `s`.
pub fn validate_complex(x: &EquivariantComplex, s: &Specialization) -> Result<ComplexCheck> {
    let spec = specialize_all(x, s)?;
    let failing = composite_failures(x, &spec)?;
    Ok(ComplexCheck {
        valid: failing.is_empty(),
        failing_degrees: failing,
    })
}

/// Exact Betti numbers of the specialized complex.
pub fn betti(x: &EquivariantComplex, s: &Specialization) -> Result<BettiVector> {
    let spec = specialize_all(x, s)?;
    if let Some(&degree) = composite_failures(x, &spec)?.first() {
        return Err(Error::NotAComplex { degree });
    }
    let ranks: Vec<usize> = spec
        .par_iter()
        .map(|m| if m.rows() == 0 || m.cols() == 0 { 0 } else { m.rank() })
        .collect();
    let n = s.index();
    let top = x.top_degree();
    let unnormalized = (0..=top)
        .map(|d| {
            let r_in = if d >= 1 { ranks[d - 1] } else { 0 };
            let r_out = if d < top { ranks[d] } else { 0 };
            x.cell_count(d) * n - r_in - r_out
        })
        .collect();
    Ok(BettiVector { unnormalized, index: n })
}

/// Dimensions over Q(t) of homology twisted by a nonzero cocycle.
pub fn twisted_betti(x: &EquivariantComplex, phi: &Cocycle) -> Result<BettiVector> {
    if phi.is_zero() {
        return Err(Error::ZeroCocycle);
    }
    betti(x, &Specialization::Twist(phi.clone()))
}

/// `Σ (-1)^d n_d`.
pub fn euler_char(x: &EquivariantComplex) -> i64 {
    x.cell_counts
        .iter()
        .enumerate()
        .map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) })
        .sum()
}

/// Euler characteristic of a set of cells counted as they are.
pub fn euler_of_cells(cells: &BTreeSet<Cell>) -> i64 {
    cells
        .iter()
        .map(|c| if c.degree % 2 == 0 { 1 } else { -1 })
        .sum()
}

/// Quotient complex `X / A` where `A` is the set of cells carrying one of `labels`.
pub fn relative(x: &EquivariantComplex, labels: &[&str]) -> Result<EquivariantComplex> {
    relative_to_cells(x, &x.cells_labeled(labels))
}

/// Quotient complex by an explicit subcomplex.
pub fn relative_to_cells(x: &EquivariantComplex, a: &BTreeSet<Cell>) -> Result<EquivariantComplex> {
    if let Some((c, f)) = x.subcomplex_violation(a) {
        return Err(Error::NotSubcomplex(format!(
            "cell {}:{} has face {}:{} outside the subcomplex",
            c.degree, c.index, f.degree, f.index
        )));
    }
    Ok(x.select(&|c| !a.contains(&c)))
}

/// Ranks describing `H_k(Y) -> H_k(X)` for a subcomplex `Y` of `X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InclusionRanks {
    pub degree: usize,
    /// Dimension of `H_k(Y)` with coefficients pulled back from `X`.
    pub source: usize,
    pub image: usize,
    pub kernel: usize,
}

/// Computes the rank of `H_k(Y) -> H_k(X)` from matrix ranks only.
///
/// The image is `(Z_k(Y) + B_k(X)) / B_k(X)`. Writing `ι` for the inclusion of
/// k-chains, the block matrix `[[ι, ∂_{k+1}^X], [∂_k^Y, 0]]` has rank
/// `dim(Z_k(Y) + B_k(X)) + rank ∂_k^Y`, so no kernel bases are needed and the
/// computation works over Q(t) as well as Q.
pub fn inclusion_ranks(
    x: &EquivariantComplex,
    y: &BTreeSet<Cell>,
    k: usize,
    s: &Specialization,
) -> Result<InclusionRanks> {
    let sub = x.restrict(y)?;
    let source = betti(&sub, s)?.get(k);
    betti(x, s)?;

    let y_k: Vec<usize> = (0..x.cell_count(k)).filter(|&i| y.contains(&Cell::new(k, i))).collect();
    let y_km1: Vec<usize> = if k >= 1 {
        (0..x.cell_count(k - 1)).filter(|&i| y.contains(&Cell::new(k - 1, i))).collect()
    } else {
        Vec::new()
    };
    let n_k = x.cell_count(k);
    let n_k1 = x.cell_count(k + 1);

    let mut iota = GroupRingMatrix::zeros(n_k, y_k.len());
    for (col, &row) in y_k.iter().enumerate() {
        iota.set(row, col, GroupRingElement::one());
    }
    let d_x = if k < x.top_degree() {
        x.boundary(k + 1).clone()
    } else {
        GroupRingMatrix::zeros(n_k, 0)
    };
    let d_y = if k >= 1 {
        x.boundary(k).submatrix(&y_km1, &y_k)
    } else {
        GroupRingMatrix::zeros(0, y_k.len())
    };
    let zero = GroupRingMatrix::zeros(d_y.rows(), n_k1);
    let a = GroupRingMatrix::block(&[vec![&iota, &d_x], vec![&d_y, &zero]])?;

    let rank_a = s.rank(&a);
    let rank_dy = s.rank(&d_y);
    let rank_dx = s.rank(&d_x);
    let image = rank_a - rank_dy - rank_dx;
    Ok(InclusionRanks {
        degree: k,
        source,
        image,
        kernel: source - image,
    })
}

/// A vector of rationals, all zero.
pub fn all_zero(v: &[BigRational]) -> bool {
    v.iter().all(Zero::is_zero)
}
