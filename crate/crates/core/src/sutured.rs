//! Sutured-manifold data on labeled chain complexes and the checks built on
//! pair Betti numbers.
//!
//! Boundary cells carry one of the labels [`R_PLUS`], [`R_MINUS`] or
//! [`GAMMA`]. `R+` and `R-` are subcomplexes. Suture cells (circles where `γ`
//! meets `R±`) are labeled with the `R±` side they lie on, so `γ` itself is
//! only closed after adding them; every pair below uses closures.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::chain::{
    betti, euler_char, euler_of_cells, inclusion_ranks, relative_to_cells, validate_complex, BettiVector, Cell,
    EquivariantComplex,
};
use crate::covers::{approximate, ApproxSequence, QuotientSchedule};
use crate::error::{Error, Result};
use crate::group_ring::{Cocycle, Specialization};
use crate::linalg::laurent::{det_laurent, LaurentMatrix, LaurentPoly};

pub const R_PLUS: &str = "R+";
pub const R_MINUS: &str = "R-";
pub const GAMMA: &str = "gamma";

/// Hypotheses that cannot be read off chain data; supplied by the user and
/// echoed in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeclaredFlags {
    pub irreducible: bool,
    pub gamma_incompressible: bool,
    pub rminus_incompressible: bool,
    pub infinite_pi1: bool,
}

impl DeclaredFlags {
    pub fn all(value: bool) -> Self {
        DeclaredFlags {
            irreducible: value,
            gamma_incompressible: value,
            rminus_incompressible: value,
            infinite_pi1: value,
        }
    }

    pub fn all_true(&self) -> bool {
        self.irreducible && self.gamma_incompressible && self.rminus_incompressible && self.infinite_pi1
    }

    fn false_names(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.irreducible {
            out.push("irreducible");
        }
        if !self.gamma_incompressible {
            out.push("gamma_incompressible");
        }
        if !self.rminus_incompressible {
            out.push("rminus_incompressible");
        }
        if !self.infinite_pi1 {
            out.push("infinite_pi1");
        }
        out
    }
}

/// A 3-dimensional labeled complex with declared hypotheses and an optional
/// cell bijection `R-` to `R+` used for gluing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuturedComplex {
    pub space: EquivariantComplex,
    pub flags: DeclaredFlags,
    /// Pairs `(R- cell, R+ cell)`.
    pub pairing: Vec<(Cell, Cell)>,
}

impl SuturedComplex {
    pub fn new(space: EquivariantComplex, flags: DeclaredFlags) -> Self {
        SuturedComplex {
            space,
            flags,
            pairing: Vec::new(),
        }
    }

    pub fn r_plus(&self) -> BTreeSet<Cell> {
        self.space.cells_labeled(&[R_PLUS])
    }

    pub fn r_minus(&self) -> BTreeSet<Cell> {
        self.space.cells_labeled(&[R_MINUS])
    }

    /// `γ` together with its sutures.
    pub fn gamma(&self) -> BTreeSet<Cell> {
        self.space.closure(&self.space.cells_labeled(&[GAMMA]))
    }

    /// All labeled cells.
    pub fn boundary(&self) -> BTreeSet<Cell> {
        self.space.cells_labeled(&[R_PLUS, R_MINUS, GAMMA])
    }

    /// The closure of `R_side ∪ γ`.
    pub fn side_with_gamma(&self, side: Side) -> BTreeSet<Cell> {
        let label = side.label();
        self.space.closure(&self.space.cells_labeled(&[label, GAMMA]))
    }

    pub fn side(&self, side: Side) -> BTreeSet<Cell> {
        self.space.cells_labeled(&[side.label()])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Minus,
    Plus,
}

impl Side {
    pub fn label(self) -> &'static str {
        match self {
            Side::Minus => R_MINUS,
            Side::Plus => R_PLUS,
        }
    }

    pub fn opposite(self) -> Side {
        match self {
            Side::Minus => Side::Plus,
            Side::Plus => Side::Minus,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Minus => "minus",
            Side::Plus => "plus",
        })
    }
}

impl std::str::FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "minus" | "-" | "R-" => Ok(Side::Minus),
            "plus" | "+" | "R+" => Ok(Side::Plus),
            _ => Err(Error::Sutured(format!("unknown side {s:?}"))),
        }
    }
}

/// Connected components of a cell set, joined through boundary incidences
/// with nonzero group-ring entries.
pub fn components(x: &EquivariantComplex, cells: &BTreeSet<Cell>) -> Vec<BTreeSet<Cell>> {
    let list: Vec<Cell> = cells.iter().copied().collect();
    let pos = |c: &Cell| list.binary_search(c).ok();
    let mut parent: Vec<usize> = (0..list.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for (i, &c) in list.iter().enumerate() {
        for f in x.faces(c) {
            if let Some(j) = pos(&f) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, BTreeSet<Cell>> = Default::default();
    for (i, &c) in list.iter().enumerate() {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().insert(c);
    }
    let mut out: Vec<BTreeSet<Cell>> = groups.into_values().collect();
    out.sort();
    out
}

/// `Σ max(-χ, 0)` over connected components of `cells`.
pub fn complexity(x: &EquivariantComplex, cells: &BTreeSet<Cell>) -> usize {
    components(x, cells)
        .iter()
        .map(|c| (-euler_of_cells(c)).max(0) as usize)
        .sum()
}

/// Euler characteristics of the labeled pieces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerData {
    pub space: i64,
    pub boundary: i64,
    pub r_plus: i64,
    pub r_minus: i64,
    pub gamma: i64,
    pub sutures: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuturedCheck {
    pub valid: bool,
    pub problems: Vec<String>,
    pub euler: EulerData,
    pub gamma_components: usize,
}

pub fn euler_data(sc: &SuturedComplex) -> EulerData {
    let gamma = sc.gamma();
    let mut rpm = sc.r_plus();
    rpm.extend(sc.r_minus());
    let sutures: BTreeSet<Cell> = gamma.intersection(&rpm).copied().collect();
    EulerData {
        space: euler_char(&sc.space),
        boundary: euler_of_cells(&sc.boundary()),
        r_plus: euler_of_cells(&sc.r_plus()),
        r_minus: euler_of_cells(&sc.r_minus()),
        gamma: euler_of_cells(&gamma),
        sutures: euler_of_cells(&sutures),
    }
}

/// Combinatorial checks on sutured data; never fails, lists every problem.
pub fn validate_sutured(sc: &SuturedComplex) -> SuturedCheck {
    let x = &sc.space;
    let mut problems = Vec::new();
    if x.top_degree() != 3 {
        problems.push(format!("top degree is {}, expected 3", x.top_degree()));
    }
    match validate_complex(x, &Specialization::Augmentation) {
        Ok(chk) if !chk.valid => problems.push(format!("boundary composites nonzero in degrees {:?}", chk.failing_degrees)),
        Err(e) => problems.push(e.to_string()),
        _ => {}
    }
    for c in x.cells() {
        if let Some(l) = x.label(c) {
            if ![R_PLUS, R_MINUS, GAMMA].contains(&l) {
                problems.push(format!("cell {}:{} has unknown label {l:?}", c.degree, c.index));
            }
        }
    }
    for (name, set) in [(R_PLUS, sc.r_plus()), (R_MINUS, sc.r_minus())] {
        if let Some((c, f)) = x.subcomplex_violation(&set) {
            problems.push(format!(
                "{name} is not a subcomplex: {}:{} has face {}:{}",
                c.degree, c.index, f.degree, f.index
            ));
        }
    }
    let bdry = sc.boundary();
    if let Some((c, f)) = x.subcomplex_violation(&bdry) {
        problems.push(format!(
            "labeled boundary is not closed: {}:{} has unlabeled face {}:{}",
            c.degree, c.index, f.degree, f.index
        ));
    }
    let gamma = sc.gamma();
    let comps = components(x, &gamma);
    for (i, comp) in comps.iter().enumerate() {
        let chi = euler_of_cells(comp);
        if chi != 0 {
            problems.push(format!("gamma component {i} has Euler characteristic {chi}"));
        }
    }
    let euler = euler_data(sc);
    if euler.r_plus + euler.r_minus + euler.gamma - euler.sutures != euler.boundary {
        problems.push("Euler characteristics of R+, R-, gamma do not add up to the boundary".into());
    }
    if euler.boundary != 2 * euler.space {
        problems.push(format!(
            "boundary Euler characteristic {} is not twice that of the space ({})",
            euler.boundary, euler.space
        ));
    }
    for (a, b) in &sc.pairing {
        if a.degree != b.degree || x.label(*a) != Some(R_MINUS) || x.label(*b) != Some(R_PLUS) {
            problems.push(format!(
                "pairing {}:{} -> {}:{} does not match an R- cell to an R+ cell",
                a.degree, a.index, b.degree, b.index
            ));
        }
    }
    SuturedCheck {
        valid: problems.is_empty(),
        problems,
        euler,
        gamma_components: comps.len(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceReport {
    pub balanced: bool,
    pub chi_r_plus: i64,
    pub chi_r_minus: i64,
    /// `χ(M, R-) = χ(M) - χ(R-)`.
    pub chi_pair: i64,
}

impl BalanceReport {
    /// Balanced data must have `χ(M, R-) = 0`.
    pub fn consistent(&self) -> bool {
        !self.balanced || self.chi_pair == 0
    }
}

pub fn is_balanced(sc: &SuturedComplex) -> BalanceReport {
    let e = euler_data(sc);
    BalanceReport {
        balanced: e.r_plus == e.r_minus,
        chi_r_plus: e.r_plus,
        chi_r_minus: e.r_minus,
        chi_pair: e.space - e.r_minus,
    }
}

/// Betti numbers of `(M, R_side)` under `s`.
pub fn pair_betti(sc: &SuturedComplex, side: Side, s: &Specialization) -> Result<BettiVector> {
    betti(&relative_to_cells(&sc.space, &sc.side(side))?, s)
}

/// Injectivity of `H_1(R-) -> H_1(M)` over Q(t) against vanishing of the pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakIsoReport {
    pub source_b1: usize,
    pub image_rank: usize,
    pub kernel_rank: usize,
    pub injective: bool,
    pub pair_b1: usize,
    /// The pair is acyclic in degree 1 exactly when the map is injective.
    pub consistent: bool,
}

pub fn weak_iso_check(sc: &SuturedComplex, phi: &Cocycle) -> Result<WeakIsoReport> {
    if !is_balanced(sc).balanced {
        return Err(Error::Sutured("input is not balanced".into()));
    }
    phi.ensure_valid(sc.space.group())?;
    if phi.is_zero() {
        return Err(Error::ZeroCocycle);
    }
    let s = Specialization::Twist(phi.clone());
    let r = inclusion_ranks(&sc.space, &sc.r_minus(), 1, &s)?;
    let pair_b1 = pair_betti(sc, Side::Minus, &s)?.get(1);
    let injective = r.kernel == 0;
    Ok(WeakIsoReport {
        source_b1: r.source,
        image_rank: r.image,
        kernel_rank: r.kernel,
        injective,
        pair_b1,
        consistent: (pair_b1 == 0) == injective,
    })
}

/// Integer square matrix given row by row.
pub type IntMatrix = Vec<Vec<BigInt>>;

/// Maps `A`, `B` per homological degree; the certificate is `det(A - tB) != 0`
/// in every degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductCertificateInput {
    pub degrees: Vec<(IntMatrix, IntMatrix)>,
}

impl ProductCertificateInput {
    pub fn from_i64(degrees: Vec<(Vec<Vec<i64>>, Vec<Vec<i64>>)>) -> Self {
        let conv = |m: Vec<Vec<i64>>| m.into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect();
        ProductCertificateInput {
            degrees: degrees.into_iter().map(|(a, b)| (conv(a), conv(b))).collect(),
        }
    }

    /// Identity maps on spaces of the given dimensions.
    pub fn identities(dims: &[usize]) -> Self {
        let id = |n: usize| -> Vec<Vec<i64>> {
            (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
        };
        Self::from_i64(dims.iter().map(|&n| (id(n), id(n))).collect())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CertificateReport {
    pub determinants: Vec<LaurentPoly>,
    pub certified: bool,
}

fn square(m: &IntMatrix, n: usize) -> Result<()> {
    for row in m {
        if row.len() != n {
            return Err(Error::NotSquare {
                rows: m.len(),
                cols: row.len(),
            });
        }
    }
    Ok(())
}

/// `det(A - tB)` per degree.
pub fn product_certificate(inp: &ProductCertificateInput) -> Result<CertificateReport> {
    let mut determinants = Vec::with_capacity(inp.degrees.len());
    for (a, b) in &inp.degrees {
        let n = a.len();
        square(a, n)?;
        square(b, n)?;
        if b.len() != n {
            return Err(Error::Dimension(format!("A is {n}x{n} but B has {} rows", b.len())));
        }
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        LaurentPoly::from_coeffs(
                            0,
                            vec![BigRational::from_integer(a[i][j].clone()), BigRational::from_integer(-b[i][j].clone())],
                        )
                    })
                    .collect()
            })
            .collect();
        determinants.push(det_laurent(&LaurentMatrix::from_rows(rows)?)?);
    }
    let certified = determinants.iter().all(|d| !d.is_zero());
    Ok(CertificateReport {
        determinants,
        certified,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfLivesReport {
    pub degree: usize,
    pub boundary_betti: usize,
    pub image_rank: usize,
    pub kernel_rank: usize,
    /// `2 * kernel == boundary Betti number`.
    pub holds: bool,
}

/// Kernel of `H_1(∂W) -> H_1(W)` where `∂W` is the set of labeled cells.
pub fn half_lives_half_dies(w: &EquivariantComplex, s: &Specialization) -> Result<HalfLivesReport> {
    let bdry: BTreeSet<Cell> = w.cells().filter(|&c| w.label(c).is_some()).collect();
    let r = inclusion_ranks(w, &bdry, 1, s)?;
    Ok(HalfLivesReport {
        degree: 1,
        boundary_betti: r.source,
        image_rank: r.image,
        kernel_rank: r.kernel,
        holds: 2 * r.kernel == r.source,
    })
}

/// `b_i(M, R_side ∪ γ)` against `b_{3-i}(M, R_opposite)` for both sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualityReport {
    /// `b(M, R- ∪ γ)` and `b(M, R+)`.
    pub minus_with_gamma: BettiVector,
    pub plus: BettiVector,
    /// `b(M, R+ ∪ γ)` and `b(M, R-)`.
    pub plus_with_gamma: BettiVector,
    pub minus: BettiVector,
    pub holds: bool,
}

fn dual(a: &BettiVector, b: &BettiVector) -> bool {
    let n = a.unnormalized.len().max(b.unnormalized.len());
    let top = n.max(4) - 1;
    (0..=top).all(|i| a.get(i) == b.get(top - i))
}

pub fn duality_check(sc: &SuturedComplex, s: &Specialization) -> Result<DualityReport> {
    let x = &sc.space;
    let minus_with_gamma = betti(&relative_to_cells(x, &sc.side_with_gamma(Side::Minus))?, s)?;
    let plus = pair_betti(sc, Side::Plus, s)?;
    let plus_with_gamma = betti(&relative_to_cells(x, &sc.side_with_gamma(Side::Plus))?, s)?;
    let minus = pair_betti(sc, Side::Minus, s)?;
    let holds = dual(&minus_with_gamma, &plus) && dual(&plus_with_gamma, &minus);
    Ok(DualityReport {
        minus_with_gamma,
        plus,
        plus_with_gamma,
        minus,
        holds,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// Twisted homology of `(M, R-)` vanishes for this cocycle.
    CertifiedVanishing,
    /// Nothing computed contradicts tautness.
    ConsistentWithTaut,
    /// Twisted homology is nonzero although a product certificate was given.
    Obstructed,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::CertifiedVanishing => "certified vanishing for phi",
            Verdict::ConsistentWithTaut => "consistent with taut",
            Verdict::Obstructed => "obstructed",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TautReport {
    pub verdict: Verdict,
    pub phi: Cocycle,
    pub flags: DeclaredFlags,
    pub twisted_betti: BettiVector,
    pub approx: ApproxSequence,
    pub certificate: Option<CertificateReport>,
    /// A certificate claims vanishing while twisted homology is nonzero.
    pub contradiction: bool,
}

/// Aggregates twisted pair Betti numbers, cover approximations and an
/// optional product certificate for `(M, R-)`.
///
/// The certified verdict concerns the twisted coefficients of `phi` only.
pub fn taut_certify(
    sc: &SuturedComplex,
    phi: &Cocycle,
    sched: &QuotientSchedule,
    certificate: Option<&ProductCertificateInput>,
) -> Result<TautReport> {
    let check = validate_sutured(sc);
    if !check.valid {
        return Err(Error::Sutured(format!("validation failed: {}", check.problems.join("; "))));
    }
    if !is_balanced(sc).balanced {
        return Err(Error::Sutured("input is not balanced".into()));
    }
    if !sc.flags.all_true() {
        return Err(Error::Sutured(format!(
            "declared hypotheses are false: {}",
            sc.flags.false_names().join(", ")
        )));
    }
    phi.ensure_valid(sc.space.group())?;
    if phi.is_zero() {
        return Err(Error::ZeroCocycle);
    }
    let pair = relative_to_cells(&sc.space, &sc.r_minus())?;
    let ((twisted, approx), cert) = rayon::join(
        || {
            rayon::join(
                || betti(&pair, &Specialization::Twist(phi.clone())),
                || approximate(&pair, sched),
            )
        },
        || certificate.map(product_certificate).transpose(),
    );
    let (twisted_betti, approx, certificate) = (twisted?, approx?, cert?);
    let vanishing = twisted_betti.is_zero();
    let verdict = match (&certificate, vanishing) {
        (_, true) => Verdict::CertifiedVanishing,
        (Some(_), false) => Verdict::Obstructed,
        (None, false) => Verdict::ConsistentWithTaut,
    };
    let contradiction = !vanishing && certificate.as_ref().is_some_and(|c| c.certified);
    Ok(TautReport {
        verdict,
        phi: phi.clone(),
        flags: sc.flags,
        twisted_betti,
        approx,
        certificate,
        contradiction,
    })
}

/// `b_2 - (χ(S) - χ(R+)) / 2`.
pub fn norm_gap(chi_s: i64, chi_r_plus: i64, b2: &BigRational) -> BigRational {
    b2 - BigRational::new(BigInt::from(chi_s - chi_r_plus), BigInt::from(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn certificate_examples() {
        let id = ProductCertificateInput::identities(&[2]);
        let rep = product_certificate(&id).unwrap();
        assert!(rep.certified);
        assert_eq!(rep.determinants[0], LaurentPoly::from_integers(0, &[1, -2, 1]));

        let swap = ProductCertificateInput::from_i64(vec![(vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 0]])]);
        let rep = product_certificate(&swap).unwrap();
        assert_eq!(rep.determinants[0], LaurentPoly::from_integers(0, &[1, 0, -1]));

        let ones = ProductCertificateInput::from_i64(vec![(vec![vec![1, 1], vec![1, 1]], vec![vec![1, 1], vec![1, 1]])]);
        let rep = product_certificate(&ones).unwrap();
        assert!(rep.determinants[0].is_zero());
        assert!(!rep.certified);

        let ragged = ProductCertificateInput::from_i64(vec![(vec![vec![1, 0]], vec![vec![1, 0]])]);
        assert!(matches!(product_certificate(&ragged), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn norm_gap_examples() {
        assert_eq!(norm_gap(-1, -1, &r(0, 1)), r(0, 1));
        assert_eq!(norm_gap(-4, -2, &r(0, 1)), r(1, 1));
        assert_eq!(norm_gap(0, 0, &r(1, 2)), r(1, 2));
    }

    #[test]
    fn side_parsing() {
        assert_eq!("minus".parse::<Side>().unwrap(), Side::Minus);
        assert_eq!("plus".parse::<Side>().unwrap().opposite(), Side::Minus);
        assert!("up".parse::<Side>().is_err());
    }
}
