use std::collections::{BTreeMap, BTreeSet};

use crate::chain::{betti, euler_of_cells, relative_to_cells, BettiVector, Cell, EquivariantComplex};
use crate::error::{Error, Result};
use crate::group_ring::{FpGroup, GroupRingMatrix, Specialization, Word};
use crate::sutured::{complexity, components, validate_sutured, Side, SuturedComplex, GAMMA};

/// Generator renaming for copy `c` of a group with `n` generators.
fn shift_map(n: usize, c: usize) -> Vec<i32> {
    (0..n).map(|g| (c * n + g) as i32 + 1).collect()
}

/// Distinct words occurring in the boundary columns of `cells`.
fn words_of(x: &EquivariantComplex, cells: &BTreeSet<Cell>) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    for c in cells {
        if c.degree == 0 {
            continue;
        }
        let b = x.boundary(c.degree);
        for i in 0..b.rows() {
            for (w, _) in b.get(i, c.index).terms() {
                if !w.is_empty() {
                    out.insert(w.clone());
                }
            }
        }
    }
    out
}

/// `M ∪ M` glued along `R+` and along `R-`, with every remaining boundary
/// cell labeled `gamma`.
///
/// The two copies get separate generators; gluing along `R-` identifies the
/// words read on `R-` in both copies, and gluing along `R+` does the same up to
/// conjugation by a new stable letter, which also multiplies every
/// copy-2 coefficient on an `R+` cell.
pub fn double(sc: &SuturedComplex) -> Result<SuturedComplex> {
    let chk = validate_sutured(sc);
    if !chk.valid {
        return Err(Error::Sutured(format!("validation failed: {}", chk.problems.join("; "))));
    }
    let x = &sc.space;
    let (rp, rm) = (sc.r_plus(), sc.r_minus());
    if rp.is_empty() && rm.is_empty() {
        return Err(Error::Builder("R+ and R- are both empty; the double is a disjoint union".into()));
    }
    for (name, set) in [("R+", &rp), ("R-", &rm)] {
        if !set.is_empty() && components(x, set).len() != 1 {
            return Err(Error::Builder(format!("{name} must be connected to be glued")));
        }
    }
    let shared: BTreeSet<Cell> = rp.union(&rm).copied().collect();
    let n = x.group().generator_count();
    let (one, two) = (shift_map(n, 0), shift_map(n, 1));
    let stable = 2 * n + 1;
    let s_word = Word::generator(stable);
    let generators = if rp.is_empty() { 2 * n } else { stable };

    let mut relators: Vec<Word> = Vec::new();
    for r in x.group().relators() {
        relators.push(r.rename(&one));
        relators.push(r.rename(&two));
    }
    for w in words_of(x, &rm) {
        relators.push(w.rename(&one).mul(&w.rename(&two).inverse()));
    }
    for w in words_of(x, &rp) {
        relators.push(s_word.mul(&w.rename(&one)).mul(&s_word.inverse()).mul(&w.rename(&two).inverse()));
    }
    let relators: Vec<Word> = relators
        .into_iter()
        .filter(|r| !r.reduced().is_empty())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let group = FpGroup::new(generators, relators)?;

    let top = x.top_degree();
    let mut second: Vec<Vec<Option<usize>>> = Vec::with_capacity(top + 1);
    let mut counts = Vec::with_capacity(top + 1);
    for d in 0..=top {
        let mut next = x.cell_count(d);
        let row = (0..x.cell_count(d))
            .map(|i| {
                if shared.contains(&Cell::new(d, i)) {
                    None
                } else {
                    next += 1;
                    Some(next - 1)
                }
            })
            .collect();
        second.push(row);
        counts.push(next);
    }
    let index2 = |c: Cell| second[c.degree][c.index].unwrap_or(c.index);

    let mut boundaries = Vec::with_capacity(top);
    for d in 1..=top {
        let mut m = GroupRingMatrix::zeros(counts[d - 1], counts[d]);
        for (i, j, e) in x.boundary(d).nonzero() {
            m.set(i, j, e.map_words(|w| w.rename(&one)));
            if let Some(j2) = second[d][j] {
                let row = Cell::new(d - 1, i);
                let mut e2 = e.map_words(|w| w.rename(&two));
                if rp.contains(&row) {
                    e2 = e2.mul_word_right(&s_word);
                }
                m.add_to(index2(row), j2, &e2);
            }
        }
        boundaries.push(m);
    }

    let gamma = sc.gamma();
    let mut labels: Vec<Vec<Option<String>>> = counts.iter().map(|&c| vec![None; c]).collect();
    for c in x.cells() {
        let keep = if shared.contains(&c) {
            gamma.contains(&c)
        } else {
            x.label(c) == Some(GAMMA)
        };
        if keep {
            labels[c.degree][c.index] = Some(GAMMA.to_string());
            labels[c.degree][index2(c)] = Some(GAMMA.to_string());
        }
    }
    let space = EquivariantComplex::with_labels(group, counts, boundaries, labels)?;
    Ok(SuturedComplex::new(space, sc.flags))
}

/// Checks that `pairing` is a bijection `R- -> R+` under which boundaries agree.
fn check_pairing(sc: &SuturedComplex, pairing: &[(Cell, Cell)]) -> Result<BTreeMap<Cell, Cell>> {
    let x = &sc.space;
    let (rm, rp) = (sc.r_minus(), sc.r_plus());
    let fwd: BTreeMap<Cell, Cell> = pairing.iter().copied().collect();
    let images: BTreeSet<Cell> = pairing.iter().map(|p| p.1).collect();
    let domain: BTreeSet<Cell> = fwd.keys().copied().collect();
    if domain != rm || images != rp || fwd.len() != pairing.len() {
        return Err(Error::Builder("pairing must be a bijection from R- cells onto R+ cells".into()));
    }
    for (&a, &b) in &fwd {
        if a.degree != b.degree {
            return Err(Error::Builder("paired cells differ in degree".into()));
        }
        if a.degree == 0 {
            continue;
        }
        let m = x.boundary(a.degree);
        for i in 0..m.rows() {
            let face = Cell::new(a.degree - 1, i);
            let ea = m.get(i, a.index);
            if ea.is_zero() {
                continue;
            }
            match fwd.get(&face) {
                Some(img) if m.get(img.index, b.index) == ea => {}
                _ => return Err(Error::Builder("the two copies of the gluing surface are not isomorphic".into())),
            }
        }
        let count_a = (0..m.rows()).filter(|&i| !m.get(i, a.index).is_zero()).count();
        let count_b = (0..m.rows()).filter(|&i| !m.get(i, b.index).is_zero()).count();
        if count_a != count_b {
            return Err(Error::Builder("the two copies of the gluing surface are not isomorphic".into()));
        }
    }
    Ok(fwd)
}

/// `X_n`: `2n + 1` copies of `M`, copy `k + 1` glued by its `R-` to the `R+`
/// of copy `k`.
///
/// Cells carry the label `L<m>` for the smallest `m` with the cell in `X_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tower {
    pub complex: EquivariantComplex,
    pub levels: usize,
}

pub fn level_label(m: usize) -> String {
    format!("L{m}")
}

impl Tower {
    /// Cells of `X_m`.
    pub fn upto(&self, m: usize) -> BTreeSet<Cell> {
        let names: Vec<String> = (0..=m).map(level_label).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        self.complex.cells_labeled(&refs)
    }
}

pub fn tower(sc: &SuturedComplex, pairing: &[(Cell, Cell)], n: usize) -> Result<Tower> {
    let fwd = check_pairing(sc, pairing)?;
    let x = &sc.space;
    let rp = sc.r_plus();
    let copies = 2 * n + 1;
    let ng = x.group().generator_count();
    let maps: Vec<Vec<i32>> = (0..copies).map(|c| shift_map(ng, c)).collect();

    let mut relators = Vec::new();
    for map in &maps {
        relators.extend(x.group().relators().iter().map(|r| r.rename(map)));
    }
    let glue_words = words_of(x, &rp);
    for c in 0..copies - 1 {
        for w in &glue_words {
            let r = w.rename(&maps[c]).mul(&w.rename(&maps[c + 1]).inverse());
            if !r.is_empty() {
                relators.push(r);
            }
        }
    }
    let group = FpGroup::new(copies * ng, relators)?;

    let level = |c: usize| (c as i64 - n as i64).unsigned_abs() as usize;
    let top = x.top_degree();
    let mut counts = vec![0usize; top + 1];
    let mut index: Vec<BTreeMap<Cell, usize>> = vec![BTreeMap::new(); copies];
    let mut labels: Vec<Vec<Option<String>>> = vec![Vec::new(); top + 1];
    for c in 0..copies {
        for cell in x.cells() {
            if c > 0 && fwd.contains_key(&cell) {
                let shared = index[c - 1][&fwd[&cell]];
                index[c].insert(cell, shared);
                continue;
            }
            let mut lv = level(c);
            if rp.contains(&cell) && c + 1 < copies {
                lv = lv.min(level(c + 1));
            }
            index[c].insert(cell, counts[cell.degree]);
            counts[cell.degree] += 1;
            labels[cell.degree].push(Some(level_label(lv)));
        }
    }
    let mut boundaries = Vec::with_capacity(top);
    for d in 1..=top {
        let mut m = GroupRingMatrix::zeros(counts[d - 1], counts[d]);
        for c in 0..copies {
            for (i, j, e) in x.boundary(d).nonzero() {
                let col = Cell::new(d, j);
                if c > 0 && fwd.contains_key(&col) {
                    continue;
                }
                let row = index[c][&Cell::new(d - 1, i)];
                m.set(row, index[c][&col], e.map_words(|w| w.rename(&maps[c])));
            }
        }
        boundaries.push(m);
    }
    let complex = EquivariantComplex::with_labels(group, counts, boundaries, labels)?;
    Ok(Tower { complex, levels: n })
}

/// Rational homology along the tower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerReport {
    pub n: usize,
    pub betti: BettiVector,
    /// `b(X_n, X_{n-1})`, equal to `b(X_0)` when `n = 0`.
    pub relative: BettiVector,
    /// `b(M, R-) + b(M, R+)` degreewise, the value excision predicts for `n >= 1`.
    pub excision: Option<Vec<usize>>,
    pub excision_holds: bool,
    pub sigma_euler: i64,
    pub sigma_complexity: usize,
    /// `b_1(X_n) - b_0(X_n)`.
    pub norm_estimate: i64,
}

pub fn tower_report(sc: &SuturedComplex, pairing: &[(Cell, Cell)], n: usize) -> Result<TowerReport> {
    let t = tower(sc, pairing, n)?;
    let q = Specialization::Augmentation;
    let b = betti(&t.complex, &q)?;
    let (relative, excision) = if n == 0 {
        (b.clone(), None)
    } else {
        let rel = betti(&relative_to_cells(&t.complex, &t.upto(n - 1))?, &q)?;
        let minus = betti(&relative_to_cells(&sc.space, &sc.side(Side::Minus))?, &q)?;
        let plus = betti(&relative_to_cells(&sc.space, &sc.side(Side::Plus))?, &q)?;
        let sum = (0..minus.unnormalized.len()).map(|d| minus.get(d) + plus.get(d)).collect();
        (rel, Some(sum))
    };
    let excision_holds = excision.as_ref().is_none_or(|e| *e == relative.unnormalized);
    let sigma = sc.r_minus();
    Ok(TowerReport {
        n,
        norm_estimate: b.get(1) as i64 - b.get(0) as i64,
        betti: b,
        relative,
        excision,
        excision_holds,
        sigma_euler: euler_of_cells(&sigma),
        sigma_complexity: complexity(&sc.space, &sigma),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::cw2::surface;
    use crate::builders::product::{mapping_torus, product_with_interval, MonodromySpec};
    use crate::chain::euler_char;
    use crate::sutured::{is_balanced, DeclaredFlags};

    fn aug(x: &EquivariantComplex) -> Vec<usize> {
        betti(x, &Specialization::Augmentation).unwrap().unnormalized
    }

    #[test]
    fn double_of_torus_product() {
        let sc = product_with_interval(&surface(1, 0).unwrap()).unwrap();
        let d = double(&sc).unwrap();
        assert_eq!(euler_char(&d.space), 0);
        assert_eq!(aug(&d.space), vec![1, 3, 3, 1]);
        assert!(validate_sutured(&d).valid);
        assert!(d.boundary().is_empty());
    }

    #[test]
    fn double_with_sutures() {
        let sc = product_with_interval(&surface(1, 1).unwrap()).unwrap();
        let d = double(&sc).unwrap();
        let chk = validate_sutured(&d);
        assert!(chk.valid, "{:?}", chk.problems);
        // F x S^1 for the once-punctured torus; boundary is one torus
        assert_eq!(aug(&d.space), vec![1, 3, 2, 0]);
        assert_eq!(chk.gamma_components, 1);
        assert_eq!(euler_char(&d.space), 2 * euler_char(&sc.space) - -2);
        assert!(is_balanced(&d).balanced);
    }

    #[test]
    fn double_needs_r_sides() {
        let (x, _) = mapping_torus(&surface(0, 1).unwrap(), &MonodromySpec::identity(1)).unwrap();
        let sc = SuturedComplex::new(x, DeclaredFlags::all(true));
        assert!(matches!(double(&sc), Err(Error::Builder(_))));
    }

    #[test]
    fn tower_of_products() {
        let sc = product_with_interval(&surface(1, 1).unwrap()).unwrap();
        let t0 = tower(&sc, &sc.pairing, 0).unwrap();
        assert_eq!(t0.complex.cell_counts(), sc.space.cell_counts());
        for n in 0..3 {
            let rep = tower_report(&sc, &sc.pairing, n).unwrap();
            assert_eq!(rep.betti.unnormalized, vec![1, 2, 0, 0]);
            assert!(rep.excision_holds);
            assert_eq!(rep.norm_estimate, 1);
            assert_eq!(rep.sigma_complexity, 1);
            let chi = euler_char(&tower(&sc, &sc.pairing, n).unwrap().complex);
            assert_eq!(chi, (2 * n as i64 + 1) * euler_char(&sc.space) - 2 * n as i64 * rep.sigma_euler);
        }
    }

    #[test]
    fn tower_rejects_mismatched_pairing() {
        let sc = product_with_interval(&surface(1, 0).unwrap()).unwrap();
        let mut bad = sc.pairing.clone();
        let k = bad.iter().position(|p| p.0.degree == 1).unwrap();
        let l = bad.iter().rposition(|p| p.0.degree == 1).unwrap();
        let (a, b) = (bad[k].1, bad[l].1);
        bad[k].1 = b;
        bad[l].1 = a;
        assert!(matches!(tower(&sc, &bad, 1), Err(Error::Builder(_))));
        assert!(tower(&sc, &sc.pairing[1..], 1).is_err());
    }
}
