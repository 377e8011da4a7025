//! Finite covers: cyclic quotient schedules, normalized Betti sequences and
//! their comparison with twisted Betti numbers, and explicit cover complexes.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::chain::{betti, twisted_betti, BettiVector, EquivariantComplex};
use crate::error::{Error, Result};
use crate::group_ring::{Cocycle, FiniteQuotient, FpGroup, GroupRingElement, GroupRingMatrix, Specialization, Word};

/// Cyclic cover degrees used when no schedule is given.
pub const DEFAULT_CYCLIC: [usize; 7] = [1, 2, 4, 8, 16, 32, 64];

/// `g -> (k-cycle)^phi(g)`, the quotient through `Z/k` along `phi`.
pub fn cyclic_quotient(phi: &Cocycle, k: usize) -> Result<FiniteQuotient> {
    if k == 0 {
        return Err(Error::Schedule("cyclic degree must be positive".into()));
    }
    let kk = k as i64;
    let perms = phi
        .values()
        .iter()
        .map(|&v| (0..k).map(|p| (p as i64 + v).rem_euclid(kk) as usize).collect())
        .collect();
    FiniteQuotient::new(k, perms)
}

/// An ordered list of finite quotients with strictly increasing degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientSchedule {
    items: Vec<FiniteQuotient>,
    cyclic: Option<Cocycle>,
}

impl QuotientSchedule {
    pub fn new(items: Vec<FiniteQuotient>) -> Result<Self> {
        check_increasing(items.iter().map(FiniteQuotient::degree))?;
        Ok(QuotientSchedule { items, cyclic: None })
    }

    /// Cyclic quotients along `phi` of the given degrees.
    pub fn cyclic(phi: &Cocycle, degrees: &[usize]) -> Result<Self> {
        check_increasing(degrees.iter().copied())?;
        let items = degrees
            .iter()
            .map(|&k| cyclic_quotient(phi, k))
            .collect::<Result<Vec<_>>>()?;
        Ok(QuotientSchedule {
            items,
            cyclic: Some(phi.clone()),
        })
    }

    pub fn items(&self) -> &[FiniteQuotient] {
        &self.items
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.items.iter().map(FiniteQuotient::degree).collect()
    }

    /// The cocycle this schedule was generated from, if it is cyclic.
    pub fn cyclic_cocycle(&self) -> Option<&Cocycle> {
        self.cyclic.as_ref()
    }

    /// Checks every item against `group`, reporting the first bad index.
    pub fn ensure_valid(&self, group: &FpGroup) -> Result<()> {
        for (index, q) in self.items.iter().enumerate() {
            q.ensure_valid(group).map_err(|e| Error::ScheduleItem {
                index,
                source: Box::new(e),
            })?;
        }
        Ok(())
    }
}

fn check_increasing(degrees: impl Iterator<Item = usize>) -> Result<()> {
    let mut last = 0;
    for k in degrees {
        if k == 0 {
            return Err(Error::Schedule("degrees must be positive".into()));
        }
        if k <= last {
            return Err(Error::Schedule(format!("degrees must increase strictly ({last} then {k})")));
        }
        last = k;
    }
    Ok(())
}

/// Parses `cyclic:a,b,c` or `cyclic:a..b`; the range form doubles from `a`
/// and always ends at `b`.
pub fn parse_cyclic_schedule(text: &str) -> Result<Vec<usize>> {
    let body = text
        .strip_prefix("cyclic:")
        .ok_or_else(|| Error::Schedule(format!("expected 'cyclic:' prefix in {text:?}")))?;
    let num = |s: &str| -> Result<usize> {
        s.trim()
            .parse::<usize>()
            .map_err(|_| Error::Schedule(format!("bad degree {s:?}")))
    };
    let degrees = if let Some((a, b)) = body.split_once("..") {
        let (a, b) = (num(a)?, num(b)?);
        if a == 0 || a > b {
            return Err(Error::Schedule(format!("bad range {a}..{b}")));
        }
        let mut out = Vec::new();
        let mut k = a;
        while k < b {
            out.push(k);
            k *= 2;
        }
        out.push(b);
        out
    } else {
        body.split(',').map(num).collect::<Result<Vec<_>>>()?
    };
    check_increasing(degrees.iter().copied())?;
    Ok(degrees)
}

/// One schedule item: the quotient degree and the Betti numbers of the cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxItem {
    pub degree: usize,
    pub betti: BettiVector,
}

/// Least-squares fit of `b = L + c/k` over the last items of a sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LimitEstimate {
    /// `L` per homological degree.
    pub limit: Vec<BigRational>,
    /// `c` per homological degree.
    pub slope: Vec<BigRational>,
    /// `residuals[i][p]` for the i-th fitted item.
    pub residuals: Vec<Vec<BigRational>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproxSequence {
    pub items: Vec<ApproxItem>,
    pub limit: Option<LimitEstimate>,
}

impl ApproxSequence {
    pub fn normalized(&self) -> Vec<Vec<BigRational>> {
        self.items.iter().map(|it| it.betti.normalized()).collect()
    }

    /// Differences of normalized values between consecutive items.
    pub fn deltas(&self) -> Vec<Vec<BigRational>> {
        let norm = self.normalized();
        norm.windows(2)
            .map(|w| w[1].iter().zip(&w[0]).map(|(b, a)| b - a).collect())
            .collect()
    }

    pub fn last(&self) -> Option<&ApproxItem> {
        self.items.last()
    }
}

/// Exact Betti numbers of every cover in the schedule, in schedule order.
pub fn approximate(x: &EquivariantComplex, sched: &QuotientSchedule) -> Result<ApproxSequence> {
    sched.ensure_valid(x.group())?;
    let items = sched
        .items
        .par_iter()
        .enumerate()
        .map(|(index, q)| {
            betti(x, &Specialization::Quotient(q.clone()))
                .map(|b| ApproxItem {
                    degree: q.degree(),
                    betti: b,
                })
                .map_err(|e| Error::ScheduleItem {
                    index,
                    source: Box::new(e),
                })
        })
        .collect::<Result<Vec<_>>>()?;
    let limit = fit_limit(&items);
    Ok(ApproxSequence { items, limit })
}

fn fit_limit(items: &[ApproxItem]) -> Option<LimitEstimate> {
    if items.len() < 2 {
        return None;
    }
    let tail = &items[items.len().saturating_sub(3)..];
    let n = BigRational::from_integer(BigInt::from(tail.len()));
    let xs: Vec<BigRational> = tail
        .iter()
        .map(|it| BigRational::new(1.into(), BigInt::from(it.degree)))
        .collect();
    let sx: BigRational = xs.iter().sum();
    let sxx: BigRational = xs.iter().map(|x| x * x).sum();
    let den = &n * &sxx - &sx * &sx;
    let top = tail[0].betti.unnormalized.len();
    let ys: Vec<Vec<BigRational>> = tail.iter().map(|it| it.betti.normalized()).collect();
    let mut limit = Vec::with_capacity(top);
    let mut slope = Vec::with_capacity(top);
    for p in 0..top {
        let sy: BigRational = ys.iter().map(|y| y[p].clone()).sum();
        let sxy: BigRational = xs.iter().zip(&ys).map(|(x, y)| x * &y[p]).sum();
        let c = (&n * &sxy - &sx * &sy) / &den;
        let l = (&sy - &c * &sx) / &n;
        limit.push(l);
        slope.push(c);
    }
    let residuals = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (0..top).map(|p| &y[p] - (&limit[p] + &slope[p] * x)).collect())
        .collect();
    Some(LimitEstimate {
        limit,
        slope,
        residuals,
    })
}

/// Per-degree comparison of cyclic-cover Betti numbers with twisted ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedComparison {
    pub twisted: BettiVector,
    pub sequence: ApproxSequence,
    /// `gaps[i][p] = |normalized b_p at item i - twisted b_p|`.
    pub gaps: Vec<Vec<BigRational>>,
    pub k_max: usize,
    /// Every final gap is at most `2 / k_max`.
    pub converged: bool,
}

impl TwistedComparison {
    pub fn final_gaps(&self) -> &[BigRational] {
        self.gaps.last().map(Vec::as_slice).unwrap_or(&[])
    }
}

pub fn compare_with_twisted(x: &EquivariantComplex, phi: &Cocycle, sched: &QuotientSchedule) -> Result<TwistedComparison> {
    phi.ensure_valid(x.group())?;
    if phi.is_zero() {
        return Err(Error::ZeroCocycle);
    }
    if !phi.is_primitive() {
        return Err(Error::NotPrimitive(phi.content()));
    }
    if sched.cyclic_cocycle() != Some(phi) {
        return Err(Error::Schedule("comparison needs a cyclic schedule built from the same cocycle".into()));
    }
    if sched.items().is_empty() {
        return Err(Error::Schedule("empty schedule".into()));
    }
    let twisted = twisted_betti(x, phi)?;
    let sequence = approximate(x, sched)?;
    let tw: Vec<BigRational> = twisted.normalized();
    let gaps: Vec<Vec<BigRational>> = sequence
        .normalized()
        .iter()
        .map(|row| row.iter().zip(&tw).map(|(a, b)| (a - b).abs()).collect())
        .collect();
    let k_max = sched.degrees().into_iter().max().unwrap_or(1);
    let bound = BigRational::new(2.into(), BigInt::from(k_max));
    let converged = gaps.last().is_some_and(|g| g.iter().all(|v| v <= &bound));
    Ok(TwistedComparison {
        twisted,
        sequence,
        gaps,
        k_max,
        converged,
    })
}

/// The cover of a complex attached to a transitive finite quotient, written
/// again as a free complex over the group ring of the cover's fundamental
/// group (presented by Reidemeister–Schreier).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverComplex {
    /// Cell `c` of degree d over sheet `p` has index `c * degree + p`.
    pub complex: EquivariantComplex,
    /// Coset representative words, indexed by sheet.
    pub transversal: Vec<Word>,
    /// Schreier generator `i` is `transversal[p] * x * transversal[p.x]^-1`
    /// for `schreier[i] = (p, x)`.
    pub schreier: Vec<(usize, usize)>,
}

struct Rewriter<'a> {
    q: &'a FiniteQuotient,
    transversal: Vec<Word>,
    index: BTreeMap<(usize, usize), usize>,
    schreier: Vec<(usize, usize)>,
}

impl<'a> Rewriter<'a> {
    fn new(q: &'a FiniteQuotient) -> Self {
        let k = q.degree();
        let m = q.generator_count();
        let mut transversal: Vec<Option<Word>> = vec![None; k];
        transversal[0] = Some(Word::identity());
        let mut queue = VecDeque::from([0usize]);
        while let Some(p) = queue.pop_front() {
            let tp = transversal[p].clone().expect("visited");
            for letter in (1..=m as i32).chain((1..=m as i32).map(|l| -l)) {
                let r = q.act_letter(p, letter);
                if transversal[r].is_none() {
                    transversal[r] = Some(tp.mul(&Word::new(vec![letter])));
                    queue.push_back(r);
                }
            }
        }
        let transversal: Vec<Word> = transversal.into_iter().map(|t| t.expect("transitive")).collect();
        let mut index = BTreeMap::new();
        let mut schreier = Vec::new();
        for p in 0..k {
            for g in 1..=m {
                let r = q.act_letter(p, g as i32);
                let w = transversal[p].mul(&Word::generator(g)).mul(&transversal[r].inverse());
                if !w.is_empty() {
                    index.insert((p, g), schreier.len());
                    schreier.push((p, g));
                }
            }
        }
        Rewriter {
            q,
            transversal,
            index,
            schreier,
        }
    }

    /// Rewrites `w` read from sheet `p` in Schreier generators; returns the
    /// word and the end sheet.
    fn rewrite(&self, mut p: usize, w: &Word) -> (Word, usize) {
        let mut out = Vec::new();
        for &l in w.letters() {
            let g = l.unsigned_abs() as usize;
            if l > 0 {
                if let Some(&i) = self.index.get(&(p, g)) {
                    out.push(i as i32 + 1);
                }
                p = self.q.act_letter(p, l);
            } else {
                p = self.q.act_letter(p, l);
                if let Some(&i) = self.index.get(&(p, g)) {
                    out.push(-(i as i32 + 1));
                }
            }
        }
        (Word::new(out).reduced(), p)
    }

    fn schreier_word(&self, i: usize) -> Word {
        let (p, g) = self.schreier[i];
        let r = self.q.act_letter(p, g as i32);
        self.transversal[p].mul(&Word::generator(g)).mul(&self.transversal[r].inverse())
    }
}

/// Builds the cover of `x` attached to the transitive quotient `q`.
pub fn lift_to_cover(x: &EquivariantComplex, q: &FiniteQuotient) -> Result<CoverComplex> {
    q.ensure_valid(x.group())?;
    if !q.is_transitive() {
        return Err(Error::MalformedQuotient("cover construction needs a transitive quotient".into()));
    }
    let k = q.degree();
    let rw = Rewriter::new(q);
    let gens = rw.schreier.len();
    let mut relators = Vec::new();
    for p in 0..k {
        for r in x.group().relators() {
            let (w, _) = rw.rewrite(p, r);
            if !w.is_empty() {
                relators.push(w);
            }
        }
    }
    let group = FpGroup::new(gens, relators)?;
    let mut boundaries = Vec::with_capacity(x.top_degree());
    for d in 1..=x.top_degree() {
        let b = x.boundary(d);
        let mut m = GroupRingMatrix::zeros(b.rows() * k, b.cols() * k);
        for (i, j, e) in b.nonzero() {
            for p in 0..k {
                for (w, c) in e.terms() {
                    let (h, end) = rw.rewrite(p, w);
                    m.add_to(i * k + end, j * k + p, &GroupRingElement::monomial(c.clone(), h));
                }
            }
        }
        boundaries.push(m);
    }
    let counts = x.cell_counts().iter().map(|&n| n * k).collect();
    let labels = x
        .labels()
        .iter()
        .map(|row| row.iter().flat_map(|l| std::iter::repeat_n(l.clone(), k)).collect())
        .collect();
    let complex = EquivariantComplex::with_labels(group, counts, boundaries, labels)?;
    Ok(CoverComplex {
        complex,
        transversal: rw.transversal.clone(),
        schreier: rw.schreier.clone(),
    })
}

/// A sheet map `fine -> coarse` commuting with the action, if one exists.
pub fn factor_map(coarse: &FiniteQuotient, fine: &FiniteQuotient) -> Result<Vec<usize>> {
    let refusal = || Error::NotRefining {
        coarse: coarse.degree(),
        fine: fine.degree(),
    };
    if coarse.generator_count() != fine.generator_count() {
        return Err(refusal());
    }
    let m = fine.generator_count() as i32;
    let mut map = vec![usize::MAX; fine.degree()];
    for start in 0..fine.degree() {
        if map[start] != usize::MAX {
            continue;
        }
        let orbit = fine.orbit(start);
        let found = (0..coarse.degree()).find_map(|target| {
            let mut trial = map.clone();
            trial[start] = target;
            let mut queue = VecDeque::from([start]);
            while let Some(s) = queue.pop_front() {
                for l in (1..=m).chain((1..=m).map(|l| -l)) {
                    let (t, img) = (fine.act_letter(s, l), coarse.act_letter(trial[s], l));
                    if trial[t] == usize::MAX {
                        trial[t] = img;
                        queue.push_back(t);
                    } else if trial[t] != img {
                        return None;
                    }
                }
            }
            Some(trial)
        });
        match found {
            Some(trial) => {
                for s in orbit {
                    map[s] = trial[s];
                }
            }
            None => return Err(refusal()),
        }
    }
    Ok(map)
}

/// Restriction of `fine` to the subgroup of a cover built from `coarse`,
/// acting on the fibre of the factor map over sheet 0.
pub fn restrict_to_cover(cover: &CoverComplex, coarse: &FiniteQuotient, fine: &FiniteQuotient) -> Result<FiniteQuotient> {
    let map = factor_map(coarse, fine)?;
    let fibre: Vec<usize> = (0..fine.degree()).filter(|&s| map[s] == 0).collect();
    let pos: BTreeMap<usize, usize> = fibre.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let rw = Rewriter::new(coarse);
    let perms = (0..cover.schreier.len())
        .map(|i| {
            let w = rw.schreier_word(i);
            fibre.iter().map(|&s| pos[&fine.act(s, &w)]).collect()
        })
        .collect();
    FiniteQuotient::new(fibre.len(), perms)
}

/// Betti numbers of a fine cover computed directly and as a cover of an
/// intermediate cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicativityReport {
    pub direct: BettiVector,
    pub via_cover: BettiVector,
    pub intermediate: BettiVector,
    /// Index of the fine cover over the intermediate one.
    pub ratio: usize,
    pub euler_scales: bool,
    pub equal: bool,
}

pub fn check_multiplicativity(x: &EquivariantComplex, coarse: &FiniteQuotient, fine: &FiniteQuotient) -> Result<MultiplicativityReport> {
    coarse.ensure_valid(x.group())?;
    fine.ensure_valid(x.group())?;
    if !fine.degree().is_multiple_of(coarse.degree()) {
        return Err(Error::NotRefining {
            coarse: coarse.degree(),
            fine: fine.degree(),
        });
    }
    let cover = lift_to_cover(x, coarse)?;
    let restricted = restrict_to_cover(&cover, coarse, fine)?;
    let direct = betti(x, &Specialization::Quotient(fine.clone()))?;
    let via_cover = betti(&cover.complex, &Specialization::Quotient(restricted))?;
    let intermediate = betti(x, &Specialization::Quotient(coarse.clone()))?;
    let ratio = fine.degree() / coarse.degree();
    let euler_scales = direct.euler() == ratio as i64 * intermediate.euler();
    let equal = direct.unnormalized == via_cover.unnormalized;
    Ok(MultiplicativityReport {
        direct,
        via_cover,
        intermediate,
        ratio,
        euler_scales,
        equal,
    })
}

/// True iff every value is zero.
pub fn is_zero_row(v: &[BigRational]) -> bool {
    v.iter().all(Zero::is_zero)
}
