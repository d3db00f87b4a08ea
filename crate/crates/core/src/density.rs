//! Packing, covering and tiling predicates and asymptotic uniform upper
//! density (a.u.u.d.) in the two settings where it has a closed form.
//!
//! * On a finite group with probability Haar measure the a.u.u.d. of a set
//!   `Lambda` equals its cardinality `#Lambda`.
//! * For a periodic set `Lambda = R + pZ` of integers every window of length
//!   `L` holds `L #R / p + O(1)` points, uniformly in the window position, so
//!   both the lim sup and the inf-sup definition give `#R / p`.
//!
//! The general inf-sup over compact sets is not computed.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::group::{difference_set, Group, Subset};

pub type Rational = Ratio<u64>;

/// `(Lambda - Lambda) ∩ (H - H) ⊆ {0}`, i.e. the translates `H + l` are pairwise disjoint.
pub fn packs_strict(h: &Subset, lambda: &Subset) -> Result<bool> {
    let dh = difference_set(h, h)?;
    packing_type(&dh, lambda)
}

/// Generalized packing-type condition `(Lambda - Lambda) ∩ W ⊆ {0}`.
pub fn packing_type(w: &Subset, lambda: &Subset) -> Result<bool> {
    let dl = difference_set(lambda, lambda)?;
    let both = dl.intersection(w)?;
    Ok(both.indices().iter().all(|&x| x == 0))
}

/// `n(x) = sum_{l in Lambda} chi_H(x - l)` for every `x`.
pub fn cover_counts(h: &Subset, lambda: &Subset) -> Result<Vec<usize>> {
    if !h.group().same_shape(lambda.group()) {
        return invalid("H and Lambda live in different groups");
    }
    let g = h.group();
    let mut counts = vec![0usize; g.size()];
    let ls = lambda.indices();
    for y in h.indices() {
        for &l in &ls {
            counts[g.add(y, l)] += 1;
        }
    }
    Ok(counts)
}

pub fn covers(h: &Subset, lambda: &Subset) -> Result<bool> {
    Ok(cover_counts(h, lambda)?.iter().all(|&c| c >= 1))
}

/// Disjoint translates covering the whole group.
pub fn tiles_strict(h: &Subset, lambda: &Subset) -> Result<bool> {
    Ok(packs_strict(h, lambda)? && covers(h, lambda)?)
}

/// `D#(Lambda) = #Lambda` on a probability-normalized finite group.
pub fn auud_finite(group: &Group, lambda: &Subset) -> Result<Rational> {
    if !group.is_probability() {
        return invalid("a.u.u.d. closed form needs the probability normalization");
    }
    if !group.same_shape(lambda.group()) {
        return invalid("Lambda lives in a different group");
    }
    Ok(Rational::from_integer(lambda.len() as u64))
}

/// `Lambda = residues + period Z`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicSet {
    pub period: u64,
    pub residues: Vec<u64>,
}

impl PeriodicSet {
    pub fn new(period: u64, mut residues: Vec<u64>) -> Result<PeriodicSet> {
        if period == 0 {
            return invalid("period must be positive");
        }
        if let Some(r) = residues.iter().find(|&&r| r >= period) {
            return invalid(format!("residue {r} is not below the period {period}"));
        }
        residues.sort_unstable();
        residues.dedup();
        Ok(PeriodicSet { period, residues })
    }

    pub fn contains(&self, x: i64) -> bool {
        let r = x.rem_euclid(self.period as i64) as u64;
        self.residues.binary_search(&r).is_ok()
    }

    /// Smallest positive element of `Lambda - Lambda` that lies in `forbidden`, if any.
    pub fn forbidden_hit(&self, forbidden: &[u64]) -> Option<u64> {
        let p = self.period;
        let mut hits: Vec<u64> = forbidden
            .iter()
            .copied()
            .filter(|&f| {
                f > 0
                    && self
                        .residues
                        .iter()
                        .any(|&a| self.residues.iter().any(|&b| (a + f) % p == b))
            })
            .collect();
        hits.sort_unstable();
        hits.first().copied()
    }
}

pub fn auud_periodic(lambda: &PeriodicSet) -> Rational {
    Rational::new(lambda.residues.len() as u64, lambda.period)
}

/// Largest period accepted by [`max_density_search`].
pub const MAX_SEARCH_PERIOD: u64 = 24;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensitySearch {
    pub density: Rational,
    pub witness: PeriodicSet,
    /// Periods `1..=search_bound` were searched exhaustively.
    pub search_bound: u64,
}

/// Maximal density of a periodic integer set with period at most `max_period`
/// whose difference set avoids every element of `forbidden`.
///
/// A residue set `R` mod `p` is admissible iff no difference of residues is
/// congruent to `+-f` for a forbidden `f`. Ties keep the smallest period and
/// then the lexicographically first residue list (which contains 0).
pub fn max_density_search(forbidden: &[u64], max_period: u64) -> Result<DensitySearch> {
    if max_period == 0 || max_period > MAX_SEARCH_PERIOD {
        return invalid(format!(
            "max_period must be in 1..={MAX_SEARCH_PERIOD}, got {max_period}"
        ));
    }
    let forbidden: Vec<u64> = forbidden.iter().copied().filter(|&f| f > 0).collect();
    if forbidden.is_empty() {
        return Ok(DensitySearch {
            density: Rational::from_integer(1),
            witness: PeriodicSet::new(1, vec![0])?,
            search_bound: max_period,
        });
    }
    let mut best = DensitySearch {
        density: Rational::from_integer(0),
        witness: PeriodicSet::new(1, vec![])?,
        search_bound: max_period,
    };
    for p in 1..=max_period {
        let mut bad = 0u32;
        for &f in &forbidden {
            let r = f % p;
            bad |= 1 << r;
            bad |= 1 << ((p - r) % p);
        }
        if bad & 1 != 0 {
            continue;
        }
        let set = max_independent_residues(p as u32, bad);
        let density = Rational::new(set.len() as u64, p);
        if density > best.density {
            best.density = density;
            best.witness = PeriodicSet::new(p, set.into_iter().map(u64::from).collect())?;
        }
    }
    Ok(best)
}

/// Largest `R ⊆ Z_p` with `0 ∈ R` and no difference in `bad` (bitmask of residues).
fn max_independent_residues(p: u32, bad: u32) -> Vec<u32> {
    let full: u32 = if p == 32 { u32::MAX } else { (1 << p) - 1 };
    let rot = |x: u32| -> u32 {
        // residues y with y - x in bad
        let mut m = 0u32;
        for d in 0..p {
            if bad >> d & 1 == 1 {
                m |= 1 << ((x + d) % p);
                m |= 1 << ((x + p - d) % p);
            }
        }
        m
    };
    let conflicts: Vec<u32> = (0..p).map(rot).collect();
    let mut best: Vec<u32> = vec![0];
    let mut current = vec![0u32];
    let candidates = full & !1 & !conflicts[0];
    fn search(candidates: u32, conflicts: &[u32], current: &mut Vec<u32>, best: &mut Vec<u32>) {
        if current.len() + candidates.count_ones() as usize <= best.len() {
            return;
        }
        if candidates == 0 {
            if current.len() > best.len() {
                *best = current.clone();
            }
            return;
        }
        let x = candidates.trailing_zeros();
        current.push(x);
        search(
            candidates & !(1 << x) & !conflicts[x as usize],
            conflicts,
            current,
            best,
        );
        current.pop();
        search(candidates & !(1 << x), conflicts, current, best);
    }
    search(candidates, &conflicts, &mut current, &mut best);
    best
}

/// An interval of the real line; endpoints are open unless flagged closed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
    #[serde(default)]
    pub lo_closed: bool,
    #[serde(default)]
    pub hi_closed: bool,
}

impl Interval {
    pub fn open(lo: f64, hi: f64) -> Interval {
        Interval {
            lo,
            hi,
            lo_closed: false,
            hi_closed: false,
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        let above = if self.lo_closed {
            x >= self.lo
        } else {
            x > self.lo
        };
        let below = if self.hi_closed {
            x <= self.hi
        } else {
            x < self.hi
        };
        above && below
    }
}

/// Positive integers lying in a union of bounded intervals, e.g. the forbidden
/// differences of a real set.
pub fn integer_shadow(intervals: &[Interval]) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for iv in intervals {
        if !(iv.lo.is_finite() && iv.hi.is_finite()) {
            return invalid("intervals must be bounded");
        }
        let start = iv.lo.floor().max(1.0) as u64;
        let end = iv.hi.ceil();
        if end < 1.0 {
            continue;
        }
        for k in start..=end as u64 {
            if iv.contains(k as f64) {
                out.push(k);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DensityRelation {
    /// Strict tiling: `D#(Lambda) = 1/m_G(H)`.
    Equal,
    /// Strict packing: `D#(Lambda) <= 1/m_G(H)`.
    AtMost,
    /// Covering: `D#(Lambda) >= 1/m_G(H)`.
    AtLeast,
    /// Neither packs nor covers; nothing is asserted.
    None,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DensityReport {
    pub packs: bool,
    pub covers: bool,
    pub tiles: bool,
    pub auud: Rational,
    pub inverse_measure: Rational,
    pub relation: DensityRelation,
    pub pass: bool,
}

/// Checks the density inequalities implied by packing, covering and tiling,
/// in exact rational arithmetic.
pub fn density_bounds_check(group: &Group, h: &Subset, lambda: &Subset) -> Result<DensityReport> {
    if h.is_empty() {
        return invalid("H must be nonempty");
    }
    let auud = auud_finite(group, lambda)?;
    let inverse_measure = Rational::new(group.size() as u64, h.len() as u64);
    let packs = packs_strict(h, lambda)?;
    let covers = covers(h, lambda)?;
    let tiles = packs && covers;
    let (relation, pass) = if tiles {
        (DensityRelation::Equal, auud == inverse_measure)
    } else if packs {
        (DensityRelation::AtMost, auud <= inverse_measure)
    } else if covers {
        (DensityRelation::AtLeast, auud >= inverse_measure)
    } else {
        (DensityRelation::None, true)
    };
    Ok(DensityReport {
        packs,
        covers,
        tiles,
        auud,
        inverse_measure,
        relation,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(g: &Group, r: &[i64]) -> Subset {
        Subset::from_residues(g, r).unwrap()
    }

    #[test]
    fn packing_examples() {
        let g = Group::probability(&[6]).unwrap();
        let lam = set(&g, &[0, 2, 4]);
        assert!(packs_strict(&set(&g, &[0, 1]), &lam).unwrap());
        assert!(!packs_strict(&set(&g, &[0, 1, 2]), &lam).unwrap());
        assert!(packs_strict(&set(&g, &[0]), &lam).unwrap());
    }

    #[test]
    fn cover_and_tile_examples() {
        let g = Group::probability(&[6]).unwrap();
        let h = set(&g, &[0, 1]);
        assert!(covers(&h, &set(&g, &[0, 2, 4])).unwrap());
        assert!(tiles_strict(&h, &set(&g, &[0, 2, 4])).unwrap());
        assert!(!covers(&h, &set(&g, &[0, 3])).unwrap());
        assert!(tiles_strict(&Subset::full(&g), &set(&g, &[0])).unwrap());
    }

    #[test]
    fn packing_type_examples() {
        let g = Group::probability(&[6]).unwrap();
        let lam = set(&g, &[0, 2, 4]);
        assert!(packing_type(&set(&g, &[5, 0, 1]), &lam).unwrap());
        assert!(!packing_type(&set(&g, &[0, 2, -2]), &lam).unwrap());
        assert!(packing_type(&set(&g, &[0]), &set(&g, &[1, 3, 4])).unwrap());
    }

    #[test]
    fn auud_examples() {
        let g = Group::probability(&[6]).unwrap();
        assert_eq!(
            auud_finite(&g, &set(&g, &[0, 2, 4])).unwrap(),
            Rational::from_integer(3)
        );
        assert_eq!(
            auud_finite(&g, &Subset::empty(&g)).unwrap(),
            Rational::from_integer(0)
        );
        assert_eq!(
            auud_finite(&g, &Subset::full(&g)).unwrap(),
            Rational::from_integer(6)
        );
        let c = Group::counting(&[6]).unwrap();
        assert!(auud_finite(&c, &Subset::full(&c)).is_err());

        assert_eq!(
            auud_periodic(&PeriodicSet::new(5, vec![0, 2]).unwrap()),
            Rational::new(2, 5)
        );
        assert_eq!(
            auud_periodic(&PeriodicSet::new(1, vec![0]).unwrap()),
            Rational::from_integer(1)
        );
        assert_eq!(
            auud_periodic(&PeriodicSet::new(4, vec![]).unwrap()),
            Rational::from_integer(0)
        );
        assert!(PeriodicSet::new(3, vec![3]).is_err());
    }

    #[test]
    fn density_search_examples() {
        let r = max_density_search(&[1, 4], 10).unwrap();
        assert_eq!(r.density, Rational::new(2, 5));
        assert_eq!(r.witness, PeriodicSet::new(5, vec![0, 2]).unwrap());
        assert_eq!(r.witness.forbidden_hit(&[1, 4]), None);

        let r = max_density_search(&[1], 4).unwrap();
        assert_eq!(r.density, Rational::new(1, 2));
        assert_eq!(r.witness, PeriodicSet::new(2, vec![0]).unwrap());

        let r = max_density_search(&[], 7).unwrap();
        assert_eq!(r.density, Rational::from_integer(1));
        assert!(max_density_search(&[1], 25).is_err());
    }

    #[test]
    fn integer_shadow_of_example_difference_set() {
        let q = [
            Interval::open(-5.0, -3.0),
            Interval::open(-2.0, 2.0),
            Interval::open(3.0, 5.0),
        ];
        // positive integers of Q = (-5,-3) ∪ (-2,2) ∪ (3,5); Q is symmetric
        assert_eq!(integer_shadow(&q).unwrap(), vec![1, 4]);
        let closed = Interval {
            lo: 3.0,
            hi: 5.0,
            lo_closed: true,
            hi_closed: true,
        };
        assert_eq!(integer_shadow(&[closed]).unwrap(), vec![3, 4, 5]);
    }

    #[test]
    fn density_bounds_examples() {
        let g6 = Group::probability(&[6]).unwrap();
        let r = density_bounds_check(&g6, &set(&g6, &[0, 1]), &set(&g6, &[0, 2, 4])).unwrap();
        assert_eq!(r.relation, DensityRelation::Equal);
        assert_eq!(r.auud, Rational::from_integer(3));
        assert!(r.pass);

        let g8 = Group::probability(&[8]).unwrap();
        let r = density_bounds_check(&g8, &set(&g8, &[0, 1]), &set(&g8, &[0, 4])).unwrap();
        assert_eq!(r.relation, DensityRelation::AtMost);
        assert_eq!(
            (r.auud, r.inverse_measure),
            (Rational::from_integer(2), Rational::from_integer(4))
        );
        assert!(r.pass);

        let g4 = Group::probability(&[4]).unwrap();
        let r = density_bounds_check(&g4, &set(&g4, &[0, 1, 2]), &set(&g4, &[0, 2])).unwrap();
        assert_eq!(r.relation, DensityRelation::AtLeast);
        assert_eq!(r.inverse_measure, Rational::new(4, 3));
        assert!(r.pass);
    }

    #[test]
    fn tiling_forces_exact_count() {
        let g = Group::probability(&[12]).unwrap();
        for k in [1, 2, 3, 4, 6, 12] {
            let h = Subset::from_indices(&g, 0..k).unwrap();
            let lam = Subset::from_indices(&g, (0..12).step_by(k)).unwrap();
            assert!(tiles_strict(&h, &lam).unwrap());
            assert_eq!(h.len() * lam.len(), 12);
        }
    }
}
