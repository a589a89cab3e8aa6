//! Explicit twins: trees that embed into each other without being
//! isomorphic.
//!
//! Every generated twin is checked with the embedding engine in both
//! directions before it is returned. Non-isomorphism of infinite trees is
//! certified by differing canonical codes of bounded truncations.

pub mod labelled;

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::finite_tree::canonical_code;
use crate::term::{truncate, ComponentSeq, Term};

pub use labelled::{label_choice_lower_bound, ChoiceBound, LabelledPath, Poset};

/// Depth at which twins are told apart.
pub const DISTINCTNESS_DEPTH: usize = 20;

/// Canonical code of the truncation at `depth`.
pub fn truncation_code(t: &Term, depth: usize) -> String {
    canonical_code(&truncate(t, depth).tree)
}

/// Do the truncation codes at `depth` differ pairwise?
pub fn pairwise_distinct(terms: &[Term], depth: usize) -> bool {
    let codes: BTreeSet<String> = terms.iter().map(|t| truncation_code(t, depth)).collect();
    codes.len() == terms.len()
}

/// Sets of positions with growing gaps, one set per residue mod `k`.
#[derive(Clone, Debug)]
pub struct AlmostDisjointFamily {
    pub ground: Vec<u64>,
    pub sets: Vec<BTreeSet<u64>>,
}

/// The first `points` elements of a ground set whose gaps strictly grow,
/// split into `k` sets by index residue. A seeded random extra slack is
/// added to the gaps.
pub fn almost_disjoint_family(k: usize, seed: u64, points: usize) -> Result<AlmostDisjointFamily> {
    if k == 0 {
        return Err(Error::Precondition("need at least one set".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ground = Vec::with_capacity(points);
    let mut x = 0u64;
    let mut slack = 0u64;
    for n in 0..points as u64 {
        ground.push(x);
        slack += rng.gen_range(0..=1);
        x += n + 1 + slack;
    }
    let mut sets = vec![BTreeSet::new(); k];
    for (n, &x) in ground.iter().enumerate() {
        sets[n % k].insert(x);
    }
    Ok(AlmostDisjointFamily { ground, sets })
}

fn wsum_seq(t: &Term) -> Result<&ComponentSeq> {
    t.seq()
        .filter(|_| t.is_wsum())
        .ok_or_else(|| Error::Precondition(format!("{t} is not a sum along a ray")))
}

impl Engine {
    /// `candidate` if it provably embeds into `t` and back.
    pub fn verified_twin(&self, t: &Term, candidate: Term) -> Result<Term> {
        let there = self.embeds(&candidate, t);
        let back = self.embeds(t, &candidate);
        if there.is_yes() && back.is_yes() {
            Ok(candidate)
        } else {
            Err(Error::Precondition(format!(
                "{candidate} is not a verified twin of {t} (into {there}, back {back})"
            )))
        }
    }

    /// Least detected shift period of the spine.
    fn least_period(&self, t: &Term) -> Result<usize> {
        let report = self.shift_report(t, None)?;
        report
            .periods
            .first()
            .copied()
            .ok_or_else(|| Error::Precondition(format!("{t} has no shift period")))
    }

    /// Component `n + k` replaced by component `n` for every `n` in `set`,
    /// where `k` is the least shift period. Each such `n` must be a place
    /// where the two components are not equimorphic.
    pub fn twin_from_subset(&self, t: &Term, set: &BTreeSet<u64>) -> Result<Term> {
        let seq = wsum_seq(t)?;
        if set.is_empty() {
            return Ok(t.clone());
        }
        let k = self.least_period(t)?;
        let mut overrides = BTreeMap::new();
        for &n in set {
            let n = n as usize;
            let here = seq.component(n);
            let there = seq.component(n + k);
            if !self.equimorphic_rooted(&here, &there).is_no() {
                return Err(Error::Precondition(format!(
                    "components {n} and {} are not known to differ",
                    n + k
                )));
            }
            overrides.insert(n + k, here);
        }
        let twin = Term::wsum(seq.with_overrides(&overrides));
        self.verified_twin(t, twin)
    }

    /// The tree with every side branch at spine vertices
    /// `0..=l + i + 1 + 3nk` removed, where `k` is the least shift period,
    /// `l` is where that period starts to hold up to equimorphy and
    /// `l + i` is the first later spine vertex with a nontrivial branch.
    pub fn twin_n(&self, t: &Term, n: usize) -> Result<Term> {
        let seq = wsum_seq(t)?;
        if !self.is_regular_end(t)?.is_yes() {
            return Err(Error::Precondition(format!(
                "{t}: the end is not known to be regular"
            )));
        }
        let k = self.least_period(t)?;
        let l = self.period_start(t, k)?;
        let i = (0..k)
            .find(|&i| !seq.component(l + i).is_box())
            .ok_or_else(|| Error::Precondition("the one-way path has no such twins".into()))?;
        let last = l + i + 1 + 3 * n * k;
        let overrides: BTreeMap<usize, Term> = (0..=last).map(|j| (j, Term::Box)).collect();
        let twin = Term::wsum(seq.with_overrides(&overrides));
        self.verified_twin(t, twin)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse_term;

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    #[test]
    fn family_shape() {
        let one = almost_disjoint_family(1, 7, 20).unwrap();
        assert_eq!(one.sets[0].len(), 20);
        let fam = almost_disjoint_family(2, 7, 50).unwrap();
        assert!(fam.sets[0].intersection(&fam.sets[1]).count() <= 1);
        let gaps: Vec<u64> = fam.ground.windows(2).map(|w| w[1] - w[0]).collect();
        assert!(gaps.windows(2).all(|g| g[0] < g[1]));
        assert!(almost_disjoint_family(0, 7, 5).is_err());
    }

    #[test]
    fn subset_twins_of_example_one() {
        let e = Engine::default();
        let ex1 = t("ex1");
        assert_eq!(e.twin_from_subset(&ex1, &BTreeSet::new()).unwrap(), ex1);
        let twin = e.twin_from_subset(&ex1, &BTreeSet::from([2])).unwrap();
        assert_ne!(truncation_code(&twin, 6), truncation_code(&ex1, 6));
    }

    #[test]
    fn pruned_twins() {
        let e = Engine::default();
        let t = t("wsum([](succ(box),box))");
        let a = e.twin_n(&t, 1).unwrap();
        let b = e.twin_n(&t, 2).unwrap();
        assert!(pairwise_distinct(&[a, b], DISTINCTNESS_DEPTH));
        assert!(e.twin_n(&Term::ray(), 1).is_err());
        assert!(e.twin_n(&parse_term("ex1").unwrap(), 1).is_err());
    }
}
