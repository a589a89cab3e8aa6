//! Cantor-Bendixson ranks of end spaces, computed compositionally.
//!
//! A summary records the space rank, how many ends sit in the last nonempty
//! derivative, and whether the rank is a limit (no last derivative). The
//! summary of a term depends only on the summaries of its parts, so a
//! generated sequence has an eventually periodic summary profile exactly
//! when two stages repeat a summary.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::ordinal::Ordinal;
use crate::term::{locate, ChildFamily, ComponentSeq, Generator, Mult, Step, Term, Tri, VertexAddress};

/// Number of ends of maximal element rank, capped at "many".
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum TopEnds {
    Exactly(u8),
    Many,
}

impl TopEnds {
    pub const ZERO: TopEnds = TopEnds::Exactly(0);

    fn from_count(n: u128) -> TopEnds {
        if n >= 3 {
            TopEnds::Many
        } else {
            TopEnds::Exactly(n as u8)
        }
    }

    /// Sum of `self` taken `m` times.
    fn times(self, m: Mult) -> TopEnds {
        match (self, m) {
            (TopEnds::Exactly(0), _) => TopEnds::ZERO,
            (_, Mult::Omega) | (TopEnds::Many, _) => TopEnds::Many,
            (TopEnds::Exactly(a), Mult::Finite(k)) => TopEnds::from_count(a as u128 * k as u128),
        }
    }

    fn plus(self, other: TopEnds) -> TopEnds {
        match (self, other) {
            (TopEnds::Exactly(a), TopEnds::Exactly(b)) => TopEnds::from_count((a + b) as u128),
            _ => TopEnds::Many,
        }
    }

    pub fn count(self) -> Option<u8> {
        match self {
            TopEnds::Exactly(n) => Some(n),
            TopEnds::Many => None,
        }
    }
}

impl fmt::Display for TopEnds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TopEnds::Exactly(n) => write!(f, "{n}"),
            TopEnds::Many => write!(f, "many"),
        }
    }
}

impl Serialize for TopEnds {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            TopEnds::Exactly(n) => s.serialize_u8(*n),
            TopEnds::Many => s.serialize_str("many"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct RankSummary {
    #[serde(rename = "rank", serialize_with = "ordinal_text")]
    pub space_rank: Ordinal,
    pub top_ends: TopEnds,
    #[serde(rename = "limit")]
    pub limit_flag: bool,
}

fn ordinal_text<S: Serializer>(o: &Ordinal, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(o)
}

impl RankSummary {
    pub fn rayless() -> Self {
        RankSummary {
            space_rank: Ordinal::zero(),
            top_ends: TopEnds::ZERO,
            limit_flag: false,
        }
    }

    fn successor(rank: Ordinal, top: TopEnds) -> Self {
        RankSummary {
            space_rank: rank,
            top_ends: top,
            limit_flag: false,
        }
    }

    fn limit(rank: Ordinal) -> Self {
        RankSummary {
            space_rank: rank,
            top_ends: TopEnds::ZERO,
            limit_flag: true,
        }
    }

    /// Rank of a root-identified union of the given pieces.
    pub fn union<'a>(parts: impl IntoIterator<Item = (&'a RankSummary, Mult)>) -> RankSummary {
        let parts: Vec<_> = parts.into_iter().collect();
        let top = Ordinal::sup(parts.iter().map(|(s, _)| &s.space_rank));
        if top.is_zero() {
            return RankSummary::rayless();
        }
        if top.is_limit() {
            return RankSummary::limit(top);
        }
        let ends = parts
            .iter()
            .filter(|(s, _)| s.space_rank == top)
            .fold(TopEnds::ZERO, |acc, (s, m)| acc.plus(s.top_ends.times(*m)));
        RankSummary::successor(top, ends)
    }
}

impl fmt::Display for RankSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rank {} (top ends {}", self.space_rank, self.top_ends)?;
        if self.limit_flag {
            write!(f, ", limit")?;
        }
        write!(f, ")")
    }
}

/// Whether a sum has a strictly dominant component rank.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct StarVerdict {
    pub holds: bool,
    pub dominant_index: Option<usize>,
}

/// Summaries of the components of a sequence.
#[derive(Clone, Debug)]
pub enum Profile {
    /// `explicit` then `cycle` repeated forever.
    Periodic {
        explicit: Vec<RankSummary>,
        cycle: Vec<RankSummary>,
    },
    /// Ranks increase past every bound below `sup`, which is never attained.
    Rising {
        explicit: Vec<RankSummary>,
        sup: Ordinal,
    },
}

impl Profile {
    fn explicit(&self) -> &[RankSummary] {
        match self {
            Profile::Periodic { explicit, .. } | Profile::Rising { explicit, .. } => explicit,
        }
    }

    /// Rank of a sum along the spine with these components.
    fn sum_summary(&self) -> RankSummary {
        match self {
            Profile::Rising { sup, .. } => RankSummary::successor(sup.succ(), TopEnds::Exactly(1)),
            Profile::Periodic { explicit, cycle } => {
                let tail = Ordinal::sup(cycle.iter().map(|s| &s.space_rank));
                let head = Ordinal::sup(explicit.iter().map(|s| &s.space_rank));
                if head <= tail {
                    return RankSummary::successor(tail.succ(), TopEnds::Exactly(1));
                }
                if head.is_limit() {
                    return RankSummary::limit(head);
                }
                let mut top = RankSummary::union(explicit.iter().map(|s| (s, Mult::ONE))).top_ends;
                // the spine end sits one level below the dominant components
                if tail.succ() == head {
                    top = top.plus(TopEnds::Exactly(1));
                }
                RankSummary::successor(head, top)
            }
        }
    }

    /// Rank of the root-identified union of all components, optionally
    /// leaving one explicit component out.
    fn union_summary(&self, skip: Option<usize>) -> RankSummary {
        let kept = self
            .explicit()
            .iter()
            .enumerate()
            .filter(|(i, _)| Some(*i) != skip)
            .map(|(_, s)| (s, Mult::ONE));
        match self {
            Profile::Rising { sup, .. } => RankSummary::limit(sup.clone()),
            Profile::Periodic { cycle, .. } => {
                RankSummary::union(kept.chain(cycle.iter().map(|s| (s, Mult::Omega))))
            }
        }
    }

    fn star(&self) -> StarVerdict {
        let fails = StarVerdict {
            holds: false,
            dominant_index: None,
        };
        let Profile::Periodic { explicit, cycle } = self else {
            return fails;
        };
        let tail = Ordinal::sup(cycle.iter().map(|s| &s.space_rank));
        let head = Ordinal::sup(explicit.iter().map(|s| &s.space_rank));
        if head <= tail {
            return fails;
        }
        StarVerdict {
            holds: true,
            dominant_index: explicit.iter().position(|s| s.space_rank == head),
        }
    }
}

impl Engine {
    pub fn rank_summary(&self, t: &Term) -> Result<RankSummary> {
        if t.is_rayless() {
            return Ok(RankSummary::rayless());
        }
        if let Some(s) = self.rank_memo.borrow().get(t) {
            return Ok(s.clone());
        }
        let s = match t {
            Term::Box => RankSummary::rayless(),
            Term::Succ(c) => self.rank_summary(c)?,
            Term::Sup(arms) => {
                let parts = arms
                    .iter()
                    .map(|(a, m)| Ok((self.rank_summary(a)?, *m)))
                    .collect::<Result<Vec<_>>>()?;
                RankSummary::union(parts.iter().map(|(s, m)| (s, *m)))
            }
            Term::WSum(seq) => self.profile(seq)?.sum_summary(),
            Term::SupSeq(seq) => self.profile(seq)?.union_summary(None),
        };
        self.rank_memo.borrow_mut().insert(t.clone(), s.clone());
        Ok(s)
    }

    /// Component summaries of a sequence, classified as periodic or rising.
    pub fn profile(&self, seq: &ComponentSeq) -> Result<Profile> {
        let mut explicit = seq
            .prefix()
            .iter()
            .map(|c| self.rank_summary(c))
            .collect::<Result<Vec<_>>>()?;
        match seq {
            ComponentSeq::Periodic { cycle, .. } => Ok(Profile::Periodic {
                explicit,
                cycle: cycle
                    .iter()
                    .map(|c| self.rank_summary(c))
                    .collect::<Result<Vec<_>>>()?,
            }),
            ComponentSeq::Generated { generator, .. } => {
                let stages = self.generator_profile(generator)?;
                match stages {
                    Profile::Periodic { explicit: e, cycle } => {
                        explicit.extend(e);
                        Ok(Profile::Periodic { explicit, cycle })
                    }
                    Profile::Rising { explicit: e, sup } => {
                        explicit.extend(e);
                        Ok(Profile::Rising { explicit, sup })
                    }
                }
            }
        }
    }

    /// Summaries of the stages of a generator. Since summaries compose, a
    /// repeated summary makes the profile periodic from there on. Without a
    /// repeat, stages whose rank exceeds everything closed in the context
    /// grow by the cycle depth at every step.
    fn generator_profile(&self, g: &Generator) -> Result<Profile> {
        let mut seen: Vec<RankSummary> = Vec::new();
        let mut stage = g.base.clone();
        for _ in 0..=self.cfg.horizon {
            let s = self.rank_summary(&stage)?;
            if let Some(start) = seen.iter().position(|x| *x == s) {
                let cycle = seen.split_off(start);
                return Ok(Profile::Periodic {
                    explicit: seen,
                    cycle,
                });
            }
            seen.push(s);
            stage = g.step(&stage);
        }
        let closed = self.rank_summary(&g.context.substitute(&Term::Box))?.space_rank;
        let last = &seen.last().expect("horizon stages").space_rank;
        if g.context.cycle_depth() >= 1 && *last > closed {
            let sup = last.plus_omega();
            return Ok(Profile::Rising { explicit: seen, sup });
        }
        Err(Error::Undecided(format!(
            "rank profile of gen({}; {}) within horizon {}",
            g.base, g.context, self.cfg.horizon
        )))
    }

    pub fn property_star(&self, seq: &ComponentSeq) -> Result<StarVerdict> {
        Ok(self.profile(seq)?.star())
    }

    /// Rank of what is left of `t` after deleting the vertex at `steps` and
    /// everything below it; `None` when nothing is left.
    fn removal_rank(&self, t: &Term, steps: &[Step]) -> Result<Option<RankSummary>> {
        let Some((first, rest)) = steps.split_first() else {
            return Ok(None);
        };
        let bad = || Error::Address {
            address: VertexAddress(steps.to_vec()).to_string(),
            reason: format!("does not apply to {t}"),
        };
        let inner = |piece: &Term| -> Result<RankSummary> {
            Ok(self
                .removal_rank(piece, rest)?
                .unwrap_or_else(RankSummary::rayless))
        };
        let out = match (first, t) {
            (Step::Into, Term::Succ(c)) => inner(c)?,
            (Step::Arm { index, .. }, Term::Sup(arms)) => {
                let mut parts = Vec::new();
                for (i, (a, m)) in arms.iter().enumerate() {
                    let s = self.rank_summary(a)?;
                    if i == *index {
                        let left = match m {
                            Mult::Finite(k) => Mult::Finite(k - 1),
                            Mult::Omega => Mult::Omega,
                        };
                        parts.push((s, left));
                        parts.push((inner(a)?, Mult::ONE));
                    } else {
                        parts.push((s, *m));
                    }
                }
                RankSummary::union(parts.iter().map(|(s, m)| (s, *m)))
            }
            (Step::Arm { index, .. }, Term::SupSeq(seq)) => {
                let profile = self.profile(seq)?;
                let others = if *index < profile.explicit().len() {
                    profile.union_summary(Some(*index))
                } else {
                    // the cycle or the rising tail is unaffected by one stage
                    profile.union_summary(None)
                };
                let here = inner(&seq.component(*index))?;
                RankSummary::union([(&others, Mult::ONE), (&here, Mult::ONE)])
            }
            (Step::Spine(n), Term::WSum(seq)) => {
                if rest.is_empty() {
                    if *n == 0 {
                        return Ok(None);
                    }
                    let path = seq
                        .components(*n)
                        .iter()
                        .map(|c| self.rank_summary(c))
                        .collect::<Result<Vec<_>>>()?;
                    RankSummary::union(path.iter().map(|s| (s, Mult::ONE)))
                } else {
                    let comp = seq.component(*n);
                    let here = inner(&comp)?;
                    let mut explicit = seq
                        .components(n + 1)
                        .iter()
                        .map(|c| self.rank_summary(c))
                        .collect::<Result<Vec<_>>>()?;
                    explicit[*n] = here;
                    let tail = self.profile(&seq.shift(n + 1))?;
                    let profile = match tail {
                        Profile::Periodic { explicit: e, cycle } => {
                            explicit.extend(e);
                            Profile::Periodic { explicit, cycle }
                        }
                        Profile::Rising { explicit: e, sup } => {
                            explicit.extend(e);
                            Profile::Rising { explicit, sup }
                        }
                    };
                    profile.sum_summary()
                }
            }
            _ => return Err(bad()),
        };
        Ok(Some(out))
    }

    /// Does the addressed vertex have two disjoint sets of neighbours whose
    /// branches both reach the (limit) rank of `t`?
    pub fn lim_member(&self, t: &Term, a: &VertexAddress) -> Result<Tri> {
        let whole = self.rank_summary(t)?;
        if !whole.limit_flag {
            return Err(Error::Precondition(format!("{t} has {whole}, not a limit rank")));
        }
        let alpha = whole.space_rank;
        let loc = locate(t, a)?;
        let mut branches: Vec<(RankSummary, Mult)> = Vec::new();
        if let Some(up) = self.removal_rank(t, a.steps())? {
            branches.push((up, Mult::ONE));
        }
        let kids = ChildFamily::of(&loc.below);
        for (c, m) in &kids.finite {
            branches.push((self.rank_summary(c)?, *m));
        }
        let mut cofinal = false;
        for (g, _) in &kids.families {
            let seq = ComponentSeq::Generated {
                prefix: Vec::new(),
                generator: g.clone(),
            };
            match self.profile(&seq)? {
                Profile::Rising { sup, .. } => cofinal |= sup == alpha,
                Profile::Periodic { explicit, cycle } => {
                    branches.extend(explicit.into_iter().map(|s| (s, Mult::ONE)));
                    branches.extend(cycle.into_iter().map(|s| (s, Mult::Omega)));
                }
            }
        }
        let reaching = branches
            .iter()
            .filter(|(s, _)| s.space_rank == alpha)
            .fold(Mult::Finite(0), |acc, (_, m)| acc.plus(*m));
        let two = match reaching {
            Mult::Omega => true,
            Mult::Finite(k) => k >= 2,
        };
        Ok(Tri::from_bool(two || cofinal))
    }
}

/// A term whose end space has rank exactly `alpha`. Successors wrap the
/// previous witness in a ray of copies; limits of the form `beta + w` take
/// the supremum of the sequence that keeps wrapping.
pub fn build_rank_witness(alpha: &Ordinal) -> Result<Term> {
    if alpha.is_zero() {
        return Ok(Term::Box);
    }
    if alpha.is_successor() {
        let below = build_rank_witness(&alpha.predecessor()?)?;
        return Ok(Term::wsum(ComponentSeq::cycle_of(vec![below])));
    }
    let mut terms = alpha.terms().to_vec();
    let (exp, coeff) = terms.last_mut().expect("nonzero");
    if *exp != Ordinal::nat(1) {
        return Err(Error::Unsupported(format!(
            "rank witness for {alpha}: only limits of the form b+w are built"
        )));
    }
    if *coeff == 1 {
        terms.pop();
    } else {
        *coeff -= 1;
    }
    let base = build_rank_witness(&Ordinal::from_terms(terms)?)?;
    let wrap = crate::term::parse_context("wsum([](_))")?;
    Term::supseq(ComponentSeq::generated(Vec::new(), base, wrap))
}

/// [`Engine::rank_summary`] with the default configuration.
pub fn rank_summary(t: &Term) -> Result<RankSummary> {
    Engine::default().rank_summary(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse_term;

    fn summary(s: &str) -> RankSummary {
        rank_summary(&parse_term(s).unwrap()).unwrap()
    }

    fn rank(s: &str) -> String {
        summary(s).space_rank.to_string()
    }

    #[test]
    fn fixtures() {
        assert_eq!(summary("box"), RankSummary::rayless());
        assert_eq!(rank("wsum([](box))"), "1");
        for ex in ["ex1", "ex2"] {
            let s = summary(ex);
            assert_eq!(
                (s.space_rank.to_string(), s.top_ends),
                ("1".into(), TopEnds::Exactly(1))
            );
        }
        let s = summary("ex3");
        assert_eq!(
            (s.space_rank.to_string(), s.top_ends),
            ("2".into(), TopEnds::Exactly(1))
        );
        let s = summary("sup(wsum([](box))*2)");
        assert_eq!(
            (s.space_rank.to_string(), s.top_ends),
            ("1".into(), TopEnds::Exactly(2))
        );
        assert_eq!(summary("sup(wsum([](box))*w)").top_ends, TopEnds::Many);
    }

    #[test]
    fn dominant_prefix_counts_the_spine() {
        let s = summary("wsum([wsum([](box))](box))");
        assert_eq!(
            (s.space_rank.to_string(), s.top_ends),
            ("1".into(), TopEnds::Exactly(2))
        );
        let s = summary("wsum([wsum([](wsum([](box))))](box))");
        assert_eq!(
            (s.space_rank.to_string(), s.top_ends),
            ("2".into(), TopEnds::Exactly(1))
        );
    }

    #[test]
    fn star() {
        let e = Engine::default();
        let seq = |s: &str| parse_term(s).unwrap().seq().unwrap().clone();
        let v = e.property_star(&seq("wsum([wsum([](box))](box))")).unwrap();
        assert_eq!(
            v,
            StarVerdict {
                holds: true,
                dominant_index: Some(0)
            }
        );
        assert!(!e.property_star(&seq("wsum([](box))")).unwrap().holds);
        assert!(!e.property_star(&seq("ex1")).unwrap().holds);
    }

    #[test]
    fn witnesses() {
        for text in ["0", "1", "2", "3", "w", "w+1", "w*2"] {
            let alpha: Ordinal = text.parse().unwrap();
            let t = build_rank_witness(&alpha).unwrap();
            let s = rank_summary(&t).unwrap();
            assert_eq!(s.space_rank, alpha, "witness {t}");
            assert_eq!(s.limit_flag, alpha.is_limit());
        }
        assert!(build_rank_witness(&"w^2".parse().unwrap()).is_err());
    }

    #[test]
    fn limit_membership() {
        let e = Engine::default();
        let l = parse_term("supseq(gen(box; wsum([](_))))").unwrap();
        assert_eq!(e.lim_member(&l, &VertexAddress::root()).unwrap(), Tri::Yes);
        let deep: VertexAddress = "arm[2,0].spine[1]".parse().unwrap();
        assert_eq!(e.lim_member(&l, &deep).unwrap(), Tri::No);
        let ex1 = parse_term("ex1").unwrap();
        assert!(e.lim_member(&ex1, &VertexAddress::spine(0)).is_err());
    }

    #[test]
    fn json_shape() {
        let j = serde_json::to_string(&summary("ex3")).unwrap();
        assert_eq!(j, r#"{"rank":"2","top_ends":1,"limit":false}"#);
    }
}
