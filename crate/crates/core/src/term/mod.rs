//! Finite presentations of scattered rooted trees.
//!
//! `Sup` glues the roots of its arms into one vertex, so `1 + sup(T*2)`
//! has `2|T|` vertices. `WSum` hangs component `n` at the `n`-th vertex of a
//! one-way spine; the root of the sum is spine vertex 0.

mod address;
mod embed;
mod parse;
mod truncate;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub use address::{join_addresses, locate, resolve, Located, Resolved, Step, VertexAddress};
pub use embed::{embeds, equimorphic, ChildFamily, Tri};
pub use parse::{parse_context, parse_term, BUILTIN_NAMES};
pub use truncate::{truncate, truncate_with, Truncation};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Mult {
    Finite(u64),
    Omega,
}

impl Mult {
    pub const ONE: Mult = Mult::Finite(1);

    pub fn times(self, other: Mult) -> Mult {
        match (self, other) {
            (Mult::Finite(a), Mult::Finite(b)) => Mult::Finite(a.saturating_mul(b)),
            _ => Mult::Omega,
        }
    }

    pub fn plus(self, other: Mult) -> Mult {
        match (self, other) {
            (Mult::Finite(a), Mult::Finite(b)) => Mult::Finite(a.saturating_add(b)),
            _ => Mult::Omega,
        }
    }

    pub fn is_omega(self) -> bool {
        self == Mult::Omega
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Mult::Finite(n) => Some(n),
            Mult::Omega => None,
        }
    }
}

impl fmt::Display for Mult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mult::Finite(n) => write!(f, "{n}"),
            Mult::Omega => write!(f, "w"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Box,
    Succ(Arc<Term>),
    Sup(Arc<Vec<(Term, Mult)>>),
    WSum(Arc<ComponentSeq>),
    SupSeq(Arc<ComponentSeq>),
}

/// Components of a sum, indexed by the natural numbers.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum ComponentSeq {
    /// `prefix[n]` for `n < prefix.len()`, then the cycle repeated.
    Periodic { prefix: Vec<Term>, cycle: Vec<Term> },
    /// `prefix[n]` for `n < prefix.len()`, then the stages of the generator.
    Generated { prefix: Vec<Term>, generator: Generator },
}

/// `t_0 = base`, `t_{n+1} = context[t_n]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Generator {
    pub base: Term,
    pub context: Context,
}

/// A term with exactly one hole.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Context {
    Hole,
    Closed(Term),
    Succ(Box<Context>),
    Sup(Vec<(Context, Mult)>),
    WSum {
        prefix: Vec<Context>,
        cycle: Vec<Context>,
    },
}

impl Term {
    pub fn succ(t: Term) -> Term {
        Term::Succ(Arc::new(t))
    }

    pub fn sup(arms: Vec<(Term, Mult)>) -> Result<Term> {
        if arms.is_empty() {
            return Err(Error::Precondition("sup needs at least one arm".into()));
        }
        if arms.iter().any(|(_, m)| *m == Mult::Finite(0)) {
            return Err(Error::Precondition("multiplicity 0".into()));
        }
        Ok(Term::Sup(Arc::new(arms)))
    }

    pub fn wsum(seq: ComponentSeq) -> Term {
        Term::WSum(Arc::new(seq))
    }

    pub fn supseq(seq: ComponentSeq) -> Result<Term> {
        if seq.is_periodic() {
            return Err(Error::Precondition("supseq takes a generated sequence".into()));
        }
        Ok(Term::SupSeq(Arc::new(seq)))
    }

    /// The one-way infinite path rooted at its endpoint.
    pub fn ray() -> Term {
        Term::wsum(ComponentSeq::cycle_of(vec![Term::Box]))
    }

    /// A path with `n` edges rooted at an endpoint.
    pub fn chain(n: usize) -> Term {
        (0..n).fold(Term::Box, |t, _| Term::succ(t))
    }

    pub fn is_box(&self) -> bool {
        matches!(self, Term::Box)
    }

    pub fn is_wsum(&self) -> bool {
        matches!(self, Term::WSum(_))
    }

    pub fn seq(&self) -> Option<&ComponentSeq> {
        match self {
            Term::WSum(s) | Term::SupSeq(s) => Some(s),
            _ => None,
        }
    }

    /// True when the denoted tree has no ray.
    pub fn is_rayless(&self) -> bool {
        match self {
            Term::Box => true,
            Term::Succ(c) => c.is_rayless(),
            Term::Sup(arms) => arms.iter().all(|(a, _)| a.is_rayless()),
            Term::WSum(_) => false,
            Term::SupSeq(seq) => match &**seq {
                ComponentSeq::Periodic { prefix, cycle } => prefix.iter().chain(cycle).all(Term::is_rayless),
                ComponentSeq::Generated { prefix, generator } => {
                    prefix.iter().all(Term::is_rayless)
                        && generator.base.is_rayless()
                        && generator.context.is_rayless()
                }
            },
        }
    }

    /// Finite vertex set.
    pub fn is_finite(&self) -> bool {
        self.size().is_some()
    }

    /// Vertex count, `None` when infinite.
    pub fn size(&self) -> Option<u128> {
        match self {
            Term::Box => Some(1),
            Term::Succ(c) => c.size().map(|s| s + 1),
            Term::Sup(arms) => {
                let mut total: u128 = 1;
                for (a, m) in arms.iter() {
                    let k = m.finite()? as u128;
                    let s = a.size()?;
                    total = total.saturating_add(k.saturating_mul(s - 1));
                }
                Some(total)
            }
            Term::WSum(_) | Term::SupSeq(_) => None,
        }
    }

    /// Largest distance from the root, `None` when unbounded.
    pub fn height(&self) -> Option<u64> {
        self.height_with(16)
    }

    pub(crate) fn height_with(&self, horizon: usize) -> Option<u64> {
        match self {
            Term::Box => Some(0),
            Term::Succ(c) => c.height_with(horizon).map(|h| h + 1),
            Term::Sup(arms) => {
                let mut best = 0;
                for (a, _) in arms.iter() {
                    best = best.max(a.height_with(horizon)?);
                }
                Some(best)
            }
            Term::WSum(_) => None,
            Term::SupSeq(seq) => {
                let mut best = 0;
                for t in seq.prefix() {
                    best = best.max(t.height_with(horizon)?);
                }
                if let ComponentSeq::Generated { generator, .. } = &**seq {
                    // heights follow max(c, a + h), so a repeat is a fixed point
                    let mut t = generator.base.clone();
                    let mut prev = t.height_with(horizon)?;
                    best = best.max(prev);
                    for _ in 0..horizon.max(2) {
                        t = generator.step(&t);
                        let h = t.height_with(horizon)?;
                        best = best.max(h);
                        if h == prev {
                            return Some(best);
                        }
                        prev = h;
                    }
                    return None;
                }
                Some(best)
            }
        }
    }

    /// Number of children of the root, `None` when infinite.
    pub fn root_degree(&self) -> Option<u64> {
        match self {
            Term::Box => Some(0),
            Term::Succ(_) => Some(1),
            Term::Sup(arms) => {
                let mut total: u64 = 0;
                for (a, m) in arms.iter() {
                    let d = a.root_degree()?;
                    if d > 0 {
                        total = total.saturating_add(m.finite()?.saturating_mul(d));
                    }
                }
                Some(total)
            }
            Term::WSum(seq) => seq.component(0).root_degree().map(|d| d + 1),
            Term::SupSeq(seq) => {
                let mut total: u64 = 0;
                for t in seq.prefix() {
                    total = total.saturating_add(t.root_degree()?);
                }
                match &**seq {
                    ComponentSeq::Generated { generator, .. } => {
                        if generator.context == Context::Hole && generator.base.root_degree() == Some(0) {
                            Some(total)
                        } else {
                            None
                        }
                    }
                    ComponentSeq::Periodic { .. } => None,
                }
            }
        }
    }

    /// Number of ends, `None` when infinite.
    pub fn end_count(&self) -> Option<u128> {
        match self {
            Term::Box => Some(0),
            Term::Succ(c) => c.end_count(),
            Term::Sup(arms) => {
                let mut total: u128 = 0;
                for (a, m) in arms.iter() {
                    let e = a.end_count()?;
                    if e > 0 {
                        total = total.saturating_add((m.finite()? as u128).saturating_mul(e));
                    }
                }
                Some(total)
            }
            Term::WSum(seq) => match &**seq {
                ComponentSeq::Periodic { prefix, cycle } => {
                    let mut total: u128 = 1;
                    for t in prefix {
                        total = total.saturating_add(t.end_count()?);
                    }
                    for t in cycle {
                        if t.end_count()? > 0 {
                            return None;
                        }
                    }
                    Some(total)
                }
                ComponentSeq::Generated { prefix, generator } => {
                    let mut total: u128 = 1;
                    for t in prefix {
                        total = total.saturating_add(t.end_count()?);
                    }
                    if generator.base.is_rayless() && generator.context.is_rayless() {
                        Some(total)
                    } else {
                        None
                    }
                }
            },
            Term::SupSeq(seq) => {
                let mut total: u128 = 0;
                for t in seq.prefix() {
                    total = total.saturating_add(t.end_count()?);
                }
                if let ComponentSeq::Generated { generator, .. } = &**seq {
                    if !(generator.base.is_rayless() && generator.context.is_rayless()) {
                        return None;
                    }
                }
                Some(total)
            }
        }
    }

    /// Largest finite multiplicity and largest arm count anywhere in the term.
    pub(crate) fn branching_profile(&self) -> (u64, u64) {
        fn walk(t: &Term, acc: &mut (u64, u64)) {
            match t {
                Term::Box => {}
                Term::Succ(c) => walk(c, acc),
                Term::Sup(arms) => {
                    acc.1 = acc.1.max(arms.len() as u64);
                    for (a, m) in arms.iter() {
                        if let Some(k) = m.finite() {
                            acc.0 = acc.0.max(k);
                        }
                        walk(a, acc);
                    }
                }
                Term::WSum(seq) | Term::SupSeq(seq) => {
                    acc.1 = acc.1.max(2);
                    let terms: Vec<Term> = match &**seq {
                        ComponentSeq::Periodic { prefix, cycle } => {
                            prefix.iter().chain(cycle).cloned().collect()
                        }
                        ComponentSeq::Generated { prefix, generator } => {
                            let mut v = prefix.clone();
                            v.push(generator.base.clone());
                            v.push(generator.step(&generator.base));
                            v
                        }
                    };
                    for c in &terms {
                        walk(c, acc);
                    }
                }
            }
        }
        let mut acc = (1, 1);
        walk(self, &mut acc);
        acc
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Box => write!(f, "box"),
            Term::Succ(c) => write!(f, "succ({c})"),
            Term::Sup(arms) => {
                write!(f, "sup(")?;
                for (i, (a, m)) in arms.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                    if *m != Mult::ONE {
                        write!(f, "*{m}")?;
                    }
                }
                write!(f, ")")
            }
            Term::WSum(seq) => write!(f, "wsum({seq})"),
            Term::SupSeq(seq) => write!(f, "supseq({seq})"),
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Term({self})")
    }
}

impl std::str::FromStr for Term {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_term(s)
    }
}

fn write_list<T: fmt::Display>(f: &mut fmt::Formatter<'_>, items: &[T]) -> fmt::Result {
    for (i, t) in items.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{t}")?;
    }
    Ok(())
}

impl fmt::Display for ComponentSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComponentSeq::Periodic { prefix, cycle } => {
                write!(f, "[")?;
                write_list(f, prefix)?;
                write!(f, "](")?;
                write_list(f, cycle)?;
                write!(f, ")")
            }
            ComponentSeq::Generated { prefix, generator } => {
                if !prefix.is_empty() {
                    write!(f, "[")?;
                    write_list(f, prefix)?;
                    write!(f, "]")?;
                }
                write!(f, "gen({}; {})", generator.base, generator.context)
            }
        }
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Context::Hole => write!(f, "_"),
            Context::Closed(t) => write!(f, "{t}"),
            Context::Succ(c) => write!(f, "succ({c})"),
            Context::Sup(arms) => {
                write!(f, "sup(")?;
                for (i, (a, m)) in arms.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                    if *m != Mult::ONE {
                        write!(f, "*{m}")?;
                    }
                }
                write!(f, ")")
            }
            Context::WSum { prefix, cycle } => {
                write!(f, "wsum([")?;
                write_list(f, prefix)?;
                write!(f, "](")?;
                write_list(f, cycle)?;
                write!(f, "))")
            }
        }
    }
}

impl Context {
    pub fn substitute(&self, t: &Term) -> Term {
        match self {
            Context::Hole => t.clone(),
            Context::Closed(c) => c.clone(),
            Context::Succ(c) => Term::succ(c.substitute(t)),
            Context::Sup(arms) => Term::Sup(Arc::new(
                arms.iter().map(|(a, m)| (a.substitute(t), *m)).collect(),
            )),
            Context::WSum { prefix, cycle } => {
                let prefix = prefix.iter().map(|c| c.substitute(t)).collect();
                let cycle = cycle.iter().map(|c| c.substitute(t)).collect();
                Term::wsum(ComponentSeq::periodic(prefix, cycle).expect("cycle is nonempty"))
            }
        }
    }

    pub fn hole_count(&self) -> usize {
        match self {
            Context::Hole => 1,
            Context::Closed(_) => 0,
            Context::Succ(c) => c.hole_count(),
            Context::Sup(arms) => arms.iter().map(|(a, _)| a.hole_count()).sum(),
            Context::WSum { prefix, cycle } => prefix.iter().chain(cycle).map(Context::hole_count).sum(),
        }
    }

    /// Substituting a rayless term yields a rayless term.
    pub fn is_rayless(&self) -> bool {
        match self {
            Context::Hole => true,
            Context::Closed(t) => t.is_rayless(),
            Context::Succ(c) => c.is_rayless(),
            Context::Sup(arms) => arms.iter().all(|(a, _)| a.is_rayless()),
            Context::WSum { .. } => false,
        }
    }

    /// Substituting a finite term yields a finite term.
    pub fn preserves_finiteness(&self) -> bool {
        match self {
            Context::Hole => true,
            Context::Closed(t) => t.is_finite(),
            Context::Succ(c) => c.preserves_finiteness(),
            Context::Sup(arms) => arms
                .iter()
                .all(|(a, m)| !m.is_omega() && a.preserves_finiteness()),
            Context::WSum { .. } => false,
        }
    }

    /// How many cycle positions of sums lie above the hole.
    pub fn cycle_depth(&self) -> usize {
        match self {
            Context::Hole | Context::Closed(_) => 0,
            Context::Succ(c) => c.cycle_depth(),
            Context::Sup(arms) => arms.iter().map(|(a, _)| a.cycle_depth()).max().unwrap_or(0),
            Context::WSum { prefix, cycle } => {
                let in_cycle = cycle.iter().any(|c| c.hole_count() > 0);
                let below = prefix
                    .iter()
                    .chain(cycle)
                    .map(Context::cycle_depth)
                    .max()
                    .unwrap_or(0);
                below + usize::from(in_cycle)
            }
        }
    }
}

impl Generator {
    pub fn step(&self, t: &Term) -> Term {
        self.context.substitute(t)
    }

    pub fn stage(&self, n: usize) -> Term {
        let mut t = self.base.clone();
        for _ in 0..n {
            t = self.step(&t);
        }
        t
    }
}

impl ComponentSeq {
    /// Builds a periodic sequence, reduced to its shortest cycle and prefix.
    pub fn periodic(mut prefix: Vec<Term>, mut cycle: Vec<Term>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::Precondition("empty cycle".into()));
        }
        let len = cycle.len();
        if let Some(p) = (1..=len)
            .filter(|p| len.is_multiple_of(*p))
            .find(|&p| (0..len).all(|i| cycle[i] == cycle[(i + p) % len]))
        {
            cycle.truncate(p);
        }
        while let Some(last) = prefix.last() {
            if *last != cycle[cycle.len() - 1] {
                break;
            }
            prefix.pop();
            cycle.rotate_right(1);
        }
        Ok(ComponentSeq::Periodic { prefix, cycle })
    }

    pub fn cycle_of(cycle: Vec<Term>) -> Self {
        Self::periodic(Vec::new(), cycle).expect("nonempty cycle")
    }

    pub fn generated(prefix: Vec<Term>, base: Term, context: Context) -> Self {
        ComponentSeq::Generated {
            prefix,
            generator: Generator { base, context },
        }
    }

    pub fn is_periodic(&self) -> bool {
        matches!(self, ComponentSeq::Periodic { .. })
    }

    pub fn prefix(&self) -> &[Term] {
        match self {
            ComponentSeq::Periodic { prefix, .. } | ComponentSeq::Generated { prefix, .. } => prefix,
        }
    }

    /// The `n`-th component.
    pub fn component(&self, n: usize) -> Term {
        let p = self.prefix();
        if n < p.len() {
            return p[n].clone();
        }
        match self {
            ComponentSeq::Periodic { prefix, cycle } => cycle[(n - prefix.len()) % cycle.len()].clone(),
            ComponentSeq::Generated { prefix, generator } => generator.stage(n - prefix.len()),
        }
    }

    /// Components `0..n`, sharing work across generated stages.
    pub fn components(&self, n: usize) -> Vec<Term> {
        match self {
            ComponentSeq::Periodic { .. } => (0..n).map(|i| self.component(i)).collect(),
            ComponentSeq::Generated { prefix, generator } => {
                let mut out: Vec<Term> = prefix.iter().take(n).cloned().collect();
                let mut t = generator.base.clone();
                while out.len() < n {
                    out.push(t.clone());
                    t = generator.step(&t);
                }
                out
            }
        }
    }

    /// The sequence with its first `k` components dropped.
    pub fn shift(&self, k: usize) -> ComponentSeq {
        match self {
            ComponentSeq::Periodic { prefix, cycle } => {
                if k <= prefix.len() {
                    ComponentSeq::Periodic {
                        prefix: prefix[k..].to_vec(),
                        cycle: cycle.clone(),
                    }
                } else {
                    let mut c = cycle.clone();
                    c.rotate_left((k - prefix.len()) % cycle.len());
                    ComponentSeq::Periodic {
                        prefix: Vec::new(),
                        cycle: c,
                    }
                }
            }
            ComponentSeq::Generated { prefix, generator } => {
                if k <= prefix.len() {
                    ComponentSeq::Generated {
                        prefix: prefix[k..].to_vec(),
                        generator: generator.clone(),
                    }
                } else {
                    ComponentSeq::Generated {
                        prefix: Vec::new(),
                        generator: Generator {
                            base: generator.stage(k - prefix.len()),
                            context: generator.context.clone(),
                        },
                    }
                }
            }
        }
    }

    /// Replaces finitely many components; all others are kept.
    pub fn with_overrides(&self, overrides: &BTreeMap<usize, Term>) -> ComponentSeq {
        let Some((&last, _)) = overrides.iter().next_back() else {
            return self.clone();
        };
        let keep = (last + 1).max(self.prefix().len());
        let mut prefix = self.components(keep);
        for (&i, t) in overrides {
            prefix[i] = t.clone();
        }
        match self.shift(keep) {
            ComponentSeq::Periodic { cycle, .. } => {
                ComponentSeq::periodic(prefix, cycle).expect("nonempty cycle")
            }
            ComponentSeq::Generated { generator, .. } => ComponentSeq::Generated { prefix, generator },
        }
    }
}

/// The `n`-th component of a sequence, with contexts fully substituted.
pub fn stage(seq: &ComponentSeq, n: usize) -> Term {
    seq.component(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    #[test]
    fn example_one_sizes() {
        let ex1 = t("ex1");
        let seq = ex1.seq().unwrap();
        assert_eq!(stage(seq, 0), Term::Box);
        assert_eq!(stage(seq, 3).size(), Some(8));
    }

    #[test]
    fn cycle_indexing() {
        let seq = ComponentSeq::periodic(vec![Term::chain(1)], vec![Term::chain(2)]).unwrap();
        assert_eq!(stage(&seq, 5), Term::chain(2));
        assert_eq!(stage(&seq, 0), Term::chain(1));
    }

    #[test]
    fn periodic_normal_form() {
        let a = Term::chain(1);
        let seq = ComponentSeq::periodic(
            vec![Term::Box, a.clone()],
            vec![Term::Box, a.clone(), Term::Box, a.clone()],
        )
        .unwrap();
        assert_eq!(seq, ComponentSeq::periodic(vec![], vec![Term::Box, a]).unwrap());
        assert_eq!(Term::ray().seq().unwrap().shift(5), *Term::ray().seq().unwrap());
    }

    #[test]
    fn measures() {
        assert!(t("sup(succ(box)*w)").is_rayless());
        assert!(!t("wsum([](box))").is_rayless());
        assert_eq!(t("sup(succ(box)*w)").size(), None);
        assert_eq!(t("sup(succ(box)*w)").height(), Some(1));
        assert_eq!(t("supseq(gen(box; succ(_)))").height(), None);
        assert!(t("supseq(gen(box; succ(_)))").is_rayless());
        assert_eq!(t("sup(succ(box)*3)").root_degree(), Some(3));
        assert_eq!(t("sup(wsum([](box))*2)").end_count(), Some(2));
        assert_eq!(t("ex3").end_count(), None);
    }

    #[test]
    fn overrides_keep_the_tail() {
        let ex1 = t("ex1");
        let seq = ex1.seq().unwrap();
        let mut o = BTreeMap::new();
        o.insert(3, seq.component(2));
        let s = seq.with_overrides(&o);
        assert_eq!(s.component(3), seq.component(2));
        assert_eq!(s.component(4), seq.component(4));
        assert_eq!(s.component(9), seq.component(9));
        let comb = t("wsum([](succ(box),box))");
        let s = comb
            .seq()
            .unwrap()
            .with_overrides(&[(4, Term::Box)].into_iter().collect());
        assert_eq!(s.component(4), Term::Box);
        assert_eq!(s.component(5), Term::Box);
        assert_eq!(s.component(6), Term::chain(1));
    }
}
