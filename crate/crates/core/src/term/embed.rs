//! Sound, tri-valued embedding decisions between terms.
//!
//! Rooted embeddings send root to root. Below the root the children of the
//! source must go injectively to children of the target, which becomes a
//! transportation problem once multiplicities are taken into account. Two
//! sums are compared componentwise along their spines (path-aligned); a
//! generated sequence is settled either by a finite check plus the
//! monotonicity of contexts, or left `unknown`.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use super::{ComponentSeq, Generator, Mult, Term};
use crate::engine::Engine;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

impl Tri {
    pub fn from_bool(b: bool) -> Tri {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }

    pub fn and(self, other: Tri) -> Tri {
        match (self, other) {
            (Tri::No, _) | (_, Tri::No) => Tri::No,
            (Tri::Yes, Tri::Yes) => Tri::Yes,
            _ => Tri::Unknown,
        }
    }

    pub fn or(self, other: Tri) -> Tri {
        match (self, other) {
            (Tri::Yes, _) | (_, Tri::Yes) => Tri::Yes,
            (Tri::No, Tri::No) => Tri::No,
            _ => Tri::Unknown,
        }
    }

    pub fn is_yes(self) -> bool {
        self == Tri::Yes
    }

    pub fn is_no(self) -> bool {
        self == Tri::No
    }
}

impl std::ops::Not for Tri {
    type Output = Tri;

    fn not(self) -> Tri {
        match self {
            Tri::Yes => Tri::No,
            Tri::No => Tri::Yes,
            Tri::Unknown => Tri::Unknown,
        }
    }
}

impl fmt::Display for Tri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tri::Yes => "yes",
            Tri::No => "no",
            Tri::Unknown => "unknown",
        })
    }
}

/// The children of a root: finitely many kinds with multiplicities, plus
/// the stage roots of any supseq glued at this vertex.
#[derive(Clone, Debug, Default)]
pub struct ChildFamily {
    pub finite: Vec<(Term, Mult)>,
    pub families: Vec<(Generator, Mult)>,
}

impl ChildFamily {
    fn add(&mut self, t: Term, m: Mult) {
        if let Some(slot) = self.finite.iter_mut().find(|(u, _)| *u == t) {
            slot.1 = slot.1.plus(m);
        } else {
            self.finite.push((t, m));
        }
    }

    fn absorb(&mut self, other: ChildFamily, m: Mult) {
        for (t, k) in other.finite {
            self.add(t, k.times(m));
        }
        for (g, k) in other.families {
            self.families.push((g, k.times(m)));
        }
    }

    pub fn of(t: &Term) -> ChildFamily {
        let mut out = ChildFamily::default();
        match t {
            Term::Box => {}
            Term::Succ(c) => out.add((**c).clone(), Mult::ONE),
            Term::Sup(arms) => {
                for (a, m) in arms.iter() {
                    out.absorb(ChildFamily::of(a), *m);
                }
            }
            Term::WSum(seq) => {
                out.absorb(ChildFamily::of(&seq.component(0)), Mult::ONE);
                out.add(Term::wsum(seq.shift(1)), Mult::ONE);
            }
            Term::SupSeq(seq) => {
                for p in seq.prefix() {
                    out.absorb(ChildFamily::of(p), Mult::ONE);
                }
                match &**seq {
                    ComponentSeq::Generated { generator, .. } => {
                        out.families.push((generator.clone(), Mult::ONE));
                    }
                    ComponentSeq::Periodic { cycle, .. } => {
                        for c in cycle {
                            out.absorb(ChildFamily::of(c), Mult::Omega);
                        }
                    }
                }
            }
        }
        out
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Larger-is-infinite comparison of optional measures: `Some(true)` when
/// `a` certainly exceeds `b`.
fn exceeds<T: PartialOrd>(a: Option<T>, b: Option<T>) -> bool {
    match (a, b) {
        (None, Some(_)) => true,
        (Some(x), Some(y)) => x > y,
        _ => false,
    }
}

impl Engine {
    /// Embedding of `t` into `s` with the root sent to the root.
    pub fn rooted(&self, t: &Term, s: &Term) -> Tri {
        if t == s || t.is_box() {
            return Tri::Yes;
        }
        if s.is_box() {
            return Tri::No;
        }
        if (!t.is_rayless() && s.is_rayless())
            || exceeds(t.root_degree(), s.root_degree())
            || exceeds(t.height_with(self.cfg.horizon), s.height_with(self.cfg.horizon))
            || exceeds(t.size(), s.size())
        {
            return Tri::No;
        }
        let key = (t.clone(), s.clone());
        if let Some(r) = self.embed_memo.borrow().get(&key) {
            return *r;
        }
        if !self.embed_active.borrow_mut().insert(key.clone()) {
            return Tri::Unknown;
        }
        let r = match (t, s) {
            (Term::WSum(a), Term::WSum(b)) => self.componentwise(a, b, 0),
            _ => self.match_children(t, s),
        };
        self.embed_active.borrow_mut().remove(&key);
        self.embed_memo.borrow_mut().insert(key, r);
        r
    }

    fn match_children(&self, t: &Term, s: &Term) -> Tri {
        let ct = ChildFamily::of(t);
        let cs = ChildFamily::of(s);
        if !ct.families.is_empty() {
            return self.match_families(&ct, &cs);
        }
        let mut slots = cs.finite.clone();
        let open = !cs.families.is_empty();
        for (g, m) in &cs.families {
            let mut stage = g.base.clone();
            for _ in 0..=self.cfg.horizon {
                for (c, k) in ChildFamily::of(&stage).finite {
                    slots.push((c, k.times(*m)));
                }
                stage = g.step(&stage);
            }
        }
        let demands = &ct.finite;
        let compat: Vec<Vec<Tri>> = demands
            .iter()
            .map(|(d, _)| slots.iter().map(|(c, _)| self.rooted(d, c)).collect())
            .collect();
        let strict = transport(demands, &slots, &compat, |r| r == Tri::Yes);
        if strict {
            return Tri::Yes;
        }
        let loose = transport(demands, &slots, &compat, |r| r != Tri::No);
        if !loose && !open {
            Tri::No
        } else {
            Tri::Unknown
        }
    }

    fn match_families(&self, ct: &ChildFamily, cs: &ChildFamily) -> Tri {
        // supseq into supseq over the same context: stage n into stage n + p
        if let ([(gt, _)], [(gs, _)]) = (ct.families.as_slice(), cs.families.as_slice()) {
            if ct.finite.is_empty() && gt.context == gs.context {
                let mut stage = gs.base.clone();
                for _ in 0..=self.cfg.horizon {
                    if self.rooted(&gt.base, &stage).is_yes() {
                        return Tri::Yes;
                    }
                    stage = gs.step(&stage);
                }
            }
        }
        Tri::Unknown
    }

    /// Does the base of `g` embed into its next stage? Then every stage
    /// embeds into all later ones.
    pub fn is_increasing(&self, g: &Generator) -> Tri {
        self.rooted(&g.base, &g.step(&g.base))
    }

    /// Component `n` of `t` into component `n + k` of `s`, for every `n`.
    pub fn componentwise(&self, t: &ComponentSeq, s: &ComponentSeq, k: usize) -> Tri {
        let h = self.cfg.horizon;
        let pt = t.prefix().len();
        let ps = s.prefix().len();
        let check = |n: usize| self.rooted(&t.component(n), &s.component(n + k));
        match (t, s) {
            (ComponentSeq::Periodic { cycle: ct, .. }, ComponentSeq::Periodic { cycle: cs, .. }) => {
                let bound = pt.max(ps.saturating_sub(k)) + lcm(ct.len(), cs.len());
                all_of((0..bound).map(check))
            }
            (
                ComponentSeq::Generated { generator: gt, .. },
                ComponentSeq::Generated { generator: gs, .. },
            ) if gt.context == gs.context => {
                let start = pt.max(ps.saturating_sub(k));
                let tc = t.components(start + h + 1);
                let sc = s.components(start + h + 1 + k);
                let mut acc = Tri::Yes;
                for n in 0..=start + h {
                    let r = self.rooted(&tc[n], &sc[n + k]);
                    if r.is_no() {
                        return Tri::No;
                    }
                    acc = acc.and(r);
                    if n >= start && acc.is_yes() {
                        return Tri::Yes;
                    }
                }
                acc.and(Tri::Unknown)
            }
            (ComponentSeq::Periodic { cycle: ct, .. }, ComponentSeq::Generated { generator: gs, .. })
                if self.is_increasing(gs).is_yes() =>
            {
                let stages = gs.components_from_zero(h + 1);
                let mut first_fit = 0;
                let mut all_found = true;
                for c in ct {
                    match stages.iter().position(|st| self.rooted(c, st).is_yes()) {
                        Some(j) => first_fit = first_fit.max(j),
                        None => all_found = false,
                    }
                }
                let mut bound = pt.max(ps.saturating_sub(k)) + h;
                if all_found {
                    // past this index the target stage is at least first_fit
                    bound = pt.max((ps + first_fit).saturating_sub(k));
                }
                let explicit = all_of((0..bound).map(check));
                if all_found {
                    explicit
                } else {
                    explicit.and(Tri::Unknown)
                }
            }
            _ => {
                let bound = pt.max(ps) + h;
                all_of((0..bound).map(check)).and(Tri::Unknown)
            }
        }
    }

    /// Top-level embedding with the witnessing spine shift when both are
    /// sums. The shift sends spine vertex `n` of `t` to spine vertex `n + k`
    /// of `s`.
    pub fn embeds_with_shift(&self, t: &Term, s: &Term) -> (Tri, Option<usize>) {
        let (Term::WSum(a), Term::WSum(b)) = (t, s) else {
            let r = self.rooted(t, s);
            return (r, r.is_yes().then_some(0));
        };
        let bound = match &**b {
            ComponentSeq::Periodic { prefix, cycle } => prefix.len() + cycle.len(),
            ComponentSeq::Generated { .. } => self.cfg.horizon,
        };
        let mut unknown = !b.is_periodic();
        for k in 0..bound {
            match self.componentwise(a, b, k) {
                Tri::Yes => return (Tri::Yes, Some(k)),
                Tri::Unknown => unknown = true,
                Tri::No => {}
            }
        }
        (if unknown { Tri::Unknown } else { Tri::No }, None)
    }

    pub fn embeds(&self, t: &Term, s: &Term) -> Tri {
        self.embeds_with_shift(t, s).0
    }

    pub fn equimorphic(&self, t: &Term, s: &Term) -> Tri {
        let ab = self.embeds(t, s);
        if ab.is_no() {
            return Tri::No;
        }
        ab.and(self.embeds(s, t))
    }

    pub fn equimorphic_rooted(&self, t: &Term, s: &Term) -> Tri {
        let ab = self.rooted(t, s);
        if ab.is_no() {
            return Tri::No;
        }
        ab.and(self.rooted(s, t))
    }
}

impl Generator {
    pub(crate) fn components_from_zero(&self, n: usize) -> Vec<Term> {
        let mut out = Vec::with_capacity(n);
        let mut t = self.base.clone();
        for _ in 0..n {
            out.push(t.clone());
            t = self.step(&t);
        }
        out
    }
}

fn all_of(results: impl Iterator<Item = Tri>) -> Tri {
    let mut acc = Tri::Yes;
    for r in results {
        if r.is_no() {
            return Tri::No;
        }
        acc = acc.and(r);
    }
    acc
}

/// Can every demand be placed? Infinite slots absorb any number of copies;
/// infinite demands need an infinite slot; the rest is a max-flow.
fn transport(
    demands: &[(Term, Mult)],
    slots: &[(Term, Mult)],
    compat: &[Vec<Tri>],
    allowed: impl Fn(Tri) -> bool,
) -> bool {
    let mut rest: Vec<usize> = Vec::new();
    for (i, (_, m)) in demands.iter().enumerate() {
        let free = slots
            .iter()
            .enumerate()
            .any(|(j, (_, cap))| cap.is_omega() && allowed(compat[i][j]));
        if free {
            continue;
        }
        if m.is_omega() {
            return false;
        }
        rest.push(i);
    }
    if rest.is_empty() {
        return true;
    }
    let finite_slots: Vec<usize> = (0..slots.len()).filter(|&j| !slots[j].1.is_omega()).collect();
    // source, demands, slots, sink
    let nd = rest.len();
    let ns = finite_slots.len();
    let (src, sink) = (0, nd + ns + 1);
    let mut net = FlowNet::new(nd + ns + 2);
    let mut need: u64 = 0;
    for (a, &i) in rest.iter().enumerate() {
        let m = demands[i].1.finite().expect("finite demand");
        need += m;
        net.edge(src, 1 + a, m);
        for (b, &j) in finite_slots.iter().enumerate() {
            if allowed(compat[i][j]) {
                net.edge(1 + a, 1 + nd + b, m);
            }
        }
    }
    for (b, &j) in finite_slots.iter().enumerate() {
        net.edge(1 + nd + b, sink, slots[j].1.finite().expect("finite slot"));
    }
    net.max_flow(src, sink) >= need
}

struct FlowNet {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<u64>,
}

impl FlowNet {
    fn new(n: usize) -> Self {
        FlowNet {
            adj: vec![Vec::new(); n],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn edge(&mut self, u: usize, v: usize, c: u64) {
        self.adj[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(c);
        self.adj[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(0);
    }

    /// Edmonds-Karp.
    fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        let mut total = 0u64;
        loop {
            let mut via = vec![usize::MAX; self.adj.len()];
            let mut queue = VecDeque::from([s]);
            let mut seen = vec![false; self.adj.len()];
            seen[s] = true;
            while let Some(u) = queue.pop_front() {
                for &e in &self.adj[u] {
                    let v = self.to[e];
                    if !seen[v] && self.cap[e] > 0 {
                        seen[v] = true;
                        via[v] = e;
                        queue.push_back(v);
                    }
                }
            }
            if !seen[t] {
                return total;
            }
            let mut push = u64::MAX;
            let mut v = t;
            while v != s {
                let e = via[v];
                push = push.min(self.cap[e]);
                v = self.to[e ^ 1];
            }
            let mut v = t;
            while v != s {
                let e = via[v];
                self.cap[e] -= push;
                self.cap[e ^ 1] += push;
                v = self.to[e ^ 1];
            }
            total = total.saturating_add(push);
        }
    }
}

/// [`Engine::embeds`] with the default configuration.
pub fn embeds(t: &Term, s: &Term) -> Tri {
    Engine::default().embeds(t, s)
}

/// [`Engine::equimorphic`] with the default configuration.
pub fn equimorphic(t: &Term, s: &Term) -> Tri {
    Engine::default().equimorphic(t, s)
}
