//! The distinguished end of a sum: valuations, shift periods, regularity,
//! ray periods and the origin of the preserved ray.
//!
//! Every verdict here concerns path-aligned embeddings: the spine goes to
//! the spine by a forward shift and components go into components.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::finite_tree::{rooted_embedding, EndoClassification};
use crate::term::{join_addresses, locate, truncate_with, ComponentSeq, Step, Term, Tri, VertexAddress};

fn spine_seq(t: &Term) -> Result<&ComponentSeq> {
    match t {
        Term::WSum(seq) => Ok(seq),
        _ => Err(Error::NoEnd(format!("{t} is not a sum along a ray"))),
    }
}

/// Splits a spine-form address into its spine index and the steps inside
/// that component.
fn split(a: &VertexAddress) -> (usize, VertexAddress) {
    let s = a.spine_form();
    match s.steps().split_first() {
        Some((Step::Spine(n), rest)) => (*n, VertexAddress(rest.to_vec())),
        _ => unreachable!("spine form starts with a spine step"),
    }
}

/// First common vertex of the rays from `a` and `b` towards the end.
pub fn join_e(t: &Term, a: &VertexAddress, b: &VertexAddress) -> Result<VertexAddress> {
    spine_seq(t)?;
    locate(t, a)?;
    locate(t, b)?;
    let (i, _) = split(a);
    let (j, _) = split(b);
    if i != j {
        return Ok(VertexAddress::spine(i.max(j)));
    }
    Ok(join_addresses(&a.spine_form(), &b.spine_form()))
}

/// Distance from `a` to a vertex `z` on its ray towards the end.
fn distance_up(a: &VertexAddress, z: &VertexAddress) -> u64 {
    let (i, rest) = split(a);
    let (j, _) = split(z);
    if j > i {
        rest.depth() + (j - i) as u64
    } else {
        a.spine_form().depth() - z.spine_form().depth()
    }
}

/// Integer labelling that grows by one along every step towards the end.
#[derive(Clone, Debug)]
pub struct Valuation {
    term: Term,
    pub origin: VertexAddress,
    pub origin_value: i64,
}

impl Valuation {
    pub fn new(t: &Term, origin: VertexAddress, origin_value: i64) -> Result<Self> {
        spine_seq(t)?;
        locate(t, &origin)?;
        Ok(Valuation {
            term: t.clone(),
            origin,
            origin_value,
        })
    }

    pub fn evaluate(&self, y: &VertexAddress) -> Result<i64> {
        let z = join_e(&self.term, &self.origin, y)?;
        let up_origin = distance_up(&self.origin, &z) as i64;
        let up_y = distance_up(y, &z) as i64;
        Ok(self.origin_value + up_origin - up_y)
    }
}

/// The valuation that is 0 at `origin`.
pub fn valuation(t: &Term, origin: VertexAddress) -> Result<Valuation> {
    Valuation::new(t, origin, 0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShiftReport {
    pub periods: BTreeSet<usize>,
    #[serde(rename = "d")]
    pub d_gcd: Option<usize>,
    pub almost_rigid: bool,
    /// Some shift inside the bound could be neither confirmed nor refuted.
    pub incomplete: bool,
    pub path_aligned: bool,
}

impl ShiftReport {
    /// Almost rigid as a three-valued answer: an undecided shift leaves an
    /// empty period set open.
    pub fn almost_rigid_tri(&self) -> Tri {
        match (self.periods.is_empty(), self.incomplete) {
            (false, _) => Tri::No,
            (true, false) => Tri::Yes,
            (true, true) => Tri::Unknown,
        }
    }
}

/// Shape of the set of vertices moved towards the end.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RayDescriptor {
    RayFrom { origin: VertexAddress },
    FixedPointSet,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Engine {
    /// Default bound on tried periods.
    pub fn shift_bound(&self, seq: &ComponentSeq) -> usize {
        match seq {
            ComponentSeq::Periodic { prefix, cycle } => 2 * (prefix.len() + cycle.len()),
            ComponentSeq::Generated { .. } => self.cfg.shift_bound_generated,
        }
    }

    pub fn shift_report(&self, t: &Term, bound: Option<usize>) -> Result<ShiftReport> {
        let seq = spine_seq(t)?;
        let bound = bound.unwrap_or_else(|| self.shift_bound(seq));
        let mut periods = BTreeSet::new();
        let mut incomplete = false;
        for k in 1..=bound {
            match self.componentwise(seq, seq, k) {
                Tri::Yes => {
                    periods.insert(k);
                }
                Tri::Unknown => incomplete = true,
                Tri::No => {}
            }
        }
        let d_gcd = periods.iter().copied().reduce(gcd);
        Ok(ShiftReport {
            almost_rigid: periods.is_empty(),
            periods,
            d_gcd,
            incomplete,
            path_aligned: true,
        })
    }

    fn require_shift(&self, t: &Term, k: usize) -> Result<()> {
        let seq = spine_seq(t)?;
        if k > 0 && !self.componentwise(seq, seq, k).is_yes() {
            return Err(Error::Precondition(format!("{k} is not a shift period of {t}")));
        }
        Ok(())
    }

    /// The shift by `k` moves the spine forward and leaves its first `k`
    /// vertices out of the range.
    pub fn classify_shift(&self, t: &Term, k: usize) -> Result<EndoClassification<VertexAddress>> {
        self.require_shift(t, k)?;
        if k == 0 {
            return Ok(EndoClassification::Rotation {
                fixed: VertexAddress::spine(0),
            });
        }
        Ok(EndoClassification::RayForward {
            ray_origin: VertexAddress::spine(0),
            escaping: (0..k).map(VertexAddress::spine).collect(),
        })
    }

    pub fn s_f(&self, t: &Term, k: usize) -> Result<RayDescriptor> {
        self.require_shift(t, k)?;
        Ok(if k == 0 {
            RayDescriptor::FixedPointSet
        } else {
            RayDescriptor::RayFrom {
                origin: VertexAddress::spine(0),
            }
        })
    }

    /// Image of `x` under the shift by `k`, with the componentwise
    /// embedding realised on truncations of depth `depth`.
    pub fn shift_image(&self, t: &Term, k: usize, x: &VertexAddress, depth: usize) -> Result<VertexAddress> {
        self.require_shift(t, k)?;
        let seq = spine_seq(t)?;
        let (n, rest) = split(x);
        let from = truncate_with(&seq.component(n), depth, self.cfg.width);
        let to = truncate_with(&seq.component(n + k), depth, self.cfg.width);
        let v = from.vertex_of(&rest).ok_or_else(|| Error::Address {
            address: x.to_string(),
            reason: format!("not within depth {depth} of its spine vertex"),
        })?;
        let map = rooted_embedding(&from.tree, &to.tree).ok_or_else(|| {
            Error::Unsupported(format!("truncated component {n} does not embed at depth {depth}"))
        })?;
        let mut steps = vec![Step::Spine(n + k)];
        steps.extend_from_slice(to.addresses[map[v]].steps());
        Ok(VertexAddress(steps))
    }

    /// Is there `n` and `p` with stage `n` equimorphic to stage `n + p`?
    /// Contexts preserve embeddings, so the classes then repeat with period
    /// `p`.
    fn generated_repeat(&self, seq: &ComponentSeq) -> Option<(usize, usize)> {
        let h = self.cfg.horizon;
        let comps = seq.components(seq.prefix().len() + h + 1);
        let start = seq.prefix().len();
        for end in start + 1..comps.len() {
            for n in start..end {
                if self.equimorphic_rooted(&comps[n], &comps[end]).is_yes() {
                    return Some((n, end - n));
                }
            }
        }
        None
    }

    /// A measure that grows strictly over the last two steps of the horizon
    /// keeps growing: sizes, end counts and heights of stages follow maps of
    /// the form `max(c, a + m * x)`. Each is monotone under embedding, so
    /// the stages fall into infinitely many classes.
    fn growth_certificate(&self, seq: &ComponentSeq) -> Option<&'static str> {
        let ComponentSeq::Generated { generator, .. } = seq else {
            return None;
        };
        let h = self.cfg.horizon.max(2);
        let stages = [generator.stage(h - 2), generator.stage(h - 1), generator.stage(h)];
        let grows = |f: &dyn Fn(&Term) -> Option<u128>| {
            let v: Vec<_> = stages.iter().map(f).collect();
            matches!((v[0], v[1], v[2]), (Some(a), Some(b), Some(c)) if a < b && b < c)
        };
        if grows(&|t| t.size()) {
            Some("stage sizes grow")
        } else if grows(&|t| t.end_count()) {
            Some("stage end counts grow")
        } else if grows(&|t| t.height_with(self.cfg.horizon).map(u128::from)) {
            Some("stage heights grow")
        } else {
            None
        }
    }

    /// Finitely many equimorphism classes of components?
    pub fn is_regular_end(&self, t: &Term) -> Result<Tri> {
        let seq = spine_seq(t)?;
        if seq.is_periodic() || self.generated_repeat(seq).is_some() {
            return Ok(Tri::Yes);
        }
        if self.growth_certificate(seq).is_some() {
            return Ok(Tri::No);
        }
        Ok(Tri::Unknown)
    }

    /// Why the end is or is not regular, for reports.
    pub fn regularity_note(&self, t: &Term) -> Result<String> {
        let seq = spine_seq(t)?;
        if seq.is_periodic() {
            return Ok("periodic components".into());
        }
        if let Some((n, p)) = self.generated_repeat(seq) {
            return Ok(format!("stage {n} equimorphic to stage {}", n + p));
        }
        Ok(match self.growth_certificate(seq) {
            Some(why) => why.into(),
            None => format!("no repeat or growth within horizon {}", self.cfg.horizon),
        })
    }

    /// Components from `start` on repeat their classes with period `len`.
    fn class_pattern(&self, seq: &ComponentSeq) -> Option<(usize, usize)> {
        match seq {
            ComponentSeq::Periodic { prefix, cycle } => Some((prefix.len(), cycle.len())),
            ComponentSeq::Generated { .. } => self.generated_repeat(seq),
        }
    }

    /// Least `p` with component `n` equimorphic to component `n + p` for
    /// every large `n`.
    pub fn ray_period(&self, t: &Term) -> Result<Option<usize>> {
        let seq = spine_seq(t)?;
        if self.is_regular_end(t)?.is_no() {
            return Ok(None);
        }
        let (start, len) = self.class_pattern(seq).ok_or_else(|| {
            Error::Undecided(format!("regularity of {t} within horizon {}", self.cfg.horizon))
        })?;
        let comps = seq.components(start + 2 * len);
        for p in (1..=len).filter(|p| len % p == 0) {
            let fits = (start..start + len)
                .map(|n| self.equimorphic_rooted(&comps[n], &comps[n + p]))
                .fold(Tri::Yes, Tri::and);
            match fits {
                Tri::Yes => return Ok(Some(p)),
                Tri::Unknown => return Err(Error::Undecided(format!("equimorphy of components of {t}"))),
                Tri::No => {}
            }
        }
        Ok(Some(len))
    }

    /// Least `m` such that component `j` is equimorphic to component `j + d`
    /// for all `j >= m`.
    fn period_endpoint(&self, seq: &ComponentSeq, d: usize, start: usize, len: usize) -> Result<usize> {
        let comps = seq.components(start + len + d);
        let holds: Vec<Tri> = (0..start + len)
            .map(|j| self.equimorphic_rooted(&comps[j], &comps[j + d]))
            .collect();
        if holds.contains(&Tri::Unknown) {
            return Err(Error::Undecided("equimorphy of components".into()));
        }
        if !holds[start..].iter().all(|r| r.is_yes()) {
            return Err(Error::Precondition(format!("{d} is not an eventual period")));
        }
        let mut m = start;
        while m > 0 && holds[m - 1].is_yes() {
            m -= 1;
        }
        Ok(m)
    }

    /// Least spine index from which shifting by `k` keeps every component
    /// in its equimorphism class.
    pub fn period_start(&self, t: &Term, k: usize) -> Result<usize> {
        let seq = spine_seq(t)?;
        let (start, len) = self.class_pattern(seq).ok_or_else(|| {
            Error::Undecided(format!("regularity of {t} within horizon {}", self.cfg.horizon))
        })?;
        self.period_endpoint(seq, k, start, len)
    }

    /// Join of the starting points of the preserved rays of the detected
    /// shifts; it lies within `d` of each of them.
    pub fn origin_vertex(&self, t: &Term) -> Result<VertexAddress> {
        let undefined = |why: &str| Error::Precondition(format!("origin undefined: {why}"));
        let seq = spine_seq(t)?;
        if !self.is_regular_end(t)?.is_yes() {
            return Err(undefined("the end is not known to be regular"));
        }
        let report = self.shift_report(t, None)?;
        let d = report.d_gcd.ok_or_else(|| undefined("no shift moves the end"))?;
        let (start, len) = self
            .class_pattern(seq)
            .ok_or_else(|| undefined("no class pattern"))?;
        let mut ends = Vec::new();
        for &p in &report.periods {
            ends.push(self.period_endpoint(seq, p, start, len)?);
        }
        let origin = *ends.iter().max().expect("nonempty periods");
        if let Some(far) = ends.iter().find(|&&m| origin - m > d) {
            return Err(Error::Precondition(format!(
                "origin spine[{origin}] is farther than {d} from spine[{far}]"
            )));
        }
        Ok(VertexAddress::spine(origin))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EndReport {
    pub periods: Vec<usize>,
    pub d: Option<usize>,
    pub almost_rigid: bool,
    pub incomplete: bool,
    pub regular: Tri,
    pub ray_period: Option<usize>,
    pub origin: Option<VertexAddress>,
    pub path_aligned: bool,
}

impl Engine {
    pub fn end_report(&self, t: &Term) -> Result<EndReport> {
        let shifts = self.shift_report(t, None)?;
        let regular = self.is_regular_end(t)?;
        Ok(EndReport {
            periods: shifts.periods.iter().copied().collect(),
            d: shifts.d_gcd,
            almost_rigid: shifts.almost_rigid,
            incomplete: shifts.incomplete,
            regular,
            ray_period: self.ray_period(t).ok().flatten(),
            origin: self.origin_vertex(t).ok(),
            path_aligned: true,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse_term;

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn a(s: &str) -> VertexAddress {
        s.parse().unwrap()
    }

    #[test]
    fn valuations() {
        let ex1 = t("ex1");
        let v = valuation(&ex1, VertexAddress::spine(0)).unwrap();
        for n in 0..6 {
            assert_eq!(v.evaluate(&VertexAddress::spine(n)).unwrap(), n as i64);
        }
        assert_eq!(v.evaluate(&a("spine[2].into")).unwrap(), 1);
        assert_eq!(v.evaluate(&VertexAddress::root()).unwrap(), 0);
        let w = valuation(&ex1, VertexAddress::spine(3)).unwrap();
        let y = a("spine[4].into.arm[0,1].into");
        assert_eq!(v.evaluate(&y).unwrap() - w.evaluate(&y).unwrap(), 3);
        assert!(valuation(&Term::Box, VertexAddress::root()).is_err());
    }

    #[test]
    fn joins() {
        let ex1 = t("ex1");
        let j = |x: &str, y: &str| join_e(&ex1, &a(x), &a(y)).unwrap().to_string();
        assert_eq!(j("spine[2]", "spine[5]"), "spine[5]");
        assert_eq!(j("spine[1].into", "spine[4].into"), "spine[4]");
        assert_eq!(j("spine[3].into", "spine[3].into"), "spine[3].into");
        assert_eq!(j("root", "spine[1].into"), "spine[1]");
    }

    #[test]
    fn shifts() {
        let e = Engine::default();
        let ray = Term::ray();
        let r = e.shift_report(&ray, Some(4)).unwrap();
        assert_eq!(r.periods, BTreeSet::from([1, 2, 3, 4]));
        assert_eq!(r.d_gcd, Some(1));
        let r = e.shift_report(&t("ex1"), None).unwrap();
        assert!(r.periods.contains(&1) && !r.almost_rigid);
        let r = e.shift_report(&t("ex4"), None).unwrap();
        assert!(r.periods.is_empty() && r.almost_rigid && !r.incomplete);
        assert!(matches!(
            e.classify_shift(&ray, 1).unwrap(),
            EndoClassification::RayForward { .. }
        ));
        assert_eq!(
            e.classify_shift(&ray, 0).unwrap(),
            EndoClassification::Rotation {
                fixed: VertexAddress::spine(0)
            }
        );
        assert_eq!(e.s_f(&ray, 0).unwrap(), RayDescriptor::FixedPointSet);
        assert!(e.classify_shift(&t("ex4"), 1).is_err());
    }

    #[test]
    fn regularity_and_periods() {
        let e = Engine::default();
        assert_eq!(e.is_regular_end(&Term::ray()).unwrap(), Tri::Yes);
        for ex in ["ex1", "ex2", "ex3", "ex4"] {
            assert_eq!(e.is_regular_end(&t(ex)).unwrap(), Tri::No, "{ex}");
        }
        assert_eq!(e.ray_period(&Term::ray()).unwrap(), Some(1));
        assert_eq!(e.ray_period(&t("wsum([](succ(box),box))")).unwrap(), Some(2));
        assert_eq!(e.ray_period(&t("ex1")).unwrap(), None);
    }

    #[test]
    fn origins() {
        let e = Engine::default();
        assert_eq!(e.origin_vertex(&Term::ray()).unwrap(), VertexAddress::spine(0));
        assert_eq!(
            e.origin_vertex(&t("wsum([box](succ(box)))")).unwrap(),
            VertexAddress::spine(1)
        );
        assert!(e.origin_vertex(&t("ex1")).is_err());
    }

    #[test]
    fn shift_images_move_levels() {
        let e = Engine::default();
        let ex1 = t("ex1");
        let x = a("spine[2].into.arm[0,1].into");
        let y = e.shift_image(&ex1, 1, &x, 6).unwrap();
        let v = valuation(&ex1, VertexAddress::spine(0)).unwrap();
        assert_eq!(v.evaluate(&y).unwrap(), v.evaluate(&x).unwrap() + 1);
    }
}
