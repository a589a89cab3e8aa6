//! What every self-embedding must preserve, and how many twins a tree has.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::engine::Engine;
use crate::error::Result;
use crate::finite_tree::{center, Center};
use crate::rank::{RankSummary, TopEnds};
use crate::term::{truncate_with, ComponentSeq, Term, Tri, VertexAddress};

/// Size of the set of twins up to isomorphism.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TwinCard {
    One,
    Exactly(u64),
    /// Countably infinite, or at least infinite.
    Infinite,
    Continuum,
    Unknown,
}

impl fmt::Display for TwinCard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwinCard::One => write!(f, "one"),
            TwinCard::Exactly(n) => write!(f, "exactly({n})"),
            TwinCard::Infinite => write!(f, "infinite"),
            TwinCard::Continuum => write!(f, "continuum"),
            TwinCard::Unknown => write!(f, "unknown"),
        }
    }
}

impl Serialize for TwinCard {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    Vertex {
        address: VertexAddress,
    },
    Edge {
        ends: (VertexAddress, VertexAddress),
    },
    /// Infinite rayless trees fix a vertex or an edge; it is not computed.
    ExistenceOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CoreReason {
    LimitRank,
    ManyTopEnds,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum Certificate {
    FixedVertexOrEdge {
        evidence: Evidence,
    },
    UniqueEndForward {
        regular: Tri,
        almost_rigid: Tri,
        ray_origin: Option<VertexAddress>,
    },
    TwoEnds,
    RaylessCore {
        reason: CoreReason,
    },
}

/// Which branch of the classification a rank summary selects.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    FiniteCenter,
    RaylessInfinite,
    RaylessCore(CoreReason),
    TwoEnds,
    UniqueEnd,
}

pub fn branch_of(rayless: bool, finite: bool, rank: &RankSummary) -> Branch {
    if rayless {
        return if finite {
            Branch::FiniteCenter
        } else {
            Branch::RaylessInfinite
        };
    }
    if rank.limit_flag {
        return Branch::RaylessCore(CoreReason::LimitRank);
    }
    match rank.top_ends {
        TopEnds::Exactly(1) => Branch::UniqueEnd,
        TopEnds::Exactly(2) => Branch::TwoEnds,
        _ => Branch::RaylessCore(CoreReason::ManyTopEnds),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StabilityReport {
    #[serde(flatten)]
    pub certificate: Certificate,
    pub rank: RankSummary,
    pub twins: TwinCard,
    pub notes: Vec<String>,
}

fn finite_center(t: &Term) -> Evidence {
    let depth = t.height().expect("finite term") as usize;
    let tr = truncate_with(t, depth, 1);
    let addr = |v: usize| tr.addresses[v].clone();
    match center(&tr.tree.tree) {
        Center::Vertex(v) => Evidence::Vertex { address: addr(v) },
        Center::Edge(a, b) => Evidence::Edge {
            ends: (addr(a), addr(b)),
        },
    }
}

fn all_components_finite(seq: &ComponentSeq) -> bool {
    match seq {
        ComponentSeq::Periodic { prefix, cycle } => prefix.iter().chain(cycle).all(Term::is_finite),
        ComponentSeq::Generated { prefix, generator } => {
            prefix.iter().all(Term::is_finite)
                && generator.base.is_finite()
                && generator.context.preserves_finiteness()
        }
    }
}

fn is_bare_ray(seq: &ComponentSeq) -> bool {
    match seq {
        ComponentSeq::Periodic { prefix, cycle } => prefix.iter().chain(cycle).all(Term::is_box),
        ComponentSeq::Generated { .. } => false,
    }
}

impl Engine {
    pub fn classify(&self, t: &Term) -> Result<StabilityReport> {
        let rank = self.rank_summary(t)?;
        let mut notes = Vec::new();
        let certificate = match branch_of(t.is_rayless(), t.is_finite(), &rank) {
            Branch::FiniteCenter => Certificate::FixedVertexOrEdge {
                evidence: finite_center(t),
            },
            Branch::RaylessInfinite => {
                notes.push("rayless with a vertex of infinite degree: fixed vertex or edge exists".into());
                Certificate::FixedVertexOrEdge {
                    evidence: Evidence::ExistenceOnly,
                }
            }
            Branch::RaylessCore(reason) => {
                notes.push(
                    "the vertices realising the rank form a rayless subtree preserved by every embedding"
                        .into(),
                );
                Certificate::RaylessCore { reason }
            }
            Branch::TwoEnds => {
                notes.push("two ends of maximal rank; the set of both is preserved".into());
                Certificate::TwoEnds
            }
            Branch::UniqueEnd => self.unique_end(t, &mut notes)?,
        };
        let twins = self.twins_from(t, &certificate, &mut notes);
        Ok(StabilityReport {
            certificate,
            rank,
            twins,
            notes,
        })
    }

    fn unique_end(&self, t: &Term, notes: &mut Vec<String>) -> Result<Certificate> {
        let unknown = Certificate::UniqueEndForward {
            regular: Tri::Unknown,
            almost_rigid: Tri::Unknown,
            ray_origin: None,
        };
        let Term::WSum(seq) = t else {
            notes.push("the preserved end is not the spine of an outer sum; sub-analysis skipped".into());
            return Ok(unknown);
        };
        if self.property_star(seq)?.holds {
            notes.push("the preserved end lies inside a dominant component; sub-analysis skipped".into());
            return Ok(unknown);
        }
        let regular = self.is_regular_end(t)?;
        notes.push(format!("regularity: {}", self.regularity_note(t)?));
        let shifts = self.shift_report(t, None)?;
        let almost_rigid = shifts.almost_rigid_tri();
        if shifts.incomplete {
            notes.push("some shift periods undecided within the horizon".into());
        }
        notes.push("shift periods are relative to path-aligned embeddings".into());
        let mut ray_origin = None;
        if regular.is_yes() {
            if shifts.d_gcd.is_some() {
                ray_origin = self.origin_vertex(t).ok();
            } else if almost_rigid.is_yes() {
                notes.push("regular and almost rigid: a ray in the end is preserved".into());
            }
        }
        Ok(Certificate::UniqueEndForward {
            regular,
            almost_rigid,
            ray_origin,
        })
    }

    fn twins_from(&self, t: &Term, cert: &Certificate, notes: &mut Vec<String>) -> TwinCard {
        if t.is_finite() {
            return TwinCard::One;
        }
        let Certificate::UniqueEndForward {
            regular,
            almost_rigid,
            ..
        } = cert
        else {
            notes.push("twins: no counting rule for this variant".into());
            return TwinCard::Unknown;
        };
        if regular.is_no() && almost_rigid.is_no() {
            return TwinCard::Continuum;
        }
        let seq = t.seq().expect("sub-analysis ran on a sum");
        if is_bare_ray(seq) {
            return TwinCard::One;
        }
        if almost_rigid.is_yes() && all_components_finite(seq) {
            return TwinCard::One;
        }
        if regular.is_yes() && almost_rigid.is_no() {
            return TwinCard::Infinite;
        }
        notes.push(format!(
            "twins: blocked on regular={regular}, almost_rigid={almost_rigid}"
        ));
        TwinCard::Unknown
    }

    pub fn twin_cardinality(&self, t: &Term) -> Result<TwinCard> {
        Ok(self.classify(t)?.twins)
    }
}
