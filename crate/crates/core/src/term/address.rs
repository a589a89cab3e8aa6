use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use super::Term;
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Step {
    /// The `n`-th spine vertex of a sum (the root of component `n`).
    Spine(usize),
    /// Into copy `copy` of arm `index` of a sup, or stage `index` of a supseq.
    Arm { index: usize, copy: u64 },
    /// The child of a successor.
    Into,
}

impl Step {
    /// Edges travelled away from the root by this step.
    pub fn length(self) -> u64 {
        match self {
            Step::Spine(n) => n as u64,
            Step::Arm { .. } => 0,
            Step::Into => 1,
        }
    }
}

/// A path of steps from the root. The empty address is the root.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct VertexAddress(pub Vec<Step>);

impl VertexAddress {
    pub fn root() -> Self {
        VertexAddress(Vec::new())
    }

    pub fn spine(n: usize) -> Self {
        VertexAddress(vec![Step::Spine(n)])
    }

    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    pub fn child(&self, step: Step) -> Self {
        let mut v = self.0.clone();
        v.push(step);
        VertexAddress(v)
    }

    /// Distance from the root.
    pub fn depth(&self) -> u64 {
        self.0.iter().map(|s| s.length()).sum()
    }

    /// Index of the top-level spine vertex this address hangs from.
    pub fn spine_index(&self) -> usize {
        match self.0.first() {
            Some(Step::Spine(n)) => *n,
            _ => 0,
        }
    }

    /// The address with a leading spine step, so root and `spine[0]` agree.
    pub(crate) fn spine_form(&self) -> Self {
        match self.0.first() {
            Some(Step::Spine(_)) => self.clone(),
            _ => {
                let mut v = vec![Step::Spine(0)];
                v.extend_from_slice(&self.0);
                VertexAddress(v)
            }
        }
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Spine(n) => write!(f, "spine[{n}]"),
            Step::Arm { index, copy } => write!(f, "arm[{index},{copy}]"),
            Step::Into => write!(f, "into"),
        }
    }
}

impl fmt::Display for VertexAddress {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "root");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl Serialize for VertexAddress {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl FromStr for VertexAddress {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        if text == "root" || text.is_empty() {
            return Ok(VertexAddress::root());
        }
        let bad = |reason: &str| Error::Address {
            address: text.to_string(),
            reason: reason.to_string(),
        };
        let mut steps = Vec::new();
        for part in text.split('.') {
            let part = part.trim();
            if part == "into" {
                steps.push(Step::Into);
            } else if let Some(inner) = part.strip_prefix("spine[").and_then(|r| r.strip_suffix(']')) {
                steps.push(Step::Spine(
                    inner.trim().parse().map_err(|_| bad("bad spine index"))?,
                ));
            } else if let Some(inner) = part.strip_prefix("arm[").and_then(|r| r.strip_suffix(']')) {
                let (i, c) = inner.split_once(',').ok_or_else(|| bad("arm needs index,copy"))?;
                steps.push(Step::Arm {
                    index: i.trim().parse().map_err(|_| bad("bad arm index"))?,
                    copy: c.trim().parse().map_err(|_| bad("bad copy index"))?,
                });
            } else {
                return Err(bad(&format!("unknown step '{part}'")));
            }
        }
        Ok(VertexAddress(steps))
    }
}

/// Where an address lands inside a term.
#[derive(Clone, Debug)]
pub struct Located {
    /// Everything below the vertex in the rooted orientation.
    pub below: Term,
    /// The piece hanging at the vertex; for a spine vertex, its component.
    pub local: Term,
    pub depth: u64,
}

/// Answer of [`resolve`].
#[derive(Clone, Debug, Serialize)]
pub struct Resolved {
    #[serde(serialize_with = "as_text")]
    pub subterm_below: Term,
    pub component: Option<usize>,
    /// Vertex degree in the whole tree; `None` when infinite.
    pub degree: Option<u64>,
    pub depth: u64,
}

fn as_text<S: Serializer>(t: &Term, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(t)
}

pub fn locate(t: &Term, a: &VertexAddress) -> Result<Located> {
    let fail = |reason: String| Error::Address {
        address: a.to_string(),
        reason,
    };
    let mut below = t.clone();
    let mut local = t.clone();
    for step in a.steps() {
        match (step, &local) {
            (Step::Spine(n), Term::WSum(seq)) => {
                below = Term::wsum(seq.shift(*n));
                local = seq.component(*n);
            }
            (Step::Arm { index, copy }, Term::Sup(arms)) => {
                let (arm, m) = arms.get(*index).ok_or_else(|| fail(format!("no arm {index}")))?;
                if let Some(k) = m.finite() {
                    if *copy >= k {
                        return Err(fail(format!("arm {index} has only {k} copies")));
                    }
                }
                local = arm.clone();
                below = local.clone();
            }
            (Step::Arm { index, copy }, Term::SupSeq(seq)) => {
                if *copy != 0 {
                    return Err(fail("supseq stages have a single copy".into()));
                }
                local = seq.component(*index);
                below = local.clone();
            }
            (Step::Into, Term::Succ(c)) => {
                local = (**c).clone();
                below = local.clone();
            }
            (step, here) => {
                return Err(fail(format!("step {step} does not apply to {here}")));
            }
        }
    }
    Ok(Located {
        below,
        local,
        depth: a.depth(),
    })
}

/// Component index, degree and the subterm hanging at an address.
pub fn resolve(t: &Term, a: &VertexAddress) -> Result<Resolved> {
    let loc = locate(t, a)?;
    let parent = u64::from(loc.depth > 0);
    Ok(Resolved {
        degree: loc.below.root_degree().map(|d| d + parent),
        component: match a.steps().first() {
            Some(Step::Spine(n)) => Some(*n),
            _ => None,
        },
        subterm_below: loc.local,
        depth: loc.depth,
    })
}

/// Last common vertex of the root paths of `a` and `b`.
pub fn join_addresses(a: &VertexAddress, b: &VertexAddress) -> VertexAddress {
    let mut out = Vec::new();
    for (x, y) in a.steps().iter().zip(b.steps()) {
        if x == y {
            out.push(*x);
            continue;
        }
        if let (Step::Spine(m), Step::Spine(n)) = (x, y) {
            out.push(Step::Spine(*m.min(n)));
        }
        break;
    }
    VertexAddress(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::parse_term;

    #[test]
    fn print_and_parse() {
        let a: VertexAddress = "spine[2].into.arm[1,0]".parse().unwrap();
        assert_eq!(a.to_string(), "spine[2].into.arm[1,0]");
        assert_eq!(a.depth(), 3);
        assert_eq!("root".parse::<VertexAddress>().unwrap(), VertexAddress::root());
        assert!("spine[x]".parse::<VertexAddress>().is_err());
    }

    #[test]
    fn resolve_examples() {
        let ray = Term::ray();
        assert_eq!(
            resolve(&ray, &VertexAddress::spine(0)).unwrap().subterm_below,
            Term::Box
        );
        let ex1 = parse_term("ex1").unwrap();
        let r = resolve(&ex1, &VertexAddress::spine(2)).unwrap();
        assert_eq!(r.subterm_below, ex1.seq().unwrap().component(2));
        assert_eq!(r.component, Some(2));
        assert!(resolve(&Term::Box, &VertexAddress::spine(1)).is_err());
        let star = parse_term("sup(succ(box)*3)").unwrap();
        let leaf: VertexAddress = "arm[0,2].into".parse().unwrap();
        assert_eq!(resolve(&star, &leaf).unwrap().degree, Some(1));
        assert!(resolve(&star, &"arm[0,3].into".parse().unwrap()).is_err());
    }

    #[test]
    fn joins() {
        let a: VertexAddress = "spine[1].into".parse().unwrap();
        let b: VertexAddress = "spine[4].into.into".parse().unwrap();
        assert_eq!(join_addresses(&a, &b), VertexAddress::spine(1));
        let j = join_addresses(&a, &b);
        assert_eq!(a.depth() + b.depth() - 2 * j.depth(), 1 + 3 + 2);
        assert_eq!(join_addresses(&a, &a), a);
    }
}
