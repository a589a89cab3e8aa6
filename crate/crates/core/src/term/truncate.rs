use std::collections::VecDeque;
use std::fmt::Write as _;

use serde_json::json;

use super::{Mult, Step, Term, VertexAddress};
use crate::finite_tree::{FiniteTree, RootedFiniteTree};

/// A finite ball around the root of a term.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub tree: RootedFiniteTree,
    /// Address of every vertex, indexed by vertex id.
    pub addresses: Vec<VertexAddress>,
    /// Spine vertices of the outermost sum.
    pub spine: Vec<bool>,
    /// Some infinite multiplicity or supseq was clipped.
    pub lossy: bool,
}

/// Truncation at `depth` with the default width of 3.
pub fn truncate(t: &Term, depth: usize) -> Truncation {
    truncate_with(t, depth, 3)
}

pub fn truncate_with(t: &Term, depth: usize, width: usize) -> Truncation {
    let mut b = Builder {
        width,
        edges: Vec::new(),
        addresses: vec![VertexAddress::root()],
        spine: vec![t.is_wsum()],
        lossy: false,
    };
    b.expand(t, 0, depth, &VertexAddress::root(), true);
    let n = b.addresses.len();
    let tree = FiniteTree::new(n, &b.edges).expect("builder emits a tree");
    Truncation {
        tree: tree.rooted(0),
        addresses: b.addresses,
        spine: b.spine,
        lossy: b.lossy,
    }
}

struct Builder {
    width: usize,
    edges: Vec<(usize, usize)>,
    addresses: Vec<VertexAddress>,
    spine: Vec<bool>,
    lossy: bool,
}

impl Builder {
    fn vertex(&mut self, parent: usize, addr: VertexAddress, on_spine: bool) -> usize {
        let id = self.addresses.len();
        self.addresses.push(addr);
        self.spine.push(on_spine);
        self.edges.push((parent, id));
        id
    }

    /// Adds everything below vertex `v`, which is the root of `t`.
    fn expand(&mut self, t: &Term, v: usize, left: usize, addr: &VertexAddress, top: bool) {
        if left == 0 {
            return;
        }
        match t {
            Term::Box => {}
            Term::Succ(c) => {
                let a = addr.child(Step::Into);
                let w = self.vertex(v, a.clone(), false);
                self.expand(c, w, left - 1, &a, false);
            }
            Term::Sup(arms) => {
                for (i, (arm, m)) in arms.iter().enumerate() {
                    let copies = match m {
                        Mult::Finite(k) => *k,
                        Mult::Omega => {
                            self.lossy = true;
                            self.width as u64
                        }
                    };
                    if arm.is_box() {
                        continue;
                    }
                    for c in 0..copies {
                        let a = addr.child(Step::Arm { index: i, copy: c });
                        self.expand(arm, v, left, &a, false);
                    }
                }
            }
            Term::WSum(seq) => {
                let comps = seq.components(left + 1);
                let mut here = v;
                for (n, comp) in comps.iter().enumerate() {
                    let a = addr.child(Step::Spine(n));
                    if n > 0 {
                        here = self.vertex(here, a.clone(), top);
                    }
                    self.expand(comp, here, left - n, &a, false);
                }
            }
            Term::SupSeq(seq) => {
                self.lossy = true;
                let count = self.width + 1;
                let stages = seq.components(count);
                for (n, s) in stages.iter().enumerate() {
                    let a = addr.child(Step::Arm { index: n, copy: 0 });
                    self.expand(s, v, left, &a, false);
                }
            }
        }
    }
}

impl Truncation {
    pub fn n(&self) -> usize {
        self.tree.n()
    }

    pub fn spine_vertices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.spine[v]).collect()
    }

    pub fn vertex_of(&self, a: &VertexAddress) -> Option<usize> {
        self.addresses.iter().position(|x| x == a)
    }

    /// The vertices within `radius` of `center`, rooted at `center`.
    pub fn ball(&self, center: usize, radius: usize) -> RootedFiniteTree {
        let t = &self.tree.tree;
        let mut dist = vec![usize::MAX; t.n()];
        dist[center] = 0;
        let mut order = vec![center];
        let mut queue = VecDeque::from([center]);
        while let Some(u) = queue.pop_front() {
            if dist[u] == radius {
                continue;
            }
            for &w in t.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }
        let (sub, _) = t.induced(&order).expect("a ball is connected");
        sub.rooted(0)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "n": self.n(),
            "root": self.tree.root,
            "edges": self.tree.tree.edges().iter().map(|&(u, v)| [u, v]).collect::<Vec<_>>(),
            "spine": self.spine_vertices(),
            "addresses": self.addresses.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
            "lossy": self.lossy,
        })
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph truncation {\n");
        for v in 0..self.n() {
            let shape = if self.spine[v] { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  {v} [label=\"{}\", shape={shape}];", self.addresses[v]);
        }
        for (u, v) in self.tree.tree.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }
}
