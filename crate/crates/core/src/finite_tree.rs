//! Concrete finite trees.
//!
//! Isomorphism is decided through AHU-style canonical codes. Rooted
//! embeddings are induced (adjacency preserved both ways) and map root to
//! root; feasibility at each vertex pair is a bipartite matching of the
//! children, memoized on the isomorphism classes of the two subtrees.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const NONE: usize = usize::MAX;

/// Default cap on the vertex count accepted by [`automorphisms`].
pub const AUTOMORPHISM_BOUND: usize = 12;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FiniteTree {
    adj: Vec<Vec<usize>>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RootedFiniteTree {
    pub tree: FiniteTree,
    pub root: usize,
}

/// Result of iterated leaf stripping.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Center {
    Vertex(usize),
    Edge(usize, usize),
}

/// The four shapes a self-map of a tree can take. On finite trees only
/// `Rotation` and `Inversion` occur.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EndoClassification<V> {
    Rotation { fixed: V },
    Inversion { edge: (V, V) },
    Translation { axis: Vec<V> },
    RayForward { ray_origin: V, escaping: Vec<V> },
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct EdgeListJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl FiniteTree {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTree("a tree has at least one vertex".into()));
        }
        if edges.len() != n - 1 {
            return Err(Error::InvalidTree(format!(
                "{} edges for {n} vertices",
                edges.len()
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidTree(format!("edge ({u},{v}) out of range")));
            }
            if u == v {
                return Err(Error::InvalidTree(format!("self-loop at {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidTree("repeated edge".into()));
            }
        }
        let t = FiniteTree { adj };
        if t.bfs_order(0).len() != n {
            return Err(Error::InvalidTree("not connected".into()));
        }
        Ok(t)
    }

    pub fn single() -> Self {
        FiniteTree { adj: vec![vec![]] }
    }

    /// Path on `n` vertices `0 - 1 - ... - n-1`.
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(n, &edges).expect("path is a tree")
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Self::new(leaves + 1, &edges).expect("star is a tree")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.n().saturating_sub(1));
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn is_adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    fn bfs_order(&self, root: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n()];
        let mut order = Vec::with_capacity(self.n());
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        order
    }

    pub fn distances_from(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![NONE; self.n()];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            for &v in &self.adj[u] {
                if dist[v] == NONE {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Vertices of the unique path from `a` to `b`, both included.
    pub fn path_between(&self, a: usize, b: usize) -> Vec<usize> {
        let parent = parents_from(self, b);
        let mut out = vec![a];
        let mut cur = a;
        while cur != b {
            cur = parent[cur];
            out.push(cur);
        }
        out
    }

    pub fn rooted(self, root: usize) -> RootedFiniteTree {
        assert!(root < self.n(), "root out of range");
        RootedFiniteTree { tree: self, root }
    }

    pub fn to_json(&self) -> EdgeListJson {
        EdgeListJson {
            n: self.n(),
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn from_json(j: &EdgeListJson) -> Result<Self> {
        let edges: Vec<_> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        Self::new(j.n, &edges)
    }

    /// Induced subtree on `keep` (which must be connected), with the
    /// old-to-new vertex map.
    pub fn induced(&self, keep: &[usize]) -> Result<(FiniteTree, Vec<usize>)> {
        let mut index = vec![NONE; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut edges = Vec::new();
        for &u in keep {
            for &v in &self.adj[u] {
                if index[v] != NONE && u < v {
                    edges.push((index[u], index[v]));
                }
            }
        }
        Ok((FiniteTree::new(keep.len(), &edges)?, index))
    }
}

fn parents_from(t: &FiniteTree, root: usize) -> Vec<usize> {
    let mut parent = vec![NONE; t.n()];
    let mut seen = vec![false; t.n()];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &v in &t.adj[u] {
            if !seen[v] {
                seen[v] = true;
                parent[v] = u;
                queue.push_back(v);
            }
        }
    }
    parent
}

impl RootedFiniteTree {
    pub fn single() -> Self {
        FiniteTree::single().rooted(0)
    }

    pub fn n(&self) -> usize {
        self.tree.n()
    }

    /// Children lists in the orientation away from the root.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let parent = parents_from(&self.tree, self.root);
        (0..self.n())
            .map(|u| {
                self.tree.adj[u]
                    .iter()
                    .copied()
                    .filter(|&v| parent[u] != v)
                    .collect()
            })
            .collect()
    }

    pub fn depths(&self) -> Vec<usize> {
        self.tree.distances_from(self.root)
    }

    /// Parses the nested-parentheses rooted code, e.g. `(()())`.
    pub fn parse(text: &str) -> Result<Self> {
        let bytes: Vec<(usize, u8)> = text
            .bytes()
            .enumerate()
            .filter(|(_, b)| !b.is_ascii_whitespace())
            .collect();
        let mut edges = Vec::new();
        let mut stack: Vec<usize> = Vec::new();
        let mut count = 0usize;
        let mut closed_root = false;
        for &(pos, b) in &bytes {
            if closed_root {
                return Err(Error::Syntax {
                    pos,
                    msg: "input continues after the root closed".into(),
                });
            }
            match b {
                b'(' => {
                    let id = count;
                    count += 1;
                    if let Some(&p) = stack.last() {
                        edges.push((p, id));
                    }
                    stack.push(id);
                }
                b')' => {
                    if stack.pop().is_none() {
                        return Err(Error::Syntax {
                            pos,
                            msg: "unbalanced ')'".into(),
                        });
                    }
                    if stack.is_empty() {
                        closed_root = true;
                    }
                }
                _ => {
                    return Err(Error::Syntax {
                        pos,
                        msg: format!("unexpected character '{}'", b as char),
                    })
                }
            }
        }
        if !closed_root {
            return Err(Error::Syntax {
                pos: text.len(),
                msg: "unterminated tree code".into(),
            });
        }
        Ok(FiniteTree::new(count, &edges)?.rooted(0))
    }
}

impl fmt::Display for RootedFiniteTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", canonical_code(self))
    }
}

/// Sorted-children bracket string of a rooted tree.
pub fn canonical_code(t: &RootedFiniteTree) -> String {
    let children = t.children();
    let order = t.tree.bfs_order(t.root);
    let mut codes: Vec<String> = vec![String::new(); t.n()];
    for &u in order.iter().rev() {
        let mut parts: Vec<String> = children[u]
            .iter()
            .map(|&c| std::mem::take(&mut codes[c]))
            .collect();
        parts.sort_unstable();
        let mut s = String::with_capacity(2 + parts.iter().map(String::len).sum::<usize>());
        s.push('(');
        for p in parts {
            s.push_str(&p);
        }
        s.push(')');
        codes[u] = s;
    }
    std::mem::take(&mut codes[t.root])
}

/// Unrooted canonical code: the least rooted code over the center vertices.
pub fn unrooted_code(t: &FiniteTree) -> String {
    match center(t) {
        Center::Vertex(c) => canonical_code(&t.clone().rooted(c)),
        Center::Edge(a, b) => {
            let ca = canonical_code(&t.clone().rooted(a));
            let cb = canonical_code(&t.clone().rooted(b));
            ca.min(cb)
        }
    }
}

pub fn is_isomorphic(a: &FiniteTree, b: &FiniteTree) -> bool {
    a.n() == b.n() && unrooted_code(a) == unrooted_code(b)
}

pub fn is_rooted_isomorphic(a: &RootedFiniteTree, b: &RootedFiniteTree) -> bool {
    a.n() == b.n() && canonical_code(a) == canonical_code(b)
}

pub fn center(t: &FiniteTree) -> Center {
    let n = t.n();
    if n == 1 {
        return Center::Vertex(0);
    }
    let mut degree: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &leaf in &layer {
            degree[leaf] = 0;
            for &v in t.neighbors(leaf) {
                if degree[v] > 0 {
                    degree[v] -= 1;
                    if degree[v] == 1 {
                        next.push(v);
                    }
                }
            }
        }
        layer = next;
    }
    match layer.as_slice() {
        [v] => Center::Vertex(*v),
        [a, b] => Center::Edge((*a).min(*b), (*a).max(*b)),
        _ => unreachable!("leaf stripping leaves one vertex or one edge"),
    }
}

/// Interns rooted subtree shapes as small integers so that equal shapes
/// share an id across different trees.
#[derive(Default)]
pub(crate) struct ShapeInterner {
    ids: HashMap<Vec<u32>, u32>,
}

impl ShapeInterner {
    /// Shape id of every vertex of `t` oriented by `parent`.
    fn shapes(&mut self, t: &FiniteTree, order: &[usize], parent: &[usize]) -> Vec<u32> {
        let mut shape = vec![0u32; t.n()];
        for &u in order.iter().rev() {
            let mut kids: Vec<u32> = t.adj[u]
                .iter()
                .filter(|&&v| v != parent[u])
                .map(|&v| shape[v])
                .collect();
            kids.sort_unstable();
            let next = self.ids.len() as u32;
            shape[u] = *self.ids.entry(kids).or_insert(next);
        }
        shape
    }
}

struct Oriented {
    children: Vec<Vec<usize>>,
    shape: Vec<u32>,
    size: Vec<usize>,
    height: Vec<usize>,
}

impl Oriented {
    fn new(t: &RootedFiniteTree, interner: &mut ShapeInterner) -> Self {
        let parent = parents_from(&t.tree, t.root);
        let order = t.tree.bfs_order(t.root);
        let shape = interner.shapes(&t.tree, &order, &parent);
        let children: Vec<Vec<usize>> = (0..t.n())
            .map(|u| {
                t.tree.adj[u]
                    .iter()
                    .copied()
                    .filter(|&v| v != parent[u])
                    .collect()
            })
            .collect();
        let mut size = vec![1usize; t.n()];
        let mut height = vec![0usize; t.n()];
        for &u in order.iter().rev() {
            for &c in &children[u] {
                size[u] += size[c];
                height[u] = height[u].max(height[c] + 1);
            }
        }
        Oriented {
            children,
            shape,
            size,
            height,
        }
    }
}

/// Decides and (optionally) witnesses rooted induced embeddings between
/// two fixed rooted trees.
struct EmbedSolver<'a> {
    a: &'a Oriented,
    b: &'a Oriented,
    memo: HashMap<(u32, u32), bool>,
}

impl<'a> EmbedSolver<'a> {
    fn embeds(&mut self, x: usize, y: usize) -> bool {
        let (a, b) = (self.a, self.b);
        if a.children[x].len() > b.children[y].len() || a.size[x] > b.size[y] || a.height[x] > b.height[y] {
            return false;
        }
        if a.children[x].is_empty() {
            return true;
        }
        let key = (a.shape[x], b.shape[y]);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let ok = self.match_children(x, y).is_some();
        self.memo.insert(key, ok);
        ok
    }

    /// Injective assignment of the children of `x` into the children of
    /// `y` by augmenting paths.
    fn match_children(&mut self, x: usize, y: usize) -> Option<Vec<(usize, usize)>> {
        let xs = self.a.children[x].clone();
        let ys = self.b.children[y].clone();
        let mut compat: Vec<Vec<usize>> = Vec::with_capacity(xs.len());
        for &cx in &xs {
            let mut row = Vec::new();
            for (j, &cy) in ys.iter().enumerate() {
                if self.embeds(cx, cy) {
                    row.push(j);
                }
            }
            if row.is_empty() {
                return None;
            }
            compat.push(row);
        }
        let assignment = bipartite_matching(&compat, ys.len())?;
        Some(
            assignment
                .into_iter()
                .enumerate()
                .map(|(i, j)| (xs[i], ys[j]))
                .collect(),
        )
    }

    fn witness(&mut self, x: usize, y: usize, map: &mut [usize]) {
        map[x] = y;
        if let Some(pairs) = self.match_children(x, y) {
            for (cx, cy) in pairs {
                self.witness(cx, cy, map);
            }
        }
    }
}

/// Perfect matching of the left side into the right side, or `None`.
/// `compat[i]` lists the right vertices left vertex `i` may use.
pub(crate) fn bipartite_matching(compat: &[Vec<usize>], right: usize) -> Option<Vec<usize>> {
    fn augment(i: usize, compat: &[Vec<usize>], seen: &mut [bool], owner: &mut [usize]) -> bool {
        for &j in &compat[i] {
            if seen[j] {
                continue;
            }
            seen[j] = true;
            if owner[j] == NONE || augment(owner[j], compat, seen, owner) {
                owner[j] = i;
                return true;
            }
        }
        false
    }
    if compat.len() > right {
        return None;
    }
    let mut owner = vec![NONE; right];
    for i in 0..compat.len() {
        let mut seen = vec![false; right];
        if !augment(i, compat, &mut seen, &mut owner) {
            return None;
        }
    }
    let mut assignment = vec![NONE; compat.len()];
    for (j, &i) in owner.iter().enumerate() {
        if i != NONE {
            assignment[i] = j;
        }
    }
    Some(assignment)
}

/// Does `a` embed into `b` as an induced subtree with root sent to root?
pub fn rooted_embeds(a: &RootedFiniteTree, b: &RootedFiniteTree) -> bool {
    let mut interner = ShapeInterner::default();
    let oa = Oriented::new(a, &mut interner);
    let ob = Oriented::new(b, &mut interner);
    let mut solver = EmbedSolver {
        a: &oa,
        b: &ob,
        memo: HashMap::new(),
    };
    solver.embeds(a.root, b.root)
}

/// A witness for [`rooted_embeds`]: `map[v]` is the image of vertex `v`.
pub fn rooted_embedding(a: &RootedFiniteTree, b: &RootedFiniteTree) -> Option<Vec<usize>> {
    let mut interner = ShapeInterner::default();
    let oa = Oriented::new(a, &mut interner);
    let ob = Oriented::new(b, &mut interner);
    let mut solver = EmbedSolver {
        a: &oa,
        b: &ob,
        memo: HashMap::new(),
    };
    if !solver.embeds(a.root, b.root) {
        return None;
    }
    let mut map = vec![NONE; a.n()];
    solver.witness(a.root, b.root, &mut map);
    Some(map)
}

/// Calls `visit` once per automorphism of `t`.
pub fn for_each_automorphism<F>(t: &FiniteTree, bound: usize, mut visit: F) -> Result<()>
where
    F: FnMut(&[usize]),
{
    let n = t.n();
    if n > bound {
        return Err(Error::TooLarge { n, bound });
    }
    let mut parent = vec![NONE; n];
    let starts: Vec<Vec<(usize, usize)>>;
    let order;
    match center(t) {
        Center::Vertex(c) => {
            parent = parents_from(t, c);
            order = t.bfs_order(c);
            starts = vec![vec![(c, c)]];
        }
        Center::Edge(a, b) => {
            // orient both halves away from the central edge
            let pa = parents_from(t, a);
            let pb = parents_from(t, b);
            let (da, db) = (t.distances_from(a), t.distances_from(b));
            for v in 0..n {
                parent[v] = if pa[v] == NONE || pb[v] == NONE || pa[v] == b || pb[v] == a {
                    NONE
                } else if da[v] < db[v] {
                    // whichever side v lies on, its parent toward the edge
                    pa[v]
                } else {
                    pb[v]
                };
            }
            parent[a] = b;
            parent[b] = a;
            let mut o = t.bfs_order(a);
            o.retain(|&v| v != a && v != b);
            o.insert(0, b);
            o.insert(0, a);
            order = o;
            starts = vec![vec![(a, a), (b, b)], vec![(a, b), (b, a)]];
        }
    }
    let mut interner = ShapeInterner::default();
    let shape = interner.shapes(t, &order, &parent);
    let children: Vec<Vec<usize>> = (0..n)
        .map(|u| t.adj[u].iter().copied().filter(|&v| v != parent[u]).collect())
        .collect();

    struct Search<'s, F: FnMut(&[usize])> {
        children: &'s [Vec<usize>],
        shape: &'s [u32],
        map: Vec<usize>,
        used: Vec<bool>,
        queue: Vec<(usize, usize)>,
        visit: &'s mut F,
    }

    impl<F: FnMut(&[usize])> Search<'_, F> {
        fn go(&mut self, qi: usize, ci: usize) {
            if qi == self.queue.len() {
                (self.visit)(&self.map);
                return;
            }
            let (u, v) = self.queue[qi];
            if ci == self.children[u].len() {
                self.go(qi + 1, 0);
                return;
            }
            let x = self.children[u][ci];
            for k in 0..self.children[v].len() {
                let y = self.children[v][k];
                if self.used[y] || self.shape[x] != self.shape[y] {
                    continue;
                }
                self.map[x] = y;
                self.used[y] = true;
                self.queue.push((x, y));
                self.go(qi, ci + 1);
                self.queue.pop();
                self.used[y] = false;
                self.map[x] = NONE;
            }
        }
    }

    for start in starts {
        if start.iter().any(|&(u, v)| shape[u] != shape[v]) {
            continue;
        }
        let mut search = Search {
            children: &children,
            shape: &shape,
            map: vec![NONE; n],
            used: vec![false; n],
            queue: start.clone(),
            visit: &mut visit,
        };
        for &(u, v) in &start {
            search.map[u] = v;
            search.used[v] = true;
        }
        search.go(0, 0);
    }
    Ok(())
}

/// The full automorphism group as explicit vertex bijections.
pub fn automorphisms(t: &FiniteTree, bound: usize) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for_each_automorphism(t, bound, |m| out.push(m.to_vec()))?;
    Ok(out)
}

pub fn is_automorphism(t: &FiniteTree, sigma: &[usize]) -> bool {
    let n = t.n();
    if sigma.len() != n {
        return false;
    }
    let mut hit = vec![false; n];
    for &s in sigma {
        if s >= n || hit[s] {
            return false;
        }
        hit[s] = true;
    }
    t.edges()
        .into_iter()
        .all(|(u, v)| t.is_adjacent(sigma[u], sigma[v]))
}

/// Rotation / inversion / translation, found by minimizing the displacement
/// `d(x, sigma(x))` over all vertices.
pub fn classify_automorphism(t: &FiniteTree, sigma: &[usize]) -> Result<EndoClassification<usize>> {
    if !is_automorphism(t, sigma) {
        return Err(Error::NotAutomorphism(format!("{sigma:?}")));
    }
    let mut best = (usize::MAX, 0usize);
    for (x, &y) in sigma.iter().enumerate() {
        let d = if y == x { 0 } else { t.distances_from(x)[y] };
        if d < best.0 {
            best = (d, x);
        }
        if d == 0 {
            break;
        }
    }
    let (m, x) = best;
    let fx = sigma[x];
    Ok(match m {
        0 => EndoClassification::Rotation { fixed: x },
        1 if sigma[fx] == x => EndoClassification::Inversion {
            edge: (x.min(fx), x.max(fx)),
        },
        _ => EndoClassification::Translation {
            axis: t.path_between(x, fx),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codes_of_small_trees() {
        assert_eq!(canonical_code(&RootedFiniteTree::single()), "()");
        assert_eq!(canonical_code(&FiniteTree::path(2).rooted(0)), "(())");
        assert_eq!(canonical_code(&FiniteTree::star(2).rooted(0)), "(()())");
    }

    #[test]
    fn parse_round_trip() {
        let t = RootedFiniteTree::parse("((())())").unwrap();
        assert_eq!(t.n(), 4);
        assert_eq!(canonical_code(&t), "((())())");
        assert!(RootedFiniteTree::parse("(()").is_err());
        assert!(RootedFiniteTree::parse("()()").is_err());
        assert!(RootedFiniteTree::parse("(x)").is_err());
    }

    #[test]
    fn isomorphism_basics() {
        assert!(is_isomorphic(&FiniteTree::path(3), &FiniteTree::path(3)));
        assert!(!is_isomorphic(&FiniteTree::path(4), &FiniteTree::star(3)));
        let relabelled = FiniteTree::new(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        assert!(is_isomorphic(&FiniteTree::path(4), &relabelled));
    }

    #[test]
    fn rejects_invalid_trees() {
        assert!(FiniteTree::new(3, &[(0, 1), (1, 0)]).is_err());
        assert!(FiniteTree::new(3, &[(0, 0), (1, 2)]).is_err());
        assert!(FiniteTree::new(4, &[(0, 1), (2, 3), (0, 1)]).is_err());
        assert!(FiniteTree::new(0, &[]).is_err());
    }

    #[test]
    fn embedding_examples() {
        let leaf = RootedFiniteTree::single();
        let chain = FiniteTree::path(6).rooted(0);
        let star = FiniteTree::star(3).rooted(0);
        assert!(rooted_embeds(&leaf, &chain));
        assert!(!rooted_embeds(&star, &chain));
        assert!(rooted_embeds(&chain, &chain));
        let map = rooted_embedding(&FiniteTree::path(3).rooted(0), &chain).unwrap();
        assert_eq!(map, vec![0, 1, 2]);
    }

    #[test]
    fn centers() {
        assert_eq!(center(&FiniteTree::path(4)), Center::Edge(1, 2));
        assert_eq!(center(&FiniteTree::star(3)), Center::Vertex(0));
        assert_eq!(center(&FiniteTree::path(5)), Center::Vertex(2));
        assert_eq!(center(&FiniteTree::path(2)), Center::Edge(0, 1));
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphisms(&FiniteTree::single(), 12).unwrap().len(), 1);
        assert_eq!(automorphisms(&FiniteTree::path(2), 12).unwrap().len(), 2);
        assert_eq!(automorphisms(&FiniteTree::star(3), 12).unwrap().len(), 6);
        assert_eq!(automorphisms(&FiniteTree::path(7), 12).unwrap().len(), 2);
        assert!(matches!(
            automorphisms(&FiniteTree::path(13), 12),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn classification_examples() {
        let p2 = FiniteTree::path(2);
        assert_eq!(
            classify_automorphism(&p2, &[1, 0]).unwrap(),
            EndoClassification::Inversion { edge: (0, 1) }
        );
        assert!(matches!(
            classify_automorphism(&FiniteTree::star(3), &[0, 1, 2, 3]).unwrap(),
            EndoClassification::Rotation { .. }
        ));
        assert!(classify_automorphism(&FiniteTree::path(3), &[1, 0, 2]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let t = FiniteTree::path(4);
        let j = t.to_json();
        assert_eq!(
            serde_json::to_string(&j).unwrap(),
            r#"{"n":4,"edges":[[0,1],[1,2],[2,3]]}"#
        );
        assert_eq!(FiniteTree::from_json(&j).unwrap(), t);
    }
}
