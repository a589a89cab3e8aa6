//! Brute-force checks on small finite trees and on truncations of terms.
//!
//! Each check returns a report listing every counterexample in a form that
//! can be replayed. Runs are deterministic for a fixed seed.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::finite_tree::{
    canonical_code, center, classify_automorphism, for_each_automorphism, rooted_embeds, unrooted_code,
    Center, EndoClassification, FiniteTree, RootedFiniteTree, AUTOMORPHISM_BOUND,
};
use crate::term::{parse_term, truncate_with, ComponentSeq, Mult, Term};

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub suite: String,
    pub instances: u64,
    pub failures: Vec<Value>,
    pub elapsed_ms: u128,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Run {
    suite: &'static str,
    start: Instant,
    instances: u64,
    failures: Vec<Value>,
}

impl Run {
    fn new(suite: &'static str) -> Self {
        Run {
            suite,
            start: Instant::now(),
            instances: 0,
            failures: Vec::new(),
        }
    }

    fn finish(self) -> OracleReport {
        OracleReport {
            suite: self.suite.to_string(),
            instances: self.instances,
            failures: self.failures,
            elapsed_ms: self.start.elapsed().as_millis(),
        }
    }
}

pub const MAX_ENUMERATION: usize = 12;

/// One tree per isomorphism class on `n` vertices, by adding a leaf to
/// every vertex of every class on `n - 1` vertices.
pub fn enumerate_free_trees(n: usize) -> Result<Vec<FiniteTree>> {
    if n == 0 || n > MAX_ENUMERATION {
        return Err(Error::TooLarge {
            n,
            bound: MAX_ENUMERATION,
        });
    }
    let mut level: BTreeMap<String, FiniteTree> = BTreeMap::new();
    level.insert(unrooted_code(&FiniteTree::single()), FiniteTree::single());
    for m in 1..n {
        let mut next = BTreeMap::new();
        for t in level.values() {
            let mut edges = t.edges();
            for v in 0..m {
                edges.push((v, m));
                let grown = FiniteTree::new(m + 1, &edges)?;
                next.entry(unrooted_code(&grown)).or_insert(grown);
                edges.pop();
            }
        }
        level = next;
    }
    Ok(level.into_values().collect())
}

/// The same classes found by decoding every labelled tree from its Prüfer
/// sequence. Exponential; meant for `n <= 8`.
pub fn enumerate_free_trees_pruefer(n: usize) -> Result<Vec<FiniteTree>> {
    if n == 0 || n > 9 {
        return Err(Error::TooLarge { n, bound: 9 });
    }
    if n <= 2 {
        return Ok(vec![FiniteTree::path(n)]);
    }
    let mut classes = BTreeMap::new();
    let mut seq = vec![0usize; n - 2];
    loop {
        let t = decode_pruefer(&seq)?;
        classes.entry(unrooted_code(&t)).or_insert(t);
        // next sequence in base n
        let mut i = 0;
        loop {
            if i == seq.len() {
                return Ok(classes.into_values().collect());
            }
            seq[i] += 1;
            if seq[i] < n {
                break;
            }
            seq[i] = 0;
            i += 1;
        }
    }
}

fn decode_pruefer(seq: &[usize]) -> Result<FiniteTree> {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    for &s in seq {
        let leaf = *leaves.iter().next().expect("a leaf remains");
        leaves.remove(&leaf);
        edges.push((leaf, s));
        degree[s] -= 1;
        if degree[s] == 1 {
            leaves.insert(s);
        }
    }
    let rest: Vec<usize> = leaves.into_iter().collect();
    edges.push((rest[0], rest[1]));
    FiniteTree::new(n, &edges)
}

/// Number of unlabelled trees on `n` vertices from the rooted-tree counts.
pub fn free_tree_count(n: usize) -> u64 {
    // rooted[m]: rooted trees on m vertices
    let mut rooted = vec![0u64; n + 1];
    if n >= 1 {
        rooted[1] = 1;
    }
    for m in 1..n {
        // m * r(m+1) = sum_{k=1..m} (sum_{d | k} d r(d)) r(m-k+1)
        let mut total = 0u64;
        for k in 1..=m {
            let s: u64 = (1..=k).filter(|d| k % d == 0).map(|d| d as u64 * rooted[d]).sum();
            total += s * rooted[m - k + 1];
        }
        rooted[m + 1] = total / m as u64;
    }
    if n == 0 {
        return 0;
    }
    let mut pairs: u64 = (1..n).map(|i| rooted[i] * rooted[n - i]).sum();
    if n.is_multiple_of(2) {
        pairs -= rooted[n / 2];
    }
    rooted[n] - pairs / 2
}

fn every_tree(max_n: usize) -> Result<Vec<FiniteTree>> {
    let mut all = Vec::new();
    for n in 1..=max_n {
        all.extend(enumerate_free_trees(n)?);
    }
    Ok(all)
}

pub fn check_center_theorem(max_n: usize) -> Result<OracleReport> {
    check_center_theorem_with(max_n, &center)
}

/// Every automorphism fixes what `center_of` returns.
pub fn check_center_theorem_with(
    max_n: usize,
    center_of: &dyn Fn(&FiniteTree) -> Center,
) -> Result<OracleReport> {
    let mut run = Run::new("center");
    for t in every_tree(max_n)? {
        let c = center_of(&t);
        let mut bad = false;
        for_each_automorphism(&t, AUTOMORPHISM_BOUND, |sigma| {
            run.instances += 1;
            let kept = match c {
                Center::Vertex(v) => sigma[v] == v,
                Center::Edge(a, b) => (sigma[a] == a && sigma[b] == b) || (sigma[a] == b && sigma[b] == a),
            };
            if !kept && !bad {
                bad = true;
                run.failures.push(json!({
                    "tree": t.to_json(),
                    "center": format!("{c:?}"),
                    "automorphism": sigma,
                }));
            }
        })?;
    }
    Ok(run.finish())
}

/// Every automorphism is exactly one of rotation and inversion.
pub fn check_tits(max_n: usize) -> Result<OracleReport> {
    let mut run = Run::new("tits");
    for t in every_tree(max_n)? {
        let mut sigmas = Vec::new();
        for_each_automorphism(&t, AUTOMORPHISM_BOUND, |s| sigmas.push(s.to_vec()))?;
        for sigma in sigmas {
            run.instances += 1;
            let fixes = (0..t.n()).any(|v| sigma[v] == v);
            let flips = t.edges().iter().any(|&(a, b)| sigma[a] == b && sigma[b] == a);
            let ok = match classify_automorphism(&t, &sigma)? {
                EndoClassification::Rotation { fixed } => fixes && sigma[fixed] == fixed,
                EndoClassification::Inversion { edge: (a, b) } => {
                    !fixes && flips && sigma[a] == b && sigma[b] == a
                }
                _ => false,
            };
            if !ok {
                run.failures
                    .push(json!({ "tree": t.to_json(), "automorphism": sigma }));
            }
        }
    }
    Ok(run.finish())
}

/// All rooted trees on at most `max_n` vertices, one per class.
pub fn rooted_trees(max_n: usize) -> Result<Vec<RootedFiniteTree>> {
    let mut out = BTreeMap::new();
    for t in every_tree(max_n)? {
        for r in 0..t.n() {
            let rt = t.clone().rooted(r);
            out.entry(canonical_code(&rt)).or_insert(rt);
        }
    }
    Ok(out.into_values().collect())
}

/// Mutual rooted embeddability coincides with equal canonical codes.
pub fn check_equimorphy_iso(max_n: usize) -> Result<OracleReport> {
    let mut run = Run::new("equimorphy");
    let trees = rooted_trees(max_n)?;
    let codes: Vec<String> = trees.iter().map(canonical_code).collect();
    for (i, a) in trees.iter().enumerate() {
        for (j, b) in trees.iter().enumerate().skip(i) {
            run.instances += 1;
            let mutual = rooted_embeds(a, b) && rooted_embeds(b, a);
            if mutual != (codes[i] == codes[j]) {
                run.failures
                    .push(json!({ "a": codes[i], "b": codes[j], "mutual": mutual }));
            }
        }
    }
    Ok(run.finish())
}

/// Small random terms over a fixed alphabet.
pub struct TermSampler {
    rng: ChaCha8Rng,
}

impl TermSampler {
    pub fn new(seed: u64) -> Self {
        TermSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn mult(&mut self) -> Mult {
        match self.rng.gen_range(0..5) {
            0 => Mult::Omega,
            k => Mult::Finite(k.min(3)),
        }
    }

    /// A rayless term of height at most `depth`.
    pub fn rayless(&mut self, depth: usize) -> Term {
        if depth == 0 {
            return Term::Box;
        }
        match self.rng.gen_range(0..4) {
            0 => Term::Box,
            1 => Term::succ(self.rayless(depth - 1)),
            _ => {
                let arms = self.rng.gen_range(1..=2);
                let arms = (0..arms)
                    .map(|_| (Term::succ(self.rayless(depth - 1)), self.mult()))
                    .collect();
                Term::sup(arms).expect("nonempty arms")
            }
        }
    }

    /// A periodic sum of rayless components, or a built-in example.
    pub fn sum(&mut self) -> Term {
        if self.rng.gen_bool(0.2) {
            let name = ["ex1", "ex2", "ex3", "ex4"][self.rng.gen_range(0..4)];
            return parse_term(name).expect("built-in");
        }
        let prefix = (0..self.rng.gen_range(0..=2)).map(|_| self.rayless(2)).collect();
        let cycle = (0..self.rng.gen_range(1..=2)).map(|_| self.rayless(2)).collect();
        Term::wsum(ComponentSeq::periodic(prefix, cycle).expect("nonempty cycle"))
    }

    pub fn term(&mut self) -> Term {
        match self.rng.gen_range(0..3) {
            0 => self.rayless(3),
            1 => self.sum(),
            _ => Term::sup(vec![(self.sum(), Mult::ONE), (self.rayless(2), self.mult())])
                .expect("nonempty arms"),
        }
    }

    /// A candidate host for `t`: a tail of its spine, `t` with an extra
    /// arm, or `t` itself.
    pub fn enlarge(&mut self, t: &Term) -> Term {
        match (self.rng.gen_range(0..3), t) {
            (0, Term::WSum(seq)) => {
                let k = self.rng.gen_range(1..=3);
                Term::wsum(seq.shift(k))
            }
            (1, _) => Term::sup(vec![(t.clone(), Mult::ONE), (self.rayless(2), self.mult())])
                .expect("nonempty arms"),
            _ => t.clone(),
        }
    }
}

/// Pairs the engine says embed (with their spine shift) must also embed
/// after truncation at every depth up to `depth`.
pub fn check_truncation_soundness(corpus_size: usize, depth: usize, seed: u64) -> Result<OracleReport> {
    let mut run = Run::new("truncation");
    let engine = Engine::default();
    let width = engine.cfg.width;
    let mut sampler = TermSampler::new(seed);
    let mut accepted = 0;
    let mut attempts = 0;
    while accepted < corpus_size && attempts < 50 * corpus_size {
        attempts += 1;
        let t = sampler.term();
        let s = if attempts % 3 == 0 {
            sampler.term()
        } else {
            sampler.enlarge(&t)
        };
        let (verdict, shift) = engine.embeds_with_shift(&t, &s);
        let Some(k) = shift.filter(|_| verdict.is_yes()) else {
            continue;
        };
        accepted += 1;
        let (mult, arms) = t.branching_profile();
        let width_s = (width as u64).max(mult) as usize * arms.max(1) as usize;
        for d in 0..=depth {
            run.instances += 1;
            let small = truncate_with(&t, d, width).tree;
            let big = truncate_with(&s, d + k, width_s);
            let at = if k == 0 {
                0
            } else {
                big.vertex_of(&crate::term::VertexAddress::spine(k))
                    .expect("spine vertex inside the truncation")
            };
            if !rooted_embeds(&small, &big.ball(at, d)) {
                run.failures.push(json!({
                    "t": t.to_string(), "s": s.to_string(), "depth": d, "shift": k,
                }));
                break;
            }
        }
    }
    if accepted < corpus_size {
        run.failures
            .push(json!({ "corpus": accepted, "wanted": corpus_size }));
    }
    Ok(run.finish())
}

/// Class counts from both enumerations against the closed formula.
pub fn check_counts(max_n: usize) -> Result<OracleReport> {
    let mut run = Run::new("counts");
    for n in 1..=max_n {
        run.instances += 1;
        let grown = enumerate_free_trees(n)?.len() as u64;
        let expected = free_tree_count(n);
        let mut row = json!({ "n": n, "add_leaf": grown, "formula": expected });
        let mut ok = grown == expected;
        if n <= 8 {
            let decoded = enumerate_free_trees_pruefer(n)?.len() as u64;
            row["pruefer"] = json!(decoded);
            ok &= decoded == expected;
        }
        if !ok {
            run.failures.push(row);
        }
    }
    Ok(run.finish())
}

pub const SUITES: [&str; 5] = ["center", "tits", "equimorphy", "truncation", "counts"];

/// Runs one suite by name, or every suite for `all`. Sizes are clipped to
/// each suite's own limit.
pub fn run_suite(name: &str, max_n: usize, seed: u64) -> Result<Vec<OracleReport>> {
    let one = |suite: &str| -> Result<OracleReport> {
        match suite {
            "center" => check_center_theorem(max_n.min(10)),
            "tits" => check_tits(max_n.min(9)),
            "equimorphy" => check_equimorphy_iso(max_n.min(8)),
            "truncation" => check_truncation_soundness(50, 8, seed),
            "counts" => check_counts(max_n.min(MAX_ENUMERATION)),
            other => Err(Error::Unsupported(format!(
                "unknown suite '{other}' (expected one of {} or all)",
                SUITES.join(", ")
            ))),
        }
    };
    if name == "all" {
        SUITES.iter().map(|s| one(s)).collect()
    } else {
        Ok(vec![one(name)?])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=8).map(|n| enumerate_free_trees(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 3, 6, 11, 23]);
        assert_eq!(enumerate_free_trees_pruefer(6).unwrap().len(), 6);
        assert_eq!(free_tree_count(12), 551);
        assert!(enumerate_free_trees(0).is_err());
        assert!(enumerate_free_trees(13).is_err());
    }

    #[test]
    fn harness_catches_a_wrong_center() {
        let wrong = |t: &FiniteTree| Center::Vertex(t.n() - 1);
        let r = check_center_theorem_with(5, &wrong).unwrap();
        assert!(!r.passed());
        assert!(check_center_theorem(5).unwrap().passed());
    }

    #[test]
    fn small_sweeps() {
        assert!(check_tits(6).unwrap().passed());
        assert!(check_equimorphy_iso(5).unwrap().passed());
    }
}
