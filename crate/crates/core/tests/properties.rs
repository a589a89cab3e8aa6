use proptest::prelude::*;

use scattered::ends::valuation;
use scattered::finite_tree::{
    automorphisms, canonical_code, center, is_isomorphic, rooted_embeds, unrooted_code, Center, FiniteTree,
    RootedFiniteTree,
};
use scattered::oracle::TermSampler;
use scattered::term::truncate;
use scattered::twins::LabelledPath;
use scattered::{Engine, Ordinal, Term, VertexAddress};

/// Random trees given by a parent below each vertex.
fn tree() -> impl Strategy<Value = FiniteTree> {
    (1usize..14).prop_flat_map(|n| {
        (1..n).map(|i| 0..i).collect::<Vec<_>>().prop_map(move |parents| {
            let edges: Vec<(usize, usize)> = parents.iter().enumerate().map(|(i, &p)| (i + 1, p)).collect();
            FiniteTree::new(n, &edges).expect("a tree")
        })
    })
}

fn relabel(t: &FiniteTree, perm: &[usize]) -> FiniteTree {
    let edges: Vec<(usize, usize)> = t.edges().iter().map(|&(a, b)| (perm[a], perm[b])).collect();
    FiniteTree::new(t.n(), &edges).expect("relabelled tree")
}

fn sum(seed: u64) -> Term {
    TermSampler::new(seed).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn trees_have_one_edge_fewer(t in tree()) {
        prop_assert_eq!(t.edges().len(), t.n() - 1);
        for v in 0..t.n() {
            prop_assert!(!t.is_adjacent(v, v));
            for &w in t.neighbors(v) {
                prop_assert!(t.neighbors(w).contains(&v));
            }
        }
    }

    #[test]
    fn codes_ignore_vertex_names((t, perm) in tree().prop_flat_map(|t| {
        let n = t.n();
        (Just(t), Just((0..n).collect::<Vec<usize>>()).prop_shuffle())
    })) {
        let u = relabel(&t, &perm);
        prop_assert_eq!(unrooted_code(&t), unrooted_code(&u));
        prop_assert!(is_isomorphic(&t, &u));
        prop_assert_eq!(canonical_code(&t.clone().rooted(0)), canonical_code(&u.rooted(perm[0])));
    }

    #[test]
    fn rooted_code_round_trips(t in tree()) {
        let r = t.rooted(0);
        let code = canonical_code(&r);
        let back = RootedFiniteTree::parse(&code).unwrap();
        prop_assert_eq!(canonical_code(&back), code);
        prop_assert!(rooted_embeds(&back, &r));
    }

    #[test]
    fn automorphisms_keep_the_center(t in tree()) {
        let c = center(&t);
        // very symmetric samples exceed the bound and are skipped
        let all = automorphisms(&t, 50_000).unwrap_or_default();
        for sigma in all {
            match c {
                Center::Vertex(v) => prop_assert_eq!(sigma[v], v),
                Center::Edge(a, b) => prop_assert!(
                    (sigma[a] == a && sigma[b] == b) || (sigma[a] == b && sigma[b] == a)
                ),
            }
        }
    }

    #[test]
    fn embedding_is_reflexive(seed in any::<u64>()) {
        let t = TermSampler::new(seed).term();
        prop_assert!(Engine::default().embeds(&t, &t).is_yes(), "{}", t);
    }

    #[test]
    fn successor_keeps_the_rank(seed in any::<u64>()) {
        let e = Engine::default();
        let t = TermSampler::new(seed).term();
        prop_assert_eq!(e.rank_summary(&t).unwrap(), e.rank_summary(&Term::succ(t)).unwrap());
    }

    #[test]
    fn embeddings_do_not_raise_rank(seed in any::<u64>()) {
        let e = Engine::default();
        let mut sampler = TermSampler::new(seed);
        let t = sampler.term();
        let s = sampler.enlarge(&t);
        if e.embeds(&t, &s).is_yes() {
            prop_assert!(e.rank_summary(&t).unwrap().space_rank <= e.rank_summary(&s).unwrap().space_rank);
        }
    }

    #[test]
    fn truncations_embed_in_deeper_ones(seed in any::<u64>(), d in 0usize..6) {
        let t = TermSampler::new(seed).term();
        prop_assert!(rooted_embeds(&truncate(&t, d).tree, &truncate(&t, d + 1).tree));
    }

    #[test]
    fn valuations_differ_by_a_constant(seed in any::<u64>(), i in 0usize..40, j in 0usize..40) {
        let t = sum(seed);
        let tr = truncate(&t, 6);
        let a = &tr.addresses[i % tr.n()];
        let b = &tr.addresses[j % tr.n()];
        let va = valuation(&t, a.clone()).unwrap();
        let vb = valuation(&t, b.clone()).unwrap();
        prop_assert_eq!(va.evaluate(a).unwrap(), 0);
        let shift = va.evaluate(b).unwrap();
        for x in tr.addresses.iter().take(30) {
            prop_assert_eq!(vb.evaluate(x).unwrap(), va.evaluate(x).unwrap() - shift);
        }
    }

    #[test]
    fn spine_valuation_counts_steps(seed in any::<u64>(), n in 0usize..30) {
        let t = sum(seed);
        let v = valuation(&t, VertexAddress::root()).unwrap();
        prop_assert_eq!(v.evaluate(&VertexAddress::spine(n)).unwrap(), n as i64);
    }

    #[test]
    fn periods_add(seed in any::<u64>()) {
        let e = Engine::default();
        let t = sum(seed);
        let report = e.shift_report(&t, Some(12)).unwrap();
        for &a in &report.periods {
            for &b in &report.periods {
                if a + b <= 12 && !report.incomplete {
                    prop_assert!(report.periods.contains(&(a + b)), "{} + {} on {}", a, b, t);
                }
            }
        }
    }

    #[test]
    fn ray_period_divides_every_shift(seed in any::<u64>()) {
        let e = Engine::default();
        let t = sum(seed);
        let report = e.shift_report(&t, None).unwrap();
        if let (Some(d), Ok(Some(p))) = (report.d_gcd, e.ray_period(&t)) {
            prop_assert_eq!(d % p, 0, "{}", t);
        }
    }

    #[test]
    fn ordinals_print_and_parse(a in 0u64..5, b in 0u64..5, c in 0u64..9) {
        let text = format!("w^2*{}+w*{}+{}", a + 1, b + 1, c);
        let x: Ordinal = text.parse().unwrap();
        prop_assert_eq!(x.to_string().parse::<Ordinal>().unwrap(), x.clone());
        prop_assert!(x.succ() > x);
        prop_assert!(x.plus_omega().is_limit());
    }

    #[test]
    fn antichain_rotations_are_twins(len in 1usize..5, r in 0usize..5) {
        let names: Vec<String> = (0..len).map(|i| format!("x{i}")).collect();
        let text = format!("lpath oneway antichain{{{}}} cycle({})", names.join(","), names.join(","));
        let p: LabelledPath = text.parse().unwrap();
        let mut rotated = names.clone();
        rotated.rotate_left(r % len);
        let q: LabelledPath = format!("lpath oneway antichain{{{}}} cycle({})", names.join(","), rotated.join(","))
            .parse()
            .unwrap();
        prop_assert!(p.embeds_into(&q) && q.embeds_into(&p));
        prop_assert_eq!(p.is_isomorphic(&q), r % len == 0);
    }
}
