//! The acceptance suite: one PASS or FAIL line per criterion.
//!
//! Runs without the libtest harness so every line is printed. Exits
//! nonzero when any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use scattered::ends::valuation;
use scattered::oracle::{check_center_theorem, check_tits, check_truncation_soundness, enumerate_free_trees};
use scattered::rank::build_rank_witness;
use scattered::stability::{Certificate, CoreReason, TwinCard};
use scattered::term::{parse_term, truncate};
use scattered::twins::{almost_disjoint_family, pairwise_distinct, LabelledPath, DISTINCTNESS_DEPTH};
use scattered::{Engine, Ordinal, Term, Tri, VertexAddress};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn term(s: &str) -> Term {
    parse_term(s).unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn lpath(s: &str) -> LabelledPath {
    s.parse().unwrap_or_else(|e| panic!("{s}: {e}"))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn finite_fixed_points() -> Outcome {
    let start = Instant::now();
    let classes = enumerate_free_trees(10).map_err(|e| e.to_string())?.len();
    ensure(classes == 106, || format!("{classes} classes on 10 vertices"))?;
    let report = check_center_theorem(10).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(report.passed(), || {
        format!("{} failures, first {}", report.failures.len(), report.failures[0])
    })?;
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{} automorphisms, {elapsed:.2?}", report.instances))
}

fn tits_classification() -> Outcome {
    let report = check_tits(9).map_err(|e| e.to_string())?;
    ensure(report.passed(), || {
        format!("{} automorphisms misclassified", report.failures.len())
    })?;
    Ok(format!("{} automorphisms, 0 translations", report.instances))
}

fn rank_fixtures() -> Outcome {
    let cases = [
        ("box", 0, 0),
        ("wsum([](box))", 1, 1),
        ("ex1", 1, 1),
        ("ex2", 1, 1),
        ("ex3", 2, 1),
    ];
    for (text, rank, top) in cases {
        let start = Instant::now();
        let r = Engine::default()
            .rank_summary(&term(text))
            .map_err(|e| format!("{text}: {e}"))?;
        let elapsed = start.elapsed();
        ensure(r.space_rank == Ordinal::nat(rank), || {
            format!("{text}: rank {}", r.space_rank)
        })?;
        ensure(r.top_ends.count() == Some(top), || {
            format!("{text}: top ends {:?}", r.top_ends)
        })?;
        ensure(elapsed < Duration::from_secs(1), || {
            format!("{text}: took {elapsed:?}")
        })?;
    }
    Ok(format!("{} fixtures", cases.len()))
}

fn rank_witnesses() -> Outcome {
    let engine = Engine::default();
    for text in ["0", "1", "2", "3", "w", "w+1", "w*2"] {
        let alpha: Ordinal = text.parse().map_err(|e| format!("{text}: {e}"))?;
        let w = build_rank_witness(&alpha).map_err(|e| format!("{text}: {e}"))?;
        let r = engine.rank_summary(&w).map_err(|e| format!("{text}: {e}"))?;
        ensure(r.space_rank == alpha, || {
            format!("witness for {alpha} has rank {}", r.space_rank)
        })?;
        if alpha == Ordinal::omega() {
            ensure(r.limit_flag, || "rank w without the limit flag".into())?;
            let report = engine.classify(&w).map_err(|e| e.to_string())?;
            ensure(
                report.certificate
                    == Certificate::RaylessCore {
                        reason: CoreReason::LimitRank,
                    },
                || format!("rank w classified as {:?}", report.certificate),
            )?;
        }
    }
    Ok("7 ordinals round-trip".into())
}

fn stage_sizes() -> Outcome {
    let ex1 = term("ex1");
    let seq = ex1.seq().ok_or("ex1 is not a sum")?;
    for n in 0..=10 {
        let size = seq.component(n).size();
        ensure(size == Some(1u128 << n), || {
            format!("stage {n} has {size:?} vertices")
        })?;
    }
    Ok("stages 0..=10".into())
}

fn stability_fixtures() -> Outcome {
    let engine = Engine::default();
    for ex in ["ex1", "ex2", "ex3"] {
        let r = engine.classify(&term(ex)).map_err(|e| format!("{ex}: {e}"))?;
        let ok = matches!(
            r.certificate,
            Certificate::UniqueEndForward {
                regular: Tri::No,
                almost_rigid: Tri::No,
                ..
            }
        );
        ensure(ok, || format!("{ex}: {:?}", r.certificate))?;
        ensure(r.twins == TwinCard::Continuum, || {
            format!("{ex}: twins {}", r.twins)
        })?;
    }
    let r = engine.classify(&term("ex4")).map_err(|e| format!("ex4: {e}"))?;
    let ok = matches!(
        r.certificate,
        Certificate::UniqueEndForward {
            almost_rigid: Tri::Yes,
            ..
        }
    );
    ensure(ok, || format!("ex4: {:?}", r.certificate))?;
    ensure(r.twins == TwinCard::One, || format!("ex4: twins {}", r.twins))?;
    Ok("ex1..ex4".into())
}

/// Labels of a one-way path over `len` positions.
fn labels(p: &LabelledPath, len: i64) -> Vec<String> {
    (0..len).map(|n| p.poset.name(p.label(n)).to_string()).collect()
}

/// Twins are verified both ways; one-way paths are isomorphic exactly
/// when their label sequences agree.
fn check_family(original: &LabelledPath, family: &[LabelledPath], window: i64) -> Result<(), String> {
    for f in family {
        ensure(f.is_twin_of(original), || {
            format!("{f} is not a twin of {original}")
        })?;
    }
    let seqs: BTreeSet<Vec<String>> = family.iter().map(|f| labels(f, window)).collect();
    ensure(seqs.len() == family.len(), || {
        format!("{original}: repeated label sequences")
    })?;
    for (i, a) in family.iter().enumerate() {
        for b in &family[i + 1..] {
            ensure(!a.is_isomorphic(b), || format!("{a} and {b} are isomorphic"))?;
        }
    }
    Ok(())
}

fn labelled_twins() -> Outcome {
    let mut failures = Vec::new();
    for (names, cycle) in [("a", "a"), ("a,b", "a,b"), ("a,b,c", "a,b,c")] {
        let p = lpath(&format!("lpath oneway antichain{{{names}}} cycle({cycle})"));
        let period = cycle.split(',').count();
        let (family, _) = p.enumerate_twins(period + 2).map_err(|e| e.to_string())?;
        let rotations: BTreeSet<Vec<String>> = (0..period as i64)
            .map(|r| labels(&p, 2 * period as i64 + r)[r as usize..].to_vec())
            .collect();
        let found: BTreeSet<Vec<String>> = family.iter().map(|f| labels(f, 2 * period as i64)).collect();
        if family.len() != period || found != rotations {
            failures.push(format!("period {period}: {} twins", family.len()));
        }
        if let Err(e) = check_family(&p, &family, 2 * period as i64) {
            failures.push(e);
        }
    }
    for (text, why) in [
        (
            "lpath oneway antichain{a,b} prefix[a] cycle(b)",
            "non-periodic prefix",
        ),
        (
            "lpath twoway poset{0<a} left(0,a) right(0,a)",
            "two-way without increases",
        ),
    ] {
        let (card, _) = lpath(text).twin_count();
        if card != TwinCard::One {
            failures.push(format!("{why}: {card}"));
        }
    }
    let p = lpath("lpath oneway poset{0<a} cycle(0,a)");
    let (card, reason) = p.twin_count();
    if card != TwinCard::Continuum {
        failures.push(format!(
            "cycle(0,a): verdict {card} ({reason}), expected continuum"
        ));
    }
    let (family, _) = p.enumerate_twins(5).map_err(|e| e.to_string())?;
    if family.len() != 5 {
        failures.push(format!("cycle(0,a): {} sample twins", family.len()));
    } else if let Err(e) = check_family(&p, &family, 24) {
        failures.push(e);
    }
    if failures.is_empty() {
        Ok("antichain periods 1..3, One cases, sample family of 5".into())
    } else {
        Err(failures.join("; "))
    }
}

fn twin_generators() -> Outcome {
    let engine = Engine::default();
    let comb = term("wsum([](succ(box)))");
    let mut pruned = vec![comb.clone()];
    for n in 1..=5 {
        pruned.push(engine.twin_n(&comb, n).map_err(|e| format!("twin_{n}: {e}"))?);
    }
    ensure(pairwise_distinct(&pruned, DISTINCTNESS_DEPTH), || {
        "pruned twins share a truncation code".into()
    })?;

    let ex1 = term("ex1");
    let family = almost_disjoint_family(3, 11, 12).map_err(|e| e.to_string())?;
    let mut subset_twins = vec![ex1.clone()];
    for set in &family.sets {
        subset_twins.push(
            engine
                .twin_from_subset(&ex1, set)
                .map_err(|e| format!("{set:?}: {e}"))?,
        );
    }
    ensure(pairwise_distinct(&subset_twins, DISTINCTNESS_DEPTH), || {
        "subset twins share a truncation code".into()
    })?;
    Ok("5 pruned twins of a comb, 3 subset twins of ex1".into())
}

fn valuation_laws() -> Outcome {
    const DEPTH: usize = 8;
    const SAMPLES: usize = 200;
    let engine = Engine::default();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let fixtures = [
        "ex1",
        "ex2",
        "ex4",
        "wsum([](succ(box),box))",
        "wsum([box](succ(box)))",
    ];
    let mut checked = 0;
    for text in fixtures {
        let t = term(text);
        let tr = truncate(&t, DEPTH);
        let children = tr.tree.children();
        let mut parent = vec![None; tr.n()];
        for (v, cs) in children.iter().enumerate() {
            for &c in cs {
                parent[c] = Some(v);
            }
        }
        let sample: Vec<usize> = (0..SAMPLES)
            .map(|_| {
                *(0..tr.n())
                    .collect::<Vec<_>>()
                    .choose(&mut rng)
                    .expect("nonempty")
            })
            .collect();
        let far = tr.addresses[*sample.last().expect("nonempty")].clone();
        let v0 = valuation(&t, VertexAddress::root()).map_err(|e| e.to_string())?;
        let v1 = valuation(&t, far).map_err(|e| e.to_string())?;
        let eval = |v: &scattered::ends::Valuation, a: &VertexAddress| {
            v.evaluate(a).map_err(|e| format!("{text} {a}: {e}"))
        };
        let offset = eval(&v0, &VertexAddress::root())? - eval(&v1, &VertexAddress::root())?;
        let shifts = engine.shift_report(&t, None).map_err(|e| e.to_string())?;
        for &x in &sample {
            let a = &tr.addresses[x];
            let value = eval(&v0, a)?;
            ensure(value - eval(&v1, a)? == offset, || {
                format!("{text}: valuations at {a} differ by a non-constant")
            })?;
            // one step towards the end
            let up = if tr.spine[x] {
                children[x].iter().copied().find(|&c| tr.spine[c])
            } else {
                parent[x]
            };
            if let Some(u) = up {
                let next = eval(&v0, &tr.addresses[u])?;
                ensure(next == value + 1, || {
                    format!("{text}: v({}) = {next}, v({a}) = {value}", tr.addresses[u])
                })?;
            }
            for &d in &shifts.periods {
                let image = engine
                    .shift_image(&t, d, a, DEPTH)
                    .map_err(|e| format!("{text} shift {d} at {a}: {e}"))?;
                let moved = eval(&v0, &image)?;
                ensure(moved == value + d as i64, || {
                    format!("{text}: shift {d} takes {a} ({value}) to {image} ({moved})")
                })?;
            }
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} sampled addresses over {} fixtures",
        fixtures.len()
    ))
}

fn truncation_soundness() -> Outcome {
    let report = check_truncation_soundness(50, 8, 17).map_err(|e| e.to_string())?;
    ensure(report.passed(), || {
        format!("{} failures, first {}", report.failures.len(), report.failures[0])
    })?;
    Ok(format!("{} truncation embeddings", report.instances))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("finite fixed points", finite_fixed_points),
        ("rotation or inversion", tits_classification),
        ("rank fixtures", rank_fixtures),
        ("rank witnesses", rank_witnesses),
        ("stage size law", stage_sizes),
        ("stability fixtures", stability_fixtures),
        ("labelled-path twins", labelled_twins),
        ("twin generators", twin_generators),
        ("valuation laws", valuation_laws),
        ("truncation soundness", truncation_soundness),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
