//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any
//! criterion fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use oscm_core::generate::random_sized_instance;
use oscm_core::io::{
    parse_instance, parse_ordering, serialize_instance, serialize_ordering, ParseError,
};
use oscm_core::reduction::{lemma_offset, measure_offset, proof_offset, FormulaMatch};
use oscm_core::search::{find_cyclic_counterexamples, match_paper_profile, paper_labeling};
use oscm_core::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const FUZZ_SEED: u64 = 0x05C3;
const SEARCH_BUDGET: Duration = Duration::from_secs(300);
const REDUCTION_BUDGET: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;
type Criterion = fn() -> Outcome;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn oscm(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_oscm"))
        .args(args)
        .output()
        .expect("run oscm");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn fuzz_corpus(n: usize) -> Vec<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(FUZZ_SEED);
    (0..n).map(|_| random_sized_instance(&mut rng, 8, 7)).collect()
}

fn random_ordering(rng: &mut ChaCha8Rng, n: usize) -> Ordering {
    let mut o: Vec<usize> = (0..n).collect();
    o.shuffle(rng);
    Ordering::new(o).unwrap()
}

fn counterexample_reproduction() -> Outcome {
    let start = Instant::now();
    let (code9, out9) = oscm(&["search", "--max-vertices", "9"]);
    ensure(code9 == 0, format!("search 9 exited {code9}"))?;
    ensure(
        out9.contains("c witness 1: 9 vertices, 6 fixed + 3 free"),
        "CLI reported no 6+3 witness",
    )?;
    ensure(out9.contains("paper profile: match"), "CLI reported no profile match")?;
    let (code8, out8) = oscm(&["search", "--max-vertices", "8"]);
    ensure(code8 == 0, format!("search 8 exited {code8}"))?;
    ensure(out8.contains("no counterexamples found"), "witness found at 8 vertices")?;

    let nine = find_cyclic_counterexamples(9).map_err(|e| e.to_string())?;
    let six_three: Vec<_> = nine
        .witnesses
        .iter()
        .filter(|w| w.instance.n_fixed() == 6 && w.instance.n_free() == 3)
        .collect();
    ensure(!six_three.is_empty(), "library search: no 6+3 witness")?;
    for w in &nine.witnesses {
        ensure(w.instance.is_tree(), "witness is not a tree")?;
        ensure(
            !build_penalty_graph(&crossing_matrix(&w.instance)).is_acyclic(),
            "witness penalty digraph is acyclic",
        )?;
    }
    let matching = nine
        .witnesses
        .iter()
        .filter(|w| match_paper_profile(w).unwrap_or(false))
        .count();
    ensure(matching >= 1, "no witness matches (2,3,3,2,4,5)")?;
    let eight = find_cyclic_counterexamples(8).map_err(|e| e.to_string())?;
    ensure(eight.witnesses.is_empty(), "library search found a witness at 8")?;
    let elapsed = start.elapsed();
    ensure(elapsed < SEARCH_BUDGET, format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} witness class(es) at 9 vertices, {matching} profile match, none at 8 ({elapsed:.1?})",
        nine.witnesses.len()
    ))
}

fn penalty_cycle() -> Outcome {
    // g = 0, h = 1, i = 2
    let m = CrossingMatrix::from_rows(vec![vec![0, 2, 3], vec![3, 0, 4], vec![2, 5, 0]]).unwrap();
    let pg = build_penalty_graph(&m);
    let mut arcs: Vec<_> = pg.arcs().iter().map(|a| (a.from, a.to, a.weight)).collect();
    arcs.sort();
    let expected = vec![(0, 2, 1), (1, 0, 1), (2, 1, 1)];
    ensure(arcs == expected, format!("arcs {arcs:?}"))?;
    ensure(!pg.is_acyclic(), "is_acyclic returned true")?;
    Ok("arcs h->g, g->i, i->h (weight 1 each), cyclic".into())
}

fn optimal_value() -> Outcome {
    let nine = find_cyclic_counterexamples(9).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for w in nine.witnesses.iter().filter(|w| match_paper_profile(w).unwrap_or(false)) {
        let exact = solve_exact(&w.instance).map_err(|e| e.to_string())?;
        let brute = brute_force_opt(&w.instance).map_err(|e| e.to_string())?;
        ensure(exact.crossings() == 9, format!("exact gave {}", exact.crossings()))?;
        ensure(brute.crossings() == 9, format!("brute force gave {}", brute.crossings()))?;
        let rep = fas_accounting(&w.instance, &exact).map_err(|e| e.to_string())?;
        ensure(
            rep.lower_bound == 8 && rep.violated_weight == 1 && rep.min_fas == Some(1),
            format!("accounting {rep:?}"),
        )?;
        ensure(paper_labeling(w).unwrap().is_some(), "labeling lost")?;
        checked += 1;
    }
    ensure(checked > 0, "no profile-matching witness to solve")?;
    Ok(format!("{checked} witness(es): optimum 9 = 8 + 1, brute force agrees"))
}

fn reduction_offset() -> Outcome {
    let start = Instant::now();
    let mut constants = Vec::new();
    for n in 1..=6 {
        let rep = measure_offset(n, 20, FUZZ_SEED + n as u64).map_err(|e| e.to_string())?;
        ensure(rep.rows.len() == 23, "expected 20 random + 3 adversarial rows")?;
        ensure(rep.exhaustive, "per-ordering check not exhaustive")?;
        let c = rep
            .constant()
            .ok_or_else(|| format!("n={n}: offsets not constant: {:?}", rep.diffs()))?;
        ensure(rep.argmin_preserved(), format!("n={n}: optimal order changed"))?;
        let expected_match = if n == 1 {
            FormulaMatch::Both
        } else {
            FormulaMatch::ProofComputation
        };
        ensure(
            rep.matched() == expected_match,
            format!("n={n}: constant {c} matched {}", rep.matched()),
        )?;
        ensure(c == proof_offset(n), format!("n={n}: constant {c}"))?;
        if n >= 2 {
            ensure(c != lemma_offset(n), format!("n={n}: lemma form unexpectedly holds"))?;
        }
        constants.push(c);
    }
    let elapsed = start.elapsed();
    ensure(elapsed < REDUCTION_BUDGET, format!("took {elapsed:?}"))?;
    Ok(format!(
        "offsets {constants:?} = 2n(n-1); stated n(n-1) fails for n >= 2 ({elapsed:.1?})"
    ))
}

fn oracle_equivalence() -> Outcome {
    let corpus = fuzz_corpus(500);
    let mut acyclic = 0;
    for (k, inst) in corpus.iter().enumerate() {
        let exact = solve_exact(inst).map_err(|e| e.to_string())?;
        let brute = brute_force_opt(inst).map_err(|e| e.to_string())?;
        ensure(
            exact.crossings() == brute.crossings(),
            format!("instance {k}: exact {} vs brute {}", exact.crossings(), brute.crossings()),
        )?;
        if let TopoOutcome::Ordered(ord) = harrigan_healy_order(inst) {
            acyclic += 1;
            let hh = count_crossings(inst, &ord).unwrap();
            ensure(hh == brute.crossings(), format!("instance {k}: topological order {hh}"))?;
        }
    }
    Ok(format!("500 instances, 0 mismatches ({acyclic} with acyclic penalty digraph)"))
}

fn crossing_consistency() -> Outcome {
    let corpus = fuzz_corpus(500);
    let mut rng = ChaCha8Rng::seed_from_u64(FUZZ_SEED ^ 1);
    for (k, inst) in corpus.iter().enumerate() {
        let ord = random_ordering(&mut rng, inst.n_free());
        let fast = count_crossings(inst, &ord).unwrap();
        let reference = count_crossings_reference(inst, &ord).unwrap();
        let m = crossing_matrix(inst);
        let pairwise = m.ordering_cost(ord.as_slice());
        ensure(
            fast == reference && reference == pairwise,
            format!("pair {k}: fast {fast}, reference {reference}, pairwise {pairwise}"),
        )?;
        for u in 0..inst.n_free() {
            for v in 0..inst.n_free() {
                if u == v {
                    continue;
                }
                let common = inst.common_neighbors(u, v).unwrap() as u64;
                let rhs = (inst.degree(u) * inst.degree(v)) as u64 - common;
                ensure(
                    m.get(u, v) + m.get(v, u) == rhs,
                    format!("pair {k}: degree identity fails at ({u},{v})"),
                )?;
            }
        }
    }
    Ok("500 pairs, 0 mismatches; degree identity holds".into())
}

fn format_round_trips() -> Outcome {
    let corpus = fuzz_corpus(200);
    let mut rng = ChaCha8Rng::seed_from_u64(FUZZ_SEED ^ 2);
    for (k, inst) in corpus.iter().enumerate() {
        let back = parse_instance(&serialize_instance(inst)).map_err(|e| e.to_string())?;
        ensure(&back == inst, format!("instance {k} changed on round trip"))?;
        let ord = random_ordering(&mut rng, inst.n_free());
        let back = parse_ordering(&serialize_ordering(inst, &ord), inst).map_err(|e| e.to_string())?;
        ensure(back == ord, format!("ordering {k} changed on round trip"))?;
    }
    let cases = [
        (
            "p ocr 1 1 2\n1 2\n1 2\n",
            ParseError::DuplicateEdge { line: 3, first: 2 },
        ),
        (
            "p ocr 2 2 2\n1 3\n5 4\n",
            ParseError::IdOutOfRange { line: 3, id: 5 },
        ),
        (
            "p ocr 2 2 3\n1 3\n2 4\n",
            ParseError::EdgeCountMismatch {
                line: 4,
                expected: 3,
                found: 2,
            },
        ),
    ];
    for (text, expected) in cases {
        let got = parse_instance(text).err();
        ensure(got.as_ref() == Some(&expected), format!("{text:?}: got {got:?}"))?;
    }
    Ok("200 instance and ordering round trips; duplicate edge, out-of-range id and edge count errors carry line numbers".into())
}

fn heuristic_sanity() -> Outcome {
    let corpus = fuzz_corpus(500);
    let mut rng = ChaCha8Rng::seed_from_u64(FUZZ_SEED ^ 3);
    for (k, inst) in corpus.iter().enumerate() {
        let opt = solve_exact(inst).unwrap().crossings();
        let start = random_ordering(&mut rng, inst.n_free());
        let start_cost = count_crossings(inst, &start).unwrap();
        let greedy = greedy_switch(inst, &start).unwrap();
        for r in [barycenter(inst), median(inst), greedy.clone()] {
            ensure(
                Ordering::for_instance(inst, r.ordering().as_slice().to_vec()).is_ok(),
                format!("instance {k}: {} returned a non-permutation", r.method()),
            )?;
            ensure(
                r.crossings() >= opt,
                format!("instance {k}: {} beat the optimum", r.method()),
            )?;
        }
        ensure(
            greedy.crossings() <= start_cost,
            format!("instance {k}: greedy increased {start_cost} -> {}", greedy.crossings()),
        )?;
        let bary = barycenter(inst);
        let polished = greedy_switch(inst, bary.ordering()).unwrap();
        ensure(
            polished.crossings() <= bary.crossings(),
            format!("instance {k}: greedy made barycenter worse"),
        )?;
    }
    Ok("500 instances: valid permutations, >= optimum, greedy never increases".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 8] = [
        ("AC1 counterexample reproduction", counterexample_reproduction),
        ("AC2 penalty cycle", penalty_cycle),
        ("AC3 optimal value 9 = 8 + 1", optimal_value),
        ("AC4 reduction offset", reduction_offset),
        ("AC5 oracle equivalence", oracle_equivalence),
        ("AC6 crossing-count consistency", crossing_consistency),
        ("AC7 format round trips", format_round_trips),
        ("AC8 heuristic sanity", heuristic_sanity),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
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
