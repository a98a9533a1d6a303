//! The 9-vertex counterexample tree and its published numbers.

use std::sync::OnceLock;

use oscm_core::io::emit_two_layer_svg;
use oscm_core::search::{
    find_cyclic_counterexamples, match_paper_profile, paper_labeling, paper_named_instance, SearchOutcome,
    PAPER_PROFILE,
};
use oscm_core::*;

fn nine() -> &'static SearchOutcome {
    static OUT: OnceLock<SearchOutcome> = OnceLock::new();
    OUT.get_or_init(|| find_cyclic_counterexamples(9).unwrap())
}

fn paper_tree() -> Instance {
    let out = nine();
    let w = out
        .witnesses
        .iter()
        .find(|w| match_paper_profile(w).unwrap())
        .expect("a profile-matching witness");
    paper_named_instance(w).unwrap()
}

#[test]
fn published_pairwise_values() {
    let t = paper_tree();
    let (g, h, i) = (0, 1, 2);
    let cr = |u, v| pairwise_crossings(&t, u, v).unwrap();
    assert_eq!((cr(g, h), cr(h, g)), (2, 3));
    assert_eq!((cr(g, i), cr(i, g)), (3, 2));
    assert_eq!((cr(h, i), cr(i, h)), (4, 5));
    assert!(t.is_tree());
    assert_eq!((t.n_fixed(), t.n_free()), (6, 3));
    assert_eq!(t.fixed_label(0), "d");
    assert_eq!(t.free_label(2), "i");
}

#[test]
fn cost_of_every_order_from_the_matrix() {
    // hand enumeration over the published values, lexicographic orders of (g,h,i)
    let m = CrossingMatrix::from_rows(vec![vec![0, 2, 3], vec![3, 0, 4], vec![2, 5, 0]]).unwrap();
    let orders = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let costs: Vec<u64> = orders.iter().map(|o| m.ordering_cost(o)).collect();
    assert_eq!(costs, vec![9, 10, 10, 9, 9, 10]);
    assert_eq!(m, crossing_matrix(&paper_tree()));
}

#[test]
fn optimum_is_nine_and_accounting_holds() {
    let t = paper_tree();
    let exact = solve_exact(&t).unwrap();
    let brute = brute_force_opt(&t).unwrap();
    assert_eq!(exact.crossings(), 9);
    assert_eq!(brute.crossings(), 9);
    assert_eq!(exact.ordering(), &Ordering::identity(3));
    let rep = fas_accounting(&t, &exact).unwrap();
    assert_eq!((rep.lower_bound, rep.violated_weight, rep.min_fas), (8, 1, Some(1)));
    let svg = emit_two_layer_svg(&t, exact.ordering());
    assert!(svg.contains(">crossings: 9</text>"));
}

#[test]
fn topological_algorithm_fails_on_the_tree() {
    let t = paper_tree();
    match harrigan_healy_order(&t) {
        TopoOutcome::Cyclic(w) => {
            let mut names: Vec<String> = w.cycle.iter().map(|&v| t.free_label(v)).collect();
            assert_eq!(names, ["g", "i", "h"]);
            names.sort();
            assert_eq!(names, ["g", "h", "i"]);
        }
        other => panic!("expected a cycle, got {other:?}"),
    }
}

#[test]
fn every_witness_is_a_cyclic_tree() {
    let out = nine();
    assert_eq!(out.min_vertices(), Some(9));
    for w in &out.witnesses {
        assert!(w.instance.is_tree());
        assert!(!build_penalty_graph(&crossing_matrix(&w.instance)).is_acyclic());
        let exact = solve_exact(&w.instance).unwrap();
        assert_eq!(exact.crossings(), brute_force_opt(&w.instance).unwrap().crossings());
        fas_accounting(&w.instance, &exact).unwrap();
        for u in 0..w.instance.n_free() {
            for v in u + 1..w.instance.n_free() {
                assert!(w.instance.common_neighbors(u, v).unwrap() <= 1);
            }
        }
    }
    let w = &out.witnesses[0];
    let [g, h, i] = paper_labeling(w).unwrap().unwrap();
    let m = w.matrix();
    assert_eq!(
        [m.get(g, h), m.get(h, g), m.get(g, i), m.get(i, g), m.get(h, i), m.get(i, h)],
        PAPER_PROFILE
    );
}

#[test]
fn profile_with_other_pair_sums_does_not_match() {
    // K_{2,2}-like profile on three vertices: sums differ from (5, 5, 9)
    let inst = Instance::new(3, 3, [(0, 0), (2, 0), (1, 1), (0, 2), (2, 2)]).unwrap();
    let w = oscm_core::search::CounterexampleWitness {
        instance: inst,
        n_total: 6,
        cycle: vec![],
        cr_profile: None,
    };
    assert!(!match_paper_profile(&w).unwrap());
}

#[test]
fn search_is_deterministic() {
    assert_eq!(&find_cyclic_counterexamples(9).unwrap(), nine());
}
