mod common;

use common::*;
use mpcc::engine::{level_cap, run_until_cliques, polylog_total_space, TwoHopMode};
use mpcc::{generate, oracle_components, AlgoParams, Engine, Error, Family, GenSpec, Graph, LeaderRule};

fn engine(g: Graph, total_space: f64) -> Engine {
    Engine::initialize(g, AlgoParams::new(total_space, 7)).unwrap()
}

fn polylog(g: &Graph) -> AlgoParams {
    AlgoParams::new(polylog_total_space(g.edge_count(), g.live_count(), 5.0), 3)
}

#[test]
fn initial_budget_on_path_four() {
    let mut e = engine(path(4), 131.0);
    let expected = (131.0f64 / 4.0).sqrt();
    assert!((expected - 5.7228).abs() < 1e-4);
    for v in 0..4 {
        assert_eq!(e.level(v), 0);
        assert!(e.is_active(v));
        assert_eq!(e.members(v), &[v]);
        assert_eq!(e.budget(v), expected);
    }
    assert_eq!(e.trace().len(), 1);
}

#[test]
fn initial_budget_squares_equal_total_space() {
    for (g, t) in [(path(4), 131.0), (star(9), 100.0), (complete(6), 77.5), (circulant(40, &[1, 2]), 640.0)] {
        let m = g.edge_count() as f64;
        let n = g.live_count() as f64;
        let e = engine(g, t);
        let row = &e.trace()[0];
        assert!((row.budget_square_sum - t).abs() <= 1e-9 * t);
        assert!(row.potential_space <= m + n * (t / n).sqrt() + 1e-9);
        assert!(row.potential_space < m + t);
    }
}

#[test]
fn rejects_space_below_edge_count() {
    let g = complete(10);
    assert!(matches!(Engine::initialize(g, AlgoParams::new(44.0, 0)), Err(Error::InvalidParams(_))));
}

#[test]
fn rejects_space_at_or_below_vertex_count() {
    assert!(matches!(Engine::initialize(path(8), AlgoParams::new(8.0, 0)), Err(Error::InvalidParams(_))));
}

#[test]
fn three_path_closes_into_triangle() {
    let mut e = engine(path(3), 75.0);
    assert_eq!(e.budget(0), 5.0);
    assert_eq!(e.connect_two_hops(), 1);
    assert_eq!(edge_set(e.graph()), [(0, 1), (0, 2), (1, 2)].into_iter().collect());
}

#[test]
fn clique_is_a_fixed_point() {
    let mut e = engine(complete(4), 400.0);
    assert_eq!(e.connect_two_hops(), 0);
    assert_eq!(e.graph().edge_count(), 6);
    assert!(e.is_done());
}

#[test]
fn star_two_hops_match_breadth_first_replay() {
    let mut e = engine(star(5), 54.0);
    e.set_beta0(3.0);
    let expected = replay_two_hops(&mut e);
    let mut edges = edge_set(e.graph());
    for (v, chosen, _) in &expected {
        for &u in chosen {
            edges.insert((*v.min(&u), *v.max(&u)));
        }
    }
    e.connect_two_hops();
    assert_eq!(edge_set(e.graph()), edges);

    // leaves have d = 1 and four candidates, the center has no quota
    let inits = e.last_initiations();
    assert_eq!(inits.len(), 5);
    for &(v, count, quota) in inits {
        assert_ne!(v, 0);
        assert_eq!((count, quota), (2, 2));
    }
    // every new edge joins two leaves; some leaf ends above its budget
    assert!(edge_set(e.graph()).iter().filter(|(u, _)| *u != 0).count() > 0);
    assert!((1..=5).any(|v| e.graph().degree(v) > 3));
}

#[test]
fn chain_contracts_one_hop_per_call() {
    // v1 - v2 - v3 with levels 0, 1, 2
    let mut e = engine(path(3), 300.0);
    e.set_level(1, 1);
    e.set_level(2, 2);
    assert_eq!(e.relabel_inter_level(), 2);
    assert!(!e.is_active(0) && !e.is_active(1) && e.is_active(2));
    assert_eq!(edge_set(e.graph()), [(1, 2)].into_iter().collect());
    assert_eq!(e.members(1), &[0]);
    assert_eq!(e.members(2).len(), 2);
    assert!(!e.graph().is_alive(0));
    assert_member_partition(&e, 3);

    e.relabel_inter_level();
    let mut c = e.members(2).to_vec();
    c.sort();
    assert_eq!(c, vec![0, 1, 2]);
    assert_eq!(e.graph().live_vertices().collect::<Vec<_>>(), vec![2]);
}

#[test]
fn equal_levels_leave_the_graph_alone() {
    let mut e = engine(circulant(12, &[1, 3]), 500.0);
    let before = e.graph().clone();
    assert_eq!(e.relabel_inter_level(), 0);
    assert_eq!(e.graph(), &before);
    assert!((0..12).all(|v| e.is_active(v)));
}

#[test]
fn tie_goes_to_the_lower_id() {
    let g = Graph::from_edges(3, [(0, 1), (0, 2)]);
    let mut e = engine(g, 300.0);
    e.set_level(1, 2);
    e.set_level(2, 2);
    e.relabel_inter_level();
    assert_eq!(e.owner(0), 1);
    assert_eq!(e.members(2), &[2]);
    assert_eq!(edge_set(e.graph()), [(1, 2)].into_iter().collect());
    assert_member_partition(&e, 3);
}

#[test]
fn unsaturated_vertices_stay_put() {
    let mut e = engine(path(6), 600.0);
    let stats = e.relabel_intra_level().unwrap();
    assert_eq!((stats.saturated, stats.leaders, stats.contracted), (0, 0, 0));
    assert_eq!(e.graph(), &path(6));
    assert!((0..6).all(|v| e.level(v) == 0));
}

#[test]
fn forced_leaders_all_level_up() {
    let mut e = engine(star(5), 24.0);
    assert_eq!(e.budget(0), 2.0);
    e.set_leader_rule(LeaderRule::Always);
    let stats = e.relabel_intra_level().unwrap();
    assert_eq!((stats.saturated, stats.leaders, stats.contracted), (6, 6, 0));
    assert_eq!(e.graph().live_count(), 6);
    for v in 0..6 {
        assert_eq!(e.level(v), 1);
        assert_eq!(e.budget(v), 2f64.powf(1.25));
    }
}

#[test]
fn leaves_contract_into_the_only_leader() {
    let mut e = engine(star(5), 24.0);
    e.set_leader_rule(LeaderRule::Only(vec![0]));
    let stats = e.relabel_intra_level().unwrap();
    assert_eq!((stats.leaders, stats.contracted), (1, 5));
    assert_eq!(e.graph().live_vertices().collect::<Vec<_>>(), vec![0]);
    let mut c = e.members(0).to_vec();
    c.sort();
    assert_eq!(c, (0..6).collect::<Vec<_>>());
    assert_eq!(e.level(0), 1);
}

#[test]
fn triangle_needs_no_iterations() {
    let e = run_until_cliques(complete(3), AlgoParams::new(30.0, 0)).unwrap();
    assert_eq!(e.iteration(), 0);
    assert_eq!(e.finalize_labels().label, vec![0, 0, 0]);
}

#[test]
fn edgeless_input_labels_itself() {
    let e = run_until_cliques(Graph::empty(5), AlgoParams::new(30.0, 0)).unwrap();
    assert_eq!(e.finalize_labels().label, vec![0, 1, 2, 3, 4]);
}

#[test]
fn long_path_matches_oracle() {
    let g = path(1 << 10);
    let e = run_until_cliques(g.clone(), polylog(&g)).unwrap();
    let labels = e.finalize_labels();
    assert!(labels.same_partition(&oracle_components(&g)));
    assert_eq!(labels.class_count(), 1);
    assert!(labels.label.iter().all(|&l| l == 0));
}

#[test]
fn two_cycles_end_as_two_cliques() {
    let g = generate(&GenSpec::new(Family::TwoCycles { n: 1 << 12 }, 1)).unwrap();
    let e = run_until_cliques(g.clone(), polylog(&g)).unwrap();
    assert!(e.is_done());
    let groups = mpcc::oracle::component_groups(e.graph());
    assert_eq!(groups.len(), 2);
    let reference = oracle_components(&g);
    for group in groups {
        let mut originals: Vec<u32> = group.iter().flat_map(|&v| e.members(v).to_vec()).collect();
        originals.sort();
        let class = reference.label[originals[0] as usize];
        let expected: Vec<u32> = (0..g.n() as u32).filter(|&u| reference.label[u as usize] == class).collect();
        assert_eq!(originals, expected);
    }
}

#[test]
fn regular_graph_with_degree_equal_to_budget_terminates() {
    // every vertex has exactly floor(b) = 4 same-level neighbors
    let g = circulant(40, &[1, 2]);
    let e = run_until_cliques(g.clone(), AlgoParams::new(640.0, 11)).unwrap();
    assert!(e.finalize_labels().same_partition(&oracle_components(&g)));
}

#[test]
fn dense_and_sparse_searches_agree() {
    let specs = [
        Family::Path { n: 300 },
        Family::Grid2d { rows: 12, cols: 15 },
        Family::ErdosRenyiGnm { n: 200, m: 260 },
        Family::Caterpillar { spine: 40, legs: 3 },
        Family::RandomTree { n: 250 },
    ];
    for (i, f) in specs.into_iter().enumerate() {
        let g = generate(&GenSpec::new(f, i as u64)).unwrap();
        let params = AlgoParams::new(polylog_total_space(g.edge_count(), g.live_count(), 2.0), i as u64);
        let mut a = Engine::initialize(g.clone(), params.clone()).unwrap();
        let mut b = Engine::initialize(g, params).unwrap();
        a.set_two_hop_mode(TwoHopMode::Sparse);
        b.set_two_hop_mode(TwoHopMode::Dense);
        while !a.is_done() {
            a.step().unwrap();
            b.step().unwrap();
            assert_eq!(a.graph(), b.graph());
            assert_eq!(a.last_initiations(), b.last_initiations());
        }
        assert!(b.is_done());
        assert_eq!(a.trace(), b.trace());
    }
}

#[test]
fn level_cap_closed_form() {
    // log2(65536) = 16 and log_1.25(16) = 12.43
    assert_eq!(level_cap(2.0, 65536.0), 13);
    assert_eq!(level_cap(10.0, 5.0), 0);
    assert_eq!(level_cap(4.0, 4.0), 0);
}

#[test]
fn overflow_is_reported() {
    let g = path(64);
    let mut params = polylog(&g);
    params.max_iterations = Some(1);
    assert!(matches!(
        run_until_cliques(g, params),
        Err(Error::TerminationOverflow { max_iterations: 1 })
    ));
}

#[test]
fn same_seed_same_trace() {
    let g = generate(&GenSpec::new(Family::RandomTree { n: 2000 }, 5)).unwrap();
    let a = run_until_cliques(g.clone(), polylog(&g)).unwrap();
    let p = polylog(&g);
    let b = run_until_cliques(g, p).unwrap();
    assert_eq!(a.trace(), b.trace());
    assert_eq!(a.ledger(), b.ledger());
}
