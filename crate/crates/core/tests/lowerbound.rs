use mpcc::lowerbound::{check_disjoint_cycles, cycle_reduction, iteration_bound, union_find_solver};
use mpcc::{find_connected_components, generate, DriverParams, Error, Family, GenSpec, Graph};

fn cycles(f: Family, seed: u64) -> Graph {
    generate(&GenSpec::new(f, seed)).unwrap()
}

#[test]
fn component_count_is_exact_for_one_and_two_cycles() {
    for seed in 0..10 {
        let one = cycle_reduction(&cycles(Family::Cycle { n: 4096 }, seed), 64, seed, 64, union_find_solver).unwrap();
        assert_eq!(one.final_components, 1);
        let two = cycle_reduction(&cycles(Family::TwoCycles { n: 4096 }, seed), 64, seed, 64, union_find_solver).unwrap();
        assert_eq!(two.final_components, 2);
    }
}

#[test]
fn carried_edges_are_the_deleted_ones() {
    let stats = cycle_reduction(&cycles(Family::Cycle { n: 1 << 14 }, 0), 128, 3, 128, union_find_solver).unwrap();
    assert!(stats.outer_iterations > 0);
    let mut prev_edges = 1 << 14;
    for it in &stats.iterations {
        assert_eq!(it.edges_before, prev_edges);
        assert_eq!(it.kept_edges + it.deleted_edges, it.edges_before);
        assert_eq!(it.edges_after, it.deleted_edges);
        assert!(it.edges_after < it.edges_before);
        prev_edges = it.edges_after;
    }
    assert!(prev_edges <= 128);
}

#[test]
fn full_pipeline_as_solver() {
    let g = cycles(Family::TwoCycles { n: 2048 }, 1);
    let p = DriverParams::new(0.5, 1);
    let stats = cycle_reduction(&g, 64, 1, 46, |h: &Graph| find_connected_components(h, &p).map(|o| o.labels)).unwrap();
    assert_eq!(stats.final_components, 2);
}

#[test]
fn rejects_non_cycles() {
    let g = Graph::from_edges(3, [(0, 1), (1, 2)]);
    assert!(matches!(check_disjoint_cycles(&g), Err(Error::InvalidInput(_))));
    assert!(matches!(cycle_reduction(&g, 8, 0, 2, union_find_solver), Err(Error::InvalidInput(_))));
    let c = cycles(Family::Cycle { n: 16 }, 0);
    assert!(matches!(cycle_reduction(&c, 1, 0, 2, union_find_solver), Err(Error::InvalidParams(_))));
}

#[test]
fn iteration_bound_values() {
    // ln 65536 = 11.09, 256 / 44.36 = 5.77, 11.09 / 1.753 = 6.33
    assert_eq!(iteration_bound(1 << 16, 256), Some(14));
    assert_eq!(iteration_bound(1 << 16, 40), None);
}

#[test]
fn same_seed_same_stats() {
    let g = cycles(Family::Cycle { n: 1 << 12 }, 0);
    let a = cycle_reduction(&g, 64, 9, 64, union_find_solver).unwrap();
    let b = cycle_reduction(&g, 64, 9, 64, union_find_solver).unwrap();
    assert_eq!(a, b);
}
