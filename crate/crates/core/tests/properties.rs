use planar_ramsey::arrows::{decide_arrows, exhaustive_arrows, verify_certificate, ArrowsConfig, Outcome};
use planar_ramsey::avoid::{
    bounded_outdegree_orientation, check_rules, coloring_avoid_t1, coloring_c3, coloring_c4,
    outerplanar_linear_forest_partition, poh_linear_forest_partition,
};
use planar_ramsey::constructions::{
    complete_graph, cycle_graph, grid_side, iterated_triangulation, paper_tree, path_graph,
    random_stacked_triangulation, star_graph, triangulated_grid, universal_outerplanar, GridSide, PaperTree,
};
use planar_ramsey::detect::{
    crossing_path, enumerate_copies, find_mono_copy, is_mono_path, uop_extract_path, verify_crossing, SearchOutcome,
    UopMethod,
};
use planar_ramsey::format::{read_coloring, read_graph, write_coloring, write_graph};
use planar_ramsey::graph::{is_linear_forest, EdgeColoring, Graph};
use proptest::prelude::*;

fn patterns() -> Vec<(&'static str, Graph)> {
    vec![
        ("P3", path_graph(3).unwrap()),
        ("P4", path_graph(4).unwrap()),
        ("C4", cycle_graph(4).unwrap()),
        ("K1,3", star_graph(3)),
        ("K3", complete_graph(3).unwrap()),
        ("T4", paper_tree(PaperTree::T4).graph()),
    ]
}

fn graph_from_mask(n: usize, mask: &[bool]) -> Graph {
    let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
    Graph::new(n, pairs.zip(mask).filter(|(_, &b)| b).map(|(e, _)| e)).unwrap()
}

fn small_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (3..=max_n).prop_flat_map(|n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |mask| graph_from_mask(n, &mask))
    })
}

fn corners(pg: &planar_ramsey::graph::PlaneGraph) -> [usize; 4] {
    let top = grid_side(pg, GridSide::Top).unwrap();
    let bottom = grid_side(pg, GridSide::Bottom).unwrap();
    [top[0], *top.last().unwrap(), *bottom.last().unwrap(), bottom[0]]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn detector_matches_enumeration(g in small_graph(9), seed in any::<u64>(), pi in 0usize..6) {
        let (_, h) = &patterns()[pi];
        let c = EdgeColoring::random(&g, 2, seed);
        for color in 0..2 {
            let oracle = enumerate_copies(&c.class_adjacency(&g, color), h);
            match find_mono_copy(&g, &c, color, h, u64::MAX).0 {
                SearchOutcome::Found(e) => {
                    prop_assert!(e.is_valid(&g, h, Some((&c, color))));
                    prop_assert!(!oracle.is_empty());
                }
                SearchOutcome::NotFound => prop_assert!(oracle.is_empty()),
                SearchOutcome::BudgetExceeded => prop_assert!(false, "unlimited budget ran out"),
            }
        }
    }

    #[test]
    fn crossing_path_always_verifies(n in 2usize..7, seed in any::<u64>()) {
        let pg = triangulated_grid(n).unwrap();
        let c = EdgeColoring::random(&pg.graph, 2, seed);
        let cs = corners(&pg);
        let cp = crossing_path(&pg, cs, &c).unwrap();
        prop_assert!(verify_crossing(&pg, cs, &c, &cp).unwrap());
        prop_assert!(is_mono_path(&pg.graph, &c, cp.color, &cp.path));
    }

    #[test]
    fn uop_sequence_increases(seed in any::<u64>(), n in 2usize..4) {
        let pg = universal_outerplanar(n * n).unwrap();
        let c = EdgeColoring::random(&pg.graph, 2, seed);
        let p = uop_extract_path(&pg, &c, n).unwrap();
        prop_assert!(is_mono_path(&pg.graph, &c, p.color, &p.path));
        prop_assert!(p.len_edges() >= n);
        if let UopMethod::Sequence { states } = &p.method {
            prop_assert!(states.windows(2).all(|w| w[0] < w[1]));
            prop_assert!(states.len() <= n * n - n + 1);
        }
    }

    #[test]
    fn stacked_partitions_and_colorings(n in 4usize..300, seed in any::<u64>()) {
        let pg = random_stacked_triangulation(n, seed).unwrap();
        let g = &pg.graph;
        let part = poh_linear_forest_partition(&pg).unwrap();
        prop_assert!(part.parts.len() <= 3);
        part.validate(g, true).unwrap();
        for p in &part.parts {
            prop_assert!(is_linear_forest(g, p).unwrap());
        }
        let o = bounded_outdegree_orientation(g, 3).unwrap();
        o.validate(g).unwrap();
        prop_assert!(o.out_degrees(g.n()).into_iter().all(|d| d <= 3));
        for ac in [coloring_avoid_t1(&pg).unwrap(), coloring_c3(&pg).unwrap(), coloring_c4(&pg).unwrap()] {
            check_rules(g, &ac).unwrap();
        }
        let c4 = coloring_c4(&pg).unwrap();
        prop_assert!(c4.coloring.class_adjacency(g, 3).iter().all(|a| a.len() <= 2));
    }

    #[test]
    fn outerplanar_partition_is_two_linear_forests(n in 1usize..9) {
        let pg = universal_outerplanar(n).unwrap();
        let part = outerplanar_linear_forest_partition(&pg).unwrap();
        prop_assert!(part.parts.len() <= 2);
        part.validate(&pg.graph, true).unwrap();
    }

    #[test]
    fn files_round_trip(n in 4usize..200, seed in any::<u64>(), k in 2usize..5) {
        let pg = random_stacked_triangulation(n, seed).unwrap();
        prop_assert_eq!(read_graph(&write_graph(&pg).unwrap()).unwrap(), pg.clone());
        let c = EdgeColoring::random(&pg.graph, k, seed ^ 1);
        prop_assert_eq!(read_coloring(&write_coloring(&c).unwrap()).unwrap(), c);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn decide_matches_exhaustive(g in small_graph(7), pi in 0usize..6, seed in any::<u64>()) {
        prop_assume!(g.m() >= 1 && g.m() <= 14);
        let (_, h) = &patterns()[pi];
        let ex = exhaustive_arrows(&g, h, 2).unwrap();
        let cfg = ArrowsConfig { seed, ..ArrowsConfig::default() };
        let v = decide_arrows(&g, h, 2, &cfg).unwrap();
        prop_assert_eq!(v.outcome, ex.outcome);
        if let Some(c) = &v.certificate {
            prop_assert_eq!(v.outcome, Outcome::NotArrows);
            prop_assert!(verify_certificate(&g, h, 2, c, u64::MAX).unwrap().is_valid());
        }
    }
}

#[test]
fn class_four_of_c4_is_linear_forest_on_stacked() {
    for seed in 0..5 {
        let pg = random_stacked_triangulation(400, seed).unwrap();
        let ac = coloring_c4(&pg).unwrap();
        let g = &pg.graph;
        let class: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .copied()
            .filter(|&(u, v)| ac.coloring.get(u, v) == Some(3))
            .collect();
        let sub = Graph::new(g.n(), class).unwrap();
        let all: Vec<usize> = (0..g.n()).collect();
        assert!(is_linear_forest(&sub, &all).unwrap());
    }
}

#[test]
fn iterated_triangulations_nest() {
    for i in 0..6 {
        let small = iterated_triangulation(i).unwrap().graph;
        let big = iterated_triangulation(i + 1).unwrap().graph;
        assert!(small.n() < big.n());
        for &(u, v) in small.edges() {
            assert!(big.has_edge(u, v), "Tr({i}) edge {u}-{v} missing from Tr({})", i + 1);
        }
    }
}

#[test]
fn uop_prefixes_nest() {
    for n in 1..8 {
        let small = universal_outerplanar(n).unwrap().graph;
        let big = universal_outerplanar(n + 1).unwrap().graph;
        for &(u, v) in small.edges() {
            assert!(big.has_edge(u, v));
        }
    }
}
