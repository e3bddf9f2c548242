use planar_ramsey::avoid::{check_rules, coloring_avoid_t1, coloring_avoid_t2, coloring_c3, coloring_c4};
use planar_ramsey::constructions::{
    iterated_triangulation, paper_tree, random_stacked_triangulation, universal_outerplanar, PaperTree,
};
use planar_ramsey::detect::{find_mono_copy, SearchOutcome};
use planar_ramsey::graph::{EdgeColoring, Graph};

const BUDGET: u64 = 50_000_000;

fn assert_absent(g: &Graph, c: &EdgeColoring, h: &Graph) {
    for color in 0..c.k {
        let (out, stats) = find_mono_copy(g, c, color, h, BUDGET);
        assert_eq!(out, SearchOutcome::NotFound, "color {color}, stats {stats:?}");
    }
}

#[test]
fn t1_absent_on_tr5() {
    let pg = iterated_triangulation(5).unwrap();
    let ac = coloring_avoid_t1(&pg).unwrap();
    check_rules(&pg.graph, &ac).unwrap();
    assert_absent(&pg.graph, &ac.coloring, &paper_tree(PaperTree::T1).graph());
}

#[test]
fn t1_absent_on_stacked() {
    let t1 = paper_tree(PaperTree::T1).graph();
    for seed in 0..3 {
        let pg = random_stacked_triangulation(2000, seed).unwrap();
        let ac = coloring_avoid_t1(&pg).unwrap();
        assert_absent(&pg.graph, &ac.coloring, &t1);
    }
}

#[test]
fn t2_absent_on_uop() {
    let t2 = paper_tree(PaperTree::T2).graph();
    for r in 3..=6 {
        let pg = universal_outerplanar(r).unwrap();
        let ac = coloring_avoid_t2(&pg).unwrap();
        assert_absent(&pg.graph, &ac.coloring, &t2);
    }
}

#[test]
fn t3_t4_absent() {
    let t3 = paper_tree(PaperTree::T3).graph();
    let t4 = paper_tree(PaperTree::T4).graph();
    for pg in [iterated_triangulation(5).unwrap(), random_stacked_triangulation(1000, 7).unwrap()] {
        assert_absent(&pg.graph, &coloring_c3(&pg).unwrap().coloring, &t3);
        assert_absent(&pg.graph, &coloring_c4(&pg).unwrap().coloring, &t4);
    }
}
