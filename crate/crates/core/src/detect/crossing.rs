//! Monochromatic crossing paths in 2-colored near-triangulations.
//!
//! With boundary vertices `a, b, c, d` in cyclic order, either a blue path
//! joins the arcs `C(a,b)` and `C(c,d)`, or a red path joins `C(b,c)` and
//! `C(d,a)`. The blue side is a breadth-first search. When it fails, the
//! edges leaving the blue-reachable region form a red cut separating the two
//! arcs; a minimal sub-cut corresponds to a cycle through the outer face in
//! the dual, and in a near-triangulation consecutive cut edges share an
//! endpoint, so the red path is found inside the cut edges.

use super::paths::{bfs_path, is_mono_path};
use crate::error::{Error, Result};
use crate::graph::{EdgeColoring, PlaneGraph};

pub const RED: usize = 0;
pub const BLUE: usize = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingPath {
    pub color: usize,
    pub path: Vec<usize>,
    /// The red path was recovered from the cut around the blue region.
    pub from_cut: bool,
}

/// The four boundary arcs `C(a,b), C(b,c), C(c,d), C(d,a)`, endpoints included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryArcs {
    pub ab: Vec<usize>,
    pub bc: Vec<usize>,
    pub cd: Vec<usize>,
    pub da: Vec<usize>,
}

/// Splits the outer cycle at `a, b, c, d`, which must be distinct and appear
/// in this cyclic order along the outer face (in either traversal direction).
pub fn boundary_arcs(pg: &PlaneGraph, corners: [usize; 4]) -> Result<BoundaryArcs> {
    let outer = pg.outer_face()?;
    let mut dirs = [outer.to_vec(), outer.iter().rev().copied().collect()];
    for cycle in &mut dirs {
        let pos: Option<Vec<usize>> = corners
            .iter()
            .map(|&x| cycle.iter().position(|&v| v == x))
            .collect();
        let Some(pos) = pos else {
            return Err(Error::Precondition("corner not on the outer cycle".into()));
        };
        let len = cycle.len();
        let rel: Vec<usize> = pos.iter().map(|&p| (p + len - pos[0]) % len).collect();
        if rel[1] > 0 && rel[1] < rel[2] && rel[2] < rel[3] {
            cycle.rotate_left(pos[0]);
            let arc = |from: usize, to: usize| -> Vec<usize> {
                if to == 0 {
                    let mut v = cycle[from..].to_vec();
                    v.push(cycle[0]);
                    v
                } else {
                    cycle[from..=to].to_vec()
                }
            };
            return Ok(BoundaryArcs {
                ab: arc(0, rel[1]),
                bc: arc(rel[1], rel[2]),
                cd: arc(rel[2], rel[3]),
                da: arc(rel[3], 0),
            });
        }
    }
    Err(Error::Precondition(
        "corners are not distinct or not in cyclic order on the outer face".into(),
    ))
}

fn check_near_triangulation(pg: &PlaneGraph) -> Result<()> {
    if !pg.has_faces() {
        return Err(Error::FacesMissing);
    }
    if let Some(f) = pg.inner_faces().find(|f| f.len() != 3) {
        return Err(Error::Precondition(format!("inner face {f:?} is not a triangle")));
    }
    let outer = pg.outer_face()?;
    let mut sorted = outer.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != outer.len() {
        return Err(Error::Precondition("outer face is not a simple cycle".into()));
    }
    Ok(())
}

/// Finds a blue `C(a,b)`–`C(c,d)` path or a red `C(b,c)`–`C(d,a)` path; the
/// blue one is preferred when both exist.
pub fn crossing_path(
    pg: &PlaneGraph,
    corners: [usize; 4],
    coloring: &EdgeColoring,
) -> Result<CrossingPath> {
    check_near_triangulation(pg)?;
    if coloring.k != 2 {
        return Err(Error::Precondition("crossing paths need a 2-coloring".into()));
    }
    let g = &pg.graph;
    let report = crate::graph::coloring_report(g, coloring);
    if !report.is_valid() {
        return Err(Error::InvalidColoring(report.to_string()));
    }
    let arcs = boundary_arcs(pg, corners)?;
    let blue = coloring.class_adjacency(g, BLUE);
    if let Some(path) = bfs_path(&blue, &arcs.ab, &arcs.cd, None) {
        return Ok(CrossingPath {
            color: BLUE,
            path,
            from_cut: false,
        });
    }

    let mut region = vec![false; g.n()];
    for &s in &arcs.ab {
        region[s] = true;
    }
    let mut stack = arcs.ab.clone();
    while let Some(u) = stack.pop() {
        for &w in &blue[u] {
            if !region[w] {
                region[w] = true;
                stack.push(w);
            }
        }
    }
    let mut cut = vec![Vec::new(); g.n()];
    for &(u, v) in g.edges() {
        if region[u] != region[v] {
            debug_assert_eq!(coloring.get(u, v), Some(RED));
            cut[u].push(v);
            cut[v].push(u);
        }
    }
    if let Some(path) = bfs_path(&cut, &arcs.bc, &arcs.da, None) {
        return Ok(CrossingPath {
            color: RED,
            path,
            from_cut: true,
        });
    }
    let red = coloring.class_adjacency(g, RED);
    bfs_path(&red, &arcs.bc, &arcs.da, None)
        .map(|path| CrossingPath {
            color: RED,
            path,
            from_cut: false,
        })
        .ok_or_else(|| Error::Internal("no crossing path in either color".into()))
}

/// Independent check of a crossing-path answer.
pub fn verify_crossing(
    pg: &PlaneGraph,
    corners: [usize; 4],
    coloring: &EdgeColoring,
    answer: &CrossingPath,
) -> Result<bool> {
    let arcs = boundary_arcs(pg, corners)?;
    let (from, to) = match answer.color {
        BLUE => (&arcs.ab, &arcs.cd),
        RED => (&arcs.bc, &arcs.da),
        _ => return Ok(false),
    };
    let (Some(first), Some(last)) = (answer.path.first(), answer.path.last()) else {
        return Ok(false);
    };
    let ends_ok = (from.contains(first) && to.contains(last))
        || (from.contains(last) && to.contains(first));
    Ok(ends_ok && is_mono_path(&pg.graph, coloring, answer.color, &answer.path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{grid_side, triangulated_grid, GridSide};

    fn corners(pg: &PlaneGraph) -> [usize; 4] {
        let g = &pg.graph;
        let n = (g.n() as f64).sqrt() as usize;
        ["(1,1)".to_string(), format!("(1,{n})"), format!("({n},{n})"), format!("({n},1)")]
            .map(|l| g.find_label(&l).unwrap())
    }

    #[test]
    fn arcs_of_grid_are_its_sides() {
        let pg = triangulated_grid(3).unwrap();
        let arcs = boundary_arcs(&pg, corners(&pg)).unwrap();
        let mut top = arcs.ab.clone();
        top.sort_unstable();
        assert_eq!(top, grid_side(&pg, GridSide::Top).unwrap());
        let mut bottom = arcs.cd.clone();
        bottom.sort_unstable();
        assert_eq!(bottom, grid_side(&pg, GridSide::Bottom).unwrap());
    }

    #[test]
    fn all_blue_gives_vertical_path() {
        let pg = triangulated_grid(3).unwrap();
        let c = EdgeColoring::uniform(&pg.graph, 2, BLUE);
        let r = crossing_path(&pg, corners(&pg), &c).unwrap();
        assert_eq!(r.color, BLUE);
        assert_eq!(r.path.len() - 1, 2);
        assert!(verify_crossing(&pg, corners(&pg), &c, &r).unwrap());
    }

    #[test]
    fn red_rows_leave_blue_columns() {
        let pg = triangulated_grid(3).unwrap();
        let g = &pg.graph;
        let mut c = EdgeColoring::uniform(g, 2, BLUE);
        for &(u, v) in g.edges() {
            if u / 3 == v / 3 {
                c.set(u, v, RED);
            }
        }
        let r = crossing_path(&pg, corners(&pg), &c).unwrap();
        assert_eq!(r.color, BLUE);
        assert!(verify_crossing(&pg, corners(&pg), &c, &r).unwrap());
    }

    #[test]
    fn all_red_uses_the_cut() {
        let pg = triangulated_grid(4).unwrap();
        let c = EdgeColoring::uniform(&pg.graph, 2, RED);
        let r = crossing_path(&pg, corners(&pg), &c).unwrap();
        assert_eq!(r.color, RED);
        assert!(r.from_cut);
        assert!(verify_crossing(&pg, corners(&pg), &c, &r).unwrap());
    }

    #[test]
    fn precondition_errors() {
        let pg = triangulated_grid(3).unwrap();
        let c = EdgeColoring::uniform(&pg.graph, 2, RED);
        let [a, b, cc, d] = corners(&pg);
        assert!(crossing_path(&pg, [a, cc, b, d], &c).is_err());
        assert!(crossing_path(&pg, [a, a, cc, d], &c).is_err());
        let center = pg.graph.find_label("(2,2)").unwrap();
        assert!(crossing_path(&pg, [a, b, cc, center], &c).is_err());
        let bare = PlaneGraph::bare(pg.graph.clone());
        assert!(matches!(crossing_path(&bare, [a, b, cc, d], &c), Err(Error::FacesMissing)));
    }
}
