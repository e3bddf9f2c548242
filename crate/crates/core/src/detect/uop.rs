//! Constructive monochromatic paths in 2-colored universal outerplanar graphs.
//!
//! Given UOP(m) with `m >= n^2`, the extractor returns a monochromatic path
//! with at least `n` edges. If every outer edge of UOP(n) lies inside one blue
//! component, two rank-`n` vertices at distance at least `n` are joined by a
//! blue path. Otherwise it walks outward through one outer edge per rank,
//! tracking a red path `R(e)` ending in the current edge and a blue path
//! `B(e)` ending at its newest endpoint; the pair of lengths strictly
//! increases lexicographically at each step, so within `n^2 - n + 1` edges one
//! of the two reaches length `n`.

use std::collections::HashMap;

use super::crossing::{BLUE, RED};
use super::paths::bfs_path;
use crate::error::{Error, Result};
use crate::graph::{coloring_report, edge_key, Edge, EdgeColoring, PlaneGraph};

/// Lengths of the tracked paths at one edge of the sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct UopEdgeState {
    pub red_len: usize,
    pub blue_len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UopMethod {
    /// All of UOP(n) sits in one blue component.
    BlueSpan,
    /// The outward edge sequence; one state per edge visited.
    Sequence { states: Vec<UopEdgeState> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UopPath {
    pub color: usize,
    pub path: Vec<usize>,
    pub method: UopMethod,
}

impl UopPath {
    pub fn len_edges(&self) -> usize {
        self.path.len().saturating_sub(1)
    }
}

/// Rank structure of a universal outerplanar graph, rebuilt from the rank map.
struct Hierarchy<'a> {
    rank: &'a [usize],
    /// The vertex hung on each outer edge in the next round.
    child: HashMap<Edge, usize>,
    max_rank: usize,
}

impl<'a> Hierarchy<'a> {
    fn new(pg: &'a PlaneGraph) -> Result<Self> {
        let g = &pg.graph;
        let rank = pg
            .rank
            .as_deref()
            .ok_or_else(|| Error::Metadata("rank map absent".into()))?;
        let bad = |msg: String| Err(Error::Metadata(msg));
        let base: Vec<usize> = (0..g.n()).filter(|&v| rank[v] == 1).collect();
        if base.len() != 3 || !base.iter().all(|&v| base.iter().all(|&w| v == w || g.has_edge(v, w))) {
            return bad("rank-1 vertices do not form a triangle".into());
        }
        let mut child = HashMap::new();
        for v in 0..g.n() {
            if rank[v] == 0 {
                return bad(format!("vertex {v} has rank 0"));
            }
            if rank[v] == 1 {
                continue;
            }
            let lower: Vec<usize> = g
                .neighbors(v)
                .iter()
                .copied()
                .filter(|&w| rank[w] < rank[v])
                .collect();
            if lower.len() != 2 || !g.has_edge(lower[0], lower[1]) {
                return bad(format!("vertex {v} is not hung on an earlier edge"));
            }
            if child.insert(edge_key(lower[0], lower[1]), v).is_some() {
                return bad(format!("edge {lower:?} carries two vertices"));
            }
        }
        Ok(Hierarchy {
            rank,
            child,
            max_rank: rank.iter().copied().max().unwrap_or(0),
        })
    }

    /// Vertices strictly beyond edge `e`, i.e. `G(out, e)` minus `e`'s ends.
    fn beyond(&self, e: Edge, mark: &mut [bool]) {
        let mut stack = vec![e];
        while let Some((x, y)) = stack.pop() {
            if let Some(&w) = self.child.get(&edge_key(x, y)) {
                mark[w] = true;
                stack.push((x, w));
                stack.push((y, w));
            }
        }
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Monochromatic path with at least `n` edges in a 2-colored UOP(m), `m >= n^2`.
pub fn uop_extract_path(pg: &PlaneGraph, coloring: &EdgeColoring, n: usize) -> Result<UopPath> {
    let g = &pg.graph;
    let h = Hierarchy::new(pg)?;
    if n < 2 {
        return Err(Error::InvalidParameter("target length must be at least 2".into()));
    }
    if n * n > h.max_rank {
        return Err(Error::Precondition(format!(
            "UOP({}) is too small for paths of length {n}; need rank {}",
            h.max_rank,
            n * n
        )));
    }
    if coloring.k != 2 {
        return Err(Error::Precondition("extractor needs a 2-coloring".into()));
    }
    let report = coloring_report(g, coloring);
    if !report.is_valid() {
        return Err(Error::InvalidColoring(report.to_string()));
    }
    let rank = h.rank;
    let blue = coloring.class_adjacency(g, BLUE);

    let mut uf: Vec<usize> = (0..g.n()).collect();
    for (&(u, v), &c) in &coloring.colors {
        if c == BLUE {
            let (a, b) = (find(&mut uf, u), find(&mut uf, v));
            uf[a] = b;
        }
    }
    let comp: Vec<usize> = (0..g.n()).map(|v| find(&mut uf, v)).collect();

    // outer edges of UOP(n): each rank-n vertex with its two parents
    let start = (0..g.n()).filter(|&w| rank[w] == n).find_map(|w| {
        g.neighbors(w)
            .iter()
            .find(|&&p| rank[p] < n && comp[p] != comp[w])
            .map(|&p| (p, w))
    });

    let Some((mut u, mut v)) = start else {
        return blue_span(pg, rank, &blue, n);
    };

    let mut red = vec![u, v];
    let mut blue_path = vec![v];
    let mut states = vec![UopEdgeState {
        red_len: 1,
        blue_len: 0,
    }];
    loop {
        if red.len() > n {
            return Ok(UopPath {
                color: RED,
                path: red,
                method: UopMethod::Sequence { states },
            });
        }
        if blue_path.len() > n {
            return Ok(UopPath {
                color: BLUE,
                path: blue_path,
                method: UopMethod::Sequence { states },
            });
        }
        if rank[v] >= h.max_rank {
            return Err(Error::Internal(format!(
                "edge sequence reached rank {} without a path of length {n}",
                rank[v]
            )));
        }
        let w = h.child[&edge_key(u, v)];
        if comp[v] != comp[w] {
            red.push(w);
            blue_path = vec![w];
            u = v;
            v = w;
        } else {
            debug_assert_ne!(comp[u], comp[w]);
            red.pop();
            red.push(w);
            let mut allowed = vec![false; g.n()];
            h.beyond(edge_key(v, w), &mut allowed);
            allowed[v] = true;
            allowed[w] = true;
            let bridge = bfs_path(&blue, &[v], &[w], Some(&allowed)).ok_or_else(|| {
                Error::Internal(format!("no blue path from {v} to {w} beyond their edge"))
            })?;
            blue_path.extend_from_slice(&bridge[1..]);
            v = w;
        }
        let state = UopEdgeState {
            red_len: red.len() - 1,
            blue_len: blue_path.len() - 1,
        };
        if state <= *states.last().unwrap() {
            return Err(Error::Internal("edge sequence failed to increase".into()));
        }
        states.push(state);
    }
}

fn blue_span(pg: &PlaneGraph, rank: &[usize], blue: &[Vec<usize>], n: usize) -> Result<UopPath> {
    let g = &pg.graph;
    let level: Vec<usize> = (0..g.n()).filter(|&v| rank[v] == n).collect();
    for &s in &level {
        let dist = g.bfs_distances(s);
        if let Some(&t) = level.iter().find(|&&t| dist[t] != usize::MAX && dist[t] >= n) {
            let path = bfs_path(blue, &[s], &[t], None)
                .ok_or_else(|| Error::Internal("rank-n vertices not blue-connected".into()))?;
            return Ok(UopPath {
                color: BLUE,
                path,
                method: UopMethod::BlueSpan,
            });
        }
    }
    Err(Error::Internal(format!("no two rank-{n} vertices at distance {n}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{triangulated_grid, universal_outerplanar};
    use crate::detect::paths::is_mono_path;

    #[test]
    fn all_red_uop4() {
        let pg = universal_outerplanar(4).unwrap();
        let c = EdgeColoring::uniform(&pg.graph, 2, RED);
        let r = uop_extract_path(&pg, &c, 2).unwrap();
        assert_eq!(r.color, RED);
        assert!(r.len_edges() >= 2);
        assert!(is_mono_path(&pg.graph, &c, RED, &r.path));
    }

    #[test]
    fn all_blue_uses_span() {
        let pg = universal_outerplanar(9).unwrap();
        let c = EdgeColoring::uniform(&pg.graph, 2, BLUE);
        let r = uop_extract_path(&pg, &c, 3).unwrap();
        assert_eq!(r.method, UopMethod::BlueSpan);
        assert!(r.len_edges() >= 3);
        assert!(is_mono_path(&pg.graph, &c, BLUE, &r.path));
    }

    #[test]
    fn parity_coloring_uop16() {
        let pg = universal_outerplanar(16).unwrap();
        let rank = pg.rank.clone().unwrap();
        let g = &pg.graph;
        let per_edge: Vec<usize> = g
            .edges()
            .iter()
            .map(|&(a, b)| rank[a].max(rank[b]) % 2)
            .collect();
        let c = EdgeColoring::from_vec(g, 2, &per_edge);
        let r = uop_extract_path(&pg, &c, 4).unwrap();
        assert!(r.len_edges() >= 4);
        assert!(is_mono_path(g, &c, r.color, &r.path));
        if let UopMethod::Sequence { states } = &r.method {
            assert!(states.windows(2).all(|w| w[0] < w[1]));
            assert!(states.len() <= 16 - 4 + 1);
        }
    }

    #[test]
    fn metadata_and_size_errors() {
        let grid = triangulated_grid(3).unwrap();
        let c = EdgeColoring::uniform(&grid.graph, 2, RED);
        assert!(matches!(uop_extract_path(&grid, &c, 2), Err(Error::Metadata(_))));
        let small = universal_outerplanar(8).unwrap();
        let c = EdgeColoring::uniform(&small.graph, 2, RED);
        assert!(matches!(uop_extract_path(&small, &c, 3), Err(Error::Precondition(_))));
        let mut broken = small.clone();
        broken.rank.as_mut().unwrap()[10] = 1;
        assert!(matches!(uop_extract_path(&broken, &c, 2), Err(Error::Metadata(_))));
    }
}
