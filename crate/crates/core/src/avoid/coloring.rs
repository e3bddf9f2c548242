//! Explicit avoidance colorings built from a linear-forest partition and a
//! bounded out-degree orientation of the edges between parts.

use serde::{Deserialize, Serialize};

use super::orient::bounded_outdegree_orientation;
use super::partition::{outerplanar_linear_forest_partition, poh_linear_forest_partition};
use crate::error::{Error, Result};
use crate::graph::{edge_key, EdgeColoring, Graph, PlaneGraph, VertexPartition};

pub const RED: usize = 0;
pub const BLUE: usize = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// Two colors, three parts, out-degree at most 3.
    AvoidT1,
    /// Two colors, two parts, out-degree at most 2.
    AvoidT2,
    /// Three colors; intra-part edges take the part's color.
    C3,
    /// Four colors; intra-part edges take the fourth color.
    C4,
}

impl Scheme {
    pub fn colors(self) -> usize {
        match self {
            Scheme::AvoidT1 | Scheme::AvoidT2 => 2,
            Scheme::C3 => 3,
            Scheme::C4 => 4,
        }
    }

    fn parts(self) -> usize {
        match self {
            Scheme::AvoidT2 => 2,
            _ => 3,
        }
    }

    /// Out-degree bound; for `C3`/`C4` it applies within each bipartite
    /// cross subgraph separately.
    pub fn bound(self) -> usize {
        match self {
            Scheme::AvoidT1 => 3,
            _ => 2,
        }
    }
}

impl std::str::FromStr for Scheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "avoidt1" | "avoid_t1" | "t1" => Ok(Scheme::AvoidT1),
            "avoidt2" | "avoid_t2" | "t2" => Ok(Scheme::AvoidT2),
            "c3" => Ok(Scheme::C3),
            "c4" => Ok(Scheme::C4),
            _ => Err(Error::InvalidParameter(format!("unknown coloring scheme {s:?}"))),
        }
    }
}

/// Which rule fixed an edge's color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeRule {
    /// Alternating along a path inside one part.
    Alternation,
    /// Inside one part, colored with the part's own color.
    PartColor,
    /// Inside one part, colored with the extra color.
    ExtraColor,
    /// Between parts, decided by the orientation.
    Direction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub scheme: Scheme,
    pub partition: VertexPartition,
    pub bound: usize,
    /// `[tail, head]` for cross-part edges, `None` inside a part; host edge order.
    pub arcs: Vec<Option<[usize; 2]>>,
    pub rules: Vec<EdgeRule>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AvoidanceColoring {
    pub coloring: EdgeColoring,
    pub provenance: Provenance,
}

/// Colors along the paths of each part: starting from the lower-indexed end,
/// edges alternate red, blue, red, ...
fn alternation(g: &Graph, part_of: &[usize]) -> Result<Vec<Option<usize>>> {
    let n = g.n();
    let mut color = vec![None; g.m()];
    let same = |v: usize| -> Vec<usize> {
        g.neighbors(v)
            .iter()
            .copied()
            .filter(|&w| part_of[w] == part_of[v])
            .collect()
    };
    let mut done = vec![false; n];
    for v in 0..n {
        if done[v] || same(v).len() > 1 {
            continue;
        }
        // v is the lower-indexed end of its path (or isolated)
        let mut prev = usize::MAX;
        let mut cur = v;
        let mut c = RED;
        done[v] = true;
        while let Some(next) = same(cur).into_iter().find(|&w| w != prev) {
            let e = g.edge_id(cur, next).expect("neighbor edge");
            color[e] = Some(c);
            c = 1 - c;
            prev = cur;
            cur = next;
            done[cur] = true;
        }
    }
    if let Some(v) = (0..n).find(|&v| !done[v]) {
        return Err(Error::Internal(format!("vertex {v} lies on a cycle inside its part")));
    }
    Ok(color)
}

fn build(
    g: &Graph,
    scheme: Scheme,
    partition: VertexPartition,
) -> Result<AvoidanceColoring> {
    let part_of = partition.part_of(g.n());
    let mut arcs: Vec<Option<[usize; 2]>> = vec![None; g.m()];
    match scheme {
        Scheme::AvoidT1 | Scheme::AvoidT2 => {
            // the out-degree bound holds for the whole host, intra edges included
            let o = bounded_outdegree_orientation(g, scheme.bound())?;
            for (e, &(t, h)) in o.arcs.iter().enumerate() {
                if part_of[t] != part_of[h] {
                    arcs[e] = Some([t, h]);
                }
            }
        }
        Scheme::C3 | Scheme::C4 => {
            for skip in 0..3 {
                let ids: Vec<usize> = (0..g.m())
                    .filter(|&e| {
                        let (u, v) = g.edges()[e];
                        part_of[u] != part_of[v] && part_of[u] != skip && part_of[v] != skip
                    })
                    .collect();
                let b = Graph::new(g.n(), ids.iter().map(|&e| g.edges()[e]))?;
                let o = bounded_outdegree_orientation(&b, scheme.bound())?;
                for (&(t, h), &e) in o.arcs.iter().zip(&ids) {
                    debug_assert_eq!(edge_key(t, h), g.edges()[e]);
                    arcs[e] = Some([t, h]);
                }
            }
        }
    }

    let alt = match scheme {
        Scheme::AvoidT1 | Scheme::AvoidT2 => alternation(g, &part_of)?,
        _ => vec![None; g.m()],
    };
    let mut colors = Vec::with_capacity(g.m());
    let mut rules = Vec::with_capacity(g.m());
    for (e, &(u, _)) in g.edges().iter().enumerate() {
        let (color, rule) = match (arcs[e], scheme) {
            (Some([t, h]), Scheme::AvoidT1 | Scheme::AvoidT2) => {
                (if part_of[t] < part_of[h] { RED } else { BLUE }, EdgeRule::Direction)
            }
            (Some([_, h]), _) => (part_of[h], EdgeRule::Direction),
            (None, Scheme::AvoidT1 | Scheme::AvoidT2) => (
                alt[e].ok_or_else(|| Error::Internal("intra-part edge left uncolored".into()))?,
                EdgeRule::Alternation,
            ),
            (None, Scheme::C3) => (part_of[u], EdgeRule::PartColor),
            (None, Scheme::C4) => (3, EdgeRule::ExtraColor),
        };
        colors.push(color);
        rules.push(rule);
    }
    let coloring = EdgeColoring::from_vec(g, scheme.colors(), &colors);
    let result = AvoidanceColoring {
        coloring,
        provenance: Provenance {
            scheme,
            partition,
            bound: scheme.bound(),
            arcs,
            rules,
        },
    };
    check_rules(g, &result)?;
    Ok(result)
}

/// Two-coloring with no monochromatic T1 on any planar host.
pub fn coloring_avoid_t1(pg: &PlaneGraph) -> Result<AvoidanceColoring> {
    build(&pg.graph, Scheme::AvoidT1, poh_linear_forest_partition(pg)?)
}

/// Two-coloring with no monochromatic T2 on any outerplanar host.
pub fn coloring_avoid_t2(pg: &PlaneGraph) -> Result<AvoidanceColoring> {
    build(&pg.graph, Scheme::AvoidT2, outerplanar_linear_forest_partition(pg)?)
}

/// Three-coloring in which a vertex with three edges of color `i` lies in part `i`.
pub fn coloring_c3(pg: &PlaneGraph) -> Result<AvoidanceColoring> {
    build(&pg.graph, Scheme::C3, poh_linear_forest_partition(pg)?)
}

/// Four-coloring whose fourth class is a linear forest and whose other
/// classes have no T4.
pub fn coloring_c4(pg: &PlaneGraph) -> Result<AvoidanceColoring> {
    build(&pg.graph, Scheme::C4, poh_linear_forest_partition(pg)?)
}

pub fn avoidance_coloring(pg: &PlaneGraph, scheme: Scheme) -> Result<AvoidanceColoring> {
    match scheme {
        Scheme::AvoidT1 => coloring_avoid_t1(pg),
        Scheme::AvoidT2 => coloring_avoid_t2(pg),
        Scheme::C3 => coloring_c3(pg),
        Scheme::C4 => coloring_c4(pg),
    }
}

/// Re-derives every edge's color from the recorded partition and arcs and
/// checks the out-degree bounds.
pub fn check_rules(g: &Graph, ac: &AvoidanceColoring) -> Result<()> {
    let p = &ac.provenance;
    let scheme = p.scheme;
    let fail = |msg: String| Err(Error::InvalidColoring(msg));
    if p.partition.parts.len() != scheme.parts() {
        return fail(format!("expected {} parts", scheme.parts()));
    }
    p.partition.validate(g, true).or_else(|e| fail(e.to_string()))?;
    if p.arcs.len() != g.m() || p.rules.len() != g.m() {
        return fail("provenance does not cover every edge".into());
    }
    if ac.coloring.k != scheme.colors() {
        return fail(format!("expected {} colors", scheme.colors()));
    }
    let report = crate::graph::coloring_report(g, &ac.coloring);
    if !report.is_valid() {
        return fail(report.to_string());
    }
    let part_of = p.partition.part_of(g.n());
    let mut out = vec![[0usize; 3]; g.n()];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        let intra = part_of[u] == part_of[v];
        let color = ac.coloring.get(u, v).unwrap();
        let expected = match (p.arcs[e], intra) {
            (None, true) => match scheme {
                Scheme::AvoidT1 | Scheme::AvoidT2 => None,
                Scheme::C3 => Some((part_of[u], EdgeRule::PartColor)),
                Scheme::C4 => Some((3, EdgeRule::ExtraColor)),
            },
            (Some([t, h]), false) if edge_key(t, h) == (u, v) => {
                out[t][part_of[h]] += 1;
                let c = match scheme {
                    Scheme::AvoidT1 | Scheme::AvoidT2 => {
                        if part_of[t] < part_of[h] {
                            RED
                        } else {
                            BLUE
                        }
                    }
                    _ => part_of[h],
                };
                Some((c, EdgeRule::Direction))
            }
            _ => return fail(format!("edge {u}-{v} has an inconsistent arc record")),
        };
        match expected {
            Some((c, rule)) if c != color || rule != p.rules[e] => {
                return fail(format!("edge {u}-{v}: color {color}, rule expects {c}"));
            }
            None if p.rules[e] != EdgeRule::Alternation => {
                return fail(format!("edge {u}-{v} should follow alternation"));
            }
            _ => {}
        }
    }
    for v in 0..g.n() {
        let total: usize = out[v].iter().sum();
        let worst = match scheme {
            Scheme::AvoidT1 | Scheme::AvoidT2 => total,
            _ => *out[v].iter().max().unwrap(),
        };
        if worst > p.bound {
            return fail(format!("vertex {v} exceeds out-degree bound {}", p.bound));
        }
    }
    if matches!(scheme, Scheme::AvoidT1 | Scheme::AvoidT2) {
        check_alternation(g, &part_of, &ac.coloring)?;
    }
    Ok(())
}

/// Along every path inside a part, consecutive edges differ and the edge at
/// the lower-indexed end is red.
fn check_alternation(g: &Graph, part_of: &[usize], c: &EdgeColoring) -> Result<()> {
    for v in 0..g.n() {
        let same: Vec<usize> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| part_of[w] == part_of[v])
            .collect();
        if same.len() == 2 && c.get(v, same[0]) == c.get(v, same[1]) {
            return Err(Error::InvalidColoring(format!("no alternation at vertex {v}")));
        }
        if same.len() == 1 {
            // find the other end to know which end starts
            let mut prev = v;
            let mut cur = same[0];
            loop {
                let next = g
                    .neighbors(cur)
                    .iter()
                    .copied()
                    .find(|&w| part_of[w] == part_of[v] && w != prev);
                match next {
                    Some(x) => {
                        prev = cur;
                        cur = x;
                    }
                    None => break,
                }
            }
            if v < cur && c.get(v, same[0]) != Some(RED) {
                return Err(Error::InvalidColoring(format!(
                    "path starting at {v} does not start red"
                )));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete_graph, iterated_triangulation, path_graph, universal_outerplanar};
    use crate::graph::is_linear_forest;

    #[test]
    fn single_edge_is_red() {
        let pg = PlaneGraph::bare(path_graph(2).unwrap());
        let ac = coloring_avoid_t1(&pg).unwrap();
        assert_eq!(ac.coloring.get(0, 1), Some(RED));
        assert_eq!(ac.provenance.rules, vec![EdgeRule::Alternation]);
    }

    #[test]
    fn schemes_pass_rule_checks() {
        let tr = iterated_triangulation(4).unwrap();
        for scheme in [Scheme::AvoidT1, Scheme::C3, Scheme::C4] {
            let ac = avoidance_coloring(&tr, scheme).unwrap();
            check_rules(&tr.graph, &ac).unwrap();
        }
        let uop = universal_outerplanar(5).unwrap();
        check_rules(&uop.graph, &coloring_avoid_t2(&uop).unwrap()).unwrap();
        let tri = PlaneGraph::bare(complete_graph(3).unwrap());
        coloring_avoid_t2(&tri).unwrap();
    }

    #[test]
    fn tampering_is_caught() {
        let tr = iterated_triangulation(3).unwrap();
        let mut ac = coloring_avoid_t1(&tr).unwrap();
        let (u, v) = tr.graph.edges()[0];
        let c = ac.coloring.get(u, v).unwrap();
        ac.coloring.set(u, v, 1 - c);
        assert!(check_rules(&tr.graph, &ac).is_err());
    }

    #[test]
    fn c3_heavy_vertices_in_own_part() {
        let tr = iterated_triangulation(4).unwrap();
        let g = &tr.graph;
        let ac = coloring_c3(&tr).unwrap();
        let part_of = ac.provenance.partition.part_of(g.n());
        for color in 0..3 {
            let adj = ac.coloring.class_adjacency(g, color);
            for v in 0..g.n() {
                if adj[v].len() >= 3 {
                    assert_eq!(part_of[v], color);
                }
            }
        }
    }

    #[test]
    fn c4_extra_class_is_linear_forest() {
        let tr = iterated_triangulation(4).unwrap();
        let g = &tr.graph;
        let ac = coloring_c4(&tr).unwrap();
        let edges: Vec<_> = g
            .edges()
            .iter()
            .copied()
            .filter(|&(u, v)| ac.coloring.get(u, v) == Some(3))
            .collect();
        let sub = Graph::new(g.n(), edges).unwrap();
        let all: Vec<usize> = (0..g.n()).collect();
        assert!(is_linear_forest(&sub, &all).unwrap());
    }

    #[test]
    fn triangle_in_three_parts_has_no_extra_color() {
        let pg = PlaneGraph::bare(complete_graph(3).unwrap());
        let part = VertexPartition {
            parts: vec![vec![0], vec![1], vec![2]],
        };
        let ac = build(&pg.graph, Scheme::C4, part).unwrap();
        assert!(ac.coloring.colors.values().all(|&c| c < 3));
    }
}
