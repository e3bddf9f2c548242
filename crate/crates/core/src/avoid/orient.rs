use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Graph, Orientation};

/// Orientation with out-degree at most `d` everywhere.
///
/// Starts from a smallest-last elimination order and repairs overloaded
/// vertices by reversing a directed path to a vertex with spare out-degree.
/// When no such path exists, the vertices reachable from the overloaded one
/// span more than `d` edges per vertex, and are returned as the witness.
pub fn bounded_outdegree_orientation(g: &Graph, d: usize) -> Result<Orientation> {
    let n = g.n();
    let order = elimination_order(g);
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    // head of each edge id, and for each vertex its outgoing edge ids
    let mut head: Vec<usize> = g
        .edges()
        .iter()
        .map(|&(u, v)| if pos[u] < pos[v] { v } else { u })
        .collect();
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        out[u + v - head[e]].push(e);
    }

    let mut prev_edge = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    for v in 0..n {
        while out[v].len() > d {
            seen.iter_mut().for_each(|s| *s = false);
            seen[v] = true;
            let mut queue = VecDeque::from([v]);
            let mut reached = vec![v];
            let mut target = None;
            'bfs: while let Some(x) = queue.pop_front() {
                for &e in &out[x] {
                    let y = head[e];
                    if !seen[y] {
                        seen[y] = true;
                        prev_edge[y] = e;
                        reached.push(y);
                        if out[y].len() < d {
                            target = Some(y);
                            break 'bfs;
                        }
                        queue.push_back(y);
                    }
                }
            }
            let Some(mut y) = target else {
                reached.sort_unstable();
                return Err(Error::Infeasible {
                    bound: d,
                    witness: reached,
                });
            };
            while y != v {
                let e = prev_edge[y];
                let (a, b) = g.edges()[e];
                let x = a + b - y;
                out[x].retain(|&f| f != e);
                out[y].push(e);
                head[e] = x;
                y = x;
            }
        }
    }
    let arcs = g
        .edges()
        .iter()
        .zip(&head)
        .map(|(&(a, b), &h)| (a + b - h, h))
        .collect();
    Ok(Orientation { bound: d, arcs })
}

/// Repeatedly removes a vertex of minimum remaining degree.
fn elimination_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let maxd = g.max_degree();
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); maxd + 1];
    for v in 0..n {
        buckets[deg[v]].push(v);
    }
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut low = 0;
    while order.len() < n {
        low = low.min(maxd);
        while buckets[low].is_empty() {
            low += 1;
        }
        let v = buckets[low].pop().unwrap();
        if removed[v] || deg[v] != low {
            continue;
        }
        removed[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                deg[w] -= 1;
                buckets[deg[w]].push(w);
                low = low.min(deg[w]);
            }
        }
    }
    order
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete_graph, iterated_triangulation, universal_outerplanar};

    #[test]
    fn small_cases() {
        let tri = complete_graph(3).unwrap();
        let o = bounded_outdegree_orientation(&tri, 1).unwrap();
        o.validate(&tri).unwrap();
        assert_eq!(o.out_degrees(3), vec![1, 1, 1]);

        let k4 = complete_graph(4).unwrap();
        let o = bounded_outdegree_orientation(&k4, 2).unwrap();
        o.validate(&k4).unwrap();
        assert_eq!(o.out_degrees(4).iter().max(), Some(&2));

        match bounded_outdegree_orientation(&k4, 1) {
            Err(Error::Infeasible { bound: 1, witness }) => {
                let (sub, _) = k4.induced(&witness);
                assert!(sub.m() > witness.len());
            }
            other => panic!("expected infeasible, got {other:?}"),
        }
    }

    #[test]
    fn planar_bounds() {
        let tr = iterated_triangulation(5).unwrap().graph;
        bounded_outdegree_orientation(&tr, 3).unwrap().validate(&tr).unwrap();
        let uop = universal_outerplanar(8).unwrap().graph;
        bounded_outdegree_orientation(&uop, 2).unwrap().validate(&uop).unwrap();
    }
}
