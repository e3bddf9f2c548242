use std::collections::VecDeque;

use crate::graph::{EdgeColoring, Graph};

/// `true` iff `path` is vertex-simple, uses only host edges, and every edge
/// has `color`.
pub fn is_mono_path(g: &Graph, c: &EdgeColoring, color: usize, path: &[usize]) -> bool {
    if path.is_empty() || path.iter().any(|&v| v >= g.n()) {
        return false;
    }
    let mut seen = vec![false; g.n()];
    for &v in path {
        if std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    path.windows(2)
        .all(|w| g.has_edge(w[0], w[1]) && c.get(w[0], w[1]) == Some(color))
}

/// Shortest path (as vertex list) in the given adjacency from any vertex in
/// `sources` to any vertex in `targets`, optionally restricted to `allowed`.
pub fn bfs_path(
    adj: &[Vec<usize>],
    sources: &[usize],
    targets: &[usize],
    allowed: Option<&[bool]>,
) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut is_target = vec![false; n];
    for &t in targets {
        is_target[t] = true;
    }
    let ok = |v: usize| allowed.is_none_or(|a| a[v]);
    let mut prev = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for &s in sources {
        if ok(s) && !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        if is_target[u] {
            let mut path = vec![u];
            let mut x = u;
            while prev[x] != usize::MAX {
                x = prev[x];
                path.push(x);
            }
            path.reverse();
            return Some(path);
        }
        for &w in &adj[u] {
            if !seen[w] && ok(w) {
                seen[w] = true;
                prev[w] = u;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Longest path found in a color class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LongestPath {
    pub path: Vec<usize>,
    /// The search covered every simple path.
    pub exact: bool,
    pub nodes: u64,
}

impl LongestPath {
    pub fn len_edges(&self) -> usize {
        self.path.len().saturating_sub(1)
    }
}

/// Depth-first enumeration of simple paths in the color class, keeping the
/// longest. Exact when it finishes inside `budget` extension steps.
pub fn longest_mono_path(g: &Graph, c: &EdgeColoring, color: usize, budget: u64) -> LongestPath {
    let adj = c.class_adjacency(g, color);
    let n = g.n();
    let mut best: Vec<usize> = if n > 0 { vec![0] } else { Vec::new() };
    let mut nodes = 0u64;
    let mut on_path = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut out_of_budget = false;

    fn dfs(
        v: usize,
        adj: &[Vec<usize>],
        on_path: &mut [bool],
        stack: &mut Vec<usize>,
        best: &mut Vec<usize>,
        nodes: &mut u64,
        budget: u64,
        out: &mut bool,
    ) {
        if *out {
            return;
        }
        on_path[v] = true;
        stack.push(v);
        if stack.len() > best.len() {
            *best = stack.clone();
        }
        if best.len() < on_path.len() {
            for &w in &adj[v] {
                if !on_path[w] {
                    *nodes += 1;
                    if *nodes > budget {
                        *out = true;
                        break;
                    }
                    dfs(w, adj, on_path, stack, best, nodes, budget, out);
                }
            }
        }
        stack.pop();
        on_path[v] = false;
    }

    for s in 0..n {
        if best.len() == n || out_of_budget {
            break;
        }
        dfs(
            s,
            &adj,
            &mut on_path,
            &mut stack,
            &mut best,
            &mut nodes,
            budget,
            &mut out_of_budget,
        );
    }
    LongestPath {
        path: best,
        exact: !out_of_budget,
        nodes,
    }
}
