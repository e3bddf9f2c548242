//! Recognition of the structural facts that decide (or fail to decide)
//! whether a pattern is k-avoidable in planar hosts.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const CLASSIFY_EDGE_CAP: usize = 10_000;
pub const MINOR_CHECK_VERTEX_CAP: usize = 50;
const PATH_SEARCH_BUDGET: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "reason", rename_all = "snake_case")]
pub enum Verdict {
    Avoidable(String),
    Unavoidable(String),
    Unknown,
}

impl Verdict {
    pub fn is_avoidable(&self) -> bool {
        matches!(self, Verdict::Avoidable(_))
    }

    pub fn is_unavoidable(&self) -> bool {
        matches!(self, Verdict::Unavoidable(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KVerdict {
    pub k: usize,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub vertices: usize,
    pub edges: usize,
    pub bipartite: bool,
    /// `None` when the exact minor check was out of reach.
    pub outerplanar: Option<bool>,
    pub forest: bool,
    pub caterpillar_forest: bool,
    pub star_forest: bool,
    /// Vertices of degree at least 4 induce a subgraph of maximum degree at least 3.
    pub heavy_core: bool,
    /// Some odd-length path joins two vertices of degree at least 3.
    pub odd_branch_path: Option<bool>,
    /// Name of the recognized always-unavoidable family, if any.
    pub unavoidable_class: Option<String>,
    /// Verdicts for k = 2, 3, 4 and 5 (the last one covers every k >= 5).
    pub verdicts: Vec<KVerdict>,
}

impl ClassificationReport {
    pub fn verdict(&self, k: usize) -> &Verdict {
        let k = k.clamp(2, 5);
        &self.verdicts[k - 2].verdict
    }
}

pub fn classify(h: &Graph) -> Result<ClassificationReport> {
    if h.m() > CLASSIFY_EDGE_CAP {
        return Err(Error::SizeLimit {
            what: "classification".into(),
            needed: h.m() as u128,
            cap: CLASSIFY_EDGE_CAP,
        });
    }
    let bipartite = h.bipartition().is_some();
    let forest = h.is_forest();
    let caterpillar_forest = forest
        && (0..h.n()).all(|v| h.neighbors(v).iter().filter(|&&w| h.degree(w) >= 2).count() <= 2);
    let star_forest = forest && h.edges().iter().all(|&(u, v)| h.degree(u) == 1 || h.degree(v) == 1);
    let outerplanar = outerplanarity(h);
    let heavy: Vec<usize> = (0..h.n()).filter(|&v| h.degree(v) >= 4).collect();
    let heavy_core = h.induced(&heavy).0.max_degree() >= 3;
    let odd_branch_path = odd_branch_path(h, bipartite);
    let unavoidable_class = known_unavoidable_family(h, forest);

    let mut verdicts = Vec::new();
    let mut prev: Option<Verdict> = None;
    for k in 2..=5 {
        let mut reasons: Vec<String> = Vec::new();
        match k {
            2 => {
                if !bipartite {
                    reasons.push("not bipartite".into());
                }
                if outerplanar == Some(false) {
                    reasons.push("not outerplanar".into());
                }
            }
            3 => {
                if !forest {
                    reasons.push("not a forest".into());
                }
                if heavy_core {
                    reasons.push("degree-4 vertices induce max degree 3".into());
                }
            }
            4 => {
                if !caterpillar_forest {
                    reasons.push("not a caterpillar forest".into());
                }
                if odd_branch_path == Some(true) {
                    reasons.push("odd path between two degree-3 vertices".into());
                }
            }
            _ => {
                if !star_forest {
                    reasons.push("not a star forest".into());
                }
            }
        }
        if reasons.is_empty() {
            if let Some(Verdict::Avoidable(r)) = &prev {
                reasons.push(format!("{r} (fewer colors)"));
            }
        }
        let verdict = if !reasons.is_empty() {
            Verdict::Avoidable(reasons.join("; "))
        } else if star_forest {
            Verdict::Unavoidable("star forest".into())
        } else if k == 2 {
            match &unavoidable_class {
                Some(c) => Verdict::Unavoidable(c.clone()),
                None => Verdict::Unknown,
            }
        } else {
            Verdict::Unknown
        };
        prev = Some(verdict.clone());
        verdicts.push(KVerdict { k, verdict });
    }

    Ok(ClassificationReport {
        vertices: h.n(),
        edges: h.m(),
        bipartite,
        outerplanar,
        forest,
        caterpillar_forest,
        star_forest,
        heavy_core,
        odd_branch_path,
        unavoidable_class,
        verdicts,
    })
}

/// Path, 4-cycle, tree of radius at most 2, or generalized broom.
fn known_unavoidable_family(h: &Graph, forest: bool) -> Option<String> {
    let n = h.n();
    if n == 0 || !h.is_connected() {
        return None;
    }
    if n == 4 && h.m() == 4 && (0..4).all(|v| h.degree(v) == 2) {
        return Some("cycle on 4 vertices".into());
    }
    if !forest {
        return None;
    }
    if h.max_degree() <= 2 {
        return Some("path".into());
    }
    let radius = (0..n)
        .map(|v| h.bfs_distances(v).into_iter().max().unwrap_or(0))
        .min()
        .unwrap_or(0);
    if radius <= 2 {
        return Some("tree of radius at most 2".into());
    }
    let branching: Vec<usize> = (0..n).filter(|&v| h.degree(v) >= 3).collect();
    if branching.len() == 1 {
        let c = branching[0];
        let long = h.neighbors(c).iter().filter(|&&w| h.degree(w) >= 2).count();
        if long <= 2 {
            return Some("generalized broom".into());
        }
    }
    None
}

fn outerplanarity(h: &Graph) -> Option<bool> {
    let n = h.n();
    if h.is_forest() {
        return Some(true);
    }
    if n >= 2 && h.m() > 2 * n - 3 {
        return Some(false);
    }
    if (0..n).all(|v| h.degree(v) <= 2) {
        // disjoint cycles and paths
        return Some(true);
    }
    if n > MINOR_CHECK_VERTEX_CAP {
        return None;
    }
    Some(!has_k4_minor(h) && !has_k23_minor(h))
}

/// Series-parallel reduction: delete vertices of degree at most 1 and
/// suppress vertices of degree 2. A K4 minor remains iff the reduction stalls.
pub fn has_k4_minor(h: &Graph) -> bool {
    let n = h.n();
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| h.neighbors(v).iter().copied().collect()).collect();
    let mut alive = vec![true; n];
    let mut left = n;
    let mut queue: VecDeque<usize> = (0..n).collect();
    while left > 0 {
        let Some(v) = queue.pop_front() else {
            return true;
        };
        if !alive[v] || adj[v].len() > 2 {
            continue;
        }
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        for &w in &nb {
            adj[w].remove(&v);
        }
        if let [a, b] = nb[..] {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        for &w in &nb {
            queue.push_back(w);
        }
        adj[v].clear();
        alive[v] = false;
        left -= 1;
    }
    false
}

/// Three internally disjoint `a`–`b` paths of length at least 2, for some
/// pair `a`, `b`. K_{2,3} has maximum degree 3, so containing it as a minor
/// is the same as containing a subdivision of it.
pub fn has_k23_minor(h: &Graph) -> bool {
    let n = h.n();
    (0..n).any(|a| {
        h.degree(a) >= 3
            && (a + 1..n).any(|b| h.degree(b) >= 3 && disjoint_paths(h, a, b, 3) >= 3)
    })
}

/// Internally vertex-disjoint `a`–`b` paths avoiding the edge `ab`, up to `want`.
fn disjoint_paths(h: &Graph, a: usize, b: usize, want: usize) -> usize {
    let n = h.n();
    // vertex v splits into v_in = 2v, v_out = 2v+1
    let nodes = 2 * n;
    let mut cap: std::collections::HashMap<(usize, usize), i32> = std::collections::HashMap::new();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nodes];
    let mut add = |cap: &mut std::collections::HashMap<(usize, usize), i32>, x: usize, y: usize, c: i32| {
        if !cap.contains_key(&(x, y)) && !cap.contains_key(&(y, x)) {
            adj[x].push(y);
            adj[y].push(x);
        }
        *cap.entry((x, y)).or_insert(0) += c;
        cap.entry((y, x)).or_insert(0);
    };
    for v in 0..n {
        let c = if v == a || v == b { want as i32 } else { 1 };
        add(&mut cap, 2 * v, 2 * v + 1, c);
    }
    for &(u, v) in h.edges() {
        if (u, v) == (a.min(b), a.max(b)) {
            continue;
        }
        add(&mut cap, 2 * u + 1, 2 * v, 1);
        add(&mut cap, 2 * v + 1, 2 * u, 1);
    }
    let (s, t) = (2 * a + 1, 2 * b);
    let mut flow = 0;
    while flow < want {
        let mut prev = vec![usize::MAX; nodes];
        prev[s] = s;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            if x == t {
                break;
            }
            for &y in &adj[x] {
                if prev[y] == usize::MAX && cap[&(x, y)] > 0 {
                    prev[y] = x;
                    queue.push_back(y);
                }
            }
        }
        if prev[t] == usize::MAX {
            break;
        }
        let mut y = t;
        while y != s {
            let x = prev[y];
            *cap.get_mut(&(x, y)).unwrap() -= 1;
            *cap.get_mut(&(y, x)).unwrap() += 1;
            y = x;
        }
        flow += 1;
    }
    flow
}

/// In bipartite graphs every path between two vertices has the parity of
/// their distance; otherwise simple paths are enumerated within a budget.
fn odd_branch_path(h: &Graph, bipartite: bool) -> Option<bool> {
    let n = h.n();
    let branch: Vec<usize> = (0..n).filter(|&v| h.degree(v) >= 3).collect();
    if bipartite {
        let found = branch.iter().any(|&u| {
            let d = h.bfs_distances(u);
            branch.iter().any(|&v| v != u && d[v] != usize::MAX && d[v] % 2 == 1)
        });
        return Some(found);
    }
    let is_branch: Vec<bool> = (0..n).map(|v| h.degree(v) >= 3).collect();
    let mut nodes = 0u64;
    let mut on = vec![false; n];

    fn dfs(
        h: &Graph,
        v: usize,
        len: usize,
        start: usize,
        is_branch: &[bool],
        on: &mut [bool],
        nodes: &mut u64,
    ) -> Option<bool> {
        if len % 2 == 1 && is_branch[v] && v != start {
            return Some(true);
        }
        on[v] = true;
        for &w in h.neighbors(v) {
            if on[w] {
                continue;
            }
            *nodes += 1;
            if *nodes > PATH_SEARCH_BUDGET {
                on[v] = false;
                return None;
            }
            match dfs(h, w, len + 1, start, is_branch, on, nodes) {
                Some(false) => {}
                other => {
                    on[v] = false;
                    return other;
                }
            }
        }
        on[v] = false;
        Some(false)
    }

    for &s in &branch {
        match dfs(h, s, 0, s, &is_branch, &mut on, &mut nodes) {
            Some(false) => {}
            other => return other,
        }
    }
    Some(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{
        complete_graph, cycle_graph, generalized_broom, paper_tree, path_graph, star_graph, PaperTree,
    };

    fn k23() -> Graph {
        Graph::new(5, [(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap()
    }

    #[test]
    fn examples() {
        let c3 = classify(&cycle_graph(3).unwrap()).unwrap();
        assert!(c3.verdict(2).is_avoidable());
        let c4 = classify(&cycle_graph(4).unwrap()).unwrap();
        assert!(c4.verdict(2).is_unavoidable());
        assert!(c4.verdict(3).is_avoidable());
        let r = classify(&k23()).unwrap();
        assert_eq!(r.outerplanar, Some(false));
        assert!(r.bipartite && r.verdict(2).is_avoidable());
        let t4 = classify(&paper_tree(PaperTree::T4).graph()).unwrap();
        assert_eq!(t4.odd_branch_path, Some(true));
        assert!(t4.verdict(4).is_avoidable());
        assert!(t4.verdict(2).is_unavoidable());
    }

    #[test]
    fn minors() {
        assert!(has_k4_minor(&complete_graph(4).unwrap()));
        assert!(!has_k4_minor(&k23()));
        assert!(has_k23_minor(&k23()));
        assert!(!has_k23_minor(&cycle_graph(6).unwrap()));
        let fan = Graph::new(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert!(!has_k4_minor(&fan) && !has_k23_minor(&fan));
        assert_eq!(classify(&fan).unwrap().outerplanar, Some(true));
    }

    #[test]
    fn families() {
        let s = classify(&star_graph(7)).unwrap();
        assert!(s.star_forest);
        assert!((2..=6).all(|k| s.verdict(k).is_unavoidable()));
        let p = classify(&path_graph(9).unwrap()).unwrap();
        assert_eq!(p.unavoidable_class.as_deref(), Some("path"));
        assert!(p.verdict(5).is_avoidable());
        let b = classify(&generalized_broom(6, 4).unwrap().graph()).unwrap();
        assert_eq!(b.unavoidable_class.as_deref(), Some("generalized broom"));
        let t1 = classify(&paper_tree(PaperTree::T1).graph()).unwrap();
        assert_eq!(t1.unavoidable_class, None);
        assert_eq!(*t1.verdict(2), Verdict::Unknown);
        assert!(t1.verdict(3).is_avoidable());
    }
}
