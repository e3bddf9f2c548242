//! Backtracking search for a copy of a pattern inside one color class.
//!
//! Pattern vertices are visited max-degree-first, then breadth-first from the
//! chosen root (ties by smallest index). Before backtracking, a dynamic
//! program over the pattern's BFS spanning forest marks which host
//! placements can possibly extend: a child must land on a neighbor of its
//! parent's image other than the grandparent's image, siblings on distinct
//! neighbors, and every image must have color-degree at least the pattern
//! degree. The table is a relaxation of the real problem (it only forbids
//! collisions among siblings and with the parent), so a placement it rejects
//! never occurs in a true copy, and "no placement for the root" is an exact
//! refutation.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::graph::{edge_key, Edge, EdgeColoring, Embedding, Graph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Embedding),
    NotFound,
    BudgetExceeded,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Partial assignments tried by the backtracking phase.
    pub nodes: u64,
    /// Whether the tree relaxation alone refuted the pattern.
    pub refuted_by_relaxation: bool,
}

/// A pattern graph preprocessed for repeated searches.
#[derive(Debug, Clone)]
pub struct Pattern {
    graph: Graph,
    order: Vec<usize>,
    parent: Vec<Option<usize>>,
    /// Earlier-ordered neighbors other than the parent.
    back: Vec<Vec<usize>>,
    /// Relaxation class of each vertex; equal classes have identical tables.
    class: Vec<usize>,
    /// Per class: pattern degree and child classes.
    class_shape: Vec<(usize, Vec<usize>)>,
}

impl Pattern {
    pub fn new(h: &Graph) -> Self {
        let n = h.n();
        let mut order = Vec::with_capacity(n);
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        while order.len() < n {
            let root = (0..n)
                .filter(|&v| !seen[v])
                .max_by_key(|&v| (h.degree(v), std::cmp::Reverse(v)))
                .unwrap();
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                order.push(u);
                for &w in h.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        parent[w] = Some(u);
                        queue.push_back(w);
                    }
                }
            }
        }
        let mut pos = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let back = (0..n)
            .map(|v| {
                h.neighbors(v)
                    .iter()
                    .copied()
                    .filter(|&w| pos[w] < pos[v] && Some(w) != parent[v])
                    .collect()
            })
            .collect();

        let mut children = vec![Vec::new(); n];
        for &v in &order {
            if let Some(p) = parent[v] {
                children[p].push(v);
            }
        }
        let mut class = vec![usize::MAX; n];
        let mut intern: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let mut class_shape = Vec::new();
        for &v in order.iter().rev() {
            let mut kids: Vec<usize> = children[v].iter().map(|&c| class[c]).collect();
            kids.sort_unstable();
            let key = (h.degree(v), kids);
            let next = intern.len();
            let id = *intern.entry(key.clone()).or_insert_with(|| {
                class_shape.push(key);
                next
            });
            class[v] = id;
        }
        Pattern {
            graph: h.clone(),
            order,
            parent,
            back,
            class,
            class_shape,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }
}

/// Host color class as sorted adjacency lists.
#[derive(Debug, Clone)]
pub struct HostView {
    adj: Vec<Vec<usize>>,
    offset: Vec<usize>,
    edges: usize,
}

impl HostView {
    pub fn new(adj: Vec<Vec<usize>>) -> Self {
        let mut offset = Vec::with_capacity(adj.len() + 1);
        let mut acc = 0;
        for l in &adj {
            offset.push(acc);
            acc += l.len();
        }
        offset.push(acc);
        HostView {
            adj,
            offset,
            edges: acc / 2,
        }
    }

    pub fn color_class(g: &Graph, c: &EdgeColoring, color: usize) -> Self {
        Self::new(c.class_adjacency(g, color))
    }

    pub fn whole(g: &Graph) -> Self {
        Self::new((0..g.n()).map(|v| g.neighbors(v).to_vec()).collect())
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    fn dedge(&self, tail: usize, i: usize) -> usize {
        self.offset[tail] + i
    }
}

/// Kuhn's augmenting-path matching: can every child slot get its own host
/// candidate?
fn perfect_left_matching(cands: &[Vec<usize>]) -> bool {
    fn augment(
        i: usize,
        cands: &[Vec<usize>],
        owner: &mut HashMap<usize, usize>,
        visited: &mut BTreeSet<usize>,
    ) -> bool {
        for &h in &cands[i] {
            if visited.insert(h) {
                let free = match owner.get(&h).copied() {
                    None => true,
                    Some(j) => augment(j, cands, owner, visited),
                };
                if free {
                    owner.insert(h, i);
                    return true;
                }
            }
        }
        false
    }
    if cands.iter().any(Vec::is_empty) {
        return false;
    }
    let mut owner = HashMap::new();
    (0..cands.len()).all(|i| augment(i, cands, &mut owner, &mut BTreeSet::new()))
}

/// Relaxation tables for one (pattern, host) pair.
struct Relaxation {
    /// `ok[class][dedge]`: the class fits at the head of the directed edge
    /// with its parent on the tail.
    ok: Vec<Vec<bool>>,
    /// `root_ok[class][h]`, filled lazily for component-root classes.
    root_ok: HashMap<usize, Vec<bool>>,
}

impl Relaxation {
    fn build(p: &Pattern, host: &HostView) -> Self {
        let classes = p.class_shape.len();
        let dedges = *host.offset.last().unwrap();
        let mut ok = vec![Vec::new(); classes];
        // classes were interned leaves-first, so children precede parents
        for cl in 0..classes {
            let (deg, kids) = &p.class_shape[cl];
            let mut table = vec![false; dedges];
            for tail in 0..host.n() {
                for (i, &head) in host.adj[tail].iter().enumerate() {
                    if host.adj[head].len() < *deg {
                        continue;
                    }
                    table[host.dedge(tail, i)] = fits(host, &ok, kids, head, Some(tail));
                }
            }
            ok[cl] = table;
        }
        let mut root_ok = HashMap::new();
        for (v, parent) in p.parent.iter().enumerate() {
            if parent.is_none() {
                let cl = p.class[v];
                root_ok.entry(cl).or_insert_with(|| {
                    let (deg, kids) = &p.class_shape[cl];
                    (0..host.n())
                        .map(|h| host.adj[h].len() >= *deg && fits(host, &ok, kids, h, None))
                        .collect()
                });
            }
        }
        Relaxation { ok, root_ok }
    }
}

fn fits(host: &HostView, ok: &[Vec<bool>], kids: &[usize], at: usize, from: Option<usize>) -> bool {
    if kids.is_empty() {
        return true;
    }
    let cands: Vec<Vec<usize>> = kids
        .iter()
        .map(|&kc| {
            host.adj[at]
                .iter()
                .enumerate()
                .filter(|&(j, &nb)| Some(nb) != from && ok[kc][host.dedge(at, j)])
                .map(|(_, &nb)| nb)
                .collect()
        })
        .collect();
    perfect_left_matching(&cands)
}

struct Backtrack<'a> {
    p: &'a Pattern,
    host: &'a HostView,
    relax: &'a Relaxation,
    map: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
    budget: u64,
    limit: usize,
    found: Vec<Embedding>,
    seen_images: BTreeSet<Vec<Edge>>,
    exhausted_budget: bool,
}

impl Backtrack<'_> {
    fn candidates(&self, v: usize) -> Vec<usize> {
        let cl = self.p.class[v];
        match self.p.parent[v] {
            None => self.relax.root_ok[&cl]
                .iter()
                .enumerate()
                .filter(|&(h, &ok)| ok && !self.used[h])
                .map(|(h, _)| h)
                .collect(),
            Some(pv) => {
                let hp = self.map[pv];
                self.host.adj[hp]
                    .iter()
                    .enumerate()
                    .filter(|&(j, &nb)| !self.used[nb] && self.relax.ok[cl][self.host.dedge(hp, j)])
                    .map(|(_, &nb)| nb)
                    .collect()
            }
        }
    }

    /// Returns `true` when the search should stop.
    fn run(&mut self, depth: usize) -> bool {
        if depth == self.p.order.len() {
            let emb = Embedding {
                map: self.map.clone(),
            };
            let mut image = emb.image_edges(&self.p.graph);
            image.sort_unstable();
            if self.seen_images.insert(image) {
                self.found.push(emb);
            }
            return self.found.len() >= self.limit;
        }
        let v = self.p.order[depth];
        for h in self.candidates(v) {
            if self.p.back[v].iter().any(|&w| !self.host.has_edge(h, self.map[w])) {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                self.exhausted_budget = true;
                return true;
            }
            self.map[v] = h;
            self.used[h] = true;
            let stop = self.run(depth + 1);
            self.used[h] = false;
            if stop {
                return true;
            }
        }
        false
    }
}

/// Search result for [`find_copies`].
#[derive(Debug, Clone)]
pub struct CopiesResult {
    /// Copies with pairwise distinct image edge sets.
    pub copies: Vec<Embedding>,
    /// `true` when the search stopped on the node budget.
    pub budget_exceeded: bool,
    pub stats: SearchStats,
}

/// Up to `limit` copies of `p` in `host`, with distinct image edge sets.
pub fn find_copies(p: &Pattern, host: &HostView, limit: usize, budget: u64) -> CopiesResult {
    let h = &p.graph;
    let mut stats = SearchStats::default();
    if h.n() > host.n() || h.m() > host.edges || limit == 0 {
        return CopiesResult {
            copies: Vec::new(),
            budget_exceeded: false,
            stats,
        };
    }
    let relax = Relaxation::build(p, host);
    if relax.root_ok.values().any(|t| !t.iter().any(|&b| b)) {
        stats.refuted_by_relaxation = true;
        return CopiesResult {
            copies: Vec::new(),
            budget_exceeded: false,
            stats,
        };
    }
    let mut bt = Backtrack {
        p,
        host,
        relax: &relax,
        map: vec![usize::MAX; h.n()],
        used: vec![false; host.n()],
        nodes: 0,
        budget,
        limit,
        found: Vec::new(),
        seen_images: BTreeSet::new(),
        exhausted_budget: false,
    };
    bt.run(0);
    stats.nodes = bt.nodes;
    CopiesResult {
        copies: bt.found,
        budget_exceeded: bt.exhausted_budget,
        stats,
    }
}

/// Looks for a copy of `h` all of whose edges have `color` under `c`.
///
/// `NotFound` is exact: the search (or the relaxation) was exhaustive.
pub fn find_mono_copy(
    g: &Graph,
    c: &EdgeColoring,
    color: usize,
    h: &Graph,
    budget: u64,
) -> (SearchOutcome, SearchStats) {
    let pattern = Pattern::new(h);
    let host = HostView::color_class(g, c, color);
    find_in_view(&pattern, &host, budget)
}

pub fn find_in_view(p: &Pattern, host: &HostView, budget: u64) -> (SearchOutcome, SearchStats) {
    let r = find_copies(p, host, 1, budget);
    let outcome = match r.copies.into_iter().next() {
        Some(e) => SearchOutcome::Found(e),
        None if r.budget_exceeded => SearchOutcome::BudgetExceeded,
        None => SearchOutcome::NotFound,
    };
    (outcome, r.stats)
}

/// Every copy of `h` in the host adjacency, one per distinct image edge set,
/// by plain enumeration of injective maps in vertex-index order. Used as an
/// independent reference for the pruned search.
pub fn enumerate_copies(adj: &[Vec<usize>], h: &Graph) -> Vec<Vec<Edge>> {
    fn rec(
        v: usize,
        adj: &[Vec<usize>],
        h: &Graph,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut BTreeSet<Vec<Edge>>,
    ) {
        if v == h.n() {
            let mut img: Vec<Edge> = h
                .edges()
                .iter()
                .map(|&(a, b)| edge_key(map[a], map[b]))
                .collect();
            img.sort_unstable();
            out.insert(img);
            return;
        }
        for x in 0..adj.len() {
            if used[x] {
                continue;
            }
            let consistent = h
                .neighbors(v)
                .iter()
                .filter(|&&w| w < v)
                .all(|&w| adj[x].contains(&map[w]));
            if consistent {
                map[v] = x;
                used[x] = true;
                rec(v + 1, adj, h, map, used, out);
                used[x] = false;
            }
        }
    }
    let mut out = BTreeSet::new();
    if h.n() <= adj.len() {
        rec(0, adj, h, &mut vec![0; h.n()], &mut vec![false; adj.len()], &mut out);
    }
    out.into_iter().collect()
}

/// All 4-cycles of `g`, each once as `[a, b, c, d]` with `a` the smallest
/// vertex and `b < d`.
pub fn enumerate_c4s(g: &Graph) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..g.n() {
        let nbrs: Vec<usize> = g.neighbors(a).iter().copied().filter(|&x| x > a).collect();
        for (i, &b) in nbrs.iter().enumerate() {
            for &d in &nbrs[i + 1..] {
                for &c in g.neighbors(b) {
                    if c > a && c != d && g.has_edge(c, d) {
                        out.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    out
}
