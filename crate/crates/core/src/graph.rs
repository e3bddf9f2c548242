//! Core graph types: simple undirected graphs, plane embeddings given by face
//! lists, and the overlay objects (colorings, orientations, partitions,
//! embeddings) that sit on top of a fixed host.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Unordered edge, always stored with `.0 < .1`.
pub type Edge = (usize, usize);

#[inline]
pub fn edge_key(u: usize, v: usize) -> Edge {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Simple undirected graph on vertices `0..n`.
///
/// Edges are kept sorted, so the edge id (position in [`Graph::edges`]) is
/// canonical for a given edge set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
    index: HashMap<Edge, usize>,
    labels: BTreeMap<usize, String>,
}

impl Graph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            if !set.insert(edge_key(u, v)) {
                let (a, b) = edge_key(u, v);
                return Err(Error::ParallelEdge(a, b));
            }
        }
        Ok(Self::from_sorted(n, set.into_iter().collect()))
    }

    fn from_sorted(n: usize, edges: Vec<Edge>) -> Self {
        let mut adj = vec![Vec::new(); n];
        let mut index = HashMap::with_capacity(edges.len());
        for (i, &(u, v)) in edges.iter().enumerate() {
            adj[u].push(v);
            adj[v].push(u);
            index.insert((u, v), i);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph {
            n,
            edges,
            adj,
            index,
            labels: BTreeMap::new(),
        }
    }

    pub fn with_labels(mut self, labels: BTreeMap<usize, String>) -> Result<Self> {
        if let Some(&v) = labels.keys().find(|&&v| v >= self.n) {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.index.contains_key(&edge_key(u, v))
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        self.index.get(&edge_key(u, v)).copied()
    }

    pub fn labels(&self) -> &BTreeMap<usize, String> {
        &self.labels
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    /// Vertex whose label equals `label`, if any.
    pub fn find_label(&self, label: &str) -> Option<usize> {
        self.labels
            .iter()
            .find(|(_, l)| l.as_str() == label)
            .map(|(&v, _)| v)
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    /// Subgraph induced by `keep`, renumbered in increasing order of the kept
    /// vertices. Returns the subgraph and the old index of each new vertex.
    pub fn induced(&self, keep: &[usize]) -> (Graph, Vec<usize>) {
        let mut old: Vec<usize> = keep.to_vec();
        old.sort_unstable();
        old.dedup();
        let mut new_of = vec![usize::MAX; self.n];
        for (i, &v) in old.iter().enumerate() {
            new_of[v] = i;
        }
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|&&(u, v)| new_of[u] != usize::MAX && new_of[v] != usize::MAX)
            .map(|&(u, v)| (new_of[u], new_of[v]))
            .collect();
        let mut g = Graph::from_sorted(old.len(), {
            let mut e = edges;
            e.sort_unstable();
            e
        });
        g.labels = old
            .iter()
            .enumerate()
            .filter_map(|(i, v)| self.labels.get(v).map(|l| (i, l.clone())))
            .collect();
        (g, old)
    }

    /// Graph with vertex `v` and its edges removed; higher indices shift down.
    pub fn remove_vertex(&self, v: usize) -> Graph {
        let keep: Vec<usize> = (0..self.n).filter(|&u| u != v).collect();
        self.induced(&keep).0
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    pub fn is_forest(&self) -> bool {
        self.m() + self.components().len() == self.n
    }

    /// BFS distances from `s`; `usize::MAX` marks unreachable vertices.
    pub fn bfs_distances(&self, s: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Proper 2-coloring of the vertices if the graph is bipartite.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let mut side: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if side[s].is_some() {
                continue;
            }
            side[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for &w in &self.adj[u] {
                    match side[w] {
                        None => {
                            side[w] = Some(!su);
                            queue.push_back(w);
                        }
                        Some(sw) if sw == su => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(side.into_iter().map(Option::unwrap).collect())
    }
}

/// `true` iff `part` induces an acyclic subgraph of maximum degree at most 2.
pub fn is_linear_forest(g: &Graph, part: &[usize]) -> Result<bool> {
    for &v in part {
        g.check_vertex(v)?;
    }
    let (sub, _) = g.induced(part);
    Ok(sub.max_degree() <= 2 && sub.is_forest())
}

/// A graph together with a combinatorial embedding given as face cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneGraph {
    pub graph: Graph,
    /// Face boundaries as vertex cycles; empty when no embedding is known.
    pub faces: Vec<Vec<usize>>,
    pub outer: usize,
    /// Construction round per vertex, when the generator records one.
    pub rank: Option<Vec<usize>>,
}

impl PlaneGraph {
    /// Wraps a graph without embedding data.
    pub fn bare(graph: Graph) -> Self {
        PlaneGraph {
            graph,
            faces: Vec::new(),
            outer: 0,
            rank: None,
        }
    }

    pub fn has_faces(&self) -> bool {
        !self.faces.is_empty()
    }

    pub fn outer_face(&self) -> Result<&[usize]> {
        self.faces
            .get(self.outer)
            .map(Vec::as_slice)
            .ok_or(Error::FacesMissing)
    }

    pub fn inner_faces(&self) -> impl Iterator<Item = &Vec<usize>> {
        let outer = self.outer;
        self.faces
            .iter()
            .enumerate()
            .filter(move |(i, _)| *i != outer)
            .map(|(_, f)| f)
    }

    /// Checks face sizes, the two-faces-per-edge rule, Euler's formula (for
    /// connected graphs), and rank monotonicity when ranks are present.
    pub fn validate(&self) -> Result<()> {
        let g = &self.graph;
        if let Some(rank) = &self.rank {
            if rank.len() != g.n() {
                return Err(Error::InvalidEmbedding(format!(
                    "rank has {} entries for {} vertices",
                    rank.len(),
                    g.n()
                )));
            }
        }
        if !self.has_faces() {
            return Ok(());
        }
        if self.outer >= self.faces.len() {
            return Err(Error::InvalidEmbedding("outer face index out of range".into()));
        }
        let mut count: HashMap<Edge, usize> = HashMap::new();
        for face in &self.faces {
            if face.len() < 3 {
                return Err(Error::InvalidEmbedding(format!("face {face:?} has fewer than 3 vertices")));
            }
            for i in 0..face.len() {
                let (u, v) = (face[i], face[(i + 1) % face.len()]);
                g.check_vertex(u)?;
                if !g.has_edge(u, v) {
                    return Err(Error::InvalidEmbedding(format!("face uses non-edge {u}-{v}")));
                }
                *count.entry(edge_key(u, v)).or_default() += 1;
            }
        }
        for &e in g.edges() {
            let c = count.get(&e).copied().unwrap_or(0);
            if c != 2 {
                return Err(Error::InvalidEmbedding(format!(
                    "edge {}-{} lies on {c} face sides, expected 2",
                    e.0, e.1
                )));
            }
        }
        if g.is_connected() {
            let euler = g.n() as i64 - g.m() as i64 + self.faces.len() as i64;
            if euler != 2 {
                return Err(Error::InvalidEmbedding(format!("Euler characteristic {euler} != 2")));
            }
        }
        Ok(())
    }

    /// Vertices of rank `< r`, valid only when ranks are recorded.
    pub fn rank_prefix(&self, r: usize) -> Result<Graph> {
        let rank = self
            .rank
            .as_ref()
            .ok_or_else(|| Error::Metadata("rank map absent".into()))?;
        let keep: Vec<usize> = (0..self.graph.n()).filter(|&v| rank[v] < r).collect();
        Ok(self.graph.induced(&keep).0)
    }
}

/// `true` iff every inner face is a triangle and `|E| = 3|V| - 6`.
pub fn check_triangulation(pg: &PlaneGraph) -> Result<bool> {
    if !pg.has_faces() {
        return Err(Error::FacesMissing);
    }
    let g = &pg.graph;
    let triangles = pg.inner_faces().all(|f| f.len() == 3);
    Ok(triangles && g.n() >= 3 && g.m() == 3 * g.n() - 6)
}

/// Total map from host edges to colors `0..k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    pub k: usize,
    pub colors: BTreeMap<Edge, usize>,
}

impl EdgeColoring {
    pub fn new(k: usize) -> Self {
        EdgeColoring {
            k,
            colors: BTreeMap::new(),
        }
    }

    /// Coloring of `g` given one color per edge id.
    pub fn from_vec(g: &Graph, k: usize, per_edge: &[usize]) -> Self {
        EdgeColoring {
            k,
            colors: g.edges().iter().copied().zip(per_edge.iter().copied()).collect(),
        }
    }

    pub fn uniform(g: &Graph, k: usize, color: usize) -> Self {
        EdgeColoring {
            k,
            colors: g.edges().iter().map(|&e| (e, color)).collect(),
        }
    }

    /// Uniformly random coloring, reproducible from `seed`.
    pub fn random(g: &Graph, k: usize, seed: u64) -> Self {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        EdgeColoring {
            k,
            colors: g.edges().iter().map(|&e| (e, rng.gen_range(0..k))).collect(),
        }
    }

    pub fn set(&mut self, u: usize, v: usize, color: usize) {
        self.colors.insert(edge_key(u, v), color);
    }

    pub fn get(&self, u: usize, v: usize) -> Option<usize> {
        self.colors.get(&edge_key(u, v)).copied()
    }

    /// Colors indexed by edge id of `g`. Panics if the coloring is not total on
    /// `g`; call [`validate_coloring`] first for untrusted input.
    pub fn to_vec(&self, g: &Graph) -> Vec<usize> {
        g.edges().iter().map(|e| self.colors[e]).collect()
    }

    /// Color-class subgraph adjacency lists.
    pub fn class_adjacency(&self, g: &Graph, color: usize) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); g.n()];
        for (&(u, v), &c) in &self.colors {
            if c == color && u < g.n() && v < g.n() {
                adj[u].push(v);
                adj[v].push(u);
            }
        }
        for l in &mut adj {
            l.sort_unstable();
        }
        adj
    }
}

/// Result of [`validate_coloring`]: empty diagnostics mean valid.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ColoringReport {
    pub missing: Vec<Edge>,
    pub extra: Vec<Edge>,
    pub out_of_range: Vec<(Edge, usize)>,
}

impl ColoringReport {
    pub fn is_valid(&self) -> bool {
        self.missing.is_empty() && self.extra.is_empty() && self.out_of_range.is_empty()
    }
}

impl std::fmt::Display for ColoringReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "missing {:?}, extra {:?}, out of range {:?}",
            self.missing, self.extra, self.out_of_range
        )
    }
}

pub fn coloring_report(g: &Graph, c: &EdgeColoring) -> ColoringReport {
    let mut report = ColoringReport::default();
    for &e in g.edges() {
        match c.colors.get(&e) {
            None => report.missing.push(e),
            Some(&col) if col >= c.k => report.out_of_range.push((e, col)),
            _ => {}
        }
    }
    for &e in c.colors.keys() {
        if !g.has_edge(e.0, e.1) || e.0 >= e.1 {
            report.extra.push(e);
        }
    }
    report
}

/// `true` iff `c` colors exactly the edges of `g` with colors below `c.k`.
pub fn validate_coloring(g: &Graph, c: &EdgeColoring) -> bool {
    coloring_report(g, c).is_valid()
}

/// Orientation of every edge of a host graph, with a recorded out-degree bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    pub bound: usize,
    /// `(tail, head)` per edge id of the host.
    pub arcs: Vec<(usize, usize)>,
}

impl Orientation {
    pub fn out_degrees(&self, n: usize) -> Vec<usize> {
        let mut out = vec![0; n];
        for &(t, _) in &self.arcs {
            out[t] += 1;
        }
        out
    }

    pub fn validate(&self, g: &Graph) -> Result<()> {
        if self.arcs.len() != g.m() {
            return Err(Error::Precondition(format!(
                "orientation covers {} of {} edges",
                self.arcs.len(),
                g.m()
            )));
        }
        for (&(t, h), &e) in self.arcs.iter().zip(g.edges()) {
            if edge_key(t, h) != e {
                return Err(Error::Precondition(format!("arc {t}->{h} does not match edge {e:?}")));
            }
        }
        if let Some((v, d)) = self
            .out_degrees(g.n())
            .into_iter()
            .enumerate()
            .find(|&(_, d)| d > self.bound)
        {
            return Err(Error::Precondition(format!(
                "vertex {v} has out-degree {d} > {}",
                self.bound
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexPartition {
    pub parts: Vec<Vec<usize>>,
}

impl VertexPartition {
    /// Part index of every vertex.
    pub fn part_of(&self, n: usize) -> Vec<usize> {
        let mut of = vec![usize::MAX; n];
        for (i, part) in self.parts.iter().enumerate() {
            for &v in part {
                if v < n {
                    of[v] = i;
                }
            }
        }
        of
    }

    /// Disjointness and coverage; with `linear_forests`, also that every part
    /// induces a linear forest.
    pub fn validate(&self, g: &Graph, linear_forests: bool) -> Result<()> {
        let mut seen = vec![false; g.n()];
        for part in &self.parts {
            for &v in part {
                g.check_vertex(v)?;
                if std::mem::replace(&mut seen[v], true) {
                    return Err(Error::Precondition(format!("vertex {v} in two parts")));
                }
            }
        }
        if let Some(v) = seen.iter().position(|s| !s) {
            return Err(Error::Precondition(format!("vertex {v} in no part")));
        }
        if linear_forests {
            for (i, part) in self.parts.iter().enumerate() {
                if !is_linear_forest(g, part)? {
                    return Err(Error::Precondition(format!("part {i} is not a linear forest")));
                }
            }
        }
        Ok(())
    }
}

/// Injective map from pattern vertices to host vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Embedding {
    pub map: Vec<usize>,
}

impl Embedding {
    /// Host edges hit by the pattern edges, in pattern edge order.
    pub fn image_edges(&self, pattern: &Graph) -> Vec<Edge> {
        pattern
            .edges()
            .iter()
            .map(|&(a, b)| edge_key(self.map[a], self.map[b]))
            .collect()
    }

    /// Injective, edge-preserving, and (when a coloring is given) every image
    /// edge carries `color`.
    pub fn is_valid(
        &self,
        host: &Graph,
        pattern: &Graph,
        coloring: Option<(&EdgeColoring, usize)>,
    ) -> bool {
        if self.map.len() != pattern.n() || self.map.iter().any(|&v| v >= host.n()) {
            return false;
        }
        let distinct: BTreeSet<usize> = self.map.iter().copied().collect();
        if distinct.len() != self.map.len() {
            return false;
        }
        self.image_edges(pattern).into_iter().all(|(u, v)| {
            host.has_edge(u, v)
                && coloring.is_none_or(|(c, col)| c.get(u, v) == Some(col))
        })
    }
}
