//! Deterministic generators for the host and pattern families.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, PlaneGraph};

pub const DEFAULT_EDGE_CAP: usize = 2_000_000;

/// Generators with a configurable edge budget. The free functions in this
/// module use [`DEFAULT_EDGE_CAP`].
#[derive(Debug, Clone, Copy)]
pub struct Generator {
    pub cap_edges: usize,
}

impl Default for Generator {
    fn default() -> Self {
        Generator {
            cap_edges: DEFAULT_EDGE_CAP,
        }
    }
}

/// Rooted tree given as a parent array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeSpec {
    pub parent: Vec<Option<usize>>,
    pub root: usize,
    /// Largest depth of any vertex below the root.
    pub radius: usize,
}

impl TreeSpec {
    fn from_parents(parent: Vec<Option<usize>>, root: usize) -> Self {
        let mut depth = vec![0usize; parent.len()];
        // parents always precede children in the generators below
        for v in 0..parent.len() {
            if let Some(p) = parent[v] {
                depth[v] = depth[p] + 1;
            }
        }
        TreeSpec {
            radius: depth.iter().copied().max().unwrap_or(0),
            parent,
            root,
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn graph(&self) -> Graph {
        Graph::new(
            self.parent.len(),
            self.parent
                .iter()
                .enumerate()
                .filter_map(|(v, p)| p.map(|p| (p, v))),
        )
        .expect("tree parent array yields a simple graph")
    }

    /// Children lists, in vertex order.
    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut ch = vec![Vec::new(); self.parent.len()];
        for (v, p) in self.parent.iter().enumerate() {
            if let Some(p) = p {
                ch[*p].push(v);
            }
        }
        ch
    }
}

/// Named trees that serve as avoidable patterns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PaperTree {
    T1,
    T2,
    T3,
    T4,
}

impl std::str::FromStr for PaperTree {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "T1" => Ok(PaperTree::T1),
            "T2" => Ok(PaperTree::T2),
            "T3" => Ok(PaperTree::T3),
            "T4" => Ok(PaperTree::T4),
            _ => Err(Error::InvalidParameter(format!("unknown tree {s:?}, expected T1..T4"))),
        }
    }
}

/// Side of the triangulated grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridSide {
    Left,
    Right,
    Top,
    Bottom,
}

fn grid_label(row: usize, col: usize) -> String {
    format!("({row},{col})")
}

fn parse_grid_label(label: &str) -> Option<(usize, usize)> {
    let inner = label.strip_prefix('(')?.strip_suffix(')')?;
    let (a, b) = inner.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

/// Vertices on one side of a grid produced by [`triangulated_grid`], located
/// through their `(row,col)` labels and sorted by the free coordinate.
pub fn grid_side(pg: &PlaneGraph, side: GridSide) -> Result<Vec<usize>> {
    let g = &pg.graph;
    let coords: Vec<(usize, usize, usize)> = g
        .labels()
        .iter()
        .filter_map(|(&v, l)| parse_grid_label(l).map(|(r, c)| (v, r, c)))
        .collect();
    if coords.len() != g.n() {
        return Err(Error::Metadata("grid coordinates missing from labels".into()));
    }
    let n = coords.iter().map(|&(_, r, _)| r).max().unwrap_or(0);
    let mut picked: Vec<(usize, usize)> = coords
        .into_iter()
        .filter_map(|(v, r, c)| match side {
            GridSide::Left if c == 1 => Some((r, v)),
            GridSide::Right if c == n => Some((r, v)),
            GridSide::Top if r == 1 => Some((c, v)),
            GridSide::Bottom if r == n => Some((c, v)),
            _ => None,
        })
        .collect();
    picked.sort_unstable();
    Ok(picked.into_iter().map(|(_, v)| v).collect())
}

impl Generator {
    fn check_cap(&self, what: &str, needed: u128) -> Result<()> {
        if needed > self.cap_edges as u128 {
            Err(Error::SizeLimit {
                what: what.to_string(),
                needed,
                cap: self.cap_edges,
            })
        } else {
            Ok(())
        }
    }

    /// Tr(n): a triangle whose inner faces are refined `rounds` times by
    /// inserting a vertex joined to the three corners. Faces are refined in
    /// creation order, so vertex numbering is fixed.
    pub fn iterated_triangulation(&self, rounds: usize) -> Result<PlaneGraph> {
        let pow = 3u128.checked_pow(rounds as u32).unwrap_or(u128::MAX);
        let vertices = 3 + (pow - 1) / 2;
        self.check_cap("iterated triangulation", vertices.saturating_mul(3) - 6)?;
        let vertices = vertices as usize;

        let mut edges = vec![(0, 1), (1, 2), (0, 2)];
        let mut rank = vec![0; 3];
        let mut finished: Vec<Vec<usize>> = Vec::new();
        let mut current: Vec<[usize; 3]> = vec![[0, 1, 2]];
        for round in 1..=rounds {
            let mut next = Vec::with_capacity(current.len() * 3);
            for [a, b, c] in current {
                let v = rank.len();
                rank.push(round);
                edges.extend([(a, v), (b, v), (c, v)]);
                next.extend([[a, b, v], [b, c, v], [c, a, v]]);
            }
            current = next;
        }
        debug_assert_eq!(rank.len(), vertices);
        finished.push(vec![0, 2, 1]);
        finished.extend(current.into_iter().map(|f| f.to_vec()));
        Ok(PlaneGraph {
            graph: Graph::new(vertices, edges)?,
            faces: finished,
            outer: 0,
            rank: Some(rank),
        })
    }

    /// UOP(n): a triangle grown `n - 1` times by hanging a new vertex on every
    /// outer edge. Triangle vertices have rank 1, round-`i` vertices rank `i`.
    pub fn universal_outerplanar(&self, n: usize) -> Result<PlaneGraph> {
        if n == 0 {
            return Err(Error::InvalidParameter("UOP needs n >= 1".into()));
        }
        let vertices = 3u128
            .checked_mul(2u128.checked_pow(n as u32 - 1).unwrap_or(u128::MAX))
            .unwrap_or(u128::MAX);
        self.check_cap("universal outerplanar graph", vertices.saturating_mul(2) - 3)?;

        let mut edges = vec![(0, 1), (1, 2), (0, 2)];
        let mut rank = vec![1; 3];
        let mut faces = vec![vec![0, 1, 2]];
        let mut cycle = vec![0, 1, 2];
        for round in 2..=n {
            let mut next = Vec::with_capacity(cycle.len() * 2);
            for i in 0..cycle.len() {
                let (x, y) = (cycle[i], cycle[(i + 1) % cycle.len()]);
                let w = rank.len();
                rank.push(round);
                edges.extend([(x, w), (y, w)]);
                faces.push(vec![x, w, y]);
                next.extend([x, w]);
            }
            cycle = next;
        }
        let mut outer = cycle;
        outer.reverse();
        faces.push(outer);
        let outer_index = faces.len() - 1;
        Ok(PlaneGraph {
            graph: Graph::new(rank.len(), edges)?,
            faces,
            outer: outer_index,
            rank: Some(rank),
        })
    }

    /// Gr(n) on `[n] x [n]`: horizontal, vertical, and `(k,j)(k+1,j+1)`
    /// diagonal edges. Vertex `(k,j)` has index `(k-1) n + (j-1)` and label
    /// `"(k,j)"`.
    pub fn triangulated_grid(&self, n: usize) -> Result<PlaneGraph> {
        if n < 2 {
            return Err(Error::InvalidParameter("grid needs n >= 2".into()));
        }
        let nn = n as u128;
        self.check_cap("triangulated grid", 2 * nn * (nn - 1) + (nn - 1) * (nn - 1))?;
        let id = |r: usize, c: usize| (r - 1) * n + (c - 1);
        let mut edges = Vec::new();
        let mut faces = Vec::new();
        for r in 1..=n {
            for c in 1..=n {
                if c < n {
                    edges.push((id(r, c), id(r, c + 1)));
                }
                if r < n {
                    edges.push((id(r, c), id(r + 1, c)));
                }
                if r < n && c < n {
                    edges.push((id(r, c), id(r + 1, c + 1)));
                    faces.push(vec![id(r, c), id(r, c + 1), id(r + 1, c + 1)]);
                    faces.push(vec![id(r, c), id(r + 1, c + 1), id(r + 1, c)]);
                }
            }
        }
        // clockwise boundary: top row, right column, bottom row, left column
        let mut outer: Vec<usize> = (1..=n).map(|c| id(1, c)).collect();
        outer.extend((2..=n).map(|r| id(r, n)));
        outer.extend((1..n).rev().map(|c| id(n, c)));
        outer.extend((2..n).rev().map(|r| id(r, 1)));
        outer.reverse();
        faces.push(outer);
        let labels = (1..=n)
            .flat_map(|r| (1..=n).map(move |c| (r, c)))
            .map(|(r, c)| (id(r, c), grid_label(r, c)))
            .collect();
        let outer_index = faces.len() - 1;
        Ok(PlaneGraph {
            graph: Graph::new(n * n, edges)?.with_labels(labels)?,
            faces,
            outer: outer_index,
            rank: None,
        })
    }

    pub fn perfect_kary_tree(&self, k: usize, radius: usize) -> Result<TreeSpec> {
        if k < 2 {
            return Err(Error::InvalidParameter("k-ary tree needs k >= 2".into()));
        }
        let kk = k as u128;
        let size = kk
            .checked_pow(radius as u32 + 1)
            .map(|p| (p - 1) / (kk - 1))
            .unwrap_or(u128::MAX);
        self.check_cap("perfect k-ary tree", size - 1)?;
        Ok(layered_tree(&vec![k; radius]))
    }

    /// Starts from a triangle and inserts `n - 3` vertices, each into an inner
    /// face chosen uniformly at random.
    pub fn random_stacked_triangulation(&self, n: usize, seed: u64) -> Result<PlaneGraph> {
        if n < 3 {
            return Err(Error::InvalidParameter("stacked triangulation needs n >= 3".into()));
        }
        self.check_cap("stacked triangulation", 3 * n as u128 - 6)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = vec![(0, 1), (1, 2), (0, 2)];
        let mut inner: Vec<[usize; 3]> = vec![[0, 1, 2]];
        let mut rank = vec![0; 3];
        for v in 3..n {
            let i = rng.gen_range(0..inner.len());
            let [a, b, c] = inner[i];
            rank.push(v - 2);
            edges.extend([(a, v), (b, v), (c, v)]);
            inner[i] = [a, b, v];
            inner.push([b, c, v]);
            inner.push([c, a, v]);
        }
        let mut faces = vec![vec![0, 2, 1]];
        faces.extend(inner.into_iter().map(|f| f.to_vec()));
        Ok(PlaneGraph {
            graph: Graph::new(n, edges)?,
            faces,
            outer: 0,
            rank: Some(rank),
        })
    }

    pub fn complete_graph(&self, n: usize) -> Result<Graph> {
        if n == 0 {
            return Err(Error::InvalidParameter("complete graph needs n >= 1".into()));
        }
        self.check_cap("complete graph", (n as u128) * (n as u128 - 1) / 2)?;
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
    }
}

/// Tree where every vertex at depth `d` has `children[d]` children.
fn layered_tree(children: &[usize]) -> TreeSpec {
    let mut parent = vec![None];
    let mut level = vec![0usize];
    for &c in children {
        let mut next = Vec::with_capacity(level.len() * c);
        for &p in &level {
            for _ in 0..c {
                next.push(parent.len());
                parent.push(Some(p));
            }
        }
        level = next;
    }
    TreeSpec::from_parents(parent, 0)
}

pub fn iterated_triangulation(rounds: usize) -> Result<PlaneGraph> {
    Generator::default().iterated_triangulation(rounds)
}

pub fn universal_outerplanar(n: usize) -> Result<PlaneGraph> {
    Generator::default().universal_outerplanar(n)
}

pub fn triangulated_grid(n: usize) -> Result<PlaneGraph> {
    Generator::default().triangulated_grid(n)
}

pub fn perfect_kary_tree(k: usize, radius: usize) -> Result<TreeSpec> {
    Generator::default().perfect_kary_tree(k, radius)
}

pub fn random_stacked_triangulation(n: usize, seed: u64) -> Result<PlaneGraph> {
    Generator::default().random_stacked_triangulation(n, seed)
}

pub fn complete_graph(n: usize) -> Result<Graph> {
    Generator::default().complete_graph(n)
}

/// Index of spine vertex `s_i` (1-based) in a fish; `x = 0`, `y = 1`.
pub fn fish_spine(i: usize) -> usize {
    i + 1
}

/// Fish on anchors `x = 0`, `y = 1` with spine `s_1..s_k` (`s_i = i + 1`).
///
/// Faces: `x s_i s_{i+1}` and `y s_{i+1} s_i` along the spine, `x y s_1`
/// closing the left end, and the outer face `x s_k y` on the right.
pub fn fish(k: usize) -> Result<PlaneGraph> {
    if k == 0 {
        return Err(Error::InvalidParameter("fish needs k >= 1".into()));
    }
    let (x, y) = (0, 1);
    let s = fish_spine;
    let mut edges = vec![(x, y)];
    let mut faces = Vec::new();
    for i in 1..=k {
        edges.extend([(x, s(i)), (y, s(i))]);
        if i < k {
            edges.push((s(i), s(i + 1)));
            faces.push(vec![x, s(i), s(i + 1)]);
            faces.push(vec![y, s(i + 1), s(i)]);
        }
    }
    faces.push(vec![x, y, s(1)]);
    faces.push(vec![x, s(k), y]);
    let mut labels = BTreeMap::from([(x, "x".to_string()), (y, "y".to_string())]);
    labels.extend((1..=k).map(|i| (s(i), format!("s{i}"))));
    let outer = faces.len() - 1;
    Ok(PlaneGraph {
        graph: Graph::new(k + 2, edges)?.with_labels(labels)?,
        faces,
        outer,
        rank: None,
    })
}

/// Spine length of the C4 witness.
pub const C4_WITNESS_SPINE: usize = 15;
/// Faces of the spine fish bounded by two spine vertices: `x s_i s_{i+1}` and
/// `y s_{i+1} s_i` for `i = 1..14`.
pub const C4_WITNESS_SLOTS: usize = 2 * (C4_WITNESS_SPINE - 1);

/// Fish with 15 spine vertices plus a degree-3 vertex inside every face
/// bounded by two spine vertices. 45 vertices, 129 edges.
///
/// Added vertex `j` (0-based, vertex id `17 + j` when nothing is omitted)
/// sits on spine edge `s_i s_{i+1}` with `i = j / 2 + 1`, on the `x` side for
/// even `j` and the `y` side for odd `j`; its label is `z{i}x` or `z{i}y`.
pub fn c4_witness() -> PlaneGraph {
    c4_witness_with(&[])
}

/// The C4 witness with the listed added vertices (0-based slots) left out.
pub fn c4_witness_with(omit: &[usize]) -> PlaneGraph {
    let slots = (0..C4_WITNESS_SLOTS)
        .filter(|j| !omit.contains(j))
        .map(|j| (j / 2 + 1, j % 2))
        .collect::<Vec<_>>();
    fish_with_face_vertices(&slots)
}

/// One added vertex per spine edge, alternating sides: `x` side for odd `i`,
/// `y` side for even `i`. 31 vertices, 87 edges. Every such one-per-edge
/// choice admits a 2-coloring without a monochromatic C4.
pub fn c4_witness_alternating() -> PlaneGraph {
    let slots = (1..C4_WITNESS_SPINE)
        .map(|i| (i, if i % 2 == 1 { 0 } else { 1 }))
        .collect::<Vec<_>>();
    fish_with_face_vertices(&slots)
}

/// Fish(15) with a degree-3 vertex in face `anchor s_i s_{i+1}` for every
/// `(i, anchor)` in `slots`, `anchor` being `0` for `x` and `1` for `y`.
fn fish_with_face_vertices(slots: &[(usize, usize)]) -> PlaneGraph {
    let k = C4_WITNESS_SPINE;
    let base = fish(k).expect("fixed spine length");
    let mut edges: Vec<(usize, usize)> = base.graph.edges().to_vec();
    let mut labels = base.graph.labels().clone();
    let mut faces = Vec::new();
    let mut next = k + 2;
    let mut host_face_of = BTreeMap::new();
    for &(i, anchor) in slots {
        host_face_of.insert((anchor, fish_spine(i)), next);
        let side = if anchor == 0 { "x" } else { "y" };
        labels.insert(next, format!("z{i}{side}"));
        next += 1;
    }
    for face in &base.faces {
        let key = (face[0], face[1].min(face[2]));
        let on_spine = face.len() == 3 && face[0] <= 1 && face[1] > 1 && face[2] > 1;
        match host_face_of.get(&key) {
            Some(&z) if on_spine => {
                let [a, b, c] = [face[0], face[1], face[2]];
                edges.extend([(a, z), (b, z), (c, z)]);
                faces.extend([vec![a, b, z], vec![b, c, z], vec![c, a, z]]);
            }
            _ => faces.push(face.clone()),
        }
    }
    let outer = faces
        .iter()
        .position(|f| *f == base.faces[base.outer])
        .expect("outer face kept");
    PlaneGraph {
        graph: Graph::new(next, edges)
            .and_then(|g| g.with_labels(labels))
            .expect("witness is simple"),
        faces,
        outer,
        rank: None,
    }
}

/// Path on `path_vertices` vertices and a star with `star_edges` leaves
/// sharing the path vertex at position `ceil(p/2)` as the star's center.
pub fn generalized_broom(path_vertices: usize, star_edges: usize) -> Result<TreeSpec> {
    if path_vertices == 0 {
        return Err(Error::InvalidParameter("broom needs at least one path vertex".into()));
    }
    let p = path_vertices;
    let center = p.div_ceil(2) - 1;
    // BFS from the center so that parents precede children
    let mut order = vec![center];
    let mut parent_old: BTreeMap<usize, usize> = BTreeMap::new();
    for d in 1..p {
        if center >= d {
            parent_old.insert(center - d, center - d + 1);
            order.push(center - d);
        }
        if center + d < p {
            parent_old.insert(center + d, center + d - 1);
            order.push(center + d);
        }
    }
    let mut new_of = vec![0; p];
    for (i, &v) in order.iter().enumerate() {
        new_of[v] = i;
    }
    let mut parent = vec![None; p];
    for (&v, &pv) in &parent_old {
        parent[new_of[v]] = Some(new_of[pv]);
    }
    parent.extend(std::iter::repeat_n(Some(0), star_edges));
    Ok(TreeSpec::from_parents(parent, 0))
}

pub fn paper_tree(id: PaperTree) -> TreeSpec {
    match id {
        PaperTree::T1 => layered_tree(&[5, 4, 4]),
        PaperTree::T2 => layered_tree(&[4, 4]),
        PaperTree::T3 => layered_tree(&[3, 2]),
        PaperTree::T4 => TreeSpec::from_parents(
            vec![None, Some(0), Some(0), Some(0), Some(1), Some(1)],
            0,
        ),
    }
}

pub fn path_graph(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter("path needs n >= 1".into()));
    }
    Graph::new(n, (1..n).map(|v| (v - 1, v)))
}

pub fn cycle_graph(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter("cycle needs n >= 3".into()));
    }
    Graph::new(n, (0..n).map(|v| (v, (v + 1) % n)))
}

pub fn star_graph(leaves: usize) -> Graph {
    Graph::new(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star is simple")
}
