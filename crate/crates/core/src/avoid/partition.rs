//! Vertex partitions into linear forests.
//!
//! Planar graphs: three parts, by recursion on near-triangulations whose outer
//! cycle is split into two induced paths `P` and `Q` carrying colors `a` and
//! `b`. A chord between `P` and `Q` splits the region in two. Without chords,
//! a shortest path `R` through the interior from the apex of the face on the
//! `P`→`Q` boundary edge to the apex of the face on the `Q`→`P` edge gets the
//! third color, and the two sides recurse with `(P, R)` and `(R, Q)`. Interior
//! vertices colored like a boundary path are never adjacent to it, so every
//! color class stays a disjoint union of induced paths.
//!
//! Outerplanar graphs: the parity of breadth-first layers. Each layer induces
//! a linear forest since a vertex of degree three or a cycle inside a layer,
//! together with the contracted earlier layers, would give a K_{2,3} or K_4
//! minor.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::detect::paths::bfs_path;
use crate::error::{Error, Result};
use crate::graph::{edge_key, is_linear_forest, Edge, Graph, PlaneGraph, VertexPartition};

const SMALL_SEARCH_BUDGET: u64 = 2_000_000;

struct Triangulation {
    faces: Vec<[usize; 3]>,
    edge_faces: HashMap<Edge, Vec<usize>>,
    adj: Vec<Vec<usize>>,
}

impl Triangulation {
    /// Stellates every non-triangular face; returns the structure and the
    /// index of the triangle used as outer face.
    fn build(pg: &PlaneGraph) -> Result<(Self, usize)> {
        let mut n = pg.graph.n();
        let mut faces = Vec::new();
        let mut outer = None;
        for (i, f) in pg.faces.iter().enumerate() {
            let distinct: HashSet<usize> = f.iter().copied().collect();
            if f.len() < 3 || distinct.len() != f.len() {
                return Err(Error::Precondition(format!(
                    "face {i} is not a simple cycle"
                )));
            }
            if i == pg.outer {
                outer = Some(faces.len());
            }
            if f.len() == 3 {
                faces.push([f[0], f[1], f[2]]);
            } else {
                let s = n;
                n += 1;
                for j in 0..f.len() {
                    faces.push([f[j], f[(j + 1) % f.len()], s]);
                }
            }
        }
        let outer = outer.ok_or(Error::FacesMissing)?;
        let mut edge_faces: HashMap<Edge, Vec<usize>> = HashMap::new();
        let mut adj = vec![Vec::new(); n];
        for (fi, f) in faces.iter().enumerate() {
            for j in 0..3 {
                let (u, v) = (f[j], f[(j + 1) % 3]);
                let list = edge_faces.entry(edge_key(u, v)).or_default();
                if list.is_empty() {
                    adj[u].push(v);
                    adj[v].push(u);
                }
                list.push(fi);
            }
        }
        Ok((
            Triangulation {
                faces,
                edge_faces,
                adj,
            },
            outer,
        ))
    }

    fn face_on(&self, u: usize, v: usize, owner: &[usize], id: usize) -> Option<usize> {
        self.edge_faces
            .get(&edge_key(u, v))?
            .iter()
            .copied()
            .find(|&f| owner[f] == id)
    }

    /// Faces of region `id` reachable from `start` without crossing `barrier`.
    fn flood(&self, start: usize, owner: &[usize], id: usize, barrier: &HashSet<Edge>) -> HashSet<usize> {
        let mut seen = HashSet::from([start]);
        let mut stack = vec![start];
        while let Some(f) = stack.pop() {
            let t = self.faces[f];
            for j in 0..3 {
                let e = edge_key(t[j], t[(j + 1) % 3]);
                if barrier.contains(&e) {
                    continue;
                }
                for &g in &self.edge_faces[&e] {
                    if owner[g] == id && seen.insert(g) {
                        stack.push(g);
                    }
                }
            }
        }
        seen
    }
}

struct Region {
    faces: Vec<usize>,
    p: Vec<usize>,
    q: Vec<usize>,
    /// Colors of `P`, of `Q`, and the free color.
    colors: [usize; 3],
}

fn recursive_partition(tri: &Triangulation, outer: usize) -> Result<Vec<usize>> {
    let n = tri.adj.len();
    let mut color = vec![usize::MAX; n];
    let mut owner = vec![0usize; tri.faces.len()];
    owner[outer] = usize::MAX;
    let mut next_id = 1;
    let [x, y, z] = tri.faces[outer];
    let mut work = vec![Region {
        faces: (0..tri.faces.len()).filter(|&f| f != outer).collect(),
        p: vec![x, y],
        q: vec![z],
        colors: [0, 1, 2],
    }];

    let mut assign = |faces: &[usize], owner: &mut [usize]| {
        let id = next_id;
        next_id += 1;
        for &f in faces {
            owner[f] = id;
        }
    };

    while let Some(r) = work.pop() {
        let [a, b, c] = r.colors;
        for &v in &r.p {
            color[v] = a;
        }
        for &v in &r.q {
            color[v] = b;
        }
        if r.faces.is_empty() {
            continue;
        }
        if r.p.len() + r.q.len() < 3 {
            return Err(Error::Internal("region with faces bounded by a single edge".into()));
        }
        let id = owner[r.faces[0]];
        let (k, l) = (r.p.len(), r.q.len());
        let (pk, q1, ql, p1) = (r.p[k - 1], r.q[0], r.q[l - 1], r.p[0]);
        let q_pos: HashMap<usize, usize> = r.q.iter().enumerate().map(|(j, &v)| (v, j)).collect();

        let chord = r.p.iter().enumerate().find_map(|(i, &p)| {
            tri.adj[p].iter().find_map(|x| {
                let &j = q_pos.get(x)?;
                let boundary = (i == k - 1 && j == 0) || (i == 0 && j == l - 1);
                (!boundary && tri.face_on(p, *x, &owner, id).is_some()).then_some((i, j))
            })
        });

        if let Some((i, j)) = chord {
            let start = tri
                .face_on(pk, q1, &owner, id)
                .ok_or_else(|| Error::Internal("boundary edge without face".into()))?;
            let barrier = HashSet::from([edge_key(r.p[i], r.q[j])]);
            let side = tri.flood(start, &owner, id, &barrier);
            let (g1, g2): (Vec<usize>, Vec<usize>) = r.faces.iter().partition(|f| side.contains(f));
            assign(&g1, &mut owner);
            assign(&g2, &mut owner);
            work.push(Region {
                faces: g1,
                p: r.p[i..].to_vec(),
                q: r.q[..=j].to_vec(),
                colors: r.colors,
            });
            work.push(Region {
                faces: g2,
                p: r.p[..=i].to_vec(),
                q: r.q[j..].to_vec(),
                colors: r.colors,
            });
            continue;
        }

        let boundary: HashSet<usize> = r.p.iter().chain(&r.q).copied().collect();
        let mut interior = vec![false; n];
        let mut any_interior = false;
        for &f in &r.faces {
            for v in tri.faces[f] {
                if !boundary.contains(&v) {
                    interior[v] = true;
                    any_interior = true;
                }
            }
        }
        if !any_interior {
            if r.faces.len() != 1 {
                return Err(Error::Internal("chordless region without interior is not a face".into()));
            }
            continue;
        }

        let apex = |u: usize, v: usize| -> Result<(usize, usize)> {
            let f = tri
                .face_on(u, v, &owner, id)
                .ok_or_else(|| Error::Internal("boundary edge without face".into()))?;
            let w = tri.faces[f]
                .into_iter()
                .find(|&x| x != u && x != v)
                .expect("triangle has a third vertex");
            Ok((f, w))
        };
        let (t1, w) = apex(pk, q1)?;
        let (t2, w2) = apex(ql, p1)?;
        let path = bfs_path(&tri.adj, &[w], &[w2], Some(&interior))
            .ok_or_else(|| Error::Internal("interior is disconnected".into()))?;
        for &v in &path {
            color[v] = c;
        }
        let mut barrier: HashSet<Edge> = path.windows(2).map(|e| edge_key(e[0], e[1])).collect();
        barrier.insert(edge_key(pk, w));
        barrier.insert(edge_key(p1, w2));
        let q_side = tri.flood(t1, &owner, id, &barrier);
        let g1: Vec<usize> = r.faces.iter().copied().filter(|f| !q_side.contains(f)).collect();
        let g2: Vec<usize> = r
            .faces
            .iter()
            .copied()
            .filter(|&f| q_side.contains(&f) && f != t1 && f != t2)
            .collect();
        owner[t1] = usize::MAX;
        owner[t2] = usize::MAX;
        assign(&g1, &mut owner);
        assign(&g2, &mut owner);
        let mut rev = path.clone();
        rev.reverse();
        work.push(Region {
            faces: g1,
            p: r.p,
            q: path,
            colors: [a, c, b],
        });
        work.push(Region {
            faces: g2,
            p: rev,
            q: r.q,
            colors: [c, b, a],
        });
    }
    Ok(color)
}

fn parts_from_colors(color: &[usize], n: usize, count: usize) -> VertexPartition {
    let mut parts = vec![Vec::new(); count];
    for v in 0..n {
        parts[color[v]].push(v);
    }
    VertexPartition { parts }
}

fn checked(g: &Graph, p: VertexPartition) -> Result<VertexPartition> {
    p.validate(g, true)
        .map_err(|e| Error::Internal(format!("partition check failed: {e}")))?;
    Ok(p)
}

/// Breadth-first layers split by parity, rooted at the highest vertex of each
/// component. Returns `None` if some part is not a linear forest.
fn layer_parity(g: &Graph) -> Option<VertexPartition> {
    let n = g.n();
    let mut depth = vec![usize::MAX; n];
    for root in (0..n).rev() {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if depth[w] == usize::MAX {
                    depth[w] = depth[u] + 1;
                    queue.push_back(w);
                }
            }
        }
    }
    let color: Vec<usize> = depth.iter().map(|d| (d + 1) % 2).collect();
    let p = parts_from_colors(&color, n, 2);
    p.validate(g, true).is_ok().then_some(p)
}

/// Backtracking over part assignments for small graphs without an embedding.
fn small_search(g: &Graph, parts: usize) -> Option<VertexPartition> {
    let n = g.n();
    let mut color = vec![usize::MAX; n];
    let mut nodes = 0u64;

    fn fits(g: &Graph, color: &[usize], v: usize) -> bool {
        let c = color[v];
        let same: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| color[w] == c).collect();
        if same.len() > 2 || same.iter().any(|&w| g.neighbors(w).iter().filter(|&&x| color[x] == c).count() > 2) {
            return false;
        }
        // a cycle through v would need two same-colored neighbors already joined
        if same.len() == 2 {
            let (s, t) = (same[0], same[1]);
            let mut prev = v;
            let mut cur = s;
            loop {
                if cur == t {
                    return false;
                }
                let next = g
                    .neighbors(cur)
                    .iter()
                    .copied()
                    .find(|&x| color[x] == c && x != prev && x != v);
                match next {
                    Some(x) => {
                        prev = cur;
                        cur = x;
                    }
                    None => return true,
                }
            }
        }
        true
    }

    fn go(g: &Graph, color: &mut [usize], v: usize, parts: usize, nodes: &mut u64) -> bool {
        if v == g.n() {
            return true;
        }
        for c in 0..parts {
            *nodes += 1;
            if *nodes > SMALL_SEARCH_BUDGET {
                return false;
            }
            color[v] = c;
            if fits(g, color, v) && go(g, color, v + 1, parts, nodes) {
                return true;
            }
        }
        color[v] = usize::MAX;
        false
    }

    go(g, &mut color, 0, parts, &mut nodes).then(|| parts_from_colors(&color, n, parts))
}

/// Three parts, each inducing a linear forest.
///
/// Uses the face structure when present. Graphs without an embedding are
/// handled when they are linear forests, split by layer parity, or small
/// enough for a bounded search.
pub fn poh_linear_forest_partition(pg: &PlaneGraph) -> Result<VertexPartition> {
    let g = &pg.graph;
    let n = g.n();
    let all: Vec<usize> = (0..n).collect();
    if is_linear_forest(g, &all)? {
        return Ok(VertexPartition {
            parts: vec![all, Vec::new(), Vec::new()],
        });
    }
    if pg.has_faces() {
        let (tri, outer) = Triangulation::build(pg)?;
        let color = recursive_partition(&tri, outer)?;
        return checked(g, parts_from_colors(&color, n, 3));
    }
    if let Some(mut p) = layer_parity(g) {
        p.parts.push(Vec::new());
        return Ok(p);
    }
    small_search(g, 3).ok_or(Error::FacesMissing)
}

/// Two parts, each inducing a linear forest, for outerplanar input.
pub fn outerplanar_linear_forest_partition(pg: &PlaneGraph) -> Result<VertexPartition> {
    let g = &pg.graph;
    let all: Vec<usize> = (0..g.n()).collect();
    if is_linear_forest(g, &all)? {
        return Ok(VertexPartition {
            parts: vec![all, Vec::new()],
        });
    }
    if pg.has_faces() {
        let outer: HashSet<usize> = pg.outer_face()?.iter().copied().collect();
        if let Some(v) = (0..g.n()).find(|v| !outer.contains(v) && g.degree(*v) > 0) {
            return Err(Error::NotOuterplanar(format!("vertex {v} is not on the outer face")));
        }
    }
    layer_parity(g).ok_or_else(|| {
        Error::NotOuterplanar("breadth-first layers do not induce linear forests".into())
    })
}
