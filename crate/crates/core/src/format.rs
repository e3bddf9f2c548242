//! JSON file formats for graphs and colorings.
//!
//! Graph: `{"n": 4, "edges": [[0,1],...], "labels": {"0": "x"}, "faces": [[0,1,2],...], "outer": 0, "rank": {"0": 0}}`
//! with `labels`, `faces`, `outer` and `rank` optional.
//!
//! Coloring: `{"k": 2, "colors": {"0-1": 0, ...}}`, keys `"u-v"` with `u < v`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{edge_key, EdgeColoring, Graph, PlaneGraph};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphFile {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub labels: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub faces: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub outer: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<BTreeMap<String, usize>>,
}

fn parse_vertex(key: &str, n: usize) -> Result<usize> {
    let v: usize = key
        .parse()
        .map_err(|_| Error::InvalidParameter(format!("bad vertex key {key:?}")))?;
    if v >= n {
        return Err(Error::VertexOutOfRange { vertex: v, n });
    }
    Ok(v)
}

impl GraphFile {
    pub fn from_plane(pg: &PlaneGraph) -> Self {
        let g = &pg.graph;
        GraphFile {
            n: g.n(),
            edges: g.edges().iter().map(|&(u, v)| [u, v]).collect(),
            labels: g
                .labels()
                .iter()
                .map(|(v, l)| (v.to_string(), l.clone()))
                .collect(),
            faces: pg.faces.clone(),
            outer: pg.has_faces().then_some(pg.outer),
            rank: pg.rank.as_ref().map(|r| {
                r.iter()
                    .enumerate()
                    .map(|(v, &x)| (v.to_string(), x))
                    .collect()
            }),
        }
    }

    pub fn from_graph(g: &Graph) -> Self {
        Self::from_plane(&PlaneGraph::bare(g.clone()))
    }

    pub fn to_plane(&self) -> Result<PlaneGraph> {
        let mut labels = BTreeMap::new();
        for (k, l) in &self.labels {
            labels.insert(parse_vertex(k, self.n)?, l.clone());
        }
        let graph = Graph::new(self.n, self.edges.iter().map(|&[u, v]| (u, v)))?
            .with_labels(labels)?;
        let rank = match &self.rank {
            None => None,
            Some(map) => {
                let mut r = vec![None; self.n];
                for (k, &x) in map {
                    r[parse_vertex(k, self.n)?] = Some(x);
                }
                Some(
                    r.into_iter()
                        .enumerate()
                        .map(|(v, x)| {
                            x.ok_or_else(|| Error::Metadata(format!("rank missing for vertex {v}")))
                        })
                        .collect::<Result<Vec<_>>>()?,
                )
            }
        };
        let pg = PlaneGraph {
            graph,
            faces: self.faces.clone(),
            outer: self.outer.unwrap_or(0),
            rank,
        };
        pg.validate()?;
        Ok(pg)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringFile {
    pub k: usize,
    pub colors: BTreeMap<String, usize>,
}

pub fn edge_name(u: usize, v: usize) -> String {
    let (a, b) = edge_key(u, v);
    format!("{a}-{b}")
}

pub fn parse_edge_name(key: &str) -> Result<(usize, usize)> {
    let bad = || Error::InvalidParameter(format!("bad edge key {key:?}, expected \"u-v\""));
    let (a, b) = key.split_once('-').ok_or_else(bad)?;
    let u: usize = a.trim().parse().map_err(|_| bad())?;
    let v: usize = b.trim().parse().map_err(|_| bad())?;
    if u >= v {
        return Err(bad());
    }
    Ok((u, v))
}

impl ColoringFile {
    pub fn from_coloring(c: &EdgeColoring) -> Self {
        ColoringFile {
            k: c.k,
            colors: c
                .colors
                .iter()
                .map(|(&(u, v), &col)| (edge_name(u, v), col))
                .collect(),
        }
    }

    pub fn to_coloring(&self) -> Result<EdgeColoring> {
        let mut c = EdgeColoring::new(self.k);
        for (key, &col) in &self.colors {
            let (u, v) = parse_edge_name(key)?;
            c.colors.insert((u, v), col);
        }
        Ok(c)
    }
}

pub fn read_graph(text: &str) -> Result<PlaneGraph> {
    serde_json::from_str::<GraphFile>(text)?.to_plane()
}

pub fn write_graph(pg: &PlaneGraph) -> Result<String> {
    Ok(serde_json::to_string_pretty(&GraphFile::from_plane(pg))?)
}

pub fn read_coloring(text: &str) -> Result<EdgeColoring> {
    serde_json::from_str::<ColoringFile>(text)?.to_coloring()
}

pub fn write_coloring(c: &EdgeColoring) -> Result<String> {
    Ok(serde_json::to_string_pretty(&ColoringFile::from_coloring(c))?)
}
