//! Deciding `G ->_k H`.
//!
//! [`decide_arrows`] runs a counterexample-guided loop: the SAT solver
//! proposes a k-coloring (one variable per edge and color, exactly one color
//! per edge), the subgraph search looks for monochromatic copies of `H`, and
//! every copy found is forbidden in every color by a blocking clause. An
//! unsatisfiable clause set means every coloring has a monochromatic copy; a
//! proposal with no copies is returned as an avoidance certificate.
//! [`exhaustive_arrows`] enumerates colorings directly and serves as ground
//! truth on small hosts.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::detect::search::{enumerate_copies, find_copies, find_mono_copy, HostView, Pattern, SearchOutcome};
use crate::detect::enumerate_c4s;
use crate::error::{Error, Result};
use crate::format::ColoringFile;
use crate::graph::{coloring_report, EdgeColoring, Embedding, Graph};
use crate::sat::{Lit, SolveResult, Solver};

pub const MAX_COLORS: usize = 8;
pub const EXHAUSTIVE_CAP: u128 = 1 << 24;
pub const DEFAULT_BUDGET: u64 = 200_000_000;
/// Copies blocked per color and round.
const COPIES_PER_ROUND: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    Arrows,
    NotArrows,
    Undecided,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exhaustive,
    Cegar,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    /// Detector (or enumeration) nodes.
    pub nodes: u64,
    pub conflicts: u64,
    pub embeddings_blocked: u64,
    pub rounds: u64,
    /// The clause set was refuted by a conflict at decision level zero.
    pub refuted_at_level_zero: bool,
    /// Portfolio worker that produced the verdict.
    pub worker: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub outcome: Outcome,
    pub certificate: Option<EdgeColoring>,
    pub stats: Stats,
    pub method: Method,
}

/// JSON form of a [`Verdict`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictFile {
    pub outcome: Outcome,
    pub method: Method,
    pub k: usize,
    pub stats: Stats,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<ColoringFile>,
}

impl Verdict {
    pub fn to_file(&self, k: usize) -> VerdictFile {
        VerdictFile {
            outcome: self.outcome,
            method: self.method,
            k,
            stats: self.stats.clone(),
            certificate: self.certificate.as_ref().map(ColoringFile::from_coloring),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ArrowsConfig {
    /// Solver conflicts plus detector nodes.
    pub budget: u64,
    /// Portfolio workers; 1 is deterministic.
    pub jobs: usize,
    pub seed: u64,
}

impl Default for ArrowsConfig {
    fn default() -> Self {
        ArrowsConfig {
            budget: DEFAULT_BUDGET,
            jobs: 1,
            seed: 0,
        }
    }
}

fn check_args(h: &Graph, k: usize) -> Result<()> {
    if !(2..=MAX_COLORS).contains(&k) {
        return Err(Error::InvalidParameter(format!("k must be in 2..={MAX_COLORS}, got {k}")));
    }
    if h.m() == 0 {
        return Err(Error::InvalidParameter("pattern has no edges".into()));
    }
    Ok(())
}

fn is_c4(h: &Graph) -> bool {
    h.n() == 4 && h.m() == 4 && (0..4).all(|v| h.degree(v) == 2)
}

pub fn decide_arrows(g: &Graph, h: &Graph, k: usize, cfg: &ArrowsConfig) -> Result<Verdict> {
    check_args(h, k)?;
    let start = Instant::now();
    let pattern = Pattern::new(h);
    let jobs = cfg.jobs.max(1);
    let mut verdict = if jobs == 1 {
        cegar(g, &pattern, k, cfg.budget, cfg.seed, None)
    } else {
        let stop = AtomicBool::new(false);
        let results: Vec<Verdict> = std::thread::scope(|s| {
            let handles: Vec<_> = (0..jobs)
                .map(|w| {
                    let (stop, pattern) = (&stop, &pattern);
                    s.spawn(move || {
                        let mut v = cegar(g, pattern, k, cfg.budget, cfg.seed.wrapping_add(w as u64), Some(stop));
                        v.stats.worker = w;
                        if v.outcome != Outcome::Undecided {
                            stop.store(true, Ordering::Relaxed);
                        }
                        v
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        });
        results
            .into_iter()
            .find(|v| v.outcome != Outcome::Undecided)
            .unwrap_or_else(|| Verdict {
                outcome: Outcome::Undecided,
                certificate: None,
                stats: Stats::default(),
                method: Method::Cegar,
            })
    };
    if let Some(c) = &verdict.certificate {
        // re-checked here whichever worker produced it
        match verify_certificate(g, h, k, c, cfg.budget)? {
            CertificateCheck::Valid => {}
            CertificateCheck::Invalid { .. } => {
                return Err(Error::Internal("engine produced an invalid certificate".into()));
            }
        }
    }
    verdict.stats.wall_ms = Some(start.elapsed().as_millis() as u64);
    Ok(verdict)
}

fn var(e: usize, color: usize, k: usize) -> u32 {
    (e * k + color) as u32
}

fn cegar(g: &Graph, pattern: &Pattern, k: usize, budget: u64, seed: u64, stop: Option<&AtomicBool>) -> Verdict {
    let h = pattern.graph();
    let m = g.m();
    let mut stats = Stats::default();
    let finish = |outcome, certificate, stats| Verdict {
        outcome,
        certificate,
        stats,
        method: Method::Cegar,
    };

    let mut solver = Solver::new(seed);
    for _ in 0..m * k {
        solver.new_var();
    }
    let mut ok = true;
    for e in 0..m {
        let all: Vec<Lit> = (0..k).map(|c| Lit::pos(var(e, c, k))).collect();
        ok &= solver.add_clause(&all);
        for a in 0..k {
            for b in a + 1..k {
                ok &= solver.add_clause(&[Lit::neg(var(e, a, k)), Lit::neg(var(e, b, k))]);
            }
        }
    }
    if m > 0 {
        ok &= solver.add_clause(&[Lit::pos(var(0, 0, k))]);
    }
    let block = |solver: &mut Solver, edges: &[usize]| -> bool {
        let mut ok = true;
        for c in 0..k {
            let clause: Vec<Lit> = edges.iter().map(|&e| Lit::neg(var(e, c, k))).collect();
            ok &= solver.add_clause(&clause);
        }
        ok
    };
    if is_c4(h) {
        for [a, b, c, d] in enumerate_c4s(g) {
            let ids: Vec<usize> = [(a, b), (b, c), (c, d), (d, a)]
                .iter()
                .map(|&(x, y)| g.edge_id(x, y).expect("cycle edge"))
                .collect();
            ok &= block(&mut solver, &ids);
            stats.embeddings_blocked += 1;
        }
    }

    loop {
        if !ok {
            stats.refuted_at_level_zero = true;
            stats.conflicts = solver.conflicts;
            return finish(Outcome::Arrows, None, stats);
        }
        let spent = solver.conflicts + stats.nodes;
        if spent >= budget || stop.is_some_and(|s| s.load(Ordering::Relaxed)) {
            stats.conflicts = solver.conflicts;
            return finish(Outcome::Undecided, None, stats);
        }
        stats.rounds += 1;
        match solver.solve_limited(Some(budget - spent), stop) {
            SolveResult::Unsat => {
                ok = false;
                continue;
            }
            SolveResult::Unknown => {
                stats.conflicts = solver.conflicts;
                return finish(Outcome::Undecided, None, stats);
            }
            SolveResult::Sat => {}
        }
        let model = solver.model();
        let per_edge: Vec<usize> = (0..m)
            .map(|e| (0..k).find(|&c| model[var(e, c, k) as usize]).expect("exactly one color"))
            .collect();
        let coloring = EdgeColoring::from_vec(g, k, &per_edge);

        let mut blocked_any = false;
        for color in 0..k {
            let remaining = budget.saturating_sub(solver.conflicts + stats.nodes);
            let host = HostView::color_class(g, &coloring, color);
            let r = find_copies(pattern, &host, COPIES_PER_ROUND, remaining);
            stats.nodes += r.stats.nodes;
            for emb in &r.copies {
                let ids: Vec<usize> = emb
                    .image_edges(h)
                    .into_iter()
                    .map(|(u, v)| g.edge_id(u, v).expect("image edge"))
                    .collect();
                ok &= block(&mut solver, &ids);
                stats.embeddings_blocked += 1;
                blocked_any = true;
            }
            if r.budget_exceeded && r.copies.is_empty() {
                stats.conflicts = solver.conflicts;
                return finish(Outcome::Undecided, None, stats);
            }
        }
        if !blocked_any {
            stats.conflicts = solver.conflicts;
            return finish(Outcome::NotArrows, Some(coloring), stats);
        }
    }
}

/// Exact verdict by enumerating colorings with edge 0 fixed to color 0,
/// pruning as soon as a copy of `h` becomes monochromatic.
pub fn exhaustive_arrows(g: &Graph, h: &Graph, k: usize) -> Result<Verdict> {
    check_args(h, k)?;
    let m = g.m();
    let needed = (k as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if needed > EXHAUSTIVE_CAP {
        return Err(Error::SizeLimit {
            what: format!("{k}^{m} colorings"),
            needed,
            cap: EXHAUSTIVE_CAP as usize,
        });
    }
    let start = Instant::now();
    let adj: Vec<Vec<usize>> = (0..g.n()).map(|v| g.neighbors(v).to_vec()).collect();
    // each copy as edge ids, filed under its largest edge id
    let mut closing: Vec<Vec<Vec<usize>>> = vec![Vec::new(); m];
    for copy in enumerate_copies(&adj, h) {
        let mut ids: Vec<usize> = copy.iter().map(|&(u, v)| g.edge_id(u, v).unwrap()).collect();
        ids.sort_unstable();
        closing[*ids.last().unwrap()].push(ids);
    }

    struct Dfs<'a> {
        closing: &'a [Vec<Vec<usize>>],
        colors: Vec<usize>,
        k: usize,
        nodes: u64,
    }
    impl Dfs<'_> {
        fn run(&mut self, e: usize) -> bool {
            if e == self.colors.len() {
                return true;
            }
            let range = if e == 0 { 0..1 } else { 0..self.k };
            for c in range {
                self.nodes += 1;
                self.colors[e] = c;
                let mono = self.closing[e]
                    .iter()
                    .any(|ids| ids.iter().all(|&f| self.colors[f] == c));
                if !mono && self.run(e + 1) {
                    return true;
                }
            }
            false
        }
    }
    let mut dfs = Dfs {
        closing: &closing,
        colors: vec![0; m],
        k,
        nodes: 0,
    };
    let found = dfs.run(0);
    let stats = Stats {
        nodes: dfs.nodes,
        wall_ms: Some(start.elapsed().as_millis() as u64),
        ..Stats::default()
    };
    Ok(Verdict {
        outcome: if found { Outcome::NotArrows } else { Outcome::Arrows },
        certificate: found.then(|| EdgeColoring::from_vec(g, k, &dfs.colors)),
        stats,
        method: Method::Exhaustive,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CertificateCheck {
    Valid,
    /// A monochromatic copy of the pattern.
    Invalid { color: usize, embedding: Embedding },
}

impl CertificateCheck {
    pub fn is_valid(&self) -> bool {
        *self == CertificateCheck::Valid
    }
}

/// Checks that no color class of `c` contains `h`. Running out of `budget`
/// in any class is an [`Error::Inconclusive`], never a pass.
pub fn verify_certificate(g: &Graph, h: &Graph, k: usize, c: &EdgeColoring, budget: u64) -> Result<CertificateCheck> {
    if c.k != k {
        return Err(Error::InvalidColoring(format!("coloring uses k={}, expected {k}", c.k)));
    }
    let report = coloring_report(g, c);
    if !report.is_valid() {
        return Err(Error::InvalidColoring(report.to_string()));
    }
    for color in 0..k {
        match find_mono_copy(g, c, color, h, budget).0 {
            SearchOutcome::NotFound => {}
            SearchOutcome::Found(embedding) => return Ok(CertificateCheck::Invalid { color, embedding }),
            SearchOutcome::BudgetExceeded => return Err(Error::Inconclusive(budget)),
        }
    }
    Ok(CertificateCheck::Valid)
}

/// The 2-coloring of K5 by two edge-disjoint 5-cycles: `i ~ i±1` red, `i ~ i±2` blue.
pub fn two_pentagons() -> EdgeColoring {
    let mut c = EdgeColoring::new(2);
    for i in 0..5 {
        c.set(i, (i + 1) % 5, 0);
        c.set(i, (i + 2) % 5, 1);
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete_graph, cycle_graph, path_graph, triangulated_grid};

    #[test]
    fn ramsey_anchors() {
        let k3 = complete_graph(3).unwrap();
        let k6 = complete_graph(6).unwrap();
        let k5 = complete_graph(5).unwrap();
        let cfg = ArrowsConfig::default();
        assert_eq!(decide_arrows(&k6, &k3, 2, &cfg).unwrap().outcome, Outcome::Arrows);
        assert_eq!(exhaustive_arrows(&k6, &k3, 2).unwrap().outcome, Outcome::Arrows);
        let v = decide_arrows(&k5, &k3, 2, &cfg).unwrap();
        assert_eq!(v.outcome, Outcome::NotArrows);
        let cert = v.certificate.unwrap();
        assert!(verify_certificate(&k5, &k3, 2, &cert, 1_000_000).unwrap().is_valid());
        assert!(verify_certificate(&k5, &k3, 2, &two_pentagons(), 1_000_000).unwrap().is_valid());
    }

    #[test]
    fn exhaustive_examples() {
        let p3 = path_graph(3).unwrap();
        let gr3 = triangulated_grid(3).unwrap().graph;
        assert_eq!(exhaustive_arrows(&gr3, &p3, 2).unwrap().outcome, Outcome::Arrows);
        let c4 = cycle_graph(4).unwrap();
        let v = exhaustive_arrows(&c4, &p3, 2).unwrap();
        assert_eq!(v.outcome, Outcome::NotArrows);
        assert!(verify_certificate(&c4, &p3, 2, &v.certificate.unwrap(), 1000).unwrap().is_valid());
        let k7 = complete_graph(7).unwrap();
        assert!(matches!(exhaustive_arrows(&k7, &p3, 3), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn verify_reports_copy() {
        let tri = complete_graph(3).unwrap();
        let red = EdgeColoring::uniform(&tri, 2, 0);
        let p3 = path_graph(3).unwrap();
        match verify_certificate(&tri, &p3, 2, &red, 1000).unwrap() {
            CertificateCheck::Invalid { color, embedding } => {
                assert_eq!(color, 0);
                assert!(embedding.is_valid(&tri, &p3, Some((&red, 0))));
            }
            CertificateCheck::Valid => panic!("all-red triangle has a red P3"),
        }
        assert!(verify_certificate(&tri, &p3, 3, &red, 1000).is_err());
    }

    #[test]
    fn tiny_budget_is_undecided() {
        let k6 = complete_graph(6).unwrap();
        let k3 = complete_graph(3).unwrap();
        let cfg = ArrowsConfig {
            budget: 1,
            ..ArrowsConfig::default()
        };
        assert_eq!(decide_arrows(&k6, &k3, 2, &cfg).unwrap().outcome, Outcome::Undecided);
    }

    #[test]
    fn portfolio_agrees() {
        let k6 = complete_graph(6).unwrap();
        let k3 = complete_graph(3).unwrap();
        let cfg = ArrowsConfig {
            jobs: 3,
            ..ArrowsConfig::default()
        };
        assert_eq!(decide_arrows(&k6, &k3, 2, &cfg).unwrap().outcome, Outcome::Arrows);
    }

    #[test]
    fn argument_errors() {
        let k3 = complete_graph(3).unwrap();
        let empty = Graph::new(2, []).unwrap();
        assert!(decide_arrows(&k3, &empty, 2, &ArrowsConfig::default()).is_err());
        assert!(exhaustive_arrows(&k3, &k3, 9).is_err());
    }
}
