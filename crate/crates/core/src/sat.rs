//! A compact conflict-driven clause-learning SAT solver: two watched
//! literals, first-UIP learning, VSIDS branching with phase saving, Luby
//! restarts, and activity-based learnt clause deletion. Clauses may be added
//! between calls to [`Solver::solve_limited`].

use std::sync::atomic::{AtomicBool, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Var = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(u32);

impl Lit {
    pub fn new(v: Var, positive: bool) -> Lit {
        Lit(v * 2 + u32::from(!positive))
    }

    pub fn pos(v: Var) -> Lit {
        Lit::new(v, true)
    }

    pub fn neg(v: Var) -> Lit {
        Lit::new(v, false)
    }

    pub fn var(self) -> Var {
        self.0 >> 1
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    fn idx(self) -> usize {
        self.0 as usize
    }
}

impl std::ops::Not for Lit {
    type Output = Lit;
    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveResult {
    Sat,
    Unsat,
    /// Conflict budget exhausted or interrupted.
    Unknown,
}

const FALSE: u8 = 0;
const TRUE: u8 = 1;
const UNDEF: u8 = 2;
const NO_REASON: u32 = u32::MAX;

#[inline]
fn val(assigns: &[u8], l: Lit) -> u8 {
    let a = assigns[l.var() as usize];
    if a == UNDEF {
        UNDEF
    } else {
        a ^ (l.0 & 1) as u8
    }
}

struct Clause {
    lits: Vec<Lit>,
    learnt: bool,
    deleted: bool,
    activity: f64,
}

#[derive(Clone, Copy)]
struct Watcher {
    cref: u32,
    blocker: Lit,
}

/// Max-heap of variables ordered by activity.
#[derive(Default)]
struct VarHeap {
    heap: Vec<Var>,
    index: Vec<usize>,
}

impl VarHeap {
    const ABSENT: usize = usize::MAX;

    fn grow(&mut self) {
        self.index.push(Self::ABSENT);
    }

    fn contains(&self, v: Var) -> bool {
        self.index[v as usize] != Self::ABSENT
    }

    fn up(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        while i > 0 {
            let p = (i - 1) / 2;
            if act[self.heap[p] as usize] >= act[v as usize] {
                break;
            }
            self.heap[i] = self.heap[p];
            self.index[self.heap[i] as usize] = i;
            i = p;
        }
        self.heap[i] = v;
        self.index[v as usize] = i;
    }

    fn down(&mut self, mut i: usize, act: &[f64]) {
        let v = self.heap[i];
        loop {
            let l = 2 * i + 1;
            if l >= self.heap.len() {
                break;
            }
            let r = l + 1;
            let c = if r < self.heap.len() && act[self.heap[r] as usize] > act[self.heap[l] as usize] {
                r
            } else {
                l
            };
            if act[self.heap[c] as usize] <= act[v as usize] {
                break;
            }
            self.heap[i] = self.heap[c];
            self.index[self.heap[i] as usize] = i;
            i = c;
        }
        self.heap[i] = v;
        self.index[v as usize] = i;
    }

    fn insert(&mut self, v: Var, act: &[f64]) {
        if self.contains(v) {
            return;
        }
        self.heap.push(v);
        let i = self.heap.len() - 1;
        self.index[v as usize] = i;
        self.up(i, act);
    }

    fn bumped(&mut self, v: Var, act: &[f64]) {
        if self.contains(v) {
            self.up(self.index[v as usize], act);
        }
    }

    fn pop(&mut self, act: &[f64]) -> Option<Var> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().unwrap();
        self.index[top as usize] = Self::ABSENT;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.index[last as usize] = 0;
            self.down(0, act);
        }
        Some(top)
    }
}

enum SearchStatus {
    Sat,
    Unsat,
    Restart,
    Stop,
}

pub struct Solver {
    clauses: Vec<Clause>,
    learnts: Vec<u32>,
    watches: Vec<Vec<Watcher>>,
    assigns: Vec<u8>,
    level: Vec<u32>,
    reason: Vec<u32>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    cla_inc: f64,
    heap: VarHeap,
    polarity: Vec<bool>,
    seen: Vec<bool>,
    ok: bool,
    model: Vec<bool>,
    max_learnts: f64,
    rng: ChaCha8Rng,
    pub conflicts: u64,
    pub decisions: u64,
    pub propagations: u64,
}

impl Default for Solver {
    fn default() -> Self {
        Solver::new(0)
    }
}

impl Solver {
    /// The seed perturbs initial variable activities.
    pub fn new(seed: u64) -> Self {
        Solver {
            clauses: Vec::new(),
            learnts: Vec::new(),
            watches: Vec::new(),
            assigns: Vec::new(),
            level: Vec::new(),
            reason: Vec::new(),
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            activity: Vec::new(),
            var_inc: 1.0,
            cla_inc: 1.0,
            heap: VarHeap::default(),
            polarity: Vec::new(),
            seen: Vec::new(),
            ok: true,
            model: Vec::new(),
            max_learnts: 0.0,
            rng: ChaCha8Rng::seed_from_u64(seed),
            conflicts: 0,
            decisions: 0,
            propagations: 0,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.assigns.len()
    }

    pub fn new_var(&mut self) -> Var {
        let v = self.assigns.len() as Var;
        self.assigns.push(UNDEF);
        self.level.push(0);
        self.reason.push(NO_REASON);
        self.activity.push(self.rng.gen::<f64>() * 1e-5);
        self.polarity.push(false);
        self.seen.push(false);
        self.watches.push(Vec::new());
        self.watches.push(Vec::new());
        self.heap.grow();
        self.heap.insert(v, &self.activity);
        v
    }

    /// Value of `v` in the last satisfying assignment.
    pub fn model_value(&self, v: Var) -> bool {
        self.model[v as usize]
    }

    pub fn model(&self) -> &[bool] {
        &self.model
    }

    fn decision_level(&self) -> u32 {
        self.trail_lim.len() as u32
    }

    fn enqueue(&mut self, l: Lit, reason: u32) {
        let v = l.var() as usize;
        self.assigns[v] = u8::from(l.is_positive());
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(l);
    }

    /// Adds a clause; returns `false` once the formula is known unsatisfiable.
    pub fn add_clause(&mut self, lits: &[Lit]) -> bool {
        if !self.ok {
            return false;
        }
        self.cancel_until(0);
        let mut c: Vec<Lit> = lits.to_vec();
        assert!(c.iter().all(|l| (l.var() as usize) < self.num_vars()), "unknown variable");
        c.sort_unstable();
        c.dedup();
        if c.windows(2).any(|w| w[0] == !w[1]) || c.iter().any(|&l| val(&self.assigns, l) == TRUE) {
            return true;
        }
        c.retain(|&l| val(&self.assigns, l) != FALSE);
        match c.len() {
            0 => {
                self.ok = false;
            }
            1 => {
                self.enqueue(c[0], NO_REASON);
                self.ok = self.propagate().is_none();
            }
            _ => {
                self.attach(c, false);
            }
        }
        self.ok
    }

    fn attach(&mut self, lits: Vec<Lit>, learnt: bool) -> u32 {
        let cref = self.clauses.len() as u32;
        self.watches[(!lits[0]).idx()].push(Watcher {
            cref,
            blocker: lits[1],
        });
        self.watches[(!lits[1]).idx()].push(Watcher {
            cref,
            blocker: lits[0],
        });
        self.clauses.push(Clause {
            lits,
            learnt,
            deleted: false,
            activity: 0.0,
        });
        if learnt {
            self.learnts.push(cref);
        }
        cref
    }

    fn propagate(&mut self) -> Option<u32> {
        let mut conflict = None;
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.propagations += 1;
            let false_lit = !p;
            let mut ws = std::mem::take(&mut self.watches[p.idx()]);
            let (mut i, mut j) = (0, 0);
            while i < ws.len() {
                let w = ws[i];
                i += 1;
                if val(&self.assigns, w.blocker) == TRUE {
                    ws[j] = w;
                    j += 1;
                    continue;
                }
                let c = &mut self.clauses[w.cref as usize];
                if c.deleted {
                    continue;
                }
                if c.lits[0] == false_lit {
                    c.lits.swap(0, 1);
                }
                let first = c.lits[0];
                let nw = Watcher {
                    cref: w.cref,
                    blocker: first,
                };
                if first != w.blocker && val(&self.assigns, first) == TRUE {
                    ws[j] = nw;
                    j += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..c.lits.len() {
                    if val(&self.assigns, c.lits[k]) != FALSE {
                        c.lits.swap(1, k);
                        self.watches[(!c.lits[1]).idx()].push(nw);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[j] = nw;
                j += 1;
                if val(&self.assigns, first) == FALSE {
                    conflict = Some(w.cref);
                    self.qhead = self.trail.len();
                    while i < ws.len() {
                        ws[j] = ws[i];
                        j += 1;
                        i += 1;
                    }
                } else {
                    let v = first.var() as usize;
                    self.assigns[v] = u8::from(first.is_positive());
                    self.level[v] = self.trail_lim.len() as u32;
                    self.reason[v] = w.cref;
                    self.trail.push(first);
                }
            }
            ws.truncate(j);
            self.watches[p.idx()] = ws;
            if conflict.is_some() {
                break;
            }
        }
        conflict
    }

    fn bump_var(&mut self, v: Var) {
        self.activity[v as usize] += self.var_inc;
        if self.activity[v as usize] > 1e100 {
            for a in &mut self.activity {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        self.heap.bumped(v, &self.activity);
    }

    fn bump_clause(&mut self, cref: u32) {
        let c = &mut self.clauses[cref as usize];
        c.activity += self.cla_inc;
        if c.activity > 1e20 {
            for &l in &self.learnts {
                self.clauses[l as usize].activity *= 1e-20;
            }
            self.cla_inc *= 1e-20;
        }
    }

    fn analyze(&mut self, mut confl: u32) -> (Vec<Lit>, u32) {
        let mut out = vec![Lit(0)];
        let mut path = 0;
        let mut p: Option<Lit> = None;
        let mut idx = self.trail.len();
        let current = self.decision_level();
        loop {
            if self.clauses[confl as usize].learnt {
                self.bump_clause(confl);
            }
            let skip = usize::from(p.is_some());
            for k in skip..self.clauses[confl as usize].lits.len() {
                let q = self.clauses[confl as usize].lits[k];
                let v = q.var() as usize;
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    self.bump_var(q.var());
                    if self.level[v] >= current {
                        path += 1;
                    } else {
                        out.push(q);
                    }
                }
            }
            loop {
                idx -= 1;
                if self.seen[self.trail[idx].var() as usize] {
                    break;
                }
            }
            let lit = self.trail[idx];
            let v = lit.var() as usize;
            self.seen[v] = false;
            path -= 1;
            p = Some(lit);
            if path == 0 {
                break;
            }
            confl = self.reason[v];
        }
        out[0] = !p.unwrap();

        // drop literals implied by others already in the clause
        let toclear: Vec<Lit> = out[1..].to_vec();
        let mut keep = vec![out[0]];
        for &l in &out[1..] {
            let r = self.reason[l.var() as usize];
            let redundant = r != NO_REASON
                && self.clauses[r as usize].lits[1..].iter().all(|q| {
                    let v = q.var() as usize;
                    self.seen[v] || self.level[v] == 0
                });
            if !redundant {
                keep.push(l);
            }
        }
        for l in toclear {
            self.seen[l.var() as usize] = false;
        }
        let mut out = keep;
        let bt = if out.len() == 1 {
            0
        } else {
            let mut best = 1;
            for k in 2..out.len() {
                if self.level[out[k].var() as usize] > self.level[out[best].var() as usize] {
                    best = k;
                }
            }
            out.swap(1, best);
            self.level[out[1].var() as usize]
        };
        (out, bt)
    }

    fn cancel_until(&mut self, level: u32) {
        if self.decision_level() <= level {
            return;
        }
        let lim = self.trail_lim[level as usize];
        for k in (lim..self.trail.len()).rev() {
            let l = self.trail[k];
            let v = l.var() as usize;
            self.assigns[v] = UNDEF;
            self.reason[v] = NO_REASON;
            self.polarity[v] = l.is_positive();
            self.heap.insert(l.var(), &self.activity);
        }
        self.trail.truncate(lim);
        self.trail_lim.truncate(level as usize);
        self.qhead = lim;
    }

    fn pick_branch(&mut self) -> Option<Lit> {
        while let Some(v) = self.heap.pop(&self.activity) {
            if self.assigns[v as usize] == UNDEF {
                return Some(Lit::new(v, self.polarity[v as usize]));
            }
        }
        None
    }

    fn locked(&self, cref: u32) -> bool {
        let l = self.clauses[cref as usize].lits[0];
        self.reason[l.var() as usize] == cref && val(&self.assigns, l) == TRUE
    }

    fn reduce_db(&mut self) {
        let mut ls = std::mem::take(&mut self.learnts);
        ls.sort_by(|&a, &b| {
            self.clauses[a as usize]
                .activity
                .partial_cmp(&self.clauses[b as usize].activity)
                .unwrap()
        });
        let half = ls.len() / 2;
        let mut kept = Vec::with_capacity(ls.len());
        for (i, cref) in ls.into_iter().enumerate() {
            let c = &self.clauses[cref as usize];
            if i < half && c.lits.len() > 2 && !self.locked(cref) {
                let c = &mut self.clauses[cref as usize];
                c.deleted = true;
                c.lits = Vec::new();
            } else {
                kept.push(cref);
            }
        }
        self.learnts = kept;
        for ws in &mut self.watches {
            ws.retain(|w| !self.clauses[w.cref as usize].deleted);
        }
    }

    fn search(
        &mut self,
        restart_after: u64,
        stop_at: Option<u64>,
        interrupt: Option<&AtomicBool>,
    ) -> SearchStatus {
        let mut local = 0u64;
        loop {
            if let Some(confl) = self.propagate() {
                self.conflicts += 1;
                local += 1;
                if self.decision_level() == 0 {
                    self.ok = false;
                    return SearchStatus::Unsat;
                }
                let (learnt, bt) = self.analyze(confl);
                self.cancel_until(bt);
                if learnt.len() == 1 {
                    self.enqueue(learnt[0], NO_REASON);
                } else {
                    let first = learnt[0];
                    let cref = self.attach(learnt, true);
                    self.bump_clause(cref);
                    self.enqueue(first, cref);
                }
                self.var_inc /= 0.95;
                self.cla_inc /= 0.999;
            } else {
                if stop_at.is_some_and(|s| self.conflicts >= s)
                    || interrupt.is_some_and(|f| f.load(Ordering::Relaxed))
                {
                    return SearchStatus::Stop;
                }
                if local >= restart_after {
                    return SearchStatus::Restart;
                }
                if self.learnts.len() as f64 - self.trail.len() as f64 >= self.max_learnts {
                    self.reduce_db();
                }
                match self.pick_branch() {
                    None => return SearchStatus::Sat,
                    Some(l) => {
                        self.decisions += 1;
                        self.trail_lim.push(self.trail.len());
                        self.enqueue(l, NO_REASON);
                    }
                }
            }
        }
    }

    /// Solves under an optional budget of further conflicts and an optional
    /// interrupt flag polled between decisions.
    pub fn solve_limited(&mut self, conflict_budget: Option<u64>, interrupt: Option<&AtomicBool>) -> SolveResult {
        if !self.ok {
            return SolveResult::Unsat;
        }
        self.model.clear();
        let stop_at = conflict_budget.map(|b| self.conflicts.saturating_add(b));
        self.max_learnts = (self.clauses.len() as f64 / 3.0).max(1000.0);
        let mut round = 0;
        let result = loop {
            let status = self.search(luby(round) * 100, stop_at, interrupt);
            round += 1;
            match status {
                SearchStatus::Sat => {
                    self.model = self.assigns.iter().map(|&a| a == TRUE).collect();
                    break SolveResult::Sat;
                }
                SearchStatus::Unsat => break SolveResult::Unsat,
                SearchStatus::Stop => break SolveResult::Unknown,
                SearchStatus::Restart => {
                    self.cancel_until(0);
                    self.max_learnts *= 1.05;
                }
            }
        };
        self.cancel_until(0);
        result
    }

    pub fn solve(&mut self) -> SolveResult {
        self.solve_limited(None, None)
    }
}

/// The Luby sequence 1, 1, 2, 1, 1, 2, 4, ...
fn luby(mut i: u64) -> u64 {
    let (mut size, mut seq) = (1u64, 0u32);
    while size < i + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != i {
        size = (size - 1) >> 1;
        seq -= 1;
        i %= size;
    }
    1 << seq
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pigeonhole(holes: usize) -> Solver {
        let mut s = Solver::new(1);
        let pigeons = holes + 1;
        let x: Vec<Vec<Var>> = (0..pigeons)
            .map(|_| (0..holes).map(|_| s.new_var()).collect())
            .collect();
        for p in &x {
            s.add_clause(&p.iter().map(|&v| Lit::pos(v)).collect::<Vec<_>>());
        }
        for h in 0..holes {
            for a in 0..pigeons {
                for b in a + 1..pigeons {
                    s.add_clause(&[Lit::neg(x[a][h]), Lit::neg(x[b][h])]);
                }
            }
        }
        s
    }

    #[test]
    fn luby_prefix() {
        let seq: Vec<u64> = (0..15).map(luby).collect();
        assert_eq!(seq, vec![1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]);
    }

    #[test]
    fn pigeonhole_is_unsat() {
        for holes in 2..=7 {
            assert_eq!(pigeonhole(holes).solve(), SolveResult::Unsat, "holes {holes}");
        }
    }

    #[test]
    fn budget_gives_unknown() {
        let mut s = pigeonhole(9);
        assert_eq!(s.solve_limited(Some(10), None), SolveResult::Unknown);
        let stop = AtomicBool::new(true);
        assert_eq!(s.solve_limited(None, Some(&stop)), SolveResult::Unknown);
    }

    fn brute(n: usize, cnf: &[Vec<Lit>]) -> bool {
        (0u32..1 << n).any(|m| {
            cnf.iter().all(|c| {
                c.iter()
                    .any(|l| ((m >> l.var()) & 1 == 1) == l.is_positive())
            })
        })
    }

    #[test]
    fn random_3sat_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for round in 0..300 {
            let n = 4 + round % 9;
            let m = (n as f64 * rng.gen_range(3.0..5.5)) as usize;
            let cnf: Vec<Vec<Lit>> = (0..m)
                .map(|_| {
                    (0..3)
                        .map(|_| Lit::new(rng.gen_range(0..n as u32), rng.gen()))
                        .collect()
                })
                .collect();
            let mut s = Solver::new(round as u64);
            for _ in 0..n {
                s.new_var();
            }
            for c in &cnf {
                s.add_clause(c);
            }
            let r = s.solve();
            assert_eq!(r == SolveResult::Sat, brute(n, &cnf), "round {round}");
            if r == SolveResult::Sat {
                let m = s.model();
                assert!(cnf
                    .iter()
                    .all(|c| c.iter().any(|l| m[l.var() as usize] == l.is_positive())));
            }
        }
    }

    #[test]
    fn incremental_blocking() {
        // enumerate all 8 assignments of 3 free variables by blocking each model
        let mut s = Solver::new(0);
        let vs: Vec<Var> = (0..3).map(|_| s.new_var()).collect();
        let mut count = 0;
        while s.solve() == SolveResult::Sat {
            count += 1;
            let block: Vec<Lit> = vs.iter().map(|&v| Lit::new(v, !s.model_value(v))).collect();
            s.add_clause(&block);
        }
        assert_eq!(count, 8);
    }
}
