//! Backtracking search for graph homomorphisms `G -> H`.
//!
//! Variables are the vertices of `G`, values the vertices of `H`. Domains are
//! bitsets, so the target may have at most 64 vertices. With propagation on,
//! every assignment is followed by arc-consistency filtering over the edges of
//! `G` until a fixed point; with it off, only already-assigned neighbours are
//! checked.
//!
//! In the default configuration (ascending variables, ascending values) the
//! solutions are produced in lexicographic order of the vertex map.

use std::collections::VecDeque;
use std::ops::ControlFlow;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{invalid_parameter, Error, Result};
use crate::graph::{make_cycle, make_power, Graph};
use crate::minion::FunctionTable;

/// Default ceiling on the estimated search space for exhaustive enumeration.
pub const DEFAULT_BUDGET: f64 = 1e9;

/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "CYCLE_MINION_BUDGET";

const MAX_TARGET: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VariableOrder {
    /// Ascending vertex index.
    Ascending,
    /// Breadth-first from a random root with shuffled neighbour lists, so
    /// every vertex after the first of its component has an earlier neighbour.
    Seeded(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueOrder {
    Ascending,
    /// Independent shuffle at every search node, driven by one seeded stream.
    Seeded(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub variable_order: VariableOrder,
    pub value_order: ValueOrder,
    pub solution_limit: Option<usize>,
    pub propagation: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            variable_order: VariableOrder::Ascending,
            value_order: ValueOrder::Ascending,
            solution_limit: None,
            propagation: true,
        }
    }
}

impl SearchConfig {
    pub fn with_limit(mut self, limit: usize) -> Self {
        self.solution_limit = Some(limit);
        self
    }

    pub fn without_propagation(mut self) -> Self {
        self.propagation = false;
        self
    }
}

/// Counters collected during one search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub solutions: u64,
    /// Whether the search stopped before exhausting the tree (limit or visitor).
    pub truncated: bool,
}

struct Problem<'a> {
    source: &'a Graph,
    target_nbrs: Vec<u64>,
    full: u64,
    order: Vec<usize>,
    propagation: bool,
}

impl<'a> Problem<'a> {
    fn new(source: &'a Graph, target: &Graph, config: &SearchConfig) -> Result<Self> {
        let t = target.vertex_count();
        if t > MAX_TARGET {
            return Err(invalid_parameter(format!(
                "target graphs are limited to {MAX_TARGET} vertices, got {t}"
            )));
        }
        let target_nbrs = (0..t)
            .map(|x| target.neighbors(x).fold(0u64, |m, y| m | (1 << y)))
            .collect();
        let full = if t == 64 { u64::MAX } else { (1u64 << t) - 1 };
        let order = match config.variable_order {
            VariableOrder::Ascending => (0..source.vertex_count()).collect(),
            VariableOrder::Seeded(seed) => seeded_bfs_order(source, seed),
        };
        Ok(Problem {
            source,
            target_nbrs,
            full,
            order,
            propagation: config.propagation,
        })
    }

    fn support(&self, dom: u64) -> u64 {
        let mut s = 0;
        let mut rest = dom;
        while rest != 0 {
            let b = rest.trailing_zeros() as usize;
            s |= self.target_nbrs[b];
            rest &= rest - 1;
        }
        s
    }

    /// Arc consistency from `start`. Returns false on a wipe-out.
    fn propagate(&self, domains: &mut [u64], start: usize) -> bool {
        let mut queue = VecDeque::from([start]);
        let mut queued = vec![false; domains.len()];
        queued[start] = true;
        while let Some(y) = queue.pop_front() {
            queued[y] = false;
            let sup = self.support(domains[y]);
            for x in self.source.neighbors(y) {
                let narrowed = domains[x] & sup;
                if narrowed != domains[x] {
                    if narrowed == 0 {
                        return false;
                    }
                    domains[x] = narrowed;
                    if !queued[x] {
                        queued[x] = true;
                        queue.push_back(x);
                    }
                }
            }
        }
        true
    }

    fn initial_domains(&self) -> Option<Vec<u64>> {
        let n = self.source.vertex_count();
        let mut domains = vec![self.full; n];
        // a vertex with a neighbour needs a value with a neighbour
        let nonisolated = self
            .target_nbrs
            .iter()
            .enumerate()
            .filter(|(_, &m)| m != 0)
            .fold(0u64, |acc, (x, _)| acc | (1 << x));
        for v in 0..n {
            if self.source.degree(v) > 0 {
                domains[v] &= nonisolated;
                if domains[v] == 0 {
                    return None;
                }
            }
        }
        if self.propagation {
            for v in 0..n {
                if !self.propagate(&mut domains, v) {
                    return None;
                }
            }
        }
        Some(domains)
    }
}

struct Search<'p, 'a, F> {
    problem: &'p Problem<'a>,
    assigned: Vec<bool>,
    values: Vec<usize>,
    rng: Option<ChaCha8Rng>,
    limit: Option<u64>,
    node_cap: Option<u64>,
    stats: SearchStats,
    visit: F,
}

impl<F> Search<'_, '_, F>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    fn candidates(&mut self, dom: u64) -> Vec<usize> {
        let mut vals: Vec<usize> = (0..64).filter(|b| dom >> b & 1 == 1).collect();
        if let Some(rng) = self.rng.as_mut() {
            vals.shuffle(rng);
        }
        vals
    }

    fn consistent(&self, var: usize, val: usize) -> bool {
        self.problem
            .source
            .neighbors(var)
            .all(|w| !self.assigned[w] || self.problem.target_nbrs[val] >> self.values[w] & 1 == 1)
    }

    fn run(&mut self, depth: usize, domains: &mut Vec<u64>) -> ControlFlow<()> {
        self.stats.nodes += 1;
        if self.node_cap.is_some_and(|cap| self.stats.nodes > cap) {
            self.stats.truncated = true;
            return ControlFlow::Break(());
        }
        if depth == self.problem.order.len() {
            self.stats.solutions += 1;
            let flow = (self.visit)(&self.values);
            if flow.is_break() || self.limit.is_some_and(|l| self.stats.solutions >= l) {
                self.stats.truncated = true;
                return ControlFlow::Break(());
            }
            return ControlFlow::Continue(());
        }
        let var = self.problem.order[depth];
        for val in self.candidates(domains[var]) {
            if self.problem.propagation {
                let mut next = domains.clone();
                next[var] = 1 << val;
                if !self.problem.propagate(&mut next, var) {
                    continue;
                }
                self.assigned[var] = true;
                self.values[var] = val;
                let flow = self.run(depth + 1, &mut next);
                self.assigned[var] = false;
                flow?;
            } else {
                if !self.consistent(var, val) {
                    continue;
                }
                self.assigned[var] = true;
                self.values[var] = val;
                let flow = self.run(depth + 1, domains);
                self.assigned[var] = false;
                flow?;
            }
        }
        ControlFlow::Continue(())
    }
}

fn seeded_bfs_order(g: &Graph, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.vertex_count();
    let mut roots: Vec<usize> = (0..n).collect();
    roots.shuffle(&mut rng);
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for root in roots {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            let mut nbrs: Vec<usize> = g.neighbors(v).filter(|&w| !seen[w]).collect();
            nbrs.shuffle(&mut rng);
            for w in nbrs {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    order
}

fn run_search<F>(
    problem: &Problem<'_>,
    mut domains: Vec<u64>,
    config: &SearchConfig,
    node_cap: Option<u64>,
    rng: Option<ChaCha8Rng>,
    visit: F,
) -> SearchStats
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let n = problem.source.vertex_count();
    let mut search = Search {
        problem,
        assigned: vec![false; n],
        values: vec![0; n],
        rng,
        limit: config.solution_limit.map(|l| l as u64),
        node_cap,
        stats: SearchStats::default(),
        visit,
    };
    if search.limit == Some(0) {
        search.stats.truncated = true;
        return search.stats;
    }
    let _ = search.run(0, &mut domains);
    search.stats
}

fn value_rng(config: &SearchConfig) -> Option<ChaCha8Rng> {
    match config.value_order {
        ValueOrder::Ascending => None,
        ValueOrder::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
    }
}

/// Streams every homomorphism `g -> h` to `visit`, in search order. Returning
/// `ControlFlow::Break` from the visitor stops the search.
pub fn for_each_hom<F>(g: &Graph, h: &Graph, config: &SearchConfig, visit: F) -> Result<SearchStats>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let problem = Problem::new(g, h, config)?;
    let Some(domains) = problem.initial_domains() else {
        return Ok(SearchStats::default());
    };
    Ok(run_search(
        &problem,
        domains,
        config,
        None,
        value_rng(config),
        visit,
    ))
}

/// All homomorphisms `g -> h` (up to the configured limit), in search order.
pub fn enumerate_homs(g: &Graph, h: &Graph, config: &SearchConfig) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for_each_hom(g, h, config, |m| {
        out.push(m.to_vec());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Like [`enumerate_homs`] but splits the tree on the values of the first
/// variable and searches the branches concurrently. The merged output is
/// sorted, so it is independent of scheduling.
pub fn enumerate_homs_parallel(
    g: &Graph,
    h: &Graph,
    config: &SearchConfig,
) -> Result<Vec<Vec<usize>>> {
    let problem = Problem::new(g, h, config)?;
    let Some(domains) = problem.initial_domains() else {
        return Ok(Vec::new());
    };
    let Some(&first) = problem.order.first() else {
        return Ok(Vec::new());
    };
    let branches: Vec<usize> = (0..64).filter(|b| domains[first] >> b & 1 == 1).collect();
    let mut parts: Vec<Vec<Vec<usize>>> = branches
        .par_iter()
        .enumerate()
        .map(|(i, &val)| {
            let mut branch = domains.clone();
            branch[first] = 1 << val;
            if problem.propagation && !problem.propagate(&mut branch, first) {
                return Vec::new();
            }
            let rng = match config.value_order {
                ValueOrder::Ascending => None,
                ValueOrder::Seeded(seed) => {
                    Some(ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64)))
                }
            };
            let mut out = Vec::new();
            run_search(&problem, branch, config, None, rng, |m| {
                out.push(m.to_vec());
                ControlFlow::Continue(())
            });
            out
        })
        .collect();
    let mut all: Vec<Vec<usize>> = parts.drain(..).flatten().collect();
    all.sort_unstable();
    if let Some(limit) = config.solution_limit {
        all.truncate(limit);
    }
    Ok(all)
}

pub fn find_hom(g: &Graph, h: &Graph) -> Result<Option<Vec<usize>>> {
    Ok(enumerate_homs(g, h, &SearchConfig::default().with_limit(1))?.pop())
}

pub fn count_homs(g: &Graph, h: &Graph) -> Result<u64> {
    let stats = for_each_hom(
        g,
        h,
        &SearchConfig::default(),
        |_| ControlFlow::Continue(()),
    )?;
    Ok(stats.solutions)
}

/// Draws one homomorphism by randomized backtracking (random breadth-first
/// variable order, random value order, geometric restarts). The draw is not
/// uniform. Returns `None` only after a complete search found nothing.
pub fn sample_hom(g: &Graph, h: &Graph, seed: u64) -> Result<Option<Vec<usize>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cap = 64 * g.vertex_count().max(1) as u64;
    loop {
        let config = SearchConfig {
            variable_order: VariableOrder::Seeded(rng.gen()),
            value_order: ValueOrder::Seeded(rng.gen()),
            solution_limit: Some(1),
            propagation: true,
        };
        let problem = Problem::new(g, h, &config)?;
        let Some(domains) = problem.initial_domains() else {
            return Ok(None);
        };
        let mut found = None;
        let stats = run_search(
            &problem,
            domains,
            &config,
            Some(cap),
            value_rng(&config),
            |m| {
                found = Some(m.to_vec());
                ControlFlow::Break(())
            },
        );
        if found.is_some() {
            return Ok(found);
        }
        if stats.nodes <= cap {
            // exhausted without hitting the cap
            return Ok(None);
        }
        cap = cap.saturating_mul(2);
    }
}

/// Upper bound on the number of homomorphisms `g -> h` (and on the leaves of
/// a propagating search): `|V(H)|` choices for one vertex per component of `g`
/// and at most `maxdeg(H)` for every other vertex.
pub fn search_space_bound(g: &Graph, h: &Graph) -> f64 {
    let components = count_components(g);
    let rest = g.vertex_count() - components;
    (h.vertex_count() as f64).powi(components as i32) * (h.max_degree() as f64).powi(rest as i32)
}

fn count_components(g: &Graph) -> usize {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut count = 0;
    for root in 0..n {
        if seen[root] {
            continue;
        }
        count += 1;
        seen[root] = true;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    count
}

/// The enumeration budget: `CYCLE_MINION_BUDGET` if set and parseable,
/// otherwise [`DEFAULT_BUDGET`].
pub fn budget_from_env() -> f64 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<f64>().ok())
        .filter(|b| *b > 0.0)
        .unwrap_or(DEFAULT_BUDGET)
}

/// Streams `Pol(C_k, target)^{(n)}` as function tables in canonical order.
pub fn for_each_polymorphism<F>(
    k: usize,
    n: usize,
    target: &Graph,
    budget: f64,
    mut visit: F,
) -> Result<SearchStats>
where
    F: FnMut(FunctionTable) -> ControlFlow<()>,
{
    let power = make_power(&make_cycle(k)?, n)?;
    let estimate = search_space_bound(&power, target);
    if estimate > budget {
        return Err(Error::BudgetExceeded { estimate, budget });
    }
    let t = target.vertex_count();
    for_each_hom(&power, target, &SearchConfig::default(), |m| {
        visit(FunctionTable::from_values_unchecked(n, k, t, m.to_vec()))
    })
}

pub fn enumerate_polymorphisms(
    k: usize,
    n: usize,
    target: &Graph,
    budget: f64,
) -> Result<Vec<FunctionTable>> {
    let mut out = Vec::new();
    for_each_polymorphism(k, n, target, budget, |f| {
        out.push(f);
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// A seeded sample from `Pol(C_k, target)^{(n)}`, without any budget check.
pub fn sample_polymorphism(
    k: usize,
    n: usize,
    target: &Graph,
    seed: u64,
) -> Result<Option<FunctionTable>> {
    let power = make_power(&make_cycle(k)?, n)?;
    Ok(sample_hom(&power, target, seed)?
        .map(|m| FunctionTable::from_values_unchecked(n, k, target.vertex_count(), m)))
}
