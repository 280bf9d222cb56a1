//! 2-core of a Tanner graph and the nullity bound it gives.
//!
//! Peeling repeatedly deletes a variable of degree at most one together with
//! its check. Degrees count edge multiplicity, so a variable tied to a single
//! check by a double edge stays.
//!
//! Every kernel vector that vanishes on the core is determined by the
//! non-core coordinates, which only meet the non-core rows; hence
//! `nullity >= n - n* - (m - m*)`, with `m - m*` counting non-core rows that
//! still hold an entry.

use std::collections::VecDeque;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::EnsembleSpec;
use crate::ensemble::{sample_instance, EnsembleError, InstanceSeed, SparseMatrix, TannerGraph};
use crate::linalg::{self, Kernel};
use crate::seed::trial_seed;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreResult {
    /// Sorted.
    pub core_vars: Vec<usize>,
    /// Sorted.
    pub core_checks: Vec<usize>,
    pub n_star: usize,
    pub m_star: usize,
    /// Rounds the parallel stripping process needs; 0 if nothing peels.
    pub peel_rounds: usize,
}

impl CoreResult {
    pub fn var_mask(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &v in &self.core_vars {
            mask[v] = true;
        }
        mask
    }
}

trait Work {
    fn put(&mut self, v: u32);
    fn take(&mut self) -> Option<u32>;
}

impl Work for VecDeque<u32> {
    fn put(&mut self, v: u32) {
        self.push_back(v);
    }

    fn take(&mut self) -> Option<u32> {
        self.pop_front()
    }
}

struct Shuffled<'a, R: Rng> {
    items: Vec<u32>,
    rng: &'a mut R,
}

impl<R: Rng> Work for Shuffled<'_, R> {
    fn put(&mut self, v: u32) {
        self.items.push(v);
    }

    fn take(&mut self) -> Option<u32> {
        if self.items.is_empty() {
            return None;
        }
        let i = self.rng.random_range(0..self.items.len());
        Some(self.items.swap_remove(i))
    }
}

fn peel_with<W: Work>(g: &TannerGraph, work: &mut W) -> CoreResult {
    let n = g.n_vars();
    let var_adj = g.var_adjacency();
    let check_adj = g.check_adjacency();
    let mut degree: Vec<u32> = g.var_degrees().to_vec();
    let mut var_alive = vec![true; n];
    let mut check_alive = vec![true; g.n_checks()];
    let mut queued = vec![false; n];
    // round in which a variable becomes removable, and in which a check is removed
    let mut var_round = vec![0usize; n];
    let mut rounds = 0;
    for v in 0..n {
        if degree[v] <= 1 {
            queued[v] = true;
            var_round[v] = 1;
            work.put(v as u32);
        }
    }
    while let Some(v) = work.take() {
        let v = v as usize;
        var_alive[v] = false;
        let round = var_round[v];
        rounds = rounds.max(round);
        if degree[v] == 0 {
            continue;
        }
        let a = *var_adj[v]
            .iter()
            .find(|&&a| check_alive[a as usize])
            .expect("degree one means one live check");
        check_alive[a as usize] = false;
        for &u in &check_adj[a as usize] {
            let u = u as usize;
            degree[u] -= 1;
            if var_alive[u] && !queued[u] && degree[u] <= 1 {
                queued[u] = true;
                var_round[u] = round + 1;
                work.put(u as u32);
            }
        }
    }
    let core_vars: Vec<usize> = (0..n).filter(|&v| var_alive[v]).collect();
    let core_checks: Vec<usize> = (0..g.n_checks()).filter(|&a| check_alive[a]).collect();
    CoreResult {
        n_star: core_vars.len(),
        m_star: core_checks.len(),
        core_vars,
        core_checks,
        peel_rounds: rounds,
    }
}

/// 2-core by FIFO peeling; `peel_rounds` matches parallel stripping.
pub fn peel(g: &TannerGraph) -> CoreResult {
    peel_with(g, &mut VecDeque::new())
}

/// Same core, removal order drawn at random. `peel_rounds` is not meaningful.
pub fn peel_random_order<R: Rng>(g: &TannerGraph, rng: &mut R) -> CoreResult {
    let mut work = Shuffled { items: Vec::new(), rng };
    let mut res = peel_with(g, &mut work);
    res.peel_rounds = 0;
    res
}

/// The subgraph induced by the core, with variables and checks renumbered.
pub fn core_subgraph(g: &TannerGraph, core: &CoreResult) -> TannerGraph {
    let mut var_id = vec![u32::MAX; g.n_vars()];
    for (i, &v) in core.core_vars.iter().enumerate() {
        var_id[v] = i as u32;
    }
    let mut check_id = vec![u32::MAX; g.n_checks()];
    for (i, &a) in core.core_checks.iter().enumerate() {
        check_id[a] = i as u32;
    }
    let edges = g
        .edges()
        .iter()
        .filter(|&&(a, _)| check_id[a as usize] != u32::MAX)
        .map(|&(a, v)| (check_id[a as usize], var_id[v as usize]))
        .collect();
    TannerGraph::from_edges(core.n_star, core.m_star, edges).expect("core edges stay inside the core")
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoreCounts {
    pub trials: usize,
    pub mean_vars: f64,
    pub mean_checks: f64,
    pub se_vars: f64,
    pub se_checks: f64,
}

fn mean_se(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Mean `n*/n` and `m*/n` over `trials` sampled instances of size `n`.
pub fn core_counts_mc(ens: &EnsembleSpec, n: usize, trials: usize, seed: u64) -> Result<CoreCounts, EnsembleError> {
    if trials == 0 {
        return Err(EnsembleError::Malformed("trials must be at least 1".into()));
    }
    let ens = ens.clone().with_n(n)?;
    let fractions: Vec<(f64, f64)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let inst = sample_instance(&ens, InstanceSeed(trial_seed(seed, t as u64)))?;
            let core = peel(&inst.graph);
            Ok((core.n_star as f64 / n as f64, core.m_star as f64 / n as f64))
        })
        .collect::<Result<_, EnsembleError>>()?;
    let vars: Vec<f64> = fractions.iter().map(|f| f.0).collect();
    let checks: Vec<f64> = fractions.iter().map(|f| f.1).collect();
    let (mean_vars, se_vars) = mean_se(&vars);
    let (mean_checks, se_checks) = mean_se(&checks);
    Ok(CoreCounts {
        trials,
        mean_vars,
        mean_checks,
        se_vars,
        se_checks,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoreBound {
    pub n: usize,
    pub n_star: usize,
    pub m_star: usize,
    /// Rows outside the core holding at least one entry.
    pub outer_rows: usize,
    /// `n - n* - outer_rows`; may be negative.
    pub bound: i64,
    pub nullity: usize,
    /// Nullity equals the bound, or the matrix has full row rank and the bound is below `n - m`.
    pub tight: bool,
    pub core: CoreResult,
}

fn live_rows(m: &SparseMatrix) -> usize {
    m.rows().filter(|r| !r.is_empty()).count()
}

/// Peels `g` and compares the resulting bound with the nullity of `m`.
pub fn core_rank_bound(g: &TannerGraph, m: &SparseMatrix) -> CoreBound {
    let core = peel(g);
    let nullity = linalg::nullity(m);
    core_rank_bound_with(g, m, core, nullity)
}

/// As [`core_rank_bound`] with the core and nullity already known.
pub fn core_rank_bound_with(g: &TannerGraph, m: &SparseMatrix, core: CoreResult, nullity: usize) -> CoreBound {
    let n = g.n_vars();
    let mut in_core = vec![false; g.n_checks()];
    for &a in &core.core_checks {
        in_core[a] = true;
    }
    let outer_rows = (0..m.n_rows()).filter(|&r| !in_core[r] && !m.row(r).is_empty()).count();
    let bound = n as i64 - core.n_star as i64 - outer_rows as i64;
    let full_row_rank = n as i64 - live_rows(m) as i64;
    let tight = nullity as i64 == bound || (nullity as i64 == full_row_rank && bound < full_row_rank);
    CoreBound {
        n,
        n_star: core.n_star,
        m_star: core.m_star,
        outer_rows,
        bound,
        nullity,
        tight,
        core,
    }
}

/// Every kernel vector vanishes on `core_vars`.
pub fn kernel_zero_on_core(m: &SparseMatrix, core_vars: &[usize]) -> bool {
    if core_vars.is_empty() {
        return true;
    }
    kernel_zero_on(&Kernel::of(m), core_vars)
}

pub fn kernel_zero_on(kernel: &Kernel, vars: &[usize]) -> bool {
    vars.iter().all(|&v| kernel.is_frozen(v))
}
