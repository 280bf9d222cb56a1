//! Sampling Tanner graphs and their matrices.
//!
//! `m ~ Po(d n / k)`, degrees `d_1..d_n` and `k_1..k_m` are drawn
//! independently and the whole draw is rejected until `sum d_i = sum k_i`.
//! Clones are then paired by a uniform permutation. Every edge carries an
//! independent `chi` draw; repeated (check, variable) pairs add up, so
//! entries can cancel in multigraph mode.

use std::collections::HashSet;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analytic::{AnalyticError, Chi, EnsembleSpec, GraphMode};
use crate::gf::{Field, FieldElement, FieldError};
use crate::seed::mix_seed;

/// Simple-mode matchings tried per degree sequence.
pub const MATCHING_ATTEMPTS: usize = 10_000;

#[derive(Debug, Error)]
pub enum EnsembleError {
    #[error("n = {n} is not divisible by the gcd {gcd} of the check-degree support")]
    Divisibility { n: usize, gcd: u32 },
    #[error("{what} is not an integer ({value})")]
    Integrality { what: String, value: f64 },
    #[error("rejection budget exhausted after {attempts} {stage} attempts")]
    RejectionBudgetExhausted { stage: &'static str, attempts: usize },
    #[error(transparent)]
    Spec(AnalyticError),
    #[error("n must be positive")]
    EmptyInstance,
    #[error("malformed instance: {0}")]
    Malformed(String),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl From<AnalyticError> for EnsembleError {
    fn from(e: AnalyticError) -> Self {
        match e {
            AnalyticError::Divisibility { n, gcd } => EnsembleError::Divisibility { n, gcd },
            other => EnsembleError::Spec(other),
        }
    }
}

/// Independent random streams for one instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct InstanceSeed(pub u64);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stream {
    M = 0,
    VarDegrees = 1,
    CheckDegrees = 2,
    Matching = 3,
    Chi = 4,
}

impl InstanceSeed {
    pub fn rng(self, stream: Stream) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(mix_seed(self.0, stream as u64))
    }
}

impl From<u64> for InstanceSeed {
    fn from(seed: u64) -> Self {
        InstanceSeed(seed)
    }
}

/// Bipartite graph between `m` checks and `n` variables; edges may repeat.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TannerGraph {
    n_vars: usize,
    check_degrees: Vec<u32>,
    /// `(check, var)`, grouped by check.
    edges: Vec<(u32, u32)>,
    var_degrees: Vec<u32>,
}

impl TannerGraph {
    pub fn from_edges(n_vars: usize, n_checks: usize, edges: Vec<(u32, u32)>) -> Result<Self, EnsembleError> {
        let mut check_degrees = vec![0u32; n_checks];
        let mut var_degrees = vec![0u32; n_vars];
        for &(c, v) in &edges {
            if c as usize >= n_checks || v as usize >= n_vars {
                return Err(EnsembleError::Malformed(format!(
                    "edge ({c}, {v}) outside {n_checks} checks x {n_vars} variables"
                )));
            }
            check_degrees[c as usize] += 1;
            var_degrees[v as usize] += 1;
        }
        Ok(TannerGraph {
            n_vars,
            check_degrees,
            edges,
            var_degrees,
        })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn n_checks(&self) -> usize {
        self.check_degrees.len()
    }

    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn check_degrees(&self) -> &[u32] {
        &self.check_degrees
    }

    pub fn var_degrees(&self) -> &[u32] {
        &self.var_degrees
    }

    /// Neighbour lists of every check, with multiplicity.
    pub fn check_adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj: Vec<Vec<u32>> = self.check_degrees.iter().map(|&d| Vec::with_capacity(d as usize)).collect();
        for &(c, v) in &self.edges {
            adj[c as usize].push(v);
        }
        adj
    }

    /// Neighbour lists of every variable, with multiplicity.
    pub fn var_adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj: Vec<Vec<u32>> = self.var_degrees.iter().map(|&d| Vec::with_capacity(d as usize)).collect();
        for &(c, v) in &self.edges {
            adj[v as usize].push(c);
        }
        adj
    }

    pub fn is_simple(&self) -> bool {
        let mut seen = HashSet::with_capacity(self.edges.len());
        self.edges.iter().all(|e| seen.insert(*e))
    }
}

/// Row-major sparse matrix over GF(q): per row, strictly increasing columns, no zeros.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseMatrix {
    field: Field,
    cols: usize,
    rows: Vec<Vec<(u32, FieldElement)>>,
}

impl SparseMatrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        SparseMatrix {
            field,
            cols,
            rows: vec![Vec::new(); rows],
        }
    }

    /// Sums duplicate positions and drops zeros.
    pub fn from_triplets<I>(field: Field, rows: usize, cols: usize, triplets: I) -> Result<Self, EnsembleError>
    where
        I: IntoIterator<Item = (usize, usize, FieldElement)>,
    {
        let mut out: Vec<Vec<(u32, FieldElement)>> = vec![Vec::new(); rows];
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(EnsembleError::Malformed(format!("entry ({r}, {c}) outside {rows}x{cols}")));
            }
            if v.repr() >= field.order() {
                return Err(FieldError::InvalidElement {
                    value: v.repr() as u64,
                    q: field.order(),
                }
                .into());
            }
            out[r].push((c as u32, v));
        }
        for row in &mut out {
            *row = canonical_row(&field, std::mem::take(row));
        }
        Ok(SparseMatrix { field, cols, rows: out })
    }

    /// Dense rows given as raw element codes.
    pub fn from_dense(field: Field, dense: &[Vec<u32>]) -> Result<Self, EnsembleError> {
        let cols = dense.first().map_or(0, Vec::len);
        let mut triplets = Vec::new();
        for (r, row) in dense.iter().enumerate() {
            if row.len() != cols {
                return Err(EnsembleError::Malformed("ragged dense matrix".into()));
            }
            for (c, &v) in row.iter().enumerate() {
                triplets.push((r, c, field.element(v as u64)?));
            }
        }
        Self::from_triplets(field, dense.len(), cols, triplets)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[(u32, FieldElement)] {
        &self.rows[i]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[(u32, FieldElement)]> {
        self.rows.iter().map(Vec::as_slice)
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        match self.rows[r].binary_search_by_key(&(c as u32), |e| e.0) {
            Ok(i) => self.rows[r][i].1,
            Err(_) => FieldElement::ZERO,
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<FieldElement>> {
        self.rows
            .iter()
            .map(|row| {
                let mut dense = vec![FieldElement::ZERO; self.cols];
                for &(c, v) in row {
                    dense[c as usize] = v;
                }
                dense
            })
            .collect()
    }

    /// New matrix with `extra` rows appended below.
    pub fn with_rows_appended(&self, extra: Vec<Vec<(u32, FieldElement)>>) -> Self {
        let mut rows = self.rows.clone();
        rows.extend(extra.into_iter().map(|r| canonical_row(&self.field, r)));
        SparseMatrix {
            field: self.field.clone(),
            cols: self.cols,
            rows,
        }
    }

    /// `M v`.
    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .fold(FieldElement::ZERO, |acc, &(c, a)| self.field.add(acc, self.field.mul(a, v[c as usize])))
            })
            .collect()
    }
}

fn canonical_row(field: &Field, mut row: Vec<(u32, FieldElement)>) -> Vec<(u32, FieldElement)> {
    row.sort_by_key(|e| e.0);
    let mut out: Vec<(u32, FieldElement)> = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 = field.add(last.1, v),
            _ => out.push((c, v)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

/// A sampled graph, its matrix and how hard the sampler had to work.
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: TannerGraph,
    pub matrix: SparseMatrix,
    pub seed: InstanceSeed,
    pub degree_attempts: usize,
    pub matching_attempts: usize,
}

/// Draws an instance according to `ens.mode`.
pub fn sample_instance(ens: &EnsembleSpec, seed: InstanceSeed) -> Result<Instance, EnsembleError> {
    if ens.mode == GraphMode::ExactDegrees {
        return sample_ldpc_exact(ens, seed);
    }
    ens.validate()?;
    let n = ens.n;
    if n == 0 {
        return Err(EnsembleError::EmptyInstance);
    }
    let budget = 10_000 * (n as f64).sqrt().ceil() as usize;
    let poisson = Poisson::new(ens.d_mean() * n as f64 / ens.k_mean())
        .map_err(|e| EnsembleError::Malformed(format!("Poisson mean: {e}")))?;
    let mut m_rng = seed.rng(Stream::M);
    let mut d_rng = seed.rng(Stream::VarDegrees);
    let mut k_rng = seed.rng(Stream::CheckDegrees);
    let mut var_degrees = vec![0u32; n];
    let mut check_degrees = Vec::new();
    let mut attempts = 0;
    loop {
        if attempts == budget {
            return Err(EnsembleError::RejectionBudgetExhausted {
                stage: "degree-conditioning",
                attempts,
            });
        }
        attempts += 1;
        let m = poisson.sample(&mut m_rng) as usize;
        let mut total_d = 0u64;
        for d in var_degrees.iter_mut() {
            *d = ens.ddist.sample(&mut d_rng);
            total_d += *d as u64;
        }
        check_degrees.clear();
        let mut total_k = 0u64;
        for _ in 0..m {
            let k = ens.kdist.sample(&mut k_rng);
            check_degrees.push(k);
            total_k += k as u64;
        }
        if total_d == total_k {
            break;
        }
    }
    let simple = ens.mode == GraphMode::Simple;
    let (graph, matching_attempts) = match_clones(&var_degrees, &check_degrees, simple, &mut seed.rng(Stream::Matching))?;
    let matrix = matrix_from_graph(&graph, &ens.field, &ens.chi, &mut seed.rng(Stream::Chi));
    Ok(Instance {
        graph,
        matrix,
        seed,
        degree_attempts: attempts,
        matching_attempts,
    })
}

fn integral(what: impl Into<String>, value: f64) -> Result<usize, EnsembleError> {
    let rounded = value.round();
    if rounded < 0.0 || (value - rounded).abs() > 1e-9 * value.abs().max(1.0) {
        return Err(EnsembleError::Integrality {
            what: what.into(),
            value,
        });
    }
    Ok(rounded as usize)
}

/// Degree multiset `{l repeated n P(d = l) times}` for a finitely supported law.
fn exact_counts(ens: &EnsembleSpec, check: bool, count: usize) -> Result<Vec<u32>, EnsembleError> {
    let (dist, role) = if check { (&ens.kdist, "m") } else { (&ens.ddist, "n") };
    if dist.max_degree().is_none() {
        return Err(EnsembleError::Integrality {
            what: "degree count of an infinitely supported law".into(),
            value: f64::INFINITY,
        });
    }
    let mut out = Vec::with_capacity(count);
    for &(l, p) in dist.table() {
        let c = integral(format!("{role} P({l})"), count as f64 * p)?;
        out.extend(std::iter::repeat_n(l, c));
    }
    if out.len() != count {
        return Err(EnsembleError::Integrality {
            what: format!("sum of {role} P(l)"),
            value: out.len() as f64,
        });
    }
    Ok(out)
}

/// Draws from the fixed-degree ensemble: exactly `n P(d = l)` variables and
/// `m P(k = l)` checks of each degree, `m = d n / k`, simple graph.
pub fn sample_ldpc_exact(ens: &EnsembleSpec, seed: InstanceSeed) -> Result<Instance, EnsembleError> {
    ens.validate()?;
    let n = ens.n;
    if n == 0 {
        return Err(EnsembleError::EmptyInstance);
    }
    let m = integral("m = d n / k", ens.d_mean() * n as f64 / ens.k_mean())?;
    let mut var_degrees = exact_counts(ens, false, n)?;
    let mut check_degrees = exact_counts(ens, true, m)?;
    // which variable gets which degree is itself uniform
    var_degrees.shuffle(&mut seed.rng(Stream::VarDegrees));
    check_degrees.shuffle(&mut seed.rng(Stream::CheckDegrees));
    let (graph, matching_attempts) = match_clones(&var_degrees, &check_degrees, true, &mut seed.rng(Stream::Matching))?;
    let matrix = matrix_from_graph(&graph, &ens.field, &ens.chi, &mut seed.rng(Stream::Chi));
    Ok(Instance {
        graph,
        matrix,
        seed,
        degree_attempts: 1,
        matching_attempts,
    })
}

/// Uniform pairing of variable clones with check clones (Fisher-Yates on the
/// variable side). In simple mode the pairing is redrawn until no pair repeats.
fn match_clones<R: Rng>(
    var_degrees: &[u32],
    check_degrees: &[u32],
    simple: bool,
    rng: &mut R,
) -> Result<(TannerGraph, usize), EnsembleError> {
    let mut clones: Vec<u32> = Vec::new();
    for (v, &d) in var_degrees.iter().enumerate() {
        clones.extend(std::iter::repeat_n(v as u32, d as usize));
    }
    let mut last_check = vec![u32::MAX; var_degrees.len()];
    let mut attempts = 0;
    loop {
        if attempts == MATCHING_ATTEMPTS {
            return Err(EnsembleError::RejectionBudgetExhausted {
                stage: "simple-matching",
                attempts,
            });
        }
        attempts += 1;
        clones.shuffle(rng);
        if !simple || is_simple_pairing(&clones, check_degrees, &mut last_check) {
            break;
        }
    }
    let mut edges = Vec::with_capacity(clones.len());
    let mut pos = 0;
    for (c, &k) in check_degrees.iter().enumerate() {
        for &v in &clones[pos..pos + k as usize] {
            edges.push((c as u32, v));
        }
        pos += k as usize;
    }
    let graph = TannerGraph {
        n_vars: var_degrees.len(),
        check_degrees: check_degrees.to_vec(),
        edges,
        var_degrees: var_degrees.to_vec(),
    };
    Ok((graph, attempts))
}

fn is_simple_pairing(clones: &[u32], check_degrees: &[u32], last_check: &mut [u32]) -> bool {
    last_check.fill(u32::MAX);
    let mut pos = 0;
    for (c, &k) in check_degrees.iter().enumerate() {
        for &v in &clones[pos..pos + k as usize] {
            if last_check[v as usize] == c as u32 {
                return false;
            }
            last_check[v as usize] = c as u32;
        }
        pos += k as usize;
    }
    true
}

/// One `chi` draw per edge, in edge order; parallel edges add up and zero sums are dropped.
pub fn matrix_from_graph<R: Rng + ?Sized>(graph: &TannerGraph, field: &Field, chi: &Chi, rng: &mut R) -> SparseMatrix {
    let mut rows: Vec<Vec<(u32, FieldElement)>> =
        graph.check_degrees.iter().map(|&k| Vec::with_capacity(k as usize)).collect();
    for &(c, v) in &graph.edges {
        rows[c as usize].push((v, chi.sample(field, rng)));
    }
    SparseMatrix {
        field: field.clone(),
        cols: graph.n_vars,
        rows: rows.into_iter().map(|r| canonical_row(field, r)).collect(),
    }
}

/// On-disk form of an instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceDump {
    pub q: u32,
    pub modulus: Vec<u32>,
    pub n: usize,
    pub m: usize,
    pub edges: Vec<[u32; 2]>,
    pub entries: Vec<[u32; 3]>,
    #[serde(default)]
    pub seed: Option<u64>,
}

impl InstanceDump {
    pub fn new(graph: &TannerGraph, matrix: &SparseMatrix, seed: Option<u64>) -> Self {
        let mut entries = Vec::with_capacity(matrix.nnz());
        for (r, row) in matrix.rows().enumerate() {
            for &(c, v) in row {
                entries.push([r as u32, c, v.repr()]);
            }
        }
        InstanceDump {
            q: matrix.field().order(),
            modulus: matrix.field().modulus().to_vec(),
            n: graph.n_vars(),
            m: graph.n_checks(),
            edges: graph.edges().iter().map(|&(c, v)| [c, v]).collect(),
            entries,
            seed,
        }
    }

    /// Rebuilds graph and matrix; the modulus must match the canonical one.
    pub fn into_parts(self) -> Result<(TannerGraph, SparseMatrix), EnsembleError> {
        let field = Field::new(self.q)?;
        if field.modulus() != self.modulus.as_slice() {
            return Err(FieldError::ModulusMismatch {
                q: self.q,
                modulus: self.modulus,
                expected: field.modulus().to_vec(),
            }
            .into());
        }
        let graph = TannerGraph::from_edges(self.n, self.m, self.edges.iter().map(|e| (e[0], e[1])).collect())?;
        let mut triplets = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            triplets.push((e[0] as usize, e[1] as usize, field.element(e[2] as u64)?));
        }
        let matrix = SparseMatrix::from_triplets(field, self.m, self.n, triplets)?;
        Ok((graph, matrix))
    }

    pub fn write(&self, path: &Path) -> Result<(), EnsembleError> {
        std::fs::write(path, serde_json::to_string(self)?)?;
        Ok(())
    }

    pub fn read(path: &Path) -> Result<Self, EnsembleError> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::degrees::DegreeDistribution;

    fn spec(d: DegreeDistribution, k: DegreeDistribution, q: u32, n: usize) -> EnsembleSpec {
        EnsembleSpec::new(Field::new(q).unwrap(), d, k).unwrap().with_n(n).unwrap()
    }

    fn exact(d: DegreeDistribution, k: DegreeDistribution, q: u32, n: usize) -> EnsembleSpec {
        EnsembleSpec::new(Field::new(q).unwrap(), d, k)
            .unwrap()
            .with_mode(GraphMode::ExactDegrees)
            .with_n(n)
            .unwrap()
    }

    fn mixed() -> DegreeDistribution {
        DegreeDistribution::explicit([(3, 0.8), (15, 0.2)]).unwrap()
    }

    #[test]
    fn conditioning_is_enforced() {
        let e = spec(mixed(), mixed(), 2, 30).with_mode(GraphMode::Multigraph);
        for s in 0..20 {
            let inst = sample_instance(&e, InstanceSeed(s)).unwrap();
            let sd: u32 = inst.graph.var_degrees().iter().sum();
            let sk: u32 = inst.graph.check_degrees().iter().sum();
            assert_eq!(sd, sk);
            assert_eq!(sd as usize, inst.graph.edges().len());
        }
    }

    #[test]
    fn regular_forces_m() {
        let e = spec(DegreeDistribution::point(3), DegreeDistribution::point(3), 2, 12);
        for s in 0..20 {
            let inst = sample_instance(&e, InstanceSeed(s)).unwrap();
            assert_eq!(inst.graph.n_checks(), 12);
            assert!(inst.graph.is_simple());
        }
    }

    #[test]
    fn divisibility() {
        let e = EnsembleSpec::new(Field::new(2).unwrap(), mixed(), mixed()).unwrap();
        let mut bad = e.clone();
        bad.n = 31;
        assert!(matches!(
            sample_instance(&bad, InstanceSeed(1)),
            Err(EnsembleError::Divisibility { n: 31, gcd: 3 })
        ));
    }

    #[test]
    fn exact_degree_examples() {
        let e = exact(DegreeDistribution::point(3), DegreeDistribution::point(6), 2, 10);
        let inst = sample_instance(&e, InstanceSeed(0)).unwrap();
        assert_eq!(inst.graph.n_checks(), 5);
        assert!(inst.graph.check_degrees().iter().all(|&k| k == 6));

        let d = DegreeDistribution::explicit([(2, 0.5), (4, 0.5)]).unwrap();
        let e = exact(d, DegreeDistribution::point(3), 3, 10);
        let inst = sample_ldpc_exact(&e, InstanceSeed(4)).unwrap();
        assert_eq!(inst.graph.n_checks(), 10);
        let mut degs = inst.graph.var_degrees().to_vec();
        degs.sort_unstable();
        assert_eq!(degs, [2, 2, 2, 2, 2, 4, 4, 4, 4, 4]);
        assert!(inst.graph.is_simple());

        let e = exact(mixed(), mixed(), 2, 33);
        assert!(matches!(sample_ldpc_exact(&e, InstanceSeed(0)), Err(EnsembleError::Integrality { .. })));
    }

    #[test]
    fn cancellations() {
        let g = TannerGraph::from_edges(3, 1, vec![(0, 0), (0, 0), (0, 1)]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let one = Chi::Constant(FieldElement::ONE);
        let m2 = matrix_from_graph(&g, &Field::new(2).unwrap(), &one, &mut rng);
        assert_eq!(m2.row(0), &[(1, FieldElement::ONE)]);
        let gf3 = Field::new(3).unwrap();
        let m3 = matrix_from_graph(&g, &gf3, &one, &mut rng);
        assert_eq!(m3.row(0), &[(0, gf3.element(2).unwrap()), (1, FieldElement::ONE)]);
    }

    #[test]
    fn incidence_matrix_for_constant_chi() {
        let e = spec(DegreeDistribution::point(3), DegreeDistribution::point(3), 2, 12)
            .with_chi(Chi::Constant(FieldElement::ONE))
            .unwrap();
        let inst = sample_instance(&e, InstanceSeed(9)).unwrap();
        for (c, row) in inst.matrix.rows().enumerate() {
            assert_eq!(row.len(), 3);
            for &(v, x) in row {
                assert_eq!(x, FieldElement::ONE);
                assert!(inst.graph.edges().contains(&(c as u32, v)));
            }
        }
    }

    #[test]
    fn reproducible() {
        let e = spec(mixed(), DegreeDistribution::point(3), 9, 60).with_mode(GraphMode::Multigraph);
        let a = sample_instance(&e, InstanceSeed(77)).unwrap();
        let b = sample_instance(&e, InstanceSeed(77)).unwrap();
        assert_eq!(a.graph, b.graph);
        assert_eq!(a.matrix, b.matrix);
        let c = sample_instance(&e, InstanceSeed(78)).unwrap();
        assert_ne!(a.graph, c.graph);
    }

    #[test]
    fn degree_accounting() {
        let d = DegreeDistribution::explicit([(1, 0.3), (2, 0.3), (5, 0.4)]).unwrap();
        let k = DegreeDistribution::explicit([(3, 0.5), (4, 0.5)]).unwrap();
        for mode in [GraphMode::Simple, GraphMode::Multigraph] {
            let e = spec(d.clone(), k.clone(), 4, 200).with_mode(mode);
            let inst = sample_instance(&e, InstanceSeed(5)).unwrap();
            let mut col_counts = vec![0u32; 200];
            for (i, row) in inst.matrix.rows().enumerate() {
                let ki = inst.graph.check_degrees()[i] as usize;
                if mode == GraphMode::Simple {
                    assert_eq!(row.len(), ki);
                } else {
                    assert!(row.len() <= ki);
                }
                for &(c, _) in row {
                    col_counts[c as usize] += 1;
                }
            }
            for (j, &cnt) in col_counts.iter().enumerate() {
                assert!(cnt <= inst.graph.var_degrees()[j]);
            }
        }
    }

    #[test]
    fn dump_round_trip() {
        let e = spec(mixed(), mixed(), 8, 30).with_mode(GraphMode::Multigraph);
        let inst = sample_instance(&e, InstanceSeed(3)).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("inst.json");
        InstanceDump::new(&inst.graph, &inst.matrix, Some(3)).write(&path).unwrap();
        let back = InstanceDump::read(&path).unwrap();
        assert_eq!(back.seed, Some(3));
        let (g, m) = back.into_parts().unwrap();
        assert_eq!(g, inst.graph);
        assert_eq!(m, inst.matrix);
    }

    #[test]
    fn dump_rejects_foreign_modulus() {
        let mut dump = InstanceDump {
            q: 4,
            modulus: vec![1, 1, 1],
            n: 1,
            m: 0,
            edges: vec![],
            entries: vec![],
            seed: None,
        };
        assert!(dump.clone().into_parts().is_ok());
        dump.modulus = vec![1, 0, 1];
        assert!(matches!(dump.into_parts(), Err(EnsembleError::Field(FieldError::ModulusMismatch { .. }))));
    }

    #[test]
    fn triplets_canonicalize() {
        let f = Field::new(5).unwrap();
        let el = |v| f.element(v).unwrap();
        let m = SparseMatrix::from_triplets(f.clone(), 2, 3, [(0, 2, el(1)), (0, 0, el(3)), (0, 2, el(4)), (1, 1, el(0))]).unwrap();
        assert_eq!(m.row(0), &[(0, el(3))]);
        assert!(m.row(1).is_empty());
        assert!(SparseMatrix::from_triplets(f.clone(), 1, 1, [(0, 1, el(1))]).is_err());
    }
}
