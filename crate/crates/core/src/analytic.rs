//! Closed-form predictions for the random matrix ensemble.
//!
//! With `D`, `K` the pgfs of the variable and check degrees and `d`, `k` their
//! means, the rank of the `m x n` matrix satisfies
//!
//! ```text
//! rank / n -> 1 - max_{a in [0,1]} Phi(a),
//! Phi(a) = D(1 - K'(a)/k) + (d/k) (K(a) + (1 - a) K'(a) - 1),
//! ```
//!
//! and `Phi'(a) = (d/k) K''(a) phi(a)` with `phi(a) = 1 - a - D'(1 - K'(a)/k) / d`.
//! The largest stationary point `rho` drives the 2-core sizes and the
//! peeling bound `rank / n <= 1 - max(Phi(0), Phi(rho))`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::degrees::{DegreeDistribution, Family};
use crate::gf::{Field, FieldElement};
use crate::seed::mix_seed;

/// Grid used for root scanning and maximization.
pub const GRID_POINTS: usize = 4097;
/// Tolerance for treating a value of `phi` as zero.
pub const ZERO_TOL: f64 = 1e-12;
/// Maxima closer than this are tied, and resolved toward the smaller argument.
pub const TIE_TOL: f64 = 1e-12;
const BISECTION_TOL: f64 = 1e-12;
const GOLDEN_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalyticError {
    #[error("alpha = {0} is outside [0, 1]")]
    Domain(f64),
    #[error("invalid ensemble: {0}")]
    InvalidEnsemble(String),
    #[error("n = {n} is not divisible by the gcd {gcd} of the check-degree support")]
    Divisibility { n: usize, gcd: u32 },
    #[error("density evolution did not converge in {iters} iterations (last step {last_step:e})")]
    NonConvergence { iters: usize, last_step: f64 },
    #[error("num_samples must be at least 1")]
    NoSamples,
}

/// Law of the nonzero entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind", content = "value")]
pub enum Chi {
    /// Uniform on F_q \ {0}.
    Uniform,
    /// Always the given nonzero element.
    Constant(FieldElement),
}

impl Chi {
    pub fn sample<R: Rng + ?Sized>(&self, field: &Field, rng: &mut R) -> FieldElement {
        match *self {
            Chi::Uniform => field.random_nonzero(rng),
            Chi::Constant(c) => c,
        }
    }
}

/// How the Tanner graph is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphMode {
    /// Configuration model conditioned on having no repeated (check, variable) pair.
    #[default]
    Simple,
    /// Raw configuration model; repeated pairs sum their entries.
    Multigraph,
    /// Degree counts fixed to `n P(d = l)` and `m P(k = l)`, simple graph.
    ExactDegrees,
}

impl std::str::FromStr for GraphMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "simple" => Ok(GraphMode::Simple),
            "multigraph" => Ok(GraphMode::Multigraph),
            "exact-degrees" | "exact" => Ok(GraphMode::ExactDegrees),
            _ => Err(format!("unknown graph mode '{s}' (simple, multigraph, exact-degrees)")),
        }
    }
}

/// Everything needed to describe (and sample) the random matrix.
#[derive(Debug, Clone)]
pub struct EnsembleSpec {
    pub field: Field,
    pub ddist: DegreeDistribution,
    pub kdist: DegreeDistribution,
    pub chi: Chi,
    /// Number of variables; 0 for purely analytic use.
    pub n: usize,
    pub mode: GraphMode,
    /// Permit variables of degree 0 (isolated columns).
    pub allow_isolated: bool,
}

impl EnsembleSpec {
    /// Analytic ensemble (`n = 0`) with uniform `chi` in simple mode.
    pub fn new(field: Field, ddist: DegreeDistribution, kdist: DegreeDistribution) -> Result<Self, AnalyticError> {
        let spec = EnsembleSpec {
            field,
            ddist,
            kdist,
            chi: Chi::Uniform,
            n: 0,
            mode: GraphMode::Simple,
            allow_isolated: false,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// Like [`new`](Self::new) but the variable degree may be 0.
    pub fn with_isolated_variables(
        field: Field,
        ddist: DegreeDistribution,
        kdist: DegreeDistribution,
    ) -> Result<Self, AnalyticError> {
        let spec = EnsembleSpec {
            field,
            ddist,
            kdist,
            chi: Chi::Uniform,
            n: 0,
            mode: GraphMode::Simple,
            allow_isolated: true,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_n(mut self, n: usize) -> Result<Self, AnalyticError> {
        self.n = n;
        self.validate()?;
        Ok(self)
    }

    pub fn with_mode(mut self, mode: GraphMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_chi(mut self, chi: Chi) -> Result<Self, AnalyticError> {
        self.chi = chi;
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<(), AnalyticError> {
        let kmin = self.kdist.min_degree();
        if kmin < 3 {
            return Err(AnalyticError::InvalidEnsemble(format!(
                "check degrees must be >= 3, support starts at {kmin}"
            )));
        }
        let dmin = self.ddist.min_degree();
        if dmin < 1 && !self.allow_isolated {
            return Err(AnalyticError::InvalidEnsemble(
                "variable degrees must be >= 1 (enable isolated variables to allow degree 0)".into(),
            ));
        }
        if self.ddist.mean() <= 0.0 {
            return Err(AnalyticError::InvalidEnsemble("variable degree mean must be positive".into()));
        }
        if let Chi::Constant(c) = self.chi {
            if c.is_zero() || c.repr() >= self.field.order() {
                return Err(AnalyticError::InvalidEnsemble(format!(
                    "chi constant {c} must be a nonzero element of GF({})",
                    self.field.order()
                )));
            }
        }
        // the exact-degree ensemble has its own integrality conditions instead
        let gcd = self.kdist.gcd_support();
        if self.n > 0 && self.mode != GraphMode::ExactDegrees && !self.n.is_multiple_of(gcd as usize) {
            return Err(AnalyticError::Divisibility { n: self.n, gcd });
        }
        Ok(())
    }

    pub fn d_mean(&self) -> f64 {
        self.ddist.pgf_unchecked(1.0, 1)
    }

    pub fn k_mean(&self) -> f64 {
        self.kdist.pgf_unchecked(1.0, 1)
    }

    fn laws(&self) -> Laws<'_> {
        Laws {
            d: &self.ddist,
            k: &self.kdist,
            dm: self.d_mean(),
            km: self.k_mean(),
        }
    }
}

struct Laws<'a> {
    d: &'a DegreeDistribution,
    k: &'a DegreeDistribution,
    dm: f64,
    km: f64,
}

impl Laws<'_> {
    /// `1 - K'(a)/k`, clamped into [0, 1] against rounding.
    #[inline]
    fn inner(&self, a: f64) -> f64 {
        (1.0 - self.k.pgf_unchecked(a, 1) / self.km).clamp(0.0, 1.0)
    }

    fn big_phi(&self, a: f64) -> f64 {
        let k0 = self.k.pgf_unchecked(a, 0);
        let k1 = self.k.pgf_unchecked(a, 1);
        self.d.pgf_unchecked(self.inner(a), 0) + self.dm / self.km * (k0 + (1.0 - a) * k1 - 1.0)
    }

    fn small_phi(&self, a: f64) -> f64 {
        1.0 - a - self.d.pgf_unchecked(self.inner(a), 1) / self.dm
    }

    fn small_phi_deriv(&self, a: f64) -> f64 {
        -1.0 + self.d.pgf_unchecked(self.inner(a), 2) * self.k.pgf_unchecked(a, 2) / (self.dm * self.km)
    }

    /// Survival fraction of variables given edge survival `x`.
    fn core_vars(&self, x: f64) -> f64 {
        let t = self.k.pgf_unchecked(x, 1) / self.km;
        let inner = (1.0 - t).clamp(0.0, 1.0);
        (1.0 - self.d.pgf_unchecked(inner, 0) - t * self.d.pgf_unchecked(inner, 1)).clamp(0.0, 1.0)
    }

    fn core_checks(&self, x: f64) -> f64 {
        self.dm / self.km * self.k.pgf_unchecked(x, 0)
    }
}

fn check_alpha(alpha: f64) -> Result<(), AnalyticError> {
    if (0.0..=1.0).contains(&alpha) {
        Ok(())
    } else {
        Err(AnalyticError::Domain(alpha))
    }
}

fn grid(i: usize) -> f64 {
    i as f64 / (GRID_POINTS - 1) as f64
}

/// `Phi(alpha)`; its maximum over [0, 1] is the asymptotic normalized nullity.
pub fn phi(ens: &EnsembleSpec, alpha: f64) -> Result<f64, AnalyticError> {
    check_alpha(alpha)?;
    Ok(ens.laws().big_phi(alpha))
}

/// `phi(alpha) = 1 - alpha - D'(1 - K'(alpha)/k) / d`.
pub fn phi_small(ens: &EnsembleSpec, alpha: f64) -> Result<f64, AnalyticError> {
    check_alpha(alpha)?;
    Ok(ens.laws().small_phi(alpha))
}

/// `phi'(alpha) = -1 + D''(1 - K'(alpha)/k) K''(alpha) / (d k)`.
pub fn phi_small_deriv(ens: &EnsembleSpec, alpha: f64) -> Result<f64, AnalyticError> {
    check_alpha(alpha)?;
    Ok(ens.laws().small_phi_deriv(alpha))
}

fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    while hi - lo > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

fn golden_max<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > GOLDEN_TOL {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    let x = 0.5 * (lo + hi);
    (x, f(x))
}

/// Zeros of `phi` (equivalently of `Phi'`) in `(0, 1]`, ascending. `alpha = 0`
/// is always stationary and is not listed.
pub fn stationary_points(ens: &EnsembleSpec) -> Vec<f64> {
    let laws = ens.laws();
    let f = |a: f64| laws.small_phi(a);
    let values: Vec<f64> = (0..GRID_POINTS).map(|i| f(grid(i))).collect();
    let mut roots = Vec::new();
    for i in 1..GRID_POINTS - 1 {
        let (a, b) = (values[i], values[i + 1]);
        if a.abs() <= ZERO_TOL {
            roots.push(grid(i));
        } else if b.abs() > ZERO_TOL && (a > 0.0) != (b > 0.0) {
            roots.push(bisect(f, grid(i), grid(i + 1)));
        }
    }
    if values[GRID_POINTS - 1].abs() <= ZERO_TOL {
        roots.push(1.0);
    }
    roots
}

/// `rho = max { x in [0, 1] : Phi'(x) = 0 }`.
///
/// Scans `phi` downward from 1 on the grid and bisects the first sign change.
/// `phi(1) = -P(d = 1)/d`, so `rho = 1` as soon as there are no degree-one
/// variables.
pub fn rho(ens: &EnsembleSpec) -> f64 {
    let laws = ens.laws();
    let f = |a: f64| laws.small_phi(a);
    let mut upper = f(1.0);
    if upper.abs() <= ZERO_TOL {
        return 1.0;
    }
    for i in (1..GRID_POINTS - 1).rev() {
        let x = grid(i);
        let v = f(x);
        if v.abs() <= ZERO_TOL {
            return x;
        }
        if (v > 0.0) != (upper > 0.0) {
            return bisect(f, x, grid(i + 1));
        }
        upper = v;
    }
    0.0
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhiMax {
    pub alpha: f64,
    pub value: f64,
}

/// Global maximum of `Phi` on [0, 1]: grid scan, golden-section refinement of
/// every local-maximum bracket, ties resolved toward the smallest argument.
pub fn max_phi(ens: &EnsembleSpec) -> PhiMax {
    let laws = ens.laws();
    let f = |a: f64| laws.big_phi(a);
    let values: Vec<f64> = (0..GRID_POINTS).map(|i| f(grid(i))).collect();
    let last = GRID_POINTS - 1;
    let mut candidates = vec![(0.0, values[0]), (1.0, values[last])];
    for i in 0..GRID_POINTS {
        let left = if i == 0 { f64::NEG_INFINITY } else { values[i - 1] };
        let right = if i == last { f64::NEG_INFINITY } else { values[i + 1] };
        if values[i] >= left && values[i] >= right {
            candidates.push((grid(i), values[i]));
            let lo = grid(i.saturating_sub(1));
            let hi = grid((i + 1).min(last));
            candidates.push(golden_max(f, lo, hi));
        }
    }
    let best = candidates.iter().map(|c| c.1).fold(f64::NEG_INFINITY, f64::max);
    let (alpha, value) = candidates
        .into_iter()
        .filter(|c| c.1 >= best - TIE_TOL)
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .expect("candidate list is non-empty");
    PhiMax { alpha, value }
}

/// `lim rank(A)/n = 1 - max Phi`.
pub fn rank_limit(ens: &EnsembleSpec) -> f64 {
    1.0 - max_phi(ens).value
}

/// Design rate of the LDPC code: `max Phi`.
pub fn ldpc_rate(ens: &EnsembleSpec) -> f64 {
    max_phi(ens).value
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoreFractions {
    /// `n* / n`
    pub vars: f64,
    /// `m* / n`
    pub checks: f64,
}

/// Limiting 2-core sizes evaluated at [`rho`].
pub fn core_fractions(ens: &EnsembleSpec) -> CoreFractions {
    core_fractions_at(ens, rho(ens))
}

pub fn core_fractions_at(ens: &EnsembleSpec, x: f64) -> CoreFractions {
    let laws = ens.laws();
    CoreFractions {
        vars: laws.core_vars(x),
        checks: laws.core_checks(x),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DensityEvolution {
    /// Fixed point of `rho_{t+1} = 1 - D'(1 - K'(rho_t)/k) / d` from `rho_0 = 1`.
    pub rho: f64,
    /// Variable survival fraction at the fixed point.
    pub lambda: f64,
    pub iters: usize,
}

/// Iterates the edge-survival recursion of parallel stripping from `rho_0 = 1`.
pub fn density_evolution(ens: &EnsembleSpec, max_iters: usize, tol: f64) -> Result<DensityEvolution, AnalyticError> {
    let laws = ens.laws();
    let mut current = 1.0;
    let mut step = f64::INFINITY;
    for t in 0..max_iters {
        let next = (1.0 - laws.d.pgf_unchecked(laws.inner(current), 1) / laws.dm).clamp(0.0, 1.0);
        step = (next - current).abs();
        current = next;
        if step < tol {
            return Ok(DensityEvolution {
                rho: current,
                lambda: laws.core_vars(current),
                iters: t + 1,
            });
        }
    }
    Err(AnalyticError::NonConvergence { iters: max_iters, last_step: step })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tightness {
    /// Both laws lie in the families where the peeling bound is known to be exact.
    Yes,
    /// Outside those families; nothing is claimed.
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TightnessReport {
    pub tight: Tightness,
    /// `P(d=1) = 0` and `2(k-1) P(d=2) > d`: the 2-core is the whole graph and may be unstable.
    pub exception_flag: bool,
    pub phi_small_deriv_at_rho: f64,
    /// `phi'(rho) < 0`, the hypothesis under which the core fractions are the limit.
    pub phi_deriv_negative: bool,
    /// `max Phi - max(Phi(0), Phi(rho))`; positive means the peeling bound is not tight.
    pub core_bound_gap: f64,
}

fn in_tight_family(dist: &DegreeDistribution, min_ell: u32) -> bool {
    match dist.family() {
        Family::TruncatedPoisson { ell, .. } => *ell >= min_ell,
        _ => dist.is_degenerate(),
    }
}

pub fn tightness_report(ens: &EnsembleSpec) -> TightnessReport {
    let laws = ens.laws();
    let r = rho(ens);
    let deriv = laws.small_phi_deriv(r);
    let tight = if in_tight_family(&ens.ddist, 1) && in_tight_family(&ens.kdist, 3) {
        Tightness::Yes
    } else {
        Tightness::Unknown
    };
    let exception_flag =
        ens.ddist.prob(1) == 0.0 && 2.0 * (laws.km - 1.0) * ens.ddist.prob(2) > laws.dm;
    let bound = laws.big_phi(0.0).max(laws.big_phi(r));
    TightnessReport {
        tight,
        exception_flag,
        phi_small_deriv_at_rho: deriv,
        phi_deriv_negative: deriv < 0.0,
        core_bound_gap: max_phi(ens).value - bound,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalyticReport {
    pub alpha_star: f64,
    pub phi_max: f64,
    pub rho: f64,
    pub phi_at_rho: f64,
    pub phi_at_zero: f64,
    pub rank_limit: f64,
    pub rate: f64,
    pub core_var_fraction: f64,
    pub core_check_fraction: f64,
    pub tight: Tightness,
    pub exception_flag: bool,
    pub phi_small_deriv_at_rho: f64,
    pub phi_deriv_negative: bool,
    pub core_bound_gap: f64,
    /// Zeros of `phi` in (0, 1].
    pub stationary_points: Vec<f64>,
}

pub fn analyze(ens: &EnsembleSpec) -> AnalyticReport {
    let laws = ens.laws();
    let max = max_phi(ens);
    let r = rho(ens);
    let core = core_fractions_at(ens, r);
    let tight = tightness_report(ens);
    AnalyticReport {
        alpha_star: max.alpha,
        phi_max: max.value,
        rho: r,
        phi_at_rho: laws.big_phi(r),
        phi_at_zero: laws.big_phi(0.0),
        rank_limit: 1.0 - max.value,
        rate: max.value,
        core_var_fraction: core.vars,
        core_check_fraction: core.checks,
        tight: tight.tight,
        exception_flag: tight.exception_flag,
        phi_small_deriv_at_rho: tight.phi_small_deriv_at_rho,
        phi_deriv_negative: tight.phi_deriv_negative,
        core_bound_gap: tight.core_bound_gap,
        stationary_points: stationary_points(ens),
    }
}

/// `Phi(rho) > Phi(0)`: the maximizer has left 0 for the core solution.
pub fn core_solution_wins(ens: &EnsembleSpec) -> bool {
    let laws = ens.laws();
    laws.big_phi(rho(ens)) > laws.big_phi(0.0)
}

/// Bisects a one-parameter family on `[lo, hi]` for the point where
/// [`core_solution_wins`] switches from false to true.
pub fn locate_transition<F>(family: F, mut lo: f64, mut hi: f64, tol: f64) -> Result<f64, AnalyticError>
where
    F: Fn(f64) -> Result<EnsembleSpec, AnalyticError>,
{
    if core_solution_wins(&family(lo)?) || !core_solution_wins(&family(hi)?) {
        return Err(AnalyticError::InvalidEnsemble(format!(
            "[{lo}, {hi}] does not bracket the transition"
        )));
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if core_solution_wins(&family(mid)?) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `log_q` of the variable factor of the Bethe functional for a variable whose
/// `i`-th check receives only frozen messages iff `checks_all_frozen[i]`.
///
/// A check with any uniform incoming message contributes `1/q` for every
/// value of the variable; a fully frozen one pins the variable to 0.
pub fn bethe_variable_term(checks_all_frozen: &[bool]) -> f64 {
    let d = checks_all_frozen.len();
    let uniform = checks_all_frozen.iter().filter(|&&f| !f).count();
    if uniform == d {
        1.0 - d as f64
    } else {
        -(uniform as f64)
    }
}

/// `(k-1) log_q` of the check factor: `0` if all `k` messages are frozen, else `-(k-1)`.
pub fn bethe_check_term(k: u32, all_frozen: bool) -> f64 {
    if all_frozen {
        0.0
    } else {
        -((k - 1) as f64)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetheEstimate {
    pub estimate: f64,
    pub std_error: f64,
}

const BETHE_CHUNK: usize = 4096;

/// Monte Carlo estimate of the Bethe free entropy at `pi_alpha`, the mixture
/// putting weight `alpha` on the frozen message `delta_0` and `1 - alpha` on
/// the uniform message. Chunks are seeded by index, so the result does not
/// depend on the number of threads.
pub fn bethe_at_alpha(
    ens: &EnsembleSpec,
    alpha: f64,
    num_samples: usize,
    seed: u64,
) -> Result<BetheEstimate, AnalyticError> {
    check_alpha(alpha)?;
    if num_samples == 0 {
        return Err(AnalyticError::NoSamples);
    }
    let kbiased = ens.kdist.size_biased();
    let ratio = ens.d_mean() / ens.k_mean();
    let chunks = num_samples.div_ceil(BETHE_CHUNK);
    let partials: Vec<(f64, f64)> = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut rng = ChaCha8Rng::seed_from_u64(mix_seed(seed, chunk as u64));
            let count = BETHE_CHUNK.min(num_samples - chunk * BETHE_CHUNK);
            let mut frozen_flags = Vec::new();
            let (mut sum, mut sumsq) = (0.0, 0.0);
            for _ in 0..count {
                let d = ens.ddist.sample(&mut rng);
                frozen_flags.clear();
                for _ in 0..d {
                    let khat = kbiased.sample(&mut rng);
                    frozen_flags.push((1..khat).all(|_| rng.random::<f64>() < alpha));
                }
                let k = ens.kdist.sample(&mut rng);
                let all_frozen = (0..k).all(|_| rng.random::<f64>() < alpha);
                let value = bethe_variable_term(&frozen_flags) - ratio * bethe_check_term(k, all_frozen);
                sum += value;
                sumsq += value * value;
            }
            (sum, sumsq)
        })
        .collect();
    let (sum, sumsq) = partials.iter().fold((0.0, 0.0), |acc, p| (acc.0 + p.0, acc.1 + p.1));
    let n = num_samples as f64;
    let mean = sum / n;
    let var = if num_samples > 1 {
        ((sumsq - n * mean * mean) / (n - 1.0)).max(0.0)
    } else {
        0.0
    };
    Ok(BetheEstimate {
        estimate: mean,
        std_error: (var / n).sqrt(),
    })
}
