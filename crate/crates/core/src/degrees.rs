//! Degree distributions and their probability generating functions.
//!
//! Distributions are role-agnostic: the check-degree (`k >= 3`) and
//! variable-degree (`d >= 1`) constraints are enforced by
//! [`EnsembleSpec`](crate::analytic::EnsembleSpec).
//!
//! Truncated Poisson laws `Po_{>=l}(lambda)` are evaluated analytically
//! through the tail exponential sums `h_r(x) = sum_{j >= r} x^j / j!`, so
//! their generating functions are never truncated. Sampling uses a table cut
//! where the remaining tail mass drops below [`TAIL_MASS`].

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{weighted::WeightedAliasIndex, Distribution};
use thiserror::Error;

/// Tail mass dropped when tabulating truncated Poisson laws.
pub const TAIL_MASS: f64 = 1e-14;
/// Explicit pmfs summing to within this of 1 are renormalized; otherwise rejected.
pub const NORMALIZATION_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DegreeError {
    #[error("x = {0} is outside [0, 1]")]
    Domain(f64),
    #[error("pgf derivative order {0} not supported (0..=3)")]
    Order(u32),
    #[error("no truncated Poisson Po_>={ell} has mean {mean} (requires mean > {ell})")]
    Infeasible { ell: u32, mean: f64 },
    #[error("probabilities sum to {0}, not 1")]
    NotNormalized(f64),
    #[error("invalid probability {prob} for degree {degree}")]
    BadProbability { degree: u32, prob: f64 },
    #[error("empty support")]
    EmptySupport,
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("cannot parse distribution '{input}': {reason}")]
    Parse { input: String, reason: String },
}

/// Parametric family a distribution was built from.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Point(u32),
    TruncatedPoisson { ell: u32, lambda: f64 },
    Explicit,
    PowerLawCutoff { exponent: f64, min: u32, max: u32 },
}

/// `h_r(x) = sum_{j >= r} x^j / j!`, with `h_r = e^x` for `r <= 0`.
pub fn h_function(r: i32, x: f64) -> f64 {
    if r <= 0 {
        return x.exp();
    }
    let full = x.exp();
    let mut head = 0.0;
    let mut term = 1.0;
    for j in 0..r {
        head += term;
        term *= x / (j + 1) as f64;
    }
    let subtracted = full - head;
    if subtracted > 1e-3 * full {
        return subtracted;
    }
    // cancellation would eat more than three digits: sum the tail directly
    let mut term = 1.0;
    for j in 1..=r {
        term *= x / j as f64;
    }
    let mut sum = 0.0;
    let mut j = r as f64;
    while term > 0.0 && term > 1e-18 * sum {
        sum += term;
        j += 1.0;
        term *= x / j;
    }
    sum
}

fn falling_factorial(l: u32, order: u32) -> f64 {
    (0..order).map(|i| (l - i) as f64).product()
}

/// Mean of `Po_{>=ell}(lambda)`.
pub fn truncated_poisson_mean(ell: u32, lambda: f64) -> f64 {
    lambda * h_function(ell as i32 - 1, lambda) / h_function(ell as i32, lambda)
}

/// Solves `lambda * h_{ell-1}(lambda) / h_ell(lambda) = target_mean` by bisection.
pub fn solve_truncated_poisson(ell: u32, target_mean: f64) -> Result<f64, DegreeError> {
    if !target_mean.is_finite() || target_mean <= ell as f64 {
        return Err(DegreeError::Infeasible { ell, mean: target_mean });
    }
    let (mut lo, mut hi) = (1e-12, (10.0 * target_mean).max(50.0));
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if truncated_poisson_mean(ell, mid) < target_mean {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A law on nonnegative integer degrees.
#[derive(Debug, Clone)]
pub struct DegreeDistribution {
    family: Family,
    /// (degree, probability) with positive probabilities, ascending degree.
    /// For truncated Poisson laws this is the sampling table (tail cut).
    table: Vec<(u32, f64)>,
    mean: f64,
    sampler: Sampler,
}

#[derive(Debug, Clone)]
enum Sampler {
    Point(u32),
    Alias(WeightedAliasIndex<f64>),
    InverseCdf(Vec<f64>),
}

impl PartialEq for DegreeDistribution {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family && self.table == other.table
    }
}

impl DegreeDistribution {
    pub fn point(c: u32) -> DegreeDistribution {
        DegreeDistribution {
            family: Family::Point(c),
            table: vec![(c, 1.0)],
            mean: c as f64,
            sampler: Sampler::Point(c),
        }
    }

    /// Builds an explicit pmf; normalizes when the total is within
    /// [`NORMALIZATION_SLACK`] of one. Repeated degrees are merged.
    pub fn explicit<I>(pmf: I) -> Result<DegreeDistribution, DegreeError>
    where
        I: IntoIterator<Item = (u32, f64)>,
    {
        let table = normalize(pmf)?;
        Ok(Self::from_table(Family::Explicit, table))
    }

    pub fn truncated_poisson(ell: u32, lambda: f64) -> Result<DegreeDistribution, DegreeError> {
        if !lambda.is_finite() || lambda <= 0.0 {
            return Err(DegreeError::Parameter(format!("lambda must be positive, got {lambda}")));
        }
        let norm = h_function(ell as i32, lambda);
        let mut table = Vec::new();
        let mut cumulative = Vec::new();
        let mut acc = 0.0;
        // pmf(j) = lambda^j / j! / h_ell(lambda), built in log space
        let (ln_lambda, ln_norm) = (lambda.ln(), norm.ln());
        let mut ln_fact = (1..=ell).map(|j| (j as f64).ln()).sum::<f64>();
        let mut j = ell;
        loop {
            let prob = (j as f64 * ln_lambda - ln_fact - ln_norm).exp();
            if prob > 0.0 {
                table.push((j, prob));
                acc += prob;
                cumulative.push(acc);
            }
            if acc >= 1.0 - TAIL_MASS || (j as f64 > lambda && prob < 1e-300) {
                break;
            }
            j += 1;
            ln_fact += (j as f64).ln();
        }
        let total = acc;
        for c in &mut cumulative {
            *c /= total;
        }
        Ok(DegreeDistribution {
            family: Family::TruncatedPoisson { ell, lambda },
            mean: truncated_poisson_mean(ell, lambda),
            table,
            sampler: Sampler::InverseCdf(cumulative),
        })
    }

    /// `Po_{>=ell}(lambda)` with lambda calibrated to the requested mean.
    pub fn truncated_poisson_with_mean(ell: u32, mean: f64) -> Result<DegreeDistribution, DegreeError> {
        Self::truncated_poisson(ell, solve_truncated_poisson(ell, mean)?)
    }

    /// Poisson(mean) conditioned on `>= min_degree`, tabulated as an explicit
    /// pmf with the upper tail cut at [`TAIL_MASS`] and renormalized.
    pub fn poisson_table(min_degree: u32, mean: f64) -> Result<DegreeDistribution, DegreeError> {
        let lambda = if min_degree == 0 {
            mean
        } else {
            solve_truncated_poisson(min_degree, mean)?
        };
        let tp = Self::truncated_poisson(min_degree, lambda)?;
        let total: f64 = tp.table.iter().map(|&(_, p)| p).sum();
        Self::explicit(tp.table.iter().map(|&(l, p)| (l, p / total)))
    }

    /// pmf proportional to `l^-exponent` on `[min, max]`.
    pub fn power_law(exponent: f64, min: u32, max: u32) -> Result<DegreeDistribution, DegreeError> {
        if min > max || !exponent.is_finite() {
            return Err(DegreeError::Parameter(format!(
                "power law needs finite exponent and min <= max, got exp={exponent}, min={min}, max={max}"
            )));
        }
        let weights: Vec<(u32, f64)> = (min..=max)
            .map(|l| (l, if l == 0 { 0.0 } else { (l as f64).powf(-exponent) }))
            .collect();
        let total: f64 = weights.iter().map(|w| w.1).sum();
        if total <= 0.0 {
            return Err(DegreeError::EmptySupport);
        }
        let table = normalize(weights.into_iter().map(|(l, w)| (l, w / total)))?;
        Ok(Self::from_table(Family::PowerLawCutoff { exponent, min, max }, table))
    }

    fn from_table(family: Family, table: Vec<(u32, f64)>) -> DegreeDistribution {
        let mean = table.iter().map(|&(l, p)| l as f64 * p).sum();
        let sampler = if table.len() == 1 {
            Sampler::Point(table[0].0)
        } else {
            Sampler::Alias(
                WeightedAliasIndex::new(table.iter().map(|&(_, p)| p).collect())
                    .expect("normalized positive weights"),
            )
        };
        DegreeDistribution { family, table, mean, sampler }
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// (degree, probability) pairs with positive mass. Truncated Poisson laws
    /// return their sampling table.
    pub fn table(&self) -> &[(u32, f64)] {
        &self.table
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn prob(&self, degree: u32) -> f64 {
        match self.family {
            Family::TruncatedPoisson { ell, lambda } => {
                if degree < ell {
                    0.0
                } else {
                    let ln_fact: f64 = (1..=degree).map(|j| (j as f64).ln()).sum();
                    (degree as f64 * lambda.ln() - ln_fact - h_function(ell as i32, lambda).ln()).exp()
                }
            }
            _ => self
                .table
                .binary_search_by_key(&degree, |&(l, _)| l)
                .map(|i| self.table[i].1)
                .unwrap_or(0.0),
        }
    }

    pub fn min_degree(&self) -> u32 {
        self.table[0].0
    }

    /// `None` for laws with unbounded support.
    pub fn max_degree(&self) -> Option<u32> {
        match self.family {
            Family::TruncatedPoisson { .. } => None,
            _ => Some(self.table.last().unwrap().0),
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self.family, Family::Point(_)) || self.table.len() == 1
    }

    /// Evaluates the `order`-th derivative of the pgf at `x`.
    pub fn pgf(&self, x: f64, order: u32) -> Result<f64, DegreeError> {
        if !(0.0..=1.0).contains(&x) {
            return Err(DegreeError::Domain(x));
        }
        if order > 3 {
            return Err(DegreeError::Order(order));
        }
        Ok(self.pgf_unchecked(x, order))
    }

    /// [`pgf`](Self::pgf) without argument validation; `x` must lie in `[0, 1]`.
    pub(crate) fn pgf_unchecked(&self, x: f64, order: u32) -> f64 {
        match self.family {
            Family::TruncatedPoisson { ell, lambda } => {
                lambda.powi(order as i32) * h_function(ell as i32 - order as i32, lambda * x)
                    / h_function(ell as i32, lambda)
            }
            _ => self
                .table
                .iter()
                .filter(|&&(l, _)| l >= order)
                .map(|&(l, p)| p * falling_factorial(l, order) * x.powi((l - order) as i32))
                .sum(),
        }
    }

    /// Law of the degree seen from a uniformly random edge end: `l P(l) / mean`.
    /// Truncated Poisson inputs are size-biased over their sampling table.
    pub fn size_biased(&self) -> DegreeDistribution {
        let mean: f64 = self.table.iter().map(|&(l, p)| l as f64 * p).sum();
        let biased = self
            .table
            .iter()
            .filter(|&&(l, _)| l > 0)
            .map(|&(l, p)| (l, l as f64 * p / mean));
        match self.family {
            Family::Point(c) => DegreeDistribution::point(c),
            _ => Self::explicit(biased).expect("size-biasing preserves normalization"),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        match &self.sampler {
            Sampler::Point(c) => *c,
            Sampler::Alias(alias) => self.table[alias.sample(rng)].0,
            Sampler::InverseCdf(cumulative) => {
                let u: f64 = rng.random();
                let i = cumulative.partition_point(|&c| c < u).min(cumulative.len() - 1);
                self.table[i].0
            }
        }
    }

    /// gcd of all degrees with positive probability (1 for unbounded laws).
    pub fn gcd_support(&self) -> u32 {
        match self.family {
            Family::TruncatedPoisson { .. } => 1,
            _ => self.table.iter().fold(0, |g, &(l, _)| gcd(g, l)),
        }
    }
}

fn normalize<I>(pmf: I) -> Result<Vec<(u32, f64)>, DegreeError>
where
    I: IntoIterator<Item = (u32, f64)>,
{
    let mut table: Vec<(u32, f64)> = Vec::new();
    for (degree, prob) in pmf {
        if !prob.is_finite() || prob < 0.0 {
            return Err(DegreeError::BadProbability { degree, prob });
        }
        table.push((degree, prob));
    }
    table.sort_by_key(|&(l, _)| l);
    table.dedup_by(|b, a| {
        if a.0 == b.0 {
            a.1 += b.1;
            true
        } else {
            false
        }
    });
    table.retain(|&(_, p)| p > 0.0);
    if table.is_empty() {
        return Err(DegreeError::EmptySupport);
    }
    let total: f64 = table.iter().map(|&(_, p)| p).sum();
    if (total - 1.0).abs() > NORMALIZATION_SLACK {
        return Err(DegreeError::NotNormalized(total));
    }
    for entry in &mut table {
        entry.1 /= total;
    }
    Ok(table)
}

impl fmt::Display for DegreeDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            Family::Point(c) => write!(f, "point:{c}"),
            Family::TruncatedPoisson { ell, lambda } => write!(f, "tpoisson:ell={ell},lambda={lambda}"),
            Family::PowerLawCutoff { exponent, min, max } => {
                write!(f, "powerlaw:exp={exponent},min={min},max={max}")
            }
            Family::Explicit => {
                write!(f, "explicit:")?;
                for (i, (l, p)) in self.table.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{l}={p}")?;
                }
                Ok(())
            }
        }
    }
}

/// Parses the distribution grammar: `point:3`, `tpoisson:ell=1,lambda=1.0`,
/// `tpoisson:ell=1,mean=2.0`, `explicit:3=0.8,15=0.2`,
/// `powerlaw:exp=3.5,min=3,max=100`. Explicit probabilities may be written as
/// fractions (`3=190/197`).
impl FromStr for DegreeDistribution {
    type Err = DegreeError;

    fn from_str(input: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| DegreeError::Parse { input: input.to_string(), reason: reason.to_string() };
        let (kind, args) = input.trim().split_once(':').ok_or_else(|| err("expected '<family>:<args>'"))?;
        let pairs = || -> Result<Vec<(&str, &str)>, DegreeError> {
            args.split(',')
                .map(|kv| kv.trim().split_once('=').ok_or_else(|| err("expected key=value")))
                .collect()
        };
        let number = |s: &str| -> Result<f64, DegreeError> {
            let s = s.trim();
            match s.split_once('/') {
                Some((a, b)) => {
                    let a: f64 = a.trim().parse().map_err(|_| err("bad number"))?;
                    let b: f64 = b.trim().parse().map_err(|_| err("bad number"))?;
                    Ok(a / b)
                }
                None => s.parse().map_err(|_| err("bad number")),
            }
        };
        let integer = |s: &str| -> Result<u32, DegreeError> { s.trim().parse().map_err(|_| err("bad integer")) };
        match kind.trim() {
            "point" => Ok(DegreeDistribution::point(integer(args)?)),
            "tpoisson" => {
                let mut ell = None;
                let mut lambda = None;
                let mut mean = None;
                for (k, v) in pairs()? {
                    match k {
                        "ell" => ell = Some(integer(v)?),
                        "lambda" => lambda = Some(number(v)?),
                        "mean" => mean = Some(number(v)?),
                        _ => return Err(err("unknown tpoisson key")),
                    }
                }
                let ell = ell.ok_or_else(|| err("missing ell"))?;
                match (lambda, mean) {
                    (Some(l), None) => DegreeDistribution::truncated_poisson(ell, l),
                    (None, Some(m)) => DegreeDistribution::truncated_poisson_with_mean(ell, m),
                    _ => Err(err("give exactly one of lambda, mean")),
                }
            }
            "poisson" => {
                let (mut mean, mut min) = (None, 0);
                for (k, v) in pairs()? {
                    match k {
                        "mean" => mean = Some(number(v)?),
                        "min" => min = integer(v)?,
                        _ => return Err(err("unknown poisson key")),
                    }
                }
                DegreeDistribution::poisson_table(min, mean.ok_or_else(|| err("missing mean"))?)
            }
            "explicit" => {
                let entries = pairs()?
                    .into_iter()
                    .map(|(k, v)| Ok((integer(k)?, number(v)?)))
                    .collect::<Result<Vec<_>, DegreeError>>()?;
                DegreeDistribution::explicit(entries)
            }
            "powerlaw" => {
                let (mut exp, mut min, mut max) = (None, None, None);
                for (k, v) in pairs()? {
                    match k {
                        "exp" => exp = Some(number(v)?),
                        "min" => min = Some(integer(v)?),
                        "max" => max = Some(integer(v)?),
                        _ => return Err(err("unknown powerlaw key")),
                    }
                }
                DegreeDistribution::power_law(
                    exp.ok_or_else(|| err("missing exp"))?,
                    min.ok_or_else(|| err("missing min"))?,
                    max.ok_or_else(|| err("missing max (unbounded power laws are not supported)"))?,
                )
            }
            _ => Err(err("unknown family")),
        }
    }
}
