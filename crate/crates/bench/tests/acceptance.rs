//! Acceptance battery. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::cell::Cell;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use ffrank::analytic::{self, bethe_at_alpha, EnsembleSpec};
use ffrank::coreops::{core_rank_bound, peel};
use ffrank::ensemble::{sample_instance, InstanceSeed};
use ffrank::harness::{self, curve, ensemble_from_str, single_interior_bump, CheckKind, ExperimentConfig, TrialRecord};
use ffrank::linalg::{self, Kernel};
use ffrank::seed::mix_seed;
use ffrank::{DegreeDistribution, Field, FieldElement, TannerGraph};
use ffrank_perf::{exhaustive_kernel, random_matrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FIELD_ORDERS: [u32; 15] = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27, 32, 49, 64];
const FIELD_BUDGET: Duration = Duration::from_secs(10);
const EXACT_TOL: f64 = 1e-12;
const RHO_ONE_TOL: f64 = 1e-9;
const BUMP_MIN: f64 = 1e-4;
const EXAMPLE_BUDGET: Duration = Duration::from_secs(1);
const GOLDEN_ZERO: f64 = 0.618_033_989;
const GOLDEN_ZERO_TOL: f64 = 1e-7;
const GOLDEN_PHI: f64 = -0.090_169_9;
const GOLDEN_PHI_TOL: f64 = 1e-6;
const ORACLE_GRID: usize = 1_000_000;
const RANK_BUDGET: Duration = Duration::from_secs(30);
const RANK_TOL: f64 = 0.01;
const RANK_BUDGET_TOTAL: Duration = Duration::from_secs(300);
const TRANSITION_REPRO: f64 = 1e-6;
const TRANSITION_BISECT_TOL: f64 = 1e-9;
const CORE_TOL: f64 = 0.01;
const BETHE_SIGMAS: f64 = 3.0;
const BETHE_SAMPLES: usize = 1_000_000;
const DE_TOL: f64 = 1e-8;

thread_local! {
    static BOUND_CHECKED: Cell<usize> = const { Cell::new(0) };
    static BOUND_VIOLATIONS: Cell<usize> = const { Cell::new(0) };
}

/// Records one instance for the global bound ledger.
fn record_bound(n: usize, m: usize, n_star: usize, m_star: usize, nullity: usize) {
    BOUND_CHECKED.with(|c| c.set(c.get() + 1));
    let bound = n as i64 - n_star as i64 - (m as i64 - m_star as i64);
    if (nullity as i64) < bound {
        BOUND_VIOLATIONS.with(|c| c.set(c.get() + 1));
    }
}

fn record_instance(g: &TannerGraph, nullity: usize) {
    let core = peel(g);
    record_bound(g.n_vars(), g.n_checks(), core.n_star, core.m_star, nullity);
}

fn record_trials(n: usize, records: &[TrialRecord]) {
    for r in records {
        match (r.n_star, r.m_star) {
            (Some(ns), Some(ms)) => record_bound(n, r.m, ns, ms, r.nullity),
            _ => panic!("trial {} has no core counts", r.trial),
        }
    }
}

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ok_if(pass: bool, detail: String) -> Outcome {
    if pass {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn c01_field_axioms() -> Outcome {
    let start = Instant::now();
    for q in FIELD_ORDERS {
        let f = Field::new(q).map_err(|e| e.to_string())?;
        let els: Vec<FieldElement> = f.elements().collect();
        let z = FieldElement::ZERO;
        let one = FieldElement::ONE;
        for &a in &els {
            if f.add(a, z) != a || f.mul(a, one) != a || f.mul(a, z) != z {
                return Err(format!("identity fails in GF({q})"));
            }
            if f.add(a, f.neg(a)) != z {
                return Err(format!("additive inverse fails in GF({q})"));
            }
            if !a.is_zero() && f.mul(a, f.inv(a).map_err(|e| e.to_string())?) != one {
                return Err(format!("multiplicative inverse fails in GF({q})"));
            }
            if f.pow(a, q as u64) != a {
                return Err(format!("a^q != a in GF({q})"));
            }
            for &b in &els {
                if f.add(a, b) != f.add(b, a) || f.mul(a, b) != f.mul(b, a) {
                    return Err(format!("commutativity fails in GF({q})"));
                }
                if f.sub(f.add(a, b), b) != a {
                    return Err(format!("subtraction fails in GF({q})"));
                }
                if !a.is_zero() && !b.is_zero() && f.mul(a, b).is_zero() {
                    return Err(format!("zero divisor in GF({q})"));
                }
                for &c in &els {
                    if f.add(f.add(a, b), c) != f.add(a, f.add(b, c))
                        || f.mul(f.mul(a, b), c) != f.mul(a, f.mul(b, c))
                        || f.mul(a, f.add(b, c)) != f.add(f.mul(a, b), f.mul(a, c))
                    {
                        return Err(format!("associativity or distributivity fails in GF({q})"));
                    }
                }
            }
        }
        // the additive group has exponent p and the multiplicative group is cyclic
        let p = f.characteristic();
        let mut sum = z;
        for _ in 0..p {
            sum = f.add(sum, one);
        }
        if sum != z {
            return Err(format!("characteristic of GF({q}) is not {p}"));
        }
        let cyclic = els.iter().filter(|a| !a.is_zero()).any(|&g| {
            let mut x = g;
            let mut order = 1;
            while x != one {
                x = f.mul(x, g);
                order += 1;
            }
            order == q - 1
        });
        if !cyclic {
            return Err(format!("GF({q})* has no generator"));
        }
    }
    let took = start.elapsed();
    ok_if(took < FIELD_BUDGET, format!("{} fields in {:.2?} (budget {:?})", FIELD_ORDERS.len(), took, FIELD_BUDGET))
}

fn random_explicit(rng: &mut ChaCha8Rng, min: u32, max: u32) -> DegreeDistribution {
    let size = rng.random_range(1..=4);
    let mut pmf: Vec<(u32, f64)> = Vec::new();
    while pmf.len() < size {
        let deg = rng.random_range(min..=max);
        if pmf.iter().all(|&(d, _)| d != deg) {
            pmf.push((deg, rng.random_range(0.05..1.0)));
        }
    }
    let total: f64 = pmf.iter().map(|p| p.1).sum();
    DegreeDistribution::explicit(pmf.into_iter().map(|(d, w)| (d, w / total))).expect("valid pmf")
}

fn c02_endpoints() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc02);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let d = random_explicit(&mut rng, 0, 12);
        let k = random_explicit(&mut rng, 3, 12);
        let ens = EnsembleSpec::with_isolated_variables(Field::new(2).unwrap(), d.clone(), k.clone())
            .map_err(|e| e.to_string())?;
        let p0 = analytic::phi(&ens, 0.0).map_err(|e| e.to_string())?;
        let p1 = analytic::phi(&ens, 1.0).map_err(|e| e.to_string())?;
        // means straight from the tables
        let dm: f64 = d.table().iter().map(|&(x, p)| x as f64 * p).sum();
        let km: f64 = k.table().iter().map(|&(x, p)| x as f64 * p).sum();
        let pd0 = d.table().iter().find(|e| e.0 == 0).map_or(0.0, |e| e.1);
        worst = worst.max((p0 - (1.0 - dm / km)).abs()).max((p1 - pd0).abs());
    }
    ok_if(worst <= EXACT_TOL, format!("20 ensembles, worst endpoint error {worst:e}"))
}

fn rate_gap_example(name: &str) -> Outcome {
    let start = Instant::now();
    let ens = ensemble_from_str(name, 0).map_err(|e| e.to_string())?;
    let rho = analytic::rho(&ens);
    let p0 = analytic::phi(&ens, 0.0).unwrap();
    let p1 = analytic::phi(&ens, 1.0).unwrap();
    let max = analytic::max_phi(&ens);
    let pts = curve(&ens, 1001).map_err(|e| e.to_string())?;
    let bump = single_interior_bump(&pts, EXACT_TOL);
    let took = start.elapsed();
    let pass = (rho - 1.0).abs() <= RHO_ONE_TOL
        && p0.abs() <= EXACT_TOL
        && p1.abs() <= EXACT_TOL
        && max.value > BUMP_MIN
        && max.alpha > 0.0
        && max.alpha < 1.0
        && bump
        && took < EXAMPLE_BUDGET;
    ok_if(
        pass,
        format!(
            "rho = {rho}, Phi(0) = {p0:e}, Phi(1) = {p1:e}, max Phi = {:.6} at alpha = {:.4}, single bump = {bump}, {took:.2?}",
            max.value, max.alpha
        ),
    )
}

fn c03_mixed() -> Outcome {
    rate_gap_example("mixed-3-15")
}

fn c04_spike() -> Outcome {
    rate_gap_example("spike-3-200")
}

fn c05_golden() -> Outcome {
    let ens = ensemble_from_str("regular-3-3", 0).map_err(|e| e.to_string())?;
    let rho = analytic::rho(&ens);
    let at = analytic::phi(&ens, rho).unwrap();
    // oracle: sign changes of phi on a fine grid, with Phi at each crossing
    let mut zeros = Vec::new();
    let mut prev = analytic::phi_small(&ens, 0.0).unwrap();
    for i in 1..=ORACLE_GRID {
        let a = i as f64 / ORACLE_GRID as f64;
        let cur = analytic::phi_small(&ens, a).unwrap();
        if (prev < 0.0 && cur >= 0.0) || (prev > 0.0 && cur <= 0.0) {
            zeros.push(a);
        }
        prev = cur;
    }
    let oracle: Vec<String> = zeros
        .iter()
        .map(|&a| format!("{a:.6} (Phi {:.7})", analytic::phi(&ens, a).unwrap()))
        .collect();
    let pass = (rho - GOLDEN_ZERO).abs() <= GOLDEN_ZERO_TOL && (at - GOLDEN_PHI).abs() <= GOLDEN_PHI_TOL;
    ok_if(
        pass,
        format!("rho = {rho}, Phi(rho) = {at}; grid zeros of phi in (0, 1]: [{}]", oracle.join(", ")),
    )
}

fn c06_rank_oracle() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0xc06);
    let qs = [2, 3, 4, 9];
    let ensembles = [
        "d=point:3;k=point:3;mode=multigraph",
        "d=poisson:mean=2.5;k=point:3;isolated=true;mode=multigraph",
        "d=explicit:2=1/2,3=1/2;k=point:3;mode=multigraph",
    ];
    let mut mismatches = 0;
    for i in 0..200 {
        let field = Field::new(qs[i % 4]).unwrap();
        let m = if i % 2 == 0 {
            let rows = rng.random_range(1..=25);
            let cols = rng.random_range(1..=25);
            let density = rng.random_range(0.05..0.6);
            random_matrix(&mut rng, &field, rows, cols, density)
        } else {
            let n = 3 * rng.random_range(2..=8);
            let ens = ensemble_from_str(&format!("{};q={}", ensembles[i % 3], qs[i % 4]), n)
                .map_err(|e| e.to_string())?;
            let inst = sample_instance(&ens, InstanceSeed(mix_seed(0xc06, i as u64))).map_err(|e| e.to_string())?;
            record_instance(&inst.graph, linalg::nullity(&inst.matrix));
            inst.matrix
        };
        if linalg::rank(&m) != linalg::rank_dense_oracle(&m).unwrap() {
            mismatches += 1;
        }
    }
    let mut count_mismatches = 0;
    let mut counted = 0;
    for i in 0..40 {
        let q = if i % 2 == 0 { 2 } else { 3 };
        let field = Field::new(q).unwrap();
        let cols = if q == 2 { rng.random_range(1..=12) } else { rng.random_range(1..=10) };
        let rows = rng.random_range(1..=12);
        let density = rng.random_range(0.1..0.5);
        let m = random_matrix(&mut rng, &field, rows, cols, density);
        let kernel = exhaustive_kernel(&m);
        let nullity = cols - linalg::rank(&m);
        counted += 1;
        if kernel.len() != (q as usize).pow(nullity as u32) {
            count_mismatches += 1;
        }
    }
    let took = start.elapsed();
    ok_if(
        mismatches == 0 && count_mismatches == 0 && took < RANK_BUDGET,
        format!("{mismatches}/200 dense-oracle mismatches, {count_mismatches}/{counted} kernel-count mismatches, {took:.2?}"),
    )
}

/// Brute-force maximum of Phi on a fine grid.
fn grid_max(ens: &EnsembleSpec) -> f64 {
    (0..=ORACLE_GRID)
        .map(|i| analytic::phi(ens, i as f64 / ORACLE_GRID as f64).unwrap())
        .fold(f64::NEG_INFINITY, f64::max)
}

fn experiment(ensemble: &str, n: usize, trials: usize, seed: u64) -> Result<harness::ExperimentResult, String> {
    let mut cfg = ExperimentConfig::new(ensemble, n, trials, seed);
    cfg.checks = vec![CheckKind::Rank, CheckKind::Core, CheckKind::Bound, CheckKind::KernelOnCore];
    let res = harness::run_experiment(&cfg).map_err(|e| e.to_string())?;
    if !res.summary.failures.is_empty() {
        return Err(format!("{} trials failed to sample", res.summary.failures.len()));
    }
    record_trials(n, &res.records);
    Ok(res)
}

fn c07_rank_limit() -> Outcome {
    let start = Instant::now();
    let mut details = Vec::new();
    let mut pass = true;
    for mean in [2.5, 3.0] {
        let s = format!("d=poisson:mean={mean};k=point:3;mode=simple;isolated=true");
        let res = experiment(&s, 3000, 20, 7)?;
        let ens = ensemble_from_str(&s, 3000).unwrap();
        let target = res.summary.rank_limit;
        let grid = 1.0 - grid_max(&ens);
        let err = (res.summary.mean_rank_fraction - target).abs();
        pass &= err <= RANK_TOL && (grid - target).abs() < 1e-6;
        details.push(format!(
            "mean {mean}: rank/n {:.5} vs 1 - max Phi {:.6} (grid {:.6})",
            res.summary.mean_rank_fraction, target, grid
        ));
    }
    let took = start.elapsed();
    pass &= took < RANK_BUDGET_TOTAL;
    ok_if(pass, format!("{}; {took:.2?}", details.join("; ")))
}

fn c08_transition() -> Outcome {
    let family = |mean: f64| {
        EnsembleSpec::with_isolated_variables(
            Field::new(2).unwrap(),
            DegreeDistribution::truncated_poisson(0, mean).unwrap(),
            DegreeDistribution::point(3),
        )
    };
    let a = analytic::locate_transition(family, 2.5, 3.0, TRANSITION_BISECT_TOL).map_err(|e| e.to_string())?;
    let b = analytic::locate_transition(family, 2.6, 2.9, TRANSITION_BISECT_TOL).map_err(|e| e.to_string())?;
    let again = analytic::locate_transition(family, 2.5, 3.0, TRANSITION_BISECT_TOL).unwrap();
    ok_if(
        (a - b).abs() <= TRANSITION_REPRO && a == again && a > 2.70 && a < 2.80,
        format!("transition at mean {a:.9} (second bracket {b:.9})"),
    )
}

fn c09_core_fractions() -> Outcome {
    let s = "d=tpoisson:ell=1,lambda=3;k=point:3";
    let n = 9999;
    let ens = ensemble_from_str(s, n).unwrap();
    let rho = analytic::rho(&ens);
    let deriv = analytic::phi_small_deriv(&ens, rho).unwrap();
    let de = analytic::density_evolution(&ens, 1_000_000, 1e-13).map_err(|e| e.to_string())?;
    let res = experiment(s, n, 10, 11)?;
    let predicted = analytic::core_fractions(&ens);
    let vars = res.summary.mean_core_var_fraction.unwrap();
    let checks = res.summary.mean_core_check_fraction.unwrap();
    ok_if(
        rho > 0.0 && deriv < 0.0 && (de.rho - rho).abs() < DE_TOL
            && (vars - predicted.vars).abs() <= CORE_TOL
            && (checks - predicted.checks).abs() <= CORE_TOL,
        format!(
            "n = {n}: n*/n {vars:.5} vs {:.5}, m*/n {checks:.5} vs {:.5} (rho {rho:.6}, phi'(rho) {deriv:.4})",
            predicted.vars, predicted.checks
        ),
    )
}

fn c10_bound() -> Outcome {
    // extra instances across fields and modes, on top of everything sampled above
    let ensembles = [
        "d=point:3;k=point:3",
        "d=point:2;k=point:4;mode=multigraph",
        "d=tpoisson:ell=1,lambda=2;k=point:3",
        "d=poisson:mean=3;k=point:4;isolated=true",
        "d=explicit:1=1/5,3=4/5;k=point:3;mode=exact-degrees",
        "d=explicit:3=4/5,15=1/5;k=explicit:3=4/5,15=1/5;mode=multigraph",
    ];
    let mut independent_violations = 0;
    for (i, s) in ensembles.iter().enumerate() {
        for q in [2, 3, 4, 5] {
            for t in 0..5 {
                let ens = ensemble_from_str(&format!("{s};q={q}"), 60).map_err(|e| e.to_string())?;
                let inst = sample_instance(&ens, InstanceSeed(mix_seed(i as u64, (q * 10 + t) as u64)))
                    .map_err(|e| e.to_string())?;
                let b = core_rank_bound(&inst.graph, &inst.matrix);
                let oracle = inst.matrix.n_cols() - linalg::rank_dense_oracle(&inst.matrix).unwrap();
                if oracle != b.nullity || (oracle as i64) < b.bound {
                    independent_violations += 1;
                }
                record_instance(&inst.graph, oracle);
            }
        }
    }
    let checked = BOUND_CHECKED.with(Cell::get);
    let violations = BOUND_VIOLATIONS.with(Cell::get);
    ok_if(
        violations == 0 && independent_violations == 0 && checked > 0,
        format!("{checked} instances checked, {violations} violations"),
    )
}

fn c11_bethe() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut details = Vec::new();
    for s in ["mixed-3-15", "d=tpoisson:ell=1,lambda=3;k=point:4"] {
        let ens = ensemble_from_str(s, 0).unwrap();
        for alpha in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let est = bethe_at_alpha(&ens, alpha, BETHE_SAMPLES, 0xb37e).unwrap();
            let exact = analytic::phi(&ens, alpha).unwrap();
            let gap = (est.estimate - exact).abs();
            let z = if est.std_error > 0.0 {
                gap / est.std_error
            } else if gap < EXACT_TOL {
                0.0
            } else {
                f64::INFINITY
            };
            worst = worst.max(z);
            details.push(format!("{alpha}: {z:.2}"));
        }
    }
    ok_if(
        worst <= BETHE_SIGMAS,
        format!("worst deviation {worst:.2} SE; per alpha z = [{}]", details.join(", ")),
    )
}

fn c12_kernel_on_core() -> Outcome {
    let res = experiment("mixed-3-15", 3000, 10, 12)?;
    let loose = res.records.iter().filter(|r| r.kernel_zero_on_core == Some(false)).count();
    ok_if(loose >= 8, format!("{loose}/10 trials with a kernel vector non-zero on the core"))
}

fn c13_dichotomy() -> Outcome {
    let ensembles = [
        "d=poisson:mean=1.8;k=point:3;isolated=true;mode=multigraph",
        "d=explicit:1=1/2,2=1/2;k=point:3;mode=multigraph",
        "d=point:2;k=point:3;mode=multigraph",
        "d=tpoisson:ell=1,lambda=1.5;k=point:3;mode=multigraph",
        "d=point:1;k=point:3;mode=multigraph",
    ];
    let mut marginal_bad = 0;
    let mut pair_bad = 0;
    let mut frozen_bad = 0;
    let mut pairs_checked = 0;
    for i in 0..50 {
        let q = if i % 2 == 0 { 2 } else { 3 };
        let n = if q == 2 { 12 } else { 9 };
        let ens = ensemble_from_str(&format!("{};q={q}", ensembles[i % ensembles.len()]), n)
            .map_err(|e| e.to_string())?;
        let inst = sample_instance(&ens, InstanceSeed(mix_seed(0xc13, i as u64))).map_err(|e| e.to_string())?;
        let all = exhaustive_kernel(&inst.matrix);
        record_instance(&inst.graph, all.len().ilog(q as usize) as usize);
        let kernel = Kernel::of(&inst.matrix);
        let size = all.len();
        let qu = q as usize;
        for col in 0..n {
            let mut counts = vec![0usize; qu];
            for v in &all {
                counts[v[col].repr() as usize] += 1;
            }
            let delta0 = counts[0] == size;
            let uniform = counts.iter().all(|&c| c * qu == size);
            if !(delta0 || uniform) {
                marginal_bad += 1;
            }
            if delta0 != kernel.is_frozen(col) {
                frozen_bad += 1;
            }
        }
        let classes = kernel.partition();
        for (ci, a) in classes.iter().enumerate() {
            for b in &classes[ci + 1..] {
                for &x in a {
                    for &y in b {
                        pairs_checked += 1;
                        let mut joint = vec![0usize; qu * qu];
                        for v in &all {
                            joint[v[x].repr() as usize * qu + v[y].repr() as usize] += 1;
                        }
                        if joint.iter().any(|&c| c * qu * qu != size) {
                            pair_bad += 1;
                        }
                    }
                }
            }
        }
    }
    ok_if(
        marginal_bad == 0 && pair_bad == 0 && frozen_bad == 0 && pairs_checked > 0,
        format!(
            "50 instances: {marginal_bad} mixed marginals, {frozen_bad} frozen-set mismatches, {pair_bad}/{pairs_checked} dependent cross-block pairs"
        ),
    )
}

fn c14_density_evolution() -> Outcome {
    let f = Field::new(2).unwrap();
    let tp = |ell, lambda| DegreeDistribution::truncated_poisson(ell, lambda).unwrap();
    let ex = |pmf: &[(u32, f64)]| DegreeDistribution::explicit(pmf.iter().copied()).unwrap();
    let k3 = DegreeDistribution::point(3);
    let k4 = DegreeDistribution::point(4);
    let cases = [
        (tp(1, 3.0), k3.clone()),
        (tp(1, 2.5), k3.clone()),
        (tp(1, 4.0), k4.clone()),
        (tp(1, 1.0), k3.clone()),
        (tp(1, 3.0), tp(3, 4.0)),
        (tp(0, 3.0), k3.clone()),
        (tp(0, 5.0), k4.clone()),
        (ex(&[(1, 0.2), (3, 0.8)]), k3.clone()),
        (ex(&[(1, 0.1), (2, 0.3), (4, 0.6)]), k4.clone()),
        (ex(&[(2, 0.5), (3, 0.5)]), k3.clone()),
    ];
    let mut worst: f64 = 0.0;
    let mut rhos = Vec::new();
    for (d, k) in cases {
        let ens = EnsembleSpec::with_isolated_variables(f.clone(), d, k).map_err(|e| e.to_string())?;
        let rho = analytic::rho(&ens);
        let deriv = analytic::phi_small_deriv(&ens, rho).unwrap();
        if deriv >= 0.0 {
            return Err(format!("phi'(rho) = {deriv} >= 0 for a selected ensemble"));
        }
        let de = analytic::density_evolution(&ens, 1_000_000, 1e-14).map_err(|e| e.to_string())?;
        worst = worst.max((de.rho - rho).abs());
        rhos.push(format!("{rho:.4}"));
    }
    ok_if(worst < DE_TOL, format!("10 ensembles (rho = [{}]), worst gap {worst:e}", rhos.join(", ")))
}

fn main() {
    let criteria: [Criterion; 14] = [
        ("field axioms", c01_field_axioms),
        ("Phi endpoints on random explicit ensembles", c02_endpoints),
        ("mixed 3/15 rate-gap example", c03_mixed),
        ("spike 3/200 rate-gap example", c04_spike),
        ("3,3-regular constants", c05_golden),
        ("sparse rank vs oracles", c06_rank_oracle),
        ("rank limit at desk scale", c07_rank_limit),
        ("full-rank transition localization", c08_transition),
        ("core fractions at desk scale", c09_core_fractions),
        ("core nullity bound on every instance", c10_bound),
        ("Bethe estimator vs Phi", c11_bethe),
        ("kernel not zero on the core", c12_kernel_on_core),
        ("frozen/uniform dichotomy", c13_dichotomy),
        ("density evolution vs root finding", c14_density_evolution),
    ];
    // the bound ledger covers every instance, so its criterion is evaluated last
    let mut order: Vec<usize> = (0..criteria.len()).filter(|&i| i != 9).collect();
    order.push(9);
    let mut lines = vec![String::new(); criteria.len()];
    let mut failed = Vec::new();
    for i in order {
        let (name, run) = criteria[i];
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let took = start.elapsed();
        lines[i] = match outcome {
            Ok(detail) => format!("PASS {:>2} {name}: {detail} [{took:.2?}]", i + 1),
            Err(detail) => {
                failed.push(i + 1);
                format!("FAIL {:>2} {name}: {detail} [{took:.2?}]", i + 1)
            }
        };
    }
    failed.sort();
    for line in &lines {
        println!("{line}");
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed.len(), criteria.len());
    if !failed.is_empty() {
        println!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
