//! The named verification suite: a fixed roster of checks with
//! seed-deterministic randomized trials, executed in parallel and
//! reported in declaration order.

use crate::coeff::{coeff, rat, rat_int, Coeff};
use crate::error::{Error, Result};
use crate::lattice::MultiIndex;
use crate::symbol::LaurentSymbol;
use crate::transport::PsiMap;
use crate::verify::checks::{self, RadiiGrid};
use crate::verify::random::SymbolSampler;
use crate::verify::report::CheckReport;
use rayon::prelude::*;

/// Declaration order of the suite; `run_selected` accepts any subset.
pub const CHECK_NAMES: [&str; 15] = [
    "conjugation",
    "projection-relation",
    "mult-factorization",
    "brown-halmos",
    "brown-halmos-negative",
    "toeplitz-calculus",
    "coburn",
    "analytic-commutation",
    "inner-shift",
    "partial-isometry",
    "noncompact",
    "kernel-growth",
    "left-inverse",
    "norm-formula",
    "unbounded",
];

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub n: usize,
    pub window: MultiIndex,
    pub seed: u64,
    pub trials: u32,
    pub kmax: u32,
    pub lambda: Coeff,
    pub gamma: MultiIndex,
    pub order: u32,
}

impl SuiteConfig {
    /// Defaults: window 6 per coordinate in dimension 2, else 4; seed
    /// 42; 100 trials; shift depth 5; ratio 1/2; exponent z̃₁; order 8.
    pub fn new(n: usize) -> Result<Self> {
        let extent = if n == 2 { 6 } else { 4 };
        let window = MultiIndex::new(vec![extent; n])?;
        let mut gamma = vec![0i64; n];
        gamma[0] = 1;
        gamma[1] = -1;
        Ok(SuiteConfig {
            n,
            window,
            seed: 42,
            trials: 100,
            kmax: 5,
            lambda: coeff(rat(1, 2), rat_int(0)),
            gamma: MultiIndex::new(gamma)?,
            order: 8,
        })
    }
}

/// Runs trialwise reports under one name: cases accumulate, the first
/// failure is returned as-is with its own counterexample.
fn aggregate(reports: Vec<CheckReport>) -> CheckReport {
    let mut total = 0;
    for report in &reports {
        total += report.cases;
        if !report.passed() {
            let mut failed = report.clone();
            failed.cases = total;
            return failed;
        }
    }
    let mut merged = reports.into_iter().next().expect("at least one trial");
    merged.cases = total;
    merged
}

fn quotient_monomial(n: usize, i: usize, p: i64) -> Result<LaurentSymbol> {
    let mut exp = vec![0i64; n];
    exp[i - 1] = p;
    if i < n {
        exp[i] = -p;
    }
    LaurentSymbol::monomial(MultiIndex::new(exp)?, crate::coeff::coeff_one())
}

fn run_one(name: &str, config: &SuiteConfig) -> Result<CheckReport> {
    let n = config.n;
    let m = &config.window;
    match name {
        "conjugation" => {
            let mut sampler = SymbolSampler::new(n, config.seed);
            let mut reports = Vec::new();
            for _ in 0..config.trials.max(1) {
                reports.push(checks::check_conjugation(&sampler.symbol()?, m)?);
            }
            Ok(aggregate(reports))
        }
        "projection-relation" => PsiMap::new(n)?.check_projection_relation(m),
        "mult-factorization" => checks::check_mult_factorization(n, m),
        "brown-halmos" => {
            let mut sampler = SymbolSampler::new(n, config.seed.wrapping_add(1));
            let mut reports = Vec::new();
            for _ in 0..config.trials.max(1) {
                reports.push(checks::check_brown_halmos(&sampler.symbol()?, m)?);
            }
            Ok(aggregate(reports))
        }
        "brown-halmos-negative" => checks::check_brown_halmos_negative(
            n,
            m,
            config.seed.wrapping_add(2),
            config.trials.max(1),
        ),
        "toeplitz-calculus" => {
            let mut sampler = SymbolSampler::new(n, config.seed.wrapping_add(3));
            let mut reports = Vec::new();
            // rotate through general, cone-analytic-right, and
            // co-analytic-left pairs so parts (ii) and (iii) both see
            // their nondegenerate regimes
            for trial in 0..config.trials.max(1) {
                let (phi, psi) = match trial % 3 {
                    0 => (sampler.symbol()?, sampler.symbol()?),
                    1 => (sampler.symbol()?, sampler.cone_symbol()?),
                    _ => (sampler.cone_symbol()?.conjugate(), sampler.symbol()?),
                };
                reports.push(checks::check_toeplitz_calculus(&phi, &psi, m)?);
            }
            Ok(aggregate(reports))
        }
        "coburn" => checks::check_coburn_failure(n),
        "analytic-commutation" => {
            let mut sampler = SymbolSampler::new(n, config.seed.wrapping_add(5));
            let mut reports = Vec::new();
            for trial in 0..config.trials.max(1) {
                let phi = if trial % 2 == 0 {
                    sampler.cone_symbol()?
                } else {
                    sampler.cone_symbol()?.conjugate()
                };
                reports.push(checks::check_analytic_commutation(&phi, m)?);
            }
            reports.push(checks::check_commutation_negative(n, m)?);
            Ok(aggregate(reports))
        }
        "inner-shift" => {
            let mut reports = Vec::new();
            for theta in [
                quotient_monomial(n, 1, 1)?,
                quotient_monomial(n, n, 1)?,
                quotient_monomial(n, 1, 2)?,
            ] {
                reports.push(checks::check_inner_shift(&theta, m, config.kmax)?);
            }
            Ok(aggregate(reports))
        }
        "partial-isometry" => {
            let mut pairs = vec![
                (quotient_monomial(n, 1, 1)?, quotient_monomial(n, 2, 1)?),
                (quotient_monomial(n, 1, 2)?, quotient_monomial(n, 2, 3)?),
            ];
            if n > 2 {
                pairs.push((quotient_monomial(n, 1, 1)?, quotient_monomial(n, n, 2)?));
            }
            let mut reports = Vec::new();
            for (a, b) in pairs {
                reports.push(checks::check_partial_isometry(&a, &b, m)?);
            }
            Ok(aggregate(reports))
        }
        "noncompact" => checks::check_noncompact_example(n, m, config.kmax),
        "kernel-growth" => {
            checks::check_kernel_growth(&quotient_monomial(n, 1, 1)?, m, &m.add(m)?)
        }
        "left-inverse" => checks::check_left_inverse(
            &crate::coeff::coeff_one(),
            &config.lambda,
            &config.gamma,
            config.order,
            m,
        ),
        "norm-formula" => {
            let grid = RadiiGrid::standard(n)?;
            let mut sampler = SymbolSampler::new(n, config.seed.wrapping_add(4));
            let mut reports = Vec::new();
            for _ in 0..config.trials.clamp(1, 20) {
                reports.push(checks::check_norm_formula(&sampler.hardy_symbol()?, &grid)?);
            }
            Ok(aggregate(reports))
        }
        "unbounded" => {
            let samples = vec![rat(1, 10), rat(1, 1000), rat(1, 10_000_000)];
            checks::check_unbounded_interior(n, &samples, &rat_int(1_000_000))
        }
        other => Err(Error::Domain(format!("unknown check name: {other}"))),
    }
}

/// Runs the named checks in parallel; the returned reports keep the
/// requested order and are deterministic for a fixed configuration.
pub fn run_selected(config: &SuiteConfig, names: &[&str]) -> Result<Vec<CheckReport>> {
    for name in names {
        if !CHECK_NAMES.contains(name) {
            return Err(Error::Domain(format!("unknown check name: {name}")));
        }
    }
    names
        .par_iter()
        .map(|name| run_one(name, config))
        .collect()
}

/// Runs the full roster.
pub fn run_suite(config: &SuiteConfig) -> Result<Vec<CheckReport>> {
    run_selected(config, &CHECK_NAMES)
}
