//! Exact classical simulation of the period-finding circuit.
//!
//! Pipeline: uniform superposition over the top register, oracle
//! `|x>|0> -> |x>|a^x mod N>`, measurement of the bottom register, QFT of the
//! top register, sampling, continued-fraction post-processing and
//! `gcd(a^{r/2} +/- 1, N)`.
//!
//! Every collapsed top-register state is uniform over an arithmetic
//! progression `x0, x0 + r, x0 + 2r, ...`, so it is stored as
//! `(offset, step, count)` and its QFT is summed in closed form.
//!
//! Randomness comes from `ChaCha8Rng::seed_from_u64(seed)`. Uniform reals are
//! `(next_u64() >> 11) * 2^-53`; both the generator and this conversion are
//! fixed, so a seed reproduces the same outcomes on every platform.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::arithmetic::{convergents, factorize, gcd, mod_pow, multiplicative_order, Convergent};
use crate::error::{Error, Result};
use crate::representations::root_of_unity;

/// Largest top register the simulator will allocate.
pub const MAX_REGISTER_SIZE: u64 = 1 << 24;

/// Default number of circuit runs in [`factor`].
pub const DEFAULT_MAX_ATTEMPTS: u32 = 16;

/// Tolerance on total probability.
pub const NORM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RegisterMode {
    /// `M = 2^q`, by default the smallest with `M >= N^2`.
    PowerOfTwo,
    /// `M = a N`, the order of the extended group.
    PaperOrder,
}

impl RegisterMode {
    pub fn name(&self) -> &'static str {
        match self {
            RegisterMode::PowerOfTwo => "powerOfTwo",
            RegisterMode::PaperOrder => "paperOrder",
        }
    }
}

/// Top-register size together with the oracle parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RegisterConfig {
    size: u64,
    n: u64,
    a: u64,
    mode: RegisterMode,
}

/// Smallest power of two `>= n^2`.
pub fn default_register_size(n: u64) -> Result<u64> {
    let sq = n.checked_mul(n).ok_or(Error::Overflow("N^2"))?;
    sq.checked_next_power_of_two()
        .ok_or(Error::Overflow("register size"))
}

impl RegisterConfig {
    /// `size_override` replaces the default `M`; in `PowerOfTwo` mode it must
    /// be a power of two, and `PaperOrder` does not accept one.
    pub fn new(n: u64, a: u64, mode: RegisterMode, size_override: Option<u64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::ModulusTooSmall(n as u128));
        }
        if a == 0 {
            return Err(Error::InvalidArgument("base a must be positive"));
        }
        if gcd(a as u128, n as u128) != 1 {
            return Err(Error::NotCoprime {
                a: a as u128,
                n: n as u128,
            });
        }
        let size = match (mode, size_override) {
            (RegisterMode::PowerOfTwo, None) => default_register_size(n)?,
            (RegisterMode::PowerOfTwo, Some(m)) => {
                if !m.is_power_of_two() {
                    return Err(Error::InvalidArgument(
                        "register size must be a power of two",
                    ));
                }
                m
            }
            (RegisterMode::PaperOrder, None) => n.checked_mul(a).ok_or(Error::Overflow("a*N"))?,
            (RegisterMode::PaperOrder, Some(_)) => {
                return Err(Error::InvalidArgument(
                    "paper-order register size is fixed to a*N",
                ))
            }
        };
        if size < 2 {
            return Err(Error::InvalidArgument("register size must be at least 2"));
        }
        if size > MAX_REGISTER_SIZE {
            return Err(Error::InvalidArgument("register size exceeds 2^24"));
        }
        Ok(RegisterConfig { size, n, a, mode })
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn mode(&self) -> RegisterMode {
        self.mode
    }
}

/// `{offset + t * step : 0 <= t < count}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Progression {
    pub offset: u64,
    pub step: u64,
    pub count: u64,
}

impl Progression {
    pub fn contains(&self, x: u64) -> bool {
        x >= self.offset
            && (x - self.offset).is_multiple_of(self.step)
            && (x - self.offset) / self.step < self.count
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.count).map(move |t| self.offset + t * self.step)
    }
}

/// Top-register values that share one bottom-register residue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ResidueBranch {
    pub residue: u64,
    pub support: Progression,
}

/// `M^{-1/2} sum_x |x>|a^x mod N>`, grouped by residue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntangledState {
    config: RegisterConfig,
    period: u64,
    branches: Vec<ResidueBranch>,
}

impl EntangledState {
    pub fn config(&self) -> &RegisterConfig {
        &self.config
    }

    /// Multiplicative order `r` of `a` modulo `N`.
    pub fn period(&self) -> u64 {
        self.period
    }

    pub fn branches(&self) -> &[ResidueBranch] {
        &self.branches
    }

    /// Every basis state carries amplitude `1/sqrt(M)`.
    pub fn amplitude(&self) -> f64 {
        1.0 / libm::sqrt(self.config.size as f64)
    }

    pub fn residue_probability(&self, residue: u64) -> Option<f64> {
        self.branches
            .iter()
            .find(|b| b.residue == residue)
            .map(|b| b.support.count as f64 / self.config.size as f64)
    }

    /// `sum |amplitude|^2`.
    pub fn norm_sqr(&self) -> f64 {
        let basis: u64 = self.branches.iter().map(|b| b.support.count).sum();
        basis as f64 / self.config.size as f64
    }
}

/// Hadamard layer followed by the oracle.
pub fn prepare_uniform(config: RegisterConfig) -> Result<EntangledState> {
    let m = config.size;
    let n = config.n as u128;
    let a = config.a as u128 % n;
    let period = multiplicative_order(a, n)?;
    let mut branches = Vec::new();
    let mut value = 1u128 % n;
    for x0 in 0..period.min(m) {
        branches.push(ResidueBranch {
            residue: value as u64,
            support: Progression {
                offset: x0,
                step: period,
                count: (m - x0).div_ceil(period),
            },
        });
        value = value * a % n;
    }
    Ok(EntangledState {
        config,
        period,
        branches,
    })
}

/// Uniform real in `[0, 1)` from the top 53 bits of one draw.
pub fn uniform_unit<R: RngCore>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Top register after the bottom register reads `residue`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CollapsedState {
    pub config: RegisterConfig,
    pub residue: u64,
    pub support: Progression,
}

impl CollapsedState {
    pub fn amplitude(&self) -> f64 {
        1.0 / libm::sqrt(self.support.count as f64)
    }

    /// Dense amplitude vector of length `M`.
    pub fn to_dense(&self) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.config.size as usize];
        let amp = Complex64::new(self.amplitude(), 0.0);
        for x in self.support.iter() {
            out[x as usize] = amp;
        }
        out
    }
}

/// Measures the bottom register. `forced` pins the outcome (it must be an
/// attainable residue); otherwise `w` is drawn with probability `count / M`.
pub fn measure_bottom<R: RngCore>(
    state: &EntangledState,
    forced: Option<u64>,
    rng: &mut R,
) -> Result<CollapsedState> {
    let branch = match forced {
        Some(w) => *state
            .branches
            .iter()
            .find(|b| b.residue == w)
            .ok_or(Error::ResidueNotInSupport(w))?,
        None => {
            let target = uniform_unit(rng) * state.config.size as f64;
            let mut acc = 0.0;
            let mut chosen = *state
                .branches
                .last()
                .expect("state has at least one branch");
            for b in &state.branches {
                acc += b.support.count as f64;
                if target < acc {
                    chosen = *b;
                    break;
                }
            }
            chosen
        }
    };
    Ok(CollapsedState {
        config: state.config,
        residue: branch.residue,
        support: branch.support,
    })
}

/// Where a distribution came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Provenance {
    pub residue: u64,
    pub register_size: u64,
    pub n: u64,
    pub a: u64,
}

/// Exact outcome probabilities of the top register.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementDistribution {
    probabilities: Vec<f64>,
    provenance: Option<Provenance>,
}

impl MeasurementDistribution {
    /// Validates non-negativity and total mass `1 +/- 1e-12`.
    pub fn new(probabilities: Vec<f64>, provenance: Option<Provenance>) -> Result<Self> {
        if probabilities.is_empty() {
            return Err(Error::InvalidArgument("distribution must be non-empty"));
        }
        if probabilities.iter().any(|p| !(p.is_finite() && *p >= 0.0)) {
            return Err(Error::InvalidArgument(
                "probabilities must be finite and non-negative",
            ));
        }
        let total: f64 = probabilities.iter().sum();
        if (total - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidArgument("probabilities must sum to 1"));
        }
        Ok(MeasurementDistribution {
            probabilities,
            provenance,
        })
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn total(&self) -> f64 {
        self.probabilities.iter().sum()
    }

    /// Outcomes sorted by decreasing probability, ties by increasing `v`.
    pub fn most_probable(&self, k: usize) -> Vec<u64> {
        let mut idx: Vec<u64> = (0..self.probabilities.len() as u64).collect();
        idx.sort_by(|&a, &b| {
            self.probabilities[b as usize]
                .total_cmp(&self.probabilities[a as usize])
                .then(a.cmp(&b))
        });
        idx.truncate(k);
        idx
    }
}

/// `|sum_{t<c} exp(i phi t)|^2` with `phi = 2 pi s / M`.
fn geometric_weight(s: u64, count: u64, m: u64) -> f64 {
    if s == 0 {
        return (count as f64) * (count as f64);
    }
    let num_arg = (count as u128 * s as u128 % m as u128) as f64 / m as f64;
    let den_arg = s as f64 / m as f64;
    let num = libm::sin(PI * num_arg);
    let den = libm::sin(PI * den_arg);
    (num * num) / (den * den)
}

/// QFT over `Z_M` of a collapsed state, in closed form:
/// `P(v) = |sum_t exp(2 pi i v (x0 + t r) / M)|^2 / (count M)`.
pub fn qft_distribution(collapsed: &CollapsedState) -> MeasurementDistribution {
    let m = collapsed.config.size;
    let Progression { step, count, .. } = collapsed.support;
    // P(v) depends on v only through v * step mod M, which has period M / gcd.
    let period = m / gcd(m as u128, step as u128) as u64;
    let scale = 1.0 / (count as f64 * m as f64);
    let base: Vec<f64> = (0..period)
        .map(|v| {
            let s = (v as u128 * step as u128 % m as u128) as u64;
            geometric_weight(s, count, m) * scale
        })
        .collect();
    let probabilities = (0..m as usize).map(|v| base[v % period as usize]).collect();
    MeasurementDistribution {
        probabilities,
        provenance: Some(Provenance {
            residue: collapsed.residue,
            register_size: m,
            n: collapsed.config.n,
            a: collapsed.config.a,
        }),
    }
}

/// QFT distribution of an arbitrary amplitude vector by direct summation,
/// `P(v) = |sum_x amp(x) exp(2 pi i v x / M)|^2 / M`.
pub fn dense_qft_distribution(amplitudes: &[Complex64]) -> Result<MeasurementDistribution> {
    let m = amplitudes.len() as u64;
    if m == 0 {
        return Err(Error::InvalidArgument("empty state"));
    }
    let roots: Vec<Complex64> = (0..m).map(|k| root_of_unity(k, m)).collect();
    let support: Vec<(u64, Complex64)> = amplitudes
        .iter()
        .enumerate()
        .filter(|(_, z)| z.norm_sqr() > 0.0)
        .map(|(x, &z)| (x as u64, z))
        .collect();
    let probabilities = (0..m)
        .map(|v| {
            let acc: Complex64 = support
                .iter()
                .map(|&(x, z)| z * roots[(v as u128 * x as u128 % m as u128) as usize])
                .sum();
            acc.norm_sqr() / m as f64
        })
        .collect();
    MeasurementDistribution::new(probabilities, None)
}

/// Inverse-CDF draw from `dist`.
pub fn sample_outcome<R: RngCore>(dist: &MeasurementDistribution, rng: &mut R) -> u64 {
    let u = uniform_unit(rng) * dist.total();
    let mut acc = 0.0;
    let mut last_positive = 0u64;
    for (v, &p) in dist.probabilities.iter().enumerate() {
        if p > 0.0 {
            last_positive = v as u64;
        }
        acc += p;
        if u < acc && p > 0.0 {
            return v as u64;
        }
    }
    last_positive
}

/// Continued-fraction scan of one outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodEstimate {
    /// Convergents of `v / M` examined, in order.
    pub convergents: Vec<Convergent>,
    pub candidate: Option<u64>,
}

/// Scans the convergents of `v / M` and returns the first denominator
/// `q <= N` with `a^q = 1 (mod N)`.
pub fn extract_period_detailed(v: u64, m: u64, n: u64, a: u64) -> Result<PeriodEstimate> {
    let all = convergents(v as u128, m as u128)?;
    let mut examined = Vec::new();
    for c in all {
        if c.denominator > n as u128 {
            break;
        }
        examined.push(c);
        if mod_pow(a as u128, c.denominator as u64, n as u128)? == 1 {
            return Ok(PeriodEstimate {
                convergents: examined,
                candidate: Some(c.denominator as u64),
            });
        }
    }
    Ok(PeriodEstimate {
        convergents: examined,
        candidate: None,
    })
}

pub fn extract_period(v: u64, m: u64, n: u64, a: u64) -> Option<u64> {
    extract_period_detailed(v, m, n, a)
        .ok()
        .and_then(|e| e.candidate)
}

/// Classification of one circuit run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SampleStatus {
    Success,
    /// No usable period, or the period gave only trivial divisors.
    Trivial,
    OddOrder,
    /// `a^{r/2} = -1 (mod N)`.
    MinusOne,
}

impl SampleStatus {
    pub fn name(&self) -> &'static str {
        match self {
            SampleStatus::Success => "success",
            SampleStatus::Trivial => "trivial",
            SampleStatus::OddOrder => "odd_order",
            SampleStatus::MinusOne => "minus_one",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleRecord {
    pub a: u64,
    /// Bottom-register reading `w`.
    pub residue: u64,
    pub outcome: u64,
    pub convergents: Vec<Convergent>,
    pub candidate_r: Option<u64>,
    pub status: SampleStatus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorOptions {
    pub a: Option<u64>,
    pub mode: RegisterMode,
    pub register_size: Option<u64>,
    pub max_attempts: u32,
    pub seed: u64,
}

impl Default for FactorOptions {
    fn default() -> Self {
        FactorOptions {
            a: None,
            mode: RegisterMode::PowerOfTwo,
            register_size: None,
            max_attempts: DEFAULT_MAX_ATTEMPTS,
            seed: 0,
        }
    }
}

/// Full record of one factoring run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorReport {
    pub n: u64,
    /// Base of the last circuit run, or the base that shared a factor with
    /// `N`; `None` when a classical pre-check finished the job.
    pub a: Option<u64>,
    pub mode: RegisterMode,
    pub register_size: Option<u64>,
    /// Period that produced the factors.
    pub order: Option<u64>,
    pub samples: Vec<SampleRecord>,
    /// `(p, q)` with `p <= q` and `p * q = N`.
    pub factors: Option<(u64, u64)>,
    /// Circuit runs performed.
    pub attempts: u32,
    pub seed: u64,
}

fn pick_coprime<R: RngCore>(n: u64, tried: &BTreeSet<u64>, rng: &mut R) -> Option<u64> {
    let candidates: Vec<u64> = (2..n)
        .filter(|&a| gcd(a as u128, n as u128) == 1 && !tried.contains(&a))
        .collect();
    if candidates.is_empty() {
        return None;
    }
    Some(candidates[(rng.next_u64() % candidates.len() as u64) as usize])
}

fn ordered(p: u64, n: u64) -> (u64, u64) {
    let q = n / p;
    (p.min(q), p.max(q))
}

/// An outcome `v ~ k M / r` with `gcd(k, r) > 1` only yields the divisor
/// `r / gcd(k, r)`. The lcm of such divisors over several runs with the same
/// base recovers `r`; it restarts from the new denominator once it exceeds `N`.
fn combine_partial(partial: u64, last: Option<&Convergent>, n: u64) -> u64 {
    let Some(q) = last.map(|c| c.denominator as u64) else {
        return partial;
    };
    let l = partial / gcd(partial as u128, q as u128) as u64 * q;
    if l > n {
        q
    } else {
        l
    }
}

/// Classifies a period candidate and returns the factor pair on success.
fn post_process(
    a: u64,
    n: u64,
    candidate: Option<u64>,
) -> Result<(SampleStatus, Option<(u64, u64)>)> {
    let Some(r) = candidate else {
        return Ok((SampleStatus::Trivial, None));
    };
    if r % 2 == 1 {
        return Ok((SampleStatus::OddOrder, None));
    }
    let half = mod_pow(a as u128, r / 2, n as u128)? as u64;
    if half == n - 1 {
        return Ok((SampleStatus::MinusOne, None));
    }
    for d in [
        gcd((half + n - 1) as u128 % n as u128, n as u128) as u64,
        gcd((half + 1) as u128, n as u128) as u64,
    ] {
        if d > 1 && d < n {
            return Ok((SampleStatus::Success, Some(ordered(d, n))));
        }
    }
    Ok((SampleStatus::Trivial, None))
}

/// Runs the factoring pipeline. Exhausting `max_attempts` is not an error
/// here: the report comes back with `factors = None`.
pub fn run_factoring(n: u64, options: &FactorOptions) -> Result<FactorReport> {
    if n < 4 {
        return Err(Error::InvalidArgument("N must be at least 4"));
    }
    let mut report = FactorReport {
        n,
        a: None,
        mode: options.mode,
        register_size: None,
        order: None,
        samples: Vec::new(),
        factors: None,
        attempts: 0,
        seed: options.seed,
    };
    if let Some(a) = options.a {
        if a < 2 {
            return Err(Error::InvalidArgument("base a must be at least 2"));
        }
        if a % n == 0 {
            return Err(Error::InvalidArgument("base a must not be a multiple of N"));
        }
    }
    if n.is_multiple_of(2) {
        report.factors = Some(ordered(2, n));
        return Ok(report);
    }
    let fac = factorize(n as u128)?;
    if fac.is_prime() {
        return Err(Error::PrimeModulus(n));
    }
    if fac.factors().len() == 1 {
        let p = fac.factors()[0].0 as u64;
        report.factors = Some(ordered(p, n));
        return Ok(report);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut tried = BTreeSet::new();
    // lcm of the denominators seen for the current base
    let mut partial = 1u64;
    let mut a = match options.a {
        Some(a) => {
            let g = gcd(a as u128, n as u128) as u64;
            if g > 1 {
                report.a = Some(a);
                report.factors = Some(ordered(g, n));
                return Ok(report);
            }
            a
        }
        None => match pick_coprime(n, &tried, &mut rng) {
            Some(a) => a,
            None => return Ok(report),
        },
    };

    while report.attempts < options.max_attempts {
        report.attempts += 1;
        report.a = Some(a);
        let config = RegisterConfig::new(n, a, options.mode, options.register_size)?;
        report.register_size = Some(config.size());
        let state = prepare_uniform(config)?;
        let collapsed = measure_bottom(&state, None, &mut rng)?;
        let dist = qft_distribution(&collapsed);
        let outcome = sample_outcome(&dist, &mut rng);
        let estimate = extract_period_detailed(outcome, config.size(), n, a)?;
        let candidate = match estimate.candidate {
            Some(r) => Some(r),
            None => {
                partial = combine_partial(partial, estimate.convergents.last(), n);
                Some(partial).filter(|&l| l > 1 && mod_pow(a as u128, l, n as u128) == Ok(1))
            }
        };
        let (status, factors) = post_process(a, n, candidate)?;
        report.samples.push(SampleRecord {
            a,
            residue: collapsed.residue,
            outcome,
            convergents: estimate.convergents,
            candidate_r: candidate,
            status,
        });
        match status {
            SampleStatus::Success => {
                report.order = candidate;
                report.factors = factors;
                break;
            }
            SampleStatus::Trivial => {}
            SampleStatus::OddOrder | SampleStatus::MinusOne => {
                partial = 1;
                tried.insert(a);
                match pick_coprime(n, &tried, &mut rng) {
                    Some(next) => a = next,
                    None => break,
                }
            }
        }
    }
    Ok(report)
}

/// [`run_factoring`], failing when no factors were found.
pub fn factor(n: u64, options: &FactorOptions) -> Result<FactorReport> {
    let report = run_factoring(n, options)?;
    if report.factors.is_none() {
        return Err(Error::AttemptsExhausted {
            attempts: report.attempts,
        });
    }
    Ok(report)
}
