//! The classical oracle `f(x) = a^x mod N` and its coset labeling
//! `a^x = alpha * N + beta`.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::arithmetic::{mod_pow, multiplicative_order, ExactInt};
use crate::error::{Error, Result};
use crate::group::ExtendedGroupSpec;
use crate::representations::root_of_unity;

/// Oracle parameters. `a < N` is not required; `a = 1` gives a constant oracle.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OracleSpec {
    extended: ExtendedGroupSpec,
}

impl OracleSpec {
    pub fn new(n: u64, a: u64) -> Result<Self> {
        Ok(OracleSpec {
            extended: ExtendedGroupSpec::new(n, a)?,
        })
    }

    pub fn n(&self) -> u64 {
        self.extended.n()
    }

    pub fn a(&self) -> u64 {
        self.extended.a()
    }

    pub fn extended(&self) -> &ExtendedGroupSpec {
        &self.extended
    }

    /// `f(x) = a^x mod N`.
    pub fn residue(&self, x: u64) -> u64 {
        // n >= 2 is guaranteed by construction
        mod_pow(self.a() as u128, x, self.n() as u128).unwrap_or(0) as u64
    }

    /// Multiplicative order `r` of `a` modulo `N`.
    pub fn order(&self) -> Result<u64> {
        multiplicative_order(self.a() as u128, self.n() as u128)
    }
}

/// `(alpha, beta)` with `a^x = alpha * N + beta`, `0 <= beta < N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CosetLabel {
    pub alpha: ExactInt,
    pub beta: ExactInt,
}

/// Exact coset label of `a^x`. Fails with an overflow error once `a^x`
/// exceeds `2^127 - 1`.
pub fn oracle_eval(spec: &OracleSpec, x: u64) -> Result<CosetLabel> {
    let power = ExactInt::from(spec.a()).checked_pow(x)?;
    let (alpha, beta) = power.div_rem(ExactInt::from(spec.n()))?;
    if beta.get() != spec.residue(x) as u128 {
        return Err(Error::InvalidArgument(
            "exact and modular residues disagree",
        ));
    }
    Ok(CosetLabel { alpha, beta })
}

/// `[a^x mod N for x in 0..length]`.
pub fn residue_sequence(spec: &OracleSpec, length: u64) -> Vec<u64> {
    let n = spec.n() as u128;
    let a = spec.a() as u128 % n;
    let mut out = Vec::with_capacity(length as usize);
    let mut value = 1u128 % n;
    for _ in 0..length {
        out.push(value as u64);
        value = value * a % n;
    }
    out
}

/// Outcome of the exhaustive check `f(x1) = f(x2) <=> x1 = x2 (mod r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodReport {
    pub order: u64,
    pub window: u64,
    /// Pairs `(x1, x2)`, `x1 < x2`, where the equivalence fails.
    pub violations: Vec<(u64, u64)>,
}

impl PeriodReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Default window `4 a N`.
pub fn default_window(spec: &OracleSpec) -> u64 {
    4 * spec.extended.order()
}

/// Checks that the oracle is constant exactly on classes of `x mod r` over
/// every pair in `[0, window)`.
pub fn verify_period_subgroup(spec: &OracleSpec, window: u64) -> Result<PeriodReport> {
    let r = spec.order()?;
    if window < 2 * r {
        return Err(Error::InvalidArgument(
            "window must cover at least two periods",
        ));
    }
    let values = residue_sequence(spec, window);
    let mut violations = Vec::new();
    for x1 in 0..window {
        for x2 in x1 + 1..window {
            let same_value = values[x1 as usize] == values[x2 as usize];
            let same_class = (x2 - x1) % r == 0;
            if same_value != same_class {
                violations.push((x1, x2));
            }
        }
    }
    Ok(PeriodReport {
        order: r,
        window,
        violations,
    })
}

/// Unitary DFT `F[k] = L^{-1/2} sum_x 1[f(x) = w] exp(-2 pi i k x / L)` of
/// the residue indicator over `x in [0, L)`.
pub fn residue_spectrum(spec: &OracleSpec, window: u64, residue: u64) -> Result<Vec<Complex64>> {
    if window == 0 {
        return Err(Error::InvalidArgument("window must be positive"));
    }
    let hits: Vec<u64> = residue_sequence(spec, window)
        .into_iter()
        .enumerate()
        .filter(|&(_, v)| v == residue)
        .map(|(x, _)| x as u64)
        .collect();
    let norm = 1.0 / libm::sqrt(window as f64);
    let mut out = vec![Complex64::new(0.0, 0.0); window as usize];
    for (k, slot) in out.iter_mut().enumerate() {
        let acc: Complex64 = hits
            .iter()
            .map(|&x| {
                let kx = (k as u128 * x as u128 % window as u128) as u64;
                root_of_unity((window - kx) % window, window)
            })
            .sum();
        *slot = acc * norm;
    }
    Ok(out)
}
