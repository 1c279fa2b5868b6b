//! Scalar irreducible representations of cyclic groups and the projection
//! operators built from them.
//!
//! A function on the circle is stored as one complex sample per slice, so the
//! operator `P_g f(x) = f(g^{-1} x)` is a cyclic shift of the sample vector.
//! Projections carry the group-average prefactor `1/M`; the unitary `1/sqrt(M)`
//! normalization belongs to the QFT in [`crate::shor_sim`] only.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::arithmetic::PrimeFactorization;
use crate::error::{Error, Result};
use crate::group::{inverse, CyclicGroup, GroupElement};

/// Default tolerance for composite identities.
pub const COMPOSITE_TOL: f64 = 1e-10;
/// Default tolerance for single evaluations.
pub const SINGLE_TOL: f64 = 1e-12;

/// Irrep label `j` of the cyclic group of order `M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IrrepLabel {
    j: u64,
    order: u64,
}

impl IrrepLabel {
    pub fn new(j: u64, order: u64) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidArgument("group order must be at least 1"));
        }
        if j >= order {
            return Err(Error::OutOfRange {
                value: j as u128,
                bound: order as u128,
            });
        }
        Ok(IrrepLabel { j, order })
    }

    pub fn j(&self) -> u64 {
        self.j
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// The conjugate label `M - j`.
    pub fn conjugate(&self) -> IrrepLabel {
        IrrepLabel {
            j: (self.order - self.j) % self.order,
            order: self.order,
        }
    }

    /// All labels of the group of order `order`.
    pub fn all(order: u64) -> impl Iterator<Item = IrrepLabel> {
        (0..order).map(move |j| IrrepLabel { j, order })
    }
}

/// `exp(2*pi*i * num / den)` with `num` already reduced modulo `den`.
#[inline]
pub(crate) fn root_of_unity(num: u64, den: u64) -> Complex64 {
    let theta = 2.0 * PI * (num % den) as f64 / den as f64;
    Complex64::new(libm::cos(theta), libm::sin(theta))
}

/// Character `Gamma^(j)(C_M^k) = exp(2*pi*i*j*k/M)`.
pub fn irrep_value(label: IrrepLabel, k: u64) -> Result<Complex64> {
    if k >= label.order {
        return Err(Error::OutOfRange {
            value: k as u128,
            bound: label.order as u128,
        });
    }
    let jk = (label.j as u128 * k as u128 % label.order as u128) as u64;
    Ok(root_of_unity(jk, label.order))
}

/// Complex samples of a function, one per group element.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupFunction {
    values: Vec<Complex64>,
}

impl GroupFunction {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidArgument("group function must be non-empty"));
        }
        if values
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidArgument(
                "group function values must be finite",
            ));
        }
        Ok(GroupFunction { values })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn zeros(order: u64) -> Self {
        GroupFunction {
            values: vec![Complex64::new(0.0, 0.0); order.max(1) as usize],
        }
    }

    /// Unit sample at index `k`.
    pub fn delta(order: u64, k: u64) -> Result<Self> {
        let mut f = Self::zeros(order);
        let slot = f.values.get_mut(k as usize).ok_or(Error::OutOfRange {
            value: k as u128,
            bound: order as u128,
        })?;
        *slot = Complex64::new(1.0, 0.0);
        Ok(f)
    }

    pub fn order(&self) -> u64 {
        self.values.len() as u64
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.values.iter().map(|z| z.norm_sqr()).sum::<f64>())
    }

    pub fn scale(&self, c: Complex64) -> GroupFunction {
        GroupFunction {
            values: self.values.iter().map(|&z| z * c).collect(),
        }
    }

    pub fn conj(&self) -> GroupFunction {
        GroupFunction {
            values: self.values.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn add(&self, other: &GroupFunction) -> Result<GroupFunction> {
        check_len(self.order(), other)?;
        Ok(GroupFunction {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Largest pointwise `|self - other|`.
    pub fn max_abs_diff(&self, other: &GroupFunction) -> Result<f64> {
        check_len(self.order(), other)?;
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }
}

fn check_len(order: u64, f: &GroupFunction) -> Result<()> {
    if f.order() != order {
        return Err(Error::LengthMismatch {
            expected: order as usize,
            actual: f.values.len(),
        });
    }
    Ok(())
}

/// Great Orthogonality summary for the scalar irreps of `Z_M`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrthogonalityReport {
    pub order: u64,
    /// `max_{j,j'} |(1/M) sum_k conj(Gamma^j(k)) Gamma^j'(k) - delta_jj'|`
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
}

pub fn verify_great_orthogonality(order: u64, tol: f64) -> Result<OrthogonalityReport> {
    if order == 0 {
        return Err(Error::InvalidArgument("group order must be at least 1"));
    }
    let m = order as usize;
    let table: Vec<Vec<Complex64>> = IrrepLabel::all(order)
        .map(|label| {
            (0..order)
                .map(|k| irrep_value(label, k))
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;
    let mut max_deviation: f64 = 0.0;
    for j in 0..m {
        for jp in 0..m {
            let sum: Complex64 = (0..m).map(|k| table[j][k].conj() * table[jp][k]).sum();
            let target = if j == jp { 1.0 } else { 0.0 };
            let dev = (sum / order as f64 - Complex64::new(target, 0.0)).norm();
            max_deviation = max_deviation.max(dev);
        }
    }
    Ok(OrthogonalityReport {
        order,
        max_deviation,
        tolerance: tol,
        passed: max_deviation < tol,
    })
}

/// Wigner action `(P_g f)(x) = f(g^{-1} x)`: output index `x` holds the input
/// value at `(x - k_g) mod M`.
pub fn shift(f: &GroupFunction, g: GroupElement) -> Result<GroupFunction> {
    let m = g.group().order();
    check_len(m, f)?;
    let k = g.index() as usize;
    let n = m as usize;
    Ok(GroupFunction {
        values: (0..n).map(|x| f.values[(x + n - k) % n]).collect(),
    })
}

/// One-slice translation of the argument, `f(x) -> f(x + 1)`; equals
/// `P_{C^{-1}} f`.
pub fn translate_one_step(f: &GroupFunction) -> Result<GroupFunction> {
    let group = CyclicGroup::new(f.order())?;
    shift(f, inverse(group.generator()))
}

/// `P^(j) f = (1/M) sum_k Gamma^(j)(C^k) P_{C^k} f`.
pub fn project(label: IrrepLabel, f: &GroupFunction) -> Result<GroupFunction> {
    let m = label.order;
    check_len(m, f)?;
    let n = m as usize;
    let phases: Vec<Complex64> = (0..m)
        .map(|k| irrep_value(label, k))
        .collect::<Result<_>>()?;
    let inv_m = 1.0 / m as f64;
    let values = (0..n)
        .map(|x| {
            let acc: Complex64 = (0..n).map(|k| phases[k] * f.values[(x + n - k) % n]).sum();
            acc * inv_m
        })
        .collect();
    Ok(GroupFunction { values })
}

/// Projector of the prime-order subgroup generated by `C_M^{M/b}` with label
/// `jb` of `Z_b`.
fn project_on_subgroup(f: &GroupFunction, prime: u64, jb: u64) -> GroupFunction {
    let n = f.values.len();
    let stride = n / prime as usize;
    let phases: Vec<Complex64> = (0..prime)
        .map(|t| root_of_unity(jb * t % prime, prime))
        .collect();
    let inv_b = 1.0 / prime as f64;
    let values = (0..n)
        .map(|x| {
            let acc: Complex64 = phases
                .iter()
                .enumerate()
                .map(|(t, &ph)| ph * f.values[(x + n - (t * stride) % n) % n])
                .sum();
            acc * inv_b
        })
        .collect();
    GroupFunction { values }
}

/// `P^(j) f` assembled as the composition of prime-order subgroup projectors,
/// factor `b_i` carrying label `j mod b_i`, applied in ascending `b_i`.
pub fn project_via_primes(
    label: IrrepLabel,
    f: &GroupFunction,
    factorization: &PrimeFactorization,
) -> Result<GroupFunction> {
    let m = label.order;
    check_len(m, f)?;
    if factorization.n() != m as u128 {
        return Err(Error::InvalidArgument(
            "factorization does not match group order",
        ));
    }
    if !factorization.is_square_free() {
        return Err(Error::NotSquareFree(factorization.n()));
    }
    let mut g = f.clone();
    for b in factorization.primes() {
        let b = b as u64;
        g = project_on_subgroup(&g, b, label.j % b);
    }
    Ok(g)
}

/// Result of checking `f^[j](x + 1) = exp(2*pi*i*j/M) f^[j](x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseReport {
    pub label: IrrepLabel,
    pub phase: Complex64,
    pub max_deviation: f64,
    pub passed: bool,
}

pub fn translation_phase_check(
    label: IrrepLabel,
    f: &GroupFunction,
    tol: f64,
) -> Result<PhaseReport> {
    let projected = project(label, f)?;
    let translated = translate_one_step(&projected)?;
    let phase = root_of_unity(label.j, label.order);
    let max_deviation = translated.max_abs_diff(&projected.scale(phase))?;
    Ok(PhaseReport {
        label,
        phase,
        max_deviation,
        passed: max_deviation < tol,
    })
}
