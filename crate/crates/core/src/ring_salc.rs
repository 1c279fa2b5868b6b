//! N-site ring tight-binding model and symmetry-adapted linear combinations.
//!
//! The ring is a stand-in for the cyclic molecules and periodic polyenes: its
//! Hamiltonian commutes with every rotation of `Z_n`, so its eigenmodes are the
//! Fourier modes and each SALC is an eigenvector.
//!
//! For `n = 2` the two edges joining the same pair of sites are collapsed into
//! one coupling `t`, so that ring has energies `alpha +/- t`.

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::arithmetic::PrimeFactorization;
use crate::error::{Error, Result};
use crate::group::ExtendedGroupSpec;
use crate::representations::{
    project, project_via_primes, root_of_unity, GroupFunction, IrrepLabel, COMPOSITE_TOL,
    SINGLE_TOL,
};

/// Ring of `n_sites` orbitals with on-site energy `onsite` and
/// nearest-neighbour hopping `hopping`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RingSpec {
    n_sites: usize,
    onsite: f64,
    hopping: f64,
}

impl RingSpec {
    pub fn new(n_sites: usize, onsite: f64, hopping: f64) -> Result<Self> {
        if n_sites < 2 {
            return Err(Error::InvalidArgument("a ring needs at least 2 sites"));
        }
        if !onsite.is_finite() || !hopping.is_finite() {
            return Err(Error::InvalidArgument("ring parameters must be finite"));
        }
        Ok(RingSpec {
            n_sites,
            onsite,
            hopping,
        })
    }

    /// Hückel ring: `alpha = 0`, `t = -1`, so `j = 0` is the ground mode.
    pub fn huckel(n_sites: usize) -> Result<Self> {
        Self::new(n_sites, 0.0, -1.0)
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn onsite(&self) -> f64 {
        self.onsite
    }

    pub fn hopping(&self) -> f64 {
        self.hopping
    }
}

/// Orbital coefficients over ring sites.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitalVector {
    pub coefficients: Vec<Complex64>,
    /// Norm before normalization.
    pub norm: f64,
    /// Set when the projection vanished; coefficients are then left raw.
    pub is_zero: bool,
}

impl OrbitalVector {
    fn normalized(raw: Vec<Complex64>) -> Self {
        let norm = libm::sqrt(raw.iter().map(|z| z.norm_sqr()).sum::<f64>());
        if norm < SINGLE_TOL {
            return OrbitalVector {
                coefficients: raw,
                norm,
                is_zero: true,
            };
        }
        OrbitalVector {
            coefficients: raw.into_iter().map(|z| z / norm).collect(),
            norm,
            is_zero: false,
        }
    }

    pub fn max_abs_diff(&self, other: &OrbitalVector) -> f64 {
        self.coefficients
            .iter()
            .zip(&other.coefficients)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Real symmetric ring Hamiltonian: `H[i][i] = alpha`, `H[i][i +/- 1] = t`.
pub fn build_ring_hamiltonian(spec: &RingSpec) -> DMatrix<f64> {
    let n = spec.n_sites;
    let mut h = DMatrix::zeros(n, n);
    for i in 0..n {
        h[(i, i)] = spec.onsite;
        let next = (i + 1) % n;
        h[(i, next)] = spec.hopping;
        h[(next, i)] = spec.hopping;
    }
    h
}

/// Energy of Fourier mode `j`: `alpha + 2t cos(2 pi j / n)`, or
/// `alpha + t cos(pi j)` on the two-site ring.
pub fn mode_energy(spec: &RingSpec, j: usize) -> f64 {
    let n = spec.n_sites;
    let c = root_of_unity(j as u64 % n as u64, n as u64).re;
    let bonds = if n == 2 { 1.0 } else { 2.0 };
    spec.onsite + bonds * spec.hopping * c
}

/// Analytic eigenmode of the ring.
#[derive(Debug, Clone, PartialEq)]
pub struct RingMode {
    pub j: usize,
    pub energy: f64,
    pub orbital: OrbitalVector,
}

/// Fourier modes `exp(2 pi i j s / n) / sqrt(n)` with their energies.
pub fn analytic_modes(spec: &RingSpec) -> Vec<RingMode> {
    let n = spec.n_sites;
    let scale = 1.0 / libm::sqrt(n as f64);
    (0..n)
        .map(|j| {
            let coefficients = (0..n)
                .map(|s| root_of_unity((j * s % n) as u64, n as u64) * scale)
                .collect();
            RingMode {
                j,
                energy: mode_energy(spec, j),
                orbital: OrbitalVector {
                    coefficients,
                    norm: 1.0,
                    is_zero: false,
                },
            }
        })
        .collect()
}

/// Numerical eigenpairs of the ring Hamiltonian, eigenvalues ascending.
pub fn diagonalize(spec: &RingSpec) -> (Vec<f64>, DMatrix<f64>) {
    let eig = build_ring_hamiltonian(spec).symmetric_eigen();
    let n = spec.n_sites;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    (values, vectors)
}

/// Classes of mutually degenerate mode labels: `{0}`, `{j, n-j}` for
/// `0 < j < n/2`, and `{n/2}` for even `n`.
pub fn degeneracy_pattern(n: usize) -> Vec<Vec<usize>> {
    let mut classes = vec![vec![0]];
    for j in 1..n {
        let partner = n - j;
        match j.cmp(&partner) {
            core::cmp::Ordering::Less => classes.push(vec![j, partner]),
            core::cmp::Ordering::Equal => classes.push(vec![j]),
            core::cmp::Ordering::Greater => {}
        }
    }
    classes
}

/// Largest Frobenius distance, over degeneracy classes, between the projector
/// onto the numerically computed eigenvectors and the projector onto the
/// analytic Fourier modes of that class. Eigenvalues are compared too; the
/// returned pair is `(max eigenvalue error, max projector distance)`.
pub fn compare_with_fourier_modes(spec: &RingSpec, tol: f64) -> (f64, f64) {
    let n = spec.n_sites;
    let (values, vectors) = diagonalize(spec);
    let modes = analytic_modes(spec);

    let mut analytic: Vec<f64> = modes.iter().map(|m| m.energy).collect();
    analytic.sort_by(f64::total_cmp);
    let energy_err = values
        .iter()
        .zip(&analytic)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);

    let mut proj_err: f64 = 0.0;
    for class in degeneracy_pattern(n) {
        let energy = modes[class[0]].energy;
        let mut p_num = DMatrix::<f64>::zeros(n, n);
        for (col, &e) in values.iter().enumerate() {
            if (e - energy).abs() < tol {
                let v: DVector<f64> = vectors.column(col).into_owned();
                p_num += &v * v.transpose();
            }
        }
        let mut p_ana = DMatrix::<Complex64>::zeros(n, n);
        for &j in &class {
            let u = DVector::from_vec(modes[j].orbital.coefficients.clone());
            p_ana += &u * u.adjoint();
        }
        let diff: f64 = (0..n)
            .flat_map(|r| (0..n).map(move |c| (r, c)))
            .map(|(r, c)| (p_ana[(r, c)] - Complex64::new(p_num[(r, c)], 0.0)).norm_sqr())
            .sum();
        proj_err = proj_err.max(libm::sqrt(diff));
    }
    (energy_err, proj_err)
}

/// Normalized projection of an atomic-orbital profile onto irrep `j`.
pub fn salc(label: IrrepLabel, ao_profile: &GroupFunction) -> Result<OrbitalVector> {
    let p = project(label, ao_profile)?;
    Ok(OrbitalVector::normalized(p.into_values()))
}

/// [`salc`] built from the prime-order subgroup projectors.
pub fn salc_via_primes(
    label: IrrepLabel,
    ao_profile: &GroupFunction,
    factorization: &PrimeFactorization,
) -> Result<OrbitalVector> {
    let p = project_via_primes(label, ao_profile, factorization)?;
    Ok(OrbitalVector::normalized(p.into_values()))
}

/// Whether slices `x1` and `x2` of `G^{N,a}` carry the same value of the
/// irrep-`j` SALC of a single orbital at slice 0.
pub fn salc_coset_equality(
    label: IrrepLabel,
    spec: &ExtendedGroupSpec,
    x1: u64,
    x2: u64,
) -> Result<bool> {
    let m = spec.order();
    if label.order() != m {
        return Err(Error::LengthMismatch {
            expected: m as usize,
            actual: label.order() as usize,
        });
    }
    for x in [x1, x2] {
        if x >= m {
            return Err(Error::OutOfRange {
                value: x as u128,
                bound: m as u128,
            });
        }
    }
    let f = project(label, &GroupFunction::delta(m, 0)?)?;
    let (v1, v2) = (f.values()[x1 as usize], f.values()[x2 as usize]);
    // values carry a 1/M prefactor
    Ok((v1 - v2).norm() * (m as f64) < COMPOSITE_TOL)
}
