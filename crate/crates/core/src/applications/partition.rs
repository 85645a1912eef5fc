use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{check_even_square, check_symmetric, require_pd, require_psd, symmetric_eigen};
use crate::matrix::Matrix;
use crate::simultaneous::{family_diagonalize_psd, poisson_commutator};
use crate::tolerance::{scale, Tolerances};

/// `H(z) = zᵀMz` for `particles` particles with `dims` degrees of freedom
/// each, so `M` is `2Nd × 2Nd`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticHamiltonian {
    m: Matrix,
    particles: usize,
    dims: usize,
}

impl QuadraticHamiltonian {
    pub fn new(m: Matrix, particles: usize, dims: usize, tol: &Tolerances) -> Result<Self> {
        let n = check_even_square(&m)?;
        if particles == 0 || dims == 0 || particles * dims != n {
            return Err(Error::Shape(format!(
                "{particles} particle(s) with {dims} degree(s) of freedom need a {}x{} matrix, got {}x{}",
                2 * particles * dims,
                2 * particles * dims,
                m.rows(),
                m.cols()
            )));
        }
        check_symmetric(&m, tol)?;
        require_psd(&m, tol)?;
        Ok(QuadraticHamiltonian { m, particles, dims })
    }

    /// One particle whose degrees of freedom are the whole matrix.
    pub fn single(m: Matrix, tol: &Tolerances) -> Result<Self> {
        let n = check_even_square(&m)?;
        QuadraticHamiltonian::new(m, 1, n, tol)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn particles(&self) -> usize {
        self.particles
    }

    pub fn dims(&self) -> usize {
        self.dims
    }

    /// `Nd`, half the phase-space dimension.
    pub fn half_dim(&self) -> usize {
        self.particles * self.dims
    }

    pub fn energy(&self, z: &[f64]) -> f64 {
        self.m.quadratic_form(z)
    }
}

/// Inverse temperature `β` and action scale `ħ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThermoParams {
    pub beta: f64,
    pub hbar: f64,
}

impl ThermoParams {
    pub fn new(beta: f64, hbar: f64) -> Result<Self> {
        let p = ThermoParams { beta, hbar };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("beta", self.beta), ("hbar", self.hbar)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter(format!("{name} must be strictly positive, got {v}")));
            }
        }
        Ok(())
    }

    fn prefactor(&self, half_dim: usize) -> f64 {
        (2.0 * self.hbar * self.beta).powi(-(half_dim as i32))
    }
}

/// Places each block Hamiltonian on its own coordinates of the joint space,
/// keeping the `(x…, p…)` ordering.
fn embed_blocks(hs: &[QuadraticHamiltonian]) -> Vec<Matrix> {
    let total: usize = hs.iter().map(|h| h.half_dim()).sum();
    let mut offset = 0;
    let mut out = Vec::with_capacity(hs.len());
    for h in hs {
        let d = h.half_dim();
        let map = |a: usize| if a < d { offset + a } else { total + offset + a - d };
        let mut e = Matrix::zeros(2 * total, 2 * total);
        for a in 0..2 * d {
            for b in 0..2 * d {
                e[(map(a), map(b))] = h.m[(a, b)];
            }
        }
        out.push(e);
        offset += d;
    }
    out
}

fn check_commuting(forms: &[Matrix], tol: &Tolerances) -> Result<()> {
    for (i, a) in forms.iter().enumerate() {
        for (j, b) in forms.iter().enumerate().skip(i + 1) {
            let residual = poisson_commutator(a, b)?;
            if residual > tol.sym_tol * scale(a.norm_inf() * b.norm_inf()) {
                return Err(Error::NotCommuting { i, j, residual });
            }
        }
    }
    Ok(())
}

/// `Z = (2ħβ)^{−Nd} ∏ det(Hᵢ)^{−1/2}` for Hamiltonians acting on disjoint
/// blocks of phase space.
pub fn partition_noninteracting(hs: &[QuadraticHamiltonian], params: &ThermoParams, tol: &Tolerances) -> Result<f64> {
    params.validate()?;
    if hs.is_empty() {
        return Err(Error::InvalidParameter("at least one Hamiltonian is required".into()));
    }
    check_commuting(&embed_blocks(hs), tol)?;
    let mut z = params.prefactor(hs.iter().map(|h| h.half_dim()).sum());
    for h in hs {
        let eig = require_pd(&h.m, tol)?;
        z *= eig.values.iter().map(|v| v.sqrt().recip()).product::<f64>();
    }
    Ok(z)
}

/// `Z = (2ħβ)^{−Nd} ∏ⱼ (Σᵢ λᵢⱼ)^{−1}` for Poisson-commuting Hamiltonians on a
/// common phase space, `λᵢⱼ` being the symplectic eigenvalues of `Hᵢ` in a
/// shared Williamson basis.
pub fn partition_interacting(hs: &[QuadraticHamiltonian], params: &ThermoParams, tol: &Tolerances) -> Result<f64> {
    params.validate()?;
    let first = hs
        .first()
        .ok_or_else(|| Error::InvalidParameter("at least one Hamiltonian is required".into()))?;
    let forms: Vec<Matrix> = hs.iter().map(|h| h.m.clone()).collect();
    for m in &forms {
        if m.shape() != first.m.shape() {
            return Err(Error::DimensionMismatch {
                expected: first.m.rows(),
                found: m.rows(),
            });
        }
    }
    check_commuting(&forms, tol)?;

    let mut total = Matrix::zeros(first.m.rows(), first.m.cols());
    for m in &forms {
        total = &total + m;
    }
    let eig = symmetric_eigen(&total, tol)?;
    let thr = tol.rank_tol * scale(total.norm_inf());
    let flat = eig.values.iter().filter(|v| v.abs() < thr).count();
    if flat > 0 {
        return Err(Error::DivergentMode {
            dim: flat,
            value: eig.min_value(),
        });
    }

    let diag = family_diagonalize_psd(&forms, tol)?;
    let n = first.half_dim();
    let mut z = params.prefactor(n);
    for j in 0..n {
        let sum: f64 = diag.spectra.iter().map(|sp| sp[j]).sum();
        z /= sum;
    }
    Ok(z)
}
