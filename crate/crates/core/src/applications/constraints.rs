use serde::Serialize;

use crate::degenerate::degenerate_williamson;
use crate::error::{Error, Result};
use crate::linalg::{check_even_square, check_symmetric, require_pd};
use crate::matrix::Matrix;
use crate::simultaneous::simultaneous_williamson_psd;
use crate::tolerance::{Tolerances, CLUSTER_GAP};

/// Constraints relating a degenerate Hamiltonian `H` to a nondegenerate
/// extension `H̃` that shares its elliptic modes.
///
/// In the common normal coordinates `ζ = S⁻¹z` the two differ only on the
/// constrained coordinates: `H̃(Sζ) − H(Sζ) = Σₗ C_l ζ_{chi_indices[l]}²`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstraintReport {
    #[serde(rename = "S")]
    pub s: Matrix,
    pub k: usize,
    pub chi_indices: Vec<usize>,
    pub c: Vec<f64>,
}

impl ConstraintReport {
    /// The constraint functions `χₗ(ζ)`, read off normal coordinates `ζ`.
    pub fn constraints(&self, zeta: &[f64]) -> Result<Vec<f64>> {
        if zeta.len() != self.s.cols() {
            return Err(Error::DimensionMismatch {
                expected: self.s.cols(),
                found: zeta.len(),
            });
        }
        Ok(self.chi_indices.iter().map(|&i| zeta[i]).collect())
    }

    /// `Σₗ χₗ C_l χₗ` at normal coordinates `ζ`.
    pub fn constraint_energy(&self, zeta: &[f64]) -> Result<f64> {
        let chi = self.constraints(zeta)?;
        Ok(chi.iter().zip(&self.c).map(|(x, c)| c * x * x).sum())
    }
}

/// Common normal form of a PSD `m` with symplectic kernel and a PD `mt`
/// that Poisson-commutes with it and agrees with it on the elliptic modes.
pub fn hormander_constraints(m: &Matrix, mt: &Matrix, tol: &Tolerances) -> Result<ConstraintReport> {
    let n = check_even_square(m)?;
    if mt.shape() != m.shape() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: mt.rows(),
        });
    }
    check_symmetric(mt, tol)?;
    require_pd(mt, tol)?;
    let degenerate = degenerate_williamson(m, tol)?;
    let joint = simultaneous_williamson_psd(m, mt, tol)?;
    let (lam, lam_t) = (&joint.spectra[0], &joint.spectra[1]);
    let k = lam.iter().filter(|&&v| v != 0.0).count();
    if k != degenerate.k {
        return Err(Error::Degeneracy(format!(
            "joint normal form has {k} elliptic modes, the degenerate form alone {}",
            degenerate.k
        )));
    }
    for j in 0..k {
        if (lam[j] - lam_t[j]).abs() > CLUSTER_GAP * lam[j].abs().max(lam_t[j].abs()) {
            return Err(Error::SpectrumMismatch {
                index: j,
                degenerate: lam[j],
                full: lam_t[j],
            });
        }
    }
    let chi_indices: Vec<usize> = (k..n).chain(n + k..2 * n).collect();
    let c: Vec<f64> = (k..n).chain(k..n).map(|j| lam_t[j]).collect();
    Ok(ConstraintReport {
        s: joint.s,
        k,
        chi_indices,
        c,
    })
}

/// `Σₗ χₗ C_l χₗ − 2` at normal coordinates `ζ`; zero on the hypersurface
/// where the constraint energy equals 2.
pub fn gromov_gap(report: &ConstraintReport, zeta: &[f64]) -> Result<f64> {
    Ok(report.constraint_energy(zeta)? - 2.0)
}
