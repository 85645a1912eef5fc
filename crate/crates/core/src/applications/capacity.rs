use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::symplectic::symplectic_inverse;
use crate::tolerance::Tolerances;
use crate::williamson::symplectic_spectrum;

/// Regions with a closed-form capacity.
///
/// JSON: `{"type": "ball", "radius": R}`,
/// `{"type": "cylinder", "axis": j, "radius": R}` (axis counted from 1) or
/// `{"type": "ellipsoid", "m": Matrix}` for `{z : zᵀMz ≤ 1}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum PhaseSpaceRegion {
    Ball { radius: f64 },
    Cylinder { axis: usize, radius: f64 },
    Ellipsoid { m: Matrix },
}

impl PhaseSpaceRegion {
    /// Image under `z ↦ t·z`.
    pub fn scaled(&self, t: f64) -> PhaseSpaceRegion {
        match self {
            PhaseSpaceRegion::Ball { radius } => PhaseSpaceRegion::Ball { radius: radius * t.abs() },
            PhaseSpaceRegion::Cylinder { axis, radius } => PhaseSpaceRegion::Cylinder {
                axis: *axis,
                radius: radius * t.abs(),
            },
            PhaseSpaceRegion::Ellipsoid { m } => PhaseSpaceRegion::Ellipsoid { m: m.scale(1.0 / (t * t)) },
        }
    }

    /// Image of an ellipsoid under the symplectic map `s`, i.e. the ellipsoid
    /// of `S⁻ᵀMS⁻¹`.
    pub fn ellipsoid_image(m: &Matrix, s: &Matrix) -> Result<PhaseSpaceRegion> {
        let inv = symplectic_inverse(s)?;
        Ok(PhaseSpaceRegion::Ellipsoid {
            m: (&inv.transpose() * &(m * &inv)).symmetrize(),
        })
    }
}

fn check_radius(r: f64) -> Result<()> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::InvalidParameter(format!("radius must be strictly positive, got {r}")));
    }
    Ok(())
}

/// Capacity normalized by `c(B(R)) = c(Z_j(R)) = πR²`.
///
/// For the ellipsoid `zᵀMz ≤ 1` with symplectic eigenvalues `μⱼ` the Williamson
/// form turns it into `Σ μⱼ(xⱼ² + pⱼ²) ≤ 1`, which contains the ball and lies in
/// the cylinder of radius `1/√μ_max`, so its capacity is `π/μ_max`.
pub fn capacity(region: &PhaseSpaceRegion, tol: &Tolerances) -> Result<f64> {
    match region {
        PhaseSpaceRegion::Ball { radius } => {
            check_radius(*radius)?;
            Ok(PI * radius * radius)
        }
        PhaseSpaceRegion::Cylinder { axis, radius } => {
            if *axis == 0 {
                return Err(Error::InvalidParameter("cylinder axis is counted from 1".into()));
            }
            check_radius(*radius)?;
            Ok(PI * radius * radius)
        }
        PhaseSpaceRegion::Ellipsoid { m } => {
            let mu = symplectic_spectrum(m, tol)?;
            Ok(PI / mu.iter().copied().fold(0.0, f64::max))
        }
    }
}

/// Whether a ball of radius `ball_r` can be symplectically embedded in a
/// cylinder of radius `cyl_r`: exactly when its capacity is not larger.
pub fn nonsqueezing_embeddable(ball_r: f64, cyl_r: f64) -> bool {
    PI * ball_r * ball_r <= PI * cyl_r * cyl_r
}
