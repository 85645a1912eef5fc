use crate::error::{Error, Result};

/// Relative thresholds used by every numerical decision in the crate.
///
/// All three are scaled by `max(1, ‖input‖_∞)` where they are applied.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Eigenvalues below `rank_tol·scale` count as zero.
    pub rank_tol: f64,
    /// Symmetry, symplecticity and commutator checks.
    pub sym_tol: f64,
    /// Jacobi stopping rule on the off-diagonal Frobenius mass.
    pub conv_tol: f64,
}

/// Relative gap below which neighbouring symplectic eigenvalues are merged
/// into one cluster.
pub const CLUSTER_GAP: f64 = 1e-6;

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rank_tol: 1e-9,
            sym_tol: 1e-8,
            conv_tol: 1e-12,
        }
    }
}

impl Tolerances {
    pub fn new(rank_tol: f64, sym_tol: f64, conv_tol: f64) -> Result<Self> {
        let t = Tolerances {
            rank_tol,
            sym_tol,
            conv_tol,
        };
        t.validate()?;
        Ok(t)
    }

    /// Defaults multiplied uniformly by `factor`.
    pub fn scaled(factor: f64) -> Result<Self> {
        let d = Tolerances::default();
        Tolerances::new(d.rank_tol * factor, d.sym_tol * factor, d.conv_tol * factor)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("rank_tol", self.rank_tol),
            ("sym_tol", self.sym_tol),
            ("conv_tol", self.conv_tol),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be strictly positive, got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// `max(1, x)`, the scale applied to relative tolerances.
#[inline]
pub(crate) fn scale(x: f64) -> f64 {
    x.max(1.0)
}
