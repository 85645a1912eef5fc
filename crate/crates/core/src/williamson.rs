//! Williamson normal form of positive-definite quadratic forms.
//!
//! For symmetric `M > 0` there is a symplectic `S` with `SᵀMS = Λ⊕Λ`. The
//! diagonal `Λ` holds the symplectic eigenvalues `μⱼ`, where `±iμⱼ` are the
//! eigenvalues of `F = JM`. Everything here is computed from the symmetric
//! PSD matrix `−K²`, `K = M^{1/2} J M^{1/2}`.

use std::ops::Range;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{check_even_square, check_symmetric, fix_sign, require_pd, symmetric_eigen};
use crate::matrix::{axpy, dot, norm2, Matrix};
use crate::symplectic::{apply_j, congruence_residual, j_matrix, paired_diagonal, symplectic_inverse, symplectic_residual};
use crate::tolerance::{scale, Tolerances, CLUSTER_GAP};

/// `SᵀMS = diag(spectrum) ⊕ diag(spectrum)` with `S` symplectic.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WilliamsonDecomposition {
    #[serde(rename = "S")]
    pub s: Matrix,
    pub spectrum: Vec<f64>,
}

impl WilliamsonDecomposition {
    pub fn normal_form(&self) -> Matrix {
        paired_diagonal(&self.spectrum)
    }

    /// `‖SᵀJS − J‖_∞`
    pub fn residual_symplectic(&self) -> f64 {
        symplectic_residual(&self.s).unwrap_or(f64::INFINITY)
    }

    /// `‖SᵀMS − Λ⊕Λ‖_∞`
    pub fn residual_diag(&self, m: &Matrix) -> f64 {
        congruence_residual(&self.s, m, &self.normal_form())
    }
}

/// Projector onto the real invariant subspace of `F = JM` belonging to `±iμ`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralProjector {
    pub mu: f64,
    pub p: Matrix,
}

impl SpectralProjector {
    /// Dimension of the image, read off the trace.
    pub fn rank(&self) -> usize {
        self.p.diagonal().iter().sum::<f64>().round().max(0.0) as usize
    }
}

/// Splits an ascending list into runs whose neighbours differ by at most
/// `CLUSTER_GAP` relative to the larger of the two.
pub(crate) fn cluster_ranges(values: &[f64]) -> Vec<Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        let split = i == values.len() || {
            let (a, b) = (values[i - 1], values[i]);
            (b - a).abs() > CLUSTER_GAP * a.abs().max(b.abs())
        };
        if split {
            out.push(start..i);
            start = i;
        }
    }
    out
}

/// Symplectic pairs spanning the elliptic part of a PSD form.
pub(crate) struct EllipticFrame {
    pub sx: Vec<Vec<f64>>,
    pub sy: Vec<Vec<f64>>,
    pub mu: Vec<f64>,
}

/// Builds `s_x = J R y/√μ`, `s_y = −J R x/√μ` for each orthonormal pair
/// `(x, y)` with `Kx = −μy`, `Ky = μx`, where `R = M^{1/2}` and `K = RJR`.
///
/// These satisfy `ω(s_x, s_y) = 1` and `M(s_x, s_x) = M(s_y, s_y) = μ`, and
/// avoid `M^{−1/2}`, so the same code serves singular `M`. Only eigenvalues
/// of `−K²` above `min_mu_sq` are used.
pub(crate) fn elliptic_frame(root: &Matrix, min_mu_sq: f64, tol: &Tolerances) -> Result<EllipticFrame> {
    let dim = root.rows();
    let k = root * &(&j_matrix(dim / 2) * root);
    let k2 = (&k.transpose() * &k).symmetrize();
    let eig = symmetric_eigen(&k2, tol)?;

    let first = eig.values.iter().position(|&v| v > min_mu_sq).unwrap_or(dim);
    let roots: Vec<f64> = eig.values[first..].iter().map(|v| v.sqrt()).collect();

    let mut frame = EllipticFrame {
        sx: Vec::new(),
        sy: Vec::new(),
        mu: Vec::new(),
    };
    for range in cluster_ranges(&roots) {
        if range.len() % 2 != 0 {
            return Err(Error::Degeneracy(format!(
                "symplectic eigenvalue near {:.6e} has odd multiplicity {} in −K²",
                roots[range.start],
                range.len()
            )));
        }
        let candidates: Vec<Vec<f64>> = range.clone().map(|j| eig.vector(first + j)).collect();
        let mut chosen: Vec<Vec<f64>> = Vec::new();
        for _ in 0..range.len() / 2 {
            let (mut x, _) = candidates
                .iter()
                .map(|c| {
                    let r = project_out(c, &chosen);
                    let nr = norm2(&r);
                    (r, nr)
                })
                .fold((Vec::new(), -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            normalize(&mut x);
            fix_sign(&mut x);
            let kx = k.mul_vec(&x);
            let mu = norm2(&kx);
            if mu == 0.0 {
                return Err(Error::Degeneracy("zero vector in elliptic cluster".into()));
            }
            let mut y: Vec<f64> = kx.iter().map(|v| -v / mu).collect();
            y = project_out(&y, &chosen);
            let d = dot(&x, &y);
            axpy(&mut y, -d, &x);
            normalize(&mut y);

            let ry = root.mul_vec(&y);
            let rx = root.mul_vec(&x);
            let w = mu.sqrt();
            frame.sx.push(apply_j(&ry).iter().map(|v| v / w).collect());
            frame.sy.push(apply_j(&rx).iter().map(|v| -v / w).collect());
            frame.mu.push(mu);
            chosen.push(x);
            chosen.push(y);
        }
    }
    Ok(frame)
}

fn project_out(v: &[f64], basis: &[Vec<f64>]) -> Vec<f64> {
    let mut r = v.to_vec();
    for _ in 0..2 {
        for q in basis {
            let d = dot(q, &r);
            axpy(&mut r, -d, q);
        }
    }
    r
}

fn normalize(v: &mut [f64]) {
    let n = norm2(v);
    if n > 0.0 {
        v.iter_mut().for_each(|x| *x /= n);
    }
}

/// Columns `[sx…, sy…]` sorted by ascending `mu`.
pub(crate) fn assemble_frame(dim: usize, frame: &EllipticFrame) -> (Matrix, Vec<f64>) {
    let k = frame.mu.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by(|&a, &b| frame.mu[a].total_cmp(&frame.mu[b]));
    let mut cols: Vec<Vec<f64>> = order.iter().map(|&i| frame.sx[i].clone()).collect();
    cols.extend(order.iter().map(|&i| frame.sy[i].clone()));
    let mu = order.iter().map(|&i| frame.mu[i]).collect();
    (Matrix::from_columns(dim, &cols), mu)
}

fn sqrt_root(m: &Matrix, tol: &Tolerances) -> Result<Matrix> {
    check_even_square(m)?;
    check_symmetric(m, tol)?;
    let eig = require_pd(m, tol)?;
    Ok(eig.map_values(f64::sqrt))
}

/// Symplectic eigenvalues `μ₁ ≤ … ≤ μₙ` of a symmetric PD matrix.
pub fn symplectic_spectrum(m: &Matrix, tol: &Tolerances) -> Result<Vec<f64>> {
    let root = sqrt_root(m, tol)?;
    let n = m.rows() / 2;
    let k = &root * &(&j_matrix(n) * &root);
    let k2 = (&k.transpose() * &k).symmetrize();
    let eig = symmetric_eigen(&k2, tol)?;
    let gate = tol.sym_tol * scale(k2.norm_inf());
    let mut mu = Vec::with_capacity(n);
    for pair in eig.values.chunks(2) {
        let (a, b) = (pair[0], pair[1]);
        if (a - b).abs() > gate {
            return Err(Error::Degeneracy(format!(
                "eigenvalues of −K² do not pair: {a:e} vs {b:e}"
            )));
        }
        mu.push((0.5 * (a + b)).max(0.0).sqrt());
    }
    Ok(mu)
}

/// Williamson decomposition of a symmetric PD matrix.
pub fn williamson_decompose(m: &Matrix, tol: &Tolerances) -> Result<WilliamsonDecomposition> {
    let root = sqrt_root(m, tol)?;
    let dim = m.rows();
    let frame = elliptic_frame(&root, 0.0, tol)?;
    if frame.mu.len() != dim / 2 {
        return Err(Error::Degeneracy(format!(
            "found {} symplectic pairs, expected {}",
            frame.mu.len(),
            dim / 2
        )));
    }
    let (s, spectrum) = assemble_frame(dim, &frame);
    Ok(WilliamsonDecomposition { s, spectrum })
}

/// `‖JM − MJ‖_∞`
pub(crate) fn j_commutator(m: &Matrix) -> Result<f64> {
    let n = check_even_square(m)?;
    let j = j_matrix(n);
    Ok(m.commutator(&j).norm_inf())
}

/// True iff `JM = MJ` within `sym_tol·‖M‖_∞`.
pub fn is_orthosymplectically_diagonalizable(m: &Matrix, tol: &Tolerances) -> Result<bool> {
    Ok(j_commutator(m)? <= tol.sym_tol * scale(m.norm_inf()))
}

/// Orthosymplectic frame of a symmetric matrix commuting with `J`; values
/// ascending. No definiteness requirement.
pub(crate) fn orthosymplectic_frame(m: &Matrix, tol: &Tolerances) -> Result<(Matrix, Vec<f64>)> {
    let n = check_even_square(m)?;
    let residual = j_commutator(m)?;
    if residual > tol.sym_tol * scale(m.norm_inf()) {
        return Err(Error::NotJCommuting { residual });
    }
    let eig = symmetric_eigen(m, tol)?;
    let mut xs: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut ys: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut values = Vec::with_capacity(n);
    for range in cluster_ranges(&eig.values) {
        if range.len() % 2 != 0 {
            return Err(Error::Degeneracy(format!(
                "eigenvalue {:e} of a J-commuting matrix has odd multiplicity",
                eig.values[range.start]
            )));
        }
        let candidates: Vec<Vec<f64>> = range.clone().map(|j| eig.vector(j)).collect();
        let mut chosen: Vec<Vec<f64>> = Vec::new();
        for _ in 0..range.len() / 2 {
            let (mut x, _) = candidates
                .iter()
                .map(|c| {
                    let r = project_out(c, &chosen);
                    let nr = norm2(&r);
                    (r, nr)
                })
                .fold((Vec::new(), -1.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            normalize(&mut x);
            fix_sign(&mut x);
            let mut y: Vec<f64> = apply_j(&x).iter().map(|v| -v).collect();
            y = project_out(&y, &chosen);
            normalize(&mut y);
            values.push(m.quadratic_form(&x));
            chosen.push(x.clone());
            chosen.push(y.clone());
            xs.push(x);
            ys.push(y);
        }
    }
    xs.extend(ys);
    Ok((Matrix::from_columns(2 * n, &xs), values))
}

/// Williamson decomposition with an orthogonal `S`, for PD `M` with `JM = MJ`.
pub fn orthosymplectic_decompose(m: &Matrix, tol: &Tolerances) -> Result<WilliamsonDecomposition> {
    check_even_square(m)?;
    check_symmetric(m, tol)?;
    require_pd(m, tol)?;
    let (s, spectrum) = orthosymplectic_frame(m, tol)?;
    Ok(WilliamsonDecomposition { s, spectrum })
}

/// Real spectral projectors of `F = JM`, one per distinct symplectic
/// eigenvalue.
///
/// `Pⱼ = ∏_{i≠j} (F² + μᵢ²)/(μᵢ² − μⱼ²)`, which is the sum of the complex
/// Lagrange projectors for `iμⱼ` and `−iμⱼ`. The product is expanded into
/// real coefficients of powers of `F` and evaluated by Horner's rule.
pub fn eigenspace_projectors(m: &Matrix, tol: &Tolerances) -> Result<Vec<SpectralProjector>> {
    let spectrum = symplectic_spectrum(m, tol)?;
    let dim = m.rows();
    let reps: Vec<f64> = cluster_ranges(&spectrum)
        .into_iter()
        .map(|r| spectrum[r.clone()].iter().sum::<f64>() / r.len() as f64)
        .collect();
    let f = &j_matrix(dim / 2) * m;

    let mut out = Vec::with_capacity(reps.len());
    for (j, &mj) in reps.iter().enumerate() {
        // coefficients in F, lowest degree first
        let mut coeffs = vec![1.0];
        for (i, &mi) in reps.iter().enumerate() {
            if i == j {
                continue;
            }
            let denom = mi * mi - mj * mj;
            let mut next = vec![0.0; coeffs.len() + 2];
            for (d, c) in coeffs.iter().enumerate() {
                next[d] += c * mi * mi / denom;
                next[d + 2] += c / denom;
            }
            coeffs = next;
        }
        let mut p = Matrix::zeros(dim, dim);
        for c in coeffs.iter().rev() {
            p = &(&p * &f) + &Matrix::identity(dim).scale(*c);
        }
        out.push(SpectralProjector { mu: mj, p });
    }
    Ok(out)
}

/// Rotation by angle `μⱼt` in each normal-mode plane.
fn mode_rotation(spectrum: &[f64], t: f64) -> Matrix {
    let n = spectrum.len();
    let mut r = Matrix::zeros(2 * n, 2 * n);
    for (j, &mu) in spectrum.iter().enumerate() {
        let (s, c) = (mu * t).sin_cos();
        r[(j, j)] = c;
        r[(j, n + j)] = s;
        r[(n + j, j)] = -s;
        r[(n + j, n + j)] = c;
    }
    r
}

/// `e^{tJM}` assembled from the Williamson normal modes.
pub fn flow_matrix(m: &Matrix, t: f64, tol: &Tolerances) -> Result<Matrix> {
    let w = williamson_decompose(m, tol)?;
    let inv = symplectic_inverse(&w.s)?;
    Ok(&(&w.s * &mode_rotation(&w.spectrum, t)) * &inv)
}

/// Solution at time `t` of `ż = JMz`, `z(0) = z0`.
///
/// The state is moved to Williamson coordinates, each pair `(xⱼ, pⱼ)` is
/// rotated exactly by `μⱼt`, and the result moved back. The energy
/// `H(z) = zᵀMz` is conserved up to roundoff.
pub fn hamiltonian_flow(m: &Matrix, z0: &[f64], t: f64, tol: &Tolerances) -> Result<Vec<f64>> {
    check_even_square(m)?;
    if z0.len() != m.rows() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            found: z0.len(),
        });
    }
    if !t.is_finite() {
        return Err(Error::InvalidParameter(format!("time must be finite, got {t}")));
    }
    let w = williamson_decompose(m, tol)?;
    let zeta = symplectic_inverse(&w.s)?.mul_vec(z0);
    let rotated = mode_rotation(&w.spectrum, t).mul_vec(&zeta);
    Ok(w.s.mul_vec(&rotated))
}
