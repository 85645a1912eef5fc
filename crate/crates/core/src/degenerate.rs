//! Symplectic diagonalization of positive-semidefinite forms.
//!
//! Two routes:
//!
//! * [`degenerate_williamson`] handles forms whose kernel is a symplectic
//!   subspace. The kernel gets a symplectic basis of its own, the range is
//!   pushed into the ω-complement of the kernel, and the restricted form there
//!   is positive-definite, so the ordinary Williamson form applies.
//! * [`hormander_psd_normal_form`] handles every PSD form. Besides elliptic
//!   pairs `μ(s² + t²)` it may produce parabolic directions `s²` whose
//!   conjugate coordinate does not appear at all.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    check_even_square, check_symmetric, fix_sign, orthogonal_complement, require_psd, symmetric_eigen,
    EigenDecomposition,
};
use crate::matrix::Matrix;
use crate::symplectic::{apply_j, congruence_residual, omega, paired_diagonal, symplectic_gram_schmidt, symplectic_residual};
use crate::tolerance::{scale, Tolerances};
use crate::williamson::{assemble_frame, elliptic_frame, williamson_decompose};

/// `SᵀMS = Λ⊕Λ` with the last `n − k` entries of `Λ` zero.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DegenerateDecomposition {
    #[serde(rename = "S")]
    pub s: Matrix,
    pub spectrum: Vec<f64>,
    pub k: usize,
}

impl DegenerateDecomposition {
    pub fn normal_form(&self) -> Matrix {
        paired_diagonal(&self.spectrum)
    }

    pub fn residual_symplectic(&self) -> f64 {
        symplectic_residual(&self.s).unwrap_or(f64::INFINITY)
    }

    pub fn residual_diag(&self, m: &Matrix) -> f64 {
        congruence_residual(&self.s, m, &self.normal_form())
    }

    /// The `k` strictly positive symplectic eigenvalues.
    pub fn positive_spectrum(&self) -> &[f64] {
        &self.spectrum[..self.k]
    }
}

/// `SᵀMS = diag(A) ⊕ diag(B)` with `A = (μ, 1…1, 0…0)` and `B = (μ, 0…0)`.
///
/// The `k` elliptic pairs come first, then `l` parabolic directions whose
/// `x` coordinate enters with coefficient one, then kernel pairs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HormanderPSDForm {
    #[serde(rename = "S")]
    pub s: Matrix,
    pub k: usize,
    pub l: usize,
    pub mu: Vec<f64>,
}

impl HormanderPSDForm {
    pub fn normal_form(&self) -> Matrix {
        let n = self.s.cols() / 2;
        let mut d = vec![0.0; 2 * n];
        for (j, &m) in self.mu.iter().enumerate() {
            d[j] = m;
            d[n + j] = m;
        }
        d[self.k..self.k + self.l].fill(1.0);
        Matrix::from_diag(&d)
    }

    pub fn residual_symplectic(&self) -> f64 {
        symplectic_residual(&self.s).unwrap_or(f64::INFINITY)
    }

    pub fn residual_diag(&self, m: &Matrix) -> f64 {
        congruence_residual(&self.s, m, &self.normal_form())
    }
}

fn checked_psd(m: &Matrix, tol: &Tolerances) -> Result<(usize, EigenDecomposition, f64)> {
    let n = check_even_square(m)?;
    check_symmetric(m, tol)?;
    let eig = require_psd(m, tol)?;
    Ok((n, eig, tol.rank_tol * scale(m.norm_inf())))
}

fn split_kernel(eig: &EigenDecomposition, thr: f64) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
    let mut kernel = Vec::new();
    let mut range = Vec::new();
    for (j, &v) in eig.values.iter().enumerate() {
        if v.abs() < thr {
            kernel.push(eig.vector(j));
        } else {
            range.push(eig.vector(j));
        }
    }
    (kernel, range)
}

/// Symplectic basis of the kernel, or `KernelNotSymplectic`.
fn kernel_basis(kernel: &[Vec<f64>], dim: usize, tol: &Tolerances) -> Result<Matrix> {
    let q = kernel.len();
    if !q.is_multiple_of(2) {
        return Err(Error::KernelNotSymplectic { dim: q, pivot: 0.0 });
    }
    symplectic_gram_schmidt(&Matrix::from_columns(dim, kernel), tol).map_err(|e| match e {
        Error::NotSymplecticSubspace { pivot } => Error::KernelNotSymplectic { dim: q, pivot },
        other => other,
    })
}

/// True iff `ω` restricted to `Ker M` is nondegenerate. A trivial kernel
/// counts as symplectic.
pub fn kernel_is_symplectic(m: &Matrix, tol: &Tolerances) -> Result<bool> {
    let (_, eig, thr) = checked_psd(m, tol)?;
    let (kernel, _) = split_kernel(&eig, thr);
    match kernel_basis(&kernel, m.rows(), tol) {
        Ok(_) => Ok(true),
        Err(Error::KernelNotSymplectic { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Williamson form of a PSD matrix whose kernel is symplectic.
///
/// Output columns are `(s₁…s_k, u₁…u_m, s_{k+1}…s_{2k}, v₁…v_m)` where the
/// `s` columns diagonalize the nondegenerate part and `(uᵢ, vᵢ)` is a
/// symplectic basis of the kernel.
pub fn degenerate_williamson(m: &Matrix, tol: &Tolerances) -> Result<DegenerateDecomposition> {
    let (n, eig, thr) = checked_psd(m, tol)?;
    let dim = 2 * n;
    let (kernel, range) = split_kernel(&eig, thr);
    if kernel.is_empty() {
        let w = williamson_decompose(m, tol)?;
        return Ok(DegenerateDecomposition {
            s: w.s,
            spectrum: w.spectrum,
            k: n,
        });
    }
    let q = kernel_basis(&kernel, dim, tol)?;
    let mk = kernel.len() / 2;
    let k = n - mk;
    let us: Vec<Vec<f64>> = (0..mk).map(|i| q.column(i)).collect();
    let vs: Vec<Vec<f64>> = (0..mk).map(|i| q.column(mk + i)).collect();

    let mut s_cols: Vec<Vec<f64>> = Vec::new();
    let mut spectrum = Vec::new();
    if k > 0 {
        // b' = b + Σ ω(vᵢ,b)uᵢ − ω(uᵢ,b)vᵢ lies in the ω-complement of the kernel
        let projected: Vec<Vec<f64>> = range
            .iter()
            .map(|b| {
                let mut p = b.clone();
                for (u, v) in us.iter().zip(&vs) {
                    let a = omega(v, b);
                    let c = omega(u, b);
                    for ((x, uu), vv) in p.iter_mut().zip(u).zip(v) {
                        *x += a * uu - c * vv;
                    }
                }
                p
            })
            .collect();
        let p = symplectic_gram_schmidt(&Matrix::from_columns(dim, &projected), tol)?;
        let reduced = (&p.transpose() * &(m * &p)).symmetrize();
        let w = williamson_decompose(&reduced, tol)?;
        let s = &p * &w.s;
        s_cols = s.columns();
        spectrum = w.spectrum;
    }

    let mut cols: Vec<Vec<f64>> = s_cols[..k].to_vec();
    cols.extend(us);
    cols.extend_from_slice(&s_cols[k..]);
    cols.extend(vs);
    spectrum.resize(n, 0.0);
    Ok(DegenerateDecomposition {
        s: Matrix::from_columns(dim, &cols),
        spectrum,
        k,
    })
}

/// Normal form of an arbitrary PSD form.
///
/// Elliptic pairs are split off first through `−K²` with `K = M^{1/2}JM^{1/2}`.
/// On the ω-complement `F = JM` satisfies `F² = 0`; there, while `M` is not
/// zero, a top eigenvector `y` of the restricted form gives the pair
/// `x = y/√M(y,y)`, `w = −Fx` with `ω(x, w) = 1`, `M(x,x) = 1`,
/// `M(w,w) = M(x,w) = 0`, and the search continues on `{x, w}^ω`. What is left
/// is isotropic for `M` and must be symplectic.
pub fn hormander_psd_normal_form(m: &Matrix, tol: &Tolerances) -> Result<HormanderPSDForm> {
    let (n, eig, thr) = checked_psd(m, tol)?;
    if eig.min_value() >= thr {
        let w = williamson_decompose(m, tol)?;
        return Ok(HormanderPSDForm {
            s: w.s,
            k: n,
            l: 0,
            mu: w.spectrum,
        });
    }
    let dim = 2 * n;
    let root = eig.map_values(|v| if v < thr { 0.0 } else { v.sqrt() });
    let frame = elliptic_frame(&root, thr * scale(m.norm_inf()), tol)?;
    let (elliptic, mu) = assemble_frame(dim, &frame);
    let k = mu.len();

    // ω-complement of the elliptic span: orthogonal complement of J·E
    let je: Vec<Vec<f64>> = elliptic.columns().iter().map(|c| apply_j(c)).collect();
    let mut v = orthogonal_complement(&je, dim, tol)?;
    if v.len() != dim - 2 * k {
        return Err(Error::Degeneracy(format!(
            "elliptic part of dimension {} leaves a complement of dimension {}",
            2 * k,
            v.len()
        )));
    }

    let mut xs = Vec::new();
    let mut ws = Vec::new();
    while !v.is_empty() {
        let basis = Matrix::from_columns(dim, &v);
        let restricted = (&basis.transpose() * &(m * &basis)).symmetrize();
        let sub = symmetric_eigen(&restricted, tol)?;
        if sub.max_value() <= thr {
            break;
        }
        let y = basis.mul_vec(&sub.vector(v.len() - 1));
        let scale_y = m.quadratic_form(&y).sqrt();
        let mut x: Vec<f64> = y.iter().map(|e| e / scale_y).collect();
        fix_sign(&mut x);
        let w: Vec<f64> = apply_j(&m.mul_vec(&x)).iter().map(|e| -e).collect();

        let rx: Vec<f64> = v.iter().map(|c| omega(&x, c)).collect();
        let rw: Vec<f64> = v.iter().map(|c| omega(&w, c)).collect();
        let coeffs = orthogonal_complement(&[rx, rw], v.len(), tol)?;
        if coeffs.len() + 2 != v.len() {
            return Err(Error::ResidualSubspace { dim: v.len() });
        }
        v = coeffs.iter().map(|c| basis.mul_vec(c)).collect();
        xs.push(x);
        ws.push(w);
    }
    let l = xs.len();

    let kernel = if v.is_empty() {
        Matrix::zeros(dim, 0)
    } else {
        symplectic_gram_schmidt(&Matrix::from_columns(dim, &v), tol)
            .map_err(|_| Error::ResidualSubspace { dim: v.len() })?
    };
    let r = kernel.cols() / 2;

    let mut cols: Vec<Vec<f64>> = (0..k).map(|j| elliptic.column(j)).collect();
    cols.extend(xs);
    cols.extend((0..r).map(|j| kernel.column(j)));
    cols.extend((0..k).map(|j| elliptic.column(k + j)));
    cols.extend(ws);
    cols.extend((0..r).map(|j| kernel.column(r + j)));
    debug_assert_eq!(cols.len(), dim);
    Ok(HormanderPSDForm {
        s: Matrix::from_columns(dim, &cols),
        k,
        l,
        mu,
    })
}
