//! Simultaneous symplectic diagonalization of Poisson-commuting forms.
//!
//! Two quadratic forms `f(z) = zᵀAz`, `g(z) = zᵀBz` Poisson-commute iff
//! `[JA, JB] = 0`. For such a family one symplectic `S` brings every member
//! to Williamson form at once. The construction diagonalizes one form, then
//! refines each cluster of equal symplectic eigenvalues with the next form.
//! Inside a cluster the first form is `σ·I` in Williamson coordinates, so the
//! next form commutes with `J` there and an orthosymplectic change of basis
//! finishes the job without disturbing the first.

use serde::Serialize;

use crate::degenerate::degenerate_williamson;
use crate::error::{Error, Result};
use crate::linalg::{check_even_square, check_symmetric, matrix_power, require_pd, require_psd};
use crate::matrix::Matrix;
use crate::symplectic::{congruence_residual, j_matrix, paired_diagonal, permute_pairs, symplectic_residual};
use crate::tolerance::{scale, Tolerances, CLUSTER_GAP};
use crate::williamson::{cluster_ranges, orthosymplectic_frame, williamson_decompose};

/// One symplectic `S` and, per input form, the diagonal it is brought to.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimDiagResult {
    #[serde(rename = "S")]
    pub s: Matrix,
    pub spectra: Vec<Vec<f64>>,
}

impl SimDiagResult {
    pub fn residual_symplectic(&self) -> f64 {
        symplectic_residual(&self.s).unwrap_or(f64::INFINITY)
    }

    /// `‖SᵀMᵢS − Λᵢ⊕Λᵢ‖_∞` for form `i`.
    pub fn residual_diag(&self, i: usize, m: &Matrix) -> f64 {
        congruence_residual(&self.s, m, &paired_diagonal(&self.spectra[i]))
    }
}

/// `‖(JA)(JB) − (JB)(JA)‖_∞`
pub fn poisson_commutator(a: &Matrix, b: &Matrix) -> Result<f64> {
    let n = check_even_square(a)?;
    if b.shape() != a.shape() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.rows(),
        });
    }
    let j = j_matrix(n);
    Ok((&j * a).commutator(&(&j * b)).norm_inf())
}

/// True iff the forms of `a` and `b` Poisson-commute, i.e.
/// `‖[JA, JB]‖_∞ ≤ sym_tol·max(1, ‖A‖·‖B‖)`.
pub fn poisson_commutes(a: &Matrix, b: &Matrix, tol: &Tolerances) -> Result<bool> {
    Ok(poisson_commutator(a, b)? <= commute_gate(a, b, tol))
}

fn commute_gate(a: &Matrix, b: &Matrix, tol: &Tolerances) -> f64 {
    tol.sym_tol * scale(a.norm_inf() * b.norm_inf())
}

fn check_family(forms: &[Matrix], tol: &Tolerances) -> Result<()> {
    for (i, a) in forms.iter().enumerate() {
        for (j, b) in forms.iter().enumerate().skip(i + 1) {
            let residual = poisson_commutator(a, b)?;
            if residual > commute_gate(a, b, tol) {
                return Err(Error::NotCommuting { i, j, residual });
            }
        }
    }
    Ok(())
}

/// Refines `s` so that every form in `forms` becomes diagonal, starting from
/// `groups` of modes on which all earlier forms are scalar multiples of `I`.
fn refine(mut s: Matrix, mut groups: Vec<Vec<usize>>, forms: &[Matrix], tol: &Tolerances) -> Result<Matrix> {
    let dim = s.rows();
    let n = dim / 2;
    for b in forms {
        let bt = (&s.transpose() * &(b * &s)).symmetrize();
        let mut next_groups = Vec::with_capacity(groups.len());
        let mut t = Matrix::identity(dim);
        for g in &groups {
            let c = g.len();
            let idx: Vec<usize> = g.iter().copied().chain(g.iter().map(|&j| n + j)).collect();
            let sub = bt.select(&idx, &idx);
            // keep only the part commuting with J; the rest is roundoff
            let jc = j_matrix(c);
            let sub = (&sub - &(&(&jc * &sub) * &jc)).scale(0.5).symmetrize();
            let (o, values) = orthosymplectic_frame(&sub, tol)?;
            for (a, &ia) in idx.iter().enumerate() {
                for (bcol, &ib) in idx.iter().enumerate() {
                    t[(ia, ib)] = o[(a, bcol)];
                }
            }
            for r in cluster_ranges(&values) {
                next_groups.push(g[r].to_vec());
            }
        }
        s = &s * &t;
        groups = next_groups;
    }
    Ok(s)
}

/// Per-form diagonals of `SᵀMS`, with entries below `rank_tol·scale` set to 0.
fn read_spectra(s: &Matrix, forms: &[Matrix], tol: &Tolerances) -> Vec<Vec<f64>> {
    let n = s.cols() / 2;
    forms
        .iter()
        .map(|m| {
            let d = (&s.transpose() * &(m * s)).diagonal();
            let thr = tol.rank_tol * scale(m.norm_inf());
            (0..n)
                .map(|j| {
                    let v = 0.5 * (d[j] + d[n + j]);
                    if v.abs() <= thr {
                        0.0
                    } else {
                        v
                    }
                })
                .collect()
        })
        .collect()
}

/// Orders modes lexicographically by the spectra, zeros after every positive
/// value. Values within `CLUSTER_GAP` of each other compare equal.
fn canonical_order(spectra: &[Vec<f64>]) -> Vec<usize> {
    fn key(v: f64) -> f64 {
        if v == 0.0 {
            f64::INFINITY
        } else {
            v
        }
    }
    fn sort_level(idx: &mut [usize], level: usize, spectra: &[Vec<f64>]) {
        if level == spectra.len() || idx.len() < 2 {
            return;
        }
        let sp = &spectra[level];
        idx.sort_by(|&a, &b| key(sp[a]).total_cmp(&key(sp[b])));
        let mut start = 0;
        for i in 1..=idx.len() {
            let split = i == idx.len() || {
                let (x, y) = (key(sp[idx[i - 1]]), key(sp[idx[i]]));
                // an infinite key would make the relative test vacuous
                !(x == y || (x.is_finite() && y.is_finite() && (y - x).abs() <= CLUSTER_GAP * x.abs().max(y.abs())))
            };
            if split {
                sort_level(&mut idx[start..i], level + 1, spectra);
                start = i;
            }
        }
    }
    let n = spectra.first().map_or(0, |s| s.len());
    let mut idx: Vec<usize> = (0..n).collect();
    sort_level(&mut idx, 0, spectra);
    idx
}

fn finish(s: Matrix, forms: &[Matrix], tol: &Tolerances) -> Result<SimDiagResult> {
    let spectra = read_spectra(&s, forms, tol);
    let order = canonical_order(&spectra);
    let s = permute_pairs(&s, &order);
    let spectra: Vec<Vec<f64>> = spectra.iter().map(|sp| order.iter().map(|&j| sp[j]).collect()).collect();
    let result = SimDiagResult { s, spectra };

    let conditioning = scale(result.s.norm_inf()).powi(2);
    for (i, m) in forms.iter().enumerate() {
        let r = result.residual_diag(i, m);
        if r > tol.sym_tol.sqrt() * scale(m.norm_inf()) * conditioning {
            return Err(Error::Degeneracy(format!(
                "cluster refinement left form {i} off-diagonal by {r:e}"
            )));
        }
    }
    Ok(result)
}

fn groups_of(spectrum: &[f64]) -> Vec<Vec<usize>> {
    cluster_ranges(spectrum).into_iter().map(|r| r.collect()).collect()
}

/// One symplectic basis diagonalizing every PD form of a Poisson-commuting
/// family.
pub fn family_diagonalize(forms: &[Matrix], tol: &Tolerances) -> Result<SimDiagResult> {
    let first = forms
        .first()
        .ok_or_else(|| Error::InvalidParameter("family must contain at least one form".into()))?;
    let n = check_even_square(first)?;
    for m in forms {
        if m.shape() != first.shape() {
            return Err(Error::DimensionMismatch {
                expected: 2 * n,
                found: m.rows(),
            });
        }
        check_symmetric(m, tol)?;
        require_pd(m, tol)?;
    }
    check_family(forms, tol)?;
    let w = williamson_decompose(first, tol)?;
    let s = refine(w.s, groups_of(&w.spectrum), &forms[1..], tol)?;
    finish(s, forms, tol)
}

/// Simultaneous Williamson form of two Poisson-commuting PD forms.
pub fn simultaneous_williamson(a: &Matrix, b: &Matrix, tol: &Tolerances) -> Result<SimDiagResult> {
    family_diagonalize(&[a.clone(), b.clone()], tol)
}

/// Simultaneous normal form of two Poisson-commuting PSD forms whose joint
/// radical `Ker A ∩ Ker B` is symplectic.
pub fn simultaneous_williamson_psd(a: &Matrix, b: &Matrix, tol: &Tolerances) -> Result<SimDiagResult> {
    family_diagonalize_psd(&[a.clone(), b.clone()], tol)
}

/// [`family_diagonalize`] for PSD forms whose joint radical is symplectic.
///
/// The joint radical is the kernel of `Σ Mᵢ/‖Mᵢ‖`. That sum commutes with
/// every member and has a symplectic kernel, so its degenerate Williamson
/// basis is the starting point; only its positive clusters need refining.
pub(crate) fn family_diagonalize_psd(forms: &[Matrix], tol: &Tolerances) -> Result<SimDiagResult> {
    let first = forms
        .first()
        .ok_or_else(|| Error::InvalidParameter("family must contain at least one form".into()))?;
    check_even_square(first)?;
    for m in forms {
        if m.shape() != first.shape() {
            return Err(Error::DimensionMismatch {
                expected: first.rows(),
                found: m.rows(),
            });
        }
        check_symmetric(m, tol)?;
        require_psd(m, tol)?;
    }
    check_family(forms, tol)?;

    let mut c = Matrix::zeros(first.rows(), first.cols());
    for m in forms {
        let nm = m.norm_inf();
        if nm > 0.0 {
            c = &c + &m.scale(1.0 / nm);
        }
    }
    let d = degenerate_williamson(&c, tol)?;
    let groups = groups_of(d.positive_spectrum());
    let s = refine(d.s, groups, forms, tol)?;
    finish(s, forms, tol)
}

/// `‖[JAˢ, JBˢ]‖_∞ / (‖Aˢ‖·‖Bˢ‖)` for PD `A`, `B` with `[A,B] = 0` and
/// `[JA, JB] = 0`. Both commutation hypotheses are checked first.
pub fn power_commutator_residual(a: &Matrix, b: &Matrix, s: f64, tol: &Tolerances) -> Result<f64> {
    let forms = [a.clone(), b.clone()];
    for m in &forms {
        check_even_square(m)?;
        check_symmetric(m, tol)?;
        require_pd(m, tol)?;
    }
    check_family(&forms, tol)?;
    let residual = a.commutator(b).norm_inf();
    if residual > commute_gate(a, b, tol) {
        return Err(Error::NotCommutingPlain { residual });
    }
    let a_s = matrix_power(a, s, tol)?;
    let b_s = matrix_power(b, s, tol)?;
    Ok(poisson_commutator(&a_s, &b_s)? / (a_s.norm_inf() * b_s.norm_inf()))
}

/// Weighted geometric mean `A♯ₜB = A^{1/2}(A^{−1/2}BA^{−1/2})ᵗA^{1/2}`.
pub fn geometric_mean(a: &Matrix, b: &Matrix, t: f64, tol: &Tolerances) -> Result<Matrix> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::InvalidParameter(format!("t must lie in [0, 1], got {t}")));
    }
    if b.shape() != a.shape() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: b.rows(),
        });
    }
    check_symmetric(a, tol)?;
    check_symmetric(b, tol)?;
    let ea = require_pd(a, tol)?;
    require_pd(b, tol)?;
    let half = ea.map_values(f64::sqrt);
    let inv_half = ea.map_values(|v| 1.0 / v.sqrt());
    let inner = (&inv_half * &(b * &inv_half)).symmetrize();
    let inner_t = matrix_power(&inner, t, tol)?;
    Ok((&half * &(&inner_t * &half)).symmetrize())
}
