//! One symplectic basis for several Poisson-commuting quadratic forms.
//!
//! ```bash
//! cargo run -p sympal --example simultaneous
//! ```

use sympal::linalg::inverse;
use sympal::symplectic::paired_diagonal;
use sympal::{family_diagonalize, poisson_commutator, simultaneous_williamson, simultaneous_williamson_psd, Matrix, Tolerances};

/// `S⁻ᵀ(Λ⊕Λ)S⁻¹`
fn form(s: &Matrix, spectrum: &[f64]) -> sympal::Result<Matrix> {
    let inv = inverse(s)?;
    Ok((&inv.transpose() * &(&paired_diagonal(spectrum) * &inv)).symmetrize())
}

fn main() -> sympal::Result<()> {
    let tol = Tolerances::default();

    // a symplectic map mixing both modes: diag(A, A⁻ᵀ) followed by a shear
    let mut s = Matrix::from_diag(&[2.0, 1.0, 0.5, 1.0]);
    s[(1, 0)] = 0.5;
    s[(2, 3)] = -0.25;
    let mut shear = Matrix::identity(4);
    shear[(0, 2)] = 0.3;
    shear[(1, 3)] = -0.2;
    shear[(0, 3)] = 0.1;
    shear[(1, 2)] = 0.1;
    let s = &s * &shear;

    // the first form is degenerate in its two modes; the second tells them apart
    let a = form(&s, &[1.0, 1.0])?;
    let b = form(&s, &[3.0, 0.5])?;
    println!("‖[JA, JB]‖ = {:e}", poisson_commutator(&a, &b)?);
    let r = simultaneous_williamson(&a, &b, &tol)?;
    println!("spectra: {:?}", r.spectra);
    println!("residuals: {:e}, {:e}", r.residual_diag(0, &a), r.residual_diag(1, &b));

    // a third member
    let c = form(&s, &[2.0, 4.0])?;
    let f = family_diagonalize(&[a.clone(), b.clone(), c.clone()], &tol)?;
    println!("family spectra: {:?}", f.spectra);

    // semidefinite members sharing a symplectic joint radical
    let x = Matrix::from_diag(&[1.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
    let y = Matrix::from_diag(&[0.0, 2.0, 0.0, 0.0, 2.0, 0.0]);
    let r = simultaneous_williamson_psd(&x, &y, &tol)?;
    println!("psd spectra (zeros last): {:?}", r.spectra);

    // forms that do not commute are refused with the commutator as evidence
    let d = Matrix::from_rows(&[[2.0, 1.0, 0.0, 0.0], [1.0, 2.0, 0.0, 0.0], [0.0, 0.0, 1.0, 0.0], [0.0, 0.0, 0.0, 3.0]])?;
    if let Err(e) = simultaneous_williamson(&a, &d, &tol) {
        println!("non-commuting pair: {e}");
    }
    Ok(())
}
