//! Williamson form of a semidefinite form whose kernel is symplectic.
//!
//! ```bash
//! cargo run -p sympal --example degenerate
//! ```

use sympal::linalg::inverse;
use sympal::{degenerate_williamson, kernel_is_symplectic, Matrix, Tolerances};

/// The shear `[[I, B], [0, I]]` with symmetric `B` is symplectic.
fn shear(b: &[[f64; 3]; 3]) -> Matrix {
    let mut s = Matrix::identity(6);
    for i in 0..3 {
        for j in 0..3 {
            s[(i, 3 + j)] = b[i][j];
        }
    }
    s
}

fn main() -> sympal::Result<()> {
    let tol = Tolerances::default();

    // two live modes with values 1.5 and 0.7, one frozen mode, hidden by a shear
    let s0 = shear(&[[0.2, 0.5, -0.1], [0.5, 0.0, 0.3], [-0.1, 0.3, 0.4]]);
    let inv = inverse(&s0)?;
    let m = (&inv.transpose() * &(&Matrix::from_diag(&[1.5, 0.7, 0.0, 1.5, 0.7, 0.0]) * &inv)).symmetrize();

    println!("kernel symplectic: {}", kernel_is_symplectic(&m, &tol)?);
    let d = degenerate_williamson(&m, &tol)?;
    println!("k = {}, spectrum = {:?}", d.k, d.spectrum);
    println!("positive part: {:?}", d.positive_spectrum());
    println!("‖SᵀMS − Λ⊕Λ‖ = {:e}", d.residual_diag(&m));

    // a Lagrangian kernel is refused
    let lagrangian = Matrix::from_diag(&[0.0, 0.0, 1.0, 1.0]);
    match degenerate_williamson(&lagrangian, &tol) {
        Ok(_) => println!("unexpected success"),
        Err(e) => println!("diag(0,0,1,1): {e}"),
    }
    Ok(())
}
