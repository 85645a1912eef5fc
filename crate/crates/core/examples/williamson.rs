//! Williamson normal form `SᵀMS = Λ⊕Λ` and its residuals.
//!
//! ```bash
//! cargo run -p sympal --example williamson
//! ```

use sympal::{is_symplectic, williamson_decompose, Matrix, Tolerances};

fn main() -> sympal::Result<()> {
    let tol = Tolerances::default();
    let m = Matrix::from_rows(&[
        [2.0, 0.5, 0.3, 0.0],
        [0.5, 1.5, 0.0, 0.2],
        [0.3, 0.0, 1.0, 0.1],
        [0.0, 0.2, 0.1, 3.0],
    ])?;

    let w = williamson_decompose(&m, &tol)?;
    println!("spectrum: {:?}", w.spectrum);
    println!("S = {:?}", w.s);
    println!("SᵀMS = {:?}", &w.s.transpose() * &(&m * &w.s));
    println!("symplectic: {}", is_symplectic(&w.s, &tol)?);
    println!("‖SᵀJS − J‖ = {:e}", w.residual_symplectic());
    println!("‖SᵀMS − Λ⊕Λ‖ = {:e}", w.residual_diag(&m));

    // forms commuting with J are diagonalized by an orthogonal S as well
    let iso = Matrix::from_diag(&[1.0, 4.0, 1.0, 4.0]);
    println!(
        "diag(1,4,1,4): orthosymplectic? {}",
        sympal::is_orthosymplectically_diagonalizable(&iso, &tol)?
    );
    Ok(())
}
