//! Spectral projectors onto the invariant planes of `F = JM`.
//!
//! ```bash
//! cargo run -p sympal --example projectors
//! ```

use sympal::{eigenspace_projectors, standard_symplectic_form, Matrix, Tolerances};

fn main() -> sympal::Result<()> {
    let tol = Tolerances::default();
    let m = Matrix::from_rows(&[
        [6.0, 0.0, 0.0, 0.0],
        [0.0, 3.0, 0.0, 0.0],
        [0.0, 0.0, 3.0, -1.0],
        [0.0, 0.0, -1.0, 1.0],
    ])?;
    let f = &standard_symplectic_form(2)? * &m;

    let ps = eigenspace_projectors(&m, &tol)?;
    let mut sum = Matrix::zeros(4, 4);
    for p in &ps {
        println!("μ = {:.6}, rank {}", p.mu, p.rank());
        println!("  P = {:?}", p.p);
        println!("  ‖FP − PF‖ = {:e}", f.commutator(&p.p).max_abs());
        println!("  ‖P² − P‖ = {:e}", (&(&p.p * &p.p) - &p.p).max_abs());
        sum = &sum + &p.p;
    }
    println!("‖ΣP − I‖ = {:e}", (&sum - &Matrix::identity(4)).max_abs());
    Ok(())
}
