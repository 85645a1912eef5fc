//! Symplectic eigenvalues of a few positive-definite forms.
//!
//! ```bash
//! cargo run -p sympal --example spectrum
//! ```

use sympal::{symplectic_spectrum, Matrix, Tolerances};

fn main() -> sympal::Result<()> {
    let tol = Tolerances::default();

    // H = 5x² + 6xp + 2p², a squeezed oscillator with unit frequency
    let m = Matrix::from_rows(&[[5.0, 3.0], [3.0, 2.0]])?;
    println!("[[5,3],[3,2]]        -> {:?}", symplectic_spectrum(&m, &tol)?);

    // two degrees of freedom coupled through the momenta
    let m = Matrix::from_rows(&[
        [6.0, 0.0, 0.0, 0.0],
        [0.0, 3.0, 0.0, 0.0],
        [0.0, 0.0, 3.0, -1.0],
        [0.0, 0.0, -1.0, 1.0],
    ])?;
    let mu = symplectic_spectrum(&m, &tol)?;
    let r33 = 33f64.sqrt();
    println!("coupled 4x4          -> {mu:?}");
    println!("closed form          -> [{}, {}]", (1.5 * (7.0 - r33)).sqrt(), (1.5 * (7.0 + r33)).sqrt());

    // scaling the form scales the spectrum
    println!("same form, doubled   -> {:?}", symplectic_spectrum(&m.scale(2.0), &tol)?);
    Ok(())
}
