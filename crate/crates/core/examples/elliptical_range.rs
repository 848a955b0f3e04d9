//! The numerical range of a 2x2 matrix is an ellipse with foci at the
//! eigenvalues.

use critloc::fov::elliptical_range;
use critloc::numlin::ComplexMatrix;
use critloc::theorems::check_elliptical_range;
use critloc::Complex64;

fn main() -> critloc::Result<()> {
    let c = Complex64::new;
    let cases = [
        (
            "upper triangular",
            ComplexMatrix::from_rows(&[vec![c(1.0, 0.0), c(2.0, 0.0)], vec![c(0.0, 0.0), c(-1.0, 0.5)]])?,
        ),
        (
            "nilpotent",
            ComplexMatrix::from_rows(&[vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0)]])?,
        ),
        ("normal", ComplexMatrix::from_diag(&[c(1.0, 0.0), c(2.0, 1.0)])),
    ];
    for (name, a) in &cases {
        let e = elliptical_range(a)?;
        let r = check_elliptical_range(a, 720, 1e-6)?;
        println!(
            "{name}: foci {:.3} and {:.3}, minor semi-axis {:.4}, check {:?} ({:.1e})",
            e.focus1, e.focus2, e.minor_semi_axis, r.verdict, r.max_violation
        );
    }
    Ok(())
}
