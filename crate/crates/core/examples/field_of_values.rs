//! Support function and boundary of the numerical range `F(A)`.

use critloc::fov::{boundary_polyline, contains_point, support_value};
use critloc::numlin::general_eigvals;
use critloc::rng::SampleRng;
use std::f64::consts::PI;

fn main() -> critloc::Result<()> {
    let a = SampleRng::new(5).matrix(4);
    for k in 0..4 {
        let t = k as f64 * PI / 2.0;
        println!("h({t:.3}) = {:.6}", support_value(&a, t)?);
    }

    let poly = boundary_polyline(&a, 360)?;
    let pts = poly.points();
    let perimeter: f64 = (0..pts.len()).map(|k| (pts[(k + 1) % pts.len()] - pts[k]).norm()).sum();
    println!("boundary: {} samples, perimeter about {perimeter:.4}", poly.len());

    for lam in general_eigvals(&a)? {
        println!("eigenvalue {lam:.4} inside: {}", contains_point(&a, lam, 360, 1e-9)?);
    }
    println!(
        "2.5 + 0i inside: {}",
        contains_point(&a, critloc::Complex64::new(2.5, 0.0), 360, 1e-9)?
    );
    Ok(())
}
