//! Critical points of a polynomial as the spectrum of a compressed normal
//! matrix, next to the companion-matrix roots of `p'`.
//!
//! ```bash
//! cargo run --example critical_points
//! ```

use critloc::matricial::{build_construction, critical_points_from};
use critloc::poly::{multiset_match, Polynomial, RootSet};
use critloc::Complex64;

fn main() -> critloc::Result<()> {
    let zeros = RootSet::new(vec![
        Complex64::new(0.0, 0.0),
        Complex64::new(2.0, 0.0),
        Complex64::new(1.0, 1.5),
        Complex64::new(-0.5, 1.0),
    ]);
    let c = build_construction(&zeros)?;
    println!("unitarity defect of U: {:.2e}", c.unitarity_defect());

    let oracle = Polynomial::from_roots(&zeros)?.derivative()?.roots()?.sorted();
    println!("roots of p':");
    for mu in oracle.iter() {
        println!("  {mu:.12}");
    }
    for i in 0..zeros.len() {
        let spectrum = critical_points_from(&c, i)?;
        let m = multiset_match(&spectrum, &oracle, 1e-9);
        println!(
            "sigma(A_({})) matches: {} (max distance {:.2e})",
            i + 1,
            m.matched,
            m.max_distance
        );
    }
    Ok(())
}
