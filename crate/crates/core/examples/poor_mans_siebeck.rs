//! The numerical range of a compression `A_(1)` touches every hull edge at its
//! midpoint when the zeros are in convex position.

use critloc::geom::{convex_hull_indexed, edge_midpoints};
use critloc::poly::RootSet;
use critloc::theorems::{check_edge_preimage, check_poor_mans_siebeck, check_siebeck_hypotheses};
use critloc::Complex64;
use std::f64::consts::TAU;

fn main() -> critloc::Result<()> {
    let zeros: RootSet = (0..5)
        .map(|k| Complex64::from_polar(1.0 + 0.1 * k as f64, TAU * k as f64 / 5.0 + 0.2))
        .collect();
    let hyp = check_siebeck_hypotheses(&zeros, 1e-9)?;
    println!("hypotheses hold: {} on hull edges {:?}", hyp.hold(), hyp.edges);

    let r = check_poor_mans_siebeck(&zeros, 720, 1e-7)?;
    println!("verdict {:?}, max violation {:.2e}", r.verdict, r.max_violation);
    if let Some(margin) = r.detail("min_exterior_margin") {
        println!("tangency is unique: nearest off-midpoint probe is {margin:.2e} outside");
    }

    let hull = convex_hull_indexed(&zeros, 1e-12)?;
    for (k, m) in edge_midpoints(&hull.polygon)?.iter().enumerate() {
        let edge = (hull.indices[k], hull.indices[(k + 1) % hull.indices.len()]);
        let e = check_edge_preimage(&zeros, edge, 720, 1e-6)?;
        println!(
            "edge {edge:?}: midpoint {m:.4}, only boundary point on the edge: {}",
            e.passed()
        );
    }
    Ok(())
}
