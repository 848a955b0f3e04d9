//! Critical points stay inside the convex hull of the zeros.

use critloc::geom::convex_hull;
use critloc::rng::SampleRng;
use critloc::theorems::{check_gauss_lucas, oracle_critical_points};

fn main() -> critloc::Result<()> {
    let mut rng = SampleRng::new(2024);
    for n in [3, 6, 10] {
        let zeros = rng.disk_points(n);
        let hull = convex_hull(&zeros, 0.0)?;
        let depth = oracle_critical_points(&zeros)?
            .iter()
            .map(|&mu| hull.signed_distance(mu))
            .fold(f64::INFINITY, f64::min);
        let r = check_gauss_lucas(&zeros, 1e-7)?;
        println!(
            "n = {n:2}: {} hull vertices, shallowest critical point at depth {depth:.4}, verdict {:?}",
            hull.len(),
            r.verdict
        );
    }
    Ok(())
}
