//! For three zeros the critical points are the foci of the Steiner inellipse.

use critloc::geom::{ellipse_tangency_check, steiner_inellipse};
use critloc::poly::RootSet;
use critloc::theorems::{check_bgm, oracle_critical_points};
use critloc::Complex64;

fn main() -> critloc::Result<()> {
    let v = [
        Complex64::new(0.0, 0.0),
        Complex64::new(2.0, 0.0),
        Complex64::new(0.0, 2.0),
    ];
    let e = steiner_inellipse(v[0], v[1], v[2])?;
    println!(
        "centre {:.4}, semi-axes {:.4} / {:.4}",
        e.center, e.major_semi_axis, e.minor_semi_axis
    );
    println!("foci {:.6} and {:.6}", e.focus1, e.focus2);

    let zeros = RootSet::new(v.to_vec());
    for mu in oracle_critical_points(&zeros)?.sorted().iter() {
        println!("critical point {mu:.6}");
    }
    for k in 0..3 {
        let (a, b) = (v[k], v[(k + 1) % 3]);
        println!(
            "tangent to side {a}..{b} at its midpoint: {}",
            ellipse_tangency_check(&e, a, b, 1e-9)?
        );
    }
    println!("check: {:?}", check_bgm(&zeros, 1e-9)?.verdict);
    Ok(())
}
