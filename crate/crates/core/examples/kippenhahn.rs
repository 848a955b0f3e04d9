//! Support lines of `F(A)` satisfy `det(u Re A + v Im A + w I) = 0` with
//! `(u, v, w) = (cos t, sin t, -h(t))`.

use critloc::fov::{kippenhahn_eval, kippenhahn_scale, support_value};
use critloc::rng::SampleRng;
use std::f64::consts::TAU;

fn main() -> critloc::Result<()> {
    let a = SampleRng::new(99).matrix(4);
    let mut worst: f64 = 0.0;
    for k in 0..360 {
        let t = TAU * k as f64 / 360.0;
        let (u, v, w) = (t.cos(), t.sin(), -support_value(&a, t)?);
        let det = kippenhahn_eval(&a, u, v, w)?;
        worst = worst.max(det.norm() / kippenhahn_scale(&a, u, v, w));
        if k % 90 == 0 {
            println!("t = {t:.3}: |det| = {:.2e}", det.norm());
        }
    }
    println!("largest relative |det| over 360 angles: {worst:.2e}");

    let off = kippenhahn_eval(&a, 1.0, 0.0, -support_value(&a, 0.0)? - 0.1)?;
    println!("shifted line: |det| = {:.3}", off.norm());
    Ok(())
}
