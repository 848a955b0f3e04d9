//! Real zeros: critical points interlace the zeros, and the compressions are
//! Hermitian, so this is Cauchy interlacing in disguise.

use critloc::matricial::critical_points_matricial;
use critloc::poly::RootSet;
use critloc::theorems::check_interlacing;

fn main() -> critloc::Result<()> {
    let zeros = RootSet::from_real(&[-1.5, -0.25, 0.0, 0.8, 2.0]);
    let crit = critical_points_matricial(&zeros, 0)?.sorted();
    let mut merged: Vec<(f64, char)> = zeros.iter().map(|z| (z.re, 'o')).collect();
    merged.extend(crit.iter().map(|m| (m.re, 'x')));
    merged.sort_by(|a, b| a.0.total_cmp(&b.0));
    for (x, tag) in &merged {
        println!("{tag} {x:+.6}");
    }
    let r = check_interlacing(&zeros, 1e-8)?;
    println!("interlacing: {:?}, max violation {:.1e}", r.verdict, r.max_violation);

    let complex = RootSet::new(vec![
        critloc::Complex64::new(0.0, 1.0),
        critloc::Complex64::new(1.0, 0.0),
    ]);
    println!("non-real zeros: {:?}", check_interlacing(&complex, 1e-8)?.verdict);
    Ok(())
}
