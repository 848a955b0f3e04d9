//! Trace vectors and differentiators.
//!
//! Each canonical basis vector `e_i` satisfies `e_i* A^k e_i = tr(A^k)/n`
//! for the constructed matrix, and the compression onto `e_i^perp` has
//! characteristic polynomial `p'/n`. A generic unit vector does neither.

use critloc::matricial::{basis_vector, build_construction, differentiator_defect, is_trace_vector};
use critloc::rng::SampleRng;

fn main() -> critloc::Result<()> {
    let mut rng = SampleRng::new(7);
    let zeros = rng.disk_points(5);
    let a = build_construction(&zeros)?.a;

    for i in 0..zeros.len() {
        let e = basis_vector(zeros.len(), i);
        let r = is_trace_vector(&a, &e, 1e-10)?;
        println!(
            "e_{}: trace vector {} (defect {:.1e}), differentiator defect {:.1e}",
            i + 1,
            r.is_trace_vector,
            r.max_defect,
            differentiator_defect(&a, &e)?
        );
    }

    let mut z: Vec<_> = (0..zeros.len()).map(|_| rng.disk()).collect();
    let norm = critloc::numlin::vec_norm(&z);
    z.iter_mut().for_each(|x| *x /= norm);
    let r = is_trace_vector(&a, &z, 1e-10)?;
    println!(
        "random unit vector: trace vector {} (defect {:.1e})",
        r.is_trace_vector, r.max_defect
    );
    Ok(())
}
