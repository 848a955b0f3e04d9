//! Writes the two figures as SVG and CSV into a scratch directory.
//!
//! ```bash
//! cargo run --example figures -- /tmp/figs
//! ```

use critloc::figure::{bgm_figure, siebeck_figure};
use critloc::rng::{random_zeros, Constraint, SampleRng};
use critloc::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args()
        .nth(1)
        .unwrap_or_else(|| std::env::temp_dir().join("critloc-figures").display().to_string());
    std::fs::create_dir_all(&dir)?;

    let mut rng = SampleRng::new(42);
    let pentagon = random_zeros(&mut rng, 5, Constraint::SiebeckOk, 1e-9)?;
    let siebeck = siebeck_figure(&pentagon, 720)?;
    let triangle = critloc::poly::RootSet::new(vec![
        Complex64::new(0.0, 0.0),
        Complex64::new(2.0, 0.0),
        Complex64::new(0.0, 2.0),
    ]);
    let bgm = bgm_figure(&triangle)?;

    for (name, fig) in [("siebeck", &siebeck), ("bgm", &bgm)] {
        let svg = format!("{dir}/{name}.svg");
        std::fs::write(&svg, fig.to_svg())?;
        std::fs::write(format!("{dir}/{name}.csv"), fig.to_csv())?;
        println!(
            "wrote {svg} ({} zeros, {} midpoints)",
            fig.zeros.len(),
            fig.midpoints.len()
        );
    }
    Ok(())
}
