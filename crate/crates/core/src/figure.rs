//! Figure layers for the tangency pictures and their SVG/CSV renderings.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fov::boundary_polyline;
use crate::geom::{convex_hull, edge_midpoints, steiner_inellipse};
use crate::poly::RootSet;
use crate::theorems::{oracle_critical_points, siebeck_matrix};

/// Side of the square SVG viewport in user units.
pub const VIEWPORT: f64 = 1000.0;
/// Fraction of the viewport left blank on each side.
pub const MARGIN: f64 = 0.05;
/// Layer names, in drawing order.
pub const LAYERS: [&str; 6] = ["hull", "fov", "inellipse", "zeros", "critical", "midpoints"];

const ELLIPSE_POINTS: usize = 360;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FigureKind {
    Siebeck,
    Bgm,
}

/// Raw layers of a figure, in the plane of the zeros.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigureData {
    pub which: FigureKind,
    pub zeros: Vec<Complex64>,
    pub hull: Vec<Complex64>,
    /// Sampled boundary of `F(A_(1))`.
    pub fov: Vec<Complex64>,
    /// Sampled Steiner inellipse.
    pub inellipse: Vec<Complex64>,
    pub critical: Vec<Complex64>,
    pub midpoints: Vec<Complex64>,
}

impl FigureData {
    pub fn layer(&self, name: &str) -> Option<&[Complex64]> {
        Some(match name {
            "zeros" => &self.zeros,
            "hull" => &self.hull,
            "fov" => &self.fov,
            "inellipse" => &self.inellipse,
            "critical" => &self.critical,
            "midpoints" => &self.midpoints,
            _ => return None,
        })
    }

    fn all_points(&self) -> Vec<Complex64> {
        LAYERS
            .iter()
            .flat_map(|l| self.layer(l).unwrap_or(&[]).iter().copied())
            .collect()
    }

    pub fn transform(&self) -> ViewTransform {
        ViewTransform::fit(&self.all_points())
    }

    /// `layer,index,re,im` rows.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("layer,index,re,im\n");
        for name in LAYERS {
            for (k, z) in self.layer(name).unwrap_or(&[]).iter().enumerate() {
                let _ = writeln!(out, "{name},{k},{:?},{:?}", z.re, z.im);
            }
        }
        out
    }

    pub fn to_svg(&self) -> String {
        let t = self.transform();
        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            out,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{v}\" height=\"{v}\" viewBox=\"0 0 {v} {v}\">",
            v = VIEWPORT
        );
        let _ = writeln!(out, "<desc>{}</desc>", t.describe());
        let _ = writeln!(out, "<rect width=\"{v}\" height=\"{v}\" fill=\"white\"/>", v = VIEWPORT);
        for name in LAYERS {
            let pts = self.layer(name).unwrap_or(&[]);
            let style = match name {
                "hull" => "fill=\"none\" stroke=\"black\" stroke-width=\"2\"",
                "fov" => "fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"2\"",
                "inellipse" => "fill=\"none\" stroke=\"#1f8f3f\" stroke-width=\"2\"",
                "zeros" => "fill=\"black\"",
                "critical" => "fill=\"#c8102e\"",
                _ => "fill=\"#e08000\"",
            };
            let _ = writeln!(out, "<g id=\"{name}\" {style}>");
            match name {
                "hull" | "fov" | "inellipse" if !pts.is_empty() => {
                    let coords: Vec<String> = pts
                        .iter()
                        .map(|&z| {
                            let (x, y) = t.apply(z);
                            format!("{x:.3},{y:.3}")
                        })
                        .collect();
                    let _ = writeln!(out, "<polygon points=\"{}\"/>", coords.join(" "));
                }
                "hull" | "fov" | "inellipse" => {}
                _ => {
                    let r = if name == "zeros" { 7.0 } else { 5.0 };
                    for &z in pts {
                        let (x, y) = t.apply(z);
                        let _ = writeln!(out, "<circle cx=\"{x:.3}\" cy=\"{y:.3}\" r=\"{r}\"/>");
                    }
                }
            }
            out.push_str("</g>\n");
        }
        out.push_str("</svg>\n");
        out
    }
}

/// `x' = 500 + s (x - cx)`, `y' = 500 - s (y - cy)`: the bounding box of the
/// drawing, centred, fills the viewport less the margin on its longer side.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ViewTransform {
    pub scale: f64,
    pub cx: f64,
    pub cy: f64,
}

impl ViewTransform {
    pub fn fit(points: &[Complex64]) -> Self {
        if points.is_empty() {
            return Self {
                scale: 1.0,
                cx: 0.0,
                cy: 0.0,
            };
        }
        let (mut x0, mut x1, mut y0, mut y1) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for z in points {
            x0 = x0.min(z.re);
            x1 = x1.max(z.re);
            y0 = y0.min(z.im);
            y1 = y1.max(z.im);
        }
        let extent = (x1 - x0).max(y1 - y0);
        let usable = VIEWPORT * (1.0 - 2.0 * MARGIN);
        Self {
            scale: if extent > 0.0 { usable / extent } else { 1.0 },
            cx: 0.5 * (x0 + x1),
            cy: 0.5 * (y0 + y1),
        }
    }

    pub fn apply(&self, z: Complex64) -> (f64, f64) {
        let half = VIEWPORT / 2.0;
        (
            half + self.scale * (z.re - self.cx),
            half - self.scale * (z.im - self.cy),
        )
    }

    pub fn describe(&self) -> String {
        format!(
            "viewport {v}x{v}, margin {m}; x' = {h} + s*(re - cx), y' = {h} - s*(im - cy); s = {:?}, cx = {:?}, cy = {:?}",
            self.scale,
            self.cx,
            self.cy,
            v = VIEWPORT,
            m = MARGIN,
            h = VIEWPORT / 2.0
        )
    }
}

fn base_layers(zeros: &RootSet, which: FigureKind) -> Result<FigureData> {
    let hull = convex_hull(zeros, 0.0)?;
    Ok(FigureData {
        which,
        zeros: zeros.points.clone(),
        midpoints: edge_midpoints(&hull)?,
        hull: hull.vertices,
        fov: Vec::new(),
        inellipse: Vec::new(),
        critical: oracle_critical_points(zeros)?.sorted().points,
    })
}

/// Zeros, hull, midpoints, critical points and `m` boundary samples of
/// `F(A_(1))`.
pub fn siebeck_figure(zeros: &RootSet, m: usize) -> Result<FigureData> {
    let mut f = base_layers(zeros, FigureKind::Siebeck)?;
    f.fov = boundary_polyline(&siebeck_matrix(zeros)?, m)?.points();
    Ok(f)
}

/// Zeros of a triangle, its midpoints, critical points and the Steiner
/// inellipse.
pub fn bgm_figure(zeros: &RootSet) -> Result<FigureData> {
    if zeros.len() != 3 {
        return Err(Error::InvalidArgument(format!(
            "inellipse figure needs 3 zeros, got {}",
            zeros.len()
        )));
    }
    let mut f = base_layers(zeros, FigureKind::Bgm)?;
    let v = &zeros.points;
    let e = steiner_inellipse(v[0], v[1], v[2])?;
    f.inellipse = (0..ELLIPSE_POINTS)
        .map(|k| e.point_at(TAU * k as f64 / ELLIPSE_POINTS as f64))
        .collect();
    Ok(f)
}
