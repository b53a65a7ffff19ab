//! Deterministic SVG renderings of the geometric scenes.
//!
//! Coordinates are converted to `f64` only here. Output is byte-stable for
//! identical inputs: numbers are printed with fixed precision and the exact
//! inputs are echoed in a leading comment.

use std::fmt::Write as _;

use crate::arith::{QuadExt, Rational};
use crate::billiards::{
    square_obstacle_contact, square_path_segments, triangle_cells_along_ray,
    triangle_path_segments, wedge_cells, QPoint,
};
use crate::error::Error;
use crate::viewobstruct::{obstruction_witness, Direction};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scene {
    /// Half-integer-centred squares of side `alpha` with rays from the origin.
    Obstruction2d {
        alpha: Rational,
        slopes: Vec<Rational>,
        extent: u64,
    },
    /// Folded path in the unit square with the central obstacle `G(alpha)`.
    SquareBilliard {
        slope: Rational,
        alpha: Rational,
        segments: usize,
    },
    /// Folded path in the equilateral table; the last strike is marked.
    TriangleBilliard {
        slope: QuadExt,
        alpha: Option<Rational>,
        strikes: usize,
    },
    /// Wedge tiling with the obstacles `H_n(alpha)` and reference rays.
    TriangleTiling {
        alpha: Rational,
        slopes: Vec<QuadExt>,
        levels: i64,
    },
}

impl Scene {
    pub fn name(&self) -> &'static str {
        match self {
            Scene::Obstruction2d { .. } => "obstruction2d",
            Scene::SquareBilliard { .. } => "square_billiard",
            Scene::TriangleBilliard { .. } => "triangle_billiard",
            Scene::TriangleTiling { .. } => "triangle_tiling",
        }
    }

    fn describe(&self) -> String {
        let list = |v: &[String]| v.join(",");
        match self {
            Scene::Obstruction2d {
                alpha,
                slopes,
                extent,
            } => format!(
                "alpha={alpha} slopes=[{}] extent={extent}",
                list(&slopes.iter().map(ToString::to_string).collect::<Vec<_>>())
            ),
            Scene::SquareBilliard {
                slope,
                alpha,
                segments,
            } => {
                format!("slope={slope} alpha={alpha} segments={segments}")
            }
            Scene::TriangleBilliard {
                slope,
                alpha,
                strikes,
            } => match alpha {
                Some(a) => format!("slope={slope} alpha={a} strikes={strikes}"),
                None => format!("slope={slope} strikes={strikes}"),
            },
            Scene::TriangleTiling {
                alpha,
                slopes,
                levels,
            } => format!(
                "alpha={alpha} slopes=[{}] levels={levels}",
                list(&slopes.iter().map(ToString::to_string).collect::<Vec<_>>())
            ),
        }
    }
}

fn num(x: f64) -> String {
    let s = format!("{x:.5}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

/// Drawing surface in scene coordinates with the y axis pointing up.
struct Canvas {
    min: (f64, f64),
    max: (f64, f64),
    body: String,
}

impl Canvas {
    fn new(min: (f64, f64), max: (f64, f64)) -> Self {
        Canvas {
            min,
            max,
            body: String::new(),
        }
    }

    fn y(&self, y: f64) -> f64 {
        self.max.1 + self.min.1 - y
    }

    fn stroke_width(&self) -> f64 {
        (self.max.0 - self.min.0).max(self.max.1 - self.min.1) / 400.0
    }

    fn polygon(&mut self, pts: &[(f64, f64)], fill: &str, stroke: &str) {
        let p: Vec<String> = pts
            .iter()
            .map(|&(x, y)| format!("{},{}", num(x), num(self.y(y))))
            .collect();
        let w = num(self.stroke_width());
        let _ = writeln!(
            self.body,
            r#"<polygon points="{}" fill="{fill}" stroke="{stroke}" stroke-width="{w}"/>"#,
            p.join(" ")
        );
    }

    fn line(
        &mut self,
        a: (f64, f64),
        b: (f64, f64),
        stroke: &str,
        width_factor: f64,
        dashed: bool,
    ) {
        let w = num(self.stroke_width() * width_factor);
        let dash = if dashed {
            format!(r#" stroke-dasharray="{}""#, num(self.stroke_width() * 6.0))
        } else {
            String::new()
        };
        let _ = writeln!(
            self.body,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{stroke}" stroke-width="{w}"{dash}/>"#,
            num(a.0),
            num(self.y(a.1)),
            num(b.0),
            num(self.y(b.1))
        );
    }

    fn dot(&mut self, p: (f64, f64), fill: &str) {
        let r = num(self.stroke_width() * 3.0);
        let _ = writeln!(
            self.body,
            r#"<circle cx="{}" cy="{}" r="{r}" fill="{fill}"/>"#,
            num(p.0),
            num(self.y(p.1))
        );
    }

    fn finish(self, title: &str, inputs: &str) -> String {
        let (w, h) = (self.max.0 - self.min.0, self.max.1 - self.min.1);
        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            out,
            "<!-- scene={title} {} -->",
            inputs.replace("--", "- -")
        );
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}" width="600" height="{}">"#,
            num(self.min.0),
            num(self.min.1),
            num(w),
            num(h),
            num(600.0 * h / w)
        );
        let _ = writeln!(out, "<title>{title}</title>");
        out.push_str(&self.body);
        out.push_str("</svg>\n");
        out
    }
}

fn qp(p: &QPoint) -> (f64, f64) {
    p.to_f64()
}

fn obstruction2d(
    c: &mut Canvas,
    alpha: &Rational,
    slopes: &[Rational],
    extent: u64,
) -> Result<(), Error> {
    let a = alpha.to_f64();
    let e = extent as f64;
    for i in 0..extent {
        for j in 0..extent {
            let (cx, cy) = (i as f64 + 0.5, j as f64 + 0.5);
            let h = a / 2.0;
            c.polygon(
                &[
                    (cx - h, cy - h),
                    (cx + h, cy - h),
                    (cx + h, cy + h),
                    (cx - h, cy + h),
                ],
                "#cfd8e3",
                "#34495e",
            );
        }
    }
    for s in slopes {
        if !s.is_positive() {
            return Err(Error::OutOfRange(format!("slope {s} must be positive")));
        }
        let sf = s.to_f64();
        let end = if sf <= 1.0 { (e, e * sf) } else { (e / sf, e) };
        c.line((0.0, 0.0), end, "#c0392b", 1.0, false);
        let dir = Direction::new(vec![
            u64::try_from(s.denom()).map_err(|_| Error::OutOfRange("slope too large".into()))?,
            u64::try_from(s.numer()).map_err(|_| Error::OutOfRange("slope too large".into()))?,
        ])?;
        if let Some(w) = obstruction_witness(&dir, alpha)? {
            let p = (
                (Rational::from(dir.coords()[0]) * &w.hit_time).to_f64(),
                (Rational::from(dir.coords()[1]) * &w.hit_time).to_f64(),
            );
            if p.0 <= e && p.1 <= e {
                c.dot(p, "#c0392b");
            }
        }
    }
    Ok(())
}

fn square_billiard(
    c: &mut Canvas,
    slope: &Rational,
    alpha: &Rational,
    segments: usize,
) -> Result<(), Error> {
    c.polygon(
        &[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)],
        "none",
        "#2c3e50",
    );
    let h = alpha.to_f64() / 2.0;
    c.polygon(
        &[
            (0.5 - h, 0.5 - h),
            (0.5 + h, 0.5 - h),
            (0.5 + h, 0.5 + h),
            (0.5 - h, 0.5 + h),
        ],
        "#cfd8e3",
        "#34495e",
    );
    let path = square_path_segments(slope, segments)?;
    for (a, b) in &path.segments {
        c.line(
            (a.x.to_f64(), a.y.to_f64()),
            (b.x.to_f64(), b.y.to_f64()),
            "#c0392b",
            0.6,
            false,
        );
    }
    if let Some(hit) = square_obstacle_contact(slope, alpha)? {
        c.dot(
            (hit.table_point.x.to_f64(), hit.table_point.y.to_f64()),
            "#27ae60",
        );
    }
    Ok(())
}

fn base_triangle() -> [(f64, f64); 3] {
    [(0.0, 0.0), (1.0, 0.0), (0.5, 3f64.sqrt() / 2.0)]
}

fn triangle_billiard(
    c: &mut Canvas,
    slope: &QuadExt,
    alpha: Option<&Rational>,
    strikes: usize,
) -> Result<(), Error> {
    c.polygon(&base_triangle(), "none", "#2c3e50");
    if let Some(a) = alpha {
        let cell = &triangle_cells_along_ray(slope, 1)?[0];
        let h: Vec<(f64, f64)> = cell.obstacle(a).iter().map(qp).collect();
        c.polygon(&h, "#cfd8e3", "#34495e");
    }
    let path = triangle_path_segments(slope, strikes)?;
    for (a, b) in &path.segments {
        c.line(qp(a), qp(b), "#c0392b", 0.4, false);
    }
    if let Some((_, last)) = path.segments.last() {
        c.dot(qp(last), "#2c3e50");
    }
    Ok(())
}

fn triangle_tiling(
    c: &mut Canvas,
    alpha: &Rational,
    slopes: &[QuadExt],
    levels: i64,
) -> Result<(), Error> {
    for cell in wedge_cells(levels) {
        let v: Vec<(f64, f64)> = cell.vertices.iter().map(qp).collect();
        c.polygon(&v, "none", "#95a5a6");
        let h: Vec<(f64, f64)> = cell.obstacle(alpha).iter().map(qp).collect();
        c.polygon(&h, "#cfd8e3", "#34495e");
    }
    let len = levels as f64;
    for (i, s) in slopes.iter().enumerate() {
        crate::billiards::check_wedge_slope(s)?;
        let sf = s.to_f64();
        // Stop where the ray leaves the wedge triangle x + y/√3 ≤ levels.
        let x = len / (1.0 + sf / 3f64.sqrt());
        c.line(
            (0.0, 0.0),
            (x, sf * x),
            "#c0392b",
            1.0,
            i + 1 == slopes.len() && slopes.len() > 1,
        );
    }
    Ok(())
}

/// SVG 1.1 document for `scene`.
pub fn render_svg(scene: &Scene) -> Result<String, Error> {
    let sqrt3_2 = 3f64.sqrt() / 2.0;
    let pad = |lo: (f64, f64), hi: (f64, f64)| {
        let m = (hi.0 - lo.0).max(hi.1 - lo.1) * 0.03;
        ((lo.0 - m, lo.1 - m), (hi.0 + m, hi.1 + m))
    };
    let svg = match scene {
        Scene::Obstruction2d {
            alpha,
            slopes,
            extent,
        } => {
            if *extent == 0 {
                return Err(Error::OutOfRange("extent must be at least 1".into()));
            }
            let e = *extent as f64;
            let (lo, hi) = pad((0.0, 0.0), (e, e));
            let mut c = Canvas::new(lo, hi);
            obstruction2d(&mut c, alpha, slopes, *extent)?;
            c
        }
        Scene::SquareBilliard {
            slope,
            alpha,
            segments,
        } => {
            let (lo, hi) = pad((0.0, 0.0), (1.0, 1.0));
            let mut c = Canvas::new(lo, hi);
            square_billiard(&mut c, slope, alpha, *segments)?;
            c
        }
        Scene::TriangleBilliard {
            slope,
            alpha,
            strikes,
        } => {
            let (lo, hi) = pad((0.0, 0.0), (1.0, sqrt3_2));
            let mut c = Canvas::new(lo, hi);
            triangle_billiard(&mut c, slope, alpha.as_ref(), *strikes)?;
            c
        }
        Scene::TriangleTiling {
            alpha,
            slopes,
            levels,
        } => {
            if *levels < 1 {
                return Err(Error::OutOfRange("levels must be at least 1".into()));
            }
            let l = *levels as f64;
            let (lo, hi) = pad((0.0, 0.0), (l, l * sqrt3_2));
            let mut c = Canvas::new(lo, hi);
            triangle_tiling(&mut c, alpha, slopes, *levels)?;
            c
        }
    };
    Ok(svg.finish(scene.name(), &scene.describe()))
}
