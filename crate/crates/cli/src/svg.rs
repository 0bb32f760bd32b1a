//! Minimal SVG 1.1 output for nodal rasters and frames.

use std::f64::consts::PI;
use std::fmt::Write as _;

use reptile_core::folding::KFrame;
use reptile_core::nodal::NodalRaster;
use reptile_core::qlattice::Domain;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 10.0;

struct Canvas {
    scale: f64,
    height: f64,
    body: String,
}

impl Canvas {
    fn new(width: f64, height: f64) -> Self {
        let scale = (SIZE - 2.0 * MARGIN) / width.max(height);
        Canvas {
            scale,
            height,
            body: String::new(),
        }
    }

    fn x(&self, x: f64) -> f64 {
        MARGIN + x * self.scale
    }

    fn y(&self, y: f64) -> f64 {
        MARGIN + (self.height - y) * self.scale
    }

    fn line(&mut self, a: [f64; 2], b: [f64; 2], colour: &str, width: f64) {
        let _ = writeln!(
            self.body,
            r#"<line x1="{:.3}" y1="{:.3}" x2="{:.3}" y2="{:.3}" stroke="{colour}" stroke-width="{width}"/>"#,
            self.x(a[0]),
            self.y(a[1]),
            self.x(b[0]),
            self.y(b[1])
        );
    }

    fn outline(&mut self, domain: Domain) {
        let corners: Vec<[f64; 2]> = match domain {
            Domain::Triangle => vec![[0.0, 0.0], [PI, 0.0], [PI, PI]],
            Domain::Box(_) => {
                let l = domain.edge_lengths();
                vec![[0.0, 0.0], [l[0], 0.0], [l[0], l[1]], [0.0, l[1]]]
            }
        };
        let pts: Vec<String> = corners
            .iter()
            .map(|p| format!("{:.3},{:.3}", self.x(p[0]), self.y(p[1])))
            .collect();
        let _ = writeln!(
            self.body,
            r#"<polygon points="{}" fill="none" stroke="black" stroke-width="1.5"/>"#,
            pts.join(" ")
        );
    }

    fn finish(self) -> String {
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n{}</svg>\n",
            self.body
        )
    }
}

fn extent(domain: Domain) -> (f64, f64) {
    let l = domain.edge_lengths();
    match domain {
        Domain::Triangle => (PI, PI),
        Domain::Box(_) => (l[0], l[1]),
    }
}

/// Sign map of a 2-D raster: positive samples light, negative dark.
pub fn nodal(domain: Domain, raster: &NodalRaster) -> String {
    let (w, h) = extent(domain);
    let mut c = Canvas::new(w, h);
    let g = &raster.grid;
    let (hx, hy) = (g.spacing(0), g.spacing(1));
    let (cw, ch) = (hx * c.scale, hy * c.scale);
    for (idx, s) in raster.signs.iter().enumerate() {
        if *s == 0 {
            continue;
        }
        let p = g.point(idx);
        let colour = if *s > 0 { "#f4c27a" } else { "#3b6ea5" };
        let _ = writeln!(
            c.body,
            r#"<rect x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="{colour}"/>"#,
            c.x(p[0] - hx / 2.0),
            c.y(p[1] + hy / 2.0),
            cw + 0.05,
            ch + 0.05
        );
    }
    c.outline(domain);
    c.finish()
}

/// Facets of a 2-D frame drawn over the domain outline.
pub fn frame(frame: &KFrame) -> String {
    let domain = frame.domain;
    let (w, h) = extent(domain);
    let mut c = Canvas::new(w, h);
    c.outline(domain);
    for f in &frame.facets {
        if let Some((a, b)) = f.segment_points() {
            c.line(a, b, "#c0392b", 2.0);
        } else if let Some((axis, b)) = f.slab_bounds(domain) {
            let (a, e) = if axis == 0 {
                ([b[0].0, b[1].0], [b[0].0, b[1].1])
            } else {
                ([b[0].0, b[1].0], [b[0].1, b[1].0])
            };
            c.line(a, e, "#c0392b", 2.0);
        }
    }
    c.finish()
}
