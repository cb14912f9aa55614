//! SVG figures of a polygon and its orbits.
//!
//! Output is plain SVG 1.1 text. Coordinates are written with a fixed number
//! of decimals, so identical input gives byte-identical documents.

use std::fmt::Write as _;

use crate::geometry::{OrbitPolyline, Point, PolygonGeometry};

pub const PALETTE: [&str; 10] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf",
    "#bcbd22", "#7f7f7f",
];

#[derive(Debug, Clone, PartialEq)]
pub struct SvgOptions {
    /// Width of one panel in pixels.
    pub size: f64,
    pub polygon_stroke: String,
    pub polygon_stroke_width: f64,
    pub orbit_stroke_width: f64,
    pub show_labels: bool,
    /// Margin around the geometry as a fraction of its extent.
    pub margin: f64,
}

impl Default for SvgOptions {
    fn default() -> Self {
        SvgOptions {
            size: 400.0,
            polygon_stroke: "#000000".to_string(),
            polygon_stroke_width: 0.012,
            orbit_stroke_width: 0.008,
            show_labels: true,
            margin: 0.05,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    /// All orbits drawn over a single polygon.
    Overlay,
    /// One small panel per orbit.
    Grid { columns: usize },
}

fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    if s.trim_start_matches('-')
        .chars()
        .all(|c| c == '0' || c == '.')
    {
        "0.000000".to_string()
    } else {
        s
    }
}

/// SVG y grows downward; flip so side 1 sits at the bottom.
fn xy(p: Point) -> String {
    format!("{},{}", num(p.x), num(-p.y))
}

fn closed_path(points: &[Point]) -> String {
    let mut d = String::new();
    for (i, &p) in points.iter().enumerate() {
        let _ = write!(d, "{}{} ", if i == 0 { "M" } else { "L" }, xy(p));
    }
    d.push('Z');
    d
}

struct Bounds {
    min_x: f64,
    min_y: f64,
    width: f64,
    height: f64,
}

fn bounds<'a>(
    points: impl Iterator<Item = &'a Point>,
    margin: f64,
    labels: bool,
    radius: f64,
) -> Bounds {
    let (mut lo_x, mut lo_y, mut hi_x, mut hi_y) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for p in points {
        lo_x = lo_x.min(p.x);
        hi_x = hi_x.max(p.x);
        lo_y = lo_y.min(-p.y);
        hi_y = hi_y.max(-p.y);
    }
    if labels {
        let pad = 0.18 * radius;
        lo_x -= pad;
        lo_y -= pad;
        hi_x += pad;
        hi_y += pad;
    }
    let extent = (hi_x - lo_x).max(hi_y - lo_y);
    let m = margin * extent;
    Bounds {
        min_x: lo_x - m,
        min_y: lo_y - m,
        width: hi_x - lo_x + 2.0 * m,
        height: hi_y - lo_y + 2.0 * m,
    }
}

fn panel(
    out: &mut String,
    geom: &PolygonGeometry,
    orbits: &[(usize, &OrbitPolyline)],
    opts: &SvgOptions,
) {
    let r = geom.radius;
    let _ = writeln!(
        out,
        r#"  <path class="polygon" d="{}" fill="none" stroke="{}" stroke-width="{}"/>"#,
        closed_path(&geom.vertices),
        opts.polygon_stroke,
        num(opts.polygon_stroke_width * r)
    );
    for &(index, orbit) in orbits {
        let color = PALETTE[index % PALETTE.len()];
        let dash = if orbit.feasible {
            String::new()
        } else {
            format!(r#" stroke-dasharray="{}""#, num(0.03 * r))
        };
        let _ = writeln!(
            out,
            r#"  <path class="orbit" data-word="{}" d="{}" fill="none" stroke="{}" stroke-width="{}"{}/>"#,
            orbit.word,
            closed_path(&orbit.points),
            color,
            num(opts.orbit_stroke_width * r),
            dash
        );
    }
    if opts.show_labels {
        for side in 1..=geom.sides {
            let mid = geom.side_midpoint(side);
            let outward = geom.inward_normal(side);
            let at = Point::new(mid.x - 0.1 * r * outward.x, mid.y - 0.1 * r * outward.y);
            let _ = writeln!(
                out,
                r#"  <text x="{}" y="{}" font-size="{}" text-anchor="middle" dominant-baseline="middle">{}</text>"#,
                num(at.x),
                num(-at.y),
                num(0.09 * r),
                side
            );
        }
    }
}

/// A single figure: the polygon outline with every orbit overlaid.
pub fn emit_svg(geom: &PolygonGeometry, orbits: &[OrbitPolyline], opts: &SvgOptions) -> String {
    let b = bounds(
        geom.vertices
            .iter()
            .chain(orbits.iter().flat_map(|o| o.points.iter())),
        opts.margin,
        opts.show_labels,
        geom.radius,
    );
    let height_px = opts.size * b.height / b.width;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="{} {} {} {}">"#,
        num(opts.size),
        num(height_px),
        num(b.min_x),
        num(b.min_y),
        num(b.width),
        num(b.height)
    );
    let indexed: Vec<(usize, &OrbitPolyline)> = orbits.iter().enumerate().collect();
    panel(&mut out, geom, &indexed, opts);
    out.push_str("</svg>\n");
    out
}

/// A grid of panels, one orbit per panel, row-major in input order.
pub fn emit_gallery_svg(
    geom: &PolygonGeometry,
    orbits: &[OrbitPolyline],
    columns: usize,
    opts: &SvgOptions,
) -> String {
    if orbits.is_empty() {
        return emit_svg(geom, orbits, opts);
    }
    let columns = columns.max(1).min(orbits.len());
    let rows = orbits.len().div_ceil(columns);
    let b = bounds(
        geom.vertices
            .iter()
            .chain(orbits.iter().flat_map(|o| o.points.iter())),
        opts.margin,
        opts.show_labels,
        geom.radius,
    );
    let total_w = b.width * columns as f64;
    let total_h = b.height * rows as f64;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="{} {} {} {}">"#,
        num(opts.size * columns as f64),
        num(opts.size * columns as f64 * total_h / total_w),
        num(b.min_x),
        num(b.min_y),
        num(total_w),
        num(total_h)
    );
    for (index, orbit) in orbits.iter().enumerate() {
        let (row, col) = (index / columns, index % columns);
        let _ = writeln!(
            out,
            r#"<g transform="translate({} {})">"#,
            num(col as f64 * b.width),
            num(row as f64 * b.height)
        );
        panel(&mut out, geom, &[(index, orbit)], opts);
        let _ = writeln!(
            out,
            r#"  <text x="{}" y="{}" font-size="{}" text-anchor="middle">{}</text>"#,
            num(b.min_x + b.width / 2.0),
            num(b.min_y + b.height - 0.02 * b.height),
            num(0.07 * geom.radius),
            orbit.word
        );
        out.push_str("</g>\n");
    }
    out.push_str("</svg>\n");
    out
}

pub fn render(
    geom: &PolygonGeometry,
    orbits: &[OrbitPolyline],
    layout: Layout,
    opts: &SvgOptions,
) -> String {
    match layout {
        Layout::Overlay => emit_svg(geom, orbits, opts),
        Layout::Grid { columns } => emit_gallery_svg(geom, orbits, columns, opts),
    }
}
