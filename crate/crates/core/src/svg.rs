//! SVG rendering of a point set and one polygon on it.

use std::fmt::Write;

use crate::geom::{PointSet, Polygon};

struct Frame {
    min_x: i64,
    max_y: i64,
    width: i64,
    height: i64,
    pad: i64,
    radius: f64,
}

impl Frame {
    fn of(ps: &PointSet) -> Frame {
        let xs = ps.points().iter().map(|p| p.x);
        let ys = ps.points().iter().map(|p| p.y);
        let (min_x, max_x) = (xs.clone().min().unwrap_or(0), xs.max().unwrap_or(0));
        let (min_y, max_y) = (ys.clone().min().unwrap_or(0), ys.max().unwrap_or(0));
        let (w, h) = (max_x - min_x, max_y - min_y);
        let pad = (w.max(h) / 20).max(1);
        Frame {
            min_x,
            max_y,
            width: w + 2 * pad,
            height: h + 2 * pad,
            pad,
            radius: (w.max(h) as f64 / 120.0).max(0.2),
        }
    }

    /// Screen coordinates; SVG's y axis points down.
    fn map(&self, x: i64, y: i64) -> (i64, i64) {
        (x - self.min_x + self.pad, self.max_y - y + self.pad)
    }
}

fn header(out: &mut String, f: &Frame) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="0 0 {} {}" width="600" height="{}">"#,
        f.width,
        f.height,
        600 * f.height / f.width.max(1)
    );
    let _ = writeln!(
        out,
        "<style>.edge{{fill:#dde8f6;stroke:#1f4e8c;stroke-width:{r}}} .vertex{{fill:#1f4e8c}} .inside{{fill:#2e8b57}} .outside{{fill:none;stroke:#c0392b;stroke-width:{r}}} .point{{fill:#555}}</style>",
        r = f.radius / 2.0
    );
}

fn dot(out: &mut String, f: &Frame, ps: &PointSet, i: usize, class: &str) {
    let p = ps.point(i);
    let (x, y) = f.map(p.x, p.y);
    let _ = writeln!(out, r#"<circle class="{class}" cx="{x}" cy="{y}" r="{}"><title>{i}</title></circle>"#, f.radius);
}

/// The polygon stroked and filled, its vertices, and every other point
/// styled as inside or outside.
pub fn render_svg(ps: &PointSet, poly: &Polygon) -> String {
    let f = Frame::of(ps);
    let mut out = String::new();
    header(&mut out, &f);
    let mut d = String::new();
    for (j, &v) in poly.verts().iter().enumerate() {
        let p = ps.point(v);
        let (x, y) = f.map(p.x, p.y);
        let _ = write!(d, "{}{x} {y} ", if j == 0 { "M" } else { "L" });
    }
    let _ = writeln!(out, r#"<path class="edge" d="{d}Z"/>"#);
    for &v in poly.verts() {
        dot(&mut out, &f, ps, v, "vertex");
    }
    for &q in poly.inside() {
        dot(&mut out, &f, ps, q, "inside");
    }
    for &q in poly.outside() {
        dot(&mut out, &f, ps, q, "outside");
    }
    out.push_str("</svg>\n");
    out
}

/// The bare point set.
pub fn render_points_svg(ps: &PointSet) -> String {
    let f = Frame::of(ps);
    let mut out = String::new();
    header(&mut out, &f);
    for i in 0..ps.len() {
        dot(&mut out, &f, ps, i, "point");
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::s5;
    use crate::geom::{canonical_form, convex_hull};

    fn shape(svg: &str) -> (usize, usize, usize) {
        let path = svg.lines().find(|l| l.starts_with("<path")).unwrap();
        let corners = path.matches('M').count() + path.matches('L').count();
        (corners, svg.matches(r#"class="inside""#).count(), svg.matches(r#"class="outside""#).count())
    }

    #[test]
    fn structure() {
        let ps = s5();
        assert_eq!(shape(&render_svg(&ps, &convex_hull(&ps))), (4, 1, 0));
        let tri = canonical_form(&[0, 1, 3], &ps).unwrap();
        assert_eq!(shape(&render_svg(&ps, &tri)), (3, 1, 1));
        let notch = canonical_form(&[0, 4, 1, 2, 3], &ps).unwrap();
        assert_eq!(shape(&render_svg(&ps, &notch)), (5, 0, 0));
    }

    #[test]
    fn padded_viewport_and_points() {
        let ps = s5();
        let svg = render_points_svg(&ps);
        // Bounding box 5 x 5, padded by one unit on each side.
        assert!(svg.contains(r#"viewBox="0 0 7 7""#));
        assert_eq!(svg.matches("<circle").count(), 5);
    }
}
