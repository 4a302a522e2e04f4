//! Exact integer geometry: points, validated point sets, polygons and the
//! predicates every other module is built on.
//!
//! All decisions go through the sign of a 2x2 determinant evaluated in
//! `i128`. With `|coord| <= COORD_LIMIT` every intermediate product used in
//! this crate fits comfortably.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest accepted coordinate magnitude.
pub const COORD_LIMIT: i64 = 10_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Point { x, y }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Ccw,
    Cw,
}

/// Twice the signed area of the triangle `(a, b, c)`.
#[inline]
pub fn cross(a: Point, b: Point, c: Point) -> i128 {
    let abx = (b.x - a.x) as i128;
    let aby = (b.y - a.y) as i128;
    let acx = (c.x - a.x) as i128;
    let acy = (c.y - a.y) as i128;
    abx * acy - aby * acx
}

/// Orientation of `c` relative to the directed line `a -> b`.
pub fn orientation(a: Point, b: Point, c: Point) -> Result<Orientation> {
    match cross(a, b, c).cmp(&0) {
        Ordering::Greater => Ok(Orientation::Ccw),
        Ordering::Less => Ok(Orientation::Cw),
        Ordering::Equal => Err(Error::CollinearInput),
    }
}

/// `true` iff `c` lies strictly left of `a -> b`.
#[inline]
pub fn left_of(a: Point, b: Point, c: Point) -> bool {
    cross(a, b, c) > 0
}

/// The `<_xy` order: by x, ties broken by y.
#[inline]
pub fn lex_less(a: Point, b: Point) -> bool {
    lex_cmp(a, b) == Ordering::Less
}

#[inline]
pub fn lex_cmp(a: Point, b: Point) -> Ordering {
    (a.x, a.y).cmp(&(b.x, b.y))
}

/// `p` strictly inside the triangle `(a, b, c)`, either orientation.
pub fn point_in_triangle(p: Point, a: Point, b: Point, c: Point) -> Result<bool> {
    let d1 = cross(a, b, p);
    let d2 = cross(b, c, p);
    let d3 = cross(c, a, p);
    if d1 == 0 || d2 == 0 || d3 == 0 {
        return Err(Error::OnBoundary);
    }
    Ok((d1 > 0) == (d2 > 0) && (d2 > 0) == (d3 > 0))
}

/// Strict triangle membership for callers that already know the input is in
/// general position.
#[inline]
pub(crate) fn strictly_in_triangle(p: Point, a: Point, b: Point, c: Point) -> bool {
    let d1 = cross(a, b, p);
    let d2 = cross(b, c, p);
    let d3 = cross(c, a, p);
    (d1 > 0 && d2 > 0 && d3 > 0) || (d1 < 0 && d2 < 0 && d3 < 0)
}

fn on_segment(a: Point, b: Point, p: Point) -> bool {
    cross(a, b, p) == 0
        && a.x.min(b.x) <= p.x
        && p.x <= a.x.max(b.x)
        && a.y.min(b.y) <= p.y
        && p.y <= a.y.max(b.y)
}

/// Closed segments `ab` and `cd` share at least one point.
pub fn segments_intersect(a: Point, b: Point, c: Point, d: Point) -> bool {
    let d1 = cross(a, b, c).signum();
    let d2 = cross(a, b, d).signum();
    let d3 = cross(c, d, a).signum();
    let d4 = cross(c, d, b).signum();
    if d1 * d2 < 0 && d3 * d4 < 0 {
        return true;
    }
    (d1 == 0 && on_segment(a, b, c))
        || (d2 == 0 && on_segment(a, b, d))
        || (d3 == 0 && on_segment(c, d, a))
        || (d4 == 0 && on_segment(c, d, b))
}

/// A validated point set in general position. The position of a point in
/// the list is its identity everywhere else in the crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    /// Validates coordinates, duplicates and collinear triples.
    pub fn new(points: Vec<Point>) -> Result<Self> {
        validate_point_set(points)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.points.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    #[inline]
    pub fn point(&self, i: usize) -> Point {
        self.points[i]
    }

    #[inline]
    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Parses the `x y` per line text format. `#` lines and blank lines are
    /// skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut points = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut fields = line.split_whitespace();
            let mut next = |what: &str| -> Result<i64> {
                let tok = fields.next().ok_or_else(|| Error::Parse {
                    line: lineno + 1,
                    message: format!("missing {what} coordinate"),
                })?;
                tok.parse::<i64>().map_err(|e| Error::Parse {
                    line: lineno + 1,
                    message: format!("bad {what} coordinate {tok:?}: {e}"),
                })
            };
            let x = next("x")?;
            let y = next("y")?;
            if fields.next().is_some() {
                return Err(Error::Parse {
                    line: lineno + 1,
                    message: "expected exactly two integers".into(),
                });
            }
            points.push(Point { x, y });
        }
        validate_point_set(points)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for p in &self.points {
            out.push_str(&format!("{} {}\n", p.x, p.y));
        }
        out
    }

    /// Index of the `<_xy`-minimum among `indices`.
    pub fn lex_min(&self, indices: impl IntoIterator<Item = usize>) -> Option<usize> {
        indices
            .into_iter()
            .min_by(|&a, &b| lex_cmp(self.points[a], self.points[b]))
    }
}

/// Checks coordinate range, distinctness and general position (all triples).
pub fn validate_point_set(points: Vec<Point>) -> Result<PointSet> {
    let n = points.len();
    for (index, p) in points.iter().enumerate() {
        if p.x.abs() > COORD_LIMIT || p.y.abs() > COORD_LIMIT {
            return Err(Error::CoordinateOutOfRange {
                index,
                limit: COORD_LIMIT,
            });
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if points[i] == points[j] {
                return Err(Error::DuplicatePoint(i, j));
            }
        }
    }
    if n < 3 {
        return Err(Error::TooFewPoints(n));
    }
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                if cross(points[i], points[j], points[k]) == 0 {
                    return Err(Error::CollinearTriple(i, j, k));
                }
            }
        }
    }
    Ok(PointSet { points })
}

/// A simple polygon over a [`PointSet`] in canonical form: counterclockwise,
/// starting at the lower-left vertex. Every non-vertex point is classified
/// as inside or outside; both lists are sorted by index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polygon {
    verts: Vec<usize>,
    inside: Vec<usize>,
    outside: Vec<usize>,
}

impl Polygon {
    /// Assembles a polygon whose invariants the caller has already
    /// established. Debug builds re-verify them.
    pub(crate) fn from_parts(
        ps: &PointSet,
        verts: Vec<usize>,
        mut inside: Vec<usize>,
        mut outside: Vec<usize>,
    ) -> Self {
        inside.sort_unstable();
        outside.sort_unstable();
        let poly = Polygon {
            verts,
            inside,
            outside,
        };
        #[cfg(debug_assertions)]
        poly.assert_valid(ps);
        #[cfg(not(debug_assertions))]
        let _ = ps;
        poly
    }

    #[cfg(debug_assertions)]
    fn assert_valid(&self, ps: &PointSet) {
        let verts = &self.verts;
        assert!(verts.len() >= 3, "polygon with fewer than 3 vertices");
        assert!(is_simple(verts, ps), "non-simple polygon {verts:?}");
        assert!(self.twice_area(ps) > 0, "clockwise polygon {verts:?}");
        assert_eq!(ps.lex_min(verts.iter().copied()), Some(verts[0]));
        let (inside, outside) = classify_points(ps, verts).expect("general position");
        assert_eq!(inside, self.inside, "inside mismatch for {verts:?}");
        assert_eq!(outside, self.outside, "outside mismatch for {verts:?}");
    }

    #[inline]
    pub fn verts(&self) -> &[usize] {
        &self.verts
    }

    #[inline]
    pub fn inside(&self) -> &[usize] {
        &self.inside
    }

    #[inline]
    pub fn outside(&self) -> &[usize] {
        &self.outside
    }

    /// Number of vertices.
    #[inline]
    pub fn len(&self) -> usize {
        self.verts.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    /// Vertex at sequence position `pos`.
    #[inline]
    pub fn vertex(&self, pos: usize) -> usize {
        self.verts[pos]
    }

    #[inline]
    pub fn pred_pos(&self, pos: usize) -> usize {
        if pos == 0 {
            self.verts.len() - 1
        } else {
            pos - 1
        }
    }

    #[inline]
    pub fn succ_pos(&self, pos: usize) -> usize {
        if pos + 1 == self.verts.len() {
            0
        } else {
            pos + 1
        }
    }

    /// Sequence position of point `v`, if it is a vertex.
    pub fn position(&self, v: usize) -> Option<usize> {
        self.verts.iter().position(|&u| u == v)
    }

    pub fn is_inside(&self, p: usize) -> bool {
        self.inside.binary_search(&p).is_ok()
    }

    pub fn is_outside(&self, p: usize) -> bool {
        self.outside.binary_search(&p).is_ok()
    }

    pub fn twice_area(&self, ps: &PointSet) -> i128 {
        twice_signed_area(&self.verts, ps)
    }

    /// Geometric convexity: no reflex vertex.
    pub fn is_convex(&self, ps: &PointSet) -> bool {
        (0..self.len()).all(|i| {
            let a = ps.point(self.verts[self.pred_pos(i)]);
            let b = ps.point(self.verts[i]);
            let c = ps.point(self.verts[self.succ_pos(i)]);
            left_of(a, b, c)
        })
    }

    /// Space-separated vertex indices.
    pub fn to_line(&self) -> String {
        let parts: Vec<String> = self.verts.iter().map(|v| v.to_string()).collect();
        parts.join(" ")
    }

    /// Parses one line of the polygon text format and canonicalizes it.
    pub fn parse_line(line: &str, ps: &PointSet) -> Result<Self> {
        let verts = line
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>().map_err(|e| Error::Parse {
                    line: 1,
                    message: format!("bad vertex index {t:?}: {e}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        canonical_form(&verts, ps)
    }
}

pub fn twice_signed_area(verts: &[usize], ps: &PointSet) -> i128 {
    let n = verts.len();
    let mut acc: i128 = 0;
    for i in 0..n {
        let a = ps.point(verts[i]);
        let b = ps.point(verts[(i + 1) % n]);
        acc += a.x as i128 * b.y as i128 - b.x as i128 * a.y as i128;
    }
    acc
}

/// Andrew's monotone chain over a subset of indices. Returns the hull
/// counterclockwise starting at the lower-left point.
pub(crate) fn hull_of(ps: &PointSet, indices: &[usize]) -> Vec<usize> {
    let mut idx: Vec<usize> = indices.to_vec();
    idx.sort_unstable_by(|&a, &b| lex_cmp(ps.point(a), ps.point(b)));
    if idx.len() < 3 {
        return idx;
    }
    let mut hull: Vec<usize> = Vec::with_capacity(idx.len() + 1);
    for &i in &idx {
        while hull.len() >= 2
            && !left_of(
                ps.point(hull[hull.len() - 2]),
                ps.point(hull[hull.len() - 1]),
                ps.point(i),
            )
        {
            hull.pop();
        }
        hull.push(i);
    }
    let lower_len = hull.len() + 1;
    for &i in idx.iter().rev().skip(1) {
        while hull.len() >= lower_len
            && !left_of(
                ps.point(hull[hull.len() - 2]),
                ps.point(hull[hull.len() - 1]),
                ps.point(i),
            )
        {
            hull.pop();
        }
        hull.push(i);
    }
    hull.pop();
    hull
}

/// `CH(S)` in canonical form; every non-hull point is inside.
pub fn convex_hull(ps: &PointSet) -> Polygon {
    let all: Vec<usize> = (0..ps.len()).collect();
    let verts = hull_of(ps, &all);
    let mut on_hull = vec![false; ps.len()];
    for &v in &verts {
        on_hull[v] = true;
    }
    let inside = (0..ps.len()).filter(|&i| !on_hull[i]).collect();
    Polygon::from_parts(ps, verts, inside, Vec::new())
}

/// Exact point-in-polygon by winding number. `p` must not be a vertex.
pub fn point_in_polygon(p: Point, verts: &[usize], ps: &PointSet) -> Result<bool> {
    let n = verts.len();
    let mut winding: i32 = 0;
    for i in 0..n {
        let a = ps.point(verts[i]);
        let b = ps.point(verts[(i + 1) % n]);
        if on_segment(a, b, p) {
            return Err(Error::OnBoundary);
        }
        if a.y <= p.y {
            if b.y > p.y && cross(a, b, p) > 0 {
                winding += 1;
            }
        } else if b.y <= p.y && cross(a, b, p) < 0 {
            winding -= 1;
        }
    }
    Ok(winding != 0)
}

/// Splits every non-vertex index into `(inside, outside)`, both sorted.
pub fn classify_points(ps: &PointSet, verts: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut is_vertex = vec![false; ps.len()];
    for &v in verts {
        is_vertex[v] = true;
    }
    let mut inside = Vec::new();
    let mut outside = Vec::new();
    for (i, &vertex) in is_vertex.iter().enumerate() {
        if vertex {
            continue;
        }
        if point_in_polygon(ps.point(i), verts, ps)? {
            inside.push(i);
        } else {
            outside.push(i);
        }
    }
    Ok((inside, outside))
}

/// All-pairs check that the closed chain through `verts` is simple.
pub fn is_simple(verts: &[usize], ps: &PointSet) -> bool {
    let n = verts.len();
    if n < 3 {
        return false;
    }
    let mut seen = vec![false; ps.len()];
    for &v in verts {
        if v >= ps.len() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    let seg = |i: usize| (ps.point(verts[i]), ps.point(verts[(i + 1) % n]));
    for i in 0..n {
        let (a, b) = seg(i);
        // Adjacent edges share exactly one endpoint; they only fail when the
        // three points are collinear and fold back.
        let (_, c) = seg((i + 1) % n);
        if cross(a, b, c) == 0 {
            return false;
        }
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            let (c, d) = seg(j);
            if segments_intersect(a, b, c, d) {
                return false;
            }
        }
    }
    true
}

/// Rotates to the lower-left vertex and fixes counterclockwise orientation,
/// then classifies the remaining points.
pub fn canonical_form(verts: &[usize], ps: &PointSet) -> Result<Polygon> {
    if verts.len() < 3 {
        return Err(Error::InvalidVertices(format!(
            "{} vertices, need at least 3",
            verts.len()
        )));
    }
    if let Some(&bad) = verts.iter().find(|&&v| v >= ps.len()) {
        return Err(Error::InvalidVertices(format!("index {bad} out of range")));
    }
    if !is_simple(verts, ps) {
        return Err(Error::NotSimple);
    }
    let canon = canonical_sequence(verts, ps);
    let (inside, outside) = classify_points(ps, &canon)?;
    Ok(Polygon::from_parts(ps, canon, inside, outside))
}

/// Canonical rotation and orientation of a simple cycle, without
/// classification.
pub(crate) fn canonical_sequence(verts: &[usize], ps: &PointSet) -> Vec<usize> {
    let n = verts.len();
    let start = (0..n)
        .min_by(|&a, &b| lex_cmp(ps.point(verts[a]), ps.point(verts[b])))
        .expect("non-empty");
    let mut out: Vec<usize> = (0..n).map(|i| verts[(start + i) % n]).collect();
    if twice_signed_area(&out, ps) < 0 {
        out[1..].reverse();
    }
    out
}
