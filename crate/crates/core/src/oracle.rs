//! Brute-force reference implementations, independent of the tree
//! machinery. Only the orientation determinant is shared.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::geom::{cross, Point, PointSet, Polygon};

/// Largest input the exhaustive enumeration accepts.
pub const ORACLE_MAX_POINTS: usize = 10;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OracleResult {
    /// Canonical vertex sequences.
    pub polygons: BTreeSet<Vec<usize>>,
    /// Number of polygons by outside-point count.
    pub by_outside_count: BTreeMap<usize, usize>,
}

fn lex_lt(a: Point, b: Point) -> bool {
    (a.x, a.y) < (b.x, b.y)
}

/// Proper crossing of two segments with four distinct endpoints; in general
/// position no other contact is possible.
fn crosses(a: Point, b: Point, c: Point, d: Point) -> bool {
    let s1 = cross(a, b, c).signum() * cross(a, b, d).signum();
    let s2 = cross(c, d, a).signum() * cross(c, d, b).signum();
    s1 < 0 && s2 < 0
}

/// Even-odd ray casting towards +x, with coordinates scaled by `scale` on
/// the polygon side so the query may be a scaled rational point.
fn inside_scaled(q: (i128, i128), poly: &[Point], scale: i128) -> bool {
    let mut inside = false;
    let m = poly.len();
    for i in 0..m {
        let (a, b) = (poly[i], poly[(i + 1) % m]);
        let (ax, ay) = (a.x as i128 * scale, a.y as i128 * scale);
        let (bx, by) = (b.x as i128 * scale, b.y as i128 * scale);
        if (ay > q.1) != (by > q.1) {
            // x of the crossing compared with q.x, without division.
            let lhs = (q.0 - ax) * (by - ay);
            let rhs = (bx - ax) * (q.1 - ay);
            if (by > ay && lhs < rhs) || (by < ay && lhs > rhs) {
                inside = !inside;
            }
        }
    }
    inside
}

fn inside(q: Point, poly: &[Point]) -> bool {
    inside_scaled((q.x as i128, q.y as i128), poly, 1)
}

fn coords(ps: &PointSet, verts: &[usize]) -> Vec<Point> {
    verts.iter().map(|&v| ps.point(v)).collect()
}

fn classify(ps: &PointSet, verts: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let poly = coords(ps, verts);
    let mut ins = Vec::new();
    let mut outs = Vec::new();
    for q in 0..ps.len() {
        if verts.contains(&q) {
            continue;
        }
        if inside(ps.point(q), &poly) {
            ins.push(q);
        } else {
            outs.push(q);
        }
    }
    (ins, outs)
}

fn area2(ps: &PointSet, verts: &[usize]) -> i128 {
    let m = verts.len();
    (0..m)
        .map(|i| {
            let (a, b) = (ps.point(verts[i]), ps.point(verts[(i + 1) % m]));
            a.x as i128 * b.y as i128 - b.x as i128 * a.y as i128
        })
        .sum()
}

/// Every simple polygon on `ps` with at most `k` outside points, found by
/// extending paths from their lower-left vertex. Rejects `n > 10`.
pub fn oracle_enumerate(ps: &PointSet, k: usize) -> Result<OracleResult> {
    let n = ps.len();
    if n > ORACLE_MAX_POINTS {
        return Err(Error::TooLarge {
            n,
            limit: ORACLE_MAX_POINTS,
        });
    }
    let mut out = OracleResult::default();
    for s in 0..n {
        let mut path = vec![s];
        let mut used = vec![false; n];
        used[s] = true;
        extend(ps, k, &mut path, &mut used, &mut out);
    }
    Ok(out)
}

fn extend(ps: &PointSet, k: usize, path: &mut Vec<usize>, used: &mut [bool], out: &mut OracleResult) {
    let len = path.len();
    let s = path[0];
    let last = path[len - 1];
    let seg = |j: usize, path: &[usize]| (ps.point(path[j]), ps.point(path[j + 1]));
    if len >= 3 {
        let (a, b) = (ps.point(last), ps.point(s));
        let closes = (1..len - 2).all(|j| {
            let (c, d) = seg(j, path);
            !crosses(a, b, c, d)
        });
        if closes && area2(ps, path) > 0 {
            let (_, outs) = classify(ps, path);
            if outs.len() <= k {
                out.polygons.insert(path.clone());
                *out.by_outside_count.entry(outs.len()).or_default() += 1;
            }
        }
    }
    for q in 0..ps.len() {
        if used[q] || !lex_lt(ps.point(s), ps.point(q)) {
            continue;
        }
        let (a, b) = (ps.point(last), ps.point(q));
        let ok = (0..len.saturating_sub(2)).all(|j| {
            let (c, d) = seg(j, path);
            !crosses(a, b, c, d)
        });
        if ok {
            used[q] = true;
            path.push(q);
            extend(ps, k, path, used, out);
            path.pop();
            used[q] = false;
        }
    }
}

/// Convex hull by gift wrapping, counterclockwise from the lower-left point.
fn wrap_hull(ps: &PointSet, pool: &[usize]) -> Vec<usize> {
    let start = *pool
        .iter()
        .min_by_key(|&&i| (ps.point(i).x, ps.point(i).y))
        .expect("non-empty pool");
    let mut hull = vec![start];
    let mut cur = start;
    loop {
        let mut next = if pool[0] == cur { pool[1] } else { pool[0] };
        for &q in pool {
            if q != cur && cross(ps.point(cur), ps.point(next), ps.point(q)) < 0 {
                next = q;
            }
        }
        if next == start {
            return hull;
        }
        hull.push(next);
        cur = next;
    }
}

fn build(ps: &PointSet, verts: Vec<usize>) -> Polygon {
    let (ins, outs) = classify(ps, &verts);
    Polygon::from_parts(ps, verts, ins, outs)
}

fn rotate_to_lowest(ps: &PointSet, mut verts: Vec<usize>) -> Vec<usize> {
    let i = (0..verts.len())
        .min_by_key(|&i| (ps.point(verts[i]).x, ps.point(verts[i]).y))
        .expect("vertices");
    verts.rotate_left(i);
    verts
}

/// Whether the ear triangle at position `i` lies entirely outside the
/// polygon: no vertex strictly inside it, no edge crossing its sides, and
/// its centroid outside.
pub fn oracle_embeddable(ps: &PointSet, verts: &[usize], i: usize) -> bool {
    let m = verts.len();
    if m <= 3 {
        return false;
    }
    let (a, v, b) = (verts[(i + m - 1) % m], verts[i], verts[(i + 1) % m]);
    let (pa, pv, pb) = (ps.point(a), ps.point(v), ps.point(b));
    let strictly_in = |q: Point| {
        let (d1, d2, d3) = (cross(pa, pv, q), cross(pv, pb, q), cross(pb, pa, q));
        (d1 > 0 && d2 > 0 && d3 > 0) || (d1 < 0 && d2 < 0 && d3 < 0)
    };
    if verts.iter().any(|&u| u != a && u != v && u != b && strictly_in(ps.point(u))) {
        return false;
    }
    for j in 0..m {
        let (c, d) = (verts[j], verts[(j + 1) % m]);
        for (x, y) in [(a, v), (v, b), (b, a)] {
            if [x, y].contains(&c) || [x, y].contains(&d) {
                continue;
            }
            if crosses(ps.point(x), ps.point(y), ps.point(c), ps.point(d)) {
                return false;
            }
        }
    }
    let centroid = (
        pa.x as i128 + pv.x as i128 + pb.x as i128,
        pa.y as i128 + pv.y as i128 + pb.y as i128,
    );
    !inside_scaled(centroid, &coords(ps, verts), 3)
}

/// Parent by direct definition: embed the embeddable vertex latest in the
/// sequence, or for a convex polygon grow the hull by the lower-left
/// outside point whose growth swallows no other outside point.
pub fn oracle_parent(ps: &PointSet, poly: &Polygon) -> Result<Polygon> {
    let verts = poly.verts();
    if let Some(i) = (0..verts.len()).rev().find(|&i| oracle_embeddable(ps, verts, i)) {
        let mut rest = verts.to_vec();
        rest.remove(i);
        return Ok(build(ps, rotate_to_lowest(ps, rest)));
    }
    let (_, outs) = classify(ps, verts);
    let mut best: Option<(usize, Vec<usize>)> = None;
    for &p in &outs {
        let mut pool = verts.to_vec();
        pool.push(p);
        let grown = wrap_hull(ps, &pool);
        let shape = coords(ps, &grown);
        let swallows = outs.iter().any(|&q| q != p && inside(ps.point(q), &shape));
        if swallows {
            continue;
        }
        let better = match &best {
            None => true,
            Some((b, _)) => lex_lt(ps.point(p), ps.point(*b)),
        };
        if better {
            best = Some((p, grown));
        }
    }
    match best {
        Some((_, grown)) => Ok(build(ps, grown)),
        None if outs.is_empty() => Err(Error::IsRoot),
        None => Err(Error::EmptyInsertableSet),
    }
}

/// Hull of the whole set, for tests comparing against the tree root.
pub fn oracle_hull(ps: &PointSet) -> Vec<usize> {
    let all: Vec<usize> = (0..ps.len()).collect();
    wrap_hull(ps, &all)
}
