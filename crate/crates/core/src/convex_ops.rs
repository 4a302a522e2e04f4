//! Operations on convex polygons: tangency vertices, the per-point region
//! counts (`regnum`), insertion, removal and the incremental table update
//! applied when a vertex is removed.

use crate::error::{Error, Result};
use crate::geom::{canonical_sequence, cross, hull_of, lex_cmp, strictly_in_triangle, PointSet, Polygon};
use crate::range_queries::TriangleCounter;

/// The two tangency vertices (point indices) of an outside point. The
/// boundary chain facing the point runs counterclockwise from `t1` to `t2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TangentPair {
    pub t1: usize,
    pub t2: usize,
}

/// Smallest `i` in `lo..hi` with `pred(i)`, for predicates of the shape
/// `false.. true..`; `hi` if none.
fn first_true(mut lo: usize, mut hi: usize, pred: impl Fn(usize) -> bool) -> usize {
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    lo
}

/// Tangency positions `(t1, t2)` by binary search over the vertex array.
fn tangent_positions(ps: &PointSet, poly: &Polygon, p: usize) -> (usize, usize) {
    let m = poly.len();
    let pt = ps.point(p);
    let at = |i: usize| ps.point(poly.vertex(i % m));
    // Edge i runs from vertex i to vertex i + 1 and is visible from p when p
    // is strictly on its outer (right) side.
    let visible = |i: usize| cross(at(i), at(i + 1), pt) < 0;
    let first_edge = visible(0);
    let last_edge = visible(m - 1);
    match (first_edge, last_edge) {
        (true, false) => {
            let f = first_true(0, m - 1, |i| !visible(i));
            (0, f)
        }
        (false, true) => {
            let s = first_true(1, m, visible);
            (s, 0)
        }
        (false, false) => {
            // p lies in the fan of v0; locate its wedge to find one visible
            // edge, then search both sides of it.
            let v0 = at(0);
            let j = first_true(2, m, |i| cross(v0, at(i), pt) < 0);
            let wedge = j - 1;
            let s = first_true(0, wedge + 1, visible);
            let f = first_true(wedge, m, |i| !visible(i));
            (s, f)
        }
        (true, true) => {
            // v0 is interior to the visible chain; the line p-v0 splits the
            // polygon into two chains with one tangency vertex each.
            let v0 = at(0);
            let jj = first_true(1, m, |i| cross(pt, v0, at(i)) > 0);
            let split = jj - 1;
            let f = first_true(0, split + 1, |i| !visible(i));
            let s = first_true(split, m, visible);
            (s, f)
        }
    }
}

/// Tangency vertices of outside point `p` on convex `poly`, O(log n).
pub fn tangents(ps: &PointSet, poly: &Polygon, p: usize) -> Result<TangentPair> {
    if !poly.is_outside(p) {
        return Err(Error::PointNotOutside(p));
    }
    let (s, f) = tangent_positions(ps, poly, p);
    let tp = TangentPair {
        t1: poly.vertex(s),
        t2: poly.vertex(f % poly.len()),
    };
    debug_assert_eq!(Ok(tp), tangents_scan(ps, poly, p));
    Ok(tp)
}

/// Linear supporting-line scan; the reference for [`tangents`].
pub fn tangents_scan(ps: &PointSet, poly: &Polygon, p: usize) -> Result<TangentPair> {
    if !poly.is_outside(p) {
        return Err(Error::PointNotOutside(p));
    }
    let pt = ps.point(p);
    let mut t1 = None;
    let mut t2 = None;
    for &v in poly.verts() {
        let pv = ps.point(v);
        let others = poly.verts().iter().filter(|&&u| u != v);
        if others.clone().all(|&u| cross(pt, pv, ps.point(u)) < 0) {
            t1 = Some(v);
        } else if others.clone().all(|&u| cross(pt, pv, ps.point(u)) > 0) {
            t2 = Some(v);
        }
    }
    match (t1, t2) {
        (Some(t1), Some(t2)) => Ok(TangentPair { t1, t2 }),
        _ => Err(Error::PointNotOutside(p)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RegnumEntry {
    pub point: usize,
    pub count: u32,
    pub tangents: TangentPair,
}

/// `regnum(P, p)` for every outside point of a convex polygon, with the
/// tangents it was computed from. Entries are sorted by point index.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RegnumTable {
    entries: Vec<RegnumEntry>,
}

impl RegnumTable {
    pub fn entries(&self) -> &[RegnumEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, p: usize) -> Option<&RegnumEntry> {
        self.entries
            .binary_search_by_key(&p, |e| e.point)
            .ok()
            .map(|i| &self.entries[i])
    }

    pub fn storage_words(&self) -> usize {
        self.entries.len() * 4
    }
}

/// Outside points `q != p` strictly inside the triangle `(p, t1, t2)`.
///
/// Outside points are never inside the polygon, so triangle membership is
/// the same as membership in the region between the tangents and the near
/// chain; this also covers the adjacent-tangency case where the two agree.
fn region_count(ps: &PointSet, outside: &[usize], p: usize, tp: TangentPair) -> u32 {
    let (a, b, c) = (ps.point(p), ps.point(tp.t1), ps.point(tp.t2));
    outside
        .iter()
        .filter(|&&q| q != p && strictly_in_triangle(ps.point(q), a, b, c))
        .count() as u32
}

/// Builds the table from scratch: O(|outside|^2 + |outside| log n).
pub fn regnum_scratch(ps: &PointSet, poly: &Polygon) -> Result<RegnumTable> {
    let mut entries = Vec::with_capacity(poly.outside().len());
    for &p in poly.outside() {
        let tp = tangents(ps, poly, p)?;
        entries.push(RegnumEntry {
            point: p,
            count: region_count(ps, poly.outside(), p, tp),
            tangents: tp,
        });
    }
    Ok(RegnumTable { entries })
}

/// Insertable points (`regnum == 0`), ordered by `<_xy`. The first element
/// is the lower-left insertable point.
pub fn insertable_set(ps: &PointSet, rt: &RegnumTable) -> Vec<usize> {
    let mut out: Vec<usize> = rt
        .entries
        .iter()
        .filter(|e| e.count == 0)
        .map(|e| e.point)
        .collect();
    out.sort_unstable_by(|&a, &b| lex_cmp(ps.point(a), ps.point(b)));
    out
}

/// Lower-left insertable point, checking that one exists whenever the
/// polygon still has outside points.
pub fn lowest_insertable(ps: &PointSet, poly: &Polygon, rt: &RegnumTable) -> Result<Option<usize>> {
    let best = rt
        .entries
        .iter()
        .filter(|e| e.count == 0)
        .map(|e| e.point)
        .min_by(|&a, &b| lex_cmp(ps.point(a), ps.point(b)));
    if best.is_none() && !poly.outside().is_empty() {
        return Err(Error::EmptyInsertableSet);
    }
    Ok(best)
}

/// Attaches insertable point `p` through its tangency vertices. The near
/// chain strictly between them becomes interior.
pub fn insert(ps: &PointSet, poly: &Polygon, p: usize) -> Result<Polygon> {
    let tp = tangents(ps, poly, p)?;
    if region_count(ps, poly.outside(), p, tp) != 0 {
        return Err(Error::NotInsertable(p));
    }
    Ok(insert_with(ps, poly, p, tp))
}

pub(crate) fn insert_with(ps: &PointSet, poly: &Polygon, p: usize, tp: TangentPair) -> Polygon {
    let m = poly.len();
    let s = poly.position(tp.t1).expect("tangency vertex");
    let f = poly.position(tp.t2).expect("tangency vertex");
    let mut verts = Vec::with_capacity(m + 1);
    let mut i = f;
    loop {
        verts.push(poly.vertex(i));
        if i == s {
            break;
        }
        i = poly.succ_pos(i);
    }
    verts.push(p);
    let mut inside = poly.inside().to_vec();
    let mut i = poly.succ_pos(s);
    while i != f {
        inside.push(poly.vertex(i));
        i = poly.succ_pos(i);
    }
    let outside = poly.outside().iter().copied().filter(|&q| q != p).collect();
    let verts = canonical_sequence(&verts, ps);
    Polygon::from_parts(ps, verts, inside, outside)
}

/// Replaces `poly` by the convex hull of its vertices and interior points
/// other than the vertex at position `pos`. Returns the new polygon and the
/// displaced point.
pub fn remove(ps: &PointSet, poly: &Polygon, pos: usize) -> Result<(Polygon, usize)> {
    let v = poly.vertex(pos);
    let mut pool: Vec<usize> = poly.verts().iter().copied().filter(|&u| u != v).collect();
    pool.extend_from_slice(poly.inside());
    if pool.len() < 3 {
        return Err(Error::InvalidVertices(format!(
            "removing {v} leaves only {} points",
            pool.len()
        )));
    }
    let verts = hull_of(ps, &pool);
    let mut on_hull = vec![false; ps.len()];
    for &u in &verts {
        on_hull[u] = true;
    }
    let inside = pool.into_iter().filter(|&u| !on_hull[u]).collect();
    let mut outside = poly.outside().to_vec();
    outside.push(v);
    Ok((Polygon::from_parts(ps, verts, inside, outside), v))
}

/// Whether the removed vertex's own entry matched the closed-form zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UpdateReport {
    pub removed_entry_zero: bool,
}

/// Derives the table for `child = remove(P, v)` from the table `rt` of
/// `P`. Each surviving outside point falls in one of four cases:
///
/// * `v` was `t1`: subtract the points in `(p, t1, t1')`, where `t1'` is
///   the new tangency vertex;
/// * `v` was `t2`: symmetric, with `t2'`;
/// * `v` was strictly inside `(p, t1, t2)`: add one (v itself is now
///   outside and inside the region);
/// * otherwise unchanged.
///
/// The removed vertex's own entry is computed directly by a scan.
pub fn regnum_update(
    ps: &PointSet,
    tc: &TriangleCounter,
    rt: &RegnumTable,
    v: usize,
    child: &Polygon,
) -> Result<(RegnumTable, UpdateReport)> {
    let pv = ps.point(v);
    let mut entries = Vec::with_capacity(rt.entries.len() + 1);
    for e in &rt.entries {
        let p = e.point;
        let TangentPair { t1, t2 } = e.tangents;
        let updated = if v == t1 || v == t2 {
            let tp = tangents(ps, child, p)?;
            let (old, new) = if v == t1 {
                debug_assert_eq!(tp.t2, t2);
                (t1, tp.t1)
            } else {
                debug_assert_eq!(tp.t1, t1);
                (t2, tp.t2)
            };
            let lost = tc.triangle_count(ps, p, old, new);
            RegnumEntry {
                point: p,
                count: e.count - lost,
                tangents: tp,
            }
        } else if strictly_in_triangle(pv, ps.point(p), ps.point(t1), ps.point(t2)) {
            RegnumEntry {
                count: e.count + 1,
                ..*e
            }
        } else {
            *e
        };
        entries.push(updated);
    }
    let tp = tangents(ps, child, v)?;
    let own = RegnumEntry {
        point: v,
        count: region_count(ps, child.outside(), v, tp),
        tangents: tp,
    };
    let report = UpdateReport {
        removed_entry_zero: own.count == 0,
    };
    let at = entries.partition_point(|e| e.point < v);
    entries.insert(at, own);
    let table = RegnumTable { entries };
    #[cfg(debug_assertions)]
    {
        let fresh = regnum_scratch(ps, child)?;
        if let Some((a, _)) = table
            .entries
            .iter()
            .zip(&fresh.entries)
            .find(|(a, b)| a != b)
        {
            return Err(Error::InconsistentTable(a.point));
        }
        if table.len() != fresh.len() {
            return Err(Error::InconsistentTable(v));
        }
    }
    Ok((table, report))
}


#[cfg(test)]
mod props {
    use super::*;
    use crate::fixtures::arb_point_set;
    use crate::geom::{canonical_form, convex_hull};
    use crate::oracle::oracle_enumerate;
    use proptest::prelude::*;

    fn convex_polygons(ps: &PointSet) -> Vec<Polygon> {
        oracle_enumerate(ps, ps.len() - 3)
            .unwrap()
            .polygons
            .iter()
            .map(|v| canonical_form(v, ps).unwrap())
            .filter(|p| p.is_convex(ps))
            .collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn tangent_search_matches_scan(ps in arb_point_set(4..=9)) {
            for poly in convex_polygons(&ps) {
                for &p in poly.outside() {
                    let (s, f) = tangent_positions(&ps, &poly, p);
                    let fast = TangentPair { t1: poly.vertex(s), t2: poly.vertex(f % poly.len()) };
                    prop_assert_eq!(Ok(fast), tangents_scan(&ps, &poly, p));
                }
            }
        }

        #[test]
        fn remove_then_insert_round_trips(ps in arb_point_set(4..=8)) {
            let tc = TriangleCounter::new(&ps);
            let hull = convex_hull(&ps);
            for poly in convex_polygons(&ps) {
                let rt = regnum_scratch(&ps, &poly).unwrap();
                if poly != hull {
                    prop_assert!(!insertable_set(&ps, &rt).is_empty());
                }
                for pos in 0..poly.len() {
                    let Ok((child, v)) = remove(&ps, &poly, pos) else { continue };
                    prop_assert!(child.twice_area(&ps) < poly.twice_area(&ps));
                    let (table, _) = regnum_update(&ps, &tc, &rt, v, &child).unwrap();
                    prop_assert_eq!(&table, &regnum_scratch(&ps, &child).unwrap());
                    if table.get(v).unwrap().count == 0 {
                        let back = insert(&ps, &child, v).unwrap();
                        prop_assert!(back.twice_area(&ps) > child.twice_area(&ps));
                        prop_assert_eq!(&back, &poly);
                    }
                }
            }
        }
    }
}
