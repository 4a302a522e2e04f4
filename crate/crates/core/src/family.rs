//! Parent and child relations of the family tree.
//!
//! A non-convex polygon's parent embeds its largest embeddable vertex; a
//! convex polygon other than the hull gets its lower-left insertable point
//! inserted. Children are found by inverting those moves: digging an inside
//! point into an edge (Type-1), and removing a hull vertex (Type-2), each
//! followed by an activity test deciding whether the candidate's parent is
//! the current polygon.

use crate::convex_ops::{self, RegnumTable, UpdateReport};
use crate::error::{Error, Result};
use crate::geom::{cross, strictly_in_triangle, PointSet, Polygon};
use crate::range_queries::{PolygonIntersector, TriangleCounter};

/// A vertex position on `P` paired with an inside point to dig into the edge
/// leaving that vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DigPair {
    /// Position of the vertex in the canonical sequence.
    pub at: usize,
    pub point: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParentKind {
    /// The child was non-convex; this vertex (point index) was embedded.
    Embedment(usize),
    /// The child was convex; this point was inserted.
    Insertion(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParentResult {
    pub polygon: Polygon,
    pub kind: ParentKind,
}

fn any_vertex_inside(ps: &PointSet, poly: &Polygon, a: usize, b: usize, c: usize) -> bool {
    let (pa, pb, pc) = (ps.point(a), ps.point(b), ps.point(c));
    poly.verts()
        .iter()
        .any(|&u| u != a && u != b && u != c && strictly_in_triangle(ps.point(u), pa, pb, pc))
}

/// Whether the ear triangle at position `pos` lies outside the polygon:
/// the vertex is reflex, the chord joining its neighbours is not blocked,
/// and no vertex sits inside the triangle.
pub fn is_embeddable(ps: &PointSet, poly: &Polygon, pos: usize, ix: &PolygonIntersector) -> bool {
    if poly.len() <= 3 {
        return false;
    }
    let a = poly.vertex(poly.pred_pos(pos));
    let v = poly.vertex(pos);
    let b = poly.vertex(poly.succ_pos(pos));
    cross(ps.point(a), ps.point(v), ps.point(b)) < 0
        && !ix.segment_blocked(ps, a, b)
        && !any_vertex_inside(ps, poly, a, v, b)
}

/// Position of the embeddable vertex latest in the sequence, `None` iff the
/// polygon is convex.
pub fn largest_embeddable(ps: &PointSet, poly: &Polygon) -> Option<usize> {
    let ix = PolygonIntersector::new(ps, poly);
    (0..poly.len()).rev().find(|&pos| is_embeddable(ps, poly, pos, &ix))
}

/// Replaces the two edges at the embeddable vertex at `pos` by the chord
/// between its neighbours. The vertex and any outside points in the ear
/// become interior.
pub fn embed(ps: &PointSet, poly: &Polygon, pos: usize) -> Result<Polygon> {
    let ix = PolygonIntersector::new(ps, poly);
    if !is_embeddable(ps, poly, pos, &ix) {
        return Err(Error::NotEmbeddable(poly.vertex(pos)));
    }
    Ok(embed_unchecked(ps, poly, pos))
}

fn embed_unchecked(ps: &PointSet, poly: &Polygon, pos: usize) -> Polygon {
    let a = ps.point(poly.vertex(poly.pred_pos(pos)));
    let v = poly.vertex(pos);
    let b = ps.point(poly.vertex(poly.succ_pos(pos)));
    let pv = ps.point(v);
    let mut verts = poly.verts().to_vec();
    verts.remove(pos);
    let mut inside = poly.inside().to_vec();
    inside.push(v);
    let mut outside = Vec::with_capacity(poly.outside().len());
    for &q in poly.outside() {
        if strictly_in_triangle(ps.point(q), a, pv, b) {
            inside.push(q);
        } else {
            outside.push(q);
        }
    }
    // The lower-left vertex is never reflex, so the sequence stays canonical.
    Polygon::from_parts(ps, verts, inside, outside)
}

/// Parent in the family tree; `IsRoot` for the convex hull.
pub fn parent(ps: &PointSet, poly: &Polygon) -> Result<ParentResult> {
    if let Some(pos) = largest_embeddable(ps, poly) {
        return Ok(ParentResult {
            polygon: embed_unchecked(ps, poly, pos),
            kind: ParentKind::Embedment(poly.vertex(pos)),
        });
    }
    let rt = convex_ops::regnum_scratch(ps, poly)?;
    match convex_ops::lowest_insertable(ps, poly, &rt)? {
        None => Err(Error::IsRoot),
        Some(p) => {
            let tp = rt.get(p).expect("entry").tangents;
            Ok(ParentResult {
                polygon: convex_ops::insert_with(ps, poly, p, tp),
                kind: ParentKind::Insertion(p),
            })
        }
    }
}

/// The geometric half of digability: the triangle `(v, p, succ(v))` lies
/// inside the polygon.
fn dig_triangle_inside(ps: &PointSet, poly: &Polygon, dp: DigPair, ix: &PolygonIntersector) -> bool {
    if dp.at >= poly.len() || !poly.is_inside(dp.point) {
        return false;
    }
    let a = poly.vertex(dp.at);
    let b = poly.vertex(poly.succ_pos(dp.at));
    let p = dp.point;
    cross(ps.point(a), ps.point(b), ps.point(p)) > 0
        && !ix.segment_blocked(ps, a, p)
        && !ix.segment_blocked(ps, p, b)
        && !any_vertex_inside(ps, poly, a, p, b)
}

/// Digable: the dig triangle lies inside the polygon and holds at most
/// `k - |outside(P)|` points.
pub fn is_digable(
    ps: &PointSet,
    poly: &Polygon,
    dp: DigPair,
    k: usize,
    tc: &TriangleCounter,
    ix: &PolygonIntersector,
) -> bool {
    let Some(budget) = k.checked_sub(poly.outside().len()) else {
        return false;
    };
    if !dig_triangle_inside(ps, poly, dp, ix) {
        return false;
    }
    let a = poly.vertex(dp.at);
    let b = poly.vertex(poly.succ_pos(dp.at));
    tc.triangle_count(ps, a, dp.point, b) as usize <= budget
}

/// Inserts `dp.point` between the vertex at `dp.at` and its successor.
/// Only the geometric condition is checked; the `k` budget is the caller's.
pub fn dig(ps: &PointSet, poly: &Polygon, dp: DigPair) -> Result<Polygon> {
    let ix = PolygonIntersector::new(ps, poly);
    if !dig_triangle_inside(ps, poly, dp, &ix) {
        return Err(Error::NotDigable {
            vertex: poly.verts().get(dp.at).copied().unwrap_or(usize::MAX),
            point: dp.point,
        });
    }
    Ok(dig_unchecked(ps, poly, dp))
}

pub(crate) fn dig_unchecked(ps: &PointSet, poly: &Polygon, dp: DigPair) -> Polygon {
    let a = ps.point(poly.vertex(dp.at));
    let b = ps.point(poly.vertex(poly.succ_pos(dp.at)));
    let pp = ps.point(dp.point);
    let mut verts = Vec::with_capacity(poly.len() + 1);
    verts.extend_from_slice(&poly.verts()[..=dp.at]);
    verts.push(dp.point);
    verts.extend_from_slice(&poly.verts()[dp.at + 1..]);
    let mut inside = Vec::with_capacity(poly.inside().len());
    let mut outside = poly.outside().to_vec();
    for &q in poly.inside() {
        if q == dp.point {
            continue;
        }
        if strictly_in_triangle(ps.point(q), a, pp, b) {
            outside.push(q);
        } else {
            inside.push(q);
        }
    }
    Polygon::from_parts(ps, verts, inside, outside)
}

/// Whether the successor `w` of the dug vertex is embeddable in
/// `dig(P, dp)`, answered against `P`'s intersector. In the dug polygon `w`
/// has neighbours `p` and `succ(w)`, and the edge `(v, w)` no longer exists.
fn successor_embeddable_after_dig(
    ps: &PointSet,
    poly: &Polygon,
    dp: DigPair,
    ix: &PolygonIntersector,
) -> bool {
    let wpos = poly.succ_pos(dp.at);
    let w = poly.vertex(wpos);
    let c = poly.vertex(poly.succ_pos(wpos));
    let p = dp.point;
    if cross(ps.point(p), ps.point(w), ps.point(c)) >= 0 {
        return false;
    }
    if ix.segment_blocked_except(ps, p, c, Some(dp.at)) {
        return false;
    }
    // Vertices of the dug polygon are those of P plus p, which is a corner.
    !any_vertex_inside(ps, poly, p, w, c)
}

/// Decides whether a digable pair is active, i.e. whether `dp.point` is the
/// largest embeddable vertex of `dig(P, dp)`. `largest` is the position of
/// `P`'s largest embeddable vertex.
///
/// Only the dug point, the dug vertex and its successor change
/// embeddability, and the dug point is always embeddable. So the pair is
/// active iff no embeddable vertex of `P` survives after the dug point and
/// the successor does not become (or stay) embeddable:
///
/// * vertex before `pred(largest)`: `largest` survives, inactive;
/// * vertex at `pred(largest)`: active iff `largest` is no longer
///   embeddable in the dug polygon;
/// * vertex after `pred(largest)`: active unless the successor turns
///   embeddable. The successor can only turn if it was a blocked reflex
///   vertex of `P`.
pub fn is_active_dig(
    ps: &PointSet,
    poly: &Polygon,
    dp: DigPair,
    largest: Option<usize>,
    ix: &PolygonIntersector,
) -> bool {
    if let Some(j) = largest {
        if dp.at + 1 < j {
            return false;
        }
    }
    if dp.at + 1 == poly.len() {
        // The dug point lands last in the sequence.
        return true;
    }
    !successor_embeddable_after_dig(ps, poly, dp, ix)
}

/// Type-2 activity: removes the vertex at `pos`, updates the region counts
/// and keeps the child iff the removed point is the lower-left insertable
/// point of the result. Requires a convex `poly` with `|outside| < k`.
pub fn is_active_remove(
    ps: &PointSet,
    poly: &Polygon,
    pos: usize,
    k: usize,
    rt: &RegnumTable,
    tc: &TriangleCounter,
) -> Result<Option<(Polygon, RegnumTable, UpdateReport)>> {
    if poly.outside().len() >= k {
        return Ok(None);
    }
    let Ok((child, v)) = convex_ops::remove(ps, poly, pos) else {
        return Ok(None);
    };
    let (table, report) = convex_ops::regnum_update(ps, tc, rt, v, &child)?;
    let active = convex_ops::lowest_insertable(ps, &child, &table)? == Some(v);
    Ok(active.then_some((child, table, report)))
}

/// Like [`is_active_remove`] but also returns the update report for an
/// inactive vertex, for instrumentation.
pub(crate) fn check_remove(
    ps: &PointSet,
    poly: &Polygon,
    pos: usize,
    rt: &RegnumTable,
    tc: &TriangleCounter,
) -> Result<Option<(Polygon, RegnumTable, UpdateReport, bool)>> {
    let Ok((child, v)) = convex_ops::remove(ps, poly, pos) else {
        return Ok(None);
    };
    let (table, report) = convex_ops::regnum_update(ps, tc, rt, v, &child)?;
    let active = convex_ops::lowest_insertable(ps, &child, &table)? == Some(v);
    Ok(Some((child, table, report, active)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{arb_point_set, points, s5};
    use crate::geom::{canonical_form, convex_hull};
    use crate::oracle::{oracle_embeddable, oracle_enumerate, oracle_parent};
    use proptest::prelude::*;

    #[test]
    fn embeddability_on_notch() {
        let ps = s5();
        let notch = canonical_form(&[0, 4, 1, 2, 3], &ps).unwrap();
        let ix = PolygonIntersector::new(&ps, &notch);
        assert!(is_embeddable(&ps, &notch, 1, &ix));
        assert!(!is_embeddable(&ps, &notch, 2, &ix));
        let hull = convex_hull(&ps);
        let ix = PolygonIntersector::new(&ps, &hull);
        assert!((0..hull.len()).all(|i| !is_embeddable(&ps, &hull, i, &ix)));
    }

    #[test]
    fn embed_examples() {
        let ps = s5();
        let notch = canonical_form(&[0, 4, 1, 2, 3], &ps).unwrap();
        let up = embed(&ps, &notch, 1).unwrap();
        assert_eq!(up, convex_hull(&ps));
        assert!(up.is_inside(4));

        let quad = canonical_form(&[0, 4, 1, 3], &ps).unwrap();
        let up = embed(&ps, &quad, 1).unwrap();
        assert_eq!(up.verts(), &[0, 1, 3]);
        assert_eq!(up.inside(), &[4]);
        assert_eq!(up.outside(), &[2]);
        assert!(up.twice_area(&ps) > quad.twice_area(&ps));
        assert_eq!(embed(&ps, &quad, 2), Err(Error::NotEmbeddable(1)));
    }

    #[test]
    fn largest_embeddable_examples() {
        let ps = s5();
        let notch = canonical_form(&[0, 4, 1, 2, 3], &ps).unwrap();
        assert_eq!(largest_embeddable(&ps, &notch), Some(1));
        assert_eq!(largest_embeddable(&ps, &convex_hull(&ps)), None);

        // Two notches, dug into the bottom and top edges of a square.
        let ps = points(&[(0, 0), (10, 0), (10, 10), (0, 10), (5, 2), (4, 8)]);
        let poly = canonical_form(&[0, 4, 1, 2, 5, 3], &ps).unwrap();
        let ix = PolygonIntersector::new(&ps, &poly);
        let embeddable: Vec<usize> = (0..poly.len()).filter(|&i| is_embeddable(&ps, &poly, i, &ix)).collect();
        assert_eq!(embeddable, vec![1, 4]);
        assert_eq!(largest_embeddable(&ps, &poly), Some(4));
    }

    #[test]
    fn parent_examples() {
        let ps = s5();
        let hull = convex_hull(&ps);
        let notch = canonical_form(&[0, 4, 1, 2, 3], &ps).unwrap();
        let pr = parent(&ps, &notch).unwrap();
        assert_eq!(pr.kind, ParentKind::Embedment(4));
        assert_eq!(pr.polygon, hull);

        let tri = canonical_form(&[0, 1, 3], &ps).unwrap();
        let pr = parent(&ps, &tri).unwrap();
        assert_eq!(pr.kind, ParentKind::Insertion(2));
        assert_eq!(pr.polygon, hull);

        assert_eq!(parent(&ps, &hull), Err(Error::IsRoot));
    }

    #[test]
    fn digability() {
        let ps = s5();
        let tc = TriangleCounter::new(&ps);
        let hull = convex_hull(&ps);
        let ix = PolygonIntersector::new(&ps, &hull);
        let dp = DigPair { at: 0, point: 4 };
        assert!(is_digable(&ps, &hull, dp, 0, &tc, &ix));

        let tri = canonical_form(&[0, 1, 3], &ps).unwrap();
        let ix = PolygonIntersector::new(&ps, &tri);
        assert!(is_digable(&ps, &tri, dp, 1, &tc, &ix));
        assert!(!is_digable(&ps, &tri, dp, 0, &tc, &ix));

        // An extra point inside the dig triangle exceeds the budget.
        let ps6 = points(&[(0, 0), (4, 0), (5, 3), (2, 5), (1, 1), (2, 3)]);
        let tc6 = TriangleCounter::new(&ps6);
        let tri6 = canonical_form(&[0, 1, 3], &ps6).unwrap();
        assert_eq!(tri6.outside(), &[2]);
        let ix6 = PolygonIntersector::new(&ps6, &tri6);
        let dp6 = DigPair { at: 0, point: 4 };
        assert_eq!(tc6.triangle_count(&ps6, 0, 4, 1), 0);
        let dp_far = DigPair { at: 0, point: 5 };
        assert_eq!(tc6.triangle_count(&ps6, 0, 5, 1), 1);
        assert!(is_digable(&ps6, &tri6, dp6, 1, &tc6, &ix6));
        assert!(!is_digable(&ps6, &tri6, dp_far, 1, &tc6, &ix6));
        assert!(is_digable(&ps6, &tri6, dp_far, 2, &tc6, &ix6));
    }

    #[test]
    fn dig_examples() {
        let ps = s5();
        let hull = convex_hull(&ps);
        let dp = DigPair { at: 0, point: 4 };
        let dug = dig(&ps, &hull, dp).unwrap();
        assert_eq!(dug.verts(), &[0, 4, 1, 2, 3]);
        assert!(dug.twice_area(&ps) < hull.twice_area(&ps));
        assert_eq!(parent(&ps, &dug).unwrap().polygon, hull);

        let tri = canonical_form(&[0, 1, 3], &ps).unwrap();
        assert_eq!(dig(&ps, &tri, dp).unwrap().verts(), &[0, 4, 1, 3]);
        assert!(matches!(dig(&ps, &hull, DigPair { at: 0, point: 2 }), Err(Error::NotDigable { .. })));
    }

    #[test]
    fn active_dig_on_convex_parent() {
        let ps = s5();
        let hull = convex_hull(&ps);
        let ix = PolygonIntersector::new(&ps, &hull);
        for at in 0..hull.len() {
            let dp = DigPair { at, point: 4 };
            assert!(is_active_dig(&ps, &hull, dp, None, &ix));
        }
    }

    #[test]
    fn successor_turning_embeddable_makes_dig_inactive() {
        // Digging 3 after the largest embeddable vertex unblocks the ear at
        // 5, which then outranks the dug point.
        let ps = points(&[(5, -12), (12, 9), (16, 18), (7, -1), (-10, -3), (1, -3), (-2, -2)]);
        let tc = TriangleCounter::new(&ps);
        let poly = canonical_form(&[4, 0, 2, 6, 1, 5], &ps).unwrap();
        let ix = PolygonIntersector::new(&ps, &poly);
        let largest = largest_embeddable(&ps, &poly);
        assert_eq!(largest, Some(4));
        let dp = DigPair { at: 4, point: 3 };
        assert!(is_digable(&ps, &poly, dp, 4, &tc, &ix));
        let dug = dig(&ps, &poly, dp).unwrap();
        assert_eq!(dug.verts(), &[4, 0, 2, 6, 1, 3, 5]);
        assert_eq!(largest_embeddable(&ps, &dug), Some(6));
        assert!(!is_active_dig(&ps, &poly, dp, largest, &ix));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn dig_activity_matches_recomputation(ps in arb_point_set(5..=7)) {
            let k = ps.len() - 3;
            let tc = TriangleCounter::new(&ps);
            for verts in oracle_enumerate(&ps, k).unwrap().polygons {
                let poly = canonical_form(&verts, &ps).unwrap();
                let ix = PolygonIntersector::new(&ps, &poly);
                let largest = largest_embeddable(&ps, &poly);
                for at in 0..poly.len() {
                    for &point in poly.inside() {
                        let dp = DigPair { at, point };
                        if !is_digable(&ps, &poly, dp, k, &tc, &ix) {
                            continue;
                        }
                        let dug = dig(&ps, &poly, dp).unwrap();
                        let direct = largest_embeddable(&ps, &dug) == Some(at + 1);
                        prop_assert_eq!(is_active_dig(&ps, &poly, dp, largest, &ix), direct);
                        prop_assert_eq!(parent(&ps, &dug).unwrap().polygon == poly, direct);
                    }
                }
            }
        }

        #[test]
        fn parent_matches_oracle_and_grows_area(ps in arb_point_set(4..=7)) {
            let k = ps.len() - 3;
            let hull = convex_hull(&ps);
            for verts in oracle_enumerate(&ps, k).unwrap().polygons {
                let poly = canonical_form(&verts, &ps).unwrap();
                if poly == hull {
                    prop_assert_eq!(parent(&ps, &poly), Err(Error::IsRoot));
                    continue;
                }
                let up = parent(&ps, &poly).unwrap().polygon;
                prop_assert_eq!(&up, &oracle_parent(&ps, &poly).unwrap());
                prop_assert!(up.twice_area(&ps) > poly.twice_area(&ps));
                prop_assert!(up.outside().len() <= poly.outside().len());
            }
        }

        #[test]
        fn embeddable_matches_region_test(ps in arb_point_set(4..=7)) {
            for verts in oracle_enumerate(&ps, ps.len() - 3).unwrap().polygons {
                let poly = canonical_form(&verts, &ps).unwrap();
                let ix = PolygonIntersector::new(&ps, &poly);
                for pos in 0..poly.len() {
                    prop_assert_eq!(is_embeddable(&ps, &poly, pos, &ix), oracle_embeddable(&ps, &verts, pos));
                }
                prop_assert_eq!(largest_embeddable(&ps, &poly).is_none(), poly.is_convex(&ps));
            }
        }

        #[test]
        fn embed_inverts_dig(ps in arb_point_set(5..=7)) {
            let hull = convex_hull(&ps);
            for at in 0..hull.len() {
                for &point in hull.inside() {
                    let dp = DigPair { at, point };
                    if let Ok(dug) = dig(&ps, &hull, dp) {
                        prop_assert!(is_embeddable(&ps, &dug, at + 1, &PolygonIntersector::new(&ps, &dug)));
                        prop_assert_eq!(&embed(&ps, &dug, at + 1).unwrap(), &hull);
                    }
                }
            }
        }
    }

    #[test]
    fn active_remove_examples() {
        let ps = s5();
        let tc = TriangleCounter::new(&ps);
        let hull = convex_hull(&ps);
        let rt = RegnumTable::default();
        let (child, _, _) = is_active_remove(&ps, &hull, 2, 1, &rt, &tc).unwrap().unwrap();
        assert_eq!(child.verts(), &[0, 1, 3]);
        let (child, _, _) = is_active_remove(&ps, &hull, 0, 1, &rt, &tc).unwrap().unwrap();
        assert_eq!(child.verts(), &[4, 1, 2, 3]);
        // No Type-2 children when the budget is spent.
        assert_eq!(is_active_remove(&ps, &hull, 0, 0, &rt, &tc).unwrap(), None);
    }
}
