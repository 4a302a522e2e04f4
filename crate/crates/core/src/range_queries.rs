//! Query services used by the child tests: triangular range counting over
//! the whole point set, and segment / ray interference against the current
//! polygon.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use crate::geom::{cross, lex_cmp, segments_intersect, Point, PointSet, Polygon};

/// Counts points strictly inside a triangle in O(1) after an
/// O(n^2 log n) preprocessing pass.
///
/// For every pair `a <_xy b` the table stores how many points `q` with
/// `a <_xy q <_xy b` lie strictly right of `a -> b` ("below the chord"). The
/// lexicographic order acts as an infinitesimal shear of the x axis, which
/// keeps every orientation unchanged and makes all x coordinates distinct.
#[derive(Debug)]
pub struct TriangleCounter {
    n: usize,
    rank: Vec<usize>,
    below: Vec<u32>,
    queries: AtomicU64,
}

impl Clone for TriangleCounter {
    fn clone(&self) -> Self {
        TriangleCounter {
            n: self.n,
            rank: self.rank.clone(),
            below: self.below.clone(),
            queries: AtomicU64::new(self.queries.load(AtomicOrdering::Relaxed)),
        }
    }
}

struct Fenwick(Vec<u32>);

impl Fenwick {
    fn new(n: usize) -> Self {
        Fenwick(vec![0; n + 1])
    }

    fn add(&mut self, i: usize) {
        let mut i = i + 1;
        while i < self.0.len() {
            self.0[i] += 1;
            i += i & i.wrapping_neg();
        }
    }

    /// Number of inserted ranks strictly less than `i`.
    fn prefix(&self, i: usize) -> u32 {
        let mut i = i;
        let mut acc = 0;
        while i > 0 {
            acc += self.0[i];
            i -= i & i.wrapping_neg();
        }
        acc
    }
}

impl TriangleCounter {
    pub fn new(ps: &PointSet) -> Self {
        let n = ps.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_unstable_by(|&a, &b| lex_cmp(ps.point(a), ps.point(b)));
        let mut rank = vec![0; n];
        for (r, &i) in order.iter().enumerate() {
            rank[i] = r;
        }
        let mut below = vec![0u32; n * n];
        let mut cand: Vec<usize> = Vec::with_capacity(n);
        for (ra, &a) in order.iter().enumerate() {
            let pa = ps.point(a);
            cand.clear();
            cand.extend_from_slice(&order[ra + 1..]);
            // Every candidate is lexicographically after `a`, so they all lie
            // in one open half-plane around it and sort by angle.
            cand.sort_unstable_by(|&b, &c| {
                if cross(pa, ps.point(b), ps.point(c)) > 0 {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            });
            let mut fw = Fenwick::new(n);
            for &b in &cand {
                below[a * n + b] = fw.prefix(rank[b]);
                fw.add(rank[b]);
            }
        }
        TriangleCounter {
            n,
            rank,
            below,
            queries: AtomicU64::new(0),
        }
    }

    /// Points strictly below the chord between `a` and `b`, strictly between
    /// them in `<_xy` order.
    pub fn chord_below(&self, a: usize, b: usize) -> u32 {
        if self.rank[a] < self.rank[b] {
            self.below[a * self.n + b]
        } else {
            self.below[b * self.n + a]
        }
    }

    /// Number of points of S strictly inside the triangle `(a, b, c)`.
    pub fn triangle_count(&self, ps: &PointSet, a: usize, b: usize, c: usize) -> u32 {
        self.queries.fetch_add(1, AtomicOrdering::Relaxed);
        let mut t = [a, b, c];
        t.sort_unstable_by_key(|&i| self.rank[i]);
        let [l, m, r] = t;
        let lm = self.chord_below(l, m);
        let mr = self.chord_below(m, r);
        let lr = self.chord_below(l, r);
        if cross(ps.point(l), ps.point(r), ps.point(m)) > 0 {
            lm + mr - lr
        } else {
            // The middle vertex itself sits below the long chord.
            lr - lm - mr - 1
        }
    }

    /// Total queries answered so far.
    pub fn queries(&self) -> u64 {
        self.queries.load(AtomicOrdering::Relaxed)
    }

    /// Machine words held by the table, for space accounting.
    pub fn storage_words(&self) -> usize {
        self.below.len() + self.rank.len()
    }
}

/// First edge hit by a ray, with the exact hit parameter `num / den` along
/// the direction vector (`den > 0`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RayHit {
    /// Edge position: the edge runs from vertex `edge` to its successor.
    pub edge: usize,
    pub from: usize,
    pub to: usize,
    pub num: i128,
    pub den: i128,
}

impl RayHit {
    fn cmp_param(&self, other: &RayHit) -> Ordering {
        (self.num * other.den).cmp(&(other.num * self.den))
    }
}

#[derive(Clone, Copy, Debug)]
struct Edge {
    from: usize,
    to: usize,
    a: Point,
    b: Point,
}

/// Segment and ray queries against one polygon's edges.
///
/// Backed by a linear scan over the edges; the interface is what the
/// enumeration relies on, so a logarithmic ray-shooting structure can be
/// dropped in behind it.
#[derive(Debug)]
pub struct PolygonIntersector {
    edges: Vec<Edge>,
    queries: AtomicU64,
}

impl PolygonIntersector {
    pub fn new(ps: &PointSet, poly: &Polygon) -> Self {
        let t = poly.len();
        let edges = (0..t)
            .map(|i| {
                let from = poly.vertex(i);
                let to = poly.vertex(poly.succ_pos(i));
                Edge {
                    from,
                    to,
                    a: ps.point(from),
                    b: ps.point(to),
                }
            })
            .collect();
        PolygonIntersector {
            edges,
            queries: AtomicU64::new(0),
        }
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Does the segment between points `s` and `t` cross or touch any edge
    /// away from a shared endpoint? The segment equal to an edge is not
    /// blocked.
    pub fn segment_blocked(&self, ps: &PointSet, s: usize, t: usize) -> bool {
        self.segment_blocked_except(ps, s, t, None)
    }

    /// As [`segment_blocked`](Self::segment_blocked), ignoring the edge at
    /// position `skip` (used to query the polygon with one edge replaced).
    pub fn segment_blocked_except(
        &self,
        ps: &PointSet,
        s: usize,
        t: usize,
        skip: Option<usize>,
    ) -> bool {
        self.queries.fetch_add(1, AtomicOrdering::Relaxed);
        let (ps_, pt) = (ps.point(s), ps.point(t));
        self.edges.iter().enumerate().any(|(i, e)| {
            if Some(i) == skip {
                return false;
            }
            let shared_s = e.from == s || e.to == s;
            let shared_t = e.from == t || e.to == t;
            match (shared_s, shared_t) {
                (true, true) => false,
                // Segments sharing one endpoint only meet elsewhere when the
                // three points are collinear and overlap.
                (true, false) => {
                    let other = if e.from == s { e.b } else { e.a };
                    cross(ps_, pt, other) == 0 && overlaps_beyond(ps_, pt, other)
                }
                (false, true) => {
                    let other = if e.from == t { e.b } else { e.a };
                    cross(pt, ps_, other) == 0 && overlaps_beyond(pt, ps_, other)
                }
                (false, false) => segments_intersect(ps_, pt, e.a, e.b),
            }
        })
    }

    /// First edge crossed by the ray `origin + t * dir`, `t > 0`. Ties at the
    /// same parameter go to the lower edge position.
    pub fn ray_first_hit(&self, origin: Point, dir: (i64, i64)) -> Option<RayHit> {
        self.queries.fetch_add(1, AtomicOrdering::Relaxed);
        let (dx, dy) = (dir.0 as i128, dir.1 as i128);
        let mut best: Option<RayHit> = None;
        for (i, e) in self.edges.iter().enumerate() {
            let ex = (e.b.x - e.a.x) as i128;
            let ey = (e.b.y - e.a.y) as i128;
            let wx = (e.a.x - origin.x) as i128;
            let wy = (e.a.y - origin.y) as i128;
            // origin + t d = a + s (b - a)
            let mut den = dx * ey - dy * ex;
            if den == 0 {
                continue;
            }
            let mut t_num = wx * ey - wy * ex;
            let mut s_num = wx * dy - wy * dx;
            if den < 0 {
                den = -den;
                t_num = -t_num;
                s_num = -s_num;
            }
            if t_num <= 0 || s_num < 0 || s_num > den {
                continue;
            }
            let hit = RayHit {
                edge: i,
                from: e.from,
                to: e.to,
                num: t_num,
                den,
            };
            best = match best {
                Some(b) if b.cmp_param(&hit) != Ordering::Greater => Some(b),
                _ => Some(hit),
            };
        }
        best
    }

    pub fn queries(&self) -> u64 {
        self.queries.load(AtomicOrdering::Relaxed)
    }

    pub fn storage_words(&self) -> usize {
        self.edges.len() * 6
    }
}

/// `p`, `q`, `r` collinear with shared endpoint `p`: do `pq` and `pr` overlap
/// in more than `p`?
fn overlaps_beyond(p: Point, q: Point, r: Point) -> bool {
    let d1 = ((q.x - p.x) as i128, (q.y - p.y) as i128);
    let d2 = ((r.x - p.x) as i128, (r.y - p.y) as i128);
    d1.0 * d2.0 + d1.1 * d2.1 > 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{points, s5};
    use crate::geom::{canonical_form, convex_hull, strictly_in_triangle};

    fn naive_count(ps: &PointSet, a: usize, b: usize, c: usize) -> u32 {
        (0..ps.len())
            .filter(|&q| q != a && q != b && q != c)
            .filter(|&q| strictly_in_triangle(ps.point(q), ps.point(a), ps.point(b), ps.point(c)))
            .count() as u32
    }

    fn naive_below(ps: &PointSet, a: usize, b: usize) -> u32 {
        let (a, b) = if lex_cmp(ps.point(a), ps.point(b)) == Ordering::Less {
            (a, b)
        } else {
            (b, a)
        };
        (0..ps.len())
            .filter(|&q| {
                lex_cmp(ps.point(a), ps.point(q)) == Ordering::Less
                    && lex_cmp(ps.point(q), ps.point(b)) == Ordering::Less
                    && cross(ps.point(a), ps.point(b), ps.point(q)) < 0
            })
            .count() as u32
    }

    #[test]
    fn s5_chords_and_triangles() {
        let ps = s5();
        let tc = TriangleCounter::new(&ps);
        assert_eq!(tc.chord_below(0, 2), 1);
        assert_eq!(naive_below(&ps, 0, 2), 1);
        assert_eq!(tc.triangle_count(&ps, 0, 1, 3), 1);
        assert_eq!(tc.triangle_count(&ps, 0, 1, 4), 0);
        // (1,1) is left of (4,0)->(5,3) but right of (5,3)->(0,0).
        assert_eq!(naive_count(&ps, 0, 1, 2), 0);
        assert_eq!(tc.triangle_count(&ps, 0, 1, 2), 0);
        assert_eq!(tc.queries(), 3);
    }

    #[test]
    fn three_points_have_empty_chords() {
        let ps = points(&[(0, 0), (5, 1), (2, 7)]);
        let tc = TriangleCounter::new(&ps);
        for a in 0..3 {
            for b in 0..3 {
                if a != b {
                    assert_eq!(tc.chord_below(a, b), 0);
                }
            }
        }
        assert_eq!(tc.triangle_count(&ps, 0, 1, 2), 0);
    }

    #[test]
    fn vertical_ties_follow_lex_order() {
        // Several points share x coordinates.
        let ps = points(&[(0, 0), (0, 5), (3, 1), (3, 4), (6, 1), (1, 2), (4, 7)]);
        let tc = TriangleCounter::new(&ps);
        for a in 0..ps.len() {
            for b in 0..ps.len() {
                if a != b {
                    assert_eq!(tc.chord_below(a, b), naive_below(&ps, a, b), "chord {a} {b}");
                    for c in 0..ps.len() {
                        if c != a && c != b {
                            assert_eq!(tc.triangle_count(&ps, a, b, c), naive_count(&ps, a, b, c));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn convex_hexagon_hull_triples() {
        let ps = points(&[(10, 0), (5, 9), (-5, 9), (-10, 0), (-5, -9), (5, -9), (0, 1)]);
        let tc = TriangleCounter::new(&ps);
        let hull = convex_hull(&ps);
        for &a in hull.verts() {
            for &b in hull.verts() {
                for &c in hull.verts() {
                    if a != b && b != c && a != c {
                        assert_eq!(tc.triangle_count(&ps, a, b, c), naive_count(&ps, a, b, c));
                    }
                }
            }
        }
    }

    #[test]
    fn segment_blocking_examples() {
        let ps = s5();
        let tri = canonical_form(&[0, 1, 3], &ps).unwrap();
        let ix = PolygonIntersector::new(&ps, &tri);
        assert!(!ix.segment_blocked(&ps, 4, 0));
        assert!(ix.segment_blocked(&ps, 4, 2));
        let hull = convex_hull(&ps);
        let ix = PolygonIntersector::new(&ps, &hull);
        assert!(!ix.segment_blocked(&ps, 4, 1));
        assert!(!ix.segment_blocked(&ps, 0, 1));
        // Skipping the crossed edge (4,0)-(2,5) unblocks 4 -> 2 on the triangle.
        let ix = PolygonIntersector::new(&ps, &tri);
        assert!(!ix.segment_blocked_except(&ps, 4, 2, Some(1)));
    }

    #[test]
    fn ray_examples() {
        let ps = s5();
        let hull = convex_hull(&ps);
        let ix = PolygonIntersector::new(&ps, &hull);
        // Through the corner (0,0): both incident edges are hit at t = 1.
        let hit = ix.ray_first_hit(Point::new(1, 1), (-1, -1)).unwrap();
        assert_eq!((hit.edge, hit.from, hit.to), (0, 0, 1));
        assert_eq!(hit.num, hit.den);
        let hit = ix.ray_first_hit(Point::new(1, 1), (1, 0)).unwrap();
        assert_eq!((hit.from, hit.to), (1, 2));

        let tri = canonical_form(&[0, 1, 3], &ps).unwrap();
        let ix = PolygonIntersector::new(&ps, &tri);
        assert_eq!(ix.ray_first_hit(Point::new(5, 3), (1, 0)), None);
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::fixtures::arb_point_set;
    use crate::geom::{canonical_form, strictly_in_triangle};
    use crate::oracle::oracle_enumerate;
    use proptest::prelude::*;

    /// Proper crossing or an endpoint of one segment lying on the other.
    fn meet(a: Point, b: Point, c: Point, d: Point) -> bool {
        let on = |p: Point, q: Point, r: Point| {
            cross(p, q, r) == 0 && r.x >= p.x.min(q.x) && r.x <= p.x.max(q.x) && r.y >= p.y.min(q.y) && r.y <= p.y.max(q.y)
        };
        let d1 = cross(a, b, c).signum();
        let d2 = cross(a, b, d).signum();
        let d3 = cross(c, d, a).signum();
        let d4 = cross(c, d, b).signum();
        (d1 * d2 < 0 && d3 * d4 < 0) || on(a, b, c) || on(a, b, d) || on(c, d, a) || on(c, d, b)
    }

    proptest! {
        #[test]
        fn triangle_count_matches_naive(ps in arb_point_set(3..=12)) {
            let tc = TriangleCounter::new(&ps);
            let n = ps.len();
            for a in 0..n {
                for b in a + 1..n {
                    for c in b + 1..n {
                        let naive = (0..n)
                            .filter(|&q| strictly_in_triangle(ps.point(q), ps.point(a), ps.point(b), ps.point(c)))
                            .count() as u32;
                        for (x, y, z) in [(a, b, c), (a, c, b), (b, a, c), (b, c, a), (c, a, b), (c, b, a)] {
                            prop_assert_eq!(tc.triangle_count(&ps, x, y, z), naive);
                        }
                    }
                }
            }
        }

        #[test]
        fn segment_queries_match_all_edges_scan(ps in arb_point_set(4..=7)) {
            for verts in oracle_enumerate(&ps, ps.len() - 3).unwrap().polygons {
                let poly = canonical_form(&verts, &ps).unwrap();
                let ix = PolygonIntersector::new(&ps, &poly);
                let m = poly.len();
                for s in 0..ps.len() {
                    for t in 0..ps.len() {
                        if s == t {
                            continue;
                        }
                        let naive = (0..m).any(|i| {
                            let (c, d) = (poly.vertex(i), poly.vertex((i + 1) % m));
                            ![c, d].contains(&s) && ![c, d].contains(&t)
                                && meet(ps.point(s), ps.point(t), ps.point(c), ps.point(d))
                        });
                        prop_assert_eq!(ix.segment_blocked(&ps, s, t), naive, "{} {} on {:?}", s, t, poly.verts());
                    }
                }
            }
        }

        #[test]
        fn ray_hit_is_first_along_ray(ps in arb_point_set(4..=7), dx in -5i64..=5, dy in -5i64..=5) {
            prop_assume!((dx, dy) != (0, 0));
            for verts in oracle_enumerate(&ps, ps.len() - 3).unwrap().polygons {
                let poly = canonical_form(&verts, &ps).unwrap();
                let ix = PolygonIntersector::new(&ps, &poly);
                let m = poly.len();
                for o in 0..ps.len() {
                    let origin = ps.point(o);
                    let hit = ix.ray_first_hit(origin, (dx, dy));
                    // Far point on the ray, past every input coordinate.
                    let far = Point::new(origin.x + dx * 200, origin.y + dy * 200);
                    let any_edge = (0..m).any(|i| {
                        let (c, d) = (ps.point(poly.vertex(i)), ps.point(poly.vertex((i + 1) % m)));
                        let touches_origin = cross(c, d, origin) == 0 && meet(c, d, origin, origin);
                        !touches_origin && meet(origin, far, c, d)
                    });
                    let Some(h) = hit else {
                        prop_assert!(!any_edge);
                        continue;
                    };
                    // Scale by den so the hit point is integral.
                    let sc = |p: Point| Point::new(p.x * h.den as i64, p.y * h.den as i64);
                    let at = Point::new(
                        origin.x * h.den as i64 + dx * h.num as i64,
                        origin.y * h.den as i64 + dy * h.num as i64,
                    );
                    let (a, b) = (sc(ps.point(h.from)), sc(ps.point(h.to)));
                    prop_assert!(meet(a, b, at, at));
                    // No other edge is met before the hit point; ties go to
                    // the lower position. Edges through the origin never count.
                    let o2 = sc(origin);
                    for i in 0..m {
                        let (c, d) = (sc(ps.point(poly.vertex(i))), sc(ps.point(poly.vertex((i + 1) % m))));
                        if meet(c, d, o2, o2) {
                            continue;
                        }
                        if meet(c, d, at, at) {
                            prop_assert!(i >= h.edge);
                        } else {
                            prop_assert!(!meet(o2, at, c, d));
                        }
                    }
                }
            }
        }
    }
}
