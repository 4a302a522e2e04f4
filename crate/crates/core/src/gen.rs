//! Deterministic pseudorandom point sets in general position.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geom::{cross, Point, PointSet, COORD_LIMIT};

const ATTEMPTS_PER_POINT: usize = 10_000;

fn fits(chosen: &[Point], q: Point) -> bool {
    for (i, &a) in chosen.iter().enumerate() {
        if a == q {
            return false;
        }
        if chosen[i + 1..].iter().any(|&b| cross(a, b, q) == 0) {
            return false;
        }
    }
    true
}

/// `n` points with coordinates in `[-range, range]`. With `convex` the
/// points are perturbed samples of a circle of radius `range`, kept only if
/// they stay in strictly convex position.
pub fn generate_points(n: usize, seed: u64, range: i64, convex: bool) -> Result<PointSet> {
    if n < 3 {
        return Err(Error::TooFewPoints(n));
    }
    if range <= 0 || range > COORD_LIMIT {
        return Err(Error::CoordinateOutOfRange { index: 0, limit: COORD_LIMIT });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if convex {
        return convex_points(n, range, &mut rng);
    }
    let mut chosen: Vec<Point> = Vec::with_capacity(n);
    while chosen.len() < n {
        let q = (0..ATTEMPTS_PER_POINT)
            .map(|_| Point::new(rng.gen_range(-range..=range), rng.gen_range(-range..=range)))
            .find(|&q| fits(&chosen, q))
            .ok_or(Error::GenerationFailed(n))?;
        chosen.push(q);
    }
    PointSet::new(chosen)
}

fn convex_points(n: usize, range: i64, rng: &mut ChaCha8Rng) -> Result<PointSet> {
    let r = range as f64;
    for _ in 0..ATTEMPTS_PER_POINT {
        let step = std::f64::consts::TAU / n as f64;
        let offset = rng.gen_range(0.0..step);
        let pts: Vec<Point> = (0..n)
            .map(|i| {
                let a = offset + step * (i as f64 + rng.gen_range(-0.3..0.3));
                Point::new((r * a.cos()).round() as i64, (r * a.sin()).round() as i64)
            })
            .collect();
        // Rounding may break convexity; only accept sets whose consecutive
        // turns are all strictly left.
        let convex = (0..n).all(|i| cross(pts[i], pts[(i + 1) % n], pts[(i + 2) % n]) > 0);
        if !convex {
            continue;
        }
        if let Ok(ps) = PointSet::new(pts) {
            return Ok(ps);
        }
    }
    Err(Error::GenerationFailed(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::convex_hull;

    #[test]
    fn deterministic() {
        let a = generate_points(5, 1, 100, false).unwrap();
        let b = generate_points(5, 1, 100, false).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, generate_points(5, 2, 100, false).unwrap());
    }

    #[test]
    fn convex_position() {
        let ps = generate_points(6, 7, 100, true).unwrap();
        assert_eq!(convex_hull(&ps).len(), 6);
        for seed in 0..20 {
            let ps = generate_points(10, seed, 1000, true).unwrap();
            assert_eq!(convex_hull(&ps).len(), 10);
        }
    }

    #[test]
    fn small_sets_and_failures() {
        assert_eq!(generate_points(3, 9, 5, false).unwrap().len(), 3);
        assert_eq!(generate_points(2, 0, 5, false), Err(Error::TooFewPoints(2)));
        // A 3x3 grid cannot hold 20 points in general position.
        assert_eq!(generate_points(20, 0, 1, false), Err(Error::GenerationFailed(20)));
        assert_eq!(generate_points(40, 0, 3, true), Err(Error::GenerationFailed(40)));
    }
}
