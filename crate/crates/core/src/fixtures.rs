//! Shared test fixtures.

use crate::geom::{Point, PointSet};

/// The five-point desk example: hull `0 1 2 3`, point 4 interior.
pub(crate) fn s5() -> PointSet {
    PointSet::new(vec![
        Point::new(0, 0),
        Point::new(4, 0),
        Point::new(5, 3),
        Point::new(2, 5),
        Point::new(1, 1),
    ])
    .unwrap()
}

pub(crate) fn points(coords: &[(i64, i64)]) -> PointSet {
    PointSet::new(coords.iter().map(|&p| p.into()).collect()).unwrap()
}

/// Point sets of `sizes` points in general position on a small grid, so
/// that interesting configurations are frequent.
pub(crate) fn arb_point_set(sizes: std::ops::RangeInclusive<usize>) -> impl proptest::strategy::Strategy<Value = PointSet> {
    use proptest::prelude::*;
    prop::collection::vec((-20i64..=20, -20i64..=20), sizes)
        .prop_filter_map("general position", |coords| {
            PointSet::new(coords.into_iter().map(Point::from).collect()).ok()
        })
}
