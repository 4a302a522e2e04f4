//! Reverse-search traversal of the family tree.
//!
//! The traversal keeps an explicit stack of frames, each with a lazy cursor
//! over its candidate children, so no child list is ever materialized. With
//! [`Schedule::AlternateDepthParity`] a polygon at even depth is reported on
//! the way down and one at odd depth on the way up, which bounds the number
//! of tree edges walked between two consecutive outputs by three.

use std::collections::BTreeMap;
use std::ops::ControlFlow;

use crate::convex_ops::{self, RegnumTable};
use crate::error::{Error, Result};
use crate::family::{self, DigPair};
use crate::geom::{convex_hull, PointSet, Polygon};
use crate::range_queries::{PolygonIntersector, TriangleCounter};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Schedule {
    /// Report every polygon when it is first reached.
    Preorder,
    /// Report on entry at even depth and on exit at odd depth.
    #[default]
    AlternateDepthParity,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Timing {
    BeforeChildren,
    AfterChildren,
}

pub fn schedule_output(depth: usize, schedule: Schedule) -> Timing {
    match schedule {
        Schedule::AlternateDepthParity if depth % 2 == 1 => Timing::AfterChildren,
        _ => Timing::BeforeChildren,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumConfig {
    pub k: usize,
    pub schedule: Schedule,
    /// Collect per-node query histograms.
    pub instrument: bool,
}

impl EnumConfig {
    pub fn new(k: usize) -> Self {
        EnumConfig {
            k,
            schedule: Schedule::default(),
            instrument: false,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EnumStats {
    pub nodes_visited: u64,
    pub polygons_emitted: u64,
    pub max_depth: usize,
    pub type1_children: u64,
    pub type2_children: u64,
    /// Triangle-count queries issued while expanding one node.
    pub max_triangle_queries_per_node: u64,
    pub max_intersection_queries_per_node: u64,
    /// Histograms keyed by query count; filled when instrumenting.
    pub triangle_queries_hist: BTreeMap<u64, u64>,
    pub intersection_queries_hist: BTreeMap<u64, u64>,
    /// Tree edges walked between two consecutive outputs (or before the
    /// first / after the last).
    pub max_expansions_between_outputs: u64,
    pub counter_words: usize,
    pub peak_aux_words: usize,
    /// Removed-vertex table entries that were zero, as claimed in closed
    /// form, versus those that had to be corrected.
    pub regnum_claim_held: u64,
    pub regnum_claim_corrected: u64,
}

/// What the sink sees for each polygon.
#[derive(Clone, Copy, Debug)]
pub struct Visit<'a> {
    pub polygon: &'a Polygon,
    pub depth: usize,
    /// Preorder index of the node in the tree.
    pub ordinal: u64,
}

#[derive(Clone, Copy, Debug)]
enum Cursor {
    Type1 { at: usize, idx: usize },
    Type2 { at: usize },
    Done,
}

struct Frame {
    poly: Polygon,
    largest: Option<usize>,
    regnum: Option<RegnumTable>,
    ix: PolygonIntersector,
    depth: usize,
    ordinal: u64,
    cursor: Cursor,
    triangle_queries: u64,
}

impl Frame {
    fn new(ps: &PointSet, poly: Polygon, largest: Option<usize>, regnum: Option<RegnumTable>, depth: usize, ordinal: u64) -> Frame {
        let ix = PolygonIntersector::new(ps, &poly);
        let at = largest.map_or(0, |j| j - 1);
        Frame {
            poly,
            largest,
            regnum,
            ix,
            depth,
            ordinal,
            cursor: Cursor::Type1 { at, idx: 0 },
            triangle_queries: 0,
        }
    }

    fn words(&self) -> usize {
        let p = &self.poly;
        p.len() + p.inside().len() + p.outside().len()
            + self.ix.storage_words()
            + self.regnum.as_ref().map_or(0, RegnumTable::storage_words)
            + 8
    }
}

struct Child {
    poly: Polygon,
    largest: Option<usize>,
    regnum: Option<RegnumTable>,
}

fn next_child(ps: &PointSet, k: usize, tc: &TriangleCounter, f: &mut Frame, stats: &mut EnumStats) -> Result<Option<Child>> {
    loop {
        match f.cursor {
            Cursor::Type1 { mut at, mut idx } => {
                let t = f.poly.len();
                while at < t {
                    while idx < f.poly.inside().len() {
                        let dp = DigPair { at, point: f.poly.inside()[idx] };
                        idx += 1;
                        if family::is_digable(ps, &f.poly, dp, k, tc, &f.ix)
                            && family::is_active_dig(ps, &f.poly, dp, f.largest, &f.ix)
                        {
                            f.cursor = Cursor::Type1 { at, idx };
                            stats.type1_children += 1;
                            return Ok(Some(Child {
                                poly: family::dig_unchecked(ps, &f.poly, dp),
                                largest: Some(at + 1),
                                regnum: None,
                            }));
                        }
                    }
                    at += 1;
                    idx = 0;
                }
                f.cursor = if f.largest.is_none() && f.poly.outside().len() < k {
                    if f.regnum.is_none() {
                        f.regnum = Some(convex_ops::regnum_scratch(ps, &f.poly)?);
                    }
                    Cursor::Type2 { at: 0 }
                } else {
                    Cursor::Done
                };
            }
            Cursor::Type2 { mut at } => {
                let rt = f.regnum.as_ref().expect("table for convex frame");
                while at < f.poly.len() {
                    let checked = family::check_remove(ps, &f.poly, at, rt, tc)?;
                    at += 1;
                    let Some((child, table, report, active)) = checked else {
                        continue;
                    };
                    if report.removed_entry_zero {
                        stats.regnum_claim_held += 1;
                    } else {
                        stats.regnum_claim_corrected += 1;
                    }
                    if active {
                        f.cursor = Cursor::Type2 { at };
                        stats.type2_children += 1;
                        return Ok(Some(Child {
                            poly: child,
                            largest: None,
                            regnum: Some(table),
                        }));
                    }
                }
                f.cursor = Cursor::Done;
            }
            Cursor::Done => return Ok(None),
        }
    }
}

/// Walks the tree of all polygons with at most `cfg.k` outside points,
/// calling `sink` once per polygon.
pub fn enumerate<F>(ps: &PointSet, cfg: &EnumConfig, mut sink: F) -> Result<EnumStats>
where
    F: FnMut(Visit<'_>),
{
    enumerate_until(ps, cfg, |v| {
        sink(v);
        ControlFlow::Continue(())
    })
}

/// Like [`enumerate`], stopping as soon as `sink` breaks.
pub fn enumerate_until<F>(ps: &PointSet, cfg: &EnumConfig, mut sink: F) -> Result<EnumStats>
where
    F: FnMut(Visit<'_>) -> ControlFlow<()>,
{
    let n = ps.len();
    let max = n.saturating_sub(3);
    if cfg.k > max {
        return Err(Error::InvalidK { k: cfg.k, max });
    }
    let tc = TriangleCounter::new(ps);
    let mut stats = EnumStats {
        counter_words: tc.storage_words(),
        ..EnumStats::default()
    };
    let mut gap = 0u64;
    let mut frame_words = 0usize;
    let mut stack: Vec<Frame> = Vec::new();

    macro_rules! emit {
        ($frame:expr) => {{
            let f: &Frame = $frame;
            stats.polygons_emitted += 1;
            stats.max_expansions_between_outputs = stats.max_expansions_between_outputs.max(gap);
            gap = 0;
            let flow = sink(Visit {
                polygon: &f.poly,
                depth: f.depth,
                ordinal: f.ordinal,
            });
            if flow.is_break() {
                return Ok(stats);
            }
        }};
    }

    let root = Frame::new(ps, convex_hull(ps), None, Some(RegnumTable::default()), 0, 0);
    stats.nodes_visited = 1;
    frame_words += root.words();
    stats.peak_aux_words = stats.counter_words + frame_words;
    stack.push(root);
    if schedule_output(0, cfg.schedule) == Timing::BeforeChildren {
        emit!(stack.last().expect("root"));
    }

    while let Some(top) = stack.last_mut() {
        let before = tc.queries();
        let child = next_child(ps, cfg.k, &tc, top, &mut stats)?;
        top.triangle_queries += tc.queries() - before;
        match child {
            Some(c) => {
                let depth = top.depth + 1;
                let frame = Frame::new(ps, c.poly, c.largest, c.regnum, depth, stats.nodes_visited);
                stats.nodes_visited += 1;
                stats.max_depth = stats.max_depth.max(depth);
                frame_words += frame.words();
                stats.peak_aux_words = stats.peak_aux_words.max(stats.counter_words + frame_words);
                gap += 1;
                stack.push(frame);
                if schedule_output(depth, cfg.schedule) == Timing::BeforeChildren {
                    emit!(stack.last().expect("pushed"));
                }
            }
            None => {
                let done = stack.pop().expect("top");
                frame_words -= done.words();
                let iq = done.ix.queries();
                stats.max_triangle_queries_per_node = stats.max_triangle_queries_per_node.max(done.triangle_queries);
                stats.max_intersection_queries_per_node = stats.max_intersection_queries_per_node.max(iq);
                if cfg.instrument {
                    *stats.triangle_queries_hist.entry(done.triangle_queries).or_default() += 1;
                    *stats.intersection_queries_hist.entry(iq).or_default() += 1;
                }
                if schedule_output(done.depth, cfg.schedule) == Timing::AfterChildren {
                    emit!(&done);
                }
                if !stack.is_empty() {
                    gap += 1;
                }
            }
        }
    }
    stats.max_expansions_between_outputs = stats.max_expansions_between_outputs.max(gap);
    Ok(stats)
}

/// Collects every polygon in output order.
pub fn enumerate_all(ps: &PointSet, k: usize) -> Result<Vec<Polygon>> {
    let mut out = Vec::new();
    enumerate(ps, &EnumConfig::new(k), |v| out.push(v.polygon.clone()))?;
    Ok(out)
}
