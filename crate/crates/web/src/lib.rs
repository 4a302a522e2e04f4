//! Browser bindings. Every export takes and returns JSON strings so the page
//! needs no generated type glue beyond plain functions.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use kout::family::{parent, ParentKind};
use kout::gen::generate_points;
use kout::geom::canonical_form;
use kout::{enumerate, EnumConfig, Error, Point, PointSet, Polygon, Schedule};

#[derive(Serialize, Debug, PartialEq)]
pub struct PolygonView {
    pub verts: Vec<usize>,
    pub inside: Vec<usize>,
    pub outside: Vec<usize>,
    pub depth: usize,
    pub twice_area: i64,
}

#[derive(Serialize, Debug)]
pub struct StatsView {
    pub nodes_visited: u64,
    pub max_depth: usize,
    pub type1_children: u64,
    pub type2_children: u64,
    pub max_expansions_between_outputs: u64,
    pub max_triangle_queries_per_node: u64,
    pub peak_aux_words: usize,
}

#[derive(Serialize, Debug)]
pub struct EnumerationView {
    pub total: u64,
    /// Polygons beyond `limit` are counted but not returned.
    pub polygons: Vec<PolygonView>,
    pub by_outside: Vec<u64>,
    pub stats: StatsView,
}

#[derive(Serialize, Debug, PartialEq)]
pub struct ChainStep {
    pub polygon: PolygonView,
    /// "embed" or "insert" for the move leading to the next step, absent
    /// on the hull.
    pub next_move: Option<String>,
    pub moved_point: Option<usize>,
}

fn view(ps: &PointSet, p: &Polygon, depth: usize) -> PolygonView {
    PolygonView {
        verts: p.verts().to_vec(),
        inside: p.inside().to_vec(),
        outside: p.outside().to_vec(),
        depth,
        twice_area: p.twice_area(ps) as i64,
    }
}

fn to_json<T: Serialize>(r: Result<T, String>) -> String {
    match r {
        Ok(v) => serde_json::to_string(&v).expect("serializable"),
        Err(e) => serde_json::json!({ "error": e }).to_string(),
    }
}

fn parse_points(json: &str) -> Result<PointSet, String> {
    let coords: Vec<(i64, i64)> = serde_json::from_str(json).map_err(|e| e.to_string())?;
    PointSet::new(coords.into_iter().map(Point::from).collect()).map_err(|e| e.to_string())
}

pub fn generate_view(n: usize, seed: u64, range: i64, convex: bool) -> Result<Vec<(i64, i64)>, String> {
    let ps = generate_points(n, seed, range, convex).map_err(|e| e.to_string())?;
    Ok(ps.points().iter().map(|p| (p.x, p.y)).collect())
}

pub fn enumerate_view(ps: &PointSet, k: usize, limit: usize) -> Result<EnumerationView, String> {
    let mut polygons = Vec::new();
    let mut by_outside = vec![0u64; k + 1];
    let cfg = EnumConfig {
        k,
        schedule: Schedule::AlternateDepthParity,
        instrument: false,
    };
    let stats = enumerate(ps, &cfg, |v| {
        by_outside[v.polygon.outside().len()] += 1;
        if polygons.len() < limit {
            polygons.push(view(ps, v.polygon, v.depth));
        }
    })
    .map_err(|e| e.to_string())?;
    Ok(EnumerationView {
        total: stats.polygons_emitted,
        polygons,
        by_outside,
        stats: StatsView {
            nodes_visited: stats.nodes_visited,
            max_depth: stats.max_depth,
            type1_children: stats.type1_children,
            type2_children: stats.type2_children,
            max_expansions_between_outputs: stats.max_expansions_between_outputs,
            max_triangle_queries_per_node: stats.max_triangle_queries_per_node,
            peak_aux_words: stats.peak_aux_words,
        },
    })
}

/// The polygon, its parent, and so on up to the convex hull.
pub fn chain_view(ps: &PointSet, verts: &[usize]) -> Result<Vec<ChainStep>, String> {
    let mut cur = canonical_form(verts, ps).map_err(|e| e.to_string())?;
    let mut steps = Vec::new();
    let mut depth = 0;
    loop {
        match parent(ps, &cur) {
            Ok(pr) => {
                let (mv, point) = match pr.kind {
                    ParentKind::Embedment(v) => ("embed", v),
                    ParentKind::Insertion(p) => ("insert", p),
                };
                steps.push(ChainStep {
                    polygon: view(ps, &cur, depth),
                    next_move: Some(mv.to_string()),
                    moved_point: Some(point),
                });
                cur = pr.polygon;
                depth += 1;
            }
            Err(Error::IsRoot) => {
                steps.push(ChainStep {
                    polygon: view(ps, &cur, depth),
                    next_move: None,
                    moved_point: None,
                });
                return Ok(steps);
            }
            Err(e) => return Err(e.to_string()),
        }
    }
}

/// `[[x, y], ...]` for a fresh general-position point set.
#[wasm_bindgen]
pub fn generate(n: usize, seed: u32, range: i32, convex: bool) -> String {
    to_json(generate_view(n, seed as u64, range as i64, convex))
}

/// Enumerates the polygons of `points_json` with at most `k` outside
/// points, returning at most `limit` of them with counts and statistics.
#[wasm_bindgen]
pub fn enumerate_polygons(points_json: &str, k: usize, limit: usize) -> String {
    to_json(parse_points(points_json).and_then(|ps| enumerate_view(&ps, k, limit)))
}

/// Parent chain of the polygon with vertex indices `verts_json`.
#[wasm_bindgen]
pub fn parent_chain(points_json: &str, verts_json: &str) -> String {
    to_json(parse_points(points_json).and_then(|ps| {
        let verts: Vec<usize> = serde_json::from_str(verts_json).map_err(|e| e.to_string())?;
        chain_view(&ps, &verts)
    }))
}
