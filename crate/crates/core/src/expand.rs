//! Full graph drawings from uphill drawings of spinal paths.
//!
//! An arc of the book embedding between non-adjacent spine items is drawn as
//! an escape lane from each end to the left boundary (upper page) or right
//! boundary (lower page), joined by a rectangular connector outside the
//! point set. Lanes of item `s` get times in `(s, s + 1)`, so they slot in
//! between the path edges at every column. Connectors of nested arcs are
//! nested by depth.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bookembed::{BookEmbedding, Page, SpineItem};
use crate::error::{Error, Result};
use crate::graph::{Color, ColoredGraph, VertexId};
use crate::rational::{int, Point, Rational};
use crate::uphill::{Orientation, Polyline, UphillDrawing};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlacedVertex {
    pub id: VertexId,
    pub color: Color,
    pub location: Point,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrawnEdge {
    pub edge: (VertexId, VertexId),
    pub pages: Vec<Page>,
    pub polyline: Polyline,
    pub bends: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDrawing {
    pub vertices: Vec<PlacedVertex>,
    pub edges: Vec<DrawnEdge>,
    /// Lower-left and upper-right corners of the drawing.
    pub bbox: [Point; 2],
}

impl GraphDrawing {
    pub fn max_bends(&self) -> usize {
        self.edges.iter().map(|e| e.bends).max().unwrap_or(0)
    }
}

/// One page arc between spine positions `from < to`.
struct Arc {
    from: usize,
    to: usize,
    left: bool,
}

/// Connector depth of every arc of one side: one more than the deepest arc
/// nested inside it.
fn depths(arcs: &[&Arc]) -> Vec<i64> {
    let mut order: Vec<usize> = (0..arcs.len()).collect();
    order.sort_by_key(|&i| (arcs[i].from, std::cmp::Reverse(arcs[i].to)));
    let mut parent = vec![None; arcs.len()];
    let mut stack: Vec<usize> = Vec::new();
    for &i in &order {
        while let Some(&t) = stack.last() {
            if arcs[t].to <= arcs[i].from {
                stack.pop();
            } else {
                break;
            }
        }
        parent[i] = stack.last().copied();
        stack.push(i);
    }
    let mut depth = vec![1i64; arcs.len()];
    for &i in order.iter().rev() {
        if let Some(p) = parent[i] {
            depth[p] = depth[p].max(depth[i] + 1);
        }
    }
    depth
}

/// Lane times: at each item and side, lanes to earlier items lie below lanes
/// to later ones; a lane to a farther item lies outside one to a nearer item.
fn lane_times(arcs: &[Arc]) -> BTreeMap<(usize, usize), Rational> {
    let mut groups: BTreeMap<(usize, bool), Vec<(usize, std::cmp::Reverse<usize>, usize)>> = BTreeMap::new();
    for (a, arc) in arcs.iter().enumerate() {
        // (item, side) -> (0 = partner below, 1 = partner above, partner, arc)
        groups
            .entry((arc.to, arc.left))
            .or_default()
            .push((0, std::cmp::Reverse(arc.from), a));
        groups
            .entry((arc.from, arc.left))
            .or_default()
            .push((1, std::cmp::Reverse(arc.to), a));
    }
    let den = groups.values().map(Vec::len).max().unwrap_or(0) as i64 + 1;
    let mut out = BTreeMap::new();
    for ((item, _), mut lanes) in groups {
        lanes.sort();
        for (j, (_, _, a)) in lanes.into_iter().enumerate() {
            out.insert((a, item), int(item as i64) + Rational::new(j as i64 + 1, den));
        }
    }
    out
}

/// Lifts `ud`, an uphill drawing of the spinal path of `be`, to a drawing of
/// `g`. Division items become bends and dummy items are dropped.
pub fn expand_drawing(g: &ColoredGraph, be: &BookEmbedding, ud: &UphillDrawing) -> Result<GraphDrawing> {
    let a = expand_with_sides(g, be, ud, true)?;
    let b = expand_with_sides(g, be, ud, false)?;
    Ok(if b.max_bends() < a.max_bends() { b } else { a })
}

/// `upper_left` sends upper-page arcs to the left boundary, otherwise to the
/// right one.
pub fn expand_with_sides(g: &ColoredGraph, be: &BookEmbedding, ud: &UphillDrawing, upper_left: bool) -> Result<GraphDrawing> {
    let len = be.spine.len();
    if ud.placements.len() < len || ud.frame_of.len() != ud.placements.len() {
        return Err(Error::Consistency(format!(
            "drawing has {} items, spine has {len}",
            ud.placements.len()
        )));
    }
    let router = ud.router()?;
    let arcs: Vec<Arc> = be
        .segments
        .iter()
        .filter(|s| s.to > s.from + 1)
        .map(|s| Arc {
            from: s.from,
            to: s.to,
            left: (s.page == Page::Above) == upper_left,
        })
        .collect();
    let times = lane_times(&arcs);
    let mut depth = vec![0i64; arcs.len()];
    for side in [true, false] {
        let idx: Vec<usize> = (0..arcs.len()).filter(|&a| arcs[a].left == side).collect();
        let refs: Vec<&Arc> = idx.iter().map(|&a| &arcs[a]).collect();
        for (a, d) in idx.iter().zip(depths(&refs)) {
            depth[*a] = d;
        }
    }
    let (lx, rx) = (router.left_boundary(), router.right_boundary());
    let mut arc_lines = arcs.iter().enumerate().map(|(a, arc)| {
        let (tf, tt) = (times[&(a, arc.from)], times[&(a, arc.to)]);
        let (cf, ct) = (ud.frame_of[arc.from], ud.frame_of[arc.to]);
        let out = if arc.left { lx - depth[a] } else { rx + depth[a] };
        let lf = router.escape(cf, tf, arc.left);
        let lt = router.escape(ct, tt, arc.left);
        let mut pts = lf.points.clone();
        pts.push(Point::new(out, router.boundary_level(arc.left, tf)));
        pts.push(Point::new(out, router.boundary_level(arc.left, tt)));
        pts.extend(lt.points.iter().rev());
        Polyline::new(pts)
    });
    // frame polyline of every segment, keyed by its spine positions
    let mut seg_line: BTreeMap<(usize, usize), Polyline> = BTreeMap::new();
    for arc in &arcs {
        seg_line.insert((arc.from, arc.to), arc_lines.next().expect("one line per arc"));
    }
    for s in &be.segments {
        if s.to == s.from + 1 {
            let line = router.route(ud.frame_of[s.from], ud.frame_of[s.to], int(s.to as i64));
            seg_line.insert((s.from, s.to), line);
        }
    }
    let frame_point = |i: usize| router.point(ud.frame_of[i]);
    let unframe = |p: Point| match ud.orientation {
        Orientation::Up => p,
        Orientation::Right => p.transposed(),
    };
    let pos: BTreeMap<SpineItem, usize> = be.spine.iter().enumerate().map(|(i, &it)| (it, i)).collect();
    let mut by_edge: BTreeMap<(VertexId, VertexId), Vec<(usize, usize, Page)>> = BTreeMap::new();
    for s in &be.segments {
        by_edge.entry(s.edge).or_default().push((s.from, s.to, s.page));
    }
    let mut edges = Vec::with_capacity(g.edges.len());
    for &(u, v) in &g.edges {
        let segs = by_edge
            .get(&(u, v))
            .or_else(|| by_edge.get(&(v, u)))
            .ok_or_else(|| Error::Consistency(format!("edge ({u}, {v}) has no segment")))?;
        let pu = *pos
            .get(&SpineItem::Vertex(u))
            .ok_or_else(|| Error::Consistency(format!("vertex {u} not on spine")))?;
        // walk the segments from u's position
        let mut at = pu;
        let mut pts: Vec<Point> = vec![frame_point(pu)];
        let mut pages = Vec::new();
        let mut remaining: Vec<(usize, usize, Page)> = segs.clone();
        while !remaining.is_empty() {
            let k = remaining
                .iter()
                .position(|&(f, t, _)| f == at || t == at)
                .ok_or_else(|| Error::Consistency(format!("segments of ({u}, {v}) do not chain")))?;
            let (f, t, page) = remaining.swap_remove(k);
            let line = &seg_line[&(f, t)];
            if f == at {
                pts.extend(line.points.iter().skip(1));
                at = t;
            } else {
                pts.extend(line.points.iter().rev().skip(1));
                at = f;
            }
            pages.push(page);
        }
        if be.spine.get(at) != Some(&SpineItem::Vertex(v)) {
            return Err(Error::Consistency(format!("segments of ({u}, {v}) end elsewhere")));
        }
        let polyline = Polyline::new(pts.into_iter().map(unframe).collect());
        edges.push(DrawnEdge {
            edge: (u, v),
            pages,
            bends: polyline.bends(),
            polyline,
        });
    }
    let vertices = g
        .vertices
        .iter()
        .map(|vx| {
            let p = *pos
                .get(&SpineItem::Vertex(vx.id))
                .ok_or_else(|| Error::Consistency(format!("vertex {} not on spine", vx.id)))?;
            Ok(PlacedVertex {
                id: vx.id,
                color: vx.color,
                location: ud.vertices[p],
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let all = vertices
        .iter()
        .map(|v| v.location)
        .chain(edges.iter().flat_map(|e| e.polyline.points.iter().copied()));
    let bbox = bounding_box(all);
    Ok(GraphDrawing { vertices, edges, bbox })
}

fn bounding_box(points: impl Iterator<Item = Point>) -> [Point; 2] {
    let mut lo: Option<Point> = None;
    let mut hi: Option<Point> = None;
    for p in points {
        lo = Some(lo.map_or(p, |l| Point::new(l.x.min(p.x), l.y.min(p.y))));
        hi = Some(hi.map_or(p, |h| Point::new(h.x.max(p.x), h.y.max(p.y))));
    }
    let z = Point::from_ints(0, 0);
    [lo.unwrap_or(z), hi.unwrap_or(z)]
}
