//! Exact checks for produced drawings and partitions.
//!
//! Coordinates are scaled to a common denominator and every predicate works
//! on `i128` integers. Nothing here calls into the construction modules.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::engine::Embedding;
use crate::error::{Error, Result};
use crate::expand::GraphDrawing;
use crate::graph::{Color, ColoredGraphSet};
use crate::layout::{LayoutKind, PointLayout};
use crate::uphill::Orientation;
use crate::rational::Point;
use crate::seqpart::{MonotonicPartition, TupleSequence};

/// Largest allowed common denominator; keeps orientation products in range.
const MAX_SCALE: i128 = 1 << 40;
/// Largest allowed scaled coordinate magnitude.
const MAX_COORD: i128 = 1 << 60;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    EndpointMismatch { edge: usize },
    CoincidentVertices { a: usize, b: usize },
    VertexOnEdge { vertex: usize, edge: usize },
    Crossing { a: usize, b: usize },
    SelfOverlap { edge: usize },
    NotUphill { earlier: usize, later: usize },
    ColorMismatch { graph: usize, detail: String },
    BendBound { edge: usize, bends: usize, bound: usize },
    Partition { detail: String },
}

/// Vertex locations and edges as polylines between two of them.
#[derive(Debug, Clone, Default)]
pub struct Scene {
    pub points: Vec<Point>,
    pub edges: Vec<(usize, usize, Vec<Point>)>,
}

type P = (i128, i128);

fn scale(scene: &Scene) -> Result<(Vec<P>, Vec<Vec<P>>)> {
    let all = scene
        .points
        .iter()
        .chain(scene.edges.iter().flat_map(|e| e.2.iter()));
    let mut den: i128 = 1;
    for p in all.clone() {
        for v in [p.x, p.y] {
            den = den.lcm(&(*v.denom() as i128));
            if den > MAX_SCALE {
                return Err(Error::Invariant("coordinates too fine to verify".into()));
            }
        }
    }
    let conv = |p: &Point| -> Result<P> {
        let f = |v: crate::Rational| *v.numer() as i128 * (den / *v.denom() as i128);
        let q = (f(p.x), f(p.y));
        if q.0.abs() > MAX_COORD || q.1.abs() > MAX_COORD {
            return Err(Error::Invariant("coordinates too large to verify".into()));
        }
        Ok(q)
    };
    let pts = scene.points.iter().map(conv).collect::<Result<Vec<_>>>()?;
    let edges = scene
        .edges
        .iter()
        .map(|e| e.2.iter().map(conv).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok((pts, edges))
}

fn orient(a: P, b: P, c: P) -> i128 {
    ((b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)).signum()
}

fn in_box(a: P, b: P, p: P) -> bool {
    p.0 >= a.0.min(b.0) && p.0 <= a.0.max(b.0) && p.1 >= a.1.min(b.1) && p.1 <= a.1.max(b.1)
}

fn on_segment(a: P, b: P, p: P) -> bool {
    orient(a, b, p) == 0 && in_box(a, b, p)
}

fn intersects(a: P, b: P, c: P, d: P) -> bool {
    let (o1, o2) = (orient(a, b, c), orient(a, b, d));
    if o1 == o2 && o1 != 0 {
        return false;
    }
    let (o3, o4) = (orient(c, d, a), orient(c, d, b));
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return true;
    }
    (o1 == 0 && in_box(a, b, c)) || (o2 == 0 && in_box(a, b, d)) || (o3 == 0 && in_box(c, d, a)) || (o4 == 0 && in_box(c, d, b))
}

/// Whether two segments sharing end point `p` overlap beyond it.
fn overlap_beyond(p: P, q1: P, q2: P) -> bool {
    let (u, v) = ((q1.0 - p.0, q1.1 - p.1), (q2.0 - p.0, q2.1 - p.1));
    u.0 * v.1 - u.1 * v.0 == 0 && u.0 * v.0 + u.1 * v.1 > 0
}

fn other_end(s: (P, P), p: P) -> Option<P> {
    if s.0 == p {
        Some(s.1)
    } else if s.1 == p {
        Some(s.0)
    } else {
        None
    }
}

#[derive(Clone, Copy)]
struct Seg {
    a: P,
    b: P,
    edge: usize,
    idx: usize,
}

impl Seg {
    fn xmin(&self) -> i128 {
        self.a.0.min(self.b.0)
    }
    fn xmax(&self) -> i128 {
        self.a.0.max(self.b.0)
    }
    fn ymin(&self) -> i128 {
        self.a.1.min(self.b.1)
    }
    fn ymax(&self) -> i128 {
        self.a.1.max(self.b.1)
    }
}

fn segments(edges: &[Vec<P>]) -> Vec<Seg> {
    edges
        .iter()
        .enumerate()
        .flat_map(|(e, pts)| {
            pts.windows(2).enumerate().map(move |(i, w)| Seg {
                a: w[0],
                b: w[1],
                edge: e,
                idx: i,
            })
        })
        .collect()
}

fn ranks(values: impl Iterator<Item = i128>) -> Vec<i128> {
    let mut v: Vec<i128> = values.collect();
    v.sort_unstable();
    v.dedup();
    v
}

fn rank(sorted: &[i128], v: i128) -> u32 {
    sorted.partition_point(|&x| x < v) as u32
}

fn rank_boxes(segs: &[Seg]) -> Vec<[u32; 4]> {
    let xs = ranks(segs.iter().flat_map(|s| [s.a.0, s.b.0]));
    let ys = ranks(segs.iter().flat_map(|s| [s.a.1, s.b.1]));
    segs.iter()
        .map(|s| [rank(&xs, s.xmin()), rank(&xs, s.xmax()), rank(&ys, s.ymin()), rank(&ys, s.ymax())])
        .collect()
}

fn dedup_sorted(mut found: Vec<Violation>) -> Vec<Violation> {
    found.sort_by_key(|v| format!("{v:?}"));
    found.dedup();
    found
}

/// Pairs of segments whose x-ranges overlap, found by sorting on `xmin`.
fn overlapping_pairs<F>(segs: &[Seg], check: F) -> Vec<Violation>
where
    F: Fn(&Seg, &Seg) -> Option<Violation> + Sync,
{
    let mut order: Vec<usize> = (0..segs.len()).collect();
    order.sort_by_key(|&i| segs[i].xmin());
    let found = (0..order.len())
        .into_par_iter()
        .flat_map_iter(|oi| {
            let s = &segs[order[oi]];
            order[oi + 1..]
                .iter()
                .map(|&j| &segs[j])
                .take_while(|t| t.xmin() <= s.xmax())
                .filter_map(|t| check(s, t))
                .collect::<Vec<_>>()
        })
        .collect();
    dedup_sorted(found)
}

/// Active y-intervals: stored at canonical nodes of a segment tree for stab
/// queries and keyed by lower end for range queries. Removal is lazy.
struct IntervalSet {
    size: usize,
    nodes: Vec<Vec<u32>>,
    by_low: BTreeSet<(u32, u32)>,
    alive: Vec<bool>,
}

impl IntervalSet {
    fn new(size: usize, items: usize) -> Self {
        IntervalSet {
            size,
            nodes: vec![Vec::new(); 2 * size.next_power_of_two()],
            by_low: BTreeSet::new(),
            alive: vec![false; items],
        }
    }

    fn insert(&mut self, id: u32, lo: u32, hi: u32) {
        self.alive[id as usize] = true;
        self.by_low.insert((lo, id));
        let n = self.nodes.len() / 2;
        let (mut l, mut r) = (lo as usize + n, hi as usize + n + 1);
        while l < r {
            if l & 1 == 1 {
                self.nodes[l].push(id);
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                self.nodes[r].push(id);
            }
            l /= 2;
            r /= 2;
        }
    }

    fn remove(&mut self, id: u32, lo: u32) {
        self.alive[id as usize] = false;
        self.by_low.remove(&(lo, id));
    }

    /// Live intervals meeting `[lo, hi]`, each once.
    fn query(&mut self, lo: u32, hi: u32, out: &mut Vec<u32>) {
        debug_assert!((lo as usize) < self.size);
        let n = self.nodes.len() / 2;
        let mut v = lo as usize + n;
        while v >= 1 {
            let alive = &self.alive;
            self.nodes[v].retain(|&id| alive[id as usize]);
            out.extend_from_slice(&self.nodes[v]);
            v /= 2;
        }
        if lo < hi {
            out.extend(self.by_low.range((lo + 1, 0)..=(hi, u32::MAX)).map(|&(_, id)| id));
        }
    }
}

/// Pairs of segments whose bounding boxes meet, by a sweep over `x` with the
/// active segments' y-ranges in an [`IntervalSet`].
fn box_pairs<F>(segs: &[Seg], check: F) -> Vec<Violation>
where
    F: Fn(&Seg, &Seg) -> Option<Violation>,
{
    let boxes = rank_boxes(segs);
    let ry = boxes.iter().map(|b| b[3]).max().map_or(1, |m| m as usize + 1);
    let mut order: Vec<u32> = (0..segs.len() as u32).collect();
    order.sort_by_key(|&i| boxes[i as usize][0]);
    let mut active = IntervalSet::new(ry, segs.len());
    let mut expiry: BinaryHeap<Reverse<(u32, u32)>> = BinaryHeap::new();
    let mut found = Vec::new();
    let mut hits = Vec::new();
    for &i in &order {
        let b = boxes[i as usize];
        while let Some(&Reverse((x1, j))) = expiry.peek() {
            if x1 >= b[0] {
                break;
            }
            expiry.pop();
            active.remove(j, boxes[j as usize][2]);
        }
        hits.clear();
        active.query(b[2], b[3], &mut hits);
        for &j in &hits {
            found.extend(check(&segs[j as usize], &segs[i as usize]));
        }
        active.insert(i, b[2], b[3]);
        expiry.push(Reverse((b[1], i)));
    }
    dedup_sorted(found)
}

fn crossing_check(scene: &Scene, pts: &[P], s: &Seg, t: &Seg) -> Option<Violation> {
    if s.ymax() < t.ymin() || t.ymax() < s.ymin() || !intersects(s.a, s.b, t.a, t.b) {
        return None;
    }
    let (s, t) = if (s.edge, s.idx) <= (t.edge, t.idx) { (s, t) } else { (t, s) };
    if s.edge == t.edge {
        if t.idx == s.idx + 1 && s.b == t.a && !overlap_beyond(s.b, s.a, t.b) {
            return None;
        }
        return Some(Violation::SelfOverlap { edge: s.edge });
    }
    let (e, f) = (&scene.edges[s.edge], &scene.edges[t.edge]);
    for w in [e.0, e.1] {
        if w != f.0 && w != f.1 {
            continue;
        }
        let p = pts[w];
        if let (Some(q1), Some(q2)) = (other_end((s.a, s.b), p), other_end((t.a, t.b), p)) {
            if !overlap_beyond(p, q1, q2) {
                return None;
            }
        }
    }
    Some(Violation::Crossing { a: s.edge, b: t.edge })
}

fn vertex_checks(scene: &Scene, pts: &[P], edges: &[Vec<P>], segs: &[Seg]) -> Vec<Violation> {
    let mut out = Vec::new();
    for (e, (u, v, _)) in scene.edges.iter().enumerate() {
        let poly = &edges[e];
        if poly.len() < 2 || poly[0] != pts[*u] || poly[poly.len() - 1] != pts[*v] {
            out.push(Violation::EndpointMismatch { edge: e });
        }
    }
    let mut by_loc: BTreeMap<P, usize> = BTreeMap::new();
    for (i, &p) in pts.iter().enumerate() {
        if let Some(&j) = by_loc.get(&p) {
            out.push(Violation::CoincidentVertices { a: j, b: i });
        }
        by_loc.insert(p, i);
    }
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by_key(|&i| pts[i]);
    let xs: Vec<i128> = order.iter().map(|&i| pts[i].0).collect();
    let hits: Vec<Violation> = segs
        .par_iter()
        .flat_map_iter(|s| {
            let lo = xs.partition_point(|&x| x < s.xmin());
            let hi = xs.partition_point(|&x| x <= s.xmax());
            let (eu, ev, _) = scene.edges[s.edge];
            order[lo..hi]
                .iter()
                .filter(move |&&w| {
                    let p = pts[w];
                    on_segment(s.a, s.b, p) && !((w == eu || w == ev) && (p == s.a || p == s.b))
                })
                .map(move |&w| Violation::VertexOnEdge {
                    vertex: w,
                    edge: s.edge,
                })
                .collect::<Vec<_>>()
        })
        .collect();
    out.extend(hits);
    out
}

/// Violations of planarity: crossings, overlaps, vertices on foreign edges,
/// polylines not ending at their vertices.
pub fn check_planar(scene: &Scene) -> Result<Vec<Violation>> {
    let (pts, edges) = scale(scene)?;
    let segs = segments(&edges);
    let mut out = vertex_checks(scene, &pts, &edges, &segs);
    out.extend(box_pairs(&segs, |s, t| crossing_check(scene, &pts, s, t)));
    Ok(out)
}

/// All-pairs version of [`check_planar`].
pub fn check_planar_brute(scene: &Scene) -> Result<Vec<Violation>> {
    let (pts, edges) = scale(scene)?;
    let segs = segments(&edges);
    let mut out = vertex_checks(scene, &pts, &edges, &segs);
    let mut pairs = Vec::new();
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            pairs.extend(crossing_check(scene, &pts, &segs[i], &segs[j]));
        }
    }
    pairs.sort_by_key(|v| format!("{v:?}"));
    pairs.dedup();
    out.extend(pairs);
    Ok(out)
}

fn leftward(s: &Seg) -> (P, P) {
    if (s.a.0, s.a.1) <= (s.b.0, s.b.1) {
        (s.a, s.b)
    } else {
        (s.b, s.a)
    }
}

/// Whether some point of `later` lies strictly below a point of `earlier`
/// with the same abscissa.
fn below(earlier: &Seg, later: &Seg) -> bool {
    let (ea, eb) = leftward(earlier);
    let (la, lb) = leftward(later);
    let lo = ea.0.max(la.0);
    let hi = eb.0.min(lb.0);
    if lo > hi {
        return false;
    }
    match (ea.0 == eb.0, la.0 == lb.0) {
        (true, true) => eb.1 > la.1,
        (true, false) => orient(la, lb, eb) > 0,
        (false, true) => orient(ea, eb, la) < 0,
        (false, false) => [lo, hi].iter().any(|&x| {
            let mut bad = false;
            for r in [la, lb] {
                if r.0 == x {
                    bad |= orient(ea, eb, r) < 0;
                }
            }
            for p in [ea, eb] {
                if p.0 == x {
                    bad |= orient(la, lb, p) > 0;
                }
            }
            bad
        }),
    }
}

/// Violations of the uphill property for a path drawn with `edges[i]` from
/// `vertices[i]` to `vertices[i + 1]`; `transposed` checks rays toward `+x`.
pub fn check_uphill(vertices: &[Point], edges: &[Vec<Point>], transposed: bool) -> Result<Vec<Violation>> {
    let flip = |p: &Point| if transposed { p.transposed() } else { *p };
    let scene = Scene {
        points: vertices.iter().map(flip).collect(),
        edges: edges
            .iter()
            .enumerate()
            .map(|(i, e)| (i, i + 1, e.iter().map(flip).collect()))
            .collect(),
    };
    if scene.edges.len() + 1 != scene.points.len() && !(scene.edges.is_empty() && scene.points.len() <= 1) {
        return Err(Error::Consistency("path needs one more vertex than edges".into()));
    }
    let (_, scaled) = scale(&scene)?;
    let segs = segments(&scaled);
    let mut out = overlapping_pairs(&segs, |s, t| {
        let (e, l) = if (s.edge, s.idx) < (t.edge, t.idx) { (s, t) } else { (t, s) };
        below(e, l).then_some(Violation::NotUphill {
            earlier: e.edge,
            later: l.edge,
        })
    });
    out.extend(check_planar(&scene)?);
    Ok(out)
}

/// Every graph must put the same colors on the same locations.
pub fn check_color_consistency(graphs: &[Vec<(Color, Point)>]) -> Vec<Violation> {
    let maps: Vec<std::result::Result<BTreeMap<Point, Color>, String>> = graphs
        .iter()
        .map(|g| {
            let mut m = BTreeMap::new();
            for &(c, p) in g {
                if m.insert(p, c).is_some() {
                    return Err(format!("two vertices at {:?}", p.to_f64()));
                }
            }
            Ok(m)
        })
        .collect();
    let mut out = Vec::new();
    let reference = maps.first().and_then(|m| m.as_ref().ok());
    for (g, m) in maps.iter().enumerate() {
        match (m, reference) {
            (Err(detail), _) => out.push(Violation::ColorMismatch {
                graph: g,
                detail: detail.clone(),
            }),
            (Ok(m), Some(r)) if m != r => {
                let bad = m.iter().find(|(p, c)| r.get(p) != Some(c));
                let detail = match bad {
                    Some((p, c)) => format!("color {c} at {:?} differs from graph 0", p.to_f64()),
                    None => "fewer locations than graph 0".into(),
                };
                out.push(Violation::ColorMismatch { graph: g, detail });
            }
            _ => {}
        }
    }
    out
}

/// Universal point set reading: every vertex sits on a distinct layout point
/// of its own color; graphs may use different points.
pub fn check_point_colors(layout: &PointLayout, graphs: &[Vec<(Color, Point)>]) -> Vec<Violation> {
    let colors: BTreeMap<Point, Option<Color>> = layout.points.iter().map(|p| (p.location, p.color)).collect();
    let mut out = Vec::new();
    for (g, located) in graphs.iter().enumerate() {
        let mut seen = BTreeMap::new();
        for &(c, p) in located {
            let detail = match colors.get(&p) {
                None => Some(format!("vertex at {:?} is not a layout point", p.to_f64())),
                Some(&pc) if pc != Some(c) => Some(format!("color {c} on a point of color {pc:?}")),
                _ if seen.insert(p, c).is_some() => Some(format!("two vertices at {:?}", p.to_f64())),
                _ => None,
            };
            if let Some(detail) = detail {
                out.push(Violation::ColorMismatch { graph: g, detail });
            }
        }
    }
    out
}

/// Interior points of each polyline, after dropping straight interior points.
pub fn bend_counts(edges: &[Vec<Point>]) -> Result<Vec<usize>> {
    let scene = Scene {
        points: Vec::new(),
        edges: edges.iter().map(|e| (0, 0, e.clone())).collect(),
    };
    let (_, scaled) = scale(&scene)?;
    Ok(scaled
        .iter()
        .map(|pts| {
            let mut kept: Vec<P> = Vec::new();
            for &p in pts {
                if kept.last() == Some(&p) {
                    continue;
                }
                if kept.len() >= 2 {
                    let (a, b) = (kept[kept.len() - 2], kept[kept.len() - 1]);
                    if orient(a, b, p) == 0 && (b.0 - a.0) * (p.0 - b.0) + (b.1 - a.1) * (p.1 - b.1) > 0 {
                        kept.pop();
                    }
                }
                kept.push(p);
            }
            kept.len().saturating_sub(2)
        })
        .collect())
}

pub fn check_bends(edges: &[Vec<Point>], bound: usize) -> Result<Vec<Violation>> {
    Ok(bend_counts(edges)?
        .into_iter()
        .enumerate()
        .filter(|&(_, b)| b > bound)
        .map(|(edge, bends)| Violation::BendBound { edge, bends, bound })
        .collect())
}

/// Runs must cover every position once, list positions increasingly, and be
/// monotonic in every dimension in the declared direction.
pub fn check_partition(seq: &TupleSequence, part: &MonotonicPartition) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut bad = |detail: String| out.push(Violation::Partition { detail });
    let mut seen = vec![false; seq.len()];
    for (r, run) in part.runs.iter().enumerate() {
        if run.indices.is_empty() {
            bad(format!("run {r} is empty"));
        }
        if run.directions.len() != seq.arity() {
            bad(format!("run {r} has {} directions", run.directions.len()));
            continue;
        }
        for w in run.indices.windows(2) {
            if w[0] >= w[1] {
                bad(format!("run {r} positions not increasing"));
            }
        }
        for &i in &run.indices {
            if i >= seq.len() || std::mem::replace(&mut seen[i], true) {
                bad(format!("position {i} out of range or repeated"));
                continue;
            }
        }
        for (d, dir) in run.directions.iter().enumerate() {
            let ok = run.indices.windows(2).all(|w| {
                if w[0] >= seq.len() || w[1] >= seq.len() {
                    return true;
                }
                let (a, b) = (seq.get(w[0], d), seq.get(w[1], d));
                match dir {
                    crate::seqpart::Direction::NonDecreasing => a <= b,
                    crate::seqpart::Direction::NonIncreasing => a >= b,
                }
            });
            if !ok {
                bad(format!("run {r} not monotonic in dimension {d}"));
            }
        }
    }
    if let Some(i) = seen.iter().position(|s| !s) {
        bad(format!("position {i} not covered"));
    }
    out
}

/// Keeps at most this many witnesses per check.
const WITNESS_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub witnesses: Vec<Violation>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Stats {
    pub graphs: usize,
    pub points: usize,
    pub blocks: usize,
    pub max_bends: usize,
    pub mean_bends: f64,
    pub uphill_max_bends: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
    pub stats: Stats,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!("{}\t{}\n", if c.passed { "pass" } else { "FAIL" }, c.name));
            for w in &c.witnesses {
                out.push_str(&format!("\t{w:?}\n"));
            }
        }
        let s = &self.stats;
        out.push_str(&format!(
            "graphs {} points {} blocks {} max_bends {} mean_bends {:.3} uphill_max_bends {}\n",
            s.graphs, s.points, s.blocks, s.max_bends, s.mean_bends, s.uphill_max_bends
        ));
        out
    }
}

fn check(name: impl Into<String>, mut witnesses: Vec<Violation>) -> CheckResult {
    witnesses.truncate(WITNESS_CAP);
    CheckResult {
        name: name.into(),
        passed: witnesses.is_empty(),
        witnesses,
    }
}

/// The drawing as a scene indexed by vertex position.
pub fn graph_scene(d: &GraphDrawing) -> Result<Scene> {
    let idx: BTreeMap<i64, usize> = d.vertices.iter().enumerate().map(|(i, v)| (v.id, i)).collect();
    let edges = d
        .edges
        .iter()
        .map(|e| {
            let (u, v) = e.edge;
            match (idx.get(&u), idx.get(&v)) {
                (Some(&a), Some(&b)) => Ok((a, b, e.polyline.points.clone())),
                _ => Err(Error::Consistency(format!("edge ({u}, {v}) has an unplaced end"))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Scene {
        points: d.vertices.iter().map(|v| v.location).collect(),
        edges,
    })
}

/// Planarity of every drawing, uphill property of every spinal path drawing,
/// location consistency, and agreement of recorded bend counts.
pub fn verify_embedding(set: &ColoredGraphSet, emb: &Embedding) -> Result<VerificationReport> {
    let mut checks = Vec::new();
    if emb.drawings.len() != set.graphs.len() || emb.uphill.len() != set.graphs.len() {
        return Err(Error::Consistency("one drawing per graph expected".into()));
    }
    let planar: Vec<Vec<Violation>> = emb
        .drawings
        .par_iter()
        .map(|d| check_planar(&graph_scene(d)?))
        .collect::<Result<_>>()?;
    for (g, v) in planar.into_iter().enumerate() {
        checks.push(check(format!("planarity graph {g}"), v));
    }
    let uphill: Vec<Vec<Violation>> = emb
        .uphill
        .par_iter()
        .map(|u| {
            let edges: Vec<Vec<Point>> = u.edges.iter().map(|e| e.points.clone()).collect();
            check_uphill(&u.vertices, &edges, u.orientation == Orientation::Right)
        })
        .collect::<Result<_>>()?;
    for (g, v) in uphill.into_iter().enumerate() {
        checks.push(check(format!("uphill path {g}"), v));
    }
    let located: Vec<Vec<(Color, Point)>> = emb
        .drawings
        .iter()
        .map(|d| d.vertices.iter().map(|v| (v.color, v.location)).collect())
        .collect();
    let (name, mut color) = if emb.layout.kind == LayoutKind::Chains {
        ("color consistency (point colors)", check_point_colors(&emb.layout, &located))
    } else {
        ("color consistency", check_color_consistency(&located))
    };
    for (g, (d, graph)) in emb.drawings.iter().zip(&set.graphs).enumerate() {
        let want: BTreeMap<i64, Color> = graph.vertices.iter().map(|v| (v.id, v.color)).collect();
        let got: BTreeMap<i64, Color> = d.vertices.iter().map(|v| (v.id, v.color)).collect();
        if want != got {
            color.push(Violation::ColorMismatch {
                graph: g,
                detail: "drawn vertices differ from the input graph".into(),
            });
        }
    }
    checks.push(check(name, color));
    let mut recorded = Vec::new();
    let mut total = 0usize;
    let mut count = 0usize;
    let mut max_bends = 0usize;
    for d in &emb.drawings {
        let lines: Vec<Vec<Point>> = d.edges.iter().map(|e| e.polyline.points.clone()).collect();
        for (i, (b, e)) in bend_counts(&lines)?.into_iter().zip(&d.edges).enumerate() {
            if b != e.bends {
                recorded.push(Violation::BendBound {
                    edge: i,
                    bends: b,
                    bound: e.bends,
                });
            }
            total += b;
            count += 1;
            max_bends = max_bends.max(b);
        }
    }
    checks.push(check("recorded bend counts", recorded));
    let uphill_max_bends = emb
        .uphill
        .iter()
        .flat_map(|u| u.edges.iter().map(|e| e.points.len().saturating_sub(2)))
        .max()
        .unwrap_or(0);
    Ok(VerificationReport {
        checks,
        stats: Stats {
            graphs: set.graphs.len(),
            points: emb.layout.points.len(),
            blocks: emb.layout.worst_block_count(),
            max_bends,
            mean_bends: if count == 0 { 0.0 } else { total as f64 / count as f64 },
            uphill_max_bends,
        },
    })
}

/// `min{c, n^(1 - 1/gamma)}` with `gamma = 2^ceil(k/2)`.
pub fn bend_budget(n: usize, k: usize, c: usize) -> f64 {
    let gamma = 2f64.powi(k.div_ceil(2) as i32);
    (c as f64).min((n as f64).powf(1.0 - 1.0 / gamma))
}

/// Bend bound audit: passes iff `max_bends <= constant * budget`.
pub fn check_bend_budget(max_bends: usize, budget: f64, constant: f64) -> CheckResult {
    let witnesses = if max_bends as f64 <= constant * budget {
        Vec::new()
    } else {
        vec![Violation::BendBound {
            edge: 0,
            bends: max_bends,
            bound: (constant * budget).floor() as usize,
        }]
    };
    check(format!("bend budget {constant} x {budget:.3}"), witnesses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::seqpart::{Direction, MonotonicRun};

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn square_scene() -> Scene {
        Scene {
            points: vec![p(0, 0), p(2, 0), p(2, 2), p(0, 2)],
            edges: vec![
                (0, 1, vec![p(0, 0), p(2, 0)]),
                (1, 2, vec![p(2, 0), p(2, 2)]),
                (2, 3, vec![p(2, 2), p(0, 2)]),
                (3, 0, vec![p(0, 2), p(0, 0)]),
            ],
        }
    }

    #[test]
    fn square_is_planar() {
        assert!(check_planar(&square_scene()).unwrap().is_empty());
        assert!(check_planar_brute(&square_scene()).unwrap().is_empty());
    }

    #[test]
    fn diagonals_cross() {
        let mut s = square_scene();
        s.edges.push((0, 2, vec![p(0, 0), p(2, 2)]));
        s.edges.push((1, 3, vec![p(2, 0), p(0, 2)]));
        let v = check_planar(&s).unwrap();
        assert_eq!(v, vec![Violation::Crossing { a: 4, b: 5 }]);
        assert_eq!(check_planar_brute(&s).unwrap(), v);
    }

    #[test]
    fn bent_diagonal_avoids_other() {
        let mut s = square_scene();
        s.edges.push((0, 2, vec![p(0, 0), p(2, 2)]));
        s.edges.push((1, 3, vec![p(2, 0), p(3, 3), p(-1, 3), p(0, 2)]));
        assert!(check_planar(&s).unwrap().is_empty());
    }

    #[test]
    fn touching_at_shared_vertex_only() {
        let mut s = square_scene();
        s.points.push(p(1, 0));
        s.edges.push((4, 2, vec![p(1, 0), p(2, 2)]));
        let v = check_planar(&s).unwrap();
        assert!(v.contains(&Violation::VertexOnEdge { vertex: 4, edge: 0 }));
    }

    #[test]
    fn collinear_overlap_detected() {
        let s = Scene {
            points: vec![p(0, 0), p(3, 0), p(1, 1)],
            edges: vec![
                (0, 1, vec![p(0, 0), p(3, 0)]),
                (0, 2, vec![p(0, 0), p(2, 0), p(1, 1)]),
            ],
        };
        assert_eq!(check_planar(&s).unwrap(), vec![Violation::Crossing { a: 0, b: 1 }]);
    }

    #[test]
    fn rational_coordinates_scale() {
        let s = Scene {
            points: vec![Point::new(rat(1, 3), rat(0, 1)), Point::new(rat(2, 3), rat(1, 7))],
            edges: vec![(0, 1, vec![Point::new(rat(1, 3), rat(0, 1)), Point::new(rat(2, 3), rat(1, 7))])],
        };
        assert!(check_planar(&s).unwrap().is_empty());
    }

    #[test]
    fn uphill_rejects_later_edge_below() {
        // second edge dips under the first one
        let vs = vec![p(0, 0), p(4, 0), p(2, 2)];
        let ok = vec![vec![p(0, 0), p(4, 0)], vec![p(4, 0), p(2, 2)]];
        assert!(check_uphill(&vs, &ok, false).unwrap().is_empty());
        let vs = vec![p(0, 0), p(4, 0), p(2, -2)];
        let bad = vec![vec![p(0, 0), p(4, 0)], vec![p(4, 0), p(2, -2)]];
        assert_eq!(
            check_uphill(&vs, &bad, false).unwrap(),
            vec![Violation::NotUphill { earlier: 0, later: 1 }]
        );
        assert!(check_uphill(&vs, &bad, true).unwrap().is_empty());
    }

    #[test]
    fn color_consistency() {
        let a = vec![(1, p(0, 0)), (2, p(1, 0))];
        let b = vec![(2, p(1, 0)), (1, p(0, 0))];
        assert!(check_color_consistency(&[a.clone(), b]).is_empty());
        let c = vec![(2, p(0, 0)), (1, p(1, 0))];
        assert_eq!(check_color_consistency(&[a, c]).len(), 1);
    }

    #[test]
    fn bends_ignore_straight_points() {
        let e = vec![vec![p(0, 0), p(1, 1), p(2, 2), p(3, 0)]];
        assert_eq!(bend_counts(&e).unwrap(), vec![1]);
        assert_eq!(check_bends(&e, 0).unwrap().len(), 1);
    }

    #[test]
    fn partition_checks() {
        let seq = TupleSequence::new(&[vec![1], vec![3], vec![2]]).unwrap();
        let run = |idx: Vec<usize>, d| MonotonicRun {
            indices: idx,
            directions: vec![d],
        };
        let good = MonotonicPartition {
            runs: vec![run(vec![0, 1], Direction::NonDecreasing), run(vec![2], Direction::NonDecreasing)],
            source_len: 3,
        };
        assert!(check_partition(&seq, &good).is_empty());
        let bad = MonotonicPartition {
            runs: vec![run(vec![0, 1, 2], Direction::NonDecreasing)],
            source_len: 3,
        };
        assert_eq!(check_partition(&seq, &bad).len(), 1);
    }

    #[test]
    fn chain_points_take_their_own_color() {
        use crate::bookembed::{SpinalPath, SpineItem};
        let path = SpinalPath {
            items: vec![SpineItem::Vertex(0), SpineItem::Vertex(1)],
            colors: vec![1, 2],
        };
        let layout = crate::layout::layout_chains(&[path], 1).unwrap();
        let at = |i: usize| layout.points[i].location;
        let c = |i: usize| layout.points[i].color.unwrap();
        let good = vec![vec![(c(0), at(0)), (c(3), at(3))], vec![(c(1), at(1)), (c(2), at(2))]];
        assert!(check_point_colors(&layout, &good).is_empty());
        let wrong = vec![vec![(c(1), at(0))]];
        assert_eq!(check_point_colors(&layout, &wrong).len(), 1);
        let twice = vec![vec![(c(0), at(0)), (c(0), at(0))]];
        assert_eq!(check_point_colors(&layout, &twice).len(), 1);
        assert!(check_point_colors(&layout, &[vec![(1, p(99, 99))]]).len() == 1);
    }
}
