//! Uphill polyline drawings of spinal paths on a point layout.
//!
//! Every curve carries a time `tau`: edge `(v_{i-1}, v_i)` has time `i`, and
//! escape lanes of `v_s` have times strictly between `s` and `s + 1`. A curve
//! passes a column above all used points at `A_tau = Ymax + tau * eps` when the
//! column's vertex was drawn before `tau`, and below all points at
//! `U_tau = Ymin - (N + 1 - tau) * eps` otherwise, with `eps = 1 / (N + 1)`.
//! Later curves are higher at every column, so no curve is ever above a later
//! one and the drawing is uphill and planar.

use serde::{Deserialize, Serialize};

use crate::bookembed::SpinalPath;
use crate::error::{Error, Result};
use crate::graph::Color;
use crate::layout::{LabelAssignment, LayoutKind, PointLayout};
use crate::rational::{int, Point, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polyline {
    pub points: Vec<Point>,
}

fn cross(a: Point, b: Point, c: Point) -> Rational {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

fn dot(a: Point, b: Point, c: Point) -> Rational {
    (b.x - a.x) * (c.x - b.x) + (b.y - a.y) * (c.y - b.y)
}

/// Drops repeated points and interior points that continue straight on.
pub fn normalize(points: Vec<Point>) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::with_capacity(points.len());
    for p in points {
        if out.last() == Some(&p) {
            continue;
        }
        while out.len() >= 2 {
            let (a, b) = (out[out.len() - 2], out[out.len() - 1]);
            if cross(a, b, p) == int(0) && dot(a, b, p) > int(0) {
                out.pop();
            } else {
                break;
            }
        }
        out.push(p);
    }
    out
}

impl Polyline {
    pub fn new(points: Vec<Point>) -> Self {
        Polyline {
            points: normalize(points),
        }
    }

    pub fn bends(&self) -> usize {
        self.points.len().saturating_sub(2)
    }

    pub fn first(&self) -> Point {
        self.points[0]
    }

    pub fn last(&self) -> Point {
        self.points[self.points.len() - 1]
    }

    pub fn reversed(&self) -> Polyline {
        Polyline {
            points: self.points.iter().rev().copied().collect(),
        }
    }

    pub fn transposed(&self) -> Polyline {
        Polyline {
            points: self.points.iter().map(|p| p.transposed()).collect(),
        }
    }

    /// Joins two polylines sharing an end point; the joint becomes a bend
    /// unless it is straight.
    pub fn concat(&self, other: &Polyline) -> Polyline {
        let mut pts = self.points.clone();
        pts.extend(other.points.iter().copied());
        Polyline::new(pts)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    /// Upward rays are `+y`.
    Up,
    /// Drawn in swapped coordinates; upward rays are `+x`.
    Right,
}

/// A layout point in the drawing frame with the time its vertex is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Column {
    pub x: Rational,
    pub y: Rational,
    pub slot: Option<i64>,
}

/// Curve router over columns sorted by strictly increasing `x`.
#[derive(Debug, Clone)]
pub struct Router {
    columns: Vec<Column>,
    ymin: Rational,
    ymax: Rational,
    eps: Rational,
    n: i64,
}

impl Router {
    /// `n` bounds every curve time from above.
    pub fn new(columns: Vec<Column>, n: usize) -> Result<Router> {
        if columns.windows(2).any(|w| w[0].x >= w[1].x) {
            return Err(Error::Invariant("router columns must have increasing x".into()));
        }
        let ymin = columns.iter().map(|c| c.y).min().unwrap_or(int(0));
        let ymax = columns.iter().map(|c| c.y).max().unwrap_or(int(0));
        let n = n as i64;
        Ok(Router {
            columns,
            ymin,
            ymax,
            eps: Rational::new(1, n + 1),
            n,
        })
    }

    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn above(&self, tau: Rational) -> Rational {
        self.ymax + tau * self.eps
    }

    pub fn below(&self, tau: Rational) -> Rational {
        self.ymin - (int(self.n + 1) - tau) * self.eps
    }

    /// Level of a curve with time `tau` at a column it does not end at.
    pub fn level(&self, c: usize, tau: Rational) -> Rational {
        match self.columns[c].slot {
            Some(s) if int(s) < tau => self.above(tau),
            _ => self.below(tau),
        }
    }

    pub fn point(&self, c: usize) -> Point {
        Point::new(self.columns[c].x, self.columns[c].y)
    }

    pub fn left_boundary(&self) -> Rational {
        self.columns.first().map_or(int(0), |c| c.x) - 1
    }

    pub fn right_boundary(&self) -> Rational {
        self.columns.last().map_or(int(0), |c| c.x) + 1
    }

    /// Interior run points strictly between `from` and `to`, then `last`.
    fn sweep(&self, from: usize, to: usize, tau: Rational, mut pts: Vec<Point>, last: Option<Point>) -> Vec<Point> {
        let interior: Box<dyn Iterator<Item = usize>> = if from < to {
            Box::new(from + 1..to)
        } else {
            Box::new((to + 1..from).rev())
        };
        let th = tau.ceil().to_integer();
        let (above, below) = (self.above(tau), self.below(tau));
        let mut run: Option<(bool, usize, usize)> = None;
        let flush = |pts: &mut Vec<Point>, run: (bool, usize, usize)| {
            let l = if run.0 { above } else { below };
            pts.push(Point::new(self.columns[run.1].x, l));
            pts.push(Point::new(self.columns[run.2].x, l));
        };
        for c in interior {
            let used = matches!(self.columns[c].slot, Some(s) if s < th);
            run = match run {
                Some((ru, f, _)) if ru == used => Some((ru, f, c)),
                Some(r) => {
                    flush(&mut pts, r);
                    Some((used, c, c))
                }
                None => Some((used, c, c)),
            };
        }
        if let Some(r) = run {
            flush(&mut pts, r);
        }
        pts.extend(last);
        normalize(pts)
    }

    /// Curve from column `from` to column `to` at time `tau`.
    pub fn route(&self, from: usize, to: usize, tau: Rational) -> Polyline {
        if from == to {
            return Polyline {
                points: vec![self.point(from)],
            };
        }
        Polyline {
            points: self.sweep(from, to, tau, vec![self.point(from)], Some(self.point(to))),
        }
    }

    /// Level at which a curve with time `tau` meets a boundary.
    pub fn boundary_level(&self, left: bool, tau: Rational) -> Rational {
        if self.columns.is_empty() {
            return self.below(tau);
        }
        let e = if left { 0 } else { self.columns.len() - 1 };
        self.level(e, tau)
    }

    /// Curve from column `from` to the left or right boundary at time `tau`.
    pub fn escape(&self, from: usize, tau: Rational, left: bool) -> Polyline {
        let (bx, e) = if left {
            (self.left_boundary(), 0)
        } else {
            (self.right_boundary(), self.columns.len() - 1)
        };
        let end = Point::new(bx, self.boundary_level(left, tau));
        let start = vec![self.point(from)];
        let points = if from == e {
            normalize(vec![self.point(from), end])
        } else {
            // the extreme column is interior for this curve
            let mut pts = self.sweep(from, e, tau, start, None);
            let tail = Point::new(self.columns[e].x, self.level(e, tau));
            pts.push(tail);
            pts.push(end);
            normalize(pts)
        };
        Polyline { points }
    }
}

/// An uphill drawing of one spinal path.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UphillDrawing {
    pub orientation: Orientation,
    /// Layout point of every path item.
    pub placements: Vec<usize>,
    pub vertices: Vec<Point>,
    /// `edges[i]` joins items `i` and `i + 1`.
    pub edges: Vec<Polyline>,
    pub bends: Vec<usize>,
    /// Column of every path item in the drawing frame.
    #[serde(skip)]
    pub frame_of: Vec<usize>,
    #[serde(skip)]
    pub frame: Vec<Column>,
}

impl UphillDrawing {
    pub fn max_bends(&self) -> usize {
        self.bends.iter().copied().max().unwrap_or(0)
    }

    pub fn router(&self) -> Result<Router> {
        Router::new(self.frame.clone(), self.placements.len())
    }

    /// Maps a frame point back to layout coordinates.
    pub fn unframe(&self, p: Point) -> Point {
        match self.orientation {
            Orientation::Up => p,
            Orientation::Right => p.transposed(),
        }
    }
}

/// Routes the path with item `i` on layout point `placements[i]` and
/// `slots[p]` the time of layout point `p`.
fn draw_placed(layout: &PointLayout, placements: Vec<usize>, slots: Vec<Option<i64>>, orientation: Orientation) -> Result<UphillDrawing> {
    let order: Vec<usize> = match orientation {
        Orientation::Up => {
            let mut o: Vec<usize> = (0..layout.len()).collect();
            o.sort_by_key(|&p| layout.points[p].location.x);
            o
        }
        Orientation::Right => layout
            .axis_split
            .as_ref()
            .ok_or_else(|| Error::Parameter("rotated drawing needs a grid layout".into()))?
            .y_order
            .clone(),
    };
    let mut column_of = vec![0; layout.len()];
    let frame: Vec<Column> = order
        .iter()
        .enumerate()
        .map(|(c, &p)| {
            column_of[p] = c;
            let loc = layout.points[p].location;
            let loc = if orientation == Orientation::Right { loc.transposed() } else { loc };
            Column {
                x: loc.x,
                y: loc.y,
                slot: slots[p],
            }
        })
        .collect();
    let router = Router::new(frame, placements.len())?;
    let frame_of: Vec<usize> = placements.iter().map(|&p| column_of[p]).collect();
    let edges: Vec<Polyline> = frame_of
        .windows(2)
        .enumerate()
        .map(|(i, w)| {
            let line = router.route(w[0], w[1], int(i as i64 + 1));
            match orientation {
                Orientation::Up => line,
                Orientation::Right => line.transposed(),
            }
        })
        .collect();
    let vertices = placements.iter().map(|&p| layout.points[p].location).collect();
    Ok(UphillDrawing {
        orientation,
        bends: edges.iter().map(Polyline::bends).collect(),
        placements,
        vertices,
        edges,
        frame_of,
        frame: router.columns,
    })
}

fn slots_of(n_points: usize, placements: &[usize]) -> Vec<Option<i64>> {
    let mut slots = vec![None; n_points];
    for (i, &p) in placements.iter().enumerate() {
        slots[p] = Some(i as i64);
    }
    slots
}

fn expect_kind(layout: &PointLayout, kinds: &[LayoutKind]) -> Result<()> {
    if kinds.contains(&layout.kind) {
        Ok(())
    } else {
        Err(Error::Parameter(format!("layout kind {:?} not usable here", layout.kind)))
    }
}

/// Each vertex goes to the leftmost unused point of its color block.
pub fn draw_path_case1(path: &SpinalPath, layout: &PointLayout) -> Result<UphillDrawing> {
    expect_kind(layout, &[LayoutKind::Case1])?;
    let mut next: std::collections::BTreeMap<Color, (usize, usize)> = layout
        .blocks
        .iter()
        .filter_map(|b| match b.tag {
            crate::layout::BlockTag::Color(c) => Some((c, (b.start, b.end))),
            _ => None,
        })
        .collect();
    let placements = path
        .colors
        .iter()
        .map(|c| {
            let slot = next
                .get_mut(c)
                .filter(|(s, e)| s < e)
                .ok_or_else(|| Error::Incompatible(format!("color {c} has no free point")))?;
            slot.0 += 1;
            Ok(slot.0 - 1)
        })
        .collect::<Result<Vec<_>>>()?;
    let slots = slots_of(layout.len(), &placements);
    draw_placed(layout, placements, slots, Orientation::Up)
}

fn placements_by_label(labels: &[usize], layout: &PointLayout) -> Result<Vec<usize>> {
    if labels.len() != layout.label_point.len() {
        return Err(Error::Consistency("labels do not match the layout".into()));
    }
    Ok(labels.iter().map(|&l| layout.label_point[l]).collect())
}

/// Item `p` goes to the point of its label; `labels[p]` as in
/// [`LabelAssignment::labels`].
pub fn draw_path_case2(labels: &[usize], layout: &PointLayout) -> Result<UphillDrawing> {
    expect_kind(layout, &[LayoutKind::Case2])?;
    let placements = placements_by_label(labels, layout)?;
    let slots = slots_of(layout.len(), &placements);
    draw_placed(layout, placements, slots, Orientation::Up)
}

/// Paths on the x side of the split are drawn upward, the others rightward.
pub fn draw_paths_split(assignment: &LabelAssignment, layout: &PointLayout) -> Result<Vec<UphillDrawing>> {
    if layout.kind == LayoutKind::Case2 {
        return assignment.labels.iter().map(|l| draw_path_case2(l, layout)).collect();
    }
    expect_kind(layout, &[LayoutKind::Split])?;
    let split = layout.axis_split.as_ref().expect("split layout");
    use rayon::prelude::*;
    assignment
        .labels
        .par_iter()
        .enumerate()
        .map(|(i, labels)| {
            let placements = placements_by_label(labels, layout)?;
            let slots = slots_of(layout.len(), &placements);
            let orientation = if split.y_paths.contains(&i) {
                Orientation::Right
            } else {
                Orientation::Up
            };
            draw_placed(layout, placements, slots, orientation)
        })
        .collect()
}

/// Vertices of a color group fill successive chains of that group's segment;
/// all points of a chain take the time of the vertex placed on it.
pub fn draw_path_chains(path: &SpinalPath, layout: &PointLayout) -> Result<UphillDrawing> {
    expect_kind(layout, &[LayoutKind::Chains])?;
    let mut group_of = std::collections::BTreeMap::new();
    for (j, g) in layout.groups.iter().enumerate() {
        for &c in g {
            group_of.insert(c, j);
        }
    }
    let mut chains_of: Vec<std::collections::VecDeque<usize>> = vec![Default::default(); layout.groups.len()];
    for (i, ch) in layout.chains.iter().enumerate() {
        chains_of[ch.group].push_back(i);
    }
    let mut slots = vec![None; layout.len()];
    let mut placements = Vec::with_capacity(path.len());
    for (i, c) in path.colors.iter().enumerate() {
        let j = *group_of
            .get(c)
            .ok_or_else(|| Error::Incompatible(format!("color {c} not in any group")))?;
        let ch = chains_of[j]
            .pop_front()
            .ok_or_else(|| Error::Incompatible(format!("group {j} has no free chain")))?;
        let chain = layout.chains[ch];
        let p = (chain.start..chain.end)
            .find(|&p| layout.points[p].color == Some(*c))
            .ok_or_else(|| Error::Invariant("chain lacks a color".into()))?;
        for s in &mut slots[chain.start..chain.end] {
            *s = Some(i as i64);
        }
        placements.push(p);
    }
    draw_placed(layout, placements, slots, Orientation::Up)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bookembed::SpineItem;
    use crate::layout::{build_tuples, layout_case1, layout_case2, layout_chains, layout_split};
    use crate::rational::rat;

    fn path(colors: &[Color]) -> SpinalPath {
        SpinalPath {
            items: (0..colors.len() as i64).map(SpineItem::Vertex).collect(),
            colors: colors.to_vec(),
        }
    }

    #[test]
    fn normalize_drops_straight_points() {
        let p = |x, y| Point::from_ints(x, y);
        let pts = normalize(vec![p(0, 0), p(1, 1), p(1, 1), p(2, 2), p(3, 2), p(4, 2), p(5, 0)]);
        assert_eq!(pts, vec![p(0, 0), p(2, 2), p(4, 2), p(5, 0)]);
    }

    #[test]
    fn monochromatic_path_has_straight_edges() {
        let p = path(&[1; 6]);
        let l = layout_case1(&[p.clone()]).unwrap();
        let d = draw_path_case1(&p, &l).unwrap();
        assert_eq!(d.max_bends(), 0);
        assert_eq!(d.placements, (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn alternating_two_colors_bounded() {
        let p = path(&[1, 2, 1, 2, 1, 2, 1, 2]);
        let l = layout_case1(&[p.clone()]).unwrap();
        let d = draw_path_case1(&p, &l).unwrap();
        assert!(d.max_bends() <= 4, "{:?}", d.bends);
    }

    #[test]
    fn routes_pass_below_unused_and_above_used() {
        let cols: Vec<Column> = [Some(0), None, Some(1), Some(2)]
            .iter()
            .enumerate()
            .map(|(i, &slot)| Column {
                x: int(i as i64),
                y: int(0),
                slot,
            })
            .collect();
        let r = Router::new(cols, 3).unwrap();
        let e = r.route(0, 2, int(1));
        assert_eq!(e.points[1].y, rat(-3, 4));
        let e = r.route(2, 3, int(2));
        assert_eq!(e.bends(), 0);
        let back = r.route(3, 0, int(3));
        assert!(back.points[1..back.points.len() - 1].iter().all(|p| p.y > int(0) || p.x == int(1)));
    }

    #[test]
    fn case2_and_split_place_by_label() {
        let ps = [path(&[1, 2, 3, 1]), path(&[3, 1, 1, 2]), path(&[2, 1, 3, 1])];
        let asg = build_tuples(&ps).unwrap();
        let l2 = layout_case2(&asg).unwrap();
        for labels in &asg.labels {
            let d = draw_path_case2(labels, &l2).unwrap();
            assert_eq!(d.edges.len(), 3);
        }
        let ls = layout_split(&asg).unwrap();
        let ds = draw_paths_split(&asg, &ls).unwrap();
        assert_eq!(ds[0].orientation, Orientation::Up);
        assert_eq!(ds[2].orientation, Orientation::Right);
        for (d, labels) in ds.iter().zip(&asg.labels) {
            for (v, &l) in d.vertices.iter().zip(labels) {
                assert_eq!(*v, ls.points[ls.label_point[l]].location);
            }
        }
    }

    #[test]
    fn single_group_chains_are_cheap() {
        let p = path(&[1, 3, 2, 3, 1, 2, 2]);
        let l = layout_chains(&[p.clone()], 1).unwrap();
        let d = draw_path_chains(&p, &l).unwrap();
        assert!(d.max_bends() <= 4, "{:?}", d.bends);
    }

    fn all_uphill(ds: &[UphillDrawing]) {
        for d in ds {
            let edges: Vec<Vec<Point>> = d.edges.iter().map(|e| e.points.clone()).collect();
            let v = crate::verify::check_uphill(&d.vertices, &edges, d.orientation == Orientation::Right).unwrap();
            assert!(v.is_empty(), "{v:?}");
        }
    }

    #[test]
    fn random_drawings_verify() {
        use crate::bookembed::{embed_all, extract_spinal_paths};
        use rand::SeedableRng;
        for seed in 0..12 {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let set = crate::generate::random_compatible_set(25, 3, 4, 0.8, &mut rng);
            let paths = extract_spinal_paths(&set, &embed_all(&set).unwrap()).unwrap();
            let l1 = layout_case1(&paths).unwrap();
            all_uphill(&paths.iter().map(|p| draw_path_case1(p, &l1).unwrap()).collect::<Vec<_>>());
            let shifted = l1
                .shift_block_ordinates(&(0..l1.blocks.len() as i64).map(|b| rat(b * 7 % 5, 3)).collect::<Vec<_>>())
                .unwrap();
            let again: Vec<UphillDrawing> = paths.iter().map(|p| draw_path_case1(p, &shifted).unwrap()).collect();
            all_uphill(&again);
            let before: Vec<Vec<usize>> = paths.iter().map(|p| draw_path_case1(p, &l1).unwrap().bends).collect();
            assert_eq!(before, again.iter().map(|d| d.bends.clone()).collect::<Vec<_>>());
            let asg = build_tuples(&paths).unwrap();
            let l2 = layout_case2(&asg).unwrap();
            all_uphill(&draw_paths_split(&asg, &l2).unwrap());
            let ls = layout_split(&asg).unwrap();
            all_uphill(&draw_paths_split(&asg, &ls).unwrap());
            let lc = layout_chains(&paths, 2).unwrap();
            all_uphill(&paths.iter().map(|p| draw_path_chains(p, &lc).unwrap()).collect::<Vec<_>>());
        }
    }
}
