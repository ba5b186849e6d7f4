//! Shared vertex-location point sets: color blocks, monotonic-run blocks, the
//! two-axis grid, and chains of color groups.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::bookembed::SpinalPath;
use crate::error::{Error, Result};
use crate::graph::Color;
use crate::rational::{int, Point, Rational};
use crate::seqpart::{tuple_partition, MonotonicPartition, TupleSequence};

/// Gap between the last point of a block and the first point of the next.
pub const BLOCK_GAP: i64 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SlotKind {
    ColorBlock,
    RunBlock,
    Chain,
    Grid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LayoutKind {
    Case1,
    Case2,
    Split,
    Chains,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayoutPoint {
    pub location: Point,
    pub block: usize,
    pub kind: SlotKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub color: Option<Color>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockTag {
    Color(Color),
    Run(usize),
    Group(usize),
}

/// A contiguous index range `start..end` of points in axis order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub id: usize,
    pub tag: BlockTag,
    pub start: usize,
    pub end: usize,
}

impl Block {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

/// Which paths are drawn against which axis in a grid layout. `y_blocks`
/// index into `y_order`, the point indices sorted by ordinate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxisSplit {
    pub x_paths: Vec<usize>,
    pub y_paths: Vec<usize>,
    pub x_arity: usize,
    pub y_arity: usize,
    pub y_order: Vec<usize>,
    pub y_blocks: Vec<Block>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainSlot {
    pub group: usize,
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointLayout {
    pub kind: LayoutKind,
    /// Points in x order.
    pub points: Vec<LayoutPoint>,
    /// Blocks along the x-axis.
    pub blocks: Vec<Block>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axis_split: Option<AxisSplit>,
    /// Point assigned to each label (Case 2 and grid layouts).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub label_point: Vec<usize>,
    /// Color groups (chains layouts).
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub groups: Vec<Vec<Color>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub chains: Vec<ChainSlot>,
}

impl PointLayout {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Largest number of blocks any single path is drawn against.
    pub fn worst_block_count(&self) -> usize {
        let y = self.axis_split.as_ref().map_or(0, |s| s.y_blocks.len());
        self.blocks.len().max(y)
    }

    /// Plain-text block size table, one line per block.
    pub fn block_table(&self) -> String {
        let mut out = String::from("axis\tblock\ttag\tsize\n");
        let mut emit = |axis: &str, blocks: &[Block]| {
            for b in blocks {
                let tag = match b.tag {
                    BlockTag::Color(c) => format!("color:{c}"),
                    BlockTag::Run(r) => format!("run:{r}"),
                    BlockTag::Group(g) => format!("group:{g}"),
                };
                let _ = writeln!(out, "{axis}\t{}\t{tag}\t{}", b.id, b.len());
            }
        };
        emit("x", &self.blocks);
        if let Some(split) = &self.axis_split {
            emit("y", &split.y_blocks);
        }
        out
    }

    /// Copy with every point of x-block `b` moved vertically by `offsets[b]`.
    pub fn shift_block_ordinates(&self, offsets: &[Rational]) -> Result<PointLayout> {
        if offsets.len() != self.blocks.len() {
            return Err(Error::Parameter(format!(
                "{} offsets for {} blocks",
                offsets.len(),
                self.blocks.len()
            )));
        }
        if self.axis_split.is_some() {
            return Err(Error::Parameter("grid layouts have no free ordinates".into()));
        }
        let mut out = self.clone();
        for p in &mut out.points {
            p.location.y += offsets[p.block];
        }
        Ok(out)
    }
}

/// Abscissas for consecutive blocks of the given sizes.
fn block_abscissas(sizes: &[usize]) -> Vec<i64> {
    let mut xs = Vec::with_capacity(sizes.iter().sum());
    let mut x = 0;
    for (b, &s) in sizes.iter().enumerate() {
        if b > 0 && s > 0 && !xs.is_empty() {
            x += BLOCK_GAP - 1;
        }
        for _ in 0..s {
            xs.push(x);
            x += 1;
        }
    }
    xs
}

fn check_paths(paths: &[SpinalPath]) -> Result<usize> {
    let n = paths.first().map_or(0, SpinalPath::len);
    if paths.iter().any(|p| p.len() != n || p.colors.len() != n) {
        return Err(Error::Incompatible("spinal paths differ in length".into()));
    }
    let counts = |p: &SpinalPath| {
        let mut m: BTreeMap<Color, usize> = BTreeMap::new();
        for &c in &p.colors {
            *m.entry(c).or_default() += 1;
        }
        m
    };
    if let Some(first) = paths.first() {
        let reference = counts(first);
        for (i, p) in paths.iter().enumerate().skip(1) {
            if counts(p) != reference {
                return Err(Error::Incompatible(format!(
                    "spinal path {i} has different color counts"
                )));
            }
        }
    }
    Ok(n)
}

/// One contiguous block of collinear points per color, in color order.
pub fn layout_case1(paths: &[SpinalPath]) -> Result<PointLayout> {
    check_paths(paths)?;
    let mut counts: BTreeMap<Color, usize> = BTreeMap::new();
    if let Some(p) = paths.first() {
        for &c in &p.colors {
            *counts.entry(c).or_default() += 1;
        }
    }
    let sizes: Vec<usize> = counts.values().copied().collect();
    let xs = block_abscissas(&sizes);
    let mut points = Vec::with_capacity(xs.len());
    let mut blocks = Vec::new();
    for (id, (&color, &size)) in counts.iter().enumerate() {
        let start = points.len();
        for _ in 0..size {
            points.push(LayoutPoint {
                location: Point::new(int(xs[points.len()]), int(0)),
                block: id,
                kind: SlotKind::ColorBlock,
                color: Some(color),
                chain: None,
            });
        }
        blocks.push(Block {
            id,
            tag: BlockTag::Color(color),
            start,
            end: points.len(),
        });
    }
    Ok(PointLayout {
        kind: LayoutKind::Case1,
        points,
        blocks,
        axis_split: None,
        label_point: Vec::new(),
        groups: Vec::new(),
        chains: Vec::new(),
    })
}

/// A color-consistent labeling of the path vertices and the tuple sequence
/// it induces: tuple `j` lists the 1-based position of label `j` in each path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelAssignment {
    /// `labels[i][p]` is the label of the vertex at position `p` of path `i`.
    pub labels: Vec<Vec<usize>>,
    pub tuples: TupleSequence,
}

impl LabelAssignment {
    /// `positions[i][label]`, the inverse of `labels`.
    pub fn positions(&self) -> Vec<Vec<usize>> {
        self.labels
            .iter()
            .map(|row| {
                let mut inv = vec![0; row.len()];
                for (p, &l) in row.iter().enumerate() {
                    inv[l] = p;
                }
                inv
            })
            .collect()
    }

    /// Tuple sequence restricted to the given paths.
    pub fn restricted(&self, paths: &[usize]) -> Result<TupleSequence> {
        let pos = self.positions();
        let dims: Vec<Vec<i64>> = paths
            .iter()
            .map(|&i| pos[i].iter().map(|&p| p as i64 + 1).collect())
            .collect();
        TupleSequence::from_dimensions(&dims)
    }
}

/// Labels follow the first path; every other path matches the `r`-th vertex of
/// each color with the `r`-th vertex of that color in the first path.
pub fn build_tuples(paths: &[SpinalPath]) -> Result<LabelAssignment> {
    let n = check_paths(paths)?;
    if paths.is_empty() {
        return Err(Error::MalformedInput("no spinal paths".into()));
    }
    let mut by_color: BTreeMap<Color, Vec<usize>> = BTreeMap::new();
    for (p, &c) in paths[0].colors.iter().enumerate() {
        by_color.entry(c).or_default().push(p);
    }
    let labels: Vec<Vec<usize>> = paths
        .iter()
        .map(|path| {
            let mut seen: BTreeMap<Color, usize> = BTreeMap::new();
            path.colors
                .iter()
                .map(|&c| {
                    let r = seen.entry(c).or_default();
                    *r += 1;
                    by_color[&c][*r - 1]
                })
                .collect()
        })
        .collect();
    let mut assignment = LabelAssignment {
        labels,
        tuples: TupleSequence::new(&[]).expect("empty"),
    };
    let all: Vec<usize> = (0..paths.len()).collect();
    assignment.tuples = if n == 0 {
        TupleSequence::from_dimensions(&vec![Vec::new(); paths.len().max(1)])?
    } else {
        assignment.restricted(&all)?
    };
    Ok(assignment)
}

fn partition_of(seq: &TupleSequence) -> Result<MonotonicPartition> {
    if seq.is_empty() {
        return Ok(MonotonicPartition {
            runs: Vec::new(),
            source_len: 0,
        });
    }
    tuple_partition(seq, 0.5)
}

/// Labels along one axis: the tuple sequence of `paths` is listed in the
/// order of the first of them and partitioned into runs, which become
/// consecutive blocks.
struct AxisOrder {
    labels: Vec<usize>,
    sizes: Vec<usize>,
    run_of_label: Vec<usize>,
    arity: usize,
}

fn axis_order(assignment: &LabelAssignment, paths: &[usize]) -> Result<AxisOrder> {
    let pos = assignment.positions();
    let lead = &assignment.labels[paths[0]];
    let dims: Vec<Vec<i64>> = paths
        .iter()
        .map(|&i| lead.iter().map(|&l| pos[i][l] as i64 + 1).collect())
        .collect();
    let seq = TupleSequence::from_dimensions(&dims)?;
    let part = partition_of(&seq)?;
    let mut run_of_label = vec![0; lead.len()];
    let mut labels = Vec::with_capacity(lead.len());
    for (r, run) in part.runs.iter().enumerate() {
        for &j in &run.indices {
            run_of_label[lead[j]] = r;
            labels.push(lead[j]);
        }
    }
    Ok(AxisOrder {
        labels,
        sizes: part.runs.iter().map(|r| r.len()).collect(),
        run_of_label,
        arity: seq.arity(),
    })
}

/// One block of collinear points per monotonic run of the tuple sequence.
pub fn layout_case2(assignment: &LabelAssignment) -> Result<PointLayout> {
    let all: Vec<usize> = (0..assignment.labels.len()).collect();
    let axis = axis_order(assignment, &all)?;
    let xs = block_abscissas(&axis.sizes);
    let mut label_point = vec![0; axis.labels.len()];
    let points = axis
        .labels
        .iter()
        .enumerate()
        .map(|(i, &label)| {
            label_point[label] = i;
            LayoutPoint {
                location: Point::new(int(xs[i]), int(0)),
                block: axis.run_of_label[label],
                kind: SlotKind::RunBlock,
                color: None,
                chain: None,
            }
        })
        .collect();
    Ok(PointLayout {
        kind: LayoutKind::Case2,
        points,
        blocks: blocks_from_sizes(&axis.sizes),
        axis_split: None,
        label_point,
        groups: Vec::new(),
        chains: Vec::new(),
    })
}

fn blocks_from_sizes(sizes: &[usize]) -> Vec<Block> {
    let mut start = 0;
    sizes
        .iter()
        .enumerate()
        .map(|(id, &s)| {
            let b = Block {
                id,
                tag: BlockTag::Run(id),
                start,
                end: start + s,
            };
            start += s;
            b
        })
        .collect()
}

/// Grid layout: the first `ceil(k/2)` paths fix the x-order, the rest the
/// y-order, each through its own run partition.
pub fn layout_split(assignment: &LabelAssignment) -> Result<PointLayout> {
    let k = assignment.labels.len();
    if k < 2 {
        return layout_case2(assignment);
    }
    let q1: Vec<usize> = (0..k.div_ceil(2)).collect();
    let q2: Vec<usize> = (k.div_ceil(2)..k).collect();
    let (x, y) = rayon::join(|| axis_order(assignment, &q1), || axis_order(assignment, &q2));
    let (x, y) = (x?, y?);
    let xs = block_abscissas(&x.sizes);
    let ys = block_abscissas(&y.sizes);
    let n = x.labels.len();
    let mut x_of = vec![0; n];
    let mut y_rank = vec![0; n];
    for (i, &l) in x.labels.iter().enumerate() {
        x_of[l] = i;
    }
    for (i, &l) in y.labels.iter().enumerate() {
        y_rank[l] = i;
    }
    let points: Vec<LayoutPoint> = x
        .labels
        .iter()
        .map(|&l| LayoutPoint {
            location: Point::new(int(xs[x_of[l]]), int(ys[y_rank[l]])),
            block: x.run_of_label[l],
            kind: SlotKind::Grid,
            color: None,
            chain: None,
        })
        .collect();
    let y_order: Vec<usize> = y.labels.iter().map(|&l| x_of[l]).collect();
    Ok(PointLayout {
        kind: LayoutKind::Split,
        points,
        blocks: blocks_from_sizes(&x.sizes),
        axis_split: Some(AxisSplit {
            x_paths: q1,
            y_paths: q2,
            x_arity: x.arity,
            y_arity: y.arity,
            y_order,
            y_blocks: blocks_from_sizes(&y.sizes),
        }),
        label_point: x_of,
        groups: Vec::new(),
        chains: Vec::new(),
    })
}

/// Colors sorted by id and cut into consecutive groups of `ceil(c/b)`.
pub fn color_groups(colors: &BTreeSet<Color>, b: usize) -> Result<Vec<Vec<Color>>> {
    if b == 0 {
        return Err(Error::Parameter("b must be at least 1".into()));
    }
    let all: Vec<Color> = colors.iter().copied().collect();
    if all.is_empty() {
        return Ok(Vec::new());
    }
    let size = all.len().div_ceil(b);
    Ok(all.chunks(size).map(<[Color]>::to_vec).collect())
}

/// Segment `j` holds `N_j` chains, each one point per color of group `j`.
pub fn layout_chains(paths: &[SpinalPath], b: usize) -> Result<PointLayout> {
    check_paths(paths)?;
    let colors: BTreeSet<Color> = paths.iter().flat_map(|p| p.colors.iter().copied()).collect();
    let groups = color_groups(&colors, b)?;
    let group_of: BTreeMap<Color, usize> = groups
        .iter()
        .enumerate()
        .flat_map(|(j, g)| g.iter().map(move |&c| (c, j)))
        .collect();
    let mut n_j = vec![0usize; groups.len()];
    if let Some(p) = paths.first() {
        for c in &p.colors {
            n_j[group_of[c]] += 1;
        }
    }
    let sizes: Vec<usize> = groups.iter().zip(&n_j).map(|(g, &n)| g.len() * n).collect();
    let xs = block_abscissas(&sizes);
    let mut points = Vec::with_capacity(xs.len());
    let mut blocks = Vec::new();
    let mut chains = Vec::new();
    for (j, g) in groups.iter().enumerate() {
        let start = points.len();
        for _ in 0..n_j[j] {
            let chain_start = points.len();
            for &c in g {
                points.push(LayoutPoint {
                    location: Point::new(int(xs[points.len()]), int(0)),
                    block: j,
                    kind: SlotKind::Chain,
                    color: Some(c),
                    chain: Some(chains.len()),
                });
            }
            chains.push(ChainSlot {
                group: j,
                start: chain_start,
                end: points.len(),
            });
        }
        blocks.push(Block {
            id: j,
            tag: BlockTag::Group(j),
            start,
            end: points.len(),
        });
    }
    Ok(PointLayout {
        kind: LayoutKind::Chains,
        points,
        blocks,
        axis_split: None,
        label_point: Vec::new(),
        groups,
        chains,
    })
}
