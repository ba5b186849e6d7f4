//! Monotonic subsequences of integer multisets and of integer k-tuple sequences.
//!
//! Everything here is built on one primitive: the longest non-decreasing and
//! longest non-increasing subsequence of a sub-selection of positions, computed
//! with patience sorting in `O(m log m)`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{rat, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "nondec")]
    NonDecreasing,
    #[serde(rename = "noninc")]
    NonIncreasing,
}

impl Direction {
    /// Whether `a` followed by `b` respects this direction.
    pub fn admits(self, a: i64, b: i64) -> bool {
        match self {
            Direction::NonDecreasing => a <= b,
            Direction::NonIncreasing => a >= b,
        }
    }
}

/// An ordered list of integer k-tuples stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleSequence {
    arity: usize,
    values: Vec<i64>,
}

impl TupleSequence {
    pub fn new(tuples: &[Vec<i64>]) -> Result<Self> {
        let arity = tuples.first().map_or(1, Vec::len);
        if arity == 0 {
            return Err(Error::MalformedInput("tuples must have arity >= 1".into()));
        }
        let mut values = Vec::with_capacity(arity * tuples.len());
        for (i, t) in tuples.iter().enumerate() {
            if t.len() != arity {
                return Err(Error::MalformedInput(format!(
                    "tuple {i} has {} entries, expected {arity}",
                    t.len()
                )));
            }
            values.extend_from_slice(t);
        }
        Ok(TupleSequence { arity, values })
    }

    /// Builds the sequence whose `d`-th dimension is `dims[d]`.
    pub fn from_dimensions(dims: &[Vec<i64>]) -> Result<Self> {
        let arity = dims.len();
        if arity == 0 {
            return Err(Error::MalformedInput("at least one dimension required".into()));
        }
        let n = dims[0].len();
        if dims.iter().any(|d| d.len() != n) {
            return Err(Error::MalformedInput("dimensions differ in length".into()));
        }
        let values = (0..n).flat_map(|i| dims.iter().map(move |d| d[i])).collect();
        Ok(TupleSequence { arity, values })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.values.len() / self.arity
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn tuple(&self, i: usize) -> &[i64] {
        &self.values[i * self.arity..(i + 1) * self.arity]
    }

    pub fn get(&self, i: usize, dim: usize) -> i64 {
        self.values[i * self.arity + dim]
    }

    pub fn dimension(&self, dim: usize) -> Vec<i64> {
        (0..self.len()).map(|i| self.get(i, dim)).collect()
    }
}

/// Strictly increasing positions into a source sequence together with the
/// direction in which every dimension is monotonic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotonicRun {
    pub indices: Vec<usize>,
    pub directions: Vec<Direction>,
}

impl MonotonicRun {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotonicPartition {
    pub runs: Vec<MonotonicRun>,
    #[serde(skip)]
    pub source_len: usize,
}

impl MonotonicPartition {
    pub fn len(&self) -> usize {
        self.runs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    /// For every source position, the index of the run containing it.
    pub fn run_of(&self) -> Vec<usize> {
        let mut owner = vec![usize::MAX; self.source_len];
        for (r, run) in self.runs.iter().enumerate() {
            for &i in &run.indices {
                owner[i] = r;
            }
        }
        owner
    }
}

// Longest non-decreasing subsequence of `positions`, keyed by `key`.
// Returns offsets into `positions`.
fn longest_nondecreasing(positions: &[usize], key: &impl Fn(usize) -> i64) -> Vec<usize> {
    if positions.is_empty() {
        return Vec::new();
    }
    let mut tops: Vec<usize> = Vec::new();
    let mut top_keys: Vec<i64> = Vec::new();
    let mut prev = vec![usize::MAX; positions.len()];
    for (off, &p) in positions.iter().enumerate() {
        let v = key(p);
        // first pile whose top is strictly greater than v
        let slot = top_keys.partition_point(|&t| t <= v);
        if slot > 0 {
            prev[off] = tops[slot - 1];
        }
        if slot == tops.len() {
            tops.push(off);
            top_keys.push(v);
        } else {
            tops[slot] = off;
            top_keys[slot] = v;
        }
    }
    let mut out = vec![0; tops.len()];
    let mut cur = *tops.last().expect("non-empty");
    for slot in out.iter_mut().rev() {
        *slot = cur;
        cur = prev[cur];
    }
    out
}

/// Longest monotonic subsequence of the selected positions. Ties between the
/// two directions go to non-decreasing.
fn longest_among(positions: &[usize], key: impl Fn(usize) -> i64) -> (Vec<usize>, Direction) {
    let up = longest_nondecreasing(positions, &key);
    let down = longest_nondecreasing(positions, &|p| -key(p));
    let (offs, dir) = if down.len() > up.len() {
        (down, Direction::NonIncreasing)
    } else {
        (up, Direction::NonDecreasing)
    };
    (offs.into_iter().map(|o| positions[o]).collect(), dir)
}

/// Maximum-length monotonic subsequence (either direction).
pub fn longest_monotonic_run(seq: &[i64]) -> Result<MonotonicRun> {
    if seq.is_empty() {
        return Err(Error::EmptySequence);
    }
    let all: Vec<usize> = (0..seq.len()).collect();
    let (indices, dir) = longest_among(&all, |i| seq[i]);
    Ok(MonotonicRun {
        indices,
        directions: vec![dir],
    })
}

/// Makes all values distinct: the `j`-th occurrence (1-based) of a value that
/// occurs `m` times is shifted up by `j/(m+1)`.
pub fn tie_break_perturb(seq: &[i64]) -> Result<Vec<Rational>> {
    if seq.is_empty() {
        return Err(Error::EmptySequence);
    }
    let mut total: HashMap<i64, i64> = HashMap::new();
    for &v in seq {
        *total.entry(v).or_default() += 1;
    }
    let mut seen: HashMap<i64, i64> = HashMap::new();
    Ok(seq
        .iter()
        .map(|&v| {
            let j = seen.entry(v).or_default();
            *j += 1;
            Rational::from_integer(v) + rat(*j, total[&v] + 1)
        })
        .collect())
}

fn check_delta(delta: f64) -> Result<()> {
    if delta > 0.0 && delta < 1.0 {
        Ok(())
    } else {
        Err(Error::Parameter(format!("delta must lie in (0,1), got {delta}")))
    }
}

/// `d * n^(1-delta) / (1-delta)` with `d = 2(1-delta)+1`.
pub fn recurse_bound(n: usize, delta: f64) -> f64 {
    let d = 2.0 * (1.0 - delta) + 1.0;
    d * (n as f64).powf(1.0 - delta) / (1.0 - delta)
}

/// `n^(1-delta^k) / (1-delta^k)`, the tuple-partition bound without its constant.
pub fn tuple_bound_unit(n: usize, delta: f64, k: usize) -> f64 {
    let e = delta.powi(k as i32);
    (n as f64).powf(1.0 - e) / (1.0 - e)
}

fn partition_by<F>(n: usize, mut extract: F) -> MonotonicPartition
where
    F: FnMut(&[usize]) -> MonotonicRun,
{
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut taken = vec![false; n];
    let mut runs = Vec::new();
    while !remaining.is_empty() {
        let run = extract(&remaining);
        debug_assert!(!run.is_empty());
        for &i in &run.indices {
            taken[i] = true;
        }
        remaining.retain(|&i| !taken[i]);
        runs.push(run);
    }
    MonotonicPartition { runs, source_len: n }
}

/// Repeatedly removes a longest monotonic subsequence until nothing is left.
pub fn greedy_partition(seq: &[i64], delta: f64) -> Result<MonotonicPartition> {
    check_delta(delta)?;
    if seq.is_empty() {
        return Err(Error::EmptySequence);
    }
    Ok(partition_by(seq.len(), |rem| {
        let (indices, dir) = longest_among(rem, |i| seq[i]);
        MonotonicRun {
            indices,
            directions: vec![dir],
        }
    }))
}

/// Partitions k-tuples into runs that are monotonic in every dimension.
///
/// Each extraction narrows the remaining tuples dimension by dimension: a
/// longest monotonic subsequence in dimension 0, then within it a longest one
/// in dimension 1, and so on.
pub fn tuple_partition(seq: &TupleSequence, delta: f64) -> Result<MonotonicPartition> {
    check_delta(delta)?;
    if seq.is_empty() {
        return Err(Error::EmptySequence);
    }
    Ok(partition_by(seq.len(), |rem| {
        let mut cand = rem.to_vec();
        let mut directions = Vec::with_capacity(seq.arity());
        for d in 0..seq.arity() {
            let (sub, dir) = longest_among(&cand, |i| seq.get(i, d));
            cand = sub;
            directions.push(dir);
        }
        MonotonicRun {
            indices: cand,
            directions,
        }
    }))
}

/// Measured constant `C` such that `runs = C * n^(1-delta^k)/(1-delta^k)`.
pub fn tuple_implied_constant(runs: usize, n: usize, delta: f64, k: usize) -> f64 {
    runs as f64 / tuple_bound_unit(n, delta, k)
}

pub fn ceil_sqrt(n: usize) -> usize {
    let mut s = (n as f64).sqrt() as usize;
    while s * s < n {
        s += 1;
    }
    while s > 0 && (s - 1) * (s - 1) >= n {
        s -= 1;
    }
    s
}

pub fn floor_sqrt(n: usize) -> usize {
    let mut s = (n as f64).sqrt() as usize;
    while s * s > n {
        s -= 1;
    }
    while (s + 1) * (s + 1) <= n {
        s += 1;
    }
    s
}

/// `max{ceil(sqrt n), ceil(sqrt c + n/c - 2)}`, exact when `c` is a perfect square.
pub fn lemma_main_bound(n: usize, c: usize) -> usize {
    let a = ceil_sqrt(n);
    if c == 0 {
        return a;
    }
    let r = floor_sqrt(c);
    let b = if r * r == c {
        // r + ceil(n/c) - 2, clamped at zero
        (r + n.div_ceil(c)).saturating_sub(2)
    } else {
        let v = (c as f64).sqrt() + n as f64 / c as f64 - 2.0;
        v.max(0.0).ceil() as usize
    };
    a.max(b)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaMainOutcome {
    /// The better of the constructive run and a longest monotonic run.
    pub run: MonotonicRun,
    /// Output of the representative-based construction, when it could run.
    pub constructive: Option<MonotonicRun>,
    pub distinct: usize,
    /// `n = kc+1` with `c` a perfect square.
    pub preconditions_hold: bool,
    pub bound: usize,
}

struct Representative {
    index: usize,
    value: i64,
    members: Vec<usize>,
    direction: Direction,
}

// Earliest monotonic subsequence of length `len` inside `window` (source
// positions): the one whose last element has minimum position.
fn earliest_monotonic(seq: &[i64], window: &[usize], len: usize) -> Option<(Vec<usize>, Direction)> {
    let w = window.len();
    let mut up = vec![1usize; w];
    let mut up_prev = vec![usize::MAX; w];
    let mut down = vec![1usize; w];
    let mut down_prev = vec![usize::MAX; w];
    for e in 0..w {
        let ve = seq[window[e]];
        for j in 0..e {
            let vj = seq[window[j]];
            if vj <= ve && up[j] + 1 > up[e] {
                up[e] = up[j] + 1;
                up_prev[e] = j;
            }
            if vj >= ve && down[j] + 1 > down[e] {
                down[e] = down[j] + 1;
                down_prev[e] = j;
            }
        }
        let pick = if up[e] >= len {
            Some((&up_prev, Direction::NonDecreasing))
        } else if down[e] >= len {
            Some((&down_prev, Direction::NonIncreasing))
        } else {
            None
        };
        if let Some((prev, dir)) = pick {
            let mut out = Vec::with_capacity(len);
            let mut cur = e;
            for _ in 0..len {
                out.push(window[cur]);
                cur = prev[cur];
            }
            out.reverse();
            return Some((out, dir));
        }
    }
    None
}

// The representative construction on `seq[..prefix]` with window size c+1 and
// target length floor(sqrt c).
fn representative_construction(seq: &[i64], prefix: usize, c: usize) -> Option<MonotonicRun> {
    if c == 0 || prefix < c + 1 {
        return None;
    }
    let target = floor_sqrt(c).max(1);
    let mut alive: Vec<usize> = (0..prefix).collect();
    let mut reps: Vec<Representative> = Vec::new();
    while alive.len() > c {
        let window = &alive[..=c];
        let (members, direction) = earliest_monotonic(seq, window, target)?;
        let index = *members.last().expect("target >= 1");
        reps.push(Representative {
            index,
            value: seq[index],
            members,
            direction,
        });
        alive.retain(|&i| i != index);
    }
    let mut freq: HashMap<i64, usize> = HashMap::new();
    for r in &reps {
        *freq.entry(r.value).or_default() += 1;
    }
    // most frequent value; ties resolved by first appearance among representatives
    let best = reps
        .iter()
        .map(|r| r.value)
        .max_by(|a, b| freq[a].cmp(&freq[b]).then(std::cmp::Ordering::Greater))?;
    let chosen: Vec<&Representative> = reps.iter().filter(|r| r.value == best).collect();
    let earliest = chosen.iter().min_by_key(|r| r.index)?;
    let mut indices = earliest.members.clone();
    indices.extend(chosen.iter().filter(|r| r.index != earliest.index).map(|r| r.index));
    indices.sort_unstable();
    Some(MonotonicRun {
        indices,
        directions: vec![earliest.direction],
    })
}

/// Long monotonic subsequence of a multiset with few distinct values.
///
/// Runs the representative construction (earliest `sqrt(c)`-runs in windows
/// of `c+1`, then the most frequent representative value) and returns the
/// longer of its output and a longest monotonic run. When `n != kc+1` or `c`
/// is not a perfect square the construction runs on the longest prefix of
/// length `kc+1` with window target `floor(sqrt c)`, and `preconditions_hold`
/// is false.
pub fn lemma_main_extract(seq: &[i64]) -> Result<LemmaMainOutcome> {
    let longest = longest_monotonic_run(seq)?;
    let n = seq.len();
    let mut distinct: Vec<i64> = seq.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    let c = distinct.len();
    let r = floor_sqrt(c);
    let preconditions_hold = r * r == c && n > c && (n - 1).is_multiple_of(c);
    let prefix = if n > c { ((n - 1) / c) * c + 1 } else { 0 };
    let constructive = representative_construction(seq, prefix, c);
    let run = match &constructive {
        Some(cr) if cr.len() > longest.len() => cr.clone(),
        _ => longest,
    };
    Ok(LemmaMainOutcome {
        run,
        constructive,
        distinct: c,
        preconditions_hold,
        bound: lemma_main_bound(n, c),
    })
}
