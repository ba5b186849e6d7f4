//! Seeded random inputs: planar graphs from sweep triangulations of random
//! points with random edge deletion, and compatible colorings.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Color, ColoredGraph, ColoredGraphSet, Vertex};

fn cross(a: (i64, i64), b: (i64, i64), p: (i64, i64)) -> i128 {
    (b.0 - a.0) as i128 * (p.1 - a.1) as i128 - (b.1 - a.1) as i128 * (p.0 - a.0) as i128
}

/// Straight-line triangulation of `n` random points (distinct abscissas),
/// keeping each edge with probability `keep`. Vertex indices are shuffled.
pub fn random_planar_edges<R: Rng>(n: usize, keep: f64, rng: &mut R) -> Vec<(usize, usize)> {
    if n < 2 {
        return Vec::new();
    }
    let span = (n as i64) * 8;
    let mut xs: Vec<i64> = (0..span).collect();
    xs.shuffle(rng);
    xs.truncate(n);
    xs.sort_unstable();
    let pts: Vec<(i64, i64)> = xs.iter().map(|&x| (x, rng.gen_range(0..span))).collect();
    let mut edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut add = |a: usize, b: usize| {
        edges.insert((a.min(b), a.max(b)));
    };
    let mut upper = vec![0usize];
    let mut lower = vec![0usize];
    for p in 1..n {
        add(p, *upper.last().unwrap());
        while upper.len() >= 2 {
            let (a, b) = (upper[upper.len() - 2], upper[upper.len() - 1]);
            if cross(pts[a], pts[b], pts[p]) <= 0 {
                break;
            }
            add(p, a);
            upper.pop();
        }
        upper.push(p);
        add(p, *lower.last().unwrap());
        while lower.len() >= 2 {
            let (a, b) = (lower[lower.len() - 2], lower[lower.len() - 1]);
            if cross(pts[a], pts[b], pts[p]) >= 0 {
                break;
            }
            add(p, a);
            lower.pop();
        }
        lower.push(p);
    }
    let mut relabel: Vec<usize> = (0..n).collect();
    relabel.shuffle(rng);
    let mut out: Vec<(usize, usize)> = edges
        .into_iter()
        .filter(|_| rng.gen_bool(keep.clamp(0.0, 1.0)))
        .map(|(a, b)| (relabel[a], relabel[b]))
        .collect();
    out.sort_unstable();
    out
}

/// `n` color labels over `1..=c`, every color used at least once when `c <= n`.
pub fn random_color_multiset<R: Rng>(n: usize, c: u32, rng: &mut R) -> Vec<Color> {
    let mut colors: Vec<Color> = (1..=c).take(n).collect();
    while colors.len() < n {
        colors.push(rng.gen_range(1..=c));
    }
    colors.sort_unstable();
    colors
}

/// `k` random planar graphs on `n` vertices sharing one color multiset.
pub fn random_compatible_set<R: Rng>(n: usize, k: usize, c: u32, keep: f64, rng: &mut R) -> ColoredGraphSet {
    let multiset = random_color_multiset(n, c, rng);
    let graphs = (0..k)
        .map(|_| {
            let mut colors = multiset.clone();
            colors.shuffle(rng);
            let vertices = colors
                .iter()
                .enumerate()
                .map(|(i, &color)| Vertex { id: i as i64, color })
                .collect();
            let edges = random_planar_edges(n, keep, rng)
                .into_iter()
                .map(|(a, b)| (a as i64, b as i64))
                .collect();
            ColoredGraph::new(vertices, edges).expect("generated graph is simple")
        })
        .collect();
    ColoredGraphSet::new(c, graphs).expect("generated set is valid")
}
