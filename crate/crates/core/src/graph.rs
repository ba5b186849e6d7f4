//! Colored input graphs and the compatibility condition between them.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::bookembed::{PageRecord, SpineItem};
use crate::error::{Error, Result};

pub type VertexId = i64;
pub type Color = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub id: VertexId,
    pub color: Color,
}

/// A simple graph whose vertices carry colors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(VertexId, VertexId)>,
    /// Optional precomputed spine order, used together with `pages`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spine: Option<Vec<SpineItem>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pages: Option<Vec<PageRecord>>,
}

impl ColoredGraph {
    pub fn new(vertices: Vec<Vertex>, edges: Vec<(VertexId, VertexId)>) -> Result<Self> {
        let g = ColoredGraph {
            vertices,
            edges,
            spine: None,
            pages: None,
        };
        g.validate()?;
        Ok(g)
    }

    /// Checks ids are unique and the edge set is simple.
    pub fn validate(&self) -> Result<()> {
        let mut ids = HashSet::new();
        for v in &self.vertices {
            if !ids.insert(v.id) {
                return Err(Error::MalformedInput(format!("duplicate vertex id {}", v.id)));
            }
        }
        let mut seen = HashSet::new();
        for &(a, b) in &self.edges {
            if a == b {
                return Err(Error::MalformedInput(format!("self-loop at vertex {a}")));
            }
            if !ids.contains(&a) || !ids.contains(&b) {
                return Err(Error::MalformedInput(format!("edge ({a},{b}) names an unknown vertex")));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::MalformedInput(format!("duplicate edge ({a},{b})")));
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    /// Vertex id to dense index.
    pub fn index_map(&self) -> HashMap<VertexId, usize> {
        self.vertices.iter().enumerate().map(|(i, v)| (v.id, i)).collect()
    }

    /// Edges as pairs of dense indices.
    pub fn dense_edges(&self) -> Vec<(usize, usize)> {
        let idx = self.index_map();
        self.edges.iter().map(|&(a, b)| (idx[&a], idx[&b])).collect()
    }

    pub fn color_counts(&self) -> BTreeMap<Color, usize> {
        let mut counts = BTreeMap::new();
        for v in &self.vertices {
            *counts.entry(v.color).or_insert(0) += 1;
        }
        counts
    }
}

/// `k` colored graphs over a palette of colors `1..=palette`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoredGraphSet {
    pub palette: u32,
    pub graphs: Vec<ColoredGraph>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub color: Color,
    pub graph: usize,
    pub expected: usize,
    pub found: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CompatibilityReport {
    pub compatible: bool,
    pub violations: Vec<Violation>,
}

impl ColoredGraphSet {
    pub fn new(palette: u32, graphs: Vec<ColoredGraph>) -> Result<Self> {
        let set = ColoredGraphSet { palette, graphs };
        set.validate()?;
        Ok(set)
    }

    /// Structural validation of every graph and of the color range.
    pub fn validate(&self) -> Result<()> {
        if self.graphs.is_empty() {
            return Err(Error::MalformedInput("no graphs given".into()));
        }
        for (gi, g) in self.graphs.iter().enumerate() {
            g.validate()
                .map_err(|e| Error::MalformedInput(format!("graph {gi}: {e}")))?;
            if let Some(v) = g.vertices.iter().find(|v| v.color == 0 || v.color > self.palette) {
                return Err(Error::MalformedInput(format!(
                    "graph {gi}: vertex {} has color {} outside 1..={}",
                    v.id, v.color, self.palette
                )));
            }
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.graphs.len()
    }

    /// Compares every graph's per-color counts (and vertex count) against the
    /// first graph.
    pub fn check_compatibility(&self) -> CompatibilityReport {
        let mut violations = Vec::new();
        if let Some(first) = self.graphs.first() {
            let reference = first.color_counts();
            for (gi, g) in self.graphs.iter().enumerate().skip(1) {
                let counts = g.color_counts();
                let colors: std::collections::BTreeSet<Color> =
                    reference.keys().chain(counts.keys()).copied().collect();
                for q in colors {
                    let expected = reference.get(&q).copied().unwrap_or(0);
                    let found = counts.get(&q).copied().unwrap_or(0);
                    if expected != found {
                        violations.push(Violation {
                            color: q,
                            graph: gi,
                            expected,
                            found,
                        });
                    }
                }
            }
        }
        CompatibilityReport {
            compatible: violations.is_empty(),
            violations,
        }
    }

    pub fn require_compatible(&self) -> Result<()> {
        let report = self.check_compatibility();
        if report.compatible {
            return Ok(());
        }
        let msg = report
            .violations
            .iter()
            .map(|v| format!("color {} in graph {}: {} vs {}", v.color, v.graph, v.found, v.expected))
            .collect::<Vec<_>>()
            .join("; ");
        Err(Error::Incompatible(msg))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(colors: &[Color]) -> ColoredGraph {
        let vertices = colors
            .iter()
            .enumerate()
            .map(|(i, &c)| Vertex { id: i as i64, color: c })
            .collect();
        ColoredGraph::new(vertices, vec![]).unwrap()
    }

    #[test]
    fn equal_counts_accepted() {
        let set = ColoredGraphSet::new(2, vec![graph(&[1, 1, 1, 2, 2]), graph(&[2, 1, 2, 1, 1])]).unwrap();
        assert!(set.check_compatibility().compatible);
    }

    #[test]
    fn unequal_counts_listed() {
        let set = ColoredGraphSet::new(2, vec![graph(&[1, 1, 1]), graph(&[1, 1, 2])]).unwrap();
        let report = set.check_compatibility();
        assert!(!report.compatible);
        assert_eq!(
            report.violations,
            vec![
                Violation { color: 1, graph: 1, expected: 3, found: 2 },
                Violation { color: 2, graph: 1, expected: 0, found: 1 },
            ]
        );
        assert!(matches!(set.require_compatible(), Err(Error::Incompatible(_))));
    }

    #[test]
    fn single_graph_always_compatible() {
        let set = ColoredGraphSet::new(3, vec![graph(&[1, 3, 3])]).unwrap();
        assert!(set.check_compatibility().compatible);
    }

    #[test]
    fn malformed_graphs_rejected() {
        let v = |id| Vertex { id, color: 1 };
        assert!(ColoredGraph::new(vec![v(0), v(0)], vec![]).is_err());
        assert!(ColoredGraph::new(vec![v(0), v(1)], vec![(0, 0)]).is_err());
        assert!(ColoredGraph::new(vec![v(0), v(1)], vec![(0, 1), (1, 0)]).is_err());
        assert!(ColoredGraph::new(vec![v(0)], vec![(0, 5)]).is_err());
        assert!(ColoredGraphSet::new(1, vec![graph(&[2])]).is_err());
    }
}
