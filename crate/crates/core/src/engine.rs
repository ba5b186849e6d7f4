//! The end-to-end pipeline: book embeddings, spinal paths, a shared layout,
//! uphill drawings and their expansion.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bookembed::{embed_all, extract_spinal_paths, BookEmbedding, SpinalPath};
use crate::error::Result;
use crate::expand::{expand_drawing, GraphDrawing};
use crate::graph::ColoredGraphSet;
use crate::layout::{build_tuples, layout_case1, layout_case2, layout_chains, layout_split, PointLayout};
use crate::uphill::{draw_path_case1, draw_path_chains, draw_paths_split, UphillDrawing};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EmbedOptions {
    /// Draw half of the paths against the y-axis.
    pub split: bool,
}

impl Default for EmbedOptions {
    fn default() -> Self {
        EmbedOptions { split: true }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Embedding {
    pub layout: PointLayout,
    pub books: Vec<BookEmbedding>,
    pub paths: Vec<SpinalPath>,
    pub uphill: Vec<UphillDrawing>,
    pub drawings: Vec<GraphDrawing>,
}

impl Embedding {
    pub fn max_bends(&self) -> usize {
        self.drawings.iter().map(GraphDrawing::max_bends).max().unwrap_or(0)
    }

    pub fn uphill_max_bends(&self) -> usize {
        self.uphill.iter().map(UphillDrawing::max_bends).max().unwrap_or(0)
    }
}

fn finish(set: &ColoredGraphSet, books: Vec<BookEmbedding>, paths: Vec<SpinalPath>, layout: PointLayout, uphill: Vec<UphillDrawing>) -> Result<Embedding> {
    let drawings = set
        .graphs
        .par_iter()
        .zip(books.par_iter())
        .zip(uphill.par_iter())
        .map(|((g, be), ud)| expand_drawing(g, be, ud))
        .collect::<Result<Vec<_>>>()?;
    Ok(Embedding {
        layout,
        books,
        paths,
        uphill,
        drawings,
    })
}

fn prepare(set: &ColoredGraphSet) -> Result<(Vec<BookEmbedding>, Vec<SpinalPath>)> {
    set.validate()?;
    set.require_compatible()?;
    let books = embed_all(set)?;
    let paths = extract_spinal_paths(set, &books)?;
    Ok((books, paths))
}

/// Draws the set on color blocks and on run blocks (or the two-axis grid)
/// and keeps whichever has fewer bends per edge; ties go to color blocks.
pub fn embed(set: &ColoredGraphSet, opts: EmbedOptions) -> Result<Embedding> {
    let (books, paths) = prepare(set)?;
    let l1 = layout_case1(&paths)?;
    let ud1 = paths
        .par_iter()
        .map(|p| draw_path_case1(p, &l1))
        .collect::<Result<Vec<_>>>()?;
    let first = finish(set, books.clone(), paths.clone(), l1, ud1)?;
    let asg = build_tuples(&paths)?;
    let l2 = if opts.split { layout_split(&asg)? } else { layout_case2(&asg)? };
    let ud2 = draw_paths_split(&asg, &l2)?;
    let second = finish(set, books, paths, l2, ud2)?;
    Ok(if second.max_bends() < first.max_bends() {
        second
    } else {
        first
    })
}

/// Draws the set on the chains layout with `b` color groups.
pub fn embed_chains(set: &ColoredGraphSet, b: usize) -> Result<Embedding> {
    let (books, paths) = prepare(set)?;
    let layout = layout_chains(&paths, b)?;
    let uphill = paths
        .par_iter()
        .map(|p| draw_path_chains(p, &layout))
        .collect::<Result<Vec<_>>>()?;
    finish(set, books, paths, layout, uphill)
}
