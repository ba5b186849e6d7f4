//! Seeded bend-versus-size audits.

use std::fmt::Write as _;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::engine::{embed, EmbedOptions};
use crate::error::Result;
use crate::generate::random_compatible_set;
use crate::layout::LayoutKind;
use crate::verify::bend_budget;

/// Probability of keeping a triangulation edge in generated graphs.
pub const KEEP: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Cell {
    pub n: usize,
    pub k: usize,
    pub c: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub cell: Cell,
    pub gamma: u64,
    pub layout: LayoutKind,
    pub blocks: usize,
    pub max_bends: usize,
    pub uphill_max_bends: usize,
    pub budget: f64,
    pub implied: f64,
}

/// The default grid: `k = 2` with `c = n` and with `c = 4`, `n` in 64, 256, 1024.
pub fn default_grid() -> Vec<Cell> {
    let mut cells = Vec::new();
    for c in [None, Some(4)] {
        for n in [64, 256, 1024] {
            cells.push(Cell { n, k: 2, c: c.unwrap_or(n) });
        }
    }
    cells
}

pub fn cell_rng(seed: u64, cell: Cell) -> ChaCha8Rng {
    let mix = (cell.n as u64) << 32 ^ (cell.k as u64) << 16 ^ cell.c as u64;
    ChaCha8Rng::seed_from_u64(seed ^ mix.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn run_cell(seed: u64, cell: Cell, opts: EmbedOptions) -> Result<Row> {
    let set = random_compatible_set(cell.n, cell.k, cell.c as u32, KEEP, &mut cell_rng(seed, cell));
    let e = embed(&set, opts)?;
    let budget = bend_budget(cell.n, cell.k, cell.c);
    let max_bends = e.max_bends();
    Ok(Row {
        cell,
        gamma: 1 << cell.k.div_ceil(2),
        layout: e.layout.kind,
        blocks: e.layout.worst_block_count(),
        max_bends,
        uphill_max_bends: e.uphill_max_bends(),
        budget,
        implied: max_bends as f64 / budget,
    })
}

pub fn run_grid(seed: u64, cells: &[Cell], opts: EmbedOptions) -> Result<Vec<Row>> {
    cells.par_iter().map(|&c| run_cell(seed, c, opts)).collect()
}

pub fn rows_csv(rows: &[Row]) -> String {
    let mut out = String::from("n,k,c,gamma,layout,blocks,max_bends,uphill_max_bends,budget,implied_constant\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{:?},{},{},{},{:.4},{:.4}",
            r.cell.n, r.cell.k, r.cell.c, r.gamma, r.layout, r.blocks, r.max_bends, r.uphill_max_bends, r.budget, r.implied
        );
    }
    out
}
