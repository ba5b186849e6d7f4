//! Colored simultaneous embeddings of planar graphs with few bends per edge.

pub mod bookembed;
pub mod engine;
pub mod error;
pub mod expand;
pub mod experiment;
pub mod generate;
pub mod graph;
pub mod io;
pub mod layout;
pub mod planarity;
pub mod rational;
pub mod seqpart;
pub mod svg;
pub mod uphill;
pub mod verify;

pub use error::{Error, Result};
pub use rational::{Point, Rational};
