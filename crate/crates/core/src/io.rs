//! Versioned JSON documents read and written by the command-line tool.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::bookembed::BookEmbedding;
use crate::engine::Embedding;
use crate::error::{Error, Result};
use crate::expand::GraphDrawing;
use crate::graph::{ColoredGraph, ColoredGraphSet};
use crate::layout::PointLayout;
use crate::seqpart::{MonotonicPartition, TupleSequence};
use crate::uphill::UphillDrawing;

pub const FORMAT: &str = "simulembed/1";

fn check_format(format: &Option<String>) -> Result<()> {
    match format.as_deref() {
        None | Some(FORMAT) => Ok(()),
        Some(other) => Err(Error::MalformedInput(format!("unsupported format {other:?}"))),
    }
}

fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::MalformedInput(e.to_string()))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("documents serialize");
    s.push('\n');
    s
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphSetDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<String>,
    pub palette: u32,
    pub graphs: Vec<ColoredGraph>,
}

/// Reads a graph set; the `format` field is optional on input.
pub fn parse_graph_set(text: &str) -> Result<ColoredGraphSet> {
    let doc: GraphSetDocument = parse(text)?;
    check_format(&doc.format)?;
    let set = ColoredGraphSet {
        palette: doc.palette,
        graphs: doc.graphs,
    };
    set.validate()?;
    Ok(set)
}

pub fn graph_set_json(set: &ColoredGraphSet) -> String {
    to_json(&GraphSetDocument {
        format: Some(FORMAT.into()),
        palette: set.palette,
        graphs: set.graphs.clone(),
    })
}

/// Everything an embedding run produces, enough to re-verify it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EmbeddingDocument {
    pub format: String,
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<usize>,
    pub input: GraphSetDocument,
    pub layout: PointLayout,
    pub books: Vec<BookEmbedding>,
    pub uphill: Vec<UphillDrawing>,
    pub drawings: Vec<GraphDrawing>,
}

impl EmbeddingDocument {
    pub fn new(mode: &str, b: Option<usize>, set: &ColoredGraphSet, emb: &Embedding) -> Self {
        EmbeddingDocument {
            format: FORMAT.into(),
            mode: mode.into(),
            b,
            input: GraphSetDocument {
                format: None,
                palette: set.palette,
                graphs: set.graphs.clone(),
            },
            layout: emb.layout.clone(),
            books: emb.books.clone(),
            uphill: emb.uphill.clone(),
            drawings: emb.drawings.clone(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: EmbeddingDocument = parse(text)?;
        check_format(&Some(doc.format.clone()))?;
        Ok(doc)
    }

    pub fn graph_set(&self) -> Result<ColoredGraphSet> {
        let set = ColoredGraphSet {
            palette: self.input.palette,
            graphs: self.input.graphs.clone(),
        };
        set.validate()?;
        Ok(set)
    }

    /// The stored pieces as an [`Embedding`]; spinal paths are not stored.
    pub fn embedding(&self) -> Embedding {
        Embedding {
            layout: self.layout.clone(),
            books: self.books.clone(),
            paths: Vec::new(),
            uphill: self.uphill.clone(),
            drawings: self.drawings.clone(),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum SequenceInput {
    Values(Vec<i64>),
    Tuples(Vec<Vec<i64>>),
    Keyed {
        #[serde(default)]
        format: Option<String>,
        #[serde(default)]
        values: Option<Vec<i64>>,
        #[serde(default)]
        tuples: Option<Vec<Vec<i64>>>,
    },
}

/// Reads `[1,2,..]`, `[[1,2],..]`, `{"values":[..]}` or `{"tuples":[[..],..]}`.
pub fn parse_sequence(text: &str) -> Result<TupleSequence> {
    let input: SequenceInput = parse(text)?;
    let tuples: Vec<Vec<i64>> = match input {
        SequenceInput::Values(v) => v.into_iter().map(|x| vec![x]).collect(),
        SequenceInput::Tuples(t) => t,
        SequenceInput::Keyed { format, values, tuples } => {
            check_format(&format)?;
            match (values, tuples) {
                (Some(v), None) => v.into_iter().map(|x| vec![x]).collect(),
                (None, Some(t)) => t,
                _ => return Err(Error::MalformedInput("give exactly one of values or tuples".into())),
            }
        }
    };
    TupleSequence::new(&tuples)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartitionDocument {
    pub format: String,
    pub n: usize,
    pub arity: usize,
    pub delta: f64,
    pub runs: Vec<crate::seqpart::MonotonicRun>,
}

impl PartitionDocument {
    pub fn new(seq: &TupleSequence, delta: f64, p: &MonotonicPartition) -> Self {
        PartitionDocument {
            format: FORMAT.into(),
            n: seq.len(),
            arity: seq.arity(),
            delta,
            runs: p.runs.clone(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph_set_round_trip() {
        let text = r#"{"palette":2,"graphs":[{"vertices":[{"id":0,"color":1},{"id":1,"color":2}],"edges":[[0,1]]}]}"#;
        let set = parse_graph_set(text).unwrap();
        assert_eq!(set.graphs[0].edges, vec![(0, 1)]);
        let again = parse_graph_set(&graph_set_json(&set)).unwrap();
        assert_eq!(set, again);
        assert!(matches!(parse_graph_set("{"), Err(Error::MalformedInput(_))));
        let wrong = r#"{"format":"other/2","palette":1,"graphs":[]}"#;
        assert!(parse_graph_set(wrong).is_err());
    }

    #[test]
    fn sequence_shapes() {
        assert_eq!(parse_sequence("[3,1,2]").unwrap().len(), 3);
        assert_eq!(parse_sequence("[[1,2],[3,4]]").unwrap().arity(), 2);
        assert_eq!(parse_sequence(r#"{"values":[1]}"#).unwrap().len(), 1);
        assert!(parse_sequence(r#"{"values":[1],"tuples":[[1]]}"#).is_err());
    }
}
