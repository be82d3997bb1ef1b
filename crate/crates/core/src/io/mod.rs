//! Text formats: graph6/sparse6 for graphs, JSON for systems and records.

pub mod graph6;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::systems::{SystemInstance, VertexSetFamily};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input")]
    Empty,
    #[error("byte {offset}: {msg}")]
    At { offset: usize, msg: String },
    #[error("line {line}, column {column}: {msg}")]
    Json { line: usize, column: usize, msg: String },
}

impl ParseError {
    pub(crate) fn at(offset: usize, msg: impl Into<String>) -> Self {
        ParseError::At { offset, msg: msg.into() }
    }

    pub(crate) fn shifted(self, by: usize) -> Self {
        match self {
            ParseError::At { offset, msg } => ParseError::At { offset: offset + by, msg },
            other => other,
        }
    }

    fn from_json(e: serde_json::Error) -> Self {
        ParseError::Json { line: e.line(), column: e.column(), msg: e.to_string() }
    }
}

/// On-disk shape of a system: host as graph6 plus the family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemFile {
    pub host: String,
    pub sets: Vec<Vec<usize>>,
    pub mults: Vec<usize>,
    pub r: usize,
    #[serde(default)]
    pub t: Option<usize>,
    #[serde(default)]
    pub primed: bool,
    #[serde(default)]
    pub maximal: bool,
}

impl From<&SystemInstance> for SystemFile {
    fn from(s: &SystemInstance) -> Self {
        SystemFile {
            host: graph6::encode(&s.host),
            sets: s.family.sets().to_vec(),
            mults: s.family.mults().to_vec(),
            r: s.r,
            t: s.t,
            primed: s.primed,
            maximal: s.maximal,
        }
    }
}

impl SystemFile {
    pub fn into_instance(self) -> Result<SystemInstance, ParseError> {
        let host = graph6::decode_any(self.host.as_bytes())?;
        let family = VertexSetFamily::new(self.sets, self.mults)
            .map_err(|e| ParseError::Json { line: 0, column: 0, msg: e.to_string() })?;
        if let Some((i, v)) = family.first_out_of_range(host.n()) {
            return Err(ParseError::Json {
                line: 0,
                column: 0,
                msg: format!("set {i} contains vertex {v} outside host of order {}", host.n()),
            });
        }
        Ok(SystemInstance {
            host,
            family,
            r: self.r,
            t: self.t,
            primed: self.primed,
            maximal: self.maximal,
        })
    }
}

pub fn system_to_json(s: &SystemInstance) -> String {
    serde_json::to_string(&SystemFile::from(s)).expect("system serializes")
}

pub fn system_from_json(text: &str) -> Result<SystemInstance, ParseError> {
    let file: SystemFile = serde_json::from_str(text).map_err(ParseError::from_json)?;
    file.into_instance()
}

/// Parsed `verify` input: a bare graph or a system.
#[derive(Debug, Clone)]
pub enum Input {
    Graph(Graph),
    System(SystemInstance),
}

/// JSON objects are systems; everything else is graph6 or sparse6.
pub fn parse_input(text: &str) -> Result<Input, ParseError> {
    if text.trim_start().starts_with('{') {
        system_from_json(text).map(Input::System)
    } else {
        graph6::decode_any(text.as_bytes()).map(Input::Graph)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn system_json_round_trip() {
        let s = SystemInstance {
            host: Graph::new(4, [(0, 1), (2, 3)]).unwrap(),
            family: VertexSetFamily::from_sets(vec![vec![0, 2], vec![1, 3]]),
            r: 3,
            t: Some(2),
            primed: true,
            maximal: false,
        };
        let text = system_to_json(&s);
        let back = system_from_json(&text).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn input_dispatch() {
        assert!(matches!(parse_input("Dhc\n"), Ok(Input::Graph(_))));
        assert!(matches!(parse_input(":Fa@x^"), Ok(Input::Graph(_))));
        assert!(matches!(parse_input("{\"host\": 3}"), Err(ParseError::Json { .. })));
        let bad = r#"{"host":"C~","sets":[[0,7]],"mults":[1],"r":3}"#;
        assert!(system_from_json(bad).is_err());
    }
}
