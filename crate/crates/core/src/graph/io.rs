use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};
use crate::rational::RationalValue;
use crate::toughness;

/// On-disk graph record. `n` and `bits` are authoritative; `edges`, `delta`
/// and `i_prime` are derived and only cross-checked (edges) or ignored on
/// input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub bits: String,
    #[serde(default)]
    pub edges: Option<Vec<[usize; 2]>>,
    #[serde(default)]
    pub delta: Option<u32>,
    /// `"p/q"`, `"inf"`, or null when the order is beyond the exact limit.
    #[serde(default)]
    pub i_prime: Option<RationalValue>,
}

impl GraphJson {
    pub fn from_graph(g: &Graph) -> Self {
        let i_prime = toughness::exact_isolated_toughness_variant(g)
            .ok()
            .map(|r| r.value);
        Self::with_i_prime(g, i_prime)
    }

    /// Uses an already known I' instead of recomputing it.
    pub fn with_i_prime(g: &Graph, i_prime: Option<RationalValue>) -> Self {
        GraphJson {
            n: g.order(),
            bits: g.bit_string(),
            edges: Some(g.edges().into_iter().map(|(u, v)| [u, v]).collect()),
            delta: Some(g.min_degree()),
            i_prime,
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        let g = Graph::from_bit_str(self.n, &self.bits).map_err(|e| match e {
            Error::Parse { position, message } => Error::parse(format!("field \"bits\", {position}"), message),
            Error::InvalidArgument(message) => Error::parse("field \"bits\"", message),
            other => other,
        })?;
        if let Some(edges) = &self.edges {
            for (i, &[u, v]) in edges.iter().enumerate() {
                if !g.has_edge(u, v) {
                    return Err(Error::parse(
                        format!("field \"edges\", entry {i}"),
                        format!("edge ({u}, {v}) is not set in \"bits\""),
                    ));
                }
            }
            if edges.len() != g.edge_count() {
                return Err(Error::parse(
                    "field \"edges\"",
                    format!("{} edges listed but \"bits\" encodes {}", edges.len(), g.edge_count()),
                ));
            }
        }
        Ok(g)
    }
}

/// Pretty JSON with the computed parameters filled in.
pub fn to_json(g: &Graph) -> String {
    serde_json::to_string_pretty(&GraphJson::from_graph(g)).expect("graph JSON serializes")
}

pub fn parse_json(text: &str) -> Result<Graph> {
    let record: GraphJson = serde_json::from_str(text).map_err(|e| {
        Error::parse(format!("line {} column {}", e.line(), e.column()), e.to_string())
    })?;
    record.to_graph()
}

/// Undirected DOT with vertices `0..n` declared explicitly.
pub fn to_dot(g: &Graph) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.order() {
        let _ = writeln!(out, "  {v};");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{bit_len, Family};
    use proptest::prelude::*;

    #[test]
    fn empty_graph_has_no_edges() {
        let json = to_json(&Graph::empty(3).unwrap());
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["edges"], serde_json::json!([]));
        assert_eq!(value["i_prime"], "0/1");
        assert_eq!(value["delta"], 0);
    }

    #[test]
    fn worked_individual_bits() {
        let g = Graph::from_bit_str(5, "1111010010").unwrap();
        let value: serde_json::Value = serde_json::from_str(&to_json(&g)).unwrap();
        assert_eq!(value["bits"], "1111010010");
        assert_eq!(value["n"], 5);
    }

    #[test]
    fn complete_graph_reports_infinity() {
        let value: serde_json::Value =
            serde_json::from_str(&to_json(&Graph::complete(4).unwrap())).unwrap();
        assert_eq!(value["i_prime"], "inf");
    }

    #[test]
    fn malformed_input_reports_position() {
        let err = parse_json("{\"n\": 3,\n \"bits\": 12}").unwrap_err();
        match err {
            Error::Parse { position, .. } => assert!(position.starts_with("line 2"), "{position}"),
            other => panic!("unexpected {other:?}"),
        }
        let err = parse_json(r#"{"n": 3, "bits": "10"}"#).unwrap_err();
        assert!(matches!(err, Error::Parse { ref position, .. } if position.contains("bits")));
        let err = parse_json(r#"{"n": 3, "bits": "100", "edges": [[1, 2]]}"#).unwrap_err();
        assert!(matches!(err, Error::Parse { ref position, .. } if position.contains("entry 0")));
    }

    #[test]
    fn minimal_record_parses() {
        let g = parse_json(r#"{"n": 4, "bits": "100001"}"#).unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn dot_lists_vertices_and_edges() {
        let dot = to_dot(&Family::Star { n: 3 }.build().unwrap());
        assert_eq!(dot, "graph G {\n  0;\n  1;\n  2;\n  0 -- 1;\n  0 -- 2;\n}\n");
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (0usize..12).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), bit_len(n))
                .prop_map(move |bits| Graph::from_bits(n, &bits).unwrap())
        })
    }

    proptest! {
        #[test]
        fn json_round_trip(g in arb_graph()) {
            prop_assert_eq!(parse_json(&to_json(&g)).unwrap(), g);
        }
    }
}
