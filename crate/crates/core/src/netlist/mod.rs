//! Gate-level dual-rail netlists: data model, JSON schema, validation and
//! zero-delay evaluation.

mod builder;
mod circuit;
mod fixtures;
mod model;

pub use builder::NetlistBuilder;
pub use circuit::{Circuit, Diagnostic, Diagnostics, Driver};
pub use fixtures::{build_fixture, Fixture};
pub use model::{Gate, GateKind, InputPair, NetDecl, Netlist, OutputPair};

use crate::logic::Rails;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NetlistError {
    #[error("invalid netlist: {0}")]
    Invalid(Diagnostics),
    #[error("netlist parse error: {0}")]
    Parse(String),
    #[error("unknown fixture `{0}` (expected fig3, fig4, fig5 or early-and2)")]
    UnknownFixture(String),
    #[error("arity mismatch: netlist has {expected} inputs, stimulus has {found}")]
    Arity { expected: usize, found: usize },
    #[error("evaluation did not settle within {sweeps} sweeps")]
    NonConvergence { sweeps: usize },
}

impl From<Diagnostics> for NetlistError {
    fn from(d: Diagnostics) -> Self {
        NetlistError::Invalid(d)
    }
}

/// Output rail values `(rail1, rail0)` per output pair at the zero-delay fixpoint.
pub fn eval_netlist(circuit: &Circuit, rails: &Rails) -> Result<Vec<(bool, bool)>, NetlistError> {
    circuit.eval(rails)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_is_identity() {
        for f in Fixture::ALL {
            let nl = build_fixture(f, None);
            let text = nl.to_json();
            let back = Netlist::from_json(&text).unwrap();
            assert_eq!(back, nl);
            assert_eq!(back.to_json(), text);
        }
    }

    #[test]
    fn json_schema_fields() {
        let v: serde_json::Value = serde_json::from_str(&build_fixture(Fixture::Fig4, None).to_json()).unwrap();
        let g = &v["gates"][0];
        assert_eq!(g["id"], "C1");
        assert_eq!(g["kind"], "C");
        assert_eq!(g["arity"], 3);
        assert_eq!(g["inputs"].as_array().unwrap().len(), 3);
        assert!(v["nets"].as_array().unwrap().iter().any(|n| n["id"] == "isf" && n["isochronic"] == true));
        assert_eq!(v["inputs"][0]["var"], 3);
        assert_eq!(v["outputs"][0]["rail0"], "OR3");
    }

    #[test]
    fn arity_field_must_match_inputs() {
        let text = build_fixture(Fixture::Fig4, None).to_json().replacen("\"arity\": 3", "\"arity\": 2", 1);
        let err = Netlist::from_json(&text).unwrap_err();
        assert!(err.to_string().contains("arity 2"), "{err}");
    }
}
