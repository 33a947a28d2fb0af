use std::fmt;

use serde::{Deserialize, Serialize};

use super::NetlistError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GateKind {
    /// Muller C-element: output rises when all inputs are 1, falls when all
    /// are 0, and holds otherwise.
    #[serde(rename = "C")]
    CElement,
    #[serde(rename = "OR")]
    Or,
}

impl GateKind {
    pub fn prefix(self) -> &'static str {
        match self {
            GateKind::CElement => "C",
            GateKind::Or => "OR",
        }
    }

    /// Next output value given the current inputs and the held output.
    pub fn next(self, inputs: impl IntoIterator<Item = bool>, held: bool) -> bool {
        match self {
            GateKind::Or => inputs.into_iter().any(|b| b),
            GateKind::CElement => {
                let (mut all1, mut all0) = (true, true);
                for b in inputs {
                    all1 &= b;
                    all0 &= !b;
                }
                if all1 {
                    true
                } else if all0 {
                    false
                } else {
                    held
                }
            }
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.prefix())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GateRecord", into = "GateRecord")]
pub struct Gate {
    pub id: String,
    pub kind: GateKind,
    pub inputs: Vec<String>,
    pub output: String,
}

impl Gate {
    pub fn arity(&self) -> usize {
        self.inputs.len()
    }
}

/// On-disk gate shape; `arity` is redundant and checked against `inputs`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GateRecord {
    id: String,
    kind: GateKind,
    arity: usize,
    inputs: Vec<String>,
    output: String,
}

impl From<Gate> for GateRecord {
    fn from(g: Gate) -> Self {
        GateRecord { arity: g.inputs.len(), id: g.id, kind: g.kind, inputs: g.inputs, output: g.output }
    }
}

impl TryFrom<GateRecord> for Gate {
    type Error = String;

    fn try_from(r: GateRecord) -> Result<Self, Self::Error> {
        if r.arity != r.inputs.len() {
            return Err(format!("gate {}: arity {} does not match {} listed inputs", r.id, r.arity, r.inputs.len()));
        }
        Ok(Gate { id: r.id, kind: r.kind, inputs: r.inputs, output: r.output })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetDecl {
    pub id: String,
    /// Set on forks (fanout > 1) that deliver a transition to every branch at once.
    pub isochronic: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputPair {
    pub var: usize,
    pub rail1: String,
    pub rail0: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputPair {
    pub name: String,
    pub rail1: String,
    pub rail0: String,
}

/// Gate-level dual-rail circuit as written to and read from disk.
///
/// Use [`Netlist::validate`] to obtain a [`Circuit`](super::Circuit) for
/// evaluation and simulation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Netlist {
    pub n: usize,
    pub inputs: Vec<InputPair>,
    pub outputs: Vec<OutputPair>,
    pub gates: Vec<Gate>,
    pub nets: Vec<NetDecl>,
}

impl Netlist {
    /// Canonical JSON text; `from_json(to_json(x)) == x` and the text form is stable.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("netlist serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, NetlistError> {
        serde_json::from_str(text).map_err(|e| NetlistError::Parse(e.to_string()))
    }

    pub fn gate(&self, id: &str) -> Option<&Gate> {
        self.gates.iter().find(|g| g.id == id)
    }

    pub fn net(&self, id: &str) -> Option<&NetDecl> {
        self.nets.iter().find(|n| n.id == id)
    }

    pub fn count_gates(&self, kind: GateKind, arity: Option<usize>) -> usize {
        self.gates.iter().filter(|g| g.kind == kind && arity.is_none_or(|a| g.arity() == a)).count()
    }

    pub fn isochronic_nets(&self) -> Vec<&str> {
        self.nets.iter().filter(|n| n.isochronic).map(|n| n.id.as_str()).collect()
    }
}
