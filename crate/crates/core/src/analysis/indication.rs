use std::fmt;

use rayon::prelude::*;

use super::{check_cap, AnalysisError};
use crate::logic::{Codeword, VarSet};
use crate::netlist::Circuit;
use crate::sim::{apply_partial, retract_partial, Phase, Simulator};

/// Input/output indication class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IoClass {
    /// No output changes before the last input has arrived (or retracted).
    Strong,
    /// Some output may change early, but for every codeword one waits for the last input.
    Weak,
    /// For some codeword every output changes from a proper subset of inputs.
    Early,
}

impl fmt::Display for IoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IoClass::Strong => "strong",
            IoClass::Weak => "weak",
            IoClass::Early => "early",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SubsetMode {
    /// Only subsets missing exactly one variable. Enough for monotone circuits,
    /// where anything produced from a smaller subset is also produced from a
    /// larger one.
    #[default]
    Maximal,
    /// Every proper subset.
    Exhaustive,
}

/// An output that switched before all inputs had arrived (set) or retracted (reset).
#[derive(Debug, Clone, PartialEq, Eq, Hash, serde::Serialize)]
pub struct Witness {
    #[serde(serialize_with = "ser_display")]
    pub codeword: Codeword,
    /// Variables asserted (set) or retracted (reset).
    #[serde(serialize_with = "ser_display")]
    pub subset: VarSet,
    pub output: String,
    pub phase: Phase,
}

fn ser_display<T: fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct IndicationClass {
    pub io_class: IoClass,
    pub early_set: bool,
    pub early_reset: bool,
    pub witnesses: Vec<Witness>,
    /// Codewords for which every output is early in at least one phase.
    #[serde(serialize_with = "ser_codewords")]
    pub early_rows: Vec<Codeword>,
}

fn ser_codewords<S: serde::Serializer>(v: &[Codeword], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|c| c.to_string()))
}

fn proper_subsets(n: usize, mode: SubsetMode) -> Vec<VarSet> {
    let full = VarSet::full(n);
    match mode {
        SubsetMode::Maximal => full.iter().rev().map(|v| full.without(v)).collect(),
        SubsetMode::Exhaustive => (0..full.mask()).map(VarSet::from_mask).collect(),
    }
}

/// Early outputs in the set phase, in the reset phase, and the witnesses.
type Scan = (Vec<bool>, Vec<bool>, Vec<Witness>);

/// Per codeword: which outputs are early in each phase, plus witnesses.
fn scan(c: &Circuit, cw: &Codeword, subsets: &[VarSet]) -> Result<Scan, AnalysisError> {
    let mut sim = Simulator::new(c);
    let full = sim.drive(&cw.rails(), Phase::Set)?;
    // the rail that rises for this codeword, per output
    let target: Vec<usize> = c.outputs().iter().map(|&(r1, r0)| if full.values[r1] { r1 } else { r0 }).collect();
    let outs = c.outputs().len();
    let (mut early_set, mut early_reset) = (vec![false; outs], vec![false; outs]);
    let mut witnesses = Vec::new();
    for &s in subsets {
        let t = apply_partial(c, cw, s)?;
        for (i, &net) in target.iter().enumerate() {
            if t.values[net] {
                early_set[i] = true;
                witnesses.push(Witness {
                    codeword: *cw,
                    subset: s,
                    output: c.output_name(i).into(),
                    phase: Phase::Set,
                });
            }
        }
        if s.is_empty() {
            continue;
        }
        let t = retract_partial(c, cw, s)?;
        for (i, &net) in target.iter().enumerate() {
            if !t.values[net] {
                early_reset[i] = true;
                witnesses.push(Witness {
                    codeword: *cw,
                    subset: s,
                    output: c.output_name(i).into(),
                    phase: Phase::Reset,
                });
            }
        }
    }
    Ok((early_set, early_reset, witnesses))
}

/// Classifies input/output indication by simulating every codeword under
/// partial input arrival and partial retraction.
///
/// Analysis is exhaustive over codewords, so `n` is limited to
/// [`DEFAULT_ANALYSIS_CAP`](super::DEFAULT_ANALYSIS_CAP).
pub fn classify_indication(circuit: &Circuit, mode: SubsetMode) -> Result<IndicationClass, AnalysisError> {
    check_cap(circuit.n(), super::DEFAULT_ANALYSIS_CAP)?;
    let subsets = proper_subsets(circuit.n(), mode);
    let codewords: Vec<Codeword> = Codeword::all(circuit.n()).collect();
    let scans = codewords.par_iter().map(|cw| scan(circuit, cw, &subsets)).collect::<Result<Vec<_>, _>>()?;

    let mut class = IndicationClass {
        io_class: IoClass::Strong,
        early_set: false,
        early_reset: false,
        witnesses: Vec::new(),
        early_rows: Vec::new(),
    };
    for (cw, (set, reset, witnesses)) in codewords.iter().zip(scans) {
        let all_set = set.iter().all(|&b| b);
        let all_reset = reset.iter().all(|&b| b);
        class.early_set |= all_set;
        class.early_reset |= all_reset;
        if all_set || all_reset {
            class.early_rows.push(*cw);
        }
        class.witnesses.extend(witnesses);
    }
    class.io_class = if class.early_set || class.early_reset {
        IoClass::Early
    } else if class.witnesses.is_empty() {
        IoClass::Strong
    } else {
        IoClass::Weak
    };
    Ok(class)
}
