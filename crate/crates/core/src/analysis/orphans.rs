use std::collections::HashMap;

use rayon::prelude::*;

use super::{check_cap, AnalysisError};
use crate::logic::Codeword;
use crate::netlist::Circuit;
use crate::sim::{simulate_transaction, Direction, Phase, PhaseTrace, SimError};

/// Largest `n` analysed exhaustively unless the caller raises it.
pub const DEFAULT_ANALYSIS_CAP: usize = 10;

/// A switching event on a gate output.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GateTransition {
    pub gate: String,
    pub direction: Direction,
    pub phase: Phase,
    pub time: usize,
}

impl GateTransition {
    /// `OR1↑`
    pub fn label(&self) -> String {
        format!("{}{}", self.gate, self.direction.arrow())
    }
}

/// Acknowledgment outcome of one phase.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PhaseOrphans {
    /// Ordered by time, then topological rank of the gate.
    pub acknowledged: Vec<GateTransition>,
    pub orphans: Vec<GateTransition>,
    /// Gates fed only by primary inputs whose transitions were acknowledged.
    pub first_stage: Vec<String>,
}

impl PhaseOrphans {
    pub fn is_clean(&self) -> bool {
        self.orphans.is_empty()
    }

    /// Acknowledged gates joined by `-`, e.g. `OR2-C3-OR3`.
    pub fn path(&self) -> String {
        self.acknowledged.iter().map(|t| t.gate.as_str()).collect::<Vec<_>>().join("-")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrphanReport {
    pub codeword: Codeword,
    pub set: PhaseOrphans,
    pub reset: PhaseOrphans,
}

impl OrphanReport {
    pub fn phase(&self, phase: Phase) -> &PhaseOrphans {
        match phase {
            Phase::Set => &self.set,
            Phase::Reset => &self.reset,
        }
    }

    pub fn has_orphans(&self) -> bool {
        !self.set.is_clean() || !self.reset.is_clean()
    }
}

/// Simulates one transaction and sorts every gate transition into
/// acknowledged or orphaned.
///
/// Transitions are decided latest first. A transition on a primary output is
/// acknowledged by the environment. Any other transition is acknowledged by a
/// consumer gate that later makes an acknowledged transition in the same
/// phase. On an isochronic fork one acknowledging branch covers the others;
/// a plain fork needs every branch to acknowledge. Primary-input events are
/// never orphans.
pub fn detect_orphans(circuit: &Circuit, cw: &Codeword) -> Result<OrphanReport, SimError> {
    let tx = simulate_transaction(circuit, &cw.rails())?;
    Ok(OrphanReport { codeword: *cw, set: classify_phase(circuit, &tx.set), reset: classify_phase(circuit, &tx.reset) })
}

fn classify_phase(c: &Circuit, trace: &PhaseTrace) -> PhaseOrphans {
    let events: Vec<_> = trace.gate_events(c).collect();
    // acknowledged event times per net, filled latest first
    let mut acked: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut verdict = vec![false; events.len()];
    for (i, e) in events.iter().enumerate().rev() {
        let ok = c.is_primary_output(e.net) || {
            let consumer_acks =
                |g: &usize| acked.get(&c.gate_output(*g)).is_some_and(|ts| ts.iter().any(|&t| t > e.time));
            let fanout = c.fanout(e.net);
            if fanout.len() <= 1 || c.is_isochronic(e.net) {
                fanout.iter().any(consumer_acks)
            } else {
                fanout.iter().all(consumer_acks)
            }
        };
        if ok {
            acked.entry(e.net).or_default().push(e.time);
        }
        verdict[i] = ok;
    }

    let mut out = PhaseOrphans::default();
    let mut order: Vec<usize> = (0..events.len()).collect();
    let gate_of = |i: usize| c.driving_gate(events[i].net).expect("gate event");
    order.sort_by_key(|&i| (events[i].time, c.topo_rank(gate_of(i))));
    for i in order {
        let g = gate_of(i);
        let t = GateTransition {
            gate: c.gate(g).id.clone(),
            direction: events[i].direction,
            phase: events[i].phase,
            time: events[i].time,
        };
        if verdict[i] {
            if c.is_first_stage(g) {
                out.first_stage.push(t.gate.clone());
            }
            out.acknowledged.push(t);
        } else {
            out.orphans.push(t);
        }
    }
    out
}

/// Orphan reports for every valid codeword, in ascending assignment order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrphanTable {
    pub rows: Vec<OrphanReport>,
}

impl OrphanTable {
    /// Number of codewords with at least one orphan in `phase`.
    pub fn orphan_rows(&self, phase: Phase) -> usize {
        self.rows.iter().filter(|r| !r.phase(phase).is_clean()).count()
    }

    pub fn has_orphans(&self) -> bool {
        self.rows.iter().any(OrphanReport::has_orphans)
    }
}

/// Runs [`detect_orphans`] on all `2^n` codewords. Rows are computed in
/// parallel but always returned in ascending codeword order.
pub fn orphan_summary(circuit: &Circuit, cap: usize) -> Result<OrphanTable, AnalysisError> {
    check_cap(circuit.n(), cap)?;
    let codewords: Vec<Codeword> = Codeword::all(circuit.n()).collect();
    let rows = codewords.par_iter().map(|cw| detect_orphans(circuit, cw)).collect::<Result<Vec<_>, _>>()?;
    Ok(OrphanTable { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netlist::{build_fixture, Fixture};

    fn table(f: Fixture, fanin: Option<usize>) -> OrphanTable {
        orphan_summary(&build_fixture(f, fanin).validate().unwrap(), DEFAULT_ANALYSIS_CAP).unwrap()
    }

    fn labels(t: &[GateTransition]) -> Vec<String> {
        t.iter().map(GateTransition::label).collect()
    }

    #[test]
    fn fig4_set_phase_orphans() {
        let t = table(Fixture::Fig4, None);
        let got: Vec<Vec<String>> = t.rows.iter().map(|r| labels(&r.set.orphans)).collect();
        let or1 = vec!["OR1↑".to_string()];
        let both = vec!["OR1↑".to_string(), "OR2↑".to_string()];
        let none: Vec<String> = vec![];
        assert_eq!(got, [none.clone(), or1.clone(), none.clone(), both.clone(), none.clone(), or1, none, both]);
        assert_eq!(t.orphan_rows(Phase::Set), 4);
    }

    #[test]
    fn fig4_paths() {
        let t = table(Fixture::Fig4, None);
        assert_eq!(t.rows[1].set.path(), "OR2-C3-OR3");
        assert_eq!(t.rows[3].set.path(), "C4-OR3");
        assert_eq!(t.rows[7].set.path(), "C1");
        assert_eq!(t.rows[0].set.path(), "OR1-OR2-C2-OR3");
    }

    #[test]
    fn fig3_and_fig5_clean_in_both_phases() {
        for f in [Fixture::Fig3, Fixture::Fig5] {
            for fanin in [None, Some(2), Some(3)] {
                assert!(!table(f, fanin).has_orphans(), "{f} {fanin:?}");
            }
        }
    }

    #[test]
    fn first_stage_gates() {
        let t = table(Fixture::Fig5, None);
        let got: Vec<String> = t.rows.iter().map(|r| r.set.first_stage.join(",")).collect();
        assert_eq!(got, ["C2", "C2", "C3", "C3", "C4", "C4", "C5", "C1"]);
        let t = table(Fixture::Fig3, None);
        let got: Vec<String> = t.rows.iter().map(|r| r.set.first_stage.join(",")).collect();
        assert_eq!(got, ["C2", "C3", "C4", "C5", "C6", "C7", "C8", "C1"]);
    }

    #[test]
    fn fig5_isochronic_branch_acknowledges_shared_gate() {
        let t = table(Fixture::Fig5, None);
        // 001: C2 feeds C6 and C7 through k1; only C7 fires
        assert_eq!(t.rows[1].set.path(), "C2-C7-OR1-OR2");
    }

    #[test]
    fn plain_fork_needs_every_branch() {
        let mut nl = build_fixture(Fixture::Fig4, None);
        nl.nets.iter_mut().find(|n| n.id == "isf").unwrap().isochronic = false;
        let t = orphan_summary(&nl.validate().unwrap(), DEFAULT_ANALYSIS_CAP).unwrap();
        // 000: isf reaches C2 and C3, only C2 fires
        assert_eq!(labels(&t.rows[0].set.orphans), ["OR2↑"]);
    }

    #[test]
    fn cap_exceeded() {
        let c = build_fixture(Fixture::Fig3, None).validate().unwrap();
        let err = orphan_summary(&c, 2).unwrap_err();
        assert_eq!(err, AnalysisError::CapExceeded { n: 3, cap: 2, rows: 8 });
        assert!(err.to_string().contains("2^3 = 8"));
    }
}
