//! Unit-delay simulation of four-phase return-to-zero transactions.
//!
//! Every gate has a delay of one step. At step `t` each gate reads the net
//! values of step `t - 1`, so all gates switch synchronously and the two ends
//! of a fork always see a transition at the same step. Input rails change at
//! `t = 0`. Events within a step are ordered by net index.

use std::fmt;

use serde::Serialize;

use crate::logic::{Codeword, Rails, VarSet};
use crate::netlist::Circuit;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Phase {
    /// Valid data arriving after the spacer; nets may only rise.
    Set,
    /// Return to spacer; nets may only fall.
    Reset,
}

impl Phase {
    pub fn name(self) -> &'static str {
        match self {
            Phase::Set => "set",
            Phase::Reset => "reset",
        }
    }

    /// The only direction a monotonic circuit may switch in this phase.
    pub fn direction(self) -> Direction {
        match self {
            Phase::Set => Direction::Rise,
            Phase::Reset => Direction::Fall,
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Phase {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "set" => Ok(Phase::Set),
            "reset" => Ok(Phase::Reset),
            _ => Err(format!("unknown phase `{s}` (expected set or reset)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Rise,
    Fall,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Direction::Rise => "rise",
            Direction::Fall => "fall",
        }
    }

    pub fn arrow(self) -> char {
        match self {
            Direction::Rise => '↑',
            Direction::Fall => '↓',
        }
    }

    fn of(new_value: bool) -> Self {
        if new_value {
            Direction::Rise
        } else {
            Direction::Fall
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimEvent {
    pub time: usize,
    /// Net index in the circuit.
    pub net: usize,
    pub direction: Direction,
    pub phase: Phase,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SimError {
    #[error("hazard: net {net} {direction}s at t={time} during the {phase} phase")]
    Hazard { net: String, time: usize, direction: Direction, phase: Phase },
    #[error("no quiescence after {steps} steps in the {phase} phase")]
    Oscillation { steps: usize, phase: Phase },
    #[error("rail vector has {found} variables, circuit expects {expected}")]
    Arity { expected: usize, found: usize },
}

/// One phase of activity: the input rails driven, every resulting event and
/// the settled net values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhaseTrace {
    pub phase: Phase,
    pub applied: Rails,
    /// Ordered by `(time, net)`.
    pub events: Vec<SimEvent>,
    /// Net values after the last event.
    pub values: Vec<bool>,
    pub quiescent: bool,
}

#[derive(Serialize)]
struct EventRecord<'a> {
    time: usize,
    net: &'a str,
    direction: Direction,
    phase: Phase,
}

impl PhaseTrace {
    /// Events on gate outputs only.
    pub fn gate_events<'a>(&'a self, circuit: &'a Circuit) -> impl Iterator<Item = &'a SimEvent> + 'a {
        self.events.iter().filter(|e| circuit.driving_gate(e.net).is_some())
    }

    /// Time of the last event, 0 when nothing switched.
    pub fn settle_time(&self) -> usize {
        self.events.last().map_or(0, |e| e.time)
    }

    /// `t=<k> <net> <rise|fall> <phase>`, one line per event.
    pub fn dump(&self, circuit: &Circuit) -> String {
        self.events
            .iter()
            .map(|e| format!("t={} {} {} {}\n", e.time, circuit.net_name(e.net), e.direction, e.phase))
            .collect()
    }

    pub fn to_json_value(&self, circuit: &Circuit) -> serde_json::Value {
        let events: Vec<EventRecord> = self
            .events
            .iter()
            .map(|e| EventRecord { time: e.time, net: circuit.net_name(e.net), direction: e.direction, phase: e.phase })
            .collect();
        serde_json::json!({
            "phase": self.phase,
            "applied": self.applied.to_string(),
            "quiescent": self.quiescent,
            "events": events,
        })
    }
}

/// Set phase followed by the reset phase.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transaction {
    pub set: PhaseTrace,
    pub reset: PhaseTrace,
}

impl Transaction {
    /// Every net is back at 0 after the reset phase.
    pub fn is_rtz_complete(&self) -> bool {
        self.reset.values.iter().all(|&v| !v)
    }

    /// Output rail values at the end of the set phase.
    pub fn outputs(&self, circuit: &Circuit) -> Vec<(bool, bool)> {
        circuit.outputs().iter().map(|&(r1, r0)| (self.set.values[r1], self.set.values[r0])).collect()
    }
}

/// Net state of one circuit. The value of a C-element's output net is its
/// internal state, so holding behaviour needs no extra bookkeeping.
#[derive(Debug, Clone)]
pub struct Simulator<'c> {
    circuit: &'c Circuit,
    values: Vec<bool>,
}

impl<'c> Simulator<'c> {
    /// All nets 0: the stable spacer state.
    pub fn new(circuit: &'c Circuit) -> Self {
        Simulator { circuit, values: vec![false; circuit.net_count()] }
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    /// Drives the input rails to `target` at t=0 and runs to quiescence.
    ///
    /// Any transition against the phase's direction is a hazard. The step
    /// bound is four per gate.
    pub fn drive(&mut self, target: &Rails, phase: Phase) -> Result<PhaseTrace, SimError> {
        let c = self.circuit;
        if target.n() != c.n() {
            return Err(SimError::Arity { expected: c.n(), found: target.n() });
        }
        let mut events = Vec::new();
        let mut changed: Vec<(usize, bool)> = c
            .input_nets()
            .iter()
            .filter(|&&(lit, net)| self.values[net] != target.get(lit))
            .map(|&(lit, net)| (net, target.get(lit)))
            .collect();
        let limit = (c.gate_count() * 4).max(1);
        let mut time = 0;
        loop {
            changed.sort_unstable();
            for &(net, v) in &changed {
                let direction = Direction::of(v);
                if direction != phase.direction() {
                    return Err(SimError::Hazard { net: c.net_name(net).to_string(), time, direction, phase });
                }
                self.values[net] = v;
                events.push(SimEvent { time, net, direction, phase });
            }
            if changed.is_empty() && time > 0 {
                break;
            }
            time += 1;
            if time > limit {
                return Err(SimError::Oscillation { steps: limit, phase });
            }
            changed = (0..c.gate_count())
                .filter_map(|g| {
                    let out = c.gate_output(g);
                    let next = c.gate(g).kind.next(c.gate_inputs(g).iter().map(|&n| self.values[n]), self.values[out]);
                    (next != self.values[out]).then_some((out, next))
                })
                .collect();
        }
        Ok(PhaseTrace { phase, applied: target.clone(), events, values: self.values.clone(), quiescent: true })
    }
}

/// Runs one full transaction from the spacer state: `rails` are asserted, the
/// circuit settles, then every input returns to 0 and it settles again.
pub fn simulate_transaction(circuit: &Circuit, rails: &Rails) -> Result<Transaction, SimError> {
    let mut sim = Simulator::new(circuit);
    let set = sim.drive(rails, Phase::Set)?;
    let reset = sim.drive(&Rails::spacer(circuit.n()), Phase::Reset)?;
    Ok(Transaction { set, reset })
}

/// Set phase in which only the variables in `subset` arrive.
pub fn apply_partial(circuit: &Circuit, cw: &Codeword, subset: VarSet) -> Result<PhaseTrace, SimError> {
    Simulator::new(circuit).drive(&cw.partial_rails(subset), Phase::Set)
}

/// Reset phase in which only the variables in `subset` return to the spacer,
/// starting from the settled state of the full codeword.
pub fn retract_partial(circuit: &Circuit, cw: &Codeword, subset: VarSet) -> Result<PhaseTrace, SimError> {
    let mut sim = Simulator::new(circuit);
    sim.drive(&cw.rails(), Phase::Set)?;
    let keep = VarSet::full(cw.n()).iter().filter(|&v| !subset.contains(v));
    sim.drive(&cw.partial_rails(VarSet::from_vars(keep)), Phase::Reset)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::netlist::{build_fixture, Fixture};

    fn fixture(f: Fixture) -> Circuit {
        build_fixture(f, None).validate().unwrap()
    }

    fn risen(c: &Circuit, t: &PhaseTrace) -> Vec<String> {
        t.gate_events(c).map(|e| c.net_name(e.net).to_string()).collect()
    }

    #[test]
    fn fig3_minterm_then_or() {
        let c = fixture(Fixture::Fig3);
        let tx = simulate_transaction(&c, &Codeword::parse("110").unwrap().rails()).unwrap();
        assert_eq!(risen(&c, &tx.set), ["C8", "OR1"]);
        assert_eq!(tx.outputs(&c), [(false, true)]);
        assert!(tx.is_rtz_complete());
    }

    #[test]
    fn fig4_orphan_row_trace() {
        let c = fixture(Fixture::Fig4);
        let tx = simulate_transaction(&c, &Codeword::parse("001").unwrap().rails()).unwrap();
        assert_eq!(risen(&c, &tx.set), ["OR1", "isf", "C3", "OR3"]);
        let dump = tx.set.dump(&c);
        assert!(dump.starts_with("t=0 X30 rise set\n"), "{dump}");
        assert!(dump.ends_with("t=3 OR3 rise set\n"), "{dump}");
        assert!(tx.reset.events.iter().all(|e| e.direction == Direction::Fall));
        assert!(tx.is_rtz_complete());
    }

    #[test]
    fn spacer_is_silent() {
        for f in Fixture::ALL {
            let c = fixture(f);
            let tx = simulate_transaction(&c, &Rails::spacer(c.n())).unwrap();
            assert!(tx.set.events.is_empty() && tx.reset.events.is_empty());
            assert!(tx.set.quiescent);
        }
    }

    #[test]
    fn partial_application() {
        let c = fixture(Fixture::Fig3);
        let t = apply_partial(&c, &Codeword::parse("111").unwrap(), VarSet::from_vars([3, 2])).unwrap();
        assert_eq!(t.gate_events(&c).count(), 0);

        let c = fixture(Fixture::Fig4);
        let t = apply_partial(&c, &Codeword::parse("000").unwrap(), VarSet::from_vars([3, 2])).unwrap();
        assert_eq!(risen(&c, &t), ["OR1", "isf"]);

        let t = apply_partial(&c, &Codeword::parse("000").unwrap(), VarSet::EMPTY).unwrap();
        assert!(t.events.is_empty());
    }

    #[test]
    fn partial_retraction_holds_c_elements() {
        let c = fixture(Fixture::Fig3);
        let t = retract_partial(&c, &Codeword::parse("111").unwrap(), VarSet::from_vars([1])).unwrap();
        // C1 still sees X31 and X21 high, so it holds
        assert_eq!(t.gate_events(&c).count(), 0);
        assert!(t.values[c.net_id("C1").unwrap()]);
    }

    #[test]
    fn arity_mismatch() {
        let c = fixture(Fixture::Fig3);
        assert_eq!(simulate_transaction(&c, &Rails::spacer(2)).unwrap_err(), SimError::Arity { expected: 3, found: 2 });
    }

    #[test]
    fn deterministic() {
        let c = fixture(Fixture::Fig5);
        for cw in Codeword::all(3) {
            let a = simulate_transaction(&c, &cw.rails()).unwrap();
            let b = simulate_transaction(&c, &cw.rails()).unwrap();
            assert_eq!(a, b);
        }
    }
}
