//! Hand-built golden circuits of the dual-rail 3-input AND.
//!
//! Gate ids follow the labels used in the well-known DIMS / factored-DIMS /
//! safely decomposed drawings of this function, so reports line up with the
//! published path table.

use std::fmt;
use std::str::FromStr;

use super::{GateKind, Netlist, NetlistBuilder, NetlistError};
use crate::logic::{ProductTerm, RailLiteral};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Fixture {
    /// DIMS: eight 3-input minterm C-elements and an OR merge.
    Fig3,
    /// Factored DIMS with the `isf` fork; orphans on half of the inputs.
    Fig4,
    /// Safe decomposition: 11 C-elements, isochronic forks `k1..k3`.
    Fig5,
    /// 2-input AND with an OR on the false rail; produces `f0` early.
    EarlyAnd2,
}

impl Fixture {
    pub const ALL: [Fixture; 4] = [Fixture::Fig3, Fixture::Fig4, Fixture::Fig5, Fixture::EarlyAnd2];

    pub fn name(self) -> &'static str {
        match self {
            Fixture::Fig3 => "fig3",
            Fixture::Fig4 => "fig4",
            Fixture::Fig5 => "fig5",
            Fixture::EarlyAnd2 => "early-and2",
        }
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Fixture {
    type Err = NetlistError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Fixture::ALL.into_iter().find(|f| f.name() == s).ok_or_else(|| NetlistError::UnknownFixture(s.to_string()))
    }
}

fn lit(var: usize, rail: u8) -> String {
    RailLiteral::new(var, rail == 1).net_name()
}

fn minterm_nets(m: u32) -> Vec<String> {
    ProductTerm::minterm(3, m).literals().iter().map(|l| l.net_name()).collect()
}

/// Builds a fixture. `or_fanin` caps the width of the false-rail OR merge
/// (default: one wide OR for fig3, the two-level OR1/OR2 merge for fig5).
pub fn build_fixture(fixture: Fixture, or_fanin: Option<usize>) -> Netlist {
    match fixture {
        Fixture::Fig3 => fig3(or_fanin),
        Fixture::Fig4 => fig4(),
        Fixture::Fig5 => fig5(or_fanin),
        Fixture::EarlyAnd2 => early_and2(),
    }
}

fn fig3(or_fanin: Option<usize>) -> Netlist {
    let mut b = NetlistBuilder::new(3);
    let f1 = b.c_element(minterm_nets(0b111));
    let minterms: Vec<String> = (0..7).map(|m| b.c_element(minterm_nets(m))).collect();
    let f0 = b.or_merge(minterms, or_fanin);
    b.output("f", f1, f0);
    b.finish()
}

fn fig4() -> Netlist {
    let mut b = NetlistBuilder::new(3);
    let c = GateKind::CElement;
    let or = GateKind::Or;
    let f1 = b.named_gate(c, "C1", vec![lit(3, 1), lit(2, 1), lit(1, 1)], "C1");
    b.named_gate(c, "C2", vec!["isf".into(), "OR1".into(), lit(1, 0)], "C2");
    b.named_gate(c, "C3", vec!["isf".into(), lit(2, 0), lit(1, 1)], "C3");
    b.named_gate(c, "C4", vec![lit(3, 0), lit(2, 1), lit(1, 1)], "C4");
    b.named_gate(or, "OR1", vec![lit(2, 0), lit(2, 1)], "OR1");
    b.named_gate(or, "OR2", vec![lit(3, 0), lit(3, 1)], "isf");
    let f0 = b.named_gate(or, "OR3", vec!["C2".into(), "C3".into(), "C4".into()], "OR3");
    b.output("f", f1, f0);
    b.finish()
}

fn fig5(or_fanin: Option<usize>) -> Netlist {
    let mut b = NetlistBuilder::new(3);
    let c = GateKind::CElement;
    let f1 = b.named_gate(c, "C1", vec![lit(3, 1), lit(2, 1), lit(1, 1)], "C1");
    let shared = [("C2", "k1", (0, 0)), ("C3", "k2", (0, 1)), ("C4", "k3", (1, 0))];
    for (id, net, (r3, r2)) in shared {
        b.named_gate(c, id, vec![lit(3, r3), lit(2, r2)], net);
    }
    let c5 = b.named_gate(c, "C5", vec![lit(3, 1), lit(2, 1), lit(1, 0)], "C5");
    let mut leaves = Vec::new();
    for (i, (_, net, _)) in shared.iter().enumerate() {
        for rail in [0, 1] {
            let id = format!("C{}", 6 + 2 * i + rail as usize);
            leaves.push(b.named_gate(c, &id, vec![net.to_string(), lit(1, rail)], &id));
        }
    }
    let f0 = match or_fanin {
        None => {
            let or1 = b.named_gate(GateKind::Or, "OR1", leaves, "OR1");
            b.named_gate(GateKind::Or, "OR2", vec![or1, c5], "OR2")
        }
        Some(_) => {
            leaves.push(c5);
            b.or_merge(leaves, or_fanin)
        }
    };
    b.output("f", f1, f0);
    b.finish()
}

fn early_and2() -> Netlist {
    let mut b = NetlistBuilder::new(2);
    let f1 = b.c_element(vec![lit(2, 1), lit(1, 1)]);
    let f0 = b.gate(GateKind::Or, vec![lit(2, 0), lit(1, 0)]);
    b.output("f", f1, f0);
    b.finish()
}
