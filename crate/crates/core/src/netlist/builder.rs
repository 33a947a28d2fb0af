use std::collections::HashMap;

use super::{Gate, GateKind, InputPair, NetDecl, Netlist, OutputPair};
use crate::logic::RailLiteral;

/// Incremental netlist construction with automatic gate numbering
/// (`C1, C2, ..` and `OR1, OR2, ..` in creation order).
#[derive(Debug, Clone)]
pub struct NetlistBuilder {
    n: usize,
    gates: Vec<Gate>,
    outputs: Vec<OutputPair>,
    counters: HashMap<GateKind, usize>,
    fork_prefix: Option<String>,
}

impl NetlistBuilder {
    pub fn new(n: usize) -> Self {
        Self { n, gates: Vec::new(), outputs: Vec::new(), counters: HashMap::new(), fork_prefix: None }
    }

    /// Renames gate-output nets with fanout > 1 to `<prefix>1, <prefix>2, ..` on finish.
    pub fn fork_prefix(mut self, prefix: &str) -> Self {
        self.fork_prefix = Some(prefix.to_string());
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn input(&self, lit: RailLiteral) -> String {
        debug_assert!(lit.var() <= self.n);
        lit.net_name()
    }

    /// Adds a gate with an explicit id and output net name.
    pub fn named_gate(&mut self, kind: GateKind, id: &str, inputs: Vec<String>, output: &str) -> String {
        self.gates.push(Gate { id: id.to_string(), kind, inputs, output: output.to_string() });
        output.to_string()
    }

    /// Adds an auto-numbered gate whose output net carries the gate id.
    pub fn gate(&mut self, kind: GateKind, inputs: Vec<String>) -> String {
        let k = self.counters.entry(kind).or_insert(0);
        *k += 1;
        let id = format!("{}{}", kind.prefix(), k);
        self.named_gate(kind, &id, inputs, &id)
    }

    pub fn c_element(&mut self, inputs: Vec<String>) -> String {
        self.gate(GateKind::CElement, inputs)
    }

    /// C-element over `inputs`, or the single input itself when there is only one.
    pub fn c_or_wire(&mut self, mut inputs: Vec<String>) -> String {
        if inputs.len() == 1 {
            inputs.pop().unwrap()
        } else {
            self.c_element(inputs)
        }
    }

    /// OR-merges `inputs` into one net. A single input is passed through.
    /// With `fanin` set, wide merges become a tree of ORs of at most that many inputs.
    pub fn or_merge(&mut self, inputs: Vec<String>, fanin: Option<usize>) -> String {
        assert!(!inputs.is_empty(), "OR merge of nothing");
        let cap = fanin.unwrap_or(usize::MAX).max(2);
        let mut level = inputs;
        while level.len() > cap {
            level = level
                .chunks(cap)
                .map(|chunk| if chunk.len() == 1 { chunk[0].clone() } else { self.gate(GateKind::Or, chunk.to_vec()) })
                .collect();
        }
        if level.len() == 1 {
            level.pop().unwrap()
        } else {
            self.gate(GateKind::Or, level)
        }
    }

    pub fn output(&mut self, name: &str, rail1: String, rail0: String) {
        self.outputs.push(OutputPair { name: name.to_string(), rail1, rail0 });
    }

    pub fn finish(self) -> Netlist {
        let mut gates = self.gates;
        let mut outputs = self.outputs;

        let mut fanout: HashMap<String, usize> = HashMap::new();
        for g in &gates {
            let mut seen: Vec<&String> = g.inputs.iter().collect();
            seen.sort();
            seen.dedup();
            for i in seen {
                *fanout.entry(i.clone()).or_default() += 1;
            }
        }

        if let Some(prefix) = &self.fork_prefix {
            let mut renames: HashMap<String, String> = HashMap::new();
            for g in &gates {
                if fanout.get(&g.output).copied().unwrap_or(0) > 1 {
                    let name = format!("{prefix}{}", renames.len() + 1);
                    renames.insert(g.output.clone(), name);
                }
            }
            let rename = |s: &mut String| {
                if let Some(r) = renames.get(s) {
                    *s = r.clone();
                }
            };
            for g in &mut gates {
                rename(&mut g.output);
                g.inputs.iter_mut().for_each(rename);
            }
            for o in &mut outputs {
                rename(&mut o.rail1);
                rename(&mut o.rail0);
            }
            fanout = fanout.into_iter().map(|(k, v)| (renames.get(&k).cloned().unwrap_or(k), v)).collect();
        }

        let is_fork = |id: &str| fanout.get(id).copied().unwrap_or(0) > 1;
        let inputs: Vec<InputPair> = (1..=self.n)
            .rev()
            .map(|v| InputPair {
                var: v,
                rail1: RailLiteral::new(v, true).net_name(),
                rail0: RailLiteral::new(v, false).net_name(),
            })
            .collect();
        let mut nets = Vec::new();
        for p in &inputs {
            for id in [&p.rail1, &p.rail0] {
                nets.push(NetDecl { id: id.clone(), isochronic: is_fork(id) });
            }
        }
        for g in &gates {
            nets.push(NetDecl { id: g.output.clone(), isochronic: is_fork(&g.output) });
        }
        Netlist { n: self.n, inputs, outputs, gates, nets }
    }
}

impl Netlist {
    /// Renumbers gates per kind in ascending `key` order and reorders the gate
    /// list accordingly. Nets named after a gate id follow the rename.
    pub fn renumbered<K: Ord>(&self, key: impl Fn(usize, &Gate) -> K) -> Netlist {
        let mut order: Vec<usize> = (0..self.gates.len()).collect();
        order.sort_by_key(|&i| key(i, &self.gates[i]));
        let mut counters: HashMap<GateKind, usize> = HashMap::new();
        let mut id_map: HashMap<String, String> = HashMap::new();
        for &i in &order {
            let g = &self.gates[i];
            let k = counters.entry(g.kind).or_insert(0);
            *k += 1;
            id_map.insert(g.id.clone(), format!("{}{}", g.kind.prefix(), k));
        }
        // only nets that carry their driver's id are renamed
        let mut net_map: HashMap<String, String> = HashMap::new();
        for g in &self.gates {
            if g.output == g.id {
                net_map.insert(g.output.clone(), id_map[&g.id].clone());
            }
        }
        let net = |s: &String| net_map.get(s).cloned().unwrap_or_else(|| s.clone());
        let gates: Vec<Gate> = order
            .iter()
            .map(|&i| {
                let g = &self.gates[i];
                Gate {
                    id: id_map[&g.id].clone(),
                    kind: g.kind,
                    inputs: g.inputs.iter().map(net).collect(),
                    output: net(&g.output),
                }
            })
            .collect();
        let outputs = self
            .outputs
            .iter()
            .map(|o| OutputPair { name: o.name.clone(), rail1: net(&o.rail1), rail0: net(&o.rail0) })
            .collect();
        let input_nets: Vec<&NetDecl> =
            self.nets.iter().filter(|d| !self.gates.iter().any(|g| g.output == d.id)).collect();
        let mut nets: Vec<NetDecl> = input_nets.into_iter().cloned().collect();
        for g in &gates {
            let iso = self.nets.iter().any(|d| net(&d.id) == g.output && d.isochronic);
            nets.push(NetDecl { id: g.output.clone(), isochronic: iso });
        }
        Netlist { n: self.n, inputs: self.inputs.clone(), outputs, gates, nets }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn or_merge_tree_respects_fanin() {
        let mut b = NetlistBuilder::new(3);
        let leaves: Vec<String> = (0..7)
            .map(|m| {
                let lits = (1..=3).rev().map(|v| b.input(RailLiteral::new(v, m >> (v - 1) & 1 == 1))).collect();
                b.c_element(lits)
            })
            .collect();
        let root = b.or_merge(leaves, Some(2));
        b.output("f", "X31".into(), root);
        let nl = b.finish();
        assert!(nl.gates.iter().all(|g| g.arity() <= 3));
        assert_eq!(nl.count_gates(GateKind::Or, None), 6);
    }

    #[test]
    fn single_input_merge_is_a_wire() {
        let mut b = NetlistBuilder::new(1);
        let x = b.input(RailLiteral::new(1, true));
        assert_eq!(b.or_merge(vec![x.clone()], None), x);
        assert!(b.finish().gates.is_empty());
    }

    #[test]
    fn forks_are_flagged_and_renamed() {
        let mut b = NetlistBuilder::new(2).fork_prefix("k");
        let s = b.c_element(vec!["X21".into(), "X20".into()]);
        let a = b.c_element(vec![s.clone(), "X11".into()]);
        let c = b.c_element(vec![s, "X10".into()]);
        let o = b.or_merge(vec![a, c], None);
        b.output("f", o, "X20".into());
        let nl = b.finish();
        assert_eq!(nl.gates[0].output, "k1");
        assert!(nl.net("k1").unwrap().isochronic);
        assert!(nl.net("X11").is_some_and(|n| !n.isochronic));
    }
}
