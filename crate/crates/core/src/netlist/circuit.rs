use std::collections::{BTreeSet, HashMap};
use std::fmt;

use super::{Gate, Netlist, NetlistError};
use crate::logic::{RailLiteral, Rails};

/// Well-formedness violation found by [`Netlist::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    InputCount { expected: usize, found: usize },
    BadInputPair { var: usize },
    DuplicateNet { net: String },
    DuplicateGate { gate: String },
    ArityTooSmall { gate: String, arity: usize },
    UndeclaredNet { net: String, referenced_by: String },
    UndrivenNet { net: String },
    MultipleDrivers { net: String, drivers: Vec<String> },
    Cycle { gate: String },
    DanglingNet { net: String },
    IsochronicWithoutFork { net: String },
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Diagnostic::InputCount { expected, found } => {
                write!(f, "expected {expected} input rail pairs, found {found}")
            }
            Diagnostic::BadInputPair { var } => write!(f, "input pair for X{var} is missing or repeated"),
            Diagnostic::DuplicateNet { net } => write!(f, "net {net} declared more than once"),
            Diagnostic::DuplicateGate { gate } => write!(f, "gate id {gate} used more than once"),
            Diagnostic::ArityTooSmall { gate, arity } => {
                write!(f, "gate {gate} has arity {arity}; at least 2 inputs required")
            }
            Diagnostic::UndeclaredNet { net, referenced_by } => {
                write!(f, "net {net} referenced by {referenced_by} is not declared")
            }
            Diagnostic::UndrivenNet { net } => write!(f, "net {net} has no driver"),
            Diagnostic::MultipleDrivers { net, drivers } => {
                write!(f, "net {net} has multiple drivers: {}", drivers.join(", "))
            }
            Diagnostic::Cycle { gate } => write!(f, "combinational cycle through gate {gate}"),
            Diagnostic::DanglingNet { net } => {
                write!(f, "net {net} drives nothing and is not a primary output")
            }
            Diagnostic::IsochronicWithoutFork { net } => {
                write!(f, "net {net} is flagged isochronic but has fanout <= 1")
            }
        }
    }
}

/// Non-empty list of diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostics(pub Vec<Diagnostic>);

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Driver {
    Input(RailLiteral),
    Gate(usize),
}

/// A validated netlist with resolved connectivity.
#[derive(Debug, Clone)]
pub struct Circuit {
    netlist: Netlist,
    net_index: HashMap<String, usize>,
    driver: Vec<Driver>,
    /// Distinct consumer gates per net, ascending.
    fanout: Vec<Vec<usize>>,
    gate_inputs: Vec<Vec<usize>>,
    gate_output: Vec<usize>,
    topo: Vec<usize>,
    topo_rank: Vec<usize>,
    outputs: Vec<(usize, usize)>,
    is_output: Vec<bool>,
    input_nets: Vec<(RailLiteral, usize)>,
}

impl Netlist {
    /// Checks every structural invariant and resolves connectivity.
    pub fn validate(&self) -> Result<Circuit, Diagnostics> {
        let mut diags = Vec::new();

        if self.inputs.len() != self.n {
            diags.push(Diagnostic::InputCount { expected: self.n, found: self.inputs.len() });
        }
        let mut input_rails: HashMap<&str, RailLiteral> = HashMap::new();
        for var in 1..=self.n {
            let pairs: Vec<_> = self.inputs.iter().filter(|p| p.var == var).collect();
            if pairs.len() != 1 || pairs[0].rail1 == pairs[0].rail0 {
                diags.push(Diagnostic::BadInputPair { var });
                continue;
            }
            input_rails.insert(&pairs[0].rail1, RailLiteral::new(var, true));
            input_rails.insert(&pairs[0].rail0, RailLiteral::new(var, false));
        }
        if let Some(p) = self.inputs.iter().find(|p| p.var == 0 || p.var > self.n) {
            diags.push(Diagnostic::BadInputPair { var: p.var });
        }

        let mut net_index = HashMap::new();
        for (i, d) in self.nets.iter().enumerate() {
            if net_index.insert(d.id.clone(), i).is_some() {
                diags.push(Diagnostic::DuplicateNet { net: d.id.clone() });
            }
        }
        let mut gate_ids = BTreeSet::new();
        for g in &self.gates {
            if !gate_ids.insert(g.id.as_str()) {
                diags.push(Diagnostic::DuplicateGate { gate: g.id.clone() });
            }
            if g.arity() < 2 {
                diags.push(Diagnostic::ArityTooSmall { gate: g.id.clone(), arity: g.arity() });
            }
        }

        let lookup = |net: &str, by: &str, diags: &mut Vec<Diagnostic>| -> Option<usize> {
            let found = net_index.get(net).copied();
            if found.is_none() {
                diags.push(Diagnostic::UndeclaredNet { net: net.to_string(), referenced_by: by.to_string() });
            }
            found
        };
        for name in input_rails.keys() {
            lookup(name, "the input list", &mut diags);
        }

        let nets = self.nets.len();
        let mut drivers: Vec<Vec<(String, Driver)>> = vec![Vec::new(); nets];
        for (name, lit) in &input_rails {
            if let Some(&i) = net_index.get(*name) {
                drivers[i].push((format!("input {lit}"), Driver::Input(*lit)));
            }
        }
        let mut gate_inputs = Vec::with_capacity(self.gates.len());
        let mut gate_output = Vec::with_capacity(self.gates.len());
        for (gi, g) in self.gates.iter().enumerate() {
            let ins: Vec<usize> = g.inputs.iter().filter_map(|n| lookup(n, &g.id, &mut diags)).collect();
            gate_inputs.push(ins);
            match lookup(&g.output, &g.id, &mut diags) {
                Some(o) => {
                    drivers[o].push((g.id.clone(), Driver::Gate(gi)));
                    gate_output.push(o);
                }
                None => gate_output.push(usize::MAX),
            }
        }
        let mut driver = Vec::with_capacity(nets);
        for (i, ds) in drivers.iter().enumerate() {
            match ds.len() {
                0 => diags.push(Diagnostic::UndrivenNet { net: self.nets[i].id.clone() }),
                1 => {}
                _ => diags.push(Diagnostic::MultipleDrivers {
                    net: self.nets[i].id.clone(),
                    drivers: ds.iter().map(|d| d.0.clone()).collect(),
                }),
            }
            driver.push(ds.first().map(|d| d.1));
        }

        let mut outputs = Vec::new();
        let mut is_output = vec![false; nets];
        for o in &self.outputs {
            let by = format!("output {}", o.name);
            let r1 = lookup(&o.rail1, &by, &mut diags);
            let r0 = lookup(&o.rail0, &by, &mut diags);
            if let (Some(r1), Some(r0)) = (r1, r0) {
                is_output[r1] = true;
                is_output[r0] = true;
                outputs.push((r1, r0));
            }
        }

        if !diags.is_empty() {
            return Err(Diagnostics(diags));
        }

        let mut fanout = vec![Vec::new(); nets];
        for (gi, ins) in gate_inputs.iter().enumerate() {
            for &n in ins {
                if fanout[n].last() != Some(&gi) && !fanout[n].contains(&gi) {
                    fanout[n].push(gi);
                }
            }
        }

        // Kahn's algorithm, ready gates taken in declaration order
        let driver: Vec<Driver> = driver.into_iter().map(|d| d.unwrap()).collect();
        let mut pending: Vec<usize> = gate_inputs
            .iter()
            .map(|ins| {
                let mut srcs: Vec<usize> =
                    ins.iter().filter(|&&n| matches!(driver[n], Driver::Gate(_))).copied().collect();
                srcs.sort_unstable();
                srcs.dedup();
                srcs.len()
            })
            .collect();
        let mut ready: BTreeSet<usize> = (0..self.gates.len()).filter(|&g| pending[g] == 0).collect();
        let mut topo = Vec::with_capacity(self.gates.len());
        while let Some(g) = ready.pop_first() {
            topo.push(g);
            for &c in &fanout[gate_output[g]] {
                pending[c] -= 1;
                if pending[c] == 0 {
                    ready.insert(c);
                }
            }
        }
        if topo.len() != self.gates.len() {
            let stuck = (0..self.gates.len()).find(|g| !topo.contains(g)).unwrap();
            diags.push(Diagnostic::Cycle { gate: self.gates[stuck].id.clone() });
        }

        for (i, d) in self.nets.iter().enumerate() {
            let is_gate_net = matches!(driver[i], Driver::Gate(_));
            if is_gate_net && fanout[i].is_empty() && !is_output[i] {
                diags.push(Diagnostic::DanglingNet { net: d.id.clone() });
            }
            if d.isochronic && fanout[i].len() <= 1 {
                diags.push(Diagnostic::IsochronicWithoutFork { net: d.id.clone() });
            }
        }
        if !diags.is_empty() {
            return Err(Diagnostics(diags));
        }

        let mut topo_rank = vec![0; self.gates.len()];
        for (r, &g) in topo.iter().enumerate() {
            topo_rank[g] = r;
        }
        let mut input_nets: Vec<(RailLiteral, usize)> =
            input_rails.iter().map(|(name, lit)| (*lit, net_index[*name])).collect();
        input_nets.sort();

        Ok(Circuit {
            netlist: self.clone(),
            net_index,
            driver,
            fanout,
            gate_inputs,
            gate_output,
            topo,
            topo_rank,
            outputs,
            is_output,
            input_nets,
        })
    }
}

impl Circuit {
    pub fn netlist(&self) -> &Netlist {
        &self.netlist
    }

    pub fn n(&self) -> usize {
        self.netlist.n
    }

    pub fn net_count(&self) -> usize {
        self.netlist.nets.len()
    }

    pub fn gate_count(&self) -> usize {
        self.netlist.gates.len()
    }

    pub fn net_name(&self, net: usize) -> &str {
        &self.netlist.nets[net].id
    }

    pub fn net_id(&self, name: &str) -> Option<usize> {
        self.net_index.get(name).copied()
    }

    pub fn is_isochronic(&self, net: usize) -> bool {
        self.netlist.nets[net].isochronic
    }

    pub fn gate(&self, g: usize) -> &Gate {
        &self.netlist.gates[g]
    }

    pub fn gate_inputs(&self, g: usize) -> &[usize] {
        &self.gate_inputs[g]
    }

    pub fn gate_output(&self, g: usize) -> usize {
        self.gate_output[g]
    }

    pub fn driver(&self, net: usize) -> Driver {
        self.driver[net]
    }

    /// Gate driving `net`, if it is not a primary input.
    pub fn driving_gate(&self, net: usize) -> Option<usize> {
        match self.driver[net] {
            Driver::Gate(g) => Some(g),
            Driver::Input(_) => None,
        }
    }

    pub fn fanout(&self, net: usize) -> &[usize] {
        &self.fanout[net]
    }

    pub fn topo_order(&self) -> &[usize] {
        &self.topo
    }

    pub fn topo_rank(&self, g: usize) -> usize {
        self.topo_rank[g]
    }

    /// `(rail1, rail0)` net per output pair.
    pub fn outputs(&self) -> &[(usize, usize)] {
        &self.outputs
    }

    pub fn output_name(&self, i: usize) -> &str {
        &self.netlist.outputs[i].name
    }

    pub fn is_primary_output(&self, net: usize) -> bool {
        self.is_output[net]
    }

    /// Primary input rails and their nets, ordered by literal.
    pub fn input_nets(&self) -> &[(RailLiteral, usize)] {
        &self.input_nets
    }

    /// True if every input of gate `g` is a primary input rail.
    pub fn is_first_stage(&self, g: usize) -> bool {
        self.gate_inputs[g].iter().all(|&n| matches!(self.driver[n], Driver::Input(_)))
    }

    /// Longest gate path from inputs to `g`, counting `g`.
    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0; self.gate_count()];
        for &g in &self.topo {
            depth[g] = 1 + self.gate_inputs[g]
                .iter()
                .filter_map(|&n| self.driving_gate(n).map(|d| depth[d]))
                .max()
                .unwrap_or(0);
        }
        depth
    }

    /// Name-independent rendering of the logic feeding output rail `net`:
    /// inputs print as literals, gates as `C(..)`/`OR(..)` with sorted operands.
    /// Forked gate outputs are marked with `~` when isochronic.
    pub fn structural_signature(&self, net: usize) -> String {
        fn walk(c: &Circuit, net: usize, memo: &mut HashMap<usize, String>) -> String {
            if let Some(s) = memo.get(&net) {
                return s.clone();
            }
            let s = match c.driver[net] {
                Driver::Input(lit) => lit.to_string(),
                Driver::Gate(g) => {
                    let mut ops: Vec<String> = c.gate_inputs[g].iter().map(|&n| walk(c, n, memo)).collect();
                    ops.sort();
                    let fork = if c.fanout[net].len() > 1 && c.is_isochronic(net) { "~" } else { "" };
                    format!("{}{fork}({})", c.gate(g).kind.prefix(), ops.join(","))
                }
            };
            memo.insert(net, s.clone());
            s
        }
        walk(self, net, &mut HashMap::new())
    }

    /// Zero-delay evaluation from the all-zero state (C-element state 0).
    pub fn eval(&self, rails: &Rails) -> Result<Vec<(bool, bool)>, NetlistError> {
        if rails.n() != self.n() {
            return Err(NetlistError::Arity { expected: self.n(), found: rails.n() });
        }
        let mut value = vec![false; self.net_count()];
        for &(lit, net) in &self.input_nets {
            value[net] = rails.get(lit);
        }
        // Declaration-order sweeps; a topologically sorted netlist settles in one.
        let limit = (self.gate_count() * 2).max(1);
        let mut settled = false;
        for _ in 0..=limit {
            let mut changed = false;
            for (g, gate) in self.netlist.gates.iter().enumerate() {
                let out = self.gate_output[g];
                let next = gate.kind.next(self.gate_inputs[g].iter().map(|&n| value[n]), value[out]);
                if next != value[out] {
                    value[out] = next;
                    changed = true;
                }
            }
            if !changed {
                settled = true;
                break;
            }
        }
        if !settled {
            return Err(NetlistError::NonConvergence { sweeps: limit });
        }
        Ok(self.outputs.iter().map(|&(r1, r0)| (value[r1], value[r0])).collect())
    }
}
