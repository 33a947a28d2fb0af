//! Orphan-free decomposition of minterm covers.
//!
//! Two minterms that differ only in the rail of one variable `v` share the
//! remaining literals. Those are collected in one C-element whose output forks
//! isochronously into two 2-input C-elements, one per rail of `v`. Exactly one
//! rail of `v` is high for valid data, so whichever branch fires acknowledges
//! the shared C-element. The shared products are decomposed again by the same
//! rule; nothing else is ever split.

use std::collections::HashMap;

use super::{check, SynthError, SynthOptions};
use crate::logic::{dual_rail_cover, BooleanFunction, DsopCover, FactoredExpr, ProductTerm, RailLiteral};
use crate::netlist::{Netlist, NetlistBuilder};

/// How one product term of a cover is realized.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SafeTerm {
    /// A single C-element over all literals (a wire for one literal).
    Full(ProductTerm),
    /// `shared · lit`: a 2-input C-element fed by the shared node, whose
    /// partner term uses the opposite rail of `lit`'s variable.
    Split { shared: Box<SafeTerm>, lit: RailLiteral },
}

impl SafeTerm {
    /// The product this node computes.
    pub fn product(&self) -> ProductTerm {
        match self {
            SafeTerm::Full(t) => t.clone(),
            SafeTerm::Split { shared, lit } => {
                ProductTerm::new(shared.product().literals().iter().copied().chain([*lit])).expect("disjoint vars")
            }
        }
    }
}

/// Per-term decomposition of one output rail, aligned with the cover's term order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SafeDecomposition {
    pub n: usize,
    pub terms: Vec<SafeTerm>,
}

impl SafeDecomposition {
    /// Grouped sum form: each pair becomes `shared·(Xv0 + Xv1)`, other terms
    /// stay plain products. Groups keep the order of their first term.
    pub fn to_expr(&self) -> Option<FactoredExpr> {
        let mut summands: Vec<FactoredExpr> = Vec::new();
        let mut seen: Vec<(ProductTerm, usize)> = Vec::new();
        for t in &self.terms {
            match t {
                SafeTerm::Full(p) => summands.push(FactoredExpr::from_term(p)?),
                SafeTerm::Split { shared, lit } => {
                    let key = (shared.product(), lit.var());
                    if seen.contains(&key) {
                        continue;
                    }
                    let rails =
                        FactoredExpr::or([false, true].map(|r| FactoredExpr::lit(RailLiteral::new(lit.var(), r))));
                    let mut factors: Vec<FactoredExpr> =
                        key.0.literals().iter().map(|&l| FactoredExpr::lit(l)).collect();
                    factors.push(rails);
                    factors.sort_by_key(|e| std::cmp::Reverse(e.max_var()));
                    summands.push(FactoredExpr::and(factors));
                    seen.push(key);
                }
            }
        }
        (!summands.is_empty()).then(|| FactoredExpr::or(summands))
    }
}

/// Decomposes a minterm cover by repeated pairing.
///
/// At each level the pairing variable is the one giving the most pairs; ties
/// go to the lowest-numbered variable (`X1` first). Pairs are formed in
/// ascending term order.
pub fn safe_decompose(cover: &DsopCover) -> SafeDecomposition {
    SafeDecomposition { n: cover.n(), terms: decompose(cover.terms()) }
}

fn decompose(terms: &[ProductTerm]) -> Vec<SafeTerm> {
    let Some((var, pairs)) = best_pairing(terms) else {
        return terms.iter().cloned().map(SafeTerm::Full).collect();
    };
    let shared: Vec<ProductTerm> = pairs.iter().map(|&(i, _)| terms[i].without_var(var)).collect();
    let shared = decompose(&shared);
    let mut out: Vec<SafeTerm> = terms.iter().cloned().map(SafeTerm::Full).collect();
    for (k, &(i, j)) in pairs.iter().enumerate() {
        for t in [i, j] {
            let lit = terms[t].literal_of(var).expect("paired on var");
            out[t] = SafeTerm::Split { shared: Box::new(shared[k].clone()), lit };
        }
    }
    out
}

fn best_pairing(terms: &[ProductTerm]) -> Option<(usize, Vec<(usize, usize)>)> {
    let max_var = terms.iter().map(ProductTerm::max_var).max().unwrap_or(0);
    let mut best: Option<(usize, Vec<(usize, usize)>)> = None;
    for var in 1..=max_var {
        let pairs = pairs_on(terms, var);
        if !pairs.is_empty() && best.as_ref().is_none_or(|(_, b)| pairs.len() > b.len()) {
            best = Some((var, pairs));
        }
    }
    best
}

fn pairs_on(terms: &[ProductTerm], var: usize) -> Vec<(usize, usize)> {
    let mut used = vec![false; terms.len()];
    let mut pairs = Vec::new();
    for i in 0..terms.len() {
        if used[i] || terms[i].len() < 2 {
            continue;
        }
        let Some(lit) = terms[i].literal_of(var) else { continue };
        let partner = terms[i].without(lit);
        let found = (i + 1..terms.len()).find(|&j| {
            !used[j] && terms[j].contains(lit.complement()) && terms[j].without(lit.complement()) == partner
        });
        if let Some(j) = found {
            used[i] = true;
            used[j] = true;
            pairs.push((i, j));
        }
    }
    pairs
}

/// Builds the netlist for a decomposed rail pair.
///
/// Gates are numbered by logic depth, then true rail before false rail, then
/// term order; forked shared nodes are named `k1, k2, ..`.
pub fn safe_to_netlist(f1: &SafeDecomposition, f0: &SafeDecomposition, or_fanin: Option<usize>) -> Netlist {
    let mut b = NetlistBuilder::new(f1.n).fork_prefix("k");
    let mut rails = Vec::with_capacity(2);
    for d in [f1, f0] {
        let mut memo: HashMap<SafeTerm, String> = HashMap::new();
        let nets: Vec<String> = d.terms.iter().map(|t| realize(&mut b, &mut memo, t)).collect();
        rails.push(b.or_merge(nets, or_fanin));
    }
    let f0_net = rails.pop().unwrap();
    let f1_net = rails.pop().unwrap();
    b.output("f", f1_net, f0_net);
    let nl = b.finish();

    let depths = nl.validate().expect("decomposition is well-formed").depths();
    nl.renumbered(|i, _| (depths[i], i))
}

fn realize(b: &mut NetlistBuilder, memo: &mut HashMap<SafeTerm, String>, t: &SafeTerm) -> String {
    if let Some(net) = memo.get(t) {
        return net.clone();
    }
    let net = match t {
        SafeTerm::Full(p) => {
            let lits = p.literals().iter().map(|&l| b.input(l)).collect();
            b.c_or_wire(lits)
        }
        SafeTerm::Split { shared, lit } => {
            let s = realize(b, memo, shared);
            let l = b.input(*lit);
            b.c_element(vec![s, l])
        }
    };
    memo.insert(t.clone(), net.clone());
    net
}

pub fn synth_safe(f: &BooleanFunction, opts: &SynthOptions) -> Result<Netlist, SynthError> {
    check(f, opts)?;
    let covers = dual_rail_cover(f);
    Ok(safe_to_netlist(&safe_decompose(&covers.f1), &safe_decompose(&covers.f0), opts.or_fanin))
}
