//! Reconstruction of the "factorized DIMS" heuristic.
//!
//! The original method was only ever shown on the 3-input AND, so the general
//! procedure here is a best guess that reproduces that example exactly:
//!
//! 1. Split the minterms by the rail of `X1`.
//! 2. Strip the `X1` literal from each group. If the residual terms form the
//!    full cross product over their variables, the group becomes a product of
//!    rail pairs, `(X30 + X31)(X20 + X21)X10`.
//! 3. Otherwise repeatedly pull out the most frequent literal (ties: lowest
//!    variable, then false rail) and factor its cofactors the same way.
//!    Terms sharing nothing stay plain products.
//!
//! The factored form is functionally exact but not safe for indicating
//! circuits: the shared OR gates it introduces can switch without any
//! C-element downstream acknowledging them.

use std::collections::HashMap;

use super::{check, SynthError, SynthOptions};
use crate::logic::{dual_rail_cover, BooleanFunction, DsopCover, FactoredExpr, ProductTerm, RailLiteral};
use crate::netlist::{GateKind, Netlist, NetlistBuilder};

/// Factors a minterm cover; `None` for an empty cover.
pub fn fdims_factorize(cover: &DsopCover) -> Option<FactoredExpr> {
    if cover.is_empty() {
        return None;
    }
    let mut summands = Vec::new();
    for rail in [false, true] {
        let lit = RailLiteral::new(1, rail);
        let group: Vec<ProductTerm> =
            cover.terms().iter().filter(|t| t.contains(lit)).map(|t| t.without(lit)).collect();
        if group.is_empty() {
            continue;
        }
        if group.iter().all(ProductTerm::is_empty) {
            summands.push(FactoredExpr::lit(lit));
            continue;
        }
        for s in factor_terms(&group) {
            summands.push(product(vec![s, FactoredExpr::lit(lit)]));
        }
    }
    let rest: Vec<ProductTerm> = cover.terms().iter().filter(|t| t.literal_of(1).is_none()).cloned().collect();
    if !rest.is_empty() {
        summands.extend(factor_terms(&rest));
    }
    Some(FactoredExpr::or(summands))
}

/// And-node with children ordered by descending highest variable.
fn product(children: Vec<FactoredExpr>) -> FactoredExpr {
    match FactoredExpr::and(children) {
        FactoredExpr::And(mut c) => {
            c.sort_by_key(|e| std::cmp::Reverse(e.max_var()));
            FactoredExpr::And(c)
        }
        other => other,
    }
}

fn term_expr(t: &ProductTerm) -> FactoredExpr {
    FactoredExpr::from_term(t).expect("non-empty term")
}

/// Factors a set of non-empty terms over a common variable set into summands.
fn factor_terms(terms: &[ProductTerm]) -> Vec<FactoredExpr> {
    if terms.len() == 1 {
        return vec![term_expr(&terms[0])];
    }
    if let Some(cross) = cross_product(terms) {
        return vec![cross];
    }

    let mut freq: HashMap<RailLiteral, usize> = HashMap::new();
    for t in terms {
        for &l in t.literals() {
            *freq.entry(l).or_default() += 1;
        }
    }
    let best = freq
        .into_iter()
        .filter(|&(_, c)| c >= 2)
        .max_by(|(a, ca), (b, cb)| ca.cmp(cb).then(b.var().cmp(&a.var())).then(b.rail().cmp(&a.rail())));
    let Some((lit, _)) = best else {
        return terms.iter().map(term_expr).collect();
    };

    let (with, rest): (Vec<&ProductTerm>, Vec<&ProductTerm>) = terms.iter().partition(|t| t.contains(lit));
    let cofactors: Vec<ProductTerm> = with.iter().map(|t| t.without(lit)).collect();
    let factored = if cofactors.iter().any(ProductTerm::is_empty) {
        // absorption: lit + lit·x = lit
        FactoredExpr::lit(lit)
    } else {
        product(vec![FactoredExpr::or(factor_terms(&cofactors)), FactoredExpr::lit(lit)])
    };
    let mut out = vec![factored];
    if !rest.is_empty() {
        let rest: Vec<ProductTerm> = rest.into_iter().cloned().collect();
        out.extend(factor_terms(&rest));
    }
    out
}

/// `(Xv0 + Xv1)` for every variable when the terms enumerate all rail combinations.
fn cross_product(terms: &[ProductTerm]) -> Option<FactoredExpr> {
    let vars = terms[0].vars();
    if vars.is_empty() || terms.iter().any(|t| t.vars() != vars) || terms.len() != 1 << vars.len() {
        return None;
    }
    let mut distinct: Vec<&ProductTerm> = terms.iter().collect();
    distinct.sort();
    distinct.dedup();
    if distinct.len() != terms.len() {
        return None;
    }
    let factors =
        vars.iter().map(|v| FactoredExpr::or([false, true].map(|r| FactoredExpr::lit(RailLiteral::new(v, r)))));
    Some(product(factors.collect()))
}

/// Maps an expression pair onto gates: `And` nodes become C-elements and
/// `Or` nodes OR gates. Structurally identical subexpressions are built once;
/// the resulting forks are flagged isochronic.
pub fn factored_to_netlist(n: usize, f1: &FactoredExpr, f0: &FactoredExpr, or_fanin: Option<usize>) -> Netlist {
    let mut b = NetlistBuilder::new(n).fork_prefix("k");
    let mut memo = HashMap::new();
    let r1 = build(&mut b, &mut memo, f1, or_fanin);
    let r0 = build(&mut b, &mut memo, f0, or_fanin);
    b.output("f", r1, r0);
    b.finish()
}

fn build(
    b: &mut NetlistBuilder,
    memo: &mut HashMap<FactoredExpr, String>,
    e: &FactoredExpr,
    or_fanin: Option<usize>,
) -> String {
    if let FactoredExpr::Literal(l) = e {
        return b.input(*l);
    }
    let key = e.canonical();
    if let Some(net) = memo.get(&key) {
        return net.clone();
    }
    let net = match e {
        FactoredExpr::And(children) => {
            // operands are instantiated low variable first
            let mut nets: Vec<String> = children.iter().rev().map(|c| build(b, memo, c, or_fanin)).collect();
            nets.reverse();
            b.gate(GateKind::CElement, nets)
        }
        FactoredExpr::Or(children) => {
            let nets = children.iter().map(|c| build(b, memo, c, or_fanin)).collect();
            b.or_merge(nets, or_fanin)
        }
        FactoredExpr::Literal(_) => unreachable!(),
    };
    memo.insert(key, net.clone());
    net
}

pub fn synth_fdims(f: &BooleanFunction, opts: &SynthOptions) -> Result<Netlist, SynthError> {
    check(f, opts)?;
    let covers = dual_rail_cover(f);
    let e1 = fdims_factorize(&covers.f1).expect("non-constant");
    let e0 = fdims_factorize(&covers.f0).expect("non-constant");
    Ok(factored_to_netlist(f.n(), &e1, &e0, opts.or_fanin))
}
