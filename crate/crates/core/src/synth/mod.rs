//! Boolean function to dual-rail netlist synthesis.

mod dims;
mod fdims;
mod safe;

use std::fmt;
use std::str::FromStr;

pub use dims::synth_dims;
pub use fdims::{factored_to_netlist, fdims_factorize, synth_fdims};
pub use safe::{safe_decompose, safe_to_netlist, synth_safe, SafeDecomposition, SafeTerm};

use crate::analysis::{estimate_cost, CostReport, CostSource};
use crate::logic::{dual_rail_cover, BooleanFunction, CoverPair, FactoredExpr, MAX_INPUTS};
use crate::netlist::Netlist;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Dims,
    Fdims,
    Safe,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Dims, Method::Fdims, Method::Safe];

    pub fn name(self) -> &'static str {
        match self {
            Method::Dims => "dims",
            Method::Fdims => "fdims",
            Method::Safe => "safe",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method `{s}` (expected dims, fdims or safe)"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthOptions {
    /// Maximum OR fan-in for output merges; `None` builds one wide OR per rail.
    pub or_fanin: Option<usize>,
    /// Largest accepted input count.
    pub max_inputs: usize,
}

impl Default for SynthOptions {
    fn default() -> Self {
        Self { or_fanin: None, max_inputs: MAX_INPUTS }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SynthError {
    #[error("constant-{0} function rejected: a rail with an empty cover never rises, so the four-phase handshake cannot complete")]
    ConstantFunction(u8),
    #[error("n={n} exceeds the input cap of {cap}: minterm synthesis enumerates 2^{n} = {terms} product terms")]
    TooManyInputs { n: usize, cap: usize, terms: u64 },
    #[error("OR fan-in must be at least 2, got {0}")]
    BadFanin(usize),
}

pub(crate) fn check(f: &BooleanFunction, opts: &SynthOptions) -> Result<(), SynthError> {
    if f.n() > opts.max_inputs {
        return Err(SynthError::TooManyInputs { n: f.n(), cap: opts.max_inputs, terms: 1u64 << f.n() });
    }
    if let Some(k) = opts.or_fanin.filter(|&k| k < 2) {
        return Err(SynthError::BadFanin(k));
    }
    if f.is_constant() {
        return Err(SynthError::ConstantFunction(f.value(0) as u8));
    }
    Ok(())
}

/// A synthesized netlist together with the two-level and factored forms it came from.
#[derive(Debug, Clone)]
pub struct Synthesis {
    pub method: Method,
    pub covers: CoverPair,
    /// `(f1, f0)` expressions for the factored and decomposed methods.
    pub exprs: Option<(FactoredExpr, FactoredExpr)>,
    pub netlist: Netlist,
}

impl Synthesis {
    /// Expression-level metrics alongside the structural cost of the netlist.
    pub fn cost(&self) -> CostReport {
        let expr_cost = match &self.exprs {
            Some((e1, e0)) => estimate_cost(CostSource::Factored(e1, e0)),
            None => estimate_cost(CostSource::Covers(&self.covers.f1, &self.covers.f0)),
        };
        let mut report = expr_cost.combine(estimate_cost(CostSource::Netlist(&self.netlist)));
        report.minterm_count = Some(self.covers.f1.len() + self.covers.f0.len());
        report
    }
}

pub fn synthesize(f: &BooleanFunction, method: Method, opts: &SynthOptions) -> Result<Synthesis, SynthError> {
    check(f, opts)?;
    let covers = dual_rail_cover(f);
    let (exprs, netlist) = match method {
        Method::Dims => (None, synth_dims(f, opts)?),
        Method::Fdims => {
            let e1 = fdims_factorize(&covers.f1).expect("non-constant");
            let e0 = fdims_factorize(&covers.f0).expect("non-constant");
            let nl = factored_to_netlist(f.n(), &e1, &e0, opts.or_fanin);
            (Some((e1, e0)), nl)
        }
        Method::Safe => {
            let d1 = safe_decompose(&covers.f1);
            let d0 = safe_decompose(&covers.f0);
            let nl = safe_to_netlist(&d1, &d0, opts.or_fanin);
            let exprs = d1.to_expr().zip(d0.to_expr());
            (exprs, nl)
        }
    };
    Ok(Synthesis { method, covers, exprs, netlist })
}

pub fn synth(f: &BooleanFunction, method: Method, opts: &SynthOptions) -> Result<Netlist, SynthError> {
    synthesize(f, method, opts).map(|s| s.netlist)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_functions_rejected() {
        let zero = BooleanFunction::from_fn(2, |_| false).unwrap();
        let one = BooleanFunction::from_fn(3, |_| true).unwrap();
        for m in Method::ALL {
            let err = synth(&zero, m, &SynthOptions::default()).unwrap_err();
            assert_eq!(err, SynthError::ConstantFunction(0));
            assert!(err.to_string().contains("handshake"));
            assert_eq!(synth(&one, m, &SynthOptions::default()).unwrap_err(), SynthError::ConstantFunction(1));
        }
    }

    #[test]
    fn cap_rejection_mentions_exponential_enumeration() {
        let f = BooleanFunction::and(5).unwrap();
        let opts = SynthOptions { max_inputs: 4, ..Default::default() };
        let err = synth(&f, Method::Dims, &opts).unwrap_err();
        assert!(err.to_string().contains("2^5 = 32"), "{err}");
    }

    #[test]
    fn fanin_below_two_rejected() {
        let f = BooleanFunction::and(2).unwrap();
        let opts = SynthOptions { or_fanin: Some(1), ..Default::default() };
        assert_eq!(synth(&f, Method::Safe, &opts).unwrap_err(), SynthError::BadFanin(1));
    }

    #[test]
    fn method_names() {
        for m in Method::ALL {
            assert_eq!(m.to_string().parse::<Method>().unwrap(), m);
        }
        assert!("espresso".parse::<Method>().is_err());
    }
}
