use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::logic::{DsopCover, FactoredExpr};
use crate::netlist::{GateKind, Netlist};

/// What to measure.
#[derive(Debug, Clone, Copy)]
pub enum CostSource<'a> {
    /// `(f1, f0)` two-level covers.
    Covers(&'a DsopCover, &'a DsopCover),
    /// `(f1, f0)` factored expressions.
    Factored(&'a FactoredExpr, &'a FactoredExpr),
    Netlist(&'a Netlist),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GateCount {
    pub kind: GateKind,
    pub arity: usize,
    pub count: usize,
}

/// Expression-level and structural cost. Fields a source cannot supply stay `None`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct CostReport {
    /// Product terms of the two-level minterm covers.
    pub minterm_count: Option<usize>,
    /// Top-level sum terms only, ignoring any sums nested inside them.
    pub naive_top_level_terms: Option<usize>,
    /// Product terms after multiplying out nested sums.
    pub expanded_product_terms: Option<usize>,
    /// Set when the top-level count hides a product of sums.
    pub underestimates: bool,
    pub literal_count: Option<usize>,
    /// Ordered by kind, then arity.
    pub gates: Vec<GateCount>,
    pub logic_depth: Option<usize>,
}

impl CostReport {
    pub fn total_gates(&self) -> usize {
        self.gates.iter().map(|g| g.count).sum()
    }

    pub fn count(&self, kind: GateKind, arity: Option<usize>) -> usize {
        self.gates.iter().filter(|g| g.kind == kind && arity.is_none_or(|a| g.arity == a)).map(|g| g.count).sum()
    }

    /// Fills every field missing in `self` from `other`.
    pub fn combine(self, other: CostReport) -> CostReport {
        CostReport {
            minterm_count: self.minterm_count.or(other.minterm_count),
            naive_top_level_terms: self.naive_top_level_terms.or(other.naive_top_level_terms),
            expanded_product_terms: self.expanded_product_terms.or(other.expanded_product_terms),
            underestimates: self.underestimates || other.underestimates,
            literal_count: self.literal_count.or(other.literal_count),
            gates: if self.gates.is_empty() { other.gates } else { self.gates },
            logic_depth: self.logic_depth.or(other.logic_depth),
        }
    }
}

pub fn estimate_cost(source: CostSource<'_>) -> CostReport {
    match source {
        CostSource::Covers(f1, f0) => {
            let terms = f1.len() + f0.len();
            CostReport {
                minterm_count: (f1.is_minterm_cover() && f0.is_minterm_cover()).then_some(terms),
                naive_top_level_terms: Some(terms),
                expanded_product_terms: Some(terms),
                literal_count: Some(f1.literal_count() + f0.literal_count()),
                ..Default::default()
            }
        }
        CostSource::Factored(e1, e0) => CostReport {
            naive_top_level_terms: Some(e1.summands().len() + e0.summands().len()),
            expanded_product_terms: Some(e1.expanded_term_count() + e0.expanded_term_count()),
            underestimates: e1.has_product_of_sums() || e0.has_product_of_sums(),
            literal_count: Some(e1.literal_count() + e0.literal_count()),
            ..Default::default()
        },
        CostSource::Netlist(nl) => {
            let mut inventory: BTreeMap<(GateKind, usize), usize> = BTreeMap::new();
            for g in &nl.gates {
                *inventory.entry((g.kind, g.arity())).or_default() += 1;
            }
            CostReport {
                gates: inventory.into_iter().map(|((kind, arity), count)| GateCount { kind, arity, count }).collect(),
                logic_depth: nl.validate().ok().map(|c| c.depths().into_iter().max().unwrap_or(0)),
                ..Default::default()
            }
        }
    }
}

impl fmt::Display for CostReport {
    /// One line per known metric; fields left `None` are skipped.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(m) = self.minterm_count {
            writeln!(f, "minterm product terms: {m}")?;
        }
        if let Some(t) = self.naive_top_level_terms {
            write!(f, "naive top-level terms: {t}")?;
            if self.underestimates {
                write!(f, " (underestimates: contains product of sums)")?;
            }
            writeln!(f)?;
        }
        if let Some(t) = self.expanded_product_terms {
            writeln!(f, "expanded product terms: {t}")?;
        }
        if let Some(l) = self.literal_count {
            writeln!(f, "literals: {l}")?;
        }
        let inventory: Vec<String> = self.gates.iter().map(|g| format!("{}x {}{}", g.count, g.kind, g.arity)).collect();
        if !inventory.is_empty() {
            writeln!(f, "gates: {} ({})", self.total_gates(), inventory.join(", "))?;
        }
        if let Some(d) = self.logic_depth {
            writeln!(f, "logic depth: {d}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{dual_rail_cover, BooleanFunction};
    use crate::netlist::{build_fixture, Fixture};

    const EQ1: &str = "X31X21X11";
    const EQ3: &str = "(X30 + X31)(X20 + X21)X10 + (X30 + X31)X20X11 + X30X21X11";

    #[test]
    fn minterm_cost() {
        let c = dual_rail_cover(&BooleanFunction::and(3).unwrap());
        let r = estimate_cost(CostSource::Covers(&c.f1, &c.f0));
        assert_eq!(r.minterm_count, Some(8));
        assert_eq!(r.literal_count, Some(24));
        assert!(!r.underestimates);
    }

    #[test]
    fn factored_cost_is_underestimated() {
        let e1 = FactoredExpr::parse(EQ1).unwrap();
        let e0 = FactoredExpr::parse(EQ3).unwrap();
        let r = estimate_cost(CostSource::Factored(&e1, &e0));
        assert_eq!(r.naive_top_level_terms, Some(4));
        assert_eq!(r.expanded_product_terms, Some(8));
        assert_eq!(r.literal_count, Some(15));
        assert!(r.underestimates);
        assert!(r.to_string().contains("4 (underestimates: contains product of sums)"));
    }

    #[test]
    fn safe_fixture_inventory() {
        let r = estimate_cost(CostSource::Netlist(&build_fixture(Fixture::Fig5, None)));
        assert_eq!(r.count(GateKind::CElement, None), 11);
        assert_eq!(r.count(GateKind::CElement, Some(2)), 9);
        assert_eq!(r.count(GateKind::CElement, Some(3)), 2);
        assert_eq!(r.count(GateKind::Or, None), 2);
        assert_eq!(r.logic_depth, Some(4));
    }

    #[test]
    fn combine_prefers_left() {
        let a = CostReport { minterm_count: Some(1), ..Default::default() };
        let b = CostReport { minterm_count: Some(2), logic_depth: Some(3), underestimates: true, ..Default::default() };
        let c = a.combine(b);
        assert_eq!((c.minterm_count, c.logic_depth, c.underestimates), (Some(1), Some(3), true));
    }
}
