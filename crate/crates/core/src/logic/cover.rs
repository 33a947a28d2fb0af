use std::fmt;
use std::str::FromStr;

use super::{BooleanFunction, LogicError, Rails, VarSet};

/// One wire of a dual-rail pair: `X31` is the true rail of `X3`, `X30` the false rail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RailLiteral {
    var: usize,
    rail: bool,
}

impl RailLiteral {
    pub fn new(var: usize, rail: bool) -> Self {
        assert!(var >= 1, "variables are numbered from 1");
        Self { var, rail }
    }

    pub fn var(&self) -> usize {
        self.var
    }

    pub fn rail(&self) -> bool {
        self.rail
    }

    pub fn complement(&self) -> Self {
        Self { var: self.var, rail: !self.rail }
    }

    /// Net name used for this rail in generated netlists.
    pub fn net_name(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for RailLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X{}{}", self.var, self.rail as u8)
    }
}

impl FromStr for RailLiteral {
    type Err = LogicError;

    /// `X31` parses as var 3 rail 1; the last digit is always the rail.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LogicError::Literal(s.to_string());
        let body = s.strip_prefix('X').ok_or_else(bad)?;
        if body.len() < 2 || !body.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let (var, rail) = body.split_at(body.len() - 1);
        let var: usize = var.parse().map_err(|_| bad())?;
        let rail = match rail {
            "0" => false,
            "1" => true,
            _ => return Err(bad()),
        };
        if var == 0 {
            return Err(bad());
        }
        Ok(RailLiteral::new(var, rail))
    }
}

/// Conjunction of rail literals, at most one per variable.
///
/// Literals are kept in descending variable order (`X3.. X1`), which is the
/// order terms are written in.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductTerm {
    literals: Vec<RailLiteral>,
}

impl ProductTerm {
    pub fn new(literals: impl IntoIterator<Item = RailLiteral>) -> Result<Self, LogicError> {
        let mut literals: Vec<RailLiteral> = literals.into_iter().collect();
        literals.sort_by(|a, b| b.cmp(a));
        literals.dedup();
        if let Some(w) = literals.windows(2).find(|w| w[0].var == w[1].var) {
            return Err(LogicError::BothRails { var: w[0].var });
        }
        Ok(Self { literals })
    }

    /// The full `n`-literal product term of minterm `m`.
    pub fn minterm(n: usize, m: u32) -> Self {
        Self { literals: (1..=n).rev().map(|v| RailLiteral::new(v, m >> (v - 1) & 1 == 1)).collect() }
    }

    pub fn literals(&self) -> &[RailLiteral] {
        &self.literals
    }

    pub fn len(&self) -> usize {
        self.literals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.literals.is_empty()
    }

    pub fn vars(&self) -> VarSet {
        VarSet::from_vars(self.literals.iter().map(|l| l.var))
    }

    pub fn literal_of(&self, var: usize) -> Option<RailLiteral> {
        self.literals.iter().copied().find(|l| l.var == var)
    }

    pub fn contains(&self, lit: RailLiteral) -> bool {
        self.literals.contains(&lit)
    }

    pub fn without_var(&self, var: usize) -> Self {
        Self { literals: self.literals.iter().copied().filter(|l| l.var != var).collect() }
    }

    pub fn without(&self, lit: RailLiteral) -> Self {
        Self { literals: self.literals.iter().copied().filter(|&l| l != lit).collect() }
    }

    pub fn max_var(&self) -> usize {
        self.literals.first().map_or(0, |l| l.var)
    }

    pub fn is_satisfied(&self, rails: &Rails) -> bool {
        self.literals.iter().all(|&l| rails.get(l))
    }

    /// True if some variable appears with opposite rails in the two terms.
    pub fn is_disjoint_from(&self, other: &ProductTerm) -> bool {
        self.literals.iter().any(|l| other.contains(l.complement()))
    }
}

impl fmt::Display for ProductTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.literals.is_empty() {
            return f.write_str("1");
        }
        for l in &self.literals {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for ProductTerm {
    type Err = LogicError;

    /// Accepts `X31X21X11` or `X31·X21·X11`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace() && *c != '·' && *c != '*').collect();
        let mut lits = Vec::new();
        for chunk in cleaned.split('X').skip(1) {
            lits.push(format!("X{chunk}").parse()?);
        }
        if lits.is_empty() || !cleaned.starts_with('X') {
            return Err(LogicError::Literal(s.to_string()));
        }
        ProductTerm::new(lits)
    }
}

/// An ordered sum of product terms over `n` variables, intended to be
/// disjoint (see [`DsopCover::is_disjoint`]).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DsopCover {
    n: usize,
    terms: Vec<ProductTerm>,
}

impl DsopCover {
    pub fn new(n: usize, terms: Vec<ProductTerm>) -> Result<Self, LogicError> {
        if let Some(t) = terms.iter().find(|t| t.max_var() > n) {
            return Err(LogicError::Arity { expected: n, found: t.max_var() });
        }
        Ok(Self { n, terms })
    }

    /// Parses `X30X20X10 + X30X20X11 + ...`; `0` is the empty cover.
    pub fn parse(n: usize, s: &str) -> Result<Self, LogicError> {
        if s.trim() == "0" {
            return Self::new(n, Vec::new());
        }
        let terms = s.split('+').map(str::parse).collect::<Result<Vec<_>, _>>()?;
        Self::new(n, terms)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[ProductTerm] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn literal_count(&self) -> usize {
        self.terms.iter().map(ProductTerm::len).sum()
    }

    /// True iff every pair of terms has a variable with opposite rails.
    pub fn is_disjoint(&self) -> bool {
        self.terms.iter().enumerate().all(|(i, a)| self.terms[i + 1..].iter().all(|b| a.is_disjoint_from(b)))
    }

    /// True if every term is a full `n`-literal minterm.
    pub fn is_minterm_cover(&self) -> bool {
        self.terms.iter().all(|t| t.len() == self.n)
    }

    pub fn eval(&self, rails: &Rails) -> Result<bool, LogicError> {
        if rails.n() != self.n {
            return Err(LogicError::Arity { expected: self.n, found: rails.n() });
        }
        Ok(self.terms.iter().any(|t| t.is_satisfied(rails)))
    }
}

impl fmt::Display for DsopCover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// True- and false-rail covers of a dual-rail output.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoverPair {
    pub f1: DsopCover,
    pub f0: DsopCover,
}

impl CoverPair {
    pub fn n(&self) -> usize {
        self.f1.n
    }

    /// Covers indexed by rail value.
    pub fn rail(&self, rail: bool) -> &DsopCover {
        if rail {
            &self.f1
        } else {
            &self.f0
        }
    }
}

/// Minterm covers of both output rails: every minterm becomes one `n`-literal
/// term on the rail matching the function value, in ascending minterm order.
pub fn dual_rail_cover(f: &BooleanFunction) -> CoverPair {
    let n = f.n();
    let (mut f1, mut f0) = (Vec::new(), Vec::new());
    for m in 0..1u32 << n {
        let term = ProductTerm::minterm(n, m);
        if f.value(m) {
            f1.push(term);
        } else {
            f0.push(term);
        }
    }
    CoverPair { f1: DsopCover { n, terms: f1 }, f0: DsopCover { n, terms: f0 } }
}

/// Evaluates both rails of a cover pair. A spacer yields `(false, false)`.
pub fn eval_cover_pair(f1: &DsopCover, f0: &DsopCover, rails: &Rails) -> Result<(bool, bool), LogicError> {
    if f0.n != f1.n {
        return Err(LogicError::Arity { expected: f1.n, found: f0.n });
    }
    Ok((f1.eval(rails)?, f0.eval(rails)?))
}
