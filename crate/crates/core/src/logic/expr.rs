use std::fmt;
use std::str::FromStr;

use super::{LogicError, ProductTerm, RailLiteral, Rails};

/// And/or tree over rail literals.
///
/// Built through [`FactoredExpr::and`] and [`FactoredExpr::or`], which keep
/// the tree flattened: no `And` directly under `And`, no `Or` under `Or`,
/// and every inner node has at least two children.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactoredExpr {
    Literal(RailLiteral),
    And(Vec<FactoredExpr>),
    Or(Vec<FactoredExpr>),
}

impl FactoredExpr {
    pub fn lit(lit: RailLiteral) -> Self {
        FactoredExpr::Literal(lit)
    }

    /// Conjunction; nested `And`s are spliced in and a single child is returned as-is.
    ///
    /// # Panics
    /// On an empty child list.
    pub fn and(children: impl IntoIterator<Item = FactoredExpr>) -> Self {
        Self::flat(children, true)
    }

    /// Disjunction; see [`FactoredExpr::and`].
    pub fn or(children: impl IntoIterator<Item = FactoredExpr>) -> Self {
        Self::flat(children, false)
    }

    fn flat(children: impl IntoIterator<Item = FactoredExpr>, is_and: bool) -> Self {
        let mut out = Vec::new();
        for c in children {
            match c {
                FactoredExpr::And(inner) if is_and => out.extend(inner),
                FactoredExpr::Or(inner) if !is_and => out.extend(inner),
                other => out.push(other),
            }
        }
        assert!(!out.is_empty(), "and/or node needs at least one child");
        if out.len() == 1 {
            return out.pop().unwrap();
        }
        if is_and {
            FactoredExpr::And(out)
        } else {
            FactoredExpr::Or(out)
        }
    }

    pub fn from_term(term: &ProductTerm) -> Option<Self> {
        if term.is_empty() {
            return None;
        }
        Some(Self::and(term.literals().iter().map(|&l| Self::lit(l))))
    }

    pub fn children(&self) -> &[FactoredExpr] {
        match self {
            FactoredExpr::Literal(_) => &[],
            FactoredExpr::And(c) | FactoredExpr::Or(c) => c,
        }
    }

    pub fn eval(&self, rails: &Rails) -> bool {
        match self {
            FactoredExpr::Literal(l) => rails.get(*l),
            FactoredExpr::And(c) => c.iter().all(|e| e.eval(rails)),
            FactoredExpr::Or(c) => c.iter().any(|e| e.eval(rails)),
        }
    }

    pub fn max_var(&self) -> usize {
        match self {
            FactoredExpr::Literal(l) => l.var(),
            _ => self.children().iter().map(Self::max_var).max().unwrap_or(0),
        }
    }

    /// Number of literal leaves.
    pub fn literal_count(&self) -> usize {
        match self {
            FactoredExpr::Literal(_) => 1,
            _ => self.children().iter().map(Self::literal_count).sum(),
        }
    }

    /// Top-level summands: the children of a root `Or`, otherwise the root itself.
    pub fn summands(&self) -> &[FactoredExpr] {
        match self {
            FactoredExpr::Or(c) => c,
            other => std::slice::from_ref(other),
        }
    }

    /// True if some `Or` sits below an `And`, i.e. the expression is a
    /// complex sum of products rather than a plain one.
    pub fn has_product_of_sums(&self) -> bool {
        fn walk(e: &FactoredExpr, under_and: bool) -> bool {
            match e {
                FactoredExpr::Literal(_) => false,
                FactoredExpr::Or(c) => under_and || c.iter().any(|x| walk(x, false)),
                FactoredExpr::And(c) => c.iter().any(|x| walk(x, true)),
            }
        }
        walk(self, false)
    }

    /// Number of product terms after full distribution into a flat SOP.
    pub fn expanded_term_count(&self) -> usize {
        match self {
            FactoredExpr::Literal(_) => 1,
            FactoredExpr::And(c) => c.iter().map(Self::expanded_term_count).product(),
            FactoredExpr::Or(c) => c.iter().map(Self::expanded_term_count).sum(),
        }
    }

    /// Order-independent form: children sorted recursively. Two expressions
    /// are structurally identical iff their canonical forms are equal.
    pub fn canonical(&self) -> FactoredExpr {
        match self {
            FactoredExpr::Literal(l) => FactoredExpr::Literal(*l),
            FactoredExpr::And(c) | FactoredExpr::Or(c) => {
                let mut kids: Vec<FactoredExpr> = c.iter().map(Self::canonical).collect();
                kids.sort();
                if matches!(self, FactoredExpr::And(_)) {
                    FactoredExpr::And(kids)
                } else {
                    FactoredExpr::Or(kids)
                }
            }
        }
    }

    pub fn structurally_eq(&self, other: &FactoredExpr) -> bool {
        self.canonical() == other.canonical()
    }

    /// Parses the rendered text form, e.g. `(X30 + X31)(X20 + X21)X10 + X30X21X11`.
    /// Square brackets are accepted as parentheses.
    pub fn parse(s: &str) -> Result<Self, LogicError> {
        let tokens: Vec<char> = s.chars().filter(|c| !c.is_whitespace() && *c != '·').collect();
        let mut p = Parser { src: s, tokens, pos: 0 };
        let e = p.sum()?;
        if p.pos != p.tokens.len() {
            return Err(p.error("trailing input"));
        }
        Ok(e)
    }
}

struct Parser<'a> {
    src: &'a str,
    tokens: Vec<char>,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, what: &str) -> LogicError {
        LogicError::Expr(format!("{what} at offset {} in `{}`", self.pos, self.src))
    }

    fn peek(&self) -> Option<char> {
        self.tokens.get(self.pos).copied()
    }

    fn sum(&mut self) -> Result<FactoredExpr, LogicError> {
        let mut terms = vec![self.product()?];
        while self.peek() == Some('+') {
            self.pos += 1;
            terms.push(self.product()?);
        }
        Ok(FactoredExpr::or(terms))
    }

    fn product(&mut self) -> Result<FactoredExpr, LogicError> {
        let mut factors = Vec::new();
        loop {
            match self.peek() {
                Some('(') | Some('[') => {
                    let close = if self.peek() == Some('(') { ')' } else { ']' };
                    self.pos += 1;
                    let inner = self.sum()?;
                    if self.peek() != Some(close) {
                        return Err(self.error("unbalanced bracket"));
                    }
                    self.pos += 1;
                    factors.push(inner);
                }
                Some('X') => {
                    let start = self.pos;
                    self.pos += 1;
                    while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                        self.pos += 1;
                    }
                    let text: String = self.tokens[start..self.pos].iter().collect();
                    factors.push(FactoredExpr::Literal(text.parse()?));
                }
                _ => break,
            }
        }
        if factors.is_empty() {
            return Err(self.error("expected a literal or `(`"));
        }
        Ok(FactoredExpr::and(factors))
    }
}

impl fmt::Display for FactoredExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactoredExpr::Literal(l) => write!(f, "{l}"),
            FactoredExpr::And(c) => {
                for e in c {
                    match e {
                        FactoredExpr::Or(_) => write!(f, "({e})")?,
                        _ => write!(f, "{e}")?,
                    }
                }
                Ok(())
            }
            FactoredExpr::Or(c) => {
                for (i, e) in c.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{e}")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for FactoredExpr {
    type Err = LogicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}
