use std::fmt;

use super::{LogicError, RailLiteral};

/// A set of input variables, stored as a bitmask (bit `v-1` for `Xv`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VarSet(u32);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    pub fn full(n: usize) -> Self {
        VarSet(((1u64 << n) - 1) as u32)
    }

    pub fn from_mask(mask: u32) -> Self {
        VarSet(mask)
    }

    pub fn from_vars(vars: impl IntoIterator<Item = usize>) -> Self {
        VarSet(vars.into_iter().fold(0, |m, v| m | 1 << (v - 1)))
    }

    pub fn mask(self) -> u32 {
        self.0
    }

    pub fn contains(self, var: usize) -> bool {
        var >= 1 && self.0 & (1 << (var - 1)) != 0
    }

    pub fn without(self, var: usize) -> Self {
        VarSet(self.0 & !(1 << (var - 1)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Variables in ascending order.
    pub fn iter(self) -> impl DoubleEndedIterator<Item = usize> {
        (1..=32).filter(move |&v| self.contains(v))
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = self.iter().rev().map(|v| format!("X{v}")).collect();
        write!(f, "{{{}}}", vars.join(","))
    }
}

/// A valid dual-rail input: one binary value per variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Codeword {
    n: usize,
    assignment: u32,
}

impl Codeword {
    pub fn new(n: usize, assignment: u32) -> Self {
        debug_assert!(n <= 32 && (n == 32 || assignment < 1 << n));
        Self { n, assignment }
    }

    /// All `2^n` codewords in ascending assignment order.
    pub fn all(n: usize) -> impl Iterator<Item = Codeword> {
        (0..1u32 << n).map(move |a| Codeword::new(n, a))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn assignment(&self) -> u32 {
        self.assignment
    }

    pub fn value(&self, var: usize) -> bool {
        self.assignment >> (var - 1) & 1 == 1
    }

    /// The rail of `var` that is high under this codeword.
    pub fn active_literal(&self, var: usize) -> RailLiteral {
        RailLiteral::new(var, self.value(var))
    }

    pub fn rails(&self) -> Rails {
        self.partial_rails(VarSet::full(self.n))
    }

    /// Rail vector with only the variables in `subset` asserted.
    pub fn partial_rails(&self, subset: VarSet) -> Rails {
        let mut rails = Rails::spacer(self.n);
        for var in subset.iter().filter(|&v| v <= self.n) {
            rails.set(self.active_literal(var), true);
        }
        rails
    }

    /// Parses an assignment string written `Xn..X1`, e.g. `110` is X3=1, X2=1, X1=0.
    pub fn parse(s: &str) -> Result<Self, LogicError> {
        let s = s.trim();
        if s.is_empty() || s.len() > 32 {
            return Err(LogicError::Codeword(format!("`{s}`: expected 1..=32 binary digits")));
        }
        let mut assignment = 0u32;
        for ch in s.chars() {
            assignment <<= 1;
            match ch {
                '0' => {}
                '1' => assignment |= 1,
                other => return Err(LogicError::Codeword(format!("`{s}`: unexpected character `{other}`"))),
            }
        }
        Ok(Codeword::new(s.len(), assignment))
    }
}

impl fmt::Display for Codeword {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for var in (1..=self.n).rev() {
            f.write_str(if self.value(var) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Values of all `2n` input rails. The all-zero vector is the spacer.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rails {
    n: usize,
    bits: Vec<bool>,
}

impl Rails {
    pub fn spacer(n: usize) -> Self {
        Self { n, bits: vec![false; 2 * n] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn index(lit: RailLiteral) -> usize {
        (lit.var() - 1) * 2 + lit.rail() as usize
    }

    pub fn get(&self, lit: RailLiteral) -> bool {
        self.bits[Self::index(lit)]
    }

    pub fn set(&mut self, lit: RailLiteral, value: bool) {
        let i = Self::index(lit);
        self.bits[i] = value;
    }

    pub fn is_spacer(&self) -> bool {
        self.bits.iter().all(|b| !b)
    }

    /// Returns the codeword if every variable has exactly one rail high.
    pub fn to_codeword(&self) -> Option<Codeword> {
        let mut assignment = 0;
        for var in 1..=self.n {
            match (self.get(RailLiteral::new(var, true)), self.get(RailLiteral::new(var, false))) {
                (true, false) => assignment |= 1 << (var - 1),
                (false, true) => {}
                _ => return None,
            }
        }
        Some(Codeword::new(self.n, assignment))
    }

    /// Parses a rail string in `Xn1 Xn0 .. X11 X10` order (whitespace ignored).
    /// Both rails of one variable high is rejected as an illegal code state.
    pub fn parse(s: &str) -> Result<Self, LogicError> {
        let digits: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if digits.is_empty() || !digits.len().is_multiple_of(2) || digits.len() > 64 {
            return Err(LogicError::Codeword(format!("`{s}`: rail string needs an even number (2..=64) of digits")));
        }
        let n = digits.len() / 2;
        let mut rails = Rails::spacer(n);
        for (i, pair) in digits.chunks(2).enumerate() {
            let var = n - i;
            let bit = |c: char| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(LogicError::Codeword(format!("`{s}`: unexpected character `{other}`"))),
            };
            let (r1, r0) = (bit(pair[0])?, bit(pair[1])?);
            if r1 && r0 {
                return Err(LogicError::Codeword(format!(
                    "`{s}`: both rails of X{var} high is not a legal code state"
                )));
            }
            rails.set(RailLiteral::new(var, true), r1);
            rails.set(RailLiteral::new(var, false), r0);
        }
        Ok(rails)
    }
}

impl fmt::Display for Rails {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for var in (1..=self.n).rev() {
            for rail in [true, false] {
                f.write_str(if self.get(RailLiteral::new(var, rail)) { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn assignment_string_is_msb_first() {
        let cw = Codeword::parse("110").unwrap();
        assert!(cw.value(3) && cw.value(2) && !cw.value(1));
        assert_eq!(cw.to_string(), "110");
        assert_eq!(cw.rails().to_string(), "101001");
    }

    #[test]
    fn exactly_one_rail_per_variable() {
        for cw in Codeword::all(3) {
            let r = cw.rails();
            for var in 1..=3 {
                assert_ne!(r.get(RailLiteral::new(var, true)), r.get(RailLiteral::new(var, false)));
            }
            assert_eq!(r.to_codeword(), Some(cw));
        }
        assert!(Rails::spacer(3).is_spacer());
        assert_eq!(Rails::spacer(3).to_codeword(), None);
    }

    #[test]
    fn rail_strings() {
        let r = Rails::parse("01 01 10").unwrap();
        assert_eq!(r.to_codeword(), Some(Codeword::parse("001").unwrap()));
        assert!(Rails::parse("11 00").is_err());
        assert!(Rails::parse("010").is_err());
        let partial = Rails::parse("0001").unwrap();
        assert_eq!(partial.to_codeword(), None);
        assert!(partial.get(RailLiteral::new(1, false)));
    }

    #[test]
    fn partial_rails_only_assert_subset() {
        let cw = Codeword::parse("111").unwrap();
        let r = cw.partial_rails(VarSet::from_vars([3, 2]));
        assert_eq!(r.to_string(), "101000");
    }

    #[test]
    fn varset_ops() {
        let s = VarSet::full(3);
        assert_eq!(s.len(), 3);
        assert_eq!(s.without(2).iter().collect::<Vec<_>>(), vec![1, 3]);
        assert_eq!(s.to_string(), "{X3,X2,X1}");
    }
}
