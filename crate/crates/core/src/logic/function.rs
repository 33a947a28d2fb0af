use std::fmt;
use std::str::FromStr;

use super::{Codeword, LogicError};

/// Largest supported input count. Minterm enumeration is exponential in `n`.
pub const MAX_INPUTS: usize = 16;

/// Single-output Boolean function stored as a truth table.
///
/// Bit `i` of the table is the output for the assignment whose binary value
/// is `i`, read as `Xn..X1`: variable `X1` is the least significant bit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunction {
    n: usize,
    bits: Vec<bool>,
}

impl BooleanFunction {
    pub fn from_truth_table(n: usize, bits: Vec<bool>) -> Result<Self, LogicError> {
        if n == 0 || n > MAX_INPUTS {
            return Err(LogicError::InputCount { n, max: MAX_INPUTS });
        }
        let expected = 1usize << n;
        if bits.len() != expected {
            return Err(LogicError::TableLength { n, expected, found: bits.len() });
        }
        Ok(Self { n, bits })
    }

    /// Builds a function of `n` inputs from a predicate over assignments.
    pub fn from_fn(n: usize, f: impl Fn(u32) -> bool) -> Result<Self, LogicError> {
        if n == 0 || n > MAX_INPUTS {
            return Err(LogicError::InputCount { n, max: MAX_INPUTS });
        }
        Self::from_truth_table(n, (0..1u32 << n).map(f).collect())
    }

    /// The `n`-input AND.
    pub fn and(n: usize) -> Result<Self, LogicError> {
        let all = (1u32 << n).wrapping_sub(1);
        Self::from_fn(n, |m| m == all)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn value(&self, minterm: u32) -> bool {
        self.bits[minterm as usize]
    }

    pub fn eval(&self, cw: &Codeword) -> bool {
        self.value(cw.assignment())
    }

    pub fn is_constant(&self) -> bool {
        self.bits.iter().all(|&b| b == self.bits[0])
    }

    /// Renders the two-line truth-table text form.
    pub fn to_text(&self) -> String {
        format!("{self}")
    }

    /// Parses the truth-table text format.
    ///
    /// ```text
    /// n=3
    /// 00000001
    /// ```
    ///
    /// Blank lines and lines starting with `#` are skipped. Errors carry the
    /// 1-based line number.
    pub fn parse_text(text: &str) -> Result<Self, LogicError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

        let (hdr_line, header) =
            lines.next().ok_or(LogicError::Syntax { line: 1, message: "empty input, expected `n=<k>`".into() })?;
        let n = header.strip_prefix("n=").and_then(|k| k.trim().parse::<usize>().ok()).ok_or_else(|| {
            LogicError::Syntax { line: hdr_line, message: format!("expected `n=<k>`, found `{header}`") }
        })?;
        if n == 0 || n > MAX_INPUTS {
            return Err(LogicError::Syntax {
                line: hdr_line,
                message: format!("input count {n} outside 1..={MAX_INPUTS}"),
            });
        }

        let (tbl_line, table) = lines.next().ok_or(LogicError::Syntax {
            line: hdr_line + 1,
            message: format!("missing truth table of {} characters", 1usize << n),
        })?;
        let mut bits = Vec::with_capacity(table.len());
        for (col, ch) in table.chars().enumerate() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                other => {
                    return Err(LogicError::Syntax {
                        line: tbl_line,
                        message: format!("column {}: unexpected character `{other}`", col + 1),
                    })
                }
            }
        }
        if bits.len() != 1usize << n {
            return Err(LogicError::Syntax {
                line: tbl_line,
                message: format!("expected 2^{n} = {} entries, found {}", 1usize << n, bits.len()),
            });
        }
        if let Some((line, extra)) = lines.next() {
            return Err(LogicError::Syntax { line, message: format!("unexpected trailing content `{extra}`") });
        }
        Self::from_truth_table(n, bits)
    }
}

impl fmt::Display for BooleanFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.n)?;
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        writeln!(f)
    }
}

impl FromStr for BooleanFunction {
    type Err = LogicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse_text(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tt(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn and3_true_only_on_all_ones() {
        let f = BooleanFunction::from_truth_table(3, tt("00000001")).unwrap();
        assert_eq!(f, BooleanFunction::and(3).unwrap());
        assert!(f.value(0b111));
        assert!((0..7).all(|m| !f.value(m)));
    }

    #[test]
    fn identity_and_xor() {
        let id = BooleanFunction::from_truth_table(1, tt("01")).unwrap();
        assert!(!id.value(0) && id.value(1));
        let xor = BooleanFunction::from_truth_table(2, tt("0110")).unwrap();
        assert_eq!((0..4).map(|m| xor.value(m)).collect::<Vec<_>>(), vec![false, true, true, false]);
    }

    #[test]
    fn length_mismatch_names_expected_size() {
        let err = BooleanFunction::from_truth_table(3, tt("0001")).unwrap_err();
        assert!(err.to_string().contains("expected 8"), "{err}");
        assert!(BooleanFunction::from_truth_table(0, vec![]).is_err());
    }

    #[test]
    fn text_round_trip_and_line_numbers() {
        let f: BooleanFunction = "# and\nn=3\n00000001\n".parse().unwrap();
        assert_eq!(f.to_text(), "n=3\n00000001\n");
        assert_eq!(f.to_text().parse::<BooleanFunction>().unwrap(), f);

        let err = BooleanFunction::parse_text("n=2\n01x0\n").unwrap_err();
        assert!(err.to_string().starts_with("line 2"), "{err}");
        let err = BooleanFunction::parse_text("n=2\n010\n").unwrap_err();
        assert!(err.to_string().contains("expected 2^2 = 4"), "{err}");
        let err = BooleanFunction::parse_text("bits=2\n").unwrap_err();
        assert!(err.to_string().starts_with("line 1"), "{err}");
    }

    #[test]
    fn constants_detected() {
        assert!(BooleanFunction::from_fn(2, |_| false).unwrap().is_constant());
        assert!(!BooleanFunction::and(2).unwrap().is_constant());
    }
}
