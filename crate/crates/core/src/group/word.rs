use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::GroupError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Base {
    A,
    S,
    T,
    U,
}

impl Base {
    pub fn symbol(self) -> char {
        match self {
            Base::A => 'a',
            Base::S => 's',
            Base::T => 't',
            Base::U => 'u',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub base: Base,
    pub inverse: bool,
}

impl Letter {
    pub const fn new(base: Base, inverse: bool) -> Self {
        Self { base, inverse }
    }

    pub const fn pos(base: Base) -> Self {
        Self::new(base, false)
    }

    pub const fn neg(base: Base) -> Self {
        Self::new(base, true)
    }

    pub fn inv(self) -> Self {
        Self::new(self.base, !self.inverse)
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base.symbol())?;
        if self.inverse {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

/// Letters multiplied left to right. Acting on lamplighter states, the
/// right-most letter acts first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn power(base: Base, exp: i64) -> Word {
        let l = Letter::new(base, exp < 0);
        Word(vec![l; exp.unsigned_abs() as usize])
    }

    /// Net exponent of one letter.
    pub fn exponent_sum(&self, base: Base) -> i64 {
        self.0
            .iter()
            .filter(|l| l.base == base)
            .map(|l| if l.inverse { -1 } else { 1 })
            .sum()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

fn superscript_digit(c: char) -> Option<u32> {
    "⁰¹²³⁴⁵⁶⁷⁸⁹".chars().position(|d| d == c).map(|i| i as u32)
}

/// Accepts `a`, `t^-1`, `t⁻¹`, `s⁶`, `t^-3`, and upper case for inverses
/// (`T` = `t^-1`). Whitespace, `·` and `*` are ignored.
impl FromStr for Word {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let chars: Vec<char> = s.chars().collect();
        let mut out = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            i += 1;
            if c.is_whitespace() || c == '·' || c == '*' {
                continue;
            }
            let base = match c.to_ascii_lowercase() {
                'a' => Base::A,
                's' => Base::S,
                't' => Base::T,
                'u' => Base::U,
                _ => return Err(GroupError::Parse(format!("unexpected '{c}' in word {s:?}"))),
            };
            let mut exp: i64 = if c.is_ascii_uppercase() { -1 } else { 1 };
            if i < chars.len() && chars[i] == '^' {
                i += 1;
                let neg = i < chars.len() && chars[i] == '-';
                if neg {
                    i += 1;
                }
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let n: i64 = digits
                    .parse()
                    .map_err(|_| GroupError::Parse(format!("bad exponent in {s:?}")))?;
                exp *= if neg { -n } else { n };
            } else if i < chars.len() && (chars[i] == '⁻' || superscript_digit(chars[i]).is_some()) {
                let neg = chars[i] == '⁻';
                if neg {
                    i += 1;
                }
                let mut n: i64 = 0;
                let start = i;
                while i < chars.len() {
                    match superscript_digit(chars[i]) {
                        Some(d) => n = n * 10 + d as i64,
                        None => break,
                    }
                    i += 1;
                }
                if i == start {
                    return Err(GroupError::Parse(format!("bad exponent in {s:?}")));
                }
                exp *= if neg { -n } else { n };
            }
            out.extend(Word::power(base, exp).0);
        }
        Ok(Word(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn parse_forms() {
        assert_eq!(w("t^-1at"), w("t⁻¹at"));
        assert_eq!(w("t^-1at"), w("Tat"));
        assert_eq!(w("s⁶a").len(), 7);
        assert_eq!(w("t^-3").exponent_sum(Base::T), -3);
        assert_eq!(w(""), Word::empty());
        assert_eq!(w("a t · u").len(), 3);
        assert!("x".parse::<Word>().is_err());
    }

    #[test]
    fn display_round_trips() {
        let x = w("uatu⁻¹at⁻¹");
        assert_eq!(x.to_string().parse::<Word>().unwrap(), x);
        assert_eq!(x.inverse().inverse(), x);
    }
}
