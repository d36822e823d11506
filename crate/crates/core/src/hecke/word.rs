use std::fmt;

use super::group::{generators, s_power, GroupMatrix};
use super::{HeckeError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    S(i64),
    T,
}

/// A reduced word in `S^k` and `T`.
///
/// Adjacent S-powers are merged and `TT = -I` is cancelled, with the sign
/// kept in `negated` so evaluation stays exact in `SL(2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HeckeWord {
    q: u64,
    letters: Vec<Letter>,
    negated: bool,
}

impl HeckeWord {
    pub fn new(q: u64, letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut w = HeckeWord { q, letters: Vec::new(), negated: false };
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn empty(q: u64) -> Self {
        HeckeWord { q, letters: Vec::new(), negated: false }
    }

    fn push(&mut self, l: Letter) {
        match (self.letters.last().copied(), l) {
            (_, Letter::S(0)) => {}
            (Some(Letter::S(a)), Letter::S(b)) => {
                self.letters.pop();
                if a + b != 0 {
                    self.letters.push(Letter::S(a + b));
                }
            }
            (Some(Letter::T), Letter::T) => {
                self.letters.pop();
                self.negated = !self.negated;
            }
            _ => self.letters.push(l),
        }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// True when reduction absorbed an odd number of `T² = -I`.
    pub fn negated(&self) -> bool {
        self.negated
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation, reduced.
    pub fn concat(&self, other: &HeckeWord) -> HeckeWord {
        assert_eq!(self.q, other.q);
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        w.negated ^= other.negated;
        w
    }

    /// Inverse word; `T^{-1} = -T`.
    pub fn inverse(&self) -> HeckeWord {
        let mut neg = self.negated;
        let mut w = HeckeWord::empty(self.q);
        for &l in self.letters.iter().rev() {
            match l {
                Letter::S(k) => w.push(Letter::S(-k)),
                Letter::T => {
                    neg = !neg;
                    w.push(Letter::T);
                }
            }
        }
        w.negated ^= neg;
        w
    }

    pub fn pow(&self, e: i64) -> HeckeWord {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = HeckeWord::empty(self.q);
        for _ in 0..e.unsigned_abs() {
            acc = acc.concat(&base);
        }
        acc
    }

    /// Parse tokens `S`, `S^k`, `T`, plus parenthesized groups with an
    /// integer power such as `(T S^-1)^2`.
    pub fn parse(q: u64, src: &str) -> Result<HeckeWord> {
        let chars: Vec<char> = src.chars().collect();
        let mut pos = 0;
        let w = parse_seq(q, &chars, &mut pos)?;
        if pos != chars.len() {
            return Err(HeckeError::InvalidWord(format!("unexpected {:?} at {pos}", chars[pos])));
        }
        Ok(w)
    }

    /// Exact product of the letters, including the tracked sign.
    pub fn eval(&self) -> Result<GroupMatrix> {
        let (_, t) = generators(self.q)?;
        let mut acc = GroupMatrix::identity(self.q)?;
        for l in &self.letters {
            acc = match l {
                Letter::S(k) => acc.mul(&s_power(self.q, *k)?),
                Letter::T => acc.mul(&t),
            };
        }
        Ok(if self.negated { acc.neg() } else { acc })
    }
}

fn skip_ws(chars: &[char], pos: &mut usize) {
    while *pos < chars.len() && chars[*pos].is_whitespace() {
        *pos += 1;
    }
}

fn parse_exponent(chars: &[char], pos: &mut usize) -> Result<Option<i64>> {
    skip_ws(chars, pos);
    if *pos >= chars.len() || chars[*pos] != '^' {
        return Ok(None);
    }
    *pos += 1;
    skip_ws(chars, pos);
    let start = *pos;
    if *pos < chars.len() && (chars[*pos] == '-' || chars[*pos] == '+') {
        *pos += 1;
    }
    while *pos < chars.len() && chars[*pos].is_ascii_digit() {
        *pos += 1;
    }
    let s: String = chars[start..*pos].iter().collect();
    s.parse::<i64>().map(Some).map_err(|_| HeckeError::InvalidWord(format!("bad exponent {s:?}")))
}

fn parse_seq(q: u64, chars: &[char], pos: &mut usize) -> Result<HeckeWord> {
    let mut w = HeckeWord::empty(q);
    loop {
        skip_ws(chars, pos);
        if *pos >= chars.len() || chars[*pos] == ')' {
            return Ok(w);
        }
        match chars[*pos] {
            'S' => {
                *pos += 1;
                let k = parse_exponent(chars, pos)?.unwrap_or(1);
                if k == 0 {
                    return Err(HeckeError::InvalidWord("S^0 is not a letter".into()));
                }
                w.push(Letter::S(k));
            }
            'T' => {
                *pos += 1;
                match parse_exponent(chars, pos)? {
                    None | Some(1) => w.push(Letter::T),
                    Some(_) => return Err(HeckeError::InvalidWord("T takes no exponent".into())),
                }
            }
            '(' => {
                *pos += 1;
                let inner = parse_seq(q, chars, pos)?;
                if *pos >= chars.len() || chars[*pos] != ')' {
                    return Err(HeckeError::InvalidWord("unbalanced '('".into()));
                }
                *pos += 1;
                let e = parse_exponent(chars, pos)?.unwrap_or(1);
                w = w.concat(&inner.pow(e));
            }
            c => return Err(HeckeError::InvalidWord(format!("unexpected {c:?} at {pos}"))),
        }
    }
}

impl fmt::Display for HeckeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("-")?;
        }
        if self.letters.is_empty() {
            return f.write_str("I");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| match l {
                Letter::S(1) => "S".to_string(),
                Letter::S(k) => format!("S^{k}"),
                Letter::T => "T".to_string(),
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}
