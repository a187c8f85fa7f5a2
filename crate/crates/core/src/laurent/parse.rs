use num_bigint::BigInt;

use super::matrix::{PolyMatrix, MAX_DIM};
use super::poly::LaurentPoly;
use super::ring::Integers;
use crate::error::ParseError;

/// Largest absolute exponent accepted in polynomial input.
pub const MAX_EXPONENT: i64 = 10_000;
/// Longest integer literal accepted, in digits.
pub const MAX_DIGITS: usize = 1_000;

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    line: usize,
    col0: usize,
    text: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str, line: usize, col0: usize) -> Self {
        Cursor {
            chars: text.char_indices().collect(),
            pos: 0,
            line,
            col0,
            text,
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.1.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).map(|c| c.1)
    }

    fn col(&self) -> usize {
        self.col0 + self.pos + 1
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.col(), msg)
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.1.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an integer"));
        }
        if self.pos - start > MAX_DIGITS {
            return Err(ParseError::new(self.line, self.col0 + start + 1, "integer literal too long"));
        }
        let a = self.chars[start].0;
        let b = self.chars.get(self.pos).map_or(self.text.len(), |c| c.0);
        Ok(self.text[a..b].parse().expect("digits"))
    }

    fn exponent(&mut self) -> Result<i64, ParseError> {
        let paren = self.peek() == Some('(');
        if paren {
            self.pos += 1;
        }
        let neg = match self.peek() {
            Some('-') => {
                self.pos += 1;
                true
            }
            Some('+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let at = self.col();
        let k = self.integer()?;
        let k: i64 = k
            .try_into()
            .ok()
            .filter(|k: &i64| *k <= MAX_EXPONENT)
            .ok_or_else(|| ParseError::new(self.line, at, format!("exponent exceeds {MAX_EXPONENT}")))?;
        if paren {
            if self.peek() != Some(')') {
                return Err(self.err("expected ')'"));
            }
            self.pos += 1;
        }
        Ok(if neg { -k } else { k })
    }
}

/// Parses a Laurent polynomial over ℤ in one variable, `t` or `s`, such as
/// `t^2-3t+1`, `4s - 1` or `s^-1 + 2*s`. Returns the polynomial and the
/// variable (if any appears).
pub fn parse_poly(text: &str) -> Result<(LaurentPoly<Integers>, Option<char>), ParseError> {
    parse_poly_at(text, 1, 0)
}

fn parse_poly_at(text: &str, line: usize, col0: usize) -> Result<(LaurentPoly<Integers>, Option<char>), ParseError> {
    let mut cur = Cursor::new(text, line, col0);
    let mut var: Option<char> = None;
    let mut terms: Vec<(i64, BigInt)> = Vec::new();
    if cur.peek().is_none() {
        return Err(cur.err("empty polynomial"));
    }
    let mut first = true;
    loop {
        let mut sign = 1;
        match cur.peek() {
            Some('+') => cur.pos += 1,
            Some('-') => {
                cur.pos += 1;
                sign = -1;
            }
            Some(_) if first => {}
            Some(c) => return Err(cur.err(format!("expected '+' or '-', found '{c}'"))),
            None => break,
        }
        first = false;
        let coeff = match cur.peek() {
            Some(c) if c.is_ascii_digit() => Some(cur.integer()?),
            _ => None,
        };
        if coeff.is_some() && cur.peek() == Some('*') {
            cur.pos += 1;
            if !cur.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
                return Err(cur.err("expected a variable after '*'"));
            }
        }
        let exp = match cur.peek() {
            Some(c) if c.is_ascii_alphabetic() => {
                if c != 't' && c != 's' {
                    return Err(cur.err(format!("unknown variable '{c}' (expected t or s)")));
                }
                if var.is_some_and(|v| v != c) {
                    return Err(cur.err("polynomial mixes the variables t and s"));
                }
                var = Some(c);
                cur.pos += 1;
                if cur.peek() == Some('^') {
                    cur.pos += 1;
                    cur.exponent()?
                } else {
                    1
                }
            }
            _ if coeff.is_some() => 0,
            Some(c) => return Err(cur.err(format!("unexpected '{c}'"))),
            None => return Err(cur.err("expected a term")),
        };
        terms.push((exp, coeff.unwrap_or_else(|| BigInt::from(1)) * sign));
    }
    let low = terms.iter().map(|t| t.0).min().unwrap_or(0);
    let high = terms.iter().map(|t| t.0).max().unwrap_or(0);
    let mut coeffs = vec![BigInt::from(0); (high - low + 1) as usize];
    for (k, c) in terms {
        coeffs[(k - low) as usize] += c;
    }
    Ok((LaurentPoly::new(Integers, low, coeffs), var))
}

/// Parses a matrix: one row per line, entries separated by `;`. Blank lines
/// and `#` comments are ignored; a trailing `;` is allowed.
pub fn parse_matrix(text: &str) -> Result<(PolyMatrix<Integers>, Option<char>), ParseError> {
    let mut rows = Vec::new();
    let mut var: Option<char> = None;
    let mut width: Option<usize> = None;
    for (li, raw) in text.lines().enumerate() {
        let line = li + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let mut row = Vec::new();
        let mut offset = 0;
        let pieces: Vec<&str> = content.split(';').collect();
        let n = pieces.len();
        for (i, piece) in pieces.into_iter().enumerate() {
            if i + 1 == n && i > 0 && piece.trim().is_empty() {
                break;
            }
            let (p, v) = parse_poly_at(piece, line, offset)?;
            if let (Some(a), Some(b)) = (var, v) {
                if a != b {
                    return Err(ParseError::new(line, offset + 1, "matrix mixes the variables t and s"));
                }
            }
            var = var.or(v);
            row.push(p);
            offset += piece.chars().count() + 1;
        }
        if row.len() > MAX_DIM {
            return Err(ParseError::new(line, 1, format!("more than {MAX_DIM} columns")));
        }
        match width {
            None => width = Some(row.len()),
            Some(w) if w != row.len() => {
                return Err(ParseError::new(line, 1, format!("row has {} entries, expected {w}", row.len())))
            }
            _ => {}
        }
        rows.push(row);
        if rows.len() > MAX_DIM {
            return Err(ParseError::new(line, 1, format!("more than {MAX_DIM} rows")));
        }
    }
    if rows.is_empty() {
        return Err(ParseError::new(1, 1, "empty matrix"));
    }
    let m = PolyMatrix::new(Integers, rows).map_err(|e| ParseError::new(1, 1, e.to_string()))?;
    Ok((m, var))
}

/// Formats a polynomial so that [`parse_poly`] reads it back.
pub fn format_poly(p: &LaurentPoly<Integers>, var: char) -> String {
    p.display_var(var)
}
