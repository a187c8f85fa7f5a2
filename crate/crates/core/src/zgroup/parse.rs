//! Line-oriented presentation DSL.
//!
//! ```text
//! # Example: <a_j | a_j^2 = a_{j+1}>
//! zgroup
//! gens a
//! rel a[1] a[0]^-2
//! ```
//!
//! `;` separates statements like a newline. Words are products of letters
//! with optional `^int`, parenthesized subwords `(…)^k`, commutators
//! `[u, v]`, and an optional `lhs = rhs` form meaning `lhs rhs⁻¹`. In
//! `zgroup` mode every letter carries an index `name[int]`; in `hnn` mode
//! letters are bare names.

use super::word::{Letter, Word};
use super::{HnnData, Presentation, ZGroupPresentation};
use crate::error::ParseError;

const MAX_WORD_LETTERS: u64 = 100_000;

pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut state = State::default();
    let mut last_pos = (1, 1);
    for (line_no, raw_line) in text.lines().enumerate() {
        let line_no = line_no + 1;
        let line = match raw_line.find('#') {
            Some(i) => &raw_line[..i],
            None => raw_line,
        };
        let mut offset = 0;
        for segment in line.split(';') {
            let lead = segment.len() - segment.trim_start().len();
            let stmt = segment.trim();
            let col = char_col(line, offset + lead);
            if !stmt.is_empty() {
                state.statement(stmt, line_no, col)?;
                last_pos = (line_no, col);
            }
            offset += segment.len() + 1;
        }
    }
    state.finish(last_pos)
}

fn char_col(line: &str, byte_offset: usize) -> usize {
    line[..byte_offset.min(line.len())].chars().count() + 1
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Mode {
    Periodic,
    Hnn,
}

#[derive(Default)]
struct State {
    mode: Option<Mode>,
    gens: Vec<String>,
    relators: Vec<Word>,
    u_gens: Vec<(usize, (usize, usize))>,
    u_declared: bool,
    phi: Vec<(usize, Word, (usize, usize))>,
}

impl State {
    fn statement(&mut self, stmt: &str, line: usize, col: usize) -> Result<(), ParseError> {
        let (keyword, rest) = match stmt.find(char::is_whitespace) {
            Some(i) => (&stmt[..i], &stmt[i..]),
            None => (stmt, ""),
        };
        let rest_col = col + keyword.chars().count() + (rest.len() - rest.trim_start().len());
        let rest = rest.trim();
        let err = |c: usize, msg: String| Err(ParseError::new(line, c, msg));
        if self.mode.is_none() {
            return match keyword {
                "zgroup" | "hnn" if !rest.is_empty() => {
                    err(rest_col, format!("unexpected text after '{keyword}'"))
                }
                "zgroup" => {
                    self.mode = Some(Mode::Periodic);
                    Ok(())
                }
                "hnn" => {
                    self.mode = Some(Mode::Hnn);
                    Ok(())
                }
                "group" => err(
                    col,
                    "deriving HNN data from a presentation of G and an epimorphism onto Z is not \
                     supported; rewrite the kernel as shift-periodic relator families ('zgroup') \
                     or give explicit HNN base data ('hnn') (a Reidemeister-Schreier based \
                     algorithm produces such data)"
                        .into(),
                ),
                _ => err(col, "expected a 'zgroup' or 'hnn' header".into()),
            };
        }
        let mode = self.mode.unwrap();
        match (keyword, mode) {
            ("zgroup" | "hnn" | "group", _) => err(col, "duplicate header".into()),
            ("gens", _) => {
                if rest.is_empty() {
                    return err(col, "empty generator list".into());
                }
                for (i, name) in split_ws(rest) {
                    let c = rest_col + i;
                    if !is_name(name) {
                        return err(c, format!("invalid generator name '{name}'"));
                    }
                    if self.gens.iter().any(|g| g == name) {
                        return err(c, format!("duplicate generator '{name}'"));
                    }
                    self.gens.push(name.to_string());
                }
                Ok(())
            }
            ("rel", Mode::Periodic) | ("base-rel", Mode::Hnn) => {
                self.require_gens(line, col)?;
                let w = WordParser::new(rest, line, rest_col, &self.gens, mode == Mode::Periodic)
                    .parse_relation()?;
                self.relators.push(w);
                Ok(())
            }
            ("rel", Mode::Hnn) => err(col, "'rel' is for zgroup input; use 'base-rel'".into()),
            ("base-rel" | "U" | "phi", Mode::Periodic) => {
                err(col, format!("'{keyword}' is only valid in hnn input"))
            }
            ("U", Mode::Hnn) => {
                self.require_gens(line, col)?;
                if self.u_declared {
                    return err(col, "duplicate 'U' statement".into());
                }
                self.u_declared = true;
                for (i, name) in split_ws(rest) {
                    let c = rest_col + i;
                    let g = self
                        .gens
                        .iter()
                        .position(|g| g == name)
                        .ok_or_else(|| ParseError::new(line, c, format!("unknown generator '{name}'")))?;
                    if self.u_gens.iter().any(|(u, _)| *u == g) {
                        return err(c, format!("duplicate U-generator '{name}'"));
                    }
                    self.u_gens.push((g, (line, c)));
                }
                Ok(())
            }
            ("phi", Mode::Hnn) => {
                self.require_gens(line, col)?;
                let arrow = rest
                    .find("->")
                    .ok_or_else(|| ParseError::new(line, rest_col, "expected 'phi <name> -> <word>'"))?;
                let name = rest[..arrow].trim();
                let g = self
                    .gens
                    .iter()
                    .position(|g| g == name)
                    .ok_or_else(|| ParseError::new(line, rest_col, format!("unknown generator '{name}'")))?;
                let rhs = &rest[arrow + 2..];
                let rhs_col = rest_col
                    + rest[..arrow + 2].chars().count()
                    + (rhs.len() - rhs.trim_start().len());
                let w = WordParser::new(rhs.trim(), line, rhs_col, &self.gens, false).parse_relation()?;
                if self.phi.iter().any(|(h, _, _)| *h == g) {
                    return err(rest_col, format!("duplicate phi image for '{name}'"));
                }
                self.phi.push((g, w, (line, rest_col)));
                Ok(())
            }
            _ => err(col, format!("unknown statement '{keyword}'")),
        }
    }

    fn require_gens(&self, line: usize, col: usize) -> Result<(), ParseError> {
        if self.gens.is_empty() {
            Err(ParseError::new(line, col, "'gens' must come first"))
        } else {
            Ok(())
        }
    }

    fn finish(self, (line, col): (usize, usize)) -> Result<Presentation, ParseError> {
        let mode = self
            .mode
            .ok_or_else(|| ParseError::new(1, 1, "empty input: expected a 'zgroup' or 'hnn' header"))?;
        if self.gens.is_empty() {
            return Err(ParseError::new(line, col, "empty generator list"));
        }
        match mode {
            Mode::Periodic => Ok(Presentation::Periodic(ZGroupPresentation::new(
                self.gens,
                self.relators,
            ))),
            Mode::Hnn => {
                if !self.u_declared {
                    return Err(ParseError::new(line, col, "hnn input needs a 'U' statement"));
                }
                for (g, _, pos) in &self.phi {
                    if !self.u_gens.iter().any(|(u, _)| u == g) {
                        return Err(ParseError::new(
                            pos.0,
                            pos.1,
                            format!("phi given for '{}', which is not a U-generator", self.gens[*g]),
                        ));
                    }
                }
                let mut phi = Vec::new();
                for (u, pos) in &self.u_gens {
                    let image = self
                        .phi
                        .iter()
                        .find(|(g, _, _)| g == u)
                        .ok_or_else(|| {
                            ParseError::new(pos.0, pos.1, format!("missing phi image for '{}'", self.gens[*u]))
                        })?;
                    phi.push(image.1.clone());
                }
                let u_gens = self.u_gens.iter().map(|(u, _)| *u).collect();
                Ok(Presentation::Hnn(HnnData::new(self.gens, self.relators, u_gens, phi)))
            }
        }
    }
}

fn split_ws(s: &str) -> impl Iterator<Item = (usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    let mut start_col = 0;
    for (col, (i, ch)) in s.char_indices().enumerate() {
        if ch.is_whitespace() {
            if let Some(st) = start.take() {
                out.push((start_col, &s[st..i]));
            }
        } else if start.is_none() {
            start = Some(i);
            start_col = col;
        }
    }
    if let Some(st) = start {
        out.push((start_col, &s[st..]));
    }
    out.into_iter()
}

pub(crate) fn is_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// Recursive-descent parser for one word.
struct WordParser<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col0: usize,
    gens: &'a [String],
    indexed: bool,
}

impl<'a> WordParser<'a> {
    fn new(text: &str, line: usize, col0: usize, gens: &'a [String], indexed: bool) -> Self {
        WordParser {
            chars: text.chars().collect(),
            pos: 0,
            line,
            col0,
            gens,
            indexed,
        }
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::new(self.line, self.col0 + self.pos, msg))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            match self.peek() {
                Some(other) => self.error(format!("expected '{c}', found '{other}'")),
                None => self.error(format!("expected '{c}', found end of input")),
            }
        }
    }

    /// `word ('=' word)?`, consuming all input.
    fn parse_relation(mut self) -> Result<Word, ParseError> {
        let lhs = self.parse_word()?;
        self.skip_ws();
        let w = if self.peek() == Some('=') {
            self.pos += 1;
            let rhs = self.parse_word()?;
            lhs.concat(&rhs.inverse())
        } else {
            lhs
        };
        self.skip_ws();
        match self.peek() {
            None => Ok(w),
            Some(c) => self.error(format!("unexpected '{c}'")),
        }
    }

    fn parse_word(&mut self) -> Result<Word, ParseError> {
        let mut w = Word::identity();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_alphabetic() || c == '_' || c == '(' || c == '[' || c == '1' => {
                    let item = self.parse_item()?;
                    w = w.concat(&item);
                }
                _ => return Ok(w),
            }
        }
    }

    fn parse_item(&mut self) -> Result<Word, ParseError> {
        let atom = match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.parse_word()?;
                self.expect(')')?;
                inner
            }
            Some('[') => {
                self.pos += 1;
                let u = self.parse_word()?;
                self.expect(',')?;
                let v = self.parse_word()?;
                self.expect(']')?;
                Word::commutator(&u, &v)
            }
            Some('1') => {
                self.pos += 1;
                Word::identity()
            }
            _ => self.parse_letter()?,
        };
        self.skip_ws();
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let k = self.parse_int()?;
            if atom.letters().len() as u64 * k.unsigned_abs() > MAX_WORD_LETTERS {
                return self.error("word too long after expanding the exponent");
            }
            Ok(atom.pow(k))
        } else {
            Ok(atom)
        }
    }

    fn parse_letter(&mut self) -> Result<Word, ParseError> {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' || c == '\'' {
                self.pos += 1;
            } else {
                break;
            }
        }
        let name: String = self.chars[start..self.pos].iter().collect();
        let Some(gen) = self.gens.iter().position(|g| *g == name) else {
            self.pos = start;
            return self.error(format!("unknown generator '{name}'"));
        };
        let shift = if self.indexed {
            if self.peek() != Some('[') {
                return self.error(format!("expected an index after '{name}', as in {name}[0]"));
            }
            self.pos += 1;
            self.skip_ws();
            let k = self.parse_int()?;
            self.expect(']')?;
            k
        } else {
            if self.peek() == Some('[') {
                return self.error("indexed letters are only valid in zgroup input");
            }
            0
        };
        Ok(Word::new([Letter::new(gen, shift, 1)]))
    }

    fn parse_int(&mut self) -> Result<i64, ParseError> {
        let start = self.pos;
        if matches!(self.peek(), Some('-') | Some('+')) {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return self.error("expected an integer");
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        match text.parse::<i64>() {
            Ok(k) if k.abs() <= 1_000_000 => Ok(k),
            _ => {
                self.pos = start;
                self.error(format!("integer '{text}' out of range"))
            }
        }
    }
}
