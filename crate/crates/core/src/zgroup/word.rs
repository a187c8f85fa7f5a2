use std::fmt;

/// One letter `g[shift]^exp`. For HNN data and base presentations the shift
/// is always zero and `gen` indexes a plain generator list.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub shift: i64,
    pub exp: i64,
}

impl Letter {
    pub fn new(gen: usize, shift: i64, exp: i64) -> Self {
        Letter { gen, shift, exp }
    }

    fn same_symbol(&self, other: &Letter) -> bool {
        self.gen == other.gen && self.shift == other.shift
    }
}

/// A freely reduced word: no zero exponents, no two adjacent letters on the
/// same symbol.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut w = Word { letters: Vec::new() };
        for l in letters {
            w.push(l);
        }
        w
    }

    pub fn identity() -> Self {
        Word::default()
    }

    pub fn gen(gen: usize) -> Self {
        Word::new([Letter::new(gen, 0, 1)])
    }

    /// Appends a letter, merging and cancelling against the end.
    pub fn push(&mut self, l: Letter) {
        if l.exp == 0 {
            return;
        }
        match self.letters.last_mut() {
            Some(last) if last.same_symbol(&l) => {
                last.exp += l.exp;
                if last.exp == 0 {
                    self.letters.pop();
                }
            }
            _ => self.letters.push(l),
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word::new(
            self.letters
                .iter()
                .rev()
                .map(|l| Letter::new(l.gen, l.shift, -l.exp)),
        )
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::identity();
        for _ in 0..k.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }

    /// `[u, v] = u⁻¹ v⁻¹ u v`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.inverse().concat(&v.inverse()).concat(u).concat(v)
    }

    pub fn min_shift(&self) -> Option<i64> {
        self.letters.iter().map(|l| l.shift).min()
    }

    pub fn max_shift(&self) -> Option<i64> {
        self.letters.iter().map(|l| l.shift).max()
    }

    pub fn shifted(&self, by: i64) -> Word {
        Word {
            letters: self
                .letters
                .iter()
                .map(|l| Letter::new(l.gen, l.shift + by, l.exp))
                .collect(),
        }
    }

    /// Replaces every letter by a word, `f(gen, shift)`, raised to the
    /// letter's exponent.
    pub fn substitute(&self, mut f: impl FnMut(usize, i64) -> Word) -> Word {
        let mut w = Word::identity();
        for l in &self.letters {
            w = w.concat(&f(l.gen, l.shift).pow(l.exp));
        }
        w
    }

    /// Number of letters on generator `gen` and the sum of their absolute
    /// exponents.
    pub fn occurrences(&self, gen: usize) -> (usize, i64) {
        self.letters
            .iter()
            .filter(|l| l.gen == gen)
            .fold((0, 0), |(n, e), l| (n + 1, e + l.exp.abs()))
    }

    pub fn display_with<'a>(&'a self, names: &'a [String], indexed: bool) -> WordDisplay<'a> {
        WordDisplay {
            word: self,
            names,
            indexed,
        }
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    names: &'a [String],
    indexed: bool,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.word.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.names[l.gen])?;
            if self.indexed {
                write!(f, "[{}]", l.shift)?;
            }
            if l.exp != 1 {
                write!(f, "^{}", l.exp)?;
            }
        }
        Ok(())
    }
}
