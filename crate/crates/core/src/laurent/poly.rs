use std::fmt;

use num_bigint::BigInt;

use super::ring::{Eisenstein, Integers, ModP, Ring};
use crate::error::{Error, Result};

/// `Σ coeffs[i] · s^(low + i)` over a ring `R`. Zero coefficients are
/// trimmed from both ends; the zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly<R: Ring> {
    ring: R,
    low: i64,
    coeffs: Vec<R::E>,
}

impl<R: Ring> LaurentPoly<R> {
    pub fn new(ring: R, low: i64, coeffs: Vec<R::E>) -> Self {
        let mut p = LaurentPoly { ring, low, coeffs };
        p.trim();
        p
    }

    pub fn zero(ring: R) -> Self {
        LaurentPoly {
            ring,
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(ring: R, c: R::E) -> Self {
        LaurentPoly::new(ring, 0, vec![c])
    }

    pub fn one(ring: R) -> Self {
        let one = ring.one();
        LaurentPoly::constant(ring, one)
    }

    pub fn from_ints(ring: R, low: i64, coeffs: &[i64]) -> Self {
        let c = coeffs.iter().map(|&x| ring.from_int(&BigInt::from(x))).collect();
        LaurentPoly::new(ring, low, c)
    }

    pub fn monomial(ring: R, c: R::E, k: i64) -> Self {
        LaurentPoly::new(ring, k, vec![c])
    }

    /// The variable `s`.
    pub fn var(ring: R) -> Self {
        let one = ring.one();
        LaurentPoly::monomial(ring, one, 1)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| self.ring.is_zero(c)) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| self.ring.is_zero(c)).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.low = 0;
        } else if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    /// Highest minus lowest exponent; `None` for zero.
    pub fn span(&self) -> Option<usize> {
        (!self.is_zero()).then(|| self.coeffs.len() - 1)
    }

    pub fn coeffs(&self) -> &[R::E] {
        &self.coeffs
    }

    pub fn coeff(&self, k: i64) -> R::E {
        let i = k - self.low;
        if i < 0 || i >= self.coeffs.len() as i64 {
            self.ring.zero()
        } else {
            self.coeffs[i as usize].clone()
        }
    }

    pub fn leading(&self) -> Option<&R::E> {
        self.coeffs.last()
    }

    /// A nonzero monomial with unit coefficient.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1 && self.ring.is_unit(&self.coeffs[0])
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = self.high().max(other.high());
        let coeffs = (low..=high)
            .map(|k| self.ring.add(&self.coeff(k), &other.coeff(k)))
            .collect();
        LaurentPoly::new(self.ring.clone(), low, coeffs)
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            ring: self.ring.clone(),
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| self.ring.neg(c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero(self.ring.clone());
        }
        let mut coeffs = vec![self.ring.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if self.ring.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let t = self.ring.mul(a, b);
                coeffs[i + j] = self.ring.add(&coeffs[i + j], &t);
            }
        }
        LaurentPoly::new(self.ring.clone(), self.low + other.low, coeffs)
    }

    pub fn scale(&self, c: &R::E) -> Self {
        LaurentPoly::new(
            self.ring.clone(),
            self.low,
            self.coeffs.iter().map(|x| self.ring.mul(x, c)).collect(),
        )
    }

    /// Multiplication by `s^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly {
            ring: self.ring.clone(),
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut r = LaurentPoly::one(self.ring.clone());
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// `f(s⁻¹)`.
    pub fn reversed(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        LaurentPoly::new(self.ring.clone(), -self.high(), coeffs)
    }

    /// `self / other` if the quotient is a Laurent polynomial.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(self.clone());
        }
        let ring = &self.ring;
        let d = &other.coeffs;
        let lead = d.last().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() < d.len() {
            return None;
        }
        let qlen = rem.len() - d.len() + 1;
        let mut q = vec![ring.zero(); qlen];
        for i in (0..qlen).rev() {
            let top = &rem[i + d.len() - 1];
            if ring.is_zero(top) {
                continue;
            }
            let c = ring.div_exact(top, lead)?;
            for (j, dj) in d.iter().enumerate() {
                let t = ring.mul(&c, dj);
                rem[i + j] = ring.sub(&rem[i + j], &t);
            }
            q[i] = c;
        }
        if rem.iter().any(|c| !ring.is_zero(c)) {
            return None;
        }
        Some(LaurentPoly::new(ring.clone(), self.low - other.low, q))
    }

    /// Canonical associate: lowest exponent 0 and leading coefficient the
    /// ring's canonical choice. Zero stays zero.
    pub fn normalized(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(lead) => {
                let u = self.ring.canonical_unit(lead);
                self.scale(&u).shift(-self.low)
            }
        }
    }

    /// Equality up to a unit of `R[s, s⁻¹]`.
    pub fn associated(&self, other: &Self) -> bool {
        self.normalized() == other.normalized()
    }

    /// `f(s⁻¹) ≐ f(s)`.
    pub fn is_symmetric(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::Domain("symmetry of the zero polynomial is undefined".into()));
        }
        Ok(self.associated(&self.reversed()))
    }

    /// Largest `k ≤ max` with `(s − 1)^k` dividing `self`, and the cofactor.
    pub fn split_s_minus_1(&self, max: u32) -> (u32, Self) {
        let ring = self.ring.clone();
        let one = ring.one();
        let factor = LaurentPoly::new(ring.clone(), 0, vec![ring.neg(&one), one]);
        let mut k = 0;
        let mut rest = self.clone();
        while k < max && !rest.is_zero() {
            match rest.div_exact(&factor) {
                Some(q) => {
                    rest = q;
                    k += 1;
                }
                None => break,
            }
        }
        (k, rest)
    }

    pub fn map<S: Ring>(&self, target: S, f: impl Fn(&R::E) -> S::E) -> LaurentPoly<S> {
        LaurentPoly::new(target, self.low, self.coeffs.iter().map(f).collect())
    }

    /// Formats with the given variable name, highest power first.
    pub fn display_var(&self, var: char) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let ring = &self.ring;
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if ring.is_zero(c) {
                continue;
            }
            let k = self.low + i as i64;
            let text = ring.format(c);
            let (neg, mag) = match text.strip_prefix('-') {
                Some(m) if !ring.is_compound(c) => (true, m.to_string()),
                _ => (false, text),
            };
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mag = if ring.is_compound(c) && k != 0 {
                format!("({mag})")
            } else {
                mag
            };
            match k {
                0 => out.push_str(&mag),
                _ => {
                    if mag != "1" {
                        out.push_str(&mag);
                    }
                    out.push(var);
                    if k != 1 {
                        out.push_str(&format!("^{k}"));
                    }
                }
            }
        }
        out
    }
}

impl<R: Ring> fmt::Display for LaurentPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_var('s'))
    }
}

impl LaurentPoly<Integers> {
    pub fn reduce_mod(&self, ring: ModP) -> LaurentPoly<ModP> {
        self.map(ring, |c| ring.from_int(c))
    }

    pub fn to_eisenstein(&self) -> LaurentPoly<Eisenstein> {
        self.map(Eisenstein, |c| Eisenstein.from_int(c))
    }

    /// Evaluation at an integer point, for nonnegative exponents only.
    pub fn eval_poly(&self, x: &BigInt) -> Option<BigInt> {
        if self.low < 0 {
            return None;
        }
        let mut acc = BigInt::from(0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        Some(acc * x.pow(self.low as u32))
    }
}

impl LaurentPoly<Eisenstein> {
    /// Coefficientwise conjugation.
    pub fn conj(&self) -> Self {
        self.map(Eisenstein, |c| Eisenstein.conj(c))
    }

    /// The polynomial over ℤ if every coefficient is real.
    pub fn to_integers(&self) -> Option<LaurentPoly<Integers>> {
        if self.coeffs.iter().any(|c| c.1 != BigInt::from(0)) {
            return None;
        }
        Some(self.map(Integers, |c| c.0.clone()))
    }
}
