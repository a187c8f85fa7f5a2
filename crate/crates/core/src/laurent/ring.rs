use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficient ring of a Laurent polynomial: an integral domain with exact
/// division and a choice of canonical associate.
pub trait Ring: Clone + Debug + PartialEq {
    type E: Clone + PartialEq + Eq + Debug;

    fn name(&self) -> String;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn from_int(&self, n: &BigInt) -> Self::E;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// `a / b` if `b` divides `a`.
    fn div_exact(&self, a: &Self::E, b: &Self::E) -> Option<Self::E>;
    fn is_unit(&self, a: &Self::E) -> bool;
    /// The unit `u` for which `u·a` is the canonical associate of `a ≠ 0`.
    fn canonical_unit(&self, a: &Self::E) -> Self::E;
    fn format(&self, a: &Self::E) -> String;

    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::E) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::E) -> bool {
        *a == self.one()
    }

    /// Whether `format` output needs parentheses before a variable.
    fn is_compound(&self, _a: &Self::E) -> bool {
        false
    }
}

/// ℤ.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type E = BigInt;

    fn name(&self) -> String {
        "Z".into()
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_int(&self, n: &BigInt) -> BigInt {
        n.clone()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn div_exact(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return None;
        }
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }
    fn is_unit(&self, a: &BigInt) -> bool {
        a.abs().is_one()
    }
    fn canonical_unit(&self, a: &BigInt) -> BigInt {
        if a.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }
    fn format(&self, a: &BigInt) -> String {
        a.to_string()
    }
}

/// ℤ/p for a prime p < 2³¹.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModP {
    p: u64,
}

impl ModP {
    pub fn new(p: u64) -> Result<ModP> {
        if !(2..1 << 31).contains(&p) || !is_prime(p) {
            return Err(Error::Domain(format!("modulus {p} is not a prime below 2^31")));
        }
        Ok(ModP { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = r * a % self.p;
            }
            a = a * a % self.p;
            e >>= 1;
        }
        r
    }

    pub fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl Ring for ModP {
    type E = u64;

    fn name(&self) -> String {
        format!("Z{}", self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_int(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn div_exact(&self, a: &u64, b: &u64) -> Option<u64> {
        (*b != 0).then(|| self.mul(a, &self.inv(*b)))
    }
    fn is_unit(&self, a: &u64) -> bool {
        *a != 0
    }
    fn canonical_unit(&self, a: &u64) -> u64 {
        self.inv(*a)
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
}

/// ℤ[ζ] with ζ² + ζ + 1 = 0; `(x, y)` stands for `x + yζ`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Eisenstein;

pub type EisensteinInt = (BigInt, BigInt);

impl Eisenstein {
    pub fn zeta(&self) -> EisensteinInt {
        (BigInt::zero(), BigInt::one())
    }

    /// `x + yζ̄ = (x − y) − yζ`.
    pub fn conj(&self, a: &EisensteinInt) -> EisensteinInt {
        (&a.0 - &a.1, -&a.1)
    }

    /// `x² − xy + y²`.
    pub fn norm(&self, a: &EisensteinInt) -> BigInt {
        &a.0 * &a.0 - &a.0 * &a.1 + &a.1 * &a.1
    }

    pub fn units(&self) -> [EisensteinInt; 6] {
        let i = |x: i64, y: i64| (BigInt::from(x), BigInt::from(y));
        [i(1, 0), i(-1, 0), i(0, 1), i(0, -1), i(-1, -1), i(1, 1)]
    }
}

impl Ring for Eisenstein {
    type E = EisensteinInt;

    fn name(&self) -> String {
        "Z[ζ]".into()
    }
    fn zero(&self) -> EisensteinInt {
        (BigInt::zero(), BigInt::zero())
    }
    fn one(&self) -> EisensteinInt {
        (BigInt::one(), BigInt::zero())
    }
    fn from_int(&self, n: &BigInt) -> EisensteinInt {
        (n.clone(), BigInt::zero())
    }
    fn add(&self, a: &EisensteinInt, b: &EisensteinInt) -> EisensteinInt {
        (&a.0 + &b.0, &a.1 + &b.1)
    }
    fn neg(&self, a: &EisensteinInt) -> EisensteinInt {
        (-&a.0, -&a.1)
    }
    fn mul(&self, a: &EisensteinInt, b: &EisensteinInt) -> EisensteinInt {
        let bd = &a.1 * &b.1;
        (&a.0 * &b.0 - &bd, &a.0 * &b.1 + &a.1 * &b.0 - bd)
    }
    fn div_exact(&self, a: &EisensteinInt, b: &EisensteinInt) -> Option<EisensteinInt> {
        let n = self.norm(b);
        if n.is_zero() {
            return None;
        }
        let num = self.mul(a, &self.conj(b));
        let (qx, rx) = num.0.div_rem(&n);
        let (qy, ry) = num.1.div_rem(&n);
        (rx.is_zero() && ry.is_zero()).then_some((qx, qy))
    }
    fn is_unit(&self, a: &EisensteinInt) -> bool {
        self.norm(a).is_one()
    }
    fn canonical_unit(&self, a: &EisensteinInt) -> EisensteinInt {
        self.units()
            .into_iter()
            .max_by(|u, v| self.mul(u, a).cmp(&self.mul(v, a)))
            .unwrap()
    }
    fn format(&self, a: &EisensteinInt) -> String {
        match (a.0.is_zero(), a.1.is_zero()) {
            (_, true) => a.0.to_string(),
            (true, false) if a.1.is_one() => "ζ".into(),
            (true, false) if (-&a.1).is_one() => "-ζ".into(),
            (true, false) => format!("{}ζ", a.1),
            (false, false) => {
                let y = if a.1.is_one() {
                    "+ζ".to_string()
                } else if (-&a.1).is_one() {
                    "-ζ".to_string()
                } else if a.1.is_negative() {
                    format!("{}ζ", a.1)
                } else {
                    format!("+{}ζ", a.1)
                };
                format!("{}{}", a.0, y)
            }
        }
    }
    fn is_compound(&self, a: &EisensteinInt) -> bool {
        !a.1.is_zero()
    }
}
