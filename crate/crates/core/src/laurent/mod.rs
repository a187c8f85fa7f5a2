//! Exact Laurent polynomials and polynomial matrices over ℤ, ℤ/p and ℤ[ζ],
//! with the determinant identities that decide the 2- and 3-fold cover
//! lifting criteria.

mod matrix;
mod parse;
mod poly;
mod ring;

pub use matrix::{PolyMatrix, MAX_DIM};
pub use parse::{format_poly, parse_matrix, parse_poly, MAX_EXPONENT};
pub use poly::LaurentPoly;
pub use ring::{Eisenstein, EisensteinInt, Integers, ModP, Ring};

use num_bigint::BigInt;

use crate::error::{Error, Result};

pub type ZPoly = LaurentPoly<Integers>;
pub type ZMatrix = PolyMatrix<Integers>;

/// Determinant of a square polynomial matrix.
pub fn poly_matrix_det<R: Ring>(m: &PolyMatrix<R>) -> Result<LaurentPoly<R>> {
    m.det()
}

/// Companion matrix of `t^r − s`: ones below the diagonal, `s` in the top
/// right corner. Its r-th power is `s·I`.
pub fn companion_t_r_minus_s(r: usize) -> ZMatrix {
    PolyMatrix::from_fn(Integers, r, r, |i, j| {
        if i == j + 1 {
            LaurentPoly::one(Integers)
        } else if i == 0 && j + 1 == r {
            LaurentPoly::var(Integers)
        } else {
            LaurentPoly::zero(Integers)
        }
    })
}

fn check_pullback_input(delta: &ZPoly, r: usize) -> Result<ZPoly> {
    if r == 0 {
        return Err(Error::Domain("pullback exponent r must be at least 1".into()));
    }
    if delta.is_zero() {
        return Err(Error::Domain("cannot pull back the zero polynomial".into()));
    }
    Ok(delta.shift(-delta.low()))
}

/// `det Δ(C_r)` for the companion matrix `C_r` of `t^r − s`: the 0th
/// characteristic polynomial of the module restricted along `s = t^r`.
pub fn pullback_companion(delta: &ZPoly, r: usize) -> Result<ZPoly> {
    let d = check_pullback_input(delta, r)?;
    let c = companion_t_r_minus_s(r);
    let mut acc = PolyMatrix::zeros(Integers, r, r);
    for k in (0..d.coeffs().len()).rev() {
        acc = acc.mul(&c)?;
        let ck = LaurentPoly::constant(Integers, d.coeffs()[k].clone());
        acc = acc.add(&PolyMatrix::identity(Integers, r).scale(&ck))?;
    }
    acc.det()
}

/// Sylvester matrix of `f(t)` and `t^r − s`, with entries in ℤ[s].
pub fn sylvester_t_r_minus_s(delta: &ZPoly, r: usize) -> Result<ZMatrix> {
    let d = check_pullback_input(delta, r)?;
    let deg = d.coeffs().len() - 1;
    let n = deg + r;
    let mut m = PolyMatrix::zeros(Integers, n, n);
    for row in 0..r {
        for (i, c) in d.coeffs().iter().rev().enumerate() {
            m.set(row, row + i, LaurentPoly::constant(Integers, c.clone()));
        }
    }
    for row in 0..deg {
        m.set(r + row, row, LaurentPoly::one(Integers));
        m.set(r + row, row + r, LaurentPoly::var(Integers).neg());
    }
    Ok(m)
}

/// `Res_t(Δ(t), t^r − s)` via the Sylvester determinant.
pub fn pullback_resultant(delta: &ZPoly, r: usize) -> Result<ZPoly> {
    sylvester_t_r_minus_s(delta, r)?.det()
}

/// The pullback `Δ̃(s)` of `Δ(t)` along `s = t^r`, normalized. Computed by
/// the companion determinant and checked against the resultant.
pub fn pullback_char_poly(delta: &ZPoly, r: usize) -> Result<ZPoly> {
    let via_companion = pullback_companion(delta, r)?.normalized();
    let via_resultant = pullback_resultant(delta, r)?.normalized();
    if via_companion != via_resultant {
        return Err(Error::Invariant(format!(
            "companion pullback {via_companion} differs from resultant {via_resultant}"
        )));
    }
    Ok(via_companion)
}

/// Outcome of a determinant lifting criterion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiftVerdict {
    /// The reduced polynomial vanishes: the relevant homology is infinite.
    LiftReducedZero,
    /// The reduced polynomial has an extra factor: homology grows.
    LiftExtraFactor,
    /// The reduced polynomial is trivial: no surjective lift.
    NoSurjectiveLift,
}

impl LiftVerdict {
    pub fn surjective_lift_exists(self) -> bool {
        self != LiftVerdict::NoSurjectiveLift
    }

    pub fn reason(self) -> &'static str {
        match self {
            LiftVerdict::LiftReducedZero => "reduced polynomial is zero",
            LiftVerdict::LiftExtraFactor => "reduced polynomial has a nontrivial factor",
            LiftVerdict::NoSurjectiveLift => "reduced polynomial is trivial",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCoverReport {
    pub det_sum: ZPoly,
    pub det_diff: ZPoly,
    pub g: ZPoly,
    pub g_mod3: LaurentPoly<ModP>,
    pub verdict: LiftVerdict,
}

/// For `T = [[A, B], [B, A]]`: `det(A+B)`, `det(A−B)`, and
/// `g = det(A−B)/(s−1)`. The S₃ verdict reads `g` mod 3: zero or of
/// positive span means a lift onto S₃ exists, a unit means none does.
pub fn two_cover_factor(a: &ZMatrix, b: &ZMatrix) -> Result<TwoCoverReport> {
    check_blocks(&[a, b])?;
    let det_sum = a.add(b)?.det()?;
    let det_diff = a.sub(b)?.det()?;
    let s_minus_1 = LaurentPoly::from_ints(Integers, 0, &[-1, 1]);
    let g = det_diff.div_exact(&s_minus_1).ok_or_else(|| {
        Error::Domain(format!("s - 1 does not divide det(A - B) = {det_diff}"))
    })?;
    let m3 = ModP::new(3)?;
    let g_mod3 = g.reduce_mod(m3);
    let verdict = verdict_from_span(&g_mod3);
    Ok(TwoCoverReport {
        det_sum,
        det_diff,
        g,
        g_mod3,
        verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreeCoverReport {
    pub delta_tilde: ZPoly,
    pub f: LaurentPoly<Eisenstein>,
    pub ffbar: ZPoly,
    pub ffbar_mod2: LaurentPoly<ModP>,
    /// Multiplicity of `(s − 1)` in `F F̄` mod 2, capped at 2.
    pub s_minus_1_power: u32,
    pub verdict: LiftVerdict,
}

/// For `T = [[A, B, C], [B, C, A], [C, A, B]]`: `Δ̃ = det(A+B+C)` and
/// `F F̄ = det(A+ζB+ζ²C)·det(A+ζ²B+ζC)`. The A₄ verdict reads `F F̄` mod 2:
/// zero, or a factor other than `(s−1)^k` (k ≤ 2) up to units, means a lift
/// onto A₄ exists.
pub fn three_cover_factor(a: &ZMatrix, b: &ZMatrix, c: &ZMatrix) -> Result<ThreeCoverReport> {
    check_blocks(&[a, b, c])?;
    let delta_tilde = a.add(b)?.add(c)?.det()?;
    let r = Eisenstein;
    let zeta = LaurentPoly::constant(r, r.zeta());
    let zeta2 = zeta.mul(&zeta);
    let (ae, be, ce) = (a.to_eisenstein(), b.to_eisenstein(), c.to_eisenstein());
    let f = ae.add(&be.scale(&zeta))?.add(&ce.scale(&zeta2))?.det()?;
    let fbar = ae.add(&be.scale(&zeta2))?.add(&ce.scale(&zeta))?.det()?;
    if fbar != f.conj() {
        return Err(Error::Invariant("det(A+ζ²B+ζC) is not the conjugate of F".into()));
    }
    let ffbar = f
        .mul(&fbar)
        .to_integers()
        .ok_or_else(|| Error::Invariant("F F̄ has non-integer coefficients".into()))?;
    let m2 = ModP::new(2)?;
    let ffbar_mod2 = ffbar.reduce_mod(m2);
    let (s_minus_1_power, rest) = ffbar_mod2.split_s_minus_1(2);
    let verdict = if ffbar_mod2.is_zero() {
        LiftVerdict::LiftReducedZero
    } else {
        verdict_from_span(&rest)
    };
    Ok(ThreeCoverReport {
        delta_tilde,
        f,
        ffbar,
        ffbar_mod2,
        s_minus_1_power,
        verdict,
    })
}

fn verdict_from_span(p: &LaurentPoly<ModP>) -> LiftVerdict {
    match p.span() {
        None => LiftVerdict::LiftReducedZero,
        Some(k) if k > 0 => LiftVerdict::LiftExtraFactor,
        Some(_) => LiftVerdict::NoSurjectiveLift,
    }
}

fn check_blocks(blocks: &[&ZMatrix]) -> Result<()> {
    let n = blocks[0].rows();
    if blocks.iter().any(|m| !m.is_square() || m.rows() != n) {
        return Err(Error::Domain("blocks must be square matrices of the same size".into()));
    }
    Ok(())
}

/// Determinant of `T` reduced mod `p` before elimination.
pub fn det_mod(m: &ZMatrix, p: u64) -> Result<LaurentPoly<ModP>> {
    m.reduce_mod(ModP::new(p)?).det()
}

/// `∏ (x − α_i)` style helper: the integer polynomial with the given
/// coefficients, lowest degree first.
pub fn zpoly(coeffs: &[i64]) -> ZPoly {
    LaurentPoly::from_ints(Integers, 0, coeffs)
}

/// Lowest-first integer coefficients, if the polynomial has no negative
/// exponents.
pub fn int_coeffs(p: &ZPoly) -> Option<Vec<BigInt>> {
    if p.is_zero() {
        return Some(Vec::new());
    }
    if p.low() < 0 {
        return None;
    }
    let mut v = vec![BigInt::from(0); p.low() as usize];
    v.extend(p.coeffs().iter().cloned());
    Some(v)
}
