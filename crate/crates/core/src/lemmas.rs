//! Closed-form coefficients from the non-metabelian lemmas, together with
//! their symbolic counterparts extracted from Jacobiators of the general law.
//!
//! With `p = 2n - z1 - 2 z2 - 3`, `q = n - z2 - 2`, `r = n - z1 - 1` and
//! `R_k = (C(r,k) - C(r,k-1)) C(q,k)`, `S_k = (C(r,k) - C(r,k-1)) C(q,k-1)`,
//! the coefficient of `e_{m+p+4-2k}` in `J(e_{z1+m}, e_{n-1}, e_n)` is
//! `a_m g_k^2 + b_m g_k a_{k+1} + c_m a_{k+1}^2` once `a_1 = 0` and
//! `g_i = a_{i+1} = 0` for `i < k`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{binomial, rat, Polynomial, Rational, Var};
use crate::family::{generate_general, specialize_fag, FagMode, GeneralLawParams};
use crate::liealg::LieAlgebra;
use crate::series::Triple;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CombinatorialContext {
    pub triple: Triple,
    pub p: i64,
    pub q: i64,
    pub r: i64,
    #[serde(serialize_with = "crate::format::ser_rational")]
    pub sum_r: Rational,
    #[serde(serialize_with = "crate::format::ser_rational")]
    pub sum_s: Rational,
}

fn c(upper: i64, lower: i64) -> Result<Rational> {
    binomial(upper, lower)
}

pub fn context(t: Triple) -> Result<CombinatorialContext> {
    if !t.is_valid() {
        return Err(Error::InvalidTriple(t));
    }
    let (z1, z2, n) = (t.z1 as i64, t.z2 as i64, t.n as i64);
    let p = 2 * n - z1 - 2 * z2 - 3;
    let q = n - z2 - 2;
    let r = n - z1 - 1;
    let mut sum_r = rat(0);
    let mut sum_s = rat(0);
    for k in 0..=r / 2 {
        let d = c(r, k)? - c(r, k - 1)?;
        sum_r += &d * c(q, k)?;
        sum_s += &d * c(q, k - 1)?;
    }
    Ok(CombinatorialContext { triple: t, p, q, r, sum_r, sum_s })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Abc {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

/// `a_m`, `b_m`, `c_m` for `0 <= m <= r - 1`.
pub fn abc(ctx: &CombinatorialContext, m: i64) -> Result<Abc> {
    if m < 0 || m >= ctx.r {
        return Err(Error::IndexOutOfRange { index: m.max(0) as usize, dim: ctx.r.max(0) as usize });
    }
    abc_unchecked(ctx, m).map_err(|e| match e {
        Error::NegativeUpperIndex { upper, lower } => Error::IndexGuard(format!(
            "C({upper}, {lower}) needed for m = {m} at {}",
            ctx.triple
        )),
        e => e,
    })
}

fn abc_unchecked(ctx: &CombinatorialContext, m: i64) -> Result<Abc> {
    let (p, q) = (ctx.p, ctx.q);
    let (sr, ss) = (&ctx.sum_r, &ctx.sum_s);
    let a = c(m + q - 1, m)? * c(m + p, q)? - c(m + q, m)? * c(m + p, q - 1)? - c(p + m, m)? * sr;
    let b = c(m + q - 1, m)? * c(m + p, q + 1)? - c(m + q - 1, m - 1)? * c(m + p, q)?
        - c(m + q, m)? * c(m + p, q)?
        - c(m + q, m - 1)? * c(m + p, q - 1)?
        - c(m + p, m - 1)? * sr
        - c(m + p, m)? * ss;
    let cc = c(m + q - 1, m - 1)? * c(m + p, q + 1)? - c(m + q, m - 1)? * c(m + p, q)? - c(m + p, m - 1)? * ss;
    Ok(Abc { a, b, c: cc })
}

/// The coefficients used in the emptiness argument, in the expanded form
/// (`raw`) and the simplified rational form printed alongside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofCoeffs {
    pub a0: Rational,
    pub b0: Rational,
    pub a1: Rational,
    pub b1: Rational,
    pub c1: Rational,
    /// `(p + 1) a0 - a1`
    pub a_prime: Rational,
    /// `(p + 1) b0 - b1`
    pub b_prime: Rational,
    pub simplified: SimplifiedCoeffs,
}

/// Simplified forms; `None` where the denominator vanishes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplifiedCoeffs {
    pub a0: Option<Rational>,
    pub b0: Option<Rational>,
    pub a1: Option<Rational>,
    pub b1: Option<Rational>,
    pub c1: Option<Rational>,
    pub a_prime: Option<Rational>,
    pub b_prime: Option<Rational>,
}

impl ProofCoeffs {
    /// `b0^2 a'`
    pub fn lhs(&self) -> Rational {
        &self.b0 * &self.b0 * &self.a_prime
    }

    /// `a0 (a0 c1 - b0 b')`
    pub fn rhs(&self) -> Rational {
        &self.a0 * (&self.a0 * &self.c1 - &self.b0 * &self.b_prime)
    }

    /// `a0 < 0`, `b0 < 0`, `a' >= 0`, `b' > 0`, `c1 < 0`.
    pub fn sign_pattern(&self) -> [bool; 5] {
        let z = rat(0);
        [
            self.a0 < z,
            self.b0 < z,
            self.a_prime >= z,
            self.b_prime > z,
            self.c1 < z,
        ]
    }

    /// The simplified values in the order a0, b0, a1, b1, c1, a', b';
    /// fails on the first vanishing denominator.
    pub fn simplified_values(&self) -> Result<[Rational; 7]> {
        let s = &self.simplified;
        let get = |v: &Option<Rational>, d: &'static str| v.clone().ok_or(Error::DegenerateDenominator(d));
        Ok([
            get(&s.a0, "p - q + 1")?,
            get(&s.b0, "q + 1")?,
            get(&s.a1, "p - q + 2")?,
            get(&s.b1, "(q + 1)(p - q + 2)")?,
            get(&s.c1, "p - q + 1")?,
            get(&s.a_prime, "p - q + 2")?,
            get(&s.b_prime, "(p - q + 2)(q + 1)")?,
        ])
    }
}

fn frac(num: i64, den: i64) -> Option<Rational> {
    (den != 0).then(|| crate::exactmath::ratio(num, den))
}

/// Evaluates the coefficients in both forms. Each simplified form is checked
/// against the expanded one after clearing its denominator, so the check also
/// covers triples where a denominator vanishes.
pub fn proof_coeffs(ctx: &CombinatorialContext) -> Result<ProofCoeffs> {
    if ctx.r < 2 {
        return Err(Error::IndexGuard(format!("r = {} leaves no m = 1 coefficient", ctx.r)));
    }
    let (p, q) = (ctx.p, ctx.q);
    let (sr, ss) = (&ctx.sum_r, &ctx.sum_s);
    if ctx.p < 0 {
        return Err(Error::IndexGuard(format!("p = {} < 0 at {}", ctx.p, ctx.triple)));
    }
    let m0 = abc(ctx, 0)?;
    let m1 = abc(ctx, 1)?;
    let (a0, b0, a1, b1, c1) = (m0.a, m0.b, m1.a, m1.b, m1.c);
    let a_prime = rat(p + 1) * &a0 - &a1;
    let b_prime = rat(p + 1) * &b0 - &b1;

    let cpq = c(p, q)?;
    let cp1q = c(p + 1, q)?;
    let cp1q1 = c(p + 1, q + 1)?;
    let check = |name: &str, lhs: Rational, rhs: Rational| -> Result<()> {
        if lhs == rhs {
            Ok(())
        } else {
            Err(Error::IdentityMismatch(format!(
                "{name} at {}: expanded and simplified forms differ ({lhs} vs {rhs})",
                ctx.triple
            )))
        }
    };
    // (p-q+1)(a0 + R) = (p-2q+1) C(p,q)
    check("a0", rat(p - q + 1) * (&a0 + sr), rat(p - 2 * q + 1) * &cpq)?;
    // (q+1)(b0 + S) = (p-2q-1) C(p,q)
    check("b0", rat(q + 1) * (&b0 + ss), rat(p - 2 * q - 1) * &cpq)?;
    // (p-q+2)(a1 + (p+1)R) = (p-2q+1) q C(p+1,q)
    check("a1", rat(p - q + 2) * (&a1 + rat(p + 1) * sr), rat((p - 2 * q + 1) * q) * &cp1q)?;
    let b1_num = (q * (p - 2 * q - 2) - 2) * (p - q + 2) - q * (q + 1);
    check(
        "b1",
        rat((q + 1) * (p - q + 2)) * (&b1 + sr + rat(p + 1) * ss),
        rat(b1_num) * &cp1q,
    )?;
    // (p-q+1)(c1 + S) = (p-2q) C(p+1,q+1)
    check("c1", rat(p - q + 1) * (&c1 + ss), rat(p - 2 * q) * &cp1q1)?;
    let a_prime_num = (p - 2 * q + 1) * (p - 2 * q + 2);
    check("a'", rat(p - q + 2) * &a_prime, rat(a_prime_num) * &cp1q)?;
    let b_prime_num = (p - q + 2) * ((p - 2 * q).pow(2) + (q + 1)) + q * (q + 1);
    check("b'", rat((p - q + 2) * (q + 1)) * (&b_prime - sr), rat(b_prime_num) * &cp1q)?;

    let simplified = SimplifiedCoeffs {
        a0: frac(p - 2 * q + 1, p - q + 1).map(|f| f * &cpq - sr),
        b0: frac(p - 2 * q - 1, q + 1).map(|f| f * &cpq - ss),
        a1: frac(p - 2 * q + 1, p - q + 2).map(|f| f * rat(q) * &cp1q - rat(p + 1) * sr),
        b1: frac(b1_num, (q + 1) * (p - q + 2)).map(|f| f * &cp1q - sr - rat(p + 1) * ss),
        c1: frac(p - 2 * q, p - q + 1).map(|f| f * &cp1q1 - ss),
        a_prime: frac(a_prime_num, p - q + 2).map(|f| f * &cp1q),
        b_prime: frac(b_prime_num, (p - q + 2) * (q + 1)).map(|f| f * &cp1q + sr),
    };
    Ok(ProofCoeffs { a0, b0, a1, b1, c1, a_prime, b_prime, simplified })
}

fn alpha1_guard(ctx: &CombinatorialContext) -> Result<()> {
    let n = ctx.triple.n as i64;
    if ctx.p < 0 || ctx.p + 4 > n {
        return Err(Error::IndexGuard(format!(
            "e_(p+4) with p = {} is outside e_3..e_{n}",
            ctx.p
        )));
    }
    if ctx.q + 1 <= 0 {
        return Err(Error::IndexGuard(format!("q + 1 = {} is not positive", ctx.q + 1)));
    }
    Ok(())
}

/// `a_1^2 (-(z1 - 2)/(q + 1) C(p + 2, q) - C(q + r, r - 1))`.
pub fn alpha1_coefficient(t: Triple) -> Result<Polynomial> {
    let ctx = context(t)?;
    alpha1_guard(&ctx)?;
    let (p, q, r) = (ctx.p, ctx.q, ctx.r);
    let k = -crate::exactmath::ratio(t.z1 as i64 - 2, q + 1) * c(p + 2, q)? - c(q + r, r - 1)?;
    let a1 = Polynomial::var(Var::Alpha(1));
    Ok((&a1 * &a1).scale(&k))
}

/// Coordinate `e_(p+4)` of `J(e_z1, e_(n-1), e_n)` for the law whose only
/// nonzero parameter is a symbolic `a_1`.
pub fn alpha1_extracted(t: Triple) -> Result<Polynomial> {
    let ctx = context(t)?;
    alpha1_guard(&ctx)?;
    let mut params = GeneralLawParams::zero(t)?;
    params.set(&Var::Alpha(1), Polynomial::var(Var::Alpha(1)))?;
    let g = generate_general(&params)?;
    jacobi_coordinate(&g, (t.z1, t.n - 1, t.n), (ctx.p + 4) as usize)
}

/// Parameters of the law used for the coefficient lemmas: `F_ag` with
/// `a_1 = 0` and `g_i = a_{i+1} = 0` for `i < k`, everything else symbolic.
pub fn lemma_law(t: Triple, k: usize, mode: FagMode) -> Result<LieAlgebra> {
    let mut params = GeneralLawParams::symbolic(t)?;
    params.set(&Var::Alpha(1), Polynomial::zero())?;
    for i in 1..k {
        params.set(&Var::Gamma(i as u32), Polynomial::zero())?;
        if params.get(&Var::Alpha(i as u32 + 1)).is_some() {
            params.set(&Var::Alpha(i as u32 + 1), Polynomial::zero())?;
        }
    }
    generate_general(&specialize_fag(&params, mode))
}

/// Coordinate `h` of `J(e_i, e_j, e_k)`.
pub fn jacobi_coordinate(g: &LieAlgebra, (i, j, k): (usize, usize, usize), h: usize) -> Result<Polynomial> {
    Ok(g.jacobiator(i, j, k)?.coord(h)?.clone())
}

/// Outcome of comparing a symbolically extracted coefficient with its closed
/// form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityVerdict {
    pub triple: Triple,
    pub m: usize,
    pub k: usize,
    /// Basis index of the compared coordinate.
    pub index: usize,
    #[serde(serialize_with = "crate::format::ser_display")]
    pub extracted: Polynomial,
    #[serde(serialize_with = "crate::format::ser_display")]
    pub closed_form: Polynomial,
    pub holds: bool,
}

/// Checks that coordinate `e_(m+p+4-2k)` of `J(e_(z1+m), e_(n-1), e_n)` is
/// `a_m g_k^2 + b_m g_k a_(k+1) + c_m a_(k+1)^2` on the `F_ag` law with
/// `a_1 = 0` and `g_i = a_(i+1) = 0` for `i < k`.
pub fn jacobi_coefficient_identity(t: Triple, m: usize, k: usize) -> Result<IdentityVerdict> {
    let ctx = context(t)?;
    let (z1, z2, n) = (t.z1, t.z2, t.n);
    if z2 + 3 > n {
        return Err(Error::IndexGuard(format!("z2 = {z2} > n - 3 at {t}")));
    }
    if ctx.p < 1 {
        return Err(Error::IndexGuard(format!("p = {} < 1 at {t}", ctx.p)));
    }
    if m as i64 >= ctx.r {
        return Err(Error::IndexGuard(format!("m = {m} outside 0..={} at {t}", ctx.r - 1)));
    }
    if k < 1 || k > z2 - z1 {
        return Err(Error::IndexGuard(format!("k = {k} outside 1..={} at {t}", z2 - z1)));
    }
    let index = m as i64 + ctx.p + 4 - 2 * k as i64;
    if index < 3 || index > n as i64 {
        return Err(Error::IndexGuard(format!("target e_{index} outside e_3..e_{n} at {t}")));
    }
    let g = lemma_law(t, k, FagMode::Full)?;
    let extracted = jacobi_coordinate(&g, (z1 + m, n - 1, n), index as usize)?;
    let Abc { a, b, c: cm } = abc(&ctx, m as i64)?;
    let gk = Polynomial::var(Var::Gamma(k as u32));
    let ak = Polynomial::var(Var::Alpha(k as u32 + 1));
    let closed_form = (&gk * &gk).scale(&a) + (&gk * &ak).scale(&b) + (&ak * &ak).scale(&cm);
    let holds = extracted == closed_form;
    Ok(IdentityVerdict { triple: t, m, k, index: index as usize, extracted, closed_form, holds })
}

/// Every `(m, k)` passing the guards of [`jacobi_coefficient_identity`].
pub fn guarded_pairs(t: Triple) -> Vec<(usize, usize)> {
    let Ok(ctx) = context(t) else { return Vec::new() };
    if t.z2 + 3 > t.n || ctx.p < 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for k in 1..=t.z2 - t.z1 {
        for m in 0..ctx.r.max(0) as usize {
            let index = m as i64 + ctx.p + 4 - 2 * k as i64;
            if (3..=t.n as i64).contains(&index) {
                out.push((m, k));
            }
        }
    }
    out
}

/// Runs [`jacobi_coefficient_identity`] on all guarded pairs, in order of
/// `(k, m)`.
pub fn identity_sweep(t: Triple) -> Result<Vec<IdentityVerdict>> {
    use rayon::prelude::*;
    let mut pairs = guarded_pairs(t);
    pairs.sort_by_key(|&(m, k)| (k, m));
    crate::parallel::install(|| {
        pairs
            .par_iter()
            .map(|&(m, k)| jacobi_coefficient_identity(t, m, k))
            .collect()
    })
}

/// `P_(n-z2)([e_(z1+k), e_(n-k)])` on the law with `a_1 = 0`, against
/// `C(q, k) g_1 + C(q, k-1) a_2`, for every `k` with `z1 + k < n - k`.
pub fn comb2_check(t: Triple) -> Result<Vec<(usize, bool)>> {
    let ctx = context(t)?;
    let g = lemma_law(t, 1, FagMode::Full)?;
    let (z1, z2, n) = (t.z1, t.z2, t.n);
    let mut out = Vec::new();
    let mut k = 0;
    while z1 + k < n - k {
        let v = g.bracket_basis(z1 + k, n - k)?;
        let got = v.coord(n - z2)?.clone();
        let expected = Polynomial::var(Var::Gamma(1)).scale(&c(ctx.q, k as i64)?)
            + Polynomial::var(Var::Alpha(2)).scale(&c(ctx.q, k as i64 - 1)?);
        out.push((k, got == expected));
        k += 1;
    }
    Ok(out)
}

/// `P_(n-z2+1)([e_(z1+k), e_(n-k)])` on the law with only `a_1` nonzero,
/// against `C(q + 1, k) a_1`, for every `k` with `z1 + k < n - k`.
pub fn alpha1_vandermonde_check(t: Triple) -> Result<Vec<(usize, bool)>> {
    let ctx = context(t)?;
    let mut params = GeneralLawParams::zero(t)?;
    params.set(&Var::Alpha(1), Polynomial::var(Var::Alpha(1)))?;
    let g = generate_general(&params)?;
    let (z1, z2, n) = (t.z1, t.z2, t.n);
    let mut out = Vec::new();
    let mut k = 0;
    while z1 + k < n - k {
        let got = g.bracket_basis(z1 + k, n - k)?.coord(n - z2 + 1)?.clone();
        let expected = Polynomial::var(Var::Alpha(1)).scale(&c(ctx.q + 1, k as i64)?);
        out.push((k, got == expected));
        k += 1;
    }
    Ok(out)
}
