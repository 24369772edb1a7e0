//! Checks of the main results at concrete triples: emptiness certificates,
//! the derived length bound, a seeded parameter search, and the two explicit
//! families in dimensions 15 and 31.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::{format_rational, ratio, Polynomial, Rational, Var};
use crate::family::{generate_general, specialize_fag, FagMode, GeneralLawParams};
use crate::lemmas::{self, alpha1_extracted, context, jacobi_coordinate, lemma_law, proof_coeffs, ProofCoeffs};
use crate::liealg::LieAlgebra;
use crate::series::{classify, Triple};

/// Distinct monic Jacobiator coordinates of `g`, in increasing order.
pub fn constraints(g: &LieAlgebra) -> Vec<Polynomial> {
    let set: BTreeSet<Polynomial> = g
        .jacobi_check()
        .into_iter()
        .flat_map(|v| v.coords.into_iter().map(|(_, p)| p.monic()))
        .collect();
    set.into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoefficientRecord {
    pub a0: String,
    pub b0: String,
    pub a1: String,
    pub b1: String,
    pub c1: String,
    pub a_prime: String,
    pub b_prime: String,
}

impl From<&ProofCoeffs> for CoefficientRecord {
    fn from(pc: &ProofCoeffs) -> Self {
        CoefficientRecord {
            a0: format_rational(&pc.a0),
            b0: format_rational(&pc.b0),
            a1: format_rational(&pc.a1),
            b1: format_rational(&pc.b1),
            c1: format_rational(&pc.c1),
            a_prime: format_rational(&pc.a_prime),
            b_prime: format_rational(&pc.b_prime),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignFlags {
    pub a0_negative: bool,
    pub b0_negative: bool,
    pub a_prime_nonnegative: bool,
    pub b_prime_positive: bool,
    pub c1_negative: bool,
}

impl SignFlags {
    pub fn all(&self) -> bool {
        self.a0_negative && self.b0_negative && self.a_prime_nonnegative && self.b_prime_positive && self.c1_negative
    }
}

/// One Jacobi coordinate used in a symbolic step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepEquation {
    pub m: usize,
    pub index: usize,
    #[serde(serialize_with = "crate::format::ser_display")]
    pub form: Polynomial,
}

/// Symbolic replay of one inductive step: the two extracted quadratic forms in
/// `(g_l, a_(l+1))` and their resultant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymbolicStep {
    pub equations: Vec<StepEquation>,
    #[serde(serialize_with = "crate::format::ser_rational")]
    pub resultant: Rational,
    /// The two equations admit only `g_l = a_(l+1) = 0`.
    pub forces_zero: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepRecord {
    pub ell: usize,
    /// The closed-form sign pattern and relation, shared by every step.
    pub contradiction: bool,
    /// `None` when a required coordinate index falls outside `e_2..e_n`.
    pub symbolic: Option<SymbolicStep>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TerminalRecord {
    /// The bracket that vanishes once every step has run, e.g. `[e_4, e_10]`.
    pub vanishing_bracket: Option<String>,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmptinessCertificate {
    pub triple: Triple,
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub coefficients: CoefficientRecord,
    pub signs: SignFlags,
    /// `b0^2 a'`
    pub relation_lhs: String,
    /// `a0 (a0 c1 - b0 b')`
    pub relation_rhs: String,
    pub relation_violated: bool,
    /// `min(n - z2 - 1, z2 - z1)`
    pub step_count: usize,
    pub steps: Vec<StepRecord>,
    /// Coordinate `e_(p+4)` of `J(e_z1, e_(n-1), e_n)` with only `a_1` nonzero.
    #[serde(serialize_with = "crate::format::ser_display")]
    pub alpha1_coefficient: Polynomial,
    pub terminal: TerminalRecord,
    /// Every step's extracted equations force its two parameters to zero.
    pub symbolic_steps_confirmed: bool,
    pub conclusion: bool,
}

impl EmptinessCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

/// Resultant of `a0 x^2 + b0 xy + c0 y^2` and `a1 x^2 + b1 xy + c1 y^2`.
fn binary_quadratic_resultant(f: [&Rational; 3], g: [&Rational; 3]) -> Rational {
    let [a0, b0, c0] = f;
    let [a1, b1, c1] = g;
    let u = a0 * c1 - a1 * c0;
    let v = a0 * b1 - a1 * b0;
    let w = b0 * c1 - b1 * c0;
    &u * &u - v * w
}

fn quadratic_parts(form: &Polynomial, x: &Var, y: &Var) -> Option<[Rational; 3]> {
    let px = Polynomial::var(x.clone());
    let py = Polynomial::var(y.clone());
    let mono = |p: Polynomial| p.terms().next().expect("monomial").0.clone();
    let parts = [
        form.coefficient(&mono(&px * &px)),
        form.coefficient(&mono(&px * &py)),
        form.coefficient(&mono(&py * &py)),
    ];
    let rebuilt = (&px * &px).scale(&parts[0]) + (&px * &py).scale(&parts[1]) + (&py * &py).scale(&parts[2]);
    (rebuilt == *form).then_some(parts)
}

fn symbolic_step(t: Triple, p: i64, ell: usize) -> Result<Option<SymbolicStep>> {
    let (z1, z2, n) = (t.z1, t.z2, t.n);
    let g = lemma_law(t, ell, FagMode::Full)?;
    let x = Var::Gamma(ell as u32);
    let alpha_exists = ell < z2 - z1 + 1;
    let y = Var::Alpha(ell as u32 + 1);
    let mut equations = Vec::new();
    for m in [ell - 1, ell] {
        let index = m as i64 + p + 4 - 2 * ell as i64;
        if index < 2 || index > n as i64 || z1 + m > n - 2 {
            return Ok(None);
        }
        let form = jacobi_coordinate(&g, (z1 + m, n - 1, n), index as usize)?;
        equations.push(StepEquation { m, index: index as usize, form });
    }
    let parts: Option<Vec<[Rational; 3]>> = equations.iter().map(|e| quadratic_parts(&e.form, &x, &y)).collect();
    let Some(parts) = parts else {
        return Ok(Some(SymbolicStep { equations, resultant: ratio(0, 1), forces_zero: false }));
    };
    let zero = ratio(0, 1);
    let (resultant, forces_zero) = if alpha_exists {
        let r = binary_quadratic_resultant(
            [&parts[0][0], &parts[0][1], &parts[0][2]],
            [&parts[1][0], &parts[1][1], &parts[1][2]],
        );
        let f = r != zero;
        (r, f)
    } else {
        // only g_l is a parameter: some x^2 coefficient must survive
        (zero.clone(), parts.iter().any(|q| q[0] != zero))
    };
    Ok(Some(SymbolicStep { equations, resultant, forces_zero }))
}

fn terminal_check(t: Triple, steps: usize) -> Result<TerminalRecord> {
    let (z1, z2, n) = (t.z1, t.z2, t.n);
    let mut params = GeneralLawParams::symbolic(t)?;
    params.set(&Var::Alpha(1), Polynomial::zero())?;
    for i in 1..=steps {
        params.set(&Var::Gamma(i as u32), Polynomial::zero())?;
        if params.get(&Var::Alpha(i as u32 + 1)).is_some() {
            params.set(&Var::Alpha(i as u32 + 1), Polynomial::zero())?;
        }
    }
    let g = generate_general(&specialize_fag(&params, FagMode::Full))?;
    let vanishing = if g.bracket_basis(z1, n)?.is_zero() {
        Some(format!("[e_{z1}, e_{n}]"))
    } else if g.bracket_basis(z2, z2 + 1)?.is_zero() {
        Some(format!("[e_{z2}, e_{}]", z2 + 1))
    } else {
        None
    };
    Ok(TerminalRecord { verified: vanishing.is_some(), vanishing_bracket: vanishing })
}

/// Replays the emptiness argument at a triple of the empty region.
///
/// The closed-form coefficients are evaluated once: the sign pattern must
/// hold and `b0^2 a' = a0 (a0 c1 - b0 b')` must fail. The steps
/// `l = 1..=min(n - z2 - 1, z2 - z1)` are then replayed symbolically from
/// extracted Jacobi coordinates, and the law with every step's parameters
/// zeroed must have `[e_z1, e_n] = 0` or `[e_z2, e_(z2+1)] = 0`.
pub fn emptiness_certificate(t: Triple) -> Result<EmptinessCertificate> {
    if !t.is_valid() || !t.in_empty_region() {
        return Err(Error::NotInRegion(t));
    }
    let ctx = context(t)?;
    let pc = proof_coeffs(&ctx)?;
    let s = pc.sign_pattern();
    let signs = SignFlags {
        a0_negative: s[0],
        b0_negative: s[1],
        a_prime_nonnegative: s[2],
        b_prime_positive: s[3],
        c1_negative: s[4],
    };
    if !signs.all() {
        return Err(Error::SignPatternFailure {
            triple: t,
            detail: format!(
                "a0 = {}, b0 = {}, a' = {}, b' = {}, c1 = {}",
                pc.a0, pc.b0, pc.a_prime, pc.b_prime, pc.c1
            ),
        });
    }
    let (lhs, rhs) = (pc.lhs(), pc.rhs());
    let relation_violated = lhs != rhs;
    let step_count = (t.n - t.z2 - 1).min(t.z2 - t.z1);
    let steps = (1..=step_count)
        .map(|ell| {
            Ok(StepRecord {
                ell,
                contradiction: relation_violated,
                symbolic: symbolic_step(t, ctx.p, ell)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let symbolic_steps_confirmed = steps
        .iter()
        .all(|s| s.symbolic.as_ref().is_some_and(|x| x.forces_zero));
    let alpha1_coefficient = alpha1_extracted(t)?;
    let terminal = terminal_check(t, step_count)?;
    let conclusion = relation_violated && terminal.verified;
    Ok(EmptinessCertificate {
        triple: t,
        p: ctx.p,
        q: ctx.q,
        r: ctx.r,
        coefficients: CoefficientRecord::from(&pc),
        signs,
        relation_lhs: format_rational(&lhs),
        relation_rhs: format_rational(&rhs),
        relation_violated,
        step_count,
        steps,
        alpha1_coefficient,
        terminal,
        symbolic_steps_confirmed,
        conclusion,
    })
}

/// Which parameter family a search ranges over.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum SearchFamily {
    /// Every `a_i`, `g_j`, `b_k_l`.
    #[default]
    #[serde(rename = "F_abg")]
    Full,
    /// `b_k_l = g_(k+l-1)`, so only `a_i` and `g_j` vary.
    #[serde(rename = "F_ag")]
    AlphaGamma,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub grid: Vec<Rational>,
    pub budget: u64,
    pub seed: u64,
    pub family: SearchFamily,
    /// Instances beyond this many are counted but not listed.
    pub max_listed: usize,
}

impl SearchOptions {
    pub fn new(grid: Vec<Rational>, budget: u64, seed: u64) -> Self {
        SearchOptions { grid, budget, seed, family: SearchFamily::Full, max_listed: 1000 }
    }
}

/// A parameter assignment, serialized as an ordered map of texts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment(pub Vec<(Var, Rational)>);

impl Assignment {
    pub fn to_map(&self) -> BTreeMap<Var, Rational> {
        self.0.iter().cloned().collect()
    }
}

impl Serialize for Assignment {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(self.0.iter().map(|(v, c)| (v.to_string(), format_rational(c))))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub triple: Triple,
    pub family: SearchFamily,
    #[serde(serialize_with = "crate::format::ser_rational_list")]
    pub grid: Vec<Rational>,
    pub budget: u64,
    pub seed: u64,
    /// `exhaustive` or `sampled`.
    pub mode: String,
    #[serde(serialize_with = "crate::format::ser_display_list")]
    pub parameters: Vec<Var>,
    pub constraint_count: usize,
    pub candidates_tested: u64,
    pub instances_found: u64,
    pub instances: Vec<Assignment>,
    pub label: String,
}

impl SearchReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

const SEARCH_LABEL: &str =
    "heuristic evidence: a finite grid can miss solutions, so an empty result does not prove emptiness";

const CHUNK: u64 = 4096;

fn family_law(t: Triple, family: SearchFamily) -> Result<(LieAlgebra, Vec<Var>)> {
    let params = GeneralLawParams::symbolic(t)?;
    let params = match family {
        SearchFamily::Full => params,
        SearchFamily::AlphaGamma => specialize_fag(&params, FagMode::Full),
    };
    let g = generate_general(&params)?;
    let vars = g.parameters();
    Ok((g, vars))
}

/// Nonzero `[e_z1, e_n]` and `[e_z2, e_(z2+1)]`.
fn nondegenerate(g: &LieAlgebra, t: Triple) -> bool {
    let nz = |i, j| g.bracket_basis(i, j).map(|v| !v.is_zero()).unwrap_or(false);
    nz(t.z1, t.n) && nz(t.z2, t.z2 + 1)
}

/// Searches a finite grid of parameter values for Jacobi-consistent laws that
/// realize `t`.
///
/// All `|grid|^mu` assignments are tried when that is at most `budget`;
/// otherwise `budget` assignments are drawn from a ChaCha8 stream seeded with
/// `seed`. The result depends only on `(t, options)`.
pub fn grid_search(t: Triple, options: &SearchOptions) -> Result<SearchReport> {
    let (law, vars) = family_law(t, options.family)?;
    let cons = constraints(&law);
    let k = options.grid.len() as u128;
    let mu = vars.len() as u32;
    let total = k.checked_pow(mu);
    let exhaustive = matches!(total, Some(x) if x <= options.budget as u128);
    let count = if exhaustive { total.expect("checked") as u64 } else { options.budget };
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);

    let test = |idx: &[usize]| -> Option<Assignment> {
        let values: BTreeMap<Var, Rational> =
            vars.iter().cloned().zip(idx.iter().map(|&i| options.grid[i].clone())).collect();
        for c in &cons {
            if !c.eval(&values).map(|x| x == ratio(0, 1)).unwrap_or(false) {
                return None;
            }
        }
        let g = law.specialize(&values);
        if !nondegenerate(&g, t) || !g.jacobi_check().is_empty() {
            return None;
        }
        Some(Assignment(vars.iter().cloned().zip(idx.iter().map(|&i| options.grid[i].clone())).collect()))
    };

    let mut instances = Vec::new();
    let mut found = 0u64;
    let mut start = 0u64;
    while start < count && k > 0 {
        let end = (start + CHUNK).min(count);
        let batch: Vec<Vec<usize>> = (start..end)
            .map(|c| {
                if exhaustive {
                    // mixed radix, first parameter most significant
                    let mut rest = c as u128;
                    let mut idx = vec![0usize; vars.len()];
                    for slot in idx.iter_mut().rev() {
                        *slot = (rest % k) as usize;
                        rest /= k;
                    }
                    idx
                } else {
                    (0..vars.len()).map(|_| rng.gen_range(0..k as usize)).collect()
                }
            })
            .collect();
        let hits: Vec<Option<Assignment>> =
            crate::parallel::install(|| batch.par_iter().map(|idx| test(idx)).collect());
        for a in hits.into_iter().flatten() {
            found += 1;
            if instances.len() < options.max_listed {
                instances.push(a);
            }
        }
        start = end;
    }
    Ok(SearchReport {
        triple: t,
        family: options.family,
        grid: options.grid.clone(),
        budget: options.budget,
        seed: options.seed,
        mode: if exhaustive { "exhaustive" } else { "sampled" }.to_string(),
        parameters: vars,
        constraint_count: cons.len(),
        candidates_tested: if k == 0 { 0 } else { count },
        instances_found: found,
        instances,
        label: SEARCH_LABEL.to_string(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivedLengthVerdict {
    pub triple: Triple,
    pub derived_length: usize,
    /// `<= 3`, `= 2` or `= 3`.
    pub expected: String,
    pub holds: bool,
}

/// Derived length check for a numeric, Jacobi-consistent, non-model filiform
/// algebra: at most 3 in general, exactly 2 when `z2 = n - 1` and exactly 3
/// when `z2 = n - 2`.
pub fn derived_length_check(g: &LieAlgebra) -> Result<DerivedLengthVerdict> {
    if !g.is_numeric() {
        return Err(Error::PreconditionFailure("instance is not numeric".into()));
    }
    if !g.jacobi_check().is_empty() {
        return Err(Error::PreconditionFailure("instance violates the Jacobi identity".into()));
    }
    let report = classify(g)?;
    let (Some(z1), Some(z2)) = (report.z1, report.z2) else {
        return Err(Error::PreconditionFailure("instance is not a non-model filiform algebra".into()));
    };
    let n = g.dim();
    let dl = report.derived_length.expect("nilpotent algebras are solvable");
    let (expected, holds) = if z2 + 1 == n {
        ("= 2", dl == 2)
    } else if z2 + 2 == n {
        ("= 3", dl == 3)
    } else {
        ("<= 3", dl <= 3)
    };
    Ok(DerivedLengthVerdict { triple: Triple { z1, z2, n }, derived_length: dl, expected: expected.into(), holds })
}

/// Builds the `F_ag` instance for `params` and runs [`derived_length_check`];
/// the instance must realize `t`.
pub fn derived_length_theorem_check(t: Triple, params: &GeneralLawParams) -> Result<DerivedLengthVerdict> {
    if params.triple() != t {
        return Err(Error::PreconditionFailure(format!("parameters belong to {}", params.triple())));
    }
    let g = generate_general(&specialize_fag(params, FagMode::Full))?;
    if !nondegenerate(&g, t) {
        return Err(Error::PreconditionFailure(format!("instance does not realize {t}")));
    }
    let v = derived_length_check(&g)?;
    if v.triple != t {
        return Err(Error::PreconditionFailure(format!("instance realizes {} instead of {t}", v.triple)));
    }
    Ok(v)
}

fn paper15_params(b: &Polynomial) -> GeneralLawParams {
    let t = Triple { z1: 4, z2: 9, n: 15 };
    let mut p = GeneralLawParams::zero(t).expect("valid triple");
    let rel: [(Var, Rational); 6] = [
        (Var::Alpha(6), ratio(1, 14)),
        (Var::Gamma(5), ratio(363, 1)),
        (Var::Beta(1, 5), ratio(27, 1)),
        (Var::Beta(2, 4), ratio(21, 5)),
        (Var::Beta(3, 3), ratio(1, 1)),
        (Var::Beta(4, 2), ratio(3, 10)),
    ];
    for (v, c) in rel {
        p.set(&v, b.scale(&c)).expect("parameter of (4,9,15)");
    }
    p
}

/// The dimension-15 family at `(4, 9, 15)` with `a_6 = b/14`, `g_5 = 363 b`,
/// `b_1_5 = 27 b`, `b_2_4 = 21/5 b`, `b_3_3 = b`, `b_4_2 = 3/10 b`.
pub fn paper15(beta33: &Rational) -> LieAlgebra {
    generate_general(&paper15_params(&Polynomial::constant(beta33.clone()))).expect("valid triple")
}

/// [`paper15`] with `b_3_3` left symbolic.
pub fn paper15_symbolic() -> LieAlgebra {
    generate_general(&paper15_params(&Polynomial::var(Var::Beta(3, 3)))).expect("valid triple")
}

/// The fourteen parameters of the dimension-31 family.
pub fn paper31_parameters() -> Vec<Var> {
    let mut v = vec![Var::Alpha(14), Var::Gamma(13)];
    v.extend((1..=12).map(|k| Var::Beta(k, 14 - k)));
    v
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Paper31 {
    pub algebra: LieAlgebra,
    pub parameters: Vec<Var>,
    pub constraints: Vec<Polynomial>,
}

/// The law at `(4, 17, 31)` whose only nonzero parameters are `a_14`, `g_13`
/// and `b_k_(14-k)` for `k = 1..=12`, with its Jacobi constraints.
pub fn paper31_family() -> Paper31 {
    let t = Triple { z1: 4, z2: 17, n: 31 };
    let mut p = GeneralLawParams::zero(t).expect("valid triple");
    let parameters = paper31_parameters();
    for v in &parameters {
        p.set(v, Polynomial::var(v.clone())).expect("parameter of (4,17,31)");
    }
    let algebra = generate_general(&p).expect("valid triple");
    let constraints = constraints(&algebra);
    Paper31 { algebra, parameters, constraints }
}

/// Identity verdicts for every guarded `(m, k)` of a triple, plus the
/// closed-form check of the `a_1` coefficient when it applies.
pub fn lemma_report(t: Triple) -> Result<(Vec<lemmas::IdentityVerdict>, Option<(Polynomial, Polynomial)>)> {
    let verdicts = lemmas::identity_sweep(t)?;
    let alpha = match (lemmas::alpha1_coefficient(t), alpha1_extracted(t)) {
        (Ok(a), Ok(b)) => Some((a, b)),
        (Err(Error::IndexGuard(_)), _) => None,
        (Err(e), _) | (_, Err(e)) => return Err(e),
    };
    Ok((verdicts, alpha))
}
