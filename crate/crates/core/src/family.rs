//! Generators for the parametric filiform laws.
//!
//! For a triple `(z1, z2, n)` the general law on an adapted basis has
//! parameters `alpha_i` (1 <= i <= z2-z1+1), `gamma_j` (1 <= j <= 2n-z1-z2-2)
//! and `beta_{k,l}` (2 <= l <= n-z2, 1 <= k < z2-z1+l). Its nonzero brackets
//! are
//!
//! ```text
//! [e_1, e_h]             = e_{h-1}                                    3 <= h <= n
//! [e_{z1+i}, e_{z2+1}]   = a_1 e_{i+2} + a_2 e_{i+1} + ... + a_{i+1} e_2    0 <= i <= z2-z1
//! [e_{z1}, e_{z2+j}]     = a_1 e_{j+1} + g_1 e_j + ... + g_{j-1} e_2        2 <= j <= n-z2
//! [e_{z1+k}, e_{z2+l}]   = sum_{h=2}^{k+l} P_h([e_{z1+k-1}, e_{z2+l}] + [e_{z1+k}, e_{z2+l-1}]) e_{h+1}
//!                          + b_{k,l} e_2
//! ```
//!
//! The last group is filled in order of increasing `k + l`, since each entry
//! only refers to entries with `k + l` one smaller.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactmath::{Polynomial, Rational, Var};
use crate::liealg::{BasisChange, LieAlgebra, Vector};
use crate::series::Triple;

/// Parameter values of the general law; each entry is a polynomial so that
/// parameters can be symbolic, numeric, or tied to each other.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralLawParams {
    triple: Triple,
    alpha: Vec<Polynomial>,
    gamma: Vec<Polynomial>,
    beta: BTreeMap<(usize, usize), Polynomial>,
}

impl GeneralLawParams {
    /// All parameters zero.
    pub fn zero(triple: Triple) -> Result<Self> {
        if !triple.is_valid() {
            return Err(Error::InvalidTriple(triple));
        }
        let Triple { z1, z2, n } = triple;
        Ok(GeneralLawParams {
            triple,
            alpha: vec![Polynomial::zero(); z2 - z1 + 1],
            gamma: vec![Polynomial::zero(); 2 * n - z1 - z2 - 2],
            beta: beta_indices(triple).map(|kl| (kl, Polynomial::zero())).collect(),
        })
    }

    /// Every parameter its own indeterminate (`a_i`, `g_j`, `b_k_l`).
    pub fn symbolic(triple: Triple) -> Result<Self> {
        let mut p = Self::zero(triple)?;
        for v in p.variables() {
            p.set(&v, Polynomial::var(v.clone()))?;
        }
        Ok(p)
    }

    /// Builds parameters from explicit values: `Some(c)` fixes a value, `None`
    /// keeps the parameter symbolic, and unlisted parameters are zero.
    pub fn from_values(triple: Triple, values: &BTreeMap<Var, Option<Rational>>) -> Result<Self> {
        let mut p = Self::zero(triple)?;
        for (v, value) in values {
            let poly = match value {
                Some(c) => Polynomial::constant(c.clone()),
                None => Polynomial::var(v.clone()),
            };
            p.set(v, poly)?;
        }
        Ok(p)
    }

    pub fn triple(&self) -> Triple {
        self.triple
    }

    /// Every parameter name of the triple, in variable order.
    pub fn variables(&self) -> Vec<Var> {
        let mut out: Vec<Var> = (1..=self.alpha.len()).map(|i| Var::Alpha(i as u32)).collect();
        out.extend((1..=self.gamma.len()).map(|j| Var::Gamma(j as u32)));
        out.extend(self.beta.keys().map(|&(k, l)| Var::Beta(k as u32, l as u32)));
        out
    }

    fn slot(&mut self, v: &Var) -> Result<&mut Polynomial> {
        let unknown = || Error::Format(format!("parameter {v} does not exist for triple {}", self.triple));
        match *v {
            Var::Alpha(i) if i >= 1 && (i as usize) <= self.alpha.len() => {
                Ok(&mut self.alpha[i as usize - 1])
            }
            Var::Gamma(j) if j >= 1 && (j as usize) <= self.gamma.len() => {
                Ok(&mut self.gamma[j as usize - 1])
            }
            Var::Beta(k, l) => {
                let e = unknown();
                self.beta.get_mut(&(k as usize, l as usize)).ok_or(e)
            }
            _ => Err(unknown()),
        }
    }

    pub fn set(&mut self, v: &Var, value: Polynomial) -> Result<()> {
        *self.slot(v)? = value;
        Ok(())
    }

    pub fn get(&self, v: &Var) -> Option<&Polynomial> {
        match *v {
            Var::Alpha(i) if i >= 1 => self.alpha.get(i as usize - 1),
            Var::Gamma(j) if j >= 1 => self.gamma.get(j as usize - 1),
            Var::Beta(k, l) => self.beta.get(&(k as usize, l as usize)),
            _ => None,
        }
    }

    /// `alpha_i` (1-based); zero outside the declared range.
    pub fn alpha(&self, i: usize) -> Polynomial {
        i.checked_sub(1)
            .and_then(|i| self.alpha.get(i))
            .cloned()
            .unwrap_or_default()
    }

    pub fn gamma(&self, j: usize) -> Polynomial {
        j.checked_sub(1)
            .and_then(|j| self.gamma.get(j))
            .cloned()
            .unwrap_or_default()
    }

    pub fn beta(&self, k: usize, l: usize) -> Polynomial {
        self.beta.get(&(k, l)).cloned().unwrap_or_default()
    }
}

/// `(k, l)` with `2 <= l <= n - z2` and `1 <= k < z2 - z1 + l`, ordered by
/// `k + l`, then `l`.
pub fn beta_indices(t: Triple) -> impl Iterator<Item = (usize, usize)> {
    let Triple { z1, z2, n } = t;
    let mut v: Vec<(usize, usize)> = (2..=n - z2)
        .flat_map(|l| (1..z2 - z1 + l).map(move |k| (k, l)))
        .collect();
    v.sort_by_key(|&(k, l)| (k + l, l));
    v.into_iter()
}

/// Number of free parameters, `(n - z2)(n + z2 - 2 z1 + 1) / 2`.
pub fn mu_count(t: Triple) -> Result<usize> {
    if !t.is_valid() {
        return Err(Error::InvalidTriple(t));
    }
    let Triple { z1, z2, n } = t;
    Ok((n - z2) * (n + z2 + 1 - 2 * z1) / 2)
}

fn unit_scaled(n: usize, h: usize, c: &Polynomial) -> Vector {
    Vector::basis(n, h).scale(c)
}

/// Emits the general law for the given parameters. The output is on an
/// adapted basis; the Jacobi identity is not checked.
pub fn generate_general(params: &GeneralLawParams) -> Result<LieAlgebra> {
    let t = params.triple;
    if !t.is_valid() {
        return Err(Error::InvalidTriple(t));
    }
    let Triple { z1, z2, n } = t;
    let mut table: BTreeMap<(usize, usize), Vector> = BTreeMap::new();
    let lookup = |table: &BTreeMap<(usize, usize), Vector>, i: usize, j: usize| -> Vector {
        match i.cmp(&j) {
            std::cmp::Ordering::Less => table.get(&(i, j)).cloned(),
            std::cmp::Ordering::Greater => table.get(&(j, i)).map(Vector::neg),
            std::cmp::Ordering::Equal => None,
        }
        .unwrap_or_else(|| Vector::zero(n))
    };

    // [e_{z1+i}, e_{z2+1}] = sum_{s=0}^{i} alpha_{s+1} e_{i+2-s}
    for i in 0..=z2 - z1 {
        let mut v = Vector::zero(n);
        for s in 0..=i {
            let h = i + 2 - s;
            if h <= n {
                v = &v + &unit_scaled(n, h, &params.alpha(s + 1));
            }
        }
        table.insert((z1 + i, z2 + 1), v);
    }
    // [e_{z1}, e_{z2+j}] = alpha_1 e_{j+1} + sum_{s=1}^{j-1} gamma_s e_{j+1-s}
    for j in 2..=n - z2 {
        let mut v = unit_scaled(n, j + 1, &params.alpha(1));
        for s in 1..j {
            v = &v + &unit_scaled(n, j + 1 - s, &params.gamma(s));
        }
        table.insert((z1, z2 + j), v);
    }
    for (k, l) in beta_indices(t) {
        let (i, j) = (z1 + k, z2 + l);
        let s = &lookup(&table, i - 1, j) + &lookup(&table, i, j - 1);
        let mut v = unit_scaled(n, 2, &params.beta(k, l));
        for h in 2..=(k + l).min(n - 1) {
            let c = s.coord(h).expect("in range");
            if !c.is_zero() {
                v = &v + &unit_scaled(n, h + 1, c);
            }
        }
        table.insert((i, j), v);
    }

    let mut g = LieAlgebra::model(n);
    for ((i, j), v) in table {
        g.set_bracket(i, j, v)?;
    }
    Ok(g)
}

/// Which `beta_{k,l}` get identified with `gamma_{k+l-1}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FagMode {
    /// Every `(k, l)`.
    #[default]
    Full,
    /// Only `k + l <= n - z2`.
    Narrow,
}

/// Restricts to the subfamily with `beta_{k,l} = gamma_{k+l-1}`.
pub fn specialize_fag(params: &GeneralLawParams, mode: FagMode) -> GeneralLawParams {
    let mut out = params.clone();
    let Triple { z2, n, .. } = params.triple;
    for (&(k, l), b) in out.beta.iter_mut() {
        if mode == FagMode::Full || k + l <= n - z2 {
            *b = params.gamma(k + l - 1);
        }
    }
    out
}

/// All triples with `4 <= z1 <= z2 < n <= 2 z2 - 2` for this `n`, ordered by
/// `z2`, then `z1`.
pub fn enumerate_triples(n: usize) -> Vec<Triple> {
    let mut out = Vec::new();
    for z2 in 4..n {
        for z1 in 4..=z2 {
            let t = Triple { z1, z2, n };
            if t.is_valid() {
                out.push(t);
            }
        }
    }
    out
}

/// Triples of [`enumerate_triples`] lying in the empty region
/// `4 <= z1 <= 2(n - z2) - 4`, `z1 <= z2 <= n - 3 <= 2 z2 - 5`.
pub fn enumerate_empty_region(n: usize) -> Vec<Triple> {
    enumerate_triples(n)
        .into_iter()
        .filter(Triple::in_empty_region)
        .collect()
}

/// Parameters of the metabelian law: `lambda_0, ..., lambda_{n-5}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BratzlavskyParams {
    pub n: usize,
    pub lambda: Vec<Polynomial>,
}

impl BratzlavskyParams {
    pub fn new(n: usize, lambda: Vec<Polynomial>) -> Result<Self> {
        if n < 5 {
            return Err(Error::InvalidDimension(n));
        }
        if lambda.len() != n - 4 {
            return Err(Error::Format(format!(
                "dimension {n} needs {} lambda values, got {}",
                n - 4,
                lambda.len()
            )));
        }
        Ok(BratzlavskyParams { n, lambda })
    }

    pub fn numeric(n: usize, lambda: &[Rational]) -> Result<Self> {
        Self::new(n, lambda.iter().cloned().map(Polynomial::constant).collect())
    }

    /// `lambda_r = l_r` for every `r`.
    pub fn symbolic(n: usize) -> Result<Self> {
        if n < 5 {
            return Err(Error::InvalidDimension(n));
        }
        Self::new(n, (0..n - 4).map(|r| Polynomial::var(Var::Lambda(r as u32))).collect())
    }
}

/// The metabelian law in its original basis `x_1, ..., x_n`:
/// `[x_1, x_i] = x_{i+1}` and `[x_2, x_i] = sum_r lambda_r x_{i+2+r}`.
pub fn generate_bratzlavsky(params: &BratzlavskyParams) -> Result<LieAlgebra> {
    let n = params.n;
    if n < 5 {
        return Err(Error::InvalidDimension(n));
    }
    let mut g = LieAlgebra::abelian(n);
    for i in 2..n {
        g.set_bracket(1, i, Vector::basis(n, i + 1))?;
    }
    for i in 3..=n - 2 {
        let mut v = Vector::zero(n);
        for r in 0..=n - i - 2 {
            v = &v + &unit_scaled(n, i + 2 + r, &params.lambda[r]);
        }
        g.set_bracket(2, i, v)?;
    }
    Ok(g)
}

/// The relabeling `e_1 = x_1`, `e_2 = x_n`, `e_3 = x_{n-1}`, ..., `e_n = x_2`.
pub fn bratzlavsky_relabeling(n: usize) -> BasisChange {
    let mut perm = vec![1];
    perm.extend((2..=n).rev());
    BasisChange::permutation(&perm).expect("valid permutation")
}

/// The same relabeling applied structurally, so it also works for symbolic
/// `lambda`.
pub fn relabel_bratzlavsky(g: &LieAlgebra) -> Result<LieAlgebra> {
    let n = g.dim();
    let new_index = |x: usize| if x == 1 { 1 } else { n + 2 - x };
    let mut out = LieAlgebra::abelian(n);
    for (&(i, j), v) in g.brackets() {
        let mut w = Vector::zero(n);
        for (h, c) in v.support() {
            w = &w + &unit_scaled(n, new_index(h), c);
        }
        out.set_bracket(new_index(i), new_index(j), w)?;
    }
    Ok(out)
}
