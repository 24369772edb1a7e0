//! Lower central and derived series, classification predicates, centralizers,
//! the invariants `z1`, `z2`, and adapted bases.
//!
//! Everything here works on numeric algebras only. Subspaces are kept in
//! reduced row echelon form so that equality of subspaces is structural.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactmath::Rational;
use crate::liealg::{change_basis, BasisChange, LieAlgebra, Vector};
use crate::linalg::Matrix;

/// Invariant triple `(z1, z2, n)` of a non-model filiform algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Triple {
    pub z1: usize,
    pub z2: usize,
    pub n: usize,
}

impl Triple {
    /// Validated constructor.
    pub fn new(z1: usize, z2: usize, n: usize) -> Result<Triple> {
        let t = Triple { z1, z2, n };
        if t.is_valid() {
            Ok(t)
        } else {
            Err(Error::InvalidTriple(t))
        }
    }

    /// `4 <= z1 <= z2 < n <= 2*z2 - 2`
    pub fn is_valid(&self) -> bool {
        4 <= self.z1 && self.z1 <= self.z2 && self.z2 < self.n && self.n + 2 <= 2 * self.z2
    }

    /// Whether the triple lies in the region where the general family is
    /// empty: `4 <= z1 <= 2(n - z2) - 4` and `z1 <= z2 <= n - 3 <= 2*z2 - 5`.
    pub fn in_empty_region(&self) -> bool {
        let Triple { z1, z2, n } = *self;
        z1 >= 4 && z1 + 4 <= 2 * (n - z2.min(n)) && z1 <= z2 && z2 + 3 <= n && n + 2 <= 2 * z2
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.z1, self.z2, self.n)
    }
}

/// Subspace of `Q^n` in canonical reduced echelon form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span_of_basis(ambient, 1..=ambient)
    }

    /// `<e_h : h in indices>` (1-based).
    pub fn span_of_basis(ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let vectors = indices.into_iter().map(|h| {
            let mut v = vec![Rational::zero(); ambient];
            v[h - 1] = Rational::one();
            v
        });
        Self::span(ambient, vectors)
    }

    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = Vec<Rational>>) -> Self {
        let mut builder = SpanBuilder::new(ambient);
        for v in vectors {
            builder.push(v);
            if builder.dim() == ambient {
                break;
            }
        }
        builder.finish()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn contains_vector(&self, v: &[Rational]) -> bool {
        let mut b = SpanBuilder::from_subspace(self);
        !b.push(v.to_vec())
    }

    /// `other ⊆ self`
    pub fn contains(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|v| self.contains_vector(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut b = SpanBuilder::from_subspace(self);
        for v in &other.rows {
            b.push(v.clone());
        }
        b.finish()
    }
}

/// Incremental reduced echelon basis.
struct SpanBuilder {
    ambient: usize,
    // (pivot column, row), row normalized with 1 at the pivot
    rows: Vec<(usize, Vec<Rational>)>,
}

impl SpanBuilder {
    fn new(ambient: usize) -> Self {
        SpanBuilder {
            ambient,
            rows: Vec::new(),
        }
    }

    fn from_subspace(s: &Subspace) -> Self {
        let rows = s
            .rows
            .iter()
            .map(|r| (r.iter().position(|x| !x.is_zero()).expect("nonzero row"), r.clone()))
            .collect();
        SpanBuilder {
            ambient: s.ambient,
            rows,
        }
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v`; returns whether it enlarged the span.
    fn push(&mut self, mut v: Vec<Rational>) -> bool {
        debug_assert_eq!(v.len(), self.ambient);
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for (_, row) in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, r) in row.iter_mut().zip(&v) {
                if !r.is_zero() {
                    *x -= &f * r;
                }
            }
        }
        self.rows.push((p, v));
        true
    }

    fn finish(mut self) -> Subspace {
        self.rows.sort_by_key(|(p, _)| *p);
        Subspace {
            ambient: self.ambient,
            rows: self.rows.into_iter().map(|(_, r)| r).collect(),
        }
    }
}

/// Numeric structure constants in sparse row form.
pub(crate) struct Structure {
    n: usize,
    // brackets[i][j] = [e_i, e_j] (0-based), None when zero
    brackets: Vec<Vec<Option<Vec<Rational>>>>,
}

impl Structure {
    pub(crate) fn new(g: &LieAlgebra) -> Result<Self> {
        Ok(Structure {
            n: g.dim(),
            brackets: g.numeric_table()?,
        })
    }

    pub(crate) fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.n];
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            for (j, vj) in v.iter().enumerate() {
                if vj.is_zero() {
                    continue;
                }
                if let Some(c) = &self.brackets[i][j] {
                    let f = ui * vj;
                    for (o, ch) in out.iter_mut().zip(c) {
                        if !ch.is_zero() {
                            *o += &f * ch;
                        }
                    }
                }
            }
        }
        out
    }

    fn unit(&self, h: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.n];
        v[h] = Rational::one();
        v
    }

    /// `[A, B]`
    fn bracket_space(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let vectors = a
            .basis()
            .iter()
            .flat_map(|u| b.basis().iter().map(move |v| (u, v)))
            .map(|(u, v)| self.bracket(u, v));
        Subspace::span(self.n, vectors)
    }

    /// Matrix of `ad x` (column `j` is `[x, e_j]`).
    fn ad(&self, x: &[Rational]) -> Matrix {
        let cols: Vec<Vec<Rational>> = (0..self.n).map(|j| self.bracket(x, &self.unit(j))).collect();
        Matrix::from_columns(&cols)
    }
}

/// `[A, B]` for subspaces of a numeric algebra.
pub fn bracket_space(g: &LieAlgebra, a: &Subspace, b: &Subspace) -> Result<Subspace> {
    Ok(Structure::new(g)?.bracket_space(a, b))
}

/// Iterates `next` from `start` until the subspace repeats.
fn stabilize(start: Subspace, mut next: impl FnMut(&Subspace) -> Subspace) -> Vec<Subspace> {
    let mut out = vec![start];
    loop {
        let s = next(out.last().expect("nonempty"));
        if &s == out.last().expect("nonempty") {
            return out;
        }
        out.push(s);
    }
}

/// `C^1 = g, C^k = [C^{k-1}, g]`, up to the first repetition.
pub fn lower_central_series(g: &LieAlgebra) -> Result<Vec<Subspace>> {
    let st = Structure::new(g)?;
    let full = Subspace::full(g.dim());
    Ok(stabilize(full.clone(), |c| st.bracket_space(c, &full)))
}

/// `D^0 = g, D^k = [D^{k-1}, D^{k-1}]`, up to the first repetition.
pub fn derived_series(g: &LieAlgebra) -> Result<Vec<Subspace>> {
    let st = Structure::new(g)?;
    Ok(stabilize(Subspace::full(g.dim()), |d| st.bracket_space(d, d)))
}

/// `C^k` from a computed series (`k >= 1`), extending past its end.
pub fn lcs_term(lcs: &[Subspace], k: usize) -> &Subspace {
    assert!(k >= 1, "the lower central series starts at C^1");
    &lcs[(k - 1).min(lcs.len() - 1)]
}

/// `{x in g : [x, h] = 0}`
pub fn centralizer(g: &LieAlgebra, h: &Subspace) -> Result<Subspace> {
    let st = Structure::new(g)?;
    Ok(centralizer_in(&st, h))
}

fn centralizer_in(st: &Structure, h: &Subspace) -> Subspace {
    let n = st.n;
    if h.is_zero() {
        return Subspace::full(n);
    }
    // rows of the stacked map x -> ([x, h_1], ..., [x, h_m])
    let mut rows = Vec::new();
    for v in h.basis() {
        let images: Vec<Vec<Rational>> = (0..n).map(|j| st.bracket(&st.unit(j), v)).collect();
        for out in 0..n {
            rows.push(images.iter().map(|col| col[out].clone()).collect::<Vec<_>>());
        }
    }
    let kernel = Matrix::from_rows(rows).kernel();
    Subspace::span(n, kernel)
}

fn is_abelian(st: &Structure, s: &Subspace) -> bool {
    st.bracket_space(s, s).is_zero()
}

/// Classification summary of a numeric algebra.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesReport {
    pub dim: usize,
    pub lcs_dims: Vec<usize>,
    pub ds_dims: Vec<usize>,
    pub nilpotent: bool,
    pub nilindex: Option<usize>,
    pub solvable: bool,
    pub derived_length: Option<usize>,
    pub abelian: bool,
    pub filiform: bool,
    /// `None` when the algebra is not filiform.
    pub model: Option<bool>,
    pub z1: Option<usize>,
    pub z2: Option<usize>,
}

impl SeriesReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

fn is_filiform_dims(n: usize, lcs: &[Subspace]) -> bool {
    (2..=n).all(|k| lcs_term(lcs, k).dim() == n - k)
}

/// Fills every field of a [`SeriesReport`].
pub fn classify(g: &LieAlgebra) -> Result<SeriesReport> {
    let n = g.dim();
    let lcs = lower_central_series(g)?;
    let ds = derived_series(g)?;
    let nilpotent = lcs.last().expect("nonempty").is_zero();
    let solvable = ds.last().expect("nonempty").is_zero();
    let filiform = is_filiform_dims(n, &lcs);
    let (model, z1, z2) = if filiform {
        match invariants_z(g, false)? {
            ZInvariants::Model => (Some(true), None, None),
            ZInvariants::NonModel(z) => (Some(false), Some(z.z1), Some(z.z2)),
        }
    } else {
        (None, None, None)
    };
    Ok(SeriesReport {
        dim: n,
        lcs_dims: lcs.iter().map(Subspace::dim).collect(),
        ds_dims: ds.iter().map(Subspace::dim).collect(),
        nilpotent,
        nilindex: nilpotent.then(|| lcs.len()),
        solvable,
        // D^0 = g, so the index of the zero term is the number of nonzero terms
        derived_length: solvable.then(|| ds.len() - 1),
        abelian: lcs_term(&lcs, 2).is_zero(),
        filiform,
        model,
        z1,
        z2,
    })
}

/// Outcome of [`verify_adapted`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdaptedCheck {
    pub failures: Vec<String>,
}

impl AdaptedCheck {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `[e_1, e_h] = e_{h-1}` (3 <= h <= n), `[e_2, e_h] = 0` and
/// `[e_3, e_h] = 0` (2 <= h <= n) on the standard basis. Works on parametric
/// algebras too: entries must vanish identically.
pub fn verify_adapted(g: &LieAlgebra) -> AdaptedCheck {
    let n = g.dim();
    let mut failures = Vec::new();
    let get = |i, j| g.bracket_basis(i, j).expect("in range");
    for h in 3..=n {
        let got = get(1, h);
        if got != Vector::basis(n, h - 1) {
            failures.push(format!("[e_1, e_{h}] = {got}, expected e_{}", h - 1));
        }
    }
    if n >= 2 {
        for h in 1..=n {
            let got = get(2, h);
            if !got.is_zero() {
                failures.push(format!("[e_2, e_{h}] = {got}, expected 0"));
            }
        }
    }
    if n >= 3 {
        for h in 2..=n {
            let got = get(3, h);
            if !got.is_zero() {
                failures.push(format!("[e_3, e_{h}] = {got}, expected 0"));
            }
        }
    }
    AdaptedCheck { failures }
}

/// On an adapted basis: `C^k = <e_2, ..., e_{n-k+1}>` for `2 <= k <= n`.
pub fn check_lcs_shape(g: &LieAlgebra) -> Result<bool> {
    let n = g.dim();
    let lcs = lower_central_series(g)?;
    Ok((2..=n).all(|k| *lcs_term(&lcs, k) == Subspace::span_of_basis(n, 2..=n + 1 - k)))
}

/// Builds an adapted basis of a numeric filiform algebra.
///
/// `e_1` runs over `u + t v` and `v` (t = 0..=n), where `u`, `v` are standard
/// vectors completing `C^2 g`; some candidate must have `(ad e_1)^{n-2} != 0`
/// since the bad candidates are the projective zeros of a nonzero binary
/// form of degree `n - 2`. Then `e_n` completes `e_1` modulo `C^2 g`, the
/// chain `e_{h-1} = [e_1, e_h]` fills in the rest and `e_n` is corrected by a
/// multiple of `e_1` so that `[e_3, e_n] = 0`.
pub fn construct_adapted(g: &LieAlgebra) -> Result<BasisChange> {
    let n = g.dim();
    let st = Structure::new(g)?;
    let lcs = lower_central_series(g)?;
    if !is_filiform_dims(n, &lcs) {
        return Err(Error::NotFiliform);
    }
    if n <= 2 {
        return Ok(BasisChange::identity(n));
    }
    let c2 = lcs_term(&lcs, 2);
    let complement: Vec<usize> = (0..n)
        .filter(|&c| !c2.basis().iter().any(|r| r.iter().position(|x| !x.is_zero()) == Some(c)))
        .collect();
    let (u, v) = (st.unit(complement[0]), st.unit(complement[1]));

    let mut candidates = vec![v.clone()];
    for t in 0..=n as i64 {
        let t = Rational::from_integer(t.into());
        candidates.push(u.iter().zip(&v).map(|(a, b)| a + &t * b).collect());
    }

    for e1 in candidates {
        let ad = st.ad(&e1);
        let mut power = Matrix::identity(n);
        for _ in 0..n - 2 {
            power = ad.mul(&power);
        }
        let Some(top) = [&v, &u]
            .into_iter()
            .find(|y| power.mul_vec(y).iter().any(|x| !x.is_zero()))
        else {
            continue;
        };
        // chain[h] = e_h for h = 2..=n (index 0 and 1 unused until filled)
        let mut chain = vec![Vec::new(); n + 1];
        chain[n] = top.clone();
        for h in (3..=n).rev() {
            chain[h - 1] = st.bracket(&e1, &chain[h]);
        }
        chain[1] = e1.clone();
        let m = Matrix::from_columns(&chain[1..]);
        let Some(inv) = m.inverse() else { continue };
        // [e_3, e_n] = c e_2, fixed by e_n += c e_1
        if n >= 4 {
            let w = inv.mul_vec(&st.bracket(&chain[3], &chain[n]));
            let c = w[1].clone();
            if !c.is_zero() {
                chain[n] = chain[n].iter().zip(&e1).map(|(a, b)| a + &c * b).collect();
            }
        }
        let change = BasisChange::new(Matrix::from_columns(&chain[1..]))?;
        let h = change_basis(g, &change)?;
        if verify_adapted(&h).ok() && check_lcs_shape(&h)? {
            return Ok(change);
        }
    }
    Err(Error::SearchFailed)
}

/// Values of `z1` and `z2` from both routes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZValues {
    pub z1: usize,
    pub z2: usize,
    /// From the centralizer and abelian-ideal characterisations.
    pub definitional: (usize, usize),
    /// `min{k >= 4 : [e_k, e_n] != 0}` and `min{k >= 4 : [e_k, e_{k+1}] != 0}`
    /// on an adapted basis.
    pub practical: (usize, usize),
}

impl ZValues {
    pub fn agree(&self) -> bool {
        self.definitional == self.practical
    }

    pub fn triple(&self, n: usize) -> Triple {
        Triple {
            z1: self.z1,
            z2: self.z2,
            n,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZInvariants {
    Model,
    NonModel(ZValues),
}

/// Computes `z1`, `z2` of a numeric filiform algebra.
///
/// With `assume_adapted` the standard basis must already be adapted;
/// otherwise an adapted basis is constructed when needed. The practical
/// values are returned as `z1`, `z2`; the definitional values are computed
/// from the series directly. With `assume_adapted`, disagreement between the
/// two is an error.
pub fn invariants_z(g: &LieAlgebra, assume_adapted: bool) -> Result<ZInvariants> {
    let n = g.dim();
    let st = Structure::new(g)?;
    let lcs = lower_central_series(g)?;
    if !is_filiform_dims(n, &lcs) {
        return Err(Error::NotFiliform);
    }
    let check = verify_adapted(g);
    let adapted = if check.ok() {
        g.clone()
    } else if assume_adapted {
        return Err(Error::NotAdapted(check.failures));
    } else {
        change_basis(g, &construct_adapted(g)?)?
    };

    let nonzero = |i: usize, j: usize| !adapted.bracket_basis(i, j).expect("in range").is_zero();
    let model = (2..=n).all(|i| (i + 1..=n).all(|j| !nonzero(i, j)));
    if model {
        return Ok(ZInvariants::Model);
    }
    let practical_z1 = (4..=n).find(|&k| nonzero(k, n));
    let practical_z2 = (4..n).find(|&k| nonzero(k, k + 1));
    let (Some(p1), Some(p2)) = (practical_z1, practical_z2) else {
        return Err(Error::PreconditionFailure(
            "non-model adapted law without [e_k, e_n] or [e_k, e_k+1] for k >= 4".into(),
        ));
    };

    // z1 = max{k : C_g(C^{n-k+2} g) contains the centralizer of C^{n-2} g}
    let ideal = centralizer_in(&st, lcs_term(&lcs, n.saturating_sub(2).max(1)));
    let def_z1 = (1..=n + 1)
        .rev()
        .find(|&k| centralizer_in(&st, lcs_term(&lcs, n + 2 - k)).contains(&ideal))
        .expect("k = 1 always qualifies");
    // z2 = max{k : C^{n-k+1} g abelian}
    let def_z2 = (1..=n)
        .rev()
        .find(|&k| is_abelian(&st, lcs_term(&lcs, n + 1 - k)))
        .expect("k = 1 always qualifies");

    let z = ZValues {
        z1: p1,
        z2: p2,
        definitional: (def_z1, def_z2),
        practical: (p1, p2),
    };
    if assume_adapted && !z.agree() {
        return Err(Error::IdentityMismatch(format!(
            "definitional z = {:?}, practical z = {:?}",
            z.definitional, z.practical
        )));
    }
    Ok(ZInvariants::NonModel(z))
}
