//! Lie algebras given by structure constants.
//!
//! Basis indices are 1-based throughout the public API, matching the usual
//! `e_1, ..., e_n` notation. Only brackets `[e_i, e_j]` with `i < j` are
//! stored; the rest follow from antisymmetry and absent pairs are zero.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactmath::{Polynomial, Rational, Var};
use crate::linalg::Matrix;

/// Coordinates of an element relative to the basis of an algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector(Vec<Polynomial>);

impl Vector {
    pub fn zero(n: usize) -> Self {
        Vector(vec![Polynomial::zero(); n])
    }

    /// The basis vector `e_h` (1-based).
    pub fn basis(n: usize, h: usize) -> Self {
        let mut v = Self::zero(n);
        v.0[h - 1] = Polynomial::one();
        v
    }

    pub fn from_coords(coords: Vec<Polynomial>) -> Self {
        Vector(coords)
    }

    pub fn from_rationals(coords: &[Rational]) -> Self {
        Vector(coords.iter().cloned().map(Polynomial::constant).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Polynomial] {
        &self.0
    }

    /// `P_h(self)`, the coordinate on `e_h`.
    pub fn coord(&self, h: usize) -> Result<&Polynomial> {
        if h == 0 || h > self.0.len() {
            return Err(Error::IndexOutOfRange {
                index: h,
                dim: self.0.len(),
            });
        }
        Ok(&self.0[h - 1])
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Polynomial::is_zero)
    }

    /// Nonzero coordinates as `(h, P_h)`.
    pub fn support(&self) -> impl Iterator<Item = (usize, &Polynomial)> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.is_zero())
            .map(|(i, p)| (i + 1, p))
    }

    /// Constant coordinates, when every coordinate is constant.
    pub fn as_rationals(&self) -> Option<Vec<Rational>> {
        self.0.iter().map(Polynomial::as_constant).collect()
    }

    pub fn scale(&self, c: &Polynomial) -> Vector {
        Vector(self.0.iter().map(|p| p * c).collect())
    }

    pub fn add_scaled(&mut self, other: &Vector, c: &Polynomial) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            a.add_product(b, c);
        }
    }

    pub fn neg(&self) -> Vector {
        Vector(self.0.iter().map(|p| -p).collect())
    }
}

impl std::ops::Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (h, p) in self.support() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if p.num_terms() > 1 {
                write!(f, "({p})*e_{h}")?;
            } else {
                write!(f, "{p}*e_{h}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Invertible change of basis; column `j` holds the new basis vector `f_j`
/// in old coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChange {
    matrix: Matrix,
    inverse: Matrix,
}

impl BasisChange {
    pub fn new(matrix: Matrix) -> Result<Self> {
        if matrix.rows() != matrix.cols() {
            return Err(Error::DimensionMismatch {
                expected: matrix.rows(),
                found: matrix.cols(),
            });
        }
        let inverse = matrix.inverse().ok_or(Error::SingularMatrix)?;
        Ok(BasisChange { matrix, inverse })
    }

    pub fn identity(n: usize) -> Self {
        BasisChange {
            matrix: Matrix::identity(n),
            inverse: Matrix::identity(n),
        }
    }

    /// `f_j = e_{perm[j-1]}`; `perm` is 1-based.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let mut m = Matrix::zeros(n, n);
        for (j, &i) in perm.iter().enumerate() {
            if i == 0 || i > n {
                return Err(Error::IndexOutOfRange { index: i, dim: n });
            }
            m[(i - 1, j)] = Rational::from_integer(1.into());
        }
        BasisChange::new(m)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn inverse(&self) -> BasisChange {
        BasisChange {
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
        }
    }

    /// Applying `self` then `next` equals applying `self.then(next)`.
    pub fn then(&self, next: &BasisChange) -> BasisChange {
        BasisChange {
            matrix: self.matrix.mul(&next.matrix),
            inverse: next.inverse.mul(&self.inverse),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }
}

/// A Jacobi identity failure on the basis triple `(i, j, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    /// Nonzero coordinates `(h, P_h(J))` of the Jacobiator.
    pub coords: Vec<(usize, Polynomial)>,
}

/// Finite dimensional Lie algebra with polynomial structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    dim: usize,
    table: BTreeMap<(usize, usize), Vector>,
    parameters: BTreeSet<Var>,
}

impl LieAlgebra {
    /// The abelian algebra of dimension `dim`.
    pub fn abelian(dim: usize) -> Self {
        LieAlgebra {
            dim,
            table: BTreeMap::new(),
            parameters: BTreeSet::new(),
        }
    }

    /// The model filiform algebra: `[e_1, e_h] = e_{h-1}` for `3 <= h <= n`.
    pub fn model(n: usize) -> Self {
        let mut g = Self::abelian(n);
        for h in 3..=n {
            g.table.insert((1, h), Vector::basis(n, h - 1));
        }
        g
    }

    /// Sets `[e_i, e_j] = v`, storing `-v` under `(j, i)` when `i > j`.
    /// A zero `v` removes the entry.
    pub fn set_bracket(&mut self, i: usize, j: usize, v: Vector) -> Result<()> {
        self.check_index(i)?;
        self.check_index(j)?;
        if v.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.dim(),
            });
        }
        if i == j {
            if v.is_zero() {
                return Ok(());
            }
            return Err(Error::Format(format!("[e_{i}, e_{i}] must be zero")));
        }
        let (key, v) = if i < j { ((i, j), v) } else { ((j, i), v.neg()) };
        if v.is_zero() {
            self.table.remove(&key);
        } else {
            for p in v.coords() {
                self.parameters.extend(p.variables());
            }
            self.table.insert(key, v);
        }
        Ok(())
    }

    /// Declares a free parameter even if it does not occur in the table.
    pub fn declare_parameter(&mut self, v: Var) {
        self.parameters.insert(v);
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn parameters(&self) -> Vec<Var> {
        self.parameters.iter().cloned().collect()
    }

    /// Variables that actually occur in the structure constants.
    pub fn occurring_parameters(&self) -> BTreeSet<Var> {
        self.table
            .values()
            .flat_map(|v| v.coords().iter().flat_map(|p| p.variables()))
            .collect()
    }

    /// All structure constants are rational.
    pub fn is_numeric(&self) -> bool {
        self.table
            .values()
            .all(|v| v.coords().iter().all(Polynomial::is_constant))
    }

    pub fn require_numeric(&self) -> Result<()> {
        if self.is_numeric() {
            Ok(())
        } else {
            Err(Error::ParametricInput(
                self.occurring_parameters().iter().map(|v| v.to_string()).collect(),
            ))
        }
    }

    /// Stored brackets `((i, j), [e_i, e_j])` with `i < j`, in order.
    pub fn brackets(&self) -> impl Iterator<Item = (&(usize, usize), &Vector)> {
        self.table.iter()
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.dim {
            Err(Error::IndexOutOfRange {
                index: i,
                dim: self.dim,
            })
        } else {
            Ok(())
        }
    }

    fn check_vector(&self, u: &Vector) -> Result<()> {
        if u.dim() != self.dim {
            Err(Error::DimensionMismatch {
                expected: self.dim,
                found: u.dim(),
            })
        } else {
            Ok(())
        }
    }

    /// `[e_i, e_j]`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Result<Vector> {
        self.check_index(i)?;
        self.check_index(j)?;
        Ok(match i.cmp(&j) {
            std::cmp::Ordering::Less => self.table.get(&(i, j)).cloned(),
            std::cmp::Ordering::Greater => self.table.get(&(j, i)).map(Vector::neg),
            std::cmp::Ordering::Equal => None,
        }
        .unwrap_or_else(|| Vector::zero(self.dim)))
    }

    /// Adds `sign * c * [e_a, e_k]` into `acc`.
    fn accumulate(&self, acc: &mut Vector, a: usize, k: usize, c: &Polynomial) {
        if a == k {
            return;
        }
        let (key, flip) = if a < k { ((a, k), false) } else { ((k, a), true) };
        if let Some(v) = self.table.get(&key) {
            if flip {
                acc.add_scaled(v, &-c);
            } else {
                acc.add_scaled(v, c);
            }
        }
    }

    /// `[u, e_k]`.
    fn bracket_with_basis(&self, u: &Vector, k: usize) -> Vector {
        let mut acc = Vector::zero(self.dim);
        for (a, c) in u.support() {
            self.accumulate(&mut acc, a, k, c);
        }
        acc
    }

    /// Bilinear extension of the table.
    pub fn bracket(&self, u: &Vector, v: &Vector) -> Result<Vector> {
        self.check_vector(u)?;
        self.check_vector(v)?;
        let mut acc = Vector::zero(self.dim);
        for ((i, j), c) in &self.table {
            let (ui, uj) = (&u.0[i - 1], &u.0[j - 1]);
            let (vi, vj) = (&v.0[i - 1], &v.0[j - 1]);
            let mut w = ui * vj;
            w -= &(uj * vi);
            if !w.is_zero() {
                acc.add_scaled(c, &w);
            }
        }
        Ok(acc)
    }

    /// `[[e_i, e_j], e_k] + [[e_j, e_k], e_i] + [[e_k, e_i], e_j]`.
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> Result<Vector> {
        for x in [i, j, k] {
            self.check_index(x)?;
        }
        Ok(self.jacobiator_unchecked(i, j, k))
    }

    fn jacobiator_unchecked(&self, i: usize, j: usize, k: usize) -> Vector {
        let mut acc = self.bracket_with_basis(&self.bracket_basis_ref(i, j), k);
        let t2 = self.bracket_with_basis(&self.bracket_basis_ref(j, k), i);
        let t3 = self.bracket_with_basis(&self.bracket_basis_ref(k, i), j);
        for (a, (b, c)) in acc.0.iter_mut().zip(t2.0.iter().zip(&t3.0)) {
            *a += b;
            *a += c;
        }
        acc
    }

    fn bracket_basis_ref(&self, i: usize, j: usize) -> Vector {
        self.bracket_basis(i, j).expect("indices checked")
    }

    /// All Jacobi failures over `i < j < k`, in lexicographic order. Empty
    /// iff the Jacobi identity holds identically in the parameters.
    pub fn jacobi_check(&self) -> Vec<Violation> {
        let n = self.dim;
        let triples: Vec<(usize, usize, usize)> = (1..=n)
            .flat_map(|i| (i + 1..=n).flat_map(move |j| (j + 1..=n).map(move |k| (i, j, k))))
            .collect();
        crate::parallel::install(|| {
            triples
                .par_iter()
                .filter_map(|&(i, j, k)| {
                    let jac = self.jacobiator_unchecked(i, j, k);
                    if jac.is_zero() {
                        None
                    } else {
                        Some(Violation {
                            i,
                            j,
                            k,
                            coords: jac.support().map(|(h, p)| (h, p.clone())).collect(),
                        })
                    }
                })
                .collect()
        })
    }

    /// Substitutes rational values for some or all parameters.
    pub fn specialize(&self, values: &BTreeMap<Var, Rational>) -> LieAlgebra {
        let mut g = LieAlgebra::abelian(self.dim);
        for v in &self.parameters {
            if !values.contains_key(v) {
                g.parameters.insert(v.clone());
            }
        }
        for ((i, j), vec) in &self.table {
            let sv = Vector(vec.0.iter().map(|p| p.specialize(values)).collect());
            g.set_bracket(*i, *j, sv).expect("same shape");
        }
        g
    }

    /// Substitutes polynomials for parameters.
    pub fn substitute(&self, map: &BTreeMap<Var, Polynomial>) -> LieAlgebra {
        let mut g = LieAlgebra::abelian(self.dim);
        for v in &self.parameters {
            if !map.contains_key(v) {
                g.parameters.insert(v.clone());
            }
        }
        for ((i, j), vec) in &self.table {
            let sv = Vector(vec.0.iter().map(|p| p.substitute(map)).collect());
            g.set_bracket(*i, *j, sv).expect("same shape");
        }
        g
    }

    /// Rational structure constants as a dense `n x n` grid of coordinate
    /// vectors (0-based), or an error for parametric input.
    pub fn numeric_table(&self) -> Result<Vec<Vec<Option<Vec<Rational>>>>> {
        self.require_numeric()?;
        let n = self.dim;
        let mut out = vec![vec![None; n]; n];
        for ((i, j), v) in &self.table {
            let c = v.as_rationals().expect("numeric");
            let neg: Vec<Rational> = c.iter().map(|x| -x).collect();
            out[i - 1][j - 1] = Some(c);
            out[j - 1][i - 1] = Some(neg);
        }
        Ok(out)
    }
}

/// `P_h(u)`.
pub fn coord(u: &Vector, h: usize) -> Result<Polynomial> {
    u.coord(h).cloned()
}

/// Expresses a numeric algebra in the basis given by the columns of `m`.
pub fn change_basis(g: &LieAlgebra, m: &BasisChange) -> Result<LieAlgebra> {
    g.require_numeric()?;
    let n = g.dim();
    if m.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: m.dim(),
        });
    }
    let table = g.numeric_table()?;
    let cols: Vec<Vec<Rational>> = (0..n).map(|j| m.matrix().column(j)).collect();
    let mut out = LieAlgebra::abelian(n);
    for a in 0..n {
        for b in a + 1..n {
            let mut w = vec![Rational::zero(); n];
            for (p, x) in cols[a].iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                for (q, y) in cols[b].iter().enumerate() {
                    if y.is_zero() {
                        continue;
                    }
                    if let Some(c) = &table[p][q] {
                        let xy = x * y;
                        for (wh, ch) in w.iter_mut().zip(c) {
                            if !ch.is_zero() {
                                *wh += &xy * ch;
                            }
                        }
                    }
                }
            }
            if w.iter().all(Zero::is_zero) {
                continue;
            }
            let new = m.inverse.mul_vec(&w);
            out.set_bracket(a + 1, b + 1, Vector::from_rationals(&new))?;
        }
    }
    Ok(out)
}
