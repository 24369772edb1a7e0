use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

/// A polynomial indeterminate.
///
/// The family parameters get dedicated variants so that the variable order is
/// the natural one: all `a_i`, then `g_j`, then `b_k_l`, then `l_r`, then any
/// other name alphabetically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Alpha(u32),
    Gamma(u32),
    Beta(u32, u32),
    Lambda(u32),
    Named(Arc<str>),
}

impl Var {
    /// Parses a name, mapping `a_i`, `g_j`, `b_k_l`, `l_r` onto the dedicated
    /// variants.
    pub fn named(name: &str) -> Result<Var> {
        name.parse()
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Alpha(i) => write!(f, "a_{i}"),
            Var::Gamma(j) => write!(f, "g_{j}"),
            Var::Beta(k, l) => write!(f, "b_{k}_{l}"),
            Var::Lambda(r) => write!(f, "l_{r}"),
            Var::Named(s) => f.write_str(s),
        }
    }
}

impl FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Var> {
        let valid = s
            .chars()
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !valid {
            return Err(Error::Parse(format!("invalid variable name '{s}'")));
        }
        let parts: Vec<&str> = s.split('_').collect();
        let nums: Option<Vec<u32>> = parts[1..]
            .iter()
            .map(|p| {
                // reject leading zeros so that names stay canonical
                if p.len() > 1 && p.starts_with('0') {
                    None
                } else {
                    p.parse().ok()
                }
            })
            .collect();
        let var = match (parts[0], nums.as_deref()) {
            ("a", Some([i])) => Var::Alpha(*i),
            ("g", Some([j])) => Var::Gamma(*j),
            ("b", Some([k, l])) => Var::Beta(*k, *l),
            ("l", Some([r])) => Var::Lambda(*r),
            _ => Var::Named(Arc::from(s)),
        };
        Ok(var)
    }
}

/// A power product, stored as `(variable, exponent)` pairs sorted by variable
/// with positive exponents.
///
/// Ordered graded-lexicographically: total degree first, then by the exponent
/// of the smallest variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn from_powers(powers: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut map: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in powers {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|(_, e)| *e > 0).collect())
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn powers(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn exponent(&self, v: &Var) -> u32 {
        self.0
            .binary_search_by(|(w, _)| w.cmp(v))
            .map(|i| self.0[i].1)
            .unwrap_or(0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.0.iter().zip(&other.0) {
            match a.0.cmp(&b.0) {
                // self carries a positive power of an earlier variable
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => match a.1.cmp(&b.1) {
                    Ordering::Equal => {}
                    ord => return ord,
                },
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Multivariate polynomial with rational coefficients.
///
/// Terms are kept in a map keyed by monomial, so the representation is
/// canonical: structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(Monomial::one(), c);
        }
        p
    }

    pub fn var(v: Var) -> Self {
        Self::term(Rational::one(), Monomial::var(v))
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// The value of a constant polynomial.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Variables occurring with a nonzero coefficient, in variable order.
    pub fn variables(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(v, _)| v.clone()))
            .collect()
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, other: &Polynomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    /// `self += a * b`
    pub fn add_product(&mut self, a: &Polynomial, b: &Polynomial) {
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                self.add_term(ma.mul(mb), ca * cb);
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation. Every variable of `self` must be bound.
    pub fn eval(&self, assignment: &BTreeMap<Var, Rational>) -> Result<Rational> {
        let missing: Vec<String> = self
            .variables()
            .into_iter()
            .filter(|v| !assignment.contains_key(v))
            .map(|v| v.to_string())
            .collect();
        if !missing.is_empty() {
            return Err(Error::UnboundParameter(missing));
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in &m.0 {
                t *= num_traits::pow(assignment[v].clone(), *e as usize);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Replaces the bound variables by the given polynomials; unbound
    /// variables stay symbolic.
    pub fn substitute(&self, map: &BTreeMap<Var, Polynomial>) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut t = Polynomial::constant(c.clone());
            for (v, e) in &m.0 {
                match map.get(v) {
                    Some(p) => t = &t * &p.pow(*e),
                    None => kept.push((v.clone(), *e)),
                }
            }
            if !kept.is_empty() {
                t = &t * &Polynomial::term(Rational::one(), Monomial(kept));
            }
            out += &t;
        }
        out
    }

    /// Partial evaluation at rational values.
    pub fn specialize(&self, values: &BTreeMap<Var, Rational>) -> Polynomial {
        let map = values
            .iter()
            .map(|(v, c)| (v.clone(), Polynomial::constant(c.clone())))
            .collect();
        self.substitute(&map)
    }

    /// Makes the leading coefficient 1 (or returns zero unchanged).
    pub fn monic(&self) -> Polynomial {
        match self.terms.iter().next_back() {
            Some((_, lead)) => self.scale(&lead.recip()),
            None => Polynomial::zero(),
        }
    }
}

/// Compares term sequences from the leading term down.
impl Ord for Polynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.terms.iter().rev().cmp(other.terms.iter().rev())
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `true` iff `p - q` is the zero polynomial.
pub fn poly_equal(p: &Polynomial, q: &Polynomial) -> bool {
    p == q
}

impl From<Rational> for Polynomial {
    fn from(c: Rational) -> Self {
        Polynomial::constant(c)
    }
}

impl From<Var> for Polynomial {
    fn from(v: Var) -> Self {
        Polynomial::var(v)
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        out.add_product(self, rhs);
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        self += &rhs;
        self
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        self -= &rhs;
        self
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Text form `c * v1^e1 * v2^e2 + ...`, highest monomial first. The zero
/// polynomial prints as `0`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                f.write_str(&format_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{}*{m}", format_rational(&abs))?;
            }
        }
        Ok(())
    }
}

impl FromStr for Polynomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Polynomial> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut out = Polynomial::zero();
        let mut rest = text.as_str();
        while !rest.is_empty() {
            let mut sign = Rational::one();
            while let Some(c) = rest.chars().next().filter(|c| *c == '+' || *c == '-') {
                if c == '-' {
                    sign = -sign;
                }
                rest = &rest[1..];
            }
            let end = rest.find(['+', '-']).unwrap_or(rest.len());
            let term = &rest[..end];
            rest = &rest[end..];
            if term.is_empty() {
                return Err(Error::Parse(format!("dangling sign in '{s}'")));
            }
            let mut coeff = sign;
            let mut powers = Vec::new();
            for factor in term.split('*') {
                if factor.is_empty() {
                    return Err(Error::Parse(format!("empty factor in '{s}'")));
                }
                if factor.starts_with(|c: char| c.is_ascii_digit()) {
                    coeff *= parse_rational(factor)?;
                } else {
                    let (name, exp) = match factor.split_once('^') {
                        Some((n, e)) => (
                            n,
                            e.parse::<u32>()
                                .map_err(|_| Error::Parse(format!("bad exponent in '{factor}'")))?,
                        ),
                        None => (factor, 1),
                    };
                    powers.push((name.parse::<Var>()?, exp));
                }
            }
            out.add_term(Monomial::from_powers(powers), coeff);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{rat, ratio};
    use proptest::prelude::*;

    fn p(s: &str) -> Polynomial {
        s.parse().unwrap()
    }

    #[test]
    fn var_names_round_trip() {
        for s in ["a_1", "g_13", "b_12_2", "l_0", "x", "beta"] {
            assert_eq!(Var::named(s).unwrap().to_string(), s);
        }
        assert_eq!(Var::named("b_3_3").unwrap(), Var::Beta(3, 3));
        assert!(Var::named("3x").is_err());
        assert!(Var::named("").is_err());
    }

    #[test]
    fn variable_order() {
        let mut vs = vec![
            Var::Lambda(0),
            Var::Beta(1, 2),
            Var::Gamma(1),
            Var::Alpha(6),
            Var::Alpha(1),
        ];
        vs.sort();
        assert_eq!(
            vs,
            vec![
                Var::Alpha(1),
                Var::Alpha(6),
                Var::Gamma(1),
                Var::Beta(1, 2),
                Var::Lambda(0)
            ]
        );
    }

    #[test]
    fn grlex_order() {
        let x = Monomial::var(Var::Alpha(1));
        let y = Monomial::var(Var::Alpha(2));
        let xy = x.mul(&y);
        let y2 = y.mul(&y);
        let x2 = x.mul(&x);
        assert!(x > y);
        assert!(y2 > x);
        assert!(x2 > xy && xy > y2);
        assert!(Monomial::one() < y);
    }

    #[test]
    fn eval_examples() {
        let prod = p("g_1*a_2");
        let env: BTreeMap<Var, Rational> =
            [(Var::Gamma(1), rat(2)), (Var::Alpha(2), ratio(3, 2))].into();
        assert_eq!(prod.eval(&env).unwrap(), rat(3));

        assert_eq!(Polynomial::zero().eval(&BTreeMap::new()).unwrap(), rat(0));

        let rel = p("a_6 - 1/14*b_3_3");
        let env: BTreeMap<Var, Rational> =
            [(Var::Beta(3, 3), ratio(1, 858)), (Var::Alpha(6), ratio(1, 12012))].into();
        assert_eq!(rel.eval(&env).unwrap(), rat(0));
    }

    #[test]
    fn eval_reports_missing() {
        let err = p("a_1 + g_2*l_0").eval(&[(Var::Alpha(1), rat(1))].into()).unwrap_err();
        assert_eq!(err, Error::UnboundParameter(vec!["g_2".into(), "l_0".into()]));
    }

    #[test]
    fn equality_examples() {
        let s = p("g_1 + a_2");
        assert!(poly_equal(&(&s * &s), &p("g_1^2 + 2*g_1*a_2 + a_2^2")));
        assert!(!poly_equal(&p("g_1"), &p("a_2")));
        let vandermonde: Rational = (0..=2)
            .map(|j| {
                crate::exactmath::binomial(3, j).unwrap()
                    * crate::exactmath::binomial(2, 2 - j).unwrap()
            })
            .sum();
        assert!(poly_equal(
            &Polynomial::constant(vandermonde),
            &Polynomial::constant(rat(10))
        ));
    }

    #[test]
    fn text_format() {
        let q = p("3/5*b_3_3 + 2*a_6");
        assert_eq!(q.to_string(), "2*a_6 + 3/5*b_3_3");
        assert_eq!(p("-x^2*y + 1 - y").to_string(), "-x^2*y - y + 1");
        assert_eq!(p("a_1 - a_1").to_string(), "0");
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("2*3*a_1").to_string(), "6*a_1");
        assert!("a_1 +".parse::<Polynomial>().is_err());
        assert!("a_1 ** 2".parse::<Polynomial>().is_err());
        assert!("".parse::<Polynomial>().is_err());
    }

    #[test]
    fn no_zero_terms_stored() {
        let mut q = p("a_1 + a_2");
        q -= &p("a_1");
        assert_eq!(q.num_terms(), 1);
        assert_eq!(q.variables().into_iter().collect::<Vec<_>>(), vec![Var::Alpha(2)]);
    }

    #[test]
    fn substitute_partial() {
        let q = p("a_1*b_2_2 + g_1");
        let map: BTreeMap<Var, Polynomial> = [(Var::Beta(2, 2), p("g_3"))].into();
        assert_eq!(q.substitute(&map), p("a_1*g_3 + g_1"));
    }

    fn arb_poly() -> impl Strategy<Value = Polynomial> {
        let term = (
            -5i64..=5,
            1i64..=3,
            proptest::collection::vec((1u32..=4, 0u32..=2), 0..3),
        );
        proptest::collection::vec(term, 0..5).prop_map(|terms| {
            let mut out = Polynomial::zero();
            for (n, d, powers) in terms {
                let m = Monomial::from_powers(powers.into_iter().map(|(v, e)| (Var::Alpha(v), e)));
                out += &Polynomial::term(ratio(n, d), m);
            }
            out
        })
    }

    fn arb_env() -> impl Strategy<Value = BTreeMap<Var, Rational>> {
        proptest::collection::vec((-4i64..=4, 1i64..=3), 4).prop_map(|vals| {
            vals.into_iter()
                .enumerate()
                .map(|(i, (n, d))| (Var::Alpha(i as u32 + 1), ratio(n, d)))
                .collect()
        })
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn eval_is_homomorphism(a in arb_poly(), b in arb_poly(), env in arb_env()) {
            let (ea, eb) = (a.eval(&env).unwrap(), b.eval(&env).unwrap());
            prop_assert_eq!((&a * &b).eval(&env).unwrap(), &ea * &eb);
            prop_assert_eq!((&a + &b).eval(&env).unwrap(), &ea + &eb);
        }

        #[test]
        fn text_round_trip(a in arb_poly()) {
            let back: Polynomial = a.to_string().parse().unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
