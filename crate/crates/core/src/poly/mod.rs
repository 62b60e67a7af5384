//! The polynomial ring Q[x1..xn].
//!
//! Polynomials are stored as sorted term lists (descending in graded reverse
//! lexicographic order) with no zero coefficients, so structural equality is
//! semantic equality.

mod parse;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use smallvec::SmallVec;

use crate::arith::Rational;
use crate::error::{Error, Result};

pub use parse::parse_poly;
pub(crate) use parse::poly_expr;

/// Variable names of a ring Q[x1..xn].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingSpec {
    var_names: Vec<String>,
}

/// Shared handle to a ring.
pub type Ring = Arc<RingSpec>;

impl RingSpec {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Ring> {
        if names.is_empty() {
            return Err(Error::InvalidRing("at least one variable is required".into()));
        }
        let mut out: Vec<String> = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref();
            if !is_identifier(n) {
                return Err(Error::InvalidRing(format!("`{n}` is not an identifier")));
            }
            if out.iter().any(|m| m == n) {
                return Err(Error::InvalidRing(format!("duplicate variable `{n}`")));
            }
            out.push(n.to_string());
        }
        Ok(Arc::new(RingSpec { var_names: out }))
    }

    pub fn nvars(&self) -> usize {
        self.var_names.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.var_names.iter().position(|v| v == name)
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]", self.var_names.join(","))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

pub(crate) fn check_ring(a: &Ring, b: &Ring) -> Result<()> {
    if same_ring(a, b) {
        Ok(())
    } else {
        Err(Error::RingMismatch(a.to_string(), b.to_string()))
    }
}

/// Exponent vector of a monomial.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[u32; 4]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.0[i] = 1;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a.checked_add(*b).expect("exponent overflow"))
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self | other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(
            self.0
                .iter()
                .map(|&e| e.checked_mul(k).expect("exponent overflow"))
                .collect(),
        )
    }

    fn fmt_with(&self, ring: &RingSpec, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(&ring.var_names[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Term orders on monomials, with variable precedence x1 > x2 > ...
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum MonomialOrder {
    Lex,
    #[default]
    Grevlex,
}

impl MonomialOrder {
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::Grevlex => grevlex(a, b),
        }
    }
}

fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    match a.degree().cmp(&b.degree()) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for (x, y) in a.0.iter().zip(&b.0).rev() {
        if x != y {
            // smaller exponent in the last differing variable wins
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

/// A polynomial in canonical form.
#[derive(Clone)]
pub struct Poly {
    ring: Ring,
    terms: Vec<(Rational, Monomial)>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Poly {
    pub fn zero(ring: &Ring) -> Self {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Poly::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        Poly::monomial(ring, c, Monomial::one(ring.nvars()))
    }

    pub fn from_i64(ring: &Ring, c: i64) -> Self {
        Poly::constant(ring, Rational::from(c))
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        Poly::monomial(ring, Rational::one(), Monomial::var(ring.nvars(), i))
    }

    pub fn monomial(ring: &Ring, c: Rational, m: Monomial) -> Self {
        assert_eq!(m.0.len(), ring.nvars(), "monomial length does not match ring");
        let terms = if c.is_zero() { Vec::new() } else { vec![(c, m)] };
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a canonical polynomial from arbitrary terms (duplicates summed).
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Rational, Monomial)>) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (c, m) in terms {
            assert_eq!(m.0.len(), ring.nvars(), "monomial length does not match ring");
            match acc.get_mut(&m) {
                Some(v) => *v += &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (c, m))
            .collect();
        terms.sort_by(|a, b| grevlex(&b.1, &a.1));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Takes terms already sorted descending in grevlex with no zeros or repeats.
    pub(crate) fn from_sorted_terms(ring: &Ring, terms: Vec<(Rational, Monomial)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| grevlex(&w[0].1, &w[1].1) == Ordering::Greater));
        debug_assert!(terms.iter().all(|(c, _)| !c.is_zero()));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Terms in grevlex-descending order.
    pub fn terms(&self) -> &[(Rational, Monomial)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(_, m)| m.is_one())
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(c, m)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self.terms.as_slice(), [(c, m)] if c.is_one() && m.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.iter().map(|(_, m)| m.degree()).max()
    }

    /// Degree in variable `i`.
    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.iter().map(|(_, m)| m.0[i]).max()
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Result<(Rational, Monomial)> {
        let t = match order {
            MonomialOrder::Grevlex => self.terms.first(),
            MonomialOrder::Lex => self.terms.iter().max_by(|a, b| order.cmp(&a.1, &b.1)),
        };
        t.cloned().ok_or(Error::NoLeadingTerm)
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        check_ring(&self.ring, &other.ring)?;
        Ok(self.add_ref(other))
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        check_ring(&self.ring, &other.ring)?;
        Ok(self.add_scaled(other, &Rational::from(-1)))
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        check_ring(&self.ring, &other.ring)?;
        Ok(self.mul_ref(other))
    }

    fn add_ref(&self, other: &Poly) -> Poly {
        self.add_scaled(other, &Rational::one())
    }

    /// `self + c * other` by a sorted merge.
    fn add_scaled(&self, other: &Poly, c: &Rational) -> Poly {
        debug_assert!(same_ring(&self.ring, &other.ring));
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (a, b) = (&self.terms[i], &other.terms[j]);
            match grevlex(&a.1, &b.1) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((c * &b.0, b.1.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = &a.0 + &(c * &b.0);
                    if !s.is_zero() {
                        out.push((s, a.1.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(other.terms[j..].iter().map(|(b, m)| (c * b, m.clone())));
        Poly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    fn mul_ref(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ring);
        }
        if other.terms.len() == 1 {
            let (c, m) = &other.terms[0];
            return self.mul_term(c, m);
        }
        if self.terms.len() == 1 {
            let (c, m) = &self.terms[0];
            return other.mul_term(c, m);
        }
        let mut acc = Poly::zero(&self.ring);
        for (c, m) in &other.terms {
            acc = acc.add_ref(&self.mul_term(c, m));
        }
        acc
    }

    /// Multiplication by a single term preserves the order of terms.
    pub fn mul_term(&self, c: &Rational, m: &Monomial) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(d, n)| (d * c, n.mul(m))).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        self.mul_term(c, &Monomial::one(self.ring.nvars()))
    }

    pub fn neg(&self) -> Poly {
        self.scale(&Rational::from(-1))
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(&self.ring);
        for _ in 0..k {
            acc = acc.mul_ref(self);
        }
        acc
    }

    /// Divides by the leading coefficient (grevlex); zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            Some((c, _)) if !c.is_one() => self.scale(&c.inv().expect("nonzero coefficient")),
            _ => self.clone(),
        }
    }
}

macro_rules! poly_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl std::ops::$trait<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                assert!(same_ring(&self.ring, &rhs.ring), "ring mismatch");
                let f: fn(&Poly, &Poly) -> Poly = $body;
                f(self, rhs)
            }
        }
        impl std::ops::$trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
    };
}

poly_binop!(Add, add, |a, b| a.add_ref(b));
poly_binop!(Sub, sub, |a, b| a.add_scaled(b, &Rational::from(-1)));
poly_binop!(Mul, mul, |a, b| a.mul_ref(b));

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (c, m)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{a}*")?;
                }
                m.fmt_with(&self.ring, f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
