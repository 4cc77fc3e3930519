//! Sparse multivariate polynomials in two or three variables over the
//! rationals.
//!
//! A [`Poly`] is a map from [`Monomial`] to a nonzero [`Rational`]; the zero
//! polynomial is the empty map, so structural equality is mathematical
//! equality.

mod monomial;
mod parse;
mod weights;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use monomial::{exponent_cap, set_exponent_cap, Monomial, DEFAULT_EXPONENT_CAP};
pub use parse::parse_poly;
pub use weights::WeightSystem;

/// Exact rational number, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `n / d`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub const VARIABLES: [char; 3] = ['x', 'y', 'z'];

/// How a polynomial sits with respect to a weight system.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    Zero,
    Homogeneous(i64),
    Inhomogeneous,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    arity: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(arity: usize) -> Self {
        assert!((2..=3).contains(&arity), "arity must be 2 or 3");
        Poly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, Rational::one())
    }

    pub fn constant(arity: usize, c: Rational) -> Self {
        Self::term(arity, Monomial::ONE, c)
    }

    pub fn term(arity: usize, m: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(arity);
        debug_assert!((arity..3).all(|i| m.exponent(i) == 0));
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// The coordinate function `x_index`.
    pub fn var(arity: usize, index: usize) -> Self {
        assert!(index < arity);
        Self::term(arity, Monomial::var(index), Rational::one())
    }

    pub fn from_terms<I>(arity: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut p = Self::zero(arity);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// Constant coefficient, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&Monomial::ONE).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_arity(&self, other: &Poly) {
        assert_eq!(
            self.arity, other.arity,
            "polynomials of different arity combined"
        );
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.arity);
        }
        Poly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> Poly {
        self.scale(&rat(c))
    }

    /// Product with an explicit exponent-overflow error.
    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_arity(other);
        let mut out = Poly::zero(self.arity);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.checked_mul(mb)?, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rational) -> Result<Poly> {
        let mut out = Poly::zero(self.arity);
        if c.is_zero() {
            return Ok(out);
        }
        for (mp, cp) in &self.terms {
            out.terms.insert(mp.checked_mul(m)?, cp * c);
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(self.arity);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to variable `index`.
    pub fn partial(&self, index: usize) -> Poly {
        assert!(index < self.arity, "derivative variable out of range");
        let mut out = Poly::zero(self.arity);
        for (m, c) in &self.terms {
            if let Some((e, dm)) = m.derivative(index) {
                out.add_term(dm, c * rat(e as i64));
            }
        }
        out
    }

    /// Partial derivatives with respect to every variable.
    pub fn gradient(&self) -> Vec<Poly> {
        (0..self.arity).map(|i| self.partial(i)).collect()
    }

    fn check_weights(&self, w: &WeightSystem) -> Result<()> {
        if w.arity() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: w.arity(),
            });
        }
        Ok(())
    }

    /// Largest weighted degree among the terms; `None` for the zero polynomial.
    pub fn weighted_degree(&self, w: &WeightSystem) -> Result<Option<i64>> {
        self.check_weights(w)?;
        Ok(self.terms.keys().map(|m| w.degree(m)).max())
    }

    pub fn grading(&self, w: &WeightSystem) -> Result<Grading> {
        self.check_weights(w)?;
        let mut degrees = self.terms.keys().map(|m| w.degree(m));
        let Some(first) = degrees.next() else {
            return Ok(Grading::Zero);
        };
        if degrees.all(|d| d == first) {
            Ok(Grading::Homogeneous(first))
        } else {
            Ok(Grading::Inhomogeneous)
        }
    }

    /// True when every monomial has the same weighted degree. The zero
    /// polynomial counts as homogeneous.
    pub fn is_weight_homogeneous(&self, w: &WeightSystem) -> Result<bool> {
        Ok(self.grading(w)? != Grading::Inhomogeneous)
    }

    /// Decomposition into weight-homogeneous components keyed by degree.
    pub fn graded_parts(&self, w: &WeightSystem) -> BTreeMap<i64, Poly> {
        let mut parts: BTreeMap<i64, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            parts
                .entry(w.degree(m))
                .or_insert_with(|| Poly::zero(self.arity))
                .terms
                .insert(*m, c.clone());
        }
        parts
    }

    /// Euler formula check `sum w_i x_i dp/dx_i == deg(p) p`.
    pub fn euler_check(&self, w: &WeightSystem) -> Result<bool> {
        let degree = match self.grading(w)? {
            Grading::Zero => return Ok(true),
            Grading::Homogeneous(d) => d,
            Grading::Inhomogeneous => return Err(Error::NotHomogeneous),
        };
        let mut lhs = Poly::zero(self.arity);
        for i in 0..self.arity {
            let xi = Poly::var(self.arity, i).scale_int(w.weight(i));
            lhs += &(&xi * &self.partial(i));
        }
        Ok(lhs == self.scale_int(degree))
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map_coeffs(&self, mut f: impl FnMut(&Rational) -> Rational) -> Poly {
        Poly::from_terms(self.arity, self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// Same polynomial viewed in a larger number of variables.
    pub fn with_arity(&self, arity: usize) -> Poly {
        assert!(arity >= self.arity);
        Poly {
            arity,
            terms: self.terms.clone(),
        }
    }

    /// Terms sorted for printing: descending weighted degree, then
    /// lexicographic with x > y > z.
    pub fn sorted_terms(&self, w: Option<&WeightSystem>) -> Vec<(Monomial, Rational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        let deg = |m: &Monomial| match w {
            Some(w) => w.degree(m),
            None => m.total_degree() as i64,
        };
        v.sort_by(|(a, _), (b, _)| {
            deg(b)
                .cmp(&deg(a))
                .then_with(|| b.exponents().cmp(&a.exponents()))
        });
        v
    }

    /// Text form ordered by the given weights.
    pub fn to_weighted_string(&self, w: &WeightSystem) -> String {
        format_terms(&self.sorted_terms(Some(w)), self.arity)
    }
}

fn format_monomial(m: &Monomial, arity: usize) -> String {
    let mut parts = Vec::new();
    for (i, var) in VARIABLES.iter().enumerate().take(arity) {
        match m.exponent(i) {
            0 => {}
            1 => parts.push(var.to_string()),
            e => parts.push(format!("{var}^{e}")),
        }
    }
    parts.join("*")
}

fn format_terms(terms: &[(Monomial, Rational)], arity: usize) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in terms.iter().enumerate() {
        let negative = c.is_negative();
        let abs = c.abs();
        if k == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        if m.is_one() {
            out.push_str(&abs.to_string());
        } else {
            if !abs.is_one() {
                out.push_str(&abs.to_string());
                out.push('*');
            }
            out.push_str(&format_monomial(m, arity));
        }
    }
    out
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(&self.sorted_terms(None), self.arity))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.arity, self)
    }
}

impl Add<&Poly> for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(mut self, rhs: Poly) -> Poly {
        self += &rhs;
        self
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        self.check_arity(rhs);
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        self.check_arity(rhs);
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c.clone());
        }
    }
}

impl Sub<&Poly> for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(mut self, rhs: Poly) -> Poly {
        self -= &rhs;
        self
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Panics on exponent overflow; use [`Poly::checked_mul`] to handle it.
impl Mul<&Poly> for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        match self.checked_mul(rhs) {
            Ok(p) => p,
            Err(e) => panic!("{e}"),
        }
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}
