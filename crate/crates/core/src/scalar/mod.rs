//! Exact scalars: multivariate polynomials in real named parameters with
//! Gaussian-rational coefficients.
//!
//! Every matrix entry in the crate is a [`PolyScalar`]. Its term map is kept in
//! canonical form (no zero coefficients, monomials ordered graded
//! lexicographically), so structural equality is mathematical equality.
//!
//! Parameters are assumed real: [`PolyScalar::conj`] conjugates coefficients
//! and leaves monomials alone.

mod parse;

pub use parse::ParseError;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rational = BigRational;

/// A complex number with rational real and imaginary parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussRational {
            re,
            im: Rational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Self::real(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussRational {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::real(Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.re * &self.re + &self.im * &self.im;
        Some(GaussRational {
            re: &self.re / &norm,
            im: -(&self.im / &norm),
        })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        GaussRational {
            re: &self.re * r,
            im: &self.im * r,
        }
    }
}

impl Add for &GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: &GaussRational) -> GaussRational {
        GaussRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: &GaussRational) -> GaussRational {
        GaussRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: &GaussRational) -> GaussRational {
        GaussRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

fn fmt_rational(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", PolyScalar::constant(self.clone()))
    }
}

/// A power product of named parameters, stored as `(name, exponent)` pairs
/// with strictly ascending names and positive exponents. The empty product is
/// the constant monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<(String, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(name: impl Into<String>) -> Self {
        Monomial {
            factors: vec![(name.into(), 1)],
        }
    }

    /// Builds a monomial from arbitrary factors, merging repeated names and
    /// dropping zero exponents.
    pub fn from_factors<I, S>(factors: I) -> Self
    where
        I: IntoIterator<Item = (S, u32)>,
        S: Into<String>,
    {
        let mut merged: BTreeMap<String, u32> = BTreeMap::new();
        for (name, exp) in factors {
            *merged.entry(name.into()).or_default() += exp;
        }
        Monomial {
            factors: merged.into_iter().filter(|&(_, e)| e > 0).collect(),
        }
    }

    pub fn factors(&self) -> &[(String, u32)] {
        &self.factors
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut a, mut b) = (
            self.factors.iter().peekable(),
            other.factors.iter().peekable(),
        );
        loop {
            match (a.peek(), b.peek()) {
                (Some((na, ea)), Some((nb, eb))) => match na.cmp(nb) {
                    Ordering::Less => {
                        out.push((na.clone(), *ea));
                        a.next();
                    }
                    Ordering::Greater => {
                        out.push((nb.clone(), *eb));
                        b.next();
                    }
                    Ordering::Equal => {
                        out.push((na.clone(), ea + eb));
                        a.next();
                        b.next();
                    }
                },
                (Some(x), None) => {
                    out.push((*x).clone());
                    a.next();
                }
                (None, Some(y)) => {
                    out.push((*y).clone());
                    b.next();
                }
                (None, None) => break,
            }
        }
        Monomial { factors: out }
    }

    pub fn pow(&self, exp: u32) -> Monomial {
        Monomial {
            factors: if exp == 0 {
                Vec::new()
            } else {
                self.factors
                    .iter()
                    .map(|(n, e)| (n.clone(), e * exp))
                    .collect()
            },
        }
    }
}

/// Graded lexicographic: higher total degree is greater; ties are broken by
/// the exponent of the alphabetically first parameter where the two differ.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let by_degree = self.degree().cmp(&other.degree());
        if by_degree != Ordering::Equal {
            return by_degree;
        }
        let (mut a, mut b) = (self.factors.iter(), other.factors.iter());
        loop {
            match (a.next(), b.next()) {
                (Some((na, ea)), Some((nb, eb))) => {
                    if na != nb {
                        // the side holding the smaller name has a positive
                        // exponent where the other has zero
                        return if na < nb {
                            Ordering::Greater
                        } else {
                            Ordering::Less
                        };
                    }
                    if ea != eb {
                        return ea.cmp(eb);
                    }
                }
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (None, None) => return Ordering::Equal,
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (idx, (name, exp)) in self.factors.iter().enumerate() {
            if idx > 0 {
                write!(f, "*")?;
            }
            write!(f, "{name}")?;
            if *exp > 1 {
                write!(f, "^{exp}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial in real named parameters over the Gaussian rationals, kept
/// in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PolyScalar {
    terms: BTreeMap<Monomial, GaussRational>,
}

impl PolyScalar {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(GaussRational::from_int(n))
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        Self::constant(GaussRational::from_frac(num, den))
    }

    pub fn from_rational(r: Rational) -> Self {
        Self::constant(GaussRational::real(r))
    }

    pub fn i() -> Self {
        Self::constant(GaussRational::i())
    }

    pub fn constant(c: GaussRational) -> Self {
        Self::term(c, Monomial::one())
    }

    /// A real parameter. The name `i` is reserved for the imaginary unit in
    /// the textual grammar but is accepted here.
    pub fn var(name: impl Into<String>) -> Self {
        Self::term(GaussRational::one(), Monomial::var(name))
    }

    pub fn term(coeff: GaussRational, mono: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mono, coeff);
        }
        PolyScalar { terms }
    }

    /// Parses an expression such as `k1+k2`, `-4*a`, `1/2*i` or `(t+U)^2`.
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        parse::parse_expression(text)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value of a parameter-free scalar.
    pub fn as_constant(&self) -> Option<GaussRational> {
        match self.terms.len() {
            0 => Some(GaussRational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.as_constant().is_some()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussRational)> {
        self.terms.iter().rev()
    }

    /// Coefficient of `mono`, zero if absent.
    pub fn coefficient(&self, mono: &Monomial) -> GaussRational {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Names of all parameters that occur, ascending.
    pub fn parameters(&self) -> Vec<String> {
        let mut names: Vec<String> = self
            .terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|(n, _)| n.clone()))
            .collect();
        names.sort();
        names.dedup();
        names
    }

    pub fn conj(&self) -> Self {
        PolyScalar {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.conj()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PolyScalar {
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(&GaussRational::real(r.clone()))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Replaces bound parameters by the given scalars; unbound parameters
    /// stay symbolic.
    pub fn substitute(&self, bindings: &HashMap<String, PolyScalar>) -> Self {
        let mut out = PolyScalar::zero();
        for (mono, coeff) in &self.terms {
            let mut term = PolyScalar::constant(coeff.clone());
            let mut rest = Vec::new();
            for (name, exp) in mono.factors() {
                match bindings.get(name) {
                    Some(value) => term = &term * &value.pow(*exp),
                    None => rest.push((name.clone(), *exp)),
                }
            }
            let rest = PolyScalar::term(GaussRational::one(), Monomial::from_factors(rest));
            out += &(&term * &rest);
        }
        out
    }

    fn add_term(&mut self, mono: &Monomial, coeff: &GaussRational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.get_mut(mono) {
            Some(existing) => {
                let sum = &*existing + coeff;
                if sum.is_zero() {
                    self.terms.remove(mono);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(mono.clone(), coeff.clone());
            }
        }
    }
}

impl AddAssign<&PolyScalar> for PolyScalar {
    fn add_assign(&mut self, rhs: &PolyScalar) {
        for (m, c) in &rhs.terms {
            self.add_term(m, c);
        }
    }
}

impl Add for &PolyScalar {
    type Output = PolyScalar;
    fn add(self, rhs: &PolyScalar) -> PolyScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for PolyScalar {
    type Output = PolyScalar;
    fn add(mut self, rhs: PolyScalar) -> PolyScalar {
        self += &rhs;
        self
    }
}

impl Sub for &PolyScalar {
    type Output = PolyScalar;
    fn sub(self, rhs: &PolyScalar) -> PolyScalar {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m, &-c);
        }
        out
    }
}

impl Sub for PolyScalar {
    type Output = PolyScalar;
    fn sub(self, rhs: PolyScalar) -> PolyScalar {
        &self - &rhs
    }
}

impl Mul for &PolyScalar {
    type Output = PolyScalar;
    fn mul(self, rhs: &PolyScalar) -> PolyScalar {
        let mut out = PolyScalar::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(&ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Mul for PolyScalar {
    type Output = PolyScalar;
    fn mul(self, rhs: PolyScalar) -> PolyScalar {
        &self * &rhs
    }
}

impl Neg for &PolyScalar {
    type Output = PolyScalar;
    fn neg(self) -> PolyScalar {
        PolyScalar {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for PolyScalar {
    type Output = PolyScalar;
    fn neg(self) -> PolyScalar {
        -&self
    }
}

impl From<i64> for PolyScalar {
    fn from(n: i64) -> Self {
        PolyScalar::from_int(n)
    }
}

/// Renders the canonical form compactly, highest-order term first, in the
/// same grammar [`PolyScalar::parse`] accepts (`t^2-U^2`, `1/2*i`,
/// `(1+2*i)*a`).
impl fmt::Display for PolyScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (mono, coeff)) in self.terms().enumerate() {
            // a lone real or lone imaginary part carries its own sign
            let (negative, magnitude) = if coeff.im.is_zero() {
                (coeff.re.is_negative(), GaussRational::real(coeff.re.abs()))
            } else if coeff.re.is_zero() {
                (
                    coeff.im.is_negative(),
                    GaussRational::new(Rational::zero(), coeff.im.abs()),
                )
            } else {
                (false, coeff.clone())
            };
            match (idx, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, "-")?,
                (_, false) => write!(f, "+")?,
            }
            let unit = magnitude.is_one();
            if !magnitude.im.is_zero() && !magnitude.re.is_zero() {
                write!(f, "(")?;
                fmt_rational(&magnitude.re, f)?;
                if magnitude.im.is_negative() {
                    write!(f, "-")?;
                } else {
                    write!(f, "+")?;
                }
                write_imaginary(&magnitude.im.abs(), f)?;
                write!(f, ")")?;
            } else if !magnitude.im.is_zero() {
                write_imaginary(&magnitude.im, f)?;
            } else if !unit || mono.is_one() {
                fmt_rational(&magnitude.re, f)?;
            }
            if !mono.is_one() {
                if !unit {
                    write!(f, "*")?;
                }
                write!(f, "{mono}")?;
            }
        }
        Ok(())
    }
}

fn write_imaginary(im: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if im.is_one() {
        write!(f, "i")
    } else {
        fmt_rational(im, f)?;
        write!(f, "*i")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PolyScalar {
        PolyScalar::parse(s).unwrap()
    }

    #[test]
    fn additive_identity_and_inverse() {
        assert_eq!(&p("k1+k2") + &PolyScalar::zero(), p("k1+k2"));
        assert!((&p("t") + &p("-t")).is_zero());
    }

    #[test]
    fn add_collects_like_terms() {
        let sum = &p("U+t") + &p("U-t");
        assert_eq!(sum, PolyScalar::var("U").scale(&GaussRational::from_int(2)));
        assert_eq!(sum.to_string(), "2*U");
    }

    #[test]
    fn mul_examples() {
        assert_eq!(
            &PolyScalar::i() * &PolyScalar::i(),
            PolyScalar::from_int(-1)
        );
        assert_eq!(&p("t+U") * &p("t-U"), p("t^2-U^2"));
        assert_eq!(
            &PolyScalar::from_frac(1, 2) * &PolyScalar::from_frac(1, 2),
            PolyScalar::from_frac(1, 4)
        );
    }

    #[test]
    fn conj_examples() {
        assert_eq!(p("i*t").conj(), p("-i*t"));
        assert_eq!(p("k1+k2").conj(), p("k1+k2"));
        assert_eq!(p("2+3*i").conj().conj(), p("2+3*i"));
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::var("a");
        let b = Monomial::var("b");
        let a2 = a.pow(2);
        let ab = a.mul(&b);
        assert!(a > b);
        assert!(b > Monomial::one());
        assert!(a2 > ab);
        assert!(ab > b.pow(2));
        assert!(b.pow(2) > a);
    }

    #[test]
    fn display_is_canonical() {
        assert_eq!(p("k2+k1").to_string(), "k1+k2");
        assert_eq!(p("-4*a").to_string(), "-4*a");
        assert_eq!(p("1/2*i").to_string(), "1/2*i");
        assert_eq!(p("(1+2*i)*a - i").to_string(), "(1+2*i)*a-i");
        assert_eq!(p("(1-2*i)").to_string(), "(1-2*i)");
        assert_eq!(p("0*t").to_string(), "0");
        assert_eq!(p("2*k-2*t").to_string(), "2*k-2*t");
    }

    #[test]
    fn substitute_binds_some_parameters() {
        let h = p("k1+k2+t");
        let mut b = HashMap::new();
        b.insert("k1".to_string(), p("k"));
        b.insert("k2".to_string(), p("k"));
        assert_eq!(h.substitute(&b), p("2*k+t"));
        b.insert("t".to_string(), p("1/3"));
        assert_eq!(h.substitute(&b), p("2*k+1/3"));
    }

    #[test]
    fn constants() {
        assert_eq!(p("3/6").as_constant(), Some(GaussRational::from_frac(1, 2)));
        assert_eq!(p("a").as_constant(), None);
        assert_eq!(
            PolyScalar::zero().as_constant(),
            Some(GaussRational::zero())
        );
        assert_eq!(
            GaussRational::new(
                Rational::from_integer(1.into()),
                Rational::from_integer(1.into())
            )
            .inv(),
            Some(GaussRational::new(
                Rational::new(1.into(), 2.into()),
                Rational::new((-1).into(), 2.into())
            ))
        );
    }
}
