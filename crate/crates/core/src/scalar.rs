//! Exact coefficients: rational functions over the Gaussian rationals in a
//! finite set of commuting real parameters, with one algebraic adjunction
//! `r2` satisfying `r2^2 = 2`.
//!
//! A [`Poly`] is a Laurent polynomial (parameters may carry negative
//! exponents) whose `r2` exponent is always reduced to 0 or 1. A [`Scalar`]
//! is a quotient of two such polynomials. Denominators are kept free of
//! `r2` by rationalising against the conjugate `r2 -> -r2`, single-term
//! denominators are absorbed into the numerator, and exact polynomial
//! division is attempted otherwise. There is no multivariate gcd, so the
//! representation is not fully canonical; equality is decided by
//! cross-multiplication, which is exact.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Reserved parameter standing for the deformation constant.
pub const KAPPA: &str = "kappa";
/// Reserved parameter standing for `q^{c/2}`.
pub const S: &str = "s";
/// Adjoined square root of two.
pub const R2: &str = "r2";

/// Element of the Gaussian rationals.
pub type GaussRat = Complex<BigRational>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScalarError {
    #[error("no numeric value assigned to parameter `{0}`")]
    MissingAssignment(String),
    #[error("denominator evaluates to zero")]
    Singular,
}

pub(crate) fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn gauss(re: BigRational, im: BigRational) -> GaussRat {
    Complex::new(re, im)
}

fn gauss_one() -> GaussRat {
    gauss(BigRational::one(), BigRational::zero())
}

fn gauss_is_zero(c: &GaussRat) -> bool {
    c.re.is_zero() && c.im.is_zero()
}

fn gauss_inv(c: &GaussRat) -> GaussRat {
    let norm = &c.re * &c.re + &c.im * &c.im;
    gauss(&c.re / &norm, -&c.im / &norm)
}

fn gauss_to_c64(c: &GaussRat) -> Complex64 {
    Complex64::new(
        c.re.to_f64().unwrap_or(f64::NAN),
        c.im.to_f64().unwrap_or(f64::NAN),
    )
}

/// Power product of parameters, sorted by name, zero exponents dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<(String, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(name: &str, exp: i32) -> Self {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(name.to_string(), exp)])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, name: &str) -> i32 {
        self.0
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn factors(&self) -> impl Iterator<Item = (&str, i32)> {
        self.0.iter().map(|(n, e)| (n.as_str(), *e))
    }

    fn from_map(map: BTreeMap<String, i32>) -> Self {
        Monomial(map.into_iter().filter(|(_, e)| *e != 0).collect())
    }

    fn to_map(&self) -> BTreeMap<String, i32> {
        self.0.iter().cloned().collect()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut map = self.to_map();
        for (n, e) in &other.0 {
            *map.entry(n.clone()).or_insert(0) += e;
        }
        Monomial::from_map(map)
    }

    fn inv(&self) -> Monomial {
        Monomial(self.0.iter().map(|(n, e)| (n.clone(), -e)).collect())
    }

    fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().all(|(n, e)| other.exponent(n) >= *e)
    }

    /// Lexicographic order on exponent vectors over the union of names.
    fn lex_cmp(&self, other: &Monomial) -> Ordering {
        let names: BTreeSet<&str> = self
            .0
            .iter()
            .chain(other.0.iter())
            .map(|(n, _)| n.as_str())
            .collect();
        for n in names {
            match self.exponent(n).cmp(&other.exponent(n)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// Splits off the `r2` factor: returns the reduced monomial and the
    /// rational factor `2^k` produced by `r2^2 = 2`.
    fn reduce_r2(self) -> (Monomial, BigRational) {
        let e = self.exponent(R2);
        if e == 0 || e == 1 {
            return (self, BigRational::one());
        }
        let k = e.div_euclid(2);
        let rest = e.rem_euclid(2);
        let mut map = self.to_map();
        map.insert(R2.to_string(), rest);
        let two = BigRational::from_integer(BigInt::from(2));
        let factor = if k >= 0 {
            num_traits::pow(two, k as usize)
        } else {
            num_traits::pow(two, (-k) as usize).recip()
        };
        (Monomial::from_map(map), factor)
    }
}

/// Laurent polynomial over the Gaussian rationals, reduced modulo `r2^2 = 2`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly {
    terms: BTreeMap<Monomial, GaussRat>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: GaussRat) -> Self {
        let mut p = Poly::zero();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn monomial(m: Monomial, c: GaussRat) -> Self {
        let mut p = Poly::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussRat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial, c: GaussRat) {
        if gauss_is_zero(&c) {
            return;
        }
        let (m, f) = m.reduce_r2();
        let c = if f.is_one() {
            c
        } else {
            gauss(&c.re * &f, &c.im * &f)
        };
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing = &*existing + &c;
                if gauss_is_zero(existing) {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn scale(&self, c: &GaussRat) -> Poly {
        if gauss_is_zero(c) {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    fn mul_monomial(&self, m: &Monomial, c: &GaussRat) -> Poly {
        let mut out = Poly::zero();
        for (mm, x) in &self.terms {
            out.add_term(mm.mul(m), x * c);
        }
        out
    }

    pub fn conj(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.conj()))
                .collect(),
        }
    }

    /// Image under the Galois conjugation `r2 -> -r2`.
    fn conj_r2(&self) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    if m.exponent(R2) == 1 {
                        (m.clone(), -c.clone())
                    } else {
                        (m.clone(), c.clone())
                    }
                })
                .collect(),
        }
    }

    fn has_r2(&self) -> bool {
        self.terms.keys().any(|m| m.exponent(R2) != 0)
    }

    fn single_term(&self) -> Option<(&Monomial, &GaussRat)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    fn leading(&self) -> Option<(&Monomial, &GaussRat)> {
        self.terms.iter().max_by(|a, b| a.0.lex_cmp(b.0))
    }

    /// Monomial `m` with `m_i = min exponent of i` over all terms (zero
    /// for absent names), so that `self / m` has no negative exponents and
    /// no common monomial factor.
    fn monomial_content(&self) -> Monomial {
        let mut names = BTreeSet::new();
        for m in self.terms.keys() {
            for (n, _) in m.factors() {
                names.insert(n.to_string());
            }
        }
        let map = names
            .into_iter()
            .map(|n| {
                let e = self.terms.keys().map(|m| m.exponent(&n)).min().unwrap_or(0);
                (n, e)
            })
            .collect();
        Monomial::from_map(map)
    }

    /// Exact quotient `self / den` if it exists in the Laurent ring.
    /// `den` must be free of `r2`.
    fn div_exact(&self, den: &Poly) -> Option<Poly> {
        debug_assert!(!den.has_r2());
        let ms = self.monomial_content();
        let md = den.monomial_content();
        let mut rem = self.mul_monomial(&ms.inv(), &gauss_one());
        let d = den.mul_monomial(&md.inv(), &gauss_one());
        let (ld_m, ld_c) = d.leading()?;
        let (ld_m, ld_c_inv) = (ld_m.clone(), gauss_inv(ld_c));
        let mut quot = Poly::zero();
        while let Some((lm, lc)) = rem.leading() {
            if !ld_m.divides(lm) {
                return None;
            }
            let tm = lm.mul(&ld_m.inv());
            let tc = lc * &ld_c_inv;
            quot.add_term(tm.clone(), tc.clone());
            rem = &rem - &d.mul_monomial(&tm, &tc);
        }
        Some(quot.mul_monomial(&ms.mul(&md.inv()), &gauss_one()))
    }

    pub fn eval(&self, assignment: &BTreeMap<String, f64>) -> Result<Complex64, ScalarError> {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut v = gauss_to_c64(c);
            for (n, e) in m.factors() {
                let x = if n == R2 {
                    std::f64::consts::SQRT_2
                } else {
                    *assignment
                        .get(n)
                        .ok_or_else(|| ScalarError::MissingAssignment(n.to_string()))?
                };
                v *= x.powi(e);
            }
            acc += v;
        }
        Ok(acc)
    }

    fn params(&self, out: &mut BTreeSet<String>) {
        for m in self.terms.keys() {
            for (n, _) in m.factors() {
                if n != R2 {
                    out.insert(n.to_string());
                }
            }
        }
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", GaussDisplay(c))?;
            for (n, e) in m.factors() {
                debug_assert!(e > 0);
                if e == 1 {
                    write!(f, "*{n}")?;
                } else {
                    write!(f, "*{n}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

struct GaussDisplay<'a>(&'a GaussRat);

impl fmt::Display for GaussDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.0;
        match (c.re.is_zero(), c.im.is_zero()) {
            (_, true) => write!(f, "({})", c.re),
            (true, false) => write!(f, "({}*i)", c.im),
            (false, false) => {
                if c.im.is_negative() {
                    write!(f, "({} - {}*i)", c.re, -c.im.clone())
                } else {
                    write!(f, "({} + {}*i)", c.re, c.im)
                }
            }
        }
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

/// Element of the coefficient field.
#[derive(Clone, Debug)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            num: Poly::zero(),
            den: Poly::constant(gauss_one()),
        }
    }

    pub fn one() -> Self {
        Scalar::from_gauss(gauss_one())
    }

    pub fn i() -> Self {
        Scalar::from_gauss(gauss(BigRational::zero(), BigRational::one()))
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Scalar::from_rational(rat(n, d))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::from_gauss(gauss(r, BigRational::zero()))
    }

    pub fn from_gauss(c: GaussRat) -> Self {
        Scalar {
            num: Poly::constant(c),
            den: Poly::constant(gauss_one()),
        }
    }

    /// Exact rational value of a finite float (every finite `f64` is dyadic).
    pub fn from_f64(x: f64) -> Self {
        let r = BigRational::from_float(x).expect("finite float");
        Scalar::from_rational(r)
    }

    pub fn param(name: &str) -> Self {
        Scalar::from_poly(Poly::monomial(Monomial::var(name, 1), gauss_one()))
    }

    pub fn kappa() -> Self {
        Scalar::param(KAPPA)
    }

    pub fn s() -> Self {
        Scalar::param(S)
    }

    pub fn r2() -> Self {
        Scalar::param(R2)
    }

    pub fn from_poly(p: Poly) -> Self {
        Scalar {
            num: p,
            den: Poly::constant(gauss_one()),
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    fn from_parts(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut s = Scalar { num, den };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            *self = Scalar::zero();
            return;
        }
        if self.den.has_r2() {
            let c = self.den.conj_r2();
            self.num = &self.num * &c;
            self.den = &self.den * &c;
        }
        if let Some((m, c)) = self.den.single_term() {
            let (m, c) = (m.inv(), gauss_inv(c));
            self.num = self.num.mul_monomial(&m, &c);
            self.den = Poly::constant(gauss_one());
            return;
        }
        if let Some(q) = self.num.div_exact(&self.den) {
            self.num = q;
            self.den = Poly::constant(gauss_one());
            return;
        }
        let content = self.den.monomial_content().inv();
        let lead = gauss_inv(self.den.leading().expect("nonzero").1);
        self.num = self.num.mul_monomial(&content, &lead);
        self.den = self.den.mul_monomial(&content, &lead);
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self == &Scalar::one()
    }

    /// Denominator is a unit.
    pub fn is_polynomial(&self) -> bool {
        self.den == Poly::constant(gauss_one())
    }

    /// Returns the Gaussian-rational value if the scalar is parameter-free.
    pub fn as_constant(&self) -> Option<GaussRat> {
        if !self.is_polynomial() {
            return None;
        }
        match self.num.terms.len() {
            0 => Some(gauss(BigRational::zero(), BigRational::zero())),
            1 => {
                let (m, c) = self.num.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            None
        } else {
            Some(Scalar::from_parts(self.den.clone(), self.num.clone()))
        }
    }

    /// Complex conjugation: parameters are real, `i -> -i`.
    pub fn conj(&self) -> Scalar {
        Scalar::from_parts(self.num.conj(), self.den.conj())
    }

    pub fn pow(&self, n: i32) -> Scalar {
        if n < 0 {
            return self.inv().expect("negative power of zero").pow(-n);
        }
        let mut acc = Scalar::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Parameters occurring in the scalar (`r2` is algebraic, not a parameter).
    pub fn params(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.num.params(&mut out);
        self.den.params(&mut out);
        out
    }

    /// Ring homomorphism to complex floats.
    pub fn eval(&self, assignment: &BTreeMap<String, f64>) -> Result<Complex64, ScalarError> {
        let n = self.num.eval(assignment)?;
        let d = self.den.eval(assignment)?;
        if d == Complex64::new(0.0, 0.0) {
            return Err(ScalarError::Singular);
        }
        Ok(n / d)
    }

    /// Replaces a parameter by a scalar.
    pub fn substitute(&self, name: &str, value: &Scalar) -> Scalar {
        let sub = |p: &Poly| -> Scalar {
            let mut acc = Scalar::zero();
            for (m, c) in &p.terms {
                let mut rest = BTreeMap::new();
                let mut e_sub = 0;
                for (n, e) in m.factors() {
                    if n == name {
                        e_sub = e;
                    } else {
                        rest.insert(n.to_string(), e);
                    }
                }
                let term = Scalar::from_poly(Poly::monomial(Monomial::from_map(rest), c.clone()));
                acc = &acc + &(&term * &value.pow(e_sub));
            }
            acc
        };
        let n = sub(&self.num);
        let d = sub(&self.den);
        &n / &d
    }

    /// Numerator and denominator as plain polynomials (no negative exponents).
    pub fn as_fraction(&self) -> (Poly, Poly) {
        let mn = self.num.monomial_content();
        let md = self.den.monomial_content();
        let names: BTreeSet<&str> = mn.factors().chain(md.factors()).map(|(n, _)| n).collect();
        let map = names
            .into_iter()
            .map(|n| (n.to_string(), mn.exponent(n).min(md.exponent(n))))
            .collect();
        let inv = Monomial::from_map(map).inv();
        (
            self.num.mul_monomial(&inv, &gauss_one()),
            self.den.mul_monomial(&inv, &gauss_one()),
        )
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        (&self.num * &other.den) == (&other.num * &self.den)
    }
}

impl Eq for Scalar {}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.as_fraction();
        write!(f, "(")?;
        n.fmt_with(f)?;
        write!(f, ")")?;
        if d != Poly::constant(gauss_one()) {
            write!(f, "/(")?;
            d.fmt_with(f)?;
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            return Scalar::from_parts(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        Scalar::from_parts(num, &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        if self.is_polynomial() && rhs.is_polynomial() {
            return Scalar::from_poly(&self.num * &rhs.num);
        }
        Scalar::from_parts(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.scale(&gauss(-BigRational::one(), BigRational::zero())),
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn assign(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
        pairs.iter().map(|(n, v)| (n.to_string(), *v)).collect()
    }

    #[test]
    fn display_clears_only_negative_exponents() {
        let k = Scalar::kappa();
        assert_eq!((&Scalar::i() * &k).to_string(), "((1*i)*kappa)");
        assert_eq!(k.inv().unwrap().to_string(), "((1))/((1)*kappa)");
        let mixed = &k / &(&Scalar::s() + &Scalar::one());
        assert_eq!(mixed.to_string(), "((1)*kappa)/((1)*s + (1))");
    }

    #[test]
    fn r2_squares_to_two() {
        let r2 = Scalar::r2();
        assert_eq!(&r2 * &r2, Scalar::from_int(2));
        assert_eq!(r2.inv().unwrap(), &r2 / &Scalar::from_int(2));
    }

    #[test]
    fn laurent_inverse_of_s() {
        let s = Scalar::s();
        let si = s.inv().unwrap();
        assert_eq!(&s * &si, Scalar::one());
        assert!(si.is_polynomial());
    }

    #[test]
    fn rational_function_with_binomial_denominator() {
        let s = Scalar::s();
        let den = &(&s * &s) - &(&s.inv().unwrap() * &s.inv().unwrap());
        let x = &Scalar::kappa() / &den;
        assert!(!x.is_polynomial());
        assert_eq!(&x * &den, Scalar::kappa());
        // exact division collapses (s^4 - 1)/(s^2 - 1)
        let a = &s.pow(4) - &Scalar::one();
        let b = &s.pow(2) - &Scalar::one();
        let q = &a / &b;
        assert!(q.is_polynomial());
        assert_eq!(q, &s.pow(2) + &Scalar::one());
    }

    #[test]
    fn conjugation_fixes_params() {
        let x = &Scalar::i() * &Scalar::kappa();
        assert_eq!(x.conj(), -&x);
        assert_eq!(Scalar::s().conj(), Scalar::s());
        assert_eq!(Scalar::r2().conj(), Scalar::r2());
    }

    #[test]
    fn eval_reports_missing_parameter() {
        let x = Scalar::kappa();
        assert_eq!(
            x.eval(&BTreeMap::new()),
            Err(ScalarError::MissingAssignment("kappa".into()))
        );
        let v = Scalar::r2().eval(&BTreeMap::new()).unwrap();
        assert!((v.re - std::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn substitute_parameter() {
        let x = &(&Scalar::kappa() * &Scalar::s()) + &Scalar::s().inv().unwrap();
        let y = x.substitute(KAPPA, &Scalar::one());
        assert_eq!(y, &Scalar::s() + &Scalar::s().inv().unwrap());
    }

    #[test]
    fn from_f64_is_exact() {
        assert_eq!(Scalar::from_f64(0.25), Scalar::from_ratio(1, 4));
        assert_eq!(Scalar::from_f64(1.25), Scalar::from_ratio(5, 4));
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        let atom = prop_oneof![
            (-5i64..6, 1i64..4).prop_map(|(n, d)| Scalar::from_ratio(n, d)),
            Just(Scalar::i()),
            Just(Scalar::kappa()),
            Just(Scalar::s()),
            Just(Scalar::r2()),
        ];
        prop::collection::vec((atom.clone(), atom, -1i32..3), 1..4).prop_map(|parts| {
            parts.into_iter().fold(Scalar::zero(), |acc, (a, b, e)| {
                let t = if e < 0 && b.is_zero() {
                    a
                } else {
                    &a * &b.pow(e)
                };
                &acc + &t
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a - &a, Scalar::zero());
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), Scalar::one());
                if !b.is_zero() {
                    let q = &a / &b;
                    prop_assert_eq!(&q * &b, a.clone());
                }
            }
        }

        #[test]
        fn evaluation_is_a_homomorphism(a in arb_scalar(), b in arb_scalar(),
                                        kappa in 0.5f64..2.0, s in 0.5f64..2.0) {
            let env = assign(&[("kappa", kappa), ("s", s)]);
            let (ea, eb) = (a.eval(&env).unwrap(), b.eval(&env).unwrap());
            let sum = (&a + &b).eval(&env).unwrap();
            let prod = (&a * &b).eval(&env).unwrap();
            let scale = 1.0 + ea.norm() + eb.norm();
            prop_assert!((sum - (ea + eb)).norm() < 1e-9 * scale);
            prop_assert!((prod - ea * eb).norm() < 1e-9 * scale * scale);
        }

        #[test]
        fn conjugation_is_involutive_and_multiplicative(a in arb_scalar(), b in arb_scalar()) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        }
    }
}
