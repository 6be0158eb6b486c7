//! A computable non-Archimedean ordered field extending the rationals.
//!
//! Elements are rational functions in a formal positive infinitesimal `e`,
//! optionally ramified: with ramification `m` the stored polynomial variable
//! `t` stands for `e^(1/m)`. The order is the sign of the lowest-order
//! Laurent coefficient, i.e. the sign of the function as `e -> 0+`.
//!
//! Every value is kept in canonical form (coprime numerator and denominator,
//! denominator with lowest nonzero coefficient `1`, minimal ramification), so
//! structural equality is field equality.

mod parse;
mod root;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{render_rational, Poly};

pub use parse::parse_hyperreal;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HyperrealError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is infinite and has no real part")]
    NotFinite,
    #[error("even root of a negative element")]
    NegativeEvenRoot,
    #[error("root is not representable as a ramified rational function of e")]
    NotRepresentable,
    #[error("empty interval: lower bound exceeds upper bound")]
    EmptyInterval,
    #[error("root index must be positive")]
    ZeroRootIndex,
    #[error("parse error at {pos}: {message}")]
    Parse { pos: usize, message: String },
}

/// Magnitude class of an element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Classification {
    Zero,
    Infinitesimal,
    Appreciable,
    Infinite,
}

impl Classification {
    /// Zero or a nonzero infinitesimal.
    pub fn is_infinitesimal(self) -> bool {
        matches!(self, Classification::Zero | Classification::Infinitesimal)
    }

    pub fn is_finite(self) -> bool {
        self != Classification::Infinite
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Zero => "zero",
            Classification::Infinitesimal => "infinitesimal",
            Classification::Appreciable => "appreciable",
            Classification::Infinite => "infinite",
        }
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Value of the standard part map: a rational, or a signed infinity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum StandardPart {
    Real(BigRational),
    PlusInfinity,
    MinusInfinity,
}

impl StandardPart {
    pub fn real(&self) -> Option<&BigRational> {
        match self {
            StandardPart::Real(r) => Some(r),
            _ => None,
        }
    }
}

impl fmt::Display for StandardPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StandardPart::Real(r) => f.write_str(&render_rational(r)),
            StandardPart::PlusInfinity => f.write_str("+inf"),
            StandardPart::MinusInfinity => f.write_str("-inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntervalKind {
    /// `[lo, hi]`
    Closed,
    /// `(lo, hi)`
    Open,
    /// `(lo, hi]`
    LeftOpen,
    /// `[lo, hi)`
    RightOpen,
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hyperreal {
    num: Poly,
    den: Poly,
    ram: u32,
}

impl Hyperreal {
    /// Bring `num / den` (in the variable `e^(1/ram)`) into canonical form.
    pub fn normalize(num: Poly, den: Poly, ram: u32) -> Result<Self, HyperrealError> {
        assert!(ram > 0, "ramification must be positive");
        if den.is_zero() {
            return Err(HyperrealError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (num.div_exact(&g), den.div_exact(&g))
        };
        let c = den.lowest();
        if !c.is_one() {
            let inv = c.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        let d = (ram as usize)
            .gcd(&num.exponent_gcd())
            .gcd(&den.exponent_gcd());
        if d > 1 {
            num = num.deflate(d);
            den = den.deflate(d);
        }
        Ok(Hyperreal {
            num,
            den,
            ram: ram / d as u32,
        })
    }

    fn from_parts_unchecked(num: Poly, den: Poly, ram: u32) -> Self {
        Self::normalize(num, den, ram).expect("nonzero denominator")
    }

    pub fn zero() -> Self {
        Hyperreal {
            num: Poly::zero(),
            den: Poly::one(),
            ram: 1,
        }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::from_parts_unchecked(Poly::constant(r), Poly::one(), 1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// The positive infinitesimal `e`.
    pub fn epsilon() -> Self {
        Hyperreal {
            num: Poly::x(),
            den: Poly::one(),
            ram: 1,
        }
    }

    /// `e^(p/q)` for `q > 0`.
    pub fn epsilon_pow(p: i64, q: u32) -> Self {
        assert!(q > 0);
        let k = p.unsigned_abs() as usize;
        let (num, den) = if p >= 0 {
            (Poly::monomial(BigRational::one(), k), Poly::one())
        } else {
            (Poly::one(), Poly::monomial(BigRational::one(), k))
        };
        Self::from_parts_unchecked(num, den, q)
    }

    /// Polynomial in `e` with the given coefficients (lowest degree first).
    pub fn from_poly(p: Poly) -> Self {
        Self::from_parts_unchecked(p, Poly::one(), 1)
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    /// The stored variable denotes `e^(1/ramification)`.
    pub fn ramification(&self) -> u32 {
        self.ram
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Whether this element is a standard rational.
    pub fn as_rational(&self) -> Option<BigRational> {
        (self.num.is_constant() && self.den.is_constant()).then(|| self.num.coeff(0))
    }

    fn rebased(&self, ram: u32) -> (Poly, Poly) {
        debug_assert_eq!(ram % self.ram, 0);
        let k = (ram / self.ram) as usize;
        (self.num.inflate(k), self.den.inflate(k))
    }

    fn common(&self, other: &Self) -> (Poly, Poly, Poly, Poly, u32) {
        let ram = self.ram.lcm(&other.ram);
        let (an, ad) = self.rebased(ram);
        let (bn, bd) = other.rebased(ram);
        (an, ad, bn, bd, ram)
    }

    pub fn inv(&self) -> Result<Self, HyperrealError> {
        if self.is_zero() {
            return Err(HyperrealError::DivisionByZero);
        }
        Ok(Self::from_parts_unchecked(
            self.den.clone(),
            self.num.clone(),
            self.ram,
        ))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, HyperrealError> {
        Ok(self * &other.inv()?)
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, n: i32) -> Result<Self, HyperrealError> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let k = n.unsigned_abs();
        Ok(Self::from_parts_unchecked(
            base.num.pow(k),
            base.den.pow(k),
            base.ram,
        ))
    }

    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    /// Sign as `e -> 0+`: `-1`, `0` or `+1`.
    pub fn sign(&self) -> i32 {
        let c = self.num.lowest();
        if c.is_zero() {
            0
        } else if c.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Leading exponent in units of `e`: lowest exponent of the numerator
    /// minus lowest exponent of the denominator. `None` for zero.
    pub fn ord(&self) -> Option<BigRational> {
        let vn = self.num.valuation()? as i64;
        let vd = self.den.valuation().unwrap_or(0) as i64;
        Some(BigRational::new(
            BigInt::from(vn - vd),
            BigInt::from(self.ram),
        ))
    }

    pub fn classify(&self) -> Classification {
        match self.ord() {
            None => Classification::Zero,
            Some(o) if o.is_positive() => Classification::Infinitesimal,
            Some(o) if o.is_zero() => Classification::Appreciable,
            Some(_) => Classification::Infinite,
        }
    }

    /// Standard part: the rational infinitely close to a finite element,
    /// or the signed infinity of an infinite one.
    pub fn st(&self) -> StandardPart {
        match self.classify() {
            Classification::Zero | Classification::Infinitesimal => {
                StandardPart::Real(BigRational::zero())
            }
            // The denominator's lowest coefficient is 1.
            Classification::Appreciable => StandardPart::Real(self.num.lowest()),
            Classification::Infinite if self.sign() > 0 => StandardPart::PlusInfinity,
            Classification::Infinite => StandardPart::MinusInfinity,
        }
    }

    /// Split a finite element into its standard part and an infinitesimal.
    pub fn decompose(&self) -> Result<(BigRational, Hyperreal), HyperrealError> {
        match self.st() {
            StandardPart::Real(r) => {
                let h = self - &Hyperreal::from_rational(r.clone());
                debug_assert!(h.classify().is_infinitesimal());
                Ok((r, h))
            }
            _ => Err(HyperrealError::NotFinite),
        }
    }

    /// `a ≈ b`: the difference is zero or infinitesimal.
    pub fn infinitesimally_close(&self, other: &Self) -> bool {
        (self - other).classify().is_infinitesimal()
    }

    /// Exact `n`-th root, enlarging the ramification when needed.
    pub fn nth_root(&self, n: u32) -> Result<Self, HyperrealError> {
        root::nth_root(self, n)
    }

    /// Membership in the extension of a standard interval.
    pub fn in_star_interval(
        &self,
        lo: &BigRational,
        hi: &BigRational,
        kind: IntervalKind,
    ) -> Result<bool, HyperrealError> {
        if lo > hi {
            return Err(HyperrealError::EmptyInterval);
        }
        let lo = Hyperreal::from_rational(lo.clone());
        let hi = Hyperreal::from_rational(hi.clone());
        let above = match kind {
            IntervalKind::Closed | IntervalKind::RightOpen => *self >= lo,
            IntervalKind::Open | IntervalKind::LeftOpen => *self > lo,
        };
        let below = match kind {
            IntervalKind::Closed | IntervalKind::LeftOpen => *self <= hi,
            IntervalKind::Open | IntervalKind::RightOpen => *self < hi,
        };
        Ok(above && below)
    }

    fn exponent_label(&self, k: usize) -> String {
        let r = BigRational::new(BigInt::from(k), BigInt::from(self.ram));
        if r.is_one() {
            String::new()
        } else if r.is_integer() {
            format!("^{}", r.numer())
        } else {
            format!("^({}/{})", r.numer(), r.denom())
        }
    }
}

impl Default for Hyperreal {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for Hyperreal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = |k: usize| self.exponent_label(k);
        let num = self.num.render("e", &label);
        if self.den.is_one() {
            f.write_str(&num)
        } else {
            write!(f, "({})/({})", num, self.den.render("e", &label))
        }
    }
}

impl fmt::Debug for Hyperreal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hyperreal({self})")
    }
}

impl PartialOrd for Hyperreal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Hyperreal {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).sign().cmp(&0)
    }
}

impl Add for &Hyperreal {
    type Output = Hyperreal;
    fn add(self, rhs: &Hyperreal) -> Hyperreal {
        let (an, ad, bn, bd, ram) = self.common(rhs);
        Hyperreal::from_parts_unchecked(&(&an * &bd) + &(&bn * &ad), &ad * &bd, ram)
    }
}

impl Sub for &Hyperreal {
    type Output = Hyperreal;
    fn sub(self, rhs: &Hyperreal) -> Hyperreal {
        let (an, ad, bn, bd, ram) = self.common(rhs);
        Hyperreal::from_parts_unchecked(&(&an * &bd) - &(&bn * &ad), &ad * &bd, ram)
    }
}

impl Mul for &Hyperreal {
    type Output = Hyperreal;
    fn mul(self, rhs: &Hyperreal) -> Hyperreal {
        let (an, ad, bn, bd, ram) = self.common(rhs);
        Hyperreal::from_parts_unchecked(&an * &bn, &ad * &bd, ram)
    }
}

/// Panics on a zero divisor; use [`Hyperreal::checked_div`] to get an error instead.
impl Div for &Hyperreal {
    type Output = Hyperreal;
    fn div(self, rhs: &Hyperreal) -> Hyperreal {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &Hyperreal {
    type Output = Hyperreal;
    fn neg(self) -> Hyperreal {
        Hyperreal {
            num: -&self.num,
            den: self.den.clone(),
            ram: self.ram,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Hyperreal {
            type Output = Hyperreal;
            fn $m(self, rhs: Hyperreal) -> Hyperreal {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Hyperreal {
    type Output = Hyperreal;
    fn neg(self) -> Hyperreal {
        -&self
    }
}

impl From<BigRational> for Hyperreal {
    fn from(r: BigRational) -> Self {
        Self::from_rational(r)
    }
}

impl From<i64> for Hyperreal {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl std::str::FromStr for Hyperreal {
    type Err = HyperrealError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_hyperreal(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    fn e() -> Hyperreal {
        Hyperreal::epsilon()
    }

    fn h(s: &str) -> Hyperreal {
        s.parse().unwrap()
    }

    #[test]
    fn normalize_cancels_common_factor() {
        let x = Hyperreal::normalize(Poly::from_ints(&[0, 0, 2]), Poly::from_ints(&[0, 2]), 1);
        assert_eq!(x.unwrap(), e());
        let y = Hyperreal::normalize(Poly::from_ints(&[1, 1]), Poly::one(), 1).unwrap();
        assert_eq!(y.numerator(), &Poly::from_ints(&[1, 1]));
        assert_eq!(y.denominator(), &Poly::one());
    }

    #[test]
    fn normalize_minimizes_ramification() {
        // t^2 with t = e^(1/2) is e
        let x = Hyperreal::normalize(Poly::from_ints(&[0, 0, 1]), Poly::one(), 2).unwrap();
        assert_eq!(x, e());
        assert_eq!(x.ramification(), 1);
        // substitute back: (e^(1/2))^2 == e
        let half = Hyperreal::epsilon_pow(1, 2);
        assert_eq!(&half * &half, x);
    }

    #[test]
    fn normalize_rejects_zero_denominator() {
        assert_eq!(
            Hyperreal::normalize(Poly::one(), Poly::zero(), 1),
            Err(HyperrealError::ZeroDenominator)
        );
    }

    #[test]
    fn denominator_lowest_coefficient_is_one() {
        let x = h("(2+e)/(3*e+6*e^2)");
        assert_eq!(x.denominator().lowest(), int(1));
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&e() + &Hyperreal::one(), h("1+e"));
        // (2+e)(3-e) = 6 + e - e^2
        let p = &h("2+e") * &h("3-e");
        assert_eq!(p.numerator(), &Poly::from_ints(&[6, 1, -1]));
        assert_eq!(e().inv().unwrap(), h("1/e"));
        assert_eq!(Hyperreal::zero().inv(), Err(HyperrealError::DivisionByZero));
    }

    #[test]
    fn mixed_ramification_rebases() {
        let a = Hyperreal::epsilon_pow(1, 2);
        let b = Hyperreal::epsilon_pow(1, 3);
        let p = &a * &b;
        assert_eq!(p, Hyperreal::epsilon_pow(5, 6));
        assert_eq!(p.ramification(), 6);
    }

    #[test]
    fn order_examples() {
        assert_eq!(e().sign(), 1);
        assert!(e() < Hyperreal::from_rational(rat(1, 1_000_000)));
        let big = Hyperreal::from_rational(BigRational::from_integer(BigInt::from(10).pow(100)));
        assert!(e().inv().unwrap() > big);
        assert!(-e() < Hyperreal::zero());
    }

    #[test]
    fn classification_examples() {
        assert_eq!(e().classify(), Classification::Infinitesimal);
        assert_eq!(h("(2+e)/(1+3*e)").classify(), Classification::Appreciable);
        assert_eq!(h("1/e").classify(), Classification::Infinite);
        assert_eq!(Hyperreal::zero().classify(), Classification::Zero);
        assert_eq!(h("(2+e)/(1+3*e)").ord(), Some(int(0)));
        assert_eq!(h("e^(3/2)").ord(), Some(rat(3, 2)));
    }

    #[test]
    fn standard_part_examples() {
        assert_eq!(h("(2+e)/(1+3*e)").st(), StandardPart::Real(int(2)));
        assert_eq!(h("e^2-5").st(), StandardPart::Real(int(-5)));
        assert_eq!(h("1/e").st(), StandardPart::PlusInfinity);
        assert_eq!(h("-1/e").st(), StandardPart::MinusInfinity);
        assert_eq!(h("e").st(), StandardPart::Real(int(0)));
    }

    #[test]
    fn decomposition_examples() {
        let (r, inf) = h("3+e-e^2").decompose().unwrap();
        assert_eq!(r, int(3));
        assert_eq!(inf, h("e-e^2"));
        let (r, inf) = e().decompose().unwrap();
        assert_eq!(r, int(0));
        assert_eq!(inf, e());
        assert_eq!(h("1/e").decompose(), Err(HyperrealError::NotFinite));
    }

    #[test]
    fn closeness_examples() {
        assert!(h("1+e").infinitesimally_close(&Hyperreal::one()));
        assert!(!Hyperreal::one().infinitesimally_close(&Hyperreal::from_int(2)));
        // the difference is 7, which is appreciable
        let a = h("1/e");
        let b = h("1/e+7");
        assert_eq!((&b - &a).classify(), Classification::Appreciable);
        assert!(!a.infinitesimally_close(&b));
    }

    #[test]
    fn interval_examples() {
        let (zero, one) = (int(0), int(1));
        assert!(e()
            .in_star_interval(&zero, &one, IntervalKind::Closed)
            .unwrap());
        assert!(!h("1+e")
            .in_star_interval(&zero, &one, IntervalKind::Closed)
            .unwrap());
        assert!(!Hyperreal::zero()
            .in_star_interval(&zero, &one, IntervalKind::Open)
            .unwrap());
        assert!(Hyperreal::zero()
            .in_star_interval(&zero, &one, IntervalKind::RightOpen)
            .unwrap());
        assert!(!Hyperreal::one()
            .in_star_interval(&zero, &one, IntervalKind::RightOpen)
            .unwrap());
        assert_eq!(
            e().in_star_interval(&one, &zero, IntervalKind::Closed),
            Err(HyperrealError::EmptyInterval)
        );
    }

    #[test]
    fn display_round_trips() {
        for s in ["(2+e)/(1+3*e)", "e^(1/2)", "1/2-e^2", "(1)/(e)", "-e^(3/2)"] {
            let x = h(s);
            assert_eq!(h(&x.to_string()), x, "{s} -> {x}");
        }
        assert_eq!(h("(2+e)/(1+3*e)").to_string(), "(2+e)/(1+3*e)");
        assert_eq!(h("e^(1/2)").to_string(), "e^(1/2)");
        assert_eq!(h("1/e").to_string(), "(1)/(e)");
    }
}
