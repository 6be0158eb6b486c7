//! Dense univariate polynomials with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Shorthand for building a rational from small integers.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Polynomial stored lowest degree first. The coefficient vector never
/// has a trailing zero, so the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn x() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn lowest(&self) -> BigRational {
        self.valuation()
            .map(|v| self.coeffs[v].clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&self.leading().recip())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..n {
            out = &out * self;
        }
        out
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    /// Substitute `x -> x^k`.
    pub fn inflate(&self, k: usize) -> Self {
        if k == 1 || self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigRational::zero(); (self.coeffs.len() - 1) * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Self::from_coeffs(coeffs)
    }

    /// Inverse of [`Poly::inflate`]; every nonzero exponent must be divisible by `k`.
    pub fn deflate(&self, k: usize) -> Self {
        if k == 1 {
            return self.clone();
        }
        debug_assert_eq!(self.exponent_gcd() % k, 0);
        Self::from_coeffs(self.coeffs.iter().step_by(k).cloned().collect())
    }

    /// gcd of exponents carrying nonzero coefficients (0 for constants and zero).
    pub fn exponent_gcd(&self) -> usize {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .fold(0usize, |g, (k, _)| g.gcd(&k))
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::from_coeffs(coeffs)
    }

    /// Divide by `x^k`; the low `k` coefficients must be zero.
    pub fn shift_down(&self, k: usize) -> Self {
        debug_assert!(self.coeffs.iter().take(k).all(Zero::is_zero));
        Self::from_coeffs(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// Coefficients reversed with respect to degree `d` (`x^d p(1/x)`).
    pub fn reversed(&self, d: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); d + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[d - k] = c.clone();
        }
        Self::from_coeffs(coeffs)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.degree().unwrap();
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Exact quotient; debug-asserts a zero remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun's square-free decomposition of a nonzero polynomial:
    /// `p = c * f_1 * f_2^2 * ... * f_k^k` with each `f_i` monic,
    /// square-free and pairwise coprime. Returns `(c, [f_1, ..., f_k])`.
    pub fn square_free(&self) -> (BigRational, Vec<Poly>) {
        assert!(!self.is_zero());
        let c = self.leading();
        let p = self.monic();
        if p.is_constant() {
            return (c, Vec::new());
        }
        let dp = p.derivative();
        let a = p.gcd(&dp);
        let mut b = p.div_exact(&a);
        let mut d = dp.div_exact(&a) - b.derivative();
        let mut factors = Vec::new();
        loop {
            let f = b.gcd(&d);
            b = b.div_exact(&f);
            d = d.div_exact(&f) - b.derivative();
            factors.push(f);
            if b.is_constant() {
                break;
            }
        }
        while factors.last().is_some_and(|f| f.is_constant()) {
            factors.pop();
        }
        (c, factors)
    }

    /// Sign of `p(x)` as `x -> +inf`.
    pub fn sign_at_infinity(&self) -> i32 {
        if self.is_zero() {
            0
        } else if self.leading().is_positive() {
            1
        } else {
            -1
        }
    }

    /// Cauchy bound: every real root has absolute value below the result.
    pub fn root_bound(&self) -> BigRational {
        match self.degree() {
            None | Some(0) => BigRational::zero(),
            Some(_) => {
                let lead = self.leading().abs();
                let m = self
                    .coeffs
                    .iter()
                    .take(self.coeffs.len() - 1)
                    .map(|c| c.abs() / &lead)
                    .fold(BigRational::zero(), |m, c| if c > m { c } else { m });
                m + BigRational::one()
            }
        }
    }

    /// Render with the given variable name, highest degree last
    /// (`2+3*e-e^2`). `exp_fmt` renders an exponent.
    pub fn render(&self, var: &str, exp_fmt: &dyn Fn(usize) -> String) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let power = match k {
                0 => None,
                _ => Some(format!("{var}{}", exp_fmt(k))),
            };
            match (power, a.is_one()) {
                (None, _) => out.push_str(&render_rational(&a)),
                (Some(p), true) => out.push_str(&p),
                (Some(p), false) => {
                    out.push_str(&render_rational(&a));
                    out.push('*');
                    out.push_str(&p);
                }
            }
        }
        out
    }

    /// Number of terms with nonzero coefficients.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

/// Render a rational as `3`, `1/2`, `-7/3`.
pub fn render_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}",
            self.render("x", &|k| if k == 1 {
                String::new()
            } else {
                format!("^{k}")
            })
        )
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_gcd() {
        // (x^2 - 1) = (x - 1)(x + 1)
        let p = Poly::from_ints(&[-1, 0, 1]);
        let q = Poly::from_ints(&[-1, 1]);
        let (quot, rem) = p.div_rem(&q);
        assert_eq!(quot, Poly::from_ints(&[1, 1]));
        assert!(rem.is_zero());
        let r = Poly::from_ints(&[1, 2, 1]); // (x+1)^2
        assert_eq!(p.gcd(&r), Poly::from_ints(&[1, 1]));
        assert_eq!(p.gcd(&Poly::from_ints(&[2])), Poly::one());
    }

    #[test]
    fn square_free_split() {
        // 3 (x+1) (x-2)^2
        let x1 = Poly::from_ints(&[1, 1]);
        let x2 = Poly::from_ints(&[-2, 1]);
        let p = (&x1 * &x2.pow(2)).scale(&int(3));
        let (c, fs) = p.square_free();
        assert_eq!(c, int(3));
        assert_eq!(fs, vec![x1, x2]);
        let (c, fs) = Poly::from_ints(&[5]).square_free();
        assert_eq!(c, int(5));
        assert!(fs.is_empty());
    }

    #[test]
    fn inflate_deflate() {
        let p = Poly::from_ints(&[1, 2, 3]);
        let q = p.inflate(3);
        assert_eq!(q.exponent_gcd(), 3);
        assert_eq!(q.deflate(3), p);
        assert_eq!(Poly::from_ints(&[0, 0, 4]).exponent_gcd(), 2);
    }

    #[test]
    fn render_terms() {
        let p = Poly::from_coeffs(vec![int(2), int(1), int(-1), rat(1, 2)]);
        let s = p.render("e", &|k| {
            if k == 1 {
                String::new()
            } else {
                format!("^{k}")
            }
        });
        assert_eq!(s, "2+e-e^2+1/2*e^3");
    }
}
