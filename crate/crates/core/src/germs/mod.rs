//! Sequence germs: equivalence classes of rational sequences modulo
//! almost-everywhere agreement, restricted to two decidable classes.
//!
//! Sequences are indexed by `n = 0, 1, 2, ...`. A [`Germ`] is either a
//! rational function of `n` or an eventually periodic list. Comparisons
//! return an [`AeVerdict`]: an index set that is cofinite, finite, or
//! neither (in which case the answer depends on the chosen ultrafilter).
//!
//! Constant germs are class-neutral: a constant of either class adapts to
//! the class of the other operand. All other cross-class combinations fail
//! with [`GermError::MixedClasses`].

use std::fmt;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::hyperreal::{Classification, Hyperreal, StandardPart};
use crate::poly::{render_rational, Poly};

pub mod los;
mod parse;

pub use los::{los_check_qf, los_pointwise, parse_qf, QfFormula, Relation};
pub use parse::parse_germ;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GermError {
    #[error("germs of different classes cannot be combined")]
    MixedClasses,
    #[error("divisor is zero almost everywhere")]
    AlmostEverywhereZeroDivisor,
    #[error("divisor vanishes on a periodic index set that is neither finite nor cofinite")]
    UltrafilterDependentZeroDivisor,
    #[error("denominator is the zero polynomial")]
    ZeroDenominator,
    #[error("period must be nonempty")]
    EmptyPeriod,
    #[error("formula contains a quantifier")]
    QuantifierPresent,
    #[error("no germ assigned to '{0}'")]
    UnboundVariable(String),
    #[error("fractional powers are not supported on germs")]
    FractionalPower,
    #[error("parse error at {pos}: {message}")]
    Parse { pos: usize, message: String },
}

impl From<crate::expr::SyntaxError> for GermError {
    fn from(e: crate::expr::SyntaxError) -> Self {
        GermError::Parse {
            pos: e.pos,
            message: e.message,
        }
    }
}

/// Three-valued almost-everywhere truth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AeVerdict {
    TrueAe,
    FalseAe,
    UltrafilterDependent,
}

impl AeVerdict {
    pub fn negate(self) -> Self {
        match self {
            AeVerdict::TrueAe => AeVerdict::FalseAe,
            AeVerdict::FalseAe => AeVerdict::TrueAe,
            AeVerdict::UltrafilterDependent => AeVerdict::UltrafilterDependent,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            AeVerdict::TrueAe => "true-ae",
            AeVerdict::FalseAe => "false-ae",
            AeVerdict::UltrafilterDependent => "ultrafilter-dependent",
        }
    }

    /// Verdict for a residue-indexed truth pattern.
    pub fn from_pattern(pattern: &[bool]) -> Self {
        if pattern.iter().all(|b| *b) {
            AeVerdict::TrueAe
        } else if pattern.iter().any(|b| *b) {
            AeVerdict::UltrafilterDependent
        } else {
            AeVerdict::FalseAe
        }
    }
}

impl fmt::Display for AeVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `num(n) / den(n)` in lowest terms with `den` monic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalGerm {
    num: Poly,
    den: Poly,
}

impl RationalGerm {
    pub fn new(num: Poly, den: Poly) -> Result<Self, GermError> {
        if den.is_zero() {
            return Err(GermError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(Self::constant(BigRational::zero()));
        }
        let g = num.gcd(&den);
        let num = num.div_exact(&g);
        let den = den.div_exact(&g);
        let lead = den.leading();
        Ok(RationalGerm {
            num: num.scale(&lead.recip()),
            den: den.monic(),
        })
    }

    pub fn constant(c: BigRational) -> Self {
        RationalGerm {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    /// The identity sequence `n`.
    pub fn n() -> Self {
        RationalGerm {
            num: Poly::x(),
            den: Poly::one(),
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        (self.den.is_one() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn value_at(&self, n: u64) -> Option<BigRational> {
        let x = BigRational::from_integer(n.into());
        let d = self.den.eval(&x);
        (!d.is_zero()).then(|| self.num.eval(&x) / d)
    }

    /// First index from which the germ is defined and its sign is constant.
    pub fn stabilization_index(&self) -> u64 {
        let b = self.num.root_bound().max(self.den.root_bound());
        b.ceil().to_integer().to_u64().unwrap_or(u64::MAX)
    }

    /// Eventual sign (`den` is monic, so only the numerator matters).
    pub fn eventual_sign(&self) -> i32 {
        self.num.sign_at_infinity()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(
            &(&self.num * &o.den) + &(&o.num * &self.den),
            &self.den * &o.den,
        )
        .unwrap()
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.num, &self.den * &o.den).unwrap()
    }

    pub fn neg(&self) -> Self {
        RationalGerm {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<Self, GermError> {
        if self.is_zero() {
            return Err(GermError::AlmostEverywhereZeroDivisor);
        }
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, k: i64) -> Result<Self, GermError> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let e = u32::try_from(k.unsigned_abs()).map_err(|_| GermError::Parse {
            pos: 0,
            message: "exponent too large".into(),
        })?;
        Ok(RationalGerm {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    /// Limit behaviour as `n -> inf`.
    pub fn classify(&self) -> (Classification, StandardPart) {
        if self.is_zero() {
            return (
                Classification::Zero,
                StandardPart::Real(BigRational::zero()),
            );
        }
        let dn = self.num.degree().unwrap();
        let dd = self.den.degree().unwrap();
        match dn.cmp(&dd) {
            std::cmp::Ordering::Less => (
                Classification::Infinitesimal,
                StandardPart::Real(BigRational::zero()),
            ),
            std::cmp::Ordering::Equal => (
                Classification::Appreciable,
                StandardPart::Real(self.num.leading()),
            ),
            std::cmp::Ordering::Greater => (
                Classification::Infinite,
                if self.num.leading().is_positive() {
                    StandardPart::PlusInfinity
                } else {
                    StandardPart::MinusInfinity
                },
            ),
        }
    }

    /// Substitute `n = 1/e`.
    pub fn to_hyperreal(&self) -> Hyperreal {
        let dp = self.num.degree().unwrap_or(0);
        let dq = self.den.degree().unwrap_or(0);
        let num = self.num.reversed(dp).shift_up(dq);
        let den = self.den.reversed(dq).shift_up(dp);
        Hyperreal::normalize(num, den, 1).expect("nonzero denominator")
    }
}

impl fmt::Display for RationalGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pw = |k: usize| {
            if k == 1 {
                String::new()
            } else {
                format!("^{k}")
            }
        };
        let num = self.num.render("n", &pw);
        if self.den.is_one() {
            write!(f, "rf({num})")
        } else {
            write!(f, "rf(({num})/({}))", self.den.render("n", &pw))
        }
    }
}

/// `preperiod ++ period ++ period ++ ...`, with both parts minimal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PeriodicGerm {
    preperiod: Vec<BigRational>,
    period: Vec<BigRational>,
}

impl PeriodicGerm {
    pub fn new(preperiod: Vec<BigRational>, period: Vec<BigRational>) -> Result<Self, GermError> {
        if period.is_empty() {
            return Err(GermError::EmptyPeriod);
        }
        let mut preperiod = preperiod;
        let mut period = period;
        let p = period.len();
        if let Some(d) = (1..=p)
            .filter(|d| p.is_multiple_of(*d))
            .find(|&d| (0..p).all(|i| period[i] == period[i % d]))
        {
            period.truncate(d);
        }
        while preperiod.last().is_some() && preperiod.last() == period.last() {
            preperiod.pop();
            period.rotate_right(1);
        }
        Ok(PeriodicGerm { preperiod, period })
    }

    pub fn constant(c: BigRational) -> Self {
        PeriodicGerm {
            preperiod: Vec::new(),
            period: vec![c],
        }
    }

    pub fn preperiod(&self) -> &[BigRational] {
        &self.preperiod
    }

    pub fn period(&self) -> &[BigRational] {
        &self.period
    }

    pub fn value_at(&self, n: u64) -> BigRational {
        let n = n as usize;
        let l = self.preperiod.len();
        if n < l {
            self.preperiod[n].clone()
        } else {
            self.period[(n - l) % self.period.len()].clone()
        }
    }

    /// Tail value at absolute residue `r` modulo `m`, where `m` is a multiple
    /// of the period length.
    pub fn tail_residue(&self, r: usize, m: usize) -> BigRational {
        debug_assert_eq!(m % self.period.len(), 0);
        let l = self.preperiod.len();
        let k = l.div_ceil(m) * m + r;
        self.value_at(k as u64)
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        (self.period.len() == 1).then(|| self.period[0].clone())
    }

    fn zip_with(&self, o: &Self, f: impl Fn(&BigRational, &BigRational) -> BigRational) -> Self {
        let l = self.preperiod.len().max(o.preperiod.len());
        let p = self.period.len().lcm(&o.period.len());
        let vals: Vec<BigRational> = (0..(l + p) as u64)
            .map(|k| f(&self.value_at(k), &o.value_at(k)))
            .collect();
        Self::new(vals[..l].to_vec(), vals[l..].to_vec()).unwrap()
    }

    fn map(&self, f: impl Fn(&BigRational) -> BigRational) -> Self {
        Self::new(
            self.preperiod.iter().map(&f).collect(),
            self.period.iter().map(&f).collect(),
        )
        .unwrap()
    }

    pub fn inv(&self) -> Result<Self, GermError> {
        let zeros = self.period.iter().filter(|v| v.is_zero()).count();
        if zeros == self.period.len() {
            Err(GermError::AlmostEverywhereZeroDivisor)
        } else if zeros > 0 {
            Err(GermError::UltrafilterDependentZeroDivisor)
        } else {
            Ok(self.map(|v| if v.is_zero() { v.clone() } else { v.recip() }))
        }
    }

    /// Signs of the tail indexed by absolute residue modulo the period.
    pub fn sign_pattern(&self) -> Vec<i32> {
        let m = self.period.len();
        (0..m)
            .map(|r| {
                let v = self.tail_residue(r, m);
                if v.is_zero() {
                    0
                } else if v.is_positive() {
                    1
                } else {
                    -1
                }
            })
            .collect()
    }
}

impl fmt::Display for PeriodicGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[BigRational]| v.iter().map(render_rational).collect::<Vec<_>>().join(",");
        write!(
            f,
            "ep([{}];[{}])",
            join(&self.preperiod),
            join(&self.period)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Germ {
    RationalFunctionOfN(RationalGerm),
    EventuallyPeriodic(PeriodicGerm),
}

/// Two germs brought into a common class.
enum Aligned {
    Rf(RationalGerm, RationalGerm),
    Ep(PeriodicGerm, PeriodicGerm),
}

/// Result of [`Germ::classify`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GermClassification {
    Definite {
        class: Classification,
        st: StandardPart,
    },
    /// Eventually periodic germ that is not a.e. constant: one entry per
    /// residue class of the index modulo the period.
    PerResidue(Vec<(Classification, BigRational)>),
}

impl Germ {
    pub fn embed_constant(c: BigRational) -> Self {
        Germ::EventuallyPeriodic(PeriodicGerm::constant(c))
    }

    pub fn rational_function(num: Poly, den: Poly) -> Result<Self, GermError> {
        RationalGerm::new(num, den).map(Germ::RationalFunctionOfN)
    }

    pub fn eventually_periodic(
        preperiod: Vec<BigRational>,
        period: Vec<BigRational>,
    ) -> Result<Self, GermError> {
        PeriodicGerm::new(preperiod, period).map(Germ::EventuallyPeriodic)
    }

    pub fn n() -> Self {
        Germ::RationalFunctionOfN(RationalGerm::n())
    }

    pub fn class_name(&self) -> &'static str {
        match self {
            Germ::RationalFunctionOfN(_) => "rational-function",
            Germ::EventuallyPeriodic(_) => "eventually-periodic",
        }
    }

    /// The constant this germ equals almost everywhere, if any.
    pub fn ae_constant(&self) -> Option<BigRational> {
        match self {
            Germ::RationalFunctionOfN(r) => r.as_constant(),
            Germ::EventuallyPeriodic(p) => p.as_constant(),
        }
    }

    pub fn value_at(&self, n: u64) -> Option<BigRational> {
        match self {
            Germ::RationalFunctionOfN(r) => r.value_at(n),
            Germ::EventuallyPeriodic(p) => Some(p.value_at(n)),
        }
    }

    fn align(&self, other: &Self) -> Result<Aligned, GermError> {
        use Germ::*;
        Ok(match (self, other) {
            (RationalFunctionOfN(a), RationalFunctionOfN(b)) => Aligned::Rf(a.clone(), b.clone()),
            (EventuallyPeriodic(a), EventuallyPeriodic(b)) => Aligned::Ep(a.clone(), b.clone()),
            (RationalFunctionOfN(a), EventuallyPeriodic(b)) => {
                if let Some(c) = b.as_constant() {
                    Aligned::Rf(a.clone(), RationalGerm::constant(c))
                } else if let Some(c) = a.as_constant() {
                    Aligned::Ep(PeriodicGerm::constant(c), b.clone())
                } else {
                    return Err(GermError::MixedClasses);
                }
            }
            (EventuallyPeriodic(_), RationalFunctionOfN(_)) => match other.align(self)? {
                Aligned::Rf(b, a) => Aligned::Rf(a, b),
                Aligned::Ep(b, a) => Aligned::Ep(a, b),
            },
        })
    }

    pub fn add(&self, o: &Self) -> Result<Self, GermError> {
        Ok(match self.align(o)? {
            Aligned::Rf(a, b) => Germ::RationalFunctionOfN(a.add(&b)),
            Aligned::Ep(a, b) => Germ::EventuallyPeriodic(a.zip_with(&b, |x, y| x + y)),
        })
    }

    pub fn sub(&self, o: &Self) -> Result<Self, GermError> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Result<Self, GermError> {
        Ok(match self.align(o)? {
            Aligned::Rf(a, b) => Germ::RationalFunctionOfN(a.mul(&b)),
            Aligned::Ep(a, b) => Germ::EventuallyPeriodic(a.zip_with(&b, |x, y| x * y)),
        })
    }

    pub fn neg(&self) -> Self {
        match self {
            Germ::RationalFunctionOfN(r) => Germ::RationalFunctionOfN(r.neg()),
            Germ::EventuallyPeriodic(p) => Germ::EventuallyPeriodic(p.map(|v| -v)),
        }
    }

    pub fn inv(&self) -> Result<Self, GermError> {
        Ok(match self {
            Germ::RationalFunctionOfN(r) => Germ::RationalFunctionOfN(r.inv()?),
            Germ::EventuallyPeriodic(p) => Germ::EventuallyPeriodic(p.inv()?),
        })
    }

    pub fn div(&self, o: &Self) -> Result<Self, GermError> {
        self.align(o)?;
        self.mul(&o.inv()?)
    }

    pub fn pow(&self, k: i64) -> Result<Self, GermError> {
        match self {
            Germ::RationalFunctionOfN(r) => Ok(Germ::RationalFunctionOfN(r.pow(k)?)),
            Germ::EventuallyPeriodic(p) => {
                let base = if k < 0 { p.inv()? } else { p.clone() };
                let e = k.unsigned_abs();
                Ok(Germ::EventuallyPeriodic(
                    base.map(|v| num_traits::pow(v.clone(), e as usize)),
                ))
            }
        }
    }

    /// Eventual sign pattern of `self`, indexed by residue; length 1 for
    /// rational functions.
    pub fn sign_pattern(&self) -> Vec<i32> {
        match self {
            Germ::RationalFunctionOfN(r) => vec![r.eventual_sign()],
            Germ::EventuallyPeriodic(p) => p.sign_pattern(),
        }
    }

    pub fn ae_equal(&self, o: &Self) -> Result<AeVerdict, GermError> {
        self.ae_compare(o, Relation::Eq)
    }

    pub fn ae_less(&self, o: &Self) -> Result<AeVerdict, GermError> {
        self.ae_compare(o, Relation::Lt)
    }

    pub fn ae_compare(&self, o: &Self, rel: Relation) -> Result<AeVerdict, GermError> {
        let d = self.sub(o)?;
        let pattern: Vec<bool> = d.sign_pattern().into_iter().map(|s| rel.holds(s)).collect();
        Ok(AeVerdict::from_pattern(&pattern))
    }

    pub fn classify(&self) -> GermClassification {
        match self {
            Germ::RationalFunctionOfN(r) => {
                let (class, st) = r.classify();
                GermClassification::Definite { class, st }
            }
            Germ::EventuallyPeriodic(p) => {
                let class_of = |v: &BigRational| {
                    if v.is_zero() {
                        Classification::Zero
                    } else {
                        Classification::Appreciable
                    }
                };
                match p.as_constant() {
                    Some(c) => GermClassification::Definite {
                        class: class_of(&c),
                        st: StandardPart::Real(c),
                    },
                    None => {
                        let m = p.period.len();
                        GermClassification::PerResidue(
                            (0..m)
                                .map(|r| {
                                    let v = p.tail_residue(r, m);
                                    (class_of(&v), v)
                                })
                                .collect(),
                        )
                    }
                }
            }
        }
    }

    /// Image under `n -> 1/e`. Eventually periodic germs are accepted only
    /// when a.e. constant.
    pub fn to_hyperreal(&self) -> Result<Hyperreal, GermError> {
        match self {
            Germ::RationalFunctionOfN(r) => Ok(r.to_hyperreal()),
            Germ::EventuallyPeriodic(p) => p
                .as_constant()
                .map(Hyperreal::from_rational)
                .ok_or(GermError::MixedClasses),
        }
    }
}

impl fmt::Display for Germ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Germ::RationalFunctionOfN(r) => r.fmt(f),
            Germ::EventuallyPeriodic(p) => p.fmt(f),
        }
    }
}

impl std::str::FromStr for Germ {
    type Err = GermError;

    fn from_str(s: &str) -> Result<Self, GermError> {
        parse_germ(s)
    }
}

impl From<RationalGerm> for Germ {
    fn from(r: RationalGerm) -> Self {
        Germ::RationalFunctionOfN(r)
    }
}

impl From<PeriodicGerm> for Germ {
    fn from(p: PeriodicGerm) -> Self {
        Germ::EventuallyPeriodic(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    fn g(s: &str) -> Germ {
        s.parse().unwrap()
    }

    fn ep(pre: &[i64], period: &[i64]) -> Germ {
        Germ::eventually_periodic(
            pre.iter().map(|&v| int(v)).collect(),
            period.iter().map(|&v| int(v)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn embedding_constants() {
        for c in [int(5), int(0), rat(-3, 2)] {
            let e = Germ::embed_constant(c.clone());
            match &e {
                Germ::EventuallyPeriodic(p) => {
                    assert!(p.preperiod().is_empty());
                    assert_eq!(p.period(), std::slice::from_ref(&c));
                }
                _ => panic!("constant should be eventually periodic"),
            }
            assert_eq!(e.ae_constant(), Some(c));
        }
    }

    #[test]
    fn periodic_normalization() {
        let a = ep(&[3, 1, 2], &[1, 2, 1, 2]);
        assert_eq!(a.to_string(), "ep([3];[1,2])");
        assert_eq!(ep(&[0, 0], &[0]), ep(&[], &[0]));
        assert_eq!(ep(&[5, 1], &[0, 1]), ep(&[5], &[1, 0]));
        assert!(matches!(
            Germ::eventually_periodic(vec![], vec![]),
            Err(GermError::EmptyPeriod)
        ));
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(g("rf(1/n)").add(&g("rf(1)")).unwrap(), g("rf((n+1)/n)"));
        let prod = ep(&[], &[0, 1]).mul(&ep(&[], &[1, 0])).unwrap();
        assert_eq!(prod, Germ::embed_constant(int(0)));
        assert_eq!(
            ep(&[], &[0, 1]).inv(),
            Err(GermError::UltrafilterDependentZeroDivisor)
        );
        assert_eq!(
            ep(&[1], &[0]).inv(),
            Err(GermError::AlmostEverywhereZeroDivisor)
        );
        assert_eq!(
            g("rf(0)").inv(),
            Err(GermError::AlmostEverywhereZeroDivisor)
        );
        assert_eq!(
            ep(&[0], &[2, 4]).inv().unwrap().to_string(),
            "ep([0];[1/2,1/4])"
        );
    }

    #[test]
    fn mixed_classes_rejected_unless_constant() {
        assert_eq!(
            g("rf(n)").add(&ep(&[], &[0, 1])),
            Err(GermError::MixedClasses)
        );
        assert_eq!(
            g("rf(n)").ae_less(&ep(&[], &[0, 1])),
            Err(GermError::MixedClasses)
        );
        assert_eq!(g("rf(2)").add(&ep(&[], &[0, 1])).unwrap(), ep(&[], &[2, 3]));
        assert_eq!(g("rf(n)").add(&ep(&[7], &[1])).unwrap(), g("rf(n+1)"));
    }

    #[test]
    fn ae_verdicts() {
        assert_eq!(
            g("rf((n^2-1)/(n-1))").ae_equal(&g("rf(n+1)")).unwrap(),
            AeVerdict::TrueAe
        );
        assert_eq!(
            ep(&[], &[0, 1])
                .ae_equal(&Germ::embed_constant(int(0)))
                .unwrap(),
            AeVerdict::UltrafilterDependent
        );
        for r in [rat(1, 1000), rat(1, 2), int(3)] {
            assert_eq!(
                g("rf(1/n)").ae_less(&Germ::embed_constant(r)).unwrap(),
                AeVerdict::TrueAe
            );
        }
        assert_eq!(
            g("rf(n)").ae_less(&g("rf(1/n)")).unwrap(),
            AeVerdict::FalseAe
        );
        assert_eq!(
            ep(&[9], &[1]).ae_equal(&g("rf(1)")).unwrap(),
            AeVerdict::TrueAe
        );
    }

    #[test]
    fn classification_examples() {
        let def = |class, st| GermClassification::Definite { class, st };
        assert_eq!(
            g("rf(1/n)").classify(),
            def(Classification::Infinitesimal, StandardPart::Real(int(0)))
        );
        assert_eq!(
            g("rf((2*n+1)/(n+3))").classify(),
            def(Classification::Appreciable, StandardPart::Real(int(2)))
        );
        assert_eq!(
            g("rf(n)").classify(),
            def(Classification::Infinite, StandardPart::PlusInfinity)
        );
        assert_eq!(
            ep(&[], &[0, 1]).classify(),
            GermClassification::PerResidue(vec![
                (Classification::Zero, int(0)),
                (Classification::Appreciable, int(1)),
            ])
        );
    }

    #[test]
    fn residues_are_absolute() {
        // tail starts at index 1, so index 2k holds 1 and index 2k+1 holds 0
        let a = ep(&[5], &[0, 1]);
        assert_eq!(a.value_at(2), Some(int(1)));
        assert_eq!(a.sign_pattern(), vec![1, 0]);
    }

    #[test]
    fn hyperreal_images() {
        let e = Hyperreal::epsilon();
        assert_eq!(
            g("rf((n^2+1)/n^2)").to_hyperreal().unwrap(),
            &Hyperreal::one() + &(&e * &e)
        );
        assert_eq!(g("rf(1/n)").to_hyperreal().unwrap(), e);
        assert_eq!(g("rf(n)").to_hyperreal().unwrap(), e.inv().unwrap());
        assert_eq!(
            ep(&[], &[0, 1]).to_hyperreal(),
            Err(GermError::MixedClasses)
        );
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "rf((1+2*n)/(3+n))",
            "rf(-1/2+n^2)",
            "ep([];[0,1])",
            "ep([1,-2];[3/4])",
        ] {
            assert_eq!(g(s).to_string(), s);
        }
    }

    #[test]
    fn verdict_serialization() {
        assert_eq!(
            serde_json::to_string(&AeVerdict::TrueAe).unwrap(),
            "\"true-ae\""
        );
        assert_eq!(
            serde_json::to_string(&AeVerdict::UltrafilterDependent).unwrap(),
            "\"ultrafilter-dependent\""
        );
        assert_eq!(AeVerdict::FalseAe.to_string(), "false-ae");
    }
}
