use num_rational::BigRational;

use super::{Germ, GermError, PeriodicGerm, RationalGerm};
use crate::expr::{parse_expr, Cursor, ExprAlgebra};

impl ExprAlgebra for RationalGerm {
    type Error = GermError;

    fn constant(c: &BigRational) -> Self {
        RationalGerm::constant(c.clone())
    }

    fn add(self, rhs: Self) -> Self {
        RationalGerm::add(&self, &rhs)
    }

    fn sub(self, rhs: Self) -> Self {
        RationalGerm::sub(&self, &rhs)
    }

    fn mul(self, rhs: Self) -> Self {
        RationalGerm::mul(&self, &rhs)
    }

    fn div(self, rhs: Self) -> Result<Self, GermError> {
        if rhs.is_zero() {
            return Err(GermError::ZeroDenominator);
        }
        Ok(RationalGerm::mul(&self, &rhs.inv()?))
    }

    fn neg(self) -> Self {
        RationalGerm::neg(&self)
    }

    fn pow(self, p: i64, q: u32) -> Result<Self, GermError> {
        if q != 1 {
            return Err(GermError::FractionalPower);
        }
        RationalGerm::pow(&self, p)
    }
}

fn rational_list(cur: &mut Cursor) -> Result<Vec<BigRational>, GermError> {
    cur.expect_sym("[")?;
    let mut out = Vec::new();
    if !cur.eat_sym("]") {
        loop {
            out.push(cur.rational_literal()?);
            if cur.eat_sym("]") {
                break;
            }
            cur.expect_sym(",")?;
        }
    }
    Ok(out)
}

/// Parse `rf(<expression in n>)`, `ep([pre...];[period...])`, or a bare
/// rational (the embedded constant).
pub fn parse_germ(src: &str) -> Result<Germ, GermError> {
    let mut cur = Cursor::new(src)?;
    let germ = if cur.eat_word("rf") {
        cur.expect_sym("(")?;
        let e = parse_expr(&mut cur)?;
        cur.expect_sym(")")?;
        let r: RationalGerm = e.eval(&|name: &str| match name {
            "n" => Ok(RationalGerm::n()),
            other => Err(GermError::UnboundVariable(other.to_string())),
        })?;
        Germ::RationalFunctionOfN(r)
    } else if cur.eat_word("ep") {
        cur.expect_sym("(")?;
        let pre = rational_list(&mut cur)?;
        cur.expect_sym(";")?;
        let period = rational_list(&mut cur)?;
        cur.expect_sym(")")?;
        Germ::EventuallyPeriodic(PeriodicGerm::new(pre, period)?)
    } else {
        Germ::embed_constant(cur.rational_literal()?)
    };
    cur.expect_end()?;
    Ok(germ)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};

    #[test]
    fn textual_forms() {
        let a = parse_germ("rf((2*n+1)/(n+3))").unwrap();
        assert_eq!(a.value_at(1), Some(rat(3, 4)));
        let b = parse_germ("ep([1,2];[0,1])").unwrap();
        assert_eq!(
            (0..5).map(|k| b.value_at(k).unwrap()).collect::<Vec<_>>(),
            vec![int(1), int(2), int(0), int(1), int(0)]
        );
        assert_eq!(
            parse_germ("-3/2").unwrap(),
            Germ::embed_constant(rat(-3, 2))
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(parse_germ("rf(1/(n-n))"), Err(GermError::ZeroDenominator));
        assert_eq!(parse_germ("rf(n^(1/2))"), Err(GermError::FractionalPower));
        assert_eq!(parse_germ("ep([1];[])"), Err(GermError::EmptyPeriod));
        assert_eq!(
            parse_germ("rf(m)"),
            Err(GermError::UnboundVariable("m".into()))
        );
        assert!(matches!(
            parse_germ("ep([1;[2])"),
            Err(GermError::Parse { .. })
        ));
        assert!(matches!(
            parse_germ("rf(n) x"),
            Err(GermError::Parse { .. })
        ));
    }
}
