use num_rational::BigRational;

use super::{Hyperreal, HyperrealError};
use crate::expr::{self, ExprAlgebra, SyntaxError};

impl From<SyntaxError> for HyperrealError {
    fn from(e: SyntaxError) -> Self {
        HyperrealError::Parse {
            pos: e.pos,
            message: e.message,
        }
    }
}

impl ExprAlgebra for Hyperreal {
    type Error = HyperrealError;

    fn constant(c: &BigRational) -> Self {
        Hyperreal::from_rational(c.clone())
    }

    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }

    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }

    fn mul(self, rhs: Self) -> Self {
        &self * &rhs
    }

    /// A literal quotient with a zero divisor is a zero denominator.
    fn div(self, rhs: Self) -> Result<Self, HyperrealError> {
        self.checked_div(&rhs)
            .map_err(|_| HyperrealError::ZeroDenominator)
    }

    fn neg(self) -> Self {
        -&self
    }

    fn pow(self, p: i64, q: u32) -> Result<Self, HyperrealError> {
        let p = i32::try_from(p).map_err(|_| HyperrealError::Parse {
            pos: 0,
            message: "exponent too large".into(),
        })?;
        Hyperreal::pow(&self, p)?.nth_root(q)
    }
}

/// Parse textual syntax such as `(2+e)/(1+3*e)` or `e^(1/2)`.
pub fn parse_hyperreal(src: &str) -> Result<Hyperreal, HyperrealError> {
    expr::parse(src)?.eval(&|name: &str| match name {
        "e" | "eps" => Ok(Hyperreal::epsilon()),
        other => Err(HyperrealError::Parse {
            pos: src.find(other).unwrap_or(0),
            message: format!("unknown symbol '{other}' (only 'e' is allowed)"),
        }),
    })
}
