use num_rational::BigRational;
use num_traits::Signed;

use super::{Hyperreal, HyperrealError};
use crate::poly::Poly;

/// Rational `n`-th root if one exists (negative radicands only for odd `n`).
pub(crate) fn rational_nth_root(c: &BigRational, n: u32) -> Option<BigRational> {
    if c.is_negative() {
        if n.is_multiple_of(2) {
            return None;
        }
        return rational_nth_root(&-c, n).map(|r| -r);
    }
    let p = c.numer().nth_root(n);
    let q = c.denom().nth_root(n);
    (num_traits::pow(p.clone(), n as usize) == *c.numer()
        && num_traits::pow(q.clone(), n as usize) == *c.denom())
    .then(|| BigRational::new(p, q))
}

/// Monic `r` with `p = c * r^n` for a polynomial with nonzero constant term,
/// or `None` when some square-free factor has multiplicity not divisible by `n`.
fn polynomial_nth_root(p: &Poly, n: u32) -> Option<(BigRational, Poly)> {
    let (c, factors) = p.square_free();
    let mut root = Poly::one();
    for (i, f) in factors.iter().enumerate() {
        let mult = i as u32 + 1;
        if f.is_constant() {
            continue;
        }
        if !mult.is_multiple_of(n) {
            return None;
        }
        root = &root * &f.pow(mult / n);
    }
    Some((c, root))
}

pub(super) fn nth_root(a: &Hyperreal, n: u32) -> Result<Hyperreal, HyperrealError> {
    if n == 0 {
        return Err(HyperrealError::ZeroRootIndex);
    }
    if n == 1 || a.is_zero() {
        return Ok(a.clone());
    }
    if a.sign() < 0 {
        if n.is_multiple_of(2) {
            return Err(HyperrealError::NegativeEvenRoot);
        }
        return nth_root(&-a, n).map(|r| -r);
    }

    // a = t^i N(t) / (t^j D(t)) with N(0), D(0) nonzero and t = e^(1/m).
    let i = a.num.valuation().unwrap();
    let j = a.den.valuation().unwrap();
    let core_num = a.num.shift_down(i);
    let core_den = a.den.shift_down(j);

    let (cn, rn) = polynomial_nth_root(&core_num, n).ok_or(HyperrealError::NotRepresentable)?;
    let (cd, rd) = polynomial_nth_root(&core_den, n).ok_or(HyperrealError::NotRepresentable)?;
    let constant = rational_nth_root(&(cn / cd), n).ok_or(HyperrealError::NotRepresentable)?;

    // Pass to s = t^(1/n): t^((i-j)/n) becomes s^(i-j) and R(t) becomes R(s^n).
    let k = n as usize;
    let mut num = rn.inflate(k).scale(&constant);
    let mut den = rd.inflate(k);
    if i >= j {
        num = num.shift_up(i - j);
    } else {
        den = den.shift_up(j - i);
    }
    let mut root = Hyperreal::normalize(num, den, a.ram * n)?;
    if root.sign() < 0 {
        // only reachable for even n, where both signs are roots
        root = -root;
    }
    debug_assert_eq!(root.pow(n as i32).as_ref(), Ok(a));
    Ok(root)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{int, rat};
    use num_traits::One;

    fn h(s: &str) -> Hyperreal {
        s.parse().unwrap()
    }

    #[test]
    fn rational_roots() {
        assert_eq!(rational_nth_root(&rat(4, 9), 2), Some(rat(2, 3)));
        assert_eq!(rational_nth_root(&int(-8), 3), Some(int(-2)));
        assert_eq!(rational_nth_root(&int(-8), 2), None);
        assert_eq!(rational_nth_root(&int(2), 2), None);
        assert_eq!(rational_nth_root(&BigRational::one(), 5), Some(int(1)));
    }

    #[test]
    fn square_root_of_four_e_squared() {
        let a = h("4*e^2");
        let r = a.nth_root(2).unwrap();
        assert_eq!(r, h("2*e"));
        assert_eq!(&r * &r, a);
    }

    #[test]
    fn square_root_of_e_ramifies() {
        let r = h("e").nth_root(2).unwrap();
        assert_eq!(r.ramification(), 2);
        assert_eq!(&r * &r, h("e"));
        assert_eq!(r, Hyperreal::epsilon_pow(1, 2));
    }

    #[test]
    fn square_root_of_one_plus_e_is_not_representable() {
        assert_eq!(h("1+e").nth_root(2), Err(HyperrealError::NotRepresentable));
        assert_eq!(h("2").nth_root(2), Err(HyperrealError::NotRepresentable));
    }

    /// Exhaustive low-degree search: no p, q of degree <= 2 in s = e^(1/m)
    /// (m = 1, 2) with coefficients in -2..=2 satisfy p^2 = (1 + e) q^2.
    #[test]
    fn square_root_of_one_plus_e_search_oracle() {
        let range = -2i64..=2;
        let mut polys = Vec::new();
        for a in range.clone() {
            for b in range.clone() {
                for c in range.clone() {
                    polys.push(Poly::from_ints(&[a, b, c]));
                }
            }
        }
        for m in [1usize, 2] {
            let target = Poly::one() + Poly::monomial(BigRational::one(), m);
            for p in &polys {
                for q in polys.iter().filter(|q| !q.is_zero()) {
                    assert_ne!(&p.pow(2), &(&target * &q.pow(2)));
                }
            }
        }
    }

    #[test]
    fn signs_and_errors() {
        assert_eq!(h("-e").nth_root(2), Err(HyperrealError::NegativeEvenRoot));
        assert_eq!(h("-8*e^3").nth_root(3).unwrap(), h("-2*e"));
        // (e - 1)^2 has the positive square root 1 - e
        assert_eq!(h("1-2*e+e^2").nth_root(2).unwrap(), h("1-e"));
        assert_eq!(h("e").nth_root(0), Err(HyperrealError::ZeroRootIndex));
        assert_eq!(Hyperreal::zero().nth_root(4).unwrap(), Hyperreal::zero());
    }

    #[test]
    fn roots_of_quotients() {
        let a = h("(1+2*e+e^2)/(9*e^3)");
        let r = a.nth_root(2).unwrap();
        assert_eq!(r.pow(2).unwrap(), a);
        assert_eq!(r.ramification(), 2);
    }
}
