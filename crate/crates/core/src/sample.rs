//! Seeded random generators shared by the property suites and the CLI.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::bqf::{make_pair, Bindings, Entity, Formula, Term};
use crate::germs::RationalGerm;
use crate::hyperreal::Hyperreal;
use crate::poly::Poly;

pub fn small_rational<R: Rng>(rng: &mut R, max: i64) -> BigRational {
    BigRational::new(
        BigInt::from(rng.gen_range(-max..=max)),
        BigInt::from(rng.gen_range(1..=4)),
    )
}

fn small_poly<R: Rng>(rng: &mut R, max_degree: usize, nonzero_constant: bool) -> Poly {
    let d = rng.gen_range(0..=max_degree);
    let mut c: Vec<BigRational> = (0..=d).map(|_| small_rational(rng, 6)).collect();
    if nonzero_constant && c[0] == BigRational::from_integer(0.into()) {
        c[0] = BigRational::from_integer(rng.gen_range(1..=3).into());
    }
    Poly::from_coeffs(c)
}

/// A canonical element with ramification 1 or 2 and small coefficients;
/// may be infinite.
pub fn hyperreal<R: Rng>(rng: &mut R) -> Hyperreal {
    let ram = rng.gen_range(1..=2);
    let num = small_poly(rng, 3, false);
    let mut den = small_poly(rng, 2, false);
    if den.is_zero() {
        den = Poly::one();
    }
    Hyperreal::normalize(num, den, ram).expect("denominator is nonzero")
}

/// A finite element: rational numerator over a denominator with nonzero
/// constant term, times `e^k` for `k` in `0..=2`.
pub fn finite_hyperreal<R: Rng>(rng: &mut R) -> Hyperreal {
    let ram = rng.gen_range(1..=2);
    let num = small_poly(rng, 3, false);
    let den = small_poly(rng, 2, true);
    let shift = rng.gen_range(0..=2);
    Hyperreal::normalize(num.shift_up(shift), den, ram).expect("denominator is nonzero")
}

/// Nonzero finite element with nonzero standard part.
pub fn appreciable_hyperreal<R: Rng>(rng: &mut R) -> Hyperreal {
    let ram = rng.gen_range(1..=2);
    let num = small_poly(rng, 3, true);
    let den = small_poly(rng, 2, true);
    Hyperreal::normalize(num, den, ram).expect("denominator is nonzero")
}

/// Rational function of `n` of degree at most 3 over at most 2.
pub fn rational_germ<R: Rng>(rng: &mut R) -> RationalGerm {
    let num = small_poly(rng, 3, false);
    let mut den = small_poly(rng, 2, false);
    if den.is_zero() {
        den = Poly::one();
    }
    RationalGerm::new(num, den).expect("denominator is nonzero")
}

pub const ATOMS: [&str; 4] = ["a", "b", "c", "d"];

/// Random subset of `ATOMS`.
pub fn atom_set<R: Rng>(rng: &mut R) -> Entity {
    Entity::atoms(ATOMS.iter().copied().filter(|_| rng.gen_bool(0.5)))
}

/// Random entity of level at most 2 over `ATOMS`.
pub fn entity<R: Rng>(rng: &mut R) -> Entity {
    match rng.gen_range(0..4) {
        0 => Entity::atom(*ATOMS.choose(rng).unwrap()),
        1 => atom_set(rng),
        2 => make_pair(
            Entity::atom(*ATOMS.choose(rng).unwrap()),
            Entity::atom(*ATOMS.choose(rng).unwrap()),
        ),
        _ => Entity::set((0..rng.gen_range(0..3)).map(|_| atom_set(rng))),
    }
}

/// Bindings for [`formula`]: atoms denote themselves, `A` and `B` are sets
/// of atoms and `C` is a set of pairs of atoms.
pub fn bindings<R: Rng>(rng: &mut R) -> Bindings {
    let mut b: Bindings = ATOMS
        .iter()
        .map(|a| (a.to_string(), Entity::atom(*a)))
        .collect();
    b.insert("A".into(), atom_set(rng));
    b.insert("B".into(), atom_set(rng));
    let pairs = (0..rng.gen_range(0..4)).map(|_| {
        make_pair(
            Entity::atom(*ATOMS.choose(rng).unwrap()),
            Entity::atom(*ATOMS.choose(rng).unwrap()),
        )
    });
    b.insert("C".into(), Entity::set(pairs));
    b
}

const VARS: [&str; 3] = ["x", "y", "z"];

fn term<R: Rng>(rng: &mut R, scope: &[&str]) -> Term {
    if !scope.is_empty() && rng.gen_bool(0.7) {
        Term::name(scope.choose(rng).unwrap())
    } else {
        Term::name(ATOMS.choose(rng).unwrap())
    }
}

fn atomic<R: Rng>(rng: &mut R, scope: &[&str]) -> Formula {
    match rng.gen_range(0..4) {
        0 => Formula::Eq(term(rng, scope), term(rng, scope)),
        1 => Formula::In(
            Term::Pair(Box::new(term(rng, scope)), Box::new(term(rng, scope))),
            Term::name("C"),
        ),
        _ => Formula::In(
            term(rng, scope),
            Term::name(["A", "B"].choose(rng).unwrap()),
        ),
    }
}

fn formula_in<R: Rng>(rng: &mut R, scope: &mut Vec<&'static str>, depth: usize) -> Formula {
    if depth == 0 {
        return atomic(rng, scope);
    }
    match rng.gen_range(0..8) {
        0 => atomic(rng, scope),
        1 => Formula::not(formula_in(rng, scope, depth - 1)),
        2 => Formula::and(
            formula_in(rng, scope, depth - 1),
            formula_in(rng, scope, depth - 1),
        ),
        3 => Formula::or(
            formula_in(rng, scope, depth - 1),
            formula_in(rng, scope, depth - 1),
        ),
        4 => Formula::implies(
            formula_in(rng, scope, depth - 1),
            formula_in(rng, scope, depth - 1),
        ),
        5 => Formula::iff(
            formula_in(rng, scope, depth - 1),
            formula_in(rng, scope, depth - 1),
        ),
        _ => {
            let var = VARS[scope.len() % VARS.len()];
            let range = Term::name(["A", "B"].choose(rng).unwrap());
            scope.push(var);
            let body = formula_in(rng, scope, depth - 1);
            scope.pop();
            if rng.gen_bool(0.5) {
                Formula::forall(var, range, body)
            } else {
                Formula::exists(var, range, body)
            }
        }
    }
}

/// Random sentence over the names of [`bindings`], quantifiers bounded by
/// `A` or `B`.
pub fn formula<R: Rng>(rng: &mut R, depth: usize) -> Formula {
    formula_in(rng, &mut Vec::new(), depth)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_respect_their_contracts() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            assert!(finite_hyperreal(&mut rng).classify().is_finite());
            let a = appreciable_hyperreal(&mut rng);
            assert!(a
                .st()
                .real()
                .is_some_and(|r| *r != BigRational::from_integer(0.into())));
            let f = formula(&mut rng, 3);
            assert!(crate::bqf::eval(&f, &bindings(&mut rng)).is_ok(), "{f}");
            assert!(entity(&mut rng).type_level() <= 2);
        }
    }
}
