use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{image, stone_cech_finite, HullError};
use crate::fintop::{FinSpace, PointSet};

const RING_SEED: u64 = 0x5eed;
const RANDOM_COMBINATIONS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZeroSetReport {
    pub hull_points: usize,
    pub functions_checked: usize,
    pub pairs_checked: usize,
}

/// Checks on the Stone–Čech hull, for every `g` vanishing exactly on a union
/// of blocks: `Z(ĝ) = q[Z(g)]`, `cl q[Z(g)] = q[Z(g)]`, and
/// `q[Z₁ ∩ Z₂] = q[Z₁] ∩ q[Z₂]`.
pub fn zero_set_formulas(space: &FinSpace) -> Result<ZeroSetReport, HullError> {
    let h = stone_cech_finite(space);
    let z = space.z_partition();
    let zero_sets = z.zero_sets();
    let fail = |msg: String| Err(HullError::AuditFailure(msg));
    for &zs in &zero_sets {
        // g is 0 on zs and 1 elsewhere
        let g: Vec<BigRational> = (0..space.len())
            .map(|x| {
                if zs.contains(x) {
                    BigRational::zero()
                } else {
                    BigRational::one()
                }
            })
            .collect();
        let ghat: Vec<&BigRational> = h
            .classes
            .iter()
            .map(|c| &g[c.iter().next().unwrap()])
            .collect();
        let zhat = PointSet::from_points((0..h.classes.len()).filter(|&i| ghat[i].is_zero()));
        let img = image(&h.q, zs);
        if zhat != img {
            return fail(format!(
                "zero set of lifted g is {} but the image of {} is {}",
                h.quotient.format_set(zhat),
                space.format_set(zs),
                h.quotient.format_set(img)
            ));
        }
        if h.quotient.closure(img) != img {
            return fail(format!(
                "closure of {} is larger",
                h.quotient.format_set(img)
            ));
        }
    }
    let mut pairs = 0;
    for &a in &zero_sets {
        for &b in &zero_sets {
            pairs += 1;
            let left = image(&h.q, a.intersection(b));
            let right = image(&h.q, a).intersection(image(&h.q, b));
            if left != right {
                return fail(format!(
                    "images of {} and {} do not commute with intersection",
                    space.format_set(a),
                    space.format_set(b)
                ));
            }
        }
    }
    Ok(ZeroSetReport {
        hull_points: h.quotient.len(),
        functions_checked: zero_sets.len(),
        pairs_checked: pairs,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RingReport {
    pub blocks: usize,
    pub hull_points: usize,
    /// Continuous `X -> {0,1,2}`, counted directly.
    pub continuous_on_space: usize,
    /// `{0,1,2}`-valued functions on the hull, all continuous.
    pub functions_on_hull: usize,
    pub operations_checked: usize,
    pub ideals_checked: usize,
}

fn is_continuous_real(space: &FinSpace, f: &[BigRational]) -> bool {
    (0..space.len()).all(|x| {
        space.is_open(PointSet::from_points(
            (0..space.len()).filter(|&y| f[y] == f[x]),
        ))
    })
}

fn small_rational(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(
        rng.gen_range(-9i64..=9).into(),
        rng.gen_range(1i64..=5).into(),
    )
}

/// Composition with `q` as a ring isomorphism from hull functions onto
/// continuous functions, and the point ideals of the hull.
pub fn ring_correspondence(space: &FinSpace) -> Result<RingReport, HullError> {
    let h = stone_cech_finite(space);
    let (n, k) = (space.len(), h.quotient.len());
    let fail = |msg: String| Err(HullError::AuditFailure(msg));
    let blocks = space.z_partition().blocks.len();

    let values: Vec<BigRational> = (0..3)
        .map(|v| BigRational::from_integer(v.into()))
        .collect();
    let mut continuous: Vec<Vec<BigRational>> = Vec::new();
    let mut f = vec![0usize; n];
    for _ in 0..3usize.pow(n as u32) {
        let fv: Vec<BigRational> = f.iter().map(|&i| values[i].clone()).collect();
        if is_continuous_real(space, &fv) {
            continuous.push(fv);
        }
        for slot in f.iter_mut().rev() {
            *slot += 1;
            if *slot < 3 {
                break;
            }
            *slot = 0;
        }
    }
    if continuous.len() != 3usize.pow(blocks as u32) {
        return fail(format!(
            "{} continuous functions for {} blocks",
            continuous.len(),
            blocks
        ));
    }
    let lift =
        |hf: &[BigRational]| -> Vec<BigRational> { (0..n).map(|x| hf[h.q[x]].clone()).collect() };
    let mut pulled: Vec<Vec<BigRational>> = Vec::new();
    let mut hf = vec![0usize; k];
    for _ in 0..3usize.pow(k as u32) {
        let hv: Vec<BigRational> = hf.iter().map(|&i| values[i].clone()).collect();
        pulled.push(lift(&hv));
        for slot in hf.iter_mut().rev() {
            *slot += 1;
            if *slot < 3 {
                break;
            }
            *slot = 0;
        }
    }
    let mut sorted_pulled = pulled.clone();
    sorted_pulled.sort();
    sorted_pulled.dedup();
    let mut sorted_cont = continuous.clone();
    sorted_cont.sort();
    if sorted_pulled.len() != pulled.len() || sorted_pulled != sorted_cont {
        return fail("composition with q is not a bijection onto continuous functions".into());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(RING_SEED);
    let mut operations = 0;
    for _ in 0..RANDOM_COMBINATIONS {
        let a: Vec<BigRational> = (0..k).map(|_| small_rational(&mut rng)).collect();
        let b: Vec<BigRational> = (0..k).map(|_| small_rational(&mut rng)).collect();
        let c = small_rational(&mut rng);
        let sum: Vec<BigRational> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let prod: Vec<BigRational> = a.iter().zip(&b).map(|(x, y)| x * y).collect();
        let (la, lb) = (lift(&a), lift(&b));
        let ok_sum = lift(&sum)
            .iter()
            .zip(la.iter().zip(&lb))
            .all(|(s, (x, y))| *s == x + y);
        let ok_prod = lift(&prod)
            .iter()
            .zip(la.iter().zip(&lb))
            .all(|(s, (x, y))| *s == x * y);
        let ok_const = lift(&vec![c.clone(); k]).iter().all(|v| *v == c);
        if !(ok_sum && ok_prod && ok_const && is_continuous_real(space, &la)) {
            return fail("composition with q does not preserve ring operations".into());
        }
        operations += 3;
    }

    // point ideals, tested on the block indicators and the constants
    let mut gens: Vec<Vec<BigRational>> = h
        .classes
        .iter()
        .map(|c| {
            (0..n)
                .map(|x| {
                    if c.contains(x) {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    gens.push(vec![BigRational::one(); n]);
    gens.push(vec![BigRational::zero(); n]);
    for p in 0..k {
        let rep = h.classes[p].iter().next().unwrap();
        let ideal: Vec<&Vec<BigRational>> = gens.iter().filter(|g| g[rep].is_zero()).collect();
        for a in &ideal {
            for b in &ideal {
                if !(&a[rep] + &b[rep]).is_zero() {
                    return fail(format!(
                        "ideal at {} not closed under +",
                        h.quotient.points()[p]
                    ));
                }
            }
            for g in &gens {
                if !(&a[rep] * &g[rep]).is_zero() {
                    return fail(format!(
                        "ideal at {} does not absorb products",
                        h.quotient.points()[p]
                    ));
                }
            }
        }
        let common_zeros: Vec<usize> = (0..k)
            .filter(|&j| {
                let r = h.classes[j].iter().next().unwrap();
                ideal.iter().all(|g| g[r].is_zero())
            })
            .collect();
        if common_zeros != [p] {
            return fail(format!(
                "ideal at {} vanishes at {:?}",
                h.quotient.points()[p],
                common_zeros
            ));
        }
    }
    Ok(RingReport {
        blocks,
        hull_points: k,
        continuous_on_space: continuous.len(),
        functions_on_hull: pulled.len(),
        operations_checked: operations,
        ideals_checked: k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discrete_pair() {
        let s = FinSpace::discrete(2);
        let z = zero_set_formulas(&s).unwrap();
        assert_eq!(
            (z.hull_points, z.functions_checked, z.pairs_checked),
            (2, 4, 16)
        );
        let r = ring_correspondence(&s).unwrap();
        assert_eq!((r.continuous_on_space, r.functions_on_hull), (9, 9));
    }

    #[test]
    fn sierpinski_ring_is_constants() {
        let r = ring_correspondence(&FinSpace::sierpinski()).unwrap();
        assert_eq!((r.blocks, r.hull_points, r.continuous_on_space), (1, 1, 3));
    }
}
