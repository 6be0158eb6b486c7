use super::{FinSpace, PointSet, TopoError, MAX_ENUMERATION_POINTS};

/// Maps tried by [`continuous_maps`] before giving up.
const MAX_MAPS: u64 = 1 << 20;

/// Every topology on the points `0..n`, in a fixed order.
pub fn enumerate_topologies(n: usize) -> Result<Vec<FinSpace>, TopoError> {
    if n > MAX_ENUMERATION_POINTS {
        return Err(TopoError::TooLarge {
            n,
            max: MAX_ENUMERATION_POINTS,
        });
    }
    let subsets = 1usize << n;
    let full = subsets - 1;
    // Membership of subset `s` in a family is bit `s` of a u64 (at most 16 subsets).
    let inner: Vec<usize> = (1..full).collect();
    let mut out = Vec::new();
    for choice in 0u64..1 << inner.len() {
        let mut family: u64 = 1 | 1 << full;
        for (i, s) in inner.iter().enumerate() {
            if choice >> i & 1 == 1 {
                family |= 1 << s;
            }
        }
        let members: Vec<usize> = (0..subsets).filter(|s| family >> s & 1 == 1).collect();
        let closed = members.iter().all(|&a| {
            members
                .iter()
                .all(|&b| family >> (a | b) & 1 == 1 && family >> (a & b) & 1 == 1)
        });
        if closed {
            let opens = members.iter().map(|&m| PointSet(m as u32)).collect();
            out.push(FinSpace::numbered(n, opens)?);
        }
    }
    Ok(out)
}

/// Whether `f` (given by point indices) is continuous from `x` to `y`.
pub fn is_continuous(f: &[usize], x: &FinSpace, y: &FinSpace) -> Result<bool, TopoError> {
    if f.len() != x.len() {
        return Err(TopoError::NotTotal(format!(
            "{} values for {} points",
            f.len(),
            x.len()
        )));
    }
    if let Some(v) = f.iter().find(|&&v| v >= y.len()) {
        return Err(TopoError::NotTotal(format!(
            "value {v} outside the codomain"
        )));
    }
    Ok(y.opens().iter().all(|g| {
        x.is_open(PointSet::from_points(
            (0..x.len()).filter(|&p| g.contains(f[p])),
        ))
    }))
}

/// All continuous maps `x -> y`, in lexicographic order.
pub fn continuous_maps(x: &FinSpace, y: &FinSpace) -> Result<Vec<Vec<usize>>, TopoError> {
    let (n, m) = (x.len(), y.len());
    let total = (m as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
    if total > MAX_MAPS {
        return Err(TopoError::TooLarge {
            n,
            max: MAX_POINTS_FOR_MAPS,
        });
    }
    let mut out = Vec::new();
    let mut f = vec![0usize; n];
    for _ in 0..total {
        if is_continuous(&f, x, y)? {
            out.push(f.clone());
        }
        for slot in f.iter_mut().rev() {
            *slot += 1;
            if *slot < m {
                break;
            }
            *slot = 0;
        }
    }
    Ok(out)
}

const MAX_POINTS_FOR_MAPS: usize = 20;
