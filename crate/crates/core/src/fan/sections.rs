use num_traits::{Signed, ToPrimitive, Zero};

use super::{Fan, TorusInvariantDivisor};
use crate::linalg::{Int, Rat};
use crate::polycone::lp::{LinearProgram, LpOutcome, Relation};
use crate::{Error, Result};

/// The half-space `<normal, u> >= bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfSpace {
    pub normal: Vec<Int>,
    pub bound: Int,
}

/// `P_D = {u : <u, v_rho> >= -a_rho for every ray}`.
pub fn divisor_polytope(f: &Fan, d: &TorusInvariantDivisor) -> Result<Vec<HalfSpace>> {
    if d.len() != f.n_rays() {
        return Err(Error::DimensionMismatch {
            expected: f.n_rays(),
            found: d.len(),
        });
    }
    Ok(f.rays()
        .iter()
        .zip(&d.coefficients)
        .map(|(v, a)| HalfSpace {
            normal: v.clone(),
            bound: -a,
        })
        .collect())
}

fn small(x: &Int) -> Result<i64> {
    x.to_i64()
        .filter(|v| v.abs() < 1 << 40)
        .ok_or_else(|| Error::InvalidParameter(format!("coefficient {x} too large to enumerate")))
}

/// Number of lattice points of `P_D`, i.e. `h^0(X, O(D))`.
pub fn count_sections(f: &Fan, d: &TorusInvariantDivisor) -> Result<u64> {
    let half = divisor_polytope(f, d)?;
    if !f.is_complete() {
        return Err(Error::NotComplete);
    }
    let dim = f.dim();
    let mut lp = LinearProgram::new(dim);
    for h in &half {
        lp.add_int(&h.normal, Relation::Ge, h.bound.clone());
    }
    let mut lo = Vec::with_capacity(dim);
    let mut hi = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut obj = vec![Rat::zero(); dim];
        obj[i] = Rat::from_integer(Int::from(1));
        let top = match lp.maximize(&obj) {
            LpOutcome::Infeasible => return Ok(0),
            LpOutcome::Unbounded => return Err(Error::NotComplete),
            LpOutcome::Optimal { value, .. } => value.floor().to_integer(),
        };
        let bottom = match lp.minimize(&obj) {
            LpOutcome::Infeasible => return Ok(0),
            LpOutcome::Unbounded => return Err(Error::NotComplete),
            LpOutcome::Optimal { value, .. } => value.ceil().to_integer(),
        };
        if top < bottom {
            return Ok(0);
        }
        lo.push(small(&bottom)?);
        hi.push(small(&top)?);
    }
    let rows: Vec<(Vec<i64>, i64)> = half
        .iter()
        .map(|h| {
            Ok((
                h.normal.iter().map(small).collect::<Result<Vec<_>>>()?,
                small(&h.bound)?,
            ))
        })
        .collect::<Result<_>>()?;
    let mut point = vec![0i64; dim];
    Ok(enumerate(&rows, &lo, &hi, &mut point, 0))
}

/// Depth-first over the box, pruning a prefix as soon as some constraint
/// cannot be met by any completion inside the box.
fn enumerate(rows: &[(Vec<i64>, i64)], lo: &[i64], hi: &[i64], point: &mut [i64], k: usize) -> u64 {
    let feasible = rows.iter().all(|(n, b)| {
        let fixed: i128 = (0..k).map(|i| n[i] as i128 * point[i] as i128).sum();
        let best: i128 = (k..n.len())
            .map(|i| (n[i] as i128 * lo[i] as i128).max(n[i] as i128 * hi[i] as i128))
            .sum();
        fixed + best >= *b as i128
    });
    if !feasible {
        return 0;
    }
    if k == point.len() {
        return 1;
    }
    let mut total = 0;
    for x in lo[k]..=hi[k] {
        point[k] = x;
        total += enumerate(rows, lo, hi, point, k + 1);
    }
    total
}

/// Does `u` satisfy every half-space?
pub fn in_polytope(half: &[HalfSpace], u: &[Int]) -> bool {
    half.iter().all(|h| {
        let s: Int = h.normal.iter().zip(u).map(|(a, b)| a * b).sum();
        !(s - &h.bound).is_negative()
    })
}
