//! Brute-force oracles shared by the integration tests. They use none of the
//! library's linear algebra or LP code.

#![allow(dead_code)]

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use toricgit::cox::DegreeMap;
use toricgit::linalg::Int;

type Q = Ratio<i128>;

fn small(x: &Int) -> i128 {
    x.to_i128().expect("oracle inputs are small")
}

/// Is `target` a nonnegative combination of the linearly independent
/// `columns`? `None` if the columns are dependent.
fn independent_nonneg(columns: &[Vec<i128>], target: &[i128]) -> Option<bool> {
    let rows = target.len();
    let k = columns.len();
    let mut a: Vec<Vec<Q>> = (0..rows)
        .map(|i| {
            let mut row: Vec<Q> = columns.iter().map(|c| Q::from(c[i])).collect();
            row.push(Q::from(target[i]));
            row
        })
        .collect();
    for (pivot_row, col) in (0..k).enumerate() {
        let p = (pivot_row..rows).find(|&r| !a[r][col].is_zero())?;
        a.swap(pivot_row, p);
        let lead = a[pivot_row][col];
        for x in a[pivot_row].iter_mut() {
            *x /= lead;
        }
        for r in 0..rows {
            if r != pivot_row && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot = a[pivot_row].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot) {
                    *x -= *p * f;
                }
            }
        }
    }
    if (k..rows).any(|r| !a[r][k].is_zero()) {
        return Some(false);
    }
    Some((0..k).all(|r| !a[r][k].is_negative()))
}

fn subsets_up_to(n: usize, max: usize) -> Vec<u32> {
    (0u32..1 << n)
        .filter(|s| s.count_ones() as usize <= max)
        .collect()
}

/// Facets of the family of supports `S` with `chi` outside `cone(deg S)`,
/// by checking all `2^n` supports. Membership uses Caratheodory: `chi` is in
/// the cone iff it is a nonnegative combination of some independent subset.
pub fn brute_unstable_facets(d: &DegreeMap, chi: &[Int]) -> Vec<Vec<usize>> {
    assert!(
        d.torsion().is_empty(),
        "oracle handles free class groups only"
    );
    let n = d.n_rays();
    let r = d.free_rank();
    let degs: Vec<Vec<i128>> = d
        .degrees()
        .iter()
        .map(|g| g.iter().map(small).collect())
        .collect();
    let target: Vec<i128> = chi.iter().map(small).collect();
    let mut good = vec![false; 1 << n];
    for t in subsets_up_to(n, r) {
        let cols: Vec<Vec<i128>> = (0..n)
            .filter(|i| t >> i & 1 == 1)
            .map(|i| degs[i].clone())
            .collect();
        if let Some(true) = independent_nonneg(&cols, &target) {
            good[t as usize] = true;
        }
    }
    for s in 0..1usize << n {
        if !good[s] {
            good[s] = (0..n).any(|i| s >> i & 1 == 1 && good[s ^ 1 << i]);
        }
    }
    let mut facets = Vec::new();
    for s in 0..1usize << n {
        if !good[s] && (0..n).all(|i| s >> i & 1 == 1 || good[s | 1 << i]) {
            facets.push((0..n).filter(|i| s >> i & 1 == 1).collect::<Vec<_>>());
        }
    }
    facets.sort();
    facets
}

/// Determinant by cofactor expansion.
pub fn cofactor_det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    let mut total = 0;
    for j in 0..n {
        if m[0][j] == 0 {
            continue;
        }
        let minor: Vec<Vec<i128>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(c, _)| c != j)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        total += sign * m[0][j] * cofactor_det(&minor);
    }
    total
}

fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|s| s.count_ones() as usize == k)
        .map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect())
        .collect()
}

/// Invariant factors from determinantal divisors: `d_k` is the gcd of all
/// `k x k` minors and the `k`-th factor is `d_k / d_{k-1}`. Only the nonzero
/// factors are returned.
pub fn determinant_divisor_factors(m: &[Vec<i64>]) -> Vec<i128> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut prev = 1i128;
    for k in 1..=rows.min(cols) {
        let mut g = 0i128;
        for rs in choose(rows, k) {
            for cs in choose(cols, k) {
                let sub: Vec<Vec<i128>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| m[i][j] as i128).collect())
                    .collect();
                g = g.gcd(&cofactor_det(&sub));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}
