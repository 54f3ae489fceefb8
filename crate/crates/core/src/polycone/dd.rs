//! Double description: generators of `{x : <a, x> >= 0 for every a}`.
//!
//! Inequalities are added one at a time (Motzkin's method). Lineality
//! directions are consumed first; afterwards the positive and negative sides
//! of each new hyperplane are combined pairwise, keeping only combinations of
//! adjacent rays (algebraic rank test).

use num_traits::{Signed, Zero};

use crate::linalg::{clear_denominators, dot, primitive, rref, to_rat, Int, IntMatrix, Rat};

#[derive(Clone, Debug, Default)]
pub(crate) struct Generators {
    /// Canonical (reduced echelon, primitive) basis of the lineality space.
    pub lineality: Vec<Vec<Int>>,
    /// Extreme rays modulo lineality, projected onto its orthogonal complement.
    pub rays: Vec<Vec<Int>>,
}

fn prim(v: Vec<Int>) -> Vec<Int> {
    primitive(&v).unwrap_or(v)
}

fn combine(alpha: &Int, v: &[Int], beta: &Int, w: &[Int]) -> Vec<Int> {
    // alpha * v - beta * w
    v.iter().zip(w).map(|(x, y)| alpha * x - beta * y).collect()
}

fn rank_of(rows: &[&Vec<Int>], dim: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let owned: Vec<Vec<Int>> = rows.iter().map(|r| (*r).clone()).collect();
    IntMatrix::from_rows_with_width(&owned, dim).rank()
}

pub(crate) fn cone_generators(dim: usize, inequalities: &[Vec<Int>]) -> Generators {
    let mut ineqs: Vec<Vec<Int>> = inequalities
        .iter()
        .filter(|a| a.iter().any(|x| !x.is_zero()))
        .map(|a| prim(a.clone()))
        .collect();
    ineqs.sort();
    ineqs.dedup();

    let mut lineality: Vec<Vec<Int>> = (0..dim)
        .map(|i| {
            let mut e = vec![Int::zero(); dim];
            e[i] = Int::from(1);
            e
        })
        .collect();
    let mut rays: Vec<Vec<Int>> = Vec::new();
    let mut done: Vec<&Vec<Int>> = Vec::new();

    for a in &ineqs {
        if let Some(k) = lineality.iter().position(|l| !dot(a, l).is_zero()) {
            let mut l0 = lineality.swap_remove(k);
            let mut alpha = dot(a, &l0);
            if alpha.is_negative() {
                l0 = l0.iter().map(|x| -x).collect();
                alpha = -alpha;
            }
            for l in lineality.iter_mut() {
                let beta = dot(a, l);
                if !beta.is_zero() {
                    *l = prim(combine(&alpha, l, &beta, &l0));
                }
            }
            for r in rays.iter_mut() {
                let beta = dot(a, r);
                if !beta.is_zero() {
                    *r = prim(combine(&alpha, r, &beta, &l0));
                }
            }
            rays.push(l0);
            done.push(a);
            continue;
        }

        let vals: Vec<Int> = rays.iter().map(|r| dot(a, r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if neg.is_empty() {
            done.push(a);
            continue;
        }
        let target_rank = dim - lineality.len();
        let zero_sets: Vec<Vec<usize>> = rays
            .iter()
            .map(|r| {
                (0..done.len())
                    .filter(|&k| dot(done[k], r).is_zero())
                    .collect()
            })
            .collect();
        let mut next: Vec<Vec<Int>> = (0..rays.len())
            .filter(|&i| !vals[i].is_negative())
            .map(|i| rays[i].clone())
            .collect();
        for &p in &pos {
            for &n in &neg {
                let common: Vec<&Vec<Int>> = zero_sets[p]
                    .iter()
                    .filter(|k| zero_sets[n].contains(k))
                    .map(|&k| done[k])
                    .collect();
                // Adjacent iff the common tight constraints cut out a 2-face.
                if target_rank >= 2 && rank_of(&common, dim) == target_rank - 2 {
                    let v = combine(&vals[p], &rays[n], &vals[n], &rays[p]);
                    next.push(prim(v));
                }
            }
        }
        next.sort();
        next.dedup();
        rays = next;
        done.push(a);
    }

    canonicalize(dim, lineality, rays)
}

fn canonicalize(dim: usize, lineality: Vec<Vec<Int>>, rays: Vec<Vec<Int>>) -> Generators {
    let lin_rat: Vec<Vec<Rat>> = lineality.iter().map(|l| to_rat(l)).collect();
    let reduced = rref(&lin_rat, dim);
    let lineality: Vec<Vec<Int>> = reduced.iter().map(|r| clear_denominators(r)).collect();

    let mut out: Vec<Vec<Int>> = rays
        .iter()
        .map(|r| project_out(r, &lineality))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    out.sort();
    out.dedup();
    Generators {
        lineality,
        rays: out,
    }
}

/// Component of `v` orthogonal to the span of `basis`, as a primitive vector.
pub(crate) fn project_out(v: &[Int], basis: &[Vec<Int>]) -> Vec<Int> {
    if basis.is_empty() {
        return prim(v.to_vec());
    }
    let k = basis.len();
    // Solve (B B^T) y = B v.
    let rows: Vec<Vec<Rat>> = (0..k)
        .map(|i| {
            let mut row: Vec<Rat> = (0..k)
                .map(|j| Rat::from_integer(dot(&basis[i], &basis[j])))
                .collect();
            row.push(Rat::from_integer(dot(&basis[i], v)));
            row
        })
        .collect();
    let red = rref(&rows, k + 1);
    let mut y = vec![Rat::zero(); k];
    for row in &red {
        if let Some(lead) = row.iter().position(|x| !x.is_zero()) {
            if lead < k {
                y[lead] = row[k].clone();
            }
        }
    }
    let proj: Vec<Rat> = (0..v.len())
        .map(|c| {
            let mut x = Rat::from_integer(v[c].clone());
            for (i, b) in basis.iter().enumerate() {
                x -= &y[i] * Rat::from_integer(b[c].clone());
            }
            x
        })
        .collect();
    clear_denominators(&proj)
}
