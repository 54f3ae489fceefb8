use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use super::{Fan, TorusInvariantDivisor};
use crate::linalg::{primitive, solve_independent, to_rat, Int, IntMatrix, Rat};
use crate::{Error, Result};

fn unit(dim: usize, i: usize) -> Vec<Int> {
    let mut e = vec![Int::zero(); dim];
    e[i] = Int::one();
    e
}

/// Rays `e_1, ..., e_n, -(e_1 + ... + e_n)`; maximal cones omit one ray each.
pub fn projective_space_fan(n: usize) -> Result<Fan> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "projective space needs n >= 1".into(),
        ));
    }
    let mut rays: Vec<Vec<Int>> = (0..n).map(|i| unit(n, i)).collect();
    rays.push(vec![-Int::one(); n]);
    let cones = (0..=n)
        .rev()
        .map(|skip| (0..=n).filter(|&i| i != skip).collect())
        .collect();
    Fan::new_unchecked_intersections(n, rays, cones)
}

/// The standard Hirzebruch fan: rays `(1,0), (0,1), (-1,a), (0,-1)`.
pub fn hirzebruch_fan(a: i64) -> Result<Fan> {
    Fan::from_i64(
        2,
        &[vec![1, 0], vec![0, 1], vec![-1, a], vec![0, -1]],
        &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
    )
}

/// Rays of `f1` padded with zeros, then rays of `f2`; cones are all unions.
pub fn product_fan(f1: &Fan, f2: &Fan) -> Fan {
    let (d1, d2) = (f1.dim(), f2.dim());
    let n1 = f1.n_rays();
    let mut rays: Vec<Vec<Int>> = f1
        .rays()
        .iter()
        .map(|r| r.iter().cloned().chain(vec![Int::zero(); d2]).collect())
        .collect();
    rays.extend(f2.rays().iter().map(|s| {
        vec![Int::zero(); d1]
            .into_iter()
            .chain(s.iter().cloned())
            .collect()
    }));
    let mut cones = Vec::new();
    for s in f1.max_cones() {
        for t in f2.max_cones() {
            cones.push(s.iter().copied().chain(t.iter().map(|i| i + n1)).collect());
        }
    }
    Fan::new_unchecked_intersections(d1 + d2, rays, cones).expect("products of fans are fans")
}

/// Star subdivision at a cone of dimension at least two. The new ray is the
/// primitive sum of the face's rays and is appended last.
pub fn star_subdivision(f: &Fan, face: &[usize]) -> Result<Fan> {
    let face: Vec<usize> = face
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if face.len() < 2 {
        return Err(Error::InvalidParameter(format!(
            "star subdivision needs a cone of dimension at least 2, got {face:?}"
        )));
    }
    if face.iter().any(|&i| i >= f.n_rays()) || !f.is_cone(&face) {
        return Err(Error::NotACone(face));
    }
    let mut sum = vec![Int::zero(); f.dim()];
    for &i in &face {
        for (s, x) in sum.iter_mut().zip(&f.rays()[i]) {
            *s += x;
        }
    }
    let new_ray = primitive(&sum)?;
    let new_index = f.n_rays();
    let mut rays = f.rays().to_vec();
    rays.push(new_ray);
    let mut cones = Vec::new();
    for c in f.max_cones() {
        if face.iter().all(|i| c.contains(i)) {
            for rho in &face {
                let mut nc: Vec<usize> = c.iter().copied().filter(|i| i != rho).collect();
                nc.push(new_index);
                cones.push(nc);
            }
        } else {
            cones.push(c.clone());
        }
    }
    Fan::new_unchecked_intersections(f.dim(), rays, cones)
}

/// Blowup of `P^n` along a torus-invariant `P^m`: the star subdivision of the
/// cone `{e_1, ..., e_{n-m}}`.
pub fn blowup_pn_along_linear(n: usize, m: usize) -> Result<Fan> {
    if n < m + 2 {
        return Err(Error::InvalidParameter(format!(
            "blowup of P^{n} along P^{m} needs m <= n - 2"
        )));
    }
    let pn = projective_space_fan(n)?;
    let face: Vec<usize> = (0..n - m).collect();
    star_subdivision(&pn, &face)
}

/// Toric projective bundle `P(L_1 + ... + L_k)` over `base`.
///
/// Base rays come first, lifted with fiber coordinates `a_j(rho) - a_k(rho)`
/// for `j < k`; then the fiber rays `f_1, ..., f_{k-1}` (standard basis) and
/// `f_k = -(f_1 + ... + f_{k-1})`. With this convention the tautological
/// class is `D_{f_k} + p^* L_k`.
pub fn projective_bundle_fan(base: &Fan, divisors: &[TorusInvariantDivisor]) -> Result<Fan> {
    let k = divisors.len();
    if k < 2 {
        return Err(Error::InvalidParameter(format!(
            "a projective bundle needs at least 2 summands, got {k}"
        )));
    }
    let n = base.n_rays();
    for d in divisors {
        if d.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: d.len(),
            });
        }
    }
    let dim = base.dim() + k - 1;
    let last = &divisors[k - 1].coefficients;
    let mut rays: Vec<Vec<Int>> = Vec::with_capacity(n + k);
    for (rho, v) in base.rays().iter().enumerate() {
        let mut r = v.clone();
        for d in &divisors[..k - 1] {
            r.push(&d.coefficients[rho] - &last[rho]);
        }
        rays.push(r);
    }
    for j in 0..k - 1 {
        rays.push(unit(dim, base.dim() + j));
    }
    let mut fk = vec![Int::zero(); base.dim()];
    fk.extend(vec![-Int::one(); k - 1]);
    rays.push(fk);
    let mut cones = Vec::new();
    for c in base.max_cones() {
        for omit in 0..k {
            let mut nc = c.clone();
            nc.extend((0..k).filter(|&j| j != omit).map(|j| n + j));
            cones.push(nc);
        }
    }
    Fan::new_unchecked_intersections(dim, rays, cones)
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head);
            out.push(p);
        }
    }
    out
}

/// Is there a lattice automorphism carrying the rays of `f` onto the rays of
/// `g` and the maximal cones onto maximal cones? Brute force over the images
/// of one full-dimensional cone, for small fans only.
pub fn is_isomorphic(f: &Fan, g: &Fan) -> bool {
    let d = f.dim();
    if d != g.dim() || f.n_rays() != g.n_rays() || f.max_cones().len() != g.max_cones().len() {
        return false;
    }
    let Some(sigma) = f.max_cones().iter().find(|c| c.len() == d) else {
        return false;
    };
    let basis: Vec<Vec<Int>> = sigma.iter().map(|&i| f.rays()[i].clone()).collect();
    let coords = |v: &[Int]| solve_independent(&basis, &to_rat(v)).expect("full rank");
    let ray_coords: Vec<Vec<Rat>> = f.rays().iter().map(|r| coords(r)).collect();
    let unit_coords: Vec<Vec<Rat>> = (0..d).map(|i| coords(&unit(d, i))).collect();
    let g_cones: BTreeSet<Vec<usize>> = g.max_cones().iter().cloned().collect();

    let apply = |lambda: &[Rat], images: &[Vec<Int>]| -> Option<Vec<Int>> {
        let mut out = vec![Rat::zero(); d];
        for (l, w) in lambda.iter().zip(images) {
            for (o, x) in out.iter_mut().zip(w) {
                *o += l * Rat::from_integer(x.clone());
            }
        }
        out.iter()
            .map(|x| x.is_integer().then(|| x.to_integer()))
            .collect()
    };

    for tau in g.max_cones().iter().filter(|c| c.len() == d) {
        for order in permutations(tau) {
            let images: Vec<Vec<Int>> = order.iter().map(|&i| g.rays()[i].clone()).collect();
            let Some(matrix) = unit_coords
                .iter()
                .map(|l| apply(l, &images))
                .collect::<Option<Vec<Vec<Int>>>>()
            else {
                continue;
            };
            if !IntMatrix::from_rows_with_width(&matrix, d)
                .determinant()
                .abs()
                .is_one()
            {
                continue;
            }
            let Some(perm) = ray_coords
                .iter()
                .map(|l| {
                    let img = apply(l, &images)?;
                    g.rays().iter().position(|r| *r == img)
                })
                .collect::<Option<Vec<usize>>>()
            else {
                continue;
            };
            let mapped: BTreeSet<Vec<usize>> = f
                .max_cones()
                .iter()
                .map(|c| {
                    let mut m: Vec<usize> = c.iter().map(|&i| perm[i]).collect();
                    m.sort_unstable();
                    m
                })
                .collect();
            if mapped == g_cones {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::is_m_neighborly;

    #[test]
    fn projective_spaces() {
        for (n, rays, cones) in [(1, 2, 2), (2, 3, 3), (4, 5, 5)] {
            let f = projective_space_fan(n).unwrap();
            assert_eq!((f.n_rays(), f.max_cones().len()), (rays, cones));
        }
        assert!(projective_space_fan(0).is_err());
        let r = projective_space_fan(2).unwrap().validate();
        assert!(r.smooth && r.projective);
    }

    #[test]
    fn products() {
        let p1 = projective_space_fan(1).unwrap();
        let p3 = projective_space_fan(3).unwrap();
        let a = product_fan(&p1, &p1);
        assert_eq!((a.n_rays(), a.max_cones().len()), (4, 4));
        let b = product_fan(&p1, &p3);
        assert_eq!((b.n_rays(), b.max_cones().len(), b.dim()), (6, 8, 4));
        assert_eq!(b.validate(), p1.validate());
        let rebuilt = Fan::new(b.dim(), b.rays().to_vec(), b.max_cones().to_vec()).unwrap();
        assert_eq!(rebuilt, b);
    }

    #[test]
    fn subdivisions() {
        let p2 = projective_space_fan(2).unwrap();
        let f1 = star_subdivision(&p2, &[0, 1]).unwrap();
        assert_eq!(f1.n_rays(), 4);
        assert_eq!(f1.rays()[3], vec![Int::from(1), Int::from(1)]);
        assert!(is_isomorphic(&f1, &hirzebruch_fan(1).unwrap()));
        assert!(matches!(
            star_subdivision(&p2, &[0]),
            Err(Error::InvalidParameter(_))
        ));
        let line = star_subdivision(&projective_space_fan(4).unwrap(), &[0, 1, 2]).unwrap();
        assert_eq!(line, blowup_pn_along_linear(4, 1).unwrap());
        let f = Fan::new(4, line.rays().to_vec(), line.max_cones().to_vec()).unwrap();
        assert!(f.validate().projective && f.validate().smooth);
    }

    #[test]
    fn linear_blowups() {
        let bl = blowup_pn_along_linear(4, 1).unwrap();
        assert_eq!(bl.n_rays(), 6);
        assert!(is_m_neighborly(&bl, 2));
        let f1 = blowup_pn_along_linear(2, 0).unwrap();
        assert!(is_isomorphic(&f1, &hirzebruch_fan(1).unwrap()));
        assert!(!is_m_neighborly(&f1, 2));
        assert!(!is_m_neighborly(&blowup_pn_along_linear(4, 0).unwrap(), 2));
        assert!(blowup_pn_along_linear(4, 3).is_err());
    }

    #[test]
    fn bundles_over_p1_are_hirzebruch() {
        let p1 = projective_space_fan(1).unwrap();
        for a in 0..4 {
            let divs = [
                TorusInvariantDivisor::zero(2),
                TorusInvariantDivisor::from_i64(&[a, 0]),
            ];
            let f = projective_bundle_fan(&p1, &divs).unwrap();
            assert!(is_isomorphic(&f, &hirzebruch_fan(a).unwrap()), "a = {a}");
        }
        let trivial = projective_bundle_fan(
            &p1,
            &[
                TorusInvariantDivisor::zero(2),
                TorusInvariantDivisor::zero(2),
            ],
        )
        .unwrap();
        assert!(is_isomorphic(&trivial, &product_fan(&p1, &p1)));
        assert!(!is_isomorphic(&trivial, &hirzebruch_fan(1).unwrap()));
        assert!(projective_bundle_fan(&p1, &[TorusInvariantDivisor::zero(2)]).is_err());
        assert!(matches!(
            projective_bundle_fan(
                &p1,
                &[
                    TorusInvariantDivisor::zero(2),
                    TorusInvariantDivisor::zero(3)
                ]
            ),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn bundle_over_line_blowup() {
        let z = blowup_pn_along_linear(4, 1).unwrap();
        let e = TorusInvariantDivisor::prime(6, 5);
        let h = TorusInvariantDivisor::prime(6, 4);
        let x = projective_bundle_fan(&z, &[e, h.clone(), h]).unwrap();
        assert_eq!((x.n_rays(), x.dim()), (9, 6));
        let r = x.validate();
        assert!(r.smooth && r.projective);
    }
}
