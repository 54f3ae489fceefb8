//! Simplicial fans.
//!
//! A [`Fan`] stores its rays in input order and its maximal cones as sorted
//! ray-index sets. Construction checks the structural invariants (primitive
//! distinct rays, simplicial cones, antichain, proper pairwise intersections);
//! the geometric properties are reported by [`Fan::validate`].

mod construct;
mod json;
mod sections;

pub use construct::{
    blowup_pn_along_linear, hirzebruch_fan, is_isomorphic, product_fan, projective_bundle_fan,
    projective_space_fan, star_subdivision,
};
pub use json::{DivisorJson, FanJson, ParseError};
pub use sections::{count_sections, divisor_polytope, in_polytope, HalfSpace};

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::bits::{self, Mask};
use crate::linalg::{
    clear_denominators, kernel_basis, primitive, smith_normal_form, solve_independent, to_rat, Int,
    IntMatrix, Rat,
};
use crate::polycone::lp::{LinearProgram, LpOutcome, Relation};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fan {
    dim: usize,
    rays: Vec<Vec<Int>>,
    max_cones: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FanReport {
    pub simplicial: bool,
    pub smooth: bool,
    pub complete: bool,
    pub projective: bool,
}

/// A torus-invariant Weil divisor `sum a_rho D_rho`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusInvariantDivisor {
    pub coefficients: Vec<Int>,
}

impl TorusInvariantDivisor {
    pub fn new(coefficients: Vec<Int>) -> Self {
        TorusInvariantDivisor { coefficients }
    }

    pub fn from_i64(coefficients: &[i64]) -> Self {
        Self::new(coefficients.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn zero(n: usize) -> Self {
        Self::new(vec![Int::zero(); n])
    }

    /// The prime divisor `D_i`.
    pub fn prime(n: usize, i: usize) -> Self {
        let mut d = Self::zero(n);
        d.coefficients[i] = Int::one();
        d
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "divisor lengths differ");
        Self::new(
            self.coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn scale(&self, k: &Int) -> Self {
        Self::new(self.coefficients.iter().map(|a| a * k).collect())
    }
}

impl Fan {
    /// Builds a fan, checking every structural invariant.
    pub fn new(dim: usize, rays: Vec<Vec<Int>>, max_cones: Vec<Vec<usize>>) -> Result<Fan> {
        let fan = Self::new_unchecked_intersections(dim, rays, max_cones)?;
        fan.check_intersections()?;
        Ok(fan)
    }

    pub fn from_i64(dim: usize, rays: &[Vec<i64>], max_cones: &[Vec<usize>]) -> Result<Fan> {
        let rays = rays
            .iter()
            .map(|r| r.iter().map(|&x| Int::from(x)).collect())
            .collect();
        Fan::new(dim, rays, max_cones.to_vec())
    }

    /// All checks except proper pairwise intersection, for constructions
    /// that preserve it.
    pub(crate) fn new_unchecked_intersections(
        dim: usize,
        rays: Vec<Vec<Int>>,
        max_cones: Vec<Vec<usize>>,
    ) -> Result<Fan> {
        if dim == 0 {
            return Err(Error::InvalidParameter(
                "lattice rank must be positive".into(),
            ));
        }
        if rays.len() > bits::MAX_BITS {
            return Err(Error::CapExceeded(format!(
                "{} rays (at most {})",
                rays.len(),
                bits::MAX_BITS
            )));
        }
        for r in &rays {
            if r.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: r.len(),
                });
            }
            if primitive(r)? != *r {
                return Err(Error::InvalidFan(format!("ray {r:?} is not primitive")));
            }
        }
        let distinct: BTreeSet<&Vec<Int>> = rays.iter().collect();
        if distinct.len() != rays.len() {
            return Err(Error::InvalidFan("rays are not distinct".into()));
        }
        let mut cones = Vec::with_capacity(max_cones.len());
        let mut used = vec![false; rays.len()];
        for c in max_cones {
            let mut s = c.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != c.len() {
                return Err(Error::InvalidFan(format!("cone {c:?} repeats a ray")));
            }
            if s.is_empty() {
                return Err(Error::InvalidFan("empty maximal cone".into()));
            }
            if let Some(&bad) = s.iter().find(|&&i| i >= rays.len()) {
                return Err(Error::InvalidFan(format!("ray index {bad} out of range")));
            }
            let gens: Vec<Vec<Int>> = s.iter().map(|&i| rays[i].clone()).collect();
            if s.len() > dim || IntMatrix::from_rows_with_width(&gens, dim).rank() != s.len() {
                return Err(Error::NonSimplicial(s));
            }
            for &i in &s {
                used[i] = true;
            }
            cones.push(s);
        }
        if let Some(i) = used.iter().position(|u| !u) {
            return Err(Error::InvalidFan(format!(
                "ray {i} lies in no maximal cone"
            )));
        }
        let masks: Vec<Mask> = cones.iter().map(|c| bits::mask_of(c)).collect();
        for (a, &ma) in masks.iter().enumerate() {
            for (b, &mb) in masks.iter().enumerate() {
                if a != b && bits::is_subset(ma, mb) {
                    return Err(Error::InvalidFan(format!(
                        "cone {:?} is contained in cone {:?}",
                        cones[a], cones[b]
                    )));
                }
            }
        }
        cones.sort_by_key(|c| bits::lex_key(bits::mask_of(c)));
        Ok(Fan {
            dim,
            rays,
            max_cones: cones,
        })
    }

    /// Two simplicial cones meet in their common face iff a hyperplane
    /// vanishes on the shared rays and strictly separates the rest.
    fn check_intersections(&self) -> Result<()> {
        for a in 0..self.max_cones.len() {
            for b in a + 1..self.max_cones.len() {
                let (ca, cb) = (&self.max_cones[a], &self.max_cones[b]);
                let union: BTreeSet<usize> = ca.iter().chain(cb).copied().collect();
                let gens: Vec<Vec<Int>> = union.iter().map(|&i| self.rays[i].clone()).collect();
                if IntMatrix::from_rows_with_width(&gens, self.dim).rank() == union.len() {
                    continue;
                }
                if !self.separable(ca, cb) {
                    return Err(Error::InvalidFan(format!(
                        "cones {ca:?} and {cb:?} do not meet in a common face"
                    )));
                }
            }
        }
        Ok(())
    }

    fn separable(&self, ca: &[usize], cb: &[usize]) -> bool {
        let d = self.dim;
        let mut lp = LinearProgram::new(d + 1);
        let t_coeff = |v: &[Int], sign: i64, t: i64| -> Vec<Int> {
            let mut row: Vec<Int> = v.iter().map(|x| x * sign).collect();
            row.push(Int::from(t));
            row
        };
        for &i in ca {
            let v = &self.rays[i];
            if cb.contains(&i) {
                lp.add_int(&t_coeff(v, 1, 0), Relation::Eq, Int::zero());
            } else {
                lp.add_int(&t_coeff(v, 1, -1), Relation::Ge, Int::zero());
            }
        }
        for &i in cb.iter().filter(|i| !ca.contains(i)) {
            lp.add_int(&t_coeff(&self.rays[i], -1, -1), Relation::Ge, Int::zero());
        }
        let mut cap = vec![Int::zero(); d];
        cap.push(Int::one());
        lp.add_int(&cap, Relation::Le, Int::one());
        let mut obj = vec![Rat::zero(); d];
        obj.push(Rat::one());
        matches!(lp.maximize(&obj), LpOutcome::Optimal { value, .. } if value.is_positive())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<Int>] {
        &self.rays
    }

    pub fn n_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    pub fn cone_masks(&self) -> Vec<Mask> {
        self.max_cones.iter().map(|c| bits::mask_of(c)).collect()
    }

    /// Rows are the rays.
    pub fn ray_matrix(&self) -> IntMatrix {
        IntMatrix::from_rows_with_width(&self.rays, self.dim)
    }

    /// Is the index set a face of some maximal cone?
    pub fn is_cone(&self, face: &[usize]) -> bool {
        let m = bits::mask_of(face);
        self.cone_masks().iter().any(|&c| bits::is_subset(m, c))
    }

    pub fn validate(&self) -> FanReport {
        let complete = self.is_complete();
        FanReport {
            simplicial: true,
            smooth: self.is_smooth(),
            complete,
            projective: complete && self.projectivity_witness().is_some(),
        }
    }

    pub fn is_smooth(&self) -> bool {
        self.max_cones.iter().all(|c| self.is_unimodular(c))
    }

    /// The cone's rays extend to a basis of the lattice.
    pub fn is_unimodular(&self, cone: &[usize]) -> bool {
        let gens: Vec<Vec<Int>> = cone.iter().map(|&i| self.rays[i].clone()).collect();
        let snf = smith_normal_form(&IntMatrix::from_rows_with_width(&gens, self.dim));
        snf.diag.iter().take(cone.len()).all(|d| d.is_one())
    }

    /// Do the rays generate the lattice? Fails exactly when the class group
    /// has torsion coming from a finite quotient of the lattice.
    pub fn rays_span_lattice(&self) -> bool {
        let snf = smith_normal_form(&self.ray_matrix());
        snf.rank() == self.dim && snf.diag.iter().take(self.dim).all(|d| d.is_one())
    }

    /// Walls: codimension-one faces of full-dimensional maximal cones, with the
    /// maximal cones containing them.
    pub(crate) fn walls(&self) -> BTreeMap<Vec<usize>, Vec<usize>> {
        let mut walls: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (k, c) in self.max_cones.iter().enumerate() {
            if c.len() != self.dim {
                continue;
            }
            for skip in 0..c.len() {
                let face: Vec<usize> = c
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != skip)
                    .map(|(_, &i)| i)
                    .collect();
                walls.entry(face).or_default().push(k);
            }
        }
        walls
    }

    pub fn is_complete(&self) -> bool {
        if self.max_cones.iter().any(|c| c.len() != self.dim) {
            return false;
        }
        if self.walls().values().any(|cs| cs.len() != 2) {
            return false;
        }
        probe_vectors(self.dim)
            .iter()
            .all(|p| self.cones_containing(p) == 1)
    }

    fn cones_containing(&self, p: &[Int]) -> usize {
        let target = to_rat(p);
        self.max_cones
            .iter()
            .filter(|c| {
                let gens: Vec<Vec<Int>> = c.iter().map(|&i| self.rays[i].clone()).collect();
                match solve_independent(&gens, &target) {
                    Some(x) => x.iter().all(|v| !v.is_negative()),
                    None => false,
                }
            })
            .count()
    }

    /// Maximizes the slack of the wall inequalities of a divisor's support
    /// function. Returns an ample divisor when the slack is positive.
    fn projectivity_witness(&self) -> Option<TorusInvariantDivisor> {
        let n = self.n_rays();
        let mut lp = LinearProgram::new(n + 1);
        for (face, cones) in self.walls() {
            if cones.len() != 2 {
                return None;
            }
            let mut idx = face.clone();
            let outer: Vec<usize> = cones
                .iter()
                .map(|&k| {
                    *self.max_cones[k]
                        .iter()
                        .find(|i| !face.contains(i))
                        .expect("maximal cone extends its wall")
                })
                .collect();
            idx.extend(&outer);
            let cols: Vec<Vec<Int>> = idx.iter().map(|&i| self.rays[i].clone()).collect();
            let kernel = kernel_basis(&IntMatrix::from_columns(&cols, self.dim));
            if kernel.ncols() != 1 {
                return None;
            }
            let mut rel = kernel.column(0);
            if rel[self.dim].is_negative() {
                rel.iter_mut().for_each(|x| *x = -x.clone());
            }
            if !rel[self.dim - 1].is_positive() || !rel[self.dim].is_positive() {
                return None;
            }
            let mut row = vec![Int::zero(); n + 1];
            for (&i, c) in idx.iter().zip(&rel) {
                row[i] = c.clone();
            }
            row[n] = -Int::one();
            lp.add_int(&row, Relation::Ge, Int::zero());
        }
        let mut cap = vec![Int::zero(); n + 1];
        cap[n] = Int::one();
        lp.add_int(&cap, Relation::Le, Int::one());
        let mut obj = vec![Rat::zero(); n + 1];
        obj[n] = Rat::one();
        match lp.maximize(&obj) {
            LpOutcome::Optimal { value, point } if value.is_positive() => {
                Some(TorusInvariantDivisor::new(clear_denominators(&point[..n])))
            }
            _ => None,
        }
    }

    pub fn is_projective(&self) -> bool {
        self.is_complete() && self.projectivity_witness().is_some()
    }

    /// An ample torus-invariant divisor.
    pub fn ample_divisor(&self) -> Result<TorusInvariantDivisor> {
        if !self.is_complete() {
            return Err(Error::NotComplete);
        }
        self.projectivity_witness().ok_or(Error::NotProjective)
    }

    /// Is the divisor `div(chi^u)` for some lattice point `u`?
    pub fn is_principal(&self, d: &TorusInvariantDivisor) -> bool {
        let target = to_rat(&d.coefficients);
        let cols: Vec<Vec<Int>> = (0..self.dim)
            .map(|j| self.rays.iter().map(|r| r[j].clone()).collect())
            .collect();
        match solve_independent(&cols, &target) {
            Some(u) => u.iter().all(|x| x.is_integer()),
            None => false,
        }
    }
}

/// Every m-subset of rays lies in a common maximal cone.
pub fn is_m_neighborly(f: &Fan, m: usize) -> bool {
    let n = f.n_rays();
    if m > n {
        return false;
    }
    if m == 0 {
        return true;
    }
    let masks = f.cone_masks();
    let mut combo: Vec<usize> = (0..m).collect();
    loop {
        let s = bits::mask_of(&combo);
        if !masks.iter().any(|&c| bits::is_subset(s, c)) {
            return false;
        }
        let mut i = m;
        while i > 0 && combo[i - 1] == n - m + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return true;
        }
        combo[i - 1] += 1;
        for j in i..m {
            combo[j] = combo[j - 1] + 1;
        }
    }
}

/// Largest m for which the fan is m-neighborly.
pub fn max_neighborliness(f: &Fan) -> usize {
    (1..=f.n_rays())
        .take_while(|&m| is_m_neighborly(f, m))
        .last()
        .unwrap_or(0)
}

/// Sign patterns applied to a fixed vector with rationally independent-looking
/// entries (scaled square roots of primes), so no probe lies on a wall of a
/// small fan.
fn probe_vectors(dim: usize) -> Vec<Vec<Int>> {
    const PRIMES: [u64; 16] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53];
    let base: Vec<Int> = (0..dim)
        .map(|i| {
            let p = PRIMES[i % PRIMES.len()] + 56 * (i / PRIMES.len()) as u64;
            let scaled = p as u128 * 1_000_000_000_000_000_000u128;
            Int::from(isqrt(scaled) + 1_000_003 * i as u128)
        })
        .collect();
    let patterns = 1usize << dim.min(12);
    (0..patterns)
        .map(|s| {
            base.iter()
                .enumerate()
                .map(|(i, x)| {
                    if i < 12 && s >> i & 1 == 1 {
                        -x
                    } else {
                        x.clone()
                    }
                })
                .collect()
        })
        .collect()
}

fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

pub(crate) fn to_i64_vec(v: &[Int]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| {
            x.to_i64()
                .ok_or_else(|| Error::InvalidParameter(format!("{x} does not fit in 64 bits")))
        })
        .collect()
}
