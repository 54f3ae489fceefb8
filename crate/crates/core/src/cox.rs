//! The Cox ring of a toric variety, through its combinatorial shadow.
//!
//! The ring itself is a polynomial ring with one variable per ray; what
//! matters here is its grading by the class group ([`DegreeMap`]) and the
//! irrelevant ideal ([`SquarefreeIdeal`]) together with its Stanley–Reisner
//! complex ([`FaceComplex`]).

use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::bits::{self, Mask};
use crate::fan::{Fan, TorusInvariantDivisor};
use crate::linalg::{cokernel, dot, smith_normal_form, Int, IntMatrix};
use crate::{Error, Result};

/// Largest number of variables accepted by the hitting-set search.
pub const MAX_VARS: usize = 20;

/// The grading `Z^{rays} -> Cl(X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeMap {
    n_rays: usize,
    torsion: Vec<Int>,
    /// Free part of each variable's degree, in the Hermite-canonical basis.
    degrees: Vec<Vec<Int>>,
    /// Torsion residues of each variable's degree.
    residues: Vec<Vec<Int>>,
    projection: IntMatrix,
    torsion_projection: IntMatrix,
}

/// Cox grading of a complete fan.
pub fn degree_map(f: &Fan) -> Result<DegreeMap> {
    if !f.is_complete() {
        return Err(Error::NotComplete);
    }
    Ok(DegreeMap::of_fan(f))
}

impl DegreeMap {
    /// Cokernel of `M -> Z^{rays}`, `u -> (<u, v_rho>)`, for any fan.
    pub fn of_fan(f: &Fan) -> DegreeMap {
        let coker = cokernel(&f.ray_matrix());
        let n = f.n_rays();
        let degrees = (0..n).map(|j| coker.projection.column(j)).collect();
        let residues = (0..n)
            .map(|j| {
                coker
                    .torsion
                    .iter()
                    .enumerate()
                    .map(|(t, d)| coker.torsion_projection[(t, j)].mod_floor(d))
                    .collect()
            })
            .collect();
        DegreeMap {
            n_rays: n,
            torsion: coker.torsion,
            degrees,
            residues,
            projection: coker.projection,
            torsion_projection: coker.torsion_projection,
        }
    }

    pub fn n_rays(&self) -> usize {
        self.n_rays
    }

    pub fn free_rank(&self) -> usize {
        self.projection.nrows()
    }

    pub fn torsion(&self) -> &[Int] {
        &self.torsion
    }

    pub fn degree(&self, i: usize) -> &[Int] {
        &self.degrees[i]
    }

    pub fn degrees(&self) -> &[Vec<Int>] {
        &self.degrees
    }

    pub fn residues(&self, i: usize) -> &[Int] {
        &self.residues[i]
    }

    /// Degrees of the variables in `s`.
    pub fn degrees_of(&self, s: Mask) -> Vec<Vec<Int>> {
        bits::indices(s)
            .into_iter()
            .map(|i| self.degrees[i].clone())
            .collect()
    }

    /// Free part of the class of a divisor.
    pub fn class_of(&self, d: &TorusInvariantDivisor) -> Vec<Int> {
        self.projection.mul_vec(&d.coefficients)
    }

    pub fn torsion_class_of(&self, d: &TorusInvariantDivisor) -> Vec<Int> {
        self.torsion_projection
            .mul_vec(&d.coefficients)
            .iter()
            .zip(&self.torsion)
            .map(|(x, t)| x.mod_floor(t))
            .collect()
    }

    /// A divisor whose free class is `chi`.
    pub fn lift(&self, chi: &[Int]) -> Result<TorusInvariantDivisor> {
        let r = self.free_rank();
        if chi.len() != r {
            return Err(Error::DimensionMismatch {
                expected: r,
                found: chi.len(),
            });
        }
        let snf = smith_normal_form(&self.projection);
        let y = snf.left.mul_vec(chi);
        let mut x = vec![Int::zero(); self.n_rays];
        for i in 0..r {
            x[i] = &y[i] / &snf.diag[i];
        }
        Ok(TorusInvariantDivisor::new(snf.right.mul_vec(&x)))
    }

    /// For every basis functional `u`, `sum <u, v_rho> deg(x_rho) = 0`, both in
    /// the free part and modulo each torsion factor.
    pub fn relations_hold(&self, f: &Fan) -> bool {
        (0..f.dim()).all(|j| {
            let coeffs: Vec<Int> = f.rays().iter().map(|v| v[j].clone()).collect();
            let free_ok = (0..self.free_rank()).all(|k| {
                let row: Vec<Int> = self.degrees.iter().map(|d| d[k].clone()).collect();
                dot(&coeffs, &row).is_zero()
            });
            let tors_ok = self.torsion.iter().enumerate().all(|(t, m)| {
                let row: Vec<Int> = self.residues.iter().map(|r| r[t].clone()).collect();
                dot(&coeffs, &row).mod_floor(m).is_zero()
            });
            free_ok && tors_ok
        })
    }
}

/// A squarefree monomial ideal, stored by the supports of its minimal
/// generators. The empty support stands for the unit ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeIdeal {
    n_vars: usize,
    supports: Vec<Mask>,
}

impl SquarefreeIdeal {
    pub fn new(n_vars: usize, supports: &[Vec<usize>]) -> Result<Self> {
        if n_vars > bits::MAX_BITS {
            return Err(Error::CapExceeded(format!("{n_vars} variables")));
        }
        if let Some(&bad) = supports.iter().flatten().find(|&&i| i >= n_vars) {
            return Err(Error::InvalidParameter(format!(
                "variable {bad} out of range"
            )));
        }
        let masks: Vec<Mask> = supports.iter().map(|s| bits::mask_of(s)).collect();
        Ok(Self::from_masks(n_vars, &masks))
    }

    pub(crate) fn from_masks(n_vars: usize, masks: &[Mask]) -> Self {
        let mut supports = bits::minimal_only(masks);
        supports.sort_by_key(|&m| bits::lex_key(m));
        SquarefreeIdeal { n_vars, supports }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn generator_supports(&self) -> Vec<Vec<usize>> {
        self.supports.iter().map(|&m| bits::indices(m)).collect()
    }

    pub fn support_masks(&self) -> &[Mask] {
        &self.supports
    }

    /// Is the monomial `prod_{i in s} x_i` in the ideal?
    pub fn contains_monomial(&self, s: Mask) -> bool {
        self.supports.iter().any(|&g| bits::is_subset(g, s))
    }
}

/// A simplicial complex stored by its facets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FaceComplex {
    n_verts: usize,
    facets: Vec<Mask>,
}

impl FaceComplex {
    pub fn n_verts(&self) -> usize {
        self.n_verts
    }

    pub fn facets(&self) -> Vec<Vec<usize>> {
        self.facets.iter().map(|&m| bits::indices(m)).collect()
    }

    pub fn facet_masks(&self) -> &[Mask] {
        &self.facets
    }

    pub fn contains_face(&self, s: Mask) -> bool {
        self.facets.iter().any(|&f| bits::is_subset(s, f))
    }
}

/// `I = < prod_{rho not in sigma} x_rho : sigma maximal >`.
pub fn irrelevant_ideal(f: &Fan) -> SquarefreeIdeal {
    let full = bits::full(f.n_rays());
    let supports: Vec<Mask> = f.cone_masks().iter().map(|&c| full & !c).collect();
    SquarefreeIdeal::from_masks(f.n_rays(), &supports)
}

/// Minimal sets meeting every member of `family`, in lexicographic order.
/// Berge's incremental transversal computation.
pub fn minimal_hitting_sets(n: usize, family: &[Mask]) -> Result<Vec<Mask>> {
    if n > MAX_VARS {
        return Err(Error::CapExceeded(format!(
            "{n} variables (hitting-set search handles at most {MAX_VARS})"
        )));
    }
    let mut sets: Vec<Mask> = bits::minimal_only(family);
    sets.sort_by_key(|&m| (bits::size(m), m));
    let mut transversals: Vec<Mask> = vec![0];
    for &s in &sets {
        let mut next: Vec<Mask> = Vec::new();
        for &t in &transversals {
            if t & s != 0 {
                next.push(t);
            } else {
                next.extend(bits::indices(s).into_iter().map(|v| t | 1 << v));
            }
        }
        next.sort_unstable();
        next.dedup();
        transversals = bits::minimal_only(&next);
    }
    transversals.sort_by_key(|&m| bits::lex_key(m));
    Ok(transversals)
}

/// Faces are the supports of squarefree monomials outside the ideal; the
/// facets are the complements of the minimal hitting sets of the generators.
pub fn stanley_reisner(i: &SquarefreeIdeal) -> Result<FaceComplex> {
    let full = bits::full(i.n_vars);
    let mut facets: Vec<Mask> = minimal_hitting_sets(i.n_vars, &i.supports)?
        .into_iter()
        .map(|h| full & !h)
        .collect();
    facets.sort_by_key(|&m| bits::lex_key(m));
    Ok(FaceComplex {
        n_verts: i.n_vars,
        facets,
    })
}

/// Minimal primes `<x_i : i in A>`, one per set `A`. An ideal without
/// generators has no components.
pub fn prime_decomposition(i: &SquarefreeIdeal) -> Result<Vec<Vec<usize>>> {
    if i.supports.is_empty() {
        return Ok(Vec::new());
    }
    Ok(minimal_hitting_sets(i.n_vars, &i.supports)?
        .into_iter()
        .map(bits::indices)
        .collect())
}

/// Codimension of `V(I)` in affine space: the smallest minimal prime. When the
/// zero locus is empty (no generators, or the unit ideal) the value is
/// `n_vars + 1`.
pub fn zero_locus_codim(i: &SquarefreeIdeal) -> Result<usize> {
    Ok(prime_decomposition(i)?
        .iter()
        .map(Vec::len)
        .min()
        .unwrap_or(i.n_vars + 1))
}

/// The Cox torus acts freely on the semistable locus iff every maximal cone
/// is unimodular.
pub fn check_free_action(f: &Fan) -> bool {
    f.max_cones().iter().all(|c| f.is_unimodular(c))
}

/// Picard rank of a complete fan.
pub fn picard_rank(f: &Fan) -> Result<usize> {
    Ok(degree_map(f)?.free_rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{product_fan, projective_space_fan, star_subdivision};

    fn iv(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    fn p1xp1() -> Fan {
        let p1 = projective_space_fan(1).unwrap();
        product_fan(&p1, &p1)
    }

    fn f1() -> Fan {
        star_subdivision(&projective_space_fan(2).unwrap(), &[0, 1]).unwrap()
    }

    #[test]
    fn degrees_of_small_fans() {
        let d = degree_map(&projective_space_fan(1).unwrap()).unwrap();
        assert_eq!(d.degrees(), &[iv(&[1]), iv(&[1])]);
        let d = degree_map(&p1xp1()).unwrap();
        assert_eq!(
            d.degrees(),
            &[iv(&[1, 0]), iv(&[1, 0]), iv(&[0, 1]), iv(&[0, 1])]
        );
        let f = f1();
        let d = degree_map(&f).unwrap();
        assert_eq!(d.free_rank(), 2);
        assert_eq!(d.degree(0), d.degree(1));
        let sum: Vec<Int> = d
            .degree(0)
            .iter()
            .zip(d.degree(3))
            .map(|(a, b)| a + b)
            .collect();
        assert_eq!(sum, d.degree(2));
        assert!(d.relations_hold(&f));
        assert!(d.torsion().is_empty());
    }

    #[test]
    fn incomplete_fans_have_no_degree_map() {
        let f = Fan::from_i64(2, &[vec![1, 0], vec![0, 1]], &[vec![0, 1]]).unwrap();
        assert!(matches!(degree_map(&f), Err(Error::NotComplete)));
    }

    #[test]
    fn torsion_is_detected() {
        // Rays spanning an index-2 sublattice: a quotient of P^1 x P^1.
        let f = Fan::from_i64(
            2,
            &[vec![1, 1], vec![1, -1], vec![-1, -1], vec![-1, 1]],
            &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]],
        )
        .unwrap();
        let d = degree_map(&f).unwrap();
        assert_eq!(d.torsion(), &[Int::from(2)]);
        assert!(d.relations_hold(&f));
        assert!(!f.rays_span_lattice());
    }

    #[test]
    fn lifting_characters() {
        let f = f1();
        let d = degree_map(&f).unwrap();
        for chi in [iv(&[1, 0]), iv(&[0, 1]), iv(&[3, -2])] {
            assert_eq!(d.class_of(&d.lift(&chi).unwrap()), chi);
        }
        assert!(d.lift(&iv(&[1])).is_err());
    }

    #[test]
    fn irrelevant_ideals() {
        let p2 = irrelevant_ideal(&projective_space_fan(2).unwrap());
        assert_eq!(p2.generator_supports(), vec![vec![0], vec![1], vec![2]]);
        let q = irrelevant_ideal(&p1xp1());
        assert_eq!(
            q.generator_supports(),
            vec![vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3]]
        );
        assert_eq!(irrelevant_ideal(&f1()).generator_supports().len(), 4);
        assert!(irrelevant_ideal(&f1())
            .generator_supports()
            .iter()
            .all(|s| s.len() == 2));
    }

    #[test]
    fn stanley_reisner_complexes() {
        let p2 = irrelevant_ideal(&projective_space_fan(2).unwrap());
        assert_eq!(
            stanley_reisner(&p2).unwrap().facets(),
            vec![Vec::<usize>::new()]
        );
        let q = irrelevant_ideal(&p1xp1());
        assert_eq!(
            stanley_reisner(&q).unwrap().facets(),
            vec![vec![0, 1], vec![2, 3]]
        );
        let empty = SquarefreeIdeal::new(3, &[]).unwrap();
        assert_eq!(
            stanley_reisner(&empty).unwrap().facets(),
            vec![vec![0, 1, 2]]
        );
    }

    #[test]
    fn primes_and_codimension() {
        let q = irrelevant_ideal(&p1xp1());
        assert_eq!(
            prime_decomposition(&q).unwrap(),
            vec![vec![0, 1], vec![2, 3]]
        );
        assert_eq!(zero_locus_codim(&q).unwrap(), 2);
        let p2 = irrelevant_ideal(&projective_space_fan(2).unwrap());
        assert_eq!(prime_decomposition(&p2).unwrap(), vec![vec![0, 1, 2]]);
        for n in 1..6 {
            let i = irrelevant_ideal(&projective_space_fan(n).unwrap());
            assert_eq!(zero_locus_codim(&i).unwrap(), n + 1);
        }
        let empty = SquarefreeIdeal::new(4, &[]).unwrap();
        assert!(prime_decomposition(&empty).unwrap().is_empty());
        assert_eq!(zero_locus_codim(&empty).unwrap(), 5);
        let unit = SquarefreeIdeal::new(2, &[vec![]]).unwrap();
        assert!(stanley_reisner(&unit).unwrap().facets().is_empty());
        assert_eq!(zero_locus_codim(&unit).unwrap(), 3);
    }

    #[test]
    fn caps() {
        let i = SquarefreeIdeal::new(21, &[vec![0, 20]]).unwrap();
        assert!(matches!(stanley_reisner(&i), Err(Error::CapExceeded(_))));
    }

    #[test]
    fn free_actions() {
        assert!(check_free_action(&projective_space_fan(4).unwrap()));
        let f = Fan::from_i64(
            2,
            &[vec![1, 0], vec![1, 2], vec![-1, -1]],
            &[vec![0, 1], vec![1, 2], vec![0, 2]],
        )
        .unwrap();
        assert!(!check_free_action(&f));
    }
}
