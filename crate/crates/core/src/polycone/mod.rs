//! Rational polyhedral cones with both descriptions kept in sync.
//!
//! A cone is stored in canonical form: a reduced-echelon lineality basis,
//! extreme rays projected orthogonally to the lineality space, irredundant
//! facet normals, and a basis of the equations cutting out its linear span.
//! Two cones are equal exactly when their canonical forms agree.

pub(crate) mod dd;
pub mod lp;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::linalg::{dot, dot_rat, to_rat, Int, IntMatrix, Rat};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalCone {
    ambient_dim: usize,
    rays: Vec<Vec<Int>>,
    lineality: Vec<Vec<Int>>,
    facets: Vec<Vec<Int>>,
    equations: Vec<Vec<Int>>,
}

fn check_dims(dim: usize, vs: &[Vec<Int>]) -> Result<()> {
    match vs.iter().find(|v| v.len() != dim) {
        Some(v) => Err(Error::DimensionMismatch {
            expected: dim,
            found: v.len(),
        }),
        None => Ok(()),
    }
}

fn with_negatives(vs: &[Vec<Int>]) -> Vec<Vec<Int>> {
    vs.iter()
        .flat_map(|v| [v.clone(), v.iter().map(|x| -x).collect()])
        .collect()
}

impl RationalCone {
    pub fn from_generators(dim: usize, generators: &[Vec<Int>]) -> Result<Self> {
        check_dims(dim, generators)?;
        let dual = dd::cone_generators(dim, generators);
        let primal_ineqs: Vec<Vec<Int>> = dual
            .rays
            .iter()
            .cloned()
            .chain(with_negatives(&dual.lineality))
            .collect();
        let primal = dd::cone_generators(dim, &primal_ineqs);
        Ok(RationalCone {
            ambient_dim: dim,
            rays: primal.rays,
            lineality: primal.lineality,
            facets: dual.rays,
            equations: dual.lineality,
        })
    }

    pub fn from_generators_i64(dim: usize, generators: &[Vec<i64>]) -> Result<Self> {
        let g: Vec<Vec<Int>> = generators
            .iter()
            .map(|v| v.iter().map(|&x| Int::from(x)).collect())
            .collect();
        Self::from_generators(dim, &g)
    }

    /// The cone `{x : <n, x> >= 0 for all n}`.
    pub fn from_inequalities(dim: usize, normals: &[Vec<Int>]) -> Result<Self> {
        check_dims(dim, normals)?;
        let primal = dd::cone_generators(dim, normals);
        let gens: Vec<Vec<Int>> = primal
            .rays
            .iter()
            .cloned()
            .chain(with_negatives(&primal.lineality))
            .collect();
        let dual = dd::cone_generators(dim, &gens);
        Ok(RationalCone {
            ambient_dim: dim,
            rays: primal.rays,
            lineality: primal.lineality,
            facets: dual.rays,
            equations: dual.lineality,
        })
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_generators(dim, &[]).expect("dimension is consistent")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Extreme rays (modulo lineality).
    pub fn rays(&self) -> &[Vec<Int>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vec<Int>] {
        &self.lineality
    }

    pub fn lineality_dim(&self) -> usize {
        self.lineality.len()
    }

    /// Irredundant inequalities (modulo the equations).
    pub fn facets(&self) -> &[Vec<Int>] {
        &self.facets
    }

    pub fn equations(&self) -> &[Vec<Int>] {
        &self.equations
    }

    /// Conic generators: extreme rays plus both signs of each lineality direction.
    pub fn generators(&self) -> Vec<Vec<Int>> {
        self.rays
            .iter()
            .cloned()
            .chain(with_negatives(&self.lineality))
            .collect()
    }

    /// Inequality normals: facets plus both signs of each equation.
    pub fn facet_normals(&self) -> Vec<Vec<Int>> {
        self.facets
            .iter()
            .cloned()
            .chain(with_negatives(&self.equations))
            .collect()
    }

    fn check_point(&self, len: usize) -> Result<()> {
        if len != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_dim,
                found: len,
            });
        }
        Ok(())
    }

    pub fn contains(&self, v: &[Rat]) -> Result<bool> {
        self.check_point(v.len())?;
        Ok(self.equations.iter().all(|e| dot_rat(e, v).is_zero())
            && self.facets.iter().all(|n| !dot_rat(n, v).is_negative()))
    }

    pub fn contains_int(&self, v: &[Int]) -> Result<bool> {
        self.check_point(v.len())?;
        Ok(self.equations.iter().all(|e| dot(e, v).is_zero())
            && self.facets.iter().all(|n| !dot(n, v).is_negative()))
    }

    /// In the relative interior: on the span, strictly inside every facet.
    pub fn contains_in_relative_interior(&self, v: &[Int]) -> Result<bool> {
        self.check_point(v.len())?;
        Ok(self.equations.iter().all(|e| dot(e, v).is_zero())
            && self.facets.iter().all(|n| dot(n, v).is_positive()))
    }

    pub fn contains_cone(&self, other: &RationalCone) -> Result<bool> {
        self.check_point(other.ambient_dim)?;
        for g in other.generators() {
            if !self.contains_int(&g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn intersect(&self, other: &RationalCone) -> Result<RationalCone> {
        self.check_point(other.ambient_dim)?;
        let mut normals = self.facet_normals();
        normals.extend(other.facet_normals());
        RationalCone::from_inequalities(self.ambient_dim, &normals)
    }

    /// Sum of the extreme rays; lies strictly inside every proper facet.
    pub fn relative_interior_point(&self) -> Result<Vec<Rat>> {
        if self.is_zero() {
            return Err(Error::ZeroCone);
        }
        let mut sum = vec![Int::zero(); self.ambient_dim];
        for r in &self.rays {
            for (s, x) in sum.iter_mut().zip(r) {
                *s += x;
            }
        }
        Ok(to_rat(&sum))
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn is_strictly_convex(&self) -> bool {
        self.lineality.is_empty()
    }

    /// Dimension of the linear span.
    pub fn dim(&self) -> usize {
        self.ambient_dim - self.equations.len()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn summary(&self) -> ConeSummary {
        let s = |vs: &[Vec<Int>]| -> Vec<Vec<String>> {
            vs.iter()
                .map(|v| v.iter().map(|x| x.to_string()).collect())
                .collect()
        };
        ConeSummary {
            ambient_dim: self.ambient_dim,
            dim: self.dim(),
            rays: s(&self.rays),
            lineality: s(&self.lineality),
            facets: s(&self.facets),
            equations: s(&self.equations),
        }
    }
}

/// Serializable view of a cone (big integers as decimal strings).
#[derive(Clone, Debug, Serialize)]
pub struct ConeSummary {
    pub ambient_dim: usize,
    pub dim: usize,
    pub rays: Vec<Vec<String>>,
    pub lineality: Vec<Vec<String>>,
    pub facets: Vec<Vec<String>>,
    pub equations: Vec<Vec<String>>,
}

pub fn cone_from_generators(dim: usize, gens: &[Vec<Int>]) -> Result<RationalCone> {
    RationalCone::from_generators(dim, gens)
}

/// Equality by mutual containment of generators.
pub fn cones_equal(a: &RationalCone, b: &RationalCone) -> Result<bool> {
    Ok(a.contains_cone(b)? && b.contains_cone(a)?)
}

/// Rank of a list of integer vectors.
pub fn rank_of(vs: &[Vec<Int>], dim: usize) -> usize {
    if vs.is_empty() {
        return 0;
    }
    IntMatrix::from_rows_with_width(vs, dim).rank()
}
