//! Variation of GIT for the Cox torus acting on affine space.
//!
//! A point of `V = A^{rays}` whose nonzero coordinates are `S` is
//! `chi`-semistable iff `chi` lies in the cone spanned by the degrees of the
//! variables in `S`. The unstable supports therefore form a downward-closed
//! family, stored by its facets in a [`ChamberSignature`].

mod chambers;

pub use chambers::{
    enumerate_chambers, is_boundary_character, nef_chamber_matches, same_chamber,
    theorem_main_git_step, wall_hyperplanes, Chamber, ChamberDecomposition, ChamberReport,
    MAX_CHAMBER_RANK, MAX_CHAMBER_RAYS,
};

use std::collections::HashMap;

use num_traits::Zero;
use serde::Serialize;

use crate::bits::{self, Mask};
use crate::cox::{minimal_hitting_sets, DegreeMap};
use crate::fan::Fan;
use crate::linalg::{Int, Rat};
use crate::polycone::lp::in_cone;
use crate::polycone::RationalCone;
use crate::{Error, Result};

/// The facets of the family of `chi`-unstable supports.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ChamberSignature {
    pub n_vars: usize,
    /// Sorted ray-index sets, in lexicographic order.
    pub facets: Vec<Vec<usize>>,
    /// Set when `chi` is outside the effective cone (every support unstable).
    pub outside_effective: bool,
}

impl ChamberSignature {
    fn from_masks(n_vars: usize, masks: &[Mask], outside_effective: bool) -> Self {
        let mut facets: Vec<Vec<usize>> = masks.iter().map(|&m| bits::indices(m)).collect();
        facets.sort();
        ChamberSignature {
            n_vars,
            facets,
            outside_effective,
        }
    }

    pub fn masks(&self) -> Vec<Mask> {
        self.facets.iter().map(|f| bits::mask_of(f)).collect()
    }

    /// Is the support `s` unstable?
    pub fn is_unstable(&self, s: Mask) -> bool {
        self.masks().iter().any(|&f| bits::is_subset(s, f))
    }

    /// Codimension of the unstable locus in `V`; `n_vars + 1` when it is empty.
    pub fn codim(&self) -> usize {
        self.facets
            .iter()
            .map(|f| self.n_vars - f.len())
            .min()
            .unwrap_or(self.n_vars + 1)
    }

    /// Is every unstable support of `self` also unstable for `other`?
    pub fn is_contained_in(&self, other: &ChamberSignature) -> bool {
        let theirs = other.masks();
        self.masks()
            .iter()
            .all(|&f| theirs.iter().any(|&g| bits::is_subset(f, g)))
    }
}

fn check_character(d: &DegreeMap, chi: &[Int]) -> Result<()> {
    if chi.len() != d.free_rank() {
        return Err(Error::DimensionMismatch {
            expected: d.free_rank(),
            found: chi.len(),
        });
    }
    Ok(())
}

/// Cached semistability oracle for one character.
pub(crate) struct Oracle<'a> {
    d: &'a DegreeMap,
    chi: &'a [Int],
    cache: HashMap<Mask, bool>,
}

impl<'a> Oracle<'a> {
    pub(crate) fn new(d: &'a DegreeMap, chi: &'a [Int]) -> Self {
        Oracle {
            d,
            chi,
            cache: HashMap::new(),
        }
    }

    pub(crate) fn semistable(&mut self, s: Mask) -> bool {
        if let Some(&v) = self.cache.get(&s) {
            return v;
        }
        let v = in_cone(&self.d.degrees_of(s), self.chi);
        self.cache.insert(s, v);
        v
    }
}

/// Facets of the unstable family, by dualize-and-advance: every support not
/// covered by the facets found so far contains a minimal hitting set of their
/// complements, so the search stops once all of those are semistable.
pub fn unstable_supports(d: &DegreeMap, chi: &[Int]) -> Result<ChamberSignature> {
    check_character(d, chi)?;
    let n = d.n_rays();
    let full = bits::full(n);
    let mut oracle = Oracle::new(d, chi);
    if !oracle.semistable(full) {
        return Ok(ChamberSignature::from_masks(n, &[full], true));
    }
    let mut facets: Vec<Mask> = Vec::new();
    loop {
        let complements: Vec<Mask> = facets.iter().map(|&f| full & !f).collect();
        let candidates = minimal_hitting_sets(n, &complements)?;
        let Some(seed) = candidates.into_iter().find(|&t| !oracle.semistable(t)) else {
            break;
        };
        let mut facet = seed;
        for i in 0..n {
            let grown = facet | 1 << i;
            if grown != facet && !oracle.semistable(grown) {
                facet = grown;
            }
        }
        facets.push(facet);
    }
    Ok(ChamberSignature::from_masks(n, &facets, false))
}

/// Same as [`unstable_supports`]; the signature identifies the GIT chamber.
pub fn chamber_signature(d: &DegreeMap, chi: &[Int]) -> Result<ChamberSignature> {
    unstable_supports(d, chi)
}

/// Codimension of `V^un_chi` in `V`: `n_rays - max facet size`.
pub fn unstable_codim(d: &DegreeMap, chi: &[Int]) -> Result<usize> {
    Ok(unstable_supports(d, chi)?.codim())
}

/// Cone spanned by all variable degrees.
pub fn effective_cone(d: &DegreeMap) -> RationalCone {
    RationalCone::from_generators(d.free_rank(), d.degrees()).expect("degree widths agree")
}

/// Intersection over each variable of the cone spanned by the other degrees.
pub fn moving_cone(d: &DegreeMap) -> RationalCone {
    let n = d.n_rays();
    let full = bits::full(n);
    let mut cone = effective_cone(d);
    for i in 0..n {
        let others = RationalCone::from_generators(d.free_rank(), &d.degrees_of(full & !(1 << i)))
            .expect("degree widths agree");
        cone = cone.intersect(&others).expect("same ambient space");
    }
    cone
}

/// Intersection over maximal cones of the cone spanned by the degrees of the
/// rays outside the cone. Fails unless the result is full-dimensional.
pub fn nef_cone(f: &Fan, d: &DegreeMap) -> Result<RationalCone> {
    if d.n_rays() != f.n_rays() {
        return Err(Error::DimensionMismatch {
            expected: f.n_rays(),
            found: d.n_rays(),
        });
    }
    let full = bits::full(f.n_rays());
    let mut cone = effective_cone(d);
    for c in f.cone_masks() {
        let gens = d.degrees_of(full & !c);
        cone = cone.intersect(&RationalCone::from_generators(d.free_rank(), &gens)?)?;
    }
    if !cone.is_full_dimensional() || cone.is_zero() {
        return Err(Error::NotProjective);
    }
    Ok(cone)
}

/// Sum of the extremal rays of the nef cone.
pub fn ample_character(f: &Fan, d: &DegreeMap) -> Result<Vec<Int>> {
    let nef = nef_cone(f, d)?;
    Ok(nef
        .relative_interior_point()?
        .iter()
        .map(Rat::to_integer)
        .collect())
}

/// Codimension of a stable base locus, or `Empty`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BaseLocus {
    Empty,
    Codim(usize),
}

/// The base locus is the image of the `chi`-unstable strata that are
/// semistable for an ample class. Those strata are largest at the facets of
/// the `chi`-unstable family.
pub fn stable_base_locus_codim(f: &Fan, d: &DegreeMap, chi: &[Int]) -> Result<BaseLocus> {
    check_character(d, chi)?;
    let ample = ample_character(f, d)?;
    let sig = unstable_supports(d, chi)?;
    if sig.outside_effective {
        return Err(Error::OutsideEffectiveCone(format_character(chi)));
    }
    let mut oracle = Oracle::new(d, &ample);
    let best = sig
        .masks()
        .into_iter()
        .filter(|&s| oracle.semistable(s))
        .map(bits::size)
        .max();
    Ok(match best {
        Some(k) => BaseLocus::Codim(d.n_rays() - k),
        None => BaseLocus::Empty,
    })
}

pub(crate) fn format_character(chi: &[Int]) -> String {
    let parts: Vec<String> = chi.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Is the character zero?
pub fn is_trivial(chi: &[Int]) -> bool {
    chi.iter().all(Zero::is_zero)
}
