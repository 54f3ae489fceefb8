//! GIT chambers inside the effective cone.
//!
//! Every wall of every cone spanned by degrees lies on a hyperplane spanned by
//! `rank - 1` independent degree vectors. The cells of that arrangement are
//! enumerated by sign vectors, pruning with an exact LP; cells with equal
//! signatures are then merged into chambers.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{effective_cone, format_character, nef_cone, unstable_supports, ChamberSignature};
use crate::cox::{irrelevant_ideal, stanley_reisner, DegreeMap};
use crate::fan::Fan;
use crate::linalg::{dot, kernel_basis, primitive, Int, IntMatrix, Rat};
use crate::polycone::lp::{in_cone, LinearProgram, LpOutcome, Relation};
use crate::polycone::{cones_equal, rank_of, RationalCone};
use crate::{Error, Result};

pub const MAX_CHAMBER_RANK: usize = 4;
pub const MAX_CHAMBER_RAYS: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chamber {
    pub interior_point: Vec<Int>,
    pub signature: ChamberSignature,
    /// Closure of the chamber.
    pub cone: RationalCone,
}

impl Chamber {
    pub fn codim(&self) -> usize {
        self.signature.codim()
    }

    pub fn report(&self) -> ChamberReport {
        ChamberReport {
            interior_point: self.interior_point.iter().map(|x| x.to_string()).collect(),
            facets: self.signature.facets.clone(),
            codim: self.codim(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChamberReport {
    pub interior_point: Vec<String>,
    pub facets: Vec<Vec<usize>>,
    pub codim: usize,
}

#[derive(Clone, Debug)]
pub struct ChamberDecomposition {
    /// Sorted by signature.
    pub chambers: Vec<Chamber>,
    /// Hyperplanes meeting the interior of the effective cone.
    pub walls: Vec<Vec<Int>>,
    /// Number of arrangement cells before merging.
    pub cells: usize,
    /// Every facet of every cell lies on the effective boundary or is shared
    /// with a cell on the other side.
    pub coverage_certified: bool,
}

impl ChamberDecomposition {
    /// The chamber whose signature is the given one.
    pub fn find(&self, sig: &ChamberSignature) -> Option<&Chamber> {
        self.chambers.iter().find(|c| &c.signature == sig)
    }
}

fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    rec(0, m, k, &mut cur, &mut out);
    out
}

/// Primitive normals (first nonzero entry positive) of all hyperplanes in the
/// class group spanned by degree vectors.
pub fn wall_hyperplanes(d: &DegreeMap) -> Vec<Vec<Int>> {
    let r = d.free_rank();
    if r == 0 {
        return Vec::new();
    }
    let dirs: Vec<Vec<Int>> = d
        .degrees()
        .iter()
        .filter_map(|g| primitive(g).ok())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut out = BTreeSet::new();
    for combo in combinations(dirs.len(), r - 1) {
        let rows: Vec<Vec<Int>> = combo.iter().map(|&i| dirs[i].clone()).collect();
        if rank_of(&rows, r) != r - 1 {
            continue;
        }
        let k = kernel_basis(&IntMatrix::from_rows_with_width(&rows, r));
        let mut n = primitive(&k.column(0)).expect("kernel vectors are nonzero");
        if n.iter()
            .find(|x| !x.is_zero())
            .is_some_and(|x| x.is_negative())
        {
            n.iter_mut().for_each(|x| *x = -x.clone());
        }
        out.insert(n);
    }
    out.into_iter().collect()
}

/// Maximizes `t <= 1` subject to `<a, x> >= t` for every row.
fn slack(r: usize, rows: &[Vec<Int>]) -> Option<Vec<Rat>> {
    let mut lp = LinearProgram::new(r + 1);
    for a in rows {
        let mut row = a.clone();
        row.push(-Int::one());
        lp.add_int(&row, Relation::Ge, Int::zero());
    }
    let mut cap = vec![Int::zero(); r + 1];
    cap[r] = Int::one();
    lp.add_int(&cap, Relation::Le, Int::one());
    let mut obj = vec![Rat::zero(); r + 1];
    obj[r] = Rat::one();
    match lp.maximize(&obj) {
        LpOutcome::Optimal { value, point } if value.is_positive() => Some(point),
        _ => None,
    }
}

fn negate(v: &[Int]) -> Vec<Int> {
    v.iter().map(|x| -x).collect()
}

pub fn enumerate_chambers(d: &DegreeMap) -> Result<ChamberDecomposition> {
    let r = d.free_rank();
    if r > MAX_CHAMBER_RANK || d.n_rays() > MAX_CHAMBER_RAYS {
        return Err(Error::CapExceeded(format!(
            "chamber enumeration handles rank <= {MAX_CHAMBER_RANK} and <= {MAX_CHAMBER_RAYS} rays, got rank {r} with {} rays",
            d.n_rays()
        )));
    }
    let eff = effective_cone(d);
    let eff_rows = eff.facet_normals();
    let walls: Vec<Vec<Int>> = wall_hyperplanes(d)
        .into_iter()
        .filter(|h| {
            let mut plus = eff_rows.clone();
            plus.push(h.clone());
            let mut minus = eff_rows.clone();
            minus.push(negate(h));
            slack(r, &plus).is_some() && slack(r, &minus).is_some()
        })
        .collect();

    let mut cells: Vec<Vec<Vec<Int>>> = Vec::new();
    let mut stack: Vec<Vec<Vec<Int>>> = vec![Vec::new()];
    while let Some(assigned) = stack.pop() {
        if assigned.len() == walls.len() {
            cells.push(assigned);
            continue;
        }
        let h = &walls[assigned.len()];
        for side in [negate(h), h.clone()] {
            let mut next = assigned.clone();
            next.push(side);
            let mut rows = eff_rows.clone();
            rows.extend(next.iter().cloned());
            if slack(r, &rows).is_some() {
                stack.push(next);
            }
        }
    }

    let mut cell_cones = Vec::with_capacity(cells.len());
    let mut groups: BTreeMap<ChamberSignature, Vec<usize>> = BTreeMap::new();
    for (k, sides) in cells.iter().enumerate() {
        let mut rows = eff_rows.clone();
        rows.extend(sides.iter().cloned());
        let cone = RationalCone::from_inequalities(r, &rows)?;
        let point: Vec<Int> = cone
            .relative_interior_point()?
            .iter()
            .map(Rat::to_integer)
            .collect();
        let sig = unstable_supports(d, &point)?;
        groups.entry(sig).or_default().push(k);
        cell_cones.push(cone);
    }
    let coverage_certified = certify_coverage(&eff, &cell_cones)?;

    let mut chambers = Vec::with_capacity(groups.len());
    for (sig, members) in groups {
        let gens: Vec<Vec<Int>> = members
            .iter()
            .flat_map(|&k| cell_cones[k].generators())
            .collect();
        let cone = RationalCone::from_generators(r, &gens)?;
        let mut interior_point: Vec<Int> = cone
            .relative_interior_point()?
            .iter()
            .map(Rat::to_integer)
            .collect();
        if unstable_supports(d, &interior_point)? != sig {
            interior_point = cell_cones[members[0]]
                .relative_interior_point()?
                .iter()
                .map(Rat::to_integer)
                .collect();
        }
        chambers.push(Chamber {
            interior_point,
            signature: sig,
            cone,
        });
    }
    Ok(ChamberDecomposition {
        chambers,
        walls,
        cells: cells.len(),
        coverage_certified,
    })
}

/// For every facet of every cell, the facet's interior point either lies on
/// the effective boundary or is reached from the other side by another cell.
fn certify_coverage(eff: &RationalCone, cells: &[RationalCone]) -> Result<bool> {
    for (k, c) in cells.iter().enumerate() {
        for n in c.facets() {
            let on_facet: Vec<Vec<Int>> = c
                .rays()
                .iter()
                .filter(|v| dot(n, v).is_zero())
                .cloned()
                .collect();
            let mut p = vec![Int::zero(); c.ambient_dim()];
            for v in &on_facet {
                for (a, b) in p.iter_mut().zip(v) {
                    *a += b;
                }
            }
            if !eff.contains_in_relative_interior(&p)? {
                continue;
            }
            let back = negate(n);
            let covered = cells.iter().enumerate().any(|(j, o)| {
                j != k && o.facets().contains(&back) && o.contains_int(&p).unwrap_or(false)
            });
            if !covered {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Lies `chi` on a wall, i.e. on the boundary of some cone spanned by degrees?
pub fn is_boundary_character(d: &DegreeMap, chi: &[Int]) -> Result<bool> {
    if chi.len() != d.free_rank() {
        return Err(Error::DimensionMismatch {
            expected: d.free_rank(),
            found: chi.len(),
        });
    }
    if chi.iter().all(Zero::is_zero) {
        return Ok(true);
    }
    for h in wall_hyperplanes(d) {
        if !dot(&h, chi).is_zero() {
            continue;
        }
        let on: Vec<Vec<Int>> = d
            .degrees()
            .iter()
            .filter(|g| dot(&h, g).is_zero())
            .cloned()
            .collect();
        if in_cone(&on, chi) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Equal signatures, for characters inside the effective cone and off walls.
pub fn same_chamber(d: &DegreeMap, chi1: &[Int], chi2: &[Int]) -> Result<bool> {
    let mut sigs = Vec::with_capacity(2);
    for chi in [chi1, chi2] {
        let sig = unstable_supports(d, chi)?;
        if sig.outside_effective {
            return Err(Error::OutsideEffectiveCone(format_character(chi)));
        }
        if is_boundary_character(d, chi)? {
            return Err(Error::BoundaryCharacter(format_character(chi)));
        }
        sigs.push(sig);
    }
    Ok(sigs[0] == sigs[1])
}

/// For every chamber `nu`: if the ample unstable locus is contained in
/// `V^un_nu`, then `nu` is the ample chamber.
pub fn theorem_main_git_step(f: &Fan, d: &DegreeMap) -> Result<bool> {
    let ample = super::ample_character(f, d)?;
    let sig_a = unstable_supports(d, &ample)?;
    let dec = enumerate_chambers(d)?;
    Ok(dec
        .chambers
        .iter()
        .all(|c| !sig_a.is_contained_in(&c.signature) || c.signature == sig_a))
}

/// The chamber whose signature is the Stanley–Reisner complex of the
/// irrelevant ideal has closure equal to the nef cone.
pub fn nef_chamber_matches(f: &Fan, d: &DegreeMap, dec: &ChamberDecomposition) -> Result<bool> {
    let sr = stanley_reisner(&irrelevant_ideal(f))?;
    let sig = ChamberSignature {
        n_vars: f.n_rays(),
        facets: sr.facets(),
        outside_effective: false,
    };
    let nef = nef_cone(f, d)?;
    match dec.find(&sig) {
        Some(c) => cones_equal(&c.cone, &nef),
        None => Ok(false),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cox::degree_map;
    use crate::fan::{product_fan, projective_space_fan, star_subdivision};

    fn iv(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn chamber_counts() {
        for n in 1..4 {
            let d = degree_map(&projective_space_fan(n).unwrap()).unwrap();
            let dec = enumerate_chambers(&d).unwrap();
            assert_eq!(dec.chambers.len(), 1);
            assert!(dec.coverage_certified);
        }
        let p1 = projective_space_fan(1).unwrap();
        let d = degree_map(&product_fan(&p1, &p1)).unwrap();
        assert_eq!(enumerate_chambers(&d).unwrap().chambers.len(), 1);
        let f1 = star_subdivision(&projective_space_fan(2).unwrap(), &[0, 1]).unwrap();
        let d = degree_map(&f1).unwrap();
        let dec = enumerate_chambers(&d).unwrap();
        assert_eq!(dec.chambers.len(), 2);
        assert!(dec.coverage_certified);
        assert_ne!(dec.chambers[0].signature, dec.chambers[1].signature);
        assert!(nef_chamber_matches(&f1, &d, &dec).unwrap());
        assert!(theorem_main_git_step(&f1, &d).unwrap());
    }

    #[test]
    fn chamber_membership() {
        let d = degree_map(&projective_space_fan(3).unwrap()).unwrap();
        assert!(same_chamber(&d, &iv(&[1]), &iv(&[7])).unwrap());
        let p1 = projective_space_fan(1).unwrap();
        let d = degree_map(&product_fan(&p1, &p1)).unwrap();
        assert!(same_chamber(&d, &iv(&[1, 1]), &iv(&[5, 2])).unwrap());
        assert!(matches!(
            same_chamber(&d, &iv(&[1, 0]), &iv(&[1, 1])),
            Err(Error::BoundaryCharacter(_))
        ));
        assert!(matches!(
            same_chamber(&d, &iv(&[-1, 1]), &iv(&[1, 1])),
            Err(Error::OutsideEffectiveCone(_))
        ));
        let f1 = star_subdivision(&projective_space_fan(2).unwrap(), &[0, 1]).unwrap();
        let d = degree_map(&f1).unwrap();
        let dec = enumerate_chambers(&d).unwrap();
        let (a, b) = (
            &dec.chambers[0].interior_point,
            &dec.chambers[1].interior_point,
        );
        assert!(!same_chamber(&d, a, b).unwrap());
    }

    #[test]
    fn caps_are_enforced() {
        let p1 = projective_space_fan(1).unwrap();
        let mut f = p1.clone();
        for _ in 0..4 {
            f = product_fan(&f, &p1);
        }
        let d = degree_map(&f).unwrap();
        assert!(matches!(enumerate_chambers(&d), Err(Error::CapExceeded(_))));
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }
}
