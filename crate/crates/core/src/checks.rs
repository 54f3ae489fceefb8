//! Named verifications composed from the other modules.
//!
//! Each check returns a [`CheckResult`] whose witness records the computed
//! quantities, so a failure can be replayed from its output alone.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bits::{self, Mask};
use crate::corpus::{self, NamedFan};
use crate::cox::{check_free_action, degree_map, irrelevant_ideal, zero_locus_codim, DegreeMap};
use crate::fan::{
    blowup_pn_along_linear, count_sections, is_m_neighborly, product_fan, projective_bundle_fan,
    Fan, TorusInvariantDivisor,
};
use crate::linalg::Int;
use crate::vgit::{
    ample_character, is_boundary_character, moving_cone, nef_cone, stable_base_locus_codim,
    theorem_main_git_step, unstable_supports, BaseLocus, ChamberSignature,
};
use crate::{Error, Result};

pub const DEFAULT_M_MAX: usize = 8;
pub const KUNNETH_SEED: u64 = 0x6b75_6e6e;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub witness: Value,
}

impl CheckResult {
    fn new(name: &str, passed: bool, witness: Value) -> Self {
        CheckResult {
            name: name.to_string(),
            passed,
            witness,
        }
    }
}

fn strs(v: &[Int]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn ample_data(f: &Fan) -> Result<(DegreeMap, Vec<Int>, ChamberSignature)> {
    let d = degree_map(f)?;
    let a = ample_character(f, &d)?;
    let sig = unstable_supports(&d, &a)?;
    Ok((d, a, sig))
}

/// Condition (*): the ample unstable locus has codimension at least 3.
pub fn check_small_unstable_locus(f: &Fan) -> Result<CheckResult> {
    let (_, a, sig) = ample_data(f)?;
    let codim = sig.codim();
    Ok(CheckResult::new(
        "small_unstable_locus",
        codim >= 3,
        json!({ "codim": codim, "ample": strs(&a), "unstable_facets": sig.facets }),
    ))
}

/// `codim V(I) >= m + 1` iff the fan is m-neighborly, both sides computed
/// independently.
pub fn check_neighborly_codim(f: &Fan, m: usize) -> Result<CheckResult> {
    let codim = zero_locus_codim(&irrelevant_ideal(f))?;
    let neighborly = is_m_neighborly(f, m);
    let small = codim > m;
    Ok(CheckResult::new(
        "neighborly_codim",
        small == neighborly,
        json!({ "m": m, "codim": codim, "codim_at_least_m_plus_1": small, "m_neighborly": neighborly }),
    ))
}

/// The case m = 2: small unstable locus iff 2-neighborly.
pub fn check_prop5(f: &Fan) -> Result<CheckResult> {
    let mut r = check_neighborly_codim(f, 2)?;
    r.name = "prop5".into();
    Ok(r)
}

/// Picard rank one in dimension at least two: the unstable locus is the
/// origin, of codimension `dim + 1 >= 3`.
pub fn check_prop4a(f: &Fan) -> Result<CheckResult> {
    if f.dim() < 2 {
        return Err(Error::Precondition(format!(
            "dimension {} is below 2",
            f.dim()
        )));
    }
    if !f.rays_span_lattice() {
        return Err(Error::UnsupportedLattice(
            "the rays generate a proper sublattice".into(),
        ));
    }
    let (d, a, sig) = ample_data(f)?;
    if d.free_rank() != 1 {
        return Err(Error::Precondition(format!(
            "Picard rank is {}, not 1",
            d.free_rank()
        )));
    }
    let origin = sig.facets == vec![Vec::<usize>::new()];
    let codim = sig.codim();
    Ok(CheckResult::new(
        "prop4a",
        origin && codim == f.dim() + 1 && codim >= 3,
        json!({ "ample": strs(&a), "unstable_facets": sig.facets, "codim": codim, "dim": f.dim() }),
    ))
}

fn divisor_sum(a: &TorusInvariantDivisor, b: &TorusInvariantDivisor) -> TorusInvariantDivisor {
    a.add(b)
}

fn concat(a: &TorusInvariantDivisor, b: &TorusInvariantDivisor) -> TorusInvariantDivisor {
    TorusInvariantDivisor::new(
        a.coefficients
            .iter()
            .chain(&b.coefficients)
            .cloned()
            .collect(),
    )
}

/// A nonnegative combination (coefficients 0 or 1) of the nef cone's rays,
/// lifted to a divisor.
fn random_nef_divisor(
    f: &Fan,
    d: &DegreeMap,
    rng: &mut ChaCha8Rng,
) -> Result<TorusInvariantDivisor> {
    let nef = nef_cone(f, d)?;
    let mut chi = vec![Int::from(0); d.free_rank()];
    for ray in nef.rays() {
        let c: i64 = rng.gen_range(0..=1);
        for (x, y) in chi.iter_mut().zip(ray) {
            *x += y * c;
        }
    }
    d.lift(&chi)
}

/// Products: the codimension is the minimum, the unstable facets are
/// `{S1 + all2} u {all1 + S2}`, and sections obey the Kunneth formula.
pub fn check_prop4b(f1: &Fan, f2: &Fan, seed: u64) -> Result<CheckResult> {
    let (d1, a1, s1) = ample_data(f1)?;
    let (d2, a2, s2) = ample_data(f2)?;
    let p = product_fan(f1, f2);
    let dp = degree_map(&p)?;
    let chi = dp.class_of(&concat(&d1.lift(&a1)?, &d2.lift(&a2)?));
    let sp = unstable_supports(&dp, &chi)?;
    let (n1, n2) = (f1.n_rays(), f2.n_rays());
    let full1 = bits::full(n1);
    let full2 = bits::full(n2) << n1;
    let mut expected: Vec<Mask> = s1.masks().iter().map(|&s| s | full2).collect();
    expected.extend(s2.masks().iter().map(|&s| full1 | s << n1));
    let expected: BTreeSet<Vec<usize>> = bits::maximal_only(&expected)
        .into_iter()
        .map(bits::indices)
        .collect();
    let actual: BTreeSet<Vec<usize>> = sp.facets.iter().cloned().collect();
    let union_ok = expected == actual;
    let codim_ok = sp.codim() == s1.codim().min(s2.codim());

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut kunneth = Vec::new();
    let mut kunneth_ok = true;
    for _ in 0..3 {
        let e1 = random_nef_divisor(f1, &d1, &mut rng)?;
        let e2 = random_nef_divisor(f2, &d2, &mut rng)?;
        let h1 = count_sections(f1, &e1)?;
        let h2 = count_sections(f2, &e2)?;
        let hp = count_sections(&p, &concat(&e1, &e2))?;
        kunneth_ok &= hp == h1 * h2;
        kunneth.push(json!({ "h0_1": h1, "h0_2": h2, "h0_product": hp }));
    }
    Ok(CheckResult::new(
        "prop4b",
        union_ok && codim_ok && kunneth_ok,
        json!({
            "codims": [s1.codim(), s2.codim(), sp.codim()],
            "union_formula": union_ok,
            "product_facets": sp.facets,
            "kunneth": kunneth,
        }),
    ))
}

/// Pushes a base divisor to the bundle: base rays come first there.
fn pull_back(d: &TorusInvariantDivisor, total: usize) -> TorusInvariantDivisor {
    let mut c = d.coefficients.clone();
    c.resize(total, Int::from(0));
    TorusInvariantDivisor::new(c)
}

/// Compositions of `d` into `k` nonnegative parts.
fn compositions(d: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 1 {
        return vec![vec![d]];
    }
    (0..=d)
        .flat_map(|first| {
            compositions(d - first, k - 1)
                .into_iter()
                .map(move |mut rest| {
                    rest.insert(0, first);
                    rest
                })
        })
        .collect()
}

/// `h0(X, O(d) + p^*L)` against `sum_{d_1+..+d_k = d} h0(base, L + sum d_i L_i)`
/// on the toric bundle `X = P(L_1 + ... + L_k)`.
pub fn projection_formula_holds(
    base: &Fan,
    divisors: &[TorusInvariantDivisor],
    bundle: &Fan,
    l: &TorusInvariantDivisor,
    d: usize,
) -> Result<(u64, u64)> {
    let k = divisors.len();
    let n = base.n_rays();
    let total = bundle.n_rays();
    let mut lhs_div = pull_back(&l.add(&divisors[k - 1].scale(&Int::from(d))), total);
    lhs_div.coefficients[total - 1] += Int::from(d);
    let lhs = count_sections(bundle, &lhs_div)?;
    let mut rhs = 0;
    for parts in compositions(d, k) {
        let mut div = l.clone();
        for (di, li) in parts.iter().zip(divisors) {
            div = divisor_sum(&div, &li.scale(&Int::from(*di as i64)));
        }
        rhs += count_sections(base, &div)?;
    }
    debug_assert_eq!(n + k, total);
    Ok((lhs, rhs))
}

struct BundleAttempt {
    passed: bool,
    witness: Value,
}

fn attempt_bundle(
    base: &Fan,
    divisors: &[TorusInvariantDivisor],
    m: usize,
) -> Result<BundleAttempt> {
    let k = divisors.len();
    let scaled: Vec<TorusInvariantDivisor> = divisors
        .iter()
        .map(|d| d.scale(&Int::from(m as i64)))
        .collect();
    let x = projective_bundle_fan(base, &scaled)?;
    let report = x.validate();
    if !report.projective {
        return Ok(BundleAttempt {
            passed: false,
            witness: json!({ "m": m, "projective": false }),
        });
    }
    let (db, ab, sb) = ample_data(base)?;
    let (dx, ax, sx) = ample_data(&x)?;
    let n = base.n_rays();
    let fibers: Mask = bits::full(k) << n;
    let mut expected: Vec<Mask> = sb.masks().iter().map(|&s| s | fibers).collect();
    expected.push(bits::full(n));
    let expected: BTreeSet<Vec<usize>> = bits::maximal_only(&expected)
        .into_iter()
        .map(bits::indices)
        .collect();
    let actual: BTreeSet<Vec<usize>> = sx.facets.iter().cloned().collect();
    let decomposition = expected == actual;
    let small = sx.codim() >= 3;

    // A sufficiently ample character: s * ample stays ample after adding any
    // single summand class.
    let mut scale = None;
    for s in 1..=64i64 {
        let chi: Vec<Int> = ab.iter().map(|x| x * s).collect();
        let ok = scaled.iter().try_fold(true, |acc, li| -> Result<bool> {
            let c: Vec<Int> = chi
                .iter()
                .zip(db.class_of(li))
                .map(|(a, b)| a + b)
                .collect();
            Ok(acc && unstable_supports(&db, &c)? == sb && !is_boundary_character(&db, &c)?)
        })?;
        if ok {
            scale = Some(s);
            break;
        }
    }
    let tilde_ok = match scale {
        Some(s) => {
            let chi: Vec<Int> = ab.iter().map(|x| x * s).collect();
            let mut div = pull_back(&db.lift(&chi)?.add(&scaled[k - 1]), x.n_rays());
            let last = x.n_rays() - 1;
            div.coefficients[last] += Int::from(1);
            unstable_supports(&dx, &dx.class_of(&div))? == sx
        }
        None => false,
    };

    let mut counts = Vec::new();
    let mut formula_ok = true;
    let ample_l = db.lift(&ab)?;
    for l in [TorusInvariantDivisor::zero(n), ample_l] {
        for d in 0..=2 {
            let (lhs, rhs) = projection_formula_holds(base, &scaled, &x, &l, d)?;
            formula_ok &= lhs == rhs;
            counts.push(json!({ "d": d, "bundle": lhs, "base_sum": rhs }));
        }
    }
    Ok(BundleAttempt {
        passed: small && decomposition && tilde_ok && formula_ok,
        witness: json!({
            "m": m,
            "codim": sx.codim(),
            "ample": strs(&ax),
            "unstable_facets": sx.facets,
            "decomposition": decomposition,
            "sufficiently_ample_scale": scale,
            "sufficiently_ample_in_ample_chamber": tilde_ok,
            "projection_formula": counts,
        }),
    })
}

/// Toric projective bundles `P(L_1^m + ... + L_k^m)` over a base with small
/// unstable locus: searches m = 1..m_max and records the smallest m at which
/// the bundle has small unstable locus of the predicted shape.
pub fn check_prop4c(
    base: &Fan,
    divisors: &[TorusInvariantDivisor],
    m_max: usize,
) -> Result<CheckResult> {
    if divisors.len() < 3 {
        return Err(Error::Precondition(format!(
            "need at least 3 summands, got {}",
            divisors.len()
        )));
    }
    if !check_small_unstable_locus(base)?.passed {
        return Err(Error::Precondition(
            "the base does not have small unstable locus".into(),
        ));
    }
    let mut attempts = Vec::new();
    for m in 1..=m_max {
        let a = attempt_bundle(base, divisors, m)?;
        if a.passed {
            return Ok(CheckResult::new(
                "prop4c",
                true,
                json!({ "minimal_m": m, "attempt": a.witness }),
            ));
        }
        attempts.push(a.witness);
    }
    Ok(CheckResult::new(
        "prop4c",
        false,
        json!({ "minimal_m": null, "attempts": attempts }),
    ))
}

/// Smallest m found by [`check_prop4c`] for the blowup of `P^4` along a line
/// with summands `E, H, H`.
pub fn remark_minimal_m(m_max: usize) -> Result<Option<usize>> {
    let base = blowup_pn_along_linear(4, 1)?;
    let r = check_prop4c(&base, &corpus::remark_divisors(1), m_max)?;
    Ok(r.witness["minimal_m"].as_u64().map(|m| m as usize))
}

/// The explicit example: `X = P(E^m + H^m + H^m)` has small unstable locus,
/// `O(1)` has a stable base locus of codimension 3, and the moving cone is
/// strictly larger than the nef cone.
pub fn check_remark_example(m_max: usize) -> Result<CheckResult> {
    let Some(m) = remark_minimal_m(m_max)? else {
        return Ok(CheckResult::new(
            "remark_example",
            false,
            json!({ "minimal_m": null }),
        ));
    };
    let x = corpus::remark_example(m as i64);
    let (dx, ax, sx) = ample_data(&x)?;
    let small = sx.codim() >= 3;

    let divisors = corpus::remark_divisors(m as i64);
    let mut o1 = pull_back(&divisors[2], x.n_rays());
    let last = x.n_rays() - 1;
    o1.coefficients[last] += Int::from(1);
    let o1_class = dx.class_of(&o1);
    let base_locus = stable_base_locus_codim(&x, &dx, &o1_class)?;
    let o1_facets = unstable_supports(&dx, &o1_class)?.facets;
    let ample_locus = stable_base_locus_codim(&x, &dx, &ax)?;

    let nef = nef_cone(&x, &dx)?;
    let mov = moving_cone(&dx);
    let nested = mov.contains_cone(&nef)?;
    let separating = mov
        .rays()
        .iter()
        .find(|r| !nef.contains_int(r).unwrap_or(true))
        .cloned();
    let passed = small
        && base_locus == BaseLocus::Codim(3)
        && ample_locus == BaseLocus::Empty
        && nested
        && separating.is_some();
    Ok(CheckResult::new(
        "remark_example",
        passed,
        json!({
            "m": m,
            "codim": sx.codim(),
            "o1_class": strs(&o1_class),
            "o1_base_locus": base_locus,
            "o1_unstable_facets": o1_facets,
            "ample_base_locus": ample_locus,
            "nef_in_moving": nested,
            "separating_character": separating.map(|s| strs(&s)),
            "nef_rays": nef.rays().iter().map(|r| strs(r)).collect::<Vec<_>>(),
            "moving_rays": mov.rays().iter().map(|r| strs(r)).collect::<Vec<_>>(),
        }),
    ))
}

/// Ample unstable codimension at least 2, independence of the ample choice,
/// and a free action on the semistable locus for smooth fans.
pub fn check_thm29_properties(f: &Fan) -> Result<CheckResult> {
    let (d, a, sig) = ample_data(f)?;
    let nef = nef_cone(f, &d)?;
    let mut other = vec![Int::from(0); d.free_rank()];
    for (i, ray) in nef.rays().iter().enumerate() {
        for (x, y) in other.iter_mut().zip(ray) {
            *x += y * Int::from(i as i64 + 2);
        }
    }
    let sig2 = unstable_supports(&d, &other)?;
    let smooth = f.is_smooth();
    let free = check_free_action(f);
    let passed = sig.codim() >= 2 && sig == sig2 && (!smooth || free);
    Ok(CheckResult::new(
        "thm29_properties",
        passed,
        json!({
            "codim": sig.codim(),
            "ample": strs(&a),
            "second_ample": strs(&other),
            "same_signature": sig == sig2,
            "smooth": smooth,
            "free_action": free,
        }),
    ))
}

/// A chamber whose unstable locus contains the ample one is the ample chamber.
pub fn check_theorem_main_chain(f: &Fan) -> Result<CheckResult> {
    let d = degree_map(f)?;
    let holds = theorem_main_git_step(f, &d)?;
    Ok(CheckResult::new(
        "theorem_main_chain",
        holds,
        json!({ "git_step_holds": holds }),
    ))
}

/// Every fan-level check on one fan. Checks whose preconditions do not apply
/// are skipped; chamber checks beyond the caps are skipped.
pub fn fan_suite(f: &Fan) -> Result<Vec<CheckResult>> {
    let mut out = vec![check_small_unstable_locus(f)?, check_prop5(f)?];
    for m in 1..=4 {
        out.push(check_neighborly_codim(f, m)?);
    }
    match check_prop4a(f) {
        Ok(r) => out.push(r),
        Err(Error::Precondition(_)) | Err(Error::UnsupportedLattice(_)) => {}
        Err(e) => return Err(e),
    }
    out.push(check_thm29_properties(f)?);
    match check_theorem_main_chain(f) {
        Ok(r) => out.push(r),
        Err(Error::CapExceeded(_)) => {}
        Err(e) => return Err(e),
    }
    Ok(out)
}

/// The full suite: fan-level checks on the built-in corpus, the product
/// pairs, the bundle search and the explicit example. The small-unstable-locus
/// check is informative there (it is expected to fail for some fans) and is
/// reported but not counted.
pub fn run_all(m_max: usize) -> Result<Vec<(String, CheckResult)>> {
    let mut out = Vec::new();
    for NamedFan { name, fan } in corpus::builtin() {
        for r in fan_suite(&fan)? {
            if r.name != "small_unstable_locus" {
                out.push((name.clone(), r));
            }
        }
    }
    for (i, (a, b)) in corpus::product_pairs().into_iter().enumerate() {
        out.push((
            format!("{}x{}", a.name, b.name),
            check_prop4b(&a.fan, &b.fan, KUNNETH_SEED + i as u64)?,
        ));
    }
    let base = blowup_pn_along_linear(4, 1)?;
    out.push((
        "Bl_P1_P4[E,H,H]".into(),
        check_prop4c(&base, &corpus::remark_divisors(1), m_max)?,
    ));
    out.push(("remark_X".into(), check_remark_example(m_max)?));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::projective_space_fan;

    #[test]
    fn compositions_enumerate() {
        assert_eq!(compositions(2, 3).len(), 6);
        assert_eq!(compositions(0, 3), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn prop4a_preconditions() {
        let p1 = projective_space_fan(1).unwrap();
        assert!(matches!(check_prop4a(&p1), Err(Error::Precondition(_))));
        let q = product_fan(&p1, &p1);
        assert!(matches!(check_prop4a(&q), Err(Error::Precondition(_))));
        let fake = Fan::from_i64(
            2,
            &[vec![1, 1], vec![1, -1], vec![-3, 1]],
            &[vec![0, 1], vec![1, 2], vec![0, 2]],
        )
        .unwrap();
        assert!(matches!(
            check_prop4a(&fake),
            Err(Error::UnsupportedLattice(_))
        ));
        assert!(
            check_prop4a(&projective_space_fan(3).unwrap())
                .unwrap()
                .passed
        );
    }
}
