//! The nine acceptance criteria, each timed against its limit. Runs without
//! the libtest harness so that every criterion prints one PASS/FAIL line:
//! `cargo test --test acceptance`.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use toricgit::checks::{self, KUNNETH_SEED};
use toricgit::corpus::{self, NamedFan};
use toricgit::cox::{degree_map, DegreeMap};
use toricgit::fan::{
    blowup_pn_along_linear, product_fan, projective_bundle_fan, projective_space_fan,
    star_subdivision, Fan,
};
use toricgit::linalg::{smith_normal_form, Int, IntMatrix};
use toricgit::vgit::{
    ample_character, enumerate_chambers, nef_chamber_matches, theorem_main_git_step,
    unstable_codim, unstable_supports, MAX_CHAMBER_RANK, MAX_CHAMBER_RAYS,
};
use toricgit::Error;

type Outcome = Result<String, String>;
type Criterion = (&'static str, u64, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn lib<T>(r: toricgit::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn corpus_fans() -> Vec<NamedFan> {
    corpus::builtin()
}

fn pn(n: usize) -> Fan {
    projective_space_fan(n).unwrap()
}

fn criterion_1() -> Outcome {
    let fans = corpus_fans();
    ensure(
        fans.len() >= 60,
        format!("corpus has only {} fans", fans.len()),
    )?;
    for f in &fans {
        ensure(
            f.fan.n_rays() <= 14,
            format!("{} has more than 14 rays", f.name),
        )?;
        ensure(
            f.fan.validate().projective,
            format!("{} is not projective", f.name),
        )?;
        let r = lib(checks::check_prop5(&f.fan))?;
        ensure(r.passed, format!("{}: {}", f.name, r.witness))?;
    }
    Ok(format!("{} fans agree", fans.len()))
}

fn criterion_2() -> Outcome {
    let fans = corpus_fans();
    let mut agreements = 0;
    for f in &fans {
        for m in 1..=4 {
            let r = lib(checks::check_neighborly_codim(&f.fan, m))?;
            ensure(r.passed, format!("{} m={m}: {}", f.name, r.witness))?;
            agreements += 1;
        }
    }
    Ok(format!("{agreements} (fan, m) pairs agree"))
}

fn timed_under_one_second(
    label: &str,
    f: impl FnOnce() -> Result<(), String>,
) -> Result<(), String> {
    let t = Instant::now();
    f()?;
    let e = t.elapsed();
    ensure(e < Duration::from_secs(1), format!("{label} took {e:?}"))
}

fn criterion_3() -> Outcome {
    timed_under_one_second("Bl_line P4", || {
        let x = lib(blowup_pn_along_linear(4, 1))?;
        let r = lib(checks::check_small_unstable_locus(&x))?;
        ensure(r.passed, format!("Bl_line P4: {}", r.witness))?;
        let d = lib(degree_map(&x))?;
        let c = lib(unstable_codim(&d, &lib(ample_character(&x, &d))?))?;
        ensure(c >= 3, format!("Bl_line P4 codim {c}"))
    })?;
    timed_under_one_second("P1xP3", || {
        let x = product_fan(&pn(1), &pn(3));
        let r = lib(checks::check_small_unstable_locus(&x))?;
        ensure(!r.passed, "P1xP3 unexpectedly has small unstable locus")?;
        let d = lib(degree_map(&x))?;
        let c = lib(unstable_codim(&d, &lib(ample_character(&x, &d))?))?;
        ensure(c == 2, format!("P1xP3 codim {c}, expected 2"))
    })?;
    for n in 1..=6 {
        timed_under_one_second(&format!("P{n}"), || {
            let x = pn(n);
            if n >= 2 {
                let r = lib(checks::check_prop4a(&x))?;
                ensure(r.passed, format!("P{n}: {}", r.witness))?;
            }
            let d = lib(degree_map(&x))?;
            let c = lib(unstable_codim(&d, &lib(ample_character(&x, &d))?))?;
            ensure(c == n + 1, format!("P{n} codim {c}, expected {}", n + 1))
        })?;
    }
    Ok("Bl_line P4 >= 3, P1xP3 = 2, Pn = n+1 for n = 1..6".into())
}

fn criterion_4() -> Outcome {
    let fans = corpus_fans();
    let mut min = usize::MAX;
    for f in &fans {
        ensure(f.fan.is_complete(), format!("{} is not complete", f.name))?;
        let r = lib(checks::check_thm29_properties(&f.fan))?;
        ensure(r.passed, format!("{}: {}", f.name, r.witness))?;
        let c = r.witness["codim"].as_u64().ok_or("missing codim")? as usize;
        ensure(c >= 2, format!("{} codim {c}", f.name))?;
        min = min.min(c);
    }
    let p1 = pn(1);
    let d = lib(degree_map(&p1))?;
    let c = lib(unstable_codim(&d, &lib(ample_character(&p1, &d))?))?;
    ensure(c == 2, format!("P1 codim {c}, expected 2"))?;
    Ok(format!(
        "{} fans, minimum codim {min}, P1 attains 2",
        fans.len()
    ))
}

fn criterion_5() -> Outcome {
    let pairs = corpus::product_pairs();
    ensure(pairs.len() == 10, "expected 10 product pairs")?;
    for (i, (a, b)) in pairs.iter().enumerate() {
        let r = lib(checks::check_prop4b(
            &a.fan,
            &b.fan,
            KUNNETH_SEED + i as u64,
        ))?;
        ensure(r.passed, format!("{} x {}: {}", a.name, b.name, r.witness))?;
        let w = &r.witness;
        let codims: Vec<u64> = w["codims"]
            .as_array()
            .ok_or("missing codims")?
            .iter()
            .filter_map(Value::as_u64)
            .collect();
        ensure(
            codims[2] == codims[0].min(codims[1]),
            "codim is not the minimum",
        )?;
        ensure(w["union_formula"] == true, "union formula")?;
        let kunneth = w["kunneth"].as_array().ok_or("missing kunneth")?;
        ensure(kunneth.len() == 3, "expected 3 Kunneth samples")?;
        for k in kunneth {
            let (h1, h2, hp) = (
                k["h0_1"].as_u64().unwrap(),
                k["h0_2"].as_u64().unwrap(),
                k["h0_product"].as_u64().unwrap(),
            );
            ensure(hp == h1 * h2, format!("Kunneth {hp} != {h1} * {h2}"))?;
        }
    }
    Ok("10 pairs: min codim, facet union, Kunneth".into())
}

fn facets_of(v: &Value) -> BTreeSet<Vec<usize>> {
    serde_json::from_value(v.clone()).expect("facet lists")
}

fn criterion_6() -> Outcome {
    let base = lib(blowup_pn_along_linear(4, 1))?;
    let divisors = corpus::remark_divisors(1);
    ensure(divisors.len() == 3, "k = 3")?;
    let r = lib(checks::check_prop4c(&base, &divisors, 8))?;
    ensure(r.passed, format!("no m <= 8 works: {}", r.witness))?;
    let m = r.witness["minimal_m"].as_u64().ok_or("missing m")? as i64;
    ensure(m <= 8, "m out of range")?;
    let a = &r.witness["attempt"];
    ensure(
        a["codim"].as_u64().unwrap_or(0) >= 3,
        "bundle codim below 3",
    )?;
    ensure(a["decomposition"] == true, "decomposition failed")?;
    let counts = a["projection_formula"].as_array().ok_or("missing counts")?;
    ensure(counts.len() == 6, "expected d = 0, 1, 2 for two twists")?;
    for c in counts {
        ensure(
            c["bundle"] == c["base_sum"],
            format!("projection formula {c}"),
        )?;
    }

    // The decomposition again, with unstable loci from the brute-force oracle.
    let x = lib(projective_bundle_fan(&base, &corpus::remark_divisors(m)))?;
    let db = lib(degree_map(&base))?;
    let dx = lib(degree_map(&x))?;
    let sb = common::brute_unstable_facets(&db, &lib(ample_character(&base, &db))?);
    let sx = common::brute_unstable_facets(&dx, &lib(ample_character(&x, &dx))?);
    let n = base.n_rays();
    let fibers: Vec<usize> = (n..x.n_rays()).collect();
    let mut expected: BTreeSet<Vec<usize>> = sb
        .iter()
        .map(|s| s.iter().chain(&fibers).copied().collect())
        .collect();
    expected.insert((0..n).collect());
    let expected: BTreeSet<Vec<usize>> = expected
        .iter()
        .filter(|s| {
            !expected
                .iter()
                .any(|t| t != *s && s.iter().all(|i| t.contains(i)))
        })
        .cloned()
        .collect();
    let actual: BTreeSet<Vec<usize>> = sx.into_iter().collect();
    ensure(expected == actual, "oracle decomposition mismatch")?;
    ensure(
        actual == facets_of(&a["unstable_facets"]),
        "library facets differ from oracle",
    )?;
    Ok(format!(
        "minimal m = {m}, codim {}, projection formula d <= 2",
        a["codim"]
    ))
}

fn parse_ints(v: &Value) -> Vec<Int> {
    v.as_array()
        .expect("array")
        .iter()
        .map(|x| x.as_str().expect("string").parse().expect("integer"))
        .collect()
}

fn is_subset(s: &[usize], t: &[usize]) -> bool {
    s.iter().all(|i| t.contains(i))
}

fn semistable(facets: &[Vec<usize>], s: &[usize]) -> bool {
    !facets.iter().any(|f| is_subset(s, f))
}

fn criterion_7() -> Outcome {
    let r = lib(checks::check_remark_example(8))?;
    ensure(r.passed, format!("explicit example: {}", r.witness))?;
    let w = &r.witness;
    ensure(
        w["o1_base_locus"]["Codim"] == 3,
        format!("O(1) base locus {}", w["o1_base_locus"]),
    )?;

    // Independent confirmation with the brute-force oracle.
    let m = w["m"].as_u64().ok_or("missing m")? as i64;
    let x = corpus::remark_example(m);
    let d = lib(degree_map(&x))?;
    let n = x.n_rays();
    let ample = common::brute_unstable_facets(&d, &lib(ample_character(&x, &d))?);
    let o1 = common::brute_unstable_facets(&d, &parse_ints(&w["o1_class"]));
    let largest = o1
        .iter()
        .filter(|s| semistable(&ample, s))
        .map(Vec::len)
        .max()
        .ok_or("O(1) base locus is empty")?;
    ensure(
        n - largest == 3,
        format!("oracle base locus codim {}", n - largest),
    )?;

    ensure(
        !w["separating_character"].is_null(),
        "no separating character",
    )?;
    let sep = parse_ints(&w["separating_character"]);
    let sep_facets = common::brute_unstable_facets(&d, &sep);
    let all: Vec<usize> = (0..n).collect();
    let moving = (0..n).all(|i| {
        let rest: Vec<usize> = all.iter().copied().filter(|&j| j != i).collect();
        semistable(&sep_facets, &rest)
    });
    let nef = x.max_cones().iter().all(|sigma| {
        let comp: Vec<usize> = all.iter().copied().filter(|j| !sigma.contains(j)).collect();
        semistable(&sep_facets, &comp)
    });
    ensure(
        moving && !nef,
        "separating character is not moving-but-not-nef",
    )?;
    Ok(format!(
        "m = {m}, O(1) base locus codim 3, separating character ({})",
        sep.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    ))
}

fn criterion_8() -> Outcome {
    let count = |f: &Fan| -> Result<usize, String> {
        let d = lib(degree_map(f))?;
        Ok(lib(enumerate_chambers(&d))?.chambers.len())
    };
    let f1 = corpus::f1();
    ensure(count(&f1)? == 2, "F1 should have 2 chambers")?;
    for n in 1..=5 {
        ensure(count(&pn(n))? == 1, format!("P{n} should have 1 chamber"))?;
    }
    ensure(
        count(&product_fan(&pn(1), &pn(1)))? == 1,
        "P1xP1 should have 1 chamber",
    )?;

    let mut enumerable = 0;
    let mut skipped = 0;
    for f in corpus_fans() {
        let d = lib(degree_map(&f.fan))?;
        if d.free_rank() > MAX_CHAMBER_RANK || f.fan.n_rays() > MAX_CHAMBER_RAYS {
            ensure(
                matches!(enumerate_chambers(&d), Err(Error::CapExceeded(_))),
                format!("{} beyond caps but not rejected", f.name),
            )?;
            skipped += 1;
            continue;
        }
        let dec = lib(enumerate_chambers(&d))?;
        ensure(
            dec.coverage_certified,
            format!("{}: coverage not certified", f.name),
        )?;
        ensure(
            lib(nef_chamber_matches(&f.fan, &d, &dec))?,
            format!("{}: nef chamber", f.name),
        )?;
        ensure(
            lib(theorem_main_git_step(&f.fan, &d))?,
            format!("{}: GIT step", f.name),
        )?;
        enumerable += 1;
    }
    Ok(format!(
        "{enumerable} fans enumerated, {skipped} beyond caps"
    ))
}

fn oracle_characters(
    d: &DegreeMap,
    f: &Fan,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<Vec<Int>>, String> {
    let mut out = vec![lib(ample_character(f, d))?];
    out.extend(d.degrees().iter().cloned());
    let r = d.free_rank();
    while out.len() < d.n_rays() + 6 {
        let mut chi = vec![Int::from(0); r];
        for g in d.degrees() {
            let c = Int::from(rng.gen_range(0..3));
            for (x, y) in chi.iter_mut().zip(g) {
                *x += &c * y;
            }
        }
        if chi.iter().any(|x| *x != Int::from(0)) {
            out.push(chi);
        }
    }
    Ok(out)
}

fn larger_fans() -> Vec<NamedFan> {
    let p1 = pn(1);
    let mut p1_7 = p1.clone();
    for _ in 1..7 {
        p1_7 = product_fan(&p1_7, &p1);
    }
    let p2 = pn(2);
    let p2_3_p1 = product_fan(&product_fan(&product_fan(&p2, &p2), &p2), &p1);
    let mut blown = product_fan(&pn(3), &pn(3));
    for face in [[0, 1], [4, 5], [2, 6]] {
        blown = star_subdivision(&blown, &face).unwrap();
    }
    vec![
        NamedFan {
            name: "P1^7".into(),
            fan: p1_7,
        },
        NamedFan {
            name: "P2^3xP1".into(),
            fan: p2_3_p1,
        },
        NamedFan {
            name: "Bl3(P3xP3)".into(),
            fan: blown,
        },
    ]
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0a11_5e75);
    let mut fans = corpus_fans();
    fans.extend(larger_fans());
    let mut comparisons = 0;
    for f in &fans {
        ensure(
            f.fan.n_rays() <= 14,
            format!("{} too large for the oracle", f.name),
        )?;
        let d = lib(degree_map(&f.fan))?;
        for chi in oracle_characters(&d, &f.fan, &mut rng)? {
            let expected = common::brute_unstable_facets(&d, &chi);
            let actual = lib(unstable_supports(&d, &chi))?;
            ensure(
                !actual.outside_effective,
                "effective character reported outside",
            )?;
            ensure(
                expected == actual.facets,
                format!(
                    "{} chi {:?}: oracle {:?} vs {:?}",
                    f.name, chi, expected, actual.facets
                ),
            )?;
            comparisons += 1;
        }
    }

    for trial in 0..200 {
        let rows = rng.gen_range(1..=5);
        let cols = rng.gen_range(1..=5);
        let m: Vec<Vec<i64>> = if trial % 4 == 3 {
            // Rank-deficient: a product through a thin middle.
            let k = rng.gen_range(1..=rows.min(cols));
            let a: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..k).map(|_| rng.gen_range(-4..=4)).collect())
                .collect();
            let b: Vec<Vec<i64>> = (0..k)
                .map(|_| (0..cols).map(|_| rng.gen_range(-4..=4)).collect())
                .collect();
            (0..rows)
                .map(|i| {
                    (0..cols)
                        .map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum())
                        .collect()
                })
                .collect()
        } else {
            (0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect())
                .collect()
        };
        let expected = common::determinant_divisor_factors(&m);
        let mat = IntMatrix::from_rows(&m);
        let snf = smith_normal_form(&mat);
        let got: Vec<i128> = snf.diag[..snf.rank()]
            .iter()
            .map(|x| x.to_string().parse().unwrap())
            .collect();
        ensure(
            got == expected,
            format!("SNF of {m:?}: {got:?} vs {expected:?}"),
        )?;
        ensure(
            snf.diag[snf.rank()..].iter().all(|x| *x == Int::from(0)),
            "trailing factors",
        )?;
        ensure(
            snf.left.mul(&mat).mul(&snf.right) == snf.diagonal_matrix(),
            format!("SNF transforms of {m:?}"),
        )?;
        ensure(
            snf.left.determinant().magnitude() == &1u32.into()
                && snf.right.determinant().magnitude() == &1u32.into(),
            "transforms are not unimodular",
        )?;
    }
    Ok(format!(
        "{comparisons} unstable families on {} fans, 200 SNFs",
        fans.len()
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("2-neighborly iff small unstable locus", 10, criterion_1),
        ("m-neighborly iff codim >= m+1, m = 1..4", 30, criterion_2),
        ("condition (*) instances", 9, criterion_3),
        ("ample unstable codim >= 2, sharp on P1", 5, criterion_4),
        ("products", 30, criterion_5),
        ("projective bundles", 60, criterion_6),
        ("explicit bundle example", 60, criterion_7),
        ("chambers and nef cones", 120, criterion_8),
        ("oracle suites", 120, criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let e = t.elapsed();
        let limit = Duration::from_secs(*limit);
        let (tag, detail) = match outcome {
            Ok(d) if e < limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; over the time limit")),
            Err(msg) => ("FAIL", msg),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {}: {tag} {name}: {detail} [{:.2}s / {}s]",
            i + 1,
            e.as_secs_f64(),
            limit.as_secs()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 9 criteria passed");
}
