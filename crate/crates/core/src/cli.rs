//! Command-line front end. [`run`] does all the work and returns the exit
//! code and output, so it can be driven from tests.
//!
//! Exit codes: 0 success or passing check, 1 failing check, 2 input error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::checks::{self, CheckResult, DEFAULT_M_MAX};
use crate::cox::{degree_map, irrelevant_ideal};
use crate::fan::{
    blowup_pn_along_linear, count_sections, is_m_neighborly, max_neighborliness, product_fan,
    projective_bundle_fan, projective_space_fan, Fan, ParseError, TorusInvariantDivisor,
};
use crate::linalg::Int;
use crate::vgit::{
    ample_character, enumerate_chambers, nef_cone, stable_base_locus_codim, unstable_supports,
};
use crate::Error;

#[derive(Debug, Parser)]
#[command(
    name = "toricgit",
    version,
    about = "Fans, Cox gradings and GIT chambers of simplicial toric varieties"
)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simplicial, smooth, complete and projective flags.
    Validate { fan: PathBuf },
    /// Validation, Picard rank, irrelevant ideal, unstable codimension and
    /// neighborliness.
    Analyze {
        fan: PathBuf,
        /// Also report the unstable supports of this character.
        #[arg(long = "char", value_name = "c1,c2,...")]
        character: Option<String>,
    },
    /// Is every set of m rays contained in a cone?
    Neighborly {
        #[arg(long)]
        m: usize,
        fan: PathBuf,
    },
    /// GIT chambers of the effective cone.
    Chambers {
        fan: PathBuf,
        /// Report the chamber containing this character.
        #[arg(long = "char", value_name = "c1,c2,...")]
        character: Option<String>,
    },
    /// Nef cone and an ample character.
    Nef { fan: PathBuf },
    /// Number of global sections of a divisor.
    Sections { fan: PathBuf, divisor: PathBuf },
    /// Print a fan as JSON.
    Construct {
        #[command(subcommand)]
        kind: Construct,
    },
    /// Run a named check.
    Check {
        #[command(subcommand)]
        which: Check,
    },
}

#[derive(Debug, Subcommand)]
pub enum Construct {
    /// Projective space P^n.
    Pn { n: usize },
    /// Product of two fans.
    Product { a: PathBuf, b: PathBuf },
    /// Blowup of P^n along a torus-invariant P^m.
    BlowupLinear { n: usize, m: usize },
    /// Projective bundle P(L_1^m + ... + L_k^m) over a base.
    Bundle {
        base: PathBuf,
        #[arg(required = true, num_args = 2..)]
        divisors: Vec<PathBuf>,
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum Check {
    /// Every fan-level check on one fan, or the full built-in suite. Condition
    /// (*) is not a theorem and is left out; use `small-unstable-locus`.
    All {
        fan: Option<PathBuf>,
        #[arg(long = "m-max", default_value_t = DEFAULT_M_MAX)]
        m_max: usize,
    },
    /// Unstable locus of codimension at least 3.
    SmallUnstableLocus { fan: PathBuf },
    /// Small unstable locus iff 2-neighborly.
    Prop5 { fan: PathBuf },
    /// Codimension at least m+1 iff m-neighborly.
    NeighborlyCodim {
        #[arg(long)]
        m: usize,
        fan: PathBuf,
    },
    /// Picard rank one.
    Prop4a { fan: PathBuf },
    /// Products.
    Prop4b { a: PathBuf, b: PathBuf },
    /// Projective bundles.
    Prop4c {
        base: PathBuf,
        #[arg(required = true, num_args = 1..)]
        divisors: Vec<PathBuf>,
        #[arg(long = "m-max", default_value_t = DEFAULT_M_MAX)]
        m_max: usize,
    },
    /// The bundle over the blowup of P^4 along a line.
    RemarkExample {
        #[arg(long = "m-max", default_value_t = DEFAULT_M_MAX)]
        m_max: usize,
    },
    /// Codimension at least 2, ample independence, free action.
    Thm29 { fan: PathBuf },
    /// Chambers whose unstable locus contains the ample one are nef.
    TheoremMain { fan: PathBuf },
}

/// Exit code plus what goes to standard output and standard error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn input_error(msg: impl std::fmt::Display) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

enum Failure {
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Input(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))
}

fn load_fan(path: &Path) -> CliResult<Fan> {
    Fan::from_json(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_divisor(path: &Path) -> CliResult<TorusInvariantDivisor> {
    TorusInvariantDivisor::from_json(&read(path)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_character(text: &str) -> CliResult<Vec<Int>> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<Int>()
                .map_err(|_| Failure::Input(format!("bad character entry {t:?}")))
        })
        .collect()
}

fn strs(v: &[Int]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn show(v: &[Int]) -> String {
    format!("({})", strs(v).join(", "))
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome::ok(text)
                }
                _ => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match dispatch(&cli) {
        Ok(o) => o,
        Err(Failure::Input(msg)) => Outcome::input_error(msg),
    }
}

fn dispatch(cli: &Cli) -> CliResult<Outcome> {
    let json = cli.json;
    match &cli.command {
        Command::Validate { fan } => {
            let f = load_fan(fan)?;
            let r = f.validate();
            Ok(Outcome::ok(if json {
                pretty(&json!(r))
            } else {
                format!(
                    "simplicial: {}\nsmooth: {}\ncomplete: {}\nprojective: {}\n",
                    r.simplicial, r.smooth, r.complete, r.projective
                )
            }))
        }
        Command::Analyze { fan, character } => analyze(&load_fan(fan)?, character.as_deref(), json),
        Command::Neighborly { m, fan } => {
            let f = load_fan(fan)?;
            let v = is_m_neighborly(&f, *m);
            let note = (*m > f.n_rays()).then(|| format!("m = {m} exceeds the number of rays"));
            Ok(Outcome::ok(if json {
                pretty(&json!({ "m": m, "neighborly": v, "note": note }))
            } else {
                match note {
                    Some(n) => format!("{v}\nnote: {n}\n"),
                    None => format!("{v}\n"),
                }
            }))
        }
        Command::Chambers { fan, character } => {
            chambers(&load_fan(fan)?, character.as_deref(), json)
        }
        Command::Nef { fan } => {
            let f = load_fan(fan)?;
            let d = degree_map(&f)?;
            let nef = nef_cone(&f, &d)?;
            let a = ample_character(&f, &d)?;
            let rays: Vec<Vec<String>> = nef.rays().iter().map(|r| strs(r)).collect();
            let facets: Vec<Vec<String>> = nef.facets().iter().map(|r| strs(r)).collect();
            Ok(Outcome::ok(if json {
                pretty(&json!({ "rays": rays, "facets": facets, "ample": strs(&a) }))
            } else {
                let mut s = String::new();
                for r in nef.rays() {
                    writeln!(s, "ray {}", show(r)).unwrap();
                }
                for n in nef.facets() {
                    writeln!(s, "facet {}", show(n)).unwrap();
                }
                writeln!(s, "ample {}", show(&a)).unwrap();
                s
            }))
        }
        Command::Sections { fan, divisor } => {
            let f = load_fan(fan)?;
            let d = load_divisor(divisor)?;
            let h0 = count_sections(&f, &d)?;
            Ok(Outcome::ok(if json {
                pretty(&json!({ "h0": h0 }))
            } else {
                format!("{h0}\n")
            }))
        }
        Command::Construct { kind } => {
            let f = match kind {
                Construct::Pn { n } => projective_space_fan(*n)?,
                Construct::Product { a, b } => product_fan(&load_fan(a)?, &load_fan(b)?),
                Construct::BlowupLinear { n, m } => blowup_pn_along_linear(*n, *m)?,
                Construct::Bundle { base, divisors, m } => {
                    let base = load_fan(base)?;
                    let k = Int::from(*m as u64);
                    let divs = divisors
                        .iter()
                        .map(|p| Ok(load_divisor(p)?.scale(&k)))
                        .collect::<CliResult<Vec<_>>>()?;
                    projective_bundle_fan(&base, &divs)?
                }
            };
            Ok(Outcome::ok(f.to_json_string()? + "\n"))
        }
        Command::Check { which } => check(which, json),
    }
}

fn analyze(f: &Fan, character: Option<&str>, json: bool) -> CliResult<Outcome> {
    let report = f.validate();
    let ideal = irrelevant_ideal(f).generator_supports();
    let neighborly = max_neighborliness(f);
    let mut out = json!({
        "validation": report,
        "rays": f.n_rays(),
        "dim": f.dim(),
        "irrelevant_ideal": ideal,
        "max_neighborly_m": neighborly,
    });
    if report.projective {
        let d = degree_map(f)?;
        let a = ample_character(f, &d)?;
        let sig = unstable_supports(&d, &a)?;
        let degrees: Vec<Vec<String>> = d.degrees().iter().map(|g| strs(g)).collect();
        out["picard_rank"] = json!(d.free_rank());
        out["torsion"] = json!(strs(d.torsion()));
        out["degrees"] = json!(degrees);
        out["ample"] = json!(strs(&a));
        out["unstable_facets"] = json!(sig.facets);
        out["unstable_codim"] = json!(sig.codim());
        out["small_unstable_locus"] = json!(sig.codim() >= 3);
        if let Some(text) = character {
            let chi = parse_character(text)?;
            let s = unstable_supports(&d, &chi)?;
            let base = stable_base_locus_codim(f, &d, &chi).ok();
            out["character"] = json!({
                "chi": strs(&chi),
                "outside_effective": s.outside_effective,
                "unstable_facets": s.facets,
                "unstable_codim": s.codim(),
                "stable_base_locus": base,
            });
        }
    } else if character.is_some() {
        return Err(Failure::Input(
            "characters need a complete projective fan".into(),
        ));
    }
    if json {
        return Ok(Outcome::ok(pretty(&out)));
    }
    let mut s = String::new();
    writeln!(
        s,
        "simplicial: {}\nsmooth: {}\ncomplete: {}\nprojective: {}",
        report.simplicial, report.smooth, report.complete, report.projective
    )
    .unwrap();
    writeln!(s, "rays: {}  dim: {}", f.n_rays(), f.dim()).unwrap();
    let gens: Vec<String> = ideal
        .iter()
        .map(|g| {
            if g.is_empty() {
                "1".to_string()
            } else {
                g.iter()
                    .map(|i| format!("x{i}"))
                    .collect::<Vec<_>>()
                    .join("*")
            }
        })
        .collect();
    writeln!(s, "irrelevant ideal: <{}>", gens.join(", ")).unwrap();
    writeln!(s, "max m with m-neighborly: {neighborly}").unwrap();
    if report.projective {
        writeln!(s, "picard rank: {}", out["picard_rank"]).unwrap();
        let degs: Vec<String> = out["degrees"]
            .as_array()
            .expect("array")
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let parts: Vec<&str> = g
                    .as_array()
                    .expect("array")
                    .iter()
                    .map(|x| x.as_str().expect("string"))
                    .collect();
                format!("x{i}:({})", parts.join(","))
            })
            .collect();
        writeln!(s, "degrees: {}", degs.join(" ")).unwrap();
        writeln!(s, "unstable codim: {}", out["unstable_codim"]).unwrap();
        writeln!(s, "small unstable locus: {}", out["small_unstable_locus"]).unwrap();
        if let Some(c) = out.get("character") {
            writeln!(s, "character: {}", c).unwrap();
        }
    } else {
        writeln!(s, "picard rank: n/a (fan is not complete and projective)").unwrap();
    }
    Ok(Outcome::ok(s))
}

fn chambers(f: &Fan, character: Option<&str>, json: bool) -> CliResult<Outcome> {
    let d = degree_map(f)?;
    let dec = enumerate_chambers(&d)?;
    let reports: Vec<_> = dec.chambers.iter().map(|c| c.report()).collect();
    let located = match character {
        Some(text) => {
            let chi = parse_character(text)?;
            let sig = unstable_supports(&d, &chi)?;
            Some(dec.chambers.iter().position(|c| c.signature == sig))
        }
        None => None,
    };
    if json {
        let mut v = json!(reports);
        if let Some(pos) = located {
            v = json!({ "chambers": reports, "character_chamber": pos });
        }
        return Ok(Outcome::ok(pretty(&v)));
    }
    let mut s = format!("{} chambers\n", reports.len());
    for (i, r) in reports.iter().enumerate() {
        writeln!(
            s,
            "[{i}] interior point ({}), unstable codim {}, facets {:?}",
            r.interior_point.join(", "),
            r.codim,
            r.facets
        )
        .unwrap();
    }
    match located {
        Some(Some(i)) => writeln!(s, "character lies in chamber {i}").unwrap(),
        Some(None) => {
            writeln!(s, "character lies on a wall or outside the effective cone").unwrap()
        }
        None => {}
    }
    Ok(Outcome::ok(s))
}

fn check_outcome(results: &[(String, CheckResult)], json: bool) -> Outcome {
    let passed = results.iter().all(|(_, r)| r.passed);
    let stdout = if json {
        let v: Vec<Value> = results
            .iter()
            .map(|(label, r)| {
                let mut v = json!(r);
                if !label.is_empty() {
                    v["fan"] = json!(label);
                }
                v
            })
            .collect();
        if v.len() == 1 {
            pretty(&v[0])
        } else {
            pretty(&json!(v))
        }
    } else {
        let mut s = String::new();
        for (label, r) in results {
            let tag = if r.passed { "PASS" } else { "FAIL" };
            if label.is_empty() {
                writeln!(s, "{tag} {}", r.name).unwrap();
            } else {
                writeln!(s, "{tag} {} [{label}]", r.name).unwrap();
            }
            if r.name == "remark_example" {
                if let Some(c) = r.witness["o1_base_locus"]["Codim"].as_u64() {
                    writeln!(s, "  stable base locus of O(1): codimension {c}").unwrap();
                }
            }
            if !r.passed || results.len() == 1 {
                writeln!(s, "  witness: {}", r.witness).unwrap();
            }
        }
        let failed = results.iter().filter(|(_, r)| !r.passed).count();
        if results.len() > 1 {
            writeln!(s, "{} checks, {} failed", results.len(), failed).unwrap();
        }
        s
    };
    Outcome {
        code: if passed { 0 } else { 1 },
        stdout,
        stderr: String::new(),
    }
}

fn check(which: &Check, json: bool) -> CliResult<Outcome> {
    let one = |r: CheckResult| vec![(String::new(), r)];
    let results = match which {
        Check::All { fan: Some(p), .. } => checks::fan_suite(&load_fan(p)?)?
            .into_iter()
            .filter(|r| r.name != "small_unstable_locus")
            .map(|r| (String::new(), r))
            .collect(),
        Check::All { fan: None, m_max } => checks::run_all(*m_max)?,
        Check::SmallUnstableLocus { fan } => {
            one(checks::check_small_unstable_locus(&load_fan(fan)?)?)
        }
        Check::Prop5 { fan } => one(checks::check_prop5(&load_fan(fan)?)?),
        Check::NeighborlyCodim { m, fan } => {
            one(checks::check_neighborly_codim(&load_fan(fan)?, *m)?)
        }
        Check::Prop4a { fan } => one(checks::check_prop4a(&load_fan(fan)?)?),
        Check::Prop4b { a, b } => one(checks::check_prop4b(
            &load_fan(a)?,
            &load_fan(b)?,
            checks::KUNNETH_SEED,
        )?),
        Check::Prop4c {
            base,
            divisors,
            m_max,
        } => {
            let base = load_fan(base)?;
            let divs = divisors
                .iter()
                .map(|p| load_divisor(p))
                .collect::<CliResult<Vec<_>>>()?;
            one(checks::check_prop4c(&base, &divs, *m_max)?)
        }
        Check::RemarkExample { m_max } => one(checks::check_remark_example(*m_max)?),
        Check::Thm29 { fan } => one(checks::check_thm29_properties(&load_fan(fan)?)?),
        Check::TheoremMain { fan } => one(checks::check_theorem_main_chain(&load_fan(fan)?)?),
    };
    Ok(check_outcome(&results, json))
}
