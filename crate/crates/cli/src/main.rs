//! modiso: inspect finite p-groups, their modular group algebras, and the
//! isomorphism pipelines built on small-quotient invariants.
//!
//! Every subcommand prints one JSON report on standard output and keeps
//! diagnostics on standard error. Reports carry no wall-clock data, so a
//! repeated invocation is byte-identical; pass --timing to get elapsed
//! time on standard error.

use std::io::{self, Write};
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use modiso_core::catalog::{self, CatalogEntry};
use modiso_core::grpalg::{s0_algebra, small_group_algebra, GroupAlgebra, ALGEBRA_DIM_CAP};
use modiso_core::mip::{
    check_theorem_b_hypotheses, compare_fingerprints, extract_presentation, fingerprint,
    theorem_a_pipeline, theorem_b_pipeline, QuotientIsoWitness, TheoremAVerdict, TheoremAWitness,
    TheoremBVerdict, FINGERPRINT_FIELDS, TUPLE_SEARCH_CAP,
};
use modiso_core::pcgroup::{GroupElement, PcGroup, Subgroup};
use modiso_core::suites::{run_all, SuiteLevel};
use modiso_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "modiso",
    version,
    about = "Finite p-group and modular group algebra toolkit",
    after_help = "Groups are referenced as builtin:NAME[:PARAM] or as a path \
to a presentation file. Exit codes: 0 success, 1 a checked mathematical \
invariant failed, 2 invalid input, 3 a resource cap was exceeded."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit compact single-line JSON (pretty-printed JSON is the default)
    #[arg(long, global = true)]
    json: bool,

    /// Seed for sampled associativity checking on groups too large for
    /// the exhaustive sweep; the decision pipelines ignore it
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Cap on the order of groups the isomorphism searches walk through
    #[arg(long, global = true)]
    max_order: Option<u64>,

    /// Cap on the dimension of dense group algebras
    #[arg(long, global = true)]
    max_algebra_dim: Option<u64>,

    /// Print elapsed wall-clock time to standard error
    #[arg(long, global = true)]
    timing: bool,
}

#[derive(Subcommand)]
enum Command {
    /// List the builtin groups and the standard roster
    List,
    /// Basic facts about one group
    Info { group: String },
    /// Characteristic series: lower central, Jennings, center, Frattini
    Series { group: String },
    /// Invariant table with algebra-determined markers
    Fingerprint { group: String },
    /// Compare the invariant tables of two groups
    Compare { left: String, right: String },
    /// Dimension data of the group algebra and its quotients
    Algebra {
        group: String,
        /// Cap on the algebra dimension for this command only
        #[arg(long)]
        max_dim: Option<u64>,
    },
    /// Check the presentation-recovery hypotheses of a group
    CheckHypotheses { group: String },
    /// Extract the reduced presentation data of a qualifying group
    Extract { group: String },
    /// Decide whether the reduced groups of two inputs are isomorphic
    VerifyTheoremB { left: String, right: String },
    /// Decide isomorphism for two groups with center index p^3
    VerifyTheoremA { left: String, right: String },
    /// Run the numbered verification suites
    Selftest {
        /// quick skips the order-5^7 sweeps; full runs everything
        #[arg(long, value_enum, default_value_t = Level::Quick)]
        level: Level,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Level {
    Quick,
    Full,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let code = match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            u8::try_from(e.exit_code()).unwrap_or(2)
        }
    };
    if cli.timing {
        eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    }
    ExitCode::from(code)
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::List => {
            let builtins: Vec<Value> = catalog::builtin_specs()
                .iter()
                .map(|s| json!({ "name": s.name, "parameter": s.parameter, "summary": s.summary }))
                .collect();
            let roster: Vec<String> =
                catalog::standard_roster()?.iter().map(|e| e.name().to_string()).collect();
            emit(cli, "list", &[], json!({ "builtins": builtins, "standard_roster": roster }))?;
            Ok(0)
        }
        Command::Info { group } => {
            let entry = load_entry(group)?;
            let grp = entry.group()?;
            let (ab, _) = grp.quotient_presentation(&grp.derived_subgroup())?;
            let center = grp.center()?;
            let result = json!({
                "name": grp.name(),
                "prime": grp.p(),
                "order": grp.order(),
                "pc_generators": grp.ngens(),
                "minimal_generators": grp.minimal_generator_count()?,
                "nilpotency_class": grp.nilpotency_class(),
                "abelianization": ab.abelian_invariants(&Subgroup::full_group(&ab))?,
                "center_invariants": grp.abelian_invariants(&center)?,
                "note": entry.note(),
            });
            emit(cli, "info", &[group], result)?;
            Ok(0)
        }
        Command::Series { group } => {
            let grp = load_entry(group)?.group()?;
            let center = grp.center()?;
            let result = json!({
                "lower_central_orders":
                    grp.lower_central_series().iter().map(|s| s.order(&grp)).collect::<Vec<_>>(),
                "jennings_dimensions": grp.jennings_dimensions()?,
                "center_order": center.order(&grp),
                "center_invariants": grp.abelian_invariants(&center)?,
                "frattini_order": grp.frattini()?.order(&grp),
                "agemo_order": grp.agemo()?.order(&grp),
            });
            emit(cli, "series", &[group], result)?;
            Ok(0)
        }
        Command::Fingerprint { group } => {
            let grp = load_entry(group)?.group()?;
            let fp = fingerprint(&grp)?;
            let determined: Vec<Value> = FINGERPRINT_FIELDS
                .iter()
                .map(|(field, flag)| json!({ "field": field, "determined": flag }))
                .collect();
            emit(
                cli,
                "fingerprint",
                &[group],
                json!({ "fingerprint": fp, "determined_fields": determined }),
            )?;
            Ok(0)
        }
        Command::Compare { left, right } => {
            let gl = load_entry(left)?.group()?;
            let gr = load_entry(right)?.group()?;
            let fl = fingerprint(&gl)?;
            let fr = fingerprint(&gr)?;
            let cmp = compare_fingerprints(&fl, &fr)?;
            emit(
                cli,
                "compare",
                &[left, right],
                json!({ "left": fl, "right": fr, "comparison": cmp }),
            )?;
            Ok(0)
        }
        Command::Algebra { group, max_dim } => {
            let grp = load_entry(group)?.group()?;
            let cap = max_dim.or(cli.max_algebra_dim).unwrap_or(ALGEBRA_DIM_CAP);
            let fg = GroupAlgebra::new(&grp, cap)?;
            let s = small_group_algebra(&fg)?;
            let s0 = s0_algebra(&fg)?;
            let zphi = grp.subgroup_product(&grp.center()?, &grp.frattini()?)?;
            let result = json!({
                "algebra_dim": fg.dim(),
                "ideal_power_dims":
                    fg.ideal_power_chain()?.iter().map(|w| w.dim()).collect::<Vec<_>>(),
                "commutator_subspace_dim": fg.commutator_subspace().dim(),
                "center_dim": fg.algebra_center()?.dim(),
                "small_algebra_dim": s.dim(),
                "s0_dim": s0.dim(),
                "d_group": grp.ngens() - zphi.log_order(),
                "d_algebra": fg.compute_d_algebra()?,
            });
            emit(cli, "algebra", &[group], result)?;
            Ok(0)
        }
        Command::CheckHypotheses { group } => {
            let grp = load_entry(group)?.group()?;
            let hyp = check_theorem_b_hypotheses(&grp)?;
            let center = grp.center()?;
            let result = json!({
                "hypotheses": hyp,
                "satisfied": hyp.satisfied(),
                "center_index": grp.order() / center.order(&grp),
            });
            emit(cli, "check-hypotheses", &[group], result)?;
            Ok(0)
        }
        Command::Extract { group } => {
            let grp = load_entry(group)?.group()?;
            let ext = extract_presentation(&grp)?;
            let result = json!({
                "rdata": ext.rdata,
                "generators": elements_json(&ext.generators),
                "gamma3_basis": elements_json(&ext.gamma3_basis),
                "quotient": { "name": ext.quotient.name(), "order": ext.quotient.order() },
            });
            emit(cli, "extract", &[group], result)?;
            Ok(0)
        }
        Command::VerifyTheoremB { left, right } => {
            let gl = load_entry(left)?.group()?;
            let gr = load_entry(right)?.group()?;
            let verdict = theorem_b_pipeline(&gl, &gr, search_cap(cli))?;
            emit(cli, "verify-theorem-b", &[left, right], theorem_b_json(&verdict))?;
            Ok(0)
        }
        Command::VerifyTheoremA { left, right } => {
            let gl = load_entry(left)?.group()?;
            let gr = load_entry(right)?.group()?;
            let verdict = theorem_a_pipeline(&gl, &gr, search_cap(cli))?;
            emit(cli, "verify-theorem-a", &[left, right], theorem_a_json(&verdict))?;
            Ok(0)
        }
        Command::Selftest { level } => {
            let level = match level {
                Level::Quick => SuiteLevel::Quick,
                Level::Full => SuiteLevel::Full,
            };
            let reports = run_all(level, cli.seed)?;
            let all_passed = reports.iter().all(|r| r.passed);
            emit(
                cli,
                "selftest",
                &[],
                json!({ "level": level, "all_passed": all_passed, "reports": reports }),
            )?;
            Ok(if all_passed { 0 } else { 1 })
        }
    }
}

/// Search bound for the isomorphism pipelines, overridable by --max-order.
fn search_cap(cli: &Cli) -> u64 {
    cli.max_order.unwrap_or(TUPLE_SEARCH_CAP)
}

/// Resolve a group reference: builtin:NAME[:PARAM] or a file path.
fn load_entry(spec: &str) -> Result<CatalogEntry> {
    if let Some(rest) = spec.strip_prefix("builtin:") {
        let (name, param) = match rest.split_once(':') {
            Some((name, text)) => {
                let param = text.parse::<u64>().map_err(|_| {
                    Error::Input(format!("builtin parameter '{text}' is not a number"))
                })?;
                (name, param)
            }
            None => (rest, default_param(rest)?),
        };
        catalog::builtin(name, param)
    } else {
        catalog::load(Path::new(spec))
    }
}

/// Parameter to use when builtin:NAME is given without one. Only the
/// fixed order-5^7 groups have an implied parameter.
fn default_param(name: &str) -> Result<u64> {
    let key = name.to_ascii_lowercase();
    if key.starts_with("g5_7_") {
        Ok(5)
    } else {
        Err(Error::Input(format!(
            "builtin {name} needs a parameter, write builtin:{name}:PARAM"
        )))
    }
}

fn elements_json(elements: &[GroupElement]) -> Value {
    json!(elements.iter().map(|x| x.exponents().to_vec()).collect::<Vec<_>>())
}

fn quotient_json(grp: &PcGroup) -> Value {
    json!({ "name": grp.name(), "order": grp.order() })
}

fn iso_witness_json(w: &QuotientIsoWitness) -> Value {
    json!({
        "rdata": w.rdata,
        "g_quotient": quotient_json(&w.g_quotient),
        "g_tuple": elements_json(&w.g_tuple),
        "h_quotient": quotient_json(&w.h_quotient),
        "h_tuple": elements_json(&w.h_tuple),
    })
}

fn theorem_b_json(verdict: &TheoremBVerdict) -> Value {
    match verdict {
        TheoremBVerdict::Distinguished { fields } => {
            json!({ "verdict": "distinguished", "fields": fields })
        }
        TheoremBVerdict::HypothesesNotSatisfied(hyp) => {
            json!({ "verdict": "hypotheses_not_satisfied", "hypotheses": hyp })
        }
        TheoremBVerdict::QuotientsIsomorphic(w) => {
            json!({ "verdict": "quotients_isomorphic", "witness": iso_witness_json(w) })
        }
        TheoremBVerdict::QuotientsNotIsomorphic => {
            json!({ "verdict": "quotients_not_isomorphic" })
        }
    }
}

fn theorem_a_json(verdict: &TheoremAVerdict) -> Value {
    match verdict {
        TheoremAVerdict::Distinguished { fields } => {
            json!({ "verdict": "distinguished", "fields": fields })
        }
        TheoremAVerdict::Isomorphic(witness) => {
            let witness = match witness.as_ref() {
                TheoremAWitness::SmallQuotientIsomorphism { source, target, generator_images } => {
                    json!({
                        "kind": "small_quotient_isomorphism",
                        "source": quotient_json(source),
                        "target": quotient_json(target),
                        "generator_images": elements_json(generator_images),
                    })
                }
                TheoremAWitness::ReducedIsomorphism(w) => json!({
                    "kind": "reduced_isomorphism",
                    "witness": iso_witness_json(w),
                }),
            };
            json!({ "verdict": "isomorphic", "witness": witness })
        }
        TheoremAVerdict::NotIsomorphic => json!({ "verdict": "not_isomorphic" }),
    }
}

/// Print the report envelope on standard output. A closed pipe on the
/// consumer side ends the process quietly instead of panicking.
fn emit(cli: &Cli, command: &str, inputs: &[&str], result: Value) -> Result<()> {
    let report = json!({
        "command": command,
        "inputs": inputs,
        "seed": cli.seed,
        "caps": {
            "max_order": cli.max_order,
            "max_algebra_dim": cli.max_algebra_dim,
            "search_cap": search_cap(cli),
        },
        "result": result,
    });
    let text = if cli.json {
        serde_json::to_string(&report).expect("report serializes")
    } else {
        serde_json::to_string_pretty(&report).expect("report serializes")
    };
    let mut out = io::stdout().lock();
    match writeln!(out, "{text}") {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == io::ErrorKind::BrokenPipe => std::process::exit(0),
        Err(e) => Err(Error::Io(e)),
    }
}
