//! The `carto` command line: two-point tables, verification suites,
//! exhaustive enumeration, sampling, asymptotics, and exports.

use crate::oracle::{self, Constraints};
use crate::rat::Rat;
use crate::series::io::{series2_to_csv, series_to_csv, Series2Json, SeriesJson};
use crate::twopoint::{self, Family};
use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use std::str::FromStr;

#[derive(Parser)]
#[command(name = "carto", version, about = "Planar maps, hypermaps and exact two-point functions")]
pub struct Cli {
    /// Worker threads for batch verification (1 = sequential).
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Compute a two-point function table.
    Twopoint(TwopointArgs),
    /// Run a bijection verification suite; exits 1 on failure with
    /// witnesses in the JSON report.
    Verify(VerifyArgs),
    /// Exhaustively enumerate rooted maps or hypermaps with distance
    /// profiles.
    Enumerate(EnumerateArgs),
    /// Draw pointed rooted maps through the mobile bijection and test
    /// uniformity.
    Sample(SampleArgs),
    /// Exact asymptotic constants, optionally cross-checked by the
    /// coefficient estimator.
    Asymptotics(AsymptoticsArgs),
    /// Write a series table to a file.
    Export(ExportArgs),
}

#[derive(Args)]
pub struct TwopointArgs {
    /// Family: general | bipartite | hypermap | three-hypermap |
    /// three-constellation | general-2p | bipartite-2p | hypermap-2p
    #[arg(long)]
    pub family: String,
    /// Index of the observable.
    #[arg(long, default_value_t = 1)]
    pub i: usize,
    /// Truncation order in t (inclusive).
    #[arg(long, default_value_t = 10)]
    pub order: i64,
    /// Evaluate two-parameter series at this rational z (e.g. "1/2");
    /// without it, two-parameter output keeps the polynomial coefficients.
    #[arg(long)]
    pub z: Option<String>,
    /// recurrence | closed | both (both cross-checks the provenances).
    #[arg(long, default_value = "both")]
    pub provenance: String,
    /// json | csv
    #[arg(long, default_value = "json")]
    pub format: String,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// roundtrip | mirror | theorem1 | theorem2 | constellation | triples | all
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 3)]
    pub max_edges: usize,
}

#[derive(Args)]
pub struct EnumerateArgs {
    /// Number of edges (dark faces for the triangular families).
    #[arg(long)]
    pub n: usize,
    /// general | bipartite | hypermap | three-hypermap | three-constellation
    #[arg(long, default_value = "general")]
    pub family: String,
    /// Also aggregate pointed-rooted distance profiles.
    #[arg(long, default_value_t = false)]
    pub profile: bool,
}

#[derive(Args)]
pub struct SampleArgs {
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = 10_000)]
    pub trials: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Args)]
pub struct AsymptoticsArgs {
    /// general | bipartite
    #[arg(long)]
    pub family: String,
    #[arg(long, default_value_t = 1)]
    pub i: i64,
    /// Print the exact rational constants.
    #[arg(long, default_value_t = true)]
    pub exact: bool,
    /// Also run the coefficient estimator at this order (floating point).
    #[arg(long)]
    pub estimate_order: Option<i64>,
}

#[derive(Args)]
pub struct ExportArgs {
    #[command(flatten)]
    pub twopoint: TwopointArgs,
    /// Output path.
    #[arg(long)]
    pub output: std::path::PathBuf,
}

fn parse_rat(s: &str) -> Result<Rat, String> {
    let parse_int = |x: &str| {
        num_bigint::BigInt::from_str(x.trim()).map_err(|e| format!("bad rational {:?}: {}", s, e))
    };
    match s.split_once('/') {
        Some((n, d)) => Ok(Rat::new(parse_int(n)?, parse_int(d)?)),
        None => Ok(Rat::from_integer(parse_int(s)?)),
    }
}

/// Run with parsed arguments; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    match dispatch(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {}", msg);
            1
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, String> {
    match cli.command {
        Command::Twopoint(args) => {
            let out = twopoint_output(&args)?;
            println!("{}", out);
            Ok(0)
        }
        Command::Verify(args) => {
            let reports = run_suites(&args.suite, args.max_edges, cli.jobs)?;
            let failed = reports.iter().any(|r| !r.passed());
            let json = serde_json::json!({
                "instances": reports.iter().map(|r| r.instances).sum::<u64>(),
                "failures": reports
                    .iter()
                    .flat_map(|r| r.failures.iter())
                    .collect::<Vec<_>>(),
                "suites": reports,
            });
            println!("{}", serde_json::to_string_pretty(&json).unwrap());
            Ok(if failed { 1 } else { 0 })
        }
        Command::Enumerate(args) => {
            let constraints = family_constraints(&args.family)?;
            let classes = oracle::enumerate_rooted(args.n, constraints)
                .map_err(|e| e.to_string())?;
            let triples = matches!(args.family.as_str(), "three-hypermap" | "three-constellation");
            let entries: Vec<oracle::ClassEntry> = classes
                .iter()
                .map(|c| {
                    let mut count_by_type = std::collections::BTreeMap::new();
                    if args.profile {
                        let mut t = oracle::ProfileTable::default();
                        oracle::profile_class_counts(c, triples, &mut t);
                        for (k, v) in t.pair_counts {
                            count_by_type.insert(format!("({},{})", k.0, k.1), v);
                        }
                        for (k, v) in t.triple_counts {
                            count_by_type.insert(format!("({},{},{})", k.0, k.1, k.2), v);
                        }
                    }
                    oracle::ClassEntry { encoding: c.encoding(), count_by_type }
                })
                .collect();
            let report = oracle::EnumerationReport {
                family: args.family.clone(),
                n: args.n,
                total: classes.len(),
                classes: entries,
            };
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            Ok(0)
        }
        Command::Sample(args) => {
            let report = oracle::sampler_check(args.n, args.trials, args.seed)
                .map_err(|e| e.to_string())?;
            #[derive(Serialize)]
            struct Out<'a> {
                n: usize,
                trials: u64,
                classes: usize,
                chi_square: f64,
                p_value: f64,
                class_counts: &'a std::collections::BTreeMap<String, u64>,
            }
            let out = Out {
                n: report.n,
                trials: report.trials,
                classes: report.classes,
                chi_square: report.chi_square,
                p_value: report.p_value,
                class_counts: &report.class_counts,
            };
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
            Ok(0)
        }
        Command::Asymptotics(args) => {
            let family = Family::parse(&args.family)
                .filter(|f| matches!(f, Family::GeneralMap | Family::BipartiteMap))
                .ok_or_else(|| format!("unknown family {:?}", args.family))?;
            let exact = twopoint::exact_constants(family, args.i).map_err(|e| e.to_string())?;
            let mut json = serde_json::json!({
                "family": family.name(),
                "i": args.i,
                "e_down_up": exact.e_down_up.to_string(),
                "e_up_down": exact.e_up_down.to_string(),
            });
            if let Some(l) = &exact.e_level {
                json["e_level"] = serde_json::json!(l.to_string());
            }
            if let Some(v) = &exact.v {
                json["v"] = serde_json::json!(v.to_string());
            }
            if let Some(order) = args.estimate_order {
                let est = twopoint::estimate_edge_constant(family, args.i as usize, order)
                    .map_err(|e| e.to_string())?;
                json["estimated_e_down_up"] = serde_json::json!(est);
            }
            println!("{}", serde_json::to_string_pretty(&json).unwrap());
            Ok(0)
        }
        Command::Export(args) => {
            let out = twopoint_output(&args.twopoint)?;
            std::fs::write(&args.output, out).map_err(|e| e.to_string())?;
            Ok(0)
        }
    }
}

fn family_constraints(name: &str) -> Result<Constraints, String> {
    Ok(match name {
        "general" => Constraints::default(),
        "bipartite" => Constraints { bipartite: true, ..Default::default() },
        "hypermap" => Constraints { eulerian: true, ..Default::default() },
        "three-hypermap" => Constraints { p_hypermap: Some(3), ..Default::default() },
        "three-constellation" => Constraints { p_constellation: Some(3), ..Default::default() },
        other => return Err(format!("unknown family {:?}", other)),
    })
}

fn run_suites(
    suite: &str,
    max_edges: usize,
    jobs: usize,
) -> Result<Vec<crate::bijections::suites::SuiteReport>, String> {
    use crate::bijections::suites::*;
    type Job = (&'static str, fn(usize) -> SuiteReport);
    let all: Vec<Job> = vec![
        ("roundtrip", roundtrip_suite),
        ("mirror", mirror_suite),
        ("theorem1", theorem1_suite),
        ("theorem2", theorem2_suite),
        ("constellation", constellation_suite),
        ("triples", triples_suite),
    ];
    let selected: Vec<Job> = if suite == "all" {
        all
    } else {
        all.into_iter().filter(|(name, _)| *name == suite).collect()
    };
    if selected.is_empty() {
        return Err(format!("unknown suite {:?}", suite));
    }
    // Triples enumerate general hypermaps whose brin count equals the edge
    // count; keep their cap independent of the map cap.
    let size_for = |name: &str| if name == "triples" { max_edges.min(3) } else { max_edges };
    if jobs <= 1 {
        Ok(selected.into_iter().map(|(name, f)| f(size_for(name))).collect())
    } else {
        std::thread::scope(|scope| {
            let handles: Vec<_> = selected
                .into_iter()
                .map(|(name, f)| scope.spawn(move || f(size_for(name))))
                .collect();
            Ok(handles.into_iter().map(|h| h.join().expect("suite thread")).collect())
        })
    }
}

fn twopoint_output(args: &TwopointArgs) -> Result<String, String> {
    let family =
        Family::parse(&args.family).ok_or_else(|| format!("unknown family {:?}", args.family))?;
    let tables: Vec<twopoint::TwoPointTable> = match args.provenance.as_str() {
        "recurrence" => vec![twopoint::solve_recurrence(family, args.i, args.order)
            .map_err(|e| e.to_string())?],
        "closed" => {
            vec![twopoint::closed_form(family, args.i, args.order).map_err(|e| e.to_string())?]
        }
        "both" => {
            let a = twopoint::solve_recurrence(family, args.i, args.order)
                .map_err(|e| e.to_string())?;
            let b =
                twopoint::closed_form(family, args.i, args.order).map_err(|e| e.to_string())?;
            for obs in family.observables() {
                for i in 0..=args.i {
                    if a.get(*obs, i).ok() != b.get(*obs, i).ok() {
                        return Err(format!(
                            "provenances disagree on {} at index {}",
                            obs.name(),
                            i
                        ));
                    }
                }
            }
            vec![a]
        }
        other => return Err(format!("unknown provenance {:?}", other)),
    };
    let table = &tables[0];
    let z = args.z.as_deref().map(parse_rat).transpose()?;
    let mut csv = String::new();
    let mut json = serde_json::Map::new();
    json.insert("family".into(), serde_json::json!(family.name()));
    json.insert("i".into(), serde_json::json!(args.i));
    json.insert("order".into(), serde_json::json!(args.order));
    let mut obs_json = serde_json::Map::new();
    for obs in family.observables() {
        let value = table.get(*obs, args.i).map_err(|e| e.to_string())?;
        match (value, &z) {
            (twopoint::Value::One(s), _) => {
                obs_json.insert(
                    obs.name().into(),
                    serde_json::to_value(SeriesJson::from_series(s)).unwrap(),
                );
                csv.push_str(&format!("# {}\n{}", obs.name(), series_to_csv(s)));
            }
            (twopoint::Value::Two(s), Some(z)) => {
                let sz = s.eval_z(z);
                obs_json.insert(
                    obs.name().into(),
                    serde_json::to_value(SeriesJson::from_series(&sz)).unwrap(),
                );
                csv.push_str(&format!("# {}\n{}", obs.name(), series_to_csv(&sz)));
            }
            (twopoint::Value::Two(s), None) => {
                obs_json.insert(
                    obs.name().into(),
                    serde_json::to_value(Series2Json::from_series(s)).unwrap(),
                );
                csv.push_str(&format!("# {}\n{}", obs.name(), series2_to_csv(s)));
            }
        }
    }
    json.insert("observables".into(), serde_json::Value::Object(obs_json));
    match args.format.as_str() {
        "json" => Ok(serde_json::to_string_pretty(&serde_json::Value::Object(json)).unwrap()),
        "csv" => Ok(csv),
        other => Err(format!("unknown format {:?}", other)),
    }
}
