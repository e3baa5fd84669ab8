use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde_json::{json, Value};

use netinverse::evolve::{report, solve, RunManifest, Timings};
use netinverse::factors::{fractional_factor, theorem1_certify, DeltaScope, FactorSpec};
use netinverse::graph::{parse_json, to_dot, Family, GraphJson};
use netinverse::oracle::{
    benchmark, enumerate_canonical, enumerate_exact_with_cap, explore_proposition_with, machine_descriptor,
    ExploreOptions,
};
use netinverse::toughness::{exact_isolated_toughness_variant_with_limit, exact_isolated_toughness_with_limit};
use netinverse::{Error, Graph, VertexSet};

use crate::{
    BenchmarkArgs, CertifyArgs, Command, EnumerateArgs, ExactArgs, ExploreArgs, FamilyArgs, FamilyKind, Format,
    SolveArgs,
};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Lib(#[from] Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(e) => match e {
                Error::Capacity { .. } | Error::SizeLimit { .. } => 2,
                Error::EmptyArchive => 3,
                Error::ConsistencyViolation(_) => 4,
                _ => 1,
            },
            CliError::Io { .. } | CliError::Usage(_) => 1,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

pub fn run(command: Command) -> Result<u8> {
    match command {
        Command::Solve(args) => cmd_solve(args),
        Command::Exact(args) => cmd_exact(args),
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::Family(args) => cmd_family(args),
        Command::Certify(args) => cmd_certify(args),
        Command::Explore(args) => cmd_explore(args),
        Command::Benchmark(args) => cmd_benchmark(args),
    }
}

fn write(path: &Path, contents: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|source| CliError::Io {
            path: dir.to_path_buf(),
            source,
        })?;
    }
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn read_graph(file: Option<&Path>) -> Result<Graph> {
    let mut text = String::new();
    match file {
        Some(path) if path != Path::new("-") => {
            text = fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.to_path_buf(),
                source,
            })?;
        }
        _ => {
            std::io::stdin().read_to_string(&mut text).map_err(|source| CliError::Io {
                path: PathBuf::from("<stdin>"),
                source,
            })?;
        }
    }
    Ok(parse_json(&text)?)
}

fn pretty(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON value serializes") + "\n"
}

fn set_list(sets: &[VertexSet]) -> String {
    let parts: Vec<String> = sets
        .iter()
        .map(|s| {
            let items: Vec<String> = s.iter().map(|v| v.to_string()).collect();
            format!("{{{}}}", items.join(", "))
        })
        .collect();
    parts.join(" ")
}

fn cmd_solve(args: SolveArgs) -> Result<u8> {
    let config = args.solver.config();
    let start = Instant::now();
    let outcome = solve(&config)?;
    let total = start.elapsed().as_secs_f64();
    let timings = args.timings.then(|| Timings {
        total_seconds: total,
        machine: machine_descriptor(),
    });
    let manifest = RunManifest::new(&config, &outcome, timings);
    let summary = report(&outcome.archive);

    write(&args.out.join("manifest.json"), &manifest.to_json())?;
    write(&args.out.join("summary.txt"), &summary.to_text())?;
    write(&args.out.join("summary.csv"), &summary.to_csv())?;
    let diversified = outcome.diversified();
    for (i, record) in diversified.iter().enumerate() {
        let stem = args.out.join("graphs").join(format!("graph_{i:02}_delta{}", record.delta));
        let json = serde_json::to_string_pretty(&record.to_json()).expect("graph serializes") + "\n";
        write(&stem.with_extension("json"), &json)?;
        write(&stem.with_extension("dot"), &to_dot(&record.graph))?;
    }

    print!("{}", summary.to_text());
    println!(
        "archived {} records, {} representative graphs written to {}",
        outcome.archive.records.len(),
        diversified.len(),
        args.out.display()
    );
    if outcome.archive.records.is_empty() {
        return Err(Error::EmptyArchive.into());
    }
    Ok(0)
}

fn cmd_exact(args: ExactArgs) -> Result<u8> {
    let g = read_graph(args.file.as_deref())?;
    let plain = exact_isolated_toughness_with_limit(&g, args.limit)?;
    let variant = exact_isolated_toughness_variant_with_limit(&g, args.limit)?;
    match args.format {
        Format::Json => {
            let value = json!({
                "n": g.order(),
                "delta": g.min_degree(),
                "i": plain,
                "i_prime": variant,
            });
            print!("{}", pretty(&value));
        }
        Format::Text => {
            println!("n = {}", g.order());
            println!("delta = {}", g.min_degree());
            println!("I = {}", plain.value);
            println!("I' = {}", variant.value);
            println!("I minimizers: {}", set_list(&plain.minimizers));
            println!("I' minimizers: {}", set_list(&variant.minimizers));
        }
        other => return Err(unsupported("exact", other)),
    }
    Ok(0)
}

fn unsupported(command: &str, format: Format) -> CliError {
    CliError::Usage(format!("{command} does not support --format {format:?}").to_lowercase())
}

fn cmd_enumerate(args: EnumerateArgs) -> Result<u8> {
    let scope = match (args.delta_lo, args.delta_hi) {
        (Some(lo), Some(hi)) => Some(DeltaScope { lo, hi }),
        _ => None,
    };
    let result = if args.canonical {
        if args.n > args.cap {
            enumerate_exact_with_cap(args.n, args.k, scope, args.cap)?;
        }
        enumerate_canonical(args.n, args.k, scope)?
    } else {
        enumerate_exact_with_cap(args.n, args.k, scope, args.cap)?
    };
    let seconds = result.elapsed.as_secs_f64();
    let text = {
        let mut t = format!("{}\nscanned {} graphs\n", result.optima_line(), result.scanned);
        if args.timings {
            t.push_str(&format!("elapsed {seconds:.3} s\n"));
        }
        t
    };
    let body = match args.format {
        Format::Text => text.clone(),
        Format::Csv => result.to_csv(),
        Format::Json => {
            let mut value = serde_json::to_value(&result).expect("result serializes");
            value["timings"] = if args.timings {
                json!({ "seconds": seconds, "machine": machine_descriptor() })
            } else {
                Value::Null
            };
            pretty(&value)
        }
        other => return Err(unsupported("enumerate", other)),
    };
    print!("{body}");
    if let Some(out) = &args.out {
        write(out, &body)?;
    }
    Ok(0)
}

fn cmd_family(args: FamilyArgs) -> Result<u8> {
    let family = match args.kind {
        FamilyKind::Complete { n } => Family::Complete { n },
        FamilyKind::Empty { n } => Family::Empty { n },
        FamilyKind::Star { n } => Family::Star { n },
        FamilyKind::Cycle { n } => Family::Cycle { n },
        FamilyKind::DisjointCliques { copies, size } => Family::DisjointCliques { copies, size },
        FamilyKind::CliqueJoinIndependent { c, d } => Family::CliqueJoinIndependent { c, d },
        FamilyKind::CliqueJoinIndependentPlusOne { c, d } => Family::CliqueJoinIndependentPlusOne { c, d },
        FamilyKind::Extremal { k, l } => Family::Extremal { k, l },
        FamilyKind::Counterexample { k, t } => Family::Counterexample { k, t },
    };
    let g = family.build()?;
    match args.format {
        Format::Json => {
            let json = serde_json::to_string_pretty(&GraphJson::from_graph(&g)).expect("graph serializes");
            println!("{json}");
        }
        Format::Dot => print!("{}", to_dot(&g)),
        other => return Err(unsupported("family", other)),
    }
    Ok(0)
}

fn cmd_certify(args: CertifyArgs) -> Result<u8> {
    let g = read_graph(args.file.as_deref())?;
    if let Some(k) = args.k {
        let cert = theorem1_certify(&g, k)?;
        match args.format {
            Format::Json => print!("{}", pretty(&serde_json::to_value(&cert).expect("certificate serializes"))),
            Format::Text => {
                let v = &cert.verdict;
                let bound = v.bound.map_or_else(|| "none".to_string(), |b| b.to_string());
                let status = match v.rejection {
                    None => "condition met".to_string(),
                    Some(r) => format!("condition not met ({})", serde_json::to_value(r).expect("reason")).replace('"', ""),
                };
                println!("delta = {}, I' = {}, bound = {bound}: {status}", v.delta, v.i_prime);
                if cert.factor_exists {
                    println!("fractional {k}-factor found");
                } else {
                    println!("no fractional {k}-factor");
                }
            }
            other => return Err(unsupported("certify", other)),
        }
        return Ok(0);
    }
    let (a, b) = (args.a.expect("clap enforces a"), args.b.expect("clap enforces b"));
    let spec = FactorSpec::new(a, b)?;
    let factor = fractional_factor(&g, spec);
    match args.format {
        Format::Json => {
            let value = json!({ "a": a, "b": b, "factor_exists": factor.is_some(), "factor": factor });
            print!("{}", pretty(&value));
        }
        Format::Text => match factor {
            Some(_) => println!("fractional [{a},{b}]-factor found"),
            None => println!("no fractional [{a},{b}]-factor"),
        },
        other => return Err(unsupported("certify", other)),
    }
    Ok(0)
}

fn cmd_explore(args: ExploreArgs) -> Result<u8> {
    if args.exhaustive_up_to > netinverse::oracle::MAX_ENUMERATION_ORDER {
        return Err(CliError::Usage(format!(
            "--exhaustive-up-to is at most {}",
            netinverse::oracle::MAX_ENUMERATION_ORDER
        )));
    }
    let options = ExploreOptions {
        exhaustive_up_to: args.exhaustive_up_to,
        samples_per_order: args.samples,
        seed: args.seed,
        ..ExploreOptions::default()
    };
    let r = explore_proposition_with(args.n_max, options)?;
    let body = match args.format {
        Format::Text => {
            let mut t = format!(
                "orders 1..={}: {} graphs examined, {} skipped, {} with differing minimizer sizes\n{} violations\n",
                args.n_max,
                r.examined,
                r.skipped,
                r.differing,
                r.violations.len()
            );
            if !r.sampled_orders.is_empty() {
                let orders: Vec<String> = r.sampled_orders.iter().map(|n| n.to_string()).collect();
                t.push_str(&format!("sampled orders: {}\n", orders.join(", ")));
            }
            t
        }
        Format::Json => pretty(&serde_json::to_value(&r).expect("report serializes")),
        other => return Err(unsupported("explore", other)),
    };
    print!("{body}");
    if let Some(out) = &args.out {
        write(out, &body)?;
    }
    Ok(if r.violations.is_empty() { 0 } else { 4 })
}

fn cmd_benchmark(args: BenchmarkArgs) -> Result<u8> {
    let report = benchmark(&args.solver.config())?;
    let mut value = serde_json::to_value(&report).expect("report serializes");
    let timing_fields = ["solver_seconds", "enumeration_seconds", "machine"];
    match args.format {
        Format::Text => {
            println!("n = {}, k = {}, seed = {}", report.n, report.k, report.seed);
            for c in &report.comparisons {
                let show = |v: Option<netinverse::RationalValue>| v.map_or_else(|| "Null".to_string(), |v| v.to_string());
                let agreement = serde_json::to_value(c.agreement).expect("agreement").as_str().unwrap_or("").to_string();
                println!("delta {}: solver {}, exact {} ({agreement})", c.delta, show(c.solver), show(c.exact));
            }
            println!("solver {:.3} s, enumeration {:.3} s", report.solver_seconds, report.enumeration_seconds);
            println!("machine: {}", report.machine);
        }
        Format::Json => print!("{}", pretty(&value)),
        other => return Err(unsupported("benchmark", other)),
    }
    if let Some(out) = &args.out {
        let obj = value.as_object_mut().expect("object");
        let mut timings = serde_json::Map::new();
        for field in timing_fields {
            if let Some(v) = obj.remove(field) {
                timings.insert(field.to_string(), v);
            }
        }
        obj.insert(
            "timings".to_string(),
            if args.timings { Value::Object(timings) } else { Value::Null },
        );
        write(out, &pretty(&value))?;
    }
    Ok(if report.consistent() { 0 } else { 4 })
}
