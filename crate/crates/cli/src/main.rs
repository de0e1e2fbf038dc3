use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use cleaner::{interval_cleaning, CleanOptions, CleaningInstance};
use graph_core::io::{parse_graph, parse_model, write_graph, write_model};
use graph_core::IntervalGraph;
use hardness_gen::{build_clique_reduction, CliqueInstance};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "interval-clean", version, about = "Delete k vertices of an interval graph to reach a given one")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find k vertices of G whose deletion leaves a copy of G'.
    Clean {
        gprime: PathBuf,
        g: PathBuf,
        /// Interval model of G, used as its fixed representation.
        #[arg(long)]
        model: Option<PathBuf>,
        /// Write search events as JSON lines.
        #[arg(long)]
        trace: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Test two interval graphs for isomorphism and print a mapping.
    Iso { first: PathBuf, second: PathBuf },
    /// Print the labeled PQ-tree in canonical order.
    Pqtree { graph: PathBuf },
    /// List the complete modules, one per line.
    Modules {
        graph: PathBuf,
        /// Only modules that are h-short.
        #[arg(long)]
        short: Option<usize>,
    },
    /// Build the pair (H, G) from a Clique instance (F, k).
    GenHardness {
        f: PathBuf,
        k: usize,
        #[arg(long)]
        out_prefix: PathBuf,
    },
    /// Random interval graph G with k random vertices removed to give G'.
    GenRandom {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        seed: u64,
        /// Maximum interval length as a fraction of n.
        #[arg(long, default_value_t = 0.3)]
        knob: f64,
        #[arg(long)]
        out_prefix: PathBuf,
    },
    /// Exhaustive search over all deletion sets.
    OracleClean { gprime: PathBuf, g: PathBuf },
}

fn read_graph(path: &Path) -> Result<IntervalGraph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    parse_graph(&text).with_context(|| format!("in {}", path.display()))
}

fn write(path: PathBuf, text: String) -> Result<()> {
    std::fs::write(&path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn with_suffix(prefix: &Path, suffix: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(suffix);
    PathBuf::from(s)
}

fn print_set(set: &[usize]) {
    let ids: Vec<String> = set.iter().map(ToString::to_string).collect();
    println!("{}", ids.join(" "));
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Clean { gprime, g, model, trace, jobs } => {
            let gp = read_graph(&gprime)?;
            let mut host = read_graph(&g)?;
            if let Some(m) = model {
                let text = std::fs::read_to_string(&m).with_context(|| format!("cannot read {}", m.display()))?;
                host = host.with_model(parse_model(&text)?).context("model does not match G")?;
            }
            let inst = CleaningInstance::new(gp, host)?;
            let (mut opts, tracer) = CleanOptions::traced();
            opts.jobs = jobs;
            if trace.is_none() {
                opts.tracer = None;
            }
            let found = interval_cleaning(&inst, &opts)?;
            if let Some(path) = trace {
                write(path, tracer.to_jsonl())?;
            }
            Ok(match found {
                Some(sol) => {
                    print_set(&sol.deleted);
                    true
                }
                None => false,
            })
        }
        Command::Iso { first, second } => {
            let (a, b) = (read_graph(&first)?, read_graph(&second)?);
            match pqtree::extract_isomorphism(&a, &b) {
                Ok(map) => {
                    println!("isomorphic");
                    print_set(&map);
                    Ok(true)
                }
                Err(pqtree::PqError::NotIsomorphic) => {
                    println!("not isomorphic");
                    Ok(false)
                }
                Err(e) => Err(e.into()),
            }
        }
        Command::Pqtree { graph } => {
            let lt = pqtree::labeled(&read_graph(&graph)?)?;
            print!("{}", lt.dump());
            Ok(true)
        }
        Command::Modules { graph, short } => {
            let g = read_graph(&graph)?;
            let lt = pqtree::labeled(&g)?;
            let mut modules = module_finder::complete_modules(&g, &lt);
            if let Some(h) = short {
                modules.retain(|m| m.is_short(h));
            }
            for m in modules {
                let ids: Vec<String> = m.vertices.iter().map(ToString::to_string).collect();
                let witness = match m.witness {
                    module_finder::Witness::SubtreeNode(x) => format!("node {x}"),
                    module_finder::Witness::QBlock { q, a, b } => format!("q-block {q} [{a},{b}]"),
                };
                let short = m.short_for.map_or("-".to_string(), |s| s.to_string());
                println!("{}\t{witness}\tsimple={}\tshort={short}", ids.join(" "), m.simple);
            }
            Ok(true)
        }
        Command::GenHardness { f, k, out_prefix } => {
            let red = build_clique_reduction(&CliqueInstance { f: read_graph(&f)?, k })?;
            for (name, g) in [("_H", &red.h), ("_G", &red.g)] {
                let Some(model) = g.model() else { bail!("generated graph lacks a model") };
                write(with_suffix(&out_prefix, &format!("{name}.graph")), write_graph(g))?;
                write(with_suffix(&out_prefix, &format!("{name}.intervals")), write_model(model))?;
            }
            Ok(true)
        }
        Command::GenRandom { n, k, seed, knob, out_prefix } => {
            if k > n {
                bail!("k = {k} exceeds n = {n}");
            }
            let p = oracle::plant_instance(n, k, seed, knob);
            let Some(model) = p.g.model() else { bail!("generated graph lacks a model") };
            write(with_suffix(&out_prefix, "_Gprime.graph"), write_graph(&p.gprime))?;
            write(with_suffix(&out_prefix, "_G.graph"), write_graph(&p.g))?;
            write(with_suffix(&out_prefix, "_G.intervals"), write_model(model))?;
            print_set(&p.planted);
            Ok(true)
        }
        Command::OracleClean { gprime, g } => {
            let found = oracle::brute_force_clean(&read_graph(&gprime)?, &read_graph(&g)?, oracle::BRUTE_ISO_LIMIT)?;
            if let Some(set) = &found {
                print_set(set);
            }
            Ok(found.is_some())
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
