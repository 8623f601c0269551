//! `horismos` — generate event samples, inspect causal relations and
//! topology traces, and run the verification experiments.
//!
//! Exit codes: 0 on success (all assertive experiments pass), 1 when a
//! `verify` run has a failing experiment, 2 on configuration errors.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

use horismos_core::causal_geometry::{causal, chron};
use horismos_core::continuum_traces::{
    euclidean_trace, horismos_ball_trace, horismos_matrix, relation_dot, zeeman_trace, RadiusPolicy,
};
use horismos_core::event_sampling::{
    grid_sample, poisson_sprinkle, sample_from_json, sample_to_json, Region, Sample,
    DEFAULT_RELATION_CAP, DEFAULT_TRACE_CAP,
};
use horismos_core::finite_topology::{
    cone_topology_subbase, interval_subbase, minimal_neighborhoods, RelationMatrix, TopologyBase,
};
use horismos_core::harness::{
    all_passed, run, run_all, ExperimentConfig, ExperimentId, RunReport, SampleSource,
};
use horismos_core::{Event4, Scalar};

#[derive(Parser)]
#[command(
    name = "horismos",
    version,
    about = "Causal relations on flat spacetime and the finite topologies they induce"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RelationKind {
    Chron,
    Causal,
    Horismos,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TopologyKind {
    Euclidean,
    Zeeman,
    HorismosBall,
    Interval,
    Cone,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SourceKind {
    Grid,
    Sprinkle,
    File,
}

#[derive(Subcommand)]
enum Command {
    /// Seeded uniform events in a region, emitted as event-set JSON
    Sprinkle {
        /// Box corners as lo0,lo1,lo2,lo3,hi0,hi1,hi2,hi3 (rationals allowed)
        #[arg(long, value_parser = parse_region, default_value = "0,0,0,0,1,1,1,1")]
        region: Region,
        #[arg(long, default_value_t = 64)]
        count: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Maximum sample size
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lattice points of a region, emitted as event-set JSON
    Grid {
        #[arg(long, value_parser = parse_region, default_value = "0,0,0,0,1,1,1,1")]
        region: Region,
        #[arg(long, value_parser = parse_scalar, default_value = "1")]
        spacing: Scalar,
        #[arg(long)]
        cap: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A causal relation of a sample, as JSON pairs, a 0/1 matrix, or DOT
    Relate {
        /// Event-set JSON file
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = RelationKind::Horismos)]
        relation: RelationKind,
        /// Use the reflexive horismos convention
        #[arg(long)]
        reflexive: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// A topology trace base of a sample
    Topo {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = TopologyKind::Zeeman)]
        which: TopologyKind,
        /// Use the reflexive horismos for the interval and cone topologies
        #[arg(long)]
        reflexive: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run verification experiments ("all" or one experiment name)
    #[command(
        after_help = "Experiments: axis-probe, cone-partition, e-coarser-z, finite-chain,\n\
                      horismos-ball-base, intersection-base, order-containments,\n\
                      reflexive-degeneracy, z-identity, zeeman-interval-gap.\n\
                      axis-probe and reflexive-degeneracy are report-only."
    )]
    Verify {
        /// Experiment name or "all"
        experiment: String,
        /// Base seed for sprinkles and random base pairs
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Event cap for config-supplied samples
        #[arg(long)]
        cap: Option<usize>,
        /// Sprinkled samples in the z-identity battery
        #[arg(long)]
        z_sprinkles: Option<usize>,
        /// Sprinkled samples in the E-coarser-Z battery
        #[arg(long)]
        e_sprinkles: Option<usize>,
        /// Random base pairs for the intersection-topology experiment
        #[arg(long)]
        trials: Option<usize>,
        /// Replace the built-in battery with one sample from this source
        #[arg(long, value_enum)]
        source: Option<SourceKind>,
        /// Box corners for --source grid|sprinkle (lo0,..,hi3)
        #[arg(long, value_parser = parse_region)]
        region: Option<Region>,
        /// Lattice spacing for --source grid
        #[arg(long, value_parser = parse_scalar)]
        spacing: Option<Scalar>,
        /// Event count for --source sprinkle
        #[arg(long)]
        count: Option<usize>,
        /// Event-set JSON file for --source file
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-emit an event-set file as canonical JSON, a table, or a DOT digraph
    Export {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn parse_scalar(text: &str) -> Result<Scalar, String> {
    Scalar::from_str(text).map_err(|e| e.to_string())
}

fn parse_region(text: &str) -> Result<Region, String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 8 {
        return Err(format!(
            "expected 8 comma-separated values lo0,..,hi3, got {}",
            parts.len()
        ));
    }
    let mut values = Vec::with_capacity(8);
    for p in &parts {
        values.push(parse_scalar(p)?);
    }
    let lo = Event4::new(
        values[0].clone(),
        values[1].clone(),
        values[2].clone(),
        values[3].clone(),
    );
    let hi = Event4::new(
        values[4].clone(),
        values[5].clone(),
        values[6].clone(),
        values[7].clone(),
    );
    Region::new(lo, hi).map_err(|e| e.to_string())
}

fn emit(out: &Option<PathBuf>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn load_sample(path: &PathBuf) -> anyhow::Result<Sample> {
    let text = std::fs::read_to_string(path)?;
    Ok(sample_from_json(&text)?)
}

fn sample_text_table(sample: &Sample) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "# {} events, hash {}\n",
        sample.len(),
        sample.content_hash()
    ));
    for (id, e) in sample.iter().enumerate() {
        out.push_str(&format!("{id}\t{}\n", e.canonical_text()));
    }
    out
}

fn relation_json(rel: &RelationMatrix, name: &str, reflexive: bool) -> serde_json::Value {
    let mut pairs = Vec::new();
    for i in 0..rel.ground_size() {
        for j in 0..rel.ground_size() {
            if rel.get(i, j) {
                pairs.push(serde_json::json!([i, j]));
            }
        }
    }
    serde_json::json!({
        "schema": 1,
        "relation": name,
        "reflexive": reflexive,
        "n": rel.ground_size(),
        "pairs": pairs,
    })
}

fn relation_text(rel: &RelationMatrix) -> String {
    let n = rel.ground_size();
    let mut out = String::new();
    for i in 0..n {
        for j in 0..n {
            out.push(if rel.get(i, j) { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

fn base_json(
    base: &TopologyBase,
    name: &str,
    kind: &str,
    policy: Option<&RadiusPolicy>,
) -> serde_json::Value {
    let family: Vec<Vec<usize>> = base.family().iter().map(|s| s.ids()).collect();
    serde_json::json!({
        "schema": 1,
        "topology": name,
        "base_kind": kind,
        "n": base.ground_size(),
        "policy": policy.map(|p| p.values().iter().map(|v| v.to_string()).collect::<Vec<_>>()),
        "family": family,
    })
}

fn run_command(cli: Cli) -> anyhow::Result<ExitCode> {
    match cli.command {
        Command::Sprinkle {
            region,
            count,
            seed,
            cap,
            out,
        } => {
            let cap = cap.unwrap_or(DEFAULT_RELATION_CAP);
            if count > cap {
                anyhow::bail!("count {count} exceeds cap {cap}");
            }
            let sample = poisson_sprinkle(&region, count, seed)?;
            emit(&out, &(sample_to_json(&sample)? + "\n"))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Grid {
            region,
            spacing,
            cap,
            out,
        } => {
            let sample = grid_sample(&region, &spacing, cap.unwrap_or(DEFAULT_RELATION_CAP))?;
            emit(&out, &(sample_to_json(&sample)? + "\n"))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Relate {
            input,
            relation,
            reflexive,
            format,
            out,
        } => {
            let sample = load_sample(&input)?;
            let (rel, name) = match relation {
                RelationKind::Chron => (
                    RelationMatrix::from_fn(sample.len(), |i, j| {
                        chron(sample.event(i), sample.event(j))
                    }),
                    "chron",
                ),
                RelationKind::Causal => (
                    RelationMatrix::from_fn(sample.len(), |i, j| {
                        causal(sample.event(i), sample.event(j))
                    }),
                    "causal",
                ),
                RelationKind::Horismos => (horismos_matrix(&sample, reflexive), "horismos"),
            };
            let text = match format {
                Format::Json => {
                    serde_json::to_string_pretty(&relation_json(&rel, name, reflexive))? + "\n"
                }
                Format::Text => relation_text(&rel),
                Format::Dot => relation_dot(&sample, &rel, name),
            };
            emit(&out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Topo {
            input,
            which,
            reflexive,
            format,
            out,
        } => {
            let sample = load_sample(&input)?;
            if sample.len() > DEFAULT_TRACE_CAP {
                anyhow::bail!(
                    "sample has {} events, trace cap is {DEFAULT_TRACE_CAP}",
                    sample.len()
                );
            }
            let policy = RadiusPolicy::from_sample(&sample);
            let (base, name, kind, with_policy) = match which {
                TopologyKind::Euclidean => (
                    euclidean_trace(&sample, &policy),
                    "euclidean",
                    "trace",
                    true,
                ),
                TopologyKind::Zeeman => (zeeman_trace(&sample, &policy), "zeeman", "trace", true),
                TopologyKind::HorismosBall => (
                    horismos_ball_trace(&sample),
                    "horismos-ball",
                    "trace",
                    false,
                ),
                TopologyKind::Interval => {
                    let sb = interval_subbase(&horismos_matrix(&sample, reflexive));
                    let nbhds = minimal_neighborhoods(&sb);
                    (
                        TopologyBase::new(sample.len(), horismos_core::Role::Base, nbhds),
                        "interval-horismos",
                        "minimal-neighborhoods",
                        false,
                    )
                }
                TopologyKind::Cone => {
                    let sb = cone_topology_subbase(&horismos_matrix(&sample, reflexive));
                    (sb, "cone-order", "subbase", false)
                }
            };
            let text = match format {
                Format::Json => {
                    serde_json::to_string_pretty(&base_json(
                        &base,
                        name,
                        kind,
                        if with_policy { Some(&policy) } else { None },
                    ))? + "\n"
                }
                Format::Text => format!("{name} ({kind}): {}\n", base.canonical_text()),
                Format::Dot => anyhow::bail!("dot output applies to relations, not topology bases"),
            };
            emit(&out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            experiment,
            seed,
            cap,
            z_sprinkles,
            e_sprinkles,
            trials,
            source,
            region,
            spacing,
            count,
            input,
            format,
            out,
        } => {
            let mut config = ExperimentConfig {
                seed,
                ..ExperimentConfig::default()
            };
            if let Some(cap) = cap {
                config.trace_cap = cap;
                config.relation_cap = cap;
            }
            if let Some(n) = z_sprinkles {
                config.z_identity_sprinkles = n;
            }
            if let Some(n) = e_sprinkles {
                config.e_coarser_sprinkles = n;
            }
            if let Some(n) = trials {
                config.intersection_trials = n;
            }
            config.source = match source {
                None => None,
                Some(SourceKind::Grid) => Some(SampleSource::Grid {
                    region: region
                        .ok_or_else(|| anyhow::anyhow!("--source grid needs --region"))?,
                    spacing: spacing.unwrap_or_else(Scalar::one),
                }),
                Some(SourceKind::Sprinkle) => Some(SampleSource::Sprinkle {
                    region: region
                        .ok_or_else(|| anyhow::anyhow!("--source sprinkle needs --region"))?,
                    count: count.unwrap_or(64),
                    seed,
                }),
                Some(SourceKind::File) => Some(SampleSource::File {
                    path: input.ok_or_else(|| anyhow::anyhow!("--source file needs --in"))?,
                }),
            };

            let verdicts = if experiment == "all" {
                run_all(&config)?
            } else {
                vec![run(ExperimentId::from_str(&experiment)?, &config)?]
            };
            let ok = all_passed(&verdicts);
            let report = RunReport::new(&config, verdicts);
            let text = match format {
                Format::Json => report.to_json()? + "\n",
                Format::Text => report.to_text(),
                Format::Dot => anyhow::bail!("dot output applies to relations, not reports"),
            };
            emit(&out, &text)?;
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Export { input, format, out } => {
            let sample = load_sample(&input)?;
            let text = match format {
                Format::Json => sample_to_json(&sample)? + "\n",
                Format::Text => sample_text_table(&sample),
                Format::Dot => relation_dot(&sample, &horismos_matrix(&sample, false), "horismos"),
            };
            emit(&out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run_command(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("horismos: {err}");
            ExitCode::from(2)
        }
    }
}
