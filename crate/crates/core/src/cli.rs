//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage, 2 parse/validation/parameter errors,
//! 3 internal invariant violation.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::complex::{flag_tournaplex, Tournament};
use crate::digraph::{er_biased, parse_digraph, Digraph, SpikeTrain};
use crate::directionality::{c3_histogram, WeightFunction};
use crate::error::{Error, Result};
use crate::fixtures::{C3_LEVELS, DR_LEVELS};
use crate::persistence::{barcode, betti_grid_csv, bifiltration_betti};
use crate::pipeline::{
    adjusted_rand_index, algorithm1, algorithm2, algorithm3, kmeans, ErExperiment,
    SpikeExperiment,
};

#[derive(Debug, Parser)]
#[command(name = "tplex", version, about = "Flag tournaplexes, directionality filtrations and persistent homology")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Barcode of the flag tournaplex of a digraph.
    Ph(PhArgs),
    /// Betti numbers over the (W_Dr, W_c3) bifiltration grid.
    Bigrid(BigridArgs),
    /// Histogram of tournaments by order and 3-cycle count.
    Stats(GraphArgs),
    /// Generate a biased Erdős–Rényi digraph.
    GenEr(GenErArgs),
    /// Build a feature matrix from graph files or spike trains.
    Features(FeaturesArgs),
    /// k-means clustering of a feature CSV.
    Cluster(ClusterArgs),
    /// Biased Erdős–Rényi classification experiment.
    ExperimentEr(ExperimentErArgs),
    /// Synthetic spike-train classification experiment.
    ExperimentSpikes(ExperimentSpikesArgs),
}

#[derive(Debug, Args)]
pub struct GraphArgs {
    /// Digraph in flagser format.
    pub graph: PathBuf,
    #[arg(long, default_value_t = 8)]
    pub max_order: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PhArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// dr, c3, global, motif:<trans3|cyc3|ORDER:HEXMASK>, combined:A:B
    #[arg(long, default_value = "dr")]
    pub weight: String,
    /// Skeleton for the global weight; defaults to the input graph.
    #[arg(long)]
    pub structure: Option<PathBuf>,
    /// Write CSV with a header instead of `dim birth death` lines.
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Args)]
pub struct BigridArgs {
    #[command(flatten)]
    pub graph: GraphArgs,
    /// Comma-separated W_Dr thresholds.
    #[arg(long, value_delimiter = ',')]
    pub dr_levels: Option<Vec<u64>>,
    /// Comma-separated W_c3 thresholds.
    #[arg(long, value_delimiter = ',')]
    pub c3_levels: Option<Vec<u64>>,
}

#[derive(Debug, Args)]
pub struct GenErArgs {
    #[arg(long)]
    pub n_vertices: usize,
    /// Probability of (i, j) for i > j.
    #[arg(long)]
    pub p: f64,
    /// Probability of (i, j) for i < j.
    #[arg(long)]
    pub q: f64,
    #[arg(long)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct FeaturesArgs {
    /// One input path per line, relative to the manifest's directory.
    #[arg(long)]
    pub manifest: PathBuf,
    /// Structural digraph; switches the manifest to spike-train CSV files.
    #[arg(long)]
    pub structure: Option<PathBuf>,
    /// Spike-train features: `bars` (persistence) or `betti`.
    #[arg(long, default_value = "bars")]
    pub kind: String,
    /// Graph input: selected columns. Spike `betti` input: Betti numbers per bin.
    #[arg(long, default_value_t = 6)]
    pub d: usize,
    /// Spike input: selected columns.
    #[arg(long, default_value_t = 6)]
    pub m: usize,
    #[arg(long, default_value_t = 50.0)]
    pub t1: f64,
    #[arg(long, default_value_t = 5.0)]
    pub t2: f64,
    /// Length of every spike train in ms.
    #[arg(long, default_value_t = 250.0)]
    pub duration: f64,
    #[arg(long, default_value_t = 8)]
    pub max_order: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ClusterArgs {
    /// Feature CSV with a header line.
    pub features: PathBuf,
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 10)]
    pub restarts: usize,
    /// Ground-truth labels, one per line.
    #[arg(long)]
    pub labels: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExperimentErArgs {
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub n_vertices: usize,
    #[arg(long, default_value_t = 0.25)]
    pub p: f64,
    /// Comma-separated q values, one group each.
    #[arg(long, value_delimiter = ',', default_value = "0,0.025,0.05,0.075")]
    pub groups: Vec<f64>,
    #[arg(long, default_value_t = 20)]
    pub per_group: usize,
    #[arg(long, default_value_t = 6)]
    pub max_order: usize,
    #[arg(long, default_value_t = 6)]
    pub d: usize,
    #[arg(long, default_value_t = 4)]
    pub k: usize,
    #[arg(long, default_value_t = 10)]
    pub restarts: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExperimentSpikesArgs {
    #[arg(long)]
    pub seed: u64,
    #[arg(long, default_value_t = 100)]
    pub n_vertices: usize,
    /// Edge probability of the structural digraph.
    #[arg(long, default_value_t = 0.1)]
    pub p: f64,
    #[arg(long, default_value_t = 5)]
    pub per_group: usize,
    #[arg(long, default_value_t = 50.0)]
    pub t1: f64,
    #[arg(long, default_value_t = 5.0)]
    pub t2: f64,
    #[arg(long, default_value_t = 250.0)]
    pub duration: f64,
    #[arg(long, default_value_t = 6)]
    pub m: usize,
    #[arg(long, default_value_t = 3)]
    pub d: usize,
    #[arg(long, default_value_t = 2)]
    pub k: usize,
    #[arg(long, default_value_t = 8)]
    pub max_order: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses a weight specification. `skeleton` supplies the context for
/// `global`.
pub fn parse_weight(spec: &str, skeleton: Option<&Digraph>) -> Result<WeightFunction> {
    let parts: Vec<&str> = spec.split(':').collect();
    match parts.as_slice() {
        ["dr"] => Ok(WeightFunction::LocalDirectionality),
        ["c3"] => Ok(WeightFunction::ThreeCycle),
        ["global"] => skeleton
            .map(WeightFunction::global)
            .ok_or_else(|| Error::Parameter("weight `global` needs a structural graph".into())),
        ["motif", "trans3"] => WeightFunction::motif(Tournament::transitive(3)),
        ["motif", "cyc3"] => WeightFunction::motif(Tournament::from_mask(3, 0b101)?),
        ["motif", order, mask] => {
            let order: usize = order
                .parse()
                .map_err(|_| Error::Parameter(format!("bad motif order `{order}`")))?;
            let mask = u128::from_str_radix(mask.trim_start_matches("0x"), 16)
                .map_err(|_| Error::Parameter(format!("bad motif mask `{mask}`")))?;
            WeightFunction::motif(Tournament::from_mask(order, mask)?)
        }
        ["combined", a, b] => {
            let num = |s: &str| {
                s.parse::<u64>()
                    .map_err(|_| Error::Parameter(format!("bad combined coefficient `{s}`")))
            };
            WeightFunction::combined(num(a)?, num(b)?)
        }
        _ => Err(Error::Parameter(format!("unknown weight `{spec}`"))),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn read_graph(path: &Path) -> Result<Digraph> {
    parse_digraph(&read(path)?)
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(Error::from),
    }
}

fn manifest_paths(manifest: &Path) -> Result<Vec<PathBuf>> {
    let base = manifest.parent().unwrap_or(Path::new("."));
    Ok(read(manifest)?
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| base.join(l))
        .collect())
}

fn read_feature_csv(path: &Path) -> Result<Vec<Vec<f64>>> {
    let text = read(path)?;
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate().skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let row = line
            .split(',')
            .map(|x| {
                x.trim().parse::<f64>().map_err(|_| Error::Parse {
                    line: i + 1,
                    msg: format!("bad number `{x}`"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(rows)
}

fn execute(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Ph(a) => {
            let g = read_graph(&a.graph.graph)?;
            let skeleton = match &a.structure {
                Some(p) => read_graph(p)?,
                None => g.clone(),
            };
            let w = parse_weight(&a.weight, Some(&skeleton))?;
            let b = barcode(&flag_tournaplex(&g, a.graph.max_order), &w)?;
            let text = if a.csv { b.to_csv() } else { b.to_text() };
            emit(&a.graph.out, &text, stdout)
        }
        Command::Bigrid(a) => {
            let g = read_graph(&a.graph.graph)?;
            let dr = a.dr_levels.unwrap_or_else(|| DR_LEVELS.to_vec());
            let c3 = a.c3_levels.unwrap_or_else(|| C3_LEVELS.to_vec());
            let cells = bifiltration_betti(&flag_tournaplex(&g, a.graph.max_order), &dr, &c3)?;
            emit(&a.graph.out, &betti_grid_csv(&cells), stdout)
        }
        Command::Stats(a) => {
            let g = read_graph(&a.graph)?;
            let mut s = String::from("order,c3,count\n");
            for ((order, c), n) in c3_histogram(&flag_tournaplex(&g, a.max_order)) {
                s.push_str(&format!("{order},{c},{n}\n"));
            }
            emit(&a.out, &s, stdout)
        }
        Command::GenEr(a) => {
            let g = er_biased(a.n_vertices, a.p, a.q, a.seed)?;
            emit(&a.out, &g.to_flagser(), stdout)
        }
        Command::Features(a) => {
            let paths = manifest_paths(&a.manifest)?;
            let m = match &a.structure {
                None => {
                    let graphs = paths.iter().map(|p| read_graph(p)).collect::<Result<Vec<_>>>()?;
                    algorithm1(&graphs, a.d, a.max_order)?
                }
                Some(s) => {
                    let g = read_graph(s)?;
                    let trains = paths
                        .iter()
                        .map(|p| {
                            let f = fs::File::open(p)
                                .map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
                            SpikeTrain::from_csv(f, a.duration)
                        })
                        .collect::<Result<Vec<_>>>()?;
                    match a.kind.as_str() {
                        "bars" => algorithm2(&trains, &g, a.m, a.t1, a.t2, a.max_order)?,
                        "betti" => algorithm3(&trains, &g, a.d, a.m, a.t1, a.t2, a.max_order)?,
                        k => return Err(Error::Parameter(format!("unknown feature kind `{k}`"))),
                    }
                }
            };
            emit(&a.out, &m.to_csv(), stdout)
        }
        Command::Cluster(a) => {
            let rows = read_feature_csv(&a.features)?;
            let r = kmeans(&rows, a.k, a.seed, a.restarts)?;
            let mut s = String::from("row_index,cluster\n");
            for (i, c) in r.labels.iter().enumerate() {
                s.push_str(&format!("{i},{c}\n"));
            }
            emit(&a.out, &s, stdout)?;
            if let Some(lp) = &a.labels {
                let truth: Vec<String> = read(lp)?
                    .lines()
                    .map(str::trim)
                    .filter(|l| !l.is_empty())
                    .map(String::from)
                    .collect();
                let ari = adjusted_rand_index(&truth, &r.labels)?;
                let v = ari.map_or_else(|| "undefined".to_string(), |x| format!("{x:.4}"));
                writeln!(stderr, "ari {v}")?;
            }
            Ok(())
        }
        Command::ExperimentEr(a) => {
            let cfg = ErExperiment {
                n_vertices: a.n_vertices,
                p: a.p,
                qs: a.groups,
                per_group: a.per_group,
                max_order: a.max_order,
                d: a.d,
                k: a.k,
                seed: a.seed,
                restarts: a.restarts,
            };
            emit(&a.out, &cfg.run()?.to_text(), stdout)
        }
        Command::ExperimentSpikes(a) => {
            let mut cfg = SpikeExperiment::with_seed(a.seed);
            let n = a.n_vertices;
            cfg.n_vertices = n;
            cfg.class_rates = vec![
                vec![15.0; n],
                (0..n).map(|i| if i < n / 2 { 30.0 } else { 15.0 }).collect(),
            ];
            cfg.structural_p = a.p;
            cfg.per_class = a.per_group;
            cfg.t1 = a.t1;
            cfg.t2 = a.t2;
            cfg.duration = a.duration;
            cfg.m = a.m;
            cfg.betti_dims = a.d;
            cfg.k = a.k;
            cfg.max_order = a.max_order;
            emit(&a.out, &cfg.run()?.to_text(), stdout)
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = write!(stderr, "{e}");
            return code;
        }
    };
    match execute(cli, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            match e {
                Error::Invariant(_) => 3,
                _ => 2,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_specs() {
        assert_eq!(parse_weight("dr", None).unwrap(), WeightFunction::LocalDirectionality);
        assert_eq!(parse_weight("c3", None).unwrap(), WeightFunction::ThreeCycle);
        assert!(parse_weight("global", None).is_err());
        let g = Digraph::new(2, [(0, 1)]).unwrap();
        assert_eq!(parse_weight("global", Some(&g)).unwrap(), WeightFunction::Global(vec![-1, 1]));
        assert!(parse_weight("motif:trans3", None).is_ok());
        assert!(parse_weight("motif:3:5", None).is_ok());
        assert!(parse_weight("motif:6:0", None).is_err());
        assert_eq!(
            parse_weight("combined:3:44", None).unwrap(),
            WeightFunction::Combined { a: 3, b: 44 }
        );
        assert!(parse_weight("combined:0:44", None).is_err());
        assert!(parse_weight("bogus", None).is_err());
    }

    #[test]
    fn usage_error_exit_code() {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        assert_eq!(run(["tplex", "nope"], &mut o, &mut e), 1);
        assert_eq!(run(["tplex", "gen-er", "--p", "0.1"], &mut o, &mut e), 1);
    }
}
