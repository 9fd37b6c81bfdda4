use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use epsbe_core::eval::{
    betweenness_centrality, eigenvector_centrality, pca_2d, repeated_regression, Normalization,
    RegressionConfig,
};
use epsbe_core::io::{
    align_values, read_edge_list_file, read_embedding_csv, read_node_values_tsv, read_partition_tsv,
    write_coords_csv, write_embedding_csv, write_node_values_tsv, write_partition_tsv,
};
use epsbe_core::oracle::coarsest_equitable_partition_naive;
use epsbe_core::{
    build_embedding, check_eps_be, iterative_refine, refine, EpsSchedule, Graph, Partition,
};

#[derive(Parser)]
#[command(name = "epsbe", version, about = "Approximate equitable partitions and structural embeddings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute a partition and write it as TSV.
    Reduce(ReduceArgs),
    /// Compute a partition and write the block-count embedding as CSV.
    Embed(ReduceArgs),
    /// Verify that a partition satisfies a tolerance.
    Check {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        #[arg(long)]
        eps: u32,
    },
    /// Compute a node centrality and write it as TSV.
    Centrality {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum)]
        measure: MeasureArg,
        #[arg(long)]
        output: PathBuf,
    },
    /// Regress a node target on an embedding over repeated random splits.
    Regress {
        #[arg(long)]
        embedding: PathBuf,
        #[arg(long)]
        target: PathBuf,
        #[arg(long, default_value_t = 0.2)]
        test_fraction: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        repeats: usize,
        #[arg(long, value_enum, default_value_t = NormalizeArg::TestMean)]
        normalize: NormalizeArg,
    },
    /// Project an embedding onto its first two principal components.
    PcaCoords {
        #[arg(long)]
        embedding: PathBuf,
        #[arg(long)]
        output: PathBuf,
    },
    /// Compare the refinement engine against the naive fixpoint at eps 0.
    OracleCompare {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(long)]
    input: PathBuf,
    /// Starting tolerance [default: 0, or the preset's value].
    #[arg(long)]
    eps0: Option<u32>,
    /// Tolerance increment [default: 1, or the preset's value].
    #[arg(long)]
    delta: Option<u32>,
    /// Final tolerance; required unless a preset is given.
    #[arg(long)]
    max_eps: Option<u32>,
    /// Refine once at --max-eps instead of iterating.
    #[arg(long)]
    one_shot: bool,
    #[arg(long, value_enum)]
    preset: Option<Preset>,
    #[arg(long)]
    output: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    Brazil,
    Europe,
    Usa,
    Actor,
    Film,
}

impl Preset {
    fn schedule(self) -> (u32, u32, u32) {
        match self {
            Preset::Brazil => (0, 1, 3),
            Preset::Europe => (0, 1, 4),
            Preset::Usa => (0, 1, 2),
            Preset::Actor => (2, 2, 8),
            Preset::Film => (6, 6, 30),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MeasureArg {
    Eigenvector,
    Betweenness,
}

#[derive(Clone, Copy, ValueEnum)]
enum NormalizeArg {
    TestMean,
    GlobalMean,
}

/// Problems with the inputs map to exit status 2, a failed check to 1.
enum Failure {
    Check,
    Invalid(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Invalid(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Invalid(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn load_graph(path: &Path) -> Result<Graph> {
    read_edge_list_file(path).with_context(|| format!("reading edge list {}", path.display()))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    Ok(BufWriter::new(file))
}

fn open(path: &Path) -> Result<BufReader<File>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    Ok(BufReader::new(file))
}

fn summary(g: &Graph, p: &Partition, elapsed: Duration) {
    println!(
        "n={} m={} blocks={} reduction={:.1}% time={:.3}ms",
        g.num_nodes(),
        g.num_edges(),
        p.num_blocks(),
        100.0 * p.reduction_ratio(),
        elapsed.as_secs_f64() * 1e3
    );
}

fn reduce(args: &ReduceArgs) -> Result<(Graph, Partition, Duration)> {
    let (mut eps0, mut delta, mut max_eps) = (0, 1, None);
    if let Some(preset) = args.preset {
        let (a, b, c) = preset.schedule();
        (eps0, delta, max_eps) = (a, b, Some(c));
    }
    let eps0 = args.eps0.unwrap_or(eps0);
    let delta = args.delta.unwrap_or(delta);
    let Some(max_eps) = args.max_eps.or(max_eps) else {
        bail!("--max-eps is required unless --preset is given");
    };

    let g = load_graph(&args.input)?;
    let init = Partition::single_block(g.num_nodes());
    let start = Instant::now();
    let p = if args.one_shot {
        refine(&g, &init, max_eps)?
    } else {
        iterative_refine(&g, &init, &EpsSchedule::new(eps0, delta, max_eps)?)?
    };
    Ok((g, p, start.elapsed()))
}

fn run(command: Command) -> std::result::Result<(), Failure> {
    match command {
        Command::Reduce(args) => {
            let (g, p, elapsed) = reduce(&args)?;
            let mut out = create(&args.output)?;
            write_partition_tsv(&g, &p, &mut out).map_err(anyhow::Error::from)?;
            out.flush().map_err(anyhow::Error::from)?;
            summary(&g, &p, elapsed);
        }
        Command::Embed(args) => {
            let (g, p, elapsed) = reduce(&args)?;
            let e = build_embedding(&g, &p).map_err(anyhow::Error::from)?;
            let mut out = create(&args.output)?;
            write_embedding_csv(&e, &mut out).map_err(anyhow::Error::from)?;
            out.flush().map_err(anyhow::Error::from)?;
            summary(&g, &p, elapsed);
        }
        Command::Check { input, partition, eps } => {
            let g = load_graph(&input)?;
            let p = read_partition_tsv(&g, open(&partition)?)
                .with_context(|| format!("reading partition {}", partition.display()))?;
            let violations = check_eps_be(&g, &p, eps).map_err(anyhow::Error::from)?;
            if !violations.is_empty() {
                for v in &violations {
                    println!("violation: block {} column {} span {} > {eps}", v.block, v.column, v.span);
                }
                println!("FAIL: {} violations at eps {eps}", violations.len());
                return Err(Failure::Check);
            }
            println!("OK: {} blocks satisfy eps {eps}", p.num_blocks());
        }
        Command::Centrality { input, measure, output } => {
            let g = load_graph(&input)?;
            let values = match measure {
                MeasureArg::Eigenvector => {
                    let out = eigenvector_centrality(&g, 1e-13, 1_000_000).map_err(anyhow::Error::from)?;
                    if !out.converged {
                        eprintln!("warning: power iteration stopped after {} iterations", out.iterations);
                    }
                    if !out.connected {
                        eprintln!("warning: graph is disconnected, eigenvector centrality is not unique");
                    }
                    out.centrality.values
                }
                MeasureArg::Betweenness => betweenness_centrality(&g).values,
            };
            let mut out = create(&output)?;
            write_node_values_tsv(g.labels(), &values, &mut out).map_err(anyhow::Error::from)?;
            out.flush().map_err(anyhow::Error::from)?;
            println!("n={} m={}", g.num_nodes(), g.num_edges());
        }
        Command::Regress { embedding, target, test_fraction, seed, repeats, normalize } => {
            if repeats == 0 {
                return Err(anyhow::anyhow!("--repeats must be at least 1").into());
            }
            let e = read_embedding_csv(open(&embedding)?)
                .with_context(|| format!("reading embedding {}", embedding.display()))?;
            let pairs = read_node_values_tsv(open(&target)?)
                .with_context(|| format!("reading target {}", target.display()))?;
            let y = align_values(e.node_labels(), &pairs).map_err(anyhow::Error::from)?;
            let config = RegressionConfig {
                test_fraction,
                seed,
                normalization: match normalize {
                    NormalizeArg::TestMean => Normalization::TestMean,
                    NormalizeArg::GlobalMean => Normalization::GlobalMean,
                },
            };
            let runs = repeated_regression(&e, &y, &config, repeats).map_err(anyhow::Error::from)?;
            for r in &runs {
                println!("seed={} nmse={:.6e}{}", r.seed, r.nmse, if r.ridge_used { " ridge" } else { "" });
            }
            let mean = runs.iter().map(|r| r.nmse).sum::<f64>() / runs.len() as f64;
            let var = runs.iter().map(|r| (r.nmse - mean).powi(2)).sum::<f64>() / runs.len() as f64;
            println!(
                "n={} d={} repeats={} mean_nmse={:.6e} std_nmse={:.6e}",
                e.num_rows(),
                e.num_cols(),
                runs.len(),
                mean,
                var.sqrt()
            );
        }
        Command::PcaCoords { embedding, output } => {
            let e = read_embedding_csv(open(&embedding)?)
                .with_context(|| format!("reading embedding {}", embedding.display()))?;
            let pca = pca_2d(&e).map_err(anyhow::Error::from)?;
            let mut out = create(&output)?;
            write_coords_csv(e.node_labels(), &pca.coords, &mut out).map_err(anyhow::Error::from)?;
            out.flush().map_err(anyhow::Error::from)?;
            if pca.second_degenerate {
                eprintln!("warning: embedding has a single direction of variance, pc2 is zero");
            }
            println!(
                "n={} d={} var_pc1={:.6e} var_pc2={:.6e}",
                e.num_rows(),
                e.num_cols(),
                pca.explained_variance[0],
                pca.explained_variance[1]
            );
        }
        Command::OracleCompare { input } => {
            let g = load_graph(&input)?;
            let init = Partition::single_block(g.num_nodes());
            let start = Instant::now();
            let fast = refine(&g, &init, 0).map_err(anyhow::Error::from)?;
            let elapsed = start.elapsed();
            let naive = coarsest_equitable_partition_naive(&g, &init);
            summary(&g, &fast, elapsed);
            if fast != naive {
                println!(
                    "DISAGREE: refinement {} blocks, naive fixpoint {} blocks",
                    fast.num_blocks(),
                    naive.num_blocks()
                );
                return Err(Failure::Check);
            }
            println!("AGREE: {} blocks", fast.num_blocks());
        }
    }
    Ok(())
}
