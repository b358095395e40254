use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use contracta::io::{
    emit_diagram_svg, format_diagram, load_diagram, load_mesh, parse_diagram, write_off, HeightSource, Mesh, RunReport,
};
use contracta::persistence::{bottleneck, diagram, full_diagram, reduce, PersistenceDiagram};
use contracta::stability::simplify;
use contracta::{generate, surface, verify};

#[derive(Parser)]
#[command(name = "contracta", version, about = "Edge-contraction simplification with persistence guarantees")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Persistence diagram of a mesh's lower-star filtration.
    Diagram {
        #[arg(long)]
        input: PathBuf,
        /// `z`, `curvature`, or a file of `index value` lines.
        #[arg(long, default_value = "z")]
        height: HeightSource,
        /// Only this dimension; all dimensions when omitted.
        #[arg(long)]
        dim: Option<usize>,
        /// Output `.dgm` file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Persistence pairing of a closed surface via spanning forests.
    Pair {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "z")]
        height: HeightSource,
        /// Cross-check against matrix reduction.
        #[arg(long)]
        oracle: bool,
    },
    /// Staged (p, ε)-stable simplification.
    Simplify {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value = "z")]
        height: HeightSource,
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[arg(long)]
        epsilon: f64,
        #[arg(long, default_value_t = 10_000)]
        max_stages: usize,
        /// Simplified mesh (OFF).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Run report (JSON).
        #[arg(long)]
        report: Option<PathBuf>,
        /// Directory for before/after diagrams and plots.
        #[arg(long)]
        diagrams_out: Option<PathBuf>,
        /// Dataset name for the report; defaults to the input file stem.
        #[arg(long)]
        dataset: Option<String>,
    },
    /// Bottleneck distance between two `.dgm` files.
    Bottleneck {
        d1: PathBuf,
        d2: PathBuf,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Property suites on generated complexes.
    Verify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
    },
    /// Writes a synthetic grid terrain as OFF.
    Terrain {
        #[arg(long, default_value_t = 50)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        roughness: f64,
        #[arg(long)]
        out: PathBuf,
    },
}

enum Failure {
    Input(String),
    Invariant(String),
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    if let Some(n) = std::env::var("CONTRACTA_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // only fails if a pool already exists, which cannot happen this early
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("invariant violated: {msg}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Diagram {
            input,
            height,
            dim,
            out,
            svg,
        } => {
            let (k, _) = load_mesh(&input, &height)?;
            let d = match dim {
                Some(p) => diagram(&reduce(&k), &k, p)?,
                None => full_diagram(&k),
            };
            match out {
                Some(path) => std::fs::write(path, format_diagram(&d))?,
                None => print!("{}", format_diagram(&d)),
            }
            if let Some(path) = svg {
                emit_diagram_svg(&d, &path)?;
            }
            Ok(())
        }
        Command::Pair { input, height, oracle } => {
            let (k, _) = load_mesh(&input, &height)?;
            let pairing = surface::compute_pairing(&k)?;
            let (pairs, essential) = pairing.by_vertices(&k);
            for (a, b) in &pairs {
                println!("{a:?} {b:?}");
            }
            for e in &essential {
                println!("{e:?} inf");
            }
            if oracle {
                if reduce(&k) != pairing {
                    return Err(Failure::Invariant("spanning-forest pairing differs from reduction".into()));
                }
                eprintln!("oracle agrees on {} pairs", pairs.len());
            }
            Ok(())
        }
        Command::Simplify {
            input,
            height,
            dim,
            epsilon,
            max_stages,
            out,
            report,
            diagrams_out,
            dataset,
        } => {
            if epsilon.is_nan() || epsilon < 0.0 {
                return Err(Failure::Input("epsilon must be nonnegative".into()));
            }
            let (k, mesh) = load_mesh(&input, &height)?;
            let (simplified, log) = simplify(&k, dim, epsilon, max_stages);

            // distances are taken from the text form, exactly as written to disk
            let before = parse_diagram(&format_diagram(&full_diagram(&k)))?;
            let after = parse_diagram(&format_diagram(&full_diagram(&simplified)))?;
            let d_b = bottleneck(&before.of_dim(dim), &after.of_dim(dim));

            if let Some(path) = &out {
                write_off(path, &Mesh::from_complex(&simplified, &mesh.positions))?;
            }
            if let Some(dir) = &diagrams_out {
                write_diagrams(dir, &before, &after)?;
            }
            let name = dataset.unwrap_or_else(|| {
                input
                    .file_stem()
                    .and_then(|s| s.to_str())
                    .unwrap_or("input")
                    .to_string()
            });
            let run = RunReport::new(&name, &height.to_string(), k.len(), simplified.len(), &log, d_b);
            if let Some(path) = &report {
                std::fs::write(path, run.to_json())?;
            }
            println!(
                "{}: {} -> {} simplices ({:.2}% reduction), {} contractions in {} stages, d_b = {} (bound {})",
                run.dataset,
                run.init_simplices,
                run.remaining_simplices,
                run.pct_reduction,
                run.contractions,
                run.iterations,
                run.d_b,
                run.bound
            );
            if d_b > log.distance_bound() + 1e-9 {
                return Err(Failure::Invariant(format!("d_b = {d_b} exceeds m·ε = {}", log.distance_bound())));
            }
            Ok(())
        }
        Command::Bottleneck { d1, d2, dim } => {
            let (a, b) = (load_diagram(&d1)?, load_diagram(&d2)?);
            let d = match dim {
                Some(p) => bottleneck(&a.of_dim(p), &b.of_dim(p)),
                None => bottleneck(&a, &b),
            };
            println!("{d}");
            Ok(())
        }
        Command::Verify { seed, cases } => {
            let report = verify::run_suites(seed, cases);
            for (name, n) in &report.checks {
                println!("{name}: {n} checks");
            }
            for f in &report.failures {
                println!("FAILED {f}");
            }
            if report.passed() {
                println!("all properties hold on {cases} cases (seed {seed})");
                Ok(())
            } else {
                Err(Failure::Invariant(format!("{} failures", report.failures.len())))
            }
        }
        Command::Terrain {
            n,
            seed,
            roughness,
            out,
        } => {
            if n < 2 {
                return Err(Failure::Input("terrain needs n >= 2".into()));
            }
            write_off(&out, &generate::terrain_mesh(n, seed, roughness))?;
            Ok(())
        }
    }
}

fn write_diagrams(dir: &Path, before: &PersistenceDiagram, after: &PersistenceDiagram) -> Result<(), Failure> {
    std::fs::create_dir_all(dir)?;
    for (name, d) in [("before", before), ("after", after)] {
        std::fs::write(dir.join(format!("{name}.dgm")), format_diagram(d))?;
        emit_diagram_svg(d, &dir.join(format!("{name}.svg")))?;
    }
    Ok(())
}
