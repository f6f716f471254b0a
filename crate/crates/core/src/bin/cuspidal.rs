use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cuspidal_core::cli::verify::{run_suites, suite_names, Ctx};
use cuspidal_core::cli::{
    classify_report, mesh_obj, prepare_mode, sweep_csv, with_threads, AnyPrepared, MeshOptions, Prepared,
    ScalarMode, SweepOptions,
};
use cuspidal_core::germs::{builtin, builtin_names, GermSpec, MapGerm};
use cuspidal_core::jets::DEFAULT_ORDER;
use cuspidal_core::{Error, Rational, Scalar};

#[derive(Parser)]
#[command(name = "cuspidal", version, about = "Normal forms, frontality and invariants of cuspidal S1 deformations")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Jet truncation order (defaults to the order in the germ spec).
    #[arg(long, global = true)]
    order: Option<usize>,
    /// Exact rational arithmetic (default).
    #[arg(long, global = true, conflicts_with = "float")]
    exact: bool,
    /// Double precision arithmetic.
    #[arg(long, global = true)]
    float: bool,
    /// Seed for the randomized verification suites.
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
}

#[derive(Subcommand)]
enum Command {
    /// 2-jet class, frontality, obstruction and the label of the frontal part.
    Classify {
        spec: PathBuf,
    },
    /// CSV of invariants at the S2 points along s = -s~^2.
    Sweep {
        spec: PathBuf,
        #[arg(long, default_value_t = 0.01, allow_hyphen_values = true)]
        s_min: f64,
        #[arg(long, default_value_t = 0.3, allow_hyphen_values = true)]
        s_max: f64,
        #[arg(long, default_value_t = 30)]
        count: usize,
    },
    /// OBJ mesh of the surface at a fixed parameter value.
    Mesh {
        spec: PathBuf,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        s: f64,
        #[arg(long, default_value_t = 64)]
        grid: usize,
        #[arg(long, default_value_t = 1.0)]
        extent: f64,
        /// Mesh the minimal frontalization of the normal form.
        #[arg(long)]
        frontalize: bool,
        /// JSON with S2 and self-intersection data (default: `<out>.json` when --out is set).
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
    /// Run the verification suites.
    Verify {
        /// Run a single suite.
        #[arg(long)]
        suite: Option<String>,
        /// List suite names and exit.
        #[arg(long)]
        list: bool,
        /// Flip the sign of the s = 0 branch curvature (checks that the suites notice).
        #[arg(long, hide = true)]
        mutate_branch_sign: bool,
    },
    /// Write a built-in germ as a germ-spec JSON file.
    ExportBuiltin {
        /// Built-in name; omit to list the available names.
        name: Option<String>,
    },
}

enum Failure {
    Verification,
    Input(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, text).map_err(Error::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load(path: &Path, order: Option<usize>) -> Result<MapGerm<Rational>, Error> {
    let text = fs::read_to_string(path)?;
    let germ = GermSpec::parse(&text)?.to_germ()?;
    Ok(match order {
        Some(n) => {
            let [x, y, z] = germ.into_components().map(|c| c.with_order(n));
            MapGerm::new(x, y, z)?
        }
        None => germ,
    })
}

fn mode(g: &Global) -> ScalarMode {
    if g.float {
        ScalarMode::Float
    } else {
        ScalarMode::Exact
    }
}

fn notes<S: Scalar>(p: &Prepared<S>) {
    for n in &p.notes {
        eprintln!("note: {n}");
    }
}

fn classify(g: &Global, spec: &Path) -> Result<(), Failure> {
    let germ = load(spec, g.order)?;
    let text = match prepare_mode(&germ, mode(g))? {
        AnyPrepared::Exact(p) => classify_report(&p).to_string(),
        AnyPrepared::Float(p) => classify_report(&p).to_string(),
    };
    emit(&g.out, &text)?;
    Ok(())
}

fn sweep_prepared<S: Scalar>(p: &Prepared<S>, opts: &SweepOptions, threads: usize) -> Result<String, Error> {
    notes(p);
    let fnf = p.reduced.as_ref().ok_or(Error::DegenerateD2)?;
    fnf.expand_c1()?.require_d20()?;
    with_threads(threads, || sweep_csv(fnf, opts))?
}

fn sweep(g: &Global, spec: &Path, opts: SweepOptions) -> Result<(), Failure> {
    let germ = load(spec, g.order)?;
    let csv = match prepare_mode(&germ, mode(g))? {
        AnyPrepared::Exact(p) => sweep_prepared(&p, &opts, g.threads)?,
        AnyPrepared::Float(p) => sweep_prepared(&p, &opts, g.threads)?,
    };
    emit(&g.out, &csv)?;
    Ok(())
}

fn mesh(g: &Global, spec: &Path, opts: MeshOptions, sidecar: Option<PathBuf>) -> Result<(), Failure> {
    let germ = load(spec, g.order)?;
    let out = match prepare_mode(&germ, mode(g))? {
        AnyPrepared::Exact(p) => with_threads(g.threads, || mesh_obj(&germ, &p, &opts))??,
        AnyPrepared::Float(p) => {
            let fg = germ.to_f64();
            with_threads(g.threads, || mesh_obj(&fg, &p, &opts))??
        }
    };
    emit(&g.out, &out.obj)?;
    let sidecar = sidecar.or_else(|| g.out.as_ref().map(|o| o.with_extension("json")));
    if let Some(path) = sidecar {
        let json = serde_json::to_string_pretty(&out.sidecar).expect("sidecar serializes");
        fs::write(path, json + "\n").map_err(Error::from)?;
    }
    Ok(())
}

fn verify(g: &Global, suite: Option<String>, list: bool, mutate: bool) -> Result<(), Failure> {
    if list {
        emit(&g.out, &(suite_names().join("\n") + "\n"))?;
        return Ok(());
    }
    let ctx = Ctx {
        seed: g.seed,
        order: g.order.unwrap_or(DEFAULT_ORDER),
        flip_branch_sign: mutate,
    };
    let outcomes = with_threads(g.threads, || run_suites(&ctx, suite.as_deref()))??;
    let mut report = String::new();
    for o in &outcomes {
        report.push_str(&format!(
            "{} {:<22} {:>8.2}s  tol {:<32} {}\n",
            if o.passed { "PASS" } else { "FAIL" },
            o.name,
            o.elapsed.as_secs_f64(),
            o.tolerance,
            o.detail
        ));
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    report.push_str(&format!("{passed}/{} suites passed\n", outcomes.len()));
    emit(&g.out, &report)?;
    if passed == outcomes.len() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn export_builtin(g: &Global, name: Option<String>) -> Result<(), Failure> {
    let Some(name) = name else {
        emit(&g.out, &(builtin_names().join("\n") + "\n"))?;
        return Ok(());
    };
    let germ = builtin(&name, g.order.unwrap_or(DEFAULT_ORDER))?;
    emit(&g.out, &(GermSpec::from_germ(&germ).to_json() + "\n"))?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let g = &cli.global;
    let result = match cli.command {
        Command::Classify { spec } => classify(g, &spec),
        Command::Sweep { spec, s_min, s_max, count } => sweep(g, &spec, SweepOptions { s_min, s_max, count }),
        Command::Mesh { spec, s, grid, extent, frontalize, sidecar } => {
            mesh(g, &spec, MeshOptions { s, grid, extent, frontalize }, sidecar)
        }
        Command::Verify { suite, list, mutate_branch_sign } => verify(g, suite, list, mutate_branch_sign),
        Command::ExportBuiltin { name } => export_builtin(g, name),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
