use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use osp_yangian::gauss::{Currents, GaussData};
use osp_yangian::ncseries::Engine;
use osp_yangian::relcheck::{run, RunConfig, RunError, Status, SuiteId};
use osp_yangian::SuperSpace;

/// Thread count used when `--threads` is absent.
const THREADS_ENV: &str = "OSP_YANGIAN_THREADS";

#[derive(Parser)]
#[command(name = "osp-yangian", version, about = "Relation checks for the extended orthosymplectic Yangian")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Switch {
    On,
    Off,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Markdown,
}

#[derive(clap::Args)]
struct Space {
    #[arg(long = "N")]
    n_big: usize,
    #[arg(long)]
    m: usize,
    /// Truncation order of all series.
    #[arg(long = "K", default_value_t = 3)]
    k: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Run relation suites and write a report.
    Verify {
        #[command(flatten)]
        space: Space,
        /// Comma-separated suite names, or `all`.
        #[arg(long, default_value = "all")]
        suites: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long = "rep-check", value_enum, default_value = "on")]
        rep_check: Switch,
        #[arg(long = "mutation-controls", value_enum, default_value = "off", num_args = 0..=1, default_missing_value = "on")]
        mutation_controls: Switch,
        /// Report file; standard output when absent.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        threads: Option<usize>,
        /// Record wall-clock times in the report (makes it non-reproducible).
        #[arg(long)]
        timings: bool,
    },
    /// Write the commutator table and the Gauss current series.
    DumpTables {
        #[command(flatten)]
        space: Space,
        /// Output directory.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
}

/// Writes through a temporary file in the target directory, then renames.
fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    #[cfg(unix)]
    {
        use std::os::unix::fs::PermissionsExt;
        tmp.as_file().set_permissions(std::fs::Permissions::from_mode(0o644))?;
    }
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

fn config_error(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn threads(flag: Option<usize>) -> Result<usize, String> {
    match flag {
        Some(n) => Ok(n),
        None => match std::env::var(THREADS_ENV) {
            Ok(v) => v.parse().map_err(|_| format!("{THREADS_ENV} must be a positive integer, got `{v}`")),
            Err(_) => Ok(1),
        },
    }
}

fn dump_tables(space: &Space, out: &Path) -> Result<(), String> {
    let s = SuperSpace::new(space.n_big, space.m).map_err(|e| RunError::from(e).to_string())?;
    if space.k < 2 {
        return Err(RunError::InvalidK(space.k).to_string());
    }
    let engine = Engine::new(&s);
    let table = engine.dump_table(space.k);
    let tag = format!("N{}_m{}_K{}", space.n_big, space.m, space.k);

    let mut series = String::new();
    let k = space.k;
    let n = s.size();
    let g = GaussData::decompose(&engine, k, n).map_err(|e| e.to_string())?;
    for i in 1..=n {
        for r in 1..=k {
            series += &format!("h_{i}^({r}) = {}\n", g.h(i).coeff(r));
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            for r in 1..=k {
                series += &format!("e_{i},{j}^({r}) = {}\n", g.e(i, j).coeff(r));
                series += &format!("f_{j},{i}^({r}) = {}\n", g.f(j, i).coeff(r));
            }
        }
    }
    let lead = GaussData::decompose(&engine, k, s.rank() + 1).map_err(|e| e.to_string())?;
    let cur = Currents::build(&engine, &lead).map_err(|e| e.to_string())?;
    for i in 1..=s.rank() {
        for r in 0..k {
            series += &format!("kappa_{i},{r} = {}\n", cur.kappa_coeff(i, r));
            series += &format!("xi+_{i},{r} = {}\n", cur.xi_coeff(true, i, r));
            series += &format!("xi-_{i},{r} = {}\n", cur.xi_coeff(false, i, r));
        }
    }

    std::fs::create_dir_all(out).map_err(|e| e.to_string())?;
    write_atomic(&out.join(format!("commutators_{tag}.txt")), &table).map_err(|e| e.to_string())?;
    write_atomic(&out.join(format!("currents_{tag}.txt")), &series).map_err(|e| e.to_string())?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            space,
            suites,
            seed,
            rep_check,
            mutation_controls,
            out,
            format,
            threads: thread_flag,
            timings,
        } => {
            let suites = match SuiteId::parse_list(&suites) {
                Ok(s) => s,
                Err(e) => return config_error(e),
            };
            let threads = match threads(thread_flag) {
                Ok(t) => t,
                Err(e) => return config_error(e),
            };
            let cfg = RunConfig {
                n_big: space.n_big,
                m: space.m,
                k: space.k,
                seed,
                suites,
                rep_check: rep_check == Switch::On,
                mutation_controls: mutation_controls == Switch::On,
                threads,
                timings,
            };
            let report = match run(&cfg) {
                Ok(r) => r,
                Err(e) => return config_error(format!("{e} [{}]", e.code())),
            };
            let text = match format {
                Format::Json => report.to_json(),
                Format::Markdown => report.to_markdown(),
            };
            match &out {
                Some(path) => {
                    if let Err(e) = write_atomic(path, &text) {
                        eprintln!("error: cannot write {}: {e}", path.display());
                        return ExitCode::from(1);
                    }
                }
                None => print!("{text}"),
            }
            if cfg.rep_check && report.rep_gate.status == Status::Fail {
                ExitCode::from(3)
            } else if report.status == Status::Fail {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Command::DumpTables { space, out } => match dump_tables(&space, &out) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => config_error(e),
        },
    }
}
