use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use mipkit::algtable::{build_aug_table, SCTable};
use mipkit::canon::canonical_form;
use mipkit::driver::{format_split, mip_bin_split, SplitParams, Verdict};
use mipkit::invariants::{bin_groups, code_fingerprints, fingerprint, format_bins, format_fingerprint};
use mipkit::jennings::{jennings_bound_with, jennings_series};
use mipkit::smallring::{self, small_unit_group};
use mipkit::{Caps, Error, PcPresentation};

#[derive(Parser)]
#[command(name = "mipkit", version, about = "Modular isomorphism problem toolkit for finite p-groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the invariant fingerprint of each group.
    Invariants {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Partition groups of one order into bins by their fingerprints.
    Bin {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Compare canonical forms of I/I^n at increasing levels.
    Split {
        /// First level compared; 0 means one past the largest Jennings bound.
        #[arg(long, default_value_t = 0)]
        start: usize,
        #[arg(long, default_value_t = 2)]
        step: usize,
        /// Last level compared; 0 means the largest nilpotency index.
        #[arg(long, default_value_t = 0)]
        max: usize,
        #[arg(required = true, num_args = 2..)]
        files: Vec<PathBuf>,
    },
    /// Jennings series of a group, or the Jennings bound of a pair.
    Jennings {
        file: PathBuf,
        #[arg(long)]
        pair: Option<PathBuf>,
    },
    /// Structure-constant table of I/I^S in `.sct` format.
    Table {
        #[arg(long)]
        trunc: usize,
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Certificate digest of A/A^N for a `.sct` table.
    Canon {
        #[arg(long)]
        level: usize,
        file: PathBuf,
    },
    /// Unit group S of the small group ring, optionally searching it for a
    /// normal copy of another group.
    Smallring {
        file: PathBuf,
        #[arg(long)]
        contains: Option<PathBuf>,
        #[arg(long)]
        budget: Option<u64>,
    },
}

enum Failure {
    Input(String),
    Unresolved,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_group(path: &Path) -> Result<PcPresentation, Failure> {
    let text = read(path)?;
    let g = PcPresentation::parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    if g.name().is_empty() {
        let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        Ok(g.with_name(stem))
    } else {
        Ok(g)
    }
}

fn load_groups(paths: &[PathBuf]) -> Result<Vec<PcPresentation>, Failure> {
    paths.iter().map(|p| load_group(p)).collect()
}

fn invariants(files: &[PathBuf], caps: &Caps) -> CmdResult {
    let groups = load_groups(files)?;
    let fps: Vec<_> = groups.iter().map(|g| fingerprint(g, caps)).collect();
    let coded = code_fingerprints(&fps, caps);
    let blocks: Vec<String> = coded.iter().map(format_fingerprint).collect();
    print!("{}", blocks.join("\n"));
    Ok(())
}

fn bin(files: &[PathBuf], caps: &Caps) -> CmdResult {
    let groups = load_groups(files)?;
    print!("{}", format_bins(&bin_groups(&groups, caps)?));
    Ok(())
}

fn split(files: &[PathBuf], params: SplitParams, caps: &Caps) -> CmdResult {
    let groups = load_groups(files)?;
    let res = mip_bin_split(&groups, params, caps)?;
    print!("{}", format_split(&res));
    match res.verdict {
        Verdict::Unresolved(_) => Err(Failure::Unresolved),
        _ => Ok(()),
    }
}

fn jennings(file: &Path, pair: Option<&Path>, caps: &Caps) -> CmdResult {
    let g = load_group(file)?;
    let jd = jennings_series(&g, caps)?;
    let Some(other) = pair else {
        println!("group = {}", g.name());
        let orders: Vec<String> = jd.series.iter().map(|d| d.order().to_string()).collect();
        println!("series_orders = {}", orders.join(" "));
        let dims: Vec<String> = jd.graded_dims.iter().map(|d| d.to_string()).collect();
        println!("graded_dims = {}", dims.join(" "));
        println!("length = {}", jd.length());
        println!("nil_index = {}", jd.nil_index);
        return Ok(());
    };
    let h = load_group(other)?;
    if g.prime() != h.prime() || g.ngens() != h.ngens() {
        return Err(Failure::Input("groups of different orders".into()));
    }
    let jh = jennings_series(&h, caps)?;
    let s = jennings_bound_with(&g, &jd, &h, &jh, caps)?;
    println!("pair = {} {}", g.name(), h.name());
    println!("jennings_bound = {s}");
    Ok(())
}

fn table(file: &Path, trunc: usize, output: Option<&Path>, caps: &Caps) -> CmdResult {
    let g = load_group(file)?;
    let text = build_aug_table(&g, trunc, caps)?.to_sct();
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn canon(file: &Path, level: usize, caps: &Caps) -> CmdResult {
    let t = SCTable::parse(&read(file)?).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
    let cert = canonical_form(&t, level, caps)?;
    println!("level = {}", cert.level);
    println!("dim = {}", cert.table.dim());
    println!("aut_order = {}", cert.aut_order);
    println!("digest = {}", cert.digest());
    Ok(())
}

fn smallring_cmd(file: &Path, contains: Option<&Path>, budget: Option<u64>, caps: &Caps) -> CmdResult {
    let g = load_group(file)?;
    let sg = small_unit_group(&g, caps)?;
    print!("{}", sg.report());
    let Some(other) = contains else {
        return Ok(());
    };
    let h = load_group(other)?;
    let verdict = smallring::contains_normal_copy(&sg, &h, budget.unwrap_or(caps.search), caps);
    let word = match verdict {
        smallring::Verdict::Yes => "yes",
        smallring::Verdict::No => "no",
        smallring::Verdict::Unknown => "unknown",
    };
    println!("contains {} = {word}", h.name());
    if verdict == smallring::Verdict::Unknown {
        Err(Failure::Unresolved)
    } else {
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { 1 } else { 0 });
        }
    };
    let caps = match Caps::from_env() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let result = match &cli.command {
        Command::Invariants { files } => invariants(files, &caps),
        Command::Bin { files } => bin(files, &caps),
        Command::Split {
            start,
            step,
            max,
            files,
        } => split(
            files,
            SplitParams {
                start: *start,
                step: *step,
                max: *max,
            },
            &caps,
        ),
        Command::Jennings { file, pair } => jennings(file, pair.as_deref(), &caps),
        Command::Table { trunc, file, output } => table(file, *trunc, output.as_deref(), &caps),
        Command::Canon { level, file } => canon(file, *level, &caps),
        Command::Smallring {
            file,
            contains,
            budget,
        } => smallring_cmd(file, contains.as_deref(), *budget, &caps),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Unresolved) => ExitCode::from(3),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
