use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use loopcomm::catalog::{Catalog, CatalogRecord, Filter};
use loopcomm::extensions::{decompose_extension, parse_cocycle, write_cocycle};
use loopcomm::presets::{run_preset, Preset, PRESET_NAMES};
use loopcomm::report::HierarchyReport;
use loopcomm::structure::parse_element_list;
use loopcomm::{Error, LoopTable, Subloop};

#[derive(Parser)]
#[command(name = "loopcomm", version, about = "Commutator theory for finite loops")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the hierarchy report of a loop table.
    Analyze { table: PathBuf },
    /// Build the extension described by a cocycle file and print its table.
    Extend { cocycle: PathBuf },
    /// Rewrite a loop as an extension of a normal subloop and print the cocycle file.
    Decompose {
        table: PathBuf,
        /// Elements of the normal subloop, separated by spaces or commas.
        elements: String,
    },
    /// Run a named or custom search and write each witness to a directory.
    Search {
        #[arg(long, conflicts_with = "custom", required_unless_present = "custom")]
        preset: Option<String>,
        /// kind:fiber:base:property, e.g. central:Z2:Z3:nonassociative-nilpotent
        #[arg(long)]
        custom: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of candidates for random searches.
        #[arg(long, default_value_t = 100_000)]
        budget: u64,
        /// Stop after this many witnesses.
        #[arg(long, default_value_t = 20)]
        max_hits: usize,
        #[arg(long, default_value = "witnesses")]
        out: PathBuf,
    },
    /// Add loops to, or query, an invariant catalog.
    Catalog {
        #[arg(long)]
        catalog: PathBuf,
        #[command(subcommand)]
        action: CatalogAction,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    Add {
        table: PathBuf,
        /// Source tag stored with the record; defaults to the file name.
        #[arg(long)]
        source: Option<String>,
    },
    /// Filters such as `order<=8` or `congruence_solvability_class=inf`.
    Query { filters: Vec<String> },
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io(_) => 4,
        Error::NotAbelianIn(_) | Error::NotNormal | Error::NotNeutralAt(_) => 3,
        _ => 2,
    }
}

fn read(path: &Path) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<String, Error> {
    match cli.command {
        Command::Analyze { table } => {
            let q = LoopTable::parse(&read(&table)?)?;
            Ok(HierarchyReport::analyze(&q)?.to_string())
        }
        Command::Extend { cocycle } => {
            let c = parse_cocycle(&read(&cocycle)?)?;
            Ok(c.build_extension()?.to_table_string())
        }
        Command::Decompose { table, elements } => {
            let q = LoopTable::parse(&read(&table)?)?;
            let els = parse_element_list(&elements)?;
            let a = Subloop::from_elements(&q, &els)?;
            let d = decompose_extension(&q, &a)?;
            let reps: Vec<String> = d.transversal.iter().map(|x| x.to_string()).collect();
            let fiber: Vec<String> = d.fiber.iter().map(|x| x.to_string()).collect();
            Ok(format!(
                "# fiber elements: {}\n# transversal: {}\n{}",
                fiber.join(" "),
                reps.join(" "),
                write_cocycle(&d.cocycle)?
            ))
        }
        Command::Search {
            preset,
            custom,
            seed,
            budget,
            max_hits,
            out,
        } => {
            let p = match (preset, custom) {
                (Some(name), _) => Preset::builtin(&name).map_err(|_| {
                    Error::Malformed(format!(
                        "unknown preset {name:?}; known: {}",
                        PRESET_NAMES.join(", ")
                    ))
                })?,
                (None, Some(spec)) => Preset::custom(&spec)?,
                (None, None) => unreachable!("clap requires one"),
            };
            let witnesses = run_preset(&p, seed, budget, Some(max_hits))?;
            fs::create_dir_all(&out)?;
            let mut log = String::new();
            for w in &witnesses {
                let stem = format!("{}-{}", p.name, w.index);
                fs::write(out.join(format!("{stem}.table")), w.table.to_table_string())?;
                if let Some(c) = &w.cocycle {
                    fs::write(out.join(format!("{stem}.cocycle")), write_cocycle(c)?)?;
                }
                log.push_str(&format!("{stem} {}\n", w.verdict));
            }
            fs::write(out.join("verdicts.log"), &log)?;
            Ok(format!(
                "{}{} witness(es) from preset {} with seed {seed}\n",
                log,
                witnesses.len(),
                p.name
            ))
        }
        Command::Catalog { catalog, action } => {
            let cat = Catalog::new(&catalog);
            match action {
                CatalogAction::Add { table, source } => {
                    let q = LoopTable::parse(&read(&table)?)?;
                    let tag = source.unwrap_or_else(|| {
                        table
                            .file_name()
                            .map(|s| s.to_string_lossy().into_owned())
                            .unwrap_or_default()
                    });
                    let rec = CatalogRecord::for_loop(&q, &tag)?;
                    let added = cat.add(&rec)?;
                    let verb = if added { "added" } else { "present" };
                    Ok(format!("{verb} {:016x}\n", rec.fingerprint))
                }
                CatalogAction::Query { filters } => {
                    let filters = filters
                        .iter()
                        .map(|f| Filter::parse(f))
                        .collect::<Result<Vec<_>, _>>()?;
                    Ok(cat
                        .query(&filters)?
                        .iter()
                        .map(|r| format!("{r}\n"))
                        .collect())
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
