use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use cxtcat::disco::{interpret, Lexicon, ProtoType};
use cxtcat::hom::enumerate_hom;
use cxtcat::io::{lattice_to_dot, lattice_to_json, lattice_to_table, parse_cxt, write_cxt};
use cxtcat::lawcheck::{run_suite_with, GenConfig, Kernel, LawReport, Mutation, SUITES};
use cxtcat::{ConceptLattice, Error, FormalContext, Limits, TensorKind};
use serde_json::json;

/// Formal contexts, their morphisms and tensors, checked by brute force.
#[derive(Parser, Debug)]
#[command(name = "cxtcat", version)]
struct CliConfig {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the concept lattice of a context.
    Concepts {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Tensor two contexts and write the result in Burmeister format.
    Tensor {
        #[arg(long, value_enum)]
        kind: Kind,
        a: PathBuf,
        b: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Swap objects and attributes.
    Dual {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Count or list the morphisms between two contexts.
    #[command(group(ArgGroup::new("mode").required(true).args(["count", "list"])))]
    Hom {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        count: bool,
        /// One morphism per line, as JSON.
        #[arg(long)]
        list: bool,
    },
    /// Run law suites; exits 1 if any law fails.
    Laws {
        /// A suite name, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long)]
        max_objects: Option<usize>,
        #[arg(long)]
        max_attributes: Option<usize>,
        #[arg(long)]
        max_lattice: Option<usize>,
        /// Run against a deliberately broken kernel.
        #[arg(long)]
        mutation: Option<Mutation>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Table)]
        format: ReportFormat,
    },
    /// Reduce a sentence and print its meaning.
    Disco {
        #[arg(long)]
        lexicon: PathBuf,
        #[arg(long)]
        sentence: String,
        #[arg(long, default_value = "s")]
        target: String,
        #[arg(long, value_enum, default_value_t = ReportFormat::Table)]
        format: ReportFormat,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Table,
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ReportFormat {
    Table,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Kind {
    Concept,
    Lattice,
}

/// A failed command: the message for stderr and the exit code.
struct Failure(String, u8);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CapExceeded(_) => 3,
            Error::Lawcheck(_) | Error::Io(_) => 2,
            _ => 1,
        };
        Failure(e.to_string(), code)
    }
}

fn main() -> ExitCode {
    let cli = CliConfig::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(msg, code)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn check_inputs(paths: &[&Path]) -> Result<(), Failure> {
    for p in paths {
        if !p.exists() {
            return Err(Failure(format!("{}: no such file", p.display()), 2));
        }
    }
    Ok(())
}

fn read_context(path: &Path) -> Result<FormalContext, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display()), 2))?;
    parse_cxt(&text).map_err(|e| Failure(format!("{}: {e}", path.display()), 1))
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(p) => fs::write(p, text).map_err(|e| Failure(format!("{}: {e}", p.display()), 2)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cmd: Command) -> Result<u8, Failure> {
    let limits = Limits::from_env()?;
    match cmd {
        Command::Concepts { file, format } => {
            check_inputs(&[&file])?;
            let k = read_context(&file)?;
            limits.check_enumerable(&k)?;
            let l = ConceptLattice::of(&k);
            let text = match format {
                Format::Table => lattice_to_table(&k, &l),
                Format::Json => lattice_to_json(&k, &l) + "\n",
                Format::Dot => lattice_to_dot(&k, &l),
            };
            emit(None, &text)?;
        }
        Command::Tensor { kind, a, b, output } => {
            check_inputs(&[&a, &b])?;
            let (k1, k2) = (read_context(&a)?, read_context(&b)?);
            let kind = match kind {
                Kind::Concept => {
                    limits.check_concept_factor(&k1)?;
                    limits.check_concept_factor(&k2)?;
                    TensorKind::Concept
                }
                Kind::Lattice => {
                    limits.check_box_factor(&k1)?;
                    limits.check_box_factor(&k2)?;
                    TensorKind::Lattice
                }
            };
            let t = cxtcat::monoidal::tensor(kind, &k1, &k2, limits.max_hom)?;
            emit(output.as_deref(), &write_cxt(&t))?;
        }
        Command::Dual { file, output } => {
            check_inputs(&[&file])?;
            emit(output.as_deref(), &write_cxt(&read_context(&file)?.dual()))?;
        }
        Command::Hom { a, b, count, list: _ } => {
            check_inputs(&[&a, &b])?;
            let (k1, k2) = (Arc::new(read_context(&a)?), Arc::new(read_context(&b)?));
            limits.check_enumerable(&k1)?;
            limits.check_enumerable(&k2)?;
            let homs = enumerate_hom(&k1, &k2, limits.max_hom)?;
            if count {
                println!("{}", homs.len());
            } else {
                for r in &homs {
                    println!("{}", serde_json::to_string(&r.to_json()).expect("morphism json"));
                }
            }
        }
        Command::Laws { suite, seed, trials, max_objects, max_attributes, max_lattice, mutation, format } => {
            let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite.as_str()] };
            let mut cfg = GenConfig::default();
            cfg.seed = seed.unwrap_or(cfg.seed);
            cfg.trials = trials.unwrap_or(cfg.trials);
            cfg.max_objects = max_objects.unwrap_or(cfg.max_objects);
            cfg.max_attributes = max_attributes.unwrap_or(cfg.max_attributes);
            cfg.max_lattice = max_lattice.unwrap_or(cfg.max_lattice);
            let kernel = mutation.map_or_else(Kernel::sound, Kernel::mutated);
            let reports = names.iter().map(|n| run_suite_with(n, &cfg, &kernel)).collect::<Result<Vec<LawReport>, _>>()?;
            match format {
                ReportFormat::Table => {
                    for r in &reports {
                        println!("{r}");
                    }
                }
                ReportFormat::Json if reports.len() == 1 => println!("{}", reports[0].to_json()),
                ReportFormat::Json => println!("{}", serde_json::to_string_pretty(&reports).expect("report json")),
            }
            return Ok(if reports.iter().all(LawReport::all_passed) { 0 } else { 1 });
        }
        Command::Disco { lexicon, sentence, target, format } => {
            check_inputs(&[&lexicon])?;
            let lex = Lexicon::load(&lexicon)?;
            let target: ProtoType = target.parse()?;
            let words: Vec<&str> = sentence.split_whitespace().collect();
            let meaning = interpret(&lex, &words, &target)?;
            let extent = meaning.state.labels();
            // a one-factor meaning is a concept and also has an intent
            let intent = match meaning.concept() {
                Ok(c) => Some(c.intent().labels(&meaning.state.factors()[0]).into_iter().map(String::from).collect::<Vec<_>>()),
                Err(_) => None,
            };
            match format {
                ReportFormat::Table => {
                    println!("{}", meaning.witness);
                    println!("extent: {{{}}}", extent.join(", "));
                    if let Some(intent) = &intent {
                        println!("intent: {{{}}}", intent.join(", "));
                    }
                }
                ReportFormat::Json => {
                    let out = json!({
                        "sentence": words,
                        "target": target.to_string(),
                        "witness": meaning.witness,
                        "extent": extent,
                        "intent": intent,
                    });
                    println!("{}", serde_json::to_string_pretty(&out).expect("meaning json"));
                }
            }
        }
    }
    Ok(0)
}
