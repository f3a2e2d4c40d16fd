//! Command-line front end for the prefmodels library.
//!
//! Every subcommand reads plain text files, prints line-oriented output
//! on stdout, and signals its verdict through the exit code: 0 for a
//! positive answer (entailed, lawful, verified, nonempty listing), 1
//! for a negative one, 2 for unusable input such as a parse error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use prefmodels::{
    check_properties, default_entails, ideal_worlds, models_of, models_of_formula, parse_formula,
    synthesize_structure, Alphabet, DefaultTheory, DefaultsError, Formula, MinimizationMode,
    Model, ModelSet, ObligationSet, ParseError, PreferentialStructure, PropertyCheck,
    SelectionFunction, SynthesisOutcome, Theory, ViolationWitness,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
enum Format {
    /// Human-readable lines
    #[default]
    Plain,
    /// Tab-separated rows with a leading tag column
    Tsv,
}

#[derive(Parser)]
#[command(name = "prefmodels", version, about = "Classical and minimal-model reasoning over small propositional theories")]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the models of a theory (exit 1 if it is unsatisfiable)
    Models {
        /// Theory file, one formula per line
        #[arg(short = 't', long, value_name = "FILE")]
        theory: PathBuf,
    },
    /// Decide whether a theory classically entails a query
    Entail {
        /// Theory file, one formula per line
        #[arg(short = 't', long, value_name = "FILE")]
        theory: PathBuf,
        /// Query formula
        #[arg(short = 'q', long, value_name = "FORMULA")]
        query: String,
    },
    /// Decide preferential entailment and list the minimal models
    NmlEntail {
        /// Theory file, one formula per line
        #[arg(short = 't', long, value_name = "FILE")]
        theory: PathBuf,
        /// Structure file with copy and preference lines
        #[arg(short = 's', long, value_name = "FILE")]
        structure: PathBuf,
        /// Query formula
        #[arg(short = 'q', long, value_name = "FORMULA")]
        query: String,
    },
    /// Decide whether a default theory entails a query
    Defaults {
        /// Defaults file with rule and fact lines
        #[arg(short = 'd', long, value_name = "FILE")]
        defaults: PathBuf,
        /// Query formula
        #[arg(short = 'q', long, value_name = "FORMULA")]
        query: String,
        /// Extra context theory joined with the facts
        #[arg(short = 't', long = "context", value_name = "FILE")]
        context: Option<PathBuf>,
    },
    /// List the ideal worlds under a set of obligations, or test a query there
    Deontic {
        /// Obligations file, `ought:` lines
        #[arg(short = 'o', long, value_name = "FILE")]
        obligations: PathBuf,
        /// Facts file, one formula per line
        #[arg(short = 't', long, value_name = "FILE")]
        theory: PathBuf,
        /// Query formula; omit to list the ideal worlds instead
        #[arg(short = 'q', long, value_name = "FORMULA")]
        query: Option<String>,
        /// Minimize how many obligations are violated, not which
        #[arg(long)]
        count: bool,
    },
    /// Check a selection table against the two selection laws
    CheckMu {
        /// Selection table file
        #[arg(short = 'm', long, value_name = "FILE")]
        map: PathBuf,
    },
    /// Build a preferential structure that realizes a selection table
    Synthesize {
        /// Selection table file over a full powerset domain
        #[arg(short = 'm', long, value_name = "FILE")]
        map: PathBuf,
        /// Write the synthesized structure to this file
        #[arg(long, value_name = "FILE")]
        emit: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    match &cli.command {
        Command::Models { theory } => cmd_models(theory, cli.format),
        Command::Entail { theory, query } => cmd_entail(theory, query, cli.format),
        Command::NmlEntail { theory, structure, query } => {
            cmd_nml_entail(theory, structure, query, cli.format)
        }
        Command::Defaults { defaults, query, context } => {
            cmd_defaults(defaults, query, context.as_deref(), cli.format)
        }
        Command::Deontic { obligations, theory, query, count } => {
            cmd_deontic(obligations, theory, query.as_deref(), *count, cli.format)
        }
        Command::CheckMu { map } => cmd_check_mu(map, cli.format),
        Command::Synthesize { map, emit } => cmd_synthesize(map, emit.as_deref(), cli.format),
    }
}

fn cmd_models(theory: &Path, format: Format) -> Result<ExitCode, String> {
    let t = load_theory(theory)?;
    let alphabet = covering_alphabet(&t, &[])?;
    let models = models_of(&alphabet, &t);
    print_model_listing(&alphabet, &models, "model", format);
    Ok(verdict(!models.is_empty()))
}

fn cmd_entail(theory: &Path, query: &str, format: Format) -> Result<ExitCode, String> {
    let t = load_theory(theory)?;
    let q = parse_query(query)?;
    let alphabet = covering_alphabet(&t, &[q.clone()])?;
    let yes = models_of(&alphabet, &t).is_subset(&models_of_formula(&alphabet, &q));
    print_verdict_line("entails", yes, format);
    Ok(verdict(yes))
}

fn cmd_nml_entail(
    theory: &Path,
    structure: &Path,
    query: &str,
    format: Format,
) -> Result<ExitCode, String> {
    let t = load_theory(theory)?;
    let q = parse_query(query)?;
    let alphabet = covering_alphabet(&t, &[q.clone()])?;
    let text = read_file(structure)?;
    let s = PreferentialStructure::parse_document(&text, alphabet.model_count())
        .map_err(|e| format!("{}:{}: {}", structure.display(), e.line, e.message))?;
    let minimal = s.mu(&models_of(&alphabet, &t));
    let yes = minimal.is_subset(&models_of_formula(&alphabet, &q));
    print_verdict_line("entails", yes, format);
    print_model_listing(&alphabet, &minimal, "minimal", format);
    Ok(verdict(yes))
}

fn cmd_defaults(
    defaults: &Path,
    query: &str,
    context: Option<&Path>,
    format: Format,
) -> Result<ExitCode, String> {
    let text = read_file(defaults)?;
    let dt = DefaultTheory::parse_document(&text).map_err(|e| defaults_error(defaults, e))?;
    let ctx = match context {
        Some(path) => load_theory(path)?,
        None => Theory::empty(),
    };
    let q = parse_query(query)?;
    let yes = default_entails(&dt, &ctx, &q).map_err(|e| e.to_string())?;
    print_verdict_line("entails", yes, format);
    Ok(verdict(yes))
}

fn cmd_deontic(
    obligations: &Path,
    theory: &Path,
    query: Option<&str>,
    count: bool,
    format: Format,
) -> Result<ExitCode, String> {
    let text = read_file(obligations)?;
    let obs = ObligationSet::parse_document(&text).map_err(|e| deontic_error(obligations, e))?;
    let facts = load_theory(theory)?;
    let q = query.map(parse_query).transpose()?;
    let mut formulas: Vec<Formula> = facts.formulas().to_vec();
    formulas.extend(obs.obligations().iter().cloned());
    formulas.extend(q.clone());
    let alphabet = covering_alphabet(&Theory::new(formulas), &[])?;
    let mode = if count { MinimizationMode::Count } else { MinimizationMode::Subset };
    let ideal = ideal_worlds(&alphabet, &facts, &obs, mode);
    match q {
        Some(q) => {
            let yes = ideal.is_subset(&models_of_formula(&alphabet, &q));
            print_verdict_line("ought", yes, format);
            Ok(verdict(yes))
        }
        None => {
            print_model_listing(&alphabet, &ideal, "ideal", format);
            Ok(verdict(!ideal.is_empty()))
        }
    }
}

fn cmd_check_mu(map: &Path, format: Format) -> Result<ExitCode, String> {
    let sel = load_selection(map)?;
    match check_properties(&sel).map_err(|e| format!("{}: {e}", map.display()))? {
        PropertyCheck::Satisfied => {
            match format {
                Format::Plain => println!("OK"),
                Format::Tsv => println!("check\tok"),
            }
            Ok(ExitCode::SUCCESS)
        }
        PropertyCheck::Violated(witness) => {
            print_witness(&witness, format);
            Ok(ExitCode::from(1))
        }
    }
}

fn cmd_synthesize(map: &Path, emit: Option<&Path>, format: Format) -> Result<ExitCode, String> {
    let sel = load_selection(map)?;
    match synthesize_structure(&sel).map_err(|e| format!("{}: {e}", map.display()))? {
        SynthesisOutcome::Rejected(witness) => {
            print_witness(&witness, format);
            Ok(ExitCode::from(1))
        }
        SynthesisOutcome::Synthesized(report) => {
            if !report.verified {
                match format {
                    Format::Plain => println!("NOT VERIFIED"),
                    Format::Tsv => println!("verified\tfalse"),
                }
                return Ok(ExitCode::from(1));
            }
            match format {
                Format::Plain => println!("VERIFIED"),
                Format::Tsv => println!("verified\ttrue"),
            }
            for (model, n) in &report.copies_per_model {
                match format {
                    Format::Plain => {
                        let noun = if *n == 1 { "copy" } else { "copies" };
                        println!("model {}: {} {}", model.index(), n, noun);
                    }
                    Format::Tsv => println!("copies\t{}\t{}", model.index(), n),
                }
            }
            if let Some(out) = emit {
                fs::write(out, report.structure.render_document())
                    .map_err(|e| format!("cannot write `{}`: {e}", out.display()))?;
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// 0 for a positive answer, 1 for a negative one.
fn verdict(yes: bool) -> ExitCode {
    if yes {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn print_verdict_line(tag: &str, yes: bool, format: Format) {
    match format {
        Format::Plain => println!("{}", if yes { "YES" } else { "NO" }),
        Format::Tsv => println!("{tag}\t{}", if yes { "yes" } else { "no" }),
    }
}

fn print_model_listing(alphabet: &Alphabet, models: &ModelSet, tag: &str, format: Format) {
    for m in models.iter() {
        match format {
            Format::Plain => println!("{}", alphabet.format_model(m)),
            Format::Tsv => {
                println!("{tag}\t{}\t{}\t{}", m.index(), model_bits(alphabet, m), model_atoms(alphabet, m))
            }
        }
    }
}

fn model_bits(alphabet: &Alphabet, m: Model) -> String {
    (0..alphabet.len()).map(|i| if m.truth(i) { '1' } else { '0' }).collect()
}

fn model_atoms(alphabet: &Alphabet, m: Model) -> String {
    alphabet
        .atoms()
        .enumerate()
        .map(|(i, name)| if m.truth(i) { name.to_string() } else { format!("!{name}") })
        .collect::<Vec<_>>()
        .join(" ")
}

fn print_witness(witness: &ViolationWitness, format: Format) {
    match format {
        Format::Plain => println!("{witness}"),
        Format::Tsv => match witness {
            ViolationWitness::Subset { x, m } => {
                println!("violation\tsubset\t{x}\t{}", m.index())
            }
            ViolationWitness::Pr { x, x_prime, m } => {
                println!("violation\tpr\t{x}\t{x_prime}\t{}", m.index())
            }
        },
    }
}

fn read_file(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read `{}`: {e}", path.display()))
}

fn load_theory(path: &Path) -> Result<Theory, String> {
    Theory::parse_document(&read_file(path)?).map_err(|e| parse_error(path, &e))
}

fn load_selection(path: &Path) -> Result<SelectionFunction, String> {
    SelectionFunction::parse_document(&read_file(path)?)
        .map_err(|e| format!("{}:{}: {}", path.display(), e.line, e.message))
}

fn parse_query(text: &str) -> Result<Formula, String> {
    parse_formula(text).map_err(|e| format!("query:{}:{}: {}", e.line, e.column, e.kind))
}

fn parse_error(path: &Path, e: &ParseError) -> String {
    format!("{}:{}:{}: {}", path.display(), e.line, e.column, e.kind)
}

fn defaults_error(path: &Path, e: DefaultsError) -> String {
    match e {
        DefaultsError::Parse(p) => parse_error(path, &p),
        DefaultsError::File(f) => format!("{}:{}: {}", path.display(), f.line, f.message),
        other => format!("{}: {}", path.display(), other),
    }
}

fn deontic_error(path: &Path, e: prefmodels::DeonticError) -> String {
    match e {
        prefmodels::DeonticError::Parse(p) => parse_error(path, &p),
        prefmodels::DeonticError::File(f) => format!("{}:{}: {}", path.display(), f.line, f.message),
        other => format!("{}: {}", path.display(), other),
    }
}

fn covering_alphabet(t: &Theory, extra_formulas: &[Formula]) -> Result<Alphabet, String> {
    Alphabet::covering(t.formulas().iter().chain(extra_formulas), std::iter::empty::<String>())
        .map_err(|e| e.to_string())
}
