//! Command-line front end: translation of intuitionistic problems,
//! proving, proof checking, Petri-net workflows, library generation and
//! benchmarking.
//!
//! Exit codes: 0 success (for `prove`: provable), 1 not provable /
//! invalid proof, 2 verdict unknown, 64 usage errors, 65 data or I/O
//! errors. Human-readable output goes to stderr; machine output (files,
//! reports, markings) goes to stdout or the requested paths.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};

use illtp::bench::{
    emit_report, render_latex_proof, run_suite, suite_from_dir, GroupBy, ReportFormat, Verdict,
};
use illtp::format::iltp::parse_il_problem;
use illtp::format::{parse_problem, serialize_problem, Problem, ProblemStatus};
use illtp::illf::{check_proof_detailed, prove, ProofTree, ProveResult, SearchLimits};
use illtp::kleene::{generate_library, kleene_corpus};
use illtp::oracle::{prove_il, ILProofResult};
use illtp::petri::pnml::parse_pnml;
use illtp::petri::{encode_reachability, simulate, ReachProblem};
use illtp::translate::{trans_sequent, TranslationKind};

#[derive(Parser)]
#[command(name = "illtp", version, about = "Intuitionistic linear logic toolkit")]
struct Cli {
    /// TOML file providing defaults for the limit and worker flags.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Translate an intuitionistic (TPTP-style) problem file.
    Translate {
        /// Translation to apply.
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Input problem in intuitionistic fof syntax.
        input: PathBuf,
        /// Output problem file.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Decide a problem file.
    Prove {
        /// Logic to use: the linear prover or the intuitionistic oracle.
        #[arg(long, value_enum, default_value_t = LogicArg::Ill)]
        logic: LogicArg,
        file: PathBuf,
        #[command(flatten)]
        limits: LimitArgs,
        /// Write the proof object as JSON.
        #[arg(long, value_name = "FILE")]
        proof_out: Option<PathBuf>,
        /// Write a LaTeX rendering of the proof (linear logic only).
        #[arg(long, value_name = "FILE")]
        latex: Option<PathBuf>,
    },
    /// Verify a proof object against a problem file.
    Check {
        proof: PathBuf,
        problem: PathBuf,
    },
    /// Run the token game on a PNML net.
    PetriSim {
        pnml: PathBuf,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Encode reachability problems obtained by simulation.
    PetriEncode {
        pnml: PathBuf,
        /// Step counts, e.g. 1,5,10,20,50,100.
        #[arg(long, value_delimiter = ',', default_values_t = [1usize, 5, 10, 20, 50, 100])]
        steps: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output directory.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Generate the built-in problem library.
    Corpus {
        /// Library to generate (only `kleene`).
        set: String,
        /// Output directory.
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Prove every problem in a directory and report statistics.
    Bench {
        dir: PathBuf,
        #[command(flatten)]
        limits: LimitArgs,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long, value_enum, default_value_t = GroupByArg::CategoryTranslation)]
        group_by: GroupByArg,
        #[arg(long, value_enum, default_value_t = ReportArg::Csv)]
        report: ReportArg,
        /// Report file (stdout when absent).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Mult,
    Cbn,
    Cbv,
    #[value(name = "01")]
    ZeroOne,
}

impl From<KindArg> for TranslationKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Mult => TranslationKind::Mult,
            KindArg::Cbn => TranslationKind::CallByName,
            KindArg::Cbv => TranslationKind::CallByValue,
            KindArg::ZeroOne => TranslationKind::ZeroOne,
        }
    }
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum LogicArg {
    Il,
    Ill,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupByArg {
    Category,
    Translation,
    CategoryTranslation,
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportArg {
    Csv,
    Latex,
}

#[derive(Args, Clone)]
struct LimitArgs {
    /// Wall-clock budget per problem, in milliseconds.
    #[arg(long)]
    timeout_ms: Option<u64>,
    /// Maximum decide nesting depth.
    #[arg(long)]
    max_depth: Option<usize>,
    /// Focus budget per classical formula per branch.
    #[arg(long)]
    decide_bound: Option<u32>,
    /// Global decide budget (wall-clock independent).
    #[arg(long)]
    max_decides: Option<u64>,
    /// Disable the classical-context saturation heuristics.
    #[arg(long)]
    no_saturate: bool,
}

/// Optional config file; keys mirror the flags.
#[derive(Default, serde::Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    timeout_ms: Option<u64>,
    max_depth: Option<usize>,
    decide_bound: Option<u32>,
    max_decides: Option<u64>,
    saturate: Option<bool>,
    workers: Option<usize>,
}

impl ConfigFile {
    fn load(path: Option<&Path>) -> Result<ConfigFile> {
        match path {
            None => Ok(ConfigFile::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .with_context(|| format!("reading config {}", p.display()))?;
                toml::from_str(&text).with_context(|| format!("parsing config {}", p.display()))
            }
        }
    }
}

fn build_limits(args: &LimitArgs, config: &ConfigFile) -> SearchLimits {
    let defaults = SearchLimits::default();
    SearchLimits {
        timeout: args
            .timeout_ms
            .or(config.timeout_ms)
            .map(Duration::from_millis),
        max_depth: args.max_depth.or(config.max_depth).unwrap_or(defaults.max_depth),
        decide_bound: args
            .decide_bound
            .or(config.decide_bound)
            .unwrap_or(defaults.decide_bound),
        max_decides: args.max_decides.or(config.max_decides),
        saturate: if args.no_saturate {
            false
        } else {
            config.saturate.unwrap_or(defaults.saturate)
        },
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 64,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(65)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let config = ConfigFile::load(cli.config.as_deref())?;
    match cli.command {
        Command::Translate { kind, input, output } => cmd_translate(kind.into(), &input, &output),
        Command::Prove {
            logic,
            file,
            limits,
            proof_out,
            latex,
        } => cmd_prove(logic, &file, &build_limits(&limits, &config), proof_out, latex),
        Command::Check { proof, problem } => cmd_check(&proof, &problem),
        Command::PetriSim { pnml, steps, seed } => cmd_petri_sim(&pnml, steps, seed),
        Command::PetriEncode {
            pnml,
            steps,
            seed,
            output,
        } => cmd_petri_encode(&pnml, &steps, seed, &output),
        Command::Corpus { set, output } => cmd_corpus(&set, &output),
        Command::Bench {
            dir,
            limits,
            workers,
            group_by,
            report,
            output,
        } => cmd_bench(
            &dir,
            &build_limits(&limits, &config),
            workers.or(config.workers).unwrap_or(1),
            group_by,
            report,
            output,
        ),
    }
}

fn cmd_translate(kind: TranslationKind, input: &Path, output: &Path) -> Result<ExitCode> {
    let text = std::fs::read_to_string(input)
        .with_context(|| format!("reading {}", input.display()))?;
    let il = parse_il_problem(&text).with_context(|| format!("parsing {}", input.display()))?;
    let sequent = trans_sequent(&il.to_sequent(), kind);

    let stem = input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| il.name.clone());
    let name = format!("{stem}-{}", kind.token());
    let axioms = sequent
        .antecedent
        .iter()
        .enumerate()
        .map(|(i, f)| (format!("a{}", i + 1), f.clone()))
        .collect();
    let conjecture = (
        "c".to_string(),
        sequent.succedent.clone().expect("translations keep a succedent"),
    );
    let mut problem = Problem::new(&name, axioms, conjecture);
    problem.push_comment(format!("Problem : {name}"));
    // Status carries over only for the provability-preserving translations.
    let status = match (kind.preserves_provability(), il.status()) {
        (true, s) => s,
        (false, _) => ProblemStatus::Unknown,
    };
    problem.set_status(status);

    std::fs::write(output, serialize_problem(&problem))
        .with_context(|| format!("writing {}", output.display()))?;
    eprintln!("translated {} [{}] -> {}", input.display(), kind, output.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_prove(
    logic: LogicArg,
    file: &Path,
    limits: &SearchLimits,
    proof_out: Option<PathBuf>,
    latex: Option<PathBuf>,
) -> Result<ExitCode> {
    let text =
        std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;

    match logic {
        LogicArg::Il => {
            if latex.is_some() {
                bail!("--latex is only available for --logic ill");
            }
            let problem = parse_il_problem(&text)
                .with_context(|| format!("parsing {}", file.display()))?;
            let started = std::time::Instant::now();
            let result = prove_il(&problem.to_sequent());
            let elapsed = started.elapsed();
            match result {
                ILProofResult::Provable(tree) => {
                    eprintln!("Provable ({} nodes, {elapsed:?})", tree.len());
                    if let Some(path) = proof_out {
                        write_json(&path, &tree)?;
                    }
                    Ok(ExitCode::SUCCESS)
                }
                ILProofResult::NotProvable => {
                    eprintln!("NotProvable ({elapsed:?})");
                    Ok(ExitCode::from(1))
                }
            }
        }
        LogicArg::Ill => {
            let problem =
                parse_problem(&text).with_context(|| format!("parsing {}", file.display()))?;
            let sequent = problem.to_sequent();
            let result = prove(&sequent, limits)?;
            match result {
                ProveResult::Provable(tree, elapsed) => {
                    if let Err(e) = check_proof_detailed(&tree, &sequent) {
                        bail!("internal error: emitted proof failed verification: {e}");
                    }
                    eprintln!("Provable ({} nodes, {elapsed:?}, proof verified)", tree.len());
                    if let Some(path) = proof_out {
                        write_json(&path, &tree)?;
                    }
                    if let Some(path) = latex {
                        write_latex_document(&path, &tree)?;
                    }
                    Ok(ExitCode::SUCCESS)
                }
                ProveResult::NotProvable(elapsed) => {
                    eprintln!("NotProvable ({elapsed:?})");
                    Ok(ExitCode::from(1))
                }
                ProveResult::Unknown(reason, elapsed) => {
                    eprintln!("Unknown: {reason:?} ({elapsed:?})");
                    Ok(ExitCode::from(2))
                }
            }
        }
    }
}

fn write_json<T: serde::Serialize>(path: &Path, value: &T) -> Result<()> {
    let json = serde_json::to_string_pretty(value)?;
    std::fs::write(path, json).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn write_latex_document(path: &Path, tree: &ProofTree) -> Result<()> {
    let body = render_latex_proof(tree);
    let doc = format!(
        "\\documentclass{{article}}\n\\usepackage{{proof}}\n\\usepackage{{xcolor}}\n\
         \\usepackage[margin=1cm,landscape]{{geometry}}\n\\begin{{document}}\n\
         \\[\n{body}\n\\]\n\\end{{document}}\n"
    );
    std::fs::write(path, doc).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn cmd_check(proof: &Path, problem: &Path) -> Result<ExitCode> {
    let tree: ProofTree = serde_json::from_str(
        &std::fs::read_to_string(proof)
            .with_context(|| format!("reading {}", proof.display()))?,
    )
    .with_context(|| format!("parsing proof {}", proof.display()))?;
    let text = std::fs::read_to_string(problem)
        .with_context(|| format!("reading {}", problem.display()))?;
    let parsed =
        parse_problem(&text).with_context(|| format!("parsing {}", problem.display()))?;
    match check_proof_detailed(&tree, &parsed.to_sequent()) {
        Ok(()) => {
            eprintln!("proof is valid");
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => {
            eprintln!("proof is INVALID: {e}");
            Ok(ExitCode::from(1))
        }
    }
}

fn cmd_petri_sim(pnml: &Path, steps: usize, seed: u64) -> Result<ExitCode> {
    let xml =
        std::fs::read_to_string(pnml).with_context(|| format!("reading {}", pnml.display()))?;
    let (net, m0) = parse_pnml(&xml)?;
    let outcome = simulate(&net, &m0, steps, seed);
    eprintln!(
        "{}: {} steps{}, marking size {}",
        net.name,
        outcome.steps_taken,
        if outcome.deadlocked { " (deadlock)" } else { "" },
        outcome.marking.len()
    );
    println!("{}", outcome.marking);
    Ok(ExitCode::SUCCESS)
}

fn cmd_petri_encode(pnml: &Path, steps: &[usize], seed: u64, outdir: &Path) -> Result<ExitCode> {
    let xml =
        std::fs::read_to_string(pnml).with_context(|| format!("reading {}", pnml.display()))?;
    let (net, m0) = parse_pnml(&xml)?;
    std::fs::create_dir_all(outdir)
        .with_context(|| format!("creating {}", outdir.display()))?;

    let mut written = 0usize;
    for &n in steps {
        let outcome = simulate(&net, &m0, n, seed);
        let reach = ReachProblem {
            net: net.clone(),
            from: m0.clone(),
            to: outcome.marking.clone(),
        };
        let name = format!("{}-{}-{}", net.name, n, seed);
        let mut problem = encode_reachability(&reach);
        problem.name = name.clone();
        problem.push_comment(format!("Problem : {name}"));
        problem.push_comment(format!(
            "Steps : requested {n}, fired {}{}",
            outcome.steps_taken,
            if outcome.deadlocked { " (deadlock)" } else { "" }
        ));
        problem.push_comment(format!("Seed : {seed}"));
        problem.push_comment(format!("Final marking : {}", outcome.marking));
        problem.set_status(ProblemStatus::Theorem); // simulated markings are reachable
        let path = outdir.join(format!("{name}.p"));
        std::fs::write(&path, serialize_problem(&problem))
            .with_context(|| format!("writing {}", path.display()))?;
        eprintln!("wrote {}", path.display());
        written += 1;
        // once the net is stuck, longer walks repeat the same problem
        if outcome.deadlocked && outcome.steps_taken < n {
            break;
        }
    }
    eprintln!("{written} problem(s) written to {}", outdir.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_corpus(set: &str, outdir: &Path) -> Result<ExitCode> {
    if set != "kleene" {
        bail!("unknown corpus `{set}` (available: kleene)");
    }
    std::fs::create_dir_all(outdir)
        .with_context(|| format!("creating {}", outdir.display()))?;
    let library = generate_library(&kleene_corpus(), &TranslationKind::ALL);
    for problem in &library {
        let path = outdir.join(format!("{}.p", problem.name));
        std::fs::write(&path, serialize_problem(problem))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    eprintln!("{} problems written to {}", library.len(), outdir.display());
    Ok(ExitCode::SUCCESS)
}

fn cmd_bench(
    dir: &Path,
    limits: &SearchLimits,
    workers: usize,
    group_by: GroupByArg,
    report: ReportArg,
    output: Option<PathBuf>,
) -> Result<ExitCode> {
    let problems =
        suite_from_dir(dir).with_context(|| format!("reading {}", dir.display()))?;
    eprintln!("running {} problems with {} worker(s)", problems.len(), workers);
    let records = run_suite(&problems, limits, workers);
    for r in &records {
        eprintln!("{:<28} {:?} {} ms", r.problem, r.verdict, r.elapsed_ms);
    }
    let group_by = match group_by {
        GroupByArg::Category => GroupBy::Category,
        GroupByArg::Translation => GroupBy::Translation,
        GroupByArg::CategoryTranslation => GroupBy::CategoryTranslation,
    };
    let stats = illtp::bench::summarize(&records, group_by);
    for (name, s) in &stats {
        assert!(s.partition_holds(), "partition invariant broken for {name}");
    }
    let text = emit_report(
        &stats,
        match report {
            ReportArg::Csv => ReportFormat::Csv,
            ReportArg::Latex => ReportFormat::Latex,
        },
    );
    match output {
        Some(path) => std::fs::write(&path, text)
            .with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    let solved = records
        .iter()
        .filter(|r| matches!(r.verdict, Verdict::Provable))
        .count();
    eprintln!("{solved}/{} provable", records.len());
    Ok(ExitCode::SUCCESS)
}
