//! Command-line front end: solve, synthesize, verify, translate, check duality
//! and cofinality, fuzz, and run the built-in corpus.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 violations or unmet
//! expectations, 3 search budget exhausted.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use selection_games::duality::{check_duality, DualityError};
use selection_games::game::{GameSpec, Strategy, Winner};
use selection_games::harness::{corpus, corpus_pairs, fuzz, Expect, FuzzProfile, Scenario, ScenarioPair, Suite};
use selection_games::orders::{brute_tukey_oracle, check_tukey_map, cofinal_witness, relative_cofinality, RelPair, ORACLE_LIMIT};
use selection_games::solver::{
    find_markov_two, find_predetermined_one, solve, verify, SolverError, DEFAULT_BUDGET, DEFAULT_EXHIBITS,
};
use selection_games::transforms::{apply_translation, check_tr_axioms, Direction, TranslationPack};

// Writes to stdout; a closed pipe (`selgame corpus list | head`) ends the
// process quietly instead of panicking.
macro_rules! out {
    ($($arg:tt)*) => {
        emit(format_args!($($arg)*))
    };
}

macro_rules! outln {
    () => {
        emit(format_args!("\n"))
    };
    ($($arg:tt)*) => {
        emit(format_args!("{}\n", format_args!($($arg)*)))
    };
}

fn emit(args: std::fmt::Arguments) {
    use std::io::Write;
    if let Err(e) = std::io::stdout().write_fmt(args) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        panic!("writing to stdout: {e}");
    }
}

const OK: u8 = 0;
const USAGE: u8 = 1;
const VIOLATION: u8 = 2;
const BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "selgame", version, about = "Finite selection games: solve, synthesize, verify, fuzz")]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Node budget for the Markov strategy search.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Cap on listed counter-plays.
    #[arg(long, global = true, default_value_t = DEFAULT_EXHIBITS)]
    max_exhibits: usize,
    /// Override the scenario horizon.
    #[arg(long, global = true)]
    horizon: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SynthClass {
    PreOne,
    MarkovTwo,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a scenario by backward induction.
    Solve { scenario: PathBuf },
    /// Search for a restricted winning strategy.
    Synth {
        class: SynthClass,
        scenario: PathBuf,
        /// Write the strategy here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a strategy against every adversary line.
    Verify { scenario: PathBuf, strategy: PathBuf },
    /// Compare the two games of a scenario pair.
    Duality { pair: PathBuf },
    /// Check a translation pack and transfer a strategy across it.
    Translate {
        pack: PathBuf,
        src: PathBuf,
        dst: PathBuf,
        #[arg(long)]
        direction: Direction,
        /// Input strategy; found by the solver when omitted.
        #[arg(long)]
        strategy: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Relative cofinality of a pair file, or a Tukey map check.
    Cofinality { file: PathBuf },
    /// Run seeded property suites.
    Fuzz {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Suites to run, comma separated; the asserting suites by default.
        #[arg(long, value_delimiter = ',')]
        suite: Vec<String>,
        /// Check instances one at a time.
        #[arg(long)]
        sequential: bool,
        /// Also write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The built-in scenarios.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// List scenario names.
    List,
    /// Solve every scenario and check its expectations.
    Run,
    /// Print one scenario (or scenario pair) file.
    Show { name: String },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(USAGE)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    serde_json::from_str(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_scenario(path: &Path) -> Result<Scenario> {
    Scenario::parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn build(sc: &Scenario, horizon: Option<usize>) -> Result<GameSpec> {
    sc.build(horizon).with_context(|| format!("building scenario {:?}", sc.name))
}

fn print_json(v: &serde_json::Value) {
    outln!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn write_out(path: &Option<PathBuf>, text: &str) -> Result<()> {
    if let Some(p) = path {
        fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
    }
    Ok(())
}

/// Expectations only apply at the scenario's own horizon.
fn expect_for(sc: &Scenario, horizon: Option<usize>) -> Expect {
    match horizon {
        Some(h) if h != sc.horizon => Expect::default(),
        _ => sc.expect(),
    }
}

fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Solve { scenario } => cmd_solve(cli, scenario),
        Command::Synth { class, scenario, out } => cmd_synth(cli, *class, scenario, out),
        Command::Verify { scenario, strategy } => cmd_verify(cli, scenario, strategy),
        Command::Duality { pair } => cmd_duality(cli, pair),
        Command::Translate {
            pack,
            src,
            dst,
            direction,
            strategy,
            out,
        } => cmd_translate(cli, pack, src, dst, *direction, strategy, out),
        Command::Cofinality { file } => cmd_cofinality(cli, file),
        Command::Fuzz {
            seed,
            count,
            suite,
            sequential,
            out,
        } => cmd_fuzz(cli, *seed, *count, suite, *sequential, out),
        Command::Corpus { action } => cmd_corpus(cli, action),
    }
}

fn cmd_solve(cli: &Cli, path: &Path) -> Result<u8> {
    let sc = load_scenario(path)?;
    let g = build(&sc, cli.horizon)?;
    let det = solve(&g);
    let want = expect_for(&sc, cli.horizon).winner;
    let met = want.is_none_or(|w| w == det.winner);
    if cli.json {
        print_json(&json!({
            "scenario": sc.name,
            "horizon": g.horizon(),
            "winner": det.winner,
            "witness": det.witness,
            "nodes_explored": det.nodes_explored,
            "memo_hits": det.memo_hits,
            "expected": want,
            "expectation_met": met,
        }));
    } else {
        outln!("{}: horizon {}, winner {}", sc.name, g.horizon(), det.winner);
        outln!("nodes {} memo hits {}", det.nodes_explored, det.memo_hits);
        if let Some(w) = want {
            outln!("expected {w}: {}", if met { "met" } else { "NOT MET" });
        }
    }
    Ok(if met { OK } else { VIOLATION })
}

fn cmd_synth(cli: &Cli, class: SynthClass, path: &Path, out: &Option<PathBuf>) -> Result<u8> {
    let sc = load_scenario(path)?;
    let g = build(&sc, cli.horizon)?;
    let expect = expect_for(&sc, cli.horizon);
    let (name, found, want) = match class {
        SynthClass::PreOne => ("pre_one", find_predetermined_one(&g), expect.pre_one),
        SynthClass::MarkovTwo => match find_markov_two(&g, cli.budget) {
            Ok(s) => ("markov_two", s, expect.markov_two),
            Err(SolverError::BudgetExceeded(n)) => {
                if cli.json {
                    print_json(&json!({ "scenario": sc.name, "class": "markov_two", "budget_exceeded": n }));
                } else {
                    outln!("{}: budget exhausted after {n} nodes", sc.name);
                }
                return Ok(BUDGET);
            }
            Err(e) => return Err(anyhow!(e)),
        },
    };
    let met = want.is_none_or(|w| w == found.is_some());
    if let Some(s) = &found {
        write_out(out, &serde_json::to_string_pretty(s)?)?;
    }
    if cli.json {
        print_json(&json!({
            "scenario": sc.name,
            "class": name,
            "found": found.is_some(),
            "strategy": found,
            "expected": want,
            "expectation_met": met,
        }));
    } else {
        match &found {
            Some(s) => outln!("{}: {name} found\n{}", sc.name, serde_json::to_string(s)?),
            None => outln!("{}: no {name} strategy", sc.name),
        }
        if let Some(w) = want {
            outln!("expected found={w}: {}", if met { "met" } else { "NOT MET" });
        }
    }
    Ok(if met { OK } else { VIOLATION })
}

fn cmd_verify(cli: &Cli, path: &Path, strategy: &Path) -> Result<u8> {
    let sc = load_scenario(path)?;
    let g = build(&sc, cli.horizon)?;
    let s: Strategy = load(strategy)?;
    let rep = verify(&g, &s, cli.max_exhibits)?;
    if cli.json {
        print_json(&serde_json::to_value(&rep)?);
    } else {
        outln!(
            "{}: {} strategy is {} ({} plays, {} counter-plays)",
            sc.name,
            s.class_name(),
            if rep.winning { "winning" } else { "NOT winning" },
            rep.plays_checked,
            rep.counterplays_total
        );
        for c in &rep.counterplays {
            outln!("  counter-play: {}", serde_json::to_string(c)?);
        }
    }
    Ok(if rep.winning { OK } else { VIOLATION })
}

fn cmd_duality(cli: &Cli, path: &Path) -> Result<u8> {
    let pair: ScenarioPair = load(path)?;
    let a = build(&pair.first, cli.horizon)?;
    let b = build(&pair.second, cli.horizon)?;
    let rep = match check_duality(&a, &b, cli.budget) {
        Ok(r) => r,
        Err(DualityError::Solver(SolverError::BudgetExceeded(n))) => {
            outln!("budget exhausted after {n} nodes");
            return Ok(BUDGET);
        }
        Err(e) => return Err(anyhow!(e)),
    };
    if cli.json {
        print_json(&serde_json::to_value(&rep)?);
    } else {
        let line = |label: &str, ok: bool| outln!("  {label:<40} {}", if ok { "holds" } else { "FAILS" });
        outln!("{}: {} vs {}", pair.name, pair.first.name, pair.second.name);
        line("One wins first <=> Two wins second", rep.one_first_two_second);
        line("Two wins first <=> One wins second", rep.two_first_one_second);
        line("pre One first <=> Markov Two second", rep.pre_first_markov_second);
        line("Markov Two first <=> pre One second", rep.markov_first_pre_second);
    }
    Ok(if rep.all_hold { OK } else { VIOLATION })
}

fn cmd_translate(
    cli: &Cli,
    pack: &Path,
    src: &Path,
    dst: &Path,
    direction: Direction,
    strategy: &Option<PathBuf>,
    out: &Option<PathBuf>,
) -> Result<u8> {
    let pack: TranslationPack = load(pack)?;
    let src = build(&load_scenario(src)?, cli.horizon)?;
    let dst = build(&load_scenario(dst)?, cli.horizon)?;
    let tr = check_tr_axioms(&pack, &src, &dst)?;
    if !tr.holds {
        if cli.json {
            print_json(&json!({ "axioms": tr }));
        } else {
            outln!("translation axioms FAIL ({} violations)", tr.violations_total);
            for v in &tr.violations {
                outln!("  {}", serde_json::to_string(v)?);
            }
        }
        return Ok(VIOLATION);
    }
    let input = match strategy {
        Some(p) => Some(load::<Strategy>(p)?),
        None => match direction {
            Direction::MarkTwo => match find_markov_two(&src, cli.budget) {
                Ok(s) => s,
                Err(SolverError::BudgetExceeded(_)) => return Ok(BUDGET),
                Err(e) => return Err(anyhow!(e)),
            },
            Direction::FullTwo => Some(solve(&src)).filter(|d| d.winner == Winner::Two).map(|d| d.witness),
            Direction::FullOnePullback => Some(solve(&dst)).filter(|d| d.winner == Winner::One).map(|d| d.witness),
            Direction::PreOnePullback => find_predetermined_one(&dst),
        },
    };
    let Some(input) = input else {
        if cli.json {
            print_json(&json!({ "axioms": tr, "input": null }));
        } else {
            outln!("translation axioms hold; no {} input strategy exists", direction.input_class());
        }
        return Ok(OK);
    };
    let moved = apply_translation(&pack, &src, &dst, direction, &input)?;
    let home = if direction.input_on_source() { &dst } else { &src };
    let rep = verify(home, &moved, cli.max_exhibits)?;
    write_out(out, &serde_json::to_string_pretty(&moved)?)?;
    if cli.json {
        print_json(&json!({ "axioms": tr, "strategy": moved, "verification": rep }));
    } else {
        outln!(
            "translation axioms hold; {} transferred as {}: {}",
            direction.name(),
            moved.class_name(),
            if rep.winning { "winning" } else { "NOT winning" }
        );
    }
    Ok(if rep.winning { OK } else { VIOLATION })
}

#[derive(Deserialize)]
struct TukeyDoc {
    src: RelPair,
    dst: RelPair,
    phi: Vec<usize>,
}

fn cmd_cofinality(cli: &Cli, path: &Path) -> Result<u8> {
    let text = read(path)?;
    if let Ok(doc) = serde_json::from_str::<TukeyDoc>(&text) {
        let fast = check_tukey_map(&doc.phi, &doc.src, &doc.dst)?;
        let slow = if doc.src.sub_a().len() <= ORACLE_LIMIT {
            Some(brute_tukey_oracle(&doc.phi, &doc.src, &doc.dst)?)
        } else {
            None
        };
        let agree = slow.is_none_or(|s| s == fast);
        if cli.json {
            print_json(&json!({ "tukey": fast, "oracle": slow, "agree": agree }));
        } else {
            outln!("Tukey map: {fast}");
            if let Some(s) = slow {
                outln!("oracle: {s}");
            }
        }
        return Ok(if agree { OK } else { VIOLATION });
    }
    let pair: RelPair = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let cof = relative_cofinality(&pair);
    let witness = cofinal_witness(&pair);
    if cli.json {
        print_json(&json!({ "cofinality": cof, "witness": witness }));
    } else {
        outln!("cofinality {cof}");
        if let Some(w) = witness {
            outln!("witness {w:?}");
        }
    }
    Ok(OK)
}

fn cmd_fuzz(
    cli: &Cli,
    seed: u64,
    count: usize,
    suites: &[String],
    sequential: bool,
    out: &Option<PathBuf>,
) -> Result<u8> {
    let mut profile = FuzzProfile::default();
    if !suites.is_empty() {
        profile.suites = suites.iter().map(|s| s.parse::<Suite>()).collect::<Result<_, _>>()?;
    }
    profile.parallel &= !sequential;
    profile.budget = cli.budget;
    if let Some(h) = cli.horizon {
        profile.max_horizon = h;
    }
    let report = fuzz(seed, &profile, count)?;
    let doc = report.to_json();
    write_out(out, &doc)?;
    if cli.json {
        out!("{doc}");
    } else {
        out!("{}", report.to_text());
    }
    Ok(if !report.violations.is_empty() {
        VIOLATION
    } else if report.budget_exceeded > 0 {
        BUDGET
    } else {
        OK
    })
}

fn cmd_corpus(cli: &Cli, action: &CorpusAction) -> Result<u8> {
    match action {
        CorpusAction::List => {
            for sc in corpus() {
                outln!("{}", sc.name);
            }
            for p in corpus_pairs() {
                outln!("{} (pair)", p.name);
            }
            Ok(OK)
        }
        CorpusAction::Show { name } => {
            if let Some(sc) = corpus().into_iter().find(|s| &s.name == name) {
                out!("{}", sc.emit());
                return Ok(OK);
            }
            if let Some(p) = corpus_pairs().into_iter().find(|p| &p.name == name) {
                outln!("{}", serde_json::to_string_pretty(&p)?);
                return Ok(OK);
            }
            Err(anyhow!("no corpus entry named {name:?}"))
        }
        CorpusAction::Run => {
            let mut rows = Vec::new();
            let mut code = OK;
            for sc in corpus() {
                let g = build(&sc, None)?;
                let e = sc.expect();
                let winner = solve(&g).winner;
                let pre = find_predetermined_one(&g).is_some();
                let markov = match find_markov_two(&g, cli.budget) {
                    Ok(s) => Some(s.is_some()),
                    Err(SolverError::BudgetExceeded(_)) => None,
                    Err(e) => return Err(anyhow!(e)),
                };
                let met = e.winner.is_none_or(|w| w == winner)
                    && e.pre_one.is_none_or(|w| w == pre)
                    && match markov {
                        Some(m) => e.markov_two.is_none_or(|w| w == m),
                        None => true,
                    };
                if !met {
                    code = VIOLATION;
                } else if markov.is_none() && code == OK {
                    code = BUDGET;
                }
                rows.push(json!({
                    "name": sc.name,
                    "winner": winner,
                    "pre_one": pre,
                    "markov_two": markov,
                    "expectation_met": met,
                }));
            }
            for p in corpus_pairs() {
                let a = build(&p.first, None)?;
                let b = build(&p.second, None)?;
                let holds = match check_duality(&a, &b, cli.budget) {
                    Ok(r) => Some(r.all_hold),
                    Err(DualityError::Solver(SolverError::BudgetExceeded(_))) => None,
                    Err(e) => return Err(anyhow!(e)),
                };
                match holds {
                    Some(false) => code = VIOLATION,
                    None if code == OK => code = BUDGET,
                    _ => {}
                }
                rows.push(json!({ "name": p.name, "duality_holds": holds }));
            }
            if cli.json {
                print_json(&json!(rows));
            } else {
                for r in &rows {
                    outln!("{r}");
                }
            }
            Ok(code)
        }
    }
}
