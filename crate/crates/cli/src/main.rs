mod args;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::Parser;
use serde::Serialize;

use args::{Cli, Command, Common, OracleCommand};
use mtsearch::harness::{
    level_off, load_suite, nondominance_hunt, ordering_report, replay_hunt_tree, run_compare, run_guess_sweep,
    run_memsweep, trace_pearl, write_csv, HuntConfig, Position,
};
use mtsearch::sss::{equivalence_check, sss_star};
use mtsearch::{Algorithm, Branching, Game, SearchContext, SynthTreeConfig, SyntheticTree};

/// Exit code when a run completes but an invariant does not hold.
const INVARIANT_FAILED: u8 = 1;
/// Exit code for bad input or I/O failures.
const ERROR: u8 = 2;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(INVARIANT_FAILED),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(ERROR)
        }
    }
}

/// Runs one subcommand; `Ok(false)` means an invariant failed.
fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Compare(c) => compare(&c),
        Command::Memsweep(c) => memsweep(&c),
        Command::GuessSweep { common, deltas } => {
            let rows = run_guess_sweep(&common.spec(), &deltas)?;
            emit(&rows, common.out.as_deref())?;
            Ok(true)
        }
        Command::Ordering(c) => {
            let rows = ordering_report(&c.spec())?;
            emit(&rows, c.out.as_deref())?;
            Ok(true)
        }
        Command::Hunt { seed, budget, ordering } => hunt(seed, budget, ordering),
        Command::Pearl => {
            let t = trace_pearl()?;
            println!("{t}");
            for m in &t.mismatches {
                eprintln!("mismatch: {m}");
            }
            Ok(t.passed())
        }
        Command::Oracle { command } => match command {
            OracleCommand::Run { common } => oracle_run(&common),
            OracleCommand::Equiv {
                trees,
                seed,
                branching,
                max_depth,
            } => oracle_equiv(trees, seed, branching, max_depth),
        },
        Command::Search {
            common,
            algo,
            index,
            trace_leaves,
        } => search(&common, algo, index, trace_leaves),
    }
}

fn emit<T: Serialize>(rows: &[T], out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => {
            let f = File::create(p).with_context(|| format!("creating {}", p.display()))?;
            write_csv(rows, BufWriter::new(f))?;
        }
        None => write_csv(rows, io::stdout().lock())?,
    }
    Ok(())
}

fn compare(c: &Common) -> Result<bool> {
    let report = run_compare(&c.spec())?;
    emit(&report.rows, c.out.as_deref())?;
    for d in &report.disagreements {
        let vals: Vec<String> = d.values.iter().map(|(a, v)| format!("{a}={v}")).collect();
        eprintln!("disagreement at {} depth {}: {}", d.position, d.depth, vals.join(" "));
    }
    Ok(report.agreed())
}

fn memsweep(c: &Common) -> Result<bool> {
    let report = run_memsweep(&c.spec())?;
    emit(&report.rows, c.out.as_deref())?;
    for alg in [Algorithm::Sss, Algorithm::Dual] {
        let curve = report.ratio_curve(alg);
        match level_off(&curve, 0.02) {
            Some(b) => eprintln!("{alg}: ratio levels off at 2^{b}"),
            None => eprintln!("{alg}: ratio does not level off within the sweep"),
        }
    }
    Ok(true)
}

fn hunt(seed: u64, budget: u64, ordering: mtsearch::MoveOrdering) -> Result<bool> {
    let cfg = HuntConfig::new(seed, budget).with_ordering(ordering);
    let report = nondominance_hunt(&cfg)?;
    println!("{report}");
    // A counterexample must reproduce from its tree description alone.
    if let Some(c) = &report.found {
        let again = replay_hunt_tree(&c.run.tree, &cfg)?;
        if again != c.run {
            eprintln!("replay of tree {} differs", c.index);
            return Ok(false);
        }
    }
    Ok(true)
}

fn output(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(io::stdout().lock()),
    })
}

fn oracle_run(c: &Common) -> Result<bool> {
    let spec = c.spec();
    let depth = spec.schedule.max;
    let mut out = output(c.out.as_deref())?;
    for pos in load_suite(&spec)? {
        let r = match &pos {
            Position::Pearl { tree, .. } => sss_star(tree, tree.root(), depth),
            Position::Othello { state, .. } => sss_star(&mtsearch::Othello6, *state, depth),
            Position::Synth { tree, .. } => sss_star(&**tree, tree.root(), depth),
        }
        .with_context(|| format!("position {}", pos.id()))?;
        writeln!(
            out,
            "# {} depth {} value {} leaves {} max_open {}",
            pos.id(),
            depth,
            r.value,
            r.leaves.len(),
            r.max_open
        )?;
        out.write_all(r.trace_text().as_bytes())?;
    }
    out.flush()?;
    Ok(true)
}

fn oracle_equiv(trees: u64, seed: u64, branching: Branching, max_depth: u32) -> Result<bool> {
    if max_depth == 0 {
        bail!("--max-depth must be positive");
    }
    let mut failures = 0u64;
    for i in 0..trees {
        let cfg = SynthTreeConfig::new(seed.wrapping_add(i), branching, 1 + (i % max_depth as u64) as u32);
        let t = SyntheticTree::generate(&cfg)?;
        let r = equivalence_check(&t, t.root(), cfg.depth)?;
        if !r.passed() {
            failures += 1;
            println!("{cfg}: {r}");
        }
    }
    println!("{} trees, {failures} failures", trees);
    Ok(failures == 0)
}

#[derive(Serialize)]
struct SearchRow {
    position: String,
    algorithm: String,
    depth: u32,
    value: mtsearch::Value,
    guess: mtsearch::Value,
    best_move: String,
    leaf_evals: u64,
    total_nodes: u64,
    mt_calls: u64,
    researches: u32,
    wall_ms: f64,
}

fn search(c: &Common, algo: Algorithm, index: usize, trace_leaves: bool) -> Result<bool> {
    let spec = c.spec();
    let suite = load_suite(&spec)?;
    let Some(pos) = suite.get(index) else {
        bail!("position index {index} out of range (suite has {})", suite.len());
    };
    let (rows, leaves) = match pos {
        Position::Pearl { tree, .. } => search_game(tree, &tree.root(), pos.id(), algo, &spec, trace_leaves),
        Position::Othello { state, .. } => search_game(&mtsearch::Othello6, state, pos.id(), algo, &spec, trace_leaves),
        Position::Synth { tree, .. } => search_game(&**tree, &tree.root(), pos.id(), algo, &spec, trace_leaves),
    };
    emit(&rows, c.out.as_deref())?;
    if trace_leaves {
        let mut err = io::stderr().lock();
        for l in leaves {
            writeln!(err, "EVAL {:016x} {}", l.key, l.value)?;
        }
    }
    Ok(true)
}

fn search_game<G: Game>(
    game: &G,
    root: &G::State,
    id: &str,
    algo: Algorithm,
    spec: &mtsearch::harness::ExperimentSpec,
    trace_leaves: bool,
) -> (Vec<SearchRow>, Vec<mtsearch::LeafEval>) {
    let mut ctx = SearchContext::new(game, spec.primary_tt()).with_ordering(spec.ordering);
    if trace_leaves {
        ctx = ctx.with_leaf_trace();
    }
    let r = ctx.iterative_deepen(root, algo, &spec.id_config());
    let rows = r
        .iterations
        .iter()
        .map(|it| SearchRow {
            position: id.to_string(),
            algorithm: algo.tag().to_string(),
            depth: it.depth,
            value: it.value,
            guess: it.guess,
            best_move: it.best_move.map(|m| game.move_name(root, m)).unwrap_or_default(),
            leaf_evals: it.leaf_evals,
            total_nodes: it.total_nodes,
            mt_calls: it.mt_calls,
            researches: it.researches,
            wall_ms: it.wall.as_secs_f64() * 1e3,
        })
        .collect();
    (rows, ctx.stats.leaf_trace.take().unwrap_or_default())
}
