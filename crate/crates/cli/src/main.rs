//! Command-line front end for the freelie engine.

use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use freelie::cohomology::{betti_table, Algebra, BettiEntry};
use freelie::lie::{dynkin_map, is_lie, lie_coordinates, lyndon_basis};
use freelie::operators::{
    ant, delta, delta_a, g_a, g_homotopy, p_project, r_embed, r_invert, s_retract, tau_defect,
    CONVENTIONS,
};
use freelie::oracle::{randomized_identity_check, Identity, TrialConfig};
use freelie::series::bch;
use freelie::syntax::parse;
use freelie::verify::{run_suite, Suite};
use freelie::Poly;

#[derive(Parser)]
#[command(
    name = "freelie",
    version,
    about = "Exact δ_A complexes on free associative and free Lie algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Apply one operator to an expression
    Apply {
        #[arg(long, value_enum)]
        op: Op,
        /// Arity of the input
        #[arg(long)]
        n: usize,
        #[arg(long)]
        expr: String,
        #[arg(long)]
        json: bool,
    },
    /// Betti numbers of δ_A per bidegree
    Cohomology {
        #[arg(long, value_enum)]
        algebra: AlgebraArg,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        deg_max: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
        /// Include certified generator representatives
        #[arg(long)]
        generators: bool,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Run an exhaustive identity suite on canonical bases
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Suite,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        deg_max: usize,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Baker–Campbell–Hausdorff series log(e^x1 e^x2) up to a degree
    Bch {
        #[arg(long)]
        deg: usize,
        #[arg(long)]
        check_lie: bool,
        /// Print coordinates in the Lyndon basis
        #[arg(long)]
        coords: bool,
    },
    /// Randomized check of an identity on rational matrices
    Oracle {
        #[arg(long, value_parser = parse_identity)]
        identity: Identity,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        deg: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Matrix size
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        fault_inject: bool,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long)]
        json: bool,
    },
    /// Print the sign and normalization conventions in use
    Conventions,
}

#[derive(Clone, Copy, ValueEnum)]
enum Op {
    #[value(name = "delta")]
    Delta,
    #[value(name = "deltaA")]
    DeltaA,
    #[value(name = "s")]
    S,
    #[value(name = "tau")]
    Tau,
    #[value(name = "R")]
    R,
    #[value(name = "Rinv")]
    Rinv,
    #[value(name = "P")]
    P,
    #[value(name = "G")]
    G,
    #[value(name = "GA")]
    Ga,
    #[value(name = "Ant")]
    Ant,
    #[value(name = "dynkin")]
    Dynkin,
}

impl Op {
    fn name(self) -> &'static str {
        match self {
            Op::Delta => "delta",
            Op::DeltaA => "deltaA",
            Op::S => "s",
            Op::Tau => "tau",
            Op::R => "R",
            Op::Rinv => "Rinv",
            Op::P => "P",
            Op::G => "G",
            Op::Ga => "GA",
            Op::Ant => "Ant",
            Op::Dynkin => "dynkin",
        }
    }

    fn run(self, f: &Poly) -> freelie::Result<Poly> {
        match self {
            Op::Delta => delta(f),
            Op::DeltaA => delta_a(f),
            Op::S => s_retract(f),
            Op::Tau => tau_defect(f),
            Op::R => r_embed(f),
            Op::Rinv => r_invert(f),
            Op::P => p_project(f),
            Op::G => g_homotopy(f),
            Op::Ga => g_a(f),
            Op::Ant => ant(f),
            Op::Dynkin => dynkin_map(f),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgebraArg {
    Assoc,
    Lie,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

fn parse_identity(s: &str) -> Result<Identity, String> {
    s.parse().map_err(|e: freelie::Error| e.to_string())
}

enum Failure {
    Violation(String),
    Usage(String),
}

type Outcome = Result<String, Failure>;

fn usage<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Usage(e.to_string())
}

fn apply(op: Op, n: usize, expr: &str, as_json: bool) -> Outcome {
    let f = parse(expr, Some(n)).map_err(usage)?;
    let result = op.run(&f).map_err(usage)?;
    if as_json {
        let v = json!({
            "op": op.name(),
            "n": n,
            "input": f.to_string(),
            "arity": result.arity(),
            "result": result.to_string(),
        });
        Ok(format!("{v}\n"))
    } else {
        Ok(format!("{result}\n"))
    }
}

/// Expected Betti number: one class at `d = n` for `T`, and at `(1, 1)`, `(2, 2)` for `L`.
fn expected_betti(algebra: Algebra, n: usize, d: usize) -> usize {
    match algebra {
        Algebra::Assoc => usize::from(n == d),
        Algebra::Lie => usize::from((n, d) == (1, 1) || (n, d) == (2, 2)),
    }
}

fn render_table(algebra: Algebra, entries: &[BettiEntry], generators: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# H^n({}, delta_A) by word degree d; degree 0 omitted",
        if algebra == Algebra::Assoc {
            "T_n"
        } else {
            "L_n"
        }
    );
    let _ = writeln!(
        out,
        "{:>3} {:>3} {:>6} {:>8} {:>8} {:>6}",
        "n", "d", "dim", "rank_out", "rank_in", "betti"
    );
    for e in entries {
        let _ = writeln!(
            out,
            "{:>3} {:>3} {:>6} {:>8} {:>8} {:>6}",
            e.n, e.d, e.dim, e.rank_out, e.rank_in, e.betti
        );
        if generators {
            for g in &e.generators {
                let _ = writeln!(out, "        generator: {g}");
            }
        }
    }
    out
}

fn render_json(algebra: Algebra, entries: &[BettiEntry], generators: bool) -> String {
    let rows: Vec<_> = entries
        .iter()
        .map(|e| {
            let gens: Vec<String> = if generators {
                e.generators.iter().map(ToString::to_string).collect()
            } else {
                Vec::new()
            };
            json!({
                "n": e.n,
                "d": e.d,
                "dim": e.dim,
                "rank_out": e.rank_out,
                "rank_in": e.rank_in,
                "betti": e.betti,
                "generators": gens,
            })
        })
        .collect();
    format!(
        "{}\n",
        json!({ "algebra": algebra.name(), "entries": rows })
    )
}

fn render_csv(entries: &[BettiEntry], generators: bool) -> String {
    let mut out = String::from("n,d,dim,rank_out,rank_in,betti,generators\n");
    for e in entries {
        let gens = if generators {
            e.generators
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(";")
        } else {
            String::new()
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},\"{}\"",
            e.n, e.d, e.dim, e.rank_out, e.rank_in, e.betti, gens
        );
    }
    out
}

fn cohomology(
    algebra: Algebra,
    n_max: usize,
    d_max: usize,
    format: Format,
    generators: bool,
    threads: usize,
) -> Outcome {
    if n_max == 0 || d_max == 0 {
        return Err(Failure::Usage(
            "--n-max and --deg-max must be at least 1".into(),
        ));
    }
    let entries = betti_table(algebra, n_max, d_max, threads)
        .map_err(|e| Failure::Violation(e.to_string()))?;
    let text = match format {
        Format::Table => render_table(algebra, &entries, generators),
        Format::Json => render_json(algebra, &entries, generators),
        Format::Csv => render_csv(&entries, generators),
    };
    let mismatches: Vec<String> = entries
        .iter()
        .filter(|e| e.betti != expected_betti(algebra, e.n, e.d))
        .map(|e| {
            format!(
                "betti({}, {}) = {} differs from the predicted {}",
                e.n,
                e.d,
                e.betti,
                expected_betti(algebra, e.n, e.d)
            )
        })
        .collect();
    if mismatches.is_empty() {
        Ok(text)
    } else {
        Err(Failure::Violation(format!(
            "{text}{}",
            mismatches.join("\n")
        )))
    }
}

fn verify(suite: Suite, n_max: usize, d_max: usize, threads: usize) -> Outcome {
    let report = run_suite(suite, n_max, d_max, threads).map_err(usage)?;
    let text = format!("suite {suite}\n{report}\n");
    if report.ok() {
        Ok(text)
    } else {
        Err(Failure::Violation(text))
    }
}

fn run_bch(deg: usize, check_lie: bool, coords: bool) -> Outcome {
    let z = bch(deg);
    let mut out = String::new();
    for d in 1..=deg {
        let part = z.homogeneous_component(d);
        let _ = writeln!(out, "degree {d}: {part}");
        if coords {
            let basis = lyndon_basis(2, d);
            let c =
                lie_coordinates(&part, &basis).map_err(|e| Failure::Violation(e.to_string()))?;
            let shown: Vec<String> = basis
                .words
                .iter()
                .zip(&c)
                .map(|(w, c)| format!("{w}: {c}"))
                .collect();
            let _ = writeln!(out, "  lyndon: [{}]", shown.join(", "));
        }
    }
    if check_lie {
        let lie = is_lie(&z);
        let _ = writeln!(out, "is_lie: {lie}");
        if !lie {
            return Err(Failure::Violation(out));
        }
    }
    Ok(out)
}

fn oracle(identity: Identity, cfg: TrialConfig, as_json: bool) -> Outcome {
    let report = randomized_identity_check(identity, &cfg).map_err(usage)?;
    let text = if as_json {
        format!(
            "{}\n",
            serde_json::to_string(&report).expect("report serializes")
        )
    } else {
        format!("{report}\n")
    };
    if report.ok() {
        Ok(text)
    } else {
        Err(Failure::Violation(text))
    }
}

fn dispatch(cli: Cli) -> Outcome {
    match cli.command {
        Command::Apply { op, n, expr, json } => apply(op, n, &expr, json),
        Command::Cohomology {
            algebra,
            n_max,
            deg_max,
            format,
            generators,
            threads,
        } => {
            let algebra = match algebra {
                AlgebraArg::Assoc => Algebra::Assoc,
                AlgebraArg::Lie => Algebra::Lie,
            };
            cohomology(algebra, n_max, deg_max, format, generators, threads)
        }
        Command::Verify {
            suite,
            n_max,
            deg_max,
            threads,
        } => verify(suite, n_max, deg_max, threads),
        Command::Bch {
            deg,
            check_lie,
            coords,
        } => run_bch(deg, check_lie, coords),
        Command::Oracle {
            identity,
            n,
            deg,
            trials,
            dim,
            seed,
            fault_inject,
            threads,
            json,
        } => {
            let cfg = TrialConfig {
                n,
                d: deg,
                trials,
                k: dim,
                seed,
                fault_inject,
                threads,
            };
            oracle(identity, cfg, json)
        }
        Command::Conventions => Ok(format!("{CONVENTIONS}\n")),
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Violation(text)) => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
