use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hkrlab::commands::{self, DiagramOp};
use hkrlab::{input, run_suite, CliError, SuiteConfig};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "hkrlab", version, about = "Exact checks for HKR, hyperkähler and Jacobi diagram algebra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a named suite and print its JSON report.
    Suite {
        #[command(subcommand)]
        action: SuiteAction,
    },
    /// Coefficient tables of multiplicative genera.
    Genus {
        #[command(subcommand)]
        action: GenusAction,
    },
    /// Covering equations and induced block permutations.
    Holonomy {
        #[command(subcommand)]
        action: HolonomyAction,
    },
    /// Graded dimensions of the subalgebra generated by H².
    Verbitsky {
        #[command(subcommand)]
        action: VerbitskyAction,
    },
    /// Inspect diagrams or apply gluing operations.
    Diagram {
        #[command(subcommand)]
        action: DiagramAction,
    },
    /// Lie algebra weight systems.
    Weights {
        #[command(subcommand)]
        action: WeightsAction,
    },
    /// Polyvector/form pair models.
    Pair {
        #[command(subcommand)]
        action: PairAction,
    },
}

#[derive(Subcommand)]
enum SuiteAction {
    Run {
        name: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum GenusAction {
    Series {
        #[arg(long)]
        name: String,
        #[arg(long, default_value_t = 1)]
        roots: usize,
        #[arg(long)]
        degree: usize,
    },
}

#[derive(Subcommand)]
enum HolonomyAction {
    /// Solve `d·(1+n) = ∏(1+nᵢ)`, or `e·k·(1+k) = 2^k` with `--power-equation`.
    Solve {
        #[arg(long, required_unless_present = "power_equation")]
        n: Option<u64>,
        #[arg(long)]
        power_equation: bool,
        #[arg(long, default_value_t = 64)]
        kmax: u64,
    },
    /// Induced permutation of the blocks for a matrix given as JSON rows.
    Perm {
        #[arg(long)]
        matrix: PathBuf,
        #[arg(long, value_delimiter = ',')]
        blocks: Vec<usize>,
    },
}

#[derive(Subcommand)]
enum VerbitskyAction {
    Dims {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        max_degree: usize,
    },
}

#[derive(Subcommand)]
enum DiagramAction {
    /// Degree, label table and canonical form of a diagram.
    Eval {
        #[arg(long)]
        diagram: PathBuf,
    },
    /// Apply an operation to one or two diagram/series files.
    Op {
        #[command(subcommand)]
        op: OpKind,
        /// Truncation degree when an operand is a single diagram.
        #[arg(long, global = true, default_value_t = 8)]
        max_degree: usize,
    },
}

#[derive(Subcommand)]
enum OpKind {
    Union {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, value_delimiter = ',')]
        shared: Vec<String>,
    },
    Juxtapose {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        label: String,
    },
    Average {
        input: PathBuf,
        #[arg(long)]
        label: String,
    },
    Trace {
        input: PathBuf,
        #[arg(long)]
        label: String,
    },
    Relabel {
        input: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    Split {
        input: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long, value_delimiter = ',', num_args = 2)]
        to: Vec<String>,
    },
    Pair {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, value_delimiter = ',')]
        glued: Vec<String>,
    },
    InnerGlue {
        left: PathBuf,
        right: PathBuf,
        #[arg(long)]
        label: String,
    },
}

#[derive(Subcommand)]
enum WeightsAction {
    Eval {
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long)]
        backend: String,
        #[arg(long, default_value_t = 8)]
        max_degree: usize,
    },
}

#[derive(Subcommand)]
enum PairAction {
    /// Run the pair checks on one model file.
    Suite {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Annihilator subspaces on both sides of a synthetic pair.
    Annihilators {
        #[arg(long)]
        model: PathBuf,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

/// What a command printed and the exit status it asks for.
struct Outcome {
    value: Value,
    code: i32,
}

impl From<Value> for Outcome {
    fn from(value: Value) -> Self {
        Self { value, code: 0 }
    }
}

fn diagram_op(op: OpKind, max_degree: usize) -> Result<Value, CliError> {
    let load = |p: &PathBuf| input::read_text(p).and_then(|t| commands::read_series(&t, max_degree));
    let (op, left, right) = match op {
        OpKind::Union { left, right, shared } => (DiagramOp::Union { shared }, left, Some(right)),
        OpKind::Juxtapose { left, right, label } => (DiagramOp::Juxtapose { label }, left, Some(right)),
        OpKind::Average { input, label } => (DiagramOp::Average { label }, input, None),
        OpKind::Trace { input, label } => (DiagramOp::Trace { label }, input, None),
        OpKind::Relabel { input, from, to } => (DiagramOp::Relabel { from, to }, input, None),
        OpKind::Split { input, from, to } => {
            let [a, b]: [String; 2] = to.try_into().map_err(|_| CliError::Usage("--to takes two labels".into()))?;
            (DiagramOp::Split { from, to: (a, b) }, input, None)
        }
        OpKind::Pair { left, right, glued } => (DiagramOp::Pair { glued }, left, Some(right)),
        OpKind::InnerGlue { left, right, label } => (DiagramOp::InnerGlue { label }, left, Some(right)),
    };
    let left = load(&left)?;
    let right = right.as_ref().map(load).transpose()?;
    commands::diagram_op(&op, &left, right.as_ref())
}

fn dispatch(command: Command) -> Result<Outcome, CliError> {
    Ok(match command {
        Command::Suite { action: SuiteAction::Run { name, seed } } => {
            let report = run_suite(&name, &SuiteConfig { seed })?;
            Outcome { code: report.exit_code(), value: serde_json::to_value(&report).expect("report serializes") }
        }
        Command::Genus { action: GenusAction::Series { name, roots, degree } } => {
            commands::genus_series(&name, roots, degree)?.into()
        }
        Command::Holonomy { action } => match action {
            HolonomyAction::Solve { power_equation: true, kmax, .. } => commands::holonomy_power_equation(kmax)?.into(),
            HolonomyAction::Solve { n, .. } => commands::holonomy_chi(n.unwrap_or_default())?.into(),
            HolonomyAction::Perm { matrix, blocks } => {
                let m = input::matrix(&input::read_json(&matrix)?)?;
                commands::holonomy_permutation(m, blocks)?.into()
            }
        },
        Command::Verbitsky { action: VerbitskyAction::Dims { model, max_degree } } => {
            let (space, n) = input::verbitsky_model(&input::read_json(&model)?)?;
            commands::verbitsky_dims(space, n, max_degree)?.into()
        }
        Command::Diagram { action } => match action {
            DiagramAction::Eval { diagram } => commands::diagram_summary(&input::read_text(&diagram)?)?.into(),
            DiagramAction::Op { op, max_degree } => diagram_op(op, max_degree)?.into(),
        },
        Command::Weights { action: WeightsAction::Eval { diagram, backend, max_degree } } => {
            let series = commands::read_series(&input::read_text(&diagram)?, max_degree)?;
            commands::weights_eval(&series, &backend)?.into()
        }
        Command::Pair { action } => match action {
            PairAction::Suite { model, seed } => {
                let model = input::pair_model(&input::read_json(&model)?)?;
                let report = hkrlab::SuiteReport::new("pair", seed, hkrlab::suites::pair_model_cases(&model, seed));
                Outcome { code: report.exit_code(), value: serde_json::to_value(&report).expect("report serializes") }
            }
            PairAction::Annihilators { model, seed } => {
                let model = input::pair_model(&input::read_json(&model)?)?;
                commands::pair_annihilators(&model, seed)?.into()
            }
        },
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (value, code) = match dispatch(cli.command) {
        Ok(Outcome { value, code }) => (value, code),
        Err(e @ CliError::Usage(_)) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
        Err(e) => (json!({"error": "domain", "message": e.to_string()}), e.exit_code()),
    };
    println!("{}", serde_json::to_string_pretty(&value).expect("json serializes"));
    ExitCode::from(code as u8)
}
