use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mfdcca::binomial::{cascade_values, CascadeOrder, CascadeSpec};
use mfdcca::grid::{DEFAULT_SCALE_COUNT, MIN_SCALE};
use mfdcca::io::InputSpec;
use mfdcca::run::{fmt_f64, run, Formats, RunConfig};
use mfdcca::{AnalysisOptions, Selection};

/// Multifractal detrended fluctuation and cross-correlation analysis.
#[derive(Parser)]
#[command(version, args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    #[command(flatten)]
    analyze: AnalyzeArgs,
}

#[derive(Subcommand)]
enum Command {
    /// Write a binomial cascade as a one-column CSV.
    Binomial(BinomialArgs),
}

#[derive(Args)]
struct BinomialArgs {
    #[arg(long)]
    stages: u32,
    #[arg(long)]
    p: f64,
    #[arg(long, value_enum, default_value_t = OrderArg::BitCount)]
    order: OrderArg,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    BitCount,
    LeftP,
}

#[derive(Clone, Copy, ValueEnum)]
enum Returns {
    None,
    Log,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    input2: Option<PathBuf>,
    /// Value column; give two to read a pair from one file.
    #[arg(long, num_args = 1..=2, value_delimiter = ',')]
    column: Vec<String>,
    #[arg(long)]
    date_column: Option<String>,
    #[arg(long, value_enum, default_value_t = Returns::None)]
    returns: Returns,
    #[arg(long, default_value_t = MIN_SCALE)]
    scale_min: usize,
    /// Defaults to a quarter of the series length.
    #[arg(long)]
    scale_max: Option<usize>,
    #[arg(long, default_value_t = DEFAULT_SCALE_COUNT)]
    scale_count: usize,
    #[arg(long, default_value_t = -10.0, allow_negative_numbers = true)]
    q_min: f64,
    #[arg(long, default_value_t = 10.0, allow_negative_numbers = true)]
    q_max: f64,
    #[arg(long, default_value_t = 0.25)]
    q_step: f64,
    #[arg(long, default_value_t = 1)]
    order: usize,
    /// Comma list of MFDFA, MFDXA, ABS, MFCCA, PS, MS, PB, MB, PP, PM, MP, MM or `all`.
    #[arg(long)]
    algorithms: Option<String>,
    #[arg(long, default_value = "out")]
    out: PathBuf,
    #[arg(long, default_value = "csv,json")]
    format: String,
}

fn binomial(args: BinomialArgs) -> Result<(), String> {
    let order = match args.order {
        OrderArg::BitCount => CascadeOrder::BitCount,
        OrderArg::LeftP => CascadeOrder::LeftP,
    };
    let values = cascade_values(&CascadeSpec::new(args.stages, args.p).with_order(order))
        .map_err(|e| e.to_string())?;
    let mut body = String::with_capacity(values.len() * 24 + 6);
    body.push_str("value\n");
    for v in values {
        body.push_str(&fmt_f64(v));
        body.push('\n');
    }
    match args.out {
        Some(path) => std::fs::write(&path, body).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout()
            .lock()
            .write_all(body.as_bytes())
            .map_err(|e| e.to_string()),
    }
}

fn analyze(args: AnalyzeArgs) -> Result<(), String> {
    let input = args.input.ok_or("--input is required")?;
    let columns = if args.column.is_empty() {
        vec!["value".to_string()]
    } else {
        args.column
    };
    if columns.len() == 2 && args.input2.is_some() {
        return Err("give one --column when reading two files".into());
    }
    let selection = args
        .algorithms
        .as_deref()
        .map(Selection::parse)
        .transpose()
        .map_err(|e| e.to_string())?;
    let config = RunConfig {
        inputs: InputSpec {
            input,
            input2: args.input2,
            columns,
            date_column: args.date_column,
            log_returns: matches!(args.returns, Returns::Log),
        },
        options: AnalysisOptions {
            scale_min: args.scale_min,
            scale_max: args.scale_max,
            scale_count: args.scale_count,
            q_min: args.q_min,
            q_max: args.q_max,
            q_step: args.q_step,
            poly_order: args.order,
            selection,
        },
        out_dir: args.out,
        formats: Formats::parse(&args.format).map_err(|e| e.to_string())?,
    };
    let output = run(&config).map_err(|e| e.to_string())?;
    for path in output.files {
        println!("{}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Some(Command::Binomial(args)) => binomial(args),
        None => analyze(cli.analyze),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {}", msg.replace('\n', " "));
            ExitCode::FAILURE
        }
    }
}
