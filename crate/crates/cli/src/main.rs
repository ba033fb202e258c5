use clap::{Parser, Subcommand, ValueEnum};
use std::io::Write;
use std::process::ExitCode;
use sunrise_core::mpcore::to_decimal;
use sunrise_core::quantity::{evaluate_quantity, Quantity};
use sunrise_core::registry::{self, Cost, RunDocument, VerificationReport};

#[derive(Parser)]
#[command(name = "sunrise", version, about = "High-precision checks of Bessel moment and sunrise identities")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CostArg {
    Fast,
    Standard,
    Slow,
}

impl From<CostArg> for Cost {
    fn from(c: CostArg) -> Cost {
        match c {
            CostArg::Fast => Cost::Fast,
            CostArg::Standard => Cost::Standard,
            CostArg::Slow => Cost::Slow,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Verify identities from the catalogue
    Verify {
        #[arg(long = "id", value_name = "ID")]
        ids: Vec<String>,
        #[arg(long)]
        all: bool,
        #[arg(long = "cost", value_enum)]
        costs: Vec<CostArg>,
        /// target digits, overriding each identity's default
        #[arg(long)]
        digits: Option<u32>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, value_name = "PATH")]
        out: Option<std::path::PathBuf>,
    },
    /// Evaluate IKM(a,b;n), W4S(x), LVALUE_F46, FA..FD or PFQ(a1,..;b1,..)
    Eval {
        quantity: String,
        #[arg(long, default_value_t = 30)]
        digits: u32,
    },
    /// List the catalogue
    List {
        #[arg(long)]
        json: bool,
    },
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn emit(s: &str) -> Result<(), String> {
    match std::io::stdout().lock().write_all(s.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.to_string()),
        _ => Ok(()),
    }
}

fn text_report(reports: &[VerificationReport]) -> String {
    let mut s = String::new();
    for r in reports {
        s.push_str(&format!(
            "{:<18} {:<22} {:>4}/{:<3} digits  {:>8.2}s  {} bits\n",
            r.status.as_str(),
            r.identity_id,
            r.agreed_digits,
            r.target_digits,
            r.elapsed_seconds,
            r.precision_used_bits
        ));
        if !r.status.passed() {
            for v in &r.values {
                s.push_str(&format!("    {} = {}\n", v.route, v.value));
            }
            if let Some(reason) = &r.reason {
                s.push_str(&format!("    reason: {reason}\n"));
            }
        }
    }
    let passed = reports.iter().filter(|r| r.status.passed()).count();
    s.push_str(&format!("{passed}/{} passed\n", reports.len()));
    s
}

fn verify(
    ids: Vec<String>,
    all: bool,
    costs: Vec<CostArg>,
    digits: Option<u32>,
    jobs: usize,
    format: Format,
    out: Option<std::path::PathBuf>,
) -> Result<bool, String> {
    let mut picked = Vec::new();
    for id in &ids {
        picked.push(registry::find(id).map_err(|e| e.to_string())?);
    }
    let costs: Vec<Cost> = costs.into_iter().map(Cost::from).collect();
    if all || (ids.is_empty() && costs.is_empty()) {
        picked.extend(registry::catalogue().iter());
    } else if !costs.is_empty() {
        picked.extend(registry::catalogue().iter().filter(|i| costs.contains(&i.cost)));
    }
    picked.sort_by(|a, b| a.id.cmp(&b.id));
    picked.dedup_by(|a, b| a.id == b.id);
    let reports = registry::run_selected(&picked, digits, jobs);
    let ok = reports.iter().all(|r| r.status.passed());
    let body = match format {
        Format::Text => text_report(&reports),
        Format::Json => RunDocument::new(reports).to_json(),
    };
    match out {
        Some(p) => std::fs::write(&p, body).map_err(|e| format!("{}: {e}", p.display()))?,
        None => emit(&body)?,
    }
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.cmd {
        Command::Verify { ids, all, costs, digits, jobs, format, out } => verify(ids, all, costs, digits, jobs, format, out),
        Command::Eval { quantity, digits } => Quantity::parse(&quantity).map_err(|e| e.to_string()).and_then(|q| {
            let v = evaluate_quantity(&q, digits).map_err(|e| e.to_string())?;
            emit(&format!("{}\n", to_decimal(&v.value, digits as usize)))?;
            Ok(true)
        }),
        Command::List { json } => {
            let body = if json {
                registry::export_registry().to_json()
            } else {
                registry::catalogue()
                    .iter()
                    .map(|i| format!("{:<22} {:<9} {:>3}  {}\n", i.id, format!("{:?}", i.cost).to_lowercase(), i.default_target_digits, i.citation))
                    .collect()
            };
            emit(&body).map(|_| true)
        }
    };
    match res {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
