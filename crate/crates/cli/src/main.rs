mod config;
mod failure;
mod render;

use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use mapspace_core::{
    betti_table, betti_table_on_page, check_collapse, check_dichotomy, check_example62, check_injectivity,
    check_periodicity, e2_page_with_generators, e2_table, unit_check, Field, Verdict, VerificationReport,
};

use config::{check_cutoff, parse_components, parse_field, CheckArg, Cli, Command, ComputeArgs, Format, VerifyArgs};
use failure::Failure;

const THREADS_VAR: &str = "MAPSPACE_THREADS";

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().ok().filter(|&t| t > 0).ok_or_else(|| {
        Failure::config(
            "InvalidThreads",
            format!("{THREADS_VAR}=`{raw}` is not a positive integer"),
        )
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::config("InvalidThreads", e.to_string()))
}

fn emit(output: Option<&std::path::Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::io(path, e)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Failure::io("<stdout>", e))
        }
    }
}

fn compute(args: &ComputeArgs, export: bool) -> Result<(), Failure> {
    let space = args.space()?;
    check_cutoff(args.common.cutoff)?;
    let components = parse_components(&args.common, &[0])?;
    let format = match (args.format, export) {
        (Some(Format::Text), true) => {
            return Err(Failure::config("InvalidFormat", "export writes csv or json"));
        }
        (Some(f), _) => f,
        (None, true) => Format::Json,
        (None, false) => Format::Text,
    };
    if export && args.common.output.is_none() {
        return Err(Failure::config("MissingOutput", "export needs --output"));
    }
    let (cutoff, grading) = (args.common.cutoff, args.grading());
    let table = match (args.max_generator_degree, args.e2) {
        (Some(_), true) => {
            return Err(Failure::config(
                "InvalidParameter",
                "--e2 and --max-generator-degree are exclusive",
            ));
        }
        (Some(g), false) => {
            let page = e2_page_with_generators(space, g)?;
            betti_table_on_page(&page, space, &components, cutoff, grading)?
        }
        (None, true) => e2_table(space, &components, cutoff, grading)?,
        (None, false) => betti_table(space, &components, cutoff, grading)?,
    };
    let text = match format {
        Format::Text => render::text(&table, args.series, if args.e2 { "E2" } else { "H" }),
        Format::Csv => render::csv(&table)?,
        Format::Json => render::json(&table, args.series),
    };
    emit(args.common.output.as_deref(), &text)
}

fn require_prime(field: Field, check: &str) -> Result<u64, Failure> {
    match field {
        Field::Prime(p) => Ok(p),
        Field::Rational => Err(Failure::config(
            "InvalidParameter",
            format!("{check} needs --field f<p>"),
        )),
    }
}

fn require_k(k: Option<i64>, check: &str) -> Result<i64, Failure> {
    k.ok_or_else(|| Failure::config("MissingParameter", format!("{check} needs --k")))
}

fn run_check(check: CheckArg, args: &VerifyArgs, field: Field) -> Result<VerificationReport, Failure> {
    let c = &args.common;
    let n = c.n;
    let report = match check {
        CheckArg::Collapse => {
            let p = require_prime(field, "collapse")?;
            check_collapse(n, p, &parse_components(c, &(-4..=4).collect::<Vec<_>>())?, c.cutoff)?
        }
        CheckArg::Periodicity => {
            let p = require_prime(field, "periodicity")?;
            let k = require_k(args.k, "periodicity")?;
            check_periodicity(n, p, k, &parse_components(c, &(-2..=2).collect::<Vec<_>>())?, c.cutoff)?
        }
        CheckArg::Dichotomy => {
            check_dichotomy(n, field, &parse_components(c, &(-3..=3).collect::<Vec<_>>())?, c.cutoff)?
        }
        CheckArg::Unit => {
            let p = require_prime(field, "unit")?;
            unit_check(n, p, require_k(args.k, "unit")?, c.cutoff)?
        }
        CheckArg::Example62 => {
            if field != Field::Prime(2) {
                return Err(Failure::config("InvalidParameter", "example62 needs --field f2"));
            }
            let ks = parse_components(c, &(-4..=4).collect::<Vec<_>>())?;
            check_example62(n, &ks, c.cutoff, args.reading.into())?
        }
        CheckArg::Injectivity => {
            check_injectivity(n, field, &parse_components(c, &(0..=4).collect::<Vec<_>>())?, c.cutoff)?
        }
        CheckArg::All => unreachable!("expanded by the caller"),
    };
    Ok(report)
}

/// Checks `all` expands to: those whose parameters are available.
fn expand_all(args: &VerifyArgs, field: Field) -> Vec<CheckArg> {
    let prime = field != Field::Rational;
    let mut checks = Vec::new();
    if prime {
        checks.push(CheckArg::Collapse);
        if args.k.is_some() {
            checks.push(CheckArg::Periodicity);
        }
    }
    checks.push(CheckArg::Dichotomy);
    if prime && args.k.is_some_and(|k| k >= 1) {
        checks.push(CheckArg::Unit);
    }
    if field == Field::Prime(2) && args.common.n.is_multiple_of(2) {
        checks.push(CheckArg::Example62);
    }
    checks.push(CheckArg::Injectivity);
    checks
}

fn verify(args: &VerifyArgs) -> Result<(), Failure> {
    let field = parse_field(&args.common.field)?;
    check_cutoff(args.common.cutoff)?;
    if args.format == Format::Csv {
        return Err(Failure::config("InvalidFormat", "verify writes text or json"));
    }
    let checks = match args.check {
        CheckArg::All => expand_all(args, field),
        one => vec![one],
    };
    let mut out = String::new();
    let mut failed = 0;
    for check in checks {
        let report = run_check(check, args, field)?;
        if report.verdict == Verdict::Fail {
            failed += 1;
        }
        out.push_str(&match args.format {
            Format::Json => render::report_json(&report, args.details),
            _ => render::report_text(&report, args.details),
        });
    }
    emit(args.common.output.as_deref(), &out)?;
    if failed > 0 {
        Err(Failure::ChecksFailed(failed))
    } else {
        Ok(())
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    configure_threads()?;
    match &cli.command {
        Command::Compute(args) => compute(args, false),
        Command::Export(args) => compute(args, true),
        Command::Verify(args) => verify(args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => e.exit(),
        Err(e) => {
            let text = e.to_string();
            let message: Vec<&str> = text
                .lines()
                .map(str::trim)
                .take_while(|l| !l.starts_with("Usage:") && !l.starts_with("For more information"))
                .filter(|l| !l.is_empty())
                .collect();
            let message = message.join(" ").trim_start_matches("error: ").to_string();
            eprintln!("{}", Failure::config("Usage", message).diagnostic());
            return ExitCode::from(2);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("{}", failure.diagnostic());
            ExitCode::from(failure.exit_code())
        }
    }
}
