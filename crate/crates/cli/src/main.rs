use std::io::{self, BufRead, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cosupp_core::dsl::{parse_program, parse_with, ParseError, Program, Report, RunOptions, Session, Tok};
use cosupp_core::engine::EngineOptions;
use cosupp_core::kernel::MonomialOrder;

#[derive(Parser, Debug)]
#[command(name = "cosupp", version, about = "Decide cosupport of commutative noetherian rings and modules")]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,
    /// Start an interactive session (same as `cosupp repl`).
    #[arg(long)]
    repl: bool,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a program file; `-` reads standard input.
    Run { file: PathBuf },
    /// Read declarations and queries interactively.
    Repl,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Order {
    Lex,
    Grevlex,
}

#[derive(Args, Debug, Clone)]
struct Flags {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Include derivation traces.
    #[arg(long, global = true)]
    trace: bool,
    /// Monomial order for `gb` queries.
    #[arg(long, value_enum, default_value = "grevlex", global = true)]
    order: Order,
    /// Enable the conjecture-based inference rule.
    #[arg(long, global = true)]
    assume_gruson_jensen: bool,
    /// Reduction step budget per query.
    #[arg(long, value_name = "N", global = true)]
    max_steps: Option<u64>,
    /// Record wall-clock time per query (output is then not reproducible).
    #[arg(long, global = true)]
    timing: bool,
}

impl Flags {
    fn options(&self) -> RunOptions {
        RunOptions {
            engine: EngineOptions {
                assume_gruson_jensen: self.assume_gruson_jensen,
                max_steps: self.max_steps,
                ..EngineOptions::default()
            },
            order: match self.order {
                Order::Lex => MonomialOrder::Lex,
                Order::Grevlex => MonomialOrder::GrevLex,
            },
            trace: self.trace,
            timing: self.timing,
        }
    }
}

fn print_report(report: &Report, json: bool) {
    let mut out = io::stdout().lock();
    let text = if json { report.to_json_string() } else { report.to_text() };
    let _ = out.write_all(text.as_bytes());
    let _ = out.flush();
}

fn parse_failure(source: &str, e: &ParseError, flags: &Flags) {
    eprintln!("{source}:{e}");
    if flags.json {
        let body = serde_json::json!({
            "schema": cosupp_core::dsl::SCHEMA,
            "results": [],
            "diagnostics": [{"line": e.span.line, "column": e.span.col, "message": e.to_string()}],
            "errors": 1,
        });
        println!("{}", serde_json::to_string_pretty(&body).expect("serializes"));
    }
}

fn run_file(file: &PathBuf, flags: &Flags) -> ExitCode {
    let (source, text) = if file.as_os_str() == "-" {
        let mut s = String::new();
        if let Err(e) = io::stdin().read_to_string(&mut s) {
            eprintln!("error: reading standard input: {e}");
            return ExitCode::FAILURE;
        }
        ("<stdin>".to_string(), s)
    } else {
        match std::fs::read_to_string(file) {
            Ok(s) => (file.display().to_string(), s),
            Err(e) => {
                eprintln!("error: {}: {e}", file.display());
                return ExitCode::FAILURE;
            }
        }
    };
    let program: Program = match parse_program(&text) {
        Ok(p) => p,
        Err(e) => {
            parse_failure(&source, &e, flags);
            return ExitCode::FAILURE;
        }
    };
    let report = Session::new(flags.options()).run(&program);
    for d in &report.diagnostics {
        eprintln!("{source}:{}: {}", d.span, d.message);
    }
    for r in &report.results {
        if let Some(e) = r.fields.get("error") {
            eprintln!("{source}:{}: query {}: {}", r.span, r.query, e.as_str().unwrap_or_default());
        }
    }
    print_report(&report, flags.json);
    ExitCode::from(report.exit_code() as u8)
}

/// Whether a parse error only reflects input that is not finished yet.
fn incomplete(e: &ParseError, text: &str) -> bool {
    let lines = text.lines().count().max(1);
    e.span.line >= lines && e.msg == format!("unexpected {}", Tok::Eof)
}

fn repl(flags: &Flags) -> ExitCode {
    let mut session = Session::new(flags.options());
    let stdin = io::stdin();
    let mut buffer = String::new();
    let mut errors = 0usize;
    let prompt = |cont: bool| {
        eprint!("{}", if cont { "...> " } else { "cosupp> " });
        let _ = io::stderr().flush();
    };
    prompt(false);
    for line in stdin.lock().lines() {
        let Ok(line) = line else { break };
        let trimmed = line.trim();
        if buffer.is_empty() && matches!(trimmed, ":q" | ":quit" | "exit") {
            break;
        }
        buffer.push_str(&line);
        buffer.push('\n');
        if trimmed.is_empty() && buffer.trim().is_empty() {
            buffer.clear();
            prompt(false);
            continue;
        }
        match parse_with(&buffer, &session.known()) {
            Ok(program) => {
                let report = session.run(&program);
                for d in &report.diagnostics {
                    eprintln!("error: {}", d.message);
                }
                errors += report.errors();
                print_report(&report, flags.json);
                buffer.clear();
                prompt(false);
            }
            Err(e) if incomplete(&e, &buffer) => prompt(true),
            Err(e) => {
                eprintln!("{e}");
                errors += 1;
                buffer.clear();
                prompt(false);
            }
        }
    }
    eprintln!();
    if errors == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Some(Command::Run { file }) => run_file(file, &cli.flags),
        Some(Command::Repl) => repl(&cli.flags),
        None if cli.repl => repl(&cli.flags),
        None => {
            eprintln!("usage: cosupp run FILE [flags] | cosupp repl");
            ExitCode::FAILURE
        }
    }
}
