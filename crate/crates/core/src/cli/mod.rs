//! The `qdual` command line.
//!
//! Exit codes: 0 on success, 1 when a comparison or verification fails,
//! 2 on usage, parse and evaluation errors.

mod lang;

use std::io::Write;
use std::path::Path;
use std::sync::Arc;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use crate::checks::{self, SuiteConfig, DEFAULT_SEED};
use crate::superalgebra::{
    builtin, load_presentation, Algebra, Descriptor, RenderStyle, BUILTIN_NAMES,
};
use crate::supermatrix::{closed_form_even, closed_form_odd, SuperMatrix};

pub use lang::{eval, evaluate, parse, print, LangError, SCALAR_VAR};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "qdual",
    version,
    about = "Exact normal forms and identity checks for dual supermatrices of GL_q(1|1)"
)]
struct Cli {
    /// Render with Greek letters and superscripts.
    #[arg(long, global = true, conflicts_with = "latex")]
    unicode: bool,
    /// Render as LaTeX math-mode text.
    #[arg(long, global = true)]
    latex: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Normal form of an expression.
    Nf {
        /// Built-in algebra name or path to a TOML descriptor.
        #[arg(long, default_value = "dual")]
        algebra: String,
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Entries of the n-th power of the generic dual matrix.
    #[command(group(ArgGroup::new("mode").args(["closed_form", "direct", "compare"])))]
    Matpow {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        /// Use the closed forms for odd and even powers.
        #[arg(long)]
        closed_form: bool,
        /// Multiply out repeatedly (the default).
        #[arg(long)]
        direct: bool,
        /// Print both and whether they agree.
        #[arg(long)]
        compare: bool,
    },
    /// Two-sided inverse of the generic dual matrix.
    Inverse,
    /// Superdeterminant of the generic dual matrix.
    Sdet {
        /// Print c^2 Delta_2^-1 instead of b^2 Delta_1^-1.
        #[arg(long)]
        second: bool,
    },
    /// Run the verification suite.
    Verify {
        #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u32).range(1..))]
        max_n: u32,
        /// Comma-separated check ids.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<String>>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
        /// Record elapsed time per check.
        #[arg(long)]
        timing: bool,
    },
    /// Print the stated rules of an algebra as a TOML descriptor.
    Algebra {
        #[arg(default_value = "dual")]
        name: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Text,
    Machine,
}

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let style = match (cli.unicode, cli.latex) {
        (true, _) => RenderStyle::Unicode,
        (_, true) => RenderStyle::Latex,
        _ => RenderStyle::Ascii,
    };
    match dispatch(cli.command, style, out) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, style: RenderStyle, out: &mut dyn Write) -> Result<i32, String> {
    let mut emit = |text: &str| writeln!(out, "{text}").map_err(|e| e.to_string());
    match command {
        Command::Nf { algebra, expr } => {
            let alg = resolve_algebra(&algebra)?;
            let x = evaluate(&expr, &alg).map_err(|e| e.to_string())?;
            emit(&print(&x, style))?;
            Ok(EXIT_OK)
        }
        Command::Matpow {
            n,
            closed_form,
            compare,
            ..
        } => {
            let m = generic_dual()?;
            let direct = || m.power(n).map_err(|e| e.to_string());
            let closed = || closed_form_power(&m, n);
            if compare {
                let (lhs, rhs) = (closed()?, direct()?);
                emit("closed form:")?;
                emit(&lhs.render(style))?;
                emit("direct:")?;
                emit(&rhs.render(style))?;
                if lhs == rhs {
                    emit("equal")?;
                    return Ok(EXIT_OK);
                }
                emit("differ")?;
                emit("closed form - direct:")?;
                emit(
                    &lhs.difference(&rhs)
                        .map_err(|e| e.to_string())?
                        .render(style),
                )?;
                return Ok(EXIT_FAILED);
            }
            let x = if closed_form { closed()? } else { direct()? };
            emit(&x.render(style))?;
            Ok(EXIT_OK)
        }
        Command::Inverse => {
            let inv = generic_dual()?.left_inverse().map_err(|e| e.to_string())?;
            emit(&inv.render(style))?;
            Ok(EXIT_OK)
        }
        Command::Sdet { second } => {
            let m = generic_dual()?;
            let x = if second { m.sdet_second() } else { m.sdet() }.map_err(|e| e.to_string())?;
            emit(&print(&x, style))?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            max_n,
            only,
            seed,
            format,
            timing,
        } => {
            let config = SuiteConfig {
                max_n,
                only,
                seed,
                timing,
            };
            let reports = checks::run_suite(&config).map_err(|e| e.to_string())?;
            let text = match format {
                ReportFormat::Text => checks::render_text(&reports),
                ReportFormat::Machine => checks::render_machine(&reports),
            };
            emit(text.trim_end_matches('\n'))?;
            Ok(if checks::all_passed(&reports) {
                EXIT_OK
            } else {
                EXIT_FAILED
            })
        }
        Command::Algebra { name } => {
            let alg = resolve_algebra(&name)?;
            emit(
                Descriptor::from_presentation(&alg)
                    .to_toml()
                    .trim_end_matches('\n'),
            )?;
            Ok(EXIT_OK)
        }
    }
}

/// A built-in name, or else a descriptor file.
fn resolve_algebra(name: &str) -> Result<Algebra, String> {
    if BUILTIN_NAMES.contains(&name) {
        return builtin(name).map_err(|e| e.to_string());
    }
    let path = Path::new(name);
    if !path.is_file() {
        return Err(format!(
            "unknown algebra `{name}` (built-ins: {})",
            BUILTIN_NAMES.join(", ")
        ));
    }
    let text = std::fs::read_to_string(path).map_err(|e| format!("{name}: {e}"))?;
    let p = load_presentation(&text).map_err(|e| format!("{name}: {e}"))?;
    Ok(Arc::new(p))
}

fn generic_dual() -> Result<SuperMatrix, String> {
    let alg = builtin("dual").map_err(|e| e.to_string())?;
    SuperMatrix::dual_generic(&alg, "").map_err(|e| e.to_string())
}

fn closed_form_power(m: &SuperMatrix, n: u32) -> Result<SuperMatrix, String> {
    let alg = m.algebra();
    let x = if n % 2 == 1 {
        closed_form_odd(alg, n.div_ceil(2))
    } else {
        closed_form_even(alg, n / 2)
    };
    x.map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests;
