//! File and stream helpers shared by the subcommands.

use std::fs::{self, File};
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use bitext_forge::lang::LangScript;

use crate::error::{config_err, input_err, CliError, Result};

/// Where a streaming stage reads from: an explicit flag path, a config
/// default, or standard input.
pub fn open_input(path: Option<&Path>) -> Result<(Box<dyn BufRead>, String)> {
    match path {
        Some(path) => {
            let file = File::open(path)
                .map_err(|e| input_err(format!("input `{}`: {e}", path.display())))?;
            Ok((Box::new(BufReader::new(file)), path.display().to_string()))
        }
        None => Ok((Box::new(BufReader::new(io::stdin())), "stdin".to_string())),
    }
}

/// Where a stage writes to: a flag path or standard output.
pub fn open_output(path: Option<&Path>) -> Result<(Box<dyn Write>, String)> {
    match path {
        Some(path) => {
            let file = File::create(path)
                .map_err(|e| input_err(format!("output `{}`: {e}", path.display())))?;
            Ok((Box::new(BufWriter::new(file)), path.display().to_string()))
        }
        None => Ok((Box::new(BufWriter::new(io::stdout())), "stdout".to_string())),
    }
}

pub fn read_to_string(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| input_err(format!("`{}`: {e}", path.display())))
}

pub fn read_lines(path: &Path) -> Result<Vec<String>> {
    Ok(read_to_string(path)?.lines().map(str::to_string).collect())
}

/// Parses one float per line, naming the offending line on failure.
pub fn read_floats(path: &Path) -> Result<Vec<f64>> {
    read_lines(path)?
        .iter()
        .enumerate()
        .map(|(idx, line)| {
            line.trim().parse().map_err(|_| {
                input_err(format!(
                    "`{}` line {}: `{line}` is not a number",
                    path.display(),
                    idx + 1
                ))
            })
        })
        .collect()
}

/// Language codes arriving through flags are usage errors when invalid.
pub fn parse_lang_flag(code: &str) -> Result<LangScript> {
    LangScript::parse(code).map_err(|e| config_err(format!("--lang: {e}")))
}

/// A flag path wins over the config default.
pub fn resolve_path<'a>(
    flag: Option<&'a Path>,
    config_default: Option<&'a Path>,
) -> Option<&'a Path> {
    flag.or(config_default)
}

/// A required artifact path: flag, else config key, else a usage error
/// naming both spellings.
pub fn require_path(
    flag: Option<&Path>,
    config_default: Option<&Path>,
    flag_name: &str,
    config_key: &str,
) -> Result<PathBuf> {
    resolve_path(flag, config_default)
        .map(Path::to_path_buf)
        .ok_or_else(|| {
            config_err(format!("pass --{flag_name} or set config key `{config_key}`"))
        })
}

/// Wraps data-layer errors (parsing, mining, metrics) as input errors.
pub fn data_err(err: impl std::fmt::Display) -> CliError {
    input_err(err.to_string())
}

/// Writes all lines through, flushing at the end.
pub fn flush(mut out: Box<dyn Write>, what: &str) -> Result<()> {
    out.flush().map_err(|e| input_err(format!("writing {what}: {e}")))
}
