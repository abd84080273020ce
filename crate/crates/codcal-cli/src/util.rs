//! Shared CLI plumbing: exit-code classification, atomic file writes, and
//! significant-digit formatting.

use std::path::{Path, PathBuf};

/// CLI failure with its exit code: 1 for runtime failures, 2 for
/// usage/config errors.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Runtime(String),
}

impl CliError {
    pub fn usage(msg: impl std::fmt::Display) -> Self {
        CliError::Usage(msg.to_string())
    }

    pub fn runtime(msg: impl std::fmt::Display) -> Self {
        CliError::Runtime(msg.to_string())
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Runtime(m) => m,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Input-loading errors are usage errors (exit 2).
pub fn as_usage(err: impl std::fmt::Display) -> CliError {
    CliError::Usage(err.to_string())
}

/// Writes atomically: temp file in the target directory, then rename, so
/// partial results never bear final names.
pub fn write_atomic(path: &Path, contents: &str) -> CliResult<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    let mut tmp = PathBuf::from(dir);
    let file_name = path
        .file_name()
        .ok_or_else(|| CliError::usage(format!("invalid output path {}", path.display())))?;
    tmp.push(format!(".{}.tmp", file_name.to_string_lossy()));
    std::fs::write(&tmp, contents)
        .map_err(|e| CliError::runtime(format!("cannot write {}: {e}", tmp.display())))?;
    std::fs::rename(&tmp, path)
        .map_err(|e| CliError::runtime(format!("cannot rename to {}: {e}", path.display())))?;
    Ok(())
}

/// Formats with the given number of significant digits, plain decimal within
/// a reasonable magnitude range and scientific outside it.
pub fn format_sig(x: f64, sig: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if exp < -4 || exp >= sig as i32 {
        format!("{:.*e}", sig - 1, x)
    } else {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        format!("{:.*}", decimals, x)
    }
}
