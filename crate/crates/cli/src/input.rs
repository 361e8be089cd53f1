use std::path::Path;

use serde_json::Value;

use crate::CliError;

pub const DEFAULT_MAX_N: usize = 12;

/// Read `arg` as a file if one exists at that path, otherwise parse it as
/// inline JSON.
pub fn parse_input(arg: &str) -> Result<Value, CliError> {
    let path = Path::new(arg);
    let text = if path.is_file() {
        std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{arg}: {e}")))?
    } else {
        let trimmed = arg.trim_start();
        if !(trimmed.starts_with('{') || trimmed.starts_with('[')) {
            return Err(CliError::Schema(format!("input {arg:?} is neither a file nor inline JSON")));
        }
        arg.to_string()
    };
    serde_json::from_str(&text).map_err(|e| CliError::Schema(format!("invalid JSON: {e}")))
}

/// Size cap from `CHOW_MAX_N`.
pub fn max_n() -> Result<usize, CliError> {
    match std::env::var("CHOW_MAX_N") {
        Err(_) => Ok(DEFAULT_MAX_N),
        Ok(s) => s.trim().parse().map_err(|_| CliError::Schema(format!("CHOW_MAX_N must be a natural number, found {s:?}"))),
    }
}

pub(crate) fn check_cap(n: usize, cap: usize) -> Result<(), CliError> {
    if n > cap {
        Err(CliError::precondition("CHOW_MAX_N", format!("size {n} exceeds CHOW_MAX_N = {cap}")))
    } else {
        Ok(())
    }
}
