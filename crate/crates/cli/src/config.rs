//! `key=value` configuration files and the `#`-prefixed metadata header of
//! output files, which share one format so a header can be replayed.

use std::ffi::OsString;
use std::fs;
use std::path::Path;

use crate::args::COMMANDS;
use crate::error::CliError;

/// Parsed `key=value` pairs, in file order. Lines may carry a leading `#`;
/// reading stops at the first line that is neither blank, `#`-prefixed nor
/// a pair, so CSV data after a header is ignored.
pub fn read_pairs(text: &str) -> Vec<(String, String)> {
    let mut pairs = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        let body = line.strip_prefix('#').map(str::trim);
        let content = body.unwrap_or(line);
        match content.split_once('=') {
            Some((k, v)) => pairs.push((k.trim().to_string(), v.trim().to_string())),
            None if line.is_empty() || body.is_some() => {}
            None => break,
        }
    }
    pairs
}

/// Splice the flags of a `--config` file into `argv` right after the
/// subcommand, so that later command-line flags override them.
pub fn expand(argv: Vec<OsString>) -> Result<Vec<OsString>, CliError> {
    let mut rest = Vec::with_capacity(argv.len());
    let mut config = None;
    let mut iter = argv.into_iter();
    rest.extend(iter.next());
    while let Some(arg) = iter.next() {
        let s = arg.to_string_lossy();
        if s == "--config" {
            config = Some(iter.next().ok_or_else(|| CliError::Usage("--config needs a file".into()))?);
        } else if let Some(path) = s.strip_prefix("--config=") {
            config = Some(OsString::from(path));
        } else {
            rest.push(arg);
        }
    }
    let Some(path) = config else {
        return Ok(rest);
    };
    let text = fs::read_to_string(Path::new(&path))
        .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", Path::new(&path).display())))?;
    let Some(at) = rest.iter().position(|a| COMMANDS.contains(&a.to_string_lossy().as_ref())) else {
        return Err(CliError::Usage("--config needs a subcommand".into()));
    };
    let command = rest[at].to_string_lossy().into_owned();
    let mut flags = Vec::new();
    for (key, value) in read_pairs(&text) {
        match key.as_str() {
            "tool" => {}
            "command" if value == command => {}
            "command" => {
                return Err(CliError::Usage(format!("config is for `{value}`, not `{command}`")));
            }
            _ => match value.as_str() {
                "true" => flags.push(OsString::from(format!("--{key}"))),
                "false" => {}
                _ => flags.push(OsString::from(format!("--{key}={value}"))),
            },
        }
    }
    rest.splice(at + 1..at + 1, flags);
    Ok(rest)
}

/// Metadata header: tool version, command and the full effective flag set.
pub fn header(command: &str, pairs: &[(&str, String)]) -> String {
    let mut h = format!("# tool=fresnel {}\n# command={command}\n", env!("CARGO_PKG_VERSION"));
    for (k, v) in pairs {
        h.push_str(&format!("# {k}={v}\n"));
    }
    h
}
