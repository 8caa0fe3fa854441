//! File IO and error plumbing for the command line.
//!
//! A [`CliError`] is a usage-level failure — malformed files, bad flags,
//! inputs outside the supported shape — and maps to exit code 2. It is kept
//! strictly distinct from a mathematical failure, which is carried inside a
//! suite report and maps to exit code 1, so that "the input was unusable"
//! and "the identity is false" can never be confused.

use serde::de::DeserializeOwned;
use serde::Serialize;
use std::fmt;
use std::fs;
use std::path::Path;
use zhuforge_core::{
    algebra_from_json, module_from_json, voa_from_json, AlgebraJson, AssocAlgebra, ModuleJson,
    TruncatedModule, TruncatedVoa, VoaJson,
};

#[derive(Debug)]
pub struct CliError(pub String);

pub type CliResult<T> = Result<T, CliError>;

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<zhuforge_core::Error> for CliError {
    fn from(e: zhuforge_core::Error) -> CliError {
        CliError(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError(e.to_string())
    }
}

pub fn usage(msg: impl Into<String>) -> CliError {
    CliError(msg.into())
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    text.push('\n');
    fs::write(path, text).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    Ok(())
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    Ok(())
}

/// Loads an algebra file, optionally retruncating to a smaller cutoff.
pub fn load_voa(path: &Path, cutoff: Option<usize>) -> CliResult<TruncatedVoa> {
    let j: VoaJson = read_json(path)?;
    let v = voa_from_json(&j).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    match cutoff {
        Some(n) => retruncate(v, n, path),
        None => Ok(v),
    }
}

pub fn retruncate(v: TruncatedVoa, n: usize, path: &Path) -> CliResult<TruncatedVoa> {
    if n == v.cutoff() {
        return Ok(v);
    }
    if n > v.cutoff() {
        return Err(CliError(format!(
            "{}: stored cutoff {} is below the requested cutoff {n}; rebuild the input at the \
             larger cutoff",
            path.display(),
            v.cutoff()
        )));
    }
    Ok(v.truncate(n)?)
}

/// Loads a module file over an already-loaded algebra. Modules carry their
/// action against one specific basis, so the level cutoff must match the
/// request exactly — retruncation would require rebuilding the table.
pub fn load_module(
    voa: &TruncatedVoa,
    path: &Path,
    cutoff: Option<usize>,
) -> CliResult<TruncatedModule> {
    let j: ModuleJson = read_json(path)?;
    // A module's action table is tied to the basis it was built over, so it
    // is never retruncated; check the stored cutoff before decoding against
    // the (possibly retruncated) acting algebra so the mismatch is named.
    if let Some(n) = cutoff {
        if j.cutoff != n {
            return Err(CliError(format!(
                "{}: module is stored at level cutoff {}, not the requested {n}; rebuild it at \
                 the requested cutoff",
                path.display(),
                j.cutoff
            )));
        }
    }
    if j.cutoff != voa.cutoff() {
        return Err(CliError(format!(
            "{}: module is stored at level cutoff {} but {} is truncated at {}; rebuild both at \
             the same cutoff",
            path.display(),
            j.cutoff,
            voa.name(),
            voa.cutoff()
        )));
    }
    let m = module_from_json(voa, &j).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    if !m.compatible_with(voa) {
        return Err(CliError(format!(
            "{}: module was built over a different algebra basis than {}; rebuild both at the \
             same cutoff",
            path.display(),
            voa.name()
        )));
    }
    Ok(m)
}

pub fn load_algebra(path: &Path) -> CliResult<AssocAlgebra> {
    let j: AlgebraJson = read_json(path)?;
    algebra_from_json(&j).map_err(|e| CliError(format!("{}: {e}", path.display())))
}
