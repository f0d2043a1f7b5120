use std::fs;
use std::path::Path;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{CliError, CliResult};

/// SHA-256 of `blob <len>\0` followed by the content, as git computes
/// object ids in its SHA-256 mode.
pub fn content_hash(content: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(format!("blob {}\0", content.len()).as_bytes());
    hasher.update(content.as_bytes());
    hex::encode(hasher.finalize())
}

/// Identifies the length spectrum an artifact was computed from.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumProvenance {
    pub source: String,
    pub sha256: String,
    pub classes: usize,
    pub l_max: f64,
}

/// A machine-readable artifact: the command, its full configuration, the
/// spectrum used (if any) and the result.
#[derive(Serialize)]
pub struct Artifact<'a, C: Serialize, R: Serialize> {
    pub tool: &'static str,
    pub command: &'static str,
    pub config: &'a C,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<&'a SpectrumProvenance>,
    pub result: &'a R,
}

pub const TOOL: &str = concat!("hypspec ", env!("CARGO_PKG_VERSION"));

pub fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

pub fn write_file(path: &Path, content: &str) -> CliResult<()> {
    fs::write(path, content).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub const CSV_HEADER: &str = "q,A,L,tau,op,exact_var,mc_var,mc_se,ref_var,ifq,samples,seed,cutoff";

/// CSV document whose leading `#` lines record the configuration and the
/// spectrum hash.
pub fn csv_document<C: Serialize>(config: &C, spectrum: &SpectrumProvenance, rows: &[String]) -> CliResult<String> {
    let mut out = String::new();
    out.push_str(&format!("# {TOOL}\n"));
    out.push_str(&format!("# config {}\n", serde_json::to_string(config)?));
    out.push_str(&format!(
        "# spectrum {} sha256 {} classes {} l_max {}\n",
        spectrum.source, spectrum.sha256, spectrum.classes, spectrum.l_max
    ));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(row);
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_matches_git_object_format() {
        // `printf 'hello\n' | git hash-object --object-format=sha256 --stdin`
        assert_eq!(
            content_hash("hello\n"),
            "2cf8d83d9ee29543b34a87727421fdecb7e3f3a183d337639025de576db9ebb4"
        );
    }
}
