use std::fmt::Write as _;
use std::path::Path;

use super::{GeodesicClass, LengthSpectrum};
use crate::error::{Error, Result};
use crate::group::{HomologyVector, Word};

pub const FORMAT_VERSION: u32 = 1;
const MAGIC: &str = "HYPSPEC";
const FOOTER: &str = "END";

/// Formats `x` in positional notation with 17 significant digits.
fn sig17(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exponent = x.abs().log10().floor() as i32;
    let decimals = (16 - exponent).max(0) as usize;
    format!("{x:.decimals$}")
}

pub fn spectrum_to_string(spec: &LengthSpectrum) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{MAGIC} v{} {} {}", spec.format_version, spec.gens_label, spec.l_max);
    for c in &spec.classes {
        let homology: Vec<String> = c.homology.entries().iter().map(|x| x.to_string()).collect();
        let _ = writeln!(
            out,
            "{} {} {} {:+} {}",
            c.normal_form.to_index_string(),
            sig17(c.length),
            homology.join(" "),
            c.sigma,
            c.trace
        );
    }
    let _ = writeln!(out, "{FOOTER} {}", spec.classes.len());
    out
}

/// Writes the cache atomically (temporary file, then rename).
pub fn write_spectrum(spec: &LengthSpectrum, path: &Path) -> Result<()> {
    let tmp = path.with_extension("tmp-write");
    std::fs::write(&tmp, spectrum_to_string(spec))?;
    std::fs::rename(&tmp, path)?;
    Ok(())
}

pub fn read_spectrum(path: &Path) -> Result<LengthSpectrum> {
    spectrum_from_str(&std::fs::read_to_string(path)?)
}

fn corrupt(line: usize, reason: impl Into<String>) -> Error {
    Error::CorruptRecord { line, reason: reason.into() }
}

/// Parses a cache and validates every spectrum invariant.
pub fn spectrum_from_str(text: &str) -> Result<LengthSpectrum> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let (_, header) = lines.next().ok_or_else(|| corrupt(1, "empty file"))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 4 || fields[0] != MAGIC {
        return Err(corrupt(1, "malformed header"));
    }
    if fields[1] != format!("v{FORMAT_VERSION}") {
        return Err(Error::FormatVersionMismatch { found: fields[1].to_string(), expected: FORMAT_VERSION });
    }
    let gens_label = fields[2].to_string();
    let l_max: f64 = fields[3].parse().map_err(|_| corrupt(1, "malformed length cutoff"))?;

    let mut classes = Vec::new();
    let mut genus = None;
    let mut footer = None;
    for (line_no, line) in lines.by_ref() {
        if let Some(count) = line.strip_prefix(FOOTER) {
            let count: usize = count.trim().parse().map_err(|_| corrupt(line_no, "malformed record count"))?;
            footer = Some((line_no, count));
            break;
        }
        let class = parse_record(line_no, line, &mut genus)?;
        classes.push(class);
    }
    let Some((footer_line, count)) = footer else {
        return Err(corrupt(text.lines().count() + 1, "missing end marker (truncated file)"));
    };
    if count != classes.len() {
        return Err(corrupt(footer_line, format!("end marker announces {count} records, found {}", classes.len())));
    }
    if let Some((extra_line, _)) = lines.find(|(_, l)| !l.trim().is_empty()) {
        return Err(corrupt(extra_line, "content after end marker"));
    }
    let spec = LengthSpectrum { gens_label, l_max, classes, format_version: FORMAT_VERSION };
    spec.validate()?;
    Ok(spec)
}

fn parse_record(line_no: usize, line: &str, genus: &mut Option<usize>) -> Result<GeodesicClass> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() < 6 {
        return Err(corrupt(line_no, "too few fields"));
    }
    let normal_form = Word::parse_index_string(fields[0]).ok_or_else(|| corrupt(line_no, "malformed word"))?;
    if normal_form.is_empty() {
        return Err(corrupt(line_no, "empty word"));
    }
    let length: f64 = fields[1].parse().map_err(|_| corrupt(line_no, "malformed length"))?;
    let dims = fields.len() - 4;
    if dims % 2 != 0 {
        return Err(corrupt(line_no, "homology vector has odd dimension"));
    }
    match genus {
        Some(g) if *g * 2 != dims => return Err(corrupt(line_no, "homology dimension changes between records")),
        _ => *genus = Some(dims / 2),
    }
    let homology = fields[2..2 + dims]
        .iter()
        .map(|s| s.parse::<i64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| corrupt(line_no, "malformed homology entry"))?;
    let sigma: i8 = match fields[2 + dims] {
        "+1" | "1" => 1,
        "-1" => -1,
        _ => return Err(corrupt(line_no, "sigma must be +1 or -1")),
    };
    let trace: f64 = fields[3 + dims].parse().map_err(|_| corrupt(line_no, "malformed trace"))?;
    if !length.is_finite() || !trace.is_finite() {
        return Err(corrupt(line_no, "non-finite number"));
    }
    Ok(GeodesicClass { normal_form, length, homology: HomologyVector(homology), sigma, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GeneratorSet;
    use crate::spectrum::enumerate_classes;

    fn sample() -> LengthSpectrum {
        enumerate_classes(&GeneratorSet::bolza(), 4.0).unwrap()
    }

    #[test]
    fn seventeen_digits() {
        assert_eq!(sig17(3.057141838961996), "3.0571418389619960");
        assert_eq!(sig17(12.5), "12.500000000000000");
        assert_eq!(sig17(0.25), "0.25000000000000000");
    }

    #[test]
    fn round_trip() {
        let s = sample();
        let text = spectrum_to_string(&s);
        assert_eq!(spectrum_from_str(&text).unwrap(), s);
    }

    #[test]
    fn truncation_is_detected() {
        let text = spectrum_to_string(&sample());
        let cut: Vec<&str> = text.lines().collect();
        let truncated = cut[..cut.len() - 3].join("\n");
        assert!(matches!(spectrum_from_str(&truncated), Err(Error::CorruptRecord { .. })));
        let half_line = &text[..text.len() / 2];
        assert!(matches!(spectrum_from_str(half_line), Err(Error::CorruptRecord { .. })));
    }

    #[test]
    fn edited_length_is_an_invariant_violation() {
        let text = spectrum_to_string(&sample());
        let mut lines: Vec<String> = text.lines().map(String::from).collect();
        let mut fields: Vec<String> = lines[1].split_whitespace().map(String::from).collect();
        fields[1] = "3.0600000000000000".into();
        lines[1] = fields.join(" ");
        let edited = lines.join("\n");
        assert!(matches!(spectrum_from_str(&edited), Err(Error::InvariantViolation(_))));
    }

    #[test]
    fn other_version_is_rejected() {
        let text = spectrum_to_string(&sample()).replacen("v1", "v2", 1);
        assert!(matches!(spectrum_from_str(&text), Err(Error::FormatVersionMismatch { .. })));
    }
}
