use std::io::Write;

use serde::Serialize;

use hypspec::flux::{FluxIndex, FluxSpec};
use hypspec::group::GeneratorSet;
use hypspec::kernels::{i_fq, rmt_density, EnsembleKind, SpectralKind, TestFunction, WindowParams};
use hypspec::rmt::{statistic_variance, EnsembleSpec, Sampler};
use hypspec::spectrum::{
    enumerate_classes_with, read_spectrum, spectrum_to_string, write_spectrum, EnumerationOptions, LengthSpectrum,
};
use hypspec::stats::{mc_flux_experiment, McOptions, OperatorKind, StatReport};

use crate::args::*;
use crate::error::{CliError, CliResult};
use crate::output::{content_hash, csv_document, to_json, write_file, Artifact, SpectrumProvenance, TOOL};

/// Global output settings.
pub struct Session {
    pub quiet: bool,
    pub json: bool,
    pub workers: Option<usize>,
}

impl Session {
    fn note(&self, message: impl AsRef<str>) {
        if !self.quiet && !self.json {
            eprintln!("{}", message.as_ref());
        }
    }

    fn print(&self, text: &str) {
        let mut stdout = std::io::stdout().lock();
        let _ = stdout.write_all(text.as_bytes());
    }

    fn emit<C: Serialize, R: Serialize>(
        &self,
        command: &'static str,
        config: &C,
        spectrum: Option<&SpectrumProvenance>,
        result: &R,
        human: impl FnOnce() -> String,
    ) -> CliResult<String> {
        let document = to_json(&Artifact { tool: TOOL, command, config, spectrum, result })?;
        if self.json {
            self.print(&document);
        } else if !self.quiet {
            self.print(&human());
        }
        Ok(document)
    }
}

fn parse_q(text: &str) -> CliResult<FluxIndex> {
    text.parse().map_err(|e: hypspec::Error| CliError::config("q", e.to_string()))
}

fn test_function(args: &TestFunctionArgs) -> CliResult<TestFunction> {
    if !(args.tol > 0.0) {
        return Err(CliError::config("tol", format!("must be positive, got {}", args.tol)));
    }
    let tf = match args.family {
        FamilyArg::Bump => TestFunction::bump(args.a),
        FamilyArg::Fejer => TestFunction::fejer(args.a),
    }
    .map_err(|e| CliError::config("A", e.to_string()))?;
    Ok(tf.with_tolerance(args.tol))
}

fn window(l: f64, tau: f64) -> CliResult<WindowParams> {
    if !(l >= 2.0) {
        return Err(CliError::config("L", format!("must be at least 2, got {l}")));
    }
    if !(tau > 0.0) {
        return Err(CliError::config("tau", format!("must be positive, got {tau}")));
    }
    Ok(WindowParams::new(l, tau)?)
}

fn ensemble(kind: EnsembleArg) -> EnsembleKind {
    match kind {
        EnsembleArg::Goe => EnsembleKind::Goe,
        EnsembleArg::Gue => EnsembleKind::Gue,
        EnsembleArg::Gse => EnsembleKind::Gse,
    }
}

fn operator(op: OperatorArg) -> SpectralKind {
    match op {
        OperatorArg::Laplace => SpectralKind::Laplace,
        OperatorArg::Dirac => SpectralKind::Dirac,
    }
}

/// Parses `x` or `start:step:end` into an inclusive list of values.
pub fn parse_range(field: &'static str, text: &str) -> CliResult<Vec<f64>> {
    let number = |s: &str| {
        s.trim().parse::<f64>().map_err(|_| CliError::config(field, format!("'{s}' is not a number")))
    };
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [single] => Ok(vec![number(single)?]),
        [start, step, end] => {
            let (start, step, end) = (number(start)?, number(step)?, number(end)?);
            if !(step > 0.0) || end < start {
                return Err(CliError::config(field, format!("range '{text}' needs step > 0 and end >= start")));
            }
            let count = ((end - start) / step + 1e-9).floor() as usize + 1;
            if count > 100_000 {
                return Err(CliError::config(field, format!("range '{text}' has too many points")));
            }
            Ok((0..count).map(|k| start + step * k as f64).collect())
        }
        _ => Err(CliError::config(field, format!("expected a value or start:step:end, got '{text}'"))),
    }
}

fn load_generators(spec: &str) -> CliResult<GeneratorSet> {
    GeneratorSet::load(spec).map_err(|e| match e {
        hypspec::Error::Io(source) => CliError::Io { path: spec.into(), source },
        other => other.into(),
    })
}

/// Reads the cache file or enumerates from the generators, and returns the
/// spectrum with its provenance.
fn obtain_spectrum(session: &Session, args: &SpectrumArgs, cutoff: f64) -> CliResult<(LengthSpectrum, SpectrumProvenance)> {
    let (spectrum, source) = match &args.spectrum {
        Some(path) => {
            let spectrum = read_spectrum(path).map_err(|e| match e {
                hypspec::Error::Io(source) => CliError::Io { path: path.clone(), source },
                other => other.into(),
            })?;
            (spectrum, path.display().to_string())
        }
        None => {
            let gens = load_generators(&args.gens)?;
            session.note(format!("enumerating geodesics of '{}' up to length {cutoff}", gens.label()));
            let opts = EnumerationOptions { workers: session.workers, ..Default::default() };
            (enumerate_classes_with(&gens, cutoff, &opts)?, format!("enumerated:{}", args.gens))
        }
    };
    spectrum.require(cutoff)?;
    let provenance = SpectrumProvenance {
        source,
        sha256: content_hash(&spectrum_to_string(&spectrum)),
        classes: spectrum.len(),
        l_max: spectrum.l_max,
    };
    Ok((spectrum, provenance))
}

pub fn enumerate(session: &Session, args: &EnumerateArgs) -> CliResult<()> {
    let gens = load_generators(&args.gens)?;
    let opts = EnumerationOptions { workers: session.workers, ..Default::default() };
    let spectrum = enumerate_classes_with(&gens, args.l_max, &opts)?;
    write_spectrum(&spectrum, &args.out).map_err(|e| match e {
        hypspec::Error::Io(source) => CliError::Io { path: args.out.clone(), source },
        other => other.into(),
    })?;
    let provenance = SpectrumProvenance {
        source: args.out.display().to_string(),
        sha256: content_hash(&spectrum_to_string(&spectrum)),
        classes: spectrum.len(),
        l_max: spectrum.l_max,
    };
    let systole = spectrum.systole();
    session.emit("enumerate", args, Some(&provenance), &systole, || {
        format!(
            "{} primitive classes up to length {} written to {}\nsystole {}\nsha256 {}\n",
            provenance.classes,
            args.l_max,
            args.out.display(),
            systole.map_or("none".into(), |s| format!("{s:.12}")),
            provenance.sha256
        )
    })?;
    Ok(())
}

#[derive(Serialize)]
struct IfqResult {
    value: f64,
    error: f64,
}

pub fn ifq(session: &Session, args: &IfqArgs) -> CliResult<()> {
    let tf = test_function(&args.test_function)?;
    let w = window(args.l, args.tau)?;
    let q = parse_q(&args.q)?;
    let v = i_fq(&tf, &w, q)?;
    let result = IfqResult { value: v.value, error: v.error };
    session.emit("ifq", args, None, &result, || format!("{:.15e} ± {:.1e}\n", result.value, result.error))?;
    Ok(())
}

pub fn density(session: &Session, args: &DensityArgs) -> CliResult<()> {
    let tf = test_function(&args.test_function)?;
    let value = rmt_density(&tf, ensemble(args.kind))?;
    session.emit("density", args, None, &value, || format!("{value:.15e}\n"))?;
    Ok(())
}

fn stat_report(
    spectrum: &LengthSpectrum,
    tf: &TestFunction,
    sampling: &SamplingArgs,
    l: f64,
    tau: f64,
    workers: Option<usize>,
) -> CliResult<StatReport> {
    let q = parse_q(&sampling.q)?;
    let op = OperatorKind::for_flux(operator(sampling.op), q)?;
    if sampling.samples < 2 {
        return Err(CliError::config("samples", "at least two samples are needed"));
    }
    let genus = spectrum.genus().unwrap_or(2);
    let flux = FluxSpec::new(q, genus)?;
    let w = window(l, tau)?;
    let opts = McOptions { workers, ..McOptions::new(sampling.samples, sampling.seed) };
    Ok(mc_flux_experiment(spectrum, &flux, tf, &w, &op, &opts)?)
}

fn csv_row(r: &StatReport) -> String {
    format!(
        "{},{},{},{},{},{:e},{:e},{:e},{:e},{:e},{},{},{}",
        r.q, r.support, r.l, r.tau, r.operator, r.exact_variance, r.mc_variance, r.mc_variance_se, r.reference_variance, r.ifq,
        r.sample_count, r.seed, r.cutoff_nl
    )
}

pub fn variance(session: &Session, args: &VarianceArgs) -> CliResult<()> {
    let tf = test_function(&args.test_function)?;
    parse_q(&args.sampling.q)?;
    window(args.l, args.tau)?;
    let (spectrum, provenance) = obtain_spectrum(session, &args.spectrum, tf.support() * args.l)?;
    let report = stat_report(&spectrum, &tf, &args.sampling, args.l, args.tau, session.workers)?;
    let document = session.emit("variance", args, Some(&provenance), &report, || {
        format!(
            "exact mean      {:.10e}\nexact variance  {:.10e}\nMC variance     {:.10e} ± {:.2e} ({} samples)\nreference ({})  {:.10e}  [large-genus prediction, heuristic here]\n",
            report.exact_mean[0],
            report.exact_variance,
            report.mc_variance,
            report.mc_variance_se,
            report.sample_count,
            report.reference_ensemble,
            report.reference_variance
        )
    })?;
    if let Some(path) = &args.out {
        write_file(path, &document)?;
    }
    if let Some(path) = &args.csv {
        write_file(path, &csv_document(args, &provenance, &[csv_row(&report)])?)?;
    }
    Ok(())
}

pub fn scan(session: &Session, args: &ScanArgs) -> CliResult<()> {
    let tf = test_function(&args.test_function)?;
    parse_q(&args.sampling.q)?;
    let ls = parse_range("L", &args.l)?;
    let taus = parse_range("tau", &args.tau)?;
    for &l in &ls {
        for &tau in &taus {
            window(l, tau)?;
        }
    }
    let max_l = ls.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let (spectrum, provenance) = obtain_spectrum(session, &args.spectrum, tf.support() * max_l)?;
    let mut rows = Vec::new();
    for &l in &ls {
        for &tau in &taus {
            session.note(format!("L = {l}, tau = {tau}"));
            let report = stat_report(&spectrum, &tf, &args.sampling, l, tau, session.workers)?;
            rows.push(csv_row(&report));
        }
    }
    let document = csv_document(args, &provenance, &rows)?;
    match &args.csv {
        Some(path) => {
            write_file(path, &document)?;
            session.note(format!("{} rows written to {}", rows.len(), path.display()));
        }
        None if !session.quiet => session.print(&document),
        None => {}
    }
    Ok(())
}

#[derive(Serialize)]
struct RmtResult {
    variance: f64,
    se: f64,
    reference: f64,
    ratio_to_reference: f64,
}

pub fn rmt(session: &Session, args: &RmtArgs) -> CliResult<()> {
    let kind = ensemble(args.kind);
    let spec = EnsembleSpec {
        kind,
        dimension: args.n,
        replicas: args.reps,
        window_center: args.center,
        window_width: args.w,
        sampler: if args.dense { Sampler::Dense } else { Sampler::Tridiagonal },
    };
    spec.validate().map_err(|e| CliError::config("n", e.to_string()))?;
    let tf = TestFunction::bump(args.a).map_err(|e| CliError::config("A", e.to_string()))?;
    let estimate = statistic_variance(&spec, &tf, args.seed, session.workers)?;
    let reference = rmt_density(&tf, kind)?;
    let result = RmtResult {
        variance: estimate.variance,
        se: estimate.se,
        reference,
        ratio_to_reference: estimate.variance / reference,
    };
    let document = session.emit("rmt", args, None, &result, || {
        format!(
            "{kind} variance {:.6e} ± {:.1e}; density {:.6e}; ratio {:.4}\n",
            result.variance, result.se, result.reference, result.ratio_to_reference
        )
    })?;
    if let Some(path) = &args.out {
        write_file(path, &document)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct ValidateResult {
    generators: hypspec::group::ValidationReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    spectrum_classes: Option<usize>,
}

pub fn validate(session: &Session, args: &ValidateArgs) -> CliResult<()> {
    let gens = load_generators(&args.gens)?;
    let report = gens.validate()?;
    let mut provenance = None;
    if let Some(path) = &args.spectrum {
        let (_, p) = obtain_spectrum(session, &SpectrumArgs { spectrum: Some(path.clone()), gens: args.gens.clone() }, 0.0)?;
        provenance = Some(p);
    }
    let result = ValidateResult { generators: report, spectrum_classes: provenance.as_ref().map(|p| p.classes) };
    session.emit("validate", args, provenance.as_ref(), &result, || {
        let mut text = format!("{}\n", result.generators);
        if let Some(p) = &provenance {
            text.push_str(&format!("spectrum {}: {} classes up to {}, PASS\n", p.source, p.classes, p.l_max));
        }
        text
    })?;
    Ok(())
}

