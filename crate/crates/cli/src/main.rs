//! `unirule`: certify non-uniruledness of explicit complete intersections
//! over small finite fields, compute criterion coefficients and point
//! counts, scan Fermat congruences, and print codimension bounds.
//!
//! Exit codes: 0 for any completed computation (inconclusive verdicts
//! included), 1 for input errors, 2 for budget or internal-consistency
//! failures.

mod args;
mod config;
mod output;

use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::Parser;

use args::{BoundsArgs, Cli, Command, FormatArg, ScanArgs, SmoothnessArg, VarietyArgs};
use config::{ConfigError, FileConfig};

use unirule_core::bounds::{codimension_bounds, BoundsError};
use unirule_core::certify::{
    certify_not_uniruled, hasse_certify, CISpec, CertifyError, CertifyOptions, SmoothnessMode,
};
use unirule_core::count::{count_projective_points, CountError, CountOptions, DEFAULT_BUDGET};
use unirule_core::fermat::{fermat_scan, FermatError, ScanOptions};
use unirule_core::field::{make_extension_field, make_prime_field, FieldError, FieldSpec};
use unirule_core::hasse::HasseError;
use unirule_core::poly::{parse_poly, MultiPoly, PolyError};

pub const BUDGET_ENV_VAR: &str = "UNIRULE_BUDGET";

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("{}", err.message);
            err.code
        }
    }
}

struct CliError {
    message: String,
    code: i32,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: 1,
        }
    }

    fn resource(message: impl Into<String>) -> Self {
        CliError {
            message: message.into(),
            code: 2,
        }
    }
}

fn field_error(e: FieldError) -> CliError {
    match e {
        FieldError::NotPrime(_) => CliError::input(format!("field error: {}", e)),
        FieldError::CeilingExceeded { .. } | FieldError::DivisionByZero => {
            CliError::resource(format!("field error: {}", e))
        }
    }
}

fn poly_error(e: PolyError) -> CliError {
    CliError::input(format!("poly error: {}", e))
}

fn hasse_error(e: HasseError) -> CliError {
    match e {
        HasseError::Disagreement { .. } => CliError::resource(format!("hasse error: {}", e)),
        _ => CliError::input(format!("hasse error: {}", e)),
    }
}

fn count_error(e: CountError) -> CliError {
    CliError::resource(format!("count error: {}", e))
}

fn certify_error(e: CertifyError) -> CliError {
    match e {
        CertifyError::Count(inner) => count_error(inner),
        CertifyError::Hasse(inner) => hasse_error(inner),
        CertifyError::CrossCheckMismatch { .. } => {
            CliError::resource(format!("certify error: {}", e))
        }
        _ => CliError::input(format!("certify error: {}", e)),
    }
}

fn fermat_error(e: FermatError) -> CliError {
    match e {
        FermatError::NotPrime(_) => CliError::input(format!("fermat error: {}", e)),
        _ => CliError::resource(format!("fermat error: {}", e)),
    }
}

fn bounds_error(e: BoundsError) -> CliError {
    CliError::input(format!("bounds error: {}", e))
}

fn config_error(e: ConfigError) -> CliError {
    CliError::input(format!("config error: {}", e))
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    let file = match &cli.config {
        Some(path) => config::load_config(path).map_err(config_error)?,
        None => FileConfig::default(),
    };
    match cli.command {
        Some(Command::Certify(args)) => run_certify(args, &file, Method::PointCount),
        Some(Command::Hasse(args)) => run_certify(args, &file, Method::Hasse),
        Some(Command::Count(args)) => run_count(args, &file),
        Some(Command::FermatScan(args)) => run_scan(args, &file),
        Some(Command::Bounds(args)) => run_bounds(args, &file),
        None => match file.get("command") {
            Some("certify") => run_certify(VarietyArgs::default(), &file, Method::PointCount),
            Some("hasse") => run_certify(VarietyArgs::default(), &file, Method::Hasse),
            Some("count") => run_count(VarietyArgs::default(), &file),
            Some("fermat-scan") => run_scan(ScanArgs::default(), &file),
            Some("bounds") => run_bounds(BoundsArgs::default(), &file),
            Some(other) => Err(CliError::input(format!(
                "config error: unknown command '{}'",
                other
            ))),
            None => Err(CliError::input(
                "no command given: pass a subcommand or a config with a 'command' key",
            )),
        },
    }
}

// ------------------------------------------------------------ resolution

fn parse_config_value<T: std::str::FromStr>(
    file: &FileConfig,
    key: &str,
) -> Result<Option<T>, CliError> {
    match file.get(key) {
        None => Ok(None),
        Some(raw) => raw.parse::<T>().map(Some).map_err(|_| {
            CliError::input(format!(
                "config error: syntax: invalid value '{}' for '{}'",
                raw, key
            ))
        }),
    }
}

fn resolve_budget(flag: Option<u64>, file: &FileConfig) -> Result<u64, CliError> {
    if let Some(b) = flag {
        return Ok(b);
    }
    if let Some(b) = parse_config_value::<u64>(file, "budget")? {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV_VAR) {
        Ok(raw) => raw.parse::<u64>().map_err(|_| {
            CliError::input(format!(
                "invalid {} value '{}': expected an integer",
                BUDGET_ENV_VAR, raw
            ))
        }),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn resolve_workers(flag: Option<usize>, file: &FileConfig) -> Result<usize, CliError> {
    if let Some(w) = flag {
        return Ok(w.max(1));
    }
    if let Some(w) = parse_config_value::<usize>(file, "workers")? {
        return Ok(w.max(1));
    }
    Ok(std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1))
}

fn resolve_format(
    flag: Option<FormatArg>,
    file: &FileConfig,
    default: FormatArg,
) -> Result<FormatArg, CliError> {
    if let Some(f) = flag {
        return Ok(f);
    }
    match file.get("format") {
        None => Ok(default),
        Some("json") => Ok(FormatArg::Json),
        Some("csv") => Ok(FormatArg::Csv),
        Some("text") => Ok(FormatArg::Text),
        Some(other) => Err(CliError::input(format!(
            "config error: syntax: invalid format '{}'",
            other
        ))),
    }
}

fn resolve_out(flag: Option<PathBuf>, file: &FileConfig) -> Option<PathBuf> {
    flag.or_else(|| file.get("out").map(PathBuf::from))
}

fn parse_field_designation(raw: &str, seed: u64) -> Result<FieldSpec, CliError> {
    let build = |p: u64, k: u32| -> Result<FieldSpec, CliError> {
        if k == 1 {
            make_prime_field(p).map_err(field_error)
        } else {
            make_extension_field(p, k, seed).map_err(field_error)
        }
    };
    match raw.split_once('^') {
        None => {
            let p: u64 = raw
                .trim()
                .parse()
                .map_err(|_| CliError::input(format!("invalid field designation '{}'", raw)))?;
            build(p, 1)
        }
        Some((p_raw, k_raw)) => {
            let p: u64 = p_raw
                .trim()
                .parse()
                .map_err(|_| CliError::input(format!("invalid field designation '{}'", raw)))?;
            let k: u32 = k_raw
                .trim()
                .parse()
                .map_err(|_| CliError::input(format!("invalid field designation '{}'", raw)))?;
            if k == 0 {
                return Err(CliError::input("field extension degree must be positive"));
            }
            build(p, k)
        }
    }
}

fn parse_range(raw: &str, what: &str) -> Result<(u64, u64), CliError> {
    let err = || {
        CliError::input(format!(
            "invalid {} '{}': expected inclusive A..B",
            what, raw
        ))
    };
    let (a, b) = raw.split_once("..").ok_or_else(err)?;
    let a: u64 = a.trim().parse().map_err(|_| err())?;
    let b: u64 = b.trim().parse().map_err(|_| err())?;
    if a > b {
        return Err(CliError::input(format!(
            "empty {} '{}': lower bound exceeds upper bound",
            what, raw
        )));
    }
    Ok((a, b))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    match out {
        None => {
            print!("{}", text);
            Ok(())
        }
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::input(format!("cannot write {}: {}", path.display(), e))),
    }
}

// --------------------------------------------------------------- variety

struct VarietySettings {
    field: FieldSpec,
    ambient: usize,
    forms: Vec<MultiPoly>,
    verify: bool,
    smoothness: SmoothnessMode,
    budget: u64,
    workers: usize,
    format: FormatArg,
    out: Option<PathBuf>,
}

fn resolve_variety(args: VarietyArgs, file: &FileConfig) -> Result<VarietySettings, CliError> {
    let seed = match args.seed {
        Some(s) => s,
        None => parse_config_value::<u64>(file, "seed")?.unwrap_or(0),
    };
    let field_raw = args
        .field
        .or_else(|| file.get("field").map(String::from))
        .ok_or_else(|| CliError::input("missing --field"))?;
    let field = parse_field_designation(&field_raw, seed)?;
    let ambient = match args.ambient {
        Some(n) => n,
        None => parse_config_value::<u64>(file, "ambient")?
            .ok_or_else(|| CliError::input("missing --ambient"))?,
    };
    if ambient == 0 {
        return Err(CliError::input("ambient dimension must be at least 1"));
    }
    let ambient = ambient as usize;

    let flag_polys = args.poly;
    let flag_file = args.poly_file;
    let (inline, poly_file) = if !flag_polys.is_empty() || flag_file.is_some() {
        (flag_polys, flag_file)
    } else {
        (
            file.polys.clone(),
            file.get("poly_file").map(PathBuf::from),
        )
    };
    let sources = match (inline.is_empty(), &poly_file) {
        (false, None) => inline,
        (true, Some(path)) => read_poly_file(path)?,
        (false, Some(_)) => {
            return Err(CliError::input(
                "give exactly one polynomial source: --poly or --poly-file",
            ));
        }
        (true, None) => {
            return Err(CliError::input(
                "missing polynomial source: --poly or --poly-file",
            ));
        }
    };
    let forms = sources
        .iter()
        .map(|text| parse_poly(text, &field, ambient).map_err(poly_error))
        .collect::<Result<Vec<_>, _>>()?;

    let smoothness_arg = match args.smoothness {
        Some(s) => Some(s),
        None => match file.get("smoothness") {
            None => None,
            Some("probe") => Some(SmoothnessArg::Probe),
            Some("assert") => Some(SmoothnessArg::Assert),
            Some(other) => {
                return Err(CliError::input(format!(
                    "config error: syntax: invalid smoothness mode '{}'",
                    other
                )));
            }
        },
    };
    let probe_depth = match args.probe_depth {
        Some(d) => d,
        None => parse_config_value::<u32>(file, "probe_depth")?
            .unwrap_or(unirule_core::count::DEFAULT_MAX_EXT),
    };
    let smoothness = match smoothness_arg.unwrap_or(SmoothnessArg::Probe) {
        SmoothnessArg::Probe => SmoothnessMode::Probe {
            max_ext: probe_depth,
        },
        SmoothnessArg::Assert => SmoothnessMode::Assert,
    };

    let verify = args.verify || file.get("verify") == Some("true");
    Ok(VarietySettings {
        field,
        ambient,
        forms,
        verify,
        smoothness,
        budget: resolve_budget(args.budget, file)?,
        workers: resolve_workers(args.workers, file)?,
        format: resolve_format(args.format, file, FormatArg::Json)?,
        out: resolve_out(args.out, file),
    })
}

fn read_poly_file(path: &Path) -> Result<Vec<String>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {}: {}", path.display(), e)))?;
    let forms: Vec<String> = text
        .lines()
        .map(str::trim)
        .filter(|line| !line.is_empty() && !line.starts_with('#'))
        .map(String::from)
        .collect();
    if forms.is_empty() {
        return Err(CliError::input(format!(
            "{}: no polynomials found",
            path.display()
        )));
    }
    Ok(forms)
}

enum Method {
    PointCount,
    Hasse,
}

fn run_certify(args: VarietyArgs, file: &FileConfig, method: Method) -> Result<(), CliError> {
    let settings = resolve_variety(args, file)?;
    let spec = CISpec::new(
        settings.ambient,
        settings.forms.clone(),
        settings.field.clone(),
        settings.smoothness,
    )
    .map_err(certify_error)?;
    let options = CertifyOptions {
        verify: settings.verify,
        budget: settings.budget,
        workers: settings.workers,
    };
    let certificate = match method {
        Method::PointCount => certify_not_uniruled(&spec, &options).map_err(certify_error)?,
        Method::Hasse => hasse_certify(&spec, &options).map_err(certify_error)?,
    };
    let text = match settings.format {
        FormatArg::Json => certificate.to_json(),
        FormatArg::Text => output::certificate_text(&certificate),
        FormatArg::Csv => output::certificate_csv(&certificate),
    };
    emit(&text, settings.out.as_deref())
}

fn run_count(args: VarietyArgs, file: &FileConfig) -> Result<(), CliError> {
    let settings = resolve_variety(args, file)?;
    let options = CountOptions {
        budget: settings.budget,
        workers: settings.workers,
        verify: settings.verify,
    };
    let result = count_projective_points(
        &settings.forms,
        &settings.field,
        settings.ambient + 1,
        &options,
    )
    .map_err(count_error)?;
    let text = match settings.format {
        FormatArg::Json => output::count_json(&result),
        FormatArg::Text => output::count_text(&result),
        FormatArg::Csv => output::count_csv(&result),
    };
    emit(&text, settings.out.as_deref())
}

fn run_scan(args: ScanArgs, file: &FileConfig) -> Result<(), CliError> {
    let get_range = |flag: Option<String>, key: &str| -> Result<Option<(u64, u64)>, CliError> {
        match flag.or_else(|| file.get(key).map(String::from)) {
            Some(raw) => parse_range(&raw, key).map(Some),
            None => Ok(None),
        }
    };
    let p_range =
        get_range(args.p_range, "p_range")?.ok_or_else(|| CliError::input("missing --p-range"))?;
    let d_range =
        get_range(args.d_range, "d_range")?.ok_or_else(|| CliError::input("missing --d-range"))?;
    let n_range = match get_range(args.n_range, "n_range")? {
        Some(r) => r,
        None => {
            let n = parse_config_value::<u64>(file, "ambient")?
                .ok_or_else(|| CliError::input("missing --n-range"))?;
            (n, n)
        }
    };
    let options = ScanOptions {
        verify: args.verify || file.get("verify") == Some("true"),
        budget: resolve_budget(args.budget, file)?,
        workers: resolve_workers(args.workers, file)?,
    };
    let rows = fermat_scan(p_range, d_range, n_range, &options).map_err(fermat_error)?;
    let format = resolve_format(args.format, file, FormatArg::Csv)?;
    let text = match format {
        FormatArg::Json => unirule_core::fermat::scan_to_jsonl(&rows),
        FormatArg::Csv => unirule_core::fermat::scan_to_csv(&rows),
        FormatArg::Text => output::scan_text(&rows),
    };
    emit(&text, resolve_out(args.out, file).as_deref())
}

fn run_bounds(args: BoundsArgs, file: &FileConfig) -> Result<(), CliError> {
    let ambient = match args.ambient {
        Some(n) => n,
        None => parse_config_value::<u64>(file, "ambient")?
            .ok_or_else(|| CliError::input("missing --ambient"))?,
    };
    let degrees: Vec<u64> = if !args.degrees.is_empty() {
        args.degrees
    } else {
        match file.get("degrees") {
            Some(raw) => raw
                .split(',')
                .map(|part| {
                    part.trim().parse::<u64>().map_err(|_| {
                        CliError::input(format!(
                            "config error: syntax: invalid degrees '{}'",
                            raw
                        ))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?,
            None => return Err(CliError::input("missing --degrees")),
        }
    };
    let report = codimension_bounds(ambient, &degrees).map_err(bounds_error)?;
    let format = resolve_format(args.format, file, FormatArg::Json)?;
    let text = match format {
        FormatArg::Json => report.to_json(),
        FormatArg::Csv => output::bounds_csv(&report),
        FormatArg::Text => output::bounds_text(&report),
    };
    emit(&text, resolve_out(args.out, file).as_deref())
}
