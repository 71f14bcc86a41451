//! Congruence analysis of Fermat hypersurfaces x0^d + ... + xn^d: the
//! Shioda-Katsura unirationality criterion (p^v = -1 mod d), the
//! complementary non-uniruled family d = n+1 with p = 1 mod d, and batch
//! scans over (p, d, n) ranges.
//!
//! Unirationality verdicts are reported on the criterion's authority and
//! never re-derived; the non-uniruled flag can optionally be confirmed by
//! computing the criterion coefficient.

use serde::Serialize;
use thiserror::Error;

use crate::certify::{hasse_certify, CertifyError, CertifyOptions, CISpec, SmoothnessMode};
use crate::count::DEFAULT_BUDGET;
use crate::field::{is_prime, make_prime_field};
use crate::poly::fermat_poly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FermatError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("verification of (p={p}, d={d}, n={n}) needs {needed} points, budget is {budget}")]
    BudgetExceeded {
        p: u64,
        d: u64,
        n: u64,
        needed: u64,
        budget: u64,
    },
    #[error("verification failed for (p={p}, d={d}, n={n}): {source}")]
    Verification {
        p: u64,
        d: u64,
        n: u64,
        source: CertifyError,
    },
    #[error("coefficient unexpectedly zero for (p={p}, d={d}, n={n})")]
    UnexpectedZeroCoefficient { p: u64, d: u64, n: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Unirational {
    Yes,
    No,
    Unknown,
}

impl Unirational {
    pub fn as_str(self) -> &'static str {
        match self {
            Unirational::Yes => "yes",
            Unirational::No => "no",
            Unirational::Unknown => "unknown",
        }
    }
}

/// Everything the congruence analysis knows about one (p, d, n) triple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FermatReport {
    pub p: u64,
    pub d: u64,
    pub n: u64,
    /// d not divisible by p (the standing hypothesis for everything here).
    pub coprime: bool,
    /// Criterion gate: odd n >= 3, d >= 4, p coprime to d.
    pub sk_applicable: bool,
    /// Minimal v >= 1 with p^v = -1 (mod d), when one exists.
    pub sk_nu: Option<u64>,
    pub unirational: Unirational,
    /// d = n+1 and p = 1 (mod d): the coefficient is provably nonzero.
    pub paper_nonuniruled: bool,
    /// Criterion coefficient, filled when verification ran.
    pub verified_coefficient: Option<u64>,
}

fn analyze(p: u64, d: u64, n: u64) -> FermatReport {
    let coprime = d % p != 0;
    let sk_applicable = coprime && n >= 3 && n % 2 == 1 && d >= 4;
    let sk_nu = if coprime { negation_exponent(p, d) } else { None };
    let unirational = if sk_applicable && sk_nu.is_some() {
        Unirational::Yes
    } else if sk_applicable && n == 3 {
        Unirational::No
    } else {
        Unirational::Unknown
    };
    let paper_nonuniruled = d == n + 1 && d >= 2 && p % d == 1 && coprime;
    FermatReport {
        p,
        d,
        n,
        coprime,
        sk_applicable,
        sk_nu,
        unirational,
        paper_nonuniruled,
        verified_coefficient: None,
    }
}

/// The unirationality criterion for the Fermat hypersurface of degree d in
/// P^n: applicable for odd n >= 3 and d >= 4, it asks for some power of p
/// to be -1 mod d. For n = 3 the converse holds as well.
pub fn shioda_katsura(p: u64, d: u64, n: u64) -> Result<FermatReport, FermatError> {
    if !is_prime(p) {
        return Err(FermatError::NotPrime(p));
    }
    assert!(d >= 1 && n >= 1, "degree and dimension must be positive");
    Ok(analyze(p, d, n))
}

#[derive(Debug, Clone, Copy)]
pub struct ScanOptions {
    /// Confirm each non-uniruled row by computing the criterion coefficient.
    pub verify: bool,
    pub budget: u64,
    pub workers: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            verify: false,
            budget: DEFAULT_BUDGET,
            workers: 1,
        }
    }
}

/// The non-uniruled Fermat family: for d = n+1 and p = 1 mod d the
/// criterion coefficient is nonzero. With `verify` set the coefficient is
/// recomputed and recorded.
pub fn fermat_nonuniruled(
    p: u64,
    d: u64,
    n: u64,
    options: &ScanOptions,
) -> Result<FermatReport, FermatError> {
    if !is_prime(p) {
        return Err(FermatError::NotPrime(p));
    }
    assert!(d >= 1 && n >= 1, "degree and dimension must be positive");
    let mut report = analyze(p, d, n);
    if options.verify && report.paper_nonuniruled {
        report.verified_coefficient = Some(verify_coefficient(&report, options)?);
    }
    Ok(report)
}

fn verify_coefficient(report: &FermatReport, options: &ScanOptions) -> Result<u64, FermatError> {
    let (p, d, n) = (report.p, report.d, report.n);
    let points = (0..=n).try_fold(1u64, |acc, _| acc.checked_mul(p));
    match points {
        Some(total) if total <= options.budget => {}
        _ => {
            return Err(FermatError::BudgetExceeded {
                p,
                d,
                n,
                needed: points.unwrap_or(u64::MAX),
                budget: options.budget,
            });
        }
    }
    let field = make_prime_field(p).map_err(|_| FermatError::NotPrime(p))?;
    let form = fermat_poly(n as usize, d as u32, &field).poly;
    let spec = CISpec::new(
        n as usize,
        vec![form],
        field,
        SmoothnessMode::Probe { max_ext: 1 },
    )
    .map_err(|source| FermatError::Verification { p, d, n, source })?;
    let cert_options = CertifyOptions {
        verify: false,
        budget: options.budget,
        workers: options.workers,
    };
    let certificate = hasse_certify(&spec, &cert_options)
        .map_err(|source| FermatError::Verification { p, d, n, source })?;
    if certificate.residue == 0 {
        return Err(FermatError::UnexpectedZeroCoefficient { p, d, n });
    }
    Ok(certificate.residue)
}

/// One report per (p, d, n) with p prime, in (p, then d, then n) order.
/// All range bounds are inclusive.
pub fn fermat_scan(
    p_range: (u64, u64),
    d_range: (u64, u64),
    n_range: (u64, u64),
    options: &ScanOptions,
) -> Result<Vec<FermatReport>, FermatError> {
    let mut rows = Vec::new();
    for p in p_range.0..=p_range.1 {
        if !is_prime(p) {
            continue;
        }
        for d in d_range.0.max(1)..=d_range.1 {
            for n in n_range.0.max(1)..=n_range.1 {
                rows.push(fermat_nonuniruled(p, d, n, options)?);
            }
        }
    }
    Ok(rows)
}

/// Minimal v >= 1 with p^v = -1 (mod d), if any. For d <= 2 the congruence
/// is trivially satisfied at v = 1; otherwise a solution exists iff the
/// multiplicative order of p is even with p^(order/2) = -1, and that half
/// is the minimum.
fn negation_exponent(p: u64, d: u64) -> Option<u64> {
    if d <= 2 {
        return Some(1);
    }
    let order = multiplicative_order(p, d);
    if order % 2 == 0 && pow_mod(p, order / 2, d) == d - 1 {
        Some(order / 2)
    } else {
        None
    }
}

/// Multiplicative order of p mod d (gcd(p, d) = 1): the smallest divisor e
/// of phi(d) with p^e = 1.
fn multiplicative_order(p: u64, d: u64) -> u64 {
    if d == 1 {
        return 1;
    }
    let phi = euler_phi(d);
    let mut divisors = divisors_of(phi);
    divisors.sort_unstable();
    for e in divisors {
        if pow_mod(p, e, d) == 1 {
            return e;
        }
    }
    unreachable!("order divides phi(d)");
}

fn euler_phi(mut n: u64) -> u64 {
    let mut result = n;
    let mut f = 2u64;
    while f * f <= n {
        if n % f == 0 {
            while n % f == 0 {
                n /= f;
            }
            result -= result / f;
        }
        f += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

fn divisors_of(n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut f = 1u64;
    while f * f <= n {
        if n % f == 0 {
            out.push(f);
            if f != n / f {
                out.push(n / f);
            }
        }
        f += 1;
    }
    out
}

fn pow_mod(base: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut result = 1u64;
    let mut b = base % m;
    while e > 0 {
        if e & 1 == 1 {
            result = result * b % m;
        }
        e >>= 1;
        b = b * b % m;
    }
    result
}

// ------------------------------------------------------------- emitters

pub const SCAN_CSV_HEADER: &str =
    "p,d,n,coprime,sk_applicable,sk_nu,unirational,paper_nonuniruled,verified_coefficient";

pub fn scan_csv_row(r: &FermatReport) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{}",
        r.p,
        r.d,
        r.n,
        r.coprime,
        r.sk_applicable,
        r.sk_nu.map(|v| v.to_string()).unwrap_or_default(),
        r.unirational.as_str(),
        r.paper_nonuniruled,
        r.verified_coefficient
            .map(|v| v.to_string())
            .unwrap_or_default(),
    )
}

pub fn scan_to_csv(rows: &[FermatReport]) -> String {
    let mut out = String::from(SCAN_CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&scan_csv_row(row));
        out.push('\n');
    }
    out
}

/// One JSON object per line, same fields as the CSV.
pub fn scan_to_jsonl(rows: &[FermatReport]) -> String {
    let mut out = String::new();
    for row in rows {
        out.push_str(&serde_json::to_string(row).expect("report serializes"));
        out.push('\n');
    }
    out
}
