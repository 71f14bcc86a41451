//! Text and CSV renderings. The text layout is a fixed two-column format
//! so reports stay diffable; JSON comes straight from the core schemas.

use unirule_core::bounds::{bounds_csv_row, BoundsReport, BOUNDS_CSV_HEADER};
use unirule_core::certify::{smoothness_json_kind, Certificate};
use unirule_core::count::{CountResult, SmoothnessEvidence};
use unirule_core::fermat::FermatReport;

fn kv(out: &mut String, key: &str, value: impl std::fmt::Display) {
    out.push_str(&format!("{:<20}{}\n", key, value));
}

fn field_designation(p: u64, k: u32) -> String {
    if k == 1 {
        p.to_string()
    } else {
        format!("{}^{}", p, k)
    }
}

fn degrees_joined(degrees: &[u32]) -> String {
    degrees
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn probe_depth(evidence: &SmoothnessEvidence) -> Option<u32> {
    match evidence {
        SmoothnessEvidence::ProbedNoSingularPoint { max_ext } => Some(*max_ext),
        SmoothnessEvidence::SingularPointFound { ext_degree, .. } => Some(*ext_degree),
        _ => None,
    }
}

fn opt<T: std::fmt::Display>(value: Option<T>) -> String {
    value.map(|v| v.to_string()).unwrap_or_else(|| "-".into())
}

pub fn certificate_text(cert: &Certificate) -> String {
    let mut out = String::new();
    kv(&mut out, "ambient", cert.ambient_n);
    kv(&mut out, "degrees", degrees_joined(&cert.degrees));
    kv(
        &mut out,
        "field",
        field_designation(cert.field_p, cert.field_k),
    );
    kv(&mut out, "method", cert.method.as_str());
    kv(&mut out, "count", opt(cert.count.map(|c| c.projective_points)));
    kv(
        &mut out,
        "coefficient",
        opt(cert.hasse.map(|h| h.coefficient.index())),
    );
    kv(&mut out, "residue", cert.residue);
    kv(&mut out, "modulus", cert.modulus);
    kv(&mut out, "verdict", cert.verdict.as_str());
    kv(&mut out, "smoothness", smoothness_json_kind(&cert.smoothness));
    kv(&mut out, "probe-depth", opt(probe_depth(&cert.smoothness)));
    kv(&mut out, "classification", cert.classification.as_str());
    out
}

pub const CERTIFICATE_CSV_HEADER: &str = "ambient_n,degrees,p,k,method,count,coefficient,\
residue,modulus,verdict,smoothness,probe_depth,classification";

pub fn certificate_csv(cert: &Certificate) -> String {
    let mut out = String::from(CERTIFICATE_CSV_HEADER);
    out.push('\n');
    out.push_str(&format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
        cert.ambient_n,
        degrees_joined(&cert.degrees),
        cert.field_p,
        cert.field_k,
        cert.method.as_str(),
        cert.count
            .map(|c| c.projective_points.to_string())
            .unwrap_or_default(),
        cert.hasse
            .map(|h| h.coefficient.index().to_string())
            .unwrap_or_default(),
        cert.residue,
        cert.modulus,
        cert.verdict.as_str(),
        smoothness_json_kind(&cert.smoothness),
        probe_depth(&cert.smoothness)
            .map(|v| v.to_string())
            .unwrap_or_default(),
        cert.classification.as_str(),
    ));
    out
}

pub fn count_text(result: &CountResult) -> String {
    let mut out = String::new();
    kv(&mut out, "q", result.q);
    kv(&mut out, "affine-cone-zeros", result.affine_cone_zeros);
    kv(&mut out, "projective-points", result.projective_points);
    out
}

pub fn count_csv(result: &CountResult) -> String {
    format!(
        "q,affine_cone_zeros,projective_points\n{},{},{}\n",
        result.q, result.affine_cone_zeros, result.projective_points
    )
}

pub fn count_json(result: &CountResult) -> String {
    format!(
        "{{\n  \"q\": {},\n  \"affine_cone_zeros\": {},\n  \"projective_points\": {}\n}}\n",
        result.q, result.affine_cone_zeros, result.projective_points
    )
}

pub fn bounds_text(report: &BoundsReport) -> String {
    let mut out = String::new();
    kv(&mut out, "ambient", report.n);
    kv(
        &mut out,
        "degrees",
        report
            .degrees
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(" "),
    );
    kv(&mut out, "classification", report.classification);
    kv(&mut out, "sum-d", report.sum_d);
    kv(&mut out, "rc-codim-lb", report.rc_locus_codim_lb);
    kv(&mut out, "rc-vacuous", report.rc_vacuous);
    kv(&mut out, "uniruled-codim-lb", report.uniruled_locus_codim_lb);
    kv(&mut out, "uniruled-vacuous", report.uniruled_vacuous);
    kv(&mut out, "no-rational-curves", report.no_rational_curves);
    kv(&mut out, "moduli-dim", opt(report.hypersurface_moduli_dim));
    out
}

pub fn bounds_csv(report: &BoundsReport) -> String {
    format!("{}\n{}\n", BOUNDS_CSV_HEADER, bounds_csv_row(report))
}

pub fn scan_text(rows: &[FermatReport]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{:<8}{:<6}{:<6}{:<10}{:<16}{:<8}{:<13}{:<19}{}\n",
        "p", "d", "n", "coprime", "sk_applicable", "sk_nu", "unirational", "paper_nonuniruled",
        "verified_coefficient"
    ));
    for r in rows {
        out.push_str(&format!(
            "{:<8}{:<6}{:<6}{:<10}{:<16}{:<8}{:<13}{:<19}{}\n",
            r.p,
            r.d,
            r.n,
            r.coprime,
            r.sk_applicable,
            r.sk_nu.map(|v| v.to_string()).unwrap_or_else(|| "-".into()),
            r.unirational.as_str(),
            r.paper_nonuniruled,
            r.verified_coefficient
                .map(|v| v.to_string())
                .unwrap_or_else(|| "-".into()),
        ));
    }
    out
}
