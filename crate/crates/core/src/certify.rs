//! Verdict assembly: classify a complete intersection by its multidegree
//! and certify non-geometric-uniruledness through either the point-count
//! residue or the criterion coefficient.
//!
//! Both criteria are one-directional. A certificate never asserts
//! uniruledness; the only verdicts are `NotGeometricallyUniruled` and
//! `Inconclusive`, and singular input aborts instead of overclaiming.

use serde::Serialize;
use thiserror::Error;

use crate::count::{
    count_projective_points, singular_probe, CountError, CountOptions, CountResult,
    SmoothnessEvidence, DEFAULT_BUDGET,
};
use crate::field::FieldSpec;
use crate::hasse::{hasse_coefficient, HasseError, HasseMode, HasseOptions, HasseResult};
use crate::poly::MultiPoly;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertifyError {
    #[error("invalid multidegree: {0}")]
    InvalidMultidegree(String),
    #[error("invalid complete intersection: {0}")]
    InvalidSpec(String),
    #[error(
        "singular input: witness {witness:?} over extension degree {ext_degree}; \
         no verdict is issued for singular varieties"
    )]
    SingularInput { witness: Vec<u64>, ext_degree: u32 },
    #[error(
        "cross-check mismatch: coefficient {coefficient} vs projective count {count} \
         (residue {residue} mod {modulus})"
    )]
    CrossCheckMismatch {
        coefficient: u64,
        count: u64,
        residue: u64,
        modulus: u64,
    },
    #[error(transparent)]
    Count(#[from] CountError),
    #[error(transparent)]
    Hasse(#[from] HasseError),
}

/// Adjunction-based type of a complete intersection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Fano,
    CalabiYau,
    GeneralType,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::Fano => "fano",
            Classification::CalabiYau => "calabi-yau",
            Classification::GeneralType => "general-type",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    NotGeometricallyUniruled,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::NotGeometricallyUniruled => "not-geometrically-uniruled",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertMethod {
    PointCount,
    HasseCoefficient,
}

impl CertMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            CertMethod::PointCount => "point-count",
            CertMethod::HasseCoefficient => "hasse-coefficient",
        }
    }
}

/// How the smoothness hypothesis is handled for a certification run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SmoothnessMode {
    /// Probe extensions F_{q^m} for m up to the given depth.
    Probe { max_ext: u32 },
    /// Record that the caller asserts smoothness.
    Assert,
}

/// A complete intersection instance: k forms of the stated multidegree in
/// n+1 variables over one field.
#[derive(Debug, Clone)]
pub struct CISpec {
    pub ambient_n: usize,
    pub degrees: Vec<u32>,
    pub forms: Vec<MultiPoly>,
    pub field: FieldSpec,
    pub smoothness_mode: SmoothnessMode,
}

impl CISpec {
    pub fn new(
        ambient_n: usize,
        forms: Vec<MultiPoly>,
        field: FieldSpec,
        smoothness_mode: SmoothnessMode,
    ) -> Result<Self, CertifyError> {
        if forms.is_empty() {
            return Err(CertifyError::InvalidSpec("no defining forms given".into()));
        }
        if forms.len() > ambient_n {
            return Err(CertifyError::InvalidSpec(format!(
                "{} forms in ambient dimension {}: expected codimension at most n",
                forms.len(),
                ambient_n
            )));
        }
        let mut degrees = Vec::with_capacity(forms.len());
        for (i, form) in forms.iter().enumerate() {
            if form.field() != &field {
                return Err(CertifyError::InvalidSpec(format!(
                    "form {} lies in a different field",
                    i
                )));
            }
            if form.n_vars() != ambient_n + 1 {
                return Err(CertifyError::InvalidSpec(format!(
                    "form {} has {} variables, ambient P^{} needs {}",
                    i,
                    form.n_vars(),
                    ambient_n,
                    ambient_n + 1
                )));
            }
            if !form.is_homogeneous() {
                return Err(CertifyError::InvalidSpec(format!(
                    "form {} is not homogeneous",
                    i
                )));
            }
            match form.degree() {
                Some(d) if d >= 1 => degrees.push(d),
                _ => {
                    return Err(CertifyError::InvalidSpec(format!(
                        "form {} is zero or constant",
                        i
                    )));
                }
            }
        }
        Ok(CISpec {
            ambient_n,
            degrees,
            forms,
            field,
            smoothness_mode,
        })
    }

    pub fn codimension(&self) -> usize {
        self.forms.len()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct CertifyOptions {
    /// Run the independent cross-checks (cone identity, criterion agreement).
    pub verify: bool,
    pub budget: u64,
    pub workers: usize,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            verify: false,
            budget: DEFAULT_BUDGET,
            workers: 1,
        }
    }
}

impl CertifyOptions {
    fn count_options(&self) -> CountOptions {
        CountOptions {
            budget: self.budget,
            workers: self.workers,
            verify: self.verify,
        }
    }
}

/// A replayable verdict with its full numeric witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub ambient_n: usize,
    pub degrees: Vec<u32>,
    pub field_p: u64,
    pub field_k: u32,
    pub method: CertMethod,
    pub count: Option<CountResult>,
    pub hasse: Option<HasseResult>,
    /// Point count mod q, or the coefficient value, per method.
    pub residue: u64,
    /// The modulus the residue is taken against (q, or p).
    pub modulus: u64,
    pub verdict: Verdict,
    pub smoothness: SmoothnessEvidence,
    pub classification: Classification,
}

/// Fano / Calabi-Yau / general type by comparing the degree sum with n+1.
pub fn classify(n: usize, degrees: &[u32]) -> Result<Classification, CertifyError> {
    if degrees.is_empty() {
        return Err(CertifyError::InvalidMultidegree("empty multidegree".into()));
    }
    if degrees.iter().any(|&d| d == 0) {
        return Err(CertifyError::InvalidMultidegree(
            "degrees must be positive".into(),
        ));
    }
    if degrees.len() > n {
        return Err(CertifyError::InvalidMultidegree(format!(
            "{} forms exceed ambient dimension {}",
            degrees.len(),
            n
        )));
    }
    let sum: u64 = degrees.iter().map(|&d| u64::from(d)).sum();
    let n = n as u64;
    Ok(if sum <= n {
        Classification::Fano
    } else if sum == n + 1 {
        Classification::CalabiYau
    } else {
        Classification::GeneralType
    })
}

fn smoothness_evidence(
    spec: &CISpec,
    options: &CertifyOptions,
) -> Result<SmoothnessEvidence, CertifyError> {
    match spec.smoothness_mode {
        SmoothnessMode::Assert => Ok(SmoothnessEvidence::Asserted),
        SmoothnessMode::Probe { max_ext } => {
            let evidence = singular_probe(
                &spec.forms,
                &spec.field,
                spec.ambient_n + 1,
                max_ext,
                &options.count_options(),
            )?;
            if let SmoothnessEvidence::SingularPointFound { witness, ext_degree } = evidence {
                return Err(CertifyError::SingularInput { witness, ext_degree });
            }
            Ok(evidence)
        }
    }
}

/// Certify via the residue of the projective point count mod q: a residue
/// different from 1 rules out geometric uniruledness for smooth input.
pub fn certify_not_uniruled(
    spec: &CISpec,
    options: &CertifyOptions,
) -> Result<Certificate, CertifyError> {
    let classification = classify(spec.ambient_n, &spec.degrees)?;
    let smoothness = smoothness_evidence(spec, options)?;
    let count = count_projective_points(
        &spec.forms,
        &spec.field,
        spec.ambient_n + 1,
        &options.count_options(),
    )?;
    let q = spec.field.q();
    let residue = count.projective_points % q;
    let verdict = if residue != 1 {
        Verdict::NotGeometricallyUniruled
    } else {
        Verdict::Inconclusive
    };
    Ok(Certificate {
        ambient_n: spec.ambient_n,
        degrees: spec.degrees.clone(),
        field_p: spec.field.p(),
        field_k: spec.field.k(),
        method: CertMethod::PointCount,
        count: Some(count),
        hasse: None,
        residue,
        modulus: q,
        verdict,
        smoothness,
        classification,
    })
}

/// Certify a degree-(n+1) hypersurface over a prime field via the
/// criterion coefficient, computed by both algorithms. With `verify` set,
/// the verdict is cross-checked against the point-count route; any
/// disagreement is a bug sentinel, never a verdict.
pub fn hasse_certify(
    spec: &CISpec,
    options: &CertifyOptions,
) -> Result<Certificate, CertifyError> {
    let classification = classify(spec.ambient_n, &spec.degrees)?;
    if spec.forms.len() != 1 {
        return Err(CertifyError::InvalidSpec(format!(
            "coefficient certification needs a single hypersurface, got {} forms",
            spec.forms.len()
        )));
    }
    let form = &spec.forms[0];
    let hasse_options = HasseOptions {
        workers: options.workers,
        ..HasseOptions::default()
    };
    // Computing the coefficient first also validates the degree and field
    // hypotheses before any probing starts.
    let result = hasse_coefficient(form, HasseMode::Both, &hasse_options)?;
    let smoothness = smoothness_evidence(spec, options)?;
    let verdict = if result.is_nonzero() {
        Verdict::NotGeometricallyUniruled
    } else {
        Verdict::Inconclusive
    };

    let mut count = None;
    if options.verify {
        let counted = count_projective_points(
            &spec.forms,
            &spec.field,
            spec.ambient_n + 1,
            &options.count_options(),
        )?;
        let q = spec.field.q();
        let count_verdict = counted.projective_points % q != 1;
        if count_verdict != result.is_nonzero() {
            return Err(CertifyError::CrossCheckMismatch {
                coefficient: result.coefficient.index(),
                count: counted.projective_points,
                residue: counted.projective_points % q,
                modulus: q,
            });
        }
        count = Some(counted);
    }

    Ok(Certificate {
        ambient_n: spec.ambient_n,
        degrees: spec.degrees.clone(),
        field_p: spec.field.p(),
        field_k: spec.field.k(),
        method: CertMethod::HasseCoefficient,
        count,
        hasse: Some(result),
        residue: result.coefficient.index(),
        modulus: spec.field.p(),
        verdict,
        smoothness,
        classification,
    })
}

// ------------------------------------------------------------- JSON view

#[derive(Serialize)]
struct FieldJson {
    p: u64,
    k: u32,
}

#[derive(Serialize)]
struct SmoothnessJson {
    kind: &'static str,
    probe_depth: Option<u32>,
    witness: Option<Vec<u64>>,
}

#[derive(Serialize)]
struct CertificateJson<'a> {
    ambient_n: usize,
    degrees: &'a [u32],
    field: FieldJson,
    method: &'static str,
    count: Option<u64>,
    coefficient: Option<u64>,
    residue: u64,
    modulus: u64,
    verdict: &'static str,
    smoothness: SmoothnessJson,
    classification: &'static str,
}

pub fn smoothness_json_kind(evidence: &SmoothnessEvidence) -> &'static str {
    match evidence {
        SmoothnessEvidence::FermatExact => "fermat-exact",
        SmoothnessEvidence::ProbedNoSingularPoint { .. } => "probed-no-singular-point",
        SmoothnessEvidence::SingularPointFound { .. } => "singular-point-found",
        SmoothnessEvidence::Asserted => "asserted",
    }
}

impl Certificate {
    /// Serialize to the stable certificate schema (fixed key order).
    pub fn to_json(&self) -> String {
        let smoothness = match &self.smoothness {
            SmoothnessEvidence::ProbedNoSingularPoint { max_ext } => SmoothnessJson {
                kind: smoothness_json_kind(&self.smoothness),
                probe_depth: Some(*max_ext),
                witness: None,
            },
            SmoothnessEvidence::SingularPointFound { witness, ext_degree } => SmoothnessJson {
                kind: smoothness_json_kind(&self.smoothness),
                probe_depth: Some(*ext_degree),
                witness: Some(witness.clone()),
            },
            _ => SmoothnessJson {
                kind: smoothness_json_kind(&self.smoothness),
                probe_depth: None,
                witness: None,
            },
        };
        let view = CertificateJson {
            ambient_n: self.ambient_n,
            degrees: &self.degrees,
            field: FieldJson {
                p: self.field_p,
                k: self.field_k,
            },
            method: self.method.as_str(),
            count: self.count.map(|c| c.projective_points),
            coefficient: self.hasse.map(|h| h.coefficient.index()),
            residue: self.residue,
            modulus: self.modulus,
            verdict: self.verdict.as_str(),
            smoothness,
            classification: self.classification.as_str(),
        };
        let mut text = serde_json::to_string_pretty(&view).expect("schema serializes");
        text.push('\n');
        text
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_prime_field;
    use crate::poly::{fermat_poly, parse_poly};

    fn fermat_spec(p: u64, n: usize, d: u32) -> CISpec {
        let field = make_prime_field(p).unwrap();
        let form = fermat_poly(n, d, &field).poly;
        CISpec::new(n, vec![form], field, SmoothnessMode::Probe { max_ext: 2 }).unwrap()
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(3, &[4]).unwrap(), Classification::CalabiYau);
        assert_eq!(classify(3, &[5]).unwrap(), Classification::GeneralType);
        assert_eq!(classify(4, &[2, 2]).unwrap(), Classification::Fano);
    }

    #[test]
    fn classification_rejects_bad_multidegrees() {
        assert!(matches!(
            classify(3, &[]),
            Err(CertifyError::InvalidMultidegree(_))
        ));
        assert!(matches!(
            classify(3, &[2, 0]),
            Err(CertifyError::InvalidMultidegree(_))
        ));
        assert!(matches!(
            classify(1, &[2, 2]),
            Err(CertifyError::InvalidMultidegree(_))
        ));
    }

    #[test]
    fn classification_is_permutation_invariant() {
        let a = classify(5, &[2, 3, 4]).unwrap();
        let b = classify(5, &[4, 2, 3]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn fermat_cubic_over_f7_certifies() {
        let cert =
            certify_not_uniruled(&fermat_spec(7, 2, 3), &CertifyOptions::default()).unwrap();
        assert_eq!(cert.count.unwrap().projective_points, 9);
        assert_eq!(cert.residue, 2);
        assert_eq!(cert.verdict, Verdict::NotGeometricallyUniruled);
        assert_eq!(cert.smoothness, SmoothnessEvidence::FermatExact);
        assert_eq!(cert.classification, Classification::CalabiYau);
    }

    #[test]
    fn fermat_cubic_over_f2_is_inconclusive() {
        let cert =
            certify_not_uniruled(&fermat_spec(2, 2, 3), &CertifyOptions::default()).unwrap();
        assert_eq!(cert.count.unwrap().projective_points, 3);
        assert_eq!(cert.residue, 1);
        assert_eq!(cert.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn fermat_quartic_over_f5_certifies() {
        let cert =
            certify_not_uniruled(&fermat_spec(5, 3, 4), &CertifyOptions::default()).unwrap();
        assert_eq!(cert.count.unwrap().projective_points, 0);
        assert_eq!(cert.residue, 0);
        assert_eq!(cert.verdict, Verdict::NotGeometricallyUniruled);
    }

    #[test]
    fn singular_input_aborts() {
        let err =
            certify_not_uniruled(&fermat_spec(3, 2, 3), &CertifyOptions::default()).unwrap_err();
        assert!(matches!(err, CertifyError::SingularInput { ext_degree: 1, .. }));
    }

    #[test]
    fn asserted_smoothness_skips_probing() {
        let field = make_prime_field(3).unwrap();
        let form = fermat_poly(2, 3, &field).poly;
        let spec = CISpec::new(2, vec![form], field, SmoothnessMode::Assert).unwrap();
        let cert = certify_not_uniruled(&spec, &CertifyOptions::default()).unwrap();
        assert_eq!(cert.smoothness, SmoothnessEvidence::Asserted);
    }

    #[test]
    fn hasse_certify_examples() {
        let cert = hasse_certify(&fermat_spec(7, 2, 3), &CertifyOptions::default()).unwrap();
        assert_eq!(cert.residue, 6);
        assert_eq!(cert.modulus, 7);
        assert_eq!(cert.verdict, Verdict::NotGeometricallyUniruled);
        assert!(cert.count.is_none());

        let cert = hasse_certify(&fermat_spec(5, 2, 3), &CertifyOptions::default()).unwrap();
        assert_eq!(cert.residue, 0);
        assert_eq!(cert.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn hasse_certify_rejects_wrong_degree() {
        // Quintic in P^3: 5 is not n+1 = 4.
        let err = hasse_certify(&fermat_spec(7, 3, 5), &CertifyOptions::default()).unwrap_err();
        assert!(matches!(
            err,
            CertifyError::Hasse(HasseError::DegreeMismatch { degree: 5, expected: 4 })
        ));
    }

    #[test]
    fn hasse_certify_cross_check_records_count() {
        let options = CertifyOptions {
            verify: true,
            ..CertifyOptions::default()
        };
        let cert = hasse_certify(&fermat_spec(7, 2, 3), &options).unwrap();
        assert_eq!(cert.count.unwrap().projective_points, 9);
        assert_eq!(cert.verdict, Verdict::NotGeometricallyUniruled);
    }

    #[test]
    fn certificates_are_replayable() {
        let spec = fermat_spec(7, 2, 3);
        let a = certify_not_uniruled(&spec, &CertifyOptions::default()).unwrap();
        let b = certify_not_uniruled(&spec, &CertifyOptions::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_json(), b.to_json());
    }

    #[test]
    fn json_schema_key_order_is_stable() {
        let cert =
            certify_not_uniruled(&fermat_spec(7, 2, 3), &CertifyOptions::default()).unwrap();
        let json = cert.to_json();
        let keys = [
            "\"ambient_n\"",
            "\"degrees\"",
            "\"field\"",
            "\"method\"",
            "\"count\"",
            "\"coefficient\"",
            "\"residue\"",
            "\"modulus\"",
            "\"verdict\"",
            "\"smoothness\"",
            "\"classification\"",
        ];
        let mut last = 0;
        for key in keys {
            let pos = json.find(key).unwrap_or_else(|| panic!("missing {}", key));
            assert!(pos > last || last == 0, "key {} out of order", key);
            last = pos;
        }
        assert!(json.contains("\"verdict\": \"not-geometrically-uniruled\""));
        assert!(json.contains("\"kind\": \"fermat-exact\""));
    }

    #[test]
    fn criteria_agree_on_random_degree_n_plus_one_forms() {
        // Both routes must give one verdict per variety; smoothness is
        // asserted so that singular draws exercise the arithmetic too.
        use crate::poly::random_homogeneous;
        for p in [2u64, 3, 5, 7] {
            let field = make_prime_field(p).unwrap();
            for n in [1usize, 2, 3] {
                for seed in 0..12 {
                    let form = random_homogeneous(n, n as u32 + 1, &field, seed * 311 + p);
                    if form.is_zero() {
                        continue;
                    }
                    let spec =
                        CISpec::new(n, vec![form], field.clone(), SmoothnessMode::Assert).unwrap();
                    let by_count =
                        certify_not_uniruled(&spec, &CertifyOptions::default()).unwrap();
                    let by_coefficient = hasse_certify(&spec, &CertifyOptions::default()).unwrap();
                    assert_eq!(
                        by_count.verdict, by_coefficient.verdict,
                        "criteria disagree: p={} n={} seed={}",
                        p, n, seed
                    );
                }
            }
        }
    }

    #[test]
    fn spec_validation_rejects_mismatches() {
        let field = make_prime_field(5).unwrap();
        let f7 = make_prime_field(7).unwrap();
        let form = parse_poly("x0^2 + x1*x2", &field, 2).unwrap();
        let alien = parse_poly("x0^2 + x1*x2", &f7, 2).unwrap();
        assert!(CISpec::new(2, vec![], field.clone(), SmoothnessMode::Assert).is_err());
        assert!(CISpec::new(
            2,
            vec![form.clone(), form.clone(), form.clone()],
            field.clone(),
            SmoothnessMode::Assert
        )
        .is_err());
        assert!(CISpec::new(2, vec![alien], field.clone(), SmoothnessMode::Assert).is_err());
        assert!(CISpec::new(3, vec![form], field, SmoothnessMode::Assert).is_err());
    }
}
