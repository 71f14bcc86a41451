//! Python bindings: field construction, polynomial parsing, the two
//! certification routes, point counting, congruence scans, and the
//! codimension bounds, returned as plain dicts.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use unirule_core::bounds;
use unirule_core::certify::{self, CISpec, CertifyError, CertifyOptions, SmoothnessMode};
use unirule_core::count::{self, CountError, CountOptions, SmoothnessEvidence};
use unirule_core::fermat::{self, FermatError, ScanOptions};
use unirule_core::field::{self, FieldError};
use unirule_core::hasse::{self, HasseError, HasseMode, HasseOptions};
use unirule_core::poly::{self, PolyError};

/// A finite field F_q with q = p^k.
#[pyclass(name = "FieldSpec", frozen, from_py_object)]
#[derive(Clone)]
struct PyFieldSpec {
    inner: field::FieldSpec,
}

#[pymethods]
impl PyFieldSpec {
    #[getter]
    fn p(&self) -> u64 {
        self.inner.p()
    }

    #[getter]
    fn k(&self) -> u32 {
        self.inner.k()
    }

    #[getter]
    fn q(&self) -> u64 {
        self.inner.q()
    }

    /// Monic modulus coefficients (little-endian) for k > 1, else None.
    #[getter]
    fn modulus(&self) -> Option<Vec<u64>> {
        self.inner.modulus().map(|m| m.to_vec())
    }

    fn __repr__(&self) -> String {
        format!("FieldSpec({})", self.inner)
    }
}

/// A sparse homogeneous polynomial over a fixed field.
#[pyclass(name = "MultiPoly", frozen, from_py_object)]
#[derive(Clone)]
struct PyMultiPoly {
    inner: poly::MultiPoly,
}

#[pymethods]
impl PyMultiPoly {
    #[getter]
    fn n_vars(&self) -> usize {
        self.inner.n_vars()
    }

    #[getter]
    fn degree(&self) -> Option<u32> {
        self.inner.degree()
    }

    #[getter]
    fn num_terms(&self) -> usize {
        self.inner.num_terms()
    }

    #[getter]
    fn field(&self) -> PyFieldSpec {
        PyFieldSpec {
            inner: self.inner.field().clone(),
        }
    }

    /// Evaluate at a point given by element indices; returns an index.
    fn evaluate(&self, point: Vec<u64>) -> PyResult<u64> {
        let field = self.inner.field();
        let coords: Vec<_> = point
            .into_iter()
            .map(|idx| {
                if idx < field.q() {
                    Ok(field.element(idx))
                } else {
                    Err(PyValueError::new_err(format!(
                        "element index {} out of range for q = {}",
                        idx,
                        field.q()
                    )))
                }
            })
            .collect::<PyResult<_>>()?;
        poly::poly_eval(&self.inner, &coords)
            .map(|e| e.index())
            .map_err(poly_err)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("MultiPoly({})", self.inner)
    }
}

fn field_err(e: FieldError) -> PyErr {
    match e {
        FieldError::NotPrime(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

fn poly_err(e: PolyError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn hasse_err(e: HasseError) -> PyErr {
    match e {
        HasseError::Disagreement { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn count_err(e: CountError) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

fn certify_err(e: CertifyError) -> PyErr {
    match e {
        CertifyError::Count(inner) => count_err(inner),
        CertifyError::Hasse(inner) => hasse_err(inner),
        CertifyError::CrossCheckMismatch { .. } => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn fermat_err(e: FermatError) -> PyErr {
    match e {
        FermatError::NotPrime(_) => PyValueError::new_err(e.to_string()),
        _ => PyRuntimeError::new_err(e.to_string()),
    }
}

/// Construct the prime field F_p.
#[pyfunction]
fn make_prime_field(p: u64) -> PyResult<PyFieldSpec> {
    field::make_prime_field(p)
        .map(|inner| PyFieldSpec { inner })
        .map_err(field_err)
}

/// Construct F_{p^k} with a seeded irreducible modulus search.
#[pyfunction]
#[pyo3(signature = (p, k, seed = 0))]
fn make_extension_field(p: u64, k: u32, seed: u64) -> PyResult<PyFieldSpec> {
    field::make_extension_field(p, k, seed)
        .map(|inner| PyFieldSpec { inner })
        .map_err(field_err)
}

/// Parse a homogeneous polynomial in x0..xn over the given field.
#[pyfunction]
fn parse_poly(text: &str, field: &PyFieldSpec, ambient: usize) -> PyResult<PyMultiPoly> {
    poly::parse_poly(text, &field.inner, ambient)
        .map(|inner| PyMultiPoly { inner })
        .map_err(poly_err)
}

/// The Fermat form x0^d + ... + xn^d.
#[pyfunction]
fn fermat_poly(n: usize, d: u32, field: &PyFieldSpec) -> PyMultiPoly {
    PyMultiPoly {
        inner: poly::fermat_poly(n, d, &field.inner).poly,
    }
}

/// Seeded random homogeneous form of degree d in n+1 variables.
#[pyfunction]
fn random_homogeneous(n: usize, d: u32, field: &PyFieldSpec, seed: u64) -> PyMultiPoly {
    PyMultiPoly {
        inner: poly::random_homogeneous(n, d, &field.inner, seed),
    }
}

fn parse_mode(mode: &str) -> PyResult<HasseMode> {
    match mode {
        "auto" => Ok(HasseMode::Auto),
        "expansion" => Ok(HasseMode::Expansion),
        "charsum" => Ok(HasseMode::CharSum),
        "both" => Ok(HasseMode::Both),
        other => Err(PyValueError::new_err(format!(
            "unknown mode '{}': expected auto|expansion|charsum|both",
            other
        ))),
    }
}

/// Criterion coefficient of a degree-(n+1) form over a prime field.
#[pyfunction]
#[pyo3(signature = (form, mode = "both", workers = 1))]
fn hasse_coefficient(
    py: Python<'_>,
    form: &PyMultiPoly,
    mode: &str,
    workers: usize,
) -> PyResult<Py<PyDict>> {
    let options = HasseOptions {
        workers,
        ..HasseOptions::default()
    };
    let result =
        hasse::hasse_coefficient(&form.inner, parse_mode(mode)?, &options).map_err(hasse_err)?;
    let dict = PyDict::new(py);
    dict.set_item("coefficient", result.coefficient.index())?;
    dict.set_item(
        "method",
        match result.method {
            hasse::HasseMethod::PrunedExpansion => "pruned-expansion",
            hasse::HasseMethod::CharacterSum => "character-sum",
            hasse::HasseMethod::Both => "both",
        },
    )?;
    dict.set_item("agreement", result.agreement)?;
    dict.set_item("nonzero", result.is_nonzero())?;
    Ok(dict.into())
}

/// Count affine-cone and projective points of the given forms.
#[pyfunction]
#[pyo3(signature = (forms, field, ambient, budget = count::DEFAULT_BUDGET, workers = 1, verify = false))]
fn count_projective(
    py: Python<'_>,
    forms: Vec<PyMultiPoly>,
    field: &PyFieldSpec,
    ambient: usize,
    budget: u64,
    workers: usize,
    verify: bool,
) -> PyResult<Py<PyDict>> {
    let forms: Vec<_> = forms.into_iter().map(|f| f.inner).collect();
    let options = CountOptions {
        budget,
        workers,
        verify,
    };
    let result = count::count_projective_points(&forms, &field.inner, ambient + 1, &options)
        .map_err(count_err)?;
    let dict = PyDict::new(py);
    dict.set_item("q", result.q)?;
    dict.set_item("affine_cone_zeros", result.affine_cone_zeros)?;
    dict.set_item("projective_points", result.projective_points)?;
    Ok(dict.into())
}

fn smoothness_dict(py: Python<'_>, evidence: &SmoothnessEvidence) -> PyResult<Py<PyDict>> {
    let dict = PyDict::new(py);
    dict.set_item("kind", certify::smoothness_json_kind(evidence))?;
    match evidence {
        SmoothnessEvidence::ProbedNoSingularPoint { max_ext } => {
            dict.set_item("probe_depth", *max_ext)?;
            dict.set_item("witness", py.None())?;
        }
        SmoothnessEvidence::SingularPointFound { witness, ext_degree } => {
            dict.set_item("probe_depth", *ext_degree)?;
            dict.set_item("witness", witness.clone())?;
        }
        _ => {
            dict.set_item("probe_depth", py.None())?;
            dict.set_item("witness", py.None())?;
        }
    }
    Ok(dict.into())
}

fn certificate_dict(py: Python<'_>, cert: &certify::Certificate) -> PyResult<Py<PyDict>> {
    let dict = PyDict::new(py);
    dict.set_item("ambient_n", cert.ambient_n)?;
    dict.set_item("degrees", cert.degrees.clone())?;
    let field = PyDict::new(py);
    field.set_item("p", cert.field_p)?;
    field.set_item("k", cert.field_k)?;
    dict.set_item("field", field)?;
    dict.set_item("method", cert.method.as_str())?;
    dict.set_item("count", cert.count.map(|c| c.projective_points))?;
    dict.set_item("coefficient", cert.hasse.map(|h| h.coefficient.index()))?;
    dict.set_item("residue", cert.residue)?;
    dict.set_item("modulus", cert.modulus)?;
    dict.set_item("verdict", cert.verdict.as_str())?;
    dict.set_item("smoothness", smoothness_dict(py, &cert.smoothness)?)?;
    dict.set_item("classification", cert.classification.as_str())?;
    Ok(dict.into())
}

fn build_spec(
    forms: Vec<PyMultiPoly>,
    field: &PyFieldSpec,
    ambient: usize,
    smoothness: &str,
    probe_depth: u32,
) -> PyResult<CISpec> {
    let mode = match smoothness {
        "probe" => SmoothnessMode::Probe {
            max_ext: probe_depth,
        },
        "assert" => SmoothnessMode::Assert,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown smoothness mode '{}': expected probe|assert",
                other
            )));
        }
    };
    let forms: Vec<_> = forms.into_iter().map(|f| f.inner).collect();
    CISpec::new(ambient, forms, field.inner.clone(), mode).map_err(certify_err)
}

/// Certify via the projective point count mod q.
#[pyfunction]
#[pyo3(signature = (forms, field, ambient, smoothness = "probe", probe_depth = count::DEFAULT_MAX_EXT,
                    verify = false, budget = count::DEFAULT_BUDGET, workers = 1))]
#[allow(clippy::too_many_arguments)]
fn certify_not_uniruled(
    py: Python<'_>,
    forms: Vec<PyMultiPoly>,
    field: &PyFieldSpec,
    ambient: usize,
    smoothness: &str,
    probe_depth: u32,
    verify: bool,
    budget: u64,
    workers: usize,
) -> PyResult<Py<PyDict>> {
    let spec = build_spec(forms, field, ambient, smoothness, probe_depth)?;
    let options = CertifyOptions {
        verify,
        budget,
        workers,
    };
    let cert = certify::certify_not_uniruled(&spec, &options).map_err(certify_err)?;
    certificate_dict(py, &cert)
}

/// Certify a degree-(n+1) hypersurface via the criterion coefficient.
#[pyfunction]
#[pyo3(signature = (forms, field, ambient, smoothness = "probe", probe_depth = count::DEFAULT_MAX_EXT,
                    verify = false, budget = count::DEFAULT_BUDGET, workers = 1))]
#[allow(clippy::too_many_arguments)]
fn hasse_certify(
    py: Python<'_>,
    forms: Vec<PyMultiPoly>,
    field: &PyFieldSpec,
    ambient: usize,
    smoothness: &str,
    probe_depth: u32,
    verify: bool,
    budget: u64,
    workers: usize,
) -> PyResult<Py<PyDict>> {
    let spec = build_spec(forms, field, ambient, smoothness, probe_depth)?;
    let options = CertifyOptions {
        verify,
        budget,
        workers,
    };
    let cert = certify::hasse_certify(&spec, &options).map_err(certify_err)?;
    certificate_dict(py, &cert)
}

/// Fano / Calabi-Yau / general type from the multidegree.
#[pyfunction]
fn classify(n: usize, degrees: Vec<u32>) -> PyResult<String> {
    certify::classify(n, &degrees)
        .map(|c| c.as_str().to_string())
        .map_err(certify_err)
}

/// Codimension lower bounds for rational-curve and uniruled loci.
#[pyfunction]
fn codimension_bounds(py: Python<'_>, n: u64, degrees: Vec<u64>) -> PyResult<Py<PyDict>> {
    let report = bounds::codimension_bounds(n, &degrees)
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    let dict = PyDict::new(py);
    dict.set_item("n", report.n)?;
    dict.set_item("degrees", report.degrees.clone())?;
    dict.set_item("classification", report.classification)?;
    dict.set_item("sum_d", report.sum_d)?;
    dict.set_item("rc_locus_codim_lb", report.rc_locus_codim_lb)?;
    dict.set_item("rc_vacuous", report.rc_vacuous)?;
    dict.set_item("uniruled_locus_codim_lb", report.uniruled_locus_codim_lb)?;
    dict.set_item("uniruled_vacuous", report.uniruled_vacuous)?;
    dict.set_item("no_rational_curves", report.no_rational_curves)?;
    dict.set_item("hypersurface_moduli_dim", report.hypersurface_moduli_dim)?;
    Ok(dict.into())
}

fn report_dict(py: Python<'_>, report: &fermat::FermatReport) -> PyResult<Py<PyDict>> {
    let dict = PyDict::new(py);
    dict.set_item("p", report.p)?;
    dict.set_item("d", report.d)?;
    dict.set_item("n", report.n)?;
    dict.set_item("coprime", report.coprime)?;
    dict.set_item("sk_applicable", report.sk_applicable)?;
    dict.set_item("sk_nu", report.sk_nu)?;
    dict.set_item("unirational", report.unirational.as_str())?;
    dict.set_item("paper_nonuniruled", report.paper_nonuniruled)?;
    dict.set_item("verified_coefficient", report.verified_coefficient)?;
    Ok(dict.into())
}

/// Unirationality criterion report for the Fermat hypersurface (p, d, n).
#[pyfunction]
fn shioda_katsura(py: Python<'_>, p: u64, d: u64, n: u64) -> PyResult<Py<PyDict>> {
    let report = fermat::shioda_katsura(p, d, n).map_err(fermat_err)?;
    report_dict(py, &report)
}

/// Non-uniruled Fermat family flag, optionally confirmed by computing the
/// criterion coefficient.
#[pyfunction]
#[pyo3(signature = (p, d, n, verify = false, budget = count::DEFAULT_BUDGET))]
fn fermat_nonuniruled(
    py: Python<'_>,
    p: u64,
    d: u64,
    n: u64,
    verify: bool,
    budget: u64,
) -> PyResult<Py<PyDict>> {
    let options = ScanOptions {
        verify,
        budget,
        workers: 1,
    };
    let report = fermat::fermat_nonuniruled(p, d, n, &options).map_err(fermat_err)?;
    report_dict(py, &report)
}

/// One report per (p, d, n) with p prime; all ranges inclusive.
#[pyfunction]
#[pyo3(signature = (p_range, d_range, n_range, verify = false, budget = count::DEFAULT_BUDGET))]
fn fermat_scan(
    py: Python<'_>,
    p_range: (u64, u64),
    d_range: (u64, u64),
    n_range: (u64, u64),
    verify: bool,
    budget: u64,
) -> PyResult<Vec<Py<PyDict>>> {
    let options = ScanOptions {
        verify,
        budget,
        workers: 1,
    };
    let rows = fermat::fermat_scan(p_range, d_range, n_range, &options).map_err(fermat_err)?;
    rows.iter().map(|r| report_dict(py, r)).collect()
}

#[pymodule]
fn unirule(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyFieldSpec>()?;
    m.add_class::<PyMultiPoly>()?;
    m.add_function(wrap_pyfunction!(make_prime_field, m)?)?;
    m.add_function(wrap_pyfunction!(make_extension_field, m)?)?;
    m.add_function(wrap_pyfunction!(parse_poly, m)?)?;
    m.add_function(wrap_pyfunction!(fermat_poly, m)?)?;
    m.add_function(wrap_pyfunction!(random_homogeneous, m)?)?;
    m.add_function(wrap_pyfunction!(hasse_coefficient, m)?)?;
    m.add_function(wrap_pyfunction!(count_projective, m)?)?;
    m.add_function(wrap_pyfunction!(certify_not_uniruled, m)?)?;
    m.add_function(wrap_pyfunction!(hasse_certify, m)?)?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(codimension_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(shioda_katsura, m)?)?;
    m.add_function(wrap_pyfunction!(fermat_nonuniruled, m)?)?;
    m.add_function(wrap_pyfunction!(fermat_scan, m)?)?;
    Ok(())
}
