//! Point counting over small finite fields and certification that explicit
//! smooth complete intersections are not geometrically uniruled, together
//! with the codimension bookkeeping for rational-curve loci.
//!
//! The crate is organized around the pipeline:
//! [`field`] (exact F_q arithmetic) -> [`poly`] (sparse homogeneous forms)
//! -> [`count`] / [`hasse`] (the two numeric criteria) -> [`certify`]
//! (verdict assembly), with [`fermat`] and [`bounds`] providing the
//! congruence scans and codimension tables.

pub mod bounds;
pub mod certify;
pub mod count;
pub mod fermat;
pub mod field;
pub mod hasse;
pub mod poly;

mod exec;

pub use bounds::{codimension_bounds, hyperbolicity_step, BoundsError, BoundsReport};
pub use certify::{
    certify_not_uniruled, classify, hasse_certify, CISpec, Certificate, CertifyError,
    CertifyOptions, Classification, SmoothnessMode, Verdict,
};
pub use count::{
    count_affine_zeros, count_projective_points, singular_probe, CountError, CountOptions,
    CountResult, SmoothnessEvidence,
};
pub use fermat::{
    fermat_nonuniruled, fermat_scan, shioda_katsura, FermatError, FermatReport, ScanOptions,
    Unirational,
};
pub use field::{
    make_extension_field, make_prime_field, FieldElement, FieldEmbedding, FieldError, FieldSpec,
};
pub use hasse::{
    hasse_coefficient, hasse_coefficient_charsum, hasse_coefficient_expansion, HasseError,
    HasseMethod, HasseMode, HasseOptions, HasseResult,
};
pub use poly::{
    fermat_poly, parse_poly, partials, poly_eval, poly_mul, random_homogeneous, FermatForm,
    Monomial, MultiPoly, PolyError,
};
