//! Codimension lower bounds for the loci of complete intersections that
//! contain rational curves or are uniruled, plus the no-rational-curves
//! threshold d >= 2n-1 for hypersurfaces.
//!
//! Bounds that come out non-positive are reported raw and flagged vacuous
//! rather than clamped, so tables show exactly what the formulas give.

use serde::Serialize;
use thiserror::Error;

use crate::certify::{classify, Classification};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("invalid multidegree: {0}")]
    InvalidMultidegree(String),
    #[error("negative shift {0}: the induction steps downward by c >= 0")]
    NegativeShift(i64),
}

/// Classification plus the codimension arithmetic for one (n, multidegree).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub n: u64,
    pub degrees: Vec<u64>,
    pub classification: &'static str,
    pub sum_d: u64,
    /// Lower bound for the rational-curve locus: sum(d) - 2n + 2.
    pub rc_locus_codim_lb: i64,
    pub rc_vacuous: bool,
    /// Lower bound for the uniruled locus: sum(d) - n.
    pub uniruled_locus_codim_lb: i64,
    pub uniruled_vacuous: bool,
    /// Hypersurfaces only: a very general member contains no rational
    /// curves once d >= 2n - 1.
    pub no_rational_curves: bool,
    /// C(n+d, d) - 1 for hypersurfaces; absent for higher codimension.
    pub hypersurface_moduli_dim: Option<u64>,
}

/// Fill the full report for ambient dimension n and the given multidegree.
pub fn codimension_bounds(n: u64, degrees: &[u64]) -> Result<BoundsReport, BoundsError> {
    validate(n, degrees)?;
    let degrees32: Vec<u32> = degrees.iter().map(|&d| d as u32).collect();
    let classification = classify(n as usize, &degrees32)
        .map_err(|e| BoundsError::InvalidMultidegree(e.to_string()))?;
    let sum_d: u64 = degrees.iter().sum();
    let rc = sum_d as i64 - 2 * n as i64 + 2;
    let uniruled = sum_d as i64 - n as i64;
    let no_rational_curves = degrees.len() == 1 && degrees[0] as i64 >= 2 * n as i64 - 1;
    let hypersurface_moduli_dim = if degrees.len() == 1 {
        binomial(n + degrees[0], degrees[0]).map(|b| b - 1)
    } else {
        None
    };
    Ok(BoundsReport {
        n,
        degrees: degrees.to_vec(),
        classification: classification_str(classification),
        sum_d,
        rc_locus_codim_lb: rc,
        rc_vacuous: rc <= 0,
        uniruled_locus_codim_lb: uniruled,
        uniruled_vacuous: uniruled <= 0,
        no_rational_curves,
        hypersurface_moduli_dim,
    })
}

fn classification_str(c: Classification) -> &'static str {
    c.as_str()
}

/// One step of the downward induction: properness of the rational-curve
/// locus at the base dimension sum(d) - 1 forces codimension at least c+1
/// after cutting down by c ambient dimensions.
pub fn hyperbolicity_step(n: u64, degrees: &[u64], c: i64) -> Result<u64, BoundsError> {
    validate(n, degrees)?;
    if c < 0 {
        return Err(BoundsError::NegativeShift(c));
    }
    Ok(c as u64 + 1)
}

fn validate(n: u64, degrees: &[u64]) -> Result<(), BoundsError> {
    if degrees.is_empty() {
        return Err(BoundsError::InvalidMultidegree("empty multidegree".into()));
    }
    if degrees.iter().any(|&d| d == 0) {
        return Err(BoundsError::InvalidMultidegree(
            "degrees must be positive".into(),
        ));
    }
    if degrees.len() as u64 > n {
        return Err(BoundsError::InvalidMultidegree(format!(
            "{} forms exceed ambient dimension {}",
            degrees.len(),
            n
        )));
    }
    Ok(())
}

/// Exact C(n, k) for k <= n, None on u64 overflow.
fn binomial(n: u64, k: u64) -> Option<u64> {
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc.checked_mul((n - k + i) as u128)?;
        acc /= i as u128; // exact: C(n-k+i, i) is an integer
    }
    u64::try_from(acc).ok()
}

impl BoundsReport {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }
}

pub const BOUNDS_CSV_HEADER: &str = "n,degrees,classification,sum_d,rc_locus_codim_lb,\
rc_vacuous,uniruled_locus_codim_lb,uniruled_vacuous,no_rational_curves,hypersurface_moduli_dim";

pub fn bounds_csv_row(r: &BoundsReport) -> String {
    let degrees = r
        .degrees
        .iter()
        .map(|d| d.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    format!(
        "{},{},{},{},{},{},{},{},{},{}",
        r.n,
        degrees,
        r.classification,
        r.sum_d,
        r.rc_locus_codim_lb,
        r.rc_vacuous,
        r.uniruled_locus_codim_lb,
        r.uniruled_vacuous,
        r.no_rational_curves,
        r.hypersurface_moduli_dim
            .map(|v| v.to_string())
            .unwrap_or_default(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quintic_surface_threshold() {
        let r = codimension_bounds(3, &[5]).unwrap();
        assert_eq!(r.rc_locus_codim_lb, 1);
        assert!(!r.rc_vacuous);
        assert_eq!(r.uniruled_locus_codim_lb, 2);
        assert!(r.no_rational_curves); // 5 = 2*3 - 1
        assert_eq!(r.classification, "general-type");
        assert_eq!(r.hypersurface_moduli_dim, Some(55)); // C(8,5) - 1
    }

    #[test]
    fn calabi_yau_intersection_has_vacuous_rc_bound() {
        let r = codimension_bounds(4, &[2, 3]).unwrap();
        assert_eq!(r.classification, "calabi-yau");
        assert_eq!(r.rc_locus_codim_lb, -1);
        assert!(r.rc_vacuous);
        assert_eq!(r.uniruled_locus_codim_lb, 1);
        assert!(!r.uniruled_vacuous);
        assert!(!r.no_rational_curves);
        assert_eq!(r.hypersurface_moduli_dim, None);
    }

    #[test]
    fn plane_quartic_bounds() {
        let r = codimension_bounds(2, &[4]).unwrap();
        assert_eq!(r.rc_locus_codim_lb, 2);
        assert!(r.no_rational_curves); // 4 >= 3
        assert_eq!(r.hypersurface_moduli_dim, Some(14)); // C(6,4) - 1
    }

    #[test]
    fn hyperbolicity_step_examples() {
        assert_eq!(hyperbolicity_step(4, &[5], 0).unwrap(), 1);
        // Base n0 = sum(d) - 1 = 4; one step down reaches ambient 3 with
        // bound 2 = sum(d) - 3.
        assert_eq!(hyperbolicity_step(4, &[5], 1).unwrap(), 2);
        assert_eq!(
            hyperbolicity_step(4, &[5], -1).unwrap_err(),
            BoundsError::NegativeShift(-1)
        );
    }

    #[test]
    fn chain_consistency_with_uniruled_bound() {
        for sum_d in 3u64..=30 {
            for n in 1..sum_d - 1 {
                let c = (sum_d - 1 - n) as i64;
                let step = hyperbolicity_step(sum_d - 1, &[sum_d], c).unwrap();
                let report = codimension_bounds(n.max(1), &[sum_d]).unwrap();
                assert_eq!(step as i64, report.uniruled_locus_codim_lb, "sum_d={sum_d} n={n}");
            }
        }
    }

    #[test]
    fn monotonicity_in_degree_and_dimension() {
        let base = codimension_bounds(4, &[3, 4]).unwrap();
        let up_d = codimension_bounds(4, &[3, 5]).unwrap();
        assert_eq!(up_d.rc_locus_codim_lb, base.rc_locus_codim_lb + 1);
        assert_eq!(up_d.uniruled_locus_codim_lb, base.uniruled_locus_codim_lb + 1);
        let up_n = codimension_bounds(5, &[3, 4]).unwrap();
        assert_eq!(up_n.rc_locus_codim_lb, base.rc_locus_codim_lb - 2);
        assert_eq!(up_n.uniruled_locus_codim_lb, base.uniruled_locus_codim_lb - 1);
    }

    #[test]
    fn permutation_invariance() {
        let a = codimension_bounds(6, &[2, 3, 4]).unwrap();
        let b = codimension_bounds(6, &[4, 2, 3]).unwrap();
        assert_eq!(a.rc_locus_codim_lb, b.rc_locus_codim_lb);
        assert_eq!(a.uniruled_locus_codim_lb, b.uniruled_locus_codim_lb);
        assert_eq!(a.classification, b.classification);
    }

    #[test]
    fn bound_relationship_identity() {
        for n in 1u64..=10 {
            for d in 1u64..=12 {
                let r = codimension_bounds(n, &[d]).unwrap();
                assert_eq!(
                    r.rc_locus_codim_lb,
                    r.uniruled_locus_codim_lb - n as i64 + 2
                );
            }
        }
    }

    #[test]
    fn invalid_multidegrees_are_rejected() {
        assert!(codimension_bounds(3, &[]).is_err());
        assert!(codimension_bounds(3, &[0]).is_err());
        assert!(codimension_bounds(2, &[2, 2, 2]).is_err());
    }

    #[test]
    fn binomial_is_exact() {
        assert_eq!(binomial(8, 5), Some(56));
        assert_eq!(binomial(6, 4), Some(15));
        assert_eq!(binomial(4, 0), Some(1));
        assert_eq!(binomial(200, 100), None); // overflows u64
    }
}
