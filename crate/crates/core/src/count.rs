//! Exhaustive point counting for projective complete intersections over
//! F_q, and desk-scale probing for singular points over small extensions.
//!
//! Projective points are enumerated directly through normalized
//! representatives (first nonzero coordinate equal to one), which gives
//! per-point access for the Jacobian check. Counting partitions the
//! representative index space across shared-nothing workers; the merged
//! result is identical for every worker count.

use thiserror::Error;

use crate::exec;
use crate::field::{FieldElement, FieldEmbedding, FieldError, FieldSpec};
use crate::poly::{partials, poly_eval, MultiPoly};

pub const DEFAULT_BUDGET: u64 = 100_000_000;
pub const DEFAULT_MAX_EXT: u32 = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CountError {
    #[error("enumeration of {needed} points exceeds the budget {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },
    #[error("cone identity violated: affine {affine} != projective {projective} * (q-1) + 1")]
    ConeIdentityViolation { affine: u64, projective: u64 },
}

#[derive(Debug, Clone, Copy)]
pub struct CountOptions {
    /// Maximum number of enumerated points per counting call.
    pub budget: u64,
    pub workers: usize,
    /// Re-derive the affine count independently and check the cone identity.
    pub verify: bool,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            budget: DEFAULT_BUDGET,
            workers: 1,
            verify: false,
        }
    }
}

/// Exact counts for one variety over one field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountResult {
    pub q: u64,
    /// Common zeros of all forms in F_q^{n+1} (the affine cone).
    pub affine_cone_zeros: u64,
    pub projective_points: u64,
}

/// Graded evidence for the smoothness hypothesis. Finite probing cannot
/// certify smoothness over the algebraic closure, so certificates carry
/// exactly what was checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SmoothnessEvidence {
    /// Single Fermat form with p not dividing d: smooth exactly.
    FermatExact,
    /// No singular point found over F_{q^m} for any m up to max_ext.
    ProbedNoSingularPoint { max_ext: u32 },
    /// A singular point, as element indices over the extension where it lives.
    SingularPointFound { witness: Vec<u64>, ext_degree: u32 },
    /// The caller asserted smoothness without probing.
    Asserted,
}

fn check_forms(forms: &[MultiPoly], field: &FieldSpec, n_vars: usize) {
    for form in forms {
        assert_eq!(form.field(), field, "form over a different field");
        assert_eq!(form.n_vars(), n_vars, "form in a different variable count");
    }
}

/// Number of points in F_q^{n_vars}, or None on overflow.
fn affine_total(q: u64, n_vars: usize) -> Option<u64> {
    (0..n_vars).try_fold(1u64, |acc, _| acc.checked_mul(q))
}

/// Number of projective representatives, 1 + q + ... + q^{n_vars-1}.
fn projective_total(q: u64, n_vars: usize) -> Option<u64> {
    let mut total = 0u64;
    let mut power = 1u64;
    for _ in 0..n_vars {
        total = total.checked_add(power)?;
        power = power.checked_mul(q)?;
    }
    Some(total)
}

fn check_budget(total: Option<u64>, budget: u64) -> Result<u64, CountError> {
    match total {
        Some(t) if t <= budget => Ok(t),
        Some(t) => Err(CountError::BudgetExceeded { needed: t, budget }),
        None => Err(CountError::BudgetExceeded {
            needed: u64::MAX,
            budget,
        }),
    }
}

fn decode_affine(index: u64, q: u64, field: &FieldSpec, point: &mut [FieldElement]) {
    let mut rest = index;
    for coord in point.iter_mut() {
        *coord = field.element(rest % q);
        rest /= q;
    }
}

/// Decode a global representative index into a normalized projective point:
/// leading blocks are ordered by the position of the first nonzero
/// coordinate, tails enumerate the free coordinates as base-q digits.
fn decode_projective(index: u64, q: u64, field: &FieldSpec, point: &mut [FieldElement]) {
    let n_vars = point.len();
    let mut rest = index;
    let mut lead = 0usize;
    loop {
        let block = q.pow((n_vars - 1 - lead) as u32);
        if rest < block {
            break;
        }
        rest -= block;
        lead += 1;
    }
    for coord in point.iter_mut().take(lead) {
        *coord = field.zero();
    }
    point[lead] = field.one();
    for coord in point.iter_mut().skip(lead + 1) {
        *coord = field.element(rest % q);
        rest /= q;
    }
}

fn vanishes_at(forms: &[MultiPoly], point: &[FieldElement]) -> bool {
    forms
        .iter()
        .all(|f| poly_eval(f, point).expect("validated arity").is_zero())
}

/// Exact count of common zeros of the forms in F_q^{n_vars}.
pub fn count_affine_zeros(
    forms: &[MultiPoly],
    field: &FieldSpec,
    n_vars: usize,
    options: &CountOptions,
) -> Result<u64, CountError> {
    check_forms(forms, field, n_vars);
    let q = field.q();
    let total = check_budget(affine_total(q, n_vars), options.budget)?;
    Ok(exec::sum_partitioned(total, options.workers, |range| {
        let mut point = vec![FieldElement::ZERO; n_vars];
        let mut count = 0u64;
        for idx in range {
            decode_affine(idx, q, field, &mut point);
            if vanishes_at(forms, &point) {
                count += 1;
            }
        }
        count
    }))
}

/// Exact projective point count via normalized representatives. The affine
/// cone count is derived through the cone identity, and re-counted
/// independently when `options.verify` is set.
pub fn count_projective_points(
    forms: &[MultiPoly],
    field: &FieldSpec,
    n_vars: usize,
    options: &CountOptions,
) -> Result<CountResult, CountError> {
    check_forms(forms, field, n_vars);
    let q = field.q();
    let total = check_budget(projective_total(q, n_vars), options.budget)?;
    let projective = exec::sum_partitioned(total, options.workers, |range| {
        let mut point = vec![FieldElement::ZERO; n_vars];
        let mut count = 0u64;
        for idx in range {
            decode_projective(idx, q, field, &mut point);
            if vanishes_at(forms, &point) {
                count += 1;
            }
        }
        count
    });
    let affine = projective * (q - 1) + 1;
    if options.verify {
        let direct = count_affine_zeros(forms, field, n_vars, options)?;
        if direct != affine {
            return Err(CountError::ConeIdentityViolation {
                affine: direct,
                projective,
            });
        }
    }
    Ok(CountResult {
        q,
        affine_cone_zeros: affine,
        projective_points: projective,
    })
}

/// Search for singular points of the variety over F_{q^m} for m = 1..max_ext.
///
/// A point is singular when the Jacobian of the defining forms drops below
/// full rank there. Returns the witness with the smallest enumeration index
/// at the smallest extension degree, or graded no-singular-point evidence.
/// A single Fermat form with p not dividing d is reported smooth without
/// probing.
pub fn singular_probe(
    forms: &[MultiPoly],
    field: &FieldSpec,
    n_vars: usize,
    max_ext: u32,
    options: &CountOptions,
) -> Result<SmoothnessEvidence, CountError> {
    check_forms(forms, field, n_vars);
    if forms.len() == 1 && crate::poly::is_fermat_form(&forms[0]) {
        let d = forms[0].degree().expect("fermat form is nonzero");
        if u64::from(d) % field.p() != 0 {
            return Ok(SmoothnessEvidence::FermatExact);
        }
    }

    let base_partials: Vec<Vec<MultiPoly>> = forms.iter().map(partials).collect();

    for m in 1..=max_ext {
        let embedding = FieldEmbedding::new(field, m).map_err(|e| match e {
            FieldError::CeilingExceeded { q, ceiling } => CountError::BudgetExceeded {
                needed: q,
                budget: ceiling,
            },
            other => panic!("unexpected field error while extending: {other}"),
        })?;
        let target = embedding.target().clone();
        let q_m = target.q();
        let total = check_budget(projective_total(q_m, n_vars), options.budget)?;

        let ext_forms: Vec<MultiPoly> = forms.iter().map(|f| embed_poly(&embedding, f)).collect();
        let ext_partials: Vec<Vec<MultiPoly>> = base_partials
            .iter()
            .map(|row| row.iter().map(|g| embed_poly(&embedding, g)).collect())
            .collect();

        let hit = exec::first_partitioned(total, options.workers, |range| {
            let mut point = vec![FieldElement::ZERO; n_vars];
            for idx in range {
                decode_projective(idx, q_m, &target, &mut point);
                if !vanishes_at(&ext_forms, &point) {
                    continue;
                }
                let rank = jacobian_rank(&ext_partials, &point, &target);
                if rank < forms.len() {
                    return Some((idx, point.clone()));
                }
            }
            None
        });

        if let Some((_, point)) = hit {
            debug_assert!(vanishes_at(&ext_forms, &point));
            return Ok(SmoothnessEvidence::SingularPointFound {
                witness: point.iter().map(|e| e.index()).collect(),
                ext_degree: m,
            });
        }
    }
    Ok(SmoothnessEvidence::ProbedNoSingularPoint { max_ext })
}

fn embed_poly(embedding: &FieldEmbedding, f: &MultiPoly) -> MultiPoly {
    let target = embedding.target().clone();
    let terms: Vec<(Vec<u32>, FieldElement)> = f
        .terms()
        .map(|(m, c)| (m.exponents().to_vec(), embedding.map(c)))
        .collect();
    MultiPoly::from_terms(target, f.n_vars(), terms)
}

/// Rank of the Jacobian matrix (rows: forms, columns: variables) at a point,
/// by Gaussian elimination with exact field arithmetic.
fn jacobian_rank(
    partial_rows: &[Vec<MultiPoly>],
    point: &[FieldElement],
    field: &FieldSpec,
) -> usize {
    let mut rows: Vec<Vec<FieldElement>> = partial_rows
        .iter()
        .map(|row| {
            row.iter()
                .map(|g| poly_eval(g, point).expect("validated arity"))
                .collect()
        })
        .collect();
    let n_cols = point.len();
    let mut rank = 0usize;
    for col in 0..n_cols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = field
            .invert(rows[rank][col])
            .expect("pivot is nonzero");
        for r in rank + 1..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let factor = field.mul(rows[r][col], inv);
            for c in col..n_cols {
                let sub = field.mul(factor, rows[rank][c]);
                rows[r][c] = field.sub(rows[r][c], sub);
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}
