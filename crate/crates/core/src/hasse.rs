//! The criterion coefficient for degree-(n+1) hypersurfaces over a prime
//! field: the coefficient of (x0...xn)^{p-1} in F^{p-1}.
//!
//! Two independent algorithms are provided and must agree:
//! a pruned polynomial expansion, and a character-sum identity that reads
//! the coefficient off the affine zero count. The coefficient generalizes
//! the Hasse invariant of an elliptic curve; it is nonzero exactly when the
//! projective point count over F_p is not 1 mod p.

use thiserror::Error;

use crate::exec;
use crate::field::{FieldElement, FieldSpec};
use crate::poly::{poly_eval, poly_mul, Monomial, MultiPoly};

/// Enumeration size (p^{n+1}) up to which Auto mode prefers the
/// character sum over the pruned expansion.
pub const DEFAULT_AUTO_THRESHOLD: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HasseError {
    #[error("degree {degree} does not equal n+1 = {expected} for the ambient space")]
    DegreeMismatch { degree: u32, expected: u32 },
    #[error("coefficient criterion is defined over prime fields only (k = {0})")]
    ExtensionFieldUnsupported(u32),
    #[error("internal disagreement: expansion {expansion} vs character sum {charsum}")]
    Disagreement { expansion: u64, charsum: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HasseMethod {
    PrunedExpansion,
    CharacterSum,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HasseMode {
    Auto,
    Expansion,
    CharSum,
    Both,
}

/// The computed criterion coefficient, a prime-field element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HasseResult {
    pub coefficient: FieldElement,
    pub method: HasseMethod,
    /// Set iff both algorithms ran and were compared.
    pub agreement: Option<bool>,
}

impl HasseResult {
    pub fn is_nonzero(&self) -> bool {
        !self.coefficient.is_zero()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct HasseOptions {
    pub auto_threshold: u64,
    pub workers: usize,
}

impl Default for HasseOptions {
    fn default() -> Self {
        HasseOptions {
            auto_threshold: DEFAULT_AUTO_THRESHOLD,
            workers: 1,
        }
    }
}

/// Validates the standing hypotheses: prime field, homogeneous of degree
/// n+1 in n+1 variables. Returns (p, n_vars).
fn validate(f: &MultiPoly) -> Result<(u64, usize), HasseError> {
    let field = f.field();
    if !field.is_prime_field() {
        return Err(HasseError::ExtensionFieldUnsupported(field.k()));
    }
    let expected = f.n_vars() as u32;
    match f.degree() {
        Some(d) if d == expected && f.is_homogeneous() => Ok((field.p(), f.n_vars())),
        Some(d) => Err(HasseError::DegreeMismatch { degree: d, expected }),
        None => Err(HasseError::DegreeMismatch { degree: 0, expected }),
    }
}

/// Coefficient via direct computation of F^{p-1}: p-2 successive products,
/// discarding after every step each monomial with any exponent above p-1
/// (exponents never decrease, so such monomials cannot contribute).
pub fn hasse_coefficient_expansion(f: &MultiPoly) -> Result<HasseResult, HasseError> {
    let (p, n_vars) = validate(f)?;
    let cap = (p - 1) as u32;
    let mut power = f.clone();
    for _ in 0..p.saturating_sub(2) {
        let product = poly_mul(&power, f).expect("self-compatible operands");
        power = prune(product, cap);
    }
    let target = vec![cap; n_vars];
    Ok(HasseResult {
        coefficient: power.coefficient(&target),
        method: HasseMethod::PrunedExpansion,
        agreement: None,
    })
}

fn prune(poly: MultiPoly, cap: u32) -> MultiPoly {
    let field = poly.field().clone();
    let n_vars = poly.n_vars();
    let kept = poly
        .terms()
        .filter(|(m, _)| m.exponents().iter().all(|&e| e <= cap))
        .map(|(m, c)| (m.exponents().to_vec(), c))
        .collect::<Vec<_>>();
    MultiPoly::from_terms(field, n_vars, kept)
}

/// Coefficient via the character-sum identity: summing F(v)^{p-1} over all
/// affine points kills every monomial of F^{p-1} except the target, so the
/// coefficient is (-1)^n * #zeros mod p.
pub fn hasse_coefficient_charsum(f: &MultiPoly) -> Result<HasseResult, HasseError> {
    hasse_coefficient_charsum_with(f, 1)
}

pub fn hasse_coefficient_charsum_with(
    f: &MultiPoly,
    workers: usize,
) -> Result<HasseResult, HasseError> {
    let (p, n_vars) = validate(f)?;
    let total = p.pow(n_vars as u32);
    let zeros = exec::sum_partitioned(total, workers, |range| {
        let mut point = vec![FieldElement::ZERO; n_vars];
        let field = f.field();
        let mut count = 0u64;
        for idx in range {
            decode_affine(idx, p, field, &mut point);
            if poly_eval(f, &point).expect("validated arity").is_zero() {
                count += 1;
            }
        }
        count
    });
    let n = n_vars as u64 - 1; // ambient projective dimension
    let residue = zeros % p;
    let coefficient = if n % 2 == 0 {
        residue
    } else {
        (p - residue) % p
    };
    Ok(HasseResult {
        coefficient: f.field().element(coefficient),
        method: HasseMethod::CharacterSum,
        agreement: None,
    })
}

fn decode_affine(index: u64, q: u64, field: &FieldSpec, point: &mut [FieldElement]) {
    let mut rest = index;
    for coord in point.iter_mut() {
        *coord = field.element(rest % q);
        rest /= q;
    }
}

/// Dispatch: Auto routes small enumerations to the character sum, Both runs
/// the two algorithms and insists they agree.
pub fn hasse_coefficient(
    f: &MultiPoly,
    mode: HasseMode,
    options: &HasseOptions,
) -> Result<HasseResult, HasseError> {
    let (p, n_vars) = validate(f)?;
    match mode {
        HasseMode::Expansion => hasse_coefficient_expansion(f),
        HasseMode::CharSum => hasse_coefficient_charsum_with(f, options.workers),
        HasseMode::Auto => {
            let small = p
                .checked_pow(n_vars as u32)
                .map(|total| total <= options.auto_threshold)
                .unwrap_or(false);
            if small {
                hasse_coefficient_charsum_with(f, options.workers)
            } else {
                hasse_coefficient_expansion(f)
            }
        }
        HasseMode::Both => {
            let expansion = hasse_coefficient_expansion(f)?;
            let charsum = hasse_coefficient_charsum_with(f, options.workers)?;
            if expansion.coefficient != charsum.coefficient {
                return Err(HasseError::Disagreement {
                    expansion: expansion.coefficient.index(),
                    charsum: charsum.coefficient.index(),
                });
            }
            Ok(HasseResult {
                coefficient: expansion.coefficient,
                method: HasseMethod::Both,
                agreement: Some(true),
            })
        }
    }
}

/// True iff the monomial is the all-(p-1) target of the criterion.
pub fn is_target_monomial(m: &Monomial, p: u64) -> bool {
    m.exponents().iter().all(|&e| u64::from(e) == p - 1)
}
