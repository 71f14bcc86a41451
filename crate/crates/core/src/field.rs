//! Exact arithmetic in small finite fields F_p and F_{p^k}, with full
//! element enumeration.
//!
//! A [`FieldSpec`] describes the field and performs all arithmetic; a
//! [`FieldElement`] is a compact index into the field. For prime fields the
//! index is the residue itself; for extensions the base-p digits of the
//! index are the coefficients of the element on the power basis of the
//! modulus. Everything is immutable after construction and safe to share
//! across threads.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Default upper bound on field size for exhaustive enumeration.
pub const DEFAULT_ENUMERATION_CEILING: u64 = 1 << 20;

/// Hard cap on field size; keeps every intermediate product inside u64.
pub const MAX_SUPPORTED_FIELD_SIZE: u64 = 1 << 31;

/// Largest extension degree that can occur under the hard cap (2^31 > p^k, p >= 2).
const MAX_DEGREE: usize = 31;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field size {q} exceeds the enumeration ceiling {ceiling}")]
    CeilingExceeded { q: u64, ceiling: u64 },
    #[error("division by zero")]
    DivisionByZero,
}

/// An element of a finite field, stored as its enumeration index.
///
/// The index is canonical: equal indices are equal elements. Interpreting an
/// index requires the owning [`FieldSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Position of this element in the field enumeration, in [0, q).
    #[inline]
    pub fn index(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// A concrete finite field F_q with q = p^k.
#[derive(Debug, Clone)]
pub struct FieldSpec {
    p: u64,
    k: u32,
    q: u64,
    /// Monic degree-k modulus over F_p, little-endian coefficients of
    /// length k+1. Present iff k > 1.
    modulus: Option<Vec<u64>>,
    /// Seed used by the modulus search, recorded for reproducibility.
    seed: Option<u64>,
}

// Two specs describe the same field iff characteristic, degree and modulus
// agree; the recorded seed is provenance only.
impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for FieldSpec {}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.k == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}", self.p, self.k)
        }
    }
}

/// Construct the prime field F_p. Primality is verified by trial division.
pub fn make_prime_field(p: u64) -> Result<FieldSpec, FieldError> {
    make_prime_field_with_ceiling(p, DEFAULT_ENUMERATION_CEILING)
}

pub fn make_prime_field_with_ceiling(p: u64, ceiling: u64) -> Result<FieldSpec, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    let ceiling = ceiling.min(MAX_SUPPORTED_FIELD_SIZE);
    if p > ceiling {
        return Err(FieldError::CeilingExceeded { q: p, ceiling });
    }
    Ok(FieldSpec {
        p,
        k: 1,
        q: p,
        modulus: None,
        seed: None,
    })
}

/// Construct F_{p^k} for k >= 2 by seeded search for an irreducible monic
/// modulus. Deterministic for a fixed seed.
pub fn make_extension_field(p: u64, k: u32, seed: u64) -> Result<FieldSpec, FieldError> {
    make_extension_field_with_ceiling(p, k, seed, DEFAULT_ENUMERATION_CEILING)
}

pub fn make_extension_field_with_ceiling(
    p: u64,
    k: u32,
    seed: u64,
    ceiling: u64,
) -> Result<FieldSpec, FieldError> {
    assert!(k >= 2, "extension degree must be at least 2");
    if !is_prime(p) {
        return Err(FieldError::NotPrime(p));
    }
    let ceiling = ceiling.min(MAX_SUPPORTED_FIELD_SIZE);
    let q = match checked_pow(p, k) {
        Some(q) if q <= ceiling => q,
        Some(q) => return Err(FieldError::CeilingExceeded { q, ceiling }),
        None => {
            return Err(FieldError::CeilingExceeded {
                q: u64::MAX,
                ceiling,
            })
        }
    };
    let modulus = find_irreducible(p, k, seed);
    Ok(FieldSpec {
        p,
        k,
        q,
        modulus: Some(modulus),
        seed: Some(seed),
    })
}

impl FieldSpec {
    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }

    /// Field size q = p^k.
    #[inline]
    pub fn q(&self) -> u64 {
        self.q
    }

    #[inline]
    pub fn is_prime_field(&self) -> bool {
        self.k == 1
    }

    /// Monic modulus coefficients (little-endian), for k > 1.
    pub fn modulus(&self) -> Option<&[u64]> {
        self.modulus.as_deref()
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    #[inline]
    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    #[inline]
    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// Element at a given enumeration index.
    #[inline]
    pub fn element(&self, index: u64) -> FieldElement {
        assert!(index < self.q, "element index {} out of range", index);
        FieldElement(index)
    }

    /// Image of an integer under the canonical map Z -> F_q (reduction mod p).
    #[inline]
    pub fn from_int(&self, value: u64) -> FieldElement {
        FieldElement(value % self.p)
    }

    /// Coefficient vector of an element on the power basis, length k.
    pub fn coefficients(&self, a: FieldElement) -> Vec<u64> {
        let mut digits = Vec::with_capacity(self.k as usize);
        let mut rest = a.0;
        for _ in 0..self.k {
            digits.push(rest % self.p);
            rest /= self.p;
        }
        digits
    }

    /// Element with the given power-basis coefficients (each reduced mod p).
    pub fn from_coefficients(&self, coeffs: &[u64]) -> FieldElement {
        assert!(coeffs.len() <= self.k as usize, "too many coefficients");
        let mut index = 0u64;
        for &c in coeffs.iter().rev() {
            index = index * self.p + c % self.p;
        }
        FieldElement(index)
    }

    /// All q elements, zero first, in a fixed deterministic order.
    pub fn enumerate_elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.k == 1 {
            let s = a.0 + b.0;
            FieldElement(if s >= self.p { s - self.p } else { s })
        } else {
            let mut da = self.digits(a);
            let db = self.digits(b);
            for i in 0..self.k as usize {
                da[i] += db[i];
                if da[i] >= self.p {
                    da[i] -= self.p;
                }
            }
            self.encode(&da)
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.k == 1 {
            FieldElement(if a.0 == 0 { 0 } else { self.p - a.0 })
        } else {
            let mut d = self.digits(a);
            for digit in d.iter_mut() {
                if *digit != 0 {
                    *digit = self.p - *digit;
                }
            }
            self.encode(&d)
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.k == 1 {
            return FieldElement(a.0 * b.0 % self.p);
        }
        let da = self.digits(a);
        let db = self.digits(b);
        let k = self.k as usize;
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for (i, &x) in da.iter().enumerate().take(k) {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate().take(k) {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let modulus = self.modulus.as_ref().expect("extension field has modulus");
        // t^k = -(m_{k-1} t^{k-1} + ... + m_0), applied from the top down.
        for i in (k..=2 * k - 2).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..k {
                let m = modulus[j];
                if m != 0 {
                    prod[i - k + j] = (prod[i - k + j] + (self.p - m) * c) % self.p;
                }
            }
        }
        self.encode(&prod[..k])
    }

    /// a^e by square-and-multiply, with the convention 0^0 = 1.
    pub fn power(&self, a: FieldElement, e: u64) -> FieldElement {
        let mut result = FieldElement::ONE;
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(base, base);
            }
        }
        result
    }

    /// Multiplicative inverse; the only failing input is zero.
    pub fn invert(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.power(a, self.q - 2))
    }

    #[inline]
    fn digits(&self, a: FieldElement) -> [u64; MAX_DEGREE] {
        let mut out = [0u64; MAX_DEGREE];
        let mut rest = a.0;
        let mut i = 0;
        while rest > 0 {
            out[i] = rest % self.p;
            rest /= self.p;
            i += 1;
        }
        out
    }

    #[inline]
    fn encode(&self, digits: &[u64]) -> FieldElement {
        let mut index = 0u64;
        for &d in digits.iter().rev() {
            index = index * self.p + d;
        }
        FieldElement(index)
    }
}

/// Embedding of a base field F_q into the extension F_{q^m}.
///
/// The target field and the embedding are deterministic functions of the
/// base field and m. For a non-prime base the image of the base generator
/// is the first root of the base modulus in enumeration order.
#[derive(Debug, Clone)]
pub struct FieldEmbedding {
    base: FieldSpec,
    target: FieldSpec,
    /// Images of the base-generator powers 0..k in the target.
    generator_powers: Vec<FieldElement>,
}

impl FieldEmbedding {
    pub fn new(base: &FieldSpec, m: u32) -> Result<Self, FieldError> {
        Self::with_ceiling(base, m, DEFAULT_ENUMERATION_CEILING)
    }

    pub fn with_ceiling(base: &FieldSpec, m: u32, ceiling: u64) -> Result<Self, FieldError> {
        assert!(m >= 1, "extension degree must be positive");
        if m == 1 {
            return Ok(FieldEmbedding {
                base: base.clone(),
                target: base.clone(),
                generator_powers: Vec::new(),
            });
        }
        let degree = base.k * m;
        let seed = base.seed.unwrap_or(0).wrapping_add(u64::from(m));
        let target = make_extension_field_with_ceiling(base.p, degree, seed, ceiling)?;
        let generator_powers = if base.k == 1 {
            Vec::new()
        } else {
            let root = find_root_of_base_modulus(base, &target);
            let mut powers = Vec::with_capacity(base.k as usize);
            let mut acc = target.one();
            for _ in 0..base.k {
                powers.push(acc);
                acc = target.mul(acc, root);
            }
            powers
        };
        Ok(FieldEmbedding {
            base: base.clone(),
            target,
            generator_powers,
        })
    }

    pub fn base(&self) -> &FieldSpec {
        &self.base
    }

    pub fn target(&self) -> &FieldSpec {
        &self.target
    }

    /// Map a base-field element into the target field.
    pub fn map(&self, a: FieldElement) -> FieldElement {
        if self.target.q == self.base.q {
            return a;
        }
        if self.base.k == 1 {
            // Prime subfield: constants map to constants.
            return a;
        }
        let digits = self.base.coefficients(a);
        let mut acc = self.target.zero();
        for (digit, power) in digits.iter().zip(&self.generator_powers) {
            if *digit != 0 {
                let c = self.target.from_int(*digit);
                acc = self.target.add(acc, self.target.mul(c, *power));
            }
        }
        acc
    }
}

/// First root of the base modulus inside the target field; exists because
/// the target contains a copy of the base field.
fn find_root_of_base_modulus(base: &FieldSpec, target: &FieldSpec) -> FieldElement {
    let modulus = base.modulus().expect("base is an extension field");
    for candidate in target.enumerate_elements() {
        // Horner evaluation of the modulus, coefficients through F_p.
        let mut acc = target.zero();
        for &c in modulus.iter().rev() {
            acc = target.mul(acc, candidate);
            acc = target.add(acc, target.from_int(c));
        }
        if acc.is_zero() {
            return candidate;
        }
    }
    unreachable!("irreducible modulus must split in the compatible extension");
}

/// Trial-division primality, adequate for the supported field sizes.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

fn checked_pow(base: u64, exp: u32) -> Option<u64> {
    let mut acc = 1u64;
    for _ in 0..exp {
        acc = acc.checked_mul(base)?;
    }
    Some(acc)
}

/// Seeded random search for a monic irreducible polynomial of degree k
/// over F_p. The expected number of draws is about k.
fn find_irreducible(p: u64, k: u32, seed: u64) -> Vec<u64> {
    let k = k as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut candidate = vec![0u64; k + 1];
        candidate[k] = 1;
        for coeff in candidate.iter_mut().take(k) {
            *coeff = rng.random_range(0..p);
        }
        if candidate[0] == 0 {
            continue; // divisible by t
        }
        if is_irreducible(&candidate, p) {
            return candidate;
        }
    }
}

/// A monic degree-k polynomial is irreducible over F_p iff it shares no
/// factor with t^{p^m} - t for any m <= k/2.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    // t_m = t^{p^m} mod f, advanced one Frobenius step at a time.
    let mut t_m = vec![0u64, 1];
    for _ in 1..=(k / 2) {
        t_m = upoly_powmod(&t_m, p, f, p);
        // gcd(f, t_m - t)
        let mut diff = t_m.clone();
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        let g = upoly_gcd(f, &diff, p);
        if upoly_degree(&g) > 0 {
            return false;
        }
    }
    true
}

// ---- dense univariate arithmetic over F_p (modulus bookkeeping only) ----

fn upoly_degree(f: &[u64]) -> usize {
    f.iter().rposition(|&c| c != 0).unwrap_or(0)
}

fn upoly_trim(mut f: Vec<u64>) -> Vec<u64> {
    while f.len() > 1 && *f.last().unwrap() == 0 {
        f.pop();
    }
    f
}

fn upoly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    upoly_trim(out)
}

/// Remainder of a modulo the monic polynomial m.
fn upoly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let dm = upoly_degree(m);
    let mut r = upoly_trim(a.to_vec());
    loop {
        let dr = upoly_degree(&r);
        if dr < dm || (dr == 0 && r[0] == 0) {
            return r;
        }
        let c = r[dr];
        let shift = dr - dm;
        for j in 0..=dm {
            if m[j] != 0 {
                r[shift + j] = (r[shift + j] + (p - m[j]) * c) % p;
            }
        }
        // The leading term cancels because m is monic.
        r = upoly_trim(r);
    }
}

fn upoly_powmod(base: &[u64], e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = upoly_rem(base, m, p);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = upoly_rem(&upoly_mul(&result, &b, p), m, p);
        }
        e >>= 1;
        if e > 0 {
            b = upoly_rem(&upoly_mul(&b, &b, p), m, p);
        }
    }
    result
}

fn upoly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = upoly_trim(a.to_vec());
    let mut y = upoly_trim(b.to_vec());
    while !(y.len() == 1 && y[0] == 0) {
        let r = upoly_rem(&x, &monic(&y, p), p);
        // Keep the true remainder scale: rem against monic(y) differs from
        // rem against y by a unit, which gcd does not care about.
        x = y;
        y = r;
    }
    monic(&x, p)
}

fn monic(f: &[u64], p: u64) -> Vec<u64> {
    let d = upoly_degree(f);
    let lead = f[d];
    if lead == 0 || lead == 1 {
        return upoly_trim(f.to_vec());
    }
    let inv = mod_inverse(lead, p);
    upoly_trim(f.iter().map(|&c| c * inv % p).collect())
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: a^{p-2} mod p.
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        e >>= 1;
        base = base * base % p;
    }
    result
}
