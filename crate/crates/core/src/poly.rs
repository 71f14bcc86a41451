//! Sparse homogeneous multivariate polynomials over a finite field:
//! parsing, printing, arithmetic, evaluation, differentiation, and the
//! Fermat / seeded-random constructors.
//!
//! Terms are kept in a map ordered lexicographically on exponent vectors,
//! which fixes a canonical serialization; printing walks the order
//! descending so `x0^3 + x1^3 + x2^3` reads naturally and parses back to
//! the same value.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::field::{FieldElement, FieldSpec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("syntax error at byte {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("polynomial is not homogeneous: term degrees {0} and {1} differ")]
    NotHomogeneous(u32, u32),
    #[error("unknown variable x{index}: ambient dimension {ambient} allows x0..x{ambient}")]
    UnknownVariable { index: u64, ambient: usize },
    #[error("the zero polynomial defines no hypersurface")]
    ZeroPolynomial,
    #[error("operands lie in different fields")]
    FieldMismatch,
    #[error("variable-count mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
}

/// Exponent vector of a single term, one entry per variable x0..xn.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// A sparse multivariate polynomial with coefficients in a fixed field.
///
/// Zero coefficients are never stored; the zero polynomial is the empty
/// term map. Arithmetic can produce it, but parsing rejects it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly {
    n_vars: usize,
    field: FieldSpec,
    terms: BTreeMap<Monomial, FieldElement>,
}

impl MultiPoly {
    pub fn zero(field: FieldSpec, n_vars: usize) -> Self {
        MultiPoly {
            n_vars,
            field,
            terms: BTreeMap::new(),
        }
    }

    /// Build from (exponents, coefficient) pairs, merging duplicates and
    /// dropping zero coefficients.
    pub fn from_terms<I>(field: FieldSpec, n_vars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, FieldElement)>,
    {
        let mut poly = MultiPoly::zero(field, n_vars);
        for (exps, coeff) in terms {
            assert_eq!(exps.len(), n_vars, "exponent vector length mismatch");
            poly.accumulate(Monomial(exps), coeff);
        }
        poly
    }

    fn accumulate(&mut self, m: Monomial, c: FieldElement) {
        if c.is_zero() {
            return;
        }
        let sum = self.field.add(*self.terms.get(&m).unwrap_or(&FieldElement::ZERO), c);
        if sum.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, sum);
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, FieldElement)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; None for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::total_degree);
        match degrees.next() {
            None => true,
            Some(first) => degrees.all(|d| d == first),
        }
    }

    /// Coefficient of the given exponent vector (zero when absent).
    pub fn coefficient(&self, exponents: &[u32]) -> FieldElement {
        self.terms
            .get(&Monomial(exponents.to_vec()))
            .copied()
            .unwrap_or(FieldElement::ZERO)
    }

    fn check_compatible(&self, other: &MultiPoly) -> Result<(), PolyError> {
        if self.field != other.field {
            return Err(PolyError::FieldMismatch);
        }
        if self.n_vars != other.n_vars {
            return Err(PolyError::ArityMismatch {
                left: self.n_vars,
                right: other.n_vars,
            });
        }
        Ok(())
    }
}

/// Sum of two polynomials over the same field and variable set.
pub fn poly_add(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly, PolyError> {
    a.check_compatible(b)?;
    let mut out = a.clone();
    for (m, c) in b.terms() {
        out.accumulate(m.clone(), c);
    }
    Ok(out)
}

pub fn poly_sub(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly, PolyError> {
    a.check_compatible(b)?;
    let mut out = a.clone();
    for (m, c) in b.terms() {
        out.accumulate(m.clone(), a.field.neg(c));
    }
    Ok(out)
}

/// Distributive product; zero-coefficient terms are dropped as they cancel.
pub fn poly_mul(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly, PolyError> {
    a.check_compatible(b)?;
    let field = a.field.clone();
    let mut out = MultiPoly::zero(field.clone(), a.n_vars);
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            let exps: Vec<u32> = ma
                .exponents()
                .iter()
                .zip(mb.exponents())
                .map(|(x, y)| x + y)
                .collect();
            out.accumulate(Monomial(exps), field.mul(ca, cb));
        }
    }
    Ok(out)
}

/// Multiply every coefficient by a scalar.
pub fn poly_scale(a: &MultiPoly, c: FieldElement) -> MultiPoly {
    let mut out = MultiPoly::zero(a.field.clone(), a.n_vars);
    for (m, coeff) in a.terms() {
        out.accumulate(m.clone(), a.field.mul(coeff, c));
    }
    out
}

/// Evaluate at a point, coordinatewise, with the convention 0^0 = 1.
pub fn poly_eval(f: &MultiPoly, point: &[FieldElement]) -> Result<FieldElement, PolyError> {
    if point.len() != f.n_vars {
        return Err(PolyError::ArityMismatch {
            left: f.n_vars,
            right: point.len(),
        });
    }
    let field = &f.field;
    let mut acc = FieldElement::ZERO;
    for (m, c) in f.terms() {
        let mut term = c;
        for (&v, &e) in point.iter().zip(m.exponents()) {
            if e != 0 {
                term = field.mul(term, field.power(v, u64::from(e)));
            }
        }
        acc = field.add(acc, term);
    }
    Ok(acc)
}

/// All formal partial derivatives, one per variable.
pub fn partials(f: &MultiPoly) -> Vec<MultiPoly> {
    let field = f.field.clone();
    (0..f.n_vars)
        .map(|j| {
            let mut out = MultiPoly::zero(field.clone(), f.n_vars);
            for (m, c) in f.terms() {
                let e = m.exponents()[j];
                if e == 0 {
                    continue;
                }
                let mut exps = m.exponents().to_vec();
                exps[j] -= 1;
                let scaled = field.mul(c, field.from_int(u64::from(e)));
                out.accumulate(Monomial(exps), scaled);
            }
            out
        })
        .collect()
}

/// A Fermat form x0^d + ... + xn^d together with its exact smoothness flag
/// (the hypersurface is smooth iff p does not divide d).
#[derive(Debug, Clone)]
pub struct FermatForm {
    pub poly: MultiPoly,
    pub smooth: bool,
}

pub fn fermat_poly(n: usize, d: u32, field: &FieldSpec) -> FermatForm {
    assert!(n >= 1, "ambient dimension must be at least 1");
    assert!(d >= 1, "degree must be at least 1");
    let n_vars = n + 1;
    let terms = (0..n_vars).map(|i| {
        let mut exps = vec![0u32; n_vars];
        exps[i] = d;
        (exps, FieldElement::ONE)
    });
    FermatForm {
        poly: MultiPoly::from_terms(field.clone(), n_vars, terms),
        smooth: u64::from(d) % field.p() != 0,
    }
}

/// Is this exactly the Fermat form of its degree (pure d-th powers of every
/// variable, all coefficients one)?
pub fn is_fermat_form(f: &MultiPoly) -> bool {
    let Some(d) = f.degree() else {
        return false;
    };
    if d == 0 || f.num_terms() != f.n_vars {
        return false;
    }
    f.terms().all(|(m, c)| {
        c == FieldElement::ONE
            && m.exponents().iter().filter(|&&e| e != 0).count() == 1
            && m.total_degree() == d
    })
}

/// Seeded random homogeneous form of degree d in n+1 variables; every
/// monomial coefficient is drawn uniformly from the field. Redrawn once if
/// the first draw is identically zero.
pub fn random_homogeneous(n: usize, d: u32, field: &FieldSpec, seed: u64) -> MultiPoly {
    assert!(n >= 1, "ambient dimension must be at least 1");
    assert!(d >= 1, "degree must be at least 1");
    let n_vars = n + 1;
    let monomials = monomials_of_degree(n_vars, d);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _attempt in 0..2 {
        let terms: Vec<(Vec<u32>, FieldElement)> = monomials
            .iter()
            .map(|exps| (exps.clone(), field.element(rng.random_range(0..field.q()))))
            .collect();
        let poly = MultiPoly::from_terms(field.clone(), n_vars, terms);
        if !poly.is_zero() {
            return poly;
        }
    }
    MultiPoly::zero(field.clone(), n_vars)
}

/// Exponent vectors of total degree d in `n_vars` variables, descending
/// lexicographic order.
pub fn monomials_of_degree(n_vars: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = vec![0u32; n_vars];
    fill_monomials(&mut out, &mut current, 0, d);
    out
}

fn fill_monomials(out: &mut Vec<Vec<u32>>, current: &mut Vec<u32>, pos: usize, remaining: u32) {
    if pos + 1 == current.len() {
        current[pos] = remaining;
        out.push(current.clone());
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        fill_monomials(out, current, pos + 1, remaining - e);
    }
    current[pos] = 0;
}

// ---------------------------------------------------------------- parsing

/// Parse a homogeneous polynomial over `field` in variables x0..xn.
///
/// Grammar (whitespace-insensitive):
/// ```text
/// expr    := ['-'] term (('+'|'-') term)*
/// term    := (coeff '*')? factor ('*' factor)* | coeff
/// factor  := var ('^' uint)?
/// var     := 'x' uint
/// coeff   := uint | '(' uint (',' uint)* ')'
/// ```
/// Integer coefficients are reduced mod p; the parenthesized form gives the
/// power-basis coefficients of an extension-field element.
pub fn parse_poly(text: &str, field: &FieldSpec, n: usize) -> Result<MultiPoly, PolyError> {
    let tokens = lex(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        field,
        n_vars: n + 1,
    };
    let poly = parser.parse_expr()?;
    if parser.pos != parser.tokens.len() {
        let tok = &parser.tokens[parser.pos];
        return Err(PolyError::Syntax {
            pos: tok.pos,
            message: format!("unexpected {}", tok.kind.describe()),
        });
    }
    if poly.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let mut degrees = poly.terms.keys().map(Monomial::total_degree);
    let first = degrees.next().expect("nonzero polynomial has a term");
    if let Some(other) = degrees.find(|&d| d != first) {
        return Err(PolyError::NotHomogeneous(first, other));
    }
    Ok(poly)
}

#[derive(Debug, Clone, PartialEq)]
enum TokenKind {
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
    Int(u64),
    Var(u64),
}

impl TokenKind {
    fn describe(&self) -> String {
        match self {
            TokenKind::Plus => "'+'".into(),
            TokenKind::Minus => "'-'".into(),
            TokenKind::Star => "'*'".into(),
            TokenKind::Caret => "'^'".into(),
            TokenKind::LParen => "'('".into(),
            TokenKind::RParen => "')'".into(),
            TokenKind::Comma => "','".into(),
            TokenKind::Int(v) => format!("integer {}", v),
            TokenKind::Var(i) => format!("variable x{}", i),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    kind: TokenKind,
    pos: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, PolyError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let pos = i;
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
            }
            b'+' => {
                tokens.push(Token { kind: TokenKind::Plus, pos });
                i += 1;
            }
            b'-' => {
                tokens.push(Token { kind: TokenKind::Minus, pos });
                i += 1;
            }
            b'*' => {
                tokens.push(Token { kind: TokenKind::Star, pos });
                i += 1;
            }
            b'^' => {
                tokens.push(Token { kind: TokenKind::Caret, pos });
                i += 1;
            }
            b'(' => {
                tokens.push(Token { kind: TokenKind::LParen, pos });
                i += 1;
            }
            b')' => {
                tokens.push(Token { kind: TokenKind::RParen, pos });
                i += 1;
            }
            b',' => {
                tokens.push(Token { kind: TokenKind::Comma, pos });
                i += 1;
            }
            b'x' => {
                i += 1;
                let (value, next) = lex_uint(bytes, i, pos, "variable index")?;
                tokens.push(Token { kind: TokenKind::Var(value), pos });
                i = next;
            }
            b'0'..=b'9' => {
                let (value, next) = lex_uint(bytes, i, pos, "integer")?;
                tokens.push(Token { kind: TokenKind::Int(value), pos });
                i = next;
            }
            other => {
                return Err(PolyError::Syntax {
                    pos,
                    message: format!("unexpected character '{}'", other as char),
                });
            }
        }
    }
    Ok(tokens)
}

fn lex_uint(bytes: &[u8], start: usize, pos: usize, what: &str) -> Result<(u64, usize), PolyError> {
    let mut i = start;
    let mut value: u64 = 0;
    let mut any = false;
    while i < bytes.len() && bytes[i].is_ascii_digit() {
        any = true;
        value = value
            .checked_mul(10)
            .and_then(|v| v.checked_add(u64::from(bytes[i] - b'0')))
            .ok_or_else(|| PolyError::Syntax {
                pos,
                message: format!("{} too large", what),
            })?;
        i += 1;
    }
    if !any {
        return Err(PolyError::Syntax {
            pos,
            message: format!("expected {}", what),
        });
    }
    Ok((value, i))
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    field: &'a FieldSpec,
    n_vars: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&TokenKind> {
        self.tokens.get(self.pos).map(|t| &t.kind)
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|t| t.pos)
            .unwrap_or_else(|| self.tokens.last().map(|t| t.pos + 1).unwrap_or(0))
    }

    fn bump(&mut self) -> Option<TokenKind> {
        let t = self.tokens.get(self.pos).map(|t| t.kind.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn parse_expr(&mut self) -> Result<MultiPoly, PolyError> {
        let mut poly = MultiPoly::zero(self.field.clone(), self.n_vars);
        let mut negate = false;
        if self.peek() == Some(&TokenKind::Minus) {
            self.bump();
            negate = true;
        }
        self.parse_term_into(&mut poly, negate)?;
        loop {
            match self.peek() {
                Some(TokenKind::Plus) => {
                    self.bump();
                    self.parse_term_into(&mut poly, false)?;
                }
                Some(TokenKind::Minus) => {
                    self.bump();
                    self.parse_term_into(&mut poly, true)?;
                }
                _ => break,
            }
        }
        Ok(poly)
    }

    fn parse_term_into(&mut self, poly: &mut MultiPoly, negate: bool) -> Result<(), PolyError> {
        let mut coeff = FieldElement::ONE;
        let mut exps = vec![0u32; self.n_vars];
        let mut have_factor = false;

        match self.peek() {
            Some(TokenKind::Int(_) | TokenKind::LParen) => {
                coeff = self.parse_coeff()?;
                if self.peek() == Some(&TokenKind::Star) {
                    self.bump();
                    self.parse_factor(&mut exps)?;
                    have_factor = true;
                }
            }
            Some(TokenKind::Var(_)) => {
                self.parse_factor(&mut exps)?;
                have_factor = true;
            }
            _ => {
                return Err(PolyError::Syntax {
                    pos: self.here(),
                    message: "expected a term".into(),
                });
            }
        }
        while have_factor && self.peek() == Some(&TokenKind::Star) {
            self.bump();
            self.parse_factor(&mut exps)?;
        }

        let signed = if negate { self.field.neg(coeff) } else { coeff };
        poly.accumulate(Monomial(exps), signed);
        Ok(())
    }

    fn parse_coeff(&mut self) -> Result<FieldElement, PolyError> {
        let pos = self.here();
        match self.bump() {
            Some(TokenKind::Int(v)) => Ok(self.field.from_int(v)),
            Some(TokenKind::LParen) => {
                let mut digits = Vec::new();
                loop {
                    let pos = self.here();
                    match self.bump() {
                        Some(TokenKind::Int(v)) => digits.push(v),
                        other => {
                            return Err(PolyError::Syntax {
                                pos,
                                message: format!(
                                    "expected integer in coefficient vector, found {}",
                                    describe_opt(&other)
                                ),
                            });
                        }
                    }
                    match self.bump() {
                        Some(TokenKind::Comma) => continue,
                        Some(TokenKind::RParen) => break,
                        other => {
                            return Err(PolyError::Syntax {
                                pos: self.here(),
                                message: format!(
                                    "expected ',' or ')' in coefficient vector, found {}",
                                    describe_opt(&other)
                                ),
                            });
                        }
                    }
                }
                if digits.len() > self.field.k() as usize {
                    return Err(PolyError::Syntax {
                        pos,
                        message: format!(
                            "coefficient vector has {} entries but the field has degree {}",
                            digits.len(),
                            self.field.k()
                        ),
                    });
                }
                Ok(self.field.from_coefficients(&digits))
            }
            other => Err(PolyError::Syntax {
                pos,
                message: format!("expected coefficient, found {}", describe_opt(&other)),
            }),
        }
    }

    fn parse_factor(&mut self, exps: &mut [u32]) -> Result<(), PolyError> {
        let pos = self.here();
        match self.bump() {
            Some(TokenKind::Var(index)) => {
                if index as usize >= self.n_vars {
                    return Err(PolyError::UnknownVariable {
                        index,
                        ambient: self.n_vars - 1,
                    });
                }
                let mut exponent = 1u64;
                if self.peek() == Some(&TokenKind::Caret) {
                    self.bump();
                    let pos = self.here();
                    match self.bump() {
                        Some(TokenKind::Int(e)) => exponent = e,
                        other => {
                            return Err(PolyError::Syntax {
                                pos,
                                message: format!(
                                    "expected exponent, found {}",
                                    describe_opt(&other)
                                ),
                            });
                        }
                    }
                }
                let e = u32::try_from(exponent).map_err(|_| PolyError::Syntax {
                    pos,
                    message: "exponent too large".into(),
                })?;
                exps[index as usize] = exps[index as usize]
                    .checked_add(e)
                    .ok_or(PolyError::Syntax {
                        pos,
                        message: "exponent too large".into(),
                    })?;
                Ok(())
            }
            other => Err(PolyError::Syntax {
                pos,
                message: format!("expected variable, found {}", describe_opt(&other)),
            }),
        }
    }
}

fn describe_opt(t: &Option<TokenKind>) -> String {
    match t {
        Some(kind) => kind.describe(),
        None => "end of input".into(),
    }
}

// --------------------------------------------------------------- printing

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let is_constant = m.total_degree() == 0;
            if is_constant {
                write!(f, "{}", coeff_string(&self.field, c))?;
                continue;
            }
            let mut factors = Vec::new();
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("x{}", i)),
                    _ => factors.push(format!("x{}^{}", i, e)),
                }
            }
            if *c == FieldElement::ONE {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", coeff_string(&self.field, c), factors.join("*"))?;
            }
        }
        Ok(())
    }
}

fn coeff_string(field: &FieldSpec, c: &FieldElement) -> String {
    if c.index() < field.p() {
        format!("{}", c.index())
    } else {
        let digits: Vec<String> = field
            .coefficients(*c)
            .iter()
            .map(|d| d.to_string())
            .collect();
        format!("({})", digits.join(","))
    }
}
