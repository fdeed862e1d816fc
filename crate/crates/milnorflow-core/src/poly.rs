//! Sparse multivariate polynomials over the rationals.
//!
//! Variables are positional (`z0`, `z1`, ...), so a monomial is just its
//! exponent vector. Coefficients are exact `BigRational`s; no zero
//! coefficient is ever stored. The text grammar is
//!
//! ```text
//! poly   := term (('+'|'-') term)*
//! term   := coeff? ('*'? factor)*
//! factor := var ('^' uint)?
//! coeff  := int | int '/' uint
//! var    := 'z' uint
//! ```
//!
//! with insignificant whitespace. A leading sign on the first term is
//! accepted as well.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exponent vector of a monomial, one entry per variable.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn constant(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Total degree (unweighted sum of exponents).
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller must ensure divisibility.
    pub fn quotient_into(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial(other.0.iter().zip(&self.0).map(|(b, a)| b - a).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime_with(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// True if the monomial involves no variable other than `var`.
    pub fn is_pure_power_of(&self, var: usize) -> bool {
        self.0.iter().enumerate().all(|(i, &e)| i == var || e == 0)
    }

    pub fn render(&self) -> String {
        if self.is_constant() {
            return String::from("1");
        }
        let mut parts = Vec::new();
        for (i, &e) in self.0.iter().enumerate() {
            if e == 1 {
                parts.push(alloc::format!("z{}", i));
            } else if e > 1 {
                parts.push(alloc::format!("z{}^{}", i, e));
            }
        }
        parts.join("*")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Errors from parsing or constructing polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyError {
    /// Unexpected input at a byte offset; `expected` names the token class.
    Syntax { offset: usize, expected: &'static str },
    /// Variable index out of range for the declared variable count.
    UnknownVariable { offset: usize, index: usize, nvars: usize },
    /// Fewer than two variables.
    ArityTooSmall { nvars: usize },
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::Syntax { offset, expected } => {
                write!(f, "syntax error at offset {}: expected {}", offset, expected)
            }
            PolyError::UnknownVariable { offset, index, nvars } => write!(
                f,
                "unknown variable z{} at offset {} (polynomial has {} variables z0..z{})",
                index,
                offset,
                nvars,
                nvars - 1
            ),
            PolyError::ArityTooSmall { nvars } => {
                write!(f, "need at least 2 variables, got {}", nvars)
            }
        }
    }
}

impl core::error::Error for PolyError {}

/// Sparse polynomial: exponent vector -> nonzero rational coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiPolynomial {
    terms: BTreeMap<Monomial, BigRational>,
    nvars: usize,
}

impl QuasiPolynomial {
    pub fn zero(nvars: usize) -> Result<Self, PolyError> {
        if nvars < 2 {
            return Err(PolyError::ArityTooSmall { nvars });
        }
        Ok(QuasiPolynomial { terms: BTreeMap::new(), nvars })
    }

    /// Build from raw terms, combining duplicates and dropping zeros.
    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut p = Self::zero(nvars)?;
        for (m, c) in terms {
            assert_eq!(m.nvars(), nvars, "monomial arity mismatch");
            p.add_term(m, c);
        }
        Ok(p)
    }

    /// Convenience constructor with integer coefficients.
    pub fn from_int_terms(nvars: usize, terms: &[(&[u32], i64)]) -> Result<Self, PolyError> {
        Self::from_terms(
            nvars,
            terms.iter().map(|(exps, c)| {
                (Monomial(exps.to_vec()), BigRational::from_integer(BigInt::from(*c)))
            }),
        )
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.keys()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&BigRational> {
        self.terms.get(m)
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &QuasiPolynomial) -> QuasiPolynomial {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> QuasiPolynomial {
        if c.is_zero() {
            return QuasiPolynomial { terms: BTreeMap::new(), nvars: self.nvars };
        }
        QuasiPolynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
            nvars: self.nvars,
        }
    }

    /// `self - c * m * other`, the elementary reduction step.
    pub fn sub_scaled_shift(
        &self,
        c: &BigRational,
        m: &Monomial,
        other: &QuasiPolynomial,
    ) -> QuasiPolynomial {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (om, oc) in &other.terms {
            out.add_term(om.mul(m), -(oc * c));
        }
        out
    }

    /// Formal partial derivative with respect to variable `i`.
    pub fn partial_derivative(&self, i: usize) -> QuasiPolynomial {
        assert!(i < self.nvars, "variable index out of range");
        let mut out = QuasiPolynomial { terms: BTreeMap::new(), nvars: self.nvars };
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] = e - 1;
            out.add_term(Monomial(exps), c * BigRational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// Canonical text form; `parse` of the output reproduces the polynomial.
    /// Terms are rendered in descending lexicographic exponent order.
    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return String::from("0");
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let coeff_is_one = abs.is_one();
            if m.is_constant() {
                out.push_str(&rational_str(&abs));
            } else if coeff_is_one {
                out.push_str(&m.render());
            } else {
                out.push_str(&rational_str(&abs));
                out.push('*');
                out.push_str(&m.render());
            }
        }
        out
    }
}

impl fmt::Display for QuasiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `p/q` with the denominator omitted when it is 1 (used by `render`).
pub fn rational_str(r: &BigRational) -> String {
    if r.denom().is_one() {
        alloc::format!("{}", r.numer())
    } else {
        alloc::format!("{}/{}", r.numer(), r.denom())
    }
}

/// `p/q` with the denominator always present (report serialization).
pub fn rational_str_full(r: &BigRational) -> String {
    alloc::format!("{}/{}", r.numer(), r.denom())
}

/// Parse a polynomial in `nvars` variables from its text form.
pub fn parse_polynomial(text: &str, nvars: usize) -> Result<QuasiPolynomial, PolyError> {
    Parser { bytes: text.as_bytes(), pos: 0, nvars }.parse()
}

/// Scan a polynomial text for the largest variable index and return the
/// implied variable count (`max index + 1`). Callers that do not know the
/// ambient dimension use this before `parse_polynomial`.
pub fn scan_nvars(text: &str) -> Result<usize, PolyError> {
    let bytes = text.as_bytes();
    let mut max_index: Option<usize> = None;
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'z' {
            let start = i + 1;
            let mut j = start;
            while j < bytes.len() && bytes[j].is_ascii_digit() {
                j += 1;
            }
            if j == start {
                return Err(PolyError::Syntax { offset: start, expected: "variable index" });
            }
            let idx = parse_usize(&bytes[start..j], start)?;
            max_index = Some(max_index.map_or(idx, |m| m.max(idx)));
            i = j;
        } else {
            i += 1;
        }
    }
    match max_index {
        Some(m) => Ok(m + 1),
        None => Err(PolyError::Syntax { offset: 0, expected: "variable" }),
    }
}

fn parse_usize(digits: &[u8], offset: usize) -> Result<usize, PolyError> {
    let mut v: usize = 0;
    for &b in digits {
        v = v
            .checked_mul(10)
            .and_then(|v| v.checked_add((b - b'0') as usize))
            .ok_or(PolyError::Syntax { offset, expected: "smaller integer" })?;
    }
    Ok(v)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    nvars: usize,
}

impl<'a> Parser<'a> {
    fn parse(mut self) -> Result<QuasiPolynomial, PolyError> {
        let mut poly = QuasiPolynomial::zero(self.nvars)?;
        self.skip_ws();
        // optional sign on the first term
        let mut sign = self.take_sign();
        loop {
            let (m, c) = self.term()?;
            poly.add_term(m, if sign < 0 { -c } else { c });
            self.skip_ws();
            if self.pos >= self.bytes.len() {
                return Ok(poly);
            }
            match self.bytes[self.pos] {
                b'+' => sign = 1,
                b'-' => sign = -1,
                _ => {
                    return Err(PolyError::Syntax { offset: self.pos, expected: "'+' or '-'" });
                }
            }
            self.pos += 1;
            self.skip_ws();
        }
    }

    fn take_sign(&mut self) -> i32 {
        if self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b'-' => {
                    self.pos += 1;
                    self.skip_ws();
                    return -1;
                }
                b'+' => {
                    self.pos += 1;
                    self.skip_ws();
                }
                _ => {}
            }
        }
        1
    }

    fn term(&mut self) -> Result<(Monomial, BigRational), PolyError> {
        self.skip_ws();
        let mut coeff = BigRational::one();
        let mut have_any = false;
        if self.peek_digit() {
            coeff = self.coeff()?;
            have_any = true;
        }
        let mut exps = vec![0u32; self.nvars];
        loop {
            self.skip_ws();
            let mut consumed_star = false;
            if self.pos < self.bytes.len() && self.bytes[self.pos] == b'*' {
                self.pos += 1;
                self.skip_ws();
                consumed_star = true;
            }
            if self.pos < self.bytes.len() && self.bytes[self.pos] == b'z' {
                let (idx, e) = self.factor()?;
                exps[idx] = exps[idx]
                    .checked_add(e)
                    .ok_or(PolyError::Syntax { offset: self.pos, expected: "smaller exponent" })?;
                have_any = true;
            } else if consumed_star {
                return Err(PolyError::Syntax { offset: self.pos, expected: "variable" });
            } else {
                break;
            }
        }
        if !have_any {
            return Err(PolyError::Syntax { offset: self.pos, expected: "term" });
        }
        Ok((Monomial(exps), coeff))
    }

    fn factor(&mut self) -> Result<(usize, u32), PolyError> {
        // caller checked the 'z'
        self.pos += 1;
        let offset = self.pos;
        let digits = self.digits("variable index")?;
        let idx = parse_usize(digits, offset)?;
        if idx >= self.nvars {
            return Err(PolyError::UnknownVariable { offset, index: idx, nvars: self.nvars });
        }
        let mut exp = 1u32;
        if self.pos < self.bytes.len() && self.bytes[self.pos] == b'^' {
            self.pos += 1;
            let offset = self.pos;
            let digits = self.digits("exponent")?;
            let e = parse_usize(digits, offset)?;
            exp = u32::try_from(e)
                .map_err(|_| PolyError::Syntax { offset, expected: "smaller exponent" })?;
        }
        Ok((idx, exp))
    }

    fn coeff(&mut self) -> Result<BigRational, PolyError> {
        let digits = self.digits("integer")?;
        let mut numer = BigInt::from(0u32);
        for &b in digits {
            numer = numer * 10 + (b - b'0');
        }
        let mut denom = BigInt::from(1u32);
        if self.pos < self.bytes.len() && self.bytes[self.pos] == b'/' {
            self.pos += 1;
            let offset = self.pos;
            let digits = self.digits("denominator")?;
            denom = BigInt::from(0u32);
            for &b in digits {
                denom = denom * 10 + (b - b'0');
            }
            if denom.is_zero() {
                return Err(PolyError::Syntax { offset, expected: "nonzero denominator" });
            }
        }
        Ok(BigRational::new(numer, denom))
    }

    fn digits(&mut self, expected: &'static str) -> Result<&'a [u8], PolyError> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(PolyError::Syntax { offset: start, expected });
        }
        Ok(&self.bytes[start..self.pos])
    }

    fn peek_digit(&self) -> bool {
        self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit()
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }
}
