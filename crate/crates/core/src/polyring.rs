//! Dense polynomials over `F_q`, cyclotomic cosets and the factorization of
//! `x^n - 1` through its splitting field.
//!
//! A polynomial of degree `< n` doubles as a length-`n` word: coefficient `i`
//! is the `i`-th symbol. The text form is a string of base-`q` digits, lowest
//! degree first, so `"1101"` over `F_2` is `1 + x + x^3`.

use std::fmt;
use std::sync::Arc;

use crate::error::{domain, Error, Result};
use crate::gf::{self, digit_char, digit_value, gcd, Fq, PrimePower, MAX_DIGIT_Q};

#[derive(Clone)]
pub struct FPoly {
    field: Arc<Fq>,
    coeffs: Vec<u32>,
}

impl PartialEq for FPoly {
    fn eq(&self, other: &Self) -> bool {
        self.q() == other.q() && self.coeffs == other.coeffs
    }
}

impl Eq for FPoly {}

impl fmt::Debug for FPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FPoly(q={}, {})", self.q(), self)
    }
}

impl fmt::Display for FPoly {
    /// Digit string, lowest degree first; the zero polynomial prints as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        if self.q() > MAX_DIGIT_Q {
            let parts: Vec<String> = self.coeffs.iter().map(u32::to_string).collect();
            return f.write_str(&parts.join("."));
        }
        for &c in &self.coeffs {
            write!(f, "{}", digit_char(c))?;
        }
        Ok(())
    }
}

impl FPoly {
    pub fn new(field: Arc<Fq>, mut coeffs: Vec<u32>) -> Result<FPoly> {
        let q = field.q();
        if let Some(&c) = coeffs.iter().find(|&&c| c as u64 >= q) {
            return domain(format!("coefficient {c} is not an element of F_{q}"));
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Ok(FPoly { field, coeffs })
    }

    fn raw(field: &Arc<Fq>, mut coeffs: Vec<u32>) -> FPoly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FPoly { field: Arc::clone(field), coeffs }
    }

    pub fn zero(field: &Arc<Fq>) -> FPoly {
        FPoly::raw(field, Vec::new())
    }

    pub fn one(field: &Arc<Fq>) -> FPoly {
        FPoly::raw(field, vec![1])
    }

    /// `c * x^k`.
    pub fn monomial(field: &Arc<Fq>, k: usize, c: u32) -> FPoly {
        let mut v = vec![0; k + 1];
        v[k] = c;
        FPoly::raw(field, v)
    }

    /// `x^n - 1`.
    pub fn xn_minus_one(field: &Arc<Fq>, n: usize) -> FPoly {
        let mut v = vec![0; n + 1];
        v[n] = 1;
        v[0] = field.add(v[0], field.neg(1));
        FPoly::raw(field, v)
    }

    /// Parses a digit string (lowest degree first) over `F_q`.
    pub fn parse(field: &Arc<Fq>, s: &str) -> Result<FPoly> {
        let coeffs = parse_symbols(field, s)?;
        FPoly::new(Arc::clone(field), coeffs).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Polynomial of a word under `(f_0, ..., f_{n-1}) -> sum f_i x^i`.
    pub fn from_word(field: &Arc<Fq>, word: &[u32]) -> Result<FPoly> {
        FPoly::new(Arc::clone(field), word.to_vec())
    }

    /// Length-`n` word of a polynomial of degree `< n`.
    pub fn to_word(&self, n: usize) -> Result<Vec<u32>> {
        if self.coeffs.len() > n {
            return domain(format!("degree {} does not fit in length {n}", self.coeffs.len() - 1));
        }
        let mut w = self.coeffs.clone();
        w.resize(n, 0);
        Ok(w)
    }

    pub fn field(&self) -> &Arc<Fq> {
        &self.field
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }

    pub fn prime_power(&self) -> PrimePower {
        self.field.prime_power()
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    fn check(&self, other: &FPoly) -> Result<()> {
        if self.q() != other.q() {
            return Err(Error::MixedFields(self.q(), other.q()));
        }
        Ok(())
    }

    pub fn add(&self, other: &FPoly) -> Result<FPoly> {
        self.check(other)?;
        let f = &self.field;
        let len = self.coeffs.len().max(other.coeffs.len());
        let v = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                f.add(a, b)
            })
            .collect();
        Ok(FPoly::raw(f, v))
    }

    pub fn sub(&self, other: &FPoly) -> Result<FPoly> {
        self.check(other)?;
        self.add(&other.neg())
    }

    pub fn neg(&self) -> FPoly {
        let v = self.coeffs.iter().map(|&c| self.field.neg(c)).collect();
        FPoly::raw(&self.field, v)
    }

    pub fn scale(&self, c: u32) -> FPoly {
        let v = self.coeffs.iter().map(|&a| self.field.mul(a, c)).collect();
        FPoly::raw(&self.field, v)
    }

    pub fn mul(&self, other: &FPoly) -> Result<FPoly> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(FPoly::zero(&self.field));
        }
        let f = &self.field;
        let mut v = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                v[i + j] = f.add(v[i + j], f.mul(a, b));
            }
        }
        Ok(FPoly::raw(f, v))
    }

    /// Quotient and remainder.
    pub fn div_rem(&self, divisor: &FPoly) -> Result<(FPoly, FPoly)> {
        self.check(divisor)?;
        let dd = divisor
            .degree()
            .ok_or_else(|| Error::Domain("division by the zero polynomial".into()))?;
        let f = &self.field;
        let lead_inv = f.inv(divisor.leading())?;
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((FPoly::zero(f), FPoly::raw(f, r)));
        }
        let mut quot = vec![0u32; r.len() - dd];
        for top in (dd..r.len()).rev() {
            let c = f.mul(r[top], lead_inv);
            if c == 0 {
                continue;
            }
            quot[top - dd] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                let idx = top - dd + j;
                r[idx] = f.sub(r[idx], f.mul(c, d));
            }
        }
        r.truncate(dd);
        Ok((FPoly::raw(f, quot), FPoly::raw(f, r)))
    }

    pub fn rem(&self, divisor: &FPoly) -> Result<FPoly> {
        Ok(self.div_rem(divisor)?.1)
    }

    pub fn monic(&self) -> Result<FPoly> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        Ok(self.scale(self.field.inv(self.leading())?))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &FPoly) -> Result<FPoly> {
        self.check(other)?;
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &FPoly) -> Result<FPoly> {
        let mut acc = FPoly::one(&self.field).rem(modulus)?;
        let mut b = self.rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&b)?.rem(modulus)?;
            }
            b = b.mul(&b)?.rem(modulus)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Reduction into `R(F_q, n) = F_q[x] / (x^n - 1)` by folding exponents.
    pub fn reduce_cyclic(&self, n: usize) -> FPoly {
        let mut v = vec![0u32; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            v[i % n] = self.field.add(v[i % n], c);
        }
        FPoly::raw(&self.field, v)
    }

    /// Horner evaluation at an element of a field extending `F_q`.
    pub fn eval(&self, ctx: &gf::FieldCtx, x: gf::FFElem) -> gf::FFElem {
        self.coeffs.iter().rev().fold(gf::FFElem::ZERO, |acc, &c| {
            ctx.add(ctx.mul(acc, x), ctx.embed(c))
        })
    }

    /// Irreducibility via the `x^(q^k)` gcd test.
    pub fn is_irreducible(&self) -> Result<bool> {
        let d = match self.degree() {
            None | Some(0) => return domain("irreducibility of a constant polynomial"),
            Some(d) => d,
        };
        if d == 1 {
            return Ok(true);
        }
        let f = self.monic()?;
        let x = FPoly::monomial(&self.field, 1, 1);
        let q = self.q();
        let mut h = x.clone();
        for _ in 1..=d / 2 {
            h = h.pow_mod(q, &f)?;
            if h.sub(&x)?.gcd(&f)?.degree() != Some(0) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn parse_symbols(field: &Fq, s: &str) -> Result<Vec<u32>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty symbol string".into()));
    }
    let symbols = if s.contains('.') || field.q() > MAX_DIGIT_Q {
        s.split('.')
            .map(|t| t.parse::<u32>().map_err(|_| Error::Parse(format!("bad coefficient {t:?}"))))
            .collect::<Result<Vec<_>>>()?
    } else {
        s.chars()
            .map(|ch| digit_value(ch).ok_or_else(|| Error::Parse(format!("bad digit {ch:?}"))))
            .collect::<Result<Vec<_>>>()?
    };
    if let Some(&c) = symbols.iter().find(|&&c| c as u64 >= field.q()) {
        return Err(Error::Parse(format!("symbol {c} is outside F_{}", field.q())));
    }
    Ok(symbols)
}

/// Parses a word of exactly `n` symbols, in the same notation as
/// [`FPoly::parse`].
pub fn parse_word(field: &Fq, s: &str, n: usize) -> Result<Vec<u32>> {
    let w = parse_symbols(field, s)?;
    if w.len() != n {
        return Err(Error::Parse(format!("word has {} symbols, expected {n}", w.len())));
    }
    Ok(w)
}

/// Partition of `Z/nZ` into `q`-cyclotomic cosets.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct CosetPartition {
    pub n: u64,
    pub q: u64,
    /// Each coset sorted; cosets ordered by smallest element.
    pub cosets: Vec<Vec<u64>>,
}

impl CosetPartition {
    /// Index of the coset containing residue `i`.
    pub fn coset_of(&self, i: u64) -> usize {
        self.cosets
            .iter()
            .position(|c| c.binary_search(&(i % self.n)).is_ok())
            .expect("partition covers Z/nZ")
    }
}

pub fn cyclotomic_cosets(n: u64, q: u64) -> Result<CosetPartition> {
    if n == 0 {
        return domain("n must be >= 1");
    }
    if gcd(n, q) != 1 {
        return domain(format!("gcd({n}, {q}) != 1: x^{n} - 1 is not squarefree over F_{q}"));
    }
    let mut seen = vec![false; n as usize];
    let mut cosets = Vec::new();
    for start in 0..n {
        if seen[start as usize] {
            continue;
        }
        let mut c = Vec::new();
        let mut i = start;
        while !seen[i as usize] {
            seen[i as usize] = true;
            c.push(i);
            i = ((i as u128 * q as u128) % n as u128) as u64;
        }
        c.sort_unstable();
        cosets.push(c);
    }
    Ok(CosetPartition { n, q, cosets })
}

/// The irreducible factors of `x^n - 1`, one per cyclotomic coset, in coset
/// order: factor `j` is `prod_{i in C_j} (x - zeta^i)`.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub cosets: CosetPartition,
    pub factors: Vec<FPoly>,
}

/// Factors `x^n - 1` over `F_q` using the canonical splitting field.
pub fn factor_xn_minus_1(n: u64, q: u64) -> Result<Factorization> {
    let field = Fq::get(q)?;
    let (ctx, zeta) = gf::splitting_field(n, field.prime_power())?;
    factor_xn_minus_1_in(n, &field, &ctx, zeta)
}

/// As [`factor_xn_minus_1`] with an explicit field and root of order `n`.
pub fn factor_xn_minus_1_in(
    n: u64,
    field: &Arc<Fq>,
    ctx: &gf::FieldCtx,
    zeta: gf::FFElem,
) -> Result<Factorization> {
    let cosets = cyclotomic_cosets(n, field.q())?;
    if ctx.base().q != field.q() {
        return Err(Error::MixedFields(ctx.base().q, field.q()));
    }
    let mut factors = Vec::with_capacity(cosets.cosets.len());
    for c in &cosets.cosets {
        // Big-field coefficients, lowest degree first.
        let mut poly = vec![gf::FFElem::ONE];
        for &i in c {
            let root = ctx.pow(zeta, i);
            let mut next = vec![gf::FFElem::ZERO; poly.len() + 1];
            for (k, &a) in poly.iter().enumerate() {
                next[k + 1] = ctx.add(next[k + 1], a);
                next[k] = ctx.sub(next[k], ctx.mul(a, root));
            }
            poly = next;
        }
        let coeffs = poly
            .iter()
            .map(|&a| {
                ctx.to_base(a).ok_or_else(|| {
                    Error::Internal(format!(
                        "coset factor coefficient {} is not in F_{}",
                        ctx.format(a),
                        field.q()
                    ))
                })
            })
            .collect::<Result<Vec<u32>>>()?;
        factors.push(FPoly::raw(field, coeffs));
    }
    Ok(Factorization { cosets, factors })
}
