//! Exact arithmetic in finite fields.
//!
//! A [`FieldCtx`] realizes `F_{q^m}` with `q = p^e` as a single flat extension
//! of the prime field `F_p` of degree `e*m`. Elements are packed into a `u64`
//! whose base-`p` digits are the polynomial coefficients, lowest degree in the
//! least significant digit. Construction is canonical: the modulus is the
//! smallest monic irreducible under that integer ordering, and the primitive
//! element is the smallest element of full multiplicative order.
//!
//! [`Fq`] is the base field `F_q` with log/exp tables, used for coefficients
//! of polynomials and codewords.

mod numtheory;
mod primepoly;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{domain, Error, Result};

pub use numtheory::{euler_phi, factor, gcd, is_prime, is_primitive, ord_mod, pow_mod, primes_between};

/// A prime power `q = p^e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct PrimePower {
    pub p: u64,
    pub e: u32,
    pub q: u64,
}

impl PrimePower {
    pub fn new(q: u64) -> Result<Self> {
        if q < 2 {
            return domain(format!("{q} is not a prime power"));
        }
        let fs = factor(q);
        if fs.len() != 1 {
            return domain(format!("{q} is not a prime power"));
        }
        let (p, e) = fs[0];
        Ok(PrimePower { p, e, q })
    }

    pub fn from_parts(p: u64, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return domain(format!("{p} is not prime"));
        }
        if e == 0 {
            return domain("exponent e must be >= 1");
        }
        let q = p
            .checked_pow(e)
            .ok_or_else(|| Error::Capacity(format!("{p}^{e} overflows u64")))?;
        Ok(PrimePower { p, e, q })
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.q)
    }
}

/// An element of some [`FieldCtx`], packed as the integer `sum c_i p^i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FFElem(pub u64);

impl FFElem {
    pub const ZERO: FFElem = FFElem(0);
    pub const ONE: FFElem = FFElem(1);

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// The field `F_{q^m}` realized as `F_p[x] / (modulus)`.
#[derive(Debug)]
pub struct FieldCtx {
    base: PrimePower,
    ext_degree: u32,
    degree: u32,
    modulus: Vec<u64>,
    size: u64,
    order_factors: Vec<(u64, u32)>,
    primitive: FFElem,
    subfield: Vec<FFElem>,
    subfield_index: HashMap<FFElem, u32>,
}

fn ctx_cache() -> &'static Mutex<HashMap<(u64, u32, u32), Arc<FieldCtx>>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32, u32), Arc<FieldCtx>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl FieldCtx {
    /// Builds `F_{(p^e)^m}`. Prefer [`FieldCtx::shared`], which memoizes.
    pub fn new(p: u64, e: u32, m: u32) -> Result<FieldCtx> {
        let base = PrimePower::from_parts(p, e)?;
        if m == 0 {
            return domain("extension degree m must be >= 1");
        }
        let degree = e
            .checked_mul(m)
            .ok_or_else(|| Error::Capacity("degree overflow".into()))?;
        let size = p
            .checked_pow(degree)
            .filter(|&s| s < u64::MAX)
            .ok_or_else(|| Error::Capacity(format!("field of size {p}^{degree} exceeds 2^64")))?;
        let modulus = primepoly::smallest_irreducible(p, degree);
        let order_factors = factor(size - 1);
        let mut ctx = FieldCtx {
            base,
            ext_degree: m,
            degree,
            modulus,
            size,
            order_factors,
            primitive: FFElem::ONE,
            subfield: Vec::new(),
            subfield_index: HashMap::new(),
        };
        ctx.primitive = (1..size)
            .map(FFElem)
            .find(|&a| ctx.has_full_order(a))
            .ok_or_else(|| Error::Internal(format!("no primitive element in F_{p}^{degree}")))?;
        ctx.subfield = ctx.embed_base_field()?;
        ctx.subfield_index = ctx
            .subfield
            .iter()
            .enumerate()
            .map(|(i, &a)| (a, i as u32))
            .collect();
        Ok(ctx)
    }

    /// Memoized constructor; equal parameters return the same context.
    pub fn shared(p: u64, e: u32, m: u32) -> Result<Arc<FieldCtx>> {
        if let Some(c) = ctx_cache().lock().unwrap().get(&(p, e, m)) {
            return Ok(Arc::clone(c));
        }
        let ctx = Arc::new(FieldCtx::new(p, e, m)?);
        let mut cache = ctx_cache().lock().unwrap();
        Ok(Arc::clone(cache.entry((p, e, m)).or_insert(ctx)))
    }

    fn has_full_order(&self, a: FFElem) -> bool {
        let n = self.size - 1;
        self.order_factors
            .iter()
            .all(|&(r, _)| self.pow(a, n / r) != FFElem::ONE)
    }

    // Images of the F_q elements (indexed by their own packed code) inside
    // this field. With e = 1 or m = 1 the embedding is the identity on codes.
    fn embed_base_field(&self) -> Result<Vec<FFElem>> {
        let q = self.base.q;
        if self.base.e == 1 || self.ext_degree == 1 {
            return Ok((0..q).map(FFElem).collect());
        }
        let small = FieldCtx::shared(self.base.p, self.base.e, 1)?;
        let step = (self.size - 1) / (q - 1);
        let mut candidates: Vec<FFElem> = (0..q - 1)
            .map(|j| self.pow(self.primitive, step * j))
            .collect();
        candidates.sort_unstable();
        let root = candidates
            .into_iter()
            .find(|&b| {
                let mut acc = FFElem::ZERO;
                for &c in small.modulus.iter().rev() {
                    acc = self.add(self.mul(acc, b), FFElem(c));
                }
                acc.is_zero()
            })
            .ok_or_else(|| Error::Internal("base-field modulus has no root in the extension".into()))?;
        let p = self.base.p;
        Ok((0..q)
            .map(|code| {
                let mut acc = FFElem::ZERO;
                let mut t = code;
                let mut power = FFElem::ONE;
                for _ in 0..self.base.e {
                    acc = self.add(acc, self.scale(power, t % p));
                    power = self.mul(power, root);
                    t /= p;
                }
                acc
            })
            .collect())
    }

    pub fn base(&self) -> PrimePower {
        self.base
    }

    pub fn characteristic(&self) -> u64 {
        self.base.p
    }

    pub fn ext_degree(&self) -> u32 {
        self.ext_degree
    }

    /// Degree of the modulus over F_p, i.e. `e*m`.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Modulus coefficients over F_p, lowest degree first (monic).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn primitive_elt(&self) -> FFElem {
        self.primitive
    }

    pub fn zero(&self) -> FFElem {
        FFElem::ZERO
    }

    pub fn one(&self) -> FFElem {
        FFElem::ONE
    }

    pub fn coeffs(&self, a: FFElem) -> Vec<u64> {
        let p = self.base.p;
        let mut t = a.0;
        (0..self.degree)
            .map(|_| {
                let c = t % p;
                t /= p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FFElem> {
        let p = self.base.p;
        if coeffs.len() > self.degree as usize {
            return domain("too many coefficients for this field");
        }
        if coeffs.iter().any(|&c| c >= p) {
            return domain(format!("coefficient out of range [0, {p})"));
        }
        Ok(FFElem(coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)))
    }

    pub fn add(&self, a: FFElem, b: FFElem) -> FFElem {
        let p = self.base.p;
        if p == 2 {
            return FFElem(a.0 ^ b.0);
        }
        if self.degree == 1 {
            return FFElem((a.0 + b.0) % p);
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u64;
        let mut place = 1u64;
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        FFElem(out)
    }

    pub fn neg(&self, a: FFElem) -> FFElem {
        let p = self.base.p;
        if p == 2 {
            return a;
        }
        let mut x = a.0;
        let mut out = 0u64;
        let mut place = 1u64;
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place = place.wrapping_mul(p);
        }
        FFElem(out)
    }

    pub fn sub(&self, a: FFElem, b: FFElem) -> FFElem {
        self.add(a, self.neg(b))
    }

    /// Multiplication by an F_p scalar.
    pub fn scale(&self, a: FFElem, c: u64) -> FFElem {
        let p = self.base.p;
        let c = c % p;
        match c {
            0 => FFElem::ZERO,
            1 => a,
            _ => {
                let mut x = a.0;
                let mut out = 0u64;
                let mut place = 1u64;
                while x > 0 {
                    out += (x % p * c % p) * place;
                    x /= p;
                    place = place.wrapping_mul(p);
                }
                FFElem(out)
            }
        }
    }

    pub fn mul(&self, a: FFElem, b: FFElem) -> FFElem {
        if a.0 == 0 || b.0 == 0 {
            return FFElem::ZERO;
        }
        if self.base.p == 2 {
            self.mul_binary(a.0, b.0)
        } else {
            self.mul_odd(a.0, b.0)
        }
    }

    fn mul_binary(&self, a: u64, b: u64) -> FFElem {
        let d = self.degree as usize;
        let mut prod: u128 = 0;
        let mut bb = b;
        while bb != 0 {
            let i = bb.trailing_zeros();
            prod ^= (a as u128) << i;
            bb &= bb - 1;
        }
        let m: u128 = self
            .modulus
            .iter()
            .enumerate()
            .fold(0u128, |acc, (i, &c)| acc | ((c as u128) << i));
        let mut top = 127 - prod.leading_zeros() as i64;
        while prod != 0 && top >= d as i64 {
            prod ^= m << (top as usize - d);
            top = if prod == 0 { -1 } else { 127 - prod.leading_zeros() as i64 };
        }
        FFElem(prod as u64)
    }

    fn mul_odd(&self, a: u64, b: u64) -> FFElem {
        let p = self.base.p;
        let d = self.degree as usize;
        let mut da = [0u64; 64];
        let mut db = [0u64; 64];
        let (mut x, mut y) = (a, b);
        for i in 0..d {
            da[i] = x % p;
            db[i] = y % p;
            x /= p;
            y /= p;
        }
        let mut prod = [0u64; 128];
        for i in 0..d {
            if da[i] == 0 {
                continue;
            }
            for j in 0..d {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        for top in (d..2 * d - 1).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for j in 0..d {
                let idx = top - d + j;
                prod[idx] = (prod[idx] + (p - c) * self.modulus[j]) % p;
            }
            prod[top] = 0;
        }
        FFElem(prod[..d].iter().rev().fold(0, |acc, &c| acc * p + c))
    }

    pub fn pow(&self, a: FFElem, mut e: u64) -> FFElem {
        let mut acc = FFElem::ONE;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: FFElem) -> Result<FFElem> {
        if a.is_zero() {
            return domain("inverse of zero");
        }
        Ok(self.pow(a, self.size - 2))
    }

    /// `a^q`, the Frobenius map relative to the base field `F_q`.
    pub fn frobenius(&self, a: FFElem) -> FFElem {
        self.pow(a, self.base.q)
    }

    pub fn in_base_field(&self, a: FFElem) -> bool {
        self.subfield_index.contains_key(&a)
    }

    /// Image of a base-field element (given by its `F_q` code).
    pub fn embed(&self, c: u32) -> FFElem {
        self.subfield[c as usize]
    }

    /// Inverse of [`FieldCtx::embed`]; `None` when `a` lies outside `F_q`.
    pub fn to_base(&self, a: FFElem) -> Option<u32> {
        self.subfield_index.get(&a).copied()
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: FFElem) -> Result<u64> {
        if a.is_zero() {
            return domain("multiplicative order of zero");
        }
        if a.0 >= self.size {
            return domain("element does not belong to this field");
        }
        Ok(numtheory::descend_order(self.size - 1, &self.order_factors, |t| {
            self.pow(a, t) == FFElem::ONE
        }))
    }

    /// Canonical primitive `n`-th root of unity: `primitive^((size-1)/n)`.
    pub fn nth_root_of_unity(&self, n: u64) -> Result<FFElem> {
        if n == 0 {
            return domain("n must be >= 1");
        }
        let order = self.size - 1;
        if !order.is_multiple_of(n) {
            let q = self.base.q;
            if n == 1 || gcd(q, n) != 1 {
                return domain(format!("gcd({q}, {n}) != 1; no extension of F_{q} has an element of order {n}"));
            }
            return Err(Error::NoRootOfUnity { n, order, suggested_m: ord_mod(q, n)? });
        }
        Ok(self.pow(self.primitive, order / n))
    }

    /// Renders an element as its coefficient digits, lowest degree first.
    pub fn format(&self, a: FFElem) -> String {
        self.coeffs(a)
            .iter()
            .map(|&c| digit_char(c as u32))
            .collect()
    }
}

/// Free-function form of [`FieldCtx::shared`].
pub fn field_ctx(p: u64, e: u32, m: u32) -> Result<Arc<FieldCtx>> {
    FieldCtx::shared(p, e, m)
}

/// Multiplicative order of `a` in `ctx`.
pub fn mult_order(ctx: &FieldCtx, a: FFElem) -> Result<u64> {
    ctx.mult_order(a)
}

/// Splitting field of `x^n - 1` over `F_q` together with its canonical
/// primitive `n`-th root of unity.
pub fn splitting_field(n: u64, q: PrimePower) -> Result<(Arc<FieldCtx>, FFElem)> {
    if n == 0 {
        return domain("length n must be >= 1");
    }
    if gcd(n, q.q) != 1 {
        return domain(format!("gcd({n}, {}) != 1", q.q));
    }
    let m = if n == 1 { 1 } else { ord_mod(q.q, n)? };
    let m = u32::try_from(m).map_err(|_| Error::Capacity("extension degree".into()))?;
    let ctx = FieldCtx::shared(q.p, q.e, m)?;
    let zeta = ctx.nth_root_of_unity(n)?;
    Ok((ctx, zeta))
}

const DIGITS: &[u8] = b"0123456789abcdefghijklmnopqrstuvwxyz";

/// Largest field size whose elements serialize as single characters.
pub const MAX_DIGIT_Q: u64 = 36;

pub(crate) fn digit_char(c: u32) -> char {
    DIGITS[c as usize] as char
}

pub(crate) fn digit_value(ch: char) -> Option<u32> {
    let ch = ch.to_ascii_lowercase();
    DIGITS.iter().position(|&d| d as char == ch).map(|i| i as u32)
}

/// Upper bound on `q` for base fields backed by log/exp tables.
pub const MAX_BASE_Q: u64 = 1 << 16;

/// The base field `F_q` with table-driven multiplication. Elements are `u32`
/// codes in `[0, q)`, matching the packed encoding of [`FieldCtx`].
#[derive(Debug)]
pub struct Fq {
    ctx: Arc<FieldCtx>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

fn fq_cache() -> &'static Mutex<HashMap<u64, Arc<Fq>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Fq>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Fq {
    /// Shared handle to `F_q`.
    pub fn get(q: u64) -> Result<Arc<Fq>> {
        if let Some(f) = fq_cache().lock().unwrap().get(&q) {
            return Ok(Arc::clone(f));
        }
        let pp = PrimePower::new(q)?;
        if q > MAX_BASE_Q {
            return Err(Error::Capacity(format!("base field size {q} exceeds {MAX_BASE_Q}")));
        }
        let ctx = FieldCtx::shared(pp.p, pp.e, 1)?;
        let n = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![0u32; q as usize];
        let mut x = FFElem::ONE;
        for i in 0..n {
            exp[i] = x.0 as u32;
            exp[i + n] = x.0 as u32;
            log[x.0 as usize] = i as u32;
            x = ctx.mul(x, ctx.primitive_elt());
        }
        let f = Arc::new(Fq { ctx, exp, log });
        let mut cache = fq_cache().lock().unwrap();
        Ok(Arc::clone(cache.entry(q).or_insert(f)))
    }

    pub fn q(&self) -> u64 {
        self.ctx.base().q
    }

    pub fn prime_power(&self) -> PrimePower {
        self.ctx.base()
    }

    pub fn characteristic(&self) -> u64 {
        self.ctx.base().p
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let pp = self.ctx.base();
        if pp.p == 2 {
            a ^ b
        } else if pp.e == 1 {
            ((a as u64 + b as u64) % pp.p) as u32
        } else {
            self.ctx.add(FFElem(a as u64), FFElem(b as u64)).0 as u32
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let pp = self.ctx.base();
        if pp.p == 2 {
            a
        } else if pp.e == 1 {
            ((pp.p - a as u64) % pp.p) as u32
        } else {
            self.ctx.neg(FFElem(a as u64)).0 as u32
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return domain("inverse of zero");
        }
        let n = self.q() as u32 - 1;
        Ok(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    /// Nonzero elements in increasing code order.
    pub fn nonzero(&self) -> impl Iterator<Item = u32> {
        1..self.q() as u32
    }
}
