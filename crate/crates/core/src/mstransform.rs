//! Vectorial Mattson-Solomon transform `f -> (f(zeta), f(zeta^2), ..., f(zeta^n))`
//! and the naive uncertainty principle `w(f) * w(f_hat) >= n`.
//!
//! `zeta` is the canonical primitive `n`-th root of unity of the splitting
//! field `F_{q^m}`, `m = ord_n(q)`. Position `i` of the output (1-based)
//! holds `f(zeta^i)`, so the last slot is `f(1)`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::gf::{self, FFElem, FieldCtx, Fq};

/// Exhaustive scans are limited to `q^n` at most this many words.
pub const MAX_EXHAUSTIVE_WORDS: u64 = 1 << 24;

/// Transform values, `values[i - 1] = f(zeta^i)` for `i = 1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MSVector {
    pub n: usize,
    pub values: Vec<FFElem>,
}

impl MSVector {
    pub fn weight(&self) -> usize {
        self.values.iter().filter(|v| !v.is_zero()).count()
    }
}

/// Precomputed data for transforms of length `n` over `F_q`.
#[derive(Debug)]
pub struct MsTransform {
    n: usize,
    field: Arc<Fq>,
    ctx: Arc<FieldCtx>,
    zeta: FFElem,
    // scaled[c][k] = c * zeta^k
    scaled: Vec<Vec<FFElem>>,
}

impl MsTransform {
    /// Transform with the canonical root of unity.
    pub fn new(n: usize, q: u64) -> Result<MsTransform> {
        let field = Fq::get(q)?;
        if n == 0 {
            return domain("zero-length input");
        }
        let (ctx, zeta) = gf::splitting_field(n as u64, field.prime_power())?;
        Self::build(n, field, ctx, zeta)
    }

    /// Transform with `zeta^b` in place of the canonical root; `b` must be
    /// coprime to `n`.
    pub fn with_stride(n: usize, q: u64, b: u64) -> Result<MsTransform> {
        if gf::gcd(b, n as u64) != 1 {
            return domain(format!("stride {b} is not coprime to {n}"));
        }
        let t = Self::new(n, q)?;
        let zeta = t.ctx.pow(t.zeta, b);
        Self::build(n, t.field, t.ctx, zeta)
    }

    fn build(n: usize, field: Arc<Fq>, ctx: Arc<FieldCtx>, zeta: FFElem) -> Result<MsTransform> {
        if ctx.mult_order(zeta)? != n as u64 {
            return Err(Error::Internal(format!("root does not have order {n}")));
        }
        let mut powers = Vec::with_capacity(n);
        let mut x = FFElem::ONE;
        for _ in 0..n {
            powers.push(x);
            x = ctx.mul(x, zeta);
        }
        let scaled = (0..field.q() as u32)
            .map(|c| {
                let e = ctx.embed(c);
                powers.iter().map(|&z| ctx.mul(e, z)).collect()
            })
            .collect();
        Ok(MsTransform {
            n,
            field,
            ctx,
            zeta,
            scaled,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Arc<Fq> {
        &self.field
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn zeta(&self) -> FFElem {
        self.zeta
    }

    fn check_word(&self, word: &[u32]) -> Result<()> {
        if word.len() != self.n {
            return domain(format!("word has length {}, expected {}", word.len(), self.n));
        }
        if word.iter().any(|&c| c as u64 >= self.field.q()) {
            return domain(format!("word symbol outside F_{}", self.field.q()));
        }
        Ok(())
    }

    /// `f(zeta^i)` for `i = 1..=n`.
    pub fn forward(&self, word: &[u32]) -> Result<MSVector> {
        self.check_word(word)?;
        Ok(self.forward_unchecked(word))
    }

    fn forward_unchecked(&self, word: &[u32]) -> MSVector {
        let n = self.n;
        let values = (1..=n)
            .map(|i| {
                word.iter()
                    .enumerate()
                    .filter(|(_, &c)| c != 0)
                    .fold(FFElem::ZERO, |acc, (j, &c)| {
                        self.ctx.add(acc, self.scaled[c as usize][(i * j) % n])
                    })
            })
            .collect();
        MSVector { n, values }
    }

    /// Conjugacy check: `F_{qi mod n} = F_i^q` for every `i`, which forces
    /// `F_n = f(1)` into `F_q`.
    pub fn is_conjugate_consistent(&self, v: &MSVector) -> bool {
        let n = self.n;
        let q = self.field.q() as usize;
        v.n == n
            && v.values.len() == n
            && (1..=n).all(|i| {
                let j = (q % n * i) % n;
                let slot = if j == 0 { n } else { j };
                v.values[slot - 1] == self.ctx.frobenius(v.values[i - 1])
            })
            && self.ctx.in_base_field(v.values[n - 1])
    }

    /// `f_j = n^{-1} sum_i F_i zeta^{-ij}`.
    pub fn inverse(&self, v: &MSVector) -> Result<Vec<u32>> {
        if v.n != self.n || v.values.len() != self.n {
            return domain("transform length mismatch");
        }
        if v.values.iter().any(|a| a.value() >= self.ctx.size()) {
            return domain("transform value outside the splitting field");
        }
        if !self.is_conjugate_consistent(v) {
            return domain("values violate the conjugacy constraint; not the transform of an F_q word");
        }
        let n = self.n;
        let p = self.ctx.characteristic();
        let n_inv = gf::pow_mod(n as u64 % p, p - 2, p);
        let ctx = &self.ctx;
        (0..n)
            .map(|j| {
                let sum = (1..=n).fold(FFElem::ZERO, |acc, i| {
                    let e = (n - (i * j) % n) % n;
                    ctx.add(acc, ctx.mul(v.values[i - 1], self.scaled[1][e]))
                });
                let c = ctx.scale(sum, n_inv);
                ctx.to_base(c).ok_or_else(|| Error::Internal("inverse coefficient outside F_q".into()))
            })
            .collect()
    }

    pub fn format_values(&self, v: &MSVector) -> Vec<String> {
        v.values.iter().map(|&a| self.ctx.format(a)).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct NaiveUpCheck {
    pub w: usize,
    pub w_hat: usize,
    pub product: usize,
    pub holds: bool,
}

/// Weights of `f` and its transform and whether `w * w_hat >= n`.
pub fn naive_up_check(t: &MsTransform, word: &[u32]) -> Result<NaiveUpCheck> {
    t.check_word(word)?;
    let w = word.iter().filter(|&&c| c != 0).count();
    if w == 0 {
        return domain("the zero word is excluded");
    }
    let w_hat = t.forward_unchecked(word).weight();
    Ok(NaiveUpCheck {
        w,
        w_hat,
        product: w * w_hat,
        holds: w * w_hat >= t.n,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanMode {
    Exhaustive,
    Random,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UpScanReport {
    pub n: usize,
    pub q: u64,
    pub mode: ScanMode,
    pub words: u64,
    pub min_product: usize,
    /// First word (in scan order) attaining `min_product`.
    pub argmin: String,
    pub equality_count: u64,
    pub violations: u64,
}

/// Sweeps nonzero words and records the smallest `w(f) * w(f_hat)`.
pub fn naive_up_scan(n: usize, q: u64, mode: ScanMode, trials: u64, seed: u64) -> Result<UpScanReport> {
    let t = MsTransform::new(n, q)?;
    let mut report = UpScanReport {
        n,
        q,
        mode,
        words: 0,
        min_product: usize::MAX,
        argmin: String::new(),
        equality_count: 0,
        violations: 0,
    };
    let record = |word: &[u32], r: &mut UpScanReport| {
        let c = naive_up_check(&t, word).expect("nonzero word of correct length");
        r.words += 1;
        if c.product < r.min_product {
            r.min_product = c.product;
            r.argmin = word.iter().map(|&d| gf::digit_char(d)).collect();
        }
        if c.product == n {
            r.equality_count += 1;
        }
        if !c.holds {
            r.violations += 1;
        }
    };
    let mut word = vec![0u32; n];
    match mode {
        ScanMode::Exhaustive => {
            let total = q
                .checked_pow(n as u32)
                .filter(|&s| s <= MAX_EXHAUSTIVE_WORDS)
                .ok_or_else(|| Error::Capacity(format!("{q}^{n} words exceed the exhaustive cap of 2^24")))?;
            for idx in 1..total {
                let mut x = idx;
                for d in word.iter_mut() {
                    *d = (x % q) as u32;
                    x /= q;
                }
                record(&word, &mut report);
            }
        }
        ScanMode::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut done = 0;
            while done < trials {
                for d in word.iter_mut() {
                    *d = rng.gen_range(0..q as u32);
                }
                if word.iter().all(|&d| d == 0) {
                    continue;
                }
                record(&word, &mut report);
                done += 1;
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::FPoly;

    #[test]
    fn forward_examples() {
        let t = MsTransform::new(7, 2).unwrap();
        let mut one = vec![0u32; 7];
        one[0] = 1;
        let v = t.forward(&one).unwrap();
        assert!(v.values.iter().all(|&x| x == FFElem::ONE));
        assert_eq!(v.weight(), 7);

        let v = t.forward(&[1; 7]).unwrap();
        assert_eq!(v.weight(), 1);
        assert_eq!(v.values[6], FFElem::ONE);

        let mut x = vec![0u32; 7];
        x[1] = 1;
        let v = t.forward(&x).unwrap();
        assert_eq!(v.weight(), 7);
        assert_eq!(v.values[0], t.zeta());
        assert_eq!(v.values[6], FFElem::ONE);

        assert!(t.forward(&[1; 6]).is_err());
        assert!(MsTransform::new(0, 2).is_err());
        assert!(MsTransform::new(6, 2).is_err());
    }

    #[test]
    fn inverse_examples() {
        let t = MsTransform::new(7, 2).unwrap();
        let ones = MSVector { n: 7, values: vec![FFElem::ONE; 7] };
        assert_eq!(t.inverse(&ones).unwrap(), vec![1, 0, 0, 0, 0, 0, 0]);
        let mut bad = ones.clone();
        bad.values[6] = t.zeta();
        assert!(t.inverse(&bad).is_err());
    }

    #[test]
    fn naive_up_examples() {
        let t = MsTransform::new(7, 2).unwrap();
        let c = naive_up_check(&t, &[1; 7]).unwrap();
        assert_eq!((c.w, c.w_hat, c.product, c.holds), (7, 1, 7, true));
        let c = naive_up_check(&t, &[1, 0, 0, 0, 0, 0, 0]).unwrap();
        assert_eq!((c.w, c.w_hat, c.product, c.holds), (1, 7, 7, true));
        // x^3 + x + 1 vanishes on zeta^{1,2,4}: w_hat = 4.
        let c = naive_up_check(&t, &[1, 1, 0, 1, 0, 0, 0]).unwrap();
        assert_eq!((c.w, c.w_hat), (3, 4));
        assert!(c.product >= 7);
        assert!(naive_up_check(&t, &[0; 7]).is_err());
    }

    #[test]
    fn scans() {
        let r = naive_up_scan(7, 2, ScanMode::Exhaustive, 0, 0).unwrap();
        assert_eq!(r.words, 127);
        assert_eq!(r.min_product, 7);
        assert_eq!(r.violations, 0);
        let r = naive_up_scan(9, 2, ScanMode::Exhaustive, 0, 0).unwrap();
        assert!(r.min_product >= 9);
        let r = naive_up_scan(15, 2, ScanMode::Random, 10_000, 1).unwrap();
        assert_eq!(r.words, 10_000);
        assert!(r.min_product >= 15);
        assert!(naive_up_scan(31, 2, ScanMode::Exhaustive, 0, 0).is_err());
    }

    #[test]
    fn zero_count_matches_gcd_degree() {
        for (n, q) in [(7usize, 2u64), (9, 2), (15, 2), (8, 3), (13, 3)] {
            let t = MsTransform::new(n, q).unwrap();
            let f = Fq::get(q).unwrap();
            let xn = FPoly::xn_minus_one(&f, n);
            let total = q.pow(n as u32).min(4000);
            for idx in 1..total {
                let mut x = idx;
                let word: Vec<u32> = (0..n)
                    .map(|_| {
                        let d = (x % q) as u32;
                        x /= q;
                        d
                    })
                    .collect();
                let zeros = n - t.forward(&word).unwrap().weight();
                let g = FPoly::from_word(&f, &word).unwrap().gcd(&xn).unwrap();
                assert_eq!(zeros, g.degree().unwrap());
            }
        }
    }
}
