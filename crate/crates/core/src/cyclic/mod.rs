//! Cyclic codes `C(g)` in `R(F_q, n) = F_q[x] / (x^n - 1)`.
//!
//! Every code is described by its monic generator `g | x^n - 1` and by its
//! zero set `Z = { i : g(zeta^i) = 0 }`, a union of cyclotomic cosets. The
//! submodules provide designed-distance bounds ([`bounds`]), exact and
//! bracketed minimum distance ([`distance`]) and the invariant
//! `mu(F_q, n) = min { d(C) + dim C }` ([`mu`]).

pub mod bounds;
pub mod distance;
pub mod mu;

use std::sync::Arc;

use crate::error::{domain, Error, Result};
use crate::gf::{Fq, PrimePower};
use crate::polyring::{factor_xn_minus_1, FPoly, Factorization};

pub use bounds::{bch_bound, ht_bound};
pub use distance::{min_distance, DistanceOptions, DistanceResult, Method};
pub use mu::{mu, strong_up_witness, DistanceLookup, DivisorRecord, MuRecord, StrongUpReport};

/// Largest number of irreducible factors for which all divisors are listed.
pub const MAX_FACTORS: usize = 30;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicCode {
    pub q: PrimePower,
    pub n: usize,
    pub gen: FPoly,
    /// Sorted exponents `i` with `gen(zeta^i) = 0`.
    pub zeros: Vec<u64>,
    pub dim: usize,
}

impl CyclicCode {
    /// The code generated by the product of the factors indexed by `subset`.
    pub fn from_factors(fac: &Factorization, subset: &[usize]) -> Result<CyclicCode> {
        let field = match fac.factors.first() {
            Some(f) => Arc::clone(f.field()),
            None => return domain("empty factorization"),
        };
        let n = fac.cosets.n as usize;
        let mut gen = FPoly::one(&field);
        let mut zeros = Vec::new();
        for &j in subset {
            let f = fac
                .factors
                .get(j)
                .ok_or_else(|| Error::Domain(format!("factor index {j} out of range")))?;
            gen = gen.mul(f)?;
            zeros.extend_from_slice(&fac.cosets.cosets[j]);
        }
        zeros.sort_unstable();
        zeros.dedup();
        let deg = gen.degree().unwrap_or(0);
        if deg >= n {
            return domain("the generator x^n - 1 gives the zero code");
        }
        Ok(CyclicCode {
            q: field.prime_power(),
            n,
            gen,
            zeros,
            dim: n - deg,
        })
    }

    /// The code with the given monic generator, which must divide `x^n - 1`.
    pub fn from_generator(n: usize, gen: &FPoly) -> Result<CyclicCode> {
        if !gen.is_monic() {
            return domain(format!("generator {gen} is not monic"));
        }
        let field = Arc::clone(gen.field());
        let xn = FPoly::xn_minus_one(&field, n);
        if !xn.rem(gen)?.is_zero() {
            return domain(format!("{gen} does not divide x^{n} - 1 over F_{}", field.q()));
        }
        let fac = factor_xn_minus_1(n as u64, field.q())?;
        let subset: Vec<usize> = fac
            .factors
            .iter()
            .enumerate()
            .filter(|(_, f)| gen.rem(f).map(|r| r.is_zero()).unwrap_or(false))
            .map(|(j, _)| j)
            .collect();
        let code = CyclicCode::from_factors(&fac, &subset)?;
        if &code.gen != gen {
            return Err(Error::Internal(format!("generator {gen} rebuilt as {}", code.gen)));
        }
        Ok(code)
    }

    pub fn field(&self) -> &Arc<Fq> {
        self.gen.field()
    }

    /// Generator-polynomial digit string.
    pub fn gen_string(&self) -> String {
        self.gen.to_string()
    }

    /// Systematic generator matrix: row `i` is `x^(r+i) - (x^(r+i) mod g)`
    /// with `r = deg g`, so positions `r..n` carry the identity.
    pub fn generator_matrix(&self) -> Vec<Vec<u32>> {
        let field = self.field();
        let r = self.n - self.dim;
        (0..self.dim)
            .map(|i| {
                let mono = FPoly::monomial(field, r + i, 1);
                let rem = mono.rem(&self.gen).expect("generator is nonzero");
                let mut row = vec![0u32; self.n];
                for (j, &c) in rem.coeffs().iter().enumerate() {
                    row[j] = field.neg(c);
                }
                row[r + i] = 1;
                row
            })
            .collect()
    }

    /// Codeword of a message under [`CyclicCode::generator_matrix`].
    pub fn encode(&self, rows: &[Vec<u32>], msg: &[u32]) -> Vec<u32> {
        let f = self.field();
        let mut cw = vec![0u32; self.n];
        for (row, &m) in rows.iter().zip(msg) {
            if m == 0 {
                continue;
            }
            for (c, &r) in cw.iter_mut().zip(row) {
                *c = f.add(*c, f.mul(m, r));
            }
        }
        cw
    }
}

/// All nonzero cyclic codes of length `n` over `F_q`, ordered by ascending
/// generator degree, ties broken by the generator string.
pub fn enumerate_codes(n: usize, q: u64) -> Result<Vec<CyclicCode>> {
    let fac = factor_xn_minus_1(n as u64, q)?;
    codes_from_factorization(&fac)
}

pub fn codes_from_factorization(fac: &Factorization) -> Result<Vec<CyclicCode>> {
    let t = fac.factors.len();
    if t > MAX_FACTORS {
        return Err(Error::Capacity(format!(
            "x^n - 1 has {t} irreducible factors; enumerating 2^{t} divisors is infeasible"
        )));
    }
    let full = (1u64 << t) - 1;
    let mut codes = (0..full)
        .map(|mask| {
            let subset: Vec<usize> = (0..t).filter(|&j| mask >> j & 1 == 1).collect();
            CyclicCode::from_factors(fac, &subset)
        })
        .collect::<Result<Vec<_>>>()?;
    codes.sort_by_cached_key(|c| (c.n - c.dim, c.gen_string()));
    Ok(codes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::is_primitive;

    #[test]
    fn length_seven_binary() {
        let codes = enumerate_codes(7, 2).unwrap();
        let dims: Vec<usize> = codes.iter().map(|c| c.dim).collect();
        assert_eq!(dims, vec![7, 6, 4, 4, 3, 3, 1]);
        for c in &codes {
            assert_eq!(c.zeros.len(), c.n - c.dim);
            let xn = FPoly::xn_minus_one(c.field(), 7);
            assert!(xn.rem(&c.gen).unwrap().is_zero());
        }
    }

    #[test]
    fn length_seventeen_binary() {
        let codes = enumerate_codes(17, 2).unwrap();
        let dims: Vec<usize> = codes.iter().map(|c| c.dim).collect();
        assert_eq!(dims, vec![17, 16, 9, 9, 8, 8, 1]);
    }

    #[test]
    fn primitive_case_has_three_codes() {
        for p in [3usize, 5, 11, 13, 19, 29, 37, 53, 59, 61] {
            assert!(is_primitive(2, p as u64).unwrap());
            assert_eq!(enumerate_codes(p, 2).unwrap().len(), 3);
        }
    }

    #[test]
    fn generator_roundtrip() {
        let f2 = Fq::get(2).unwrap();
        let g = FPoly::parse(&f2, "1101").unwrap();
        let c = CyclicCode::from_generator(7, &g).unwrap();
        assert_eq!(c.dim, 4);
        assert_eq!(c.zeros, vec![1, 2, 4]);
        assert!(CyclicCode::from_generator(7, &FPoly::parse(&f2, "111").unwrap()).is_err());
        let full = FPoly::xn_minus_one(&f2, 7);
        assert!(CyclicCode::from_generator(7, &full).is_err());
    }

    #[test]
    fn systematic_rows_are_codewords() {
        for (n, q) in [(15usize, 2u64), (13, 3), (15, 4)] {
            for c in enumerate_codes(n, q).unwrap() {
                let rows = c.generator_matrix();
                for row in rows {
                    let p = FPoly::from_word(c.field(), &row).unwrap();
                    assert!(p.rem(&c.gen).unwrap().is_zero());
                }
            }
        }
    }
}
