//! The field invariant `mu(F_q, n) = min { d(C) + dim C : C != 0 cyclic }`.

use serde::Serialize;

use super::distance::{min_distance, DistanceOptions, DistanceResult};
use super::{bounds::ht_bound, enumerate_codes, CyclicCode};
use crate::error::{domain, Error, Result};
use crate::gf::{gcd, is_prime, is_primitive};

/// Read-only source of previously computed distances (e.g. a cache snapshot).
pub trait DistanceLookup {
    fn lookup(&self, q: u64, n: usize, gen: &str) -> Option<DistanceResult>;
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DivisorRecord {
    pub gen: String,
    pub dim: usize,
    pub distance: DistanceResult,
    /// True when the distance came from a [`DistanceLookup`].
    #[serde(skip)]
    pub cached: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MuRecord {
    pub q: u64,
    pub n: usize,
    /// `mu` itself when `exact`, otherwise the lower end of the bracket.
    pub mu: usize,
    pub mu_upper: usize,
    pub exact: bool,
    pub witness: String,
    pub witness_dim: usize,
    pub witness_d: usize,
    pub per_divisor: Vec<DivisorRecord>,
}

/// Computes `mu(F_q, n)` with a witness divisor.
///
/// Codes are visited by ascending dimension. With `best` the smallest
/// `dim + d` seen so far, a code whose `dim + designed distance >= best`
/// cannot improve it and only gets a bound-only record.
pub fn mu(n: usize, q: u64, opts: &DistanceOptions, cache: Option<&dyn DistanceLookup>) -> Result<MuRecord> {
    if gcd(n as u64, q) != 1 {
        return domain(format!("gcd({n}, {q}) != 1"));
    }
    let mut codes = enumerate_codes(n, q)?;
    codes.sort_by_cached_key(|c| (c.dim, c.gen_string()));

    let mut best = usize::MAX;
    let mut best_upper_code: Option<(usize, usize)> = None;
    let mut lower = usize::MAX;
    let mut per_divisor = Vec::with_capacity(codes.len());
    for (idx, code) in codes.iter().enumerate() {
        let gen = code.gen_string();
        let designed = ht_bound(&code.zeros, n);
        let (distance, cached) = if code.dim + designed >= best {
            (DistanceResult::from_bounds(code), false)
        } else if let Some(hit) = cache.and_then(|c| c.lookup(q, n, &gen)).filter(|r| r.exact) {
            (DistanceResult { work: 0, ..hit }, true)
        } else {
            (min_distance(code, opts), false)
        };
        lower = lower.min(code.dim + distance.lower);
        if code.dim + distance.upper < best {
            best = code.dim + distance.upper;
            best_upper_code = Some((idx, distance.upper));
        }
        per_divisor.push(DivisorRecord {
            gen,
            dim: code.dim,
            distance,
            cached,
        });
    }
    let (widx, wd) = best_upper_code.ok_or_else(|| Error::Internal("no nonzero cyclic code".into()))?;
    let witness: &CyclicCode = &codes[widx];
    Ok(MuRecord {
        q,
        n,
        mu: lower,
        mu_upper: best,
        exact: lower == best,
        witness: witness.gen_string(),
        witness_dim: witness.dim,
        witness_d: wd,
        per_divisor,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrongUpReport {
    pub p: u64,
    pub q: u64,
    pub q_primitive: bool,
    /// `p > 2q - 2`: the unconditional form of the MDS argument applies.
    pub unconditional: bool,
    /// `p > q + 2`: the form conditional on the MDS conjecture applies.
    pub conditional: bool,
    pub mu: MuRecord,
    /// `(generator, dim, d)` with `dim + d <= p`, when one is required.
    pub witness: Option<(String, usize, usize)>,
}

/// Checks one instance of the strong uncertainty principle at prime `p`.
///
/// If `q` is not primitive mod `p` and `p > 2q - 2`, a divisor with
/// `dim + d <= p` must exist; if `q` is primitive, `mu = p + 1` must hold.
/// Either failure is reported as [`Error::Internal`].
pub fn strong_up_witness(p: u64, q: u64, opts: &DistanceOptions) -> Result<StrongUpReport> {
    if !is_prime(p) {
        return domain(format!("{p} is not prime"));
    }
    if gcd(p, q) != 1 {
        return domain(format!("gcd({p}, {q}) != 1"));
    }
    let primitive = p == 2 || is_primitive(q % p, p)?;
    let unconditional = p + 2 > 2 * q;
    let conditional = p > q + 2;
    let rec = mu(p as usize, q, opts, None)?;
    let mut witness = None;
    if primitive {
        if rec.exact && rec.mu != p as usize + 1 {
            return Err(Error::Internal(format!(
                "q = {q} is primitive mod {p} but mu = {} != p + 1",
                rec.mu
            )));
        }
    } else if unconditional {
        if rec.mu_upper > p as usize {
            return Err(Error::Internal(format!(
                "no divisor with dim + d <= {p} found for q = {q} (best {})",
                rec.mu_upper
            )));
        }
        witness = Some((rec.witness.clone(), rec.witness_dim, rec.witness_d));
    }
    Ok(StrongUpReport {
        p,
        q,
        q_primitive: primitive,
        unconditional,
        conditional,
        mu: rec,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::distance::oracle::naive_min_distance;
    use crate::cyclic::{enumerate_codes, Method};
    use std::collections::HashMap;

    fn unpruned_mu(n: usize, q: u64) -> usize {
        enumerate_codes(n, q)
            .unwrap()
            .iter()
            .map(|c| c.dim + naive_min_distance(c))
            .min()
            .unwrap()
    }

    #[test]
    fn small_table_values() {
        let opts = DistanceOptions::default();
        assert_eq!(mu(7, 2, &opts, None).unwrap().mu, 7);
        assert_eq!(mu(17, 2, &opts, None).unwrap().mu, 14);
        assert_eq!(mu(9, 2, &opts, None).unwrap().mu, 6);
    }

    #[test]
    fn pruning_matches_unpruned_minimum() {
        let opts = DistanceOptions::default();
        for (n, q) in [(7usize, 2u64), (9, 2), (15, 2), (17, 2), (21, 2), (5, 3), (8, 3), (11, 3), (13, 3), (5, 4), (7, 4), (6, 5)] {
            let rec = mu(n, q, &opts, None).unwrap();
            assert!(rec.exact);
            assert_eq!(rec.mu, unpruned_mu(n, q), "n={n} q={q}");
            assert!(rec.mu <= n + 1);
            assert_eq!(rec.witness_dim + rec.witness_d, rec.mu);
        }
    }

    struct MapLookup(HashMap<String, DistanceResult>);

    impl DistanceLookup for MapLookup {
        fn lookup(&self, _q: u64, _n: usize, gen: &str) -> Option<DistanceResult> {
            self.0.get(gen).copied()
        }
    }

    #[test]
    fn cache_hits_skip_work() {
        let opts = DistanceOptions::default();
        let first = mu(17, 2, &opts, None).unwrap();
        let map = first
            .per_divisor
            .iter()
            .filter(|d| d.distance.exact && d.distance.method != Method::BchOnly)
            .map(|d| (d.gen.clone(), d.distance))
            .collect();
        let lookup = MapLookup(map);
        let second = mu(17, 2, &opts, Some(&lookup)).unwrap();
        assert_eq!(second.mu, first.mu);
        // A [17,8] even-weight quadratic-residue subcode is computed; the
        // [17,9] codes are then pruned by 9 + 5 >= 14.
        let eight: Vec<_> = second.per_divisor.iter().filter(|d| d.dim == 8 && d.cached).collect();
        assert!(!eight.is_empty());
        assert!(eight.iter().all(|d| d.distance.work == 0 && d.distance.lower == 6));
        for (a, b) in first.per_divisor.iter().zip(&second.per_divisor) {
            assert_eq!((a.distance.lower, a.distance.upper), (b.distance.lower, b.distance.upper));
        }
    }

    #[test]
    fn strong_up_instances() {
        let opts = DistanceOptions::default();
        let r = strong_up_witness(7, 2, &opts).unwrap();
        assert!(!r.q_primitive);
        let (_, k, d) = r.witness.unwrap();
        assert_eq!(k + d, 7);
        let r = strong_up_witness(5, 2, &opts).unwrap();
        assert!(r.q_primitive);
        assert_eq!(r.mu.mu, 6);
        assert!(strong_up_witness(9, 2, &opts).is_err());
        assert!(strong_up_witness(7, 7, &opts).is_err());
    }
}
