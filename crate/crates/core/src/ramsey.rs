//! Szemeredi-type extremal functions over `Z/nZ` and the lower bounds they
//! give on `mu(F_q, p)`.
//!
//! `r_m(n)` is the largest subset of `Z/nZ` containing no set
//! `{a + kb : 0 <= k < m}` with `b != 0`. `r_{delta,s}(n)` is the same for the
//! grids `{a + kb + rc : 0 <= k <= delta - 2, 0 <= r <= s}` with `b` and `c`
//! coprime to `n`. Patterns are sets: coincident points collapse.

use serde::Serialize;

use crate::error::{domain, Error, Result};
use crate::gf::{gcd, is_prime};

pub const MAX_AP_N: usize = 40;
pub const MAX_GRID_N: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Pattern {
    Ap { m: usize },
    Grid { delta: usize, s: usize },
}

impl Pattern {
    pub fn kind(&self) -> &'static str {
        match self {
            Pattern::Ap { .. } => "ap",
            Pattern::Grid { .. } => "grid",
        }
    }

    fn validate(&self, n: usize) -> Result<()> {
        if n == 0 {
            return domain("modulus must be positive");
        }
        match *self {
            Pattern::Ap { m } if m == 0 || m > n => domain(format!("need 1 <= m <= n, got m = {m}, n = {n}")),
            Pattern::Ap { .. } if n > MAX_AP_N => {
                Err(Error::Capacity(format!("n = {n} exceeds the search cap {MAX_AP_N}")))
            }
            Pattern::Grid { delta, s } if delta < 2 || delta + s > n => {
                domain(format!("need delta >= 2 and 0 <= s <= n - delta, got delta = {delta}, s = {s}"))
            }
            Pattern::Grid { .. } if n > MAX_GRID_N => {
                Err(Error::Capacity(format!("n = {n} exceeds the grid search cap {MAX_GRID_N}")))
            }
            _ => Ok(()),
        }
    }

    /// Every instance of the pattern in `Z/nZ` as a bitmask, deduplicated.
    fn instances(&self, n: usize) -> Vec<u64> {
        let mut out = Vec::new();
        match *self {
            Pattern::Ap { m } => {
                for a in 0..n {
                    for b in 1..n {
                        out.push((0..m).fold(0u64, |acc, k| acc | 1 << ((a + k * b) % n)));
                    }
                }
            }
            Pattern::Grid { delta, s } => {
                let units: Vec<usize> = (1..n).filter(|&u| gcd(u as u64, n as u64) == 1).collect();
                for a in 0..n {
                    for &b in &units {
                        for &c in &units {
                            let mut mask = 0u64;
                            for k in 0..delta - 1 {
                                for r in 0..=s {
                                    mask |= 1 << ((a + k * b + r * c) % n);
                                }
                            }
                            out.push(mask);
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Some `(a, b)` with `{a + kb : k < m} ⊆ S`, `b != 0 mod n`.
pub fn contains_ap(set: &[u64], n: u64, m: usize) -> Option<(u64, u64)> {
    if n == 0 || m == 0 {
        return None;
    }
    let mut member = vec![false; n as usize];
    for &x in set {
        member[(x % n) as usize] = true;
    }
    for a in 0..n {
        for b in 1..n {
            if (0..m as u64).all(|k| member[((a + k * b) % n) as usize]) {
                return Some((a, b));
            }
        }
    }
    None
}

/// Some `(a, b, c)` with `A(delta, s) ⊆ S`, `b` and `c` coprime to `n`.
pub fn contains_grid(set: &[u64], n: u64, delta: usize, s: usize) -> Option<(u64, u64, u64)> {
    if n == 0 || delta < 2 {
        return None;
    }
    let mut member = vec![false; n as usize];
    for &x in set {
        member[(x % n) as usize] = true;
    }
    let units: Vec<u64> = (0..n).filter(|&u| gcd(u, n) == 1).collect();
    for a in 0..n {
        for &b in &units {
            for &c in &units {
                let hit = (0..delta as u64 - 1)
                    .all(|k| (0..=s as u64).all(|r| member[((a + k * b + r * c) % n) as usize]));
                if hit {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamseyResult {
    pub kind: &'static str,
    pub n: usize,
    pub params: Pattern,
    pub value: usize,
    pub witness: Vec<u64>,
    pub nodes: u64,
    /// Some instance of the pattern has fewer points than its nominal size
    /// (`m` exceeds the order of a nonzero residue).
    pub wrap: bool,
}

struct Search {
    n: usize,
    by_elem: Vec<Vec<u64>>,
    best: usize,
    best_set: u64,
    nodes: u64,
}

impl Search {
    fn run(&mut self, i: usize, set: u64, size: usize, forbidden: u64) {
        self.nodes += 1;
        let rest = if i >= 64 { 0 } else { !0u64 << i };
        let full = if self.n == 64 { !0 } else { (1u64 << self.n) - 1 };
        let open = (rest & full & !forbidden).count_ones() as usize;
        if size + open <= self.best {
            return;
        }
        if i == self.n {
            if size > self.best {
                self.best = size;
                self.best_set = set;
            }
            return;
        }
        if forbidden >> i & 1 == 0 {
            let with = set | 1 << i;
            let mut f = forbidden;
            for &p in &self.by_elem[i] {
                let missing = p & !with;
                if missing.count_ones() == 1 {
                    f |= missing;
                }
            }
            self.run(i + 1, with, size + 1, f);
        }
        self.run(i + 1, set, size, forbidden);
    }
}

fn extremal(pattern: Pattern, n: usize) -> Result<RamseyResult> {
    pattern.validate(n)?;
    let patterns = pattern.instances(n);
    let nominal = match pattern {
        Pattern::Ap { m } => m,
        Pattern::Grid { delta, s } => (delta - 1) * (s + 1),
    };
    let wrap = patterns.iter().any(|p| (p.count_ones() as usize) < nominal);
    let mut by_elem = vec![Vec::new(); n];
    let mut singletons = 0u64;
    for &p in &patterns {
        if p.count_ones() == 1 {
            singletons |= p;
        }
        for (x, list) in by_elem.iter_mut().enumerate() {
            if p >> x & 1 == 1 {
                list.push(p);
            }
        }
    }
    let mut search = Search {
        n,
        by_elem,
        best: 0,
        best_set: 0,
        nodes: 0,
    };
    // Both pattern families are translation invariant, so a nonempty
    // optimum may be shifted to contain 0.
    if singletons & 1 == 0 {
        let mut f = singletons;
        for &p in &search.by_elem[0] {
            let missing = p & !1;
            if missing.count_ones() == 1 {
                f |= missing;
            }
        }
        search.best = 1;
        search.best_set = 1;
        search.run(1, 1, 1, f);
    }
    let witness: Vec<u64> = (0..n as u64).filter(|&x| search.best_set >> x & 1 == 1).collect();
    Ok(RamseyResult {
        kind: pattern.kind(),
        n,
        params: pattern,
        value: search.best,
        witness,
        nodes: search.nodes,
        wrap,
    })
}

/// Exact `r_m(n)` with an extremal witness.
pub fn szemeredi_r(m: usize, n: usize) -> Result<RamseyResult> {
    extremal(Pattern::Ap { m }, n)
}

/// Exact `r_{delta,s}(n)` with an extremal witness.
pub fn szemeredi_grid(delta: usize, s: usize, n: usize) -> Result<RamseyResult> {
    extremal(Pattern::Grid { delta, s }, n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamseyBound {
    pub p: usize,
    pub bound: usize,
    /// `m` for the AP bound, `(delta, s)` folded as `[delta, s]` for grids.
    pub argmin: Vec<usize>,
    pub nodes: u64,
}

/// `min { m + n - r_m(n) : 1 <= m <= n }`, without a primality check.
pub fn ap_bound(n: usize) -> Result<RamseyBound> {
    let mut best: Option<RamseyBound> = None;
    let mut nodes = 0;
    for m in 1..=n {
        let r = szemeredi_r(m, n)?;
        nodes += r.nodes;
        let b = m + n - r.value;
        if best.as_ref().is_none_or(|x| b < x.bound) {
            best = Some(RamseyBound {
                p: n,
                bound: b,
                argmin: vec![m],
                nodes: 0,
            });
        }
    }
    let mut best = best.ok_or_else(|| Error::Domain("n must be positive".into()))?;
    best.nodes = nodes;
    Ok(best)
}

fn check_prime_pair(p: usize, q: u64) -> Result<()> {
    if !is_prime(p as u64) {
        return domain(format!("{p} is not prime"));
    }
    if gcd(p as u64, q) != 1 {
        return domain(format!("gcd({p}, {q}) != 1"));
    }
    Ok(())
}

/// The AP lower bound on `mu(F_q, p)` for prime `p`.
pub fn prop_ram_lower(p: usize, q: u64) -> Result<RamseyBound> {
    check_prime_pair(p, q)?;
    ap_bound(p)
}

/// The grid lower bound
/// `min { delta + s - 1 + p - r_{delta,s}(p) }` on `mu(F_q, p)`.
pub fn prop_ram_grid_lower(p: usize, q: u64) -> Result<RamseyBound> {
    check_prime_pair(p, q)?;
    let mut best: Option<RamseyBound> = None;
    let mut nodes = 0;
    for delta in 2..=p {
        for s in 0..=p - delta {
            let r = szemeredi_grid(delta, s, p)?;
            nodes += r.nodes;
            let b = delta + s - 1 + p - r.value;
            if best.as_ref().is_none_or(|x| b < x.bound) {
                best = Some(RamseyBound {
                    p,
                    bound: b,
                    argmin: vec![delta, s],
                    nodes: 0,
                });
            }
        }
    }
    let mut best = best.ok_or_else(|| Error::Domain("p must be at least 2".into()))?;
    best.nodes = nodes;
    Ok(best)
}

/// Checks a result's witness against its pattern.
pub fn witness_is_valid(r: &RamseyResult) -> bool {
    let n = r.n as u64;
    r.witness.len() == r.value
        && match r.params {
            Pattern::Ap { m } => contains_ap(&r.witness, n, m).is_none(),
            Pattern::Grid { delta, s } => contains_grid(&r.witness, n, delta, s).is_none(),
        }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(pattern: Pattern, n: usize) -> usize {
        (0u64..1 << n)
            .filter(|&mask| {
                let set: Vec<u64> = (0..n as u64).filter(|&x| mask >> x & 1 == 1).collect();
                match pattern {
                    Pattern::Ap { m } => contains_ap(&set, n as u64, m).is_none(),
                    Pattern::Grid { delta, s } => contains_grid(&set, n as u64, delta, s).is_none(),
                }
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn contains_ap_examples() {
        assert_eq!(contains_ap(&[0, 1, 2], 7, 3), Some((0, 1)));
        assert!(contains_ap(&[3, 5], 7, 2).is_some());
        assert!(contains_ap(&[3], 7, 2).is_none());
        assert!(contains_ap(&[0, 3, 6], 9, 5).is_some());
        assert!(contains_ap(&[0, 1, 3], 7, 3).is_none());
    }

    #[test]
    fn trivial_values() {
        for n in 2..=12 {
            assert_eq!(szemeredi_r(1, n).unwrap().value, 0);
            assert_eq!(szemeredi_r(2, n).unwrap().value, 1);
            assert_eq!(szemeredi_grid(2, 0, n).unwrap().value, 0);
        }
        assert!(szemeredi_r(3, 41).is_err());
        assert!(szemeredi_r(0, 5).is_err());
        assert!(szemeredi_r(6, 5).is_err());
        assert!(szemeredi_grid(3, 1, 25).is_err());
        assert!(szemeredi_grid(5, 3, 7).is_err());
    }

    #[test]
    fn search_matches_brute_force() {
        for n in 1..=14 {
            for m in 1..=n {
                let r = szemeredi_r(m, n).unwrap();
                assert_eq!(r.value, brute(Pattern::Ap { m }, n), "m={m} n={n}");
                assert!(witness_is_valid(&r));
            }
        }
        for n in 2..=11 {
            for delta in 2..=n {
                for s in 0..=n - delta {
                    let r = szemeredi_grid(delta, s, n).unwrap();
                    assert_eq!(r.value, brute(Pattern::Grid { delta, s }, n), "delta={delta} s={s} n={n}");
                    assert!(witness_is_valid(&r));
                }
            }
        }
    }

    #[test]
    fn witnesses_are_maximal() {
        for n in [7usize, 9, 12, 14] {
            for m in 3..=n {
                let r = szemeredi_r(m, n).unwrap();
                for x in 0..n as u64 {
                    if !r.witness.contains(&x) {
                        let mut bigger = r.witness.clone();
                        bigger.push(x);
                        assert!(contains_ap(&bigger, n as u64, m).is_some());
                    }
                }
            }
        }
    }

    #[test]
    fn monotone_in_m() {
        for n in 1..=20 {
            let vals: Vec<usize> = (1..=n).map(|m| szemeredi_r(m, n).unwrap().value).collect();
            assert!(vals.windows(2).all(|w| w[0] <= w[1]), "n={n}: {vals:?}");
        }
    }

    #[test]
    fn grid_with_s_zero_is_coprime_ap() {
        for p in [5usize, 7, 11, 13] {
            for delta in 2..=p {
                let g = szemeredi_grid(delta, 0, p).unwrap().value;
                let a = szemeredi_r(delta - 1, p).unwrap().value;
                assert_eq!(g, a);
            }
        }
    }

    #[test]
    fn composite_nine() {
        assert_eq!(ap_bound(9).unwrap().bound, 8);
        assert!(szemeredi_r(5, 9).unwrap().wrap);
        assert!(!szemeredi_r(7, 7).unwrap().wrap);
        assert!(prop_ram_lower(9, 2).is_err());
    }

    #[test]
    fn bounds_below_table_values() {
        assert!(prop_ram_lower(7, 2).unwrap().bound <= 7);
        assert!(prop_ram_lower(17, 2).unwrap().bound <= 14);
        assert!(prop_ram_grid_lower(7, 2).unwrap().bound <= 7);
    }
}
