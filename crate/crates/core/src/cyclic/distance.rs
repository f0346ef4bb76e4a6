//! Minimum distance of cyclic codes.
//!
//! Two tiers:
//!
//! * exhaustive enumeration of all `q^k - 1` nonzero messages in Gray order,
//!   so each step adds one (scaled) generator row to the running codeword.
//!   Binary codewords are packed into `u64` words and weighed with
//!   `count_ones`. The message space can be split across threads; each
//!   worker seeds its segment by direct encoding.
//! * Brouwer-Zimmermann: row-reduce onto disjoint information sets and
//!   enumerate messages of growing weight `w` on each. A codeword not yet
//!   seen has weight at least `w + 1` on every information set, so after
//!   round `w` the distance is at least `N (w + 1)` for `N` sets.
//!
//! The lower end of every result is at least the Hartmann-Tzeng bound of the
//! zero set, which is itself at least the BCH bound.

use std::sync::Arc;
use std::thread;

use serde::{Deserialize, Serialize};

use super::bounds::ht_bound;
use super::CyclicCode;
use crate::gf::Fq;

/// Default cap on codeword evaluations per distance computation.
pub const DEFAULT_BUDGET: u64 = 1 << 28;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exhaustive,
    Bz,
    BchOnly,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Exhaustive => "exhaustive",
            Method::Bz => "bz",
            Method::BchOnly => "bch_only",
        }
    }
}

/// Either the exact minimum distance (`lower == upper`) or a bracket.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceResult {
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
    pub method: Method,
    /// Codewords evaluated.
    pub work: u64,
}

impl DistanceResult {
    pub fn exact_value(&self) -> Option<usize> {
        self.exact.then_some(self.lower)
    }

    fn bracket(lower: usize, upper: usize, method: Method, work: u64) -> Self {
        let lower = lower.min(upper);
        DistanceResult {
            lower,
            upper,
            exact: lower == upper,
            method,
            work,
        }
    }

    /// Bound-only result: designed distance below, Singleton above.
    pub fn from_bounds(code: &CyclicCode) -> Self {
        let lb = ht_bound(&code.zeros, code.n);
        DistanceResult::bracket(lb, code.n - code.dim + 1, Method::BchOnly, 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DistanceOptions {
    /// Maximum number of codeword evaluations.
    pub budget: u64,
    pub workers: usize,
}

impl Default for DistanceOptions {
    fn default() -> Self {
        DistanceOptions {
            budget: DEFAULT_BUDGET,
            workers: 1,
        }
    }
}

/// Minimum distance of `code`: exact when the chosen tier finishes within
/// budget, otherwise a bracket.
///
/// The exhaustive tier costs `q^dim` codewords and runs when that fits the
/// budget and is not much more than the Brouwer-Zimmermann estimate (the
/// messages needed to lift its lower bound to the lightest generator row).
pub fn min_distance(code: &CyclicCode, opts: &DistanceOptions) -> DistanceResult {
    let designed = ht_bound(&code.zeros, code.n);
    let q = code.q.q;
    let rows = code.generator_matrix();
    let space = q.checked_pow(code.dim as u32);
    let row_weight = rows.iter().map(|r| r.iter().filter(|&&c| c != 0).count()).min().unwrap_or(code.n);
    match space {
        Some(s) if s <= opts.budget && (s <= SMALL_SPACE || s / 4 <= bz_cost_estimate(code.n, code.dim, q, row_weight)) => {
            let (d, work) = exhaustive(code.field(), &rows, code.n, designed, opts.workers);
            DistanceResult::bracket(d, d, Method::Exhaustive, work)
        }
        _ => brouwer_zimmermann(code.field(), &rows, code.n, designed, opts.budget),
    }
}

// Spaces this small are always swept.
const SMALL_SPACE: u64 = 1 << 16;

/// Messages enumerated by Brouwer-Zimmermann, assuming `n / k` disjoint
/// information sets, before its lower bound reaches `target`.
fn bz_cost_estimate(n: usize, k: usize, q: u64, target: usize) -> u64 {
    let sets = (n / k.max(1)).max(1);
    let w = target.div_ceil(sets).saturating_sub(1).min(k);
    let mut total = 0u64;
    let mut binom = 1u64;
    for v in 1..=w {
        binom = binom.saturating_mul((k - v + 1) as u64) / v as u64;
        let per = binom.saturating_mul((q - 1).saturating_pow(v as u32 - 1));
        total = total.saturating_add(per.saturating_mul(sets as u64));
    }
    total
}

/// Exhaustive minimum weight over all nonzero messages; stops early once a
/// codeword of weight `floor` (a known lower bound) appears.
pub fn exhaustive(field: &Arc<Fq>, rows: &[Vec<u32>], n: usize, floor: usize, workers: usize) -> (usize, u64) {
    let k = rows.len();
    if k == 0 {
        return (n + 1, 0);
    }
    let q = field.q();
    let total = q.pow(k as u32);
    let workers = if total < (1 << 16) { 1 } else { workers.max(1) };
    let chunk = (total - 1).div_ceil(workers as u64);
    let segments: Vec<(u64, u64)> = (0..workers as u64)
        .map(|w| (1 + w * chunk, (1 + (w + 1) * chunk).min(total)))
        .filter(|(s, e)| s < e)
        .collect();

    let run = |(start, end): (u64, u64)| -> (usize, u64) {
        if q == 2 && n <= 64 {
            gray_binary::<1>(&pack_rows(rows), start, end, floor)
        } else if q == 2 && n <= 128 {
            gray_binary::<2>(&pack_rows(rows), start, end, floor)
        } else if q == 2 && n <= 256 {
            gray_binary::<4>(&pack_rows(rows), start, end, floor)
        } else {
            gray_qary(field, rows, start, end, floor)
        }
    };

    let results: Vec<(usize, u64)> = if segments.len() == 1 {
        vec![run(segments[0])]
    } else {
        thread::scope(|s| {
            let handles: Vec<_> = segments.iter().map(|&seg| s.spawn(move || run(seg))).collect();
            handles.into_iter().map(|h| h.join().expect("distance worker panicked")).collect()
        })
    };
    results
        .into_iter()
        .fold((usize::MAX, 0), |(d, w), (d2, w2)| (d.min(d2), w + w2))
}

fn pack_rows<const W: usize>(rows: &[Vec<u32>]) -> Vec<[u64; W]> {
    rows.iter()
        .map(|row| {
            let mut packed = [0u64; W];
            for (j, &c) in row.iter().enumerate() {
                if c != 0 {
                    packed[j / 64] |= 1 << (j % 64);
                }
            }
            packed
        })
        .collect()
}

#[inline]
fn popcount<const W: usize>(w: &[u64; W]) -> usize {
    w.iter().map(|x| x.count_ones() as usize).sum()
}

fn gray_binary<const W: usize>(rows: &[[u64; W]], start: u64, end: u64, floor: usize) -> (usize, u64) {
    let mut cw = [0u64; W];
    let g = start ^ (start >> 1);
    for (i, row) in rows.iter().enumerate() {
        if g >> i & 1 == 1 {
            for (c, r) in cw.iter_mut().zip(row) {
                *c ^= r;
            }
        }
    }
    let mut best = popcount(&cw);
    let mut work = 1u64;
    if best <= floor {
        return (best, work);
    }
    for i in start + 1..end {
        let row = &rows[i.trailing_zeros() as usize];
        for (c, r) in cw.iter_mut().zip(row) {
            *c ^= r;
        }
        let w = popcount(&cw);
        work += 1;
        if w < best {
            best = w;
            if best <= floor {
                break;
            }
        }
    }
    (best, work)
}

// q-ary modular Gray code: message digit j is g_j = d_j - d_{j+1} (mod q)
// where d is the base-q expansion of the index. Going from index i to i + 1
// increments exactly one g_j, with j the number of trailing (q-1) digits of i.
fn gray_qary(field: &Arc<Fq>, rows: &[Vec<u32>], start: u64, end: u64, floor: usize) -> (usize, u64) {
    let q = field.q();
    let k = rows.len();
    let n = rows[0].len();
    // scaled[j][c] = c * row_j
    let scaled: Vec<Vec<Vec<u32>>> = rows
        .iter()
        .map(|row| {
            (0..q as u32)
                .map(|c| row.iter().map(|&r| field.mul(c, r)).collect())
                .collect()
        })
        .collect();
    let mut digits = vec![0u32; k + 1];
    let mut t = start;
    for d in digits.iter_mut().take(k) {
        *d = (t % q) as u32;
        t /= q;
    }
    let mut msg: Vec<u32> = (0..k)
        .map(|j| ((digits[j] as u64 + q - digits[j + 1] as u64) % q) as u32)
        .collect();
    let mut cw = vec![0u32; n];
    for (j, &m) in msg.iter().enumerate() {
        if m != 0 {
            for (c, &r) in cw.iter_mut().zip(&scaled[j][m as usize]) {
                *c = field.add(*c, r);
            }
        }
    }
    let weight = |cw: &[u32]| cw.iter().filter(|&&c| c != 0).count();
    let mut best = weight(&cw);
    let mut work = 1u64;
    if best <= floor {
        return (best, work);
    }
    let top = q as u32 - 1;
    for _ in start + 1..end {
        let j = digits.iter().take_while(|&&d| d == top).count();
        for d in digits.iter_mut().take(j) {
            *d = 0;
        }
        digits[j] += 1;
        let old = msg[j];
        let new = (old + 1) % q as u32;
        msg[j] = new;
        let delta = field.sub(new, old);
        for (c, &r) in cw.iter_mut().zip(&scaled[j][delta as usize]) {
            *c = field.add(*c, r);
        }
        let w = weight(&cw);
        work += 1;
        if w < best {
            best = w;
            if best <= floor {
                break;
            }
        }
    }
    (best, work)
}

/// Gauss-Jordan elimination choosing pivots greedily from `allowed`, in
/// order. Returns the reduced rows and the pivot columns (row `i` has a 1 in
/// column `pivots[i]` and zeros in the other pivot columns).
fn reduce_on(field: &Fq, rows: &[Vec<u32>], allowed: &[usize]) -> (Vec<Vec<u32>>, Vec<usize>) {
    let mut m = rows.to_vec();
    let k = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for &col in allowed {
        if r == k {
            break;
        }
        let Some(pr) = (r..k).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = field.inv(m[r][col]).expect("pivot is nonzero");
        for x in m[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[col] == 0 {
                continue;
            }
            let f = row[col];
            for (x, &p) in row.iter_mut().zip(&pivot_row) {
                *x = field.sub(*x, field.mul(f, p));
            }
        }
        pivots.push(col);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

/// Full-rank matrices on pairwise disjoint information sets.
pub(crate) fn disjoint_information_sets(field: &Fq, rows: &[Vec<u32>], n: usize) -> Vec<Vec<Vec<u32>>> {
    let k = rows.len();
    let mut used = vec![false; n];
    let mut sets = Vec::new();
    loop {
        let allowed: Vec<usize> = (0..n).filter(|&c| !used[c]).collect();
        if allowed.len() < k {
            break;
        }
        let (m, piv) = reduce_on(field, rows, &allowed);
        if piv.len() < k {
            break;
        }
        for &c in &piv {
            used[c] = true;
        }
        sets.push(m);
    }
    sets
}

trait WordOps {
    type Word: Clone;
    fn zero(&self) -> Self::Word;
    /// `acc + coef * row`
    fn add_row(&self, acc: &Self::Word, row: usize, coef: u32) -> Self::Word;
    fn weight(&self, w: &Self::Word) -> usize;
}

struct BinaryWords {
    rows: Vec<Vec<u64>>,
    words: usize,
}

impl WordOps for BinaryWords {
    type Word = Vec<u64>;
    fn zero(&self) -> Vec<u64> {
        vec![0; self.words]
    }
    fn add_row(&self, acc: &Vec<u64>, row: usize, _coef: u32) -> Vec<u64> {
        acc.iter().zip(&self.rows[row]).map(|(a, b)| a ^ b).collect()
    }
    fn weight(&self, w: &Vec<u64>) -> usize {
        w.iter().map(|x| x.count_ones() as usize).sum()
    }
}

struct QaryWords {
    field: Arc<Fq>,
    // scaled[row][coef]
    scaled: Vec<Vec<Vec<u32>>>,
}

impl WordOps for QaryWords {
    type Word = Vec<u32>;
    fn zero(&self) -> Vec<u32> {
        vec![0; self.scaled[0][0].len()]
    }
    fn add_row(&self, acc: &Vec<u32>, row: usize, coef: u32) -> Vec<u32> {
        acc.iter()
            .zip(&self.scaled[row][coef as usize])
            .map(|(&a, &b)| self.field.add(a, b))
            .collect()
    }
    fn weight(&self, w: &Vec<u32>) -> usize {
        w.iter().filter(|&&c| c != 0).count()
    }
}

enum SetOps {
    Binary(BinaryWords),
    Qary(QaryWords),
}

impl SetOps {
    fn new(field: &Arc<Fq>, m: &[Vec<u32>], n: usize) -> SetOps {
        if field.q() == 2 {
            let words = n.div_ceil(64);
            let rows = m
                .iter()
                .map(|row| {
                    let mut p = vec![0u64; words];
                    for (j, &c) in row.iter().enumerate() {
                        if c != 0 {
                            p[j / 64] |= 1 << (j % 64);
                        }
                    }
                    p
                })
                .collect();
            SetOps::Binary(BinaryWords { rows, words })
        } else {
            let scaled = m
                .iter()
                .map(|row| {
                    (0..field.q() as u32)
                        .map(|c| row.iter().map(|&r| field.mul(c, r)).collect())
                        .collect()
                })
                .collect();
            SetOps::Qary(QaryWords { field: Arc::clone(field), scaled })
        }
    }

    fn enumerate(&self, k: usize, q: u32, w: usize, st: &mut Search) {
        match self {
            SetOps::Binary(ops) => enumerate_weight(ops, k, q, w, st),
            SetOps::Qary(ops) => enumerate_weight(ops, k, q, w, st),
        }
    }
}

struct Search {
    upper: usize,
    work: u64,
    budget: u64,
    stop_at: usize,
}

impl Search {
    fn exhausted(&self) -> bool {
        self.work >= self.budget
    }
}

// All messages of Hamming weight exactly `w` whose first nonzero symbol is 1
// (codeword weights are invariant under scaling).
fn enumerate_weight<O: WordOps>(ops: &O, k: usize, q: u32, w: usize, st: &mut Search) {
    fn rec<O: WordOps>(ops: &O, k: usize, q: u32, left: usize, from: usize, first: bool, acc: &O::Word, st: &mut Search) {
        if left == 0 {
            st.work += 1;
            let wt = ops.weight(acc);
            if wt > 0 && wt < st.upper {
                st.upper = wt;
            }
            return;
        }
        for i in from..=(k - left) {
            let coefs = if first { 1..2 } else { 1..q };
            for c in coefs {
                let next = ops.add_row(acc, i, c);
                rec(ops, k, q, left - 1, i + 1, false, &next, st);
                if st.exhausted() || st.upper <= st.stop_at {
                    return;
                }
            }
        }
    }
    if w == 0 || w > k {
        return;
    }
    let z = ops.zero();
    rec(ops, k, q, w, 0, true, &z, st);
}

/// Brouwer-Zimmermann minimum distance with a work budget.
pub fn brouwer_zimmermann(field: &Arc<Fq>, rows: &[Vec<u32>], n: usize, designed: usize, budget: u64) -> DistanceResult {
    let k = rows.len();
    let q = field.q() as u32;
    let sets = disjoint_information_sets(field, rows, n);
    let n_sets = sets.len();
    // Each generator row is a codeword.
    let mut upper = rows
        .iter()
        .map(|r| r.iter().filter(|&&c| c != 0).count())
        .min()
        .unwrap_or(n + 1);
    let mut st = Search {
        upper,
        work: k as u64,
        budget,
        stop_at: designed,
    };
    let mut lower = designed;
    let bracket = |lower: usize, upper: usize, work: u64| DistanceResult::bracket(lower, upper, Method::Bz, work);
    if lower >= upper {
        return bracket(upper, upper, st.work);
    }
    let enumerators: Vec<SetOps> = sets.iter().map(|m| SetOps::new(field, m, n)).collect();
    for w in 1..=k {
        for e in &enumerators {
            e.enumerate(k, q, w, &mut st);
            if st.exhausted() {
                upper = st.upper;
                return bracket(lower.max(designed), upper, st.work);
            }
            if st.upper <= lower {
                return bracket(st.upper, st.upper, st.work);
            }
        }
        upper = st.upper;
        lower = lower.max((n_sets * (w + 1)).min(upper));
        if lower >= upper {
            return bracket(upper, upper, st.work);
        }
    }
    // Every message has been enumerated on the first set.
    bracket(st.upper, st.upper, st.work)
}

#[cfg(test)]
pub(crate) mod oracle {
    use super::*;

    /// Re-encodes every nonzero message from scratch.
    pub fn naive_min_distance(code: &CyclicCode) -> usize {
        let rows = code.generator_matrix();
        let q = code.q.q;
        let k = code.dim;
        let mut best = usize::MAX;
        for idx in 1..q.pow(k as u32) {
            let mut t = idx;
            let msg: Vec<u32> = (0..k)
                .map(|_| {
                    let d = (t % q) as u32;
                    t /= q;
                    d
                })
                .collect();
            let cw = code.encode(&rows, &msg);
            best = best.min(cw.iter().filter(|&&c| c != 0).count());
        }
        best
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::{bch_bound, enumerate_codes};
    use crate::polyring::FPoly;

    fn code(n: usize, q: u64, gen: &str) -> CyclicCode {
        let f = Fq::get(q).unwrap();
        CyclicCode::from_generator(n, &FPoly::parse(&f, gen).unwrap()).unwrap()
    }

    #[test]
    fn hamming_7_4_3() {
        let c = code(7, 2, "1101");
        let r = min_distance(&c, &DistanceOptions::default());
        assert_eq!(r.exact_value(), Some(3));
        assert_eq!(r.method, Method::Exhaustive);
        assert_eq!(oracle::naive_min_distance(&c), 3);
    }

    #[test]
    fn repetition_code() {
        for n in [3usize, 7, 9, 15] {
            let codes = enumerate_codes(n, 2).unwrap();
            let rep = codes.iter().find(|c| c.dim == 1).unwrap();
            assert_eq!(min_distance(rep, &DistanceOptions::default()).exact_value(), Some(n));
        }
    }

    #[test]
    fn qr17() {
        let codes = enumerate_codes(17, 2).unwrap();
        for c in codes.iter().filter(|c| c.dim == 9) {
            assert_eq!(oracle::naive_min_distance(c), 5);
            let r = min_distance(c, &DistanceOptions::default());
            assert_eq!(r.exact_value(), Some(5));
            assert!(r.lower >= bch_bound(&c.zeros, 17));
        }
    }

    #[test]
    fn gray_matches_naive_oracle() {
        for (n, q) in [(7usize, 2u64), (9, 2), (15, 2), (17, 2), (21, 2), (8, 3), (11, 3), (13, 3), (5, 4), (7, 4), (6, 5), (13, 4)] {
            for c in enumerate_codes(n, q).unwrap() {
                if q.pow(c.dim as u32) > 1 << 16 {
                    continue;
                }
                let want = oracle::naive_min_distance(&c);
                let rows = c.generator_matrix();
                // floor = 0 forces a full sweep
                for workers in [1usize, 3] {
                    let (d, work) = exhaustive(c.field(), &rows, n, 0, workers);
                    assert_eq!(d, want, "n={n} q={q} gen={}", c.gen);
                    assert_eq!(work, q.pow(c.dim as u32) - 1);
                }
                let bz = brouwer_zimmermann(c.field(), &rows, n, 1, u64::MAX);
                assert_eq!(bz.exact_value(), Some(want), "bz n={n} q={q} gen={}", c.gen);
            }
        }
    }

    #[test]
    fn brouwer_zimmermann_on_larger_codes() {
        // Both tiers agree on every binary code of length 31 and 23.
        for n in [23usize, 31] {
            for c in enumerate_codes(n, 2).unwrap() {
                if c.dim > 22 {
                    continue;
                }
                let rows = c.generator_matrix();
                let (d, _) = exhaustive(c.field(), &rows, n, 0, 4);
                let bz = brouwer_zimmermann(c.field(), &rows, n, 1, u64::MAX);
                assert_eq!(bz.exact_value(), Some(d), "n={n} gen={}", c.gen);
            }
        }
    }

    #[test]
    fn budget_exhaustion_returns_bracket() {
        let c = code(23, 2, "110001110101");
        assert_eq!(c.dim, 12);
        let r = min_distance(&c, &DistanceOptions { budget: 8, workers: 1 });
        assert_eq!(r.method, Method::Bz);
        assert!(r.lower <= 7 && 7 <= r.upper);
        assert!(r.lower >= bch_bound(&c.zeros, 23));
        let full = min_distance(&c, &DistanceOptions::default());
        assert_eq!(full.exact_value(), Some(7));
    }

    #[test]
    fn worker_count_does_not_change_distance() {
        for c in enumerate_codes(31, 2).unwrap().iter().filter(|c| c.dim <= 21) {
            let a = min_distance(c, &DistanceOptions { budget: 1 << 28, workers: 1 });
            let b = min_distance(c, &DistanceOptions { budget: 1 << 28, workers: 4 });
            assert_eq!(a.exact_value(), b.exact_value());
        }
    }
}
