//! Designed-distance bounds read off the zero set of a cyclic code.

use crate::gf::gcd;

fn membership(zeros: &[u64], n: usize) -> Vec<bool> {
    let mut inz = vec![false; n];
    for &z in zeros {
        inz[(z % n as u64) as usize] = true;
    }
    inz
}

// run[a] = largest L such that a, a+b, ..., a+(L-1)b all lie in the set,
// capped at n. `b` must be coprime to n so the stride orbit is one cycle.
fn stride_runs(inz: &[bool], b: usize) -> Vec<usize> {
    let n = inz.len();
    let mut run = vec![0usize; n];
    let Some(gap) = inz.iter().position(|&x| !x) else {
        return vec![n; n];
    };
    let mut pos = gap;
    for _ in 1..n {
        let prev = (pos + n - b) % n;
        run[prev] = if inz[prev] { run[pos] + 1 } else { 0 };
        pos = prev;
    }
    run
}

fn units(n: usize) -> impl Iterator<Item = usize> {
    (1..n.max(2)).filter(move |&b| gcd(b as u64, n as u64) == 1)
}

/// BCH bound maximized over all primitive `n`-th roots `zeta^b`: the largest
/// `delta` such that `{a, a+b, ..., a+(delta-2)b} ⊆ zeros` for some `a` and
/// some `b` coprime to `n`. Returns 1 for an empty zero set.
pub fn bch_bound(zeros: &[u64], n: usize) -> usize {
    if zeros.is_empty() || n == 0 {
        return 1;
    }
    let inz = membership(zeros, n);
    if n == 1 {
        return 2;
    }
    units(n)
        .map(|b| stride_runs(&inz, b).into_iter().max().unwrap_or(0) + 1)
        .max()
        .unwrap_or(1)
}

/// Hartmann-Tzeng bound: the largest `delta + s` such that
/// `{a + kb + rc : 0 <= k <= delta-2, 0 <= r <= s} ⊆ zeros` with `b`, `c`
/// coprime to `n` and `delta >= 2`. Never below [`bch_bound`].
pub fn ht_bound(zeros: &[u64], n: usize) -> usize {
    if zeros.is_empty() || n == 0 {
        return 1;
    }
    if n == 1 {
        return 2;
    }
    let inz = membership(zeros, n);
    let strides: Vec<usize> = units(n).collect();
    let mut best = 1;
    for &b in &strides {
        let run = stride_runs(&inz, b);
        for &c in &strides {
            for a in 0..n {
                let mut cur = usize::MAX;
                for r in 0..n {
                    cur = cur.min(run[(a + r * c) % n]);
                    if cur == 0 || cur + 1 + (n - 1 - r) + r <= best {
                        break;
                    }
                    best = best.max(cur + 1 + r);
                }
            }
        }
    }
    best
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclic::enumerate_codes;
    use crate::polyring::cyclotomic_cosets;

    #[test]
    fn bch_examples() {
        assert!(bch_bound(&[1, 2, 4], 7) >= 3);
        assert_eq!(bch_bound(&[1, 2, 4], 7), oracle::bch_brute(&[1, 2, 4], 7));
        assert_eq!(bch_bound(&[], 7), 1);
        let all_but_zero: Vec<u64> = (1..13).collect();
        assert_eq!(bch_bound(&all_but_zero, 13), 13);
    }

    #[test]
    fn ht_examples() {
        let qr17 = cyclotomic_cosets(17, 2).unwrap().cosets[1].clone();
        assert_eq!(qr17, vec![1, 2, 4, 8, 9, 13, 15, 16]);
        assert_eq!(oracle::ht_brute(&qr17, 17), 5);
        assert_eq!(ht_bound(&qr17, 17), 5);
        assert!(ht_bound(&qr17, 17) >= bch_bound(&qr17, 17));
        assert_eq!(ht_bound(&[], 17), 1);
    }

    #[test]
    fn fast_bounds_match_literal_search() {
        for (n, q) in [(7usize, 2u64), (9, 2), (15, 2), (17, 2), (13, 3), (11, 3), (21, 2), (8, 3), (10, 3)] {
            for c in enumerate_codes(n, q).unwrap() {
                assert_eq!(bch_bound(&c.zeros, n), oracle::bch_brute(&c.zeros, n), "n={n} {:?}", c.zeros);
                assert_eq!(ht_bound(&c.zeros, n), oracle::ht_brute(&c.zeros, n), "n={n} {:?}", c.zeros);
            }
        }
    }
}
