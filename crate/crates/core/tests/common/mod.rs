#![allow(dead_code)]

use uplab::polyring::FPoly;
use uplab::{CyclicCode, Fq};

fn binom(n: usize, k: usize) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

// Is there a codeword of weight exactly `w`? Columns are the syndromes of
// x^j, so a word is a codeword iff its columns combine to zero. The first
// nonzero coefficient is fixed to 1.
fn weight_exists(f: &Fq, cols: &[Vec<u32>], w: usize) -> bool {
    fn go(f: &Fq, cols: &[Vec<u32>], start: usize, left: usize, first: bool, acc: &mut Vec<u32>) -> bool {
        if left == 0 {
            return acc.iter().all(|&x| x == 0);
        }
        for j in start..=cols.len() - left {
            let coeffs: Vec<u32> = if first { vec![1] } else { f.nonzero().collect() };
            for c in coeffs {
                for (a, &s) in acc.iter_mut().zip(&cols[j]) {
                    *a = f.add(*a, f.mul(c, s));
                }
                let found = go(f, cols, j + 1, left - 1, false, acc);
                for (a, &s) in acc.iter_mut().zip(&cols[j]) {
                    *a = f.sub(*a, f.mul(c, s));
                }
                if found {
                    return true;
                }
            }
        }
        false
    }
    let mut acc = vec![0u32; cols[0].len()];
    go(f, cols, 0, w, true, &mut acc)
}

// Minimum weight over all nonzero combinations of the rows x^i g(x).
fn enumerate_min(f: &Fq, rows: &[Vec<u32>], n: usize) -> usize {
    fn go(f: &Fq, rows: &[Vec<u32>], i: usize, acc: &mut Vec<u32>, nonzero: bool, best: &mut usize) {
        if i == rows.len() {
            if nonzero {
                *best = (*best).min(acc.iter().filter(|&&x| x != 0).count());
            }
            return;
        }
        go(f, rows, i + 1, acc, nonzero, best);
        for c in f.nonzero() {
            for (a, &r) in acc.iter_mut().zip(&rows[i]) {
                *a = f.add(*a, f.mul(c, r));
            }
            go(f, rows, i + 1, acc, true, best);
            for (a, &r) in acc.iter_mut().zip(&rows[i]) {
                *a = f.sub(*a, f.mul(c, r));
            }
        }
    }
    let mut best = n + 1;
    go(f, rows, 0, &mut vec![0; n], false, &mut best);
    best
}

/// Exact minimum distance, independent of the library's distance routines.
pub fn min_distance_oracle(code: &CyclicCode) -> usize {
    let f = code.field();
    let n = code.n;
    let k = code.dim;
    let r = n - k;
    if r == 0 {
        return 1;
    }
    let q = f.q() as u128;
    let enum_cost = q.saturating_pow(k as u32);
    let cols: Vec<Vec<u32>> = (0..n)
        .map(|j| {
            let rem = FPoly::monomial(f, j, 1).rem(&code.gen).unwrap();
            let mut v = rem.coeffs().to_vec();
            v.resize(r, 0);
            v
        })
        .collect();
    let mut spent = 0u128;
    for w in 1..=n {
        spent += binom(n, w) * (q - 1).pow(w as u32 - 1);
        if spent > enum_cost {
            break;
        }
        if weight_exists(f, &cols, w) {
            return w;
        }
    }
    let rows: Vec<Vec<u32>> = (0..k)
        .map(|i| FPoly::monomial(f, i, 1).mul(&code.gen).unwrap().to_word(n).unwrap())
        .collect();
    enumerate_min(f, &rows, n)
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
