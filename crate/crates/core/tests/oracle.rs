//! Library minimum distances against an independent brute-force oracle.

mod common;

use common::{gcd, min_distance_oracle};
use uplab::cyclic::{bch_bound, enumerate_codes, ht_bound, min_distance, DistanceOptions};

fn sweep(q: u64, max_n: usize) {
    let opts = DistanceOptions::default();
    for n in 2..=max_n {
        if gcd(n as u64, q) != 1 {
            continue;
        }
        for code in enumerate_codes(n, q).unwrap() {
            let d = min_distance_oracle(&code);
            let lib = min_distance(&code, &opts);
            let tag = format!("q={q} n={n} g={}", code.gen_string());
            assert!(lib.exact, "{tag}: library gave [{}, {}]", lib.lower, lib.upper);
            assert_eq!(lib.lower, d, "{tag}");
            let ht = ht_bound(&code.zeros, n);
            assert!(bch_bound(&code.zeros, n) <= ht && ht <= d, "{tag}");
        }
    }
}

#[test]
fn binary_codes() {
    sweep(2, 23);
}

#[test]
fn ternary_codes() {
    sweep(3, 17);
}

#[test]
fn quaternary_codes() {
    sweep(4, 15);
}

#[test]
fn quinary_codes() {
    sweep(5, 12);
}
