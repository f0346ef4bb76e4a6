//! Integer helpers on `u64`: primality, factorization, multiplicative orders.

use crate::error::{domain, Result};

const TRIAL_LIMIT: u64 = 1_000_000;

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// Brent's variant of Pollard rho. `n` must be odd and composite.
fn rho(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut g) = (2u64, 2u64, 1u64);
        let mut q = 1u64;
        let mut r = 1u64;
        let mut ys = 2u64;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..(128.min(r - k)) {
                    y = f(y);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = gcd(q, n);
                k += 128;
            }
            r <<= 1;
        }
        if g == n {
            loop {
                ys = f(ys);
                g = gcd(x.abs_diff(ys), n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
        c += 1;
    }
}

fn split_into(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = rho(n);
    split_into(d, out);
    split_into(n / d, out);
}

/// Prime factorization as sorted `(prime, exponent)` pairs. `factor(1)` is empty.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0, "factor(0)");
    let mut primes = Vec::new();
    let mut d = 2u64;
    while d <= TRIAL_LIMIT && d * d <= n {
        while n.is_multiple_of(d) {
            primes.push(d);
            n /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    split_into(n, &mut primes);
    primes.sort_unstable();
    let mut out: Vec<(u64, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factor(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Smallest `t >= 1` with `pred(t)` among divisors of `group_order`, given
/// that `pred(group_order)` holds and `pred` is closed under taking multiples.
pub(crate) fn descend_order(
    group_order: u64,
    factors: &[(u64, u32)],
    mut is_identity: impl FnMut(u64) -> bool,
) -> u64 {
    let mut t = group_order;
    for &(p, _) in factors {
        while t.is_multiple_of(p) && is_identity(t / p) {
            t /= p;
        }
    }
    t
}

/// Multiplicative order of `q` in `(Z/nZ)*`.
pub fn ord_mod(q: u64, n: u64) -> Result<u64> {
    if n < 2 {
        return domain(format!("ord_mod needs n >= 2, got {n}"));
    }
    if gcd(q % n, n) != 1 {
        return domain(format!("gcd({q}, {n}) != 1"));
    }
    let phi = euler_phi(n);
    let fs = factor(phi);
    Ok(descend_order(phi, &fs, |t| pow_mod(q, t, n) == 1))
}

/// Whether `q` generates `(Z/nZ)*`.
pub fn is_primitive(q: u64, n: u64) -> Result<bool> {
    Ok(ord_mod(q, n)? == euler_phi(n))
}

/// Ascending list of primes in `[lo, hi]`.
pub fn primes_between(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(2)..=hi).filter(|&p| is_prime(p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_orders() {
        assert_eq!(ord_mod(2, 7).unwrap(), 3);
        assert_eq!(ord_mod(2, 31).unwrap(), 5);
        assert_eq!(ord_mod(2, 5).unwrap(), 4);
        assert!(is_primitive(2, 5).unwrap());
        assert!(!is_primitive(2, 7).unwrap());
        assert_eq!(ord_mod(2, 17).unwrap(), 8);
        assert_eq!(ord_mod(2, 43).unwrap(), 14);
        assert!(ord_mod(2, 6).is_err());
        assert!(ord_mod(3, 1).is_err());
    }

    #[test]
    fn order_matches_brute_force() {
        for n in 2..200u64 {
            for q in 1..n {
                if gcd(q, n) != 1 {
                    continue;
                }
                let mut t = 1;
                let mut x = q % n;
                while x != 1 {
                    x = x * q % n;
                    t += 1;
                }
                assert_eq!(ord_mod(q, n).unwrap(), t, "q={q} n={n}");
            }
        }
    }

    #[test]
    fn factorization_roundtrip() {
        for n in [
            1u64,
            2,
            97,
            (1 << 23) - 1,
            (1 << 48) - 1,
            3u64.pow(30) - 1,
            (1 << 61) - 1,
            u64::MAX,
            1_000_003 * 1_000_033,
        ] {
            let fs = factor(n);
            let back = fs.iter().fold(1u64, |acc, &(p, e)| acc * p.pow(e));
            assert_eq!(back, n);
            assert!(fs.iter().all(|&(p, _)| is_prime(p)));
        }
        assert_eq!(factor((1 << 23) - 1), vec![(47, 1), (178481, 1)]);
    }

    #[test]
    fn primality_agrees_with_sieve() {
        let lim = 5000usize;
        let mut sieve = vec![true; lim];
        sieve[0] = false;
        sieve[1] = false;
        for i in 2..lim {
            if sieve[i] {
                for j in (i * i..lim).step_by(i) {
                    sieve[j] = false;
                }
            }
        }
        for (i, &p) in sieve.iter().enumerate() {
            assert_eq!(is_prime(i as u64), p, "{i}");
        }
    }
}
