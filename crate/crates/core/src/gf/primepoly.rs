// Polynomials over a prime field F_p, coefficients low degree first.
// Used only for modulus selection; the general ring lives in `polyring`.

pub(crate) type Poly = Vec<u64>;

pub(crate) fn trim(a: &mut Poly) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    super::numtheory::pow_mod(a, p - 2, p)
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Poly {
    let mut out = vec![0; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim(&mut out);
    out
}

pub(crate) fn rem(a: &[u64], m: &[u64], p: u64) -> Poly {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        if c != 0 {
            for j in 0..=dm {
                let idx = top - dm + j;
                r[idx] = (r[idx] + p - c * m[j] % p) % p;
            }
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn mul_mod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    rem(&prod, m, p)
}

pub(crate) fn pow_mod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Poly {
    let mut acc = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(&acc, &b, m, p);
        }
        b = mul_mod(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Ben-Or irreducibility test.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let d = f.len() - 1;
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let x: Poly = vec![0, 1];
    let mut h = x.clone();
    for _ in 1..=d / 2 {
        h = pow_mod(&h, p, f, p);
        let g = gcd(&sub(&h, &x, p), f, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Smallest monic irreducible of degree `d` over F_p, where polynomials are
/// ordered by the integer `sum c_i p^i` of their lower coefficients.
pub(crate) fn smallest_irreducible(p: u64, d: u32) -> Poly {
    let mut v = 0u64;
    loop {
        let mut f = Vec::with_capacity(d as usize + 1);
        let mut t = v;
        for _ in 0..d {
            f.push(t % p);
            t /= p;
        }
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
        v += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // Brute-force oracle: f has no monic factor of degree 1..=deg/2.
    fn irreducible_by_division(f: &[u64], p: u64) -> bool {
        let d = f.len() - 1;
        for k in 1..=d / 2 {
            let count = p.pow(k as u32);
            for v in 0..count {
                let mut g = Vec::new();
                let mut t = v;
                for _ in 0..k {
                    g.push(t % p);
                    t /= p;
                }
                g.push(1);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        d >= 1
    }

    #[test]
    fn ben_or_matches_trial_division() {
        for p in [2u64, 3, 5] {
            for d in 1..=5u32 {
                for v in 0..p.pow(d) {
                    let mut f = Vec::new();
                    let mut t = v;
                    for _ in 0..d {
                        f.push(t % p);
                        t /= p;
                    }
                    f.push(1);
                    assert_eq!(is_irreducible(&f, p), irreducible_by_division(&f, p), "{f:?} p={p}");
                }
            }
        }
    }

    #[test]
    fn smallest_binary_cubic() {
        // x^3 + x + 1 has value 0b011 = 3, x^3 + x^2 + 1 has value 0b101 = 5.
        assert_eq!(smallest_irreducible(2, 3), vec![1, 1, 0, 1]);
        assert_eq!(smallest_irreducible(2, 1), vec![0, 1]);
        assert_eq!(smallest_irreducible(3, 2), vec![1, 0, 1]);
    }
}
