//! Dense univariate polynomials over `Z/p`, used to pick and validate field moduli.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{mul_mod, pow_mod};

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod_prime(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Remainder of `a` modulo `m` (`m` nonzero) over `Z/p`.
pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    trim(&mut a);
    let mut m = m.to_vec();
    trim(&mut m);
    let dm = m.len() - 1;
    let lead_inv = inv_mod_prime(m[dm], p);
    while a.len() > dm {
        let top = a.len() - 1;
        let c = mul_mod(a[top], lead_inv, p);
        if c != 0 {
            let shift = top - dm;
            for (i, &mi) in m.iter().enumerate() {
                let sub = mul_mod(c, mi, p);
                a[shift + i] = (a[shift + i] + p - sub) % p;
            }
        }
        a.pop();
        trim(&mut a);
    }
    a
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(&mut out);
    out
}

pub fn mul_rem(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    rem(&mul(a, b, p), m, p)
}

/// `base^(e)` modulo `m`, where `e = p^k` is given as a repeated Frobenius count.
pub fn frobenius_power_rem(base: &[u64], k: u32, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem(base, m, p);
    for _ in 0..k {
        acc = pow_rem(&acc, p, m, p);
    }
    acc
}

pub fn pow_rem(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = rem(&[1], m, p);
    let mut b = rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_rem(&acc, &b, m, p);
        }
        b = mul_rem(&b, &b, m, p);
        e >>= 1;
    }
    acc
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    trim(&mut out);
    out
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&lead) = a.last() {
        let li = inv_mod_prime(lead, p);
        for c in a.iter_mut() {
            *c = mul_mod(*c, li, p);
        }
    }
    a
}

/// Rabin's irreducibility test for a monic `m` of degree `f >= 1` over `Z/p`.
pub fn is_irreducible(m: &[u64], p: u64) -> bool {
    let f = m.len() - 1;
    if f == 1 {
        return true;
    }
    let x = [0u64, 1];
    let xq = frobenius_power_rem(&x, f as u32, m, p);
    if !sub(&xq, &x, p).is_empty() {
        return false;
    }
    for (ell, _) in crate::arith::factorize(f as u64) {
        let k = (f as u64 / ell) as u32;
        let xk = frobenius_power_rem(&x, k, m, p);
        let g = gcd(&sub(&xk, &x, p), m, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratics_over_f2_and_f3() {
        assert!(is_irreducible(&[1, 1, 1], 2));
        assert!(!is_irreducible(&[1, 0, 1], 2));
        assert!(is_irreducible(&[1, 0, 1], 3));
        assert!(!is_irreducible(&[2, 0, 1], 3));
    }

    #[test]
    fn cubic_and_quartic() {
        assert!(is_irreducible(&[1, 1, 0, 1], 2));
        // (x^2+x+1)^2 = x^4+x^2+1 has no roots but is reducible
        assert!(!is_irreducible(&[1, 0, 1, 0, 1], 2));
        assert!(is_irreducible(&[1, 1, 0, 0, 1], 2));
    }

    #[test]
    fn gcd_is_monic() {
        // (x+1)(x+2) and (x+1)(x+3) over Z/5
        let a = mul(&[1, 1], &[2, 1], 5);
        let b = mul(&[1, 1], &[3, 1], 5);
        assert_eq!(gcd(&a, &b, 5), [1, 1]);
    }
}
