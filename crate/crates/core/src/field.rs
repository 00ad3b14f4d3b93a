//! The residue field `F_q = F_p[x]/(m)`.

use alloc::format;
use alloc::vec::Vec;
use smallvec::SmallVec;

use crate::arith::{self, mul_mod, pow_mod};
use crate::error::{Error, Result};
use crate::poly;

pub(crate) type Coeffs = SmallVec<[u64; 8]>;

/// An element of `F_q`, packed as `sum c_j p^j` over its coefficients in the basis `1, x, ..., x^{f-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FqElem(pub u64);

/// `F_q` with `q = p^f`, presented by a monic irreducible `m` of degree `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldDesc {
    p: u64,
    f: u32,
    q: u64,
    /// Coefficients of `m`, constant term first; length `f + 1`, last entry 1.
    modulus: Vec<u64>,
}

impl FieldDesc {
    /// Builds `F_{p^f}` using the lexicographically least monic irreducible of degree `f`
    /// (coefficient sequences compared from the constant term upward).
    /// For `f = 1` this is `m = x`.
    pub fn new(p: u64, f: u32) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if f == 0 {
            return Err(Error::InvalidParameter(
                "extension degree must be >= 1".into(),
            ));
        }
        let q = arith::checked_pow(p, f)
            .ok_or_else(|| Error::InvalidParameter(format!("{p}^{f} overflows 64 bits")))?;
        let mut digits = alloc::vec![0u64; f as usize];
        loop {
            let mut m = digits.clone();
            m.push(1);
            if poly::is_irreducible(&m, p) {
                return Ok(FieldDesc {
                    p,
                    f,
                    q,
                    modulus: m,
                });
            }
            // advance lexicographically, the constant term being the most significant position
            let mut pos = f as usize;
            loop {
                if pos == 0 {
                    return Err(Error::Inconsistent(format!(
                        "no irreducible polynomial of degree {f} over Z/{p}"
                    )));
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < p {
                    break;
                }
                digits[pos] = 0;
            }
        }
    }

    /// Builds a field from an explicit modulus, which must be monic and irreducible.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if modulus.len() < 2 || modulus.last() != Some(&1) || modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidParameter(
                "modulus must be monic of degree >= 1".into(),
            ));
        }
        if !poly::is_irreducible(&modulus, p) {
            return Err(Error::InvalidParameter("modulus is reducible".into()));
        }
        let f = (modulus.len() - 1) as u32;
        let q = arith::checked_pow(p, f)
            .ok_or_else(|| Error::InvalidParameter(format!("{p}^{f} overflows 64 bits")))?;
        Ok(FieldDesc { p, f, q, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FqElem {
        FqElem(0)
    }

    pub fn one(&self) -> FqElem {
        FqElem(1)
    }

    /// The class of `x`; equals `0` when `f = 1`, since then `m = x`.
    pub fn gen(&self) -> FqElem {
        if self.f == 1 {
            FqElem(0)
        } else {
            FqElem(self.p)
        }
    }

    pub fn from_int(&self, k: i64) -> FqElem {
        FqElem(k.rem_euclid(self.p as i64) as u64)
    }

    pub fn coeffs(&self, a: FqElem) -> Coeffs {
        let mut out = Coeffs::new();
        let mut v = a.0;
        for _ in 0..self.f {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<FqElem> {
        if coeffs.len() != self.f as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidParameter(format!(
                "F_q element needs {} residues mod {}",
                self.f, self.p
            )));
        }
        Ok(self.pack(coeffs))
    }

    pub(crate) fn pack(&self, coeffs: &[u64]) -> FqElem {
        FqElem(coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c))
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.f == 1 {
            return FqElem((a.0 + b.0) % self.p);
        }
        let (x, y) = (self.coeffs(a), self.coeffs(b));
        let s: Coeffs = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.pack(&s)
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        if self.f == 1 {
            return FqElem((self.p - a.0) % self.p);
        }
        let s: Coeffs = self
            .coeffs(a)
            .iter()
            .map(|u| (self.p - u) % self.p)
            .collect();
        self.pack(&s)
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        let p = self.p;
        if self.f == 1 {
            return FqElem(mul_mod(a.0, b.0, p));
        }
        let (x, y) = (self.coeffs(a), self.coeffs(b));
        let f = self.f as usize;
        let mut prod = [0u64; 16];
        let mut prod_vec;
        let buf: &mut [u64] = if 2 * f - 1 <= 16 {
            &mut prod[..2 * f - 1]
        } else {
            prod_vec = alloc::vec![0u64; 2 * f - 1];
            &mut prod_vec
        };
        for (i, &u) in x.iter().enumerate() {
            if u == 0 {
                continue;
            }
            for (j, &v) in y.iter().enumerate() {
                buf[i + j] = (buf[i + j] + mul_mod(u, v, p)) % p;
            }
        }
        // reduce using x^f = -(m_0 + ... + m_{f-1} x^{f-1})
        for top in (f..buf.len()).rev() {
            let c = buf[top];
            if c == 0 {
                continue;
            }
            buf[top] = 0;
            for k in 0..f {
                let sub = mul_mod(c, self.modulus[k], p);
                let idx = top - f + k;
                buf[idx] = (buf[idx] + p - sub) % p;
            }
        }
        self.pack(&buf[..f])
    }

    pub fn pow(&self, a: FqElem, mut e: u64) -> FqElem {
        let mut acc = self.one();
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn frobenius(&self, a: FqElem) -> FqElem {
        self.pow(a, self.p)
    }

    pub fn inv(&self, a: FqElem) -> Result<FqElem> {
        if a.0 == 0 {
            return Err(Error::NotInvertible);
        }
        if self.f == 1 {
            return Ok(FqElem(pow_mod(a.0, self.p - 2, self.p)));
        }
        Ok(self.pow(a, self.q - 2))
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: FqElem) -> Result<u64> {
        if a.0 == 0 {
            return Err(Error::NotInvertible);
        }
        let mut m = self.q - 1;
        for (ell, _) in arith::factorize(self.q - 1) {
            while m.is_multiple_of(ell) && self.pow(a, m / ell) == self.one() {
                m /= ell;
            }
        }
        Ok(m)
    }

    /// The least (by packed index) generator of `F_q^x`.
    pub fn primitive_element(&self) -> FqElem {
        (1..self.q)
            .map(FqElem)
            .find(|&a| self.order(a) == Ok(self.q - 1))
            .expect("finite field has a primitive element")
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.q).map(FqElem)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_least_moduli() {
        assert_eq!(FieldDesc::new(5, 1).unwrap().modulus(), [0, 1]);
        assert_eq!(FieldDesc::new(2, 2).unwrap().modulus(), [1, 1, 1]);
        assert_eq!(FieldDesc::new(3, 2).unwrap().modulus(), [1, 0, 1]);
        assert_eq!(FieldDesc::new(4, 1), Err(Error::NotPrime(4)));
    }

    #[test]
    fn small_field_arithmetic() {
        let f5 = FieldDesc::new(5, 1).unwrap();
        assert_eq!(f5.inv(FqElem(2)), Ok(FqElem(3)));
        assert_eq!(f5.inv(FqElem(0)), Err(Error::NotInvertible));

        let f4 = FieldDesc::new(2, 2).unwrap();
        let x = f4.gen();
        // x * x = x + 1
        assert_eq!(f4.coeffs(f4.mul(x, x)).as_slice(), [1, 1]);

        let f9 = FieldDesc::new(3, 2).unwrap();
        let x = f9.gen();
        // x^3 = -x = 2x
        assert_eq!(f9.coeffs(f9.frobenius(x)).as_slice(), [0, 2]);
    }

    #[test]
    fn every_nonzero_element_inverts() {
        for (p, f) in [(2, 3), (3, 2), (5, 2), (7, 1)] {
            let fd = FieldDesc::new(p, f).unwrap();
            for a in fd.elements().skip(1) {
                assert_eq!(fd.mul(a, fd.inv(a).unwrap()), fd.one());
            }
            let z = fd.primitive_element();
            assert_eq!(fd.order(z).unwrap(), fd.q() - 1);
        }
    }
}
