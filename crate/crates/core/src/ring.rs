//! Truncated discrete valuation rings with residue field `F_q`.
//!
//! Two kinds are supported:
//!
//! * [`RingKind::Poly`]: `F_q[t]/t^r`, uniformizer `t`, characteristic `p`.
//! * [`RingKind::Witt`]: the Witt vectors `W_r(F_q)`, realised as the Galois ring
//!   `GR(p^r, f) = (Z/p^r)[x]/(mhat)` with `mhat` a monic lift of the residue-field
//!   modulus; uniformizer `p`, characteristic `p^r`.
//!
//! Every element is stored as a packed index in `0..q^r` ([`RElem`]), which is a bijective
//! image of its canonical coefficient form:
//!
//! * Poly: `sum_i fq(c_i) * q^i` over the `t`-coefficients `c_0, ..., c_{r-1}`.
//! * Witt: `sum_j c_j * (p^r)^j` over the `x`-coefficients `c_0, ..., c_{f-1}` in `Z/p^r`.
//!
//! With these encodings reduction to `O_1` yields the same packed index as the
//! corresponding [`FqElem`].

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::arith::{self, mul_mod};
use crate::error::{Error, Result};
use crate::field::{Coeffs, FieldDesc, FqElem};

/// Rings with at most this many elements get precomputed addition and multiplication tables.
pub const TABLE_LIMIT: u64 = 256;

/// Version byte leading every canonical byte encoding.
pub const ENCODING_VERSION: u8 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RingKind {
    /// `F_q[t]/t^r`
    Poly,
    /// `W_r(F_q)`
    Witt,
}

/// An element of `O_r` in packed form; see the module docs for the encoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RElem(pub u64);

#[derive(Debug, Clone, PartialEq, Eq)]
struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
}

/// A truncated local ring `O_r` together with everything needed to compute in it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingDesc {
    kind: RingKind,
    field: FieldDesc,
    r: u32,
    /// Witt kind: `p^r`; Poly kind: `p`.
    coeff_modulus: u64,
    /// Witt kind: monic lift of the field modulus, coefficients in `Z/p^r`. Empty for Poly.
    mhat: Vec<u64>,
    size: u64,
    tables: Option<Tables>,
}

impl RingDesc {
    pub fn new(kind: RingKind, p: u64, f: u32, r: u32) -> Result<Self> {
        Self::over_field(kind, FieldDesc::new(p, f)?, r)
    }

    pub fn over_field(kind: RingKind, field: FieldDesc, r: u32) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidParameter("ring length r must be >= 1".into()));
        }
        let overflow = || {
            Error::InvalidParameter(format!(
                "q^r = {}^({}*{}) overflows 64 bits",
                field.p(),
                field.f(),
                r
            ))
        };
        let size = arith::checked_pow(field.q(), r).ok_or_else(overflow)?;
        let (coeff_modulus, mhat) = match kind {
            RingKind::Poly => (field.p(), Vec::new()),
            RingKind::Witt => {
                let m = arith::checked_pow(field.p(), r).ok_or_else(overflow)?;
                // Any monic lift of an irreducible modulus presents GR(p^r, f); the
                // coefficientwise lift is the canonical choice here.
                (m, field.modulus().to_vec())
            }
        };
        let mut desc = RingDesc {
            kind,
            field,
            r,
            coeff_modulus,
            mhat,
            size,
            tables: None,
        };
        if size <= TABLE_LIMIT {
            desc.tables = Some(desc.build_tables());
        }
        Ok(desc)
    }

    fn build_tables(&self) -> Tables {
        let n = self.size as usize;
        let mut add = vec![0u32; n * n];
        let mut mul = vec![0u32; n * n];
        let mut neg = vec![0u32; n];
        for a in 0..n {
            neg[a] = self.neg_raw(RElem(a as u64)).0 as u32;
            for b in 0..n {
                add[a * n + b] = self.add_raw(RElem(a as u64), RElem(b as u64)).0 as u32;
                mul[a * n + b] = self.mul_raw(RElem(a as u64), RElem(b as u64)).0 as u32;
            }
        }
        Tables { add, mul, neg }
    }

    pub fn kind(&self) -> RingKind {
        self.kind
    }

    pub fn field(&self) -> &FieldDesc {
        &self.field
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn f(&self) -> u32 {
        self.field.f()
    }

    pub fn q(&self) -> u64 {
        self.field.q()
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// `|O_r| = q^r`.
    pub fn size(&self) -> u64 {
        self.size
    }

    /// Witt kind only: the lifted modulus `mhat`, constant term first.
    pub fn mhat(&self) -> &[u64] {
        &self.mhat
    }

    /// Additive order of `1`: `p^r` for Witt, `p` for Poly.
    pub fn characteristic(&self) -> u64 {
        self.coeff_modulus
    }

    pub fn elements(&self) -> impl Iterator<Item = RElem> {
        (0..self.size).map(RElem)
    }

    /// The same kind and residue field at a different length.
    pub fn truncate(&self, s: u32) -> Result<RingDesc> {
        if s == 0 || s > self.r {
            return Err(Error::LengthOutOfRange {
                requested: s,
                r: self.r,
            });
        }
        if s == self.r {
            return Ok(self.clone());
        }
        RingDesc::over_field(self.kind, self.field.clone(), s)
    }

    /// The same residue field with the other ring kind.
    pub fn companion(&self) -> Result<RingDesc> {
        let other = match self.kind {
            RingKind::Poly => RingKind::Witt,
            RingKind::Witt => RingKind::Poly,
        };
        RingDesc::over_field(other, self.field.clone(), self.r)
    }

    // ---- coefficient views -------------------------------------------------

    /// Digits of the packed index: `r` residue-field indices (Poly) or `f` integers mod `p^r` (Witt).
    fn digits(&self, a: RElem) -> Coeffs {
        let (base, len) = self.digit_shape();
        let mut out = Coeffs::new();
        let mut v = a.0;
        for _ in 0..len {
            out.push(v % base);
            v /= base;
        }
        out
    }

    fn digit_shape(&self) -> (u64, u32) {
        match self.kind {
            RingKind::Poly => (self.q(), self.r),
            RingKind::Witt => (self.coeff_modulus, self.f()),
        }
    }

    fn pack(&self, digits: &[u64]) -> RElem {
        let (base, _) = self.digit_shape();
        RElem(digits.iter().rev().fold(0, |acc, &d| acc * base + d))
    }

    /// Poly kind: the `t`-coefficients `c_0, ..., c_{r-1}`.
    pub fn poly_coeffs(&self, a: RElem) -> Vec<FqElem> {
        debug_assert_eq!(self.kind, RingKind::Poly);
        self.digits(a).into_iter().map(FqElem).collect()
    }

    /// Witt kind: the `x`-coefficients `c_0, ..., c_{f-1}` in `Z/p^r`.
    pub fn witt_coeffs(&self, a: RElem) -> Vec<u64> {
        debug_assert_eq!(self.kind, RingKind::Witt);
        self.digits(a).into_vec()
    }

    /// Builds an element from its canonical coefficient form, flattened: Poly takes `r*f`
    /// residues mod `p` (t-degree major), Witt takes `f` residues mod `p^r`.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Result<RElem> {
        match self.kind {
            RingKind::Poly => {
                let f = self.f() as usize;
                if coeffs.len() != f * self.r as usize {
                    return Err(Error::InvalidParameter(format!(
                        "expected {} coefficients",
                        f * self.r as usize
                    )));
                }
                let mut digits = Coeffs::new();
                for chunk in coeffs.chunks(f) {
                    digits.push(self.field.from_coeffs(chunk)?.0);
                }
                Ok(self.pack(&digits))
            }
            RingKind::Witt => {
                if coeffs.len() != self.f() as usize
                    || coeffs.iter().any(|&c| c >= self.coeff_modulus)
                {
                    return Err(Error::InvalidParameter(format!(
                        "expected {} residues mod {}",
                        self.f(),
                        self.coeff_modulus
                    )));
                }
                Ok(self.pack(coeffs))
            }
        }
    }

    /// Flattened canonical coefficient form, inverse of [`RingDesc::from_coeffs`].
    pub fn coeffs(&self, a: RElem) -> Vec<u64> {
        match self.kind {
            RingKind::Poly => self
                .digits(a)
                .iter()
                .flat_map(|&d| self.field.coeffs(FqElem(d)))
                .collect(),
            RingKind::Witt => self.digits(a).into_vec(),
        }
    }

    // ---- constants ---------------------------------------------------------

    pub fn zero(&self) -> RElem {
        RElem(0)
    }

    pub fn one(&self) -> RElem {
        RElem(1)
    }

    pub fn from_int(&self, k: i64) -> RElem {
        RElem(k.rem_euclid(self.coeff_modulus as i64) as u64)
    }

    /// `pi = t` (Poly) or `p` (Witt). For `r = 1` this is zero.
    pub fn uniformizer(&self) -> RElem {
        if self.r == 1 {
            return self.zero();
        }
        match self.kind {
            RingKind::Poly => RElem(self.q()),
            RingKind::Witt => RElem(self.p()),
        }
    }

    /// The class of `x`, generating `O_r` over its prime subring.
    pub fn x(&self) -> RElem {
        self.lift(self.field.gen())
    }

    pub fn pi_pow(&self, i: u32) -> RElem {
        if i >= self.r {
            return self.zero();
        }
        match self.kind {
            RingKind::Poly => RElem(self.q().pow(i)),
            RingKind::Witt => RElem(self.p().pow(i)),
        }
    }

    /// `pi * y` where `y` runs over `O_{r-1}` via its packed index `k < q^{r-1}`;
    /// a bijection from `0..q^{r-1}` onto the maximal ideal.
    pub fn pi_multiple(&self, k: u64) -> RElem {
        match self.kind {
            RingKind::Poly => RElem(k * self.q()),
            RingKind::Witt => {
                let small = self.coeff_modulus / self.p();
                let mut digits = Coeffs::new();
                let mut v = k;
                for _ in 0..self.f() {
                    digits.push((v % small) * self.p());
                    v /= small;
                }
                self.pack(&digits)
            }
        }
    }

    // ---- arithmetic ----------------------------------------------------------

    #[inline]
    pub fn add(&self, a: RElem, b: RElem) -> RElem {
        match &self.tables {
            Some(t) => RElem(t.add[(a.0 * self.size + b.0) as usize] as u64),
            None => self.add_raw(a, b),
        }
    }

    #[inline]
    pub fn mul(&self, a: RElem, b: RElem) -> RElem {
        match &self.tables {
            Some(t) => RElem(t.mul[(a.0 * self.size + b.0) as usize] as u64),
            None => self.mul_raw(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: RElem) -> RElem {
        match &self.tables {
            Some(t) => RElem(t.neg[a.0 as usize] as u64),
            None => self.neg_raw(a),
        }
    }

    pub fn sub(&self, a: RElem, b: RElem) -> RElem {
        self.add(a, self.neg(b))
    }

    /// True when an element index is a single coefficient: `Z/p^r` or `F_q` itself.
    fn single_digit(&self) -> bool {
        match self.kind {
            RingKind::Witt => self.f() == 1,
            RingKind::Poly => self.r == 1,
        }
    }

    fn add_raw(&self, a: RElem, b: RElem) -> RElem {
        if self.kind == RingKind::Witt && self.f() == 1 {
            return RElem((a.0 + b.0) % self.coeff_modulus);
        }
        if self.single_digit() {
            return RElem(self.field.add(FqElem(a.0), FqElem(b.0)).0);
        }
        let (x, y) = (self.digits(a), self.digits(b));
        let s: Coeffs = match self.kind {
            RingKind::Poly => x
                .iter()
                .zip(&y)
                .map(|(&u, &v)| self.field.add(FqElem(u), FqElem(v)).0)
                .collect(),
            RingKind::Witt => x
                .iter()
                .zip(&y)
                .map(|(&u, &v)| (u + v) % self.coeff_modulus)
                .collect(),
        };
        self.pack(&s)
    }

    fn neg_raw(&self, a: RElem) -> RElem {
        if self.kind == RingKind::Poly && self.r == 1 {
            return RElem(self.field.neg(FqElem(a.0)).0);
        }
        let s: Coeffs = match self.kind {
            RingKind::Poly => self
                .digits(a)
                .iter()
                .map(|&u| self.field.neg(FqElem(u)).0)
                .collect(),
            RingKind::Witt => self
                .digits(a)
                .iter()
                .map(|&u| (self.coeff_modulus - u) % self.coeff_modulus)
                .collect(),
        };
        self.pack(&s)
    }

    fn mul_raw(&self, a: RElem, b: RElem) -> RElem {
        match self.kind {
            RingKind::Poly if self.r == 1 => RElem(self.field.mul(FqElem(a.0), FqElem(b.0)).0),
            RingKind::Poly => {
                let (x, y) = (self.digits(a), self.digits(b));
                let r = self.r as usize;
                let mut out: Coeffs = smallvec::smallvec![0u64; r];
                for (i, &u) in x.iter().enumerate() {
                    if u == 0 {
                        continue;
                    }
                    for (j, &v) in y.iter().take(r - i).enumerate() {
                        if v == 0 {
                            continue;
                        }
                        let prod = self.field.mul(FqElem(u), FqElem(v));
                        out[i + j] = self.field.add(FqElem(out[i + j]), prod).0;
                    }
                }
                self.pack(&out)
            }
            RingKind::Witt => {
                let m = self.coeff_modulus;
                if self.f() == 1 {
                    return RElem(mul_mod(a.0, b.0, m));
                }
                let (x, y) = (self.digits(a), self.digits(b));
                let f = self.f() as usize;
                let mut buf: Coeffs = smallvec::smallvec![0u64; 2 * f - 1];
                for (i, &u) in x.iter().enumerate() {
                    if u == 0 {
                        continue;
                    }
                    for (j, &v) in y.iter().enumerate() {
                        buf[i + j] = (buf[i + j] + mul_mod(u, v, m)) % m;
                    }
                }
                for top in (f..buf.len()).rev() {
                    let c = buf[top];
                    if c == 0 {
                        continue;
                    }
                    buf[top] = 0;
                    for k in 0..f {
                        let sub = mul_mod(c, self.mhat[k], m);
                        let idx = top - f + k;
                        buf[idx] = (buf[idx] + m - sub) % m;
                    }
                }
                self.pack(&buf[..f])
            }
        }
    }

    pub fn pow(&self, a: RElem, mut e: u128) -> RElem {
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

    pub fn is_unit(&self, a: RElem) -> bool {
        self.residue(a).0 != 0
    }

    /// Inverse of a unit: invert the residue, then Newton-lift `y <- y(2 - ay)`.
    pub fn inv(&self, a: RElem) -> Result<RElem> {
        let res = self.residue(a);
        let mut y = self.lift(self.field.inv(res)?);
        let two = self.from_int(2);
        let mut precision = 1u32;
        while precision < self.r {
            y = self.mul(y, self.sub(two, self.mul(a, y)));
            precision *= 2;
        }
        debug_assert_eq!(self.mul(a, y), self.one());
        Ok(y)
    }

    /// Largest `v <= r` with `a` in `pi^v O_r`; zero has valuation `r`.
    pub fn valuation(&self, a: RElem) -> u32 {
        if a.0 == 0 {
            return self.r;
        }
        match self.kind {
            RingKind::Poly => self
                .digits(a)
                .iter()
                .position(|&d| d != 0)
                .map_or(self.r, |i| i as u32),
            RingKind::Witt => self
                .digits(a)
                .iter()
                .filter(|&&c| c != 0)
                .map(|&c| {
                    let mut v = 0;
                    let mut c = c;
                    while c % self.p() == 0 {
                        c /= self.p();
                        v += 1;
                    }
                    v
                })
                .min()
                .unwrap_or(self.r),
        }
    }

    /// Divides by `pi^v`, assuming `valuation(a) >= v`. The result is one representative
    /// `c` with `pi^v * c = a`.
    pub fn shift_down(&self, a: RElem, v: u32) -> RElem {
        match self.kind {
            RingKind::Poly => RElem(a.0 / self.q().pow(v)),
            RingKind::Witt => {
                let d = self.p().pow(v);
                let s: Coeffs = self.digits(a).iter().map(|&c| c / d).collect();
                self.pack(&s)
            }
        }
    }

    /// Some `c` with `a * c = b`, provided `valuation(a) <= valuation(b)`.
    pub fn div_exact(&self, b: RElem, a: RElem) -> Option<RElem> {
        let va = self.valuation(a);
        if va == self.r {
            return (b.0 == 0).then_some(self.zero());
        }
        if self.valuation(b) < va {
            return None;
        }
        let unit = self.shift_down(a, va);
        let quotient = self.shift_down(b, va);
        let c = self.mul(quotient, self.inv(unit).ok()?);
        debug_assert_eq!(self.mul(a, c), b);
        Some(c)
    }

    // ---- reduction, residue, lifts -----------------------------------------

    /// The image of `a` under `O_r -> O_s`, as an element of `self.truncate(s)`.
    pub fn reduce(&self, a: RElem, s: u32) -> Result<RElem> {
        if s == 0 || s > self.r {
            return Err(Error::LengthOutOfRange {
                requested: s,
                r: self.r,
            });
        }
        Ok(match self.kind {
            RingKind::Poly => RElem(a.0 % self.q().pow(s)),
            RingKind::Witt => {
                let ms = self.p().pow(s);
                let digits = self.digits(a);
                RElem(digits.iter().rev().fold(0, |acc, &c| acc * ms + c % ms))
            }
        })
    }

    /// Reduction to the residue field `O_1 = F_q`.
    pub fn residue(&self, a: RElem) -> FqElem {
        match self.kind {
            RingKind::Poly => FqElem(a.0 % self.q()),
            RingKind::Witt => {
                let p = self.p();
                FqElem(
                    self.digits(a)
                        .iter()
                        .rev()
                        .fold(0, |acc, &c| acc * p + c % p),
                )
            }
        }
    }

    /// The coefficientwise lift of a residue-field element (the constant embedding for Poly).
    pub fn lift(&self, a: FqElem) -> RElem {
        match self.kind {
            RingKind::Poly => RElem(a.0),
            RingKind::Witt => self.pack(&self.field.coeffs(a)),
        }
    }

    /// Teichmueller representative: the unique lift `u` of `a` with `u^q = u`, computed as
    /// `lift(a)^(q^(r-1))`. For Poly the constant embedding already has this property.
    pub fn teichmuller(&self, a: FqElem) -> RElem {
        match self.kind {
            RingKind::Poly => self.lift(a),
            RingKind::Witt => {
                let mut u = self.lift(a);
                for _ in 1..self.r {
                    u = self.pow(u, self.q() as u128);
                }
                u
            }
        }
    }

    /// Digits `a_0, ..., a_{r-1}` in `F_q` with `a = sum_i teichmuller(a_i) * pi^i`.
    /// For Poly kind these are the `t`-coefficients.
    pub fn witt_digits(&self, a: RElem) -> Vec<FqElem> {
        match self.kind {
            RingKind::Poly => self.poly_coeffs(a),
            RingKind::Witt => {
                let mut out = Vec::with_capacity(self.r as usize);
                let mut cur = a;
                for _ in 0..self.r {
                    let d = self.residue(cur);
                    out.push(d);
                    let rest = self.sub(cur, self.teichmuller(d));
                    cur = self.shift_down(rest, 1);
                }
                out
            }
        }
    }

    pub fn digits_to_elem(&self, digits: &[FqElem]) -> Result<RElem> {
        if digits.len() != self.r as usize || digits.iter().any(|d| d.0 >= self.q()) {
            return Err(Error::InvalidParameter(format!(
                "expected {} residue-field digits",
                self.r
            )));
        }
        Ok(digits.iter().enumerate().fold(self.zero(), |acc, (i, &d)| {
            self.add(acc, self.mul(self.teichmuller(d), self.pi_pow(i as u32)))
        }))
    }

    // ---- encodings -----------------------------------------------------------

    fn coeff_width(&self) -> usize {
        let max = self.coeff_modulus - 1;
        (((64 - max.leading_zeros()) as usize).div_ceil(8)).max(1)
    }

    /// Canonical byte encoding: a version byte, then the flattened coefficient form
    /// (see [`RingDesc::coeffs`]), each coefficient little-endian in a fixed width
    /// of `ceil(bits(modulus - 1) / 8)` bytes, where the modulus is `p` (Poly) or `p^r` (Witt).
    pub fn encode(&self, a: RElem) -> Vec<u8> {
        let w = self.coeff_width();
        let mut out = Vec::with_capacity(1 + w * self.coeffs(a).len());
        out.push(ENCODING_VERSION);
        for c in self.coeffs(a) {
            out.extend_from_slice(&c.to_le_bytes()[..w]);
        }
        out
    }

    pub fn decode(&self, bytes: &[u8]) -> Result<RElem> {
        let w = self.coeff_width();
        let count = match self.kind {
            RingKind::Poly => (self.r * self.f()) as usize,
            RingKind::Witt => self.f() as usize,
        };
        if bytes.len() != 1 + w * count || bytes[0] != ENCODING_VERSION {
            return Err(Error::InvalidParameter("malformed element encoding".into()));
        }
        let coeffs: Vec<u64> = bytes[1..]
            .chunks(w)
            .map(|chunk| {
                let mut buf = [0u8; 8];
                buf[..w].copy_from_slice(chunk);
                u64::from_le_bytes(buf)
            })
            .collect();
        self.from_coeffs(&coeffs)
    }

    /// Text form: `2 + 3*t + (1+x)*t^2` for Poly, `3 + 2*x + x^2` for Witt.
    pub fn render(&self, a: RElem) -> String {
        match self.kind {
            RingKind::Poly => {
                let terms: Vec<(String, u32)> = self
                    .poly_coeffs(a)
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| c.0 != 0)
                    .map(|(i, c)| (render_x_poly(&self.field.coeffs(c)), i as u32))
                    .collect();
                join_terms(terms, "t")
            }
            RingKind::Witt => {
                let terms: Vec<(String, u32)> = self
                    .witt_coeffs(a)
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| *c != 0)
                    .map(|(j, c)| (format!("{c}"), j as u32))
                    .collect();
                join_terms(terms, "x")
            }
        }
    }
}

fn render_x_poly(coeffs: &[u64]) -> String {
    let terms: Vec<(String, u32)> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(j, &c)| (format!("{c}"), j as u32))
        .collect();
    let multi = terms.len() > 1;
    let s = join_terms(terms, "x");
    if multi {
        format!("({})", s.replace(' ', ""))
    } else {
        s
    }
}

fn join_terms(terms: Vec<(String, u32)>, var: &str) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (coeff, power)) in terms.into_iter().enumerate() {
        if k > 0 {
            out.push_str(" + ");
        }
        let _ = match (power, coeff.as_str()) {
            (0, c) => write!(out, "{c}"),
            (1, "1") => write!(out, "{var}"),
            (1, c) => write!(out, "{c}*{var}"),
            (e, "1") => write!(out, "{var}^{e}"),
            (e, c) => write!(out, "{c}*{var}^{e}"),
        };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(p: u64, f: u32, r: u32) -> RingDesc {
        RingDesc::new(RingKind::Poly, p, f, r).unwrap()
    }

    fn witt(p: u64, f: u32, r: u32) -> RingDesc {
        RingDesc::new(RingKind::Witt, p, f, r).unwrap()
    }

    #[test]
    fn construction_examples() {
        let a = poly(5, 1, 2);
        assert_eq!(a.uniformizer(), RElem(5));
        assert_eq!(a.render(a.uniformizer()), "t");
        let b = witt(5, 1, 2);
        assert_eq!(b.size(), 25);
        assert_eq!(b.uniformizer(), RElem(5));
        let c = witt(2, 2, 2);
        assert_eq!(c.mhat(), [1, 1, 1]);
        assert_eq!(c.characteristic(), 4);
        assert_eq!(c.size(), 16);
        assert!(RingDesc::new(RingKind::Witt, 5, 1, 0).is_err());
        assert!(RingDesc::new(RingKind::Witt, 6, 1, 2).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let r = poly(5, 1, 2);
        let t = r.uniformizer();
        let a = r.add(r.one(), t);
        let b = r.sub(r.one(), t);
        assert_eq!(r.mul(a, b), r.one());

        let z25 = witt(5, 1, 2);
        assert_eq!(z25.inv(RElem(7)), Ok(RElem(18)));
        assert_eq!(z25.inv(RElem(10)), Err(Error::NotInvertible));

        let f2t4 = poly(2, 1, 4);
        let t = f2t4.uniformizer();
        assert_eq!(f2t4.mul(t, f2t4.pow(t, 3)), f2t4.zero());
    }

    #[test]
    fn valuation_and_units() {
        let z25 = witt(5, 1, 2);
        assert_eq!(z25.valuation(z25.zero()), 2);
        assert_eq!(z25.valuation(z25.mul(RElem(5), RElem(7))), 1);
        let f3t3 = poly(3, 1, 3);
        assert!(f3t3.is_unit(f3t3.add(f3t3.uniformizer(), f3t3.one())));
        assert!(!f3t3.is_unit(f3t3.uniformizer()));
    }

    #[test]
    fn reduction_examples() {
        let f3t3 = poly(3, 1, 3);
        let t = f3t3.uniformizer();
        let a = f3t3.add(f3t3.add(f3t3.one(), t), f3t3.mul(t, t));
        assert_eq!(f3t3.reduce(a, 1), Ok(RElem(1)));
        assert_eq!(f3t3.reduce(a, 3), Ok(a));
        assert!(f3t3.reduce(a, 4).is_err());
        let z25 = witt(5, 1, 2);
        assert_eq!(z25.reduce(RElem(17), 1), Ok(RElem(2)));
    }

    #[test]
    fn teichmuller_examples() {
        let z25 = witt(5, 1, 2);
        assert_eq!(z25.teichmuller(FqElem(0)), RElem(0));
        assert_eq!(z25.teichmuller(FqElem(1)), RElem(1));
        assert_eq!(z25.teichmuller(FqElem(2)), RElem(7));
        assert_eq!(z25.pow(RElem(7), 5), RElem(7));
        let z27 = witt(3, 1, 3);
        assert_eq!(z27.teichmuller(FqElem(2)), RElem(26));
    }

    #[test]
    fn digit_examples() {
        let z25 = witt(5, 1, 2);
        assert_eq!(z25.witt_digits(RElem(0)), [FqElem(0), FqElem(0)]);
        assert_eq!(z25.witt_digits(RElem(12)), [FqElem(2), FqElem(1)]);
        let f5t2 = poly(5, 1, 2);
        let a = f5t2.from_coeffs(&[2, 3]).unwrap();
        assert_eq!(f5t2.witt_digits(a), [FqElem(2), FqElem(3)]);
    }

    #[test]
    fn rendering() {
        let r = poly(3, 2, 3);
        let x = r.x();
        let a = r.add(r.from_int(2), r.mul(r.add(r.one(), x), r.pi_pow(2)));
        assert_eq!(r.render(a), "2 + (1+x)*t^2");
        let w = witt(2, 2, 3);
        let b = w.add(w.from_int(3), w.mul(w.from_int(2), w.x()));
        assert_eq!(w.render(b), "3 + 2*x");
        assert_eq!(w.render(w.zero()), "0");
    }

    #[test]
    fn byte_encoding_round_trip_and_width() {
        let w = witt(3, 2, 3);
        for a in w.elements().step_by(37) {
            let bytes = w.encode(a);
            assert_eq!(bytes.len(), 1 + 2);
            assert_eq!(w.decode(&bytes), Ok(a));
        }
        let big = witt(257, 1, 2);
        assert_eq!(big.encode(RElem(66048)), [1, 0x00, 0x02, 0x01]);
        assert!(big.decode(&[2, 0, 0, 0]).is_err());
    }

    #[test]
    fn div_exact_solves() {
        for r in [poly(2, 2, 3), witt(3, 1, 3), witt(2, 2, 3)] {
            for a in r.elements() {
                for b in r.elements().step_by(3) {
                    match r.div_exact(b, a) {
                        Some(c) => assert_eq!(r.mul(a, c), b),
                        None => assert!(r.valuation(b) < r.valuation(a)),
                    }
                }
            }
        }
    }

    #[test]
    fn pi_multiples_cover_maximal_ideal() {
        for r in [poly(3, 1, 3), witt(2, 2, 3), witt(3, 1, 2)] {
            let mut seen: Vec<RElem> = (0..r.size() / r.q()).map(|k| r.pi_multiple(k)).collect();
            seen.sort();
            seen.dedup();
            assert_eq!(seen.len() as u64, r.size() / r.q());
            assert!(seen.iter().all(|&a| !r.is_unit(a)));
        }
    }
}
