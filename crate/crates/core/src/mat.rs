//! Square matrices over a [`RingDesc`].

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::field::FqElem;
use crate::ring::{RElem, RingDesc};

/// An `n x n` matrix, row-major. The ring is supplied by the [`MatSpace`] operating on it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    n: usize,
    entries: Vec<RElem>,
}

impl Mat {
    pub fn from_entries(n: usize, entries: Vec<RElem>) -> Result<Self> {
        if n == 0 || entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: entries.len(),
            });
        }
        Ok(Mat { n, entries })
    }

    pub fn from_rows(rows: &[Vec<RElem>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|row| row.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        Mat::from_entries(n, rows.concat())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[RElem] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> RElem {
        self.entries[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: RElem) {
        self.entries[i * self.n + j] = v;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[RElem]> {
        self.entries.chunks(self.n)
    }

    pub fn is_upper_unitriangular(&self, ring: &RingDesc) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| match i.cmp(&j) {
                core::cmp::Ordering::Equal => self.get(i, j) == ring.one(),
                core::cmp::Ordering::Greater => self.get(i, j) == ring.zero(),
                core::cmp::Ordering::Less => true,
            })
        })
    }
}

/// Matrix arithmetic in `M_n(O_r)`.
#[derive(Debug, Clone, Copy)]
pub struct MatSpace<'a> {
    ring: &'a RingDesc,
    n: usize,
}

impl<'a> MatSpace<'a> {
    pub fn new(ring: &'a RingDesc, n: usize) -> Self {
        MatSpace { ring, n }
    }

    pub fn ring(&self) -> &'a RingDesc {
        self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check(&self, a: &Mat) -> Result<()> {
        if a.n != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: a.n,
            });
        }
        Ok(())
    }

    pub fn zero(&self) -> Mat {
        Mat {
            n: self.n,
            entries: vec![self.ring.zero(); self.n * self.n],
        }
    }

    pub fn identity(&self) -> Mat {
        let mut m = self.zero();
        for i in 0..self.n {
            m.set(i, i, self.ring.one());
        }
        m
    }

    /// `E_ij`: one in position `(i, j)`, zero elsewhere.
    pub fn unit(&self, i: usize, j: usize) -> Mat {
        let mut m = self.zero();
        m.set(i, j, self.ring.one());
        m
    }

    /// The transvection `I + u E_ij` (`i != j`).
    pub fn transvection(&self, i: usize, j: usize, u: RElem) -> Mat {
        let mut m = self.identity();
        m.set(i, j, u);
        m
    }

    pub fn diag(&self, d: &[RElem]) -> Result<Mat> {
        if d.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: d.len(),
            });
        }
        let mut m = self.zero();
        for (i, &x) in d.iter().enumerate() {
            m.set(i, i, x);
        }
        Ok(m)
    }

    pub fn add(&self, a: &Mat, b: &Mat) -> Result<Mat> {
        self.check(a)?;
        self.check(b)?;
        let entries = a
            .entries
            .iter()
            .zip(&b.entries)
            .map(|(&x, &y)| self.ring.add(x, y))
            .collect();
        Ok(Mat { n: self.n, entries })
    }

    pub fn sub(&self, a: &Mat, b: &Mat) -> Result<Mat> {
        self.check(a)?;
        self.check(b)?;
        let entries = a
            .entries
            .iter()
            .zip(&b.entries)
            .map(|(&x, &y)| self.ring.sub(x, y))
            .collect();
        Ok(Mat { n: self.n, entries })
    }

    pub fn scale(&self, c: RElem, a: &Mat) -> Mat {
        Mat {
            n: a.n,
            entries: a.entries.iter().map(|&x| self.ring.mul(c, x)).collect(),
        }
    }

    pub fn mul(&self, a: &Mat, b: &Mat) -> Result<Mat> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub(crate) fn mul_unchecked(&self, a: &Mat, b: &Mat) -> Mat {
        let n = self.n;
        let ring = self.ring;
        let mut out = vec![ring.zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let aik = a.entries[i * n + k];
                if aik.0 == 0 {
                    continue;
                }
                for j in 0..n {
                    let idx = i * n + j;
                    out[idx] = ring.add(out[idx], ring.mul(aik, b.entries[k * n + j]));
                }
            }
        }
        Mat { n, entries: out }
    }

    /// Binary powering; `pow(a, 0) = I`.
    pub fn pow(&self, a: &Mat, mut k: u128) -> Result<Mat> {
        self.check(a)?;
        let mut acc = self.identity();
        let mut base = a.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_unchecked(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul_unchecked(&base, &base);
            }
        }
        Ok(acc)
    }

    pub fn is_identity(&self, a: &Mat) -> bool {
        a.n == self.n
            && (0..self.n).all(|i| {
                (0..self.n).all(|j| {
                    a.get(i, j)
                        == if i == j {
                            self.ring.one()
                        } else {
                            self.ring.zero()
                        }
                })
            })
    }

    /// Entrywise reduction to `M_n(O_s)`.
    pub fn reduce(&self, a: &Mat, s: u32) -> Result<Mat> {
        self.check(a)?;
        let entries = a
            .entries
            .iter()
            .map(|&x| self.ring.reduce(x, s))
            .collect::<Result<Vec<_>>>()?;
        Ok(Mat { n: self.n, entries })
    }

    /// Entrywise residue in `M_n(F_q)`.
    pub fn residue(&self, a: &Mat) -> Vec<FqElem> {
        a.entries.iter().map(|&x| self.ring.residue(x)).collect()
    }

    /// Exact determinant: Leibniz expansion for `n <= 4`, otherwise elimination with
    /// minimal-valuation pivots.
    pub fn det(&self, a: &Mat) -> Result<RElem> {
        self.check(a)?;
        if self.n <= 4 {
            Ok(self.det_leibniz(a))
        } else {
            Ok(self.det_elimination(a))
        }
    }

    pub(crate) fn det_leibniz(&self, a: &Mat) -> RElem {
        let n = self.n;
        let ring = self.ring;
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = ring.zero();
        // Heap's algorithm; each step is one transposition, so the sign alternates.
        let mut c = vec![0usize; n];
        let mut sign_positive = true;
        let term = |perm: &[usize]| {
            perm.iter()
                .enumerate()
                .fold(ring.one(), |acc, (i, &j)| ring.mul(acc, a.get(i, j)))
        };
        total = ring.add(total, term(&perm));
        let mut i = 1;
        while i < n {
            if c[i] < i {
                if i % 2 == 0 {
                    perm.swap(0, i);
                } else {
                    perm.swap(c[i], i);
                }
                sign_positive = !sign_positive;
                let t = term(&perm);
                total = if sign_positive {
                    ring.add(total, t)
                } else {
                    ring.sub(total, t)
                };
                c[i] += 1;
                i = 1;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        total
    }

    pub(crate) fn det_elimination(&self, a: &Mat) -> RElem {
        let n = self.n;
        let ring = self.ring;
        let mut m = a.clone();
        let mut det = ring.one();
        let mut negate = false;
        for col in 0..n {
            // pivot: entry of least valuation in the remaining block
            let mut best: Option<(u32, usize, usize)> = None;
            for i in col..n {
                for j in col..n {
                    let v = ring.valuation(m.get(i, j));
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
            let (v, pi, pj) = best.expect("non-empty block");
            if v == ring.r() {
                return ring.zero();
            }
            if pi != col {
                for j in 0..n {
                    let t = m.get(pi, j);
                    m.set(pi, j, m.get(col, j));
                    m.set(col, j, t);
                }
                negate = !negate;
            }
            if pj != col {
                for i in 0..n {
                    let t = m.get(i, pj);
                    m.set(i, pj, m.get(i, col));
                    m.set(i, col, t);
                }
                negate = !negate;
            }
            let pivot = m.get(col, col);
            det = ring.mul(det, pivot);
            for i in col + 1..n {
                let e = m.get(i, col);
                if e.0 == 0 {
                    continue;
                }
                let factor = ring
                    .div_exact(e, pivot)
                    .expect("pivot has minimal valuation");
                for j in col..n {
                    let updated = ring.sub(m.get(i, j), ring.mul(factor, m.get(col, j)));
                    m.set(i, j, updated);
                }
            }
        }
        if negate {
            ring.neg(det)
        } else {
            det
        }
    }

    /// Inverse over `O_r`: invert the residue matrix over `F_q`, then Newton-lift
    /// `X <- X(2I - aX)`, doubling the precision each step.
    pub fn inverse(&self, a: &Mat) -> Result<Mat> {
        self.check(a)?;
        let residue_inv =
            invert_over_field(self.ring, self.n, &self.residue(a)).ok_or(Error::NotMember)?;
        let mut x = Mat {
            n: self.n,
            entries: residue_inv.into_iter().map(|c| self.ring.lift(c)).collect(),
        };
        let two_i = self.scale(self.ring.from_int(2), &self.identity());
        let mut precision = 1;
        while precision < self.ring.r() {
            let ax = self.mul_unchecked(a, &x);
            x = self.mul_unchecked(&x, &self.sub(&two_i, &ax)?);
            precision *= 2;
        }
        if !self.is_identity(&self.mul_unchecked(a, &x)) {
            return Err(Error::Inconsistent("Newton lift did not converge".into()));
        }
        Ok(x)
    }
}

/// Gauss-Jordan inversion over the residue field; `None` if singular.
fn invert_over_field(ring: &RingDesc, n: usize, m: &[FqElem]) -> Option<Vec<FqElem>> {
    let field = ring.field();
    let mut a = m.to_vec();
    let mut inv = vec![field.zero(); n * n];
    for i in 0..n {
        inv[i * n + i] = field.one();
    }
    for col in 0..n {
        let pivot_row = (col..n).find(|&i| a[i * n + col].0 != 0)?;
        if pivot_row != col {
            for j in 0..n {
                a.swap(pivot_row * n + j, col * n + j);
                inv.swap(pivot_row * n + j, col * n + j);
            }
        }
        let scale = field.inv(a[col * n + col]).ok()?;
        for j in 0..n {
            a[col * n + j] = field.mul(a[col * n + j], scale);
            inv[col * n + j] = field.mul(inv[col * n + j], scale);
        }
        for i in 0..n {
            if i == col || a[i * n + col].0 == 0 {
                continue;
            }
            let factor = a[i * n + col];
            for j in 0..n {
                a[i * n + j] = field.sub(a[i * n + j], field.mul(factor, a[col * n + j]));
                inv[i * n + j] = field.sub(inv[i * n + j], field.mul(factor, inv[col * n + j]));
            }
        }
    }
    Some(inv)
}
