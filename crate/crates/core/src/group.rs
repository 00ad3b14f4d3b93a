//! `GL_n` and `SL_n` over a truncated local ring: membership, orders, closed-form sizes.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::{self, ceil_log};
use crate::error::{Error, Result};
use crate::mat::{Mat, MatSpace};
use crate::ring::{RingDesc, RingKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    GL,
    SL,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::GL => "GL",
            Family::SL => "SL",
        })
    }
}

/// `G(O_r)` for `G` in `{GL_n, SL_n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDesc {
    family: Family,
    n: usize,
    ring: RingDesc,
}

impl GroupDesc {
    pub fn new(family: Family, n: usize, ring: RingDesc) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("matrix size n must be >= 1".into()));
        }
        Ok(GroupDesc { family, n, ring })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> &RingDesc {
        &self.ring
    }

    pub fn space(&self) -> MatSpace<'_> {
        MatSpace::new(&self.ring, self.n)
    }

    /// Same family and size over `O_s`.
    pub fn truncate(&self, s: u32) -> Result<GroupDesc> {
        GroupDesc::new(self.family, self.n, self.ring.truncate(s)?)
    }

    /// Same family and size over the other ring kind with the same residue field and length.
    pub fn companion(&self) -> Result<GroupDesc> {
        GroupDesc::new(self.family, self.n, self.ring.companion()?)
    }

    /// E.g. `SL_2(Z/16)`, `GL_2(F_5[t]/t^2)`, `GL_3(GR(4,2))`.
    pub fn label(&self) -> String {
        let ring = &self.ring;
        let (p, f, r) = (ring.p(), ring.f(), ring.r());
        let q = ring.q();
        let ring_name = match ring.kind() {
            RingKind::Poly if r == 1 => format!("F_{q}"),
            RingKind::Poly => format!("F_{q}[t]/t^{r}"),
            RingKind::Witt if f == 1 => format!("Z/{}", ring.characteristic()),
            RingKind::Witt => format!("GR({},{f})", p.pow(r)),
        };
        format!("{}_{}({})", self.family, self.n, ring_name)
    }

    /// Matrix dimension of the congruence kernel: `n^2` for GL, `n^2 - 1` for SL.
    pub fn kernel_dim(&self) -> u32 {
        let d = (self.n * self.n) as u32;
        match self.family {
            Family::GL => d,
            Family::SL => d - 1,
        }
    }

    /// `|G(F_q)|`.
    pub fn residue_order(&self) -> Option<u128> {
        let q = self.ring.q() as u128;
        let n = self.n as u32;
        let qn = q.checked_pow(n)?;
        let mut order: u128 = 1;
        for i in 0..n {
            order = order.checked_mul(qn - q.checked_pow(i)?)?;
        }
        match self.family {
            Family::GL => Some(order),
            Family::SL => Some(order / (q - 1)),
        }
    }

    /// `|G(O_r)| = q^{(r-1)d} |G(F_q)|`; `None` on overflow.
    pub fn order(&self) -> Option<u128> {
        let q = self.ring.q() as u128;
        let kernel = q.checked_pow((self.ring.r() - 1) * self.kernel_dim())?;
        kernel.checked_mul(self.residue_order()?)
    }

    pub fn is_member(&self, a: &Mat) -> bool {
        if a.n() != self.n {
            return false;
        }
        let Ok(det) = self.space().det(a) else {
            return false;
        };
        match self.family {
            Family::GL => self.ring.is_unit(det),
            Family::SL => det == self.ring.one(),
        }
    }

    /// A multiple of the group exponent in factored form:
    /// `exp(GL_n(F_q)) * p^{r-1}` with `exp(GL_n(F_q)) = p^{ceil(log_p n)} lcm(q^i - 1 : i <= n)`.
    pub fn exponent_multiple(&self) -> Result<Vec<(u64, u32)>> {
        let p = self.ring.p();
        let q = self.ring.q();
        let mut factored: Vec<(u64, u32)> = Vec::new();
        for i in 1..=self.n as u32 {
            let qi = q
                .checked_pow(i)
                .ok_or_else(|| Error::InvalidParameter(format!("q^{i} overflows 64 bits")))?;
            factored = arith::lcm_factored(&factored, &arith::factorize(qi - 1));
        }
        let p_exp = ceil_log(p, self.n as u64) + self.ring.r() - 1;
        if p_exp > 0 {
            factored = arith::lcm_factored(&factored, &[(p, p_exp)]);
        }
        Ok(factored)
    }

    /// Least `k >= 1` with `a^k = I`, found by peeling primes off a known multiple of the exponent.
    pub fn element_order(&self, a: &Mat) -> Result<u128> {
        if !self.is_member(a) {
            return Err(Error::NotMember);
        }
        let factored = self.exponent_multiple()?;
        let overflow = || Error::InvalidParameter("exponent multiple overflows 128 bits".into());
        let mut m: u128 = 1;
        for &(ell, e) in &factored {
            m = m
                .checked_mul((ell as u128).checked_pow(e).ok_or_else(overflow)?)
                .ok_or_else(overflow)?;
        }
        let space = self.space();
        if !space.is_identity(&space.pow(a, m)?) {
            return Err(Error::Inconsistent(format!(
                "a^{m} != I for a member of {}",
                self.label()
            )));
        }
        for &(ell, e) in &factored {
            let ell = ell as u128;
            for _ in 0..e {
                if m.is_multiple_of(ell) && space.is_identity(&space.pow(a, m / ell)?) {
                    m /= ell;
                } else {
                    break;
                }
            }
        }
        Ok(m)
    }

    /// Order of an element known to be a `p`-element, by repeated `p`-th powers.
    /// Returns `None` if no power `p^k` with `k <= r + ceil(log_p n)` is the identity.
    pub fn p_element_order(&self, a: &Mat) -> Option<u128> {
        let space = self.space();
        let p = self.ring.p() as u128;
        let mut x = a.clone();
        let mut order: u128 = 1;
        let limit = self.ring.r() + ceil_log(self.ring.p(), self.n as u64) + 1;
        for _ in 0..=limit {
            if space.is_identity(&x) {
                return Some(order);
            }
            x = space.pow(&x, p).ok()?;
            order *= p;
        }
        None
    }

    /// `exp_p(G(F_q)) = p^{ceil(log_p n)}`: the exponent of the unitriangular group.
    pub fn residue_p_exponent(&self) -> u128 {
        (self.ring.p() as u128).pow(ceil_log(self.ring.p(), self.n as u64))
    }
}

/// Whether `(n, p, r)` lies in a range where the `p`-exponents of `G(W_r(F_q))` and
/// `G(F_q[t]/t^r)` are known to differ: `p >= n >= 2` together with
/// `r = 2, p >= 2n`, or `r = 3, p >= 3`, or `r >= 4`.
pub fn exponent_gap_regime(n: usize, p: u64, r: u32) -> Option<&'static str> {
    let n = n as u64;
    if n < 2 || p < n {
        return None;
    }
    match r {
        2 if p >= 2 * n => Some("r = 2, p >= 2n"),
        3 if p >= 3 => Some("r = 3, p >= 3"),
        r if r >= 4 => Some("r >= 4, p >= 2"),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RElem;
    use alloc::vec;

    fn group(family: Family, n: usize, kind: RingKind, p: u64, f: u32, r: u32) -> GroupDesc {
        GroupDesc::new(family, n, RingDesc::new(kind, p, f, r).unwrap()).unwrap()
    }

    #[test]
    fn closed_form_orders() {
        assert_eq!(
            group(Family::SL, 2, RingKind::Poly, 2, 1, 2).order(),
            Some(48)
        );
        assert_eq!(
            group(Family::GL, 2, RingKind::Witt, 3, 1, 3).order(),
            Some(314_928)
        );
        assert_eq!(
            group(Family::GL, 2, RingKind::Poly, 3, 1, 1).order(),
            Some(48)
        );
        assert_eq!(
            group(Family::SL, 2, RingKind::Witt, 2, 1, 4).order(),
            Some(3072)
        );
        assert_eq!(
            group(Family::GL, 1, RingKind::Poly, 5, 1, 3).order(),
            Some(100)
        );
        assert_eq!(
            group(Family::GL, 2, RingKind::Poly, 2, 2, 1).order(),
            Some(180)
        );
    }

    #[test]
    fn membership() {
        let g = group(Family::SL, 2, RingKind::Poly, 5, 1, 2);
        let ring = g.ring().clone();
        let s = g.space();
        assert!(g.is_member(&s.identity()));
        let d = s
            .diag(&[ring.add(ring.uniformizer(), ring.one()), ring.one()])
            .unwrap();
        assert!(!g.is_member(&d));
        let gl = group(Family::GL, 2, RingKind::Poly, 5, 1, 2);
        assert!(gl.is_member(&d));
        assert!(!gl.is_member(&s.diag(&[ring.uniformizer(), ring.one()]).unwrap()));
    }

    #[test]
    fn remark_matrix_has_order_25() {
        let g = group(Family::GL, 3, RingKind::Poly, 5, 1, 2);
        let ring = g.ring();
        let (o, z, t) = (ring.one(), ring.zero(), ring.uniformizer());
        let a = Mat::from_rows(&[vec![o, o, z], vec![t, o, o], vec![t, z, o]]).unwrap();
        assert!(g.is_member(&a));
        assert_eq!(g.element_order(&a), Ok(25));
        assert_eq!(g.p_element_order(&a), Some(25));
    }

    #[test]
    fn orders_of_simple_elements() {
        let g = group(Family::GL, 2, RingKind::Poly, 3, 1, 3);
        let s = g.space();
        assert_eq!(g.element_order(&s.identity()), Ok(1));
        assert_eq!(g.element_order(&s.transvection(0, 1, RElem(1))), Ok(3));
        let w = group(Family::GL, 2, RingKind::Witt, 3, 1, 3);
        let s = w.space();
        assert_eq!(w.element_order(&s.transvection(0, 1, RElem(1))), Ok(27));
        // -1 has order 2, the Teichmueller lift of a generator of F_3^x
        assert_eq!(
            w.element_order(&s.diag(&[RElem(26), RElem(1)]).unwrap()),
            Ok(2)
        );
        assert_eq!(
            w.element_order(&s.diag(&[RElem(3), RElem(1)]).unwrap()),
            Err(Error::NotMember)
        );
    }

    #[test]
    fn regimes() {
        assert_eq!(exponent_gap_regime(2, 5, 2), Some("r = 2, p >= 2n"));
        assert_eq!(exponent_gap_regime(2, 3, 2), None);
        assert_eq!(exponent_gap_regime(2, 3, 3), Some("r = 3, p >= 3"));
        assert_eq!(exponent_gap_regime(2, 2, 3), None);
        assert_eq!(exponent_gap_regime(2, 2, 4), Some("r >= 4, p >= 2"));
        assert_eq!(exponent_gap_regime(3, 2, 5), None);
        assert_eq!(exponent_gap_regime(1, 5, 2), None);
    }
}
