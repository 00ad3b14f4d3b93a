//! Closed forms for powers of `A(I + pi X)` over `O_2`, where `A` is upper unitriangular.

use crate::arith::binomial;
use crate::error::{Error, Result};
use crate::mat::{Mat, MatSpace};

fn require_length_two(space: &MatSpace<'_>) -> Result<()> {
    let r = space.ring().r();
    if r != 2 {
        return Err(Error::WrongLength {
            expected: 2,
            found: r,
        });
    }
    Ok(())
}

/// `A^m + pi * sum_{i<m} A^{m-i} X A^i`, which equals `(A(I + pi X))^m` because `pi^2 = 0`.
pub fn unitriangular_power(space: &MatSpace<'_>, a: &Mat, x: &Mat, m: u64) -> Result<Mat> {
    require_length_two(space)?;
    let ring = space.ring();
    if !a.is_upper_unitriangular(ring) {
        return Err(Error::InvalidParameter(
            "A must be upper unitriangular".into(),
        ));
    }
    let head = space.pow(a, m as u128)?;
    let tail = sandwich_sum(space, a, x, m)?;
    space.add(&head, &space.scale(ring.uniformizer(), &tail))
}

/// `sum_{i=0}^{m-1} A^{m-i} X A^i`.
fn sandwich_sum(space: &MatSpace<'_>, a: &Mat, x: &Mat, m: u64) -> Result<Mat> {
    let mut total = space.zero();
    // left = A^{m-i}, right = A^i
    let mut right = space.identity();
    let mut left = space.pow(a, m as u128)?;
    let a_inv = space.inverse(a)?;
    for _ in 0..m {
        total = space.add(&total, &space.mul(&space.mul(&left, x)?, &right)?)?;
        left = space.mul(&left, &a_inv)?;
        right = space.mul(&right, a)?;
    }
    Ok(total)
}

/// `B = sum_{i=0}^{p-1} A^{p-i} X A^i` for upper unitriangular `A` over `O_2`.
pub fn b_matrix(space: &MatSpace<'_>, a: &Mat, x: &Mat, p: u64) -> Result<Mat> {
    require_length_two(space)?;
    if !a.is_upper_unitriangular(space.ring()) {
        return Err(Error::InvalidParameter(
            "A must be upper unitriangular".into(),
        ));
    }
    sandwich_sum(space, a, x, p)
}

/// `sum_{i=0}^{p-1} C(p-i, k) C(i, l) mod p`, with the binomials computed exactly.
pub fn chu_sum(p: u64, k: u64, l: u64) -> Result<u64> {
    let mut total: u128 = 0;
    for i in 0..p {
        let a = binomial(p - i, k);
        let b = binomial(i, l);
        let term = a
            .zip(b)
            .and_then(|(a, b)| a.checked_mul(b))
            .ok_or_else(|| Error::InvalidParameter("binomial product overflows 128 bits".into()))?;
        total = total
            .checked_add(term)
            .ok_or_else(|| Error::InvalidParameter("sum overflows 128 bits".into()))?;
    }
    Ok((total % p as u128) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{RElem, RingDesc, RingKind};
    use alloc::vec;

    #[test]
    fn chu_examples() {
        assert_eq!(chu_sum(5, 0, 0), Ok(0));
        assert_eq!(chu_sum(7, 0, 0), Ok(0));
        assert_eq!(chu_sum(5, 1, 1), Ok(0));
        assert_eq!(chu_sum(7, 2, 1), Ok(0));
        // outside p >= 2n the sum can be nonzero: k + l + 1 = p
        assert_ne!(chu_sum(5, 2, 2), Ok(0));
    }

    #[test]
    fn small_powers() {
        let ring = RingDesc::new(RingKind::Poly, 5, 1, 2).unwrap();
        let s = MatSpace::new(&ring, 2);
        let a = s.transvection(0, 1, RElem(3));
        let x = Mat::from_rows(&[vec![RElem(1), RElem(2)], vec![RElem(4), RElem(0)]]).unwrap();
        assert_eq!(unitriangular_power(&s, &a, &x, 0), Ok(s.identity()));
        let one = s
            .add(&a, &s.scale(ring.uniformizer(), &s.mul(&a, &x).unwrap()))
            .unwrap();
        assert_eq!(unitriangular_power(&s, &a, &x, 1), Ok(one));
    }

    #[test]
    fn identity_a_gives_p_times_x() {
        for kind in [RingKind::Poly, RingKind::Witt] {
            let ring = RingDesc::new(kind, 5, 1, 2).unwrap();
            let s = MatSpace::new(&ring, 2);
            let x = Mat::from_rows(&[vec![RElem(1), RElem(2)], vec![RElem(3), RElem(4)]]).unwrap();
            let b = b_matrix(&s, &s.identity(), &x, 5).unwrap();
            assert_eq!(b, s.scale(ring.from_int(5), &x));
            assert!(s.residue(&b).iter().all(|c| c.0 == 0));
        }
    }

    #[test]
    fn wrong_length_rejected() {
        let ring = RingDesc::new(RingKind::Poly, 5, 1, 3).unwrap();
        let s = MatSpace::new(&ring, 2);
        let id = s.identity();
        assert_eq!(
            unitriangular_power(&s, &id, &id, 3),
            Err(Error::WrongLength {
                expected: 2,
                found: 3
            })
        );
    }
}
