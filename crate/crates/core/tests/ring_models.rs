//! Ring arithmetic checked against naive reference models: integers mod `p^r` for the Witt
//! kind with `f = 1`, and schoolbook truncated polynomials for the Poly kind with `f = 1`.

use kkg_core::{Mat, MatSpace, RElem, RingDesc, RingKind};
use proptest::prelude::*;

fn poly_model_mul(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let r = a.len();
    let mut out = vec![0u64; r];
    for i in 0..r {
        for j in 0..r - i {
            out[i + j] = (out[i + j] + a[i] * b[j]) % p;
        }
    }
    out
}

#[test]
fn witt_prime_field_is_integers_mod_p_power() {
    for (p, r) in [(2u64, 4u32), (3, 3), (5, 2), (7, 2)] {
        let ring = RingDesc::new(RingKind::Witt, p, 1, r).unwrap();
        let m = p.pow(r);
        assert_eq!(ring.characteristic(), m);
        for a in 0..m {
            for b in 0..m {
                let (x, y) = (RElem(a), RElem(b));
                assert_eq!(ring.coeffs(ring.add(x, y)), vec![(a + b) % m]);
                assert_eq!(ring.coeffs(ring.mul(x, y)), vec![a * b % m]);
                assert_eq!(ring.coeffs(ring.sub(x, y)), vec![(a + m - b) % m]);
            }
        }
    }
}

#[test]
fn poly_prime_field_is_truncated_polynomials() {
    for (p, r) in [(2u64, 4u32), (3, 3), (5, 2)] {
        let ring = RingDesc::new(RingKind::Poly, p, 1, r).unwrap();
        assert_eq!(ring.characteristic(), p);
        for a in ring.elements() {
            for b in ring.elements() {
                let want = poly_model_mul(p, &ring.coeffs(a), &ring.coeffs(b));
                assert_eq!(ring.coeffs(ring.mul(a, b)), want);
            }
        }
    }
}

#[test]
fn unit_counts_match_closed_form() {
    // |O_r^x| = q^r - q^(r-1) for both kinds.
    for kind in [RingKind::Poly, RingKind::Witt] {
        for (p, f, r) in [(2u64, 2u32, 2u32), (3, 1, 3), (2, 3, 2), (5, 1, 2)] {
            let ring = RingDesc::new(kind, p, f, r).unwrap();
            let q = p.pow(f);
            let units = ring.elements().filter(|&a| ring.is_unit(a)).count() as u64;
            assert_eq!(units, q.pow(r) - q.pow(r - 1), "{kind:?} p={p} f={f} r={r}");
        }
    }
}

#[test]
fn teichmuller_lift_is_multiplicative_and_idempotent() {
    for kind in [RingKind::Poly, RingKind::Witt] {
        let ring = RingDesc::new(kind, 3, 2, 3).unwrap();
        let field = ring.field().clone();
        let q = field.q();
        for a in field.elements() {
            let ta = ring.teichmuller(a);
            assert_eq!(ring.pow(ta, q as u128), ta);
            assert_eq!(ring.residue(ta), a);
            for b in field.elements() {
                assert_eq!(
                    ring.mul(ta, ring.teichmuller(b)),
                    ring.teichmuller(field.mul(a, b))
                );
            }
        }
    }
}

#[test]
fn witt_digits_round_trip() {
    let ring = RingDesc::new(RingKind::Witt, 2, 2, 3).unwrap();
    for a in ring.elements() {
        let digits = ring.witt_digits(a);
        assert_eq!(digits.len(), 3);
        assert_eq!(ring.digits_to_elem(&digits).unwrap(), a);
    }
}

fn rings() -> Vec<RingDesc> {
    vec![
        RingDesc::new(RingKind::Witt, 5, 1, 2).unwrap(),
        RingDesc::new(RingKind::Poly, 5, 1, 2).unwrap(),
        RingDesc::new(RingKind::Witt, 2, 2, 3).unwrap(),
        RingDesc::new(RingKind::Poly, 3, 1, 3).unwrap(),
    ]
}

fn mat_strategy(size: u64, n: usize) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0..size, n * n)
}

fn to_mat(n: usize, raw: &[u64]) -> Mat {
    Mat::from_entries(n, raw.iter().map(|&v| RElem(v)).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reduction_is_a_ring_homomorphism(idx in 0usize..4, a in 0u64..1 << 20, b in 0u64..1 << 20, s in 1u32..4) {
        let ring = &rings()[idx];
        let s = s.min(ring.r());
        let (a, b) = (RElem(a % ring.size()), RElem(b % ring.size()));
        let small = ring.truncate(s).unwrap();
        let red = |x| ring.reduce(x, s).unwrap();
        prop_assert_eq!(red(ring.mul(a, b)), small.mul(red(a), red(b)));
        prop_assert_eq!(red(ring.add(a, b)), small.add(red(a), red(b)));
    }

    #[test]
    fn valuation_is_additive(idx in 0usize..4, a in 0u64..1 << 20, b in 0u64..1 << 20) {
        let ring = &rings()[idx];
        let (a, b) = (RElem(a % ring.size()), RElem(b % ring.size()));
        let v = ring.valuation(ring.mul(a, b));
        prop_assert_eq!(v, (ring.valuation(a) + ring.valuation(b)).min(ring.r()));
    }

    #[test]
    fn determinant_is_multiplicative(idx in 0usize..4, n in 1usize..4, seed in any::<u64>()) {
        let ring = &rings()[idx];
        let space = MatSpace::new(ring, n);
        let mut rng = seed;
        let mut next = || { rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); (rng >> 33) % ring.size() };
        let a = to_mat(n, &(0..n * n).map(|_| next()).collect::<Vec<_>>());
        let b = to_mat(n, &(0..n * n).map(|_| next()).collect::<Vec<_>>());
        let ab = space.mul(&a, &b).unwrap();
        prop_assert_eq!(space.det(&ab).unwrap(), ring.mul(space.det(&a).unwrap(), space.det(&b).unwrap()));
    }

    #[test]
    fn powers_add_exponents(raw in mat_strategy(25, 2), j in 0u128..60, k in 0u128..60) {
        let ring = RingDesc::new(RingKind::Witt, 5, 1, 2).unwrap();
        let space = MatSpace::new(&ring, 2);
        let a = to_mat(2, &raw);
        let lhs = space.pow(&a, j + k).unwrap();
        let rhs = space.mul(&space.pow(&a, j).unwrap(), &space.pow(&a, k).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_exists_exactly_for_unit_determinant(raw in mat_strategy(27, 3)) {
        let ring = RingDesc::new(RingKind::Poly, 3, 1, 3).unwrap();
        let space = MatSpace::new(&ring, 3);
        let a = to_mat(3, &raw);
        let det = space.det(&a).unwrap();
        match space.inverse(&a) {
            Ok(inv) => {
                prop_assert!(ring.is_unit(det));
                prop_assert!(space.is_identity(&space.mul(&a, &inv).unwrap()));
                prop_assert!(space.is_identity(&space.mul(&inv, &a).unwrap()));
            }
            Err(_) => prop_assert!(!ring.is_unit(det)),
        }
    }
}
