//! Group-level results compared against closed-form orders, classical class counts, and
//! element orders computed independently from the multiplication table.

use kkg_core::classes::{class_power_map, p_exponent_from_profile};
use kkg_core::{
    conjugacy_classes, enumerate_group, kuelshammer_profile, p_exponent, ElementTable, Family,
    GroupDesc, RingDesc, RingKind, Strategy, ENUMERATION_CAP,
};

fn group(family: Family, n: usize, kind: RingKind, p: u64, f: u32, r: u32) -> GroupDesc {
    GroupDesc::new(family, n, RingDesc::new(kind, p, f, r).unwrap()).unwrap()
}

/// Largest power of `p` dividing the order of some element, by repeated table multiplication.
fn brute_p_exponent(table: &ElementTable, p: u64) -> u128 {
    let mut best = 1u128;
    for g in 0..table.size() as u32 {
        let mut order = 1u128;
        let mut x = g;
        while x != 0 {
            x = table.mul(x, g);
            order += 1;
        }
        let mut pp = 1u128;
        while order.is_multiple_of(pp * p as u128) {
            pp *= p as u128;
        }
        best = best.max(pp);
    }
    best
}

#[test]
fn enumerated_orders_match_closed_forms() {
    // |GL_2(F_q)| = (q^2-1)(q^2-q); kernel of reduction has q^(4(r-1)) elements.
    let cases = [
        (Family::GL, RingKind::Witt, 2u64, 2u32, 6 * 16u128),
        (Family::SL, RingKind::Witt, 2, 2, 48),
        (Family::SL, RingKind::Poly, 2, 2, 48),
        (Family::GL, RingKind::Poly, 3, 2, 48 * 81),
        (Family::SL, RingKind::Witt, 2, 4, 3072),
    ];
    for (family, kind, p, r, order) in cases {
        let g = group(family, 2, kind, p, 1, r);
        assert_eq!(g.order(), Some(order));
        assert_eq!(
            enumerate_group(&g, ENUMERATION_CAP).unwrap().size() as u128,
            order
        );
    }
}

#[test]
fn class_counts_of_small_classical_groups() {
    // GL_2(F_3) has 8 classes, SL_2(F_3) 7, SL_2(F_2) = S_3 has 3, SL_2(Z/4) has 10.
    for (family, p, r, classes) in [
        (Family::GL, 3u64, 1u32, 8usize),
        (Family::SL, 3, 1, 7),
        (Family::SL, 2, 1, 3),
        (Family::SL, 2, 2, 10),
    ] {
        let table =
            enumerate_group(&group(family, 2, RingKind::Witt, p, 1, r), ENUMERATION_CAP).unwrap();
        assert_eq!(conjugacy_classes(&table).num_classes(), classes);
    }
}

#[test]
fn sylow_exponent_agrees_with_table_orders() {
    for (family, kind, p, r) in [
        (Family::GL, RingKind::Witt, 2u64, 2u32),
        (Family::GL, RingKind::Poly, 2, 2),
        (Family::SL, RingKind::Witt, 2, 3),
        (Family::SL, RingKind::Poly, 2, 3),
        (Family::GL, RingKind::Witt, 3, 2),
        (Family::GL, RingKind::Poly, 3, 2),
    ] {
        let g = group(family, 2, kind, p, 1, r);
        let table = enumerate_group(&g, ENUMERATION_CAP).unwrap();
        let sylow = p_exponent(&g, Strategy::Exhaustive).unwrap().value;
        assert_eq!(sylow, brute_p_exponent(&table, p), "{}", g.label());
    }
}

#[test]
fn profile_stabilization_recovers_exponent() {
    for (kind, r) in [(RingKind::Witt, 3u32), (RingKind::Poly, 3)] {
        let g = group(Family::SL, 2, kind, 2, 1, r);
        let table = enumerate_group(&g, ENUMERATION_CAP).unwrap();
        let part = conjugacy_classes(&table);
        let profile = kuelshammer_profile(&table, &part, 2).unwrap();
        assert_eq!(
            p_exponent_from_profile(&profile),
            brute_p_exponent(&table, 2)
        );
        assert_eq!(*profile.dims.first().unwrap(), part.num_classes());
        assert!(profile.dims.windows(2).all(|w| w[0] > w[1]));
    }
}

#[test]
fn power_map_sends_classes_to_classes() {
    let g = group(Family::GL, 2, RingKind::Poly, 3, 1, 1);
    let table = enumerate_group(&g, ENUMERATION_CAP).unwrap();
    let part = conjugacy_classes(&table);
    let map = class_power_map(&table, &part, 3).unwrap();
    for x in 0..table.size() as u32 {
        let c = part.class_of[x as usize] as usize;
        assert_eq!(part.class_of[table.pow(x, 3) as usize], map[c]);
    }
}

#[test]
fn over_cap_enumeration_is_refused() {
    let g = group(Family::GL, 2, RingKind::Witt, 3, 1, 3);
    assert!(enumerate_group(&g, 1000).is_err());
}
