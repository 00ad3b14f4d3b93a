//! Conjugacy classes, class power maps and the Kuelshammer dimension profile of `F_p G`.
//!
//! For a group algebra the `n`-th Kuelshammer ideal `T_n(FG)^perp` has a basis of sums over
//! the sets `C^{p^-n} = {h : h^{p^n} in C}`, one for each class `C` that is hit by the
//! `p^n`-power map. Its dimension is therefore the size of the image of that power map on
//! classes, which is what [`kuelshammer_profile`] computes.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::p_prime_part;
use crate::enumerate::ElementTable;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassPartition {
    /// Element id to class id.
    pub class_of: Vec<u32>,
    /// Least element id of each class.
    pub reps: Vec<u32>,
    pub sizes: Vec<u64>,
}

impl ClassPartition {
    pub fn num_classes(&self) -> usize {
        self.reps.len()
    }

    /// Rebuilds representatives and sizes from a class assignment, renumbering classes by
    /// least member so the result matches [`conjugacy_classes`] on the same table.
    pub fn from_class_of(class_of: Vec<u32>) -> Self {
        let mut renumber: Vec<u32> = Vec::new();
        let mut map = hashbrown::HashMap::new();
        let mut reps = Vec::new();
        let mut sizes: Vec<u64> = Vec::new();
        for (id, &c) in class_of.iter().enumerate() {
            let next = map.len() as u32;
            let new = *map.entry(c).or_insert_with(|| {
                reps.push(id as u32);
                sizes.push(0);
                next
            });
            sizes[new as usize] += 1;
            renumber.push(new);
        }
        ClassPartition {
            class_of: renumber,
            reps,
            sizes,
        }
    }

    /// Largest element id in each class.
    pub fn last_members(&self) -> Vec<u32> {
        let mut last = self.reps.clone();
        for (id, &c) in self.class_of.iter().enumerate() {
            last[c as usize] = id as u32;
        }
        last
    }
}

/// Orbits of `h -> s h s^{-1}` over the generators `s`; these are the conjugacy classes.
pub fn conjugacy_classes(table: &ElementTable) -> ClassPartition {
    const UNSEEN: u32 = u32::MAX;
    let space = table.space();
    let size = table.size();
    let mut class_of = vec![UNSEEN; size];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    let mut queue = VecDeque::new();
    for start in 0..size as u32 {
        if class_of[start as usize] != UNSEEN {
            continue;
        }
        let class = reps.len() as u32;
        reps.push(start);
        class_of[start as usize] = class;
        let mut count = 1u64;
        queue.push_back(start);
        while let Some(h) = queue.pop_front() {
            let hm = table.get(h);
            for (s, s_inv) in table.generators().iter().zip(table.generator_inverses()) {
                let conj = space.mul_unchecked(&space.mul_unchecked(s, &hm), s_inv);
                let id = table.id_of(&conj).expect("closed under conjugation");
                if class_of[id as usize] == UNSEEN {
                    class_of[id as usize] = class;
                    count += 1;
                    queue.push_back(id);
                }
            }
        }
        sizes.push(count);
    }
    ClassPartition {
        class_of,
        reps,
        sizes,
    }
}

/// Class of `g` to class of `g^e`, checked on a second member of every class.
pub fn class_power_map(table: &ElementTable, part: &ClassPartition, e: u128) -> Result<Vec<u32>> {
    if e == 0 {
        return Err(Error::InvalidParameter(
            "power map exponent must be >= 1".into(),
        ));
    }
    let image = |id: u32| part.class_of[table.pow(id, e) as usize];
    let map: Vec<u32> = part.reps.iter().map(|&rep| image(rep)).collect();
    for (c, &other) in part.last_members().iter().enumerate() {
        if image(other) != map[c] {
            return Err(Error::Inconsistent(format!(
                "power map by {e} depends on the representative of class {c}"
            )));
        }
    }
    Ok(map)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KuelshammerProfile {
    pub p: u64,
    /// `dims[n] = dim T_n(F_p G)^perp` for `n = 0..=stab_index`.
    pub dims: Vec<usize>,
    /// Least `n` after which the image of the `p^n`-power map on classes no longer changes.
    pub stab_index: u32,
    /// Dimension of the stabilised ideal, the Reynolds ideal.
    pub reynolds_dim: usize,
    /// Classes whose elements have order prime to `p`, counted from representative orders.
    pub p_regular_classes: usize,
}

impl KuelshammerProfile {
    /// `p^{stab_index}`, which is the `p`-exponent of the group.
    pub fn p_exponent(&self) -> u128 {
        (self.p as u128).pow(self.stab_index)
    }
}

/// Iterates the `p`-power map on classes until its image set is stable.
pub fn kuelshammer_profile(
    table: &ElementTable,
    part: &ClassPartition,
    p: u64,
) -> Result<KuelshammerProfile> {
    if !crate::arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let power = class_power_map(table, part, p as u128)?;
    let k = part.num_classes();
    let mut image = vec![true; k];
    let mut dims = vec![k];
    let mut stab_index = 0u32;
    loop {
        let mut next = vec![false; k];
        for (c, _) in image.iter().enumerate().filter(|(_, &hit)| hit) {
            next[power[c] as usize] = true;
        }
        if next == image {
            break;
        }
        image = next;
        dims.push(image.iter().filter(|&&hit| hit).count());
        stab_index += 1;
    }

    let order = table.size() as u128;
    let p_free = p_prime_part(order, p);
    let p_regular_classes = part
        .reps
        .iter()
        .filter(|&&rep| table.pow(rep, p_free) == 0)
        .count();

    Ok(KuelshammerProfile {
        p,
        reynolds_dim: *dims.last().expect("non-empty"),
        dims,
        stab_index,
        p_regular_classes,
    })
}

/// `p^{stab_index}` of a profile computed to stabilisation.
pub fn p_exponent_from_profile(profile: &KuelshammerProfile) -> u128 {
    profile.p_exponent()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_group;
    use crate::group::{Family, GroupDesc};
    use crate::ring::{RingDesc, RingKind};

    fn table(family: Family, n: usize, kind: RingKind, p: u64, f: u32, r: u32) -> ElementTable {
        let g = GroupDesc::new(family, n, RingDesc::new(kind, p, f, r).unwrap()).unwrap();
        enumerate_group(&g, 1_000_000).unwrap()
    }

    /// Brute-force classes: h ~ g iff x g x^{-1} = h for some x.
    fn brute_force_class_count(t: &ElementTable) -> usize {
        let n = t.size() as u32;
        let mut seen = vec![false; n as usize];
        let mut count = 0;
        for g in 0..n {
            if seen[g as usize] {
                continue;
            }
            count += 1;
            for x in 0..n {
                let c = t.mul(t.mul(x, g), t.inverse(x));
                seen[c as usize] = true;
            }
        }
        count
    }

    #[test]
    fn cyclic_group_of_order_four() {
        // GL_1(F_5) is cyclic of order 4
        let t = table(Family::GL, 1, RingKind::Poly, 5, 1, 1);
        let part = conjugacy_classes(&t);
        assert_eq!(part.num_classes(), 4);
        assert!(part.sizes.iter().all(|&s| s == 1));
        let id = class_power_map(&t, &part, 1).unwrap();
        assert_eq!(id, [0, 1, 2, 3]);
        let prof = kuelshammer_profile(&t, &part, 2).unwrap();
        assert_eq!(prof.dims, [4, 2, 1]);
        assert_eq!(prof.stab_index, 2);
        assert_eq!(prof.reynolds_dim, 1);
        assert_eq!(prof.p_regular_classes, 1);
        assert_eq!(p_exponent_from_profile(&prof), 4);
    }

    #[test]
    fn cyclic_squaring_map() {
        let t = table(Family::GL, 1, RingKind::Poly, 5, 1, 1);
        let part = conjugacy_classes(&t);
        let sq = class_power_map(&t, &part, 2).unwrap();
        // classes of g^2 for g = 1, 2, 3, 4 in F_5^x, with 2 a generator
        let class = |v: u64| {
            let m = t.space().diag(&[crate::ring::RElem(v)]).unwrap();
            part.class_of[t.id_of(&m).unwrap() as usize]
        };
        assert_eq!(sq[class(1) as usize], class(1));
        assert_eq!(sq[class(2) as usize], class(4));
        assert_eq!(sq[class(4) as usize], class(1));
        assert_eq!(sq[class(3) as usize], class(4));
    }

    #[test]
    fn symmetric_group_s3() {
        let t = table(Family::SL, 2, RingKind::Poly, 2, 1, 1);
        let part = conjugacy_classes(&t);
        let mut sizes = part.sizes.clone();
        sizes.sort();
        assert_eq!(sizes, [1, 2, 3]);
        let cube = class_power_map(&t, &part, 3).unwrap();
        let by_size = |s: u64| part.sizes.iter().position(|&x| x == s).unwrap() as u32;
        assert_eq!(cube[by_size(3) as usize], by_size(3));
        assert_eq!(cube[by_size(2) as usize], by_size(1));
        let prof = kuelshammer_profile(&t, &part, 3).unwrap();
        assert_eq!(prof.dims, [3, 2]);
        assert_eq!(prof.stab_index, 1);
        assert_eq!(prof.reynolds_dim, 2);
        assert_eq!(prof.p_exponent(), 3);
    }

    #[test]
    fn coprime_prime_gives_constant_profile() {
        let t = table(Family::SL, 2, RingKind::Poly, 2, 1, 1);
        let part = conjugacy_classes(&t);
        let prof = kuelshammer_profile(&t, &part, 5).unwrap();
        assert_eq!(prof.dims, [3]);
        assert_eq!(prof.stab_index, 0);
        assert_eq!(prof.p_regular_classes, 3);
    }

    #[test]
    fn gl2_f3_has_eight_classes() {
        let t = table(Family::GL, 2, RingKind::Poly, 3, 1, 1);
        let part = conjugacy_classes(&t);
        assert_eq!(part.num_classes(), 8);
        assert_eq!(brute_force_class_count(&t), 8);
    }

    #[test]
    fn classes_match_brute_force_and_divide_order() {
        for t in [
            table(Family::SL, 2, RingKind::Witt, 2, 1, 2),
            table(Family::SL, 2, RingKind::Poly, 2, 1, 2),
            table(Family::GL, 2, RingKind::Witt, 2, 1, 2),
        ] {
            let part = conjugacy_classes(&t);
            assert_eq!(part.num_classes(), brute_force_class_count(&t));
            assert_eq!(part.sizes.iter().sum::<u64>(), t.size() as u64);
            assert!(part
                .sizes
                .iter()
                .all(|&s| (t.size() as u64).is_multiple_of(s)));
            let rebuilt = ClassPartition::from_class_of(part.class_of.clone());
            assert_eq!(rebuilt, part);
        }
    }
}
