//! Breadth-first enumeration of `G(O_r)` from a generating set, with dense element ids.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec::Vec;

use hashbrown::HashMap;

use crate::error::{Error, Result};
use crate::group::{Family, GroupDesc};
use crate::mat::{Mat, MatSpace};
use crate::ring::{RElem, RingDesc, RingKind};

/// Default cap on `|G|` for full enumeration.
pub const ENUMERATION_CAP: u128 = 500_000;

/// Packs a matrix into a `u128` with a fixed bit width per entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatCodec {
    n: usize,
    bits: u32,
}

impl MatCodec {
    pub fn new(ring: &RingDesc, n: usize) -> Result<Self> {
        let bits = (64 - (ring.size() - 1).leading_zeros()).max(1);
        if bits as usize * n * n > 128 {
            return Err(Error::InvalidParameter(format!(
                "{n}x{n} matrices over a ring of size {} do not fit a 128-bit key",
                ring.size()
            )));
        }
        Ok(MatCodec { n, bits })
    }

    pub fn encode(&self, m: &Mat) -> u128 {
        m.entries()
            .iter()
            .rev()
            .fold(0u128, |acc, e| (acc << self.bits) | e.0 as u128)
    }

    pub fn decode(&self, key: u128) -> Mat {
        let mask = (1u128 << self.bits) - 1;
        let entries = (0..self.n * self.n)
            .map(|k| RElem(((key >> (k as u32 * self.bits)) & mask) as u64))
            .collect();
        Mat::from_entries(self.n, entries).expect("n >= 1")
    }
}

/// An additive generating set of `O_r` over its prime subring.
fn additive_basis(ring: &RingDesc) -> Vec<RElem> {
    let powers_of_x: Vec<RElem> = (0..ring.f())
        .map(|j| ring.pow(ring.x(), j as u128))
        .collect();
    match ring.kind() {
        RingKind::Poly => (0..ring.r())
            .flat_map(|i| powers_of_x.iter().map(move |&xj| (i, xj)))
            .map(|(i, xj)| ring.mul(xj, ring.pi_pow(i)))
            .collect(),
        RingKind::Witt => powers_of_x,
    }
}

/// Generators of `O_r^x`: the Teichmueller lift of a primitive root and `1 + x^j pi^i`.
fn unit_generators(ring: &RingDesc) -> Vec<RElem> {
    let zeta = ring.teichmuller(ring.field().primitive_element());
    let mut out = alloc::vec![zeta];
    for i in 1..ring.r() {
        for j in 0..ring.f() {
            let xj = ring.pow(ring.x(), j as u128);
            out.push(ring.add(ring.one(), ring.mul(xj, ring.pi_pow(i))));
        }
    }
    out
}

/// Transvections `I + u E_ij` for `u` in an additive basis, plus diagonal matrices carrying
/// the unit group (GL) or `diag(tau(zeta), tau(zeta)^{-1}, 1, ...)` (SL). Sorted by packed key,
/// identity and duplicates removed.
pub fn generators(group: &GroupDesc) -> Result<Vec<Mat>> {
    let ring = group.ring();
    let n = group.n();
    let space = group.space();
    let mut gens = Vec::new();
    for u in additive_basis(ring) {
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    gens.push(space.transvection(i, j, u));
                }
            }
        }
    }
    let mut diag = alloc::vec![ring.one(); n];
    match group.family() {
        Family::GL => {
            for u in unit_generators(ring) {
                diag[0] = u;
                gens.push(space.diag(&diag)?);
            }
        }
        Family::SL if n >= 2 => {
            let zeta = ring.teichmuller(ring.field().primitive_element());
            diag[0] = zeta;
            diag[1] = ring.inv(zeta)?;
            gens.push(space.diag(&diag)?);
        }
        Family::SL => {}
    }
    let codec = MatCodec::new(ring, n)?;
    gens.retain(|g| !space.is_identity(g));
    gens.sort_by_key(|g| codec.encode(g));
    gens.dedup();
    Ok(gens)
}

/// Every element of a group, with dense ids `0..size` in breadth-first order; id 0 is the identity.
#[derive(Debug, Clone)]
pub struct ElementTable {
    group: GroupDesc,
    codec: MatCodec,
    elems: Vec<u128>,
    index: HashMap<u128, u32>,
    gens: Vec<Mat>,
    gen_inverses: Vec<Mat>,
}

impl ElementTable {
    pub fn group(&self) -> &GroupDesc {
        &self.group
    }

    pub fn space(&self) -> MatSpace<'_> {
        self.group.space()
    }

    pub fn codec(&self) -> MatCodec {
        self.codec
    }

    pub fn size(&self) -> usize {
        self.elems.len()
    }

    pub fn keys(&self) -> &[u128] {
        &self.elems
    }

    pub fn generators(&self) -> &[Mat] {
        &self.gens
    }

    pub fn generator_inverses(&self) -> &[Mat] {
        &self.gen_inverses
    }

    pub fn get(&self, id: u32) -> Mat {
        self.codec.decode(self.elems[id as usize])
    }

    pub fn id_of(&self, m: &Mat) -> Option<u32> {
        self.index.get(&self.codec.encode(m)).copied()
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let prod = self.space().mul_unchecked(&self.get(a), &self.get(b));
        self.id_of(&prod).expect("closed under multiplication")
    }

    pub fn pow(&self, a: u32, e: u128) -> u32 {
        let m = self.space().pow(&self.get(a), e).expect("matching size");
        self.id_of(&m).expect("closed under powers")
    }

    pub fn inverse(&self, a: u32) -> u32 {
        let m = self.space().inverse(&self.get(a)).expect("group element");
        self.id_of(&m).expect("closed under inverses")
    }

    /// Rebuilds a table from stored keys (e.g. a cache file), validating closure data.
    pub fn from_keys(group: GroupDesc, keys: Vec<u128>) -> Result<Self> {
        let codec = MatCodec::new(group.ring(), group.n())?;
        let gens = generators(&group)?;
        let space = group.space();
        let gen_inverses = gens
            .iter()
            .map(|g| space.inverse(g))
            .collect::<Result<Vec<_>>>()?;
        let mut index = HashMap::with_capacity(keys.len());
        for (i, &k) in keys.iter().enumerate() {
            let m = codec.decode(k);
            if codec.encode(&m) != k
                || m.entries().iter().any(|e| e.0 >= group.ring().size())
                || !group.is_member(&m)
            {
                return Err(Error::Inconsistent(format!(
                    "stored key {i} is not a group element"
                )));
            }
            if index.insert(k, i as u32).is_some() {
                return Err(Error::Inconsistent("duplicate element key".into()));
            }
        }
        let expected = group.order();
        if expected != Some(keys.len() as u128) {
            return Err(Error::Inconsistent(format!(
                "{} elements stored, closed form {:?}",
                keys.len(),
                expected
            )));
        }
        if keys.first().map(|&k| codec.decode(k)) != Some(space.identity()) {
            return Err(Error::Inconsistent("id 0 is not the identity".into()));
        }
        Ok(ElementTable {
            group,
            codec,
            elems: keys,
            index,
            gens,
            gen_inverses,
        })
    }
}

/// Breadth-first closure from [`generators`]; fails if `|G|` exceeds `cap` or if the closure
/// size disagrees with the closed-form order.
pub fn enumerate_group(group: &GroupDesc, cap: u128) -> Result<ElementTable> {
    let expected = group
        .order()
        .ok_or_else(|| Error::InvalidParameter("group order overflows 128 bits".into()))?;
    if expected > cap {
        return Err(Error::CapExceeded {
            size: expected,
            cap,
        });
    }
    let space = group.space();
    let codec = MatCodec::new(group.ring(), group.n())?;
    let gens = generators(group)?;
    let gen_inverses = gens
        .iter()
        .map(|g| space.inverse(g))
        .collect::<Result<Vec<_>>>()?;

    let identity = codec.encode(&space.identity());
    let mut elems = Vec::with_capacity(expected as usize);
    let mut index: HashMap<u128, u32> = HashMap::with_capacity(expected as usize);
    elems.push(identity);
    index.insert(identity, 0);
    let mut queue = VecDeque::from([0u32]);
    while let Some(id) = queue.pop_front() {
        let m = codec.decode(elems[id as usize]);
        for g in &gens {
            let key = codec.encode(&space.mul_unchecked(&m, g));
            if let hashbrown::hash_map::Entry::Vacant(slot) = index.entry(key) {
                if elems.len() as u128 >= expected {
                    return Err(Error::Inconsistent(format!(
                        "closure of {} exceeds closed-form order {expected}",
                        group.label()
                    )));
                }
                let new_id = elems.len() as u32;
                slot.insert(new_id);
                elems.push(key);
                queue.push_back(new_id);
            }
        }
    }
    if elems.len() as u128 != expected {
        return Err(Error::Inconsistent(format!(
            "closure of {} has {} elements, closed form {expected}",
            group.label(),
            elems.len()
        )));
    }
    Ok(ElementTable {
        group: group.clone(),
        codec,
        elems,
        index,
        gens,
        gen_inverses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(family: Family, n: usize, kind: RingKind, p: u64, f: u32, r: u32) -> GroupDesc {
        GroupDesc::new(family, n, RingDesc::new(kind, p, f, r).unwrap()).unwrap()
    }

    #[test]
    fn small_closures() {
        let t = enumerate_group(&group(Family::SL, 2, RingKind::Poly, 2, 1, 1), 1000).unwrap();
        assert_eq!(t.size(), 6);
        assert_eq!(t.generators().len(), 2);
        assert_eq!(
            enumerate_group(&group(Family::SL, 2, RingKind::Witt, 2, 1, 2), 1000)
                .unwrap()
                .size(),
            48
        );
        assert_eq!(
            enumerate_group(&group(Family::SL, 2, RingKind::Poly, 2, 1, 2), 1000)
                .unwrap()
                .size(),
            48
        );
        assert_eq!(
            enumerate_group(&group(Family::GL, 1, RingKind::Poly, 3, 2, 3), 1000)
                .unwrap()
                .size(),
            648
        );
        assert_eq!(
            enumerate_group(&group(Family::GL, 1, RingKind::Witt, 2, 1, 5), 1000)
                .unwrap()
                .size(),
            16
        );
        assert_eq!(
            enumerate_group(&group(Family::SL, 1, RingKind::Witt, 3, 1, 2), 1000)
                .unwrap()
                .size(),
            1
        );
        assert_eq!(
            enumerate_group(&group(Family::GL, 2, RingKind::Witt, 2, 2, 2), 100_000)
                .unwrap()
                .size(),
            180 * 256
        );
    }

    #[test]
    fn cap_is_enforced() {
        let g = group(Family::GL, 2, RingKind::Witt, 3, 1, 3);
        assert_eq!(
            enumerate_group(&g, 1000).unwrap_err(),
            Error::CapExceeded {
                size: 314_928,
                cap: 1000
            }
        );
    }

    #[test]
    fn table_operations() {
        let t = enumerate_group(&group(Family::GL, 2, RingKind::Poly, 3, 1, 1), 1000).unwrap();
        assert_eq!(t.size(), 48);
        assert!(t.space().is_identity(&t.get(0)));
        for a in 0..t.size() as u32 {
            assert_eq!(t.mul(a, t.inverse(a)), 0);
            assert_eq!(t.pow(a, 48), 0);
        }
        let rebuilt = ElementTable::from_keys(t.group().clone(), t.keys().to_vec()).unwrap();
        assert_eq!(rebuilt.id_of(&t.get(17)), Some(17));
        let mut bad = t.keys().to_vec();
        bad.pop();
        assert!(ElementTable::from_keys(t.group().clone(), bad).is_err());
    }
}
