//! Round trips and rejection paths of the on-disk class cache.

use kkg::cache::{decode, encode, file_name, Cache, Lookup, VERSION};
use kkg_core::{
    conjugacy_classes, enumerate_group, Family, GroupDesc, RingDesc, RingKind, ENUMERATION_CAP,
};

fn group(kind: RingKind, p: u64, r: u32) -> GroupDesc {
    GroupDesc::new(Family::GL, 2, RingDesc::new(kind, p, 1, r).unwrap()).unwrap()
}

fn reseal(bytes: &mut [u8]) {
    let body = bytes.len() - 4;
    let crc = crc32fast::hash(&bytes[..body]);
    bytes[body..].copy_from_slice(&crc.to_le_bytes());
}

#[test]
fn store_then_load_gives_identical_partition() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(Some(dir.path().to_path_buf()));
    for g in [group(RingKind::Witt, 3, 3), group(RingKind::Poly, 3, 2)] {
        let table = enumerate_group(&g, ENUMERATION_CAP).unwrap();
        let part = conjugacy_classes(&table);
        cache.store(&table, &part).unwrap();
        assert!(dir.path().join(file_name(&g)).exists());
        match cache.load(&g) {
            Lookup::Hit(t, p) => {
                assert_eq!(t.keys(), table.keys());
                assert_eq!(p, part);
            }
            Lookup::Miss(reason) => panic!("expected a hit, got miss {reason:?}"),
        }
    }
}

#[test]
fn cold_cache_misses_silently() {
    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(Some(dir.path().to_path_buf()));
    assert!(matches!(
        cache.load(&group(RingKind::Witt, 2, 2)),
        Lookup::Miss(None)
    ));
    assert!(matches!(
        Cache::new(None).load(&group(RingKind::Witt, 2, 2)),
        Lookup::Miss(None)
    ));
}

#[test]
fn mismatched_version_header_is_a_miss() {
    let g = group(RingKind::Witt, 2, 2);
    let table = enumerate_group(&g, ENUMERATION_CAP).unwrap();
    let part = conjugacy_classes(&table);
    let mut bytes = encode(&table, &part);
    assert!(decode(&g, &bytes).is_ok());
    bytes[4..8].copy_from_slice(&(VERSION + 1).to_le_bytes());
    reseal(&mut bytes);
    assert!(decode(&g, &bytes).unwrap_err().contains("header"));

    let dir = tempfile::tempdir().unwrap();
    let cache = Cache::new(Some(dir.path().to_path_buf()));
    std::fs::write(cache.path(&g).unwrap(), &bytes).unwrap();
    assert!(matches!(cache.load(&g), Lookup::Miss(Some(_))));
}

#[test]
fn corrupt_or_foreign_files_are_rejected() {
    let g = group(RingKind::Witt, 2, 2);
    let table = enumerate_group(&g, ENUMERATION_CAP).unwrap();
    let part = conjugacy_classes(&table);
    let bytes = encode(&table, &part);

    let mut flipped = bytes.clone();
    let mid = flipped.len() / 2;
    flipped[mid] ^= 0x40;
    assert!(decode(&g, &flipped).unwrap_err().contains("checksum"));

    assert!(decode(&g, &bytes[..bytes.len() - 9]).is_err());
    assert!(decode(&g, b"nope").is_err());
    // Same shape, other ring kind.
    assert!(decode(&group(RingKind::Poly, 2, 2), &bytes).is_err());
}
