//! Consistency checks for a [`RingDesc`], exhaustive on small rings and sampled otherwise.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::FqElem;
use crate::ring::{RElem, RingDesc, RingKind};

/// Element-wise checks run over every element up to this ring size.
pub const EXHAUSTIVE_ELEMENTS: u64 = 10_000;
/// Pairwise laws run over all pairs up to this ring size.
pub const EXHAUSTIVE_PAIRS: u64 = 256;
/// Three-variable laws run over all triples up to this ring size.
pub const EXHAUSTIVE_TRIPLES: u64 = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    /// Exhaustive or the number of samples.
    pub coverage: String,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfTestReport {
    pub kind: RingKind,
    pub p: u64,
    pub f: u32,
    pub r: u32,
    pub characteristic: u64,
    pub cardinality: u64,
    pub unit_count: Option<u64>,
    pub checks: Vec<CheckOutcome>,
}

impl SelfTestReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

struct Runner<'a> {
    ring: &'a RingDesc,
    rng: ChaCha8Rng,
    samples: usize,
    checks: Vec<CheckOutcome>,
}

impl Runner<'_> {
    fn elem(&mut self) -> RElem {
        RElem(self.rng.gen_range(0..self.ring.size()))
    }

    fn record(&mut self, name: &'static str, coverage: String, witness: Option<String>) {
        self.checks.push(CheckOutcome {
            name,
            passed: witness.is_none(),
            coverage,
            witness,
        });
    }

    fn over_singles(
        &mut self,
        name: &'static str,
        check: impl Fn(&RingDesc, RElem) -> Option<String>,
    ) {
        let ring = self.ring;
        let (cov, witness) = if ring.size() <= EXHAUSTIVE_ELEMENTS {
            (
                "exhaustive".into(),
                ring.elements().find_map(|a| check(ring, a)),
            )
        } else {
            let picks: Vec<RElem> = (0..self.samples).map(|_| self.elem()).collect();
            (
                format!("{} samples", self.samples),
                picks.into_iter().find_map(|a| check(ring, a)),
            )
        };
        self.record(name, cov, witness);
    }

    fn over_pairs(
        &mut self,
        name: &'static str,
        check: impl Fn(&RingDesc, RElem, RElem) -> Option<String>,
    ) {
        let ring = self.ring;
        let (cov, witness) = if ring.size() <= EXHAUSTIVE_PAIRS {
            let w = ring
                .elements()
                .find_map(|a| ring.elements().find_map(|b| check(ring, a, b)));
            ("exhaustive".into(), w)
        } else {
            let picks: Vec<(RElem, RElem)> = (0..self.samples)
                .map(|_| (self.elem(), self.elem()))
                .collect();
            (
                format!("{} samples", self.samples),
                picks.into_iter().find_map(|(a, b)| check(ring, a, b)),
            )
        };
        self.record(name, cov, witness);
    }

    fn over_triples(
        &mut self,
        name: &'static str,
        check: impl Fn(&RingDesc, RElem, RElem, RElem) -> Option<String>,
    ) {
        let ring = self.ring;
        let (cov, witness) = if ring.size() <= EXHAUSTIVE_TRIPLES {
            let w = ring.elements().find_map(|a| {
                ring.elements()
                    .find_map(|b| ring.elements().find_map(|c| check(ring, a, b, c)))
            });
            ("exhaustive".into(), w)
        } else {
            let picks: Vec<(RElem, RElem, RElem)> = (0..self.samples)
                .map(|_| (self.elem(), self.elem(), self.elem()))
                .collect();
            (
                format!("{} samples", self.samples),
                picks.into_iter().find_map(|(a, b, c)| check(ring, a, b, c)),
            )
        };
        self.record(name, cov, witness);
    }
}

fn show(ring: &RingDesc, xs: &[RElem]) -> String {
    let parts: Vec<String> = xs.iter().map(|&a| ring.render(a)).collect();
    parts.join(", ")
}

/// Runs the ring axioms and structural checks on `ring`.
pub fn ring_selftest(ring: &RingDesc, samples: usize, seed: u64) -> SelfTestReport {
    let mut run = Runner {
        ring,
        rng: ChaCha8Rng::seed_from_u64(seed),
        samples,
        checks: Vec::new(),
    };
    let q = ring.q();
    let r = ring.r();

    run.over_triples("add-associative", |g, a, b, c| {
        (g.add(g.add(a, b), c) != g.add(a, g.add(b, c))).then(|| show(g, &[a, b, c]))
    });
    run.over_triples("mul-associative", |g, a, b, c| {
        (g.mul(g.mul(a, b), c) != g.mul(a, g.mul(b, c))).then(|| show(g, &[a, b, c]))
    });
    run.over_triples("distributive", |g, a, b, c| {
        (g.mul(a, g.add(b, c)) != g.add(g.mul(a, b), g.mul(a, c))).then(|| show(g, &[a, b, c]))
    });
    run.over_pairs("commutative", |g, a, b| {
        (g.add(a, b) != g.add(b, a) || g.mul(a, b) != g.mul(b, a)).then(|| show(g, &[a, b]))
    });
    run.over_singles("identities", |g, a| {
        let ok =
            g.add(a, g.zero()) == a && g.mul(a, g.one()) == a && g.add(a, g.neg(a)) == g.zero();
        (!ok).then(|| show(g, &[a]))
    });

    // additive order of 1
    let expected_char = match ring.kind() {
        RingKind::Witt => ring.characteristic(),
        RingKind::Poly => ring.p(),
    };
    let mut acc = ring.one();
    let mut order = 1u64;
    while acc != ring.zero() {
        acc = ring.add(acc, ring.one());
        order += 1;
    }
    run.record(
        "characteristic",
        format!("expected {expected_char}"),
        (order != expected_char).then(|| format!("additive order of 1 is {order}")),
    );

    // cardinality: coefficient forms are distinct and round-trip
    let expected_size = q.checked_pow(r).unwrap_or(0);
    let card_witness = if ring.size() != expected_size {
        Some(format!("size {} != q^r = {}", ring.size(), expected_size))
    } else if ring.size() <= EXHAUSTIVE_ELEMENTS {
        ring.elements()
            .find(|&a| ring.from_coeffs(&ring.coeffs(a)) != Ok(a))
            .map(|a| format!("coefficient round trip fails at {}", ring.render(a)))
    } else {
        None
    };
    run.record(
        "cardinality",
        format!("q^r = {expected_size}"),
        card_witness,
    );

    let pi = ring.uniformizer();
    let nilpotency = if ring.pow(pi, r as u128) != ring.zero() {
        Some(String::from("pi^r != 0"))
    } else if r > 1 && ring.pow(pi, (r - 1) as u128) == ring.zero() {
        Some(String::from("pi^(r-1) = 0"))
    } else {
        None
    };
    run.record("uniformizer-nilpotency", format!("r = {r}"), nilpotency);

    let mut unit_count = None;
    if ring.size() <= EXHAUSTIVE_ELEMENTS {
        let count = ring.elements().filter(|&a| ring.is_unit(a)).count() as u64;
        unit_count = Some(count);
        let expected = q.pow(r - 1) * (q - 1);
        run.record(
            "unit-group-order",
            format!("expected q^(r-1)(q-1) = {expected}"),
            (count != expected).then(|| format!("counted {count} units")),
        );
    }
    run.over_singles("inverse", |g, a| {
        if !g.is_unit(a) {
            return g
                .inv(a)
                .is_ok()
                .then(|| format!("non-unit {} inverted", g.render(a)));
        }
        match g.inv(a) {
            Ok(b) if g.mul(a, b) == g.one() => None,
            _ => Some(show(g, &[a])),
        }
    });
    run.over_singles("valuation", |g, a| {
        let v = g.valuation(a);
        let ok = if v == g.r() {
            a == g.zero()
        } else {
            g.is_unit(g.shift_down(a, v)) && g.mul(g.pi_pow(v), g.shift_down(a, v)) == a
        };
        (!ok).then(|| show(g, &[a]))
    });

    // reduction O_r -> O_s is a ring homomorphism for every s
    let targets: Vec<RingDesc> = (1..=r).filter_map(|s| ring.truncate(s).ok()).collect();
    run.over_pairs("reduce-homomorphism", |g, a, b| {
        for (i, t) in targets.iter().enumerate() {
            let s = i as u32 + 1;
            let red = |x| g.reduce(x, s).expect("s in range");
            if red(g.add(a, b)) != t.add(red(a), red(b))
                || red(g.mul(a, b)) != t.mul(red(a), red(b))
            {
                return Some(format!("s = {s}: {}", show(g, &[a, b])));
            }
        }
        (g.reduce(a, r).ok() != Some(a)).then(|| format!("reduce to r moved {}", g.render(a)))
    });

    // Teichmueller section
    let field = ring.field();
    let fq: Vec<FqElem> = if q <= EXHAUSTIVE_ELEMENTS {
        field.elements().collect()
    } else {
        (0..samples)
            .map(|_| FqElem(run.rng.gen_range(0..q)))
            .collect()
    };
    let teich_witness = fq.iter().find_map(|&a| {
        let ta = ring.teichmuller(a);
        if ring.pow(ta, q as u128) != ta || ring.residue(ta) != a {
            return Some(format!("tau({})", a.0));
        }
        None
    });
    run.record(
        "teichmuller-section",
        format!("{} residues", fq.len()),
        teich_witness,
    );
    let pairs: Vec<(FqElem, FqElem)> = if q * q <= EXHAUSTIVE_ELEMENTS {
        fq.iter()
            .flat_map(|&a| fq.iter().map(move |&b| (a, b)))
            .collect()
    } else {
        (0..samples)
            .map(|_| {
                (
                    FqElem(run.rng.gen_range(0..q)),
                    FqElem(run.rng.gen_range(0..q)),
                )
            })
            .collect()
    };
    let mult_witness = pairs.iter().find_map(|&(a, b)| {
        let lhs = ring.teichmuller(field.mul(a, b));
        let rhs = ring.mul(ring.teichmuller(a), ring.teichmuller(b));
        (lhs != rhs).then(|| format!("tau({}*{})", a.0, b.0))
    });
    run.record(
        "teichmuller-multiplicative",
        format!("{} pairs", pairs.len()),
        mult_witness,
    );

    run.over_singles("witt-digits-round-trip", |g, a| {
        let digits = g.witt_digits(a);
        (g.digits_to_elem(&digits) != Ok(a)).then(|| show(g, &[a]))
    });

    if ring.kind() == RingKind::Witt && ring.f() == 1 {
        let m = ring.characteristic();
        run.over_pairs("integer-model", |g, a, b| {
            let ok = g.add(a, b).0 == (a.0 + b.0) % m
                && g.mul(a, b).0 == ((a.0 as u128 * b.0 as u128) % m as u128) as u64;
            (!ok).then(|| show(g, &[a, b]))
        });
    }

    SelfTestReport {
        kind: ring.kind(),
        p: ring.p(),
        f: ring.f(),
        r,
        characteristic: order,
        cardinality: ring.size(),
        unit_count,
        checks: run.checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn characteristic_examples() {
        let w = RingDesc::new(RingKind::Witt, 2, 1, 3).unwrap();
        let rep = ring_selftest(&w, 100, 1);
        assert!(rep.passed(), "{:?}", rep.failures().collect::<Vec<_>>());
        assert_eq!(rep.characteristic, 8);

        let p = RingDesc::new(RingKind::Poly, 2, 1, 3).unwrap();
        let rep = ring_selftest(&p, 100, 1);
        assert!(rep.passed());
        assert_eq!(rep.characteristic, 2);

        let g = RingDesc::new(RingKind::Witt, 3, 2, 2).unwrap();
        let rep = ring_selftest(&g, 100, 1);
        assert!(rep.passed());
        assert_eq!(rep.cardinality, 81);
        assert_eq!(rep.unit_count, Some(72));
    }

    #[test]
    fn sampled_mode_on_large_ring() {
        let w = RingDesc::new(RingKind::Witt, 101, 1, 3).unwrap();
        let rep = ring_selftest(&w, 200, 7);
        assert!(rep.passed());
        assert!(rep.checks.iter().any(|c| c.coverage == "200 samples"));
    }
}
