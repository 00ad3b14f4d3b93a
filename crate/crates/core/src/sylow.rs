//! The Sylow `p`-subgroup of `G(O_r)` lying over the upper unitriangular matrices of
//! `G(F_q)`, and `p`-exponents computed from it.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::ops::Range;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::ceil_log;
use crate::error::{Error, Result};
use crate::group::{Family, GroupDesc};
use crate::mat::{Mat, MatSpace};
use crate::ring::{RElem, RingKind};

/// Exhaustive Sylow scans are refused above this many elements.
pub const SYLOW_CAP: u128 = 20_000_000;

/// Indexed enumeration of the preimage of the upper unitriangular group under `G(O_r) -> G(F_q)`.
///
/// An index is a mixed-radix number: first the `n(n-1)/2` strictly-upper residues (base `q`),
/// then one congruence-kernel coordinate `pi*y` per free entry (base `q^{r-1}`). For SL the
/// `(0,0)` entry is not free; it is solved from `det = 1`.
#[derive(Debug, Clone)]
pub struct SylowStream<'g> {
    group: &'g GroupDesc,
    upper: Vec<(usize, usize)>,
    kernel: Vec<(usize, usize)>,
    len: u128,
}

impl<'g> SylowStream<'g> {
    pub fn new(group: &'g GroupDesc) -> Result<Self> {
        let n = group.n();
        let ring = group.ring();
        let upper: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        let kernel: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .filter(|&pos| !(group.family() == Family::SL && pos == (0, 0)))
            .collect();
        let overflow = || Error::InvalidParameter("Sylow subgroup size overflows 128 bits".into());
        let q = ring.q() as u128;
        let kernel_base = q.checked_pow(ring.r() - 1).ok_or_else(overflow)?;
        let len = q
            .checked_pow(upper.len() as u32)
            .and_then(|a| {
                kernel_base
                    .checked_pow(kernel.len() as u32)
                    .and_then(|b| a.checked_mul(b))
            })
            .ok_or_else(overflow)?;
        Ok(SylowStream {
            group,
            upper,
            kernel,
            len,
        })
    }

    /// `q^{n(n-1)/2} q^{(r-1)d}`.
    pub fn len(&self) -> u128 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, mut index: u128) -> Mat {
        let ring = self.group.ring();
        let space = self.group.space();
        let q = ring.q() as u128;
        let kernel_base = q.pow(ring.r() - 1);
        let mut m = space.identity();
        for &(i, j) in &self.upper {
            let d = (index % q) as u64;
            index /= q;
            m.set(i, j, ring.lift(crate::field::FqElem(d)));
        }
        for &(i, j) in &self.kernel {
            let k = (index % kernel_base) as u64;
            index /= kernel_base;
            let v = ring.add(m.get(i, j), ring.pi_multiple(k));
            m.set(i, j, v);
        }
        if self.group.family() == Family::SL {
            solve_corner(&space, &mut m);
        }
        m
    }

    pub fn iter(&self) -> impl Iterator<Item = Mat> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    /// Splits `0..len` into `parts` contiguous ranges.
    pub fn chunks(&self, parts: usize) -> Vec<Range<u128>> {
        let parts = parts.max(1) as u128;
        let step = self.len.div_ceil(parts);
        (0..parts)
            .map(|k| (k * step).min(self.len)..((k + 1) * step).min(self.len))
            .filter(|r| !r.is_empty())
            .collect()
    }
}

/// Sets the `(0,0)` entry so that `det = 1`. The determinant is affine in that entry
/// with slope the complementary minor, which is a unit here.
fn solve_corner(space: &MatSpace<'_>, m: &mut Mat) {
    let ring = space.ring();
    let n = space.n();
    if n == 1 {
        m.set(0, 0, ring.one());
        return;
    }
    m.set(0, 0, ring.zero());
    let rest = space.det(m).expect("square");
    let minor_entries: Vec<RElem> = (1..n)
        .flat_map(|i| (1..n).map(move |j| (i, j)))
        .map(|(i, j)| m.get(i, j))
        .collect();
    let minor = Mat::from_entries(n - 1, minor_entries).expect("square minor");
    let slope = MatSpace::new(ring, n - 1).det(&minor).expect("square");
    let inv = ring
        .inv(slope)
        .expect("minor reduces to a unitriangular matrix");
    m.set(0, 0, ring.mul(ring.sub(ring.one(), rest), inv));
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Exhaustive,
    Sampled { trials: u64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentResult {
    /// The largest order found among Sylow elements; the exponent itself when exhaustive.
    pub value: u128,
    pub method: Method,
    /// A Sylow element of order `value`.
    pub witness: Mat,
    pub witness_index: u128,
    pub upper_bound: u128,
    pub bound_note: String,
    pub elements_examined: u128,
}

/// Best `(order, index)` over a range of the stream; ties keep the smaller index.
pub fn max_order_in(stream: &SylowStream<'_>, range: Range<u128>) -> Result<(u128, u128)> {
    let mut best = (0u128, range.start);
    for idx in range {
        let m = stream.get(idx);
        let order = stream.group.p_element_order(&m).ok_or_else(|| {
            Error::Inconsistent(format!("Sylow element {idx} is not a p-element"))
        })?;
        if order > best.0 {
            best = (order, idx);
        }
    }
    Ok(best)
}

/// Combines per-chunk results; independent of how the stream was partitioned.
pub fn merge_best(a: (u128, u128), b: (u128, u128)) -> (u128, u128) {
    match a.0.cmp(&b.0) {
        core::cmp::Ordering::Greater => a,
        core::cmp::Ordering::Less => b,
        core::cmp::Ordering::Equal => (a.0, a.1.min(b.1)),
    }
}

/// Upper bound on `exp_p(G(O_r))` with its derivation.
pub fn exponent_upper_bound(group: &GroupDesc) -> (u128, String) {
    let ring = group.ring();
    let p = ring.p();
    let r = ring.r();
    let base = ceil_log(p, group.n() as u64);
    let iterated = (p as u128).pow(r - 1 + base);
    let note = format!("p^(r-1) * exp_p(G(F_q)) = {p}^{} * {p}^{base}", r - 1);
    if ring.kind() == RingKind::Poly && p >= group.n() as u64 {
        let poly = (p as u128).pow(ceil_log(p, r as u64) + 1);
        if poly < iterated {
            return (
                poly,
                format!(
                    "p^(ceil(log_p r) + 1) = {p}^{} (p >= n)",
                    ceil_log(p, r as u64) + 1
                ),
            );
        }
    }
    (iterated, note)
}

pub fn p_exponent(group: &GroupDesc, strategy: Strategy) -> Result<ExponentResult> {
    let stream = SylowStream::new(group)?;
    let (upper_bound, bound_note) = exponent_upper_bound(group);
    let (best, method, examined) = match strategy {
        Strategy::Exhaustive => {
            if stream.len() > SYLOW_CAP {
                return Err(Error::CapExceeded {
                    size: stream.len(),
                    cap: SYLOW_CAP,
                });
            }
            (
                max_order_in(&stream, 0..stream.len())?,
                Method::Exhaustive,
                stream.len(),
            )
        }
        Strategy::Sampled { trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut best = (0u128, 0u128);
            for _ in 0..trials.max(1) {
                let idx = rng.gen_range(0..stream.len());
                best = merge_best(best, max_order_in(&stream, idx..idx + 1)?);
            }
            (best, Method::Sampled, trials.max(1) as u128)
        }
    };
    Ok(ExponentResult {
        value: best.0,
        method,
        witness: stream.get(best.1),
        witness_index: best.1,
        upper_bound,
        bound_note,
        elements_examined: examined,
    })
}
