//! Brute-force computations in the group algebra `F_p G` of a small group: the commutator
//! subspace `[A,A]`, the Kuelshammer spaces `T_n(A) = {x : x^{p^n} in [A,A]}` and their
//! perps under the symmetrizing form `(g, h) = [g = h^{-1}]`.
//!
//! These are computed by plain linear algebra, independently of the class-counting formulas
//! in [`crate::classes`], and [`oracle_profile`] cross-checks the two.
//!
//! `T(A)`, the union of the chain, equals `Rad(A) + [A,A]`; the radical is not computed here.

pub mod linalg;

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::is_prime;
use crate::classes::KuelshammerProfile;
use crate::enumerate::ElementTable;
use crate::error::{Error, Result};
pub use linalg::{nullspace, rank, Subspace};

/// Default cap on `|G|` for dense algebra tables.
pub const ORACLE_CAP: usize = 300;

/// `F_p G` as a dense multiplication table on the group basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraTable {
    dim: usize,
    p: u64,
    mult: Vec<u32>,
    inv: Vec<u32>,
}

impl AlgebraTable {
    /// Builds the table from an enumerated group by direct multiplication.
    pub fn from_group(table: &ElementTable, p: u64, cap: usize) -> Result<Self> {
        let dim = table.size();
        if dim > cap {
            return Err(Error::CapExceeded {
                size: dim as u128,
                cap: cap as u128,
            });
        }
        let mut mult = Vec::with_capacity(dim * dim);
        for i in 0..dim as u32 {
            for j in 0..dim as u32 {
                mult.push(table.mul(i, j));
            }
        }
        let inv = (0..dim as u32).map(|i| table.inverse(i)).collect();
        AlgebraTable::from_parts(dim, p, mult, inv)
    }

    /// Validates a table given as `mult[i * dim + j] = id(g_i g_j)`; identity must be id 0.
    pub fn from_parts(dim: usize, p: u64, mult: Vec<u32>, inv: Vec<u32>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= 1 << 32 {
            return Err(Error::InvalidParameter(
                "oracle prime must be below 2^32".into(),
            ));
        }
        if dim == 0 || mult.len() != dim * dim || inv.len() != dim {
            return Err(Error::InvalidParameter(
                "table shape does not match dim".into(),
            ));
        }
        if mult.iter().chain(&inv).any(|&k| k as usize >= dim) {
            return Err(Error::InvalidParameter("table entry out of range".into()));
        }
        let t = AlgebraTable { dim, p, mult, inv };
        for g in 0..dim {
            if t.product(0, g) != g || t.product(g, 0) != g || t.product(g, t.inv[g] as usize) != 0
            {
                return Err(Error::Inconsistent(format!(
                    "element {g}: identity or inverse fails"
                )));
            }
        }
        Ok(t)
    }

    /// The cyclic group of order `n`, with `g^i` at id `i`.
    pub fn cyclic(n: usize, p: u64) -> Result<Self> {
        let mult = (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect();
        let inv = (0..n).map(|i| ((n - i) % n) as u32).collect();
        AlgebraTable::from_parts(n, p, mult, inv)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// Id of `g_i g_j`.
    pub fn product(&self, i: usize, j: usize) -> usize {
        self.mult[i * self.dim + j] as usize
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inv[i] as usize
    }

    pub fn basis_vector(&self, g: usize) -> Vec<u64> {
        let mut v = vec![0; self.dim];
        v[g] = 1;
        v
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).map(|(a, b)| (a + b) % self.p).collect()
    }

    pub fn sub(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter()
            .zip(y)
            .map(|(a, b)| (a + self.p - b) % self.p)
            .collect()
    }

    pub fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut out = vec![0u64; self.dim];
        for (i, &a) in x.iter().enumerate().filter(|(_, &a)| a != 0) {
            let row = &self.mult[i * self.dim..(i + 1) * self.dim];
            for (&k, &b) in row.iter().zip(y).filter(|(_, &b)| b != 0) {
                let slot = &mut out[k as usize];
                *slot = (*slot + a * b) % p;
            }
        }
        out
    }

    pub fn pow(&self, x: &[u64], mut e: u128) -> Vec<u64> {
        let mut result = self.basis_vector(0);
        let mut base = x.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// `x^{p^n}` by `n` successive `p`-th powers.
    pub fn pow_p_n(&self, x: &[u64], n: u32) -> Vec<u64> {
        (0..n).fold(x.to_vec(), |acc, _| self.pow(&acc, self.p as u128))
    }

    /// `(x, y) = sum_g x_g y_{g^{-1}}`.
    pub fn form(&self, x: &[u64], y: &[u64]) -> u64 {
        (0..self.dim).fold(0, |acc, g| (acc + x[g] * y[self.inverse(g)]) % self.p)
    }

    /// Associativity on every triple when `|G| <= 64`, otherwise on `samples` seeded triples.
    /// Returns the first failing triple.
    pub fn check_associativity(&self, samples: usize, seed: u64) -> Option<(usize, usize, usize)> {
        let assoc =
            |a, b, c| self.product(self.product(a, b), c) == self.product(a, self.product(b, c));
        if self.dim <= 64 {
            for a in 0..self.dim {
                for b in 0..self.dim {
                    for c in 0..self.dim {
                        if !assoc(a, b, c) {
                            return Some((a, b, c));
                        }
                    }
                }
            }
            return None;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples)
            .map(|_| {
                (
                    rng.gen_range(0..self.dim),
                    rng.gen_range(0..self.dim),
                    rng.gen_range(0..self.dim),
                )
            })
            .find(|&(a, b, c)| !assoc(a, b, c))
    }

    fn random_vector(&self, rng: &mut ChaCha8Rng) -> Vec<u64> {
        (0..self.dim).map(|_| rng.gen_range(0..self.p)).collect()
    }
}

/// Span of `e_{gh} - e_{hg}` over all pairs, each unordered pair of products taken once.
pub fn commutator_space(alg: &AlgebraTable) -> Subspace {
    let n = alg.dim();
    let mut seen = hashbrown::HashSet::new();
    let mut space = Subspace::zero(n, alg.p());
    for g in 0..n {
        for h in 0..n {
            let (a, b) = (alg.product(g, h), alg.product(h, g));
            if a == b || !seen.insert((a.min(b), a.max(b))) {
                continue;
            }
            let mut v = vec![0; n];
            v[a] = 1;
            v[b] = alg.p() - 1;
            space.insert(v);
        }
    }
    space
}

/// `T_n(A)`: the kernel of `x -> x^{p^n} mod [A,A]`, which is `F_p`-linear. The linear map
/// is assembled from the images of the group basis; every returned basis vector is then
/// checked by raising it to the `p^n`-th power in the algebra.
pub fn kuelshammer_space(alg: &AlgebraTable, commutators: &Subspace, n: u32) -> Result<Subspace> {
    let dim = alg.dim();
    let columns: Vec<Vec<u64>> = (0..dim)
        .map(|g| commutators.reduce(&alg.pow_p_n(&alg.basis_vector(g), n)))
        .collect();
    let rows: Vec<Vec<u64>> = (0..dim)
        .map(|i| columns.iter().map(|c| c[i]).collect())
        .collect();
    let kernel = nullspace(&rows, dim, alg.p());
    for (k, v) in kernel.basis().iter().enumerate() {
        if !commutators.contains(&alg.pow_p_n(v, n)) {
            return Err(Error::Inconsistent(format!(
                "basis vector {k} of T_{n} does not power into [A,A]"
            )));
        }
    }
    Ok(kernel)
}

/// `S^perp` under the symmetrizing form.
pub fn perp(alg: &AlgebraTable, s: &Subspace) -> Subspace {
    let rows: Vec<Vec<u64>> = s
        .basis()
        .iter()
        .map(|v| (0..alg.dim()).map(|g| v[alg.inverse(g)]).collect())
        .collect();
    nullspace(&rows, alg.dim(), alg.p())
}

/// `(x + y)^p - x^p - y^p in [A,A]` on seeded random pairs; returns the first failing pair index.
pub fn check_power_additivity(
    alg: &AlgebraTable,
    commutators: &Subspace,
    pairs: usize,
    seed: u64,
) -> Option<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = alg.p() as u128;
    (0..pairs).find(|_| {
        let x = alg.random_vector(&mut rng);
        let y = alg.random_vector(&mut rng);
        let lhs = alg.pow(&alg.add(&x, &y), p);
        let rhs = alg.add(&alg.pow(&x, p), &alg.pow(&y, p));
        !commutators.contains(&alg.sub(&lhs, &rhs))
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleOutcome {
    /// `dim T_n(A)^perp` from linear algebra, `n = 0..=stab_index`.
    pub dims: Vec<usize>,
    /// The same sequence from counting classes hit by power maps.
    pub expected: Vec<usize>,
    pub commutator_dim: usize,
    /// First `n` at which the two sequences differ.
    pub first_mismatch: Option<usize>,
    /// Descriptions of every failed structural check.
    pub failures: Vec<String>,
}

impl OracleOutcome {
    pub fn passed(&self) -> bool {
        self.first_mismatch.is_none() && self.failures.is_empty()
    }
}

/// Computes `dim T_n(A)^perp` until the chain `T_0 <= T_1 <= ...` stops growing and compares
/// with the class-count profile. Also checks `dim [A,A] + #classes = |G|`, the chain
/// containments on both sides, non-degeneracy of the form, that `T_0^perp` is central, and
/// that the terminal dimension is the number of `p`-regular classes.
pub fn oracle_profile(
    alg: &AlgebraTable,
    num_classes: usize,
    expected: &KuelshammerProfile,
) -> Result<OracleOutcome> {
    if expected.p != alg.p() {
        return Err(Error::InvalidParameter(
            "profile and algebra use different primes".into(),
        ));
    }
    let dim = alg.dim();
    let mut failures = Vec::new();
    let commutators = commutator_space(alg);
    if commutators.rank() + num_classes != dim {
        failures.push(format!(
            "dim [A,A] = {} but |G| - #classes = {}",
            commutators.rank(),
            dim - num_classes
        ));
    }

    let center = perp(alg, &commutators);
    for (k, z) in center.basis().iter().enumerate() {
        if (0..dim).any(|g| {
            let e = alg.basis_vector(g);
            alg.mul(z, &e) != alg.mul(&e, z)
        }) {
            failures.push(format!("basis vector {k} of [A,A]^perp is not central"));
            break;
        }
    }

    // The chain stabilises after at most log_p |G| steps.
    let max_steps = (usize::BITS - dim.leading_zeros()) as usize + 1;
    let mut spaces = vec![commutators.clone()];
    let mut perps = vec![center];
    loop {
        let n = spaces.len() as u32;
        let next = kuelshammer_space(alg, &commutators, n)?;
        let prev = spaces.last().expect("non-empty");
        if !next.contains_subspace(prev) {
            failures.push(format!("T_{} is not contained in T_{n}", n - 1));
        }
        if next.rank() == prev.rank() {
            break;
        }
        let next_perp = perp(alg, &next);
        if !perps
            .last()
            .expect("non-empty")
            .contains_subspace(&next_perp)
        {
            failures.push(format!("T_{n}^perp is not contained in T_{}^perp", n - 1));
        }
        spaces.push(next);
        perps.push(next_perp);
        if spaces.len() > max_steps {
            failures.push("Kuelshammer chain did not stabilise".into());
            break;
        }
    }
    for (n, (s, sp)) in spaces.iter().zip(&perps).enumerate() {
        if s.rank() + sp.rank() != dim {
            failures.push(format!("dim T_{n} + dim T_{n}^perp != |G|"));
        }
    }

    let dims: Vec<usize> = perps.iter().map(Subspace::rank).collect();
    let first_mismatch =
        (0..dims.len().max(expected.dims.len())).find(|&n| dims.get(n) != expected.dims.get(n));
    let terminal = *dims.last().expect("non-empty");
    if terminal != expected.p_regular_classes {
        failures.push(format!(
            "terminal dimension {terminal} but {} p-regular classes",
            expected.p_regular_classes
        ));
    }
    Ok(OracleOutcome {
        dims,
        expected: expected.dims.clone(),
        commutator_dim: commutators.rank(),
        first_mismatch,
        failures,
    })
}
