//! Dense linear algebra over a prime field `F_p`, `p < 2^32`.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::pow_mod;

/// A subspace of `F_p^dim`, stored as a basis in reduced row echelon form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    dim: usize,
    p: u64,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

impl Subspace {
    pub fn zero(dim: usize, p: u64) -> Self {
        Subspace {
            dim,
            p,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn whole(dim: usize, p: u64) -> Self {
        let rows = (0..dim)
            .map(|i| {
                let mut r = vec![0; dim];
                r[i] = 1;
                r
            })
            .collect();
        Subspace {
            dim,
            p,
            rows,
            pivots: (0..dim).collect(),
        }
    }

    /// Row space of `vectors`.
    pub fn span<I: IntoIterator<Item = Vec<u64>>>(dim: usize, p: u64, vectors: I) -> Self {
        let mut s = Subspace::zero(dim, p);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<u64>] {
        &self.rows
    }

    /// Canonical representative of `v` modulo this subspace: zero at every pivot column.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut v: Vec<u64> = v.iter().map(|x| x % p).collect();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let c = v[pc];
            if c != 0 {
                let neg = p - c;
                for (x, &r) in v.iter_mut().zip(row) {
                    if r != 0 {
                        *x = (*x + neg * r) % p;
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Adds `v` to the spanning set; returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<u64>) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let p = self.p;
        let mut v = self.reduce(&v);
        let Some(pc) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let s = inv_mod(v[pc], p);
        for x in v.iter_mut() {
            *x = *x * s % p;
        }
        // clear the new pivot column from existing rows
        for row in self.rows.iter_mut() {
            let c = row[pc];
            if c != 0 {
                let neg = p - c;
                for (x, &r) in row.iter_mut().zip(&v) {
                    if r != 0 {
                        *x = (*x + neg * r) % p;
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, v);
        true
    }
}

/// Null space `{x : M x = 0}` of a matrix given by its rows, each of length `cols`.
pub fn nullspace(rows: &[Vec<u64>], cols: usize, p: u64) -> Subspace {
    let echelon = Subspace::span(cols, p, rows.iter().cloned());
    let pivot_set: Vec<bool> = {
        let mut s = vec![false; cols];
        for &c in &echelon.pivots {
            s[c] = true;
        }
        s
    };
    let mut out = Subspace::zero(cols, p);
    for free in (0..cols).filter(|&c| !pivot_set[c]) {
        let mut v = vec![0; cols];
        v[free] = 1;
        for (row, &pc) in echelon.rows.iter().zip(&echelon.pivots) {
            v[pc] = (p - row[free]) % p;
        }
        out.insert(v);
    }
    out
}

pub fn rank(rows: &[Vec<u64>], cols: usize, p: u64) -> usize {
    Subspace::span(cols, p, rows.iter().cloned()).rank()
}
