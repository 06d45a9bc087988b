//! Conjugacy-class enumeration of the trace -1 slice of `SL(2, d̄)`.
//!
//! Classes are computed as orbit closures under conjugation by the standard
//! generators `S` and `T`, which generate `SL(2, Z_n)` for every `n`; since the
//! group is finite, conjugating by the generators alone already reaches the
//! full class of each element.

use crate::modnum::{gcd, inverse_mod};
use crate::sl2::SlMat;
use serde::Serialize;
use std::collections::{HashSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClassError {
    #[error("dimension {0} must be at least 2")]
    DimensionTooSmall(u64),
}

/// A dimension `d >= 2` together with `d̄ = d` (d odd) or `2d` (d even), the
/// modulus at which the symplectic part of the Clifford group lives.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Dimension {
    d: u64,
    dbar: u64,
}

impl Dimension {
    pub fn new(d: u64) -> Result<Self, ClassError> {
        if d < 2 {
            return Err(ClassError::DimensionTooSmall(d));
        }
        let dbar = if d % 2 == 1 { d } else { 2 * d };
        Ok(Dimension { d, dbar })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn dbar(&self) -> u64 {
        self.dbar
    }
}

/// One conjugacy class: its lexicographically smallest member and its size.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassEntry {
    pub rep: [u64; 4],
    pub size: u64,
}

/// Decomposition of `{ M ∈ SL(2, d̄) : Tr(M) ≡ -1 mod d }` into conjugacy
/// classes under the full `SL(2, d̄)` conjugation action.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassTable {
    pub d: u64,
    pub dbar: u64,
    pub t_count: u64,
    pub classes: Vec<ClassEntry>,
}

/// The conjectured closed form for the class count: 3 when `3|d` but `9∤d`,
/// 2 when `9|d`, 1 otherwise.
pub fn t_count_formula(d: u64) -> u64 {
    if d % 9 == 0 {
        2
    } else if d % 3 == 0 {
        3
    } else {
        1
    }
}

/// `|SL(2, Z_n)| = n³ · Π_{p|n} (1 - p⁻²)`, exactly.
pub fn sl2_order(n: u64) -> u64 {
    assert!(n >= 2);
    let mut order = (n as u128).pow(3);
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            let p2 = (p as u128) * (p as u128);
            order = order / p2 * (p2 - 1);
        }
        p += 1;
    }
    if m > 1 {
        let p2 = (m as u128) * (m as u128);
        order = order / p2 * (p2 - 1);
    }
    order as u64
}

/// Order of `⟨S, T⟩` by BFS closure under right multiplication; a completeness
/// anchor for the enumeration machinery (it must equal [`sl2_order`]).
pub fn sl2_bfs_order(n: u64) -> u64 {
    let gens = [SlMat::gen_s(n), SlMat::gen_t(n)];
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    let id = SlMat::identity(n);
    seen.insert(pack(&id.entries(), n));
    queue.push_back(id);
    while let Some(m) = queue.pop_front() {
        for g in &gens {
            let next = m.mul(g).unwrap();
            if seen.insert(pack(&next.entries(), n)) {
                queue.push_back(next);
            }
        }
    }
    seen.len() as u64
}

fn pack(e: &[u64; 4], n: u64) -> u64 {
    ((e[0] * n + e[1]) * n + e[2]) * n + e[3]
}

// All matrices in SL(2, n) with trace in `targets`, enumerated by solving
// bc ≡ ad - 1 (mod n) row by row.
fn trace_slice(n: u64, targets: &[u64]) -> Vec<[u64; 4]> {
    let mut out = Vec::new();
    for a in 0..n {
        for &t in targets {
            let d = (t + n - a % n) % n;
            let m = (crate::modnum::mul_mod(a, d, n) + n - 1 % n) % n;
            for b in 0..n {
                let g = gcd(b, n); // gcd(0, n) = n
                if m % g != 0 {
                    continue;
                }
                let ng = n / g;
                let c0 = if ng == 1 {
                    0
                } else {
                    crate::modnum::mul_mod(
                        inverse_mod((b / g) as i64, ng).expect("b/g coprime to n/g"),
                        (m / g) % ng,
                        ng,
                    )
                };
                for k in 0..g {
                    out.push([a, b, c0 + k * ng, d]);
                }
            }
        }
    }
    out
}

// Conjugation of packed entries by a fixed (g, g⁻¹) pair, all mod n.
fn conj(e: &[u64; 4], g: &[u64; 4], ginv: &[u64; 4], n: u64) -> [u64; 4] {
    let mul = |x: &[u64; 4], y: &[u64; 4]| -> [u64; 4] {
        let mm = |a, b| crate::modnum::mul_mod(a, b, n);
        [
            (mm(x[0], y[0]) + mm(x[1], y[2])) % n,
            (mm(x[0], y[1]) + mm(x[1], y[3])) % n,
            (mm(x[2], y[0]) + mm(x[3], y[2])) % n,
            (mm(x[2], y[1]) + mm(x[3], y[3])) % n,
        ]
    };
    mul(&mul(g, e), ginv)
}

/// Partitions the trace -1 slice (trace taken mod `d`, matrices mod `d̄`) into
/// conjugacy classes. Representatives are the lexicographically smallest
/// members; classes are sorted by representative.
pub fn enumerate_trace_classes(dim: Dimension) -> ClassTable {
    let n = dim.dbar();
    let d = dim.d();
    let targets: Vec<u64> = (0..n).filter(|t| t % d == d - 1).collect();
    let slice = trace_slice(n, &targets);

    let gen_pairs: Vec<([u64; 4], [u64; 4])> = {
        let s = SlMat::gen_s(n);
        let t = SlMat::gen_t(n);
        [s, t]
            .iter()
            .map(|g| (g.entries(), g.inverse().entries()))
            .collect()
    };

    let mut visited: HashSet<u64> = HashSet::with_capacity(slice.len());
    let mut classes: Vec<ClassEntry> = Vec::new();
    for start in &slice {
        if visited.contains(&pack(start, n)) {
            continue;
        }
        let mut rep = *start;
        let mut size = 0u64;
        let mut queue = VecDeque::new();
        visited.insert(pack(start, n));
        queue.push_back(*start);
        while let Some(e) = queue.pop_front() {
            size += 1;
            if e < rep {
                rep = e;
            }
            for (g, ginv) in &gen_pairs {
                let next = conj(&e, g, ginv, n);
                if visited.insert(pack(&next, n)) {
                    queue.push_back(next);
                }
            }
        }
        classes.push(ClassEntry { rep, size });
    }
    classes.sort_by_key(|c| c.rep);

    let total: u64 = classes.iter().map(|c| c.size).sum();
    assert_eq!(
        total as usize,
        slice.len(),
        "orbit closure left the trace slice (d = {d})"
    );

    ClassTable {
        d,
        dbar: n,
        t_count: classes.len() as u64,
        classes,
    }
}
