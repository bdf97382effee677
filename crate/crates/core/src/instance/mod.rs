//! ICSI instances `(m, n, X, f)` and the combinatorics derived from their
//! side-information hypergraph.
//!
//! Messages and receivers are 0-based inside the crate; the JSON file format
//! is 1-based. Subsets of messages are `u64` bitmasks, so `n <= 64`.

mod graph;
mod independence;
mod io;

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::galois::{Elem, FieldSpec};

pub use graph::{graph_alpha, graph_chromatic, SideInfoGraph, DEFAULT_GRAPH_CAP};
pub use independence::{generalized_independence_naive, generalized_independence_number, DEFAULT_ALPHA_CAP};
pub use io::InstanceFile;

/// Largest message count representable by the bitmask set type.
pub const MAX_MESSAGES: usize = 64;

/// Default cap on the number of subsets or vectors an enumeration may produce.
pub const DEFAULT_ENUM_CAP: u128 = 1 << 22;

pub type MessageSet = u64;

pub fn set_to_vec(s: MessageSet) -> Vec<usize> {
    (0..64).filter(|&i| s >> i & 1 == 1).collect()
}

pub fn vec_to_set(v: &[usize]) -> MessageSet {
    v.iter().fold(0, |acc, &i| acc | 1 << i)
}

/// Iterates all subsets of `mask`, starting with the empty set.
pub fn subsets(mask: MessageSet) -> impl Iterator<Item = MessageSet> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask { None } else { Some((cur.wrapping_sub(mask)) & mask) };
        Some(cur)
    })
}

/// An instance of index coding with side information.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IcsiInstance {
    n: usize,
    demand: Vec<usize>,
    side: Vec<Vec<usize>>,
    side_mask: Vec<MessageSet>,
}

impl IcsiInstance {
    /// `demand[i]` is `f(i)`; `side[i]` is `X_i`. All indices 0-based.
    pub fn new(n: usize, demand: Vec<usize>, side: Vec<Vec<usize>>) -> Result<Self> {
        let mut side = side;
        for s in side.iter_mut() {
            s.sort_unstable();
            s.dedup();
        }
        // out-of-range entries are rejected by validate() below
        let side_mask = side.iter().map(|s| s.iter().filter(|&&j| j < 64).fold(0, |a, &j| a | 1 << j)).collect();
        let inst = IcsiInstance { n, demand, side, side_mask };
        inst.validate()?;
        Ok(inst)
    }

    /// Same as [`IcsiInstance::new`] with 1-based message indices.
    pub fn from_one_based(n: usize, f: &[usize], x: &[Vec<usize>]) -> Result<Self> {
        let shift = |v: usize, receiver: usize| {
            v.checked_sub(1).ok_or(Error::InvalidInstance {
                receiver: receiver + 1,
                reason: "message index 0 in a 1-based instance".into(),
            })
        };
        let demand = f.iter().enumerate().map(|(i, &v)| shift(v, i)).collect::<Result<Vec<_>>>()?;
        let side = x
            .iter()
            .enumerate()
            .map(|(i, s)| s.iter().map(|&v| shift(v, i)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, demand, side)
    }

    /// `m = n`, `f = id`.
    pub fn with_identity_demands(side: Vec<Vec<usize>>) -> Result<Self> {
        let n = side.len();
        Self::new(n, (0..n).collect(), side)
    }

    /// Checks every structural invariant, reporting the first violation
    /// (receiver numbers in the error are 1-based).
    pub fn validate(&self) -> Result<()> {
        let bad = |i: usize, reason: String| Err(Error::InvalidInstance { receiver: i + 1, reason });
        if self.n == 0 {
            return bad(0, "instance needs at least one message".into());
        }
        if self.n > MAX_MESSAGES {
            return bad(0, format!("n = {} exceeds {MAX_MESSAGES}", self.n));
        }
        if self.demand.is_empty() {
            return bad(0, "instance needs at least one receiver".into());
        }
        if self.demand.len() != self.side.len() {
            return bad(0, format!("{} demands but {} side sets", self.demand.len(), self.side.len()));
        }
        for (i, (&f, x)) in self.demand.iter().zip(&self.side).enumerate() {
            if f >= self.n {
                return bad(i, format!("demand {} outside [1, {}]", f + 1, self.n));
            }
            if let Some(&j) = x.iter().find(|&&j| j >= self.n) {
                return bad(i, format!("side information {} outside [1, {}]", j + 1, self.n));
            }
            if x.contains(&f) {
                return bad(i, format!("demanded message {} is in its own side information", f + 1));
            }
        }
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.demand.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn demand(&self, i: usize) -> usize {
        self.demand[i]
    }

    pub fn demands(&self) -> &[usize] {
        &self.demand
    }

    pub fn side(&self, i: usize) -> &[usize] {
        &self.side[i]
    }

    pub fn side_sets(&self) -> &[Vec<usize>] {
        &self.side
    }

    pub fn side_mask(&self, i: usize) -> MessageSet {
        self.side_mask[i]
    }

    fn full_mask(&self) -> MessageSet {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    pub fn y_mask(&self, i: usize) -> MessageSet {
        self.full_mask() & !self.side_mask[i] & !(1u64 << self.demand[i])
    }

    /// `Y_i = [n] \ ({f(i)} ∪ X_i)`: messages receiver `i` neither has nor wants.
    pub fn y_set(&self, i: usize) -> Result<Vec<usize>> {
        if i >= self.m() {
            return Err(Error::InvalidArgument(format!("receiver {} out of range", i + 1)));
        }
        Ok(set_to_vec(self.y_mask(i)))
    }

    /// `K ∈ J(H)`: some receiver demands a member of `K` and the rest of `K`
    /// lies in its `Y_i`. Runs in `O(m)` word operations.
    pub fn in_j(&self, k: MessageSet) -> bool {
        k != 0
            && (0..self.m()).any(|i| {
                let f = 1u64 << self.demand[i];
                k & f != 0 && (k & !f) & !self.y_mask(i) == 0
            })
    }

    pub fn in_j_vec(&self, k: &[usize]) -> bool {
        k.iter().all(|&j| j < self.n) && self.in_j(vec_to_set(k))
    }

    /// Size of the raw (non-deduplicated) enumeration `Σ_i 2^|Y_i|`.
    pub fn j_enumeration_size(&self) -> u128 {
        (0..self.m()).map(|i| 1u128 << self.y_mask(i).count_ones()).sum()
    }

    /// Every set of `J(H)`, deduplicated, ordered by size then lexicographically.
    pub fn iter_j(&self, cap: u128) -> Result<Vec<Vec<usize>>> {
        let size = self.j_enumeration_size();
        if size > cap {
            return Err(Error::budget("J(H) enumeration", size, cap));
        }
        let mut seen = BTreeSet::new();
        for i in 0..self.m() {
            let f = 1u64 << self.demand[i];
            for y in subsets(self.y_mask(i)) {
                let k = set_to_vec(y | f);
                seen.insert((k.len(), k));
            }
        }
        Ok(seen.into_iter().map(|(_, k)| k).collect())
    }

    /// Streams `I(δ, H)`: all nonzero `z` vanishing on some `X_i` with
    /// `z_{f(i)} ≠ 0`. Grouped by support in [`IcsiInstance::iter_j`] order,
    /// values in lexicographic order within a support.
    pub fn iter_i(&self, field: &FieldSpec, cap: u128) -> Result<IVectors> {
        self.i_vectors(field, cap, false)
    }

    /// Like [`IcsiInstance::iter_i`] but only the vectors whose first nonzero
    /// entry is 1. Every `z ∈ I` is a nonzero multiple of exactly one of them
    /// and `weight(zL)` is invariant under scaling.
    pub fn iter_i_projective(&self, field: &FieldSpec, cap: u128) -> Result<IVectors> {
        self.i_vectors(field, cap, true)
    }

    fn i_vectors(&self, field: &FieldSpec, cap: u128, projective: bool) -> Result<IVectors> {
        let supports = self.iter_j(cap)?;
        let q1 = field.order() as u128 - 1;
        let total: u128 = supports
            .iter()
            .map(|k| q1.saturating_pow(k.len() as u32 - projective as u32))
            .fold(0u128, |a, b| a.saturating_add(b));
        if total > cap {
            return Err(Error::budget("I(δ,H) enumeration", total, cap));
        }
        Ok(IVectors { n: self.n, q: field.order(), projective, supports, pos: 0, digits: None, total })
    }

    /// `Σ_i q^|Y_i|`, the left side of the random-coding existence condition.
    pub fn y_power_sum(&self, q: u32) -> num_bigint::BigUint {
        (0..self.m()).map(|i| num_bigint::BigUint::from(q).pow(self.y_mask(i).count_ones())).sum()
    }

    pub fn side_info_graph(&self) -> Result<SideInfoGraph> {
        SideInfoGraph::from_instance(self)
    }
}

/// Iterator over `I(δ, H)`; see [`IcsiInstance::iter_i`].
pub struct IVectors {
    n: usize,
    q: u32,
    projective: bool,
    supports: Vec<Vec<usize>>,
    pos: usize,
    digits: Option<Vec<Elem>>,
    total: u128,
}

impl IVectors {
    pub fn total(&self) -> u128 {
        self.total
    }
}

impl Iterator for IVectors {
    type Item = Vec<Elem>;

    fn next(&mut self) -> Option<Vec<Elem>> {
        let support = self.supports.get(self.pos)?;
        let digits = self.digits.get_or_insert_with(|| vec![1; support.len()]);
        let mut z = vec![0; self.n];
        for (&j, &d) in support.iter().zip(digits.iter()) {
            z[j] = d;
        }
        // advance over nonzero values; the leading digit stays 1 in projective mode
        let fixed = usize::from(self.projective);
        let mut rolled = true;
        for d in digits[fixed..].iter_mut().rev() {
            if *d + 1 < self.q {
                *d += 1;
                rolled = false;
                break;
            }
            *d = 1;
        }
        if rolled {
            self.pos += 1;
            self.digits = None;
        }
        Some(z)
    }
}
