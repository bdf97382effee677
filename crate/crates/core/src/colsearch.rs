//! Exhaustive search over column multisets.
//!
//! For a fixed set of test vectors `z`, the weight of `z L` is the number of
//! columns `c` of `L` with `z · c ≠ 0`. It depends only on the multiset of
//! columns, zero columns never contribute, and scaling a column by a nonzero
//! constant changes nothing. So a length-`N` search only has to visit
//! non-decreasing sequences of projective points. Both the minimum-length
//! ECIC search and the `N_q[k, d]` oracle run on this kernel.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::galois::{projective_points, Elem, FieldSpec, FqMatrix};

/// Node budget and worker count for the exhaustive searches.
#[derive(Clone, Copy, Debug)]
pub struct SearchLimits {
    pub node_budget: u64,
    /// 0 selects rayon's default.
    pub workers: usize,
}

impl Default for SearchLimits {
    fn default() -> Self {
        SearchLimits { node_budget: 50_000_000_000, workers: 0 }
    }
}

impl SearchLimits {
    pub(crate) fn run<R: Send>(&self, job: impl FnOnce() -> R + Send) -> R {
        if self.workers == 0 {
            job()
        } else {
            rayon::ThreadPoolBuilder::new().num_threads(self.workers).build().expect("thread pool").install(job)
        }
    }
}

/// Outcome of searching one length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LengthOutcome {
    /// Lexicographically least passing column sequence (point indices).
    Found(Vec<usize>),
    /// Every candidate was examined and none passes.
    Refuted,
    /// The node budget ran out first.
    Exhausted,
}

/// Column-multiset search for `L` with `weight(z L) >= target` for every test `z`.
pub struct ColumnSearch {
    field: FieldSpec,
    dim: usize,
    points: Vec<Vec<Elem>>,
    hits: Vec<Vec<u16>>,
    tests: usize,
    target: usize,
}

impl ColumnSearch {
    pub fn new(field: &FieldSpec, dim: usize, tests: &[Vec<Elem>], target: usize) -> Result<Self> {
        if tests.len() > u16::MAX as usize {
            return Err(Error::budget("column search test vectors", tests.len() as u64, u16::MAX as u64));
        }
        if target > u8::MAX as usize {
            return Err(Error::InvalidArgument(format!("target weight {target} too large")));
        }
        let points_needed = (field.order() as u128).pow(dim as u32);
        if points_needed > 1 << 20 {
            return Err(Error::budget("column search points", points_needed, 1u128 << 20));
        }
        let points = projective_points(field.order(), dim);
        let hits = points
            .iter()
            .map(|c| tests.iter().enumerate().filter(|(_, z)| field.dot(z, c) != 0).map(|(k, _)| k as u16).collect())
            .collect();
        Ok(ColumnSearch { field: field.clone(), dim, points, hits, tests: tests.len(), target })
    }

    pub fn point_count(&self) -> usize {
        self.points.len()
    }

    /// Number of non-decreasing sequences of length `len`, `C(P + len - 1, len)`.
    pub fn candidate_count(&self, len: usize) -> u128 {
        let p = self.points.len() as u128;
        let mut c: u128 = 1;
        for i in 0..len as u128 {
            c = c * (p + i) / (i + 1);
        }
        c
    }

    /// The `dim x len` matrix with the given point indices as columns.
    pub fn matrix(&self, cols: &[usize]) -> FqMatrix {
        let mut m = FqMatrix::zeros(&self.field, self.dim, cols.len());
        for (j, &p) in cols.iter().enumerate() {
            for (r, &x) in self.points[p].iter().enumerate() {
                m.set(r, j, x);
            }
        }
        m
    }

    /// Exhaustive search at one length. Work is split across workers by the
    /// first two columns; the lowest-indexed successful branch wins, so the
    /// result does not depend on the worker count.
    pub fn search(&self, len: usize, limits: &SearchLimits) -> (LengthOutcome, u64) {
        let nodes = AtomicU64::new(0);
        let stop = AtomicBool::new(false);
        if len == 0 {
            let ok = self.tests == 0 || self.target == 0;
            return (if ok { LengthOutcome::Found(vec![]) } else { LengthOutcome::Refuted }, 1);
        }
        let p = self.points.len();
        let prefixes: Vec<Vec<usize>> = if len == 1 {
            (0..p).map(|a| vec![a]).collect()
        } else {
            (0..p).flat_map(|a| (a..p).map(move |b| vec![a, b])).collect()
        };
        let best = AtomicUsize::new(usize::MAX);
        let results: Vec<Option<Vec<usize>>> = limits.run(|| {
            prefixes
                .par_iter()
                .enumerate()
                .map(|(idx, prefix)| {
                    if idx > best.load(Ordering::Relaxed) || stop.load(Ordering::Relaxed) {
                        return None;
                    }
                    let mut w = Walker {
                        s: self,
                        counts: vec![0u8; self.tests],
                        seq: Vec::with_capacity(len),
                        len,
                        local_nodes: 0,
                        nodes: &nodes,
                        stop: &stop,
                        budget: limits.node_budget,
                    };
                    for &c in prefix {
                        w.push(c);
                    }
                    let found = w.feasible() && w.dfs(*prefix.last().unwrap());
                    w.flush();
                    if found {
                        best.fetch_min(idx, Ordering::Relaxed);
                        Some(w.seq)
                    } else {
                        None
                    }
                })
                .collect()
        });
        let total = nodes.load(Ordering::Relaxed);
        if let Some(seq) = results.into_iter().flatten().next() {
            return (LengthOutcome::Found(seq), total);
        }
        if stop.load(Ordering::Relaxed) {
            (LengthOutcome::Exhausted, total)
        } else {
            (LengthOutcome::Refuted, total)
        }
    }
}

struct Walker<'a> {
    s: &'a ColumnSearch,
    counts: Vec<u8>,
    seq: Vec<usize>,
    len: usize,
    local_nodes: u64,
    nodes: &'a AtomicU64,
    stop: &'a AtomicBool,
    budget: u64,
}

impl Walker<'_> {
    fn push(&mut self, c: usize) {
        for &k in &self.s.hits[c] {
            self.counts[k as usize] += 1;
        }
        self.seq.push(c);
    }

    fn pop(&mut self) {
        let c = self.seq.pop().expect("nonempty");
        for &k in &self.s.hits[c] {
            self.counts[k as usize] -= 1;
        }
    }

    /// Every test vector can still reach the target with the columns left.
    fn feasible(&self) -> bool {
        let remaining = self.len - self.seq.len();
        let target = self.s.target;
        self.counts.iter().all(|&c| c as usize + remaining >= target)
    }

    fn flush(&mut self) {
        if self.local_nodes > 0 {
            let total = self.nodes.fetch_add(self.local_nodes, Ordering::Relaxed) + self.local_nodes;
            self.local_nodes = 0;
            if total > self.budget {
                self.stop.store(true, Ordering::Relaxed);
            }
        }
    }

    fn dfs(&mut self, start: usize) -> bool {
        self.local_nodes += 1;
        if self.local_nodes >= 1 << 16 {
            self.flush();
        }
        if self.stop.load(Ordering::Relaxed) {
            return false;
        }
        if self.seq.len() == self.len {
            return true;
        }
        for c in start..self.s.points.len() {
            self.push(c);
            if self.feasible() && self.dfs(c) {
                return true;
            }
            self.pop();
        }
        false
    }
}

/// Result of a minimum-length scan.
#[derive(Clone, Debug)]
pub struct MinLength {
    /// Least passing length and its certificate, if found within range.
    pub optimum: Option<(usize, FqMatrix)>,
    /// `(length, nodes)` for every length refuted exhaustively.
    pub refuted: Vec<(usize, u64)>,
    /// Set when the budget ran out; the scan stopped at this length.
    pub exhausted_at: Option<usize>,
}

impl ColumnSearch {
    /// Scans lengths `from..=to` upward. Appending a nonzero column never
    /// lowers a weight, so refuting `N - 1` refutes every shorter length.
    pub fn min_length(&self, from: usize, to: usize, limits: &SearchLimits) -> MinLength {
        let mut out = MinLength { optimum: None, refuted: vec![], exhausted_at: None };
        for len in from..=to {
            match self.search(len, limits) {
                (LengthOutcome::Found(seq), _) => {
                    out.optimum = Some((len, self.matrix(&seq)));
                    break;
                }
                (LengthOutcome::Refuted, nodes) => out.refuted.push((len, nodes)),
                (LengthOutcome::Exhausted, _) => {
                    out.exhausted_at = Some(len);
                    break;
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::all_vectors;

    fn all_nonzero(q: u32, k: usize) -> Vec<Vec<u32>> {
        projective_points(q, k)
    }

    #[test]
    fn repetition_and_parity() {
        let f = FieldSpec::gf2();
        // [N, 1, 3]: tests = {1}
        let s = ColumnSearch::new(&f, 1, &all_nonzero(2, 1), 3).unwrap();
        let r = s.min_length(1, 5, &SearchLimits::default());
        assert_eq!(r.optimum.unwrap().0, 3);
        // [N, 2, 2]_2 needs N = 3
        let s = ColumnSearch::new(&f, 2, &all_nonzero(2, 2), 2).unwrap();
        assert_eq!(s.min_length(1, 5, &SearchLimits::default()).optimum.unwrap().0, 3);
    }

    #[test]
    fn found_sequence_is_lexicographically_least() {
        let f = FieldSpec::gf2();
        let tests = all_nonzero(2, 2);
        let s = ColumnSearch::new(&f, 2, &tests, 2).unwrap();
        let (out, _) = s.search(3, &SearchLimits { workers: 3, ..Default::default() });
        // brute force over all non-decreasing triples
        let p = s.point_count();
        let mut best = None;
        'outer: for a in 0..p {
            for b in a..p {
                for c in b..p {
                    let m = s.matrix(&[a, b, c]);
                    if tests.iter().all(|z| crate::galois::weight(&m.transpose().mul_vec(z)) >= 2) {
                        best = Some(vec![a, b, c]);
                        break 'outer;
                    }
                }
            }
        }
        assert_eq!(out, LengthOutcome::Found(best.unwrap()));
    }

    #[test]
    fn worker_count_does_not_change_result() {
        let f = FieldSpec::from_order(3).unwrap();
        let tests: Vec<_> = all_vectors(3, 2).filter(|v| v.iter().any(|&x| x != 0)).collect();
        let s = ColumnSearch::new(&f, 2, &tests, 3).unwrap();
        let a = s.search(4, &SearchLimits { workers: 1, ..Default::default() });
        let b = s.search(4, &SearchLimits { workers: 4, ..Default::default() });
        assert_eq!(a.0, b.0);
        assert!(matches!(a.0, LengthOutcome::Found(_)));
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let f = FieldSpec::gf2();
        let s = ColumnSearch::new(&f, 4, &all_nonzero(2, 4), 5).unwrap();
        let (out, _) = s.search(9, &SearchLimits { node_budget: 10, workers: 1 });
        assert_eq!(out, LengthOutcome::Exhausted);
    }

    #[test]
    fn candidate_count_is_binomial() {
        let f = FieldSpec::gf2();
        let s = ColumnSearch::new(&f, 5, &all_nonzero(2, 5), 5).unwrap();
        assert_eq!(s.candidate_count(8), 48_903_492); // C(38, 8)
        assert_eq!(s.candidate_count(9), 211_915_132); // C(39, 9)
    }
}
