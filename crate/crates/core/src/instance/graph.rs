//! The side-information graph and exact independence / chromatic numbers.

use super::{set_to_vec, IcsiInstance, MessageSet};
use crate::error::{Error, Result};

/// Directed graph on `[n]` with an edge `(f(i), v)` for each `v ∈ X_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SideInfoGraph {
    n: usize,
    out: Vec<MessageSet>,
}

/// Largest vertex count accepted by the exact α and χ solvers.
pub const DEFAULT_GRAPH_CAP: usize = 24;

impl SideInfoGraph {
    /// Requires `m = n` with a bijective demand function.
    pub fn from_instance(inst: &IcsiInstance) -> Result<Self> {
        let n = inst.n();
        if inst.m() != n {
            return Err(Error::InvalidArgument(format!("graph view needs m = n, got m = {}, n = {n}", inst.m())));
        }
        let mut seen = 0u64;
        for &f in inst.demands() {
            seen |= 1 << f;
        }
        if seen.count_ones() as usize != n {
            return Err(Error::InvalidArgument("graph view needs a bijective demand function".into()));
        }
        let mut out = vec![0u64; n];
        for i in 0..inst.m() {
            out[inst.demand(i)] |= inst.side_mask(i);
        }
        Ok(SideInfoGraph { n, out })
    }

    /// Undirected graph from an edge list (0-based).
    pub fn undirected(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut out = vec![0u64; n];
        for &(a, b) in edges {
            if a != b {
                out[a] |= 1 << b;
                out[b] |= 1 << a;
            }
        }
        SideInfoGraph { n, out }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out[u] >> v & 1 == 1
    }

    pub fn out_neighbors(&self, u: usize) -> Vec<usize> {
        set_to_vec(self.out[u])
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|u| (0..self.n).all(|v| self.has_edge(u, v) == self.has_edge(v, u)))
    }

    /// Neighborhoods of the symmetric closure.
    fn undirected_adjacency(&self) -> Vec<MessageSet> {
        let mut adj = self.out.clone();
        for u in 0..self.n {
            for v in set_to_vec(self.out[u]) {
                adj[v] |= 1 << u;
            }
        }
        adj
    }

    /// Complement of the symmetric closure.
    pub fn complement(&self) -> SideInfoGraph {
        let full = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        let adj = self.undirected_adjacency();
        let out = (0..self.n).map(|u| full & !adj[u] & !(1 << u)).collect();
        SideInfoGraph { n: self.n, out }
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::budget("exact graph solver vertices", n as u64, cap as u64));
    }
    Ok(())
}

/// Independence number of the symmetric closure, by branch and bound.
/// Returns the size and the lexicographically least maximum independent set.
pub fn graph_alpha(g: &SideInfoGraph, cap: usize) -> Result<(usize, Vec<usize>)> {
    check_cap(g.n, cap)?;
    let adj = g.undirected_adjacency();
    let mut best: (usize, MessageSet) = (0, 0);
    fn grow(adj: &[MessageSet], cur: MessageSet, cand: MessageSet, best: &mut (usize, MessageSet)) {
        let size = cur.count_ones() as usize;
        if size > best.0 {
            *best = (size, cur);
        }
        let mut rest = cand;
        while rest != 0 {
            if size + rest.count_ones() as usize <= best.0 {
                return;
            }
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            grow(adj, cur | 1 << v, rest & !adj[v], best);
        }
    }
    let all = if g.n == 64 { u64::MAX } else { (1u64 << g.n) - 1 };
    grow(&adj, 0, all, &mut best);
    Ok((best.0, set_to_vec(best.1)))
}

/// Exact chromatic number of the symmetric closure.
pub fn graph_chromatic(g: &SideInfoGraph, cap: usize) -> Result<usize> {
    check_cap(g.n, cap)?;
    if g.n == 0 {
        return Ok(0);
    }
    let adj = g.undirected_adjacency();
    // degree-descending vertex order
    let mut order: Vec<usize> = (0..g.n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(adj[v].count_ones()), v));

    let greedy = {
        let mut colors = vec![usize::MAX; g.n];
        let mut used = 0;
        for &v in &order {
            let c = (0..).find(|&c| set_to_vec(adj[v]).iter().all(|&u| colors[u] != c)).expect("some color is free");
            colors[v] = c;
            used = used.max(c + 1);
        }
        used
    };

    fn colorable(adj: &[MessageSet], order: &[usize], colors: &mut [usize], idx: usize, k: usize, used: usize) -> bool {
        if idx == order.len() {
            return true;
        }
        let v = order[idx];
        // a fresh color is symmetric to any other fresh color, so try only one
        for c in 0..k.min(used + 1) {
            if set_to_vec(adj[v]).iter().all(|&u| colors[u] != c) {
                colors[v] = c;
                if colorable(adj, order, colors, idx + 1, k, used.max(c + 1)) {
                    return true;
                }
                colors[v] = usize::MAX;
            }
        }
        false
    }

    let mut k = greedy;
    while k > 1 {
        let mut colors = vec![usize::MAX; g.n];
        if !colorable(&adj, &order, &mut colors, 0, k - 1, 0) {
            break;
        }
        k -= 1;
    }
    Ok(k)
}
