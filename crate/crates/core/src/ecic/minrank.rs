use std::collections::HashSet;

use serde::Serialize;

use crate::error::Result;
use crate::galois::{Elem, FieldSpec, FqMatrix};
use crate::instance::{generalized_independence_number, IcsiInstance, DEFAULT_ALPHA_CAP};

/// Default node cap for [`min_rank`].
pub const DEFAULT_MINRANK_NODES: u64 = 200_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinRankWitness {
    pub kappa: usize,
    /// Row `i` is `v_i + e_f(i)` with `v_i` supported inside `X_i`.
    pub v: FqMatrix,
    /// `n x kappa`; its columns span the row space of `v`.
    pub l_opt: FqMatrix,
    /// False when the node cap stopped the search; `kappa` is then an upper bound.
    pub certified: bool,
    pub nodes: u64,
}

#[derive(Serialize)]
struct WitnessJson {
    kappa: usize,
    certified: bool,
    nodes: u64,
    v: Vec<Vec<Elem>>,
    l_opt: Vec<Vec<Elem>>,
}

impl MinRankWitness {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(WitnessJson {
            kappa: self.kappa,
            certified: self.certified,
            nodes: self.nodes,
            v: self.v.row_vecs(),
            l_opt: self.l_opt.row_vecs(),
        })
        .expect("witness serializes")
    }
}

/// A subspace of `F_q^n` kept as rows normalized at distinct pivots.
/// Reducing a vector against it in insertion order zeroes every pivot
/// coordinate, so the residue is a canonical representative of the coset.
#[derive(Clone)]
struct Span {
    rows: Vec<(usize, Vec<Elem>)>,
}

impl Span {
    fn residue(&self, f: &FieldSpec, v: &[Elem]) -> Vec<Elem> {
        let mut r = v.to_vec();
        for (p, row) in &self.rows {
            let c = r[*p];
            if c != 0 {
                f.axpy(&mut r, f.neg(c), row);
            }
        }
        r
    }

    fn insert(&mut self, f: &FieldSpec, mut residue: Vec<Elem>) {
        let p = residue.iter().position(|&x| x != 0).expect("nonzero residue");
        f.normalize(&mut residue);
        // keep earlier rows reduced at the new pivot so residues stay canonical
        for (_, row) in self.rows.iter_mut() {
            let c = row[p];
            if c != 0 {
                f.axpy(row, f.neg(c), &residue);
            }
        }
        self.rows.push((p, residue));
    }
}

struct Search<'a> {
    f: &'a FieldSpec,
    inst: &'a IcsiInstance,
    order: Vec<usize>,
    choice: Vec<Vec<Elem>>,
    best: usize,
    best_rows: Option<Vec<Vec<Elem>>>,
    floor: usize,
    nodes: u64,
    cap: u64,
    capped: bool,
}

impl Search<'_> {
    fn row(&self, i: usize, v: &[Elem]) -> Vec<Elem> {
        let mut r = vec![0; self.inst.n()];
        r[self.inst.demand(i)] = 1;
        for (&j, &x) in self.inst.side(i).iter().zip(v) {
            r[j] = x;
        }
        r
    }

    /// Lexicographically least `v` keeping `v + e_f(i)` inside `span`.
    fn inside(&self, span: &Span, i: usize) -> Option<Vec<Elem>> {
        let f = self.f;
        let n = self.inst.n();
        let xs = self.inst.side(i);
        let mut a = FqMatrix::zeros(f, n, xs.len());
        for (k, &j) in xs.iter().enumerate() {
            let mut e = vec![0; n];
            e[j] = 1;
            for (r, x) in span.residue(f, &e).into_iter().enumerate() {
                a.set(r, k, x);
            }
        }
        let mut e = vec![0; n];
        e[self.inst.demand(i)] = 1;
        let b: Vec<Elem> = span.residue(f, &e).into_iter().map(|x| f.neg(x)).collect();
        a.solve_affine(&b).ok()?.next()
    }

    fn dfs(&mut self, depth: usize, span: &Span) {
        if self.done() {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.cap && self.best_rows.is_some() {
            self.capped = true;
            return;
        }
        let rank = span.rows.len();
        if depth == self.order.len() {
            if rank < self.best {
                self.best = rank;
                let mut rows = vec![vec![]; self.inst.m()];
                for (&i, v) in self.order.iter().zip(&self.choice) {
                    rows[i] = self.row(i, v);
                }
                self.best_rows = Some(rows);
            }
            return;
        }
        let i = self.order[depth];
        // Staying inside the current span dominates every other choice.
        if let Some(v) = self.inside(span, i) {
            self.choice.push(v);
            self.dfs(depth + 1, span);
            self.choice.pop();
            return;
        }
        if rank + 1 >= self.best {
            return;
        }
        let q = self.f.order();
        let mut seen = HashSet::new();
        let mut v = vec![0 as Elem; self.inst.side(i).len()];
        loop {
            let mut res = span.residue(self.f, &self.row(i, &v));
            self.f.normalize(&mut res);
            if seen.insert(res.clone()) {
                let mut next = span.clone();
                next.insert(self.f, res);
                self.choice.push(v.clone());
                self.dfs(depth + 1, &next);
                self.choice.pop();
                if self.done() || rank + 1 >= self.best {
                    return;
                }
            }
            if !crate::galois::advance(&mut v, q) {
                break;
            }
        }
    }

    fn done(&self) -> bool {
        self.capped || self.best <= self.floor
    }
}

/// Exact min-rank by branch and bound.
///
/// Receivers are taken in order of decreasing `|X_i|`. If some choice of
/// `v_i` keeps the row inside the span built so far it is taken without
/// branching; otherwise each choice is tried once per distinct coset of
/// the span, and a branch is cut as soon as it cannot beat the best rank.
/// The search stops early once it meets the lower bound `α(H)`.
pub fn min_rank(inst: &IcsiInstance, field: &FieldSpec, node_cap: u64) -> Result<MinRankWitness> {
    let mut order: Vec<usize> = (0..inst.m()).collect();
    order.sort_by_key(|&i| (std::cmp::Reverse(inst.side(i).len()), i));
    let floor = if inst.n() <= DEFAULT_ALPHA_CAP {
        generalized_independence_number(inst, DEFAULT_ALPHA_CAP)?.0
    } else {
        1.min(inst.m())
    };
    let mut s = Search {
        f: field,
        inst,
        order,
        choice: vec![],
        best: usize::MAX,
        best_rows: None,
        floor,
        nodes: 0,
        cap: node_cap,
        capped: false,
    };
    s.dfs(0, &Span { rows: vec![] });
    let rows = s.best_rows.expect("the first leaf is always reached");
    let v = FqMatrix::from_rows(field, inst.n(), &rows)?;
    let l_opt = v.rref().basis().transpose();
    Ok(MinRankWitness { kappa: s.best, v, l_opt, certified: !s.capped, nodes: s.nodes })
}
