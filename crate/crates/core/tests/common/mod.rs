//! Brute-force oracles and random instance generators shared by the
//! integration tests. Nothing here calls the search or verification code
//! under test.
#![allow(dead_code)]

use ecic::galois::{all_vectors, Elem, FieldSpec, FqMatrix};
use ecic::instance::IcsiInstance;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Random instance on `n` messages with 1..=n+1 receivers.
pub fn random_instance(rng: &mut ChaCha8Rng, n: usize) -> IcsiInstance {
    let m = rng.gen_range(1..=n + 1);
    let mut demand = vec![];
    let mut side = vec![];
    for _ in 0..m {
        let f = rng.gen_range(0..n);
        let x: Vec<usize> = (0..n).filter(|&j| j != f && rng.gen_bool(0.5)).collect();
        demand.push(f);
        side.push(x);
    }
    IcsiInstance::new(n, demand, side).unwrap()
}

/// `m = n`, `f = id`, `X_i` the neighbours of `i` in a random undirected graph.
pub fn random_symmetric_instance(rng: &mut ChaCha8Rng, n: usize) -> IcsiInstance {
    let p = rng.gen_range(0.1..0.9);
    let mut side = vec![vec![]; n];
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                side[u].push(v);
                side[v].push(u);
            }
        }
    }
    IcsiInstance::with_identity_demands(side).unwrap()
}

pub fn random_matrix(rng: &mut ChaCha8Rng, f: &FieldSpec, rows: usize, cols: usize) -> FqMatrix {
    let data = (0..rows * cols).map(|_| rng.gen_range(0..f.order())).collect();
    FqMatrix::from_flat(f, rows, cols, data).unwrap()
}

pub fn shuffled<T: Clone>(rng: &mut ChaCha8Rng, v: &[T]) -> Vec<T> {
    let mut v = v.to_vec();
    v.shuffle(rng);
    v
}

/// Every `z` that vanishes on some `X_i` and is nonzero at `f(i)`.
pub fn i_vectors(inst: &IcsiInstance, q: u32) -> Vec<Vec<Elem>> {
    all_vectors(q, inst.n())
        .filter(|z| (0..inst.m()).any(|i| z[inst.demand(i)] != 0 && inst.side(i).iter().all(|&j| z[j] == 0)))
        .collect()
}

pub fn weight(v: &[Elem]) -> usize {
    v.iter().filter(|&&x| x != 0).count()
}

/// `z L` computed entry by entry.
pub fn combine(f: &FieldSpec, z: &[Elem], l: &FqMatrix) -> Vec<Elem> {
    (0..l.cols()).map(|c| (0..l.rows()).fold(0, |acc, r| f.add(acc, f.mul(z[r], l.get(r, c))))).collect()
}

/// Smallest `weight(z L)` over the I-vectors; `None` if there are none.
pub fn min_weight_over_i(inst: &IcsiInstance, l: &FqMatrix) -> Option<usize> {
    let f = l.field();
    i_vectors(inst, f.order()).iter().map(|z| weight(&combine(f, z, l))).min()
}

/// Minimum distance of the code generated by the rows of `g`; 0 when the
/// rows are dependent.
pub fn min_distance(g: &FqMatrix) -> usize {
    let f = g.field();
    all_vectors(f.order(), g.rows()).skip(1).map(|u| weight(&combine(f, &u, g))).min().unwrap_or(0)
}

/// Exact recoverability test straight from the definition: two message
/// vectors agreeing on `X_i` but not at `f(i)` must have encodings at
/// distance at least `2δ + 1`.
pub fn corrects_by_definition(inst: &IcsiInstance, l: &FqMatrix, delta: usize) -> bool {
    let f = l.field();
    let q = f.order();
    let xs: Vec<Vec<Elem>> = all_vectors(q, inst.n()).collect();
    let codes: Vec<Vec<Elem>> = xs.iter().map(|x| combine(f, x, l)).collect();
    for i in 0..inst.m() {
        for (a, xa) in xs.iter().enumerate() {
            for (b, xb) in xs.iter().enumerate().skip(a + 1) {
                if xa[inst.demand(i)] != xb[inst.demand(i)]
                    && inst.side(i).iter().all(|&j| xa[j] == xb[j])
                    && codes[a].iter().zip(&codes[b]).filter(|(u, v)| u != v).count() <= 2 * delta
                {
                    return false;
                }
            }
        }
    }
    true
}

/// Largest `|K|` such that every nonempty subset of `K` is the support of
/// some I-vector.
pub fn alpha_by_definition(inst: &IcsiInstance) -> usize {
    let n = inst.n();
    let in_j = |k: u32| {
        (0..inst.m()).any(|i| {
            let f = inst.demand(i);
            k >> f & 1 == 1 && inst.side(i).iter().all(|&j| k >> j & 1 == 0)
        })
    };
    (1u32..1 << n)
        .filter(|&k| {
            let mut s = k;
            loop {
                if !in_j(s) {
                    return false;
                }
                s = (s - 1) & k;
                if s == 0 {
                    return true;
                }
            }
        })
        .map(|k| k.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Independence number of the undirected graph on `0..n` given by `adj`.
pub fn independence_number(n: usize, adj: impl Fn(usize, usize) -> bool) -> usize {
    (0u32..1 << n)
        .filter(|&s| (0..n).all(|u| (u + 1..n).all(|v| s >> u & 1 == 0 || s >> v & 1 == 0 || !adj(u, v))))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Every non-decreasing sequence of `len` indices below `points`.
pub fn multisets(points: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut cur = Some(vec![0; len]);
    std::iter::from_fn(move || {
        let out = cur.take()?;
        let mut next = out.clone();
        let mut k = len;
        while k > 0 {
            k -= 1;
            if next[k] + 1 < points {
                let v = next[k] + 1;
                for slot in &mut next[k..] {
                    *slot = v;
                }
                cur = Some(next);
                break;
            }
        }
        Some(out)
    })
}

pub fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k as u128).fold(1, |a, i| a * (n as u128 - i) / (i + 1))
}
