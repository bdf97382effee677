//! Generalized independence number `α(H)`: the largest set of messages all
//! of whose nonempty subsets belong to `J(H)`.

use super::{set_to_vec, subsets, IcsiInstance, MessageSet};
use crate::error::{Error, Result};

/// Default cap on `n` for the exact search.
pub const DEFAULT_ALPHA_CAP: usize = 24;

/// Branch and bound over sets in lexicographic order. Membership is
/// hereditary, so a vertex extends the current set only if every subset
/// containing it is in `J(H)`; candidates are pre-filtered by singleton and
/// pair membership. Returns `α(H)` and the lexicographically least witness.
pub fn generalized_independence_number(inst: &IcsiInstance, cap: usize) -> Result<(usize, Vec<usize>)> {
    let n = inst.n();
    if n > cap {
        return Err(Error::budget("generalized independence search n", n as u64, cap as u64));
    }
    let singles: MessageSet = (0..n).filter(|&v| inst.in_j(1 << v)).fold(0, |a, v| a | 1 << v);
    let compat: Vec<MessageSet> = (0..n)
        .map(|v| {
            (0..n).filter(|&w| w != v && singles >> w & 1 == 1 && inst.in_j(1 << v | 1 << w)).fold(0, |a, w| a | 1 << w)
        })
        .collect();

    struct Search<'a> {
        inst: &'a IcsiInstance,
        compat: &'a [MessageSet],
        best: (usize, MessageSet),
    }

    impl Search<'_> {
        fn extends(&self, cur: MessageSet, v: usize) -> bool {
            subsets(cur).all(|s| self.inst.in_j(s | 1 << v))
        }

        fn grow(&mut self, cur: MessageSet, cand: MessageSet) {
            let size = cur.count_ones() as usize;
            if size > self.best.0 {
                self.best = (size, cur);
            }
            let mut rest = cand;
            while rest != 0 {
                if size + rest.count_ones() as usize <= self.best.0 {
                    return;
                }
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if self.extends(cur, v) {
                    self.grow(cur | 1 << v, rest & self.compat[v]);
                }
            }
        }
    }

    let mut s = Search { inst, compat: &compat, best: (0, 0) };
    s.grow(0, singles);
    Ok((s.best.0, set_to_vec(s.best.1)))
}

/// Reference implementation: test every subset of `[n]` directly.
pub fn generalized_independence_naive(inst: &IcsiInstance) -> (usize, Vec<usize>) {
    let n = inst.n();
    assert!(n <= 20, "naive search is for small n");
    let mut best: (usize, Vec<usize>) = (0, vec![]);
    for h in 1u64..1 << n {
        let size = h.count_ones() as usize;
        if size < best.0 {
            continue;
        }
        if subsets(h).skip(1).all(|k| inst.in_j(k)) {
            let v = set_to_vec(h);
            if size > best.0 || v < best.1 {
                best = (size, v);
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden;

    #[test]
    fn known_instances() {
        assert_eq!(generalized_independence_number(&golden::example2(), 24).unwrap().0, 2);
        assert_eq!(generalized_independence_number(&golden::pentagon(), 24).unwrap().0, 2);
        assert_eq!(generalized_independence_number(&golden::example1(), 24).unwrap().0, 1);
    }

    #[test]
    fn no_side_information_gives_n() {
        for n in 1..=6 {
            let (a, w) = generalized_independence_number(&golden::no_side_information(n), 24).unwrap();
            assert_eq!(a, n);
            assert_eq!(w, (0..n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn witness_is_hereditary_and_matches_naive() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..300 {
            let n = rng.gen_range(1..=8);
            let m = rng.gen_range(1..=10);
            let demand: Vec<usize> = (0..m).map(|_| rng.gen_range(0..n)).collect();
            let side: Vec<Vec<usize>> =
                demand.iter().map(|&f| (0..n).filter(|&j| j != f && rng.gen_bool(0.4)).collect()).collect();
            let inst = IcsiInstance::new(n, demand, side).unwrap();
            let (a, w) = generalized_independence_number(&inst, 24).unwrap();
            let naive = generalized_independence_naive(&inst);
            assert_eq!((a, &w), (naive.0, &naive.1));
            let h = super::super::vec_to_set(&w);
            assert!(subsets(h).skip(1).all(|k| inst.in_j(k)));
        }
    }

    #[test]
    fn cap_is_enforced() {
        let inst = golden::no_side_information(30);
        assert!(generalized_independence_number(&inst, 24).is_err());
    }
}
