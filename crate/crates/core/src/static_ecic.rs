//! Static error-correcting index codes: one code serving every instance in
//! which each receiver is missing at most `ρ` of the `n` messages.

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{nq_kd, sphere_volume, CodeTableEntry, NqMode, Provenance};
use crate::colsearch::SearchLimits;
use crate::decoder::next_combination;
use crate::error::{Error, Result};
use crate::galois::{all_vectors, projective_points, weight, Elem, FieldSpec, FqMatrix};
use crate::instance::IcsiInstance;

/// Default cap on enumerations in this module.
pub const DEFAULT_STATIC_CAP: u128 = 1 << 24;

/// The family of instances where every receiver owns at least `n - ρ` messages.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct StaticFamily {
    pub n: usize,
    pub rho: usize,
}

impl StaticFamily {
    pub fn new(n: usize, rho: usize) -> Result<Self> {
        if rho == 0 || rho > n {
            return Err(Error::InvalidArgument(format!("need 1 <= rho <= n, got rho = {rho}, n = {n}")));
        }
        Ok(StaticFamily { n, rho })
    }
}

fn binom(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k as u128).fold(1, |acc, i| acc * (n as u128 - i) / (i + 1))
}

/// Coefficient vectors of weight `1..=rho` whose first nonzero entry is 1,
/// by support size, then support in lexicographic order, then values.
fn combinations(n: usize, rho: usize, q: u32) -> impl Iterator<Item = Vec<Elem>> {
    (1..=rho.min(n)).flat_map(move |w| {
        let mut support: Option<Vec<usize>> = Some((0..w).collect());
        std::iter::from_fn(move || {
            let s = support.take()?;
            let mut next = s.clone();
            if next_combination(&mut next, n) {
                support = Some(next);
            }
            Some(s)
        })
        .flat_map(move |s| {
            all_vectors(q, w - 1).filter(|v| v.iter().all(|&x| x != 0)).map(move |tail| {
                let mut z = vec![0; n];
                z[s[0]] = 1;
                for (&j, &x) in s[1..].iter().zip(&tail) {
                    z[j] = x;
                }
                z
            })
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RhoDeltaReport {
    pub ok: bool,
    pub min_weight: usize,
    /// Coefficients `z` (weight `<= ρ`) of the first combination reaching the
    /// minimum, present iff `!ok`.
    pub witness: Option<Vec<Elem>>,
}

/// Checks that every nontrivial combination of at most `ρ` rows of `L` has
/// weight at least `2δ + 1`.
pub fn verify_rho_delta(l: &FqMatrix, rho: usize, delta: usize, cap: u128) -> Result<RhoDeltaReport> {
    let n = l.rows();
    let q = l.field().order();
    let cost: u128 = (1..=rho.min(n)).map(|i| binom(n, i) * (q as u128 - 1).pow(i as u32 - 1)).sum();
    if cost > cap {
        return Err(Error::budget("(rho, delta) combinations", cost, cap));
    }
    let mut best = (usize::MAX, vec![]);
    for z in combinations(n, rho, q) {
        let w = weight(&l.vec_mul(&z));
        if w < best.0 {
            best = (w, z);
        }
    }
    let ok = best.0 > 2 * delta;
    Ok(RhoDeltaReport { ok, min_weight: best.0, witness: (!ok).then_some(best.1) })
}

/// One receiver per nonempty `K ⊆ [n]` with `|K| <= ρ`, demanding `min K`
/// and holding `[n] \ K`; receivers ordered by `|K|`, then `K`.
pub fn canonical_instance(n: usize, rho: usize, cap: u128) -> Result<IcsiInstance> {
    StaticFamily::new(n, rho)?;
    let count: u128 = (1..=rho).map(|i| binom(n, i)).sum();
    if count > cap {
        return Err(Error::budget("canonical instance receivers", count, cap));
    }
    let mut demand = vec![];
    let mut side = vec![];
    for w in 1..=rho {
        let mut k: Vec<usize> = (0..w).collect();
        loop {
            demand.push(k[0]);
            side.push((0..n).filter(|j| !k.contains(j)).collect());
            if !next_combination(&mut k, n) {
                break;
            }
        }
    }
    IcsiInstance::new(n, demand, side)
}

/// `ρ*` or the bracket known for it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RhoStar {
    pub value: Option<usize>,
    pub lower: usize,
    pub upper: usize,
    pub provenance: Provenance,
    /// Parity-check matrix (`ρ* x n`) of an `[n, n-ρ*, >= ρ+1]` code, when searched.
    #[serde(skip)]
    pub parity_check: Option<FqMatrix>,
}

/// The shipped value of `ρ*(20, 10)` over `F_2`.
const RHO_STAR_TABLE: [(usize, usize, u32, usize); 1] = [(20, 10, 2, 17)];

/// `n` columns of `F_q^len`, any `ρ` of them independent, by backtracking over
/// increasing projective points. Combinations of up to `ρ - 1` chosen columns
/// are tracked so a candidate is rejected as soon as it lies in one of their spans.
/// Any `ρ` columns of a solution can be mapped to unit vectors by an invertible
/// row transformation, so the unit vectors are placed first.
fn parity_check_search(
    field: &FieldSpec,
    n: usize,
    rho: usize,
    len: usize,
    budget: &mut u64,
) -> Option<Option<FqMatrix>> {
    let q = field.order();
    let points = projective_points(q, len);
    let size = (q as usize).pow(len as u32);

    struct St<'a> {
        field: &'a FieldSpec,
        points: &'a [Vec<Elem>],
        q: usize,
        n: usize,
        rho: usize,
        // count of ways each vector is a combination of <= rho-1 chosen columns
        blocked: Vec<u32>,
        // combinations of <= rho-2 chosen columns, with their sizes
        small: Vec<(Vec<Elem>, usize)>,
        chosen: Vec<usize>,
        budget: &'a mut u64,
    }

    impl St<'_> {
        fn index(&self, v: &[Elem]) -> usize {
            v.iter().fold(0usize, |a, &x| a * self.q + x as usize)
        }

        /// Adds point `p`; returns what [`St::remove`] needs to undo it.
        fn place(&mut self, p: usize) -> (Vec<usize>, usize) {
            let c = &self.points[p];
            let mut added_blocked = vec![];
            let mut added_small = vec![];
            for (v, k) in &self.small {
                for a in self.field.nonzero() {
                    let mut w = v.clone();
                    self.field.axpy(&mut w, a, c);
                    added_blocked.push(self.index(&w));
                    if k + 1 < self.rho - 1 {
                        added_small.push((w, k + 1));
                    }
                }
            }
            for &ix in &added_blocked {
                self.blocked[ix] += 1;
            }
            let base = self.small.len();
            self.small.extend(added_small);
            self.chosen.push(p);
            (added_blocked, base)
        }

        fn remove(&mut self, (added_blocked, base): (Vec<usize>, usize)) {
            self.chosen.pop();
            self.small.truncate(base);
            for ix in added_blocked {
                self.blocked[ix] -= 1;
            }
        }

        fn go(&mut self, start: usize) -> Option<bool> {
            if self.chosen.len() == self.n {
                return Some(true);
            }
            if *self.budget == 0 {
                return None;
            }
            *self.budget -= 1;
            let remaining = self.n - self.chosen.len();
            for p in start..self.points.len() {
                if self.points.len() - p < remaining {
                    break;
                }
                if self.blocked[self.index(&self.points[p])] > 0 {
                    continue;
                }
                let undo = self.place(p);
                let r = self.go(p + 1);
                if r == Some(true) {
                    return r;
                }
                self.remove(undo);
                r?;
            }
            Some(false)
        }
    }

    // with rho = 1 columns only need to be nonzero and may repeat
    if rho == 1 {
        return Some(Some(column_matrix(field, &vec![points[0].clone(); n], len)));
    }
    let mut s = St {
        field,
        points: &points,
        q: q as usize,
        n,
        rho,
        blocked: vec![0u32; size],
        small: vec![(vec![0; len], 0)],
        chosen: vec![],
        budget,
    };
    for k in 0..rho.min(len) {
        let mut e = vec![0; len];
        e[k] = 1;
        let p = points.iter().position(|v| *v == e).expect("unit vectors are projective points");
        s.place(p);
    }
    match s.go(0) {
        None => None,
        Some(false) => Some(None),
        Some(true) => {
            let cols: Vec<Vec<Elem>> = s.chosen.iter().map(|&p| points[p].clone()).collect();
            Some(Some(column_matrix(field, &cols, len)))
        }
    }
}

fn column_matrix(field: &FieldSpec, cols: &[Vec<Elem>], len: usize) -> FqMatrix {
    let mut m = FqMatrix::zeros(field, len, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (r, &x) in c.iter().enumerate() {
            m.set(r, j, x);
        }
    }
    m
}

/// Least `N` such that an `[n, n - N, >= ρ + 1]_q` code exists.
pub fn rho_star(n: usize, rho: usize, q: u32, node_budget: u64) -> Result<RhoStar> {
    StaticFamily::new(n, rho)?;
    let field = FieldSpec::from_order(q)?;
    let exact =
        |v: usize, provenance, parity_check| RhoStar { value: Some(v), lower: v, upper: v, provenance, parity_check };
    if let Some(&(_, _, _, v)) = RHO_STAR_TABLE.iter().find(|&&(tn, tr, tq, _)| (tn, tr, tq) == (n, rho, q)) {
        return Ok(exact(v, Provenance::Tabulated, None));
    }
    if rho == n || q as usize + 1 >= n {
        // [n, n - ρ, ρ + 1] MDS code (doubly-extended RS when q >= n - 1)
        return Ok(exact(rho, Provenance::MdsRule, None));
    }
    let mut budget = node_budget;
    for len in rho..=n {
        if (q as u128).pow(len as u32) > DEFAULT_STATIC_CAP {
            break;
        }
        match parity_check_search(&field, n, rho, len, &mut budget) {
            Some(Some(h)) => return Ok(exact(len, Provenance::Searched, Some(h))),
            Some(None) => continue,
            None => {
                return Ok(RhoStar {
                    value: None,
                    lower: len,
                    upper: n,
                    provenance: Provenance::Bracket,
                    parity_check: None,
                })
            }
        }
    }
    Err(Error::budget("rho* parity-check search space", (q as u128).pow(n as u32), DEFAULT_STATIC_CAP))
}

#[derive(Clone, Debug, Serialize)]
pub struct StaticReport {
    pub n: usize,
    pub rho: usize,
    pub delta: usize,
    pub q: u32,
    pub rho_star: RhoStar,
    /// `N_q[ρ, 2δ+1]`.
    pub lower_alpha: Option<CodeTableEntry>,
    /// `ρ* + 2δ`.
    pub lower_singleton: Option<usize>,
    /// `N_q[ρ*, 2δ+1]`.
    pub upper: Option<CodeTableEntry>,
    /// `ρ + 2δ` when `q >= max(n - 1, ρ + 2δ - 1)`.
    pub exact: Option<usize>,
}

/// Bounds on the shortest static code for `(n, ρ)` correcting `δ` errors.
pub fn static_bounds(n: usize, rho: usize, delta: usize, q: u32, limits: &SearchLimits) -> Result<StaticReport> {
    let rs = rho_star(n, rho, q, limits.node_budget)?;
    let d = 2 * delta + 1;
    let lower_alpha = nq_kd(q, rho, d, NqMode::Auto, limits).ok();
    let upper = rs.value.and_then(|r| nq_kd(q, r, d, NqMode::Auto, limits).ok());
    let exact = (q as usize + 1 >= n && q as usize + 1 >= rho + 2 * delta).then_some(rho + 2 * delta);
    Ok(StaticReport {
        n,
        rho,
        delta,
        q,
        lower_singleton: rs.value.map(|r| r + 2 * delta),
        rho_star: rs,
        lower_alpha,
        upper,
        exact,
    })
}

/// `Σ_{i<ρ} C(n-1, i)(q-1)^i · V_q(N, 2δ) < q^N`, under which
/// [`gv_greedy`] cannot get stuck.
pub fn gv_condition(n: usize, rho: usize, delta: usize, q: u32, len: usize) -> bool {
    let lhs: BigUint =
        (0..rho).map(|i| BigUint::from(binom(n.saturating_sub(1), i)) * BigUint::from(q - 1).pow(i as u32)).sum();
    lhs * sphere_volume(q, len, 2 * delta) < BigUint::from(q).pow(len as u32)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GreedyOrder {
    Lexicographic,
    Seeded(u64),
}

#[derive(Clone, Debug)]
pub struct GreedyOutcome {
    /// The `n x N` matrix when all rows were placed.
    pub matrix: Option<FqMatrix>,
    pub rows: Vec<Vec<Elem>>,
    pub condition_holds: bool,
}

/// Builds an `n x N` matrix with the `(ρ, δ)`-property row by row: each
/// new row is the first candidate (in the given order) at distance at least
/// `2δ + 1` from every combination of at most `ρ - 1` rows already chosen.
pub fn gv_greedy(n: usize, rho: usize, delta: usize, q: u32, len: usize, order: GreedyOrder) -> Result<GreedyOutcome> {
    StaticFamily::new(n, rho)?;
    let field = FieldSpec::from_order(q)?;
    let space = (q as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
    if space > DEFAULT_STATIC_CAP {
        return Err(Error::budget("greedy candidate space", space, DEFAULT_STATIC_CAP));
    }
    let mut candidates: Vec<Vec<Elem>> = all_vectors(q, len).skip(1).collect();
    if let GreedyOrder::Seeded(seed) = order {
        candidates.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    // combinations of <= rho-1 chosen rows, tagged with how many rows they use
    let mut combos: Vec<(Vec<Elem>, usize)> = vec![(vec![0; len], 0)];
    let mut rows: Vec<Vec<Elem>> = vec![];
    while rows.len() < n {
        let pick = candidates.iter().find(|c| {
            combos.iter().all(|(s, _)| {
                let dist = c.iter().zip(s).filter(|(&a, &b)| field.add(a, b) != 0).count();
                dist > 2 * delta
            })
        });
        let Some(c) = pick.cloned() else { break };
        let mut extra = vec![];
        for (s, k) in &combos {
            if k + 1 < rho {
                for a in field.nonzero() {
                    let mut w = s.clone();
                    field.axpy(&mut w, a, &c);
                    extra.push((w, k + 1));
                }
            }
        }
        combos.extend(extra);
        rows.push(c);
    }
    let matrix = (rows.len() == n).then(|| FqMatrix::from_rows(&field, len, &rows)).transpose()?;
    Ok(GreedyOutcome { matrix, rows, condition_holds: gv_condition(n, rho, delta, q, len) })
}

/// Whether the binary map `x -> L x^T` (`F_2^N -> F_2^n`) is `ρ`-weakly
/// `t`-resilient: for every `ρ` outputs, every `t` inputs and every fixing of
/// those inputs, the `ρ` outputs take every value equally often.
pub fn weak_resilience_check(l: &FqMatrix, rho: usize, t: usize, cap: u128) -> Result<bool> {
    if l.field().order() != 2 {
        return Err(Error::InvalidArgument("weak resilience is defined for binary maps only".into()));
    }
    let (n, len) = (l.rows(), l.cols());
    if rho == 0 || rho > n || t > len {
        return Err(Error::InvalidArgument(format!("need 1 <= rho <= {n} and t <= {len}")));
    }
    let cost = binom(n, rho) * binom(len, t) * (1u128 << len) * rho as u128;
    if cost > cap {
        return Err(Error::budget("weak resilience check", cost, cap));
    }
    if len - t < rho {
        return Ok(false);
    }
    let full = (1u64 << len) - 1;
    let row_bits: Vec<u64> =
        (0..n).map(|r| (0..len).filter(|&c| l.get(r, c) == 1).fold(0u64, |a, c| a | 1 << c)).collect();
    let expected = 1u64 << (len - t - rho);
    let mut outs: Vec<usize> = (0..rho).collect();
    loop {
        let mut fixed: Vec<usize> = (0..t).collect();
        loop {
            let mask = fixed.iter().fold(0u64, |a, &c| a | 1 << c);
            for assignment in subsets_of(mask) {
                let mut counts = vec![0u64; 1 << rho];
                for x in subsets_of(full & !mask).map(|free| free | assignment) {
                    let v = outs
                        .iter()
                        .enumerate()
                        .fold(0usize, |a, (k, &r)| a | (((row_bits[r] & x).count_ones() & 1) as usize) << k);
                    counts[v] += 1;
                }
                if counts.iter().any(|&c| c != expected) {
                    return Ok(false);
                }
            }
            if !next_combination(&mut fixed, len) {
                break;
            }
        }
        if !next_combination(&mut outs, n) {
            break;
        }
    }
    Ok(true)
}

fn subsets_of(mask: u64) -> impl Iterator<Item = u64> {
    let mut next = Some(0u64);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == mask { None } else { Some((cur.wrapping_sub(mask)) & mask) };
        Some(cur)
    })
}
