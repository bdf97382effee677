use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::minrank::{min_rank, DEFAULT_MINRANK_NODES};
use super::verify::{verify, VerificationReport};
use crate::bounds::{min_distance, random_coding_holds, random_coding_length};
use crate::colsearch::{ColumnSearch, LengthOutcome, SearchLimits};
use crate::error::{Error, Result};
use crate::galois::{Elem, FieldSpec, FqMatrix};
use crate::instance::{IcsiInstance, DEFAULT_ENUM_CAP};

/// An index code matrix together with the verification it passed.
#[derive(Clone, Debug)]
pub struct Construction {
    pub matrix: FqMatrix,
    pub report: VerificationReport,
}

fn finish(inst: &IcsiInstance, l: FqMatrix, delta: usize) -> Result<Construction> {
    let report = verify(inst, &l, delta)?;
    if !report.ok {
        return Err(Error::ConditionViolated(format!(
            "constructed matrix has min weight {} < {}",
            report.min_weight,
            2 * delta + 1
        )));
    }
    Ok(Construction { matrix: l, report })
}

fn check_outer(outer: &FqMatrix, rows: usize, what: &str, delta: usize) -> Result<()> {
    if outer.rows() != rows {
        return Err(Error::dim(format!("outer code has {} rows, expected {what} = {rows}", outer.rows())));
    }
    let q = outer.field().order() as u128;
    if q.checked_pow(rows as u32).is_some_and(|s| s <= DEFAULT_ENUM_CAP) {
        let d = min_distance(outer, DEFAULT_ENUM_CAP)?;
        if d < 2 * delta + 1 {
            return Err(Error::ConditionViolated(format!("outer code has minimum distance {d} < {}", 2 * delta + 1)));
        }
    }
    Ok(())
}

/// `L = L_opt · outer`, where `L_opt` is an optimal error-free index code
/// and `outer` generates an `[N, κ, 2δ+1]_q` code.
pub fn construct_concat(
    inst: &IcsiInstance,
    field: &FieldSpec,
    delta: usize,
    outer: &FqMatrix,
) -> Result<Construction> {
    let w = min_rank(inst, field, DEFAULT_MINRANK_NODES)?;
    construct_concat_with(inst, &w.l_opt, delta, outer)
}

/// As [`construct_concat`] with a caller-supplied `L_opt`.
pub fn construct_concat_with(
    inst: &IcsiInstance,
    l_opt: &FqMatrix,
    delta: usize,
    outer: &FqMatrix,
) -> Result<Construction> {
    check_outer(outer, l_opt.cols(), "kappa", delta)?;
    finish(inst, l_opt.mul(outer)?, delta)
}

/// An `n x α` matrix `B` such that `z B ≠ 0` for every `z ∈ I(δ, H)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftBasis {
    pub b: FqMatrix,
}

impl LiftBasis {
    pub fn new(b: FqMatrix) -> Self {
        LiftBasis { b }
    }

    /// Checks the lifting condition exhaustively. On failure the error names
    /// the support `K` (1-based) and coefficient vector `z` with `z B = 0`.
    pub fn check(&self, inst: &IcsiInstance) -> Result<()> {
        if self.b.rows() != inst.n() {
            return Err(Error::dim(format!("B has {} rows, instance has n = {}", self.b.rows(), inst.n())));
        }
        for z in inst.iter_i_projective(self.b.field(), DEFAULT_ENUM_CAP)? {
            if self.b.vec_mul(&z).iter().all(|&x| x == 0) {
                let k: Vec<usize> = (0..z.len()).filter(|&j| z[j] != 0).map(|j| j + 1).collect();
                return Err(Error::ConditionViolated(format!("lift basis fails for K = {k:?}, z = {z:?}")));
            }
        }
        Ok(())
    }

    /// Lexicographically least basis with `cols` columns, found by the
    /// column-multiset search. `None` if no such basis exists.
    pub fn search(inst: &IcsiInstance, field: &FieldSpec, cols: usize, limits: &SearchLimits) -> Result<Option<Self>> {
        let tests: Vec<Vec<Elem>> = inst.iter_i_projective(field, DEFAULT_ENUM_CAP)?.collect();
        let s = ColumnSearch::new(field, inst.n(), &tests, 1)?;
        match s.search(cols, limits).0 {
            LengthOutcome::Found(seq) => Ok(Some(LiftBasis { b: s.matrix(&seq) })),
            LengthOutcome::Refuted => Ok(None),
            LengthOutcome::Exhausted => {
                Err(Error::budget("lift basis search nodes", limits.node_budget, limits.node_budget))
            }
        }
    }
}

/// `L = B · outer` for a lifting basis `B` and an `[N, α, 2δ+1]_q` outer code.
pub fn construct_lift(inst: &IcsiInstance, basis: &LiftBasis, delta: usize, outer: &FqMatrix) -> Result<Construction> {
    basis.check(inst)?;
    check_outer(outer, basis.b.cols(), "alpha", delta)?;
    finish(inst, basis.b.mul(outer)?, delta)
}

/// Outcome of [`construct_random`]. `matrix` is absent when every attempt failed.
#[derive(Clone, Debug, Serialize)]
pub struct RandomReport {
    pub n: usize,
    pub delta: usize,
    pub attempts: u64,
    #[serde(skip)]
    pub matrix: Option<FqMatrix>,
    /// Whether `N` satisfies the random-coding existence condition.
    pub condition_holds: bool,
    /// Smallest length satisfying that condition.
    pub condition_length: usize,
    /// `κ + 2δ`, when min-rank was computed; no length below it can succeed.
    pub singleton: Option<usize>,
}

/// Draws uniform `n x N` matrices from a ChaCha8 stream seeded by `seed` and
/// returns the first that verifies.
pub fn construct_random(
    inst: &IcsiInstance,
    field: &FieldSpec,
    delta: usize,
    len: usize,
    seed: u64,
    max_attempts: u64,
) -> Result<RandomReport> {
    if len == 0 {
        return Err(Error::InvalidArgument("N must be at least 1".into()));
    }
    let q = field.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = RandomReport {
        n: len,
        delta,
        attempts: 0,
        matrix: None,
        condition_holds: random_coding_holds(inst, q, len, delta),
        condition_length: random_coding_length(inst, q, delta),
        singleton: None,
    };
    while report.attempts < max_attempts {
        report.attempts += 1;
        let data = (0..inst.n() * len).map(|_| rng.gen_range(0..q)).collect();
        let l = FqMatrix::from_flat(field, inst.n(), len, data)?;
        if verify(inst, &l, delta)?.ok {
            report.matrix = Some(l);
            return Ok(report);
        }
    }
    if let Ok(w) = min_rank(inst, field, DEFAULT_MINRANK_NODES) {
        report.singleton = w.certified.then_some(w.kappa + 2 * delta);
    }
    Ok(report)
}
