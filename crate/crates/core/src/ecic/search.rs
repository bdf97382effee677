use serde::Serialize;

use crate::colsearch::{ColumnSearch, SearchLimits};
use crate::error::Result;
use crate::galois::{Elem, FieldSpec, FqMatrix};
use crate::instance::{IcsiInstance, DEFAULT_ENUM_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchStatus {
    /// `n_opt` is certified: a passing matrix plus a refutation one below.
    Optimal,
    /// Every length up to `N_max` was refuted.
    ExceedsMax,
    /// The node budget ran out; only the bracket is known.
    BudgetExceeded,
}

#[derive(Clone, Debug)]
pub struct MinLengthReport {
    pub status: SearchStatus,
    pub n_opt: Option<usize>,
    /// Lexicographically least passing column multiset at `n_opt`.
    pub certificate: Option<FqMatrix>,
    /// `(N, nodes)` for each length refuted exhaustively.
    pub refuted: Vec<(usize, u64)>,
    /// Every length below this is refuted.
    pub lower: usize,
}

/// Shortest `(δ, H)`-ECIC by exhaustive search over multisets of nonzero
/// columns, scanning `N = 2δ, 2δ+1, …, n_max`.
pub fn search_min_length(
    inst: &IcsiInstance,
    field: &FieldSpec,
    delta: usize,
    n_max: usize,
    limits: &SearchLimits,
) -> Result<MinLengthReport> {
    let tests: Vec<Vec<Elem>> = inst.iter_i_projective(field, DEFAULT_ENUM_CAP)?.collect();
    let s = ColumnSearch::new(field, inst.n(), &tests, 2 * delta + 1)?;
    let r = s.min_length(2 * delta, n_max, limits);
    let lower = r.refuted.last().map_or(0, |&(n, _)| n + 1);
    let status = match (&r.optimum, r.exhausted_at) {
        (Some(_), _) => SearchStatus::Optimal,
        (None, Some(_)) => SearchStatus::BudgetExceeded,
        (None, None) => SearchStatus::ExceedsMax,
    };
    let (n_opt, certificate) = r.optimum.map(|(n, m)| (Some(n), Some(m))).unwrap_or((None, None));
    Ok(MinLengthReport { status, n_opt, certificate, refuted: r.refuted, lower })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ecic::verify;
    use crate::golden;

    #[test]
    fn example1_needs_three() {
        let f = FieldSpec::gf2();
        let inst = golden::example1();
        let r = search_min_length(&inst, &f, 1, 6, &SearchLimits::default()).unwrap();
        assert_eq!(r.status, SearchStatus::Optimal);
        assert_eq!(r.n_opt, Some(3));
        assert_eq!(r.lower, 3);
        assert_eq!(r.refuted.last().unwrap().0, 2);
        assert!(verify(&inst, r.certificate.as_ref().unwrap(), 1).unwrap().ok);
    }

    #[test]
    fn exceeds_max() {
        let f = FieldSpec::gf2();
        let r = search_min_length(&golden::pentagon(), &f, 2, 6, &SearchLimits::default()).unwrap();
        assert_eq!(r.status, SearchStatus::ExceedsMax);
        assert_eq!(r.lower, 7);
    }

    #[test]
    fn budget_gives_bracket() {
        let f = FieldSpec::gf2();
        let limits = SearchLimits { node_budget: 1000, workers: 1 };
        let r = search_min_length(&golden::pentagon(), &f, 2, 9, &limits).unwrap();
        assert_eq!(r.status, SearchStatus::BudgetExceeded);
        assert!(r.certificate.is_none());
    }

    #[test]
    fn no_side_information_is_a_plain_code() {
        // N_2[3, 3] = 6
        let f = FieldSpec::gf2();
        let r = search_min_length(&golden::no_side_information(3), &f, 1, 8, &SearchLimits::default()).unwrap();
        assert_eq!(r.n_opt, Some(6));
    }
}
