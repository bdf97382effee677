//! Exact arithmetic over `F_q` and the linear-algebra kernel used by every
//! other module: rank, kernels, affine solution sets and span enumeration.

mod field;
mod gf2;
mod matrix;
mod text;

pub use field::{is_irreducible, prime_power, weight, Elem, FieldSpec, DEFAULT_ORDER_CAP};
pub use gf2::BitMatrix;
pub use matrix::{distance, span_iter, AffineSolutions, Echelon, FqMatrix, SpanIter, DEFAULT_SPAN_CAP};
pub use text::{matrix_from_text, matrix_to_text};

pub(crate) use matrix::advance;

/// Iterates every vector in `F_q^len` in lexicographic code order.
pub fn all_vectors(q: u32, len: usize) -> impl Iterator<Item = Vec<Elem>> {
    let mut state = Some(vec![0; len]);
    std::iter::from_fn(move || {
        let cur = state.take()?;
        let mut next = cur.clone();
        if advance(&mut next, q) {
            state = Some(next);
        }
        Some(cur)
    })
}

/// Nonzero vectors of `F_q^len` whose first nonzero entry is 1, in
/// lexicographic order: one representative per one-dimensional subspace.
pub fn projective_points(q: u32, len: usize) -> Vec<Vec<Elem>> {
    all_vectors(q, len).filter(|v| v.iter().find(|&&x| x != 0) == Some(&1)).collect()
}
