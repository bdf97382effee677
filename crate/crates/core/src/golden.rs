//! Reference instances and matrices used throughout the tests, the
//! acceptance suite and the CLI's built-in demos.

use crate::galois::{FieldSpec, FqMatrix};
use crate::instance::IcsiInstance;

fn binary(rows: &[&[u32]]) -> FqMatrix {
    let f = FieldSpec::gf2();
    let cols = rows[0].len();
    FqMatrix::from_rows(&f, cols, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
        .expect("well-formed binary matrix")
}

/// Three receivers, each holding the other two messages.
pub fn example1() -> IcsiInstance {
    IcsiInstance::from_one_based(3, &[1, 2, 3], &[vec![2, 3], vec![1, 3], vec![1, 2]]).unwrap()
}

/// A `[4,3,1]` generator that nevertheless corrects one error for [`example1`].
pub fn example1_matrix() -> FqMatrix {
    binary(&[&[1, 1, 1, 0], &[1, 1, 0, 1], &[1, 0, 1, 1]])
}

/// The all-ones 3x3 matrix: a length-3 one-error-correcting code for [`example1`].
pub fn example1_repetition() -> FqMatrix {
    binary(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]])
}

/// Five receivers, receiver `i` holding messages `i+1, i+2, i+3` (cyclically).
pub fn example2() -> IcsiInstance {
    IcsiInstance::from_one_based(
        5,
        &[1, 2, 3, 4, 5],
        &[vec![2, 3, 4], vec![3, 4, 5], vec![4, 5, 1], vec![5, 1, 2], vec![1, 2, 3]],
    )
    .unwrap()
}

/// The 5x2 lifting basis for [`example2`].
pub fn example2_basis() -> FqMatrix {
    binary(&[&[1, 0], &[0, 1], &[1, 0], &[0, 1], &[1, 1]])
}

/// Side-information graph is the 5-cycle.
pub fn pentagon() -> IcsiInstance {
    IcsiInstance::from_one_based(5, &[1, 2, 3, 4, 5], &[vec![2, 5], vec![1, 3], vec![2, 4], vec![3, 5], vec![1, 4]])
        .unwrap()
}

/// A length-9 two-error-correcting index code for [`pentagon`].
pub fn pentagon_matrix() -> FqMatrix {
    binary(&[
        &[1, 1, 1, 1, 1, 0, 0, 0, 0],
        &[0, 1, 0, 1, 1, 0, 1, 1, 0],
        &[1, 1, 0, 0, 0, 1, 1, 1, 0],
        &[0, 1, 1, 0, 0, 1, 0, 1, 1],
        &[1, 0, 1, 0, 1, 0, 0, 1, 1],
    ])
}

/// `m = n`, `f = id`, no receiver knows anything.
pub fn no_side_information(n: usize) -> IcsiInstance {
    IcsiInstance::with_identity_demands(vec![vec![]; n]).unwrap()
}

/// Odd cycle `C_{2l+1}`: receiver `i` holds its two cyclic neighbours.
pub fn odd_cycle(l: usize) -> IcsiInstance {
    let n = 2 * l + 1;
    let side = (0..n).map(|i| vec![(i + n - 1) % n, (i + 1) % n]).collect();
    IcsiInstance::with_identity_demands(side).unwrap()
}

/// Complement of `C_{2l+1}`: receiver `i` holds everything except itself
/// and its two cyclic neighbours.
pub fn odd_cycle_complement(l: usize) -> IcsiInstance {
    let n = 2 * l + 1;
    let side =
        (0..n).map(|i| (0..n).filter(|&j| j != i && j != (i + 1) % n && j != (i + n - 1) % n).collect()).collect();
    IcsiInstance::with_identity_demands(side).unwrap()
}
