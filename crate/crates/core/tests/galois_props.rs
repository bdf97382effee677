use ecic::galois::{distance, weight, BitMatrix, Elem, FieldSpec, FqMatrix};
use proptest::prelude::*;

const ORDERS: [u32; 9] = [2, 3, 4, 5, 7, 8, 9, 16, 25];

fn field() -> impl Strategy<Value = FieldSpec> {
    prop::sample::select(ORDERS.to_vec()).prop_map(|q| FieldSpec::from_order(q).unwrap())
}

fn elems(f: &FieldSpec, len: usize) -> impl Strategy<Value = Vec<Elem>> {
    prop::collection::vec(0..f.order(), len)
}

fn matrix_over(f: FieldSpec, rows: usize, cols: usize) -> impl Strategy<Value = FqMatrix> {
    elems(&f, rows * cols).prop_map(move |d| FqMatrix::from_flat(&f, rows, cols, d).unwrap())
}

fn matrix() -> impl Strategy<Value = FqMatrix> {
    (field(), 1usize..6, 1usize..7).prop_flat_map(|(f, r, c)| matrix_over(f, r, c))
}

proptest! {
    #[test]
    fn field_axioms(f in field(), seed in any::<[u32; 3]>()) {
        let q = f.order();
        let [a, b, c] = seed.map(|s| s % q);
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        prop_assert_eq!(f.mul(a, 1), a);
        prop_assert_eq!(f.add(a, 0), a);
        match f.inv(a) {
            Some(i) => prop_assert_eq!(f.mul(a, i), 1),
            None => prop_assert_eq!(a, 0),
        }
        // Frobenius: a^q = a
        prop_assert_eq!(f.pow(a, q), a);
        // characteristic
        let mut s = 0;
        for _ in 0..f.p() {
            s = f.add(s, a);
        }
        prop_assert_eq!(s, 0);
    }

    #[test]
    fn rank_of_transpose(m in matrix()) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert!(m.rank() <= m.rows().min(m.cols()));
    }

    #[test]
    fn packed_and_generic_agree(m in (1usize..9, 1usize..12).prop_flat_map(|(r, c)| matrix_over(FieldSpec::gf2(), r, c))) {
        prop_assert_eq!(m.rank(), m.rank_generic());
        prop_assert_eq!(m.rank(), BitMatrix::from_fq(&m).rank());
        prop_assert_eq!(m.rref().basis(), m.rref_generic().basis());
        prop_assert_eq!(m.kernel_basis(), m.kernel_basis_generic());
        prop_assert_eq!(BitMatrix::from_fq(&m).to_fq(m.field()), m);
    }

    #[test]
    fn kernel_is_orthogonal_and_complete(m in matrix()) {
        let k = m.kernel_basis();
        prop_assert_eq!(k.rows(), m.cols() - m.rank());
        if k.rows() > 0 {
            prop_assert!(m.mul(&k.transpose()).unwrap().is_zero());
            prop_assert_eq!(k.rank(), k.rows());
        }
    }

    #[test]
    fn solve_affine_solutions_satisfy(
        (m, x) in matrix().prop_flat_map(|m| { let f = m.field().clone(); let c = m.cols(); (Just(m), elems(&f, c)) })
    ) {
        let b = m.mul_vec(&x);
        let sols = m.solve_affine(&b).unwrap();
        prop_assert!(sols.is_consistent());
        prop_assert_eq!(sols.dimension(), m.cols() - m.rank());
        let mut hit = false;
        for s in sols.take(64) {
            prop_assert_eq!(m.mul_vec(&s), b.clone());
            hit |= s == x;
        }
        if m.rank() == m.cols() {
            prop_assert!(hit);
        }
    }

    #[test]
    fn span_size_and_membership(
        m in (prop::sample::select(vec![2u32, 3, 4, 5]), 1usize..5, 1usize..7)
            .prop_flat_map(|(q, r, c)| matrix_over(FieldSpec::from_order(q).unwrap(), r, c))
    ) {
        let span: Vec<Vec<Elem>> = m.span_iter(1 << 20).unwrap().collect();
        let mut distinct = span.clone();
        distinct.sort();
        distinct.dedup();
        prop_assert_eq!(distinct.len(), span.len());
        prop_assert_eq!(span.len() as u128, (m.field().order() as u128).pow(m.rank() as u32));
        for r in 0..m.rows() {
            prop_assert!(distinct.binary_search(&m.row(r).to_vec()).is_ok());
        }
    }

    #[test]
    fn weight_is_distance_to_zero(f in field(), len in 0usize..10, seed in any::<u64>()) {
        let v: Vec<Elem> = (0..len).map(|k| ((seed >> (k * 3)) as u32) % f.order()).collect();
        prop_assert_eq!(weight(&v), distance(&v, &vec![0; len]));
    }
}

#[test]
fn inconsistent_system_has_no_solutions() {
    let f = FieldSpec::from_order(3).unwrap();
    let m = FqMatrix::from_rows(&f, 2, &[vec![1, 1], vec![2, 2]]).unwrap();
    let s = m.solve_affine(&[1, 1]).unwrap();
    assert!(!s.is_consistent());
    assert_eq!(s.size(), 0);
    assert_eq!(m.solve_affine(&[1, 2]).unwrap().size(), 3);
}
