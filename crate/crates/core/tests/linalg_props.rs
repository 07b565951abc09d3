use proptest::prelude::*;
use symcell::{FieldSpec, Matrix, SubspaceBasis};

fn fields() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::rationals()),
        Just(FieldSpec::prime(2).unwrap()),
        Just(FieldSpec::prime(7).unwrap()),
    ]
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix> {
    (fields(), 0..=max_rows, 1..=max_cols).prop_flat_map(|(f, r, c)| {
        proptest::collection::vec(-3i64..=3, r * c).prop_map(move |v| {
            let rows: Vec<&[i64]> = v.chunks(c).collect();
            if rows.is_empty() {
                Matrix::zeros(f, 0, c)
            } else {
                Matrix::from_i64(f, &rows)
            }
        })
    })
}

fn square(max: usize) -> impl Strategy<Value = Matrix> {
    (fields(), 1..=max).prop_flat_map(|(f, n)| {
        proptest::collection::vec(-3i64..=3, n * n).prop_map(move |v| {
            let rows: Vec<&[i64]> = v.chunks(n).collect();
            Matrix::from_i64(f, &rows)
        })
    })
}

fn row_space(m: &Matrix) -> SubspaceBasis {
    SubspaceBasis::from_matrix_rows(m)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rref_is_idempotent(m in matrix(5, 5)) {
        let once = m.rref();
        let twice = once.matrix.rref();
        prop_assert_eq!(&twice.matrix, &once.matrix);
        prop_assert_eq!(twice.pivots, once.pivots);
    }

    #[test]
    fn rank_nullity(m in matrix(5, 6)) {
        prop_assert_eq!(m.rank() + m.kernel().dim(), m.cols());
    }

    #[test]
    fn kernel_vectors_are_annihilated(m in matrix(4, 5)) {
        for v in m.kernel().vectors() {
            prop_assert!(m.mul_vec(&v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn double_inversion(m in square(4)) {
        match m.invert() {
            Ok(inv) => {
                prop_assert_eq!(inv.invert().unwrap(), m.clone());
                prop_assert!(m.mul(&inv).unwrap().is_identity());
                prop_assert!(!m.det().is_zero());
            }
            Err(_) => prop_assert!(m.det().is_zero()),
        }
    }

    #[test]
    fn sum_and_intersection_dimensions((a, b) in (fields(), 1..=5usize).prop_flat_map(|(f, n)| {
        let vecs = move || proptest::collection::vec(proptest::collection::vec(-2i64..=2, n), 0..=4)
            .prop_map(move |rows| {
                let rows: Vec<Vec<_>> = rows.iter().map(|r| r.iter().map(|&x| f.from_i64(x)).collect()).collect();
                SubspaceBasis::from_spanning(f, n, &rows).unwrap()
            });
        (vecs(), vecs())
    })) {
        let rel = a.compare(&b).unwrap();
        prop_assert_eq!(rel.sum.dim() + rel.intersection.dim(), a.dim() + b.dim());
        prop_assert!(rel.sum.contains(&a).unwrap() && rel.sum.contains(&b).unwrap());
        prop_assert!(a.contains(&rel.intersection).unwrap() && b.contains(&rel.intersection).unwrap());
        prop_assert_eq!(rel.contains, a.contains(&b).unwrap());
    }

    #[test]
    fn row_order_does_not_change_the_subspace(m in matrix(5, 4), seed in any::<u64>()) {
        let mut order: Vec<usize> = (0..m.rows()).collect();
        // deterministic shuffle from the seed
        let mut s = seed;
        for i in (1..order.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        let rows: Vec<_> = order.iter().map(|&r| m.row(r).to_vec()).collect();
        let shuffled = Matrix::from_rows(m.field(), m.cols(), &rows).unwrap();
        prop_assert_eq!(row_space(&shuffled), row_space(&m));
        prop_assert_eq!(shuffled.rref().matrix, m.rref().matrix);
    }

    #[test]
    fn solve_returns_solutions(m in matrix(4, 4), x in proptest::collection::vec(-3i64..=3, 4)) {
        let f = m.field();
        let x: Vec<_> = x[..m.cols()].iter().map(|&v| f.from_i64(v)).collect();
        let b = m.mul_vec(&x);
        let y = m.solve(&b).expect("consistent by construction");
        prop_assert_eq!(m.mul_vec(&y), b);
    }

    #[test]
    fn transpose_preserves_rank(m in matrix(4, 5)) {
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }
}
