mod common;

use common::{matrix_with, perm, poly};
use hamsym::{ExactMatrix, Perm};
use proptest::prelude::*;

fn pair_2x3_3x2() -> impl Strategy<Value = (ExactMatrix, ExactMatrix)> {
    (matrix_with(2, 3, poly()), matrix_with(3, 2, poly()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn transpose_and_dagger_reverse_products((a, b) in pair_2x3_3x2()) {
        let ab = a.matmul(&b).unwrap();
        prop_assert_eq!(ab.transpose(), b.transpose().matmul(&a.transpose()).unwrap());
        prop_assert_eq!(ab.dagger(), b.dagger().matmul(&a.dagger()).unwrap());
    }

    #[test]
    fn matmul_is_associative(
        a in matrix_with(2, 2, poly()),
        b in matrix_with(2, 3, poly()),
        c in matrix_with(3, 2, poly()),
    ) {
        let left = a.matmul(&b).unwrap().matmul(&c).unwrap();
        let right = a.matmul(&b.matmul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn kron_mixed_product(
        a in matrix_with(2, 2, poly()),
        b in matrix_with(2, 1, poly()),
        c in matrix_with(2, 2, poly()),
        d in matrix_with(1, 2, poly()),
    ) {
        let left = a.kron(&b).matmul(&c.kron(&d)).unwrap();
        let right = a.matmul(&c).unwrap().kron(&b.matmul(&d).unwrap());
        prop_assert_eq!(left, right);
    }

    #[test]
    fn direct_sum_multiplies_blockwise(
        a in matrix_with(2, 2, poly()),
        b in matrix_with(1, 1, poly()),
        c in matrix_with(2, 2, poly()),
        d in matrix_with(1, 1, poly()),
    ) {
        let left = a.direct_sum(&b).matmul(&c.direct_sum(&d)).unwrap();
        let right = a.matmul(&c).unwrap().direct_sum(&b.matmul(&d).unwrap());
        prop_assert_eq!(left, right);
    }

    #[test]
    fn permutation_matrices_closed_under_products(
        p in perm(2), q in perm(2), r in perm(3),
    ) {
        let (pm, qm, rm) = (p.to_matrix(), q.to_matrix(), r.to_matrix());
        let star = pm.star2(&qm).unwrap();
        prop_assert!(star.is_permutation_matrix());
        prop_assert!(pm.kron(&rm).is_permutation_matrix());
        prop_assert!(rm.kron(&pm).is_permutation_matrix());
        prop_assert!(pm.direct_sum(&rm).is_permutation_matrix());
        prop_assert!(Perm::from_matrix(&star).is_ok());
    }

    #[test]
    fn hermitian_parts(a in matrix_with(3, 3, poly())) {
        let h = a.add(&a.dagger()).unwrap();
        prop_assert!(h.is_hermitian().unwrap());
    }
}

#[test]
fn star_of_all_2x2_permutations() {
    let perms = [
        ExactMatrix::identity(2),
        ExactMatrix::from_ints(&[&[0, 1], &[1, 0]]).unwrap(),
    ];
    for a in &perms {
        for b in &perms {
            assert!(a.star2(b).unwrap().is_permutation_matrix());
        }
    }
}
