mod common;

use common::*;
use kummer_core::exactnum::{
    is_solution, smith_normal_form, torus_system_solvable, IntMatrix, RingElem, RingId, Solvability,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn ring() -> impl Strategy<Value = RingId> {
    prop::sample::select(RingId::ALL.to_vec())
}

fn elem(ring: RingId) -> impl Strategy<Value = RingElem> {
    (-30i64..=30, -30i64..=30).prop_map(move |(x, y)| RingElem::from_i64(ring, x, y))
}

fn int_matrix(max_rows: usize, max_cols: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| {
        prop::collection::vec(prop::collection::vec(-bound..=bound, c), r)
    })
}

fn from_rows(rows: &[Vec<i64>]) -> IntMatrix {
    IntMatrix::from_i64(rows.len(), rows[0].len(), &rows.concat())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn norm_is_determinant_of_regular_representation((a, _) in ring().prop_flat_map(|r| (elem(r), Just(r)))) {
        prop_assert_eq!(a.norm(), a.regular_representation().det());
    }

    #[test]
    fn regular_representation_is_a_ring_homomorphism(
        (a, b) in ring().prop_flat_map(|r| (elem(r), elem(r)))
    ) {
        let ra = a.regular_representation();
        let rb = b.regular_representation();
        prop_assert_eq!(a.try_mul(&b).unwrap().regular_representation(), ra.mul(&rb));
        prop_assert_eq!(a.try_add(&b).unwrap().regular_representation(), ra.add(&rb));
    }

    #[test]
    fn norm_is_product_with_conjugate((a, r) in ring().prop_flat_map(|r| (elem(r), Just(r)))) {
        let n = a.try_mul(&a.conj()).unwrap();
        prop_assert_eq!(n, RingElem::new(r, a.norm(), BigInt::zero()));
    }

    #[test]
    fn smith_form_matches_determinantal_divisors(rows in int_matrix(4, 5, 6)) {
        let a = from_rows(&rows);
        let snf = smith_normal_form(&a);
        prop_assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.d.clone());
        prop_assert!(snf.u.det().abs() == BigInt::from(1));
        prop_assert!(snf.v.det().abs() == BigInt::from(1));
        let diag = snf.diagonal();
        for i in 0..rows.len() {
            for j in 0..rows[0].len() {
                prop_assert!(i == j || snf.d[(i, j)].is_zero());
            }
        }
        let mut prefix = BigInt::from(1);
        for (k, d) in diag.iter().enumerate() {
            prop_assert!(!d.is_negative());
            if k + 1 < diag.len() && !d.is_zero() {
                prop_assert!((&diag[k + 1] % d).is_zero());
            }
            prefix *= d;
            prop_assert_eq!(prefix.clone(), BigInt::from(determinantal_divisor(&rows, k + 1)));
        }
    }

    #[test]
    fn solvability_matches_subgroup_search(
        rows in int_matrix(3, 5, 3),
        numerators in prop::collection::vec((0i64..6, 1i64..=6), 3),
    ) {
        let c: Vec<(i64, i64)> = numerators.iter().take(rows.len()).map(|&(n, d)| (n % d, d)).collect();
        let Some(expected) = lattice_oracle(&rows, &c, 300_000) else { return Ok(()) };
        let t = from_rows(&rows);
        let cq: Vec<BigRational> = c.iter().map(|&(n, d)| q(n, d)).collect();
        match torus_system_solvable(&t, &cq).unwrap() {
            Solvability::Solvable { witness } => {
                prop_assert!(expected);
                prop_assert!(is_solution(&t, &cq, &witness));
                prop_assert!(witness.iter().all(|w| !w.is_negative() && w < &q(1, 1)));
            }
            Solvability::Obstructed(ob) => {
                prop_assert!(!expected);
                prop_assert!(ob.verify(&t, &cq));
            }
        }
    }
}
