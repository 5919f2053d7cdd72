use std::sync::Arc;

use mfkit::ring::{FieldSpec, GradedRing, Monomial, Poly, PolyMatrix};
use proptest::prelude::*;

fn rings() -> [Arc<GradedRing>; 2] {
    [
        GradedRing::new(["x", "y"], vec![1, 2], FieldSpec::Rationals).unwrap(),
        GradedRing::new(["x", "y"], vec![1, 2], FieldSpec::PrimeField(7)).unwrap(),
    ]
}

fn poly(ring: &Arc<GradedRing>, terms: &[(i64, u32, u32)]) -> Poly {
    let terms: Vec<_> = terms.iter().map(|&(c, a, b)| (ring.field().from_i64(c), Monomial(vec![a, b]))).collect();
    Poly::from_terms(ring, terms).unwrap()
}

fn terms() -> impl Strategy<Value = Vec<(i64, u32, u32)>> {
    prop::collection::vec((-9i64..=9, 0u32..4, 0u32..3), 0..5)
}

proptest! {
    #[test]
    fn commutative_ring(a in terms(), b in terms(), c in terms(), field in 0usize..2) {
        let r = &rings()[field];
        let (a, b, c) = (poly(r, &a), poly(r, &b), poly(r, &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Poly::one(r), a.clone());
    }

    #[test]
    fn degrees_add(a in terms(), b in terms()) {
        let r = &rings()[0];
        let (a, b) = (poly(r, &a), poly(r, &b));
        if let (Some(da), Some(db)) = (a.homogeneous_degree(), b.homogeneous_degree()) {
            let ab = &a * &b;
            prop_assert!(ab.is_zero() || ab.is_homogeneous_of(da + db));
        }
    }

    #[test]
    fn display_parses_back(a in terms(), field in 0usize..2) {
        let r = &rings()[field];
        let a = poly(r, &a);
        prop_assert_eq!(mfkit::ring::parse_poly(r, &a.to_string()).unwrap(), a);
    }

    #[test]
    fn matrix_product_associates(entries in prop::collection::vec(terms(), 12)) {
        let r = &rings()[1];
        let ps: Vec<Poly> = entries.iter().map(|t| poly(r, t)).collect();
        let a = PolyMatrix::from_entries(r, 2, 2, ps[0..4].to_vec()).unwrap();
        let b = PolyMatrix::from_entries(r, 2, 2, ps[4..8].to_vec()).unwrap();
        let c = PolyMatrix::from_entries(r, 2, 2, ps[8..12].to_vec()).unwrap();
        let left = a.checked_mul(&b).unwrap().checked_mul(&c).unwrap();
        let right = a.checked_mul(&b.checked_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}
