mod common;

use avglie::cli::{Document, Object};
use avglie::cohomology::{delta_alie, is_cocycle};
use avglie::extensions::{build_extension, extract_cocycle};
use avglie::{Field, Matrix};
use common::*;
use proptest::prelude::*;

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Rationals),
        Just(Field::Prime(2)),
        Just(Field::Prime(3)),
        Just(Field::Prime(7))
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rational_scalars_round_trip_through_text(n in -10_000i64..10_000, d in 1i64..500) {
        let f = Field::Rationals;
        let q = f.parse_scalar(&format!("{n}/{d}")).unwrap();
        prop_assert_eq!(f.parse_scalar(&q.to_string()).unwrap(), q);
    }

    #[test]
    fn residues_round_trip_through_text(k in 0u64..1000, p in prop_oneof![Just(2u64), Just(3), Just(5), Just(101)]) {
        let f = Field::Prime(p);
        let x = f.element(k);
        prop_assert_eq!(f.parse_scalar(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn rank_plus_nullity_is_column_count(f in field(), seed: u64, rows in 1usize..5, cols in 1usize..5) {
        let m = matrix(f, rows, cols, &mut rng(seed));
        prop_assert_eq!(m.rank() + m.kernel_basis().len(), cols);
        for k in m.kernel_basis() {
            prop_assert!(m.apply(&k).iter().all(|x| x == &f.zero()));
        }
    }

    #[test]
    fn inverse_is_two_sided(f in field(), seed: u64, n in 1usize..5) {
        let m = invertible(f, n, &mut rng(seed));
        let inv = m.inverse().unwrap();
        prop_assert!(m.mul(&inv).is_identity() && inv.mul(&m).is_identity());
    }

    #[test]
    fn transport_is_undone_by_the_inverse(f in field(), seed: u64) {
        let mut rng = rng(seed);
        let a = averaging(f, &mut rng);
        let s = invertible(f, a.dim(), &mut rng);
        let back = transport_algebra(&transport_algebra(&a, &s), &s.inverse().unwrap());
        prop_assert_eq!(back, a);
    }

    #[test]
    fn delta_squares_to_zero(f in field(), seed: u64, degree in 1usize..3) {
        let mut rng = rng(seed);
        let a = averaging(f, &mut rng);
        let r = representation_of(&a, &mut rng);
        let c = random_cochain(&r, degree, &mut rng);
        prop_assert!(delta_alie(&r, &delta_alie(&r, &c)).is_zero());
    }

    #[test]
    fn kernel_samples_are_cocycles(f in field(), seed: u64, degree in 1usize..4) {
        let mut rng = rng(seed);
        let a = averaging(f, &mut rng);
        let r = representation_of(&a, &mut rng);
        prop_assert!(is_cocycle(&r, &random_cocycle_of(&r, degree, &mut rng)));
    }

    #[test]
    fn extract_inverts_build(f in field(), seed: u64) {
        let c = nonabelian_cocycle(f, &mut rng(seed));
        let e = build_extension(&c).unwrap();
        prop_assert_eq!(extract_cocycle(&e, &e.section_or_default()).unwrap(), c);
    }

    #[test]
    fn documents_round_trip(f in field(), seed: u64) {
        let mut rng = rng(seed);
        let a = averaging(f, &mut rng);
        let r = representation_of(&a, &mut rng);
        for object in [Object::AveragingLieAlgebra(a), Object::Representation(r)] {
            let text = object.to_document().to_json();
            let parsed = Object::from_document(&Document::parse(&text).unwrap()).unwrap();
            prop_assert_eq!(parsed.to_document().to_json(), text);
        }
    }

    #[test]
    fn cocycle_documents_round_trip(f in field(), seed: u64) {
        let c = nonabelian_cocycle(f, &mut rng(seed));
        let text = Object::Cocycle(c.clone()).to_document().to_json();
        match Object::from_document(&Document::parse(&text).unwrap()).unwrap() {
            Object::Cocycle(back) => prop_assert_eq!(back, c),
            _ => prop_assert!(false, "wrong kind"),
        }
    }
}

#[test]
fn singular_matrices_have_no_inverse() {
    let f = Field::Prime(3);
    assert!(Matrix::from_i64(f, 2, 2, &[1, 2, 2, 1]).inverse().is_none());
}
