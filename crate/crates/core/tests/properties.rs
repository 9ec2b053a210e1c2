use disord_core::mvp_text::MVP_HEADER;
use disord_core::{
    parse_mvp, print_mvp, value, BinaryOp, Disord, Error, Monomial, Mvp, ProvenanceHash, StorageOrder, Value,
};
use proptest::prelude::*;

const SYMBOLS: [&str; 4] = ["a", "b", "x", "y"];

fn monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec((0..SYMBOLS.len(), -2i64..=4), 0..4)
        .prop_map(|powers| Monomial::from_powers(powers.into_iter().map(|(i, e)| (SYMBOLS[i], e))))
}

fn poly() -> impl Strategy<Value = Mvp> {
    prop::collection::vec((monomial(), -9i64..=9), 0..5)
        .prop_map(|terms| Mvp::from_terms(terms.into_iter().map(|(m, c)| (m, c as f64))))
}

fn order() -> impl Strategy<Value = StorageOrder> {
    prop_oneof![Just(StorageOrder::Insertion), any::<u64>().prop_map(StorageOrder::Shuffle)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn reversal_token_is_an_involution(bytes in any::<[u8; 20]>()) {
        let h = ProvenanceHash::from_bytes(bytes);
        prop_assert_ne!(h.involute_reverse(), h);
        prop_assert_eq!(h.involute_reverse().involute_reverse(), h);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1_000))]

    #[test]
    fn ring_laws(a in poly(), b in poly(), c in poly()) {
        let zero = Mvp::zero();
        let one = Mvp::constant(1.0);
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.add(&zero), a.clone());
        prop_assert_eq!(a.mul(&one), a.clone());
        prop_assert!(a.sub(&a).is_zero());
        prop_assert!(a.mul(&zero).is_zero());
    }

    #[test]
    fn difference_of_squares(a in poly(), b in poly()) {
        let lhs = a.add(&b).mul(&a.sub(&b));
        let rhs = a.int_pow(2).unwrap().sub(&b.int_pow(2).unwrap());
        prop_assert!(lhs.equals(&rhs));
    }

    #[test]
    fn print_then_parse_is_identity(p in poly()) {
        let printed = print_mvp(&p);
        let body = printed.strip_prefix(MVP_HEADER).unwrap();
        prop_assert_eq!(parse_mvp(body).unwrap(), p);
    }

    #[test]
    fn layout_never_changes_the_value(p in poly(), o in order()) {
        let q = p.arranged(&o);
        prop_assert_eq!(&q, &p);
        prop_assert_eq!(q.canonical_digest(), p.canonical_digest());
        prop_assert_eq!(print_mvp(&q), print_mvp(&p));
    }

    #[test]
    fn replacing_a_masked_extract_restores_the_original(
        xs in prop::collection::vec(-20i32..20, 0..=12),
        threshold in -20i32..20,
        o in order(),
    ) {
        let d = Disord::create(value::numbers(xs.iter().map(|&x| f64::from(x))), &o).unwrap();
        let mask = Disord::elementwise_binary(BinaryOp::Lt, &d, Value::from(f64::from(threshold))).unwrap();
        let part = d.extract_bool(&mask).unwrap();
        let back = d.replace_bool(&mask, part).unwrap();
        prop_assert_eq!(back.hash(), d.hash());
        prop_assert_eq!(back, d);
    }

    #[test]
    fn unequal_hashes_never_combine(
        xs in prop::collection::vec(-20i32..20, 1..=8),
        ys in prop::collection::vec(-20i32..20, 1..=8),
    ) {
        let d = Disord::new(value::numbers(xs.iter().map(|&x| f64::from(x)))).unwrap();
        let e = Disord::new(value::numbers(ys.iter().map(|&y| f64::from(y)))).unwrap();
        prop_assume!(d.hash() != e.hash());
        for op in BinaryOp::ALL {
            let result = Disord::elementwise_binary(op, &d, &e);
            prop_assert!(matches!(result, Err(Error::HashMismatch { .. })), "{op:?}");
        }
    }
}
