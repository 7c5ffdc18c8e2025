use proptest::prelude::*;
use weyr::mci::{AlgebraElement, LefschetzReport, MciDescriptor, TermJson};
use weyr::sweep::{verify_sweep, SweepRequest};
use weyr::weyr::build_basic_weyr;
use weyr::{ExactMatrix, FieldSpec, Partition};

const Q: FieldSpec = FieldSpec::Rationals;

fn field() -> impl Strategy<Value = FieldSpec> {
    prop::sample::select(vec![0u64, 2, 7, 1_000_003])
        .prop_map(|p| if p == 0 { Q } else { FieldSpec::prime(p).unwrap() })
}

proptest! {
    #[test]
    fn matrix_json_and_csv_round_trip(
        f in field(),
        rows in 1usize..6,
        cols in 1usize..6,
        seed in proptest::collection::vec((-50i64..50, 1i64..9), 36),
    ) {
        let m = ExactMatrix::from_fn(rows, cols, f, |i, j| {
            let (n, d) = seed[i * 6 + j];
            match f {
                FieldSpec::Rationals => weyr::Scalar::rational(n, d).unwrap(),
                _ => f.from_i64(n),
            }
        }).unwrap();
        prop_assert_eq!(ExactMatrix::from_json(&m.to_json()).unwrap(), m.clone());
        prop_assert_eq!(ExactMatrix::from_csv(&m.to_csv(), f).unwrap(), m);
    }

    #[test]
    fn partition_json_round_trip(parts in proptest::collection::vec(1usize..9, 1..7)) {
        let p = Partition::from_unsorted(parts).unwrap();
        let j = serde_json::to_string(&p).unwrap();
        prop_assert_eq!(serde_json::from_str::<Partition>(&j).unwrap(), p);
    }

    #[test]
    fn descriptor_and_element_round_trip(
        f in field(),
        degrees in proptest::collection::vec(1u32..4, 1..4),
        coeffs in proptest::collection::vec(-5i64..5, 3),
    ) {
        let d = MciDescriptor::new(degrees, f).unwrap();
        let j = serde_json::to_string(&d).unwrap();
        prop_assert_eq!(serde_json::from_str::<MciDescriptor>(&j).unwrap(), d.clone());
        let lin: Vec<_> = coeffs[..d.num_vars()].iter().map(|&c| f.from_i64(c)).collect();
        let e = AlgebraElement::linear(&d, &lin).unwrap().add(&AlgebraElement::sierpinski_element(&d));
        let text = serde_json::to_string(&e.to_json()).unwrap();
        let terms: Vec<TermJson> = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(AlgebraElement::from_json(&terms, &d).unwrap(), e);
    }
}

#[test]
fn reports_serialize_with_string_scalars() {
    let b = build_basic_weyr(&Q.from_i64(-2), &Partition::new(vec![2, 1]).unwrap()).unwrap();
    let r = weyr::weyr_structure_at(&b, &Q.from_i64(-2)).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["eigenvalue"], "-2");
    assert_eq!(v["structure"], serde_json::json!([2, 1]));
    assert_eq!(v["rank_ladder"], serde_json::json!([3, 1, 0]));

    let d = MciDescriptor::quadratic(2, FieldSpec::prime(2).unwrap()).unwrap();
    let rep = weyr::mci::strong_lefschetz_check(&d, &AlgebraElement::variable_sum(&d)).unwrap();
    let back: LefschetzReport = serde_json::from_value(serde_json::to_value(&rep).unwrap()).unwrap();
    assert_eq!(back, rep);
}

#[test]
fn sweep_summary_serializes_in_case_order() {
    let s = verify_sweep(&SweepRequest::exhaustive(3, vec![2, 3], vec![0, 1], Q)).unwrap();
    let v = serde_json::to_value(&s).unwrap();
    let idx: Vec<u64> = v["cases"].as_array().unwrap().iter().map(|c| c["index"].as_u64().unwrap()).collect();
    assert_eq!(idx, (0..s.total as u64).collect::<Vec<_>>());
    assert_eq!(v["field"], "q");
    assert_eq!(v["failed"], 0);
}
