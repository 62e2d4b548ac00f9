use heis_ops::*;
use num_complex::Complex64 as C;
use proptest::prelude::*;
use tengstrand::{Signature, TestFunction};

fn element(s: Signature) -> impl Strategy<Value = GroupElement> {
    prop::collection::vec(-2.0f64..2.0, s.dim()).prop_map(move |x| GroupElement::from_coords(&s, &x))
}

fn member(s: Signature) -> impl Strategy<Value = TestFunction> {
    let dim = s.dim();
    prop::collection::vec((prop::collection::vec(0u32..3, dim), -1.0f64..1.0, -1.0f64..1.0), 1..4).prop_map(
        move |terms| {
            let mut f = TestFunction::gaussian(s, 0.7, 1.2);
            for (m, re, im) in terms {
                f.add_term(m, C::new(re, im));
            }
            f
        },
    )
}

fn points(dim: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(-1.5f64..1.5, dim), 50)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn associativity_complex(x in element(Signature::complex(2, 1)), y in element(Signature::complex(2, 1)), z in element(Signature::complex(2, 1))) {
        let s = Signature::complex(2, 1);
        let l = group_mul(&group_mul(&x, &y, &s).unwrap(), &z, &s).unwrap();
        let r = group_mul(&x, &group_mul(&y, &z, &s).unwrap(), &s).unwrap();
        for (a, b) in l.coords().iter().zip(r.coords()) {
            prop_assert!((a - b).abs() <= 1e-14 * (1.0 + a.abs()));
        }
    }

    #[test]
    fn associativity_quat(x in element(Signature::quat(1, 2)), y in element(Signature::quat(1, 2)), z in element(Signature::quat(1, 2))) {
        let s = Signature::quat(1, 2);
        let l = group_mul(&group_mul(&x, &y, &s).unwrap(), &z, &s).unwrap();
        let r = group_mul(&x, &group_mul(&y, &z, &s).unwrap(), &s).unwrap();
        for (a, b) in l.coords().iter().zip(r.coords()) {
            prop_assert!((a - b).abs() <= 1e-14 * (1.0 + a.abs()));
        }
    }

    #[test]
    fn l_splits_as_l0_plus_l1(f in member(Signature::complex(1, 1)), pts in points(5)) {
        let l = apply_operator(OperatorId::L, &f).unwrap();
        let l01 = apply_operator(OperatorId::L0, &f).unwrap().add(&apply_operator(OperatorId::L1, &f).unwrap());
        for x in &pts {
            let (a, b) = (l.eval(x), l01.eval(x));
            prop_assert!((a - b).norm() <= 1e-12 * (1.0 + a.norm()));
        }
    }

    #[test]
    fn parity_relations(f in member(Signature::complex(1, 2)), pts in points(7)) {
        let fv = involution(&f);
        for (op, sign) in [(OperatorId::L0, 1.0), (OperatorId::L1, -1.0), (OperatorId::T, -1.0)] {
            let lhs = apply_operator(op, &fv).unwrap();
            let rhs = involution(&apply_operator(op, &f).unwrap()).scale(C::new(sign, 0.0));
            for x in &pts {
                let (a, b) = (lhs.eval(x), rhs.eval(x));
                prop_assert!((a - b).norm() <= 1e-12 * (1.0 + a.norm()));
            }
        }
    }
}
