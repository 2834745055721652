mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qbundle::cli::expr::{self, Expr, IntExpr};
use qbundle::ncalg::MonomialWindow;
use rand::SeedableRng;

fn arb_int() -> impl Strategy<Value = IntExpr> {
    let leaf = prop_oneof![(0i64..5).prop_map(IntExpr::Lit), Just(IntExpr::Var("n".into()))];
    leaf.prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| IntExpr::Neg(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| IntExpr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| IntExpr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| IntExpr::Mul(Box::new(a), Box::new(b))),
        ]
    })
}

fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0i64..20, 1i64..4).prop_map(|(n, d)| Expr::Num(BigRational::new(BigInt::from(n), BigInt::from(d)))),
        prop::sample::select(vec!["u", "v", "q", "du", "t"]).prop_map(|s| Expr::Sym(s.into())),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), arb_int()).prop_map(|(a, k)| Expr::Pow(Box::new(a), k)),
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Wedge(Box::new(a), Box::new(b))),
            inner.prop_map(|a| Expr::D(Box::new(a))),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn printed_expressions_parse_back(e in arb_expr()) {
        let printed = e.to_string();
        let back = expr::parse(&printed).map_err(|err| TestCaseError::fail(format!("{printed}: {err}")))?;
        prop_assert_eq!(back.to_string(), printed.clone());
        prop_assert_eq!(back, e, "{}", printed);
    }

    #[test]
    fn integer_expressions_parse_back(k in arb_int()) {
        let printed = k.to_string();
        prop_assert_eq!(expr::parse_int(&printed).unwrap(), k);
    }
}

#[test]
fn rendered_normal_forms_evaluate_to_themselves() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    for name in common::BUILTINS {
        let b = common::bundle(name);
        let p = b.total();
        let basis = MonomialWindow::new(2).with_forms(p.cap().min(2)).enumerate(p).unwrap();
        for _ in 0..250 {
            let e = common::random_elem(p, &basis, &mut rng);
            let text = e.render();
            assert_eq!(expr::eval_elem(&text, p).unwrap(), e, "{name}: {text}");
        }
    }
}
