use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use intdiff::{sample, B1Elem, IOp};
use intdiff_cli::expr::{eval, parse, Dialect, Expr, Symbol};

const CORPUS: &[&str] = &[
    "H",
    "x",
    "D",
    "Int",
    "one",
    "0",
    "7",
    "1/2",
    "-3/4",
    "e(0,0)",
    "e(12,3)",
    "D*Int",
    "Int*D",
    "Int^3*D^3",
    "[H,Int] - Int",
    "[H,D] + D",
    "[D, Int]",
    "[x, D]",
    "[[H, Int], D]",
    "H^2 - 2*H + 1",
    "(H - 1)*Int",
    "-(H - 1)",
    "-H*D",
    "(-H)*D",
    "--H",
    "- -H",
    "H - -D",
    "H - (D - Int)",
    "H - D - Int",
    "H + (D + Int)",
    "(H + D) + Int",
    "H*(D*Int)",
    "(H*D)*Int",
    "H^2^0",
    "(H^2)^3",
    "(1/2)^2",
    "1/2*H",
    "H/2",
    "H/2/3",
    "H*2/3",
    "H*(2/3)",
    "2/3/5",
    "(2)/3",
    "(2/3)/5",
    "x^2/2 + x + 1",
    "e(0,1)^2",
    "e(1,2)*e(2,3) - e(1,3)",
    "1 - e(0,0) - e(1,1)",
    "3*e(2,0) + 1/5*e(0,2)",
    "(D + Int)^4",
    "H*D - D*(H - 1)",
    "[H^2, x*D]",
    "∂*∫",
    "∫ ^ 2 * ∂",
    "  H   +   D  ",
    "(((H)))",
    "[H + 1, D*Int]^2",
    "x*H*D - 2/7*e(3,3)",
];

#[test]
fn corpus_round_trips() {
    assert!(CORPUS.len() >= 50);
    for src in CORPUS {
        let Ok(e) = parse(src, Dialect::I1) else {
            // "H^2^0" is not in the grammar
            assert_eq!(*src, "H^2^0");
            continue;
        };
        let printed = e.to_string();
        assert_eq!(
            parse(&printed, Dialect::I1).unwrap(),
            e,
            "{src} -> {printed}"
        );
        // printing is canonical: a second pass is a fixed point
        assert_eq!(parse(&printed, Dialect::I1).unwrap().to_string(), printed);
    }
}

#[test]
fn canonical_forms_print_as_parseable_expressions() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..200 {
        let a = sample::iop(&mut rng, 4, 3, 4);
        let back: IOp = eval(&parse(&a.to_string(), Dialect::I1).unwrap()).unwrap();
        assert_eq!(back, a, "printed as {a}");
    }
}

#[test]
fn quotient_elements_print_as_parseable_expressions() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    for _ in 0..100 {
        let a = intdiff::iop::pi(&sample::iop(&mut rng, 4, 3, 0));
        let back: B1Elem = eval(&parse(&a.to_string(), Dialect::B1).unwrap()).unwrap();
        assert_eq!(back, a, "printed as {a}");
    }
}

fn arb_expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        (0i64..20, 1i64..5).prop_map(|(p, q)| Expr::Num(intdiff::Scalar::new(p, q))),
        prop::sample::select(vec![
            Symbol::One,
            Symbol::H,
            Symbol::X,
            Symbol::Der,
            Symbol::Int
        ])
        .prop_map(Expr::Sym),
        (0usize..5, 0usize..5).prop_map(|(i, j)| Expr::Unit(i, j)),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Expr::Neg(Box::new(a))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Add(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Sub(Box::new(a), Box::new(b))),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::Mul(Box::new(a), Box::new(b))),
            (inner.clone(), 1u64..5).prop_map(|(a, q)| Expr::Div(Box::new(a), q)),
            (inner.clone(), 0u32..3).prop_map(|(a, n)| Expr::Pow(Box::new(a), n)),
            (inner.clone(), inner).prop_map(|(a, b)| Expr::Comm(Box::new(a), Box::new(b))),
        ]
    })
}

proptest! {
    #[test]
    fn parse_inverts_print(e in arb_expr()) {
        let printed = e.to_string();
        prop_assert_eq!(parse(&printed, Dialect::I1).unwrap(), e, "{}", printed);
    }
}
