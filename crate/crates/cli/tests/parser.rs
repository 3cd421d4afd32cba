use infchow::algebra::Q;
use infchow_cli::expr::{parse_b2_sum, parse_expr, parse_wedge_sum, Expr, Kind, Span};
use proptest::prelude::*;

fn kind(e: &str) -> Kind {
    parse_expr(e).unwrap().kind
}

#[test]
fn product_tree() {
    let e = parse_expr("s*(1-s)").unwrap();
    match e.kind {
        Kind::Mul(a, b) => {
            assert_eq!(a.kind, Kind::Var('s'));
            assert!(matches!(b.kind, Kind::Sub(..)));
        }
        k => panic!("{:?}", k),
    }
}

#[test]
fn rational_literals_and_powers() {
    assert_eq!(kind("2/3"), Kind::Num(Q::new(2, 3)));
    // the grammar reads `2/3^2` as (2/3)^2
    assert_eq!(parse_expr("2/3^2").unwrap().to_string(), "(2/3)^2");
    assert_eq!(parse_expr("s / 2").unwrap().to_string(), "s/(2)");
    assert_eq!(parse_expr("s^-2").unwrap().to_string(), "s^-2");
}

#[test]
fn canonical_printing() {
    for (src, want) in [
        ("s*(1-s)", "s*(1 - s)"),
        ("  exp( t*s )  ", "exp(t*s)"),
        ("(a - (b - c))", "a - (b - c)"),
        ("((a - b) - c)", "a - b - c"),
        ("-(s+t)^2", "-(s + t)^2"),
        ("1/2*s", "1/2*s"),
    ] {
        assert_eq!(parse_expr(src).unwrap().to_string(), want, "{}", src);
    }
}

#[test]
fn tensor_and_sums() {
    let b = parse_b2_sum("[s*exp(t)](x)s").unwrap();
    assert_eq!(b.terms.len(), 1);
    assert!(b.terms[0].y.is_some());
    assert_eq!(b.to_string(), "[s*exp(t)](x)s");
    let b = parse_b2_sum("2[s] - 1/2*[1-s](x)(s+1) + [t+s](x)x").unwrap();
    assert_eq!(b.terms.len(), 3);
    assert_eq!(b.terms[1].coef, Q::new(-1, 2));
    assert_eq!(b.to_string(), "2*[s] - 1/2*[1 - s](x)(s + 1) + [t + s](x)x");
    let w = parse_wedge_sum("-s /\\ 1 - s").unwrap();
    assert_eq!(w.terms.len(), 1);
    assert_eq!(w.to_string(), "-s /\\ 1 - s");
    let w = parse_wedge_sum("2{s /\\ t+1} - {a /\\ b /\\ c}").unwrap();
    assert_eq!(w.terms[0].0, Q::int(2));
    assert_eq!(w.terms[1].0, Q::int(-1));
}

#[test]
fn positioned_errors() {
    let e = parse_expr("s + * t").unwrap_err();
    assert_eq!(e.span, Span { start: 4, end: 5 });
    assert!(e.render("s + * t").starts_with("column 5: expected an expression"));
    let e = parse_expr("exp(s").unwrap_err();
    assert_eq!(e.span.start, 5);
    let e = parse_expr("s ? t").unwrap_err();
    assert!(e.msg.contains("unexpected character"));
    let e = parse_wedge_sum("s /\\ t /\\ u /\\ v").unwrap_err();
    assert!(e.msg.contains("2 or 3 factors"));
    assert!(parse_b2_sum("[s").is_err());
    assert!(parse_expr("1/0").is_err());
}

fn leaf() -> impl Strategy<Value = Expr> {
    let sp = Span { start: 0, end: 0 };
    prop_oneof![
        (0i64..20, 1i64..5).prop_map(move |(p, q)| Expr { kind: Kind::Num(Q::new(p, q)), span: sp }),
        prop::sample::select(vec!['s', 'x', 't', 'u']).prop_map(move |c| Expr { kind: Kind::Var(c), span: sp }),
        prop::sample::select(vec!["a", "f1", "g_2"]).prop_map(move |n| Expr { kind: Kind::Name(n.to_string()), span: sp }),
    ]
}

fn tree() -> impl Strategy<Value = Expr> {
    let sp = Span { start: 0, end: 0 };
    leaf().prop_recursive(5, 40, 2, move |inner| {
        let b = |k: fn(Box<Expr>, Box<Expr>) -> Kind| {
            (inner.clone(), inner.clone()).prop_map(move |(a, c)| Expr { kind: k(Box::new(a), Box::new(c)), span: sp })
        };
        prop_oneof![
            b(Kind::Add),
            b(Kind::Sub),
            b(Kind::Mul),
            b(Kind::Div),
            inner.clone().prop_map(move |a| Expr { kind: Kind::Neg(Box::new(a)), span: sp }),
            inner.clone().prop_map(move |a| Expr { kind: Kind::Exp(Box::new(a)), span: sp }),
            (inner.clone(), -3i64..4).prop_map(move |(a, e)| Expr { kind: Kind::Pow(Box::new(a), e), span: sp }),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn parse_inverts_print(e in tree()) {
        let text = e.to_string();
        let back = parse_expr(&text).unwrap();
        prop_assert_eq!(&back, &e, "{}", text);
        prop_assert_eq!(back.to_string(), text);
    }

    #[test]
    fn printing_normalizes(e in tree(), pad in "[ ]{0,2}") {
        // extra spaces and redundant parentheses disappear
        let noisy = format!("{}({}){}", pad, e, pad);
        let once = parse_expr(&noisy).unwrap().to_string();
        prop_assert_eq!(parse_expr(&once).unwrap().to_string(), once.clone());
        prop_assert_eq!(once, e.to_string());
    }

    #[test]
    fn b2_sums_round_trip(xs in prop::collection::vec((tree(), prop::option::of(tree()), -3i64..4), 1..4)) {
        let text = xs
            .iter()
            .enumerate()
            .map(|(k, (x, y, c))| {
                let c = if *c == 0 { 1 } else { *c };
                let sign = if c < 0 { "-" } else if k > 0 { "+" } else { "" };
                let y = y.as_ref().map(|y| format!("(x)({})", y)).unwrap_or_default();
                format!(" {} {}[{}]{}", sign, c.abs(), x, y)
            })
            .collect::<String>();
        let b = parse_b2_sum(&text).unwrap();
        let printed = b.to_string();
        prop_assert_eq!(parse_b2_sum(&printed).unwrap(), b);
    }
}
