use fanolab::polyring::matrix::{identity, inverse};
use fanolab::polyring::{format, parse, parse_auto, vars, Fp, Poly, PolyError, QZeta3, Rational, Ring, Vars};
use proptest::prelude::*;

fn xyz() -> Vars {
    vars(&["x", "y", "z"])
}

fn p(s: &str) -> Poly<Rational> {
    parse(s, &xyz()).unwrap()
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn poly_strategy(max_deg: u32, max_terms: usize) -> impl Strategy<Value = Poly<Rational>> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_deg, 3), -6i64..=6, 1i64..=4),
        0..=max_terms,
    )
    .prop_map(|terms| {
        Poly::from_terms(
            &xyz(),
            terms.into_iter().map(|(e, n, d)| (e, q(n, d))),
        )
    })
}

fn homogeneous_strategy() -> impl Strategy<Value = (u32, Poly<Rational>)> {
    (0u32..=5).prop_flat_map(|d| {
        poly_strategy(5, 8).prop_map(move |p| (d, p.homogeneous_component(d)))
    })
}

fn invertible_matrix() -> impl Strategy<Value = Vec<Vec<Rational>>> {
    prop::collection::vec(prop::collection::vec(-10i64..=10, 3), 3)
        .prop_map(|m| m.into_iter().map(|r| r.into_iter().map(Rational::from_int).collect()).collect::<Vec<Vec<_>>>())
        .prop_filter("singular", |m| inverse(m).is_some())
}

#[test]
fn small_arithmetic() {
    assert_eq!(&p("x+y") * &p("x-y"), p("x^2-y^2"));
    assert_eq!(&p("x^2+3/2*y") + &Poly::zero(&xyz()), p("x^2+3/2*y"));
    let a = Poly::<Fp<5>>::monomial(&xyz(), vec![1, 0, 0], Fp::new(2));
    let b = Poly::<Fp<5>>::monomial(&xyz(), vec![1, 0, 0], Fp::new(3));
    assert_eq!(&a * &b, Poly::monomial(&xyz(), vec![2, 0, 0], Fp::one()));
    let other = vars(&["x", "y"]);
    assert!(matches!(
        p("x").try_add(&Poly::var(&other, 0)),
        Err(PolyError::Arity { left: 3, right: 2 })
    ));
}

#[test]
fn substitution_examples() {
    let ring = vars(&["x", "lambda", "mu"]);
    let x2 = parse("x^2", &ring).unwrap();
    let sub = [parse("lambda+mu", &ring).unwrap(), Poly::var(&ring, 1), Poly::var(&ring, 2)];
    assert_eq!(x2.substitute(&sub).unwrap(), parse("lambda^2+2*lambda*mu+mu^2", &ring).unwrap());
    let id: Vec<_> = (0..3).map(|i| Poly::var(&xyz(), i)).collect();
    let f = p("x^3 - 2*x*y*z + 7/3");
    assert_eq!(f.substitute(&id).unwrap(), f);
}

#[test]
fn linear_change_examples() {
    let f = p("x^2*y - z^3 + 1/2*x*z");
    assert_eq!(f.linear_change(&identity(3)).unwrap(), f);
    let unipotent = vec![
        vec![q(1, 1), q(1, 1), q(0, 1)],
        vec![q(0, 1), q(1, 1), q(0, 1)],
        vec![q(0, 1), q(0, 1), q(1, 1)],
    ];
    assert_eq!(p("x^2").linear_change(&unipotent).unwrap(), p("x^2+2*x*y+y^2"));
    let swap = vec![
        vec![q(0, 1), q(1, 1), q(0, 1)],
        vec![q(1, 1), q(0, 1), q(0, 1)],
        vec![q(0, 1), q(0, 1), q(1, 1)],
    ];
    assert_eq!(p("x^3").linear_change(&swap).unwrap(), p("y^3"));
    let singular = vec![vec![q(1, 1), q(1, 1), q(0, 1)], vec![q(2, 1), q(2, 1), q(0, 1)], vec![q(0, 1), q(0, 1), q(1, 1)]];
    assert!(matches!(p("x").linear_change(&singular), Err(PolyError::Domain(_))));
}

#[test]
fn bigraded_examples() {
    let ring = vars(&["lambda", "mu"]);
    let f = parse("lambda^2*mu + lambda*mu^2", &ring).unwrap();
    assert_eq!(f.bigraded_component(&[0], &[1], 2, 1), parse("lambda^2*mu", &ring).unwrap());
    let cubic = parse("(lambda + 2*mu)^3", &ring).unwrap();
    assert!(cubic.bigraded_component(&[0], &[1], 5, 0).is_zero());
}

#[test]
fn weighted_initial_parts() {
    let w = [q(1, 3), q(1, 2), q(1, 3)];
    let (ord, init) = p("x^3+y^2+z^3+x^2*y^2").weighted_initial_part(&w).unwrap();
    assert_eq!(ord, q(1, 1));
    assert_eq!(init, p("x^3+y^2+z^3"));
    let (ord, init) = p("x").weighted_initial_part(&w).unwrap();
    assert_eq!((ord, init), (q(1, 3), p("x")));
    let w5 = [q(1, 5), q(1, 2), q(1, 3)];
    let f = p("x^5+y^2+z^3");
    assert_eq!(f.weighted_initial_part(&w5).unwrap(), (q(1, 1), f.clone()));
    assert!(Poly::<Rational>::zero(&xyz()).weighted_initial_part(&w).is_err());
}

#[test]
fn derivatives_and_hessian() {
    let four = vars(&["x1", "x2", "x3", "x4"]);
    assert_eq!(parse("x1^2+x2^2+x3^2", &four).unwrap().hessian_rank_at_origin().unwrap(), 3);
    assert_eq!(parse("x1^3+x2^2+x3^2+x4^2", &four).unwrap().hessian_rank_at_origin().unwrap(), 3);
    assert_eq!(p("x^2*y").partial_derivative(0), p("2*x*y"));
    assert!(p("x + y^2").hessian_rank_at_origin().is_err());
    assert!(p("1 + y^2").hessian_rank_at_origin().is_err());
}

#[test]
fn parse_and_format() {
    let ring = vars(&["x0", "q", "y"]);
    let f = parse("x0*q + 3/2*y^2", &ring).unwrap();
    assert_eq!(f.len(), 2);
    assert!(matches!(parse("x^-1", &xyz()), Err(PolyError::Parse { pos: 2, .. })));
    assert!(matches!(parse("x + w", &xyz()), Err(PolyError::UnknownVariable { pos: 4, .. })));
    assert!(matches!(parse("x + ", &xyz()), Err(PolyError::Parse { .. })));
    assert_eq!(format(&Poly::<Rational>::zero(&xyz())), "0");
    let g = parse_auto(" (a_1 - 2*b)^2 ").unwrap();
    assert_eq!(g.vars().to_vec(), vec!["a_1".to_string(), "b".to_string()]);
    assert_eq!(g.to_string(), "a_1^2 - 4*a_1*b + 4*b^2");
}

#[test]
fn json_shape() {
    let f = p("-3/4*x^2*z + 5");
    let text = serde_json::to_string(&f).unwrap();
    assert_eq!(
        text,
        r#"{"vars":["x","y","z"],"terms":[{"exp":[2,0,1],"num":"-3","den":"4"},{"exp":[0,0,0],"num":"5","den":"1"}]}"#
    );
    let ints = r#"{"vars":["x","y","z"],"terms":[{"exp":[2,0,1],"num":-3,"den":4},{"exp":[0,0,0],"num":5,"den":1}]}"#;
    assert_eq!(serde_json::from_str::<Poly<Rational>>(ints).unwrap(), f);
    let bad = r#"{"vars":["x"],"terms":[{"exp":[1,1],"num":"1","den":"1"}]}"#;
    assert!(serde_json::from_str::<Poly<Rational>>(bad).is_err());
}

#[test]
fn zeta_arithmetic() {
    let z = QZeta3::new(q(0, 1), q(1, 1));
    assert!(z.pow(3).is_one());
    let one_plus = z.add(&QZeta3::one()).add(&z.mul(&z));
    assert!(one_plus.is_zero());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(a in poly_strategy(3, 5), b in poly_strategy(3, 5), c in poly_strategy(3, 5)) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert!((&a - &a).is_empty());
        prop_assert_eq!(&a * &Poly::one(&xyz()), a.clone());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn euler_identity((d, f) in homogeneous_strategy()) {
        let mut acc = Poly::zero(&xyz());
        for i in 0..3 {
            acc = &acc + &(&Poly::var(&xyz(), i) * &f.partial_derivative(i));
        }
        prop_assert_eq!(acc, f.scale(&Rational::from_int(d as i64)));
    }

    #[test]
    fn bigraded_partition(f in poly_strategy(2, 10)) {
        let mut acc = Poly::zero(&xyz());
        for i in 0..=6 {
            for j in 0..=6 {
                acc = &acc + &f.bigraded_component(&[0], &[1, 2], i, j);
            }
        }
        prop_assert_eq!(acc, f);
    }

    #[test]
    fn linear_change_inverts(f in poly_strategy(3, 6), m in invertible_matrix()) {
        let minv = inverse(&m).unwrap();
        let g = f.linear_change(&m).unwrap();
        prop_assert_eq!(g.degree(), f.degree());
        prop_assert_eq!(g.linear_change(&minv).unwrap(), f);
    }

    #[test]
    fn reduction_commutes(a in poly_strategy(3, 5), b in poly_strategy(3, 5)) {
        // denominators are at most 4, so 7 and 101 never divide them
        let (ra, rb) = (a.reduce_mod::<7>().unwrap(), b.reduce_mod::<7>().unwrap());
        prop_assert_eq!((&a * &b).reduce_mod::<7>().unwrap(), &ra * &rb);
        prop_assert_eq!((&a + &b).reduce_mod::<7>().unwrap(), &ra + &rb);
        let (sa, sb) = (a.reduce_mod::<101>().unwrap(), b.reduce_mod::<101>().unwrap());
        prop_assert_eq!((&a * &b).reduce_mod::<101>().unwrap(), &sa * &sb);
    }

    #[test]
    fn text_and_json_round_trip(f in poly_strategy(4, 8)) {
        prop_assert_eq!(parse(&format(&f), &xyz()).unwrap(), f.clone());
        let j = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(serde_json::from_str::<Poly<Rational>>(&j).unwrap(), f);
    }

    #[test]
    fn coefficients_normalized(f in poly_strategy(3, 8)) {
        for (_, c) in f.terms() {
            prop_assert!(!c.is_zero());
            prop_assert!(c.denom() > &num_bigint::BigInt::from(0));
        }
        let r = f.reduce_mod::<5>().unwrap();
        for (_, c) in r.terms() {
            prop_assert!(c.value() < 5 && c.value() != 0);
        }
    }
}
