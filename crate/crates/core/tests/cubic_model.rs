use fanolab::cubic_model::{
    base_vars, build_cyclic_cover, fourfold_vars, sample_generic_instance, sigma_singular_points, threefold_vars,
    verify_isolated_singularity, CubicThreefold, CyclicCubicFourfold, Instance, IsolationOptions, ModelError,
    SampleError,
};
use fanolab::polyring::{parse, Poly, Rational, Ring};
use fanolab::singclass::{classify_poly, milnor_number, MilnorNumber, SingularityKind, DEFAULT_JET_ORDER};

fn base(s: &str) -> Poly<Rational> {
    parse(s, &base_vars()).unwrap()
}

#[test]
fn assembling_the_cover() {
    let c = CubicThreefold::from_parts(&base("x2^2"), &base("x1^3")).unwrap();
    let y = build_cyclic_cover(&c).unwrap();
    assert_eq!(y.equation(), &parse("x0*x2^2 + x1^3 + x5^3", &fourfold_vars()).unwrap());
    assert!(y.is_sigma_invariant());
    let smooth = parse("x0^3 + x1^3 + x2^3", &threefold_vars()).unwrap();
    for g in [smooth, parse("x0^2*x1 + x2^3", &threefold_vars()).unwrap()] {
        let c = CubicThreefold::from_equation(&g).unwrap();
        assert!(matches!(build_cyclic_cover(&c), Err(ModelError::NotSingularAtP(_))));
    }
    assert!(CubicThreefold::from_parts(&base("x1^3"), &base("x1^3")).is_err());
}

#[test]
fn rank_of_the_quadric() {
    let rank = |f2: &str| CubicThreefold::from_parts(&base(f2), &base("x1^3 + x2^3")).unwrap().rank_f2().unwrap();
    assert_eq!(rank("x2*x3 + x4^2"), 3);
    assert_eq!(rank("x2^2"), 1);
    assert_eq!(rank("0"), 0);
}

#[test]
fn sampler_is_deterministic_and_certified() {
    for i in 2..=4u32 {
        for seed in [1u64, 7] {
            let a = sample_generic_instance(i, seed).unwrap();
            let b = sample_generic_instance(i, seed).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.claimed_type, SingularityKind::A(i));
            let germ = a.threefold().unwrap().affine_germ().unwrap();
            assert_eq!(classify_poly(&germ, DEFAULT_JET_ORDER).unwrap().kind, SingularityKind::A(i));
            assert_eq!(milnor_number(&germ, 20), MilnorNumber::Finite { mu: i });
            for (_, c) in a.f2.terms().chain(a.f3.terms()) {
                assert!(c.height() <= num_bigint::BigInt::from(20));
            }
            assert_eq!(a.threefold().unwrap().rank_f2().unwrap(), 3);
        }
        assert_ne!(sample_generic_instance(i, 1).unwrap().f3, sample_generic_instance(i, 2).unwrap().f3);
    }
    assert_eq!(sample_generic_instance(5, 1), Err(SampleError::UnsupportedType(5)));
}

#[test]
fn decompositions_reconstruct() {
    for i in 2..=4u32 {
        let y = sample_generic_instance(i, 3).unwrap().fourfold().unwrap();
        for c in 1..=5 {
            let d = y.decomposition(c).unwrap();
            assert_eq!(&d.reconstruct(), y.equation(), "A{i}, center {c}");
        }
        // x1 spans the kernel of f2, so the x1-centered form has a = h1 = 0
        let d = y.decomposition(1).unwrap();
        assert!(d.a.is_zero() && d.h1.is_zero());
        assert_eq!(d.is_chart_ready(), i != 2);
    }
}

#[test]
fn sigma_matches_the_table() {
    let expected = [(2u32, "3A1", SingularityKind::D(4)), (3, "A5", SingularityKind::E(6)), (4, "E7", SingularityKind::E(8))];
    for (i, label, t) in expected {
        for seed in 0..3u64 {
            let y = sample_generic_instance(i, seed).unwrap().fourfold().unwrap();
            let s = sigma_singular_points(&y, DEFAULT_JET_ORDER).unwrap();
            assert_eq!(s.multiset_label, label, "A{i} seed {seed}");
            assert!(s.matches_wall(t));
            assert!(s.unresolved.is_none());
        }
    }
}

#[test]
fn irrational_points_stay_symbolic() {
    // x1^3 coefficient 2: the points need a cube root of -2
    let c = CubicThreefold::from_parts(&base("x2*x3 + x4^2"), &base("2*x1^3 + x2^3 + x3^3 + x4^3")).unwrap();
    let s = sigma_singular_points(&build_cyclic_cover(&c).unwrap(), 8).unwrap();
    let u = s.unresolved.unwrap();
    assert_eq!(u.count, 3);
    assert_eq!(u.minimal_polynomial, "t^3 + 2");
    assert!(s.points.is_empty());
}

#[test]
fn isolation_reports() {
    let opts = IsolationOptions::default();
    assert_eq!(opts.primes, vec![101, 103]);
    let y = sample_generic_instance(3, 2).unwrap().fourfold().unwrap();
    let mut p = vec![Rational::zero(); 6];
    p[0] = Rational::one();
    let r = verify_isolated_singularity(y.equation(), &p, &opts).unwrap();
    assert!(r.critical && r.probabilistic && r.pass);
    assert_eq!(r.hessian_rank, Some(3));
    assert_eq!(r.fq.len(), 2);
    assert!(r.fq.iter().all(|e| e.other_singular_points == 0));

    let cone = parse("x0^3", &fourfold_vars()).unwrap();
    let mut q = vec![Rational::zero(); 6];
    q[1] = Rational::one();
    let r = verify_isolated_singularity(&cone, &q, &opts).unwrap();
    assert!(r.critical && !r.pass);

    let smooth = parse("x0*x1 + x2^2 + x3^2 + x4^2 + x5^2", &fourfold_vars()).unwrap();
    let r = verify_isolated_singularity(&smooth, &p, &opts).unwrap();
    assert!(r.on_hypersurface && !r.critical && !r.pass);
}

#[test]
fn isolation_finds_extra_singular_points() {
    // f2 and f3 share the point (0:0:1:0:0), a second singular point of the fourfold
    let f = parse("x0*(x1*x2 + x3^2 + x4^2) + x1^3 + x1*x2^2 + x3^3 + x4^3 + x5^3", &fourfold_vars()).unwrap();
    let y = CyclicCubicFourfold::from_equation(&f).unwrap();
    let mut p = vec![Rational::zero(); 6];
    p[0] = Rational::one();
    let r = verify_isolated_singularity(y.equation(), &p, &IsolationOptions::default()).unwrap();
    assert!(r.critical);
    assert!(!r.pass);
    assert!(r.fq.iter().all(|e| e.other_singular_points > 0));
}

#[test]
fn instance_json_round_trip() {
    let inst = sample_generic_instance(4, 5).unwrap();
    let text = serde_json::to_string_pretty(&inst).unwrap();
    let back: Instance = serde_json::from_str(&text).unwrap();
    assert_eq!(back, inst);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["claimed_type"], "A4");
    assert_eq!(v["seed"], 5);
    assert!(v["f2"]["terms"].is_array());
}
