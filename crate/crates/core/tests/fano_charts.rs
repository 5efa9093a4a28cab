use fanolab::cubic_model::{fourfold_vars, sample_generic_instance, CyclicCubicFourfold, Instance};
use fanolab::fano_charts::{
    blowup, central_fiber, closed_form_blowup, closed_form_equations, equivariance_check, fano_chart, gamma_chart,
    gamma_local_model, negative_control_fourfold, plane_search, residual_conic, residual_line, same_line,
    sample_secants, sample_tangents, shift_chart, sigma_action, translate_chart, FanoError, Line, Xi,
};
use fanolab::polyring::{parse, vars, Poly, QZeta3, RadicalExt, Rational, RationalAlgebra, Ring};
use fanolab::singclass::{MilnorNumber, SingularityKind};

fn int(n: i64) -> Rational {
    Rational::from_int(n)
}

fn instance(i: u32, seed: u64) -> (Instance, CyclicCubicFourfold) {
    let inst = sample_generic_instance(i, seed).unwrap();
    let y = inst.fourfold().unwrap();
    (inst, y)
}

/// `F(line) = sum lambda^i mu^j phi^{ij}`, recomputed by an independent substitution.
fn reconstruction_holds(y: &CyclicCubicFourfold, c: usize) -> bool {
    let eqs = fano_chart(y, c).unwrap();
    let mut names = vec!["lambda".to_string(), "mu".to_string()];
    names.extend(eqs.vars.iter().cloned());
    let ring = vars(&names);
    let lam = Poly::<Rational>::var(&ring, 0);
    let mu = Poly::<Rational>::var(&ring, 1);
    let mut point: Vec<Poly<Rational>> = vec![Poly::zero(&ring); 6];
    point[0] = lam.clone();
    point[c] = mu.clone();
    for (k, &j) in eqs.others.iter().enumerate() {
        point[j] = &(&mu * &Poly::var(&ring, 2 + k)) - &(&lam * &Poly::var(&ring, 6 + k));
    }
    let lhs = y.equation().substitute(&point).unwrap();
    let map: Vec<usize> = (2..10).collect();
    let mut rhs = Poly::zero(&ring);
    for (phi, (i, j)) in eqs.phi.iter().zip([(3, 0), (2, 1), (1, 2), (0, 3)]) {
        rhs = &rhs + &(&(&lam.pow(i) * &mu.pow(j)) * &phi.embed(&ring, &map));
    }
    lhs == rhs
}

#[test]
fn chart_equations_match_closed_forms() {
    for i in 2..=4u32 {
        for seed in 0..2u64 {
            let (inst, y) = instance(i, seed);
            let y1 = shift_chart(&y).unwrap();
            assert_eq!(fano_chart(&y1, 1).unwrap().phi, closed_form_equations(&y1, 1).unwrap());
            assert!(reconstruction_holds(&y1, 1));
            let ch = gamma_chart(&y, inst.sigma_point.as_ref().unwrap()).unwrap();
            assert_eq!(fano_chart(&ch.fourfold, 2).unwrap().phi, closed_form_equations(&ch.fourfold, 2).unwrap());
            assert!(reconstruction_holds(&ch.fourfold, 2));
        }
    }
}

#[test]
fn phi30_is_the_quadric_minus_the_cubic() {
    let (_, y) = instance(3, 1);
    let d = y.decomposition(1).unwrap();
    let eqs = fano_chart(&y, 1).unwrap();
    // P1 = (p12, p13, p14, p15) placed in x2..x5
    let subs: Vec<Poly<Rational>> = (0..6)
        .map(|j| if j >= 2 { Poly::var(&eqs.vars, 4 + j - 2) } else { Poly::zero(&eqs.vars) })
        .collect();
    let expected = &d.q1.substitute(&subs).unwrap() - &d.k2.substitute(&subs).unwrap();
    assert_eq!(eqs.phi[0], expected);
    let p0: Vec<Poly<Rational>> = (0..6)
        .map(|j| if j >= 2 { Poly::var(&eqs.vars, j - 2) } else { Poly::zero(&eqs.vars) })
        .collect();
    let phi03 = &(&d.h2.substitute(&p0).unwrap() + &d.q2.substitute(&p0).unwrap()) + &d.k2.substitute(&p0).unwrap();
    assert_eq!(eqs.phi[3], phi03);
}

#[test]
fn pure_cube_chart() {
    let y = CyclicCubicFourfold::from_equation(&parse("x5^3", &fourfold_vars()).unwrap()).unwrap();
    let eqs = fano_chart(&y, 1).unwrap();
    assert_eq!(eqs.phi[0], parse("-p15^3", &eqs.vars).unwrap());
    assert_eq!(eqs.phi[1], parse("3*p05*p15^2", &eqs.vars).unwrap());
    assert_eq!(eqs.phi[3], parse("p05^3", &eqs.vars).unwrap());
    assert!(reconstruction_holds(&y, 1));
}

#[test]
fn chart_needs_the_line() {
    let (_, y) = instance(2, 0);
    assert!(matches!(fano_chart(&y, 1), Err(FanoError::Structure(_))));
}

#[test]
fn blowup_and_central_fiber() {
    for i in 2..=4u32 {
        let (_, y) = instance(i, 2);
        let y1 = shift_chart(&y).unwrap();
        let b = blowup(&fano_chart(&y1, 1).unwrap()).unwrap();
        assert_eq!(b.phi, closed_form_blowup(&y1, 1).unwrap());
        let cf = central_fiber(&b).unwrap();
        assert!(cf.only_cone, "A{i}: {:?}", cf.equations);
        assert_eq!(cf.cone_rank, 3);
        assert!(cf.irreducible);
        let d = y1.decomposition(1).unwrap();
        let q1a = d
            .q1
            .substitute(&(0..6).map(|j| match j {
                2..=4 => Poly::var(&b.vars, 4 + j - 2),
                _ => Poly::zero(&b.vars),
            }).collect::<Vec<_>>())
            .unwrap();
        assert_eq!(cf.equations[0], q1a.to_string());
    }
}

#[test]
fn translation_identities() {
    for i in 2..=4u32 {
        let (y, x) = (0..20u64)
            .map(|s| instance(i, s))
            .map(|(inst, y)| (y, inst.sigma_point.unwrap()))
            .find(|(_, x)| !x[1].is_zero())
            .expect("a planted point off the hyperplane x1 = 0");
        let t = translate_chart(&y, &x).unwrap();
        assert!(t.all_checks_pass(), "{:?}", t.checks);
        assert!(t.decomposition.is_chart_ready());
        // moved to e1: phi equations exist and match their closed forms
        assert_eq!(fano_chart(&t.fourfold, 1).unwrap().phi, closed_form_equations(&t.fourfold, 1).unwrap());
    }
    let (_, y) = instance(3, 4);
    let mut e1 = vec![Rational::zero(); 6];
    e1[1] = int(1);
    assert_eq!(translate_chart(&y, &e1).unwrap().fourfold, y);
    let mut off = e1.clone();
    off[2] = int(1);
    off[3] = int(1);
    assert!(translate_chart(&y, &off).is_err());
}

#[test]
fn gamma_types() {
    let expected = [(2u32, SingularityKind::D(4), 4u32), (3, SingularityKind::E(6), 6), (4, SingularityKind::E(8), 8)];
    for (i, kind, mu) in expected {
        let (inst, y) = instance(i, 1);
        let g = gamma_local_model(&y, inst.sigma_point.as_ref().unwrap(), 8).unwrap();
        assert_eq!(g.singularity.kind, kind);
        assert_eq!(g.milnor, MilnorNumber::Finite { mu });
        assert_eq!(g.gamma_poly.arity(), 3);
    }
}

#[test]
fn gamma_chart_normalization() {
    let (inst, y) = instance(4, 6);
    let ch = gamma_chart(&y, inst.sigma_point.as_ref().unwrap()).unwrap();
    let d = &ch.decomposition;
    assert!(d.is_chart_ready());
    let c = |p: &Poly<Rational>, j: usize| {
        let mut e = vec![0; 6];
        e[j] = 1;
        p.coeff(&e)
    };
    assert!(c(&d.h1, 3).is_one() && c(&d.h1, 4).is_zero());
    assert!(c(&d.h2, 4).is_one() && c(&d.h2, 3).is_zero());
    assert!(gamma_chart(&y, &[int(0), int(1), int(0), int(0), int(0), int(0)]).is_err());
}

#[test]
fn residual_lines_lie_on_the_fourfold() {
    for i in 2..=4u32 {
        let (inst, y) = instance(i, 0);
        let xs = sample_secants(&y, inst.sigma_point.as_deref(), 11, 4).unwrap();
        for xi in &xs {
            let l = residual_line(&y, xi).unwrap();
            assert!(l.line.lies_on(y.equation()));
        }
        let ts = sample_tangents(&y, inst.sigma_point.as_deref(), 11, 2).unwrap();
        for xi in &ts {
            assert!(residual_line(&y, xi).unwrap().line.lies_on(y.equation()));
        }
    }
}

#[test]
fn equivariance_on_random_pairs() {
    let (inst, y) = instance(3, 0);
    let xs = sample_secants(&y, inst.sigma_point.as_deref(), 5, 10).unwrap();
    for xi in &xs {
        let r = equivariance_check(&y, xi).unwrap();
        assert!(r.pass(), "{r:?}");
    }
    for xi in &sample_tangents(&y, inst.sigma_point.as_deref(), 5, 3).unwrap() {
        assert!(equivariance_check(&y, xi).unwrap().pass());
    }
}

#[test]
fn sigma_fixed_pairs_over_zeta() {
    // u = (0:1:-1:0:0:0) and v = (0:1:0:-1:0:0) lie on Sigma with x5 = 0, so sigma fixes both
    let f = parse("x0*(x2*x3 + x4^2) + x1^3 + x2^3 + x3^3 + x4^3 + x5^3", &fourfold_vars()).unwrap();
    let y = CyclicCubicFourfold::from_equation(&f).unwrap();
    let z = |v: [i64; 6]| v.iter().map(|&a| QZeta3::from_rational(&int(a))).collect::<Vec<_>>();
    let xi = Xi::Secant { p1: z([0, 1, -1, 0, 0, 0]), p2: z([0, 1, 0, -1, 0, 0]) };
    let r = equivariance_check(&y, &xi).unwrap();
    assert!(r.equivariant && r.on_fourfold);
    let l = residual_line(&y, &xi).unwrap();
    let moved = Line { u: sigma_action(&l.line.u), v: sigma_action(&l.line.v) };
    let again = residual_line(&y, &xi.map(sigma_action)).unwrap();
    assert!(same_line(&moved, &again.line));
}

#[test]
fn degenerate_planes_are_errors() {
    let y = negative_control_fourfold();
    let z = |v: [i64; 6]| v.iter().map(|&a| RadicalExt::from_rational(&int(a))).collect::<Vec<_>>();
    // two points of the plane x3 = x4 = 0, x5 = -(x1 + x2)
    let xi = Xi::Secant { p1: z([0, 1, 0, 0, 0, -1]), p2: z([0, 0, 1, 0, 0, -1]) };
    assert!(matches!(residual_line(&y, &xi), Err(FanoError::Degenerate(_))));
}

#[test]
fn residual_conics() {
    let (_, y) = instance(3, 0);
    let d = y.decomposition(1).unwrap();
    let a = [int(1), int(2), int(-1), int(3)];
    let c = residual_conic(&y, &a).unwrap();
    assert!(!c.pair_through_p && !c.degenerate);
    // q1(a) = 0: pick a on the conic of q1 with a free x5 coordinate
    let q1 = &d.q1;
    let mut found = None;
    'outer: for s in -4i64..=4 {
        for t in -4i64..=4 {
            for u in -4i64..=4 {
                let v = [int(0), int(0), int(s), int(t), int(u), int(0)];
                if (s, t, u) != (0, 0, 0) && q1.eval(&v).is_zero() {
                    found = Some([int(s), int(t), int(u), int(1)]);
                    break 'outer;
                }
            }
        }
    }
    if let Some(a) = found {
        assert!(residual_conic(&y, &a).unwrap().pair_through_p);
    }
    let zero = residual_conic(&y, &[int(0), int(0), int(0), int(0)]).unwrap();
    assert!(zero.degenerate);
}

#[test]
fn plane_free_instances() {
    for i in 2..=4u32 {
        let (_, y) = instance(i, 0);
        for q in [5, 7] {
            let r = plane_search(&y, q).unwrap();
            assert!(r.caveats.is_empty());
            assert!(r.sigma_points > 0);
            let _ = r.plane_free();
        }
    }
}

#[test]
fn planted_plane_is_found() {
    let y = negative_control_fourfold();
    for q in [5u32, 7] {
        let r = plane_search(&y, q).unwrap();
        let witness = r.lines.iter().any(|[u, v]| {
            [u, v].iter().all(|x| x[2] == 0 && x[3] == 0 && (x[0] + x[1] + x[4]) % q == 0)
        });
        assert!(witness, "q = {q}: {:?}", r.lines);
    }
    let small = plane_search(&y, 2).unwrap();
    assert!(!small.caveats.is_empty());
    assert!(plane_search(&y, 17).is_err());
}
