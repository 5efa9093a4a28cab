use crate::polyring::matrix::{inverse, Matrix};
use crate::polyring::{Field, Poly, Rational, Ring};

use super::milnor::{milnor_number, DEFAULT_MU_MAX};
use super::morse::morse_split;
use super::series::Series;
use super::{weighted_milnor, Certificate, Germ, SingError, SingularityKind, SingularityType};

pub const DEFAULT_JET_ORDER: u32 = 8;

/// Classifies `p` at the origin; a nonzero linear part gives `Smooth`.
pub fn classify_poly<F: Field>(p: &Poly<F>, jet_order: u32) -> Result<SingularityType, SingError> {
    if !p.constant_term().is_zero() {
        return Err(SingError::NotOnHypersurface);
    }
    if p.linear_coeffs().iter().any(|c| !c.is_zero()) {
        return Ok(SingularityType {
            kind: SingularityKind::Smooth,
            certificate: Certificate {
                nvars: p.arity(),
                hessian_rank: 0,
                corank: 0,
                jet_order,
                residual: String::new(),
                weights: None,
                initial_part: None,
                initial_milnor: None,
                note: Some("nonzero linear part".into()),
            },
        });
    }
    Ok(classify(&Germ::new(p.clone())?, jet_order))
}

struct Found<F> {
    kind: SingularityKind,
    weights: Vec<Rational>,
    initial: Poly<F>,
}

/// Classifies a critical germ from its `jet_order`-jet. Answers
/// `NonSimpleOrUnknown` rather than guess when the jet does not decide.
pub fn classify<F: Field>(g: &Germ<F>, jet_order: u32) -> SingularityType {
    let jet = g.poly().truncate(jet_order);
    let mut cert = Certificate {
        nvars: g.nvars(),
        hessian_rank: 0,
        corank: g.nvars(),
        jet_order,
        residual: String::new(),
        weights: None,
        initial_part: None,
        initial_milnor: None,
        note: None,
    };
    let unknown = |mut cert: Certificate, why: &str| {
        cert.note = Some(why.to_string());
        SingularityType {
            kind: SingularityKind::NonSimpleOrUnknown,
            certificate: cert,
        }
    };
    if jet_order < 3 {
        return unknown(cert, "jet order below 3");
    }
    if jet.is_zero() {
        return unknown(cert, "jet vanishes");
    }
    let split = morse_split(&jet, jet_order).expect("critical germ");
    cert.hessian_rank = split.hessian_rank;
    cert.corank = split.corank();
    cert.residual = split.residual.to_string();
    let h = &split.residual;

    let found = match split.corank() {
        0 => {
            let q = jet.homogeneous_component(2);
            cert.initial_part = Some(q.to_string());
            cert.initial_milnor = Some(milnor_number(&q, DEFAULT_MU_MAX));
            cert.weights = Some(Vec::new());
            return SingularityType {
                kind: SingularityKind::A(1),
                certificate: cert,
            };
        }
        1 => match h.order() {
            None => Err("residual vanishes to jet order"),
            Some(m) => Ok(Found {
                kind: SingularityKind::A(m - 1),
                weights: vec![Rational::new(1, m as i64)],
                initial: h.homogeneous_component(m),
            }),
        },
        2 => corank_two(h, jet_order),
        _ => Err("corank at least 3"),
    };
    let found = match found {
        Ok(f) => f,
        Err(why) => return unknown(cert, why),
    };
    let mu = milnor_number(&found.initial, DEFAULT_MU_MAX);
    let expected = weighted_milnor(&found.weights);
    cert.weights = Some(found.weights);
    cert.initial_part = Some(found.initial.to_string());
    cert.initial_milnor = Some(mu);
    let ok = match (mu.finite(), expected) {
        (Some(m), Some(e)) => Rational::from_int(m as i64) == e && Some(m) == found.kind.milnor(),
        _ => false,
    };
    if !ok {
        return unknown(cert, "initial part is degenerate");
    }
    SingularityType {
        kind: found.kind,
        certificate: cert,
    }
}

fn coef2<F: Field>(p: &Poly<F>, i: u32, j: u32) -> F {
    p.coeff(&[i, j])
}

/// `h(A^{-1} (X, Y))` where the rows of `a` give `X` and `Y` as linear forms.
fn in_coordinates<F: Field>(h: &Poly<F>, a: &Matrix<F>) -> Option<Poly<F>> {
    let ainv = inverse(a)?;
    h.linear_change(&ainv).ok()
}

/// A unit vector independent of `(l1, l2)`.
fn complement<F: Field>(l: &[F; 2]) -> [F; 2] {
    if !l[0].is_zero() {
        [F::zero(), F::one()]
    } else {
        [F::one(), F::zero()]
    }
}

fn corank_two<F: Field>(h: &Poly<F>, n: u32) -> Result<Found<F>, &'static str> {
    let j3 = h.homogeneous_component(3);
    if j3.is_zero() {
        return Err("cubic part vanishes");
    }
    let jx = j3.partial_derivative(0);
    let jy = j3.partial_derivative(1);
    let (jxx, jxy, jyy) = (jx.partial_derivative(0), jx.partial_derivative(1), jy.partial_derivative(1));
    let hess = &(&jxx * &jyy) - &(&jxy * &jxy);
    let third = |a: i64, b: i64| Rational::new(a, b);

    if hess.is_zero() {
        // j3 is the cube of a linear form, proportional to any nonzero second partial
        let lin = [&jxx, &jxy, &jyy].into_iter().find(|p| !p.is_zero()).expect("j3 nonzero");
        let l = [coef2(lin, 1, 0), coef2(lin, 0, 1)];
        let e = complement(&l);
        let a = vec![l.to_vec(), e.to_vec()];
        let hp = in_coordinates(h, &a).ok_or("dependent coordinates")?;
        let kappa = coef2(&hp, 3, 0);
        let ring = hp.vars().clone();
        let x3 = Poly::monomial(&ring, vec![3, 0], kappa);
        let c4 = coef2(&hp, 0, 4);
        if !c4.is_zero() {
            return Ok(Found {
                kind: SingularityKind::E(6),
                weights: vec![third(1, 3), third(1, 4)],
                initial: &x3 + &Poly::monomial(&ring, vec![0, 4], c4),
            });
        }
        let c13 = coef2(&hp, 1, 3);
        if !c13.is_zero() {
            return Ok(Found {
                kind: SingularityKind::E(7),
                weights: vec![third(1, 3), third(2, 9)],
                initial: &x3 + &Poly::monomial(&ring, vec![1, 3], c13),
            });
        }
        let c5 = coef2(&hp, 0, 5);
        if n >= 5 && !c5.is_zero() {
            return Ok(Found {
                kind: SingularityKind::E(8),
                weights: vec![third(1, 3), third(1, 5)],
                initial: &x3 + &Poly::monomial(&ring, vec![0, 5], c5),
            });
        }
        return Err("triple-line cubic beyond E8 or jet order insufficient");
    }

    let (a, b, c) = (coef2(&hess, 2, 0), coef2(&hess, 1, 1), coef2(&hess, 0, 2));
    let disc = b.mul(&b).sub(&F::from_int(4).mul(&a).mul(&c));
    if !disc.is_zero() {
        return Ok(Found {
            kind: SingularityKind::D(4),
            weights: vec![third(1, 3), third(1, 3)],
            initial: j3,
        });
    }

    // j3 = L^2 M with L the double root of the Hessian covariant
    let l = if !a.is_zero() {
        [a.add(&a), b]
    } else {
        [F::zero(), F::one()]
    };
    let e = complement(&l);
    let j3p = in_coordinates(&j3, &vec![l.to_vec(), e.to_vec()]).ok_or("dependent coordinates")?;
    let alpha = coef2(&j3p, 3, 0);
    let beta = coef2(&j3p, 2, 1);
    if beta.is_zero() || !coef2(&j3p, 1, 2).is_zero() || !coef2(&j3p, 0, 3).is_zero() {
        return Err("unexpected cubic factorization");
    }
    let m = [
        alpha.mul(&l[0]).add(&beta.mul(&e[0])),
        alpha.mul(&l[1]).add(&beta.mul(&e[1])),
    ];
    let hp = in_coordinates(h, &vec![l.to_vec(), m.to_vec()]).ok_or("dependent coordinates")?;
    debug_assert!(coef2(&hp, 2, 1).is_one());

    let len = n as usize + 1;
    let deg_x = hp.degree_in(0).unwrap_or(0) as usize;
    let a_j: Vec<Series<F>> = (0..=deg_x)
        .map(|j| {
            let mut s = Series::zero(len);
            for (mono, v) in hp.terms() {
                if mono.0[0] as usize == j && (mono.0[1] as usize) < len {
                    s.c[mono.0[1] as usize] = v.clone();
                }
            }
            s
        })
        .collect();
    let get = |j: usize| a_j.get(j).cloned().unwrap_or_else(|| Series::zero(len));
    let den = get(2).scale(&F::from_int(2)).shift_down().inv().ok_or("degenerate x^2 y term")?;
    let mut s = Series::zero(len);
    for _ in 0..=len {
        let mut num = get(1);
        for j in 3..=deg_x {
            num = num.add(&get(j).scale(&F::from_int(j as i64)).mul(&s.pow(j as u32 - 1)));
        }
        if !num.c[0].is_zero() {
            return Err("polar curve does not pass through the origin");
        }
        let next = num.shift_down().mul(&den).scale(&F::from_int(-1));
        if next == s {
            break;
        }
        s = next;
    }
    let mut a0 = Series::zero(len);
    for j in 0..=deg_x {
        a0 = a0.add(&get(j).mul(&s.pow(j as u32)));
    }
    let m = a0.order().ok_or("D series beyond jet order")?;
    if m < 4 {
        return Err("unexpected low order on the polar curve");
    }
    let k = m as i64 + 1;
    let ring = hp.vars().clone();
    Ok(Found {
        kind: SingularityKind::D(k as u32),
        weights: vec![Rational::new(k - 2, 2 * (k - 1)), Rational::new(1, k - 1)],
        initial: &Poly::monomial(&ring, vec![2, 1], F::one())
            + &Poly::monomial(&ring, vec![0, m as u32], a0.c[m].clone()),
    })
}
