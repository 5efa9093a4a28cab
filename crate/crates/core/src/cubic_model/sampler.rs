//! Seeded random cubic threefolds with a prescribed `A_i` point at `p`.
//!
//! Each sample starts from `f2 = x2 x3 + e x4^2` and a cubic whose `x1`-part
//! forces the type (a nonzero `x1^3` term for `A2`; for `A3` and `A4` a
//! suitable `x1^2 l(y)` and `x1 q'(y)`), plants a rational point on `Sigma`,
//! then applies a random unimodular change of `x1..x4` preserving the shape.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::polyring::matrix::{inverse, mat_vec, rank, Matrix};
use crate::polyring::{Poly, Rational, Ring};
use crate::singclass::{classify_poly, milnor_number, MilnorNumber, SingularityKind, DEFAULT_JET_ORDER};

use super::{base_vars, build_cyclic_cover, CubicThreefold, Instance};

pub const MAX_ATTEMPTS: usize = 50;
pub const MAX_HEIGHT: i64 = 20;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SampleError {
    #[error("only A2, A3, A4 can be sampled, not A{0}")]
    UnsupportedType(u32),
    #[error("no certified sample for A{i}, seed {seed} after {attempts} attempts")]
    Exhausted { i: u32, seed: u64, attempts: usize },
}

fn int(n: i64) -> Rational {
    Rational::from_int(n)
}

fn nonzero(rng: &mut ChaCha8Rng, r: i64) -> i64 {
    loop {
        let v = rng.gen_range(-r..=r);
        if v != 0 {
            return v;
        }
    }
}

struct Draft {
    f2: Poly<Rational>,
    f3: Poly<Rational>,
    point: Vec<Rational>,
}

fn draft(i: u32, rng: &mut ChaCha8Rng) -> Draft {
    let v = base_vars();
    let x = |k: usize| Poly::<Rational>::var(&v, k);
    let y = [x(1), x(2), x(3)];
    let eps = *[1i64, -1, 2, -2].choose(rng).unwrap();
    let f2 = &(&y[0] * &y[1]) + &(&y[2] * &y[2]).scale(&int(eps));

    let lin_coeffs: [i64; 3] = match i {
        4 => [nonzero(rng, 2), 0, 0],
        _ => [rng.gen_range(-2..=2), rng.gen_range(-2..=2), rng.gen_range(-2..=2)],
    };
    let lin = Poly::linear_form(&v, &[int(0), int(lin_coeffs[0]), int(lin_coeffs[1]), int(lin_coeffs[2])]);
    let mut qp = Poly::zero(&v);
    for a in 0..3 {
        for b in a..3 {
            let c = if i == 4 && a == 1 && b == 1 { nonzero(rng, 2) } else { rng.gen_range(-2..=2) };
            qp = &qp + &(&y[a] * &y[b]).scale(&int(c));
        }
    }
    let mut cub = Poly::zero(&v);
    for a in 0..3 {
        for b in a..3 {
            for c in b..3 {
                let k = rng.gen_range(-1..=1);
                cub = &cub + &(&(&y[a] * &y[b]) * &y[c]).scale(&int(k));
            }
        }
    }
    let c3 = if i == 2 {
        let r = nonzero(rng, 2);
        -r * r * r
    } else {
        0
    };
    let x1 = x(0);
    let mut f3 = &(&(&x1.pow(3).scale(&int(c3)) + &(&x1.pow(2) * &lin)) + &(&x1 * &qp)) + &cub;

    // plant a point of Sigma: ybar on the conic, then fix the y2^3 coefficient
    let t = nonzero(rng, 2);
    let ybar = [int(1), int(-eps * t * t), int(t)];
    let x1bar = int(rng.gen_range(-2..=2));
    let x5bar = int(nonzero(rng, 2));
    let pt4 = [x1bar.clone(), ybar[0].clone(), ybar[1].clone(), ybar[2].clone()];
    let alpha = f3.eval(&pt4).add(&x5bar.pow(3)).neg();
    f3 = &f3 + &y[0].pow(3).scale(&alpha);

    // random unimodular change of y and a shift x1 -> x1 + beta(y)
    let mut m: Matrix<Rational> = crate::polyring::matrix::identity(3);
    for _ in 0..2 {
        let (r, s) = (rng.gen_range(0..3), rng.gen_range(0..3));
        if r != s {
            let k = int(nonzero(rng, 1));
            for col in 0..3 {
                let add = m[s][col].mul(&k);
                m[r][col] = m[r][col].add(&add);
            }
        }
    }
    let beta = [int(rng.gen_range(-1..=1)), int(rng.gen_range(-1..=1)), int(rng.gen_range(-1..=1))];
    let mut subs = vec![&x1 + &Poly::linear_form(&v, &[int(0), beta[0].clone(), beta[1].clone(), beta[2].clone()])];
    for row in &m {
        subs.push(Poly::linear_form(&v, &[int(0), row[0].clone(), row[1].clone(), row[2].clone()]));
    }
    let f2n = f2.substitute(&subs).expect("arity");
    let f3n = f3.substitute(&subs).expect("arity");
    let yn = mat_vec(&inverse(&m).expect("unimodular"), &ybar);
    let x1n = x1bar.sub(&beta.iter().zip(&yn).fold(Rational::zero(), |a, (b, c)| a.add(&b.mul(c))));
    let mut point = vec![Rational::zero(), x1n];
    point.extend(yn);
    point.push(x5bar);
    Draft { f2: f2n, f3: f3n, point }
}

fn height_ok(p: &Poly<Rational>) -> bool {
    p.terms().all(|(_, c)| c.height() <= num_bigint::BigInt::from(MAX_HEIGHT))
}

fn certify(i: u32, d: &Draft) -> bool {
    if !height_ok(&d.f2) || !height_ok(&d.f3) {
        return false;
    }
    let germ = &d.f2 + &d.f3;
    match classify_poly(&germ, DEFAULT_JET_ORDER) {
        Ok(t) if t.kind == SingularityKind::A(i) => {}
        _ => return false,
    }
    if milnor_number(&germ, 20) != (MilnorNumber::Finite { mu: i }) {
        return false;
    }
    let Ok(c) = CubicThreefold::from_parts(&d.f2, &d.f3) else {
        return false;
    };
    let Ok(y) = build_cyclic_cover(&c) else {
        return false;
    };
    let Ok((q, k)) = y.quadric_and_cubic() else {
        return false;
    };
    if !q.eval(&d.point).is_zero() || !k.eval(&d.point).is_zero() {
        return false;
    }
    let jac: Matrix<Rational> = [&q, &k]
        .iter()
        .map(|f| (1..6).map(|j| f.partial_derivative(j).eval(&d.point)).collect())
        .collect();
    if rank(&jac) != 2 {
        return false;
    }
    crate::fano_charts::gamma_chart(&y, &d.point).is_ok()
}

/// A certified instance with an `A_i` point at `p`, deterministic in `seed`.
pub fn sample_generic_instance(i: u32, seed: u64) -> Result<Instance, SampleError> {
    if !(2..=4).contains(&i) {
        return Err(SampleError::UnsupportedType(i));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ i as u64);
    for _ in 0..MAX_ATTEMPTS {
        let d = draft(i, &mut rng);
        if certify(i, &d) {
            return Ok(Instance {
                claimed_type: SingularityKind::A(i),
                seed: Some(seed),
                label: None,
                f2: d.f2,
                f3: d.f3,
                sigma_point: Some(d.point),
            });
        }
    }
    Err(SampleError::Exhausted {
        i,
        seed,
        attempts: MAX_ATTEMPTS,
    })
}
