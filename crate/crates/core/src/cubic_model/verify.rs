use rayon::prelude::*;
use serde::Serialize;

use crate::polyring::{indexed_vars, Field, Fp, Poly, Rational, Ring};
use crate::singclass::{milnor_number, MilnorNumber, DEFAULT_MU_MAX};
use crate::with_prime;

use super::{CyclicCubicFourfold, ModelError};

#[derive(Clone, Debug)]
pub struct IsolationOptions {
    pub primes: Vec<u32>,
    pub mu_max: u32,
}

impl Default for IsolationOptions {
    fn default() -> Self {
        IsolationOptions {
            primes: vec![101, 103],
            mu_max: DEFAULT_MU_MAX,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FqEvidence {
    pub q: u32,
    /// `structured`, `skipped` or `bad-reduction`.
    pub search: String,
    pub other_singular_points: usize,
    pub example: Option<Vec<u32>>,
}

/// Isolatedness evidence. The finite-field part is probabilistic: it can
/// miss singular points defined only over extensions.
#[derive(Clone, Debug, Serialize)]
pub struct IsolationReport {
    pub on_hypersurface: bool,
    pub critical: bool,
    pub hessian_rank: Option<usize>,
    pub milnor: Option<MilnorNumber>,
    pub fq: Vec<FqEvidence>,
    pub probabilistic: bool,
    pub pass: bool,
}

/// Checks that `p` is an isolated critical point of `F`.
pub fn verify_isolated_singularity(
    f: &Poly<Rational>,
    p: &[Rational],
    opts: &IsolationOptions,
) -> Result<IsolationReport, ModelError> {
    let n = f.arity();
    if p.len() != n {
        return Err(ModelError::WrongArity {
            expected: n,
            got: p.len(),
        });
    }
    let on = f.eval(p).is_zero();
    let critical = on && f.gradient().iter().all(|g| g.eval(p).is_zero());
    let mut report = IsolationReport {
        on_hypersurface: on,
        critical,
        hessian_rank: None,
        milnor: None,
        fq: Vec::new(),
        probabilistic: true,
        pass: false,
    };
    if !critical {
        return Ok(report);
    }
    let j = p.iter().position(|c| !c.is_zero()).ok_or_else(|| ModelError::Precondition("zero point".into()))?;
    let inv = p[j].inv().expect("nonzero");
    let lv = indexed_vars("t", 1..n);
    let others: Vec<usize> = (0..n).filter(|&i| i != j).collect();
    let subs: Vec<Poly<Rational>> = (0..n)
        .map(|i| {
            if i == j {
                Poly::one(&lv)
            } else {
                let k = others.iter().position(|&o| o == i).unwrap();
                &Poly::var(&lv, k) + &Poly::constant(&lv, p[i].mul(&inv))
            }
        })
        .collect();
    let g = f.substitute(&subs)?;
    report.hessian_rank = Some(g.hessian_rank_at_origin()?);
    let mu = milnor_number(&g, opts.mu_max);
    report.milnor = Some(mu);

    let cyclic = CyclicCubicFourfold::from_equation(f)
        .ok()
        .and_then(|y| y.cyclic_parts().ok())
        .filter(|_| p.iter().skip(1).all(Ring::is_zero));
    for &q in &opts.primes {
        let ev = match &cyclic {
            Some((f2, f3)) => with_prime!(q, P => structured_search::<P>(f2, f3), _ => FqEvidence {
                q,
                search: "skipped".into(),
                other_singular_points: 0,
                example: None,
            }),
            None => FqEvidence {
                q,
                search: "skipped".into(),
                other_singular_points: 0,
                example: None,
            },
        };
        report.fq.push(ev);
    }
    report.pass = matches!(mu, MilnorNumber::Finite { .. })
        && report.fq.iter().all(|e| e.other_singular_points == 0);
    Ok(report)
}

fn eval_fast<const P: u32>(terms: &[(Vec<u32>, Fp<P>)], x: &[Fp<P>]) -> Fp<P> {
    let mut acc = Fp::<P>::zero();
    for (e, c) in terms {
        let mut t = *c;
        for (xi, &k) in x.iter().zip(e) {
            for _ in 0..k {
                t = t.mul(xi);
            }
        }
        acc = acc.add(&t);
    }
    acc
}

fn term_list<const P: u32>(p: &Poly<Fp<P>>) -> Vec<(Vec<u32>, Fp<P>)> {
    p.terms().map(|(m, c)| (m.0.clone(), *c)).collect()
}

/// Singular points of `x0 f2 + f3 + x5^3` over `F_q` other than `p`.
///
/// For `q != 3` they satisfy `x5 = 0`, `f2(x) = f3(x) = 0` and
/// `x0 grad f2(x) + grad f3(x) = 0`, so it suffices to run over `x` in `P^3`.
fn structured_search<const P: u32>(f2: &Poly<Rational>, f3: &Poly<Rational>) -> FqEvidence {
    let (Ok(f2p), Ok(f3p)) = (f2.reduce_mod::<P>(), f3.reduce_mod::<P>()) else {
        return FqEvidence {
            q: P,
            search: "bad-reduction".into(),
            other_singular_points: 0,
            example: None,
        };
    };
    if P == 3 {
        return FqEvidence {
            q: P,
            search: "skipped".into(),
            other_singular_points: 0,
            example: None,
        };
    }
    let t2 = term_list(&f2p);
    let t3 = term_list(&f3p);
    let g2: Vec<_> = f2p.gradient().iter().map(term_list).collect();
    let g3: Vec<_> = f3p.gradient().iter().map(term_list).collect();
    // normalized representatives of P^3: first nonzero coordinate is 1
    let reps: Vec<[u32; 4]> = (0..4)
        .flat_map(|lead| {
            let free = 3 - lead;
            let count = (P as u64).pow(free as u32);
            (0..count).map(move |mut idx| {
                let mut x = [0u32; 4];
                x[lead] = 1;
                for slot in x.iter_mut().skip(lead + 1) {
                    *slot = (idx % P as u64) as u32;
                    idx /= P as u64;
                }
                x
            })
        })
        .collect();
    let hits: Vec<Vec<u32>> = reps
        .par_iter()
        .filter_map(|r| {
            let x: Vec<Fp<P>> = r.iter().map(|&v| Fp::<P>::new(v as i64)).collect();
            if !eval_fast(&t2, &x).is_zero() || !eval_fast(&t3, &x).is_zero() {
                return None;
            }
            let a: Vec<Fp<P>> = g2.iter().map(|t| eval_fast(t, &x)).collect();
            let b: Vec<Fp<P>> = g3.iter().map(|t| eval_fast(t, &x)).collect();
            let x0 = match a.iter().position(|v| !v.is_zero()) {
                Some(i) => b[i].neg().div(&a[i]).expect("nonzero"),
                None => {
                    return b.iter().all(Ring::is_zero).then(|| {
                        let mut pt = vec![0];
                        pt.extend(r.iter().copied());
                        pt.push(0);
                        pt
                    })
                }
            };
            let ok = a.iter().zip(&b).all(|(ai, bi)| x0.mul(ai).add(bi).is_zero());
            ok.then(|| {
                let mut pt = vec![x0.value()];
                pt.extend(r.iter().copied());
                pt.push(0);
                pt
            })
        })
        .collect();
    FqEvidence {
        q: P,
        search: "structured".into(),
        other_singular_points: hits.len(),
        example: hits.into_iter().next(),
    }
}
