//! Search for planes through `p` over small prime fields.
//!
//! A plane `<p, L>` lies in `x0 Q + K = 0` exactly when the line `L` of
//! `P^4(x1..x5)` lies on `Sigma = {Q = K = 0}`. Over `F_q` we list the points
//! of `Sigma` and test every pair with
//! `B(u, v) = K21(u, v) = K12(u, v) = 0`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::cubic_model::{fourfold_vars, CyclicCubicFourfold};
use crate::polyring::matrix::rank;
use crate::polyring::{parse, Field, Fp, Poly, Ring};
use crate::with_prime;

use super::FanoError;

#[derive(Clone, Debug, Serialize)]
pub struct PlaneSearchResult {
    pub q: u32,
    pub sigma_points: usize,
    /// Each line as two spanning points, coordinates `x1..x5` in `0..q`.
    pub lines: Vec<[Vec<u32>; 2]>,
    pub caveats: Vec<String>,
}

impl PlaneSearchResult {
    pub fn plane_free(&self) -> bool {
        self.lines.is_empty()
    }
}

type Terms<const P: u32> = Vec<(Vec<u32>, Fp<P>)>;

fn terms<const P: u32>(p: &Poly<Fp<P>>) -> Terms<P> {
    p.terms().map(|(m, c)| (m.0.clone(), *c)).collect()
}

fn eval<const P: u32>(t: &Terms<P>, x: &[Fp<P>]) -> Fp<P> {
    let mut acc = Fp::<P>::zero();
    for (e, c) in t {
        let mut v = *c;
        for (xi, &k) in x.iter().zip(e) {
            for _ in 0..k {
                v = v.mul(xi);
            }
        }
        acc = acc.add(&v);
    }
    acc
}

/// Projective points of `P^{n-1}(F_q)` with first nonzero coordinate 1.
fn projective_points<const P: u32>(n: usize) -> Vec<Vec<Fp<P>>> {
    let mut out = Vec::new();
    for lead in 0..n {
        let free = n - lead - 1;
        let count = (P as usize).pow(free as u32);
        for idx in 0..count {
            let mut v = vec![Fp::<P>::zero(); n];
            v[lead] = Fp::one();
            let mut r = idx;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = Fp::new((r % P as usize) as i64);
                r /= P as usize;
            }
            out.push(v);
        }
    }
    out
}

fn search<const P: u32>(y: &CyclicCubicFourfold) -> Result<PlaneSearchResult, FanoError> {
    let (q, k) = y.quadric_and_cubic()?;
    let mut caveats = Vec::new();
    if P <= 3 {
        caveats.push(format!("characteristic {P} divides the polarization constants"));
    }
    let (qp, kp) = match (q.reduce_mod::<P>(), k.reduce_mod::<P>()) {
        (Ok(a), Ok(b)) => (a, b),
        _ => {
            return Ok(PlaneSearchResult {
                q: P,
                sigma_points: 0,
                lines: Vec::new(),
                caveats: vec![format!("bad reduction at {P}")],
            })
        }
    };
    let gram: Vec<Vec<Fp<P>>> = qp.quadratic_matrix()[1..].iter().map(|r| r[1..].to_vec()).collect();
    if rank(&gram) != 3 {
        caveats.push(format!("quadric drops rank mod {P}"));
    }
    // to x1..x5
    let drop_x0 = |p: &Poly<Fp<P>>| p.restrict_vars(&[1, 2, 3, 4, 5], &crate::polyring::vars(&["x1", "x2", "x3", "x4", "x5"]));
    let (q5, k5) = (drop_x0(&qp)?, drop_x0(&kp)?);
    let qt = terms(&q5);
    let kt = terms(&k5);
    let dq: Vec<Terms<P>> = (0..5).map(|j| terms(&q5.partial_derivative(j))).collect();
    let dk: Vec<Terms<P>> = (0..5).map(|j| terms(&k5.partial_derivative(j))).collect();
    let pts: Vec<Vec<Fp<P>>> = projective_points::<P>(5)
        .into_iter()
        .filter(|x| eval(&qt, x).is_zero() && eval(&kt, x).is_zero())
        .collect();
    let grads: Vec<(Vec<Fp<P>>, Vec<Fp<P>>)> = pts
        .iter()
        .map(|x| {
            (
                dq.iter().map(|t| eval(t, x)).collect(),
                dk.iter().map(|t| eval(t, x)).collect(),
            )
        })
        .collect();
    let dot = |a: &[Fp<P>], b: &[Fp<P>]| a.iter().zip(b).fold(Fp::<P>::zero(), |s, (x, y)| s.add(&x.mul(y)));
    let mut seen = BTreeSet::new();
    let mut lines = Vec::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let (u, v) = (&pts[i], &pts[j]);
            if !dot(&grads[i].0, v).is_zero() {
                continue;
            }
            // the polarization identities need 3 invertible; test the line pointwise instead
            let on_line = Fp::<P>::elements().all(|t| {
                let w: Vec<Fp<P>> = u.iter().zip(v).map(|(a, b)| a.add(&t.mul(b))).collect();
                eval(&kt, &w).is_zero() && eval(&qt, &w).is_zero()
            });
            if !on_line || !dot(&grads[i].1, v).is_zero() || !dot(&grads[j].1, u).is_zero() {
                continue;
            }
            let key = line_key(u, v);
            if seen.insert(key) {
                let lift = |x: &[Fp<P>]| x.iter().map(|c| c.value()).collect::<Vec<u32>>();
                lines.push([lift(u), lift(v)]);
            }
        }
    }
    Ok(PlaneSearchResult {
        q: P,
        sigma_points: pts.len(),
        lines,
        caveats,
    })
}

/// Reduced row echelon form of the 2 x 5 matrix spanned by `u, v`.
fn line_key<const P: u32>(u: &[Fp<P>], v: &[Fp<P>]) -> Vec<u32> {
    let mut m = vec![u.to_vec(), v.to_vec()];
    let mut row = 0;
    for col in 0..5 {
        if row == 2 {
            break;
        }
        let Some(piv) = (row..2).find(|&r| !m[r][col].is_zero()) else { continue };
        m.swap(row, piv);
        let inv = m[row][col].inv().expect("nonzero");
        for c in 0..5 {
            m[row][c] = m[row][c].mul(&inv);
        }
        for r in 0..2 {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col];
                for c in 0..5 {
                    m[r][c] = m[r][c].sub(&f.mul(&m[row][c]));
                }
            }
        }
        row += 1;
    }
    m.concat().iter().map(|c| c.value()).collect()
}

/// Lists lines of `Sigma(F_q)`, i.e. planes through `p` defined over `F_q`.
pub fn plane_search(y: &CyclicCubicFourfold, q: u32) -> Result<PlaneSearchResult, FanoError> {
    with_prime!(q, P => search::<P>(y), _ => Err(FanoError::Degenerate(format!("prime {q} is not supported"))))
}

/// `x0 (x2 x3 + x4^2) + (x1 + x2)^3 + x3^3 + x4^3 + x1 x3 x4 + x5^3`, containing
/// the plane `x3 = x4 = 0, x5 = -(x1 + x2)`.
pub fn negative_control_fourfold() -> CyclicCubicFourfold {
    let f = parse(
        "x0*(x2*x3 + x4^2) + (x1 + x2)^3 + x3^3 + x4^3 + x1*x3*x4 + x5^3",
        &fourfold_vars(),
    )
    .expect("fixed equation");
    CyclicCubicFourfold::from_equation(&f).expect("cyclic cubic")
}
