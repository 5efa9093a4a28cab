use serde::Serialize;

use crate::cubic_model::{CyclicCubicFourfold, Decomposition};
use crate::polyring::matrix::{complete_basis, identity, inverse, kernel, mat_mul, Matrix};
use crate::polyring::{solve_implicit, vars, Poly, Rational, Ring};
use crate::singclass::{classify_poly, milnor_number, MilnorNumber, SingularityType, DEFAULT_MU_MAX};

use super::chart::fano_chart;
use super::{translate_chart, FanoError};

/// Coordinates adapted to a smooth point `xbar` of `Sigma`: `e2 = xbar`,
/// `e1, e5` span the kernel of `Q`, `h1 = x3`, and the `x3, x4` part of the
/// `x2^2` coefficient of `K` is `x4`.
#[derive(Clone, Debug)]
pub struct GammaChart {
    pub fourfold: CyclicCubicFourfold,
    /// `x = M x'` on `x1..x5`.
    pub change: Matrix<Rational>,
    pub decomposition: Decomposition,
}

pub fn gamma_chart(y: &CyclicCubicFourfold, xbar: &[Rational]) -> Result<GammaChart, FanoError> {
    if xbar.len() != 6 || !xbar[0].is_zero() {
        return Err(FanoError::Degenerate("expected a point (0:x1:...:x5)".into()));
    }
    let (q, k) = y.quadric_and_cubic()?;
    let pt = &xbar[1..];
    if !q.eval(xbar).is_zero() || !k.eval(xbar).is_zero() {
        return Err(FanoError::Degenerate("point is not on Sigma".into()));
    }
    let full = q.quadratic_matrix();
    let gram: Matrix<Rational> = full[1..].iter().map(|r| r[1..].to_vec()).collect();
    let ker = kernel(&gram, 5);
    if ker.len() != 2 {
        return Err(FanoError::Transversality(format!("quadric has corank {} in x1..x5", ker.len())));
    }
    let e5: Vec<Rational> = (0..5).map(|i| if i == 4 { Rational::one() } else { Rational::zero() }).collect();
    // prefer e5 as the second kernel vector so that x5 keeps its meaning
    let e5_in = crate::polyring::matrix::rank(&[ker[0].clone(), ker[1].clone(), e5.clone()].to_vec()) == 2;
    let (k1, k2) = if e5_in {
        let v = if ker[0][..4].iter().any(|c| !c.is_zero()) { &ker[0] } else { &ker[1] };
        let mut v = v.clone();
        v[4] = Rational::zero();
        (v, e5)
    } else {
        (ker[0].clone(), ker[1].clone())
    };
    let comp = complete_basis(&[k1.clone(), pt.to_vec(), k2.clone()], 5);
    if comp.len() != 2 {
        return Err(FanoError::Degenerate("point lies on the vertex line".into()));
    }
    let unit = |i: usize| -> Vec<Rational> { (0..5).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect() };
    let cols = [k1, pt.to_vec(), unit(comp[0]), unit(comp[1]), k2];
    let m1: Matrix<Rational> = (0..5).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    let y1 = y.change_coordinates(&m1)?;
    let d1 = y1.decomposition(2)?;
    let c = |p: &Poly<Rational>, j: usize| p.coeff(&crate::polyring::Monomial::var(6, j).0);
    let n: Matrix<Rational> = vec![vec![c(&d1.h1, 3), c(&d1.h1, 4)], vec![c(&d1.h2, 3), c(&d1.h2, 4)]];
    let ninv = inverse(&n).ok_or_else(|| {
        FanoError::Transversality("the linear forms h1 and h3 are dependent on x3, x4".into())
    })?;
    let mut m2 = identity::<Rational>(5);
    for a in 0..2 {
        for b in 0..2 {
            m2[2 + a][2 + b] = ninv[a][b].clone();
        }
    }
    let y2 = y1.change_coordinates(&m2)?;
    let d2 = y2.decomposition(2)?;
    debug_assert!(c(&d2.h1, 3).is_one() && c(&d2.h2, 4).is_one());
    Ok(GammaChart {
        fourfold: y2,
        change: mat_mul(&m1, &m2),
        decomposition: d2,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GammaModel {
    /// `Gamma` in the coordinates `p11, p14, p15`.
    pub gamma: String,
    #[serde(skip)]
    pub gamma_poly: Poly<Rational>,
    pub jet_order: u32,
    pub singularity: SingularityType,
    pub milnor: MilnorNumber,
    pub chart_equation: String,
}

/// Solves `phi12 = phi03 = phi21 = 0` for `p03, p04, p13` on the slice
/// `p01 = p05 = 0` and returns `Gamma = phi30` on the solution, in `p11, p14, p15`.
pub fn gamma_local_model(y: &CyclicCubicFourfold, xbar: &[Rational], jet_order: u32) -> Result<GammaModel, FanoError> {
    let ch = gamma_chart(y, xbar)?;
    let eqs = fano_chart(&ch.fourfold, 2)?;
    let (p01, p03, p04, p05) = (eqs.index(0, 1), eqs.index(0, 3), eqs.index(0, 4), eqs.index(0, 5));
    let (p11, p13, p14, p15) = (eqs.index(1, 1), eqs.index(1, 3), eqs.index(1, 4), eqs.index(1, 5));
    let zero = Rational::zero();
    let slice = [(p01, zero.clone()), (p05, zero)];
    let phi: Vec<Poly<Rational>> = eqs.phi.iter().map(|p| p.specialize(&slice)).collect();
    let sol = solve_implicit(&[phi[2].clone(), phi[3].clone(), phi[1].clone()], &[p03, p04, p13], jet_order)
        .map_err(|e| FanoError::Transversality(e.to_string()))?;
    let ring = eqs.vars.clone();
    let mut subs: Vec<Poly<Rational>> = (0..8).map(|i| Poly::var(&ring, i)).collect();
    subs[p03] = sol[0].clone();
    subs[p04] = sol[1].clone();
    subs[p13] = sol[2].clone();
    let g = phi[0].substitute_truncated(&subs, jet_order)?;
    let target = vars(&["p11", "p14", "p15"]);
    let gamma = g.restrict_vars(&[p11, p14, p15], &target)?;
    let st = classify_poly(&gamma, jet_order).map_err(|e| FanoError::Structure(e.to_string()))?;
    let mu = milnor_number(&gamma, DEFAULT_MU_MAX);
    Ok(GammaModel {
        gamma: gamma.to_string(),
        gamma_poly: gamma,
        jet_order,
        singularity: st,
        milnor: mu,
        chart_equation: ch.fourfold.equation().to_string(),
    })
}

/// A fourfold, projectively equivalent to `y`, whose line `<p, e1>` lies on it
/// with `h1 = 0`, so the chart centered at `e1` applies. Uses `e1` itself
/// when it lies on `Sigma`, else a rational singular point `e1 + r e5`.
pub fn shift_chart(y: &CyclicCubicFourfold) -> Result<CyclicCubicFourfold, FanoError> {
    let d = y.decomposition(1)?;
    if d.is_chart_ready() {
        return Ok(y.clone());
    }
    let (f2, f3) = y.cyclic_parts()?;
    if f2.uses_var(0) {
        return Err(FanoError::Structure("x1 is not in the kernel of f2".into()));
    }
    let c = f3.coeff(&[3, 0, 0, 0]);
    let r = c
        .neg()
        .cube_root()
        .ok_or_else(|| FanoError::Structure("singular points of Sigma are not rational".into()))?;
    let mut pt = vec![Rational::zero(); 6];
    pt[1] = Rational::one();
    pt[5] = r;
    Ok(translate_chart(y, &pt)?.fourfold)
}
