//! Truncated power series solutions of polynomial systems.

use super::matrix::{inverse, Matrix};
use super::poly::Poly;
use super::scalar::Field;
use super::PolyError;

/// Solves `eqs = 0` for the variables `unknowns` as power series in the other
/// variables, exact through degree `order`.
///
/// The equations must vanish at the origin with invertible Jacobian in the
/// unknowns there. Iterates `u <- u - J^{-1} G(u)` with the Jacobian frozen at
/// the origin; each step fixes at least one more degree.
pub fn solve_implicit<F: Field>(
    eqs: &[Poly<F>],
    unknowns: &[usize],
    order: u32,
) -> Result<Vec<Poly<F>>, PolyError> {
    let k = unknowns.len();
    if eqs.len() != k {
        return Err(PolyError::Domain(format!(
            "{} equations for {} unknowns",
            eqs.len(),
            k
        )));
    }
    if k == 0 {
        return Ok(Vec::new());
    }
    let ring = eqs[0].vars().clone();
    for e in eqs {
        if e.arity() != ring.len() {
            return Err(PolyError::Arity {
                left: ring.len(),
                right: e.arity(),
            });
        }
        if !e.constant_term().is_zero() {
            return Err(PolyError::Domain("equation does not vanish at the origin".into()));
        }
    }
    let jac: Matrix<F> = eqs
        .iter()
        .map(|e| {
            let lin = e.linear_coeffs();
            unknowns.iter().map(|&u| lin[u].clone()).collect()
        })
        .collect();
    let jinv = inverse(&jac)
        .ok_or_else(|| PolyError::Domain("Jacobian in the unknowns is singular".into()))?;
    let mut sol: Vec<Poly<F>> = vec![Poly::zero(&ring); k];
    for _ in 0..=order + 1 {
        let subs: Vec<Poly<F>> = (0..ring.len())
            .map(|i| match unknowns.iter().position(|&u| u == i) {
                Some(j) => sol[j].clone(),
                None => Poly::var(&ring, i),
            })
            .collect();
        let res: Vec<Poly<F>> = eqs
            .iter()
            .map(|e| e.substitute_truncated(&subs, order))
            .collect::<Result<_, _>>()?;
        if res.iter().all(Poly::is_zero) {
            return Ok(sol);
        }
        for (j, s) in sol.iter_mut().enumerate() {
            let mut corr = Poly::zero(&ring);
            for (l, r) in res.iter().enumerate() {
                corr = &corr + &r.scale(&jinv[j][l]);
            }
            *s = (&*s - &corr).truncate(order);
        }
    }
    Err(PolyError::Domain("implicit solve did not converge".into()))
}
