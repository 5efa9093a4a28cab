use crate::cubic_model::{fourfold_vars, CyclicCubicFourfold, Decomposition};
use crate::polyring::{Field, Poly, Rational, Ring};

use super::FanoError;

/// The fourfold after `x_i -> x_i + xbar_i x1` (`i = 2..5`), which moves the
/// point `xbar` of `Sigma` (with `xbar1 = 1`) to `e1`.
#[derive(Clone, Debug)]
pub struct TranslatedChart {
    pub fourfold: CyclicCubicFourfold,
    pub decomposition: Decomposition,
    pub checks: Vec<(String, bool)>,
}

impl TranslatedChart {
    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

/// `sum_j (d_j f)(U) V_j` for forms on `x0..x5`, with `U, V` vectors of constants or linear forms.
fn polar_at(f: &Poly<Rational>, u: &[Poly<Rational>], v: &[Poly<Rational>]) -> Poly<Rational> {
    let ring = fourfold_vars();
    let mut acc = Poly::zero(&ring);
    for j in 0..6 {
        if v[j].is_zero() {
            continue;
        }
        let dj = f.partial_derivative(j).substitute(u).expect("arity");
        acc = &acc + &(&dj * &v[j]);
    }
    acc
}

pub fn translate_chart(y: &CyclicCubicFourfold, xbar: &[Rational]) -> Result<TranslatedChart, FanoError> {
    if xbar.len() != 6 || !xbar[0].is_zero() {
        return Err(FanoError::Degenerate("expected a point (0:x1:...:x5)".into()));
    }
    let inv = xbar[1]
        .inv()
        .ok_or_else(|| FanoError::Degenerate("xbar1 = 0".into()))?;
    let xb: Vec<Rational> = xbar.iter().map(|c| c.mul(&inv)).collect();
    let (q, k) = y.quadric_and_cubic()?;
    if !q.eval(&xb).is_zero() || !k.eval(&xb).is_zero() {
        return Err(FanoError::Degenerate("point is not on Sigma".into()));
    }
    let v = fourfold_vars();
    let t1 = Poly::<Rational>::var(&v, 1);
    let subs: Vec<Poly<Rational>> = (0..6)
        .map(|i| {
            if i <= 1 {
                Poly::var(&v, i)
            } else {
                &Poly::var(&v, i) + &t1.scale(&xb[i])
            }
        })
        .collect();
    let f = y.equation().substitute(&subs)?;
    let moved = CyclicCubicFourfold::from_equation(&f)?;
    let d = moved.decomposition(1)?;

    // expected parts from the original decomposition at x1
    let d0 = y.decomposition(1)?;
    let tz: Vec<Poly<Rational>> = (0..6)
        .map(|i| if i <= 1 { Poly::zero(&v) } else { Poly::var(&v, i) })
        .collect();
    let xz: Vec<Poly<Rational>> = (0..6)
        .map(|i| if i <= 1 { Poly::zero(&v) } else { Poly::constant(&v, xb[i].clone()) })
        .collect();
    let h1 = polar_at(&d0.q1, &tz, &xz);
    let h2 = &(&d0.h2 + &polar_at(&d0.q2, &tz, &xz)) + &polar_at(&d0.k2, &xz, &tz);
    let q2 = &d0.q2 + &polar_at(&d0.k2, &tz, &xz);
    let checks = vec![
        ("Q(xbar) = 0".to_string(), q.eval(&xb).is_zero() && d.a.is_zero()),
        ("K(xbar) = 0".to_string(), k.eval(&xb).is_zero() && d.k.is_zero()),
        ("h1 = 2B1(., xbar)".to_string(), d.h1 == &h1 + &d0.h1),
        ("h2~ = h2 + 2B2(., xbar) + K12(., xbar)".to_string(), d.h2 == h2),
        ("q2~ = q2 + K21(., xbar)".to_string(), d.q2 == q2),
        ("q1, k2 unchanged".to_string(), d.q1 == d0.q1 && d.k2 == d0.k2),
    ];
    Ok(TranslatedChart {
        fourfold: moved,
        decomposition: d,
        checks,
    })
}
