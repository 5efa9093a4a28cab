use serde::Serialize;

use crate::cubic_model::{CyclicCubicFourfold, Decomposition};
use crate::polyring::matrix::rank;
use crate::polyring::{vars, Poly, Rational, Ring, Vars};

use super::FanoError;

/// The four equations `phi^{30}, phi^{21}, phi^{12}, phi^{03}` of the Fano
/// variety near the line `<p, e_c>`, in `p0j, p1j` for `j` in `others`.
#[derive(Clone, Debug, PartialEq)]
pub struct FanoLocalEquations {
    pub center: usize,
    pub others: [usize; 4],
    pub vars: Vars,
    pub phi: [Poly<Rational>; 4],
}

pub const BIDEGREES: [(u32, u32); 4] = [(3, 0), (2, 1), (1, 2), (0, 3)];

impl FanoLocalEquations {
    /// Index of `p0j` (`row = 0`) or `p1j` (`row = 1`) in [`Self::vars`].
    pub fn index(&self, row: usize, j: usize) -> usize {
        row * 4 + self.others.iter().position(|&o| o == j).expect("coordinate in chart")
    }
}

pub(crate) fn others_of(c: usize) -> [usize; 4] {
    let v: Vec<usize> = (1..=5).filter(|&j| j != c).collect();
    [v[0], v[1], v[2], v[3]]
}

pub(crate) fn chart_vars(others: &[usize; 4]) -> Vars {
    let mut names: Vec<String> = others.iter().map(|j| format!("p0{j}")).collect();
    names.extend(others.iter().map(|j| format!("p1{j}")));
    vars(&names)
}

fn ready(y: &CyclicCubicFourfold, c: usize) -> Result<Decomposition, FanoError> {
    let d = y.decomposition(c)?;
    if !d.is_chart_ready() {
        return Err(FanoError::Structure(format!(
            "the line <p, e{c}> is not contained in the fourfold"
        )));
    }
    Ok(d)
}

/// Equations by direct substitution of the parametrized line.
pub fn fano_chart(y: &CyclicCubicFourfold, c: usize) -> Result<FanoLocalEquations, FanoError> {
    ready(y, c)?;
    let others = others_of(c);
    let ring8 = chart_vars(&others);
    let mut names = vec!["lambda".to_string(), "mu".to_string()];
    names.extend(ring8.iter().cloned());
    let ring10 = vars(&names);
    let lam = Poly::<Rational>::var(&ring10, 0);
    let mu = Poly::<Rational>::var(&ring10, 1);
    let mut subs = vec![Poly::zero(&ring10); 6];
    subs[0] = lam.clone();
    subs[c] = mu.clone();
    for (k, &j) in others.iter().enumerate() {
        let p0 = Poly::var(&ring10, 2 + k);
        let p1 = Poly::var(&ring10, 6 + k);
        subs[j] = &(&mu * &p0) - &(&lam * &p1);
    }
    let g = y.equation().substitute(&subs)?;
    let keep: Vec<usize> = (2..10).collect();
    let mut phi: Vec<Poly<Rational>> = Vec::new();
    let mut total = Poly::zero(&ring10);
    for (i, j) in BIDEGREES {
        let comp = g.bigraded_component(&[0], &[1], i, j);
        total = &total + &comp;
        let stripped = comp
            .div_var_power(0, i)
            .and_then(|p| p.div_var_power(1, j))
            .ok_or_else(|| FanoError::Structure("bidegree component not divisible".into()))?;
        phi.push(stripped.restrict_vars(&keep, &ring8)?);
    }
    if total != g {
        return Err(FanoError::Structure("restriction has terms outside total degree 3".into()));
    }
    Ok(FanoLocalEquations {
        center: c,
        others,
        vars: ring8,
        phi: phi.try_into().expect("four"),
    })
}

/// `f(U)` for a form `f` on `x0..x5` not involving `x0, x_c`.
fn at(f: &Poly<Rational>, others: &[usize; 4], u: &[Poly<Rational>; 4], ring: &Vars) -> Poly<Rational> {
    let mut subs = vec![Poly::zero(ring); 6];
    for (k, &j) in others.iter().enumerate() {
        subs[j] = u[k].clone();
    }
    f.substitute(&subs).expect("arity")
}

/// `sum_j (d_j f)(U) V_j`.
fn polar(f: &Poly<Rational>, others: &[usize; 4], u: &[Poly<Rational>; 4], v: &[Poly<Rational>; 4], ring: &Vars) -> Poly<Rational> {
    let mut acc = Poly::zero(ring);
    for (k, &j) in others.iter().enumerate() {
        let dj = at(&f.partial_derivative(j), others, u, ring);
        acc = &acc + &(&dj * &v[k]);
    }
    acc
}

/// Closed forms from the decomposition:
/// `phi30 = q1(P1) - k2(P1)`,
/// `phi21 = -2 B1(P1, P0) - h1(P1) + q2(P1) + K21(P1, P0)`,
/// `phi12 = q1(P0) + h1(P0) - h2(P1) - 2 B2(P1, P0) - K12(P1, P0)`,
/// `phi03 = h2(P0) + q2(P0) + k2(P0)`.
pub fn closed_form_equations(y: &CyclicCubicFourfold, c: usize) -> Result<[Poly<Rational>; 4], FanoError> {
    let d = ready(y, c)?;
    let others = others_of(c);
    let ring = chart_vars(&others);
    let p0: [Poly<Rational>; 4] = std::array::from_fn(|k| Poly::var(&ring, k));
    let p1: [Poly<Rational>; 4] = std::array::from_fn(|k| Poly::var(&ring, 4 + k));
    Ok(closed_forms(&d, &others, &p1, &p0, &ring))
}

fn closed_forms(
    d: &Decomposition,
    others: &[usize; 4],
    p1: &[Poly<Rational>; 4],
    p0: &[Poly<Rational>; 4],
    ring: &Vars,
) -> [Poly<Rational>; 4] {
    let f = |g: &Poly<Rational>, u: &[Poly<Rational>; 4]| at(g, others, u, ring);
    // B(U, V) = polar(q)(U, V) / 2, so 2B is the polar itself
    let pol = |g: &Poly<Rational>, u: &[Poly<Rational>; 4], v: &[Poly<Rational>; 4]| polar(g, others, u, v, ring);
    let phi30 = &f(&d.q1, p1) - &f(&d.k2, p1);
    let phi21 = &(&(&f(&d.q2, p1) + &pol(&d.k2, p1, p0)) - &pol(&d.q1, p1, p0)) - &f(&d.h1, p1);
    let phi12 = &(&(&f(&d.q1, p0) + &f(&d.h1, p0)) - &f(&d.h2, p1)) - &(&pol(&d.q2, p1, p0) + &pol(&d.k2, p0, p1));
    let phi03 = &(&f(&d.h2, p0) + &f(&d.q2, p0)) + &f(&d.k2, p0);
    [phi30, phi21, phi12, phi03]
}

/// Equations on the chart `p1j = s a_j` of the blow-up along `P1 = 0`, where
/// `s = p1` of the last chart coordinate. Powers `s^2, s, 1, 1` are divided out.
#[derive(Clone, Debug, PartialEq)]
pub struct BlowupEquations {
    pub center: usize,
    pub others: [usize; 4],
    pub vars: Vars,
    pub phi: [Poly<Rational>; 4],
}

pub const BLOWUP_POWERS: [u32; 4] = [2, 1, 0, 0];

fn blowup_vars(others: &[usize; 4]) -> Vars {
    let mut names: Vec<String> = others.iter().map(|j| format!("p0{j}")).collect();
    names.extend(others[..3].iter().map(|j| format!("a{j}")));
    names.push(format!("p1{}", others[3]));
    vars(&names)
}

/// Substitutes `P1 = s (a, 1)` into the chart equations and divides out.
pub fn blowup(eqs: &FanoLocalEquations) -> Result<BlowupEquations, FanoError> {
    let ring = blowup_vars(&eqs.others);
    let s = Poly::<Rational>::var(&ring, 7);
    let mut subs: Vec<Poly<Rational>> = (0..4).map(|k| Poly::var(&ring, k)).collect();
    for k in 0..3 {
        subs.push(&s * &Poly::var(&ring, 4 + k));
    }
    subs.push(s);
    let mut phi = Vec::new();
    for (e, p) in BLOWUP_POWERS.iter().zip(&eqs.phi) {
        let sub = p.substitute(&subs)?;
        let q = sub.div_var_power(7, *e).ok_or_else(|| {
            FanoError::Structure(format!("blow-up: division by s^{e} leaves a remainder"))
        })?;
        phi.push(q);
    }
    Ok(BlowupEquations {
        center: eqs.center,
        others: eqs.others,
        vars: ring,
        phi: phi.try_into().expect("four"),
    })
}

/// Closed forms of the blown-up equations, with `A = (a, 1)`:
/// `q1(A) - s k2(A)`, `-2 B1(A, P0) - h1(A) + s (q2(A) + K21(A, P0))`,
/// `q1(P0) + h1(P0) - s (h2(A) + 2 B2(A, P0) + K12(A, P0))`, and `phi03`.
pub fn closed_form_blowup(y: &CyclicCubicFourfold, c: usize) -> Result<[Poly<Rational>; 4], FanoError> {
    let d = ready(y, c)?;
    let others = others_of(c);
    let ring = blowup_vars(&others);
    let s = Poly::<Rational>::var(&ring, 7);
    let p0: [Poly<Rational>; 4] = std::array::from_fn(|k| Poly::var(&ring, k));
    let a: [Poly<Rational>; 4] = std::array::from_fn(|k| if k < 3 { Poly::var(&ring, 4 + k) } else { Poly::one(&ring) });
    let f = |g: &Poly<Rational>, u: &[Poly<Rational>; 4]| at(g, &others, u, &ring);
    let pol = |g: &Poly<Rational>, u: &[Poly<Rational>; 4], v: &[Poly<Rational>; 4]| polar(g, &others, u, v, &ring);
    let t30 = &f(&d.q1, &a) - &(&s * &f(&d.k2, &a));
    let t21 = &(&(&s * &(&f(&d.q2, &a) + &pol(&d.k2, &a, &p0))) - &pol(&d.q1, &a, &p0)) - &f(&d.h1, &a);
    let t12 = &(&f(&d.q1, &p0) + &f(&d.h1, &p0))
        - &(&s * &(&(&f(&d.h2, &a) + &pol(&d.q2, &a, &p0)) + &pol(&d.k2, &p0, &a)));
    let t03 = &(&f(&d.h2, &p0) + &f(&d.q2, &p0)) + &f(&d.k2, &p0);
    Ok([t30, t21, t12, t03])
}

#[derive(Clone, Debug, Serialize)]
pub struct CentralFiber {
    /// The four equations restricted to `P0 = 0, s = 0`, in the `a` coordinates.
    pub equations: Vec<String>,
    /// Rank of the quadric cone `q1(a)`.
    pub cone_rank: usize,
    /// A quadric cone of rank at least 3 is irreducible.
    pub irreducible: bool,
    /// Only the first equation survives.
    pub only_cone: bool,
}

pub fn central_fiber(b: &BlowupEquations) -> Result<CentralFiber, FanoError> {
    let zero = Rational::zero();
    let mut assign: Vec<(usize, Rational)> = (0..4).map(|k| (k, zero.clone())).collect();
    assign.push((7, zero));
    let ring = vars(&b.vars[4..7]);
    let eqs: Vec<Poly<Rational>> = b
        .phi
        .iter()
        .map(|p| p.specialize(&assign).restrict_vars(&[4, 5, 6], &ring))
        .collect::<Result<_, _>>()?;
    let cone = &eqs[0];
    let r = rank(&cone.quadratic_matrix());
    Ok(CentralFiber {
        equations: eqs.iter().map(|p| p.to_string()).collect(),
        cone_rank: r,
        irreducible: cone.is_homogeneous() && cone.degree() == Some(2) && r >= 3,
        only_cone: eqs[1..].iter().all(Poly::is_zero),
    })
}
