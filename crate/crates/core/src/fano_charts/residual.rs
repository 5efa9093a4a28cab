//! Residual lines in planes through `p`, and equivariance under `x5 -> zeta x5`.
//!
//! For `p1, p2` on `Sigma` the plane `<p, p1, p2>` meets the fourfold in the
//! lines `<p, p1>`, `<p, p2>` and a residual line; with `F|plane = b1 b2 L(b)`
//! the residual line is `{L = 0}`. Everything is division free, so points may
//! have coordinates in any ring containing `Q`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cubic_model::CyclicCubicFourfold;
use crate::polyring::{vars, HasZeta3, Poly, RadicalExt, Radicands, Rational, RationalAlgebra, Ring};

use super::FanoError;

/// A point pair on `Sigma`, or a point with a tangent direction.
#[derive(Clone, Debug)]
pub enum Xi<R> {
    Secant { p1: Vec<R>, p2: Vec<R> },
    Tangent { p1: Vec<R>, v: Vec<R> },
}

impl<R: Ring> Xi<R> {
    fn spanning(&self) -> (&[R], &[R]) {
        match self {
            Xi::Secant { p1, p2 } => (p1, p2),
            Xi::Tangent { p1, v } => (p1, v),
        }
    }

    pub fn map(&self, f: impl Fn(&[R]) -> Vec<R>) -> Xi<R> {
        match self {
            Xi::Secant { p1, p2 } => Xi::Secant { p1: f(p1), p2: f(p2) },
            Xi::Tangent { p1, v } => Xi::Tangent { p1: f(p1), v: f(v) },
        }
    }
}

/// The line through two points of `P^5`.
#[derive(Clone, Debug)]
pub struct Line<R> {
    pub u: Vec<R>,
    pub v: Vec<R>,
}

impl<R: Ring> Serialize for Line<R> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let text = |x: &[R]| x.iter().map(|c| c.to_string()).collect::<Vec<_>>();
        let mut st = s.serialize_struct("Line", 2)?;
        st.serialize_field("point_a", &text(&self.u))?;
        st.serialize_field("point_b", &text(&self.v))?;
        st.end()
    }
}

#[derive(Clone, Debug)]
pub struct ResidualLine<R> {
    pub line: Line<R>,
    /// `L = alpha b0 + beta b1 + gamma b2`.
    pub form: [R; 3],
    /// `alpha = 0`: the residual line passes through `p`.
    pub through_p: bool,
}

/// `x -> b0 e0 + b1 a + b2 c` as linear forms in `b0, b1, b2`.
fn plane_subs<R: Ring>(a: &[R], c: &[R]) -> Vec<Poly<R>> {
    let ring = vars(&["b0", "b1", "b2"]);
    (0..6)
        .map(|i| {
            let mut coeffs = vec![R::zero(), a[i].clone(), c[i].clone()];
            if i == 0 {
                coeffs[0] = R::one();
            }
            Poly::linear_form(&ring, &coeffs)
        })
        .collect()
}

/// Evaluation of `F` on the plane `<p, a, c>`.
fn restrict_to_plane<R: RationalAlgebra>(f: &Poly<Rational>, a: &[R], c: &[R]) -> Result<Poly<R>, FanoError> {
    Ok(f.embed_coeffs::<R>().substitute(&plane_subs(a, c))?)
}

fn combine<R: Ring>(coeffs: &[R; 3], a: &[R], c: &[R]) -> Vec<R> {
    (0..6)
        .map(|i| {
            let base = if i == 0 { coeffs[0].clone() } else { R::zero() };
            base.add(&coeffs[1].mul(&a[i])).add(&coeffs[2].mul(&c[i]))
        })
        .collect()
}

pub fn residual_line<R: RationalAlgebra>(y: &CyclicCubicFourfold, xi: &Xi<R>) -> Result<ResidualLine<R>, FanoError> {
    let (a, c) = xi.spanning();
    if a.len() != 6 || c.len() != 6 {
        return Err(FanoError::Degenerate("points need six coordinates".into()));
    }
    let g = restrict_to_plane(y.equation(), a, c)?;
    if g.is_zero() {
        return Err(FanoError::Degenerate("the plane lies in the fourfold".into()));
    }
    let div = match xi {
        Xi::Secant { .. } => g.div_var_power(1, 1).and_then(|h| h.div_var_power(2, 1)),
        Xi::Tangent { .. } => g.div_var_power(2, 2),
    };
    let l = div.ok_or_else(|| {
        FanoError::Degenerate("the plane does not contain the expected lines through p".into())
    })?;
    if l.degree() != Some(1) || !l.is_homogeneous() {
        return Err(FanoError::Degenerate("residual is not a linear form".into()));
    }
    let co = l.linear_coeffs();
    let form = [co[0].clone(), co[1].clone(), co[2].clone()];
    let [al, be, ga] = &form;
    let (s, t) = if !al.is_zero() {
        ([be.clone(), al.neg(), R::zero()], [ga.clone(), R::zero(), al.neg()])
    } else if !be.is_zero() {
        ([R::one(), R::zero(), R::zero()], [R::zero(), ga.clone(), be.neg()])
    } else {
        ([R::one(), R::zero(), R::zero()], [R::zero(), R::one(), R::zero()])
    };
    Ok(ResidualLine {
        line: Line {
            u: combine(&s, a, c),
            v: combine(&t, a, c),
        },
        through_p: al.is_zero(),
        form,
    })
}

impl<R: RationalAlgebra> Line<R> {
    /// `F(lambda u + mu v) = 0` identically.
    pub fn lies_on(&self, f: &Poly<Rational>) -> bool {
        let ring = vars(&["lambda", "mu"]);
        let subs: Vec<Poly<R>> = (0..6)
            .map(|i| Poly::linear_form(&ring, &[self.u[i].clone(), self.v[i].clone()]))
            .collect();
        f.embed_coeffs::<R>().substitute(&subs).map(|p| p.is_zero()).unwrap_or(false)
    }
}

/// Plücker coordinates `u_i v_j - u_j v_i` for `i < j`.
pub fn plucker<R: Ring>(l: &Line<R>) -> Vec<R> {
    let mut out = Vec::new();
    for i in 0..6 {
        for j in i + 1..6 {
            out.push(l.u[i].mul(&l.v[j]).sub(&l.u[j].mul(&l.v[i])));
        }
    }
    out
}

/// Proportional nonzero Plücker vectors, compared by cross-multiplication.
pub fn same_line<R: Ring>(a: &Line<R>, b: &Line<R>) -> bool {
    let (pa, pb) = (plucker(a), plucker(b));
    if pa.iter().all(Ring::is_zero) || pb.iter().all(Ring::is_zero) {
        return false;
    }
    for i in 0..pa.len() {
        for j in 0..pa.len() {
            if !pa[i].mul(&pb[j]).sub(&pa[j].mul(&pb[i])).is_zero() {
                return false;
            }
        }
    }
    true
}

/// `x5 -> zeta x5`.
pub fn sigma_action<R: HasZeta3>(x: &[R]) -> Vec<R> {
    let mut out = x.to_vec();
    out[5] = out[5].mul(&R::zeta3());
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivarianceReport {
    pub equivariant: bool,
    pub on_fourfold: bool,
    /// `Q` vanishes where the residual line meets `<p, p1>` and `<p, p2>`.
    pub meets_cone: bool,
    pub through_p: bool,
}

impl EquivarianceReport {
    pub fn pass(&self) -> bool {
        self.equivariant && self.on_fourfold && self.meets_cone
    }
}

/// Checks `l(sigma xi) = sigma(l(xi))`.
pub fn equivariance_check<R: RationalAlgebra + HasZeta3>(
    y: &CyclicCubicFourfold,
    xi: &Xi<R>,
) -> Result<EquivarianceReport, FanoError> {
    let l = residual_line(y, xi)?;
    let ls = residual_line(y, &xi.map(sigma_action))?;
    let moved = Line {
        u: sigma_action(&l.line.u),
        v: sigma_action(&l.line.v),
    };
    let (q, _) = y.quadric_and_cubic()?;
    let qr = q.embed_coeffs::<R>();
    let (a, c) = xi.spanning();
    let [al, be, ga] = &l.form;
    // l meets <p, a> where b2 = 0 and <p, c> where b1 = 0
    let m1 = combine(&[be.clone(), al.neg(), R::zero()], a, c);
    let m2 = combine(&[ga.clone(), R::zero(), al.neg()], a, c);
    let meets = match xi {
        Xi::Secant { .. } => qr.eval(&m1).is_zero() && qr.eval(&m2).is_zero(),
        Xi::Tangent { .. } => qr.eval(&m1).is_zero(),
    };
    Ok(EquivarianceReport {
        equivariant: same_line(&moved, &ls.line),
        on_fourfold: l.line.lies_on(y.equation()),
        meets_cone: meets,
        through_p: l.through_p,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ResidualConic {
    pub conic: String,
    /// No `b0` terms: the conic is a pair of lines through `(1:0:0)`.
    pub pair_through_p: bool,
    /// The conic vanishes identically.
    pub degenerate: bool,
}

/// Residual conic of the plane `<p, e1, (0:0:a)>`, `a` in the coordinates `x2..x5`.
pub fn residual_conic(y: &CyclicCubicFourfold, a: &[Rational]) -> Result<ResidualConic, FanoError> {
    if a.len() != 4 {
        return Err(FanoError::Degenerate("a needs four coordinates".into()));
    }
    let mut e1 = vec![Rational::zero(); 6];
    e1[1] = Rational::one();
    let mut av = vec![Rational::zero(); 2];
    av.extend(a.iter().cloned());
    let g = restrict_to_plane::<Rational>(y.equation(), &e1, &av)?;
    let r = g
        .div_var_power(2, 1)
        .ok_or_else(|| FanoError::Structure("the line <p, e1> is not in the fourfold".into()))?;
    Ok(ResidualConic {
        pair_through_p: !r.uses_var(0),
        degenerate: r.is_zero(),
        conic: r.to_string(),
    })
}

fn isotropic_point(f2: &Poly<Rational>) -> Option<Vec<Rational>> {
    let r = 3i64;
    for a in -r..=r {
        for b in -r..=r {
            for c in -r..=r {
                let v = [0, a, b, c].map(Rational::from_int);
                if (a, b, c) != (0, 0, 0) && f2.eval(&v).is_zero() {
                    return Some(v.to_vec());
                }
            }
        }
    }
    None
}

/// Rational points `(x1, y)` with `f2(y) = 0`, from lines through a known point of the conic.
struct ConicPoints {
    f2: Poly<Rational>,
    ybar: Vec<Rational>,
}

impl ConicPoints {
    fn draw(&self, rng: &mut ChaCha8Rng) -> Option<Vec<Rational>> {
        let w: Vec<Rational> = (0..4)
            .map(|i| if i == 0 { Rational::zero() } else { Rational::from_int(rng.gen_range(-3..=3)) })
            .collect();
        let qw = self.f2.eval(&w);
        let bw = bilinear(&self.f2, &self.ybar, &w);
        let y: Vec<Rational> = (0..4).map(|i| qw.mul(&self.ybar[i]).sub(&bw.add(&bw).mul(&w[i]))).collect();
        if y.iter().all(Ring::is_zero) {
            return None;
        }
        let mut out = y;
        out[0] = Rational::from_int(rng.gen_range(-3..=3));
        Some(out)
    }
}

pub(crate) fn bilinear(q: &Poly<Rational>, u: &[Rational], v: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (j, vj) in v.iter().enumerate() {
        acc = acc.add(&q.partial_derivative(j).eval(u).mul(vj));
    }
    acc.mul(&Rational::new(1, 2))
}

fn setup(y: &CyclicCubicFourfold, known: Option<&[Rational]>) -> Result<(Poly<Rational>, Poly<Rational>, ConicPoints), FanoError> {
    let (f2, f3) = y.cyclic_parts()?;
    let ybar = match known {
        Some(p) if p.len() == 6 => {
            let mut v = vec![Rational::zero()];
            v.extend(p[2..5].iter().cloned());
            v
        }
        _ => isotropic_point(&f2).ok_or_else(|| FanoError::Degenerate("no small rational point on the conic".into()))?,
    };
    if !f2.eval(&ybar).is_zero() || ybar.iter().all(Ring::is_zero) {
        return Err(FanoError::Degenerate("known point is not on the conic".into()));
    }
    Ok((f2.clone(), f3, ConicPoints { f2, ybar }))
}

/// Random non-degenerate secant pairs on `Sigma`. The `x5`-coordinates are
/// cube roots `r_k^3 = -f3(x1, y)` adjoined symbolically, so each pair lives
/// in `Q(zeta)(r1, r2)`, a field of degree 18.
pub fn sample_secants(
    y: &CyclicCubicFourfold,
    known: Option<&[Rational]>,
    seed: u64,
    count: usize,
) -> Result<Vec<Xi<RadicalExt>>, FanoError> {
    let (f2, f3, conic) = setup(y, known)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < count {
        tries += 1;
        if tries > 200 * count.max(1) {
            return Err(FanoError::Degenerate("could not sample enough pairs".into()));
        }
        let (Some(u1), Some(u2)) = (conic.draw(&mut rng), conic.draw(&mut rng)) else {
            continue;
        };
        let a1 = f3.eval(&u1).neg();
        let a2 = f3.eval(&u2).neg();
        if bilinear(&f2, &u1, &u2).is_zero() {
            continue;
        }
        let Some(ctx) = Radicands::new(a1, a2) else {
            continue;
        };
        let lift = |u: &[Rational], r: RadicalExt| -> Vec<RadicalExt> {
            let mut v = vec![RadicalExt::zero()];
            v.extend(u.iter().map(RadicalExt::from_rational));
            v.push(r);
            v
        };
        let xi = Xi::Secant {
            p1: lift(&u1, RadicalExt::root(&ctx, 0)),
            p2: lift(&u2, RadicalExt::root(&ctx, 1)),
        };
        if restrict_to_plane(y.equation(), xi.spanning().0, xi.spanning().1)?.is_zero() {
            continue;
        }
        out.push(xi);
    }
    Ok(out)
}

/// `det` of a square matrix over a ring, by cofactor expansion.
fn det_ring<R: Ring>(m: &[Vec<R>]) -> R {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = R::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<R>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let t = m[0][j].mul(&det_ring(&minor));
        acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
    }
    acc
}

/// Random points of `Sigma` with a tangent direction `v`, the generalized
/// cross product of `grad Q`, `grad K`, the point and a unit vector.
pub fn sample_tangents(
    y: &CyclicCubicFourfold,
    known: Option<&[Rational]>,
    seed: u64,
    count: usize,
) -> Result<Vec<Xi<RadicalExt>>, FanoError> {
    let (_, f3, conic) = setup(y, known)?;
    let (q, k) = y.quadric_and_cubic()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7461_6e67);
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < count {
        tries += 1;
        if tries > 200 * count.max(1) {
            return Err(FanoError::Degenerate("could not sample enough tangents".into()));
        }
        let Some(u) = conic.draw(&mut rng) else { continue };
        let Some(ctx) = Radicands::single(f3.eval(&u).neg()) else { continue };
        let mut p1: Vec<RadicalExt> = vec![RadicalExt::zero()];
        p1.extend(u.iter().map(RadicalExt::from_rational));
        p1.push(RadicalExt::root(&ctx, 0));
        let gq: Vec<RadicalExt> = (1..6).map(|j| q.partial_derivative(j).embed_coeffs::<RadicalExt>().eval(&p1)).collect();
        let gk: Vec<RadicalExt> = (1..6).map(|j| k.partial_derivative(j).embed_coeffs::<RadicalExt>().eval(&p1)).collect();
        let e = rng.gen_range(0..5);
        let unit: Vec<RadicalExt> = (0..5).map(|i| if i == e { RadicalExt::one() } else { RadicalExt::zero() }).collect();
        let rows = [gq, gk, p1[1..].to_vec(), unit];
        let mut v = vec![RadicalExt::zero()];
        for col in 0..5 {
            let minor: Vec<Vec<RadicalExt>> = rows
                .iter()
                .map(|r| r.iter().enumerate().filter(|(kk, _)| *kk != col).map(|(_, x)| x.clone()).collect())
                .collect();
            let d = det_ring(&minor);
            v.push(if col % 2 == 0 { d } else { d.neg() });
        }
        let line = Line { u: p1.clone(), v: v.clone() };
        if plucker(&line).iter().all(Ring::is_zero) {
            continue;
        }
        let xi = Xi::Tangent { p1, v };
        let g = restrict_to_plane(y.equation(), xi.spanning().0, xi.spanning().1)?;
        if g.is_zero() {
            continue;
        }
        out.push(xi);
    }
    Ok(out)
}
