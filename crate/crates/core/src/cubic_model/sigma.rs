use serde::Serialize;

use crate::polyring::matrix::{kernel, rank};
use crate::polyring::{indexed_vars, solve_implicit, Field, HasZeta3, Poly, QZeta3, RationalAlgebra, Ring};
use crate::singclass::{classify_poly, format_multiset, wall_table, SingularityKind, SingularityType};

use super::{CyclicCubicFourfold, ModelError};

#[derive(Clone, Debug, Serialize)]
pub struct SigmaPoint {
    /// Coordinates `x1..x5` in `Q(zeta)`.
    pub coords: Vec<String>,
    pub local_equation: String,
    pub singularity: SingularityType,
}

/// Singular points whose coordinates need a cube root outside `Q(zeta)`.
#[derive(Clone, Debug, Serialize)]
pub struct UnresolvedPoints {
    pub count: usize,
    /// The points are `k + t e5` with `t` a root of this polynomial.
    pub minimal_polynomial: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SigmaSingularities {
    pub points: Vec<SigmaPoint>,
    pub unresolved: Option<UnresolvedPoints>,
    pub multiset: Vec<SingularityKind>,
    pub multiset_label: String,
}

impl SigmaSingularities {
    /// Compares with the table entry for the singularity `t` of the fourfold at `p`.
    pub fn matches_wall(&self, t: SingularityKind) -> bool {
        self.unresolved.is_none()
            && wall_table(t).map(|w| w == self.multiset).unwrap_or(false)
    }
}

/// Local equation of `{Q = 0, K = 0}` at `q`: solves `K = 0` for one coordinate.
pub(crate) fn complete_intersection_germ<F: Field>(
    q: &Poly<F>,
    k: &Poly<F>,
    point: &[F],
    order: u32,
) -> Result<Poly<F>, ModelError> {
    let n = point.len();
    let j = point
        .iter()
        .position(|c| !c.is_zero())
        .ok_or_else(|| ModelError::Precondition("zero point".into()))?;
    let inv = point[j].inv().expect("nonzero");
    let affine: Vec<F> = point.iter().map(|c| c.mul(&inv)).collect();
    // chart x_j = 1, local coordinates are the others, translated to the point
    let others: Vec<usize> = (0..n).filter(|&i| i != j).collect();
    let lv = indexed_vars("t", 1..n);
    let subs: Vec<Poly<F>> = (0..n)
        .map(|i| {
            if i == j {
                Poly::one(&lv)
            } else {
                let idx = others.iter().position(|&o| o == i).unwrap();
                &Poly::var(&lv, idx) + &Poly::constant(&lv, affine[i].clone())
            }
        })
        .collect();
    let qa = q.substitute(&subs)?;
    let ka = k.substitute(&subs)?;
    if !qa.constant_term().is_zero() || !ka.constant_term().is_zero() {
        return Err(ModelError::Precondition("point is not on the surface".into()));
    }
    let lin = ka.linear_coeffs();
    let v = lin
        .iter()
        .position(|c| !c.is_zero())
        .ok_or_else(|| ModelError::Precondition("cubic is singular along the vertex line".into()))?;
    let sol = solve_implicit(&[ka], &[v], order)?;
    let subs2: Vec<Poly<F>> = (0..n - 1)
        .map(|i| if i == v { sol[0].clone() } else { Poly::var(&lv, i) })
        .collect();
    let g = qa.substitute_truncated(&subs2, order)?;
    let keep: Vec<usize> = (0..n - 1).filter(|&i| i != v).collect();
    let names: Vec<String> = keep.iter().map(|&i| lv[i].clone()).collect();
    Ok(g.restrict_vars(&keep, &crate::polyring::vars(&names))?)
}

/// Singular points of `Sigma` and their types.
///
/// Requires the cyclic form with `rank f2 = 3`. The candidates are the points
/// of the vertex line of the quadric cone `{f2 = 0}` on the cubic.
pub fn sigma_singular_points(y: &CyclicCubicFourfold, jet_order: u32) -> Result<SigmaSingularities, ModelError> {
    let (f2, f3) = y.cyclic_parts()?;
    let (q, k) = y.quadric_and_cubic()?;
    let gram = f2.quadratic_matrix();
    if rank(&gram) != 3 {
        return Err(ModelError::Precondition(format!("rank f2 = {} != 3", rank(&gram))));
    }
    let kv = kernel(&gram, 4).pop().expect("one-dimensional kernel");
    let c = f3.eval(&kv);
    let five = indexed_vars("x", 1..6);
    let keep = [1, 2, 3, 4, 5];
    let qz: Poly<QZeta3> = q.restrict_vars(&keep, &five)?.embed_coeffs();
    let kz: Poly<QZeta3> = k.restrict_vars(&keep, &five)?.embed_coeffs();
    let mut base: Vec<QZeta3> = kv.iter().map(QZeta3::from_rational).collect();
    base.push(QZeta3::zero());

    let mut pts: Vec<Vec<QZeta3>> = Vec::new();
    let mut unresolved = None;
    if c.is_zero() {
        pts.push(base.clone());
    } else {
        match c.neg().cube_root() {
            Some(r) => {
                let mut t = QZeta3::from_rational(&r);
                for _ in 0..3 {
                    let mut p = base.clone();
                    p[4] = t.clone();
                    pts.push(p);
                    t = t.mul(&QZeta3::zeta3());
                }
            }
            None => {
                unresolved = Some(UnresolvedPoints {
                    count: 3,
                    minimal_polynomial: format!("t^3 + {}", c),
                });
            }
        }
    }
    let mut points = Vec::new();
    for p in &pts {
        let g = complete_intersection_germ(&qz, &kz, p, jet_order)?;
        let st = classify_poly(&g, jet_order).map_err(|e| ModelError::Precondition(e.to_string()))?;
        points.push(SigmaPoint {
            coords: p.iter().map(|c| c.to_string()).collect(),
            local_equation: g.to_string(),
            singularity: st,
        });
    }
    let mut multiset: Vec<SingularityKind> = points.iter().map(|p| p.singularity.kind.normalized()).collect();
    multiset.sort();
    Ok(SigmaSingularities {
        multiset_label: format_multiset(&multiset),
        points,
        unresolved,
        multiset,
    })
}
