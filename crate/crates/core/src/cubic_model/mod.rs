//! Cubic threefolds singular at `p = (1:0:0:0:0)` and their cyclic triple covers.
//!
//! A cubic threefold `C = {x0 f2 + f3 = 0}` with `f2, f3` forms in `x1..x4`
//! gives the cubic fourfold `Y = {x0 f2 + f3 + x5^3 = 0}`, the triple cover of
//! `P^4` branched along `C`. The surface `Sigma = {f2 = 0, f3 + x5^3 = 0}` in
//! `P^4` (coordinates `x1..x5`) parametrizes lines of `Y` through `p`.

mod sampler;
mod sigma;
mod verify;

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::polyring::matrix::rank;
use crate::polyring::{indexed_vars, Poly, PolyError, Rational, Ring, Vars};
use crate::singclass::SingularityKind;

pub use sampler::{sample_generic_instance, SampleError, MAX_ATTEMPTS, MAX_HEIGHT};
pub use sigma::{sigma_singular_points, SigmaPoint, SigmaSingularities, UnresolvedPoints};
pub use verify::{verify_isolated_singularity, FqEvidence, IsolationOptions, IsolationReport};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ModelError {
    #[error("not a form of degree {expected}: {poly}")]
    NotHomogeneous { expected: u32, poly: String },
    #[error("cubic is not singular at p: {0}")]
    NotSingularAtP(String),
    #[error("expected {expected} variables, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("not in cyclic form x0*f2 + f3 + x5^3: {0}")]
    NotCyclic(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// `x0, ..., x4`.
pub fn threefold_vars() -> Vars {
    static V: OnceLock<Vars> = OnceLock::new();
    V.get_or_init(|| indexed_vars("x", 0..5)).clone()
}

/// `x0, ..., x5`.
pub fn fourfold_vars() -> Vars {
    static V: OnceLock<Vars> = OnceLock::new();
    V.get_or_init(|| indexed_vars("x", 0..6)).clone()
}

/// `x1, ..., x4`.
pub fn base_vars() -> Vars {
    static V: OnceLock<Vars> = OnceLock::new();
    V.get_or_init(|| indexed_vars("x", 1..5)).clone()
}

fn check_form(p: &Poly<Rational>, d: u32) -> Result<(), ModelError> {
    if !p.is_zero() && !(p.is_homogeneous() && p.degree() == Some(d)) {
        return Err(ModelError::NotHomogeneous {
            expected: d,
            poly: p.to_string(),
        });
    }
    Ok(())
}

/// A cubic threefold in `P^4`.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicThreefold {
    equation: Poly<Rational>,
}

impl CubicThreefold {
    /// `x0 f2 + f3` with `f2, f3` forms in `x1..x4`.
    pub fn from_parts(f2: &Poly<Rational>, f3: &Poly<Rational>) -> Result<Self, ModelError> {
        for p in [f2, f3] {
            if p.arity() != 4 {
                return Err(ModelError::WrongArity {
                    expected: 4,
                    got: p.arity(),
                });
            }
        }
        check_form(f2, 2)?;
        check_form(f3, 3)?;
        let v = threefold_vars();
        let emb = [1, 2, 3, 4];
        let eq = &(&Poly::var(&v, 0) * &f2.embed(&v, &emb)) + &f3.embed(&v, &emb);
        Ok(CubicThreefold { equation: eq })
    }

    /// Any cubic form in `x0..x4`; singularity at `p` is checked by the consumers.
    pub fn from_equation(g: &Poly<Rational>) -> Result<Self, ModelError> {
        if g.arity() != 5 {
            return Err(ModelError::WrongArity {
                expected: 5,
                got: g.arity(),
            });
        }
        check_form(g, 3)?;
        if g.is_zero() {
            return Err(ModelError::Precondition("zero equation".into()));
        }
        Ok(CubicThreefold {
            equation: g.with_vars(&threefold_vars())?,
        })
    }

    pub fn equation(&self) -> &Poly<Rational> {
        &self.equation
    }

    /// `(f2, f3)`; fails unless the cubic is singular at `p`.
    pub fn parts(&self) -> Result<(Poly<Rational>, Poly<Rational>), ModelError> {
        let g = &self.equation;
        if g.uses_var(0) && (g.degree_in(0).unwrap_or(0) >= 2) {
            return Err(ModelError::NotSingularAtP(g.to_string()));
        }
        let keep = [1, 2, 3, 4];
        let f2 = g.coefficient_of_var_power(0, 1).restrict_vars(&keep, &base_vars())?;
        let f3 = g.coefficient_of_var_power(0, 0).restrict_vars(&keep, &base_vars())?;
        Ok((f2, f3))
    }

    pub fn f2(&self) -> Result<Poly<Rational>, ModelError> {
        Ok(self.parts()?.0)
    }

    pub fn f3(&self) -> Result<Poly<Rational>, ModelError> {
        Ok(self.parts()?.1)
    }

    /// Rank of the quadratic form `f2`.
    pub fn rank_f2(&self) -> Result<usize, ModelError> {
        Ok(rank(&self.f2()?.quadratic_matrix()))
    }

    /// The germ `f2 + f3` of `C` at `p` in the chart `x0 = 1`.
    pub fn affine_germ(&self) -> Result<Poly<Rational>, ModelError> {
        let (f2, f3) = self.parts()?;
        Ok(&f2 + &f3)
    }
}

/// A cubic fourfold in `P^5`, usually the cyclic cover of a [`CubicThreefold`].
#[derive(Clone, Debug, PartialEq)]
pub struct CyclicCubicFourfold {
    equation: Poly<Rational>,
}

/// `x0 f2 + f3 + x5^3` for `C = {x0 f2 + f3 = 0}`.
pub fn build_cyclic_cover(c: &CubicThreefold) -> Result<CyclicCubicFourfold, ModelError> {
    let (f2, f3) = c.parts()?;
    let v = fourfold_vars();
    let emb = [1, 2, 3, 4];
    let x5 = Poly::var(&v, 5);
    let eq = &(&(&Poly::var(&v, 0) * &f2.embed(&v, &emb)) + &f3.embed(&v, &emb)) + &x5.pow(3);
    Ok(CyclicCubicFourfold { equation: eq })
}

/// `F = x0 (a x_c^2 + x_c h1 + q1) + k x_c^3 + x_c^2 h2 + x_c q2 + k2`,
/// with `h1, h2` linear, `q1, q2` quadratic and `k2` cubic in the coordinates
/// other than `x0, x_c`. All parts live in the ring `x0..x5`.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub center: usize,
    pub a: Rational,
    pub h1: Poly<Rational>,
    pub q1: Poly<Rational>,
    pub k: Rational,
    pub h2: Poly<Rational>,
    pub q2: Poly<Rational>,
    pub k2: Poly<Rational>,
}

impl Decomposition {
    /// `e_c` lies on the fourfold with the lines through `p, e_c` in the
    /// tangent directions, so the chart centered at the line `p e_c` applies.
    pub fn is_chart_ready(&self) -> bool {
        self.a.is_zero() && self.k.is_zero()
    }

    pub fn reconstruct(&self) -> Poly<Rational> {
        let v = fourfold_vars();
        let x0 = Poly::var(&v, 0);
        let xc = Poly::var(&v, self.center);
        let xc2 = &xc * &xc;
        let q = &(&xc2.scale(&self.a) + &(&xc * &self.h1)) + &self.q1;
        let kk = &(&(&xc2 * &xc).scale(&self.k) + &(&xc2 * &self.h2)) + &(&(&xc * &self.q2) + &self.k2);
        &(&x0 * &q) + &kk
    }
}

impl CyclicCubicFourfold {
    pub fn from_equation(g: &Poly<Rational>) -> Result<Self, ModelError> {
        if g.arity() != 6 {
            return Err(ModelError::WrongArity {
                expected: 6,
                got: g.arity(),
            });
        }
        check_form(g, 3)?;
        Ok(CyclicCubicFourfold {
            equation: g.with_vars(&fourfold_vars())?,
        })
    }

    pub fn equation(&self) -> &Poly<Rational> {
        &self.equation
    }

    /// `(Q, K)` with `F = x0 Q + K`; fails unless `F` is singular at `p`.
    pub fn quadric_and_cubic(&self) -> Result<(Poly<Rational>, Poly<Rational>), ModelError> {
        let f = &self.equation;
        if f.degree_in(0).unwrap_or(0) >= 2 {
            return Err(ModelError::NotSingularAtP(f.to_string()));
        }
        Ok((f.coefficient_of_var_power(0, 1), f.coefficient_of_var_power(0, 0)))
    }

    /// Invariant under `x5 -> zeta x5`, i.e. every exponent of `x5` is a multiple of 3.
    pub fn is_sigma_invariant(&self) -> bool {
        self.equation.terms().all(|(m, _)| m.0[5] % 3 == 0)
    }

    /// Recovers `(f2, f3)` when `F = x0 f2 + f3 + x5^3` exactly.
    pub fn cyclic_parts(&self) -> Result<(Poly<Rational>, Poly<Rational>), ModelError> {
        let (q, k) = self.quadric_and_cubic()?;
        let v = fourfold_vars();
        let x5c = Poly::var(&v, 5).pow(3);
        let k0 = &k - &x5c;
        let keep = [1, 2, 3, 4];
        let err = || ModelError::NotCyclic(self.equation.to_string());
        let f2 = q.restrict_vars(&keep, &base_vars()).map_err(|_| err())?;
        let f3 = k0.restrict_vars(&keep, &base_vars()).map_err(|_| err())?;
        Ok((f2, f3))
    }

    /// Decomposition relative to the coordinate `x_c`, `1 <= c <= 5`.
    pub fn decomposition(&self, c: usize) -> Result<Decomposition, ModelError> {
        if !(1..=5).contains(&c) {
            return Err(ModelError::Precondition(format!("center index {c} out of range")));
        }
        let (q, k) = self.quadric_and_cubic()?;
        let v = fourfold_vars();
        let d = Decomposition {
            center: c,
            a: q.coefficient_of_var_power(c, 2).constant_term(),
            h1: q.coefficient_of_var_power(c, 1),
            q1: q.coefficient_of_var_power(c, 0),
            k: k.coefficient_of_var_power(c, 3).constant_term(),
            h2: k.coefficient_of_var_power(c, 2),
            q2: k.coefficient_of_var_power(c, 1),
            k2: k.coefficient_of_var_power(c, 0),
        };
        debug_assert_eq!(d.reconstruct(), self.equation.with_vars(&v)?);
        Ok(d)
    }

    /// Applies `x -> M x` to the coordinates `x1..x5`, fixing `x0`.
    pub fn change_coordinates(&self, m5: &[Vec<Rational>]) -> Result<Self, ModelError> {
        let mut m = vec![vec![Rational::zero(); 6]; 6];
        m[0][0] = Rational::one();
        for i in 0..5 {
            for j in 0..5 {
                m[i + 1][j + 1] = m5[i][j].clone();
            }
        }
        Ok(CyclicCubicFourfold {
            equation: self.equation.linear_change(&m)?,
        })
    }

    /// The germ at `p` in the chart `x0 = 1`, in `x1..x5`.
    pub fn affine_germ_at_p(&self) -> Result<Poly<Rational>, ModelError> {
        let f = self.equation.specialize(&[(0, Rational::one())]);
        let keep = [1, 2, 3, 4, 5];
        Ok(f.restrict_vars(&keep, &indexed_vars("x", 1..6))?)
    }
}

/// Instance file: a threefold given by `(f2, f3)` with provenance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    pub claimed_type: SingularityKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub f2: Poly<Rational>,
    pub f3: Poly<Rational>,
    /// A rational smooth point `(0:x1:...:x5)` of `Sigma`, when known.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sigma_point: Option<Vec<Rational>>,
}

impl Instance {
    pub fn threefold(&self) -> Result<CubicThreefold, ModelError> {
        CubicThreefold::from_parts(&self.f2.with_vars(&base_vars())?, &self.f3.with_vars(&base_vars())?)
    }

    pub fn fourfold(&self) -> Result<CyclicCubicFourfold, ModelError> {
        build_cyclic_cover(&self.threefold()?)
    }
}
