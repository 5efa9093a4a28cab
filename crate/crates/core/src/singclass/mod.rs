//! Recognition of simple (ADE) hypersurface singularities.
//!
//! A germ is split by the Morse lemma into a quadratic part and a residual in
//! `corank` variables, and the residual is matched against the standard
//! series by explicit normal-form tests. Every positive answer comes with a
//! semi-quasi-homogeneous certificate: weights, the initial part, and its
//! Milnor number from the independent oracle in [`milnor`].
//!
//! ```
//! use fanolab::polyring::parse_auto;
//! use fanolab::singclass::{classify_poly, SingularityKind};
//!
//! let g = parse_auto("x^3 + x*y^3 + z^2").unwrap();
//! let t = classify_poly(&g, 8).unwrap();
//! assert_eq!(t.kind, SingularityKind::E(7));
//! ```

mod classify;
pub mod milnor;
mod morse;
mod series;
mod wall;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::polyring::{Field, Poly, PolyError, Rational};

pub use classify::{classify, classify_poly, DEFAULT_JET_ORDER};
pub use milnor::{milnor_number, MilnorNumber, DEFAULT_MU_MAX};
pub use morse::{morse_split, MorseSplit};
pub use wall::{format_multiset, wall_table, wall_rows, WallRow};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SingError {
    #[error("not a critical point at the origin: {0}")]
    NotCritical(String),
    #[error("point is not on the hypersurface")]
    NotOnHypersurface,
    #[error("{0} is not a simple singularity")]
    NotSimple(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A hypersurface germ at the origin with a critical point there.
#[derive(Clone, Debug, PartialEq)]
pub struct Germ<F: Field> {
    poly: Poly<F>,
}

impl<F: Field> Germ<F> {
    pub fn new(poly: Poly<F>) -> Result<Self, SingError> {
        if !poly.constant_term().is_zero() {
            return Err(SingError::NotOnHypersurface);
        }
        if poly.linear_coeffs().iter().any(|c| !c.is_zero()) {
            return Err(SingError::NotCritical("nonzero linear part".into()));
        }
        Ok(Germ { poly })
    }

    pub fn poly(&self) -> &Poly<F> {
        &self.poly
    }

    pub fn nvars(&self) -> usize {
        self.poly.arity()
    }
}

/// ADE label, or the two non-simple outcomes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SingularityKind {
    Smooth,
    A(u32),
    D(u32),
    E(u32),
    NonSimpleOrUnknown,
}

impl SingularityKind {
    /// Milnor number of the type; `None` when not simple.
    pub fn milnor(self) -> Option<u32> {
        match self {
            SingularityKind::Smooth => Some(0),
            SingularityKind::A(n) | SingularityKind::D(n) | SingularityKind::E(n) => Some(n),
            SingularityKind::NonSimpleOrUnknown => None,
        }
    }

    pub fn is_simple(self) -> bool {
        matches!(self, SingularityKind::A(_) | SingularityKind::D(_) | SingularityKind::E(_))
    }

    /// `D3` is `A3`; other labels are returned unchanged.
    pub fn normalized(self) -> Self {
        match self {
            SingularityKind::D(3) => SingularityKind::A(3),
            k => k,
        }
    }
}

impl fmt::Display for SingularityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SingularityKind::Smooth => write!(f, "smooth"),
            SingularityKind::A(n) => write!(f, "A{n}"),
            SingularityKind::D(n) => write!(f, "D{n}"),
            SingularityKind::E(n) => write!(f, "E{n}"),
            SingularityKind::NonSimpleOrUnknown => write!(f, "non-simple-or-unknown"),
        }
    }
}

impl FromStr for SingularityKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s {
            "smooth" => return Ok(SingularityKind::Smooth),
            "non-simple-or-unknown" => return Ok(SingularityKind::NonSimpleOrUnknown),
            _ => {}
        }
        let (head, tail) = s.split_at(s.char_indices().nth(1).map_or(s.len(), |(i, _)| i));
        let n: u32 = tail.parse().map_err(|_| format!("bad singularity label `{s}`"))?;
        let k = match head {
            "A" if n >= 1 => SingularityKind::A(n),
            "D" if n >= 4 => SingularityKind::D(n),
            "E" if (6..=8).contains(&n) => SingularityKind::E(n),
            _ => return Err(format!("bad singularity label `{s}`")),
        };
        Ok(k)
    }
}

impl Serialize for SingularityKind {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SingularityKind {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Evidence behind a classification.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub nvars: usize,
    pub hessian_rank: usize,
    pub corank: usize,
    pub jet_order: u32,
    /// Residual germ after removing the Morse part, in `u1, u2, ...`.
    pub residual: String,
    /// Weights of the residual variables in the coordinates of `initial_part`.
    pub weights: Option<Vec<Rational>>,
    pub initial_part: Option<String>,
    /// Oracle value on the initial part; equals `prod(1/w - 1)` when nondegenerate.
    pub initial_milnor: Option<MilnorNumber>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingularityType {
    pub kind: SingularityKind,
    pub certificate: Certificate,
}

/// `prod(1/w_i - 1)`, the Milnor number of a nondegenerate quasi-homogeneous germ.
pub fn weighted_milnor(weights: &[Rational]) -> Option<Rational> {
    use crate::polyring::Ring;
    weights.iter().try_fold(Rational::one(), |acc, w| {
        w.inv().map(|iw| acc.mul(&iw.sub(&Rational::one())))
    })
}
