//! `Q(zeta)[r1, r2] / (r1^3 - a1, r2^3 - a2)`.
//!
//! When none of `a1, a2, a1*a2, a1*a2^2` is a cube in `Q(zeta)` this is a
//! field of degree 18 over `Q` and the nine monomials `r1^i r2^j`, `i, j < 3`,
//! form a basis over `Q(zeta)`, so zero testing is coefficientwise.
//! Use [`Radicands::new`] to check that condition for rational radicands.

use std::fmt;
use std::sync::Arc;

use super::scalar::{Field, HasZeta3, QZeta3, Rational, RationalAlgebra, Ring};

/// The pair `(a1, a2)` defining the extension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Radicands {
    pub a1: Rational,
    pub a2: Rational,
}

impl Radicands {
    /// Accepts the pair only if the extension has full degree 9 over `Q(zeta)`.
    pub fn new(a1: Rational, a2: Rational) -> Option<Arc<Self>> {
        let a1a2 = a1.mul(&a2);
        let a1a2a2 = a1a2.mul(&a2);
        let ok = [&a1, &a2, &a1a2, &a1a2a2]
            .iter()
            .all(|a| !a.is_zero() && a.cube_root().is_none());
        // A rational that is not a rational cube is not a cube in Q(zeta):
        // a cube root would generate a cubic subfield of a quadratic field.
        ok.then(|| Arc::new(Radicands { a1, a2 }))
    }

    /// Single radical `r1^3 = a`; `r2` is unused.
    pub fn single(a: Rational) -> Option<Arc<Self>> {
        if a.is_zero() || a.cube_root().is_some() {
            return None;
        }
        Some(Arc::new(Radicands {
            a1: a,
            a2: Rational::one(),
        }))
    }
}

/// Element `sum c[i][j] r1^i r2^j`.
#[derive(Clone)]
pub struct RadicalExt {
    c: [[QZeta3; 3]; 3],
    ctx: Option<Arc<Radicands>>,
}

impl RadicalExt {
    pub fn constant(q: QZeta3) -> Self {
        let mut e = RadicalExt::zero();
        e.c[0][0] = q;
        e
    }

    /// The generator `r1` (`k = 0`) or `r2` (`k = 1`).
    pub fn root(ctx: &Arc<Radicands>, k: usize) -> Self {
        let mut e = RadicalExt::zero();
        e.ctx = Some(ctx.clone());
        if k == 0 {
            e.c[1][0] = QZeta3::one();
        } else {
            e.c[0][1] = QZeta3::one();
        }
        e
    }

    pub fn coeff(&self, i: usize, j: usize) -> &QZeta3 {
        &self.c[i][j]
    }

    /// Returns the element as an element of `Q(zeta)` if it has no radical part.
    pub fn as_qzeta(&self) -> Option<QZeta3> {
        for i in 0..3 {
            for j in 0..3 {
                if (i, j) != (0, 0) && !self.c[i][j].is_zero() {
                    return None;
                }
            }
        }
        Some(self.c[0][0].clone())
    }

    fn merged_ctx(&self, rhs: &Self) -> Option<Arc<Radicands>> {
        match (&self.ctx, &rhs.ctx) {
            (Some(a), Some(b)) => {
                assert!(
                    Arc::ptr_eq(a, b) || a == b,
                    "elements of different radical extensions"
                );
                Some(a.clone())
            }
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        }
    }
}

impl PartialEq for RadicalExt {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c
    }
}

impl fmt::Display for RadicalExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in 0..3 {
            for j in 0..3 {
                let c = &self.c[i][j];
                if c.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                write!(f, "{c}")?;
                if i > 0 {
                    write!(f, "*r1^{i}")?;
                }
                if j > 0 {
                    write!(f, "*r2^{j}")?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for RadicalExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Ring for RadicalExt {
    fn zero() -> Self {
        RadicalExt {
            c: Default::default(),
            ctx: None,
        }
    }
    fn one() -> Self {
        RadicalExt::constant(QZeta3::one())
    }
    fn is_zero(&self) -> bool {
        self.c.iter().flatten().all(Ring::is_zero)
    }
    fn add(&self, rhs: &Self) -> Self {
        let mut out = RadicalExt::zero();
        out.ctx = self.merged_ctx(rhs);
        for i in 0..3 {
            for j in 0..3 {
                out.c[i][j] = self.c[i][j].add(&rhs.c[i][j]);
            }
        }
        out
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        let ctx = self.merged_ctx(rhs);
        let mut out = RadicalExt::zero();
        let (a1, a2) = match &ctx {
            Some(r) => (QZeta3::from_rational(&r.a1), QZeta3::from_rational(&r.a2)),
            None => (QZeta3::one(), QZeta3::one()),
        };
        for i in 0..3 {
            for j in 0..3 {
                if self.c[i][j].is_zero() {
                    continue;
                }
                for k in 0..3 {
                    for l in 0..3 {
                        if rhs.c[k][l].is_zero() {
                            continue;
                        }
                        let mut t = self.c[i][j].mul(&rhs.c[k][l]);
                        let (mut e1, mut e2) = (i + k, j + l);
                        if e1 >= 3 {
                            e1 -= 3;
                            t = t.mul(&a1);
                        }
                        if e2 >= 3 {
                            e2 -= 3;
                            t = t.mul(&a2);
                        }
                        out.c[e1][e2] = out.c[e1][e2].add(&t);
                    }
                }
            }
        }
        out.ctx = ctx;
        out
    }
    fn neg(&self) -> Self {
        let mut out = self.clone();
        for row in out.c.iter_mut() {
            for c in row.iter_mut() {
                *c = c.neg();
            }
        }
        out
    }
    fn from_int(n: i64) -> Self {
        RadicalExt::constant(QZeta3::from_int(n))
    }
}

impl RationalAlgebra for RadicalExt {
    fn from_rational(q: &Rational) -> Self {
        RadicalExt::constant(QZeta3::from_rational(q))
    }
}

impl HasZeta3 for RadicalExt {
    fn zeta3() -> Self {
        RadicalExt::constant(QZeta3::zeta3())
    }
}

/// Inverse of an element with no radical part. General inversion is not
/// needed by the geometric routines, which are division free.
impl RadicalExt {
    pub fn inv_scalar(&self) -> Option<Self> {
        self.as_qzeta()?.inv().map(RadicalExt::constant)
    }
}
