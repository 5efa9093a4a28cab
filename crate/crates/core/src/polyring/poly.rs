use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::matrix::{det, Matrix};
use super::scalar::{Field, Rational, Ring};
use super::PolyError;

/// Exponent vector. Ordered by total degree, then lexicographically with
/// the first variable largest.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, rhs: &Monomial) -> bool {
        self.0.iter().zip(&rhs.0).all(|(a, b)| a <= b)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

/// Shared variable names. Names are labels only; two polynomials are
/// compatible when their arities agree.
pub type Vars = Arc<[String]>;

pub fn vars<S: AsRef<str>>(names: &[S]) -> Vars {
    names.iter().map(|s| s.as_ref().to_string()).collect::<Vec<_>>().into()
}

/// `x0, ..., x{n-1}` style names.
pub fn indexed_vars(prefix: &str, range: std::ops::Range<usize>) -> Vars {
    range.map(|i| format!("{prefix}{i}")).collect::<Vec<_>>().into()
}

/// Sparse multivariate polynomial with no stored zero coefficients.
#[derive(Clone)]
pub struct Poly<R> {
    vars: Vars,
    terms: BTreeMap<Monomial, R>,
}

impl<R: Ring> PartialEq for Poly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.arity() == other.arity() && self.terms == other.terms
    }
}

impl<R: Ring> Poly<R> {
    pub fn zero(vars: &Vars) -> Self {
        Poly {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Vars, c: R) -> Self {
        let mut p = Poly::zero(vars);
        p.add_term(Monomial::one(vars.len()), c);
        p
    }

    pub fn one(vars: &Vars) -> Self {
        Poly::constant(vars, R::one())
    }

    pub fn var(vars: &Vars, i: usize) -> Self {
        assert!(i < vars.len(), "variable index out of range");
        let mut p = Poly::zero(vars);
        p.add_term(Monomial::var(vars.len(), i), R::one());
        p
    }

    pub fn monomial(vars: &Vars, exps: Vec<u32>, c: R) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent length");
        let mut p = Poly::zero(vars);
        p.add_term(Monomial(exps), c);
        p
    }

    pub fn from_terms(vars: &Vars, terms: impl IntoIterator<Item = (Vec<u32>, R)>) -> Self {
        let mut p = Poly::zero(vars);
        for (e, c) in terms {
            assert_eq!(e.len(), vars.len(), "exponent length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = old.add(&c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &R)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> R {
        self.terms.get(&Monomial(exps.to_vec())).cloned().unwrap_or_else(R::zero)
    }

    pub fn constant_term(&self) -> R {
        self.coeff(&vec![0; self.arity()])
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// Lowest total degree of a term; `None` for the zero polynomial.
    pub fn order(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    pub fn degree_in(&self, i: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.0[i]).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.order() == self.degree()
    }

    pub fn homogeneous_component(&self, d: u32) -> Self {
        self.filter(|m| m.degree() == d)
    }

    /// Drops all terms of total degree above `n`.
    pub fn truncate(&self, n: u32) -> Self {
        self.filter(|m| m.degree() <= n)
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> Self {
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn uses_var(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] > 0)
    }

    fn check_arity(&self, rhs: &Self) -> Result<(), PolyError> {
        if self.arity() != rhs.arity() {
            return Err(PolyError::Arity {
                left: self.arity(),
                right: rhs.arity(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, PolyError> {
        self.check_arity(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self, PolyError> {
        self.check_arity(rhs)?;
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.neg());
        }
        Ok(out)
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, PolyError> {
        self.check_arity(rhs)?;
        Ok(self.mul_bounded(rhs, None))
    }

    /// Product with all terms of degree above `n` discarded.
    pub fn mul_truncated(&self, rhs: &Self, n: u32) -> Self {
        assert_eq!(self.arity(), rhs.arity(), "arity mismatch");
        self.mul_bounded(rhs, Some(n))
    }

    fn mul_bounded(&self, rhs: &Self, n: Option<u32>) -> Self {
        let mut out = Poly::zero(&self.vars);
        for (m1, c1) in &self.terms {
            let d1 = m1.degree();
            for (m2, c2) in &rhs.terms {
                if let Some(n) = n {
                    if d1 + m2.degree() > n {
                        // rhs terms are sorted by degree
                        break;
                    }
                }
                out.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &R) -> Self {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        self.map_coeffs(|x| x.mul(c))
    }

    pub fn pow(&self, e: u32) -> Self {
        self.pow_bounded(e, None)
    }

    fn pow_bounded(&self, mut e: u32, n: Option<u32>) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_bounded(&base, n);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_bounded(&base, n);
            }
        }
        acc
    }

    /// Multiplies by the monomial `x^exps`.
    pub fn mul_monomial(&self, exps: &[u32]) -> Self {
        let m = Monomial(exps.to_vec());
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.mul(&m), c.clone())).collect(),
        }
    }

    /// Exact division by `x_i^k`; `None` if some term is not divisible.
    pub fn div_var_power(&self, i: usize, k: u32) -> Option<Self> {
        let mut out = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            if m.0[i] < k {
                return None;
            }
            let mut e = m.0.clone();
            e[i] -= k;
            out.terms.insert(Monomial(e), c.clone());
        }
        Some(out)
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        let mut out = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    pub fn try_map_coeffs<S: Ring, E>(&self, f: impl Fn(&R) -> Result<S, E>) -> Result<Poly<S>, E> {
        let mut out = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn eval(&self, point: &[R]) -> R {
        assert_eq!(point.len(), self.arity(), "point dimension");
        let mut acc = R::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = t.mul(&x.pow(e));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Composition `p(s_0, ..., s_{n-1})`; all `s_i` share one target ring.
    pub fn substitute(&self, subs: &[Poly<R>]) -> Result<Poly<R>, PolyError> {
        self.substitute_bounded(subs, None)
    }

    /// Composition with every intermediate product truncated above degree `n`.
    /// Exact through degree `n` when each substitute has no constant term.
    pub fn substitute_truncated(&self, subs: &[Poly<R>], n: u32) -> Result<Poly<R>, PolyError> {
        self.substitute_bounded(subs, Some(n))
    }

    fn substitute_bounded(&self, subs: &[Poly<R>], n: Option<u32>) -> Result<Poly<R>, PolyError> {
        if subs.len() != self.arity() {
            return Err(PolyError::Arity {
                left: self.arity(),
                right: subs.len(),
            });
        }
        let target = match subs.first() {
            Some(s) => s.vars.clone(),
            None => return Ok(self.clone()),
        };
        for s in subs {
            if s.arity() != target.len() {
                return Err(PolyError::Arity {
                    left: target.len(),
                    right: s.arity(),
                });
            }
        }
        let max_exp: Vec<u32> = (0..self.arity())
            .map(|i| self.degree_in(i).unwrap_or(0))
            .collect();
        let powers: Vec<Vec<Poly<R>>> = subs
            .iter()
            .zip(&max_exp)
            .map(|(s, &k)| {
                let mut v = vec![Poly::one(&target)];
                for e in 1..=k as usize {
                    let next = v[e - 1].mul_bounded(s, n);
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = Poly::zero(&target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul_bounded(&powers[i][e as usize], n);
                    if t.is_zero() {
                        break;
                    }
                }
            }
            for (k, v) in t.terms {
                out.add_term(k, v);
            }
        }
        Ok(out)
    }

    /// Same polynomial in a ring with different names.
    pub fn with_vars(&self, vars: &Vars) -> Result<Self, PolyError> {
        if vars.len() != self.arity() {
            return Err(PolyError::Arity {
                left: self.arity(),
                right: vars.len(),
            });
        }
        Ok(Poly {
            vars: vars.clone(),
            terms: self.terms.clone(),
        })
    }

    /// Re-indexes variables: variable `i` of `self` becomes `map[i]` in `target`.
    pub fn embed(&self, target: &Vars, map: &[usize]) -> Self {
        assert_eq!(map.len(), self.arity(), "embedding length");
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &k) in m.0.iter().enumerate() {
                e[map[i]] += k;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Restricts to the variables `keep`; fails if another variable occurs.
    pub fn restrict_vars(&self, keep: &[usize], target: &Vars) -> Result<Self, PolyError> {
        assert_eq!(keep.len(), target.len(), "restriction length");
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 && !keep.contains(&i) {
                    return Err(PolyError::Domain(format!(
                        "variable {} occurs but is not kept",
                        self.vars[i]
                    )));
                }
            }
            out.add_term(Monomial(keep.iter().map(|&i| m.0[i]).collect()), c.clone());
        }
        Ok(out)
    }

    /// Sets the variables in `idx` to the given constants, keeping arity.
    pub fn specialize(&self, assign: &[(usize, R)]) -> Self {
        let mut out = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let mut t = c.clone();
            for (i, v) in assign {
                let k = e[*i];
                if k > 0 {
                    t = t.mul(&v.pow(k));
                    e[*i] = 0;
                }
            }
            out.add_term(Monomial(e), t);
        }
        out
    }

    /// Part of bidegree `(i, j)` in the variable groups `g1`, `g2`.
    /// Variables in neither group are treated as coefficients.
    pub fn bigraded_component(&self, g1: &[usize], g2: &[usize], i: u32, j: u32) -> Self {
        self.filter(|m| {
            let d1: u32 = g1.iter().map(|&k| m.0[k]).sum();
            let d2: u32 = g2.iter().map(|&k| m.0[k]).sum();
            d1 == i && d2 == j
        })
    }

    pub fn partial_derivative(&self, i: usize) -> Self {
        let mut out = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut n = m.0.clone();
            n[i] -= 1;
            out.add_term(Monomial(n), c.mul(&R::from_int(e as i64)));
        }
        out
    }

    pub fn gradient(&self) -> Vec<Self> {
        (0..self.arity()).map(|i| self.partial_derivative(i)).collect()
    }

    /// Coefficient of `x_i^k` as a polynomial in the remaining variables.
    pub fn coefficient_of_var_power(&self, i: usize, k: u32) -> Self {
        let mut out = Poly::zero(&self.vars);
        for (m, c) in &self.terms {
            if m.0[i] == k {
                let mut e = m.0.clone();
                e[i] = 0;
                out.add_term(Monomial(e), c.clone());
            }
        }
        out
    }

    /// The quadratic part as a symmetric matrix `H` with `q(x) = x^T H x / 2`.
    pub fn hessian_at_origin(&self) -> Result<Matrix<R>, PolyError> {
        if self.order().map_or(false, |d| d < 2) {
            return Err(PolyError::Domain(
                "polynomial has a constant or linear term".into(),
            ));
        }
        Ok(self.quadratic_matrix())
    }

    /// Symmetric matrix of the degree-2 part, `H_ij = d^2 p / dx_i dx_j (0)`.
    pub fn quadratic_matrix(&self) -> Matrix<R> {
        let n = self.arity();
        let mut h = vec![vec![R::zero(); n]; n];
        for (m, c) in &self.terms {
            if m.degree() != 2 {
                continue;
            }
            let idx: Vec<usize> = (0..n).filter(|&k| m.0[k] > 0).collect();
            if idx.len() == 1 {
                let k = idx[0];
                h[k][k] = c.add(c);
            } else {
                h[idx[0]][idx[1]] = c.clone();
                h[idx[1]][idx[0]] = c.clone();
            }
        }
        h
    }

    /// Linear form `sum c_i x_i` from its coefficients.
    pub fn linear_form(vars: &Vars, coeffs: &[R]) -> Self {
        let mut p = Poly::zero(vars);
        for (i, c) in coeffs.iter().enumerate() {
            p.add_term(Monomial::var(vars.len(), i), c.clone());
        }
        p
    }

    /// Coefficients of the linear part.
    pub fn linear_coeffs(&self) -> Vec<R> {
        (0..self.arity())
            .map(|i| self.coeff(&Monomial::var(self.arity(), i).0))
            .collect()
    }

    /// `p(M x)`.
    pub fn linear_change_unchecked(&self, m: &Matrix<R>) -> Self {
        let subs: Vec<Poly<R>> = m.iter().map(|row| Poly::linear_form(&self.vars, row)).collect();
        self.substitute(&subs).expect("square matrix of matching size")
    }
}

impl<F: Field> Poly<F> {
    /// `p(M x)` for invertible `M`.
    pub fn linear_change(&self, m: &Matrix<F>) -> Result<Self, PolyError> {
        let n = self.arity();
        if m.len() != n || m.iter().any(|r| r.len() != n) {
            return Err(PolyError::Domain(format!("matrix must be {n}x{n}")));
        }
        if det(m).is_zero() {
            return Err(PolyError::Domain("singular matrix".into()));
        }
        Ok(self.linear_change_unchecked(m))
    }

    /// Rank of the Hessian at the origin; errors on constant or linear terms.
    pub fn hessian_rank_at_origin(&self) -> Result<usize, PolyError> {
        Ok(super::matrix::rank(&self.hessian_at_origin()?))
    }

    /// Moves `point` to the origin: `p(x + point)`.
    pub fn translate(&self, point: &[F]) -> Self {
        let subs: Vec<Poly<F>> = (0..self.arity())
            .map(|i| {
                Poly::var(&self.vars, i).try_add(&Poly::constant(&self.vars, point[i].clone())).unwrap()
            })
            .collect();
        self.substitute(&subs).unwrap()
    }
}

impl<R: Ring> Poly<R> {
    /// Minimal weighted degree and the part attaining it.
    pub fn weighted_initial_part(&self, w: &[Rational]) -> Result<(Rational, Self), PolyError> {
        if w.len() != self.arity() {
            return Err(PolyError::Arity {
                left: self.arity(),
                right: w.len(),
            });
        }
        if self.is_zero() {
            return Err(PolyError::Domain("zero polynomial has no initial part".into()));
        }
        let wdeg = |m: &Monomial| {
            m.0.iter()
                .zip(w)
                .fold(Rational::zero(), |acc, (&e, wi)| acc.add(&wi.mul(&Rational::from_int(e as i64))))
        };
        let d = self.terms.keys().map(wdeg).min().expect("nonzero");
        let part = self.filter(|m| wdeg(m) == d);
        Ok((d, part))
    }

    /// Weighted degree of every term is strictly above `d`.
    pub fn weighted_order_exceeds(&self, w: &[Rational], d: &Rational) -> bool {
        self.terms.keys().all(|m| {
            let s = m
                .0
                .iter()
                .zip(w)
                .fold(Rational::zero(), |acc, (&e, wi)| acc.add(&wi.mul(&Rational::from_int(e as i64))));
            &s > d
        })
    }
}

impl<R: Ring> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let s = c.to_string();
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) if !rest.contains(['+', ' ']) => (true, rest.to_string()),
                _ => (false, s),
            };
            let body = if body.contains(['+', '-', ' ']) && !body.starts_with('(') {
                format!("({body})")
            } else {
                body
            };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{}", self.vars[i], e)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{body}")?;
            } else if body == "1" {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", body, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl<R: Ring> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.vars.join(","), self)
    }
}

impl<'a, R: Ring> Add for &'a Poly<R> {
    type Output = Poly<R>;
    fn add(self, rhs: Self) -> Poly<R> {
        self.try_add(rhs).expect("arity mismatch")
    }
}

impl<'a, R: Ring> Sub for &'a Poly<R> {
    type Output = Poly<R>;
    fn sub(self, rhs: Self) -> Poly<R> {
        self.try_sub(rhs).expect("arity mismatch")
    }
}

impl<'a, R: Ring> Mul for &'a Poly<R> {
    type Output = Poly<R>;
    fn mul(self, rhs: Self) -> Poly<R> {
        self.try_mul(rhs).expect("arity mismatch")
    }
}

impl<'a, R: Ring> Neg for &'a Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        self.map_coeffs(|c| c.neg())
    }
}

impl<R: Ring> Add for Poly<R> {
    type Output = Poly<R>;
    fn add(self, rhs: Self) -> Poly<R> {
        &self + &rhs
    }
}

impl<R: Ring> Sub for Poly<R> {
    type Output = Poly<R>;
    fn sub(self, rhs: Self) -> Poly<R> {
        &self - &rhs
    }
}

impl<R: Ring> Mul for Poly<R> {
    type Output = Poly<R>;
    fn mul(self, rhs: Self) -> Poly<R> {
        &self * &rhs
    }
}

impl<R: Ring> Neg for Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        -&self
    }
}
