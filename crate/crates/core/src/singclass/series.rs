//! Univariate power series truncated to a fixed length.

use crate::polyring::Field;

#[derive(Clone, Debug, PartialEq)]
pub struct Series<F> {
    pub c: Vec<F>,
}

impl<F: Field> Series<F> {
    pub fn zero(len: usize) -> Self {
        Series { c: vec![F::zero(); len] }
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn add(&self, o: &Self) -> Self {
        Series {
            c: self.c.iter().zip(&o.c).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, k: &F) -> Self {
        Series {
            c: self.c.iter().map(|a| a.mul(k)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.len();
        let mut out = Series::<F>::zero(n);
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate().take(n - i) {
                out.c[i + j] = out.c[i + j].add(&a.mul(b));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Series::zero(self.len());
        acc.c[0] = F::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn order(&self) -> Option<usize> {
        self.c.iter().position(|a| !a.is_zero())
    }

    /// Division by `y`, dropping the constant term; the top coefficient becomes unknown (zero).
    pub fn shift_down(&self) -> Self {
        let mut c: Vec<F> = self.c[1..].to_vec();
        c.push(F::zero());
        Series { c }
    }

    /// Inverse of a unit.
    pub fn inv(&self) -> Option<Self> {
        let n = self.len();
        let a0 = self.c[0].inv()?;
        let mut out = Series::<F>::zero(n);
        out.c[0] = a0.clone();
        for k in 1..n {
            let mut s = F::zero();
            for j in 1..=k {
                s = s.add(&self.c[j].mul(&out.c[k - j]));
            }
            out.c[k] = s.mul(&a0).neg();
        }
        Some(out)
    }
}
