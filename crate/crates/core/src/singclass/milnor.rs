//! Milnor number by linear algebra in truncated local rings.
//!
//! For `D = 1, 2, ...` computes `q_D = dim k[[x]] / (J + m^D)` where `J` is
//! the Jacobian ideal. The sequence only increases, and stabilizes exactly
//! when `m^{D-1}` lies in `J + m^D`; by Nakayama this means `m^{D-1}` lies in
//! `J`, and then `mu = q_D`. This shares no code with the classifier.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::polyring::{Field, Poly};

pub const DEFAULT_MU_MAX: u32 = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum MilnorNumber {
    Finite { mu: u32 },
    /// No stabilization before the quotient dimension exceeded `bound`.
    Unbounded { bound: u32 },
}

impl MilnorNumber {
    pub fn finite(self) -> Option<u32> {
        match self {
            MilnorNumber::Finite { mu } => Some(mu),
            MilnorNumber::Unbounded { .. } => None,
        }
    }
}

impl std::fmt::Display for MilnorNumber {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MilnorNumber::Finite { mu } => write!(f, "{mu}"),
            MilnorNumber::Unbounded { bound } => write!(f, ">{bound}"),
        }
    }
}

/// All exponent vectors of total degree `< d`, lowest degree first.
fn monomials_below(n: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for deg in 0..d {
        let mut cur = vec![0u32; n];
        fill(&mut out, &mut cur, 0, deg);
    }
    out
}

fn fill(out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>, i: usize, left: u32) {
    if cur.is_empty() {
        if left == 0 {
            out.push(Vec::new());
        }
        return;
    }
    if i == cur.len() - 1 {
        cur[i] = left;
        out.push(cur.clone());
        cur[i] = 0;
        return;
    }
    for e in (0..=left).rev() {
        cur[i] = e;
        fill(out, cur, i + 1, left - e);
    }
    cur[i] = 0;
}

type Row<F> = Vec<(usize, F)>;

/// Subtract `c * pivot` from `row`; both sorted by column.
fn axpy<F: Field>(row: &Row<F>, c: &F, pivot: &Row<F>) -> Row<F> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j == pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_piv = i == row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_row {
            out.push(row[i].clone());
            i += 1;
        } else if take_piv {
            out.push((pivot[j].0, pivot[j].1.mul(c).neg()));
            j += 1;
        } else {
            let v = row[i].1.sub(&pivot[j].1.mul(c));
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// `dim k[x] / (J + m^d)` for the Jacobian ideal `J` of `g`.
pub fn local_quotient_dim<F: Field>(g: &Poly<F>, d: u32) -> usize {
    let n = g.arity();
    let cols = monomials_below(n, d);
    let index: HashMap<&[u32], usize> = cols.iter().enumerate().map(|(i, m)| (m.as_slice(), i)).collect();
    let partials: Vec<Poly<F>> = g.gradient().into_iter().map(|p| p.truncate(d.saturating_sub(1))).collect();
    let mut pivots: HashMap<usize, Row<F>> = HashMap::new();
    for m in &cols {
        let mdeg: u32 = m.iter().sum();
        for p in &partials {
            let mut row: Row<F> = Vec::new();
            for (mono, c) in p.terms() {
                if mono.degree() + mdeg >= d {
                    continue;
                }
                let e: Vec<u32> = mono.0.iter().zip(m).map(|(a, b)| a + b).collect();
                row.push((index[e.as_slice()], c.clone()));
            }
            row.sort_by_key(|(c, _)| *c);
            while let Some((lead, c)) = row.first().cloned() {
                match pivots.get(&lead) {
                    Some(piv) => row = axpy(&row, &c, piv),
                    None => {
                        let inv = c.inv().expect("nonzero lead");
                        let norm: Row<F> = row.iter().map(|(k, v)| (*k, v.mul(&inv))).collect();
                        pivots.insert(lead, norm);
                        break;
                    }
                }
            }
        }
    }
    cols.len() - pivots.len()
}

/// Milnor number of `g` at the origin, giving up once it exceeds `mu_max`.
pub fn milnor_number<F: Field>(g: &Poly<F>, mu_max: u32) -> MilnorNumber {
    let mut prev: Option<usize> = None;
    for d in 1..=mu_max + 2 {
        let q = local_quotient_dim(g, d);
        if q > mu_max as usize {
            return MilnorNumber::Unbounded { bound: mu_max };
        }
        if prev == Some(q) {
            return MilnorNumber::Finite { mu: q as u32 };
        }
        prev = Some(q);
    }
    // unreachable: a strictly increasing sequence passes mu_max by then
    MilnorNumber::Unbounded { bound: mu_max }
}
