use crate::polyring::matrix::{complete_basis, kernel, rank, Matrix};
use crate::polyring::{indexed_vars, solve_implicit, Field, Poly, PolyError};

/// `g(P(u, v)) = h(u) + Q(v)` up to right equivalence, with `Q` nondegenerate.
#[derive(Clone, Debug)]
pub struct MorseSplit<F: Field> {
    /// Residual germ in `corank` variables `u1, ...`, exact through `jet_order`.
    pub residual: Poly<F>,
    pub hessian_rank: usize,
    /// Columns: kernel directions of the Hessian, then a complement.
    pub change: Matrix<F>,
}

impl<F: Field> MorseSplit<F> {
    pub fn corank(&self) -> usize {
        self.change.len() - self.hessian_rank
    }
}

/// Splitting lemma to order `n` for a germ with vanishing linear part.
pub fn morse_split<F: Field>(g: &Poly<F>, n: u32) -> Result<MorseSplit<F>, PolyError> {
    let dim = g.arity();
    let h = g.hessian_at_origin()?;
    let r = rank(&h);
    let ker = kernel(&h, dim);
    let comp = complete_basis(&ker, dim);
    let mut change: Matrix<F> = vec![vec![F::zero(); dim]; dim];
    for (j, v) in ker.iter().enumerate() {
        for i in 0..dim {
            change[i][j] = v[i].clone();
        }
    }
    for (j, &c) in comp.iter().enumerate() {
        change[c][ker.len() + j] = F::one();
    }
    let k = ker.len();
    let moved = g.truncate(n).linear_change(&change)?;
    let unknowns: Vec<usize> = (k..dim).collect();
    let eqs: Vec<Poly<F>> = unknowns.iter().map(|&v| moved.partial_derivative(v)).collect();
    let sol = solve_implicit(&eqs, &unknowns, n)?;
    let ring = moved.vars().clone();
    let subs: Vec<Poly<F>> = (0..dim)
        .map(|i| if i < k { Poly::var(&ring, i) } else { sol[i - k].clone() })
        .collect();
    let full = moved.substitute_truncated(&subs, n)?;
    let target = indexed_vars("u", 1..k + 1);
    let residual = full.restrict_vars(&(0..k).collect::<Vec<_>>(), &target)?;
    Ok(MorseSplit {
        residual,
        hessian_rank: r,
        change,
    })
}
