//! Integral lattices: root-lattice builders, Smith normal form, discriminant
//! groups and invariant sublattices of finite-order isometries.

mod smith;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use smith::{bareiss_det, integer_kernel, smith_normal_form};

pub type IntMatrix = Vec<Vec<BigInt>>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LatticeError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

fn big(m: &[Vec<i64>]) -> IntMatrix {
    m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let (n, k, m) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    (0..n)
        .map(|i| (0..m).map(|j| (0..k).map(|l| &a[i][l] * &b[l][j]).sum()).collect())
        .collect()
}

fn transpose(a: &IntMatrix) -> IntMatrix {
    let m = a.first().map_or(0, Vec::len);
    (0..m).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

/// A lattice given by a symmetric nondegenerate Gram matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LatticeFile", into = "LatticeFile")]
pub struct IntegralLattice {
    gram: IntMatrix,
    labels: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct LatticeFile {
    labels: Vec<String>,
    gram: Vec<Vec<i64>>,
}

impl TryFrom<LatticeFile> for IntegralLattice {
    type Error = LatticeError;
    fn try_from(f: LatticeFile) -> Result<Self, LatticeError> {
        IntegralLattice::new(big(&f.gram), f.labels)
    }
}

impl From<IntegralLattice> for LatticeFile {
    fn from(l: IntegralLattice) -> Self {
        LatticeFile {
            gram: l
                .gram
                .iter()
                .map(|r| r.iter().map(|x| x.to_i64().expect("entry fits in i64")).collect())
                .collect(),
            labels: l.labels,
        }
    }
}

impl IntegralLattice {
    pub fn new(gram: IntMatrix, labels: Vec<String>) -> Result<Self, LatticeError> {
        let n = gram.len();
        if labels.len() != n || gram.iter().any(|r| r.len() != n) {
            return Err(LatticeError::Domain("gram must be square with one label per row".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(LatticeError::Domain("gram is not symmetric".into()));
                }
            }
        }
        if n > 0 && bareiss_det(&gram).is_zero() {
            return Err(LatticeError::Domain("degenerate gram matrix".into()));
        }
        Ok(IntegralLattice { gram, labels })
    }

    pub fn from_i64(gram: &[Vec<i64>], prefix: &str) -> Result<Self, LatticeError> {
        let labels = (1..=gram.len()).map(|i| format!("{prefix}{i}")).collect();
        Self::new(big(gram), labels)
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn rank(&self) -> usize {
        self.gram.len()
    }

    pub fn det(&self) -> BigInt {
        if self.gram.is_empty() {
            return BigInt::one();
        }
        bareiss_det(&self.gram)
    }

    /// Invariant factors of the Gram matrix other than 1.
    pub fn discriminant_group(&self) -> Vec<BigInt> {
        smith_normal_form(&self.gram)
            .into_iter()
            .map(|d| d.abs())
            .filter(|d| !d.is_one())
            .collect()
    }

    pub fn discriminant_order(&self) -> BigInt {
        self.discriminant_group().iter().product()
    }

    pub fn signature(&self) -> (usize, usize) {
        // symmetric elimination over Q
        use num_rational::BigRational;
        let n = self.rank();
        let mut m: Vec<Vec<BigRational>> = self
            .gram
            .iter()
            .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
            .collect();
        let (mut pos, mut neg) = (0, 0);
        let mut active: Vec<usize> = (0..n).collect();
        while !active.is_empty() {
            let piv = active.iter().copied().find(|&i| !m[i][i].is_zero());
            let k = match piv {
                Some(k) => k,
                None => {
                    // no diagonal pivot: combine two rows with a nonzero off-diagonal entry
                    let Some((a, b)) = active
                        .iter()
                        .flat_map(|&a| active.iter().map(move |&b| (a, b)))
                        .find(|&(a, b)| a != b && !m[a][b].is_zero())
                    else {
                        break;
                    };
                    for j in 0..n {
                        let v = m[b][j].clone();
                        m[a][j] += v;
                    }
                    for i in 0..n {
                        let v = m[i][b].clone();
                        m[i][a] += v;
                    }
                    a
                }
            };
            let p = m[k][k].clone();
            if p.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            active.retain(|&i| i != k);
            for &i in &active {
                let f = &m[i][k] / &p;
                for j in 0..n {
                    let v = &f * &m[k][j];
                    m[i][j] -= v;
                }
            }
            for &i in &active {
                m[k][i] = BigRational::zero();
                m[i][k] = BigRational::zero();
            }
        }
        (pos, neg)
    }
}

fn dynkin(n: usize, edges: &[(usize, usize)], prefix: &str) -> IntegralLattice {
    let mut g = vec![vec![0i64; n]; n];
    for (i, row) in g.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(a, b) in edges {
        g[a][b] = -1;
        g[b][a] = -1;
    }
    IntegralLattice::from_i64(&g, prefix).expect("root lattices are nondegenerate")
}

pub fn a(n: usize) -> Result<IntegralLattice, LatticeError> {
    if n < 1 {
        return Err(LatticeError::Domain("A_n needs n >= 1".into()));
    }
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Ok(dynkin(n, &edges, "a"))
}

pub fn d(n: usize) -> Result<IntegralLattice, LatticeError> {
    if n < 4 {
        return Err(LatticeError::Domain("D_n needs n >= 4".into()));
    }
    let mut edges: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
    edges.push((n - 3, n - 1));
    Ok(dynkin(n, &edges, "d"))
}

/// `E_n` with the branch node attached to the third node of the long chain.
pub fn e(n: usize) -> Result<IntegralLattice, LatticeError> {
    if !(6..=8).contains(&n) {
        return Err(LatticeError::Domain("E_n needs n in 6..=8".into()));
    }
    let mut edges: Vec<_> = (1..n - 1).map(|i| (i - 1, i)).collect();
    edges.push((2, n - 1));
    Ok(dynkin(n, &edges, "e"))
}

pub fn rank1(k: i64) -> Result<IntegralLattice, LatticeError> {
    if k == 0 {
        return Err(LatticeError::Domain("<0> is degenerate".into()));
    }
    IntegralLattice::from_i64(&[vec![k]], "h")
}

pub fn hyperbolic_u() -> IntegralLattice {
    IntegralLattice::from_i64(&[vec![0, 1], vec![1, 0]], "u").expect("unimodular")
}

pub fn twist(l: &IntegralLattice, m: i64) -> Result<IntegralLattice, LatticeError> {
    if m == 0 {
        return Err(LatticeError::Domain("twist by 0 is degenerate".into()));
    }
    let mb = BigInt::from(m);
    let g = l.gram.iter().map(|r| r.iter().map(|x| x * &mb).collect()).collect();
    IntegralLattice::new(g, l.labels.clone())
}

pub fn direct_sum(l1: &IntegralLattice, l2: &IntegralLattice) -> IntegralLattice {
    let (n1, n2) = (l1.rank(), l2.rank());
    let mut g = vec![vec![BigInt::zero(); n1 + n2]; n1 + n2];
    for i in 0..n1 {
        for j in 0..n1 {
            g[i][j] = l1.gram[i][j].clone();
        }
    }
    for i in 0..n2 {
        for j in 0..n2 {
            g[n1 + i][n1 + j] = l2.gram[i][j].clone();
        }
    }
    let mut labels = l1.labels.clone();
    labels.extend(l2.labels.iter().cloned());
    IntegralLattice { gram: g, labels }
}

/// An isometry `g` acting on coordinate columns: `g^T G g = G`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Isometry {
    pub matrix: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub claimed_order: Option<u32>,
}

pub const MAX_ORDER: u32 = 1000;

impl Isometry {
    pub fn new(matrix: Vec<Vec<i64>>) -> Self {
        Isometry { matrix, claimed_order: None }
    }

    pub fn identity(n: usize) -> Self {
        Isometry::new((0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect())
    }

    pub fn direct_sum(&self, other: &Isometry) -> Isometry {
        let (n1, n2) = (self.matrix.len(), other.matrix.len());
        let mut m = vec![vec![0; n1 + n2]; n1 + n2];
        for i in 0..n1 {
            m[i][..n1].copy_from_slice(&self.matrix[i]);
        }
        for i in 0..n2 {
            m[n1 + i][n1..].copy_from_slice(&other.matrix[i]);
        }
        Isometry::new(m)
    }

    fn big(&self) -> IntMatrix {
        big(&self.matrix)
    }

    pub fn preserves(&self, l: &IntegralLattice) -> bool {
        let g = self.big();
        g.len() == l.rank() && g.iter().all(|r| r.len() == l.rank()) && mat_mul(&mat_mul(&transpose(&g), &l.gram), &g) == l.gram
    }

    /// Least `n <= MAX_ORDER` with `g^n = 1`.
    pub fn order(&self) -> Option<u32> {
        let g = self.big();
        let id = identity(g.len());
        let mut p = g.clone();
        for n in 1..=MAX_ORDER {
            if p == id {
                return Some(n);
            }
            p = mat_mul(&p, &g);
        }
        None
    }
}

/// A sublattice given by basis vectors in the coordinates of the ambient lattice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sublattice {
    #[serde(serialize_with = "ser_matrix")]
    pub basis: IntMatrix,
    #[serde(serialize_with = "ser_matrix")]
    pub gram: IntMatrix,
}

fn ser_matrix<S: serde::Serializer>(m: &IntMatrix, s: S) -> Result<S::Ok, S::Error> {
    let rows: Vec<Vec<serde_json::Value>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| x.to_i64().map_or_else(|| x.to_string().into(), Into::into))
                .collect()
        })
        .collect();
    rows.serialize(s)
}

impl Sublattice {
    fn from_basis(l: &IntegralLattice, basis: IntMatrix) -> Self {
        let gram = if basis.is_empty() {
            Vec::new()
        } else {
            mat_mul(&mat_mul(&basis, &l.gram), &transpose(&basis))
        };
        Sublattice { basis, gram }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn lattice(&self) -> Result<IntegralLattice, LatticeError> {
        let labels = (1..=self.rank()).map(|i| format!("v{i}")).collect();
        IntegralLattice::new(self.gram.clone(), labels)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct InvariantDecomposition {
    pub invariant: Sublattice,
    pub coinvariant: Sublattice,
    pub order: u32,
}

/// Saturated fixed sublattice of `g` and its orthogonal complement.
pub fn invariant_sublattice(l: &IntegralLattice, g: &Isometry) -> Result<InvariantDecomposition, LatticeError> {
    if !g.preserves(l) {
        return Err(LatticeError::Precondition("matrix does not preserve the form".into()));
    }
    let order = g
        .order()
        .ok_or_else(|| LatticeError::Precondition(format!("isometry has no order <= {MAX_ORDER}")))?;
    if let Some(c) = g.claimed_order {
        if c != order {
            return Err(LatticeError::Precondition(format!("claimed order {c}, actual {order}")));
        }
    }
    let n = l.rank();
    let gm = g.big();
    let shifted: IntMatrix = (0..n)
        .map(|i| (0..n).map(|j| if i == j { &gm[i][j] - 1 } else { gm[i][j].clone() }).collect())
        .collect();
    let inv = integer_kernel(&shifted);
    let co = if inv.is_empty() {
        identity(n)
    } else {
        integer_kernel(&mat_mul(&inv, &l.gram))
    };
    Ok(InvariantDecomposition {
        invariant: Sublattice::from_basis(l, inv),
        coinvariant: Sublattice::from_basis(l, co),
        order,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct LatticeSummary {
    pub name: String,
    pub rank: usize,
    pub det: String,
    pub discriminant_group: Vec<String>,
    pub signature: (usize, usize),
    /// `|disc| = |det|`.
    pub disc_matches_det: bool,
}

impl LatticeSummary {
    pub fn of(name: &str, l: &IntegralLattice) -> Self {
        let disc = l.discriminant_group();
        let order: BigInt = disc.iter().product();
        LatticeSummary {
            name: name.into(),
            rank: l.rank(),
            det: l.det().to_string(),
            discriminant_group: disc.iter().map(|d| d.to_string()).collect(),
            signature: l.signature(),
            disc_matches_det: order == l.det().abs(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub i: u32,
    pub t: LatticeSummary,
    pub r: LatticeSummary,
    /// The same lattices with the root part twisted by `-1`.
    pub t_negative: LatticeSummary,
    pub r_negative: LatticeSummary,
    pub t_equals_r: bool,
    pub rank_compatible: bool,
    pub note: String,
}

impl TableRow {
    pub fn pass(&self) -> bool {
        let sums = [&self.t, &self.r, &self.t_negative, &self.r_negative];
        self.rank_compatible && sums.iter().all(|s| s.disc_matches_det)
    }
}

fn root_part(i: u32) -> Result<(IntegralLattice, IntegralLattice, &'static str, &'static str), LatticeError> {
    match i {
        2 => Ok((a(2)?, d(4)?, "A2", "D4")),
        3 => Ok((e(6)?, e(6)?, "E6", "E6")),
        4 => Ok((e(8)?, e(8)?, "E8", "E8")),
        _ => Err(LatticeError::Domain(format!("no table row for i = {i}"))),
    }
}

/// `T_i` and `R_i` as `<6> + root lattice`, with both sign choices for the root part.
pub fn verify_table_row(i: u32) -> Result<TableRow, LatticeError> {
    let (tr, rr, tn, rn) = root_part(i)?;
    let h = rank1(6)?;
    let t = direct_sum(&h, &tr);
    let r = direct_sum(&h, &rr);
    let tm = direct_sum(&h, &twist(&tr, -1)?);
    let rm = direct_sum(&h, &twist(&rr, -1)?);
    Ok(TableRow {
        i,
        t: LatticeSummary::of(&format!("<6>+{tn}"), &t),
        r: LatticeSummary::of(&format!("<6>+{rn}"), &r),
        t_negative: LatticeSummary::of(&format!("<6>+{tn}(-1)"), &tm),
        r_negative: LatticeSummary::of(&format!("<6>+{rn}(-1)"), &rm),
        t_equals_r: t == r,
        rank_compatible: t.rank() <= r.rank(),
        note: "the root part appears both positive and twisted by -1; both are reported".into(),
    })
}

pub fn verify_table() -> Vec<TableRow> {
    [2u32, 3, 4]
        .par_iter()
        .map(|&i| verify_table_row(i).expect("rows 2..=4 exist"))
        .collect()
}
