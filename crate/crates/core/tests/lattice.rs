use fanolab::lattice::{
    a, d, direct_sum, e, hyperbolic_u, integer_kernel, invariant_sublattice, rank1, smith_normal_form, twist,
    verify_table, verify_table_row, IntegralLattice, Isometry, LatticeError,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// Determinant by Gaussian elimination over Q.
fn det_oracle(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut det = BigRational::from_integer(BigInt::from(1));
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        det *= a[k][k].clone();
        for r in k + 1..n {
            let f = &a[r][k] / &a[k][k];
            for c in k..n {
                let v = &f * &a[k][c];
                a[r][c] -= v;
            }
        }
    }
    det.to_integer()
}

fn disc(l: &IntegralLattice) -> Vec<i64> {
    l.discriminant_group().iter().map(|x| x.try_into().unwrap()).collect()
}

#[test]
fn root_lattice_builders() {
    assert_eq!(a(2).unwrap().gram(), &vec![ints(&[2, -1]), ints(&[-1, 2])]);
    for n in 1..=8 {
        assert_eq!(a(n).unwrap().det(), BigInt::from(n as i64 + 1));
    }
    for n in 4..=9 {
        assert_eq!(d(n).unwrap().det(), BigInt::from(4));
    }
    assert_eq!(e(6).unwrap().det(), BigInt::from(3));
    assert_eq!(e(7).unwrap().det(), BigInt::from(2));
    assert_eq!(e(8).unwrap().det(), BigInt::from(1));
    for l in [a(5).unwrap(), d(6).unwrap(), e(7).unwrap(), e(8).unwrap()] {
        assert_eq!(l.det(), det_oracle(l.gram()));
        assert_eq!(l.signature(), (l.rank(), 0));
    }
    assert!(matches!(a(0), Err(LatticeError::Domain(_))));
    assert!(matches!(d(3), Err(LatticeError::Domain(_))));
    assert!(matches!(e(9), Err(LatticeError::Domain(_))));
    assert!(rank1(0).is_err());
    assert_eq!(hyperbolic_u().signature(), (1, 1));
    assert_eq!(hyperbolic_u().det(), BigInt::from(-1));
}

#[test]
fn twists_and_sums() {
    let d4 = d(4).unwrap();
    let neg = twist(&d4, -1).unwrap();
    for i in 0..4 {
        for j in 0..4 {
            assert_eq!(neg.gram()[i][j], -&d4.gram()[i][j]);
        }
    }
    assert_eq!(neg.signature(), (0, 4));
    let l = direct_sum(&rank1(6).unwrap(), &e(6).unwrap());
    assert_eq!(l.rank(), 7);
    assert!(IntegralLattice::from_i64(&[vec![1, 2], vec![3, 1]], "v").is_err());
    assert!(IntegralLattice::from_i64(&[vec![1, 1], vec![1, 1]], "v").is_err());
}

#[test]
fn discriminant_groups() {
    assert!(disc(&e(8).unwrap()).is_empty());
    assert_eq!(disc(&direct_sum(&rank1(6).unwrap(), &e(6).unwrap())), vec![3, 6]);
    assert_eq!(disc(&direct_sum(&rank1(6).unwrap(), &d(4).unwrap())), vec![2, 2, 6]);
    assert_eq!(disc(&direct_sum(&rank1(6).unwrap(), &a(2).unwrap())), vec![3, 6]);
    assert_eq!(disc(&d(5).unwrap()), vec![4]);
    assert_eq!(disc(&d(6).unwrap()), vec![2, 2]);
    assert_eq!(smith_normal_form(&vec![ints(&[2, 4, 4]), ints(&[-6, 6, 12]), ints(&[10, -4, -16])]), ints(&[2, 6, 12]));
}

#[test]
fn integer_kernels_are_saturated() {
    // 2x + 4y = 0 has kernel spanned by (2, -1), not (4, -2)
    let k = integer_kernel(&vec![ints(&[2, 4])]);
    assert_eq!(k.len(), 1);
    let v = &k[0];
    assert_eq!(&v[0] * 2 + &v[1] * 4, BigInt::zero());
    assert_eq!(v[0].abs(), BigInt::from(2));
    assert_eq!(v[1].abs(), BigInt::from(1));
}

fn rotation() -> Isometry {
    Isometry::new(vec![vec![0, -1], vec![1, -1]])
}

#[test]
fn invariant_sublattices() {
    let l = e(6).unwrap();
    let inv = invariant_sublattice(&l, &Isometry::identity(6)).unwrap();
    assert_eq!(inv.invariant.lattice().unwrap(), IntegralLattice::new(l.gram().clone(), inv.invariant.lattice().unwrap().labels().to_vec()).unwrap());
    assert_eq!(inv.coinvariant.rank(), 0);
    assert_eq!(inv.order, 1);

    let a2 = a(2).unwrap();
    let r = invariant_sublattice(&a2, &rotation()).unwrap();
    assert_eq!(r.order, 3);
    assert_eq!(r.invariant.rank(), 0);
    assert_eq!(r.coinvariant.rank(), 2);

    // g + id on A2 + D4
    let sum = direct_sum(&a2, &d(4).unwrap());
    let g = rotation().direct_sum(&Isometry::identity(4));
    let r = invariant_sublattice(&sum, &g).unwrap();
    assert_eq!(r.invariant.rank(), 4);
    assert_eq!(r.invariant.lattice().unwrap().det(), BigInt::from(4));
    assert_eq!(r.coinvariant.lattice().unwrap().det(), BigInt::from(3));

    let bad = Isometry::new(vec![vec![1, 1], vec![0, 1]]);
    assert!(matches!(invariant_sublattice(&a2, &bad), Err(LatticeError::Precondition(_))));
    let mut claimed = rotation();
    claimed.claimed_order = Some(6);
    assert!(invariant_sublattice(&a2, &claimed).is_err());
}

#[test]
fn order_three_without_fixed_vectors() {
    for k in 1..=3 {
        let mut l = a(2).unwrap();
        let mut g = rotation();
        for _ in 1..k {
            l = direct_sum(&l, &a(2).unwrap());
            g = g.direct_sum(&rotation());
        }
        let r = invariant_sublattice(&l, &g).unwrap();
        assert_eq!(r.invariant.rank(), 0);
        let co = r.coinvariant.lattice().unwrap();
        assert_eq!(co.rank(), 2 * k);
        let order: BigInt = co.discriminant_order();
        assert!((order % 3u32).is_zero());
    }
}

#[test]
fn table_rows() {
    let rows = verify_table();
    assert_eq!(rows.len(), 3);
    let r2 = verify_table_row(2).unwrap();
    assert_eq!((r2.t.rank, r2.r.rank), (3, 5));
    assert!(!r2.t_equals_r && r2.rank_compatible);
    let r3 = verify_table_row(3).unwrap();
    assert_eq!((r3.t.rank, r3.r.rank), (7, 7));
    assert!(r3.t_equals_r);
    let r4 = verify_table_row(4).unwrap();
    assert_eq!((r4.t.rank, r4.r.rank), (9, 9));
    assert_eq!(r4.t.discriminant_group, vec!["6"]);
    assert_eq!(r4.t.det, "6");
    assert_eq!(r4.t_negative.signature, (1, 8));
    for r in &rows {
        assert!(r.pass());
    }
    assert!(verify_table_row(5).is_err());
}

#[test]
fn lattice_json() {
    let l = direct_sum(&rank1(6).unwrap(), &a(2).unwrap());
    let text = serde_json::to_string(&l).unwrap();
    assert_eq!(text, r#"{"labels":["h1","a1","a2"],"gram":[[6,0,0],[0,2,-1],[0,-1,2]]}"#);
    assert_eq!(serde_json::from_str::<IntegralLattice>(&text).unwrap(), l);
    assert!(serde_json::from_str::<IntegralLattice>(r#"{"labels":["a","b"],"gram":[[1,1],[1,1]]}"#).is_err());
    let g: Isometry = serde_json::from_str(r#"{"matrix":[[0,-1],[1,-1]],"claimed_order":3}"#).unwrap();
    assert_eq!(invariant_sublattice(&a(2).unwrap(), &g).unwrap().order, 3);
}

fn small_lattice() -> impl Strategy<Value = IntegralLattice> {
    (1usize..=5)
        .prop_flat_map(|n| prop::collection::vec(-4i64..=4, n * (n + 1) / 2).prop_map(move |v| (n, v)))
        .prop_filter_map("degenerate", |(n, v)| {
            let mut g = vec![vec![0i64; n]; n];
            let mut it = v.into_iter();
            for i in 0..n {
                for j in i..n {
                    let x = it.next().unwrap();
                    g[i][j] = x;
                    g[j][i] = x;
                }
            }
            IntegralLattice::from_i64(&g, "b").ok()
        })
}

/// Block permutations of `L + L + L` and sign changes.
fn isometry_of(l: &IntegralLattice, kind: u8) -> (IntegralLattice, Isometry) {
    let n = l.rank();
    match kind {
        0 => {
            let m = (0..n).map(|i| (0..n).map(|j| if i == j { -1 } else { 0 }).collect()).collect();
            (l.clone(), Isometry::new(m))
        }
        1 => {
            let big = direct_sum(l, l);
            let m = (0..2 * n)
                .map(|i| (0..2 * n).map(|j| i64::from((i + n) % (2 * n) == j)).collect())
                .collect();
            (big, Isometry::new(m))
        }
        _ => {
            let big = direct_sum(&direct_sum(l, l), l);
            let m = (0..3 * n)
                .map(|i| (0..3 * n).map(|j| i64::from((i + n) % (3 * n) == j)).collect())
                .collect();
            (big, Isometry::new(m))
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn disc_order_is_det(l in small_lattice()) {
        prop_assert_eq!(l.det(), det_oracle(l.gram()));
        prop_assert_eq!(l.discriminant_order(), l.det().abs());
        let f = smith_normal_form(l.gram());
        for w in f.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn invariant_plus_coinvariant(l in small_lattice(), kind in 0u8..3) {
        let (big, g) = isometry_of(&l, kind);
        prop_assert!(g.preserves(&big));
        let r = invariant_sublattice(&big, &g).unwrap();
        prop_assert_eq!(r.invariant.rank() + r.coinvariant.rank(), big.rank());
        for u in &r.invariant.basis {
            for v in &r.coinvariant.basis {
                let gu: Vec<BigInt> = (0..big.rank())
                    .map(|j| (0..big.rank()).map(|i| &u[i] * &big.gram()[i][j]).sum())
                    .collect();
                let dot: BigInt = gu.iter().zip(v).map(|(a, b)| a * b).sum();
                prop_assert!(dot.is_zero());
            }
        }
        prop_assert_eq!(r.order, [2, 2, 3][kind as usize]);
    }
}
