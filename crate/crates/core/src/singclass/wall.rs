//! Singularities of the surface of lines through a double point.
//!
//! For a cubic hypersurface with an isolated singular point of type `T`, the
//! cone of lines through the point is a complete intersection whose
//! singularities form the multiset `T^`.

use serde::Serialize;

use super::{SingError, SingularityKind};

/// The multiset `T^`, sorted.
pub fn wall_table(t: SingularityKind) -> Result<Vec<SingularityKind>, SingError> {
    use SingularityKind::*;
    let out = match t.normalized() {
        A(1) | A(2) => Vec::new(),
        A(n) => vec![A(n - 2).normalized()],
        D(4) => vec![A(1); 3],
        D(n) => {
            let mut v = vec![A(1), D(n - 2).normalized()];
            v.sort();
            v
        }
        E(6) => vec![A(5)],
        E(7) => vec![D(6)],
        E(8) => vec![E(7)],
        other => return Err(SingError::NotSimple(other.to_string())),
    };
    Ok(out)
}

/// `3A1`, `A1+A3`, or `smooth` for the empty multiset.
pub fn format_multiset(m: &[SingularityKind]) -> String {
    if m.is_empty() {
        return "smooth".into();
    }
    let mut sorted = m.to_vec();
    sorted.sort();
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let j = (i..sorted.len()).find(|&j| sorted[j] != sorted[i]).unwrap_or(sorted.len());
        let n = j - i;
        parts.push(if n == 1 {
            sorted[i].to_string()
        } else {
            format!("{n}{}", sorted[i])
        });
        i = j;
    }
    parts.join("+")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WallRow {
    pub t: String,
    pub t_hat: String,
    /// Concrete instances of the row checked against [`wall_table`].
    pub checked: Vec<(SingularityKind, Vec<SingularityKind>)>,
}

/// The eight rows of the table, each with the range of `n` used to check it.
pub fn wall_rows(max_n: u32) -> Vec<WallRow> {
    use SingularityKind::*;
    let row = |t: &str, th: &str, ks: Vec<SingularityKind>| WallRow {
        t: t.into(),
        t_hat: th.into(),
        checked: ks.into_iter().map(|k| (k, wall_table(k).expect("simple"))).collect(),
    };
    vec![
        row("A1", "smooth", vec![A(1)]),
        row("A2", "smooth", vec![A(2)]),
        row("A_n, n>=3", "A_{n-2}", (3..=max_n).map(A).collect()),
        row("D4", "3A1", vec![D(4)]),
        row("D_n, n>=5", "A1+D_{n-2}", (5..=max_n).map(D).collect()),
        row("E6", "A5", vec![E(6)]),
        row("E7", "D6", vec![E(7)]),
        row("E8", "E7", vec![E(8)]),
    ]
}
