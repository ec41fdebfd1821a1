//! Integer partitions and rectangle combinatorics indexing Schubert bases.

use serde::{Deserialize, Serialize};
use std::fmt;

/// Partition with weakly decreasing positive parts; `()` is the empty partition.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

/// A `rows × cols` bounding rectangle for partitions.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Rectangle {
    pub rows: u32,
    pub cols: u32,
}

impl Partition {
    /// Builds a partition; trailing zeros are stripped. Panics if parts increase.
    pub fn new(parts: impl Into<Vec<u32>>) -> Self {
        let mut parts = parts.into();
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "partition parts must be weakly decreasing: {parts:?}"
        );
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of boxes `|λ|`.
    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `i`-th part (0-based), zero beyond the last row.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn fits_in(&self, rect: Rectangle) -> bool {
        self.len() as u32 <= rect.rows && self.part(0) <= rect.cols
    }

    /// Diagram containment: every row of `other` fits inside the same row of `self`.
    pub fn contains(&self, other: &Partition) -> bool {
        (0..other.len()).all(|i| self.part(i) >= other.part(i))
    }

    /// Complement in `rect`, rotated 180°. Panics unless `self` fits in `rect`.
    pub fn dual_in_rectangle(&self, rect: Rectangle) -> Partition {
        assert!(self.fits_in(rect), "{self} does not fit in {rect:?}");
        let parts: Vec<u32> = (0..rect.rows)
            .rev()
            .map(|i| rect.cols - self.part(i as usize))
            .collect();
        Partition::new(parts)
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = String;
    fn try_from(parts: Vec<u32>) -> Result<Self, String> {
        if !parts.windows(2).all(|w| w[0] >= w[1]) {
            return Err(format!("parts not weakly decreasing: {parts:?}"));
        }
        Ok(Partition::new(parts))
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}

// Canonical table order: by weight ascending, ties by reverse-lexicographic
// comparison (the partition whose first differing part is larger comes first).
impl Ord for Partition {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All partitions fitting in `rect`, in canonical order.
pub fn partitions_in_rectangle(rect: Rectangle) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut stack = vec![Vec::new()];
    while let Some(cur) = stack.pop() {
        if cur.len() as u32 <= rect.rows {
            let bound = cur.last().copied().unwrap_or(rect.cols);
            out.push(Partition::new(cur.clone()));
            if (cur.len() as u32) < rect.rows {
                for next in 1..=bound {
                    let mut ext = cur.clone();
                    ext.push(next);
                    stack.push(ext);
                }
            }
        }
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn canonical_order_two_by_three() {
        let rect = Rectangle { rows: 2, cols: 3 };
        let got = partitions_in_rectangle(rect);
        let want: Vec<Partition> = [
            vec![],
            vec![1],
            vec![2],
            vec![1, 1],
            vec![3],
            vec![2, 1],
            vec![3, 1],
            vec![2, 2],
            vec![3, 2],
            vec![3, 3],
        ]
        .into_iter()
        .map(Partition::new)
        .collect();
        assert_eq!(got, want);
    }

    #[test]
    fn rectangle_counts_are_binomial() {
        // #partitions in a k×m rectangle = C(k+m, k)
        let count = |k, m| partitions_in_rectangle(Rectangle { rows: k, cols: m }).len();
        assert_eq!(count(2, 3), 10);
        assert_eq!(count(2, 4), 15);
        assert_eq!(count(3, 5), 56);
        assert_eq!(count(1, 6), 7);
    }

    #[test]
    fn dual_examples() {
        let rect = Rectangle { rows: 2, cols: 3 };
        assert_eq!(Partition::empty().dual_in_rectangle(rect), p(&[3, 3]));
        assert_eq!(p(&[3, 1]).dual_in_rectangle(rect), p(&[2]));
        assert_eq!(p(&[2]).dual_in_rectangle(rect), p(&[3, 1]));
    }

    #[test]
    fn containment_and_fit() {
        assert!(p(&[3, 1]).contains(&p(&[2, 1])));
        assert!(!p(&[2, 2]).contains(&p(&[3])));
        assert!(p(&[3, 3]).fits_in(Rectangle { rows: 2, cols: 3 }));
        assert!(!p(&[3, 3, 1]).fits_in(Rectangle { rows: 2, cols: 3 }));
    }

    #[test]
    fn display_labels() {
        assert_eq!(p(&[3, 1]).to_string(), "(3,1)");
        assert_eq!(Partition::empty().to_string(), "()");
    }

    #[test]
    fn json_round_trip_rejects_bad_input() {
        let back: Partition = serde_json::from_str("[3,1]").unwrap();
        assert_eq!(back, p(&[3, 1]));
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
    }

    proptest! {
        #[test]
        fn dual_is_an_involution(rows in 1u32..5, cols in 1u32..6, seed in 0usize..1000) {
            let rect = Rectangle { rows, cols };
            let all = partitions_in_rectangle(rect);
            let lam = &all[seed % all.len()];
            prop_assert_eq!(&lam.dual_in_rectangle(rect).dual_in_rectangle(rect), lam);
        }

        #[test]
        fn dual_complements_weight(rows in 1u32..5, cols in 1u32..6, seed in 0usize..1000) {
            let rect = Rectangle { rows, cols };
            let all = partitions_in_rectangle(rect);
            let lam = &all[seed % all.len()];
            prop_assert_eq!(lam.weight() + lam.dual_in_rectangle(rect).weight(), rows * cols);
        }
    }
}
