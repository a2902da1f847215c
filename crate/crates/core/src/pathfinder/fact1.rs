//! The Dirac-style crossing-chord index search.
//!
//! Given `x_0 … x_{m−1}`, `y_1 … y_m`, two sets of undirected pairs `F0`,
//! `Fm` and an offset `ℓ`, find an index `i ∈ [ℓ, m]` with `x_0 y_i ∈ F0` and
//! `x_{i−ℓ} y_m ∈ Fm`. Such an index always exists once
//! `d_F0(x_0, Y) + d_Fm(y_m, X) ≥ m + ℓ`.

use std::collections::BTreeSet;

use thiserror::Error;

/// Unordered vertex pair, stored as `(min, max)`.
pub type Pair = (usize, usize);

pub fn pair(u: usize, v: usize) -> Pair {
    (u.min(v), u.max(v))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Fact1Error {
    #[error("x and y sequences must both have length m ≥ 1 (got {x} and {y})")]
    LengthMismatch { x: usize, y: usize },
    #[error("offset ℓ = {ell} is outside 1..={m}")]
    OffsetOutOfRange { ell: usize, m: usize },
    #[error("pair ({0}, {1}) has an endpoint outside X ∪ Y")]
    ForeignPair(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fact1Instance {
    x_seq: Vec<usize>,
    y_seq: Vec<usize>,
    f0: BTreeSet<Pair>,
    fm: BTreeSet<Pair>,
    ell: usize,
}

impl Fact1Instance {
    /// `x_seq` holds `x_0 … x_{m−1}` and `y_seq` holds `y_1 … y_m`.
    pub fn new(
        x_seq: Vec<usize>,
        y_seq: Vec<usize>,
        f0: impl IntoIterator<Item = Pair>,
        fm: impl IntoIterator<Item = Pair>,
        ell: usize,
    ) -> Result<Self, Fact1Error> {
        let m = y_seq.len();
        if m == 0 || x_seq.len() != m {
            return Err(Fact1Error::LengthMismatch {
                x: x_seq.len(),
                y: m,
            });
        }
        if ell == 0 || ell > m {
            return Err(Fact1Error::OffsetOutOfRange { ell, m });
        }
        let f0: BTreeSet<Pair> = f0.into_iter().map(|(u, v)| pair(u, v)).collect();
        let fm: BTreeSet<Pair> = fm.into_iter().map(|(u, v)| pair(u, v)).collect();
        let members: BTreeSet<usize> = x_seq.iter().chain(&y_seq).copied().collect();
        if let Some(&(u, v)) = f0
            .iter()
            .chain(&fm)
            .find(|(u, v)| !members.contains(u) || !members.contains(v))
        {
            return Err(Fact1Error::ForeignPair(u, v));
        }
        Ok(Fact1Instance {
            x_seq,
            y_seq,
            f0,
            fm,
            ell,
        })
    }

    pub fn m(&self) -> usize {
        self.y_seq.len()
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// `x_j` for `0 ≤ j < m`.
    pub fn x(&self, j: usize) -> usize {
        self.x_seq[j]
    }

    /// `y_j` for `1 ≤ j ≤ m`.
    pub fn y(&self, j: usize) -> usize {
        self.y_seq[j - 1]
    }

    /// `x_0 y_i ∈ F0` and `x_{i−ℓ} y_m ∈ Fm`.
    pub fn is_witness(&self, i: usize) -> bool {
        (self.ell..=self.m()).contains(&i)
            && self.f0.contains(&pair(self.x(0), self.y(i)))
            && self
                .fm
                .contains(&pair(self.x(i - self.ell), self.y(self.m())))
    }

    pub fn f0(&self) -> &BTreeSet<Pair> {
        &self.f0
    }

    pub fn fm(&self) -> &BTreeSet<Pair> {
        &self.fm
    }

    /// `d_F0(x_0, Y) + d_Fm(y_m, X)`.
    pub fn degree_sum(&self) -> usize {
        let x0 = self.x(0);
        let ym = self.y(self.m());
        let d0 = self
            .y_seq
            .iter()
            .filter(|&&y| self.f0.contains(&pair(x0, y)))
            .count();
        let dm = self
            .x_seq
            .iter()
            .filter(|&&x| self.fm.contains(&pair(x, ym)))
            .count();
        d0 + dm
    }

    /// Whether the counting hypothesis `degree_sum ≥ m + ℓ` holds.
    pub fn guaranteed(&self) -> bool {
        self.degree_sum() >= self.m() + self.ell
    }
}

/// Smallest `i ∈ [ℓ, m]` with `x_0 y_i ∈ F0` and `x_{i−ℓ} y_m ∈ Fm`.
pub fn fact1_index(inst: &Fact1Instance) -> Option<usize> {
    (inst.ell..=inst.m()).find(|&i| inst.is_witness(i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_candidate() {
        // m = 1: X = {x_0 = 0}, Y = {y_1 = 1}.
        let inst = Fact1Instance::new(vec![0], vec![1], [(0, 1)], [(0, 1)], 1).unwrap();
        assert_eq!(fact1_index(&inst), Some(1));
    }

    #[test]
    fn offset_two_example() {
        // x = [0, 1, 2], y = [10, 11, 12] (y_1, y_2, y_3).
        // F0 = {x_0y_2, x_0y_3}, Fm = {x_0y_3, x_1y_3}.
        let inst = Fact1Instance::new(
            vec![0, 1, 2],
            vec![10, 11, 12],
            [(0, 11), (0, 12)],
            [(0, 12), (1, 12)],
            2,
        )
        .unwrap();
        // Brute force over i ∈ {2, 3}: i = 2 needs x_0y_2 ∈ F0 and x_0y_3 ∈ Fm.
        let brute: Vec<usize> = (2..=3)
            .filter(|&i| {
                [(0, 11), (0, 12)].contains(&(0, [10, 11, 12][i - 1]))
                    && [(0, 12), (1, 12)].contains(&([0, 1, 2][i - 2], 12))
            })
            .collect();
        assert_eq!(brute, vec![2, 3]);
        assert_eq!(fact1_index(&inst), Some(2));
        assert_eq!(inst.degree_sum(), 4);
    }

    #[test]
    fn shared_vertex_sets() {
        // Path setting x_i = y_i = v_i on v_0..v_3.
        let inst = Fact1Instance::new(vec![0, 1, 2], vec![1, 2, 3], [(0, 2), (0, 3)], [(1, 3)], 1)
            .unwrap();
        assert_eq!(fact1_index(&inst), Some(2));
    }

    #[test]
    fn absence_is_legal() {
        let inst = Fact1Instance::new(vec![0, 1], vec![2, 3], [(0, 2)], [(1, 3)], 1).unwrap();
        assert!(!inst.guaranteed());
        assert_eq!(fact1_index(&inst), None);
    }

    #[test]
    fn invalid_instances() {
        assert!(matches!(
            Fact1Instance::new(vec![0], vec![1, 2], [], [], 1),
            Err(Fact1Error::LengthMismatch { .. })
        ));
        assert!(matches!(
            Fact1Instance::new(vec![0], vec![1], [], [], 2),
            Err(Fact1Error::OffsetOutOfRange { .. })
        ));
        assert_eq!(
            Fact1Instance::new(vec![0], vec![1], [(0, 7)], [], 1),
            Err(Fact1Error::ForeignPair(0, 7))
        );
    }
}
