//! Generalized Cartan matrices and the weight bookkeeping built on them.
//!
//! Weights are never materialized as lattice elements. Everything downstream
//! only consumes the pairings `<h_i, mu>`, so a weight is carried as a
//! [`PairingVector`] aligned with the matrix's [`IndexSet`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A color label. Labels are arbitrary small integers.
pub type Color = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CartanError {
    #[error("index set is empty")]
    EmptyIndexSet,
    #[error("color {0} appears more than once in the index set")]
    DuplicateColor(Color),
    #[error("matrix shape does not match an index set of size {expected}")]
    Shape { expected: usize },
    #[error("diagonal entry at color {color} is {value}, expected 2")]
    Diagonal { color: Color, value: i64 },
    #[error("off-diagonal entry a[{i}][{j}] = {value} is positive")]
    PositiveOffDiagonal { i: Color, j: Color, value: i64 },
    #[error("a[{i}][{j}] and a[{j}][{i}] disagree on vanishing")]
    ZeroAsymmetry { i: Color, j: Color },
    #[error("unknown color {0}")]
    UnknownColor(Color),
    #[error("pair ({i}, {j}) must consist of two distinct colors")]
    SamePair { i: Color, j: Color },
    #[error("pair ({i}, {j}) has (a_ij, a_ji) = ({aij}, {aji}), which is not a supported rank-2 type")]
    UnsupportedPair { i: Color, j: Color, aij: i64, aji: i64 },
}

/// The finite, ordered color set `I`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Color>", into = "Vec<Color>")]
pub struct IndexSet {
    colors: Vec<Color>,
}

impl IndexSet {
    pub fn new(colors: Vec<Color>) -> Result<Self, CartanError> {
        if colors.is_empty() {
            return Err(CartanError::EmptyIndexSet);
        }
        for (k, c) in colors.iter().enumerate() {
            if colors[..k].contains(c) {
                return Err(CartanError::DuplicateColor(*c));
            }
        }
        Ok(Self { colors })
    }

    /// The colors `1..=n`.
    pub fn standard(n: usize) -> Self {
        assert!(n > 0, "index set must be nonempty");
        Self {
            colors: (1..=n as Color).collect(),
        }
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Position of `c` in iteration order.
    pub fn position(&self, c: Color) -> Option<usize> {
        self.colors.iter().position(|&x| x == c)
    }

    pub fn contains(&self, c: Color) -> bool {
        self.colors.contains(&c)
    }

    pub fn iter(&self) -> impl Iterator<Item = Color> + '_ {
        self.colors.iter().copied()
    }
}

impl TryFrom<Vec<Color>> for IndexSet {
    type Error = CartanError;

    fn try_from(colors: Vec<Color>) -> Result<Self, Self::Error> {
        Self::new(colors)
    }
}

impl From<IndexSet> for Vec<Color> {
    fn from(set: IndexSet) -> Self {
        set.colors
    }
}

/// Classification of the restriction `A|_{i,j}` for an ordered pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RankTwoType {
    /// `(a_ij, a_ji) = (0, 0)`
    Orthogonal,
    /// `(a_ij, a_ji) = (-1, -1)`
    SimplyLaced,
    /// `(a_ij, a_ji) = (-2, -1)`
    B2,
    /// `(a_ij, a_ji) = (-1, -2)`
    B2Transpose,
}

/// A generalized Cartan matrix indexed by an [`IndexSet`].
///
/// Construction checks the GCM sign conditions only. Whether every pair is of
/// a supported rank-2 type is a separate question, answered by
/// [`Gcm::classify_pair`] and [`Gcm::check_supported`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gcm {
    index: IndexSet,
    entries: Vec<Vec<i64>>,
}

impl Gcm {
    pub fn new(index: IndexSet, entries: Vec<Vec<i64>>) -> Result<Self, CartanError> {
        let n = index.len();
        if entries.len() != n || entries.iter().any(|row| row.len() != n) {
            return Err(CartanError::Shape { expected: n });
        }
        let colors = index.colors();
        for p in 0..n {
            if entries[p][p] != 2 {
                return Err(CartanError::Diagonal {
                    color: colors[p],
                    value: entries[p][p],
                });
            }
            for q in 0..n {
                if p == q {
                    continue;
                }
                if entries[p][q] > 0 {
                    return Err(CartanError::PositiveOffDiagonal {
                        i: colors[p],
                        j: colors[q],
                        value: entries[p][q],
                    });
                }
                if (entries[p][q] == 0) != (entries[q][p] == 0) {
                    return Err(CartanError::ZeroAsymmetry {
                        i: colors[p],
                        j: colors[q],
                    });
                }
            }
        }
        Ok(Self { index, entries })
    }

    /// Matrix on the standard colors `1..=n`.
    pub fn from_rows(entries: Vec<Vec<i64>>) -> Result<Self, CartanError> {
        if entries.is_empty() {
            return Err(CartanError::EmptyIndexSet);
        }
        Self::new(IndexSet::standard(entries.len()), entries)
    }

    /// `B2 = (2 -2; -1 2)` on colors `{1, 2}`.
    pub fn b2() -> Self {
        Self::from_rows(vec![vec![2, -2], vec![-1, 2]]).expect("valid B2")
    }

    /// `A2 = (2 -1; -1 2)` on colors `{1, 2}`.
    pub fn a2() -> Self {
        Self::from_rows(vec![vec![2, -1], vec![-1, 2]]).expect("valid A2")
    }

    /// `A1 x A1` on colors `{1, 2}`.
    pub fn a1_a1() -> Self {
        Self::from_rows(vec![vec![2, 0], vec![0, 2]]).expect("valid A1xA1")
    }

    /// Type B3 with the convention `a_ij = <h_i, alpha_j>`: colors 1, 2 long,
    /// color 3 short, so `(a_23, a_32) = (-1, -2)`.
    pub fn b3() -> Self {
        Self::from_rows(vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -2, 2]]).expect("valid B3")
    }

    /// Type C3 with the same convention, `(a_23, a_32) = (-2, -1)`.
    pub fn c3() -> Self {
        Self::from_rows(vec![vec![2, -1, 0], vec![-1, 2, -2], vec![0, -1, 2]]).expect("valid C3")
    }

    pub fn index_set(&self) -> &IndexSet {
        &self.index
    }

    pub fn rank(&self) -> usize {
        self.index.len()
    }

    /// Row-major entries, rows and columns in index-set order.
    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }

    /// `a_ij` by color.
    pub fn entry(&self, i: Color, j: Color) -> Result<i64, CartanError> {
        let p = self.index.position(i).ok_or(CartanError::UnknownColor(i))?;
        let q = self.index.position(j).ok_or(CartanError::UnknownColor(j))?;
        Ok(self.entries[p][q])
    }

    /// `a_pq` by index-set position.
    pub fn at(&self, p: usize, q: usize) -> i64 {
        self.entries[p][q]
    }

    pub fn classify_pair(&self, i: Color, j: Color) -> Result<RankTwoType, CartanError> {
        if i == j {
            return Err(CartanError::SamePair { i, j });
        }
        let aij = self.entry(i, j)?;
        let aji = self.entry(j, i)?;
        match (aij, aji) {
            (0, 0) => Ok(RankTwoType::Orthogonal),
            (-1, -1) => Ok(RankTwoType::SimplyLaced),
            (-2, -1) => Ok(RankTwoType::B2),
            (-1, -2) => Ok(RankTwoType::B2Transpose),
            _ => Err(CartanError::UnsupportedPair { i, j, aij, aji }),
        }
    }

    /// Fails on the first pair outside `{A1xA1, A2, B2, B2^T}`.
    pub fn check_supported(&self) -> Result<(), CartanError> {
        for i in self.index.iter() {
            for j in self.index.iter() {
                if i != j {
                    self.classify_pair(i, j)?;
                }
            }
        }
        Ok(())
    }

    /// Ordered pairs `(i, j)` with `A|_{i,j} = B2`.
    pub fn b2_pairs(&self) -> Vec<(Color, Color)> {
        let mut out = Vec::new();
        for i in self.index.iter() {
            for j in self.index.iter() {
                if i != j && self.classify_pair(i, j) == Ok(RankTwoType::B2) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// `<h_j, U(c)>` for every `j`: component `j` is `sum_i a_ji * c(i)`.
    pub fn pairing_of_root_count(&self, c: &RootCount) -> PairingVector {
        let n = self.rank();
        let mut out = vec![0i64; n];
        for (color, mult) in c.iter() {
            let q = self
                .index
                .position(color)
                .unwrap_or_else(|| panic!("root count uses color {color} outside the index set"));
            for (p, slot) in out.iter_mut().enumerate() {
                *slot += self.entries[p][q] * mult as i64;
            }
        }
        PairingVector(out)
    }
}

impl fmt::Display for Gcm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
            writeln!(f, "[{}]", cells.join(""))?;
        }
        Ok(())
    }
}

/// The pairings `(<h_i, mu>)_{i in I}` of a weight `mu`, in index-set order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PairingVector(pub Vec<i64>);

impl PairingVector {
    pub fn zeros(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&v| v >= 0)
    }
}

impl From<Vec<i64>> for PairingVector {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}

impl Add for &PairingVector {
    type Output = PairingVector;

    fn add(self, rhs: Self) -> PairingVector {
        assert_eq!(self.len(), rhs.len(), "pairing vectors of different rank");
        PairingVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &PairingVector {
    type Output = PairingVector;

    fn sub(self, rhs: Self) -> PairingVector {
        assert_eq!(self.len(), rhs.len(), "pairing vectors of different rank");
        PairingVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

/// An element of `N[I]`: a finitely supported multiset of colors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootCount(BTreeMap<Color, u64>);

impl RootCount {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Color, u64)>) -> Self {
        let mut out = Self::new();
        for (c, m) in pairs {
            out.add_color(c, m);
        }
        out
    }

    pub fn add_color(&mut self, c: Color, times: u64) {
        if times > 0 {
            *self.0.entry(c).or_insert(0) += times;
        }
    }

    pub fn with_color(&self, c: Color) -> Self {
        let mut out = self.clone();
        out.add_color(c, 1);
        out
    }

    pub fn get(&self, c: Color) -> u64 {
        self.0.get(&c).copied().unwrap_or(0)
    }

    /// Total multiplicity, i.e. the length of any path realizing this count.
    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Color, u64)> + '_ {
        self.0.iter().map(|(&c, &m)| (c, m))
    }
}

impl Add for &RootCount {
    type Output = RootCount;

    fn add(self, rhs: Self) -> RootCount {
        let mut out = self.clone();
        for (c, m) in rhs.iter() {
            out.add_color(c, m);
        }
        out
    }
}

impl fmt::Display for RootCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(c, m)| format!("{c}^{m}")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}
