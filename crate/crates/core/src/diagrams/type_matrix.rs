use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Symmetric `m x m` matrix of natural numbers counting chords by the pair of
/// circles their endpoints sit on.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<u32>>", into = "Vec<Vec<u32>>")]
pub struct TypeMatrix {
    m: usize,
    entries: Vec<u32>,
}

impl TypeMatrix {
    pub fn zero(m: usize) -> Self {
        Self { m, entries: vec![0; m * m] }
    }

    pub fn new(rows: Vec<Vec<u32>>) -> Result<Self> {
        let m = rows.len();
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::InvalidMatrix(format!("matrix is not square ({m} rows)")));
        }
        for i in 0..m {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::InvalidMatrix(format!(
                        "not symmetric: s[{}][{}] = {} but s[{}][{}] = {}",
                        i + 1,
                        j + 1,
                        rows[i][j],
                        j + 1,
                        i + 1,
                        rows[j][i]
                    )));
                }
            }
        }
        Ok(Self { m, entries: rows.into_iter().flatten().collect() })
    }

    /// Matrix with a single nonzero entry `s_ab = s_ba = n` (0-based).
    pub fn single(m: usize, a: usize, b: usize, n: u32) -> Self {
        let mut s = Self::zero(m);
        s.set(a, b, n);
        s
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.m + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.entries[i * self.m + j] = v;
        self.entries[j * self.m + i] = v;
    }

    pub(crate) fn increment(&mut self, i: usize, j: usize) {
        let v = self.get(i, j) + 1;
        self.set(i, j, v);
    }

    /// `|S| = sum over i <= j of s_ij`.
    pub fn degree(&self) -> usize {
        self.upper().map(|(_, _, v)| v as usize).sum()
    }

    /// Entries with `i <= j`.
    pub fn upper(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        (0..self.m).flat_map(move |i| (i..self.m).map(move |j| (i, j, self.get(i, j))))
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.entries.chunks(self.m.max(1)).take(self.m).map(|r| r.to_vec()).collect()
    }

    /// Copy with `s_ab = s_ba` replaced by `v`.
    pub fn with_entry(&self, a: usize, b: usize, v: u32) -> Self {
        let mut s = self.clone();
        s.set(a, b, v);
        s
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&v| v == 0)
    }
}

impl TryFrom<Vec<Vec<u32>>> for TypeMatrix {
    type Error = Error;
    fn try_from(rows: Vec<Vec<u32>>) -> Result<Self> {
        Self::new(rows)
    }
}

impl From<TypeMatrix> for Vec<Vec<u32>> {
    fn from(s: TypeMatrix) -> Self {
        s.rows()
    }
}

impl fmt::Display for TypeMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serde_json::to_string(&self.rows()).map_err(|_| fmt::Error)?)
    }
}
