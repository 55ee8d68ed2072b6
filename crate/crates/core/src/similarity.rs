//! Similarity functions between equal-length words.
//!
//! * additive: number of agreeing positions (`n` minus Hamming distance);
//! * deletion: length of a longest common subsequence;
//! * block: length of a longest common subsequence whose consecutive
//!   elements are adjacent in one word exactly when they are adjacent in
//!   the other.
//!
//! The slice kernels (`*_len`) skip validation and are what the search and
//! enumeration code calls in tight loops.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequence::{Letter, QarySequence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SimilarityKind {
    Additive,
    Deletion,
    Block,
}

impl SimilarityKind {
    pub const ALL: [SimilarityKind; 3] = [Self::Additive, Self::Deletion, Self::Block];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::Additive => "additive",
            Self::Deletion => "deletion",
            Self::Block => "block",
        }
    }

    /// Similarity of two raw words of equal length.
    pub fn eval(self, x: &[Letter], y: &[Letter]) -> usize {
        match self {
            Self::Additive => additive_len(x, y),
            Self::Deletion => lcs_len(x, y),
            Self::Block => block_len(x, y),
        }
    }

    pub fn similarity(self, x: &QarySequence, y: &QarySequence) -> Result<usize> {
        check_pair(x, y)?;
        Ok(self.eval(x.symbols(), y.symbols()))
    }
}

impl fmt::Display for SimilarityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SimilarityKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "additive" | "hamming" => Ok(Self::Additive),
            "deletion" | "lcs" => Ok(Self::Deletion),
            "block" => Ok(Self::Block),
            other => Err(Error::invalid(format!("unknown similarity kind {other:?}"))),
        }
    }
}

fn check_pair(x: &QarySequence, y: &QarySequence) -> Result<()> {
    if x.q() != y.q() {
        return Err(Error::invalid(format!(
            "alphabet mismatch: q={} vs q={}",
            x.q(),
            y.q()
        )));
    }
    if x.len() != y.len() {
        return Err(Error::invalid(format!(
            "length mismatch: {} vs {}",
            x.len(),
            y.len()
        )));
    }
    Ok(())
}

pub fn additive_similarity(x: &QarySequence, y: &QarySequence) -> Result<usize> {
    SimilarityKind::Additive.similarity(x, y)
}

pub fn deletion_similarity(x: &QarySequence, y: &QarySequence) -> Result<usize> {
    SimilarityKind::Deletion.similarity(x, y)
}

pub fn block_similarity(x: &QarySequence, y: &QarySequence) -> Result<usize> {
    SimilarityKind::Block.similarity(x, y)
}

pub fn additive_len(x: &[Letter], y: &[Letter]) -> usize {
    x.iter().zip(y).filter(|(a, b)| a == b).count()
}

/// LCS length, two-row table.
pub fn lcs_len(x: &[Letter], y: &[Letter]) -> usize {
    let m = y.len();
    let mut prev = vec![0usize; m + 1];
    let mut cur = vec![0usize; m + 1];
    for &a in x {
        for j in 1..=m {
            cur[j] = if a == y[j - 1] {
                prev[j - 1] + 1
            } else {
                prev[j].max(cur[j - 1])
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[m]
}

/// Longest common block subsequence length.
///
/// `end[i][j]` is the longest block subsequence whose last matched pair is
/// `(x_i, y_j)` (zero when the letters differ). A match either extends the
/// chain ending at `(i-1, j-1)`, so both steps are `+1`, or follows any chain
/// ending at or before `(i-2, j-2)`, so both steps skip. `best[i][j]` is the
/// prefix maximum of `end` over `i' <= i, j' <= j`.
pub fn block_len(x: &[Letter], y: &[Letter]) -> usize {
    let n = x.len();
    let m = y.len();
    let w = m + 1;
    let mut end = vec![0usize; (n + 1) * w];
    let mut best = vec![0usize; (n + 1) * w];
    for i in 1..=n {
        for j in 1..=m {
            if x[i - 1] == y[j - 1] {
                let adjacent = end[(i - 1) * w + j - 1];
                let separated = if i >= 2 && j >= 2 {
                    best[(i - 2) * w + j - 2]
                } else {
                    0
                };
                end[i * w + j] = 1 + adjacent.max(separated);
            }
            best[i * w + j] = end[i * w + j]
                .max(best[(i - 1) * w + j])
                .max(best[i * w + j - 1]);
        }
    }
    best[n * w + m]
}

pub mod oracle {
    //! Exhaustive enumeration of index embeddings, used to cross-check the
    //! dynamic programs.

    use super::*;

    pub const DEFAULT_ORACLE_LIMIT: usize = 12;

    /// Same contract as [`SimilarityKind::similarity`], computed by
    /// depth-first enumeration of every chain of matching index pairs
    /// `(i_1, j_1) < (i_2, j_2) < ..` admissible for `kind`.
    pub fn brute_force_similarity(
        kind: SimilarityKind,
        x: &QarySequence,
        y: &QarySequence,
    ) -> Result<usize> {
        brute_force_similarity_with_limit(kind, x, y, DEFAULT_ORACLE_LIMIT)
    }

    pub fn brute_force_similarity_with_limit(
        kind: SimilarityKind,
        x: &QarySequence,
        y: &QarySequence,
        limit: usize,
    ) -> Result<usize> {
        check_pair(x, y)?;
        if x.len() > limit {
            return Err(Error::OracleLimit { n: x.len(), limit });
        }
        Ok(brute_force_len(kind, x.symbols(), y.symbols()))
    }

    pub fn brute_force_len(kind: SimilarityKind, x: &[Letter], y: &[Letter]) -> usize {
        let mut search = Embeddings {
            kind,
            x,
            y,
            best: 0,
        };
        for i in 0..x.len() {
            for j in 0..y.len() {
                if search.admissible_start(i, j) {
                    search.extend(i, j, 1);
                }
            }
        }
        search.best
    }

    struct Embeddings<'a> {
        kind: SimilarityKind,
        x: &'a [Letter],
        y: &'a [Letter],
        best: usize,
    }

    impl Embeddings<'_> {
        fn admissible_start(&self, i: usize, j: usize) -> bool {
            self.x[i] == self.y[j] && (self.kind != SimilarityKind::Additive || i == j)
        }

        fn admissible_step(&self, (i, j): (usize, usize), (ni, nj): (usize, usize)) -> bool {
            if self.x[ni] != self.y[nj] {
                return false;
            }
            match self.kind {
                SimilarityKind::Additive => ni == nj,
                SimilarityKind::Deletion => true,
                SimilarityKind::Block => (ni == i + 1) == (nj == j + 1),
            }
        }

        fn extend(&mut self, i: usize, j: usize, len: usize) {
            self.best = self.best.max(len);
            let room = (self.x.len() - 1 - i).min(self.y.len() - 1 - j);
            if len + room <= self.best {
                return;
            }
            for ni in i + 1..self.x.len() {
                for nj in j + 1..self.y.len() {
                    if self.admissible_step((i, j), (ni, nj)) {
                        self.extend(ni, nj, len + 1);
                    }
                }
            }
        }
    }
}
