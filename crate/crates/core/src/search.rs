//! Exhaustive similarity distributions and maximum-code search.

use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::clique::{maximum_clique, Graph};
use crate::error::{Error, Result};
use crate::limits::EnumerationCap;
use crate::sequence::{check_alphabet, QarySequence};
use crate::similarity::SimilarityKind;
use crate::text::render;

/// Exact counts `|P(n, s)|` of ordered pairs `(x, y)` with `S(x, y) = s` and
/// `|P̄(n, s)|` of words with `S(x, x̃) = s`, for `s = 0..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributionTable {
    pub q: u8,
    pub n: usize,
    pub kind: SimilarityKind,
    pub pair_counts: Vec<BigUint>,
    pub selfrc_counts: Vec<BigUint>,
}

impl DistributionTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("s,pair_count,selfrc_count\n");
        for s in 0..=self.n {
            out.push_str(&format!(
                "{s},{},{}\n",
                self.pair_counts[s], self.selfrc_counts[s]
            ));
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let strings = |v: &[BigUint]| v.iter().map(|c| c.to_string()).collect::<Vec<_>>();
        json!({
            "q": self.q,
            "n": self.n,
            "kind": self.kind.as_str(),
            "pair_counts": strings(&self.pair_counts),
            "selfrc_counts": strings(&self.selfrc_counts),
        })
    }
}

pub fn enumerate_distribution(
    q: u8,
    n: usize,
    kind: SimilarityKind,
    cap: EnumerationCap,
) -> Result<DistributionTable> {
    check_alphabet(q)?;
    if n == 0 {
        return Err(Error::invalid("length must be at least 1"));
    }
    cap.check_power("pair distribution", q, 2 * n)?;
    let words = q as u64;
    let size = words.pow(n as u32);
    let words: Vec<QarySequence> = (0..size).map(|i| QarySequence::from_index(q, n, i)).collect();

    // Each unordered pair once; off-diagonal pairs count twice.
    let pair_counts = (0..words.len())
        .into_par_iter()
        .fold(
            || vec![0u64; n + 1],
            |mut acc, i| {
                let x = words[i].symbols();
                acc[n] += 1;
                for y in &words[i + 1..] {
                    acc[kind.eval(x, y.symbols())] += 2;
                }
                acc
            },
        )
        .reduce(|| vec![0u64; n + 1], add_counts);

    let selfrc_counts = words
        .par_iter()
        .fold(
            || vec![0u64; n + 1],
            |mut acc, x| {
                acc[kind.eval(x.symbols(), x.reverse_complement().symbols())] += 1;
                acc
            },
        )
        .reduce(|| vec![0u64; n + 1], add_counts);

    Ok(DistributionTable {
        q,
        n,
        kind,
        pair_counts: pair_counts.into_iter().map(BigUint::from).collect(),
        selfrc_counts: selfrc_counts.into_iter().map(BigUint::from).collect(),
    })
}

fn add_counts(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

/// `P1 = Pr{S(u, ũ) >= n - D}` and `P2 = Pr{S(u, v) >= n - D}` for
/// independent uniform `u`, `v`.
pub fn p1_p2_exact(
    q: u8,
    n: usize,
    distance: usize,
    kind: SimilarityKind,
    cap: EnumerationCap,
) -> Result<(BigRational, BigRational)> {
    if distance > n {
        return Err(Error::invalid(format!("need D <= n, got D={distance}, n={n}")));
    }
    let table = enumerate_distribution(q, n, kind, cap)?;
    Ok(p1_p2_from_table(&table, distance))
}

pub fn p1_p2_from_table(table: &DistributionTable, distance: usize) -> (BigRational, BigRational) {
    let n = table.n;
    let tail = |counts: &[BigUint]| -> BigUint { (0..=distance.min(n)).map(|t| &counts[n - t]).sum() };
    let qn = BigInt::from(crate::combinatorics::pow(table.q as u64, n as u64));
    let p1 = BigRational::new(BigInt::from(tail(&table.selfrc_counts)), qn.clone());
    let p2 = BigRational::new(BigInt::from(tail(&table.pair_counts)), &qn * &qn);
    (p1, p2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    /// Codes closed under reverse complement with no self-RC codeword.
    Dna,
    /// Only the pairwise similarity constraint.
    DistanceOnly,
}

impl SearchMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchMode::Dna => "dna",
            SearchMode::DistanceOnly => "distance-only",
        }
    }
}

impl std::str::FromStr for SearchMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dna" => Ok(SearchMode::Dna),
            "distance-only" => Ok(SearchMode::DistanceOnly),
            other => Err(Error::invalid(format!("unknown search mode {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    pub q: u8,
    pub n: usize,
    pub distance: usize,
    pub kind: SimilarityKind,
    pub mode: SearchMode,
    /// Codewords in ascending order.
    pub code: Vec<QarySequence>,
    pub size: usize,
    /// True only when the search finished, certifying that no larger code
    /// exists.
    pub optimal: bool,
    pub elapsed: Duration,
    pub vertices: usize,
    pub nodes: u64,
}

impl SearchResult {
    pub fn to_json(&self, acgt: bool) -> Value {
        json!({
            "q": self.q,
            "n": self.n,
            "distance": self.distance,
            "kind": self.kind.as_str(),
            "mode": self.mode.as_str(),
            "size": self.size,
            "optimal": self.optimal,
            "vertices": self.vertices,
            "code": self.code.iter().map(|x| render(x, acgt)).collect::<Vec<_>>(),
        })
    }
}

pub const DEFAULT_BUDGET: Duration = Duration::from_secs(600);

/// Largest compatibility graph the search will build.
pub const MAX_VERTICES: usize = 1 << 14;

/// Largest code with pairwise similarity at most `n - D - 1`, by maximum
/// clique search on the compatibility graph.
///
/// In [`SearchMode::Dna`] each vertex is a pair `{x, x̃}` with `x != x̃`
/// and `S(x, x̃) <= n - D - 1`; two pairs are adjacent when all four cross
/// similarities are within the limit. The code is the union of the chosen
/// pairs. In [`SearchMode::DistanceOnly`] each word is a vertex.
pub fn max_code(
    q: u8,
    n: usize,
    distance: usize,
    kind: SimilarityKind,
    mode: SearchMode,
    budget: Duration,
    cap: EnumerationCap,
) -> Result<SearchResult> {
    check_alphabet(q)?;
    if distance < 1 || distance + 1 > n {
        return Err(Error::invalid(format!(
            "distance must satisfy 1 <= D <= n-1, got D={distance} with n={n}"
        )));
    }
    if budget.is_zero() {
        return Err(Error::invalid("search budget must be positive"));
    }
    let start = Instant::now();
    let size = cap.check_power("word space", q, n)?;
    let limit = n - distance - 1;
    let ok = |a: &QarySequence, b: &QarySequence| kind.eval(a.symbols(), b.symbols()) <= limit;

    let groups: Vec<Vec<QarySequence>> = (0..size)
        .map(|i| QarySequence::from_index(q, n, i))
        .filter_map(|x| match mode {
            SearchMode::DistanceOnly => Some(vec![x]),
            SearchMode::Dna => {
                let y = x.reverse_complement();
                (x < y && ok(&x, &y)).then(|| vec![x, y])
            }
        })
        .collect();
    if groups.len() > MAX_VERTICES {
        return Err(Error::CapExceeded {
            what: "search graph vertices".into(),
            required: groups.len().to_string(),
            cap: MAX_VERTICES as u64,
        });
    }

    let neighbours: Vec<Vec<usize>> = (0..groups.len())
        .into_par_iter()
        .map(|u| {
            (u + 1..groups.len())
                .filter(|&v| groups[u].iter().all(|a| groups[v].iter().all(|b| ok(a, b))))
                .collect()
        })
        .collect();
    let mut graph = Graph::new(groups.len());
    for (u, vs) in neighbours.iter().enumerate() {
        for &v in vs {
            graph.add_edge(u, v);
        }
    }

    let outcome = maximum_clique(&graph, Some(start + budget));
    let mut code: Vec<QarySequence> = outcome
        .clique
        .iter()
        .flat_map(|&v| groups[v].iter().cloned())
        .collect();
    code.sort();
    Ok(SearchResult {
        q,
        n,
        distance,
        kind,
        mode,
        size: code.len(),
        code,
        optimal: outcome.optimal,
        elapsed: start.elapsed(),
        vertices: groups.len(),
        nodes: outcome.nodes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{validate_distance_only, validate_dna_code};
    use num_traits::{ToPrimitive, Zero};

    fn cap() -> EnumerationCap {
        EnumerationCap::DEFAULT
    }

    #[test]
    fn binary_length_two_block_table() {
        let t = enumerate_distribution(2, 2, SimilarityKind::Block, cap()).unwrap();
        let counts: Vec<u64> = t.pair_counts.iter().map(|c| c.to_u64().unwrap()).collect();
        assert_eq!(counts, vec![2, 10, 4]);
        let (p1, p2) = p1_p2_from_table(&t, 1);
        assert_eq!(p1, BigRational::new(1.into(), 2.into()));
        assert_eq!(p2, BigRational::new(14.into(), 16.into()));
    }

    #[test]
    fn deletion_table_facts() {
        let t = enumerate_distribution(2, 4, SimilarityKind::Deletion, cap()).unwrap();
        assert_eq!(t.pair_counts[4], BigUint::from(16u32));
        assert!(t.selfrc_counts[1].is_zero() && t.selfrc_counts[3].is_zero());
        let total: BigUint = t.pair_counts.iter().sum();
        assert_eq!(total, BigUint::from(256u32));
        let (_, p2) = p1_p2_exact(2, 4, 0, SimilarityKind::Deletion, cap()).unwrap();
        assert_eq!(p2, BigRational::new(1.into(), 16.into()));
    }

    #[test]
    fn csv_layout() {
        let t = enumerate_distribution(2, 2, SimilarityKind::Block, cap()).unwrap();
        assert_eq!(t.to_csv(), "s,pair_count,selfrc_count\n0,2,2\n1,10,0\n2,4,2\n");
    }

    #[test]
    fn cap_is_enforced() {
        let small = EnumerationCap::new(100).unwrap();
        assert!(matches!(
            enumerate_distribution(2, 4, SimilarityKind::Block, small),
            Err(Error::CapExceeded { .. })
        ));
        assert!(max_code(2, 8, 1, SimilarityKind::Block, SearchMode::Dna, DEFAULT_BUDGET, small)
            .is_err());
    }

    #[test]
    fn binary_optimum_and_witness() {
        let r = max_code(2, 4, 1, SimilarityKind::Deletion, SearchMode::Dna, DEFAULT_BUDGET, cap())
            .unwrap();
        assert_eq!(r.size, 4);
        assert!(r.optimal);
        assert!(validate_dna_code(&r.code, SimilarityKind::Deletion, 1).unwrap().valid);
        let d = max_code(
            2,
            4,
            1,
            SimilarityKind::Deletion,
            SearchMode::DistanceOnly,
            DEFAULT_BUDGET,
            cap(),
        )
        .unwrap();
        assert!(d.size >= r.size);
        assert!(validate_distance_only(&d.code, SimilarityKind::Deletion, 1).unwrap().valid);
    }

    #[test]
    fn argument_checks() {
        let b = DEFAULT_BUDGET;
        assert!(max_code(2, 4, 0, SimilarityKind::Block, SearchMode::Dna, b, cap()).is_err());
        assert!(max_code(2, 4, 4, SimilarityKind::Block, SearchMode::Dna, b, cap()).is_err());
        assert!(
            max_code(2, 4, 1, SimilarityKind::Block, SearchMode::Dna, Duration::ZERO, cap())
                .is_err()
        );
    }
}
