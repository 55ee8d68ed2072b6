//! DNA code validation and the elementary upper bounds on code size.
//!
//! A DNA `(n, D)`-code is a set of words closed under reverse complement,
//! with no word equal to its own reverse complement, in which every pair of
//! distinct codewords has similarity at most `n - D - 1`.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bounds::{BoundMode, BoundParams, BoundReport, BoundValue};
use crate::combinatorics::{binomial, factorial, pow};
use crate::error::{Error, Result};
use crate::sequence::QarySequence;
use crate::similarity::SimilarityKind;
use crate::text::render;

/// A validated code together with the similarity and distance it was
/// checked against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DnaCode {
    q: u8,
    n: usize,
    codewords: Vec<QarySequence>,
    kind: SimilarityKind,
    distance: usize,
}

impl DnaCode {
    /// Builds a code, failing unless both conditions of a DNA code hold.
    pub fn try_new(
        mut codewords: Vec<QarySequence>,
        kind: SimilarityKind,
        distance: usize,
    ) -> Result<Self> {
        let report = validate_dna_code(&codewords, kind, distance)?;
        if !report.valid {
            return Err(Error::invalid(format!(
                "not a DNA code: {} violation(s), first: {}",
                report.violations.len(),
                report.violations[0].describe(false)
            )));
        }
        codewords.sort();
        let (q, n) = (codewords[0].q(), codewords[0].len());
        Ok(Self {
            q,
            n,
            codewords,
            kind,
            distance,
        })
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Codewords in lexicographic order.
    pub fn codewords(&self) -> &[QarySequence] {
        &self.codewords
    }

    pub fn size(&self) -> usize {
        self.codewords.len()
    }

    pub fn kind(&self) -> SimilarityKind {
        self.kind
    }

    pub fn distance(&self) -> usize {
        self.distance
    }

    pub fn into_codewords(self) -> Vec<QarySequence> {
        self.codewords
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Violation {
    /// The same word occurs more than once.
    Duplicate { codeword: QarySequence },
    /// A codeword equal to its own reverse complement.
    SelfReverseComplementary { codeword: QarySequence },
    /// A codeword whose reverse complement is not in the code.
    MissingReverseComplement { codeword: QarySequence },
    /// Two distinct codewords that are too similar.
    Distance {
        first: QarySequence,
        second: QarySequence,
        similarity: usize,
    },
}

impl Violation {
    pub fn is_pairing(&self) -> bool {
        matches!(
            self,
            Violation::SelfReverseComplementary { .. } | Violation::MissingReverseComplement { .. }
        )
    }

    pub fn is_distance(&self) -> bool {
        matches!(self, Violation::Distance { .. })
    }

    pub fn describe(&self, acgt: bool) -> String {
        match self {
            Violation::Duplicate { codeword } => format!("duplicate codeword {}", render(codeword, acgt)),
            Violation::SelfReverseComplementary { codeword } => {
                format!("{} is self reverse complementary", render(codeword, acgt))
            }
            Violation::MissingReverseComplement { codeword } => format!(
                "reverse complement {} of {} is missing",
                render(&codeword.reverse_complement(), acgt),
                render(codeword, acgt)
            ),
            Violation::Distance {
                first,
                second,
                similarity,
            } => format!(
                "similarity({}, {}) = {}",
                render(first, acgt),
                render(second, acgt),
                similarity
            ),
        }
    }

    pub fn to_json(&self, acgt: bool) -> Value {
        match self {
            Violation::Duplicate { codeword } => json!({
                "class": "duplicate",
                "codeword": render(codeword, acgt),
            }),
            Violation::SelfReverseComplementary { codeword } => json!({
                "class": "pairing",
                "reason": "self_reverse_complementary",
                "codeword": render(codeword, acgt),
            }),
            Violation::MissingReverseComplement { codeword } => json!({
                "class": "pairing",
                "reason": "missing_reverse_complement",
                "codeword": render(codeword, acgt),
            }),
            Violation::Distance {
                first,
                second,
                similarity,
            } => json!({
                "class": "distance",
                "codewords": [render(first, acgt), render(second, acgt)],
                "similarity": similarity,
            }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub valid: bool,
    /// Sorted; independent of evaluation order.
    pub violations: Vec<Violation>,
    /// Largest similarity between two code positions holding distinct
    /// indices; `n` when a duplicate is present.
    pub max_observed_similarity: usize,
    pub kind: SimilarityKind,
    pub distance: usize,
    pub n: usize,
    pub size: usize,
}

impl ValidationReport {
    pub fn pairing_violations(&self) -> usize {
        self.violations.iter().filter(|v| v.is_pairing()).count()
    }

    pub fn distance_violations(&self) -> usize {
        self.violations.iter().filter(|v| v.is_distance()).count()
    }

    pub fn to_json(&self, acgt: bool) -> Value {
        json!({
            "valid": self.valid,
            "kind": self.kind.as_str(),
            "distance": self.distance,
            "n": self.n,
            "size": self.size,
            "similarity_limit": self.n - self.distance - 1,
            "max_observed_similarity": self.max_observed_similarity,
            "violations": self.violations.iter().map(|v| v.to_json(acgt)).collect::<Vec<_>>(),
        })
    }

    pub fn to_text(&self, acgt: bool) -> String {
        let mut out = format!(
            "{}: {} codewords, n={}, kind={}, D={}, max similarity {} (limit {})\n",
            if self.valid { "VALID" } else { "INVALID" },
            self.size,
            self.n,
            self.kind,
            self.distance,
            self.max_observed_similarity,
            self.n - self.distance - 1
        );
        for v in &self.violations {
            out.push_str("  ");
            out.push_str(&v.describe(acgt));
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ValidationOptions {
    /// Stop at the first violation found.
    pub fail_fast: bool,
}

/// Checks both DNA-code conditions: reverse complement pairing and the
/// similarity limit `n - D - 1`. Reports every violation.
pub fn validate_dna_code(
    codewords: &[QarySequence],
    kind: SimilarityKind,
    distance: usize,
) -> Result<ValidationReport> {
    validate(codewords, kind, distance, true, ValidationOptions::default())
}

/// Checks only the similarity limit, as for plain deletion-correcting codes.
pub fn validate_distance_only(
    codewords: &[QarySequence],
    kind: SimilarityKind,
    distance: usize,
) -> Result<ValidationReport> {
    validate(codewords, kind, distance, false, ValidationOptions::default())
}

pub fn validate(
    codewords: &[QarySequence],
    kind: SimilarityKind,
    distance: usize,
    check_pairing: bool,
    options: ValidationOptions,
) -> Result<ValidationReport> {
    let first = codewords
        .first()
        .ok_or_else(|| Error::invalid("code has no codewords"))?;
    let (q, n) = (first.q(), first.len());
    if let Some(bad) = codewords.iter().find(|c| c.q() != q || c.len() != n) {
        return Err(Error::invalid(format!(
            "heterogeneous code: expected q={q}, n={n}, found q={}, n={}",
            bad.q(),
            bad.len()
        )));
    }
    if distance < 1 || distance + 1 > n {
        return Err(Error::invalid(format!(
            "distance must satisfy 1 <= D <= n-1, got D={distance} with n={n}"
        )));
    }
    let limit = n - distance - 1;

    let mut sorted = codewords.to_vec();
    sorted.sort();
    let mut violations = Vec::new();
    let mut distinct: Vec<QarySequence> = Vec::with_capacity(sorted.len());
    for w in sorted {
        if distinct.last() == Some(&w) {
            violations.push(Violation::Duplicate { codeword: w });
        } else {
            distinct.push(w);
        }
    }
    let mut max_observed = if violations.is_empty() { 0 } else { n };

    if check_pairing && !(options.fail_fast && !violations.is_empty()) {
        for w in &distinct {
            if w.is_self_reverse_complementary() {
                violations.push(Violation::SelfReverseComplementary { codeword: w.clone() });
            } else if distinct.binary_search(&w.reverse_complement()).is_err() {
                violations.push(Violation::MissingReverseComplement { codeword: w.clone() });
            }
            if options.fail_fast && !violations.is_empty() {
                break;
            }
        }
    }

    if options.fail_fast {
        if violations.is_empty() {
            'outer: for i in 0..distinct.len() {
                for j in i + 1..distinct.len() {
                    let s = kind.eval(distinct[i].symbols(), distinct[j].symbols());
                    max_observed = max_observed.max(s);
                    if s > limit {
                        violations.push(Violation::Distance {
                            first: distinct[i].clone(),
                            second: distinct[j].clone(),
                            similarity: s,
                        });
                        break 'outer;
                    }
                }
            }
        }
    } else {
        let rows: Vec<(usize, Vec<Violation>)> = (0..distinct.len())
            .into_par_iter()
            .map(|i| {
                let mut row_max = 0;
                let mut row = Vec::new();
                for j in i + 1..distinct.len() {
                    let s = kind.eval(distinct[i].symbols(), distinct[j].symbols());
                    row_max = row_max.max(s);
                    if s > limit {
                        row.push(Violation::Distance {
                            first: distinct[i].clone(),
                            second: distinct[j].clone(),
                            similarity: s,
                        });
                    }
                }
                (row_max, row)
            })
            .collect();
        for (row_max, row) in rows {
            max_observed = max_observed.max(row_max);
            violations.extend(row);
        }
    }

    violations.sort();
    Ok(ValidationReport {
        valid: violations.is_empty(),
        violations,
        max_observed_similarity: max_observed,
        kind,
        distance,
        n,
        size: codewords.len(),
    })
}

/// Upper bound `floor((q^{n-1} + q) / 2)` on the size of block-similarity
/// DNA codes with distance one.
pub fn theorem21_upper_bound(q: u8, n: usize) -> Result<BigUint> {
    crate::sequence::check_alphabet(q)?;
    if n < 2 {
        return Err(Error::invalid("n must be at least 2"));
    }
    Ok((pow(q as u64, n as u64 - 1) + BigUint::from(q)) / 2u32)
}

/// Hamming-type bound on block-similarity DNA codes: `q^{n-1}` for `D = 1`,
/// otherwise `floor(q^n / sum_{i <= D/2} C(n, i) (q-1)^i)`.
pub fn hamming_upper_bound(q: u8, n: usize, distance: usize) -> Result<BigUint> {
    crate::sequence::check_alphabet(q)?;
    if distance < 1 || distance + 1 > n {
        return Err(Error::invalid(format!(
            "distance must satisfy 1 <= D <= n-1, got D={distance} with n={n}"
        )));
    }
    let (q, n) = (q as u64, n as u64);
    if distance == 1 {
        return Ok(pow(q, n - 1));
    }
    let sphere: BigUint = (0..=(distance as u64 / 2))
        .map(|i| binomial(n, i) * pow(q - 1, i))
        .sum();
    Ok(pow(q, n) / sphere)
}

/// Leading term `D! / (q-1)^D * q^n / n^D` of the deletion-code upper bound.
pub fn asymptotic_deletion_upper(q: u8, n: usize, distance: usize) -> Result<BoundReport> {
    crate::sequence::check_alphabet(q)?;
    if distance < 1 || n < 1 {
        return Err(Error::invalid("need D >= 1 and n >= 1"));
    }
    let (qf, nf, d) = (q as f64, n as f64, distance as i32);
    let fact = factorial(distance as u64).to_f64().unwrap_or(f64::INFINITY);
    let log_value = fact.ln() - d as f64 * (qf - 1.0).ln() + nf * qf.ln() - d as f64 * nf.ln();
    Ok(BoundReport {
        name: "deletion_upper_leading_term".into(),
        params: BoundParams::length(q, n, distance, Some(SimilarityKind::Deletion)),
        value: BoundValue::Float(log_value.exp()),
        mode: BoundMode::Asymptotic,
        vacuous: false,
        note: Some("asymptotic, no o(1) term".into()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_sequences;

    fn code(q: u8, text: &str) -> Vec<QarySequence> {
        parse_sequences(text, q).unwrap()
    }

    #[test]
    fn small_quaternary_code_is_valid() {
        let c = code(4, "ACAT\nATGT\nATAC\nGTAT\n");
        let r = validate_dna_code(&c, SimilarityKind::Deletion, 1).unwrap();
        assert!(r.valid, "{}", r.to_text(true));
        assert_eq!(r.max_observed_similarity, 2);
        let r = validate_dna_code(&c, SimilarityKind::Block, 1).unwrap();
        assert!(r.valid);
    }

    #[test]
    fn distance_violation_reported() {
        let c = code(2, "0000\n0001\n");
        let r = validate_distance_only(&c, SimilarityKind::Deletion, 1).unwrap();
        assert!(!r.valid);
        assert_eq!(r.distance_violations(), 1);
        assert_eq!(r.max_observed_similarity, 3);
        let r = validate_dna_code(&c, SimilarityKind::Deletion, 1).unwrap();
        assert_eq!(r.pairing_violations(), 2);
    }

    #[test]
    fn single_codeword_distance_only() {
        let c = code(4, "0123\n");
        assert!(validate_distance_only(&c, SimilarityKind::Block, 2).unwrap().valid);
    }

    #[test]
    fn duplicates_are_their_own_class() {
        let c = code(4, "0000\n3333\n0000\n");
        let r = validate_dna_code(&c, SimilarityKind::Deletion, 1).unwrap();
        assert_eq!(r.violations, vec![Violation::Duplicate { codeword: c[0].clone() }]);
        assert_eq!(r.max_observed_similarity, 4);
    }

    #[test]
    fn fail_fast_stops_early() {
        let c = code(2, "0000\n0001\n0011\n0111\n");
        let opts = ValidationOptions { fail_fast: true };
        let r = validate(&c, SimilarityKind::Deletion, 1, false, opts).unwrap();
        assert_eq!(r.violations.len(), 1);
        let full = validate_distance_only(&c, SimilarityKind::Deletion, 1).unwrap();
        assert!(full.violations.len() > 1);
    }

    #[test]
    fn argument_errors() {
        let c = code(4, "0000\n3333\n");
        assert!(validate_dna_code(&c, SimilarityKind::Deletion, 0).is_err());
        assert!(validate_dna_code(&c, SimilarityKind::Deletion, 4).is_err());
        assert!(validate_dna_code(&[], SimilarityKind::Deletion, 1).is_err());
        let mixed = vec![c[0].clone(), QarySequence::new(4, vec![0, 0, 0]).unwrap()];
        assert!(validate_dna_code(&mixed, SimilarityKind::Deletion, 1).is_err());
    }

    #[test]
    fn upper_bounds() {
        assert_eq!(theorem21_upper_bound(4, 4).unwrap(), BigUint::from(34u32));
        assert_eq!(theorem21_upper_bound(2, 4).unwrap(), BigUint::from(5u32));
        assert_eq!(theorem21_upper_bound(2, 2).unwrap(), BigUint::from(2u32));
        assert_eq!(hamming_upper_bound(4, 4, 1).unwrap(), BigUint::from(64u32));
        assert_eq!(hamming_upper_bound(2, 4, 2).unwrap(), BigUint::from(3u32));
        assert_eq!(hamming_upper_bound(2, 4, 3).unwrap(), BigUint::from(3u32));
    }

    #[test]
    fn deletion_leading_term() {
        let v = |q, n, d| asymptotic_deletion_upper(q, n, d).unwrap().value.as_f64();
        assert!((v(2, 8, 1) - 32.0).abs() < 1e-9);
        assert!((v(4, 8, 1) - 65536.0 / 24.0).abs() < 1e-9);
        assert!((v(2, 8, 2) - 8.0).abs() < 1e-9);
        assert_eq!(asymptotic_deletion_upper(2, 8, 1).unwrap().mode, BoundMode::Asymptotic);
    }

    #[test]
    fn parity_code_rc_closure() {
        for (q, n) in [(4, 4), (2, 6)] {
            assert!(crate::sequence::all_sequences(q, n)
                .filter(|x| x.is_parity_checked())
                .all(|x| x.reverse_complement().is_parity_checked()));
        }
    }
}
