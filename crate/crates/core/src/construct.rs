//! Orbit-based DNA codes of block distance one, Tenengolts single-deletion
//! codes and their symmetrization into DNA codes.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::code::{validate_distance_only, DnaCode};
use crate::combinatorics::pow;
use crate::error::{Error, Result};
use crate::limits::EnumerationCap;
use crate::sequence::{check_alphabet, Composition, Orbit, OrbitClass, QarySequence};
use crate::similarity::SimilarityKind;
use crate::text::render;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseUsed {
    /// `n = qk`, `k` odd.
    OddK,
    /// `q = 2^m`, `n = 2^{m+k}`, `k >= 1`.
    PowerOfTwo,
    /// `n = qk`, `k` even, other than the power-of-two family.
    EvenK,
    /// Symmetrization of a single-deletion code.
    Symmetrized,
}

impl CaseUsed {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseUsed::OddK => "T31-odd-k",
            CaseUsed::PowerOfTwo => "T31-power-of-two",
            CaseUsed::EvenK => "T31-even-k",
            CaseUsed::Symmetrized => "T32",
        }
    }
}

impl fmt::Display for CaseUsed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Size a construction is expected to reach.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClaimedSize {
    Exact(BigUint),
    AtLeast(BigRational),
}

impl ClaimedSize {
    pub fn is_met_by(&self, size: usize) -> bool {
        match self {
            ClaimedSize::Exact(v) => *v == BigUint::from(size),
            ClaimedSize::AtLeast(v) => BigRational::from_integer(BigInt::from(size)) >= *v,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            ClaimedSize::Exact(v) => json!({ "exact": v.to_string() }),
            ClaimedSize::AtLeast(v) => {
                let shown = if v.is_integer() {
                    v.numer().to_string()
                } else {
                    format!("{}/{}", v.numer(), v.denom())
                };
                json!({ "at_least": shown })
            }
        }
    }
}

impl fmt::Display for ClaimedSize {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClaimedSize::Exact(v) => write!(f, "{v}"),
            ClaimedSize::AtLeast(v) if v.is_integer() => write!(f, ">= {}", v.numer()),
            ClaimedSize::AtLeast(v) => write!(f, ">= {}/{}", v.numer(), v.denom()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionReport {
    pub code: DnaCode,
    pub claimed_size: ClaimedSize,
    pub achieved_size: usize,
    pub case_used: CaseUsed,
    /// Always true: a construction that fails validation is an error.
    pub validated: bool,
    /// Deviations from the theorem's expectations, in plain words.
    pub anomalies: Vec<String>,
}

impl ConstructionReport {
    pub fn to_json(&self, acgt: bool) -> Value {
        json!({
            "case_used": self.case_used.as_str(),
            "claimed_size": self.claimed_size.to_json(),
            "claim_met": self.claimed_size.is_met_by(self.achieved_size),
            "achieved_size": self.achieved_size,
            "validated": self.validated,
            "anomalies": self.anomalies,
            "q": self.code.q(),
            "n": self.code.n(),
            "kind": self.code.kind().as_str(),
            "distance": self.code.distance(),
            "code": self.code.codewords().iter().map(|x| render(x, acgt)).collect::<Vec<_>>(),
        })
    }
}

fn power_of_two_exponent(v: usize) -> Option<u32> {
    v.is_power_of_two().then(|| v.trailing_zeros())
}

fn dispatch(q: u8, n: usize) -> Result<CaseUsed> {
    check_alphabet(q)?;
    if n == 0 || !n.is_multiple_of(q as usize) {
        return Err(Error::unsupported(format!(
            "orbit construction needs n divisible by q, got q={q}, n={n}"
        )));
    }
    let k = n / q as usize;
    if k % 2 == 1 {
        return Ok(CaseUsed::OddK);
    }
    match (power_of_two_exponent(q as usize), power_of_two_exponent(n)) {
        (Some(m), Some(e)) if e > m => Ok(CaseUsed::PowerOfTwo),
        _ => Ok(CaseUsed::EvenK),
    }
}

fn claimed_size(q: u8, n: usize, case: CaseUsed) -> ClaimedSize {
    let (qq, nn) = (q as u64, n as u64);
    let base = pow(qq, nn - 1);
    match case {
        CaseUsed::OddK => ClaimedSize::Exact((base + BigUint::from(q)) / 2u32),
        CaseUsed::PowerOfTwo => ClaimedSize::Exact(base / 2u32),
        _ => {
            // 1/2 (q^{n-1} - (q^{n/2+1} - 1)/(q-1))
            let big = |v: BigUint| BigRational::from_integer(BigInt::from(v));
            let short = big(pow(qq, nn / 2 + 1) - 1u32) / big(BigUint::from(qq - 1));
            ClaimedSize::AtLeast((big(base) - short) / big(BigUint::from(2u32)))
        }
    }
}

/// What one orbit contributes to the code.
struct Selection {
    words: Vec<QarySequence>,
    anomaly: Option<String>,
}

/// Odd shifts of a self reverse complementary member of a self-RC orbit.
/// When `ℓ = 2 (mod 4)` the shift by `ℓ/2` is the other self-RC member
/// and is dropped.
pub fn odd_shift_selection(orbit: &Orbit) -> Result<Vec<QarySequence>> {
    let offsets = orbit.self_rc_offsets();
    let anchor = offsets
        .first()
        .map(|&k| orbit.members()[k].clone())
        .ok_or_else(|| Error::invalid("orbit has no self reverse complementary member"))?;
    let len = orbit.size();
    Ok((1..len)
        .step_by(2)
        .map(|m| anchor.cyclic_shift(m as i64))
        .filter(|x| !x.is_self_reverse_complementary())
        .collect())
}

/// Shifts `0, 2, 4, ..` of an orbit forming a maximum independent set of the
/// cyclic adjacency graph, together with their reverse complements.
pub fn even_shift_selection(orbit: &Orbit) -> Vec<QarySequence> {
    let len = orbit.size();
    let last = if len.is_multiple_of(2) { len - 2 } else { len.saturating_sub(3) };
    let rep = orbit.representative();
    let mut out = Vec::new();
    if len < 2 {
        return out;
    }
    for k in (0..=last).step_by(2) {
        let x = rep.cyclic_shift(k as i64);
        out.push(x.reverse_complement());
        out.push(x);
    }
    out
}

fn select(orbit: &Orbit, case: CaseUsed, n: usize) -> Result<Selection> {
    let full_only = case == CaseUsed::EvenK;
    if full_only && orbit.size() != n {
        return Ok(Selection {
            words: Vec::new(),
            anomaly: None,
        });
    }
    match orbit.class() {
        OrbitClass::G1 => {
            let x = orbit.representative();
            // each constant pair once, from its smaller member
            let words = if *x < x.reverse_complement() {
                vec![x.clone(), x.reverse_complement()]
            } else {
                Vec::new()
            };
            Ok(Selection {
                words,
                anomaly: None,
            })
        }
        OrbitClass::G2 => Ok(Selection {
            words: Vec::new(),
            anomaly: None,
        }),
        OrbitClass::G3 => {
            let words = odd_shift_selection(orbit)?;
            let len = orbit.size();
            let anomaly = (!len.is_multiple_of(4)).then(|| {
                format!(
                    "self-RC orbit of {:?} has size {len}, not divisible by 4; kept {} of {len} shifts",
                    orbit.representative(),
                    words.len()
                )
            });
            Ok(Selection { words, anomaly })
        }
        OrbitClass::G4 => {
            let partner = orbit.partner().expect("paired orbit has a partner");
            if partner == orbit.representative() {
                return Err(Error::ConstructionInvalid(format!(
                    "orbit of {:?} is its own reverse complement orbit",
                    orbit.representative()
                )));
            }
            let words = if orbit.representative() < partner {
                even_shift_selection(orbit)
            } else {
                Vec::new()
            };
            Ok(Selection {
                words,
                anomaly: None,
            })
        }
    }
}

/// Block-distance-one DNA code from the orbits of the parity-check code
/// `M_q(n)`, for `n` divisible by `q`.
pub fn construct_theorem31(q: u8, n: usize, cap: EnumerationCap) -> Result<ConstructionReport> {
    let case = dispatch(q, n)?;
    if n < 2 {
        return Err(Error::unsupported("orbit construction needs n >= 2"));
    }
    let size = cap.check_power("word space", q, n)?;
    let selections: Vec<Selection> = (0..size)
        .into_par_iter()
        .map(|i| QarySequence::from_index(q, n, i))
        .filter(|x| x.is_parity_checked() && x.is_orbit_representative())
        .map(|x| select(&Orbit::of(&x), case, n))
        .collect::<Result<_>>()?;

    let mut anomalies: Vec<String> = Vec::new();
    let mut words = Vec::new();
    for s in selections {
        words.extend(s.words);
        anomalies.extend(s.anomaly);
    }
    let claimed = claimed_size(q, n, case);
    finish(words, SimilarityKind::Block, claimed, case, anomalies, cap)
}

fn finish(
    words: Vec<QarySequence>,
    kind: SimilarityKind,
    claimed: ClaimedSize,
    case: CaseUsed,
    mut anomalies: Vec<String>,
    cap: EnumerationCap,
) -> Result<ConstructionReport> {
    let pairs = (words.len() as u64).saturating_mul(words.len() as u64 / 2);
    if pairs > cap.get() {
        return Err(Error::CapExceeded {
            what: "validation pairs".into(),
            required: pairs.to_string(),
            cap: cap.get(),
        });
    }
    let code = DnaCode::try_new(words, kind, 1)
        .map_err(|e| Error::ConstructionInvalid(format!("{case}: {e}")))?;
    let achieved = code.size();
    if let ClaimedSize::Exact(v) = &claimed {
        if v.to_u64().is_some_and(|v| v % 2 == 1) {
            anomalies.push(format!("claimed size {v} is odd, but DNA codes have even size"));
        }
    }
    if !claimed.is_met_by(achieved) {
        anomalies.push(format!("achieved size {achieved} differs from claimed {claimed}"));
    }
    Ok(ConstructionReport {
        code,
        claimed_size: claimed,
        achieved_size: achieved,
        case_used: case,
        validated: true,
        anomalies,
    })
}

fn check_class(q: u8, n: usize, beta: u8, gamma: usize) -> Result<()> {
    check_alphabet(q)?;
    if n == 0 {
        return Err(Error::invalid("length must be at least 1"));
    }
    if beta >= q || gamma >= n {
        return Err(Error::invalid(format!(
            "need 0 <= beta < {q} and 0 <= gamma < {n}, got beta={beta}, gamma={gamma}"
        )));
    }
    Ok(())
}

/// The Tenengolts class `T(beta, gamma)`, by enumeration of `A^n`.
pub fn tenengolts_code(
    q: u8,
    n: usize,
    beta: u8,
    gamma: usize,
    cap: EnumerationCap,
) -> Result<Vec<QarySequence>> {
    check_class(q, n, beta, gamma)?;
    let size = cap.check_power("word space", q, n)?;
    Ok((0..size)
        .into_par_iter()
        .map(|i| QarySequence::from_index(q, n, i))
        .filter(|x| x.tenengolts_class() == (beta, gamma))
        .collect())
}

/// The largest class `T(0, gamma)`, ties to the smallest `gamma`.
pub fn best_tenengolts_class(
    q: u8,
    n: usize,
    cap: EnumerationCap,
) -> Result<(usize, Vec<QarySequence>)> {
    check_class(q, n, 0, 0)?;
    let size = cap.check_power("word space", q, n)?;
    let mut counts = vec![0usize; n];
    for i in 0..size {
        let x = QarySequence::from_index(q, n, i);
        if let (0, g) = x.tenengolts_class() {
            counts[g] += 1;
        }
    }
    let best = (0..n)
        .max_by_key(|&g| (counts[g], std::cmp::Reverse(g)))
        .expect("n >= 1");
    Ok((best, tenengolts_code(q, n, 0, best, cap)?))
}

/// Turns a single-deletion code inside `M_q(n)`, `n = qk` with `k` odd, into
/// a DNA code at least as large: per composition pair `(c, c̄)` keep the
/// codewords of the better-populated side and add their reverse complements.
pub fn symmetrize_theorem32(
    code: &[QarySequence],
    cap: EnumerationCap,
) -> Result<ConstructionReport> {
    let first = code
        .first()
        .ok_or_else(|| Error::invalid("input code is empty"))?;
    let (q, n) = (first.q(), first.len());
    if !n.is_multiple_of(q as usize) || (n / q as usize).is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "length check failed: need n = qk with k odd, got q={q}, n={n}"
        )));
    }
    if let Some(x) = code.iter().find(|x| !x.is_parity_checked()) {
        return Err(Error::invalid(format!(
            "parity check failed: {x:?} is not in the parity-check code"
        )));
    }
    let report = validate_distance_only(code, SimilarityKind::Deletion, 1)?;
    if !report.valid {
        return Err(Error::invalid(format!(
            "distance check failed: {}",
            report.violations[0].describe(false)
        )));
    }

    let mut groups: BTreeMap<Composition, Vec<QarySequence>> = BTreeMap::new();
    for x in code {
        groups.entry(x.composition()).or_default().push(x.clone());
    }
    let mut words = Vec::new();
    for (c, members) in &groups {
        let mirror = c.reversed();
        if mirror == *c {
            return Err(Error::invalid(format!(
                "composition check failed: {:?} equals its reversal",
                c.counts()
            )));
        }
        let other = groups.get(&mirror).map_or(0, Vec::len);
        let keep = members.len() > other || (members.len() == other && *c < mirror);
        if keep {
            for x in members {
                words.push(x.clone());
                words.push(x.reverse_complement());
            }
        }
    }
    let claimed = ClaimedSize::AtLeast(BigRational::from_integer(BigInt::from(code.len())));
    finish(
        words,
        SimilarityKind::Deletion,
        claimed,
        CaseUsed::Symmetrized,
        Vec::new(),
        cap,
    )
}

/// `q^{n-1} / n`, the guaranteed size of the symmetrized best Tenengolts
/// class when `n = qk` with `k` odd.
pub fn corollary_lower_bound(q: u8, n: usize) -> Result<BigRational> {
    check_alphabet(q)?;
    if n == 0 || !n.is_multiple_of(q as usize) || (n / q as usize).is_multiple_of(2) {
        return Err(Error::unsupported(format!(
            "bound holds for n = qk with k odd, got q={q}, n={n}"
        )));
    }
    Ok(BigRational::new(
        BigInt::from(pow(q as u64, n as u64 - 1)),
        BigInt::from(n),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::validate_dna_code;

    fn cap() -> EnumerationCap {
        EnumerationCap::DEFAULT
    }

    #[test]
    fn case_dispatch() {
        assert_eq!(dispatch(4, 4).unwrap(), CaseUsed::OddK);
        assert_eq!(dispatch(2, 6).unwrap(), CaseUsed::OddK);
        assert_eq!(dispatch(2, 4).unwrap(), CaseUsed::PowerOfTwo);
        assert_eq!(dispatch(4, 16).unwrap(), CaseUsed::PowerOfTwo);
        assert_eq!(dispatch(6, 12).unwrap(), CaseUsed::EvenK);
        assert_eq!(dispatch(2, 12).unwrap(), CaseUsed::EvenK);
        assert!(matches!(dispatch(4, 6), Err(Error::UnsupportedParameters(_))));
    }

    #[test]
    fn quaternary_length_four() {
        let r = construct_theorem31(4, 4, cap()).unwrap();
        assert_eq!(r.achieved_size, 34);
        assert_eq!(r.claimed_size, ClaimedSize::Exact(BigUint::from(34u32)));
        assert!(r.anomalies.is_empty(), "{:?}", r.anomalies);
        assert!(validate_dna_code(r.code.codewords(), SimilarityKind::Block, 1).unwrap().valid);
    }

    #[test]
    fn binary_length_four() {
        let r = construct_theorem31(2, 4, cap()).unwrap();
        assert_eq!(r.case_used, CaseUsed::PowerOfTwo);
        assert_eq!(r.achieved_size, 4);
        assert!(r.claimed_size.is_met_by(4));
    }

    #[test]
    fn binary_length_six_reports_odd_claim() {
        let r = construct_theorem31(2, 6, cap()).unwrap();
        assert_eq!(r.claimed_size, ClaimedSize::Exact(BigUint::from(17u32)));
        assert_eq!(r.achieved_size % 2, 0);
        assert!(r.anomalies.iter().any(|a| a.contains("odd")));
    }

    #[test]
    fn tenengolts_examples() {
        let t = tenengolts_code(2, 4, 0, 2, cap()).unwrap();
        assert!(t.contains(&QarySequence::new(2, vec![0, 0, 0, 0]).unwrap()));
        let total: usize = (0..2u8)
            .flat_map(|b| (0..4).map(move |g| (b, g)))
            .map(|(b, g)| tenengolts_code(2, 4, b, g, cap()).unwrap().len())
            .sum();
        assert_eq!(total, 16);
        assert!(tenengolts_code(2, 4, 2, 0, cap()).is_err());
        let (_, best) = best_tenengolts_class(4, 4, cap()).unwrap();
        assert!(best.len() >= 16);
        let split: usize = (0..2)
            .map(|g| tenengolts_code(2, 2, 0, g, cap()).unwrap().len())
            .sum();
        assert_eq!(split, 2);
    }

    #[test]
    fn symmetrize_single_word() {
        let x = QarySequence::new(4, vec![0, 0, 0, 0]).unwrap();
        let r = symmetrize_theorem32(&[x], cap()).unwrap();
        assert_eq!(r.achieved_size, 2);
        let words: Vec<String> = r.code.codewords().iter().map(|x| render(x, false)).collect();
        assert_eq!(words, vec!["0000", "3333"]);
    }

    #[test]
    fn symmetrize_rejects_bad_input() {
        let odd = QarySequence::new(4, vec![0, 0, 0, 1]).unwrap();
        let err = symmetrize_theorem32(&[odd], cap()).unwrap_err();
        assert!(err.to_string().contains("parity check"));
        let long = QarySequence::new(2, vec![0, 0, 0, 0]).unwrap();
        assert!(symmetrize_theorem32(&[long], cap()).unwrap_err().to_string().contains("length"));
        assert!(symmetrize_theorem32(&[], cap()).is_err());
    }

    #[test]
    fn corollary_values() {
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(corollary_lower_bound(4, 4).unwrap(), r(16, 1));
        assert_eq!(corollary_lower_bound(2, 2).unwrap(), r(1, 1));
        assert_eq!(corollary_lower_bound(2, 6).unwrap(), r(32, 6));
        assert!(corollary_lower_bound(2, 4).is_err());
    }
}
