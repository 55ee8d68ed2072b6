//! Counting bounds, the random coding size bound and rate lower bounds.
//!
//! Counting and probability arithmetic is exact (big integers and big
//! rationals); entropies, rates and roots are `f64`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::combinatorics::{binomial, factorial, pow};
use crate::error::{Error, Result};
use crate::limits::EnumerationCap;
use crate::numeric::bisect;
use crate::search::p1_p2_exact;
use crate::sequence::check_alphabet;
use crate::similarity::SimilarityKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundMode {
    /// Integer or rational formula evaluated without approximation.
    Exact,
    /// A valid bound computed from upper bounds on its ingredients.
    AnalyticBound,
    /// Leading term of an asymptotic formula; the `o(1)` factor is dropped.
    Asymptotic,
}

impl BoundMode {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundMode::Exact => "exact",
            BoundMode::AnalyticBound => "analytic-bound",
            BoundMode::Asymptotic => "asymptotic",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum BoundValue {
    Integer(BigUint),
    Rational(BigRational),
    Float(f64),
}

impl BoundValue {
    pub fn as_f64(&self) -> f64 {
        match self {
            BoundValue::Integer(v) => v.to_f64().unwrap_or(f64::INFINITY),
            BoundValue::Rational(v) => rational_to_f64(v),
            BoundValue::Float(v) => *v,
        }
    }

    pub fn as_integer(&self) -> Option<&BigUint> {
        match self {
            BoundValue::Integer(v) => Some(v),
            _ => None,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            BoundValue::Integer(v) => json!(v.to_string()),
            BoundValue::Rational(v) => json!(format!("{}/{}", v.numer(), v.denom())),
            BoundValue::Float(v) => json!(crate::report::fixed(*v)),
        }
    }
}

/// Parameters a bound was evaluated at.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BoundParams {
    pub q: u8,
    pub n: Option<usize>,
    pub distance: Option<usize>,
    pub d: Option<f64>,
    pub kind: Option<SimilarityKind>,
}

impl BoundParams {
    pub fn length(q: u8, n: usize, distance: usize, kind: Option<SimilarityKind>) -> Self {
        Self {
            q,
            n: Some(n),
            distance: Some(distance),
            d: None,
            kind,
        }
    }

    pub fn fraction(q: u8, d: f64, kind: SimilarityKind) -> Self {
        Self {
            q,
            n: None,
            distance: None,
            d: Some(d),
            kind: Some(kind),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub name: String,
    pub params: BoundParams,
    pub value: BoundValue,
    pub mode: BoundMode,
    /// The bound carries no information (clamped to zero).
    pub vacuous: bool,
    pub note: Option<String>,
}

impl BoundReport {
    pub fn to_json(&self) -> Value {
        let mut params = BTreeMap::new();
        params.insert("q", json!(self.params.q));
        if let Some(n) = self.params.n {
            params.insert("n", json!(n));
        }
        if let Some(d) = self.params.distance {
            params.insert("distance", json!(d));
        }
        if let Some(d) = self.params.d {
            params.insert("d", json!(crate::report::fixed(d)));
        }
        if let Some(k) = self.params.kind {
            params.insert("kind", json!(k.as_str()));
        }
        let mut v = json!({
            "name": self.name,
            "params": params,
            "value": self.value.to_json(),
            "value_f64": crate::report::fixed(self.value.as_f64()),
            "mode": self.mode.as_str(),
            "vacuous": self.vacuous,
        });
        if let Some(note) = &self.note {
            v["note"] = json!(note);
        }
        v
    }
}

/// Root of a rate bound: the distance fraction below which the bound is
/// positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CriticalPoint {
    pub q: u8,
    pub kind: SimilarityKind,
    pub d_star: f64,
    /// `|lhs - rhs|` of the defining equation at `d_star`.
    pub residual: f64,
    /// The root sits at the right end of the domain (block kind, `d = 1/2`).
    pub boundary: bool,
}

impl CriticalPoint {
    pub fn to_json(&self) -> Value {
        json!({
            "q": self.q,
            "kind": self.kind.as_str(),
            "d_star": crate::report::fixed(self.d_star),
            "residual": crate::report::fixed(self.residual),
            "boundary": self.boundary,
        })
    }
}

pub(crate) fn rational_to_f64(v: &BigRational) -> f64 {
    let (n, d) = (v.numer(), v.denom());
    match (n.to_f64(), d.to_f64()) {
        (Some(a), Some(b)) if a.is_finite() && b.is_finite() => a / b,
        _ => {
            // Scale both down to keep the quotient representable.
            let shift = n.bits().max(d.bits()).saturating_sub(1000);
            let a = (n >> shift as usize).to_f64().unwrap_or(f64::NAN);
            let b = (d >> shift as usize).to_f64().unwrap_or(f64::NAN);
            a / b
        }
    }
}

/// `h_q(u) = -u log_q u - (1-u) log_q (1-u)`, with `h_q(0) = h_q(1) = 0`.
pub fn entropy(q: u8, u: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&u) {
        return Err(Error::invalid(format!("entropy argument must lie in [0, 1], got {u}")));
    }
    if q < 2 {
        return Err(Error::invalid("entropy base must be at least 2"));
    }
    Ok(entropy_unchecked(q as f64, u))
}

fn entropy_unchecked(q: f64, u: f64) -> f64 {
    if u <= 0.0 || u >= 1.0 {
        return 0.0;
    }
    -(u * u.ln() + (1.0 - u) * (1.0 - u).ln()) / q.ln()
}

/// Number of length-`n` supersequences of any fixed length-`s` word:
/// `B_q(n, s) = sum_{k=0}^{n-s} C(n, k) (q-1)^k`.
pub fn insertion_count(q: u8, n: usize, s: usize) -> Result<BigUint> {
    if s > n {
        return Err(Error::invalid(format!("need s <= n, got s={s}, n={n}")));
    }
    let (q, n) = (q as u64, n as u64);
    Ok((0..=(n - s as u64)).map(|k| binomial(n, k) * pow(q - 1, k)).sum())
}

/// Ways to put `marbles` indistinguishable marbles in `boxes` boxes, none empty.
fn marbles_nonempty(marbles: u64, boxes: u64) -> BigUint {
    if boxes == 0 || marbles < boxes {
        return BigUint::zero();
    }
    binomial(marbles - 1, boxes - 1)
}

/// Ways to put `marbles` indistinguishable marbles in `boxes` boxes.
fn marbles_any(marbles: u64, boxes: u64) -> BigUint {
    if boxes == 0 {
        return if marbles == 0 { BigUint::one() } else { BigUint::zero() };
    }
    binomial(marbles + boxes - 1, boxes - 1)
}

/// Upper bounds on `|P(n, s)|` (ordered pairs with similarity `s`) and on
/// `|P̄(n, s)|` (words with similarity `s` to their own reverse complement),
/// for the block and deletion similarities. The self bound is zero for odd
/// `s`.
pub fn counting_bounds(
    q: u8,
    n: usize,
    s: usize,
    kind: SimilarityKind,
) -> Result<(BigUint, BigUint)> {
    check_alphabet(q)?;
    if s < 1 || s > n {
        return Err(Error::invalid(format!("need 1 <= s <= n, got s={s}, n={n}")));
    }
    let (qq, nn, ss) = (q as u64, n as u64, s as u64);
    match kind {
        SimilarityKind::Block => {
            let jmax = ss.min(nn - ss + 1);
            let mut pair = BigUint::zero();
            let mut selfrc = BigUint::zero();
            let free = pow(qq, nn - ss);
            for j in 1..=jmax {
                // partitions of the common word into j blocks, times fillings
                // of the j+1 gaps with the n-s extra letters (j-1 of them
                // reserved as separators)
                let fill = &free * marbles_any(nn - ss - (j - 1), j + 1);
                pair += marbles_nonempty(ss, j) * &fill * &fill;
                if ss % 2 == 0 {
                    selfrc += binomial(ss / 2 - 1, j.div_ceil(2) - 1) * &fill;
                }
            }
            pair *= pow(qq, ss);
            if ss % 2 == 0 {
                selfrc *= pow(qq, ss / 2);
            }
            Ok((pair, selfrc))
        }
        SimilarityKind::Deletion => {
            let b = insertion_count(q, n, s)?;
            let pair = pow(qq, ss) * &b * &b;
            let selfrc = if ss % 2 == 0 {
                pow(qq, ss / 2) * b
            } else {
                BigUint::zero()
            };
            Ok((pair, selfrc))
        }
        SimilarityKind::Additive => Err(Error::unsupported(
            "counting bounds are defined for the deletion and block similarities",
        )),
    }
}

/// `max_{1 <= j <= min(s, n-s+1)} C(s-1, j-1) C(n-s+1, j)^2`.
pub fn bmax(n: usize, s: usize) -> Result<BigUint> {
    if s < 1 || s > n {
        return Err(Error::invalid(format!("need 1 <= s <= n, got s={s}, n={n}")));
    }
    let (nn, ss) = (n as u64, s as u64);
    Ok((1..=ss.min(nn - ss + 1))
        .map(|j| {
            let c = binomial(nn - ss + 1, j);
            binomial(ss - 1, j - 1) * &c * c
        })
        .max()
        .unwrap_or_default())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RandomCodingMode {
    /// Tail probabilities from the exact similarity distributions.
    Exact,
    /// Tail probabilities replaced by the counting upper bounds.
    Analytic,
}

/// The random coding lower bound `floor((1/2 - P1) / (2 P2)) - 1` on the
/// maximal size of DNA `(n, D)`-codes, clamped at zero.
pub fn random_coding_size_bound(
    q: u8,
    n: usize,
    distance: usize,
    kind: SimilarityKind,
    mode: RandomCodingMode,
    cap: EnumerationCap,
) -> Result<BoundReport> {
    check_alphabet(q)?;
    if distance < 1 || distance + 1 > n {
        return Err(Error::invalid(format!(
            "distance must satisfy 1 <= D <= n-1, got D={distance} with n={n}"
        )));
    }
    let (p1, p2, report_mode) = match mode {
        RandomCodingMode::Exact => {
            let (p1, p2) = p1_p2_exact(q, n, distance, kind, cap)?;
            (p1, p2, BoundMode::Exact)
        }
        RandomCodingMode::Analytic => {
            let mut pair_tail = BigUint::zero();
            let mut self_tail = BigUint::zero();
            for t in 0..=distance {
                let (pair, selfrc) = counting_bounds(q, n, n - t, kind)?;
                pair_tail += pair;
                self_tail += selfrc;
            }
            let qn = BigInt::from(pow(q as u64, n as u64));
            let p1 = BigRational::new(BigInt::from(self_tail), qn.clone());
            let p2 = BigRational::new(BigInt::from(pair_tail), &qn * &qn);
            (p1, p2, BoundMode::AnalyticBound)
        }
    };
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let slack = &half - &p1;
    let raw: BigInt = if slack.is_positive() {
        let ratio = slack / (BigRational::from_integer(BigInt::from(2)) * &p2);
        ratio.numer().div_floor(ratio.denom()) - BigInt::one()
    } else {
        BigInt::from(-1)
    };
    let vacuous = !raw.is_positive();
    let value = if vacuous {
        BigUint::zero()
    } else {
        raw.to_biguint().expect("positive")
    };
    Ok(BoundReport {
        name: "random_coding_size_bound".into(),
        params: BoundParams::length(q, n, distance, Some(kind)),
        value: BoundValue::Integer(value),
        mode: report_mode,
        vacuous,
        note: Some(format!(
            "P1={}/{}, P2={}/{}",
            p1.numer(),
            p1.denom(),
            p2.numer(),
            p2.denom()
        )),
    })
}

const V_STEP_TOL: f64 = 1e-12;
const V_MAX_STEPS: usize = 10_000;
const V_RESIDUAL_TOL: f64 = 1e-9;

/// Left side minus right side of `((1-d)/v - 1)(d/v - 1)^2 = 1`.
pub fn v_equation_residual(d: f64, v: f64) -> f64 {
    ((1.0 - d) / v - 1.0) * (d / v - 1.0).powi(2) - 1.0
}

/// The root `v in (0, d)` of `((1-d)/v - 1)(d/v - 1)^2 = 1`, by fixed-point
/// iteration `w <- 1 + 1 / sqrt((1-d)/d * w - 1)` from `w = 2`, `v = d / w`.
pub fn v_of_d(d: f64) -> Result<f64> {
    if !(d > 0.0 && d < 0.5) {
        return Err(Error::invalid(format!("v(d) needs 0 < d < 1/2, got {d}")));
    }
    solve_v(d)
}

/// As [`v_of_d`] but also accepts the endpoint `d = 1/2`, where the
/// iteration is stationary at `w = 2`.
fn solve_v(d: f64) -> Result<f64> {
    let ratio = (1.0 - d) / d;
    let mut w = 2.0f64;
    for _ in 0..V_MAX_STEPS {
        let next = 1.0 + 1.0 / (ratio * w - 1.0).sqrt();
        if !next.is_finite() {
            return Err(Error::NumericalFailure(format!("v(d) iteration diverged at d={d}, w={w}")));
        }
        let step = (next - w).abs();
        w = next;
        if step < V_STEP_TOL {
            let v = d / w;
            let residual = v_equation_residual(d, v);
            if residual.abs() >= V_RESIDUAL_TOL {
                return Err(Error::NumericalFailure(format!(
                    "v(d) at d={d}: residual {residual:e} after convergence"
                )));
            }
            return Ok(v);
        }
    }
    Err(Error::NumericalFailure(format!(
        "v(d) iteration did not converge in {V_MAX_STEPS} steps at d={d} (last w={w})"
    )))
}

/// `E_q(d) = (1-d) h_q(v/(1-d)) + 2d h_q(v/d)` with `v = v(d)`, on `(0, 1/2]`.
pub fn block_exponent(q: u8, d: f64) -> Result<f64> {
    check_alphabet(q)?;
    if !(d > 0.0 && d <= 0.5) {
        return Err(Error::invalid(format!("block exponent needs 0 < d <= 1/2, got {d}")));
    }
    let v = solve_v(d)?;
    let q = q as f64;
    Ok((1.0 - d) * entropy_unchecked(q, v / (1.0 - d)) + 2.0 * d * entropy_unchecked(q, v / d))
}

fn log_q(q: f64, x: f64) -> f64 {
    x.ln() / q.ln()
}

fn deletion_rate(q: f64, d: f64) -> f64 {
    1.0 + d - 2.0 * (d * log_q(q, q - 1.0) + entropy_unchecked(q, d))
}

fn additive_rate(q: f64, d: f64) -> f64 {
    1.0 - entropy_unchecked(q, d) - d * log_q(q, q - 1.0)
}

/// Right end of the domain of `rate_lower` for `kind`.
pub fn rate_domain_limit(q: u8, kind: SimilarityKind) -> f64 {
    match kind {
        SimilarityKind::Block => 0.5,
        _ => (q as f64 - 1.0) / q as f64,
    }
}

/// Rate lower bound at distance fraction `d`:
/// * deletion: `1 + d - 2 [d log_q(q-1) + h_q(d)]`, `0 < d < (q-1)/q`;
/// * block: `(1 - d) - E_q(d)`, `0 < d <= 1/2`;
/// * additive (Gilbert–Varshamov): `1 - h_q(d) - d log_q(q-1)`, `0 < d < (q-1)/q`.
pub fn rate_lower(q: u8, d: f64, kind: SimilarityKind) -> Result<BoundReport> {
    check_alphabet(q)?;
    let limit = rate_domain_limit(q, kind);
    let in_domain = match kind {
        SimilarityKind::Block => d > 0.0 && d <= limit,
        _ => d > 0.0 && d < limit,
    };
    if !in_domain {
        return Err(Error::invalid(format!(
            "{kind} rate bound is defined for 0 < d {} {limit}, got {d}",
            if kind == SimilarityKind::Block { "<=" } else { "<" }
        )));
    }
    let qf = q as f64;
    let value = match kind {
        SimilarityKind::Deletion => deletion_rate(qf, d),
        SimilarityKind::Block => (1.0 - d) - block_exponent(q, d)?,
        SimilarityKind::Additive => additive_rate(qf, d),
    };
    Ok(BoundReport {
        name: format!("{kind}_rate_lower"),
        params: BoundParams::fraction(q, d, kind),
        value: BoundValue::Float(value),
        mode: BoundMode::AnalyticBound,
        vacuous: value <= 0.0,
        note: None,
    })
}

/// Rate bound sampled at `steps` evenly spaced points of `[from, to]`.
pub fn rate_curve(
    q: u8,
    kind: SimilarityKind,
    from: f64,
    to: f64,
    steps: usize,
) -> Result<Vec<(f64, f64)>> {
    if steps == 0 {
        return Err(Error::invalid("curve needs at least one point"));
    }
    (0..steps)
        .map(|i| {
            let d = if steps == 1 {
                from
            } else {
                from + (to - from) * i as f64 / (steps - 1) as f64
            };
            rate_lower(q, d, kind).map(|r| (d, r.value.as_f64()))
        })
        .collect()
}

const ROOT_TOL: f64 = 1e-12;
const ROOT_MAX_ITER: usize = 200;
const BOUNDARY_TOL: f64 = 1e-12;

/// The distance fraction at which the rate bound for `kind` vanishes.
///
/// Deletion: root of `(1+d)/2 = d log_q(q-1) + h_q(d)` on `(0, (q-1)/q)`.
/// Block: root of `1 - d = E_q(d)` on `(0, 1/2]`; when `1 - d >= E_q(d)`
/// still holds at `d = 1/2` the root is reported as the boundary `1/2`.
pub fn critical_fraction(q: u8, kind: SimilarityKind) -> Result<CriticalPoint> {
    check_alphabet(q)?;
    let qf = q as f64;
    match kind {
        SimilarityKind::Deletion => {
            let f = |d: f64| (1.0 + d) / 2.0 - d * log_q(qf, qf - 1.0) - entropy_unchecked(qf, d);
            let d_star = bisect(f, 1e-15, (qf - 1.0) / qf, ROOT_TOL, ROOT_MAX_ITER)?;
            Ok(CriticalPoint {
                q,
                kind,
                d_star,
                residual: f(d_star).abs(),
                boundary: false,
            })
        }
        SimilarityKind::Block => {
            let g = |d: f64| (1.0 - d) - block_exponent(q, d).unwrap_or(f64::NAN);
            let at_half = g(0.5);
            if at_half.is_nan() {
                return Err(Error::NumericalFailure("E_q(1/2) could not be evaluated".into()));
            }
            if at_half >= -BOUNDARY_TOL {
                return Ok(CriticalPoint {
                    q,
                    kind,
                    d_star: 0.5,
                    residual: at_half.abs(),
                    boundary: true,
                });
            }
            let d_star = bisect(g, 1e-9, 0.5, ROOT_TOL, ROOT_MAX_ITER)?;
            Ok(CriticalPoint {
                q,
                kind,
                d_star,
                residual: g(d_star).abs(),
                boundary: false,
            })
        }
        SimilarityKind::Additive => {
            let f = |d: f64| additive_rate(qf, d);
            let d_star = bisect(f, 1e-15, (qf - 1.0) / qf, ROOT_TOL, ROOT_MAX_ITER)?;
            Ok(CriticalPoint {
                q,
                kind,
                d_star,
                residual: f(d_star).abs(),
                boundary: false,
            })
        }
    }
}

/// Leading terms of the size lower bounds for fixed `D`:
/// deletion `1/4 D!^2 (q/(q-1)^2)^D q^n / n^{2D}`,
/// block `1/4 D!/q^D q^n / n^D`.
pub fn asymptotic_size_lower(
    q: u8,
    n: usize,
    distance: usize,
    kind: SimilarityKind,
) -> Result<BoundReport> {
    check_alphabet(q)?;
    if distance < 1 || n < 1 {
        return Err(Error::invalid("need D >= 1 and n >= 1"));
    }
    let (qf, nf, dd) = (q as f64, n as f64, distance as f64);
    let ln_fact = factorial(distance as u64)
        .to_f64()
        .map(f64::ln)
        .unwrap_or(f64::INFINITY);
    let ln_value = match kind {
        SimilarityKind::Deletion => {
            0.25f64.ln() + 2.0 * ln_fact + dd * (qf.ln() - 2.0 * (qf - 1.0).ln()) + nf * qf.ln()
                - 2.0 * dd * nf.ln()
        }
        SimilarityKind::Block => {
            0.25f64.ln() + ln_fact - dd * qf.ln() + nf * qf.ln() - dd * nf.ln()
        }
        SimilarityKind::Additive => {
            return Err(Error::unsupported(
                "asymptotic size bounds are given for the deletion and block similarities",
            ))
        }
    };
    Ok(BoundReport {
        name: format!("{kind}_size_lower_leading_term"),
        params: BoundParams::length(q, n, distance, Some(kind)),
        value: BoundValue::Float(ln_value.exp()),
        mode: BoundMode::Asymptotic,
        vacuous: false,
        note: Some("asymptotic, no o(1) term".into()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_values() {
        assert!((entropy(2, 0.5).unwrap() - 1.0).abs() < 1e-15);
        assert!((entropy(4, 0.5).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(entropy(2, 0.0).unwrap(), 0.0);
        assert_eq!(entropy(2, 1.0).unwrap(), 0.0);
        assert!(entropy(2, 1.5).is_err());
        for i in 1..100 {
            let u = i as f64 / 100.0;
            assert!((entropy(6, u).unwrap() - entropy(6, 1.0 - u).unwrap()).abs() < 1e-14);
        }
    }

    #[test]
    fn insertion_counts() {
        assert_eq!(insertion_count(4, 7, 7).unwrap(), BigUint::one());
        assert_eq!(insertion_count(2, 4, 2).unwrap(), BigUint::from(11u32));
        assert_eq!(insertion_count(4, 5, 0).unwrap(), pow(4, 5));
        assert!(insertion_count(2, 3, 4).is_err());
    }

    #[test]
    fn counting_bound_examples() {
        let (pair, _) = counting_bounds(2, 4, 4, SimilarityKind::Deletion).unwrap();
        assert_eq!(pair, BigUint::from(16u32));
        let (pair, _) = counting_bounds(2, 2, 1, SimilarityKind::Block).unwrap();
        assert_eq!(pair, BigUint::from(32u32));
        let (_, selfrc) = counting_bounds(2, 4, 3, SimilarityKind::Deletion).unwrap();
        assert!(selfrc.is_zero());
        let (_, selfrc) = counting_bounds(2, 5, 3, SimilarityKind::Block).unwrap();
        assert!(selfrc.is_zero());
        assert!(counting_bounds(2, 4, 0, SimilarityKind::Block).is_err());
        assert!(counting_bounds(2, 4, 2, SimilarityKind::Additive).is_err());
    }

    #[test]
    fn bmax_values() {
        for n in 1..10 {
            assert_eq!(bmax(n, n).unwrap(), BigUint::one());
        }
        assert_eq!(bmax(4, 3).unwrap(), BigUint::from(4u32));
        // B(n, n-k) ~ n^k / k!
        let b = bmax(200, 198).unwrap().to_f64().unwrap();
        let asym = 200.0f64.powi(2) / 2.0;
        assert!((b / asym - 1.0).abs() < 0.05, "{b} vs {asym}");
    }

    #[test]
    fn v_of_d_properties() {
        let v = v_of_d(0.25).unwrap();
        assert!(v_equation_residual(0.25, v).abs() < 1e-9);
        for d in [0.1, 0.2, 0.3, 0.4] {
            let v = v_of_d(d).unwrap();
            assert!(v > 0.0 && v < d);
        }
        assert!(v_of_d(0.5).is_err());
        assert!(v_of_d(0.0).is_err());
        assert!(v_of_d(-0.1).is_err());
    }

    #[test]
    fn rate_examples() {
        let r = rate_lower(4, 0.27029, SimilarityKind::Deletion).unwrap().value.as_f64();
        assert!(r.abs() < 1e-3);
        let r = rate_lower(4, 0.1, SimilarityKind::Deletion).unwrap().value.as_f64();
        assert!((r - 0.4725).abs() < 1e-4, "{r}");
        let r = rate_lower(2, 0.11, SimilarityKind::Additive).unwrap().value.as_f64();
        assert!((r - (1.0 - entropy(2, 0.11).unwrap())).abs() < 1e-15);
        assert!(rate_lower(2, 0.5, SimilarityKind::Additive).is_err());
        assert!(rate_lower(4, 0.6, SimilarityKind::Block).is_err());
        assert!(rate_lower(4, 0.0, SimilarityKind::Deletion).is_err());
    }

    #[test]
    fn block_rate_at_half_for_octal() {
        // E_8(1/2) = 3/2 h_8(1/2) = 1/2
        let r = rate_lower(8, 0.5, SimilarityKind::Block).unwrap().value.as_f64();
        assert!(r.abs() < 1e-12);
    }

    #[test]
    fn asymptotic_leading_terms() {
        let v = |k, q, n, d| asymptotic_size_lower(q, n, d, k).unwrap().value.as_f64();
        assert!((v(SimilarityKind::Deletion, 2, 10, 1) - 5.12).abs() < 1e-9);
        assert!((v(SimilarityKind::Block, 2, 10, 1) - 12.8).abs() < 1e-9);
        // shape: doubling n multiplies by q^n / 2^{2D} resp. q^n / 2^D
        let del = v(SimilarityKind::Deletion, 2, 20, 1) / v(SimilarityKind::Deletion, 2, 10, 1);
        assert!((del - 1024.0 / 4.0).abs() < 1e-6);
        let blk = v(SimilarityKind::Block, 4, 12, 2) / v(SimilarityKind::Block, 4, 6, 2);
        assert!((blk - 4096.0 / 4.0).abs() < 1e-6);
    }

    #[test]
    fn critical_fraction_ordering() {
        for q in [2u8, 4, 6] {
            let del = critical_fraction(q, SimilarityKind::Deletion).unwrap();
            let blk = critical_fraction(q, SimilarityKind::Block).unwrap();
            assert!(blk.d_star > del.d_star);
            assert!(del.residual <= 1e-9 && blk.residual <= 1e-9);
        }
        let p = critical_fraction(8, SimilarityKind::Block).unwrap();
        assert!(p.boundary);
        assert_eq!(p.d_star, 0.5);
    }

    #[test]
    fn gilbert_varshamov_root() {
        // binary GV bound vanishes where h_2(d) = 1, i.e. d = 1/2.
        let p = critical_fraction(2, SimilarityKind::Additive).unwrap();
        assert!((p.d_star - 0.5).abs() < 1e-9);
    }
}
