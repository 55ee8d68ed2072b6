//! Words over the even alphabet `{0, .., q-1}` and the operations the
//! constructions are built from: complementation, reversal, cyclic shifts,
//! orbits, compositions, parity and Tenengolts classes.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A letter of the alphabet `{0, .., q-1}`.
pub type Letter = u8;

/// Complement of a letter, `(q - 1) - a`.
///
/// Since `q` is even the complement never equals `a`.
pub fn complement_letter(q: u8, a: Letter) -> Result<Letter> {
    check_alphabet(q)?;
    if a >= q {
        return Err(Error::invalid(format!("letter {a} outside alphabet of size {q}")));
    }
    Ok(q - 1 - a)
}

pub(crate) fn check_alphabet(q: u8) -> Result<()> {
    if q < 2 || !q.is_multiple_of(2) {
        return Err(Error::invalid(format!("alphabet size must be even and >= 2, got {q}")));
    }
    Ok(())
}

/// A fixed-length word over `{0, .., q-1}` with `q` even.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QarySequence {
    q: u8,
    symbols: Vec<Letter>,
}

impl QarySequence {
    pub fn new(q: u8, symbols: Vec<Letter>) -> Result<Self> {
        check_alphabet(q)?;
        if symbols.is_empty() {
            return Err(Error::invalid("sequence length must be at least 1"));
        }
        if let Some(&bad) = symbols.iter().find(|&&s| s >= q) {
            return Err(Error::invalid(format!("letter {bad} outside alphabet of size {q}")));
        }
        Ok(Self { q, symbols })
    }

    /// Constructor for callers that already uphold the invariants.
    pub(crate) fn from_raw(q: u8, symbols: Vec<Letter>) -> Self {
        debug_assert!(q >= 2 && q.is_multiple_of(2) && !symbols.is_empty());
        debug_assert!(symbols.iter().all(|&s| s < q));
        Self { q, symbols }
    }

    /// The `index`-th word of `A^n` in lexicographic order (first letter most
    /// significant).
    pub fn from_index(q: u8, n: usize, mut index: u64) -> Self {
        let mut symbols = vec![0; n];
        for slot in symbols.iter_mut().rev() {
            *slot = (index % q as u64) as u8;
            index /= q as u64;
        }
        Self::from_raw(q, symbols)
    }

    /// Inverse of [`QarySequence::from_index`].
    pub fn index(&self) -> u64 {
        self.symbols
            .iter()
            .fold(0u64, |acc, &s| acc * self.q as u64 + s as u64)
    }

    pub fn q(&self) -> u8 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    /// Always false: length is at least one.
    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[Letter] {
        &self.symbols
    }

    pub fn reverse_complement(&self) -> Self {
        let top = self.q - 1;
        Self::from_raw(self.q, self.symbols.iter().rev().map(|&s| top - s).collect())
    }

    /// True iff the word equals its reverse complement. Never true for odd
    /// length: the centre letter would have to be its own complement.
    pub fn is_self_reverse_complementary(&self) -> bool {
        let n = self.len();
        let top = self.q - 1;
        (0..n / 2 + n % 2).all(|i| self.symbols[i] == top - self.symbols[n - 1 - i])
    }

    pub fn composition(&self) -> Composition {
        let mut counts = vec![0usize; self.q as usize];
        for &s in &self.symbols {
            counts[s as usize] += 1;
        }
        Composition { counts }
    }

    /// `(x_1 + .. + x_n) mod q`; zero exactly for members of the maximal
    /// parity-check code `M_q(n)`.
    pub fn parity_class(&self) -> u8 {
        (self.symbols.iter().map(|&s| s as u64).sum::<u64>() % self.q as u64) as u8
    }

    /// Membership in the maximal parity-check code `M_q(n)`.
    pub fn is_parity_checked(&self) -> bool {
        self.parity_class() == 0
    }

    /// The pair `(beta, gamma)` naming the class `T(beta, gamma)`:
    /// `beta` is the parity class and `gamma = sum_{i>=2} (i-1) a_i mod n`
    /// where `a_i = 1` iff `x_i >= x_{i-1}`.
    pub fn tenengolts_class(&self) -> (u8, usize) {
        let n = self.len();
        let weighted: usize = self
            .symbols
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[1] >= w[0])
            .map(|(i, _)| i + 1)
            .sum();
        (self.parity_class(), weighted % n)
    }

    /// `T_k(x)`, whose `i`-th letter is `x_{i+k mod n}`. Negative `k` shifts
    /// to the right.
    pub fn cyclic_shift(&self, k: i64) -> Self {
        let n = self.len();
        let k = k.rem_euclid(n as i64) as usize;
        let mut symbols = Vec::with_capacity(n);
        symbols.extend_from_slice(&self.symbols[k..]);
        symbols.extend_from_slice(&self.symbols[..k]);
        Self::from_raw(self.q, symbols)
    }

    /// Smallest `l >= 1` with `T_l(x) = x`; always divides `n`.
    pub fn orbit_size(&self) -> usize {
        let n = self.len();
        (1..=n)
            .filter(|l| n.is_multiple_of(*l))
            .find(|&l| (0..n).all(|i| self.symbols[i] == self.symbols[(i + l) % n]))
            .unwrap_or(n)
    }

    /// True iff no cyclic shift of `self` is lexicographically smaller.
    pub fn is_orbit_representative(&self) -> bool {
        let n = self.len();
        let s = &self.symbols;
        (1..n).all(|k| {
            for i in 0..n {
                let a = s[i];
                let b = s[(i + k) % n];
                if a != b {
                    return a < b;
                }
            }
            true
        })
    }

    pub fn orbit(&self) -> Orbit {
        Orbit::of(self)
    }
}

impl fmt::Debug for QarySequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q{}(", self.q)?;
        for &s in &self.symbols {
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

/// Symbol-count vector `(n_0, .., n_{q-1})` of a word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Composition {
    counts: Vec<usize>,
}

impl Composition {
    pub fn new(counts: Vec<usize>) -> Self {
        Self { counts }
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    /// Composition of the reverse complement: the count vector reversed.
    pub fn reversed(&self) -> Self {
        Self {
            counts: self.counts.iter().rev().copied().collect(),
        }
    }

    /// True iff `sum_x x * n_x == 0 (mod q)`, i.e. words with this
    /// composition lie in `M_q(n)`.
    pub fn is_admissible(&self, q: u8) -> bool {
        let weighted: u64 = self
            .counts
            .iter()
            .enumerate()
            .map(|(x, &c)| x as u64 * c as u64)
            .sum();
        weighted.is_multiple_of(q as u64)
    }
}

/// Classification of an orbit relative to the reverse complement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OrbitClass {
    /// Constant words, orbit size one.
    G1,
    /// Self reverse complementary orbits of size two.
    G2,
    /// Self reverse complementary orbits of size greater than two.
    G3,
    /// Orbits without self reverse complementary members; paired with a
    /// disjoint reverse complement orbit.
    G4,
}

/// The set of cyclic shifts of a word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    members: Vec<QarySequence>,
    class: OrbitClass,
    partner: Option<QarySequence>,
}

impl Orbit {
    pub fn of(x: &QarySequence) -> Self {
        let size = x.orbit_size();
        let shifts: Vec<QarySequence> = (0..size as i64).map(|k| x.cyclic_shift(k)).collect();
        let (start, _) = shifts
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.cmp(b.1))
            .expect("orbit is non-empty");
        let rep = shifts[start].clone();
        let members: Vec<QarySequence> = (0..size as i64).map(|k| rep.cyclic_shift(k)).collect();

        let self_rc = members.iter().any(QarySequence::is_self_reverse_complementary);
        let (class, partner) = if size == 1 {
            (OrbitClass::G1, None)
        } else if self_rc && size == 2 {
            (OrbitClass::G2, None)
        } else if self_rc {
            (OrbitClass::G3, None)
        } else {
            let rc = rep.reverse_complement();
            let partner_rep = (0..size as i64)
                .map(|k| rc.cyclic_shift(k))
                .min()
                .expect("orbit is non-empty");
            (OrbitClass::G4, Some(partner_rep))
        };
        Self {
            members,
            class,
            partner,
        }
    }

    /// Lexicographically smallest member.
    pub fn representative(&self) -> &QarySequence {
        &self.members[0]
    }

    /// Members in order `T_0(rep), T_1(rep), ..`.
    pub fn members(&self) -> &[QarySequence] {
        &self.members
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn class(&self) -> OrbitClass {
        self.class
    }

    /// Representative of the reverse complement orbit, present for G4 only.
    pub fn partner(&self) -> Option<&QarySequence> {
        self.partner.as_ref()
    }

    pub fn partner_orbit(&self) -> Option<Orbit> {
        self.partner.as_ref().map(Orbit::of)
    }

    /// Shift offsets (relative to the representative) of the
    /// self reverse complementary members.
    pub fn self_rc_offsets(&self) -> Vec<usize> {
        self.members
            .iter()
            .enumerate()
            .filter(|(_, m)| m.is_self_reverse_complementary())
            .map(|(k, _)| k)
            .collect()
    }

    pub fn contains(&self, x: &QarySequence) -> bool {
        self.members.contains(x)
    }
}

/// Iterator over all of `A^n` in lexicographic order.
pub fn all_sequences(q: u8, n: usize) -> impl Iterator<Item = QarySequence> {
    let total = (q as u64).pow(n as u32);
    (0..total).map(move |i| QarySequence::from_index(q, n, i))
}

/// `q^n` as a `u64`, or `None` on overflow.
pub fn space_size(q: u8, n: usize) -> Option<u64> {
    u32::try_from(n).ok().and_then(|n| (q as u64).checked_pow(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(q: u8, s: &[u8]) -> QarySequence {
        QarySequence::new(q, s.to_vec()).unwrap()
    }

    #[test]
    fn complement_letter_examples() {
        assert_eq!(complement_letter(4, 0).unwrap(), 3);
        assert_eq!(complement_letter(4, 1).unwrap(), 2);
        assert_eq!(complement_letter(2, 1).unwrap(), 0);
        assert!(complement_letter(3, 1).is_err());
        assert!(complement_letter(4, 4).is_err());
    }

    #[test]
    fn rejects_bad_sequences() {
        assert!(QarySequence::new(5, vec![0, 1]).is_err());
        assert!(QarySequence::new(4, vec![]).is_err());
        assert!(QarySequence::new(4, vec![0, 4]).is_err());
        assert!(QarySequence::new(0, vec![0]).is_err());
    }

    #[test]
    fn reverse_complement_examples() {
        assert_eq!(seq(4, &[0, 0, 1, 2]).reverse_complement(), seq(4, &[1, 2, 3, 3]));
        assert_eq!(
            seq(2, &[0, 1, 1, 0, 0, 0, 1, 1, 1, 1]).reverse_complement(),
            seq(2, &[0, 0, 0, 0, 1, 1, 1, 0, 0, 1])
        );
    }

    #[test]
    fn self_rc_examples() {
        assert!(seq(2, &[0, 1]).is_self_reverse_complementary());
        assert!(!seq(4, &[0, 1, 0, 3]).is_self_reverse_complementary());
        for x in all_sequences(2, 5) {
            assert!(!x.is_self_reverse_complementary());
        }
        for x in all_sequences(4, 3) {
            assert!(!x.is_self_reverse_complementary());
        }
    }

    #[test]
    fn composition_examples() {
        assert_eq!(seq(2, &[0, 1, 0, 1, 1, 0, 1, 1]).composition().counts(), &[3, 5]);
        assert_eq!(seq(4, &[0, 0, 0, 0]).composition().counts(), &[4, 0, 0, 0]);
        let x = seq(4, &[0, 1, 1, 3, 2]);
        assert_eq!(x.reverse_complement().composition(), x.composition().reversed());
    }

    #[test]
    fn admissible_compositions() {
        assert!(Composition::new(vec![4, 0, 0, 0]).is_admissible(4));
        assert!(!Composition::new(vec![3, 1, 0, 0]).is_admissible(4));
        assert!(!Composition::new(vec![3, 5]).is_admissible(2));
    }

    #[test]
    fn parity_classes() {
        assert_eq!(seq(4, &[0, 0, 1, 3]).parity_class(), 0);
        assert_eq!(seq(4, &[0, 0, 0, 1]).parity_class(), 1);
        for (q, n) in [(2u8, 5usize), (4, 4), (6, 3)] {
            let members = all_sequences(q, n).filter(|x| x.is_parity_checked()).count();
            assert_eq!(members as u64, (q as u64).pow(n as u32 - 1));
        }
    }

    #[test]
    fn tenengolts_class_examples() {
        assert_eq!(seq(2, &[0, 0, 0, 0]).tenengolts_class(), (0, 2));
        assert_eq!(seq(2, &[0, 1, 0, 1]).tenengolts_class(), (0, 0));
    }

    #[test]
    fn shifts() {
        let x = seq(4, &[0, 0, 1, 3]);
        assert_eq!(x.cyclic_shift(1), seq(4, &[0, 1, 3, 0]));
        assert_eq!(x.cyclic_shift(4), x);
        assert_eq!(x.cyclic_shift(-1), seq(4, &[3, 0, 0, 1]));
        assert_eq!(x.cyclic_shift(0), x);
    }

    #[test]
    fn index_round_trip() {
        for x in all_sequences(4, 3) {
            assert_eq!(QarySequence::from_index(4, 3, x.index()), x);
        }
        assert_eq!(QarySequence::from_index(4, 4, 7).symbols(), &[0, 0, 1, 3]);
    }

    #[test]
    fn orbit_examples() {
        let o = seq(4, &[0, 0, 0, 0]).orbit();
        assert_eq!((o.size(), o.class()), (1, OrbitClass::G1));

        let o = seq(2, &[1, 0, 1, 0]).orbit();
        assert_eq!(o.size(), 2);
        assert_eq!(o.class(), OrbitClass::G2);
        assert_eq!(o.members(), &[seq(2, &[0, 1, 0, 1]), seq(2, &[1, 0, 1, 0])]);

        let o = seq(4, &[0, 0, 1, 3]).orbit();
        assert_eq!(o.size(), 4);
        assert_eq!(o.class(), OrbitClass::G4);
        assert_eq!(o.partner(), Some(&seq(4, &[0, 2, 3, 3])));
        assert_eq!(o.partner_orbit().unwrap().partner(), Some(o.representative()));
    }

    #[test]
    fn representative_test_matches_orbit() {
        for x in all_sequences(2, 6) {
            assert_eq!(x.is_orbit_representative(), x.orbit().representative() == &x);
        }
    }
}
