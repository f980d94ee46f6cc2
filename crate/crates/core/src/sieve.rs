//! Prime-ideal norm sieve.
//!
//! The starting set S(d, max) holds the prime divisors of d and every n with
//! χ_d(n) = +1. Sieving removes, for each untreated t ∈ T with χ_d(t) = +1 in
//! increasing order, the products t·s with s ∈ S and t ≤ s ≤ max/t. What
//! survives is every non-inert prime, the squares of inert primes, and the
//! products pq of two distinct inert primes. The last group is never the norm
//! of an ideal, so keeping it does not disturb any primality decision.
//!
//! Ramified primes never act as sieving bases: a product p·s with p | d has
//! χ = 0 and is composite, so it was never in S.

use std::fmt;

use crate::arithmetic::{is_prime, isqrt, kronecker};
use crate::character::CharacterTable;
use crate::error::{Error, Result};
use crate::field::FieldParams;

/// Largest supported sieve bound.
pub const MAX_SIEVE_BOUND: u64 = 1 << 40;

const MAGIC: &[u8; 4] = b"QNS1";

#[derive(Debug, Clone, PartialEq, Eq)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(bits: u64) -> Self {
        BitSet {
            words: vec![0; bits.div_ceil(64) as usize],
        }
    }

    #[inline]
    fn get(&self, i: u64) -> bool {
        self.words[(i >> 6) as usize] >> (i & 63) & 1 == 1
    }

    #[inline]
    fn set(&mut self, i: u64) {
        self.words[(i >> 6) as usize] |= 1 << (i & 63);
    }

    #[inline]
    fn clear(&mut self, i: u64) {
        self.words[(i >> 6) as usize] &= !(1 << (i & 63));
    }

    #[inline]
    fn toggle(&mut self, i: u64) {
        self.words[(i >> 6) as usize] ^= 1 << (i & 63);
    }

    fn count(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    fn ones(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let base = (i as u64) << 6;
            BitIter(w).map(move |b| base + b)
        })
    }
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(u64::from(b))
    }
}

fn check_bound(max: u64) -> Result<()> {
    if max < 2 {
        return Err(Error::Domain(format!("sieve bound must be at least 2, got {max}")));
    }
    if max > MAX_SIEVE_BOUND {
        return Err(Error::Domain(format!("sieve bound {max} exceeds {MAX_SIEVE_BOUND}")));
    }
    Ok(())
}

/// The starting set S(d, max), one bit per integer in `[0, max]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StartingSet {
    d: i64,
    max: u64,
    bits: BitSet,
}

impl StartingSet {
    pub fn new(field: &FieldParams, max: u64) -> Result<Self> {
        check_bound(max)?;
        let chi = CharacterTable::build(field)?;
        let mut bits = BitSet::new(max + 1);
        for n in 2..=max {
            if chi.chi_u64(n) == 1 {
                bits.set(n);
            }
        }
        for p in discriminant_primes(field).filter(|&p| p <= max) {
            bits.set(p);
        }
        Ok(StartingSet {
            d: field.discriminant(),
            max,
            bits,
        })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn max(&self) -> u64 {
        self.max
    }

    pub fn contains(&self, n: u64) -> bool {
        n <= self.max && self.bits.get(n)
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits.ones()
    }

    pub fn len(&self) -> usize {
        self.bits.count() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn starting_set(field: &FieldParams, max: u64) -> Result<StartingSet> {
    StartingSet::new(field, max)
}

fn discriminant_primes(field: &FieldParams) -> impl Iterator<Item = u64> + '_ {
    let two = (!field.half_basis()).then_some(2);
    two.into_iter()
        .chain(field.radicand_factors().primes().filter(|&p| p != 2))
}

/// Counters collected while sieving.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SieveStats {
    /// Sieving bases t that were treated.
    pub treated: u64,
    /// Products t·s visited for removal.
    pub steps: u64,
}

/// The sieve output T(d, max).
///
/// Odd members live in a bitset with one bit per odd integer; the few even
/// members are kept in a sorted list.
#[derive(Clone, PartialEq, Eq)]
pub struct NormSet {
    d: i64,
    max: u64,
    odd: BitSet,
    even: Vec<u64>,
}

impl fmt::Debug for NormSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NormSet")
            .field("d", &self.d)
            .field("max", &self.max)
            .field("len", &self.len())
            .finish()
    }
}

impl NormSet {
    fn empty(d: i64, max: u64) -> Self {
        NormSet {
            d,
            max,
            odd: BitSet::new(max.div_ceil(2)),
            even: Vec::new(),
        }
    }

    fn from_dense(d: i64, max: u64, dense: &BitSet) -> Self {
        let mut set = Self::empty(d, max);
        for n in dense.ones() {
            if n % 2 == 1 {
                set.odd.set(n / 2);
            } else {
                set.even.push(n);
            }
        }
        set
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn max(&self) -> u64 {
        self.max
    }

    /// Membership; never true above `max`.
    pub fn contains(&self, n: u64) -> bool {
        if n > self.max {
            return false;
        }
        if n % 2 == 1 {
            self.odd.get(n / 2)
        } else {
            self.even.binary_search(&n).is_ok()
        }
    }

    /// Membership test that refuses to answer above the sieve bound.
    pub fn is_prime_norm(&self, n: u64) -> Result<bool> {
        if n > self.max {
            return Err(Error::OutOfRange {
                value: n,
                max: self.max,
            });
        }
        Ok(self.contains(n))
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        let mut odd = self.odd.ones().map(|k| 2 * k + 1).peekable();
        let mut even = self.even.iter().copied().peekable();
        std::iter::from_fn(move || match (odd.peek(), even.peek()) {
            (Some(&o), Some(&e)) if e < o => even.next(),
            (Some(_), _) => odd.next(),
            (None, _) => even.next(),
        })
    }

    pub fn len(&self) -> usize {
        (self.odd.count() + self.even.len() as u64) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Flips the membership of `n`. Exists so verifiers can be tested against
    /// a corrupted set.
    pub fn toggle(&mut self, n: u64) {
        assert!(n <= self.max, "{n} above sieve bound {}", self.max);
        if n % 2 == 1 {
            self.odd.toggle(n / 2);
        } else {
            match self.even.binary_search(&n) {
                Ok(i) => {
                    self.even.remove(i);
                }
                Err(i) => self.even.insert(i, n),
            }
        }
    }

    /// Approximate heap footprint in bytes.
    pub fn heap_bytes(&self) -> usize {
        self.odd.words.len() * 8 + self.even.len() * 8
    }

    /// `QNS1` dump: magic, d (i64), max (u64), then the dense bitset over
    /// `[0, max]` as `⌈(max+1)/64⌉` words. Everything little-endian.
    pub fn to_binary(&self) -> Vec<u8> {
        let nwords = (self.max + 1).div_ceil(64) as usize;
        let mut words = vec![0u64; nwords];
        for n in self.iter() {
            words[(n >> 6) as usize] |= 1 << (n & 63);
        }
        let mut out = Vec::with_capacity(20 + 8 * nwords);
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&self.d.to_le_bytes());
        out.extend_from_slice(&self.max.to_le_bytes());
        for w in words {
            out.extend_from_slice(&w.to_le_bytes());
        }
        out
    }

    pub fn from_binary(bytes: &[u8]) -> Result<Self> {
        let bad = |m: &str| Error::Format(m.to_string());
        if bytes.len() < 20 || &bytes[..4] != MAGIC {
            return Err(bad("missing QNS1 header"));
        }
        let d = i64::from_le_bytes(bytes[4..12].try_into().unwrap());
        let max = u64::from_le_bytes(bytes[12..20].try_into().unwrap());
        if max > MAX_SIEVE_BOUND {
            return Err(bad("sieve bound out of range"));
        }
        let nwords = (max + 1).div_ceil(64) as usize;
        let body = &bytes[20..];
        if body.len() != nwords * 8 {
            return Err(Error::Format(format!(
                "expected {} bitset bytes for max {max}, found {}",
                nwords * 8,
                body.len()
            )));
        }
        let words: Vec<u64> = body
            .chunks_exact(8)
            .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        let dense = BitSet { words };
        if dense.ones().any(|n| n > max) {
            return Err(bad("bits set above the sieve bound"));
        }
        Ok(Self::from_dense(d, max, &dense))
    }
}

/// Reference sieve over the full starting set.
pub fn sieve_norms(start: &StartingSet, field: &FieldParams, max: u64) -> Result<NormSet> {
    sieve_norms_with_stats(start, field, max).map(|(t, _)| t)
}

pub fn sieve_norms_with_stats(start: &StartingSet, field: &FieldParams, max: u64) -> Result<(NormSet, SieveStats)> {
    if start.max != max || start.d != field.discriminant() {
        return Err(Error::Domain(format!(
            "starting set for (d={}, max={}) used with (d={}, max={max})",
            start.d,
            start.max,
            field.discriminant()
        )));
    }
    let chi = CharacterTable::build(field)?;
    let mut t = start.bits.clone();
    let mut stats = SieveStats::default();
    let root = isqrt(max);
    for base in 2..=root {
        if !t.get(base) || chi.chi_u64(base) != 1 {
            continue;
        }
        stats.treated += 1;
        for s in start.iter().skip_while(|&s| s < base).take_while(|&s| s <= max / base) {
            t.clear(base * s);
            stats.steps += 1;
        }
    }
    Ok((NormSet::from_dense(field.discriminant(), max, &t), stats))
}

/// Bytes the odd-only sieve allocates for `(field, max)`.
pub fn odd_sieve_bytes(field: &FieldParams, max: u64) -> u64 {
    let odd_bits = max.div_ceil(2).div_ceil(64) * 8;
    let table = 2 * field.discriminant().unsigned_abs();
    let aux = if field.discriminant().rem_euclid(8) == 5 {
        (max / 2).div_ceil(2).div_ceil(64) * 8
    } else {
        0
    };
    odd_bits + table + aux
}

/// Odd-only sieve. Produces exactly the members of the reference sieve.
pub fn sieve_norms_odd(field: &FieldParams, max: u64) -> Result<NormSet> {
    sieve_norms_odd_with_stats(field, max).map(|(t, _)| t)
}

pub fn sieve_norms_odd_with_stats(field: &FieldParams, max: u64) -> Result<(NormSet, SieveStats)> {
    check_bound(max)?;
    let d = field.discriminant();
    let chi = if field.half_basis() {
        CharacterTable::build_odd(field)?
    } else {
        CharacterTable::build(field)?
    };
    let mut set = NormSet::empty(d, max);
    let values = chi.values();
    let period = chi.period();
    debug_assert!(period % 2 == 0);

    // bit k ↔ n = 2k + 1
    let nodd = max.div_ceil(2);
    let mut residue = 1usize;
    for k in 0..nodd {
        if values[residue] == 1 {
            set.odd.set(k);
        }
        residue += 2;
        if residue >= period {
            residue -= period;
        }
    }
    set.odd.clear(0);
    for p in discriminant_primes(field).filter(|&p| p % 2 == 1 && p <= max) {
        set.odd.set(p / 2);
    }

    let mut stats = SieveStats::default();
    let root = isqrt(max);
    let mut base = 3;
    while base <= root {
        if set.odd.get(base / 2) && chi.chi_u64(base) == 1 {
            stats.treated += 1;
            // Descending partners: every cleared product lies above the
            // partners still to be visited, so T can serve as S here.
            let mut s = max / base;
            if s.is_multiple_of(2) {
                s -= 1;
            }
            while s >= base {
                if set.odd.get(s / 2) {
                    set.odd.clear(base * s / 2);
                    stats.steps += 1;
                }
                s -= 2;
            }
        }
        base += 2;
    }

    set.even = even_norms(field, max, &chi);
    Ok((set, stats))
}

/// Even members of T: the prime 2 when it ramifies or splits; 4 when it is
/// inert, together with 2q for every odd inert prime q.
fn even_norms(field: &FieldParams, max: u64, chi: &CharacterTable) -> Vec<u64> {
    let d = field.discriminant();
    match d.rem_euclid(8) {
        0 | 4 | 1 => vec![2],
        5 => {
            let mut even = Vec::new();
            if max >= 4 {
                even.push(4);
            }
            if max >= 6 {
                even.extend(
                    odd_primes_up_to(max / 2)
                        .into_iter()
                        .filter(|&q| chi.chi_u64(q) == -1)
                        .map(|q| 2 * q),
                );
            }
            even
        }
        _ => unreachable!("discriminant {d} is neither odd nor divisible by 4"),
    }
}

fn odd_primes_up_to(limit: u64) -> Vec<u64> {
    // bit k ↔ 2k + 1 composite
    let mut composite = BitSet::new(limit.div_ceil(2) + 1);
    let mut p = 3;
    while p * p <= limit {
        if !composite.get(p / 2) {
            let mut m = p * p;
            while m <= limit {
                composite.set(m / 2);
                m += 2 * p;
            }
        }
        p += 2;
    }
    (1..)
        .map(|k| 2 * k + 1)
        .take_while(|&n| n <= limit)
        .filter(|&n| !composite.get(n / 2))
        .collect()
}

/// How a rational prime decomposes in the ring of integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SplitType {
    Split,
    Ramified,
    Inert,
}

impl fmt::Display for SplitType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplitType::Split => "split",
            SplitType::Ramified => "ramified",
            SplitType::Inert => "inert",
        })
    }
}

pub fn classify_prime(field: &FieldParams, p: u64) -> Result<SplitType> {
    if !is_prime(p) {
        return Err(Error::Domain(format!("{p} is not prime")));
    }
    let p = i64::try_from(p).map_err(|_| Error::Overflow("classify_prime"))?;
    Ok(match kronecker(field.discriminant(), p) {
        1 => SplitType::Split,
        0 => SplitType::Ramified,
        _ => SplitType::Inert,
    })
}

pub fn is_prime_norm(set: &NormSet, n: u64) -> Result<bool> {
    set.is_prime_norm(n)
}

/// Which part of T a member belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NormKind {
    /// Norm p of a prime ideal above a split prime.
    Split,
    /// Norm p of the prime ideal above a ramified prime.
    Ramified,
    /// p² for an inert prime p.
    InertSquare,
    /// pq for distinct inert primes; not an ideal norm.
    InertProduct,
}

/// Classifies a member of T. Assumes `n` is a member.
pub fn norm_kind(field: &FieldParams, n: u64) -> NormKind {
    if is_prime(n) {
        return match kronecker(field.discriminant(), n as i64) {
            0 => NormKind::Ramified,
            _ => NormKind::Split,
        };
    }
    let root = isqrt(n);
    if root * root == n {
        NormKind::InertSquare
    } else {
        NormKind::InertProduct
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn field(n: i64) -> FieldParams {
        FieldParams::new(n).unwrap()
    }

    fn reference(n: i64, max: u64) -> NormSet {
        let f = field(n);
        let s = starting_set(&f, max).unwrap();
        sieve_norms(&s, &f, max).unwrap()
    }

    #[test]
    fn starting_set_examples() {
        let s = starting_set(&field(-1), 50).unwrap();
        assert_eq!(
            s.iter().collect::<Vec<_>>(),
            vec![2, 5, 9, 13, 17, 21, 25, 29, 33, 37, 41, 45, 49]
        );
        let s = starting_set(&field(5), 10).unwrap();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![4, 5, 6, 9]);
        assert_eq!(starting_set(&field(-1), 2).unwrap().iter().collect::<Vec<_>>(), vec![2]);
        assert_eq!(starting_set(&field(17), 2).unwrap().iter().collect::<Vec<_>>(), vec![2]);
        assert!(starting_set(&field(5), 2).unwrap().is_empty());
        assert!(starting_set(&field(-1), 1).is_err());
    }

    #[test]
    fn composite_divisors_stay_out_of_s() {
        let s = starting_set(&field(-5), 100).unwrap();
        assert!(s.contains(2) && s.contains(5));
        assert!(!s.contains(4) && !s.contains(10) && !s.contains(20));
    }

    #[test]
    fn sieve_examples() {
        let t = reference(-1, 50);
        assert_eq!(
            t.iter().collect::<Vec<_>>(),
            vec![2, 5, 9, 13, 17, 21, 29, 33, 37, 41, 49]
        );
        assert_eq!(reference(5, 10).iter().collect::<Vec<_>>(), vec![4, 5, 6, 9]);
        for n in [-1, 5, 2, -23] {
            let f = field(n);
            let s = starting_set(&f, 3).unwrap();
            let t = sieve_norms(&s, &f, 3).unwrap();
            assert_eq!(t.iter().collect::<Vec<_>>(), s.iter().collect::<Vec<_>>());
        }
    }

    #[test]
    fn mismatched_starting_set_rejected() {
        let s = starting_set(&field(-1), 50).unwrap();
        assert!(sieve_norms(&s, &field(-1), 60).is_err());
        assert!(sieve_norms(&s, &field(5), 50).is_err());
    }

    #[test]
    fn odd_sieve_examples() {
        let t = sieve_norms_odd(&field(5), 10).unwrap();
        assert_eq!(t.iter().collect::<Vec<_>>(), vec![4, 5, 6, 9]);
        assert!(sieve_norms_odd(&field(17), 20).unwrap().contains(2));
        assert_eq!(sieve_norms_odd(&field(-1), 50).unwrap(), reference(-1, 50));
        assert_eq!(sieve_norms_odd(&field(5), 2).unwrap().len(), 0);
        assert_eq!(
            sieve_norms_odd(&field(5), 4).unwrap().iter().collect::<Vec<_>>(),
            vec![4]
        );
    }

    #[test]
    fn odd_sieve_matches_reference() {
        for n in [
            -1, -2, -3, -5, -6, -7, -15, -23, 2, 3, 5, 6, 10, 13, 17, 21, 79, 229, 105,
        ] {
            for max in [2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 31, 32, 33, 100, 1000, 12_345] {
                assert_eq!(
                    sieve_norms_odd(&field(n), max).unwrap(),
                    reference(n, max),
                    "r={n} max={max}"
                );
            }
        }
    }

    #[test]
    fn never_contains_inert_primes() {
        for n in [-1, -3, -5, 2, 5, 79] {
            let f = field(n);
            let t = sieve_norms_odd(&f, 20_000).unwrap();
            for p in (2..=20_000).filter(|&p| is_prime(p)) {
                let inert = classify_prime(&f, p).unwrap() == SplitType::Inert;
                assert_eq!(t.contains(p), !inert, "r={n} p={p}");
            }
        }
    }

    #[test]
    fn classify_examples() {
        let f = field(-1);
        assert_eq!(classify_prime(&f, 2).unwrap(), SplitType::Ramified);
        assert_eq!(classify_prime(&f, 5).unwrap(), SplitType::Split);
        assert_eq!(classify_prime(&f, 3).unwrap(), SplitType::Inert);
        assert_eq!(classify_prime(&field(-5), 3).unwrap(), SplitType::Split);
        assert!(classify_prime(&f, 9).is_err());
        assert!(classify_prime(&f, 1).is_err());
    }

    #[test]
    fn is_prime_norm_examples() {
        let t = reference(-1, 50);
        assert!(is_prime_norm(&t, 13).unwrap());
        assert!(!is_prime_norm(&t, 25).unwrap());
        assert!(!is_prime_norm(&t, 1).unwrap());
        assert!(!is_prime_norm(&t, 0).unwrap());
        assert_eq!(is_prime_norm(&t, 51), Err(Error::OutOfRange { value: 51, max: 50 }));
    }

    #[test]
    fn norm_kinds() {
        let f = field(-1);
        assert_eq!(norm_kind(&f, 2), NormKind::Ramified);
        assert_eq!(norm_kind(&f, 5), NormKind::Split);
        assert_eq!(norm_kind(&f, 9), NormKind::InertSquare);
        assert_eq!(norm_kind(&f, 21), NormKind::InertProduct);
    }

    #[test]
    fn binary_dump_round_trip() {
        let t = sieve_norms_odd(&field(-23), 1000).unwrap();
        let bytes = t.to_binary();
        assert_eq!(&bytes[..4], b"QNS1");
        assert_eq!(i64::from_le_bytes(bytes[4..12].try_into().unwrap()), -23);
        assert_eq!(u64::from_le_bytes(bytes[12..20].try_into().unwrap()), 1000);
        assert_eq!(bytes.len(), 20 + 16 * 8);
        assert_eq!(NormSet::from_binary(&bytes).unwrap(), t);
        assert!(NormSet::from_binary(&bytes[..30]).is_err());
        assert!(NormSet::from_binary(b"QNS2aaaaaaaaaaaaaaaa").is_err());
    }

    #[test]
    fn toggle_flips_membership() {
        let mut t = reference(-1, 50);
        t.toggle(25);
        assert!(t.contains(25));
        t.toggle(2);
        assert!(!t.contains(2));
        t.toggle(2);
        t.toggle(25);
        assert_eq!(t, reference(-1, 50));
    }

    #[test]
    fn bound_limits() {
        assert!(sieve_norms_odd(&field(-1), 1).is_err());
        assert!(sieve_norms_odd(&field(-1), MAX_SIEVE_BOUND + 1).is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn monotone_in_bound(
            n in prop::sample::select(vec![-1i64, -3, -5, -23, 2, 5, 10, 79, 229]),
            a in 2u64..3000,
            b in 2u64..3000,
        ) {
            let (lo, hi) = (a.min(b), a.max(b));
            let f = field(n);
            let small = sieve_norms_odd(&f, lo).unwrap();
            let big = sieve_norms_odd(&f, hi).unwrap();
            let clipped: Vec<u64> = big.iter().take_while(|&m| m <= lo).collect();
            prop_assert_eq!(small.iter().collect::<Vec<_>>(), clipped);
        }
    }
}
