//! Prime ideals written as Z-modules I = [m, shift + τ].
//!
//! `x + yτ` lies in I iff `x − shift·y ≡ 0 (mod m)`. The module is an ideal
//! exactly when `m | N(shift + τ)`.

use std::fmt;

use crate::arithmetic::is_prime;
use crate::error::{Error, Result};
use crate::field::{FieldParams, RingElement};
use crate::sieve::{classify_prime, NormSet, SplitType};

/// I = [norm, shift + τ], with `0 ≤ shift < norm`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IdealSpec {
    pub norm: u64,
    pub shift: u64,
}

impl IdealSpec {
    pub const fn new(norm: u64, shift: u64) -> Self {
        IdealSpec { norm, shift }
    }

    /// The generator `shift + τ`.
    pub fn generator(&self) -> RingElement {
        RingElement::new(self.shift as i64, 1)
    }
}

impl fmt::Display for IdealSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {} + τ]", self.norm, self.shift)
    }
}

/// Why an `IdealSpec` is rejected, or `Ok(())`.
pub fn check_ideal(field: &FieldParams, ideal: IdealSpec) -> Result<()> {
    let fail = |reason: String| {
        Err(Error::InvalidIdeal {
            norm: ideal.norm,
            shift: ideal.shift,
            reason,
        })
    };
    let m = ideal.norm;
    if m < 2 || !is_prime(m) {
        return fail(format!("norm {m} is not prime"));
    }
    if ideal.shift >= m || ideal.shift > i64::MAX as u64 {
        return fail(format!("shift {} is not in [0, {m})", ideal.shift));
    }
    if classify_prime(field, m)? == SplitType::Inert {
        return fail(format!("{m} is inert, so no prime ideal has norm {m}"));
    }
    let n = field.norm(ideal.generator())?;
    if n % m != 0 {
        return fail(format!("{m} does not divide N({} + τ) = {n}", ideal.shift));
    }
    Ok(())
}

pub fn validate_ideal(field: &FieldParams, ideal: IdealSpec) -> bool {
    check_ideal(field, ideal).is_ok()
}

#[inline]
fn member(ideal: IdealSpec, z: RingElement) -> bool {
    let v = z.x as i128 - ideal.shift as i128 * z.y as i128;
    v.rem_euclid(ideal.norm as i128) == 0
}

pub fn contains(field: &FieldParams, ideal: IdealSpec, z: RingElement) -> Result<bool> {
    check_ideal(field, ideal)?;
    Ok(member(ideal, z))
}

/// Ī, with `shift' = (−shift − (d mod 2)) mod m`.
pub fn conjugate_ideal(field: &FieldParams, ideal: IdealSpec) -> Result<IdealSpec> {
    check_ideal(field, ideal)?;
    let odd = u64::from(field.half_basis());
    let m = ideal.norm;
    let shift = (2 * m - ideal.shift - odd) % m;
    Ok(IdealSpec { norm: m, shift })
}

/// Smallest valid `[m, shift + τ]` with `m` a split prime, scanning `m` up
/// to `limit`.
pub fn find_default_ideal(field: &FieldParams, limit: u64) -> Option<IdealSpec> {
    (2..=limit)
        .filter(|&m| is_prime(m))
        .filter(|&m| matches!(classify_prime(field, m), Ok(SplitType::Split)))
        .find_map(|m| (0..m).map(|s| IdealSpec::new(m, s)).find(|&i| validate_ideal(field, i)))
}

/// Display class of a lattice point relative to I and Ī.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdealClass {
    None,
    ClassI,
    ClassConjI,
}

/// Precomputed I and Ī for classifying many points.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdealPair {
    ideal: IdealSpec,
    conjugate: IdealSpec,
}

impl IdealPair {
    pub fn new(field: &FieldParams, ideal: IdealSpec) -> Result<Self> {
        let conjugate = conjugate_ideal(field, ideal)?;
        Ok(IdealPair { ideal, conjugate })
    }

    pub fn ideal(&self) -> IdealSpec {
        self.ideal
    }

    pub fn conjugate(&self) -> IdealSpec {
        self.conjugate
    }

    pub fn is_self_conjugate(&self) -> bool {
        self.ideal == self.conjugate
    }

    /// Class of a point whose norm is already known.
    pub fn classify_with_norm(&self, set: &NormSet, z: RingElement, norm: u64) -> Result<IdealClass> {
        let m = self.ideal.norm;
        if norm == 0 || !norm.is_multiple_of(m) {
            return Ok(IdealClass::None);
        }
        if !set.is_prime_norm(norm / m)? {
            return Ok(IdealClass::None);
        }
        Ok(if member(self.ideal, z) {
            IdealClass::ClassI
        } else if member(self.conjugate, z) {
            IdealClass::ClassConjI
        } else {
            IdealClass::None
        })
    }
}

pub fn ideal_display_class(field: &FieldParams, ideal: IdealSpec, set: &NormSet, z: RingElement) -> Result<IdealClass> {
    let pair = IdealPair::new(field, ideal)?;
    pair.classify_with_norm(set, z, field.norm(z)?)
}
