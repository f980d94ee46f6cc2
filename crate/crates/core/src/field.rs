//! The quadratic field Q(√r) and its ring of integers Z[τ].
//!
//! Elements are kept in exact τ-coordinates; any planar geometry is the
//! renderer's business.

use std::fmt;

use crate::arithmetic::{factorize, squarefree_reduce, Factorization};
use crate::error::{Error, Result};

/// Constants of a quadratic field, derived once from the (possibly
/// non-squarefree) input radicand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldParams {
    input: i64,
    square_part: u64,
    radicand: i64,
    discriminant: i64,
    half_basis: bool,
    radicand_factors: Factorization,
}

impl FieldParams {
    /// Builds Q(√n), silently reducing `n` to its squarefree part.
    pub fn new(n: i64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidRadicand(n));
        }
        let (radicand, square_part) = squarefree_reduce(n)?;
        if radicand == 1 {
            return Err(Error::InvalidRadicand(n));
        }
        let half_basis = radicand.rem_euclid(4) == 1;
        let discriminant = if half_basis {
            radicand
        } else {
            radicand.checked_mul(4).ok_or(Error::Overflow("discriminant"))?
        };
        Ok(FieldParams {
            input: n,
            square_part,
            radicand,
            discriminant,
            half_basis,
            radicand_factors: factorize(radicand)?,
        })
    }

    /// Builds the field whose discriminant is exactly `d`.
    pub fn from_discriminant(d: i64) -> Result<Self> {
        let field = Self::new(d).map_err(|_| Error::Domain(format!("{d} is not a field discriminant")))?;
        if field.discriminant != d {
            return Err(Error::Domain(format!(
                "{d} is not a field discriminant (Q(√{d}) has discriminant {})",
                field.discriminant
            )));
        }
        Ok(field)
    }

    pub fn radicand(&self) -> i64 {
        self.radicand
    }

    pub fn discriminant(&self) -> i64 {
        self.discriminant
    }

    /// True iff τ = (1 + √r)/2, i.e. r ≡ 1 (mod 4) and d is odd.
    pub fn half_basis(&self) -> bool {
        self.half_basis
    }

    /// The norm coefficient (r − 1)/4, defined only for the half basis.
    pub fn c(&self) -> Option<i64> {
        self.half_basis.then(|| (self.radicand - 1) / 4)
    }

    /// The value supplied to [`FieldParams::new`].
    pub fn input(&self) -> i64 {
        self.input
    }

    /// The `s` in `input = r·s²`.
    pub fn square_part(&self) -> u64 {
        self.square_part
    }

    pub fn was_reduced(&self) -> bool {
        self.square_part != 1
    }

    pub fn radicand_factors(&self) -> &Factorization {
        &self.radicand_factors
    }

    pub fn is_imaginary(&self) -> bool {
        self.radicand < 0
    }

    /// `Q(√r)` for headers and reports.
    pub fn name(&self) -> String {
        format!("Q(√{})", self.radicand)
    }

    /// Absolute norm of `x + yτ`.
    pub fn norm(&self, z: RingElement) -> Result<u64> {
        let v = self.signed_norm(z)?;
        u64::try_from(v.unsigned_abs()).map_err(|_| Error::Overflow("norm"))
    }

    /// `ζ·conj(ζ)` before taking the absolute value.
    pub fn signed_norm(&self, z: RingElement) -> Result<i128> {
        let ovf = || Error::Overflow("norm");
        let (x, y) = (z.x as i128, z.y as i128);
        let xx = x * x;
        let yy = y * y;
        if let Some(c) = self.c() {
            // x² + xy − c·y²
            let cyy = yy.checked_mul(c as i128).ok_or_else(ovf)?;
            xx.checked_add(x * y).and_then(|v| v.checked_sub(cyy)).ok_or_else(ovf)
        } else {
            let ryy = yy.checked_mul(self.radicand as i128).ok_or_else(ovf)?;
            xx.checked_sub(ryy).ok_or_else(ovf)
        }
    }

    /// Product in Z[τ], using τ² = r or τ² = τ + c.
    pub fn multiply(&self, a: RingElement, b: RingElement) -> Result<RingElement> {
        let ovf = || Error::Overflow("multiply");
        let (ax, ay, bx, by) = (a.x as i128, a.y as i128, b.x as i128, b.y as i128);
        let yy = ay * by;
        let cross = (ax * by).checked_add(ay * bx).ok_or_else(ovf)?;
        let (x, y) = match self.c() {
            Some(c) => (
                (ax * bx).checked_add(yy.checked_mul(c as i128).ok_or_else(ovf)?),
                cross.checked_add(yy),
            ),
            None => (
                (ax * bx).checked_add(yy.checked_mul(self.radicand as i128).ok_or_else(ovf)?),
                Some(cross),
            ),
        };
        let x = x.and_then(|v| i64::try_from(v).ok()).ok_or_else(ovf)?;
        let y = y.and_then(|v| i64::try_from(v).ok()).ok_or_else(ovf)?;
        Ok(RingElement::new(x, y))
    }

    pub fn add(&self, a: RingElement, b: RingElement) -> Result<RingElement> {
        match (a.x.checked_add(b.x), a.y.checked_add(b.y)) {
            (Some(x), Some(y)) => Ok(RingElement::new(x, y)),
            _ => Err(Error::Overflow("add")),
        }
    }

    /// Galois conjugate: `(x, −y)` for τ = √r, `(x + y, −y)` for τ = (1+√r)/2.
    pub fn conjugate(&self, z: RingElement) -> Result<RingElement> {
        let ovf = || Error::Overflow("conjugate");
        let y = z.y.checked_neg().ok_or_else(ovf)?;
        let x = if self.half_basis {
            z.x.checked_add(z.y).ok_or_else(ovf)?
        } else {
            z.x
        };
        Ok(RingElement::new(x, y))
    }

    pub fn is_unit(&self, z: RingElement) -> bool {
        matches!(self.norm(z), Ok(1))
    }
}

impl fmt::Display for FieldParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (d = {})", self.name(), self.discriminant)
    }
}

/// `x + yτ` in the basis {1, τ}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RingElement {
    pub x: i64,
    pub y: i64,
}

impl RingElement {
    pub const ZERO: RingElement = RingElement { x: 0, y: 0 };
    pub const ONE: RingElement = RingElement { x: 1, y: 0 };

    pub const fn new(x: i64, y: i64) -> Self {
        RingElement { x, y }
    }

    pub fn is_zero(&self) -> bool {
        self.x == 0 && self.y == 0
    }

    pub fn checked_neg(&self) -> Option<Self> {
        Some(RingElement::new(self.x.checked_neg()?, self.y.checked_neg()?))
    }
}

impl From<(i64, i64)> for RingElement {
    fn from((x, y): (i64, i64)) -> Self {
        RingElement::new(x, y)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}τ",
            self.x,
            if self.y < 0 { '-' } else { '+' },
            self.y.unsigned_abs()
        )
    }
}

/// Necessary condition for a real quadratic ring to be a UFD: `r` is prime,
/// or `r = pq` with `p ≡ 3 (mod 4)` and `q = 2` or `q ≡ 3 (mod 4)`.
pub fn ufd_candidate_real(r: i64) -> Result<bool> {
    if r <= 1 {
        return Err(Error::Domain(format!("radicand {r} must be greater than 1")));
    }
    let f = factorize(r)?;
    if !f.is_squarefree() {
        return Err(Error::Domain(format!("radicand {r} is not squarefree")));
    }
    Ok(match f.factors() {
        [_] => true,
        [(p, _), (q, _)] => {
            let three = |v: u64| v % 4 == 3;
            // p < q, so q = 2 is impossible; the 2 always lands in p
            (three(*p) || *p == 2) && three(*q)
        }
        _ => false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(n: i64) -> FieldParams {
        FieldParams::new(n).unwrap()
    }

    #[test]
    fn make_field_examples() {
        let f = field(-1);
        assert_eq!((f.radicand(), f.discriminant(), f.half_basis()), (-1, -4, false));
        assert_eq!(f.c(), None);
        let f = field(5);
        assert_eq!((f.radicand(), f.discriminant(), f.half_basis()), (5, 5, true));
        assert_eq!(f.c(), Some(1));
        let f = field(24);
        assert_eq!((f.radicand(), f.discriminant(), f.square_part()), (6, 24, 2));
        assert!(f.was_reduced());
        assert_eq!(field(-3).c(), Some(-1));
        assert_eq!(field(-12).radicand(), -3);
    }

    #[test]
    fn make_field_rejects_squares() {
        for n in [0, 1, 4, 9, 36, 10_000] {
            assert!(matches!(FieldParams::new(n), Err(Error::InvalidRadicand(_))), "{n}");
        }
        assert!(FieldParams::new(-4).is_ok());
        // squarefree, ≡ 3 (mod 4), above 2^61: 4r does not fit
        assert!(matches!(
            FieldParams::new(2_420_181_938_423_875_279),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn from_discriminant_consistency() {
        assert_eq!(FieldParams::from_discriminant(-4).unwrap().radicand(), -1);
        assert_eq!(FieldParams::from_discriminant(5).unwrap().radicand(), 5);
        assert_eq!(FieldParams::from_discriminant(12).unwrap().radicand(), 3);
        assert!(FieldParams::from_discriminant(3).is_err());
        assert!(FieldParams::from_discriminant(-20 * 4).is_err());
        assert!(FieldParams::from_discriminant(9).is_err());
    }

    #[test]
    fn discriminant_parity_matches_basis() {
        for n in -300..300 {
            if let Ok(f) = FieldParams::new(n) {
                assert_eq!(f.half_basis(), f.discriminant() % 2 != 0);
                let expect = if f.radicand().rem_euclid(4) == 1 {
                    f.radicand()
                } else {
                    4 * f.radicand()
                };
                assert_eq!(f.discriminant(), expect);
            }
        }
    }

    #[test]
    fn norm_examples() {
        assert_eq!(field(-1).norm(RingElement::new(3, 2)).unwrap(), 13);
        for n in [-1, 2, 5, -3, 79] {
            assert_eq!(field(n).norm(RingElement::ONE).unwrap(), 1);
        }
        assert_eq!(field(-3).norm(RingElement::new(1, 1)).unwrap(), 3);
        assert_eq!(field(2).norm(RingElement::new(1, 1)).unwrap(), 1);
        assert_eq!(field(-1).norm(RingElement::ZERO).unwrap(), 0);
    }

    #[test]
    fn norm_overflow_detected() {
        let f = field(-163);
        let huge = RingElement::new(i64::MAX, i64::MAX);
        assert!(matches!(f.norm(huge), Err(Error::Overflow(_))));
        assert!(matches!(f.multiply(huge, huge), Err(Error::Overflow(_))));
    }

    #[test]
    fn multiply_examples() {
        let i = RingElement::new(0, 1);
        assert_eq!(field(-1).multiply(i, i).unwrap(), RingElement::new(-1, 0));
        assert_eq!(field(5).multiply(i, i).unwrap(), RingElement::new(1, 1));
        for n in [-1, 5, -23, 79] {
            let z = RingElement::new(-7, 4);
            assert_eq!(field(n).multiply(RingElement::ONE, z).unwrap(), z);
        }
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(
            field(-1).conjugate(RingElement::new(3, 2)).unwrap(),
            RingElement::new(3, -2)
        );
        assert_eq!(
            field(5).conjugate(RingElement::new(0, 1)).unwrap(),
            RingElement::new(1, -1)
        );
        for n in [-1, 5, 2, -3] {
            assert_eq!(
                field(n).conjugate(RingElement::new(9, 0)).unwrap(),
                RingElement::new(9, 0)
            );
        }
    }

    #[test]
    fn unit_examples() {
        assert!(field(-1).is_unit(RingElement::new(0, 1)));
        assert!(field(2).is_unit(RingElement::new(1, 1)));
        assert!(!field(2).is_unit(RingElement::ZERO));
        assert!(!field(-1).is_unit(RingElement::ZERO));
        // golden ratio
        assert!(field(5).is_unit(RingElement::new(0, 1)));
    }

    #[test]
    fn ufd_candidate_examples() {
        assert!(ufd_candidate_real(79).unwrap());
        assert!(ufd_candidate_real(21).unwrap());
        assert!(!ufd_candidate_real(10).unwrap());
        assert!(ufd_candidate_real(6).unwrap());
        assert!(!ufd_candidate_real(15).unwrap());
        assert!(!ufd_candidate_real(105).unwrap());
        assert!(ufd_candidate_real(1).is_err());
        assert!(ufd_candidate_real(12).is_err());
        assert!(ufd_candidate_real(-5).is_err());
    }

    #[test]
    fn ufd_criterion_fails_for_two_mod_eight() {
        for r in (10..2000).step_by(8) {
            if factorize(r).unwrap().is_squarefree() {
                assert!(!ufd_candidate_real(r).unwrap(), "{r}");
            }
        }
        assert!(ufd_candidate_real(2).unwrap());
    }

    struct XorShift(u64);

    impl XorShift {
        fn next(&mut self) -> u64 {
            self.0 ^= self.0 << 13;
            self.0 ^= self.0 >> 7;
            self.0 ^= self.0 << 17;
            self.0
        }

        fn element(&mut self) -> RingElement {
            let v = |s: &mut Self| (s.next() % 2001) as i64 - 1000;
            RingElement::new(v(self), v(self))
        }
    }

    #[test]
    fn norm_is_multiplicative_and_conjugation_is_a_homomorphism() {
        let mut rng = XorShift(0x9e37_79b9_7f4a_7c15);
        for n in -163..=97 {
            let Ok(f) = FieldParams::new(n) else { continue };
            if f.was_reduced() {
                continue;
            }
            for _ in 0..1000 {
                let (a, b) = (rng.element(), rng.element());
                let ab = f.multiply(a, b).unwrap();
                assert_eq!(f.norm(ab).unwrap(), f.norm(a).unwrap() * f.norm(b).unwrap());

                let ca = f.conjugate(a).unwrap();
                assert_eq!(f.conjugate(ca).unwrap(), a);
                assert_eq!(f.norm(ca).unwrap(), f.norm(a).unwrap());
                let cb = f.conjugate(b).unwrap();
                assert_eq!(f.conjugate(ab).unwrap(), f.multiply(ca, cb).unwrap());

                let zz = f.multiply(a, ca).unwrap();
                assert_eq!(zz.y, 0);
                assert_eq!(zz.x.unsigned_abs(), f.norm(a).unwrap());
                assert_eq!(zz.x as i128, f.signed_norm(a).unwrap());
            }
        }
    }
}
