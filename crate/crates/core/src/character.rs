//! Quadratic character χ_d over one period.
//!
//! The table is assembled multiplicatively: one Legendre table per odd prime
//! factor `p` of the radicand (each an instance of χ_{p'} with p' = ±p ≡ 1 mod 4)
//! times, for even discriminants, one of the fixed tables for e ∈ {−4, +8, −8}.

use crate::error::{Error, Result};
use crate::field::FieldParams;

/// Largest period a table may have.
pub const MAX_PERIOD: u64 = (1 << 31) - 1;

const CHI_MINUS_4: [i8; 4] = [0, 1, 0, -1];
const CHI_PLUS_8: [i8; 8] = [0, 1, 0, -1, 0, -1, 0, 1];
const CHI_MINUS_8: [i8; 8] = [0, 1, 0, 1, 0, -1, 0, -1];

/// Values of χ_d over `0 ≤ x < period`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    d: i64,
    period: usize,
    values: Vec<i8>,
}

impl CharacterTable {
    /// χ_d for one full period `|d|`.
    pub fn build(field: &FieldParams) -> Result<Self> {
        let d = field.discriminant();
        let period = checked_period(d.unsigned_abs())?;
        let r = field.radicand();

        let mut values = match d.rem_euclid(4) {
            0 => {
                let e: &[i8] = match r.rem_euclid(8) {
                    3 | 7 => &CHI_MINUS_4,
                    2 => &CHI_PLUS_8,
                    6 => &CHI_MINUS_8,
                    _ => unreachable!("squarefree radicand {r} with even discriminant"),
                };
                e.iter().copied().cycle().take(period).collect()
            }
            _ => vec![1i8; period],
        };

        for p in field.radicand_factors().primes().filter(|&p| p != 2) {
            let legendre = legendre_table(p as usize);
            let mut k = 0usize;
            for v in values.iter_mut() {
                *v *= legendre[k];
                k += 1;
                if k == legendre.len() {
                    k = 0;
                }
            }
        }

        Ok(CharacterTable { d, period, values })
    }

    /// Period-2|d| table for odd discriminants. Even indices hold 0 and odd
    /// indices hold χ_d.
    pub fn build_odd(field: &FieldParams) -> Result<Self> {
        if !field.half_basis() {
            return Err(Error::Domain(format!(
                "odd character needs an odd discriminant, got {}",
                field.discriminant()
            )));
        }
        let base = Self::build(field)?;
        let period = checked_period(2 * base.period as u64)?;
        let values = (0..period)
            .map(|x| if x % 2 == 1 { base.values[x % base.period] } else { 0 })
            .collect();
        Ok(CharacterTable {
            d: base.d,
            period,
            values,
        })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn values(&self) -> &[i8] {
        &self.values
    }

    /// χ(x) for any integer, using periodicity and the sign rule
    /// χ(−x) = sign(d)·χ(x).
    pub fn chi(&self, x: i64) -> i8 {
        let v = self.values[(x.unsigned_abs() % self.period as u64) as usize];
        if x < 0 && self.d < 0 {
            -v
        } else {
            v
        }
    }

    /// χ(n) for a non-negative argument.
    #[inline]
    pub fn chi_u64(&self, n: u64) -> i8 {
        self.values[(n % self.period as u64) as usize]
    }

    /// The first `width` values rendered as `+`, `-` and `0`.
    pub fn symbols(&self, width: usize) -> String {
        self.values
            .iter()
            .take(width)
            .map(|&v| match v {
                1 => '+',
                -1 => '-',
                _ => '0',
            })
            .collect()
    }

    pub fn count(&self, value: i8) -> usize {
        self.values.iter().filter(|&&v| v == value).count()
    }
}

fn checked_period(p: u64) -> Result<usize> {
    if p > MAX_PERIOD {
        return Err(Error::Domain(format!("character period {p} exceeds {MAX_PERIOD}")));
    }
    Ok(p as usize)
}

/// 0 at 0, +1 on the non-zero squares mod p, −1 elsewhere.
fn legendre_table(p: usize) -> Vec<i8> {
    let mut t = vec![-1i8; p];
    t[0] = 0;
    for n in 1..=p / 2 {
        t[n * n % p] = 1;
    }
    t
}

pub fn build_character(field: &FieldParams) -> Result<CharacterTable> {
    CharacterTable::build(field)
}

pub fn odd_character(field: &FieldParams) -> Result<CharacterTable> {
    CharacterTable::build_odd(field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithmetic::kronecker;

    fn table(n: i64) -> CharacterTable {
        build_character(&FieldParams::new(n).unwrap()).unwrap()
    }

    #[test]
    fn fixed_tables() {
        assert_eq!(table(-1).values(), &[0, 1, 0, -1]);
        assert_eq!(table(2).values(), &[0, 1, 0, -1, 0, -1, 0, 1]);
        assert_eq!(table(-2).values(), &[0, 1, 0, 1, 0, -1, 0, -1]);
        assert_eq!(table(5).values(), &[0, 1, -1, -1, 1]);
        assert_eq!(table(-1).symbols(80), "0+0-");
        assert_eq!(table(2).symbols(3), "0+0");
    }

    #[test]
    fn chi_examples() {
        let t = table(-1);
        assert_eq!(t.chi(7), -1);
        assert_eq!(t.chi(-1), -1);
        assert_eq!(t.chi(0), 0);
        assert_eq!(table(5).chi(11), 1);
        assert_eq!(t.chi(i64::MIN), kronecker(-4, i64::MIN));
    }

    #[test]
    fn odd_character_examples() {
        let f5 = FieldParams::new(5).unwrap();
        let t = odd_character(&f5).unwrap();
        assert_eq!(t.period(), 10);
        let odd: Vec<i8> = [1, 3, 5, 7, 9].iter().map(|&x| t.values()[x]).collect();
        assert_eq!(odd, vec![1, -1, 0, -1, 1]);
        assert!(t.values().iter().step_by(2).all(|&v| v == 0));

        let t = odd_character(&FieldParams::new(-3).unwrap()).unwrap();
        assert_eq!(t.period(), 6);
        assert_eq!([t.values()[1], t.values()[3], t.values()[5]], [1, 0, -1]);

        assert!(odd_character(&FieldParams::new(-1).unwrap()).is_err());
        for n in [-23, 17, 229, -163] {
            let f = FieldParams::new(n).unwrap();
            let t = odd_character(&f).unwrap();
            assert_eq!(t.values()[1], 1);
            for x in (1..t.period() as i64 * 2).step_by(2) {
                assert_eq!(t.chi(x), kronecker(f.discriminant(), x));
            }
        }
    }

    #[test]
    fn matches_kronecker_everywhere() {
        for n in -200i64..=200 {
            let Ok(f) = FieldParams::new(n) else { continue };
            if f.was_reduced() || n.abs() < 2 {
                continue;
            }
            let t = build_character(&f).unwrap();
            let d = f.discriminant();
            let span = 2 * d.abs();
            for x in -span..=span {
                assert_eq!(t.chi(x), kronecker(d, x), "d={d} x={x}");
            }
        }
    }

    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }

    #[test]
    fn multiplicative_and_symmetric() {
        for n in -25i64..=25 {
            let Ok(f) = FieldParams::new(n) else { continue };
            let t = build_character(&f).unwrap();
            let d = f.discriminant();
            if d.abs() > 100 {
                continue;
            }
            let p = t.period() as i64;
            for x in 0..p {
                for y in 0..p {
                    assert_eq!(t.chi(x * y), t.chi(x) * t.chi(y));
                }
                let sign = if d > 0 { 1 } else { -1 };
                assert_eq!(t.chi(-x), sign * t.chi(x));
            }
        }
    }

    #[test]
    fn zeros_exactly_at_non_units() {
        for n in [-1i64, -5, -23, 2, 6, 10, 79, 229, 105] {
            let t = table(n);
            let p = t.period() as u64;
            for (x, &v) in t.values().iter().enumerate() {
                assert_eq!(v == 0, gcd(x as u64, p) != 1, "d={} x={x}", t.d());
            }
            assert_eq!(t.count(1), t.count(-1));
        }
    }
}
