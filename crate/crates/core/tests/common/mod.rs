//! Brute-force oracles shared by the integration tests. Nothing here calls
//! the character tables or the sieve.

#![allow(dead_code)]

pub fn trial_factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime_naive(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * b as u128 % m as u128) as u64;
        }
        b = (b as u128 * b as u128 % m as u128) as u64;
        e >>= 1;
    }
    acc
}

/// χ_d(p) for a prime p: Euler's criterion for odd p, the mod-8 rule for 2.
pub fn chi_prime(d: i64, p: u64) -> i8 {
    if p == 2 {
        return match d.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
    }
    let a = d.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    if pow_mod(a, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

/// {p : χ(p) ≥ 0} ∪ {p² : χ(p) = −1} ∪ {pq : p ≠ q, χ(p) = χ(q) = −1}.
pub fn oracle_norm_set(d: i64, max: u64) -> Vec<u64> {
    (2..=max)
        .filter(|&n| match trial_factor(n).as_slice() {
            [(p, 1)] => chi_prime(d, *p) >= 0,
            [(p, 2)] => chi_prime(d, *p) == -1,
            [(p, 1), (q, 1)] => chi_prime(d, *p) == -1 && chi_prime(d, *q) == -1,
            _ => false,
        })
        .collect()
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
}

/// Z[τ] arithmetic restated from scratch for an imaginary field.
#[derive(Clone, Copy)]
pub struct Ring {
    pub r: i64,
}

impl Ring {
    fn half(&self) -> bool {
        self.r.rem_euclid(4) == 1
    }

    pub fn norm(&self, (x, y): (i64, i64)) -> i64 {
        if self.half() {
            let c = (self.r - 1) / 4;
            x * x + x * y - c * y * y
        } else {
            x * x - self.r * y * y
        }
    }

    fn conj(&self, (x, y): (i64, i64)) -> (i64, i64) {
        if self.half() {
            (x + y, -y)
        } else {
            (x, -y)
        }
    }

    fn mul(&self, (a, b): (i64, i64), (c, d): (i64, i64)) -> (i64, i64) {
        if self.half() {
            let k = (self.r - 1) / 4;
            (a * c + b * d * k, a * d + b * c + b * d)
        } else {
            (a * c + b * d * self.r, a * d + b * c)
        }
    }

    /// Does `a` divide `z` in Z[τ]?
    fn divides(&self, a: (i64, i64), z: (i64, i64)) -> bool {
        let n = self.norm(a);
        let (u, v) = self.mul(z, self.conj(a));
        u % n == 0 && v % n == 0
    }

    /// 'U' unit, 'P' irreducible, '.' zero or composite.
    pub fn irreducibility(&self, z: (i64, i64), reach: i64) -> char {
        let n = self.norm(z);
        if n == 0 {
            return '.';
        }
        if n == 1 {
            return 'U';
        }
        for y in -reach..=reach {
            for x in -reach..=reach {
                let a = (x, y);
                let na = self.norm(a);
                if na >= 2 && na * na <= n && self.divides(a, z) {
                    return '.';
                }
            }
        }
        'P'
    }
}
