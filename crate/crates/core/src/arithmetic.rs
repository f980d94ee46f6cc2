//! Exact integer utilities: trial-division factorization, squarefree
//! reduction and the Legendre-Jacobi-Kronecker symbol.

use crate::error::{Error, Result};

/// Prime factorization of the magnitude of a non-zero integer.
///
/// Primes are strictly increasing and every exponent is at least one.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Number of distinct prime factors.
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    /// Recombines the factors; `None` on overflow.
    pub fn product(&self) -> Option<u64> {
        self.factors
            .iter()
            .try_fold(1u64, |acc, &(p, e)| p.checked_pow(e).and_then(|pe| acc.checked_mul(pe)))
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }
}

/// Factors `|n|` by trial division.
pub fn factorize(n: i64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::Domain("cannot factor 0".into()));
    }
    Ok(factorize_u64(n.unsigned_abs()))
}

pub(crate) fn factorize_u64(mut n: u64) -> Factorization {
    let mut factors = Vec::new();
    let mut push = |n: &mut u64, p: u64| {
        let mut e = 0;
        while (*n).is_multiple_of(p) {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    push(&mut n, 2);
    push(&mut n, 3);
    // 6k ± 1 wheel
    let mut p = 5u64;
    while p.checked_mul(p).is_some_and(|sq| sq <= n) {
        push(&mut n, p);
        push(&mut n, p + 2);
        p += 6;
    }
    if n > 1 {
        factors.push((n, 1));
    }
    Factorization { factors }
}

/// Writes `n = r·s²` with `r` squarefree and `sign(r) = sign(n)`.
pub fn squarefree_reduce(n: i64) -> Result<(i64, u64)> {
    let fact = factorize(n)?;
    let mut r: i64 = 1;
    let mut s: u64 = 1;
    for &(p, e) in fact.factors() {
        if e % 2 == 1 {
            // p ≤ |n| ≤ 2^63 and r·p divides n, so this only fails for n = i64::MIN
            r = r
                .checked_mul(i64::try_from(p).map_err(|_| Error::Overflow("squarefree_reduce"))?)
                .ok_or(Error::Overflow("squarefree_reduce"))?;
        }
        s = p
            .checked_pow(e / 2)
            .and_then(|q| s.checked_mul(q))
            .ok_or(Error::Overflow("squarefree_reduce"))?;
    }
    Ok((if n < 0 { -r } else { r }, s))
}

/// The Legendre-Jacobi-Kronecker symbol `(a/b)`, total on all integer pairs.
///
/// Powers of two in `b` are stripped with the `(a/2)` rule and the odd part is
/// evaluated with the binary Jacobi algorithm, so `b` is never factored.
pub fn kronecker(a: i64, b: i64) -> i8 {
    if b == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut sign = if b < 0 && a < 0 { -1 } else { 1 };
    let mut n = b.unsigned_abs();
    let twos = n.trailing_zeros();
    if twos > 0 {
        if a & 1 == 0 {
            return 0;
        }
        if twos & 1 == 1 && matches!(a.rem_euclid(8), 3 | 5) {
            sign = -sign;
        }
        n >>= twos;
    }
    let residue = (a as i128).rem_euclid(n as i128) as u64;
    sign * jacobi(residue, n)
}

/// Jacobi symbol `(a/n)` for odd `n > 0` and `0 ≤ a < n`.
fn jacobi(mut a: u64, mut n: u64) -> i8 {
    debug_assert!(n & 1 == 1);
    let mut t = 1i8;
    while a != 0 {
        let twos = a.trailing_zeros();
        a >>= twos;
        if twos & 1 == 1 && matches!(n & 7, 3 | 5) {
            t = -t;
        }
        if a & 3 == 3 && n & 3 == 3 {
            t = -t;
        }
        std::mem::swap(&mut a, &mut n);
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the first twelve prime bases cover all of `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Integer square root, `⌊√n⌋`.
pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x.checked_mul(x).is_none_or(|sq| sq > n) {
        x -= 1;
    }
    while (x + 1).checked_mul(x + 1).is_some_and(|sq| sq <= n) {
        x += 1;
    }
    x
}
