//! Brute-force cross-checks used by `quadprime verify`.

use crate::arithmetic::{factorize_u64, isqrt, kronecker};
use crate::atlas::{classify_point, region_max_norm, PointClass, Region};
use crate::character::CharacterTable;
use crate::error::Result;
use crate::field::{FieldParams, RingElement};
use crate::sieve::NormSet;

/// Arguments `x`, `|x| ≤ 2|d|`, where the table disagrees with `(d/x)`.
pub fn character_mismatches(field: &FieldParams) -> Result<Vec<i64>> {
    let table = CharacterTable::build(field)?;
    let d = field.discriminant();
    let span = 2 * d.abs();
    Ok((-span..=span).filter(|&x| table.chi(x) != kronecker(d, x)).collect())
}

/// Membership in T decided from the factorization of `n`.
pub fn expected_norm_member(d: i64, n: u64) -> bool {
    let chi = |p: u64| kronecker(d, p as i64);
    match factorize_u64(n).factors() {
        [(p, 1)] => chi(*p) >= 0,
        [(p, 2)] => chi(*p) == -1,
        [(p, 1), (q, 1)] => chi(*p) == -1 && chi(*q) == -1,
        _ => false,
    }
}

/// Every `n ≤ max` whose membership in `set` disagrees with factorization.
pub fn sieve_mismatches(field: &FieldParams, set: &NormSet) -> Vec<u64> {
    let d = field.discriminant();
    (0..=set.max())
        .filter(|&n| set.contains(n) != (n >= 2 && expected_norm_member(d, n)))
        .collect()
}

/// Non-units of norm in `[2, bound]`, ordered by norm. Imaginary fields only.
fn small_elements(field: &FieldParams, bound: u64) -> Result<Vec<(u64, RingElement)>> {
    let reach = 2 * isqrt(bound) as i64 + 2;
    let mut out = Vec::new();
    for y in -reach..=reach {
        for x in -reach..=reach {
            let z = RingElement::new(x, y);
            let n = field.norm(z)?;
            if (2..=bound).contains(&n) {
                out.push((n, z));
            }
        }
    }
    out.sort();
    Ok(out)
}

fn divides(field: &FieldParams, a: RingElement, a_norm: u64, z: RingElement) -> Result<bool> {
    let q = field.multiply(z, field.conjugate(a)?)?;
    let n = a_norm as i64;
    Ok(q.x % n == 0 && q.y % n == 0)
}

/// Unit / irreducible / other by trial division over small elements.
/// Only meaningful for imaginary fields, where elements of bounded norm are
/// finite in number.
pub fn irreducibility_class(field: &FieldParams, small: &[(u64, RingElement)], z: RingElement) -> Result<PointClass> {
    let n = field.norm(z)?;
    if n == 0 {
        return Ok(PointClass::Other);
    }
    if n == 1 {
        return Ok(PointClass::Unit);
    }
    let root = isqrt(n);
    for &(an, a) in small.iter().take_while(|(an, _)| *an <= root) {
        if n % an == 0 && divides(field, a, an, z)? {
            return Ok(PointClass::Other);
        }
    }
    Ok(PointClass::Prime)
}

/// Points of `region` where [`classify_point`] and the irreducibility oracle
/// disagree. `set` must reach the region's largest norm.
pub fn point_mismatches(field: &FieldParams, region: Region, set: &NormSet) -> Result<Vec<RingElement>> {
    let bound = isqrt(region_max_norm(field, region)?);
    let small = small_elements(field, bound)?;
    let mut bad = Vec::new();
    for z in region.points() {
        if classify_point(field, set, None, z)? != irreducibility_class(field, &small, z)? {
            bad.push(z);
        }
    }
    Ok(bad)
}
