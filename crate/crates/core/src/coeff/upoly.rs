//! Dense univariate polynomials over Q and Z (index = degree), used for gcds
//! and cyclotomic cancellation.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;

pub(crate) fn trim_q(p: &mut Vec<Rational>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn trim_z(p: &mut Vec<BigInt>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

/// Scales a rational polynomial to a primitive integer polynomial with positive leading coefficient.
pub(crate) fn primitive_part(p: &[Rational]) -> Vec<BigInt> {
    let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
    primitive_z(ints)
}

fn primitive_z(mut p: Vec<BigInt>) -> Vec<BigInt> {
    trim_z(&mut p);
    let Some(lead) = p.last() else { return p };
    let mut content = p.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if lead.is_negative() {
        content = -content;
    }
    if !content.is_one() {
        for c in p.iter_mut() {
            *c /= &content;
        }
    }
    p
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = &b[db];
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[dr - db + i] -= &lr * bc;
        }
        r.pop();
        trim_z(&mut r);
    }
    r
}

/// Primitive gcd of two integer polynomials (positive leading coefficient, `[1]` when coprime).
pub(crate) fn gcd_z(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut a = primitive_z(a.to_vec());
    let mut b = primitive_z(b.to_vec());
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if b.len() == 1 {
            return vec![BigInt::one()];
        }
        let r = primitive_z(pseudo_rem(&a, &b));
        a = b;
        b = r;
    }
    a
}

/// Exact quotient `a / b` over Q, or `None` when the remainder is nonzero.
pub(crate) fn div_exact_q(a: &[Rational], b: &[Rational]) -> Option<Vec<Rational>> {
    let db = b.len() - 1;
    if a.len() <= db {
        return if a.iter().all(|c| c.is_zero()) { Some(Vec::new()) } else { None };
    }
    let inv_lead = b[db].recip();
    let mut r = a.to_vec();
    let mut q = vec![Rational::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] * &inv_lead;
        if !c.is_zero() {
            for (i, bc) in b.iter().enumerate() {
                r[k + i] -= &c * bc;
            }
        }
        q[k] = c;
    }
    if r[..db].iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim_q(&mut q);
    Some(q)
}

/// Exact quotient by a monic integer polynomial, or `None` if it does not divide.
pub(crate) fn div_exact_monic(a: &[Rational], b: &[BigInt]) -> Option<Vec<Rational>> {
    let db = b.len() - 1;
    debug_assert!(b[db].is_one());
    if a.len() <= db {
        return if a.iter().all(|c| c.is_zero()) { Some(Vec::new()) } else { None };
    }
    let mut r = a.to_vec();
    let mut q = vec![Rational::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].clone();
        if !c.is_zero() {
            for (i, bc) in b.iter().enumerate() {
                if !bc.is_zero() {
                    r[k + i] -= &c * Rational::from_integer(bc.clone());
                }
            }
        }
        q[k] = c;
    }
    if r[..db].iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim_q(&mut q);
    Some(q)
}

pub(crate) fn mul_z(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn div_exact_z_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = r[k + db].clone();
        for (i, bc) in b.iter().enumerate() {
            r[k + i] -= &c * bc;
        }
        q[k] = c;
    }
    debug_assert!(r.iter().all(|c| c.is_zero()));
    q
}

/// The `n`-th cyclotomic polynomial, cached.
pub(crate) fn cyclotomic(n: u64) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every Phi_d with d | n, d < n.
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d < n {
            p = div_exact_z_monic(&p, &cyclotomic(d));
        }
    }
    let p = Arc::new(p);
    cache.lock().unwrap().insert(n, p.clone());
    p
}

pub(crate) fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub(crate) fn to_q(p: &[BigInt]) -> Vec<Rational> {
    p.iter().map(|c| Rational::from_integer(c.clone())).collect()
}
