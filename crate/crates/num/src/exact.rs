//! Exact integer/rational combinatorics: binomials, falling factorials,
//! Bernoulli numbers.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;

use crate::error::{Error, Result};

/// C(n, k) for 0 <= k <= n, exact.
pub fn binomial(n: &BigInt, k: &BigInt) -> Result<BigInt> {
    if n.is_negative() {
        return Err(Error::Argument("binomial: n must be non-negative".into()));
    }
    if k.is_negative() || k > n {
        return Err(Error::Argument("binomial: k out of range".into()));
    }
    let n_u: u64 = n
        .try_into()
        .map_err(|_| Error::Argument("binomial: n too large".into()))?;
    let k_u: u64 = k.try_into().expect("k <= n fits");
    Ok(binomial_u64(n_u, k_u))
}

pub fn binomial_u64(n: u64, k: u64) -> BigInt {
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Falling factorial d(d-1)...(d-n+1); the empty product (n = 0) is 1.
pub fn falling_factorial(d: &BigInt, n: &BigInt) -> Result<BigInt> {
    if n.is_negative() {
        return Err(Error::Argument("falling_factorial: n must be non-negative".into()));
    }
    let n_u: u64 = n
        .try_into()
        .map_err(|_| Error::Argument("falling_factorial: n too large".into()))?;
    let mut acc = BigInt::one();
    let mut f = d.clone();
    for _ in 0..n_u {
        acc *= &f;
        f -= 1;
    }
    Ok(acc)
}

pub fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

static BERNOULLI: Lazy<Mutex<Vec<BigRational>>> = Lazy::new(|| Mutex::new(Vec::new()));
static BINOM_ROW: Lazy<Mutex<HashMap<u64, Vec<BigInt>>>> = Lazy::new(|| Mutex::new(HashMap::new()));

fn binom_row(n: u64) -> Vec<BigInt> {
    let mut cache = BINOM_ROW.lock().unwrap();
    if let Some(r) = cache.get(&n) {
        return r.clone();
    }
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigInt::one();
    for k in 0..=n {
        row.push(c.clone());
        if k < n {
            c = c * BigInt::from(n - k) / BigInt::from(k + 1);
        }
    }
    cache.insert(n, row.clone());
    row
}

/// Bernoulli number B_n (B_1 = -1/2), via the defining recurrence
/// sum_{k=0}^{n} C(n+1, k) B_k = 0.
pub fn bernoulli(n: u64) -> BigRational {
    {
        let cache = BERNOULLI.lock().unwrap();
        if (n as usize) < cache.len() {
            return cache[n as usize].clone();
        }
    }
    let mut cache = BERNOULLI.lock().unwrap();
    if cache.is_empty() {
        cache.push(BigRational::one());
    }
    while cache.len() <= n as usize {
        let m = cache.len() as u64;
        if m >= 3 && m % 2 == 1 {
            cache.push(BigRational::zero());
            continue;
        }
        let row = binom_row(m + 1);
        let mut s = BigRational::zero();
        for (k, b) in cache.iter().enumerate() {
            if !b.is_zero() {
                s += BigRational::from_integer(row[k].clone()) * b;
            }
        }
        let val = -s / BigRational::from_integer(row[m as usize].clone());
        cache.push(val);
    }
    cache[n as usize].clone()
}
