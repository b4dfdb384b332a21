//! Digit-count sequences a(n)/b(n) (even/odd decimal digits), the weighted
//! series sum c_k(n)/k^n with c_k(n) = k^5 a(n) - b(n)/k^5, its
//! generating-function closed form, and the near-miss fraction
//! (k^11 - 1)/(k^4 (k^2 - 1)) together with the exact error term.
//!
//! Zero counts as one even digit; that convention is forced by the constant
//! term k^5 of the generating function.

use num_traits::{Signed, Zero};
use zoo_num::functions::powi;
use zoo_num::{BigInt, BigRational, BigReal, Error, PrecisionContext, Result};

/// Even/odd/total decimal digit counts of a non-negative integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DigitCounts {
    pub even: u32,
    pub odd: u32,
    pub total: u32,
}

pub fn digit_counts(n: &BigInt) -> Result<DigitCounts> {
    if n.is_negative() {
        return Err(Error::Argument("digit counts need n >= 0".into()));
    }
    let s = n.to_string();
    let mut even = 0u32;
    for b in s.bytes() {
        if (b - b'0') % 2 == 0 {
            even += 1;
        }
    }
    let total = s.len() as u32;
    Ok(DigitCounts { even, odd: total - even, total })
}

/// c_k(n) = k^5 a(n) - b(n)/k^5 = (k^10 a(n) - b(n))/k^5, exact.
pub fn c_sequence_value(n: &BigInt, k: &BigInt) -> Result<BigRational> {
    if k < &BigInt::from(2) {
        return Err(Error::Argument("base k must be >= 2".into()));
    }
    let dc = digit_counts(n)?;
    let k5 = k.pow(5);
    let num = &k5 * &k5 * BigInt::from(dc.even) - BigInt::from(dc.odd);
    Ok(BigRational::new(num, k5))
}

/// Partial sum sum_{n < n_terms} c_k(n)/k^n, accumulated exactly by Horner and
/// rounded once at the end.
pub fn direct_sum(k: u64, n_terms: u64, ctx: &PrecisionContext) -> Result<BigReal> {
    if k < 2 {
        return Err(Error::Argument("base k must be >= 2".into()));
    }
    if n_terms < 1 {
        return Err(Error::Argument("need at least one term".into()));
    }
    if n_terms > ctx.max_terms() {
        return Err(Error::TermCapExceeded { cap: ctx.max_terms() });
    }
    let kb = BigInt::from(k);
    let k10 = kb.pow(10);
    // num = sum (k^10 a(n) - b(n)) k^(N-1-n), den = k^(N-1) * k^5
    let mut num = BigInt::zero();
    for n in 0..n_terms {
        let dc = digit_counts(&BigInt::from(n))?;
        num = num * &kb + (&k10 * BigInt::from(dc.even) - BigInt::from(dc.odd));
    }
    let den = kb.pow((n_terms - 1) as u32 + 5);
    let w = ctx.working();
    BigReal::from_bigint(num).div(&BigReal::from_bigint(den), w)
}

/// Upper bound on the truncation error of `direct_sum`: the omitted terms are
/// at most k^5 d(n) k^-n with d(n) <= n, so the tail is below
/// k^5 k^(-N) (N + 2)(k/(k-1))^2.
pub fn direct_sum_tail_bound(k: u64, n_terms: u64, prec: u32) -> BigReal {
    let w = prec + 8;
    let kb = BigReal::from_u64(k);
    let geo = kb.div(&kb.sub(&BigReal::one(), w), w).expect("k >= 2");
    powi(&kb, 5 - n_terms as i64, w)
        .expect("nonzero")
        .mul(&BigReal::from_u64(n_terms + 2), w)
        .mul(&geo.mul(&geo, w), w)
}

/// The n-th term of the generating-function form evaluated at x = 1/k:
/// (k/(k-1)) (k^(5-2*10^n) - k^(-5-10^n)) / (1 + k^(-10^n)).
/// The n = 1 term vanishes identically (both exponents are -15).
pub fn gf_term(k: u64, n: u32, prec: u32) -> Result<BigReal> {
    let w = prec + 10;
    let kb = BigReal::from_u64(k);
    let p = 10i64.checked_pow(n).ok_or_else(|| Error::Range("10^n exponent overflow".into()))?;
    let t1 = powi(&kb, 5 - 2 * p, w)?;
    let t2 = powi(&kb, -5 - p, w)?;
    let den = BigReal::one().add(&powi(&kb, -p, w)?, w);
    let front = kb.div(&kb.sub(&BigReal::one(), w), w)?;
    front.mul(&t1.sub(&t2, w), w).div(&den, prec)
}

/// k^5 + sum_{n < gf_terms} gf_term(k, n): the generating-function value of
/// the full series, truncated after `gf_terms` doubly-exponentially small
/// terms (the n = 6 term is already ~ k^(-10^6)).
pub fn gf_closed_sum(k: u64, gf_terms: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    if k < 2 {
        return Err(Error::Argument("base k must be >= 2".into()));
    }
    if gf_terms < 1 {
        return Err(Error::Argument("need at least one generating-function term".into()));
    }
    let w = ctx.working();
    let mut sum = powi(&BigReal::from_u64(k), 5, w)?;
    for n in 0..gf_terms {
        sum = sum.add(&gf_term(k, n, w)?, w);
    }
    Ok(sum)
}

/// The closed approximation k^5 + (k^4 - k^-5)/(k - 1/k), simplified to
/// (k^11 - 1)/(k^4 (k^2 - 1)), exact and already in lowest terms.
pub fn approx_fraction(k: u64) -> Result<BigRational> {
    if k < 2 {
        return Err(Error::Argument("base k must be >= 2".into()));
    }
    let kb = BigInt::from(k);
    let num = kb.pow(11) - 1;
    let den = kb.pow(4) * (kb.pow(2) - 1);
    Ok(BigRational::new(num, den))
}

/// Decimal rendering "numerator/denominator" of approx_fraction(10^p): eleven
/// 1's separated by p-1 zeros over 1 [p-1 zeros] 1 [4p zeros].
pub fn pattern_string(p: u32) -> Result<String> {
    if p < 1 {
        return Err(Error::Argument("pattern exponent p must be >= 1".into()));
    }
    if p > 15 {
        return Err(Error::Range("pattern exponent p > 15 not supported".into()));
    }
    let f = approx_fraction(10u64.pow(p))?;
    Ok(format!("{}/{}", f.numer(), f.denom()))
}

/// Exact deficit approx_fraction(k) - gf_closed_sum(k, 6), computed with
/// enough internal digits to survive the ~110 log10(k) digit cancellation.
pub fn epsilon_exact(k: u64, ctx: &PrecisionContext) -> Result<BigReal> {
    let needed = (110.0 * (k as f64).log10()).ceil() as u32 + 50;
    let wd = ctx.working().max(needed);
    let inner = PrecisionContext::new(wd).with_guard_digits(10);
    let apf = BigReal::from_ratio(&approx_fraction(k)?, inner.working() + 8);
    let gf = gf_closed_sum(k, 6, &inner)?;
    Ok(apf.sub(&gf, inner.working()).round_to(ctx.working()))
}
