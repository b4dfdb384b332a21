//! Gamma family: gamma, digamma, beta for positive real arguments.
//!
//! Algorithm: shift the argument up until the Stirling series with Bernoulli
//! coefficients converges below the target, then divide the shift factors
//! back out. The series remainder for real positive arguments is bounded by
//! the first omitted term, which drives the stopping rule.

use zoo_num::exact::bernoulli;
use zoo_num::functions::{exp, ln, pi};
use zoo_num::{BigReal, Error, Result};

/// Shift target: the Stirling series at z >= 0.37*wd + 10 bottoms out below
/// 10^-wd before k ~ 1.2*wd.
fn stirling_threshold(wd: u32) -> f64 {
    0.37 * wd as f64 + 10.0
}

/// ln Gamma(z) for z at or above the Stirling threshold.
fn ln_gamma_stirling(z: &BigReal, wd: u32) -> BigReal {
    let w = wd + 6;
    let lz = ln(z, w).expect("z > 0");
    let half = BigReal::parse("0.5").unwrap();
    // (z - 1/2) ln z - z + ln(2 pi)/2
    let two_pi = pi(w).mul(&BigReal::from_u64(2), w);
    let mut acc = z
        .sub(&half, w)
        .mul(&lz, w)
        .sub(z, w)
        .add(&ln(&two_pi, w).expect("positive").mul(&half, w), w);
    // + sum B_2k / (2k (2k-1) z^(2k-1))
    let zinv = z.recip(w).expect("nonzero");
    let zinv2 = zinv.mul(&zinv, w);
    let mut p = zinv.clone();
    let tiny = BigReal::pow10_val(-(w as i64) - 2);
    let mut k = 1u64;
    loop {
        let b = BigReal::from_ratio(&bernoulli(2 * k), w);
        let term = b
            .mul(&p, w)
            .div(&BigReal::from_u64(2 * k * (2 * k - 1)), w)
            .expect("nonzero");
        acc = acc.add(&term, w);
        if term.abs().cmp_value(&tiny) == std::cmp::Ordering::Less {
            break;
        }
        p = p.mul(&zinv2, w);
        k += 1;
        assert!(k < 4000, "Stirling series failed to converge; shift too small");
    }
    acc
}

/// Gamma function for x > 0, relative error <= 10^-prec.
pub fn gamma(x: &BigReal, prec: u32) -> Result<BigReal> {
    if x.is_zero() || x.is_negative() {
        return Err(Error::Domain("gamma requires x > 0".into()));
    }
    let wd = prec + 10;
    let x0 = stirling_threshold(wd);
    let xf = x.to_f64();
    let shift = if xf < x0 { (x0 - xf).ceil() as u64 } else { 0 };
    let z = x.add(&BigReal::from_u64(shift), wd + 6);
    let lg = ln_gamma_stirling(&z, wd);
    let mut g = exp(&lg, wd)?;
    // Gamma(x) = Gamma(x + s) / (x (x+1) ... (x+s-1))
    if shift > 0 {
        let mut denom = x.clone();
        let mut f = x.clone();
        for _ in 1..shift {
            f = f.add(&BigReal::one(), wd);
            denom = denom.mul(&f, wd);
        }
        g = g.div(&denom, wd)?;
    }
    Ok(g.round_to(prec + 2))
}

/// Digamma psi(x) = Gamma'(x)/Gamma(x) for x > 0.
pub fn digamma(x: &BigReal, prec: u32) -> Result<BigReal> {
    if x.is_zero() || x.is_negative() {
        return Err(Error::Domain("digamma requires x > 0".into()));
    }
    let wd = prec + 10;
    let w = wd + 6;
    let x0 = stirling_threshold(wd);
    let xf = x.to_f64();
    let shift = if xf < x0 { (x0 - xf).ceil() as u64 } else { 0 };
    let z = x.add(&BigReal::from_u64(shift), w);
    // psi(z) = ln z - 1/(2z) - sum B_2k / (2k z^2k)
    let lz = ln(&z, w)?;
    let zinv = z.recip(w)?;
    let zinv2 = zinv.mul(&zinv, w);
    let mut acc = lz.sub(&zinv.div(&BigReal::from_u64(2), w)?, w);
    let mut p = zinv2.clone();
    let tiny = BigReal::pow10_val(-(w as i64) - 2);
    let mut k = 1u64;
    loop {
        let term = BigReal::from_ratio(&bernoulli(2 * k), w)
            .mul(&p, w)
            .div(&BigReal::from_u64(2 * k), w)?;
        acc = acc.sub(&term, w);
        if term.abs().cmp_value(&tiny) == std::cmp::Ordering::Less {
            break;
        }
        p = p.mul(&zinv2, w);
        k += 1;
        assert!(k < 4000, "digamma series failed to converge");
    }
    // psi(x) = psi(x + s) - sum_{i=0}^{s-1} 1/(x + i)
    if shift > 0 {
        let mut f = x.clone();
        for i in 0..shift {
            if i > 0 {
                f = f.add(&BigReal::one(), w);
            }
            acc = acc.sub(&f.recip(w)?, w);
        }
    }
    Ok(acc.round_to(prec + 2))
}

/// Euler beta function B(a, b) = Gamma(a) Gamma(b) / Gamma(a+b).
pub fn beta(a: &BigReal, b: &BigReal, prec: u32) -> Result<BigReal> {
    let w = prec + 8;
    let ga = gamma(a, w)?;
    let gb = gamma(b, w)?;
    let gab = gamma(&a.add(b, w + 4), w)?;
    Ok(ga.mul(&gb, w).div(&gab, w)?.round_to(prec + 2))
}
