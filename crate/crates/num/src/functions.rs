//! Transcendental functions on `BigReal`: pi, e, exp, ln, sin/cos, powers.
//!
//! Every routine computes with a guard margin and a rigorous truncation bound,
//! then applies a Ziv-style check: if the guarded result sits too close to a
//! rounding boundary of the requested precision, the guard is doubled and the
//! computation repeated. Inputs are exact decimal values, so the only error
//! sources are series truncation and internal rounding.

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::real::BigReal;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Const {
    Pi,
    E,
    Ln10,
}

static CONSTS: Lazy<Mutex<HashMap<(Const, u32), BigReal>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// Repeat `compute` with growing guard digits until rounding to `prec` digits
/// is unambiguous. `compute(w)` must return a value whose total error is below
/// 10^(mag - w + slack) with slack <= 6.
fn ziv<F: FnMut(u32) -> BigReal>(prec: u32, mut compute: F) -> BigReal {
    let mut guard = 12u32;
    loop {
        let w = prec + guard;
        let v = compute(w);
        if v.is_zero() {
            return v;
        }
        let err = BigReal::pow10_val(v.mag10().unwrap() - w as i64 + 7);
        let r1 = v.round_to(prec);
        let r2 = v.add(&err, prec);
        let r3 = v.sub(&err, prec);
        if r1 == r2 && r1 == r3 {
            return r1;
        }
        guard *= 2;
        if guard > 3000 {
            // pathologically close to a boundary; the guarded value is within
            // one unit in the 3000th guard digit of the true result
            return r1;
        }
    }
}

/// pi via the Chudnovsky series with binary splitting.
pub fn pi(prec: u32) -> BigReal {
    if let Some(v) = CONSTS.lock().unwrap().get(&(Const::Pi, prec)) {
        return v.clone();
    }
    let v = ziv(prec, |w| {
        let terms = (w as u64) / 14 + 3;
        let (_, q, t) = chud_bs(0, terms);
        // sum = A + T/Q, pi = 426880 * sqrt(10005) / sum
        let denom = BigInt::from(13_591_409u64) * &q + t;
        let wq = w + 10;
        let sq = BigReal::from_u64(10005).sqrt(wq).expect("positive");
        let num = BigReal::from_bigint(q).mul(&BigReal::from_u64(426880), wq).mul(&sq, wq);
        num.div(&BigReal::from_bigint(denom), wq).expect("nonzero")
    });
    CONSTS.lock().unwrap().insert((Const::Pi, prec), v.clone());
    v
}

// Binary splitting for Chudnovsky: returns (P, Q, T) over [a, b).
fn chud_bs(a: u64, b: u64) -> (BigInt, BigInt, BigInt) {
    if b - a == 1 {
        let k = a + 1; // term index >= 1; term 0 handled by caller offsets
        let kb = BigInt::from(k);
        let p = (BigInt::from(6 * k as i64 - 5)) * (BigInt::from(2 * k as i64 - 1)) * (BigInt::from(6 * k as i64 - 1));
        let q = &kb * &kb * &kb * BigInt::from(10_939_058_860_032_000u64);
        let mut t = &p * (BigInt::from(13_591_409u64) + BigInt::from(545_140_134u64) * &kb);
        if k % 2 == 1 {
            t = -t;
        }
        (p, q, t)
    } else {
        let m = (a + b) / 2;
        let (p1, q1, t1) = chud_bs(a, m);
        let (p2, q2, t2) = chud_bs(m, b);
        (&p1 * &p2, &q1 * &q2, t1 * q2 + p1 * t2)
    }
}

/// e = sum 1/k!, summed exactly with a common factorial denominator.
pub fn e_const(prec: u32) -> BigReal {
    if let Some(v) = CONSTS.lock().unwrap().get(&(Const::E, prec)) {
        return v.clone();
    }
    let v = ziv(prec, |w| {
        // find K with K! > 10^(w+5)
        let mut k = 10u64;
        let mut lf = 15.104_f64; // log10(10!)
        while lf < (w + 5) as f64 {
            k += 1;
            lf += (k as f64).log10();
        }
        // sum_{j<=K} K!/j! by ascending Horner
        let mut num = BigInt::from(1u32);
        let mut fact = BigInt::from(1u32);
        for i in 1..=k {
            num = num * BigInt::from(i) + 1;
            fact *= BigInt::from(i);
        }
        BigReal::from_bigint(num)
            .div(&BigReal::from_bigint(fact), w + 4)
            .expect("nonzero")
    });
    CONSTS.lock().unwrap().insert((Const::E, prec), v.clone());
    v
}

/// ln 10, via square-root reduction and the atanh series.
pub fn ln10(prec: u32) -> BigReal {
    if let Some(v) = CONSTS.lock().unwrap().get(&(Const::Ln10, prec)) {
        return v.clone();
    }
    let v = ziv(prec, |w| ln_mantissa(&BigReal::from_u64(10), w));
    CONSTS.lock().unwrap().insert((Const::Ln10, prec), v.clone());
    v
}

/// ln x for x in [1, 10]; j square roots bring x to 1 + u with u small, then
/// ln(1+u) = 2 atanh(u / (2 + u)).
fn ln_mantissa(x: &BigReal, w: u32) -> BigReal {
    let j = ((w as f64 * 3.33 / 2.0).sqrt().ceil() as u32).clamp(8, 64);
    let wj = w + (j as f64 * 0.302) as u32 + 6;
    let mut y = x.clone();
    for _ in 0..j {
        y = y.sqrt(wj).expect("positive");
    }
    let one = BigReal::one();
    let u = y.sub(&one, wj);
    if u.is_zero() {
        return BigReal::zero();
    }
    let z = u.div(&u.add(&BigReal::from_u64(2), wj), wj).expect("nonzero");
    // atanh(z) = z + z^3/3 + z^5/5 + ...
    let z2 = z.mul(&z, wj);
    let mut sum = z.clone();
    let mut pow = z.clone();
    let mut n = 1u64;
    let tiny = BigReal::pow10_val(sum.mag10().unwrap_or(0) - wj as i64 - 4);
    loop {
        n += 2;
        pow = pow.mul(&z2, wj);
        let term = pow.div(&BigReal::from_u64(n), wj).expect("nonzero");
        if term.abs().cmp_value(&tiny) == std::cmp::Ordering::Less {
            break;
        }
        sum = sum.add(&term, wj);
    }
    // ln x = 2^(j+1) atanh(z)
    let scale = BigInt::from(2u32).pow(j + 1);
    sum.mul(&BigReal::from_bigint(scale), wj)
}

/// Natural logarithm. Domain: x > 0.
pub fn ln(x: &BigReal, prec: u32) -> Result<BigReal> {
    if x.is_zero() || x.is_negative() {
        return Err(Error::Domain("ln requires a positive argument".into()));
    }
    if *x == BigReal::one() {
        return Ok(BigReal::zero());
    }
    // ln(x) ~ x - 1 near 1; the cancellation depth there must be paid for in
    // working digits or the sqrt-reduction collapses the signal entirely
    let gap = x.sub(&BigReal::one(), (x.digits() as u32).max(8) + 8);
    let cancel = match gap.mag10() {
        Some(g) if g < 0 => (-g) as u32 + 6,
        _ => 0,
    };
    Ok(ziv(prec, |w| {
        // x = m * 10^k with m in [1, 10)
        let k = x.mag10().unwrap();
        let m = x.mul_pow10(-k);
        let kd = if k == 0 { 0 } else { (k.unsigned_abs().ilog10() + 1) as u32 };
        let w2 = w + kd + cancel + 4;
        let lm = ln_mantissa(&m, w2);
        if k == 0 {
            return lm;
        }
        let l10 = ln10(w2);
        lm.add(&l10.mul(&BigReal::from_i64(k), w2), w2)
    }))
}

/// Exponential function. Splits off the power of ten so that arguments with
/// huge magnitude (|x| up to ~1e17) land directly in the i64 decimal exponent.
pub fn exp(x: &BigReal, prec: u32) -> Result<BigReal> {
    if x.is_zero() {
        return Ok(BigReal::one());
    }
    if x.mag10().unwrap() > 17 {
        return Err(Error::Range("exp argument magnitude above 1e18".into()));
    }
    Ok(ziv(prec, |w| {
        let kd = x.mag10().unwrap().max(0) as u32 + 2;
        let w2 = w + kd + 6;
        let l10 = ln10(w2);
        // m = round(x / ln10); r = x - m*ln10 in [-ln10/2 - eps, ln10/2 + eps]
        let m = x.div(&l10, w2).expect("nonzero").round_to_integer();
        let r = x.sub(&BigReal::from_bigint(m.clone()).mul(&l10, w2), w2);
        let m_i64: i64 = i64::try_from(&m).expect("exponent fits i64 by the range check");
        exp_reduced(&r, w).mul_pow10(m_i64)
    }))
}

/// e^r for |r| <= 1.2, via s halvings and the Taylor series.
fn exp_reduced(r: &BigReal, w: u32) -> BigReal {
    let s = ((w as f64 * 3.32).sqrt().ceil() as u32).clamp(6, 64);
    let wq = w + (s as f64 * 0.302) as u32 + 8;
    // divide by 2^s exactly: multiply the mantissa by 5^s, shift the exponent
    let r2 = BigReal::from_parts(
        r.mantissa() * BigInt::from(5u32).pow(s),
        r.exponent() - s as i64,
    );
    // Taylor with explicit term bound
    let mut term = BigReal::one();
    let mut sum = BigReal::one();
    let mut n = 0u64;
    let tiny = BigReal::pow10_val(-(wq as i64) - 4);
    loop {
        n += 1;
        term = term.mul(&r2, wq).div(&BigReal::from_u64(n), wq).expect("nonzero");
        sum = sum.add(&term, wq);
        if term.abs().cmp_value(&tiny) == std::cmp::Ordering::Less {
            break;
        }
    }
    // undo the halvings
    let mut y = sum;
    for _ in 0..s {
        y = y.mul(&y, wq);
    }
    y
}

/// Integer power with correct handling of negative exponents.
pub fn powi(x: &BigReal, n: i64, prec: u32) -> Result<BigReal> {
    if n == 0 {
        return Ok(BigReal::one());
    }
    if x.is_zero() {
        if n < 0 {
            return Err(Error::Domain("zero to a negative power".into()));
        }
        return Ok(BigReal::zero());
    }
    let w = prec + 10 + 64u32.saturating_sub(n.unsigned_abs().leading_zeros());
    let mut base = x.clone();
    let mut e = n.unsigned_abs();
    let mut acc = BigReal::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base, w);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base, w);
        }
    }
    let acc = if n < 0 { acc.recip(w)? } else { acc };
    Ok(acc.round_to(prec))
}

/// x^y. Integer exponents are dispatched to `powi`; otherwise x must be
/// positive and exp(y ln x) is used.
pub fn pow(x: &BigReal, y: &BigReal, prec: u32) -> Result<BigReal> {
    if y.is_integer() {
        if let Ok(n) = i64::try_from(&y.round_to_integer()) {
            return powi(x, n, prec);
        }
    }
    if x.is_zero() || x.is_negative() {
        return Err(Error::Domain("pow requires positive base for non-integer exponent".into()));
    }
    let w = prec + 12 + y.mag10().unwrap_or(0).max(0) as u32;
    let l = ln(x, w)?;
    exp(&l.mul(y, w), prec)
}

/// Simultaneous sin and cos with argument reduction modulo pi/2.
pub fn sin_cos(x: &BigReal, prec: u32) -> (BigReal, BigReal) {
    if x.is_zero() {
        return (BigReal::zero(), BigReal::one());
    }
    if x.mag10().unwrap() > 17 {
        panic!("sin/cos argument magnitude above supported reduction range");
    }
    let compute = |w: u32| -> (BigReal, BigReal) {
        let kd = x.mag10().unwrap().max(0) as u32 + 2;
        let w2 = w + kd + 6;
        let half_pi = pi(w2).div(&BigReal::from_u64(2), w2).expect("nonzero");
        let k = x.div(&half_pi, w2).expect("nonzero").round_to_integer();
        let r = x.sub(&BigReal::from_bigint(k.clone()).mul(&half_pi, w2), w2);
        let (s, c) = sin_cos_reduced(&r, w);
        let q: i64 = (&k % BigInt::from(4)).try_into().unwrap();
        match q.rem_euclid(4) {
            0 => (s, c),
            1 => (c, s.neg()),
            2 => (s.neg(), c.neg()),
            _ => (c.neg(), s),
        }
    };
    // Ziv on both components jointly
    let mut guard = 12u32;
    loop {
        let w = prec + guard;
        let (s, c) = compute(w);
        let ok = |v: &BigReal| -> bool {
            if v.is_zero() {
                return true;
            }
            let err = BigReal::pow10_val(-(w as i64) + 7); // absolute bound: |sin|,|cos| <= 1
            let r1 = v.round_to(prec);
            r1 == v.add(&err, prec) && r1 == v.sub(&err, prec)
        };
        if (ok(&s) && ok(&c)) || guard > 3000 {
            return (s.round_to(prec), c.round_to(prec));
        }
        guard *= 2;
    }
}

pub fn sin(x: &BigReal, prec: u32) -> BigReal {
    sin_cos(x, prec).0
}

pub fn cos(x: &BigReal, prec: u32) -> BigReal {
    sin_cos(x, prec).1
}

fn sin_cos_reduced(r: &BigReal, w: u32) -> (BigReal, BigReal) {
    let wq = w + 8;
    let r2 = r.mul(r, wq);
    let mut s = r.clone();
    let mut c = BigReal::one();
    let mut term_s = r.clone();
    let mut term_c = BigReal::one();
    let tiny = BigReal::pow10_val(-(wq as i64) - 4);
    let mut n = 0u64;
    loop {
        n += 1;
        // cos term: (-1)^n r^(2n)/(2n)!, sin term: (-1)^n r^(2n+1)/(2n+1)!
        term_c = term_c
            .mul(&r2, wq)
            .div(&BigReal::from_u64((2 * n - 1) * (2 * n)), wq)
            .expect("nonzero")
            .neg();
        c = c.add(&term_c, wq);
        term_s = term_s
            .mul(&r2, wq)
            .div(&BigReal::from_u64((2 * n) * (2 * n + 1)), wq)
            .expect("nonzero")
            .neg();
        s = s.add(&term_s, wq);
        if term_c.abs().cmp_value(&tiny) == std::cmp::Ordering::Less
            && term_s.abs().cmp_value(&tiny) == std::cmp::Ordering::Less
        {
            break;
        }
    }
    (s, c)
}

/// sin(x)/x with the removable singularity filled in.
pub fn sinc(x: &BigReal, prec: u32) -> BigReal {
    if x.is_zero() {
        return BigReal::one();
    }
    let w = prec + 8;
    sin(x, w).div(x, prec).expect("nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;

    const PI50: &str = "3.1415926535897932384626433832795028841971693993751";

    #[test]
    fn pi_matches_reference_digits() {
        let p = pi(50);
        assert_eq!(p.to_string_digits(50), BigReal::parse(PI50).unwrap().to_decimal_string());
    }

    #[test]
    fn e_matches_reference() {
        let e = e_const(40);
        assert_eq!(
            e.to_string_digits(30),
            BigReal::parse("2.71828182845904523536028747135").unwrap().to_decimal_string()
        );
    }

    #[test]
    fn exp_ln_inverse_pair() {
        let x = BigReal::parse("7.5").unwrap();
        let y = exp(&ln(&x, 60).unwrap(), 50).unwrap();
        assert!(y.agrees_within(&x, -48));
        let z = ln(&exp(&x, 60).unwrap(), 50).unwrap();
        assert!(z.agrees_within(&x, -48));
    }

    #[test]
    fn exp_huge_negative_argument() {
        // e^(-1000000) = 10^(-1000000/ln10); exponent must land in i64 range
        let x = BigReal::from_i64(-1_000_000);
        let v = exp(&x, 30).unwrap();
        let mag = v.mag10().unwrap();
        // -1000000/ln(10) = -434294.48...
        assert_eq!(mag, -434_295);
        assert_eq!(&v.to_decimal_string()[..6], "3.2968");
    }

    #[test]
    fn sin_cos_basics() {
        let w = 45;
        let p = pi(60);
        assert!(sin(&p, w).agrees_within(&BigReal::zero(), -44));
        let half = p.div(&BigReal::from_u64(2), 60).unwrap();
        assert!(sin(&half, w).agrees_within(&BigReal::one(), -44));
        assert!(cos(&p, w).agrees_within(&BigReal::from_i64(-1), -44));
        let s1 = sin(&BigReal::one(), 40);
        assert_eq!(&s1.to_string_digits(16).to_string(), "8.414709848078965e-1");
    }

    #[test]
    fn sinc_values() {
        assert_eq!(sinc(&BigReal::zero(), 30), BigReal::one());
        let s = sinc(&BigReal::one(), 30);
        assert_eq!(&s.to_string_digits(15).to_string(), "8.41470984807897e-1");
    }

    #[test]
    fn pow_paths() {
        let two = BigReal::from_u64(2);
        assert_eq!(powi(&two, 10, 30).unwrap(), BigReal::from_u64(1024));
        assert!(powi(&two, -1, 30).unwrap().agrees_within(&BigReal::parse("0.5").unwrap(), -29));
        let r = pow(&two, &BigReal::parse("0.5").unwrap(), 40).unwrap();
        assert!(r.agrees_within(&two.sqrt(50).unwrap(), -38));
    }
}
