//! Arbitrary-precision decimal floating point.
//!
//! A `BigReal` is `mantissa * 10^exponent` with a `BigInt` mantissa and an
//! `i64` decimal exponent, kept canonical (no trailing zero digits, zero has
//! exponent 0). The representation is decimal on purpose: precision targets in
//! this project are stated in decimal digits, serialization must round-trip
//! losslessly, and magnitudes like 10^-272856 (or 10^-4e10) must be exactly
//! representable. Add/sub/mul/div/sqrt round correctly (half-even) to the
//! requested number of significant digits.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;

use crate::error::{Error, Result};

const LOG10_2: f64 = 0.301_029_995_663_981_2;

static POW10: Lazy<Mutex<HashMap<u64, BigUint>>> = Lazy::new(|| Mutex::new(HashMap::new()));

/// 10^n as a `BigUint`, cached. `n` is a digit-shift, bounded by the working
/// mantissa sizes in play, never by value exponents.
pub fn pow10(n: u64) -> BigUint {
    assert!(n <= 50_000_000, "pow10 shift {n} out of sane range");
    if n <= 19 {
        return BigUint::from(10u64.pow(n as u32));
    }
    let mut cache = POW10.lock().unwrap();
    if let Some(v) = cache.get(&n) {
        return v.clone();
    }
    let v = BigUint::from(10u32).pow(n as u32);
    cache.insert(n, v.clone());
    v
}

/// Number of decimal digits of `m` (0 for zero).
pub fn dec_digits(m: &BigUint) -> u64 {
    if m.is_zero() {
        return 0;
    }
    let bits = m.bits();
    let est = ((bits as f64) * LOG10_2) as u64;
    if *m >= pow10(est) {
        est + 1
    } else {
        est
    }
}

fn dec_digits_int(m: &BigInt) -> u64 {
    dec_digits(m.magnitude())
}

/// Round the magnitude `m` to `dec_digits(m) - drop` digits, half-even.
///
/// `sticky` records an unrepresented residue strictly smaller than one unit in
/// the last dropped position: +1 if the true magnitude is slightly larger than
/// `m`, -1 if slightly smaller, 0 if `m` is exact.
fn round_mag(m: &BigUint, drop: u64, sticky: i8) -> BigUint {
    if drop == 0 {
        return m.clone();
    }
    let p = pow10(drop);
    let (q, r) = m.div_rem(&p);
    let half = &p >> 1; // 10^drop / 2 = 5*10^(drop-1), exact
    let up = match r.cmp(&half) {
        Ordering::Greater => true,
        Ordering::Less => false,
        Ordering::Equal => match sticky {
            1 => true,
            -1 => false,
            _ => q.is_odd(),
        },
    };
    if up {
        q + 1u32
    } else {
        q
    }
}

/// Arbitrary-precision decimal float: `mant * 10^exp`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigReal {
    mant: BigInt,
    exp: i64,
}

impl BigReal {
    pub fn zero() -> Self {
        BigReal { mant: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        BigReal { mant: BigInt::one(), exp: 0 }
    }

    pub fn from_bigint(m: BigInt) -> Self {
        let mut r = BigReal { mant: m, exp: 0 };
        r.normalize();
        r
    }

    pub fn from_i64(v: i64) -> Self {
        Self::from_bigint(BigInt::from(v))
    }

    pub fn from_u64(v: u64) -> Self {
        Self::from_bigint(BigInt::from(v))
    }

    /// `m * 10^exp`, normalized.
    pub fn from_parts(m: BigInt, exp: i64) -> Self {
        let mut r = BigReal { mant: m, exp };
        r.normalize();
        r
    }

    /// Exact rational converted with correct rounding to `prec` digits.
    pub fn from_ratio(r: &BigRational, prec: u32) -> Self {
        Self::from_bigint(r.numer().clone())
            .div(&Self::from_bigint(r.denom().clone()), prec)
            .expect("denominator is nonzero by BigRational invariant")
    }

    fn normalize(&mut self) {
        if self.mant.is_zero() {
            self.exp = 0;
            return;
        }
        // strip trailing decimal zeros in growing chunks
        let mut chunk = 1u64;
        loop {
            let p = pow10(chunk);
            let (q, r) = self.mant.magnitude().div_rem(&p);
            if r.is_zero() {
                self.mant = BigInt::from_biguint(self.mant.sign(), q);
                self.exp += chunk as i64;
                chunk = (chunk * 2).min(1 << 20);
            } else if chunk == 1 {
                break;
            } else {
                chunk = 1;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.sign() == Sign::Minus
    }

    pub fn is_positive(&self) -> bool {
        self.mant.sign() == Sign::Plus
    }

    /// True when the value is an integer (canonical form has no fractional digits).
    pub fn is_integer(&self) -> bool {
        self.exp >= 0 || self.is_zero()
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mant
    }

    pub fn exponent(&self) -> i64 {
        self.exp
    }

    /// Number of significant decimal digits of the mantissa.
    pub fn digits(&self) -> u64 {
        dec_digits_int(&self.mant)
    }

    /// floor(log10 |x|) for nonzero values: |x| is in [10^mag, 10^(mag+1)).
    pub fn mag10(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            Some(self.exp + self.digits() as i64 - 1)
        }
    }

    pub fn neg(&self) -> Self {
        BigReal { mant: -self.mant.clone(), exp: self.exp }
    }

    pub fn abs(&self) -> Self {
        BigReal { mant: self.mant.abs(), exp: self.exp }
    }

    /// Exact scale by 10^k.
    pub fn mul_pow10(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        BigReal { mant: self.mant.clone(), exp: self.exp + k }
    }

    /// 10^k as a value.
    pub fn pow10_val(k: i64) -> Self {
        BigReal { mant: BigInt::one(), exp: k }
    }

    /// Round to `prec` significant digits, half-even.
    pub fn round_to(&self, prec: u32) -> Self {
        assert!(prec >= 1);
        let d = self.digits();
        if d <= prec as u64 {
            return self.clone();
        }
        let drop = d - prec as u64;
        let mag = round_mag(self.mant.magnitude(), drop, 0);
        let mut r = BigReal {
            mant: BigInt::from_biguint(self.mant.sign(), mag),
            exp: self.exp + drop as i64,
        };
        r.normalize();
        r
    }

    fn round_with_sticky(mant: BigInt, exp: i64, prec: u32, sticky: i8) -> Self {
        if mant.is_zero() {
            if sticky == 0 {
                return Self::zero();
            }
            // value is +-epsilon below visibility; keep a one-unit marker so the
            // sign survives (callers rounding true sums never hit this path with
            // a representable result)
            return BigReal { mant: BigInt::from(sticky), exp };
        }
        let sign = mant.sign();
        // sticky is signed relative to the value; convert to magnitude-relative
        let mag_sticky = if sign == Sign::Minus { -sticky } else { sticky };
        let d = dec_digits_int(&mant);
        if d <= prec as u64 {
            // nothing dropped from the mantissa itself; sticky is below the last
            // digit and cannot change a round-to-nearest at this precision
            let mut r = BigReal { mant, exp };
            r.normalize();
            return r;
        }
        let drop = d - prec as u64;
        let mag = round_mag(mant.magnitude(), drop, mag_sticky);
        let mut r = BigReal { mant: BigInt::from_biguint(sign, mag), exp: exp + drop as i64 };
        r.normalize();
        r
    }

    /// Correctly rounded sum at `prec` digits.
    ///
    /// When the operands' magnitudes are separated by more than the working
    /// window the smaller one collapses into a sticky residue instead of being
    /// aligned digit-by-digit, so adding 1 and 1e-272856 costs O(prec), not
    /// O(272856).
    pub fn add(&self, rhs: &Self, prec: u32) -> Self {
        if self.is_zero() {
            return rhs.round_to(prec);
        }
        if rhs.is_zero() {
            return self.round_to(prec);
        }
        let hi_a = self.exp + self.digits() as i64; // exclusive top exponent
        let hi_b = rhs.exp + rhs.digits() as i64;
        let (big, small, hi_big, hi_small) = if hi_a >= hi_b {
            (self, rhs, hi_a, hi_b)
        } else {
            (rhs, self, hi_b, hi_a)
        };
        // The sticky residue must sit strictly below one unit of the last digit
        // we round on: below big's own mantissa and below the prec+4 window.
        let threshold = big.exp.min(hi_big - (prec as i64 + 4));
        if hi_small <= threshold {
            let sticky = if small.is_negative() { -1 } else { 1 };
            return Self::round_with_sticky(big.mant.clone(), big.exp, prec, sticky);
        }
        // exact alignment; span is bounded by the operands' digit counts + prec
        let exp = big.exp.min(small.exp);
        let ma = &big.mant * BigInt::from(pow10((big.exp - exp) as u64));
        let mb = &small.mant * BigInt::from(pow10((small.exp - exp) as u64));
        Self::round_with_sticky(ma + mb, exp, prec, 0)
    }

    pub fn sub(&self, rhs: &Self, prec: u32) -> Self {
        self.add(&rhs.neg(), prec)
    }

    /// Correctly rounded product at `prec` digits.
    pub fn mul(&self, rhs: &Self, prec: u32) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let m = &self.mant * &rhs.mant;
        Self::round_with_sticky(m, self.exp + rhs.exp, prec, 0)
    }

    /// Correctly rounded quotient at `prec` digits.
    pub fn div(&self, rhs: &Self, prec: u32) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::Domain("division by zero".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let da = self.digits() as i64;
        let db = rhs.digits() as i64;
        // want a quotient mantissa with prec + 3 digits
        let scale = (prec as i64 + 3 - (da - db)).max(0) as u64;
        let num = self.mant.magnitude() * pow10(scale);
        let (q, r) = num.div_rem(rhs.mant.magnitude());
        let sign = if self.mant.sign() == rhs.mant.sign() { Sign::Plus } else { Sign::Minus };
        let sticky = if r.is_zero() { 0 } else { 1 };
        Ok(Self::round_with_sticky(
            BigInt::from_biguint(sign, q),
            self.exp - rhs.exp - scale as i64,
            prec,
            sticky,
        ))
    }

    pub fn recip(&self, prec: u32) -> Result<Self> {
        Self::one().div(self, prec)
    }

    /// Correctly rounded square root at `prec` digits.
    pub fn sqrt(&self, prec: u32) -> Result<Self> {
        if self.is_negative() {
            return Err(Error::Domain("sqrt of negative value".into()));
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let d = self.digits() as i64;
        // shift so that the integer sqrt has >= prec+3 digits and the exponent is even
        let mut s = (2 * (prec as i64 + 3) - d).max(0);
        if (self.exp - s) % 2 != 0 {
            s += 1;
        }
        let m = self.mant.magnitude() * pow10(s as u64);
        let root = m.sqrt(); // floor sqrt
        let exact = &root * &root == m;
        let sticky = if exact { 0 } else { 1 };
        Ok(Self::round_with_sticky(
            BigInt::from_biguint(Sign::Plus, root),
            (self.exp - s) / 2,
            prec,
            sticky,
        ))
    }

    /// Total-order comparison of values.
    pub fn cmp_value(&self, rhs: &Self) -> Ordering {
        match (self.mant.sign(), rhs.mant.sign()) {
            (Sign::Minus, Sign::NoSign) | (Sign::Minus, Sign::Plus) | (Sign::NoSign, Sign::Plus) => {
                return Ordering::Less
            }
            (Sign::Plus, Sign::NoSign) | (Sign::Plus, Sign::Minus) | (Sign::NoSign, Sign::Minus) => {
                return Ordering::Greater
            }
            (Sign::NoSign, Sign::NoSign) => return Ordering::Equal,
            _ => {}
        }
        let negate = self.mant.sign() == Sign::Minus;
        let hi_a = self.exp + self.digits() as i64;
        let hi_b = rhs.exp + rhs.digits() as i64;
        let ord = if hi_a != hi_b {
            hi_a.cmp(&hi_b)
        } else {
            let exp = self.exp.min(rhs.exp);
            let ma = self.mant.magnitude() * pow10((self.exp - exp) as u64);
            let mb = rhs.mant.magnitude() * pow10((rhs.exp - exp) as u64);
            ma.cmp(&mb)
        };
        if negate {
            ord.reverse()
        } else {
            ord
        }
    }

    /// |self - rhs| <= 10^pow (exact test).
    pub fn agrees_within(&self, rhs: &Self, pow: i64) -> bool {
        // subtraction is exact if given enough digits; use generous precision
        let prec = (self.digits().max(rhs.digits()) as u32 + 40).max(80);
        let d = self.sub(rhs, prec);
        match d.mag10() {
            None => true,
            Some(m) => m < pow || (m == pow && d.abs().cmp_value(&Self::pow10_val(pow)) != Ordering::Greater),
        }
    }

    /// Nearest integer, half-even.
    pub fn round_to_integer(&self) -> BigInt {
        if self.is_zero() {
            return BigInt::zero();
        }
        if self.exp >= 0 {
            return &self.mant * BigInt::from(pow10(self.exp as u64));
        }
        let drop = (-self.exp) as u64;
        if drop >= self.digits() + 2 {
            return BigInt::zero();
        }
        let mag = round_mag(self.mant.magnitude(), drop, 0);
        BigInt::from_biguint(self.mant.sign(), mag)
    }

    /// Exact value as a rational.
    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.mant * BigInt::from(pow10(self.exp as u64)))
        } else {
            BigRational::new(self.mant.clone(), BigInt::from(pow10((-self.exp) as u64)))
        }
    }

    /// Lossy conversion for diagnostics and coarse planning only.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let mag = self.mag10().unwrap();
        if mag > 350 {
            return if self.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY };
        }
        if mag < -350 {
            return 0.0;
        }
        self.to_decimal_string().parse::<f64>().unwrap_or(0.0)
    }

    /// Canonical scientific-notation serialization; parses back losslessly.
    pub fn to_decimal_string(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let digits = self.mant.magnitude().to_string();
        let sign = if self.is_negative() { "-" } else { "" };
        let e = self.exp + digits.len() as i64 - 1;
        if digits.len() == 1 {
            format!("{sign}{digits}e{e:+}")
        } else {
            format!("{sign}{}.{}e{e:+}", &digits[..1], &digits[1..])
        }
    }

    /// Serialization rounded to `prec` significant digits.
    pub fn to_string_digits(&self, prec: u32) -> String {
        self.round_to(prec).to_decimal_string()
    }

    /// Parse a decimal string: optional sign, digits with optional '.', optional
    /// 'e'/'E' and signed exponent. Every such string is exactly representable.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty string".into()));
        }
        let (sign, rest) = match s.as_bytes()[0] {
            b'+' => (Sign::Plus, &s[1..]),
            b'-' => (Sign::Minus, &s[1..]),
            _ => (Sign::Plus, s),
        };
        let (num_part, exp_part) = match rest.find(['e', 'E']) {
            Some(i) => (&rest[..i], Some(&rest[i + 1..])),
            None => (rest, None),
        };
        let exp_val: i64 = match exp_part {
            Some(e) => e
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad exponent in {s:?}")))?,
            None => 0,
        };
        let (int_part, frac_part) = match num_part.find('.') {
            Some(i) => (&num_part[..i], &num_part[i + 1..]),
            None => (num_part, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(Error::Parse(format!("no digits in {s:?}")));
        }
        if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("invalid digits in {s:?}")));
        }
        let all: String = format!("{int_part}{frac_part}");
        let mant: BigUint = all
            .parse()
            .map_err(|_| Error::Parse(format!("invalid mantissa in {s:?}")))?;
        let mut r = BigReal {
            mant: BigInt::from_biguint(sign, mant),
            exp: exp_val - frac_part.len() as i64,
        };
        r.normalize();
        Ok(r)
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_decimal_string())
    }
}

impl PartialOrd for BigReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(other))
    }
}

impl Ord for BigReal {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_value(other)
    }
}
