//! Complete elliptic integrals via the arithmetic-geometric mean.
//!
//! K(k) = pi / (2 AGM(1, k')), E from the AGM c_n sum
//! E = K (1 - sum 2^(n-1) c_n^2) with c_0 = k, c_{n+1} = (a_n - b_n)/2.
//!
//! Entry 3 lives at k' ~ 2e-4; K is therefore exposed both in terms of k and
//! directly in terms of k' so callers near k = 1 never form 1 - k^2.

use std::cmp::Ordering;

use zoo_num::functions::pi;
use zoo_num::{BigReal, Error, Result};

/// Arithmetic-geometric mean of a, b > 0.
pub fn agm(a0: &BigReal, b0: &BigReal, prec: u32) -> Result<BigReal> {
    if !a0.is_positive() || !b0.is_positive() {
        return Err(Error::Domain("agm requires positive arguments".into()));
    }
    let w = prec + 6;
    let half = BigReal::parse("0.5").unwrap();
    let mut a = a0.clone();
    let mut b = b0.clone();
    for _ in 0..20_000 {
        let d = a.sub(&b, w);
        if d.is_zero() || d.mag10().unwrap() < a.mag10().unwrap_or(0) - (w as i64 - 2) {
            break;
        }
        let am = a.add(&b, w).mul(&half, w);
        let gm = a.mul(&b, w).sqrt(w)?;
        a = am;
        b = gm;
    }
    Ok(a.add(&b, w).mul(&half, w).round_to(prec + 2))
}

fn check_modulus(k: &BigReal) -> Result<()> {
    if k.is_negative() || k.cmp_value(&BigReal::one()) != Ordering::Less {
        return Err(Error::Domain("elliptic modulus must satisfy 0 <= k < 1".into()));
    }
    Ok(())
}

/// K(k) for 0 <= k < 1 (exact pi/2 at k = 0).
pub fn elliptic_k(k: &BigReal, prec: u32) -> Result<BigReal> {
    check_modulus(k)?;
    if k.is_zero() {
        return pi(prec + 2).div(&BigReal::from_u64(2), prec + 2);
    }
    let w = prec + 6;
    let kp = BigReal::one().sub(&k.mul(k, w), w).sqrt(w)?;
    elliptic_k_from_kprime(&kp, prec)
}

/// K(k) given the complementary modulus k' = sqrt(1 - k^2) directly; accurate
/// for k' down to at least 1e-5.
pub fn elliptic_k_from_kprime(kp: &BigReal, prec: u32) -> Result<BigReal> {
    if !kp.is_positive() {
        return Err(Error::Domain("k' must be positive (k = 1 rejected)".into()));
    }
    let w = prec + 6;
    let m = agm(&BigReal::one(), kp, w)?;
    pi(w).div(&m.mul(&BigReal::from_u64(2), w), prec + 2)
}

/// E(k) for 0 <= k < 1.
pub fn elliptic_e(k: &BigReal, prec: u32) -> Result<BigReal> {
    check_modulus(k)?;
    if k.is_zero() {
        return pi(prec + 2).div(&BigReal::from_u64(2), prec + 2);
    }
    let w = prec + 6;
    let kp = BigReal::one().sub(&k.mul(k, w), w).sqrt(w)?;
    elliptic_e_from_moduli(k, &kp, prec)
}

/// E(k) with both moduli supplied (avoids forming 1 - k^2 near k = 1).
pub fn elliptic_e_from_moduli(k: &BigReal, kp: &BigReal, prec: u32) -> Result<BigReal> {
    let w = prec + 8;
    let half = BigReal::parse("0.5").unwrap();
    let mut a = BigReal::one();
    let mut b = kp.clone();
    let mut c = k.clone();
    // sum 2^(n-1) c_n^2
    let mut csum = c.mul(&c, w).mul(&half, w);
    let mut pow2 = BigReal::one();
    for _ in 0..20_000 {
        let d = a.sub(&b, w);
        if d.is_zero() || d.mag10().unwrap() < a.mag10().unwrap_or(0) - (w as i64 - 2) {
            break;
        }
        c = d.mul(&half, w);
        let am = a.add(&b, w).mul(&half, w);
        let gm = a.mul(&b, w).sqrt(w)?;
        a = am;
        b = gm;
        csum = csum.add(&pow2.mul(&c.mul(&c, w), w), w);
        pow2 = pow2.mul(&BigReal::from_u64(2), w);
    }
    let kk = pi(w).div(&a.add(&b, w), w)?; // pi / (2 agm)
    Ok(kk.mul(&BigReal::one().sub(&csum, w), w).round_to(prec + 2))
}

/// Complete elliptic data attached to a modulus: k, k', K, K', E.
#[derive(Debug, Clone)]
pub struct EllipticPair {
    pub k: BigReal,
    pub k_prime: BigReal,
    pub big_k: BigReal,
    pub big_k_prime: BigReal,
    pub big_e: BigReal,
}

impl EllipticPair {
    /// Build from both moduli (callers near k = 1 pass an exact k').
    pub fn from_moduli(k: &BigReal, kp: &BigReal, prec: u32) -> Result<Self> {
        let big_k = elliptic_k_from_kprime(kp, prec)?;
        let big_k_prime = elliptic_k_from_kprime(k, prec)?;
        let big_e = elliptic_e_from_moduli(k, kp, prec)?;
        Ok(EllipticPair {
            k: k.clone(),
            k_prime: kp.clone(),
            big_k,
            big_k_prime,
            big_e,
        })
    }

    /// Legendre self-test: E K' + E' K - K K' - pi/2 (should vanish).
    pub fn legendre_residual(&self, prec: u32) -> Result<BigReal> {
        let w = prec + 6;
        let e_prime = elliptic_e_from_moduli(&self.k_prime, &self.k, w)?;
        let lhs = self
            .big_e
            .mul(&self.big_k_prime, w)
            .add(&e_prime.mul(&self.big_k, w), w)
            .sub(&self.big_k.mul(&self.big_k_prime, w), w);
        Ok(lhs.sub(&pi(w).div(&BigReal::from_u64(2), w)?, w))
    }

    /// k^2 + k'^2 - 1 (should vanish).
    pub fn moduli_residual(&self, prec: u32) -> BigReal {
        let w = prec + 6;
        self.k
            .mul(&self.k, w)
            .add(&self.k_prime.mul(&self.k_prime, w), w)
            .sub(&BigReal::one(), w)
    }
}
