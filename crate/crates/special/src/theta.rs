//! Jacobi theta constants theta2/theta3/theta4 as q-series, and the
//! nome -> modulus conversion k = theta2^2/theta3^2, k' = theta4^2/theta3^2.
//!
//! Series are summed with symmetric pairing (n and -n merged) and stop once
//! q^(n^2) drops below 10^-(working+5); the super-geometric decay makes that
//! a sharp bound.

use std::cmp::Ordering;

use zoo_num::{BigReal, Error, Result};

use crate::elliptic::EllipticPair;

fn check_nome(q: &BigReal) -> Result<()> {
    if !q.is_positive() || q.cmp_value(&BigReal::one()) != Ordering::Less {
        return Err(Error::Domain("theta nome must satisfy 0 < q < 1".into()));
    }
    Ok(())
}

/// theta3(q) = 1 + 2 sum_{n>=1} q^(n^2).
pub fn theta3(q: &BigReal, prec: u32) -> Result<BigReal> {
    check_nome(q)?;
    let w = prec + 8;
    let tiny = BigReal::pow10_val(-(w as i64) - 5);
    let q2 = q.mul(q, w);
    let mut p = q.clone(); // q^(n^2)
    let mut odd = q.mul(&q2, w); // q^(2n+1)
    let mut sum = BigReal::one();
    loop {
        sum = sum.add(&p.mul(&BigReal::from_u64(2), w), w);
        if p.cmp_value(&tiny) == Ordering::Less {
            break;
        }
        p = p.mul(&odd, w);
        odd = odd.mul(&q2, w);
    }
    Ok(sum.round_to(prec + 2))
}

/// theta4(q) = 1 + 2 sum_{n>=1} (-1)^n q^(n^2).
pub fn theta4(q: &BigReal, prec: u32) -> Result<BigReal> {
    check_nome(q)?;
    let w = prec + 8;
    let tiny = BigReal::pow10_val(-(w as i64) - 5);
    let q2 = q.mul(q, w);
    let mut p = q.clone();
    let mut odd = q.mul(&q2, w);
    let mut sum = BigReal::one();
    let mut neg = true;
    loop {
        let t = p.mul(&BigReal::from_u64(2), w);
        sum = if neg { sum.sub(&t, w) } else { sum.add(&t, w) };
        if p.cmp_value(&tiny) == Ordering::Less {
            break;
        }
        p = p.mul(&odd, w);
        odd = odd.mul(&q2, w);
        neg = !neg;
    }
    Ok(sum.round_to(prec + 2))
}

/// theta2(q) = sum_n q^((n-1/2)^2) = 2 q^(1/4) sum_{n>=0} q^(n(n+1)).
pub fn theta2(q: &BigReal, prec: u32) -> Result<BigReal> {
    check_nome(q)?;
    let w = prec + 8;
    let tiny = BigReal::pow10_val(-(w as i64) - 5);
    let q2 = q.mul(q, w);
    let mut p = q2.clone(); // q^(n(n+1)) for n = 1
    let mut step = q2.mul(&q2, w); // q^(2(n+1))
    let mut sum = BigReal::one();
    loop {
        sum = sum.add(&p, w);
        if p.cmp_value(&tiny) == Ordering::Less {
            break;
        }
        p = p.mul(&step, w);
        step = step.mul(&q2, w);
    }
    let q4 = q.sqrt(w)?.sqrt(w)?;
    Ok(sum.mul(&q4.mul(&BigReal::from_u64(2), w), w).round_to(prec + 2))
}

/// Elliptic modulus data for the nome q: k = (theta2/theta3)^2,
/// k' = (theta4/theta3)^2 (no cancellation near k = 1), K, K', E by AGM.
pub fn nome_to_modulus(q: &BigReal, prec: u32) -> Result<EllipticPair> {
    check_nome(q)?;
    let w = prec + 8;
    let t2 = theta2(q, w)?;
    let t3 = theta3(q, w)?;
    let t4 = theta4(q, w)?;
    let r2 = t2.div(&t3, w)?;
    let r4 = t4.div(&t3, w)?;
    let k = r2.mul(&r2, w).round_to(prec + 2);
    let kp = r4.mul(&r4, w).round_to(prec + 2);
    EllipticPair::from_moduli(&k, &kp, prec)
}
