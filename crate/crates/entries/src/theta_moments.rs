//! Moments of theta-weighted integer lattices: sums sum (n-off)^2m q^((n-off)^2)
//! for offsets 0 and 1/2, their exact elliptic-integral closed forms, and the
//! root solve for the nome exponent c that makes the second-moment ratio
//! exactly 1.
//!
//! Closed forms used (k, k', K, E at the nome q):
//!   second moment ratio (offset 0):  K(E - k'^2 K)/pi^2
//!   fourth moment ratio (offset 0):  3 sigma^4 + theta3(q)^8 (k k')^2 / 8
//!   second moment ratio (offset 1/2): E K / pi^2
//! The first and third differ exactly by theta4(q)^4/4 = K^2 k'^2/pi^2, which
//! doubles as a consistency test between the two lattices.

use std::cmp::Ordering;

use zoo_num::functions::{exp, ln, pi, powi};
use zoo_num::{BigReal, Error, PrecisionContext, Result};
use zoo_special::{elliptic_e_from_moduli, elliptic_k_from_kprime, nome_to_modulus, theta3, EllipticPair};

/// Lattice offset: integers (theta3 weights) or half-integers (theta2 weights).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Offset {
    Zero,
    Half,
}

/// Entry 3 computations are quoted to 13 digits against ~1e-7 deviations;
/// enforce a precision floor so a careless context cannot blur the verdict.
fn floor40(ctx: &PrecisionContext) -> u32 {
    ctx.working().max(45)
}

/// sum_{n in Z} (n - offset)^order q^((n-offset)^2), order in {0, 2, 4}.
pub fn theta_moment_sum(q: &BigReal, offset: Offset, order: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    if !q.is_positive() || q.cmp_value(&BigReal::one()) != Ordering::Less {
        return Err(Error::Domain("nome must satisfy 0 < q < 1".into()));
    }
    if !matches!(order, 0 | 2 | 4) {
        return Err(Error::Argument("moment order must be 0, 2 or 4".into()));
    }
    let w = floor40(ctx) + 8;
    let tiny = BigReal::pow10_val(-(w as i64) - 5);
    let mut sum;
    match offset {
        Offset::Zero => {
            // n = 0 term contributes only at order 0; pairs n, -n for n >= 1
            sum = if order == 0 { BigReal::one() } else { BigReal::zero() };
            let q2 = q.mul(q, w);
            let mut p = q.clone(); // q^(n^2)
            let mut odd = q.mul(&q2, w); // q^(2n+1)
            let mut n = 1u64;
            loop {
                let weight = powi(&BigReal::from_u64(n), order as i64, w)?;
                let t = p.mul(&weight, w).mul(&BigReal::from_u64(2), w);
                sum = sum.add(&t, w);
                if t.abs().cmp_value(&tiny) == Ordering::Less {
                    break;
                }
                p = p.mul(&odd, w);
                odd = odd.mul(&q2, w);
                n += 1;
            }
        }
        Offset::Half => {
            // pairs n and 1-n for n >= 1: 2 sum (n-1/2)^order q^((n-1/2)^2),
            // with q^((n-1/2)^2) = q^(1/4) q^(n(n-1))
            let q2 = q.mul(q, w);
            let mut p = BigReal::one(); // q^(n(n-1)) at n = 1
            let mut step = q2.clone(); // q^(2n)
            let half = BigReal::parse("0.5").unwrap();
            sum = BigReal::zero();
            let mut n = 1u64;
            loop {
                let base = BigReal::from_u64(n).sub(&half, w);
                let weight = powi(&base, order as i64, w)?;
                let t = p.mul(&weight, w).mul(&BigReal::from_u64(2), w);
                sum = sum.add(&t, w);
                if t.abs().cmp_value(&tiny) == Ordering::Less {
                    break;
                }
                p = p.mul(&step, w);
                step = step.mul(&q2, w);
                n += 1;
            }
            let q4 = q.sqrt(w)?.sqrt(w)?;
            sum = sum.mul(&q4, w);
        }
    }
    Ok(sum.round_to(floor40(ctx)))
}

/// Exact second-moment ratio for the integer lattice:
/// sigma^2 = K(k) (E(k) - k'^2 K(k)) / pi^2 with (k, k') from the nome q.
pub fn second_moment_ratio_exact(q: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let w = floor40(ctx) + 8;
    let pair = nome_to_modulus(q, w)?;
    second_moment_from_pair(&pair, w).map(|v| v.round_to(floor40(ctx)))
}

fn second_moment_from_pair(pair: &EllipticPair, w: u32) -> Result<BigReal> {
    let kp2 = pair.k_prime.mul(&pair.k_prime, w);
    let inner = pair.big_e.sub(&kp2.mul(&pair.big_k, w), w);
    let pi2 = pi(w).mul(&pi(w), w);
    pair.big_k.mul(&inner, w).div(&pi2, w)
}

/// Exact fourth-moment ratio for the integer lattice:
/// 3 sigma^4 + theta3(q)^8 (k k')^2 / 8.
pub fn fourth_moment_ratio_exact(q: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let w = floor40(ctx) + 8;
    let sigma2 = second_moment_ratio_exact(q, ctx)?;
    let corr = fourth_moment_correction(q, ctx)?;
    Ok(sigma2
        .mul(&sigma2, w)
        .mul(&BigReal::from_u64(3), w)
        .add(&corr, w)
        .round_to(floor40(ctx)))
}

/// The correction term theta3(q)^8 (k k')^2 / 8 alone.
pub fn fourth_moment_correction(q: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let w = floor40(ctx) + 8;
    let pair = nome_to_modulus(q, w)?;
    let t3 = theta3(q, w)?;
    let kkp = pair.k.mul(&pair.k_prime, w);
    Ok(powi(&t3, 8, w)?
        .mul(&kkp.mul(&kkp, w), w)
        .div(&BigReal::from_u64(8), w)?
        .round_to(floor40(ctx)))
}

/// Exact second-moment ratio for the half-integer lattice: E(k) K(k) / pi^2.
///
/// Weight convention: the input q is the nome of the weights q^((n-1/2)^2),
/// i.e. weights e^(-(n-1/2)^2/2) correspond to q = e^(-1/2).
pub fn theta2_second_moment_ratio_exact(q: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let w = floor40(ctx) + 8;
    let pair = nome_to_modulus(q, w)?;
    let pi2 = pi(w).mul(&pi(w), w);
    Ok(pair.big_e.mul(&pair.big_k, w).div(&pi2, w)?.round_to(floor40(ctx)))
}

/// Result of the unit-variance root solve.
#[derive(Debug, Clone)]
pub struct UnitVarianceSolution {
    /// c with sum n^2 e^(-c n^2) = sum e^(-c n^2), i.e. q = e^(-c).
    pub c: BigReal,
    pub k: BigReal,
    pub k_prime: BigReal,
    /// second-moment ratio at the root minus 1
    pub residual: BigReal,
}

/// Solve K^2/pi^2 (E/K - k'^2) = 1 for the modulus, then c = pi K'/K.
/// The root is bracketed and bisected in log(k'), which is well-scaled where
/// k is within 2e-8 of 1.
pub fn solve_unit_variance_c(ctx: &PrecisionContext) -> Result<UnitVarianceSolution> {
    let w = floor40(ctx) + 10;
    let ratio_minus_one = |lg_kp: &BigReal| -> Result<BigReal> {
        let kp = exp(lg_kp, w)?;
        let k = BigReal::one().sub(&kp.mul(&kp, w), w).sqrt(w)?;
        let kk = elliptic_k_from_kprime(&kp, w)?;
        let ee = elliptic_e_from_moduli(&k, &kp, w)?;
        let kp2 = kp.mul(&kp, w);
        let pi2 = pi(w).mul(&pi(w), w);
        Ok(kk.mul(&ee.sub(&kp2.mul(&kk, w), w), w).div(&pi2, w)?.sub(&BigReal::one(), w))
    };
    // bracket around k' ~ 2e-4 (ratio is increasing in k, decreasing in k')
    let mut lo = ln(&BigReal::parse("1e-5").unwrap(), w)?;
    let mut hi = ln(&BigReal::parse("1e-2").unwrap(), w)?;
    let f_lo = ratio_minus_one(&lo)?;
    let f_hi = ratio_minus_one(&hi)?;
    if f_lo.is_negative() == f_hi.is_negative() {
        return Err(Error::Convergence("unit-variance root not bracketed in k' range".into()));
    }
    let lo_positive = f_lo.is_positive();
    let half = BigReal::parse("0.5").unwrap();
    let iters = (floor40(ctx) as f64 * 3.33) as u32 + 24;
    for _ in 0..iters {
        let mid = lo.add(&hi, w).mul(&half, w);
        let fm = ratio_minus_one(&mid)?;
        if fm.is_positive() == lo_positive {
            lo = mid;
        } else {
            hi = mid;
        }
        let width = hi.sub(&lo, w).abs();
        if width.is_zero() || width.mag10().unwrap() < -(floor40(ctx) as i64) - 3 {
            break;
        }
    }
    let root = lo.add(&hi, w).mul(&half, w);
    let kp = exp(&root, w)?;
    let k = BigReal::one().sub(&kp.mul(&kp, w), w).sqrt(w)?;
    let kk = elliptic_k_from_kprime(&kp, w)?;
    let kk_prime = elliptic_k_from_kprime(&k, w)?;
    let c = pi(w).mul(&kk_prime, w).div(&kk, w)?;
    let residual = ratio_minus_one(&root)?;
    let out = floor40(ctx);
    Ok(UnitVarianceSolution {
        c: c.round_to(out),
        k: k.round_to(out),
        k_prime: kp.round_to(out),
        residual: residual.round_to(out),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(d: u32) -> PrecisionContext {
        PrecisionContext::new(d)
    }

    fn q_half(w: u32) -> BigReal {
        exp(&BigReal::parse("-0.5").unwrap(), w).unwrap()
    }

    fn direct_ratio(q: &BigReal, off: Offset, order: u32, c: &PrecisionContext) -> BigReal {
        let m = theta_moment_sum(q, off, order, c).unwrap();
        let z = theta_moment_sum(q, off, 0, c).unwrap();
        m.div(&z, c.working() + 10).unwrap()
    }

    #[test]
    fn quoted_thirteen_digit_values() {
        let c = ctx(45);
        let q = q_half(60);
        let s2 = second_moment_ratio_exact(&q, &c).unwrap();
        assert_eq!(&s2.to_string_digits(13).to_string(), "9.999997887677e-1");
        let t2 = theta2_second_moment_ratio_exact(&q, &c).unwrap();
        assert_eq!(&t2.to_string_digits(13).to_string(), "1.000000211232e+0");
        // signs of the deviations
        assert!(s2.cmp_value(&BigReal::one()) == Ordering::Less);
        assert!(t2.cmp_value(&BigReal::one()) == Ordering::Greater);
    }

    #[test]
    fn fourth_moment_value_and_correction() {
        let c = ctx(45);
        let q = q_half(60);
        let f = fourth_moment_ratio_exact(&q, &c).unwrap();
        // the correction term is 8.33912e-6 (6 digits), and with
        // 3 sigma^4 = 2.999998732... the ratio lands at 3.0000070717...
        let corr = fourth_moment_correction(&q, &c).unwrap();
        assert_eq!(&corr.to_string_digits(6).to_string(), "8.33912e-6");
        assert_eq!(&f.to_string_digits(11).to_string(), "3.0000070717e+0");
    }

    #[test]
    fn moment_sums_at_the_quoted_nome() {
        let c = ctx(45);
        let w = 60;
        let q = q_half(w);
        let s2pi = pi(w).mul(&BigReal::from_u64(2), w).sqrt(w).unwrap();
        let m2 = theta_moment_sum(&q, Offset::Zero, 2, &c).unwrap();
        let d = m2.sub(&s2pi, w);
        assert!(d.agrees_within(&BigReal::parse("-5.1606888e-7").unwrap(), -14), "{d}");
        let t0 = theta_moment_sum(&q, Offset::Half, 0, &c).unwrap();
        let d = t0.sub(&s2pi, w);
        assert!(d.agrees_within(&BigReal::parse("-1.3411905e-8").unwrap(), -15), "{d}");
        let t2 = theta_moment_sum(&q, Offset::Half, 2, &c).unwrap();
        let d = t2.sub(&s2pi, w);
        assert!(d.agrees_within(&BigReal::parse("5.1606888e-7").unwrap(), -14), "{d}");
    }

    #[test]
    fn exact_formulas_match_direct_sums_on_a_grid() {
        let c = ctx(42);
        for i in 1..=12u64 {
            // q = 0.05 i
            let q = BigReal::from_u64(i).div(&BigReal::from_u64(20), 60).unwrap();
            let s2 = second_moment_ratio_exact(&q, &c).unwrap();
            assert!(
                s2.agrees_within(&direct_ratio(&q, Offset::Zero, 2, &c), -37),
                "sigma2 at q={q}"
            );
            let f4 = fourth_moment_ratio_exact(&q, &c).unwrap();
            assert!(
                f4.agrees_within(&direct_ratio(&q, Offset::Zero, 4, &c), -36),
                "fourth at q={q}"
            );
            let t2 = theta2_second_moment_ratio_exact(&q, &c).unwrap();
            assert!(
                t2.agrees_within(&direct_ratio(&q, Offset::Half, 2, &c), -37),
                "half-lattice at q={q}"
            );
        }
    }

    #[test]
    fn lattice_ratios_differ_by_quarter_theta4_fourth() {
        // EK/pi^2 - theta4^4/4 = sigma^2, exactly
        let c = ctx(45);
        let w = 60;
        for qs in ["0.2", "0.4", "0.6065306597126334"] {
            let q = BigReal::parse(qs).unwrap();
            let t2 = theta2_second_moment_ratio_exact(&q, &c).unwrap();
            let s2 = second_moment_ratio_exact(&q, &c).unwrap();
            let t4 = theta4(&q, w).unwrap();
            let quarter = powi(&t4, 4, w).unwrap().div(&BigReal::from_u64(4), w).unwrap();
            assert!(t2.sub(&quarter, w).agrees_within(&s2, -38), "q={qs}");
        }
    }

    #[test]
    fn small_nome_limit() {
        // ratio -> 2q (1 + O(q)) as q -> 0
        let c = ctx(42);
        let q = BigReal::pow10_val(-6);
        let s2 = second_moment_ratio_exact(&q, &c).unwrap();
        let direct = direct_ratio(&q, Offset::Zero, 2, &c);
        assert!(s2.agrees_within(&direct, -37));
        let rel = s2.div(&q.mul(&BigReal::from_u64(2), 50), 50).unwrap().sub(&BigReal::one(), 50);
        assert!(rel.abs().cmp_value(&BigReal::parse("1e-5").unwrap()) == Ordering::Less);
        // half-integer lattice, order 0, q -> 0: 2 q^(1/4)(1 + o(1))
        let t0 = theta_moment_sum(&q, Offset::Half, 0, &c).unwrap();
        let lead = q.sqrt(50).unwrap().sqrt(50).unwrap().mul(&BigReal::from_u64(2), 50);
        let rel = t0.div(&lead, 50).unwrap().sub(&BigReal::one(), 50).abs();
        assert!(rel.cmp_value(&BigReal::parse("1e-5").unwrap()) == Ordering::Less);
    }

    #[test]
    fn unit_variance_root() {
        let c = ctx(45);
        let sol = solve_unit_variance_c(&c).unwrap();
        assert_eq!(&sol.c.to_string_digits(11).to_string(), "4.9999989438e-1");
        // k = 0.99999997859... (the next digit is a 7, so compare by ulp)
        assert!(sol.k.agrees_within(&BigReal::parse("0.99999997859").unwrap(), -11));
        assert!(sol.residual.is_zero() || sol.residual.abs().mag10().unwrap() < -40);
        // consistency: the nome e^-c reproduces the k we solved for
        let w = 60;
        let q = exp(&sol.c.neg(), w).unwrap();
        let pair = nome_to_modulus(&q, 50).unwrap();
        assert!(pair.k.agrees_within(&sol.k, -40));
    }

    #[test]
    fn rejects_bad_inputs() {
        let c = ctx(40);
        assert!(theta_moment_sum(&BigReal::one(), Offset::Zero, 2, &c).is_err());
        assert!(theta_moment_sum(&BigReal::parse("0.5").unwrap(), Offset::Zero, 3, &c).is_err());
    }
}
