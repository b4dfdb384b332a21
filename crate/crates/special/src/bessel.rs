//! Bessel J0 and modified Bessel K_nu (large-argument regime).

use std::cmp::Ordering;

use zoo_num::functions::{exp, pi, sin_cos};
use zoo_num::{BigInt, BigRational, BigReal, Error, Result};

/// J0 by power series (small x) or the Hankel asymptotic expansion (large x).
/// Absolute error <= 10^-prec for |x| <= 1e6.
pub fn bessel_j0(x: &BigReal, prec: u32) -> Result<BigReal> {
    let xf = x.to_f64().abs();
    if xf > 1.0e6 {
        return Err(Error::Range("bessel_j0 supports |x| <= 1e6".into()));
    }
    let wd = prec + 8;
    // asymptotic error ~ e^(-2x): usable once 2x > (wd+2) ln 10
    let switch = 1.16 * (wd as f64 + 2.0);
    if xf <= switch {
        Ok(j0_series(x, wd))
    } else {
        Ok(j0_asymptotic(x, wd))
    }
}

fn j0_series(x: &BigReal, wd: u32) -> BigReal {
    // the series alternates with max term ~ e^x/(pi x): pay the cancellation
    let xf = x.to_f64().abs();
    let w = wd + (0.44 * xf) as u32 + 8;
    let q = x.mul(x, w).div(&BigReal::from_u64(4), w).expect("nonzero");
    let mut term = BigReal::one();
    let mut sum = BigReal::one();
    let tiny = BigReal::pow10_val(-(w as i64) - 2);
    let mut k = 0u64;
    loop {
        k += 1;
        term = term.mul(&q, w).div(&BigReal::from_u64(k * k), w).expect("nonzero").neg();
        sum = sum.add(&term, w);
        // past the hump and below threshold -> alternating tail bound holds
        if term.abs().cmp_value(&tiny) == Ordering::Less && (k as f64) > xf / 2.0 {
            break;
        }
    }
    sum.round_to(wd)
}

fn j0_asymptotic(x: &BigReal, wd: u32) -> BigReal {
    let w = wd + 8;
    let xa = x.abs();
    // b_k = ((2k-1)!!)^2 / (k! 8^k); P = sum (-1)^k b_2k / x^2k,
    // Qs = sum (-1)^k b_2k+1 / x^2k+1
    // J0 = sqrt(2/(pi x)) [cos(x - pi/4) P + sin(x - pi/4) Qs]
    let xinv = xa.recip(w).expect("nonzero");
    let mut b = BigReal::one(); // b_k * x^-k, folded
    let mut p_sum = BigReal::one();
    let mut q_sum = BigReal::zero();
    let tiny = BigReal::pow10_val(-(w as i64) - 2);
    let mut k = 0u64;
    let mut last_mag = None;
    loop {
        // advance to b_{k+1} x^-(k+1)
        let num = BigReal::from_u64((2 * k + 1) * (2 * k + 1));
        b = b
            .mul(&num, w)
            .mul(&xinv, w)
            .div(&BigReal::from_u64(8 * (k + 1)), w)
            .expect("nonzero");
        k += 1;
        // terms grow again past k ~ 2x; stop at the smallest term
        if let Some(lm) = last_mag {
            if b.mag10().unwrap_or(i64::MIN) > lm {
                break;
            }
        }
        last_mag = b.mag10();
        let signed = if (k / 2) % 2 == 1 { b.neg() } else { b.clone() };
        if k % 2 == 0 {
            p_sum = p_sum.add(&signed, w);
        } else {
            q_sum = q_sum.add(&signed, w);
        }
        if b.abs().cmp_value(&tiny) == Ordering::Less {
            break;
        }
    }
    let quarter_pi = pi(w + 4).div(&BigReal::from_u64(4), w + 4).expect("nonzero");
    let omega = xa.sub(&quarter_pi, w + 4);
    let (s, c) = sin_cos(&omega, w);
    let amp = BigReal::from_u64(2)
        .div(&pi(w).mul(&xa, w), w)
        .expect("nonzero")
        .sqrt(w)
        .expect("positive");
    amp.mul(&c.mul(&p_sum, w).add(&s.mul(&q_sum, w), w), w).round_to(wd)
}

/// Modified Bessel K_nu(x) for x >= 1, nu >= 0.
///
/// Half-integer nu uses the exact finite closed form; other nu use the
/// integral representation int_0^inf e^(-x cosh t) cosh(nu t) dt on a
/// trapezoidal grid (the integrand already decays doubly exponentially, which
/// makes the trapezoid rule spectrally accurate here).
pub fn bessel_k(nu: &BigReal, x: &BigReal, prec: u32) -> Result<BigReal> {
    if x.cmp_value(&BigReal::one()) == Ordering::Less {
        return Err(Error::Domain("bessel_k implemented for x >= 1 only".into()));
    }
    if nu.is_negative() {
        return Err(Error::Domain("bessel_k requires nu >= 0".into()));
    }
    let two_nu = nu.mul(&BigReal::from_u64(2), prec + 10);
    if two_nu.is_integer() {
        let t: BigInt = two_nu.round_to_integer();
        if &t % BigInt::from(2) == BigInt::from(1) {
            let n: u64 = ((t - BigInt::from(1)) / BigInt::from(2)).try_into().expect("small");
            return k_half_integer(n, x, prec);
        }
    }
    k_quadrature(nu, x, prec)
}

/// K_{n+1/2}(x) = sqrt(pi/(2x)) e^-x sum_{k=0}^{n} (n+k)!/(k!(n-k)!(2x)^k).
fn k_half_integer(n: u64, x: &BigReal, prec: u32) -> Result<BigReal> {
    let w = prec + 10;
    let mut poly = BigReal::zero();
    let inv2x = x.mul(&BigReal::from_u64(2), w).recip(w)?;
    let mut p = BigReal::one();
    for k in 0..=n {
        // coefficient (n+k)!/(k!(n-k)!) built exactly
        let c = zoo_num::exact::factorial(n + k)
            / (zoo_num::exact::factorial(k) * zoo_num::exact::factorial(n - k));
        poly = poly.add(&BigReal::from_bigint(c).mul(&p, w), w);
        p = p.mul(&inv2x, w);
    }
    let amp = pi(w).div(&x.mul(&BigReal::from_u64(2), w), w)?.sqrt(w)?;
    let e = exp(&x.neg(), w)?;
    Ok(amp.mul(&e, w).mul(&poly, w).round_to(prec + 2))
}

fn k_quadrature(nu: &BigReal, x: &BigReal, prec: u32) -> Result<BigReal> {
    let wd = prec + 8;
    k_quadrature_with(nu, x, wd, 1.0)
}

/// Trapezoid evaluation; `density` > 1 refines the step for self-convergence
/// checks.
pub fn k_quadrature_with(nu: &BigReal, x: &BigReal, wd: u32, density: f64) -> Result<BigReal> {
    let w = wd + 8;
    let xf = x.to_f64();
    let nf = nu.to_f64();
    // truncation point: x(cosh T - 1) - nu T >= (wd+5) ln 10
    let target = (wd as f64 + 5.0) * std::f64::consts::LN_10;
    let mut t_end = 1.0f64;
    while xf * (t_end.cosh() - 1.0) - nf * t_end < target {
        t_end += 0.25;
    }
    // Trapezoid error ~ e^(-2 pi d / h) * M(d) where M(d) is the integrand's
    // growth on the strip |Im t| = d relative to its on-axis peak. For
    // nu ~ x/2 (the lambda* regime) that growth is e^(x(g(d,r)+eta(r))),
    // r = nu/x, g = -sqrt(cos^2 d + r^2) + r asinh(r/cos d),
    // eta = sqrt(1+r^2) - r asinh(r): pick d maximizing the admissible step.
    let r = nf / xf;
    let eta = (1.0 + r * r).sqrt() - r * r.asinh();
    let need = (wd as f64 + 7.0) * std::f64::consts::LN_10;
    let mut h_f = f64::MIN_POSITIVE;
    for i in 1..30 {
        let d = 0.05 * i as f64; // < pi/2
        let g = -(d.cos() * d.cos() + r * r).sqrt() + r * (r / d.cos()).asinh();
        let penalty = xf * (g + eta);
        let cand = 2.0 * std::f64::consts::PI * d / (need + penalty.max(0.0));
        if cand > h_f {
            h_f = cand;
        }
    }
    h_f /= density;
    let n = (t_end / h_f).ceil() as u64;
    let h = BigReal::from_ratio(
        &BigRational::new(BigInt::from((t_end * 4.0).round() as i64), BigInt::from(4 * n as i64)),
        w,
    );
    // incremental e^(h), e^(nu h)
    let eh = exp(&h, w)?;
    let enu_h = exp(&nu.mul(&h, w), w)?;
    let mut u = BigReal::one(); // e^(t_i)
    let mut v = BigReal::one(); // e^(nu t_i)
    let half = BigReal::parse("0.5").unwrap();
    // t = 0 endpoint with half weight: integrand = e^-x
    let mut sum = exp(&x.neg(), w)?.mul(&half, w);
    for _ in 1..=n {
        u = u.mul(&eh, w);
        v = v.mul(&enu_h, w);
        let cosh_t = u.add(&u.recip(w)?, w).mul(&half, w);
        let cosh_nut = v.add(&v.recip(w)?, w).mul(&half, w);
        let f = exp(&x.mul(&cosh_t, w).neg(), w)?.mul(&cosh_nut, w);
        sum = sum.add(&f, w);
    }
    Ok(sum.mul(&h, w).round_to(wd))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j0_at_zero_and_one() {
        assert_eq!(bessel_j0(&BigReal::zero(), 30).unwrap(), BigReal::one());
        // oracle: exact rational partial sums of sum (-1)^k / (4^k (k!)^2)
        let mut num = BigRational::new(BigInt::from(0), BigInt::from(1));
        for k in (0..=30u64).rev() {
            let denom = BigRational::new(
                BigInt::from(1),
                BigInt::from(4).pow(k as u32)
                    * zoo_num::exact::factorial(k)
                    * zoo_num::exact::factorial(k),
            );
            num += if k % 2 == 0 { denom } else { -denom };
        }
        let want = BigReal::from_ratio(&num, 40);
        let got = bessel_j0(&BigReal::one(), 35).unwrap();
        assert!(got.agrees_within(&want, -34));
        assert_eq!(&got.to_string_digits(16).to_string(), "7.651976865579666e-1");
    }

    #[test]
    fn j0_first_zero_by_bisection() {
        // sign-change bracketing oracle
        let prec = 25;
        let mut lo = BigReal::from_u64(2);
        let mut hi = BigReal::from_u64(3);
        assert!(bessel_j0(&lo, prec).unwrap().is_positive());
        assert!(bessel_j0(&hi, prec).unwrap().is_negative());
        for _ in 0..90 {
            let mid = lo.add(&hi, 40).div(&BigReal::from_u64(2), 40).unwrap();
            if bessel_j0(&mid, prec).unwrap().is_positive() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let root = BigReal::parse("2.404825557695773").unwrap();
        assert!(lo.agrees_within(&root, -15));
    }

    #[test]
    fn j0_series_asymptotic_consistency() {
        // both regimes must agree where they overlap
        for xs in ["40.5", "55.25", "70.125"] {
            let x = BigReal::parse(xs).unwrap();
            let a = j0_series(&x, 38);
            let b = j0_asymptotic(&x, 38);
            assert!(a.agrees_within(&b, -30), "x={xs}: {a} vs {b}");
        }
    }

    #[test]
    fn k_half_closed_forms() {
        let w = 40;
        // K_{1/2}(x) = sqrt(pi/(2x)) e^-x at x = 5
        let x = BigReal::from_u64(5);
        let got = bessel_k(&BigReal::parse("0.5").unwrap(), &x, w).unwrap();
        let want = pi(50)
            .div(&BigReal::from_u64(10), 50)
            .unwrap()
            .sqrt(50)
            .unwrap()
            .mul(&exp(&BigReal::from_i64(-5), 50).unwrap(), 50);
        assert!(got.agrees_within(&want, -38));
        // K_{3/2}(2) = sqrt(pi/4) e^-2 (1 + 1/2)
        let got = bessel_k(&BigReal::parse("1.5").unwrap(), &BigReal::from_u64(2), w).unwrap();
        let want = pi(50)
            .div(&BigReal::from_u64(4), 50)
            .unwrap()
            .sqrt(50)
            .unwrap()
            .mul(&exp(&BigReal::from_i64(-2), 50).unwrap(), 50)
            .mul(&BigReal::parse("1.5").unwrap(), 50);
        assert!(got.agrees_within(&want, -38));
    }

    #[test]
    fn k_quadrature_self_convergence() {
        // general nu: doubled node density must agree to 30 digits
        let nu = BigReal::parse("0.7").unwrap();
        let x = BigReal::from_u64(3);
        let a = k_quadrature_with(&nu, &x, 38, 1.0).unwrap();
        let b = k_quadrature_with(&nu, &x, 38, 2.0).unwrap();
        assert!(a.agrees_within(&b, -31), "{a} vs {b}");
    }

    #[test]
    fn k_half_integer_matches_quadrature() {
        // dual-algorithm agreement at nu = 5/2
        let nu = BigReal::parse("2.5").unwrap();
        let x = BigReal::from_u64(7);
        let closed = bessel_k(&nu, &x, 35).unwrap();
        let quad = k_quadrature_with(&nu, &x, 35, 1.0).unwrap();
        assert!(closed.agrees_within(&quad, -31), "{closed} vs {quad}");
    }

    #[test]
    fn k_asymptotic_ratio() {
        // K_nu(x) e^x sqrt(2x/pi) -> 1; within 1% at x = 50
        let nu = BigReal::parse("0.7").unwrap();
        let x = BigReal::from_u64(50);
        let k = bessel_k(&nu, &x, 30).unwrap();
        let ratio = k
            .mul(&exp(&x, 40).unwrap(), 40)
            .mul(&x.mul(&BigReal::from_u64(2), 40).div(&pi(40), 40).unwrap().sqrt(40).unwrap(), 40);
        let dev = ratio.sub(&BigReal::one(), 40).abs();
        assert!(dev.cmp_value(&BigReal::parse("0.01").unwrap()) == Ordering::Less, "ratio {ratio}");
    }

    #[test]
    fn k_domain_errors() {
        assert!(bessel_k(&BigReal::one(), &BigReal::parse("0.5").unwrap(), 20).is_err());
        assert!(bessel_j0(&BigReal::parse("2e6").unwrap(), 20).is_err());
    }
}
