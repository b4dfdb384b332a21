//! Reference zeta values by Euler-Maclaurin summation.
//!
//! This is the independent route the matrix-product identities are judged
//! against: direct sum to M, integral and half-term corrections, then
//! Bernoulli derivative terms with the remainder bounded by the first
//! omitted term.

use zoo_num::exact::bernoulli;
use zoo_num::functions::powi;
use zoo_num::{BigReal, PrecisionContext, Result};

/// zeta(s) for integer s >= 2 at the context's working precision.
pub fn zeta_euler_maclaurin(s: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    assert!(s >= 2);
    let w = ctx.working() + 8;
    // cutoff M: correction terms decay like ((s+2k)/(2 pi M))^2 per step
    let m = (w as u64 / 2).max(40);
    let mut sum = BigReal::zero();
    for n in 1..m {
        sum = sum.add(&powi(&BigReal::from_u64(n), -(s as i64), w)?, w);
    }
    let mb = BigReal::from_u64(m);
    // integral: M^(1-s)/(s-1), endpoint: M^(-s)/2
    sum = sum.add(
        &powi(&mb, 1 - s as i64, w)?.div(&BigReal::from_u64(s as u64 - 1), w)?,
        w,
    );
    sum = sum.add(&powi(&mb, -(s as i64), w)?.div(&BigReal::from_u64(2), w)?, w);
    // Bernoulli corrections: B_2k/(2k)! * (s)_(2k-1) * M^(-s-2k+1)
    let minv2 = powi(&mb, -2, w)?;
    let mut mpow = powi(&mb, -(s as i64) - 1, w)?; // M^(-s-2k+1) at k=1
    let mut poch = BigReal::from_u64(s as u64); // (s)_(2k-1) at k=1
    let mut fact = BigReal::from_u64(2); // (2k)! at k=1
    let tiny = BigReal::pow10_val(-(w as i64) - 2);
    let mut k = 1u64;
    loop {
        let term = BigReal::from_ratio(&bernoulli(2 * k), w)
            .mul(&poch, w)
            .mul(&mpow, w)
            .div(&fact, w)?;
        sum = sum.add(&term, w);
        if term.abs().cmp_value(&tiny) == std::cmp::Ordering::Less {
            break;
        }
        // advance pochhammer (s)_(2k+1) and factorial (2k+2)!
        poch = poch
            .mul(&BigReal::from_u64(s as u64 + 2 * k - 1), w)
            .mul(&BigReal::from_u64(s as u64 + 2 * k), w);
        fact = fact
            .mul(&BigReal::from_u64(2 * k + 1), w)
            .mul(&BigReal::from_u64(2 * k + 2), w);
        mpow = mpow.mul(&minv2, w);
        k += 1;
        assert!(k < 2000, "Euler-Maclaurin correction terms failed to converge");
    }
    Ok(sum.round_to(ctx.working()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use zoo_num::functions::{pi, powi};

    #[test]
    fn even_zeta_matches_closed_forms() {
        let ctx = PrecisionContext::new(60);
        let w = 80;
        let p = pi(w);
        let cases = [
            (2u32, 6u64, 1u64),
            (4, 90, 1),
            (6, 945, 1),
            (8, 9450, 1),
        ];
        for (s, den, num) in cases {
            let got = zeta_euler_maclaurin(s, &ctx).unwrap();
            let want = powi(&p, s as i64, w)
                .unwrap()
                .mul(&BigReal::from_u64(num), w)
                .div(&BigReal::from_u64(den), w)
                .unwrap();
            assert!(got.agrees_within(&want, -60), "zeta({s}): {got} vs {want}");
        }
    }

    #[test]
    fn zeta3_reference_digits() {
        // Apery's constant, first 30 digits
        let ctx = PrecisionContext::new(40);
        let got = zeta_euler_maclaurin(3, &ctx).unwrap();
        let want = BigReal::parse("1.20205690315959428539973816151").unwrap();
        assert!(got.agrees_within(&want, -29));
    }

    #[test]
    fn high_precision_self_consistency() {
        // doubling the precision must not disturb earlier digits
        let a = zeta_euler_maclaurin(5, &PrecisionContext::new(50)).unwrap();
        let b = zeta_euler_maclaurin(5, &PrecisionContext::new(120)).unwrap();
        assert!(a.agrees_within(&b, -60));
    }
}
