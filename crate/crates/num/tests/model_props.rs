//! Property tests for the decimal bigfloat against an exact rational model.

use num_traits::{Signed, Zero};
use proptest::prelude::*;
use zoo_num::{BigInt, BigRational, BigReal};

fn arb_real() -> impl Strategy<Value = BigReal> {
    (any::<i64>(), -60i64..60).prop_map(|(m, e)| BigReal::from_parts(BigInt::from(m), e))
}

/// Correctly rounded value of an exact rational at `prec` digits, computed
/// from first principles on the rational side.
fn round_rational(r: &BigRational, prec: u32) -> BigRational {
    if r.numer().is_zero() {
        return r.clone();
    }
    // find e with 10^(e-1) <= |r| < 10^e by coarse search
    let mut e = 0i64;
    let ten = BigRational::from_integer(BigInt::from(10));
    let one = BigRational::from_integer(BigInt::from(1));
    let mut scaled = r.abs();
    while scaled >= one {
        scaled /= &ten;
        e += 1;
    }
    while scaled < one.clone() / &ten {
        scaled *= &ten;
        e -= 1;
    }
    // |r| in [10^(e-1), 10^e): unit in the last of `prec` digits is 10^(e-prec)
    let unit_exp = e - prec as i64;
    let unit = if unit_exp >= 0 {
        BigRational::from_integer(BigInt::from(10).pow(unit_exp as u32))
    } else {
        BigRational::new(BigInt::from(1), BigInt::from(10).pow((-unit_exp) as u32))
    };
    let q = r.abs() / &unit;
    let fl = q.floor();
    let frac = &q - &fl;
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let fl_int = fl.to_integer();
    let rounded = if frac > half {
        fl_int + 1
    } else if frac < half {
        fl_int
    } else if (&fl_int % BigInt::from(2)).is_zero() {
        fl_int
    } else {
        fl_int + 1
    };
    let mag = BigRational::from_integer(rounded) * unit;
    if r.is_negative() {
        -mag
    } else {
        mag
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn serialization_roundtrips_exactly(x in arb_real()) {
        let s = x.to_decimal_string();
        let y = BigReal::parse(&s).unwrap();
        prop_assert_eq!(x, y);
    }

    #[test]
    fn mul_matches_exactly_rounded_rational(a in arb_real(), b in arb_real(), prec in 1u32..25) {
        let got = a.mul(&b, prec);
        let want = round_rational(&(a.to_rational() * b.to_rational()), prec);
        prop_assert_eq!(got.to_rational(), want);
    }

    #[test]
    fn add_matches_exactly_rounded_rational(a in arb_real(), b in arb_real(), prec in 1u32..25) {
        let got = a.add(&b, prec);
        let want = round_rational(&(a.to_rational() + b.to_rational()), prec);
        prop_assert_eq!(got.to_rational(), want);
    }

    #[test]
    fn div_matches_exactly_rounded_rational(a in arb_real(), b in arb_real(), prec in 1u32..25) {
        prop_assume!(!b.is_zero());
        let got = a.div(&b, prec).unwrap();
        let want = round_rational(&(a.to_rational() / b.to_rational()), prec);
        prop_assert_eq!(got.to_rational(), want);
    }

    /// Raising precision never disturbs previously agreed digits by more than
    /// one unit in the last previously reported place.
    #[test]
    fn monotone_refinement(a in arb_real(), b in arb_real(), prec in 2u32..20) {
        prop_assume!(!b.is_zero());
        let lo = a.div(&b, prec).unwrap();
        let hi = a.div(&b, prec + 15).unwrap();
        if let Some(m) = lo.mag10() {
            let ulp = m - prec as i64 + 1;
            prop_assert!(lo.agrees_within(&hi, ulp));
        }
    }

    /// Far-separated magnitudes: sticky addition equals the exactly rounded sum.
    #[test]
    fn sticky_add_far_magnitudes(m in 1i64..1000, gap in 40i64..4000, prec in 1u32..30, neg in any::<bool>()) {
        let big = BigReal::from_i64(m);
        let tiny = BigReal::from_parts(BigInt::from(if neg { -3 } else { 3 }), -gap);
        let got = big.add(&tiny, prec);
        // with gap >= 40 > prec + 4 the sum must round back to big itself
        prop_assert_eq!(got, big.round_to(prec));
    }
}

#[test]
fn determinism_across_runs() {
    // same inputs, same context => bit-identical serialization
    let a = BigReal::parse("3.1415926535897932384626433832795").unwrap();
    let b = BigReal::parse("-2.718281828459045235360287471e-3").unwrap();
    let r1 = a.div(&b, 37).unwrap().to_decimal_string();
    let r2 = a.div(&b, 37).unwrap().to_decimal_string();
    assert_eq!(r1, r2);
    let handles: Vec<_> = (0..4)
        .map(|_| {
            let a = a.clone();
            let b = b.clone();
            std::thread::spawn(move || a.div(&b, 37).unwrap().to_decimal_string())
        })
        .collect();
    for h in handles {
        assert_eq!(h.join().unwrap(), r1);
    }
}
