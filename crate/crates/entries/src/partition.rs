//! Partition-indexed cycle-index sums for the symmetric and alternating
//! groups, their binomial closed forms, and a generating-function oracle that
//! never touches the binomial formula.
//!
//! Everything here is exact arithmetic; there are no tolerances.

use num_traits::{One, Zero};
use zoo_num::exact::{binomial_u64, factorial, falling_factorial};
use zoo_num::{BigInt, BigRational, Error, Result};

/// Hard cap on exhaustive enumeration: p(60) = 966467 <= 10^6 < p(61).
pub const PARTITION_ENUMERATION_CAP: u64 = 1_000_000;

/// A partition of n encoded by part multiplicities: j[k-1] copies of part k.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionMultiplicity {
    pub n: u32,
    pub j: Vec<u32>,
}

impl PartitionMultiplicity {
    /// Number of parts, sum j_k.
    pub fn total_parts(&self) -> u32 {
        self.j.iter().sum()
    }

    /// Number of parts with even size, j_2 + j_4 + ...
    pub fn even_parts(&self) -> u32 {
        self.j.iter().skip(1).step_by(2).sum()
    }

    fn weight(&self) -> u32 {
        self.j.iter().enumerate().map(|(i, &c)| (i as u32 + 1) * c).sum()
    }
}

/// Number of partitions p(n) by the pentagonal-number recurrence.
pub fn partition_count(n: u32) -> BigInt {
    let n = n as usize;
    let mut p = vec![BigInt::zero(); n + 1];
    p[0] = BigInt::one();
    for m in 1..=n {
        let mut acc = BigInt::zero();
        let mut k = 1i64;
        loop {
            let g1 = (k * (3 * k - 1) / 2) as usize;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 0 { -1 } else { 1 };
            acc += BigInt::from(sign) * &p[m - g1];
            let g2 = (k * (3 * k + 1) / 2) as usize;
            if g2 <= m {
                acc += BigInt::from(sign) * &p[m - g2];
            }
            k += 1;
        }
        p[m] = acc;
    }
    p[n].clone()
}

/// Streams every multiplicity vector of n exactly once, ordered by descending
/// largest part (reverse-lexicographic on the part lists).
pub struct PartitionIter {
    n: u32,
    parts: Vec<u32>, // non-increasing; empty after exhaustion
    started: bool,
}

/// Iterator over the partitions of n. Errors when p(n) exceeds the
/// enumeration cap.
pub fn partitions_iter(n: u32) -> Result<PartitionIter> {
    if n == 0 {
        return Err(Error::Argument("partitions_iter requires n >= 1".into()));
    }
    let count = partition_count(n);
    if count > BigInt::from(PARTITION_ENUMERATION_CAP) {
        return Err(Error::Resource(format!(
            "p({n}) = {count} exceeds the enumeration cap {PARTITION_ENUMERATION_CAP}"
        )));
    }
    Ok(PartitionIter { n, parts: vec![n], started: false })
}

impl Iterator for PartitionIter {
    type Item = PartitionMultiplicity;

    fn next(&mut self) -> Option<Self::Item> {
        if !self.started {
            self.started = true;
        } else {
            // step to the next partition in reverse-lex order
            let k = self.parts.iter().rposition(|&p| p > 1)?;
            let new_val = self.parts[k] - 1;
            let mut rem: u32 = self.parts[k..].iter().sum();
            self.parts.truncate(k);
            while rem > new_val {
                self.parts.push(new_val);
                rem -= new_val;
            }
            if rem > 0 {
                self.parts.push(rem);
            }
        }
        let mut j = vec![0u32; self.n as usize];
        for &p in &self.parts {
            j[p as usize - 1] += 1;
        }
        Some(PartitionMultiplicity { n: self.n, j })
    }
}

/// Shared enumeration core: sum of weight(partition) * d^(total parts) /
/// prod_k (k^(j_k) j_k!) over all partitions of n.
fn cycle_index_sum_with<W>(n: u32, d: u32, weight: W) -> Result<BigRational>
where
    W: Fn(&PartitionMultiplicity) -> u32,
{
    if n < 1 || d < 1 {
        return Err(Error::Argument("cycle index sums need n, d >= 1".into()));
    }
    // reuse factorials and the powers of d along the enumeration
    let fact: Vec<BigInt> = (0..=n as u64).map(factorial).collect();
    let mut d_pow = vec![BigInt::one(); n as usize + 1];
    for i in 1..=n as usize {
        d_pow[i] = &d_pow[i - 1] * BigInt::from(d);
    }
    let mut sum = BigRational::zero();
    for part in partitions_iter(n)? {
        let wgt = weight(&part);
        if wgt == 0 {
            continue;
        }
        let mut den = BigInt::one();
        for (i, &c) in part.j.iter().enumerate() {
            if c > 0 {
                den *= BigInt::from(i as u64 + 1).pow(c) * &fact[c as usize];
            }
        }
        let num = BigInt::from(wgt) * &d_pow[part.total_parts() as usize];
        sum += BigRational::new(num, den);
    }
    Ok(sum)
}

/// Cycle-index sum of the symmetric group at x_k = d:
/// sum over partitions of d^(j_1+...+j_n) / prod k^(j_k) j_k!.
pub fn cycle_index_sum_symmetric(n: u32, d: u32) -> Result<BigRational> {
    cycle_index_sum_with(n, d, |_| 1)
}

/// The closed form C(n+d-1, n) it is claimed to equal.
pub fn closed_form_symmetric(n: u32, d: u32) -> BigInt {
    binomial_u64(n as u64 + d as u64 - 1, n as u64)
}

/// Alternating-group variant: weight 1 + (-1)^(j_2 + j_4 + ...).
pub fn cycle_index_sum_alternating(n: u32, d: u32) -> Result<BigRational> {
    cycle_index_sum_with(n, d, |p| if p.even_parts() % 2 == 0 { 2 } else { 0 })
}

/// Closed form C(n+d-1, n) + d(d-1)...(d-n+1)/n!.
pub fn closed_form_alternating(n: u32, d: u32) -> BigRational {
    let ff = falling_factorial(&BigInt::from(d), &BigInt::from(n)).expect("n >= 0");
    BigRational::from_integer(closed_form_symmetric(n, d))
        + BigRational::new(ff, factorial(n as u64))
}

/// Coefficient of t^n in (1-t)^(-d), computed by truncated power-series
/// exponentiation of 1 + t + t^2 + ... (repeated squaring), deliberately
/// avoiding the binomial formula.
pub fn gf_coefficient_oracle(n: u32, d: u32) -> Result<BigInt> {
    if d < 1 {
        return Err(Error::Argument("gf oracle needs d >= 1".into()));
    }
    if (n as u64 + 1) * (d as u64) > 10_000_000 {
        return Err(Error::Resource("gf oracle cap n*d exceeded".into()));
    }
    let len = n as usize + 1;
    let mul_trunc = |a: &[BigInt], b: &[BigInt]| -> Vec<BigInt> {
        let mut c = vec![BigInt::zero(); len];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (k, ck) in c.iter_mut().enumerate().skip(i) {
                let bj = &b[k - i];
                if !bj.is_zero() {
                    *ck += ai * bj;
                }
            }
        }
        c
    };
    let geometric = vec![BigInt::one(); len];
    let mut acc: Vec<BigInt> = {
        let mut v = vec![BigInt::zero(); len];
        v[0] = BigInt::one();
        v
    };
    let mut base = geometric;
    let mut e = d;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_trunc(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul_trunc(&base, &base);
        }
    }
    Ok(acc[n as usize].clone())
}
