//! Infinite products of upper-triangular matrices [[A_k, u_k], [0, 1]] with
//! A_k = alpha_k I + beta_k J, and the series they encode.
//!
//! The top-right column of the n-fold product is v_n = sum A_1..A_{i-1} u_i,
//! which has a closed form in terms of elementary symmetric functions of the
//! ratios beta_j/alpha_j. Specs for the zeta-value products are provided,
//! along with Markov's series for zeta(2), coefficient extraction from the
//! central-binomial generating function, and the hyper-harmonic machinery the
//! zeta(6) correction needs.
//!
//! All per-term data (alpha, beta, u, hyper-harmonics, central binomials) is
//! exact rational; rounding happens once per term at accumulation time.

use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use zoo_num::{BigInt, BigRational, BigReal, PrecisionContext};

type RatFn = Box<dyn Fn(u64) -> BigRational + Send + Sync>;
type VecFn = Box<dyn Fn(u64) -> Vec<BigRational> + Send + Sync>;

/// Generator of the factors [[alpha_k I + beta_k J, u_k], [0, 1]], indexed
/// from k = 1. The u column is stored top to bottom: u^(N), ..., u^(1).
pub struct TriangularProductSpec {
    pub dim_n: usize,
    alpha: RatFn,
    beta: RatFn,
    u: VecFn,
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn rat_big(n: BigInt, d: BigInt) -> BigRational {
    BigRational::new(n, d)
}

impl TriangularProductSpec {
    pub fn new(dim_n: usize, alpha: RatFn, beta: RatFn, u: VecFn) -> Self {
        assert!(dim_n >= 1);
        TriangularProductSpec { dim_n, alpha, beta, u }
    }

    pub fn alpha(&self, k: u64) -> BigRational {
        let a = (self.alpha)(k);
        assert!(!a.is_zero(), "alpha_{k} must be nonzero");
        a
    }

    pub fn beta(&self, k: u64) -> BigRational {
        (self.beta)(k)
    }

    pub fn u_col(&self, k: u64) -> Vec<BigRational> {
        let u = (self.u)(k);
        assert_eq!(u.len(), self.dim_n);
        u
    }

    /// The exact (N+1)x(N+1) factor for index k.
    pub fn matrix_exact(&self, k: u64) -> Vec<Vec<BigRational>> {
        let n = self.dim_n;
        let mut m = vec![vec![BigRational::zero(); n + 1]; n + 1];
        let a = self.alpha(k);
        let b = self.beta(k);
        let u = self.u_col(k);
        for i in 0..n {
            m[i][i] = a.clone();
            if i + 1 < n {
                m[i][i + 1] = b.clone();
            }
            m[i][n] = u[i].clone();
        }
        m[n][n] = BigRational::one();
        m
    }
}

fn mat_mul_real(a: &[Vec<BigReal>], b: &[Vec<BigReal>], w: u32) -> Vec<Vec<BigReal>> {
    let n = a.len();
    let mut c = vec![vec![BigReal::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = BigReal::zero();
            for (k, aik) in a[i].iter().enumerate() {
                if !aik.is_zero() && !b[k][j].is_zero() {
                    acc = acc.add(&aik.mul(&b[k][j], w), w);
                }
            }
            c[i][j] = acc;
        }
    }
    c
}

fn matrix_real(spec: &TriangularProductSpec, k: u64, w: u32) -> Vec<Vec<BigReal>> {
    spec.matrix_exact(k)
        .into_iter()
        .map(|row| row.into_iter().map(|e| BigReal::from_ratio(&e, w)).collect())
        .collect()
}

/// Literal left-to-right product M_1 M_2 ... M_n at working precision.
pub fn partial_product_direct(spec: &TriangularProductSpec, n: u64, ctx: &PrecisionContext) -> Vec<Vec<BigReal>> {
    let w = ctx.working();
    let dim = spec.dim_n + 1;
    let mut acc: Vec<Vec<BigReal>> = (0..dim)
        .map(|i| (0..dim).map(|j| if i == j { BigReal::one() } else { BigReal::zero() }).collect())
        .collect();
    for k in 1..=n {
        let m = matrix_real(spec, k, w);
        acc = mat_mul_real(&acc, &m, w);
    }
    acc
}

/// Same product evaluated by balanced-tree pairwise multiplication; must agree
/// with the left-to-right order to working precision.
pub fn partial_product_pairwise(spec: &TriangularProductSpec, n: u64, ctx: &PrecisionContext) -> Vec<Vec<BigReal>> {
    let w = ctx.working();
    fn rec(spec: &TriangularProductSpec, lo: u64, hi: u64, w: u32) -> Vec<Vec<BigReal>> {
        if lo == hi {
            return matrix_real(spec, lo, w);
        }
        let mid = lo + (hi - lo) / 2;
        let a = rec(spec, lo, mid, w);
        let b = rec(spec, mid + 1, hi, w);
        mat_mul_real(&a, &b, w)
    }
    rec(spec, 1, n, w)
}

/// Exact rational left-to-right product, for equivalence testing at small n.
pub fn partial_product_direct_exact(spec: &TriangularProductSpec, n: u64) -> Vec<Vec<BigRational>> {
    let dim = spec.dim_n + 1;
    let mut acc: Vec<Vec<BigRational>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                .collect()
        })
        .collect();
    for k in 1..=n {
        let m = spec.matrix_exact(k);
        let mut c = vec![vec![BigRational::zero(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                let mut s = BigRational::zero();
                for (t, a_it) in acc[i].iter().enumerate() {
                    if !a_it.is_zero() && !m[t][j].is_zero() {
                        s += a_it * &m[t][j];
                    }
                }
                c[i][j] = s;
            }
        }
        acc = c;
    }
    acc
}

/// Running state of the closed-form column evaluation.
///
/// After `step` factors, `v_partial` equals the top-right column of the
/// explicit product: entry l (from the bottom, 1-based) is
/// sum_p (sum_m e_m(beta/alpha ratios over j<p) u_p^(l-m)) prod_{q<p} alpha_q,
/// with the elementary symmetric functions e_m maintained incrementally.
pub struct PartialProductState {
    pub step: u64,
    pub alpha_prod: BigRational,
    pub elem_sym: Vec<BigRational>,
    pub v_partial: Vec<BigReal>,
    working: u32,
}

impl PartialProductState {
    pub fn new(dim_n: usize, working: u32) -> Self {
        PartialProductState {
            step: 0,
            alpha_prod: BigRational::one(),
            elem_sym: vec![BigRational::zero(); dim_n.saturating_sub(1)],
            v_partial: vec![BigReal::zero(); dim_n],
            working,
        }
    }

    /// Exact per-term contribution to v^(l), l = 1..N (bottom-up).
    fn term(&self, spec: &TriangularProductSpec, p: u64, l: usize) -> BigRational {
        let u = spec.u_col(p);
        let n = spec.dim_n;
        let mut s = BigRational::zero();
        for m in 0..l {
            // e_m ; e_0 = 1
            let e = if m == 0 {
                BigRational::one()
            } else {
                self.elem_sym[m - 1].clone()
            };
            // u_p^(l-m) sits at index N - (l-m)
            let comp = &u[n - (l - m)];
            if !comp.is_zero() && !e.is_zero() {
                s += e * comp;
            }
        }
        s * &self.alpha_prod
    }

    pub fn advance(&mut self, spec: &TriangularProductSpec, rounds: u64) {
        let n = spec.dim_n;
        for _ in 0..rounds {
            let p = self.step + 1;
            for l in 1..=n {
                let t = self.term(spec, p, l);
                if !t.is_zero() {
                    let tr = BigReal::from_ratio(&t, self.working);
                    self.v_partial[n - l] = self.v_partial[n - l].add(&tr, self.working);
                }
            }
            // fold in factor p: alpha product and elementary symmetric functions
            let a = spec.alpha(p);
            let r = spec.beta(p) / &a;
            for m in (0..self.elem_sym.len()).rev() {
                let lower = if m == 0 { BigRational::one() } else { self.elem_sym[m - 1].clone() };
                let updated = self.elem_sym[m].clone() + lower * &r;
                self.elem_sym[m] = updated;
            }
            self.alpha_prod *= a;
            self.step = p;
        }
    }
}

/// Closed-form evaluation of the product column after n factors, rounding each
/// exact rational term into the accumulator.
pub fn v_partial_closed(spec: &TriangularProductSpec, n: u64, ctx: &PrecisionContext) -> Vec<BigReal> {
    let mut st = PartialProductState::new(spec.dim_n, ctx.working());
    st.advance(spec, n);
    st.v_partial
}

/// Fully exact variant for the equivalence tests.
pub fn v_partial_closed_exact(spec: &TriangularProductSpec, n: u64) -> Vec<BigRational> {
    let dim = spec.dim_n;
    let mut v = vec![BigRational::zero(); dim];
    let mut alpha_prod = BigRational::one();
    let mut elem = vec![BigRational::zero(); dim.saturating_sub(1)];
    for p in 1..=n {
        let u = spec.u_col(p);
        for l in 1..=dim {
            let mut s = BigRational::zero();
            for m in 0..l {
                let e = if m == 0 { BigRational::one() } else { elem[m - 1].clone() };
                s += e * &u[dim - (l - m)];
            }
            let updated = v[dim - l].clone() + s * &alpha_prod;
            v[dim - l] = updated;
        }
        let a = spec.alpha(p);
        let r = spec.beta(p) / &a;
        for m in (0..elem.len()).rev() {
            let lower = if m == 0 { BigRational::one() } else { elem[m - 1].clone() };
            let updated = elem[m].clone() + lower * &r;
            elem[m] = updated;
        }
        alpha_prod *= a;
    }
    v
}

/// Incrementally extended table of H_n^(p) = sum_{k<=n} k^-p.
pub struct HyperHarmonic {
    pub order: u32,
    values: Vec<BigRational>,
}

impl HyperHarmonic {
    pub fn new(order: u32) -> Self {
        assert!(order >= 1);
        HyperHarmonic { order, values: vec![BigRational::zero()] }
    }

    pub fn get(&mut self, n: u64) -> BigRational {
        while (self.values.len() as u64) <= n {
            let k = self.values.len() as u64;
            let kp = BigInt::from(k).pow(self.order);
            let next = self.values.last().unwrap() + rat_big(BigInt::one(), kp);
            self.values.push(next);
        }
        self.values[n as usize].clone()
    }
}

/// Bivariate table H_n^(p,q) = sum_{k1 > k2 >= 1, k1 <= n} k1^-p k2^-q.
pub struct BivariateHyperHarmonic {
    pub p: u32,
    pub q: u32,
    inner: HyperHarmonic,
    values: Vec<BigRational>,
}

impl BivariateHyperHarmonic {
    pub fn new(p: u32, q: u32) -> Self {
        BivariateHyperHarmonic { p, q, inner: HyperHarmonic::new(q), values: vec![BigRational::zero()] }
    }

    pub fn get(&mut self, n: u64) -> BigRational {
        while (self.values.len() as u64) <= n {
            let k = self.values.len() as u64;
            let kp = BigInt::from(k).pow(self.p);
            let add = self.inner.get(k - 1) / BigRational::from_integer(kp);
            let next = self.values.last().unwrap() + add;
            self.values.push(next);
        }
        self.values[n as usize].clone()
    }
}

/// Variants of the even-zeta product specs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZetaEvenVariant {
    /// 3x3 block; column converges to (zeta(4), zeta(2)).
    Zeta4,
    /// 4x4 block as printed, converging to (zeta(6) + delta, zeta(4), zeta(2)).
    Zeta6Uncorrected,
    /// 4x4 block with the hyper-harmonic repair; converges to zeta(6).
    Zeta6Corrected,
    /// Same factors as `Zeta6Uncorrected`; the claimed limit carries the
    /// explicit delta constant instead.
    Zeta6Alternate,
}

/// alpha_n = n/(2(2n+1)), beta_n = -3/(2n(2n+1)), u per variant.
pub fn zeta_even_spec(variant: ZetaEvenVariant) -> TriangularProductSpec {
    let alpha: RatFn = Box::new(|n| rat(n as i64, 2 * (2 * n as i64 + 1)));
    let beta: RatFn = Box::new(|n| rat(-3, 2 * n as i64 * (2 * n as i64 + 1)));
    match variant {
        ZetaEvenVariant::Zeta4 => {
            let u: VecFn = Box::new(|n| {
                let n = n as i64;
                vec![rat(3, 2 * n * n * n), rat(3, 2 * n)]
            });
            TriangularProductSpec::new(2, alpha, beta, u)
        }
        ZetaEvenVariant::Zeta6Uncorrected | ZetaEvenVariant::Zeta6Alternate => {
            let u: VecFn = Box::new(|n| {
                let n = n as i64;
                vec![rat(3, 2 * n.pow(5)), rat(3, 2 * n.pow(3)), rat(3, 2 * n)]
            });
            TriangularProductSpec::new(3, alpha, beta, u)
        }
        ZetaEvenVariant::Zeta6Corrected => {
            let h4 = Arc::new(Mutex::new(HyperHarmonic::new(4)));
            let u: VecFn = Box::new(move |n| {
                let h = h4.lock().unwrap().get(n - 1);
                let ni = n as i64;
                let top = rat(3, 2 * ni.pow(5)) - rat(9, 2 * ni) * h;
                vec![top, rat(3, 2 * ni.pow(3)), rat(3, 2 * ni)]
            });
            TriangularProductSpec::new(3, alpha, beta, u)
        }
    }
}

/// Odd-zeta spec: alpha_k = -k/(2(2k+1)), beta_k = 1/(2k(2k+1)),
/// u = (1/k^2N, ..., 1/k^4, 5/(4k^2)). N = 1 is the classic zeta(3) product.
pub fn zeta_odd_spec(n_dim: usize) -> TriangularProductSpec {
    assert!(n_dim >= 1);
    let alpha: RatFn = Box::new(|k| rat(-(k as i64), 2 * (2 * k as i64 + 1)));
    let beta: RatFn = Box::new(|k| rat(1, 2 * k as i64 * (2 * k as i64 + 1)));
    let u: VecFn = Box::new(move |k| {
        let kb = BigInt::from(k);
        let mut col = Vec::with_capacity(n_dim);
        for l in (2..=n_dim).rev() {
            // u^(l) = 1/k^(2l) for l >= 2, listed top to bottom
            col.push(rat_big(BigInt::one(), kb.pow(2 * l as u32)));
        }
        col.push(rat_big(BigInt::from(5), BigInt::from(4) * &kb * &kb));
        col
    });
    TriangularProductSpec::new(n_dim, alpha, beta, u)
}

/// Incrementally maintained central binomial C(2k, k).
pub struct CentralBinomial {
    k: u64,
    value: BigInt,
}

impl CentralBinomial {
    pub fn new() -> Self {
        CentralBinomial { k: 1, value: BigInt::from(2) }
    }

    /// C(2k, k); indices must be requested in non-decreasing order.
    pub fn get(&mut self, k: u64) -> BigInt {
        assert!(k >= self.k, "central binomials advance forward only");
        while self.k < k {
            // C(2(k+1), k+1) = C(2k, k) * 2(2k+1)/(k+1)
            self.value = &self.value * BigInt::from(2 * (2 * self.k + 1));
            let d = BigInt::from(self.k + 1);
            assert!((&self.value % &d).is_zero());
            self.value = &self.value / d;
            self.k += 1;
        }
        self.value.clone()
    }
}

impl Default for CentralBinomial {
    fn default() -> Self {
        Self::new()
    }
}

/// Markov's series: zeta(2) = sum 3/(i^2 C(2i, i)), summed for `terms` terms.
/// The term ratio approaches 1/4, so the tail after m terms is below
/// 4/3 * term(m+1).
pub fn markov_zeta2(terms: u64, ctx: &PrecisionContext) -> BigReal {
    let w = ctx.working();
    let mut c = CentralBinomial::new();
    let mut sum = BigReal::zero();
    for i in 1..=terms {
        let t = rat_big(BigInt::from(3), BigInt::from(i * i) * c.get(i));
        sum = sum.add(&BigReal::from_ratio(&t, w), w);
    }
    sum
}

/// Exact z^0, z^2, z^4 coefficients of the k-th term of the central-binomial
/// generating function 3/C(2k,k) * 1/(k^2-z^2) * prod_{j<k} (j^2-4z^2)/(j^2-z^2).
pub struct GfSeriesTerms {
    k: u64,
    // coefficients of prod_{j<k} in powers of z^2, truncated to degree 2
    prod: [BigRational; 3],
    binom: CentralBinomial,
}

impl GfSeriesTerms {
    pub fn new() -> Self {
        GfSeriesTerms {
            k: 0,
            prod: [BigRational::one(), BigRational::zero(), BigRational::zero()],
            binom: CentralBinomial::new(),
        }
    }
}

impl Default for GfSeriesTerms {
    fn default() -> Self {
        Self::new()
    }
}

/// Multiply a degree-2 truncated series by 1/(c - w) = (1/c)(1 + w/c + w^2/c^2).
fn mul_geo(s: &[BigRational; 3], c: &BigRational) -> [BigRational; 3] {
    let ic = BigRational::one() / c;
    let ic2 = &ic * &ic;
    [
        &s[0] * &ic,
        &s[1] * &ic + &s[0] * &ic2,
        &s[2] * &ic + &s[1] * &ic2 + &s[0] * &ic2 * &ic,
    ]
}

impl Iterator for GfSeriesTerms {
    type Item = (u64, [BigRational; 3]);

    fn next(&mut self) -> Option<Self::Item> {
        self.k += 1;
        let k = self.k;
        if k > 1 {
            // fold factor j = k-1 into the running product:
            // multiply by (j^2 - 4 w), divide by (j^2 - w)
            let j2 = BigRational::from_integer(BigInt::from((k - 1) * (k - 1)));
            let four = BigRational::from_integer(BigInt::from(4));
            let m = [
                &self.prod[0] * &j2,
                &self.prod[1] * &j2 - &four * &self.prod[0],
                &self.prod[2] * &j2 - &four * &self.prod[1],
            ];
            self.prod = mul_geo(&m, &j2);
        }
        let k2 = BigRational::from_integer(BigInt::from(k * k));
        let mut t = mul_geo(&self.prod, &k2);
        let scale = rat_big(BigInt::from(3), self.binom.get(k));
        for c in t.iter_mut() {
            *c *= &scale;
        }
        Some((k, t))
    }
}

/// Coefficient of z^order (order in {0, 2, 4}) of the generating-function
/// right-hand side, summed over `terms` central-binomial terms. Order 0, 2, 4
/// converge to zeta(2), zeta(4), zeta(6).
pub fn borwein_gf_coefficient(order: u32, terms: u64, ctx: &PrecisionContext) -> BigReal {
    assert!(matches!(order, 0 | 2 | 4), "order must be 0, 2 or 4");
    let w = ctx.working();
    let idx = (order / 2) as usize;
    let mut sum = BigReal::zero();
    for (k, t) in GfSeriesTerms::new() {
        sum = sum.add(&BigReal::from_ratio(&t[idx], w), w);
        if k >= terms {
            break;
        }
    }
    sum
}

/// Exact k-th term of the expanded zeta(6) series:
/// 3 [17 H_(k-1)^(2,2) + H_(k-1)^(4) - 4 (H_(k-1)^(2))^2 - 3 H_(k-1)^(2)/k^2
///   + 1/k^4] / (C(2k,k) k^2).
pub struct Zeta6ExpansionTerms {
    k: u64,
    h2: HyperHarmonic,
    h4: HyperHarmonic,
    h22: BivariateHyperHarmonic,
    binom: CentralBinomial,
}

impl Zeta6ExpansionTerms {
    pub fn new() -> Self {
        Zeta6ExpansionTerms {
            k: 0,
            h2: HyperHarmonic::new(2),
            h4: HyperHarmonic::new(4),
            h22: BivariateHyperHarmonic::new(2, 2),
            binom: CentralBinomial::new(),
        }
    }
}

impl Default for Zeta6ExpansionTerms {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for Zeta6ExpansionTerms {
    type Item = (u64, BigRational);

    fn next(&mut self) -> Option<Self::Item> {
        self.k += 1;
        let k = self.k;
        let h2 = self.h2.get(k - 1);
        let h4 = self.h4.get(k - 1);
        let h22 = self.h22.get(k - 1);
        let k2 = BigRational::from_integer(BigInt::from(k * k));
        let k4 = &k2 * &k2;
        let bracket = BigRational::from_integer(BigInt::from(17)) * h22 + &h4
            - BigRational::from_integer(BigInt::from(4)) * (&h2 * &h2)
            - BigRational::from_integer(BigInt::from(3)) * &h2 / &k2
            + BigRational::one() / &k4;
        let term = BigRational::from_integer(BigInt::from(3)) * bracket
            / (BigRational::from_integer(self.binom.get(k)) * &k2);
        Some((k, term))
    }
}

/// zeta(6) by the explicit hyper-harmonic expansion.
pub fn zeta6_expansion(terms: u64, ctx: &PrecisionContext) -> BigReal {
    let w = ctx.working();
    let mut sum = BigReal::zero();
    for (k, t) in Zeta6ExpansionTerms::new() {
        sum = sum.add(&BigReal::from_ratio(&t, w), w);
        if k >= terms {
            break;
        }
    }
    sum
}

/// The correction constant delta = 9 sum_m H_(m-1)^(4) / (C(2m, m) m^2),
/// the exact gap between the uncorrected product's top entry and zeta(6).
pub fn delta_constant(terms: u64, ctx: &PrecisionContext) -> BigReal {
    let w = ctx.working();
    let mut h4 = HyperHarmonic::new(4);
    let mut binom = CentralBinomial::new();
    let mut sum = BigReal::zero();
    for m in 1..=terms {
        let t = BigRational::from_integer(BigInt::from(9)) * h4.get(m - 1)
            / (BigRational::from_integer(binom.get(m)) * BigRational::from_integer(BigInt::from(m * m)));
        sum = sum.add(&BigReal::from_ratio(&t, w), w);
    }
    sum
}
