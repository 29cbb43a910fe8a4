//! Truncated formal power series with exact rational coefficients.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `sum_{i <= N} c_i x^i`, all arithmetic truncated at order `N`.
#[derive(Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, BigRational::one())
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        Self::monomial(order, 1, BigRational::one())
    }

    /// `c x^e`, or zero when `e > order`.
    pub fn monomial(order: usize, e: usize, c: BigRational) -> Self {
        let mut s = Self::zero(order);
        if e <= order {
            s.coeffs[e] = c;
        }
        s
    }

    /// From leading coefficients; missing ones are zero, extra ones dropped.
    pub fn from_rationals(order: usize, cs: impl IntoIterator<Item = BigRational>) -> Self {
        let mut s = Self::zero(order);
        for (i, c) in cs.into_iter().take(order + 1).enumerate() {
            s.coeffs[i] = c;
        }
        s
    }

    pub fn from_integers(order: usize, cs: impl IntoIterator<Item = BigInt>) -> Self {
        Self::from_rationals(order, cs.into_iter().map(BigRational::from_integer))
    }

    pub fn from_i64(order: usize, cs: &[i64]) -> Self {
        Self::from_rationals(order, cs.iter().map(|&c| rat(c)))
    }

    /// Truncation order `N`.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficients as integers, or `None` if any is not an integer.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn is_nonnegative_integral(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.is_integer() && !c.is_negative())
    }

    /// Coefficients as `f64` (lossy, saturating to infinity for huge values).
    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::INFINITY))
            .collect()
    }

    /// Same coefficients, truncated or zero-padded to `order`.
    pub fn with_order(&self, order: usize) -> Self {
        Self::from_rationals(order, self.coeffs.iter().cloned())
    }

    fn same_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::TruncationMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(PowerSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(PowerSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Cauchy product truncated at `N`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let n = self.order();
        // integer inputs are multiplied without rational normalisation
        if let (Some(a), Some(b)) = (self.integer_coeffs(), other.integer_coeffs()) {
            let mut out = vec![BigInt::zero(); n + 1];
            for (i, ai) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                for (j, bj) in b[..=n - i].iter().enumerate() {
                    out[i + j] += ai * bj;
                }
            }
            return Ok(Self::from_integers(n, out));
        }
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, ai) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, bj) in other.coeffs[..=n - i].iter().enumerate() {
                out[i + j] += ai * bj;
            }
        }
        Ok(PowerSeries { coeffs: out })
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn scale_ratio(&self, num: i64, den: i64) -> Self {
        self.scale(&BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Multiply by `x`, dropping the term that passes `N`.
    pub fn shift(&self) -> Self {
        let n = self.order();
        let mut coeffs = Vec::with_capacity(n + 1);
        coeffs.push(BigRational::zero());
        coeffs.extend(self.coeffs[..n].iter().cloned());
        PowerSeries { coeffs }
    }

    /// `A(x^k)` truncated at `N`.
    pub fn substitute_power(&self, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::OutOfRange {
                param: "k",
                detail: "substitution power must be at least 1".into(),
            });
        }
        let n = self.order();
        let mut out = Self::zero(n);
        for (j, c) in self.coeffs.iter().enumerate() {
            if j * k > n {
                break;
            }
            out.coeffs[j * k] = c.clone();
        }
        Ok(out)
    }

    fn require_zero_constant(&self) -> Result<()> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstant);
        }
        Ok(())
    }

    /// `exp(A)` from `n b_n = sum_k k a_k b_{n-k}`.
    pub fn exp(&self) -> Result<Self> {
        self.require_zero_constant()?;
        let n = self.order();
        let ka: Vec<BigRational> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, a)| a * rat(k as i64))
            .collect();
        let mut b = vec![BigRational::zero(); n + 1];
        b[0] = BigRational::one();
        for m in 1..=n {
            let mut s = BigRational::zero();
            for k in 1..=m {
                if !ka[k].is_zero() {
                    s += &ka[k] * &b[m - k];
                }
            }
            b[m] = s / rat(m as i64);
        }
        Ok(PowerSeries { coeffs: b })
    }

    /// Multisets: `exp(sum_{k >= 1} A(x^k) / k)`.
    pub fn mset(&self) -> Result<Self> {
        self.require_zero_constant()?;
        if let Some(a) = self.integer_coeffs() {
            return Ok(Self::from_integers(self.order(), euler_transform(&a)));
        }
        let n = self.order();
        let mut sum = Self::zero(n);
        for k in 1..=n.max(1) {
            sum = sum.add(&self.substitute_power(k)?.scale_ratio(1, k as i64))?;
        }
        sum.exp()
    }

    /// Unordered pairs: `(A^2 + A(x^2)) / 2`.
    pub fn mset2(&self) -> Self {
        let sq = self.mul(self).expect("same order");
        sq.add(&self.substitute_power(2).expect("k = 2"))
            .expect("same order")
            .scale_ratio(1, 2)
    }
}

/// Multiset transform of an integer sequence with `a[0] = 0`:
/// `n b_n = sum_{k=1}^{n} c_k b_{n-k}` where `c_k = sum_{d | k} d a_d`.
pub fn euler_transform(a: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().saturating_sub(1);
    let mut c = vec![BigInt::zero(); n + 1];
    for d in 1..=n {
        if a[d].is_zero() {
            continue;
        }
        let da = &a[d] * d;
        for k in (d..=n).step_by(d) {
            c[k] += &da;
        }
    }
    let mut b = vec![BigInt::zero(); n + 1];
    if !a.is_empty() {
        b[0] = BigInt::one();
    }
    for m in 1..=n {
        let mut s = BigInt::zero();
        for k in 1..=m {
            s += &c[k] * &b[m - k];
        }
        let (q, r) = s.div_rem(&BigInt::from(m));
        debug_assert!(
            r.is_zero(),
            "multiset transform of an integer sequence is integral"
        );
        b[m] = q;
    }
    b
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "PowerSeries[N={}]({})", self.order(), terms.join(", "))
    }
}
