//! Counting butterfly cacti through their trees.
//!
//! `T_diamond` counts trees rooted at a leaf and satisfies
//! `T_diamond = x * T_star * MSET2(T_star)` with `T_star = MSET(T_diamond)`.
//! The rooted variants below combine into the unrooted count `T` by the
//! dissymmetry formula, and `G = MSET(T)` counts multisets of butterfly cacti.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::series::PowerSeries;

/// Default truncation order for command-line use.
pub const DEFAULT_ORDER: usize = 64;

/// Solve for `T_diamond` and `T_star` coefficient by coefficient.
///
/// `[x^n] T_diamond` only involves coefficients of `T_star` and `MSET2(T_star)`
/// below `n`, which in turn only involve `T_diamond` below `n`, so the whole
/// solve is one pass over `n` in exact integers.
pub fn solve_t_diamond_integers(order: usize) -> (Vec<BigInt>, Vec<BigInt>) {
    let n = order;
    let mut a = vec![BigInt::zero(); n + 1]; // T_diamond
    let mut b = vec![BigInt::zero(); n + 1]; // T_star
    let mut p = vec![BigInt::zero(); n + 1]; // MSET2(T_star)
    let mut c = vec![BigInt::zero(); n + 1]; // sum_{d | k} d a_d
    b[0] = BigInt::one();
    p[0] = BigInt::one();
    for m in 1..=n {
        let mut s = BigInt::zero();
        for i in 0..m {
            s += &b[i] * &p[m - 1 - i];
        }
        a[m] = s;
        let mut cm = BigInt::zero();
        for d in 1..=m {
            if m % d == 0 {
                cm += &a[d] * d;
            }
        }
        c[m] = cm;
        let mut s = BigInt::zero();
        for k in 1..=m {
            s += &c[k] * &b[m - k];
        }
        let (q, r) = s.div_rem(&BigInt::from(m));
        debug_assert!(r.is_zero());
        b[m] = q;
        let mut s = BigInt::zero();
        for i in 0..=m {
            s += &b[i] * &b[m - i];
        }
        if m % 2 == 0 {
            s += &b[m / 2];
        }
        p[m] = s / 2;
    }
    (a, b)
}

/// `(T_diamond, T_star)` truncated at `order`.
pub fn solve_t_diamond(order: usize) -> (PowerSeries, PowerSeries) {
    let (a, b) = solve_t_diamond_integers(order);
    (
        PowerSeries::from_integers(order, a),
        PowerSeries::from_integers(order, b),
    )
}

/// Every series of the system, at a common truncation order.
#[derive(Clone, Debug)]
pub struct SeriesSystemSolution {
    pub t_diamond: PowerSeries,
    pub t_star: PowerSeries,
    pub t_circ: PowerSeries,
    pub t_square: PowerSeries,
    pub t_triangle: PowerSeries,
    pub t_sq_to_tri: PowerSeries,
    pub t_tri_to_circ: PowerSeries,
    pub t: PowerSeries,
    pub g: PowerSeries,
}

impl SeriesSystemSolution {
    pub fn order(&self) -> usize {
        self.t.order()
    }

    /// `[x^n] T` as an integer.
    pub fn t_coeff(&self, n: usize) -> BigInt {
        self.t.coeff(n).to_integer()
    }

    pub fn g_coeff(&self, n: usize) -> BigInt {
        self.g.coeff(n).to_integer()
    }

    /// Rows `(n, t_n, g_n)` with exact integers as decimal strings.
    pub fn table(&self) -> Vec<SeriesRow> {
        (0..=self.order())
            .map(|n| SeriesRow {
                n,
                t: self.t_coeff(n).to_string(),
                g: self.g_coeff(n).to_string(),
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeriesRow {
    pub n: usize,
    pub t: String,
    pub g: String,
}

pub fn solve_system(order: usize) -> Result<SeriesSystemSolution> {
    let n = order;
    let (t_diamond, t_star) = solve_t_diamond(n);
    let x = PowerSeries::x(n);
    let s2 = t_star.substitute_power(2)?;
    let s4 = t_star.substitute_power(4)?;
    let star2 = t_star.mul(&t_star)?;
    let star4 = star2.mul(&star2)?;
    let star2_s2 = star2.mul(&s2)?;
    let s2_sq = s2.mul(&s2)?;

    let t_square = x.mul(
        &star4
            .scale_ratio(1, 8)
            .add(&star2_s2.scale_ratio(1, 4))?
            .add(&s2_sq.scale_ratio(3, 8))?
            .add(&s4.scale_ratio(1, 4))?,
    )?;
    let t_triangle = x.mul(
        &star4
            .scale_ratio(1, 4)
            .add(&star2_s2.scale_ratio(1, 2))?
            .add(&s2_sq.scale_ratio(1, 4))?,
    )?;
    // the same count written as x * MSET2(T_star)^2
    let pair = t_star.mset2();
    let t_sq_to_tri = x.mul(&pair.mul(&pair)?)?;
    let t_circ = t_star.sub(&PowerSeries::one(n))?;
    let t_tri_to_circ = x.mul(&star4.scale_ratio(1, 2).add(&star2_s2.scale_ratio(1, 2))?)?;
    let t = t_square
        .add(&t_triangle)?
        .add(&t_circ)?
        .sub(&t_sq_to_tri)?
        .sub(&t_tri_to_circ)?;
    let g = t.mset()?;
    Ok(SeriesSystemSolution {
        t_diamond,
        t_star,
        t_circ,
        t_square,
        t_triangle,
        t_sq_to_tri,
        t_tri_to_circ,
        t,
        g,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn head(s: &PowerSeries, k: usize) -> Vec<i64> {
        use num_traits::ToPrimitive;
        s.coeffs()[..k]
            .iter()
            .map(|c| c.to_integer().to_i64().unwrap())
            .collect()
    }

    #[test]
    fn leaf_rooted_counts() {
        let (td, ts) = solve_t_diamond(10);
        assert_eq!(
            head(&td, 11),
            vec![0, 1, 2, 8, 32, 146, 690, 3438, 17602, 92486, 495008]
        );
        assert_eq!(ts.coeff(0), &num_rational::BigRational::one());
    }

    #[test]
    fn first_coefficients() {
        let s = solve_system(12).unwrap();
        assert_eq!(
            head(&s.t, 11),
            vec![0, 1, 1, 3, 7, 25, 88, 366, 1583, 7336, 34982]
        );
        assert_eq!(
            head(&s.g, 11),
            vec![1, 1, 2, 5, 13, 41, 143, 558, 2346, 10546, 49397]
        );
        assert_eq!(s.t_sq_to_tri, s.t_triangle);
    }
}
