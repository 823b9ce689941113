//! Exact integer sequences and truncated power series.
//!
//! Everything here is arbitrary precision; there is no floating point.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `binom(n, k)`, exact.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // acc * (n - i) is divisible by i + 1 at every step
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Catalan number `binom(2n, n) / (n + 1)`.
pub fn catalan(n: u64) -> BigUint {
    binomial(2 * n, n) / (n + 1)
}

/// Motzkin numbers `M_0..=M_n` from
/// `M_{k+1} = M_k + Σ_{j=0}^{k-1} M_j M_{k-1-j}`.
pub fn motzkin_table(n: usize) -> Vec<BigUint> {
    let mut m = vec![BigUint::one()];
    for k in 0..n {
        let mut next = m[k].clone();
        for j in 0..k {
            next += &m[j] * &m[k - 1 - j];
        }
        m.push(next);
    }
    m
}

pub fn motzkin(n: usize) -> BigUint {
    motzkin_table(n).pop().expect("table has n + 1 entries")
}

/// `binom(2k, k) · binom(n, 2k) / (k + 1)`, zero when `2k > n`.
///
/// Panics if the division is inexact, which would mean a transcription bug.
pub fn a055151(n: u64, k: u64) -> BigUint {
    if 2 * k > n {
        return BigUint::zero();
    }
    let num = binomial(2 * k, k) * binomial(n, 2 * k);
    let d = BigUint::from(k + 1);
    assert!((&num % &d).is_zero(), "A055151({n}, {k}) not integral");
    num / d
}

/// A power series truncated after `z^order`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntSeries {
    coeffs: Vec<BigInt>,
}

impl IntSeries {
    pub fn zero(order: usize) -> Self {
        IntSeries {
            coeffs: vec![BigInt::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::monomial(order, 0, BigInt::one())
    }

    /// `c · z^exp`, truncated (to zero) if `exp > order`.
    pub fn monomial(order: usize, exp: usize, c: impl Into<BigInt>) -> Self {
        let mut s = Self::zero(order);
        if exp <= order {
            s.coeffs[exp] = c.into();
        }
        s
    }

    /// Takes at most `order + 1` coefficients; missing ones are zero.
    pub fn from_coeffs<T: Into<BigInt>>(order: usize, coeffs: impl IntoIterator<Item = T>) -> Result<Self> {
        let mut s = Self::zero(order);
        for (i, c) in coeffs.into_iter().enumerate() {
            if i > order {
                return Err(Error::OrderMismatch(i, order));
            }
            s.coeffs[i] = c.into();
        }
        Ok(s)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    fn same_order(&self, other: &IntSeries) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        Ok(())
    }

    pub fn add(&self, other: &IntSeries) -> Result<IntSeries> {
        self.same_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(IntSeries { coeffs })
    }

    pub fn sub(&self, other: &IntSeries) -> Result<IntSeries> {
        self.same_order(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(IntSeries { coeffs })
    }

    pub fn mul(&self, other: &IntSeries) -> Result<IntSeries> {
        self.same_order(other)?;
        let n = self.order();
        let mut out = Self::zero(n);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                out.coeffs[i + j] += a * b;
            }
        }
        Ok(out)
    }

    /// `1 / (1 - self)`; requires a zero constant term.
    pub fn reciprocal_one_minus(&self) -> Result<IntSeries> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonzeroConstantTerm);
        }
        // r = 1 + s·r, solved coefficient by coefficient
        let n = self.order();
        let mut r = Self::one(n);
        for k in 1..=n {
            let mut c = BigInt::zero();
            for j in 1..=k {
                c += &self.coeffs[j] * &r.coeffs[k - j];
            }
            r.coeffs[k] = c;
        }
        Ok(r)
    }
}

impl fmt::Display for IntSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}z")?,
                _ => write!(f, "{c}z^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

fn catalan_int(n: u64) -> BigInt {
    BigInt::from(catalan(n))
}

/// `H_t(z) = Σ h_t(n) z^n` from `h(n) = 2h(n-1) + Σ_{j=2}^{t} C_{j-1} h(n-j)`,
/// `h(1) = 1`.
pub fn h_series(t: usize, order: usize) -> IntSeries {
    let mut h = IntSeries::zero(order);
    for n in 1..=order {
        if n == 1 {
            h.coeffs[1] = BigInt::one();
            continue;
        }
        let mut c = BigInt::from(2) * &h.coeffs[n - 1];
        for j in 2..=t.min(n - 1) {
            c += catalan_int(j as u64 - 1) * &h.coeffs[n - j];
        }
        h.coeffs[n] = c;
    }
    h
}

/// `z / (1 - 2z - Σ_{j=2}^{t} C_{j-1} z^j)` by series inversion.
pub fn h_series_rational(t: usize, order: usize) -> IntSeries {
    let mut denom = IntSeries::monomial(order, 1, 2);
    for j in 2..=t {
        denom = denom
            .add(&IntSeries::monomial(order, j, catalan_int(j as u64 - 1)))
            .expect("same order");
    }
    IntSeries::monomial(order, 1, 1)
        .mul(&denom.reciprocal_one_minus().expect("zero constant term"))
        .expect("same order")
}

/// `G_t(z)` from `g(1) = 1`, `g(m) = Σ_{j=1}^{t} C_{j-1} g(m-j)`.
pub fn g_series(t: usize, order: usize) -> IntSeries {
    let mut g = IntSeries::zero(order);
    for m in 1..=order {
        if m == 1 {
            g.coeffs[1] = BigInt::one();
            continue;
        }
        let mut c = BigInt::zero();
        for j in 1..=t.min(m - 1) {
            c += catalan_int(j as u64 - 1) * &g.coeffs[m - j];
        }
        g.coeffs[m] = c;
    }
    g
}

/// `z / (1 - Σ_{n=1}^{t} C_{n-1} z^n)` by series inversion.
pub fn g_series_rational(t: usize, order: usize) -> IntSeries {
    let mut denom = IntSeries::zero(order);
    for n in 1..=t {
        denom = denom
            .add(&IntSeries::monomial(order, n, catalan_int(n as u64 - 1)))
            .expect("same order");
    }
    IntSeries::monomial(order, 1, 1)
        .mul(&denom.reciprocal_one_minus().expect("zero constant term"))
        .expect("same order")
}

/// `Σ_{n=1}^{t-1} C_n z^n`.
pub fn h_tilde(t: usize, order: usize) -> IntSeries {
    let mut s = IntSeries::zero(order);
    for n in 1..t.min(order + 1) {
        s.coeffs[n] = catalan_int(n as u64);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(s: &IntSeries) -> Vec<i64> {
        s.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn catalan_values() {
        assert_eq!(catalan(0), 1u32.into());
        assert_eq!(catalan(3), 5u32.into());
        assert_eq!(catalan(11), 58786u32.into());
        // C_{n+1} = Σ C_i C_{n-i}
        for n in 0..20u64 {
            let conv: BigUint = (0..=n).map(|i| catalan(i) * catalan(n - i)).sum();
            assert_eq!(catalan(n + 1), conv);
        }
    }

    #[test]
    fn motzkin_values() {
        assert_eq!(motzkin(0), 1u32.into());
        assert_eq!(motzkin(4), 9u32.into());
        assert_eq!(motzkin(10), 2188u32.into());
        let table: Vec<u64> = motzkin_table(10).iter().map(|m| u64::try_from(m).unwrap()).collect();
        assert_eq!(table, vec![1, 1, 2, 4, 9, 21, 51, 127, 323, 835, 2188]);
    }

    #[test]
    fn a055151_values() {
        assert_eq!(a055151(3, 1), 3u32.into());
        for n in 0..10 {
            assert_eq!(a055151(n, 0), 1u32.into());
        }
        assert_eq!(a055151(3, 2), BigUint::zero());
        for n in 0..=12u64 {
            let row: BigUint = (0..=n / 2).map(|k| a055151(n, k)).sum();
            assert_eq!(row, motzkin(n as usize));
        }
    }

    #[test]
    fn h_series_examples() {
        assert_eq!(ints(&h_series(1, 6)), vec![0, 1, 2, 4, 8, 16, 32]);
        assert_eq!(ints(&h_series(2, 6)), vec![0, 1, 2, 5, 12, 29, 70]);
        for t in 1..=6 {
            assert_eq!(h_series(t, 25), h_series_rational(t, 25));
            assert_eq!(g_series(t, 25), g_series_rational(t, 25));
            assert_eq!(g_series(t, 25).coeff(1), &BigInt::one());
        }
        for n in 1..=11 {
            assert_eq!(h_series(n + 3, 11).coeff(n), &BigInt::from(catalan(n as u64)));
            assert_eq!(h_series(n, 11).coeff(n), &BigInt::from(catalan(n as u64)));
        }
    }

    #[test]
    fn generating_function_identities() {
        let order = 20;
        for t in 1..=5 {
            let h = h_series(t, order);
            let g = g_series(t, order);
            let one = IntSeries::one(order);
            assert_eq!(one.add(&h).unwrap(), g.reciprocal_one_minus().unwrap());
            let z = IntSeries::monomial(order, 1, 1);
            let rhs = z
                .mul(&one.add(&h_tilde(t, order)).unwrap().mul(&g).unwrap().add(&one).unwrap())
                .unwrap();
            assert_eq!(g, rhs);
        }
    }

    #[test]
    fn arithmetic_edges() {
        let s = IntSeries::from_coeffs(4, [1, 2, 3]).unwrap();
        assert_eq!(s.add(&IntSeries::zero(4)).unwrap(), s);
        let geo = IntSeries::monomial(5, 1, 1).reciprocal_one_minus().unwrap();
        assert_eq!(ints(&geo), vec![1; 6]);
        assert_eq!(s.reciprocal_one_minus(), Err(Error::NonzeroConstantTerm));
        assert_eq!(s.add(&IntSeries::zero(3)), Err(Error::OrderMismatch(4, 3)));
        assert!(IntSeries::from_coeffs(1, [1, 2, 3]).is_err());
        assert_eq!(IntSeries::monomial(2, 1, 3).to_string(), "3z + O(z^3)");
    }

    #[test]
    fn coefficients_exceed_u64() {
        let h = h_series(6, 60);
        assert!(u64::try_from(h.coeff(60)).is_err());
        assert_eq!(h, h_series_rational(6, 60));
    }

    proptest! {
        #[test]
        fn mul_matches_naive_convolution(
            a in proptest::collection::vec(-50i64..50, 8),
            b in proptest::collection::vec(-50i64..50, 8),
        ) {
            let sa = IntSeries::from_coeffs(7, a.clone()).unwrap();
            let sb = IntSeries::from_coeffs(7, b.clone()).unwrap();
            let got = ints(&sa.mul(&sb).unwrap());
            for k in 0..8 {
                let want: i64 = (0..=k).map(|i| a[i] * b[k - i]).sum();
                prop_assert_eq!(got[k], want);
            }
        }

        #[test]
        fn reciprocal_inverts(a in proptest::collection::vec(-9i64..9, 7)) {
            let mut c = vec![0i64];
            c.extend(a);
            let s = IntSeries::from_coeffs(7, c).unwrap();
            let r = s.reciprocal_one_minus().unwrap();
            let one_minus = IntSeries::one(7).sub(&s).unwrap();
            prop_assert_eq!(one_minus.mul(&r).unwrap(), IntSeries::one(7));
        }
    }
}
