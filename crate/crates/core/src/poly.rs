//! Dense univariate polynomials with exact rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// `C(n, k)` with the convention that it vanishes unless `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

/// `(-1)^e` for any integer exponent.
pub fn sign(e: i64) -> BigInt {
    if e.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// A polynomial in `x`; `coeffs[i]` multiplies `x^i`. Trailing zeros are
/// always trimmed, so the zero polynomial has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::from_coeffs(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.push(c);
        Poly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        Poly::from_coeffs(
            coeffs
                .into_iter()
                .map(|c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    /// `(x - 1)^n`, expanded by the binomial theorem.
    pub fn x_minus_one_pow(n: usize) -> Self {
        let n = n as i64;
        Poly::from_ints((0..=n).map(|i| sign(n - i) * binomial(n, i)))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `x^k`; zero outside the stored range.
    pub fn coeff(&self, k: i64) -> BigRational {
        usize::try_from(k)
            .ok()
            .and_then(|k| self.coeffs.get(k))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Poly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn scale_int(&self, c: &BigInt) -> Self {
        self.scale(&BigRational::from_integer(c.clone()))
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// `x^n * p(1/x)`. Panics if `deg p > n`, since the result would not be
    /// a polynomial.
    pub fn reflect(&self, n: usize) -> Self {
        if let Some(deg) = self.degree() {
            assert!(deg <= n, "cannot reflect degree {deg} through x^{n}");
        }
        Poly::from_coeffs((0..=n as i64).map(|k| self.coeff(n as i64 - k)).collect())
    }

    /// Keeps the coefficients of `x^0 .. x^m`.
    pub fn truncate(&self, m: usize) -> Self {
        Poly::from_coeffs(self.coeffs.iter().take(m + 1).cloned().collect())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Integer coefficients, lowest degree first, or `None` if some
    /// coefficient is a proper fraction.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Integer coefficient of `x^k`; panics on a fractional coefficient.
    pub fn int_coeff(&self, k: i64) -> BigInt {
        let c = self.coeff(k);
        assert!(c.is_integer(), "coefficient of x^{k} is not an integer: {c}");
        c.to_integer()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let unit = magnitude.is_one();
            match (k, unit) {
                (0, _) => write!(f, "{magnitude}")?,
                (1, true) => f.write_str("x")?,
                (1, false) => write!(f, "{magnitude}x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{magnitude}x^{k}")?,
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n as i64).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n as i64).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::zero(), |acc, p| acc + p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(p: &Poly) -> Vec<i64> {
        p.to_integers()
            .unwrap()
            .into_iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn binomial_convention() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(5, -1), BigInt::zero());
        assert_eq!(binomial(5, 6), BigInt::zero());
        assert_eq!(binomial(-1, 0), BigInt::zero());
        assert_eq!(binomial(0, 0), BigInt::one());
    }

    #[test]
    fn x_minus_one_cubed() {
        assert_eq!(ints(&Poly::x_minus_one_pow(3)), vec![-1, 3, -3, 1]);
        assert_eq!(Poly::x_minus_one_pow(0), Poly::one());
    }

    #[test]
    fn reflect_reverses_into_a_window() {
        let p = Poly::from_ints([1, 2]);
        assert_eq!(ints(&p.reflect(3)), vec![0, 0, 2, 1]);
    }

    #[test]
    fn trimming_and_display() {
        let p = Poly::from_ints([0, -1, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert_eq!(p.to_string(), "-x");
        assert_eq!(Poly::from_ints([3, 0, 1]).to_string(), "x^2 + 3");
        assert_eq!(Poly::zero().to_string(), "0");
    }

    proptest! {
        #[test]
        fn product_evaluates_pointwise(a in prop::collection::vec(-5i64..5, 0..5),
                                       b in prop::collection::vec(-5i64..5, 0..5),
                                       x in -3i64..3) {
            let eval = |p: &Poly| -> BigRational {
                p.coeffs().iter().rev().fold(BigRational::zero(), |acc, c| {
                    acc * BigRational::from_integer(BigInt::from(x)) + c
                })
            };
            let (pa, pb) = (Poly::from_ints(a), Poly::from_ints(b));
            prop_assert_eq!(eval(&(&pa * &pb)), eval(&pa) * eval(&pb));
            prop_assert_eq!(eval(&(&pa - &pb)), eval(&pa) - eval(&pb));
        }

        #[test]
        fn reflect_is_an_involution(a in prop::collection::vec(-5i64..5, 1..6)) {
            let p = Poly::from_ints(a.clone());
            let n = a.len() - 1;
            prop_assert_eq!(p.reflect(n).reflect(n), p);
        }
    }
}
