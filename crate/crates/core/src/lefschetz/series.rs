use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Power series in `t` with rational coefficients, truncated after `t^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigRational>,
}

impl TruncatedSeries {
    /// Series with the given leading coefficients, padded with zeros or cut
    /// down to degree `truncation`.
    pub fn new(mut coeffs: Vec<BigRational>, truncation: usize) -> Self {
        coeffs.resize(truncation + 1, BigRational::zero());
        TruncatedSeries { coeffs }
    }

    pub fn from_i64(coeffs: &[i64], truncation: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect(), truncation)
    }

    pub fn zero(truncation: usize) -> Self {
        Self::new(Vec::new(), truncation)
    }

    pub fn one(truncation: usize) -> Self {
        Self::new(vec![BigRational::one()], truncation)
    }

    /// `c · t^k`
    pub fn monomial(c: BigRational, k: usize, truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        if k <= truncation {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(BigRational::is_integer)
    }

    /// Coefficients as integers, if they all are.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }

    fn check_same_truncation(&self, other: &Self) -> Result<()> {
        if self.truncation() == other.truncation() {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: self.truncation(), found: other.truncation() })
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_truncation(other)?;
        Ok(TruncatedSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_truncation(other)?;
        Ok(TruncatedSeries { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() })
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        TruncatedSeries { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_truncation(other)?;
        let n = self.truncation();
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Multiplicative inverse; requires a non-zero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::InvalidArgument("series inverse needs a non-zero constant term".into()));
        }
        let n = self.truncation();
        let mut out = vec![BigRational::zero(); n + 1];
        out[0] = c0.recip();
        for k in 1..=n {
            let s: BigRational = (1..=k).map(|j| &self.coeffs[j] * &out[k - j]).sum();
            out[k] = -s / c0;
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// `exp(f)` for `f(0) = 0`, from `exp(f)' = f'·exp(f)`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::InvalidArgument("exp needs a zero constant term".into()));
        }
        let n = self.truncation();
        let mut out = vec![BigRational::zero(); n + 1];
        out[0] = BigRational::one();
        for k in 1..=n {
            let s: BigRational = (1..=k)
                .filter(|&j| !self.coeffs[j].is_zero())
                .map(|j| &self.coeffs[j] * &out[k - j] * BigRational::from_integer(j.into()))
                .sum();
            out[k] = s / BigRational::from_integer(k.into());
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// `log(f)` for `f(0) = 1`, from `log(f)' = f'/f`.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::InvalidArgument("log needs constant term one".into()));
        }
        let n = self.truncation();
        let mut out = vec![BigRational::zero(); n + 1];
        for k in 1..=n {
            let s: BigRational = (1..k)
                .map(|j| &out[j] * &self.coeffs[k - j] * BigRational::from_integer(j.into()))
                .sum();
            out[k] = &self.coeffs[k] - s / BigRational::from_integer(k.into());
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// `f(t^k)`
    pub fn substitute_power(&self, k: usize) -> Self {
        assert!(k >= 1);
        let n = self.truncation();
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if i * k > n {
                break;
            }
            out[i * k] = c.clone();
        }
        TruncatedSeries { coeffs: out }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl Serialize for TruncatedSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::serial::rationals(&self.coeffs, s)
    }
}
