//! Quadratic cyclotomic rings `Z[ζ]` and their fraction fields.
//!
//! Three rings are supported, distinguished by [`RingId`]:
//!
//! - `RationalInt`: `ζ = 1`. Elements are canonicalized to `x + 0·ζ`. When used
//!   as the coordinate ring of an elliptic curve the second period is a
//!   generic `τ` with endomorphism ring `Z`.
//! - `Gaussian`: `ζ = i`, `ζ² = -1`.
//! - `Eisenstein`: `ζ = ζ₃`, `ζ² = -1 - ζ`. The sixth root `ζ₆` is `1 + ζ₃`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RingId {
    #[serde(rename = "integer")]
    RationalInt,
    Gaussian,
    Eisenstein,
}

impl RingId {
    pub const ALL: [RingId; 3] = [RingId::RationalInt, RingId::Gaussian, RingId::Eisenstein];

    pub fn name(self) -> &'static str {
        match self {
            RingId::RationalInt => "integer",
            RingId::Gaussian => "gaussian",
            RingId::Eisenstein => "eisenstein",
        }
    }

    /// Number of units of the ring.
    pub fn unit_count(self) -> usize {
        match self {
            RingId::RationalInt => 2,
            RingId::Gaussian => 4,
            RingId::Eisenstein => 6,
        }
    }

    pub fn units(self) -> Vec<RingElem> {
        let mut out = Vec::new();
        for x in -1i64..=1 {
            for y in -1i64..=1 {
                let e = RingElem::from_i64(self, x, y);
                if e.is_unit() && !out.contains(&e) {
                    out.push(e);
                }
            }
        }
        out
    }
}

impl fmt::Display for RingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub(crate) fn check_same(a: RingId, b: RingId) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::RingMismatch(a, b))
    }
}

/// An element `x + y·ζ` of `Z[ζ]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElem {
    ring: RingId,
    x: BigInt,
    y: BigInt,
}

impl RingElem {
    pub fn new(ring: RingId, x: BigInt, y: BigInt) -> Self {
        match ring {
            RingId::RationalInt => RingElem { ring, x: x + y, y: BigInt::zero() },
            _ => RingElem { ring, x, y },
        }
    }

    pub fn from_i64(ring: RingId, x: i64, y: i64) -> Self {
        Self::new(ring, BigInt::from(x), BigInt::from(y))
    }

    pub fn zero(ring: RingId) -> Self {
        Self::from_i64(ring, 0, 0)
    }

    pub fn one(ring: RingId) -> Self {
        Self::from_i64(ring, 1, 0)
    }

    /// The generator `ζ` (equal to `1` in the rational integers).
    pub fn zeta(ring: RingId) -> Self {
        Self::from_i64(ring, 0, 1)
    }

    /// `ζ₆ = 1 + ζ₃`, only meaningful in the Eisenstein integers.
    pub fn zeta6() -> Self {
        Self::from_i64(RingId::Eisenstein, 1, 1)
    }

    pub fn ring(&self) -> RingId {
        self.ring
    }

    pub fn x(&self) -> &BigInt {
        &self.x
    }

    pub fn y(&self) -> &BigInt {
        &self.y
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.x.is_one() && self.y.is_zero()
    }

    pub fn try_add(&self, other: &RingElem) -> Result<RingElem> {
        check_same(self.ring, other.ring)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &RingElem) -> Result<RingElem> {
        check_same(self.ring, other.ring)?;
        Ok(self.add_unchecked(&other.neg()))
    }

    pub fn try_mul(&self, other: &RingElem) -> Result<RingElem> {
        check_same(self.ring, other.ring)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &RingElem) -> RingElem {
        RingElem::new(self.ring, &self.x + &other.x, &self.y + &other.y)
    }

    pub(crate) fn sub_unchecked(&self, other: &RingElem) -> RingElem {
        RingElem::new(self.ring, &self.x - &other.x, &self.y - &other.y)
    }

    pub(crate) fn mul_unchecked(&self, other: &RingElem) -> RingElem {
        let (a, b, c, d) = (&self.x, &self.y, &other.x, &other.y);
        let (x, y) = match self.ring {
            RingId::RationalInt => (a * c, BigInt::zero()),
            RingId::Gaussian => (a * c - b * d, a * d + b * c),
            RingId::Eisenstein => {
                let bd = b * d;
                (a * c - &bd, a * d + b * c - bd)
            }
        };
        RingElem::new(self.ring, x, y)
    }

    pub fn neg(&self) -> RingElem {
        RingElem::new(self.ring, -&self.x, -&self.y)
    }

    /// Complex conjugate.
    pub fn conj(&self) -> RingElem {
        match self.ring {
            RingId::RationalInt => self.clone(),
            RingId::Gaussian => RingElem::new(self.ring, self.x.clone(), -&self.y),
            // conj(ζ₃) = ζ₃² = -1 - ζ₃
            RingId::Eisenstein => RingElem::new(self.ring, &self.x - &self.y, -&self.y),
        }
    }

    /// `e · conj(e)`, a non-negative integer.
    pub fn norm(&self) -> BigInt {
        let (a, b) = (&self.x, &self.y);
        match self.ring {
            RingId::RationalInt => a * a,
            RingId::Gaussian => a * a + b * b,
            RingId::Eisenstein => a * a - a * b + b * b,
        }
    }

    pub fn is_unit(&self) -> bool {
        self.norm().is_one()
    }

    pub fn pow(&self, exp: u32) -> RingElem {
        let mut acc = RingElem::one(self.ring);
        for _ in 0..exp {
            acc = acc.mul_unchecked(self);
        }
        acc
    }

    /// Matrix of multiplication by `self` on the basis `{1, ζ}`.
    pub fn regular_representation(&self) -> IntMatrix {
        let (a, b) = (self.x.clone(), self.y.clone());
        let (c01, c11) = match self.ring {
            RingId::RationalInt => (BigInt::zero(), a.clone()),
            RingId::Gaussian => (-&b, a.clone()),
            RingId::Eisenstein => (-&b, &a - &b),
        };
        IntMatrix::from_vec(2, 2, vec![a, c01, b, c11])
    }
}

fn write_linear<T: fmt::Display + Zero + One + Signed + PartialEq>(
    f: &mut fmt::Formatter<'_>,
    x: &T,
    y: &T,
) -> fmt::Result {
    if y.is_zero() {
        return write!(f, "{x}");
    }
    let coeff = |f: &mut fmt::Formatter<'_>, c: &T| -> fmt::Result {
        if c.abs().is_one() {
            write!(f, "z")
        } else {
            write!(f, "{}*z", c.abs())
        }
    };
    if x.is_zero() {
        if y.is_negative() {
            write!(f, "-")?;
        }
        return coeff(f, y);
    }
    write!(f, "{x}")?;
    write!(f, "{}", if y.is_negative() { "-" } else { "+" })?;
    coeff(f, y)
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear(f, &self.x, &self.y)
    }
}

/// An element `x + y·ζ` with rational coordinates; for torus points these are
/// coordinates in the period basis `{1, ζ}` (or `{1, τ}` for `RationalInt`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElem {
    ring: RingId,
    x: BigRational,
    y: BigRational,
}

impl FieldElem {
    pub fn new(ring: RingId, x: BigRational, y: BigRational) -> Self {
        FieldElem { ring, x, y }
    }

    pub fn zero(ring: RingId) -> Self {
        Self::new(ring, BigRational::zero(), BigRational::zero())
    }

    pub fn from_ring(e: &RingElem) -> Self {
        Self::new(
            e.ring,
            BigRational::from_integer(e.x.clone()),
            BigRational::from_integer(e.y.clone()),
        )
    }

    pub fn ring(&self) -> RingId {
        self.ring
    }

    pub fn x(&self) -> &BigRational {
        &self.x
    }

    pub fn y(&self) -> &BigRational {
        &self.y
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn try_add(&self, other: &FieldElem) -> Result<FieldElem> {
        check_same(self.ring, other.ring)?;
        Ok(self.add_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &FieldElem) -> FieldElem {
        FieldElem::new(self.ring, &self.x + &other.x, &self.y + &other.y)
    }

    pub fn neg(&self) -> FieldElem {
        FieldElem::new(self.ring, -&self.x, -&self.y)
    }

    pub fn scale_int(&self, k: &BigInt) -> FieldElem {
        let k = BigRational::from_integer(k.clone());
        FieldElem::new(self.ring, &self.x * &k, &self.y * &k)
    }

    /// Multiplication by a ring element, i.e. the action of an endomorphism
    /// of the elliptic curve on a point.
    pub fn try_scale(&self, e: &RingElem) -> Result<FieldElem> {
        check_same(self.ring, e.ring)?;
        Ok(self.scale_unchecked(e))
    }

    pub(crate) fn scale_unchecked(&self, e: &RingElem) -> FieldElem {
        let a = BigRational::from_integer(e.x.clone());
        let b = BigRational::from_integer(e.y.clone());
        let (p, q) = (&self.x, &self.y);
        let (x, y) = match self.ring {
            RingId::RationalInt => (&a * p, &a * q),
            RingId::Gaussian => (&a * p - &b * q, &a * q + &b * p),
            RingId::Eisenstein => {
                let bq = &b * q;
                (&a * p - &bq, &a * q + &b * p - bq)
            }
        };
        FieldElem::new(self.ring, x, y)
    }

    /// Representative with both coordinates in `[0, 1)`.
    pub fn reduce_mod_lattice(&self) -> FieldElem {
        FieldElem::new(self.ring, frac(&self.x), frac(&self.y))
    }

    /// Least common multiple of the coordinate denominators.
    pub fn level(&self) -> BigInt {
        self.x.denom().lcm(self.y.denom())
    }
}

pub(crate) fn frac(q: &BigRational) -> BigRational {
    q - q.floor()
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_linear(f, &self.x, &self.y)
    }
}
