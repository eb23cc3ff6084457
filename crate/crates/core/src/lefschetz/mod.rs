//! Topological Lefschetz numbers of natural automorphisms of `K_n(A)`.
//!
//! For a torus automorphism with linear part acting on `H¹` by `M`,
//!
//! ```text
//! L(ψ) · L(ψ⟦n⟧) = [tⁿ] Σ_{χ ∈ Ĝ^h} F(t^{|χ|}),
//! F(t) = Π_{ν≥1} exp( Σ_{s≥1} det(I − M^s)/s · t^{νs} ),
//! ```
//!
//! where `Ĝ` is the character group of the `n`-torsion. Grouping characters
//! by order `d` turns the right side into `Σ_{d|n} N_d · [t^{n/d}] F(t)`.
//! The determinant `det(I − M^s)` equals the super trace of `(h^*)^s` on the
//! cohomology of the torus; it is unchanged under `M ↦ M⁻¹` for finite-order
//! `M`, so `M` itself is used in place of its inverse.

mod series;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

pub use series::TruncatedSeries;

use crate::error::{Error, Result};
use crate::exactnum::{smith_normal_form, IntMatrix, RatMatrix};
use crate::torus::TorusAuto;

/// Powers of `M` examined when checking that it has finite order.
pub const FINITE_ORDER_BOUND: u32 = 24;

/// `det(I − M^s)`
pub fn det_one_minus_power(m: &IntMatrix, s: u32) -> BigInt {
    assert!(m.is_square(), "det(I - M^s) needs a square matrix");
    IntMatrix::identity(m.rows()).sub(&m.pow(s)).det()
}

/// `L(h) = det(I − M)`; the cohomology of a torus is the exterior algebra on `H¹`.
pub fn lefschetz_torus(m: &IntMatrix) -> BigInt {
    det_one_minus_power(m, 1)
}

fn check_finite_order(m: &IntMatrix) -> Result<u32> {
    m.multiplicative_order(FINITE_ORDER_BOUND).ok_or(Error::NonFiniteOrder { bound: FINITE_ORDER_BOUND })
}

/// `F(t)` through degree `truncation`.
pub fn kummer_series(m: &IntMatrix, truncation: usize) -> Result<TruncatedSeries> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch { expected: m.rows(), found: m.cols() });
    }
    check_finite_order(m)?;
    // log F = Σ_{k≥1} t^k Σ_{s | k} det(I − M^s)/s
    let dets: Vec<BigInt> = (1..=truncation as u32).map(|s| det_one_minus_power(m, s)).collect();
    let mut log_coeffs = vec![BigRational::zero(); truncation + 1];
    for (s_idx, det) in dets.iter().enumerate() {
        let s = s_idx + 1;
        if det.is_zero() {
            continue;
        }
        let term = BigRational::new(det.clone(), BigInt::from(s));
        for k in (s..=truncation).step_by(s) {
            log_coeffs[k] += &term;
        }
    }
    let f = TruncatedSeries::new(log_coeffs, truncation).exp()?;
    if let Some(bad) = f.coeffs().iter().find(|c| !c.is_integer()) {
        return Err(Error::NonIntegralSeries(bad.to_string()));
    }
    Ok(f)
}

/// Number of `h`-invariant characters of the `n`-torsion, by exact order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterCounts {
    pub n: u32,
    /// `d ↦ N_d` over the divisors `d` of `n` with `N_d > 0`.
    pub by_order: BTreeMap<u32, u64>,
}

impl CharacterCounts {
    pub fn total(&self) -> u64 {
        self.by_order.values().sum()
    }

    pub fn get(&self, d: u32) -> u64 {
        self.by_order.get(&d).copied().unwrap_or(0)
    }
}

pub(crate) fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn mobius(n: u32) -> i64 {
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// `N_d = #{χ ∈ (Z/n)^k : (Mᵀ − I)χ ≡ 0, ord χ = d}`.
///
/// With elementary divisors `e_i` of `Mᵀ − I`, the invariant characters
/// killed by `d` number `Π_i gcd(e_i, d)`; Möbius inversion over the divisor
/// lattice gives the counts by exact order.
pub fn invariant_character_counts(m: &IntMatrix, n: u32) -> Result<CharacterCounts> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("character counts need n >= 2, got {n}")));
    }
    if !m.is_square() {
        return Err(Error::DimensionMismatch { expected: m.rows(), found: m.cols() });
    }
    let a = m.transpose().sub(&IntMatrix::identity(m.rows()));
    let snf = smith_normal_form(&a);
    let mut elementary: Vec<BigInt> = snf.diagonal();
    elementary.resize(m.rows(), BigInt::zero());

    let killed_by = |d: u32| -> u64 {
        let d = BigInt::from(d);
        elementary.iter().map(|e| e.gcd(&d).to_u64().expect("gcd bounded by d")).product()
    };
    let by_order = divisors(n)
        .into_iter()
        .map(|d| {
            let count: i64 = divisors(d).into_iter().map(|e| mobius(d / e) * killed_by(e) as i64).sum();
            (d, count as u64)
        })
        .filter(|&(_, count)| count > 0)
        .collect();
    Ok(CharacterCounts { n, by_order })
}

/// Every ingredient of the Lefschetz computation on `K_n(A)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KummerLefschetz {
    pub n: u32,
    #[serde(serialize_with = "crate::serial::bigint")]
    pub torus_lefschetz: BigInt,
    pub series: TruncatedSeries,
    pub characters: CharacterCounts,
    /// `Σ_{d|n} N_d · [t^{n/d}] F`
    #[serde(serialize_with = "crate::serial::bigint")]
    pub weighted_sum: BigInt,
    #[serde(serialize_with = "crate::serial::bigint")]
    pub value: BigInt,
}

pub fn lefschetz_kummer_detailed(m: &IntMatrix, n: u32) -> Result<KummerLefschetz> {
    let torus_lefschetz = lefschetz_torus(m);
    if torus_lefschetz.is_zero() {
        return Err(Error::Degenerate);
    }
    let series = kummer_series(m, n as usize)?;
    let characters = invariant_character_counts(m, n)?;
    let weighted_sum: BigInt = characters
        .by_order
        .iter()
        .map(|(&d, &count)| BigInt::from(count) * series.coeff((n / d) as usize).to_integer())
        .sum();
    let (value, rem) = weighted_sum.div_rem(&torus_lefschetz);
    if !rem.is_zero() {
        return Err(Error::NonIntegral {
            numerator: weighted_sum.to_string(),
            denominator: torus_lefschetz.to_string(),
        });
    }
    Ok(KummerLefschetz { n, torus_lefschetz, series, characters, weighted_sum, value })
}

/// `L(ψ⟦n⟧)` from the linear action `M` on `H¹(A)`.
pub fn lefschetz_kummer(m: &IntMatrix, n: u32) -> Result<BigInt> {
    lefschetz_kummer_detailed(m, n).map(|r| r.value)
}

/// `L(ψ⟦n⟧)`; the translation part does not enter.
pub fn lefschetz_kummer_auto(psi: &TorusAuto, n: u32) -> Result<BigInt> {
    lefschetz_kummer(&psi.induced_h1_matrix(), n)
}

/// Super trace of `Sym*(h t)` on a super vector space with even part acted
/// on by `even` and odd part by `odd`:
/// `exp( Σ_{s≥1} (tr even^s − tr odd^s)/s · t^s )`.
pub fn supertrace_sym_series(even: &RatMatrix, odd: &RatMatrix, truncation: usize) -> Result<TruncatedSeries> {
    if truncation == 0 {
        return Err(Error::InvalidArgument("truncation must be at least 1".into()));
    }
    let mut coeffs = vec![BigRational::zero(); truncation + 1];
    let (mut pe, mut po) = (even.clone(), odd.clone());
    for (s, c) in coeffs.iter_mut().enumerate().skip(1) {
        *c = (pe.trace() - po.trace()) / BigRational::from_integer(BigInt::from(s));
        pe = pe.mul(even);
        po = po.mul(odd);
    }
    TruncatedSeries::new(coeffs, truncation).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{RingElem, RingId};
    use crate::torus::{TorusEndo, TorusPoint};

    fn phi5() -> IntMatrix {
        IntMatrix::companion(&[1, 1, 1, 1])
    }

    #[test]
    fn order_five_determinants() {
        for s in [1, 2, 3, 4, 6, 7, 9] {
            assert_eq!(det_one_minus_power(&phi5(), s), BigInt::from(5), "s = {s}");
        }
        for s in [5, 10] {
            assert!(det_one_minus_power(&phi5(), s).is_zero());
        }
        for s in 1..4 {
            assert!(det_one_minus_power(&IntMatrix::identity(4), s).is_zero());
        }
    }

    #[test]
    fn order_five_series() {
        let f = kummer_series(&phi5(), 5).unwrap();
        assert_eq!(f, TruncatedSeries::from_i64(&[1, 5, 20, 65, 190, 505], 5));
    }

    #[test]
    fn identity_series_is_one() {
        assert_eq!(kummer_series(&IntMatrix::identity(4), 6).unwrap(), TruncatedSeries::one(6));
    }

    #[test]
    fn infinite_order_rejected() {
        let m = IntMatrix::from_i64(2, 2, &[2, 1, 1, 1]);
        assert!(matches!(kummer_series(&m, 3), Err(Error::NonFiniteOrder { .. })));
    }

    #[test]
    fn character_counts_examples() {
        let c = invariant_character_counts(&phi5(), 5).unwrap();
        assert_eq!(c.by_order, BTreeMap::from([(1, 1), (5, 4)]));
        let c = invariant_character_counts(&IntMatrix::identity(4), 2).unwrap();
        assert_eq!(c.by_order, BTreeMap::from([(1, 1), (2, 15)]));
        assert!(invariant_character_counts(&IntMatrix::identity(4), 1).is_err());
    }

    #[test]
    fn order_five_lefschetz() {
        assert_eq!(lefschetz_torus(&phi5()), BigInt::from(5));
        let r = lefschetz_kummer_detailed(&phi5(), 5).unwrap();
        assert_eq!(r.weighted_sum, BigInt::from(525));
        assert_eq!(r.value, BigInt::from(105));
    }

    #[test]
    fn minus_identity_on_kummer_surface() {
        let m = IntMatrix::identity(4).scale(&BigInt::from(-1));
        assert_eq!(lefschetz_torus(&m), BigInt::from(16));
        // F = Π ((1+t^ν)/(1−t^ν))^8 gives [t]F = 16, [t²]F = 144; N = {1:1, 2:15}
        let r = lefschetz_kummer_detailed(&m, 2).unwrap();
        assert_eq!(r.series.integer_coeffs().unwrap(), vec![1.into(), 16.into(), 144.into()]);
        assert_eq!(r.weighted_sum, BigInt::from(384));
        assert_eq!(r.value, BigInt::from(24));
    }

    #[test]
    fn eigenvalue_one_is_degenerate() {
        let ring = RingId::Eisenstein;
        let h = TorusEndo::diagonal(RingElem::zeta(ring), RingElem::one(ring)).unwrap();
        let psi = TorusAuto::new(h, TorusPoint::origin(ring)).unwrap();
        assert_eq!(lefschetz_kummer_auto(&psi, 3), Err(Error::Degenerate));
    }

    #[test]
    fn supertrace_closed_forms() {
        let even = RatMatrix::from_i64(1, &[2]);
        let s = supertrace_sym_series(&even, &RatMatrix::empty(), 3).unwrap();
        assert_eq!(s, TruncatedSeries::from_i64(&[1, 2, 4, 8], 3));
        let odd = RatMatrix::from_i64(1, &[3]);
        let s = supertrace_sym_series(&RatMatrix::empty(), &odd, 3).unwrap();
        assert_eq!(s, TruncatedSeries::from_i64(&[1, -3, 0, 0], 3));
        let m = RatMatrix::from_i64(2, &[1, -2, 3, 0]);
        assert_eq!(supertrace_sym_series(&m, &m, 5).unwrap(), TruncatedSeries::one(5));
    }

    #[test]
    fn mobius_values() {
        let got: Vec<i64> = (1..=12).map(mobius).collect();
        assert_eq!(got, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]);
    }
}
