//! The split abelian surface `A = E × E`, `E = C / (Z ⊕ ζZ)`, its torsion
//! points, and automorphisms `ψ = t_a ∘ h`.
//!
//! A point is stored by its four real coordinates in the period basis
//! `(1, ζ)` of each factor, reduced to `[0, 1)`. The linear part `h` is a
//! 2×2 matrix over `Z[ζ]`; on `H₁(A, Z) = Z⁴` it acts by the block matrix of
//! regular representations of its entries.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::{FieldElem, IntMatrix, RingElem, RingId};

/// Largest torsion level a stored point may have.
pub const TORSION_LEVEL_CAP: u32 = 1000;
/// Powers of a linear part examined when looking for its order.
pub const LINEAR_ORDER_BOUND: u32 = 24;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusPoint {
    ring: RingId,
    coords: [FieldElem; 2],
}

impl TorusPoint {
    pub fn new(first: FieldElem, second: FieldElem) -> Result<Self> {
        let ring = first.ring();
        if second.ring() != ring {
            return Err(Error::RingMismatch(ring, second.ring()));
        }
        let p = TorusPoint { ring, coords: [first.reduce_mod_lattice(), second.reduce_mod_lattice()] };
        let level = p.level();
        if level > BigInt::from(TORSION_LEVEL_CAP) {
            return Err(Error::TorsionLevelTooLarge { level: level.to_string(), cap: TORSION_LEVEL_CAP });
        }
        Ok(p)
    }

    pub fn origin(ring: RingId) -> Self {
        TorusPoint { ring, coords: [FieldElem::zero(ring), FieldElem::zero(ring)] }
    }

    /// From coordinates `(x₁, y₁, x₂, y₂)` meaning `(x₁ + y₁ζ, x₂ + y₂ζ)`.
    pub fn from_coords(ring: RingId, c: &[BigRational]) -> Result<Self> {
        if c.len() != 4 {
            return Err(Error::DimensionMismatch { expected: 4, found: c.len() });
        }
        Self::new(
            FieldElem::new(ring, c[0].clone(), c[1].clone()),
            FieldElem::new(ring, c[2].clone(), c[3].clone()),
        )
    }

    /// Convenience constructor from `(numerator, denominator)` pairs.
    pub fn from_fractions(ring: RingId, c: [(i64, i64); 4]) -> Result<Self> {
        let q: Vec<BigRational> = c.iter().map(|&(n, d)| BigRational::new(n.into(), d.into())).collect();
        Self::from_coords(ring, &q)
    }

    pub fn ring(&self) -> RingId {
        self.ring
    }

    pub fn coords(&self) -> &[FieldElem; 2] {
        &self.coords
    }

    pub fn to_vec(&self) -> Vec<BigRational> {
        let [a, b] = &self.coords;
        vec![a.x().clone(), a.y().clone(), b.x().clone(), b.y().clone()]
    }

    pub fn is_origin(&self) -> bool {
        self.coords.iter().all(FieldElem::is_zero)
    }

    /// Smallest `N ≥ 1` with `N·p = 0`.
    pub fn level(&self) -> BigInt {
        self.coords[0].level().lcm(&self.coords[1].level())
    }

    pub fn is_torsion_of_level(&self, n: u32) -> bool {
        self.scale_int(&BigInt::from(n)).is_origin()
    }

    pub fn try_add(&self, other: &TorusPoint) -> Result<TorusPoint> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        Ok(self.add_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &TorusPoint) -> TorusPoint {
        let [a, b] = &self.coords;
        let [c, d] = &other.coords;
        // the sum of two points below the cap stays below the cap
        TorusPoint {
            ring: self.ring,
            coords: [a.add_unchecked(c).reduce_mod_lattice(), b.add_unchecked(d).reduce_mod_lattice()],
        }
    }

    pub fn neg(&self) -> TorusPoint {
        TorusPoint {
            ring: self.ring,
            coords: [self.coords[0].neg().reduce_mod_lattice(), self.coords[1].neg().reduce_mod_lattice()],
        }
    }

    pub fn scale_int(&self, k: &BigInt) -> TorusPoint {
        TorusPoint {
            ring: self.ring,
            coords: [
                self.coords[0].scale_int(k).reduce_mod_lattice(),
                self.coords[1].scale_int(k).reduce_mod_lattice(),
            ],
        }
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.coords[0], self.coords[1])
    }
}

impl Serialize for TorusPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Group endomorphism of `A` given by a 2×2 matrix over `Z[ζ]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusEndo {
    ring: RingId,
    m: [[RingElem; 2]; 2],
}

impl TorusEndo {
    pub fn new(m: [[RingElem; 2]; 2]) -> Result<Self> {
        let ring = m[0][0].ring();
        for e in m.iter().flatten() {
            if e.ring() != ring {
                return Err(Error::RingMismatch(ring, e.ring()));
            }
        }
        Ok(TorusEndo { ring, m })
    }

    pub fn from_i64(ring: RingId, m: [[(i64, i64); 2]; 2]) -> Self {
        let e = |(x, y): (i64, i64)| RingElem::from_i64(ring, x, y);
        TorusEndo { ring, m: [[e(m[0][0]), e(m[0][1])], [e(m[1][0]), e(m[1][1])]] }
    }

    pub fn diagonal(a: RingElem, b: RingElem) -> Result<Self> {
        let ring = a.ring();
        Self::new([[a, RingElem::zero(ring)], [RingElem::zero(ring), b]])
    }

    pub fn identity(ring: RingId) -> Self {
        Self::scalar(RingElem::one(ring))
    }

    pub fn zero(ring: RingId) -> Self {
        Self::scalar(RingElem::zero(ring))
    }

    fn scalar(e: RingElem) -> Self {
        let z = RingElem::zero(e.ring());
        TorusEndo { ring: e.ring(), m: [[e.clone(), z.clone()], [z, e]] }
    }

    pub fn ring(&self) -> RingId {
        self.ring
    }

    pub fn entries(&self) -> &[[RingElem; 2]; 2] {
        &self.m
    }

    pub fn is_identity(&self) -> bool {
        self == &Self::identity(self.ring)
    }

    pub fn det(&self) -> RingElem {
        let m = &self.m;
        m[0][0].mul_unchecked(&m[1][1]).sub_unchecked(&m[0][1].mul_unchecked(&m[1][0]))
    }

    pub fn apply(&self, p: &TorusPoint) -> Result<TorusPoint> {
        if p.ring != self.ring {
            return Err(Error::RingMismatch(self.ring, p.ring));
        }
        let row = |i: usize| {
            p.coords[0].scale_unchecked(&self.m[i][0]).add_unchecked(&p.coords[1].scale_unchecked(&self.m[i][1]))
        };
        Ok(TorusPoint { ring: self.ring, coords: [row(0).reduce_mod_lattice(), row(1).reduce_mod_lattice()] })
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &TorusEndo) -> Result<TorusEndo> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        let (a, b) = (&self.m, &other.m);
        let entry = |i: usize, j: usize| a[i][0].mul_unchecked(&b[0][j]).add_unchecked(&a[i][1].mul_unchecked(&b[1][j]));
        Ok(TorusEndo { ring: self.ring, m: [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]] })
    }

    pub fn add(&self, other: &TorusEndo) -> Result<TorusEndo> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        let e = |i: usize, j: usize| self.m[i][j].add_unchecked(&other.m[i][j]);
        Ok(TorusEndo { ring: self.ring, m: [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]] })
    }

    pub fn pow(&self, k: u32) -> TorusEndo {
        let mut acc = Self::identity(self.ring);
        for _ in 0..k {
            acc = acc.compose(self).expect("same ring");
        }
        acc
    }

    /// Action on `H₁(A, Z) = Z⁴` in the basis `(1, ζ)` of each factor.
    pub fn h1_matrix(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(4, 4);
        for i in 0..2 {
            for j in 0..2 {
                out.set_block(2 * i, 2 * j, &self.m[i][j].regular_representation());
            }
        }
        out
    }

    pub fn order(&self) -> Result<u32> {
        let mut p = self.clone();
        for k in 1..=LINEAR_ORDER_BOUND {
            if p.is_identity() {
                return Ok(k);
            }
            p = p.compose(self)?;
        }
        Err(Error::UnsupportedAutomorphism { bound: LINEAR_ORDER_BOUND })
    }
}

impl fmt::Display for TorusEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.m;
        write!(f, "[[{},{}],[{},{}]]", m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

impl Serialize for TorusEndo {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Automorphism `ψ = t_a ∘ h` of `A`; the two fields are its unique
/// decomposition into linear part and translation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusAuto {
    linear: TorusEndo,
    translation: TorusPoint,
}

impl TorusAuto {
    pub fn new(linear: TorusEndo, translation: TorusPoint) -> Result<Self> {
        if linear.ring != translation.ring {
            return Err(Error::RingMismatch(linear.ring, translation.ring));
        }
        let det = linear.det();
        if !det.is_unit() {
            return Err(Error::NonUnitDeterminant(det.to_string()));
        }
        Ok(TorusAuto { linear, translation })
    }

    pub fn identity(ring: RingId) -> Self {
        TorusAuto { linear: TorusEndo::identity(ring), translation: TorusPoint::origin(ring) }
    }

    pub fn translation_by(a: TorusPoint) -> Self {
        TorusAuto { linear: TorusEndo::identity(a.ring), translation: a }
    }

    pub fn ring(&self) -> RingId {
        self.linear.ring
    }

    pub fn linear(&self) -> &TorusEndo {
        &self.linear
    }

    pub fn translation(&self) -> &TorusPoint {
        &self.translation
    }

    pub fn is_identity(&self) -> bool {
        self.linear.is_identity() && self.translation.is_origin()
    }

    /// `h(p) + a`
    pub fn apply(&self, p: &TorusPoint) -> Result<TorusPoint> {
        Ok(self.linear.apply(p)?.add_unchecked(&self.translation))
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &TorusAuto) -> Result<TorusAuto> {
        let linear = self.linear.compose(&other.linear)?;
        let translation = self.linear.apply(&other.translation)?.add_unchecked(&self.translation);
        Ok(TorusAuto { linear, translation })
    }

    pub fn pow(&self, k: u32) -> TorusAuto {
        let mut acc = Self::identity(self.ring());
        for _ in 0..k {
            acc = self.compose(&acc).expect("same ring");
        }
        acc
    }

    pub fn linear_order(&self) -> Result<u32> {
        self.linear.order()
    }

    /// Smallest `m ≥ 1` with `ψ^m = id`.
    pub fn order(&self) -> Result<u32> {
        let k = self.linear_order()?;
        // ψ^k is the translation by Σ_{u<k} h^u(a)
        let shift = self.pow(k).translation;
        let level = shift.level().to_u32().expect("level below cap");
        Ok(k * level)
    }

    /// `L = Σ_{j<ℓ} h^j` and `c = Σ_{j<ℓ} Σ_{u<j} h^u(a)`, so that
    /// `Σ_{j<ℓ} ψ^j(p) = L(p) + c` for every point `p`.
    pub fn orbit_sum_data(&self, len: u32) -> Result<(TorusEndo, TorusPoint)> {
        if len == 0 {
            return Err(Error::InvalidArgument("orbit length must be positive".into()));
        }
        let ring = self.ring();
        let mut sum_linear = TorusEndo::zero(ring);
        let mut sum_shift = TorusPoint::origin(ring);
        let mut power = TorusAuto::identity(ring);
        for _ in 0..len {
            sum_linear = sum_linear.add(&power.linear)?;
            sum_shift = sum_shift.add_unchecked(&power.translation);
            power = self.compose(&power)?;
        }
        Ok((sum_linear, sum_shift))
    }

    pub fn induced_h1_matrix(&self) -> IntMatrix {
        self.linear.h1_matrix()
    }

    /// Scalar by which `ψ` multiplies the holomorphic 2-form: `det h` over `Z[ζ]`.
    pub fn symplectic_multiplier(&self) -> RingElem {
        self.linear.det()
    }

    /// Smallest `k ≥ 1` with `multiplier^k = 1`.
    pub fn multiplier_order(&self) -> u32 {
        let m = self.symplectic_multiplier();
        let mut p = m.clone();
        for k in 1..=LINEAR_ORDER_BOUND {
            if p.is_one() {
                return k;
            }
            p = p.mul_unchecked(&m);
        }
        unreachable!("units of quadratic cyclotomic rings have order dividing 6 or 4")
    }

    /// `n·a = 0`, the condition for `ψ` to descend to `K_n(A)`.
    pub fn descends_to_kummer(&self, n: u32) -> bool {
        self.translation.is_torsion_of_level(n)
    }
}

impl fmt::Display for TorusAuto {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h={} a={}", self.linear, self.translation)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eis_construction(a1: (i64, i64), a1y: (i64, i64), a2: (i64, i64)) -> TorusAuto {
        let ring = RingId::Eisenstein;
        let h = TorusEndo::diagonal(RingElem::zeta(ring), RingElem::one(ring)).unwrap();
        let a = TorusPoint::from_fractions(ring, [a1, a1y, a2, (0, 1)]).unwrap();
        TorusAuto::new(h, a).unwrap()
    }

    #[test]
    fn apply_to_origin_gives_translation() {
        let psi = eis_construction((1, 3), (0, 1), (1, 3));
        let o = TorusPoint::origin(RingId::Eisenstein);
        assert_eq!(psi.apply(&o).unwrap(), *psi.translation());
        let mut p = o.clone();
        for _ in 0..3 {
            p = psi.apply(&p).unwrap();
        }
        assert!(p.is_origin());
    }

    #[test]
    fn construction_orders() {
        assert_eq!(eis_construction((1, 3), (0, 1), (1, 3)).order().unwrap(), 3);
        let ring = RingId::Gaussian;
        let h = TorusEndo::diagonal(RingElem::zeta(ring), RingElem::one(ring)).unwrap();
        let a = TorusPoint::from_fractions(ring, [(1, 4), (0, 1), (1, 4), (0, 1)]).unwrap();
        assert_eq!(TorusAuto::new(h, a).unwrap().order().unwrap(), 4);
        assert_eq!(TorusAuto::identity(RingId::Eisenstein).order().unwrap(), 1);
    }

    #[test]
    fn pure_translation_has_order_of_its_point() {
        let a = TorusPoint::from_fractions(RingId::Gaussian, [(1, 3), (2, 3), (0, 1), (1, 3)]).unwrap();
        let t = TorusAuto::translation_by(a);
        assert_eq!(t.order().unwrap(), 3);
        let p = TorusPoint::from_fractions(RingId::Gaussian, [(1, 5), (3, 7), (1, 2), (0, 1)]).unwrap();
        assert_eq!(t.pow(3).apply(&p).unwrap(), p);
    }

    #[test]
    fn orbit_sum_of_order_three_construction() {
        let psi = eis_construction((1, 3), (0, 1), (1, 3));
        let (l, c) = psi.orbit_sum_data(3).unwrap();
        let ring = RingId::Eisenstein;
        assert_eq!(l, TorusEndo::diagonal(RingElem::zero(ring), RingElem::from_i64(ring, 3, 0)).unwrap());
        // (2+ζ₃)/3 in the first factor
        assert_eq!(c, TorusPoint::from_fractions(ring, [(2, 3), (1, 3), (0, 1), (0, 1)]).unwrap());
    }

    #[test]
    fn orbit_sum_of_length_one_is_trivial() {
        let psi = eis_construction((1, 3), (1, 3), (2, 3));
        let (l, c) = psi.orbit_sum_data(1).unwrap();
        assert!(l.is_identity());
        assert!(c.is_origin());
        assert!(psi.orbit_sum_data(0).is_err());
    }

    #[test]
    fn zeta6_orbit_sum_is_a_unit_times_six_a1() {
        let ring = RingId::Eisenstein;
        let h = TorusEndo::diagonal(RingElem::zeta6(), RingElem::one(ring)).unwrap();
        let a = TorusPoint::from_fractions(ring, [(1, 7), (2, 7), (1, 6), (0, 1)]).unwrap();
        let psi = TorusAuto::new(h, a.clone()).unwrap();
        let (l, c) = psi.orbit_sum_data(6).unwrap();
        assert!(l.entries()[0][0].is_zero());
        let a1 = &a.coords()[0];
        let six_a1 = a1.scale_int(&BigInt::from(6));
        let matches_unit = ring
            .units()
            .iter()
            .any(|u| six_a1.scale_unchecked(u).reduce_mod_lattice() == c.coords()[0]);
        assert!(matches_unit, "c₁ = {} is not a unit multiple of 6a₁ = {}", c.coords()[0], six_a1);
        // this particular unit is ζ₆ itself
        assert_eq!(six_a1.scale_unchecked(&RingElem::zeta6()).reduce_mod_lattice(), c.coords()[0]);
    }

    #[test]
    fn induced_matrices() {
        let ring = RingId::Eisenstein;
        let h = TorusEndo::diagonal(RingElem::zeta(ring), RingElem::one(ring)).unwrap();
        let m = h.h1_matrix();
        let expected = IntMatrix::block_diag(&[
            &IntMatrix::from_i64(2, 2, &[0, -1, 1, -1]),
            &IntMatrix::identity(2),
        ]);
        assert_eq!(m, expected);
        assert!(m.pow(3).is_identity());
        assert!(TorusEndo::identity(ring).h1_matrix().is_identity());
        let g = TorusEndo::diagonal(RingElem::zeta(RingId::Gaussian), RingElem::one(RingId::Gaussian)).unwrap();
        assert_eq!(g.h1_matrix().multiplicative_order(24), Some(4));
    }

    #[test]
    fn multipliers() {
        let ring = RingId::Eisenstein;
        let psi = eis_construction((1, 3), (0, 1), (1, 3));
        assert_eq!(psi.symplectic_multiplier(), RingElem::zeta(ring));
        let g = RingId::Gaussian;
        let h = TorusEndo::diagonal(RingElem::zeta(g), RingElem::one(g)).unwrap();
        assert_eq!(TorusAuto::new(h, TorusPoint::origin(g)).unwrap().symplectic_multiplier(), RingElem::zeta(g));
        let minus = TorusEndo::diagonal(RingElem::from_i64(g, -1, 0), RingElem::from_i64(g, -1, 0)).unwrap();
        assert!(TorusAuto::new(minus, TorusPoint::origin(g)).unwrap().symplectic_multiplier().is_one());
    }

    #[test]
    fn non_unit_determinant_rejected() {
        let ring = RingId::Gaussian;
        let h = TorusEndo::diagonal(RingElem::from_i64(ring, 1, 1), RingElem::one(ring)).unwrap();
        assert!(matches!(TorusAuto::new(h, TorusPoint::origin(ring)), Err(Error::NonUnitDeterminant(_))));
    }

    #[test]
    fn infinite_order_linear_part_rejected() {
        let ring = RingId::RationalInt;
        let h = TorusEndo::from_i64(ring, [[(2, 0), (1, 0)], [(1, 0), (1, 0)]]);
        let psi = TorusAuto::new(h, TorusPoint::origin(ring)).unwrap();
        assert!(matches!(psi.order(), Err(Error::UnsupportedAutomorphism { .. })));
    }

    #[test]
    fn torsion_level_cap() {
        let big = TorusPoint::from_fractions(RingId::Gaussian, [(1, 1009), (0, 1), (0, 1), (0, 1)]);
        assert!(matches!(big, Err(Error::TorsionLevelTooLarge { .. })));
        let ok = TorusPoint::from_fractions(RingId::Gaussian, [(1, 8), (5, 6), (-1, 4), (7, 3)]).unwrap();
        assert_eq!(ok.level(), BigInt::from(24));
        assert_eq!(ok.to_vec()[2], BigRational::new(3.into(), 4.into()));
        assert!(ok.is_torsion_of_level(24));
        assert!(!ok.is_torsion_of_level(12));
    }
}
