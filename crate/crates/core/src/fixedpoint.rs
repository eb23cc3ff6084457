//! Fixed points of natural automorphisms on `K_n(A)`.
//!
//! A point of `K_n(A)` fixed by `φ⟦n⟧` is a `φ`-invariant length-`n`
//! subscheme of `A` whose points sum to zero. Its support is a union of
//! `φ`-orbits, each carrying a constant multiplicity, and any such weighted
//! configuration with zero sum carries an invariant scheme structure
//! (monomial ideals at linearized fixed points, transported along the
//! orbit). So `φ⟦n⟧` has a fixed point iff some orbit type
//! `{(ℓᵢ, mᵢ)}` with `Σ ℓᵢ mᵢ = n` admits points `zᵢ` with
//!
//! ```text
//! φ^{ℓᵢ}(zᵢ) = zᵢ                          (H^{ℓᵢ} − I) zᵢ ≡ −a_{ℓᵢ}
//! Σᵢ mᵢ Σ_{j<ℓᵢ} φʲ(zᵢ) = 0                Σᵢ mᵢ (L_{ℓᵢ} zᵢ + c_{ℓᵢ}) ≡ 0
//! ```
//!
//! with `a_ℓ`, `L_ℓ`, `c_ℓ` from [`TorusAuto::orbit_sum_data`]. Requiring
//! `φ^ℓ(z) = z` rather than exact orbit length `ℓ` loses nothing: an orbit of
//! length `ℓ' | ℓ` counted over `ℓ` steps is the same configuration with
//! multiplicity scaled by `ℓ/ℓ'`, which another orbit type covers. Each
//! type is one integer system modulo `Z^r`, decided exactly by
//! [`torus_system_solvable`].
//!
//! This criterion is a modeling assumption for non-reduced structures along
//! free orbits; it agrees with every hand-checked case and with the
//! brute-force search in [`brute_force_fixed_point`].

use std::collections::HashSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::{torus_system_solvable, IntMatrix, Obstruction, Solvability};
use crate::lefschetz::divisors;
use crate::torus::{TorusAuto, TorusPoint, TORSION_LEVEL_CAP};

/// Cycle structure of an invariant configuration: pairs `(orbit length,
/// multiplicity)`, sorted in decreasing lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OrbitType {
    parts: Vec<(u32, u32)>,
}

impl OrbitType {
    pub fn new(mut parts: Vec<(u32, u32)>) -> Self {
        parts.sort_by(|a, b| b.cmp(a));
        OrbitType { parts }
    }

    pub fn parts(&self) -> &[(u32, u32)] {
        &self.parts
    }

    /// `Σ ℓ·m`
    pub fn total_length(&self) -> u32 {
        self.parts.iter().map(|(l, m)| l * m).sum()
    }
}

impl fmt::Display for OrbitType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|(l, m)| format!("({l},{m})")).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for OrbitType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<[u32; 2]> = self.parts.iter().map(|&(l, m)| [l, m]).collect();
        v.serialize(s)
    }
}

fn enumerate_types(items: &[(u32, u32)], start: usize, left: u32, current: &mut Vec<(u32, u32)>, out: &mut Vec<OrbitType>) {
    if left == 0 {
        out.push(OrbitType { parts: current.clone() });
        return;
    }
    for (i, &(l, m)) in items.iter().enumerate().skip(start) {
        if l * m > left {
            continue;
        }
        current.push((l, m));
        enumerate_types(items, i, left - l * m, current, out);
        current.pop();
    }
}

/// Every multiset of `(ℓ, mult)` with `ℓ | order` and `Σ ℓ·mult = n`, once
/// each, in canonical order.
pub fn orbit_types(n: u32, order: u32) -> Vec<OrbitType> {
    let mut items: Vec<(u32, u32)> = divisors(order)
        .into_iter()
        .filter(|&l| l <= n)
        .flat_map(|l| (1..=n / l).map(move |m| (l, m)))
        .collect();
    items.sort_by(|a, b| b.cmp(a));
    let mut out = Vec::new();
    enumerate_types(&items, 0, n, &mut Vec::new(), &mut out);
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum Outcome {
    /// One point per part of the orbit type.
    FixedPoint { witness: Vec<TorusPoint> },
    Obstructed { obstruction: Obstruction },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessCertificate {
    pub element_power: u32,
    pub orbit_type: OrbitType,
    #[serde(flatten)]
    pub outcome: Outcome,
}

impl FreenessCertificate {
    pub fn is_fixed_point(&self) -> bool {
        matches!(self.outcome, Outcome::FixedPoint { .. })
    }

    /// Re-check against `base^element_power` acting on `K_n(A)`. Witnesses
    /// are checked by expanding orbits point by point; obstructions against
    /// the rebuilt integer system.
    pub fn verify(&self, base: &TorusAuto, n: u32) -> bool {
        let phi = base.pow(self.element_power);
        let Ok(order) = phi.order() else { return false };
        if self.orbit_type.total_length() != n || self.orbit_type.parts.iter().any(|(l, _)| order % l != 0) {
            return false;
        }
        match &self.outcome {
            Outcome::FixedPoint { witness } => verify_witness(&phi, &self.orbit_type, witness),
            Outcome::Obstructed { obstruction } => {
                let Ok((t, rhs)) = assemble_system(&phi, &self.orbit_type) else { return false };
                obstruction.verify(&t, &rhs)
            }
        }
    }
}

fn verify_witness(phi: &TorusAuto, ty: &OrbitType, witness: &[TorusPoint]) -> bool {
    if witness.len() != ty.parts.len() {
        return false;
    }
    let ring = phi.ring();
    let mut total = TorusPoint::origin(ring);
    for (&(len, mult), z) in ty.parts.iter().zip(witness) {
        let mut p = z.clone();
        let mut orbit_sum = TorusPoint::origin(ring);
        for _ in 0..len {
            orbit_sum = orbit_sum.add_unchecked(&p);
            p = match phi.apply(&p) {
                Ok(q) => q,
                Err(_) => return false,
            };
        }
        if &p != z {
            return false;
        }
        total = total.add_unchecked(&orbit_sum.scale_int(&BigInt::from(mult)));
    }
    total.is_origin()
}

/// The integer system `T z ≡ rhs (mod Z^r)` of one orbit type.
pub fn assemble_system(phi: &TorusAuto, ty: &OrbitType) -> Result<(IntMatrix, Vec<BigRational>)> {
    let k = ty.parts.len();
    let h = phi.induced_h1_matrix();
    let id = IntMatrix::identity(4);
    let mut t = IntMatrix::zeros(4 * k + 4, 4 * k);
    let mut rhs = vec![BigRational::zero(); 4 * k + 4];
    for (i, &(len, mult)) in ty.parts.iter().enumerate() {
        t.set_block(4 * i, 4 * i, &h.pow(len).sub(&id));
        let shift = phi.pow(len).translation().to_vec();
        for r in 0..4 {
            rhs[4 * i + r] = -&shift[r];
        }
        let (sum_linear, sum_shift) = phi.orbit_sum_data(len)?;
        let mult_big = BigInt::from(mult);
        t.set_block(4 * k, 4 * i, &sum_linear.h1_matrix().scale(&mult_big));
        let c = sum_shift.to_vec();
        let mult_q = BigRational::from_integer(mult_big);
        for r in 0..4 {
            rhs[4 * k + r] -= &c[r] * &mult_q;
        }
    }
    Ok((t, rhs))
}

fn decide_type(phi: &TorusAuto, power: u32, ty: OrbitType) -> Result<FreenessCertificate> {
    let (t, rhs) = assemble_system(phi, &ty)?;
    let outcome = match torus_system_solvable(&t, &rhs)? {
        Solvability::Solvable { witness } => {
            let points = witness.chunks(4).map(|c| TorusPoint::from_coords(phi.ring(), c)).collect::<Result<Vec<_>>>()?;
            Outcome::FixedPoint { witness: points }
        }
        Solvability::Obstructed(obstruction) => Outcome::Obstructed { obstruction },
    };
    Ok(FreenessCertificate { element_power: power, orbit_type: ty, outcome })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedPointDecision {
    pub element_power: u32,
    pub has_fixed_point: bool,
    pub certificates: Vec<FreenessCertificate>,
}

fn check_descends(psi: &TorusAuto, n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("Kummer parameter n = {n} must be at least 2")));
    }
    if !psi.descends_to_kummer(n) {
        return Err(Error::NotNTorsion { point: psi.translation().to_string(), n });
    }
    Ok(())
}

/// Decide whether `(base^power)⟦n⟧` has a fixed point; one certificate per
/// orbit type, in canonical order.
pub fn has_fixed_point_power(base: &TorusAuto, power: u32, n: u32) -> Result<FixedPointDecision> {
    check_descends(base, n)?;
    let phi = base.pow(power);
    let order = phi.order()?;
    let certificates = orbit_types(n, order)
        .into_par_iter()
        .map(|ty| decide_type(&phi, power, ty))
        .collect::<Result<Vec<_>>>()?;
    let has_fixed_point = certificates.iter().any(FreenessCertificate::is_fixed_point);
    Ok(FixedPointDecision { element_power: power, has_fixed_point, certificates })
}

pub fn has_fixed_point(psi: &TorusAuto, n: u32) -> Result<FixedPointDecision> {
    has_fixed_point_power(psi, 1, n)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FreenessReport {
    pub n: u32,
    pub order: u32,
    pub acts_freely: bool,
    /// One decision per proper divisor `k` of the order, for `ψ^k`.
    pub tested: Vec<FixedPointDecision>,
}

impl FreenessReport {
    pub fn verify(&self, base: &TorusAuto) -> bool {
        let decisions_consistent = self
            .tested
            .iter()
            .all(|d| d.has_fixed_point == d.certificates.iter().any(FreenessCertificate::is_fixed_point));
        let answer_consistent = self.acts_freely == self.tested.iter().all(|d| !d.has_fixed_point);
        decisions_consistent
            && answer_consistent
            && self.tested.iter().flat_map(|d| &d.certificates).all(|c| c.verify(base, self.n))
    }
}

/// Powers `m/p` for the primes `p | m`; the group acts freely iff none of
/// them has a fixed point, since `Fix(ψ^k) ⊆ Fix(ψ^{m/p})` whenever
/// `p | m/gcd(k, m)`.
pub fn prime_index_powers(order: u32) -> Vec<u32> {
    divisors(order)
        .into_iter()
        .filter(|&p| p > 1 && divisors(p).len() == 2)
        .map(|p| order / p)
        .collect()
}

/// Does `⟨ψ⟦n⟧⟩` act freely on `K_n(A)`?
///
/// Every `ψ^k` with `k` a proper divisor of the order is tested; this set
/// contains the generators `ψ^{m/p}` of the minimal subgroups, so the answer
/// is decided by them, and the extra powers (e.g. `ψ` itself) come with
/// their own certificates. The trivial group acts freely.
pub fn group_acts_freely(psi: &TorusAuto, n: u32) -> Result<FreenessReport> {
    check_descends(psi, n)?;
    let order = psi.order()?;
    let tested = divisors(order)
        .into_iter()
        .filter(|&k| k < order)
        .map(|k| has_fixed_point_power(psi, k, n))
        .collect::<Result<Vec<_>>>()?;
    let acts_freely = tested.iter().all(|d| !d.has_fixed_point);
    Ok(FreenessReport { n, order, acts_freely, tested })
}

/// Largest bound accepted by [`brute_force_fixed_point_up_to`].
pub const UP_TO_LEVEL_CAP: u32 = 24;

const REACHABLE_CAP: usize = 4_000_000;

type GridPoint = [i64; 4];

/// `ψ` acting on points with coordinates in `(1/denom)Z / Z`, stored as
/// numerators.
struct GridAction {
    denom: i64,
    linear: [[i64; 4]; 4],
    shift: GridPoint,
}

impl GridAction {
    /// `None` if the translation does not lie on the grid.
    fn new(psi: &TorusAuto, denom: i64) -> Option<Self> {
        let scale = BigRational::from_integer(BigInt::from(denom));
        let mut shift = [0i64; 4];
        for (s, q) in shift.iter_mut().zip(psi.translation().to_vec()) {
            let scaled = q * &scale;
            if !scaled.is_integer() {
                return None;
            }
            *s = scaled.to_integer().to_i64()?;
        }
        let h = psi.induced_h1_matrix();
        let mut linear = [[0i64; 4]; 4];
        for (i, row) in linear.iter_mut().enumerate() {
            for (j, v) in row.iter_mut().enumerate() {
                *v = h[(i, j)].to_i64()?.rem_euclid(denom);
            }
        }
        Some(GridAction { denom, linear, shift })
    }

    fn apply(&self, p: &GridPoint) -> GridPoint {
        let mut q = [0i64; 4];
        for (i, out) in q.iter_mut().enumerate() {
            let dot = self.linear[i].iter().zip(p).fold(0i64, |acc, (a, b)| (acc + a * b) % self.denom);
            *out = (dot + self.shift[i]).rem_euclid(self.denom);
        }
        q
    }

    fn add(&self, a: &GridPoint, b: &GridPoint) -> GridPoint {
        std::array::from_fn(|i| (a[i] + b[i]) % self.denom)
    }

    fn neg(&self, a: &GridPoint) -> GridPoint {
        std::array::from_fn(|i| (self.denom - a[i]) % self.denom)
    }

    fn level(&self, p: &GridPoint) -> i64 {
        self.denom / p.iter().fold(self.denom, |g, &c| g.gcd(&c))
    }
}

/// Orbits through `points` that stay inside `admissible`; decides whether
/// weighted orbit sums of total length `n` can vanish.
fn search_configurations(
    action: &GridAction,
    points: impl Iterator<Item = GridPoint>,
    admissible: impl Fn(&GridPoint) -> bool,
    n: u32,
) -> Result<bool> {
    let n = n as usize;
    let mut sums_by_len: Vec<HashSet<GridPoint>> = vec![HashSet::new(); n + 1];
    let mut seen: HashSet<GridPoint> = HashSet::new();
    for start in points {
        if seen.contains(&start) {
            continue;
        }
        let mut p = start;
        let mut sum = [0i64; 4];
        let mut len = 0usize;
        let mut inside = true;
        loop {
            seen.insert(p);
            inside &= admissible(&p);
            sum = action.add(&sum, &p);
            len += 1;
            p = action.apply(&p);
            if p == start {
                break;
            }
        }
        if inside && len <= n {
            sums_by_len[len].insert(sum);
        }
    }

    // reachable[k]: sums of weighted configurations of total length k
    let mut reachable: Vec<HashSet<GridPoint>> = vec![HashSet::new(); n];
    reachable[0].insert([0; 4]);
    for total in 1..n {
        let mut acc = HashSet::new();
        for len in 1..=total {
            for r in &reachable[total - len] {
                for s in &sums_by_len[len] {
                    acc.insert(action.add(r, s));
                }
            }
            if acc.len() > REACHABLE_CAP {
                return Err(Error::BoundExceeded(format!("more than {REACHABLE_CAP} partial orbit sums")));
            }
        }
        reachable[total] = acc;
    }
    Ok((1..=n).any(|len| sums_by_len[len].iter().any(|s| reachable[n - len].contains(&action.neg(s)))))
}

/// Exhaustive search among the points killed by `level`: is there a union
/// of `ψ`-orbits with multiplicities, total length `n`, summing to zero?
///
/// Sound for `true` at any level, complete only once the level is large
/// enough. If the translation of `ψ` is not killed by `level`, no orbit
/// stays inside the grid and the answer is `false`.
pub fn brute_force_fixed_point(psi: &TorusAuto, n: u32, level: u32) -> Result<bool> {
    if level == 0 || level > TORSION_LEVEL_CAP {
        return Err(Error::BoundExceeded(format!("torsion level {level} outside 1..={TORSION_LEVEL_CAP}")));
    }
    let Some(action) = GridAction::new(psi, level as i64) else { return Ok(false) };
    let d = level as i64;
    let points = (0..d.pow(4)).map(|idx| [idx / (d * d * d), idx / (d * d) % d, idx / d % d, idx % d]);
    search_configurations(&action, points, |_| true, n)
}

/// As [`brute_force_fixed_point`], over all points of level at most
/// `max_level` (orbits leaving that set are discarded).
pub fn brute_force_fixed_point_up_to(psi: &TorusAuto, n: u32, max_level: u32) -> Result<bool> {
    if max_level == 0 || max_level > UP_TO_LEVEL_CAP {
        return Err(Error::BoundExceeded(format!("level bound {max_level} outside 1..={UP_TO_LEVEL_CAP}")));
    }
    let denom = (1..=max_level as i64).fold(1i64, |l, k| l.lcm(&k));
    let Some(action) = GridAction::new(psi, denom) else { return Ok(false) };
    let points = (1..=max_level as i64).flat_map(move |k| {
        let scale = denom / k;
        (0..k.pow(4)).filter_map(move |idx| {
            let p = [idx / (k * k * k), idx / (k * k) % k, idx / k % k, idx % k];
            let exact = p.iter().fold(k, |g, &c| g.gcd(&c)) == 1;
            exact.then(|| p.map(|c| c * scale))
        })
    });
    search_configurations(&action, points, |p| action.level(p) <= max_level as i64, n)
}
