//! Systematic sweep for free natural automorphisms.
//!
//! Candidates are pairs `(h, a)` with `h` from a bounded catalog of linear
//! parts and `a ∈ A[g]`, `g = gcd(n, level)`. Conjugating `t_a ∘ h` by a
//! translation `t_b` gives `t_{a + (h − 1)b} ∘ h`, so one `a` is kept per
//! coset of `(1 − h)A[g]`: the first under the key `(y₁, x₁, y₂, x₂)`. The
//! list is duplicate-free modulo this reduction; it is not a classification.

use kummer_core::enriques::{classify_free_quotient, QuotientClassification};
use kummer_core::exactnum::{RingElem, RingId};
use kummer_core::fixedpoint::{group_acts_freely, has_fixed_point_power, prime_index_powers};
use kummer_core::torus::{TorusAuto, TorusEndo, TorusPoint};
use kummer_core::Error;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::app::AppError;

pub const LEVEL_CAP: u32 = 24;
pub const NORM_CAP: u32 = 4;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchParams {
    pub ring: RingId,
    pub n: u32,
    pub level: u32,
    pub max_norm: u32,
    /// Use this linear part instead of the catalog.
    pub linear: Option<TorusEndo>,
    /// Skip candidates whose order differs from the order of their
    /// multiplier on the symplectic form; such a group contains a symplectic
    /// element, and symplectic elements always have fixed points.
    pub prefilter: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchHit {
    pub h: TorusEndo,
    pub a: TorusPoint,
    pub order: u32,
    pub classification: QuotientClassification,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    pub ring: RingId,
    pub n: u32,
    pub level: u32,
    pub max_norm: u32,
    pub linear_parts: usize,
    pub candidates: usize,
    /// Candidates that went through the exact freeness decision.
    pub decided: usize,
    pub hits: Vec<SearchHit>,
}

/// Ring elements of norm at most `max_norm`, ordered by `(norm, x, y)`.
fn small_elements(ring: RingId, max_norm: u32) -> Vec<RingElem> {
    let r = 2 * max_norm as i64 + 1;
    let mut out: Vec<(BigInt, RingElem)> = Vec::new();
    for x in -r..=r {
        for y in -r..=r {
            let e = RingElem::from_i64(ring, x, y);
            if e.norm() <= BigInt::from(max_norm) {
                out.push((e.norm(), e));
            }
        }
    }
    out.sort_by(|(n1, a), (n2, b)| (n1, a.x(), a.y()).cmp(&(n2, b.x(), b.y())));
    out.dedup_by(|a, b| a.1 == b.1);
    out.into_iter().map(|(_, e)| e).collect()
}

/// Invertible finite-order 2×2 matrices with entries of norm at most
/// `max_norm`, in lexicographic order of their entries.
pub fn linear_catalog(ring: RingId, max_norm: u32) -> Vec<TorusEndo> {
    let elems = small_elements(ring, max_norm);
    let k = elems.len();
    (0..k.pow(4))
        .into_par_iter()
        .filter_map(|idx| {
            let e = |i: u32| elems[idx / k.pow(3 - i) % k].clone();
            let h = TorusEndo::new([[e(0), e(1)], [e(2), e(3)]]).ok()?;
            (h.det().is_unit() && h.order().is_ok()).then_some(h)
        })
        .collect()
}

type Grid = [i64; 4];

/// Grid coordinates `[x₁, y₁, x₂, y₂]` encoded with `y₁` most significant.
fn encode(c: &Grid, g: i64) -> usize {
    (((c[1] * g + c[0]) * g + c[3]) * g + c[2]) as usize
}

fn decode(idx: usize, g: i64) -> Grid {
    let idx = idx as i64;
    [idx / (g * g) % g, idx / (g * g * g), idx % g, idx / g % g]
}

/// One representative of each coset of `(1 − h)A[g]` in `A[g]`.
pub fn translation_representatives(h: &TorusEndo, g: u32) -> Vec<Grid> {
    let g = g as i64;
    let size = g.pow(4) as usize;
    let m: Vec<Vec<i64>> = h
        .h1_matrix()
        .to_rows()
        .iter()
        .map(|row| row.iter().map(|v| v.to_i64().expect("unit-size entries")).collect())
        .collect();

    let mut in_image = vec![false; size];
    let mut offsets = Vec::new();
    for idx in 0..size {
        let b = decode(idx, g);
        let mut v = [0i64; 4];
        for i in 0..4 {
            let mb: i64 = (0..4).map(|j| m[i][j] * b[j]).sum();
            v[i] = (b[i] - mb).rem_euclid(g);
        }
        let key = encode(&v, g);
        if !in_image[key] {
            in_image[key] = true;
            offsets.push(v);
        }
    }

    let mut seen = vec![false; size];
    let mut reps = Vec::new();
    for idx in 0..size {
        if seen[idx] {
            continue;
        }
        let a = decode(idx, g);
        for o in &offsets {
            let shifted = [0, 1, 2, 3].map(|i| (a[i] + o[i]).rem_euclid(g));
            seen[encode(&shifted, g)] = true;
        }
        reps.push(a);
    }
    reps
}

enum Evaluation {
    Skipped,
    Decided(Option<Box<SearchHit>>),
}

fn evaluate(h: &TorusEndo, a: TorusPoint, n: u32, prefilter: bool) -> Result<Evaluation, AppError> {
    let psi = TorusAuto::new(h.clone(), a)?;
    let order = psi.order()?;
    if order < 2 || (prefilter && psi.multiplier_order() != order) {
        return Ok(Evaluation::Skipped);
    }
    for k in prime_index_powers(order) {
        if has_fixed_point_power(&psi, k, n)?.has_fixed_point {
            return Ok(Evaluation::Decided(None));
        }
    }
    let report = group_acts_freely(&psi, n)?;
    if !report.acts_freely || !report.verify(&psi) {
        return Err(AppError::Check(format!("freeness of {psi} was not confirmed by re-verified certificates")));
    }
    Ok(Evaluation::Decided(Some(Box::new(SearchHit {
        h: psi.linear().clone(),
        a: psi.translation().clone(),
        order,
        classification: classify_free_quotient(n, order),
    }))))
}

pub fn validate(params: &SearchParams) -> Result<(), Error> {
    if params.n < 2 {
        return Err(Error::InvalidArgument(format!("Kummer parameter n = {} must be at least 2", params.n)));
    }
    if params.level == 0 || params.level > LEVEL_CAP {
        return Err(Error::BoundExceeded(format!("torsion level {} is outside 1..={LEVEL_CAP}", params.level)));
    }
    if params.max_norm == 0 || params.max_norm > NORM_CAP {
        return Err(Error::BoundExceeded(format!("entry norm bound {} is outside 1..={NORM_CAP}", params.max_norm)));
    }
    if let Some(h) = &params.linear {
        if h.ring() != params.ring {
            return Err(Error::RingMismatch(h.ring(), params.ring));
        }
        TorusAuto::new(h.clone(), TorusPoint::origin(params.ring))?.order()?;
    }
    Ok(())
}

pub fn run_search(params: &SearchParams) -> Result<SearchOutcome, AppError> {
    validate(params)?;
    let catalog = match &params.linear {
        Some(h) => vec![h.clone()],
        None => linear_catalog(params.ring, params.max_norm),
    };
    let g = params.n.gcd(&params.level);
    let candidates: Vec<(usize, Grid)> = catalog
        .iter()
        .enumerate()
        .flat_map(|(i, h)| translation_representatives(h, g).into_iter().map(move |a| (i, a)))
        .collect();

    let ring = params.ring;
    let gi = g as i64;
    let evaluations = candidates
        .par_iter()
        .map(|&(i, c)| {
            let a = TorusPoint::from_fractions(ring, c.map(|x| (x, gi)))?;
            evaluate(&catalog[i], a, params.n, params.prefilter)
        })
        .collect::<Result<Vec<_>, AppError>>()?;

    let decided = evaluations.iter().filter(|e| matches!(e, Evaluation::Decided(_))).count();
    let hits = evaluations
        .into_iter()
        .filter_map(|e| match e {
            Evaluation::Decided(hit) => hit.map(|h| *h),
            Evaluation::Skipped => None,
        })
        .collect();
    Ok(SearchOutcome {
        ring,
        n: params.n,
        level: params.level,
        max_norm: params.max_norm,
        linear_parts: catalog.len(),
        candidates: candidates.len(),
        decided,
        hits,
    })
}
