//! Numerical bookkeeping for free cyclic quotients: Enriques / weak Enriques
//! verdicts and Bogomolov-type product decompositions.
//!
//! Factor catalog: an irreducible holomorphic symplectic (IHS) factor of
//! dimension `2m` (`m ≥ 1`) has holomorphic Euler characteristic `m + 1`; an
//! even-dimensional strict Calabi–Yau factor (dimension `≥ 4`) has `χ = 2`.
//! Odd-dimensional Calabi–Yau factors have `χ = 0` and never occur.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// `χ(X, O_X) = dim/2 + 1` for an IHS manifold `X`.
pub fn holomorphic_euler_ihs(dim: u32) -> Result<u32> {
    if dim == 0 || dim % 2 == 1 {
        return Err(Error::OddDimension(dim));
    }
    Ok(dim / 2 + 1)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Enriques { index: u32, dimension: u32 },
    WeakEnriques { chi: u32, dimension: u32 },
    Invalid { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientClassification {
    pub n: u32,
    pub d: u32,
    #[serde(flatten)]
    pub verdict: Verdict,
}

/// Classify `K_n(A) / G` for a cyclic group `G` of order `d` acting freely.
///
/// `d · χ(Y) = χ(K_n(A)) = n`, so `d` must divide `n`. Fundamental group and
/// canonical order are not computed here: for a free cyclic quotient of a
/// simply connected manifold with `d | n` they are cyclic of order `d`.
pub fn classify_free_quotient(n: u32, d: u32) -> QuotientClassification {
    let verdict = if n < 2 {
        Verdict::Invalid { reason: format!("Kummer parameter n = {n} must be at least 2") }
    } else if d < 2 {
        Verdict::Invalid { reason: format!("group order d = {d} must be at least 2") }
    } else if !n.is_multiple_of(d) {
        Verdict::Invalid { reason: format!("{d} does not divide {n}") }
    } else if d == n {
        Verdict::Enriques { index: d, dimension: 2 * n - 2 }
    } else {
        Verdict::WeakEnriques { chi: n / d, dimension: 2 * n - 2 }
    };
    QuotientClassification { n, d, verdict }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorKind {
    Ihs,
    CyEven,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Factor {
    pub kind: FactorKind,
    pub dim: u32,
}

impl Factor {
    pub fn chi(&self) -> u32 {
        match self.kind {
            FactorKind::Ihs => self.dim / 2 + 1,
            FactorKind::CyEven => 2,
        }
    }
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FactorKind::Ihs => write!(f, "IHS{}", self.dim),
            FactorKind::CyEven => write!(f, "CY{}", self.dim),
        }
    }
}

/// Factors sorted by (dimension descending, kind).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FactorDecomposition {
    pub factors: Vec<Factor>,
}

impl FactorDecomposition {
    pub fn dim(&self) -> u32 {
        self.factors.iter().map(|f| f.dim).sum()
    }

    pub fn chi(&self) -> u32 {
        self.factors.iter().map(Factor::chi).product()
    }

    pub fn is_single(&self) -> bool {
        self.factors.len() == 1
    }
}

impl fmt::Display for FactorDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(ToString::to_string).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

fn catalog(max_dim: u32) -> Vec<Factor> {
    let mut out = Vec::new();
    let mut dim = max_dim - max_dim % 2;
    while dim >= 2 {
        out.push(Factor { kind: FactorKind::Ihs, dim });
        if dim >= 4 {
            out.push(Factor { kind: FactorKind::CyEven, dim });
        }
        dim -= 2;
    }
    out
}

fn search(
    items: &[Factor],
    start: usize,
    dim_left: u32,
    chi_left: u32,
    current: &mut Vec<Factor>,
    out: &mut Vec<FactorDecomposition>,
) {
    if dim_left == 0 {
        if chi_left == 1 {
            out.push(FactorDecomposition { factors: current.clone() });
        }
        return;
    }
    for (i, f) in items.iter().enumerate().skip(start) {
        if f.dim > dim_left || !chi_left.is_multiple_of(f.chi()) {
            continue;
        }
        current.push(*f);
        search(items, i, dim_left - f.dim, chi_left / f.chi(), current, out);
        current.pop();
    }
}

/// All multisets of catalog factors with total dimension `dim` and product
/// of Euler characteristics `chi`, in canonical order.
pub fn decomposition_search(dim: u32, chi: u32) -> Vec<FactorDecomposition> {
    if dim == 0 || dim % 2 == 1 || chi < 2 {
        return Vec::new();
    }
    let items = catalog(dim);
    let mut out = Vec::new();
    search(&items, 0, dim, chi, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// At least one decomposition exists and every one has a single factor.
pub fn is_irreducible_feasible(dim: u32, chi: u32) -> bool {
    let found = decomposition_search(dim, chi);
    !found.is_empty() && found.iter().all(FactorDecomposition::is_single)
}
