//! Independent oracles shared by the integration tests. Nothing here calls
//! the Smith normal form, the series code or the fixed-point solver.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use kummer_core::exactnum::{IntMatrix, RingElem, RingId};
use kummer_core::torus::TorusEndo;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

pub fn to_i64_rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    m.to_rows().iter().map(|r| r.iter().map(|x| x.to_i64().unwrap()).collect()).collect()
}

/// Determinant by Laplace expansion along the first row.
pub fn laplace_det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> =
                    m[1..].iter().map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect()).collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * laplace_det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// `d_k`: gcd of all `k × k` minors.
pub fn determinantal_divisor(t: &[Vec<i64>], k: usize) -> i64 {
    let rows = t.len();
    let cols = t.first().map_or(0, Vec::len);
    let mut g = 0i64;
    for rs in subsets(rows, k) {
        for cs in subsets(cols, k) {
            let minor: Vec<Vec<i64>> = rs.iter().map(|&r| cs.iter().map(|&c| t[r][c]).collect()).collect();
            g = g.gcd(&laplace_det(&minor));
        }
    }
    g
}

/// Largest invariant factor `d_r / d_{r−1}` (1 for the zero matrix).
pub fn largest_invariant_factor(t: &[Vec<i64>]) -> i64 {
    let rows = t.len();
    let cols = t.first().map_or(0, Vec::len);
    let mut prev = 1i64;
    let mut last = 1i64;
    for k in 1..=rows.min(cols) {
        let d = determinantal_divisor(t, k);
        if d == 0 {
            break;
        }
        last = d / prev;
        prev = d;
    }
    last
}

/// Is `c ∈ T·(R/Z)^cols + Z^rows`? Exhaustive over the subgroup generated by
/// the columns of `T` in `(Z/D)^rows`, with `D` large enough for any
/// solution to have denominator dividing it. `None` if the search space
/// exceeds `limit`.
pub fn lattice_oracle(t: &[Vec<i64>], c: &[(i64, i64)], limit: u64) -> Option<bool> {
    let rows = t.len();
    let den_c = c.iter().fold(1i64, |l, &(_, d)| l.lcm(&d));
    let d = den_c * largest_invariant_factor(t);
    if (d as u64).checked_pow(rows as u32).is_none_or(|s| s > limit) {
        return None;
    }
    let encode = |v: &[i64]| v.iter().fold(0usize, |acc, &x| acc * d as usize + x as usize);
    let target = encode(&c.iter().map(|&(n, den)| (n * (d / den)).rem_euclid(d)).collect::<Vec<_>>());
    let cols = t.first().map_or(0, Vec::len);
    let gens: Vec<Vec<i64>> = (0..cols).map(|j| (0..rows).map(|i| t[i][j].rem_euclid(d)).collect()).collect();
    let mut seen = vec![false; (d as usize).pow(rows as u32)];
    seen[0] = true;
    let mut queue = VecDeque::from([vec![0i64; rows]]);
    while let Some(v) = queue.pop_front() {
        if encode(&v) == target {
            return Some(true);
        }
        for g in &gens {
            let w: Vec<i64> = v.iter().zip(g).map(|(a, b)| (a + b) % d).collect();
            let idx = encode(&w);
            if !seen[idx] {
                seen[idx] = true;
                queue.push_back(w);
            }
        }
    }
    Some(false)
}

/// Rational determinant by cofactor expansion.
pub fn rational_det(m: &[Vec<BigRational>]) -> BigRational {
    match m.len() {
        0 => BigRational::one(),
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<BigRational>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, v)| v.clone()).collect())
                    .collect();
                let term = &m[0][j] * rational_det(&minor);
                if j % 2 == 0 { term } else { -term }
            })
            .sum(),
    }
}

/// `tr Λ^j(O)`: sum of principal `j × j` minors.
pub fn exterior_trace(o: &[Vec<BigRational>], j: usize) -> BigRational {
    subsets(o.len(), j)
        .into_iter()
        .map(|s| {
            let minor: Vec<Vec<BigRational>> = s.iter().map(|&r| s.iter().map(|&c| o[r][c].clone()).collect()).collect();
            rational_det(&minor)
        })
        .sum()
}

type Poly = BTreeMap<Vec<u32>, BigRational>;

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(BigRational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn monomials(vars: usize, degree: u32) -> Vec<Vec<u32>> {
    if vars == 0 {
        return if degree == 0 { vec![vec![]] } else { vec![] };
    }
    (0..=degree)
        .flat_map(|first| {
            monomials(vars - 1, degree - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

/// `tr Sym^k(E)`: `E` sends `x_j ↦ Σ_i E_ij x_i`; the trace sums the diagonal
/// coefficients of the induced map on degree-`k` monomials.
pub fn symmetric_trace(e: &[Vec<BigRational>], k: u32) -> BigRational {
    let n = e.len();
    let images: Vec<Poly> = (0..n)
        .map(|j| {
            (0..n)
                .filter(|&i| !e[i][j].is_zero())
                .map(|i| {
                    let mut exp = vec![0u32; n];
                    exp[i] = 1;
                    (exp, e[i][j].clone())
                })
                .collect()
        })
        .collect();
    let one: Poly = BTreeMap::from([(vec![0u32; n], BigRational::one())]);
    monomials(n, k)
        .into_iter()
        .map(|alpha| {
            let mut p = one.clone();
            for (j, &a) in alpha.iter().enumerate() {
                for _ in 0..a {
                    p = poly_mul(&p, &images[j]);
                }
            }
            p.get(&alpha).cloned().unwrap_or_else(BigRational::zero)
        })
        .sum()
}

/// `Σ_k t^k Σ_{i+j=k} (−1)^j tr Sym^i(E) tr Λ^j(O)`
pub fn supertrace_bruteforce(e: &[Vec<BigRational>], o: &[Vec<BigRational>], truncation: usize) -> Vec<BigRational> {
    (0..=truncation)
        .map(|k| {
            (0..=k)
                .map(|j| {
                    let term = symmetric_trace(e, (k - j) as u32) * exterior_trace(o, j);
                    if j % 2 == 0 { term } else { -term }
                })
                .sum()
        })
        .collect()
}

/// Characters `χ ∈ (Z/n)^k` with `Mᵀχ ≡ χ`, counted by exact order.
pub fn fixed_characters_bruteforce(m: &IntMatrix, n: u32) -> BTreeMap<u32, u64> {
    let rows = to_i64_rows(m);
    let k = rows.len();
    let n = n as i64;
    let mut out = BTreeMap::new();
    for idx in 0..n.pow(k as u32) {
        let chi: Vec<i64> = (0..k).map(|i| idx / n.pow(i as u32) % n).collect();
        let fixed = (0..k).all(|j| ((0..k).map(|i| rows[i][j] * chi[i]).sum::<i64>() - chi[j]).rem_euclid(n) == 0);
        if fixed {
            let g = chi.iter().fold(n, |g, &c| g.gcd(&c));
            *out.entry((n / g) as u32).or_insert(0) += 1;
        }
    }
    out
}

fn poly_from_low(low: &[i64]) -> IntMatrix {
    IntMatrix::companion(low)
}

/// Finite-order `4 × 4` integer matrices without eigenvalue 1: matrices
/// induced by ring automorphisms of `E × E`, companion matrices of the
/// quartic cyclotomic polynomials, and block sums of small blocks.
pub fn finite_order_catalog() -> Vec<(String, IntMatrix)> {
    let mut seen: BTreeSet<Vec<Vec<BigInt>>> = BTreeSet::new();
    let mut out = Vec::new();
    let mut push = |name: String, m: IntMatrix, out: &mut Vec<(String, IntMatrix)>| {
        let det = IntMatrix::identity(4).sub(&m).det();
        if det.is_zero() || m.multiplicative_order(24).is_none() {
            return;
        }
        if seen.insert(m.to_rows()) {
            out.push((name, m));
        }
    };
    for ring in [RingId::Gaussian, RingId::Eisenstein] {
        for h in linear_catalog(ring) {
            push(format!("{}:{h}", ring.name()), h.h1_matrix(), &mut out);
        }
    }
    for (name, low) in [("phi5", [1, 1, 1, 1]), ("phi8", [1, 0, 0, 0]), ("phi10", [1, -1, 1, -1]), ("phi12", [1, 0, -1, 0])] {
        push(name.to_string(), poly_from_low(&low), &mut out);
    }
    let minus_one = IntMatrix::from_rows(&[vec![-1]]);
    let blocks2 = [("phi3", poly_from_low(&[1, 1])), ("phi4", poly_from_low(&[1, 0])), ("phi6", poly_from_low(&[1, -1]))];
    let minus_two = IntMatrix::block_diag(&[&minus_one, &minus_one]);
    let mut pairs: Vec<(&str, &IntMatrix)> = blocks2.iter().map(|(n, m)| (*n, m)).collect();
    pairs.push(("-1,-1", &minus_two));
    for (na, a) in &pairs {
        for (nb, b) in &pairs {
            push(format!("{na}+{nb}"), IntMatrix::block_diag(&[a, b]), &mut out);
        }
    }
    out
}


/// Linear parts over `ring` with entries in `{0} ∪ units`, unit
/// determinant and finite order.
pub fn linear_catalog(ring: RingId) -> Vec<TorusEndo> {
    let mut entries = vec![RingElem::zero(ring)];
    entries.extend(ring.units());
    let mut out = Vec::new();
    for a in &entries {
        for b in &entries {
            for c in &entries {
                for d in &entries {
                    let Ok(h) = TorusEndo::new([[a.clone(), b.clone()], [c.clone(), d.clone()]]) else { continue };
                    if h.det().is_unit() && h.order().is_ok() {
                        out.push(h);
                    }
                }
            }
        }
    }
    out
}
