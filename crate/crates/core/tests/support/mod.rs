//! Shared helpers for the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use curvcalc_core::complex::{Simplex, SimplicialComplex, VertexId};
use curvcalc_core::map::SimplicialMap;
use curvcalc_core::rational::{int, Rational};
use curvcalc_core::ConstructibleFunction;
use num_traits::{One, Signed, Zero};
use rand::Rng;

/// Small complexes with at most five vertices.
pub fn small_complexes() -> Vec<SimplicialComplex> {
    let lists: &[&[&[u32]]] = &[
        &[&[0]],
        &[&[0], &[1]],
        &[&[0, 1]],
        &[&[0, 1], &[1, 2]],
        &[&[0, 1], &[1, 2], &[0, 2]],
        &[&[0, 1, 2]],
        &[&[0, 1, 2], &[1, 2, 3]],
        &[&[0, 1, 2], &[2, 3], &[4]],
        &[&[0, 1, 2, 3]],
        &[&[0, 1], &[1, 2], &[2, 3], &[3, 4], &[0, 4]],
    ];
    lists.iter().map(|l| SimplicialComplex::from_lists(l).unwrap()).collect()
}

/// Every simplicial vertex map from `source` to `target`.
pub fn all_maps(source: &SimplicialComplex, target: &SimplicialComplex) -> Vec<SimplicialMap> {
    let sv = source.vertices();
    let tv = target.vertices();
    let mut out = Vec::new();
    let mut digits = vec![0usize; sv.len()];
    loop {
        let vm: BTreeMap<VertexId, VertexId> = sv.iter().zip(&digits).map(|(v, d)| (*v, tv[*d])).collect();
        if let Ok(f) = SimplicialMap::new(source.clone(), target.clone(), vm) {
            out.push(f);
        }
        let mut i = 0;
        loop {
            if i == digits.len() {
                return out;
            }
            digits[i] += 1;
            if digits[i] < tv.len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

pub fn random_function<R: Rng>(rng: &mut R, c: &SimplicialComplex) -> ConstructibleFunction<Simplex> {
    let coeffs = curvcalc_core::fixtures::random_coeffs(rng, c.simplices().cloned());
    ConstructibleFunction::new(c, coeffs).unwrap()
}

/// A random point of the open simplex `tau`, as positive rational
/// barycentric weights keyed by vertex.
pub fn random_interior_point<R: Rng>(rng: &mut R, tau: &Simplex) -> BTreeMap<VertexId, Rational> {
    let raw: Vec<i64> = tau.vertices().iter().map(|_| rng.random_range(1..=9)).collect();
    let total: i64 = raw.iter().sum();
    tau.vertices().iter().zip(raw).map(|(v, r)| (*v, Rational::new(r.into(), total.into()))).collect()
}

/// Rank of a rational matrix by Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|i| !rows[*i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let k = &row[c] / &pivot[c];
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= &k * p;
                }
            }
        }
        r += 1;
    }
    r
}

/// `χ_c` of `f⁻¹(y) ∩ σ̊` found by solving for barycentric weights `μ` on
/// `σ` with `Σ_{u ↦ t} μ_u = y_t` for every target vertex `t` and all
/// `μ > 0`. The solution set is an open convex cell of dimension
/// `|σ| − rank`, or empty.
pub fn fiber_cell_chi(f: &SimplicialMap, sigma: &Simplex, y: &BTreeMap<VertexId, Rational>) -> i64 {
    let verts = sigma.vertices();
    let mut targets: Vec<VertexId> = verts.iter().map(|u| f.apply(*u).unwrap()).collect();
    targets.extend(y.keys().copied());
    targets.sort();
    targets.dedup();
    let zero = Rational::zero();
    let mut aug = Vec::new();
    for t in &targets {
        let mut row: Vec<Rational> =
            verts.iter().map(|u| if f.apply(*u).unwrap() == *t { Rational::one() } else { Rational::zero() }).collect();
        row.push(y.get(t).cloned().unwrap_or_else(Rational::zero));
        aug.push(row);
    }
    let coeff: Vec<Vec<Rational>> = aug.iter().map(|r| r[..verts.len()].to_vec()).collect();
    let rk = rank(coeff);
    if rank(aug.clone()) != rk {
        return 0;
    }
    // Split each target weight evenly over its preimages; every equation has
    // a disjoint 0/1 support, so this solves the system when consistent.
    let mu: Vec<Rational> = verts
        .iter()
        .map(|u| {
            let t = f.apply(*u).unwrap();
            let group = verts.iter().filter(|w| f.apply(**w).unwrap() == t).count() as i64;
            y.get(&t).unwrap_or(&zero) / int(group)
        })
        .collect();
    if mu.iter().any(|m| !m.is_positive()) {
        return 0;
    }
    for row in &aug {
        let lhs: Rational = row[..verts.len()].iter().zip(&mu).map(|(a, m)| a * m).sum();
        assert_eq!(&lhs, &row[verts.len()]);
    }
    let d = verts.len() - rk;
    if d.is_multiple_of(2) { 1 } else { -1 }
}

/// `∫_{f⁻¹(y)} s dχ`, cell by cell.
pub fn fiber_integral(f: &SimplicialMap, s: &ConstructibleFunction<Simplex>, y: &BTreeMap<VertexId, Rational>) -> Rational {
    s.coefficients().iter().map(|(sigma, c)| c * int(fiber_cell_chi(f, sigma, y))).sum()
}
