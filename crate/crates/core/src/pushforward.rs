//! Pushforward of constructible functions along simplicial maps, and the two
//! Fubini theorems on product complexes.
//!
//! A simplicial map sends the open simplex `σ̊` affinely onto `f(σ)˚`, and
//! every fiber over a point of `f(σ)˚` is an open cell of dimension
//! `dim σ − dim f(σ)`. Hence `f_*(1_σ̊) = (-1)^{dim σ − dim f(σ)}·1_{f(σ)˚}`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::complex::{Simplex, VertexId};
use crate::curvature::{banchoff_curvature, product_curvature, Method};
use crate::embedding::Embedding;
use crate::euler::{Carrier, ConstructibleFunction, EulerValue};
use crate::map::SimplicialMap;
use crate::product::{ProductCell, ProductCellComplex};
use crate::rational::{sign, Rational};
use crate::sampling::{Estimate, SampleConfig};
use crate::{Error, Result};

/// `f_*(s)`, a constructible function on the whole target complex.
pub fn pushforward(f: &SimplicialMap, s: &ConstructibleFunction<Simplex>) -> Result<ConstructibleFunction<Simplex>> {
    let mut out: BTreeMap<Simplex, Rational> = BTreeMap::new();
    for (sigma, c) in s.coefficients() {
        if !f.source().contains_cell(sigma) {
            return Err(Error::CarrierMismatch);
        }
        let tau = f.image(sigma)?;
        let k = sign(sigma.dim() - tau.dim());
        *out.entry(tau).or_insert_with(Rational::zero) += c * k;
    }
    Ok(ConstructibleFunction::from_coeffs_unchecked(out))
}

/// The open source simplices lying over `τ̊`, with their signed
/// contributions `(-1)^{dim σ − dim τ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fiber {
    pub base: Simplex,
    pub cells: Vec<(Simplex, i64)>,
}

impl Fiber {
    /// `χ_c` of the fiber over any point of `τ̊`.
    pub fn chi_c(&self) -> i64 {
        self.cells.iter().map(|(_, k)| k).sum()
    }
}

pub fn fiber(f: &SimplicialMap, tau: &Simplex) -> Result<Fiber> {
    if !f.target().contains(tau) {
        return Err(Error::UnknownSimplex(tau.clone()));
    }
    let mut cells = Vec::new();
    for sigma in f.source().simplices() {
        if f.image(sigma)? == *tau {
            let k = if (sigma.dim() - tau.dim()).is_multiple_of(2) { 1 } else { -1 };
            cells.push((sigma.clone(), k));
        }
    }
    Ok(Fiber { base: tau.clone(), cells })
}

/// `f_*(1_X)` evaluated on `τ̊`.
pub fn fiber_euler(f: &SimplicialMap, tau: &Simplex) -> Result<i64> {
    Ok(fiber(f, tau)?.chi_c())
}

/// Whether `(f∘g)_*(s) = f_*(g_*(s))`.
pub fn check_functoriality(
    f: &SimplicialMap,
    g: &SimplicialMap,
    s: &ConstructibleFunction<Simplex>,
) -> Result<bool> {
    let fg = f.compose(g)?;
    Ok(pushforward(&fg, s)? == pushforward(f, &pushforward(g, s)?)?)
}

/// Integrates out the left factor: `τ ↦ Σ_σ s(σ×τ)·(-1)^dim σ`.
pub fn integrate_left(s: &ConstructibleFunction<ProductCell>) -> ConstructibleFunction<Simplex> {
    let mut out: BTreeMap<Simplex, Rational> = BTreeMap::new();
    for (c, v) in s.coefficients() {
        *out.entry(c.right.clone()).or_insert_with(Rational::zero) += v * sign(c.left.dim());
    }
    ConstructibleFunction::from_coeffs_unchecked(out)
}

/// Integrates out the right factor: `σ ↦ Σ_τ s(σ×τ)·(-1)^dim τ`.
pub fn integrate_right(s: &ConstructibleFunction<ProductCell>) -> ConstructibleFunction<Simplex> {
    let mut out: BTreeMap<Simplex, Rational> = BTreeMap::new();
    for (c, v) in s.coefficients() {
        *out.entry(c.left.clone()).or_insert_with(Rational::zero) += v * sign(c.right.dim());
    }
    ConstructibleFunction::from_coeffs_unchecked(out)
}

/// The product integral computed directly and by both iterated orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FubiniTriple {
    pub direct: EulerValue,
    /// Left factor first, then the right.
    pub left_first: EulerValue,
    pub right_first: EulerValue,
}

impl FubiniTriple {
    pub fn agrees(&self) -> bool {
        self.direct == self.left_first && self.direct == self.right_first
    }
}

pub fn fubini_chi(carrier: &ProductCellComplex, s: &ConstructibleFunction<ProductCell>) -> Result<FubiniTriple> {
    if let Some(c) = s.coefficients().keys().find(|c| !carrier.contains(c)) {
        return Err(Error::ForeignCell(alloc::string::ToString::to_string(c)));
    }
    Ok(FubiniTriple {
        direct: s.euler_integral(),
        left_first: integrate_left(s).euler_integral(),
        right_first: integrate_right(s).euler_integral(),
    })
}

/// One product vertex: the curvature of the product against the product of
/// the factor curvatures.
#[derive(Clone, Debug, PartialEq)]
pub struct ProductCurvatureRow {
    pub vertex: (VertexId, VertexId),
    pub product: Estimate,
    pub factors: Estimate,
}

impl ProductCurvatureRow {
    /// `|product − factors| ≤ k·(σ_product + σ_factors)`, plus a float slack.
    pub fn agrees(&self, k: f64) -> bool {
        (self.product.value - self.factors.value).abs() <= k * (self.product.stderr + self.factors.stderr) + 1e-12
    }
}

fn factor_curvature(e: &Embedding, v: VertexId, cfg: SampleConfig) -> Result<Estimate> {
    match banchoff_curvature(e, v, Method::Exact) {
        Err(Error::ExactUnavailable(_)) => banchoff_curvature(e, v, Method::MonteCarlo(cfg)),
        r => r,
    }
}

fn product_estimate(a: Estimate, b: Estimate) -> Estimate {
    Estimate::new(
        a.value * b.value,
        a.value.abs() * b.stderr + b.value.abs() * a.stderr + a.stderr * b.stderr,
    )
}

/// Compares Monte Carlo curvature of `X × Y ⊂ R^{N+M}` with `κ_X(u)·κ_Y(v)`
/// at every product vertex.
pub fn fubini_curvature(left: &Embedding, right: &Embedding, cfg: SampleConfig) -> Result<Vec<ProductCurvatureRow>> {
    let prod = product_curvature(left, right, cfg)?;
    let mut kl = BTreeMap::new();
    for u in left.complex().vertices() {
        kl.insert(*u, factor_curvature(left, *u, cfg)?);
    }
    let mut kr = BTreeMap::new();
    for v in right.complex().vertices() {
        kr.insert(*v, factor_curvature(right, *v, cfg)?);
    }
    Ok(prod
        .into_iter()
        .map(|((u, v), p)| ProductCurvatureRow { vertex: (u, v), product: p, factors: product_estimate(kl[&u], kr[&v]) })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::SimplicialComplex;
    use crate::fixtures;
    use crate::rational::int;

    #[test]
    fn identity_pushforward_is_trivial() {
        let (c, _) = fixtures::octahedron();
        let id = SimplicialMap::identity(&c);
        let s = ConstructibleFunction::one(&c);
        assert_eq!(pushforward(&id, &s).unwrap(), s);
        assert_eq!(fiber_euler(&id, &Simplex::new([0u32, 2, 4]).unwrap()).unwrap(), 1);
    }

    #[test]
    fn constant_map_gives_euler_characteristic() {
        let (c, _) = fixtures::octahedron();
        let f = SimplicialMap::constant(&c, VertexId(0));
        let p = pushforward(&f, &ConstructibleFunction::one(&c)).unwrap();
        assert_eq!(p.get(&Simplex::vertex(0u32)), int(2));
    }

    #[test]
    fn octahedron_height_fibers() {
        let f = fixtures::octahedron_height_map();
        let p = pushforward(&f, &ConstructibleFunction::one(f.source())).unwrap();
        assert_eq!(p.get(&Simplex::vertex(0u32)), int(1));
        assert_eq!(p.get(&Simplex::vertex(2u32)), int(1));
        assert_eq!(p.get(&Simplex::vertex(1u32)), int(0));
        assert_eq!(p.get(&Simplex::new([0u32, 1]).unwrap()), int(0));
        assert_eq!(p.euler_integral(), int(2));
        assert_eq!(fiber_euler(&f, &Simplex::vertex(1u32)).unwrap(), 0);
    }

    #[test]
    fn staircase_square_projects_to_closed_edge_fibers() {
        let (sq, _) = fixtures::square();
        let edge = SimplicialComplex::from_lists(&[&[0, 1]]).unwrap();
        // x-coordinate: vertices 0, 2 at x = 0; 1, 3 at x = 1.
        let vm = [(0, 0), (1, 1), (2, 0), (3, 1)].into_iter().map(|(a, b)| (VertexId(a), VertexId(b))).collect();
        let f = SimplicialMap::new(sq, edge, vm).unwrap();
        for tau in f.target().simplices() {
            assert_eq!(fiber_euler(&f, tau).unwrap(), 1);
        }
    }

    #[test]
    fn pushforward_of_nonnegative_can_be_negative() {
        // A filled triangle folded onto an edge: the open triangle and its
        // open edge over the same base edge give 1·(-1) + 0 = -1 there.
        let t = SimplicialComplex::from_lists(&[&[0, 1, 2]]).unwrap();
        let edge = SimplicialComplex::from_lists(&[&[0, 1]]).unwrap();
        let vm = [(0, 0), (1, 1), (2, 1)].into_iter().map(|(a, b)| (VertexId(a), VertexId(b))).collect();
        let f = SimplicialMap::new(t.clone(), edge, vm).unwrap();
        let s = ConstructibleFunction::indicator(&t, [&Simplex::new([0u32, 1, 2]).unwrap()]).unwrap();
        let p = pushforward(&f, &s).unwrap();
        assert_eq!(p.get(&Simplex::new([0u32, 1]).unwrap()), int(-1));
    }

    #[test]
    fn foreign_function_is_rejected() {
        let (c, _) = fixtures::segment();
        let id = SimplicialMap::identity(&c);
        let (oct, _) = fixtures::octahedron();
        let s = ConstructibleFunction::one(&oct);
        assert_eq!(pushforward(&id, &s).unwrap_err(), Error::CarrierMismatch);
    }

    #[test]
    fn fubini_on_a_single_cell() {
        let t = SimplicialComplex::from_lists(&[&[0, 1, 2]]).unwrap();
        let e = SimplicialComplex::from_lists(&[&[0, 1]]).unwrap();
        let p = ProductCellComplex::new(t, e);
        let cell = ProductCell::new(Simplex::new([0u32, 1]).unwrap(), Simplex::new([0u32, 1]).unwrap());
        let s = ConstructibleFunction::indicator(&p, [&cell]).unwrap();
        let r = fubini_chi(&p, &s).unwrap();
        assert!(r.agrees());
        assert_eq!(r.direct, int(1));
    }
}
