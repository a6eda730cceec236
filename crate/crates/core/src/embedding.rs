//! Complexes with vertex coordinates in a Euclidean space.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::complex::{Simplex, SimplicialComplex, VertexId};
use crate::{Error, Result};

/// Relative tolerance for detecting affinely dependent vertices.
const DEGENERACY_TOL: f64 = 1e-10;

/// Linear embedding of a complex in `R^N`, one point per vertex.
///
/// Every simplex spans a nondegenerate affine simplex.
#[derive(Clone, Debug, PartialEq)]
pub struct Embedding {
    complex: SimplicialComplex,
    coords: BTreeMap<VertexId, Vec<f64>>,
    ambient: usize,
}

impl Embedding {
    pub fn new(complex: SimplicialComplex, coords: BTreeMap<VertexId, Vec<f64>>) -> Result<Self> {
        let mut ambient = None;
        for v in complex.vertices() {
            let p = coords.get(v).ok_or(Error::UnknownVertex(*v))?;
            match ambient {
                None => ambient = Some(p.len()),
                Some(n) if n != p.len() => {
                    return Err(Error::DimensionMismatch { expected: n, found: p.len() })
                }
                _ => {}
            }
            if p.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidParameter("non-finite coordinate".into()));
            }
        }
        let ambient = ambient.unwrap_or(0);
        if ambient == 0 && !complex.is_empty() {
            return Err(Error::DimensionMismatch { expected: 1, found: 0 });
        }
        let coords = coords.into_iter().filter(|(v, _)| complex.contains_vertex(*v)).collect();
        let e = Embedding { complex, coords, ambient };
        for s in e.complex.maximal_simplices() {
            if !e.is_affinely_independent(&s) {
                return Err(Error::DegenerateSimplex(s));
            }
        }
        Ok(e)
    }

    /// Vertex `v ↦ (√2/2)·e_v` in `R^{#vertices}`: every edge has length one
    /// and every simplex is regular.
    pub fn equilateral(complex: &SimplicialComplex) -> Self {
        let n = complex.vertices().len();
        let scale = core::f64::consts::FRAC_1_SQRT_2;
        let coords = complex
            .vertices()
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let mut p = vec![0.0; n];
                p[i] = scale;
                (*v, p)
            })
            .collect();
        Embedding { complex: complex.clone(), coords, ambient: n }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn point(&self, v: VertexId) -> Result<&[f64]> {
        self.coords.get(&v).map(Vec::as_slice).ok_or(Error::UnknownVertex(v))
    }

    pub fn coordinates(&self) -> &BTreeMap<VertexId, Vec<f64>> {
        &self.coords
    }

    /// Restriction to a subcomplex.
    pub fn restrict(&self, sub: &SimplicialComplex) -> Result<Self> {
        if !sub.is_subcomplex_of(&self.complex) {
            return Err(Error::PieceNotSubcomplex(0));
        }
        let coords = sub.vertices().iter().map(|v| (*v, self.coords[v].clone())).collect();
        Ok(Embedding { complex: sub.clone(), coords, ambient: self.ambient })
    }

    /// Applies `f` to every point. The result is re-validated.
    pub fn map_points<F: FnMut(&[f64]) -> Vec<f64>>(&self, mut f: F) -> Result<Self> {
        let coords = self.coords.iter().map(|(v, p)| (*v, f(p))).collect();
        Embedding::new(self.complex.clone(), coords)
    }

    /// `p(v) - p(w)` for each other vertex `w` of `s`.
    pub fn cone_generators(&self, s: &Simplex, v: VertexId) -> Result<Vec<Vec<f64>>> {
        if !s.contains(v) {
            return Err(Error::UnknownVertex(v));
        }
        let pv = self.point(v)?;
        s.vertices()
            .iter()
            .filter(|w| **w != v)
            .map(|w| Ok(sub(pv, self.point(*w)?)))
            .collect()
    }

    fn is_affinely_independent(&self, s: &Simplex) -> bool {
        let vs = s.vertices();
        if vs.len() == 1 {
            return true;
        }
        if vs.len() - 1 > self.ambient {
            return false;
        }
        let p0 = &self.coords[&vs[0]];
        let diffs: Vec<Vec<f64>> = vs[1..].iter().map(|w| sub(&self.coords[w], p0)).collect();
        let scale = diffs.iter().map(|d| norm(d)).fold(0.0, f64::max);
        if scale == 0.0 {
            return false;
        }
        // Modified Gram-Schmidt; a small residual means dependence.
        let mut basis: Vec<Vec<f64>> = Vec::new();
        for d in diffs {
            let mut r = d;
            for b in &basis {
                let c = dot(&r, b);
                for (x, y) in r.iter_mut().zip(b) {
                    *x -= c * y;
                }
            }
            let n = norm(&r);
            if n <= DEGENERACY_TOL * scale {
                return false;
            }
            basis.push(r.iter().map(|x| x / n).collect());
        }
        true
    }
}

pub(crate) fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    libm::sqrt(dot(a, a))
}
