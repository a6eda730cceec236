//! Simplicial maps between complexes.

use alloc::collections::BTreeMap;

use crate::complex::{Simplex, SimplicialComplex, VertexId};
use crate::{Error, Result};

/// A vertex map sending every simplex of the source onto a simplex of the
/// target (repeated image vertices collapse).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    source: SimplicialComplex,
    target: SimplicialComplex,
    vertex_map: BTreeMap<VertexId, VertexId>,
}

impl SimplicialMap {
    pub fn new(
        source: SimplicialComplex,
        target: SimplicialComplex,
        vertex_map: BTreeMap<VertexId, VertexId>,
    ) -> Result<Self> {
        for v in source.vertices() {
            let w = vertex_map.get(v).ok_or(Error::UnknownVertex(*v))?;
            if !target.contains_vertex(*w) {
                return Err(Error::UnknownVertex(*w));
            }
        }
        let map = SimplicialMap { source, target, vertex_map };
        for s in map.source.simplices() {
            if !map.target.contains(&map.image_unchecked(s)) {
                return Err(Error::NotSimplicial(s.clone()));
            }
        }
        Ok(map)
    }

    pub fn identity(complex: &SimplicialComplex) -> Self {
        let vertex_map = complex.vertices().iter().map(|v| (*v, *v)).collect();
        SimplicialMap { source: complex.clone(), target: complex.clone(), vertex_map }
    }

    /// The map collapsing `complex` onto the one-point complex `{target}`.
    pub fn constant(complex: &SimplicialComplex, target: VertexId) -> Self {
        let vertex_map = complex.vertices().iter().map(|v| (*v, target)).collect();
        SimplicialMap {
            source: complex.clone(),
            target: SimplicialComplex::from_maximal([Simplex::vertex(target)]),
            vertex_map,
        }
    }

    pub fn source(&self) -> &SimplicialComplex {
        &self.source
    }

    pub fn target(&self) -> &SimplicialComplex {
        &self.target
    }

    pub fn vertex_map(&self) -> &BTreeMap<VertexId, VertexId> {
        &self.vertex_map
    }

    pub fn apply(&self, v: VertexId) -> Result<VertexId> {
        self.vertex_map.get(&v).copied().ok_or(Error::UnknownVertex(v))
    }

    /// Image simplex of a source simplex.
    pub fn image(&self, s: &Simplex) -> Result<Simplex> {
        if !self.source.contains(s) {
            return Err(Error::UnknownSimplex(s.clone()));
        }
        Ok(self.image_unchecked(s))
    }

    fn image_unchecked(&self, s: &Simplex) -> Simplex {
        Simplex::from_dedup(s.vertices().iter().map(|v| self.vertex_map[v]))
            .expect("simplices are nonempty")
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &SimplicialMap) -> Result<SimplicialMap> {
        if inner.target != self.source {
            return Err(Error::NotComposable);
        }
        let vertex_map = inner
            .vertex_map
            .iter()
            .map(|(v, w)| (*v, self.vertex_map[w]))
            .collect();
        Ok(SimplicialMap { source: inner.source.clone(), target: self.target.clone(), vertex_map })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_simplicial_vertex_maps() {
        let edge = SimplicialComplex::from_lists(&[&[0, 1]]).unwrap();
        let two_points = SimplicialComplex::from_lists(&[&[0], &[1]]).unwrap();
        let vm = [(VertexId(0), VertexId(0)), (VertexId(1), VertexId(1))].into_iter().collect();
        let err = SimplicialMap::new(edge, two_points, vm).unwrap_err();
        assert!(matches!(err, Error::NotSimplicial(_)));
    }

    #[test]
    fn collapsing_an_edge_is_simplicial() {
        let edge = SimplicialComplex::from_lists(&[&[0, 1]]).unwrap();
        let f = SimplicialMap::constant(&edge, VertexId(9));
        let e = Simplex::new([0u32, 1]).unwrap();
        assert_eq!(f.image(&e).unwrap(), Simplex::vertex(9u32));
    }

    #[test]
    fn composition_requires_matching_carriers() {
        let edge = SimplicialComplex::from_lists(&[&[0, 1]]).unwrap();
        let tri = SimplicialComplex::from_lists(&[&[0, 1, 2]]).unwrap();
        let f = SimplicialMap::identity(&edge);
        let g = SimplicialMap::identity(&tri);
        assert_eq!(f.compose(&g).unwrap_err(), Error::NotComposable);
        assert_eq!(f.compose(&f).unwrap(), f);
    }
}
