//! Products of simplicial complexes, kept as cell complexes of simplex pairs.

use alloc::vec::Vec;
use core::fmt;

use crate::complex::{Simplex, SimplicialComplex, VertexId};

/// The open cell `σ̊ × τ̊`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProductCell {
    pub left: Simplex,
    pub right: Simplex,
}

impl ProductCell {
    pub fn new(left: Simplex, right: Simplex) -> Self {
        ProductCell { left, right }
    }

    pub fn dim(&self) -> usize {
        self.left.dim() + self.right.dim()
    }

    pub fn vertices(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.left
            .vertices()
            .iter()
            .flat_map(move |u| self.right.vertices().iter().map(move |v| (*u, *v)))
    }

    pub fn contains_vertex(&self, (u, v): (VertexId, VertexId)) -> bool {
        self.left.contains(u) && self.right.contains(v)
    }
}

impl fmt::Display for ProductCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.left, self.right)
    }
}

/// All cells `σ × τ` for `σ` in the left factor and `τ` in the right one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductCellComplex {
    left: SimplicialComplex,
    right: SimplicialComplex,
}

impl ProductCellComplex {
    pub fn new(left: SimplicialComplex, right: SimplicialComplex) -> Self {
        ProductCellComplex { left, right }
    }

    pub fn left(&self) -> &SimplicialComplex {
        &self.left
    }

    pub fn right(&self) -> &SimplicialComplex {
        &self.right
    }

    pub fn cells(&self) -> impl Iterator<Item = ProductCell> + '_ {
        self.left.simplices().flat_map(move |s| {
            self.right.simplices().map(move |t| ProductCell::new(s.clone(), t.clone()))
        })
    }

    pub fn len(&self) -> usize {
        self.left.len() * self.right.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, c: &ProductCell) -> bool {
        self.left.contains(&c.left) && self.right.contains(&c.right)
    }

    pub fn vertices(&self) -> Vec<(VertexId, VertexId)> {
        self.left
            .vertices()
            .iter()
            .flat_map(|u| self.right.vertices().iter().map(move |v| (*u, *v)))
            .collect()
    }

    pub fn dim(&self) -> Option<usize> {
        Some(self.left.dim()? + self.right.dim()?)
    }

    /// Faces of a cell: products of faces of its factors.
    pub fn faces_of(c: &ProductCell) -> impl Iterator<Item = ProductCell> + '_ {
        c.left
            .faces()
            .flat_map(move |s| c.right.faces().map(move |t| ProductCell::new(s.clone(), t)))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.left.euler_characteristic() * self.right.euler_characteristic()
    }
}

/// `X × Y` as a cell complex.
pub fn product(left: &SimplicialComplex, right: &SimplicialComplex) -> ProductCellComplex {
    ProductCellComplex::new(left.clone(), right.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn count_by_dim(p: &ProductCellComplex) -> Vec<usize> {
        let mut f = vec![0; p.dim().unwrap() + 1];
        for c in p.cells() {
            f[c.dim()] += 1;
        }
        f
    }

    #[test]
    fn edge_times_edge_is_a_square() {
        let e = SimplicialComplex::from_lists(&[&[0, 1]]).unwrap();
        let sq = product(&e, &e);
        assert_eq!(sq.len(), 9);
        assert_eq!(count_by_dim(&sq), vec![4, 4, 1]);
    }

    #[test]
    fn hollow_triangle_times_edge() {
        let h = SimplicialComplex::from_lists(&[&[0, 1], &[1, 2], &[0, 2]]).unwrap();
        let e = SimplicialComplex::from_lists(&[&[0, 1]]).unwrap();
        assert_eq!(product(&h, &e).len(), 18);
        assert_eq!(product(&h, &e).euler_characteristic(), 0);
    }

    #[test]
    fn point_factor_is_neutral() {
        let pt = SimplicialComplex::from_lists(&[&[0]]).unwrap();
        let t = SimplicialComplex::from_lists(&[&[0, 1, 2]]).unwrap();
        let p = product(&t, &pt);
        let cells: Vec<Simplex> = p.cells().map(|c| c.left).collect();
        let orig: Vec<Simplex> = t.simplices().cloned().collect();
        assert_eq!(cells, orig);
        assert!(p.cells().all(|c| c.dim() == c.left.dim()));
    }

    #[test]
    fn faces_stay_in_the_product() {
        let t = SimplicialComplex::from_lists(&[&[0, 1, 2]]).unwrap();
        let e = SimplicialComplex::from_lists(&[&[0, 1]]).unwrap();
        let p = product(&t, &e);
        for c in p.cells() {
            assert!(ProductCellComplex::faces_of(&c).all(|f| p.contains(&f)));
        }
    }
}
