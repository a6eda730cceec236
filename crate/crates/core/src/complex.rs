//! Abstract simplicial complexes stored as explicit, face-closed simplex sets.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::{Error, Result};

/// Vertex label, unique within a complex.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

/// A nonempty, strictly increasing list of vertices.
///
/// Simplices order by dimension first and lexicographically within a
/// dimension, so iterating a complex visits vertices, then edges, and so on.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Simplex(Vec<VertexId>);

impl Simplex {
    pub fn new<I, V>(vertices: I) -> Result<Self>
    where
        I: IntoIterator<Item = V>,
        V: Into<VertexId>,
    {
        let mut vs: Vec<VertexId> = vertices.into_iter().map(Into::into).collect();
        if vs.is_empty() {
            return Err(Error::InvalidSimplex("empty vertex list".into()));
        }
        vs.sort_unstable();
        if vs.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidSimplex(format!("repeated vertex in {:?}", vs)));
        }
        Ok(Simplex(vs))
    }

    /// Builds a simplex from a list, sorting and removing repeats. Used for
    /// images under vertex maps.
    pub fn from_dedup<I: IntoIterator<Item = VertexId>>(vertices: I) -> Option<Self> {
        let set: BTreeSet<VertexId> = vertices.into_iter().collect();
        if set.is_empty() {
            None
        } else {
            Some(Simplex(set.into_iter().collect()))
        }
    }

    pub(crate) fn from_sorted_unchecked(vertices: Vec<VertexId>) -> Self {
        debug_assert!(!vertices.is_empty());
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Simplex(vertices)
    }

    pub fn vertex(v: impl Into<VertexId>) -> Self {
        Simplex(alloc::vec![v.into()])
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_face_of(&self, other: &Simplex) -> bool {
        self.0.iter().all(|v| other.contains(*v))
    }

    /// Every nonempty face, including the simplex itself.
    pub fn faces(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.0.len();
        assert!(n < 64, "simplex too large to enumerate faces");
        (1u64..(1u64 << n)).map(move |mask| self.face_from_mask(mask))
    }

    /// Faces of codimension one.
    pub fn facets(&self) -> impl Iterator<Item = Simplex> + '_ {
        let n = self.0.len();
        (0..n).filter(move |_| n > 1).map(move |skip| {
            Simplex(
                self.0
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| *i != skip)
                    .map(|(_, v)| *v)
                    .collect(),
            )
        })
    }

    /// The face selecting the vertices whose bit is set in `mask`.
    pub fn face_from_mask(&self, mask: u64) -> Simplex {
        Simplex(
            self.0
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, v)| *v)
                .collect(),
        )
    }

    /// `self` with `v` removed, or `None` if that leaves nothing.
    pub fn without(&self, v: VertexId) -> Option<Simplex> {
        let rest: Vec<VertexId> = self.0.iter().copied().filter(|w| *w != v).collect();
        if rest.is_empty() {
            None
        } else {
            Some(Simplex(rest))
        }
    }

    pub fn with_vertex(&self, v: VertexId) -> Simplex {
        let mut vs = self.0.clone();
        if let Err(pos) = vs.binary_search(&v) {
            vs.insert(pos, v);
        }
        Simplex(vs)
    }
}

impl Ord for Simplex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Simplex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", v)?;
        }
        f.write_str("}")
    }
}

/// A finite abstract simplicial complex, closed under taking nonempty faces.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimplicialComplex {
    simplices: BTreeSet<Simplex>,
    vertices: Vec<VertexId>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Closes a list of (typically maximal) simplices under faces.
    pub fn from_maximal<I: IntoIterator<Item = Simplex>>(generators: I) -> Self {
        let mut simplices = BTreeSet::new();
        for s in generators {
            if simplices.contains(&s) {
                continue;
            }
            simplices.extend(s.faces());
        }
        Self::from_closed_unchecked(simplices)
    }

    /// Convenience constructor from raw vertex lists.
    pub fn from_lists(lists: &[&[u32]]) -> Result<Self> {
        let gens = lists
            .iter()
            .map(|l| Simplex::new(l.iter().copied()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_maximal(gens))
    }

    /// Accepts an explicit simplex set, rejecting it unless face-closed.
    pub fn from_simplices<I: IntoIterator<Item = Simplex>>(simplices: I) -> Result<Self> {
        let set: BTreeSet<Simplex> = simplices.into_iter().collect();
        validate(&set)?;
        Ok(Self::from_closed_unchecked(set))
    }

    pub(crate) fn from_closed_unchecked(simplices: BTreeSet<Simplex>) -> Self {
        let vertices = simplices
            .iter()
            .take_while(|s| s.dim() == 0)
            .map(|s| s.0[0])
            .collect();
        SimplicialComplex { simplices, vertices }
    }

    /// Re-checks face closure. Always succeeds for a constructed complex.
    pub fn validate(&self) -> Result<()> {
        validate(&self.simplices)
    }

    pub fn simplices(&self) -> impl DoubleEndedIterator<Item = &Simplex> + Clone + '_ {
        self.simplices.iter()
    }

    pub fn simplex_set(&self) -> &BTreeSet<Simplex> {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.simplices.contains(s)
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// Dimension of the complex, `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.simplices.iter().next_back().map(Simplex::dim)
    }

    /// Number of simplices in each dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = Vec::new();
        for s in &self.simplices {
            if f.len() <= s.dim() {
                f.resize(s.dim() + 1, 0);
            }
            f[s.dim()] += 1;
        }
        f
    }

    /// Ordinary Euler characteristic of the (compact) realization.
    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .map(|s| if s.dim() % 2 == 0 { 1 } else { -1 })
            .sum()
    }

    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut out: Vec<Simplex> = Vec::new();
        for s in self.simplices.iter().rev() {
            if !out.iter().any(|m| s.is_face_of(m)) {
                out.push(s.clone());
            }
        }
        out.sort();
        out
    }

    fn require_vertex(&self, v: VertexId) -> Result<()> {
        if self.contains_vertex(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    /// Open star: every simplex containing `v`.
    pub fn star(&self, v: VertexId) -> Result<Vec<Simplex>> {
        self.require_vertex(v)?;
        Ok(self.simplices.iter().filter(|s| s.contains(v)).cloned().collect())
    }

    /// Closed star: the smallest subcomplex containing the open star.
    pub fn closed_star(&self, v: VertexId) -> Result<SimplicialComplex> {
        Ok(Self::from_maximal(self.star(v)?))
    }

    /// `{ σ : v ∉ σ, σ ∪ {v} ∈ X }`.
    pub fn link(&self, v: VertexId) -> Result<SimplicialComplex> {
        self.require_vertex(v)?;
        let set = self
            .simplices
            .iter()
            .filter(|s| s.contains(v))
            .filter_map(|s| s.without(v))
            .collect();
        Ok(Self::from_closed_unchecked(set))
    }

    /// Full subcomplex of the link of `v` spanned by the link vertices that
    /// satisfy `keep`.
    pub fn lower_link<F: Fn(VertexId) -> bool>(
        &self,
        v: VertexId,
        keep: F,
    ) -> Result<SimplicialComplex> {
        self.require_vertex(v)?;
        let set = self
            .simplices
            .iter()
            .filter(|s| s.contains(v))
            .filter_map(|s| s.without(v))
            .filter(|s| s.vertices().iter().all(|w| keep(*w)))
            .collect();
        Ok(Self::from_closed_unchecked(set))
    }

    /// Full subcomplex spanned by a vertex subset.
    pub fn full_subcomplex(&self, keep: &BTreeSet<VertexId>) -> SimplicialComplex {
        let set = self
            .simplices
            .iter()
            .filter(|s| s.vertices().iter().all(|v| keep.contains(v)))
            .cloned()
            .collect();
        Self::from_closed_unchecked(set)
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.simplices.is_subset(&other.simplices)
    }

    /// Number of `i`-simplices containing `v`, indexed by `i`.
    pub fn coface_counts(&self, v: VertexId) -> Result<Vec<usize>> {
        self.require_vertex(v)?;
        let mut counts = Vec::new();
        for s in self.simplices.iter().filter(|s| s.contains(v)) {
            if counts.len() <= s.dim() {
                counts.resize(s.dim() + 1, 0);
            }
            counts[s.dim()] += 1;
        }
        Ok(counts)
    }

    /// Open stars of all vertices at once.
    pub fn stars(&self) -> BTreeMap<VertexId, Vec<&Simplex>> {
        let mut out: BTreeMap<VertexId, Vec<&Simplex>> =
            self.vertices.iter().map(|v| (*v, Vec::new())).collect();
        for s in &self.simplices {
            for v in s.vertices() {
                out.get_mut(v).expect("vertex registered").push(s);
            }
        }
        out
    }

    /// Removes every simplex not meeting `keep` while preserving closure:
    /// the result is the subcomplex generated by the simplices that do.
    pub fn restrict_to_generators<F: Fn(&Simplex) -> bool>(&self, keep: F) -> SimplicialComplex {
        Self::from_maximal(self.simplices.iter().filter(|s| keep(s)).cloned())
    }
}

fn validate(simplices: &BTreeSet<Simplex>) -> Result<()> {
    for s in simplices {
        for face in s.facets() {
            if !simplices.contains(&face) {
                return Err(Error::MissingFace { simplex: s.clone(), face });
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn s(v: &[u32]) -> Simplex {
        Simplex::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn edge_with_endpoints_validates() {
        let c = SimplicialComplex::from_simplices([s(&[0]), s(&[1]), s(&[0, 1])]).unwrap();
        assert!(c.validate().is_ok());
        assert!(c.validate().is_ok());
    }

    #[test]
    fn bare_edge_is_missing_a_face() {
        let err = SimplicialComplex::from_simplices([s(&[0, 1])]).unwrap_err();
        assert!(matches!(err, Error::MissingFace { .. }));
    }

    #[test]
    fn full_triangle_validates() {
        let all: Vec<Simplex> = s(&[0, 1, 2]).faces().collect();
        assert_eq!(all.len(), 7);
        assert!(SimplicialComplex::from_simplices(all).is_ok());
    }

    #[test]
    fn simplex_rejects_repeats_and_empties() {
        assert!(Simplex::new([1u32, 1]).is_err());
        assert!(Simplex::new(Vec::<u32>::new()).is_err());
        assert_eq!(s(&[2, 0, 1]).vertices(), &[VertexId(0), VertexId(1), VertexId(2)]);
    }

    #[test]
    fn link_of_triangle_apex_is_opposite_edge() {
        let c = SimplicialComplex::from_lists(&[&[0, 1, 2]]).unwrap();
        let link = c.link(VertexId(0)).unwrap();
        assert_eq!(link.len(), 3);
        assert!(link.contains(&s(&[1, 2])));
    }

    #[test]
    fn link_in_path_graph() {
        let c = SimplicialComplex::from_lists(&[&[0, 1], &[1, 2]]).unwrap();
        let link = c.link(VertexId(1)).unwrap();
        assert_eq!(link.simplices().cloned().collect::<Vec<_>>(), vec![s(&[0]), s(&[2])]);
    }

    #[test]
    fn link_of_octahedron_vertex_is_four_cycle() {
        let c = crate::fixtures::octahedron().0;
        let v = VertexId(0);
        let link = c.link(v).unwrap();
        // Brute force: σ with v ∉ σ and σ ∪ {v} ∈ X.
        let brute: BTreeSet<Simplex> = c
            .simplices()
            .filter(|t| !t.contains(v) && c.contains(&t.with_vertex(v)))
            .cloned()
            .collect();
        assert_eq!(link.simplex_set(), &brute);
        assert_eq!(link.len(), 8);
        assert_eq!(link.f_vector(), vec![4, 4]);
        assert_eq!(link.euler_characteristic(), 0);
    }

    #[test]
    fn unknown_vertex() {
        let c = SimplicialComplex::from_lists(&[&[0, 1]]).unwrap();
        assert_eq!(c.link(VertexId(7)).unwrap_err(), Error::UnknownVertex(VertexId(7)));
        assert!(c.star(VertexId(7)).is_err());
    }

    #[test]
    fn star_and_maximal() {
        let c = SimplicialComplex::from_lists(&[&[0, 1, 2], &[2, 3]]).unwrap();
        assert_eq!(c.star(VertexId(2)).unwrap().len(), 5);
        assert_eq!(c.maximal_simplices(), vec![s(&[2, 3]), s(&[0, 1, 2])]);
        assert_eq!(c.dim(), Some(2));
        assert_eq!(c.euler_characteristic(), 1);
        assert_eq!(c.coface_counts(VertexId(2)).unwrap(), vec![1, 3, 1]);
    }

    #[test]
    fn ordering_is_by_dimension_first() {
        assert!(s(&[5]) < s(&[0, 1]));
        assert!(s(&[0, 2]) < s(&[1, 2]));
    }
}
