//! Piecewise-linear functions given by exact rational vertex values.

use alloc::collections::BTreeMap;

use crate::complex::{Simplex, SimplicialComplex, VertexId};
use crate::rational::{self, Rational};
use crate::{Error, Result};

/// Vertex values, extended affinely over each simplex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlFunction {
    values: BTreeMap<VertexId, Rational>,
}

impl PlFunction {
    /// Fails with `MissingValue` unless every vertex of `complex` has a value.
    pub fn new(complex: &SimplicialComplex, values: BTreeMap<VertexId, Rational>) -> Result<Self> {
        let f = PlFunction { values };
        f.check_on(complex)?;
        Ok(f)
    }

    pub fn from_fn<F: FnMut(VertexId) -> Rational>(complex: &SimplicialComplex, mut f: F) -> Self {
        PlFunction { values: complex.vertices().iter().map(|v| (*v, f(*v))).collect() }
    }

    pub fn constant(complex: &SimplicialComplex, c: Rational) -> Self {
        Self::from_fn(complex, |_| c.clone())
    }

    pub fn check_on(&self, complex: &SimplicialComplex) -> Result<()> {
        match complex.vertices().iter().find(|v| !self.values.contains_key(v)) {
            Some(v) => Err(Error::MissingValue(*v)),
            None => Ok(()),
        }
    }

    pub fn value(&self, v: VertexId) -> Result<&Rational> {
        self.values.get(&v).ok_or(Error::MissingValue(v))
    }

    pub fn values(&self) -> &BTreeMap<VertexId, Rational> {
        &self.values
    }

    /// Value at the barycenter: the mean of the vertex values.
    pub fn at_barycenter(&self, s: &Simplex) -> Result<Rational> {
        let vals = s.vertices().iter().map(|v| self.value(*v)).collect::<Result<alloc::vec::Vec<_>>>()?;
        Ok(rational::mean(vals))
    }

    /// Infimum over the closed simplex, attained at a vertex.
    pub fn min_on(&self, s: &Simplex) -> Result<Rational> {
        self.extremum(s, |a, b| a < b)
    }

    /// Supremum over the closed simplex, attained at a vertex.
    pub fn max_on(&self, s: &Simplex) -> Result<Rational> {
        self.extremum(s, |a, b| a > b)
    }

    fn extremum(&self, s: &Simplex, better: impl Fn(&Rational, &Rational) -> bool) -> Result<Rational> {
        let mut best: Option<&Rational> = None;
        for v in s.vertices() {
            let x = self.value(*v)?;
            if best.is_none_or(|b| better(x, b)) {
                best = Some(x);
            }
        }
        Ok(best.expect("simplices are nonempty").clone())
    }

    /// Restriction to the vertices of a subcomplex.
    pub fn restrict(&self, sub: &SimplicialComplex) -> Result<Self> {
        let values = sub
            .vertices()
            .iter()
            .map(|v| self.value(*v).map(|x| (*v, x.clone())))
            .collect::<Result<_>>()?;
        Ok(PlFunction { values })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn barycenter_is_mean() {
        let c = SimplicialComplex::from_lists(&[&[0, 1, 2]]).unwrap();
        let f = PlFunction::from_fn(&c, |v| int(v.0 as i64));
        let top = Simplex::new([0u32, 1, 2]).unwrap();
        assert_eq!(f.at_barycenter(&top).unwrap(), int(1));
        assert_eq!(f.min_on(&top).unwrap(), int(0));
        assert_eq!(f.max_on(&top).unwrap(), int(2));
    }

    #[test]
    fn missing_value_is_reported() {
        let c = SimplicialComplex::from_lists(&[&[0, 1]]).unwrap();
        let mut vals = BTreeMap::new();
        vals.insert(VertexId(0), rat(1, 2));
        assert_eq!(PlFunction::new(&c, vals).unwrap_err(), Error::MissingValue(VertexId(1)));
    }
}
