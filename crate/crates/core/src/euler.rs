//! Integration against the Euler characteristic with compact supports.
//!
//! Constructible functions are finite rational combinations of indicators of
//! open cells; an open `d`-cell has compactly supported Euler characteristic
//! `(-1)^d`, so every integral here is an exact signed sum.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::complex::{Simplex, SimplicialComplex, VertexId};
use crate::pl::PlFunction;
use crate::product::{ProductCell, ProductCellComplex};
use crate::rational::{int, sign, Rational};
use crate::{Error, Result};

/// Output of an Euler integral.
pub type EulerValue = Rational;

/// An open cell of some carrier.
pub trait Cell: Clone + Ord + fmt::Display {
    fn dim(&self) -> usize;
}

impl Cell for Simplex {
    fn dim(&self) -> usize {
        Simplex::dim(self)
    }
}

impl Cell for ProductCell {
    fn dim(&self) -> usize {
        ProductCell::dim(self)
    }
}

/// A finite complex partitioned into open cells.
pub trait Carrier {
    type Cell: Cell;
    fn contains_cell(&self, c: &Self::Cell) -> bool;
    fn cell_list(&self) -> Vec<Self::Cell>;
}

impl Carrier for SimplicialComplex {
    type Cell = Simplex;
    fn contains_cell(&self, c: &Simplex) -> bool {
        self.contains(c)
    }
    fn cell_list(&self) -> Vec<Simplex> {
        self.simplices().cloned().collect()
    }
}

impl Carrier for ProductCellComplex {
    type Cell = ProductCell;
    fn contains_cell(&self, c: &ProductCell) -> bool {
        self.contains(c)
    }
    fn cell_list(&self) -> Vec<ProductCell> {
        self.cells().collect()
    }
}

fn parity(d: usize) -> i64 {
    if d.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Compactly supported Euler characteristic of a union of open cells.
pub fn chi_c<'a, K, I>(carrier: &K, cells: I) -> Result<i64>
where
    K: Carrier,
    K::Cell: 'a,
    I: IntoIterator<Item = &'a K::Cell>,
{
    let mut total = 0;
    for c in cells {
        if !carrier.contains_cell(c) {
            return Err(Error::ForeignCell(c.to_string()));
        }
        total += parity(c.dim());
    }
    Ok(total)
}

/// A finitely supported rational function on the open cells of a carrier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructibleFunction<C: Cell> {
    coeffs: BTreeMap<C, Rational>,
}

impl<C: Cell> Default for ConstructibleFunction<C> {
    fn default() -> Self {
        ConstructibleFunction { coeffs: BTreeMap::new() }
    }
}

impl<C: Cell> ConstructibleFunction<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Checks that every cell with a coefficient lies in `carrier`.
    pub fn new<K: Carrier<Cell = C>>(carrier: &K, coeffs: BTreeMap<C, Rational>) -> Result<Self> {
        if let Some(c) = coeffs.keys().find(|c| !carrier.contains_cell(c)) {
            return Err(Error::ForeignCell(c.to_string()));
        }
        let mut f = ConstructibleFunction { coeffs };
        f.coeffs.retain(|_, v| !v.is_zero());
        Ok(f)
    }

    pub(crate) fn from_coeffs_unchecked(mut coeffs: BTreeMap<C, Rational>) -> Self {
        coeffs.retain(|_, v| !v.is_zero());
        ConstructibleFunction { coeffs }
    }

    /// Indicator of a union of open cells.
    pub fn indicator<'a, K, I>(carrier: &K, cells: I) -> Result<Self>
    where
        K: Carrier<Cell = C>,
        C: 'a,
        I: IntoIterator<Item = &'a C>,
    {
        let coeffs = cells.into_iter().map(|c| (c.clone(), Rational::one())).collect();
        Self::new(carrier, coeffs)
    }

    /// `1_X`: every open cell with coefficient one.
    pub fn one<K: Carrier<Cell = C>>(carrier: &K) -> Self {
        let coeffs = carrier.cell_list().into_iter().map(|c| (c, Rational::one())).collect();
        ConstructibleFunction { coeffs }
    }

    pub fn get(&self, c: &C) -> Rational {
        self.coeffs.get(c).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coefficients(&self) -> &BTreeMap<C, Rational> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::from_coeffs_unchecked(self.coeffs.iter().map(|(c, v)| (c.clone(), v * k)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (c, v) in &other.coeffs {
            *coeffs.entry(c.clone()).or_insert_with(Rational::zero) += v;
        }
        Self::from_coeffs_unchecked(coeffs)
    }

    /// `∫ s dχ = Σ s(c)·(-1)^dim c`.
    pub fn euler_integral(&self) -> EulerValue {
        self.coeffs.iter().map(|(c, v)| v * sign(c.dim())).sum()
    }
}

impl ConstructibleFunction<Simplex> {
    /// Indicator of a closed simplex, expanded into its open faces.
    pub fn closed_indicator(complex: &SimplicialComplex, s: &Simplex) -> Result<Self> {
        if !complex.contains(s) {
            return Err(Error::UnknownSimplex(s.clone()));
        }
        let coeffs = s.faces().map(|f| (f, Rational::one())).collect();
        Ok(ConstructibleFunction { coeffs })
    }
}

/// Free-standing form of [`ConstructibleFunction::euler_integral`].
pub fn euler_integral<C: Cell>(s: &ConstructibleFunction<C>) -> EulerValue {
    s.euler_integral()
}

/// Floor integral `∫ α ⌊dχ⌋`: each open simplex contributes
/// `(-1)^dim · inf α`.
pub fn floor_integral(complex: &SimplicialComplex, alpha: &PlFunction) -> Result<EulerValue> {
    let mut total = Rational::zero();
    for s in complex.simplices() {
        total += sign(s.dim()) * alpha.min_on(s)?;
    }
    Ok(total)
}

/// Ceiling integral `∫ α ⌈dχ⌉`: each open simplex contributes
/// `(-1)^dim · sup α`.
pub fn ceil_integral(complex: &SimplicialComplex, alpha: &PlFunction) -> Result<EulerValue> {
    let mut total = Rational::zero();
    for s in complex.simplices() {
        total += sign(s.dim()) * alpha.max_on(s)?;
    }
    Ok(total)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Rounding {
    Floor,
    Ceil,
}

impl Rounding {
    fn apply(self, x: &Rational) -> BigInt {
        match self {
            Rounding::Floor => x.floor().to_integer(),
            Rounding::Ceil => x.ceil().to_integer(),
        }
    }
}

/// `∫ (1/n)⌊nα⌋ dχ` (or the ceiling version) on a complex of dimension at
/// most one, computed exactly by cutting each open edge at the levels where
/// the rounded function jumps.
pub fn rounded_integral_1d(
    complex: &SimplicialComplex,
    alpha: &PlFunction,
    n: u64,
    rounding: Rounding,
) -> Result<EulerValue> {
    if let Some(d) = complex.dim() {
        if d > 1 {
            return Err(Error::CarrierTooHighDimensional(d));
        }
    }
    if n == 0 {
        return Err(Error::InvalidParameter("n must be at least 1".into()));
    }
    alpha.check_on(complex)?;
    let nr = Rational::from_integer(BigInt::from(n));
    let level = |x: &Rational| Rational::from_integer(rounding.apply(&(x * &nr))) / &nr;

    let mut total = Rational::zero();
    for s in complex.simplices() {
        match s.vertices() {
            [v] => total += level(alpha.value(*v)?),
            [a, b] => {
                let (x, y) = (alpha.value(*a)?, alpha.value(*b)?);
                let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
                // Interior crossings k/n with lo < k/n < hi.
                let first: BigInt = (lo * &nr).floor().to_integer() + 1;
                let last: BigInt = (hi * &nr).ceil().to_integer() - 1;
                let mut left = lo.clone();
                let mut k = first;
                while k <= last {
                    let cut = Rational::from_integer(k.clone()) / &nr;
                    // open interval (left, cut), then the point cut
                    total -= level(&((&left + &cut) / int(2)));
                    total += level(&cut);
                    left = cut;
                    k += 1;
                }
                total -= level(&((&left + hi) / int(2)));
            }
            _ => unreachable!("dimension checked above"),
        }
    }
    Ok(total)
}

pub fn floor_integral_oracle_1d(
    complex: &SimplicialComplex,
    alpha: &PlFunction,
    n: u64,
) -> Result<EulerValue> {
    rounded_integral_1d(complex, alpha, n, Rounding::Floor)
}

/// Least common multiple of the denominators of the vertex values; the
/// rounded integrals match the closed forms at every multiple of it.
pub fn value_denominator_lcm(alpha: &PlFunction) -> BigInt {
    alpha.values().values().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Barycenter integral `Σ_Δ (-1)^dim Δ · α(Δ̂)`.
pub fn tentative_integral(complex: &SimplicialComplex, alpha: &PlFunction) -> Result<EulerValue> {
    let mut total = Rational::zero();
    for s in complex.simplices() {
        total += sign(s.dim()) * alpha.at_barycenter(s)?;
    }
    Ok(total)
}

/// `w(v) = Σ_i (-1)^i/(i+1) · #{i-simplices containing v}`.
pub fn weight(complex: &SimplicialComplex, v: VertexId) -> Result<Rational> {
    let counts = complex.coface_counts(v)?;
    Ok(counts
        .iter()
        .enumerate()
        .map(|(i, c)| sign(i) * int(*c as i64) / int(i as i64 + 1))
        .sum())
}

pub fn weights(complex: &SimplicialComplex) -> BTreeMap<VertexId, Rational> {
    let mut out: BTreeMap<VertexId, Rational> =
        complex.vertices().iter().map(|v| (*v, Rational::zero())).collect();
    for s in complex.simplices() {
        let w = sign(s.dim()) / int(s.len() as i64);
        for v in s.vertices() {
            *out.get_mut(v).expect("registered") += &w;
        }
    }
    out
}

/// `Σ_v α(v)·w(v)`.
pub fn weighted_vertex_sum(complex: &SimplicialComplex, alpha: &PlFunction) -> Result<EulerValue> {
    let mut total = Rational::zero();
    for (v, w) in weights(complex) {
        total += alpha.value(v)? * w;
    }
    Ok(total)
}

/// True when some coefficient is negative.
pub fn has_negative_value<C: Cell>(s: &ConstructibleFunction<C>) -> bool {
    s.coefficients().values().any(|v| v.is_negative())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use alloc::vec;

    fn edge() -> SimplicialComplex {
        SimplicialComplex::from_lists(&[&[0, 1]]).unwrap()
    }

    fn id(c: &SimplicialComplex) -> PlFunction {
        PlFunction::from_fn(c, |v| int(v.0 as i64))
    }

    fn s(v: &[u32]) -> Simplex {
        Simplex::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn chi_c_of_open_and_closed_cells() {
        let e = edge();
        assert_eq!(chi_c(&e, &[s(&[0, 1])]).unwrap(), -1);
        assert_eq!(chi_c(&e, &e.cell_list()).unwrap(), 1);
        let circle = SimplicialComplex::from_lists(&[&[0, 1], &[1, 2], &[0, 2]]).unwrap();
        assert_eq!(chi_c(&circle, &circle.cell_list()).unwrap(), 0);
        assert!(matches!(chi_c(&e, &[s(&[0, 2])]), Err(Error::ForeignCell(_))));
    }

    #[test]
    fn simple_function_integrals() {
        let e = edge();
        let closed = ConstructibleFunction::closed_indicator(&e, &s(&[0, 1])).unwrap();
        let p0 = ConstructibleFunction::closed_indicator(&e, &s(&[0])).unwrap();
        let p1 = ConstructibleFunction::closed_indicator(&e, &s(&[1])).unwrap();
        let open = closed.add(&p0.scale(&int(-1))).add(&p1.scale(&int(-1)));
        assert_eq!(open.euler_integral(), int(-1));
        assert_eq!(ConstructibleFunction::<Simplex>::zero().euler_integral(), int(0));
        let disk = SimplicialComplex::from_lists(&[&[0, 1, 2]]).unwrap();
        assert_eq!(ConstructibleFunction::one(&disk).euler_integral(), int(1));
    }

    #[test]
    fn floor_and_ceiling_of_identity_on_edge() {
        let e = edge();
        assert_eq!(floor_integral(&e, &id(&e)).unwrap(), int(1));
        assert_eq!(ceil_integral(&e, &id(&e)).unwrap(), int(0));
    }

    #[test]
    fn floor_and_ceiling_of_constant() {
        let c = SimplicialComplex::from_lists(&[&[0, 1, 2], &[2, 3]]).unwrap();
        let k = rat(7, 3);
        let f = PlFunction::constant(&c, k.clone());
        let chi = int(c.euler_characteristic());
        assert_eq!(floor_integral(&c, &f).unwrap(), &k * &chi);
        assert_eq!(ceil_integral(&c, &f).unwrap(), k * chi);
    }

    #[test]
    fn path_floor_and_ceiling() {
        let p = SimplicialComplex::from_lists(&[&[0, 1], &[1, 2]]).unwrap();
        let a = id(&p);
        assert_eq!(floor_integral(&p, &a).unwrap(), int(2));
        assert_eq!(ceil_integral(&p, &a).unwrap(), int(0));
        assert_eq!(floor_integral_oracle_1d(&p, &a, 1).unwrap(), int(2));
        assert_eq!(rounded_integral_1d(&p, &a, 1, Rounding::Ceil).unwrap(), int(0));
    }

    #[test]
    fn level_set_oracle_examples() {
        let e = edge();
        assert_eq!(floor_integral_oracle_1d(&e, &id(&e), 2).unwrap(), int(1));
        assert_eq!(floor_integral_oracle_1d(&e, &id(&e), 1).unwrap(), int(1));
        let pt = SimplicialComplex::from_lists(&[&[0]]).unwrap();
        let one = PlFunction::constant(&pt, int(1));
        for n in 1..5 {
            assert_eq!(floor_integral_oracle_1d(&pt, &one, n).unwrap(), int(1));
        }
    }

    #[test]
    fn level_set_oracle_rejects_surfaces() {
        let t = SimplicialComplex::from_lists(&[&[0, 1, 2]]).unwrap();
        let f = PlFunction::constant(&t, int(0));
        assert_eq!(
            floor_integral_oracle_1d(&t, &f, 3).unwrap_err(),
            Error::CarrierTooHighDimensional(2)
        );
    }

    #[test]
    fn floor_integral_is_not_additive() {
        // α = (0, 1) and β = (1, 0) on one edge: ⌊∫⌋α = ⌊∫⌋β = 1 but α+β ≡ 1.
        let e = edge();
        let a = id(&e);
        let b = PlFunction::from_fn(&e, |v| int(1 - v.0 as i64));
        let sum = PlFunction::from_fn(&e, |_| int(1));
        let lhs = floor_integral(&e, &a).unwrap() + floor_integral(&e, &b).unwrap();
        assert_eq!(lhs, int(2));
        assert_eq!(floor_integral(&e, &sum).unwrap(), int(1));
    }

    #[test]
    fn tentative_integral_examples() {
        let e = edge();
        assert_eq!(tentative_integral(&e, &id(&e)).unwrap(), rat(1, 2));
        let t = SimplicialComplex::from_lists(&[&[0, 1, 2, 3]]).unwrap();
        let f = PlFunction::from_fn(&t, |v| rat(v.0 as i64 * v.0 as i64, 5));
        let top = s(&[0, 1, 2, 3]);
        assert_eq!(tentative_integral(&t, &f).unwrap(), f.at_barycenter(&top).unwrap());
    }

    #[test]
    fn vertex_weights() {
        let pt = SimplicialComplex::from_lists(&[&[3]]).unwrap();
        assert_eq!(weight(&pt, VertexId(3)).unwrap(), int(1));
        let e = edge();
        assert_eq!(weight(&e, VertexId(0)).unwrap(), rat(1, 2));
        let t = SimplicialComplex::from_lists(&[&[0, 1, 2]]).unwrap();
        assert_eq!(weight(&t, VertexId(1)).unwrap(), rat(1, 3));
        assert_eq!(weights(&t).values().cloned().collect::<Vec<_>>(), vec![rat(1, 3); 3]);
        assert_eq!(weight(&t, VertexId(9)).unwrap_err(), Error::UnknownVertex(VertexId(9)));
    }
}
