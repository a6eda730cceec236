//! Barycentric subdivision and the signature bookkeeping of the subdivided
//! standard simplex.
//!
//! The first subdivision of a complex has one vertex per simplex (its
//! barycenter) and one `k`-simplex per strict chain `σ_0 ⊂ … ⊂ σ_k`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::complex::{Simplex, SimplicialComplex, VertexId};
use crate::pl::PlFunction;
use crate::rational::{int, sign, Rational};
use crate::Result;

/// Result of one barycentric subdivision.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub complex: SimplicialComplex,
    /// Linear extension of the input function, evaluated at the new vertices.
    pub alpha: PlFunction,
    /// `carriers[i]` is the simplex of the input whose barycenter is vertex `i`.
    pub carriers: Vec<Simplex>,
}

/// First barycentric subdivision of `complex`, carrying `alpha` along.
pub fn barycentric_subdivide(complex: &SimplicialComplex, alpha: &PlFunction) -> Result<Subdivision> {
    alpha.check_on(complex)?;
    let carriers: Vec<Simplex> = complex.simplices().cloned().collect();
    let index: BTreeMap<&Simplex, u32> =
        carriers.iter().enumerate().map(|(i, s)| (s, i as u32)).collect();

    let mut values = BTreeMap::new();
    for (i, s) in carriers.iter().enumerate() {
        values.insert(VertexId(i as u32), alpha.at_barycenter(s)?);
    }

    let mut chains = BTreeSet::new();
    let mut stack: Vec<u32> = Vec::new();
    for top in &carriers {
        stack.clear();
        stack.push(index[top]);
        descend(top, &index, &mut stack, &mut chains);
    }

    let complex = SimplicialComplex::from_closed_unchecked(chains);
    let alpha = PlFunction::new(&complex, values)?;
    Ok(Subdivision { complex, alpha, carriers })
}

// Records the chain in `stack` and every extension of it by smaller faces.
fn descend(
    smallest: &Simplex,
    index: &BTreeMap<&Simplex, u32>,
    stack: &mut Vec<u32>,
    out: &mut BTreeSet<Simplex>,
) {
    let mut ids = stack.clone();
    ids.sort_unstable();
    out.insert(Simplex::from_sorted_unchecked(ids.into_iter().map(VertexId).collect()));

    let n = smallest.len();
    if n == 1 {
        return;
    }
    let full = (1u64 << n) - 1;
    for mask in 1..full {
        let face = smallest.face_from_mask(mask);
        stack.push(index[&face]);
        descend(&face, index, stack, out);
        stack.pop();
    }
}

/// Applies `times` successive subdivisions.
pub fn iterated_subdivide(
    complex: &SimplicialComplex,
    alpha: &PlFunction,
    times: usize,
) -> Result<(SimplicialComplex, PlFunction)> {
    let mut c = complex.clone();
    let mut a = alpha.clone();
    for _ in 0..times {
        let sd = barycentric_subdivide(&c, &a)?;
        c = sd.complex;
        a = sd.alpha;
    }
    Ok((c, a))
}

/// Successive set-difference sizes `(|A_0|, |A_1 \ A_0|, …)` of a chain of
/// vertex subsets.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature(pub Vec<usize>);

impl Signature {
    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    /// Dimension of the simplices carrying this signature.
    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    /// Drops the last part.
    pub fn truncated(&self) -> Option<Signature> {
        (self.0.len() > 1).then(|| Signature(self.0[..self.0.len() - 1].to_vec()))
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", p)?;
        }
        f.write_str(")")
    }
}

// Calls `visit(chain)` for every strict chain of nonempty subsets of an
// `(n+1)`-element set, subsets encoded as bitmasks.
fn for_each_chain<F: FnMut(&[u64])>(n: usize, mut visit: F) {
    assert!(n < 20, "census limited to small simplices");
    let full: u64 = (1 << (n + 1)) - 1;
    let mut chain = Vec::new();
    fn extend<F: FnMut(&[u64])>(chain: &mut Vec<u64>, full: u64, visit: &mut F) {
        visit(chain);
        let last = *chain.last().unwrap();
        let free = full & !last;
        // Nonempty subsets of the free bits, added to `last`.
        let mut sub = free;
        while sub != 0 {
            chain.push(last | sub);
            extend(chain, full, visit);
            chain.pop();
            sub = (sub - 1) & free;
        }
    }
    for first in 1..=full {
        chain.push(first);
        extend(&mut chain, full, &mut visit);
        chain.pop();
    }
}

fn signature_of(chain: &[u64]) -> Signature {
    let mut prev = 0u64;
    Signature(
        chain
            .iter()
            .map(|a| {
                let s = (a & !prev).count_ones() as usize;
                prev = *a;
                s
            })
            .collect(),
    )
}

/// Counts the simplices of the first subdivision of the `n`-simplex by
/// signature, by enumerating every chain.
pub fn signature_census(n: usize) -> BTreeMap<Signature, u64> {
    let mut out = BTreeMap::new();
    for_each_chain(n, |chain| *out.entry(signature_of(chain)).or_insert(0) += 1);
    out
}

/// For each signature, the sum over simplices of the subdivided `n`-simplex
/// of `(-1)^dim` times the barycenter, written in barycentric coordinates of
/// the original simplex.
pub fn signature_sums(n: usize) -> BTreeMap<Signature, Vec<Rational>> {
    let mut out: BTreeMap<Signature, Vec<Rational>> = BTreeMap::new();
    for_each_chain(n, |chain| {
        let sig = signature_of(chain);
        let entry = out.entry(sig).or_insert_with(|| vec![Rational::zero(); n + 1]);
        let len = int(chain.len() as i64);
        let sgn = sign(chain.len() - 1);
        for a in chain {
            let weight = &sgn / (&len * int(a.count_ones() as i64));
            for (v, coeff) in entry.iter_mut().enumerate() {
                if a >> v & 1 == 1 {
                    *coeff += &weight;
                }
            }
        }
    });
    out
}
