//! Curvature as the average Morse index of linear height functions.
//!
//! For `h_x(y) = −⟨x, y⟩` on an embedded complex, critical points sit at
//! vertices and the index at `v` is `1 − χ(lower link)`, the lower link being
//! the full subcomplex of `link(v)` on vertices with smaller height.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::complex::VertexId;
use crate::curvature::{CurvatureMeasure, LocalStar};
use crate::embedding::{dot, norm, sub, Embedding};
use crate::sampling::{batch_rng, gaussian, run_batches, Domain, Estimate, SampleConfig};
use crate::{Error, Result};

/// Relative tolerance below which two heights count as equal.
pub const TIE_TOL: f64 = 1e-12;

/// A unit vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Direction(Vec<f64>);

impl Direction {
    /// Normalizes `v`; fails on zero or non-finite input.
    pub fn new(v: Vec<f64>) -> Result<Self> {
        let n = norm(&v);
        if !n.is_finite() || n == 0.0 {
            return Err(Error::InvalidDirection);
        }
        Ok(Direction(v.into_iter().map(|x| x / n).collect()))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `h_x(p) = −⟨x, p⟩`.
    pub fn height(&self, p: &[f64]) -> f64 {
        -dot(&self.0, p)
    }
}

fn check_dim(embedding: &Embedding, x: &Direction) -> Result<()> {
    if x.dim() != embedding.ambient_dim() {
        return Err(Error::DimensionMismatch { expected: embedding.ambient_dim(), found: x.dim() });
    }
    Ok(())
}

/// `1 − χ(lower link of v)` for the height function `h_x`.
pub fn morse_index(embedding: &Embedding, v: VertexId, x: &Direction) -> Result<i64> {
    check_dim(embedding, x)?;
    let complex = embedding.complex();
    let pv = embedding.point(v)?;
    let hv = x.height(pv);
    let link = complex.link(v)?;
    for w in link.vertices() {
        let pw = embedding.point(*w)?;
        if (x.height(pw) - hv).abs() <= TIE_TOL * norm(&sub(pv, pw)) {
            return Err(Error::NonGenericDirection(v));
        }
    }
    let lower = complex.lower_link(v, |w| {
        let pw = embedding.point(w).expect("link vertex is embedded");
        x.height(pw) < hv
    })?;
    Ok(1 - lower.euler_characteristic())
}

/// Indices of every vertex for one direction.
#[derive(Clone, Debug, PartialEq)]
pub struct MorseIndexReport {
    pub direction: Direction,
    pub indices: BTreeMap<VertexId, i64>,
    /// False when some vertex ties with a neighbour; its index is then absent.
    pub generic: bool,
}

impl MorseIndexReport {
    pub fn sum(&self) -> i64 {
        self.indices.values().sum()
    }
}

pub fn morse_indices(embedding: &Embedding, x: &Direction) -> Result<MorseIndexReport> {
    let mut indices = BTreeMap::new();
    let mut generic = true;
    for v in embedding.complex().vertices() {
        match morse_index(embedding, *v, x) {
            Ok(i) => {
                indices.insert(*v, i);
            }
            Err(Error::NonGenericDirection(_)) => generic = false,
            Err(e) => return Err(e),
        }
    }
    Ok(MorseIndexReport { direction: x.clone(), indices, generic })
}

/// `Σ_v index(v)`, which equals `χ(X)` for every generic direction.
pub fn chi_sum_check(embedding: &Embedding, x: &Direction) -> Result<i64> {
    let report = morse_indices(embedding, x)?;
    if !report.generic {
        let v = embedding
            .complex()
            .vertices()
            .iter()
            .find(|v| !report.indices.contains_key(v))
            .copied()
            .expect("some vertex tied");
        return Err(Error::NonGenericDirection(v));
    }
    Ok(report.sum())
}

/// Direction-averaged indices, with how many draws were discarded as ties.
#[derive(Clone, Debug, PartialEq)]
pub struct BkMeasure {
    pub measure: CurvatureMeasure,
    pub accepted: u64,
    pub ties: u64,
}

impl BkMeasure {
    pub fn tie_rate(&self) -> f64 {
        self.ties as f64 / (self.accepted + self.ties) as f64
    }
}

/// Averages the Morse index at every vertex over random directions. All
/// vertices share each direction; a direction that ties anywhere is redrawn.
pub fn bk_curvature_measure(embedding: &Embedding, cfg: SampleConfig) -> Result<BkMeasure> {
    if cfg.samples == 0 {
        return Err(Error::InvalidParameter("samples must be at least 1".into()));
    }
    let stars = embedding.complex().stars();
    let locals = stars
        .iter()
        .map(|(v, star)| Ok((*v, LocalStar::new(embedding, *v, star)?)))
        .collect::<Result<Vec<_>>>()?;
    let dim = embedding.ambient_dim();
    let batches = run_batches(cfg.samples, |b, n| {
        let mut rng = batch_rng(cfg.seed, Domain::Morse, 0, b);
        let mut x = vec![0.0; dim];
        let mut scratch: Vec<_> = locals.iter().map(|(_, l)| l.scratch()).collect();
        let mut sums = vec![(0i64, 0i64); locals.len()];
        let mut idx = vec![0i64; locals.len()];
        let mut ties = 0u64;
        let mut done = 0;
        while done < n {
            gaussian(&mut rng, &mut x);
            let scale = norm(&x);
            let mut generic = true;
            for ((i, (_, l)), m) in idx.iter_mut().zip(&locals).zip(scratch.iter_mut()) {
                match l.lower_sum(&x, TIE_TOL * scale, m) {
                    Some(k) => *i = k,
                    None => {
                        generic = false;
                        break;
                    }
                }
            }
            if !generic {
                ties += 1;
                continue;
            }
            for (s, i) in sums.iter_mut().zip(&idx) {
                s.0 += i;
                s.1 += i * i;
            }
            done += 1;
        }
        (sums, ties)
    });
    let mut sums = vec![(0i64, 0i64); locals.len()];
    let mut ties = 0;
    for (s, t) in batches {
        for (a, b) in sums.iter_mut().zip(s) {
            a.0 += b.0;
            a.1 += b.1;
        }
        ties += t;
    }
    let atoms = locals
        .iter()
        .zip(sums)
        .map(|((v, _), (s, sq))| (*v, Estimate::from_moments(s as f64, sq as f64, cfg.samples)))
        .collect();
    Ok(BkMeasure { measure: CurvatureMeasure { atoms }, accepted: cfg.samples, ties })
}
