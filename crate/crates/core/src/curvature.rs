//! Excess angles and Banchoff curvature of embedded complexes.
//!
//! The excess angle `E(Δ, v)` is the fraction of unit directions `ξ` for which
//! `v` maximizes `⟨ξ, ·⟩` over `Δ`, i.e. the normalized measure of the normal
//! cone `{ ξ : ⟨ξ, v − w⟩ ≥ 0 for all w ∈ Δ }`. The curvature at `v` is the
//! alternating sum of excess angles over the simplices containing `v`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::complex::{Simplex, SimplicialComplex, VertexId};
use crate::embedding::{dot, norm, Embedding};
use crate::pl::PlFunction;
use crate::rational::to_f64;
use crate::sampling::{self, batch_rng, gaussian, run_batches, Domain, Estimate, SampleConfig};
use crate::{Error, Result};

/// How to evaluate excess angles.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Method {
    /// Closed-form solid angles; supports simplices of dimension at most 3.
    Exact,
    MonteCarlo(SampleConfig),
}

/// `{ ξ : ⟨ξ, g⟩ ≥ 0 for every generator g }` with `g = v − w`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalCone {
    pub apex: VertexId,
    pub generators: Vec<Vec<f64>>,
}

impl NormalCone {
    pub fn new(embedding: &Embedding, s: &Simplex, v: VertexId) -> Result<Self> {
        Ok(NormalCone { apex: v, generators: embedding.cone_generators(s, v)? })
    }

    pub fn contains(&self, xi: &[f64]) -> bool {
        self.generators.iter().all(|g| dot(xi, g) >= 0.0)
    }

    /// Normalized sphere measure in closed form.
    ///
    /// The generators are linearly independent, so the cone is a product of a
    /// polyhedral cone in their span with the orthogonal complement and its
    /// measure depends only on the angles between generators: a half-space
    /// has measure 1/2, a wedge `(π − θ)/2π`, and a trihedral cone its
    /// spherical triangle area `(Σ dihedral − π)/4π`.
    pub fn exact_measure(&self) -> Result<f64> {
        let g = &self.generators;
        match g.len() {
            0 => Ok(1.0),
            1 => Ok(0.5),
            2 => Ok((PI - angle_between(&g[0], &g[1])) / (2.0 * PI)),
            3 => {
                let dihedral_sum = (PI - angle_between(&g[0], &g[1]))
                    + (PI - angle_between(&g[0], &g[2]))
                    + (PI - angle_between(&g[1], &g[2]));
                Ok(((dihedral_sum - PI) / (4.0 * PI)).max(0.0))
            }
            k => Err(Error::ExactUnavailable(k)),
        }
    }
}

/// Angle in `[0, π]`, computed as `2·atan2(|â − b̂|, |â + b̂|)`.
pub fn angle_between(a: &[f64], b: &[f64]) -> f64 {
    let (na, nb) = (norm(a), norm(b));
    let mut d = 0.0;
    let mut s = 0.0;
    for (x, y) in a.iter().zip(b) {
        let (u, w) = (x / na, y / nb);
        d += (u - w) * (u - w);
        s += (u + w) * (u + w);
    }
    2.0 * libm::atan2(libm::sqrt(d), libm::sqrt(s))
}

/// Bitset over the neighbours of a vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Mask(Vec<u64>);

impl Mask {
    fn new(bits: usize) -> Self {
        Mask(vec![0; bits.div_ceil(64).max(1)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn clear(&mut self) {
        self.0.iter_mut().for_each(|w| *w = 0);
    }
    fn subset_of(&self, other: &Mask) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

/// The simplices around one vertex, prepared for repeated sign tests.
pub(crate) struct LocalStar {
    /// `p(v) − p(w)` for each neighbour `w`.
    generators: Vec<Vec<f64>>,
    norms: Vec<f64>,
    /// Per simplex: its other vertices as a neighbour mask, and its dimension.
    simplices: Vec<(Mask, usize)>,
}

impl LocalStar {
    pub(crate) fn new(embedding: &Embedding, v: VertexId, star: &[&Simplex]) -> Result<Self> {
        let pv = embedding.point(v)?;
        let mut neighbours: Vec<VertexId> =
            star.iter().flat_map(|s| s.vertices().iter().copied()).filter(|w| *w != v).collect();
        neighbours.sort_unstable();
        neighbours.dedup();
        let generators = neighbours
            .iter()
            .map(|w| Ok(crate::embedding::sub(pv, embedding.point(*w)?)))
            .collect::<Result<Vec<_>>>()?;
        let simplices = star
            .iter()
            .map(|s| {
                let mut m = Mask::new(neighbours.len());
                for w in s.vertices().iter().filter(|w| **w != v) {
                    m.set(neighbours.binary_search(w).expect("neighbour"));
                }
                (m, s.dim())
            })
            .collect();
        let norms = generators.iter().map(|g: &Vec<f64>| norm(g)).collect();
        Ok(LocalStar { generators, norms, simplices })
    }

    /// `Σ (-1)^dim σ` over star simplices whose other vertices all satisfy
    /// `⟨x, v − w⟩ < 0`; `None` if some `|⟨x, v − w⟩| ≤ tol·|v − w|`.
    pub(crate) fn lower_sum(&self, x: &[f64], tol: f64, lower: &mut Mask) -> Option<i64> {
        lower.clear();
        for (i, (g, n)) in self.generators.iter().zip(&self.norms).enumerate() {
            let d = dot(x, g);
            if d.abs() <= tol * n {
                return None;
            }
            if d < 0.0 {
                lower.set(i);
            }
        }
        Some(
            self.simplices
                .iter()
                .filter(|(m, _)| m.subset_of(lower))
                .map(|(_, d)| if d % 2 == 0 { 1 } else { -1 })
                .sum(),
        )
    }

    pub(crate) fn scratch(&self) -> Mask {
        Mask::new(self.generators.len())
    }

    /// Counts, per simplex, the sampled directions lying in its normal cone.
    /// Returns `(hits, accepted, ties)`.
    fn sample(&self, dim: usize, seed: u64, domain: Domain, item: u64, samples: u64) -> (Vec<u64>, u64, u64) {
        let per_batch = run_batches(samples, |b, n| {
            let mut rng = batch_rng(seed, domain, item, b);
            let mut xi = vec![0.0; dim];
            let mut positive = Mask::new(self.generators.len());
            let mut hits = vec![0u64; self.simplices.len()];
            let mut ties = 0u64;
            let mut done = 0;
            while done < n {
                gaussian(&mut rng, &mut xi);
                positive.clear();
                let mut tie = false;
                for (i, g) in self.generators.iter().enumerate() {
                    let d = dot(&xi, g);
                    if d == 0.0 {
                        tie = true;
                        break;
                    }
                    if d > 0.0 {
                        positive.set(i);
                    }
                }
                if tie {
                    ties += 1;
                    continue;
                }
                for (h, (m, _)) in hits.iter_mut().zip(&self.simplices) {
                    if m.subset_of(&positive) {
                        *h += 1;
                    }
                }
                done += 1;
            }
            (hits, ties)
        });
        let mut hits = vec![0u64; self.simplices.len()];
        let mut ties = 0;
        for (h, t) in per_batch {
            hits.iter_mut().zip(h).for_each(|(a, b)| *a += b);
            ties += t;
        }
        (hits, samples, ties)
    }
}

fn simplex_item(s: &Simplex, v: VertexId) -> u64 {
    // FNV-1a over the vertex ids, apex last.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for w in s.vertices().iter().chain(core::iter::once(&v)) {
        h ^= w.0 as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

fn require_samples(cfg: &SampleConfig) -> Result<()> {
    if cfg.samples == 0 {
        Err(Error::InvalidParameter("samples must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// Excess angle `E(Δ, v)`.
pub fn excess_angle(embedding: &Embedding, s: &Simplex, v: VertexId, method: Method) -> Result<Estimate> {
    if !embedding.complex().contains(s) {
        return Err(Error::UnknownSimplex(s.clone()));
    }
    let cone = NormalCone::new(embedding, s, v)?;
    match method {
        Method::Exact => cone.exact_measure().map(Estimate::exact),
        Method::MonteCarlo(cfg) => {
            require_samples(&cfg)?;
            if s.dim() == 0 {
                return Ok(Estimate::exact(1.0));
            }
            let local = LocalStar::new(embedding, v, &[s])?;
            let (hits, n, _) = local.sample(
                embedding.ambient_dim(),
                cfg.seed,
                Domain::ExcessAngle,
                simplex_item(s, v),
                cfg.samples,
            );
            Ok(Estimate::proportion(hits[0], n))
        }
    }
}

/// Banchoff curvature `κ(v) = Σ_{Δ ∋ v} (-1)^dim Δ · E(Δ, v)`.
///
/// With Monte Carlo, all excess angles at `v` share one set of directions and
/// the reported bound is the sum of the per-term binomial errors.
pub fn banchoff_curvature(embedding: &Embedding, v: VertexId, method: Method) -> Result<Estimate> {
    let star = embedding.complex().star(v)?;
    let star_refs: Vec<&Simplex> = star.iter().collect();
    banchoff_from_star(embedding, v, &star_refs, method)
}

fn banchoff_from_star(
    embedding: &Embedding,
    v: VertexId,
    star: &[&Simplex],
    method: Method,
) -> Result<Estimate> {
    match method {
        Method::Exact => {
            let mut total = 0.0;
            for s in star {
                let e = NormalCone::new(embedding, s, v)?.exact_measure()?;
                total += if s.dim() % 2 == 0 { e } else { -e };
            }
            Ok(Estimate::exact(total))
        }
        Method::MonteCarlo(cfg) => {
            require_samples(&cfg)?;
            let local = LocalStar::new(embedding, v, star)?;
            let (hits, n, _) =
                local.sample(embedding.ambient_dim(), cfg.seed, Domain::Banchoff, v.0 as u64, cfg.samples);
            Ok(local
                .simplices
                .iter()
                .zip(hits)
                .map(|((_, d), h)| {
                    let e = Estimate::proportion(h, n);
                    if d % 2 == 0 {
                        e
                    } else {
                        e * -1.0
                    }
                })
                .sum())
        }
    }
}

/// The atomic curvature measure `Σ_v κ(v)·δ_v`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct CurvatureMeasure {
    pub atoms: BTreeMap<VertexId, Estimate>,
}

impl CurvatureMeasure {
    pub fn total(&self) -> Estimate {
        self.atoms.values().copied().sum()
    }

    pub fn get(&self, v: VertexId) -> Option<Estimate> {
        self.atoms.get(&v).copied()
    }
}

/// Banchoff curvature at every vertex.
pub fn curvature_measure(embedding: &Embedding, method: Method) -> Result<CurvatureMeasure> {
    let stars = embedding.complex().stars();
    let mut atoms = BTreeMap::new();
    for (v, star) in &stars {
        atoms.insert(*v, banchoff_from_star(embedding, *v, star, method)?);
    }
    Ok(CurvatureMeasure { atoms })
}

/// `∫ α dκ = Σ_v α(v)·κ(v)`.
pub fn curvature_integral(alpha: &PlFunction, embedding: &Embedding, method: Method) -> Result<Estimate> {
    alpha.check_on(embedding.complex())?;
    let kappa = curvature_measure(embedding, method)?;
    integrate_against(alpha, &kappa)
}

pub fn integrate_against(alpha: &PlFunction, kappa: &CurvatureMeasure) -> Result<Estimate> {
    let mut total = Estimate::default();
    for (v, k) in &kappa.atoms {
        total = total + *k * to_f64(alpha.value(*v)?);
    }
    Ok(total)
}

/// A compact piece `K_i` of an ambient complex with a PL function on it.
#[derive(Clone, Debug)]
pub struct Piece {
    pub complex: SimplicialComplex,
    pub alpha: PlFunction,
}

impl Piece {
    pub fn new(complex: SimplicialComplex, alpha: PlFunction) -> Result<Self> {
        alpha.check_on(&complex)?;
        Ok(Piece { complex, alpha })
    }

    /// Constant function `c` on the subcomplex generated by `generators`.
    pub fn constant(generators: &[Simplex], c: crate::Rational) -> Self {
        let complex = SimplicialComplex::from_maximal(generators.iter().cloned());
        let alpha = PlFunction::constant(&complex, c);
        Piece { complex, alpha }
    }
}

/// `Σ_i ∫_{K_i} α_i dκ_{K_i}`, each piece integrated against its own
/// curvature measure.
pub fn final_integral(ambient: &Embedding, pieces: &[Piece], method: Method) -> Result<Estimate> {
    let mut total = Estimate::default();
    for (i, p) in pieces.iter().enumerate() {
        if !p.complex.is_subcomplex_of(ambient.complex()) {
            return Err(Error::PieceNotSubcomplex(i));
        }
        let e = ambient.restrict(&p.complex)?;
        total = total + curvature_integral(&p.alpha, &e, method)?;
    }
    Ok(total)
}

/// `Σ_v κ(v)` against `χ(X)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussBonnetReport {
    pub total: Estimate,
    pub chi: i64,
}

impl GaussBonnetReport {
    pub fn deviation(&self) -> f64 {
        (self.total.value - self.chi as f64).abs()
    }
}

pub fn gauss_bonnet_check(embedding: &Embedding, method: Method) -> Result<GaussBonnetReport> {
    let total = curvature_measure(embedding, method)?.total();
    Ok(GaussBonnetReport { total, chi: embedding.complex().euler_characteristic() })
}

/// Monte Carlo curvature of a product `X × Y` at every product vertex, from
/// directions in `R^{N+M}`. A direction lies in the normal cone of the cell
/// `σ × τ` at `(u, v)` exactly when its two components lie in the factor
/// cones.
pub fn product_curvature(
    left: &Embedding,
    right: &Embedding,
    cfg: SampleConfig,
) -> Result<BTreeMap<(VertexId, VertexId), Estimate>> {
    require_samples(&cfg)?;
    let (n, m) = (left.ambient_dim(), right.ambient_dim());
    let lstars = left.complex().stars();
    let rstars = right.complex().stars();
    let mut out = BTreeMap::new();
    for (u, ls) in &lstars {
        let lstar = LocalStar::new(left, *u, ls)?;
        for (v, rs) in &rstars {
            let rstar = LocalStar::new(right, *v, rs)?;
            let item = ((u.0 as u64) << 32) | v.0 as u64;
            let batches = run_batches(cfg.samples, |b, count| {
                let mut rng = batch_rng(cfg.seed, Domain::Product, item, b);
                let mut xi = vec![0.0; n + m];
                let mut lpos = Mask::new(lstar.generators.len());
                let mut rpos = Mask::new(rstar.generators.len());
                let mut lhit = vec![false; lstar.simplices.len()];
                let mut hits = vec![0u64; lstar.simplices.len() * rstar.simplices.len()];
                let mut done = 0;
                while done < count {
                    gaussian(&mut rng, &mut xi);
                    let (xl, xr) = xi.split_at(n);
                    if !signs(&lstar.generators, xl, &mut lpos) || !signs(&rstar.generators, xr, &mut rpos) {
                        continue;
                    }
                    for (h, (mask, _)) in lhit.iter_mut().zip(&lstar.simplices) {
                        *h = mask.subset_of(&lpos);
                    }
                    for (j, (mask, _)) in rstar.simplices.iter().enumerate() {
                        if mask.subset_of(&rpos) {
                            for (i, hit) in lhit.iter().enumerate() {
                                if *hit {
                                    hits[i * rstar.simplices.len() + j] += 1;
                                }
                            }
                        }
                    }
                    done += 1;
                }
                hits
            });
            let mut hits = vec![0u64; lstar.simplices.len() * rstar.simplices.len()];
            for h in batches {
                hits.iter_mut().zip(h).for_each(|(a, b)| *a += b);
            }
            let mut est = Estimate::default();
            for (i, (_, dl)) in lstar.simplices.iter().enumerate() {
                for (j, (_, dr)) in rstar.simplices.iter().enumerate() {
                    let e = Estimate::proportion(hits[i * rstar.simplices.len() + j], cfg.samples);
                    est = est + if (dl + dr) % 2 == 0 { e } else { e * -1.0 };
                }
            }
            out.insert((*u, *v), est);
        }
    }
    Ok(out)
}

// Records which generators are strictly positive on `xi`; false on a tie.
fn signs(generators: &[Vec<f64>], xi: &[f64], out: &mut Mask) -> bool {
    out.clear();
    for (i, g) in generators.iter().enumerate() {
        let d = dot(xi, g);
        if d == 0.0 {
            return false;
        }
        if d > 0.0 {
            out.set(i);
        }
    }
    true
}

pub use sampling::SampleConfig as Samples;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    const MC: Method = Method::MonteCarlo(SampleConfig { samples: 100_000, seed: 11 });

    fn v(i: u32) -> VertexId {
        VertexId(i)
    }

    #[test]
    fn vertex_has_full_excess_angle() {
        let (c, e) = fixtures::filled_triangle();
        let p = Simplex::vertex(0u32);
        assert_eq!(excess_angle(&e, &p, v(0), Method::Exact).unwrap().value, 1.0);
        assert_eq!(excess_angle(&e, &p, v(0), MC).unwrap().value, 1.0);
        assert!(c.contains(&p));
    }

    #[test]
    fn right_angle_corner_has_quarter_excess() {
        let (c, e) = fixtures::right_triangle();
        let t = c.maximal_simplices()[0].clone();
        let exact = excess_angle(&e, &t, v(0), Method::Exact).unwrap();
        assert!((exact.value - 0.25).abs() < 1e-15);
        let mc = excess_angle(&e, &t, v(0), MC).unwrap();
        assert!(mc.agrees_with(0.25, 4.0, 0.0), "{:?}", mc);
    }

    #[test]
    fn equilateral_excess_is_uniform() {
        for k in 0..4u32 {
            let verts: Vec<u32> = (0..=k).collect();
            let c = SimplicialComplex::from_lists(&[&verts]).unwrap();
            let e = Embedding::equilateral(&c);
            let top = c.maximal_simplices()[0].clone();
            let want = 1.0 / (k as f64 + 1.0);
            let exact = excess_angle(&e, &top, v(0), Method::Exact).unwrap();
            assert!((exact.value - want).abs() < 1e-12, "k={k}: {}", exact.value);
        }
    }

    #[test]
    fn four_constraints_have_no_closed_form() {
        let c = SimplicialComplex::from_lists(&[&[0, 1, 2, 3, 4]]).unwrap();
        let e = Embedding::equilateral(&c);
        let top = c.maximal_simplices()[0].clone();
        assert_eq!(excess_angle(&e, &top, v(0), Method::Exact).unwrap_err(), Error::ExactUnavailable(4));
        let mc = excess_angle(&e, &top, v(0), MC).unwrap();
        assert!(mc.agrees_with(0.2, 4.0, 0.0));
    }

    #[test]
    fn segment_endpoint_curvature_is_half() {
        let (_, e) = fixtures::segment();
        let k = banchoff_curvature(&e, v(0), Method::Exact).unwrap();
        assert_eq!(k.value, 0.5);
    }

    #[test]
    fn polygon_vertices_are_flat() {
        let (_, e) = fixtures::hollow_polygon(5);
        for i in 0..5 {
            let k = banchoff_curvature(&e, v(i), Method::Exact).unwrap();
            assert!(k.value.abs() < 1e-15);
        }
    }

    #[test]
    fn filled_triangle_curvature_is_exterior_angle() {
        let (c, e) = fixtures::filled_triangle();
        let mut total = 0.0;
        for w in c.vertices() {
            let k = banchoff_curvature(&e, *w, Method::Exact).unwrap().value;
            let t = c.maximal_simplices()[0].clone();
            let others: Vec<Vec<f64>> = NormalCone::new(&e, &t, *w).unwrap().generators;
            let interior = angle_between(&others[0], &others[1]);
            assert!((k - (PI - interior) / (2.0 * PI)).abs() < 1e-14);
            total += k;
        }
        assert!((total - 1.0).abs() < 1e-14);
    }

    #[test]
    fn octahedron_total_curvature() {
        let (_, e) = fixtures::octahedron();
        let one = PlFunction::constant(e.complex(), crate::rational::int(1));
        let total = curvature_integral(&one, &e, Method::Exact).unwrap();
        assert!((total.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn open_interval_by_pieces() {
        let (_, e) = fixtures::segment();
        let one = crate::rational::int(1);
        let pieces = [
            Piece::constant(&[Simplex::new([0u32, 1]).unwrap()], one.clone()),
            Piece::constant(&[Simplex::vertex(0u32)], -one.clone()),
            Piece::constant(&[Simplex::vertex(1u32)], -one),
        ];
        let r = final_integral(&e, &pieces, Method::Exact).unwrap();
        assert!((r.value + 1.0).abs() < 1e-12);
    }

    #[test]
    fn foreign_piece_is_rejected() {
        let (_, e) = fixtures::segment();
        let pieces = [Piece::constant(&[Simplex::vertex(5u32)], crate::rational::int(1))];
        assert_eq!(final_integral(&e, &pieces, Method::Exact).unwrap_err(), Error::PieceNotSubcomplex(0));
    }

    #[test]
    fn zero_samples_rejected() {
        let (_, e) = fixtures::segment();
        let m = Method::MonteCarlo(SampleConfig::new(0, 0));
        assert!(banchoff_curvature(&e, v(0), m).is_err());
    }

    #[test]
    fn monte_carlo_is_reproducible() {
        let (_, e) = fixtures::octahedron();
        let m = Method::MonteCarlo(SampleConfig::new(20_000, 3));
        assert_eq!(curvature_measure(&e, m).unwrap(), curvature_measure(&e, m).unwrap());
    }
}
