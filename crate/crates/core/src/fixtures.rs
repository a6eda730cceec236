//! Small embedded complexes and maps used by tests, examples and the CLI.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::Rng;

use crate::complex::{Simplex, SimplicialComplex, VertexId};
use crate::embedding::Embedding;
use crate::map::SimplicialMap;
use crate::pl::PlFunction;
use crate::rational::{int, rat, Rational};

/// Embeds `complex` with `points[i]` at its `i`-th vertex (ascending id).
pub fn embed(complex: &SimplicialComplex, points: &[&[f64]]) -> Embedding {
    let coords = complex.vertices().iter().zip(points).map(|(v, p)| (*v, p.to_vec())).collect();
    Embedding::new(complex.clone(), coords).expect("fixture embedding is valid")
}

fn embed_owned(complex: SimplicialComplex, points: Vec<Vec<f64>>) -> (SimplicialComplex, Embedding) {
    let refs: Vec<&[f64]> = points.iter().map(Vec::as_slice).collect();
    let e = embed(&complex, &refs);
    (complex, e)
}

fn lists(generators: &[Vec<u32>]) -> SimplicialComplex {
    let refs: Vec<&[u32]> = generators.iter().map(Vec::as_slice).collect();
    SimplicialComplex::from_lists(&refs).expect("fixture simplices are valid")
}

/// The edge `[0, 1]` in `R¹`. χ = 1.
pub fn segment() -> (SimplicialComplex, Embedding) {
    path_in_line(&[0.0, 1.0])
}

/// Path `0 – 1 – … ` with vertex `i` at `t[i]` on the real line.
pub fn path_in_line(t: &[f64]) -> (SimplicialComplex, Embedding) {
    let n = t.len() as u32;
    let c = if n == 1 { lists(&[vec![0]]) } else { lists(&(0..n - 1).map(|i| vec![i, i + 1]).collect::<Vec<_>>()) };
    embed_owned(c, t.iter().map(|x| vec![*x]).collect())
}

/// Boundary of a regular `n`-gon in `R²`. χ = 0.
pub fn hollow_polygon(n: u32) -> (SimplicialComplex, Embedding) {
    assert!(n >= 3);
    let c = lists(&(0..n).map(|i| vec![i, (i + 1) % n]).collect::<Vec<_>>());
    let pts = (0..n)
        .map(|i| {
            let a = 2.0 * PI * i as f64 / n as f64;
            vec![libm::cos(a), libm::sin(a)]
        })
        .collect();
    embed_owned(c, pts)
}

/// A scalene filled triangle in `R²`. χ = 1.
pub fn filled_triangle() -> (SimplicialComplex, Embedding) {
    embed_owned(lists(&[vec![0, 1, 2]]), vec![vec![0.0, 0.0], vec![3.0, 0.2], vec![0.7, 1.9]])
}

/// Half of the unit square, right angle at vertex 0.
pub fn right_triangle() -> (SimplicialComplex, Embedding) {
    embed_owned(lists(&[vec![0, 1, 2]]), vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]])
}

/// Boundary of the octahedron with vertices `±e_i`: ids `0..6` are
/// `+e1, −e1, +e2, −e2, +e3, −e3`. χ = 2.
pub fn octahedron() -> (SimplicialComplex, Embedding) {
    let mut tris = Vec::new();
    for a in [0, 1] {
        for b in [2, 3] {
            for c in [4, 5] {
                tris.push(vec![a, b, c]);
            }
        }
    }
    let pts = (0..6)
        .map(|i| {
            let mut p = vec![0.0; 3];
            p[i / 2] = if i % 2 == 0 { 1.0 } else { -1.0 };
            p
        })
        .collect();
    embed_owned(lists(&tris), pts)
}

/// Cone in `R³` over a hexagon, apex `0` above its centre. χ = 1.
pub fn cone_fan() -> (SimplicialComplex, Embedding) {
    let n = 6u32;
    let c = lists(&(1..=n).map(|i| vec![0, i, i % n + 1]).collect::<Vec<_>>());
    let mut pts = vec![vec![0.0, 0.0, 0.8]];
    for i in 0..n {
        let a = 2.0 * PI * i as f64 / n as f64 + 0.1;
        pts.push(vec![libm::cos(a), libm::sin(a), 0.0]);
    }
    embed_owned(c, pts)
}

/// Three triangles sharing the spine `{0,1}` in `R³`. χ = 1.
pub fn three_page_book() -> (SimplicialComplex, Embedding) {
    let c = lists(&[vec![0, 1, 2], vec![0, 1, 3], vec![0, 1, 4]]);
    let mut pts = vec![vec![0.0, 0.0, 0.0], vec![0.0, 0.0, 1.0]];
    for k in 0..3 {
        let a = 2.0 * PI * k as f64 / 3.0 + 0.3;
        pts.push(vec![libm::cos(a), libm::sin(a), 0.4 + 0.1 * k as f64]);
    }
    embed_owned(c, pts)
}

/// The unit square split along the diagonal `{1,2}`; vertex ids in
/// counter-clockwise order `(0,0), (1,0), (0,1), (1,1)`.
pub fn square() -> (SimplicialComplex, Embedding) {
    embed_owned(
        lists(&[vec![0, 1, 2], vec![1, 2, 3]]),
        vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]],
    )
}

/// All compact fixtures with their Euler characteristics.
pub fn gauss_bonnet_fixtures() -> Vec<(&'static str, Embedding, i64)> {
    vec![
        ("segment", segment().1, 1),
        ("hollow polygon", hollow_polygon(5).1, 0),
        ("filled triangle", filled_triangle().1, 1),
        ("octahedron", octahedron().1, 2),
        ("cone fan", cone_fan().1, 1),
        ("three-page book", three_page_book().1, 1),
    ]
}

/// Triangle `v0 v1 v2` with the edge `v1 v2` split at `p = λ·v1 + (1−λ)·v2`
/// (vertex 3), giving the triangles `{v0, v1, p}` and `{v0, p, v2}`.
pub fn lambda_triangle() -> SimplicialComplex {
    lists(&[vec![0, 1, 3], vec![0, 2, 3]])
}

/// The PL function on [`lambda_triangle`] that is affine on the big
/// triangle: its value at `p` is `λ·a1 + (1−λ)·a2`.
pub fn lambda_alpha(lambda: &Rational, a: [Rational; 3]) -> PlFunction {
    let one = int(1);
    let p = lambda * &a[1] + (&one - lambda) * &a[2];
    let [a0, a1, a2] = a;
    let values = [(0u32, a0), (1, a1), (2, a2), (3, p)].into_iter().map(|(v, x)| (VertexId(v), x)).collect();
    PlFunction::new(&lambda_triangle(), values).expect("all vertices valued")
}

/// The identity function on the edge `[0, 1]`.
pub fn id_on_edge() -> (SimplicialComplex, PlFunction) {
    let c = lists(&[vec![0, 1]]);
    let a = PlFunction::from_fn(&c, |v| int(v.0 as i64));
    (c, a)
}

/// Height map from the octahedron onto the path `0 – 1 – 2`: `−e3 ↦ 0`,
/// equator `↦ 1`, `+e3 ↦ 2`.
pub fn octahedron_height_map() -> SimplicialMap {
    let (oct, _) = octahedron();
    let path = lists(&[vec![0, 1], vec![1, 2]]);
    let vm = (0..6u32)
        .map(|i| {
            let t = match i {
                4 => 2,
                5 => 0,
                _ => 1,
            };
            (VertexId(i), VertexId(t))
        })
        .collect();
    SimplicialMap::new(oct, path, vm).expect("height map is simplicial")
}

/// Random complex on `1..=max_vertices` vertices generated by random
/// simplices of dimension at most `max_dim`.
pub fn random_complex<R: Rng + ?Sized>(rng: &mut R, max_vertices: u32, max_dim: usize) -> SimplicialComplex {
    let n = rng.random_range(1..=max_vertices);
    let mut gens = Vec::new();
    let count = rng.random_range(1..=n as usize + 2);
    for _ in 0..count {
        let d = rng.random_range(0..=max_dim.min(n as usize - 1));
        let mut pick = BTreeSet::new();
        while pick.len() < d + 1 {
            pick.insert(rng.random_range(0..n));
        }
        gens.push(Simplex::new(pick).expect("nonempty"));
    }
    // Every vertex appears, so ids stay dense.
    gens.extend((0..n).map(Simplex::vertex));
    SimplicialComplex::from_maximal(gens)
}

/// Random rational in `[-range, range]` with denominator at most `max_den`.
pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, range: i64, max_den: i64) -> Rational {
    let q = rng.random_range(1..=max_den);
    let p = rng.random_range(-range * q..=range * q);
    rat(p, q)
}

pub fn random_alpha<R: Rng + ?Sized>(rng: &mut R, complex: &SimplicialComplex) -> PlFunction {
    PlFunction::from_fn(complex, |_| random_rational(rng, 5, 7))
}

/// Random coefficients on a random subset of `cells`.
pub fn random_coeffs<R: Rng + ?Sized, C: Ord + Clone>(rng: &mut R, cells: impl Iterator<Item = C>) -> BTreeMap<C, Rational> {
    let mut out = BTreeMap::new();
    for c in cells {
        if rng.random_bool(0.6) {
            out.insert(c, random_rational(rng, 3, 4));
        }
    }
    out
}
