use curvcalc_core::complex::SimplicialComplex;
use curvcalc_core::pl::PlFunction;
use curvcalc_core::rational::int;
use curvcalc_core::subdivision::{barycentric_subdivide, signature_census, signature_sums, Signature};
use num_traits::Zero;

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Chains with signature `s` in the subdivided `n`-simplex: choose the
/// successive differences, leaving `n + 1 − Σs` vertices unused.
fn multinomial(n: usize, s: &Signature) -> u64 {
    let rest = n + 1 - s.total();
    factorial(n + 1) / (s.parts().iter().map(|p| factorial(*p)).product::<u64>() * factorial(rest))
}

fn full_simplex(n: usize) -> SimplicialComplex {
    let verts: Vec<u32> = (0..=n as u32).collect();
    SimplicialComplex::from_lists(&[&verts]).unwrap()
}

#[test]
fn census_matches_multinomials() {
    for n in 0..=5 {
        let census = signature_census(n);
        for (s, count) in &census {
            assert_eq!(*count, multinomial(n, s), "n={n} {s}");
        }
        let top = Signature(vec![n + 1]);
        assert_eq!(census[&top], 1);
    }
}

#[test]
fn census_totals_match_subdivision() {
    for n in 0..=3 {
        let c = full_simplex(n);
        let sd = barycentric_subdivide(&c, &PlFunction::constant(&c, int(0))).unwrap();
        let total: u64 = signature_census(n).values().sum();
        assert_eq!(total as usize, sd.complex.len(), "n={n}");
        assert_eq!(sd.complex.vertices().len(), c.len());
    }
}

#[test]
fn grouped_sums_cancel_in_pairs() {
    for n in 0..=4 {
        let sums = signature_sums(n);
        for (s, b) in &sums {
            if s.total() != n + 1 {
                continue;
            }
            let Some(t) = s.truncated() else { continue };
            let bt = &sums[&t];
            for (x, y) in b.iter().zip(bt) {
                assert!((x + y).is_zero(), "n={n} {s}");
            }
        }
    }
}
