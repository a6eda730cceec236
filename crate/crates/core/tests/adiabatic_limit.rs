use curvcalc_core::adiabatic::{adiabatic_sweep, curvature_density, nonsplit_demo, Profile};

const EPS: [f64; 6] = [0.0, 0.25, 0.5, 0.9, 0.99, 0.999];

#[test]
fn total_mass_is_conserved_and_equals_euler_characteristic() {
    for p in Profile::ALL {
        let w = p.warp(10_000).unwrap();
        let rows = adiabatic_sweep(&w, &EPS).unwrap();
        let first = rows[0].measure.total();
        for r in &rows {
            assert!((r.measure.total() - first).abs() < 1e-8, "{} eps={}", p.name(), r.eps);
            assert!((r.measure.total() - p.euler_characteristic() as f64).abs() < 1e-6, "{}", p.name());
        }
    }
}

#[test]
fn sphere_mass_moves_to_the_poles() {
    let w = Profile::Sphere.warp(10_000).unwrap();
    for eps in EPS {
        let m = curvature_density(&w, eps).unwrap();
        assert!((m.interior_mass - 2.0 * (1.0 - eps)).abs() < 1e-6);
        assert!((m.atom_a - eps).abs() < 1e-6 && (m.atom_b - eps).abs() < 1e-6);
    }
}

#[test]
fn interior_density_vanishes_linearly() {
    let w = Profile::Sphere.warp(2_000).unwrap();
    let sup0 = curvature_density(&w, 0.0).unwrap().sup_density();
    for eps in EPS {
        let sup = curvature_density(&w, eps).unwrap().sup_density();
        assert!((sup - (1.0 - eps) * sup0).abs() < 1e-9 * sup0);
    }
}

#[test]
fn discretization_error_is_small() {
    // Fourth-order stencils: the sphere interior mass error at eps = 0 is
    // far below the second-order bound.
    let coarse = (curvature_density(&Profile::Sphere.warp(201).unwrap(), 0.0).unwrap().interior_mass - 2.0).abs();
    assert!(coarse < 1e-6, "{coarse}");
}

#[test]
fn nonsplit_reports() {
    let r = nonsplit_demo(&Profile::Paraboloid.warp(1_000).unwrap()).unwrap();
    assert!(r.not_absolutely_continuous);
    assert!(r.pushforward.density.iter().all(|l| *l < 0.0));
    let t = nonsplit_demo(&Profile::Torus.warp(1_000).unwrap()).unwrap();
    assert_eq!(t.base_atoms, (0.0, 0.0));
    assert!(t.not_absolutely_continuous);
}
