//! Surfaces of revolution `dt² + f(t)²dθ²` fibered over `[a, b]`, with the
//! circle fibers shrunk by `(1 − ε)`.
//!
//! The Gauss curvature is `K = −f″/f`, so the pushforward of `(2π)⁻¹K dA` to
//! the base has density `λ_ε = −(1 − ε)f″`. A pole (`f = 0` at an end) carries
//! the cone-angle defect `1 − (1 − ε)|f′|` and a boundary circle carries its
//! geodesic curvature `±(1 − ε)f′`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::{Error, Result};

/// Ends with `f` below this value are poles.
pub const POLE_TOL: f64 = 1e-12;

/// Points per grid when none is given.
pub const DEFAULT_GRID: usize = 4096;

/// Built-in warp profiles.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Profile {
    /// `cos t` on `[−π/2, π/2]`: two poles.
    Sphere,
    /// `1` on `[0, 1]`: two boundary circles.
    Cylinder,
    /// `t` on `[0, 1]`: a pole and a boundary circle.
    Cone,
    /// `2 + cos t` on `[0, 2π]` with the ends identified.
    Torus,
    /// `1 + t²` on `[0, 1]`: two boundary circles.
    Paraboloid,
}

impl Profile {
    pub const ALL: [Profile; 5] = [Profile::Sphere, Profile::Cylinder, Profile::Cone, Profile::Torus, Profile::Paraboloid];

    pub fn name(self) -> &'static str {
        match self {
            Profile::Sphere => "sphere",
            Profile::Cylinder => "cylinder",
            Profile::Cone => "cone",
            Profile::Torus => "torus",
            Profile::Paraboloid => "paraboloid",
        }
    }

    pub fn from_name(name: &str) -> Option<Profile> {
        Profile::ALL.into_iter().find(|p| p.name() == name)
    }

    pub fn warp(self, grid: usize) -> Result<WarpFunction> {
        match self {
            Profile::Sphere => WarpFunction::from_fn(-PI / 2.0, PI / 2.0, grid, false, libm::cos),
            Profile::Cylinder => WarpFunction::from_fn(0.0, 1.0, grid, false, |_| 1.0),
            Profile::Cone => WarpFunction::from_fn(0.0, 1.0, grid, false, |t| t),
            Profile::Torus => WarpFunction::from_fn(0.0, 2.0 * PI, grid, true, |t| 2.0 + libm::cos(t)),
            Profile::Paraboloid => WarpFunction::from_fn(0.0, 1.0, grid, false, |t| 1.0 + t * t),
        }
    }

    /// Euler characteristic of the surface.
    pub fn euler_characteristic(self) -> i64 {
        match self {
            Profile::Sphere => 2,
            Profile::Cone => 1,
            _ => 0,
        }
    }
}

/// Samples of `f` on a uniform grid over `[a, b]`.
///
/// A periodic warp omits the point `b`, which coincides with `a`.
#[derive(Clone, Debug, PartialEq)]
pub struct WarpFunction {
    a: f64,
    b: f64,
    values: Vec<f64>,
    periodic: bool,
}

impl WarpFunction {
    pub fn from_fn<F: Fn(f64) -> f64>(a: f64, b: f64, grid: usize, periodic: bool, f: F) -> Result<Self> {
        let w = WarpFunction { a, b, values: Vec::new(), periodic };
        let values = (0..grid).map(|i| f(w.t_for(i, grid))).collect();
        Self::from_values(a, b, values, periodic)
    }

    pub fn from_values(a: f64, b: f64, values: Vec<f64>, periodic: bool) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidWarp("interval must satisfy a < b".into()));
        }
        if values.len() < 5 {
            return Err(Error::GridTooCoarse(values.len()));
        }
        for (i, f) in values.iter().enumerate() {
            if !f.is_finite() {
                return Err(Error::InvalidWarp("non-finite sample".into()));
            }
            if *f < 0.0 {
                return Err(Error::NegativeWarp(i));
            }
            let end = !periodic && (i == 0 || i == values.len() - 1);
            if !end && *f < POLE_TOL {
                return Err(Error::InvalidWarp("warp vanishes away from the ends".into()));
            }
        }
        Ok(WarpFunction { a, b, values, periodic })
    }

    /// From `(t, f)` pairs on a uniform grid, `t` increasing.
    pub fn from_samples(t: &[f64], f: &[f64], periodic: bool) -> Result<Self> {
        if t.len() != f.len() {
            return Err(Error::DimensionMismatch { expected: t.len(), found: f.len() });
        }
        if t.len() < 5 {
            return Err(Error::GridTooCoarse(t.len()));
        }
        let h = (t[t.len() - 1] - t[0]) / (t.len() - 1) as f64;
        for (i, x) in t.iter().enumerate() {
            if (x - (t[0] + h * i as f64)).abs() > 1e-9 * (1.0 + x.abs()) {
                return Err(Error::InvalidWarp("grid is not uniform".into()));
            }
        }
        let (b, values) = if periodic {
            (t[t.len() - 1] + h, f.to_vec())
        } else {
            (t[t.len() - 1], f.to_vec())
        };
        Self::from_values(t[0], b, values, periodic)
    }

    fn t_for(&self, i: usize, n: usize) -> f64 {
        let intervals = if self.periodic { n } else { n - 1 };
        self.a + (self.b - self.a) * i as f64 / intervals as f64
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn interval(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn is_periodic(&self) -> bool {
        self.periodic
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn t(&self, i: usize) -> f64 {
        self.t_for(i, self.values.len())
    }

    pub fn step(&self) -> f64 {
        self.t(1) - self.t(0)
    }

    pub fn pole_at_a(&self) -> bool {
        !self.periodic && self.values[0] < POLE_TOL
    }

    pub fn pole_at_b(&self) -> bool {
        !self.periodic && self.values[self.values.len() - 1] < POLE_TOL
    }

    /// Fourth-order second derivative at every grid point.
    pub fn second_derivative(&self) -> Vec<f64> {
        let f = &self.values;
        let n = f.len();
        let h2 = 12.0 * self.step() * self.step();
        let central = |m2: f64, m1: f64, c: f64, p1: f64, p2: f64| (-m2 + 16.0 * m1 - 30.0 * c + 16.0 * p1 - p2) / h2;
        if self.periodic {
            return (0..n)
                .map(|i| {
                    let at = |k: isize| f[(i as isize + k).rem_euclid(n as isize) as usize];
                    central(at(-2), at(-1), at(0), at(1), at(2))
                })
                .collect();
        }
        let edge0 = |g: &dyn Fn(usize) -> f64| (35.0 * g(0) - 104.0 * g(1) + 114.0 * g(2) - 56.0 * g(3) + 11.0 * g(4)) / h2;
        let edge1 = |g: &dyn Fn(usize) -> f64| (11.0 * g(0) - 20.0 * g(1) + 6.0 * g(2) + 4.0 * g(3) - g(4)) / h2;
        let fwd = |k: usize| f[k];
        let bwd = |k: usize| f[n - 1 - k];
        (0..n)
            .map(|i| match i {
                0 => edge0(&fwd),
                1 => edge1(&fwd),
                _ if i == n - 1 => edge0(&bwd),
                _ if i == n - 2 => edge1(&bwd),
                _ => central(f[i - 2], f[i - 1], f[i], f[i + 1], f[i + 2]),
            })
            .collect()
    }

    /// Fourth-order one-sided derivatives `(f′(a), f′(b))`.
    pub fn end_derivatives(&self) -> (f64, f64) {
        let f = &self.values;
        let n = f.len();
        let h = 12.0 * self.step();
        let one_sided = |g: &dyn Fn(usize) -> f64| (-25.0 * g(0) + 48.0 * g(1) - 36.0 * g(2) + 16.0 * g(3) - 3.0 * g(4)) / h;
        (one_sided(&|k| f[k]), -one_sided(&|k| f[n - 1 - k]))
    }
}

/// Composite Simpson on a uniform grid, finishing with the 3/8 rule when the
/// number of intervals is odd.
pub fn simpson(y: &[f64], h: f64) -> f64 {
    let n = y.len() - 1;
    match n {
        0 => 0.0,
        1 => 0.5 * h * (y[0] + y[1]),
        2 => h / 3.0 * (y[0] + 4.0 * y[1] + y[2]),
        _ => {
            let even = if n.is_multiple_of(2) { n } else { n - 3 };
            let mut s = 0.0;
            for k in (0..even).step_by(2) {
                s += y[k] + 4.0 * y[k + 1] + y[k + 2];
            }
            s *= h / 3.0;
            if even < n {
                let k = even;
                s += 3.0 * h / 8.0 * (y[k] + 3.0 * y[k + 1] + 3.0 * y[k + 2] + y[k + 3]);
            }
            s
        }
    }
}

/// A measure on the base: a density on the grid plus atoms at the ends.
#[derive(Clone, Debug, PartialEq)]
pub struct BaseMeasure {
    pub t: Vec<f64>,
    pub density: Vec<f64>,
    pub interior_mass: f64,
    pub atom_a: f64,
    pub atom_b: f64,
}

impl BaseMeasure {
    pub fn total(&self) -> f64 {
        self.interior_mass + self.atom_a + self.atom_b
    }

    pub fn sup_density(&self) -> f64 {
        self.density.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

/// Pushforward of the curvature of the `ε`-shrunk surface to the base.
pub fn curvature_density(w: &WarpFunction, eps: f64) -> Result<BaseMeasure> {
    if !(0.0..1.0).contains(&eps) {
        return Err(Error::InvalidParameter("eps must lie in [0, 1)".into()));
    }
    let s = 1.0 - eps;
    let density: Vec<f64> = w.second_derivative().into_iter().map(|d| -s * d).collect();
    let t = (0..w.len()).map(|i| w.t(i)).collect();
    if w.is_periodic() {
        let interior_mass = density.iter().sum::<f64>() * w.step();
        return Ok(BaseMeasure { t, density, interior_mass, atom_a: 0.0, atom_b: 0.0 });
    }
    let interior_mass = simpson(&density, w.step());
    let (da, db) = w.end_derivatives();
    let atom_a = if w.pole_at_a() { 1.0 - s * da.abs() } else { -s * da };
    let atom_b = if w.pole_at_b() { 1.0 - s * db.abs() } else { s * db };
    Ok(BaseMeasure { t, density, interior_mass, atom_a, atom_b })
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub eps: f64,
    pub measure: BaseMeasure,
}

pub fn adiabatic_sweep(w: &WarpFunction, eps: &[f64]) -> Result<Vec<SweepRow>> {
    eps.iter().map(|e| Ok(SweepRow { eps: *e, measure: curvature_density(w, *e)? })).collect()
}

/// The pushforward curvature beside the base interval's own curvature.
#[derive(Clone, Debug, PartialEq)]
pub struct NonsplitReport {
    pub pushforward: BaseMeasure,
    /// The base's curvature: atoms `½` at the ends of an interval, nothing
    /// for a circle, never any interior density.
    pub base_atoms: (f64, f64),
    /// Fraction of interior grid points where `|λ|` exceeds the tolerance.
    pub interior_support: f64,
    /// The pushforward charges the interior, where the base measure vanishes.
    pub not_absolutely_continuous: bool,
}

pub fn nonsplit_demo(w: &WarpFunction) -> Result<NonsplitReport> {
    let m = curvature_density(w, 0.0)?;
    let tol = 1e-6 * (1.0 + m.sup_density());
    let interior = if w.is_periodic() { &m.density[..] } else { &m.density[1..m.density.len() - 1] };
    let charged = interior.iter().filter(|x| x.abs() > tol).count();
    let interior_support = charged as f64 / interior.len() as f64;
    let base_atoms = if w.is_periodic() { (0.0, 0.0) } else { (0.5, 0.5) };
    Ok(NonsplitReport {
        pushforward: m,
        base_atoms,
        interior_support,
        not_absolutely_continuous: interior_support > 0.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stencils_are_exact_on_quartics() {
        let w = WarpFunction::from_fn(0.0, 1.0, 9, false, |t| 1.0 + t * t * t * t).unwrap();
        for (i, d) in w.second_derivative().iter().enumerate() {
            let t = w.t(i);
            assert!((d - 12.0 * t * t).abs() < 1e-9, "{i}: {d}");
        }
        let (da, db) = w.end_derivatives();
        assert!(da.abs() < 1e-10 && (db - 4.0).abs() < 1e-10);
    }

    #[test]
    fn simpson_handles_odd_interval_counts() {
        for n in 4..10 {
            let h = 1.0 / (n - 1) as f64;
            let y: Vec<f64> = (0..n).map(|i| (i as f64 * h).powi(3)).collect();
            assert!((simpson(&y, h) - 0.25).abs() < 1e-14, "n={n}");
        }
    }

    #[test]
    fn sphere_at_rest() {
        let w = Profile::Sphere.warp(2001).unwrap();
        assert!(w.pole_at_a() && w.pole_at_b());
        let m = curvature_density(&w, 0.0).unwrap();
        assert!((m.interior_mass - 2.0).abs() < 1e-9);
        assert!(m.atom_a.abs() < 1e-9 && m.atom_b.abs() < 1e-9);
        for (t, l) in m.t.iter().zip(&m.density) {
            assert!((l - libm::cos(*t)).abs() < 1e-7);
        }
    }

    #[test]
    fn cone_is_a_flat_disk() {
        let m = curvature_density(&Profile::Cone.warp(101).unwrap(), 0.0).unwrap();
        assert!(m.atom_a.abs() < 1e-12);
        assert!((m.atom_b - 1.0).abs() < 1e-12);
        assert!(m.interior_mass.abs() < 1e-9);
    }

    #[test]
    fn cylinder_carries_nothing() {
        for eps in [0.0, 0.5, 0.9] {
            let m = curvature_density(&Profile::Cylinder.warp(64).unwrap(), eps).unwrap();
            assert_eq!(m.total(), 0.0);
        }
    }

    #[test]
    fn paraboloid_density_is_negative() {
        let m = curvature_density(&Profile::Paraboloid.warp(101).unwrap(), 0.0).unwrap();
        assert!(m.density.iter().all(|l| (l + 2.0).abs() < 1e-8));
        assert!((m.atom_b - 2.0).abs() < 1e-9);
        assert!(m.total().abs() < 1e-9);
    }

    #[test]
    fn torus_total_vanishes() {
        let w = Profile::Torus.warp(512).unwrap();
        for row in adiabatic_sweep(&w, &[0.0, 0.5, 0.99]).unwrap() {
            assert!(row.measure.total().abs() < 1e-10);
        }
    }

    #[test]
    fn invalid_warps() {
        assert_eq!(Profile::Sphere.warp(4).unwrap_err(), Error::GridTooCoarse(4));
        assert_eq!(
            WarpFunction::from_values(0.0, 1.0, alloc::vec![1.0, 1.0, -1.0, 1.0, 1.0], false).unwrap_err(),
            Error::NegativeWarp(2)
        );
        assert!(curvature_density(&Profile::Sphere.warp(10).unwrap(), 1.0).is_err());
    }

    #[test]
    fn sampled_profile_matches_closed_form() {
        let t: Vec<f64> = (0..101).map(|i| i as f64 / 100.0).collect();
        let f: Vec<f64> = t.iter().map(|x| 1.0 + x * x).collect();
        let w = WarpFunction::from_samples(&t, &f, false).unwrap();
        assert_eq!(w, Profile::Paraboloid.warp(101).unwrap());
    }

    #[test]
    fn nonsplit_flags() {
        let r = nonsplit_demo(&Profile::Sphere.warp(1001).unwrap()).unwrap();
        assert!(r.not_absolutely_continuous);
        assert_eq!(r.base_atoms, (0.5, 0.5));
        let c = nonsplit_demo(&Profile::Cylinder.warp(64).unwrap()).unwrap();
        assert!(!c.not_absolutely_continuous);
    }
}
