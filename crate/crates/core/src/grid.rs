//! Uniform periodic grids, discrete Fourier transforms, and quadrature.
//!
//! The forward transform approximates `û(ξ) = ∫ e^{−ixξ} u(x) dx`; the inverse
//! integrates against the measure `(2π)^{−n} dξ`. Grids cover `[−L, L)^n` with
//! `N` nodes per axis, spacing `h = 2L/N`, and the frequency lattice
//! `ξ_k = πk/L` stored in centered order (`k = −N/2 … N/2−1`). With these
//! conventions `inverse_transform(forward_transform(u)) = u` up to roundoff.

use std::cell::RefCell;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

thread_local! {
    // Plans are cached per thread; rustfft planners are not Sync.
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(n: usize, forward: bool) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        if forward {
            p.plan_fft_forward(n)
        } else {
            p.plan_fft_inverse(n)
        }
    })
}

/// Which side of the transform a field lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    Space,
    Frequency,
}

/// A uniform periodic grid on `[−L, L)^n`, `n ∈ {1, 2}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    dimension: usize,
    half_length: f64,
    points_per_dim: usize,
}

impl GridSpec {
    pub fn new(dimension: usize, half_length: f64, points_per_dim: usize) -> Result<Self> {
        if dimension != 1 && dimension != 2 {
            return Err(Error::UnsupportedDimension(dimension));
        }
        if !(half_length.is_finite() && half_length > 0.0) {
            return Err(Error::InvalidHalfLength(half_length));
        }
        if points_per_dim < 2 || !points_per_dim.is_power_of_two() {
            return Err(Error::InvalidPointCount(points_per_dim));
        }
        Ok(Self {
            dimension,
            half_length,
            points_per_dim,
        })
    }

    /// One-dimensional grid.
    pub fn line(half_length: f64, points_per_dim: usize) -> Result<Self> {
        Self::new(1, half_length, points_per_dim)
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn half_length(&self) -> f64 {
        self.half_length
    }

    pub fn points_per_dim(&self) -> usize {
        self.points_per_dim
    }

    /// Node spacing `h = 2L/N`.
    pub fn spacing(&self) -> f64 {
        2.0 * self.half_length / self.points_per_dim as f64
    }

    /// Frequency lattice spacing `π/L`.
    pub fn freq_spacing(&self) -> f64 {
        std::f64::consts::PI / self.half_length
    }

    /// Largest resolved frequency `πN/(2L)`.
    pub fn nyquist(&self) -> f64 {
        std::f64::consts::PI * self.points_per_dim as f64 / (2.0 * self.half_length)
    }

    pub fn total_points(&self) -> usize {
        self.points_per_dim.pow(self.dimension as u32)
    }

    /// Node coordinates along one axis: `x_j = −L + jh`.
    pub fn axis_coords(&self) -> Vec<f64> {
        let h = self.spacing();
        (0..self.points_per_dim)
            .map(|j| -self.half_length + h * j as f64)
            .collect()
    }

    /// Frequency coordinates along one axis in centered order.
    pub fn freq_coords(&self) -> Vec<f64> {
        let n = self.points_per_dim as i64;
        let d = self.freq_spacing();
        (-n / 2..n / 2).map(|k| d * k as f64).collect()
    }

    /// Coordinates of the node with the given row-major flat index.
    pub fn node_position(&self, flat: usize) -> Vec<f64> {
        let xs = self.axis_coords();
        match self.dimension {
            1 => vec![xs[flat]],
            _ => {
                let n = self.points_per_dim;
                vec![xs[flat / n], xs[flat % n]]
            }
        }
    }

    /// Frequency coordinates of the bin with the given row-major flat index.
    pub fn freq_position(&self, flat: usize) -> Vec<f64> {
        let xs = self.freq_coords();
        match self.dimension {
            1 => vec![xs[flat]],
            _ => {
                let n = self.points_per_dim;
                vec![xs[flat / n], xs[flat % n]]
            }
        }
    }
}

/// Complex samples of a function on a grid, tagged with its domain.
#[derive(Clone, Debug)]
pub struct Field {
    grid: GridSpec,
    domain: Domain,
    values: Vec<Complex64>,
}

impl Field {
    pub fn new(grid: GridSpec, domain: Domain, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.total_points() {
            return Err(Error::ValueCountMismatch {
                expected: grid.total_points(),
                actual: values.len(),
            });
        }
        Ok(Self {
            grid,
            domain,
            values,
        })
    }

    pub fn zeros(grid: GridSpec, domain: Domain) -> Self {
        Self {
            grid,
            domain,
            values: vec![Complex64::new(0.0, 0.0); grid.total_points()],
        }
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// New field with the same grid and domain, values transformed pointwise.
    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        Self {
            grid: self.grid,
            domain: self.domain,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    pub(crate) fn expect_domain(&self, expected: Domain) -> Result<()> {
        if self.domain != expected {
            return Err(Error::DomainMismatch {
                expected,
                actual: self.domain,
            });
        }
        Ok(())
    }
}

/// Sample a pointwise function on the grid nodes.
///
/// Rejects non-finite values, naming the offending node.
pub fn sample<F>(grid: GridSpec, generator: F) -> Result<Field>
where
    F: Fn(&[f64]) -> Complex64,
{
    let xs = grid.axis_coords();
    let mut values = Vec::with_capacity(grid.total_points());
    match grid.dimension() {
        1 => {
            for &x in &xs {
                values.push(generator(&[x]));
            }
        }
        _ => {
            for &x in &xs {
                for &y in &xs {
                    values.push(generator(&[x, y]));
                }
            }
        }
    }
    if let Some(index) = values
        .iter()
        .position(|v| !(v.re.is_finite() && v.im.is_finite()))
    {
        return Err(Error::NonFiniteSample {
            index,
            position: grid.node_position(index),
            value: values[index],
        });
    }
    Field::new(grid, Domain::Space, values)
}

/// Sample a real-valued function of one variable on a 1-D grid.
pub fn sample_1d<F>(grid: GridSpec, f: F) -> Result<Field>
where
    F: Fn(f64) -> f64,
{
    if grid.dimension() != 1 {
        return Err(Error::DimensionUnsupported {
            required: 1,
            actual: grid.dimension(),
        });
    }
    sample(grid, |x| Complex64::new(f(x[0]), 0.0))
}

// Transform one axis in place. `stride`/`count` select rows (stride 1) or
// columns (stride N) of the row-major layout.
fn transform_axis(
    values: &mut [Complex64],
    n: usize,
    count: usize,
    stride: usize,
    block: usize,
    forward: bool,
    scale_per_axis: f64,
) {
    let fft = plan(n, forward);
    let half = n / 2;
    let mut line = vec![Complex64::new(0.0, 0.0); n];
    for c in 0..count {
        let base = (c / block) * block * n + (c % block);
        if forward {
            for (i, slot) in line.iter_mut().enumerate() {
                *slot = values[base + i * stride];
            }
            fft.process(&mut line);
            // reorder to centered frequencies and apply the phase (−1)^k
            for i in 0..n {
                let sign = if (i + half).is_multiple_of(2) { 1.0 } else { -1.0 };
                values[base + i * stride] = line[(i + half) % n] * sign * scale_per_axis;
            }
        } else {
            for i in 0..n {
                let sign = if (i + half).is_multiple_of(2) { 1.0 } else { -1.0 };
                line[(i + half) % n] = values[base + i * stride] * sign;
            }
            fft.process(&mut line);
            for (i, slot) in line.iter().enumerate() {
                values[base + i * stride] = slot * scale_per_axis;
            }
        }
    }
}

/// Discrete realization of `û(ξ) = ∫ e^{−ixξ} u(x) dx` on the centered lattice.
pub fn forward_transform(u: &Field) -> Result<Field> {
    u.expect_domain(Domain::Space)?;
    let grid = u.grid();
    let n = grid.points_per_dim();
    let h = grid.spacing();
    let mut values = u.values().to_vec();
    match grid.dimension() {
        1 => transform_axis(&mut values, n, 1, 1, 1, true, h),
        _ => {
            transform_axis(&mut values, n, n, 1, 1, true, h); // rows
            transform_axis(&mut values, n, n, n, n, true, h); // columns
        }
    }
    Field::new(grid, Domain::Frequency, values)
}

/// Exact two-sided inverse of [`forward_transform`], realizing the
/// `(2π)^{−n} dξ` normalization.
pub fn inverse_transform(v: &Field) -> Result<Field> {
    v.expect_domain(Domain::Frequency)?;
    let grid = v.grid();
    let n = grid.points_per_dim();
    // unnormalized inverse FFT needs 1/(N h) = 1/(2L) per axis
    let scale = 1.0 / (n as f64 * grid.spacing());
    let mut values = v.values().to_vec();
    match grid.dimension() {
        1 => transform_axis(&mut values, n, 1, 1, 1, false, scale),
        _ => {
            transform_axis(&mut values, n, n, 1, 1, false, scale);
            transform_axis(&mut values, n, n, n, n, false, scale);
        }
    }
    Field::new(grid, Domain::Space, values)
}

/// Rectangle-rule `L²` norm `(h^n Σ|u|²)^{1/2}` of a space-domain field.
pub fn l2_norm(u: &Field) -> Result<f64> {
    u.expect_domain(Domain::Space)?;
    let cell = u.grid().spacing().powi(u.grid().dimension() as i32);
    Ok((cell * u.values().iter().map(|v| v.norm_sqr()).sum::<f64>()).sqrt())
}

/// Rectangle-rule `L¹` norm `h^n Σ|u|` of a space-domain field.
pub fn l1_norm(u: &Field) -> Result<f64> {
    u.expect_domain(Domain::Space)?;
    let cell = u.grid().spacing().powi(u.grid().dimension() as i32);
    Ok(cell * u.values().iter().map(|v| v.norm()).sum::<f64>())
}

/// `L²` norm restricted to nodes with `|x|_∞ ≤ half_width`.
pub fn l2_norm_within(u: &Field, half_width: f64) -> Result<f64> {
    u.expect_domain(Domain::Space)?;
    let grid = u.grid();
    let cell = grid.spacing().powi(grid.dimension() as i32);
    let xs = grid.axis_coords();
    let mut sum = 0.0;
    match grid.dimension() {
        1 => {
            for (v, &x) in u.values().iter().zip(&xs) {
                if x.abs() <= half_width {
                    sum += v.norm_sqr();
                }
            }
        }
        _ => {
            let n = grid.points_per_dim();
            for (i, v) in u.values().iter().enumerate() {
                if xs[i / n].abs() <= half_width && xs[i % n].abs() <= half_width {
                    sum += v.norm_sqr();
                }
            }
        }
    }
    Ok((cell * sum).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gauss(x: f64) -> f64 {
        (-x * x / 2.0).exp()
    }

    fn rel_l2(a: &[Complex64], b: &[Complex64]) -> f64 {
        let num: f64 = a
            .iter()
            .zip(b)
            .map(|(x, y)| (x - y).norm_sqr())
            .sum::<f64>()
            .sqrt();
        let den: f64 = b.iter().map(|y| y.norm_sqr()).sum::<f64>().sqrt();
        num / den
    }

    #[test]
    fn grid_validation() {
        assert!(GridSpec::new(3, 10.0, 64).is_err());
        assert!(GridSpec::new(1, -1.0, 64).is_err());
        assert!(GridSpec::new(1, 10.0, 100).is_err());
        assert!(GridSpec::new(1, 10.0, 1).is_err());
        let g = GridSpec::line(10.0, 64).unwrap();
        assert_eq!(g.spacing(), 20.0 / 64.0);
        assert_eq!(g.freq_coords().len(), 64);
        assert_eq!(g.freq_coords()[32], 0.0);
    }

    #[test]
    fn sample_constant_is_all_ones() {
        let g = GridSpec::line(5.0, 32).unwrap();
        let f = sample(g, |_| Complex64::new(1.0, 0.0)).unwrap();
        assert!(f.values().iter().all(|v| *v == Complex64::new(1.0, 0.0)));
    }

    #[test]
    fn sample_soliton_peak() {
        let g = GridSpec::line(100.0, 1 << 14).unwrap();
        let f = sample_1d(g, |x| 2.0 / (1.0 + x * x)).unwrap();
        // x = 0 is the node N/2
        assert_eq!(f.values()[1 << 13], Complex64::new(2.0, 0.0));
    }

    #[test]
    fn sample_lorentzian_point_value() {
        let g = GridSpec::line(8.0, 16).unwrap();
        let f = sample_1d(g, |x| 1.0 / (1.0 + x * x)).unwrap();
        // x = 3 is a node: h = 1, j = 11
        assert!((f.values()[11].re - 0.1).abs() < 1e-15);
    }

    #[test]
    fn sample_rejects_non_finite() {
        let g = GridSpec::line(5.0, 32).unwrap();
        let err = sample_1d(g, |x| 1.0 / x).unwrap_err();
        match err {
            Error::NonFiniteSample { position, .. } => {
                assert_eq!(position, vec![0.0]);
            }
            other => panic!("unexpected error {other}"),
        }
    }

    #[test]
    fn round_trip_identity() {
        let g = GridSpec::line(13.0, 256).unwrap();
        let f = sample(g, |x| Complex64::new((x[0] * 0.7).sin(), (x[0] * 0.3).cos())).unwrap();
        let back = inverse_transform(&forward_transform(&f).unwrap()).unwrap();
        assert!(rel_l2(back.values(), f.values()) < 1e-12);
    }

    #[test]
    fn gaussian_transform_closed_form() {
        let g = GridSpec::line(40.0, 1 << 12).unwrap();
        let f = sample_1d(g, gauss).unwrap();
        let got = forward_transform(&f).unwrap();
        let expected: Vec<Complex64> = g
            .freq_coords()
            .iter()
            .map(|&xi| Complex64::new((2.0 * std::f64::consts::PI).sqrt() * gauss(xi), 0.0))
            .collect();
        assert!(rel_l2(got.values(), &expected) < 1e-10);
    }

    #[test]
    fn lorentzian_transform_matches_exponential() {
        // relative error pointwise on 0 < |xi| <= 5
        let g = GridSpec::line(200.0, 1 << 15).unwrap();
        let f = sample_1d(g, |x| 1.0 / (1.0 + x * x)).unwrap();
        let got = forward_transform(&f).unwrap();
        let xi = g.freq_coords();
        let mut worst = 0.0f64;
        for (k, &x) in xi.iter().enumerate() {
            if x != 0.0 && x.abs() <= 5.0 {
                let exact = std::f64::consts::PI * (-x.abs()).exp();
                worst = worst.max((got.values()[k].re - exact).abs() / exact);
                worst = worst.max(got.values()[k].im.abs() / exact);
            }
        }
        assert!(worst < 1e-3, "worst relative error {worst}");
    }

    #[test]
    fn impulse_transforms_to_constant() {
        let g = GridSpec::line(4.0, 16).unwrap();
        let mut f = Field::zeros(g, Domain::Space);
        f.values_mut()[8] = Complex64::new(1.0, 0.0); // node at x = 0
        let got = forward_transform(&f).unwrap();
        let h = g.spacing();
        for v in got.values() {
            assert!((v - Complex64::new(h, 0.0)).norm() < 1e-14);
        }
        // and back
        let back = inverse_transform(&got).unwrap();
        assert!((back.values()[8].re - 1.0).abs() < 1e-13);
        assert!(back.values().iter().map(|v| v.norm()).sum::<f64>() - 1.0 < 1e-12);
    }

    #[test]
    fn sampled_exponential_inverts_to_lorentzian() {
        let g = GridSpec::line(200.0, 1 << 15).unwrap();
        let spec: Vec<Complex64> = g
            .freq_coords()
            .iter()
            .map(|&xi| Complex64::new(std::f64::consts::PI * (-xi.abs()).exp(), 0.0))
            .collect();
        let v = Field::new(g, Domain::Frequency, spec).unwrap();
        let u = inverse_transform(&v).unwrap();
        let xs = g.axis_coords();
        let mut worst = 0.0f64;
        for (j, &x) in xs.iter().enumerate() {
            if x.abs() <= g.half_length() / 2.0 {
                worst = worst.max((u.values()[j].re - 1.0 / (1.0 + x * x)).abs());
            }
        }
        assert!(worst < 1e-3, "worst abs error {worst}");
    }

    #[test]
    fn norms_match_closed_forms() {
        let g = GridSpec::line(40.0, 1 << 12).unwrap();
        let f = sample_1d(g, gauss).unwrap();
        let pi4 = std::f64::consts::PI.powf(0.25);
        assert!((l2_norm(&f).unwrap() - pi4).abs() < 1e-10);

        let z = Field::zeros(g, Domain::Space);
        assert_eq!(l2_norm(&z).unwrap(), 0.0);

        let g2 = GridSpec::line(400.0, 1 << 15).unwrap();
        let s = sample_1d(g2, |x| 2.0 / (1.0 + x * x)).unwrap();
        let sqrt2pi = (2.0 * std::f64::consts::PI).sqrt();
        assert!((l2_norm(&s).unwrap() - sqrt2pi).abs() < 1e-2);
    }

    #[test]
    fn l1_of_gaussian() {
        let g = GridSpec::line(40.0, 1 << 12).unwrap();
        let f = sample_1d(g, gauss).unwrap();
        let sqrt2pi = (2.0 * std::f64::consts::PI).sqrt();
        assert!((l1_norm(&f).unwrap() - sqrt2pi).abs() < 1e-10);
        assert_eq!(l1_norm(&Field::zeros(g, Domain::Space)).unwrap(), 0.0);
    }

    #[test]
    fn parseval_identity() {
        let g = GridSpec::line(30.0, 512).unwrap();
        let f = sample(g, |x| {
            Complex64::new((-x[0] * x[0] / 3.0).exp(), (x[0] * 0.5).sin() * gauss(x[0]))
        })
        .unwrap();
        let v = forward_transform(&f).unwrap();
        let lhs = l2_norm(&f).unwrap().powi(2);
        let rhs = g.freq_spacing() / (2.0 * std::f64::consts::PI)
            * v.values().iter().map(|z| z.norm_sqr()).sum::<f64>();
        assert!((lhs - rhs).abs() / lhs < 1e-10);
    }

    #[test]
    fn two_dimensional_gaussian_transform() {
        let g = GridSpec::new(2, 20.0, 256).unwrap();
        let f = sample(g, |x| Complex64::new(gauss(x[0]) * gauss(x[1]), 0.0)).unwrap();
        let got = forward_transform(&f).unwrap();
        let two_pi = 2.0 * std::f64::consts::PI;
        let xs = g.freq_coords();
        let mut expected = Vec::with_capacity(g.total_points());
        for &a in &xs {
            for &b in &xs {
                expected.push(Complex64::new(two_pi * gauss(a) * gauss(b), 0.0));
            }
        }
        assert!(rel_l2(got.values(), &expected) < 1e-12);
        let back = inverse_transform(&got).unwrap();
        assert!(rel_l2(back.values(), f.values()) < 1e-12);
    }

    #[test]
    fn domain_tags_enforced() {
        let g = GridSpec::line(5.0, 32).unwrap();
        let f = Field::zeros(g, Domain::Frequency);
        assert!(forward_transform(&f).is_err());
        assert!(l2_norm(&f).is_err());
        let s = Field::zeros(g, Domain::Space);
        assert!(inverse_transform(&s).is_err());
    }
}
