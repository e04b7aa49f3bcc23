//! Polyhomogeneous symbols `p(ξ) = p₀ + Σ p_{m_j}(ξ)` and their algebra.
//!
//! A homogeneous term of order `m` is stored by its values on the unit
//! sphere: in one dimension the pair `(c₊, c₋)` with
//! `q(ξ) = c₊ ξ^m` for `ξ > 0` and `q(ξ) = c₋ (−ξ)^m` for `ξ < 0`; in two
//! dimensions a single radial coefficient. This covers symbols such as
//! `|ξ|^m`, `sgn ξ`, and all polynomials in one variable.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

const COEFF_TOL: f64 = 1e-12;
const INTEGER_TOL: f64 = 1e-9;

/// Unit-sphere profile of a homogeneous function.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Profile {
    /// One dimension: coefficients on the rays `ξ > 0` and `ξ < 0`.
    Line {
        c_plus: Complex64,
        c_minus: Complex64,
    },
    /// Two dimensions, radial: `q(ξ) = a·|ξ|^m`.
    Radial { coeff: Complex64 },
}

/// A positively homogeneous symbol of a single order.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HomogeneousTerm {
    order: f64,
    profile: Profile,
}

impl HomogeneousTerm {
    pub fn line(order: f64, c_plus: Complex64, c_minus: Complex64) -> Result<Self> {
        if !order.is_finite() {
            return Err(Error::InvalidOrder(order));
        }
        Ok(Self {
            order,
            profile: Profile::Line { c_plus, c_minus },
        })
    }

    pub fn radial(order: f64, coeff: Complex64) -> Result<Self> {
        if !order.is_finite() {
            return Err(Error::InvalidOrder(order));
        }
        Ok(Self {
            order,
            profile: Profile::Radial { coeff },
        })
    }

    /// `|ξ|^m` in one dimension.
    pub fn abs_power(order: f64) -> Result<Self> {
        let one = Complex64::new(1.0, 0.0);
        Self::line(order, one, one)
    }

    /// `c·|ξ|^m` in one dimension.
    pub fn abs_power_scaled(order: f64, coeff: Complex64) -> Result<Self> {
        Self::line(order, coeff, coeff)
    }

    /// The Hilbert-transform symbol `−i·sgn ξ`.
    pub fn hilbert() -> Self {
        Self {
            order: 0.0,
            profile: Profile::Line {
                c_plus: Complex64::new(0.0, -1.0),
                c_minus: Complex64::new(0.0, 1.0),
            },
        }
    }

    pub fn order(&self) -> f64 {
        self.order
    }

    pub fn profile(&self) -> Profile {
        self.profile
    }

    pub fn dimension(&self) -> usize {
        match self.profile {
            Profile::Line { .. } => 1,
            Profile::Radial { .. } => 2,
        }
    }

    /// True when the term extends to a polynomial: integer order with
    /// `c₋ = (−1)^m c₊` in one dimension, even nonnegative integer order
    /// radially in two.
    pub fn is_polynomial(&self) -> bool {
        let m = self.order;
        if m < -0.5 || (m - m.round()).abs() > INTEGER_TOL {
            return false;
        }
        let k = m.round() as i64;
        if k < 0 {
            return false;
        }
        match self.profile {
            Profile::Line { c_plus, c_minus } => {
                let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                let scale = c_plus.norm().max(c_minus.norm()).max(1.0);
                (c_minus - c_plus * sign).norm() <= COEFF_TOL * scale
            }
            Profile::Radial { .. } => k % 2 == 0,
        }
    }

    /// Pointwise value. At `ξ = 0` terms of positive order vanish and
    /// order-zero terms take their symmetric mean; negative orders are
    /// genuinely singular there and return an infinite value.
    pub fn eval(&self, xi: &[f64]) -> Complex64 {
        let r = match self.profile {
            Profile::Line { .. } => xi[0].abs(),
            Profile::Radial { .. } => xi.iter().map(|c| c * c).sum::<f64>().sqrt(),
        };
        if r == 0.0 {
            if self.order > 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            if self.order == 0.0 {
                return match self.profile {
                    Profile::Line { c_plus, c_minus } => 0.5 * (c_plus + c_minus),
                    Profile::Radial { coeff } => coeff,
                };
            }
        }
        let scale = r.powf(self.order);
        match self.profile {
            Profile::Line { c_plus, c_minus } => {
                if xi[0] >= 0.0 {
                    c_plus * scale
                } else {
                    c_minus * scale
                }
            }
            Profile::Radial { coeff } => coeff * scale,
        }
    }

    pub fn eval_1d(&self, xi: f64) -> Complex64 {
        self.eval(&[xi])
    }

    /// Mean of the term over the frequency cell `|ξ| ≤ w/2` (interval in one
    /// dimension, disc in two). This is the locally integrable reading of a
    /// singular symbol at the zero bin; it requires `order > −n`.
    pub fn cell_average(&self, cell_width: f64) -> Result<Complex64> {
        let m = self.order;
        let a = cell_width / 2.0;
        match self.profile {
            Profile::Line { c_plus, c_minus } => {
                if m <= -1.0 {
                    return Err(Error::SingularOrderOutOfRange { order: m, dim: 1 });
                }
                Ok((c_plus + c_minus) / (2.0 * (m + 1.0)) * a.powf(m))
            }
            Profile::Radial { coeff } => {
                if m <= -2.0 {
                    return Err(Error::SingularOrderOutOfRange { order: m, dim: 2 });
                }
                Ok(coeff * 2.0 / (m + 2.0) * a.powf(m))
            }
        }
    }

    /// One classical derivative `∂_ξ` (one dimension only).
    fn differentiated(&self) -> Result<Self> {
        match self.profile {
            Profile::Line { c_plus, c_minus } => Ok(Self {
                order: self.order - 1.0,
                profile: Profile::Line {
                    c_plus: c_plus * self.order,
                    c_minus: -c_minus * self.order,
                },
            }),
            Profile::Radial { .. } => Err(Error::DimensionUnsupported {
                required: 1,
                actual: 2,
            }),
        }
    }

    /// `D_ξ = −i ∂_ξ` (one dimension only).
    pub fn d_xi(&self) -> Result<Self> {
        let d = self.differentiated()?;
        let minus_i = Complex64::new(0.0, -1.0);
        match d.profile {
            Profile::Line { c_plus, c_minus } => Ok(Self {
                order: d.order,
                profile: Profile::Line {
                    c_plus: c_plus * minus_i,
                    c_minus: c_minus * minus_i,
                },
            }),
            Profile::Radial { .. } => unreachable!(),
        }
    }

    /// Multiplication by `ξ` (one dimension only).
    pub fn times_xi(&self) -> Result<Self> {
        match self.profile {
            Profile::Line { c_plus, c_minus } => Ok(Self {
                order: self.order + 1.0,
                profile: Profile::Line {
                    c_plus,
                    c_minus: -c_minus,
                },
            }),
            Profile::Radial { .. } => Err(Error::DimensionUnsupported {
                required: 1,
                actual: 2,
            }),
        }
    }

    /// Closed-form `D^σ(ξ^γ̃ D^γ q)`: `γ` derivatives, then `γ̃`
    /// multiplications by `ξ`, then `σ` further derivatives. The result must
    /// stay locally integrable (order `> −1` in one dimension).
    pub fn derived(&self, spec: &SymbolDerivativeSpec) -> Result<Self> {
        if self.dimension() != 1 {
            return Err(Error::DimensionUnsupported {
                required: 1,
                actual: self.dimension(),
            });
        }
        let final_order =
            self.order - spec.gamma as f64 + spec.gamma_tilde as f64 - spec.sigma as f64;
        if final_order <= -1.0 {
            return Err(Error::OrderBelowIntegrable {
                order: final_order,
                dim: 1,
            });
        }
        let mut t = *self;
        for _ in 0..spec.gamma {
            t = t.d_xi()?;
        }
        for _ in 0..spec.gamma_tilde {
            t = t.times_xi()?;
        }
        for _ in 0..spec.sigma {
            t = t.d_xi()?;
        }
        Ok(t)
    }

    fn is_zero(&self) -> bool {
        match self.profile {
            Profile::Line { c_plus, c_minus } => c_plus.norm() == 0.0 && c_minus.norm() == 0.0,
            Profile::Radial { coeff } => coeff.norm() == 0.0,
        }
    }
}

/// Derivative bookkeeping for symbol estimates: `D^σ(ξ^γ̃ D^γ p)` in one
/// dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymbolDerivativeSpec {
    pub gamma: usize,
    pub gamma_tilde: usize,
    pub sigma: usize,
}

impl SymbolDerivativeSpec {
    pub fn new(gamma: usize, gamma_tilde: usize, sigma: usize) -> Self {
        Self {
            gamma,
            gamma_tilde,
            sigma,
        }
    }
}

/// `p(ξ) = p₀ + Σ_j p_{m_j}(ξ)` with strictly increasing positive orders and
/// top order at least 1.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyhomogeneousSymbol {
    p0: Complex64,
    terms: Vec<HomogeneousTerm>,
    dimension: usize,
}

impl PolyhomogeneousSymbol {
    pub fn new(p0: Complex64, terms: Vec<HomogeneousTerm>, dimension: usize) -> Result<Self> {
        if dimension != 1 && dimension != 2 {
            return Err(Error::UnsupportedDimension(dimension));
        }
        for t in &terms {
            if t.dimension() != dimension {
                return Err(Error::SymbolGridMismatch {
                    symbol: t.dimension(),
                    grid: dimension,
                });
            }
        }
        let mut last = 0.0;
        for t in &terms {
            if t.order() <= last {
                return Err(Error::NonIncreasingOrders);
            }
            last = t.order();
        }
        if terms.is_empty() || last < 1.0 {
            return Err(Error::TopOrderTooLow(last));
        }
        Ok(Self {
            p0,
            terms,
            dimension,
        })
    }

    pub fn p0(&self) -> Complex64 {
        self.p0
    }

    pub fn terms(&self) -> &[HomogeneousTerm] {
        &self.terms
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Top order `M`.
    pub fn top_order(&self) -> f64 {
        self.terms.last().map(|t| t.order()).unwrap_or(0.0)
    }

    pub fn evaluate(&self, xi: &[f64]) -> Complex64 {
        self.p0 + self.terms.iter().map(|t| t.eval(xi)).sum::<Complex64>()
    }

    pub fn evaluate_1d(&self, xi: f64) -> Complex64 {
        self.evaluate(&[xi])
    }

    /// Smallest order among non-polynomial terms, or `None` when every term
    /// is polynomial (the constant-coefficient differential-operator case).
    pub fn singularity_index(&self) -> Option<f64> {
        self.terms
            .iter()
            .filter(|t| !t.is_polynomial())
            .map(|t| t.order())
            .fold(None, |acc, m| {
                Some(match acc {
                    None => m,
                    Some(a) if m < a => m,
                    Some(a) => a,
                })
            })
    }
}

/// Outcome of the global ellipticity estimate `inf_ξ ⟨ξ⟩^{−M} |p(ξ)| > 0`.
///
/// The infimum is estimated by dense sampling on dyadic shells, ternary
/// refinement around every sampled local minimum, and the two analytic
/// limits (`|p₀|` at the origin, the top-order profile magnitude at
/// infinity). The verdict records the sampling density; it is an estimate,
/// not a proof.
#[derive(Clone, Debug, Serialize)]
pub enum Ellipticity {
    Elliptic {
        inf_estimate: f64,
        samples_per_octave: usize,
    },
    NotElliptic {
        /// Frequency achieving (nearly) the violating ratio.
        witness: Vec<f64>,
        ratio: f64,
        samples_per_octave: usize,
    },
}

impl Ellipticity {
    pub fn is_elliptic(&self) -> bool {
        matches!(self, Ellipticity::Elliptic { .. })
    }
}

pub const DEFAULT_ELLIPTICITY_TOLERANCE: f64 = 1e-9;
const OCTAVE_LO: i32 = -20;
const OCTAVE_HI: i32 = 20;
const SAMPLES_PER_OCTAVE: usize = 128;

fn japanese_bracket(r: f64) -> f64 {
    (1.0 + r * r).sqrt()
}

fn directions(dimension: usize) -> Vec<[f64; 2]> {
    match dimension {
        1 => vec![[1.0, 0.0], [-1.0, 0.0]],
        _ => vec![[1.0, 0.0]], // radial profiles only depend on |ξ|
    }
}

fn ratio_at(p: &PolyhomogeneousSymbol, dir: &[f64; 2], r: f64) -> f64 {
    let m_top = p.top_order();
    let xi = [dir[0] * r, dir[1] * r];
    let v = p.evaluate(&xi[..p.dimension()]);
    v.norm() / japanese_bracket(r).powf(m_top)
}

// Ternary search for the minimum of a unimodal-on-the-bracket scalar function.
fn refine_minimum(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    for _ in 0..160 {
        let third = (b - a) / 3.0;
        let m1 = a + third;
        let m2 = b - third;
        if f(m1) < f(m2) {
            b = m2;
        } else {
            a = m1;
        }
    }
    let mid = 0.5 * (a + b);
    (mid, f(mid))
}

/// Estimate the global ellipticity ratio and classify the symbol.
pub fn check_ellipticity(p: &PolyhomogeneousSymbol, tolerance: f64) -> Ellipticity {
    let mut best_ratio = f64::INFINITY;
    let mut best_xi = vec![0.0; p.dimension()];

    // analytic limit at the origin: <0>^{-M} |p(0)| = |p0|
    if p.p0.norm() < best_ratio {
        best_ratio = p.p0.norm();
        best_xi = vec![0.0; p.dimension()];
    }

    let n_radii = ((OCTAVE_HI - OCTAVE_LO) as usize) * SAMPLES_PER_OCTAVE + 1;
    let log_lo = (OCTAVE_LO as f64) * std::f64::consts::LN_2;
    let log_hi = (OCTAVE_HI as f64) * std::f64::consts::LN_2;
    let step = (log_hi - log_lo) / (n_radii - 1) as f64;

    for dir in directions(p.dimension()) {
        // analytic limit at infinity: the top-order profile on the sphere
        let top = p.terms.last().expect("symbol has at least one term");
        let limit = top.eval(&[dir[0], dir[1]][..p.dimension()]).norm();
        if limit < best_ratio {
            best_ratio = limit;
            let big = 2.0f64.powi(OCTAVE_HI + 4);
            best_xi = vec![dir[0] * big, dir[1] * big][..p.dimension()].to_vec();
        }

        let radii: Vec<f64> = (0..n_radii)
            .map(|i| (log_lo + step * i as f64).exp())
            .collect();
        let vals: Vec<f64> = radii.iter().map(|&r| ratio_at(p, &dir, r)).collect();

        for i in 0..n_radii {
            let mut candidate = (radii[i], vals[i]);
            let interior = i > 0 && i + 1 < n_radii;
            if interior && vals[i] <= vals[i - 1] && vals[i] <= vals[i + 1] {
                // sampled local minimum: refine to machine precision so that
                // genuine zeros between samples are not mistaken for small
                // positive infima
                candidate = refine_minimum(
                    |r| ratio_at(p, &dir, r),
                    radii[i - 1],
                    radii[i + 1],
                );
            }
            if candidate.1 < best_ratio {
                best_ratio = candidate.1;
                best_xi = vec![dir[0] * candidate.0, dir[1] * candidate.0]
                    [..p.dimension()]
                    .to_vec();
            }
        }
    }

    if best_ratio > tolerance {
        Ellipticity::Elliptic {
            inf_estimate: best_ratio,
            samples_per_octave: SAMPLES_PER_OCTAVE,
        }
    } else {
        Ellipticity::NotElliptic {
            witness: best_xi,
            ratio: best_ratio,
            samples_per_octave: SAMPLES_PER_OCTAVE,
        }
    }
}

/// Sampled supremum of `|D^σ(ξ^γ̃ D^γ p)(ξ)| / |p(ξ)|` over the dyadic
/// shells. Requires `|γ| = |γ̃|` and `|σ|` at most the integer part of the
/// singularity index.
pub fn derived_ratio_bound(
    p: &PolyhomogeneousSymbol,
    spec: &SymbolDerivativeSpec,
) -> Result<f64> {
    if p.dimension() != 1 {
        return Err(Error::DimensionUnsupported {
            required: 1,
            actual: p.dimension(),
        });
    }
    if spec.gamma != spec.gamma_tilde {
        return Err(Error::UnbalancedDerivativeSpec {
            gamma: spec.gamma,
            gamma_tilde: spec.gamma_tilde,
        });
    }
    let m = p.singularity_index().ok_or(Error::PurelyPolynomial)?;
    let floor_m = m.floor() as usize;
    if spec.sigma > floor_m {
        return Err(Error::SigmaTooLarge {
            sigma: spec.sigma,
            floor_m,
        });
    }

    let trivial = spec.gamma == 0 && spec.sigma == 0;
    let mut derived: Vec<HomogeneousTerm> = Vec::new();
    for t in p.terms() {
        let d = t.derived(spec)?;
        if !d.is_zero() {
            derived.push(d);
        }
    }

    let n_radii = ((OCTAVE_HI - OCTAVE_LO) as usize) * SAMPLES_PER_OCTAVE + 1;
    let log_lo = (OCTAVE_LO as f64) * std::f64::consts::LN_2;
    let step = ((OCTAVE_HI - OCTAVE_LO) as f64) * std::f64::consts::LN_2 / (n_radii - 1) as f64;
    let mut sup = 0.0f64;
    for sign in [1.0, -1.0] {
        for i in 0..n_radii {
            let xi = sign * (log_lo + step * i as f64).exp();
            let mut num = derived
                .iter()
                .map(|t| t.eval_1d(xi))
                .sum::<Complex64>();
            if trivial {
                num += p.p0();
            }
            let den = p.evaluate_1d(xi).norm();
            if den == 0.0 {
                return Err(Error::NotElliptic {
                    witness: vec![xi],
                    ratio: 0.0,
                });
            }
            sup = sup.max(num.norm() / den);
        }
    }
    Ok(sup)
}
