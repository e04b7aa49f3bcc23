//! Stabilized spectral iteration for profile equations `p(D)u = f + F(u)`.
//!
//! Two schemes: plain damped fixed-point iteration through the inverse
//! multiplier, and the power-normalized stabilized iteration for monomial
//! nonlinearities. The latter is the workhorse; the stabilizing factor tends
//! to 1 exactly when the iterate approaches a genuine solution.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{self, Domain, Field};
use crate::multiplier;
use crate::symbols::{
    check_ellipticity, Ellipticity, PolyhomogeneousSymbol, DEFAULT_ELLIPTICITY_TOLERANCE,
};

/// Polynomial nonlinearity `F(u) = Σ_j F_j u^j` vanishing to second order at
/// the origin (every degree is at least 2).
#[derive(Clone, Debug, PartialEq)]
pub struct Nonlinearity {
    coeffs: BTreeMap<u32, Complex64>,
}

impl Nonlinearity {
    pub fn new(coeffs: BTreeMap<u32, Complex64>) -> Result<Self> {
        if let Some((&j, _)) = coeffs.iter().find(|(&j, _)| j < 2) {
            return Err(Error::NonlinearityDegreeTooLow(j));
        }
        Ok(Self { coeffs })
    }

    /// Single-term nonlinearity `F(u) = c·u^k`.
    pub fn monomial(degree: u32, coeff: Complex64) -> Result<Self> {
        let mut m = BTreeMap::new();
        m.insert(degree, coeff);
        Self::new(m)
    }

    pub fn coeffs(&self) -> &BTreeMap<u32, Complex64> {
        &self.coeffs
    }

    /// Degree and coefficient when the nonlinearity is a single monomial.
    pub fn as_monomial(&self) -> Option<(u32, Complex64)> {
        if self.coeffs.len() == 1 {
            let (&j, &c) = self.coeffs.iter().next().unwrap();
            Some((j, c))
        } else {
            None
        }
    }

    /// Pointwise evaluation `Σ_j F_j u(x)^j`.
    pub fn evaluate(&self, u: &Field) -> Result<Field> {
        u.expect_domain(Domain::Space)?;
        let mut out = Field::zeros(u.grid(), Domain::Space);
        for (&j, &cj) in &self.coeffs {
            for (o, &v) in out.values_mut().iter_mut().zip(u.values()) {
                *o += cj * v.powu(j);
            }
        }
        Ok(out)
    }
}

/// Iteration controls shared by both solvers.
#[derive(Clone, Copy, Debug)]
pub struct SolveConfig {
    pub max_iterations: usize,
    pub residual_tolerance: f64,
    /// Stabilizer exponent; `None` selects `k/(k−1)` for a degree-`k`
    /// monomial.
    pub petviashvili_exponent: Option<f64>,
    /// Fixed-point relaxation in `(0, 1]`; 1 is undamped.
    pub damping: f64,
}

impl Default for SolveConfig {
    fn default() -> Self {
        Self {
            max_iterations: 200,
            residual_tolerance: 1e-10,
            petviashvili_exponent: None,
            damping: 1.0,
        }
    }
}

/// Outcome of a solve: final profile, residual history, and the stabilizer
/// trace when the stabilized scheme ran.
#[derive(Clone, Debug)]
pub struct SolveResult {
    pub profile: Field,
    pub residual_history: Vec<f64>,
    pub stabilizer_history: Vec<Complex64>,
    pub converged: bool,
    pub iterations_used: usize,
}

const RESIDUAL_FLOOR: f64 = 1e-300;
const DIVERGENCE_FACTOR: f64 = 10.0;

/// Relative equation residual `‖p(D)u − f − F(u)‖₂ / max(‖u‖₂, floor)`.
fn residual(
    p_lattice: &[Complex64],
    nl: &Nonlinearity,
    forcing: Option<&Field>,
    u: &Field,
) -> Result<f64> {
    let mut lhs = multiplier::apply_lattice(p_lattice, u)?;
    let fu = nl.evaluate(u)?;
    for (i, v) in lhs.values_mut().iter_mut().enumerate() {
        *v -= fu.values()[i];
        if let Some(f) = forcing {
            *v -= f.values()[i];
        }
    }
    Ok(grid::l2_norm(&lhs)? / grid::l2_norm(u)?.max(RESIDUAL_FLOOR))
}

fn require_elliptic(p: &PolyhomogeneousSymbol) -> Result<()> {
    match check_ellipticity(p, DEFAULT_ELLIPTICITY_TOLERANCE) {
        Ellipticity::Elliptic { .. } => Ok(()),
        Ellipticity::NotElliptic { witness, ratio, .. } => {
            Err(Error::NotElliptic { witness, ratio })
        }
    }
}

/// Damped fixed-point iteration `u ← (1−d)u + d·p(D)^{−1}(f + F(u))`.
///
/// Aborts when the residual grows past ten times its running minimum; runs
/// that merely stall are returned unconverged for the caller to judge.
pub fn fixed_point_solve(
    p: &PolyhomogeneousSymbol,
    nl: &Nonlinearity,
    forcing: Option<&Field>,
    initial_guess: &Field,
    cfg: &SolveConfig,
) -> Result<SolveResult> {
    require_elliptic(p)?;
    initial_guess.expect_domain(Domain::Space)?;
    let g = initial_guess.grid();
    let p_lattice = multiplier::symbol_lattice(p, g)?;
    let inv_lattice = multiplier::inverse_symbol_lattice(p, g)?;
    let d = cfg.damping;

    let mut u = initial_guess.clone();
    let mut history = Vec::new();
    let mut min_res = f64::INFINITY;
    for it in 0..cfg.max_iterations {
        let mut rhs = nl.evaluate(&u)?;
        if let Some(f) = forcing {
            for (r, &fv) in rhs.values_mut().iter_mut().zip(f.values()) {
                *r += fv;
            }
        }
        let step = multiplier::apply_lattice(&inv_lattice, &rhs)?;
        for (uv, &sv) in u.values_mut().iter_mut().zip(step.values()) {
            *uv = (1.0 - d) * *uv + d * sv;
        }
        let res = residual(&p_lattice, nl, forcing, &u)?;
        history.push(res);
        if res <= cfg.residual_tolerance {
            return Ok(SolveResult {
                profile: u,
                iterations_used: it + 1,
                residual_history: history,
                stabilizer_history: Vec::new(),
                converged: true,
            });
        }
        if res > DIVERGENCE_FACTOR * min_res && min_res.is_finite() {
            return Err(Error::Diverged {
                iteration: it + 1,
                residual: res,
                minimum: min_res,
                history,
            });
        }
        min_res = min_res.min(res);
    }
    Ok(SolveResult {
        profile: u,
        iterations_used: cfg.max_iterations,
        residual_history: history,
        stabilizer_history: Vec::new(),
        converged: false,
    })
}

/// Power-normalized stabilized iteration for `p(D)u = F_k u^k`:
/// `û ← M^γ · F_k (u^k)^ / p(ξ)` with
/// `M = ⟨p û, û⟩ / ⟨F_k (u^k)^, û⟩` and `γ = k/(k−1)` by default.
pub fn petviashvili_solve(
    p: &PolyhomogeneousSymbol,
    nl: &Nonlinearity,
    initial_guess: &Field,
    cfg: &SolveConfig,
) -> Result<SolveResult> {
    let (degree, _) = nl.as_monomial().ok_or(Error::NotMonomial)?;
    require_elliptic(p)?;
    initial_guess.expect_domain(Domain::Space)?;
    if grid::l2_norm(initial_guess)? == 0.0 {
        return Err(Error::ZeroInitialGuess);
    }
    let g = initial_guess.grid();
    let p_lattice = multiplier::symbol_lattice(p, g)?;
    let gamma = cfg
        .petviashvili_exponent
        .unwrap_or(degree as f64 / (degree as f64 - 1.0));

    let mut u = initial_guess.clone();
    let mut history = Vec::new();
    let mut stabilizers = Vec::new();
    let mut min_res = f64::INFINITY;
    for it in 0..cfg.max_iterations {
        let u_hat = grid::forward_transform(&u)?;
        let fu = nl.evaluate(&u)?;
        let fu_hat = grid::forward_transform(&fu)?;

        let mut num = Complex64::new(0.0, 0.0);
        let mut den = Complex64::new(0.0, 0.0);
        let mut uh_sq = 0.0;
        let mut fh_sq = 0.0;
        for (k, &uh) in u_hat.values().iter().enumerate() {
            num += p_lattice[k] * uh * uh.conj();
            den += fu_hat.values()[k] * uh.conj();
            uh_sq += uh.norm_sqr();
            fh_sq += fu_hat.values()[k].norm_sqr();
        }
        // compare against the Cauchy-Schwarz bound: a vanishing projection
        // means the data is orthogonal to its own image under F
        if den.norm() <= 1e-12 * (uh_sq * fh_sq).sqrt().max(RESIDUAL_FLOOR) {
            return Err(Error::DegenerateStabilizer);
        }
        let m = num / den;
        stabilizers.push(m);

        let m_gamma = m.powf(gamma);
        let mut next_hat = fu_hat;
        for (k, v) in next_hat.values_mut().iter_mut().enumerate() {
            *v = m_gamma * *v / p_lattice[k];
        }
        u = grid::inverse_transform(&next_hat)?;

        let res = residual(&p_lattice, nl, None, &u)?;
        history.push(res);
        if res <= cfg.residual_tolerance {
            return Ok(SolveResult {
                profile: u,
                iterations_used: it + 1,
                residual_history: history,
                stabilizer_history: stabilizers,
                converged: true,
            });
        }
        if res > DIVERGENCE_FACTOR * min_res && min_res.is_finite() {
            return Err(Error::Diverged {
                iteration: it + 1,
                residual: res,
                minimum: min_res,
                history,
            });
        }
        min_res = min_res.min(res);
    }
    Ok(SolveResult {
        profile: u,
        iterations_used: cfg.max_iterations,
        residual_history: history,
        stabilizer_history: stabilizers,
        converged: false,
    })
}

/// Translate a profile (circularly, which is exact on the periodic grid) so
/// that its maximum modulus sits at `x = 0`. Fixes the translation gauge
/// before comparing against a reference profile.
pub fn center_at_peak(u: &Field) -> Field {
    let g = u.grid();
    if g.dimension() != 1 {
        return u.clone();
    }
    let peak = u
        .values()
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.norm().total_cmp(&b.1.norm()))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let origin = g.points_per_dim() / 2;
    let mut out = u.clone();
    if peak > origin {
        out.values_mut().rotate_left(peak - origin);
    } else {
        out.values_mut().rotate_right(origin - peak);
    }
    out
}
