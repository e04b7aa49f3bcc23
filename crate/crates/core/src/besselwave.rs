//! Closed-form machinery behind the exact solitary-wave examples: modified
//! Bessel functions of half-integer order, the Fourier transform of
//! `(1+x²)^{−λ}`, a catalog of exactly solvable profile equations, and a
//! generator producing the whole family indexed by the nonlinearity degree.

use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::grid::{self, Domain, Field, GridSpec};
use crate::multiplier;
use crate::solver::Nonlinearity;
use crate::symbols::{HomogeneousTerm, PolyhomogeneousSymbol};

/// A half-integer order `ν = N/2` with odd numerator `N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HalfIntegerOrder {
    numerator: i64,
}

impl HalfIntegerOrder {
    pub fn new(numerator: i64) -> Result<Self> {
        if numerator % 2 == 0 {
            return Err(Error::EvenNumerator(numerator));
        }
        Ok(Self { numerator })
    }

    pub fn numerator(&self) -> i64 {
        self.numerator
    }

    pub fn value(&self) -> f64 {
        self.numerator as f64 / 2.0
    }
}

/// `K_{1/2}(x) = sqrt(π/(2x)) e^{−x}`.
fn k_half(x: f64) -> f64 {
    (std::f64::consts::PI / (2.0 * x)).sqrt() * (-x).exp()
}

/// Modified Bessel function of the second kind at half-integer order.
///
/// Uses the symmetry `K_ν = K_{−ν}` and the upward recurrence
/// `K_{ν+1}(x) = (2ν/x) K_ν(x) + K_{ν−1}(x)` seeded by the elementary
/// `K_{±1/2}`. Upward recurrence is the stable direction for `K`.
pub fn bessel_k_half(nu: HalfIntegerOrder, x: f64) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::NonPositiveArgument(x));
    }
    let steps = (nu.numerator.unsigned_abs() - 1) / 2;
    let mut prev = k_half(x); // K_{−1/2} = K_{1/2}
    let mut curr = k_half(x);
    for j in 0..steps {
        let order = j as f64 + 0.5;
        let next = (2.0 * order / x) * curr + prev;
        prev = curr;
        curr = next;
    }
    Ok(curr)
}

/// Coefficients of the polynomial `Q_j` with
/// `K_{j+1/2}(x) = Q_j(1/x) · K_{1/2}(x)`, ascending in powers of `1/x`.
///
/// `Q_0 = 1`, `Q_1 = 1 + 1/x`, `Q_2 = 1 + 3/x + 3/x²`, and in general
/// `Q_{j+1}(y) = (2j+1) y Q_j(y) + Q_{j−1}(y)`. All coefficients are
/// integers.
pub fn bessel_polynomial(j: usize) -> Vec<f64> {
    let mut prev = vec![1.0]; // Q_{−1} = 1 via the symmetry seed
    let mut curr = vec![1.0];
    for step in 0..j {
        let two_nu = 2.0 * (step as f64 + 0.5);
        let mut next = vec![0.0; curr.len() + 1];
        for (i, &c) in curr.iter().enumerate() {
            next[i + 1] += two_nu * c;
        }
        for (i, &c) in prev.iter().enumerate() {
            next[i] += c;
        }
        prev = curr;
        curr = next;
    }
    curr
}

fn factorial(n: u32) -> f64 {
    (1..=n as u64).map(|k| k as f64).product()
}

/// Fourier transform of `(1+x²)^{−λ}` in one dimension at integer `λ ≥ 1`:
/// `(2√π/Γ(λ)) (|ξ|/2)^{λ−1/2} K_{λ−1/2}(|ξ|)`. Singular to evaluate at
/// `ξ = 0`; callers work on the punctured line.
pub fn ft_power_law(lambda: u32, xi: f64) -> Result<f64> {
    if lambda == 0 {
        return Err(Error::UnsupportedExponent(lambda));
    }
    if xi == 0.0 {
        return Err(Error::ZeroFrequency);
    }
    let r = xi.abs();
    let order = HalfIntegerOrder::new(2 * lambda as i64 - 1)?;
    let k = bessel_k_half(order, r)?;
    let gamma = factorial(lambda - 1);
    Ok(2.0 * std::f64::consts::PI.sqrt() / gamma * (r / 2.0).powf(lambda as f64 - 0.5) * k)
}

/// Pointwise real profile on the line.
pub type ProfileFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// An exactly solvable profile equation `p(D)u = f + F(u)` together with its
/// closed-form solution and predicted pointwise decay rate.
#[derive(Clone)]
pub struct ExactSolutionCase {
    pub label: String,
    pub symbol: PolyhomogeneousSymbol,
    pub nonlinearity: Nonlinearity,
    pub forcing: Option<ProfileFn>,
    pub solution: ProfileFn,
    pub predicted_pointwise_decay: f64,
}

impl std::fmt::Debug for ExactSolutionCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ExactSolutionCase")
            .field("label", &self.label)
            .field("symbol", &self.symbol)
            .field("predicted_pointwise_decay", &self.predicted_pointwise_decay)
            .finish()
    }
}

/// The internal-wave case `(|D| + c)u = u²` solved by `2c/(1+c²x²)`.
pub fn benjamin_ono(c: f64) -> Result<ExactSolutionCase> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::InvalidHalfLength(c));
    }
    let symbol = PolyhomogeneousSymbol::new(
        Complex64::new(c, 0.0),
        vec![HomogeneousTerm::abs_power(1.0)?],
        1,
    )?;
    Ok(ExactSolutionCase {
        label: if c == 1.0 {
            "benjamin-ono".to_string()
        } else {
            format!("benjamin-ono-c{c}")
        },
        symbol,
        nonlinearity: Nonlinearity::monomial(2, Complex64::new(1.0, 0.0))?,
        forcing: None,
        solution: Arc::new(move |x| 2.0 * c / (1.0 + c * c * x * x)),
        predicted_pointwise_decay: 2.0,
    })
}

/// The cubic case `(D² + 3|D| + 3)u = 8u³` solved by `1/(1+x²)`.
pub fn cubic() -> ExactSolutionCase {
    generate_example(3).expect("k = 3 is always valid")
}

/// Canonical catalog: the quadratic internal-wave case and the cubic case.
pub fn catalog() -> Vec<ExactSolutionCase> {
    vec![
        benjamin_ono(1.0).expect("c = 1 is valid"),
        {
            let mut c = cubic();
            c.label = "cubic".to_string();
            c
        },
    ]
}

/// Generate the degree-`k` member of the family: the symbol collects the
/// reversed coefficients of the Bessel polynomial `Q_{k−1}`, and
/// `u = 1/(1+x²)` solves `p(D)u = (k−1)!·2^{k−1}·u^k`.
pub fn generate_example(k: u32) -> Result<ExactSolutionCase> {
    if k < 2 {
        return Err(Error::GeneratorOrderTooSmall(k));
    }
    let q = bessel_polynomial(k as usize - 1); // length k
    let mut terms = Vec::new();
    for i in 1..k as usize {
        let coeff = Complex64::new(q[k as usize - 1 - i], 0.0);
        terms.push(HomogeneousTerm::abs_power_scaled(i as f64, coeff)?);
    }
    let p0 = Complex64::new(q[k as usize - 1], 0.0);
    let symbol = PolyhomogeneousSymbol::new(p0, terms, 1)?;
    let amplitude = factorial(k - 1) * 2f64.powi(k as i32 - 1);
    Ok(ExactSolutionCase {
        label: format!("generated-k{k}"),
        symbol,
        nonlinearity: Nonlinearity::monomial(k, Complex64::new(amplitude, 0.0))?,
        forcing: None,
        solution: Arc::new(|x| 1.0 / (1.0 + x * x)),
        predicted_pointwise_decay: 2.0,
    })
}

/// Relative residual `‖p(D)u − f − F(u)‖ / ‖u‖` in `L²` over the central
/// half of the grid, where periodization artifacts are negligible.
pub fn verify_exact(case: &ExactSolutionCase, grid: GridSpec) -> Result<f64> {
    verify_exact_windowed(case, grid, grid.half_length() / 2.0)
}

/// Same residual measured over `|x| ≤ half_width`; useful for comparing
/// grids of different lengths over a common region.
pub fn verify_exact_windowed(
    case: &ExactSolutionCase,
    grid_spec: GridSpec,
    half_width: f64,
) -> Result<f64> {
    let trusted = grid_spec.half_length() / 2.0;
    if half_width > trusted {
        return Err(Error::WindowOutsideTrustedRegion {
            requested: half_width,
            trusted,
        });
    }
    let sol = case.solution.clone();
    let u = grid::sample_1d(grid_spec, move |x| sol(x))?;
    let norm = grid::l2_norm_within(&u, half_width)?;
    if norm == 0.0 {
        return Err(Error::DegenerateCase);
    }
    let mut lhs = multiplier::apply(&case.symbol, &u)?;
    let fu = case.nonlinearity.evaluate(&u)?;
    let forcing = match &case.forcing {
        Some(f) => {
            let f = f.clone();
            Some(grid::sample_1d(grid_spec, move |x| f(x))?)
        }
        None => None,
    };
    for (i, v) in lhs.values_mut().iter_mut().enumerate() {
        *v -= fu.values()[i];
        if let Some(f) = &forcing {
            *v -= f.values()[i];
        }
    }
    let residual = grid::l2_norm_within(&lhs, half_width)?;
    Ok(residual / norm)
}

/// Residual of an arbitrary profile against `p(D)u = f + F(u)` over
/// `|x| ≤ half_width`, normalized by the profile's own norm there.
pub fn equation_residual(
    symbol: &PolyhomogeneousSymbol,
    nonlinearity: &Nonlinearity,
    forcing: Option<&Field>,
    u: &Field,
    half_width: f64,
) -> Result<f64> {
    u.expect_domain(Domain::Space)?;
    let norm = grid::l2_norm_within(u, half_width)?;
    if norm == 0.0 {
        return Err(Error::DegenerateCase);
    }
    let mut lhs = multiplier::apply(symbol, u)?;
    let fu = nonlinearity.evaluate(u)?;
    for (i, v) in lhs.values_mut().iter_mut().enumerate() {
        *v -= fu.values()[i];
        if let Some(f) = forcing {
            *v -= f.values()[i];
        }
    }
    Ok(grid::l2_norm_within(&lhs, half_width)? / norm)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(n: i64) -> HalfIntegerOrder {
        HalfIntegerOrder::new(n).unwrap()
    }

    #[test]
    fn k_half_closed_form() {
        let got = bessel_k_half(order(1), 1.0).unwrap();
        let expected = (std::f64::consts::PI / 2.0).sqrt() * (-1.0f64).exp();
        assert!((got - expected).abs() < 1e-15);
        assert!((expected - 0.461_068_504_447_894_4).abs() < 1e-12);
    }

    #[test]
    fn k_three_halves_recurrence_form() {
        for x in [0.3, 1.0, 2.0, 7.5] {
            let got = bessel_k_half(order(3), x).unwrap();
            let expected = (1.0 / x + 1.0) * bessel_k_half(order(1), x).unwrap();
            assert!((got - expected).abs() <= 1e-12 * expected);
        }
    }

    #[test]
    fn k_five_halves_closed_form() {
        for x in [0.5, 1.0, 4.0] {
            let got = bessel_k_half(order(5), x).unwrap();
            let expected =
                (3.0 / (x * x) + 3.0 / x + 1.0) * bessel_k_half(order(1), x).unwrap();
            assert!((got - expected).abs() <= 1e-12 * expected);
        }
        // at x = 1 the prefactor is 3 + 3 + 1 = 7
        let at_one = bessel_k_half(order(5), 1.0).unwrap();
        assert!((at_one - 7.0 * k_half(1.0)).abs() < 1e-14);
    }

    #[test]
    fn symmetry_in_the_order() {
        for n in [1i64, 3, 5, 9] {
            for x in [0.1, 1.0, 20.0] {
                let a = bessel_k_half(order(n), x).unwrap();
                let b = bessel_k_half(order(-n), x).unwrap();
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn recurrence_residual_small() {
        for j in 1..5i64 {
            let nu = j as f64 - 0.5;
            for x in [0.1, 0.5, 2.0, 10.0, 20.0] {
                let km = bessel_k_half(order(2 * j - 3), x).unwrap();
                let k0 = bessel_k_half(order(2 * j - 1), x).unwrap();
                let kp = bessel_k_half(order(2 * j + 1), x).unwrap();
                let resid = (kp - (2.0 * nu / x) * k0 - km).abs() / kp;
                assert!(resid <= 1e-12, "j={j} x={x} resid={resid}");
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(HalfIntegerOrder::new(2).is_err());
        assert!(bessel_k_half(order(1), 0.0).is_err());
        assert!(bessel_k_half(order(1), -1.0).is_err());
        assert!(ft_power_law(0, 1.0).is_err());
        assert!(ft_power_law(1, 0.0).is_err());
    }

    #[test]
    fn ft_power_law_lambda_one_is_exponential() {
        for xi in [0.25, 1.0, 3.0, -2.0] {
            let got = ft_power_law(1, xi).unwrap();
            let expected = std::f64::consts::PI * (-xi.abs()).exp();
            assert!((got - expected).abs() <= 1e-13 * expected);
        }
    }

    #[test]
    fn ft_power_law_lambda_two() {
        // (π/2)(1+|ξ|) e^{−|ξ|}; at ξ = 1 this is π e^{−1}
        let got = ft_power_law(2, 1.0).unwrap();
        let expected = std::f64::consts::PI * (-1.0f64).exp();
        assert!((got - expected).abs() < 1e-14);
        for xi in [0.5, 2.0, 5.0] {
            let got = ft_power_law(2, xi).unwrap();
            let expected =
                std::f64::consts::PI / 2.0 * (1.0 + xi.abs()) * (-xi.abs()).exp();
            assert!((got - expected).abs() <= 1e-13 * expected);
        }
    }

    #[test]
    fn ft_power_law_lambda_three_matches_symbol_chain() {
        // 8·F((1+x²)^{−3}) = (ξ² + 3|ξ| + 3)·F((1+x²)^{−1})
        for xi in [0.3, 1.0, 2.5] {
            let lhs = 8.0 * ft_power_law(3, xi).unwrap();
            let rhs = (xi * xi + 3.0 * xi.abs() + 3.0) * ft_power_law(1, xi).unwrap();
            assert!((lhs - rhs).abs() <= 1e-12 * rhs);
        }
    }

    #[test]
    fn bessel_polynomials_low_orders() {
        assert_eq!(bessel_polynomial(0), vec![1.0]);
        assert_eq!(bessel_polynomial(1), vec![1.0, 1.0]);
        assert_eq!(bessel_polynomial(2), vec![1.0, 3.0, 3.0]);
        assert_eq!(bessel_polynomial(3), vec![1.0, 6.0, 15.0, 15.0]);
    }

    #[test]
    fn catalog_solution_values() {
        let cases = catalog();
        let bo = &cases[0];
        assert_eq!(bo.label, "benjamin-ono");
        assert_eq!((bo.solution)(0.0), 2.0);
        let cu = &cases[1];
        assert_eq!(cu.label, "cubic");
        assert_eq!((cu.solution)(1.0), 0.5);

        let bo2 = benjamin_ono(2.0).unwrap();
        assert_eq!((bo2.solution)(0.0), 4.0);
        assert_eq!(bo2.predicted_pointwise_decay, 2.0);
        for x in [0.3, 1.0, 5.0] {
            assert!(((bo2.solution)(x) - 4.0 / (1.0 + 4.0 * x * x)).abs() < 1e-15);
        }
    }

    #[test]
    fn generated_k2_is_the_quadratic_case() {
        let g = generate_example(2).unwrap();
        assert_eq!(g.symbol.p0(), Complex64::new(1.0, 0.0));
        assert_eq!(g.symbol.terms().len(), 1);
        assert_eq!(g.symbol.terms()[0].order(), 1.0);
        let (deg, coeff) = g.nonlinearity.as_monomial().unwrap();
        assert_eq!(deg, 2);
        assert_eq!(coeff, Complex64::new(2.0, 0.0));
    }

    #[test]
    fn generated_k3_reproduces_cubic_coefficients() {
        let g = generate_example(3).unwrap();
        assert_eq!(g.symbol.p0(), Complex64::new(3.0, 0.0));
        let orders: Vec<f64> = g.symbol.terms().iter().map(|t| t.order()).collect();
        assert_eq!(orders, vec![1.0, 2.0]);
        assert_eq!(g.symbol.evaluate_1d(2.0), Complex64::new(13.0, 0.0));
        let (deg, coeff) = g.nonlinearity.as_monomial().unwrap();
        assert_eq!(deg, 3);
        assert_eq!(coeff, Complex64::new(8.0, 0.0));
    }

    #[test]
    fn generated_k4_symbol_and_amplitude() {
        let g = generate_example(4).unwrap();
        // |ξ|³ + 6ξ² + 15|ξ| + 15, amplitude 3!·2³ = 48
        assert_eq!(g.symbol.p0(), Complex64::new(15.0, 0.0));
        assert_eq!(
            g.symbol.evaluate_1d(1.0),
            Complex64::new(1.0 + 6.0 + 15.0 + 15.0, 0.0)
        );
        let (_, coeff) = g.nonlinearity.as_monomial().unwrap();
        assert_eq!(coeff, Complex64::new(48.0, 0.0));
        assert!(generate_example(1).is_err());
    }

    #[test]
    fn verify_exact_catalog_residuals() {
        let grid = GridSpec::line(100.0, 1 << 14).unwrap();
        for case in catalog() {
            let r = verify_exact(&case, grid).unwrap();
            assert!(r <= 5e-3, "{}: residual {r}", case.label);
        }
    }

    #[test]
    fn generated_cases_pass_reference_residual() {
        let grid = GridSpec::line(100.0, 1 << 14).unwrap();
        for k in 2..=4 {
            let case = generate_example(k).unwrap();
            let r = verify_exact(&case, grid).unwrap();
            assert!(r <= 5e-3, "k={k}: residual {r}");
        }
    }

    #[test]
    fn residual_shrinks_on_fixed_window_when_box_doubles() {
        let g1 = GridSpec::line(100.0, 1 << 14).unwrap();
        let g2 = GridSpec::line(200.0, 1 << 15).unwrap(); // same spacing
        for case in catalog() {
            let r1 = verify_exact_windowed(&case, g1, 50.0).unwrap();
            let r2 = verify_exact_windowed(&case, g2, 50.0).unwrap();
            assert!(
                r1 / r2 >= 3.0,
                "{}: shrink factor {} below 3",
                case.label,
                r1 / r2
            );
        }
    }

    #[test]
    fn degenerate_zero_solution_rejected() {
        let grid = GridSpec::line(50.0, 1 << 10).unwrap();
        let mut case = benjamin_ono(1.0).unwrap();
        case.solution = Arc::new(|_| 0.0);
        assert!(matches!(
            verify_exact(&case, grid),
            Err(Error::DegenerateCase)
        ));
    }

    #[test]
    fn window_capped_by_trusted_region() {
        let grid = GridSpec::line(50.0, 1 << 10).unwrap();
        let case = benjamin_ono(1.0).unwrap();
        assert!(verify_exact_windowed(&case, grid, 30.0).is_err());
    }
}
