//! Shared helpers for the integration suites, including the independent
//! quadrature oracle for the modified Bessel function of the second kind.

/// `K_ν(x)` by composite Simpson quadrature of the integral representation
/// `∫₀^∞ e^{−x cosh t} cosh(νt) dt`.
///
/// Independent of the recurrence-based implementation under test: nothing
/// here is shared with the library path. The integrand decays doubly
/// exponentially once `x cosh t` is large, so truncating where
/// `x cosh T = 750` leaves an error far below the 1e−10 comparisons made
/// against it.
pub fn bessel_k_quadrature(nu: f64, x: f64) -> f64 {
    assert!(x > 0.0, "oracle defined for positive arguments");
    let cap: f64 = 750.0 / x;
    let t_max = if cap > 1.0 { cap.acosh() } else { 1.0 };
    let n = 20_000usize; // even panel count for Simpson
    let h = t_max / n as f64;
    let f = |t: f64| (-x * t.cosh()).exp() * (nu * t).cosh();
    let mut sum = f(0.0) + f(t_max);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        sum += w * f(h * i as f64);
    }
    sum * h / 3.0
}

#[allow(dead_code)]
pub fn rel_err(got: f64, expected: f64) -> f64 {
    (got - expected).abs() / expected.abs().max(1e-300)
}
