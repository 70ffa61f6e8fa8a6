//! Gauss–Legendre quadrature, plain and composite.

use crate::scalar::Real;

/// Nodes and weights of the `n`-point Gauss–Legendre rule on `[-1, 1]`.
///
/// Computed by Newton iteration on the Legendre recurrence; accurate to a few
/// ulps for the node counts used here (`n <= 64`).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "quadrature needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        // Tricomi initial guess for the i-th positive root.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre P_n(x) and P_n'(x) by the three-term recurrence.
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { x } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (x * pn - pm) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// `∫_a^b f(t) dt` with a single `n`-point Gauss–Legendre rule.
pub fn integrate<T: Real>(f: impl FnMut(f64) -> T, a: f64, b: f64, n: usize) -> T {
    composite(f, a, b, n, 1)
}

/// Composite Gauss–Legendre: `subintervals` equal panels, `nodes` points each.
pub fn composite<T: Real>(
    mut f: impl FnMut(f64) -> T,
    a: f64,
    b: f64,
    nodes: usize,
    subintervals: usize,
) -> T {
    assert!(subintervals >= 1);
    let (xs, ws) = gauss_legendre(nodes);
    let h = (b - a) / subintervals as f64;
    let mut acc = T::zero();
    for s in 0..subintervals {
        let left = a + s as f64 * h;
        let mid = left + 0.5 * h;
        for (&x, &w) in xs.iter().zip(&ws) {
            let t = mid + 0.5 * h * x;
            acc = acc + f(t) * crate::scalar::real::<T>(w * 0.5 * h);
        }
    }
    acc
}

/// All quadrature points `(t_i, w_i)` of the composite rule over `[a, b]`,
/// for callers that evaluate the integrand in parallel.
pub fn composite_points(a: f64, b: f64, nodes: usize, subintervals: usize) -> Vec<(f64, f64)> {
    let (xs, ws) = gauss_legendre(nodes);
    let h = (b - a) / subintervals as f64;
    let mut pts = Vec::with_capacity(nodes * subintervals);
    for s in 0..subintervals {
        let mid = a + s as f64 * h + 0.5 * h;
        for (&x, &w) in xs.iter().zip(&ws) {
            pts.push((mid + 0.5 * h * x, w * 0.5 * h));
        }
    }
    pts
}

/// Trapezoid rule over sampled data `(t_i, y_i)` with increasing `t_i`.
pub fn trapezoid(times: &[f64], values: &[f64]) -> f64 {
    assert_eq!(times.len(), values.len());
    let mut acc = 0.0;
    for i in 1..times.len() {
        acc += 0.5 * (values[i] + values[i - 1]) * (times[i] - times[i - 1]);
    }
    acc
}

/// Running trapezoid integral: entry `i` is the integral over `[t_0, t_i]`.
pub fn cumulative_trapezoid(times: &[f64], values: &[f64]) -> Vec<f64> {
    assert_eq!(times.len(), values.len());
    let mut out = Vec::with_capacity(times.len());
    let mut acc = 0.0;
    out.push(0.0);
    for i in 1..times.len() {
        acc += 0.5 * (values[i] + values[i - 1]) * (times[i] - times[i - 1]);
        out.push(acc);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn known_nodes_and_weights() {
        let (x2, w2) = gauss_legendre(2);
        assert_abs_diff_eq!(x2[1], 1.0 / 3f64.sqrt(), epsilon = 1e-14);
        assert_abs_diff_eq!(w2[0], 1.0, epsilon = 1e-14);

        let (x3, w3) = gauss_legendre(3);
        assert_abs_diff_eq!(x3[1], 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(x3[2], (3.0f64 / 5.0).sqrt(), epsilon = 1e-14);
        assert_abs_diff_eq!(w3[1], 8.0 / 9.0, epsilon = 1e-14);
        assert_abs_diff_eq!(w3[0], 5.0 / 9.0, epsilon = 1e-14);
    }

    #[test]
    fn exact_for_polynomials_up_to_order() {
        // n-point rule integrates degree 2n-1 exactly
        for n in 1..=8 {
            let deg = 2 * n - 1;
            let got: f64 = integrate(|t| t.powi(deg as i32), 0.0, 1.0, n);
            let expect = 1.0 / (deg as f64 + 1.0);
            assert_abs_diff_eq!(got, expect, epsilon = 1e-13);
        }
    }

    #[test]
    fn weights_sum_to_interval_length() {
        for n in [1, 2, 5, 16, 40, 64] {
            let (_, w) = gauss_legendre(n);
            assert_abs_diff_eq!(w.iter().sum::<f64>(), 2.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn composite_converges_on_oscillatory_integrand() {
        let f = |t: f64| (40.0 * t).cos();
        let exact = (40.0f64).sin() / 40.0;
        let coarse: f64 = composite(f, 0.0, 1.0, 4, 8);
        let fine: f64 = composite(f, 0.0, 1.0, 4, 16);
        let finest: f64 = composite(f, 0.0, 1.0, 4, 32);
        assert!((fine - exact).abs() < (coarse - exact).abs() / 50.0);
        assert_abs_diff_eq!(finest, exact, epsilon = 1e-10);
    }

    #[test]
    fn trapezoid_linear_exact() {
        let t = [0.0, 0.5, 1.5, 2.0];
        let y: Vec<f64> = t.iter().map(|x| 3.0 * x + 1.0).collect();
        assert_abs_diff_eq!(trapezoid(&t, &y), 8.0, epsilon = 1e-14);
        let cum = cumulative_trapezoid(&t, &y);
        assert_abs_diff_eq!(cum[3], 8.0, epsilon = 1e-14);
        assert_eq!(cum[0], 0.0);
    }
}
