//! Gauss-Legendre rules and deterministic reductions.
//!
//! All quadrature sums in this crate go through [`pairwise_sum`] /
//! [`pairwise_sum_complex`], a fixed pairwise-reduction tree. The reduction
//! order is independent of how work is distributed across threads, so every
//! result is bit-reproducible for a given configuration.

use num_complex::Complex64;

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
///
/// Newton iteration on the Legendre recurrence; accurate to ~1e-15 for the
/// node counts used here (n <= 256).
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "Gauss-Legendre rule needs at least one node");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess for the i-th root of P_n.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // Legendre recurrence: p2 = P_n(x), dp = P_n'(x).
            let mut p0 = 1.0;
            let mut p1 = x;
            for j in 2..=n {
                let jf = j as f64;
                let p2 = ((2.0 * jf - 1.0) * x * p1 - (jf - 1.0) * p0) / jf;
                p0 = p1;
                p1 = p2;
            }
            dp = (n as f64) * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// Composite Gauss-Legendre rule: `panels` equal panels over [a, b], each
/// carrying an `n`-point rule. Returns (nodes, weights) in ascending order.
pub fn composite_gauss_legendre(a: f64, b: f64, panels: usize, n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(panels >= 1 && b > a);
    let (xs, ws) = gauss_legendre(n);
    let width = (b - a) / panels as f64;
    let mut nodes = Vec::with_capacity(panels * n);
    let mut weights = Vec::with_capacity(panels * n);
    for p in 0..panels {
        let lo = a + p as f64 * width;
        let mid = lo + 0.5 * width;
        let half = 0.5 * width;
        for (x, w) in xs.iter().zip(&ws) {
            nodes.push(mid + half * x);
            weights.push(half * w);
        }
    }
    (nodes, weights)
}

/// Integrate `f` over [a, b] with an n-point Gauss-Legendre rule.
pub fn integrate<F: FnMut(f64) -> f64>(a: f64, b: f64, n: usize, mut f: F) -> f64 {
    let (xs, ws) = gauss_legendre(n);
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let terms: Vec<f64> = xs
        .iter()
        .zip(&ws)
        .map(|(x, w)| half * w * f(mid + half * x))
        .collect();
    pairwise_sum(&terms)
}

const PAIRWISE_CUTOFF: usize = 32;

/// Sum with a fixed pairwise-reduction tree (order-independent of any
/// parallel work distribution, and more accurate than a running sum).
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    if xs.len() <= PAIRWISE_CUTOFF {
        let mut acc = 0.0;
        for x in xs {
            acc += x;
        }
        return acc;
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// Complex counterpart of [`pairwise_sum`].
pub fn pairwise_sum_complex(xs: &[Complex64]) -> Complex64 {
    if xs.len() <= PAIRWISE_CUTOFF {
        let mut acc = Complex64::new(0.0, 0.0);
        for x in xs {
            acc += x;
        }
        return acc;
    }
    let mid = xs.len() / 2;
    pairwise_sum_complex(&xs[..mid]) + pairwise_sum_complex(&xs[mid..])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn five_point_rule_matches_reference() {
        // Abramowitz & Stegun 25.4.30, n = 5.
        let (xs, ws) = gauss_legendre(5);
        assert_abs_diff_eq!(xs[0], -0.906179845938664, epsilon = 1e-14);
        assert_abs_diff_eq!(xs[1], -0.538469310105683, epsilon = 1e-14);
        assert_abs_diff_eq!(xs[2], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(ws[0], 0.236926885056189, epsilon = 1e-14);
        assert_abs_diff_eq!(ws[2], 0.568888888888889, epsilon = 1e-14);
    }

    #[test]
    fn weights_sum_to_interval_length() {
        for n in [1, 2, 7, 32, 64, 96] {
            let (_, ws) = gauss_legendre(n);
            assert_abs_diff_eq!(pairwise_sum(&ws), 2.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn composite_rule_integrates_oscillation() {
        // int_0^10 cos(7x) dx = sin(70)/7
        let (xs, ws) = composite_gauss_legendre(0.0, 10.0, 8, 16);
        let terms: Vec<f64> = xs.iter().zip(&ws).map(|(x, w)| w * (7.0 * x).cos()).collect();
        assert_abs_diff_eq!(pairwise_sum(&terms), (70.0f64).sin() / 7.0, epsilon = 1e-12);
    }

    #[test]
    fn pairwise_matches_naive_on_small_input() {
        let xs: Vec<f64> = (0..1000).map(|i| (i as f64 * 0.37).sin()).collect();
        let naive: f64 = xs.iter().sum();
        assert_abs_diff_eq!(pairwise_sum(&xs), naive, epsilon = 1e-9);
    }

    proptest! {
        #[test]
        fn rule_is_exact_on_polynomials(n in 2usize..24, c0 in -1.0f64..1.0, c1 in -1.0f64..1.0, c2 in -1.0f64..1.0) {
            // Degree-3 polynomial is exact for any rule with n >= 2.
            let exact = 2.0 * c0 + (2.0 / 3.0) * c2;
            let got = integrate(-1.0, 1.0, n, |x| c0 + c1 * x + c2 * x * x + 0.25 * c1 * x * x * x);
            prop_assert!((got - exact).abs() < 1e-12);
        }
    }
}
