//! Scalar data of the fibre direction: the moment function `v` and the
//! `S^1`-invariant transverse metric `G` on a fibre of `S_W^L -> W`.

use serde::Serialize;

/// `log(e^p + e^q)` without overflow.
fn log_sum_exp(p: f64, q: f64) -> f64 {
    let m = p.max(q);
    m + ((p - m).exp() + (q - m).exp()).ln()
}

/// Logistic function, stable for large `|t|`.
fn logistic(t: f64) -> f64 {
    if t >= 0.0 {
        1.0 / (1.0 + (-t).exp())
    } else {
        let e = t.exp();
        e / (1.0 + e)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentSample {
    pub x_coord: f64,
    pub v: f64,
    pub v_prime: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct MomentData {
    pub a: f64,
    /// `(-1/(1+2a), 1)`; `v'` maps the real line onto it.
    pub interval: (f64, f64),
    pub samples: Vec<MomentSample>,
}

/// `v(x) = 2 log(e^{x/2} + e^{-x/(2(1+2a))})` and its derivative, whose image
/// is the moment interval `[-1/(1+2a), 1]`.
///
/// Panics unless `a > -1/2`.
pub fn moment_function(a: f64, x_samples: &[f64]) -> MomentData {
    assert!(a > -0.5, "moment function needs a > -1/2, got {a}");
    let c = 1.0 + 2.0 * a;
    let samples = x_samples
        .iter()
        .map(|&x| {
            let p = 0.5 * x;
            let q = -x / (2.0 * c);
            let v = 2.0 * log_sum_exp(p, q);
            // weight of e^{x/2} in the sum
            let w = logistic(p - q);
            let v_prime = w - (1.0 - w) / c;
            MomentSample { x_coord: x, v, v_prime }
        })
        .collect();
    MomentData { a, interval: (-1.0 / c, 1.0), samples }
}

/// Fibre chart on `P^1`: `Plus` uses `z^+`, `Minus` uses `z^- ` with
/// `z^+ = (z^-)^{-(1+2a)}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    Plus,
    Minus,
}

/// Coefficient of `|dz|^2` in `G` at modulus `|z|` in the given chart:
///
/// ```text
/// Plus:  (|z|^{-1} + |z|^{1/(1+2a)})^{-2} / |z|^2
/// Minus: (1+2a)^2 (|z|^{1+2a} + |z|^{-1})^{-2} / |z|^2
/// ```
///
/// It depends only on `|z|`, hence is invariant under `z -> t z`, `|t| = 1`.
pub fn evaluate_fiber_metric(a: f64, z_modulus: f64, chart: Chart) -> f64 {
    assert!(z_modulus > 0.0, "modulus must be positive");
    let c = 1.0 + 2.0 * a;
    let s = z_modulus;
    match chart {
        Chart::Plus => (s.recip() + s.powf(1.0 / c)).powi(-2) / (s * s),
        Chart::Minus => c * c * (s.powf(c) + s.recip()).powi(-2) / (s * s),
    }
}

/// Chart-change consistency: with `|z^+| = |z^-|^{-(1+2a)}`, the Plus
/// coefficient pulled back by `|dz^+/dz^-|^2 = (1+2a)^2 |z^+|^2/|z^-|^2`
/// should equal the Minus coefficient. Returns `(pulled_back_plus, minus)`.
pub fn chart_transition_pair(a: f64, z_minus_modulus: f64) -> (f64, f64) {
    let c = 1.0 + 2.0 * a;
    let s = z_minus_modulus;
    let z_plus = s.powf(-c);
    let pulled = evaluate_fiber_metric(a, z_plus, Chart::Plus) * c * c * (z_plus * z_plus) / (s * s);
    (pulled, evaluate_fiber_metric(a, s, Chart::Minus))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn v_at_origin() {
        for a in [-0.3, 0.0, 0.7] {
            let m = moment_function(a, &[0.0]);
            assert!((m.samples[0].v - 2.0 * 2f64.ln()).abs() < 1e-15);
        }
        assert_eq!(moment_function(0.0, &[0.0]).samples[0].v_prime, 0.0);
    }

    #[test]
    fn v_prime_limits_and_no_overflow() {
        let a = (-5.0 + 13f64.sqrt()) / 12.0;
        let m = moment_function(a, &[-5000.0, -50.0, 50.0, 5000.0]);
        let lo = -1.0 / (1.0 + 2.0 * a);
        assert!((m.samples[1].v_prime - lo).abs() < 1e-6);
        assert!((m.samples[2].v_prime - 1.0).abs() < 1e-6);
        assert!(m.samples.iter().all(|s| s.v.is_finite() && s.v_prime.is_finite()));
        assert_eq!(m.interval, (lo, 1.0));
    }

    #[test]
    fn v_prime_matches_finite_difference() {
        let a = 0.3;
        let h = 1e-5;
        for x in [-3.0, -0.5, 0.2, 4.0] {
            let m = moment_function(a, &[x - h, x, x + h]);
            let fd = (m.samples[2].v - m.samples[0].v) / (2.0 * h);
            assert!((fd - m.samples[1].v_prime).abs() < 1e-8);
        }
    }

    #[test]
    fn metric_direct_value() {
        assert!((evaluate_fiber_metric(0.0, 1.0, Chart::Plus) - 0.25).abs() < 1e-16);
        assert!((evaluate_fiber_metric(0.0, 1.0, Chart::Minus) - 0.25).abs() < 1e-16);
    }

    #[test]
    fn charts_agree() {
        for a in [-0.4, 0.0, 0.5, 3.0] {
            for k in -30..=30 {
                let s = 10f64.powf(k as f64 / 10.0);
                let (p, m) = chart_transition_pair(a, s);
                assert!(((p - m) / m).abs() < 1e-12, "a {a} s {s}: {p} vs {m}");
            }
        }
    }
}
