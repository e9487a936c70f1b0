//! Normalizing sums and integrals for the power-law families.

use libm::erfc;

/// Bernoulli numbers B_2, B_4, …, B_16.
const BERNOULLI: [f64; 8] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
];

/// Hurwitz zeta ζ(s, a) = Σ_{k≥0} (a + k)^{−s} for s > 1, a > 0.
///
/// Direct summation of the first terms followed by an Euler–Maclaurin tail.
pub fn hurwitz_zeta(s: f64, a: f64) -> f64 {
    debug_assert!(s > 1.0 && a > 0.0);
    const DIRECT: usize = 12;
    let mut sum = 0.0;
    for k in 0..DIRECT {
        sum += (a + k as f64).powf(-s);
    }
    let x = a + DIRECT as f64;
    let xs = x.powf(-s);
    sum += x * xs / (s - 1.0) + 0.5 * xs;
    // Σ B_2j/(2j)! · s(s+1)…(s+2j−2) · x^{−s−2j+1}
    let mut rising = s; // s(s+1)…(s+2j−2)
    let mut fact = 2.0; // (2j)!
    let mut xpow = xs / x; // x^{−s−2j+1}
    for (j, &b) in BERNOULLI.iter().enumerate() {
        let term = b / fact * rising * xpow;
        sum += term;
        if term.abs() < 1e-17 * sum.abs() {
            break;
        }
        let j2 = 2.0 * (j as f64 + 1.0);
        rising *= (s + j2 - 1.0) * (s + j2);
        fact *= (j2 + 1.0) * (j2 + 2.0);
        xpow /= x * x;
    }
    sum
}

/// Adaptive Simpson quadrature on [lo, hi].
fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, lo: f64, hi: f64, tol: f64) -> f64 {
    fn rec<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    let (fa, fb) = (f(lo), f(hi));
    let m = 0.5 * (lo + hi);
    let fm = f(m);
    let whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    rec(f, lo, hi, fa, fm, fb, whole, tol, 40)
}

/// ∫_a^∞ x^{−α} e^{−λ(x−a)} dx for a > 0, λ ≥ 0 (α > 1 when λ = 0).
///
/// Returns +∞ when the integral diverges.
pub fn scaled_tail_integral(alpha: f64, lambda: f64, a: f64) -> f64 {
    if lambda <= 0.0 {
        return if alpha > 1.0 { a.powf(1.0 - alpha) / (alpha - 1.0) } else { f64::INFINITY };
    }
    // x = a·e^u:  a^{1−α} ∫_0^∞ exp((1−α)u − λa(e^u − 1)) du
    let la = lambda * a;
    let phi = |u: f64| (1.0 - alpha) * u - la * u.exp_m1();
    let u_peak = if alpha < 1.0 { ((1.0 - alpha) / la).ln().max(0.0) } else { 0.0 };
    let peak = phi(u_peak);
    // phi is concave; walk right until it is 40 nats below the peak
    let mut hi = u_peak + 1.0;
    while phi(hi) > peak - 40.0 {
        hi = u_peak + 2.0 * (hi - u_peak);
    }
    let g = |u: f64| (phi(u) - peak).exp();
    let mut total = 0.0;
    // split at the peak and at a few points so the quadrature sees the bulk
    let mut knots = vec![0.0, u_peak, hi];
    knots.dedup();
    for w in knots.windows(2) {
        let pieces = 16;
        let step = (w[1] - w[0]) / pieces as f64;
        for i in 0..pieces {
            let lo = w[0] + step * i as f64;
            total += adaptive_simpson(&g, lo, lo + step, 1e-14);
        }
    }
    a.powf(1.0 - alpha) * total * peak.exp()
}

/// Σ_{x≥a} x^{−α} e^{−λ(x−a)} over integers x ≥ a ≥ 1.
pub fn scaled_tail_sum(alpha: f64, lambda: f64, a: f64) -> f64 {
    if lambda <= 0.0 {
        return if alpha > 1.0 { hurwitz_zeta(alpha, a) } else { f64::INFINITY };
    }
    const DIRECT: usize = 100;
    let f = |x: f64| (-alpha * x.ln() - lambda * (x - a)).exp();
    let mut sum = 0.0;
    for k in 0..DIRECT {
        sum += f(a + k as f64);
    }
    let x = a + DIRECT as f64;
    let fx = f(x);
    if fx == 0.0 {
        return sum;
    }
    // Euler–Maclaurin: ∫_x^∞ f + f(x)/2 − f'(x)/12 + f'''(x)/720
    let g1 = -alpha / x - lambda;
    let g2 = alpha / (x * x);
    let g3 = -2.0 * alpha / (x * x * x);
    let f1 = fx * g1;
    let f3 = fx * (g1 * g1 * g1 + 3.0 * g1 * g2 + g3);
    let integral = (-lambda * (x - a)).exp() * scaled_tail_integral(alpha, lambda, x);
    sum + integral + 0.5 * fx - f1 / 12.0 + f3 / 720.0
}

/// Upper normal tail Q(z) = P(Z > z).
pub fn normal_sf(z: f64) -> f64 {
    0.5 * erfc(z / std::f64::consts::SQRT_2)
}

/// Φ(b) − Φ(a) for a < b, evaluated on the side that avoids cancellation.
pub fn normal_interval(a: f64, b: f64) -> f64 {
    if a > 0.0 {
        normal_sf(a) - normal_sf(b)
    } else {
        normal_sf(-b) - normal_sf(-a)
    }
}

pub fn ln_normal_pdf(z: f64) -> f64 {
    -0.5 * z * z - 0.5 * (2.0 * std::f64::consts::PI).ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeta_known_values() {
        let z2 = std::f64::consts::PI.powi(2) / 6.0;
        assert!((hurwitz_zeta(2.0, 1.0) - z2).abs() < 1e-14);
        assert!((hurwitz_zeta(2.0, 3.0) - (z2 - 1.0 - 0.25)).abs() < 1e-14);
        assert!((hurwitz_zeta(4.0, 1.0) - std::f64::consts::PI.powi(4) / 90.0).abs() < 1e-14);
        // ζ(1.1) ≈ 10.5844484649508
        assert!((hurwitz_zeta(1.1, 1.0) - 10.584_448_464_950_8).abs() < 1e-10);
    }

    #[test]
    fn tail_integral_matches_closed_forms() {
        // λ → plain exponential when α = 0: ∫_a^∞ e^{−λ(x−a)} = 1/λ
        assert!((scaled_tail_integral(0.0, 0.5, 3.0) - 2.0).abs() < 1e-10);
        // α = 2, λ = 0: 1/a
        assert!((scaled_tail_integral(2.0, 0.0, 4.0) - 0.25).abs() < 1e-15);
        // tiny λ approaches the pure power law
        let near = scaled_tail_integral(2.5, 1e-12, 1.0);
        assert!((near - 1.0 / 1.5).abs() < 1e-8, "{near}");
        // α < 1 needs λ: ∫_1^∞ x^{-0.5} e^{-(x-1)} dx = e·√π·erfc(1)
        let expected = 1f64.exp() * std::f64::consts::PI.sqrt() * erfc(1.0);
        assert!((scaled_tail_integral(0.5, 1.0, 1.0) - expected).abs() < 1e-10);
    }

    #[test]
    fn tail_sum_matches_brute_force() {
        for &(alpha, lambda, a) in &[(2.0, 0.01, 1.0), (0.7, 0.003, 2.0), (1.5, 0.2, 5.0), (3.0, 1e-7, 1.0)] {
            let brute: f64 = (0..2_000_000).map(|k| {
                let x = a + k as f64;
                (-alpha * f64::ln(x) - lambda * (x - a)).exp()
            }).sum();
            let fast = scaled_tail_sum(alpha, lambda, a);
            // brute force truncation leaves a tail for the slowly decaying cases
            let tol = if lambda < 1e-4 { 1e-5 } else { 1e-10 };
            assert!((fast - brute).abs() / brute < tol, "{alpha} {lambda} {a}: {fast} vs {brute}");
        }
    }

    #[test]
    fn normal_helpers() {
        assert!((normal_sf(0.0) - 0.5).abs() < 1e-15);
        let v = normal_interval(-1.0, 1.0);
        assert!((v - 0.682_689_492_137_086).abs() < 1e-12, "{v}");
        assert!(normal_interval(8.0, 9.0) > 0.0);
    }
}
