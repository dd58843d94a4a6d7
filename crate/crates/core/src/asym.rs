//! Numerical side: the constants behind the average-growth results and the
//! log-periodic envelope functions bounding the fluctuating leading
//! coefficient of the grading-count asymptotics.
//!
//! The optimization kernel is the binomial growth exponent
//! `u(x, y) = (x+y)ln(x+y) - x ln x - y ln y`; maximizing it under
//! `x^2 y = 1` yields the peak constants `x0, y0, b0`, and the doubling
//! equation `v(x/2) = v(x)` yields the branch-switch constants `x1, b1`.
//! The envelope `b(t)` is `8`-periodic in `t` (period 1 in `log2 t^{1/3}`)
//! and lives between `b1` and `b0`; its twisted counterparts `b±(t)` come
//! from a perturbed objective with `tau = (2t)^{-1/3}`.
//!
//! All reals here are `f64`; tolerances are stated per assertion.

use thiserror::Error;

use crate::{Action, Sign};

#[derive(Debug, Error, PartialEq)]
pub enum AsymError {
    #[error("argument out of domain: {0}")]
    Domain(String),
    #[error("no sign change while bracketing the {0} equation; scan range is miscoded")]
    BracketNotFound(&'static str),
    #[error("Newton iteration for the perturbed peak did not converge at tau={tau}")]
    NewtonDiverged { tau: f64 },
    #[error("t={t} is below the operational envelope threshold {min}")]
    BelowThreshold { t: f64, min: f64 },
}

/// Growth exponent of the binomial coefficient: for `q = xn`, `M = yn`,
/// `ln C(q + M, q) = u(x, y) n + o(n)`.  Increasing in both arguments and
/// homogeneous of degree 1.
pub fn binom_entropy(x: f64, y: f64) -> f64 {
    assert!(x > 0.0 && y > 0.0, "binom_entropy needs positive arguments");
    (x + y) * (x + y).ln() - x * x.ln() - y * y.ln()
}

/// The exponent along the constraint surface `y = x^{-2}`.
pub fn constrained_entropy(x: f64) -> f64 {
    binom_entropy(x, x.powi(-2))
}

/// Short form `w(z) = ln(1+z)/z + ln(1+1/z)`; satisfies
/// `constrained_entropy(x) = x * w(x^3)`.
pub fn entropy_kernel(z: f64) -> f64 {
    assert!(z > 0.0, "entropy_kernel needs a positive argument");
    (1.0 + z).ln() / z + (1.0 + 1.0 / z).ln()
}

/// d/dx of [`constrained_entropy`].
fn constrained_entropy_deriv(x: f64) -> f64 {
    let x3 = x * x * x;
    (1.0 + 1.0 / x3).ln() - 2.0 / x3 * (1.0 + x3).ln()
}

/// Perturbed objective `u(x, x^{-2} ± tau x^{-1})` for the twisted series.
pub fn perturbed_entropy(x: f64, tau: f64, sign: Sign) -> Result<f64, AsymError> {
    let y = perturbed_y(x, tau, sign)?;
    Ok(binom_entropy(x, y))
}

fn perturbed_y(x: f64, tau: f64, sign: Sign) -> Result<f64, AsymError> {
    if x <= 0.0 || tau < 0.0 {
        return Err(AsymError::Domain(format!("x={x}, tau={tau}")));
    }
    let y = x.powi(-2) + sign.as_f64() * tau / x;
    if y <= 0.0 {
        return Err(AsymError::Domain(format!(
            "x^-2 {} tau/x must stay positive (x={x}, tau={tau})",
            if sign == Sign::Minus { "-" } else { "+" }
        )));
    }
    Ok(y)
}

fn perturbed_entropy_deriv(x: f64, tau: f64, sign: Sign) -> Result<f64, AsymError> {
    let y = perturbed_y(x, tau, sign)?;
    let dy = -2.0 * x.powi(-3) - sign.as_f64() * tau * x.powi(-2);
    Ok((1.0 + y / x).ln() + dy * (1.0 + x / y).ln())
}

/// Multiplicative excess of `t` over the largest power of two below it:
/// `t / 2^{floor(log2 t)}`, always in `[1, 2)`.
pub fn pow2_excess(t: f64) -> f64 {
    assert!(t >= 1.0 && t.is_finite(), "pow2_excess needs t >= 1");
    let mut p = t.log2().floor().exp2();
    // Guard the floating-point edges so 2^e <= t < 2^{e+1} really holds.
    if p > t {
        p /= 2.0;
    } else if 2.0 * p <= t {
        p *= 2.0;
    }
    t / p
}

/// The solved constants.  `z0` is the positive root of
/// `z ln(1 + 1/z) = 2 ln(1 + z)`; the peak is `x0 = z0^{1/3}`,
/// `y0 = z0^{-2/3}`, `b0 = v(x0)`; `x1` solves `v(x/2) = v(x)` with value
/// `b1`; `a0` is the product of zeta values at the integers >= 2.
#[derive(Clone, Copy, Debug)]
pub struct AsymptoticConstants {
    pub z0: f64,
    pub x0: f64,
    pub y0: f64,
    pub b0: f64,
    pub x1: f64,
    pub b1: f64,
    pub a0: f64,
}

/// Envelope evaluation below this `t` is refused: the Newton solve for the
/// perturbed peak is only trusted above it (it converges in well under 20
/// steps there, and the minus-branch domain constraint holds throughout).
pub const ENVELOPE_MIN_T: f64 = 64.0;

/// Solves every constant from scratch: coarse scan (step 0.01), bisection
/// to 1e-8, then Newton polishing.
pub fn solve_constants() -> Result<AsymptoticConstants, AsymError> {
    let h = |z: f64| z * (1.0 + 1.0 / z).ln() - 2.0 * (1.0 + z).ln();
    let dh = |z: f64| (1.0 + 1.0 / z).ln() - 3.0 / (1.0 + z);
    let z0 = polish_root(h, dh, scan_bracket(h, 0.01, 2.0, 0.01, "z0")?)?;

    let g = |x: f64| constrained_entropy(x / 2.0) - constrained_entropy(x);
    let dg = |x: f64| 0.5 * constrained_entropy_deriv(x / 2.0) - constrained_entropy_deriv(x);
    let x1 = polish_root(g, dg, scan_bracket(g, 0.01, 2.0, 0.01, "x1")?)?;

    let x0 = z0.cbrt();
    Ok(AsymptoticConstants {
        z0,
        x0,
        y0: z0.powf(-2.0 / 3.0),
        b0: constrained_entropy(x0),
        x1,
        b1: constrained_entropy(x1),
        a0: zeta_product(),
    })
}

fn scan_bracket(
    f: impl Fn(f64) -> f64,
    lo: f64,
    hi: f64,
    step: f64,
    what: &'static str,
) -> Result<(f64, f64), AsymError> {
    let mut a = lo;
    let mut fa = f(a);
    while a < hi {
        let b = a + step;
        let fb = f(b);
        if fa == 0.0 {
            return Ok((a, a));
        }
        if fa * fb < 0.0 {
            return Ok((a, b));
        }
        a = b;
        fa = fb;
    }
    Err(AsymError::BracketNotFound(what))
}

fn polish_root(
    f: impl Fn(f64) -> f64,
    df: impl Fn(f64) -> f64,
    (mut a, mut b): (f64, f64),
) -> Result<f64, AsymError> {
    // Bisection to 1e-8, sign convention from the bracket.
    let rising = f(b) > f(a);
    while b - a > 1e-8 {
        let mid = 0.5 * (a + b);
        if (f(mid) > 0.0) == rising {
            b = mid;
        } else {
            a = mid;
        }
    }
    let mut x = 0.5 * (a + b);
    for _ in 0..60 {
        let fx = f(x);
        if fx.abs() <= 1e-13 {
            return Ok(x);
        }
        x -= fx / df(x);
    }
    let fx = f(x);
    if fx.abs() <= 1e-13 {
        Ok(x)
    } else {
        Err(AsymError::NewtonDiverged { tau: 0.0 })
    }
}

/// Riemann zeta at real `s >= 2` by direct summation with Euler-Maclaurin
/// tail correction; absolute error well below 1e-14 in this range.
pub fn zeta(s: f64) -> f64 {
    assert!(s >= 2.0, "only the s >= 2 range is needed or supported");
    let n = 1000.0f64;
    let mut sum = 0.0;
    let mut k = 1.0;
    while k < n {
        sum += k.powf(-s);
        k += 1.0;
    }
    sum + n.powf(1.0 - s) / (s - 1.0) + 0.5 * n.powf(-s) + s * n.powf(-s - 1.0) / 12.0
        - s * (s + 1.0) * (s + 2.0) * n.powf(-s - 3.0) / 720.0
}

/// `prod_{m >= 2} zeta(m)`, truncated once `zeta(m) - 1 < 1e-16`,
/// with the remaining tail estimated and multiplied back in.
fn zeta_product() -> f64 {
    let mut product = 1.0;
    let mut m = 2.0;
    loop {
        let z = zeta(m);
        product *= z;
        if z - 1.0 < 1e-16 {
            break;
        }
        m += 1.0;
    }
    // sum_{k >= m+1} (zeta(k) - 1) ~ 2^{-m}; the log of the remaining
    // product is below that.
    product * (2.0f64.powf(-m)).exp()
}

/// `prod_{m >= 2} (1 - c^{-m})`, the factor relating the characteristic-c
/// average constant to the characteristic-0 one.
pub fn pochhammer_factor(c: u64) -> f64 {
    assert!(c >= 2);
    let inv = 1.0 / c as f64;
    let mut product = 1.0;
    let mut term = inv * inv;
    while term > 1e-20 {
        product *= 1.0 - term;
        term *= inv;
    }
    product
}

impl AsymptoticConstants {
    /// Average-growth constant for characteristic `c` (`c = 0` gives `a0`).
    pub fn a_c(&self, c: u64) -> f64 {
        if c == 0 {
            self.a0
        } else {
            self.a0 * pochhammer_factor(c)
        }
    }

    /// `lambda(t) = pow2_excess(t^{1/3} / x0)`, defined for `t >= x0^3`.
    pub fn envelope_scale(&self, t: f64) -> f64 {
        let s = t.cbrt() / self.x0;
        assert!(s >= 1.0, "envelope needs t >= x0^3, got t={t}");
        pow2_excess(s)
    }

    /// The envelope `b(t) = max(v(x), v(x/2))` at `x = x0 lambda(t)`.
    /// Continuous, `8`-periodic in `t`, and pinched between `b1` and `b0`.
    pub fn envelope(&self, t: f64) -> f64 {
        let x = self.x0 * self.envelope_scale(t);
        constrained_entropy(x).max(constrained_entropy(x / 2.0))
    }

    /// Critical point of the perturbed objective near `x0`: Newton from
    /// `x0` on the derivative, 20-step budget, residual below 1e-10.
    pub fn perturbed_peak(&self, tau: f64, sign: Sign) -> Result<f64, AsymError> {
        if tau == 0.0 {
            return Ok(self.x0);
        }
        let mut x = self.x0;
        for _ in 0..20 {
            let fx = perturbed_entropy_deriv(x, tau, sign)?;
            if fx.abs() <= 1e-10 {
                return Ok(x);
            }
            let h = 1e-6;
            let df = (perturbed_entropy_deriv(x + h, tau, sign)?
                - perturbed_entropy_deriv(x - h, tau, sign)?)
                / (2.0 * h);
            let next = x - fx / df;
            if !next.is_finite() || next <= 0.0 {
                return Err(AsymError::NewtonDiverged { tau });
            }
            x = next;
        }
        if perturbed_entropy_deriv(x, tau, sign)?.abs() <= 1e-10 {
            Ok(x)
        } else {
            Err(AsymError::NewtonDiverged { tau })
        }
    }

    /// Twisted envelope `b±(t)`: the plain envelope construction applied to
    /// the perturbed objective at `tau = (2t)^{-1/3}`.
    pub fn envelope_pm(&self, t: f64, sign: Sign) -> Result<f64, AsymError> {
        self.twisted_envelope(t, sign, 1.0)
    }

    /// The twisted envelope on the maximization grid of [`ln_max_binom`].
    ///
    /// The feasible stratum scales there are `x = (2t)^{1/3} / 2^m`, so
    /// the power-of-two excess is taken of `(2t)^{1/3} = 1/tau` rather
    /// than `t^{1/3}`.  This is the function whose multiple
    /// `2^{-1/3} t^{2/3}` the constrained maximum follows; [`envelope_pm`]
    /// itself tracks the plain envelope at `t` instead and drifts a full
    /// branch away from the grid maximum for most `t`.
    pub fn envelope_pm_grid(&self, t: f64, sign: Sign) -> Result<f64, AsymError> {
        self.twisted_envelope(t, sign, 2.0)
    }

    fn twisted_envelope(&self, t: f64, sign: Sign, excess_scale: f64) -> Result<f64, AsymError> {
        if t < ENVELOPE_MIN_T {
            return Err(AsymError::BelowThreshold {
                t,
                min: ENVELOPE_MIN_T,
            });
        }
        let tau = (2.0 * t).powf(-1.0 / 3.0);
        let peak = self.perturbed_peak(tau, sign)?;
        let x = peak * pow2_excess((excess_scale * t).cbrt() / peak);
        let a = perturbed_entropy(x, tau, sign)?;
        let b = perturbed_entropy(x / 2.0, tau, sign)?;
        Ok(a.max(b))
    }

    /// First-order coefficient of the twisted envelopes:
    /// `ln(1 + x(t)^3) / x(t)` on the branch picked by the switch constant
    /// `x1`.  `8`-periodic like the envelope itself.
    ///
    /// The expansion it controls is in `tau = (2t)^{-1/3}`:
    /// `b±(t) = b(t) ± tau * envelope_correction(t) + O(tau^2)` away from
    /// switch points.
    pub fn envelope_correction(&self, t: f64) -> f64 {
        let scaled = self.x0 * self.envelope_scale(t);
        let x = if scaled < self.x1 {
            scaled
        } else {
            scaled / 2.0
        };
        (1.0 + x * x * x).ln() / x
    }
}

/// Which half of `max(v(x), v(x/2))` the envelope sits on: `K1` is the
/// plain argument (taken for `x0 lambda(t) <= x1`), `K2` the halved one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    K1,
    K2,
}

/// One sampling row of the envelope family at a point `t`: the envelope,
/// both twisted envelopes, the first-order correction, the branch in
/// force, and whether `t` sits inside the switch neighbourhood where the
/// branch rule (and the two-term expansion) degrades.
#[derive(Clone, Copy, Debug)]
pub struct EnvelopeSample {
    pub t: f64,
    pub b_val: f64,
    pub b_plus: f64,
    pub b_minus: f64,
    pub b1_corr: f64,
    pub branch: Branch,
    pub near_switch: bool,
}

/// Width constant of the switch neighbourhood `|phi - x1/x0| <= C t^{-1/3}`.
pub const SWITCH_NEIGHBOURHOOD_C: f64 = 10.0;

impl AsymptoticConstants {
    pub fn envelope_sample(&self, t: f64) -> Result<EnvelopeSample, AsymError> {
        let scaled = self.x0 * self.envelope_scale(t);
        let branch = if scaled <= self.x1 {
            Branch::K1
        } else {
            Branch::K2
        };
        let phi = pow2_excess(t.cbrt() / self.x0);
        let near_switch =
            (phi - self.x1 / self.x0).abs() <= SWITCH_NEIGHBOURHOOD_C * t.powf(-1.0 / 3.0);
        Ok(EnvelopeSample {
            t,
            b_val: self.envelope(t),
            b_plus: self.envelope_pm(t, Sign::Plus)?,
            b_minus: self.envelope_pm(t, Sign::Minus)?,
            b1_corr: self.envelope_correction(t),
            branch,
            near_switch,
        })
    }
}

/// Exact maximization of the log binomial over the constrained grid:
/// `max ln C(q + M(m) - 1, q)` over `m >= 0`, `q = floor(t / 2^m)`, where
/// `M(m)` is the point count of the chosen action family.  Returns the
/// maximum and its `(m, q)`.
pub fn ln_max_binom(t: f64, action: Action) -> (f64, u32, u64) {
    assert!(t > 1.0);
    let mut best = (f64::NEG_INFINITY, 0u32, 0u64);
    let m_cap = t.log2().floor() as u32;
    for m in 0..=m_cap {
        let q_top = (t / (m as f64).exp2()).floor() as u64;
        let points = match action {
            Action::Asp => ((2 * m) as f64).exp2(),
            Action::TwistedPlus => stratum_points(m, 1.0),
            Action::TwistedMinus => stratum_points(m, -1.0),
        };
        if points < 1.0 {
            continue;
        }
        // The binomial increases in q, so the floor is optimal; the
        // neighbor below is probed as well.
        for q in [q_top, q_top.saturating_sub(1)] {
            if q == 0 {
                continue;
            }
            let value = ln_binomial(q as f64, points);
            if value > best.0 {
                best = (value, m, q);
            }
        }
    }
    best
}

fn stratum_points(m: u32, sign: f64) -> f64 {
    if m == 0 {
        return (1.0 + sign) / 2.0; // 1 point for plus, none for minus
    }
    ((m - 1) as f64).exp2() * ((m as f64).exp2() + sign)
}

/// `ln C(q + M - 1, q)` through log-gamma.
fn ln_binomial(q: f64, points: f64) -> f64 {
    libm::lgamma(q + points) - libm::lgamma(q + 1.0) - libm::lgamma(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn constants() -> AsymptoticConstants {
        solve_constants().unwrap()
    }

    #[test]
    fn entropy_identities() {
        assert!((binom_entropy(1.0, 1.0) - 2.0 * 2.0f64.ln()).abs() < 1e-15);
        // Homogeneity of degree one.
        assert!((binom_entropy(2.0, 2.0) - 2.0 * binom_entropy(1.0, 1.0)).abs() < 1e-14);
        for &(x, y, s) in &[(0.3, 1.7, 2.5), (1.2, 0.4, 7.0), (3.0, 3.0, 0.1)] {
            let lhs = binom_entropy(s * x, s * y);
            let rhs = s * binom_entropy(x, y);
            assert!((lhs - rhs).abs() < 1e-10 * rhs.abs().max(1.0));
        }
        // v(x) = x w(x^3).
        for &x in &[0.3, 1.0, 3.0] {
            let lhs = constrained_entropy(x);
            let rhs = x * entropy_kernel(x * x * x);
            assert!((lhs - rhs).abs() < 1e-12, "x={x}");
        }
    }

    #[test]
    fn constrained_entropy_derivative_matches_finite_differences() {
        for &x in &[0.3, 0.5, 0.575891, 0.8, 1.5] {
            let h = 1e-6;
            let numeric = (constrained_entropy(x + h) - constrained_entropy(x - h)) / (2.0 * h);
            assert!(
                (constrained_entropy_deriv(x) - numeric).abs() < 1e-7,
                "x={x}"
            );
        }
    }

    #[test]
    fn solved_constants_match_known_digits() {
        let c = constants();
        assert!((c.x0 - 0.575891).abs() < 1e-6);
        assert!((c.y0 - 3.015227).abs() < 1e-6);
        assert!((c.b0 - 1.581080).abs() < 1e-6);
        assert!((c.x1 - 0.800203).abs() < 1e-6);
        assert!((c.b1 - 1.512173).abs() < 1e-6);
        assert!((c.a0 - 2.2948566).abs() < 1e-6);
        // Residual of the defining equation.
        let residual = c.z0 * (1.0 + 1.0 / c.z0).ln() - 2.0 * (1.0 + c.z0).ln();
        assert!(residual.abs() <= 1e-12);
        // x0, y0 are powers of z0; b1 balances the two branches.
        assert!((c.x0.powi(3) - c.z0).abs() < 1e-12);
        assert!((c.y0 - c.z0.powf(-2.0 / 3.0)).abs() < 1e-12);
        assert!((constrained_entropy(c.x1 / 2.0) - constrained_entropy(c.x1)).abs() < 1e-10);
        assert!((c.b0 - binom_entropy(c.x0, c.y0)).abs() < 1e-12);
    }

    #[test]
    fn unimodality_of_the_constrained_entropy() {
        let c = constants();
        let mut x = 0.9 * c.x0;
        while x < c.x0 - 1e-4 {
            assert!(constrained_entropy_deriv(x) > 0.0, "x={x}");
            x += 1e-3;
        }
        let mut x = c.x0 + 1e-4;
        while x < 2.0 {
            assert!(constrained_entropy_deriv(x) < 0.0, "x={x}");
            x += 1e-2;
        }
    }

    #[test]
    fn characteristic_constants_match_tabulated_values() {
        let c = constants();
        let table = [
            (2u64, 0.577576, 1.325455),
            (3, 0.840189, 1.928114),
            (5, 0.950416, 2.181068),
            (7, 0.976261, 2.240380),
            (11, 0.990916, 2.274010),
            (13, 0.993593, 2.280153),
        ];
        for (prime, factor, a_c) in table {
            assert!(
                (pochhammer_factor(prime) - factor).abs() < 1e-5,
                "factor c={prime}"
            );
            assert!((c.a_c(prime) - a_c).abs() < 1e-5, "a_c c={prime}");
        }
    }

    #[test]
    fn zeta_truncation_is_stable() {
        // Moving the truncation threshold barely moves the product.
        let strict = zeta_product_with_threshold(1e-16);
        let loose = zeta_product_with_threshold(1e-14);
        assert!((strict - loose).abs() < 1e-13);
    }

    fn zeta_product_with_threshold(threshold: f64) -> f64 {
        let mut product = 1.0;
        let mut m = 2.0;
        loop {
            let z = zeta(m);
            product *= z;
            if z - 1.0 < threshold {
                break;
            }
            m += 1.0;
        }
        product * (2.0f64.powf(-m)).exp()
    }

    #[test]
    fn pow2_excess_examples() {
        assert_eq!(pow2_excess(1.0), 1.0);
        assert_eq!(pow2_excess(3.0), 1.5);
        assert_eq!(pow2_excess(48.0), 1.5);
        assert_eq!(pow2_excess(2.0), 1.0);
        for &t in &[1.0, 1.5, 7.3, 1024.0, 1e12] {
            let p = pow2_excess(t);
            assert!((1.0..2.0).contains(&p), "t={t}");
            assert!((pow2_excess(2.0 * t) - p).abs() < 1e-12);
        }
    }

    #[test]
    fn envelope_peaks_and_troughs() {
        let c = constants();
        for m in 1..=5 {
            let scale = (1u64 << m) as f64;
            let peak_t = (scale * c.x0).powi(3);
            assert!((c.envelope(peak_t) - c.b0).abs() < 1e-9, "m={m}");
            let trough_t = (scale * c.x1).powi(3);
            assert!((c.envelope(trough_t) - c.b1).abs() < 1e-9, "m={m}");
        }
    }

    #[test]
    fn envelope_periodic_and_bounded() {
        let c = constants();
        let mut t = 100.0;
        while t < 1e9 {
            let b = c.envelope(t);
            assert!(b >= c.b1 - 1e-9 && b <= c.b0 + 1e-9, "t={t}");
            assert!((c.envelope(8.0 * t) - b).abs() < 1e-9, "t={t}");
            t *= 1.37;
        }
    }

    #[test]
    fn perturbed_peak_and_entropy_limits() {
        let c = constants();
        for sign in [Sign::Plus, Sign::Minus] {
            assert_eq!(c.perturbed_peak(0.0, sign).unwrap(), c.x0);
            for &x in &[0.4, 0.8, 1.3] {
                let v0 = perturbed_entropy(x, 0.0, sign).unwrap();
                assert!((v0 - constrained_entropy(x)).abs() < 1e-14);
            }
            // x0_tau -> x0 as tau -> 0.
            let drift = (c.perturbed_peak(1e-4, sign).unwrap() - c.x0).abs();
            assert!(drift < 1e-3, "drift={drift}");
        }
    }

    #[test]
    fn perturbed_entropy_derivative_in_tau() {
        // d/dtau at 0 is ± ln(1 + x^3)/x, via central differences.
        for &x in &[0.5, 0.8] {
            for sign in [Sign::Plus, Sign::Minus] {
                let h = 1e-6;
                let diff = (perturbed_entropy(x, h, sign).unwrap()
                    - perturbed_entropy(x, 0.0, sign).unwrap())
                    / h;
                let expected = sign.as_f64() * (1.0 + x * x * x).ln() / x;
                assert!((diff - expected).abs() < 1e-4, "x={x}");
            }
        }
    }

    #[test]
    fn minus_branch_domain_is_enforced() {
        // For tau large enough, x^{-2} - tau/x dies at x = 1/tau.
        assert!(perturbed_entropy(4.0, 0.5, Sign::Minus).is_err());
        assert!(perturbed_entropy(1.0, 0.5, Sign::Minus).is_ok());
        let c = constants();
        assert!(matches!(
            c.envelope_pm(1.0, Sign::Plus),
            Err(AsymError::BelowThreshold { .. })
        ));
    }

    #[test]
    fn twisted_envelopes_approach_the_plain_one() {
        let c = constants();
        let mut t = 1e3;
        while t <= 1e12 {
            let b = c.envelope(t);
            for sign in [Sign::Plus, Sign::Minus] {
                let bpm = c.envelope_pm(t, sign).unwrap();
                let gap = (bpm - b).abs() * t.cbrt();
                assert!(gap < 1.0, "t={t} sign={sign:?} gap={gap}");
            }
            t *= 3.1;
        }
    }

    #[test]
    fn correction_is_log_periodic() {
        let c = constants();
        let mut t = 1e3;
        while t < 1e10 {
            let lhs = c.envelope_correction(8.0 * t);
            let rhs = c.envelope_correction(t);
            assert!((lhs - rhs).abs() < 1e-9, "t={t}");
            t *= 2.9;
        }
    }

    #[test]
    fn ln_max_binom_tracks_the_envelope() {
        let c = constants();
        for exp in 3..=9 {
            let t = 10.0f64.powi(exp);
            let (value, m_star, q_star) = ln_max_binom(t, Action::Asp);
            let predicted = c.envelope(t) * t.powf(2.0 / 3.0);
            assert!(
                (value - predicted).abs() <= 3.0 * t.ln(),
                "t={t}: value={value}, predicted={predicted}"
            );
            assert!((m_star as f64).exp2() <= 8.0 * t.cbrt());
            assert!(q_star as f64 <= t);
        }
    }

    #[test]
    fn envelope_sample_rows_are_consistent() {
        let c = constants();
        let mut t = 1e3;
        while t < 1e11 {
            let s = c.envelope_sample(t).unwrap();
            assert!(s.b_val >= c.b1 - 1e-9 && s.b_val <= c.b0 + 1e-9);
            let scaled = c.x0 * c.envelope_scale(t);
            assert_eq!(s.branch == Branch::K1, scaled <= c.x1);
            t *= 1.618;
        }
    }

    #[test]
    fn binomial_argmax_follows_the_branch_rule() {
        // Away from switch neighbourhoods, the maximizing stratum of the
        // constrained binomial is the one the branch rule names: the
        // chosen power of two is floor(log2(t^{1/3}/x0)) on K1 and one
        // more on K2.
        let c = constants();
        let mut t = 1e4;
        while t < 1e11 {
            t *= 1.37;
            let s = c.envelope_sample(t).unwrap();
            if s.near_switch {
                continue;
            }
            let (_, m_star, _) = ln_max_binom(t, Action::Asp);
            let mu = (t.cbrt() / c.x0).log2().floor() as u32;
            let expected = match s.branch {
                Branch::K1 => mu,
                Branch::K2 => mu + 1,
            };
            assert_eq!(m_star, expected, "t={t}");
        }
    }

    #[test]
    fn ln_max_binom_tracks_the_grid_envelope_for_twisted_families() {
        let c = constants();
        for exp in 3..=9 {
            let t = 10.0f64.powi(exp);
            for (action, sign) in [
                (Action::TwistedPlus, Sign::Plus),
                (Action::TwistedMinus, Sign::Minus),
            ] {
                let (value, _, _) = ln_max_binom(t, action);
                let predicted = 2.0f64.powf(-1.0 / 3.0)
                    * c.envelope_pm_grid(t, sign).unwrap()
                    * t.powf(2.0 / 3.0);
                assert!(
                    (value - predicted).abs() <= 3.0 * t.ln(),
                    "t={t} {action}: value={value}, predicted={predicted}"
                );
            }
        }
    }
}
