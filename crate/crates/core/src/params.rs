//! Exponent schedules: how the scaling, round-budget and bucket exponents
//! are chosen from an assumed matrix-multiplication exponent, and what
//! running-time exponent each choice predicts.
//!
//! Nothing here affects correctness. The algorithms are exact for every
//! parameter choice; these functions only pick defaults and report.

use crate::error::{Error, Result};

/// Assumed matrix multiplication exponent.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum OmegaPreset {
    /// Cubic multiplication, ω = 3.
    Classical,
    /// Strassen-style, ω = log2 7.
    Strassen,
    /// ω = 2.3729 with rectangular bounds derived by cutting into squares.
    Current,
    /// ω = 2.3729 with the tabulated rectangular bounds below.
    TunedRectangular,
    /// Any other ω in [2, 3], square cuts only.
    Custom(f64),
}

impl Default for OmegaPreset {
    fn default() -> Self {
        OmegaPreset::Current
    }
}

/// Upper bounds on ω(1, k, 1) (= ω(1, 1, k) for bilinear algorithms) used
/// by the tuned preset. A convex piecewise-linear envelope; beyond the last
/// point the slope is 1 (appending columns costs linearly).
const TUNED_RECT: [(f64, f64); 6] = [
    (0.0, 2.0),
    (0.5965, 2.0922),
    (1.0, 2.3729),
    (1.2695, 2.5957),
    (1.3016, 2.623),
    (1.938, 3.1945),
];

impl OmegaPreset {
    pub fn parse(s: &str) -> Result<Self> {
        Ok(match s {
            "classical" | "cubic" => OmegaPreset::Classical,
            "strassen" => OmegaPreset::Strassen,
            "current" | "2.3729" => OmegaPreset::Current,
            "tuned-rectangular" | "tuned" => OmegaPreset::TunedRectangular,
            other => {
                let w: f64 = other
                    .parse()
                    .map_err(|_| Error::InvalidParams(format!("unknown omega preset {other:?}")))?;
                if !(2.0..=3.0).contains(&w) {
                    return Err(Error::InvalidParams(format!("omega {w} outside [2, 3]")));
                }
                OmegaPreset::Custom(w)
            }
        })
    }

    pub fn name(&self) -> String {
        match self {
            OmegaPreset::Classical => "classical".into(),
            OmegaPreset::Strassen => "strassen".into(),
            OmegaPreset::Current => "current".into(),
            OmegaPreset::TunedRectangular => "tuned-rectangular".into(),
            OmegaPreset::Custom(w) => format!("{w}"),
        }
    }

    /// Square exponent ω.
    pub fn omega(&self) -> f64 {
        match *self {
            OmegaPreset::Classical => 3.0,
            OmegaPreset::Strassen => 2.807_354_922_057_604,
            OmegaPreset::Current | OmegaPreset::TunedRectangular => 2.3729,
            OmegaPreset::Custom(w) => w,
        }
    }

    pub fn is_tuned(&self) -> bool {
        matches!(self, OmegaPreset::TunedRectangular)
    }

    /// Bound on ω(1, k, 1) for `k ≥ 0`.
    pub fn omega_rect(&self, k: f64) -> f64 {
        let k = k.max(0.0);
        if self.is_tuned() {
            let last = TUNED_RECT[TUNED_RECT.len() - 1];
            if k >= last.0 {
                return last.1 + (k - last.0);
            }
            let idx = TUNED_RECT.iter().position(|&(x, _)| x > k).unwrap();
            let (x0, y0) = TUNED_RECT[idx - 1];
            let (x1, y1) = TUNED_RECT[idx];
            return y0 + (y1 - y0) * (k - x0) / (x1 - x0);
        }
        let w = self.omega();
        if k <= 1.0 {
            2.0 + k * (w - 2.0)
        } else {
            w + k - 1.0
        }
    }
}

/// Bisection for a root of a decreasing function on `[lo, hi]`.
fn bisect_decreasing(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    if f(lo) <= 0.0 {
        return lo;
    }
    if f(hi) >= 0.0 {
        return hi;
    }
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Bucket exponent δ for the bounded kernel with an `n × n^β` left factor.
///
/// Square case (β = 1): δ balances `ω(1,1,2−δ) + θ` against `2 + δ`.
/// Otherwise δ = ½(ω(1,β,1) + β + θ − 2), clamped to `[0, β]`.
pub fn choose_delta(beta: f64, theta: f64, omega: OmegaPreset) -> f64 {
    if (beta - 1.0).abs() < 1e-12 {
        return bisect_decreasing(0.0, 1.0, |d| omega.omega_rect(2.0 - d) + theta - (2.0 + d));
    }
    (0.5 * (omega.omega_rect(beta) + beta + theta - 2.0)).clamp(0.0, beta.max(0.0))
}

/// Exponent bound for a bounded-entry product, `n × n^β` by `n^β × n`
/// with left entries up to `n^θ`. Never exceeds the trivial `2 + β`.
pub fn g_bound(beta: f64, theta: f64, omega: OmegaPreset) -> f64 {
    let g = if (beta - 1.0).abs() < 1e-12 {
        let d = choose_delta(1.0, theta, omega);
        (omega.omega_rect(2.0 - d) + theta).max(2.0 + d)
    } else {
        0.5 * (2.0 + beta + omega.omega_rect(beta) + theta)
    };
    g.min(2.0 + beta)
}

/// Parameters and predicted exponent for the monotone product.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MmpSchedule {
    pub theta: f64,
    pub rho: f64,
    pub delta: f64,
    pub g: f64,
    pub exponent: f64,
}

/// `max{1+β+η−θ, ½(2+β+g)}`.
pub fn monotone_exponent(beta: f64, eta: f64, theta: f64, omega: OmegaPreset) -> f64 {
    let g = g_bound(beta, theta, omega);
    (1.0 + beta + eta - theta).max(0.5 * (2.0 + beta + g))
}

/// Square-case bound `max{3−θ, ½(3 + max{ω(1,1,2−δ)+θ, 2+δ})}`.
pub fn m111_value(theta: f64, delta: f64, omega: OmegaPreset) -> f64 {
    let inner = (omega.omega_rect(2.0 - delta) + theta).max(2.0 + delta);
    (3.0 - theta).max(0.5 * (3.0 + inner))
}

/// Default (θ, ρ) for an instance with shape exponents β, η.
///
/// θ balances `1+β+η−θ` against `½(2+β+g)`; ρ = ½(2+β−g). With the tuned
/// preset and β = η = 1 the tabulated point θ = 0.1348, δ = 0.7305 is used.
pub fn default_params(beta: f64, eta: f64, omega: OmegaPreset) -> MmpSchedule {
    let square = (beta - 1.0).abs() < 1e-9 && (eta - 1.0).abs() < 1e-9;
    let theta = if omega.is_tuned() && square {
        0.1348
    } else if square {
        // both branches are linear here, giving (3 − ω)/5
        ((3.0 - omega.omega()) / 5.0).clamp(0.0, 1.0)
    } else {
        let w = omega.omega_rect(beta);
        ((4.0 * eta + beta - 2.0 - w) / 5.0).clamp(0.0, eta.max(0.0))
    };
    let delta = if omega.is_tuned() && square { 0.7305 } else { choose_delta(beta, theta, omega) };
    let g = if square {
        ((omega.omega_rect(2.0 - delta) + theta).max(2.0 + delta)).min(2.0 + beta)
    } else {
        g_bound(beta, theta, omega)
    };
    let rho = (0.5 * (2.0 + beta - g)).max(0.0);
    let exponent = if square {
        m111_value(theta, delta, omega)
    } else {
        (1.0 + beta + eta - theta).max(0.5 * (2.0 + beta + g))
    };
    MmpSchedule { theta, rho, delta, g, exponent }
}

/// Batch range-mode parameters and predicted exponent.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BatchSchedule {
    pub tau: f64,
    pub theta: f64,
    pub delta: f64,
    pub exponent: f64,
}

/// `max{τ+(1−τ)(2−θ), ½(1−τ)(3+max{ω(1,1,2−δ)+θ, 2+δ}), 1+τ}`.
pub fn batch_exponent(tau: f64, theta: f64, delta: f64, omega: OmegaPreset) -> f64 {
    let inner = (omega.omega_rect(2.0 - delta) + theta).max(2.0 + delta);
    (tau + (1.0 - tau) * (2.0 - theta))
        .max(0.5 * (1.0 - tau) * (3.0 + inner))
        .max(1.0 + tau)
}

pub fn batch_default_params(omega: OmegaPreset) -> BatchSchedule {
    let (tau, theta, delta) = if omega.is_tuned() {
        (0.4804, 0.0754, 0.6984)
    } else {
        let w = omega.omega();
        ((6.0 + w) / (15.0 + w), (3.0 - w) / 9.0, (4.0 * w - 3.0) / 9.0)
    };
    BatchSchedule { tau, theta, delta, exponent: batch_exponent(tau, theta, delta, omega) }
}

/// Dynamic range-mode parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DynamicSchedule {
    pub t1: f64,
    pub t2: f64,
    pub t3: f64,
    pub theta: f64,
    pub rho: f64,
    pub sigma: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DynamicCost {
    pub beta: f64,
    pub eta: f64,
    pub per_op: f64,
    pub space: f64,
}

pub fn drm_default_params(omega: OmegaPreset) -> DynamicSchedule {
    if omega.is_tuned() {
        return DynamicSchedule {
            t1: 0.67385,
            t2: 0.6523,
            t3: 0.6523,
            theta: 0.1239,
            rho: 0.1859,
            sigma: 1.6902,
        };
    }
    let w = omega.omega();
    let t23 = (w + 9.0) / (w + 15.0);
    DynamicSchedule {
        t1: (w + 21.0) / (2.0 * w + 30.0),
        t2: t23,
        t3: t23,
        theta: (3.0 - w) / 6.0,
        rho: (3.0 - w) / 4.0,
        sigma: (5.0 * w + 9.0) / 12.0,
    }
}

/// Per-operation time and space exponents of the dynamic structure.
pub fn dynamic_cost(p: &DynamicSchedule, omega: OmegaPreset) -> DynamicCost {
    let s = 1.0 - p.t3;
    let beta = p.t1 / s;
    let eta = (1.0 - p.t1) / s;
    let w = omega.omega_rect(beta);
    let rebuild = s
        * (1.0 + beta + eta - p.theta)
            .max(p.rho + p.theta + w + beta - p.sigma)
            .max(2.0 + beta - p.rho)
        - p.t2;
    let per_op = (2.0 - 2.0 * p.t1)
        .max(p.t2)
        .max(rebuild)
        .max(s * (p.rho + p.sigma))
        .max(p.t3);
    let space = (2.0 - p.t1).max(p.t2).max(
        s * (p.rho + (2.0 + beta + p.theta).max(1.0 + 2.0 * beta) - p.sigma).max(s * (2.0 + beta - p.rho)),
    );
    DynamicCost { beta, eta, per_op, space }
}

/// Hop threshold ζ and scaling exponent θ for the subpath solver when
/// weights are bounded by `n^μ`.
pub fn ssrp_params(mu: f64, omega: OmegaPreset) -> (f64, f64) {
    if omega.is_tuned() {
        (0.4035 - 0.6434 * mu, 0.1009 + 0.8391 * mu)
    } else {
        let w = omega.omega();
        let zeta = 4.0 * (3.0 - w - mu) / (17.0 - 4.0 * w);
        (zeta, (3.0 - w) - (4.0 - w) * zeta)
    }
}

/// The ζ-dependent exponent terms of the subpath solver, in order:
/// hop-short, sampling, and the two monotone-product terms.
pub fn ssrp_terms(mu: f64, zeta: f64, theta: f64, omega: OmegaPreset) -> [f64; 4] {
    let w = omega.omega_rect(1.0 - zeta);
    [
        mu + zeta + w,
        3.0 - 2.0 * zeta,
        3.0 + mu - theta - zeta,
        0.25 * (9.0 - 3.0 * zeta + w + theta),
    ]
}

/// Exponent pair `(a, b)` with running time `M^a n^b` for small μ.
///
/// For non-tuned presets this is the closed form
/// `(5/(17−4ω), (36−7ω)/(17−4ω))`. For the tuned preset every term is
/// affine in μ along the schedule; the pair is the componentwise maximum
/// of slope and intercept over the terms that balance at μ = 0.
pub fn ssrp_exponent_pair(omega: OmegaPreset) -> (f64, f64) {
    if !omega.is_tuned() {
        let w = omega.omega();
        let d = 17.0 - 4.0 * w;
        return (5.0 / d, (36.0 - 7.0 * w) / d);
    }
    let h = 0.1;
    let at = |mu: f64| {
        let (z, t) = ssrp_params(mu, omega);
        ssrp_terms(mu, z, t, omega)
    };
    let (t0, t1) = (at(0.0), at(h));
    let mut a: f64 = 0.0;
    let mut b: f64 = 0.0;
    for idx in [0, 2, 3] {
        b = b.max(t0[idx]);
        a = a.max((t1[idx] - t0[idx]) / h);
    }
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn preset_parsing() {
        assert_eq!(OmegaPreset::parse("classical").unwrap().omega(), 3.0);
        assert!(OmegaPreset::parse("tuned-rectangular").unwrap().is_tuned());
        assert_eq!(OmegaPreset::parse("2.5").unwrap(), OmegaPreset::Custom(2.5));
        assert!(OmegaPreset::parse("1.5").is_err());
        assert!(OmegaPreset::parse("fast").is_err());
    }

    #[test]
    fn rectangular_bounds() {
        let c = OmegaPreset::Current;
        assert!(close(c.omega_rect(1.0), 2.3729, 1e-12));
        assert!(close(c.omega_rect(2.0), 3.3729, 1e-12));
        assert!(close(c.omega_rect(0.0), 2.0, 1e-12));
        let t = OmegaPreset::TunedRectangular;
        assert!(close(t.omega_rect(0.5965), 2.0922, 1e-12));
        // the table is convex: slopes never decrease
        let slopes: Vec<f64> = TUNED_RECT
            .windows(2)
            .map(|w| (w[1].1 - w[0].1) / (w[1].0 - w[0].0))
            .collect();
        assert!(slopes.windows(2).all(|s| s[0] <= s[1]), "{slopes:?}");
        assert!(*slopes.last().unwrap() <= 1.0);
        // never worse than square cuts
        for k in [0.2, 0.7, 1.1, 1.5, 2.5] {
            assert!(t.omega_rect(k) <= c.omega_rect(k) + 1e-12);
        }
    }

    #[test]
    fn delta_choices() {
        let w = 2.373;
        let d = choose_delta(1.0, (3.0 - w) / 5.0, OmegaPreset::Custom(w));
        assert!(close(d, (2.0 * w - 1.0) / 5.0, 1e-9), "{d}");
        assert!(close(choose_delta(1.0, 0.0, OmegaPreset::Classical), 1.0, 1e-9));
        let t = OmegaPreset::TunedRectangular;
        assert!(close(choose_delta(1.0, 0.1348, t), 0.7305, 5e-4));
        assert!(close(choose_delta(1.0, 0.0754, t), 0.6984, 5e-4));
        // rectangular branch is clamped to [0, β]
        assert_eq!(choose_delta(0.5, 0.0, OmegaPreset::Custom(2.0)), 0.25);
        assert_eq!(choose_delta(0.1, 3.0, OmegaPreset::Classical), 0.1);
    }

    #[test]
    fn monotone_schedules() {
        let s = default_params(1.0, 1.0, OmegaPreset::Classical);
        assert_eq!(s.theta, 0.0);
        assert!(close(s.exponent, 3.0, 1e-9));
        let s = default_params(1.0, 1.0, OmegaPreset::Custom(2.0));
        assert!(close(s.theta, 0.2, 1e-12));
        assert!(close(s.exponent, 2.8, 1e-9));
        let w = 2.3729;
        let s = default_params(1.0, 1.0, OmegaPreset::Current);
        assert!(close(s.exponent, (12.0 + w) / 5.0, 1e-9));
        let s = default_params(1.0, 1.0, OmegaPreset::TunedRectangular);
        assert_eq!((s.theta, s.delta), (0.1348, 0.7305));
        assert!(close(s.exponent, 2.8653, 5e-4));
        // the general (β, η) branch coincides with the square one at β=η=1
        for w in [2.0, 2.3729, 2.8, 3.0] {
            let p = OmegaPreset::Custom(w);
            let g = default_params(1.0, 1.0, p);
            let theta = (4.0 + 1.0 - 2.0 - p.omega_rect(1.0)) / 5.0;
            assert!(close(g.theta, theta.max(0.0), 1e-12));
            assert!(close(g.exponent, monotone_exponent(1.0, 1.0, g.theta, p), 1e-9));
        }
        let s = default_params(0.5, 0.5, OmegaPreset::Current);
        assert!(s.theta >= 0.0 && s.theta <= 0.5 && s.rho >= 0.0);
    }

    #[test]
    fn range_mode_schedules() {
        let b = batch_default_params(OmegaPreset::TunedRectangular);
        assert!(close(b.exponent, 1.4805, 5e-4), "{}", b.exponent);
        let w = 2.3729;
        let b = batch_default_params(OmegaPreset::Current);
        assert!(close(b.exponent, (21.0 + 2.0 * w) / (15.0 + w), 1e-9));

        let d = drm_default_params(OmegaPreset::Classical);
        assert!(close(d.t1, 2.0 / 3.0, 1e-12) && close(d.t2, 2.0 / 3.0, 1e-12));
        assert_eq!((d.theta, d.rho, d.sigma), (0.0, 0.0, 2.0));
        let c = dynamic_cost(&drm_default_params(OmegaPreset::Current), OmegaPreset::Current);
        assert!(close(c.per_op, (w + 9.0) / (w + 15.0), 1e-9));
        assert!(close(c.space, (3.0 * w + 39.0) / (2.0 * w + 30.0), 1e-9));
        let t = OmegaPreset::TunedRectangular;
        let c = dynamic_cost(&drm_default_params(t), t);
        assert!(close(c.per_op, 0.6524, 5e-4), "{c:?}");
        assert!(close(c.space, 1.3262, 5e-4));
    }

    #[test]
    fn ssrp_schedules() {
        let (a, b) = ssrp_exponent_pair(OmegaPreset::Custom(2.0));
        assert!(close(a, 5.0 / 9.0, 1e-12) && close(b, 22.0 / 9.0, 1e-12));
        let (a, b) = ssrp_exponent_pair(OmegaPreset::TunedRectangular);
        assert!(close(a, 0.8043, 5e-4) && close(b, 2.4957, 5e-4), "{a} {b}");
        // ω-form schedule balances the terms exactly
        let p = OmegaPreset::Current;
        let (z, t) = ssrp_params(0.1, p);
        let terms = ssrp_terms(0.1, z, t, p);
        let (a, b) = ssrp_exponent_pair(p);
        assert!(close(terms[0], a * 0.1 + b, 1e-9), "{terms:?}");
        assert!(close(terms[2], terms[0], 1e-9));
    }
}
