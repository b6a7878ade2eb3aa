//! A planar radial flow on the closed unit disk, its adaptive integrator,
//! and the time-one maps built from it.
//!
//! The flow is radial-plus-rotational in polar coordinates:
//!
//! ```text
//! r' = r^2 * phi(r)          theta' = 2 r^3 * phi(r) / (1 - r^2)^2
//! ```
//!
//! where `phi(r) = exp(-1/(1 - r^2))` is a bump factor that vanishes to all
//! orders at `r = 1`. Every interior non-center point spirals outward toward
//! the unit circle while winding infinitely; the center and the circle are
//! equilibria. The angular speed is engineered so that along any trajectory
//! `theta(t) - theta(0) = 1/(1 - r(t)^2) - 1/(1 - r(0)^2)` exactly, which
//! gives an integration-free cross-check ([`theta_from_radius`]).
//!
//! In `f64`, `phi` underflows to exactly 0 once `1/(1 - r^2)` exceeds the
//! exponent range, so points at and very near the boundary are equilibria
//! bit-for-bit; this makes circle fixity exact by construction rather than
//! approximate.

use crate::error::{Error, Result};

/// Bump factor `exp(-1/(1 - r^2))` on `[0, 1]`, exactly 0 at `r = 1` and
/// whenever the exponent underflows.
pub fn phi_bump(r: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::Domain(format!(
            "phi_bump argument {r} outside [0,1]"
        )));
    }
    if r >= 1.0 {
        return Ok(0.0);
    }
    Ok((-1.0 / (1.0 - r * r)).exp())
}

/// Right-hand side of the polar system at radius `r` (clamped into `[0,1]`):
/// `(dr/dt, dtheta/dt)`. Both components are exactly 0 at the center, at the
/// boundary, and in the underflow zone near the boundary.
fn radial_field(r: f64) -> (f64, f64) {
    let rc = r.clamp(0.0, 1.0);
    if rc >= 1.0 {
        return (0.0, 0.0);
    }
    let one_m = 1.0 - rc * rc;
    let phi = (-1.0 / one_m).exp();
    if phi == 0.0 {
        return (0.0, 0.0);
    }
    let dr = rc * rc * phi;
    let dtheta = 2.0 * rc * rc * rc * phi / (one_m * one_m);
    (dr, dtheta)
}

/// Point of the flow in polar coordinates, plus the clock.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RadialState {
    pub r: f64,
    pub theta: f64,
    pub t: f64,
}

impl RadialState {
    pub fn new(r: f64, theta: f64, t: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&r) {
            return Err(Error::Domain(format!("radius {r} outside [0,1]")));
        }
        if !theta.is_finite() || !t.is_finite() {
            return Err(Error::Domain("non-finite angle or time".into()));
        }
        Ok(RadialState { r, theta, t })
    }
}

/// Derivatives of the flow at a state. Errors outside the closed disk.
pub fn radial_derivatives(s: &RadialState) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&s.r) {
        return Err(Error::Domain(format!("radius {} outside [0,1]", s.r)));
    }
    Ok(radial_field(s.r))
}

/// Exact angular displacement along a trajectory from radius `r0` to `r1`,
/// from the first integral `theta + C = 1/(1 - r^2)`.
///
/// Requires `0 < r0 <= r1 < 1` (the flow never decreases the radius).
pub fn theta_from_radius(r0: f64, r1: f64) -> Result<f64> {
    if !(r0 > 0.0 && r0 <= r1 && r1 < 1.0) {
        return Err(Error::Domain(format!(
            "theta_from_radius needs 0 < r0 <= r1 < 1, got r0={r0}, r1={r1}"
        )));
    }
    Ok(1.0 / (1.0 - r1 * r1) - 1.0 / (1.0 - r0 * r0))
}

/// Tolerances and step bounds for the adaptive integrator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegratorConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_step: f64,
    pub min_step: f64,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            rel_tol: 1e-10,
            abs_tol: 1e-10,
            max_step: 0.1,
            min_step: 1e-14,
        }
    }
}

impl IntegratorConfig {
    /// Configuration for horizons far beyond machine step counts: the step
    /// is allowed to grow without bound (the dynamics slows enough that the
    /// error control keeps accepting).
    pub fn long_horizon() -> Self {
        IntegratorConfig {
            max_step: f64::INFINITY,
            ..IntegratorConfig::default()
        }
    }

    fn validate(&self) -> Result<()> {
        let ok = self.rel_tol > 0.0
            && self.abs_tol > 0.0
            && self.max_step > 0.0
            && self.min_step > 0.0
            && self.min_step <= self.max_step;
        if ok {
            Ok(())
        } else {
            Err(Error::Invalid(format!("bad integrator config: {self:?}")))
        }
    }
}

// Dormand-Prince 5(4) coefficients. Stage times are omitted: the fields
// integrated here are autonomous.
const A: [[f64; 6]; 7] = [
    [0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

const MAX_STEPS: u64 = 5_000_000;

/// Embedded Dormand-Prince 5(4) with PI-free step control. Integrates the
/// autonomous field `f` for `duration >= 0` and reports every accepted state
/// through `on_accept(t_local, y)`.
fn dopri5<const N: usize, F, G>(
    f: F,
    y0: [f64; N],
    duration: f64,
    cfg: &IntegratorConfig,
    mut on_accept: G,
) -> Result<[f64; N]>
where
    F: Fn(&[f64; N]) -> [f64; N],
    G: FnMut(f64, &[f64; N]),
{
    cfg.validate()?;
    if !(duration >= 0.0) {
        return Err(Error::Domain(format!("duration {duration} must be >= 0")));
    }
    let mut t = 0.0f64;
    let mut y = y0;
    let mut h = cfg.max_step.min(duration).min(1e-2);
    let floor = cfg.min_step.min(duration);
    let mut steps: u64 = 0;

    let fail = |t: f64, step: f64, y: &[f64; N]| Error::Integration {
        t,
        step,
        r: y[0],
        theta: if N > 1 { y[1] } else { 0.0 },
    };

    while t < duration {
        let remaining = duration - t;
        // Within representability of the clock: done.
        if remaining <= t.abs() * f64::EPSILON {
            break;
        }
        h = h.min(remaining);
        if h < floor {
            return Err(fail(t, h, &y));
        }
        if t + h == t {
            return Err(fail(t, h, &y));
        }
        steps += 1;
        if steps > MAX_STEPS {
            return Err(fail(t, h, &y));
        }

        let mut k = [[0.0f64; N]; 7];
        k[0] = f(&y);
        for stage in 1..7 {
            let mut ys = y;
            for (j, kj) in k.iter().enumerate().take(stage) {
                let a = A[stage][j];
                if a != 0.0 {
                    for i in 0..N {
                        ys[i] += h * a * kj[i];
                    }
                }
            }
            k[stage] = f(&ys);
        }

        let mut y5 = y;
        let mut y4 = y;
        for (j, kj) in k.iter().enumerate() {
            for i in 0..N {
                y5[i] += h * B5[j] * kj[i];
                y4[i] += h * B4[j] * kj[i];
            }
        }

        let mut err_sq = 0.0f64;
        for i in 0..N {
            let sc = cfg.abs_tol + cfg.rel_tol * y[i].abs().max(y5[i].abs());
            let e = (y5[i] - y4[i]) / sc;
            err_sq += e * e;
        }
        let err = (err_sq / N as f64).sqrt();

        if err <= 1.0 {
            t += h;
            y = y5;
            on_accept(t, &y);
            let fac = if err == 0.0 {
                10.0
            } else {
                (0.9 * err.powf(-0.2)).clamp(0.2, 10.0)
            };
            h = (h * fac).min(cfg.max_step);
        } else {
            h *= (0.9 * err.powf(-0.2)).max(0.2);
            if h < cfg.min_step {
                return Err(fail(t, h, &y));
            }
        }
    }
    Ok(y)
}

/// Flow the state forward for `duration` time units. Equilibria (center,
/// boundary, underflow zone) are returned unchanged apart from the clock.
pub fn flow(s0: &RadialState, duration: f64, cfg: &IntegratorConfig) -> Result<RadialState> {
    if !(duration >= 0.0) || !duration.is_finite() {
        return Err(Error::Domain(format!(
            "duration {duration} must be finite and >= 0"
        )));
    }
    if !(0.0..=1.0).contains(&s0.r) {
        return Err(Error::Domain(format!("radius {} outside [0,1]", s0.r)));
    }
    let (dr, dth) = radial_field(s0.r);
    if dr == 0.0 && dth == 0.0 {
        return Ok(RadialState {
            t: s0.t + duration,
            ..*s0
        });
    }
    let y = dopri5(
        |y: &[f64; 2]| {
            let (dr, dth) = radial_field(y[0]);
            [dr, dth]
        },
        [s0.r, s0.theta],
        duration,
        cfg,
        |_, _| {},
    )?;
    Ok(RadialState {
        r: y[0].min(1.0),
        theta: y[1],
        t: s0.t + duration,
    })
}

/// Integrate only the radial equation over a (possibly astronomically long)
/// horizon, recovering angles through the first integral. Returns the list
/// of accepted states starting with `s0`; the step count stays small because
/// the step size is free to grow as the dynamics slows.
pub fn radial_long_horizon(
    s0: &RadialState,
    total: f64,
    cfg: &IntegratorConfig,
) -> Result<Vec<RadialState>> {
    if !(total >= 0.0) {
        return Err(Error::Domain(format!("horizon {total} must be >= 0")));
    }
    if !(0.0..=1.0).contains(&s0.r) {
        return Err(Error::Domain(format!("radius {} outside [0,1]", s0.r)));
    }
    let (dr, _) = radial_field(s0.r);
    if dr == 0.0 {
        return Ok(vec![
            *s0,
            RadialState {
                t: s0.t + total,
                ..*s0
            },
        ]);
    }
    let v0 = 1.0 / (1.0 - s0.r * s0.r);
    let mut states = vec![*s0];
    dopri5(
        |y: &[f64; 1]| [radial_field(y[0]).0],
        [s0.r],
        total,
        cfg,
        |t_local, y| {
            let r = y[0].min(1.0);
            let theta = s0.theta + (1.0 / (1.0 - r * r) - v0);
            states.push(RadialState {
                r,
                theta,
                t: s0.t + t_local,
            });
        },
    )?;
    Ok(states)
}

/// Time-one map of the flow in Cartesian coordinates on the closed disk.
/// The center, the boundary circle, and the underflow zone are fixed
/// bit-for-bit (the input is returned unchanged).
pub fn disk_time_one(x: f64, y: f64, cfg: &IntegratorConfig) -> Result<[f64; 2]> {
    let r = x.hypot(y);
    if r > 1.0 + 1e-12 {
        return Err(Error::Domain(format!(
            "point ({x}, {y}) outside the closed disk"
        )));
    }
    let rc = r.min(1.0);
    let (dr, dth) = radial_field(rc);
    if dr == 0.0 && dth == 0.0 {
        return Ok([x, y]);
    }
    let s0 = RadialState {
        r: rc,
        theta: y.atan2(x),
        t: 0.0,
    };
    let s1 = flow(&s0, 1.0, cfg)?;
    Ok([s1.r * s1.theta.cos(), s1.r * s1.theta.sin()])
}

/// Time-one map of the repeatedly suspended flow on the closed unit ball.
///
/// Dimension 2 is the disk map itself; dimension `n+1` maps
/// `(x, c) |-> (sqrt(1-c^2) * f_n(x / sqrt(1-c^2)), c)`, fixing the poles.
/// Whenever the lower-dimensional factor returns its input unchanged, the
/// suspended map does too, so sphere fixity is preserved exactly up the
/// tower.
#[derive(Clone, Debug, PartialEq)]
pub struct BallMap {
    dimension: usize,
    cfg: IntegratorConfig,
}

impl BallMap {
    pub fn new(dimension: usize, cfg: IntegratorConfig) -> Result<Self> {
        if dimension < 2 {
            return Err(Error::Invalid(format!(
                "ball map needs dimension >= 2, got {dimension}"
            )));
        }
        Ok(BallMap { dimension, cfg })
    }

    /// The disk base of the suspension tower.
    pub fn disk(cfg: IntegratorConfig) -> Self {
        BallMap { dimension: 2, cfg }
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn eval(&self, coords: &[f64]) -> Result<Vec<f64>> {
        if coords.len() != self.dimension {
            return Err(Error::SpaceMismatch(format!(
                "ball({}) point needs {} coordinates, got {}",
                self.dimension,
                self.dimension,
                coords.len()
            )));
        }
        let norm = coords.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm > 1.0 + 1e-12 {
            return Err(Error::Domain(format!("norm {norm} exceeds 1")));
        }
        self.eval_inner(coords)
    }

    fn eval_inner(&self, coords: &[f64]) -> Result<Vec<f64>> {
        if coords.len() == 2 {
            let [x, y] = disk_time_one(coords[0], coords[1], &self.cfg)?;
            return Ok(vec![x, y]);
        }
        let c = *coords.last().expect("dimension >= 2");
        if c.abs() >= 1.0 {
            // Pole: returned unchanged.
            return Ok(coords.to_vec());
        }
        let s = (1.0 - c * c).sqrt();
        let u: Vec<f64> = coords[..coords.len() - 1].iter().map(|x| x / s).collect();
        let lower = BallMap {
            dimension: self.dimension - 1,
            cfg: self.cfg,
        };
        let v = lower.eval_inner(&u)?;
        if v == u {
            // The slice factor did not move: preserve the input bits.
            return Ok(coords.to_vec());
        }
        let mut out: Vec<f64> = v.into_iter().map(|x| s * x).collect();
        out.push(c);
        Ok(out)
    }
}

/// Suspend a ball map one dimension up.
pub fn ball_suspend(f: &BallMap) -> BallMap {
    BallMap {
        dimension: f.dimension + 1,
        cfg: f.cfg,
    }
}

/// The disk time-one map transplanted into a round disk `V` inside the unit
/// square and extended by the identity outside `V`. Points with
/// `|p - center| >= radius` are returned unchanged bit-for-bit, and the
/// vanishing of the flow near the chart boundary makes the glue seamless.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareExtension {
    center: [f64; 2],
    radius: f64,
    cfg: IntegratorConfig,
}

/// Build the extension, checking that `V` fits inside the unit square.
pub fn extend_by_identity(
    center: [f64; 2],
    radius: f64,
    cfg: IntegratorConfig,
) -> Result<SquareExtension> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::Invalid(format!("radius {radius} must be positive")));
    }
    let fits = center.iter().all(|c| c.is_finite())
        && center[0] - radius >= 0.0
        && center[0] + radius <= 1.0
        && center[1] - radius >= 0.0
        && center[1] + radius <= 1.0;
    if !fits {
        return Err(Error::Invalid(format!(
            "disk at ({}, {}) with radius {radius} does not fit in the unit square",
            center[0], center[1]
        )));
    }
    Ok(SquareExtension {
        center,
        radius,
        cfg,
    })
}

impl SquareExtension {
    pub fn center(&self) -> [f64; 2] {
        self.center
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn eval(&self, p: [f64; 2]) -> Result<[f64; 2]> {
        if p.iter().any(|c| !(0.0..=1.0).contains(c)) {
            return Err(Error::Domain(format!(
                "point ({}, {}) outside the unit square",
                p[0], p[1]
            )));
        }
        let dx = p[0] - self.center[0];
        let dy = p[1] - self.center[1];
        if dx.hypot(dy) >= self.radius {
            return Ok(p);
        }
        let u = [dx / self.radius, dy / self.radius];
        let v = disk_time_one(u[0], u[1], &self.cfg)?;
        if v == u {
            return Ok(p);
        }
        Ok([
            (self.center[0] + self.radius * v[0]).clamp(0.0, 1.0),
            (self.center[1] + self.radius * v[1]).clamp(0.0, 1.0),
        ])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    // Fixed-step RK4 reference at h = 1e-5, higher order than any rounding
    // the adaptive path commits; disagreements beyond 1e-9 mean a bug.
    const ORACLE_R_T1: f64 = 0.5702365794163103;
    const ORACLE_THETA_T1: f64 = 0.14852082130568225;

    fn rk4_reference(r0: f64, theta0: f64, duration: f64, h: f64) -> (f64, f64) {
        let n = (duration / h).round() as u64;
        let f = |y: [f64; 2]| {
            let (dr, dth) = radial_field(y[0]);
            [dr, dth]
        };
        let mut y = [r0, theta0];
        for _ in 0..n {
            let k1 = f(y);
            let k2 = f([y[0] + 0.5 * h * k1[0], y[1] + 0.5 * h * k1[1]]);
            let k3 = f([y[0] + 0.5 * h * k2[0], y[1] + 0.5 * h * k2[1]]);
            let k4 = f([y[0] + h * k3[0], y[1] + h * k3[1]]);
            y[0] += h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]);
            y[1] += h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]);
        }
        (y[0], y[1])
    }

    #[test]
    fn bump_values_and_domain() {
        assert_relative_eq!(phi_bump(0.0).unwrap(), 0.36787944117144233);
        assert_relative_eq!(phi_bump(0.5).unwrap(), 0.26359713811572677);
        assert_eq!(phi_bump(1.0).unwrap(), 0.0);
        // Exponent underflow: exactly zero well before r reaches 1.
        assert_eq!(phi_bump(1.0 - 1e-12).unwrap(), 0.0);
        assert_eq!(phi_bump(0.9995).unwrap(), 0.0);
        assert!(phi_bump(-0.1).is_err());
        assert!(phi_bump(1.1).is_err());
    }

    #[test]
    fn bump_monotone_decreasing() {
        let mut prev = phi_bump(0.0).unwrap();
        for i in 1..=100 {
            let r = i as f64 / 100.0;
            let cur = phi_bump(r).unwrap();
            assert!(cur <= prev, "phi must not increase at r={r}");
            prev = cur;
        }
    }

    #[test]
    fn derivative_values_at_half() {
        let s = RadialState::new(0.5, 0.0, 0.0).unwrap();
        let (dr, dth) = radial_derivatives(&s).unwrap();
        assert_relative_eq!(dr, 0.06589928452893169, max_relative = 1e-14);
        assert_relative_eq!(dth, 0.11715428360698968, max_relative = 1e-14);
    }

    #[test]
    fn equilibria_have_zero_derivatives() {
        for r in [0.0, 0.9995, 1.0] {
            let s = RadialState::new(r, 1.0, 0.0).unwrap();
            assert_eq!(radial_derivatives(&s).unwrap(), (0.0, 0.0), "at r={r}");
        }
    }

    #[test]
    fn flow_matches_reference_solver() {
        let s0 = RadialState::new(0.5, 0.0, 0.0).unwrap();
        let s1 = flow(&s0, 1.0, &IntegratorConfig::default()).unwrap();
        let (rr, rt) = rk4_reference(0.5, 0.0, 1.0, 1e-5);
        assert_relative_eq!(rr, ORACLE_R_T1, max_relative = 1e-12);
        assert_relative_eq!(rt, ORACLE_THETA_T1, max_relative = 1e-12);
        assert!((s1.r - ORACLE_R_T1).abs() < 1e-9, "r = {}", s1.r);
        assert!(
            (s1.theta - ORACLE_THETA_T1).abs() < 1e-9,
            "theta = {}",
            s1.theta
        );
        assert!(s1.r > 0.55 && s1.r < 0.60);
        assert_eq!(s1.t, 1.0);
    }

    #[test]
    fn flow_is_additive_in_time() {
        let cfg = IntegratorConfig::default();
        let s0 = RadialState::new(0.3, 0.7, 0.0).unwrap();
        let once = flow(&s0, 2.0, &cfg).unwrap();
        let twice = flow(&flow(&s0, 1.0, &cfg).unwrap(), 1.0, &cfg).unwrap();
        assert_relative_eq!(once.r, twice.r, epsilon = 1e-9);
        assert_relative_eq!(once.theta, twice.theta, epsilon = 1e-9);
    }

    #[test]
    fn equilibria_are_fixed_through_flow() {
        let cfg = IntegratorConfig::default();
        for r in [0.0, 0.9995, 1.0] {
            let s0 = RadialState::new(r, 2.0, 0.0).unwrap();
            let s1 = flow(&s0, 1.0, &cfg).unwrap();
            assert_eq!((s1.r, s1.theta), (r, 2.0), "equilibrium at r={r} moved");
        }
    }

    #[test]
    fn angle_tracks_first_integral() {
        let cfg = IntegratorConfig::default();
        let s0 = RadialState::new(0.5, 0.25, 0.0).unwrap();
        let s1 = flow(&s0, 5.0, &cfg).unwrap();
        let predicted = theta_from_radius(s0.r, s1.r).unwrap();
        assert_relative_eq!(s1.theta - s0.theta, predicted, epsilon = 1e-8);
    }

    #[test]
    fn theta_from_radius_contract() {
        assert_eq!(theta_from_radius(0.5, 0.5).unwrap(), 0.0);
        assert_relative_eq!(
            theta_from_radius(0.5, 0.99).unwrap(),
            50.25125628140696 - 4.0 / 3.0,
            max_relative = 1e-13
        );
        assert!(theta_from_radius(0.0, 0.5).is_err());
        assert!(theta_from_radius(0.5, 1.0).is_err());
        assert!(theta_from_radius(0.6, 0.5).is_err());
    }

    #[test]
    fn radius_strictly_increases_in_the_interior() {
        let cfg = IntegratorConfig::default();
        for i in 1..=98 {
            let r = i as f64 / 100.0;
            let s1 = flow(&RadialState::new(r, 0.0, 0.0).unwrap(), 1.0, &cfg).unwrap();
            assert!(s1.r > r, "radius did not grow from {r}");
            assert!(s1.r < 1.0);
        }
    }

    #[test]
    fn long_horizon_reaches_the_boundary_zone() {
        let s0 = RadialState::new(0.5, 0.0, 0.0).unwrap();
        let states = radial_long_horizon(&s0, 1e100, &IntegratorConfig::long_horizon()).unwrap();
        let last = states.last().unwrap();
        assert!(last.r >= 0.99, "final radius {} too small", last.r);
        assert!(last.r < 1.0);
        assert!(states.len() < 5000, "took {} states", states.len());
        // Angular span across the tail beyond 0.99 exceeds twenty turns.
        let span = theta_from_radius(0.99, last.r).unwrap();
        assert!(span >= 40.0 * std::f64::consts::PI, "span {span}");
        // Radii never decrease along the recorded trajectory.
        for w in states.windows(2) {
            assert!(w[1].r >= w[0].r);
            assert!(w[1].t > w[0].t);
        }
    }

    #[test]
    fn long_horizon_from_equilibrium_is_static() {
        let s0 = RadialState::new(0.0, 0.0, 0.0).unwrap();
        let states = radial_long_horizon(&s0, 1e20, &IntegratorConfig::long_horizon()).unwrap();
        assert!(states.iter().all(|s| s.r == 0.0));
    }

    #[test]
    fn integration_fails_cleanly_when_floor_unreachable() {
        let cfg = IntegratorConfig {
            min_step: 0.5,
            max_step: 1.0,
            ..IntegratorConfig::default()
        };
        let s0 = RadialState::new(0.5, 0.0, 0.0).unwrap();
        match flow(&s0, 1.0, &cfg) {
            Err(Error::Integration { t, .. }) => assert_eq!(t, 0.0),
            other => panic!("expected integration failure, got {other:?}"),
        }
    }

    #[test]
    fn disk_time_one_fixes_center_and_circle_bitwise() {
        let cfg = IntegratorConfig::default();
        assert_eq!(disk_time_one(0.0, 0.0, &cfg).unwrap(), [0.0, 0.0]);
        for i in 0..32 {
            let a = i as f64 * std::f64::consts::TAU / 32.0;
            let (x, y) = (a.cos(), a.sin());
            assert_eq!(
                disk_time_one(x, y, &cfg).unwrap(),
                [x, y],
                "circle point {i} moved"
            );
        }
        // Underflow zone just inside the circle: also exactly fixed.
        assert_eq!(disk_time_one(0.9995, 0.0, &cfg).unwrap(), [0.9995, 0.0]);
    }

    #[test]
    fn disk_time_one_matches_polar_oracle() {
        let cfg = IntegratorConfig::default();
        let [x, y] = disk_time_one(0.5, 0.0, &cfg).unwrap();
        assert_relative_eq!(x, ORACLE_R_T1 * ORACLE_THETA_T1.cos(), epsilon = 1e-9);
        assert_relative_eq!(y, ORACLE_R_T1 * ORACLE_THETA_T1.sin(), epsilon = 1e-9);
        assert!(disk_time_one(1.2, 0.0, &cfg).is_err());
    }

    #[test]
    fn ball_map_fixes_poles_and_sphere() {
        let cfg = IntegratorConfig::default();
        let b3 = BallMap::new(3, cfg).unwrap();
        for pole in [[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]] {
            assert_eq!(b3.eval(&pole).unwrap(), pole.to_vec());
        }
        for i in 0..16 {
            let a = i as f64 * std::f64::consts::TAU / 16.0;
            for c in [0.0f64, 0.5, -0.75] {
                let s = (1.0 - c * c).sqrt();
                let p = vec![s * a.cos(), s * a.sin(), c];
                assert_eq!(
                    b3.eval(&p).unwrap(),
                    p,
                    "sphere point moved: angle {i}, c {c}"
                );
            }
        }
    }

    #[test]
    fn ball_map_dimension_contracts() {
        let cfg = IntegratorConfig::default();
        assert!(BallMap::new(1, cfg).is_err());
        let b3 = BallMap::new(3, cfg).unwrap();
        assert_eq!(b3.dimension(), 3);
        assert!(b3.eval(&[0.1, 0.2]).is_err());
        assert!(b3.eval(&[0.9, 0.9, 0.9]).is_err());
        let b4 = ball_suspend(&b3);
        assert_eq!(b4.dimension(), 4);
    }

    #[test]
    fn suspension_acts_as_disk_map_on_the_equatorial_slice() {
        let cfg = IntegratorConfig::default();
        let b2 = BallMap::disk(cfg);
        let b3 = ball_suspend(&b2);
        let disk_image = b2.eval(&[0.3, 0.4]).unwrap();
        let slice_image = b3.eval(&[0.3, 0.4, 0.0]).unwrap();
        assert_eq!(slice_image[0], disk_image[0]);
        assert_eq!(slice_image[1], disk_image[1]);
        assert_eq!(slice_image[2], 0.0);
    }

    #[test]
    fn suspension_conjugates_scaled_slices() {
        let cfg = IntegratorConfig::default();
        let b2 = BallMap::disk(cfg);
        let b3 = ball_suspend(&b2);
        let c = 0.5f64;
        let s = (1.0 - c * c).sqrt();
        let u = [0.3, -0.2];
        let got = b3.eval(&[s * u[0], s * u[1], c]).unwrap();
        let want = b2.eval(&u).unwrap();
        assert_relative_eq!(got[0], s * want[0], epsilon = 1e-9);
        assert_relative_eq!(got[1], s * want[1], epsilon = 1e-9);
        assert_eq!(got[2], c);
    }

    #[test]
    fn square_extension_is_identity_outside_the_chart() {
        let cfg = IntegratorConfig::default();
        let e = extend_by_identity([0.5, 0.5], 0.4, cfg).unwrap();
        let outside = [
            [0.0, 0.0],
            [1.0, 1.0],
            [0.05, 0.5],
            [0.5, 0.95],
            [0.9, 0.5],
            [0.5, 0.1], // on the chart boundary up to rounding
        ];
        for p in outside {
            assert_eq!(e.eval(p).unwrap(), p, "outside point {p:?} moved");
        }
        assert!(e.eval([1.2, 0.5]).is_err());
    }

    #[test]
    fn square_extension_conjugates_the_disk_map() {
        let cfg = IntegratorConfig::default();
        let e = extend_by_identity([0.5, 0.5], 0.4, cfg).unwrap();
        let u = [0.25, -0.125];
        let p = [0.5 + 0.4 * u[0], 0.5 + 0.4 * u[1]];
        let got = e.eval(p).unwrap();
        let v = disk_time_one(u[0], u[1], &cfg).unwrap();
        assert_relative_eq!(got[0], 0.5 + 0.4 * v[0], epsilon = 1e-12);
        assert_relative_eq!(got[1], 0.5 + 0.4 * v[1], epsilon = 1e-12);
    }

    #[test]
    fn square_extension_rejects_oversized_charts() {
        let cfg = IntegratorConfig::default();
        assert!(extend_by_identity([0.5, 0.5], 0.6, cfg).is_err());
        assert!(extend_by_identity([0.2, 0.5], 0.3, cfg).is_err());
        assert!(extend_by_identity([0.5, 0.5], 0.0, cfg).is_err());
    }
}
