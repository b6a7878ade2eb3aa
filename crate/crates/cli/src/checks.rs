//! The named checks a scenario can request. Each check returns a verdict and,
//! on failure, a witness string; hard errors (missing stages, domain errors)
//! are failures with the error as witness, never silent passes.
//!
//! Every tolerance and sample count is pinned here as a named constant.

use std::f64::consts::{PI, TAU};

use anyhow::Result;
use num_integer::lcm;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use omega_lab_core::{
    arc_tip, dendrite_anchor, dendrite_embed, detect_periodic, dist, hausdorff, level_of,
    omega_estimate, radial_long_horizon, sharkovsky_check, theta_from_radius, Classification,
    DendritePoint, DynamicalMap, EuclidPoint, HausdorffTarget, IntegratorConfig, Point,
    RadialState, SpaceTag,
};

use crate::runner::StageOutputs;
use crate::scenario::{CheckSpec, ScenarioConfig};

/// Tip levels whose anchors already sample the baseline densely.
const DENDRITE_LEVEL_LO: u32 = 10;
const DENDRITE_LEVEL_HI: u32 = 12;
/// Hausdorff bound between those tips and the baseline segment.
const DENDRITE_HAUSDORFF_BOUND: f64 = 0.15;
/// Discretization of the baseline segment for the Hausdorff bound.
const DENDRITE_SEGMENT_SAMPLING: usize = 8192;
/// Orbit lengths whose tail nets must strictly grow.
const DENDRITE_GROWTH_LENS: [usize; 3] = [1023, 2047, 4095];
const DENDRITE_GROWTH_BURN_IN: usize = 511;

/// Horizon far beyond any fixed-step budget.
const DISK_HORIZON: f64 = 1e100;
/// Radius the trajectory must reach within the horizon.
const DISK_R_FLOOR: f64 = 0.99;
/// Angular span the trajectory must wind beyond that radius.
const DISK_SPAN_MIN: f64 = 40.0 * PI;
/// Angular trace resolution for the gap bound.
const DISK_GAP_SAMPLES: usize = 8192;
/// Largest allowed angular gap (radians) in the traced annulus.
const DISK_GAP_MAX: f64 = 0.1;

/// Sample count along each boundary circle.
const BOUNDARY_SAMPLES: usize = 64;

const MONOTONE_STARTS: usize = 100;
const MONOTONE_SEED: u64 = 0xD15C_0001;
/// Random starts live in this radius range. Above ~0.95 the radial increment
/// approaches the underflow zone where the map is exactly the identity, so
/// strict growth is only a representable claim below it.
const MONOTONE_R_LO: f64 = 0.05;
const MONOTONE_R_HI: f64 = 0.95;

/// Allowed drift between the integrated angle and the closed form, per unit
/// of flowed time.
const THETA_DRIFT_PER_UNIT: f64 = 1e-6;
const THETA_MAX_STEPS: usize = 400;
const THETA_STOP_R: f64 = 0.95;

const SQUARE_HORIZON: f64 = 1e15;
/// Chart radius beyond which the trajectory tail is inspected.
const SQUARE_TAIL_RADIUS: f64 = 0.983;
/// The tail must sit within this distance of the chart boundary.
const SQUARE_BAND: f64 = 0.05;
/// Largest move the extension may apply to a tail point.
const SQUARE_FIX_TOL: f64 = 1e-9;
/// Depths (distance inside the chart boundary) for the rim sweep.
const SQUARE_SWEEP_DEPTHS: [f64; 3] = [1e-2, 1e-3, 1e-4];
/// Rim displacement at the innermost sweep depth must vanish to this level.
const SQUARE_RIM_VANISH: f64 = 1e-12;
const SQUARE_RING_ANGLES: usize = 16;
const SQUARE_MIN_TAIL: usize = 10;

type Outcome = (bool, Option<String>);

fn fail(msg: impl Into<String>) -> Result<Outcome> {
    Ok((false, Some(msg.into())))
}

fn pass() -> Result<Outcome> {
    Ok((true, None))
}

fn stage_missing(st: &StageOutputs) -> Result<Outcome> {
    match &st.error {
        Some(e) => fail(format!("pipeline stage unavailable: {e}")),
        None => fail("pipeline stage unavailable"),
    }
}

/// Run one check against the pipeline outputs. Errors become failures.
pub fn run_check(spec: &CheckSpec, cfg: &ScenarioConfig, st: &StageOutputs) -> Outcome {
    let res = match spec {
        CheckSpec::Thm12 => check_thm12(st),
        CheckSpec::Cor13 { n } => check_cor13(*n, cfg, st),
        CheckSpec::Lemma23 => check_lemma23(st),
        CheckSpec::DendriteCounterexample => check_dendrite_counterexample(cfg, st),
        CheckSpec::DiskCoverage => check_disk_coverage(cfg, st),
        CheckSpec::Prop18 => check_prop18(cfg, st),
        CheckSpec::CantorNegative => check_cantor_negative(cfg, st),
        CheckSpec::S1Fixed => check_s1_fixed(st),
        CheckSpec::MonotoneR => check_monotone_r(st),
        CheckSpec::ThetaRelation => check_theta_relation(cfg, st),
        CheckSpec::SquareExtension => check_square_extension(cfg, st),
    };
    match res {
        Ok(outcome) => outcome,
        Err(e) => (false, Some(format!("check error: {e:#}"))),
    }
}

/// The induced map on components is well defined and permutes them in one
/// cycle whose length is the component count.
fn check_thm12(st: &StageOutputs) -> Result<Outcome> {
    let (Some(part), Some(ind), Some(cyc)) = (&st.partition, &st.induced, &st.cycle) else {
        return stage_missing(st);
    };
    if !ind.well_defined {
        let s = &ind.straddles[0];
        return fail(format!(
            "induced map not well defined: component {} sends member {} into component {}",
            s.source_component, s.point_index, s.image_component
        ));
    }
    if !cyc.is_single_cycle {
        return fail(
            cyc.witness
                .clone()
                .unwrap_or_else(|| "components do not form a single cycle".into()),
        );
    }
    if cyc.cycle_length != Some(part.count) {
        return fail(format!(
            "cycle length {:?} does not equal the component count {}",
            cyc.cycle_length, part.count
        ));
    }
    pass()
}

/// Every net point is fixed by the n-th iterate, and the component count
/// divides n.
fn check_cor13(n: u64, cfg: &ScenarioConfig, st: &StageOutputs) -> Result<Outcome> {
    if n == 0 {
        return fail("cor13 needs n >= 1");
    }
    let (Some(est), Some(part)) = (&st.estimate, &st.partition) else {
        return stage_missing(st);
    };
    let map = st.map.as_ref().expect("estimate implies map");
    for (i, rep) in est.net.iter().enumerate() {
        let mut x = rep.clone();
        for _ in 0..n {
            x = map.eval(&x)?;
        }
        let fixed = if map.exact_on(rep) {
            x == *rep
        } else {
            dist(&x, rep)? <= cfg.tol
        };
        if !fixed {
            return fail(format!("net point {i} is not fixed by the {n}-th iterate"));
        }
    }
    if !n.is_multiple_of(part.count as u64) {
        return fail(format!(
            "component count {} does not divide n = {n}",
            part.count
        ));
    }
    pass()
}

/// The net is invariant and satisfies the covering relation: every proper
/// nonempty subset receives an image from its complement.
fn check_lemma23(st: &StageOutputs) -> Result<Outcome> {
    let Some(est) = &st.estimate else {
        return stage_missing(st);
    };
    let map = st.map.as_ref().expect("estimate implies map");
    let report = match sharkovsky_check(&est.net, map) {
        Ok(r) => r,
        Err(e) => return fail(format!("covering check unavailable: {e}")),
    };
    if report.holds {
        pass()
    } else {
        let mode = if report.exhaustive { "" } else { " (sampled)" };
        fail(format!(
            "covering relation fails for subset {:?}{mode}",
            report.witness.unwrap_or_default()
        ))
    }
}

/// The arc-shift orbit of the first tip walks the tip chain exactly, its
/// deep-level stretch hugs the baseline, anchors are fixed points, and the
/// net keeps growing with orbit length: the estimate never certifies as
/// totally periodic yet converges to an invariant continuum.
fn check_dendrite_counterexample(cfg: &ScenarioConfig, st: &StageOutputs) -> Result<Outcome> {
    let Some(orbit) = &st.orbit else {
        return stage_missing(st);
    };
    let map = st.map.as_ref().expect("orbit implies map");
    if !matches!(map, DynamicalMap::DendriteF0(_)) {
        return fail("map is not the dendrite arc shift");
    }

    let tip1 = Point::Dendrite(arc_tip(1));
    if orbit.points[0] != tip1 {
        return fail("orbit must start at the tip of arc 1");
    }
    for (j, p) in orbit.points.iter().enumerate() {
        let want = Point::Dendrite(arc_tip(1 + j as u64));
        if *p != want {
            return fail(format!(
                "orbit point {j} is not the tip of arc {}",
                1 + j as u64
            ));
        }
    }

    let window: Vec<Point> = orbit
        .points
        .iter()
        .filter_map(|p| match p {
            Point::Dendrite(d @ DendritePoint::Arc { k, .. })
                if (DENDRITE_LEVEL_LO..=DENDRITE_LEVEL_HI).contains(&level_of(*k)) =>
            {
                Some(Point::Euclid(dendrite_embed(d)))
            }
            _ => None,
        })
        .collect();
    if window.is_empty() {
        return fail(format!(
            "orbit reaches no tips of level {DENDRITE_LEVEL_LO}..={DENDRITE_LEVEL_HI}"
        ));
    }
    let segment = HausdorffTarget::Segment {
        from: [0.0, 0.0],
        to: [1.0, 0.0],
    };
    let d = hausdorff(&window, &segment, DENDRITE_SEGMENT_SAMPLING)?;
    if d > DENDRITE_HAUSDORFF_BOUND {
        return fail(format!(
            "levels {DENDRITE_LEVEL_LO}..={DENDRITE_LEVEL_HI} sit {d:.4} from the baseline, \
             above {DENDRITE_HAUSDORFF_BOUND}"
        ));
    }

    for p in &orbit.points {
        if let Point::Dendrite(DendritePoint::Arc { k, .. }) = p {
            let snapped = Point::Dendrite(DendritePoint::Baseline(dendrite_anchor(*k)));
            let image = map.eval(&snapped)?;
            if image != snapped {
                return fail(format!("anchor of arc {k} is not a fixed point"));
            }
        }
    }

    let mut last = 0usize;
    for len in DENDRITE_GROWTH_LENS {
        let o = map.orbit(&tip1, len)?;
        let est = omega_estimate(&o, DENDRITE_GROWTH_BURN_IN, cfg.eps_net)?;
        if est.net.len() <= last {
            return fail(format!(
                "net stopped growing: {} points after {} at orbit length {len}",
                est.net.len(),
                last
            ));
        }
        last = est.net.len();
    }
    pass()
}

/// Over an astronomically long horizon the trajectory reaches the outer
/// annulus and its angular trace covers the circle without large gaps.
fn check_disk_coverage(cfg: &ScenarioConfig, st: &StageOutputs) -> Result<Outcome> {
    let Some(map) = &st.map else {
        return stage_missing(st);
    };
    if !matches!(map, DynamicalMap::DiskTimeOne(_)) {
        return fail("map is not the disk time-one map");
    }
    let Point::Euclid(e) = &cfg.start else {
        return fail("start must be a disk point");
    };
    let (x, y) = (e.coords[0], e.coords[1]);
    let r0 = x.hypot(y);
    if !(r0 > 0.0 && r0 < DISK_R_FLOOR) {
        return fail(format!(
            "start radius {r0} must lie in (0, {DISK_R_FLOOR}) to witness coverage"
        ));
    }
    let th0 = y.atan2(x);
    let states = radial_long_horizon(
        &RadialState::new(r0, th0, 0.0)?,
        DISK_HORIZON,
        &IntegratorConfig::long_horizon(),
    )?;
    let r_end = states.last().expect("nonempty trajectory").r;
    if !(r_end >= DISK_R_FLOOR) {
        return fail(format!(
            "trajectory only reached radius {r_end} within the horizon, below {DISK_R_FLOOR}"
        ));
    }
    let span = theta_from_radius(DISK_R_FLOOR, r_end)?;
    if !(span >= DISK_SPAN_MIN) {
        return fail(format!(
            "angular span {span:.2} across [{DISK_R_FLOOR}, {r_end:.5}] is below {DISK_SPAN_MIN:.2}"
        ));
    }
    let mut angles = Vec::with_capacity(DISK_GAP_SAMPLES);
    for j in 0..DISK_GAP_SAMPLES {
        let r =
            DISK_R_FLOOR + (r_end - DISK_R_FLOOR) * ((j as f64 + 0.5) / DISK_GAP_SAMPLES as f64);
        angles.push((th0 + theta_from_radius(r0, r)?).rem_euclid(TAU));
    }
    angles.sort_unstable_by(f64::total_cmp);
    let mut max_gap = TAU - (angles[angles.len() - 1] - angles[0]);
    for w in angles.windows(2) {
        max_gap = max_gap.max(w[1] - w[0]);
    }
    if max_gap > DISK_GAP_MAX {
        return fail(format!(
            "angular trace leaves a gap of {max_gap:.4} rad, above {DISK_GAP_MAX}"
        ));
    }
    pass()
}

/// Product estimates factor: the net embeds into the product of factor nets
/// and every net point's period is the lcm of its factor periods.
fn check_prop18(cfg: &ScenarioConfig, st: &StageOutputs) -> Result<Outcome> {
    let Some(est) = &st.estimate else {
        return stage_missing(st);
    };
    let map = st.map.as_ref().expect("estimate implies map");
    let (DynamicalMap::Product(factors), Point::Product(starts)) = (map, &cfg.start) else {
        return fail("map and start must both be products");
    };

    let mut factor_nets: Vec<Vec<Point>> = Vec::with_capacity(factors.len());
    for (m, p) in factors.iter().zip(starts) {
        let o = m.orbit(p, cfg.orbit_len)?;
        factor_nets.push(omega_estimate(&o, cfg.burn_in, cfg.eps_net)?.net);
    }

    let bound: usize = factor_nets.iter().map(Vec::len).product();
    if est.net.len() > bound {
        return fail(format!(
            "product net has {} points, above the factor-net bound {bound}",
            est.net.len()
        ));
    }

    for (i, rep) in est.net.iter().enumerate() {
        let Point::Product(coords) = rep else {
            return fail(format!("net point {i} is not a product point"));
        };
        for (j, (c, net_j)) in coords.iter().zip(&factor_nets).enumerate() {
            let hit = if c.is_exact() {
                net_j.contains(c)
            } else {
                let mut near = false;
                for q in net_j {
                    if dist(c, q)? <= cfg.eps_net {
                        near = true;
                        break;
                    }
                }
                near
            };
            if !hit {
                return fail(format!(
                    "net point {i} coordinate {j} is missing from the factor net"
                ));
            }
        }

        let mut expected: u64 = 1;
        for (m, c) in factors.iter().zip(coords) {
            match detect_periodic(m, c, cfg.n_max, cfg.tol)?.period {
                Some(p) => expected = lcm(expected, p),
                None => {
                    return fail(format!(
                        "factor point of net point {i} is not periodic within {}",
                        cfg.n_max
                    ))
                }
            }
        }
        let got = detect_periodic(map, rep, cfg.n_max, cfg.tol)?.period;
        if got != Some(expected) {
            return fail(format!(
                "net point {i} has period {got:?}, expected the factor lcm {expected}"
            ));
        }
    }
    pass()
}

/// The classification stays uncertified and no net point returns within the
/// iteration budget (minimality without periodicity).
fn check_cantor_negative(cfg: &ScenarioConfig, st: &StageOutputs) -> Result<Outcome> {
    let (Some(est), Some(class)) = (&st.estimate, &st.classification) else {
        return stage_missing(st);
    };
    let map = st.map.as_ref().expect("estimate implies map");
    if *class != Classification::NotCertified {
        return fail(format!("classification unexpectedly certified: {class:?}"));
    }
    for (i, rep) in est.net.iter().enumerate() {
        if let Some(p) = detect_periodic(map, rep, cfg.n_max, cfg.tol)?.period {
            return fail(format!("net point {i} returned after {p} steps"));
        }
    }
    pass()
}

/// The boundary sphere is fixed bit-for-bit: boundary samples, poles, and
/// the center come back unchanged.
fn check_s1_fixed(st: &StageOutputs) -> Result<Outcome> {
    let Some(map) = &st.map else {
        return stage_missing(st);
    };
    let samples: Vec<(Vec<f64>, SpaceTag)> = match map {
        DynamicalMap::DiskTimeOne(_) => {
            let mut pts = vec![(vec![0.0, 0.0], SpaceTag::Disk)];
            for j in 0..BOUNDARY_SAMPLES {
                let a = TAU * j as f64 / BOUNDARY_SAMPLES as f64;
                pts.push((vec![a.cos(), a.sin()], SpaceTag::Disk));
            }
            pts
        }
        DynamicalMap::Ball(b) => {
            let d = b.dimension();
            let tag = SpaceTag::Ball(d);
            let mut pts = Vec::new();
            for i in 0..d {
                for s in [1.0, -1.0] {
                    let mut v = vec![0.0; d];
                    v[i] = s;
                    pts.push((v, tag));
                }
            }
            for j in 0..BOUNDARY_SAMPLES {
                let a = TAU * j as f64 / BOUNDARY_SAMPLES as f64;
                let mut equator = vec![0.0; d];
                equator[0] = a.cos();
                equator[1] = a.sin();
                pts.push((equator, tag));
                let mut meridian = vec![0.0; d];
                meridian[0] = a.cos();
                meridian[d - 1] = a.sin();
                pts.push((meridian, tag));
            }
            pts
        }
        _ => return fail("map has no invariant boundary sphere"),
    };
    for (coords, tag) in samples {
        let p = Point::Euclid(EuclidPoint::new(coords.clone(), tag)?);
        let image = map.eval(&p)?;
        let Point::Euclid(out) = &image else {
            return fail("image left the Euclidean space");
        };
        if out.coords != coords {
            return fail(format!(
                "boundary point {coords:?} moved to {:?}",
                out.coords
            ));
        }
    }
    pass()
}

/// The radius strictly increases at seeded random interior starts.
fn check_monotone_r(st: &StageOutputs) -> Result<Outcome> {
    let Some(map) = &st.map else {
        return stage_missing(st);
    };
    if !matches!(map, DynamicalMap::DiskTimeOne(_)) {
        return fail("map is not the disk time-one map");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(MONOTONE_SEED);
    for i in 0..MONOTONE_STARTS {
        let r: f64 = rng.gen_range(MONOTONE_R_LO..MONOTONE_R_HI);
        let a: f64 = rng.gen_range(0.0..TAU);
        let (x, y) = (r * a.cos(), r * a.sin());
        let p = Point::Euclid(EuclidPoint::disk(x, y)?);
        let image = map.eval(&p)?;
        let Point::Euclid(out) = &image else {
            return fail("image left the disk");
        };
        let r_in = x.hypot(y);
        let r_out = out.coords[0].hypot(out.coords[1]);
        if !(r_out > r_in) {
            return fail(format!(
                "radius did not increase at start {i}: {r_in} -> {r_out}"
            ));
        }
    }
    pass()
}

/// The integrated angle tracks the closed-form angular displacement
/// determined by the radius (the first integral of the flow).
fn check_theta_relation(cfg: &ScenarioConfig, st: &StageOutputs) -> Result<Outcome> {
    let Some(map) = &st.map else {
        return stage_missing(st);
    };
    let DynamicalMap::DiskTimeOne(int_cfg) = map else {
        return fail("map is not the disk time-one map");
    };
    let Point::Euclid(e) = &cfg.start else {
        return fail("start must be a disk point");
    };
    let (x, y) = (e.coords[0], e.coords[1]);
    let r0 = x.hypot(y);
    if !(r0 > 0.0 && r0 < THETA_STOP_R) {
        return fail(format!("start radius {r0} must lie in (0, {THETA_STOP_R})"));
    }
    let th0 = y.atan2(x);
    let mut s = RadialState::new(r0, th0, 0.0)?;
    let mut steps = 0usize;
    while s.r < THETA_STOP_R && steps < THETA_MAX_STEPS {
        s = omega_lab_core::flow(&s, 1.0, int_cfg)?;
        steps += 1;
        if s.r >= 1.0 {
            break;
        }
        let closed = theta_from_radius(r0, s.r)?;
        let drift = ((s.theta - th0) - closed).abs();
        let budget = THETA_DRIFT_PER_UNIT * s.t;
        if drift > budget {
            return fail(format!(
                "angular drift {drift:.3e} after {} time units exceeds {budget:.3e}",
                s.t
            ));
        }
    }
    if steps == 0 {
        return fail("no time-one steps were taken");
    }
    pass()
}

/// The square extension is the identity outside the chart, its action fades
/// to nothing at the chart rim, and the long-horizon tail is trapped in a
/// thin band at the rim where the extension is numerically fixed.
fn check_square_extension(cfg: &ScenarioConfig, st: &StageOutputs) -> Result<Outcome> {
    let Some(map) = &st.map else {
        return stage_missing(st);
    };
    let DynamicalMap::Square(ext) = map else {
        return fail("map is not a square extension");
    };
    let c = ext.center();
    let rad = ext.radius();

    let mut outside: Vec<[f64; 2]> = vec![
        [0.0, 0.0],
        [1.0, 0.0],
        [0.0, 1.0],
        [1.0, 1.0],
        [0.5, 0.0],
        [0.5, 1.0],
        [0.0, 0.5],
        [1.0, 0.5],
        [c[0] + rad, c[1]],
        [c[0], c[1] + rad],
    ];
    for j in 0..SQUARE_RING_ANGLES {
        let a = TAU * j as f64 / SQUARE_RING_ANGLES as f64;
        let p = [c[0] + (rad + 0.01) * a.cos(), c[1] + (rad + 0.01) * a.sin()];
        if p.iter().all(|v| (0.0..=1.0).contains(v)) {
            outside.push(p);
        }
    }
    for p in outside {
        let q = ext.eval(p)?;
        if q != p {
            return fail(format!("point {p:?} outside the chart moved to {q:?}"));
        }
    }

    let mut rim_disp = Vec::with_capacity(SQUARE_SWEEP_DEPTHS.len());
    for depth in SQUARE_SWEEP_DEPTHS {
        let u = (rad - depth) / rad;
        let mut worst = 0.0f64;
        for j in 0..SQUARE_RING_ANGLES {
            let a = TAU * j as f64 / SQUARE_RING_ANGLES as f64;
            let p = [c[0] + rad * u * a.cos(), c[1] + rad * u * a.sin()];
            let q = ext.eval(p)?;
            worst = worst.max((q[0] - p[0]).hypot(q[1] - p[1]));
        }
        rim_disp.push(worst);
    }
    if !(rim_disp[0] >= rim_disp[1] && rim_disp[1] >= rim_disp[2]) {
        return fail(format!(
            "rim displacements {rim_disp:?} do not decay toward the boundary"
        ));
    }
    if rim_disp[2] > SQUARE_RIM_VANISH {
        return fail(format!(
            "displacement {} at depth {} has not vanished",
            rim_disp[2], SQUARE_SWEEP_DEPTHS[2]
        ));
    }

    let Point::Euclid(e) = &cfg.start else {
        return fail("start must be a square point");
    };
    let (dx, dy) = (e.coords[0] - c[0], e.coords[1] - c[1]);
    let d0 = dx.hypot(dy);
    if !(d0 > 0.0 && d0 < rad) {
        return fail("start must lie inside the chart, off center");
    }
    let r0 = d0 / rad;
    let th0 = dy.atan2(dx);
    let states = radial_long_horizon(
        &RadialState::new(r0, th0, 0.0)?,
        SQUARE_HORIZON,
        &IntegratorConfig::long_horizon(),
    )?;
    let tail: Vec<&RadialState> = states
        .iter()
        .filter(|s| s.r >= SQUARE_TAIL_RADIUS)
        .collect();
    if tail.len() < SQUARE_MIN_TAIL {
        return fail(format!(
            "only {} trajectory states beyond chart radius {SQUARE_TAIL_RADIUS}",
            tail.len()
        ));
    }
    for s in tail {
        let band = rad * (1.0 - s.r);
        if band > SQUARE_BAND {
            return fail(format!(
                "tail state at chart radius {} sits {band:.4} from the rim, outside the band",
                s.r
            ));
        }
        let p = [
            c[0] + rad * s.r * s.theta.cos(),
            c[1] + rad * s.r * s.theta.sin(),
        ];
        let q = ext.eval(p)?;
        let moved = (q[0] - p[0]).hypot(q[1] - p[1]);
        if moved > SQUARE_FIX_TOL {
            return fail(format!(
                "tail point at chart radius {:.5} moved {moved:.2e}, above {SQUARE_FIX_TOL:.0e}",
                s.r
            ));
        }
    }
    pass()
}
