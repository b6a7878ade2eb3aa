//! Omega-limit estimation and structural analysis of the estimate.
//!
//! The pipeline: take an orbit tail past a burn-in, thin it to a greedy
//! epsilon-net ([`omega_estimate`]), group the net into epsilon-components
//! ([`components`]), project the map to a self-map of the components
//! ([`induced_map`]), and interrogate the quotient ([`verify_cycle`]) and
//! the points themselves ([`detect_periodic`], [`classify_totally_periodic`],
//! [`sharkovsky_check`]). [`hausdorff`] compares clouds against reference
//! shapes. Everything is deterministic: ties break toward smaller indices,
//! component labels are ordered by first appearance, and the one randomized
//! fallback (subset sampling for large exact sets) runs on a fixed seed.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dynamics::{DynamicalMap, Orbit};
use crate::error::{Error, Result};
use crate::spaces::{dist, EuclidPoint, Point};

/// Tail-and-net estimate of an omega-limit set.
#[derive(Clone, Debug)]
pub struct OmegaEstimate {
    /// Identifier of the generating map.
    pub map_id: String,
    /// Number of leading orbit points discarded.
    pub burn_in: usize,
    /// Net resolution.
    pub epsilon: f64,
    /// The orbit tail after burn-in, in orbit order.
    pub tail: Vec<Point>,
    /// Greedy epsilon-net of the tail: every tail point lies within
    /// `epsilon` of a net point, and net points are pairwise farther apart
    /// than `epsilon`. Built in orbit order, so it is deterministic and
    /// grows monotonically with orbit length.
    pub net: Vec<Point>,
}

/// Estimate the omega-limit set of the orbit's start point.
pub fn omega_estimate(orbit: &Orbit, burn_in: usize, eps: f64) -> Result<OmegaEstimate> {
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::Invalid(format!("epsilon {eps} must be positive")));
    }
    if burn_in >= orbit.points.len() {
        return Err(Error::Precondition(format!(
            "burn-in {burn_in} consumes the whole orbit of {} points",
            orbit.points.len()
        )));
    }
    let tail: Vec<Point> = orbit.points[burn_in..].to_vec();
    let mut net: Vec<Point> = Vec::new();
    for p in &tail {
        let mut covered = false;
        for rep in &net {
            if dist(p, rep)? <= eps {
                covered = true;
                break;
            }
        }
        if !covered {
            net.push(p.clone());
        }
    }
    Ok(OmegaEstimate {
        map_id: orbit.map_id.clone(),
        burn_in,
        epsilon: eps,
        tail,
        net,
    })
}

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }
}

/// A point cloud partitioned into epsilon-components: the transitive closure
/// of "within distance epsilon".
#[derive(Clone, Debug)]
pub struct ComponentPartition {
    pub points: Vec<Point>,
    pub epsilon: f64,
    /// `labels[i]` is the component of `points[i]`. Labels are consecutive
    /// from 0 in order of first appearance, so they only depend on the set
    /// partition and the input order.
    pub labels: Vec<usize>,
    pub count: usize,
}

impl ComponentPartition {
    /// Indices of the members of one component, ascending.
    pub fn members(&self, label: usize) -> Vec<usize> {
        (0..self.points.len())
            .filter(|&i| self.labels[i] == label)
            .collect()
    }
}

/// Group a cloud into epsilon-components.
pub fn components(cloud: &[Point], eps: f64) -> Result<ComponentPartition> {
    if cloud.is_empty() {
        return Err(Error::EmptyCloud("components".into()));
    }
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(Error::Invalid(format!("epsilon {eps} must be positive")));
    }
    let n = cloud.len();
    let mut uf = UnionFind::new(n);
    for i in 0..n {
        for j in (i + 1)..n {
            if dist(&cloud[i], &cloud[j])? <= eps {
                uf.union(i, j);
            }
        }
    }
    let mut labels = vec![usize::MAX; n];
    let mut remap: Vec<(usize, usize)> = Vec::new(); // (root, label)
    let mut count = 0;
    for (i, slot) in labels.iter_mut().enumerate() {
        let root = uf.find(i);
        *slot = match remap.iter().find(|(r, _)| *r == root) {
            Some((_, l)) => *l,
            None => {
                remap.push((root, count));
                count += 1;
                count - 1
            }
        };
    }
    Ok(ComponentPartition {
        points: cloud.to_vec(),
        epsilon: eps,
        labels,
        count,
    })
}

/// One point whose image lands in a component other than the consensus
/// target of its source component.
#[derive(Clone, Debug, Serialize)]
pub struct Straddle {
    pub source_component: usize,
    pub point_index: usize,
    pub image: Point,
    pub image_component: usize,
}

/// The map projected to component labels.
#[derive(Clone, Debug)]
pub struct InducedMap {
    /// `table[c]` is the component receiving component `c` (the target of
    /// the lowest-indexed member when the component straddles).
    pub table: Vec<usize>,
    /// False when some component's images land in two or more components
    /// separated by more than the slack.
    pub well_defined: bool,
    pub straddles: Vec<Straddle>,
}

/// Project the map to the component partition: each point is mapped, its
/// image is assigned to the component of the nearest cloud point (ties to
/// the smaller index), and per-component targets are reconciled. Images of
/// one component falling in different components are tolerated when they sit
/// within `slack` of each other (a cluster split by the epsilon threshold),
/// and reported as straddles otherwise.
pub fn induced_map(m: &DynamicalMap, part: &ComponentPartition, slack: f64) -> Result<InducedMap> {
    if !(slack >= 0.0) {
        return Err(Error::Invalid(format!("slack {slack} must be >= 0")));
    }
    let n = part.points.len();
    let mut image_of: Vec<Point> = Vec::with_capacity(n);
    let mut target_of: Vec<usize> = Vec::with_capacity(n);
    for p in &part.points {
        let image = m.eval(p)?;
        let mut best = (f64::INFINITY, usize::MAX);
        for (j, q) in part.points.iter().enumerate() {
            let d = dist(&image, q)?;
            if d < best.0 {
                best = (d, j);
            }
        }
        target_of.push(part.labels[best.1]);
        image_of.push(image);
    }

    let mut table = vec![usize::MAX; part.count];
    let mut well_defined = true;
    let mut straddles = Vec::new();
    for (c, slot) in table.iter_mut().enumerate() {
        let members = part.members(c);
        let lead_target = target_of[members[0]];
        *slot = lead_target;
        let split: Vec<usize> = members
            .iter()
            .copied()
            .filter(|&i| target_of[i] != lead_target)
            .collect();
        if split.is_empty() {
            continue;
        }
        // Images crossed a component boundary; only images genuinely far
        // apart disqualify the projection.
        let mut far = false;
        for &i in &members {
            for &j in &members {
                if target_of[i] != target_of[j] && dist(&image_of[i], &image_of[j])? > slack {
                    far = true;
                }
            }
        }
        if far {
            well_defined = false;
            for &i in &members {
                if target_of[i] != lead_target {
                    straddles.push(Straddle {
                        source_component: c,
                        point_index: i,
                        image: image_of[i].clone(),
                        image_component: target_of[i],
                    });
                }
            }
        }
    }
    Ok(InducedMap {
        table,
        well_defined,
        straddles,
    })
}

/// Verdict on whether the induced map is one cyclic permutation.
#[derive(Clone, Debug, Serialize)]
pub struct CycleReport {
    pub is_single_cycle: bool,
    /// Equal to the component count when `is_single_cycle`.
    pub cycle_length: Option<usize>,
    /// Populated with the reason when the verdict is negative.
    pub witness: Option<String>,
}

/// Check that the induced map permutes the components in one cycle.
pub fn verify_cycle(im: &InducedMap) -> CycleReport {
    let n = im.table.len();
    if n == 0 {
        return CycleReport {
            is_single_cycle: false,
            cycle_length: None,
            witness: Some("no components".into()),
        };
    }
    let mut hit = vec![usize::MAX; n];
    for (c, &t) in im.table.iter().enumerate() {
        if t >= n {
            return CycleReport {
                is_single_cycle: false,
                cycle_length: None,
                witness: Some(format!("component {c} maps outside the partition")),
            };
        }
        if hit[t] != usize::MAX {
            return CycleReport {
                is_single_cycle: false,
                cycle_length: None,
                witness: Some(format!(
                    "not a permutation: components {} and {c} both map to {t}",
                    hit[t]
                )),
            };
        }
        hit[t] = c;
    }
    let mut seen = 1usize;
    let mut at = im.table[0];
    while at != 0 {
        at = im.table[at];
        seen += 1;
    }
    if seen == n {
        CycleReport {
            is_single_cycle: true,
            cycle_length: Some(n),
            witness: None,
        }
    } else {
        CycleReport {
            is_single_cycle: false,
            cycle_length: None,
            witness: Some(format!(
                "permutation splits into several cycles: the cycle through component 0 has length {seen} of {n}"
            )),
        }
    }
}

/// Result of a minimal-period search at one point.
#[derive(Clone, Debug, Serialize)]
pub struct PeriodReport {
    /// Smallest `p <= n_max` with `f^p(x) = x`, when found.
    pub period: Option<u64>,
    /// True when the search ran in exact arithmetic (then `tol` is ignored
    /// and equality is exact, so a reported period is a certificate).
    pub exact: bool,
    pub n_max: u64,
    pub tol: f64,
}

/// Search for the minimal period of `p` under `m`.
pub fn detect_periodic(m: &DynamicalMap, p: &Point, n_max: u64, tol: f64) -> Result<PeriodReport> {
    if n_max == 0 {
        return Err(Error::Invalid("n_max must be >= 1".into()));
    }
    if !(tol >= 0.0) {
        return Err(Error::Invalid(format!("tolerance {tol} must be >= 0")));
    }
    let exact = m.exact_on(p);
    let mut current = p.clone();
    let mut period = None;
    for step in 1..=n_max {
        current = m.eval(&current)?;
        let back = if exact {
            current == *p
        } else {
            dist(&current, p)? <= tol
        };
        if back {
            period = Some(step);
            break;
        }
    }
    Ok(PeriodReport {
        period,
        exact,
        n_max,
        tol,
    })
}

/// One-sided verdict: either every net representative returned to itself
/// within the iteration budget, or the estimate is left uncertified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    TotallyPeriodic { max_period: u64 },
    NotCertified,
}

/// Classify an omega-limit estimate by running the period search on every
/// net representative.
pub fn classify_totally_periodic(
    m: &DynamicalMap,
    est: &OmegaEstimate,
    n_max: u64,
    tol: f64,
) -> Result<Classification> {
    if est.net.is_empty() {
        return Err(Error::EmptyCloud("classify_totally_periodic".into()));
    }
    let mut max_period = 0u64;
    for rep in &est.net {
        match detect_periodic(m, rep, n_max, tol)?.period {
            Some(p) => max_period = max_period.max(p),
            None => return Ok(Classification::NotCertified),
        }
    }
    Ok(Classification::TotallyPeriodic { max_period })
}

/// Outcome of the covering-relation check on a finite invariant set.
#[derive(Clone, Debug, Serialize)]
pub struct SharkovskyReport {
    /// True when every proper nonempty subset receives an image from its
    /// complement.
    pub holds: bool,
    /// True when all subsets were enumerated rather than sampled.
    pub exhaustive: bool,
    /// Indices of a violating subset, when one was found.
    pub witness: Option<Vec<usize>>,
}

const SUBSET_SAMPLES: usize = 10_000;
const SUBSET_SEED: u64 = 0x00C0_FFEE;

/// Check the covering relation `F ∩ f(L \ F) != ∅` for proper nonempty
/// subsets `F` of a finite invariant set `L`. Exhaustive for `|L| <= 12`,
/// seeded random sampling beyond that. The set must be exactly invariant:
/// every image must equal a member (structural equality).
pub fn sharkovsky_check(l: &[Point], m: &DynamicalMap) -> Result<SharkovskyReport> {
    if l.is_empty() {
        return Err(Error::EmptyCloud("sharkovsky_check".into()));
    }
    let n = l.len();
    let mut sigma = Vec::with_capacity(n);
    for (i, p) in l.iter().enumerate() {
        let image = m.eval(p)?;
        match l.iter().position(|q| *q == image) {
            Some(j) => sigma.push(j),
            None => {
                return Err(Error::Precondition(format!(
                    "set is not invariant: the image of point {i} is not a member"
                )))
            }
        }
    }

    // A subset F (as a membership mask) passes when some i outside F maps
    // into F.
    let fails =
        |mask: &dyn Fn(usize) -> bool| -> bool { !(0..n).any(|i| !mask(i) && mask(sigma[i])) };

    if n == 1 {
        // No proper nonempty subsets exist.
        return Ok(SharkovskyReport {
            holds: true,
            exhaustive: true,
            witness: None,
        });
    }

    if n <= 12 {
        for bits in 1..((1u32 << n) - 1) {
            let mask = |i: usize| bits >> i & 1 == 1;
            if fails(&mask) {
                return Ok(SharkovskyReport {
                    holds: false,
                    exhaustive: true,
                    witness: Some((0..n).filter(|&i| mask(i)).collect()),
                });
            }
        }
        return Ok(SharkovskyReport {
            holds: true,
            exhaustive: true,
            witness: None,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(SUBSET_SEED);
    let mut tried = 0;
    while tried < SUBSET_SAMPLES {
        let member: Vec<bool> = (0..n).map(|_| rng.gen::<bool>()).collect();
        let size = member.iter().filter(|&&b| b).count();
        if size == 0 || size == n {
            continue;
        }
        tried += 1;
        let mask = |i: usize| member[i];
        if fails(&mask) {
            return Ok(SharkovskyReport {
                holds: false,
                exhaustive: false,
                witness: Some((0..n).filter(|&i| mask(i)).collect()),
            });
        }
    }
    Ok(SharkovskyReport {
        holds: true,
        exhaustive: false,
        witness: None,
    })
}

/// Reference shape for Hausdorff comparisons.
#[derive(Clone, Debug)]
pub enum HausdorffTarget {
    /// Another cloud, compared as-is.
    Cloud(Vec<Point>),
    /// Planar segment, discretized into `sampling + 1` points.
    Segment { from: [f64; 2], to: [f64; 2] },
    /// Planar circle, discretized into `sampling` points.
    Circle { center: [f64; 2], radius: f64 },
}

fn directed_hausdorff(xs: &[Point], ys: &[Point]) -> Result<f64> {
    let mut cmax = 0.0f64;
    for x in xs {
        let mut cmin = f64::INFINITY;
        for y in ys {
            let d = dist(x, y)?;
            if d <= cmax {
                // This x cannot raise the maximum.
                cmin = d;
                break;
            }
            if d < cmin {
                cmin = d;
            }
        }
        if cmin > cmax {
            cmax = cmin;
        }
    }
    Ok(cmax)
}

/// Symmetric Hausdorff distance between a cloud and a target shape.
/// Parametric targets are materialized in the plane with the tag of the
/// cloud's first point, which must then be a planar point.
pub fn hausdorff(a: &[Point], target: &HausdorffTarget, sampling: usize) -> Result<f64> {
    if a.is_empty() {
        return Err(Error::EmptyCloud("hausdorff".into()));
    }
    let materialized: Vec<Point>;
    let b: &[Point] = match target {
        HausdorffTarget::Cloud(cloud) => {
            if cloud.is_empty() {
                return Err(Error::EmptyCloud("hausdorff target".into()));
            }
            cloud
        }
        _ => {
            if sampling == 0 {
                return Err(Error::Invalid("sampling must be >= 1".into()));
            }
            let tag = match &a[0] {
                Point::Euclid(e) if e.coords.len() == 2 => e.tag,
                other => {
                    return Err(Error::SpaceMismatch(format!(
                        "parametric targets need a planar cloud, got {}",
                        other.space_desc()
                    )))
                }
            };
            materialized = match target {
                HausdorffTarget::Segment { from, to } => (0..=sampling)
                    .map(|i| {
                        let t = i as f64 / sampling as f64;
                        Point::Euclid(EuclidPoint {
                            coords: vec![
                                from[0] + t * (to[0] - from[0]),
                                from[1] + t * (to[1] - from[1]),
                            ],
                            tag,
                        })
                    })
                    .collect(),
                HausdorffTarget::Circle { center, radius } => (0..sampling)
                    .map(|i| {
                        let ang = i as f64 * std::f64::consts::TAU / sampling as f64;
                        Point::Euclid(EuclidPoint {
                            coords: vec![
                                center[0] + radius * ang.cos(),
                                center[1] + radius * ang.sin(),
                            ],
                            tag,
                        })
                    })
                    .collect(),
                HausdorffTarget::Cloud(_) => unreachable!(),
            };
            &materialized
        }
    };
    Ok(directed_hausdorff(a, b)?.max(directed_hausdorff(b, a)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::PiecewiseLinearSpec;
    use crate::rational::{rat, rat_int};
    use crate::spaces::{CantorWord, CirclePoint};
    use proptest::prelude::*;

    fn turn_point(p: i64, q: i64) -> Point {
        Point::Circle(CirclePoint::turn(rat(p, q)))
    }

    fn interval_cloud(vals: &[(i64, i64)]) -> Vec<Point> {
        vals.iter()
            .map(|&(p, q)| Point::Interval(rat(p, q)))
            .collect()
    }

    #[test]
    fn estimate_of_a_rational_rotation_finds_the_cycle() {
        let m = DynamicalMap::rotation_exact(rat(1, 8));
        let orbit = m.orbit(&turn_point(0, 1), 100).unwrap();
        let est = omega_estimate(&orbit, 20, 0.01).unwrap();
        assert_eq!(est.tail.len(), 81);
        assert_eq!(est.net.len(), 8);
        assert_eq!(est.burn_in, 20);
    }

    #[test]
    fn estimate_rejects_bad_parameters() {
        let m = DynamicalMap::rotation_exact(rat(1, 3));
        let orbit = m.orbit(&turn_point(0, 1), 10).unwrap();
        assert!(omega_estimate(&orbit, 11, 0.01).is_err());
        assert!(omega_estimate(&orbit, 0, 0.0).is_err());
        assert!(omega_estimate(&orbit, 0, -1.0).is_err());
    }

    proptest! {
        // Net covering and separation invariants, on rotation orbits of
        // varying rotation number and resolution.
        #[test]
        fn net_covers_tail_and_separates(p in 1i64..30, q in 2i64..40, exp in 1i32..8) {
            let eps = 2f64.powi(-exp);
            let m = DynamicalMap::rotation_exact(rat(p, q));
            let orbit = m.orbit(&turn_point(0, 1), 80).unwrap();
            let est = omega_estimate(&orbit, 10, eps).unwrap();
            for t in &est.tail {
                let covered = est.net.iter().any(|r| dist(t, r).unwrap() <= eps);
                prop_assert!(covered, "tail point not covered");
            }
            for (i, a) in est.net.iter().enumerate() {
                for b in est.net.iter().skip(i + 1) {
                    prop_assert!(dist(a, b).unwrap() > eps, "net points too close");
                }
            }
        }

        // Greedy thinning in orbit order makes longer orbits extend, never
        // rebuild, the net of shorter ones.
        #[test]
        fn net_grows_monotonically_with_orbit_length(p in 1i64..10, q in 11i64..40) {
            let m = DynamicalMap::rotation_exact(rat(p, q));
            let short = m.orbit(&turn_point(0, 1), 40).unwrap();
            let long = m.orbit(&turn_point(0, 1), 90).unwrap();
            let eps = 0.05;
            let net_short = omega_estimate(&short, 5, eps).unwrap().net;
            let net_long = omega_estimate(&long, 5, eps).unwrap().net;
            prop_assert!(net_short.len() <= net_long.len());
            for (a, b) in net_short.iter().zip(&net_long) {
                prop_assert_eq!(a, b, "net is not a prefix extension");
            }
        }
    }

    #[test]
    fn components_cluster_and_label_in_order() {
        let cloud = interval_cloud(&[(0, 1), (1, 1000), (2, 1000), (1, 2), (501, 1000)]);
        let part = components(&cloud, 0.0015).unwrap();
        assert_eq!(part.count, 2);
        assert_eq!(part.labels, vec![0, 0, 0, 1, 1]);
        assert_eq!(part.members(0), vec![0, 1, 2]);
        assert_eq!(part.members(1), vec![3, 4]);
    }

    #[test]
    fn components_edge_cases() {
        assert!(components(&[], 0.1).is_err());
        let single = interval_cloud(&[(1, 2)]);
        let part = components(&single, 0.1).unwrap();
        assert_eq!(part.count, 1);
        assert_eq!(part.labels, vec![0]);
        assert!(components(&single, 0.0).is_err());
    }

    proptest! {
        // The partition (as a set of sets of points) must not depend on the
        // order the cloud is presented in.
        #[test]
        fn components_are_permutation_invariant(seed in 0u64..500) {
            let m = DynamicalMap::rotation_exact(rat(1, 6));
            let orbit = m.orbit(&turn_point(1, 12), 30).unwrap();
            let cloud = orbit.points;
            let mut shuffled = cloud.clone();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            shuffled.shuffle(&mut rng);

            let part_a = components(&cloud, 0.2).unwrap();
            let part_b = components(&shuffled, 0.2).unwrap();
            prop_assert_eq!(part_a.count, part_b.count);

            let collect = |part: &ComponentPartition| -> Vec<Vec<String>> {
                let mut groups: Vec<Vec<String>> = (0..part.count)
                    .map(|c| {
                        let mut g: Vec<String> = part
                            .members(c)
                            .into_iter()
                            .map(|i| format!("{:?}", part.points[i]))
                            .collect();
                        g.sort();
                        g
                    })
                    .collect();
                groups.sort();
                groups
            };
            prop_assert_eq!(collect(&part_a), collect(&part_b));
        }
    }

    #[test]
    fn induced_map_on_a_rotation_cycle() {
        let m = DynamicalMap::rotation_exact(rat(1, 4));
        let orbit = m.orbit(&turn_point(0, 1), 20).unwrap();
        let est = omega_estimate(&orbit, 4, 0.01).unwrap();
        let part = components(&est.net, 0.01).unwrap();
        assert_eq!(part.count, 4);
        let im = induced_map(&m, &part, 0.01).unwrap();
        assert!(im.well_defined);
        assert!(im.straddles.is_empty());
        let cr = verify_cycle(&im);
        assert!(cr.is_single_cycle);
        assert_eq!(cr.cycle_length, Some(4));
    }

    #[test]
    fn induced_map_reports_straddles() {
        // {0, 1/25} clusters into one component; the map sends 0 to itself
        // and 1/25 to 1/2, far across the partition.
        let pl = PiecewiseLinearSpec::new(vec![
            (rat_int(0), rat_int(0)),
            (rat(1, 25), rat(1, 2)),
            (rat_int(1), rat(1, 2)),
        ])
        .unwrap();
        let m = DynamicalMap::PiecewiseLinear(pl);
        let cloud = interval_cloud(&[(0, 1), (1, 25), (1, 2)]);
        let part = components(&cloud, 0.05).unwrap();
        assert_eq!(part.count, 2);
        let im = induced_map(&m, &part, 0.05).unwrap();
        assert!(!im.well_defined);
        assert_eq!(im.straddles.len(), 1);
        assert_eq!(im.straddles[0].source_component, 0);
        assert_eq!(im.straddles[0].point_index, 1);
        assert_eq!(im.straddles[0].image_component, 1);
    }

    #[test]
    fn induced_map_tolerates_splits_within_slack() {
        // The component {0, 1/10000} maps to images 0.5 and 0.5004, which
        // fall in two different eps-components of the cloud but sit within
        // the slack of each other: an epsilon-threshold artifact, accepted.
        let pl = PiecewiseLinearSpec::new(vec![
            (rat_int(0), rat(1, 2)),
            (rat(1, 10000), rat(5004, 10000)),
            (rat_int(1), rat(5004, 10000)),
        ])
        .unwrap();
        let m = DynamicalMap::PiecewiseLinear(pl);
        let cloud = interval_cloud(&[(0, 1), (1, 10000), (1, 2), (5004, 10000)]);
        let part = components(&cloud, 0.0002).unwrap();
        assert_eq!(part.count, 3, "0.5 and 0.5004 must split at this epsilon");
        assert_eq!(part.labels, vec![0, 0, 1, 2]);
        let im = induced_map(&m, &part, 0.05).unwrap();
        assert!(im.well_defined, "split within slack should be tolerated");
        assert!(im.straddles.is_empty());
        assert_eq!(im.table[0], 1, "consensus target is the lead member's");
    }

    #[test]
    fn verify_cycle_rejects_non_permutations_and_multicycles() {
        let not_perm = InducedMap {
            table: vec![0, 0],
            well_defined: true,
            straddles: vec![],
        };
        let cr = verify_cycle(&not_perm);
        assert!(!cr.is_single_cycle);
        assert!(cr.witness.unwrap().contains("not a permutation"));

        let two_fixed = InducedMap {
            table: vec![0, 1],
            well_defined: true,
            straddles: vec![],
        };
        let cr = verify_cycle(&two_fixed);
        assert!(!cr.is_single_cycle);
        assert!(cr.witness.unwrap().contains("several cycles"));

        let single = InducedMap {
            table: vec![1, 2, 0],
            well_defined: true,
            straddles: vec![],
        };
        let cr = verify_cycle(&single);
        assert!(cr.is_single_cycle);
        assert_eq!(cr.cycle_length, Some(3));
    }

    #[test]
    fn period_detection_exact_and_budgeted() {
        let m = DynamicalMap::rotation_exact(rat(1, 6));
        let p = turn_point(1, 12);
        let found = detect_periodic(&m, &p, 10, 0.0).unwrap();
        assert_eq!(found.period, Some(6));
        assert!(found.exact);

        let not_found = detect_periodic(&m, &p, 5, 0.0).unwrap();
        assert_eq!(not_found.period, None);

        let odo = DynamicalMap::odometer(4).unwrap();
        let z = Point::Cantor(CantorWord::zeros(4).unwrap());
        assert_eq!(detect_periodic(&odo, &z, 16, 0.0).unwrap().period, Some(16));
        assert_eq!(detect_periodic(&odo, &z, 15, 0.0).unwrap().period, None);
    }

    #[test]
    fn period_detection_numeric_uses_tolerance() {
        let m = DynamicalMap::disk(crate::flows::IntegratorConfig::default());
        let center = Point::Euclid(crate::spaces::EuclidPoint::disk(0.0, 0.0).unwrap());
        let rep = detect_periodic(&m, &center, 3, 1e-12).unwrap();
        assert_eq!(rep.period, Some(1));
        assert!(!rep.exact);
    }

    #[test]
    fn classification_certifies_rotations_and_refuses_odometers() {
        let rot = DynamicalMap::rotation_exact(rat(2, 6));
        let orbit = rot.orbit(&turn_point(0, 1), 50).unwrap();
        let est = omega_estimate(&orbit, 10, 0.01).unwrap();
        assert_eq!(
            classify_totally_periodic(&rot, &est, 10, 0.0).unwrap(),
            Classification::TotallyPeriodic { max_period: 3 }
        );

        let odo = DynamicalMap::odometer(16).unwrap();
        let z = Point::Cantor(CantorWord::zeros(16).unwrap());
        let orbit = odo.orbit(&z, 200).unwrap();
        let est = omega_estimate(&orbit, 0, 1e-9).unwrap();
        assert_eq!(
            classify_totally_periodic(&odo, &est, 1000, 0.0).unwrap(),
            Classification::NotCertified
        );
    }

    #[test]
    fn covering_relation_holds_on_true_cycles() {
        // A 3-cycle on the interval.
        let pl = PiecewiseLinearSpec::new(vec![
            (rat_int(0), rat(1, 2)),
            (rat(1, 5), rat(1, 2)),
            (rat(1, 2), rat(4, 5)),
            (rat(4, 5), rat(1, 5)),
            (rat_int(1), rat(1, 5)),
        ])
        .unwrap();
        let m = DynamicalMap::PiecewiseLinear(pl);
        let l = interval_cloud(&[(1, 5), (1, 2), (4, 5)]);
        let rep = sharkovsky_check(&l, &m).unwrap();
        assert!(rep.holds);
        assert!(rep.exhaustive);
        assert!(rep.witness.is_none());

        // A rotation cycle of length 5.
        let rot = DynamicalMap::rotation_exact(rat(1, 5));
        let l: Vec<Point> = (0..5).map(|i| turn_point(i, 5)).collect();
        assert!(sharkovsky_check(&l, &rot).unwrap().holds);
    }

    #[test]
    fn covering_relation_fails_on_split_fixed_points() {
        // Two fixed points: the subset holding just one of them never
        // receives an image from outside.
        let pl = PiecewiseLinearSpec::new(vec![
            (rat_int(0), rat(1, 4)),
            (rat(3, 8), rat(1, 4)),
            (rat(5, 8), rat(3, 4)),
            (rat_int(1), rat(3, 4)),
        ])
        .unwrap();
        let m = DynamicalMap::PiecewiseLinear(pl);
        let l = interval_cloud(&[(1, 4), (3, 4)]);
        let rep = sharkovsky_check(&l, &m).unwrap();
        assert!(!rep.holds);
        assert!(rep.exhaustive);
        assert_eq!(rep.witness, Some(vec![0]));
    }

    #[test]
    fn covering_relation_requires_invariance() {
        let rot = DynamicalMap::rotation_exact(rat(1, 5));
        let l = vec![turn_point(0, 1), turn_point(1, 5), turn_point(2, 5)];
        assert!(matches!(
            sharkovsky_check(&l, &rot),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn covering_relation_samples_large_sets() {
        // Rotation by 1/16 on its full 16-cycle: too big to enumerate, the
        // sampled check must still pass.
        let rot = DynamicalMap::rotation_exact(rat(1, 16));
        let l: Vec<Point> = (0..16).map(|i| turn_point(i, 16)).collect();
        let rep = sharkovsky_check(&l, &rot).unwrap();
        assert!(rep.holds);
        assert!(!rep.exhaustive);

        // Sixteen fixed points (identity rotation): sampling finds a
        // violating subset immediately.
        let ident = DynamicalMap::rotation_exact(rat_int(0));
        let rep = sharkovsky_check(&l, &ident).unwrap();
        assert!(!rep.holds);
        assert!(rep.witness.is_some());
    }

    #[test]
    fn hausdorff_cloud_to_cloud() {
        let a = vec![Point::Euclid(EuclidPoint::square(0.0, 0.0).unwrap())];
        let b = vec![
            Point::Euclid(EuclidPoint::square(0.0, 0.0).unwrap()),
            Point::Euclid(EuclidPoint::square(0.3, 0.4).unwrap()),
        ];
        let d = hausdorff(&a, &HausdorffTarget::Cloud(b), 1).unwrap();
        assert!((d - 0.5).abs() < 1e-15);
    }

    #[test]
    fn hausdorff_against_segment_and_circle() {
        let a = vec![Point::Euclid(EuclidPoint::square(0.0, 0.0).unwrap())];
        let seg = HausdorffTarget::Segment {
            from: [0.0, 0.0],
            to: [1.0, 0.0],
        };
        let d = hausdorff(&a, &seg, 1000).unwrap();
        assert!((d - 1.0).abs() < 1e-12, "farthest segment point is (1,0)");

        // The full circle sampled as a cloud has distance ~0 to itself.
        let circle = HausdorffTarget::Circle {
            center: [0.5, 0.5],
            radius: 0.4,
        };
        let dense: Vec<Point> = (0..512)
            .map(|i| {
                let ang = i as f64 * std::f64::consts::TAU / 512.0;
                Point::Euclid(EuclidPoint {
                    coords: vec![0.5 + 0.4 * ang.cos(), 0.5 + 0.4 * ang.sin()],
                    tag: crate::spaces::SpaceTag::Square,
                })
            })
            .collect();
        let d = hausdorff(&dense, &circle, 4096).unwrap();
        assert!(d < 0.005, "self-distance {d} too large");

        // Center of the circle: exactly the radius away.
        let center = vec![Point::Euclid(EuclidPoint::square(0.5, 0.5).unwrap())];
        let d = hausdorff(&center, &circle, 4096).unwrap();
        assert!((d - 0.4).abs() < 1e-6);
    }

    #[test]
    fn hausdorff_contract_errors() {
        let a = vec![Point::Euclid(EuclidPoint::square(0.0, 0.0).unwrap())];
        assert!(hausdorff(&[], &HausdorffTarget::Cloud(a.clone()), 1).is_err());
        assert!(hausdorff(&a, &HausdorffTarget::Cloud(vec![]), 1).is_err());
        let seg = HausdorffTarget::Segment {
            from: [0.0, 0.0],
            to: [1.0, 0.0],
        };
        assert!(hausdorff(&a, &seg, 0).is_err());
        let non_planar = vec![Point::Interval(rat(1, 2))];
        assert!(hausdorff(&non_planar, &seg, 10).is_err());
    }
}
