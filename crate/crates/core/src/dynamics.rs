//! Uniform interface over every supported self-map, plus orbit generation.
//!
//! A [`DynamicalMap`] pairs a space with a map on it; `eval` rejects points
//! from the wrong space instead of guessing. Maps on exact representations
//! (the dendrite shift, rational rotations, rational piecewise-linear
//! interval maps, the odometer, and products of these) iterate with zero
//! arithmetic error; the disk, ball and square maps run through the adaptive
//! integrator.

use crate::dendrite::F0Map;
use crate::error::{Error, Result};
use crate::flows::{disk_time_one, BallMap, IntegratorConfig, SquareExtension};
use crate::rational::{self, Rational};
use crate::spaces::{CirclePoint, EuclidPoint, Point, SpaceTag};

/// Circle rotation: exact by a rational fraction of a full turn, or numeric
/// by a radian angle.
#[derive(Clone, Debug, PartialEq)]
pub enum Rotation {
    Exact(Rational),
    Numeric(f64),
}

/// Piecewise-linear self-map of `[0,1]` through rational nodes, evaluated
/// exactly on rational points.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseLinearSpec {
    breakpoints: Vec<(Rational, Rational)>,
}

impl PiecewiseLinearSpec {
    /// Nodes must start at x=0, end at x=1, be strictly increasing in x,
    /// and keep every y inside `[0,1]`.
    pub fn new(breakpoints: Vec<(Rational, Rational)>) -> Result<Self> {
        if breakpoints.len() < 2 {
            return Err(Error::Invalid("need at least two breakpoints".into()));
        }
        if breakpoints[0].0 != rational::rat_int(0)
            || breakpoints.last().expect("nonempty").0 != rational::rat_int(1)
        {
            return Err(Error::Invalid("breakpoints must span x=0 to x=1".into()));
        }
        for w in breakpoints.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(Error::Invalid(format!(
                    "breakpoint x-values must strictly increase: {} then {}",
                    w[0].0, w[1].0
                )));
            }
        }
        for (x, y) in &breakpoints {
            if !rational::in_unit_interval(y) {
                return Err(Error::Invalid(format!(
                    "node value {y} at x={x} outside [0,1]"
                )));
            }
        }
        Ok(PiecewiseLinearSpec { breakpoints })
    }

    pub fn breakpoints(&self) -> &[(Rational, Rational)] {
        &self.breakpoints
    }

    /// Exact evaluation at a rational point of `[0,1]`.
    pub fn eval_exact(&self, t: &Rational) -> Result<Rational> {
        if !rational::in_unit_interval(t) {
            return Err(Error::Domain(format!("argument {t} outside [0,1]")));
        }
        let idx = self
            .breakpoints
            .windows(2)
            .position(|w| *t <= w[1].0)
            .expect("t <= 1 always lands in a segment");
        let (x0, y0) = &self.breakpoints[idx];
        let (x1, y1) = &self.breakpoints[idx + 1];
        Ok(y0 + (t - x0) * (y1 - y0) / (x1 - x0))
    }

    /// Numeric evaluation for floating-point interval points.
    pub fn eval_f64(&self, x: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::Domain(format!("argument {x} outside [0,1]")));
        }
        let nodes: Vec<(f64, f64)> = self
            .breakpoints
            .iter()
            .map(|(a, b)| (rational::to_f64(a), rational::to_f64(b)))
            .collect();
        let idx = nodes
            .windows(2)
            .position(|w| x <= w[1].0)
            .unwrap_or(nodes.len() - 2);
        let (x0, y0) = nodes[idx];
        let (x1, y1) = nodes[idx + 1];
        Ok((y0 + (x - x0) * (y1 - y0) / (x1 - x0)).clamp(0.0, 1.0))
    }
}

/// A self-map of one of the supported spaces.
#[derive(Clone, Debug)]
pub enum DynamicalMap {
    /// Arc-shift map of the anchored-arc dendrite.
    DendriteF0(F0Map),
    /// Time-one map of the radial flow on the closed disk.
    DiskTimeOne(IntegratorConfig),
    /// Suspension tower of the disk map on a closed ball.
    Ball(BallMap),
    /// Disk map transplanted into the unit square, identity outside a chart.
    Square(SquareExtension),
    /// Piecewise-linear interval map.
    PiecewiseLinear(PiecewiseLinearSpec),
    /// Circle rotation.
    Rotation(Rotation),
    /// Binary odometer (add one with carry) on words of fixed depth.
    Odometer { depth: usize },
    /// Product acting factor-wise; at least two factors.
    Product(Vec<DynamicalMap>),
}

impl DynamicalMap {
    pub fn dendrite() -> Self {
        DynamicalMap::DendriteF0(F0Map)
    }

    pub fn disk(cfg: IntegratorConfig) -> Self {
        DynamicalMap::DiskTimeOne(cfg)
    }

    pub fn rotation_exact(f: Rational) -> Self {
        DynamicalMap::Rotation(Rotation::Exact(rational::mod_one(&f)))
    }

    pub fn rotation_numeric(a: f64) -> Result<Self> {
        if !a.is_finite() {
            return Err(Error::Invalid("rotation angle must be finite".into()));
        }
        Ok(DynamicalMap::Rotation(Rotation::Numeric(a)))
    }

    pub fn odometer(depth: usize) -> Result<Self> {
        if depth == 0 {
            return Err(Error::Invalid("odometer depth must be >= 1".into()));
        }
        Ok(DynamicalMap::Odometer { depth })
    }

    pub fn product(factors: Vec<DynamicalMap>) -> Result<Self> {
        if factors.len() < 2 {
            return Err(Error::Invalid("product needs at least two factors".into()));
        }
        Ok(DynamicalMap::Product(factors))
    }

    /// Short human-readable identifier used in orbit records and reports.
    pub fn describe(&self) -> String {
        match self {
            DynamicalMap::DendriteF0(_) => "dendrite_f0".into(),
            DynamicalMap::DiskTimeOne(_) => "disk_time_one".into(),
            DynamicalMap::Ball(b) => format!("ball({})", b.dimension()),
            DynamicalMap::Square(e) => format!(
                "square_extension(center=({}, {}), radius={})",
                e.center()[0],
                e.center()[1],
                e.radius()
            ),
            DynamicalMap::PiecewiseLinear(p) => {
                format!("piecewise_linear({} nodes)", p.breakpoints().len())
            }
            DynamicalMap::Rotation(Rotation::Exact(f)) => format!("rotation({f})"),
            DynamicalMap::Rotation(Rotation::Numeric(a)) => format!("rotation({a} rad)"),
            DynamicalMap::Odometer { depth } => format!("odometer({depth})"),
            DynamicalMap::Product(fs) => {
                let inner: Vec<String> = fs.iter().map(DynamicalMap::describe).collect();
                format!("product({})", inner.join(" x "))
            }
        }
    }

    /// True when iteration from this point stays in exact arithmetic.
    pub fn exact_on(&self, p: &Point) -> bool {
        match (self, p) {
            (DynamicalMap::DendriteF0(_), Point::Dendrite(_)) => true,
            (DynamicalMap::PiecewiseLinear(_), Point::Interval(_)) => true,
            (DynamicalMap::Rotation(Rotation::Exact(_)), Point::Circle(CirclePoint::Turn(_))) => {
                true
            }
            (DynamicalMap::Odometer { .. }, Point::Cantor(_)) => true,
            (DynamicalMap::Product(ms), Point::Product(ps)) => {
                ms.len() == ps.len() && ms.iter().zip(ps).all(|(m, q)| m.exact_on(q))
            }
            _ => false,
        }
    }

    /// Apply the map once. The point must belong to the map's space.
    pub fn eval(&self, p: &Point) -> Result<Point> {
        match (self, p) {
            (DynamicalMap::DendriteF0(f), Point::Dendrite(d)) => Ok(Point::Dendrite(f.eval(d))),

            (DynamicalMap::DiskTimeOne(cfg), Point::Euclid(e)) if e.tag == SpaceTag::Disk => {
                let [x, y] = disk_time_one(e.coords[0], e.coords[1], cfg)?;
                Ok(Point::Euclid(EuclidPoint {
                    coords: vec![x, y],
                    tag: SpaceTag::Disk,
                }))
            }

            (DynamicalMap::Ball(b), Point::Euclid(e))
                if e.tag == SpaceTag::Ball(b.dimension())
                    || (e.tag == SpaceTag::Disk && b.dimension() == 2) =>
            {
                Ok(Point::Euclid(EuclidPoint {
                    coords: b.eval(&e.coords)?,
                    tag: e.tag,
                }))
            }

            (DynamicalMap::Square(ext), Point::Euclid(e)) if e.tag == SpaceTag::Square => {
                let [x, y] = ext.eval([e.coords[0], e.coords[1]])?;
                Ok(Point::Euclid(EuclidPoint {
                    coords: vec![x, y],
                    tag: SpaceTag::Square,
                }))
            }

            (DynamicalMap::PiecewiseLinear(pl), Point::Interval(t)) => {
                Ok(Point::Interval(pl.eval_exact(t)?))
            }
            (DynamicalMap::PiecewiseLinear(pl), Point::Euclid(e))
                if e.tag == SpaceTag::Interval =>
            {
                Ok(Point::Euclid(EuclidPoint {
                    coords: vec![pl.eval_f64(e.coords[0])?],
                    tag: SpaceTag::Interval,
                }))
            }

            (DynamicalMap::Rotation(Rotation::Exact(f)), Point::Circle(CirclePoint::Turn(a))) => {
                Ok(Point::Circle(CirclePoint::turn(a + f)))
            }
            (DynamicalMap::Rotation(rot), Point::Circle(c)) => {
                let delta = match rot {
                    Rotation::Exact(f) => rational::to_f64(f) * std::f64::consts::TAU,
                    Rotation::Numeric(a) => *a,
                };
                Ok(Point::Circle(CirclePoint::angle(c.radians() + delta)?))
            }
            (DynamicalMap::Rotation(rot), Point::Euclid(e)) if e.tag == SpaceTag::Circle => {
                let delta = match rot {
                    Rotation::Exact(f) => rational::to_f64(f) * std::f64::consts::TAU,
                    Rotation::Numeric(a) => *a,
                };
                Ok(Point::Euclid(EuclidPoint {
                    coords: vec![(e.coords[0] + delta).rem_euclid(std::f64::consts::TAU)],
                    tag: SpaceTag::Circle,
                }))
            }

            (DynamicalMap::Odometer { depth }, Point::Cantor(w)) => {
                if w.depth() != *depth {
                    return Err(Error::SpaceMismatch(format!(
                        "odometer depth {depth} vs word depth {}",
                        w.depth()
                    )));
                }
                let mut out = w.clone();
                for bit in out.bits_mut().iter_mut() {
                    if *bit {
                        *bit = false; // carry and continue
                    } else {
                        *bit = true;
                        break;
                    }
                }
                Ok(Point::Cantor(out))
            }

            (DynamicalMap::Product(ms), Point::Product(ps)) => {
                if ms.len() != ps.len() {
                    return Err(Error::SpaceMismatch(format!(
                        "product arities differ: map has {}, point has {}",
                        ms.len(),
                        ps.len()
                    )));
                }
                let images = ms
                    .iter()
                    .zip(ps)
                    .map(|(m, q)| m.eval(q))
                    .collect::<Result<Vec<Point>>>()?;
                Ok(Point::Product(images))
            }

            _ => Err(Error::SpaceMismatch(format!(
                "map {} cannot act on a {} point",
                self.describe(),
                p.space_desc()
            ))),
        }
    }

    /// Forward orbit `[p, f(p), ..., f^n(p)]`.
    pub fn orbit(&self, p: &Point, n: usize) -> Result<Orbit> {
        p.validate()?;
        let mut points = Vec::with_capacity(n + 1);
        points.push(p.clone());
        for _ in 0..n {
            let next = self.eval(points.last().expect("orbit is nonempty"))?;
            points.push(next);
        }
        Ok(Orbit {
            map_id: self.describe(),
            exact: self.exact_on(p),
            points,
        })
    }
}

/// A computed forward orbit together with its provenance.
#[derive(Clone, Debug)]
pub struct Orbit {
    /// Identifier of the generating map.
    pub map_id: String,
    /// True when every step was exact arithmetic.
    pub exact: bool,
    /// `points[j]` is the `j`-th iterate of the start point.
    pub points: Vec<Point>,
}

impl Orbit {
    pub fn start(&self) -> &Point {
        &self.points[0]
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}
