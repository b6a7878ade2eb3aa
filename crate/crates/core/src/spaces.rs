//! Point representations for every space the laboratory works on, together
//! with the metric and validity checks.
//!
//! Exact spaces (dendrite, rational interval points, rational circle turns,
//! Cantor words, and products of exact factors) carry arbitrary-precision
//! coordinates so orbits can be iterated with zero arithmetic error.
//! Floating-point spaces (disk, balls, square, and numeric interval/circle
//! coordinates) carry `f64` coordinate vectors tagged with the space they
//! live in.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Tag identifying which floating-point space a coordinate vector lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpaceTag {
    /// `[0, 1]`, one coordinate.
    Interval,
    /// Circle as an angle in radians, one coordinate in `[0, 2*pi)`.
    Circle,
    /// Closed unit disk in the plane, two coordinates with norm `<= 1`.
    Disk,
    /// Closed unit ball in the given dimension.
    Ball(usize),
    /// Unit square `[0, 1]^2`, two coordinates.
    Square,
}

impl SpaceTag {
    /// Number of coordinates a point of this space carries.
    pub fn arity(self) -> usize {
        match self {
            SpaceTag::Interval | SpaceTag::Circle => 1,
            SpaceTag::Disk | SpaceTag::Square => 2,
            SpaceTag::Ball(n) => n,
        }
    }
}

/// Floating-point point: coordinates plus the tag of the ambient space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EuclidPoint {
    pub coords: Vec<f64>,
    pub tag: SpaceTag,
}

impl EuclidPoint {
    pub fn new(coords: Vec<f64>, tag: SpaceTag) -> Result<Self> {
        let p = EuclidPoint { coords, tag };
        p.validate()?;
        Ok(p)
    }

    pub fn disk(x: f64, y: f64) -> Result<Self> {
        EuclidPoint::new(vec![x, y], SpaceTag::Disk)
    }

    pub fn square(x: f64, y: f64) -> Result<Self> {
        EuclidPoint::new(vec![x, y], SpaceTag::Square)
    }

    pub fn ball(coords: Vec<f64>) -> Result<Self> {
        let tag = SpaceTag::Ball(coords.len());
        EuclidPoint::new(coords, tag)
    }

    /// Euclidean norm of the coordinate vector.
    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn validate(&self) -> Result<()> {
        if self.coords.len() != self.tag.arity() {
            return Err(Error::Invalid(format!(
                "{:?} point needs {} coordinates, got {}",
                self.tag,
                self.tag.arity(),
                self.coords.len()
            )));
        }
        if self.coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::Domain("non-finite coordinate".into()));
        }
        match self.tag {
            SpaceTag::Interval => {
                let x = self.coords[0];
                if !(0.0..=1.0).contains(&x) {
                    return Err(Error::Domain(format!(
                        "interval coordinate {x} outside [0,1]"
                    )));
                }
            }
            SpaceTag::Circle => {
                let a = self.coords[0];
                if !(0.0..std::f64::consts::TAU).contains(&a) {
                    return Err(Error::Domain(format!("angle {a} outside [0, 2pi)")));
                }
            }
            SpaceTag::Disk | SpaceTag::Ball(_) => {
                // Tolerate norm overshoot by a few ulps from upstream trig.
                if self.norm() > 1.0 + 1e-12 {
                    return Err(Error::Domain(format!(
                        "norm {} exceeds 1 for {:?} point",
                        self.norm(),
                        self.tag
                    )));
                }
            }
            SpaceTag::Square => {
                for &c in &self.coords {
                    if !(0.0..=1.0).contains(&c) {
                        return Err(Error::Domain(format!(
                            "square coordinate {c} outside [0,1]"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Point of the anchored-arc dendrite: either on the baseline segment
/// `[0,1] x {0}` or at a positive height on the arc attached at anchor `k`.
///
/// Height 0 on arc `k` is identified with the arc's baseline anchor, so the
/// `Arc` variant keeps `0 < height <= 1/level(k)` and representations stay
/// canonical (structural equality is point equality).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DendritePoint {
    Baseline(#[serde(with = "crate::rational::serde_str")] Rational),
    Arc {
        k: u64,
        #[serde(with = "crate::rational::serde_str")]
        height: Rational,
    },
}

impl DendritePoint {
    /// Baseline point at parameter `t in [0,1]`.
    pub fn baseline(t: Rational) -> Result<Self> {
        if !rational::in_unit_interval(&t) {
            return Err(Error::Domain(format!(
                "baseline parameter {t} outside [0,1]"
            )));
        }
        Ok(DendritePoint::Baseline(t))
    }

    /// Point at `height` on the arc anchored at `a_k`; height 0 collapses to
    /// the anchor on the baseline.
    pub fn arc(k: u64, height: Rational) -> Result<Self> {
        use num_traits::Signed;
        if k == 0 {
            return Err(Error::Domain("arc index k must be >= 1".into()));
        }
        if height.is_negative() {
            return Err(Error::Domain(format!("arc height {height} negative")));
        }
        let cap = rational::rat_int(1) / rational::rat_int(level_of(k) as i64);
        if height > cap {
            return Err(Error::Domain(format!(
                "arc height {height} exceeds arc length {cap} at k={k}"
            )));
        }
        if height == rational::rat_int(0) {
            Ok(DendritePoint::Baseline(dendrite_anchor(k)))
        } else {
            Ok(DendritePoint::Arc { k, height })
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            DendritePoint::Baseline(t) => {
                if !rational::in_unit_interval(t) {
                    return Err(Error::Domain(format!(
                        "baseline parameter {t} outside [0,1]"
                    )));
                }
            }
            DendritePoint::Arc { k, height } => {
                use num_traits::Signed;
                if *k == 0 {
                    return Err(Error::Domain("arc index k must be >= 1".into()));
                }
                let cap = rational::rat_int(1) / rational::rat_int(level_of(*k) as i64);
                if height.is_negative() || height == &rational::rat_int(0) || height > &cap {
                    return Err(Error::Domain(format!(
                        "arc height {height} outside (0, {cap}] at k={k}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Circle point, exact (fraction of a full turn) or numeric (radians).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CirclePoint {
    /// Fraction of a full turn, reduced into `[0, 1)`.
    Turn(#[serde(with = "crate::rational::serde_str")] Rational),
    /// Angle in radians in `[0, 2*pi)`.
    Angle(f64),
}

impl CirclePoint {
    /// Exact turn, reduced modulo 1.
    pub fn turn(f: Rational) -> Self {
        CirclePoint::Turn(rational::mod_one(&f))
    }

    /// Numeric angle, reduced modulo `2*pi`.
    pub fn angle(a: f64) -> Result<Self> {
        if !a.is_finite() {
            return Err(Error::Domain("non-finite angle".into()));
        }
        Ok(CirclePoint::Angle(a.rem_euclid(std::f64::consts::TAU)))
    }

    /// Radian value of the point.
    pub fn radians(&self) -> f64 {
        match self {
            CirclePoint::Turn(f) => rational::to_f64(f) * std::f64::consts::TAU,
            CirclePoint::Angle(a) => *a,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            CirclePoint::Turn(f) => {
                use num_traits::Signed;
                if f.is_negative() || f >= &rational::rat_int(1) {
                    return Err(Error::Domain(format!("turn {f} outside [0,1)")));
                }
            }
            CirclePoint::Angle(a) => {
                if !(0.0..std::f64::consts::TAU).contains(a) {
                    return Err(Error::Domain(format!("angle {a} outside [0, 2pi)")));
                }
            }
        }
        Ok(())
    }
}

/// Finite binary word; index 0 is the lowest digit of the odometer and the
/// closest-matching digit dominates the metric.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CantorWord {
    bits: Vec<bool>,
}

impl CantorWord {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::Invalid(
                "Cantor word must have positive depth".into(),
            ));
        }
        Ok(CantorWord { bits })
    }

    /// The all-zeros word of the given depth.
    pub fn zeros(depth: usize) -> Result<Self> {
        CantorWord::new(vec![false; depth])
    }

    /// Parse from a string of `0`/`1` digits, index 0 first.
    pub fn parse(s: &str) -> Result<Self> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Invalid(format!("bad Cantor digit {other:?}"))),
            })
            .collect::<Result<Vec<bool>>>()?;
        CantorWord::new(bits)
    }

    pub fn depth(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn bits_mut(&mut self) -> &mut Vec<bool> {
        &mut self.bits
    }

    /// `2^-(i+1)` where `i` is the first differing index; 0 when equal.
    /// Errors when depths differ.
    pub fn dist(&self, other: &CantorWord) -> Result<f64> {
        if self.depth() != other.depth() {
            return Err(Error::SpaceMismatch(format!(
                "Cantor depths differ: {} vs {}",
                self.depth(),
                other.depth()
            )));
        }
        for (i, (a, b)) in self.bits.iter().zip(&other.bits).enumerate() {
            if a != b {
                return Ok(2f64.powi(-(i as i32 + 1)));
            }
        }
        Ok(0.0)
    }
}

impl std::fmt::Display for CantorWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl Serialize for CantorWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CantorWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = String::deserialize(d)?;
        CantorWord::parse(&raw).map_err(serde::de::Error::custom)
    }
}

/// A point in any of the supported spaces.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Point {
    Dendrite(DendritePoint),
    /// Exact interval point in `[0,1]`.
    Interval(#[serde(with = "crate::rational::serde_str")] Rational),
    Circle(CirclePoint),
    Euclid(EuclidPoint),
    Cantor(CantorWord),
    /// Product of at least two factors; metric is the max of factor metrics.
    Product(Vec<Point>),
}

impl Point {
    pub fn interval(t: Rational) -> Result<Self> {
        if !rational::in_unit_interval(&t) {
            return Err(Error::Domain(format!("interval point {t} outside [0,1]")));
        }
        Ok(Point::Interval(t))
    }

    pub fn product(factors: Vec<Point>) -> Result<Self> {
        if factors.len() < 2 {
            return Err(Error::Invalid("product needs at least two factors".into()));
        }
        Ok(Point::Product(factors))
    }

    /// Full recursive invariant check. Deserialized points must pass through
    /// this before use, since serde bypasses the constructors.
    pub fn validate(&self) -> Result<()> {
        match self {
            Point::Dendrite(p) => p.validate(),
            Point::Interval(t) => {
                if rational::in_unit_interval(t) {
                    Ok(())
                } else {
                    Err(Error::Domain(format!("interval point {t} outside [0,1]")))
                }
            }
            Point::Circle(c) => c.validate(),
            Point::Euclid(e) => e.validate(),
            Point::Cantor(w) => {
                if w.depth() == 0 {
                    Err(Error::Invalid(
                        "Cantor word must have positive depth".into(),
                    ))
                } else {
                    Ok(())
                }
            }
            Point::Product(fs) => {
                if fs.len() < 2 {
                    return Err(Error::Invalid("product needs at least two factors".into()));
                }
                fs.iter().try_for_each(Point::validate)
            }
        }
    }

    /// True when the representation supports exact equality (no floats).
    pub fn is_exact(&self) -> bool {
        match self {
            Point::Dendrite(_) | Point::Interval(_) | Point::Cantor(_) => true,
            Point::Circle(CirclePoint::Turn(_)) => true,
            Point::Circle(CirclePoint::Angle(_)) | Point::Euclid(_) => false,
            Point::Product(fs) => fs.iter().all(Point::is_exact),
        }
    }

    /// Short description of the ambient space, for error messages.
    pub fn space_desc(&self) -> String {
        match self {
            Point::Dendrite(_) => "dendrite".into(),
            Point::Interval(_) => "interval".into(),
            Point::Circle(_) => "circle".into(),
            Point::Euclid(e) => format!("{:?}", e.tag).to_lowercase(),
            Point::Cantor(w) => format!("cantor({})", w.depth()),
            Point::Product(fs) => {
                let inner: Vec<String> = fs.iter().map(Point::space_desc).collect();
                format!("product({})", inner.join(", "))
            }
        }
    }

    /// Flat coordinate vector for CSV dumps and plotting: dendrite points are
    /// embedded in the plane, circle points become radians, Cantor words
    /// become the real value of their binary expansion, products concatenate.
    pub fn dump_coords(&self) -> Vec<f64> {
        match self {
            Point::Dendrite(p) => {
                let e = dendrite_embed(p);
                e.coords
            }
            Point::Interval(t) => vec![rational::to_f64(t)],
            Point::Circle(c) => vec![c.radians()],
            Point::Euclid(e) => e.coords.clone(),
            Point::Cantor(w) => {
                let mut v = 0.0;
                for (i, &b) in w.bits().iter().enumerate() {
                    if b {
                        v += 2f64.powi(-(i as i32 + 1));
                    }
                }
                vec![v]
            }
            Point::Product(fs) => fs.iter().flat_map(|f| f.dump_coords()).collect(),
        }
    }
}

/// Level of arc index `k >= 1`: the unique `n` with `2^(n-1) <= k < 2^n`.
///
/// Panics on `k == 0`, which no valid construction produces.
pub fn level_of(k: u64) -> u32 {
    assert!(k >= 1, "arc index must be >= 1");
    64 - k.leading_zeros()
}

/// Anchor position `a_k` of arc `k`: the `k`-th element of the dyadic
/// enumeration that walks level `n` (odd numerators over `2^n`) left to
/// right for even `n` and right to left for odd `n`.
pub fn dendrite_anchor(k: u64) -> Rational {
    let n = level_of(k);
    let offset = k - (1u64 << (n - 1));
    let numer: u64 = if n.is_multiple_of(2) {
        2 * offset + 1
    } else {
        (1u64 << n) - 1 - 2 * offset
    };
    Rational::new(
        num_bigint::BigInt::from(numer),
        num_bigint::BigInt::from(1u64) << n,
    )
}

/// Anchor position as a double, computed without big-integer arithmetic.
/// Exact for every level up to 52 (dyadics are representable).
pub fn dendrite_anchor_f64(k: u64) -> f64 {
    let n = level_of(k);
    let offset = k - (1u64 << (n - 1));
    let numer: u64 = if n.is_multiple_of(2) {
        2 * offset + 1
    } else {
        (1u64 << n) - 1 - 2 * offset
    };
    numer as f64 * 2f64.powi(-(n as i32))
}

/// Planar embedding of the dendrite: baseline along `[0,1] x {0}`, arcs
/// rising vertically from their anchors.
pub fn dendrite_embed(p: &DendritePoint) -> EuclidPoint {
    match p {
        DendritePoint::Baseline(t) => EuclidPoint {
            coords: vec![rational::to_f64(t), 0.0],
            tag: SpaceTag::Square,
        },
        DendritePoint::Arc { k, height } => EuclidPoint {
            coords: vec![dendrite_anchor_f64(*k), rational::to_f64(height)],
            tag: SpaceTag::Square,
        },
    }
}

/// Exact planar embedding, for tests that must avoid rounding.
pub fn dendrite_embed_exact(p: &DendritePoint) -> (Rational, Rational) {
    match p {
        DendritePoint::Baseline(t) => (t.clone(), rational::rat_int(0)),
        DendritePoint::Arc { k, height } => (dendrite_anchor(*k), height.clone()),
    }
}

// Hot path: pairwise distances dominate net construction, so this embeds in
// f64 directly instead of going through exact coordinates. Anchors are dyadic
// and embed exactly; heights round once.
fn dendrite_dist(p: &DendritePoint, q: &DendritePoint) -> f64 {
    let (px, py) = dendrite_embed_f64(p);
    let (qx, qy) = dendrite_embed_f64(q);
    let dx = px - qx;
    let dy = py - qy;
    (dx * dx + dy * dy).sqrt()
}

fn dendrite_embed_f64(p: &DendritePoint) -> (f64, f64) {
    match p {
        DendritePoint::Baseline(t) => (rational::to_f64(t), 0.0),
        DendritePoint::Arc { k, height } => (dendrite_anchor_f64(*k), rational::to_f64(height)),
    }
}

fn circle_angle_dist(a: f64, b: f64) -> f64 {
    let tau = std::f64::consts::TAU;
    let d = (a - b).rem_euclid(tau);
    d.min(tau - d)
}

fn circle_dist(p: &CirclePoint, q: &CirclePoint) -> f64 {
    match (p, q) {
        (CirclePoint::Turn(a), CirclePoint::Turn(b)) => {
            // Exact turn difference, folded into [0, 1/2], then scaled.
            let d = rational::mod_one(&(a - b));
            let folded = if d > rational::rat(1, 2) {
                rational::rat_int(1) - d
            } else {
                d
            };
            rational::to_f64(&folded) * std::f64::consts::TAU
        }
        _ => circle_angle_dist(p.radians(), q.radians()),
    }
}

fn euclid_dist(p: &EuclidPoint, q: &EuclidPoint) -> Result<f64> {
    if p.tag != q.tag {
        return Err(Error::SpaceMismatch(format!(
            "{:?} vs {:?} coordinates",
            p.tag, q.tag
        )));
    }
    if p.tag == SpaceTag::Circle {
        return Ok(circle_angle_dist(p.coords[0], q.coords[0]));
    }
    Ok(p.coords
        .iter()
        .zip(&q.coords)
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt())
}

/// Metric on points. Interval and circle representations subtract exactly
/// before the one final rounding to `f64`; dendrite points embed to the plane
/// (anchors exactly, heights rounded once); mixed exact/numeric pairs inside
/// the same space fall back to numeric coordinates. Points of different
/// spaces are an error, never a silent large distance.
pub fn dist(p: &Point, q: &Point) -> Result<f64> {
    match (p, q) {
        (Point::Dendrite(a), Point::Dendrite(b)) => Ok(dendrite_dist(a, b)),
        (Point::Interval(a), Point::Interval(b)) => {
            let d = a - b;
            Ok(rational::to_f64(&d).abs())
        }
        (Point::Interval(a), Point::Euclid(e)) | (Point::Euclid(e), Point::Interval(a))
            if e.tag == SpaceTag::Interval =>
        {
            Ok((rational::to_f64(a) - e.coords[0]).abs())
        }
        (Point::Circle(a), Point::Circle(b)) => Ok(circle_dist(a, b)),
        (Point::Circle(a), Point::Euclid(e)) | (Point::Euclid(e), Point::Circle(a))
            if e.tag == SpaceTag::Circle =>
        {
            Ok(circle_angle_dist(a.radians(), e.coords[0]))
        }
        (Point::Euclid(a), Point::Euclid(b)) => euclid_dist(a, b),
        (Point::Cantor(a), Point::Cantor(b)) => a.dist(b),
        (Point::Product(a), Point::Product(b)) => {
            if a.len() != b.len() {
                return Err(Error::SpaceMismatch(format!(
                    "product arities differ: {} vs {}",
                    a.len(),
                    b.len()
                )));
            }
            let mut worst = 0f64;
            for (x, y) in a.iter().zip(b) {
                worst = worst.max(dist(x, y)?);
            }
            Ok(worst)
        }
        _ => Err(Error::SpaceMismatch(format!(
            "{} vs {}",
            p.space_desc(),
            q.space_desc()
        ))),
    }
}
