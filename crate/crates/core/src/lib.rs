//! Dynamics laboratory core: exact points on dendrites, intervals, circles,
//! Cantor space and their products, floating-point dynamics on disks, balls
//! and squares, plus omega-limit estimation and quotient-cycle analysis.
//!
//! The crate is organised bottom-up:
//!
//! * [`rational`]: arbitrary-precision rational scalars and their wire format;
//! * [`spaces`]: point representations, metrics and validity checks;
//! * [`dendrite`]: the anchored-arc dendrite and its arc-shift map;
//! * [`flows`]: a planar radial flow, its adaptive integrator, and the
//!   time-one maps built from it (disk, ball suspensions, square extension);
//! * [`dynamics`]: the uniform map interface and orbit generation;
//! * [`omega`]: omega-limit estimates, epsilon-components, induced quotient
//!   maps, periodicity certificates and Hausdorff comparisons.

// NaN must take the failure branch of every threshold test, so negated
// comparisons like `!(x >= y)` are used on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dendrite;
pub mod dynamics;
pub mod error;
pub mod flows;
pub mod omega;
pub mod rational;
pub mod spaces;

pub use dendrite::{arc_tip, F0Map};
pub use dynamics::{DynamicalMap, Orbit, PiecewiseLinearSpec, Rotation};
pub use error::{Error, Result};
pub use flows::{
    ball_suspend, disk_time_one, extend_by_identity, flow, phi_bump, radial_derivatives,
    radial_long_horizon, theta_from_radius, BallMap, IntegratorConfig, RadialState,
    SquareExtension,
};
pub use omega::{
    classify_totally_periodic, components, detect_periodic, hausdorff, induced_map, omega_estimate,
    sharkovsky_check, verify_cycle, Classification, ComponentPartition, CycleReport,
    HausdorffTarget, InducedMap, OmegaEstimate, PeriodReport, SharkovskyReport, Straddle,
};
pub use rational::Rational;
pub use spaces::{
    dendrite_anchor, dendrite_anchor_f64, dendrite_embed, dendrite_embed_exact, dist, level_of,
    CantorWord, CirclePoint, DendritePoint, EuclidPoint, Point, SpaceTag,
};
