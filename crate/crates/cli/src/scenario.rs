//! Scenario files: the JSON input naming a map, a start point, estimation
//! parameters, and the checks to run against the result.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};

use omega_lab_core::rational::{self, Rational};
use omega_lab_core::{
    extend_by_identity, BallMap, DynamicalMap, Error, HausdorffTarget, IntegratorConfig,
    PiecewiseLinearSpec, Point,
};

/// Optional overrides of the default integrator tolerances.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegratorSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rel_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub abs_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_step: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub min_step: Option<f64>,
}

impl IntegratorSpec {
    pub fn build(&self) -> IntegratorConfig {
        let mut cfg = IntegratorConfig::default();
        if let Some(v) = self.rel_tol {
            cfg.rel_tol = v;
        }
        if let Some(v) = self.abs_tol {
            cfg.abs_tol = v;
        }
        if let Some(v) = self.max_step {
            cfg.max_step = v;
        }
        if let Some(v) = self.min_step {
            cfg.min_step = v;
        }
        cfg
    }
}

/// Declarative map description, turned into a [`DynamicalMap`] by `build`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MapSpec {
    DendriteF0,
    DiskTimeOne {
        #[serde(default)]
        integrator: IntegratorSpec,
    },
    Ball {
        dimension: usize,
        #[serde(default)]
        integrator: IntegratorSpec,
    },
    SquareExtension {
        center: [f64; 2],
        radius: f64,
        #[serde(default)]
        integrator: IntegratorSpec,
    },
    PiecewiseLinear {
        #[serde(with = "rational::serde_pair_vec")]
        breakpoints: Vec<(Rational, Rational)>,
    },
    /// Exactly one of `fraction` (exact turns) or `angle` (radians).
    Rotation {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        fraction: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        angle: Option<f64>,
    },
    Odometer {
        depth: usize,
    },
    Product {
        factors: Vec<MapSpec>,
    },
}

impl MapSpec {
    pub fn build(&self) -> omega_lab_core::Result<DynamicalMap> {
        match self {
            MapSpec::DendriteF0 => Ok(DynamicalMap::dendrite()),
            MapSpec::DiskTimeOne { integrator } => Ok(DynamicalMap::disk(integrator.build())),
            MapSpec::Ball {
                dimension,
                integrator,
            } => Ok(DynamicalMap::Ball(BallMap::new(
                *dimension,
                integrator.build(),
            )?)),
            MapSpec::SquareExtension {
                center,
                radius,
                integrator,
            } => Ok(DynamicalMap::Square(extend_by_identity(
                *center,
                *radius,
                integrator.build(),
            )?)),
            MapSpec::PiecewiseLinear { breakpoints } => Ok(DynamicalMap::PiecewiseLinear(
                PiecewiseLinearSpec::new(breakpoints.clone())?,
            )),
            MapSpec::Rotation { fraction, angle } => match (fraction, angle) {
                (Some(f), None) => Ok(DynamicalMap::rotation_exact(rational::parse(f)?)),
                (None, Some(a)) => DynamicalMap::rotation_numeric(*a),
                _ => Err(Error::Invalid(
                    "rotation needs exactly one of fraction or angle".into(),
                )),
            },
            MapSpec::Odometer { depth } => DynamicalMap::odometer(*depth),
            MapSpec::Product { factors } => {
                let built = factors
                    .iter()
                    .map(MapSpec::build)
                    .collect::<omega_lab_core::Result<Vec<_>>>()?;
                DynamicalMap::product(built)
            }
        }
    }
}

/// One named check. `name` selects the implementation in [`crate::checks`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "snake_case")]
pub enum CheckSpec {
    Thm12,
    Cor13 { n: u64 },
    Lemma23,
    DendriteCounterexample,
    DiskCoverage,
    Prop18,
    CantorNegative,
    S1Fixed,
    MonotoneR,
    ThetaRelation,
    SquareExtension,
}

impl CheckSpec {
    /// Wire name, also the key for `expect` entries.
    pub fn key(&self) -> &'static str {
        match self {
            CheckSpec::Thm12 => "thm12",
            CheckSpec::Cor13 { .. } => "cor13",
            CheckSpec::Lemma23 => "lemma23",
            CheckSpec::DendriteCounterexample => "dendrite_counterexample",
            CheckSpec::DiskCoverage => "disk_coverage",
            CheckSpec::Prop18 => "prop18",
            CheckSpec::CantorNegative => "cantor_negative",
            CheckSpec::S1Fixed => "s1_fixed",
            CheckSpec::MonotoneR => "monotone_r",
            CheckSpec::ThetaRelation => "theta_relation",
            CheckSpec::SquareExtension => "square_extension",
        }
    }

    /// Display name; disambiguates parameterized checks.
    pub fn label(&self) -> String {
        match self {
            CheckSpec::Cor13 { n } => format!("cor13[n={n}]"),
            other => other.key().to_string(),
        }
    }
}

/// Reference shape for the report-level Hausdorff distance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HausdorffTargetSpec {
    Segment { from: [f64; 2], to: [f64; 2] },
    Circle { center: [f64; 2], radius: f64 },
    Cloud { points: Vec<Point> },
}

impl HausdorffTargetSpec {
    pub fn build(&self) -> HausdorffTarget {
        match self {
            HausdorffTargetSpec::Segment { from, to } => HausdorffTarget::Segment {
                from: *from,
                to: *to,
            },
            HausdorffTargetSpec::Circle { center, radius } => HausdorffTarget::Circle {
                center: *center,
                radius: *radius,
            },
            HausdorffTargetSpec::Cloud { points } => HausdorffTarget::Cloud(points.clone()),
        }
    }
}

fn default_eps() -> f64 {
    0.05
}

fn default_n_max() -> u64 {
    1000
}

fn default_tol() -> f64 {
    1e-9
}

fn default_sampling() -> usize {
    4096
}

/// A full scenario: everything one `verify` run needs.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub id: String,
    pub map: MapSpec,
    pub start: Point,
    /// Number of iterations; the orbit then has `orbit_len + 1` points.
    pub orbit_len: usize,
    /// Leading orbit points dropped before estimating.
    #[serde(default)]
    pub burn_in: usize,
    /// Net resolution of the omega-limit estimate.
    #[serde(default = "default_eps")]
    pub eps_net: f64,
    /// Component resolution; defaults to `eps_net`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps_comp: Option<f64>,
    /// Iteration budget of the period search.
    #[serde(default = "default_n_max")]
    pub n_max: u64,
    /// Numeric tolerance for return detection (ignored on exact orbits).
    #[serde(default = "default_tol")]
    pub tol: f64,
    /// Discretization density for parametric Hausdorff targets.
    #[serde(default = "default_sampling")]
    pub sampling: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<CheckSpec>,
    /// Replaces the estimated cloud: the tail becomes this list and the net
    /// its greedy thinning. For fixtures with a hand-built limit set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub omega_override: Option<Vec<Point>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hausdorff_target: Option<HausdorffTargetSpec>,
    /// Expected verdict per check name; checks not listed here must pass.
    /// A check whose outcome matches its expectation counts as ok, so known
    /// failures can be pinned without turning the suite red.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub expect: BTreeMap<String, bool>,
}

impl ScenarioConfig {
    pub fn eps_comp(&self) -> f64 {
        self.eps_comp.unwrap_or(self.eps_net)
    }

    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let raw = fs::read_to_string(path)
            .with_context(|| format!("cannot read scenario {}", path.display()))?;
        let cfg: ScenarioConfig = serde_json::from_str(&raw)
            .with_context(|| format!("cannot parse scenario {}", path.display()))?;
        cfg.validate_shape()
            .with_context(|| format!("invalid scenario {}", path.display()))?;
        Ok(cfg)
    }

    /// Structural validation beyond what serde enforces. Deserialization
    /// bypasses the point constructors, so points are re-validated here.
    pub fn validate_shape(&self) -> anyhow::Result<()> {
        if self.id.is_empty() {
            bail!("id must be nonempty");
        }
        if !self
            .id
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-')
        {
            bail!("id {:?} must be alphanumeric with '_' or '-'", self.id);
        }
        if self.orbit_len == 0 {
            bail!("orbit_len must be >= 1");
        }
        self.start.validate().context("start point")?;
        if let Some(cloud) = &self.omega_override {
            if cloud.is_empty() {
                bail!("omega_override must be nonempty when present");
            }
            for (i, p) in cloud.iter().enumerate() {
                p.validate()
                    .with_context(|| format!("omega_override point {i}"))?;
            }
        }
        if let Some(HausdorffTargetSpec::Cloud { points }) = &self.hausdorff_target {
            if points.is_empty() {
                bail!("hausdorff_target cloud must be nonempty");
            }
            for (i, p) in points.iter().enumerate() {
                p.validate()
                    .with_context(|| format!("hausdorff_target point {i}"))?;
            }
        }
        let known: Vec<&str> = self.checks.iter().map(CheckSpec::key).collect();
        for key in self.expect.keys() {
            if !known.contains(&key.as_str()) {
                bail!("expect entry {key:?} does not match any listed check");
            }
        }
        // A scenario whose map cannot be built, or cannot act on its points,
        // can never take the first pipeline step: reject it at load time.
        let map = self.map.build().context("map")?;
        map.eval(&self.start).context("start point")?;
        if let Some(cloud) = &self.omega_override {
            for (i, p) in cloud.iter().enumerate() {
                map.eval(p)
                    .with_context(|| format!("omega_override point {i}"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn minimal(extra: &str) -> String {
        format!(
            r#"{{
                "id": "t",
                "map": {{ "kind": "rotation", "fraction": "1/4" }},
                "start": {{ "circle": {{ "turn": "0" }} }},
                "orbit_len": 8{extra}
            }}"#
        )
    }

    #[test]
    fn minimal_scenario_fills_defaults() {
        let cfg: ScenarioConfig = serde_json::from_str(&minimal("")).unwrap();
        cfg.validate_shape().unwrap();
        assert_eq!(cfg.burn_in, 0);
        assert_eq!(cfg.eps_net, 0.05);
        assert_eq!(cfg.eps_comp(), 0.05);
        assert_eq!(cfg.n_max, 1000);
        assert_eq!(cfg.tol, 1e-9);
        assert_eq!(cfg.sampling, 4096);
        assert!(cfg.checks.is_empty());
        assert!(cfg.expect.is_empty());
    }

    #[test]
    fn check_names_round_trip() {
        let specs: Vec<CheckSpec> = serde_json::from_str(
            r#"[
                {"name": "thm12"},
                {"name": "cor13", "n": 5},
                {"name": "lemma23"},
                {"name": "dendrite_counterexample"},
                {"name": "disk_coverage"},
                {"name": "prop18"},
                {"name": "cantor_negative"},
                {"name": "s1_fixed"},
                {"name": "monotone_r"},
                {"name": "theta_relation"},
                {"name": "square_extension"}
            ]"#,
        )
        .unwrap();
        assert_eq!(specs.len(), 11);
        assert_eq!(specs[1], CheckSpec::Cor13 { n: 5 });
        for s in &specs {
            let json = serde_json::to_string(s).unwrap();
            let back: CheckSpec = serde_json::from_str(&json).unwrap();
            assert_eq!(&back, s);
        }
    }

    #[test]
    fn map_specs_build() {
        let rot: MapSpec =
            serde_json::from_str(r#"{ "kind": "rotation", "fraction": "2/6" }"#).unwrap();
        assert_eq!(rot.build().unwrap().describe(), "rotation(1/3)");

        let pl: MapSpec = serde_json::from_str(
            r#"{ "kind": "piecewise_linear",
                 "breakpoints": [["0","1/2"],["1/2","1"],["1","0"]] }"#,
        )
        .unwrap();
        assert_eq!(pl.build().unwrap().describe(), "piecewise_linear(3 nodes)");

        let ball: MapSpec = serde_json::from_str(r#"{ "kind": "ball", "dimension": 3 }"#).unwrap();
        assert_eq!(ball.build().unwrap().describe(), "ball(3)");

        let both: MapSpec =
            serde_json::from_str(r#"{ "kind": "rotation", "fraction": "1/2", "angle": 0.5 }"#)
                .unwrap();
        assert!(both.build().is_err());
        let neither: MapSpec = serde_json::from_str(r#"{ "kind": "rotation" }"#).unwrap();
        assert!(neither.build().is_err());
    }

    #[test]
    fn bad_configs_are_rejected() {
        let zero_len: ScenarioConfig =
            serde_json::from_str(&minimal("").replace("\"orbit_len\": 8", "\"orbit_len\": 0"))
                .unwrap();
        assert!(zero_len.validate_shape().is_err());

        let bad_expect: ScenarioConfig = serde_json::from_str(&minimal(
            r#", "checks": [{"name": "thm12"}], "expect": {"thm13": false}"#,
        ))
        .unwrap();
        assert!(bad_expect.validate_shape().is_err());

        let unknown_field = minimal(r#", "unknown_knob": 1"#);
        assert!(serde_json::from_str::<ScenarioConfig>(&unknown_field).is_err());

        let bad_point = r#"{
            "id": "t",
            "map": { "kind": "disk_time_one" },
            "start": { "euclid": { "coords": [2.0, 0.0], "tag": "disk" } },
            "orbit_len": 4
        }"#;
        let cfg: ScenarioConfig = serde_json::from_str(bad_point).unwrap();
        assert!(cfg.validate_shape().is_err());

        let wrong_space = r#"{
            "id": "t",
            "map": { "kind": "rotation", "fraction": "1/3" },
            "start": { "interval": "1/2" },
            "orbit_len": 4
        }"#;
        let cfg: ScenarioConfig = serde_json::from_str(wrong_space).unwrap();
        assert!(cfg.validate_shape().is_err());
    }

    #[test]
    fn integrator_spec_overrides_defaults() {
        let spec: IntegratorSpec = serde_json::from_str(r#"{ "max_step": 0.5 }"#).unwrap();
        let cfg = spec.build();
        assert_eq!(cfg.max_step, 0.5);
        assert_eq!(cfg.rel_tol, IntegratorConfig::default().rel_tol);
    }
}
