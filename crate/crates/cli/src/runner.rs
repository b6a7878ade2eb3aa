//! The verification pipeline: orbit, omega estimate, components, induced
//! map, cycle check, classification, then the scenario's checks.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context};
use rayon::prelude::*;

use omega_lab_core::{
    classify_totally_periodic, components, dendrite_embed, hausdorff, induced_map, omega_estimate,
    verify_cycle, Classification, ComponentPartition, CycleReport, DynamicalMap, InducedMap,
    OmegaEstimate, Orbit, Point,
};

use crate::checks;
use crate::report::{CheckResult, CycleSummary, VerificationReport};
use crate::scenario::ScenarioConfig;

/// Every intermediate the pipeline produced. Later stages are `None` when an
/// earlier one failed; the first failure lands in `error`.
#[derive(Debug, Default)]
pub struct StageOutputs {
    pub map: Option<DynamicalMap>,
    pub orbit: Option<Orbit>,
    pub estimate: Option<OmegaEstimate>,
    pub partition: Option<ComponentPartition>,
    pub induced: Option<InducedMap>,
    pub cycle: Option<CycleReport>,
    pub classification: Option<Classification>,
    pub hausdorff_to_target: Option<f64>,
    pub error: Option<String>,
}

/// Dendrite points embed to the plane for cloud-vs-shape comparisons; other
/// points pass through.
fn embed_planar(cloud: &[Point]) -> Vec<Point> {
    cloud
        .iter()
        .map(|p| match p {
            Point::Dendrite(d) => Point::Euclid(dendrite_embed(d)),
            other => other.clone(),
        })
        .collect()
}

/// Run the pipeline stages, capturing the first failure instead of
/// propagating it: a broken stage must still produce a report.
pub fn run_stages(cfg: &ScenarioConfig) -> StageOutputs {
    let mut st = StageOutputs::default();

    let map = match cfg.map.build() {
        Ok(m) => m,
        Err(e) => {
            st.error = Some(format!("map: {e}"));
            return st;
        }
    };

    let orbit = match map.orbit(&cfg.start, cfg.orbit_len) {
        Ok(o) => o,
        Err(e) => {
            st.map = Some(map);
            st.error = Some(format!("orbit: {e}"));
            return st;
        }
    };
    st.orbit = Some(orbit);

    // The override replaces the estimated cloud: its points become the tail
    // and the net is their greedy thinning, so downstream stages treat a
    // hand-built limit set exactly like an estimated one.
    let est_input = match &cfg.omega_override {
        Some(cloud) => Orbit {
            map_id: map.describe(),
            exact: cloud.iter().all(Point::is_exact),
            points: cloud.clone(),
        },
        None => st.orbit.as_ref().expect("orbit stage just ran").clone(),
    };
    let burn_in = if cfg.omega_override.is_some() {
        0
    } else {
        cfg.burn_in
    };
    let est = match omega_estimate(&est_input, burn_in, cfg.eps_net) {
        Ok(e) => e,
        Err(e) => {
            st.map = Some(map);
            st.error = Some(format!("omega estimate: {e}"));
            return st;
        }
    };
    st.estimate = Some(est);

    let part = match components(
        &st.estimate.as_ref().expect("set above").net,
        cfg.eps_comp(),
    ) {
        Ok(p) => p,
        Err(e) => {
            st.map = Some(map);
            st.error = Some(format!("components: {e}"));
            return st;
        }
    };
    st.partition = Some(part);

    let ind = match induced_map(
        &map,
        st.partition.as_ref().expect("set above"),
        cfg.eps_comp(),
    ) {
        Ok(i) => i,
        Err(e) => {
            st.map = Some(map);
            st.error = Some(format!("induced map: {e}"));
            return st;
        }
    };
    st.cycle = Some(verify_cycle(&ind));
    st.induced = Some(ind);

    match classify_totally_periodic(
        &map,
        st.estimate.as_ref().expect("set above"),
        cfg.n_max,
        cfg.tol,
    ) {
        Ok(c) => st.classification = Some(c),
        Err(e) => {
            st.map = Some(map);
            st.error = Some(format!("classification: {e}"));
            return st;
        }
    }

    if let Some(target) = &cfg.hausdorff_target {
        let cloud = embed_planar(&st.estimate.as_ref().expect("set above").net);
        match hausdorff(&cloud, &target.build(), cfg.sampling) {
            Ok(d) => st.hausdorff_to_target = Some(d),
            Err(e) => {
                st.map = Some(map);
                st.error = Some(format!("hausdorff: {e}"));
                return st;
            }
        }
    }

    st.map = Some(map);
    st
}

/// Assemble the report from pipeline outputs and check verdicts.
pub fn assemble_report(
    cfg: &ScenarioConfig,
    st: &StageOutputs,
    wall_time_ms: Option<f64>,
) -> VerificationReport {
    let mut results = Vec::with_capacity(cfg.checks.len());
    for spec in &cfg.checks {
        let (pass, witness) = checks::run_check(spec, cfg, st);
        let expected = cfg.expect.get(spec.key()).copied().unwrap_or(true);
        results.push(CheckResult {
            name: spec.label(),
            pass,
            expected,
            ok: pass == expected,
            witness,
        });
    }
    VerificationReport {
        scenario: cfg.id.clone(),
        map: st
            .map
            .as_ref()
            .map(DynamicalMap::describe)
            .unwrap_or_else(|| "unbuilt".into()),
        orbit_len: cfg.orbit_len,
        exact_orbit: st.orbit.as_ref().map(|o| o.exact),
        omega_size: st.estimate.as_ref().map(|e| e.net.len()),
        tail_size: st.estimate.as_ref().map(|e| e.tail.len()),
        component_count: st.partition.as_ref().map(|p| p.count),
        induced_well_defined: st.induced.as_ref().map(|i| i.well_defined),
        cycle: st.cycle.as_ref().map(|c| CycleSummary {
            is_single_cycle: c.is_single_cycle,
            cycle_length: c.cycle_length,
            witness: c.witness.clone(),
        }),
        classification: st.classification.clone(),
        hausdorff_to_target: st.hausdorff_to_target,
        checks: results,
        error: st.error.clone(),
        wall_time_ms,
    }
}

/// Run one scenario end to end.
pub fn run_scenario(cfg: &ScenarioConfig, timing: bool) -> VerificationReport {
    let t0 = Instant::now();
    let st = run_stages(cfg);
    let wall = timing.then(|| t0.elapsed().as_secs_f64() * 1e3);
    assemble_report(cfg, &st, wall)
}

/// All scenario JSONs of a directory, sorted by file name.
pub fn scenario_files(dir: &Path) -> anyhow::Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("cannot read scenario directory {}", dir.display()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
        .collect();
    files.sort();
    if files.is_empty() {
        bail!("no scenario files (*.json) in {}", dir.display());
    }
    Ok(files)
}

/// Load and run every scenario in the directory. Scenarios run in parallel;
/// the returned reports keep the sorted file order.
pub fn run_suite(dir: &Path, timing: bool) -> anyhow::Result<Vec<VerificationReport>> {
    let files = scenario_files(dir)?;
    let cfgs: Vec<ScenarioConfig> = files
        .iter()
        .map(|p| ScenarioConfig::load(p))
        .collect::<anyhow::Result<_>>()?;
    let mut ids: Vec<&str> = cfgs.iter().map(|c| c.id.as_str()).collect();
    ids.sort_unstable();
    for w in ids.windows(2) {
        if w[0] == w[1] {
            bail!("duplicate scenario id {:?}", w[0]);
        }
    }
    Ok(cfgs
        .par_iter()
        .map(|cfg| run_scenario(cfg, timing))
        .collect())
}
