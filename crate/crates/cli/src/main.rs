use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Parser, Subcommand};

use omega_lab_cli::report::{points_to_csv, VerificationReport};
use omega_lab_cli::runner;
use omega_lab_cli::scenario::ScenarioConfig;
use omega_lab_core::{components, omega_estimate};

#[derive(Parser)]
#[command(
    name = "omega-lab",
    version,
    about = "Omega-limit set laboratory: orbits, estimates, component dynamics, verification"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute a forward orbit and summarize it.
    Orbit {
        /// Scenario JSON file.
        scenario: PathBuf,
        /// Override the scenario's orbit length.
        #[arg(long)]
        len: Option<usize>,
        /// Write the orbit as CSV (index,coord0,...).
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Estimate the omega-limit set: orbit tail plus epsilon-net.
    Omega {
        scenario: PathBuf,
        /// Override the net resolution.
        #[arg(long)]
        eps: Option<f64>,
        /// Write the net as CSV.
        #[arg(long)]
        dump: Option<PathBuf>,
    },
    /// Split the estimated set into epsilon-components.
    Components {
        scenario: PathBuf,
        /// Override both the net and component resolution.
        #[arg(long)]
        eps: Option<f64>,
    },
    /// Run the full pipeline and the scenario's checks; emit a report.
    Verify {
        scenario: PathBuf,
        /// Write the report JSON here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the estimated net as CSV.
        #[arg(long)]
        dump: Option<PathBuf>,
        /// Override the period-search budget.
        #[arg(long)]
        n_max: Option<u64>,
        /// Override both the net and component resolution.
        #[arg(long)]
        eps: Option<f64>,
        /// Omit wall-clock timing so reports are byte-stable.
        #[arg(long)]
        no_timing: bool,
    },
    /// Verify every scenario JSON in a directory (in parallel).
    Suite {
        dir: PathBuf,
        /// Directory for per-scenario reports (default: <dir>/reports).
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Omit wall-clock timing so reports are byte-stable.
        #[arg(long)]
        no_timing: bool,
    },
}

fn main() {
    match real_main(Cli::parse()) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(2);
        }
    }
}

fn real_main(cli: Cli) -> anyhow::Result<i32> {
    match cli.cmd {
        Cmd::Orbit {
            scenario,
            len,
            dump,
        } => {
            let mut cfg = ScenarioConfig::load(&scenario)?;
            if let Some(n) = len {
                cfg.orbit_len = n;
                cfg.validate_shape()?;
            }
            let map = cfg.map.build().context("building map")?;
            let orbit = map
                .orbit(&cfg.start, cfg.orbit_len)
                .context("computing orbit")?;
            println!("scenario {}: map {}", cfg.id, map.describe());
            println!(
                "orbit: {} points, {}",
                orbit.len(),
                if orbit.exact { "exact" } else { "numeric" }
            );
            println!("start: {}", serde_json::to_string(orbit.start())?);
            println!(
                "end:   {}",
                serde_json::to_string(orbit.points.last().expect("orbit nonempty"))?
            );
            if let Some(path) = dump {
                write_text(&path, &points_to_csv(&orbit.points))?;
                println!("orbit csv written to {}", path.display());
            }
            Ok(0)
        }
        Cmd::Omega {
            scenario,
            eps,
            dump,
        } => {
            let mut cfg = ScenarioConfig::load(&scenario)?;
            if let Some(e) = eps {
                cfg.eps_net = e;
            }
            let map = cfg.map.build().context("building map")?;
            let orbit = map
                .orbit(&cfg.start, cfg.orbit_len)
                .context("computing orbit")?;
            let est = omega_estimate(&orbit, cfg.burn_in, cfg.eps_net)
                .context("estimating the omega-limit set")?;
            println!("scenario {}: map {}", cfg.id, map.describe());
            println!(
                "tail: {} points after burn-in {}",
                est.tail.len(),
                est.burn_in
            );
            println!("net:  {} points at eps {}", est.net.len(), est.epsilon);
            if let Some(path) = dump {
                write_text(&path, &points_to_csv(&est.net))?;
                println!("net csv written to {}", path.display());
            }
            Ok(0)
        }
        Cmd::Components { scenario, eps } => {
            let mut cfg = ScenarioConfig::load(&scenario)?;
            if let Some(e) = eps {
                cfg.eps_net = e;
                cfg.eps_comp = None;
            }
            let map = cfg.map.build().context("building map")?;
            let orbit = map
                .orbit(&cfg.start, cfg.orbit_len)
                .context("computing orbit")?;
            let est = omega_estimate(&orbit, cfg.burn_in, cfg.eps_net)
                .context("estimating the omega-limit set")?;
            let part = components(&est.net, cfg.eps_comp()).context("splitting into components")?;
            println!("scenario {}: map {}", cfg.id, map.describe());
            println!(
                "{} components of {} net points at eps {}",
                part.count,
                part.points.len(),
                part.epsilon
            );
            for label in 0..part.count {
                println!("component {label}: {} points", part.members(label).len());
            }
            Ok(0)
        }
        Cmd::Verify {
            scenario,
            out,
            dump,
            n_max,
            eps,
            no_timing,
        } => {
            let mut cfg = ScenarioConfig::load(&scenario)?;
            if let Some(n) = n_max {
                cfg.n_max = n;
            }
            if let Some(e) = eps {
                cfg.eps_net = e;
                cfg.eps_comp = None;
            }
            let t0 = std::time::Instant::now();
            let stages = runner::run_stages(&cfg);
            let wall = (!no_timing).then(|| t0.elapsed().as_secs_f64() * 1e3);
            let report = runner::assemble_report(&cfg, &stages, wall);
            print_report_lines(&report);
            if let Some(path) = dump {
                if let Some(est) = &stages.estimate {
                    write_text(&path, &points_to_csv(&est.net))?;
                    println!("net csv written to {}", path.display());
                }
            }
            match out {
                Some(path) => {
                    write_text(&path, &report.to_json())?;
                    println!("report written to {}", path.display());
                }
                None => print!("{}", report.to_json()),
            }
            Ok(if report.all_ok() { 0 } else { 1 })
        }
        Cmd::Suite {
            dir,
            out_dir,
            no_timing,
        } => {
            let reports = runner::run_suite(&dir, !no_timing)?;
            let out_dir = out_dir.unwrap_or_else(|| dir.join("reports"));
            fs::create_dir_all(&out_dir)
                .with_context(|| format!("cannot create {}", out_dir.display()))?;
            let mut failures = 0usize;
            for report in &reports {
                print_report_lines(report);
                let path = out_dir.join(format!("{}.report.json", report.scenario));
                write_text(&path, &report.to_json())?;
                if !report.all_ok() {
                    failures += 1;
                }
            }
            println!(
                "suite: {}/{} scenarios ok, reports in {}",
                reports.len() - failures,
                reports.len(),
                out_dir.display()
            );
            Ok(if failures == 0 { 0 } else { 1 })
        }
    }
}

fn print_report_lines(report: &VerificationReport) {
    println!("scenario {}: map {}", report.scenario, report.map);
    if let Some(e) = &report.error {
        println!("  stage error: {e}");
    }
    for check in &report.checks {
        let verdict = if check.ok { "ok" } else { "FAIL" };
        let note = match (check.pass, check.expected) {
            (false, false) => " (expected failure)",
            (true, false) => " (unexpected pass)",
            _ => "",
        };
        println!("  [{verdict}] {}{note}", check.name);
        if !check.ok {
            if let Some(w) = &check.witness {
                println!("         {w}");
            }
        }
    }
}

fn write_text(path: &Path, text: &str) -> anyhow::Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)
                .with_context(|| format!("cannot create {}", parent.display()))?;
        }
    }
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}
