//! Benchmarks for the hot paths: exact dendrite orbits, net construction,
//! component splitting, one integrator step, and Hausdorff distance.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use omega_lab_core::{
    arc_tip, components, disk_time_one, hausdorff, omega_estimate, DynamicalMap, F0Map,
    HausdorffTarget, IntegratorConfig, Orbit, Point,
};

fn tip_chain(len: usize) -> Orbit {
    DynamicalMap::DendriteF0(F0Map)
        .orbit(&Point::Dendrite(arc_tip(1)), len)
        .expect("tip chain orbit")
}

fn bench_dendrite_orbit(c: &mut Criterion) {
    let map = DynamicalMap::DendriteF0(F0Map);
    let start = Point::Dendrite(arc_tip(1));
    c.bench_function("dendrite_orbit_2048", |b| {
        b.iter(|| map.orbit(black_box(&start), 2048).unwrap())
    });
}

fn bench_net_and_components(c: &mut Criterion) {
    let orbit = tip_chain(2048);
    c.bench_function("omega_net_2048_eps_0.01", |b| {
        b.iter(|| omega_estimate(black_box(&orbit), 255, 0.01).unwrap())
    });
    let est = omega_estimate(&orbit, 255, 0.01).expect("net");
    c.bench_function("components_eps_0.01", |b| {
        b.iter(|| components(black_box(&est.net), 0.01).unwrap())
    });
}

fn bench_disk_step(c: &mut Criterion) {
    let cfg = IntegratorConfig::default();
    c.bench_function("disk_time_one_step", |b| {
        b.iter(|| disk_time_one(black_box(0.5), black_box(0.2), &cfg).unwrap())
    });
}

fn bench_hausdorff(c: &mut Criterion) {
    let orbit = tip_chain(2048);
    let est = omega_estimate(&orbit, 255, 0.01).expect("net");
    let embedded: Vec<Point> = est
        .net
        .iter()
        .map(|p| match p {
            Point::Dendrite(d) => Point::Euclid(omega_lab_core::dendrite_embed(d)),
            other => other.clone(),
        })
        .collect();
    let target = HausdorffTarget::Segment {
        from: [0.0, 0.0],
        to: [1.0, 0.0],
    };
    c.bench_function("hausdorff_net_vs_segment_2048", |b| {
        b.iter(|| hausdorff(black_box(&embedded), &target, 2048).unwrap())
    });
}

criterion_group!(
    benches,
    bench_dendrite_orbit,
    bench_net_and_components,
    bench_disk_step,
    bench_hausdorff
);
criterion_main!(benches);
