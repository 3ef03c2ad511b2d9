use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use gkrevival::gkstate::{CoherentState, DEFAULT_TAIL_TOL};
use gkrevival::revival::{autocorrelation, packet_fractions};
use gkrevival::sampling::{map_points_sequential, uniform_grid};
use gkrevival::SpectrumParams;

fn autocorrelation_grid(c: &mut Criterion) {
    let mut group = c.benchmark_group("autocorrelation_2001");
    for &(j, mu) in &[(10.0, 80.0), (200.0, 28.0)] {
        let s = CoherentState::build(
            j,
            0.0,
            SpectrumParams::with_mu(mu).unwrap(),
            DEFAULT_TAIL_TOL,
        )
        .unwrap();
        let grid = uniform_grid(1.0, 2001).unwrap();
        let label = format!("J{j}_mu{mu}");
        group.bench_with_input(BenchmarkId::new("sequential", &label), &grid, |b, g| {
            b.iter(|| map_points_sequential(black_box(g), |&t| autocorrelation(&s, t)))
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("parallel", &label), &grid, |b, g| {
            b.iter(|| {
                gkrevival::sampling::map_points_parallel(black_box(g), |&t| autocorrelation(&s, t))
            })
        });
    }
    group.finish();
}

fn fractions_grid(c: &mut Criterion) {
    let mut group = c.benchmark_group("packet_fractions_q4_2001");
    let s = CoherentState::build(
        10.0,
        0.0,
        SpectrumParams::with_mu(80.0).unwrap(),
        DEFAULT_TAIL_TOL,
    )
    .unwrap();
    let grid = uniform_grid(1.0, 2001).unwrap();
    group.bench_function("sequential", |b| {
        b.iter(|| map_points_sequential(black_box(&grid), |&t| packet_fractions(&s, 4, t).unwrap()))
    });
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| {
        b.iter(|| {
            gkrevival::sampling::map_points_parallel(black_box(&grid), |&t| {
                packet_fractions(&s, 4, t).unwrap()
            })
        })
    });
    group.finish();
}

criterion_group!(benches, autocorrelation_grid, fractions_grid);
criterion_main!(benches);
