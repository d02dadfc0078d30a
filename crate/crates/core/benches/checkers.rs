use commalg::PrimeField;
use criterion::{criterion_group, criterion_main, Criterion};
use detvar_core::bott::{check_prop_work_all, check_tilting_grass, check_tilting_springer};
use detvar_core::detvar::{build_t, certify_end_mcm, DetSetup};
use detvar_core::par;

fn both_modes(c: &mut Criterion, name: &str, f: impl Fn()) {
    let mut group = c.benchmark_group(name);
    group.sample_size(10);
    for (label, sequential) in [("parallel", false), ("sequential", true)] {
        par::set_sequential(sequential);
        group.bench_function(label, |b| b.iter(&f));
    }
    par::set_sequential(false);
    group.finish();
}

fn bott_checkers(c: &mut Criterion) {
    both_modes(c, "tilt_grass_3_6", || assert!(check_tilting_grass(3, 6).unwrap().pass));
    both_modes(c, "prop31_2_5", || assert!(check_prop_work_all(2, 5, 6).unwrap().pass));
    both_modes(c, "tilt_springer_2_3_4", || assert!(check_tilting_springer(2, 3, 4, 3).unwrap().pass));
}

fn algebra_checkers(c: &mut Criterion) {
    let f = PrimeField::new(32003).unwrap();
    let s331 = DetSetup::new(3, 3, 1, f.clone()).unwrap();
    both_modes(c, "build_t_3_3_1", || {
        build_t(&s331).unwrap();
    });
    let s332 = DetSetup::new(3, 3, 2, f).unwrap();
    both_modes(c, "end_mcm_3_3_2", || assert!(certify_end_mcm(&s332, false).unwrap().pass));
}

criterion_group!(benches, bott_checkers, algebra_checkers);
criterion_main!(benches);
