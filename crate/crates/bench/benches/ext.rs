use criterion::{black_box, criterion_group, criterion_main, Criterion};
use hecke_core::characters::all_affine_characters;
use hecke_core::ext_ss::{induce_matrices, one_dim_modules};
use hecke_core::oracle::character_module;
use hecke_core::{brute_force_ext1, build_gl_n, dim_ext1_aff, dim_ext1_supersingular, Scope};

fn ext_ss(c: &mut Criterion) {
    let d = build_gl_n(2, 5).unwrap();
    let ms = one_dim_modules(&d).unwrap();
    c.bench_function("ext_ss gl2 q=5 self pair", |b| b.iter(|| dim_ext1_supersingular(&d, black_box(&ms[0]), &ms[0]).unwrap()));
    let d3 = build_gl_n(3, 2).unwrap();
    let ms3 = one_dim_modules(&d3).unwrap();
    c.bench_function("ext_ss gl3 q=2 all pairs", |b| {
        b.iter(|| ms3.iter().flat_map(|x| ms3.iter().map(|y| dim_ext1_supersingular(&d3, x, y).unwrap().total)).sum::<usize>())
    });
}

fn ext_aff(c: &mut Criterion) {
    let d = build_gl_n(3, 2).unwrap();
    let xs = all_affine_characters(&d).unwrap();
    c.bench_function("ext_aff gl3 q=2 all pairs", |b| {
        b.iter(|| xs.iter().flat_map(|x| xs.iter().map(|y| dim_ext1_aff(&d, x, y).unwrap().dim_ext1)).sum::<usize>())
    });
}

fn oracle(c: &mut Criterion) {
    let d = build_gl_n(2, 5).unwrap();
    let m = induce_matrices(&d, &one_dim_modules(&d).unwrap()[0]).unwrap();
    c.bench_function("oracle gl2 q=5 induced self pair", |b| b.iter(|| brute_force_ext1(&d, black_box(&m), &m, Scope::Full).unwrap()));
    let d4 = build_gl_n(4, 3).unwrap();
    let xi = &all_affine_characters(&d4).unwrap()[0];
    let cm = character_module(&d4, xi);
    c.bench_function("oracle gl4 q=3 character", |b| b.iter(|| brute_force_ext1(&d4, black_box(&cm), &cm, Scope::AffOnly).unwrap()));
}

criterion_group!(benches, ext_ss, ext_aff, oracle);
criterion_main!(benches);
