//! Hot paths of the core library: pc collection, row reduction over F_p,
//! and ideal products in the dense group algebra.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use modiso_core::catalog;
use modiso_core::grpalg::{GroupAlgebra, ALGEBRA_DIM_CAP};
use modiso_core::linalg::RrefBuilder;

fn collection(c: &mut Criterion) {
    let grp = catalog::builtin("maxclass_p4", 5).expect("builtin").group().expect("group");
    // A spread of normal forms, not just the low-rank corner.
    let sample: Vec<_> = grp.elements().step_by(7).collect();
    c.bench_function("pcgroup/collect maxclass_p4(5) pairs", |b| {
        b.iter(|| {
            for x in &sample {
                for y in &sample {
                    black_box(grp.multiply(x, y));
                }
            }
        })
    });
}

fn row_reduction(c: &mut Criterion) {
    let p = 5;
    let dim = 64;
    // Deterministic pseudorandom rows from a multiplicative congruence.
    let rows: Vec<Vec<u32>> = (0..96)
        .map(|i| {
            let mut state = 2 * i + 1;
            (0..dim)
                .map(|_| {
                    state = (state * 1103515245 + 12345) % 2147483647;
                    (state % u64::from(p)) as u32
                })
                .collect()
        })
        .collect();
    c.bench_function("linalg/rref insert 96x64 over F_5", |b| {
        b.iter(|| {
            let mut builder = RrefBuilder::new(p, dim);
            for row in &rows {
                builder.insert(black_box(row));
            }
            black_box(builder.rank())
        })
    });
}

fn ideal_product(c: &mut Criterion) {
    let grp = catalog::builtin("heisenberg", 3).expect("builtin").group().expect("group");
    let fg = GroupAlgebra::new(&grp, ALGEBRA_DIM_CAP).expect("algebra");
    let aug = fg.augmentation_ideal();
    c.bench_function("grpalg/ideal product I*I in F_3[heisenberg(3)]", |b| {
        b.iter(|| black_box(fg.ideal_product(&aug, &aug).expect("product")))
    });
}

criterion_group!(benches, collection, row_reduction, ideal_product);
criterion_main!(benches);
