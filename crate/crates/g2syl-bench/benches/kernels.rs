use criterion::{black_box, criterion_group, criterion_main, Criterion};
use g2syl::chartable::{character_table, closed_form_int, u_classes, ClassRep, IrrId};
use g2syl::matgroup::conjugacy_classes;
use g2syl::supertheory::{compute_supercharacter_table, superclasses};
use g2syl::{DotAction, Field, G2Syl, Pattern, DEFAULT_BUDGET};
use g2syl_bench::spread_coords;

fn group_kernels(c: &mut Criterion) {
    let field = Field::with_order(7).unwrap();
    let group = G2Syl::new(&field);
    let xs = spread_coords(&group, 64);
    c.bench_function("mul_coords q=7 x64", |b| {
        b.iter(|| {
            for w in xs.windows(2) {
                black_box(group.mul_coords(&w[0], &w[1]));
            }
        })
    });
    c.bench_function("closed_form matrix q=7 x64", |b| {
        b.iter(|| {
            for t in &xs {
                black_box(group.closed_form(t));
            }
        })
    });
    c.bench_function("product_matrix q=7 x64", |b| {
        b.iter(|| {
            for t in &xs {
                black_box(group.product_matrix(t));
            }
        })
    });
    let actions: Vec<DotAction> = xs.iter().map(|u| DotAction::new(&group, u)).collect();
    let patterns: Vec<Pattern> = Pattern::all(&field).step_by(1031).take(64).collect();
    c.bench_function("DotAction apply q=7 x64", |b| {
        b.iter(|| {
            for (act, a) in actions.iter().zip(&patterns) {
                black_box(act.apply(a));
            }
        })
    });
}

fn table_kernels(c: &mut Criterion) {
    let field = Field::with_order(5).unwrap();
    let group = G2Syl::new(&field);
    let mut slow = c.benchmark_group("tables q=5");
    slow.sample_size(10);
    slow.bench_function("conjugacy classes", |b| {
        b.iter(|| black_box(conjugacy_classes(&group, DEFAULT_BUDGET).unwrap()))
    });
    let classes = u_classes(&group, DEFAULT_BUDGET).unwrap();
    let ids = IrrId::all(field.q());
    slow.bench_function("character table closed forms", |b| {
        b.iter(|| black_box(character_table(&field, &classes, &ids).unwrap()))
    });
    let supers = superclasses(&group, DEFAULT_BUDGET).unwrap();
    slow.bench_function("supercharacter table", |b| {
        b.iter(|| black_box(compute_supercharacter_table(&group, &supers, DEFAULT_BUDGET).unwrap()))
    });
    slow.finish();

    let reps = ClassRep::all(field.q());
    c.bench_function("closed_form_int one row q=5", |b| {
        b.iter(|| {
            for rep in &reps {
                black_box(closed_form_int(&field, ids[ids.len() - 1], *rep));
            }
        })
    });
}

criterion_group!(benches, group_kernels, table_kernels);
criterion_main!(benches);
