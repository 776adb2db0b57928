use criterion::{criterion_group, criterion_main, Criterion};
fn bench_probe(c: &mut Criterion) { c.bench_function("probe", |b| b.iter(|| 1 + 1)); }
criterion_group!(benches, bench_probe);
criterion_main!(benches);
