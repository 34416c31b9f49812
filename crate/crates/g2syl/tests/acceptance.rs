//! Acceptance criteria 1 to 10, each at zero tolerance. Prints one
//! PASS/FAIL line per criterion and exits nonzero if any fails.

use std::time::{Duration, Instant};

use g2syl::chartable::{verify_character_table, verify_classes, verify_subgroup_tables};
use g2syl::matgroup::{conjugacy_classes, verify_chevalley_constants, verify_closed_form, verify_commutators};
use g2syl::orbits::{verify_inner_products, verify_orbits};
use g2syl::supertheory::{verify_partition, verify_supercharacter_theory};
use g2syl::{Field, G2Syl, Report};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const BUDGET: u64 = u64::MAX;

struct Outcome {
    failures: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome { failures: Vec::new() }
    }

    fn report(&mut self, r: &Report) {
        for c in r.failures() {
            self.failures.push(format!("{}/{}: {}", r.suite, c.name, c.witness.clone().unwrap_or_default()));
        }
    }

    fn fail(&mut self, msg: impl Into<String>) {
        self.failures.push(msg.into());
    }

    fn within(&mut self, what: &str, elapsed: Duration, limit: Duration) {
        if elapsed > limit {
            self.fail(format!("{what} took {elapsed:.1?}, target {limit:?}"));
        }
    }
}

fn group_for(q: u64) -> Field {
    Field::with_order(q).expect("valid field order")
}

fn criterion_1() -> Outcome {
    let mut o = Outcome::new();
    let f = group_for(5);
    let g = G2Syl::new(&f);
    let t = Instant::now();
    match verify_closed_form(&g, BUDGET) {
        Ok(r) => o.report(&r),
        Err(e) => o.fail(e.to_string()),
    }
    o.within("closed form at q=5", t.elapsed(), Duration::from_secs(10));
    o
}

fn criterion_2() -> Outcome {
    let mut o = Outcome::new();
    for q in [5, 3, 9] {
        let f = group_for(q);
        o.report(&verify_commutators(&G2Syl::new(&f)));
    }
    o
}

fn criterion_3() -> Outcome {
    let mut o = Outcome::new();
    let f = group_for(5);
    let t = Instant::now();
    match verify_orbits(&G2Syl::new(&f), BUDGET) {
        Ok(r) => o.report(&r),
        Err(e) => o.fail(e.to_string()),
    }
    o.within("orbits at q=5", t.elapsed(), Duration::from_secs(60));
    o
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::new();
    let f = group_for(5);
    match verify_inner_products(&G2Syl::new(&f), BUDGET) {
        Ok(r) => o.report(&r),
        Err(e) => o.fail(e.to_string()),
    }
    o
}

fn criterion_5() -> Outcome {
    let mut o = Outcome::new();
    for q in [3, 5, 7] {
        let f = group_for(q);
        let g = G2Syl::new(&f);
        let r = conjugacy_classes(&g, BUDGET).and_then(|c| verify_partition(&g, &c, BUDGET));
        match r {
            Ok(r) => o.report(&r),
            Err(e) => o.fail(e.to_string()),
        }
    }
    o
}

fn criterion_6() -> Outcome {
    let mut o = Outcome::new();
    for q in [3, 5, 7] {
        let f = group_for(q);
        let t = Instant::now();
        match verify_supercharacter_theory(&G2Syl::new(&f), BUDGET) {
            Ok((_, r)) => o.report(&r),
            Err(e) => o.fail(e.to_string()),
        }
        if q == 7 {
            o.within("supercharacter theory at q=7", t.elapsed(), Duration::from_secs(120));
        }
    }
    o
}

fn criterion_7() -> Outcome {
    let mut o = Outcome::new();
    let f = group_for(5);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    match verify_classes(&G2Syl::new(&f), BUDGET, 10_000, &mut rng) {
        Ok((_, r)) => o.report(&r),
        Err(e) => o.fail(e.to_string()),
    }
    o
}

fn criterion_8() -> Outcome {
    let mut o = Outcome::new();
    let f = group_for(5);
    let t = Instant::now();
    match verify_character_table(&G2Syl::new(&f), BUDGET, None) {
        Ok((_, r)) => o.report(&r),
        Err(e) => o.fail(e.to_string()),
    }
    o.within("character table at q=5", t.elapsed(), Duration::from_secs(300));
    let f7 = group_for(7);
    match verify_character_table(&G2Syl::new(&f7), BUDGET, Some(6)) {
        Ok((_, r)) => o.report(&r),
        Err(e) => o.fail(e.to_string()),
    }
    o
}

fn criterion_9() -> Outcome {
    let mut o = Outcome::new();
    let f = group_for(5);
    match verify_subgroup_tables(&G2Syl::new(&f), BUDGET) {
        Ok(r) => o.report(&r),
        Err(e) => o.fail(e.to_string()),
    }
    o
}

fn criterion_10() -> Outcome {
    let mut o = Outcome::new();
    o.report(&verify_chevalley_constants());
    o
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("1 generator product equals closed form (q=5)", criterion_1),
        ("2 commutator relations (q=5, 3, 9)", criterion_2),
        ("3 orbit sizes and stabilizers (q=5)", criterion_3),
        ("4 orbit character inner products (q=5)", criterion_4),
        ("5 superclass partition (q=3, 5, 7)", criterion_5),
        ("6 supercharacter theory and closed forms (q=3, 5, 7)", criterion_6),
        ("7 conjugacy classes and conjugation formulas (q=5)", criterion_7),
        ("8 irreducible character table (q=5, sampled q=7)", criterion_8),
        ("9 subgroup character tables of H and T (q=5)", criterion_9),
        ("10 Chevalley structure constants", criterion_10),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let t = Instant::now();
        let o = run();
        let secs = t.elapsed().as_secs_f64();
        if o.failures.is_empty() {
            println!("PASS criterion {name} [{secs:.2}s]");
        } else {
            failed += 1;
            println!("FAIL criterion {name} [{secs:.2}s]");
            for f in &o.failures {
                println!("    {f}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
    println!("all 10 acceptance criteria passed");
}
