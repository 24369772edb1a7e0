//! Acceptance criteria, one `PASS`/`FAIL` line each.
//!
//! Runs without the libtest harness so the lines are always printed. The
//! process fails when a criterion fails, unless it is listed in
//! `KNOWN_FAILING` with the reason it cannot pass.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use filiform::exactmath::{rat, ratio};
use filiform::family::{
    enumerate_empty_region, enumerate_triples, generate_bratzlavsky, generate_general, mu_count, relabel_bratzlavsky,
    BratzlavskyParams, GeneralLawParams,
};
use filiform::lemmas::{alpha1_coefficient, alpha1_extracted, identity_sweep};
use filiform::liealg::change_basis;
use filiform::linalg::Matrix;
use filiform::prover::{constraints, emptiness_certificate, grid_search, paper15, SearchOptions};
use filiform::series::{
    bracket_space, check_lcs_shape, classify, construct_adapted, derived_series, invariants_z, lcs_term,
    lower_central_series, verify_adapted, ZInvariants,
};
use filiform::{BasisChange, LieAlgebra, Polynomial, Rational, Triple, Var};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Criteria that fail for reasons recorded in the project notes.
const KNOWN_FAILING: &[usize] = &[4, 11];

/// Wall-clock limits per criterion, in seconds.
const TIME_LIMITS: [u64; 11] = [5, 10, 30, 300, 10, 60, 120, 60, 120, 120, 10];

/// Relative tolerance of the region census at n = 200.
const CENSUS_TOLERANCE: f64 = 0.25;

const SEED: u64 = 20_240_601;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn t(z1: usize, z2: usize, n: usize) -> Triple {
    Triple::new(z1, z2, n).unwrap()
}

fn dim15_law() -> LieAlgebra {
    let mut p = GeneralLawParams::zero(t(4, 9, 15)).unwrap();
    for v in [Var::Alpha(6), Var::Gamma(5), Var::Beta(1, 5), Var::Beta(2, 4), Var::Beta(3, 3), Var::Beta(4, 2)] {
        p.set(&v, Polynomial::var(v.clone())).unwrap();
    }
    generate_general(&p).unwrap()
}

fn criterion_1() -> Outcome {
    let g = dim15_law();
    let mut bad = 0;
    for &(i, j, h, text) in common::DIM15_TABLE {
        let expected: Polynomial = text.parse().unwrap();
        let v = g.bracket_basis(i, j).unwrap();
        if *v.coord(h).unwrap() != expected || v.support().count() != 1 {
            bad += 1;
        }
    }
    let n = common::DIM15_TABLE.len();
    outcome(bad == 0, format!("{} of {n} table coefficients reproduced", n - bad))
}

fn paper15_instances() -> Vec<LieAlgebra> {
    [rat(1), ratio(1, 858), ratio(-3, 7)].iter().map(paper15).collect()
}

fn criterion_2() -> Outcome {
    let mut bad = Vec::new();
    for (g, b) in paper15_instances().iter().zip(["1", "1/858", "-3/7"]) {
        let r = classify(g).unwrap();
        let ok = g.jacobi_check().is_empty()
            && r.filiform
            && (r.z1, r.z2) == (Some(4), Some(9))
            && r.derived_length == Some(4)
            && r.ds_dims == [15, 13, 9, 1, 0];
        if !ok {
            bad.push(b);
        }
    }
    outcome(bad.is_empty(), format!("3 values of b_3_3, failing: {bad:?}"))
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    ratio(rng.gen_range(-5..=5), rng.gen_range(1..=3))
}

/// Seeded numeric metabelian instances in the adapted basis, 5 <= n <= 10.
fn bratzlavsky_instances() -> Vec<LieAlgebra> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut out = Vec::new();
    for n in 5..=10 {
        for _ in 0..3 {
            let mut lambda: Vec<Rational> = (0..n - 4).map(|_| random_rational(&mut rng)).collect();
            if lambda[0] == rat(0) {
                lambda[0] = rat(1);
            }
            let g = generate_bratzlavsky(&BratzlavskyParams::numeric(n, &lambda).unwrap()).unwrap();
            out.push(relabel_bratzlavsky(&g).unwrap());
        }
    }
    out
}

fn criterion_3() -> Outcome {
    let mut symbolic_ok = true;
    for n in 5..=10 {
        let g = generate_bratzlavsky(&BratzlavskyParams::symbolic(n).unwrap()).unwrap();
        symbolic_ok &= g.jacobi_check().is_empty();
        symbolic_ok &= verify_adapted(&relabel_bratzlavsky(&g).unwrap()).ok();
    }
    let instances = bratzlavsky_instances();
    let numeric_ok = instances.iter().all(|g| {
        let r = classify(g).unwrap();
        verify_adapted(g).ok() && r.derived_length.is_some_and(|d| d <= 2)
    });
    outcome(
        symbolic_ok && numeric_ok,
        format!("symbolic n = 5..10 flat and adapted: {symbolic_ok}; {} numeric instances metabelian: {numeric_ok}", instances.len()),
    )
}

fn criterion_4() -> Outcome {
    let (mut total, mut holds) = (0, 0);
    let (mut alpha_total, mut alpha_holds) = (0, 0);
    for n in 10..=14 {
        for tr in enumerate_empty_region(n) {
            for v in identity_sweep(tr).unwrap() {
                total += 1;
                holds += usize::from(v.holds);
            }
            if let (Ok(a), Ok(b)) = (alpha1_coefficient(tr), alpha1_extracted(tr)) {
                alpha_total += 1;
                alpha_holds += usize::from(a == b);
            }
        }
    }
    outcome(
        total > 0 && holds == total && alpha_holds == alpha_total,
        format!("quadratic identities {holds}/{total} hold; a_1 closed form {alpha_holds}/{alpha_total} match"),
    )
}

fn criterion_5() -> Outcome {
    let mut count = 0;
    let mut symbolic = 0;
    let mut bad = Vec::new();
    for n in 10..=16 {
        for tr in enumerate_empty_region(n) {
            count += 1;
            match emptiness_certificate(tr) {
                Ok(c) if c.conclusion && c.signs.all() && c.relation_violated => {
                    symbolic += usize::from(c.symbolic_steps_confirmed);
                }
                _ => bad.push(tr.to_string()),
            }
        }
    }
    let c = emptiness_certificate(t(4, 6, 10)).unwrap();
    let k = &c.coefficients;
    let golden = [&k.a0, &k.b0, &k.c1, &k.a_prime, &k.b_prime, &c.relation_lhs, &c.relation_rhs]
        .map(|s| s.as_str())
        == ["-15", "-14", "-15", "2", "20", "392", "-7575"];
    outcome(
        bad.is_empty() && golden,
        format!(
            "{} of {count} certificates conclude; (4,6,10) values match: {golden}; symbolic steps confirmed at {symbolic}",
            count - bad.len()
        ),
    )
}

fn criterion_6() -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    for n in 5..=14 {
        for tr in enumerate_triples(n) {
            count += 1;
            let g = generate_general(&GeneralLawParams::symbolic(tr).unwrap()).unwrap();
            if g.parameters().len() != mu_count(tr).unwrap() {
                bad.push(tr.to_string());
            }
        }
    }
    let named = [(t(4, 9, 15), 51), (t(4, 6, 10), 18), (t(4, 4, 5), 1)]
        .iter()
        .all(|&(tr, mu)| mu_count(tr).unwrap() == mu);
    outcome(bad.is_empty() && named, format!("{count} triples, mismatches {bad:?}; named values match: {named}"))
}

/// Jacobi-consistent, nondegenerate search instances at small triples.
fn search_instances(limit: usize) -> Vec<(Triple, LieAlgebra)> {
    let mut out = Vec::new();
    for tr in [t(4, 4, 5), t(4, 4, 6), t(4, 5, 6), t(4, 5, 7), t(5, 5, 7), t(4, 5, 8)] {
        let opts = SearchOptions::new(vec![rat(-1), rat(0), rat(1), rat(2)], 3000, SEED);
        for inst in grid_search(tr, &opts).unwrap().instances {
            let values = inst.0.iter().map(|(v, c)| (v.clone(), Some(c.clone()))).collect();
            let g = generate_general(&GeneralLawParams::from_values(tr, &values).unwrap()).unwrap();
            out.push((tr, g));
            if out.len() == limit {
                return out;
            }
        }
    }
    out
}

fn containments_hold(g: &LieAlgebra) -> bool {
    let lcs = lower_central_series(g).unwrap();
    let ds = derived_series(g).unwrap();
    let derived = ds.iter().enumerate().all(|(k, d)| {
        let idx = 1usize.checked_shl(k as u32).unwrap_or(usize::MAX);
        lcs_term(&lcs, idx).contains(d)
    });
    let n = g.dim();
    let brackets = (1..=n).all(|k| {
        (k..=n).all(|l| {
            let b = bracket_space(g, lcs_term(&lcs, k), lcs_term(&lcs, l)).unwrap();
            lcs_term(&lcs, k + l).contains(&b)
        })
    });
    derived && brackets
}

fn criterion_7() -> Outcome {
    let search = search_instances(50);
    let mut all: Vec<LieAlgebra> = paper15_instances();
    all.extend(bratzlavsky_instances());
    let from_search = search.len();
    all.extend(search.into_iter().map(|(_, g)| g));
    let bad = all.iter().filter(|g| !containments_hold(g)).count();
    outcome(
        bad == 0 && from_search == 50,
        format!("{} instances ({from_search} from search), {bad} violations", all.len()),
    )
}

fn criterion_8() -> Outcome {
    let mut checked = 0;
    let mut bad = 0;
    let mut check = |g: &LieAlgebra| {
        if !classify(g).unwrap().filiform || !verify_adapted(g).ok() {
            return;
        }
        checked += 1;
        match invariants_z(g, true) {
            Ok(ZInvariants::NonModel(z)) if z.agree() && z.triple(g.dim()).is_valid() => {}
            Ok(ZInvariants::Model) => {}
            _ => bad += 1,
        }
    };
    for g in paper15_instances().iter().chain(bratzlavsky_instances().iter()) {
        check(g);
    }
    let mut general = 0;
    for (tr, g) in search_instances(usize::MAX) {
        if [t(4, 4, 5), t(4, 4, 6), t(4, 5, 6)].contains(&tr) {
            general += 1;
            check(&g);
        }
    }
    outcome(bad == 0 && general > 0, format!("{checked} adapted instances ({general} general laws), {bad} disagreements"))
}

fn random_change(n: usize, rng: &mut ChaCha8Rng) -> BasisChange {
    loop {
        let rows = (0..n).map(|_| (0..n).map(|_| ratio(rng.gen_range(-2..=2), 1)).collect()).collect();
        if let Ok(b) = BasisChange::new(Matrix::from_rows(rows)) {
            return b;
        }
    }
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 9);
    let mut sources: Vec<LieAlgebra> = bratzlavsky_instances().into_iter().filter(|g| g.dim() <= 8).collect();
    sources.extend(search_instances(usize::MAX).into_iter().map(|(_, g)| g).filter(|g| g.dim() <= 8).take(10));
    let mut ok = 0;
    for i in 0..20 {
        let g = &sources[(i * 7) % sources.len()];
        let scrambled = change_basis(g, &random_change(g.dim(), &mut rng)).unwrap();
        let passed = construct_adapted(&scrambled)
            .and_then(|b| change_basis(&scrambled, &b))
            .map(|h| verify_adapted(&h).ok() && check_lcs_shape(&h).unwrap())
            .unwrap_or(false);
        ok += usize::from(passed);
    }
    outcome(ok == 20, format!("{ok} of 20 scrambles recovered"))
}

fn criterion_10() -> Outcome {
    let mut count = 0;
    let mut worst = 0;
    for n in 5..=10 {
        for tr in enumerate_triples(n) {
            let g = generate_general(&GeneralLawParams::symbolic(tr).unwrap()).unwrap();
            for c in constraints(&g) {
                count += 1;
                worst = worst.max(c.total_degree());
            }
        }
    }
    outcome(worst <= 2, format!("{count} constraints, maximum degree {worst}"))
}

fn criterion_11() -> Outcome {
    let n10: Vec<Triple> = enumerate_empty_region(10);
    let n12: Vec<Triple> = enumerate_empty_region(12);
    let hand12 = [t(4, 7, 12), t(5, 7, 12), t(6, 7, 12), t(4, 8, 12)];
    // hand enumeration: 4 <= z1 <= 2(n - z2) - 4 and z1 <= z2 <= n - 3 <= 2 z2 - 5
    let mut hand: BTreeMap<usize, usize> = BTreeMap::new();
    let n = 200usize;
    for z2 in 4..n {
        for z1 in 4..=z2 {
            if z1 + 4 <= 2 * (n - z2) && z2 + 3 <= n && n + 2 <= 2 * z2 {
                *hand.entry(n).or_default() += 1;
            }
        }
    }
    let count = enumerate_empty_region(n).len();
    let target = (n * n) as f64 / 3.0;
    let rel = (count as f64 - target).abs() / target;
    let small = n10 == [t(4, 6, 10)] && n12 == hand12;
    outcome(
        small && count == hand[&n] && rel <= CENSUS_TOLERANCE,
        format!(
            "n=10 and n=12 match: {small}; n=200 count {count} vs n^2/3 = {target:.1}, relative gap {rel:.3} (tolerance {CENSUS_TOLERANCE})"
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("golden law reproduction", criterion_1),
        ("dimension 15 verification", criterion_2),
        ("metabelian family flatness", criterion_3),
        ("coefficient identities", criterion_4),
        ("emptiness certificates", criterion_5),
        ("parameter count", criterion_6),
        ("containment laws", criterion_7),
        ("invariant consistency", criterion_8),
        ("adapted basis round trip", criterion_9),
        ("quadratic degree bound", criterion_10),
        ("region census", criterion_11),
    ];
    let mut unexpected = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let number = i + 1;
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(TIME_LIMITS[i]);
        let pass = o.pass && in_time;
        println!(
            "criterion {number:>2} {}: {name}: {} [{:.2}s, limit {}s]",
            if pass { "PASS" } else { "FAIL" },
            o.detail,
            elapsed.as_secs_f64(),
            TIME_LIMITS[i]
        );
        if !pass && !KNOWN_FAILING.contains(&number) {
            unexpected.push(number);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
