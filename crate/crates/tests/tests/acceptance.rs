//! Acceptance checks: one PASS/FAIL line per criterion, with the measured
//! values and wall time. Exits non-zero if any criterion fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use apexobs_core::cacti::generate_z_levels;
use apexobs_core::obstruction::builtin_catalog;
use apexobs_core::singularity::{check_z1_vanishes, gamma_minus_three_halves};
use apexobs_core::{
    canonical_form, disconnected_obstructions, estimate_constant, is_minor, is_obstruction,
    make_named, min_apex_size, search_obstructions, solve_saddle, solve_system, verify_catalog,
    ClassId, Graph,
};
use common::*;
use num_traits::ToPrimitive;
use rand::{rngs::StdRng, Rng, SeedableRng};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn forms<'a>(gs: impl IntoIterator<Item = &'a Graph>) -> BTreeSet<Vec<u8>> {
    gs.into_iter().map(canonical_form).collect()
}

fn obstructions_level_zero() -> Outcome {
    let cat = search_obstructions(0, 6, false);
    let want: Vec<Graph> = ["2K3", "K4_minus", "Z"]
        .iter()
        .map(|s| make_named(s).unwrap())
        .collect();
    let got = forms(cat.records.iter().map(|r| &r.graph));
    let names: Vec<&str> = cat.records.iter().map(|r| r.name.as_str()).collect();
    outcome(
        got == forms(&want) && cat.claimed_complete,
        format!("found {names:?}"),
    )
}

fn catalog_level_one() -> Outcome {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let mut cat = builtin_catalog(1).unwrap();
    let report = pool.install(|| verify_catalog(&mut cat));
    outcome(
        report.ok() && report.total == 29 && report.verified == 29,
        format!(
            "{}/{} verified, {} refuted, {} duplicate pairs, single thread",
            report.verified,
            report.total,
            report.refuted.len(),
            report.duplicates.len()
        ),
    )
}

fn butterfly_counts() -> Outcome {
    let levels = generate_z_levels(6).unwrap();
    let counts: Vec<usize> = levels.iter().map(Vec::len).collect();
    let sol = solve_system(8).unwrap();
    let series: Vec<usize> = (1..=6)
        .map(|k| sol.t_coeff(k).to_usize().unwrap())
        .collect();
    outcome(
        counts == [1, 1, 3, 7, 25, 88] && counts == series,
        format!("|Z_k| = {counts:?}, [x^k]T = {series:?}"),
    )
}

fn first_coefficients() -> Outcome {
    let sol = solve_system(64).unwrap();
    let t: Vec<u64> = (1..=10).map(|n| sol.t_coeff(n).to_u64().unwrap()).collect();
    let g: Vec<u64> = (0..=10).map(|n| sol.g_coeff(n).to_u64().unwrap()).collect();
    let pass = t == [1, 1, 3, 7, 25, 88, 366, 1583, 7336, 34982]
        && g == [1, 1, 2, 5, 13, 41, 143, 558, 2346, 10546, 49397];
    outcome(pass, format!("t_10 = {}, g_10 = {}", t[9], g[10]))
}

fn unique_forest_deletion() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for k in 1..=4 {
        for b in apexobs_core::generate_z(k).unwrap() {
            let a = matrix(&b.graph);
            let n = a.len();
            let hits: Vec<u32> = apexobs_core::apex::subsets_of_size(n, k)
                .filter(|m| {
                    let alive: Vec<bool> = (0..n).map(|v| m >> v & 1 == 0).collect();
                    in_class_oracle(&a, &alive, ClassId::Forest)
                })
                .collect();
            if hits != [b.central] {
                bad.push(apexobs_core::io::to_graph6(&b.graph));
            }
            checked += 1;
        }
    }
    outcome(
        bad.is_empty(),
        format!("{checked} graphs checked, {} failures", bad.len()),
    )
}

fn disconnected_family() -> Outcome {
    let cat = builtin_catalog(1).unwrap();
    let one = disconnected_obstructions(1).unwrap();
    let z = make_named("Z").unwrap();
    let want = forms(&[z.disjoint_union(&z).unwrap(), make_named("3K3").unwrap()]);
    let names: BTreeSet<&str> = one.iter().filter_map(|g| cat.identify(g)).collect();
    let first = forms(&one) == want && names == BTreeSet::from(["O_1^0", "O_3^0"]);
    let two = disconnected_obstructions(2).unwrap();
    let failures = two.iter().filter(|g| !is_obstruction(g, 2)).count();
    outcome(
        first && failures == 0,
        format!(
            "k=1 gives catalog records {names:?}; k=2 gives {} graphs, {failures} failures",
            two.len()
        ),
    )
}

fn saddle_point() -> Outcome {
    let sp = solve_saddle(&solve_system(128).unwrap(), 1e-13).unwrap();
    let inv = 1.0 / sp.x0;
    let pass = (sp.x0 - 0.15926).abs() < 1e-4
        && (sp.y0 - 0.41738).abs() < 1e-4
        && (inv - 6.27888).abs() < 1e-3;
    outcome(
        pass,
        format!("x0 = {:.8}, y0 = {:.8}, 1/rho = {:.6}", sp.x0, sp.y0, inv),
    )
}

fn asymptotic_constants() -> Outcome {
    let sol = solve_system(512).unwrap();
    let rho = solve_saddle(&sol, 1e-13).unwrap().x0;
    let t = estimate_constant(&sol.t, rho, 1.5).unwrap();
    let g = estimate_constant(&sol.g, rho, 1.5).unwrap();
    let within = |c: f64, target: f64| (c / target - 1.0).abs() <= 0.01;
    let gamma = gamma_minus_three_halves();
    outcome(
        within(t.c, 0.27160) && within(g.c, 0.33995),
        format!(
            "c_T = {:.6} (+-{:.1e}), c_G = {:.6} (+-{:.1e}), targets 0.27160 and 0.33995; \
             c*Gamma(-3/2) = {:.5} and {:.5}",
            t.c,
            t.tolerance,
            g.c,
            g.tolerance,
            t.c * gamma,
            g.c * gamma
        ),
    )
}

fn z1_identity() -> Outcome {
    let rho = solve_saddle(&solve_system(128).unwrap(), 1e-13).unwrap().x0;
    let res: Vec<f64> = [64, 96, 128]
        .iter()
        .map(|&n| {
            check_z1_vanishes(rho, &solve_system(n).unwrap())
                .unwrap()
                .residual
                .abs()
        })
        .collect();
    let monotone = res.windows(2).all(|w| w[1] < w[0]);
    outcome(
        res[2] < 1e-6 && monotone,
        format!(
            "|residual| at N = 64, 96, 128: {:.2e}, {:.2e}, {:.2e}",
            res[0], res[1], res[2]
        ),
    )
}

fn oracle_equivalence() -> Outcome {
    let graphs: Vec<Matrix> = (0..=6).flat_map(all_graphs).collect();
    let mut minor_pairs = 0;
    let mut minor_bad = 0;
    for g in &graphs {
        let closure = minor_closure(g);
        let gg = from_matrix(g);
        for h in &graphs {
            minor_pairs += 1;
            if is_minor(&from_matrix(h), &gg) != closure.contains(&brute_canon(h)) {
                minor_bad += 1;
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(2024);
    let classes = [
        ClassId::SubUnicyclic,
        ClassId::Pseudoforest,
        ClassId::Cactus,
        ClassId::Forest,
    ];
    let mut apex_bad = 0;
    for i in 0..500 {
        let n = rng.gen_range(1..=8);
        let g = random_graph(&mut rng, n, 0.2 + 0.6 * (i % 5) as f64 / 4.0);
        let a = matrix(&g);
        for c in classes {
            apex_bad += (min_apex_size(&g, c) != min_apex_oracle(&a, c)) as usize;
        }
    }
    let mut canon_bad = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=16);
        let p = rng.gen_range(0.1..0.9);
        let g = random_graph(&mut rng, n, p);
        let h = shuffled(&mut rng, &g);
        canon_bad += (canonical_form(&g) != canonical_form(&h)) as usize;
    }
    outcome(
        minor_bad + apex_bad + canon_bad == 0,
        format!(
            "minor {minor_bad}/{minor_pairs} mismatches, apex {apex_bad}/2000, canonical form {canon_bad}/1000"
        ),
    )
}

type Criterion = (&'static str, Duration, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "obstructions of S on at most 6 vertices",
            Duration::from_secs(10),
            obstructions_level_zero,
        ),
        (
            "29-graph catalog verification",
            Duration::from_secs(30 * 60),
            catalog_level_one,
        ),
        (
            "butterfly cactus counts vs T(x)",
            Duration::from_secs(5 * 60),
            butterfly_counts,
        ),
        (
            "first coefficients of T and G",
            Duration::from_secs(5),
            first_coefficients,
        ),
        (
            "unique apex-forest set in Z_k, k <= 4",
            Duration::from_secs(5 * 60),
            unique_forest_deletion,
        ),
        (
            "disconnected obstructions",
            Duration::from_secs(30 * 60),
            disconnected_family,
        ),
        ("saddle point", Duration::from_secs(10), saddle_point),
        (
            "asymptotic constants",
            Duration::from_secs(2 * 60),
            asymptotic_constants,
        ),
        ("Z1 identity", Duration::from_secs(10), z1_identity),
        (
            "oracle equivalence",
            Duration::from_secs(15 * 60),
            oracle_equivalence,
        ),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let took = start.elapsed();
        let pass = o.pass && took <= *limit;
        failed += !pass as usize;
        println!(
            "criterion {:2} {}: {} ({}; {:.2} s, limit {} s)",
            i + 1,
            if pass { "PASS" } else { "FAIL" },
            name,
            o.detail,
            took.as_secs_f64(),
            limit.as_secs()
        );
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
