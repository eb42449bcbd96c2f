//! Acceptance criteria 1–7. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hzcolor::classify::{is_petersen_minus, ColoringSource};
use hzcolor::enumerate::{all_graphs, connected_graphs};
use hzcolor::oracle::is_delta_critical;
use hzcolor::verify::{run_suite, SuiteSummary};
use hzcolor::*;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: true,
        detail: detail.into(),
    }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome {
        ok: false,
        detail: detail.into(),
    }
}

fn sweep_candidates() -> Vec<Graph> {
    (1..=7)
        .flat_map(connected_graphs)
        .filter(|g| g.max_degree() >= 4 && g.core_max_degree() <= 2)
        .collect()
}

fn family() -> Vec<(OdeltaParams, Graph)> {
    OdeltaParams::all_up_to(8)
        .into_iter()
        .map(|p| (p, gen_odelta(&p).expect("valid parameters")))
        .collect()
}

fn oracle_search_only() -> OracleConfig {
    OracleConfig {
        density_bound: false,
        ..Default::default()
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let graphs = sweep_candidates();
    let cfg = oracle_search_only();
    let mut mismatches = Vec::new();
    for g in &graphs {
        let report = match classify(g) {
            Ok(r) => r,
            Err(e) => return fail(format!("classify failed on {}: {e}", to_graph6(g))),
        };
        let chi = match chromatic_index_exact(g, &cfg) {
            Ok(r) => r.chromatic_index,
            Err(e) => return fail(format!("oracle failed on {}: {e}", to_graph6(g))),
        };
        let want = if chi == g.max_degree() {
            GraphClass::One
        } else {
            GraphClass::Two
        };
        if report.class != want || report.chromatic_index != chi {
            mismatches.push(to_graph6(g));
        }
    }
    let elapsed = start.elapsed();
    let detail = format!(
        "{} graphs, {} mismatches, {:.1}s",
        graphs.len(),
        mismatches.len(),
        elapsed.as_secs_f64()
    );
    if mismatches.is_empty() && elapsed < Duration::from_secs(300) && !graphs.is_empty() {
        pass(detail)
    } else {
        fail(format!(
            "{detail}; first mismatches {:?}",
            &mismatches[..mismatches.len().min(5)]
        ))
    }
}

fn criterion_2() -> Outcome {
    let k = classify(&named::k5_minus()).unwrap();
    let k_ok = k.class == GraphClass::Two
        && k.chromatic_index == 5
        && k.witness == Witness::Overfull { edges: 9, bound: 8 }
        && chromatic_index(&named::k5_minus()).unwrap().chromatic_index == 5;
    let pstar = named::petersen_minus_vertex();
    let p = classify(&pstar).unwrap();
    let overfull = pstar.m() > pstar.max_degree() * (pstar.n() / 2);
    let p_ok = p.class == GraphClass::Two
        && p.chromatic_index == 4
        && p.witness == Witness::PetersenMinusVertex
        && !overfull
        && pstar.m() == 12
        && is_petersen_minus(&pstar)
        && chromatic_index_exact(&pstar, &oracle_search_only())
            .unwrap()
            .chromatic_index
            == 4;
    let detail = format!(
        "K5^-: {:?} χ'={}; P*: {:?} χ'={}",
        k.witness, k.chromatic_index, p.witness, p.chromatic_index
    );
    if k_ok && p_ok {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn criterion_3() -> Outcome {
    let mut bad = Vec::new();
    let mut certified = 0;
    let fam = family();
    for (p, g) in &fam {
        let shape = g.is_connected()
            && g.core().0.degrees().iter().all(|&d| d == 2)
            && g.min_degree() + 1 == p.delta
            && g.n() % 2 == 1
            && g.m() > p.delta * (g.n() / 2);
        if !shape {
            bad.push(format!("{p:?} shape"));
        }
        if p.delta <= 6 {
            match chromatic_index(g) {
                Ok(r) if r.chromatic_index == p.delta + 1 => certified += 1,
                other => bad.push(format!("{p:?} oracle {other:?}")),
            }
        }
    }
    let detail = format!(
        "{} members, {certified} oracle-certified Class 2, {} failures",
        fam.len(),
        bad.len()
    );
    if bad.is_empty() && !fam.is_empty() {
        pass(detail)
    } else {
        fail(format!("{detail}: {bad:?}"))
    }
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let run = || {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut out = Vec::with_capacity(1000);
        let mut bad = 0;
        for _ in 0..1000 {
            let n = rng.gen_range(1..=14);
            let p: f64 = rng.gen_range(0.1..0.9);
            let edges: Vec<(Vertex, Vertex)> = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .filter(|_| rng.gen_bool(p))
                .collect();
            let g = Graph::new(n, edges).unwrap();
            let c = color_delta_plus_one(&g);
            if verify_proper(&g, g.max_degree() + 1, c.coloring.colors()).is_err()
                || c.colors_used > g.max_degree() + 1
            {
                bad += 1;
            }
            out.push(serde_json::to_string(&c.coloring.to_record(&g)).unwrap());
        }
        (out.join("\n"), bad)
    };
    let (a, bad) = run();
    let (b, _) = run();
    let elapsed = start.elapsed();
    let detail = format!(
        "1000 graphs, {bad} improper or over budget, deterministic: {}, {:.1}s",
        a == b,
        elapsed.as_secs_f64()
    );
    if bad == 0 && a == b && elapsed < Duration::from_secs(60) {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn criterion_5() -> Outcome {
    let cfg = CheckConfig::default();
    let mut critical: Vec<Graph> = (1..=7)
        .flat_map(connected_graphs)
        .filter(|g| g.m() > 0 && is_delta_critical(g, &cfg.oracle).unwrap())
        .collect();
    let swept = critical.len();
    critical.push(named::k5_minus());
    critical.push(named::petersen_minus_vertex());
    let lemmas = match run_suite(
        &critical,
        &[CheckId::Val, CheckId::Multifan, CheckId::Kierstead],
        &cfg,
    ) {
        Ok(r) => r,
        Err(e) => return fail(format!("harness error: {e}")),
    };
    let fam: Vec<Graph> = family().into_iter().map(|(_, g)| g).collect();
    let structure = match run_suite(&fam, &[CheckId::Pseudo, CheckId::Adjacency], &cfg) {
        Ok(r) => r,
        Err(e) => return fail(format!("harness error: {e}")),
    };
    let a = SuiteSummary::of(&lemmas);
    let b = SuiteSummary::of(&structure);
    let not_applicable = lemmas
        .iter()
        .chain(&structure)
        .filter(|r| r.verdict == Verdict::NotApplicable)
        .count();
    let count = |key: &str| -> u64 { structure.iter().filter_map(|r| r.stats.get(key)).sum() };
    let detail = format!(
        "{swept} Δ-critical graphs (n ≤ 7) + 2 fixtures, {} O_Δ members; {} claims, {} failed, {not_applicable} n/a; pseudo centers {} ({} vacuous)",
        fam.len(),
        a.claims + b.claims,
        a.failures + b.failures,
        count("centers"),
        count("centers.vacuous"),
    );
    if a.failures + b.failures == 0 && not_applicable == 0 {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn criterion_6() -> Outcome {
    let mut graphs = sweep_candidates();
    graphs.push(named::k5_minus());
    graphs.push(named::petersen_minus_vertex());
    graphs.extend(family().into_iter().map(|(_, g)| g));
    let opts = ClassifyOptions::default();
    let (mut vizing, mut descent, mut fallback, mut bad) = (0, 0, 0, Vec::new());
    for g in &graphs {
        let report = match color_optimal(g, &opts) {
            Ok(r) => r,
            Err(e) => {
                bad.push(format!("{}: {e}", to_graph6(g)));
                continue;
            }
        };
        let rec = report.coloring.as_ref().expect("coloring attached");
        let c = EdgeColoring::from_record(g, rec).expect("record matches graph");
        if verify_proper(g, report.chromatic_index, c.colors()).is_err()
            || c.colors_used() != report.chromatic_index
        {
            bad.push(to_graph6(g));
        }
        match report.coloring_source {
            Some(ColoringSource::Vizing) => vizing += 1,
            Some(ColoringSource::Descent { .. }) => descent += 1,
            _ => fallback += 1,
        }
    }
    let attempted = descent + fallback;
    let rate = if attempted == 0 {
        1.0
    } else {
        descent as f64 / attempted as f64
    };
    let detail = format!(
        "{} graphs, {} bad; vizing {vizing}, descent {descent}, oracle fallback {fallback} (descent success rate {:.3})",
        graphs.len(),
        bad.len(),
        rate
    );
    if bad.is_empty() {
        pass(detail)
    } else {
        fail(format!("{detail}: {:?}", &bad[..bad.len().min(5)]))
    }
}

fn criterion_7() -> Outcome {
    let mut count = 0;
    let mut bad = 0;
    for n in 0..=7 {
        for g in all_graphs(n) {
            count += 1;
            let s = to_graph6(&g);
            let el = to_edge_list(&g);
            let ok = from_graph6(&s).is_ok_and(|h| h == g && to_graph6(&h) == s)
                && from_edge_list(&el).is_ok_and(|h| h == g && to_edge_list(&h) == el);
            if !ok {
                bad += 1;
            }
        }
    }
    let detail = format!("{count} graphs, {bad} round-trip failures");
    if bad == 0 {
        pass(detail)
    } else {
        fail(detail)
    }
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 7] = [
        (
            "classification sweep n ≤ 7 agrees with the oracle",
            criterion_1,
        ),
        ("fixture identities K5^- and P*", criterion_2),
        ("O_Δ family for Δ in [4, 8]", criterion_3),
        ("Δ+1 engine on 1000 random graphs", criterion_4),
        ("property suite", criterion_5),
        ("optimal colorings use exactly χ' colors", criterion_6),
        ("graph6 and edge-list round trips n ≤ 7", criterion_7),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = f();
        println!(
            "criterion {}: {} - {name}: {} [{:.1}s]",
            i + 1,
            if out.ok { "PASS" } else { "FAIL" },
            out.detail,
            start.elapsed().as_secs_f64()
        );
        if !out.ok {
            failed += 1;
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
