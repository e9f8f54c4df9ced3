//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fail.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use gha::hartree::{critical_coupling, general_gap_residuals, solve_level, xi, OscillatorModel, Phase};
use gha::hipt::{build_h_prime, second_order};
use gha::ladder::field_power;
use gha::oracle::converged_levels;
use gha::qft::{self, FieldTheory};
use gha::reports::reference::{ReferenceCell, INTERNALLY_INCONSISTENT, TABLE1_LAMBDAS, TABLE2_LAMBDAS};
use gha::reports::{Convention, Provenance, ReferenceTable};
use gha::vacuum::{log_grid, log_log_slope, strong_coupling_scaling, vacuum_structure};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn disputed(table: u8, c: &ReferenceCell) -> bool {
    INTERNALLY_INCONSISTENT
        .iter()
        .any(|&(t, p, n, prov)| t == table && p == c.param && n == c.n && prov == c.provenance)
}

fn cells(table: u8, provenance: Provenance) -> Vec<ReferenceCell> {
    ReferenceTable::get(table)
        .expect("known table")
        .cells
        .into_iter()
        .filter(|c| c.provenance == provenance && !disputed(table, c))
        .collect()
}

/// Reported value of a Hartree (`order = 0`) or second-order (`order = 2`) level.
fn reported(table: u8, c: &ReferenceCell, order: u8) -> f64 {
    let conv = Convention::for_table(table, c.param).unwrap();
    let model = conv.model().unwrap();
    let raw = match order {
        0 => solve_level(&model, c.n).unwrap().energy,
        _ => second_order(&model, c.n).unwrap().e2,
    };
    conv.report(raw)
}

/// Checks every cell against `tol`; returns (failures, worst relative error, description of failures).
fn check_cells(table: u8, list: &[ReferenceCell], order: u8, tol: f64) -> (usize, f64, Vec<String>) {
    let mut worst = 0.0_f64;
    let mut bad = Vec::new();
    for c in list {
        let value = reported(table, c, order);
        let e = rel(value, c.value());
        worst = worst.max(e);
        if e > tol {
            bad.push(format!(
                "T{table} {:?} p={} n={}: {value:.6} vs {} ({e:.1e})",
                c.provenance, c.param, c.n, c.printed
            ));
        }
    }
    (bad.len(), worst, bad)
}

fn c1() -> Outcome {
    let model = OscillatorModel::quartic(1.0_f64, 1.0).unwrap();
    let start = Instant::now();
    let sol = solve_level(&model, 0).unwrap();
    let elapsed = start.elapsed();
    let residual = general_gap_residuals(&model, 0, sol.omega, 0.0).0.abs();
    outcome(
        sol.omega == 2.0 && residual < 1e-12 && elapsed < Duration::from_millis(1),
        format!("omega = {}, residual = {residual:.1e}, solve time = {elapsed:?}", sol.omega),
    )
}

fn c2() -> Outcome {
    let list = cells(1, Provenance::Gha);
    let start = Instant::now();
    let (fails, worst, bad) = check_cells(1, &list, 0, 5e-4);
    let elapsed = start.elapsed();
    outcome(
        list.len() == 30 && fails == 0 && elapsed < Duration::from_secs(1),
        format!("{} cells, {fails} over 5e-4, max rel {worst:.1e}, {elapsed:?}; {}", list.len(), bad.join("; ")),
    )
}

fn c3() -> Outcome {
    let list = cells(1, Provenance::Hipt);
    let (fails, worst, bad) = check_cells(1, &list, 2, 2e-3);
    let anchor = |lambda: f64, want: f64| {
        let e = second_order(&OscillatorModel::quartic(1.0, lambda).unwrap(), 0).unwrap().e2;
        (e, rel(e, want))
    };
    let (a1, r1) = anchor(1.0, 0.80321);
    let (a2, r2) = anchor(0.1, 0.55911);
    outcome(
        fails == 0 && r1 <= 5e-4 && r2 <= 5e-4,
        format!(
            "{} cells, {fails} over 2e-3, max rel {worst:.1e}; anchors {a1:.6} ({r1:.1e}), {a2:.6} ({r2:.1e}); {}",
            list.len(),
            bad.join("; ")
        ),
    )
}

fn c4() -> Outcome {
    let zeroth = cells(2, Provenance::Gha);
    let second = cells(2, Provenance::Hipt);
    let (f0, w0, b0) = check_cells(2, &zeroth, 0, 2e-3);
    let (f2, w2, b2) = check_cells(2, &second, 2, 2e-3);
    let mut wrong_phase = Vec::new();
    for c in zeroth.iter().chain(&second) {
        let model = Convention::for_table(2, c.param).unwrap().model().unwrap();
        let phase = solve_level(&model, c.n).unwrap().phase;
        let lc = critical_coupling(xi::<f64>(c.n), -1.0).unwrap();
        if phase != Phase::DwoSr || c.param <= lc {
            wrong_phase.push(format!("lambda={} n={} {phase}", c.param, c.n));
        }
    }
    wrong_phase.dedup();
    outcome(
        f0 + f2 == 0 && wrong_phase.is_empty(),
        format!(
            "E0: {} cells, {f0} over 2e-3, max rel {w0:.1e}; E2: {} cells, {f2} over 2e-3, max rel {w2:.1e}; \
             non-DWO_SR: {}; {}",
            zeroth.len(),
            second.len(),
            wrong_phase.len(),
            b0.iter().chain(&b2).cloned().collect::<Vec<_>>().join("; ")
        ),
    )
}

fn c5() -> Outcome {
    let lc = critical_coupling(0.5_f64, -1.0).unwrap();
    outcome((lc - 0.09007).abs() <= 1e-5, format!("lambda_c(1/2, -1) = {lc:.7}, target 0.09007 +- 1e-5"))
}

fn c6() -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    let mut fails = 0;
    let mut worst = 0.0_f64;
    let mut bad = Vec::new();
    for table in [3u8, 4] {
        let list = cells(table, Provenance::Gha);
        let (f, w, b) = check_cells(table, &list, 0, 5e-4);
        total += list.len();
        fails += f;
        worst = worst.max(w);
        bad.extend(b);
    }
    // earlier-calculation cells in table 3 are held to the oracle tolerance
    let earlier = cells(3, Provenance::ExternalRef);
    let mut ext_fails = Vec::new();
    for beta in gha::reports::reference::TABLE3_BETAS {
        let group: Vec<&ReferenceCell> = earlier.iter().filter(|c| c.param == beta).collect();
        let conv = Convention::for_table(3, beta).unwrap();
        let model = conv.model().unwrap();
        let n_max = group.iter().map(|c| c.n).max().unwrap();
        let scale = solve_level(&model, n_max).unwrap().energy.abs().max(1.0);
        let levels = converged_levels(&model, n_max, 1e-9 * scale).unwrap().levels;
        for c in group {
            let e = rel(conv.report(levels[c.n]), c.value());
            if e > 2e-3 {
                ext_fails.push(format!(
                    "T3 earlier beta={beta} n={}: {:.5} vs {} ({e:.1e})",
                    c.n,
                    conv.report(levels[c.n]),
                    c.printed
                ));
            }
        }
    }
    let elapsed = start.elapsed();
    outcome(
        fails == 0 && ext_fails.is_empty() && elapsed < Duration::from_secs(1),
        format!(
            "{total} GHA cells, {fails} over 5e-4, max rel {worst:.1e}; {} earlier cells, {} over 2e-3; {elapsed:?}; {}",
            earlier.len(),
            ext_fails.len(),
            bad.iter().chain(&ext_fails).cloned().collect::<Vec<_>>().join("; ")
        ),
    )
}

fn c7() -> Outcome {
    let mut agree_fail = Vec::new();
    let mut no_improve = Vec::new();
    let mut compared = 0;
    let mut points = 0;
    let mut worst = 0.0_f64;
    for (table, lambdas) in [(1u8, &TABLE1_LAMBDAS[..4]), (2, &TABLE2_LAMBDAS[..])] {
        let reference = cells(table, Provenance::ExternalRef);
        for &lambda in lambdas {
            let conv = Convention::for_table(table, lambda).unwrap();
            let model = conv.model().unwrap();
            let levels: Vec<usize> = ReferenceTable::get(table)
                .unwrap()
                .cells
                .iter()
                .filter(|c| c.param == lambda && c.provenance == Provenance::Gha && c.n <= 10)
                .map(|c| c.n)
                .collect();
            let n_max = *levels.iter().max().unwrap();
            let scale = solve_level(&model, n_max).unwrap().energy.abs().max(1.0);
            let exact = converged_levels(&model, n_max, 1e-9 * scale).unwrap().levels;
            for c in reference.iter().filter(|c| c.param == lambda && c.n <= 10) {
                compared += 1;
                let e = rel(conv.report(exact[c.n]), c.value());
                worst = worst.max(e);
                if e > 2e-3 {
                    agree_fail.push(format!(
                        "T{table} lambda={lambda} n={}: {:.5} vs {} ({e:.1e})",
                        c.n,
                        conv.report(exact[c.n]),
                        c.printed
                    ));
                }
            }
            for &n in &levels {
                points += 1;
                let e0 = solve_level(&model, n).unwrap().energy;
                let e2 = second_order(&model, n).unwrap().e2;
                if (e2 - exact[n]).abs() >= (e0 - exact[n]).abs() {
                    no_improve.push(format!(
                        "T{table} lambda={lambda} n={n}: |E2-Ex|={:.2e} >= |E0-Ex|={:.2e}",
                        (e2 - exact[n]).abs(),
                        (e0 - exact[n]).abs()
                    ));
                }
            }
        }
    }
    outcome(
        agree_fail.is_empty() && no_improve.is_empty(),
        format!(
            "{compared} references, {} over 2e-3 (max rel {worst:.1e}); {points} grid points, {} without improvement; {}",
            agree_fail.len(),
            no_improve.len(),
            agree_fail.iter().chain(&no_improve).cloned().collect::<Vec<_>>().join("; ")
        ),
    )
}

fn c8() -> Outcome {
    let mut runner = TestRunner::new_with_rng(Config::default(), TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let g = proptest::prop_oneof![0.1..3.0_f64, -2.0..-0.1_f64];
    let strategy = (proptest::sample::select(vec![4u32, 6, 8]), g, -3.0..3.0_f64, 0usize..40);
    let (mut worst_v, mut worst_hp, mut worst_e) = (0.0_f64, 0.0_f64, 0.0_f64);
    let mut per_power = [0usize; 3];
    for _ in 0..200 {
        let (power, g, log_l, n) = strategy.new_tree(&mut runner).unwrap().current();
        per_power[(power / 2 - 2) as usize] += 1;
        let model = OscillatorModel::new(power, g, 10f64.powf(log_l)).unwrap();
        let sol = solve_level(&model, n).unwrap();
        let mode = sol.mode();
        // V and its Hartree replacement, assembled independently of build_h_prime
        let quad = field_power(2, mode).scaled(0.5 * g);
        let v = &quad + &field_power(power, mode).scaled(model.lambda);
        let h_i = &quad + &sol.hartree_potential().scaled(model.lambda);
        let dv = (v.expectation(n) - h_i.expectation(n)).abs();
        let hp = build_h_prime(&model, &sol).expectation(n).abs();
        let direct = model.hamiltonian(mode).expectation(n);
        worst_v = worst_v.max(dv);
        worst_hp = worst_hp.max(hp);
        worst_e = worst_e.max(rel(sol.energy, direct));
    }
    outcome(
        worst_v <= 1e-9 && worst_hp <= 1e-9 && worst_e <= 1e-9,
        format!(
            "200 levels (quartic/sextic/octic = {:?}): max |<V>-<H_I>| = {worst_v:.1e}, max |<H'>| = {worst_hp:.1e}, \
             max rel |E - <H>| = {worst_e:.1e}",
            per_power
        ),
    )
}

fn c9() -> Outcome {
    let n0 = vacuum_structure(2.0).unwrap().n0;
    let model = OscillatorModel::quartic(1.0_f64, 1e3).unwrap();
    let samples = strong_coupling_scaling(&model, &log_grid(1e3, 1e5, 41)).unwrap();
    let slope = log_log_slope(&samples).unwrap();
    outcome(
        n0 == 0.125 && (slope - 1.0 / 3.0).abs() <= 0.01,
        format!("n0(omega=2) = {n0}; log-log slope over [1e3, 1e5] = {slope:.5}, target 1/3 +- 0.01"),
    )
}

fn c10() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    let mut ok = true;

    // derivative identities at the pinned point plus 20 sampled points
    let mut runner = TestRunner::new_with_rng(Config::default(), TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    let mut points = vec![(2.0, 50.0)];
    for _ in 0..20 {
        points.push((-1.0..1.0_f64, 5.0..100.0_f64).new_tree(&mut runner).unwrap().current());
        let last = points.last_mut().unwrap();
        last.0 = 10f64.powf(last.0);
    }
    let mut worst_id = 0.0_f64;
    for (m2, cutoff) in points {
        let h = 1e-4;
        let d =
            |n| (qft::stevenson(n, m2 + h, cutoff).unwrap() - qft::stevenson(n, m2 - h, cutoff).unwrap()) / (2.0 * h);
        let i0 = qft::stevenson(0, m2, cutoff).unwrap();
        let im1 = qft::stevenson(-1, m2, cutoff).unwrap();
        worst_id = worst_id.max(rel(d(1), 0.5 * i0)).max(rel(d(0), -0.5 * im1));
    }
    ok &= worst_id <= 1e-6;
    notes.push(format!("derivative identities max rel {worst_id:.1e}"));

    let mut worst_m = 0.0_f64;
    for (m2, lambda, cutoff) in [(1.0, 0.1, 10.0), (1.0, 1.0, 1e6), (2.0, 0.5, 100.0)] {
        let t = FieldTheory::new(m2, lambda, cutoff).unwrap();
        let bar = qft::solve_mass_gap(&t, 0.0).unwrap().m2_gap;
        worst_m = worst_m.max(rel(qft::renormalized(&t).unwrap().m_r2, bar));
    }
    ok &= worst_m <= 1e-10;
    notes.push(format!("mR2 vs gap mass max rel {worst_m:.1e}"));

    let strong = FieldTheory::new(1.0, 1.0, 1e6).unwrap();
    let ratio = qft::renormalized(&strong).unwrap().lambda_r / strong.lambda;
    let in_window = ratio > -2.0 && ratio < -1.9;
    ok &= in_window;
    notes.push(format!(
        "lambdaR/lambda at cutoff 1e6 = {ratio:.5} (window (-2, -1.9); gap mass^2 = {:.4e}, I_-1 = {:.5})",
        qft::solve_mass_gap(&strong, 0.0).unwrap().m2_gap,
        qft::solve_mass_gap(&strong, 0.0).unwrap().im1
    ));

    let weak: Vec<f64> = [1e-2, 1e-4, 1e-6, 1e-8]
        .iter()
        .map(|&l| {
            let t = FieldTheory::new(1.0, l, 10.0).unwrap();
            qft::renormalized(&t).unwrap().lambda_r / l
        })
        .collect();
    let weak_ok = weak.windows(2).all(|w| (w[1] - 1.0).abs() < (w[0] - 1.0).abs()) && (weak[3] - 1.0).abs() < 1e-6;
    ok &= weak_ok;
    notes.push(format!(
        "lambdaR/lambda as lambda -> 0: {:?}",
        weak.iter().map(|x| format!("{x:.8}")).collect::<Vec<_>>()
    ));

    let mut worst_u = 0.0_f64;
    for x in log_grid(0.1, 10.0, 20) {
        let a = qft::static_potential(x, 1.0).unwrap();
        let b = qft::static_potential_fourier(x, 1.0).unwrap();
        worst_u = worst_u.max(rel(b, a));
    }
    ok &= worst_u <= 1e-6;
    notes.push(format!("Fourier vs Bessel max rel {worst_u:.1e}"));

    let rate = qft::static_decay_rate(20.0, 1.0).unwrap();
    let raw = qft::static_log_slope(20.0, 1.0).unwrap();
    let rate_ok = rel(rate, -1.0) <= 0.01;
    ok &= rate_ok;
    notes.push(format!("slope at r*mR = 20 after the r^-3/2 prefactor: {rate:.5} (raw d lnU/dr = {raw:.5})"));

    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(30);
    notes.push(format!("{elapsed:?}"));
    outcome(ok, notes.join("; "))
}

fn c11(property_time: Duration) -> Outcome {
    let start = Instant::now();
    let mut codes = Vec::new();
    for table in ["1", "2", "3", "4"] {
        let status = Command::new(env!("CARGO_BIN_EXE_gha"))
            .args(["table", table, "--compare", "--no-meta"])
            .output()
            .expect("binary runs")
            .status;
        codes.push(status.code().unwrap_or(-1));
    }
    let total = start.elapsed() + property_time;
    outcome(
        codes.iter().all(|&c| c == 0) && total < Duration::from_secs(120),
        format!("table 1..4 --compare exit codes {codes:?}; tables plus property suites {total:?}"),
    )
}

type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("C1", "gap-equation exactness", c1),
        ("C2", "table 1 zeroth order", c2),
        ("C3", "table 1 second order", c3),
        ("C4", "table 2 double well", c4),
        ("C5", "critical coupling", c5),
        ("C6", "tables 3-4", c6),
        ("C7", "oracle agreement and improvement", c7),
        ("C8", "Hartree-condition suite", c8),
        ("C9", "vacuum structure", c9),
        ("C10", "field theory sector", c10),
    ];
    let mut failed = 0;
    let mut property_time = Duration::ZERO;
    let mut report = |id: &str, title: &str, o: Outcome, t: Duration| {
        if !o.pass {
            failed += 1;
        }
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] {id} {title} ({:.1} ms): {}", t.as_secs_f64() * 1e3, o.detail);
    };
    for (id, title, f) in criteria {
        let start = Instant::now();
        let o = f();
        let t = start.elapsed();
        if matches!(id, "C1" | "C2" | "C3" | "C4" | "C6" | "C7" | "C8" | "C9" | "C10") {
            property_time += t;
        }
        report(id, title, o, t);
    }
    let start = Instant::now();
    let o = c11(property_time);
    report("C11", "full regression time", o, start.elapsed());
    println!("{failed} of 11 criteria failed");
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
