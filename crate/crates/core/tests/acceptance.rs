//! One test per acceptance criterion. Each prints a single
//! `criterion N: PASS|FAIL ...` line straight to stdout, bypassing capture.

mod common;

use std::collections::BTreeSet;
use std::io::Write;
use std::time::{Duration, Instant};

use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

use satlab::constructions::{
    ehm_graph, lifted_claimed_maximal, lifted_family, nonexistence_case, shattering_set, system_family,
    tsat_min_deg_upper_witness, tsat_upper_witness, twin_free_saturated_with_branch, TwinFreeBranch,
};
use satlab::graph::canonical_form;
use satlab::saturation::{is_saturated, is_tsat_witness, is_twin_free_saturated};
use satlab::search::{
    classify_33_systems, e_rt, host_census, m_shatter, s3t_prime, s_rt, sat_min, tsat_min, EnumerationBudget, Status,
};
use satlab::systems::{assemble, check_maximal, check_system, cleanup_step, cleanup_target, lift, restrict};

/// Largest admissible `(e(G) - 6n) / n^{4/5}` for the `6n + o(n)` witnesses.
const C_MAX: f64 = 8.0;

fn report(n: u32, pass: bool, detail: &str, elapsed: Duration, cap: Duration) -> bool {
    let within = elapsed <= cap;
    let ok = pass && within;
    let line = format!(
        "criterion {n}: {} {detail} [{:.1}s of {}s]\n",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        cap.as_secs()
    );
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(line.as_bytes());
    let _ = out.flush();
    ok
}

fn mins(m: u64) -> Duration {
    Duration::from_secs(60 * m)
}

fn budget() -> EnumerationBudget {
    EnumerationBudget::default()
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn criterion_1_ehm_formula() {
    let start = Instant::now();
    let mut bad = Vec::new();
    for (r, ns) in [(3usize, 3..=8usize), (4, 4..=8)] {
        for n in ns {
            let rec = sat_min(n, r, &budget()).unwrap();
            let expected = (r - 2) * n - (r - 1) * (r - 2) / 2;
            let iso = rec
                .witness_graph()
                .is_some_and(|w| canonical_form(&w) == canonical_form(&ehm_graph(n, r).unwrap()));
            if rec.value != Some(expected as u64) || !iso {
                bad.push(format!("(n={n}, r={r}): got {:?}, want {expected}, witness iso {iso}", rec.value));
            }
        }
    }
    let detail = if bad.is_empty() { "sat(n,3)=n-1 for n in 3..8, sat(n,4)=2n-3 for n in 4..8".into() } else { bad.join("; ") };
    assert!(report(1, bad.is_empty(), &detail, start.elapsed(), mins(5)));
}

#[test]
fn criterion_2_existence_table() {
    let start = Instant::now();
    let mut exists = Vec::new();
    let mut none = Vec::new();
    let mut other = Vec::new();
    for n in 0..=8 {
        let rec = tsat_min(n, 3, None, &budget()).unwrap();
        match rec.status {
            Status::Found => exists.push(n),
            Status::Nonexistent => none.push(n),
            Status::BudgetExceeded => other.push(n),
        }
    }
    let pass = exists == [0, 1, 2, 5, 8] && none == [3, 4, 6, 7] && other.is_empty();
    let detail = format!("exists {exists:?}, nonexistent {none:?}, over budget {other:?}");
    assert!(report(2, pass, &detail, start.elapsed(), mins(10)));
}

#[test]
fn criterion_3_twin_free_constructions() {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut branches = BTreeSet::new();
    let mut checked = 0;
    for r in 3..=6 {
        for n in 0..=60 {
            match twin_free_saturated_with_branch(n, r) {
                Ok((g, branch)) => {
                    checked += 1;
                    branches.insert(format!("{branch:?}"));
                    if g.n() != n || !is_twin_free_saturated(&g, r) {
                        bad.push(format!("(n={n}, r={r}, {branch:?})"));
                    }
                }
                Err(e) if nonexistence_case(n, r).is_some() => {
                    let _ = e;
                }
                Err(e) => bad.push(format!("(n={n}, r={r}): {e}")),
            }
        }
    }
    let required = [
        TwinFreeBranch::Shattering,
        TwinFreeBranch::Petersen,
        TwinFreeBranch::C5,
        TwinFreeBranch::C7Complement,
        TwinFreeBranch::C8TwoChordsComplement,
        TwinFreeBranch::Wagner,
    ];
    let missing: Vec<_> = required.iter().map(|b| format!("{b:?}")).filter(|b| !branches.contains(b)).collect();
    let pass = bad.is_empty() && missing.is_empty();
    let detail = format!("{checked} graphs checked, branches {branches:?}, failures {bad:?}, missing {missing:?}");
    assert!(report(3, pass, &detail, start.elapsed(), mins(1)));
}

/// `|H_{t,l}|`, `e(H_{t,l})` (or `None` when only regularity is stated), and `|F_{t,l}|`.
fn family_formulas(t: usize, l: usize) -> (usize, Option<usize>, usize) {
    match t {
        2 => (l, Some((l * l - 2 * l).div_ceil(4)), l / 2),
        3 => (2 * l, Some(l * l - 2 * l), 2 * l),
        4 => (2 * l * l, Some(l.pow(4) - 2 * l.pow(3) + 2 * l * l), l * l * (l - 1) * (l - 1) / 2),
        _ => (t * l * l, None, l.pow(t as u32)),
    }
}

#[test]
fn criterion_4_construction_properties() {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut cases = 0;
    for t in 2..=6 {
        let ls = if t == 3 { 3..=5 } else { 2..=5 };
        for l in ls {
            cases += 1;
            let (order, edges, size) = family_formulas(t, l);
            let base = system_family(t, l).unwrap();
            if base.host.n() != order {
                bad.push(format!("(t={t},l={l}) order {} != {order}", base.host.n()));
            }
            match edges {
                Some(e) if base.host.edge_count() != e => {
                    bad.push(format!("(t={t},l={l}) edges {} != {e}", base.host.edge_count()))
                }
                None if base.host.degrees().iter().any(|&d| d != 2 * l * (l - 1)) => {
                    bad.push(format!("(t={t},l={l}) not {}-regular", 2 * l * (l - 1)))
                }
                _ => {}
            }
            if base.family.len() != size {
                bad.push(format!("(t={t},l={l}) |F| {} != {size}", base.family.len()));
            }
            if !check_system(&base).unwrap().is_valid() {
                bad.push(format!("(t={t},l={l}) base system invalid"));
            }
            let lifted = lifted_family(t, l).unwrap();
            if !check_system(&lifted).unwrap().is_valid() {
                bad.push(format!("(t={t},l={l}) lifted system invalid"));
            }
            let claimed = !(t == 2 && l % 2 == 1);
            assert_eq!(lifted_claimed_maximal(t, l), claimed);
            let (maximal, edge) = check_maximal(&lifted).unwrap();
            if maximal != claimed {
                bad.push(format!("(t={t},l={l}) lift maximal={maximal}, claimed {claimed}, missing edge {edge:?}"));
            }
            if t >= 5 && !lifted.host.is_twin_free() {
                bad.push(format!("(t={t},l={l}) lifted host has twins"));
            }
        }
    }
    let detail = if bad.is_empty() { format!("{cases} (t,l) cases") } else { format!("{cases} (t,l) cases; {}", bad.join("; ")) };
    assert!(report(4, bad.is_empty(), &detail, start.elapsed(), mins(2)));
}

#[test]
fn criterion_5_small_tables() {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut lines = Vec::new();
    for (t, formula) in [(1usize, (|_| 1) as fn(usize) -> u64), (2, |_| 2), (3, |m| ((m - 1) / 2) as u64)] {
        let mut row = Vec::new();
        let mut stable_from = None;
        for m in 3..=8 {
            let v = s_rt(m, 3, t, &budget()).unwrap().value;
            let f = formula(m);
            row.push(format!("{m}:{}/{f}", v.map_or("-".into(), |x| x.to_string())));
            if v == Some(f) {
                stable_from.get_or_insert(m);
            } else {
                stable_from = None;
                if (5..=7).contains(&m) {
                    bad.push(format!("s_3,{t}({m})={v:?} != {f}"));
                }
            }
        }
        lines.push(format!("s_3,{t} searched/formula [{}] window from {stable_from:?}", row.join(" ")));
    }
    let mut row = Vec::new();
    for s in 1..=3 {
        let v = e_rt(s, 3, 3, false, &budget()).unwrap().value;
        let f = (s * s - s) as u64;
        row.push(format!("{s}:{}/{f}", v.map_or("-".into(), |x| x.to_string())));
        if v != Some(f) {
            bad.push(format!("e_3,3({s})={v:?} != {f}"));
        }
    }
    lines.push(format!("e_3,3 searched/formula [{}]", row.join(" ")));
    let detail = format!("{}; mismatches: {}", lines.join("; "), if bad.is_empty() { "none".into() } else { bad.join(", ") });
    assert!(report(5, bad.is_empty(), &detail, start.elapsed(), mins(30)));
}

#[test]
fn criterion_6_shattering() {
    let start = Instant::now();
    let m: Vec<Option<u64>> = (2..=4).map(|k| m_shatter(k, &budget()).unwrap().value).collect();
    let sets_ok = (2..=4).all(|k| shattering_set(k, None).unwrap().shatters_all_pairs());
    let pass = m[0] == Some(4) && m[1] == Some(4) && m[2].is_some_and(|v| v <= 7) && sets_ok;
    let detail = format!("m(2)={:?} m(3)={:?} m(4)={:?} (exact, bound 7)", m[0], m[1], m[2]);
    assert!(report(6, pass, &detail, start.elapsed(), mins(1)));
}

#[test]
fn criterion_7_large_witnesses() {
    let start = Instant::now();
    let mut pass = true;
    let mut parts = Vec::new();
    for n in [2000usize, 10_000] {
        let w = tsat_upper_witness(n).unwrap();
        let g = &w.graph;
        let excess = g.edge_count() as f64 - 6.0 * n as f64;
        let c = excess / (n as f64).powf(0.8);
        let ok = g.n() == n && is_twin_free_saturated(g, 3) && g.min_degree() == Some(6) && c <= C_MAX;
        pass &= ok;
        parts.push(format!(
            "n={n}: e={} e-6n={excess} C={c:.3} l={} rule={:?} ok={ok}",
            g.edge_count(),
            w.l,
            w.rule
        ));
    }
    let detail = format!("{}; C_MAX={C_MAX}", parts.join("; "));
    assert!(report(7, pass, &detail, start.elapsed(), mins(10)));
}

#[test]
fn criterion_8_min_degree_witness() {
    let start = Instant::now();
    let (n, t) = (3000, 6);
    let w = tsat_min_deg_upper_witness(n, 3, t).unwrap();
    let g = &w.graph;
    let pass = g.n() == n && is_tsat_witness(g, 3, t);
    let detail = format!("n={n} e={} e-6n={}", g.edge_count(), g.edge_count() as i64 - (t * n) as i64);
    assert!(report(8, pass, &detail, start.elapsed(), mins(10)));
}

#[test]
fn criterion_9_property_suites() {
    let start = Instant::now();
    let mut bad: Vec<String> = Vec::new();
    let mut runner = TestRunner::deterministic();

    // Saturation of G(H, F) against validity plus maximality.
    let (mut yes, mut no) = (0, 0);
    for _ in 0..400 {
        let inst = common::arb_r_system().new_tree(&mut runner).unwrap().current();
        let system_ok = check_system(&inst).unwrap().is_valid() && check_maximal(&inst).unwrap().0;
        if is_saturated(&assemble(&inst.host, &inst.family), inst.r) != system_ok {
            bad.push(format!("assembly mismatch on {inst:?}"));
        }
        if system_ok {
            yes += 1;
        } else {
            no += 1;
        }
    }

    // Lift then restrict.
    for _ in 0..200 {
        let inst = common::arb_primed_system().new_tree(&mut runner).unwrap().current();
        let lifted = lift(&inst).unwrap();
        let back = restrict(&lifted, lifted.m() - 1).unwrap();
        if back.host != inst.host || back.family != inst.family || !check_system(&lifted).unwrap().is_valid() {
            bad.push("lift/restrict round trip".into());
        }
    }

    // Coning and blow-up round trips.
    for _ in 0..200 {
        let g = common::arb_graph(7).new_tree(&mut runner).unwrap().current();
        for (r, s) in [(3, 1), (3, 2), (4, 1)] {
            if is_saturated(&g, r) != is_saturated(&g.cone(s), r + s) {
                bad.push(format!("cone mismatch r={r} s={s}"));
            }
        }
        let (q, spec) = g.twin_quotient();
        if canonical_form(&q.blow_up(&spec).unwrap()) != canonical_form(&g) {
            bad.push("blow-up of twin quotient".into());
        }
    }

    // Cleanup growth bound.
    let mut cleanup_steps = 0;
    for _ in 0..200 {
        let Ok(tree) = common::arb_maximal_rt_system().new_tree(&mut runner) else { continue };
        let mut inst = tree.current();
        let t = inst.t.unwrap();
        while cleanup_target(&inst).is_some() {
            let out = cleanup_step(&inst).unwrap();
            cleanup_steps += 1;
            if out.added_edges > (t + 1) * binom(t, 2) || out.system.m() + 1 != inst.m() {
                bad.push(format!("cleanup bound t={t}: added {}", out.added_edges));
            }
            inst = out.system;
        }
    }

    // Host-size lower bound and intersecting-family bound over enumerated hosts.
    let mut hosts = 0;
    let mut ekr_over = Vec::new();
    for (r, ms, ts) in [(3usize, 1..=7usize, 1..=4usize), (4, 2..=6, 2..=4)] {
        for m in ms.clone() {
            for t in ts.clone().filter(|&t| t <= m) {
                for c in host_census(m, r, t, &budget()).unwrap() {
                    hosts += 1;
                    let e = c.host.edge_count();
                    if c.candidates > 0 && (m > e + t || e > binom(m, 2)) {
                        bad.push(format!("m-t <= e(H) fails r={r} m={m} t={t} e={e}"));
                    }
                    if c.best.len() > binom(m + 2 - r, t + 2 - r) {
                        ekr_over.push((r, m, t, c.best.len()));
                    }
                }
            }
        }
    }

    // Exact chains between the set maxima and the edge minima.
    let mut chain = Vec::new();
    for m in 1..=6 {
        for t in 1..=3.min(m) {
            let a = s_rt(m, 3, t, &budget()).unwrap().value.unwrap();
            let b = s3t_prime(m, t, &budget()).unwrap().value.unwrap();
            let c = s_rt(m + 1, 3, t + 1, &budget()).unwrap().value.unwrap();
            chain.push((m, t, a, b, c));
            if !(a <= b && b <= c) {
                bad.push(format!("s chain fails m={m} t={t}: {a} {b} {c}"));
            }
        }
    }
    for s in 1..=3 {
        let e: Vec<u64> = (3..=5).map(|t| e_rt(s, 3, t, false, &budget()).unwrap().value.unwrap()).collect();
        if e.windows(2).any(|w| w[1] > w[0]) {
            bad.push(format!("e_3,t+1({s}) > e_3,t({s}): {e:?}"));
        }
    }

    if yes == 0 || no == 0 || yes + no < 200 {
        bad.push(format!("assembly sample unbalanced: {yes} maximal, {no} not"));
    }
    let detail = format!(
        "{} systems ({yes} maximal), {cleanup_steps} cleanup steps, {hosts} hosts, {} chain points, EKR exceeded at small m {:?}; failures {:?}",
        yes + no,
        chain.len(),
        ekr_over,
        bad
    );
    assert!(report(9, bad.is_empty(), &detail, start.elapsed(), mins(15)));
}

#[test]
fn criterion_10_stability_report() {
    let start = Instant::now();
    let rep = classify_33_systems(8, &budget()).unwrap();
    let rows: Vec<String> =
        rep.rows.iter().map(|r| format!("|F|={}: {} systems, {} standard", r.family_size, r.systems, r.standard)).collect();
    let detail = format!("report only, m <= {}: {}; standard from |F| = {:?}", rep.max_m, rows.join(", "), rep.threshold);
    assert!(report(10, true, &detail, start.elapsed(), mins(15)));
}
