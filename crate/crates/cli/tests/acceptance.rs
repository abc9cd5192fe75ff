//! Acceptance criteria 1-10, all exact (tolerance zero).
//!
//! Two cold/warm runs of `fusion verify all --format json` supply the
//! evidence; each criterion prints one line and the test fails if any does.

use std::collections::BTreeSet;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use fusion_core::composition::sorted_tuples;
use fusion_core::Composition;
use serde_json::Value;

struct Run {
    reports: Vec<Value>,
    code: Option<i32>,
    elapsed: Duration,
}

fn verify_all(cache: &Path) -> Run {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_fusion"))
        .args(["verify", "all", "--format", "json", "--seed", "0"])
        .arg("--cache-dir")
        .arg(cache)
        .output()
        .expect("binary runs");
    let reports = String::from_utf8(out.stdout)
        .expect("utf8")
        .lines()
        .map(|l| serde_json::from_str(l).expect("one JSON report per line"))
        .collect();
    Run {
        reports,
        code: out.status.code(),
        elapsed: start.elapsed(),
    }
}

fn claim<'a>(run: &'a Run, name: &str) -> Vec<&'a Value> {
    run.reports.iter().filter(|r| r["claim"] == name).collect()
}

fn status(r: &Value) -> &str {
    r["status"].as_str().unwrap_or("")
}

fn failures(rs: &[&Value]) -> Vec<String> {
    rs.iter()
        .filter(|r| status(r) != "pass")
        .map(|r| format!("{} {} {}: expected {} got {}", r["claim"], r["anchor"], r["inputs"], r["expected"], r["got"]))
        .collect()
}

fn all_pass(rs: &[&Value]) -> bool {
    rs.iter().all(|r| status(r) == "pass")
}

fn n_of(r: &Value) -> u64 {
    r["inputs"]["n"].as_u64().unwrap_or(0)
}

fn strip_timing(rs: &[Value]) -> Vec<Value> {
    rs.iter()
        .map(|r| {
            let mut r = r.clone();
            r.as_object_mut().expect("object").remove("ms");
            r
        })
        .collect()
}

struct Verdict {
    ok: bool,
    detail: String,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Verdict {
    Verdict { ok, detail: detail.into() }
}

fn moves_on(grid: &[Composition]) -> usize {
    grid.iter().map(|a| (1..a.n()).filter(|&i| a.a(i) > 1).count()).sum()
}

#[test]
fn acceptance_criteria() {
    let dir = tempfile::tempdir().unwrap();
    let first = verify_all(dir.path());
    let second = verify_all(dir.path());
    assert!(!first.reports.is_empty(), "verify all produced no reports");
    let grid = Composition::grid(4, 5);
    let mut lines: Vec<(u32, &str, Verdict)> = Vec::new();

    // 1
    let dims = claim(&first, "dim");
    let inputs: BTreeSet<String> = dims.iter().map(|r| r["inputs"]["a"].to_string()).collect();
    lines.push((
        1,
        "dim M^A = prod a_i, n <= 4, a_i <= 5",
        verdict(
            all_pass(&dims) && inputs.len() == grid.len() && grid.len() >= 125 && first.elapsed < Duration::from_secs(600),
            format!("{} labels, {} failures, whole run {:.1}s", inputs.len(), failures(&dims).len(), first.elapsed.as_secs_f64()),
        ),
    ));

    // 2
    let oracle = claim(&first, "oracle-character");
    let want = Composition::grid(3, 5).len() + sorted_tuples(4, 1, 3).len();
    lines.push((
        2,
        "quotient character == symmetric-polynomial oracle",
        verdict(
            all_pass(&oracle) && oracle.len() == want,
            format!("{}/{want} labels, failures {:?}", oracle.len(), failures(&oracle)),
        ),
    ));

    // 3
    let kernel = claim(&first, "kernel-dim");
    let stop: Vec<&Value> = claim(&first, "stop-leading-ones")
        .into_iter()
        .filter(|r| r["inputs"]["i"] == 1)
        .collect();
    let stop_want = grid.iter().filter(|a| a.n() >= 2 && a.a(1) > 1).count();
    let shifts_recorded = stop.iter().all(|r| !r["shift"].is_null());
    lines.push((
        3,
        "dim S_{i,i+1} formula; S_{1,2} ~ M^{(a_2-a_1+1,..)} up to shift",
        verdict(
            all_pass(&kernel) && kernel.len() == moves_on(&grid) && all_pass(&stop) && stop.len() == stop_want && shifts_recorded,
            format!(
                "{} kernels, {} S_12 cases, failures {:?}",
                kernel.len(),
                stop.len(),
                failures(&kernel).into_iter().chain(failures(&stop)).collect::<Vec<_>>()
            ),
        ),
    ));

    // 4
    let example = claim(&first, "filtration-example");
    let ms = example.first().and_then(|r| r["ms"].as_u64()).unwrap_or(u64::MAX);
    lines.push((
        4,
        "(4,5,6,9), i=3: 32+24+15+9+1000 = 1080",
        verdict(
            example.len() == 1 && all_pass(&example) && ms < 300_000,
            format!("got {}, {ms} ms", example.first().map(|r| r["got"].to_string()).unwrap_or_default()),
        ),
    ));

    // 5
    let tensor = claim(&first, "tensor-span");
    let tensor_want: usize = (1..=3)
        .map(|n| sorted_tuples(n, 1, 3).len().pow(2))
        .sum();
    lines.push((
        5,
        "diagonal e-span of v_A (x) v_B has dim prod c_i",
        verdict(
            all_pass(&tensor) && tensor.len() == tensor_want,
            format!("{}/{tensor_want} pairs, failures {:?}", tensor.len(), failures(&tensor)),
        ),
    ));

    // 6
    let mut desc = claim(&first, "mprop");
    desc.extend(claim(&first, "emb"));
    let applicable: Vec<&Value> = desc.iter().copied().filter(|r| status(r) != "skipped").collect();
    let pure_offset = applicable.iter().all(|r| r["shift"]["slope"] == 0);
    let emb_checked = applicable.iter().filter(|r| r["claim"] == "emb").count();
    lines.push((
        6,
        "mprop/emb spans == S_{i,i+1} up to one recorded q-shift",
        verdict(
            all_pass(&applicable) && pure_offset && emb_checked > 0 && applicable.len() > emb_checked,
            format!(
                "{} instances ({} emb), {} skipped by hypothesis, failures {:?}",
                applicable.len(),
                emb_checked,
                desc.len() - applicable.len(),
                failures(&applicable)
            ),
        ),
    ));

    // 7
    let mut algebra = claim(&first, "vect-basis");
    algebra.extend(claim(&first, "vect-relations"));
    let algebra_ns: BTreeSet<u64> = algebra.iter().map(|r| n_of(r)).collect();
    let table: Vec<&Value> = claim(&first, "transition-table");
    let table_ns: BTreeSet<u64> = table.iter().map(|r| n_of(r)).collect();
    let split: Vec<&Value> = claim(&first, "splitting-type");
    let split_ns: BTreeSet<u64> = split.iter().map(|r| n_of(r)).collect();
    let algebra_ok = all_pass(&algebra) && algebra_ns == (1..=6).collect();
    let table_ok = all_pass(&table) && table_ns == (3..=5).collect();
    let split_ok = all_pass(&split) && split_ns == (2..=5).collect();
    let mut why = Vec::new();
    if !algebra_ok {
        why.push(format!("algebra: {:?}", failures(&algebra)));
    }
    for r in table.iter().filter(|r| status(r) != "pass") {
        let count = r["got"]["mismatches"].as_array().map_or(0, Vec::len);
        why.push(format!("table n={}: {count} entries differ from the re-derivation", n_of(r)));
    }
    for r in split.iter().filter(|r| status(r) != "pass") {
        why.push(format!("E_{}: printed {} computed {}", n_of(r), r["expected"], r["got"]));
    }
    lines.push((
        7,
        "4n-1 fields closed; E_n table matches; E_n splitting as stated",
        verdict(
            algebra_ok && table_ok && split_ok,
            if why.is_empty() { "all sub-checks hold".to_string() } else { why.join("; ") },
        ),
    ));

    // 8
    let jac = claim(&first, "jacobian");
    let jac_ok = all_pass(&jac)
        && jac.iter().map(|r| n_of(r)).collect::<BTreeSet<_>>() == (1..=6).collect()
        && jac.iter().all(|r| r["got"]["points"] == 20);
    lines.push((
        8,
        "det J(x -> 1/x) = (-1)^n x_0^(-2n) at 20 points, n = 1..6",
        verdict(jac_ok, format!("{} values of n, failures {:?}", jac.len(), failures(&jac))),
    ));

    // 9
    let coh = claim(&first, "cohomology-dim");
    let coh_labels: BTreeSet<String> = coh.iter().map(|r| r["inputs"]["label"].to_string()).collect();
    let coh_need: BTreeSet<String> = (1..=4)
        .flat_map(|n| sorted_tuples(n, 0, 4))
        .map(|l| serde_json::to_string(&l).unwrap())
        .collect();
    let ex = claim(&first, "cohomology-example");
    let pull = claim(&first, "pullback-sections");
    let ex_value = ex.first().map(|r| r["got"]["value"].clone()).unwrap_or(Value::Null);
    lines.push((
        9,
        "recursion == prod(a_i+1); d(2,3,4) = 60; pullback sections == dim M^A",
        verdict(
            all_pass(&coh) && coh_need.is_subset(&coh_labels) && all_pass(&ex) && ex_value == 60 && all_pass(&pull) && pull.len() == grid.len(),
            format!(
                "{} labels, d(2,3,4) = {ex_value}, {} pullbacks, failures {:?}",
                coh.len(),
                pull.len(),
                failures(&coh).into_iter().chain(failures(&pull)).collect::<Vec<_>>()
            ),
        ),
    ));

    // 10
    let same = strip_timing(&first.reports) == strip_timing(&second.reports);
    lines.push((
        10,
        "two seeded runs of verify all give identical JSON modulo timing",
        verdict(
            same && first.code == second.code,
            format!(
                "{} reports, exit codes {:?}/{:?}, cold {:.1}s warm {:.1}s",
                first.reports.len(),
                first.code,
                second.code,
                first.elapsed.as_secs_f64(),
                second.elapsed.as_secs_f64()
            ),
        ),
    ));

    for (n, what, v) in &lines {
        println!("criterion {n:>2}: {} (tolerance 0) {what} :: {}", if v.ok { "PASS" } else { "FAIL" }, v.detail);
    }
    let failed: Vec<u32> = lines.iter().filter(|l| !l.2.ok).map(|l| l.0).collect();
    assert!(failed.is_empty(), "criteria not met: {failed:?}");
}
