//! One line per acceptance property, exact equality throughout.

use kummer_core::check::Report;
use kummer_core::grid;
use kummer_core::Exec;
use std::process::Command;
use std::time::{Duration, Instant};

fn line(id: u8, name: &str, report: &Report, elapsed: Duration, budget: Option<Duration>) -> bool {
    let in_time = budget.is_none_or(|b| elapsed < b);
    let ok = report.passed() && in_time;
    let detail: Vec<String> = report
        .checks
        .iter()
        .map(|c| if c.detail.is_empty() { c.name.clone() } else { format!("{} ({})", c.name, c.detail) })
        .collect();
    let budget = budget.map(|b| format!(" / budget {b:?}")).unwrap_or_default();
    println!(
        "criterion {id:>2} {}: {name} in {elapsed:.2?}{budget}: {}",
        if ok { "PASS" } else { "FAIL" },
        detail.join("; ")
    );
    ok
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let out = f();
    (out, t.elapsed())
}

fn single(check: kummer_core::check::Check) -> Report {
    Report { checks: vec![check] }
}

fn grid_run() -> (Vec<u8>, bool) {
    let out = Command::new(env!("CARGO_BIN_EXE_kummer")).args(["grid", "--json"]).output().expect("binary runs");
    (out.stdout, out.status.success())
}

#[test]
fn acceptance() {
    let exec = Exec::Parallel;
    let secs = Duration::from_secs;
    let mut all = true;

    let (r, t) = timed(|| single(grid::structure_sweep(exec)));
    all &= line(1, "structure sweep", &r, t, Some(secs(10)));
    let (r, t) = timed(|| single(grid::oracle_agreement(exec)));
    all &= line(2, "brute-force oracle agreement", &r, t, Some(secs(60)));
    let (r, t) = timed(grid::named_instances);
    all &= line(3, "named instances", &r, t, None);
    let (r, t) = timed(|| single(grid::psi_identity(exec)));
    all &= line(4, "psi inverse identity", &r, t, None);
    let (r, t) = timed(|| single(grid::rouquier_compatibility(exec)));
    all &= line(5, "rouquier compatibility", &r, t, None);
    let (r, t) = timed(|| single(grid::case_partition()));
    all &= line(6, "case partition", &r, t, None);
    let (r, t) = timed(|| single(grid::cohomology_dimensions(0)));
    all &= line(7, "cohomology dimensions", &r, t, None);
    let (r, t) = timed(|| grid::obstruction_comparator(0));
    all &= line(8, "obstruction comparator", &r, t, None);
    let (r, t) = timed(|| grid::fixed_locus(exec).expect("fixed-locus run"));
    all &= line(9, "fixed-locus combinatorics", &r, t, Some(secs(5)));
    let (r, t) = timed(|| grid::parity_tables().expect("parity run"));
    all &= line(10, "parity and fibration tables", &r, t, None);

    let ((first, ok1), t1) = timed(grid_run);
    let ((second, ok2), t2) = timed(grid_run);
    let same = first == second && !first.is_empty();
    let check = kummer_core::check::Check::new(
        "byte_identical",
        same && ok1 && ok2,
        format!("{} bytes, exit codes ok: {}", first.len(), ok1 && ok2),
    );
    all &= line(11, "determinism of `grid`", &single(check), t1 + t2, None);

    assert!(all, "some acceptance criteria failed");
}
