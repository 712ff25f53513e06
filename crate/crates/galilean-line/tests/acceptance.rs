//! Acceptance run: one pass/fail line per criterion, nonzero exit if any
//! criterion fails.

use std::process::Command;
use std::time::{Duration, Instant};

use galilean_line::config::RunConfig;
use galilean_line::report::{CheckReport, CheckRow};
use galilean_line::suites::{obstruction_report, run_suite, Suite};

struct Outcome {
    id: usize,
    title: &'static str,
    pass: bool,
    detail: String,
    elapsed: Duration,
    budget: Option<Duration>,
}

/// Rows of `report` selected by `keep`; an empty selection fails.
fn judge(report: &CheckReport, keep: impl Fn(&CheckRow) -> bool) -> (bool, String) {
    let rows: Vec<&CheckRow> = report.checks.iter().filter(|r| keep(r)).collect();
    let failed: Vec<String> = rows
        .iter()
        .filter(|r| !r.pass)
        .map(|r| format!("{}={}", r.name, galilean_line::report::canonical_json(&r.residual)))
        .collect();
    if rows.is_empty() {
        return (false, "no checks selected".into());
    }
    let detail = if failed.is_empty() {
        format!("{} checks", rows.len())
    } else {
        format!("{}/{} checks failed: {}", failed.len(), rows.len(), failed.join(", "))
    };
    (failed.is_empty(), detail)
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn glg(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_glg"))
        .args(args)
        .env_remove("GLG_CONFIG")
        .output()
        .expect("glg binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn cli_criterion() -> (bool, String) {
    let mut problems = Vec::new();
    let (c1, a) = glg(&["verify", "generators"]);
    let (c2, b) = glg(&["verify", "generators"]);
    if a != b || a.is_empty() {
        problems.push("verify generators output differs between runs".to_string());
    }
    let (c3, x) = glg(&["--order", "6", "verify", "extension", "--trials", "5"]);
    let (_, y) = glg(&["--order", "6", "verify", "extension", "--trials", "5"]);
    if x != y {
        problems.push("verify extension output differs between runs".to_string());
    }
    let (c4, _) = glg(&["obstruction", "--n-max", "4"]);
    let (c5, _) = glg(&["verify", "no-such-suite"]);
    let (c6, _) = glg(&["--order", "1", "verify", "group"]);
    let expect = [(c1, 0, "passing suite"), (c2, 0, "passing suite"), (c3, 0, "passing suite"), (c4, 1, "failing suite"), (c5, 2, "unknown suite"), (c6, 2, "invalid order")];
    for (got, want, what) in expect {
        if got != want {
            problems.push(format!("{what}: exit {got}, expected {want}"));
        }
    }
    if problems.is_empty() {
        (true, "byte-identical reruns; exit codes 0/1/2 as expected".into())
    } else {
        (false, problems.join("; "))
    }
}

fn main() {
    let cfg = RunConfig::default();
    let mut out: Vec<Outcome> = Vec::new();
    let mut push = |id, title, (pass, detail): (bool, String), elapsed, budget: Option<u64>| {
        out.push(Outcome { id, title, pass, detail, elapsed, budget: budget.map(Duration::from_secs) })
    };
    let has = |r: &CheckRow, prefixes: &[&str]| prefixes.iter().any(|p| r.name.starts_with(p));

    let (group, t) = timed(|| run_suite(Suite::Group, &cfg));
    push(1, "group axioms", judge(&group, |_| true), t, Some(10));

    let (ext, t_ext) = timed(|| run_suite(Suite::Extension, &cfg));
    push(2, "extension validity", judge(&ext, |r| has(r, &["standard_", "extended_"])), t_ext, Some(10));
    push(3, "negative controls", judge(&ext, |r| has(r, &["rate_symmetric", "shifted_antisymmetric", "rate_antisymmetric"])), t_ext, None);

    let (obs, t) = timed(|| obstruction_report(8, &cfg));
    push(4, "obstruction theorem", judge(&obs, |_| true), t, Some(5));

    push(5, "dual-phase identity", judge(&ext, |r| r.name == "dual_phase"), t_ext, None);

    let (gens, t) = timed(|| run_suite(Suite::Generators, &cfg));
    push(6, "generators", judge(&gens, |_| true), t, Some(30));

    let (coc, t) = timed(|| run_suite(Suite::Cocycle, &cfg));
    let seven = ["two_cocycle_forms_agree", "three_cocycle_zero_shift", "three_cocycle_nonzero", "galilei_reduction", "internal_energy"];
    push(7, "representation cocycles", judge(&coc, |r| seven.contains(&r.name.as_str())), t, None);
    push(8, "unitarity", judge(&coc, |r| r.name.starts_with("state_")), t, None);

    let (dynm, t) = timed(|| run_suite(Suite::Dynamics, &cfg));
    push(9, "hamiltonian as generator", judge(&dynm, |r| has(r, &["hamiltonian_generator", "canonical_commutator", "hp_commutator"])), t, Some(60));
    push(10, "equivalence principle", judge(&dynm, |r| has(r, &["equivalence_", "strang_order"])), t, Some(120));

    let (semi, t) = timed(|| run_suite(Suite::Semigroup, &cfg));
    push(11, "map semigroup", judge(&semi, |_| true), t, Some(30));

    let (cli, t) = timed(cli_criterion);
    push(12, "cli determinism and exit codes", cli, t, None);

    let mut all = true;
    for o in &out {
        let over = o.budget.is_some_and(|b| o.elapsed > b);
        let pass = o.pass && !over;
        all &= pass;
        let budget = o.budget.map(|b| format!(" (budget {}s)", b.as_secs())).unwrap_or_default();
        let over = if over { " OVER BUDGET" } else { "" };
        println!(
            "criterion {:>2} {:<32} {} [{:.2}s{budget}{over}] {}",
            o.id,
            o.title,
            if pass { "PASS" } else { "FAIL" },
            o.elapsed.as_secs_f64(),
            o.detail
        );
    }
    let failed = out.iter().filter(|o| !o.pass).count();
    println!("acceptance: {} of {} criteria passed", out.len() - failed, out.len());
    if !all {
        std::process::exit(1);
    }
}
