//! Acceptance criteria 1–9. Each test prints one PASS/FAIL line.

use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;
use symcell::analysis::{Analysis, Options, GRAM_PERMUTATIONS};
use symcell::generators::{builtin_instances, gen_group_s3, gen_matrix_algebra};
use symcell::radical::{semisimplicity_battery, wedderburn_basis};
use symcell::FieldSpec;

fn verdict(n: u32, what: &str, ok: bool, elapsed: Duration, limit: Duration) {
    let in_time = elapsed < limit;
    let status = if ok && in_time { "PASS" } else { "FAIL" };
    println!("criterion {n}: {status} {what} ({:.3}s, limit {}s)", elapsed.as_secs_f64(), limit.as_secs());
    assert!(ok, "criterion {n} failed: {what}");
    assert!(in_time, "criterion {n} exceeded its time limit");
}

fn symcell(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_symcell")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn structured(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "structured"]);
    let (code, out) = symcell(&all);
    assert_eq!(code, 0, "{args:?}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn criterion_1_worked_example_dual_basis() {
    let start = Instant::now();
    let (code, text) = symcell(&["dualbasis", "--gen", "paper-s3"]);
    let elapsed = start.elapsed();
    let expected = [
        "D[(3)](1,1) = -s2 + s1s2 + s2s1",
        "D[(2,1)](1,1) = s1 + s2 - s1s2 - s2s1",
        "D[(2,1)](1,2) = s2 - s2s1",
        "D[(2,1)](2,1) = s2 - s1s2",
        "D[(2,1)](2,2) = s2 - s1s2 - s2s1 + s1s2s1",
        "D[(1^3)](1,1) = 1 - s1 - s2 + s1s2 + s2s1 - s1s2s1",
    ];
    let lines: Vec<&str> = text.lines().collect();
    let ok = code == 0 && lines == expected;
    verdict(1, "dual basis of the worked example", ok, elapsed, Duration::from_secs(1));
}

#[test]
fn criterion_2_worked_example_radical() {
    let start = Instant::now();
    let v = structured(&["radical", "--gen", "paper-s3"]);
    let elapsed = start.elapsed();
    let c = &v["result"]["checks"];
    let ok = c["dim_rad"] == 4 && c["dim_i"] == 4 && c["i_equal"] == true && c["i_contained"] == true;
    verdict(2, "dim rad A = dim I = 4 and I = rad A", ok, elapsed, Duration::from_secs(1));
}

type Perm = [usize; 3];

fn perm_mul(a: Perm, b: Perm) -> Perm {
    [a[b[0]], a[b[1]], a[b[2]]]
}

/// Φ on the (2,1) cell over GF(3) from permutation products, and its rank.
fn brute_force_gram_rank() -> usize {
    let s1 = [1, 0, 2];
    let s2 = [0, 2, 1];
    let g = [[0, 1, 2], s1, s2, perm_mul(s1, s2), perm_mul(s2, s1), perm_mul(perm_mul(s1, s2), s1)];
    let mul = |x: &[i64; 6], y: &[i64; 6]| {
        let mut out = [0i64; 6];
        for i in 0..6 {
            for j in 0..6 {
                let k = g.iter().position(|&h| h == perm_mul(g[i], g[j])).unwrap();
                out[k] = (out[k] + x[i] * y[j]).rem_euclid(3);
            }
        }
        out
    };
    let cells: [[i64; 6]; 6] = [
        [1, 1, 1, 1, 1, 1],
        [1, 1, 0, 0, 0, 0],
        [0, 0, 1, 1, 0, 0],
        [0, 0, 1, 0, 1, 0],
        [1, 0, 0, 0, 0, 1],
        [1, 0, 0, 0, 0, 0],
    ];
    // coordinates by exhaustive search over GF(3)^6
    let coords = |x: [i64; 6]| -> [i64; 6] {
        for code in 0..729i64 {
            let a: Vec<i64> = (0..6).map(|i| code / 3i64.pow(i) % 3).collect();
            let mut v = [0i64; 6];
            for k in 0..6 {
                for j in 0..6 {
                    v[j] = (v[j] + a[k] * cells[k][j]).rem_euclid(3);
                }
            }
            if v == x {
                return a.try_into().unwrap();
            }
        }
        unreachable!()
    };
    let pos = |s: usize, t: usize| 1 + 2 * s + t;
    let mut gram = [[0i64; 2]; 2];
    for t in 0..2 {
        for u in 0..2 {
            gram[t][u] = coords(mul(&cells[pos(0, t)], &cells[pos(u, 0)]))[pos(0, 0)];
        }
    }
    let det = (gram[0][0] * gram[1][1] - gram[0][1] * gram[1][0]).rem_euclid(3);
    if det != 0 {
        2
    } else if gram.iter().flatten().any(|&x| x != 0) {
        1
    } else {
        0
    }
}

#[test]
fn criterion_3_worked_example_strata() {
    let start = Instant::now();
    let r = structured(&["report", "--gen", "paper-s3"]);
    let rad = structured(&["radical", "--gen", "paper-s3"]);
    let oracle_rank = brute_force_gram_rank();
    let elapsed = start.elapsed();
    let s = &r["result"]["strata"];
    let cell21 = r["result"]["cells"].as_array().unwrap().iter().find(|c| c["label"] == "(2,1)").unwrap();
    let b = &rad["result"]["checks"]["bounds"];
    let ok = s["lambda3"] == serde_json::json!(["(3)"])
        && s["lambda1"] == serde_json::json!(["(1^3)"])
        && s["lambda2"] == serde_json::json!(["(2,1)"])
        && s["lambda4"] == serde_json::json!(["(1^3)"])
        && cell21["rank"] == 1
        && oracle_rank == 1
        && b["bound3_rhs"] == 4
        && b["bound3_lhs"] == 4;
    verdict(3, "strata, rank G((2,1)) = 1 and bound 4 ≤ dim I = 4", ok, elapsed, Duration::from_secs(1));
}

#[test]
fn criterion_4_identity_battery() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for inst in builtin_instances() {
        let a = Analysis::run(&inst).unwrap();
        let r = a.property_report(&Options::default());
        if !r.passed() {
            failures.push(r.summary());
        }
    }
    let elapsed = start.elapsed();
    for f in &failures {
        println!("  {f}");
    }
    verdict(4, "property suites on every built-in", failures.is_empty(), elapsed, Duration::from_secs(30));
}

#[test]
fn criterion_5_trace_independence() {
    let start = Instant::now();
    let opts = Options { traces: 5, ..Options::default() };
    let mut ok = true;
    for inst in builtin_instances() {
        let a = Analysis::run(&inst).unwrap();
        for (i, other) in a.sampled_ideals(&opts).unwrap().iter().enumerate() {
            if other.total != a.ideal.total {
                println!("  {} over {}: trace {i} changes I", inst.name, inst.algebra.field());
                ok = false;
            }
        }
    }
    verdict(5, "I equal under 5 random traces", ok, start.elapsed(), Duration::from_secs(30));
}

#[test]
fn criterion_6_semisimplicity_equivalence() {
    let start = Instant::now();
    let mut ok = true;
    for inst in builtin_instances() {
        let a = Analysis::run(&inst).unwrap();
        let b = match semisimplicity_battery(&a.ca, &a.dcb, &a.rad, &a.kdata) {
            Ok(b) => b,
            Err(e) => {
                println!("  {}: {e}", inst.name);
                ok = false;
                continue;
            }
        };
        let want = match inst.name.as_str() {
            "paper-s3" | "dual-numbers" => false,
            "group-s3" => true,
            n if n.starts_with("matrix:") => true,
            n if n.starts_with("direct-sum:") => false,
            _ => b.verdict(),
        };
        if b.verdict() != want {
            println!("  {} over {}: verdict {}", inst.name, inst.algebra.field(), b.verdict());
            ok = false;
        }
    }
    let (code, out) = symcell(&["semisimple", "--gen", "group-s3", "--field", "Q"]);
    ok &= code == 0 && out.contains("semisimple: yes");
    verdict(6, "five flags agree with the expected verdicts", ok, start.elapsed(), Duration::from_secs(5));
}

#[test]
fn criterion_7_wedderburn_basis() {
    let start = Instant::now();
    let mut ok = true;
    for inst in [gen_group_s3(FieldSpec::rationals()), gen_matrix_algebra(3, FieldSpec::rationals())] {
        let a = Analysis::run(&inst).unwrap();
        let b = semisimplicity_battery(&a.ca, &a.dcb, &a.rad, &a.kdata).unwrap();
        match wedderburn_basis(&a.ca, &a.dcb, &b) {
            Ok((basis, report)) => {
                ok &= basis.len() == inst.algebra.dim() && report.passed();
                if !report.passed() {
                    println!("  {report}");
                }
            }
            Err(e) => {
                println!("  {}: {e}", inst.name);
                ok = false;
            }
        }
    }
    verdict(7, "basis, cellular, orthogonal across cells", ok, start.elapsed(), Duration::from_secs(5));
}

#[test]
fn criterion_8_radical_cross_check() {
    let start = Instant::now();
    let mut ok = true;
    for inst in builtin_instances() {
        let a = Analysis::run(&inst).unwrap();
        let sum: usize = a.simples.iter().map(|s| s.dim * s.dim).sum();
        if a.rad.dim() != inst.algebra.dim() - sum {
            println!("  {}: {} != {} - {sum}", inst.name, a.rad.dim(), inst.algebra.dim());
            ok = false;
        }
    }
    verdict(8, "dim rad A = dim A − Σ (dim L_λ)²", ok, start.elapsed(), Duration::from_secs(30));
}

#[test]
fn criterion_9_gram_determinant_invariance() {
    let start = Instant::now();
    let mut ok = true;
    for (i, inst) in builtin_instances().into_iter().enumerate() {
        let a = Analysis::run(&inst).unwrap();
        let r = a.gram_permutation_report(GRAM_PERMUTATIONS, 1000 + i as u64);
        if !r.passed() {
            println!("  {r}");
            ok = false;
        }
    }
    verdict(9, "det G(λ) under 10 random M(λ) permutations", ok, start.elapsed(), Duration::from_secs(30));
}
