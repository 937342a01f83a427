//! Acceptance suite. Runs every criterion, prints one line per criterion and
//! exits nonzero if any failed.

use std::fs;
use std::process::Command;
use std::time::{Duration, Instant};

use sun2_cli::commands::suite_cases;
use sun2_core::faulhaber::{bracket_value, BracketVariant};
use sun2_core::realizations::ModePolynomial;
use sun2_core::sampling::{
    random_algebra, random_algebra_of_degree, random_mode_polynomial, random_nonzero_scalar, rng,
};
use sun2_core::scalar::{binomial, pow};
use sun2_core::verifier::CheckStatus;
use sun2_core::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn require_passed(label: &str, report: &VerificationReport) -> Result<usize, String> {
    let mut states = 0;
    for c in &report.checks {
        ensure(
            c.status == CheckStatus::Passed && c.states_checked > 0,
            || {
                format!(
                    "{label}: {} is {:?} ({:?})",
                    c.name, c.status, c.first_failure
                )
            },
        )?;
        states += c.states_checked;
    }
    Ok(states)
}

fn space(caps: &[u32]) -> SpaceSpec {
    SpaceSpec::new(caps).unwrap()
}

fn presets() -> Vec<(String, AlgebraSpec)> {
    let p = |preset| AlgebraSpec::preset(preset).unwrap();
    vec![
        ("su2".into(), p(Preset::Su2)),
        ("su11".into(), p(Preset::Su11)),
        (
            "higgs(2,1/3)".into(),
            p(Preset::Higgs {
                c1: int(2),
                c3: ratio(1, 3),
            }),
        ),
        (
            "quadratic(1,2,1/2)".into(),
            p(Preset::Quadratic {
                c0: int(1),
                c1: int(2),
                c2: ratio(1, 2),
            }),
        ),
    ]
}

/// The suite-1 draws: presets plus 20 seeded random algebras, each with the
/// four boson kinds and rational parameters drawn from its seed.
type Draw = (String, AlgebraSpec, Vec<(RealizationKind, Vec<u32>)>);

fn suite_one() -> Vec<Draw> {
    let mut out = Vec::new();
    for (i, (name, alg)) in presets().into_iter().enumerate() {
        let mut g = rng(500 + i as u64);
        let cases = suite_cases(alg.degree() as u32, || random_nonzero_scalar(&mut g));
        out.push((name, alg, cases));
    }
    for seed in 0..20u64 {
        let mut g = rng(seed);
        let alg = random_algebra(&mut g);
        let cases = suite_cases(alg.degree() as u32, || random_nonzero_scalar(&mut g));
        out.push((
            format!("random seed {seed} (n={})", alg.degree()),
            alg,
            cases,
        ));
    }
    out
}

fn dr_for(alg: &AlgebraSpec) -> DrTable {
    derive_dr(4.max(alg.dr_limit().max(0) as usize)).unwrap()
}

fn criterion_1() -> Outcome {
    let mut runs = 0;
    let mut states = 0;
    for (label, alg, cases) in suite_one() {
        let dr = dr_for(&alg);
        for (kind, caps) in cases {
            let r = build_kind(&alg, &kind, &space(&caps), &dr).map_err(|e| e.to_string())?;
            states += require_passed(&format!("{label} {}", kind.name()), &check_algebra(&r))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} realizations, {states} state checks"))
}

fn criterion_2() -> Outcome {
    let mut runs = 0;
    for (label, alg, cases) in suite_one() {
        let dr = dr_for(&alg);
        for (kind, caps) in cases {
            let s = space(&caps);
            let r = build_kind(&alg, &kind, &s, &dr).map_err(|e| e.to_string())?;
            let report = match kind.ideal() {
                None => check_fock_equivalence(&r, &build_fock_rep(&alg, &s).unwrap()),
                Some(ideal) => check_quotient_equivalence(&r, ideal),
            }
            .map_err(|e| e.to_string())?;
            require_passed(&format!("{label} {}", kind.name()), &report)?;
            runs += 1;
        }
    }
    Ok(format!("{runs} equivalence reports"))
}

/// Bernoulli numbers `B_0..B_k` from `sum_{j<=m} binom(m+1, j) B_j = 0`.
fn bernoulli(k: usize) -> Vec<ExactScalar> {
    let mut b = vec![int(1)];
    for m in 1..=k {
        let mut acc = int(0);
        for (j, bj) in b.iter().enumerate() {
            acc += ExactScalar::from(binomial(m as u32 + 1, j as u32)) * bj;
        }
        b.push(-acc / ExactScalar::from(binomial(m as u32 + 1, m as u32)));
    }
    b
}

fn factorial(n: u32) -> ExactScalar {
    (1..=n as i64).fold(int(1), |acc, k| acc * int(k))
}

fn criterion_3() -> Outcome {
    let dr = derive_dr(4).map_err(|e| e.to_string())?;
    let b = bernoulli(10);
    for r in 0..5 {
        let k = 2 * r + 2;
        let oracle = &b[k] / factorial(k as u32);
        ensure(dr.values()[r] == oracle, || {
            format!("D_{r} = {} but B_{k}/{k}! = {oracle}", dr.values()[r])
        })?;
    }
    let reference = [
        ratio(1, 12),
        ratio(-1, 720),
        ratio(-1, 30240),
        ratio(-1, 1209600),
        ratio(1, 47900160),
    ];
    for r in [0, 1, 3, 4] {
        ensure(dr.values()[r] == reference[r], || {
            format!("D_{r} differs from the table")
        })?;
    }
    ensure(
        [ratio(1, 30240), ratio(-1, 30240)].contains(&dr.values()[2]),
        || "|D_2| != 1/30240".into(),
    )?;
    let flagged: Vec<usize> = dr.discrepancies().iter().map(|d| d.r).collect();
    let expected: Vec<usize> = if dr.values()[2] == reference[2] {
        vec![]
    } else {
        vec![2]
    };
    ensure(flagged == expected, || {
        format!("discrepancies {flagged:?}, expected {expected:?}")
    })?;
    for s in 0..=10u32 {
        for m1 in 0..=15u64 {
            for m2 in 0..=15u64 {
                let brute = (0..m1).fold(int(0), |acc, j| acc + pow(&int(j as i64 - m2 as i64), s));
                let bracket = bracket_value(BracketVariant::TwoVar, s, m1, m2, &dr, 4)
                    .map_err(|e| e.to_string())?;
                let sign = if s % 2 == 0 { int(1) } else { int(-1) };
                ensure(brute == sign * int(m1 as i64) * bracket, || {
                    format!("power-sum identity fails at s={s} m1={m1} m2={m2}")
                })?;
            }
        }
    }
    Ok(format!(
        "D_0..D_4 = {}; D_2 sign flagged: {}",
        fmt_list(dr.values()),
        !flagged.is_empty()
    ))
}

fn fmt_list(v: &[ExactScalar]) -> String {
    v.iter().map(format_scalar).collect::<Vec<_>>().join(", ")
}

fn criterion_4() -> Outcome {
    let alg = AlgebraSpec::su2();
    let dr = derive_dr(2).unwrap();
    let s = space(&[14]);
    for j in [ratio(1, 2), int(1), ratio(3, 2), int(5)] {
        let r = build_single_boson(&alg, &-j.clone(), &s, &dr).map_err(|e| e.to_string())?;
        for m in 0..=14u32 {
            for row in 0..=14u32 {
                let expected = if m >= 1 && row + 1 == m {
                    int(m as i64) * (&j * int(2) + int(1) - int(m as i64))
                } else {
                    int(0)
                };
                ensure(r.jminus.get(row as usize, m as usize) == expected, || {
                    format!("j={j}: J- entry ({row},{m})")
                })?;
            }
        }
        let comm = r.jplus.commutator(&r.jminus).unwrap();
        let twice = r.j3.scale(&int(2));
        for c in s.safe_subspace(&[1]) {
            ensure(comm.column(c) == twice.column(c), || {
                format!("j={j}: [J+,J-] != 2 J3 at |{c}>")
            })?;
        }
        require_passed(&format!("j={j}"), &check_algebra(&r))?;
    }
    Ok("j in {1/2, 1, 3/2, 5}".into())
}

fn criterion_5() -> Outcome {
    let mut g = rng(77);
    let algs = [AlgebraSpec::su2(), random_algebra_of_degree(&mut g, 4)];
    let polys: Vec<ModePolynomial> = (0..5).map(|_| random_mode_polynomial(&mut g)).collect();
    let mut runs = 0;
    for alg in &algs {
        let dr = dr_for(alg);
        let n = alg.degree().max(1) as u32;
        for f in &polys {
            let raise = f.net_raise();
            let b = build_three_boson(alg, &space(&[6, 6, 6 + 2 * n * raise]), &dr).unwrap();
            let r = substitute_mode3(&b, f, &dr).map_err(|e| e.to_string())?;
            require_passed(&format!("n={} f={f}", alg.degree()), &check_algebra(&r))?;
            runs += 1;
        }
    }
    Ok(format!(
        "{runs} substitutions: {}",
        polys
            .iter()
            .map(|f| f.to_string())
            .collect::<Vec<_>>()
            .join(" | ")
    ))
}

fn criterion_6() -> Outcome {
    let dr = derive_dr(2).unwrap();
    let higgs = presets().remove(2).1;
    let mut checks = 0;
    for (alg, caps) in [(AlgebraSpec::su2(), [10, 10, 10]), (higgs, [10, 10, 22])] {
        let r = build_three_boson(&alg, &space(&caps), &dr).unwrap();
        let report = check_ordering_identities(&r, 3, 3);
        require_passed(&format!("n={}", alg.degree()), &report)?;
        checks += report.checks.len();
    }
    Ok(format!("{checks} identity checks"))
}

fn criterion_7() -> Outcome {
    let mut detected = Vec::new();
    let corruptions = ["c1 sign", "D0 value", "alternating sign"];
    for what in corruptions {
        let mut caught = 0;
        let mut tried = 0;
        for (label, alg, cases) in suite_one().into_iter().take(4) {
            let dr = dr_for(&alg);
            let (built_for, table, fault) = match what {
                "c1 sign" if alg.coeff(1) != &int(0) => {
                    let mut c = alg.coeffs().to_vec();
                    c[1] = -c[1].clone();
                    (
                        AlgebraSpec::new(alg.degree(), c).unwrap(),
                        dr.clone(),
                        Fault::None,
                    )
                }
                "D0 value" if alg.dr_limit() >= 0 => {
                    let mut v = dr.values().to_vec();
                    v[0] = &v[0] * int(2);
                    (alg.clone(), DrTable::from_values(v), Fault::None)
                }
                "alternating sign" => (alg.clone(), dr.clone(), Fault::FlipAlternatingSign),
                _ => continue,
            };
            tried += 1;
            let builder = RealizationBuilder::new(&built_for, &table).with_fault(fault);
            let failed = cases.iter().any(|(kind, caps)| {
                let s = space(caps);
                let mut r = match kind {
                    RealizationKind::ThreeBoson => builder.three_boson(&s),
                    RealizationKind::TwoBosonCentral(p) => builder.two_boson_central(p, &s),
                    RealizationKind::TwoBosonLowering(p) => builder.two_boson_lowering(p, &s),
                    RealizationKind::SingleBoson(p) => builder.single_boson(p, &s),
                    RealizationKind::Fock3 => unreachable!(),
                }
                .unwrap();
                r.alg = alg.clone();
                check_algebra(&r).status() == CheckStatus::Failed
            });
            ensure(failed, || {
                format!("{what} corruption undetected on {label}")
            })?;
            caught += 1;
        }
        ensure(tried > 0, || format!("{what}: no applicable preset"))?;
        detected.push(format!("{what} {caught}/{tried}"));
    }
    Ok(detected.join(", "))
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_sun2"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_8() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = |name: &str| dir.path().join(name).display().to_string();
    let runs: [(&str, Vec<&str>); 4] = [
        (
            "export",
            vec![
                "export",
                "--preset",
                "higgs",
                "--kind",
                "two_boson_lowering",
                "--param",
                "-3/2",
                "--caps",
                "6,9",
            ],
        ),
        (
            "verify",
            vec![
                "verify",
                "--preset",
                "quadratic",
                "--kind",
                "three_boson",
                "--caps",
                "6,6,10",
                "--seed",
                "9",
            ],
        ),
        (
            "verify-subst",
            vec![
                "verify",
                "--n",
                "2",
                "--coeffs",
                "1,-1/2,3",
                "--kind",
                "three_boson",
                "--caps",
                "5,5,13",
                "--subst",
                "(2,0,1);(0,1,-1)",
            ],
        ),
        ("preset-suite", vec!["preset-suite", "--seed", "9"]),
    ];
    for (name, args) in &runs {
        let mut outputs = Vec::new();
        for trial in 0..2 {
            let file = path(&format!("{name}-{trial}.json"));
            let mut full = args.clone();
            full.extend(["--out", file.as_str()]);
            let (code, stdout) = run_cli(&full);
            ensure(code == 0, || format!("{name} exited with {code}"))?;
            outputs.push((fs::read(&file).map_err(|e| e.to_string())?, stdout));
        }
        ensure(!outputs[0].0.is_empty() && outputs[0] == outputs[1], || {
            format!("{name} output differs between runs")
        })?;
    }
    let (_, a) = run_cli(&["derive-dr", "--rmax", "4"]);
    let (_, b) = run_cli(&["derive-dr", "--rmax", "4"]);
    ensure(a == b, || "derive-dr output differs".into())?;
    Ok(format!(
        "{} commands byte-identical across runs",
        runs.len() + 1
    ))
}

fn main() {
    type Criterion = (&'static str, Option<Duration>, fn() -> Outcome);
    let criteria: [Criterion; 8] = [
        (
            "defining relations, presets and 20 random algebras",
            Some(Duration::from_secs(300)),
            criterion_1,
        ),
        ("Fock and quotient equivalence", None, criterion_2),
        (
            "D_r oracle and power-sum identity",
            Some(Duration::from_secs(5)),
            criterion_3,
        ),
        ("Gel'fand-Dyson limit", None, criterion_4),
        ("mode-3 substitution robustness", None, criterion_5),
        ("reordering identities", None, criterion_6),
        ("mutation sensitivity", None, criterion_7),
        ("determinism of export and verify", None, criterion_8),
    ];
    let mut failures = 0;
    for (i, (title, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        if let (Ok(_), Some(limit)) = (&outcome, limit) {
            if elapsed > *limit {
                outcome = Err(format!("took {elapsed:.2?}, limit {limit:?}"));
            }
        }
        match outcome {
            Ok(detail) => println!(
                "[PASS] criterion {} {title} ({elapsed:.2?}): {detail}",
                i + 1
            ),
            Err(why) => {
                failures += 1;
                println!("[FAIL] criterion {} {title} ({elapsed:.2?}): {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failures} failed",
        criteria.len() - failures
    );
    if failures > 0 {
        std::process::exit(1);
    }
}
