//! The fourteen acceptance criteria, each reported as one PASS/FAIL line.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use metaracah::algebra::{check_casimir, check_defining_relations, check_heun, check_subalgebras};
use metaracah::diffmodel::verify_model;
use metaracah::eigenbases::{check_closed_forms, check_orthogonality};
use metaracah::matrixreps::{verify_coefficients, verify_leonard_trio};
use metaracah::racahpoly::verify_racah;
use metaracah::rational::{frac, int};
use metaracah::rationalfns::{hahn_limit_check, verify_rational};
use metaracah::suites::{heun_triples, whipple_sweep};
use metaracah::{FParams, Params, Status, SweepGenerator, VerificationReport};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn reference(nmax: usize) -> (Params, FParams) {
    (Params::reference(nmax), FParams::reference())
}

/// Reference point followed by `count` seeded generic draws.
fn points(nmax: usize, count: usize, seed: u64) -> Vec<(Params, FParams)> {
    let mut v = vec![reference(nmax)];
    v.extend(SweepGenerator::new(seed ^ nmax as u64).generic_sets(nmax, count));
    v
}

fn require(r: &VerificationReport, what: &str) -> Result<usize, String> {
    if let Some(c) = r.failures().next() {
        return Err(format!("{what}: {} {}", c.id, c.detail));
    }
    if let Some(c) = r.checks.iter().find(|c| c.status == Status::SkippedDegenerate) {
        return Err(format!("{what}: {} skipped: {}", c.id, c.detail));
    }
    Ok(r.checks.len())
}

fn within(start: Instant, target: Duration) -> Result<String, String> {
    let t = start.elapsed();
    if t < target {
        Ok(format!("{:.2}s", t.as_secs_f64()))
    } else {
        Err(format!("runtime {:.2}s over target {:.0}s", t.as_secs_f64(), target.as_secs_f64()))
    }
}

fn relations_sweep() -> Outcome {
    let start = Instant::now();
    let mut n = 0;
    for nmax in 1..=12 {
        let pts = points(nmax, 50, 1);
        if pts.len() < 51 {
            return Err(format!("N={nmax}: only {} generic sets", pts.len()));
        }
        for (p, _) in &pts {
            n += require(&check_defining_relations(p), &format!("N={nmax}"))?;
        }
    }
    Ok(format!("{n} relation checks, {}", within(start, Duration::from_secs(5))?))
}

fn casimir_sweep() -> Outcome {
    let mut n = 0;
    for nmax in 1..=12 {
        for (p, _) in points(nmax, 50, 1) {
            n += require(&check_casimir(&p), &format!("N={nmax}"))?;
        }
    }
    Ok(format!("{n} commutator checks"))
}

fn subalgebras() -> Outcome {
    let mut n = 0;
    for nmax in 1..=8 {
        for (p, fp) in points(nmax, 3, 3) {
            n += require(&check_subalgebras(&p, &fp.rho), &format!("N={nmax}"))?;
        }
    }
    Ok(format!("{n} checks"))
}

fn heun() -> Outcome {
    let triples = heun_triples(4, 20);
    for nmax in 1..=8 {
        let r = check_heun(&Params::reference(nmax), &triples);
        require(&r, &format!("N={nmax}"))?;
        let neg = r.get("algebra.heun.negative-control").ok_or("no negative control")?;
        if neg.status != Status::Pass {
            return Err(format!("N={nmax}: negative control {}", neg.detail));
        }
    }
    Ok(format!("{} triples plus negative control", triples.len()))
}

fn closed_forms() -> Outcome {
    let start = Instant::now();
    let mut n = 0;
    for nmax in 1..=10 {
        for (p, fp) in points(nmax, 19, 5) {
            n += require(&check_closed_forms(&p, &fp), &format!("N={nmax}"))?;
        }
    }
    Ok(format!("{n} family checks, {}", within(start, Duration::from_secs(30))?))
}

fn orthogonality() -> Outcome {
    let mut n = 0;
    for nmax in 1..=8 {
        for (p, fp) in points(nmax, 2, 6) {
            let r = check_orthogonality(&p, &fp);
            n += require(&r, &format!("N={nmax}"))?;
            let grams = r.checks.iter().filter(|c| c.id.starts_with("bases.orthogonality.")).count();
            let comps = r.checks.iter().filter(|c| c.id.starts_with("bases.completeness.")).count();
            if grams != 4 || comps != 4 {
                return Err(format!("expected 4 Grams and 4 resolutions, got {grams} and {comps}"));
            }
        }
    }
    Ok(format!("{n} checks"))
}

fn coefficients() -> Outcome {
    let mut n = 0;
    for nmax in 1..=8 {
        for (p, fp) in points(nmax, 2, 7) {
            n += require(&verify_coefficients(&p, &fp), &format!("N={nmax}"))?;
        }
    }
    Ok(format!("{n} coefficient sets"))
}

fn leonard_trio() -> Outcome {
    let n = require(&verify_leonard_trio(&Params::reference(6)), "reference")?;
    let a = frac(1, 3);
    let degenerate = Params::new(4, a.clone(), int(2) * &a - int(2), frac(1, 7)).map_err(|e| e.to_string())?;
    let r = verify_leonard_trio(&degenerate);
    let located = match r.failures().next() {
        Some(c) if c.detail.contains("entry (") => Ok(format!("{n} clauses; negative control: {} {}", c.id, c.detail)),
        Some(c) => Err(format!("negative control failed without a located index: {}", c.detail)),
        None => Err("negative control passed".into()),
    };
    located
}

fn racah() -> Outcome {
    let mut n = 0;
    for nmax in 1..=8 {
        for (p, fp) in points(nmax, 2, 9) {
            let r = verify_racah(&p, &fp);
            n += require(&r, &format!("N={nmax}"))?;
            for id in ["racah.orthogonality", "racah.recurrence", "racah.difference"] {
                r.get(id).ok_or(format!("missing {id}"))?;
            }
        }
    }
    Ok(format!("{n} checks"))
}

fn rational() -> Outcome {
    let start = Instant::now();
    let mut n = 0;
    for nmax in 1..=8 {
        for (p, _) in points(nmax, 2, 10) {
            let r = verify_rational(&p);
            n += require(&r, &format!("N={nmax}"))?;
            for id in [
                "rational.identification.u",
                "rational.identification.u-tilde",
                "rational.biorthogonality.first",
                "rational.biorthogonality.second",
                "rational.gevp-recurrence",
                "rational.difference",
                "rational.contiguity",
                "rational.dual-hahn.expansion",
            ] {
                r.get(id).ok_or(format!("missing {id}"))?;
            }
        }
    }
    Ok(format!("{n} checks, {}", within(start, Duration::from_secs(60))?))
}

fn hahn_limit() -> Outcome {
    let ts = [int(1000), int(100_000)];
    let r = hahn_limit_check(1, 1, &frac(1, 3), &frac(1, 5), &Params::reference(4), &ts);
    require(&r, "m=n=1")?;
    let devs = metaracah::rationalfns::hahn_deviations(1, 1, &frac(1, 3), &frac(1, 5), 4, &ts).map_err(|e| e.to_string())?;
    Ok(format!(
        "deviation {} at t=1e3, {} at t=1e5",
        metaracah::rational::to_decimal_string(&devs[0], 9),
        metaracah::rational::to_decimal_string(&devs[1], 9)
    ))
}

fn model() -> Outcome {
    let mut n = 0;
    for nmax in 1..=6 {
        for (p, fp) in points(nmax, 1, 12) {
            let r = verify_model(&p, &fp);
            n += require(&r, &format!("N={nmax}"))?;
            for id in ["model.integral.s", "model.integral.u", "model.integral.dual-hahn", "model.jacobi"] {
                r.get(id).ok_or(format!("missing {id}"))?;
            }
        }
    }
    Ok(format!("{n} checks"))
}

fn whipple() -> Outcome {
    let r = whipple_sweep(13, 200, 8);
    require(&r, "whipple")?;
    Ok(r.get("hyper.whipple.evaluated").ok_or("missing instance count")?.detail.clone())
}

fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_metaracah"))
        .args(args)
        .env_remove("METARACAH_OUT_DIR")
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn cli_determinism() -> Outcome {
    let runs: [&[&str]; 4] = [
        &["verify", "--N", "4", "--suite", "all", "--seed", "17", "--sweeps", "3"],
        &["verify", "--N", "3", "--suite", "racah,rational", "--format", "csv"],
        &["table", "--which", "S", "--N", "5", "--format", "csv", "--exact"],
        &["matrix", "--which", "basis:dStar", "--N", "4"],
    ];
    for args in runs {
        let (c1, o1) = cli(args);
        let (c2, o2) = cli(args);
        if c1 != 0 || c2 != 0 || o1 != o2 || o1.is_empty() {
            return Err(format!("{args:?}: exit {c1}/{c2}, identical output {}", o1 == o2));
        }
    }
    let contract: [(&[&str], i32); 4] = [
        (&["verify", "--N", "5", "--alpha", "1/3", "--beta", "1/5", "--zeta", "1/7", "--rho", "1/13"], 0),
        (&["verify", "--N", "4", "--suite", "algebra", "--inject-fault"], 1),
        (&["verify", "--N", "3", "--alpha", "1"], 2),
        (&["verify", "--alpha", "one-third"], 3),
    ];
    for (args, want) in contract {
        let (code, _) = cli(args);
        if code != want {
            return Err(format!("{args:?}: exit {code}, expected {want}"));
        }
    }
    Ok("byte-identical reruns; exit codes 0/1/2/3 honored".into())
}

const TIMED: [usize; 3] = [1, 5, 10];

#[test]
fn acceptance() {
    let criteria: [Criterion; 14] = [
        ("defining relations", relations_sweep),
        ("Casimir centrality", casimir_sweep),
        ("subalgebra embeddings", subalgebras),
        ("Heun bidiagonality", heun),
        ("eigenbasis closed forms", closed_forms),
        ("orthogonality and completeness", orthogonality),
        ("coefficient formulas", coefficients),
        ("Leonard trio", leonard_trio),
        ("Racah identification", racah),
        ("rational-function suite", rational),
        ("Hahn limit", hahn_limit),
        ("differential model", model),
        ("Whipple transformation", whipple),
        ("CLI determinism", cli_determinism),
    ];
    let guarded = |f: fn() -> Outcome| catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
    // Criteria with a runtime target run alone so their timings are not
    // inflated by the others.
    let mut results: Vec<Option<Outcome>> = criteria
        .iter()
        .enumerate()
        .map(|(i, &(_, f))| TIMED.contains(&(i + 1)).then(|| guarded(f)))
        .collect();
    std::thread::scope(|s| {
        let handles: Vec<_> = criteria
            .iter()
            .zip(&results)
            .enumerate()
            .filter(|(_, (_, done))| done.is_none())
            .map(|(i, (&(_, f), _))| (i, s.spawn(move || guarded(f))))
            .collect();
        for (i, h) in handles {
            results[i] = Some(h.join().expect("joined"));
        }
    });
    let results: Vec<Outcome> = results.into_iter().map(|r| r.expect("every criterion ran")).collect();
    // Written to the process stdout directly so the summary is visible
    // under the default output capture.
    let mut lines = String::from("\n");
    let mut failed = 0;
    for (i, ((name, _), res)) in criteria.iter().zip(&results).enumerate() {
        match res {
            Ok(d) => lines.push_str(&format!("PASS {:>2} {name}: {d}\n", i + 1)),
            Err(d) => {
                failed += 1;
                lines.push_str(&format!("FAIL {:>2} {name}: {d}\n", i + 1));
            }
        }
    }
    let mut out = std::io::stdout().lock();
    out.write_all(lines.as_bytes()).expect("stdout");
    out.flush().expect("stdout");
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
