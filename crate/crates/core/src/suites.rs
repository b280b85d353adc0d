//! Named verification suites and the sweep driver shared by the CLI and the
//! acceptance tests.

use std::fmt;
use std::str::FromStr;

use crate::algebra;
use crate::diffmodel::verify_model;
use crate::eigenbases;
use crate::error::{Error, Result};
use crate::hyper::whipple_check;
use crate::matrixreps::{verify_coefficients, verify_leonard_trio};
use crate::params::{validate_params, FParams, Params};
use crate::racahpoly::verify_racah;
use crate::rational::{frac, int, to_exact_string, Rational};
use crate::rationalfns::{hahn_limit_check, verify_rational};
use crate::report::{Status, VerificationReport};
use crate::sweep::{SweepDraw, SweepGenerator};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Algebra,
    Bases,
    Matrixreps,
    Racah,
    Rational,
    Model,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Algebra,
        Suite::Bases,
        Suite::Matrixreps,
        Suite::Racah,
        Suite::Rational,
        Suite::Model,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Bases => "bases",
            Suite::Matrixreps => "matrixreps",
            Suite::Racah => "racah",
            Suite::Rational => "rational",
            Suite::Model => "model",
        }
    }

    /// Whether the suite touches the `f` family and so depends on `rho`.
    pub fn uses_rho(self) -> bool {
        !matches!(self, Suite::Rational)
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

/// Parse a comma-separated suite list; `all` expands to every suite.
pub fn parse_suites(s: &str) -> Result<Vec<Suite>> {
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if part == "all" {
            out.extend(Suite::ALL);
        } else {
            out.push(part.parse()?);
        }
    }
    if out.is_empty() {
        return Err(Error::Parse("empty suite list".into()));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Display name of a suite selection, `all` when complete.
pub fn selection_name(suites: &[Suite]) -> String {
    if suites.len() == Suite::ALL.len() {
        "all".into()
    } else {
        suites.iter().map(|s| s.name()).collect::<Vec<_>>().join(",")
    }
}

/// Deterministic `(h0, h1, h4)` triples for the Heun check.
pub fn heun_triples(seed: u64, count: usize) -> Vec<[Rational; 3]> {
    let mut g = SweepGenerator::new(seed);
    (0..count).map(|_| [g.rational(), g.rational(), g.rational()]).collect()
}

const HEUN_SEED: u64 = 0x4845_554e;

/// Checks of a single suite at one parameter point. Parameters are assumed
/// generic.
pub fn run_suite(suite: Suite, p: &Params, fp: &FParams) -> VerificationReport {
    let mut r = VerificationReport::new(suite.name());
    match suite {
        Suite::Algebra => {
            r.extend(algebra::check_defining_relations(p));
            r.extend(algebra::check_casimir(p));
            r.extend(algebra::check_transposes(p));
            r.extend(algebra::check_subalgebras(p, &fp.rho));
            r.extend(algebra::check_w_spectrum(p, &fp.rho));
            r.extend(algebra::check_heun(p, &heun_triples(HEUN_SEED, 20)));
        }
        Suite::Bases => {
            r.extend(eigenbases::check_closed_forms(p, fp));
            match eigenbases::Bases::closed_form(p, fp) {
                Ok(b) => r.extend(eigenbases::check_eigen_equations(p, fp, &b)),
                Err(e) => r.outcome_result("bases.eigen", "eigenvalue equations", Err(e)),
            }
            r.extend(eigenbases::check_distinct_eigenvalues(p, fp));
            r.extend(eigenbases::check_orthogonality(p, fp));
            r.extend(eigenbases::check_z_action_on_d(p, fp));
        }
        Suite::Matrixreps => {
            r.extend(verify_coefficients(p, fp));
            r.extend(verify_leonard_trio(p));
        }
        Suite::Racah => r.extend(verify_racah(p, fp)),
        Suite::Rational => {
            r.extend(verify_rational(p));
            let ts = [int(1000), int(10_000), int(100_000)];
            r.extend(hahn_limit_check(1, 1, &frac(1, 3), &frac(1, 5), p, &ts));
        }
        Suite::Model => r.extend(verify_model(p, fp)),
    }
    r.sort();
    r
}

fn validate_for(suites: &[Suite], p: &Params, fp: &FParams) -> Result<()> {
    let rho = suites.iter().any(|s| s.uses_rho()).then_some(fp);
    validate_params(p, rho)
}

/// Run `suites` at the explicit point and at `sweeps` random points drawn
/// from `seed`. Sweep checks are prefixed `sweep.<index>.`. Fails with
/// [`Error::DegenerateParameters`] only when the explicit point is degenerate.
pub fn run_suites(suites: &[Suite], p: &Params, fp: &FParams, seed: u64, sweeps: usize) -> Result<VerificationReport> {
    validate_for(suites, p, fp)?;
    let mut report = VerificationReport::new(selection_name(suites));
    for &s in suites {
        report.extend(run_suite(s, p, fp));
    }
    let mut g = SweepGenerator::new(seed);
    for i in 0..sweeps {
        let prefix = format!("sweep.{i:04}");
        match g.draw(p.nmax) {
            SweepDraw::Generic { params, fparams, resampled } => {
                let desc = params
                    .describe(Some(&fparams))
                    .into_iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect::<Vec<_>>()
                    .join(" ");
                report.record(
                    format!("{prefix}.draw"),
                    "random generic parameter set",
                    Status::Pass,
                    format!("{desc}; resampled {resampled}"),
                );
                for &s in suites {
                    for mut c in run_suite(s, &params, &fparams).checks {
                        c.id = format!("{prefix}.{}", c.id);
                        report.checks.push(c);
                    }
                }
            }
            SweepDraw::Degenerate { attempts } => report.record(
                format!("{prefix}.draw"),
                "random generic parameter set",
                Status::SkippedDegenerate,
                format!("no generic draw in {attempts} attempts"),
            ),
        }
    }
    report.sort();
    Ok(report)
}

/// Whipple transformation on `count` random balanced terminating series
/// with `n` in `1..=nmax`. Draws with a vanishing lower parameter are
/// replaced, up to `count` replacements.
pub fn whipple_sweep(seed: u64, count: usize, nmax: usize) -> VerificationReport {
    let mut g = SweepGenerator::new(seed);
    let mut r = VerificationReport::new("hyper");
    let mut failure = None;
    let (mut evaluated, mut replaced) = (0usize, 0usize);
    while evaluated < count && replaced <= count {
        let n = 1 + evaluated % nmax.max(1);
        let [a, b, c, d, e] = [(); 5].map(|_| g.rational());
        let f = int(1) - int(n as i64) + &a + &b + &c - &d - &e;
        match whipple_check(n, &a, &b, &c, &d, &e, &f) {
            Ok(holds) => {
                if !holds && failure.is_none() {
                    let args = [&a, &b, &c, &d, &e, &f].map(to_exact_string).join(", ");
                    failure = Some(format!("instance {evaluated}: n={n}, (a,b,c,d,e,f) = ({args})"));
                }
                evaluated += 1;
            }
            Err(err) if err.is_degenerate() => replaced += 1,
            Err(err) => {
                failure.get_or_insert_with(|| format!("instance {evaluated}: {err}"));
                evaluated += 1;
            }
        }
    }
    if evaluated < count {
        failure.get_or_insert_with(|| format!("only {evaluated} of {count} instances were evaluable"));
    }
    r.outcome("hyper.whipple", "Whipple transformation of balanced 4F3 series", failure);
    r.record(
        "hyper.whipple.evaluated",
        "balanced instances evaluated and replaced",
        Status::Pass,
        format!("{evaluated} evaluated, {replaced} replaced"),
    );
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_selection() {
        assert_eq!(parse_suites("all").unwrap(), Suite::ALL.to_vec());
        assert_eq!(parse_suites("racah,algebra").unwrap(), vec![Suite::Algebra, Suite::Racah]);
        assert!(parse_suites("bogus").is_err());
        assert!(parse_suites("").is_err());
        assert_eq!(selection_name(&[Suite::Racah]), "racah");
    }

    #[test]
    fn algebra_suite_passes_with_sweeps() {
        let p = Params::reference(3);
        let r = run_suites(&[Suite::Algebra], &p, &FParams::reference(), 5, 2).unwrap();
        assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
        assert!(r.get("sweep.0001.draw").is_some());
        let ids: Vec<_> = r.checks.iter().map(|c| c.id.clone()).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        assert_eq!(ids, sorted);
    }

    #[test]
    fn degenerate_explicit_point() {
        let p = Params::new(3, int(1), frac(1, 5), frac(1, 7)).unwrap();
        let err = run_suites(&[Suite::Algebra], &p, &FParams::reference(), 0, 0).unwrap_err();
        assert!(matches!(err, Error::DegenerateParameters(_)));
    }

    #[test]
    fn whipple_instances_hold() {
        let r = whipple_sweep(11, 40, 6);
        assert!(r.all_passed(), "{:?}", r.checks);
    }
}
