//! Biorthogonal rational functions of Racah type as overlaps between the
//! `e` family and the generalized eigenbasis `d`.
//!
//! Tables are stored with row `m` and column `n`.

use num_traits::{One, Signed, Zero};

use crate::algebra::{build_v, build_x, build_z};
use crate::eigenbases::{build_basis, BasisLabel};
use crate::error::{Error, Result};
use crate::hyper::{multi_pochhammer, pochhammer, terminating};
use crate::matrix::{dot, RationalMatrix};
use crate::params::{validate_params, FParams, Params};
use crate::rational::{checked_div, cmp_abs, factorial, frac, int, to_exact_string, Rational};
use crate::report::{matrix_mismatch, VerificationReport};

/// `4F3(-m, -n, -a, m-2b-2c-1; -N, a-b-n, N-2a-b-2c; 1)` for arbitrary
/// `(a, b, c)`.
pub fn cal_u_with(m: usize, n: usize, a: &Rational, b: &Rational, c: &Rational, nmax: usize) -> Result<Rational> {
    if m == 0 || n == 0 {
        return Ok(Rational::one());
    }
    let (mr, nr, big) = (int(m as i64), int(n as i64), int(nmax as i64));
    let two = int(2);
    terminating(
        &[-mr.clone(), -nr.clone(), -a, &mr - &two * b - &two * c - int(1)],
        &[-big.clone(), a - b - &nr, &big - &two * a - b - &two * c],
    )
}

/// `U_m(n)` at `(alpha, beta, zeta)`.
pub fn cal_u(m: usize, n: usize, p: &Params) -> Result<Rational> {
    cal_u_with(m, n, &p.alpha, &p.beta, &p.zeta, p.nmax)
}

/// Companion family: `U_m(N-n)` at `(N-alpha-1, beta+2zeta-2, 2-zeta)`.
pub fn cal_u_tilde(m: usize, n: usize, p: &Params) -> Result<Rational> {
    let big = p.n();
    let two = int(2);
    cal_u_with(
        m,
        p.nmax - n,
        &(&big - &p.alpha - int(1)),
        &(&p.beta + &two * &p.zeta - &two),
        &(&two - &p.zeta),
        p.nmax,
    )
}

/// Closed form of `<e_m|d*_n>`.
pub fn u_closed(m: usize, n: usize, p: &Params) -> Result<Rational> {
    let (a, b, z, big) = (&p.alpha, &p.beta, &p.zeta, p.n());
    let two = int(2);
    let (mr, nr) = (int(m as i64), int(n as i64));
    let num = pochhammer(&(a - b - &nr), n) * multi_pochhammer(&[-big.clone(), &big - &two * a - b - &two * z], m);
    let den = factorial(n) * pochhammer(&-a, n + 1) * pochhammer(&(&mr - p.s() - int(1)), m);
    Ok(checked_div(&num, &den, "U prefactor")? * cal_u(m, n, p)?)
}

/// Closed form of `<e*_m|Z|d_n>`.
pub fn u_tilde_closed(m: usize, n: usize, p: &Params) -> Result<Rational> {
    let (a, b, z, big) = (&p.alpha, &p.beta, &p.zeta, p.n());
    let nm = p.nmax;
    let two = int(2);
    let one = Rational::one();
    let (mr, nr) = (int(m as i64), int(n as i64));
    let low = -&two * &big + &two * a + b + &two * z + &one;
    let num = (&nr - a)
        * multi_pochhammer(&[-&big + a + b + &two * z, -&big + &two * a - b], nm - n)
        * multi_pochhammer(&[&mr + &one, low.clone()], nm - m);
    let den = multi_pochhammer(&[&nr - &big, &nr - a, low], nm - n) * pochhammer(&(-&big - &mr + p.s() + &one), nm - m);
    Ok(checked_div(&num, &den, "U~ prefactor")? * cal_u_tilde(m, n, p)?)
}

/// First biorthogonality weight.
pub fn weight(j: usize, p: &Params) -> Result<Rational> {
    let (a, b, z, big) = (&p.alpha, &p.beta, &p.zeta, p.n());
    let two = int(2);
    let one = Rational::one();
    let num = multi_pochhammer(&[-big.clone(), &one - a + b, &big - &two * a - b - &two * z], j)
        * multi_pochhammer(&[&two * a - b - &big, a + b - &big + &two * z], p.nmax - j);
    let den = factorial(j) * multi_pochhammer(&[-a, -p.s()], p.nmax);
    checked_div(&num, &den, "first weight")
}

/// Norm paired with [`weight`]; equals 1 at `n = 0`.
pub fn norm(n: usize, p: &Params) -> Result<Rational> {
    let big = p.n();
    let s = p.s();
    let nr = int(n as i64);
    let one = Rational::one();
    let num = factorial(n) * pochhammer(&(&big - &s), n) * (&nr - &one - &s);
    let den = pochhammer(&-big, n) * (int(2) * &nr - &one - &s) * pochhammer(&-s, n);
    checked_div(&num, &den, "first norm")
}

/// Second biorthogonality weight.
pub fn weight_star(j: usize, p: &Params) -> Result<Rational> {
    let (a, b, z, big) = (&p.alpha, &p.beta, &p.zeta, p.n());
    let two = int(2);
    let one = Rational::one();
    let s = p.s();
    let jr = int(j as i64);
    let num = pochhammer(&-big, j)
        * (&two * &jr - &one - &s)
        * multi_pochhammer(&[&one - &two * a + b, &one - a - b - &two * z], p.nmax);
    let den = factorial(j) * pochhammer(&(&jr - &one - &s), p.nmax + 1) * pochhammer(&-a, p.nmax);
    checked_div(&num, &den, "second weight")
}

/// Norm paired with [`weight_star`].
pub fn norm_star(n: usize, p: &Params) -> Result<Rational> {
    let (a, b, z, big) = (&p.alpha, &p.beta, &p.zeta, p.n());
    let two = int(2);
    let one = Rational::one();
    let num = multi_pochhammer(&[one.clone(), &one - &two * a + b, &one - a - b - &two * z], n);
    let den = multi_pochhammer(&[-big.clone(), &one - a + b, &big - &two * a - b - &two * z], n);
    checked_div(&num, &den, "second norm")
}

fn table(p: &Params, f: impl Fn(usize, usize, &Params) -> Result<Rational>) -> Result<RationalMatrix> {
    RationalMatrix::try_from_fn(p.dim(), p.dim(), |m, n| f(m, n, p))
}

pub fn cal_u_table(p: &Params) -> Result<RationalMatrix> {
    table(p, cal_u)
}

pub fn cal_u_tilde_table(p: &Params) -> Result<RationalMatrix> {
    table(p, cal_u_tilde)
}

pub fn u_closed_table(p: &Params) -> Result<RationalMatrix> {
    table(p, u_closed)
}

pub fn u_tilde_closed_table(p: &Params) -> Result<RationalMatrix> {
    table(p, u_tilde_closed)
}

/// `U` and `U~` from basis dot products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalOverlaps {
    pub u: RationalMatrix,
    pub u_tilde: RationalMatrix,
}

impl RationalOverlaps {
    pub fn new(p: &Params) -> Result<Self> {
        let e = family(p, BasisLabel::E)?;
        let es = family(p, BasisLabel::EStar)?;
        let ds = family(p, BasisLabel::DStar)?;
        let zd = &build_z(p) * &family(p, BasisLabel::D)?;
        Ok(Self {
            u: &e.transpose() * &ds,
            u_tilde: &es.transpose() * &zd,
        })
    }
}

/// Families that do not involve `rho`.
fn family(p: &Params, label: BasisLabel) -> Result<RationalMatrix> {
    Ok(build_basis(p, &FParams::reference(), label)?.vectors)
}

fn agree(what: String, dotted: Rational, closed: Rational) -> Result<Rational> {
    if dotted == closed {
        Ok(dotted)
    } else {
        Err(Error::Mismatch {
            what,
            left: to_exact_string(&dotted),
            right: to_exact_string(&closed),
        })
    }
}

fn check_index(p: &Params, m: usize, n: usize) -> Result<()> {
    if m > p.nmax || n > p.nmax {
        return Err(Error::PreconditionViolated(format!("index ({m}, {n}) outside 0..={}", p.nmax)));
    }
    Ok(())
}

/// `<e_m|d*_n>` as a dot product, checked against the closed form.
pub fn overlap_u(m: usize, n: usize, p: &Params) -> Result<Rational> {
    check_index(p, m, n)?;
    let dotted = dot(&family(p, BasisLabel::E)?.column(m), &family(p, BasisLabel::DStar)?.column(n));
    agree(format!("U_{m}({n})"), dotted, u_closed(m, n, p)?)
}

/// `<e*_m|Z|d_n>` as a dot product, checked against the closed form.
pub fn overlap_u_tilde(m: usize, n: usize, p: &Params) -> Result<Rational> {
    check_index(p, m, n)?;
    let zd = build_z(p).mul_vec(&family(p, BasisLabel::D)?.column(n));
    let dotted = dot(&family(p, BasisLabel::EStar)?.column(m), &zd);
    agree(format!("U~_{m}({n})"), dotted, u_tilde_closed(m, n, p)?)
}

fn diagonal_failure(gram: &RationalMatrix, diag: &[Rational]) -> Option<String> {
    let want = RationalMatrix::from_fn(gram.rows(), gram.cols(), |i, j| {
        if i == j {
            diag[i].clone()
        } else {
            Rational::zero()
        }
    });
    matrix_mismatch(gram, &want)
}

/// Gram of the first relation: row `n`, column `m`.
pub fn first_gram(p: &Params) -> Result<RationalMatrix> {
    let u = cal_u_table(p)?;
    let ut = cal_u_tilde_table(p)?;
    let w = (0..=p.nmax).map(|j| weight(j, p)).collect::<Result<Vec<_>>>()?;
    Ok(RationalMatrix::from_fn(p.dim(), p.dim(), |n, m| {
        (0..p.dim()).fold(Rational::zero(), |acc, j| acc + &w[j] * &ut[(m, j)] * &u[(n, j)])
    }))
}

/// Gram of the second relation: row `n`, column `m`.
pub fn second_gram(p: &Params) -> Result<RationalMatrix> {
    let u = cal_u_table(p)?;
    let ut = cal_u_tilde_table(p)?;
    let w = (0..=p.nmax).map(|j| weight_star(j, p)).collect::<Result<Vec<_>>>()?;
    Ok(RationalMatrix::from_fn(p.dim(), p.dim(), |n, m| {
        (0..p.dim()).fold(Rational::zero(), |acc, j| acc + &w[j] * &ut[(j, m)] * &u[(j, n)])
    }))
}

/// Both biorthogonality relations with their weights and norms.
pub fn biorthogonality(p: &Params) -> VerificationReport {
    let mut r = VerificationReport::new("rational");
    r.outcome_result(
        "rational.biorthogonality.first",
        "sum_j W(j) U~_m(j) U_n(j) = h_n delta",
        first_gram(p).and_then(|g| {
            let h = (0..=p.nmax).map(|n| norm(n, p)).collect::<Result<Vec<_>>>()?;
            Ok(diagonal_failure(&g, &h))
        }),
    );
    r.outcome_result(
        "rational.biorthogonality.second",
        "sum_j W*(j) U~_j(m) U_j(n) = h*_n delta",
        second_gram(p).and_then(|g| {
            let h = (0..=p.nmax).map(|n| norm_star(n, p)).collect::<Result<Vec<_>>>()?;
            Ok(diagonal_failure(&g, &h))
        }),
    );
    r.outcome_result(
        "rational.biorthogonality.normalization",
        "h_0 = h*_0 = 1",
        norm(0, p).and_then(|h| {
            let hs = norm_star(0, p)?;
            Ok((!h.is_one() || !hs.is_one())
                .then(|| format!("h_0 = {}, h*_0 = {}", to_exact_string(&h), to_exact_string(&hs))))
        }),
    );
    r
}

/// Recurrence coefficient multiplying `U_{m+1}`.
pub fn coeff_a(m: usize, p: &Params) -> Result<Rational> {
    let (a, b, z, big, s) = (&p.alpha, &p.beta, &p.zeta, p.n(), p.s());
    let two = int(2);
    let mr = int(m as i64);
    checked_div(
        &((&mr - &big) * (&mr + &big - &two * a - b - &two * z) * (&mr - &s - int(1))),
        &((&two * &mr - &s - int(1)) * (&two * &mr - &s)),
        "2m-2beta-2zeta",
    )
}

/// Recurrence coefficient multiplying `U_{m-1}`.
pub fn coeff_c(m: usize, p: &Params) -> Result<Rational> {
    let (a, b, big, s) = (&p.alpha, &p.beta, p.n(), p.s());
    let two = int(2);
    let mr = int(m as i64);
    checked_div(
        &-(&mr * (&mr + &two * a - b - &big - int(1)) * (&mr - &s + &big - int(1))),
        &((&two * &mr - &s - int(2)) * (&two * &mr - &s - int(1))),
        "2m-2beta-2zeta-2",
    )
}

fn boundary_zero(what: &str, c: &Rational) -> Result<()> {
    if c.is_zero() {
        Ok(())
    } else {
        Err(Error::Mismatch {
            what: what.to_string(),
            left: to_exact_string(c),
            right: "0".into(),
        })
    }
}

/// Residual of the generalized-eigenvalue recurrence in the degree `m`.
pub fn gevp_recurrence_residual(m: usize, n: usize, p: &Params) -> Result<Rational> {
    check_index(p, m, n)?;
    let (a, b, z) = (&p.alpha, &p.beta, &p.zeta);
    let nr = int(n as i64);
    let mr = int(m as i64);
    let ca = coeff_a(m, p)?;
    let cc = coeff_c(m, p)?;
    let up = if m < p.nmax {
        cal_u(m + 1, n, p)?
    } else {
        boundary_zero("A_N", &ca)?;
        Rational::zero()
    };
    let down = if m > 0 {
        cal_u(m - 1, n, p)?
    } else {
        boundary_zero("C_0", &cc)?;
        Rational::zero()
    };
    let cur = cal_u(m, n, p)?;
    let lhs = &nr * (&ca * &up - (&ca + &cc + a) * &cur + &cc * &down);
    let e1 = &mr + a - b;
    let e2 = &mr - a - b - int(2) * z - int(1);
    let rhs = &e1 * &ca * &up - (&e1 * &ca - &e2 * &cc) * &cur - &e2 * &cc * &down;
    Ok(lhs - rhs)
}

/// Difference-equation coefficient multiplying `U(n+1)`.
pub fn coeff_b(n: usize, p: &Params) -> Rational {
    let (a, b, z, big) = (&p.alpha, &p.beta, &p.zeta, p.n());
    let nr = int(n as i64);
    (&nr - &big) * (&nr + &big - int(2) * a - b - int(2) * z) * (&nr - a + b + int(1))
}

/// Difference-equation coefficient multiplying `U(n-1)`.
pub fn coeff_d(n: usize, p: &Params) -> Rational {
    let (a, b, z) = (&p.alpha, &p.beta, &p.zeta);
    let nr = int(n as i64);
    &nr * (&nr - int(2) * a + b) * (&nr - a - b - int(2) * z - int(1))
}

/// Residual of the difference equation in the variable `n`.
pub fn difference_residual(m: usize, n: usize, p: &Params) -> Result<Rational> {
    check_index(p, m, n)?;
    let (a, b) = (&p.alpha, &p.beta);
    let nr = int(n as i64);
    let mr = int(m as i64);
    let cb = coeff_b(n, p);
    let cd = coeff_d(n, p);
    let next = if n < p.nmax {
        cal_u(m, n + 1, p)?
    } else {
        boundary_zero("B_N", &cb)?;
        Rational::zero()
    };
    let prev = if n > 0 { cal_u(m, n - 1, p)? } else { Rational::zero() };
    let cur = cal_u(m, n, p)?;
    let lhs = &cb * &next - (&cb + &cd) * &cur + &cd * &prev;
    let shift = checked_div(&(&nr * (&nr - int(2) * a + b)), &(&nr - a + b), "n-alpha+beta")?;
    let rhs = &mr * (p.s() + int(1) - &mr) * ((&nr - a) * &cur - shift * &prev);
    Ok(lhs - rhs)
}

/// Residual of the contiguity relation under `(alpha, beta, zeta) ->
/// (alpha-1, beta-2, zeta+2)`.
pub fn contiguity_residual(m: usize, n: usize, p: &Params) -> Result<Rational> {
    check_index(p, m, n)?;
    let (a, b) = (&p.alpha, &p.beta);
    let nr = int(n as i64);
    let shifted = cal_u(m, n, &p.contiguous())?;
    let c1 = checked_div(&((&nr - a) * (&nr - a + b)), &(a * (a - b)), "alpha(alpha-beta)")?;
    let c2 = checked_div(&(&nr * (&nr - int(2) * a + b)), &(a * (b - a)), "alpha(beta-alpha)")?;
    let prev = if n > 0 { cal_u(m, n - 1, p)? } else { Rational::zero() };
    Ok(shifted - c1 * cal_u(m, n, p)? - c2 * prev)
}

/// `X - 2Z - I`, `Z + I` and `V` equal the generators at the shifted
/// parameters.
pub fn contiguity_operators(p: &Params) -> VerificationReport {
    let mut r = VerificationReport::new("rational");
    let q = p.contiguous();
    let id = RationalMatrix::identity(p.dim());
    let z = build_z(p);
    let x = build_x(p);
    let lhs_x = &(&x - &z.scale(&int(2))) - &id;
    r.matrices_equal("rational.contiguity.x", "X - 2Z - I is X at shifted parameters", &lhs_x, &build_x(&q));
    r.matrices_equal("rational.contiguity.z", "Z + I is Z at shifted parameters", &(&z + &id), &build_z(&q));
    r.matrices_equal("rational.contiguity.v", "V is unchanged by the shift", &build_v(p), &build_v(&q));
    r
}

/// Parameters `(rho_1, rho_2)` of the dual Hahn polynomials in the expansion.
pub fn dual_hahn_params(p: &Params) -> (Rational, Rational) {
    let (a, b, z, big) = (&p.alpha, &p.beta, &p.zeta, p.n());
    let two = int(2);
    (
        &big - &two * a - b - &two * z - int(1),
        &two * a - b - &big - int(1),
    )
}

/// `3F2(-k, -x, x+rho1+rho2+1; rho1+1, -N; 1)`.
pub fn dual_hahn(k: usize, x: usize, p: &Params) -> Result<Rational> {
    if k == 0 || x == 0 {
        return Ok(Rational::one());
    }
    let (r1, r2) = dual_hahn_params(p);
    let xr = int(x as i64);
    terminating(
        &[-int(k as i64), -xr.clone(), &xr + &r1 + &r2 + int(1)],
        &[&r1 + int(1), -p.n()],
    )
}

/// Right-hand side of the dual Hahn expansion of `U_m(n)`.
pub fn dual_hahn_sum(m: usize, n: usize, p: &Params) -> Result<Rational> {
    let (a, b) = (&p.alpha, &p.beta);
    let nr = int(n as i64);
    let two = int(2);
    let mut acc = Rational::zero();
    for k in 0..=n {
        let c = pochhammer(&-a, k) * pochhammer(&(&two * a - b - &nr), n - k) / (factorial(n - k) * factorial(k));
        acc += c * dual_hahn(k, m, p)?;
    }
    checked_div(&(factorial(n) * acc), &pochhammer(&(a - b - &nr), n), "(alpha-beta-n)_n")
}

/// Closed form of `<e_m|z*_k>`.
pub fn e_z_star_closed(m: usize, k: usize, p: &Params) -> Result<Rational> {
    let (a, b, z, big) = (&p.alpha, &p.beta, &p.zeta, p.n());
    let two = int(2);
    let mr = int(m as i64);
    let num = multi_pochhammer(&[-big.clone(), &big - &two * a - b - &two * z], m);
    let den = factorial(k) * pochhammer(&(&mr - p.s() - int(1)), m);
    Ok(checked_div(&num, &den, "(m-2beta-2zeta-1)_m")? * dual_hahn(k, m, p)?)
}

/// Dual Hahn expansion of `U_m(n)` and the closed form of `<e_m|z*_k>`.
pub fn dual_hahn_expansion(p: &Params) -> VerificationReport {
    let mut r = VerificationReport::new("rational");
    let result = (|| {
        for m in 0..=p.nmax {
            for n in 0..=p.nmax {
                let lhs = cal_u(m, n, p)?;
                let rhs = dual_hahn_sum(m, n, p)?;
                if lhs != rhs {
                    return Ok(Some(format!(
                        "(m, n) = ({m}, {n}): {} != {}",
                        to_exact_string(&lhs),
                        to_exact_string(&rhs)
                    )));
                }
            }
        }
        Ok(None)
    })();
    r.outcome_result("rational.dual-hahn.expansion", "U_m(n) as a sum of dual Hahn polynomials", result);
    let result = (|| {
        let dotted = &family(p, BasisLabel::E)?.transpose() * &family(p, BasisLabel::ZStar)?;
        let closed = RationalMatrix::try_from_fn(p.dim(), p.dim(), |m, k| e_z_star_closed(m, k, p))?;
        Ok(matrix_mismatch(&dotted, &closed))
    })();
    r.outcome_result("rational.dual-hahn.e-zstar", "<e_m|z*_k> in terms of dual Hahn polynomials", result);
    r
}

/// `3F2(-m, -n, m+b-N; -N, a-n; 1)`, the limit of `U_m(n)` along the Hahn
/// direction.
pub fn hahn_target(m: usize, n: usize, a_h: &Rational, b_h: &Rational, nmax: usize) -> Result<Rational> {
    if m == 0 || n == 0 {
        return Ok(Rational::one());
    }
    let big = int(nmax as i64);
    let (mr, nr) = (int(m as i64), int(n as i64));
    terminating(&[-mr.clone(), -nr.clone(), &mr + b_h - &big], &[-big, a_h - &nr])
}

/// `|U_m(n; t, t-a, (N-1-b+2a)/2 - t) - target|` for each `t`.
pub fn hahn_deviations(
    m: usize,
    n: usize,
    a_h: &Rational,
    b_h: &Rational,
    nmax: usize,
    t_values: &[Rational],
) -> Result<Vec<Rational>> {
    let target = hahn_target(m, n, a_h, b_h, nmax)?;
    let big = int(nmax as i64);
    t_values
        .iter()
        .map(|t| {
            let c = (&big - int(1) - b_h + int(2) * a_h) / int(2) - t;
            Ok((cal_u_with(m, n, t, &(t - a_h), &c, nmax)? - &target).abs())
        })
        .collect()
}

/// Deviations shrink along `t_values` and the last one is below `10^-3`.
pub fn hahn_limit_check(
    m: usize,
    n: usize,
    a_h: &Rational,
    b_h: &Rational,
    p0: &Params,
    t_values: &[Rational],
) -> VerificationReport {
    let mut r = VerificationReport::new("rational");
    let id = format!("rational.hahn-limit.{m}.{n}");
    match hahn_deviations(m, n, a_h, b_h, p0.nmax, t_values) {
        Ok(devs) => {
            let rising = devs
                .windows(2)
                .position(|w| !w[1].is_zero() && cmp_abs(&w[1], &w[0]) != std::cmp::Ordering::Less);
            r.outcome(
                format!("{id}.monotone"),
                "deviation from the Hahn limit decreases in t",
                rising.map(|i| format!("deviation at t index {} does not decrease", i + 1)),
            );
            let bound = frac(1, 1000);
            let last = devs.last().cloned().unwrap_or_default();
            r.outcome(
                format!("{id}.bound"),
                "deviation at the largest t is below 1/1000",
                (cmp_abs(&last, &bound) != std::cmp::Ordering::Less)
                    .then(|| format!("deviation {}", crate::rational::to_decimal_string(&last, 12))),
            );
        }
        Err(e) => r.outcome_result(id, "Hahn limit", Err(e)),
    }
    r
}

fn grid_failure(p: &Params, f: impl Fn(usize, usize, &Params) -> Result<Rational>) -> Result<Option<String>> {
    for m in 0..=p.nmax {
        for n in 0..=p.nmax {
            let v = f(m, n, p)?;
            if !v.is_zero() {
                return Ok(Some(format!("(m, n) = ({m}, {n}): residual {}", to_exact_string(&v))));
            }
        }
    }
    Ok(None)
}

/// Every rational-function check at the given parameters.
pub fn verify_rational(p: &Params) -> VerificationReport {
    let mut r = VerificationReport::new("rational");
    let overlaps = RationalOverlaps::new(p);
    let id = RationalMatrix::identity(p.dim());
    r.outcome_result(
        "rational.identification.u",
        "<e_m|d*_n> equals the closed form",
        overlaps.clone().and_then(|o| Ok(matrix_mismatch(&o.u, &u_closed_table(p)?))),
    );
    r.outcome_result(
        "rational.identification.u-tilde",
        "<e*_m|Z|d_n> equals the closed form",
        overlaps.clone().and_then(|o| Ok(matrix_mismatch(&o.u_tilde, &u_tilde_closed_table(p)?))),
    );
    r.outcome_result(
        "rational.overlap-gram.degree",
        "sum_n U~_k(n) U_m(n) = delta",
        overlaps.clone().map(|o| matrix_mismatch(&(&o.u_tilde * &o.u.transpose()), &id)),
    );
    r.outcome_result(
        "rational.overlap-gram.variable",
        "sum_m U~_m(k) U_m(n) = delta",
        overlaps.map(|o| matrix_mismatch(&(&o.u_tilde.transpose() * &o.u), &id)),
    );
    r.extend(biorthogonality(p));
    r.outcome_result("rational.gevp-recurrence", "generalized eigenvalue recurrence in m", grid_failure(p, gevp_recurrence_residual));
    r.outcome_result("rational.difference", "difference equation in n", grid_failure(p, difference_residual));
    let shifted_ok = validate_params(&p.contiguous(), None);
    r.outcome_result(
        "rational.contiguity",
        "contiguity relation under the parameter shift",
        shifted_ok.and_then(|_| grid_failure(p, contiguity_residual)),
    );
    r.extend(contiguity_operators(p));
    r.extend(dual_hahn_expansion(p));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn reference(nmax: usize) -> Params {
        Params::reference(nmax)
    }

    // Independent oracle: full-range term sum with explicit Pochhammer products.
    fn cal_u_oracle(m: usize, n: usize, p: &Params) -> Rational {
        let (a, b, z, big) = (&p.alpha, &p.beta, &p.zeta, p.n());
        let two = int(2);
        let (mr, nr) = (int(m as i64), int(n as i64));
        let up = [-mr.clone(), -nr.clone(), -a, &mr - &two * b - &two * z - int(1)];
        let lo = [-big.clone(), a - b - &nr, &big - &two * a - b - &two * z];
        (0..=m.min(n)).fold(Rational::zero(), |acc, k| {
            acc + multi_pochhammer(&up, k) / (multi_pochhammer(&lo, k) * factorial(k))
        })
    }

    #[test]
    fn trivial_rows_and_columns() {
        let p = reference(4);
        for k in 0..=4 {
            assert!(cal_u(0, k, &p).unwrap().is_one());
            assert!(cal_u(k, 0, &p).unwrap().is_one());
        }
    }

    #[test]
    fn direct_summation() {
        let p = reference(4);
        assert_eq!(cal_u(1, 1, &p).unwrap(), cal_u_oracle(1, 1, &p));
        assert_eq!(cal_u(1, 1, &p).unwrap(), frac(3977, 3887));
        for m in 0..=4 {
            for n in 0..=4 {
                assert_eq!(cal_u(m, n, &p).unwrap(), cal_u_oracle(m, n, &p));
            }
        }
    }

    #[test]
    fn tilde_is_substitution() {
        let p = reference(4);
        let big = p.n();
        for m in 0..=4 {
            for n in 0..=4 {
                let direct = cal_u_with(
                    m,
                    4 - n,
                    &(&big - &p.alpha - int(1)),
                    &(&p.beta + int(2) * &p.zeta - int(2)),
                    &(int(2) - &p.zeta),
                    4,
                )
                .unwrap();
                assert_eq!(cal_u_tilde(m, n, &p).unwrap(), direct);
            }
        }
    }

    #[test]
    fn overlaps_match_closed_forms() {
        let p = reference(5);
        for m in 0..=5 {
            for n in 0..=5 {
                overlap_u(m, n, &p).unwrap();
                overlap_u_tilde(m, n, &p).unwrap();
            }
        }
    }

    #[test]
    fn weight_sums() {
        let p = reference(4);
        let s1 = (0..=4).fold(Rational::zero(), |acc, j| acc + weight(j, &p).unwrap() * cal_u_tilde(0, j, &p).unwrap());
        assert!(s1.is_one());
        let s1_plain = (0..=4).fold(Rational::zero(), |acc, j| acc + weight(j, &p).unwrap());
        assert!(s1_plain.is_one());
        // U_j(0) = 1 but the companion factor U~_j(0) stays.
        let s2 = (0..=4).fold(Rational::zero(), |acc, j| acc + weight_star(j, &p).unwrap() * cal_u_tilde(j, 0, &p).unwrap());
        assert!(s2.is_one());
        let bare = (0..=4).fold(Rational::zero(), |acc, j| acc + weight_star(j, &p).unwrap());
        assert!(!bare.is_one());
    }

    #[test]
    fn off_diagonal_entry_vanishes() {
        let p = reference(4);
        assert!(first_gram(&p).unwrap()[(1, 2)].is_zero());
        assert!(second_gram(&p).unwrap()[(1, 2)].is_zero());
    }

    #[test]
    fn boundary_coefficients() {
        let p = reference(5);
        assert!(coeff_c(0, &p).unwrap().is_zero());
        assert!(coeff_a(5, &p).unwrap().is_zero());
        assert!(coeff_d(0, &p).is_zero());
        assert!(coeff_b(5, &p).is_zero());
    }

    #[test]
    fn full_suite_passes() {
        for nmax in [1, 2, 5] {
            let p = reference(nmax);
            let r = verify_rational(&p);
            assert!(r.all_passed(), "N={nmax}: {:?}", r.failures().collect::<Vec<_>>());
        }
        let p = Params::new(5, frac(-5, 11), frac(7, 3), frac(2, 13)).unwrap();
        let r = verify_rational(&p);
        assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn hahn_limit() {
        let p0 = reference(4);
        let ts = [int(1000), int(10000), int(100000)];
        let r = hahn_limit_check(1, 1, &frac(1, 3), &frac(1, 5), &p0, &ts);
        assert!(r.all_passed(), "{:?}", r.checks);
        assert_eq!(r.count(crate::report::Status::Pass), 2);
        let r = hahn_limit_check(0, 0, &frac(1, 3), &frac(1, 5), &p0, &ts);
        assert!(r.all_passed());
        let devs = hahn_deviations(1, 1, &frac(1, 3), &frac(1, 5), 4, &ts).unwrap();
        assert!(cmp_abs(&devs[2], &frac(1, 100000)) == std::cmp::Ordering::Less);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn identities_hold(nmax in 1usize..5, an in -9i64..9, bn in -9i64..9, zn in -9i64..9) {
            let p = Params::new(nmax, frac(an, 7), frac(bn, 11), frac(zn, 13)).unwrap();
            prop_assume!(validate_params(&p, Some(&FParams::reference())).is_ok());
            prop_assume!(validate_params(&p.contiguous(), None).is_ok());
            let r = verify_rational(&p);
            prop_assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
        }
    }
}
