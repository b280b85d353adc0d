//! Matrix elements of the generators in the eigenbases, checked against
//! conjugation by the basis matrices, and the lower reduced Leonard trio
//! conditions.
//!
//! For an operator `O` and a family `b`, `O^(b)_{m,n}` is the coefficient of
//! `b_m` in `O b_n`. Coefficient lists follow that convention: `sup[n]` is
//! `O_{n+1,n}`, `diag[n]` is `O_{n,n}` and `sub[n-1]` is `O_{n-1,n}`.

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::Generators;
use crate::eigenbases::{BasisLabel, Bases};
use crate::error::Result;
use crate::matrix::RationalMatrix;
use crate::params::{FParams, Params};
use crate::rational::{checked_div, int, to_exact_string, Rational};
use crate::report::{matrix_mismatch, Status, VerificationReport};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TridiagonalCoeffs {
    #[serde(serialize_with = "ser_list")]
    pub sup: Vec<Rational>,
    #[serde(serialize_with = "ser_list")]
    pub diag: Vec<Rational>,
    #[serde(serialize_with = "ser_list")]
    pub sub: Vec<Rational>,
}

fn ser_list<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    v.iter().map(to_exact_string).collect::<Vec<_>>().serialize(s)
}

impl TridiagonalCoeffs {
    /// Matrix with `sup`, `diag`, `sub` placed in column-action position.
    pub fn assemble(&self) -> RationalMatrix {
        let dim = self.diag.len();
        RationalMatrix::from_fn(dim, dim, |i, j| {
            if i == j {
                self.diag[j].clone()
            } else if i == j + 1 {
                self.sup[j].clone()
            } else if i + 1 == j {
                self.sub[i].clone()
            } else {
                Rational::zero()
            }
        })
    }

    fn build(
        nmax: usize,
        sup: impl Fn(Rational) -> Result<Rational>,
        diag: impl Fn(Rational) -> Result<Rational>,
        sub: impl Fn(Rational) -> Result<Rational>,
    ) -> Result<Self> {
        Ok(Self {
            sup: (0..nmax).map(|n| sup(int(n as i64))).collect::<Result<_>>()?,
            diag: (0..=nmax).map(|n| diag(int(n as i64))).collect::<Result<_>>()?,
            sub: (1..=nmax).map(|n| sub(int(n as i64))).collect::<Result<_>>()?,
        })
    }
}

/// Sparsity patterns for the trio conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum PatternSpec {
    Diagonal,
    LowerBidiagonal,
    UpperBidiagonal,
    Tridiagonal,
    IrreducibleTridiagonal,
    IrreducibleLowerBidiagonal,
}

/// `None` when `m` fits the pattern; otherwise the first offending entry.
/// Irreducible patterns also require every in-pattern off-diagonal entry to
/// be nonzero.
pub fn check_pattern(m: &RationalMatrix, spec: PatternSpec) -> Option<String> {
    use PatternSpec::*;
    let (below, above) = match spec {
        Diagonal => (false, false),
        LowerBidiagonal | IrreducibleLowerBidiagonal => (true, false),
        UpperBidiagonal => (false, true),
        Tridiagonal | IrreducibleTridiagonal => (true, true),
    };
    let irreducible = matches!(spec, IrreducibleTridiagonal | IrreducibleLowerBidiagonal);
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let allowed = i == j || (below && i == j + 1) || (above && i + 1 == j);
            let v = &m[(i, j)];
            if !allowed && !v.is_zero() {
                return Some(format!("entry ({i}, {j}) = {} outside pattern", to_exact_string(v)));
            }
            if irreducible && allowed && i != j && v.is_zero() {
                return Some(format!("entry ({i}, {j}) vanishes, pattern is reducible"));
            }
        }
    }
    None
}

fn q(num: Rational, den: Rational, what: &str) -> Result<Rational> {
    checked_div(&num, &den, what)
}

/// First and second parts of the diagonal of `Z` in the `e` basis; they also
/// build the diagonal of `X` there.
fn e_diag_parts(p: &Params, n: &Rational) -> Result<(Rational, Rational)> {
    let (a, b, z, big, s) = (&p.alpha, &p.beta, &p.zeta, &p.n(), &p.s());
    let two = int(2);
    let t1 = q(
        n * (n - s + big - int(1)) * (n + &two * a - b - big - int(1)),
        (&two * n - s - int(2)) * (&two * n - s - int(1)),
        "2n-2beta-2zeta-2",
    )?;
    let t2 = q(
        (n - big) * (n - s - int(1)) * (n - &two * a - b - &two * z + big),
        (&two * n - s - int(1)) * (&two * n - s),
        "2n-2beta-2zeta",
    )?;
    Ok((t1, t2))
}

fn z_on_e_sub(p: &Params, n: &Rational) -> Result<Rational> {
    let (a, b, z, big, s) = (&p.alpha, &p.beta, &p.zeta, &p.n(), &p.s());
    let two = int(2);
    let d2 = &two * n - s - int(2);
    q(
        n * (big + int(1) - n)
            * (n + &two * a - b - big - int(1))
            * (n - s - int(2))
            * (n - s + big - int(1))
            * (n - &two * a - b - &two * z + big - int(1)),
        (&two * n - s - int(3)) * &d2 * &d2 * (&two * n - s - int(1)),
        "2n-2beta-2zeta-3",
    )
}

/// `Z` in the `e` basis.
pub fn coeffs_z_on_e(p: &Params) -> Result<TridiagonalCoeffs> {
    TridiagonalCoeffs::build(
        p.nmax,
        |_| Ok(int(1)),
        |n| {
            let (t1, t2) = e_diag_parts(p, &n)?;
            Ok(t1 - t2 - &p.alpha)
        },
        |n| z_on_e_sub(p, &n),
    )
}

/// `X` in the `e` basis.
pub fn coeffs_x_on_e(p: &Params) -> Result<TridiagonalCoeffs> {
    let (b, z) = (&p.beta, &p.zeta);
    TridiagonalCoeffs::build(
        p.nmax,
        |n| Ok(b - n),
        |n| {
            let (t1, t2) = e_diag_parts(p, &n)?;
            Ok(t1 * (&n - b - int(2) * z - int(1)) + t2 * (&n - b) - &p.alpha * &p.alpha)
        },
        |n| Ok((&n - b - int(2) * z - int(1)) * z_on_e_sub(p, &n)?),
    )
}

/// `V` in the `f` basis.
pub fn coeffs_v_on_f(p: &Params, fp: &FParams) -> Result<TridiagonalCoeffs> {
    let (a, b, z, big) = (&p.alpha, &p.beta, &p.zeta, &p.n());
    let rho = &fp.rho;
    let two = int(2);
    let r2 = &two * a + rho;
    TridiagonalCoeffs::build(
        p.nmax,
        |n| {
            let d1 = &two * &n - &r2 + int(1);
            q(
                -((&n - &two * a + b + int(1))
                    * (&n - &two * a - rho)
                    * (&n + big - &two * a - rho + int(1))
                    * (&n - big + b - rho + &two * z + int(1))
                    * (&n - b - rho)),
                (&two * &n - &r2) * &d1 * &d1 * (&two * &n - &r2 + int(2)),
                "2n-2alpha-rho+1",
            )
        },
        |n| {
            let t1 = q(
                &n * (&n - &two * a + b) * (&n - big + b - rho + &two * z) * (&n + big - &two * a - rho),
                (&two * &n - &r2 - int(1)) * (&two * &n - &r2),
                "2n-2alpha-rho-1",
            )?;
            let t2 = q(
                (&n - big) * (&n - &two * a - rho) * (&n - b - rho) * (&n + big - &two * a - b - &two * z),
                (&two * &n - &r2) * (&two * &n - &r2 + int(1)),
                "2n-2alpha-rho",
            )?;
            Ok(t1 + t2 - (b + z + int(1)) * (b + z))
        },
        |n| Ok(-(&n * (&n - big - int(1)) * (&n + big - &two * a - b - &two * z - int(1)))),
    )
}

fn vz_diag(p: &Params, n: &Rational) -> Rational {
    let (a, b, z, big) = (&p.alpha, &p.beta, &p.zeta, &p.n());
    let two = int(2);
    big * (big - b - &two * a - &two * z) * (n - a + b + int(1)) + (b + z) * (b + z + int(1)) * (n + a)
        - &two * n * (n - &two * a - z) * (n - a - z)
}

/// Coefficients of `Z`, `X` and `VZ` in the `d` basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DCoeffs {
    pub z: TridiagonalCoeffs,
    pub x: TridiagonalCoeffs,
    pub vz: TridiagonalCoeffs,
}

/// Coefficients of `Z^T`, `X^T` and `V^T Z^T` in the `d*` basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DStarCoeffs {
    pub zt: TridiagonalCoeffs,
    pub xt: TridiagonalCoeffs,
    pub vtzt: TridiagonalCoeffs,
}

pub fn coeffs_on_d(p: &Params) -> Result<DCoeffs> {
    let (a, b, z, big) = (&p.alpha, &p.beta, &p.zeta, &p.n());
    let two = int(2);
    let zero = |_| Ok(Rational::zero());
    let zc = TridiagonalCoeffs::build(
        p.nmax,
        |n| q(&n - &two * a + b + int(1), &n - a + int(1), "n-alpha+1"),
        |n| Ok(n - a),
        zero,
    )?;
    let xc = TridiagonalCoeffs::build(
        p.nmax,
        |n| q(-((&n - a) * (&n - &two * a + b + int(1))), &n - a + int(1), "n-alpha+1"),
        |n| Ok(-((&n - a) * (&n - a))),
        zero,
    )?;
    let vz = TridiagonalCoeffs::build(
        p.nmax,
        |n| {
            q(
                -((&n - &two * a + b + int(1)) * (&n - a - z) * (&n - a - z + int(1))),
                &n - a + int(1),
                "n-alpha+1",
            )
        },
        |n| Ok(vz_diag(p, &n)),
        |n| Ok(-(&n * (&n - big - int(1)) * (&n - a) * (&n + big - &two * a - b - &two * z - int(1)))),
    )?;
    Ok(DCoeffs { z: zc, x: xc, vz })
}

pub fn coeffs_on_dstar(p: &Params) -> Result<DStarCoeffs> {
    let (a, b, z, big) = (&p.alpha, &p.beta, &p.zeta, &p.n());
    let two = int(2);
    let zero = |_| Ok(Rational::zero());
    let zt = TridiagonalCoeffs::build(
        p.nmax,
        zero,
        |n| Ok(n - a),
        |n| q(&n - &two * a + b, &n - a, "n-alpha"),
    )?;
    let xt = TridiagonalCoeffs::build(
        p.nmax,
        zero,
        |n| Ok(-((&n - a) * (&n - a))),
        |n| Ok(-&n + &two * a - b),
    )?;
    let vtzt = TridiagonalCoeffs::build(
        p.nmax,
        |n| Ok(-((&n - a + int(1)) * (&n - big) * (&n + int(1)) * (&n + big - &two * a - b - &two * z))),
        |n| Ok(vz_diag(p, &n)),
        |n| q(-((&n - a - z - int(1)) * (&n - a - z) * (&n - &two * a + b)), &n - a, "n-alpha"),
    )?;
    Ok(DStarCoeffs { zt, xt, vtzt })
}

/// Coefficients of `V`, `X` and `V~ = X Z^{-1}` in the `z` basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZCoeffs {
    pub v: TridiagonalCoeffs,
    pub x: TridiagonalCoeffs,
    pub vtilde: TridiagonalCoeffs,
}

pub fn coeffs_on_z(p: &Params) -> Result<ZCoeffs> {
    let (a, b, z, big) = (&p.alpha, &p.beta, &p.zeta, &p.n());
    let two = int(2);
    let zero = |_| Ok(Rational::zero());
    let v = TridiagonalCoeffs::build(
        p.nmax,
        |n| Ok(-(&n - &two * a + b + int(1))),
        |n| {
            Ok((&n - &two * a + b + int(1)) * (&n - big) + &n * (&n + big - &two * a - b - &two * z - int(1))
                - (big - b - z) * (big - b - z - int(1)))
        },
        |n| Ok(-(&n * (&n - big - int(1)) * (&n + big - &two * a - b - &two * z - int(1)))),
    )?;
    let x = TridiagonalCoeffs::build(p.nmax, |n| Ok(&n - &two * a + b + int(1)), |n| Ok(-((&n - a) * (&n - a))), zero)?;
    let vtilde = TridiagonalCoeffs::build(
        p.nmax,
        |n| q(&n - &two * a + b + int(1), &n - a, "n-alpha"),
        |n| Ok(-(n - a)),
        zero,
    )?;
    Ok(ZCoeffs { v, x, vtilde })
}

/// `V~ = X Z^{-1}` in the standard basis.
pub fn v_tilde(g: &Generators) -> Result<RationalMatrix> {
    Ok(&g.x * &g.z.inverse()?)
}

/// `dual^T O primal`: coefficients of `O` in the `primal` family.
fn conjugate(dual: &RationalMatrix, op: &RationalMatrix, primal: &RationalMatrix) -> RationalMatrix {
    &(&dual.transpose() * op) * primal
}

/// Every closed-form coefficient against the conjugation oracle, plus the
/// transposition duality between a family and its partner.
pub fn verify_coefficients(p: &Params, fp: &FParams) -> VerificationReport {
    let mut r = VerificationReport::new("matrixreps");
    let g = Generators::new(p);
    let bases = match Bases::closed_form(p, fp) {
        Ok(b) => b,
        Err(e) => {
            r.record("matrixreps.coefficients", "matrix elements", Status::SkippedDegenerate, e.to_string());
            return r;
        }
    };
    use BasisLabel::*;
    let (e, es) = (bases.m(E), bases.m(EStar));
    let (f, fs) = (bases.m(F), bases.m(FStar));
    let (d, ds) = (bases.m(D), bases.m(DStar));
    let (zb, zs) = (bases.m(Z), bases.m(ZStar));
    let (zt, vt, xt) = (g.z.transpose(), g.v.transpose(), g.x.transpose());

    let mut cmp = |id: &str, label: &str, closed: Result<TridiagonalCoeffs>, oracle: RationalMatrix| {
        r.outcome_result(id.to_string(), label.to_string(), closed.map(|c| matrix_mismatch(&c.assemble(), &oracle)));
    };

    cmp("matrixreps.e.z", "Z in the e basis", coeffs_z_on_e(p), conjugate(es, &g.z, e));
    cmp("matrixreps.e.x", "X in the e basis", coeffs_x_on_e(p), conjugate(es, &g.x, e));
    cmp("matrixreps.f.v", "V in the f basis", coeffs_v_on_f(p, fp), conjugate(fs, &g.v, f));

    let zds = &ds.transpose() * &g.z;
    let on_d = |op: &RationalMatrix| &(&zds * op) * d;
    let dc = coeffs_on_d(p);
    cmp("matrixreps.d.z", "Z in the d basis", dc.clone().map(|c| c.z), on_d(&g.z));
    cmp("matrixreps.d.x", "X in the d basis", dc.clone().map(|c| c.x), on_d(&g.x));
    cmp("matrixreps.d.vz", "VZ in the d basis", dc.map(|c| c.vz), on_d(&(&g.v * &g.z)));

    let ztd = &d.transpose() * &zt;
    let on_ds = |op: &RationalMatrix| &(&ztd * op) * ds;
    let dsc = coeffs_on_dstar(p);
    cmp("matrixreps.dstar.zt", "Z^T in the d* basis", dsc.clone().map(|c| c.zt), on_ds(&zt));
    cmp("matrixreps.dstar.xt", "X^T in the d* basis", dsc.clone().map(|c| c.xt), on_ds(&xt));
    cmp("matrixreps.dstar.vtzt", "V^T Z^T in the d* basis", dsc.map(|c| c.vtzt), on_ds(&(&vt * &zt)));

    let zc = coeffs_on_z(p);
    cmp("matrixreps.z.v", "V in the z basis", zc.clone().map(|c| c.v), conjugate(zs, &g.v, zb));
    cmp("matrixreps.z.x", "X in the z basis", zc.clone().map(|c| c.x), conjugate(zs, &g.x, zb));
    match v_tilde(&g) {
        Ok(vt_std) => cmp("matrixreps.z.vtilde", "X Z^-1 in the z basis", zc.map(|c| c.vtilde), conjugate(zs, &vt_std, zb)),
        Err(e) => r.record("matrixreps.z.vtilde", "X Z^-1 in the z basis", Status::SkippedDegenerate, e.to_string()),
    }

    // O^T in the b* basis is the transpose of O in the b basis.
    for (label, primal, dual) in [("e", e, es), ("f", f, fs), ("z", zb, zs)] {
        let failure = [(&g.z, &zt), (&g.v, &vt), (&g.x, &xt)].iter().find_map(|(o, ot)| {
            matrix_mismatch(&conjugate(primal, ot, dual), &conjugate(dual, o, primal).transpose())
        });
        r.outcome(
            format!("matrixreps.duality.{label}"),
            format!("O^T in the {label}* basis is the transpose of O in the {label} basis"),
            failure,
        );
    }
    r
}

/// The three clauses of the lower reduced Leonard trio `(V, V~, Z)`.
pub fn verify_leonard_trio(p: &Params) -> VerificationReport {
    let mut r = VerificationReport::new("matrixreps");
    if let Err(e) = leonard_trio_into(p, &mut r) {
        r.record("matrixreps.trio", "lower reduced Leonard trio", Status::SkippedDegenerate, e.to_string());
    }
    r
}

fn leonard_trio_into(p: &Params, r: &mut VerificationReport) -> Result<()> {
    use crate::eigenbases::build_basis;
    use PatternSpec::*;
    let fp = FParams::new(Rational::zero());
    let g = Generators::new(p);
    let vt = v_tilde(&g)?;
    let e = build_basis(p, &fp, BasisLabel::E)?.vectors;
    let es = build_basis(p, &fp, BasisLabel::EStar)?.vectors;
    let d = build_basis(p, &fp, BasisLabel::D)?.vectors;
    let ds = build_basis(p, &fp, BasisLabel::DStar)?.vectors;
    let zb = build_basis(p, &fp, BasisLabel::Z)?.vectors;
    let zs = build_basis(p, &fp, BasisLabel::ZStar)?.vectors;

    let mut pat = |id: &str, label: &str, m: &RationalMatrix, spec: PatternSpec| {
        r.outcome(id.to_string(), label.to_string(), check_pattern(m, spec));
    };

    // (i) e basis.
    pat("matrixreps.trio.i.v", "V diagonal in the e basis", &conjugate(&es, &g.v, &e), Diagonal);
    let vtz = &vt * &g.z;
    pat("matrixreps.trio.i.vtz", "V~Z tridiagonal in the e basis", &conjugate(&es, &vtz, &e), Tridiagonal);
    pat(
        "matrixreps.trio.i.z",
        "Z irreducible tridiagonal in the e basis",
        &conjugate(&es, &g.z, &e),
        IrreducibleTridiagonal,
    );

    // (ii) e~_n = Z d_n; its dual family is d*.
    let et = &g.z * &d;
    let in_et = |op: &RationalMatrix| conjugate(&ds, op, &et);
    let vt_et = in_et(&vt);
    pat("matrixreps.trio.ii.vtilde", "V~ diagonal in the Z d basis", &vt_et, Diagonal);
    let expected: Vec<Rational> = (0..=p.nmax).map(|n| &p.alpha - int(n as i64)).collect();
    r.outcome(
        "matrixreps.trio.ii.vtilde-eigenvalues",
        "V~ eigenvalue alpha - n on Z d_n",
        crate::report::vector_mismatch(&vt_et.diagonal(), &expected),
    );
    let zv = &g.z * &g.v;
    let zv_et = in_et(&zv);
    let mut pat2 = |id: &str, label: &str, m: &RationalMatrix, spec: PatternSpec| {
        r.outcome(id.to_string(), label.to_string(), check_pattern(m, spec));
    };
    pat2("matrixreps.trio.ii.zv", "ZV tridiagonal in the Z d basis", &zv_et, Tridiagonal);
    let z_et = in_et(&g.z);
    pat2(
        "matrixreps.trio.ii.z",
        "Z irreducible lower bidiagonal in the Z d basis",
        &z_et,
        IrreducibleLowerBidiagonal,
    );
    let dc = coeffs_on_d(p)?;
    r.matrices_equal("matrixreps.trio.ii.zv-coeffs", "ZV on Z d_n equals VZ on d_n", &zv_et, &dc.vz.assemble());
    r.matrices_equal("matrixreps.trio.ii.z-coeffs", "Z on Z d_n equals Z on d_n", &z_et, &dc.z.assemble());

    // (iii) z basis.
    let mut pat3 = |id: &str, label: &str, m: &RationalMatrix, spec: PatternSpec| {
        r.outcome(id.to_string(), label.to_string(), check_pattern(m, spec));
    };
    pat3("matrixreps.trio.iii.z", "Z diagonal in the z basis", &conjugate(&zs, &g.z, &zb), Diagonal);
    pat3(
        "matrixreps.trio.iii.vtilde",
        "V~ irreducible lower bidiagonal in the z basis",
        &conjugate(&zs, &vt, &zb),
        IrreducibleLowerBidiagonal,
    );
    pat3(
        "matrixreps.trio.iii.v",
        "V irreducible tridiagonal in the z basis",
        &conjugate(&zs, &g.v, &zb),
        IrreducibleTridiagonal,
    );
    Ok(())
}

/// Expansion of `Z d_n` over the `z` basis as the finite sum
/// `(n - alpha) sum_{l >= n} (n-2alpha+beta+1)_{l-n} / ((l-n)! (n-alpha)_{l-n}) z_l`.
pub fn z_d_over_z_basis(p: &Params, n: usize) -> Result<Vec<Rational>> {
    use crate::hyper::pochhammer;
    use crate::rational::factorial;
    let (a, b) = (&p.alpha, &p.beta);
    let nr = int(n as i64);
    let c = &nr - int(2) * a + b + int(1);
    let d = &nr - a;
    (0..=p.nmax)
        .map(|l| {
            if l < n {
                return Ok(Rational::zero());
            }
            let k = l - n;
            Ok(&d * q(pochhammer(&c, k), factorial(k) * pochhammer(&d, k), "(n-alpha)_{l-n}")?)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigenbases::build_basis;
    use crate::rational::frac;

    fn reference(nmax: usize) -> (Params, FParams) {
        (Params::reference(nmax), FParams::reference())
    }

    #[test]
    fn printed_entries() {
        let (p, fp) = reference(5);
        assert!(coeffs_z_on_e(&p).unwrap().sup.iter().all(|x| *x == int(1)));
        let ze = coeffs_z_on_e(&p).unwrap();
        let xe = coeffs_x_on_e(&p).unwrap();
        for n in 1..=5 {
            let ratio = int(n) - &p.beta - int(2) * &p.zeta - int(1);
            assert_eq!(xe.sub[n as usize - 1], &ze.sub[n as usize - 1] * ratio);
        }
        let vf = coeffs_v_on_f(&p, &fp).unwrap();
        assert_eq!(vf.sub.len(), 5);
        let dc = coeffs_on_d(&p).unwrap();
        for n in 0..=5usize {
            let d = int(n as i64) - &p.alpha;
            assert_eq!(dc.z.diag[n], d);
            assert_eq!(dc.x.diag[n], -(&d * &d));
        }
        let zc = coeffs_on_z(&p).unwrap();
        for n in 0..5usize {
            assert_eq!(zc.x.sup[n], -zc.v.sup[n].clone());
        }
        assert_eq!(zc.vtilde.diag[0], -(-&p.alpha));
    }

    #[test]
    fn coefficients_match_conjugation() {
        for nmax in [1, 2, 5, 8] {
            let (p, fp) = reference(nmax);
            let r = verify_coefficients(&p, &fp);
            assert!(r.all_passed(), "N={nmax}: {:?}", r.failures().collect::<Vec<_>>());
        }
        let p = Params::new(6, frac(-5, 11), frac(7, 3), frac(2, 13)).unwrap();
        let r = verify_coefficients(&p, &FParams::new(frac(-9, 7)));
        assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn trio_holds_at_reference() {
        let (p, _) = reference(6);
        let r = verify_leonard_trio(&p);
        assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
    }

    #[test]
    fn trio_irreducibility_fails_when_subdiagonal_vanishes() {
        // n - 2alpha + beta + 1 = 0 at n = 1 for beta = 2alpha - 2.
        let a = frac(1, 3);
        let p = Params::new(4, a.clone(), int(2) * &a - int(2), frac(1, 7)).unwrap();
        let r = verify_leonard_trio(&p);
        let c = r.get("matrixreps.trio.iii.vtilde").unwrap();
        assert_eq!(c.status, Status::Fail);
        assert_eq!(c.detail, "entry (2, 1) vanishes, pattern is reducible");
    }

    #[test]
    fn z_d_sum_is_z_times_d() {
        let (p, fp) = reference(4);
        let g = Generators::new(&p);
        let d = build_basis(&p, &fp, BasisLabel::D).unwrap().vectors;
        let zb = build_basis(&p, &fp, BasisLabel::Z).unwrap().vectors;
        for n in 0..=4 {
            let coeffs = z_d_over_z_basis(&p, n).unwrap();
            assert_eq!(zb.mul_vec(&coeffs), (&g.z * &d).column(n));
        }
    }

    #[test]
    fn patterns() {
        let id = RationalMatrix::identity(3);
        assert!(check_pattern(&id, PatternSpec::Diagonal).is_none());
        assert!(check_pattern(&id, PatternSpec::IrreducibleLowerBidiagonal).is_some());
        let z = crate::algebra::build_z(&Params::reference(3));
        assert!(check_pattern(&z, PatternSpec::IrreducibleLowerBidiagonal).is_none());
        assert!(check_pattern(&z, PatternSpec::UpperBidiagonal).is_some());
    }
}
