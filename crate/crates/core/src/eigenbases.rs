//! The eight eigenbases `d, d*, e, e*, f, f*, z, z*` of the representation.
//!
//! `e`, `f`, `z` diagonalize `V`, `X + rho Z` and `Z`; `d` solves the
//! generalized problem `X v = lambda Z v`. Starred families solve the
//! transposed problems. Each family is stored as a matrix whose column `n` is
//! the `n`-th vector expanded over the standard basis.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{v_eigenvalue, Generators};
use crate::error::{Error, Result};
use crate::hyper::pochhammer;
use crate::matrix::{dot, RationalMatrix};
use crate::params::{FParams, Params};
use crate::rational::{checked_div, factorial, int, sign, to_exact_string, Rational};
use crate::report::{matrix_mismatch, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum BasisLabel {
    D,
    DStar,
    E,
    EStar,
    F,
    FStar,
    Z,
    ZStar,
}

impl BasisLabel {
    pub const ALL: [BasisLabel; 8] = [
        BasisLabel::D,
        BasisLabel::DStar,
        BasisLabel::E,
        BasisLabel::EStar,
        BasisLabel::F,
        BasisLabel::FStar,
        BasisLabel::Z,
        BasisLabel::ZStar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BasisLabel::D => "d",
            BasisLabel::DStar => "dStar",
            BasisLabel::E => "e",
            BasisLabel::EStar => "eStar",
            BasisLabel::F => "f",
            BasisLabel::FStar => "fStar",
            BasisLabel::Z => "z",
            BasisLabel::ZStar => "zStar",
        }
    }

    pub fn is_dual(self) -> bool {
        matches!(self, BasisLabel::DStar | BasisLabel::EStar | BasisLabel::FStar | BasisLabel::ZStar)
    }

    /// The family paired with this one by biorthogonality.
    pub fn partner(self) -> BasisLabel {
        match self {
            BasisLabel::D => BasisLabel::DStar,
            BasisLabel::DStar => BasisLabel::D,
            BasisLabel::E => BasisLabel::EStar,
            BasisLabel::EStar => BasisLabel::E,
            BasisLabel::F => BasisLabel::FStar,
            BasisLabel::FStar => BasisLabel::F,
            BasisLabel::Z => BasisLabel::ZStar,
            BasisLabel::ZStar => BasisLabel::Z,
        }
    }

    fn slot(self) -> usize {
        self as usize
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BasisLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BasisLabel::ALL
            .into_iter()
            .find(|l| l.name().eq_ignore_ascii_case(s) || (s.ends_with('*') && l.is_dual() && l.name()[..1] == s[..1]))
            .ok_or_else(|| Error::Parse(format!("unknown basis label {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisFamily {
    pub label: BasisLabel,
    /// Column `n` is the `n`-th basis vector.
    pub vectors: RationalMatrix,
    pub eigenvalues: Vec<Rational>,
}

impl BasisFamily {
    pub fn column(&self, n: usize) -> Vec<Rational> {
        self.vectors.column(n)
    }
}

/// Eigenvalue attached to the `n`-th vector of a family: `alpha - n` for the
/// generalized problem, `mu_n` for `V`, `(n - alpha - rho)(alpha - n)` for
/// `X + rho Z` and `n - alpha` for `Z`.
pub fn eigenvalue(label: BasisLabel, p: &Params, fp: &FParams, n: usize) -> Rational {
    let nr = int(n as i64);
    match label {
        BasisLabel::D | BasisLabel::DStar => &p.alpha - &nr,
        BasisLabel::E | BasisLabel::EStar => v_eigenvalue(p, n),
        BasisLabel::F | BasisLabel::FStar => (&nr - &p.alpha - &fp.rho) * (&p.alpha - &nr),
        BasisLabel::Z | BasisLabel::ZStar => &nr - &p.alpha,
    }
}

fn eigenvalues(label: BasisLabel, p: &Params, fp: &FParams) -> Vec<Rational> {
    (0..=p.nmax).map(|n| eigenvalue(label, p, fp, n)).collect()
}

fn poch(a: &Rational, k: usize) -> Rational {
    pochhammer(a, k)
}

/// Coefficient `<l|b_n>` from the closed-form Pochhammer expansion. Entries
/// outside the triangular support are zero.
pub fn closed_form_entry(label: BasisLabel, p: &Params, fp: &FParams, l: usize, n: usize) -> Result<Rational> {
    let nm = p.nmax;
    let big = p.n();
    let (a, b, z) = (&p.alpha, &p.beta, &p.zeta);
    let rho = &fp.rho;
    let s = p.s();
    let nr = int(n as i64);
    let lower = matches!(label, BasisLabel::D | BasisLabel::EStar | BasisLabel::F | BasisLabel::Z);
    if (lower && l < n) || (!lower && l > n) {
        return Ok(Rational::zero());
    }
    let one = Rational::one();
    let two = int(2);
    let v = match label {
        BasisLabel::D => {
            let c = &nr - &big - a + b + &one;
            let am = a - &big;
            let nn = &nr - &big;
            let pre = checked_div(&poch(&c, nm - n), &(poch(&nn, nm - n) * poch(&am, nm - n)), "(n-N, alpha-N)_{N-n}")?;
            pre * checked_div(&(poch(&nn, nm - l) * poch(&am, nm - l)), &poch(&c, nm - l), "(n-N-alpha+beta+1)_{N-l}")?
        }
        BasisLabel::DStar => {
            let c = a - b - &nr;
            let pre = checked_div(&poch(&c, n), &(factorial(n) * poch(&-a, n + 1)), "(-alpha)_{n+1}")?;
            pre * sign(l) * checked_div(&(poch(&-&nr, l) * poch(&-a, l)), &poch(&c, l), "(alpha-beta-n)_l")?
        }
        BasisLabel::E => {
            let c = &big - &two * a - b - &two * z;
            let d = &nr - &s - &one;
            let pre = checked_div(&(poch(&-&big, n) * poch(&c, n)), &poch(&d, n), "(n-2beta-2zeta-1)_n")?;
            pre * sign(l)
                * checked_div(
                    &(poch(&-&nr, l) * poch(&d, l)),
                    &(factorial(l) * poch(&-&big, l) * poch(&c, l)),
                    "(-N, N-2alpha-beta-2zeta)_l",
                )?
        }
        BasisLabel::EStar => {
            let c = &nr + &big - &two * a - b - &two * z;
            let d = &s - &big - &nr + &one;
            let g = &two * a + b + &two * z - &two * &big + &one;
            let pre = checked_div(&(poch(&-&big, nm - n) * poch(&c, nm - n)), &poch(&d, nm - n), "(2beta+2zeta-N-n+1)_{N-n}")?;
            pre * checked_div(
                &(poch(&(&nr - &big), nm - l) * poch(&d, nm - l)),
                &(factorial(nm - l) * poch(&-&big, nm - l) * poch(&g, nm - l)),
                "(-N, 2alpha+beta+2zeta-2N+1)_{N-l}",
            )?
        }
        BasisLabel::F => {
            let c = b + rho - &big + &one;
            let d = &two * a + rho - &big - &nr;
            let nn = &nr - &big;
            let pre = checked_div(&poch(&c, nm - n), &(poch(&nn, nm - n) * poch(&d, nm - n)), "(n-N, 2alpha+rho-N-n)_{N-n}")?;
            pre * checked_div(&(poch(&nn, nm - l) * poch(&d, nm - l)), &poch(&c, nm - l), "(beta+rho-N+1)_{N-l}")?
        }
        BasisLabel::FStar => {
            let c = -b - rho;
            let d = &nr - &two * a - rho;
            let pre = checked_div(&poch(&c, n), &(factorial(n) * poch(&d, n)), "(n-2alpha-rho)_n")?;
            pre * sign(l) * checked_div(&(poch(&-&nr, l) * poch(&d, l)), &poch(&c, l), "(-beta-rho)_l")?
        }
        BasisLabel::Z => {
            let nn = &nr - &big;
            checked_div(&poch(&nn, nm - l), &poch(&nn, nm - n), "(n-N)_{N-n}")?
        }
        BasisLabel::ZStar => sign(l + n) * checked_div(&poch(&-&nr, l), &poch(&-&nr, n), "(-n)_n")?,
    };
    Ok(v)
}

/// A family built from the closed-form Pochhammer expansions.
pub fn build_basis(p: &Params, fp: &FParams, label: BasisLabel) -> Result<BasisFamily> {
    let dim = p.dim();
    let vectors = RationalMatrix::try_from_fn(dim, dim, |l, n| closed_form_entry(label, p, fp, l, n))?;
    Ok(BasisFamily {
        label,
        vectors,
        eigenvalues: eigenvalues(label, p, fp),
    })
}

/// Pencil `(A, B)` whose generalized eigenvectors `A v = lambda B v` form the
/// family.
fn pencil(label: BasisLabel, p: &Params, fp: &FParams) -> (RationalMatrix, RationalMatrix) {
    let g = Generators::new(p);
    let id = RationalMatrix::identity(p.dim());
    match label {
        BasisLabel::E => (g.v, id),
        BasisLabel::EStar => (g.v.transpose(), id),
        BasisLabel::D => (g.x, g.z),
        BasisLabel::DStar => (g.x.transpose(), g.z.transpose()),
        BasisLabel::F => (&g.x + &g.z.scale(&fp.rho), id),
        BasisLabel::FStar => ((&g.x + &g.z.scale(&fp.rho)).transpose(), id),
        BasisLabel::Z => (g.z, id),
        BasisLabel::ZStar => (g.z.transpose(), id),
    }
}

/// One-dimensional kernel of `A - lambda B`, or a spectrum error.
fn kernel_vector(
    a: &RationalMatrix,
    b: &RationalMatrix,
    lambda: &Rational,
    label: BasisLabel,
    index: usize,
) -> Result<Vec<Rational>> {
    let m = a - &b.scale(lambda);
    let mut ns = m.nullspace();
    if ns.len() != 1 {
        return Err(Error::NondegenerateSpectrumViolated {
            label,
            index,
            dimension: ns.len(),
        });
    }
    Ok(ns.pop().unwrap())
}

fn rescale(v: &mut [Rational], by: &Rational, what: &str) -> Result<()> {
    let c = checked_div(&Rational::one(), by, what)?;
    for x in v.iter_mut() {
        *x *= &c;
    }
    Ok(())
}

/// Primal oracle vectors: kernels of the eigen-problems with `<n|b_n> = 1`.
fn oracle_primal(p: &Params, fp: &FParams, label: BasisLabel, eigs: &[Rational]) -> Result<RationalMatrix> {
    let (a, b) = pencil(label, p, fp);
    let mut cols = Vec::with_capacity(p.dim());
    for (n, lambda) in eigs.iter().enumerate() {
        let mut v = kernel_vector(&a, &b, lambda, label, n)?;
        let lead = v[n].clone();
        rescale(&mut v, &lead, "<n|b_n>")?;
        cols.push(v);
    }
    Ok(RationalMatrix::from_columns(&cols))
}

/// A family computed independently of the closed forms: each vector spans
/// the kernel of its (generalized) eigen-problem, found by fraction-free
/// elimination. Primal families are normalized by `<n|b_n> = 1`; dual
/// families by the pairing with the oracle primal family
/// (`<b*_n|b_n> = 1`, with `Z` inserted for the generalized problem).
pub fn oracle_basis(p: &Params, fp: &FParams, label: BasisLabel) -> Result<BasisFamily> {
    oracle_basis_with(p, fp, label, &eigenvalues(label, p, fp))
}

/// [`oracle_basis`] with caller-supplied eigenvalues.
pub fn oracle_basis_with(p: &Params, fp: &FParams, label: BasisLabel, eigs: &[Rational]) -> Result<BasisFamily> {
    let vectors = if !label.is_dual() {
        oracle_primal(p, fp, label, eigs)?
    } else {
        let partner = label.partner();
        let primal = oracle_primal(p, fp, partner, &eigenvalues(partner, p, fp))?;
        let primal = if label == BasisLabel::DStar {
            &Generators::new(p).z * &primal
        } else {
            primal
        };
        let (a, b) = pencil(label, p, fp);
        let mut cols = Vec::with_capacity(p.dim());
        for (n, lambda) in eigs.iter().enumerate() {
            let mut v = kernel_vector(&a, &b, lambda, label, n)?;
            let pairing = dot(&v, &primal.column(n));
            if pairing.is_zero() {
                return Err(Error::Singular);
            }
            rescale(&mut v, &pairing, "dual pairing")?;
            cols.push(v);
        }
        RationalMatrix::from_columns(&cols)
    };
    Ok(BasisFamily {
        label,
        vectors,
        eigenvalues: eigs.to_vec(),
    })
}

/// All eight closed-form families, built once.
#[derive(Debug, Clone)]
pub struct Bases {
    families: Vec<BasisFamily>,
}

impl Bases {
    pub fn closed_form(p: &Params, fp: &FParams) -> Result<Self> {
        let families = BasisLabel::ALL
            .iter()
            .map(|&l| build_basis(p, fp, l))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { families })
    }

    pub fn oracle(p: &Params, fp: &FParams) -> Result<Self> {
        let families = BasisLabel::ALL
            .iter()
            .map(|&l| oracle_basis(p, fp, l))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { families })
    }

    pub fn get(&self, label: BasisLabel) -> &BasisFamily {
        &self.families[label.slot()]
    }

    pub fn m(&self, label: BasisLabel) -> &RationalMatrix {
        &self.get(label).vectors
    }
}

/// Residual of the eigen-equation for a whole family:
/// `A B_mat - B B_mat diag(eigenvalues)`.
pub fn eigen_residual(p: &Params, fp: &FParams, fam: &BasisFamily) -> RationalMatrix {
    let (a, b) = pencil(fam.label, p, fp);
    let lhs = &a * &fam.vectors;
    let bv = &b * &fam.vectors;
    let rhs = RationalMatrix::from_fn(bv.rows(), bv.cols(), |i, j| &bv[(i, j)] * &fam.eigenvalues[j]);
    &lhs - &rhs
}

pub fn check_eigen_equations(p: &Params, fp: &FParams, bases: &Bases) -> VerificationReport {
    let mut r = VerificationReport::new("bases");
    for label in BasisLabel::ALL {
        let res = eigen_residual(p, fp, bases.get(label));
        r.matrix_zero(format!("bases.eigen.{label}"), format!("eigen-equation of the {label} family"), &res);
    }
    r
}

/// Closed forms against the kernel oracle, family by family.
pub fn check_closed_forms(p: &Params, fp: &FParams) -> VerificationReport {
    let mut r = VerificationReport::new("bases");
    for label in BasisLabel::ALL {
        let result = build_basis(p, fp, label).and_then(|closed| {
            let oracle = oracle_basis(p, fp, label)?;
            Ok(matrix_mismatch(&closed.vectors, &oracle.vectors))
        });
        r.outcome_result(
            format!("bases.closed-form.{label}"),
            format!("closed-form expansion of {label} over the standard basis"),
            result,
        );
    }
    r
}

/// Eigenvalues within each family are pairwise distinct.
pub fn check_distinct_eigenvalues(p: &Params, fp: &FParams) -> VerificationReport {
    let mut r = VerificationReport::new("bases");
    for label in [BasisLabel::D, BasisLabel::E, BasisLabel::F, BasisLabel::Z] {
        let e = eigenvalues(label, p, fp);
        let clash = (0..e.len())
            .flat_map(|i| (i + 1..e.len()).map(move |j| (i, j)))
            .find(|&(i, j)| e[i] == e[j])
            .map(|(i, j)| format!("eigenvalues {i} and {j} coincide: {}", to_exact_string(&e[i])));
        r.outcome(format!("bases.distinct.{label}"), format!("simple spectrum of the {label} problem"), clash);
    }
    r
}

/// Biorthogonality Grams and resolutions of the identity.
pub fn check_orthogonality(p: &Params, fp: &FParams) -> VerificationReport {
    let mut r = VerificationReport::new("bases");
    match Bases::closed_form(p, fp) {
        Ok(b) => check_orthogonality_of(p, &b, &mut r),
        Err(e) => r.record("bases.orthogonality", "biorthogonality", crate::report::Status::SkippedDegenerate, e.to_string()),
    }
    r
}

pub(crate) fn check_orthogonality_of(p: &Params, b: &Bases, r: &mut VerificationReport) {
    use BasisLabel::*;
    let id = RationalMatrix::identity(p.dim());
    let z = Generators::new(p).z;
    for (dual, primal) in [(EStar, E), (FStar, F), (ZStar, Z)] {
        let gram = &b.m(dual).transpose() * b.m(primal);
        r.matrices_equal(
            format!("bases.orthogonality.{primal}"),
            format!("<{primal}*_m|{primal}_n> = delta"),
            &gram,
            &id,
        );
        let comp = b.m(primal) * &b.m(dual).transpose();
        r.matrices_equal(
            format!("bases.completeness.{primal}"),
            format!("sum_n |{primal}_n><{primal}*_n| = I"),
            &comp,
            &id,
        );
    }
    let zd = &z * b.m(D);
    r.matrices_equal("bases.orthogonality.d", "<d*_m|Z|d_n> = delta", &(&b.m(DStar).transpose() * &zd), &id);
    r.matrices_equal("bases.completeness.d", "sum_n Z|d_n><d*_n| = I", &(&zd * &b.m(DStar).transpose()), &id);
}

/// Closed form of `Z|d_n>` over the standard basis.
pub fn z_action_on_d(p: &Params, n: usize) -> Result<Vec<Rational>> {
    let nm = p.nmax;
    let big = p.n();
    let (a, b) = (&p.alpha, &p.beta);
    let nr = int(n as i64);
    let one = Rational::one();
    let c = &nr - &big - a + b + &one;
    let am = a - &big;
    let nn = &nr - &big;
    let pre = (a - b - &one)
        * checked_div(&poch(&c, nm - n), &(poch(&nn, nm - n) * poch(&am, nm - n)), "(n-N, alpha-N)_{N-n}")?;
    (0..=nm)
        .map(|l| {
            if l < n {
                return Ok(Rational::zero());
            }
            let num = poch(&nn, nm - l) * poch(&am, nm - l + 1);
            Ok(&pre * checked_div(&num, &poch(&c, nm - l + 1), "(n-N-alpha+beta+1)_{N-l+1}")?)
        })
        .collect()
}

pub fn check_z_action_on_d(p: &Params, fp: &FParams) -> VerificationReport {
    let mut r = VerificationReport::new("bases");
    let result = build_basis(p, fp, BasisLabel::D).and_then(|d| {
        let zd = &Generators::new(p).z * &d.vectors;
        for n in 0..=p.nmax {
            let closed = z_action_on_d(p, n)?;
            if let Some(m) = crate::report::vector_mismatch(&closed, &zd.column(n)) {
                return Ok(Some(format!("n={n}: {m}")));
            }
        }
        Ok(None)
    });
    r.outcome_result("bases.z-on-d", "closed form of Z|d_n>", result);
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;
    use proptest::prelude::*;

    fn reference(nmax: usize) -> (Params, FParams) {
        (Params::reference(nmax), FParams::reference())
    }

    #[test]
    fn z_family_at_n2() {
        let (p, fp) = reference(2);
        let z = build_basis(&p, &fp, BasisLabel::Z).unwrap();
        assert_eq!(z.column(2), vec![int(0), int(0), int(1)]);
        assert_eq!(z.column(0), vec![int(1), int(-1), frac(1, 2)]);
        assert_eq!(z.column(1), vec![int(0), int(1), int(-1)]);
    }

    #[test]
    fn primal_leading_coefficients_are_one() {
        let (p, fp) = reference(5);
        for label in [BasisLabel::D, BasisLabel::E, BasisLabel::F, BasisLabel::Z] {
            let b = build_basis(&p, &fp, label).unwrap();
            assert!(b.vectors.diagonal().iter().all(One::is_one), "{label}");
        }
    }

    #[test]
    fn d_star_zero() {
        let (p, fp) = reference(3);
        let ds = build_basis(&p, &fp, BasisLabel::DStar).unwrap();
        assert_eq!(ds.column(0), vec![-int(3), int(0), int(0), int(0)]);
        assert_eq!(ds.column(0)[0], -(Rational::one() / &p.alpha));
    }

    #[test]
    fn closed_forms_match_oracle() {
        for nmax in [1, 4, 7] {
            let (p, fp) = reference(nmax);
            let r = check_closed_forms(&p, &fp);
            assert!(r.all_passed(), "{r:?}");
        }
    }

    #[test]
    fn wrong_eigenvalue_has_empty_kernel() {
        let (p, fp) = reference(4);
        let mut eigs = eigenvalues(BasisLabel::E, &p, &fp);
        eigs[2] += int(1);
        let err = oracle_basis_with(&p, &fp, BasisLabel::E, &eigs).unwrap_err();
        assert_eq!(
            err,
            Error::NondegenerateSpectrumViolated {
                label: BasisLabel::E,
                index: 2,
                dimension: 0
            }
        );
    }

    #[test]
    fn orthogonality_and_completeness() {
        let (p, fp) = reference(6);
        let r = check_orthogonality(&p, &fp);
        assert_eq!(r.checks.len(), 8);
        assert!(r.all_passed(), "{r:?}");
    }

    #[test]
    fn eigen_equations_and_spectra() {
        let (p, fp) = reference(5);
        let b = Bases::closed_form(&p, &fp).unwrap();
        assert!(check_eigen_equations(&p, &fp, &b).all_passed());
        assert!(check_distinct_eigenvalues(&p, &fp).all_passed());
    }

    #[test]
    fn z_on_d_closed_form() {
        for nmax in [1, 3, 6] {
            let (p, fp) = reference(nmax);
            assert!(check_z_action_on_d(&p, &fp).all_passed());
        }
        // Top vector: Z|d_N> = (N - alpha)|d_N> = (N - alpha)|N>.
        let (p, _) = reference(3);
        let top = z_action_on_d(&p, 3).unwrap();
        assert_eq!(top, vec![int(0), int(0), int(0), int(3) - &p.alpha]);
    }

    #[test]
    fn labels_parse() {
        assert_eq!("eStar".parse::<BasisLabel>().unwrap(), BasisLabel::EStar);
        assert_eq!("e*".parse::<BasisLabel>().unwrap(), BasisLabel::EStar);
        assert_eq!("Z".parse::<BasisLabel>().unwrap(), BasisLabel::Z);
        assert!("q".parse::<BasisLabel>().is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn closed_forms_match_oracle_random(
            nmax in 1usize..=6,
            a in -40i64..40, b in -40i64..40, z in -40i64..40, r in -40i64..40,
        ) {
            let p = Params::new(nmax, frac(a, 11), frac(b, 13), frac(z, 17)).unwrap();
            let fp = FParams::new(frac(r, 19));
            prop_assume!(crate::params::validate_params(&p, Some(&fp)).is_ok());
            let rep = check_closed_forms(&p, &fp);
            prop_assert!(rep.all_passed(), "{:?}", rep);
            prop_assert!(check_orthogonality(&p, &fp).all_passed());
        }
    }
}
