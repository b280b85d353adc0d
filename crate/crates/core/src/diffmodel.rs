//! Differential realization on Laurent polynomials, the residue pairing and
//! the model functions of the eight families.
//!
//! The standard basis is modelled by `g_n = (-1)^n (-N)_n x^n` and its dual
//! by `g*_n = (-1)^n x^(-n-1) / (-N)_n`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::algebra::Generators;
use crate::eigenbases::{build_basis, BasisLabel};
use crate::error::Result;
use crate::hyper::{multi_pochhammer, pochhammer};
use crate::matrix::RationalMatrix;
use crate::params::{FParams, Params};
use crate::racahpoly::{s_closed, RacahParams};
use crate::rational::{checked_div, factorial, int, sign, to_exact_string, Rational};
use crate::rationalfns::{dual_hahn, dual_hahn_params, u_closed};
use crate::report::{matrix_mismatch, Status, VerificationReport};

/// Finite Laurent polynomial: `coeffs[i]` multiplies `x^(min_exp + i)`.
/// Leading and trailing zeros are trimmed; zero has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    min_exp: i64,
    coeffs: Vec<Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(exp: i64, c: Rational) -> Self {
        Self::from_coeffs(exp, vec![c])
    }

    pub fn from_coeffs(min_exp: i64, coeffs: Vec<Rational>) -> Self {
        let mut p = Self { min_exp, coeffs };
        p.trim();
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Rational)>) -> Self {
        let map: BTreeMap<i64, Rational> = terms.into_iter().fold(BTreeMap::new(), |mut acc, (e, c)| {
            *acc.entry(e).or_insert_with(Rational::zero) += c;
            acc
        });
        let Some((&lo, _)) = map.iter().next() else {
            return Self::zero();
        };
        let hi = *map.keys().next_back().unwrap();
        let coeffs = (lo..=hi).map(|e| map.get(&e).cloned().unwrap_or_default()).collect();
        Self::from_coeffs(lo, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        self.coeffs.drain(..lead);
        self.min_exp = if self.coeffs.is_empty() { 0 } else { self.min_exp + lead as i64 };
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.min_exp)
    }

    pub fn max_exp(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.min_exp + self.coeffs.len() as i64 - 1)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        let i = exp - self.min_exp;
        if i < 0 {
            return Rational::zero();
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_default()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.min_exp + i as i64, c))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.min_exp, self.coeffs.iter().map(|v| v * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e - 1, c * int(e))))
    }

    /// Terms with exponent in `lo..=hi`.
    pub fn restrict(&self, lo: i64, hi: i64) -> Self {
        Self::from_terms(self.terms().filter(|(e, _)| (lo..=hi).contains(e)).map(|(e, c)| (e, c.clone())))
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::monomial(0, Rational::one()), |acc, _| &acc * self)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms().chain(rhs.terms()).map(|(e, c)| (e, c.clone())))
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &-rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        LaurentPoly::from_coeffs(self.min_exp + rhs.min_exp, out)
    }
}

/// Exponent to coefficient map with canonical rational strings.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.terms()
            .map(|(e, c)| (e, to_exact_string(c)))
            .collect::<BTreeMap<_, _>>()
            .serialize(s)
    }
}

/// `a2 d^2/dx^2 + a1 d/dx + a0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiffOp {
    pub a2: LaurentPoly,
    pub a1: LaurentPoly,
    pub a0: LaurentPoly,
}

pub fn apply_diffop(d: &DiffOp, f: &LaurentPoly) -> LaurentPoly {
    let f1 = f.derivative();
    let f2 = f1.derivative();
    &(&(&d.a2 * &f2) + &(&d.a1 * &f1)) + &(&d.a0 * f)
}

/// Coefficient of `x^-1` in `f g`.
pub fn residue_pair(f: &LaurentPoly, g: &LaurentPoly) -> Rational {
    f.terms()
        .map(|(e, c)| c * g.coeff(-1 - e))
        .fold(Rational::zero(), |acc, v| acc + v)
}

fn poly(coeffs: Vec<Rational>) -> LaurentPoly {
    LaurentPoly::from_coeffs(0, coeffs)
}

/// The differential realizations of `Z`, `V`, `X` and their transposes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelOperators {
    pub z: DiffOp,
    pub v: DiffOp,
    pub x: DiffOp,
    pub zt: DiffOp,
    pub vt: DiffOp,
    pub xt: DiffOp,
}

impl ModelOperators {
    pub fn new(p: &Params) -> Self {
        let (a, b, z, big) = (&p.alpha, &p.beta, &p.zeta, p.n());
        let two = int(2);
        let one = Rational::one();
        let bz = b + z;
        let x_one_minus_x = poly(vec![int(0), int(1), int(-1)]);
        let x2_one_minus_x = poly(vec![int(0), int(0), int(-1), int(1)]);
        let jac = &big - &two * a - b - &two * z;
        Self {
            z: DiffOp {
                a2: LaurentPoly::zero(),
                a1: x_one_minus_x.clone(),
                a0: poly(vec![-a, big.clone()]),
            },
            v: DiffOp {
                a2: x_one_minus_x.clone(),
                a1: poly(vec![jac.clone(), &two * &bz]),
                a0: poly(vec![-(&bz * (&bz + &one))]),
            },
            x: DiffOp {
                a2: x2_one_minus_x.clone(),
                a1: poly(vec![int(0), &two * a - &one, -(&big + b - &one)]),
                a0: poly(vec![-(a * a), &big * b]),
            },
            zt: DiffOp {
                a2: LaurentPoly::zero(),
                a1: -&x_one_minus_x,
                a0: poly(vec![-a - &one, &big + &two]),
            },
            vt: DiffOp {
                a2: x_one_minus_x,
                a1: poly(vec![-(&jac - &two), -&two * (&bz + &two)]),
                a0: poly(vec![-((&bz + &one) * (&bz + &two))]),
            },
            xt: DiffOp {
                a2: x2_one_minus_x,
                a1: poly(vec![int(0), -&two * a - int(3), &big + b + int(5)]),
                a0: poly(vec![-((a + &one) * (a + &one)), (b + &two) * (&big + &two)]),
            },
        }
    }
}

/// `g_n(x) = (-1)^n (-N)_n x^n`.
pub fn g(n: usize, nmax: usize) -> LaurentPoly {
    LaurentPoly::monomial(n as i64, sign(n) * pochhammer(&-int(nmax as i64), n))
}

/// `g*_n(x) = (-1)^n x^(-n-1) / (-N)_n`.
pub fn g_star(n: usize, nmax: usize) -> LaurentPoly {
    LaurentPoly::monomial(-(n as i64) - 1, sign(n) / pochhammer(&-int(nmax as i64), n))
}

/// Coordinates of `f` in the `g` basis, read off with the dual pairing.
pub fn g_coordinates(f: &LaurentPoly, nmax: usize) -> Vec<Rational> {
    (0..=nmax).map(|m| residue_pair(&g_star(m, nmax), f)).collect()
}

/// Coordinates of a dual model function in the `g*` basis.
pub fn g_star_coordinates(f: &LaurentPoly, nmax: usize) -> Vec<Rational> {
    (0..=nmax).map(|m| residue_pair(f, &g(m, nmax))).collect()
}

/// Matrix of `d` in the `g` basis, with the exponents of the images that
/// fall outside `0..=N`.
pub fn operator_matrix(d: &DiffOp, nmax: usize) -> (RationalMatrix, Vec<i64>) {
    let images: Vec<_> = (0..=nmax).map(|n| apply_diffop(d, &g(n, nmax))).collect();
    let stray = images
        .iter()
        .flat_map(|img| img.terms().map(|(e, _)| e).filter(|e| !(0..=nmax as i64).contains(e)).collect::<Vec<_>>())
        .collect();
    let cols: Vec<_> = images.iter().map(|img| g_coordinates(img, nmax)).collect();
    (RationalMatrix::from_columns(&cols), stray)
}

/// Truncated `2F1(upper; lower; x)` up to `x^terms`.
pub fn series(upper: &[Rational], lower: &[Rational], terms: usize) -> Result<LaurentPoly> {
    let coeffs = (0..=terms)
        .map(|k| checked_div(&multi_pochhammer(upper, k), &(multi_pochhammer(lower, k) * factorial(k)), "series denominator"))
        .collect::<Result<Vec<_>>>()?;
    Ok(poly(coeffs))
}

/// Jacobi parameters `(a, b)` of the `e` family.
pub fn jacobi_params(p: &Params) -> (Rational, Rational) {
    dual_hahn_params(p)
}

/// `J_m^(a,b)(x) = (a+1)_m / m! 2F1(-m, m+a+b+1; a+1; x)`.
pub fn jacobi(m: usize, a: &Rational, b: &Rational) -> Result<LaurentPoly> {
    let one = Rational::one();
    let mr = int(m as i64);
    let s = series(&[-mr.clone(), &mr + a + b + &one], &[a + &one], m)?;
    Ok(s.scale(&(pochhammer(&(a + &one), m) / factorial(m))))
}

fn prefactor(n: usize, nmax: usize) -> LaurentPoly {
    g(n, nmax)
}

fn dual_sum(n: usize, nmax: usize, coeff: impl Fn(usize) -> Result<Rational>, range: usize, step: i64) -> Result<LaurentPoly> {
    let c = sign(n) / pochhammer(&-int(nmax as i64), n);
    let terms = (0..=range)
        .map(|l| Ok((-(n as i64) - 1 + step * l as i64, &c * coeff(l)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(LaurentPoly::from_terms(terms))
}

/// Model function of the `n`-th member of a family.
pub fn model_function(label: BasisLabel, n: usize, p: &Params, fp: &FParams) -> Result<LaurentPoly> {
    let (a, b, z, big, rho) = (&p.alpha, &p.beta, &p.zeta, p.n(), &fp.rho);
    let nm = p.nmax;
    let two = int(2);
    let one = Rational::one();
    let nr = int(n as i64);
    let s = p.s();
    Ok(match label {
        BasisLabel::D => &prefactor(n, nm) * &series(&[&nr - &big, a - b], &[-a + &nr + &one], nm - n)?,
        BasisLabel::F => {
            &prefactor(n, nm) * &series(&[&nr - &big, &nr - b - rho], &[&two * &nr - &two * a - rho + &one], nm - n)?
        }
        BasisLabel::Z => &prefactor(n, nm) * &poly(vec![one.clone(), -one.clone()]).pow((nm - n) as u32),
        BasisLabel::E => {
            let pre = checked_div(
                &multi_pochhammer(&[-big.clone(), &big - &two * a - b - &two * z], n),
                &pochhammer(&(&nr - &s - &one), n),
                "(n-2beta-2zeta-1)_n",
            )?;
            series(&[-nr.clone(), &nr - &s - &one], &[&big - &two * a - b - &two * z], n)?.scale(&pre)
        }
        BasisLabel::DStar => dual_sum(
            n,
            nm,
            |l| {
                checked_div(
                    &-multi_pochhammer(&[b - a + &one, &one + &big - &nr], l),
                    &(factorial(l) * pochhammer(&(a - &nr), l + 1)),
                    "(alpha-n)_{l+1}",
                )
            },
            n,
            1,
        )?,
        BasisLabel::EStar => dual_sum(
            n,
            nm,
            |l| {
                checked_div(
                    &multi_pochhammer(&[&nr + &one, &big + &nr - &two * a - b - &two * z], l),
                    &(factorial(l) * pochhammer(&(&two * &nr - &s), l)),
                    "(2n-2beta-2zeta)_l",
                )
            },
            nm - n,
            -1,
        )?,
        BasisLabel::FStar => dual_sum(
            n,
            nm,
            |l| {
                checked_div(
                    &multi_pochhammer(&[b + rho + &one - &nr, &one + &big - &nr], l),
                    &(factorial(l) * pochhammer(&(&one + &two * a + rho - &two * &nr), l)),
                    "(1+2alpha+rho-2n)_l",
                )
            },
            n,
            1,
        )?,
        BasisLabel::ZStar => dual_sum(n, nm, |l| Ok(pochhammer(&(&one + &big - &nr), l) / factorial(l)), n, 1)?,
    })
}

/// All members of a family as model functions.
pub fn model_basis(label: BasisLabel, p: &Params, fp: &FParams) -> Result<Vec<LaurentPoly>> {
    (0..=p.nmax).map(|n| model_function(label, n, p, fp)).collect()
}

/// Coordinate matrix of a model family: `g` coordinates for primal families,
/// `g*` coordinates for dual ones.
pub fn model_coordinates(label: BasisLabel, funcs: &[LaurentPoly], nmax: usize) -> RationalMatrix {
    let cols: Vec<_> = funcs
        .iter()
        .map(|f| if label.is_dual() { g_star_coordinates(f, nmax) } else { g_coordinates(f, nmax) })
        .collect();
    RationalMatrix::from_columns(&cols)
}

fn pair_gram(left: &[LaurentPoly], right: &[LaurentPoly]) -> RationalMatrix {
    RationalMatrix::from_fn(left.len(), right.len(), |m, n| residue_pair(&left[m], &right[n]))
}

/// Generator matrices, model families against the closed-form bases, and
/// the four residue Grams.
pub fn model_orthogonality(p: &Params, fp: &FParams) -> VerificationReport {
    let mut r = VerificationReport::new("model");
    let nm = p.nmax;
    let ops = ModelOperators::new(p);
    let gens = Generators::new(p);
    for (name, op, m) in [("z", &ops.z, &gens.z), ("v", &ops.v, &gens.v), ("x", &ops.x, &gens.x)] {
        let (mat, stray) = operator_matrix(op, nm);
        let failure = if stray.is_empty() {
            matrix_mismatch(&mat, m)
        } else {
            Some(format!("image leaves polynomials of degree <= N at exponent {}", stray[0]))
        };
        r.outcome(format!("model.generator.{name}"), format!("g-basis matrix of the differential {name}"), failure);
    }

    let families = BasisLabel::ALL
        .iter()
        .map(|&l| model_basis(l, p, fp).map(|f| (l, f)))
        .collect::<Result<Vec<_>>>();
    let families = match families {
        Ok(f) => f,
        Err(e) => {
            r.outcome_result("model.basis", "model families", Err(e));
            return r;
        }
    };
    let get = |l: BasisLabel| &families.iter().find(|(k, _)| *k == l).unwrap().1;
    for (label, funcs) in &families {
        let result = build_basis(p, fp, *label).map(|b| matrix_mismatch(&model_coordinates(*label, funcs, nm), &b.vectors));
        r.outcome_result(format!("model.basis.{label}"), format!("model {label} functions match the {label} vectors"), result);
    }

    let id = RationalMatrix::identity(p.dim());
    use BasisLabel::*;
    for (dual, primal) in [(FStar, F), (EStar, E), (ZStar, Z)] {
        let gram = pair_gram(get(dual), get(primal));
        let sym = pair_gram(get(primal), get(dual)).transpose();
        let failure = matrix_mismatch(&gram, &id).or_else(|| matrix_mismatch(&sym, &gram).map(|d| format!("asymmetric: {d}")));
        r.outcome(format!("model.orthogonality.{primal}"), format!("<{primal}*_m, {primal}_n> = delta"), failure);
    }
    let zd: Vec<_> = get(D).iter().map(|f| apply_diffop(&ops.z, f)).collect();
    r.matrices_equal("model.orthogonality.d", "<d*_m, Z d_n> = delta", &pair_gram(get(DStar), &zd), &id);
    let ztds: Vec<_> = get(DStar).iter().map(|f| apply_diffop(&ops.zt, f)).collect();
    r.matrices_equal(
        "model.orthogonality.d-transpose",
        "<d_m, Z^T d*_n> = delta",
        &pair_gram(get(D), &ztds).transpose(),
        &id,
    );
    let plain = pair_gram(get(DStar), get(D));
    let note = if plain == id { "identity" } else { "not the identity" };
    r.record("model.orthogonality.d-plain", "<d*_m, d_n> without Z (recorded only)", Status::Pass, note);

    let (ja, jb) = jacobi_params(p);
    let result = (|| {
        for (n, f) in get(E).iter().enumerate() {
            let pre = checked_div(
                &(factorial(n) * pochhammer(&-p.n(), n)),
                &pochhammer(&(int(n as i64) - p.s() - int(1)), n),
                "(n-2beta-2zeta-1)_n",
            )?;
            if &jacobi(n, &ja, &jb)?.scale(&pre) != f {
                return Ok(Some(format!("n={n}")));
            }
        }
        Ok(None)
    })();
    r.outcome_result("model.jacobi", "e_n is a multiple of the Jacobi polynomial", result);

    let result = (|| {
        let (a, b, big) = (&p.alpha, &p.beta, p.n());
        for (n, f) in get(D).iter().enumerate() {
            let nr = int(n as i64);
            let closed = (&prefactor(n, nm) * &series(&[&nr - &big, a - b - int(1)], &[&nr - a], nm - n)?).scale(&(&nr - a));
            if apply_diffop(&ops.z, f) != closed {
                return Ok(Some(format!("n={n}")));
            }
        }
        Ok(None)
    })();
    r.outcome_result("model.z-on-d", "Z d_n as a single hypergeometric polynomial", result);
    r
}

/// The three residue formulas against direct evaluations.
pub fn integral_representations(p: &Params, fp: &FParams) -> VerificationReport {
    let mut r = VerificationReport::new("model");
    let (a, b, z, big, rho) = (&p.alpha, &p.beta, &p.zeta, p.n(), &fp.rho);
    let nm = p.nmax;
    let two = int(2);
    let one = Rational::one();
    let s = p.s();
    let (ja, jb) = jacobi_params(p);
    let rp = RacahParams::new(p, fp);

    let grid = |f: &dyn Fn(usize, usize) -> Result<Option<String>>| -> Result<Option<String>> {
        for m in 0..=nm {
            for n in 0..=nm {
                if let Some(d) = f(m, n)? {
                    return Ok(Some(d));
                }
            }
        }
        Ok(None)
    };
    let mismatch = |m: usize, n: usize, lhs: Rational, rhs: Rational| {
        (lhs != rhs).then(|| format!("(m, n) = ({m}, {n}): {} != {}", to_exact_string(&lhs), to_exact_string(&rhs)))
    };
    let common = |m: usize, n: usize| -> Result<Rational> {
        let mr = int(m as i64);
        checked_div(
            &(sign(n) * factorial(m) * pochhammer(&-big.clone(), m)),
            &(pochhammer(&-big.clone(), n) * pochhammer(&(&mr - &s - &one), m)),
            "(m-2beta-2zeta-1)_m",
        )
    };

    let result = grid(&|m, n| {
        let nr = int(n as i64);
        let jm = jacobi(m, &ja, &jb)?;
        let h = series(&[&one + b + rho - &nr, &one + &big - &nr], &[&one + &two * a + rho - &two * &nr], n)?;
        let res = residue_pair(&LaurentPoly::monomial(-(n as i64) - 1, one.clone()), &(&jm * &h));
        Ok(mismatch(m, n, common(m, n)? * res, s_closed(m, n, &rp)?))
    });
    r.outcome_result("model.integral.s", "residue formula for S_m(n)", result);

    let result = grid(&|m, n| {
        let nr = int(n as i64);
        let jm = jacobi(m, &ja, &jb)?;
        let h = series(&[&big + &one - &nr, b - a + &one], &[a - &nr + &one], n)?;
        let res = residue_pair(&LaurentPoly::monomial(-(n as i64) - 1, one.clone()), &(&jm * &h));
        let pre = checked_div(&common(m, n)?, &(&nr - a), "n-alpha")?;
        Ok(mismatch(m, n, pre * res, u_closed(m, n, p)?))
    });
    r.outcome_result("model.integral.u", "residue formula for U_m(n)", result);

    let result = grid(&|m, k| {
        let kr = int(k as i64);
        let jm = jacobi(m, &ja, &jb)?;
        // (1-x)^(k-1-N) expanded up to x^k
        let h = series(&[&big + &one - &kr], &[], k)?;
        let res = residue_pair(&LaurentPoly::monomial(-(k as i64) - 1, one.clone()), &(&jm * &h));
        let pre = checked_div(
            &(sign(k) * factorial(m) * factorial(k)),
            &(pochhammer(&(&big - &two * a - b - &two * z), m) * pochhammer(&-big.clone(), k)),
            "(N-2alpha-beta-2zeta)_m",
        )?;
        Ok(mismatch(m, k, pre * res, dual_hahn(k, m, p)?))
    });
    r.outcome_result("model.integral.dual-hahn", "residue formula for the dual Hahn polynomials", result);
    r
}

/// Pairing adjointness of the transposed differential operators and the
/// boundary terms removed by the quotient convention.
pub fn model_transposes(p: &Params) -> VerificationReport {
    let mut r = VerificationReport::new("model");
    let nm = p.nmax;
    let ops = ModelOperators::new(p);
    let gens = Generators::new(p);
    let lowest = -(nm as i64) - 1;
    // g*_{-1} continued from the dual formula: (N + 1) x^0.
    let ghost_low = LaurentPoly::monomial(0, int(nm as i64 + 1));
    let one = Rational::one();
    let low_coeff = [("z", one.clone()), ("v", Rational::zero()), ("x", &p.beta + &one)];
    for ((name, d, dt, m), (_, low)) in [
        ("z", &ops.z, &ops.zt, &gens.z),
        ("v", &ops.v, &ops.vt, &gens.v),
        ("x", &ops.x, &ops.xt, &gens.x),
    ]
    .into_iter()
    .zip(low_coeff)
    {
        let adjoint = (|| {
            for a in 0..=nm {
                let lhs_f = apply_diffop(dt, &g_star(a, nm));
                for b in 0..=nm {
                    let lhs = residue_pair(&lhs_f, &g(b, nm));
                    let rhs = residue_pair(&g_star(a, nm), &apply_diffop(d, &g(b, nm)));
                    if lhs != rhs {
                        return Some(format!("(m, n) = ({a}, {b})"));
                    }
                }
            }
            None
        })();
        r.outcome(format!("model.transpose.{name}.adjoint"), format!("<{name}^T f, g> = <f, {name} g>"), adjoint);

        let images: Vec<_> = (0..=nm).map(|a| apply_diffop(dt, &g_star(a, nm))).collect();
        let quotient: Vec<_> = images.iter().map(|img| g_star_coordinates(img, nm)).collect();
        r.matrices_equal(
            format!("model.transpose.{name}.matrix"),
            format!("{name}^T on the dual monomials is the transpose matrix"),
            &RationalMatrix::from_columns(&quotient),
            &m.transpose(),
        );

        let ghosts = (|| {
            for (a, img) in images.iter().enumerate() {
                let ghost = &img.restrict(i64::MIN, lowest - 1) + &img.restrict(0, i64::MAX);
                let expected = if a == 0 && name != "v" {
                    ghost_low.scale(&low)
                } else {
                    LaurentPoly::zero()
                };
                let extra = if a == nm && name == "v" { ghost.restrict(lowest - 1, lowest - 1) } else { LaurentPoly::zero() };
                if ghost != &expected + &extra {
                    return Some(format!("boundary term of {name}^T g*_{a}"));
                }
                if a == nm && name == "v" && extra.is_zero() {
                    return Some(format!("missing g*_(N+1) term for {name}^T"));
                }
            }
            None
        })();
        r.outcome(
            format!("model.transpose.{name}.ghost"),
            format!("{name}^T leaves the dual span only by the quotient ghost terms"),
            ghosts,
        );
    }
    r
}

/// Every model check.
pub fn verify_model(p: &Params, fp: &FParams) -> VerificationReport {
    let mut r = model_orthogonality(p, fp);
    r.extend(integral_representations(p, fp));
    r.extend(model_transposes(p));
    r
}
