//! Representation parameters and the genericity registry.

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::hyper::pochhammer;
use crate::rational::{frac, int, to_exact_string, Rational};

/// Data of the `(N+1)`-dimensional representation: the highest standard-basis
/// index `nmax` (that is, `N`) and the three parameters `alpha`, `beta`,
/// `zeta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Params {
    pub nmax: usize,
    pub alpha: Rational,
    pub beta: Rational,
    pub zeta: Rational,
}

/// Auxiliary parameter of the `f` family, the eigenbasis of `X + rho Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FParams {
    pub rho: Rational,
}

impl Params {
    pub fn new(nmax: usize, alpha: Rational, beta: Rational, zeta: Rational) -> Result<Self> {
        if nmax == 0 {
            return Err(Error::PreconditionViolated("N must be at least 1".into()));
        }
        Ok(Self { nmax, alpha, beta, zeta })
    }

    /// Generic reference point `alpha = 1/3, beta = 1/5, zeta = 1/7`.
    pub fn reference(nmax: usize) -> Self {
        Self {
            nmax: nmax.max(1),
            alpha: frac(1, 3),
            beta: frac(1, 5),
            zeta: frac(1, 7),
        }
    }

    /// `N` as a rational.
    pub fn n(&self) -> Rational {
        int(self.nmax as i64)
    }

    pub fn dim(&self) -> usize {
        self.nmax + 1
    }

    /// `2 beta + 2 zeta`, which recurs in the e-basis formulas.
    pub fn s(&self) -> Rational {
        int(2) * (&self.beta + &self.zeta)
    }

    /// Shift `(alpha, beta, zeta) -> (alpha - 1, beta - 2, zeta + 2)` used by
    /// the contiguity relation.
    pub fn contiguous(&self) -> Self {
        Self {
            nmax: self.nmax,
            alpha: &self.alpha - int(1),
            beta: &self.beta - int(2),
            zeta: &self.zeta + int(2),
        }
    }

    /// Canonical string form of the parameters, ordered for reports.
    pub fn describe(&self, fp: Option<&FParams>) -> Vec<(String, String)> {
        let mut out = vec![
            ("N".to_string(), self.nmax.to_string()),
            ("alpha".to_string(), to_exact_string(&self.alpha)),
            ("beta".to_string(), to_exact_string(&self.beta)),
            ("zeta".to_string(), to_exact_string(&self.zeta)),
        ];
        if let Some(fp) = fp {
            out.push(("rho".to_string(), to_exact_string(&fp.rho)));
        }
        out
    }
}

impl FParams {
    pub fn new(rho: Rational) -> Self {
        Self { rho }
    }

    pub fn reference() -> Self {
        Self { rho: frac(1, 13) }
    }
}

/// One entry of the genericity registry: a named denominator expression and
/// its value at the given parameters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Denominator {
    pub expression: String,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub value: Rational,
}

struct Registry {
    items: Vec<Denominator>,
}

impl Registry {
    fn push(&mut self, expression: String, value: Rational) {
        self.items.push(Denominator { expression, value });
    }

    fn poch(&mut self, name: &str, idx: &str, at: usize, a: Rational, len: usize) {
        let v = pochhammer(&a, len);
        self.push(format!("{name} [{idx}={at}]"), v);
    }
}

/// Every denominator expression used by the closed forms of the eigenbases,
/// matrix elements, Racah overlaps and rational functions, evaluated at `p`
/// (and at `fp` for the `rho`-dependent ones). Pochhammer symbols enter as
/// single products.
pub fn denominator_registry(p: &Params, fp: Option<&FParams>) -> Vec<Denominator> {
    let mut r = Registry { items: Vec::new() };
    let n_ = p.n();
    let (a, b, z) = (&p.alpha, &p.beta, &p.zeta);
    let s = p.s();
    let nm = p.nmax;
    for n in 0..=nm {
        let nr = int(n as i64);
        r.poch("(-alpha)_{n+1}", "n", n, -a, n + 1);
        r.poch("(alpha-beta-n)_n", "n", n, a - b - &nr, n);
        r.poch("(n-N-alpha+beta+1)_{N-n}", "n", n, &nr - &n_ - a + b + int(1), nm - n);
        for k in -3i64..=3 {
            r.push(format!("2n-2beta-2zeta-({k}) [n={n}]"), int(2) * &nr - &s - int(k));
        }
        r.push(format!("n-alpha [n={n}]"), &nr - a);
        r.push(format!("n-alpha+beta [n={n}]"), &nr - a + b);
        r.poch("(m-2beta-2zeta-1)_m", "m", n, &nr - &s - int(1), n);
        r.poch("(2beta+2zeta-N-n+1)_{N-n}", "n", n, &s - &n_ - &nr + int(1), nm - n);
        r.poch("(2alpha+beta+2zeta-2N+1)_{N-l}", "l", n, int(2) * a + b + int(2) * z - int(2) * &n_ + int(1), nm - n);
        r.poch("(j-1-2beta-2zeta)_{N+1}", "j", n, &nr - int(1) - &s, nm + 1);
        r.poch("(n-alpha-beta-2zeta+1)_{N-n}", "n", n, &nr - a - b - int(2) * z + int(1), nm - n);
    }
    r.poch("(N-2alpha-beta-2zeta)_l", "l", nm, &n_ - int(2) * a - b - int(2) * z, nm);
    r.poch("(beta-2alpha+1)_n", "n", nm, b - int(2) * a + int(1), nm);
    r.poch("(2alpha-beta-N)_k", "k", nm, int(2) * a - b - &n_, nm);
    if let Some(fp) = fp {
        let rho = &fp.rho;
        for n in 0..=nm {
            let nr = int(n as i64);
            for k in -1i64..=2 {
                r.push(format!("2n-2alpha-rho+({k}) [n={n}]"), int(2) * &nr - int(2) * a - rho + int(k));
            }
            r.poch("(n-2alpha-rho)_n", "n", n, &nr - int(2) * a - rho, n);
            r.poch("(2alpha+rho-N-n)_{N-n}", "n", n, int(2) * a + rho - &n_ - &nr, nm - n);
            r.poch("(beta+rho-N+1)_{N-l}", "l", n, b + rho - &n_ + int(1), nm - n);
        }
        r.poch("(-beta-rho)_l", "l", nm, -b - rho, nm);
        r.poch("(beta-rho+2zeta-N+1)_n", "n", nm, b - rho + int(2) * z - &n_ + int(1), nm);
    }
    r.items
}

/// `Ok(())` when every registry expression is nonzero; otherwise the list of
/// vanishing expressions.
pub fn validate_params(p: &Params, fp: Option<&FParams>) -> Result<()> {
    if p.nmax == 0 {
        return Err(Error::PreconditionViolated("N must be at least 1".into()));
    }
    let offenders: Vec<String> = denominator_registry(p, fp)
        .into_iter()
        .filter(|d| d.value.is_zero())
        .map(|d| d.expression)
        .collect();
    if offenders.is_empty() {
        Ok(())
    } else {
        Err(Error::DegenerateParameters(offenders))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_point_is_generic() {
        for nmax in 1..=12 {
            let p = Params::reference(nmax);
            assert!(validate_params(&p, Some(&FParams::reference())).is_ok(), "N={nmax}");
        }
        let p = Params::new(4, frac(1, 3), frac(1, 7), frac(1, 11)).unwrap();
        assert!(validate_params(&p, None).is_ok());
    }

    #[test]
    fn integer_alpha_is_degenerate() {
        let p = Params::new(3, int(1), int(0), int(0)).unwrap();
        let Err(Error::DegenerateParameters(list)) = validate_params(&p, None) else {
            panic!("expected degeneracy");
        };
        assert!(list.iter().any(|e| e.starts_with("(-alpha)_{n+1} [n=1]")));
    }

    #[test]
    fn half_integer_beta_plus_zeta_is_degenerate() {
        // 2n - 2beta - 2zeta - 1 vanishes at n = 1 when beta + zeta = 1/2.
        let p = Params::new(2, frac(1, 3), frac(1, 2), int(0)).unwrap();
        let Err(Error::DegenerateParameters(list)) = validate_params(&p, None) else {
            panic!("expected degeneracy");
        };
        assert!(list.contains(&"2n-2beta-2zeta-(1) [n=1]".to_string()));
    }

    #[test]
    fn rho_expressions_only_with_fparams() {
        let p = Params::reference(3);
        let fp = FParams::new(-frac(1, 5));
        // -beta - rho = 0
        assert!(validate_params(&p, None).is_ok());
        assert!(validate_params(&p, Some(&fp)).is_err());
    }

    #[test]
    fn zero_dimension_rejected() {
        assert!(Params::new(0, int(0), int(0), int(0)).is_err());
    }
}
