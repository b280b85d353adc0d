//! Pochhammer symbols and terminating generalized hypergeometric sums.
//!
//! A terminating series `pFq(upper; lower; z)` is a finite sum because one
//! upper parameter is a nonpositive integer `-K`. Lower parameters must not
//! make any denominator Pochhammer vanish before the series stops; that
//! condition is checked up front and reported as
//! [`Error::DegenerateParameters`].

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{nonpositive_integer, to_exact_string, Rational};

/// Rising factorial `(a)_n = a (a+1) ... (a+n-1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: &Rational, n: usize) -> Rational {
    let mut acc = Rational::one();
    let mut x = a.clone();
    for _ in 0..n {
        if acc.is_zero() {
            break;
        }
        acc *= &x;
        x += Rational::one();
    }
    acc
}

/// `(a_1, ..., a_k)_n = (a_1)_n ... (a_k)_n`.
pub fn multi_pochhammer(params: &[Rational], n: usize) -> Rational {
    let mut acc = Rational::one();
    for a in params {
        acc *= pochhammer(a, n);
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// `multi_pochhammer(num, n) / multi_pochhammer(den, n)` with a guarded
/// denominator.
pub fn pochhammer_ratio(num: &[Rational], den: &[Rational], n: usize) -> Result<Rational> {
    let d = multi_pochhammer(den, n);
    if d.is_zero() {
        let culprits = den
            .iter()
            .filter(|a| pochhammer(a, n).is_zero())
            .map(|a| format!("({})_{n}", to_exact_string(a)))
            .collect();
        return Err(Error::DegenerateParameters(culprits));
    }
    Ok(multi_pochhammer(num, n) / d)
}

/// A terminating hypergeometric series.
#[derive(Debug, Clone, PartialEq)]
pub struct HypSeries {
    upper: Vec<Rational>,
    lower: Vec<Rational>,
    argument: Rational,
    termination_index: usize,
}

impl HypSeries {
    /// Build a series, locating its termination index and rejecting lower
    /// parameters that would produce a zero denominator inside the range.
    pub fn new(upper: Vec<Rational>, lower: Vec<Rational>, argument: Rational) -> Result<Self> {
        let termination_index = upper
            .iter()
            .filter_map(nonpositive_integer)
            .min()
            .ok_or_else(|| {
                Error::PreconditionViolated(
                    "series does not terminate: no upper parameter is a nonpositive integer"
                        .into(),
                )
            })?;
        let bad: Vec<String> = lower
            .iter()
            .filter(|b| matches!(nonpositive_integer(b), Some(j) if j < termination_index))
            .map(|b| format!("lower parameter {} within range 0..={termination_index}", to_exact_string(b)))
            .collect();
        if !bad.is_empty() {
            return Err(Error::DegenerateParameters(bad));
        }
        Ok(Self {
            upper,
            lower,
            argument,
            termination_index,
        })
    }

    /// `4F3`-style series at argument 1, the only case used by the overlap
    /// formulas.
    pub fn unit(upper: Vec<Rational>, lower: Vec<Rational>) -> Result<Self> {
        Self::new(upper, lower, Rational::one())
    }

    pub fn upper(&self) -> &[Rational] {
        &self.upper
    }

    pub fn lower(&self) -> &[Rational] {
        &self.lower
    }

    pub fn argument(&self) -> &Rational {
        &self.argument
    }

    pub fn termination_index(&self) -> usize {
        self.termination_index
    }
}

/// Sum a terminating series term by term, each term obtained from the
/// previous one by the ratio of consecutive Pochhammer factors.
pub fn hyp_sum(s: &HypSeries) -> Result<Rational> {
    let mut sum = Rational::one();
    let mut term = Rational::one();
    for k in 0..s.termination_index {
        let kk = Rational::from_integer(k.into());
        let mut num = s.argument.clone();
        for a in &s.upper {
            num *= a + &kk;
        }
        if num.is_zero() {
            break;
        }
        let mut den = &kk + Rational::one();
        for b in &s.lower {
            den *= b + &kk;
        }
        if den.is_zero() {
            return Err(Error::DegenerateParameters(vec![format!(
                "lower Pochhammer vanishes at term {}",
                k + 1
            )]));
        }
        term = term * num / den;
        sum += &term;
    }
    Ok(sum)
}

/// Shorthand for a terminating series at argument 1.
pub fn terminating(upper: &[Rational], lower: &[Rational]) -> Result<Rational> {
    hyp_sum(&HypSeries::unit(upper.to_vec(), lower.to_vec())?)
}

/// Check the Whipple transformation of a terminating balanced `4F3`:
///
/// ```text
/// 4F3(-n, a, b, c; d, e, f; 1)
///   = (e-a, f-a)_n / (e, f)_n * 4F3(-n, a, d-b, d-c; d, a+1-n-e, a+1-n-f; 1)
/// ```
///
/// which requires `1 - n + a + b + c = d + e + f`.
#[allow(clippy::too_many_arguments)]
pub fn whipple_check(
    n: usize,
    a: &Rational,
    b: &Rational,
    c: &Rational,
    d: &Rational,
    e: &Rational,
    f: &Rational,
) -> Result<bool> {
    let one = Rational::one();
    let nn = Rational::from_integer(n.into());
    if &one - &nn + a + b + c != d + e + f {
        return Err(Error::PreconditionViolated(
            "Whipple transformation needs a balanced series".into(),
        ));
    }
    let lhs = hyp_sum(&HypSeries::unit(
        vec![-nn.clone(), a.clone(), b.clone(), c.clone()],
        vec![d.clone(), e.clone(), f.clone()],
    )?)?;
    let prefactor = pochhammer_ratio(&[e - a, f - a], &[e.clone(), f.clone()], n)?;
    let rhs = hyp_sum(&HypSeries::unit(
        vec![-nn.clone(), a.clone(), d - b, d - c],
        vec![d.clone(), a + &one - &nn - e, a + &one - &nn - f],
    )?)?;
    Ok(lhs == prefactor * rhs)
}
