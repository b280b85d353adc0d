//! Standard-basis matrices of the generators `Z`, `V`, `X`, their transposes,
//! the central parameters and Casimir element, and the relation checks.

use num_traits::{One, Zero};

use crate::matrix::RationalMatrix;
use crate::matrixreps::{check_pattern, PatternSpec};
use crate::params::Params;
use crate::rational::{frac, int, Rational};
use crate::report::VerificationReport;

/// The three generators in the standard basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generators {
    pub z: RationalMatrix,
    pub v: RationalMatrix,
    pub x: RationalMatrix,
}

impl Generators {
    pub fn new(p: &Params) -> Self {
        Self {
            z: build_z(p),
            v: build_v(p),
            x: build_x(p),
        }
    }
}

/// Values of the central elements `xi` and `eta` in the representation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralParams {
    pub xi: Rational,
    pub eta: Rational,
}

fn idx(n: usize) -> Rational {
    int(n as i64)
}

/// Diagonal entry of `V`: `(n - beta - zeta - 1)(beta + zeta - n)`.
pub fn v_eigenvalue(p: &Params, n: usize) -> Rational {
    let u = &p.beta + &p.zeta;
    (idx(n) - &u - int(1)) * (&u - idx(n))
}

/// Coefficient of `|n-1>` in `V|n>`.
fn v_raise(p: &Params, n: usize) -> Rational {
    let nr = idx(n);
    &nr * (p.n() + int(1) - &nr) * (&nr - int(1) - int(2) * &p.alpha - &p.beta - int(2) * &p.zeta + p.n())
}

/// `Z|n> = (n - alpha)|n> + |n+1>`.
pub fn build_z(p: &Params) -> RationalMatrix {
    RationalMatrix::from_fn(p.dim(), p.dim(), |i, j| {
        if i == j {
            idx(j) - &p.alpha
        } else if i == j + 1 {
            Rational::one()
        } else {
            Rational::zero()
        }
    })
}

/// `V|n> = mu_n |n> + n(N+1-n)(n-1-2alpha-beta-2zeta+N)|n-1>`.
pub fn build_v(p: &Params) -> RationalMatrix {
    RationalMatrix::from_fn(p.dim(), p.dim(), |i, j| {
        if i == j {
            v_eigenvalue(p, j)
        } else if i + 1 == j {
            v_raise(p, j)
        } else {
            Rational::zero()
        }
    })
}

/// `X|n> = -(n - alpha)^2 |n> - (n - beta)|n+1>`.
pub fn build_x(p: &Params) -> RationalMatrix {
    RationalMatrix::from_fn(p.dim(), p.dim(), |i, j| {
        let d = idx(j) - &p.alpha;
        if i == j {
            -(&d * &d)
        } else if i == j + 1 {
            &p.beta - idx(j)
        } else {
            Rational::zero()
        }
    })
}

/// Transposed generators `(Z^T, V^T, X^T)` assembled from their own action
/// formulas on the standard basis, not by transposition.
pub fn build_transposes(p: &Params) -> (RationalMatrix, RationalMatrix, RationalMatrix) {
    let dim = p.dim();
    let zt = RationalMatrix::from_fn(dim, dim, |i, j| {
        if i == j {
            idx(j) - &p.alpha
        } else if i + 1 == j {
            Rational::one()
        } else {
            Rational::zero()
        }
    });
    let vt = RationalMatrix::from_fn(dim, dim, |i, j| {
        if i == j {
            v_eigenvalue(p, j)
        } else if i == j + 1 {
            let n = idx(j);
            (&n + int(1)) * (p.n() - &n) * (&n - int(2) * &p.alpha - &p.beta - int(2) * &p.zeta + p.n())
        } else {
            Rational::zero()
        }
    });
    let xt = RationalMatrix::from_fn(dim, dim, |i, j| {
        let d = idx(j) - &p.alpha;
        if i == j {
            -(&d * &d)
        } else if i + 1 == j {
            -(idx(j) - int(1) - &p.beta)
        } else {
            Rational::zero()
        }
    });
    (zt, vt, xt)
}

/// `xi` and `eta` such that the generator matrices satisfy the defining
/// relations.
pub fn central_params(p: &Params) -> CentralParams {
    let (a, b, z, n) = (&p.alpha, &p.beta, &p.zeta, &p.n());
    let two = int(2);
    let xi = (b + int(1)) * n * (&two * a + b + &two * z - n) - &two * a * (b + z) * (b + z + int(1))
        + &two * a * z * (a + z);
    let eta = (n - z) * (n - &two * a - b - z) + (b + z) * (b + int(1)) + &two * a * a;
    CentralParams { xi, eta }
}

/// `C = 2ZVZ + {X,V} + 2 zeta {X,Z} + 2X^2 + 2 zeta^2 Z^2 + 2 eta X + V + 2 xi Z`.
pub fn casimir(p: &Params) -> RationalMatrix {
    casimir_of(&Generators::new(p), p)
}

pub fn casimir_of(g: &Generators, p: &Params) -> RationalMatrix {
    let CentralParams { xi, eta } = central_params(p);
    let z = &p.zeta;
    let two = int(2);
    let zvz = &(&g.z * &g.v) * &g.z;
    let terms = [
        zvz.scale(&two),
        g.x.anticommutator(&g.v),
        g.x.anticommutator(&g.z).scale(&(&two * z)),
        (&g.x * &g.x).scale(&two),
        (&g.z * &g.z).scale(&(&two * z * z)),
        g.x.scale(&(&two * &eta)),
        g.v.clone(),
        g.z.scale(&(&two * &xi)),
    ];
    let mut c = RationalMatrix::zeros(p.dim(), p.dim());
    for t in &terms {
        c = &c + t;
    }
    c
}

/// Residuals of the three defining relations; each is zero exactly when the
/// relation holds.
pub fn relation_residuals(g: &Generators, p: &Params) -> [RationalMatrix; 3] {
    let CentralParams { xi, eta } = central_params(p);
    let dim = p.dim();
    let z = &p.zeta;
    let two = int(2);
    let r1 = &(&g.z.commutator(&g.x) - &(&g.z * &g.z)) - &g.x;
    let rhs2 = &(&(&g.v.anticommutator(&g.z) + &g.x.scale(&(&two * z))) + &g.z.scale(&(&two * z * z)))
        + &RationalMatrix::scalar(dim, &xi);
    let r2 = &g.x.commutator(&g.v) - &rhs2;
    let rhs3 = &(&(&g.v + &g.x.scale(&two)) + &g.z.scale(&(&two * z))) + &RationalMatrix::scalar(dim, &eta);
    let r3 = &g.v.commutator(&g.z) - &rhs3;
    [r1, r2, r3]
}

pub fn check_defining_relations(p: &Params) -> VerificationReport {
    check_defining_relations_of(&Generators::new(p), p)
}

/// Defining-relation check on caller-supplied generator matrices.
pub fn check_defining_relations_of(g: &Generators, p: &Params) -> VerificationReport {
    let mut r = VerificationReport::new("algebra");
    let [r1, r2, r3] = relation_residuals(g, p);
    r.matrix_zero("algebra.relation.zx", "[Z,X] = Z^2 + X", &r1);
    r.matrix_zero("algebra.relation.xv", "[X,V] = {V,Z} + 2 zeta X + 2 zeta^2 Z + xi", &r2);
    r.matrix_zero("algebra.relation.vz", "[V,Z] = V + 2X + 2 zeta Z + eta", &r3);
    r
}

/// Commutators of the Casimir element with the three generators.
pub fn check_casimir(p: &Params) -> VerificationReport {
    let g = Generators::new(p);
    let c = casimir_of(&g, p);
    let mut r = VerificationReport::new("algebra");
    r.matrix_zero("algebra.casimir.x", "Casimir commutes with X", &c.commutator(&g.x));
    r.matrix_zero("algebra.casimir.v", "Casimir commutes with V", &c.commutator(&g.v));
    r.matrix_zero("algebra.casimir.z", "Casimir commutes with Z", &c.commutator(&g.z));
    r.outcome(
        "algebra.casimir.scalar",
        "Casimir acts as a scalar",
        (!c.is_scalar()).then(|| "Casimir is not a multiple of the identity".to_string()),
    );
    r
}

/// Transposed generators built from their actions agree with the matrix
/// transposes.
pub fn check_transposes(p: &Params) -> VerificationReport {
    let g = Generators::new(p);
    let (zt, vt, xt) = build_transposes(p);
    let mut r = VerificationReport::new("algebra");
    r.matrices_equal("algebra.transpose.z", "action of Z^T", &zt, &g.z.transpose());
    r.matrices_equal("algebra.transpose.v", "action of V^T", &vt, &g.v.transpose());
    r.matrices_equal("algebra.transpose.x", "action of X^T", &xt, &g.x.transpose());
    r
}

/// Overline presentation, Hahn-algebra relations, Racah-algebra relations
/// with `W = X + rho Z`, and the Borel relation.
pub fn check_subalgebras(p: &Params, rho: &Rational) -> VerificationReport {
    let g = Generators::new(p);
    let CentralParams { xi, eta } = central_params(p);
    let dim = p.dim();
    let sc = |c: &Rational| RationalMatrix::scalar(dim, c);
    let z = &p.zeta;
    let two = int(2);
    let mut r = VerificationReport::new("algebra");

    // Overline generators and central parameters.
    let zb = &g.z - &sc(&(z * frac(1, 2)));
    let xb = &(&g.x + &g.z.scale(z)) - &sc(&(z * z * frac(1, 4)));
    let vb = g.v.clone();
    let xib = &xi - &eta * z;
    let etab = &eta + z * z * frac(1, 2);
    r.matrix_zero("algebra.overline.zx", "overline [Z,X] = Z^2 + X", &(&(&zb.commutator(&xb) - &(&zb * &zb)) - &xb));
    r.matrix_zero(
        "algebra.overline.xv",
        "overline [X,V] = {V,Z} + xi",
        &(&(&xb.commutator(&vb) - &vb.anticommutator(&zb)) - &sc(&xib)),
    );
    r.matrix_zero(
        "algebra.overline.vz",
        "overline [V,Z] = V + 2X + eta",
        &(&(&(&vb.commutator(&zb) - &vb) - &xb.scale(&two)) - &sc(&etab)),
    );

    let vz = vb.commutator(&zb);
    r.matrix_zero(
        "algebra.hahn.vzv",
        "Hahn [[V,Z],V] = 2{V,Z} + 2 xi",
        &(&(&vz.commutator(&vb) - &vb.anticommutator(&zb).scale(&two)) - &sc(&(&two * &xib))),
    );
    r.matrix_zero(
        "algebra.hahn.zvz",
        "Hahn [Z,[V,Z]] = 2Z^2 - V - eta",
        &(&(&(&zb.commutator(&vz) - &(&zb * &zb).scale(&two)) + &vb) + &sc(&etab)),
    );

    // Racah algebra generated by V and W = X + rho Z.
    let w = &g.x + &g.z.scale(rho);
    let c = casimir_of(&g, p);
    let shift = &eta + z * (z - rho);
    let wv = w.commutator(&g.v);
    let lhs1 = g.v.commutator(&wv);
    let rhs1 = &(&(&w.anticommutator(&g.v).scale(&two) + &(&g.v * &g.v).scale(&two)) + &g.v.scale(&(&two * &shift)))
        + &sc(&(&two * (rho * &xi + z * (z * &eta - &xi - &eta * rho))));
    r.matrix_zero("algebra.racah.vwv", "Racah [V,[W,V]]", &(&lhs1 - &rhs1));
    let lhs2 = wv.commutator(&w);
    let rhs2 = &(&(&(&(&w.anticommutator(&g.v).scale(&two) + &(&w * &w).scale(&two)) + &w.scale(&(&two * &shift)))
        + &g.v.scale(&(int(1) - rho * rho)))
        - &c)
        + &sc(&(rho * (&xi - rho * &eta)));
    r.matrix_zero("algebra.racah.wvw", "Racah [[W,V],W] with Casimir", &(&lhs2 - &rhs2));

    // Borel: E = X + Z^2, H = Z.
    let e = &g.x + &(&g.z * &g.z);
    r.matrix_zero("algebra.borel", "Borel [H,E] = E", &(&g.z.commutator(&e) - &e));
    r
}

/// `H = h0 I + h1 Z - h4 V + h4 [V,Z]` and whether it is lower bidiagonal
/// like `Z`.
pub fn heun_bidiagonal(p: &Params, h0: &Rational, h1: &Rational, h4: &Rational) -> (RationalMatrix, bool) {
    let neg = -h4;
    let h = heun_general(p, [h0, h1, &neg, &neg, h4]);
    let ok = check_pattern(&h, PatternSpec::LowerBidiagonal).is_none();
    (h, ok)
}

/// Bidiagonality of `heun_bidiagonal` for each triple, and tridiagonal fill
/// for `h0 I + h1 Z + h2 V + h3 ZV + h4 VZ` with `h3 != -h4`.
pub fn check_heun(p: &Params, triples: &[[Rational; 3]]) -> VerificationReport {
    let mut r = VerificationReport::new("algebra");
    let failure = triples.iter().enumerate().find_map(|(i, [h0, h1, h4])| {
        let (_, ok) = heun_bidiagonal(p, h0, h1, h4);
        (!ok).then(|| format!("triple {i} is not lower bidiagonal"))
    });
    r.outcome("algebra.heun.bidiagonal", "Heun operator acts bidiagonally as Z", failure);
    let one = Rational::one();
    let zero = Rational::zero();
    let h = heun_general(p, [&zero, &zero, &-&one, &zero, &one]);
    let fill = check_pattern(&h, PatternSpec::LowerBidiagonal);
    r.outcome(
        "algebra.heun.negative-control",
        "non-conforming combination fills the upper diagonal",
        fill.is_none().then(|| "VZ - V unexpectedly stays lower bidiagonal".to_string()),
    );
    r
}

/// General algebraic Heun operator `h0 I + h1 Z + h2 V + h3 ZV + h4 VZ`.
pub fn heun_general(p: &Params, h: [&Rational; 5]) -> RationalMatrix {
    let g = Generators::new(p);
    let dim = p.dim();
    let mut out = RationalMatrix::scalar(dim, h[0]);
    out = &out + &g.z.scale(h[1]);
    out = &out + &g.v.scale(h[2]);
    out = &out + &(&g.z * &g.v).scale(h[3]);
    out = &out + &(&g.v * &g.z).scale(h[4]);
    out
}

/// `det(M - lambda I)`.
pub fn characteristic_at(m: &RationalMatrix, lambda: &Rational) -> Rational {
    (m - &RationalMatrix::scalar(m.rows(), lambda)).determinant()
}

/// Eigenvalues `(n - alpha - rho)(alpha - n)` of `W = X + rho Z` annihilate
/// its characteristic polynomial.
pub fn check_w_spectrum(p: &Params, rho: &Rational) -> VerificationReport {
    let g = Generators::new(p);
    let w = &g.x + &g.z.scale(rho);
    let mut r = VerificationReport::new("algebra");
    let failure = (0..=p.nmax).find_map(|n| {
        let nu = (idx(n) - &p.alpha - rho) * (&p.alpha - idx(n));
        let d = characteristic_at(&w, &nu);
        (!d.is_zero()).then(|| format!("n={n}: det = {d}"))
    });
    r.outcome("algebra.w.spectrum", "spectrum of X + rho Z", failure);
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::Params;
    use crate::rational::frac;
    use proptest::prelude::*;

    fn params(nmax: usize, a: (i64, i64), b: (i64, i64), z: (i64, i64)) -> Params {
        Params::new(nmax, frac(a.0, a.1), frac(b.0, b.1), frac(z.0, z.1)).unwrap()
    }

    #[test]
    fn z_at_n1() {
        let p = params(1, (1, 3), (1, 5), (1, 7));
        let z = build_z(&p);
        assert_eq!(z.to_string_rows(), vec![vec!["-1/3", "0"], vec!["1", "2/3"]]);
    }

    #[test]
    fn x_at_n1() {
        let p = params(1, (1, 3), (1, 5), (1, 7));
        let x = build_x(&p);
        assert_eq!(x.diagonal(), vec![frac(-1, 9), frac(-4, 9)]);
        assert_eq!(x[(1, 0)], frac(1, 5));
    }

    #[test]
    fn v_diagonal_at_n2() {
        let p = params(2, (1, 3), (1, 5), (1, 7));
        let (b, z) = (frac(1, 5), frac(1, 7));
        let u = &b + &z;
        let expected = vec![
            (-&u - int(1)) * &u,
            (-&u) * (&u - int(1)),
            (int(1) - &u) * (&u - int(2)),
        ];
        assert_eq!(build_v(&p).diagonal(), expected);
    }

    #[test]
    fn transposed_v_entry() {
        let p = params(2, (1, 3), (1, 5), (1, 7));
        let (_, vt, _) = build_transposes(&p);
        let expected = int(2) * (int(2) - int(2) * frac(1, 3) - frac(1, 5) - int(2) * frac(1, 7));
        assert_eq!(vt[(1, 0)], expected);
        let (zt, _, _) = build_transposes(&p);
        assert_eq!(zt[(0, 1)], int(1));
    }

    #[test]
    fn central_params_special_case() {
        let p = params(3, (0, 1), (2, 5), (0, 1));
        let c = central_params(&p);
        let (b, n) = (frac(2, 5), int(3));
        assert_eq!(c.xi, (&b + int(1)) * (&b - &n) * &n);
        assert_eq!(c.eta, &n * (&n - &b) + &b * (&b + int(1)));
    }

    #[test]
    fn xi_reduces_to_short_form_without_zeta() {
        let p = params(4, (2, 7), (-3, 11), (0, 1));
        let (a, b, n) = (frac(2, 7), frac(-3, 11), int(4));
        let short = (&b + int(1)) * (&b - &n) * (&n - int(2) * &a);
        assert_eq!(central_params(&p).xi, short);
    }

    #[test]
    fn xi_eta_frozen() {
        // Values from an independent fraction-arithmetic evaluation of the
        // relation residuals at the (0,0) entry.
        let p = params(2, (1, 3), (1, 5), (1, 7));
        let c = central_params(&p);
        let g = Generators::new(&p);
        let r2 = &(&(&g.x.commutator(&g.v) - &g.v.anticommutator(&g.z)) - &g.x.scale(&(int(2) * &p.zeta)))
            - &g.z.scale(&(int(2) * &p.zeta * &p.zeta));
        let r3 = &(&(&g.v.commutator(&g.z) - &g.v) - &g.x.scale(&int(2))) - &g.z.scale(&(int(2) * &p.zeta));
        assert_eq!(r2[(0, 0)], c.xi);
        assert_eq!(r3[(0, 0)], c.eta);
        assert_eq!(c.xi, frac(-3616, 1575));
        assert_eq!(c.eta, frac(27266, 11025));
    }

    #[test]
    fn relations_hold_at_reference_points() {
        for nmax in [1, 5, 9] {
            assert!(check_defining_relations(&Params::reference(nmax)).all_passed());
        }
        let p = params(5, (1, 3), (1, 5), (0, 1));
        assert!(check_defining_relations(&p).all_passed());
    }

    #[test]
    fn perturbed_z_fails_first_relation() {
        let p = Params::reference(4);
        let mut g = Generators::new(&p);
        g.z[(2, 2)] += int(1);
        let r = check_defining_relations_of(&g, &p);
        let c = r.get("algebra.relation.zx").unwrap();
        assert_eq!(c.status, crate::report::Status::Fail);
        assert!(c.detail.starts_with("entry ("));
    }

    #[test]
    fn casimir_is_central_and_scalar() {
        let p = Params::reference(4);
        assert!(check_casimir(&p).all_passed());
        let c = casimir(&p);
        assert!(c.is_scalar());
        assert_eq!(c[(0, 0)], frac(85048, 99225));
    }

    #[test]
    fn casimir_grouped_form_n1() {
        let p = params(1, (2, 3), (-1, 5), (3, 7));
        let g = Generators::new(&p);
        let CentralParams { xi, eta } = central_params(&p);
        let z = &p.zeta;
        // (2Z + 2X) V grouped differently: 2ZVZ + XV + VX = Z(2VZ) + XV + VX.
        let zv2z = &g.z * &(&g.v * &g.z).scale(&int(2));
        let xz = &g.x + &g.z.scale(z);
        let grouped = &(&(&(&(&zv2z + &g.x.anticommutator(&g.v)) + &(&xz * &xz).scale(&int(2)))
            + &g.x.scale(&(int(2) * &eta)))
            + &g.v)
            + &g.z.scale(&(int(2) * &xi));
        // 2(X + zeta Z)^2 = 2X^2 + 2 zeta {X,Z} + 2 zeta^2 Z^2.
        assert_eq!(grouped, casimir_of(&g, &p));
    }

    #[test]
    fn subalgebras_hold() {
        for nmax in [2, 5, 8] {
            let r = check_subalgebras(&Params::reference(nmax), &frac(1, 13));
            assert!(r.all_passed(), "{r:?}");
        }
        let p = params(3, (1, 3), (1, 5), (0, 1));
        assert!(check_subalgebras(&p, &frac(-2, 9)).all_passed());
    }

    #[test]
    fn heun_patterns() {
        let p = Params::reference(6);
        let (h, ok) = heun_bidiagonal(&p, &int(0), &int(1), &int(0));
        assert!(ok);
        assert_eq!(h, build_z(&p));
        let (_, ok) = heun_bidiagonal(&p, &frac(1, 2), &frac(1, 3), &frac(1, 5));
        assert!(ok);
        let bad = heun_general(&p, [&frac(1, 2), &frac(1, 3), &frac(1, 7), &frac(-1, 5), &frac(1, 5)]);
        assert!(check_pattern(&bad, PatternSpec::LowerBidiagonal).is_some());
    }

    #[test]
    fn w_spectrum() {
        assert!(check_w_spectrum(&Params::reference(5), &frac(1, 13)).all_passed());
    }

    fn arb_params() -> impl Strategy<Value = Params> {
        let primes = prop::sample::select(vec![3i64, 5, 7, 11, 13]);
        (1usize..=8, -30i64..30, primes.clone(), -30i64..30, primes.clone(), -30i64..30, primes)
            .prop_map(|(n, a, pa, b, pb, z, pz)| Params::new(n, frac(a, pa), frac(b, pb), frac(z, pz)).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn relations_and_casimir(p in arb_params()) {
            prop_assert!(check_defining_relations(&p).all_passed());
            prop_assert!(check_casimir(&p).all_passed());
            prop_assert!(check_transposes(&p).all_passed());
        }

        #[test]
        fn heun_bidiagonal_any_coefficients(h0 in -9i64..9, h1 in -9i64..9, h4 in -9i64..9) {
            let p = Params::reference(4);
            let (_, ok) = heun_bidiagonal(&p, &int(h0), &int(h1), &frac(h4, 7));
            prop_assert!(ok);
        }
    }
}
