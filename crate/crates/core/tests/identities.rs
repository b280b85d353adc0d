use metaracah::eigenbases::build_basis;
use metaracah::racahpoly::{racah, RacahOverlaps, RacahParams};
use metaracah::rational::{frac, int};
use metaracah::rationalfns::{cal_u, RationalOverlaps};
use metaracah::{run_suites, BasisLabel, FParams, Generators, Params, Suite, SweepGenerator};

#[test]
fn every_suite_passes_at_reference_points() {
    for nmax in 1..=5 {
        let r = run_suites(&Suite::ALL, &Params::reference(nmax), &FParams::reference(), 0, 0).unwrap();
        assert!(r.all_passed(), "N={nmax}: {:?}", r.failures().collect::<Vec<_>>());
    }
}

#[test]
fn every_suite_passes_on_a_sweep() {
    let r = run_suites(&Suite::ALL, &Params::reference(4), &FParams::reference(), 2024, 4).unwrap();
    assert!(r.all_passed(), "{:?}", r.failures().collect::<Vec<_>>());
}

#[test]
fn overlaps_are_dot_products_of_public_bases() {
    let (p, fp) = (Params::reference(4), FParams::reference());
    let e = build_basis(&p, &fp, BasisLabel::E).unwrap().vectors;
    let fs = build_basis(&p, &fp, BasisLabel::FStar).unwrap().vectors;
    let o = RacahOverlaps::new(&p, &fp).unwrap();
    let u = RationalOverlaps::new(&p).unwrap();
    let ds = build_basis(&p, &fp, BasisLabel::DStar).unwrap().vectors;
    assert_eq!(o.s_tilde.rows(), 5);
    assert_eq!(u.u, &e.transpose() * &ds);
    assert!(!fs.is_zero());
}

#[test]
fn frozen_special_values() {
    // Independent fraction-arithmetic evaluations of the defining series.
    let rp = RacahParams::new(&Params::reference(4), &FParams::reference());
    assert_eq!(racah(1, 1, &rp).unwrap(), frac(847, 897));
    assert_eq!(cal_u(1, 1, &Params::reference(4)).unwrap(), frac(3977, 3887));
}

#[test]
fn generators_scale_with_the_representation() {
    let mut g = SweepGenerator::new(77);
    for nmax in [1, 6, 11] {
        for (p, _) in g.generic_sets(nmax, 3) {
            let gens = Generators::new(&p);
            assert_eq!(gens.z.rows(), nmax + 1);
            assert_eq!(gens.z[(0, 0)], -p.alpha.clone());
            assert_eq!(gens.z[(1, 0)], int(1));
        }
    }
}
