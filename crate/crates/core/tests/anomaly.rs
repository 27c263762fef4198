use gvbps_core::anomaly::{
    genus_series_n1, seed, solve_anomaly, tabulated_solutions, tabulated_solutions_rescaled,
    triple_product_check, triple_product_sides, verify_anomaly, GradedPoly, Known, ZFunction,
};
use gvbps_core::modular::eisenstein;
use gvbps_core::rational::{int, rat};
use gvbps_core::series::eta_product;
use gvbps_core::trig::two_minus_two_cos_over_x;
use gvbps_core::Error;

fn known(table: &[ZFunction]) -> Known {
    let mut k: Known = table.iter().map(|z| ((z.g, z.n), z.poly.clone())).collect();
    k.insert((0, 1), seed());
    k
}

#[test]
fn rescaled_table_satisfies_recursion() {
    let r = verify_anomaly(&tabulated_solutions_rescaled());
    assert_eq!(r.literal_passes(), 7);
    assert!(r.all_pass());
    assert_eq!(r.normalization[&1], Some(int(1)));
    assert_eq!(r.normalization[&2], Some(int(1)));
}

#[test]
fn verbatim_table_has_two_misnormalized_entries() {
    let r = verify_anomaly(&tabulated_solutions());
    let failing: Vec<_> = r
        .literal
        .iter()
        .filter(|e| !e.passed())
        .map(|e| (e.n, e.g))
        .collect();
    // Z_{2,1} and Z_{1,2} fail only through their rhs dependence on the two bad entries.
    assert!(failing.contains(&(1, 1)) && failing.contains(&(2, 0)));
    assert_eq!(r.normalization[&1], None);
    assert!(!r.all_pass());
    let scales: Vec<_> = r
        .entry_scales
        .iter()
        .map(|(k, s)| (*k, s.clone()))
        .collect();
    assert_eq!(
        scales,
        vec![
            ((1, 1), Some(rat(1, 12))),
            ((1, 2), Some(int(1))),
            ((1, 3), Some(int(1))),
            ((2, 0), Some(rat(1, 24))),
            ((2, 1), Some(int(1))),
            ((2, 2), Some(int(1))),
            ((2, 3), Some(int(1))),
        ]
    );
}

#[test]
fn weights_are_declared() {
    let expected = [6, 8, 10, 10, 12, 14, 16];
    for (z, w) in tabulated_solutions().iter().zip(expected) {
        assert_eq!(z.poly.weight(), w);
        assert!(z
            .poly
            .terms()
            .all(|(&(a, b, c), _)| 2 * a + 4 * b + 6 * c == w));
    }
}

#[test]
fn solver_bootstraps_every_entry() {
    let table = tabulated_solutions_rescaled();
    let k = known(&table);
    for z in &table {
        let dim = GradedPoly::e2_free_basis(z.poly.weight()).len();
        let boundary = z.realize(dim + 1).coeffs().to_vec();
        let solved = solve_anomaly(z.n, z.g, &k, &boundary).unwrap();
        assert_eq!(solved, z.poly, "(n, g) = ({}, {})", z.n, z.g);
        assert_eq!(solved.weight(), z.poly.weight());
    }
}

#[test]
fn solver_reproduces_seed() {
    let boundary = eisenstein(4, 2).unwrap().mul(&eta_product(-12, 2));
    let p = solve_anomaly(1, 0, &Known::new(), boundary.coeffs()).unwrap();
    assert_eq!(p, GradedPoly::e4());
}

#[test]
fn solver_rejects_verbatim_entries() {
    let table = tabulated_solutions();
    let k = known(&tabulated_solutions_rescaled());
    for (n, g) in [(1, 1), (2, 0)] {
        let z = table.iter().find(|z| (z.n, z.g) == (n, g)).unwrap();
        let boundary = z.realize(3).coeffs().to_vec();
        assert!(matches!(
            solve_anomaly(n, g, &k, &boundary),
            Err(Error::InconsistentBoundary(_))
        ));
    }
}

#[test]
fn resummation_matches_rescaled_table() {
    let series = genus_series_n1(3, 12);
    let z01 = ZFunction::new(1, 0, seed()).unwrap();
    assert_eq!(series[0], z01.realize(12));
    assert_eq!(&series[0].coeffs()[..3], &[int(1), int(252), int(5130)]);
    let table = tabulated_solutions_rescaled();
    for (g, resummed) in series.iter().enumerate().skip(1) {
        let z = table.iter().find(|z| (z.n, z.g) == (1, g)).unwrap();
        assert_eq!(*resummed, z.realize(12), "g = {g}");
    }
    // verbatim Z_{1,1} is 12 times the resummed one
    assert_eq!(
        series[1].scale(&int(12)),
        tabulated_solutions()[0].realize(12)
    );
}

#[test]
fn triple_product_identity() {
    let r = triple_product_check(10, 6).unwrap();
    assert!(r.passed(), "{:?}", r.first_difference);
}

#[test]
fn triple_product_constant_slice() {
    let (lhs, _) = triple_product_sides(10, 0).unwrap();
    let expected = two_minus_two_cos_over_x(5).inv().unwrap();
    for m in 0..=5 {
        assert_eq!(lhs.coeff(m, 0), expected.coeff(m));
    }
}
