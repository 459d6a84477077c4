//! Concrete curves: Weil numbers from point counts, and point counts from the
//! polynomials.

use census_core::census::count_points;
use census_core::zeta::weil_from_counts;
use census_core::Sequential;

#[test]
fn weil_numbers_reproduce_counts() {
    for (q, counts) in [(2u64, vec![3i64]), (5, vec![8]), (3, vec![5, 17])] {
        let c = weil_from_counts(q, &counts).unwrap();
        for (l, n) in counts.iter().enumerate() {
            assert!((c.count_over(l as u32 + 1) - *n as f64).abs() < 1e-6, "q={q} {counts:?}");
        }
        for w in &c.weil {
            assert!((w.norm() - (q as f64).sqrt()).abs() < 1e-6);
        }
    }
}

#[test]
fn non_weil_counts_are_rejected() {
    assert_eq!(weil_from_counts(2, &[10]).unwrap_err().name(), "NotWeil");
    assert_eq!(weil_from_counts(3, &[5, 0]).unwrap_err().name(), "NotWeil");
}

/// Atiyah: coprime indecomposables on an elliptic curve are parametrized by its points.
#[test]
fn elliptic_coprime_counts_equal_points() {
    for (q, n1) in [(2u64, 3i64), (3, 4), (5, 8)] {
        let e = weil_from_counts(q, &[n1]).unwrap();
        for (r, d) in [(1u32, 0i64), (2, 1), (3, 1), (3, 2)] {
            let c = count_points(&e, r, d, &Sequential).unwrap();
            assert_eq!(c.indecomposables, n1 as i128);
            assert_eq!(c.higgs_points, Some(q as i128 * n1 as i128));
        }
    }
}

#[test]
fn genus_two_jacobian() {
    // Weil pairs with traces 1 and -2 over F_3: |Jac| = (1 - 1 + 3)(1 + 2 + 3)
    let c = weil_from_counts(3, &[5, 17]).unwrap();
    let n = count_points(&c, 1, 0, &Sequential).unwrap();
    assert_eq!(n.indecomposables, 18);
    assert_eq!(n.higgs_points, Some(9 * 18));
    let two = count_points(&c, 2, 1, &Sequential).unwrap();
    assert!(two.indecomposables > 0);
    assert_eq!(two.higgs_points, Some(3i128.pow(5) * two.indecomposables));
    assert_eq!(count_points(&c, 2, 0, &Sequential).unwrap().higgs_points, None);
}
