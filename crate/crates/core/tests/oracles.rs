//! Values frozen from an independent brute-force scan (itertools-style
//! permutation listing, descent tops read directly off one-line notation).

use multieuler::counting::count_exact_descents;
use multieuler::json::poly_to_json;
use multieuler::{eulerian_descent_poly, psi_forward, Perm, VarSet};

fn s(v: &[usize]) -> VarSet {
    VarSet::new(v.iter().copied()).unwrap()
}

#[test]
fn a3_matches_frozen_scan() {
    let a3 = eulerian_descent_poly(3).unwrap();
    assert_eq!(
        a3.to_string(),
        "1 + x2 + 3*x3 + 7*x4 + x2*x3 + 3*x2*x4 + 7*x3*x4 + x2*x3*x4"
    );
    assert_eq!(
        poly_to_json(&a3),
        r#"{"window":[2,4],"terms":[{"vars":[],"coeff":1},{"vars":[2],"coeff":1},{"vars":[3],"coeff":3},{"vars":[4],"coeff":7},{"vars":[2,3],"coeff":1},{"vars":[2,4],"coeff":3},{"vars":[3,4],"coeff":7},{"vars":[2,3,4],"coeff":1}]}"#
    );
}

#[test]
fn two_element_descent_sets_in_s5() {
    let frozen = [
        (&[2, 3][..], 1),
        (&[2, 4], 3),
        (&[2, 5], 7),
        (&[3, 4], 7),
        (&[3, 5], 17),
        (&[4, 5], 31),
    ];
    let a4 = eulerian_descent_poly(4).unwrap();
    for (x, want) in frozen {
        assert_eq!(a4.coeff(s(x)), want, "{x:?}");
        assert_eq!(count_exact_descents(s(x)).unwrap(), want, "{x:?}");
    }
}

#[test]
fn hand_traced_bijection() {
    let trace = |v: &[usize]| psi_forward(&Perm::from_oneline(v.to_vec()).unwrap()).unwrap();
    let t = trace(&[1, 2, 3]);
    assert_eq!(t.output.to_string(), "3 2 1");
    assert_eq!(t.rearranged.to_string(), "2 3 4 1");
    let t = trace(&[2, 1, 3]);
    assert_eq!(t.lifted.to_string(), "2 1 3 4");
    assert_eq!(t.rearranged.to_string(), "3 4 2 1");
    assert_eq!(t.tau_applied.to_string(), "2 1 3 4");
    assert_eq!(t.output.to_string(), "2 1 3");
}

#[test]
fn theorem_reports_pass_through_the_cap() {
    let reports = multieuler::sweep(1, 8, multieuler::Selector::Theorem).unwrap();
    assert_eq!(reports.len(), 8);
    for r in reports {
        assert!(r.pass, "n = {}: {:?}", r.n, r.witness);
        assert!(r.chains.iter().any(|c| c.name == "mirrorpalindromic"));
    }
}
