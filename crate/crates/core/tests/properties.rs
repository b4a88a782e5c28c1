use proptest::prelude::*;

use multieuler::counting::{alpha, alpha_hat, count_exact_descents, tau_set};
use multieuler::perm::{count_r, enumerate_x};
use multieuler::{
    eulerian_descent_poly, psi_forward, psi_inverse, Coeff, MultiaffinePoly, Perm, VarSet,
    VarWindow,
};

fn arb_perm(max_len: usize) -> impl Strategy<Value = Perm> {
    (1..=max_len)
        .prop_flat_map(|m| Just((1..=m).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|v| Perm::from_oneline(v).unwrap())
}

fn arb_subset(lo: usize, hi: usize) -> impl Strategy<Value = VarSet> {
    proptest::collection::vec(any::<bool>(), hi + 1 - lo).prop_map(move |bits| {
        VarSet::new(
            bits.iter()
                .enumerate()
                .filter(|(_, &b)| b)
                .map(|(i, _)| lo + i),
        )
        .unwrap()
    })
}

fn arb_poly() -> impl Strategy<Value = MultiaffinePoly> {
    (1usize..4, 0usize..5).prop_flat_map(|(lo, width)| {
        let hi = lo + width;
        proptest::collection::vec((arb_subset(lo, hi), -9i128..10), 1..12).prop_map(move |terms| {
            MultiaffinePoly::new(VarWindow::new(lo, hi).unwrap(), terms).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn reciprocal_is_an_involution(p in arb_poly(), c in 1i128..5) {
        let p = MultiaffinePoly::new(p.window(), p.terms().chain([(VarSet::EMPTY, c)])).unwrap();
        prop_assume!(p.coeff(VarSet::EMPTY) != 0);
        let r = p.reciprocal().unwrap();
        prop_assert_eq!(r.strict_vars(), p.strict_vars());
        prop_assert_eq!(r.reciprocal().unwrap(), p);
    }

    #[test]
    fn mirror_is_an_involution(p in arb_poly()) {
        let mut before: Vec<Coeff> = p.terms().map(|(_, c)| c).collect();
        let mut after: Vec<Coeff> = p.mirror().terms().map(|(_, c)| c).collect();
        before.sort();
        after.sort();
        prop_assert_eq!(before, after);
        prop_assert_eq!(p.mirror().mirror(), p);
    }

    #[test]
    fn collapse_of_reciprocal_reverses(p in arb_poly()) {
        prop_assume!(!p.is_zero());
        let mut c = p.collapse_to_univariate().unwrap();
        let r = p.reciprocal().unwrap().collapse_to_univariate().unwrap();
        c.resize(p.strict_vars().len() + 1, 0);
        c.reverse();
        let mut r = r;
        r.resize(c.len(), 0);
        prop_assert_eq!(r, c);
    }

    #[test]
    fn psi_round_trips_beyond_exhaustive_range(
        sigma in (9usize..=11).prop_flat_map(|m| Just((1..=m).collect::<Vec<_>>()).prop_shuffle())
    ) {
        let sigma = Perm::from_oneline(sigma).unwrap();
        let n = sigma.len() - 1;
        let out = psi_forward(&sigma).unwrap().output;
        prop_assert_eq!(psi_inverse(&out).unwrap(), sigma.clone());
        let expected = tau_set(n, VarSet::range(2, n + 1).unwrap().difference(sigma.descent_top_set())).unwrap();
        prop_assert_eq!(out.descent_top_set(), expected);
    }

    #[test]
    fn stats_count_every_adjacent_pair(sigma in arb_perm(12)) {
        let m = sigma.len();
        let st = sigma.stats();
        prop_assert_eq!(st.descent_tops.len() + st.ascent_tops.len(), m.saturating_sub(1));
        let window = VarSet::range(2, m.max(2)).unwrap();
        prop_assert!(st.descent_tops.is_subset(window));
        prop_assert!(st.ascent_tops.is_subset(window));
        prop_assert!(st.excedances.is_subset(window));
        prop_assert!(!st.descent_tops.contains(1));
    }

    #[test]
    fn within_counts_are_sums_of_exact_counts(x in arb_subset(2, 7)) {
        let total: Coeff = x.subsets().map(|s| count_exact_descents(s).unwrap()).sum();
        prop_assert_eq!(total, alpha_hat(x).unwrap());
        prop_assert_eq!(Coeff::from(enumerate_x(7, x).unwrap()), total);
    }

    #[test]
    fn shifting_tau_multiplies_by_size_plus_one(n in 1usize..20, seed in any::<u64>()) {
        let mask = seed & ((1u64 << n) - 1);
        let j = VarSet::new((0..n).filter(|b| mask >> b & 1 == 1).map(|b| b + 2)).unwrap();
        let next = alpha_hat(tau_set(n + 1, j).unwrap()).unwrap();
        let here = alpha_hat(tau_set(n, j).unwrap()).unwrap();
        prop_assert_eq!(next, (j.len() as Coeff + 1) * here);
    }

    #[test]
    fn gap_tuple_round_trips(x in arb_subset(2, 40)) {
        prop_assert_eq!(alpha(x).to_set().unwrap(), x);
    }

    #[test]
    fn exact_counts_do_not_depend_on_n(x in arb_subset(2, 5), extra in 0usize..3) {
        let k = x.max().map_or(1, |m| m - 1).max(1) + extra;
        prop_assert_eq!(Coeff::from(count_r(k, x).unwrap()), count_exact_descents(x).unwrap());
    }
}

#[test]
fn coefficient_sums_are_factorials() {
    let mut f: Coeff = 1;
    for n in 1..=9 {
        f *= n as Coeff + 1;
        assert_eq!(
            eulerian_descent_poly(n).unwrap().coefficient_sum().unwrap(),
            f
        );
    }
}
