//! Closed-form counts of permutations by descent-top set.
//!
//! For `X = {x1 < … < xk}`, the gap tuple is `α(X) = (x1-1, x2-x1, …, xk-x(k-1))`
//! and the hat-factorial of a `k`-tuple `β` is `(k+1)^β1 · k^β2 ⋯ 2^βk`.
//! The number of permutations of `[m]` whose descent tops all lie in `X` is
//! `α(X)!̂`, and Möbius inversion over the subset lattice gives the exact
//! counts `|R(n, X)|`.

use std::fmt;

use serde::Serialize;

use crate::error::{check_cap, Error, Result};
use crate::perm::{check_subset, count_r, MAX_ENUMERATION};
use crate::poly::Coeff;
use crate::varset::{VarSet, MAX_INDEX};

/// Consecutive gaps of an ordered set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct GapTuple(Vec<usize>);

impl GapTuple {
    pub fn new(entries: Vec<usize>) -> Self {
        GapTuple(entries)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Inverse of [`alpha`]: prefix sums, shifted by one.
    pub fn to_set(&self) -> Result<VarSet> {
        let mut acc = 1usize;
        let mut set = VarSet::EMPTY;
        for &gap in &self.0 {
            acc = acc.checked_add(gap).ok_or(Error::BadIndex(usize::MAX))?;
            if set.contains(acc) {
                return Err(Error::Internal(format!("gap tuple {self} has a zero gap")));
            }
            set.insert(acc)?;
        }
        Ok(set)
    }
}

impl fmt::Display for GapTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (k, v) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

pub fn alpha(x: VarSet) -> GapTuple {
    let mut prev = 1;
    GapTuple(
        x.iter()
            .map(|xi| {
                let gap = xi - prev;
                prev = xi;
                gap
            })
            .collect(),
    )
}

pub fn hat_factorial(beta: &GapTuple) -> Result<Coeff> {
    let k = beta.len();
    beta.entries()
        .iter()
        .enumerate()
        .try_fold(1 as Coeff, |acc, (i, &e)| {
            let base = (k + 1 - i) as Coeff;
            let exp = u32::try_from(e).map_err(|_| Error::Overflow("hat-factorial"))?;
            base.checked_pow(exp)
                .and_then(|p| acc.checked_mul(p))
                .ok_or(Error::Overflow("hat-factorial"))
        })
}

/// `α(X)!̂`, which is used in place of a lookup in many identities.
pub fn alpha_hat(x: VarSet) -> Result<Coeff> {
    hat_factorial(&alpha(x))
}

/// `(-1)^e`.
pub fn neg_one_pow(e: i64) -> Coeff {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `|X(S_m)| = α(X)!̂` for `X ⊆ [2, m]`.
pub fn count_descents_within(m: usize, x: VarSet) -> Result<Coeff> {
    check_cap("m", m, 1, MAX_INDEX)?;
    check_subset(x, 2, m)?;
    alpha_hat(x)
}

/// `|R(k, X)| = Σ_{J ⊆ X} (-1)^{|X∖J|} α(J)!̂`, valid for every `k >= max(X) - 1`.
pub fn count_exact_descents(x: VarSet) -> Result<Coeff> {
    check_subset(x, 2, MAX_INDEX)?;
    let mut total: Coeff = 0;
    for j in x.subsets() {
        let term = neg_one_pow(x.difference(j).len() as i64) * alpha_hat(j)?;
        total = total
            .checked_add(term)
            .ok_or(Error::Overflow("inclusion-exclusion sum"))?;
    }
    if total < 0 {
        return Err(Error::Internal(format!(
            "inclusion-exclusion for {x} produced negative count {total}"
        )));
    }
    Ok(total)
}

/// `τ_s(i) = s + 3 - i`, the order-reversing involution of `[s+2]`.
pub fn tau(s: usize, i: usize) -> Result<usize> {
    check_cap("s + 2", s + 2, 1, MAX_INDEX)?;
    if i == 0 || i > s + 2 {
        return Err(Error::ValueOutOfRange {
            value: i,
            len: s + 2,
        });
    }
    Ok(s + 3 - i)
}

pub fn tau_set(s: usize, x: VarSet) -> Result<VarSet> {
    check_cap("s + 2", s + 2, 1, MAX_INDEX)?;
    check_subset(x, 1, s + 2)?;
    x.map(|i| s + 3 - i)
}

/// Smallest `k` for which `R(k, X)` is meaningful.
pub fn min_stable_k(x: VarSet) -> usize {
    x.max().map_or(0, |m| m - 1)
}

/// Checks that the enumerated `|R(k, X)|` equals [`count_exact_descents`] for
/// every `k` in `[k_lo, k_hi]`.
pub fn n_stability_check(x: VarSet, k_lo: usize, k_hi: usize) -> Result<bool> {
    check_subset(x, 2, MAX_INDEX)?;
    check_cap("k_lo", k_lo, min_stable_k(x), k_hi)?;
    check_cap("k_hi", k_hi, k_lo, MAX_ENUMERATION - 1)?;
    let formula = count_exact_descents(x)?;
    for k in k_lo..=k_hi {
        if Coeff::from(count_r(k, x)?) != formula {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[usize]) -> VarSet {
        VarSet::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn alpha_cases() {
        assert_eq!(alpha(s(&[3])), GapTuple::new(vec![2]));
        assert_eq!(alpha(s(&[2, 3])), GapTuple::new(vec![1, 1]));
        assert_eq!(alpha(s(&[])), GapTuple::new(vec![]));
        assert_eq!(alpha(s(&[2, 5, 6])).to_string(), "(1,3,1)");
    }

    #[test]
    fn alpha_inverse() {
        for x in VarSet::range(2, 9).unwrap().subsets() {
            assert_eq!(alpha(x).to_set().unwrap(), x);
        }
        assert!(GapTuple::new(vec![1, 0]).to_set().is_err());
    }

    #[test]
    fn hat_factorial_cases() {
        assert_eq!(hat_factorial(&GapTuple::new(vec![2])).unwrap(), 4);
        assert_eq!(hat_factorial(&GapTuple::new(vec![1, 1])).unwrap(), 6);
        assert_eq!(hat_factorial(&GapTuple::new(vec![])).unwrap(), 1);
        assert_eq!(hat_factorial(&GapTuple::new(vec![1, 2, 0])).unwrap(), 4 * 9);
        assert!(matches!(
            hat_factorial(&GapTuple::new(vec![200])),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn within_cases() {
        assert_eq!(count_descents_within(3, s(&[3])).unwrap(), 4);
        assert_eq!(count_descents_within(3, s(&[2, 3])).unwrap(), 6);
        assert_eq!(count_descents_within(3, s(&[])).unwrap(), 1);
        assert!(count_descents_within(3, s(&[4])).is_err());
    }

    #[test]
    fn exact_cases() {
        assert_eq!(count_exact_descents(s(&[3])).unwrap(), 3);
        assert_eq!(count_exact_descents(s(&[])).unwrap(), 1);
        assert_eq!(count_exact_descents(s(&[2, 3])).unwrap(), 1);
        assert!(count_exact_descents(s(&[1, 3])).is_err());
    }

    #[test]
    fn tau_cases() {
        assert_eq!(tau(2, 3).unwrap(), 2);
        assert_eq!(tau(5, 1).unwrap(), 7);
        assert_eq!(tau(5, 7).unwrap(), 1);
        assert!(tau(2, 5).is_err());
        assert!(tau(2, 0).is_err());
        let x = s(&[1, 3, 4]);
        assert_eq!(tau_set(4, x).unwrap(), s(&[3, 4, 6]));
        assert_eq!(tau_set(4, tau_set(4, x).unwrap()).unwrap(), x);
        assert!(tau_set(2, s(&[5])).is_err());
    }

    #[test]
    fn stability_cases() {
        assert!(n_stability_check(s(&[3]), 2, 5).unwrap());
        assert!(n_stability_check(s(&[]), 1, 6).unwrap());
        assert!(n_stability_check(s(&[2, 4]), 3, 6).unwrap());
        assert!(n_stability_check(s(&[3]), 1, 5).is_err());
        assert!(n_stability_check(s(&[3]), 2, 12).is_err());
        assert!(n_stability_check(s(&[3]), 5, 4).is_err());
    }

    #[test]
    fn signs() {
        assert_eq!(neg_one_pow(0), 1);
        assert_eq!(neg_one_pow(3), -1);
        assert_eq!(neg_one_pow(-1), -1);
        assert_eq!(neg_one_pow(-2), 1);
    }
}
