//! The descent-top transporting bijection behind the mirror symmetry of
//! `A_n`.
//!
//! For `σ ∈ S_{n+1}` with `1` at position `k`:
//!
//! 1. lift: append `n+2`, which keeps the descent-top set;
//! 2. rearrange around the cut through `1` into
//!    `(σ_{k+1} … σ_{n+1}, n+2, σ_1 … σ_{k-1}, 1)`, adding only `n+2` as a descent top;
//! 3. apply `τ_n(i) = n+3-i` entrywise, turning descents into ascents and
//!    leaving `n+2` at the end;
//! 4. drop that trailing `n+2`.
//!
//! The result has descent-top set `τ_n([2, n+1] ∖ DT(σ))`.

use serde::Serialize;

use crate::counting::tau_set;
use crate::error::{check_cap, Error, Result};
use crate::eulerian::eulerian_descent_poly;
use crate::perm::{fold_partitions, Perm};
use crate::poly::Coeff;
use crate::report::{Chain, Identity, IdentityReport};
use crate::varset::{VarSet, MAX_INDEX};

/// Largest `n` for exhaustive theorem verification.
pub const MAX_VERIFY_N: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BijectionTrace {
    /// 1-based position of `1` in the input.
    pub k: usize,
    pub input: Perm,
    pub lifted: Perm,
    pub rearranged: Perm,
    pub tau_applied: Perm,
    pub output: Perm,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InverseTrace {
    pub input: Perm,
    pub lifted: Perm,
    pub tau_applied: Perm,
    pub output: Perm,
}

fn check_len(p: &Perm) -> Result<usize> {
    check_cap("permutation length", p.len(), 1, MAX_INDEX - 1)?;
    Ok(p.len())
}

fn tau_entries(values: &[usize], top: usize) -> Vec<usize> {
    values.iter().map(|&v| top + 1 - v).collect()
}

/// `σ ↦ (σ, n+2)` from `S_{n+1}` into `S_{n+2}`.
pub fn lift(sigma: &Perm) -> Perm {
    let mut values = sigma.oneline().to_vec();
    values.push(sigma.len() + 1);
    Perm::from_oneline_unchecked(values)
}

pub fn psi_forward(sigma: &Perm) -> Result<BijectionTrace> {
    let m = check_len(sigma)?;
    let top = m + 1;
    let lifted = lift(sigma);
    let k = sigma.position(1).expect("valid permutation contains 1");
    let v = sigma.oneline();

    let mut rearranged = Vec::with_capacity(top);
    rearranged.extend_from_slice(&v[k..]);
    rearranged.push(top);
    rearranged.extend_from_slice(&v[..k - 1]);
    rearranged.push(1);

    let tau_applied = tau_entries(&rearranged, top);
    let output = tau_applied[..m].to_vec();
    Ok(BijectionTrace {
        k,
        input: sigma.clone(),
        lifted,
        rearranged: Perm::from_oneline_unchecked(rearranged),
        tau_applied: Perm::from_oneline_unchecked(tau_applied),
        output: Perm::from_oneline_unchecked(output),
    })
}

/// Inverse built directly from the shape `(b…, n+2, a…, 1)` of
/// `τ_n(μ, n+2)`; returns `(a…, 1, b…)`.
pub fn psi_inverse_trace(mu: &Perm) -> Result<InverseTrace> {
    let m = check_len(mu)?;
    let top = m + 1;
    let lifted = lift(mu);
    let tau_applied = tau_entries(lifted.oneline(), top);
    if tau_applied.last() != Some(&1) {
        return Err(Error::Internal(format!(
            "inverse of {mu}: τ image does not end in 1"
        )));
    }
    let split = tau_applied
        .iter()
        .position(|&v| v == top)
        .ok_or_else(|| Error::Internal(format!("inverse of {mu}: {top} missing")))?;
    let mut output = Vec::with_capacity(m);
    output.extend_from_slice(&tau_applied[split + 1..]);
    output.extend_from_slice(&tau_applied[..split]);
    Ok(InverseTrace {
        input: mu.clone(),
        lifted,
        tau_applied: Perm::from_oneline_unchecked(tau_applied),
        output: Perm::from_oneline_unchecked(output),
    })
}

pub fn psi_inverse(mu: &Perm) -> Result<Perm> {
    Ok(psi_inverse_trace(mu)?.output)
}

/// Lexicographic rank of a permutation of `[m]`.
fn rank(p: &Perm) -> usize {
    let v = p.oneline();
    let m = v.len();
    let mut r = 0;
    for i in 0..m {
        let smaller_after = v[i + 1..].iter().filter(|&&x| x < v[i]).count();
        r = r * (m - i) + smaller_after;
    }
    r
}

#[derive(Default)]
struct Tally {
    visited: u64,
    lift_ok: u64,
    middle_ok: u64,
    transport_ok: u64,
    round_trips: u64,
    images: Vec<u32>,
    /// Indexed by `DT(σ).bits() >> 2`: count, and count whose image lands in `R(τ(K))`.
    by_descent_tops: Vec<[u64; 2]>,
    witness: Option<String>,
}

/// Exhaustively checks, over `S_{n+1}`, that the bijection is one, that it
/// transports descent-top sets as claimed, and that the coefficients of
/// `rec(A_n)` and `A_n(mirror(x))` agree subset by subset.
pub fn verify_theorem(n: usize) -> Result<IdentityReport> {
    check_cap("n", n, 1, MAX_VERIFY_N)?;
    let m = n + 1;
    let window = VarSet::range(2, m)?;
    let top = VarSet::singleton(m + 1)?;
    let size = 1usize << n;

    let parts = fold_partitions(
        m,
        || Tally {
            by_descent_tops: vec![[0; 2]; size],
            ..Tally::default()
        },
        |t, sigma| {
            t.visited += 1;
            let dt = sigma.descent_top_set();
            let mut problem: Option<String> = None;
            let mut fail = |what: &str| {
                problem.get_or_insert_with(|| format!("σ = {sigma}: {what}"));
            };
            match psi_forward(sigma) {
                Ok(trace) => {
                    if trace.lifted.descent_top_set() == dt && trace.lifted.at(m + 1) == m + 1 {
                        t.lift_ok += 1;
                    } else {
                        fail("lift changed the descent-top set");
                    }
                    if trace.rearranged.descent_top_set() == dt.union(top)
                        && trace.rearranged.at(m + 1) == 1
                    {
                        t.middle_ok += 1;
                    } else {
                        fail("middle stage is not DT(σ) ∪ {n+2} ending in 1");
                    }
                    let expected = tau_set(n, window.difference(dt)).expect("τ_n on [2, n+1]");
                    let transported = trace.output.descent_top_set() == expected
                        && trace.tau_applied.at(m + 1) == m + 1;
                    if transported {
                        t.transport_ok += 1;
                    } else {
                        fail("descent-top transport law violated");
                    }
                    match psi_inverse(&trace.output) {
                        Ok(back) if &back == sigma => t.round_trips += 1,
                        _ => fail("inverse does not round-trip"),
                    }
                    t.images.push(rank(&trace.output) as u32);
                    let slot = &mut t.by_descent_tops[(dt.bits() >> 2) as usize];
                    slot[0] += 1;
                    slot[1] += u64::from(transported);
                }
                Err(e) => fail(&e.to_string()),
            }
            if t.witness.is_none() {
                t.witness = problem;
            }
        },
    )?;

    let mut total = Tally {
        by_descent_tops: vec![[0; 2]; size],
        ..Tally::default()
    };
    let mut seen = vec![false; (1..=m).product()];
    let mut distinct = 0u64;
    for part in parts {
        total.visited += part.visited;
        total.lift_ok += part.lift_ok;
        total.middle_ok += part.middle_ok;
        total.transport_ok += part.transport_ok;
        total.round_trips += part.round_trips;
        for r in part.images {
            if !std::mem::replace(&mut seen[r as usize], true) {
                distinct += 1;
            }
        }
        for (a, b) in total.by_descent_tops.iter_mut().zip(part.by_descent_tops) {
            a[0] += b[0];
            a[1] += b[1];
        }
        total.witness = total.witness.or(part.witness);
    }

    let c = Coeff::from;
    let mut chains = vec![Chain::new("bijection")
        .with("|S_{n+1}|", (1..=m as Coeff).product())
        .with("permutations visited", c(total.visited))
        .with("distinct images", c(distinct))
        .with("lift keeps DT", c(total.lift_ok))
        .with("middle stage DT ∪ {n+2}, ends in 1", c(total.middle_ok))
        .with("DT(ψ(σ)) = τ_n([2,n+1] ∖ DT(σ))", c(total.transport_ok))
        .with("ψ⁻¹(ψ(σ)) = σ", c(total.round_trips))];

    let a_n = eulerian_descent_poly(n)?;
    let rec = a_n.reciprocal()?;
    let mirrored = a_n.mirror();
    let mirror_ok = a_n.is_mirrorpalindromic()?;
    chains.push(
        Chain::new("mirrorpalindromic")
            .with("rec(A_n) = A_n(mirror(x))", Coeff::from(mirror_ok))
            .with("expected", 1),
    );

    let count_of = |s: VarSet| c(total.by_descent_tops[(s.bits() >> 2) as usize][0]);
    for k in window.subsets() {
        let l = window.difference(k);
        let tk = tau_set(n, k)?;
        chains.push(
            Chain::new(format!("K={k}"))
                .with("coeff(x^K, rec(A_n))", rec.coeff(k))
                .with("coeff(x^K, A_n(mirror(x)))", mirrored.coeff(k))
                .with("|R([2,n+1] ∖ K)|", count_of(l))
                .with("|R(τ(K))|", count_of(tk))
                .with(
                    "|ψ(R([2,n+1] ∖ K)) ∩ R(τ(K))|",
                    c(total.by_descent_tops[(l.bits() >> 2) as usize][1]),
                ),
        );
    }

    Ok(IdentityReport::new(Identity::Theorem, n, None, chains).with_witness(total.witness))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Perm {
        Perm::from_oneline(v.to_vec()).unwrap()
    }

    #[test]
    fn lift_appends_maximum() {
        assert_eq!(lift(&p(&[2, 1, 3])), p(&[2, 1, 3, 4]));
        assert_eq!(lift(&p(&[1])), p(&[1, 2]));
        assert_eq!(
            lift(&p(&[2, 1, 3])).descent_top_set(),
            p(&[2, 1, 3]).descent_top_set()
        );
    }

    #[test]
    fn forward_hand_traces() {
        let t = psi_forward(&p(&[2, 1, 3])).unwrap();
        assert_eq!(t.k, 2);
        assert_eq!(t.rearranged, p(&[3, 4, 2, 1]));
        assert_eq!(t.tau_applied, p(&[2, 1, 3, 4]));
        assert_eq!(t.output, p(&[2, 1, 3]));

        let t = psi_forward(&p(&[1, 2, 3])).unwrap();
        assert_eq!(t.k, 1);
        assert_eq!(t.rearranged, p(&[2, 3, 4, 1]));
        assert_eq!(t.tau_applied, p(&[3, 2, 1, 4]));
        assert_eq!(t.output, p(&[3, 2, 1]));

        let t = psi_forward(&p(&[3, 2, 1])).unwrap();
        assert_eq!(t.k, 3);
        assert_eq!(t.rearranged, p(&[4, 3, 2, 1]));
        assert_eq!(t.tau_applied, p(&[1, 2, 3, 4]));
        assert_eq!(t.output, p(&[1, 2, 3]));
    }

    #[test]
    fn inverse_hand_traces() {
        assert_eq!(psi_inverse(&p(&[3, 2, 1])).unwrap(), p(&[1, 2, 3]));
        assert_eq!(psi_inverse(&p(&[2, 1, 3])).unwrap(), p(&[2, 1, 3]));
        assert_eq!(psi_inverse(&p(&[1, 2, 3])).unwrap(), p(&[3, 2, 1]));
    }

    #[test]
    fn rejects_empty() {
        assert!(psi_forward(&p(&[])).is_err());
        assert!(psi_inverse(&p(&[])).is_err());
    }

    #[test]
    fn ranks_are_lexicographic() {
        let mut expected = 0;
        crate::perm::for_each_perm(4, |q| {
            assert_eq!(rank(q), expected);
            expected += 1;
        })
        .unwrap();
    }

    #[test]
    fn theorem_small() {
        let r = verify_theorem(1).unwrap();
        assert!(r.pass, "{:?}", r.witness);
        let r = verify_theorem(2).unwrap();
        assert!(r.pass, "{:?}", r.witness);
        let k3 = r.chains.iter().find(|c| c.name == "K={3}").unwrap();
        assert!(k3.expressions.iter().all(|e| e.value == 1));
        assert!(verify_theorem(9).is_err());
    }
}
