//! Exact verifiers for the counting identities that follow from the mirror
//! symmetry of `A_n`.
//!
//! Every displayed form of an identity is evaluated on its own, with the
//! sign exponent computed exactly as written, so that a slip in any single
//! form shows up as a broken chain. Where `S_{n+1}` is small enough, the
//! chains also carry the enumerated counts they are supposed to equal.

use std::str::FromStr;
use std::sync::OnceLock;

use rayon::prelude::*;

use crate::bijection::{verify_theorem, MAX_VERIFY_N};
use crate::counting::{alpha_hat, count_exact_descents, neg_one_pow, tau_set};
use crate::error::{check_cap, Error, Result};
use crate::eulerian::{eulerian_descent_poly, eulerian_excedance_poly};
use crate::perm::{check_subset, enumerate_r_exc, statistic_histogram, Perm, MAX_ENUMERATION};
use crate::poly::Coeff;
use crate::report::{Chain, Identity, IdentityReport};
use crate::varset::VarSet;

/// Largest `n` for the formula side of the corollary checks.
pub const MAX_FORMULA_N: usize = 10;

/// Largest symmetric group order used for enumeration cross-checks.
pub const MAX_CROSS_CHECK_M: usize = 9;

/// Which identities a sweep runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selector {
    Theorem,
    Combinatorial,
    Sequential,
    Reordering,
    Excedance,
    All,
}

impl Selector {
    fn includes(self, id: Identity) -> bool {
        matches!(
            (self, id),
            (Selector::All, _)
                | (Selector::Theorem, Identity::Theorem)
                | (Selector::Combinatorial, Identity::CombinatorialSums)
                | (Selector::Sequential, Identity::SequentialSums)
                | (Selector::Reordering, Identity::ReorderingSums)
                | (Selector::Excedance, Identity::ExcedanceEquivalence)
        )
    }

    /// Largest `n` any selected identity supports.
    pub fn max_n(self) -> usize {
        match self {
            Selector::Theorem | Selector::Excedance | Selector::All => MAX_VERIFY_N,
            _ => MAX_FORMULA_N,
        }
    }
}

impl FromStr for Selector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "theorem" => Selector::Theorem,
            "combinatorial" => Selector::Combinatorial,
            "sequential" => Selector::Sequential,
            "reordering" => Selector::Reordering,
            "excedance" => Selector::Excedance,
            "all" => Selector::All,
            _ => return Err(Error::Parse(format!("unknown identity selector {s:?}"))),
        })
    }
}

/// Descent-top histograms of `S_m`, computed on first use.
struct Enumerations {
    histograms: [OnceLock<Vec<u64>>; MAX_ENUMERATION + 1],
}

impl Enumerations {
    fn new() -> Self {
        Enumerations {
            histograms: std::array::from_fn(|_| OnceLock::new()),
        }
    }

    /// `|R(n, S)|` by enumeration, if `S_{n+1}` is within the cross-check bound.
    fn exact(&self, n: usize, s: VarSet) -> Result<Option<Coeff>> {
        let m = n + 1;
        if m > MAX_CROSS_CHECK_M {
            return Ok(None);
        }
        check_subset(s, 2, m)?;
        let hist = match self.histograms[m].get() {
            Some(h) => h,
            None => {
                let h = statistic_histogram(m, Perm::descent_top_set)?;
                self.histograms[m].get_or_init(|| h)
            }
        };
        Ok(Some(Coeff::from(hist[(s.bits() >> 2) as usize])))
    }
}

fn sum_over<F>(domain: VarSet, mut term: F) -> Result<Coeff>
where
    F: FnMut(VarSet) -> Result<Coeff>,
{
    domain.subsets().try_fold(0 as Coeff, |acc, j| {
        acc.checked_add(term(j)?)
            .ok_or(Error::Overflow("identity sum"))
    })
}

fn card(s: VarSet) -> i64 {
    s.len() as i64
}

fn push_enumerated(chain: &mut Chain, label: &str, value: Option<Coeff>) {
    if let Some(v) = value {
        chain.push(label, v);
    }
}

fn check_k(n: usize, k: VarSet) -> Result<VarSet> {
    check_cap("n", n, 1, MAX_FORMULA_N)?;
    let window = VarSet::range(2, n + 1)?;
    check_subset(k, 2, n + 1)?;
    Ok(window)
}

/// The chain running from `|R([2,n+1] ∖ K)|` to `|R(τ(K))|`, plus the
/// stand-alone identity obtained by letting `τ` permute the subsets.
pub fn check_combinatorial_sums(n: usize, k: VarSet) -> Result<IdentityReport> {
    combinatorial(&Enumerations::new(), n, k)
}

fn combinatorial(en: &Enumerations, n: usize, k: VarSet) -> Result<IdentityReport> {
    let u = check_k(n, k)?;
    let ni = n as i64;
    let tau = |s: VarSet| tau_set(n, s);
    let c = u.difference(k);
    let tk = tau(k)?;

    let mut chain = Chain::new("chain");
    push_enumerated(&mut chain, "|R([2,n+1]∖K)| (enumeration)", en.exact(n, c)?);
    chain.push(
        "Σ_{J⊆[2,n+1]∖K} (-1)^{|[2,n+1]∖(K∪J)|} α(J)!̂",
        sum_over(c, |j| {
            Ok(neg_one_pow(card(u.difference(k.union(j)))) * alpha_hat(j)?)
        })?,
    );
    chain.push(
        "Σ_{J⊆[2,n+1]∖K} (-1)^{n-|K∪J|} α(J)!̂",
        sum_over(
            c,
            |j| Ok(neg_one_pow(ni - card(k.union(j))) * alpha_hat(j)?),
        )?,
    );
    chain.push(
        "Σ_{J⊆[2,n+1]∖K} (-1)^{n-|τ(K)∪τ(J)|} α(J)!̂",
        sum_over(c, |j| {
            Ok(neg_one_pow(ni - card(tk.union(tau(j)?))) * alpha_hat(j)?)
        })?,
    );
    chain.push(
        "Σ_{τ(J)⊆[2,n+1]∖τ(K)} (-1)^{n-|τ(K)∪τ(J)|} α(J)!̂",
        sum_over(u.difference(tk), |tj| {
            let j = tau(tj)?;
            Ok(neg_one_pow(ni - card(tk.union(tau(j)?))) * alpha_hat(j)?)
        })?,
    );
    chain.push(
        "Σ_{S⊆[2,n+1]∖τ(K)} (-1)^{n-|τ(K)∪S|} α(τ(S))!̂",
        sum_over(u.difference(tk), |s| {
            Ok(neg_one_pow(ni - card(tk.union(s))) * alpha_hat(tau(s)?)?)
        })?,
    );
    chain.push(
        "Σ_{S⊆τ(K)} (-1)^{|τ(K)∖S|} α(S)!̂",
        sum_over(tk, |s| {
            Ok(neg_one_pow(card(tk.difference(s))) * alpha_hat(s)?)
        })?,
    );
    chain.push(
        "Σ_{τ(J)⊆τ(K)} (-1)^{|τ(K)∖τ(J)|} α(τ(J))!̂",
        sum_over(tk, |tj| {
            let j = tau(tj)?;
            let tj = tau(j)?;
            Ok(neg_one_pow(card(tk.difference(tj))) * alpha_hat(tj)?)
        })?,
    );
    chain.push(
        "Σ_{J⊆K} (-1)^{|τ(K)∖τ(J)|} α(τ(J))!̂",
        sum_over(k, |j| {
            let tj = tau(j)?;
            Ok(neg_one_pow(card(tk.difference(tj))) * alpha_hat(tj)?)
        })?,
    );
    chain.push(
        "Σ_{J⊆K} (-1)^{|K∖J|} α(τ(J))!̂",
        sum_over(k, |j| {
            Ok(neg_one_pow(card(k.difference(j))) * alpha_hat(tau(j)?)?)
        })?,
    );
    chain.push(
        "Σ_{τ(J)⊆K} (-1)^{|K∖τ(J)|} α(J)!̂",
        sum_over(k, |tj| {
            let j = tau(tj)?;
            Ok(neg_one_pow(card(k.difference(tau(j)?))) * alpha_hat(j)?)
        })?,
    );
    push_enumerated(&mut chain, "|R(τ(K))| (enumeration)", en.exact(n, tk)?);

    let mut dual = Chain::new("stand-alone");
    dual.push(
        "Σ_{J⊆[2,n+1]∖K} (-1)^{n-|K∪J|} α(τ(J))!̂",
        sum_over(c, |j| {
            Ok(neg_one_pow(ni - card(k.union(j))) * alpha_hat(tau(j)?)?)
        })?,
    );
    dual.push(
        "Σ_{J⊆K} (-1)^{|K∖J|} α(J)!̂",
        sum_over(
            k,
            |j| Ok(neg_one_pow(card(k.difference(j))) * alpha_hat(j)?),
        )?,
    );
    push_enumerated(&mut dual, "|R(K)| (enumeration)", en.exact(n, k)?);

    Ok(IdentityReport::new(
        Identity::CombinatorialSums,
        n,
        Some(k),
        vec![chain, dual],
    ))
}

/// Relates `|R([2,n+2] ∖ K)|` in `S_{n+2}` to sums over subsets of `[2,n+1]`.
pub fn check_sequential_sums(n: usize, k: VarSet) -> Result<IdentityReport> {
    sequential(&Enumerations::new(), n, k)
}

fn sequential(en: &Enumerations, n: usize, k: VarSet) -> Result<IdentityReport> {
    let u = check_k(n, k)?;
    let ni = n as i64;
    let ki = card(k);
    let u_next = VarSet::range(2, n + 2)?;
    let max_elem = VarSet::singleton(n + 2)?;
    let min_elem = VarSet::singleton(1)?;
    let with_max = |w: VarSet| w.union(max_elem);
    let with_min = |w: VarSet| w.union(min_elem);
    let tau_n = |s: VarSet| tau_set(n, s);
    let tau_next = |s: VarSet| tau_set(n + 1, s);
    let c = u.difference(k);
    let tk = tau_n(k)?;

    let mut first = Chain::new("[2,n+2]∖K^max vs [2,n+1]∖K");
    let lhs_set = u_next.difference(with_max(k));
    push_enumerated(
        &mut first,
        "|R([2,n+2]∖K^max)| (enumeration)",
        en.exact(n + 1, lhs_set)?,
    );
    first.push(
        "|R([2,n+2]∖K^max)| (inclusion-exclusion)",
        count_exact_descents(lhs_set)?,
    );
    first.push(
        "|R([2,n+1]∖K)| (inclusion-exclusion)",
        count_exact_descents(c)?,
    );
    push_enumerated(&mut first, "|R([2,n+1]∖K)| (enumeration)", en.exact(n, c)?);

    let mut chain = Chain::new("chain");
    push_enumerated(
        &mut chain,
        "|R([2,n+2]∖K)| (enumeration)",
        en.exact(n + 1, u_next.difference(k))?,
    );
    chain.push(
        "Σ_{J⊆[2,n+1]∖K} (-1)^{n-|K|-|J|} (α(J^max)!̂ - α(J)!̂)",
        sum_over(c, |j| {
            Ok(neg_one_pow(ni - ki - card(j)) * (alpha_hat(with_max(j))? - alpha_hat(j)?))
        })?,
    );
    chain.push(
        "Σ_{J⊆[2,n+1]∖τ_n(K)} (-1)^{n-|K|-|J|} (α(τ_n(J^min))!̂ - α(τ_n(J))!̂)",
        sum_over(u.difference(tk), |j| {
            Ok(neg_one_pow(ni - ki - card(j))
                * (alpha_hat(tau_n(with_min(j))?)? - alpha_hat(tau_n(j)?)?))
        })?,
    );
    chain.push(
        "Σ_{J⊆K} (-1)^{|K|-|J|} α(τ_{n+1}(J))!̂",
        sum_over(k, |j| {
            Ok(neg_one_pow(ki - card(j)) * alpha_hat(tau_next(j)?)?)
        })?,
    );
    chain.push(
        "Σ_{J⊆K} (-1)^{|K|-|J|} (|J|+1) α(τ_n(J))!̂",
        sum_over(k, |j| {
            Ok(neg_one_pow(ki - card(j)) * (card(j) as Coeff + 1) * alpha_hat(tau_n(j)?)?)
        })?,
    );
    push_enumerated(
        &mut chain,
        "|R(τ_{n+1}(K))| (enumeration)",
        en.exact(n + 1, tau_next(k)?)?,
    );

    // Intermediate forms from the derivation.
    chain.push(
        "Σ_{J⊆[2,n+2]∖K} (-1)^{n+1-|K∪J|} α(J)!̂",
        sum_over(u_next.difference(k), |j| {
            Ok(neg_one_pow(ni + 1 - card(k.union(j))) * alpha_hat(j)?)
        })?,
    );
    let plain = sum_over(c, |j| {
        Ok(neg_one_pow(ni + 1 - card(k.union(j))) * alpha_hat(j)?)
    })?;
    let maxed = sum_over(c, |j| {
        Ok(neg_one_pow(ni + 1 - card(k.union(with_max(j)))) * alpha_hat(with_max(j))?)
    })?;
    chain.push(
        "Σ_{J⊆[2,n+1]∖K} (-1)^{n+1-|K∪J|} α(J)!̂ + Σ_{J⊆[2,n+1]∖K} (-1)^{n+1-|K∪J^max|} α(J^max)!̂",
        plain
            .checked_add(maxed)
            .ok_or(Error::Overflow("identity sum"))?,
    );
    let maxed = sum_over(c, |j| {
        Ok(neg_one_pow(ni - card(k.union(j))) * alpha_hat(with_max(j))?)
    })?;
    let plain = sum_over(
        c,
        |j| Ok(neg_one_pow(ni - card(k.union(j))) * alpha_hat(j)?),
    )?;
    chain.push(
        "Σ_{J⊆[2,n+1]∖K} (-1)^{n-|K∪J|} α(J^max)!̂ - Σ_{J⊆[2,n+1]∖K} (-1)^{n-|K∪J|} α(J)!̂",
        maxed
            .checked_sub(plain)
            .ok_or(Error::Overflow("identity sum"))?,
    );
    chain.push(
        "Σ_{J⊆[2,n+1]∖K} (-1)^{n-|K∪J|} (α(J^max)!̂ - α(J)!̂)",
        sum_over(c, |j| {
            Ok(neg_one_pow(ni - card(k.union(j))) * (alpha_hat(with_max(j))? - alpha_hat(j)?))
        })?,
    );
    chain.push(
        "Σ_{J⊆[2,n+1]∖τ_n(K)} (-1)^{n-|τ_n(K)∪J|} (α(τ_n(J^min))!̂ - α(τ_n(J))!̂)",
        sum_over(u.difference(tk), |j| {
            Ok(neg_one_pow(ni - card(tk.union(j)))
                * (alpha_hat(tau_n(with_min(j))?)? - alpha_hat(tau_n(j)?)?))
        })?,
    );
    chain.push(
        "Σ_{J⊆K} (-1)^{|K∖J|} α(τ_{n+1}(J))!̂",
        sum_over(k, |j| {
            Ok(neg_one_pow(card(k.difference(j))) * alpha_hat(tau_next(j)?)?)
        })?,
    );
    chain.push(
        "Σ_{J⊆K} (-1)^{|K∖J|} (|J|+1) α(τ_n(J))!̂",
        sum_over(k, |j| {
            Ok(neg_one_pow(card(k.difference(j))) * (card(j) as Coeff + 1) * alpha_hat(tau_n(j)?)?)
        })?,
    );

    Ok(
        IdentityReport::new(Identity::SequentialSums, n, Some(k), vec![first, chain])
            .with_assumption(
                "J' in the split of the sum over [2,n+2]∖K is read as J^max = J ∪ {n+2}",
            ),
    )
}

/// `Σ_{J⊆[2,n+1]∖K} (-1)^{n-|K|+|J|} α(J^max)!̂ = Σ_{J⊆K} (-1)^{|K|-|J|} (|J|+2) α(τ_n(J))!̂`.
pub fn check_reordering_sums(n: usize, k: VarSet) -> Result<IdentityReport> {
    let u = check_k(n, k)?;
    let ni = n as i64;
    let ki = card(k);
    let max_elem = VarSet::singleton(n + 2)?;
    let c = u.difference(k);
    let chain = Chain::new("chain")
        .with(
            "Σ_{J⊆[2,n+1]∖K} (-1)^{n-|K|+|J|} α(J^max)!̂",
            sum_over(c, |j| {
                Ok(neg_one_pow(ni - ki + card(j)) * alpha_hat(j.union(max_elem))?)
            })?,
        )
        .with(
            "Σ_{J⊆K} (-1)^{|K|-|J|} (|J|+2) α(τ_n(J))!̂",
            sum_over(k, |j| {
                Ok(neg_one_pow(ki - card(j)) * (card(j) as Coeff + 2) * alpha_hat(tau_set(n, j)?)?)
            })?,
        );
    Ok(IdentityReport::new(
        Identity::ReorderingSums,
        n,
        Some(k),
        vec![chain],
    ))
}

/// `A_n` read off excedances equals `A_n` read off descent tops, subset by subset.
pub fn check_excedance_equivalence(n: usize) -> Result<IdentityReport> {
    excedance(&Enumerations::new(), n)
}

fn excedance(en: &Enumerations, n: usize) -> Result<IdentityReport> {
    check_cap("n", n, 1, MAX_VERIFY_N)?;
    let by_exc = eulerian_excedance_poly(n)?;
    let by_dt = eulerian_descent_poly(n)?;
    let mut chains = vec![Chain::new("polynomials")
        .with(
            "A_n(x) via excedances = A_n(x) via descent tops",
            Coeff::from(by_exc == by_dt),
        )
        .with("expected", 1)];
    for x in VarSet::range(2, n + 1)?.subsets() {
        let mut chain = Chain::new(format!("X={x}"));
        chain.push(
            "|r(n,X)| (enumeration)",
            Coeff::from(enumerate_r_exc(n, x)?),
        );
        push_enumerated(&mut chain, "|R(n,X)| (enumeration)", en.exact(n, x)?);
        chain.push("|R(n,X)| (inclusion-exclusion)", count_exact_descents(x)?);
        chains.push(chain);
    }
    Ok(IdentityReport::new(
        Identity::ExcedanceEquivalence,
        n,
        None,
        chains,
    ))
}

type PerSubsetCheck = fn(&Enumerations, usize, VarSet) -> Result<IdentityReport>;

fn map_ordered<T, U, F>(items: Vec<T>, f: F) -> Vec<U>
where
    T: Send,
    U: Send,
    F: Fn(T) -> U + Sync + Send,
{
    if rayon::current_num_threads() <= 1 {
        items.into_iter().map(f).collect()
    } else {
        items.into_par_iter().map(f).collect()
    }
}

/// Runs the selected identities for every `n` in `[n_lo, n_hi]` and every
/// `K ⊆ [2, n+1]`. Order: `n` ascending, then identity, then `K` by bit
/// pattern. An empty range yields no reports.
pub fn sweep(n_lo: usize, n_hi: usize, which: Selector) -> Result<Vec<IdentityReport>> {
    if n_lo > n_hi {
        return Ok(Vec::new());
    }
    check_cap("n_lo", n_lo, 1, which.max_n())?;
    check_cap("n_hi", n_hi, 1, which.max_n())?;
    let en = Enumerations::new();
    let mut reports = Vec::new();
    for n in n_lo..=n_hi {
        if which.includes(Identity::Theorem) {
            reports.push(verify_theorem(n)?);
        }
        let subsets: Vec<VarSet> = VarSet::range(2, n + 1)?.subsets().collect();
        let per_k: [(Identity, PerSubsetCheck); 3] = [
            (Identity::CombinatorialSums, combinatorial),
            (Identity::SequentialSums, sequential),
            (Identity::ReorderingSums, |_, n, k| {
                check_reordering_sums(n, k)
            }),
        ];
        for (id, check) in per_k {
            if which.includes(id) {
                let batch = map_ordered(subsets.clone(), |k| check(&en, n, k));
                for r in batch {
                    reports.push(r?);
                }
            }
        }
        if which.includes(Identity::ExcedanceEquivalence) {
            reports.push(excedance(&en, n)?);
        }
    }
    Ok(reports)
}
