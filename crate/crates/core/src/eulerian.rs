//! Univariate and multivariate Eulerian polynomials built by a single scan
//! of `S_{n+1}`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{check_cap, Error, Result};
use crate::perm::{fold_partitions, statistic_histogram, Perm};
use crate::poly::{write_term, Coeff, MultiaffinePoly, VarWindow};
use crate::varset::VarSet;

/// Largest `n` for the descent, excedance and univariate builders.
pub const MAX_N: usize = 11;

/// Largest `n` for the descent-ascent polynomial.
pub const MAX_BIPOLY_N: usize = 9;

/// Descents-ascents polynomial: coefficient of `x^D y^A` counts the
/// permutations with descent tops `D` and ascent tops `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiPoly {
    n: usize,
    terms: BTreeMap<(VarSet, VarSet), Coeff>,
}

impl BiPoly {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = ((VarSet, VarSet), Coeff)> + '_ {
        self.terms.iter().map(|(&k, &c)| (k, c))
    }

    pub fn coeff(&self, descent_tops: VarSet, ascent_tops: VarSet) -> Coeff {
        self.terms
            .get(&(descent_tops, ascent_tops))
            .copied()
            .unwrap_or(0)
    }

    pub fn coefficient_sum(&self) -> Result<Coeff> {
        self.terms.values().try_fold(0 as Coeff, |acc, &c| {
            acc.checked_add(c).ok_or(Error::Overflow("coefficient sum"))
        })
    }

    /// Sets every `y` to one.
    pub fn marginalize_ascents(&self) -> Result<MultiaffinePoly> {
        MultiaffinePoly::new(
            VarWindow::eulerian(self.n)?,
            self.terms.iter().map(|(&(x, _), &c)| (x, c)),
        )
    }
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, ((x, y), c)) in self.terms().enumerate() {
            let monomial = x
                .iter()
                .map(|i| format!("x{i}"))
                .chain(y.iter().map(|j| format!("y{j}")))
                .collect::<Vec<_>>()
                .join("*");
            write_term(f, k == 0, c, &monomial)?;
        }
        Ok(())
    }
}

fn poly_from_histogram(n: usize, stat: fn(&Perm) -> VarSet) -> Result<MultiaffinePoly> {
    check_cap("n", n, 1, MAX_N)?;
    let hist = statistic_histogram(n + 1, stat)?;
    MultiaffinePoly::new(
        VarWindow::eulerian(n)?,
        hist.into_iter()
            .enumerate()
            .map(|(h, count)| (VarSet::from_bits((h as u64) << 2), Coeff::from(count))),
    )
}

/// `A_n(x)`: window `[2, n+1]`, coefficient of `x^S` is `|R(n, S)|`.
pub fn eulerian_descent_poly(n: usize) -> Result<MultiaffinePoly> {
    poly_from_histogram(n, Perm::descent_top_set)
}

/// The same polynomial read off the excedance statistic.
pub fn eulerian_excedance_poly(n: usize) -> Result<MultiaffinePoly> {
    poly_from_histogram(n, Perm::excedance_set)
}

pub fn eulerian_descent_ascent_poly(n: usize) -> Result<BiPoly> {
    check_cap("n", n, 1, MAX_BIPOLY_N)?;
    let parts = fold_partitions(n + 1, BTreeMap::new, |acc, p| {
        *acc.entry((p.descent_top_set(), p.ascent_top_set()))
            .or_insert(0 as Coeff) += 1;
    })?;
    let mut terms = BTreeMap::new();
    for part in parts {
        for (k, c) in part {
            *terms.entry(k).or_insert(0 as Coeff) += c;
        }
    }
    Ok(BiPoly { n, terms })
}

/// Coefficients of `a_n(t) = Σ t^{des(σ)}` over `S_{n+1}`, by descent count.
pub fn univariate_eulerian(n: usize) -> Result<Vec<Coeff>> {
    check_cap("n", n, 1, MAX_N)?;
    let parts = fold_partitions(
        n + 1,
        || vec![0 as Coeff; n + 1],
        |acc, p| {
            let des = p.oneline().windows(2).filter(|w| w[0] > w[1]).count();
            acc[des] += 1;
        },
    )?;
    Ok(parts
        .into_iter()
        .fold(vec![0 as Coeff; n + 1], |mut acc, part| {
            for (a, b) in acc.iter_mut().zip(part) {
                *a += b;
            }
            acc
        }))
}
