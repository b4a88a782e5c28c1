//! Sparse multiaffine polynomials with exact integer coefficients.
//!
//! Monomials are identified with their exponent support, a [`VarSet`]. Every
//! polynomial carries a [`VarWindow`] naming the admissible variables; for
//! Eulerian polynomials this is `[2, n+1]`, since `x1` is a ghost variable
//! that never occurs.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::varset::{VarSet, MAX_INDEX};

/// Exact coefficient type. All arithmetic on it is checked.
pub type Coeff = i128;

/// Search bound for [`MultiaffinePoly::palindromic_permutation`].
pub const MAX_PERMUTATION_SEARCH_VARS: usize = 10;

/// Contiguous index range `[lo, hi]` of admissible variables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VarWindow {
    lo: usize,
    hi: usize,
}

impl VarWindow {
    pub fn new(lo: usize, hi: usize) -> Result<Self> {
        if lo == 0 || lo > hi || hi > MAX_INDEX {
            return Err(Error::BadWindow { lo, hi });
        }
        Ok(VarWindow { lo, hi })
    }

    /// `[2, n+1]`, the window of the `n`-th Eulerian polynomial.
    pub fn eulerian(n: usize) -> Result<Self> {
        VarWindow::new(2, n + 1)
    }

    pub fn lo(self) -> usize {
        self.lo
    }

    pub fn hi(self) -> usize {
        self.hi
    }

    pub fn as_set(self) -> VarSet {
        VarSet::range(self.lo, self.hi).expect("window bounds validated")
    }

    /// The order-reversing involution `i -> lo + hi - i`.
    pub fn reflect(self, i: usize) -> usize {
        self.lo + self.hi - i
    }

    fn check(self, s: VarSet) -> Result<()> {
        match s.difference(self.as_set()).min() {
            Some(index) => Err(Error::IndexOutsideWindow {
                index,
                lo: self.lo,
                hi: self.hi,
            }),
            None => Ok(()),
        }
    }
}

/// A multiaffine polynomial in canonical sparse form: no zero coefficients,
/// keys ordered by [`VarSet`]'s canonical monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiaffinePoly {
    window: VarWindow,
    terms: BTreeMap<VarSet, Coeff>,
}

impl MultiaffinePoly {
    /// Builds the canonical form, summing duplicate monomials and dropping zeros.
    pub fn new<I>(window: VarWindow, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VarSet, Coeff)>,
    {
        let mut map = BTreeMap::new();
        for (vars, c) in terms {
            window.check(vars)?;
            let slot = map.entry(vars).or_insert(0 as Coeff);
            *slot = slot
                .checked_add(c)
                .ok_or(Error::Overflow("polynomial coefficient"))?;
        }
        map.retain(|_, c| *c != 0);
        Ok(MultiaffinePoly { window, terms: map })
    }

    pub fn zero(window: VarWindow) -> Self {
        MultiaffinePoly {
            window,
            terms: BTreeMap::new(),
        }
    }

    pub fn window(&self) -> VarWindow {
        self.window
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, vars: VarSet) -> Coeff {
        self.terms.get(&vars).copied().unwrap_or(0)
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl ExactSizeIterator<Item = (VarSet, Coeff)> + '_ {
        self.terms.iter().map(|(&s, &c)| (s, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Value at the all-ones point.
    pub fn coefficient_sum(&self) -> Result<Coeff> {
        self.terms.values().try_fold(0 as Coeff, |acc, &c| {
            acc.checked_add(c).ok_or(Error::Overflow("coefficient sum"))
        })
    }

    /// Variables occurring in some term; none of them can be dropped from
    /// any representation of the polynomial.
    pub fn strict_vars(&self) -> VarSet {
        self.terms
            .keys()
            .fold(VarSet::EMPTY, |acc, &s| acc.union(s))
    }

    /// `m * p(1/x)` with `m` the product of the strictly appearing variables.
    ///
    /// Window-only variables never enter `m`, so the result does not depend
    /// on how wide the window was declared.
    pub fn reciprocal(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let full = self.strict_vars();
        let terms = self
            .terms
            .iter()
            .map(|(&s, &c)| (full.difference(s), c))
            .collect();
        Ok(MultiaffinePoly {
            window: self.window,
            terms,
        })
    }

    /// Substitutes `x_i -> x_{lo+hi-i}` over the window.
    pub fn mirror(&self) -> Self {
        let w = self.window;
        let terms = self
            .terms
            .iter()
            .map(|(&s, &c)| {
                let image = s.map(|i| w.reflect(i)).expect("reflection stays in window");
                (image, c)
            })
            .collect();
        MultiaffinePoly { window: w, terms }
    }

    /// Renames variables by `perm`, given as `(from, to)` pairs; unlisted
    /// indices are fixed.
    pub fn rename(&self, perm: &[(usize, usize)]) -> Result<Self> {
        let lookup = |i: usize| {
            perm.iter()
                .find(|&&(from, _)| from == i)
                .map_or(i, |&(_, to)| to)
        };
        let mut terms = Vec::with_capacity(self.terms.len());
        for (&s, &c) in &self.terms {
            let image = s.map(lookup)?;
            if image.len() != s.len() {
                return Err(Error::Internal(format!(
                    "renaming {perm:?} is not injective on {s}"
                )));
            }
            terms.push((image, c));
        }
        MultiaffinePoly::new(self.window, terms)
    }

    /// The top monomial over the strict variables has a nonzero coefficient.
    pub fn is_monomialmaximal(&self) -> bool {
        !self.is_zero() && self.coeff(self.strict_vars()) != 0
    }

    /// Every subset of the strict variables, `∅` included, has a nonzero coefficient.
    pub fn is_complete(&self) -> bool {
        let full = self.strict_vars();
        !self.is_zero() && self.terms.len() == 1usize << full.len()
    }

    /// Every degree `1..=|strict vars|` is represented by some term.
    pub fn is_degree_complete(&self) -> bool {
        let full = self.strict_vars().len();
        let mut seen = vec![false; full + 1];
        for s in self.terms.keys() {
            seen[s.len()] = true;
        }
        seen[1..].iter().all(|&b| b)
    }

    /// `rec(p) == p(mirror(x))`.
    pub fn is_mirrorpalindromic(&self) -> Result<bool> {
        Ok(self.reciprocal()? == self.mirror())
    }

    /// Searches for a renaming `π` of the strict variables with
    /// `rec(p) == p∘π`. Returns the pairs `(i, π(i))` in ascending `i`.
    pub fn palindromic_permutation(&self) -> Result<Option<Vec<(usize, usize)>>> {
        let target = self.reciprocal()?;
        let vars = self.strict_vars().to_vec();
        if vars.len() > MAX_PERMUTATION_SEARCH_VARS {
            return Err(Error::TooManyVariables {
                count: vars.len(),
                max: MAX_PERMUTATION_SEARCH_VARS,
            });
        }
        let mut search = PermutationSearch {
            source: self,
            target: &target,
            vars: &vars,
            image: Vec::with_capacity(vars.len()),
            used: VarSet::EMPTY,
        };
        Ok(search.run().then(|| {
            vars.iter()
                .copied()
                .zip(search.image.iter().copied())
                .collect()
        }))
    }

    /// Sets every variable to one indeterminate `t`; dense coefficients by degree.
    pub fn collapse_to_univariate(&self) -> Result<Vec<Coeff>> {
        let Some(top) = self.terms.keys().map(|s| s.len()).max() else {
            return Ok(Vec::new());
        };
        let mut dense = vec![0 as Coeff; top + 1];
        for (s, &c) in &self.terms {
            let d = &mut dense[s.len()];
            *d = d
                .checked_add(c)
                .ok_or(Error::Overflow("univariate coefficient"))?;
        }
        Ok(dense)
    }
}

struct PermutationSearch<'a> {
    source: &'a MultiaffinePoly,
    target: &'a MultiaffinePoly,
    vars: &'a [usize],
    image: Vec<usize>,
    used: VarSet,
}

impl PermutationSearch<'_> {
    fn run(&mut self) -> bool {
        let depth = self.image.len();
        if depth == self.vars.len() {
            return true;
        }
        for &candidate in self.vars {
            if self.used.contains(candidate) {
                continue;
            }
            self.image.push(candidate);
            self.used.insert(candidate).expect("strict variable index");
            if self.consistent() && self.run() {
                return true;
            }
            self.image.pop();
            self.used = self
                .used
                .difference(VarSet::singleton(candidate).expect("index"));
        }
        false
    }

    /// Every term supported on already-assigned variables must agree, in both
    /// directions.
    fn consistent(&self) -> bool {
        let depth = self.image.len();
        let domain = VarSet::new(self.vars[..depth].iter().copied()).expect("indices");
        let forward = |s: VarSet| {
            VarSet::new(s.iter().map(|i| {
                let k = self.vars.iter().position(|&v| v == i).expect("assigned");
                self.image[k]
            }))
            .expect("indices")
        };
        let newest = self.vars[depth - 1];
        let newest_image = self.image[depth - 1];
        for (s, c) in self.source.terms() {
            if s.contains(newest) && s.is_subset(domain) && self.target.coeff(forward(s)) != c {
                return false;
            }
        }
        let range = self.used;
        let backward = |s: VarSet| {
            VarSet::new(s.iter().map(|j| {
                let k = self.image.iter().position(|&v| v == j).expect("assigned");
                self.vars[k]
            }))
            .expect("indices")
        };
        for (s, c) in self.target.terms() {
            if s.contains(newest_image) && s.is_subset(range) && self.source.coeff(backward(s)) != c
            {
                return false;
            }
        }
        // Terms supported on no variable at all: the constants.
        depth > 1 || self.source.coeff(VarSet::EMPTY) == self.target.coeff(VarSet::EMPTY)
    }
}

/// Text rendering, e.g. `1 + x2 + 3*x3 + x2*x3`.
impl fmt::Display for MultiaffinePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (s, c)) in self.terms().enumerate() {
            let monomial = s
                .iter()
                .map(|i| format!("x{i}"))
                .collect::<Vec<_>>()
                .join("*");
            write_term(f, k == 0, c, &monomial)?;
        }
        Ok(())
    }
}

pub(crate) fn write_term(
    f: &mut fmt::Formatter<'_>,
    first: bool,
    c: Coeff,
    monomial: &str,
) -> fmt::Result {
    let magnitude = c.unsigned_abs();
    match (first, c < 0) {
        (true, true) => f.write_str("-")?,
        (true, false) => {}
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
    }
    if monomial.is_empty() {
        write!(f, "{magnitude}")
    } else if magnitude == 1 {
        f.write_str(monomial)
    } else {
        write!(f, "{magnitude}*{monomial}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[usize]) -> VarSet {
        VarSet::new(v.iter().copied()).unwrap()
    }

    fn poly(lo: usize, hi: usize, terms: &[(&[usize], Coeff)]) -> MultiaffinePoly {
        MultiaffinePoly::new(
            VarWindow::new(lo, hi).unwrap(),
            terms.iter().map(|(v, c)| (s(v), *c)),
        )
        .unwrap()
    }

    /// 1 + x2 + 3 x3 + x2 x3: the descent-top polynomial of S_3, counted by
    /// hand (123 | 213 | 132, 231, 312 | 321).
    fn a2() -> MultiaffinePoly {
        poly(2, 3, &[(&[], 1), (&[2], 1), (&[3], 3), (&[2, 3], 1)])
    }

    fn counterexample() -> MultiaffinePoly {
        poly(
            1,
            3,
            &[
                (&[], 1),
                (&[1], 2),
                (&[2], 1),
                (&[3], 1),
                (&[2, 3], 3),
                (&[1, 2], 1),
                (&[1, 3], 1),
                (&[1, 2, 3], 1),
            ],
        )
    }

    #[test]
    fn construction_sums_and_cancels() {
        let p = poly(2, 3, &[(&[2], 1), (&[2], -1)]);
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
        let q = poly(
            2,
            3,
            &[(&[3], 1), (&[3], 2), (&[], 1), (&[2], 1), (&[2, 3], 1)],
        );
        assert_eq!(q, a2());
    }

    #[test]
    fn construction_rejects_outside_window() {
        let err = MultiaffinePoly::new(VarWindow::new(2, 3).unwrap(), [(s(&[4]), 1)]);
        assert_eq!(
            err,
            Err(Error::IndexOutsideWindow {
                index: 4,
                lo: 2,
                hi: 3
            })
        );
        assert!(VarWindow::new(3, 2).is_err());
        assert!(VarWindow::new(0, 2).is_err());
    }

    #[test]
    fn construction_detects_overflow() {
        let w = VarWindow::new(2, 3).unwrap();
        let err = MultiaffinePoly::new(w, [(s(&[2]), Coeff::MAX), (s(&[2]), 1)]);
        assert!(matches!(err, Err(Error::Overflow(_))));
    }

    #[test]
    fn strict_vars_cases() {
        assert_eq!(a2().strict_vars(), s(&[2, 3]));
        assert_eq!(poly(2, 3, &[]).strict_vars(), VarSet::EMPTY);
        assert_eq!(poly(2, 5, &[(&[], 1), (&[3], 1)]).strict_vars(), s(&[3]));
    }

    #[test]
    fn reciprocal_cases() {
        let rec = a2().reciprocal().unwrap();
        assert_eq!(
            rec,
            poly(2, 3, &[(&[], 1), (&[2], 3), (&[3], 1), (&[2, 3], 1)])
        );
        assert_eq!(rec.reciprocal().unwrap(), a2());

        let expected = poly(
            1,
            3,
            &[
                (&[1, 2, 3], 1),
                (&[2, 3], 2),
                (&[1, 3], 1),
                (&[1, 2], 1),
                (&[1], 3),
                (&[3], 1),
                (&[2], 1),
                (&[], 1),
            ],
        );
        assert_eq!(counterexample().reciprocal().unwrap(), expected);

        assert_eq!(
            poly(2, 3, &[(&[2], 1)]).reciprocal().unwrap(),
            poly(2, 3, &[(&[], 1)])
        );
        assert_eq!(poly(2, 3, &[]).reciprocal(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn reciprocal_ignores_ghost_variables() {
        let narrow = poly(2, 3, &[(&[], 1), (&[3], 2)]);
        let wide = poly(1, 5, &[(&[], 1), (&[3], 2)]);
        let a = narrow.reciprocal().unwrap();
        let b = wide.reciprocal().unwrap();
        assert_eq!(a.terms().collect::<Vec<_>>(), b.terms().collect::<Vec<_>>());
    }

    #[test]
    fn mirror_cases() {
        assert_eq!(
            a2().mirror(),
            poly(2, 3, &[(&[], 1), (&[3], 1), (&[2], 3), (&[2, 3], 1)])
        );
        let sym = poly(2, 3, &[(&[2], 1), (&[3], 1)]);
        assert_eq!(sym.mirror(), sym);
        let p = poly(2, 6, &[(&[2], 5), (&[3, 6], -2), (&[], 7)]);
        assert_eq!(
            p.mirror(),
            poly(2, 6, &[(&[6], 5), (&[2, 5], -2), (&[], 7)])
        );
        assert_eq!(p.mirror().mirror(), p);
    }

    #[test]
    fn monomialmaximality() {
        assert!(a2().is_monomialmaximal());
        assert!(!poly(2, 3, &[(&[], 1), (&[2], 1), (&[3], 1)]).is_monomialmaximal());
        assert!(counterexample().is_monomialmaximal());
        assert!(!poly(2, 3, &[]).is_monomialmaximal());
    }

    #[test]
    fn completeness() {
        assert!(a2().is_complete());
        let p = poly(2, 3, &[(&[], 1), (&[2, 3], 1)]);
        assert!(!p.is_complete());
        assert!(!p.is_degree_complete());
        assert!(counterexample().is_complete());
        assert!(counterexample().is_degree_complete());
        let q = poly(2, 3, &[(&[2], 1), (&[2, 3], 1)]);
        assert!(!q.is_complete());
        assert!(q.is_degree_complete());
    }

    #[test]
    fn mirrorpalindromicity() {
        assert!(a2().is_mirrorpalindromic().unwrap());
        assert!(!counterexample().is_mirrorpalindromic().unwrap());
        assert!(poly(2, 3, &[(&[], 1)]).is_mirrorpalindromic().unwrap());
        assert_eq!(
            poly(2, 3, &[]).is_mirrorpalindromic(),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn palindromic_up_to_permutation() {
        assert_eq!(counterexample().palindromic_permutation().unwrap(), None);
        assert_eq!(
            a2().palindromic_permutation().unwrap(),
            Some(vec![(2, 3), (3, 2)])
        );
        assert_eq!(
            poly(2, 3, &[(&[], 1), (&[2], 1)])
                .palindromic_permutation()
                .unwrap(),
            Some(vec![(2, 2)])
        );
        let wide: Vec<(VarSet, Coeff)> = (1..=11).map(|i| (s(&[i]), 1)).collect();
        let p = MultiaffinePoly::new(VarWindow::new(1, 11).unwrap(), wide).unwrap();
        assert!(matches!(
            p.palindromic_permutation(),
            Err(Error::TooManyVariables { count: 11, .. })
        ));
    }

    #[test]
    fn permutation_found_is_valid() {
        // Self-reciprocal, but not symmetric under 1 <-> 3.
        let p = poly(
            1,
            3,
            &[
                (&[], 1),
                (&[2], 2),
                (&[1, 3], 2),
                (&[1, 2, 3], 1),
                (&[1], 5),
                (&[2, 3], 5),
            ],
        );
        let perm = p.palindromic_permutation().unwrap().expect("exists");
        assert_eq!(p.rename(&perm).unwrap(), p.reciprocal().unwrap());
        assert!(!p.is_mirrorpalindromic().unwrap());
    }

    #[test]
    fn collapse() {
        assert_eq!(a2().collapse_to_univariate().unwrap(), vec![1, 4, 1]);
        assert_eq!(
            poly(2, 3, &[]).collapse_to_univariate().unwrap(),
            Vec::<Coeff>::new()
        );
    }

    #[test]
    fn text_rendering() {
        assert_eq!(a2().to_string(), "1 + x2 + 3*x3 + x2*x3");
        assert_eq!(
            poly(2, 3, &[(&[2], -1), (&[3], -4)]).to_string(),
            "-x2 - 4*x3"
        );
        assert_eq!(poly(2, 3, &[]).to_string(), "0");
    }
}
