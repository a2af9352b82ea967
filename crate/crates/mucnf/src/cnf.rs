//! Clause-set data model with set semantics.
//!
//! A clause is a set of literals over pairwise-distinct variables with no
//! clashing pair; a clause-set is a set of pairwise-distinct clauses. The
//! empty clause and the empty clause-set are both representable. All numeric
//! parameters (`n`, `c`, deficiency, degrees, full-clause count) are computed
//! from the clauses actually present, never from headers.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::solver::Assignment;

/// A propositional variable, identified by a positive integer (DIMACS style).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u32);

impl Var {
    /// Panics if `id` is zero; use [`Var::try_new`] for fallible construction.
    pub fn new(id: u32) -> Var {
        assert!(id >= 1, "variable ids start at 1");
        Var(id)
    }

    pub fn try_new(id: u32) -> Option<Var> {
        if id >= 1 {
            Some(Var(id))
        } else {
            None
        }
    }

    pub fn id(self) -> u32 {
        self.0
    }

    pub fn positive(self) -> Lit {
        Lit { var: self, positive: true }
    }

    pub fn negative(self) -> Lit {
        Lit { var: self, positive: false }
    }

    pub fn lit(self, positive: bool) -> Lit {
        Lit { var: self, positive }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A literal: a variable with a sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Lit {
    var: Var,
    positive: bool,
}

impl Lit {
    pub fn var(self) -> Var {
        self.var
    }

    pub fn is_positive(self) -> bool {
        self.positive
    }

    pub fn complement(self) -> Lit {
        Lit { var: self.var, positive: !self.positive }
    }

    /// Encodes as a signed DIMACS integer: `3` for positive, `-3` for negative.
    pub fn to_dimacs(self) -> i64 {
        let id = i64::from(self.var.id());
        if self.positive {
            id
        } else {
            -id
        }
    }

    /// Decodes a non-zero DIMACS integer.
    pub fn from_dimacs(code: i64) -> Option<Lit> {
        if code == 0 || code.unsigned_abs() > u64::from(u32::MAX) {
            return None;
        }
        Some(Lit {
            var: Var(code.unsigned_abs() as u32),
            positive: code > 0,
        })
    }
}

// Literals order by variable first, positive before negative, so that the
// canonical rendering of a clause lists each variable once in id order.
impl Ord for Lit {
    fn cmp(&self, other: &Lit) -> Ordering {
        self.var
            .cmp(&other.var)
            .then_with(|| other.positive.cmp(&self.positive))
    }
}

impl PartialOrd for Lit {
    fn partial_cmp(&self, other: &Lit) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::ops::Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        self.complement()
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dimacs())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("tautological clause: variable {0} occurs in both signs")]
pub struct TautologyError(pub Var);

/// A non-tautological clause: a set of literals, one per variable.
///
/// Stored as a sorted vector; the derived ordering is lexicographic on the
/// sorted literals (so a clause precedes its proper extensions), which is the
/// clause order used everywhere canonical output is required.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Clause {
    lits: Vec<Lit>,
}

impl Clause {
    pub fn empty() -> Clause {
        Clause { lits: Vec::new() }
    }

    /// Builds a clause from literals. Duplicate literals collapse (set
    /// semantics); a clashing pair is an error.
    pub fn new(lits: impl IntoIterator<Item = Lit>) -> Result<Clause, TautologyError> {
        let mut sorted: Vec<Lit> = lits.into_iter().collect();
        sorted.sort_unstable();
        sorted.dedup();
        for pair in sorted.windows(2) {
            if pair[0].var() == pair[1].var() {
                return Err(TautologyError(pair[0].var()));
            }
        }
        Ok(Clause { lits: sorted })
    }

    /// Builds a clause from signed DIMACS integers, e.g. `[1, -2]`.
    pub fn from_dimacs(codes: &[i64]) -> Result<Clause, TautologyError> {
        Clause::new(
            codes
                .iter()
                .map(|&c| Lit::from_dimacs(c).expect("non-zero literal code")),
        )
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Lit> + '_ {
        self.lits.iter().copied()
    }

    pub fn contains(&self, lit: Lit) -> bool {
        self.lits.binary_search(&lit).is_ok()
    }

    pub fn contains_var(&self, var: Var) -> bool {
        self.lits.iter().any(|l| l.var() == var)
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.lits.iter().map(|l| l.var())
    }

    /// True iff the two clauses share some variable in opposite signs.
    pub fn clashes_with(&self, other: &Clause) -> bool {
        self.lits.iter().any(|l| other.contains(l.complement()))
    }

    /// True iff every literal of `self` also occurs in `other`.
    pub fn subset_of(&self, other: &Clause) -> bool {
        self.lits.iter().all(|l| other.contains(*l))
    }

    /// Resolvent on `pivot`: `(self ∖ {pivot}) ∪ (other ∖ {¬pivot})`, or
    /// `None` when the union is tautological. Requires `pivot ∈ self` and
    /// `¬pivot ∈ other`.
    pub fn resolve_on(&self, other: &Clause, pivot: Lit) -> Option<Clause> {
        debug_assert!(self.contains(pivot) && other.contains(pivot.complement()));
        let lits = self
            .iter()
            .filter(|&l| l != pivot)
            .chain(other.iter().filter(|&l| l != pivot.complement()));
        Clause::new(lits).ok()
    }

    pub fn to_dimacs(&self) -> Vec<i64> {
        self.lits.iter().map(|l| l.to_dimacs()).collect()
    }

    /// The clause as a zero-terminated DIMACS line, e.g. `"1 -2 0"`.
    pub fn dimacs_line(&self) -> String {
        let mut line = String::new();
        for lit in &self.lits {
            line.push_str(&lit.to_dimacs().to_string());
            line.push(' ');
        }
        line.push('0');
        line
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.dimacs_line())
    }
}

/// A finite set of pairwise-distinct clauses.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ClauseSet {
    clauses: BTreeSet<Clause>,
}

impl ClauseSet {
    pub fn new() -> ClauseSet {
        ClauseSet::default()
    }

    /// Collects clauses, collapsing duplicates. Returns the number of
    /// duplicates dropped alongside the set.
    pub fn from_clauses_counting(
        clauses: impl IntoIterator<Item = Clause>,
    ) -> (ClauseSet, usize) {
        let mut set = BTreeSet::new();
        let mut duplicates = 0;
        for clause in clauses {
            if !set.insert(clause) {
                duplicates += 1;
            }
        }
        (ClauseSet { clauses: set }, duplicates)
    }

    pub fn from_clauses(clauses: impl IntoIterator<Item = Clause>) -> ClauseSet {
        ClauseSet::from_clauses_counting(clauses).0
    }

    /// Builds from DIMACS-coded clauses, e.g. `[[1, 2], [-1]]`.
    pub fn from_dimacs(clauses: &[&[i64]]) -> Result<ClauseSet, TautologyError> {
        let parsed: Result<Vec<_>, _> =
            clauses.iter().map(|c| Clause::from_dimacs(c)).collect();
        Ok(ClauseSet::from_clauses(parsed?))
    }

    /// c(F): the number of distinct clauses.
    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.iter()
    }

    pub fn contains(&self, clause: &Clause) -> bool {
        self.clauses.contains(clause)
    }

    pub fn insert(&mut self, clause: Clause) -> bool {
        self.clauses.insert(clause)
    }

    pub fn remove(&mut self, clause: &Clause) -> bool {
        self.clauses.remove(clause)
    }

    /// The set without one clause (`F ∖ {C}`).
    pub fn without(&self, clause: &Clause) -> ClauseSet {
        let mut copy = self.clone();
        copy.remove(clause);
        copy
    }

    /// var(F): exactly the variables occurring in some clause.
    pub fn variables(&self) -> BTreeSet<Var> {
        self.clauses.iter().flat_map(|c| c.vars()).collect()
    }

    /// n(F): the number of occurring variables.
    pub fn var_count(&self) -> usize {
        self.variables().len()
    }

    /// δ(F) = c(F) − n(F); negative values are possible outside MU.
    pub fn deficiency(&self) -> i64 {
        self.clause_count() as i64 - self.var_count() as i64
    }

    pub fn metrics(&self) -> Metrics {
        let mut degrees: BTreeMap<Var, Degree> = BTreeMap::new();
        for clause in &self.clauses {
            for lit in clause.iter() {
                let d = degrees.entry(lit.var()).or_default();
                if lit.is_positive() {
                    d.positive += 1;
                } else {
                    d.negative += 1;
                }
            }
        }
        let var_count = degrees.len();
        let clause_count = self.clause_count();
        let min_var_degree = degrees.values().map(Degree::total).min();
        let full_clause_count = self
            .clauses
            .iter()
            .filter(|c| c.len() == var_count && var_count > 0)
            .count();
        Metrics {
            var_count,
            clause_count,
            deficiency: clause_count as i64 - var_count as i64,
            min_var_degree,
            full_clause_count,
            degrees,
        }
    }

    /// Applies a partial assignment: clauses with a satisfied literal are
    /// removed, falsified literals are stripped from the rest.
    pub fn apply(&self, assignment: &Assignment) -> ClauseSet {
        let mut result = BTreeSet::new();
        'clauses: for clause in &self.clauses {
            let mut remaining = Vec::with_capacity(clause.len());
            for lit in clause.iter() {
                match assignment.value_of(lit) {
                    Some(true) => continue 'clauses,
                    Some(false) => {}
                    None => remaining.push(lit),
                }
            }
            // Literal removal cannot introduce a clash.
            result.insert(Clause::new(remaining).expect("sub-clause is non-tautological"));
        }
        ClauseSet { clauses: result }
    }

    /// True iff every two distinct clauses share a variable in opposite signs.
    pub fn is_hitting(&self) -> bool {
        let clauses: Vec<&Clause> = self.clauses.iter().collect();
        for (i, a) in clauses.iter().enumerate() {
            for b in &clauses[i + 1..] {
                if !a.clashes_with(b) {
                    return false;
                }
            }
        }
        true
    }

    pub fn to_dimacs(&self) -> Vec<Vec<i64>> {
        self.clauses.iter().map(|c| c.to_dimacs()).collect()
    }
}

impl FromIterator<Clause> for ClauseSet {
    fn from_iter<I: IntoIterator<Item = Clause>>(iter: I) -> ClauseSet {
        ClauseSet::from_clauses(iter)
    }
}

impl<'a> IntoIterator for &'a ClauseSet {
    type Item = &'a Clause;
    type IntoIter = std::collections::btree_set::Iter<'a, Clause>;

    fn into_iter(self) -> Self::IntoIter {
        self.clauses.iter()
    }
}

/// Occurrence counts of one variable.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Degree {
    pub positive: usize,
    pub negative: usize,
}

impl Degree {
    pub fn total(&self) -> usize {
        self.positive + self.negative
    }

    pub fn min_sign(&self) -> usize {
        self.positive.min(self.negative)
    }
}

/// The numeric summary of a clause-set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Metrics {
    pub var_count: usize,
    pub clause_count: usize,
    pub deficiency: i64,
    /// Minimum total occurrence count over occurring variables; absent when
    /// there are none.
    pub min_var_degree: Option<usize>,
    /// Number of clauses of length n(F). Zero when var(F) is empty.
    pub full_clause_count: usize,
    pub degrees: BTreeMap<Var, Degree>,
}

/// Builds a [`Clause`] from signed integer literals; panics on a clash.
///
/// ```
/// use mucnf::clause;
/// let c = clause![1, -2];
/// assert_eq!(c.len(), 2);
/// ```
#[macro_export]
macro_rules! clause {
    ($($lit:expr),* $(,)?) => {
        $crate::Clause::from_dimacs(&[$($lit),*]).expect("valid clause literals")
    };
}

/// Builds a [`ClauseSet`] from clause literal lists; panics on a clash.
///
/// ```
/// use mucnf::cnf;
/// let f = cnf![[1], [-1]];
/// assert_eq!(f.clause_count(), 2);
/// ```
#[macro_export]
macro_rules! cnf {
    ($([$($lit:expr),* $(,)?]),* $(,)?) => {
        $crate::ClauseSet::from_clauses(vec![$($crate::clause![$($lit),*]),*])
    };
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::Assignment;

    #[test]
    fn literal_complement_is_involutive() {
        let lit = Var::new(3).positive();
        assert_eq!(lit.complement().complement(), lit);
    }

    #[test]
    fn literal_order_groups_by_variable_positive_first() {
        let l = |c| Lit::from_dimacs(c).unwrap();
        let mut lits = vec![l(-1), l(2), l(1), l(-2)];
        lits.sort();
        assert_eq!(lits, vec![l(1), l(-1), l(2), l(-2)]);
    }

    #[test]
    fn clause_rejects_clash_and_collapses_duplicates() {
        assert_eq!(
            Clause::from_dimacs(&[1, -1]),
            Err(TautologyError(Var::new(1)))
        );
        let c = Clause::from_dimacs(&[2, 1, 2]).unwrap();
        assert_eq!(c.to_dimacs(), vec![1, 2]);
    }

    #[test]
    fn clause_order_prefers_prefixes_and_positive_signs() {
        let a = clause![1];
        let b = clause![1, 2];
        let c = clause![1, -2];
        let d = clause![-1];
        assert!(a < b && b < c && c < d);
    }

    #[test]
    fn clause_set_collapses_duplicates() {
        let (f, dups) = ClauseSet::from_clauses_counting(vec![clause![1, 2], clause![1, 2]]);
        assert_eq!(f.clause_count(), 1);
        assert_eq!(dups, 1);
    }

    #[test]
    fn metrics_on_smallest_mu() {
        let f = cnf![[1], [-1]];
        let m = f.metrics();
        assert_eq!(m.var_count, 1);
        assert_eq!(m.clause_count, 2);
        assert_eq!(m.deficiency, 1);
        assert_eq!(m.min_var_degree, Some(2));
        assert_eq!(m.full_clause_count, 2);
    }

    #[test]
    fn metrics_on_full_set_over_two_vars() {
        let f = cnf![[1, 2], [1, -2], [-1, 2], [-1, -2]];
        let m = f.metrics();
        assert_eq!(m.var_count, 2);
        assert_eq!(m.clause_count, 4);
        assert_eq!(m.deficiency, 2);
        assert_eq!(m.min_var_degree, Some(4));
        assert_eq!(m.full_clause_count, 4);
    }

    #[test]
    fn metrics_on_empty_set() {
        let f = ClauseSet::new();
        let m = f.metrics();
        assert_eq!(m.var_count, 0);
        assert_eq!(m.clause_count, 0);
        assert_eq!(m.deficiency, 0);
        assert_eq!(m.min_var_degree, None);
        assert_eq!(m.full_clause_count, 0);
    }

    #[test]
    fn empty_clause_is_not_full_when_vars_occur() {
        let f = cnf![[], [1]];
        assert_eq!(f.metrics().full_clause_count, 1);
    }

    #[test]
    fn apply_satisfied_clause_removed_falsified_literal_stripped() {
        let f = cnf![[1, 2], [-1]];
        let phi = Assignment::from_pairs([(Var::new(1), true)]);
        let applied = f.apply(&phi);
        assert_eq!(applied, cnf![[]]);
    }

    #[test]
    fn apply_empty_assignment_is_identity() {
        let f = cnf![[1], [-1]];
        assert_eq!(f.apply(&Assignment::empty()), f);
    }

    #[test]
    fn apply_partial_on_full_two_var_set() {
        let f = cnf![[1, 2], [1, -2], [-1, 2], [-1, -2]];
        let phi = Assignment::from_pairs([(Var::new(1), true)]);
        assert_eq!(f.apply(&phi), cnf![[2], [-2]]);
    }

    #[test]
    fn hitting_detection() {
        let a2 = cnf![[1, 2], [1, -2], [-1, 2], [-1, -2]];
        assert!(a2.is_hitting());
        assert!(!cnf![[1], [2]].is_hitting());
        assert!(cnf![[1], [-1, 2], [-1, -2]].is_hitting());
    }

    #[test]
    fn hitting_is_monotone_under_clause_removal() {
        let f = cnf![[1], [-1, 2], [-1, -2]];
        for clause in f.iter() {
            assert!(f.without(clause).is_hitting());
        }
    }
}
