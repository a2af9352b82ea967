//! Complete, deterministic satisfiability decision and model enumeration.
//!
//! The decision procedure is plain backtracking with unit propagation and
//! pure-literal elimination; branching is lowest-variable-id first with the
//! false branch explored first, so equal inputs always produce equal models.
//! Hard variable caps turn intractable inputs into refusals.

use std::collections::{BTreeMap, BTreeSet};

use crate::cnf::{Clause, ClauseSet, Lit, Var};
use crate::error::{check_cap, Cap, Error, Result};

/// A partial map from variables to truth values.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Assignment {
    bindings: BTreeMap<Var, bool>,
}

impl Assignment {
    pub fn empty() -> Assignment {
        Assignment::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Var, bool)>) -> Assignment {
        Assignment { bindings: pairs.into_iter().collect() }
    }

    pub fn set(&mut self, var: Var, value: bool) {
        self.bindings.insert(var, value);
    }

    pub fn get(&self, var: Var) -> Option<bool> {
        self.bindings.get(&var).copied()
    }

    pub fn binds(&self, var: Var) -> bool {
        self.bindings.contains_key(&var)
    }

    /// Truth value of a literal under the assignment, `None` if unbound.
    pub fn value_of(&self, lit: Lit) -> Option<bool> {
        self.get(lit.var()).map(|v| v == lit.is_positive())
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn domain(&self) -> BTreeSet<Var> {
        self.bindings.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, bool)> + '_ {
        self.bindings.iter().map(|(&v, &b)| (v, b))
    }

    pub fn satisfies_clause(&self, clause: &Clause) -> bool {
        clause.iter().any(|l| self.value_of(l) == Some(true))
    }

    pub fn satisfies(&self, clause_set: &ClauseSet) -> bool {
        clause_set.iter().all(|c| self.satisfies_clause(c))
    }

    /// The assignment as sorted signed DIMACS integers, e.g. `[-1, 2]`.
    pub fn to_dimacs(&self) -> Vec<i64> {
        self.bindings
            .iter()
            .map(|(&v, &b)| v.lit(b).to_dimacs())
            .collect()
    }
}

/// Caps for the oracle's two procedures.
#[derive(Debug, Clone, Copy)]
pub struct SolverLimits {
    /// Maximum n(F) for the backtracking decision.
    pub decision_vars: usize,
    /// Maximum |V| for exhaustive model enumeration.
    pub enumeration_vars: usize,
}

impl Default for SolverLimits {
    fn default() -> SolverLimits {
        SolverLimits { decision_vars: 40, enumeration_vars: 20 }
    }
}

pub fn is_satisfiable(clause_set: &ClauseSet) -> Result<bool> {
    is_satisfiable_with(clause_set, &SolverLimits::default())
}

pub fn is_satisfiable_with(clause_set: &ClauseSet, limits: &SolverLimits) -> Result<bool> {
    Ok(find_model_with(clause_set, limits)?.is_some())
}

/// A deterministic total model over var(F), or `None` when unsatisfiable.
pub fn find_model(clause_set: &ClauseSet) -> Result<Option<Assignment>> {
    find_model_with(clause_set, &SolverLimits::default())
}

pub fn find_model_with(
    clause_set: &ClauseSet,
    limits: &SolverLimits,
) -> Result<Option<Assignment>> {
    let vars = clause_set.variables();
    check_cap(Cap::DecisionVars, limits.decision_vars, vars.len())?;
    let clauses: Vec<Vec<Lit>> = clause_set.iter().map(|c| c.iter().collect()).collect();
    Ok(search(clauses, Assignment::empty()).map(|mut model| {
        // Variables left unbound are don't-cares; fix them to false so the
        // model is total and reproducible.
        for &var in &vars {
            if !model.binds(var) {
                model.set(var, false);
            }
        }
        model
    }))
}

fn reduce(clauses: &[Vec<Lit>], lit: Lit) -> Vec<Vec<Lit>> {
    let mut out = Vec::with_capacity(clauses.len());
    'clauses: for clause in clauses {
        let mut kept = Vec::with_capacity(clause.len());
        for &l in clause {
            if l == lit {
                continue 'clauses;
            }
            if l != lit.complement() {
                kept.push(l);
            }
        }
        out.push(kept);
    }
    out
}

fn search(mut clauses: Vec<Vec<Lit>>, mut assignment: Assignment) -> Option<Assignment> {
    loop {
        if clauses.is_empty() {
            return Some(assignment);
        }
        if clauses.iter().any(|c| c.is_empty()) {
            return None;
        }
        // Unit propagation: lowest unit literal first.
        if let Some(&unit) = clauses
            .iter()
            .filter(|c| c.len() == 1)
            .map(|c| &c[0])
            .min()
        {
            assignment.set(unit.var(), unit.is_positive());
            clauses = reduce(&clauses, unit);
            continue;
        }
        // Pure-literal elimination: lowest pure variable first.
        let mut polarity: BTreeMap<Var, (bool, bool)> = BTreeMap::new();
        for clause in &clauses {
            for &lit in clause {
                let entry = polarity.entry(lit.var()).or_insert((false, false));
                if lit.is_positive() {
                    entry.0 = true;
                } else {
                    entry.1 = true;
                }
            }
        }
        if let Some((&var, &(pos, _))) =
            polarity.iter().find(|(_, &(pos, neg))| pos != neg)
        {
            assignment.set(var, pos);
            clauses = reduce(&clauses, var.lit(pos));
            continue;
        }
        // Branch on the lowest occurring variable, false first.
        let &var = polarity.keys().next().expect("some clause is non-empty");
        for value in [false, true] {
            let mut attempt = assignment.clone();
            attempt.set(var, value);
            if let Some(model) = search(reduce(&clauses, var.lit(value)), attempt) {
                return Some(model);
            }
        }
        return None;
    }
}

/// Exactly the total assignments over `domain` satisfying the clause-set, in
/// ascending binary order (all-false first).
pub fn models_over(clause_set: &ClauseSet, domain: &BTreeSet<Var>) -> Result<Vec<Assignment>> {
    models_over_with(clause_set, domain, &SolverLimits::default())
}

pub fn models_over_with(
    clause_set: &ClauseSet,
    domain: &BTreeSet<Var>,
    limits: &SolverLimits,
) -> Result<Vec<Assignment>> {
    check_cap(Cap::ModelEnumerationVars, limits.enumeration_vars, domain.len())?;
    if !clause_set.variables().is_subset(domain) {
        return Err(Error::VarsOutsideDomain);
    }
    let vars: Vec<Var> = domain.iter().copied().collect();
    let mut models = Vec::new();
    for word in 0u64..(1u64 << vars.len()) {
        let assignment = Assignment::from_pairs(
            vars.iter()
                .enumerate()
                .map(|(i, &v)| (v, word >> i & 1 == 1)),
        );
        if assignment.satisfies(clause_set) {
            models.push(assignment);
        }
    }
    Ok(models)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf;

    fn assignment(pairs: &[(u32, bool)]) -> Assignment {
        Assignment::from_pairs(pairs.iter().map(|&(id, b)| (Var::new(id), b)))
    }

    #[test]
    fn empty_clause_set_is_satisfiable() {
        assert!(is_satisfiable(&ClauseSet::new()).unwrap());
    }

    #[test]
    fn empty_clause_is_unsatisfiable() {
        assert!(!is_satisfiable(&cnf![[]]).unwrap());
    }

    #[test]
    fn full_two_var_set_is_unsatisfiable() {
        assert!(!is_satisfiable(&cnf![[1, 2], [1, -2], [-1, 2], [-1, -2]]).unwrap());
    }

    #[test]
    fn unit_clause_forces_model() {
        assert_eq!(
            find_model(&cnf![[1]]).unwrap(),
            Some(assignment(&[(1, true)]))
        );
    }

    #[test]
    fn clash_has_no_model() {
        assert_eq!(find_model(&cnf![[1], [-1]]).unwrap(), None);
    }

    #[test]
    fn model_is_total_and_deterministic() {
        // Models are {1→T,2→T} and {1→F,2→T}; both bind 2→T.
        let f = cnf![[1, 2], [-1, 2]];
        let model = find_model(&f).unwrap().unwrap();
        assert_eq!(model.get(Var::new(2)), Some(true));
        assert_eq!(model.len(), 2);
        assert_eq!(find_model(&f).unwrap().unwrap(), model);
    }

    #[test]
    fn model_satisfies_every_clause() {
        let f = cnf![[1, 2, 3], [-1, -2], [2, -3], [-2, 3], [1, -3]];
        let model = find_model(&f).unwrap().unwrap();
        assert!(model.satisfies(&f));
        assert!(f.apply(&model).is_empty());
    }

    #[test]
    fn decision_cap_is_a_refusal() {
        let wide = ClauseSet::from_clauses(vec![Clause::new(
            (1..=41).map(|i| Var::new(i).positive()),
        )
        .unwrap()]);
        let err = is_satisfiable(&wide).unwrap_err();
        assert!(err.is_cap_refusal());
        assert!(err.to_string().contains("decision-vars"));
    }

    #[test]
    fn models_over_unit() {
        let domain: BTreeSet<Var> = [Var::new(1)].into();
        let models = models_over(&cnf![[1]], &domain).unwrap();
        assert_eq!(models, vec![assignment(&[(1, true)])]);
    }

    #[test]
    fn models_over_empty_set_is_vacuous() {
        let domain: BTreeSet<Var> = [Var::new(1)].into();
        let models = models_over(&ClauseSet::new(), &domain).unwrap();
        assert_eq!(models.len(), 2);
    }

    #[test]
    fn models_over_two_vars() {
        // Truth table of 4 rows: exactly the two assignments with 1→true.
        let domain: BTreeSet<Var> = [Var::new(1), Var::new(2)].into();
        let models = models_over(&cnf![[1, 2], [1, -2]], &domain).unwrap();
        assert_eq!(models.len(), 2);
        assert!(models.iter().all(|m| m.get(Var::new(1)) == Some(true)));
    }

    #[test]
    fn models_over_rejects_foreign_variables() {
        let domain: BTreeSet<Var> = [Var::new(2)].into();
        assert!(matches!(
            models_over(&cnf![[1]], &domain),
            Err(Error::VarsOutsideDomain)
        ));
    }

    #[test]
    fn agrees_with_exhaustive_on_small_instances() {
        // Deterministic sweep over every clause-set shape on 2 variables
        // would be huge; spot-check a few structured ones instead. The
        // full randomized cross-check lives in the integration suite.
        let cases = [
            cnf![[1], [2], [-1, -2]],
            cnf![[1, 2], [-1, 2], [1, -2]],
            cnf![[1], [-1, 2], [-2]],
            cnf![[]],
        ];
        for f in cases {
            let domain = f.variables();
            let exhaustive = !models_over(&f, &domain).unwrap().is_empty()
                || (domain.is_empty() && f.is_empty());
            assert_eq!(is_satisfiable(&f).unwrap(), exhaustive, "{f:?}");
        }
    }
}
