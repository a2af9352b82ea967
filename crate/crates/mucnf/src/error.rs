use thiserror::Error;

use crate::cnf::Var;

/// Resource caps that guard the exponential procedures. Every refusal names
/// the cap it hit so callers can report it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cap {
    DecisionVars,
    ModelEnumerationVars,
    VmuClauses,
    NormalFormVars,
    IsomorphismVars,
    AutarkyVars,
    IrreducibilityClauses,
    IrreducibilityVars,
    EnumerationNMax,
    EnumerationDeficiency,
}

impl Cap {
    pub fn name(self) -> &'static str {
        match self {
            Cap::DecisionVars => "decision-vars",
            Cap::ModelEnumerationVars => "model-enumeration-vars",
            Cap::VmuClauses => "vmu-clauses",
            Cap::NormalFormVars => "normal-form-vars",
            Cap::IsomorphismVars => "isomorphism-vars",
            Cap::AutarkyVars => "autarky-vars",
            Cap::IrreducibilityClauses => "irreducibility-clauses",
            Cap::IrreducibilityVars => "irreducibility-vars",
            Cap::EnumerationNMax => "enumeration-n-max",
            Cap::EnumerationDeficiency => "enumeration-deficiency",
        }
    }
}

impl std::fmt::Display for Cap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("input exceeds cap {cap} ({actual} > {limit})")]
    CapExceeded { cap: Cap, limit: usize, actual: usize },

    #[error("variable {0} does not occur in the clause-set")]
    VarNotPresent(Var),

    #[error("clause-set mentions variables outside the requested domain")]
    VarsOutsideDomain,

    #[error("operation requires at least one occurring variable")]
    EmptyVariableSet,

    #[error("operation requires an unsatisfiable input")]
    SatisfiableInput,

    #[error("invalid enumeration spec: {0}")]
    InvalidEnumSpec(String),

    #[error("catalog has no entries with occurring variables")]
    EmptyCatalog,

    #[error("malformed catalog: {0}")]
    Catalog(String),
}

impl Error {
    fn cap(cap: Cap, limit: usize, actual: usize) -> Self {
        Error::CapExceeded { cap, limit, actual }
    }

    /// Refusals due to a resource cap, as opposed to invalid input.
    pub fn is_cap_refusal(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub(crate) fn check_cap(cap: Cap, limit: usize, actual: usize) -> Result<(), Error> {
    if actual > limit {
        Err(Error::cap(cap, limit, actual))
    } else {
        Ok(())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
