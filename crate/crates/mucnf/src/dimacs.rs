//! DIMACS CNF ingestion and byte-stable serialization.
//!
//! The header is advisory: actual `n`/`c` are computed from content, with a
//! warning on mismatch. Duplicate clauses collapse with a warning. A
//! tautological clause is a hard error unless stripping is requested.

use std::fmt;

use thiserror::Error;

use crate::cnf::{Clause, ClauseSet, Lit};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("missing DIMACS header line `p cnf <vars> <clauses>`")]
    MissingHeader,

    #[error("malformed header: {0:?}")]
    MalformedHeader(String),

    #[error("malformed token {token:?}")]
    MalformedToken { token: String },

    #[error("literal {0} out of representable range")]
    LiteralOutOfRange(i64),

    #[error("clause {index} is tautological (pass strip-tautologies to drop such clauses)")]
    TautologicalClause { index: usize },

    #[error("unterminated clause at end of input (missing 0)")]
    UnterminatedClause,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseWarning {
    /// A clause equal to an earlier one was dropped. Index is 1-based in
    /// order of appearance.
    DuplicateClause { index: usize },
    /// A tautological clause was dropped under the strip option.
    StrippedTautology { index: usize },
    HeaderMismatch {
        declared_vars: usize,
        declared_clauses: usize,
        actual_vars: usize,
        actual_clauses: usize,
    },
}

impl fmt::Display for ParseWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseWarning::DuplicateClause { index } => {
                write!(f, "duplicate clause {index} collapsed")
            }
            ParseWarning::StrippedTautology { index } => {
                write!(f, "tautological clause {index} stripped")
            }
            ParseWarning::HeaderMismatch {
                declared_vars,
                declared_clauses,
                actual_vars,
                actual_clauses,
            } => write!(
                f,
                "header declares {declared_vars} vars / {declared_clauses} clauses, \
                 content has {actual_vars} / {actual_clauses}"
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Drop tautological clauses (with a warning) instead of failing.
    pub strip_tautologies: bool,
}

#[derive(Debug, Clone)]
pub struct Parsed {
    pub clause_set: ClauseSet,
    pub warnings: Vec<ParseWarning>,
    pub duplicate_clauses: usize,
    pub stripped_tautologies: usize,
}

pub fn parse_dimacs(text: &str, options: ParseOptions) -> Result<Parsed, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut raw_clauses: Vec<Vec<i64>> = Vec::new();
    let mut current: Vec<i64> = Vec::new();

    for line in text.lines() {
        let trimmed = line.trim_start();
        if trimmed.starts_with('c') || trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(ParseError::MalformedHeader(line.to_string()));
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            match fields.as_slice() {
                ["p", "cnf", vars, clauses] => {
                    let v = vars
                        .parse::<usize>()
                        .map_err(|_| ParseError::MalformedHeader(line.to_string()))?;
                    let c = clauses
                        .parse::<usize>()
                        .map_err(|_| ParseError::MalformedHeader(line.to_string()))?;
                    header = Some((v, c));
                }
                _ => return Err(ParseError::MalformedHeader(line.to_string())),
            }
            continue;
        }
        if header.is_none() {
            return Err(ParseError::MissingHeader);
        }
        for token in trimmed.split_whitespace() {
            let code = token
                .parse::<i64>()
                .map_err(|_| ParseError::MalformedToken { token: token.to_string() })?;
            if code == 0 {
                // 0 is the clause terminator wherever it appears.
                raw_clauses.push(std::mem::take(&mut current));
            } else {
                current.push(code);
            }
        }
    }

    let (declared_vars, declared_clauses) = header.ok_or(ParseError::MissingHeader)?;
    if !current.is_empty() {
        return Err(ParseError::UnterminatedClause);
    }

    let mut warnings = Vec::new();
    let mut clauses = Vec::new();
    let mut stripped_tautologies = 0;
    for (i, codes) in raw_clauses.iter().enumerate() {
        let index = i + 1;
        let mut lits = Vec::with_capacity(codes.len());
        for &code in codes {
            lits.push(Lit::from_dimacs(code).ok_or(ParseError::LiteralOutOfRange(code))?);
        }
        match Clause::new(lits) {
            Ok(clause) => clauses.push((index, clause)),
            Err(_) if options.strip_tautologies => {
                stripped_tautologies += 1;
                warnings.push(ParseWarning::StrippedTautology { index });
            }
            Err(_) => return Err(ParseError::TautologicalClause { index }),
        }
    }

    let mut clause_set = ClauseSet::new();
    let mut duplicate_clauses = 0;
    for (index, clause) in clauses {
        if !clause_set.insert(clause) {
            duplicate_clauses += 1;
            warnings.push(ParseWarning::DuplicateClause { index });
        }
    }

    let actual_vars = clause_set.var_count();
    let actual_clauses = clause_set.clause_count();
    if declared_vars != actual_vars || declared_clauses != actual_clauses {
        warnings.push(ParseWarning::HeaderMismatch {
            declared_vars,
            declared_clauses,
            actual_vars,
            actual_clauses,
        });
    }

    Ok(Parsed { clause_set, warnings, duplicate_clauses, stripped_tautologies })
}

/// Canonical serialization: sorted literals within each clause, clauses in
/// lexicographic order, header counting the maximum variable id. Reparsing
/// yields an equal clause-set, and equal clause-sets render byte-equal.
pub fn render_dimacs(clause_set: &ClauseSet) -> String {
    let max_var = clause_set
        .variables()
        .iter()
        .map(|v| v.id())
        .max()
        .unwrap_or(0);
    let mut out = format!("p cnf {} {}\n", max_var, clause_set.clause_count());
    for clause in clause_set.iter() {
        out.push_str(&clause.dimacs_line());
        out.push('\n');
    }
    out
}
