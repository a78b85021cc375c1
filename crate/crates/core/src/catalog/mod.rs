//! The identity catalog: every sum, lemma and evaluation as data, with
//! hypothesis predicates and verification through either backend.
//!
//! Expressions are stored as DSL text (see [`crate::expr`]) and parsed once on
//! first use. Ids and their order are stable.

mod records;
mod verify;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::expr::{parse, substitute, Bindings, TrigExpr};

pub use verify::{
    admissible_params, conjecture_deviation, conjecture_value, default_mode, sweep,
    verify_instance, JChoice, Status, VerificationResult,
};

type Hypothesis = fn(&Bindings) -> bool;

/// A named parameter and a human-readable description of its domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParamSpec {
    pub name: &'static str,
    pub domain: &'static str,
}

/// One identity of the catalog.
#[derive(Debug, Clone)]
pub struct IdentityRecord {
    pub id: &'static str,
    /// Short description of where the identity comes from and what it says.
    pub anchor: &'static str,
    pub params: &'static [ParamSpec],
    pub hypothesis_text: &'static str,
    pub lhs_src: &'static str,
    pub rhs_src: &'static str,
    pub lhs: TrigExpr,
    pub rhs: TrigExpr,
    /// Limit as k → ∞, for the two conjectured limits.
    pub limit: Option<BigRational>,
    hypothesis: Hypothesis,
    exact_needs_integers: bool,
}

impl IdentityRecord {
    pub fn param_names(&self) -> Vec<&'static str> {
        self.params.iter().map(|p| p.name).collect()
    }

    /// Whether the hypotheses hold. Parameters must already be complete.
    pub fn holds(&self, params: &Bindings) -> bool {
        (self.hypothesis)(params)
    }

    /// Whether exact mode can take these parameter values.
    pub fn exact_allowed(&self, params: &Bindings) -> bool {
        !self.exact_needs_integers || params.values().all(|v| v.is_integer())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown identity '{0}'")]
    UnknownIdentity(String),
    #[error("{id}: missing parameter '{name}'")]
    MissingParam { id: String, name: String },
    #[error("{id}: unexpected parameter '{name}'")]
    UnexpectedParam { id: String, name: String },
    #[error("{id}: hypothesis violated for {params} (requires {requires})")]
    HypothesisViolated {
        id: String,
        params: String,
        requires: String,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Verification backend.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Exact,
    Numeric,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Numeric => "numeric",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "exact" => Ok(Mode::Exact),
            "numeric" => Ok(Mode::Numeric),
            _ => Err(CatalogError::InvalidArgument(format!("unknown mode '{s}'"))),
        }
    }
}

static CATALOG: OnceLock<Vec<IdentityRecord>> = OnceLock::new();

/// All identities, in their stable order.
pub fn list_identities() -> &'static [IdentityRecord] {
    CATALOG.get_or_init(|| {
        records::raw_records()
            .into_iter()
            .map(|r| IdentityRecord {
                id: r.id,
                anchor: r.anchor,
                params: r.params,
                hypothesis_text: r.hypothesis_text,
                lhs_src: r.lhs,
                rhs_src: r.rhs,
                lhs: parse(r.lhs).unwrap_or_else(|e| panic!("{} lhs: {e}", r.id)),
                rhs: parse(r.rhs).unwrap_or_else(|e| panic!("{} rhs: {e}", r.id)),
                limit: r
                    .limit
                    .map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q))),
                hypothesis: r.hypothesis,
                exact_needs_integers: r.exact_needs_integers,
            })
            .collect()
    })
}

/// Case-insensitive lookup by id.
pub fn find_identity(id: &str) -> Result<&'static IdentityRecord, CatalogError> {
    list_identities()
        .iter()
        .find(|r| r.id.eq_ignore_ascii_case(id))
        .ok_or_else(|| CatalogError::UnknownIdentity(id.to_string()))
}

fn check_names(record: &IdentityRecord, params: &Bindings) -> Result<(), CatalogError> {
    let declared: BTreeSet<&str> = record.params.iter().map(|p| p.name).collect();
    if let Some(name) = declared.iter().find(|n| !params.contains_key(**n)) {
        return Err(CatalogError::MissingParam {
            id: record.id.to_string(),
            name: name.to_string(),
        });
    }
    if let Some(name) = params.keys().find(|k| !declared.contains(k.as_str())) {
        return Err(CatalogError::UnexpectedParam {
            id: record.id.to_string(),
            name: name.clone(),
        });
    }
    Ok(())
}

/// True iff the identity's hypotheses hold for `params`.
pub fn validate_params(id: &str, params: &Bindings) -> Result<bool, CatalogError> {
    let record = find_identity(id)?;
    check_names(record, params)?;
    Ok(record.holds(params))
}

/// `name=value` pairs in declaration order.
pub fn format_params(params: &Bindings) -> String {
    let parts: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    if parts.is_empty() {
        "no parameters".to_string()
    } else {
        parts.join(", ")
    }
}

/// Both sides with the parameters substituted.
pub fn instantiate(id: &str, params: &Bindings) -> Result<(TrigExpr, TrigExpr), CatalogError> {
    let record = find_identity(id)?;
    check_names(record, params)?;
    if !record.holds(params) {
        return Err(CatalogError::HypothesisViolated {
            id: record.id.to_string(),
            params: format_params(params),
            requires: record.hypothesis_text.to_string(),
        });
    }
    let sub = |e: &TrigExpr| {
        substitute(e, params).map_err(|err| CatalogError::InvalidArgument(err.to_string()))
    };
    Ok((sub(&record.lhs)?, sub(&record.rhs)?))
}
