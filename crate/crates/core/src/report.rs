//! Verification reports: named chains of exact values that must agree.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::poly::Coeff;
use crate::varset::VarSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Identity {
    Theorem,
    CombinatorialSums,
    SequentialSums,
    ReorderingSums,
    ExcedanceEquivalence,
}

impl Identity {
    pub fn name(self) -> &'static str {
        match self {
            Identity::Theorem => "theorem",
            Identity::CombinatorialSums => "combinatorial-sums",
            Identity::SequentialSums => "sequential-sums",
            Identity::ReorderingSums => "reordering-sums",
            Identity::ExcedanceEquivalence => "excedance-equivalence",
        }
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Expression {
    pub label: String,
    #[serde(serialize_with = "serialize_coeff")]
    pub value: Coeff,
}

/// Expressions that must all evaluate to the same integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chain {
    pub name: String,
    pub expressions: Vec<Expression>,
}

impl Chain {
    pub fn new(name: impl Into<String>) -> Self {
        Chain {
            name: name.into(),
            expressions: Vec::new(),
        }
    }

    pub fn push(&mut self, label: impl Into<String>, value: Coeff) -> &mut Self {
        self.expressions.push(Expression {
            label: label.into(),
            value,
        });
        self
    }

    pub fn with(mut self, label: impl Into<String>, value: Coeff) -> Self {
        self.push(label, value);
        self
    }

    pub fn holds(&self) -> bool {
        self.mismatch().is_none()
    }

    fn mismatch(&self) -> Option<(&Expression, &Expression)> {
        let first = self.expressions.first()?;
        self.expressions
            .iter()
            .find(|e| e.value != first.value)
            .map(|e| (first, e))
    }
}

/// One verified instance of an identity at a given `n` (and subset `K`,
/// when the identity is indexed by one).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: Identity,
    pub n: usize,
    pub subset: Option<VarSet>,
    pub chains: Vec<Chain>,
    pub pass: bool,
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub assumptions: Vec<String>,
}

impl IdentityReport {
    /// Computes `pass` and, on failure, a witness naming the first chain
    /// that disagrees.
    pub fn new(identity: Identity, n: usize, subset: Option<VarSet>, chains: Vec<Chain>) -> Self {
        let witness = chains.iter().find_map(|c| {
            c.mismatch().map(|(a, b)| {
                format!(
                    "{}: {} = {} but {} = {}",
                    c.name, a.label, a.value, b.label, b.value
                )
            })
        });
        IdentityReport {
            identity,
            n,
            subset,
            chains,
            pass: witness.is_none(),
            witness,
            assumptions: Vec::new(),
        }
    }

    pub fn with_witness(mut self, witness: Option<String>) -> Self {
        if let Some(w) = witness {
            self.pass = false;
            self.witness = Some(match self.witness.take() {
                Some(prev) => format!("{prev}; {w}"),
                None => w,
            });
        }
        self
    }

    pub fn with_assumption(mut self, note: impl Into<String>) -> Self {
        self.assumptions.push(note.into());
        self
    }

    /// The common value of the first chain, if it holds.
    pub fn value(&self) -> Option<Coeff> {
        let chain = self.chains.first()?;
        chain
            .holds()
            .then(|| chain.expressions.first().map(|e| e.value))?
    }

    /// One JSON line, no trailing newline.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }
}

fn serialize_coeff<S: Serializer>(c: &Coeff, s: S) -> Result<S::Ok, S::Error> {
    const MAX_SAFE: Coeff = (1 << 53) - 1;
    if c.abs() <= MAX_SAFE {
        s.serialize_i64(*c as i64)
    } else {
        s.serialize_str(&c.to_string())
    }
}
