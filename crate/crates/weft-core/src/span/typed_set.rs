//! Typed finite sets and wire names.
//!
//! A typed finite set is an ordered list of distinct element names, each
//! carrying a port type; the order is the choice of basis enumeration that
//! turns spans into matrices. Wire names are binary fusion trees over atoms:
//! multiplying matrices pairs the traversed wires, and a chain of
//! multiplications displays flattened, so the product of wires a, b, c prints
//! as `(a,b,c)`.

use crate::diagram::PortType;
use crate::span::SpanError;
use std::fmt;

/// Ordered list of distinct named, typed elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypedFiniteSet {
    elems: Vec<(String, PortType)>,
}

impl TypedFiniteSet {
    pub fn new(elems: Vec<(String, PortType)>) -> Result<Self, SpanError> {
        for (k, (name, _)) in elems.iter().enumerate() {
            if elems[..k].iter().any(|(other, _)| other == name) {
                return Err(SpanError::BasisMismatch(format!(
                    "duplicate element name {name}"
                )));
            }
        }
        Ok(TypedFiniteSet { elems })
    }

    pub fn empty() -> Self {
        TypedFiniteSet { elems: Vec::new() }
    }

    /// Elements named by their 1-based position.
    pub fn positional(types: &[PortType]) -> Self {
        TypedFiniteSet {
            elems: types
                .iter()
                .enumerate()
                .map(|(k, t)| ((k + 1).to_string(), t.clone()))
                .collect(),
        }
    }

    /// Elements sharing one type, named by the given list.
    pub fn uniform(names: &[&str], ty: &PortType) -> Result<Self, SpanError> {
        TypedFiniteSet::new(
            names
                .iter()
                .map(|n| (n.to_string(), ty.clone()))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.elems[i].0
    }

    pub fn type_at(&self, i: usize) -> &PortType {
        &self.elems[i].1
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &PortType)> {
        self.elems.iter().map(|(n, t)| (n.as_str(), t))
    }

    pub fn position(&self, name: &str) -> Option<usize> {
        self.elems.iter().position(|(n, _)| n == name)
    }

    /// Same length and pointwise equal types; names are presentation only.
    pub fn types_match(&self, other: &TypedFiniteSet) -> bool {
        self.len() == other.len()
            && self
                .elems
                .iter()
                .zip(&other.elems)
                .all(|((_, a), (_, b))| a == b)
    }

    /// Concatenation; fails on a name collision.
    pub fn concat(&self, other: &TypedFiniteSet) -> Result<TypedFiniteSet, SpanError> {
        let mut elems = self.elems.clone();
        elems.extend(other.elems.iter().cloned());
        TypedFiniteSet::new(elems)
    }

    /// The same elements enumerated in a new order; `perm[k]` is the old
    /// index of the element placed at position k.
    pub fn permuted(&self, perm: &[usize]) -> Result<TypedFiniteSet, SpanError> {
        if !is_permutation_of_indices(perm, self.len()) {
            return Err(SpanError::BasisMismatch(format!(
                "{perm:?} is not a permutation of 0..{}",
                self.len()
            )));
        }
        Ok(TypedFiniteSet {
            elems: perm.iter().map(|&k| self.elems[k].clone()).collect(),
        })
    }
}

pub(crate) fn is_permutation_of_indices(perm: &[usize], n: usize) -> bool {
    perm.len() == n && {
        let mut seen = vec![false; n];
        perm.iter().all(|&k| {
            k < n && !std::mem::replace(&mut seen[k], true)
        })
    }
}

/// A wire name: an atom or a fusion of two wire names.
///
/// Fusion trees compare structurally, so products from different inputs never
/// collide by accident; display flattens left-associatively.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WireName {
    Atom(String),
    Fused(Box<WireName>, Box<WireName>),
}

impl WireName {
    pub fn atom(name: impl Into<String>) -> Self {
        WireName::Atom(name.into())
    }

    pub fn fuse(self, other: WireName) -> Self {
        WireName::Fused(Box::new(self), Box::new(other))
    }

    /// Atoms in traversal order.
    pub fn atoms(&self) -> Vec<&str> {
        match self {
            WireName::Atom(a) => vec![a.as_str()],
            WireName::Fused(l, r) => {
                let mut out = l.atoms();
                out.extend(r.atoms());
                out
            }
        }
    }

    /// A distinct name derived from this one: the rightmost atom gains a
    /// prime. Used to restore disjointness when two matrices are merged.
    pub fn primed(&self) -> WireName {
        match self {
            WireName::Atom(a) => WireName::Atom(format!("{a}'")),
            WireName::Fused(l, r) => WireName::Fused(l.clone(), Box::new(r.primed())),
        }
    }
}

impl From<&str> for WireName {
    fn from(name: &str) -> Self {
        WireName::atom(name)
    }
}

impl fmt::Display for WireName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WireName::Atom(a) => f.write_str(a),
            WireName::Fused(..) => write!(f, "({})", self.atoms().join(",")),
        }
    }
}
