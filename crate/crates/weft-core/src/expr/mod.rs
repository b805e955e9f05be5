//! Expression frontend: a small ASCII syntax for building morphisms.
//!
//! A source file is a sequence of declarations:
//!
//! ```text
//! ob x y z                          # objects
//! hom f : x -> x * y                # generators (I is the empty list)
//! term h = (f * id[z]) ; (id[x] * g)
//! ```
//!
//! `*` is the tensor and binds tighter than `;`; both associate left.
//! Atoms are generator or term names, `id[types]`, `braid[left|right]`,
//! `perm[types | (1 2)(3)]` with one-line cycle notation sending input i to
//! output sigma(i), `I` for the monoidal unit, and parenthesized
//! expressions. A term may refer to earlier terms; the reference is
//! replaced by that term's expression.

mod lexer;
mod parser;

use crate::diagram::PortType;
use crate::smc::{self, Morphism, SmcError};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrontendError {
    #[error("{line}:{col}: {msg}")]
    SyntaxError {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("unknown symbol `{name}`")]
    UnknownSymbol { name: String },
    #[error("type mismatch{context}: expected {expected:?}, found {actual:?}")]
    TypeError {
        expected: Vec<PortType>,
        actual: Vec<PortType>,
        context: String,
    },
    #[error(transparent)]
    Invalid(#[from] SmcError),
}

/// The declared typing context: objects and generator signatures.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    objects: BTreeSet<PortType>,
    generators: BTreeMap<String, (Vec<PortType>, Vec<PortType>)>,
}

impl Signature {
    pub fn new() -> Self {
        Signature::default()
    }

    pub fn declare_object(&mut self, t: PortType) {
        self.objects.insert(t);
    }

    /// Declares a generator; its port types must already be declared.
    pub fn declare_generator(
        &mut self,
        name: &str,
        dom: Vec<PortType>,
        cod: Vec<PortType>,
    ) -> Result<(), FrontendError> {
        for t in dom.iter().chain(&cod) {
            if !self.objects.contains(t) {
                return Err(FrontendError::UnknownSymbol {
                    name: t.to_string(),
                });
            }
        }
        self.generators.insert(name.to_string(), (dom, cod));
        Ok(())
    }

    pub fn has_object(&self, t: &PortType) -> bool {
        self.objects.contains(t)
    }

    pub fn objects(&self) -> impl Iterator<Item = &PortType> {
        self.objects.iter()
    }

    pub fn generator(&self, name: &str) -> Option<(&[PortType], &[PortType])> {
        self.generators
            .get(name)
            .map(|(d, c)| (d.as_slice(), c.as_slice()))
    }

    pub fn generators(&self) -> impl Iterator<Item = (&str, (&[PortType], &[PortType]))> {
        self.generators
            .iter()
            .map(|(n, (d, c))| (n.as_str(), (d.as_slice(), c.as_slice())))
    }
}

/// Morphism syntax. `Perm` carries the resolved 1-based permutation sending
/// input i to output sigma[i-1].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expression {
    Gen(String),
    Id(Vec<PortType>),
    Braid(Vec<PortType>, Vec<PortType>),
    Perm(Vec<PortType>, Vec<usize>),
    Seq(Box<Expression>, Box<Expression>),
    Tensor(Box<Expression>, Box<Expression>),
    Unit,
}

/// Parses a source file into its signature and named terms, typechecking
/// each term as it is declared. Terms are returned in declaration order.
pub fn parse(source: &str) -> Result<(Signature, Vec<(String, Expression)>), FrontendError> {
    parser::parse(source)
}

/// Infers the domain and codomain of an expression, or explains why it has
/// none.
pub fn typecheck(
    e: &Expression,
    sig: &Signature,
) -> Result<(Vec<PortType>, Vec<PortType>), FrontendError> {
    match e {
        Expression::Gen(name) => sig
            .generator(name)
            .map(|(d, c)| (d.to_vec(), c.to_vec()))
            .ok_or_else(|| FrontendError::UnknownSymbol { name: name.clone() }),
        Expression::Id(ts) => Ok((ts.clone(), ts.clone())),
        Expression::Braid(a, b) => Ok((
            a.iter().chain(b).cloned().collect(),
            b.iter().chain(a).cloned().collect(),
        )),
        Expression::Perm(ts, sigma) => {
            let n = ts.len();
            let mut seen = vec![false; n];
            let ok = sigma.len() == n
                && sigma
                    .iter()
                    .all(|&j| (1..=n).contains(&j) && !std::mem::replace(&mut seen[j - 1], true));
            if !ok {
                return Err(SmcError::BadPermutation {
                    sigma: sigma.clone(),
                    len: n,
                }
                .into());
            }
            let mut cod = vec![PortType::new(""); n];
            for (i, &j) in sigma.iter().enumerate() {
                cod[j - 1] = ts[i].clone();
            }
            Ok((ts.clone(), cod))
        }
        Expression::Seq(l, r) => {
            let (ld, lc) = typecheck(l, sig)?;
            let (rd, rc) = typecheck(r, sig)?;
            if lc != rd {
                return Err(FrontendError::TypeError {
                    expected: lc,
                    actual: rd,
                    context: " in `;`".into(),
                });
            }
            Ok((ld, rc))
        }
        Expression::Tensor(l, r) => {
            let (ld, lc) = typecheck(l, sig)?;
            let (rd, rc) = typecheck(r, sig)?;
            Ok((
                ld.into_iter().chain(rd).collect(),
                lc.into_iter().chain(rc).collect(),
            ))
        }
        Expression::Unit => Ok((vec![], vec![])),
    }
}

/// Compiles a well-typed expression to its morphism by structural
/// recursion into the category operations.
pub fn compile(e: &Expression, sig: &Signature) -> Result<Morphism, FrontendError> {
    typecheck(e, sig)?;
    build(e, sig)
}

fn build(e: &Expression, sig: &Signature) -> Result<Morphism, FrontendError> {
    match e {
        Expression::Gen(name) => {
            let (dom, cod) = sig
                .generator(name)
                .ok_or_else(|| FrontendError::UnknownSymbol { name: name.clone() })?;
            Ok(smc::generator(name, dom.to_vec(), cod.to_vec()))
        }
        Expression::Id(ts) => Ok(smc::id(ts)),
        Expression::Braid(a, b) => Ok(smc::braid(a, b)),
        Expression::Perm(ts, sigma) => Ok(smc::permute(ts, sigma)?),
        Expression::Seq(l, r) => Ok(smc::compose(&build(l, sig)?, &build(r, sig)?)?),
        Expression::Tensor(l, r) => Ok(smc::otimes(&build(l, sig)?, &build(r, sig)?)),
        Expression::Unit => Ok(smc::id(&[])),
    }
}

fn types_str(ts: &[PortType]) -> String {
    if ts.is_empty() {
        "I".to_string()
    } else {
        ts.iter()
            .map(|t| t.to_string())
            .collect::<Vec<_>>()
            .join("*")
    }
}

fn cycles_str(sigma: &[usize]) -> String {
    let n = sigma.len();
    let mut seen = vec![false; n];
    let mut out = String::new();
    for start in 1..=n {
        if seen[start - 1] {
            continue;
        }
        out.push('(');
        let mut k = start;
        loop {
            seen[k - 1] = true;
            out.push_str(&k.to_string());
            k = sigma[k - 1];
            if k == start {
                break;
            }
            out.push(' ');
        }
        out.push(')');
    }
    out
}

/// Renders an expression in the surface syntax. The output re-parses to a
/// structurally identical expression.
pub fn print_expression(e: &Expression) -> String {
    // Precedence climbs: `;` = 0, `*` = 1, atoms = 2. A child prints bare
    // only if its own level is at least the context's.
    fn pp(e: &Expression, prec: u8, out: &mut String) {
        match e {
            Expression::Gen(name) => out.push_str(name),
            Expression::Unit => out.push('I'),
            Expression::Id(ts) => {
                out.push_str("id[");
                out.push_str(&types_str(ts));
                out.push(']');
            }
            Expression::Braid(a, b) => {
                out.push_str("braid[");
                out.push_str(&types_str(a));
                out.push('|');
                out.push_str(&types_str(b));
                out.push(']');
            }
            Expression::Perm(ts, sigma) => {
                out.push_str("perm[");
                out.push_str(&types_str(ts));
                out.push_str(" | ");
                out.push_str(&cycles_str(sigma));
                out.push(']');
            }
            Expression::Seq(l, r) => {
                let wrap = prec > 0;
                if wrap {
                    out.push('(');
                }
                pp(l, 0, out);
                out.push_str(" ; ");
                pp(r, 1, out);
                if wrap {
                    out.push(')');
                }
            }
            Expression::Tensor(l, r) => {
                let wrap = prec > 1;
                if wrap {
                    out.push('(');
                }
                pp(l, 1, out);
                out.push_str(" * ");
                pp(r, 2, out);
                if wrap {
                    out.push(')');
                }
            }
        }
    }
    let mut out = String::new();
    pp(e, 0, &mut out);
    out
}
