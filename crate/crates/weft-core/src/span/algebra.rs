//! Spans of typed finite sets and their matrix calculus.
//!
//! A span holds an apex of named wires with two legs into a domain and a
//! codomain typed set. Fully decomposing both feet into singletons presents
//! the span as a matrix whose (i, j) entry is the set of wires from the i-th
//! domain element to the j-th codomain element; every operation here is
//! phrased on that presentation. Multiplication composes spans (entrywise
//! sums of products, where a product pairs wire names and a sum is disjoint
//! union), addition is entrywise disjoint union over the same bases, and
//! component/embed restrict to and include into chosen blocks.

use super::typed_set::{TypedFiniteSet, WireName};
use super::SpanError;
use std::collections::BTreeSet;
use std::fmt::Write as _;

/// A span dom <- apex -> cod; legs are stored as basis indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Span {
    dom: TypedFiniteSet,
    cod: TypedFiniteSet,
    wires: Vec<(WireName, usize, usize)>,
}

impl Span {
    /// Wires are (name, dom index, cod index); names must be distinct, the
    /// indices in range, and endpoint types equal (legs preserve types).
    pub fn new(
        dom: TypedFiniteSet,
        cod: TypedFiniteSet,
        wires: Vec<(WireName, usize, usize)>,
    ) -> Result<Self, SpanError> {
        let mut seen = BTreeSet::new();
        for (w, i, j) in &wires {
            if *i >= dom.len() {
                return Err(SpanError::IndexOutOfRange {
                    index: *i,
                    len: dom.len(),
                });
            }
            if *j >= cod.len() {
                return Err(SpanError::IndexOutOfRange {
                    index: *j,
                    len: cod.len(),
                });
            }
            if dom.type_at(*i) != cod.type_at(*j) {
                return Err(SpanError::BasisMismatch(format!(
                    "wire {w} connects {} to {}",
                    dom.type_at(*i),
                    cod.type_at(*j)
                )));
            }
            if !seen.insert(w.clone()) {
                return Err(SpanError::DuplicateWire(w.clone()));
            }
        }
        Ok(Span { dom, cod, wires })
    }

    pub fn dom(&self) -> &TypedFiniteSet {
        &self.dom
    }

    pub fn cod(&self) -> &TypedFiniteSet {
        &self.cod
    }

    pub fn wires(&self) -> &[(WireName, usize, usize)] {
        &self.wires
    }

    /// Both legs are bijections: every basis element meets exactly one wire.
    pub fn is_bijective(&self) -> bool {
        let mut dom_hits = vec![0usize; self.dom.len()];
        let mut cod_hits = vec![0usize; self.cod.len()];
        for (_, i, j) in &self.wires {
            dom_hits[*i] += 1;
            cod_hits[*j] += 1;
        }
        dom_hits.iter().chain(&cod_hits).all(|&c| c == 1)
    }
}

/// A span presented as a matrix of wire-name sets over singleton bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanMatrix {
    rows: TypedFiniteSet,
    cols: TypedFiniteSet,
    entries: Vec<Vec<BTreeSet<WireName>>>,
}

impl SpanMatrix {
    pub fn zero(rows: TypedFiniteSet, cols: TypedFiniteSet) -> Self {
        let entries = vec![vec![BTreeSet::new(); cols.len()]; rows.len()];
        SpanMatrix {
            rows,
            cols,
            entries,
        }
    }

    /// Checks dimensions, global disjointness of entry sets, and that a
    /// nonempty entry only sits where row and column types agree.
    pub fn from_entries(
        rows: TypedFiniteSet,
        cols: TypedFiniteSet,
        entries: Vec<Vec<BTreeSet<WireName>>>,
    ) -> Result<Self, SpanError> {
        if entries.len() != rows.len() || entries.iter().any(|r| r.len() != cols.len()) {
            return Err(SpanError::BasisMismatch(format!(
                "entry grid is not {}x{}",
                rows.len(),
                cols.len()
            )));
        }
        let mut seen: BTreeSet<&WireName> = BTreeSet::new();
        for (i, row) in entries.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                if !cell.is_empty() && rows.type_at(i) != cols.type_at(j) {
                    return Err(SpanError::BasisMismatch(format!(
                        "entry ({i},{j}) connects {} to {}",
                        rows.type_at(i),
                        cols.type_at(j)
                    )));
                }
                for w in cell {
                    if !seen.insert(w) {
                        return Err(SpanError::DuplicateWire(w.clone()));
                    }
                }
            }
        }
        Ok(SpanMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn rows(&self) -> &TypedFiniteSet {
        &self.rows
    }

    pub fn cols(&self) -> &TypedFiniteSet {
        &self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &BTreeSet<WireName> {
        &self.entries[i][j]
    }

    pub fn wire_count(&self) -> usize {
        self.entries.iter().flatten().map(|c| c.len()).sum()
    }

    /// Bijective mode: every row and every column holds exactly one wire.
    pub fn is_bijective(&self) -> bool {
        (0..self.rows.len()).all(|i| {
            self.entries[i].iter().map(|c| c.len()).sum::<usize>() == 1
        }) && (0..self.cols.len()).all(|j| {
            self.entries.iter().map(|r| r[j].len()).sum::<usize>() == 1
        })
    }

    /// Fixed textual form: a header line of column names, then one line per
    /// row with `{w1,w2}` or `0` cells.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let col_names: Vec<&str> = (0..self.cols.len()).map(|j| self.cols.name(j)).collect();
        let _ = writeln!(out, "cols: {}", col_names.join(" "));
        for i in 0..self.rows.len() {
            let cells: Vec<String> = (0..self.cols.len())
                .map(|j| {
                    let cell = &self.entries[i][j];
                    if cell.is_empty() {
                        "0".to_owned()
                    } else {
                        let names: Vec<String> = cell.iter().map(|w| w.to_string()).collect();
                        format!("{{{}}}", names.join(","))
                    }
                })
                .collect();
            let _ = writeln!(out, "{}: {}", self.rows.name(i), cells.join(" "));
        }
        out
    }
}

/// Fully decomposes a span over its basis enumerations.
pub fn span_to_matrix(s: &Span) -> SpanMatrix {
    let mut m = SpanMatrix::zero(s.dom().clone(), s.cod().clone());
    for (w, i, j) in s.wires() {
        m.entries[*i][*j].insert(w.clone());
    }
    m
}

/// Collects entries back into a span; apex order is row-major.
pub fn matrix_to_span(m: &SpanMatrix) -> Result<Span, SpanError> {
    let mut wires = Vec::new();
    for i in 0..m.rows.len() {
        for j in 0..m.cols.len() {
            for w in &m.entries[i][j] {
                wires.push((w.clone(), i, j));
            }
        }
    }
    Span::new(m.rows.clone(), m.cols.clone(), wires)
}

/// Matrix product: entry (i, j) is the disjoint union over k of the pairwise
/// fusions of a's (i, k) wires with b's (k, j) wires, read left to right.
/// The inner bases must agree in length and pointwise types.
pub fn mat_mul(a: &SpanMatrix, b: &SpanMatrix) -> Result<SpanMatrix, SpanError> {
    if !a.cols.types_match(&b.rows) {
        return Err(SpanError::BasisMismatch(format!(
            "inner bases disagree: {} columns vs {} rows",
            a.cols.len(),
            b.rows.len()
        )));
    }
    let mut m = SpanMatrix::zero(a.rows.clone(), b.cols.clone());
    for i in 0..a.rows.len() {
        for j in 0..b.cols.len() {
            for k in 0..a.cols.len() {
                for wa in &a.entries[i][k] {
                    for wb in &b.entries[k][j] {
                        m.entries[i][j].insert(wa.clone().fuse(wb.clone()));
                    }
                }
            }
        }
    }
    Ok(m)
}

/// Entrywise disjoint union over identical bases (same length and types).
/// A wire of `b` whose name already occurs in `a` is primed until fresh.
pub fn mat_add(a: &SpanMatrix, b: &SpanMatrix) -> Result<SpanMatrix, SpanError> {
    if !a.rows.types_match(&b.rows) || !a.cols.types_match(&b.cols) {
        return Err(SpanError::BasisMismatch(
            "summands must share their bases".into(),
        ));
    }
    let mut used: BTreeSet<WireName> = a.entries.iter().flatten().flatten().cloned().collect();
    let mut m = a.clone();
    for i in 0..b.rows.len() {
        for j in 0..b.cols.len() {
            for w in &b.entries[i][j] {
                let mut fresh = w.clone();
                while !used.insert(fresh.clone()) {
                    fresh = fresh.primed();
                }
                m.entries[i][j].insert(fresh);
            }
        }
    }
    Ok(m)
}

/// The block of `m` spanned by the selected row and column indices, in the
/// order given.
pub fn component(m: &SpanMatrix, rows: &[usize], cols: &[usize]) -> Result<SpanMatrix, SpanError> {
    for &i in rows {
        if i >= m.rows.len() {
            return Err(SpanError::IndexOutOfRange {
                index: i,
                len: m.rows.len(),
            });
        }
    }
    for &j in cols {
        if j >= m.cols.len() {
            return Err(SpanError::IndexOutOfRange {
                index: j,
                len: m.cols.len(),
            });
        }
    }
    let sub_rows = TypedFiniteSet::new(
        rows.iter()
            .map(|&i| (m.rows.name(i).to_owned(), m.rows.type_at(i).clone()))
            .collect(),
    )?;
    let sub_cols = TypedFiniteSet::new(
        cols.iter()
            .map(|&j| (m.cols.name(j).to_owned(), m.cols.type_at(j).clone()))
            .collect(),
    )?;
    let entries = rows
        .iter()
        .map(|&i| cols.iter().map(|&j| m.entries[i][j].clone()).collect())
        .collect();
    SpanMatrix::from_entries(sub_rows, sub_cols, entries)
}

/// Places `x` into a zero matrix over the ambient bases, its k-th row at
/// ambient row `rows[k]` and likewise for columns. Types must agree at every
/// placed position; this is a section of [`component`] at the same indices.
pub fn embed(
    x: &SpanMatrix,
    rows: &[usize],
    cols: &[usize],
    ambient_rows: TypedFiniteSet,
    ambient_cols: TypedFiniteSet,
) -> Result<SpanMatrix, SpanError> {
    if rows.len() != x.rows.len() || cols.len() != x.cols.len() {
        return Err(SpanError::BasisMismatch(format!(
            "index lists {}x{} do not fit a {}x{} block",
            rows.len(),
            cols.len(),
            x.rows.len(),
            x.cols.len()
        )));
    }
    for (k, &i) in rows.iter().enumerate() {
        if i >= ambient_rows.len() {
            return Err(SpanError::IndexOutOfRange {
                index: i,
                len: ambient_rows.len(),
            });
        }
        if rows[..k].contains(&i) {
            return Err(SpanError::BasisMismatch(format!("row {i} placed twice")));
        }
        if ambient_rows.type_at(i) != x.rows.type_at(k) {
            return Err(SpanError::BasisMismatch(format!(
                "row {k} has type {}, ambient position {i} has type {}",
                x.rows.type_at(k),
                ambient_rows.type_at(i)
            )));
        }
    }
    for (k, &j) in cols.iter().enumerate() {
        if j >= ambient_cols.len() {
            return Err(SpanError::IndexOutOfRange {
                index: j,
                len: ambient_cols.len(),
            });
        }
        if cols[..k].contains(&j) {
            return Err(SpanError::BasisMismatch(format!("column {j} placed twice")));
        }
        if ambient_cols.type_at(j) != x.cols.type_at(k) {
            return Err(SpanError::BasisMismatch(format!(
                "column {k} has type {}, ambient position {j} has type {}",
                x.cols.type_at(k),
                ambient_cols.type_at(j)
            )));
        }
    }
    let mut m = SpanMatrix::zero(ambient_rows, ambient_cols);
    for (k, &i) in rows.iter().enumerate() {
        for (l, &j) in cols.iter().enumerate() {
            m.entries[i][j] = x.entries[k][l].clone();
        }
    }
    Ok(m)
}

/// Span isomorphism over positionally identified bases: same shape, pointwise
/// equal types, and matching entry cardinalities. Wire names never matter.
pub fn span_iso(a: &SpanMatrix, b: &SpanMatrix) -> bool {
    a.rows.types_match(&b.rows)
        && a.cols.types_match(&b.cols)
        && (0..a.rows.len())
            .all(|i| (0..a.cols.len()).all(|j| a.entries[i][j].len() == b.entries[i][j].len()))
}

/// [`span_iso`] on spans, via their matrix presentations.
pub fn span_iso_spans(a: &Span, b: &Span) -> bool {
    span_iso(&span_to_matrix(a), &span_to_matrix(b))
}
