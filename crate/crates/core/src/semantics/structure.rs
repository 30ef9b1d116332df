//! Finite multi-sorted structures and their textual fixture format.
//!
//! ```text
//! s: {e1, e2}
//! c0 -> e1
//! R: {(e1,e2), (e2,e2)}
//! ```
//!
//! Entries are separated by newlines or `;`. A relation left out of a fixture
//! gets the empty extension and is reported back as a warning.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use crate::logic::{ConstId, RelId, Signature, SortId};

/// Element index into [`MultiStructure::elements`].
pub type Elem = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("expected {expected} {what}, got {got}")]
    Shape { what: &'static str, expected: usize, got: usize },
    #[error("constant `{constant}` is interpreted outside the domain of sort `{sort}`")]
    ConstantOutsideSort { constant: String, sort: String },
    #[error("element `{element}` of sort `{sort}` is not named by any constant")]
    NotSurjective { element: String, sort: String },
    #[error("tuple {tuple} of `{relation}` does not respect its sorts")]
    BadTuple { relation: String, tuple: String },
    #[error("element index {0} out of range")]
    NoSuchElement(usize),
    #[error("fixture line {line}: {message}")]
    Fixture { line: usize, message: String },
}

/// A finite structure for a multi-sorted signature.
///
/// Sort domains are sets of indices into a shared element pool, so domains of
/// different sorts may overlap. Constants are interpreted surjectively onto
/// each sort's domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiStructure {
    elements: Vec<String>,
    domains: Vec<Vec<Elem>>,
    constants: Vec<Elem>,
    relations: Vec<BTreeSet<Vec<Elem>>>,
}

impl MultiStructure {
    pub fn new(
        sig: &Signature,
        elements: Vec<String>,
        domains: Vec<Vec<Elem>>,
        constants: Vec<Elem>,
        relations: Vec<BTreeSet<Vec<Elem>>>,
    ) -> Result<Self, StructureError> {
        if domains.len() != sig.sort_count() {
            return Err(StructureError::Shape { what: "sort domains", expected: sig.sort_count(), got: domains.len() });
        }
        if constants.len() != sig.const_count() {
            return Err(StructureError::Shape { what: "constants", expected: sig.const_count(), got: constants.len() });
        }
        if relations.len() != sig.relation_count() {
            return Err(StructureError::Shape {
                what: "relations",
                expected: sig.relation_count(),
                got: relations.len(),
            });
        }
        let mut domains = domains;
        for d in &mut domains {
            d.sort_unstable();
            d.dedup();
            if let Some(&e) = d.iter().find(|&&e| e >= elements.len()) {
                return Err(StructureError::NoSuchElement(e));
            }
        }
        for c in sig.const_ids() {
            let s = sig.const_sort(c);
            if domains[s.0].binary_search(&constants[c.0]).is_err() {
                return Err(StructureError::ConstantOutsideSort {
                    constant: sig.const_name(c).to_string(),
                    sort: sig.sort_name(s).to_string(),
                });
            }
        }
        for s in sig.sort_ids() {
            for &e in &domains[s.0] {
                if !sig.constants_of(s).iter().any(|&c| constants[c.0] == e) {
                    return Err(StructureError::NotSurjective {
                        element: elements[e].clone(),
                        sort: sig.sort_name(s).to_string(),
                    });
                }
            }
        }
        for r in sig.rel_ids() {
            let decl = sig.relation(r);
            for t in &relations[r.0] {
                let ok = t.len() == decl.arity()
                    && t.iter().zip(&decl.sorts).all(|(e, s)| domains[s.0].binary_search(e).is_ok());
                if !ok {
                    let names: Vec<String> =
                        t.iter().map(|&e| elements.get(e).cloned().unwrap_or_else(|| e.to_string())).collect();
                    return Err(StructureError::BadTuple {
                        relation: decl.name.clone(),
                        tuple: format!("({})", names.join(",")),
                    });
                }
            }
        }
        Ok(MultiStructure { elements, domains, constants, relations })
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn element_name(&self, e: Elem) -> &str {
        &self.elements[e]
    }

    /// Domain of sort `s`, sorted by element index.
    pub fn domain(&self, s: SortId) -> &[Elem] {
        &self.domains[s.0]
    }

    pub fn constant(&self, c: ConstId) -> Elem {
        self.constants[c.0]
    }

    pub fn extension(&self, r: RelId) -> &BTreeSet<Vec<Elem>> {
        &self.relations[r.0]
    }

    pub fn holds(&self, r: RelId, tuple: &[Elem]) -> bool {
        self.relations[r.0].contains(tuple)
    }

    /// Renders the structure in the fixture format, one entry per line.
    pub fn render(&self, sig: &Signature) -> String {
        let mut out = String::new();
        for s in sig.sort_ids() {
            let names: Vec<&str> = self.domain(s).iter().map(|&e| self.element_name(e)).collect();
            let _ = writeln!(out, "{}: {{{}}}", sig.sort_name(s), names.join(", "));
        }
        for c in sig.const_ids() {
            let _ = writeln!(out, "{} -> {}", sig.const_name(c), self.element_name(self.constant(c)));
        }
        for r in sig.rel_ids() {
            let tuples: Vec<String> = self
                .extension(r)
                .iter()
                .map(|t| {
                    let names: Vec<&str> = t.iter().map(|&e| self.element_name(e)).collect();
                    format!("({})", names.join(","))
                })
                .collect();
            let _ = writeln!(out, "{}: {{{}}}", sig.rel_name(r), tuples.join(", "));
        }
        out
    }
}

/// A parsed fixture together with the relations it left implicit.
#[derive(Clone, Debug)]
pub struct ParsedStructure {
    pub structure: MultiStructure,
    /// Names of relations the fixture omitted (interpreted as empty).
    pub defaulted: Vec<String>,
}

fn fixture_err(line: usize, message: impl Into<String>) -> StructureError {
    StructureError::Fixture { line, message: message.into() }
}

fn is_elem_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Splits `{a, (b,c), ...}` into its top-level items.
fn braced_items(body: &str, line: usize) -> Result<Vec<String>, StructureError> {
    let body = body.trim();
    let inner = body
        .strip_prefix('{')
        .and_then(|b| b.strip_suffix('}'))
        .ok_or_else(|| fixture_err(line, format!("expected `{{...}}`, found `{body}`")))?;
    let mut items = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in inner.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(fixture_err(line, "unbalanced `)`"));
                }
                cur.push(ch);
            }
            ',' if depth == 0 => {
                items.push(std::mem::take(&mut cur).trim().to_string());
            }
            _ => cur.push(ch),
        }
    }
    if depth != 0 {
        return Err(fixture_err(line, "unbalanced `(`"));
    }
    let last = cur.trim().to_string();
    if !last.is_empty() || !items.is_empty() {
        items.push(last);
    }
    if items.iter().any(String::is_empty) {
        return Err(fixture_err(line, "empty item"));
    }
    Ok(items)
}

/// Parses a structure fixture against `sig`.
pub fn parse_structure(text: &str, sig: &Signature) -> Result<ParsedStructure, StructureError> {
    let mut elements: Vec<String> = Vec::new();
    let mut index: HashMap<String, Elem> = HashMap::new();
    let mut domains: Vec<Option<Vec<Elem>>> = vec![None; sig.sort_count()];
    let mut constants: Vec<Option<Elem>> = vec![None; sig.const_count()];
    let mut relations: Vec<Option<BTreeSet<Vec<Elem>>>> = vec![None; sig.relation_count()];

    let entries = text
        .lines()
        .enumerate()
        .flat_map(|(i, l)| l.split(';').map(move |e| (i + 1, e.trim())))
        .filter(|(_, e)| !e.is_empty());
    for (line, entry) in entries {
        if let Some((lhs, rhs)) = entry.split_once("->") {
            let (cname, ename) = (lhs.trim(), rhs.trim());
            let c = sig.const_by_name(cname).ok_or_else(|| fixture_err(line, format!("unknown constant `{cname}`")))?;
            let e = *index
                .get(ename)
                .ok_or_else(|| fixture_err(line, format!("element `{ename}` not declared in any sort")))?;
            if constants[c.0].replace(e).is_some() {
                return Err(fixture_err(line, format!("constant `{cname}` interpreted twice")));
            }
            continue;
        }
        let (lhs, rhs) =
            entry.split_once(':').ok_or_else(|| fixture_err(line, format!("cannot read entry `{entry}`")))?;
        let name = lhs.trim();
        let items = braced_items(rhs, line)?;
        if let Some(s) = sig.sort_by_name(name) {
            let mut dom = Vec::new();
            for it in items {
                if !is_elem_name(&it) {
                    return Err(fixture_err(line, format!("bad element name `{it}`")));
                }
                let next = elements.len();
                let e = *index.entry(it.clone()).or_insert(next);
                if e == next {
                    elements.push(it);
                }
                dom.push(e);
            }
            if domains[s.0].replace(dom).is_some() {
                return Err(fixture_err(line, format!("sort `{name}` declared twice")));
            }
        } else if let Some(r) = sig.rel_by_name(name) {
            let mut ext = BTreeSet::new();
            for it in items {
                let inner = it.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(it.as_str());
                let mut tuple = Vec::new();
                for part in inner.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                    let e = *index
                        .get(part)
                        .ok_or_else(|| fixture_err(line, format!("element `{part}` not declared in any sort")))?;
                    tuple.push(e);
                }
                ext.insert(tuple);
            }
            if relations[r.0].replace(ext).is_some() {
                return Err(fixture_err(line, format!("relation `{name}` given twice")));
            }
        } else {
            return Err(fixture_err(line, format!("unknown sort or relation `{name}`")));
        }
    }

    let mut doms = Vec::with_capacity(domains.len());
    for (i, d) in domains.into_iter().enumerate() {
        doms.push(d.ok_or_else(|| fixture_err(0, format!("sort `{}` has no domain", sig.sort_name(SortId(i)))))?);
    }
    let mut consts = Vec::with_capacity(constants.len());
    for (i, c) in constants.into_iter().enumerate() {
        consts.push(
            c.ok_or_else(|| fixture_err(0, format!("constant `{}` is not interpreted", sig.const_name(ConstId(i)))))?,
        );
    }
    let mut defaulted = Vec::new();
    let rels = relations
        .into_iter()
        .enumerate()
        .map(|(i, r)| {
            r.unwrap_or_else(|| {
                defaulted.push(sig.rel_name(RelId(i)).to_string());
                BTreeSet::new()
            })
        })
        .collect();
    let structure = MultiStructure::new(sig, elements, doms, consts, rels)?;
    Ok(ParsedStructure { structure, defaulted })
}
