//! Multi-sorted relational signatures.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use super::formula::GroundAtom;

/// Index of a sort in declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SortId(pub usize);

/// Index of a constant. Constants are numbered globally, grouped by sort in
/// sort declaration order, and in declaration order within a sort.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConstId(pub usize);

/// Index of a relation symbol in declaration order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RelId(pub usize);

/// Words of the formula language that cannot be used as symbol names.
pub const KEYWORDS: [&str; 4] = ["And", "Or", "Exists", "Forall"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantDecl {
    pub name: String,
    pub sort: SortId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationDecl {
    pub name: String,
    /// Sort of each argument position; the arity is `sorts.len()`.
    pub sorts: Vec<SortId>,
}

impl RelationDecl {
    pub fn arity(&self) -> usize {
        self.sorts.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("duplicate {kind} name `{name}`")]
    Duplicate { kind: &'static str, name: String },
    #[error("sort `{0}` has no constants")]
    EmptySort(String),
    #[error("relation `{relation}` refers to undeclared sort `{sort}`")]
    UnknownSort { relation: String, sort: String },
    #[error("`{0}` is not a valid identifier")]
    BadIdentifier(String),
    #[error("`{0}` is a reserved word")]
    Reserved(String),
}

/// A multi-sorted relational signature: sorts, per-sort constants and typed
/// relation symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    sorts: Vec<String>,
    constants: Vec<ConstantDecl>,
    by_sort: Vec<Vec<ConstId>>,
    relations: Vec<RelationDecl>,
    sort_index: HashMap<String, SortId>,
    const_index: HashMap<String, ConstId>,
    rel_index: HashMap<String, RelId>,
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn check_name(name: &str) -> Result<(), SignatureError> {
    if !is_identifier(name) {
        return Err(SignatureError::BadIdentifier(name.to_string()));
    }
    if KEYWORDS.contains(&name) {
        return Err(SignatureError::Reserved(name.to_string()));
    }
    Ok(())
}

/// Incremental builder for [`Signature`].
#[derive(Default, Debug, Clone)]
pub struct SignatureBuilder {
    sorts: Vec<(String, Vec<String>)>,
    relations: Vec<(String, Vec<String>)>,
}

impl SignatureBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn sort<I, S>(mut self, name: &str, constants: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.sorts.push((name.to_string(), constants.into_iter().map(Into::into).collect()));
        self
    }

    pub fn relation<I, S>(mut self, name: &str, sorts: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.relations.push((name.to_string(), sorts.into_iter().map(Into::into).collect()));
        self
    }

    pub fn build(self) -> Result<Signature, SignatureError> {
        let mut sig = Signature {
            sorts: Vec::new(),
            constants: Vec::new(),
            by_sort: Vec::new(),
            relations: Vec::new(),
            sort_index: HashMap::new(),
            const_index: HashMap::new(),
            rel_index: HashMap::new(),
        };
        for (sort_name, consts) in self.sorts {
            check_name(&sort_name)?;
            if sig.sort_index.contains_key(&sort_name) {
                return Err(SignatureError::Duplicate { kind: "sort", name: sort_name });
            }
            if consts.is_empty() {
                return Err(SignatureError::EmptySort(sort_name));
            }
            let sort = SortId(sig.sorts.len());
            sig.sort_index.insert(sort_name.clone(), sort);
            sig.sorts.push(sort_name);
            let mut members = Vec::with_capacity(consts.len());
            for c in consts {
                check_name(&c)?;
                if sig.const_index.contains_key(&c) {
                    return Err(SignatureError::Duplicate { kind: "constant", name: c });
                }
                let id = ConstId(sig.constants.len());
                sig.const_index.insert(c.clone(), id);
                sig.constants.push(ConstantDecl { name: c, sort });
                members.push(id);
            }
            sig.by_sort.push(members);
        }
        for (rel_name, sorts) in self.relations {
            check_name(&rel_name)?;
            if sig.rel_index.contains_key(&rel_name) || sig.const_index.contains_key(&rel_name) {
                return Err(SignatureError::Duplicate { kind: "relation", name: rel_name });
            }
            let mut resolved = Vec::with_capacity(sorts.len());
            for s in sorts {
                match sig.sort_index.get(&s) {
                    Some(&id) => resolved.push(id),
                    None => return Err(SignatureError::UnknownSort { relation: rel_name, sort: s }),
                }
            }
            sig.rel_index.insert(rel_name.clone(), RelId(sig.relations.len()));
            sig.relations.push(RelationDecl { name: rel_name, sorts: resolved });
        }
        Ok(sig)
    }
}

impl Signature {
    pub fn builder() -> SignatureBuilder {
        SignatureBuilder::new()
    }

    pub fn sort_count(&self) -> usize {
        self.sorts.len()
    }

    pub fn sort_ids(&self) -> impl Iterator<Item = SortId> + '_ {
        (0..self.sorts.len()).map(SortId)
    }

    pub fn sort_name(&self, s: SortId) -> &str {
        &self.sorts[s.0]
    }

    pub fn sort_by_name(&self, name: &str) -> Option<SortId> {
        self.sort_index.get(name).copied()
    }

    pub fn has_sort(&self, s: SortId) -> bool {
        s.0 < self.sorts.len()
    }

    pub fn const_count(&self) -> usize {
        self.constants.len()
    }

    pub fn const_ids(&self) -> impl Iterator<Item = ConstId> + '_ {
        (0..self.constants.len()).map(ConstId)
    }

    pub fn constant(&self, c: ConstId) -> &ConstantDecl {
        &self.constants[c.0]
    }

    pub fn has_const(&self, c: ConstId) -> bool {
        c.0 < self.constants.len()
    }

    pub fn const_name(&self, c: ConstId) -> &str {
        &self.constants[c.0].name
    }

    pub fn const_sort(&self, c: ConstId) -> SortId {
        self.constants[c.0].sort
    }

    pub fn const_by_name(&self, name: &str) -> Option<ConstId> {
        self.const_index.get(name).copied()
    }

    /// Constants of sort `s` in declaration order.
    pub fn constants_of(&self, s: SortId) -> &[ConstId] {
        &self.by_sort[s.0]
    }

    pub fn relation_count(&self) -> usize {
        self.relations.len()
    }

    pub fn rel_ids(&self) -> impl Iterator<Item = RelId> + '_ {
        (0..self.relations.len()).map(RelId)
    }

    pub fn relation(&self, r: RelId) -> &RelationDecl {
        &self.relations[r.0]
    }

    pub fn has_relation(&self, r: RelId) -> bool {
        r.0 < self.relations.len()
    }

    pub fn rel_name(&self, r: RelId) -> &str {
        &self.relations[r.0].name
    }

    pub fn rel_by_name(&self, name: &str) -> Option<RelId> {
        self.rel_index.get(name).copied()
    }

    /// All well-sorted constant tuples for relation `r`, lexicographic in
    /// constant order.
    pub fn tuples_of(&self, r: RelId) -> Vec<Vec<ConstId>> {
        let columns: Vec<&[ConstId]> = self.relation(r).sorts.iter().map(|&s| self.constants_of(s)).collect();
        cartesian(&columns)
    }

    /// Every atomic sentence of the signature in canonical order: equalities
    /// first (by constant pair), then relation atoms (by relation, then tuple).
    pub fn atoms(&self) -> Vec<GroundAtom> {
        let mut out = Vec::with_capacity(self.atom_count());
        for c in self.const_ids() {
            for &d in self.constants_of(self.const_sort(c)) {
                out.push(GroundAtom::Eq(c, d));
            }
        }
        for r in self.rel_ids() {
            for t in self.tuples_of(r) {
                out.push(GroundAtom::Rel(r, t));
            }
        }
        out
    }

    pub fn atom_count(&self) -> usize {
        let eqs: usize = self.by_sort.iter().map(|k| k.len() * k.len()).sum();
        let rels: usize =
            self.relations.iter().map(|r| r.sorts.iter().map(|&s| self.by_sort[s.0].len()).product::<usize>()).sum();
        eqs + rels
    }
}

/// Cartesian product of the given columns in lexicographic order.
pub(crate) fn cartesian<T: Clone>(columns: &[&[T]]) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![Vec::new()];
    for col in columns {
        let mut next = Vec::with_capacity(out.len() * col.len());
        for prefix in &out {
            for x in col.iter() {
                let mut t = prefix.clone();
                t.push(x.clone());
                next.push(t);
            }
        }
        out = next;
    }
    out
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.sort_ids() {
            let names: Vec<&str> = self.constants_of(s).iter().map(|&c| self.const_name(c)).collect();
            writeln!(f, "sort {} {{{}}}", self.sort_name(s), names.join(", "))?;
        }
        for r in self.rel_ids() {
            let decl = self.relation(r);
            let sorts: Vec<&str> = decl.sorts.iter().map(|&s| self.sort_name(s)).collect();
            writeln!(f, "relation {}({})", decl.name, sorts.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants_are_grouped_by_sort() {
        let sig =
            Signature::builder().sort("s", ["a", "b"]).sort("t", ["c"]).relation("R", ["s", "t"]).build().unwrap();
        assert_eq!(sig.constants_of(SortId(1)), &[ConstId(2)]);
        assert_eq!(sig.const_sort(ConstId(1)), SortId(0));
        assert_eq!(sig.tuples_of(RelId(0)).len(), 2);
    }

    #[test]
    fn atom_count_matches_enumeration() {
        let sig = Signature::builder()
            .sort("s", ["a", "b", "c"])
            .sort("t", ["d", "e"])
            .relation("R", ["s", "t"])
            .relation("P", ["t"])
            .build()
            .unwrap();
        // 3*3 + 2*2 equalities, 3*2 R-atoms, 2 P-atoms
        assert_eq!(sig.atom_count(), 9 + 4 + 6 + 2);
        let atoms = sig.atoms();
        assert_eq!(atoms.len(), sig.atom_count());
        let mut sorted = atoms.clone();
        sorted.sort();
        assert_eq!(atoms, sorted);
    }

    #[test]
    fn rejects_bad_signatures() {
        assert!(matches!(
            Signature::builder().sort("s", Vec::<String>::new()).build(),
            Err(SignatureError::EmptySort(_))
        ));
        assert!(matches!(Signature::builder().sort("s", ["a", "a"]).build(), Err(SignatureError::Duplicate { .. })));
        assert!(matches!(
            Signature::builder().sort("s", ["a"]).relation("R", ["u"]).build(),
            Err(SignatureError::UnknownSort { .. })
        ));
        assert!(matches!(Signature::builder().sort("s", ["And"]).build(), Err(SignatureError::Reserved(_))));
        assert!(matches!(Signature::builder().sort("s", ["1a"]).build(), Err(SignatureError::BadIdentifier(_))));
    }
}
