//! Infinitary formulas with finite explicit index families, ground literals
//! and literal sets.

use std::collections::BTreeSet;
use std::fmt;

use super::signature::{ConstId, RelId, Signature, SortId};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Const(ConstId),
    Var(String),
}

/// Formula AST. `And`/`Or` carry explicit, finite, nonempty families.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom { rel: RelId, args: Vec<Term> },
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Exists { var: String, sort: SortId, body: Box<Formula> },
    Forall { var: String, sort: SortId, body: Box<Formula> },
}

impl Formula {
    pub fn atom(rel: RelId, args: &[ConstId]) -> Formula {
        Formula::Atom { rel, args: args.iter().map(|&c| Term::Const(c)).collect() }
    }

    pub fn eq(c: ConstId, d: ConstId) -> Formula {
        Formula::Eq(Term::Const(c), Term::Const(d))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn exists(var: &str, sort: SortId, body: Formula) -> Formula {
        Formula::Exists { var: var.to_string(), sort, body: Box::new(body) }
    }

    pub fn forall(var: &str, sort: SortId, body: Formula) -> Formula {
        Formula::Forall { var: var.to_string(), sort, body: Box::new(body) }
    }

    /// Free variables, in order of first occurrence.
    pub fn free_vars(&self) -> Vec<String> {
        fn term(t: &Term, bound: &[String], out: &mut Vec<String>) {
            if let Term::Var(v) = t {
                if !bound.contains(v) && !out.contains(v) {
                    out.push(v.clone());
                }
            }
        }
        fn go(f: &Formula, bound: &mut Vec<String>, out: &mut Vec<String>) {
            match f {
                Formula::Atom { args, .. } => args.iter().for_each(|t| term(t, bound, out)),
                Formula::Eq(a, b) => {
                    term(a, bound, out);
                    term(b, bound, out);
                }
                Formula::Not(g) => go(g, bound, out),
                Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|g| go(g, bound, out)),
                Formula::Exists { var, body, .. } | Formula::Forall { var, body, .. } => {
                    bound.push(var.clone());
                    go(body, bound, out);
                    bound.pop();
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    pub fn is_closed(&self) -> bool {
        self.free_vars().is_empty()
    }

    pub fn has_quantifier(&self) -> bool {
        match self {
            Formula::Atom { .. } | Formula::Eq(..) => false,
            Formula::Not(g) => g.has_quantifier(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().any(Formula::has_quantifier),
            Formula::Exists { .. } | Formula::Forall { .. } => true,
        }
    }

    /// Replaces free occurrences of `var` by the constant `c`.
    pub fn substitute(&self, var: &str, c: ConstId) -> Formula {
        let sub = |t: &Term| match t {
            Term::Var(v) if v == var => Term::Const(c),
            other => other.clone(),
        };
        match self {
            Formula::Atom { rel, args } => Formula::Atom { rel: *rel, args: args.iter().map(sub).collect() },
            Formula::Eq(a, b) => Formula::Eq(sub(a), sub(b)),
            Formula::Not(g) => Formula::not(g.substitute(var, c)),
            Formula::And(fs) => Formula::And(fs.iter().map(|g| g.substitute(var, c)).collect()),
            Formula::Or(fs) => Formula::Or(fs.iter().map(|g| g.substitute(var, c)).collect()),
            Formula::Exists { var: v, sort, body } => {
                let body = if v == var { (**body).clone() } else { body.substitute(var, c) };
                Formula::Exists { var: v.clone(), sort: *sort, body: Box::new(body) }
            }
            Formula::Forall { var: v, sort, body } => {
                let body = if v == var { (**body).clone() } else { body.substitute(var, c) };
                Formula::Forall { var: v.clone(), sort: *sort, body: Box::new(body) }
            }
        }
    }

    /// The ground atom of an atomic sentence.
    pub fn as_ground_atom(&self) -> Option<GroundAtom> {
        let konst = |t: &Term| match t {
            Term::Const(c) => Some(*c),
            Term::Var(_) => None,
        };
        match self {
            Formula::Atom { rel, args } => {
                let args: Option<Vec<ConstId>> = args.iter().map(konst).collect();
                Some(GroundAtom::Rel(*rel, args?))
            }
            Formula::Eq(a, b) => Some(GroundAtom::Eq(konst(a)?, konst(b)?)),
            _ => None,
        }
    }

    /// The literal this formula denotes, if it is an atomic or negated atomic
    /// sentence.
    pub fn as_literal(&self) -> Option<Literal> {
        match self {
            Formula::Not(g) => g.as_ground_atom().map(Literal::neg),
            f => f.as_ground_atom().map(Literal::pos),
        }
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> impl fmt::Display + 'a {
        FormulaDisplay { f: self, sig }
    }
}

struct FormulaDisplay<'a> {
    f: &'a Formula,
    sig: &'a Signature,
}

fn write_term(out: &mut fmt::Formatter<'_>, t: &Term, sig: &Signature) -> fmt::Result {
    match t {
        Term::Const(c) => write!(out, "{}", sig.const_name(*c)),
        Term::Var(v) => write!(out, "{v}"),
    }
}

fn write_formula(out: &mut fmt::Formatter<'_>, f: &Formula, sig: &Signature) -> fmt::Result {
    match f {
        Formula::Atom { rel, args } => {
            write!(out, "{}(", sig.rel_name(*rel))?;
            for (i, t) in args.iter().enumerate() {
                if i > 0 {
                    write!(out, ",")?;
                }
                write_term(out, t, sig)?;
            }
            write!(out, ")")
        }
        Formula::Eq(a, b) => {
            write_term(out, a, sig)?;
            write!(out, " = ")?;
            write_term(out, b, sig)
        }
        Formula::Not(g) => {
            write!(out, "!")?;
            if matches!(**g, Formula::Eq(..)) {
                write!(out, "(")?;
                write_formula(out, g, sig)?;
                write!(out, ")")
            } else {
                write_formula(out, g, sig)
            }
        }
        Formula::And(fs) | Formula::Or(fs) => {
            write!(out, "{}[", if matches!(f, Formula::And(_)) { "And" } else { "Or" })?;
            for (i, g) in fs.iter().enumerate() {
                if i > 0 {
                    write!(out, "; ")?;
                }
                write_formula(out, g, sig)?;
            }
            write!(out, "]")
        }
        Formula::Exists { var, sort, body } | Formula::Forall { var, sort, body } => {
            let q = if matches!(f, Formula::Exists { .. }) { "Exists" } else { "Forall" };
            write!(out, "{q} {var}:{} . ", sig.sort_name(*sort))?;
            write_formula(out, body, sig)
        }
    }
}

impl fmt::Display for FormulaDisplay<'_> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_formula(out, self.f, self.sig)
    }
}

/// Renders a formula in the textual DSL accepted by
/// [`parse_formula`](super::parser::parse_formula).
pub fn render_formula(f: &Formula, sig: &Signature) -> String {
    f.display(sig).to_string()
}

/// An atomic sentence. Equalities order before relation atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroundAtom {
    Eq(ConstId, ConstId),
    Rel(RelId, Vec<ConstId>),
}

impl GroundAtom {
    pub fn to_formula(&self) -> Formula {
        match self {
            GroundAtom::Eq(c, d) => Formula::eq(*c, *d),
            GroundAtom::Rel(r, args) => Formula::atom(*r, args),
        }
    }

    pub fn constants(&self) -> Vec<ConstId> {
        match self {
            GroundAtom::Eq(c, d) => vec![*c, *d],
            GroundAtom::Rel(_, args) => args.clone(),
        }
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> impl fmt::Display + 'a {
        AtomDisplay { atom: self, sig }
    }
}

struct AtomDisplay<'a> {
    atom: &'a GroundAtom,
    sig: &'a Signature,
}

impl fmt::Display for AtomDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.atom {
            GroundAtom::Eq(c, d) => write!(f, "{} = {}", self.sig.const_name(*c), self.sig.const_name(*d)),
            GroundAtom::Rel(r, args) => {
                let names: Vec<&str> = args.iter().map(|&c| self.sig.const_name(c)).collect();
                write!(f, "{}({})", self.sig.rel_name(*r), names.join(","))
            }
        }
    }
}

/// Literal polarity; positive literals order first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    Positive,
    Negative,
}

/// An atomic or negated atomic sentence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub atom: GroundAtom,
    pub polarity: Polarity,
}

impl Literal {
    pub fn pos(atom: GroundAtom) -> Literal {
        Literal { atom, polarity: Polarity::Positive }
    }

    pub fn neg(atom: GroundAtom) -> Literal {
        Literal { atom, polarity: Polarity::Negative }
    }

    pub fn is_positive(&self) -> bool {
        self.polarity == Polarity::Positive
    }

    pub fn negate(&self) -> Literal {
        let polarity = match self.polarity {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
        };
        Literal { atom: self.atom.clone(), polarity }
    }

    pub fn to_formula(&self) -> Formula {
        let f = self.atom.to_formula();
        if self.is_positive() {
            f
        } else {
            Formula::not(f)
        }
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> impl fmt::Display + 'a {
        LiteralDisplay { lit: self, sig }
    }
}

struct LiteralDisplay<'a> {
    lit: &'a Literal,
    sig: &'a Signature,
}

impl fmt::Display for LiteralDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.lit.atom, self.lit.polarity) {
            (a, Polarity::Positive) => write!(f, "{}", a.display(self.sig)),
            (a @ GroundAtom::Eq(..), Polarity::Negative) => write!(f, "!({})", a.display(self.sig)),
            (a, Polarity::Negative) => write!(f, "!{}", a.display(self.sig)),
        }
    }
}

/// A finite, canonically ordered, duplicate-free set of literals.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LiteralSet(BTreeSet<Literal>);

impl LiteralSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, l: Literal) -> bool {
        self.0.insert(l)
    }

    pub fn with(&self, l: Literal) -> LiteralSet {
        let mut out = self.clone();
        out.insert(l);
        out
    }

    pub fn contains(&self, l: &Literal) -> bool {
        self.0.contains(l)
    }

    /// Whether the set contains `φ` or `¬φ`.
    pub fn decides(&self, atom: &GroundAtom) -> bool {
        self.contains(&Literal::pos(atom.clone())) || self.contains(&Literal::neg(atom.clone()))
    }

    /// Truth value assigned to `atom`, if decided.
    pub fn value(&self, atom: &GroundAtom) -> Option<bool> {
        if self.contains(&Literal::pos(atom.clone())) {
            Some(true)
        } else if self.contains(&Literal::neg(atom.clone())) {
            Some(false)
        } else {
            None
        }
    }

    pub fn is_subset(&self, other: &LiteralSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn difference(&self, other: &LiteralSet) -> LiteralSet {
        LiteralSet(self.0.difference(&other.0).cloned().collect())
    }

    pub fn union(&self, other: &LiteralSet) -> LiteralSet {
        LiteralSet(self.0.union(&other.0).cloned().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Literal> {
        self.0.iter()
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> impl fmt::Display + 'a {
        SetDisplay { set: self, sig }
    }
}

impl FromIterator<Literal> for LiteralSet {
    fn from_iter<I: IntoIterator<Item = Literal>>(iter: I) -> Self {
        LiteralSet(iter.into_iter().collect())
    }
}

impl IntoIterator for LiteralSet {
    type Item = Literal;
    type IntoIter = std::collections::btree_set::IntoIter<Literal>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a LiteralSet {
    type Item = &'a Literal;
    type IntoIter = std::collections::btree_set::Iter<'a, Literal>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

struct SetDisplay<'a> {
    set: &'a LiteralSet,
    sig: &'a Signature,
}

impl fmt::Display for SetDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, l) in self.set.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", l.display(self.sig))?;
        }
        write!(f, "}}")
    }
}

/// One sort violation located by a path into the AST.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SortViolation {
    pub path: String,
    pub message: String,
}

impl fmt::Display for SortViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {}: {}", self.path, self.message)
    }
}

/// Checks that every node respects the signature: declared symbols, matching
/// sorts for `=` and relation arguments, bound variables, nonempty families.
/// Returns every violating node.
pub fn well_sorted_check(sig: &Signature, f: &Formula) -> Result<(), Vec<SortViolation>> {
    well_sorted_open(sig, f, &[])
}

/// As [`well_sorted_check`], with the given free variables in scope.
pub fn well_sorted_open(sig: &Signature, f: &Formula, free: &[(String, SortId)]) -> Result<(), Vec<SortViolation>> {
    let mut scope: Vec<(String, SortId)> = free.to_vec();
    let mut out = Vec::new();
    check_node(sig, f, &mut scope, "root".to_string(), &mut out);
    if out.is_empty() {
        Ok(())
    } else {
        Err(out)
    }
}

fn term_sort(
    sig: &Signature,
    t: &Term,
    scope: &[(String, SortId)],
    path: &str,
    out: &mut Vec<SortViolation>,
) -> Option<SortId> {
    match t {
        Term::Const(c) if sig.has_const(*c) => Some(sig.const_sort(*c)),
        Term::Const(c) => {
            out.push(SortViolation { path: path.to_string(), message: format!("undeclared constant #{}", c.0) });
            None
        }
        Term::Var(v) => match scope.iter().rev().find(|(n, _)| n == v) {
            Some((_, s)) => Some(*s),
            None => {
                out.push(SortViolation { path: path.to_string(), message: format!("unbound variable `{v}`") });
                None
            }
        },
    }
}

fn check_node(
    sig: &Signature,
    f: &Formula,
    scope: &mut Vec<(String, SortId)>,
    path: String,
    out: &mut Vec<SortViolation>,
) {
    match f {
        Formula::Atom { rel, args } => {
            if !sig.has_relation(*rel) {
                out.push(SortViolation { path, message: format!("undeclared relation #{}", rel.0) });
                return;
            }
            let decl = sig.relation(*rel);
            if decl.arity() != args.len() {
                out.push(SortViolation {
                    path,
                    message: format!("{} expects {} arguments, got {}", decl.name, decl.arity(), args.len()),
                });
                return;
            }
            for (i, (t, &want)) in args.iter().zip(&decl.sorts).enumerate() {
                if let Some(got) = term_sort(sig, t, scope, &path, out) {
                    if got != want {
                        out.push(SortViolation {
                            path: path.clone(),
                            message: format!(
                                "argument {} of {} has sort {}, expected {}",
                                i,
                                decl.name,
                                sig.sort_name(got),
                                sig.sort_name(want)
                            ),
                        });
                    }
                }
            }
        }
        Formula::Eq(a, b) => {
            let sa = term_sort(sig, a, scope, &path, out);
            let sb = term_sort(sig, b, scope, &path, out);
            if let (Some(sa), Some(sb)) = (sa, sb) {
                if sa != sb {
                    out.push(SortViolation {
                        path,
                        message: format!("equality between sorts {} and {}", sig.sort_name(sa), sig.sort_name(sb)),
                    });
                }
            }
        }
        Formula::Not(g) => check_node(sig, g, scope, format!("{path}.Not"), out),
        Formula::And(fs) | Formula::Or(fs) => {
            let tag = if matches!(f, Formula::And(_)) { "And" } else { "Or" };
            if fs.is_empty() {
                out.push(SortViolation { path: path.clone(), message: format!("empty {tag} family") });
            }
            for (i, g) in fs.iter().enumerate() {
                check_node(sig, g, scope, format!("{path}.{tag}[{i}]"), out);
            }
        }
        Formula::Exists { var, sort, body } | Formula::Forall { var, sort, body } => {
            if !sig.has_sort(*sort) {
                out.push(SortViolation { path, message: format!("undeclared sort #{}", sort.0) });
                return;
            }
            scope.push((var.clone(), *sort));
            check_node(sig, body, scope, format!("{path}.{var}"), out);
            scope.pop();
        }
    }
}
