//! Theories, equality axioms and quantifier-elimination axioms.

use std::fmt;

use thiserror::Error;

use super::formula::{well_sorted_open, Formula, GroundAtom, Literal, Term};
use super::signature::{Signature, SortId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AxiomOrigin {
    Equality,
    Qe,
    User,
}

impl fmt::Display for AxiomOrigin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AxiomOrigin::Equality => "equality",
            AxiomOrigin::Qe => "qe",
            AxiomOrigin::User => "user",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Axiom {
    pub origin: AxiomOrigin,
    pub sentence: Formula,
}

/// An ordered list of closed sentences tagged with their provenance.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Theory {
    pub axioms: Vec<Axiom>,
}

impl Theory {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, origin: AxiomOrigin, sentence: Formula) {
        self.axioms.push(Axiom { origin, sentence });
    }

    pub fn extend(&mut self, other: Theory) {
        self.axioms.extend(other.axioms);
    }

    pub fn len(&self) -> usize {
        self.axioms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Axiom> {
        self.axioms.iter()
    }

    /// Equality axioms plus QE axioms for `witnesses`.
    pub fn standard(sig: &Signature, witnesses: &[Witness]) -> Result<Theory, AxiomError> {
        let mut t = equality_axioms(sig);
        t.extend(qe_axioms(sig, witnesses)?);
        Ok(t)
    }

    pub fn render(&self, sig: &Signature) -> String {
        let mut out = String::new();
        for a in &self.axioms {
            out.push_str(&format!("{}: {}\n", a.origin, a.sentence.display(sig)));
        }
        out
    }
}

fn or_of(lits: Vec<Literal>) -> Formula {
    Formula::Or(lits.iter().map(Literal::to_formula).collect())
}

/// Reflexivity, symmetry, transitivity and congruence, instantiated for every
/// well-sorted choice of constants, each as an `Or` of literals (reflexivity
/// as a bare literal).
pub fn equality_axioms(sig: &Signature) -> Theory {
    let mut t = Theory::new();
    let eq = |c, d| GroundAtom::Eq(c, d);
    for s in sig.sort_ids() {
        for &c in sig.constants_of(s) {
            t.push(AxiomOrigin::Equality, Formula::eq(c, c));
        }
    }
    for s in sig.sort_ids() {
        let k = sig.constants_of(s);
        for &c in k {
            for &d in k {
                t.push(AxiomOrigin::Equality, or_of(vec![Literal::neg(eq(c, d)), Literal::pos(eq(d, c))]));
            }
        }
    }
    for s in sig.sort_ids() {
        let k = sig.constants_of(s);
        for &c in k {
            for &d in k {
                for &e in k {
                    t.push(
                        AxiomOrigin::Equality,
                        or_of(vec![Literal::neg(eq(c, d)), Literal::neg(eq(d, e)), Literal::pos(eq(c, e))]),
                    );
                }
            }
        }
    }
    for r in sig.rel_ids() {
        let tuples = sig.tuples_of(r);
        for cs in &tuples {
            for ds in &tuples {
                let mut lits = vec![Literal::neg(GroundAtom::Rel(r, cs.clone()))];
                lits.extend(cs.iter().zip(ds).map(|(&c, &d)| Literal::neg(eq(d, c))));
                lits.push(Literal::pos(GroundAtom::Rel(r, ds.clone())));
                t.push(AxiomOrigin::Equality, or_of(lits));
            }
        }
    }
    t
}

/// An open formula with one free variable, for the QE witness schema.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub var: String,
    pub sort: SortId,
    pub body: Formula,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AxiomError {
    #[error("witness variable `{var}` has undeclared sort #{sort}")]
    UndeclaredSort { var: String, sort: usize },
    #[error("witness formula must have exactly the free variable `{var}`, found {found:?}")]
    FreeVariables { var: String, found: Vec<String> },
    #[error("witness formula is not well sorted: {0}")]
    IllSorted(String),
}

/// QE axioms: per sort, `∀x ⋁_j (x = c_j)` together with its quantifier-free
/// expansion `⋀_e ⋁_j (e = c_j)`; per witness `ψ(x)`,
/// `(⋁_j ψ(c_j)) ↔ ∃x ψ(x)` written as a conjunction of two implications.
pub fn qe_axioms(sig: &Signature, witnesses: &[Witness]) -> Result<Theory, AxiomError> {
    let mut t = Theory::new();
    for s in sig.sort_ids() {
        let k = sig.constants_of(s);
        let x = || Term::Var("x".to_string());
        let quantified =
            Formula::forall("x", s, Formula::Or(k.iter().map(|&c| Formula::Eq(x(), Term::Const(c))).collect()));
        t.push(AxiomOrigin::Qe, quantified);
        let expansion =
            Formula::And(k.iter().map(|&e| Formula::Or(k.iter().map(|&c| Formula::eq(e, c)).collect())).collect());
        t.push(AxiomOrigin::Qe, expansion);
    }
    for w in witnesses {
        if !sig.has_sort(w.sort) {
            return Err(AxiomError::UndeclaredSort { var: w.var.clone(), sort: w.sort.0 });
        }
        let free = w.body.free_vars();
        if free != [w.var.clone()] {
            return Err(AxiomError::FreeVariables { var: w.var.clone(), found: free });
        }
        well_sorted_open(sig, &w.body, &[(w.var.clone(), w.sort)]).map_err(|errs| {
            AxiomError::IllSorted(errs.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))
        })?;
        let instances = Formula::Or(sig.constants_of(w.sort).iter().map(|&c| w.body.substitute(&w.var, c)).collect());
        let exists = Formula::exists(&w.var, w.sort, w.body.clone());
        t.push(
            AxiomOrigin::Qe,
            Formula::And(vec![
                Formula::Or(vec![Formula::not(instances.clone()), exists.clone()]),
                Formula::Or(vec![Formula::not(exists), instances]),
            ]),
        );
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::classify::{classify, FormKind};
    use crate::logic::formula::render_formula;
    use crate::logic::parser::{parse_formula, parse_open_formula};

    fn rendered(t: &Theory, sig: &Signature) -> Vec<String> {
        t.iter().map(|a| render_formula(&a.sentence, sig)).collect()
    }

    #[test]
    fn single_constant_has_reflexivity() {
        let sig = Signature::builder().sort("s", ["c"]).build().unwrap();
        let t = equality_axioms(&sig);
        assert!(rendered(&t, &sig).contains(&"c = c".to_string()));
    }

    #[test]
    fn symmetry_is_an_or_of_literals() {
        let sig = Signature::builder().sort("s", ["c", "d"]).build().unwrap();
        let t = equality_axioms(&sig);
        let want = parse_formula("Or[!(c = d); d = c]", &sig).unwrap();
        assert!(t.iter().any(|a| a.sentence == want));
    }

    #[test]
    fn no_cross_sort_equalities() {
        let sig =
            Signature::builder().sort("s", ["a", "b"]).sort("t", ["c"]).relation("R", ["s", "t"]).build().unwrap();
        let t = equality_axioms(&sig);
        for a in t.iter() {
            assert!(crate::logic::formula::well_sorted_check(&sig, &a.sentence).is_ok());
            assert_ne!(classify(&a.sentence), FormKind::Other);
        }
        // 2 + 1 reflexivity, 4 + 1 symmetry, 8 + 1 transitivity, |K_s|^2 |K_t|^2 = 4 congruence
        assert_eq!(t.len(), 3 + 5 + 9 + 4);
    }

    #[test]
    fn surjectivity_and_expansion() {
        let sig = Signature::builder().sort("s", ["c0", "c1"]).build().unwrap();
        let t = qe_axioms(&sig, &[]).unwrap();
        assert_eq!(
            rendered(&t, &sig),
            vec![
                "Forall x:s . Or[x = c0; x = c1]".to_string(),
                "And[Or[c0 = c0; c0 = c1]; Or[c1 = c0; c1 = c1]]".to_string(),
            ]
        );
    }

    #[test]
    fn witness_biconditional() {
        let sig = Signature::builder().sort("s", ["c0", "c1"]).relation("P", ["s"]).build().unwrap();
        let s = sig.sort_by_name("s").unwrap();
        let body = parse_open_formula("P(x)", &sig, &[("x".into(), s)]).unwrap();
        let t = qe_axioms(&sig, &[Witness { var: "x".into(), sort: s, body }]).unwrap();
        assert_eq!(t.len(), 3);
        assert_eq!(
            render_formula(&t.axioms[2].sentence, &sig),
            "And[Or[!Or[P(c0); P(c1)]; Exists x:s . P(x)]; Or[!Exists x:s . P(x); Or[P(c0); P(c1)]]]"
        );
    }

    #[test]
    fn witness_errors() {
        let sig = Signature::builder().sort("s", ["c0"]).relation("P", ["s"]).build().unwrap();
        let s = sig.sort_by_name("s").unwrap();
        let body = parse_open_formula("P(x)", &sig, &[("x".into(), s)]).unwrap();
        let bad_sort = Witness { var: "x".into(), sort: SortId(7), body: body.clone() };
        assert!(matches!(qe_axioms(&sig, &[bad_sort]), Err(AxiomError::UndeclaredSort { .. })));
        let closed = Witness { var: "x".into(), sort: s, body: parse_formula("P(c0)", &sig).unwrap() };
        assert!(matches!(qe_axioms(&sig, &[closed]), Err(AxiomError::FreeVariables { .. })));
    }
}
