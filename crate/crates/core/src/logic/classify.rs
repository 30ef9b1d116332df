//! Syntactic ⋀⋁ classification.

use super::formula::{Formula, Literal};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormKind {
    Literal,
    AndOr,
    Other,
}

/// A conjunct of an ⋀⋁ sentence: the disjunction of its literals.
pub type Clause = Vec<Literal>;

/// Collapses every singleton `And[F]` / `Or[F]` to `F`, recursively.
pub fn normalize(f: &Formula) -> Formula {
    match f {
        Formula::And(fs) | Formula::Or(fs) if fs.len() == 1 => normalize(&fs[0]),
        Formula::And(fs) => Formula::And(fs.iter().map(normalize).collect()),
        Formula::Or(fs) => Formula::Or(fs.iter().map(normalize).collect()),
        Formula::Not(g) => Formula::not(normalize(g)),
        Formula::Exists { var, sort, body } => Formula::exists(var, *sort, normalize(body)),
        Formula::Forall { var, sort, body } => Formula::forall(var, *sort, normalize(body)),
        atom => atom.clone(),
    }
}

fn literals_of(fs: &[Formula]) -> Option<Clause> {
    fs.iter().map(Formula::as_literal).collect()
}

/// Conjuncts of `f` read as `⋀_i ⋁_j ψ_ij`, after singleton collapse.
///
/// A literal is one conjunct with one disjunct; a bare `Or` of literals is a
/// single conjunct. Returns `None` for every other shape.
pub fn and_or_clauses(f: &Formula) -> Option<Vec<Clause>> {
    let f = normalize(f);
    if let Some(l) = f.as_literal() {
        return Some(vec![vec![l]]);
    }
    match &f {
        Formula::Or(fs) => literals_of(fs).map(|c| vec![c]),
        Formula::And(fs) => fs
            .iter()
            .map(|g| match g {
                Formula::Or(ds) => literals_of(ds),
                lit => lit.as_literal().map(|l| vec![l]),
            })
            .collect(),
        _ => None,
    }
}

pub fn classify(f: &Formula) -> FormKind {
    if normalize(f).as_literal().is_some() {
        FormKind::Literal
    } else if and_or_clauses(f).is_some() {
        FormKind::AndOr
    } else {
        FormKind::Other
    }
}

/// Builds `And[Or[..]; ..]` from clauses, keeping singleton families explicit.
pub fn and_or_formula(clauses: &[Clause]) -> Formula {
    Formula::And(clauses.iter().map(|c| Formula::Or(c.iter().map(Literal::to_formula).collect())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parser::parse_formula;
    use crate::logic::signature::Signature;

    fn sig() -> Signature {
        Signature::builder().sort("s", ["c0", "c1"]).relation("P", ["s"]).build().unwrap()
    }

    fn kind(text: &str) -> FormKind {
        classify(&parse_formula(text, &sig()).unwrap())
    }

    #[test]
    fn definitional_shapes() {
        assert_eq!(kind("And[Or[P(c0)]; Or[!P(c1)]]"), FormKind::AndOr);
        assert_eq!(kind("P(c0)"), FormKind::Literal);
        assert_eq!(kind("And[Or[!(c0 = c1)]]"), FormKind::Literal);
        assert_eq!(kind("Or[P(c0); c0 = c1]"), FormKind::AndOr);
        assert_eq!(kind("And[P(c0); Or[P(c1); !P(c0)]]"), FormKind::AndOr);
    }

    #[test]
    fn or_of_ands_is_other() {
        assert_eq!(kind("Or[And[P(c0); P(c1)]; And[!P(c0)]]"), FormKind::Other);
        assert_eq!(kind("!!P(c0)"), FormKind::Other);
        assert_eq!(kind("And[And[P(c0); P(c1)]; P(c0)]"), FormKind::Other);
        assert_eq!(kind("Exists x:s . P(x)"), FormKind::Other);
        assert_eq!(kind("!And[P(c0); P(c1)]"), FormKind::Other);
    }

    #[test]
    fn clauses_are_extracted_in_order() {
        let sig = sig();
        let f = parse_formula("And[Or[P(c0); P(c1)]; !P(c0)]", &sig).unwrap();
        let clauses = and_or_clauses(&f).unwrap();
        assert_eq!(clauses.len(), 2);
        assert_eq!(clauses[0].len(), 2);
        assert!(!clauses[1][0].is_positive());
        assert_eq!(and_or_clauses(&and_or_formula(&clauses)), Some(clauses));
    }
}
