//! Dense-set specifications and canonical refinement.

use std::fmt;
use std::sync::Arc;

use super::oracle::{ClassOracle, ForcingError};
use crate::logic::{
    and_or_clauses, classify, AxiomOrigin, FormKind, GroundAtom, Literal, LiteralSet, Signature, Theory,
};

pub type Predicate = Arc<dyn Fn(&LiteralSet) -> bool + Send + Sync>;

#[derive(Clone)]
pub enum DenseKind {
    /// Conditions deciding the atom.
    Decide(GroundAtom),
    /// Conditions containing one of the candidates.
    HitDisjunct(Vec<Literal>),
    /// Conditions satisfying the predicate; refinement search checks at most
    /// `bound` candidate extensions.
    Custom { predicate: Predicate, bound: usize },
}

impl fmt::Debug for DenseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DenseKind::Decide(a) => f.debug_tuple("Decide").field(a).finish(),
            DenseKind::HitDisjunct(c) => f.debug_tuple("HitDisjunct").field(c).finish(),
            DenseKind::Custom { bound, .. } => f.debug_struct("Custom").field("bound", bound).finish_non_exhaustive(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DenseSpec {
    pub label: String,
    pub kind: DenseKind,
}

impl DenseSpec {
    pub fn decide(atom: GroundAtom, sig: &Signature) -> Self {
        DenseSpec { label: format!("decide {}", atom.display(sig)), kind: DenseKind::Decide(atom) }
    }

    /// Candidates are stored sorted and deduplicated.
    pub fn hit(label: impl Into<String>, candidates: impl IntoIterator<Item = Literal>) -> Self {
        let mut c: Vec<Literal> = candidates.into_iter().collect();
        c.sort();
        c.dedup();
        DenseSpec { label: label.into(), kind: DenseKind::HitDisjunct(c) }
    }

    pub fn custom(label: impl Into<String>, bound: usize, predicate: Predicate) -> Self {
        DenseSpec { label: label.into(), kind: DenseKind::Custom { predicate, bound } }
    }

    pub fn meets(&self, q: &LiteralSet) -> bool {
        match &self.kind {
            DenseKind::Decide(a) => q.decides(a),
            DenseKind::HitDisjunct(c) => c.iter().any(|l| q.contains(l)),
            DenseKind::Custom { predicate, .. } => predicate(q),
        }
    }
}

/// One hit-disjunct spec per conjunct of every quantifier-free axiom.
/// Quantified QE axioms are skipped: their quantifier-free expansions carry
/// the same content.
pub fn dense_sets_from_theory(t: &Theory, sig: &Signature) -> Result<Vec<DenseSpec>, ForcingError> {
    let mut out = Vec::new();
    for (i, ax) in t.iter().enumerate() {
        if ax.origin == AxiomOrigin::Qe && ax.sentence.has_quantifier() {
            continue;
        }
        let not_and_or = || ForcingError::NotAndOr { index: i, axiom: ax.sentence.display(sig).to_string() };
        if classify(&ax.sentence) == FormKind::Other {
            return Err(not_and_or());
        }
        let clauses = and_or_clauses(&ax.sentence).ok_or_else(not_and_or)?;
        for (j, clause) in clauses.into_iter().enumerate() {
            out.push(DenseSpec::hit(format!("{}[{}].{}", ax.origin, i, j), clause));
        }
    }
    Ok(out)
}

/// A decide spec for every atomic sentence, in canonical order.
pub fn decision_dense_sets(sig: &Signature) -> Vec<DenseSpec> {
    sig.atoms().into_iter().map(|a| DenseSpec::decide(a, sig)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refinement {
    pub condition: LiteralSet,
    pub added: LiteralSet,
    pub witness: usize,
}

fn require_condition(p: &LiteralSet, oracle: &dyn ClassOracle) -> Result<usize, ForcingError> {
    oracle.witness(p)?.ok_or_else(|| ForcingError::NotACondition(p.display(oracle.signature()).to_string()))
}

/// The canonically least extension of `p` in P_A meeting `d`: smallest
/// number of added literals first, then lexicographic over the literal
/// order. Returns `p` itself when it already meets `d`.
pub fn refine_to_meet(p: &LiteralSet, d: &DenseSpec, oracle: &dyn ClassOracle) -> Result<Refinement, ForcingError> {
    let w = require_condition(p, oracle)?;
    if d.meets(p) {
        return Ok(Refinement { condition: p.clone(), added: LiteralSet::new(), witness: w });
    }
    let not_dense =
        || ForcingError::NotDense { label: d.label.clone(), condition: p.display(oracle.signature()).to_string() };
    let single = |candidates: Vec<Literal>| -> Result<Refinement, ForcingError> {
        for l in candidates {
            let q = p.with(l.clone());
            if let Some(w) = oracle.witness(&q)? {
                return Ok(Refinement { condition: q, added: [l].into_iter().collect(), witness: w });
            }
        }
        Err(not_dense())
    };
    match &d.kind {
        DenseKind::Decide(a) => single(vec![Literal::pos(a.clone()), Literal::neg(a.clone())]),
        DenseKind::HitDisjunct(c) => single(c.clone()),
        DenseKind::Custom { predicate, bound } => {
            let pool: Vec<Literal> = oracle
                .signature()
                .atoms()
                .into_iter()
                .filter(|a| !p.decides(a))
                .flat_map(|a| [Literal::pos(a.clone()), Literal::neg(a)])
                .collect();
            let mut checked = 0usize;
            for size in 1..=pool.len() / 2 {
                let mut chosen = Vec::new();
                let found = combos(&pool, size, 0, &mut chosen, &mut |added: &[Literal]| {
                    checked += 1;
                    if checked > *bound {
                        return Some(Err(ForcingError::OracleFailure { label: d.label.clone(), bound: *bound }));
                    }
                    let q: LiteralSet = p.union(&added.iter().cloned().collect());
                    if !predicate(&q) {
                        return None;
                    }
                    match oracle.witness(&q) {
                        Ok(Some(w)) => {
                            Some(Ok(Refinement { condition: q, added: added.iter().cloned().collect(), witness: w }))
                        }
                        Ok(None) => None,
                        Err(e) => Some(Err(e)),
                    }
                });
                if let Some(r) = found {
                    return r;
                }
            }
            Err(not_dense())
        }
    }
}

/// Visits lexicographic combinations of `size` literals with distinct atoms;
/// `pool` lists both polarities of each atom adjacently.
fn combos<T>(
    pool: &[Literal],
    size: usize,
    from: usize,
    chosen: &mut Vec<Literal>,
    visit: &mut impl FnMut(&[Literal]) -> Option<T>,
) -> Option<T> {
    if chosen.len() == size {
        return visit(chosen);
    }
    for i in from..pool.len() {
        if chosen.last().is_some_and(|l| l.atom == pool[i].atom) {
            continue;
        }
        chosen.push(pool[i].clone());
        let r = combos(pool, size, i + 1, chosen, visit);
        chosen.pop();
        if r.is_some() {
            return r;
        }
    }
    None
}

/// Whether `d` is dense below `p` in P_A: every condition extending `p`
/// has an extension in P_A meeting `d`.
///
/// Decide and hit-disjunct sets are closed upward, so it suffices to test
/// the maximal conditions, which are the diagrams of the members realizing
/// `p`. Custom sets are checked by exhaustive search over subsets of those
/// diagrams, bounded by the spec's bound.
pub fn dense_below(p: &LiteralSet, d: &DenseSpec, oracle: &dyn ClassOracle) -> Result<bool, ForcingError> {
    let diagrams = oracle.diagrams_extending(p)?;
    match &d.kind {
        DenseKind::Decide(_) | DenseKind::HitDisjunct(_) => Ok(diagrams.iter().all(|m| d.meets(m))),
        DenseKind::Custom { bound, .. } => {
            let mut budget = *bound;
            for m in &diagrams {
                let free: Vec<Literal> = m.difference(p).into_iter().collect();
                if free.len() >= usize::BITS as usize - 1 {
                    return Err(ForcingError::OracleFailure { label: d.label.clone(), bound: *bound });
                }
                for mask in 0usize..1 << free.len() {
                    let q: LiteralSet = p.union(
                        &free.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, l)| l.clone()).collect(),
                    );
                    if !has_meeting_extension(&q, d, &diagrams, &mut budget)? {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
    }
}

fn has_meeting_extension(
    q: &LiteralSet,
    d: &DenseSpec,
    diagrams: &[LiteralSet],
    budget: &mut usize,
) -> Result<bool, ForcingError> {
    for m in diagrams.iter().filter(|m| q.is_subset(m)) {
        let free: Vec<Literal> = m.difference(q).into_iter().collect();
        for mask in 0usize..1 << free.len() {
            if *budget == 0 {
                let bound = match &d.kind {
                    DenseKind::Custom { bound, .. } => *bound,
                    _ => 0,
                };
                return Err(ForcingError::OracleFailure { label: d.label.clone(), bound });
            }
            *budget -= 1;
            let r =
                q.union(&free.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, l)| l.clone()).collect());
            if d.meets(&r) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forcing::oracle::FiniteClass;
    use crate::logic::{equality_axioms, parse_formula, parse_literal, parse_literal_set, AxiomOrigin};
    use crate::semantics::ClassSpec;

    fn sig() -> Signature {
        Signature::builder().sort("s", ["c0", "c1"]).relation("P", ["s"]).relation("Q", ["s"]).build().unwrap()
    }

    fn class(sig: &Signature, constraint: &str) -> FiniteClass {
        let spec = ClassSpec::new(sig.clone(), vec![2])
            .unwrap()
            .with_constraint(parse_formula(constraint, sig).unwrap())
            .unwrap();
        FiniteClass::from_spec(&spec)
    }

    #[test]
    fn specs_from_an_axiom() {
        let sig = sig();
        let mut t = Theory::new();
        t.push(AxiomOrigin::User, parse_formula("And[Or[P(c0); P(c1)]; Or[!Q(c0)]]", &sig).unwrap());
        let specs = dense_sets_from_theory(&t, &sig).unwrap();
        assert_eq!(specs.len(), 2);
        let DenseKind::HitDisjunct(c) = &specs[0].kind else { panic!() };
        assert_eq!(c.len(), 2);
        let DenseKind::HitDisjunct(c) = &specs[1].kind else { panic!() };
        assert_eq!(c, &vec![parse_literal("!Q(c0)", &sig).unwrap()]);
        assert_eq!(specs[1].label, "user[0].1");
    }

    #[test]
    fn reflexivity_becomes_a_singleton_spec() {
        let sig = Signature::builder().sort("s", ["c", "d"]).build().unwrap();
        let specs = dense_sets_from_theory(&equality_axioms(&sig), &sig).unwrap();
        let refl = parse_literal("c = c", &sig).unwrap();
        assert!(specs.iter().any(|d| matches!(&d.kind, DenseKind::HitDisjunct(c) if c == &vec![refl.clone()])));
    }

    #[test]
    fn or_and_axiom_is_rejected() {
        let sig = sig();
        let mut t = Theory::new();
        t.push(AxiomOrigin::User, parse_formula("Or[And[P(c0); P(c1)]; And[!P(c0)]]", &sig).unwrap());
        assert!(matches!(dense_sets_from_theory(&t, &sig), Err(ForcingError::NotAndOr { index: 0, .. })));
    }

    #[test]
    fn decision_specs_cover_the_vocabulary() {
        let sig = Signature::builder().sort("s", ["c"]).relation("P", ["s"]).build().unwrap();
        let specs = decision_dense_sets(&sig);
        let labels: Vec<&str> = specs.iter().map(|d| d.label.as_str()).collect();
        assert_eq!(labels, vec!["decide c = c", "decide P(c)"]);
    }

    #[test]
    fn refinement_examples() {
        let sig = sig();
        let never_p = class(&sig, "Forall x:s . !P(x)");
        let d = DenseSpec::decide(parse_literal("P(c0)", &sig).unwrap().atom, &sig);
        let r = refine_to_meet(&LiteralSet::new(), &d, &never_p).unwrap();
        assert_eq!(r.condition.display(&sig).to_string(), "{!P(c0)}");
        assert_eq!(refine_to_meet(&r.condition, &d, &never_p).unwrap().condition, r.condition);

        let some_p = class(&sig, "Exists x:s . P(x)");
        let hit = DenseSpec::hit("h", [parse_literal("P(c0)", &sig).unwrap(), parse_literal("P(c1)", &sig).unwrap()]);
        let p = parse_literal_set("{!P(c0)}", &sig).unwrap();
        let r = refine_to_meet(&p, &hit, &some_p).unwrap();
        assert_eq!(r.condition.display(&sig).to_string(), "{!P(c0), P(c1)}");

        let blocked = DenseSpec::hit("b", [parse_literal("P(c0)", &sig).unwrap()]);
        assert!(matches!(refine_to_meet(&p, &blocked, &some_p), Err(ForcingError::NotDense { .. })));
        let bad = parse_literal_set("{!(c0 = c0)}", &sig).unwrap();
        assert!(matches!(refine_to_meet(&bad, &hit, &some_p), Err(ForcingError::NotACondition(_))));
    }

    #[test]
    fn custom_search_is_bounded_and_canonical() {
        let sig = sig();
        let all = class(&sig, "c0 = c0");
        let both = {
            let a = parse_literal("P(c0)", &sig).unwrap();
            let b = parse_literal("Q(c1)", &sig).unwrap();
            Arc::new(move |q: &LiteralSet| q.contains(&a) && q.contains(&b)) as Predicate
        };
        let d = DenseSpec::custom("pair", 10_000, both.clone());
        let r = refine_to_meet(&LiteralSet::new(), &d, &all).unwrap();
        assert_eq!(r.added.display(&sig).to_string(), "{P(c0), Q(c1)}");
        let tight = DenseSpec::custom("pair", 3, both);
        assert!(matches!(
            refine_to_meet(&LiteralSet::new(), &tight, &all),
            Err(ForcingError::OracleFailure { bound: 3, .. })
        ));
    }

    #[test]
    fn density_by_diagrams() {
        let sig = sig();
        let some_p = class(&sig, "Exists x:s . P(x)");
        let hit = DenseSpec::hit("h", [parse_literal("P(c0)", &sig).unwrap(), parse_literal("P(c1)", &sig).unwrap()]);
        assert!(dense_below(&LiteralSet::new(), &hit, &some_p).unwrap());
        let only = DenseSpec::hit("o", [parse_literal("P(c0)", &sig).unwrap()]);
        assert!(!dense_below(&LiteralSet::new(), &only, &some_p).unwrap());
        let p = parse_literal_set("{P(c0)}", &sig).unwrap();
        assert!(dense_below(&p, &only, &some_p).unwrap());
    }
}
