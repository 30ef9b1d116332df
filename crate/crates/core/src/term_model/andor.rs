//! Truth of and-or sentences in the term model, with per-conjunct evidence,
//! and the density side of the truth lemma.

use super::model::{TermModel, TermModelError};
use crate::forcing::{dense_below, ClassOracle, DenseSpec, Trace};
use crate::logic::{and_or_clauses, Formula, Literal, LiteralSet, Signature};
use crate::semantics::eval;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    /// A literal of the conjunct that lies in Σ, with the trace step that
    /// added it (0 for the start condition) when a trace is supplied.
    Met { literal: Literal, stage: Option<usize> },
    /// Σ contains the negation of every literal of the conjunct.
    Refuted { literals: Vec<Literal> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub value: bool,
    pub conjuncts: Vec<Evidence>,
}

impl Verdict {
    pub fn render(&self, sig: &Signature) -> String {
        let mut out = format!("value: {}\n", self.value);
        for (i, e) in self.conjuncts.iter().enumerate() {
            match e {
                Evidence::Met { literal, stage } => {
                    out.push_str(&format!("  [{i}] met by {}", literal.display(sig)));
                    if let Some(s) = stage {
                        out.push_str(&format!(" at step {s}"));
                    }
                    out.push('\n');
                }
                Evidence::Refuted { literals } => {
                    let ls: Vec<String> = literals.iter().map(|l| l.display(sig).to_string()).collect();
                    out.push_str(&format!("  [{i}] refuted by {}\n", ls.join(", ")));
                }
            }
        }
        out
    }
}

/// Decides `f` in the term model twice: by reading each conjunct off Σ and
/// by direct evaluation. The two must agree conjunct by conjunct.
pub fn verify_andor(
    tm: &TermModel,
    sig: &Signature,
    f: &Formula,
    sigma: &LiteralSet,
    trace: Option<&Trace>,
) -> Result<Verdict, TermModelError> {
    let clauses = and_or_clauses(f).ok_or(TermModelError::NotAndOr)?;
    let m = tm.to_structure(sig);
    let mut conjuncts = Vec::new();
    for (i, clause) in clauses.iter().enumerate() {
        let evidence = if let Some(l) = clause.iter().find(|l| sigma.contains(l)) {
            Evidence::Met { literal: l.clone(), stage: trace.and_then(|t| t.stage_of(l)) }
        } else if clause.iter().all(|l| sigma.contains(&l.negate())) {
            Evidence::Refuted { literals: clause.iter().map(Literal::negate).collect() }
        } else {
            return Err(TermModelError::MissingConjunct(i));
        };
        let direct = eval(sig, &m, &Formula::Or(clause.iter().map(Literal::to_formula).collect()))
            .expect("ground clause evaluates");
        if direct != matches!(evidence, Evidence::Met { .. }) {
            return Err(TermModelError::Disagreement(i));
        }
        conjuncts.push(evidence);
    }
    let value = conjuncts.iter().all(|e| matches!(e, Evidence::Met { .. }));
    Ok(Verdict { value, conjuncts })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaOutcome {
    /// Direct truth of the sentence in the term model.
    pub truth: bool,
    /// Earliest chain index whose condition has every conjunct's dense set
    /// dense below it.
    pub dense_from: Option<usize>,
}

impl LemmaOutcome {
    pub fn agrees(&self) -> bool {
        self.truth == self.dense_from.is_some()
    }
}

/// Both sides of the truth lemma for an and-or sentence: truth in `tm`, and
/// the existence of one chain condition below which every
/// `D_i = {q : some ψ_ij ∈ q}` is dense.
pub fn lemma_check(
    tm: &TermModel,
    sig: &Signature,
    f: &Formula,
    chain: &[LiteralSet],
    oracle: &dyn ClassOracle,
) -> Result<LemmaOutcome, TermModelError> {
    let clauses = and_or_clauses(f).ok_or(TermModelError::NotAndOr)?;
    let truth = eval(sig, &tm.to_structure(sig), f).expect("closed sentence evaluates");
    let specs: Vec<DenseSpec> =
        clauses.into_iter().enumerate().map(|(i, c)| DenseSpec::hit(format!("D_{i}"), c)).collect();
    for (k, p) in chain.iter().enumerate() {
        let mut all = true;
        for d in &specs {
            if !dense_below(p, d, oracle)? {
                all = false;
                break;
            }
        }
        if all {
            return Ok(LemmaOutcome { truth, dense_from: Some(k) });
        }
    }
    Ok(LemmaOutcome { truth, dense_from: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forcing::{decision_dense_sets, dense_sets_from_theory, run_construction, FiniteClass, Schedule};
    use crate::logic::{parse_formula, parse_literal_set, AxiomOrigin, Theory};
    use crate::semantics::ClassSpec;
    use crate::term_model::build_term_model;

    fn setup() -> (Signature, FiniteClass) {
        let sig = Signature::builder().sort("s", ["c0", "c1"]).relation("P", ["s"]).build().unwrap();
        let f = parse_formula("Or[P(c0); P(c1)]", &sig).unwrap();
        let class = FiniteClass::from_spec(&ClassSpec::new(sig.clone(), vec![2]).unwrap().with_constraint(f).unwrap());
        (sig, class)
    }

    #[test]
    fn trivial_verdicts() {
        let sig = Signature::builder().sort("s", ["c0"]).relation("P", ["s"]).build().unwrap();
        let sigma = parse_literal_set("{c0 = c0, !P(c0)}", &sig).unwrap();
        let tm = build_term_model(&sigma, &sig).unwrap();
        let v = verify_andor(&tm, &sig, &parse_formula("And[Or[c0 = c0]]", &sig).unwrap(), &sigma, None).unwrap();
        assert!(v.value);
        let v = verify_andor(&tm, &sig, &parse_formula("And[Or[P(c0)]]", &sig).unwrap(), &sigma, None).unwrap();
        assert!(!v.value);
        assert_eq!(
            v.conjuncts,
            vec![Evidence::Refuted { literals: parse_literal_set("{!P(c0)}", &sig).unwrap().into_iter().collect() }]
        );
        assert_eq!(
            verify_andor(&tm, &sig, &parse_formula("Or[And[P(c0)]; And[c0 = c0; P(c0)]]", &sig).unwrap(), &sigma, None),
            Err(TermModelError::NotAndOr)
        );
    }

    #[test]
    fn scheduled_axiom_cites_its_step() {
        let (sig, class) = setup();
        let mut t = Theory::new();
        let ax = parse_formula("Or[P(c0); P(c1)]", &sig).unwrap();
        t.push(AxiomOrigin::User, ax.clone());
        let mut entries = dense_sets_from_theory(&t, &sig).unwrap();
        entries.extend(decision_dense_sets(&sig));
        let (sigma, trace) = run_construction(&LiteralSet::new(), &Schedule::new(entries), &class).unwrap();
        let tm = build_term_model(&sigma.literals, &sig).unwrap();
        let v = verify_andor(&tm, &sig, &ax, &sigma.literals, Some(&trace)).unwrap();
        assert!(v.value);
        assert_eq!(v.conjuncts.len(), 1);
        assert!(matches!(&v.conjuncts[0], Evidence::Met { stage: Some(1), .. }));
    }

    #[test]
    fn lemma_sides_agree() {
        let (sig, class) = setup();
        let (sigma, trace) =
            run_construction(&LiteralSet::new(), &Schedule::new(decision_dense_sets(&sig)), &class).unwrap();
        let tm = build_term_model(&sigma.literals, &sig).unwrap();
        let chain = trace.chain();
        let valid = parse_formula("Or[P(c0); P(c1)]", &sig).unwrap();
        let out = lemma_check(&tm, &sig, &valid, &chain, &class).unwrap();
        assert_eq!(out, LemmaOutcome { truth: true, dense_from: Some(0) });
        for text in ["P(c0)", "!P(c0)", "And[Or[P(c1); !(c0 = c1)]; Or[c0 = c0]]"] {
            let f = parse_formula(text, &sig).unwrap();
            assert!(lemma_check(&tm, &sig, &f, &chain, &class).unwrap().agrees(), "{text}");
        }
    }
}
