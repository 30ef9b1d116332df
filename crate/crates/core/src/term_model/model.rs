//! The quotient of the constants by the equalities of a maximal Σ.

use std::collections::BTreeSet;

use thiserror::Error;

use super::welldefined::{verify_welldefined, WellDefinedReport};
use crate::forcing::ForcingError;
use crate::logic::{ConstId, GroundAtom, Literal, LiteralSet, RelId, Signature, SortId};
use crate::semantics::MultiStructure;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermModelError {
    #[error("Σ is not maximal: `{0}` is undecided")]
    NotMaximal(String),
    #[error("Σ is ill formed: {0}")]
    IllFormed(WellDefinedReport),
    #[error("sentence is not of and-or shape")]
    NotAndOr,
    #[error("conjunct {0} is neither met nor refuted by Σ")]
    MissingConjunct(usize),
    #[error("direct evaluation and Σ-evidence disagree on conjunct {0}")]
    Disagreement(usize),
    #[error(transparent)]
    Forcing(#[from] ForcingError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermModel {
    /// Per sort, the classes `[c]_Σ`, each sorted, ordered by least member.
    classes: Vec<Vec<Vec<ConstId>>>,
    /// Least member of each constant's class.
    rep: Vec<ConstId>,
    /// Relation extensions over representative tuples.
    relations: Vec<BTreeSet<Vec<ConstId>>>,
}

impl TermModel {
    pub fn classes(&self, s: SortId) -> &[Vec<ConstId>] {
        &self.classes[s.0]
    }

    pub fn domain_size(&self, s: SortId) -> usize {
        self.classes[s.0].len()
    }

    /// The least constant of `[c]_Σ`.
    pub fn rep(&self, c: ConstId) -> ConstId {
        self.rep[c.0]
    }

    pub fn extension(&self, r: RelId) -> &BTreeSet<Vec<ConstId>> {
        &self.relations[r.0]
    }

    /// The model as a structure; each element is named after its class
    /// representative.
    pub fn to_structure(&self, sig: &Signature) -> MultiStructure {
        let reps: Vec<ConstId> = self.classes.iter().flatten().map(|cl| cl[0]).collect();
        let elem = |c: ConstId| reps.iter().position(|&r| r == self.rep[c.0]).expect("representative is listed");
        let mut domains = Vec::new();
        let mut base = 0;
        for cls in &self.classes {
            domains.push((base..base + cls.len()).collect());
            base += cls.len();
        }
        MultiStructure::new(
            sig,
            reps.iter().map(|&c| sig.const_name(c).to_string()).collect(),
            domains,
            sig.const_ids().map(elem).collect(),
            self.relations
                .iter()
                .map(|ext| ext.iter().map(|t| t.iter().map(|&c| elem(c)).collect()).collect())
                .collect(),
        )
        .expect("term model is a valid structure")
    }

    /// Fixture-format rendering with class listings.
    pub fn render(&self, sig: &Signature) -> String {
        let mut out = String::new();
        for s in sig.sort_ids() {
            let cls: Vec<String> = self.classes[s.0]
                .iter()
                .map(|cl| format!("[{}]", cl.iter().map(|&c| sig.const_name(c)).collect::<Vec<_>>().join(" ")))
                .collect();
            out.push_str(&format!("# sort {}: {} class(es) {}\n", sig.sort_name(s), cls.len(), cls.join(" ")));
        }
        out.push_str(&self.to_structure(sig).render(sig));
        out
    }

    pub fn verify_welldefined(sigma: &LiteralSet, sig: &Signature) -> WellDefinedReport {
        verify_welldefined(sigma, sig)
    }
}

/// Builds `M_Σ`: the domain of each sort is the set of classes
/// `[c]_Σ = {d : (c = d) ∈ Σ}` and `R` holds of classes exactly when it holds
/// of their representatives in Σ.
pub fn build_term_model(sigma: &LiteralSet, sig: &Signature) -> Result<TermModel, TermModelError> {
    if let Some(a) = sig.atoms().into_iter().find(|a| !sigma.decides(a)) {
        return Err(TermModelError::NotMaximal(a.display(sig).to_string()));
    }
    let report = verify_welldefined(sigma, sig);
    if !report.is_ok() {
        return Err(TermModelError::IllFormed(report));
    }
    let mut classes = Vec::new();
    let mut rep = vec![ConstId(0); sig.const_count()];
    for s in sig.sort_ids() {
        let mut cls: Vec<Vec<ConstId>> = Vec::new();
        for &c in sig.constants_of(s) {
            if let Some(cl) = cls.iter_mut().find(|cl| sigma.contains(&Literal::pos(GroundAtom::Eq(cl[0], c)))) {
                cl.push(c);
            } else {
                cls.push(vec![c]);
            }
        }
        for cl in &cls {
            for &c in cl {
                rep[c.0] = cl[0];
            }
        }
        classes.push(cls);
    }
    let relations = sig
        .rel_ids()
        .map(|r| {
            sig.tuples_of(r)
                .into_iter()
                .filter(|t| t.iter().all(|&c| rep[c.0] == c))
                .filter(|t| sigma.contains(&Literal::pos(GroundAtom::Rel(r, t.clone()))))
                .collect()
        })
        .collect();
    Ok(TermModel { classes, rep, relations })
}
