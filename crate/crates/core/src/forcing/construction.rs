//! The deterministic Rasiowa–Sikorski pass.

use super::dense::{refine_to_meet, DenseSpec};
use super::oracle::{ClassOracle, ForcingError};
use crate::logic::{GroundAtom, Literal, LiteralSet, Signature};

#[derive(Clone, Debug, Default)]
pub struct Schedule {
    pub entries: Vec<DenseSpec>,
    /// Repeat passes until one adds nothing.
    pub round_robin: bool,
    /// Reserved for tie-breaking; the canonical order makes it unused.
    pub seed: u64,
}

impl Schedule {
    pub fn new(entries: Vec<DenseSpec>) -> Self {
        Schedule { entries, round_robin: false, seed: 0 }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStep {
    /// 1-based step number.
    pub step: usize,
    /// Index of the schedule entry met at this step.
    pub entry: usize,
    pub label: String,
    pub before: LiteralSet,
    pub added: LiteralSet,
    pub witness: usize,
}

impl TraceStep {
    pub fn after(&self) -> LiteralSet {
        self.before.union(&self.added)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trace {
    pub start: LiteralSet,
    pub start_witness: usize,
    pub steps: Vec<TraceStep>,
}

impl Trace {
    /// The conditions of the chain: the start condition, then the condition
    /// after each step.
    pub fn chain(&self) -> Vec<LiteralSet> {
        let mut out = vec![self.start.clone()];
        out.extend(self.steps.iter().map(TraceStep::after));
        out
    }

    /// Step at which `l` entered the chain; 0 for literals of the start.
    pub fn stage_of(&self, l: &Literal) -> Option<usize> {
        if self.start.contains(l) {
            return Some(0);
        }
        self.steps.iter().find(|s| s.added.contains(l)).map(|s| s.step)
    }

    /// First step meeting schedule entry `entry`.
    pub fn met_at(&self, entry: usize) -> Option<usize> {
        self.steps.iter().find(|s| s.entry == entry).map(|s| s.step)
    }

    pub fn render(&self, sig: &Signature) -> String {
        let mut out = format!("start {} | witness {}\n", self.start.display(sig), self.start_witness);
        for s in &self.steps {
            out.push_str(&format!(
                "step {} | dense {} | add {} | witness {}\n",
                s.step,
                s.label,
                s.added.display(sig),
                s.witness
            ));
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletenessReport {
    pub total_atoms: usize,
    pub decided: usize,
    pub undecided: Vec<GroundAtom>,
    /// No single further literal keeps the set in P_A.
    pub no_proper_extension: bool,
}

impl CompletenessReport {
    pub fn decides_all(&self) -> bool {
        self.undecided.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaSet {
    pub literals: LiteralSet,
    pub report: CompletenessReport,
}

impl SigmaSet {
    /// One literal per line, canonical order.
    pub fn render(&self, sig: &Signature) -> String {
        self.literals.iter().map(|l| format!("{}\n", l.display(sig))).collect()
    }
}

pub fn completeness(p: &LiteralSet, oracle: &dyn ClassOracle) -> Result<CompletenessReport, ForcingError> {
    let atoms = oracle.signature().atoms();
    let undecided: Vec<GroundAtom> = atoms.iter().filter(|a| !p.decides(a)).cloned().collect();
    let mut no_proper_extension = true;
    for a in &undecided {
        if oracle.witness(&p.with(Literal::pos(a.clone())))?.is_some()
            || oracle.witness(&p.with(Literal::neg(a.clone())))?.is_some()
        {
            no_proper_extension = false;
            break;
        }
    }
    Ok(CompletenessReport {
        total_atoms: atoms.len(),
        decided: atoms.len() - undecided.len(),
        undecided,
        no_proper_extension,
    })
}

/// Meets every schedule entry in order, each by its canonical refinement,
/// starting from `p0`. Errors carry the failing step.
pub fn run_construction(
    p0: &LiteralSet,
    sched: &Schedule,
    oracle: &dyn ClassOracle,
) -> Result<(SigmaSet, Trace), ForcingError> {
    let sig = oracle.signature();
    let start_witness = oracle.witness(p0)?.ok_or_else(|| ForcingError::NotACondition(p0.display(sig).to_string()))?;
    let mut trace = Trace { start: p0.clone(), start_witness, steps: Vec::new() };
    let mut p = p0.clone();
    let passes = if sched.round_robin { sig.atom_count() + 1 } else { 1 };
    for _ in 0..passes {
        let mut grew = false;
        for (entry, d) in sched.entries.iter().enumerate() {
            let step = trace.steps.len() + 1;
            let r = refine_to_meet(&p, d, oracle).map_err(|e| ForcingError::AtStep { step, source: Box::new(e) })?;
            grew |= !r.added.is_empty();
            trace.steps.push(TraceStep {
                step,
                entry,
                label: d.label.clone(),
                before: p.clone(),
                added: r.added,
                witness: r.witness,
            });
            p = r.condition;
        }
        if !grew {
            break;
        }
    }
    let report = completeness(&p, oracle)?;
    Ok((SigmaSet { literals: p, report }, trace))
}
