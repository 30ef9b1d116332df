//! Class oracles: which finite literal sets are realized by some member.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::logic::{GroundAtom, Literal, LiteralSet, Signature};
use crate::semantics::{atom_holds, ClassSpec, MultiStructure};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForcingError {
    #[error("literal `{0}` is outside the class vocabulary")]
    UnknownAtom(String),
    #[error("{0} is not a condition: no class member realizes it")]
    NotACondition(String),
    #[error("dense set `{label}` is not dense below {condition}")]
    NotDense { label: String, condition: String },
    #[error("oracle gave up on `{label}` after {bound} candidates")]
    OracleFailure { label: String, bound: usize },
    #[error("axiom {index} is not of and-or shape: {axiom}")]
    NotAndOr { index: usize, axiom: String },
    #[error("step {step}: {source}")]
    AtStep { step: usize, source: Box<ForcingError> },
}

impl ForcingError {
    /// The error underneath any step context.
    pub fn root(&self) -> &ForcingError {
        match self {
            ForcingError::AtStep { source, .. } => source.root(),
            e => e,
        }
    }
}

/// What the forcing needs to know about a class of structures.
pub trait ClassOracle {
    fn signature(&self) -> &Signature;

    /// Least index of a member realizing every literal of `p`.
    fn witness(&self, p: &LiteralSet) -> Result<Option<usize>, ForcingError>;

    /// Atomic diagrams of the members realizing `p`, in member order.
    fn diagrams_extending(&self, p: &LiteralSet) -> Result<Vec<LiteralSet>, ForcingError>;
}

/// An explicitly listed class with per-member truth tables over the atomic
/// vocabulary.
#[derive(Clone, Debug)]
pub struct FiniteClass {
    sig: Signature,
    atoms: Vec<GroundAtom>,
    index: BTreeMap<GroundAtom, usize>,
    members: Vec<MultiStructure>,
    truth: Vec<Vec<u64>>,
}

fn words(n: usize) -> usize {
    n.div_ceil(64)
}

impl FiniteClass {
    pub fn from_spec(spec: &ClassSpec) -> Self {
        Self::from_members(spec.signature().clone(), spec.enumerate().collect())
    }

    pub fn from_members(sig: Signature, members: Vec<MultiStructure>) -> Self {
        let atoms = sig.atoms();
        let index = atoms.iter().enumerate().map(|(i, a)| (a.clone(), i)).collect();
        let truth = members
            .iter()
            .map(|m| {
                let mut row = vec![0u64; words(atoms.len())];
                for (i, a) in atoms.iter().enumerate() {
                    if atom_holds(m, a) {
                        row[i / 64] |= 1 << (i % 64);
                    }
                }
                row
            })
            .collect();
        FiniteClass { sig, atoms, index, members, truth }
    }

    pub fn members(&self) -> &[MultiStructure] {
        &self.members
    }

    pub fn member(&self, i: usize) -> &MultiStructure {
        &self.members[i]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn atoms(&self) -> &[GroundAtom] {
        &self.atoms
    }

    pub fn diagram(&self, i: usize) -> LiteralSet {
        let row = &self.truth[i];
        self.atoms
            .iter()
            .enumerate()
            .map(
                |(k, a)| {
                    if row[k / 64] >> (k % 64) & 1 == 1 {
                        Literal::pos(a.clone())
                    } else {
                        Literal::neg(a.clone())
                    }
                },
            )
            .collect()
    }

    fn masks(&self, p: &LiteralSet) -> Result<(Vec<u64>, Vec<u64>), ForcingError> {
        let n = words(self.atoms.len());
        let (mut pos, mut neg) = (vec![0u64; n], vec![0u64; n]);
        for l in p {
            let &k =
                self.index.get(&l.atom).ok_or_else(|| ForcingError::UnknownAtom(l.display(&self.sig).to_string()))?;
            let target = if l.is_positive() { &mut pos } else { &mut neg };
            target[k / 64] |= 1 << (k % 64);
        }
        Ok((pos, neg))
    }

    fn realizes(&self, i: usize, pos: &[u64], neg: &[u64]) -> bool {
        self.truth[i].iter().zip(pos.iter().zip(neg)).all(|(&t, (&p, &n))| t & p == p && t & n == 0)
    }

    /// Indices of all members realizing `p`.
    pub fn realizers(&self, p: &LiteralSet) -> Result<Vec<usize>, ForcingError> {
        let (pos, neg) = self.masks(p)?;
        Ok((0..self.members.len()).filter(|&i| self.realizes(i, &pos, &neg)).collect())
    }
}

impl ClassOracle for FiniteClass {
    fn signature(&self) -> &Signature {
        &self.sig
    }

    fn witness(&self, p: &LiteralSet) -> Result<Option<usize>, ForcingError> {
        let (pos, neg) = self.masks(p)?;
        Ok((0..self.members.len()).find(|&i| self.realizes(i, &pos, &neg)))
    }

    fn diagrams_extending(&self, p: &LiteralSet) -> Result<Vec<LiteralSet>, ForcingError> {
        Ok(self.realizers(p)?.into_iter().map(|i| self.diagram(i)).collect())
    }
}

/// Membership in P_A: some class member realizes every literal of `p`.
pub fn is_condition(p: &LiteralSet, oracle: &dyn ClassOracle) -> Result<bool, ForcingError> {
    Ok(oracle.witness(p)?.is_some())
}
