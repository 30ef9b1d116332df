//! Exhaustive enumeration of finite structure classes.
//!
//! Structures are generated up to the equivalence induced by the constant
//! interpretation: each sort's domain is a partition of its constants, and the
//! element standing for a block is named after the block's least constant.

use std::collections::BTreeSet;

use thiserror::Error;

use super::eval::eval;
use super::structure::{Elem, MultiStructure};
use crate::logic::{well_sorted_check, Formula, RelId, Signature};

/// Upper bound on the number of relation-tuple bits of a single constant
/// quotient; keeps enumeration at desk scale.
pub const MAX_RELATION_BITS: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassSpecError {
    #[error("expected {expected} domain bounds, got {got}")]
    Bounds { expected: usize, got: usize },
    #[error("domain bounds for sort `{sort}` are empty: min {min}, max {max}")]
    EmptyBounds { sort: String, min: usize, max: usize },
    #[error("constraint is not closed and well sorted: {0}")]
    Constraint(String),
    #[error("class too large: {bits} relation bits per quotient (limit {limit})")]
    TooLarge { bits: usize, limit: usize },
}

/// A finite class of structures: per-sort domain-size bounds and a closed
/// constraint every member satisfies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSpec {
    sig: Signature,
    min_domain: Vec<usize>,
    max_domain: Vec<usize>,
    constraint: Option<Formula>,
}

impl ClassSpec {
    pub fn new(sig: Signature, max_domain: Vec<usize>) -> Result<Self, ClassSpecError> {
        let min = vec![1; sig.sort_count()];
        Self::with_bounds(sig, min, max_domain)
    }

    pub fn with_bounds(sig: Signature, min_domain: Vec<usize>, max_domain: Vec<usize>) -> Result<Self, ClassSpecError> {
        for v in [&min_domain, &max_domain] {
            if v.len() != sig.sort_count() {
                return Err(ClassSpecError::Bounds { expected: sig.sort_count(), got: v.len() });
            }
        }
        for s in sig.sort_ids() {
            let (lo, hi) = (min_domain[s.0].max(1), max_domain[s.0].min(sig.constants_of(s).len()));
            if lo > hi {
                return Err(ClassSpecError::EmptyBounds {
                    sort: sig.sort_name(s).to_string(),
                    min: min_domain[s.0],
                    max: max_domain[s.0],
                });
            }
        }
        let bits: usize = sig
            .rel_ids()
            .map(|r| {
                sig.relation(r).sorts.iter().map(|&s| max_domain[s.0].min(sig.constants_of(s).len())).product::<usize>()
            })
            .sum();
        if bits > MAX_RELATION_BITS {
            return Err(ClassSpecError::TooLarge { bits, limit: MAX_RELATION_BITS });
        }
        Ok(ClassSpec { sig, min_domain, max_domain, constraint: None })
    }

    pub fn with_constraint(mut self, f: Formula) -> Result<Self, ClassSpecError> {
        well_sorted_check(&self.sig, &f).map_err(|errs| {
            ClassSpecError::Constraint(errs.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))
        })?;
        self.constraint = Some(f);
        Ok(self)
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn constraint(&self) -> Option<&Formula> {
        self.constraint.as_ref()
    }

    pub fn max_domain(&self) -> &[usize] {
        &self.max_domain
    }

    pub fn min_domain(&self) -> &[usize] {
        &self.min_domain
    }

    pub fn enumerate(&self) -> ClassEnumerator<'_> {
        enumerate_class(self)
    }
}

/// Restricted growth strings of length `n` with between `lo` and `hi`
/// blocks, in lexicographic order.
pub(crate) fn partitions(n: usize, lo: usize, hi: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, lo: usize, hi: usize, cur: &mut Vec<usize>, blocks: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            if blocks >= lo {
                out.push(cur.clone());
            }
            return;
        }
        let top = if blocks < hi { blocks + 1 } else { blocks };
        for b in 0..top {
            cur.push(b);
            go(n, lo, hi, cur, blocks.max(b + 1), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, lo, hi, &mut Vec::new(), 0, &mut out);
    out
}

struct Frame {
    elements: Vec<String>,
    domains: Vec<Vec<Elem>>,
    constants: Vec<Elem>,
    tuples: Vec<(RelId, Vec<Elem>)>,
    mask: u64,
    limit: u64,
}

/// Lazy, deterministic stream of the members of a [`ClassSpec`].
pub struct ClassEnumerator<'a> {
    spec: &'a ClassSpec,
    parts: Vec<Vec<Vec<usize>>>,
    combo: Vec<usize>,
    exhausted: bool,
    frame: Option<Frame>,
}

/// Enumerates, in canonical order, every constant-quotient structure within
/// the bounds of `spec` that satisfies its constraint.
pub fn enumerate_class(spec: &ClassSpec) -> ClassEnumerator<'_> {
    let sig = &spec.sig;
    let parts: Vec<Vec<Vec<usize>>> = sig
        .sort_ids()
        .map(|s| partitions(sig.constants_of(s).len(), spec.min_domain[s.0], spec.max_domain[s.0]))
        .collect();
    let exhausted = parts.iter().any(Vec::is_empty);
    ClassEnumerator { spec, combo: vec![0; parts.len()], parts, exhausted, frame: None }
}

impl ClassEnumerator<'_> {
    fn open_frame(&self) -> Frame {
        let sig = &self.spec.sig;
        let mut elements = Vec::new();
        let mut domains = Vec::new();
        let mut constants = vec![0; sig.const_count()];
        for s in sig.sort_ids() {
            let rgs = &self.parts[s.0][self.combo[s.0]];
            let consts = sig.constants_of(s);
            let base = elements.len();
            let blocks = rgs.iter().max().map_or(0, |m| m + 1);
            for b in 0..blocks {
                let least = rgs.iter().position(|&x| x == b).expect("block is nonempty");
                elements.push(sig.const_name(consts[least]).to_string());
            }
            domains.push((base..base + blocks).collect::<Vec<_>>());
            for (i, &c) in consts.iter().enumerate() {
                constants[c.0] = base + rgs[i];
            }
        }
        let mut tuples = Vec::new();
        for r in sig.rel_ids() {
            let cols: Vec<&[Elem]> = sig.relation(r).sorts.iter().map(|s| domains[s.0].as_slice()).collect();
            for t in crate::logic::signature::cartesian(&cols) {
                tuples.push((r, t));
            }
        }
        let limit = 1u64 << tuples.len();
        Frame { elements, domains, constants, tuples, mask: 0, limit }
    }

    fn advance_combo(&mut self) {
        for i in (0..self.combo.len()).rev() {
            self.combo[i] += 1;
            if self.combo[i] < self.parts[i].len() {
                return;
            }
            self.combo[i] = 0;
        }
        self.exhausted = true;
    }
}

impl Iterator for ClassEnumerator<'_> {
    type Item = MultiStructure;

    fn next(&mut self) -> Option<MultiStructure> {
        let sig = &self.spec.sig;
        loop {
            if self.frame.is_none() {
                if self.exhausted {
                    return None;
                }
                self.frame = Some(self.open_frame());
                self.advance_combo();
            }
            let frame = self.frame.as_mut().expect("frame is open");
            if frame.mask == frame.limit {
                self.frame = None;
                continue;
            }
            let mask = frame.mask;
            frame.mask += 1;
            let mut rels: Vec<BTreeSet<Vec<Elem>>> = vec![BTreeSet::new(); sig.relation_count()];
            for (i, (r, t)) in frame.tuples.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    rels[r.0].insert(t.clone());
                }
            }
            let m =
                MultiStructure::new(sig, frame.elements.clone(), frame.domains.clone(), frame.constants.clone(), rels)
                    .expect("enumerated structures are valid");
            let keep = match &self.spec.constraint {
                None => true,
                Some(f) => eval(sig, &m, f).expect("constraint is closed and well sorted"),
            };
            if keep {
                return Some(m);
            }
        }
    }
}
