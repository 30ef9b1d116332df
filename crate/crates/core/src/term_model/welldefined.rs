//! Equivalence and congruence laws of the equality literals of Σ.

use std::fmt;

use crate::logic::{ConstId, GroundAtom, Literal, LiteralSet, Signature};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ViolationKind {
    Contradiction,
    Reflexivity,
    Symmetry,
    Transitivity,
    Congruence,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ViolationKind::Contradiction => "contradiction",
            ViolationKind::Reflexivity => "reflexivity",
            ViolationKind::Symmetry => "symmetry",
            ViolationKind::Transitivity => "transitivity",
            ViolationKind::Congruence => "congruence",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WellDefinedReport {
    pub violations: Vec<Violation>,
}

impl WellDefinedReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn kinds(&self) -> Vec<ViolationKind> {
        let mut k: Vec<ViolationKind> = self.violations.iter().map(|v| v.kind).collect();
        k.sort();
        k.dedup();
        k
    }
}

impl fmt::Display for WellDefinedReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return f.write_str("ok (0 violations)");
        }
        write!(f, "{} violation(s)", self.violations.len())?;
        for v in &self.violations {
            write!(f, "\n  {}: {}", v.kind, v.detail)?;
        }
        Ok(())
    }
}

/// Checks that `(c = d) ∈ Σ` is an equivalence relation on each sort's
/// constants, that membership of relation literals does not depend on the
/// choice of representatives, and that no atom occurs with both signs.
pub fn verify_welldefined(sigma: &LiteralSet, sig: &Signature) -> WellDefinedReport {
    let mut violations = Vec::new();
    let mut push = |kind, detail: String| violations.push(Violation { kind, detail });
    let eq = |c: ConstId, d: ConstId| sigma.contains(&Literal::pos(GroundAtom::Eq(c, d)));
    let name = |c: ConstId| sig.const_name(c);

    for l in sigma {
        if l.is_positive() && sigma.contains(&l.negate()) {
            push(ViolationKind::Contradiction, format!("both {} and its negation", l.display(sig)));
        }
    }
    for s in sig.sort_ids() {
        let k = sig.constants_of(s);
        for &c in k {
            if !eq(c, c) {
                push(ViolationKind::Reflexivity, format!("{} = {} missing", name(c), name(c)));
            }
        }
        for &c in k {
            for &d in k {
                if eq(c, d) && !eq(d, c) {
                    push(
                        ViolationKind::Symmetry,
                        format!("{} = {} without {} = {}", name(c), name(d), name(d), name(c)),
                    );
                }
            }
        }
        for &c in k {
            for &d in k {
                for &e in k {
                    if eq(c, d) && eq(d, e) && !eq(c, e) {
                        push(
                            ViolationKind::Transitivity,
                            format!(
                                "{} = {} and {} = {} without {} = {}",
                                name(c),
                                name(d),
                                name(d),
                                name(e),
                                name(c),
                                name(e)
                            ),
                        );
                    }
                }
            }
        }
    }
    for r in sig.rel_ids() {
        let tuples = sig.tuples_of(r);
        for cs in &tuples {
            for ds in &tuples {
                if cs == ds || !cs.iter().zip(ds).all(|(&c, &d)| eq(c, d)) {
                    continue;
                }
                let (a, b) = (GroundAtom::Rel(r, cs.clone()), GroundAtom::Rel(r, ds.clone()));
                for (la, lb) in [(Literal::pos(a.clone()), Literal::pos(b.clone())), (Literal::neg(a), Literal::neg(b))]
                {
                    if sigma.contains(&la) && !sigma.contains(&lb) {
                        push(
                            ViolationKind::Congruence,
                            format!("{} in Σ but {} not", la.display(sig), lb.display(sig)),
                        );
                    }
                }
            }
        }
    }
    WellDefinedReport { violations }
}
