//! Tarskian satisfaction with quantifiers bounded to sort domains.

use thiserror::Error;

use super::structure::{Elem, MultiStructure};
use crate::logic::{Formula, GroundAtom, Literal, LiteralSet, Signature, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("symbol outside the signature: {0}")]
    UnknownSymbol(String),
}

struct Env<'a> {
    sig: &'a Signature,
    m: &'a MultiStructure,
    vars: Vec<(&'a str, Elem)>,
}

impl<'a> Env<'a> {
    fn term(&self, t: &Term) -> Result<Elem, EvalError> {
        match t {
            Term::Const(c) if self.sig.has_const(*c) => Ok(self.m.constant(*c)),
            Term::Const(c) => Err(EvalError::UnknownSymbol(format!("constant #{}", c.0))),
            Term::Var(v) => self
                .vars
                .iter()
                .rev()
                .find(|(n, _)| n == v)
                .map(|&(_, e)| e)
                .ok_or_else(|| EvalError::UnboundVariable(v.clone())),
        }
    }

    fn eval(&mut self, f: &'a Formula) -> Result<bool, EvalError> {
        match f {
            Formula::Atom { rel, args } => {
                if !self.sig.has_relation(*rel) {
                    return Err(EvalError::UnknownSymbol(format!("relation #{}", rel.0)));
                }
                let tuple = args.iter().map(|t| self.term(t)).collect::<Result<Vec<_>, _>>()?;
                Ok(self.m.holds(*rel, &tuple))
            }
            Formula::Eq(a, b) => Ok(self.term(a)? == self.term(b)?),
            Formula::Not(g) => Ok(!self.eval(g)?),
            Formula::And(fs) => {
                for g in fs {
                    if !self.eval(g)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Formula::Or(fs) => {
                for g in fs {
                    if self.eval(g)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            Formula::Exists { var, sort, body } | Formula::Forall { var, sort, body } => {
                if !self.sig.has_sort(*sort) {
                    return Err(EvalError::UnknownSymbol(format!("sort #{}", sort.0)));
                }
                let want = matches!(f, Formula::Exists { .. });
                let m = self.m;
                for &e in m.domain(*sort) {
                    self.vars.push((var.as_str(), e));
                    let v = self.eval(body);
                    self.vars.pop();
                    if v? == want {
                        return Ok(want);
                    }
                }
                Ok(!want)
            }
        }
    }
}

/// Truth of a closed formula in `m`.
pub fn eval(sig: &Signature, m: &MultiStructure, f: &Formula) -> Result<bool, EvalError> {
    Env { sig, m, vars: Vec::new() }.eval(f)
}

pub fn atom_holds(m: &MultiStructure, atom: &GroundAtom) -> bool {
    match atom {
        GroundAtom::Eq(c, d) => m.constant(*c) == m.constant(*d),
        GroundAtom::Rel(r, args) => {
            let tuple: Vec<Elem> = args.iter().map(|&c| m.constant(c)).collect();
            m.holds(*r, &tuple)
        }
    }
}

pub fn literal_holds(m: &MultiStructure, l: &Literal) -> bool {
    atom_holds(m, &l.atom) == l.is_positive()
}

/// The atomic diagram of `m`: for every atomic sentence φ, φ if it holds and
/// ¬φ otherwise.
pub fn realized_literals(sig: &Signature, m: &MultiStructure) -> LiteralSet {
    sig.atoms().into_iter().map(|a| if atom_holds(m, &a) { Literal::pos(a) } else { Literal::neg(a) }).collect()
}

/// Truth of `⋀_i ⋁_j ψ_ij` read off a literal set: every clause has a
/// member in `set`.
pub fn holds_by_containment(set: &LiteralSet, clauses: &[Vec<Literal>]) -> bool {
    clauses.iter().all(|c| c.iter().any(|l| set.contains(l)))
}
