//! Multi-sorted isomorphisms, and the single-sorted merge that forgets sorts.

use std::collections::{BTreeMap, BTreeSet};

use super::eval::eval;
use super::structure::{Elem, MultiStructure};
use crate::logic::{Formula, GroundAtom, Signature, SortId, Term};

/// One bijection per sort between the domains of two structures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiMap {
    pub maps: Vec<BTreeMap<Elem, Elem>>,
}

impl MultiMap {
    pub fn apply(&self, s: SortId, e: Elem) -> Elem {
        self.maps[s.0][&e]
    }

    /// Checks that every per-sort map is a bijection preserving constants and
    /// relation extensions in both directions.
    pub fn is_isomorphism(&self, sig: &Signature, a: &MultiStructure, b: &MultiStructure) -> bool {
        if self.maps.len() != sig.sort_count() {
            return false;
        }
        for s in sig.sort_ids() {
            let map = &self.maps[s.0];
            let keys: Vec<Elem> = map.keys().copied().collect();
            let mut vals: Vec<Elem> = map.values().copied().collect();
            vals.sort_unstable();
            vals.dedup();
            if keys != a.domain(s) || vals != b.domain(s) {
                return false;
            }
        }
        if sig.const_ids().any(|c| self.apply(sig.const_sort(c), a.constant(c)) != b.constant(c)) {
            return false;
        }
        sig.rel_ids().all(|r| {
            let sorts = &sig.relation(r).sorts;
            let image: BTreeSet<Vec<Elem>> =
                a.extension(r).iter().map(|t| t.iter().zip(sorts).map(|(&e, &s)| self.apply(s, e)).collect()).collect();
            &image == b.extension(r)
        })
    }
}

/// Exhaustive backtracking search over per-sort bijections. Returns a
/// witnessing map when the structures are isomorphic as multi-sorted
/// structures.
pub fn find_multisorted_iso(sig: &Signature, a: &MultiStructure, b: &MultiStructure) -> Option<MultiMap> {
    if sig.sort_ids().any(|s| a.domain(s).len() != b.domain(s).len()) {
        return None;
    }
    let mut maps: Vec<BTreeMap<Elem, Elem>> = vec![BTreeMap::new(); sig.sort_count()];
    if search(sig, a, b, 0, 0, &mut maps) {
        Some(MultiMap { maps })
    } else {
        None
    }
}

fn consistent(sig: &Signature, a: &MultiStructure, b: &MultiStructure, s: SortId, x: Elem, y: Elem) -> bool {
    sig.constants_of(s).iter().all(|&c| (a.constant(c) == x) == (b.constant(c) == y))
}

fn search(
    sig: &Signature,
    a: &MultiStructure,
    b: &MultiStructure,
    sort: usize,
    pos: usize,
    maps: &mut Vec<BTreeMap<Elem, Elem>>,
) -> bool {
    if sort == sig.sort_count() {
        return MultiMap { maps: maps.clone() }.is_isomorphism(sig, a, b);
    }
    let s = SortId(sort);
    let dom = a.domain(s);
    if pos == dom.len() {
        return search(sig, a, b, sort + 1, 0, maps);
    }
    let x = dom[pos];
    for &y in b.domain(s) {
        if maps[sort].values().any(|&v| v == y) || !consistent(sig, a, b, s, x, y) {
            continue;
        }
        maps[sort].insert(x, y);
        if search(sig, a, b, sort, pos + 1, maps) {
            return true;
        }
        maps[sort].remove(&x);
    }
    false
}

/// The single-sorted signature obtained by forgetting sorts: one sort `U`,
/// the same constants and relations, and a unary predicate per original
/// sort.
pub fn merged_signature(sig: &Signature) -> Signature {
    let consts: Vec<String> = sig.const_ids().map(|c| sig.const_name(c).to_string()).collect();
    let taken = |n: &str| sig.rel_by_name(n).is_some() || sig.const_by_name(n).is_some();
    let mut b = Signature::builder().sort("U", consts);
    for r in sig.rel_ids() {
        b = b.relation(sig.rel_name(r), vec!["U"; sig.relation(r).arity()]);
    }
    for s in sig.sort_ids() {
        let mut name = format!("X_{}", sig.sort_name(s));
        while taken(&name) {
            name.push('_');
        }
        b = b.relation(&name, ["U"]);
    }
    b.build().expect("merged signature is well formed")
}

/// Merges the sort domains of `m` into one domain and records each sort as a
/// unary predicate. Shared element ids collapse to one element.
pub fn merge(sig: &Signature, merged: &Signature, m: &MultiStructure) -> MultiStructure {
    let universe: BTreeSet<Elem> = sig.sort_ids().flat_map(|s| m.domain(s).iter().copied()).collect();
    let mut rels: Vec<BTreeSet<Vec<Elem>>> = sig.rel_ids().map(|r| m.extension(r).clone()).collect();
    for s in sig.sort_ids() {
        rels.push(m.domain(s).iter().map(|&e| vec![e]).collect());
    }
    MultiStructure::new(
        merged,
        m.elements().to_vec(),
        vec![universe.into_iter().collect()],
        sig.const_ids().map(|c| m.constant(c)).collect(),
        rels,
    )
    .expect("merge preserves validity")
}

/// Searches a fixed battery of sentences over `sig` (ground literals, then
/// one-variable quantified conjunctions and disjunctions of at most two
/// literals) for one whose truth differs between `a` and `b`.
pub fn distinguishing_sentence(sig: &Signature, a: &MultiStructure, b: &MultiStructure) -> Option<Formula> {
    sentence_battery(sig).into_iter().find(|f| eval(sig, a, f).ok() != eval(sig, b, f).ok())
}

fn sentence_battery(sig: &Signature) -> Vec<Formula> {
    let mut out: Vec<Formula> = sig.atoms().into_iter().map(|a| GroundAtom::to_formula(&a)).collect();
    for s in sig.sort_ids() {
        let z = || Term::Var("z".to_string());
        let mut lits: Vec<Formula> = Vec::new();
        for r in sig.rel_ids() {
            if sig.relation(r).sorts == [s] {
                lits.push(Formula::Atom { rel: r, args: vec![z()] });
            }
        }
        for &c in sig.constants_of(s) {
            lits.push(Formula::Eq(z(), Term::Const(c)));
        }
        let signed: Vec<Formula> = lits.iter().flat_map(|l| [l.clone(), Formula::not(l.clone())]).collect();
        let mut bodies: Vec<Formula> = signed.clone();
        for i in 0..signed.len() {
            for j in i + 1..signed.len() {
                bodies.push(Formula::And(vec![signed[i].clone(), signed[j].clone()]));
                bodies.push(Formula::Or(vec![signed[i].clone(), signed[j].clone()]));
            }
        }
        for body in bodies {
            out.push(Formula::exists("z", s, body.clone()));
            out.push(Formula::forall("z", s, body));
        }
    }
    out
}
