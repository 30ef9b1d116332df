//! Seeded generators and brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use consprop::codec::{check_wfe, WfeCode, WfeError};
use consprop::forcing::{
    decision_dense_sets, dense_sets_from_theory, run_construction, FiniteClass, Schedule, SigmaSet, Trace,
};
use consprop::logic::{AxiomOrigin, Formula, GroundAtom, Literal, LiteralSet, Signature, SortId, Term, Theory};
use consprop::semantics::{eval, literal_holds, ClassSpec, MultiStructure};
use consprop::term_model::{build_term_model, TermModel, ViolationKind};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// At most 2 sorts with at most 3 constants each and at most 2 relations.
pub fn random_signature(rng: &mut impl Rng) -> Signature {
    let sorts = rng.gen_range(1..=2);
    let mut b = Signature::builder();
    let mut names = Vec::new();
    for s in 0..sorts {
        let name = ["s", "t"][s];
        let prefix = ["c", "d"][s];
        let n = rng.gen_range(1..=3);
        b = b.sort(name, (0..n).map(|i| format!("{prefix}{i}")).collect::<Vec<_>>());
        names.push(name);
    }
    for r in 0..rng.gen_range(1..=2) {
        let arity = rng.gen_range(1..=2);
        let args: Vec<&str> = (0..arity).map(|_| *names.choose(rng).unwrap()).collect();
        b = b.relation(["P", "R"][r], args);
    }
    b.build().unwrap()
}

fn relation_bits(sig: &Signature, max: &[usize]) -> usize {
    sig.rel_ids().map(|r| sig.relation(r).sorts.iter().map(|s| max[s.0]).product::<usize>()).sum()
}

pub fn random_literal(rng: &mut impl Rng, sig: &Signature) -> Literal {
    let atoms = sig.atoms();
    let a = atoms.choose(rng).unwrap().clone();
    if rng.gen_bool(0.5) {
        Literal::pos(a)
    } else {
        Literal::neg(a)
    }
}

/// `And` of 1..=`conj` clauses, each an `Or` of 1..=`disj` literals.
pub fn random_andor(rng: &mut impl Rng, sig: &Signature, conj: usize, disj: usize) -> Formula {
    let clauses = (0..rng.gen_range(1..=conj))
        .map(|_| Formula::Or((0..rng.gen_range(1..=disj)).map(|_| random_literal(rng, sig).to_formula()).collect()))
        .collect();
    Formula::And(clauses)
}

/// An and-or sentence true in every member: each clause collects one
/// literal true in each member.
pub fn valid_andor(rng: &mut impl Rng, sig: &Signature, members: &[MultiStructure], conj: usize) -> Formula {
    let atoms = sig.atoms();
    let clauses = (0..rng.gen_range(1..=conj))
        .map(|_| {
            let mut lits: Vec<Literal> = Vec::new();
            for m in members {
                if lits.iter().any(|l| literal_holds(m, l)) {
                    continue;
                }
                let a = atoms.choose(rng).unwrap().clone();
                let l = if literal_holds(m, &Literal::pos(a.clone())) { Literal::pos(a) } else { Literal::neg(a) };
                lits.push(l);
            }
            Formula::Or(lits.into_iter().map(|l| l.to_formula()).collect())
        })
        .collect();
    Formula::And(clauses)
}

fn random_open(rng: &mut impl Rng, sig: &Signature, vars: &mut Vec<(String, SortId)>, depth: usize) -> Formula {
    let term = |rng: &mut dyn rand::RngCore, s: SortId, vars: &[(String, SortId)]| {
        let vs: Vec<&String> = vars.iter().filter(|(_, vs)| *vs == s).map(|(v, _)| v).collect();
        if !vs.is_empty() && rng.gen_bool(0.5) {
            Term::Var(vs.choose(rng).unwrap().to_string())
        } else {
            Term::Const(*sig.constants_of(s).choose(rng).unwrap())
        }
    };
    if depth == 0 || rng.gen_bool(0.3) {
        let rels: Vec<_> = sig.rel_ids().collect();
        if rng.gen_bool(0.3) || rels.is_empty() {
            let s = SortId(rng.gen_range(0..sig.sort_count()));
            return Formula::Eq(term(rng, s, vars), term(rng, s, vars));
        }
        let r = *rels.choose(rng).unwrap();
        let args = sig.relation(r).sorts.clone().into_iter().map(|s| term(rng, s, vars)).collect();
        return Formula::Atom { rel: r, args };
    }
    match rng.gen_range(0..5) {
        0 => Formula::not(random_open(rng, sig, vars, depth - 1)),
        1 | 2 => {
            let n = rng.gen_range(1..=3);
            let fs = (0..n).map(|_| random_open(rng, sig, vars, depth - 1)).collect();
            if rng.gen_bool(0.5) {
                Formula::And(fs)
            } else {
                Formula::Or(fs)
            }
        }
        _ => {
            let s = SortId(rng.gen_range(0..sig.sort_count()));
            let v = format!("x{}", vars.len());
            vars.push((v.clone(), s));
            let body = random_open(rng, sig, vars, depth - 1);
            vars.pop();
            if rng.gen_bool(0.5) {
                Formula::exists(&v, s, body)
            } else {
                Formula::forall(&v, s, body)
            }
        }
    }
}

/// A closed formula of nesting depth at most `depth`.
pub fn random_sentence(rng: &mut impl Rng, sig: &Signature, depth: usize) -> Formula {
    random_open(rng, sig, &mut Vec::new(), depth)
}

/// A nonempty class over a random signature with at most `max_bits`
/// relation-tuple bits per quotient.
pub fn random_class(rng: &mut impl Rng, max_bits: usize) -> (Signature, ClassSpec, FiniteClass) {
    loop {
        let sig = random_signature(rng);
        let max: Vec<usize> = sig.sort_ids().map(|s| rng.gen_range(1..=sig.constants_of(s).len())).collect();
        if relation_bits(&sig, &max) > max_bits {
            continue;
        }
        let mut spec = ClassSpec::new(sig.clone(), max).unwrap();
        if rng.gen_bool(0.5) {
            spec = spec.with_constraint(random_sentence(rng, &sig, 3)).unwrap();
        }
        let class = FiniteClass::from_spec(&spec);
        if !class.is_empty() {
            return (sig, spec, class);
        }
    }
}

/// Members in which every literal of `p` holds, by direct evaluation.
pub fn realizers(class: &FiniteClass, p: &LiteralSet) -> Vec<usize> {
    (0..class.len()).filter(|&i| p.iter().all(|l| literal_holds(class.member(i), l))).collect()
}

/// `{q : q contains a literal of clause}` is dense below `p` exactly when
/// every member realizing `p` satisfies the clause.
pub fn hit_dense_below(sig: &Signature, class: &FiniteClass, p: &LiteralSet, clause: &Formula) -> bool {
    realizers(class, p).into_iter().all(|i| eval(sig, class.member(i), clause).unwrap())
}

pub fn atom_literal(a: GroundAtom, positive: bool) -> Literal {
    if positive {
        Literal::pos(a)
    } else {
        Literal::neg(a)
    }
}

/// Σ with `atom` set to the given polarity.
pub fn set_atom(sigma: &LiteralSet, atom: &GroundAtom, positive: bool) -> LiteralSet {
    let mut out: LiteralSet = sigma.iter().filter(|l| &l.atom != atom).cloned().collect();
    out.insert(atom_literal(atom.clone(), positive));
    out
}

/// Corruptions of a well-formed maximal Σ, each with the violation kind it
/// must trigger.
pub fn corruptions(sig: &Signature, sigma: &LiteralSet) -> Vec<(ViolationKind, LiteralSet)> {
    let mut out = Vec::new();
    if let Some(l) = sigma.iter().next() {
        let mut s = sigma.clone();
        s.insert(l.negate());
        out.push((ViolationKind::Contradiction, s));
    }
    for s in sig.sort_ids() {
        let k = sig.constants_of(s);
        out.push((ViolationKind::Reflexivity, set_atom(sigma, &GroundAtom::Eq(k[0], k[0]), false)));
        if k.len() >= 2 {
            let (c, d) = (k[0], k[1]);
            let v = sigma.value(&GroundAtom::Eq(c, d)).unwrap();
            out.push((ViolationKind::Symmetry, set_atom(sigma, &GroundAtom::Eq(d, c), !v)));
            for r in sig.rel_ids() {
                let Some(t) = sig.tuples_of(r).into_iter().find(|t| t.contains(&c)) else { continue };
                let t2: Vec<_> = t.iter().map(|&x| if x == c { d } else { x }).collect();
                let mut x = set_atom(sigma, &GroundAtom::Eq(c, d), true);
                x = set_atom(&x, &GroundAtom::Eq(d, c), true);
                let v = x.value(&GroundAtom::Rel(r, t.clone())).unwrap();
                x = set_atom(&x, &GroundAtom::Rel(r, t2), !v);
                out.push((ViolationKind::Congruence, x));
            }
        }
        if k.len() >= 3 {
            let (c, d, e) = (k[0], k[1], k[2]);
            let mut x = sigma.clone();
            for (a, b, pos) in [(c, d, true), (d, c, true), (d, e, true), (e, d, true), (c, e, false), (e, c, false)] {
                x = set_atom(&x, &GroundAtom::Eq(a, b), pos);
            }
            out.push((ViolationKind::Transitivity, x));
        }
    }
    out
}

pub struct Run {
    pub sigma: SigmaSet,
    pub trace: Trace,
    pub tm: TermModel,
}

/// Meets the dense sets of `sentences`, then decides every atom, starting
/// from a small condition drawn from a member's diagram.
pub fn construct(rng: &mut impl Rng, sig: &Signature, class: &FiniteClass, sentences: &[Formula]) -> Run {
    let mut theory = Theory::new();
    for f in sentences {
        theory.push(AxiomOrigin::User, f.clone());
    }
    let mut entries = dense_sets_from_theory(&theory, sig).unwrap();
    entries.extend(decision_dense_sets(sig));
    let d: Vec<Literal> = class.diagram(rng.gen_range(0..class.len())).iter().cloned().collect();
    let size = rng.gen_range(0..=2.min(d.len()));
    let p0: LiteralSet = d.choose_multiple(rng, size).cloned().collect();
    let (sigma, trace) = run_construction(&p0, &Schedule::new(entries), class).unwrap();
    let tm = build_term_model(&sigma.literals, sig).unwrap();
    Run { sigma, trace, tm }
}

/// Which check fails first, computed from the transitive closure.
#[derive(Debug, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    IllFounded,
    NotExtensional,
    NoUniqueTop(Vec<usize>),
    Disconnected,
}

pub fn wfe_oracle(n: usize, edges: &[(usize, usize)]) -> Verdict {
    let mut reach = vec![vec![false; n]; n];
    for &(k, j) in edges {
        reach[k][j] = true;
    }
    for m in 0..n {
        for a in 0..n {
            for b in 0..n {
                if reach[a][m] && reach[m][b] {
                    reach[a][b] = true;
                }
            }
        }
    }
    if (0..n).any(|a| reach[a][a]) {
        return Verdict::IllFounded;
    }
    let preds = |j: usize| -> Vec<usize> { (0..n).filter(|&k| edges.contains(&(k, j))).collect() };
    for a in 0..n {
        for b in a + 1..n {
            if preds(a) == preds(b) {
                return Verdict::NotExtensional;
            }
        }
    }
    let tops: Vec<usize> = (0..n).filter(|&k| !edges.iter().any(|&(x, _)| x == k)).collect();
    if tops.len() != 1 {
        return Verdict::NoUniqueTop(tops);
    }
    if (0..n).any(|k| k != tops[0] && !reach[k][tops[0]]) {
        return Verdict::Disconnected;
    }
    Verdict::Ok
}

pub fn edges_of(n: usize, mask: u64) -> Vec<(usize, usize)> {
    (0..n * n).filter(|&b| mask >> b & 1 == 1).map(|b| (b / n, b % n)).collect()
}

/// Compares `check_wfe` with the oracle and checks the reported evidence.
pub fn wfe_agrees(n: usize, edges: &[(usize, usize)]) -> Result<(), String> {
    let c = WfeCode::new(n, edges.iter().copied()).unwrap();
    let got = check_wfe(&c);
    let want = wfe_oracle(n, edges);
    match (&got, &want) {
        (Ok(()), Verdict::Ok) | (Err(WfeError::Disconnected(_)), Verdict::Disconnected) => {}
        (Err(WfeError::IllFounded(cycle)), Verdict::IllFounded)
            if cycle.len() >= 2
                && cycle.first() == cycle.last()
                && cycle.windows(2).all(|w| c.edges().contains(&(w[0], w[1]))) => {}
        (Err(WfeError::NotExtensional(a, b)), Verdict::NotExtensional) if a != b && c.members(*a) == c.members(*b) => {}
        (Err(WfeError::NoUniqueTop(x)), Verdict::NoUniqueTop(y)) if x == y => {}
        _ => return Err(format!("{n} nodes, edges {edges:?}: got {got:?}, oracle {want:?}")),
    }
    Ok(())
}
