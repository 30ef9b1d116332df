//! An or-and sentence true in every class member whose disjuncts are each
//! refuted at a finite stage of the construction.

use thiserror::Error;

use crate::forcing::{run_construction, DenseSpec, FiniteClass, Schedule};
use crate::logic::{Formula, GroundAtom, Literal, LiteralSet, Signature};
use crate::semantics::{eval, ClassSpec};

/// Largest supported stage budget; the class has `2^(2k+1) - 1` members.
pub const MAX_K: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrorError {
    #[error("stage budget must be between 1 and {MAX_K}, got {0}")]
    BadBudget(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refutation {
    pub disjunct: usize,
    /// Step of the trace at which the refuting literal entered Σ.
    pub stage: usize,
    pub literal: Literal,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CounterexampleReport {
    pub k: usize,
    pub members: usize,
    pub members_satisfying: usize,
    pub members_with_one_disjunct: usize,
    pub refutations: Vec<Refutation>,
    pub ok: bool,
    pub text: String,
}

fn p_atom(sig: &Signature, m: usize) -> GroundAtom {
    let p = sig.rel_by_name("P").expect("P is declared");
    GroundAtom::Rel(p, vec![sig.const_by_name(&format!("c{m}")).expect("constant is declared")])
}

/// disjunct_j: `P(c_j)` and no `P(c_m)` for `j < m ≤ n`.
fn disjunct(sig: &Signature, j: usize, n: usize) -> Formula {
    let mut parts = vec![p_atom(sig, j).to_formula()];
    parts.extend((j + 1..=n).map(|m| Formula::not(p_atom(sig, m).to_formula())));
    Formula::And(parts)
}

/// Runs the counterexample with constants `c_0..c_{2k}`, a unary `P`, and
/// the class of structures with pairwise distinct constants where `P` is
/// nonempty. The sentence `⋁_j disjunct_j` holds in every member, while the
/// schedule `D_j = {q : P(c_m) ∈ q for some m > j}`, `j < k`, refutes
/// disjunct_j by step `j + 1`.
pub fn refute_oror(k: usize) -> Result<CounterexampleReport, OrorError> {
    if k == 0 || k > MAX_K {
        return Err(OrorError::BadBudget(k));
    }
    let n = 2 * k;
    let names: Vec<String> = (0..=n).map(|m| format!("c{m}")).collect();
    let sig = Signature::builder().sort("s", &names).relation("P", ["s"]).build().expect("valid signature");
    let s = sig.sort_by_name("s").expect("sort s");
    let constraint = Formula::exists(
        "x",
        s,
        Formula::Atom { rel: sig.rel_by_name("P").expect("P"), args: vec![crate::logic::Term::Var("x".into())] },
    );
    let spec = ClassSpec::with_bounds(sig.clone(), vec![n + 1], vec![n + 1])
        .and_then(|c| c.with_constraint(constraint.clone()))
        .expect("class spec within limits");
    let class = FiniteClass::from_spec(&spec);

    let disjuncts: Vec<Formula> = (0..=n).map(|j| disjunct(&sig, j, n)).collect();
    let sentence = Formula::Or(disjuncts.clone());
    let mut members_satisfying = 0;
    let mut members_with_one_disjunct = 0;
    for m in class.members() {
        if eval(&sig, m, &sentence).expect("sentence evaluates") {
            members_satisfying += 1;
        }
        if disjuncts.iter().filter(|d| eval(&sig, m, d).expect("disjunct evaluates")).count() == 1 {
            members_with_one_disjunct += 1;
        }
    }

    let entries: Vec<DenseSpec> =
        (0..k).map(|j| DenseSpec::hit(format!("D_{j}"), (j + 1..=n).map(|m| Literal::pos(p_atom(&sig, m))))).collect();
    let (sigma, trace) =
        run_construction(&LiteralSet::new(), &Schedule::new(entries), &class).expect("hit sets are dense in the class");

    let mut refutations = Vec::new();
    let mut consistent = true;
    for j in 0..k {
        let found = (j + 1..=n)
            .map(|m| Literal::pos(p_atom(&sig, m)))
            .filter_map(|l| trace.stage_of(&l).map(|st| (st, l)))
            .min();
        match found {
            Some((stage, literal)) => {
                let chain = trace.chain();
                consistent &= chain[stage].contains(&literal) && sigma.literals.contains(&literal);
                refutations.push(Refutation { disjunct: j, stage, literal });
            }
            None => consistent = false,
        }
    }
    let members = class.len();
    let within = refutations.len() == k && refutations.iter().all(|r| r.stage <= r.disjunct + 1);
    let ok = members_satisfying == members && within && consistent;

    let mut text = String::new();
    text.push_str("CLASS\n");
    text.push_str(&format!("  sort s: constants c0..c{n}, pairwise distinct\n"));
    text.push_str(&format!("  relation P(s); constraint {}\n", constraint.display(&sig)));
    text.push_str(&format!("  members: {members}\n"));
    text.push_str("SENTENCE\n");
    text.push_str(&format!("  {}\n", sentence.display(&sig)));
    text.push_str(&format!("  disjunct_j := And[P(c_j); !P(c_m) for j < m <= {n}]\n"));
    text.push_str("PER-MEMBER CHECK\n");
    text.push_str(&format!("  members satisfying the sentence: {members_satisfying}/{members}\n"));
    text.push_str(&format!("  members satisfying exactly one disjunct: {members_with_one_disjunct}/{members}\n"));
    text.push_str("TRACE REFUTATIONS\n");
    for line in trace.render(&sig).lines() {
        text.push_str(&format!("  {line}\n"));
    }
    for r in &refutations {
        text.push_str(&format!(
            "  disjunct {}: refuted at stage {} by {} (bound {})\n",
            r.disjunct,
            r.stage,
            r.literal.display(&sig),
            r.disjunct + 1
        ));
    }
    text.push_str(&format!("  disjuncts {k}..{n}: not refuted after {} stage(s)\n", trace.steps.len()));
    text.push_str(&format!("RESULT: {}\n", if ok { "OK" } else { "FAILED" }));

    Ok(CounterexampleReport { k, members, members_satisfying, members_with_one_disjunct, refutations, ok, text })
}
