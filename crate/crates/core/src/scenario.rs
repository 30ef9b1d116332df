//! Scenario files: a JSON document bundling a signature, a class, a theory,
//! a schedule and a start condition, and the build pipeline over it.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Deserialize;

use crate::forcing::{
    decision_dense_sets, dense_sets_from_theory, run_construction, ClassOracle, DenseSpec, FiniteClass, ForcingError,
    Schedule, SigmaSet, Trace,
};
use crate::logic::{
    and_or_clauses, equality_axioms, parse_formula, parse_literal, parse_literal_set, parse_open_formula, qe_axioms,
    AxiomOrigin, LiteralSet, Signature, Theory, Witness,
};
use crate::semantics::{eval, find_multisorted_iso, holds_by_containment, parse_structure, ClassSpec, MultiStructure};
use crate::term_model::{
    build_term_model, verify_andor, verify_welldefined, TermModel, TermModelError, WellDefinedReport,
};

/// A diagnostic located by its path in the scenario document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScenarioError {
    pub location: String,
    pub message: String,
}

impl fmt::Display for ScenarioError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.location, self.message)
    }
}

impl std::error::Error for ScenarioError {}

fn located(location: impl Into<String>, message: impl fmt::Display) -> ScenarioError {
    ScenarioError { location: location.into(), message: message.to_string() }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    name: Option<String>,
    signature: RawSignature,
    class: RawClass,
    #[serde(default)]
    theory: RawTheory,
    #[serde(default)]
    schedule: RawSchedule,
    start: Option<String>,
    output: Option<RawOutput>,
    certificate: Option<CertificateSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSignature {
    sorts: Vec<RawSort>,
    #[serde(default)]
    relations: Vec<RawRelation>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSort {
    name: String,
    constants: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRelation {
    name: String,
    sorts: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawClass {
    max_domain: Option<BTreeMap<String, usize>>,
    min_domain: Option<BTreeMap<String, usize>>,
    constraint: Option<String>,
    members: Option<Vec<String>>,
}

fn yes() -> bool {
    true
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTheory {
    #[serde(default = "yes")]
    equality: bool,
    #[serde(default = "yes")]
    qe: bool,
    #[serde(default)]
    witnesses: Vec<RawWitness>,
    #[serde(default)]
    axioms: Vec<String>,
}

impl Default for RawTheory {
    fn default() -> Self {
        RawTheory { equality: true, qe: true, witnesses: Vec::new(), axioms: Vec::new() }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWitness {
    var: String,
    sort: String,
    formula: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSchedule {
    #[serde(default = "yes")]
    decide_all: bool,
    #[serde(default)]
    dense: Vec<RawDense>,
    order: Option<Vec<String>>,
    #[serde(default)]
    round_robin: bool,
}

impl Default for RawSchedule {
    fn default() -> Self {
        RawSchedule { decide_all: true, dense: Vec::new(), order: None, round_robin: false }
    }
}

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum RawDense {
    Hit { label: Option<String>, literals: Vec<String> },
    Decide { atom: String },
    Custom { label: Option<String>, formula: String, bound: usize },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOutput {
    dir: Option<String>,
}

/// Where the mini-certificate reads its code and its branch.
#[derive(Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct CertificateSpec {
    pub code_sort: String,
    pub code_relation: String,
    pub branch_sort: String,
    pub branch_relation: String,
    /// Branch-node constants are this prefix followed by the node's bits.
    pub node_prefix: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    Theory,
    Dense,
    Decide,
}

#[derive(Clone, Debug)]
pub enum ClassSource {
    Bounds(Box<ClassSpec>),
    Members(Vec<MultiStructure>),
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub sig: Signature,
    pub class: ClassSource,
    pub theory: Theory,
    pub dense: Vec<DenseSpec>,
    pub decide_all: bool,
    pub order: Vec<Group>,
    pub round_robin: bool,
    pub start: LiteralSet,
    pub output_dir: Option<String>,
    pub certificate: Option<CertificateSpec>,
    /// Relations left out of member fixtures and read as empty.
    pub notes: Vec<String>,
}

impl Scenario {
    /// Parses and validates a scenario document; `default_name` is used when
    /// the document has no `name`.
    pub fn from_json(text: &str, default_name: &str) -> Result<Scenario, ScenarioError> {
        let raw: RawScenario = serde_json::from_str(text).map_err(|e| {
            let text = e.to_string();
            let suffix = format!(" at line {} column {}", e.line(), e.column());
            let message = text.strip_suffix(&suffix).unwrap_or(&text).to_string();
            located(format!("json line {} column {}", e.line(), e.column()), message)
        })?;

        let mut b = Signature::builder();
        for s in &raw.signature.sorts {
            b = b.sort(&s.name, &s.constants);
        }
        for r in &raw.signature.relations {
            b = b.relation(&r.name, &r.sorts);
        }
        let sig = b.build().map_err(|e| located("signature", e))?;

        let class = match (&raw.class.members, &raw.class.constraint) {
            (Some(_), Some(_)) => {
                return Err(located("class", "give either members or bounds with a constraint, not both"))
            }
            (Some(members), None) => {
                if raw.class.max_domain.is_some() || raw.class.min_domain.is_some() {
                    return Err(located("class", "explicit members take no domain bounds"));
                }
                let mut out = Vec::new();
                let mut notes = Vec::new();
                for (i, text) in members.iter().enumerate() {
                    let p = parse_structure(text, &sig).map_err(|e| located(format!("class.members[{i}]"), e))?;
                    for r in p.defaulted {
                        notes.push(format!("class.members[{i}]: relation {r} omitted, read as empty"));
                    }
                    out.push(p.structure);
                }
                (ClassSource::Members(out), notes)
            }
            (None, constraint) => {
                let bound = |m: &Option<BTreeMap<String, usize>>, key: &str, default: &dyn Fn(usize) -> usize| {
                    let mut v: Vec<usize> = sig.sort_ids().map(|s| default(sig.constants_of(s).len())).collect();
                    if let Some(m) = m {
                        for (name, &n) in m {
                            let s = sig
                                .sort_by_name(name)
                                .ok_or_else(|| located(format!("class.{key}.{name}"), "no such sort"))?;
                            v[s.0] = n;
                        }
                    }
                    Ok::<_, ScenarioError>(v)
                };
                let max = bound(&raw.class.max_domain, "max_domain", &|n| n)?;
                let min = bound(&raw.class.min_domain, "min_domain", &|_| 1)?;
                let mut spec = ClassSpec::with_bounds(sig.clone(), min, max).map_err(|e| located("class", e))?;
                if let Some(c) = constraint {
                    let f = parse_formula(c, &sig).map_err(|e| located("class.constraint", e))?;
                    spec = spec.with_constraint(f).map_err(|e| located("class.constraint", e))?;
                }
                (ClassSource::Bounds(Box::new(spec)), Vec::new())
            }
        };
        let (class, notes) = class;

        let t = &raw.theory;
        let mut theory = Theory::new();
        if t.equality {
            theory.extend(equality_axioms(&sig));
        }
        let mut witnesses = Vec::new();
        for (i, w) in t.witnesses.iter().enumerate() {
            let at = format!("theory.witnesses[{i}]");
            let sort = sig.sort_by_name(&w.sort).ok_or_else(|| located(&at, format!("no such sort `{}`", w.sort)))?;
            let body = parse_open_formula(&w.formula, &sig, &[(w.var.clone(), sort)]).map_err(|e| located(&at, e))?;
            witnesses.push(Witness { var: w.var.clone(), sort, body });
        }
        if t.qe {
            theory.extend(qe_axioms(&sig, &witnesses).map_err(|e| located("theory.witnesses", e))?);
        } else if !witnesses.is_empty() {
            return Err(located("theory.witnesses", "witnesses need `qe` enabled"));
        }
        for (i, a) in t.axioms.iter().enumerate() {
            let f = parse_formula(a, &sig).map_err(|e| located(format!("theory.axioms[{i}]"), e))?;
            theory.push(AxiomOrigin::User, f);
        }
        dense_sets_from_theory(&theory, &sig).map_err(|e| match e {
            ForcingError::NotAndOr { index, .. } => match index.checked_sub(theory.len() - t.axioms.len()) {
                Some(user) => located(format!("theory.axioms[{user}]"), "not of and-or shape"),
                None => located(format!("theory[{index}]"), "not of and-or shape"),
            },
            e => located("theory", e),
        })?;

        let mut dense = Vec::new();
        for (i, d) in raw.schedule.dense.iter().enumerate() {
            let at = format!("schedule.dense[{i}]");
            dense.push(match d {
                RawDense::Hit { label, literals } => {
                    if literals.is_empty() {
                        return Err(located(&at, "hit needs at least one literal"));
                    }
                    let lits = literals
                        .iter()
                        .map(|l| parse_literal(l, &sig))
                        .collect::<Result<Vec<_>, _>>()
                        .map_err(|e| located(&at, e))?;
                    DenseSpec::hit(label.clone().unwrap_or_else(|| format!("dense[{i}]")), lits)
                }
                RawDense::Decide { atom } => {
                    let l = parse_literal(atom, &sig).map_err(|e| located(&at, e))?;
                    if !l.is_positive() {
                        return Err(located(&at, "decide takes an atom, not a negated literal"));
                    }
                    DenseSpec::decide(l.atom, &sig)
                }
                RawDense::Custom { label, formula, bound } => {
                    let f = parse_formula(formula, &sig).map_err(|e| located(&at, e))?;
                    let clauses =
                        and_or_clauses(&f).ok_or_else(|| located(&at, "custom formula must be of and-or shape"))?;
                    DenseSpec::custom(
                        label.clone().unwrap_or_else(|| format!("custom[{i}]")),
                        *bound,
                        Arc::new(move |q: &LiteralSet| holds_by_containment(q, &clauses)),
                    )
                }
            });
        }
        let order = match &raw.schedule.order {
            None => vec![Group::Theory, Group::Dense, Group::Decide],
            Some(names) => {
                let mut out = Vec::new();
                for (i, n) in names.iter().enumerate() {
                    let g = match n.as_str() {
                        "theory" => Group::Theory,
                        "dense" => Group::Dense,
                        "decide" => Group::Decide,
                        _ => return Err(located(format!("schedule.order[{i}]"), format!("unknown group `{n}`"))),
                    };
                    if out.contains(&g) {
                        return Err(located(format!("schedule.order[{i}]"), format!("group `{n}` listed twice")));
                    }
                    out.push(g);
                }
                out
            }
        };
        let start = parse_literal_set(raw.start.as_deref().unwrap_or("{}"), &sig).map_err(|e| located("start", e))?;
        if let Some(c) = &raw.certificate {
            for (key, sort) in [("code_sort", &c.code_sort), ("branch_sort", &c.branch_sort)] {
                if sig.sort_by_name(sort).is_none() {
                    return Err(located(format!("certificate.{key}"), format!("no such sort `{sort}`")));
                }
            }
            for (key, rel) in [("code_relation", &c.code_relation), ("branch_relation", &c.branch_relation)] {
                if sig.rel_by_name(rel).is_none() {
                    return Err(located(format!("certificate.{key}"), format!("no such relation `{rel}`")));
                }
            }
        }
        Ok(Scenario {
            name: raw.name.unwrap_or_else(|| default_name.to_string()),
            sig,
            class,
            theory,
            dense,
            decide_all: raw.schedule.decide_all,
            order,
            round_robin: raw.schedule.round_robin,
            start,
            output_dir: raw.output.and_then(|o| o.dir),
            certificate: raw.certificate,
            notes,
        })
    }

    pub fn oracle(&self) -> FiniteClass {
        match &self.class {
            ClassSource::Bounds(spec) => FiniteClass::from_spec(spec),
            ClassSource::Members(ms) => FiniteClass::from_members(self.sig.clone(), ms.clone()),
        }
    }

    /// Schedule entries by group, with the size of each group.
    pub fn schedule(&self) -> (Schedule, ScheduleCounts) {
        let theory = dense_sets_from_theory(&self.theory, &self.sig).expect("validated at load");
        let decide = if self.decide_all { decision_dense_sets(&self.sig) } else { Vec::new() };
        let counts = ScheduleCounts { theory: theory.len(), dense: self.dense.len(), decide: decide.len() };
        let mut groups = [Some(theory), Some(self.dense.clone()), Some(decide)];
        let mut entries = Vec::new();
        for g in &self.order {
            let i = match g {
                Group::Theory => 0,
                Group::Dense => 1,
                Group::Decide => 2,
            };
            entries.extend(groups[i].take().unwrap_or_default());
        }
        let mut s = Schedule::new(entries);
        s.round_robin = self.round_robin;
        (s, counts)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScheduleCounts {
    pub theory: usize,
    pub dense: usize,
    pub decide: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BuildError {
    Forcing(ForcingError),
    TermModel(TermModelError),
}

impl fmt::Display for BuildError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildError::Forcing(e) => write!(f, "construction failed: {e}"),
            BuildError::TermModel(e) => write!(f, "term model failed: {e}"),
        }
    }
}

impl std::error::Error for BuildError {}

/// Everything a build produces.
#[derive(Clone, Debug)]
pub struct Build {
    pub sigma: SigmaSet,
    pub trace: Trace,
    pub model: TermModel,
    pub welldefined: WellDefinedReport,
    pub ok: bool,
    pub summary: String,
}

impl Build {
    pub fn sigma_text(&self, sig: &Signature) -> String {
        self.sigma.render(sig)
    }

    pub fn trace_text(&self, sig: &Signature) -> String {
        self.trace.render(sig)
    }

    pub fn model_text(&self, sig: &Signature) -> String {
        self.model.render(sig)
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Runs the schedule from the start condition, builds the term model and
/// verifies it against the theory and the class.
pub fn build(sc: &Scenario) -> Result<Build, BuildError> {
    let sig = &sc.sig;
    let oracle = sc.oracle();
    let (schedule, counts) = sc.schedule();
    let (sigma, trace) = run_construction(&sc.start, &schedule, &oracle).map_err(BuildError::Forcing)?;
    let model = build_term_model(&sigma.literals, sig).map_err(BuildError::TermModel)?;
    let welldefined = verify_welldefined(&sigma.literals, sig);
    let m = model.to_structure(sig);

    let mut true_axioms = 0;
    let mut andor_checked = 0;
    let mut andor_ok = true;
    for ax in sc.theory.iter() {
        if eval(sig, &m, &ax.sentence).expect("axioms are closed") {
            true_axioms += 1;
        }
        if !ax.sentence.has_quantifier() {
            andor_checked += 1;
            match verify_andor(&model, sig, &ax.sentence, &sigma.literals, Some(&trace)) {
                Ok(v) if v.value => {}
                _ => andor_ok = false,
            }
        }
    }
    let explicit_met = sc.dense.iter().filter(|d| d.meets(&sigma.literals)).count();
    let witness = oracle.witness(&sigma.literals).map_err(BuildError::Forcing)?;
    let realized = witness.and_then(|w| find_multisorted_iso(sig, &m, oracle.member(w)).map(|_| w));

    let ok = sigma.report.decides_all()
        && welldefined.is_ok()
        && true_axioms == sc.theory.len()
        && andor_ok
        && explicit_met == sc.dense.len()
        && realized.is_some();

    let mut s = String::new();
    s.push_str(&format!("scenario: {}\n", sc.name));
    s.push_str(&format!(
        "signature: {} sort(s), {} constant(s), {} relation(s), {} atomic sentence(s)\n",
        sig.sort_count(),
        sig.const_count(),
        sig.relation_count(),
        sig.atom_count()
    ));
    s.push_str(&format!("class: {} member(s)\n", oracle.len()));
    for n in &sc.notes {
        s.push_str(&format!("note: {n}\n"));
    }
    s.push_str(&format!(
        "schedule: {} theory, {} explicit, {} decide ({} entries{})\n",
        counts.theory,
        counts.dense,
        counts.decide,
        schedule.len(),
        if schedule.round_robin { ", round robin" } else { "" }
    ));
    s.push_str(&format!("start: {} (witness {})\n", sc.start.display(sig), trace.start_witness));
    s.push_str(&format!("steps: {}\n", trace.steps.len()));
    s.push_str(&format!(
        "sigma: {} literal(s); decided {}/{} atoms\n",
        sigma.literals.len(),
        sigma.report.decided,
        sigma.report.total_atoms
    ));
    s.push_str(&format!(
        "maximality: decides every atom: {}; no proper consistent extension: {}\n",
        yes_no(sigma.report.decides_all()),
        yes_no(sigma.report.no_proper_extension)
    ));
    s.push_str(&format!("well-defined: {welldefined}\n"));
    let sizes: Vec<String> = sig.sort_ids().map(|x| format!("{} {}", sig.sort_name(x), model.domain_size(x))).collect();
    s.push_str(&format!("term model: {}\n", sizes.join(", ")));
    s.push_str(&format!("theory: {}/{} axioms true in the term model\n", true_axioms, sc.theory.len()));
    s.push_str(&format!(
        "and-or evidence: {andor_checked} quantifier-free axiom(s) read off Σ: {}\n",
        if andor_ok { "ok" } else { "FAILED" }
    ));
    s.push_str(&format!("explicit dense sets met: {}/{}\n", explicit_met, sc.dense.len()));
    match realized {
        Some(w) => s.push_str(&format!("realization: term model isomorphic to member {w}\n")),
        None => s.push_str("realization: no isomorphic member found\n"),
    }
    s.push_str(&format!("status: {}\n", if ok { "OK" } else { "FAILED" }));

    Ok(Build { sigma, trace, model, welldefined, ok, summary: s })
}
