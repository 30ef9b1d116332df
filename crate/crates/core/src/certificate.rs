//! Reads a built term model back as a hereditarily finite set in two ways:
//! by collapsing the membership code on one sort, and by decoding the branch
//! selected on another sort. The two must agree.

use std::fmt::Write as _;

use thiserror::Error;

use crate::codec::{cod_decode, cod_encode, mostowski_collapse, CodFlag, HfSet, WfeCode};
use crate::scenario::{Build, CertificateSpec, Scenario};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("scenario has no certificate section")]
    Missing,
    #[error("relation `{relation}` must be binary over sort `{sort}`")]
    CodeShape { relation: String, sort: String },
    #[error("relation `{relation}` must be unary over sort `{sort}`")]
    BranchShape { relation: String, sort: String },
    #[error("constant `{0}` is not a tree node name")]
    NodeName(String),
    #[error("selected nodes do not form a branch: {0}")]
    NotABranch(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateReport {
    pub code: WfeCode,
    pub collapse: Option<HfSet>,
    pub branch: String,
    pub decoded: HfSet,
    pub flag: CodFlag,
    pub ok: bool,
    pub text: String,
}

fn node_bits<'a>(name: &'a str, prefix: &str) -> Result<&'a str, CertificateError> {
    name.strip_prefix(prefix)
        .filter(|b| b.chars().all(|c| c == '0' || c == '1'))
        .ok_or_else(|| CertificateError::NodeName(name.to_string()))
}

/// The selected branch: the Br-true nodes must be exactly the prefixes of
/// the longest one.
fn read_branch(mut nodes: Vec<String>) -> Result<String, CertificateError> {
    nodes.sort_by_key(|b| b.len());
    let longest = nodes.last().cloned().unwrap_or_default();
    let ok = nodes.len() == longest.len() + 1
        && nodes.iter().enumerate().all(|(i, b)| b.len() == i && longest.starts_with(b.as_str()));
    if ok {
        Ok(longest)
    } else {
        Err(CertificateError::NotABranch(format!("{{{}}}", nodes.join(", "))))
    }
}

pub fn certify(sc: &Scenario, build: &Build) -> Result<CertificateReport, CertificateError> {
    let spec: &CertificateSpec = sc.certificate.as_ref().ok_or(CertificateError::Missing)?;
    let sig = &sc.sig;
    let n_sort = sig.sort_by_name(&spec.code_sort).expect("validated at load");
    let b_sort = sig.sort_by_name(&spec.branch_sort).expect("validated at load");
    let code_rel = sig.rel_by_name(&spec.code_relation).expect("validated at load");
    let branch_rel = sig.rel_by_name(&spec.branch_relation).expect("validated at load");
    if sig.relation(code_rel).sorts != [n_sort, n_sort] {
        return Err(CertificateError::CodeShape { relation: spec.code_relation.clone(), sort: spec.code_sort.clone() });
    }
    if sig.relation(branch_rel).sorts != [b_sort] {
        return Err(CertificateError::BranchShape {
            relation: spec.branch_relation.clone(),
            sort: spec.branch_sort.clone(),
        });
    }
    let tm = &build.model;

    let reps: Vec<_> = tm.classes(n_sort).iter().map(|cl| cl[0]).collect();
    let ext = tm.extension(code_rel);
    let mut edges = Vec::new();
    for (k, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            if ext.contains(&vec![a, b]) {
                edges.push((k, j));
            }
        }
    }
    let code = WfeCode::new(reps.len(), edges).expect("edges are in range");
    let collapse = mostowski_collapse(&code);

    let mut selected = Vec::new();
    for cl in tm.classes(b_sort) {
        for &c in cl {
            node_bits(sig.const_name(c), &spec.node_prefix)?;
        }
        if tm.extension(branch_rel).contains(&vec![cl[0]]) {
            if cl.len() > 1 {
                let names: Vec<&str> = cl.iter().map(|&c| sig.const_name(c)).collect();
                return Err(CertificateError::NotABranch(format!("nodes identified: {}", names.join(" = "))));
            }
            selected.push(node_bits(sig.const_name(cl[0]), &spec.node_prefix)?.to_string());
        }
    }
    let branch = read_branch(selected)?;
    let decoded = cod_decode(&WfeCode::from_bits(&branch).expect("branch is a bit string"));

    let round_trip = |s: &HfSet| cod_decode(&cod_encode(s)).set == *s;
    let collapsed = collapse.as_ref().ok().map(|c| c.top_set.clone());
    let ok = decoded.flag == CodFlag::Valid && collapsed.as_ref() == Some(&decoded.set) && round_trip(&decoded.set);

    let mut t = String::new();
    let _ = writeln!(t, "MINI-CERTIFICATE");
    let _ = writeln!(t, "scenario: {}", sc.name);
    let _ = writeln!(
        t,
        "term model: sort {} has {} class(es), sort {} has {} class(es)",
        spec.code_sort,
        tm.domain_size(n_sort),
        spec.branch_sort,
        tm.domain_size(b_sort)
    );
    let names: Vec<&str> = reps.iter().map(|&c| sig.const_name(c)).collect();
    let _ = writeln!(t, "{}-sort nodes: {}", spec.code_sort, names.join(" "));
    let _ = writeln!(t, "{}-sort code ({}): {}", spec.code_sort, spec.code_relation, code);
    match &collapse {
        Ok(c) => {
            let _ = writeln!(t, "collapse({}-sort): {} (ack:{})", spec.code_sort, c.top_set, c.top_set.ack());
            for (i, s) in c.map.iter().enumerate() {
                let _ = writeln!(t, "  {} -> {}", names[i], s);
            }
        }
        Err(e) => {
            let _ = writeln!(t, "collapse({}-sort): failed: {}", spec.code_sort, e);
        }
    }
    let _ = writeln!(
        t,
        "branch ({}-sort, {}): {} ({} node(s) below the root)",
        spec.branch_sort,
        spec.branch_relation,
        branch,
        branch.len()
    );
    let _ = writeln!(t, "Cod(branch): {} (ack:{}), {}", decoded.set, decoded.set.ack(), decoded.flag);
    let _ = writeln!(t, "codec round trip: {}", if round_trip(&decoded.set) { "ok" } else { "FAILED" });
    let _ = writeln!(t, "collapse({}-sort) == Cod(branch): {}", spec.code_sort, if ok { "OK" } else { "FAILED" });

    Ok(CertificateReport { code, collapse: collapsed, branch, decoded: decoded.set, flag: decoded.flag, ok, text: t })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn branches() {
        let v = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        assert_eq!(read_branch(v(&["01", "", "0"])).unwrap(), "01");
        assert_eq!(read_branch(v(&[""])).unwrap(), "");
        assert!(read_branch(v(&["", "0", "1"])).is_err());
        assert!(read_branch(v(&["", "01"])).is_err());
        assert!(read_branch(v(&[])).is_err());
    }

    #[test]
    fn node_names() {
        assert_eq!(node_bits("t010", "t").unwrap(), "010");
        assert_eq!(node_bits("t", "t").unwrap(), "");
        assert!(node_bits("u01", "t").is_err());
        assert!(node_bits("t012", "t").is_err());
    }
}
