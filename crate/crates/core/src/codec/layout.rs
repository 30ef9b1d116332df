//! Positional layout of codes whose top is `{⟨N, a⟩}`.

use std::fmt;

use super::hfset::HfSet;
use super::wfe::{check_wfe, mostowski_collapse, WfeCode};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LayoutViolation {
    pub node: Option<usize>,
    pub expected: String,
    pub found: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LayoutReport {
    pub violations: Vec<LayoutViolation>,
}

impl LayoutReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for LayoutReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok() {
            return f.write_str("layout ok");
        }
        f.write_str("layout violated")?;
        for v in &self.violations {
            match v.node {
                Some(n) => write!(f, "\n  node {n}: expected {}, found {}", v.expected, v.found)?,
                None => write!(f, "\n  code: expected {}, found {}", v.expected, v.found)?,
            }
        }
        Ok(())
    }
}

/// Checks the fixed numbering `0 ↦ N`, `5 ↦ a`, `1 ↦ {N}`, `2 ↦ {N, a}`,
/// `3 ↦ ⟨N, a⟩` (Kuratowski), `4 ↦ {⟨N, a⟩}` with node 4 on top. Nodes
/// beyond 5 are not constrained.
pub fn pmax_layout_check(c: &WfeCode) -> LayoutReport {
    let mut violations = Vec::new();
    if let Err(e) = check_wfe(c) {
        violations.push(LayoutViolation { node: None, expected: "a valid code".into(), found: e.to_string() });
        return LayoutReport { violations };
    }
    if c.nodes() < 6 {
        violations.push(LayoutViolation {
            node: None,
            expected: "at least 6 nodes".into(),
            found: format!("{} node(s)", c.nodes()),
        });
        return LayoutReport { violations };
    }
    let r = mostowski_collapse(c).expect("code was validated");
    let pi = &r.map;
    if r.top != 4 {
        violations.push(LayoutViolation {
            node: Some(4),
            expected: "the top node".into(),
            found: format!("top is node {}", r.top),
        });
    }
    let (n, a) = (pi[0].clone(), pi[5].clone());
    let expect = [
        (1, HfSet::singleton(n.clone()), "{π(0)}"),
        (2, HfSet::new([n.clone(), a.clone()]), "{π(0), π(5)}"),
        (3, HfSet::kpair(n.clone(), a.clone()), "⟨π(0), π(5)⟩"),
        (4, HfSet::singleton(HfSet::kpair(n, a)), "{⟨π(0), π(5)⟩}"),
    ];
    for (node, want, shape) in expect {
        if pi[node] != want {
            violations.push(LayoutViolation {
                node: Some(node),
                expected: format!("{shape} = {want}"),
                found: pi[node].to_string(),
            });
        }
    }
    LayoutReport { violations }
}

/// The hand-built exemplar with `N = {∅}` and `a = ∅`.
pub fn layout_exemplar() -> WfeCode {
    WfeCode::new(6, [(5, 0), (0, 1), (0, 2), (5, 2), (1, 3), (2, 3), (3, 4)]).expect("exemplar is in range")
}

fn relabel(c: &WfeCode, perm: &[usize]) -> WfeCode {
    WfeCode::new(c.nodes(), c.edges().iter().map(|&(k, j)| (perm[k], perm[j]))).expect("permutation keeps range")
}

fn swap(n: usize, a: usize, b: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.swap(a, b);
    p
}

/// Five corruptions of the exemplar, each of which the check rejects.
pub fn layout_mutations() -> Vec<(String, WfeCode)> {
    let ex = layout_exemplar();
    let n = ex.nodes();
    let mut drop = ex.edges().clone();
    drop.remove(&(5, 2));
    let mut extra = ex.edges().clone();
    extra.insert((0, 4));
    vec![
        ("swap nodes 0 and 5".into(), relabel(&ex, &swap(n, 0, 5))),
        ("swap nodes 1 and 2".into(), relabel(&ex, &swap(n, 1, 2))),
        ("swap nodes 3 and 4".into(), relabel(&ex, &swap(n, 3, 4))),
        ("drop edge (5,2)".into(), WfeCode::new(n, drop).expect("in range")),
        ("add edge (0,4)".into(), WfeCode::new(n, extra).expect("in range")),
    ]
}
