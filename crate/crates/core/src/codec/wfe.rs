//! Well-founded extensional codes, their Mostowski collapse and `Cod`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use super::hfset::HfSet;
use super::pairing::{pair, unpair};

/// A binary relation on `{0..nodes-1}`; an edge `(k, j)` reads
/// `π(k) ∈ π(j)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WfeCode {
    nodes: usize,
    edges: BTreeSet<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("edge ({0},{1}) leaves the domain of {2} node(s)")]
    EdgeOutOfRange(usize, usize, usize),
    #[error("bitstring has a character other than 0 or 1 at position {0}")]
    BadBit(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WfeError {
    #[error("IllFounded (cycle {})", path(.0))]
    IllFounded(Vec<usize>),
    #[error("NotExtensional (nodes {0} and {1} have the same members)")]
    NotExtensional(usize, usize),
    #[error("NoUniqueTop (maximal nodes: {})", list(.0))]
    NoUniqueTop(Vec<usize>),
    #[error("Disconnected (node {0} is not below the top)")]
    Disconnected(usize),
}

fn path(v: &[usize]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" -> ")
}

fn list(v: &[usize]) -> String {
    if v.is_empty() {
        "none".to_string()
    } else {
        v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
    }
}

impl WfeCode {
    pub fn new(nodes: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, CodeError> {
        let edges: BTreeSet<(usize, usize)> = edges.into_iter().collect();
        if let Some(&(k, j)) = edges.iter().find(|&&(k, j)| k >= nodes || j >= nodes) {
            return Err(CodeError::EdgeOutOfRange(k, j, nodes));
        }
        Ok(WfeCode { nodes, edges })
    }

    /// Domain `0..=max node` of the edges, or a single node when there are
    /// none.
    pub fn from_edges(edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let edges: BTreeSet<(usize, usize)> = edges.into_iter().collect();
        let nodes = edges.iter().map(|&(k, j)| k.max(j) + 1).max().unwrap_or(1);
        WfeCode { nodes, edges }
    }

    /// Bit `n` set means `unpair(n)` is an edge.
    pub fn from_bits(bits: &str) -> Result<Self, CodeError> {
        let mut edges = Vec::new();
        for (n, ch) in bits.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => {
                    let (k, j) = unpair(n as u64);
                    edges.push((k as usize, j as usize));
                }
                _ => return Err(CodeError::BadBit(n)),
            }
        }
        Ok(WfeCode::from_edges(edges))
    }

    /// Shortest bitstring listing the edges; `"0"` for none.
    pub fn to_bits(&self) -> String {
        let idx: BTreeSet<u64> = self.edges.iter().map(|&(k, j)| pair(k as u64, j as u64)).collect();
        let len = idx.iter().next_back().map_or(1, |&m| m + 1);
        (0..len).map(|n| if idx.contains(&n) { '1' } else { '0' }).collect()
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    /// E-predecessors (members) of `j`, ascending.
    pub fn members(&self, j: usize) -> Vec<usize> {
        self.edges.iter().filter(|&&(_, t)| t == j).map(|&(k, _)| k).collect()
    }

    /// Nodes that are a member of nothing.
    pub fn maximal_nodes(&self) -> Vec<usize> {
        (0..self.nodes).filter(|&n| !self.edges.iter().any(|&(k, _)| k == n)).collect()
    }
}

impl fmt::Display for WfeCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let es: Vec<String> = self.edges.iter().map(|(k, j)| format!("({k},{j})")).collect();
        let implied = WfeCode::from_edges(self.edges.iter().copied()).nodes;
        if implied == self.nodes {
            write!(f, "wfe:{{{}}}", es.join(","))
        } else {
            write!(f, "wfe:{}:{{{}}}", self.nodes, es.join(","))
        }
    }
}

fn find_cycle(c: &WfeCode) -> Option<Vec<usize>> {
    // 0 unvisited, 1 on stack, 2 done
    let mut color = vec![0u8; c.nodes];
    let succ: Vec<Vec<usize>> =
        (0..c.nodes).map(|k| c.edges.iter().filter(|&&(a, _)| a == k).map(|&(_, b)| b).collect()).collect();
    fn dfs(n: usize, succ: &[Vec<usize>], color: &mut [u8], stack: &mut Vec<usize>) -> Option<Vec<usize>> {
        color[n] = 1;
        stack.push(n);
        for &m in &succ[n] {
            if color[m] == 1 {
                let start = stack.iter().position(|&x| x == m).expect("node is on the stack");
                let mut cyc = stack[start..].to_vec();
                cyc.push(m);
                return Some(cyc);
            }
            if color[m] == 0 {
                if let Some(c) = dfs(m, succ, color, stack) {
                    return Some(c);
                }
            }
        }
        stack.pop();
        color[n] = 2;
        None
    }
    for n in 0..c.nodes {
        if color[n] == 0 {
            if let Some(cyc) = dfs(n, &succ, &mut color, &mut Vec::new()) {
                return Some(cyc);
            }
        }
    }
    None
}

/// Validity in the order: well-founded, extensional, unique maximal node,
/// every node below that node.
pub fn check_wfe(c: &WfeCode) -> Result<(), WfeError> {
    if let Some(cyc) = find_cycle(c) {
        return Err(WfeError::IllFounded(cyc));
    }
    let members: Vec<Vec<usize>> = (0..c.nodes).map(|j| c.members(j)).collect();
    for a in 0..c.nodes {
        for b in a + 1..c.nodes {
            if members[a] == members[b] {
                return Err(WfeError::NotExtensional(a, b));
            }
        }
    }
    let tops = c.maximal_nodes();
    if tops.len() != 1 {
        return Err(WfeError::NoUniqueTop(tops));
    }
    let mut seen = vec![false; c.nodes];
    let mut stack = vec![tops[0]];
    while let Some(n) = stack.pop() {
        if !seen[n] {
            seen[n] = true;
            stack.extend(&members[n]);
        }
    }
    match seen.iter().position(|s| !s) {
        Some(n) => Err(WfeError::Disconnected(n)),
        None => Ok(()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapseResult {
    /// `π(n)` for every node.
    pub map: Vec<HfSet>,
    pub top: usize,
    pub top_set: HfSet,
}

/// `π(j) = {π(k) : (k, j) ∈ E}`, by ∈-recursion.
pub fn mostowski_collapse(c: &WfeCode) -> Result<CollapseResult, WfeError> {
    check_wfe(c)?;
    let mut memo: Vec<Option<HfSet>> = vec![None; c.nodes];
    fn go(n: usize, c: &WfeCode, memo: &mut Vec<Option<HfSet>>) -> HfSet {
        if let Some(s) = &memo[n] {
            return s.clone();
        }
        let s = HfSet::new(c.members(n).into_iter().map(|k| go(k, c, memo)).collect::<Vec<_>>());
        memo[n] = Some(s.clone());
        s
    }
    let map: Vec<HfSet> = (0..c.nodes).map(|n| go(n, c, &mut memo)).collect();
    let top = c.maximal_nodes()[0];
    Ok(CollapseResult { top_set: map[top].clone(), map, top })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CodFlag {
    Valid,
    Invalid(WfeError),
}

impl fmt::Display for CodFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodFlag::Valid => f.write_str("valid"),
            CodFlag::Invalid(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decoded {
    pub set: HfSet,
    pub flag: CodFlag,
}

/// `Cod`: the collapse of the top node of a valid code, and ∅ flagged with
/// the failure otherwise.
pub fn cod_decode(c: &WfeCode) -> Decoded {
    match mostowski_collapse(c) {
        Ok(r) => Decoded { set: r.top_set, flag: CodFlag::Valid },
        Err(e) => Decoded { set: HfSet::empty(), flag: CodFlag::Invalid(e) },
    }
}

/// The canonical code of `a`: nodes are `trcl({a})` in Ackermann order.
pub fn cod_encode(a: &HfSet) -> WfeCode {
    let mut nodes = a.trcl();
    nodes.push(a.clone());
    let mut edges = Vec::new();
    for (j, y) in nodes.iter().enumerate() {
        for x in y.elements() {
            edges.push((nodes.binary_search(x).expect("members are in the closure"), j));
        }
    }
    WfeCode::new(nodes.len(), edges).expect("edges stay in the domain")
}

/// Length of the longest E-chain ending at `n`.
pub fn height(c: &WfeCode, n: usize) -> usize {
    c.members(n).into_iter().map(|k| height(c, k) + 1).max().unwrap_or(0)
}
