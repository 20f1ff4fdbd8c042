//! Exchange matrices, quivers, the mutation rule, and affine Dynkin
//! recognition.
//!
//! An exchange matrix stores entries `b[i][j]` for `j` exchangeable only;
//! frozen–frozen pairs are never stored, matching the `K × K^ex` shape of a
//! seed's matrix.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Node identifier. Interval positions, affine indices and user-supplied ids
/// all share this type.
pub type NodeId = u32;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExchangeMatrix {
    nodes: Vec<NodeId>,
    exchangeable: BTreeSet<NodeId>,
    entries: BTreeMap<(NodeId, NodeId), i64>,
}

impl ExchangeMatrix {
    pub fn new(nodes: Vec<NodeId>, exchangeable: BTreeSet<NodeId>) -> Self {
        ExchangeMatrix {
            nodes,
            exchangeable,
            entries: BTreeMap::new(),
        }
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn exchangeable(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.exchangeable.iter().copied()
    }

    pub fn frozen(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.nodes
            .iter()
            .copied()
            .filter(move |n| !self.exchangeable.contains(n))
    }

    pub fn is_exchangeable(&self, i: NodeId) -> bool {
        self.exchangeable.contains(&i)
    }

    pub fn get(&self, i: NodeId, j: NodeId) -> i64 {
        if self.exchangeable.contains(&j) {
            self.entries.get(&(i, j)).copied().unwrap_or(0)
        } else if self.exchangeable.contains(&i) {
            // skew part of the stored column
            -self.entries.get(&(j, i)).copied().unwrap_or(0)
        } else {
            0
        }
    }

    /// Sets `b[i][j]`; requires `j` exchangeable and at least one of the pair
    /// exchangeable (frozen–frozen entries are dropped by construction).
    pub fn set(&mut self, i: NodeId, j: NodeId, v: i64) -> Result<()> {
        if !self.exchangeable.contains(&j) {
            return Err(Error::NotExchangeable { index: j });
        }
        if v == 0 {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
        Ok(())
    }

    /// Entries of the stored `K × K^ex` block, in sorted order.
    pub fn stored_entries(&self) -> impl Iterator<Item = (NodeId, NodeId, i64)> + '_ {
        self.entries.iter().map(|(&(i, j), &v)| (i, j, v))
    }

    /// The mutation `μ_k` of the exchange matrix.
    pub fn mutate(&self, k: NodeId) -> Result<ExchangeMatrix> {
        if !self.exchangeable.contains(&k) {
            return Err(Error::NotExchangeable { index: k });
        }
        let mut out = ExchangeMatrix::new(self.nodes.clone(), self.exchangeable.clone());
        for &i in &self.nodes {
            for &j in &self.exchangeable {
                if i == j {
                    continue;
                }
                let b_ij = self.get(i, j);
                let v = if i == k || j == k {
                    -b_ij
                } else {
                    let b_ik = self.get(i, k);
                    let b_kj = self.get(k, j);
                    let adj = std::cmp::max(b_ik * b_kj, 0);
                    if b_ik < 0 {
                        b_ij - adj
                    } else {
                        b_ij + adj
                    }
                };
                if v != 0 {
                    out.entries.insert((i, j), v);
                }
            }
        }
        Ok(out)
    }

    /// Restriction to exchangeable rows and columns.
    pub fn principal_part(&self) -> ExchangeMatrix {
        let ex: Vec<NodeId> = self.exchangeable.iter().copied().collect();
        let mut out = ExchangeMatrix::new(ex.clone(), self.exchangeable.clone());
        for &i in &ex {
            for &j in &ex {
                let v = self.get(i, j);
                if v != 0 {
                    out.entries.insert((i, j), v);
                }
            }
        }
        out
    }

    pub fn is_skew_symmetric_principal(&self) -> bool {
        self.exchangeable.iter().all(|&i| {
            self.exchangeable
                .iter()
                .all(|&j| self.get(i, j) == -self.get(j, i))
        })
    }

    /// Topological check: no directed cycle among exchangeable nodes.
    pub fn principal_is_acyclic(&self) -> bool {
        self.topological_exchangeable_order().is_some()
    }

    /// An exchangeable ordering with arrow sources first, smallest id on
    /// ties; `None` when the principal quiver has a cycle.
    pub fn topological_exchangeable_order(&self) -> Option<Vec<NodeId>> {
        let ex: Vec<NodeId> = self.exchangeable.iter().copied().collect();
        let mut indeg: BTreeMap<NodeId, usize> = ex.iter().map(|&v| (v, 0)).collect();
        for &i in &ex {
            for &j in &ex {
                if self.get(i, j) > 0 {
                    *indeg.get_mut(&j).unwrap() += 1;
                }
            }
        }
        let mut ready: BTreeSet<NodeId> = indeg
            .iter()
            .filter(|(_, &d)| d == 0)
            .map(|(&v, _)| v)
            .collect();
        let mut order = Vec::with_capacity(ex.len());
        while let Some(&v) = ready.iter().next() {
            ready.remove(&v);
            order.push(v);
            for &j in &ex {
                if self.get(v, j) > 0 {
                    let d = indeg.get_mut(&j).unwrap();
                    *d -= 1;
                    if *d == 0 {
                        ready.insert(j);
                    }
                }
            }
        }
        (order.len() == ex.len()).then_some(order)
    }
}

/// A quiver: directed multigraph without loops or 2-cycles, some nodes
/// frozen, optional monomial labels kept as raw text at this layer.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Quiver {
    pub nodes: Vec<NodeId>,
    pub frozen: BTreeSet<NodeId>,
    pub labels: BTreeMap<NodeId, String>,
    /// `(i, j) -> multiplicity` for arrows `i -> j`.
    pub arrows: BTreeMap<(NodeId, NodeId), u32>,
}

impl Quiver {
    pub fn add_node(&mut self, id: NodeId, frozen: bool) {
        if !self.nodes.contains(&id) {
            self.nodes.push(id);
        }
        if frozen {
            self.frozen.insert(id);
        }
    }

    pub fn add_arrow(&mut self, from: NodeId, to: NodeId, mult: u32) {
        if mult == 0 {
            return;
        }
        *self.arrows.entry((from, to)).or_insert(0) += mult;
    }

    fn validate(&self) -> Result<()> {
        for (&(i, j), _) in &self.arrows {
            if i == j {
                return Err(Error::InvalidQuiver(format!("loop at node {i}")));
            }
            if self.arrows.contains_key(&(j, i)) {
                return Err(Error::InvalidQuiver(format!(
                    "2-cycle between {i} and {j}"
                )));
            }
            if self.frozen.contains(&i) && self.frozen.contains(&j) {
                return Err(Error::InvalidQuiver(format!(
                    "edge between frozen nodes {i} and {j}"
                )));
            }
            if !self.nodes.contains(&i) || !self.nodes.contains(&j) {
                return Err(Error::InvalidQuiver(format!(
                    "arrow {i} -> {j} uses an undeclared node"
                )));
            }
        }
        Ok(())
    }

    /// `b_ij = #arrows(i -> j) − #arrows(j -> i)`, frozen–frozen entries
    /// discarded.
    pub fn to_matrix(&self) -> Result<ExchangeMatrix> {
        self.validate()?;
        let exchangeable: BTreeSet<NodeId> = self
            .nodes
            .iter()
            .copied()
            .filter(|n| !self.frozen.contains(n))
            .collect();
        let mut m = ExchangeMatrix::new(self.nodes.clone(), exchangeable.clone());
        for (&(i, j), &mult) in &self.arrows {
            if exchangeable.contains(&j) {
                let v = m.get(i, j) + mult as i64;
                m.set(i, j, v)?;
            }
            if exchangeable.contains(&i) {
                let v = m.get(j, i) - mult as i64;
                m.set(j, i, v)?;
            }
        }
        Ok(m)
    }

    /// Copy without the arrows between frozen vertices.
    pub fn strip_frozen_frozen(&self) -> Quiver {
        let mut q = self.clone();
        q.arrows
            .retain(|&(i, j), _| !(self.frozen.contains(&i) && self.frozen.contains(&j)));
        q
    }

    /// Inverse of [`Quiver::to_matrix`] on its image: positive entries become
    /// arrows.
    pub fn from_matrix(m: &ExchangeMatrix) -> Quiver {
        let mut q = Quiver::default();
        for &n in m.nodes() {
            q.add_node(n, !m.is_exchangeable(n));
        }
        let mut seen = BTreeSet::new();
        for &n in m.nodes() {
            for &j in m.nodes() {
                if seen.contains(&(j, n)) {
                    continue;
                }
                seen.insert((n, j));
                let v = m.get(n, j);
                if v > 0 {
                    q.add_arrow(n, j, v as u32);
                } else if v < 0 {
                    q.add_arrow(j, n, (-v) as u32);
                }
            }
        }
        q
    }

    /// Parses the plain-text exchange format:
    ///
    /// ```text
    /// node 0
    /// node 5 frozen label=3_0 3_2 3_4
    /// 0 -> 5 x2
    /// ```
    ///
    /// Arrows between two frozen nodes are ignored on ingestion.
    pub fn parse(text: &str) -> Result<Quiver> {
        let mut q = Quiver::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::Parse(format!("line {}: {msg}", lineno + 1));
            if let Some(rest) = line.strip_prefix("node ") {
                let mut words = rest.split_whitespace();
                let id: NodeId = words
                    .next()
                    .ok_or_else(|| err("missing node id"))?
                    .parse()
                    .map_err(|_| err("bad node id"))?;
                let mut frozen = false;
                let mut label = None;
                let rest_words: Vec<&str> = words.collect();
                let mut k = 0;
                while k < rest_words.len() {
                    if rest_words[k] == "frozen" {
                        frozen = true;
                        k += 1;
                    } else if let Some(start) = rest_words[k].strip_prefix("label=") {
                        let mut parts = vec![start.to_string()];
                        parts.extend(rest_words[k + 1..].iter().map(|s| s.to_string()));
                        label = Some(parts.join(" "));
                        k = rest_words.len();
                    } else {
                        return Err(err("unrecognized node attribute"));
                    }
                }
                q.add_node(id, frozen);
                if let Some(l) = label {
                    q.labels.insert(id, l);
                }
            } else if line.contains("->") {
                let (lhs, rhs) = line.split_once("->").unwrap();
                let from: NodeId = lhs.trim().parse().map_err(|_| err("bad source id"))?;
                let mut rhs_words = rhs.split_whitespace();
                let to: NodeId = rhs_words
                    .next()
                    .ok_or_else(|| err("missing target id"))?
                    .parse()
                    .map_err(|_| err("bad target id"))?;
                let mult = match rhs_words.next() {
                    None => 1,
                    Some(w) => w
                        .strip_prefix('x')
                        .and_then(|n| n.parse().ok())
                        .ok_or_else(|| err("bad multiplicity, expected xN"))?,
                };
                if q.frozen.contains(&from) && q.frozen.contains(&to) {
                    continue;
                }
                q.add_arrow(from, to, mult);
            } else {
                return Err(err("expected `node <id> ...` or `i -> j [xN]`"));
            }
        }
        q.validate()?;
        Ok(q)
    }

    /// Deterministic canonical serialization, suitable for hashing.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let mut nodes = self.nodes.clone();
        nodes.sort_unstable();
        for id in nodes {
            write!(out, "node {id}").unwrap();
            if self.frozen.contains(&id) {
                out.push_str(" frozen");
            }
            if let Some(l) = self.labels.get(&id) {
                write!(out, " label={l}").unwrap();
            }
            out.push('\n');
        }
        for (&(i, j), &m) in &self.arrows {
            if m == 1 {
                writeln!(out, "{i} -> {j}").unwrap();
            } else {
                writeln!(out, "{i} -> {j} x{m}").unwrap();
            }
        }
        out
    }
}

/// Untwisted affine type tags recognized by [`detect_affine_type`].
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub enum AffineType {
    /// `D_n^{(1)}`, `n >= 4`.
    D(usize),
    /// `E_n^{(1)}`, `n` in `{6, 7, 8}`.
    E(usize),
}

impl std::fmt::Display for AffineType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AffineType::D(n) => write!(f, "D{n}^(1)"),
            AffineType::E(n) => write!(f, "E{n}^(1)"),
        }
    }
}

impl AffineType {
    pub fn rank(&self) -> usize {
        match *self {
            AffineType::D(n) | AffineType::E(n) => n,
        }
    }

    /// Edges of the affine Dynkin diagram on `0..=rank` in the labeling of
    /// the root-system section: `D_n^{(1)}` attaches 0 to `n−1`, `E_6^{(1)}`
    /// hangs 0 off node 4, `E_7^{(1)}` off node 1, `E_8^{(1)}` off node 8.
    pub fn standard_edges(&self) -> Vec<(usize, usize)> {
        match *self {
            AffineType::D(n) => {
                let mut e = vec![(1, 3), (2, 3)];
                for i in 3..n {
                    e.push((i, i + 1));
                }
                e.push((0, n - 1));
                e
            }
            AffineType::E(6) => vec![(1, 2), (2, 3), (3, 4), (4, 0), (3, 5), (5, 6)],
            AffineType::E(7) => vec![(0, 1), (1, 2), (2, 3), (3, 4), (3, 5), (5, 6), (6, 7)],
            AffineType::E(8) => vec![
                (1, 2),
                (2, 3),
                (3, 4),
                (3, 5),
                (5, 6),
                (6, 7),
                (7, 8),
                (8, 0),
            ],
            AffineType::E(_) => unreachable!("only E6, E7, E8 exist"),
        }
    }
}

/// Canonical form of an unrooted tree via the rooted AHU encoding at its
/// centroid(s); equal strings iff isomorphic trees.
fn tree_canonical(adj: &BTreeMap<usize, Vec<usize>>) -> Option<String> {
    let n = adj.len();
    if n == 0 {
        return None;
    }
    let edge_count: usize = adj.values().map(|v| v.len()).sum::<usize>() / 2;
    if edge_count != n - 1 {
        return None; // not a tree
    }
    // connectivity
    let start = *adj.keys().next().unwrap();
    let mut seen = BTreeSet::new();
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        if seen.insert(v) {
            stack.extend(adj[&v].iter().copied().filter(|u| !seen.contains(u)));
        }
    }
    if seen.len() != n {
        return None;
    }
    // centroid(s)
    fn subtree_sizes(
        adj: &BTreeMap<usize, Vec<usize>>,
        v: usize,
        parent: Option<usize>,
        sizes: &mut BTreeMap<usize, usize>,
    ) -> usize {
        let mut s = 1;
        for &u in &adj[&v] {
            if Some(u) != parent {
                s += subtree_sizes(adj, u, Some(v), sizes);
            }
        }
        sizes.insert(v, s);
        s
    }
    let mut sizes = BTreeMap::new();
    subtree_sizes(adj, start, None, &mut sizes);
    // recompute max component size per node by rerooting
    let mut best = usize::MAX;
    let mut centroids = Vec::new();
    for &v in adj.keys() {
        let mut sizes_v = BTreeMap::new();
        subtree_sizes(adj, v, None, &mut sizes_v);
        let maxcomp = adj[&v]
            .iter()
            .map(|&u| sizes_v[&u])
            .max()
            .unwrap_or(0);
        match maxcomp.cmp(&best) {
            std::cmp::Ordering::Less => {
                best = maxcomp;
                centroids = vec![v];
            }
            std::cmp::Ordering::Equal => centroids.push(v),
            std::cmp::Ordering::Greater => {}
        }
    }
    fn ahu(adj: &BTreeMap<usize, Vec<usize>>, v: usize, parent: Option<usize>) -> String {
        let mut children: Vec<String> = adj[&v]
            .iter()
            .filter(|&&u| Some(u) != parent)
            .map(|&u| ahu(adj, u, Some(v)))
            .collect();
        children.sort();
        format!("({})", children.join(""))
    }
    centroids
        .into_iter()
        .map(|c| ahu(adj, c, None))
        .min()
}

/// Recognizes the principal part as an acyclic quiver whose underlying graph
/// is an untwisted affine Dynkin diagram of type `D_n^{(1)}` or
/// `E_{6,7,8}^{(1)}`.
pub fn detect_affine_type(m: &ExchangeMatrix) -> Option<AffineType> {
    let ex: Vec<NodeId> = m.exchangeable().collect();
    let size = ex.len();
    if size < 5 {
        return None;
    }
    if !m.principal_is_acyclic() {
        return None;
    }
    let mut adj: BTreeMap<usize, Vec<usize>> = (0..size).map(|i| (i, Vec::new())).collect();
    for (a, &i) in ex.iter().enumerate() {
        for (b, &j) in ex.iter().enumerate() {
            let v = m.get(i, j);
            if v.abs() > 1 {
                return None; // multi-edge: not a simply-laced diagram
            }
            if v > 0 {
                adj.get_mut(&a).unwrap().push(b);
                adj.get_mut(&b).unwrap().push(a);
            }
        }
    }
    let canon = tree_canonical(&adj)?;
    let candidates: Vec<AffineType> = match size {
        7 => vec![AffineType::D(6), AffineType::E(6)],
        8 => vec![AffineType::D(7), AffineType::E(7)],
        9 => vec![AffineType::D(8), AffineType::E(8)],
        n => vec![AffineType::D(n - 1)],
    };
    for cand in candidates {
        let mut ref_adj: BTreeMap<usize, Vec<usize>> =
            (0..=cand.rank()).map(|i| (i, Vec::new())).collect();
        for (a, b) in cand.standard_edges() {
            ref_adj.get_mut(&a).unwrap().push(b);
            ref_adj.get_mut(&b).unwrap().push(a);
        }
        if tree_canonical(&ref_adj).as_ref() == Some(&canon) {
            return Some(cand);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2_matrix() -> ExchangeMatrix {
        let mut m = ExchangeMatrix::new(vec![0, 1], [0, 1].into_iter().collect());
        m.set(0, 1, 1).unwrap();
        m.set(1, 0, -1).unwrap();
        m
    }

    #[test]
    fn single_node_mutation_is_identity_on_zero() {
        let m = ExchangeMatrix::new(vec![0], [0].into_iter().collect());
        assert_eq!(m.mutate(0).unwrap(), m);
    }

    #[test]
    fn a2_mutation_negates_row_and_column() {
        let m = a2_matrix();
        let mu = m.mutate(0).unwrap();
        assert_eq!(mu.get(0, 1), -1);
        assert_eq!(mu.get(1, 0), 1);
    }

    #[test]
    fn mutation_is_an_involution() {
        let m = a2_matrix();
        assert_eq!(m.mutate(0).unwrap().mutate(0).unwrap(), m);
    }

    #[test]
    fn frozen_index_rejected() {
        let mut q = Quiver::default();
        q.add_node(0, false);
        q.add_node(1, true);
        q.add_arrow(0, 1, 1);
        let m = q.to_matrix().unwrap();
        assert!(m.mutate(1).is_err());
    }

    #[test]
    fn quiver_round_trip() {
        let mut q = Quiver::default();
        q.add_node(0, false);
        q.add_node(1, false);
        q.add_arrow(0, 1, 1);
        let m = q.to_matrix().unwrap();
        assert_eq!(m.get(0, 1), 1);
        assert_eq!(m.get(1, 0), -1);
        assert_eq!(Quiver::from_matrix(&m), q);
    }

    #[test]
    fn empty_quiver_gives_zero_matrix() {
        let mut q = Quiver::default();
        q.add_node(0, false);
        q.add_node(1, false);
        let m = q.to_matrix().unwrap();
        assert_eq!(m.stored_entries().count(), 0);
    }

    #[test]
    fn loops_and_two_cycles_rejected() {
        let mut q = Quiver::default();
        q.add_node(0, false);
        q.add_arrow(0, 0, 1);
        assert!(q.to_matrix().is_err());
        let mut q2 = Quiver::default();
        q2.add_node(0, false);
        q2.add_node(1, false);
        q2.add_arrow(0, 1, 1);
        q2.add_arrow(1, 0, 1);
        assert!(q2.to_matrix().is_err());
    }

    #[test]
    fn parse_and_serialize() {
        let text = "node 0\nnode 1 frozen label=3_0 3_2\n0 -> 1\n";
        let q = Quiver::parse(text).unwrap();
        assert!(q.frozen.contains(&1));
        assert_eq!(q.labels[&1], "3_0 3_2");
        let q2 = Quiver::parse(&q.serialize()).unwrap();
        assert_eq!(q, q2);
    }

    #[test]
    fn frozen_frozen_edges_dropped_on_parse() {
        let text = "node 0 frozen\nnode 1 frozen\nnode 2\n0 -> 1\n2 -> 0\n";
        let q = Quiver::parse(text).unwrap();
        assert!(!q.arrows.contains_key(&(0, 1)));
        assert!(q.arrows.contains_key(&(2, 0)));
    }

    #[test]
    fn detect_d4_affine_star() {
        // star: 4 sources into a center, as in the D_4 sink-source quiver
        let mut q = Quiver::default();
        for i in 0..5 {
            q.add_node(i, false);
        }
        for i in [0u32, 1, 2, 4] {
            q.add_arrow(i, 3, 1);
        }
        let m = q.to_matrix().unwrap();
        assert_eq!(detect_affine_type(&m), Some(AffineType::D(4)));
    }

    #[test]
    fn a2_is_not_affine() {
        assert_eq!(detect_affine_type(&a2_matrix()), None);
    }

    #[test]
    fn e6_vs_d6_disambiguation() {
        let mk = |edges: &[(u32, u32)], n: u32| {
            let mut q = Quiver::default();
            for i in 0..=n {
                q.add_node(i, false);
            }
            for &(a, b) in edges {
                q.add_arrow(a, b, 1);
            }
            q.to_matrix().unwrap()
        };
        let e6: Vec<(u32, u32)> = AffineType::E(6)
            .standard_edges()
            .into_iter()
            .map(|(a, b)| (a as u32, b as u32))
            .collect();
        assert_eq!(detect_affine_type(&mk(&e6, 6)), Some(AffineType::E(6)));
        let d6: Vec<(u32, u32)> = AffineType::D(6)
            .standard_edges()
            .into_iter()
            .map(|(a, b)| (a as u32, b as u32))
            .collect();
        assert_eq!(detect_affine_type(&mk(&d6, 6)), Some(AffineType::D(6)));
    }
}
