//! The doubling family of bipartite graphs and their chain drawings.
//!
//! `G_1` is the path `u1 v1 u2 v2`. Doubling takes a disjoint copy `G'` and
//! returns `(U ⊎ V', V ⊎ U')` with edges `E ⊎ E' ⊎ {(u, u')}`. Vertex ids
//! record the copy choice made at every doubling, so the vertex order of
//! `family(k)` lines up with the point order of the construction's chains.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::construct::{chain_check, Level};
use crate::geom::Point;
use crate::report::{all_passed, Check};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("invalid vertex id `{0}`")]
    InvalidVertexId(String),
    #[error("vertex {0} appears more than once")]
    DuplicateVertex(VertexId),
    #[error("edge ({0}, {1}) does not join U to V")]
    BadEndpoint(VertexId, VertexId),
    #[error("edge ({0}, {1}) appears more than once")]
    DuplicateEdge(VertexId, VertexId),
    #[error("drawing invariant violated: {0}")]
    InvariantViolation(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Root {
    U1,
    U2,
    V1,
    V2,
}

/// A vertex of `family(k)`: the `G_1` vertex it descends from plus one copy
/// bit per doubling (`false` = original, `true` = copy).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId {
    pub root: Root,
    pub copies: Vec<bool>,
}

impl VertexId {
    pub fn root(root: Root) -> Self {
        VertexId { root, copies: Vec::new() }
    }

    fn with_bit(&self, bit: bool) -> Self {
        let mut copies = self.copies.clone();
        copies.push(bit);
        VertexId { root: self.root, copies }
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let root = match self.root {
            Root::U1 => "u1",
            Root::U2 => "u2",
            Root::V1 => "v1",
            Root::V2 => "v2",
        };
        f.write_str(root)?;
        if !self.copies.is_empty() {
            f.write_str("/")?;
            for &b in &self.copies {
                f.write_str(if b { "1" } else { "0" })?;
            }
        }
        Ok(())
    }
}

impl FromStr for VertexId {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GraphError::InvalidVertexId(s.to_owned());
        let (root, path) = match s.split_once('/') {
            Some((r, p)) if !p.is_empty() => (r, p),
            Some(_) => return Err(bad()),
            None => (s, ""),
        };
        let root = match root {
            "u1" => Root::U1,
            "u2" => Root::U2,
            "v1" => Root::V1,
            "v2" => Root::V2,
            _ => return Err(bad()),
        };
        let copies = path
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(bad()),
            })
            .collect::<Result<_, _>>()?;
        Ok(VertexId { root, copies })
    }
}

/// A bipartite graph with ordered parts. Edges go from `u` to `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    u: Vec<VertexId>,
    v: Vec<VertexId>,
    edges: Vec<(VertexId, VertexId)>,
}

impl BipartiteGraph {
    pub fn new(u: Vec<VertexId>, v: Vec<VertexId>, edges: Vec<(VertexId, VertexId)>) -> Result<Self, GraphError> {
        let mut seen = HashSet::new();
        for id in u.iter().chain(&v) {
            if !seen.insert(id) {
                return Err(GraphError::DuplicateVertex(id.clone()));
            }
        }
        let us: HashSet<&VertexId> = u.iter().collect();
        let vs: HashSet<&VertexId> = v.iter().collect();
        let mut seen_edges = HashSet::new();
        for (a, b) in &edges {
            if !us.contains(a) || !vs.contains(b) {
                return Err(GraphError::BadEndpoint(a.clone(), b.clone()));
            }
            if !seen_edges.insert((a, b)) {
                return Err(GraphError::DuplicateEdge(a.clone(), b.clone()));
            }
        }
        Ok(BipartiteGraph { u, v, edges })
    }

    pub fn u(&self) -> &[VertexId] {
        &self.u
    }

    pub fn v(&self) -> &[VertexId] {
        &self.v
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.u.len() + self.v.len()
    }

    /// Edges as 0-based `(position in U, position in V)` pairs.
    pub fn edge_indices(&self) -> Vec<(usize, usize)> {
        let ui: HashMap<&VertexId, usize> = self.u.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let vi: HashMap<&VertexId, usize> = self.v.iter().enumerate().map(|(i, x)| (x, i)).collect();
        self.edges.iter().map(|(a, b)| (ui[a], vi[b])).collect()
    }

    pub fn degree(&self, id: &VertexId) -> usize {
        self.edges.iter().filter(|(a, b)| a == id || b == id).count()
    }

    pub fn is_connected(&self) -> bool {
        let all: Vec<&VertexId> = self.u.iter().chain(&self.v).collect();
        let Some(&start) = all.first() else {
            return true;
        };
        let mut adj: HashMap<&VertexId, Vec<&VertexId>> = HashMap::new();
        for (a, b) in &self.edges {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        let mut seen = HashSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &y in adj.get(x).into_iter().flatten() {
                if seen.insert(y) {
                    queue.push_back(y);
                }
            }
        }
        seen.len() == all.len()
    }

    /// One `u<i> v<j>` line per edge, positions 1-based.
    pub fn to_edge_list(&self) -> String {
        self.edge_indices().into_iter().map(|(i, j)| format!("u{} v{}\n", i + 1, j + 1)).collect()
    }
}

/// `G_1 = ({u1, u2} ⊎ {v1, v2}, {(u1, v1), (u2, v1), (u2, v2)})`.
pub fn g1() -> BipartiteGraph {
    let [u1, u2, v1, v2] = [Root::U1, Root::U2, Root::V1, Root::V2].map(VertexId::root);
    BipartiteGraph {
        u: vec![u1.clone(), u2.clone()],
        v: vec![v1.clone(), v2.clone()],
        edges: vec![(u1, v1.clone()), (u2.clone(), v1), (u2, v2)],
    }
}

/// `Ū = U ⊎ V'`, `V̄ = V ⊎ U'`, `Ē = E ⊎ E' ⊎ {(u, u') : u ∈ U}`.
pub fn double(g: &BipartiteGraph) -> BipartiteGraph {
    let orig = |x: &VertexId| x.with_bit(false);
    let copy = |x: &VertexId| x.with_bit(true);
    let u = g.u.iter().map(orig).chain(g.v.iter().map(copy)).collect();
    let v = g.v.iter().map(orig).chain(g.u.iter().map(copy)).collect();
    let mut edges = Vec::with_capacity(2 * g.edges.len() + g.u.len());
    edges.extend(g.edges.iter().map(|(a, b)| (orig(a), orig(b))));
    // In the copy, former U vertices sit in V̄ and former V vertices in Ū.
    edges.extend(g.edges.iter().map(|(a, b)| (copy(b), copy(a))));
    edges.extend(g.u.iter().map(|x| (orig(x), copy(x))));
    BipartiteGraph { u, v, edges }
}

pub fn family(k: u32) -> BipartiteGraph {
    assert!(k >= 1, "family index starts at 1");
    (1..k).fold(g1(), |g, _| double(&g))
}

/// A graph together with positions for its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteDrawing {
    pub graph: BipartiteGraph,
    pub placement: BTreeMap<VertexId, Point>,
}

impl BipartiteDrawing {
    pub fn edge_midpoints(&self) -> Option<Vec<Point>> {
        self.graph.edges.iter().map(|(a, b)| Some(self.placement.get(a)?.midpoint(self.placement.get(b)?))).collect()
    }
}

fn sorted_chain_check(name: &'static str, mut pts: Vec<Point>) -> Check {
    if pts.len() < 2 {
        return Check::new(name, true, format!("{} points", pts.len()));
    }
    pts.sort();
    chain_check(name, &pts)
}

/// Each drawing invariant as a separate check.
pub fn check_drawing(d: &BipartiteDrawing) -> Vec<Check> {
    let g = &d.graph;
    let placed = |ids: &[VertexId]| ids.iter().map(|x| d.placement.get(x).cloned()).collect::<Option<Vec<_>>>();
    let (Some(up), Some(vp), Some(mids)) = (placed(&g.u), placed(&g.v), d.edge_midpoints()) else {
        return vec![Check::new("placement-complete", false, "some vertex has no position")];
    };
    let mut out = vec![Check::new("placement-complete", true, format!("{} vertices placed", g.vertex_count()))];
    out.push(sorted_chain_check("U-chain", up));
    out.push(sorted_chain_check("V-chain", vp));
    let distinct = mids.iter().collect::<HashSet<_>>().len() == mids.len();
    out.push(Check::new("midpoints-distinct", distinct, format!("{} edge midpoints", mids.len())));
    out.push(sorted_chain_check("midpoints-chain", mids));
    out
}

pub fn verify_drawing(d: &BipartiteDrawing) -> bool {
    all_passed(&check_drawing(d))
}

/// Places `family(level.k)` on the level's chains: the i-th vertex of U at
/// `a[i]`, the j-th vertex of V at `b[j]`. The edge set must coincide with
/// the witness pairs.
pub fn drawing_from_level(level: &Level) -> Result<BipartiteDrawing, GraphError> {
    let graph = family(level.k);
    if graph.u.len() != level.a.len() || graph.v.len() != level.b.len() {
        return Err(GraphError::InvariantViolation(format!(
            "part sizes {}/{} do not match chain lengths {}/{}",
            graph.u.len(),
            graph.v.len(),
            level.a.len(),
            level.b.len()
        )));
    }
    let edges: HashSet<(usize, usize)> = graph.edge_indices().into_iter().collect();
    let witness: HashSet<(usize, usize)> = level.witness.iter().copied().collect();
    if edges != witness || witness.len() != level.witness.len() {
        return Err(GraphError::InvariantViolation("edge set differs from witness pairs".into()));
    }
    let placement = graph
        .u
        .iter()
        .zip(level.a.points())
        .chain(graph.v.iter().zip(level.b.points()))
        .map(|(id, p)| (id.clone(), p.clone()))
        .collect();
    let drawing = BipartiteDrawing { graph, placement };
    if let Some(c) = check_drawing(&drawing).into_iter().find(|c| !c.passed) {
        return Err(GraphError::InvariantViolation(format!("{}: {}", c.name, c.detail)));
    }
    Ok(drawing)
}
