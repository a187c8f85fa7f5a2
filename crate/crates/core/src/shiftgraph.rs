//! Finite labeled digraphs presenting edge shifts.
//!
//! The points of the shift are the bi-infinite edge paths. Multi-edges are
//! significant and never merged.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fingroup::{Elem, ElemSet, FiniteGroup};

/// Largest number of blocks `block_presentation` will materialize.
pub const MAX_BLOCKS: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ShiftGraph {
    alphabet: String,
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CardinalityClass {
    Finite(u64),
    CountablyInfinite,
    Uncountable,
}

impl CardinalityClass {
    /// Short tag used in reports: `finite`, `countable` or `uncountable`.
    pub fn tag(&self) -> &'static str {
        match self {
            CardinalityClass::Finite(_) => "finite",
            CardinalityClass::CountablyInfinite => "countable",
            CardinalityClass::Uncountable => "uncountable",
        }
    }
}

impl std::fmt::Display for CardinalityClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CardinalityClass::Finite(n) => write!(f, "finite ({n})"),
            other => f.write_str(other.tag()),
        }
    }
}

/// A pruned graph with the original index of every surviving vertex and edge.
#[derive(Clone, Debug)]
pub struct Pruned {
    pub graph: ShiftGraph,
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
}

/// A strongly connected component, as sorted vertex and internal-edge indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub vertices: Vec<usize>,
    pub edges: Vec<usize>,
}

impl Component {
    /// More internal edges than vertices: contains two distinct cycles.
    pub fn is_uncountable(&self) -> bool {
        self.edges.len() > self.vertices.len()
    }
}

/// A subgroup realized as the image of some bi-infinite path, with the value
/// of the path flag (see [`ShiftGraph::realizable_images_flagged`]).
pub type FlaggedImage = (ElemSet, bool);

impl ShiftGraph {
    pub fn new(alphabet: impl Into<String>, vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        let n = vertices.len();
        if let Some(e) = edges.iter().find(|e| e.source >= n || e.target >= n) {
            return Err(Error::Domain(format!(
                "edge {} -> {} references a missing vertex",
                e.source, e.target
            )));
        }
        Ok(ShiftGraph {
            alphabet: alphabet.into(),
            vertices,
            edges,
        })
    }

    /// Builds an unlabeled graph: vertices named by index, edges by position.
    pub fn from_edges(num_vertices: usize, edges: &[(usize, usize)]) -> Result<Self> {
        ShiftGraph::new(
            "",
            (0..num_vertices).map(|v| v.to_string()).collect(),
            edges
                .iter()
                .enumerate()
                .map(|(i, &(s, t))| Edge {
                    source: s,
                    target: t,
                    label: format!("e{i}"),
                })
                .collect(),
        )
    }

    pub fn alphabet(&self) -> &str {
        &self.alphabet
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = (usize, &Edge)> {
        self.edges.iter().enumerate().filter(move |(_, e)| e.source == v)
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.vertices.len()];
        for (i, e) in self.edges.iter().enumerate() {
            out[e.source].push(i);
        }
        out
    }

    /// Restriction to the given vertices and edges (sorted, original order).
    pub fn subgraph(&self, vertices: &[usize], edges: &[usize]) -> ShiftGraph {
        let mut index = vec![usize::MAX; self.vertices.len()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        ShiftGraph {
            alphabet: self.alphabet.clone(),
            vertices: vertices.iter().map(|&v| self.vertices[v].clone()).collect(),
            edges: edges
                .iter()
                .map(|&e| {
                    let e = &self.edges[e];
                    Edge {
                        source: index[e.source],
                        target: index[e.target],
                        label: e.label.clone(),
                    }
                })
                .collect(),
        }
    }

    pub fn prune(&self) -> ShiftGraph {
        self.prune_with_map().graph
    }

    /// Removes vertices with no incoming or no outgoing edge until none
    /// remain; what is left is the union of all bi-infinite paths.
    pub fn prune_with_map(&self) -> Pruned {
        let n = self.vertices.len();
        let mut alive_v = vec![true; n];
        let mut alive_e = vec![true; self.edges.len()];
        let mut indeg = vec![0usize; n];
        let mut outdeg = vec![0usize; n];
        let mut ins = vec![Vec::new(); n];
        let mut outs = vec![Vec::new(); n];
        for (i, e) in self.edges.iter().enumerate() {
            outdeg[e.source] += 1;
            indeg[e.target] += 1;
            outs[e.source].push(i);
            ins[e.target].push(i);
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0 || outdeg[v] == 0).collect();
        while let Some(v) = queue.pop_front() {
            if !alive_v[v] {
                continue;
            }
            alive_v[v] = false;
            for &e in outs[v].iter().chain(&ins[v]) {
                if !alive_e[e] {
                    continue;
                }
                alive_e[e] = false;
                let Edge { source, target, .. } = self.edges[e];
                outdeg[source] -= 1;
                indeg[target] -= 1;
                for w in [source, target] {
                    if alive_v[w] && (indeg[w] == 0 || outdeg[w] == 0) {
                        queue.push_back(w);
                    }
                }
            }
        }
        let vertex_map: Vec<usize> = (0..n).filter(|&v| alive_v[v]).collect();
        let edge_map: Vec<usize> = (0..self.edges.len()).filter(|&e| alive_e[e]).collect();
        Pruned {
            graph: self.subgraph(&vertex_map, &edge_map),
            vertex_map,
            edge_map,
        }
    }

    /// Strongly connected components with at least one internal edge,
    /// ordered by smallest vertex.
    pub fn components(&self) -> Vec<Component> {
        let comp = self.scc_ids();
        let count = comp.iter().copied().max().map_or(0, |m| m + 1);
        let mut vertices = vec![Vec::new(); count];
        let mut edges = vec![Vec::new(); count];
        for (v, &c) in comp.iter().enumerate() {
            vertices[c].push(v);
        }
        for (i, e) in self.edges.iter().enumerate() {
            if comp[e.source] == comp[e.target] {
                edges[comp[e.source]].push(i);
            }
        }
        let mut out: Vec<Component> = vertices
            .into_iter()
            .zip(edges)
            .filter(|(_, e)| !e.is_empty())
            .map(|(vertices, edges)| Component { vertices, edges })
            .collect();
        out.sort_by_key(|c| c.vertices[0]);
        out
    }

    pub fn irreducible_components(&self) -> Vec<ShiftGraph> {
        self.components()
            .iter()
            .map(|c| self.subgraph(&c.vertices, &c.edges))
            .collect()
    }

    /// SCC index of every vertex (iterative Tarjan).
    pub fn scc_ids(&self) -> Vec<usize> {
        let n = self.vertices.len();
        let adj = self.adjacency();
        let mut index = vec![usize::MAX; n];
        let mut low = vec![0usize; n];
        let mut on_stack = vec![false; n];
        let mut comp = vec![usize::MAX; n];
        let mut stack = Vec::new();
        let mut next_index = 0;
        let mut next_comp = 0;
        for root in 0..n {
            if index[root] != usize::MAX {
                continue;
            }
            let mut call: Vec<(usize, usize)> = vec![(root, 0)];
            index[root] = next_index;
            low[root] = next_index;
            next_index += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(&mut (v, ref mut pos)) = call.last_mut() {
                if *pos < adj[v].len() {
                    let w = self.edges[adj[v][*pos]].target;
                    *pos += 1;
                    if index[w] == usize::MAX {
                        index[w] = next_index;
                        low[w] = next_index;
                        next_index += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        call.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    call.pop();
                    if let Some(&(parent, _)) = call.last() {
                        low[parent] = low[parent].min(low[v]);
                    }
                    if low[v] == index[v] {
                        loop {
                            let w = stack.pop().unwrap();
                            on_stack[w] = false;
                            comp[w] = next_comp;
                            if w == v {
                                break;
                            }
                        }
                        next_comp += 1;
                    }
                }
            }
        }
        comp
    }

    /// Cardinality of the set of bi-infinite paths. The graph is pruned
    /// first, so any input is accepted.
    pub fn classify(&self) -> CardinalityClass {
        let g = self.prune();
        let n = g.num_vertices();
        let mut indeg = vec![0usize; n];
        let mut outdeg = vec![0usize; n];
        for e in &g.edges {
            outdeg[e.source] += 1;
            indeg[e.target] += 1;
        }
        if (0..n).all(|v| indeg[v] == 1 && outdeg[v] == 1) {
            return CardinalityClass::Finite(n as u64);
        }
        if g.components().iter().any(Component::is_uncountable) {
            CardinalityClass::Uncountable
        } else {
            CardinalityClass::CountablyInfinite
        }
    }

    /// Number of points with `σ^r x = x`: the trace of `M^r`, counted as
    /// closed walks of length `r` inside each component.
    pub fn count_periodic_points(&self, r: usize) -> Result<BigUint> {
        if r == 0 {
            return Err(Error::Domain("period must be at least 1".into()));
        }
        let mut total = BigUint::zero();
        for comp in self.components() {
            let local: HashMap<usize, usize> =
                comp.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            let edges: Vec<(usize, usize)> = comp
                .edges
                .iter()
                .map(|&e| (local[&self.edges[e].source], local[&self.edges[e].target]))
                .collect();
            total += trace_power(comp.vertices.len(), &edges, r);
        }
        Ok(total)
    }

    /// Higher-block presentation: vertices are the paths of `n` edges and
    /// edges the paths of `n + 1` edges, joined on their overlap. The result
    /// presents a conjugate shift.
    pub fn block_presentation(&self, n: usize) -> Result<ShiftGraph> {
        if n == 0 {
            return Err(Error::Domain("block length must be at least 1".into()));
        }
        let adj = self.adjacency();
        let mut blocks: Vec<Vec<usize>> = self.edges.iter().enumerate().map(|(i, _)| vec![i]).collect();
        for _ in 1..n {
            let mut next = Vec::new();
            for b in &blocks {
                let last = self.edges[*b.last().unwrap()].target;
                for &e in &adj[last] {
                    let mut nb = b.clone();
                    nb.push(e);
                    next.push(nb);
                }
                if next.len() > MAX_BLOCKS {
                    return Err(Error::Resource(format!("more than {MAX_BLOCKS} blocks")));
                }
            }
            blocks = next;
        }
        let index: HashMap<&[usize], usize> =
            blocks.iter().enumerate().map(|(i, b)| (b.as_slice(), i)).collect();
        let mut edges = Vec::new();
        for (i, b) in blocks.iter().enumerate() {
            let last = self.edges[*b.last().unwrap()].target;
            for &e in &adj[last] {
                let mut tail = b[1..].to_vec();
                tail.push(e);
                let mut full = b.clone();
                full.push(e);
                edges.push(Edge {
                    source: i,
                    target: index[tail.as_slice()],
                    label: self.block_label(&full),
                });
                if edges.len() > MAX_BLOCKS {
                    return Err(Error::Resource(format!("more than {MAX_BLOCKS} blocks")));
                }
            }
        }
        Ok(ShiftGraph {
            alphabet: format!("{}-blocks of {}", n, self.alphabet),
            vertices: blocks.iter().map(|b| self.block_label(b)).collect(),
            edges,
        }
        .prune())
    }

    fn block_label(&self, path: &[usize]) -> String {
        path.iter()
            .map(|&e| self.edges[e].label.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Subgroups generated by the contributions along some bi-infinite path.
    pub fn realizable_images(&self, contribute: &[ElemSet], group: &FiniteGroup) -> Vec<ElemSet> {
        let none_v = vec![false; self.num_vertices()];
        let none_e = vec![false; self.num_edges()];
        let set: BTreeSet<ElemSet> = self
            .realizable_images_flagged(contribute, group, &none_v, &none_e)
            .into_iter()
            .map(|(h, _)| h)
            .collect();
        let mut out: Vec<ElemSet> = set.into_iter().collect();
        out.sort_by_key(|s| (s.len(), s.0));
        out
    }

    /// Like [`realizable_images`](Self::realizable_images), also reporting
    /// whether a path realizing the image can be chosen to visit a marked
    /// vertex or use a marked edge. Pairs `(H, false)` are reported only
    /// for paths avoiding every mark; `(H, true)` whenever some path does
    /// not. Runs on the pruned graph.
    pub fn realizable_images_flagged(
        &self,
        contribute: &[ElemSet],
        group: &FiniteGroup,
        vertex_marks: &[bool],
        edge_marks: &[bool],
    ) -> Vec<FlaggedImage> {
        assert_eq!(contribute.len(), self.num_edges(), "one contribution per edge");
        let pruned = self.prune_with_map();
        let g = &pruned.graph;
        let contrib: Vec<ElemSet> = pruned.edge_map.iter().map(|&e| contribute[e]).collect();
        let vmark: Vec<bool> = pruned.vertex_map.iter().map(|&v| vertex_marks[v]).collect();
        let emark: Vec<bool> = pruned.edge_map.iter().map(|&e| edge_marks[e]).collect();
        let adj = g.adjacency();
        let comp = g.scc_ids();
        let trivial = ElemSet::singleton(Elem::IDENTITY);
        let mut joins: HashMap<(ElemSet, ElemSet), ElemSet> = HashMap::new();
        let mut join = |h: ElemSet, c: ElemSet| -> ElemSet {
            if c.is_subset(h) {
                return h;
            }
            *joins.entry((h, c)).or_insert_with(|| group.closure(h.union(c)))
        };

        type State = (usize, ElemSet, bool);
        let step = |s: State, e: usize, join: &mut dyn FnMut(ElemSet, ElemSet) -> ElemSet| -> State {
            let edge = &g.edges[e];
            (
                edge.target,
                join(s.1, contrib[e]),
                s.2 || emark[e] || vmark[edge.target],
            )
        };

        // Past: states at u reached from (u, 1) by a nonempty closed walk.
        let mut seeds: BTreeSet<State> = BTreeSet::new();
        for u in 0..g.num_vertices() {
            let mut seen: BTreeSet<State> = BTreeSet::new();
            let mut queue = VecDeque::new();
            let start = (u, trivial, vmark[u]);
            for &e in &adj[u] {
                if comp[g.edges[e].target] == comp[u] {
                    let s = step(start, e, &mut join);
                    if seen.insert(s) {
                        queue.push_back(s);
                    }
                }
            }
            while let Some(s) = queue.pop_front() {
                for &e in &adj[s.0] {
                    if comp[g.edges[e].target] == comp[u] {
                        let t = step(s, e, &mut join);
                        if seen.insert(t) {
                            queue.push_back(t);
                        }
                    }
                }
            }
            seeds.extend(seen.into_iter().filter(|s| s.0 == u));
        }

        // Middle: everything reachable from a past state.
        let mut reach: BTreeSet<State> = seeds.clone();
        let mut queue: VecDeque<State> = seeds.into_iter().collect();
        while let Some(s) = queue.pop_front() {
            for &e in &adj[s.0] {
                let t = step(s, e, &mut join);
                if reach.insert(t) {
                    queue.push_back(t);
                }
            }
        }

        // Future: v must lie on a cycle using only edges inside H.
        let mut cyclic_in: HashMap<ElemSet, Vec<bool>> = HashMap::new();
        let mut out: BTreeSet<FlaggedImage> = BTreeSet::new();
        for &(v, h, flag) in &reach {
            let on_cycle = cyclic_in.entry(h).or_insert_with(|| {
                let keep: Vec<usize> = (0..g.num_edges()).filter(|&e| contrib[e].is_subset(h)).collect();
                let sub = g.subgraph(&(0..g.num_vertices()).collect::<Vec<_>>(), &keep);
                let mut mark = vec![false; g.num_vertices()];
                for c in sub.components() {
                    for v in c.vertices {
                        mark[v] = true;
                    }
                }
                mark
            });
            if on_cycle[v] {
                out.insert((h, flag));
            }
        }
        out.into_iter().collect()
    }

    /// Graphviz rendering with vertices and edges in stored order.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{}\" {{", escape(name));
        if !self.alphabet.is_empty() {
            let _ = writeln!(s, "  label=\"{}\";", escape(&self.alphabet));
        }
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(s, "  v{i} [label=\"{}\"];", escape(v));
        }
        for e in &self.edges {
            let _ = writeln!(
                s,
                "  v{} -> v{} [label=\"{}\"];",
                e.source,
                e.target,
                escape(&e.label)
            );
        }
        s.push_str("}\n");
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"").replace('\n', "\\n")
}

/// Trace of `M^r` for the multigraph on `n` vertices.
fn trace_power(n: usize, edges: &[(usize, usize)], r: usize) -> BigUint {
    let mut total = BigUint::zero();
    let mut out = vec![Vec::new(); n];
    for &(s, t) in edges {
        out[s].push(t);
    }
    for start in 0..n {
        let mut walks = vec![BigUint::zero(); n];
        walks[start] = BigUint::one();
        for _ in 0..r {
            let mut next = vec![BigUint::zero(); n];
            for (v, w) in walks.iter().enumerate() {
                if w.is_zero() {
                    continue;
                }
                for &t in &out[v] {
                    next[t] += w;
                }
            }
            walks = next;
        }
        total += &walks[start];
    }
    total
}
