//! The representation shift Φ_Σ = Hom(K, Σ) as a shift graph, and the
//! transitive-representation analyses layered on it.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fingroup::{Elem, ElemSet, FiniteGroup};
use crate::shiftgraph::{CardinalityClass, Edge, ShiftGraph};
use crate::zgroup::{raw_window_base, BasePresentation, Presentation, Word};

/// Default bound on search nodes visited while enumerating homomorphisms.
pub const DEFAULT_BUDGET: u64 = 2_000_000_000;

/// Largest target group accepted by the graph builders.
pub const MAX_TARGET_ORDER: usize = 120;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BuildOptions {
    pub budget: u64,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            budget: DEFAULT_BUDGET,
        }
    }
}

fn thread_pool() -> Option<&'static rayon::ThreadPool> {
    static POOL: OnceLock<Option<rayon::ThreadPool>> = OnceLock::new();
    POOL.get_or_init(|| {
        let n: usize = std::env::var("REPSHIFT_THREADS").ok()?.trim().parse().ok()?;
        rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build().ok()
    })
    .as_ref()
}

/// Runs `f` on the pool capped by `REPSHIFT_THREADS`, or the global pool.
pub fn with_workers<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    match thread_pool() {
        Some(pool) => pool.install(f),
        None => f(),
    }
}

#[derive(Clone, Debug)]
struct Forced {
    rel: usize,
    pos: usize,
    exp: i64,
}

/// Backtracking enumerator for the homomorphisms of a finite presentation
/// into a finite group, with optional per-generator value restrictions.
///
/// Generators are assigned in order. A relator is checked as soon as its
/// last generator is known; a generator occurring once with exponent ±1 in
/// a relator whose other generators come earlier is solved for instead of
/// searched.
pub struct HomSearch<'a> {
    group: &'a FiniteGroup,
    relators: Vec<Vec<(usize, i64)>>,
    checks: Vec<Vec<usize>>,
    forced: Vec<Option<Forced>>,
    domains: Vec<ElemSet>,
}

impl<'a> HomSearch<'a> {
    pub fn new(group: &'a FiniteGroup, num_gens: usize, relators: &[Word]) -> Self {
        let relators: Vec<Vec<(usize, i64)>> = relators
            .iter()
            .map(|w| w.letters().iter().map(|l| (l.gen, l.exp)).collect())
            .collect();
        let mut checks = vec![Vec::new(); num_gens];
        let mut forced: Vec<Option<Forced>> = vec![None; num_gens];
        let mut domains = vec![group.all(); num_gens];
        for (ri, rel) in relators.iter().enumerate() {
            let Some(last) = rel.iter().map(|&(g, _)| g).max() else { continue };
            checks[last].push(ri);
            let occurrences: Vec<usize> = (0..rel.len()).filter(|&i| rel[i].0 == last).collect();
            if forced[last].is_none() && occurrences.len() == 1 && rel[occurrences[0]].1.abs() == 1 {
                forced[last] = Some(Forced {
                    rel: ri,
                    pos: occurrences[0],
                    exp: rel[occurrences[0]].1,
                });
            }
            if rel.iter().all(|&(g, _)| g == last) {
                let e: i64 = rel.iter().map(|&(_, e)| e).sum();
                domains[last] = group
                    .elems()
                    .filter(|&x| domains[last].contains(x) && group.pow(x, e) == Elem::IDENTITY)
                    .collect();
            }
        }
        HomSearch {
            group,
            relators,
            checks,
            forced,
            domains,
        }
    }

    /// Further restricts generator `gen` to values in `allowed`.
    pub fn restrict(&mut self, gen: usize, allowed: ElemSet) {
        self.domains[gen] = ElemSet(self.domains[gen].0 & allowed.0);
    }

    fn eval(&self, letters: &[(usize, i64)], values: &[Elem]) -> Elem {
        letters.iter().fold(Elem::IDENTITY, |acc, &(g, e)| {
            self.group.mul(acc, self.group.pow(values[g], e))
        })
    }

    /// All homomorphisms, as value vectors in lexicographic order.
    pub fn run(&self, budget: u64) -> Result<Vec<Vec<Elem>>> {
        let n = self.domains.len();
        if n == 0 {
            let ok = self.relators.iter().all(|r| r.is_empty());
            return Ok(if ok { vec![Vec::new()] } else { Vec::new() });
        }
        let used = AtomicU64::new(0);
        let exceeded = AtomicBool::new(false);
        let firsts: Vec<Elem> = match self.forced[0] {
            Some(_) => vec![Elem::IDENTITY],
            None => self.domains[0].iter().collect(),
        };
        let parts: Vec<Vec<Vec<Elem>>> = with_workers(|| {
            firsts
                .par_iter()
                .map(|&x| {
                    let mut values = vec![Elem::IDENTITY; n];
                    let mut out = Vec::new();
                    let mut local = 0u64;
                    let mut ctx = Ctx {
                        used: &used,
                        exceeded: &exceeded,
                        budget,
                        local: &mut local,
                    };
                    if self.forced[0].is_some() {
                        self.descend(0, &mut values, &mut out, &mut ctx);
                    } else {
                        values[0] = x;
                        if ctx.tick() && self.checks_pass(0, &values) {
                            self.descend(1, &mut values, &mut out, &mut ctx);
                        }
                    }
                    used.fetch_add(local, Ordering::Relaxed);
                    out
                })
                .collect()
        });
        if exceeded.load(Ordering::Relaxed) || used.load(Ordering::Relaxed) > budget {
            return Err(Error::Resource(format!(
                "homomorphism search exceeded the budget of {budget} nodes"
            )));
        }
        Ok(parts.into_iter().flatten().collect())
    }

    fn checks_pass(&self, g: usize, values: &[Elem]) -> bool {
        self.checks[g]
            .iter()
            .all(|&r| self.eval(&self.relators[r], values) == Elem::IDENTITY)
    }

    fn descend(&self, g: usize, values: &mut Vec<Elem>, out: &mut Vec<Vec<Elem>>, ctx: &mut Ctx) {
        if g == values.len() {
            out.push(values.clone());
            return;
        }
        if let Some(f) = &self.forced[g] {
            if !ctx.tick() {
                return;
            }
            let rel = &self.relators[f.rel];
            let before = self.eval(&rel[..f.pos], values);
            let after = self.eval(&rel[f.pos + 1..], values);
            let rhs = self.group.mul(self.group.inv(before), self.group.inv(after));
            let x = self.group.pow(rhs, f.exp);
            if self.domains[g].contains(x) {
                values[g] = x;
                if self.checks_pass(g, values) {
                    self.descend(g + 1, values, out, ctx);
                }
            }
            return;
        }
        for x in self.domains[g].iter() {
            if !ctx.tick() {
                return;
            }
            values[g] = x;
            if self.checks_pass(g, values) {
                self.descend(g + 1, values, out, ctx);
            }
        }
    }
}

struct Ctx<'c> {
    used: &'c AtomicU64,
    exceeded: &'c AtomicBool,
    budget: u64,
    local: &'c mut u64,
}

impl Ctx<'_> {
    fn tick(&mut self) -> bool {
        *self.local += 1;
        if *self.local >= 4096 {
            let total = self.used.fetch_add(*self.local, Ordering::Relaxed) + *self.local;
            *self.local = 0;
            if total > self.budget {
                self.exceeded.store(true, Ordering::Relaxed);
            }
        }
        !self.exceeded.load(Ordering::Relaxed)
    }
}

/// A representation-shift graph together with the assignments behind its
/// labels. Every edge is a homomorphism of the window base; every vertex is
/// the value vector of the base's U-words.
#[derive(Clone, Debug)]
pub struct RepGraph {
    pub base: BasePresentation,
    pub group: Arc<FiniteGroup>,
    pub graph: ShiftGraph,
    pub edge_values: Vec<Vec<Elem>>,
    pub vertex_values: Vec<Vec<Elem>>,
}

fn eval_word(group: &FiniteGroup, w: &Word, values: &[Elem]) -> Elem {
    w.letters().iter().fold(Elem::IDENTITY, |acc, l| {
        group.mul(acc, group.pow(values[l.gen], l.exp))
    })
}

impl RepGraph {
    /// Assembles the pruned graph from a list of base homomorphisms.
    pub fn from_homs(base: BasePresentation, group: Arc<FiniteGroup>, homs: Vec<Vec<Elem>>) -> Result<RepGraph> {
        let ends: Vec<(Vec<Elem>, Vec<Elem>)> = homs
            .iter()
            .map(|h| {
                (
                    base.u_words().iter().map(|w| eval_word(&group, w, h)).collect(),
                    base.v_words().iter().map(|w| eval_word(&group, w, h)).collect(),
                )
            })
            .collect();
        let vertex_set: BTreeSet<&Vec<Elem>> = ends.iter().flat_map(|(u, v)| [u, v]).collect();
        let vertex_values: Vec<Vec<Elem>> = vertex_set.into_iter().cloned().collect();
        let index = |x: &Vec<Elem>| vertex_values.binary_search(x).expect("vertex present");
        let mut order: Vec<usize> = (0..homs.len()).collect();
        order.sort_by(|&a, &b| (index(&ends[a].0), &homs[a]).cmp(&(index(&ends[b].0), &homs[b])));
        let edges: Vec<Edge> = order
            .iter()
            .map(|&i| Edge {
                source: index(&ends[i].0),
                target: index(&ends[i].1),
                label: edge_label(&base, &group, &homs[i]),
            })
            .collect();
        let vertices = vertex_values.iter().map(|v| vertex_label(&base, &group, v)).collect();
        let graph = ShiftGraph::new(format!("window assignments into {}", group.name()), vertices, edges)?;
        let edge_values: Vec<Vec<Elem>> = order.into_iter().map(|i| homs[i].clone()).collect();
        let pruned = graph.prune_with_map();
        let rg = RepGraph {
            edge_values: pruned.edge_map.iter().map(|&e| edge_values[e].clone()).collect(),
            vertex_values: pruned.vertex_map.iter().map(|&v| vertex_values[v].clone()).collect(),
            graph: pruned.graph,
            base,
            group,
        };
        rg.check_edges()?;
        Ok(rg)
    }

    /// Verifies that every edge runs from its U-restriction to its
    /// φ-composed V-restriction.
    pub fn check_edges(&self) -> Result<()> {
        for (e, values) in self.graph.edges().iter().zip(&self.edge_values) {
            let u: Vec<Elem> = self.base.u_words().iter().map(|w| eval_word(&self.group, w, values)).collect();
            let v: Vec<Elem> = self.base.v_words().iter().map(|w| eval_word(&self.group, w, values)).collect();
            if u != self.vertex_values[e.source] || v != self.vertex_values[e.target] {
                return Err(Error::Invariant(format!("edge {} has inconsistent endpoints", e.label)));
            }
        }
        Ok(())
    }

    /// The subgroup-generating contribution of every edge: the values of
    /// the index-0 generators.
    pub fn contributions(&self) -> Vec<ElemSet> {
        self.edge_values
            .iter()
            .map(|v| self.base.contributions().iter().map(|&g| v[g]).collect())
            .collect()
    }

    /// The index-0 value of every family along an edge.
    pub fn edge_symbol(&self, e: usize) -> Vec<Elem> {
        self.base
            .contributions()
            .iter()
            .map(|&g| self.edge_values[e][g])
            .collect()
    }

    pub fn classify(&self) -> CardinalityClass {
        self.graph.classify()
    }

    pub fn realizable_images(&self) -> Vec<ElemSet> {
        self.graph.realizable_images(&self.contributions(), &self.group)
    }

    /// Every point of least period at most `max_period`, one per shift orbit,
    /// as the closed walk with lexicographically least edge sequence.
    pub fn periodic_orbits(&self, max_period: usize, limit: usize) -> Result<Vec<Vec<usize>>> {
        let g = &self.graph;
        let mut out = Vec::new();
        let mut adj = vec![Vec::new(); g.num_vertices()];
        for (i, e) in g.edges().iter().enumerate() {
            adj[e.source].push(i);
        }
        for p in 1..=max_period {
            for start in 0..g.num_vertices() {
                let mut path = Vec::with_capacity(p);
                walk(g, &adj, start, start, p, &mut path, &mut |cycle| {
                    if is_canonical_rotation(cycle) {
                        out.push(cycle.to_vec());
                    }
                    out.len() <= limit
                });
                if out.len() > limit {
                    return Err(Error::Resource(format!("more than {limit} periodic orbits")));
                }
            }
        }
        out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        Ok(out)
    }
}

fn walk(
    g: &ShiftGraph,
    adj: &[Vec<usize>],
    start: usize,
    at: usize,
    len: usize,
    path: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if path.len() == len {
        return if at == start { visit(path) } else { true };
    }
    for &e in &adj[at] {
        // canonical walks start with their smallest edge
        if !path.is_empty() && e < path[0] {
            continue;
        }
        path.push(e);
        let go_on = walk(g, adj, start, g.edges()[e].target, len, path, visit);
        path.pop();
        if !go_on {
            return false;
        }
    }
    true
}

/// Least rotation and primitive: the walk is the orbit representative of a
/// point whose least period is its length.
fn is_canonical_rotation(cycle: &[usize]) -> bool {
    let n = cycle.len();
    (1..n).all(|k| {
        let rotated = cycle[k..].iter().chain(&cycle[..k]);
        cycle.iter().cmp(rotated) == std::cmp::Ordering::Less
    })
}

fn vertex_label(base: &BasePresentation, group: &FiniteGroup, values: &[Elem]) -> String {
    base.u_words()
        .iter()
        .zip(values)
        .map(|(w, &x)| format!("{}={}", w.display_with(base.gen_names(), false), group.display(x)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn edge_label(base: &BasePresentation, group: &FiniteGroup, values: &[Elem]) -> String {
    base.gen_names()
        .iter()
        .zip(values)
        .map(|(name, &x)| format!("{name}={}", group.display(x)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn check_target(group: &FiniteGroup) -> Result<()> {
    if group.order() > MAX_TARGET_ORDER {
        return Err(Error::Config(format!(
            "target {} has order {} > {MAX_TARGET_ORDER}",
            group.name(),
            group.order()
        )));
    }
    Ok(())
}

/// Φ_Σ presented on the 1-window base.
pub fn build_shift_graph(p: &Presentation, group: &FiniteGroup, opts: &BuildOptions) -> Result<RepGraph> {
    build_block_graph(p, group, 1, opts)
}

/// Φ_Σ presented on the n-window base: edges are homomorphisms of `B⁽ⁿ⁾`.
pub fn build_block_graph(p: &Presentation, group: &FiniteGroup, n: usize, opts: &BuildOptions) -> Result<RepGraph> {
    check_target(group)?;
    let base = raw_window_base(p, n)?;
    let homs = HomSearch::new(group, base.num_gens(), base.relators()).run(opts.budget)?;
    RepGraph::from_homs(base, Arc::new(group.clone()), homs)
}

fn factorial(r: usize) -> u64 {
    (1..=r as u64).product()
}

/// Transitive points of a representation graph into a symmetric group.
pub fn classify_transitive_graph(rg: &RepGraph) -> CardinalityClass {
    let g = &rg.graph;
    let group = &rg.group;
    let contrib = rg.contributions();
    let comps = g.components();
    let comp_of = g.scc_ids();
    let mut uncountable_vertex = vec![false; g.num_vertices()];
    for c in comps.iter().filter(|c| c.is_uncountable()) {
        for &v in &c.vertices {
            uncountable_vertex[v] = true;
        }
    }
    let no_v = vec![false; g.num_vertices()];
    let no_e = vec![false; g.num_edges()];
    let hit = |marks_v: &[bool], marks_e: &[bool]| {
        g.realizable_images_flagged(&contrib, group, marks_v, marks_e)
            .into_iter()
            .any(|(h, flag)| flag && group.is_transitive_set(h))
    };
    if hit(&uncountable_vertex, &no_e) {
        return CardinalityClass::Uncountable;
    }
    let crossing: Vec<bool> = g
        .edges()
        .iter()
        .map(|e| comp_of[e.source] != comp_of[e.target])
        .collect();
    if hit(&no_v, &crossing) {
        return CardinalityClass::CountablyInfinite;
    }
    let count: usize = comps
        .iter()
        .filter(|c| !c.is_uncountable())
        .filter(|c| {
            let all = c.edges.iter().fold(ElemSet::EMPTY, |acc, &e| acc.union(contrib[e]));
            group.is_transitive_set(group.closure(all))
        })
        .map(|c| c.vertices.len())
        .sum();
    CardinalityClass::Finite(count as u64)
}

fn symmetric_target(r: usize) -> Result<FiniteGroup> {
    if !(2..=5).contains(&r) {
        return Err(Error::Domain(format!("index {r} outside 2..5")));
    }
    FiniteGroup::from_name(&format!("S{r}"))
}

/// Cardinality of the transitive points of Φ_{S_r}.
pub fn classify_transitive(p: &Presentation, r: usize, opts: &BuildOptions) -> Result<CardinalityClass> {
    let g = symmetric_target(r)?;
    Ok(classify_transitive_graph(&build_shift_graph(p, &g, opts)?))
}

/// Number of index-r subgroups of K: transitive points over `(r−1)!`.
pub fn count_index_subgroups(p: &Presentation, r: usize, opts: &BuildOptions) -> Result<CardinalityClass> {
    subgroups_from_transitive(classify_transitive(p, r, opts)?, r)
}

pub fn subgroups_from_transitive(c: CardinalityClass, r: usize) -> Result<CardinalityClass> {
    match c {
        CardinalityClass::Finite(n) => {
            let f = factorial(r - 1);
            if n % f != 0 {
                return Err(Error::Invariant(format!(
                    "{n} transitive representations not divisible by ({r}-1)! = {f}"
                )));
            }
            Ok(CardinalityClass::Finite(n / f))
        }
        other => Ok(other),
    }
}

/// A periodic representation: `values[t][f]` is the image of `a_{f,t}` (or
/// of base generator `f` in copy `t`) for `0 ≤ t < r`, repeated with
/// period `r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeriodicRep {
    values: Vec<Vec<Elem>>,
}

impl PeriodicRep {
    /// Validates the sequence against every relator instance of `p`.
    pub fn new(p: &Presentation, group: &FiniteGroup, values: Vec<Vec<Elem>>) -> Result<PeriodicRep> {
        let fams = p.family_names().len();
        if values.is_empty() || values.iter().any(|v| v.len() != fams) {
            return Err(Error::Domain(format!(
                "a periodic representation needs r ≥ 1 steps of {fams} values"
            )));
        }
        let rep = PeriodicRep { values };
        if let Some(why) = rep.violation(p, group) {
            return Err(Error::Domain(format!("not a representation: {why}")));
        }
        Ok(rep)
    }

    /// Reads a closed walk of a 1-window representation graph.
    pub fn from_cycle(rg: &RepGraph, edges: &[usize]) -> Result<PeriodicRep> {
        if edges.is_empty() {
            return Err(Error::Domain("empty cycle".into()));
        }
        if rg.base.block() != 1 {
            return Err(Error::Domain("cycles are read from 1-window graphs".into()));
        }
        let g = &rg.graph;
        for (i, &e) in edges.iter().enumerate() {
            let next = edges[(i + 1) % edges.len()];
            if e >= g.num_edges() || next >= g.num_edges() {
                return Err(Error::Domain(format!("no edge {}", e.max(next))));
            }
            if g.edges()[e].target != g.edges()[next].source {
                return Err(Error::Domain(format!("edges {e} and {next} do not connect")));
            }
        }
        Ok(PeriodicRep {
            values: edges.iter().map(|&e| rg.edge_symbol(e)).collect(),
        })
    }

    /// Constant representation `a_{f,j} ↦ values[f]`.
    pub fn constant(p: &Presentation, group: &FiniteGroup, values: Vec<Elem>) -> Result<PeriodicRep> {
        PeriodicRep::new(p, group, vec![values])
    }

    pub fn period(&self) -> usize {
        self.values.len()
    }

    pub fn least_period(&self) -> usize {
        let r = self.values.len();
        (1..=r)
            .find(|&d| r.is_multiple_of(d) && (0..r).all(|t| self.values[t] == self.values[(t + d) % r]))
            .unwrap_or(r)
    }

    /// The same point with its period reduced to the least period.
    pub fn reduced(&self) -> PeriodicRep {
        PeriodicRep {
            values: self.values[..self.least_period()].to_vec(),
        }
    }

    pub fn values(&self) -> &[Vec<Elem>] {
        &self.values
    }

    /// Value at step `j` (any integer) of family `f`.
    pub fn value(&self, f: usize, j: i64) -> Elem {
        self.values[j.rem_euclid(self.values.len() as i64) as usize][f]
    }

    /// The shifted point `σρ`: step `j` takes the value of step `j + 1`.
    pub fn shifted(&self) -> PeriodicRep {
        let mut values = self.values.clone();
        values.rotate_left(1);
        PeriodicRep { values }
    }

    /// Subgroup generated by all values.
    pub fn image(&self, group: &FiniteGroup) -> ElemSet {
        group.closure(self.values.iter().flatten().copied().collect())
    }

    pub fn display(&self, p: &Presentation, group: &FiniteGroup) -> String {
        let names = p.family_names();
        self.values
            .iter()
            .enumerate()
            .map(|(t, v)| {
                let parts: Vec<String> = names
                    .iter()
                    .zip(v)
                    .map(|(n, &x)| format!("{n}[{t}]={}", group.display(x)))
                    .collect();
                parts.join(", ")
            })
            .collect::<Vec<_>>()
            .join("; ")
    }

    fn violation(&self, p: &Presentation, group: &FiniteGroup) -> Option<String> {
        let r = self.values.len() as i64;
        match p {
            Presentation::Periodic(z) => {
                for (ri, rel) in z.relators().iter().enumerate() {
                    for s in 0..r {
                        let x = rel.letters().iter().fold(Elem::IDENTITY, |acc, l| {
                            group.mul(acc, group.pow(self.value(l.gen, l.shift + s), l.exp))
                        });
                        if x != Elem::IDENTITY {
                            return Some(format!("relator {} fails at shift {s}", ri + 1));
                        }
                    }
                }
            }
            Presentation::Hnn(h) => {
                for j in 0..r as usize {
                    let here = &self.values[j];
                    let next = &self.values[(j + 1) % r as usize];
                    for (ri, rel) in h.relators().iter().enumerate() {
                        if eval_word(group, rel, here) != Elem::IDENTITY {
                            return Some(format!("base relator {} fails in copy {j}", ri + 1));
                        }
                    }
                    for (&u, img) in h.u_gens().iter().zip(h.phi()) {
                        if eval_word(group, img, here) != next[u] {
                            return Some(format!("amalgamation of {} fails in copy {j}", h.gens()[u]));
                        }
                    }
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zgroup::parse_presentation;

    fn ex2_1() -> Presentation {
        parse_presentation("zgroup; gens a; rel a[1] a[0]^-2").unwrap()
    }

    #[test]
    fn squaring_relator_over_z3() {
        let z3 = FiniteGroup::from_name("Z3").unwrap();
        let rg = build_shift_graph(&ex2_1(), &z3, &BuildOptions::default()).unwrap();
        let g = &rg.graph;
        assert_eq!(g.vertices(), &["a[0]=0", "a[0]=1", "a[0]=2"]);
        let conn: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.source, e.target)).collect();
        assert_eq!(conn, vec![(0, 0), (1, 2), (2, 1)]);
        assert_eq!(g.edges()[1].label, "a[0]=1, a[1]=2");
        assert_eq!(rg.classify(), CardinalityClass::Finite(3));
        assert_eq!(rg.realizable_images(), vec![ElemSet::singleton(Elem::IDENTITY), z3.all()]);
    }

    #[test]
    fn squaring_relator_over_z2_prunes_to_trivial() {
        let z2 = FiniteGroup::from_name("Z2").unwrap();
        let rg = build_shift_graph(&ex2_1(), &z2, &BuildOptions::default()).unwrap();
        assert_eq!(rg.graph.num_vertices(), 1);
        assert_eq!(rg.graph.num_edges(), 1);
        assert_eq!(rg.classify(), CardinalityClass::Finite(1));
    }

    #[test]
    fn transitive_counts_for_squaring_relator() {
        let p = ex2_1();
        let o = BuildOptions::default();
        assert_eq!(classify_transitive(&p, 3, &o).unwrap(), CardinalityClass::Finite(2));
        assert_eq!(count_index_subgroups(&p, 3, &o).unwrap(), CardinalityClass::Finite(1));
        assert_eq!(classify_transitive(&p, 2, &o).unwrap(), CardinalityClass::Finite(0));
        assert!(classify_transitive(&p, 6, &o).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let free = parse_presentation("zgroup; gens a b; rel [a[0], b[2]]").unwrap();
        let s4 = FiniteGroup::from_name("S4").unwrap();
        let err = build_shift_graph(&free, &s4, &BuildOptions { budget: 1000 }).unwrap_err();
        assert!(matches!(err, Error::Resource(_)), "{err}");
    }

    #[test]
    fn hom_search_agrees_with_brute_force() {
        let s3 = FiniteGroup::from_name("S3").unwrap();
        let p = parse_presentation("hnn; gens a b; base-rel a^2; base-rel a b a^-1 b; U a; phi a -> b").unwrap();
        let base = raw_window_base(&p, 1).unwrap();
        let found = HomSearch::new(&s3, 2, base.relators()).run(DEFAULT_BUDGET).unwrap();
        let mut brute = Vec::new();
        for a in s3.elems() {
            for b in s3.elems() {
                let v = [a, b];
                if base.relators().iter().all(|r| eval_word(&s3, r, &v) == Elem::IDENTITY) {
                    brute.push(v.to_vec());
                }
            }
        }
        assert_eq!(found, brute);
    }

    #[test]
    fn periodic_reps() {
        let z3 = FiniteGroup::from_name("Z3").unwrap();
        let p = ex2_1();
        let rg = build_shift_graph(&p, &z3, &BuildOptions::default()).unwrap();
        let orbits = rg.periodic_orbits(4, 100).unwrap();
        assert_eq!(orbits, vec![vec![0], vec![1, 2]]);
        let rho = PeriodicRep::from_cycle(&rg, &orbits[1]).unwrap();
        assert_eq!(rho.values(), &[vec![Elem(1)], vec![Elem(2)]]);
        assert_eq!(rho.least_period(), 2);
        assert!(PeriodicRep::new(&p, &z3, vec![vec![Elem(1)]]).is_err());
        assert!(PeriodicRep::new(&p, &z3, vec![vec![Elem(2)], vec![Elem(1)]]).is_ok());
        assert!(PeriodicRep::from_cycle(&rg, &[1]).is_err());
    }
}
