//! Brute-force oracles and generators shared by the integration tests.
//! Nothing here calls the library routine it is used to check.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::path::PathBuf;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use repshift_core::fingroup::{Elem, ElemSet, ExtensionData, FiniteGroup};
use repshift_core::laurent::{Integers, LaurentPoly, PolyMatrix, ZMatrix, ZPoly};
use repshift_core::repshift::PeriodicRep;
use repshift_core::shiftgraph::{CardinalityClass, ShiftGraph};
use repshift_core::zgroup::{parse_presentation, Presentation, Word};

pub fn fixture_path(name: &str) -> PathBuf {
    [env!("CARGO_MANIFEST_DIR"), "fixtures", name].iter().collect()
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).expect("fixture")
}

pub fn fixture(name: &str) -> Presentation {
    parse_presentation(&fixture_text(name)).expect("fixture parses")
}

pub const PRESENTATION_FIXTURES: [&str; 5] = ["ex2_1.zg", "ex3_7.zg", "ex4_4a.zg", "ex4_4b.zg", "ex4_4c.zg"];

// ---------------------------------------------------------------------------
// Graph oracles

/// Every simple cycle, as a list of edge ids starting at its least vertex.
pub fn simple_cycles(g: &ShiftGraph) -> Vec<Vec<usize>> {
    let n = g.num_vertices();
    let mut out = Vec::new();
    for start in 0..n {
        let mut path = Vec::new();
        let mut on_path = vec![false; n];
        on_path[start] = true;
        cycles_from(g, start, start, &mut on_path, &mut path, &mut out);
    }
    out
}

fn cycles_from(g: &ShiftGraph, start: usize, v: usize, on_path: &mut [bool], path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    for (i, e) in g.edges().iter().enumerate() {
        if e.source != v || e.target < start {
            continue;
        }
        path.push(i);
        if e.target == start {
            out.push(path.clone());
        } else if !on_path[e.target] {
            on_path[e.target] = true;
            cycles_from(g, start, e.target, on_path, path, out);
            on_path[e.target] = false;
        }
        path.pop();
    }
}

fn reachable(g: &ShiftGraph, from: usize) -> Vec<bool> {
    let mut seen = vec![false; g.num_vertices()];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(v) = stack.pop() {
        for e in g.edges().iter().filter(|e| e.source == v) {
            if !seen[e.target] {
                seen[e.target] = true;
                stack.push(e.target);
            }
        }
    }
    seen
}

/// Cardinality of the path space read off eventually periodic paths
/// `…c c c w d d d…` built from simple cycles `c`, `d`: two cycles through a
/// common vertex give uncountably many paths; a route between two distinct
/// cycles gives infinitely many; otherwise only the rotations of the
/// disjoint cycles remain.
pub fn oracle_classify(g: &ShiftGraph) -> CardinalityClass {
    let cycles = simple_cycles(g);
    let verts: Vec<BTreeSet<usize>> = cycles
        .iter()
        .map(|c| c.iter().map(|&e| g.edges()[e].source).collect())
        .collect();
    for i in 0..cycles.len() {
        for j in i + 1..cycles.len() {
            if !verts[i].is_disjoint(&verts[j]) {
                return CardinalityClass::Uncountable;
            }
        }
    }
    for i in 0..cycles.len() {
        let from = *verts[i].iter().next().unwrap();
        let reach = reachable(g, from);
        for (j, vj) in verts.iter().enumerate() {
            if i != j && vj.iter().any(|&v| reach[v]) {
                return CardinalityClass::CountablyInfinite;
            }
        }
    }
    CardinalityClass::Finite(cycles.iter().map(|c| c.len() as u64).sum())
}

/// Closed walks of length `r`, counted by depth-first enumeration.
pub fn oracle_closed_walks(g: &ShiftGraph, r: usize) -> u64 {
    fn go(g: &ShiftGraph, start: usize, v: usize, left: usize) -> u64 {
        if left == 0 {
            return (v == start) as u64;
        }
        g.edges()
            .iter()
            .filter(|e| e.source == v)
            .map(|e| go(g, start, e.target, left - 1))
            .sum()
    }
    (0..g.num_vertices()).map(|v| go(g, v, v, r)).sum()
}

/// Edge sets of walks: all `(vertex, edges used)` states reachable from the
/// seeds.
fn walk_states(g: &ShiftGraph, seeds: impl IntoIterator<Item = (usize, u64)>, include_seeds: bool) -> HashSet<(usize, u64)> {
    let mut seen: HashSet<(usize, u64)> = HashSet::new();
    let mut queue: VecDeque<(usize, u64)> = VecDeque::new();
    let mut out = HashSet::new();
    for s in seeds {
        if include_seeds {
            out.insert(s);
        }
        queue.push_back(s);
    }
    while let Some((v, bits)) = queue.pop_front() {
        for (i, e) in g.edges().iter().enumerate() {
            if e.source == v {
                let next = (e.target, bits | 1 << i);
                if seen.insert(next) {
                    out.insert(next);
                    queue.push_back(next);
                }
            }
        }
    }
    out
}

fn closure_of(bits: u64, contrib: &[ElemSet], group: &FiniteGroup) -> ElemSet {
    let mut s = ElemSet::singleton(Elem::IDENTITY);
    for (i, &c) in contrib.iter().enumerate() {
        if bits >> i & 1 == 1 {
            s = s.union(c);
        }
    }
    group.closure(s)
}

/// Subgroups generated along eventually periodic paths `c^∞ w d^∞`, found by
/// enumerating the edge sets of closed walks `c`, `d` and connecting walks.
pub fn oracle_images(g: &ShiftGraph, contrib: &[ElemSet], group: &FiniteGroup) -> BTreeSet<ElemSet> {
    assert!(g.num_edges() <= 16, "edge-set oracle is exponential in the edge count");
    let n = g.num_vertices();
    let mut closed: Vec<BTreeSet<u64>> = vec![BTreeSet::new(); n];
    for (u, set) in closed.iter_mut().enumerate() {
        for (v, bits) in walk_states(g, [(u, 0)], false) {
            if v == u {
                set.insert(bits);
            }
        }
    }
    let seeds: Vec<(usize, u64)> = closed
        .iter()
        .enumerate()
        .flat_map(|(u, s)| s.iter().map(move |&b| (u, b)))
        .collect();
    let middle = walk_states(g, seeds, true);
    let tails: Vec<BTreeSet<ElemSet>> = closed
        .iter()
        .map(|s| s.iter().map(|&b| closure_of(b, contrib, group)).collect())
        .collect();
    let heads: BTreeSet<(usize, ElemSet)> = middle
        .into_iter()
        .map(|(v, b)| (v, closure_of(b, contrib, group)))
        .collect();
    let mut out = BTreeSet::new();
    for (v, h) in heads {
        for &t in &tails[v] {
            out.insert(group.closure(h.union(t)));
        }
    }
    out
}

/// A random multigraph with `n` vertices and `m` edges.
pub fn random_graph(rng: &mut impl Rng, n: usize, m: usize) -> ShiftGraph {
    let edges: Vec<(usize, usize)> = (0..m).map(|_| (rng.gen_range(0..n), rng.gen_range(0..n))).collect();
    ShiftGraph::from_edges(n, &edges).unwrap()
}

// ---------------------------------------------------------------------------
// Representation sequences

fn relators(p: &Presentation) -> &[Word] {
    match p {
        Presentation::Periodic(z) => z.relators(),
        Presentation::Hnn(_) => panic!("sequence oracles need a periodic presentation"),
    }
}

fn window(rel: &Word) -> i64 {
    rel.letters().iter().map(|l| l.shift).max().unwrap_or(0)
}

fn holds_at(group: &FiniteGroup, rel: &Word, j: i64, value: &dyn Fn(usize, i64) -> Elem) -> bool {
    rel.letters()
        .iter()
        .fold(Elem::IDENTITY, |acc, l| group.mul(acc, group.pow(value(l.gen, l.shift + j), l.exp)))
        == Elem::IDENTITY
}

/// Sequences `x[j][f]` of period `q` satisfying every relator instance, with
/// `x[j][f]` drawn from `allowed(f, j)`.
pub fn periodic_sequences(
    p: &Presentation,
    group: &FiniteGroup,
    q: usize,
    allowed: &dyn Fn(usize, usize) -> ElemSet,
) -> Vec<Vec<Vec<Elem>>> {
    let fams = p.family_names().len();
    let rels = relators(p);
    let mut out = Vec::new();
    let mut seq: Vec<Vec<Elem>> = vec![vec![Elem::IDENTITY; fams]; q];
    fill(group, rels, q, fams, allowed, 0, &mut seq, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn fill(
    group: &FiniteGroup,
    rels: &[Word],
    q: usize,
    fams: usize,
    allowed: &dyn Fn(usize, usize) -> ElemSet,
    pos: usize,
    seq: &mut Vec<Vec<Elem>>,
    out: &mut Vec<Vec<Vec<Elem>>>,
) {
    if pos == q * fams {
        let value = |f: usize, j: i64| seq[j.rem_euclid(q as i64) as usize][f];
        if (0..q as i64).all(|j| rels.iter().all(|r| holds_at(group, r, j, &value))) {
            out.push(seq.clone());
        }
        return;
    }
    let (j, f) = (pos / fams, pos % fams);
    for x in allowed(f, j).iter() {
        seq[j][f] = x;
        if f + 1 == fams {
            // Instances lying entirely in 0..=j are decided already.
            let value = |g: usize, i: i64| seq[i as usize][g];
            let ok = rels.iter().all(|r| {
                let s = j as i64 - window(r);
                s < 0 || holds_at(group, r, s, &value)
            });
            if !ok {
                continue;
            }
        }
        fill(group, rels, q, fams, allowed, pos + 1, seq, out);
    }
}

/// Periodic representations of period `q` into `group`, by brute force.
pub fn oracle_periodic_reps(p: &Presentation, group: &FiniteGroup, q: usize) -> u64 {
    periodic_sequences(p, group, q, &|_, _| group.all()).len() as u64
}

/// Lifts of `rho` through `ext` that are periodic of period `q`, grouped by
/// the rotation of `rho` they lie over.
pub fn periodic_lifts(p: &Presentation, ext: &ExtensionData, rho: &PeriodicRep, q: usize) -> Vec<Vec<Vec<Vec<Elem>>>> {
    let r = rho.period();
    (0..r)
        .map(|t| {
            if !q.is_multiple_of(r) {
                return Vec::new();
            }
            periodic_sequences(p, ext.total(), q, &|f, j| ext.fiber(rho.value(f, (j + t) as i64)))
        })
        .collect()
}

/// Brute-force search for an eventually periodic lift `x^∞ m y^∞` of the
/// orbit of `rho` with image all of E, tails of period at most `max_q` and
/// a middle of length at most `max_mid`.
pub fn oracle_surjective_lift(p: &Presentation, ext: &ExtensionData, rho: &PeriodicRep, max_q: usize, max_mid: usize) -> bool {
    let e = ext.total();
    let all = e.all();
    let r = rho.period();
    let fams = p.family_names().len();
    let rels = relators(p);
    let w = rels.iter().map(window).max().unwrap_or(0);
    // tails[t]: periodic lifts over rotation t, any admissible period.
    let mut tails: Vec<Vec<Vec<Vec<Elem>>>> = vec![Vec::new(); r];
    for q in (r..=max_q).step_by(r) {
        for (t, seqs) in periodic_lifts(p, ext, rho, q).into_iter().enumerate() {
            tails[t].extend(seqs);
        }
    }
    let image = |xs: &[&Vec<Vec<Elem>>]| -> ElemSet {
        let set: ElemSet = xs.iter().flat_map(|x| x.iter().flatten().copied()).collect();
        e.closure(set)
    };
    for t in 0..r {
        for mid_len in 0..=max_mid {
            let t2 = (t + mid_len) % r;
            for x in &tails[t] {
                for y in &tails[t2] {
                    let mut mid: Vec<Vec<Elem>> = vec![vec![Elem::IDENTITY; fams]; mid_len];
                    let choices: Vec<Vec<Elem>> = (0..mid_len * fams)
                        .map(|k| ext.fiber(rho.value(k % fams, (k / fams + t) as i64)).iter().collect())
                        .collect();
                    let total = choices.iter().map(|c| c.len()).product::<usize>();
                    for mut code in 0..total {
                        for (k, c) in choices.iter().enumerate() {
                            mid[k / fams][k % fams] = c[code % c.len()];
                            code /= c.len();
                        }
                        let value = |f: usize, j: i64| -> Elem {
                            if j < 0 {
                                x[j.rem_euclid(x.len() as i64) as usize][f]
                            } else if (j as usize) < mid_len {
                                mid[j as usize][f]
                            } else {
                                y[(j - mid_len as i64).rem_euclid(y.len() as i64) as usize][f]
                            }
                        };
                        let ok = (-w - 1..=mid_len as i64 + w)
                            .all(|j| rels.iter().all(|rel| holds_at(e, rel, j, &value)));
                        if ok && image(&[x, &mid, y]) == all {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

// ---------------------------------------------------------------------------
// Random presentations

/// A random periodic presentation with `fams` families and window at most
/// `k`: every family gets a recursion `f[k] = w` in lower-index symbols, and
/// sometimes an extra relator.
pub fn random_presentation_text(rng: &mut impl Rng, fams: usize, k: usize) -> String {
    let names = ["a", "b"];
    let letter = |rng: &mut dyn rand::RngCore, max_index: usize| -> String {
        let f = names[rng.gen_range(0..fams)];
        let i = rng.gen_range(0..=max_index);
        match [1i64, 1, -1, 2, -2, 3][rng.gen_range(0..6)] {
            1 => format!("{f}[{i}]"),
            e => format!("{f}[{i}]^{e}"),
        }
    };
    let mut s = format!("zgroup\ngens {}\n", names[..fams].join(" "));
    for f in &names[..fams] {
        let len = rng.gen_range(1..=3);
        let rhs: Vec<String> = (0..len).map(|_| letter(rng, k - 1)).collect();
        s.push_str(&format!("rel {f}[{k}] = {}\n", rhs.join(" ")));
    }
    if rng.gen_bool(0.5) {
        let len = rng.gen_range(2..=4);
        let w: Vec<String> = (0..len).map(|_| letter(rng, k)).collect();
        s.push_str(&format!("rel {}\n", w.join(" ")));
    }
    s
}

// ---------------------------------------------------------------------------
// Exact determinants

/// Determinant of an integer matrix by Gaussian elimination over ℚ.
pub fn rational_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|row| row.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return BigInt::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c].clone();
        for r in c + 1..n {
            let f = a[r][c].clone() / a[c][c].clone();
            for k in c..n {
                let v = f.clone() * a[c][k].clone();
                a[r][k] -= v;
            }
        }
    }
    assert!(det.is_integer());
    det.to_integer()
}

/// Leibniz expansion over Laurent polynomials.
pub fn leibniz_det(m: &ZMatrix) -> ZPoly {
    let n = m.rows();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = LaurentPoly::zero(Integers);
    permute(m, &mut perm, 0, &mut total);
    total
}

fn permute(m: &ZMatrix, perm: &mut Vec<usize>, k: usize, total: &mut ZPoly) {
    let n = perm.len();
    if k == n {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
        let mut term = LaurentPoly::one(Integers);
        for (i, &j) in perm.iter().enumerate() {
            term = term.mul(m.get(i, j));
        }
        *total = if inversions % 2 == 0 { total.add(&term) } else { total.sub(&term) };
        return;
    }
    for i in k..n {
        perm.swap(k, i);
        permute(m, perm, k + 1, total);
        perm.swap(k, i);
    }
}

/// A random Laurent polynomial with exponents in `-1..=1` and small
/// coefficients.
pub fn random_entry(rng: &mut impl Rng) -> ZPoly {
    let low = rng.gen_range(-1..=0);
    let c: Vec<i64> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(-2..=2)).collect();
    LaurentPoly::from_ints(Integers, low, &c)
}

pub fn random_matrix(rng: &mut impl Rng, n: usize) -> ZMatrix {
    PolyMatrix::from_fn(Integers, n, n, |_, _| random_entry(rng))
}

/// `[[A, B], [B, A]]`.
pub fn block2(a: &ZMatrix, b: &ZMatrix) -> ZMatrix {
    let n = a.rows();
    PolyMatrix::from_fn(Integers, 2 * n, 2 * n, |i, j| {
        let blk = if i / n == j / n { a } else { b };
        blk.get(i % n, j % n).clone()
    })
}

/// The block circulant whose block row `i` is the first row shifted right
/// by `i`: `[[A, B, C], [C, A, B], [B, C, A]]`.
pub fn block3(a: &ZMatrix, b: &ZMatrix, c: &ZMatrix) -> ZMatrix {
    let n = a.rows();
    let blocks = [a, b, c];
    PolyMatrix::from_fn(Integers, 3 * n, 3 * n, |i, j| {
        blocks[(j / n + 3 - i / n) % 3].get(i % n, j % n).clone()
    })
}
