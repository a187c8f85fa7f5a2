//! Exact arithmetic for the small finite groups that serve as targets of
//! representation shifts: symmetric and alternating groups of degree at most
//! five, cyclic groups, the Klein four-group, and subgroups generated inside
//! any of these.
//!
//! Elements are stored in canonical order (permutations by their image
//! sequence, residues by value) and addressed by a dense [`Elem`] index, so
//! the identity is always `Elem(0)`. Multiplication goes through a
//! precomputed table. Permutations compose right to left:
//! `(p * q)(i) = p(q(i))`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, ParseError, Result};

/// Largest group order supported; subsets of a group fit in a `u128`.
pub const MAX_ORDER: usize = 128;
pub const MAX_SYMMETRIC_DEGREE: usize = 5;
pub const MAX_CYCLIC_ORDER: usize = 64;

/// A permutation of `{1..n}`, stored as zero-based images.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u8>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u8).collect())
    }

    /// Builds a permutation from one-based images, `images[i-1] = p(i)`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &img in images {
            if img == 0 || img > n || seen[img - 1] {
                return Err(Error::Domain(format!(
                    "{images:?} is not a permutation of 1..{n}"
                )));
            }
            seen[img - 1] = true;
            out.push((img - 1) as u8);
        }
        Ok(Perm(out))
    }

    /// Builds a permutation of degree `n` from one-based disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                if x == 0 || x > n || touched[x - 1] {
                    return Err(Error::Domain(format!("bad cycle {cycle:?} in degree {n}")));
                }
                touched[x - 1] = true;
                images[x - 1] = cycle[(k + 1) % cycle.len()];
            }
        }
        Perm::from_images(&images)
    }

    /// Parses cycle notation such as `(12)(34)`, `(1 2 3)` or `e`.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let text = text.trim();
        if text == "e" || text == "()" {
            return Ok(Perm::identity(n));
        }
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut current: Option<Vec<usize>> = None;
        let mut number = String::new();
        let spaced = text.contains(' ') || text.contains(',');
        for (col, ch) in text.chars().enumerate() {
            match ch {
                '(' if current.is_none() => current = Some(Vec::new()),
                ')' => {
                    let mut cyc = current
                        .take()
                        .ok_or_else(|| ParseError::new(1, col + 1, "unmatched ')'"))?;
                    if !number.is_empty() {
                        cyc.push(number.parse().map_err(|_| ParseError::new(1, col + 1, "bad point"))?);
                        number.clear();
                    }
                    cycles.push(cyc);
                }
                '0'..='9' => {
                    let cyc = current
                        .as_mut()
                        .ok_or_else(|| ParseError::new(1, col + 1, "point outside a cycle"))?;
                    if spaced {
                        number.push(ch);
                    } else {
                        cyc.push(ch.to_digit(10).unwrap() as usize);
                    }
                }
                ' ' | ',' => {
                    if let Some(cyc) = current.as_mut() {
                        if !number.is_empty() {
                            cyc.push(number.parse().map_err(|_| ParseError::new(1, col + 1, "bad point"))?);
                            number.clear();
                        }
                    }
                }
                _ => return Err(ParseError::new(1, col + 1, format!("unexpected '{ch}'")).into()),
            }
        }
        if current.is_some() {
            return Err(ParseError::new(1, text.len(), "unterminated cycle").into());
        }
        let refs: Vec<&[usize]> = cycles.iter().map(|c| c.as_slice()).collect();
        Perm::from_cycles(n, &refs)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Image of the one-based point `i`.
    pub fn apply(&self, i: usize) -> usize {
        self.0[i - 1] as usize + 1
    }

    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|&x| x as usize + 1).collect()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&j| self.0[j as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    pub fn is_even(&self) -> bool {
        let mut inversions = 0;
        for i in 0..self.0.len() {
            for j in i + 1..self.0.len() {
                if self.0[i] > self.0[j] {
                    inversions += 1;
                }
            }
        }
        inversions % 2 == 0
    }

    /// Disjoint cycles of length at least two, one-based, each starting at
    /// its smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start + 1];
            seen[start] = true;
            let mut x = self.0[start] as usize;
            while x != start {
                seen[x] = true;
                cyc.push(x + 1);
                x = self.0[x] as usize;
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "e");
        }
        let sep = if self.degree() > 9 { " " } else { "" };
        for cyc in cycles {
            let pts: Vec<String> = cyc.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", pts.join(sep))?;
        }
        Ok(())
    }
}

/// The underlying datum of a group element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Perm(Perm),
    Residue { value: u32, modulus: u32 },
}

impl GroupElement {
    pub fn perm(n: usize, cycles: &[&[usize]]) -> Result<Self> {
        Ok(GroupElement::Perm(Perm::from_cycles(n, cycles)?))
    }

    pub fn residue(value: i64, modulus: u32) -> Self {
        GroupElement::Residue {
            value: value.rem_euclid(modulus as i64) as u32,
            modulus,
        }
    }

    fn mul(&self, other: &GroupElement) -> GroupElement {
        match (self, other) {
            (GroupElement::Perm(p), GroupElement::Perm(q)) => GroupElement::Perm(p.compose(q)),
            (
                GroupElement::Residue { value: a, modulus },
                GroupElement::Residue { value: b, .. },
            ) => GroupElement::Residue {
                value: (a + b) % modulus,
                modulus: *modulus,
            },
            _ => unreachable!("mixed element kinds"),
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Perm(p) => write!(f, "{p}"),
            GroupElement::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Dense index of an element inside its [`FiniteGroup`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Elem(pub u8);

impl Elem {
    pub const IDENTITY: Elem = Elem(0);

    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

/// A subset of a group of order at most 128, as a bitmask over [`Elem`]
/// indices. Subgroups are canonicalized this way.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ElemSet(pub u128);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub fn singleton(e: Elem) -> Self {
        ElemSet(1u128 << e.0)
    }

    pub fn contains(self, e: Elem) -> bool {
        self.0 >> e.0 & 1 == 1
    }

    pub fn insert(&mut self, e: Elem) {
        self.0 |= 1u128 << e.0;
    }

    pub fn union(self, other: ElemSet) -> ElemSet {
        ElemSet(self.0 | other.0)
    }

    pub fn is_subset(self, other: ElemSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Elem> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let tz = bits.trailing_zeros();
                bits &= bits - 1;
                Some(Elem(tz as u8))
            }
        })
    }
}

impl FromIterator<Elem> for ElemSet {
    fn from_iter<I: IntoIterator<Item = Elem>>(iter: I) -> Self {
        let mut s = ElemSet::EMPTY;
        for e in iter {
            s.insert(e);
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    Symmetric(usize),
    Alternating(usize),
    Cyclic(usize),
    Klein,
    Subgroup { generators: Vec<GroupElement> },
}

/// A finite group with its full multiplication table.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    kind: GroupKind,
    degree: Option<usize>,
    elements: Vec<GroupElement>,
    index: HashMap<GroupElement, Elem>,
    table: Vec<Elem>,
    inverse: Vec<Elem>,
    orders: Vec<u32>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Constructs a named group. Symmetric and alternating groups need
    /// `2 <= n <= 5` (resp. `3 <= n`), cyclic groups `1 <= n <= 64`.
    pub fn make(kind: GroupKind) -> Result<FiniteGroup> {
        match kind {
            GroupKind::Symmetric(n) => {
                if !(1..=MAX_SYMMETRIC_DEGREE).contains(&n) {
                    return Err(Error::Config(format!("S{n} is not supported (degree 1..=5)")));
                }
                let elements = all_perms(n).into_iter().map(GroupElement::Perm).collect();
                Self::from_elements(format!("S{n}"), GroupKind::Symmetric(n), Some(n), elements)
            }
            GroupKind::Alternating(n) => {
                if !(3..=MAX_SYMMETRIC_DEGREE).contains(&n) {
                    return Err(Error::Config(format!("A{n} is not supported (degree 3..=5)")));
                }
                let elements = all_perms(n)
                    .into_iter()
                    .filter(Perm::is_even)
                    .map(GroupElement::Perm)
                    .collect();
                Self::from_elements(format!("A{n}"), GroupKind::Alternating(n), Some(n), elements)
            }
            GroupKind::Cyclic(n) => {
                if !(1..=MAX_CYCLIC_ORDER).contains(&n) {
                    return Err(Error::Config(format!("Z{n} is not supported (order 1..=64)")));
                }
                let elements = (0..n as u32)
                    .map(|value| GroupElement::Residue {
                        value,
                        modulus: n as u32,
                    })
                    .collect();
                Self::from_elements(format!("Z{n}"), GroupKind::Cyclic(n), None, elements)
            }
            GroupKind::Klein => {
                let s4 = FiniteGroup::make(GroupKind::Symmetric(4))?;
                let gens = [
                    GroupElement::perm(4, &[&[1, 2], &[3, 4]])?,
                    GroupElement::perm(4, &[&[1, 3], &[2, 4]])?,
                ];
                let mut v4 = s4.subgroup(&gens)?;
                v4.name = "V4".into();
                v4.kind = GroupKind::Klein;
                Ok(v4)
            }
            GroupKind::Subgroup { .. } => Err(Error::Config(
                "subgroups are built with FiniteGroup::subgroup".into(),
            )),
        }
    }

    /// Parses a group name: `S2`..`S5`, `A3`..`A5`, `Z<n>`, `V4`.
    pub fn from_name(name: &str) -> Result<FiniteGroup> {
        let name = name.trim();
        if name == "V4" {
            return FiniteGroup::make(GroupKind::Klein);
        }
        let (head, rest) = name.split_at(name.chars().next().map_or(0, char::len_utf8));
        let n: usize = rest
            .parse()
            .map_err(|_| Error::Config(format!("unknown group '{name}'")))?;
        match head {
            "S" if n >= 2 => FiniteGroup::make(GroupKind::Symmetric(n)),
            "A" => FiniteGroup::make(GroupKind::Alternating(n)),
            "Z" => FiniteGroup::make(GroupKind::Cyclic(n)),
            _ => Err(Error::Config(format!("unknown group '{name}'"))),
        }
    }

    /// The subgroup of `self` generated by `generators`, as a group in its
    /// own right.
    pub fn subgroup(&self, generators: &[GroupElement]) -> Result<FiniteGroup> {
        let elements = self.generated_subgroup(generators)?;
        let name = format!(
            "<{}>",
            generators.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(",")
        );
        Self::from_elements(
            name,
            GroupKind::Subgroup {
                generators: generators.to_vec(),
            },
            self.degree,
            elements,
        )
    }

    fn from_elements(
        name: String,
        kind: GroupKind,
        degree: Option<usize>,
        mut elements: Vec<GroupElement>,
    ) -> Result<FiniteGroup> {
        elements.sort();
        elements.dedup();
        let n = elements.len();
        if n == 0 || n > MAX_ORDER {
            return Err(Error::Config(format!("group order {n} outside 1..={MAX_ORDER}")));
        }
        let index: HashMap<GroupElement, Elem> = elements
            .iter()
            .enumerate()
            .map(|(i, g)| (g.clone(), Elem(i as u8)))
            .collect();
        let mut table = Vec::with_capacity(n * n);
        for a in &elements {
            for b in &elements {
                let c = a.mul(b);
                let idx = *index
                    .get(&c)
                    .ok_or_else(|| Error::Invariant(format!("{name} not closed under multiplication")))?;
                table.push(idx);
            }
        }
        if table[0].0 != 0 || (0..n).any(|i| table[i] != Elem(i as u8)) {
            return Err(Error::Invariant(format!("{name}: first element is not the identity")));
        }
        let mut inverse = vec![Elem(0); n];
        for a in 0..n {
            let b = (0..n)
                .find(|&b| table[a * n + b] == Elem::IDENTITY)
                .ok_or_else(|| Error::Invariant(format!("{name}: element without inverse")))?;
            inverse[a] = Elem(b as u8);
        }
        let mut orders = vec![1u32; n];
        for (a, ord) in orders.iter_mut().enumerate() {
            let mut x = Elem(a as u8);
            while x != Elem::IDENTITY {
                x = table[x.idx() * n + a];
                *ord += 1;
            }
        }
        Ok(FiniteGroup {
            name,
            kind,
            degree,
            elements,
            index,
            table,
            inverse,
            orders,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &GroupKind {
        &self.kind
    }

    /// Degree of the natural permutation representation, if any.
    pub fn degree(&self) -> Option<usize> {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn identity(&self) -> Elem {
        Elem::IDENTITY
    }

    pub fn elems(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.elements.len() as u8).map(Elem)
    }

    pub fn all(&self) -> ElemSet {
        self.elems().collect()
    }

    pub fn element(&self, e: Elem) -> &GroupElement {
        &self.elements[e.idx()]
    }

    pub fn elem_of(&self, g: &GroupElement) -> Option<Elem> {
        self.index.get(g).copied()
    }

    /// Looks up an element from cycle notation (permutation groups) or a
    /// decimal residue (cyclic groups).
    pub fn parse_elem(&self, text: &str) -> Result<Elem> {
        let g = match (&self.kind, self.degree) {
            (_, Some(n)) => GroupElement::Perm(Perm::parse(n, text)?),
            (GroupKind::Cyclic(m), None) => {
                let v: i64 = text
                    .trim()
                    .parse()
                    .map_err(|_| Error::Domain(format!("'{text}' is not a residue")))?;
                GroupElement::residue(v, *m as u32)
            }
            _ => return Err(Error::Domain(format!("cannot parse elements of {}", self.name))),
        };
        self.elem_of(&g)
            .ok_or_else(|| Error::Domain(format!("{g} is not an element of {}", self.name)))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a.idx() * self.elements.len() + b.idx()]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a.idx()]
    }

    pub fn element_order(&self, a: Elem) -> u32 {
        self.orders[a.idx()]
    }

    pub fn pow(&self, a: Elem, exp: i64) -> Elem {
        let ord = self.orders[a.idx()] as i64;
        let k = exp.rem_euclid(ord);
        let mut x = Elem::IDENTITY;
        for _ in 0..k {
            x = self.mul(x, a);
        }
        x
    }

    /// `y a y⁻¹`.
    pub fn conjugate(&self, a: Elem, y: Elem) -> Elem {
        self.mul(self.mul(y, a), self.inv(y))
    }

    pub fn is_abelian(&self) -> bool {
        self.elems()
            .all(|a| self.elems().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn display(&self, e: Elem) -> String {
        self.element(e).to_string()
    }

    /// Smallest subgroup containing `set`.
    pub fn closure(&self, set: ElemSet) -> ElemSet {
        let gens: Vec<Elem> = set.iter().filter(|&g| g != Elem::IDENTITY).collect();
        let mut result = ElemSet::singleton(Elem::IDENTITY);
        let mut queue = vec![Elem::IDENTITY];
        while let Some(x) = queue.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !result.contains(y) {
                    result.insert(y);
                    queue.push(y);
                }
            }
        }
        result
    }

    /// Subgroup generated by two subsets.
    pub fn join(&self, a: ElemSet, b: ElemSet) -> ElemSet {
        if b.is_subset(a) && self.is_subgroup(a) {
            return a;
        }
        self.closure(a.union(b))
    }

    pub fn is_subgroup(&self, set: ElemSet) -> bool {
        set.contains(Elem::IDENTITY)
            && set.iter().all(|a| set.iter().all(|b| set.contains(self.mul(a, b))))
    }

    /// Subgroup generated by `gens`, returned in canonical order.
    pub fn generated_subgroup(&self, gens: &[GroupElement]) -> Result<Vec<GroupElement>> {
        let mut set = ElemSet::EMPTY;
        for g in gens {
            let e = self
                .elem_of(g)
                .ok_or_else(|| Error::Domain(format!("{g} is not an element of {}", self.name)))?;
            set.insert(e);
        }
        Ok(self
            .closure(set)
            .iter()
            .map(|e| self.element(e).clone())
            .collect())
    }

    /// True iff the permutations in `set` move point 1 onto every point of
    /// the natural domain. Always false for non-permutation groups.
    pub fn is_transitive_set(&self, set: ElemSet) -> bool {
        match self.degree {
            Some(n) => {
                let perms: Vec<GroupElement> =
                    set.iter().map(|e| self.element(e).clone()).collect();
                is_transitive(&perms, n)
            }
            None => false,
        }
    }

    /// Every subgroup, sorted by order then bitmask. Fine for |G| <= 120.
    pub fn subgroups(&self) -> Vec<ElemSet> {
        let mut found: std::collections::BTreeSet<ElemSet> = Default::default();
        let trivial = ElemSet::singleton(Elem::IDENTITY);
        found.insert(trivial);
        let mut frontier = vec![trivial];
        while let Some(h) = frontier.pop() {
            for g in self.elems() {
                if !h.contains(g) {
                    let k = self.closure(h.union(ElemSet::singleton(g)));
                    if found.insert(k) {
                        frontier.push(k);
                    }
                }
            }
        }
        let mut out: Vec<ElemSet> = found.into_iter().collect();
        out.sort_by_key(|s| (s.len(), s.0));
        out
    }
}

fn all_perms(n: usize) -> Vec<Perm> {
    fn rec(n: usize, prefix: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Perm>) {
        if prefix.len() == n {
            out.push(Perm(prefix.clone()));
            return;
        }
        for x in 0..n {
            if !used[x] {
                used[x] = true;
                prefix.push(x as u8);
                rec(n, prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// True iff the orbit of 1 under the permutations in `h` is all of
/// `{1..n}`. Permutations of smaller degree fix the extra points.
pub fn is_transitive(h: &[GroupElement], n: usize) -> bool {
    if n == 0 {
        return true;
    }
    let mut orbit = vec![false; n];
    orbit[0] = true;
    let mut stack = vec![1usize];
    while let Some(x) = stack.pop() {
        for g in h {
            if let GroupElement::Perm(p) = g {
                let y = if x <= p.degree() { p.apply(x) } else { x };
                if y <= n && !orbit[y - 1] {
                    orbit[y - 1] = true;
                    stack.push(y);
                }
            }
        }
    }
    orbit.into_iter().all(|b| b)
}

/// A split extension `A → E → Σ` with abelian kernel, together with a fixed
/// section and the induced action of Σ on A.
#[derive(Clone, Debug)]
pub struct ExtensionData {
    name: String,
    total: Arc<FiniteGroup>,
    quotient: Arc<FiniteGroup>,
    kernel: Arc<FiniteGroup>,
    kernel_set: ElemSet,
    inclusion: Vec<Elem>,
    projection: Vec<Elem>,
    section: Vec<Elem>,
    /// `action[y * |A| + a]` = `a^y` in kernel indices.
    action: Vec<Elem>,
}

pub const STANDARD_EXTENSIONS: [&str; 3] = ["S3/S2", "A4/Z3", "S4/S3"];

impl ExtensionData {
    /// Builds and validates an extension from explicit data: `projection`
    /// maps every element of `total` to `quotient`; `section` maps every
    /// element of `quotient` back.
    pub fn new(
        name: impl Into<String>,
        total: FiniteGroup,
        quotient: FiniteGroup,
        kernel_generators: &[GroupElement],
        projection: Vec<Elem>,
        section: Vec<Elem>,
    ) -> Result<ExtensionData> {
        let name = name.into();
        let kernel = total.subgroup(kernel_generators)?;
        let fail = |msg: &str| Err(Error::Invariant(format!("extension {name}: {msg}")));
        if !kernel.is_abelian() {
            return fail("kernel is not abelian");
        }
        if projection.len() != total.order() || section.len() != quotient.order() {
            return fail("projection or section has the wrong length");
        }
        for a in total.elems() {
            for b in total.elems() {
                let lhs = projection[total.mul(a, b).idx()];
                let rhs = quotient.mul(projection[a.idx()], projection[b.idx()]);
                if lhs != rhs {
                    return fail("projection is not a homomorphism");
                }
            }
        }
        for y in quotient.elems() {
            if projection[section[y.idx()].idx()] != y {
                return fail("projection ∘ section is not the identity");
            }
            for z in quotient.elems() {
                if section[quotient.mul(y, z).idx()]
                    != total.mul(section[y.idx()], section[z.idx()])
                {
                    return fail("section is not a homomorphism");
                }
            }
        }
        let inclusion: Vec<Elem> = kernel
            .elems()
            .map(|a| total.elem_of(kernel.element(a)).expect("kernel lies in total group"))
            .collect();
        let kernel_set: ElemSet = inclusion.iter().copied().collect();
        let actual_kernel: ElemSet = total
            .elems()
            .filter(|&g| projection[g.idx()] == Elem::IDENTITY)
            .collect();
        if actual_kernel != kernel_set {
            return fail("kernel of projection differs from the given kernel");
        }
        let mut action = Vec::with_capacity(quotient.order() * kernel.order());
        for y in quotient.elems() {
            let lift = section[y.idx()];
            for &a in &inclusion {
                let conj = total.conjugate(a, lift);
                action.push(
                    kernel
                        .elem_of(total.element(conj))
                        .ok_or_else(|| Error::Invariant(format!("extension {name}: kernel not normal")))?,
                );
            }
        }
        Ok(ExtensionData {
            name,
            total: Arc::new(total),
            quotient: Arc::new(quotient),
            kernel: Arc::new(kernel),
            kernel_set,
            inclusion,
            projection,
            section,
            action,
        })
    }

    /// One of the three named split extensions: `S3/S2` (kernel ⟨(123)⟩),
    /// `A4/Z3` and `S4/S3` (kernel ⟨(12)(34),(13)(24)⟩).
    ///
    /// Sections: `S3/S2` sends (12) to (12); `A4/Z3` sends k to (123)^k;
    /// `S4/S3` is the inclusion of S3 as the stabilizer of 4.
    pub fn standard(name: &str) -> Result<ExtensionData> {
        match name {
            "S3/S2" => {
                let e = FiniteGroup::make(GroupKind::Symmetric(3))?;
                let q = FiniteGroup::make(GroupKind::Symmetric(2))?;
                let swap = q.elem_of(&GroupElement::perm(2, &[&[1, 2]])?).unwrap();
                let projection = e
                    .elems()
                    .map(|g| match e.element(g) {
                        GroupElement::Perm(p) if p.is_even() => Elem::IDENTITY,
                        _ => swap,
                    })
                    .collect();
                let t12 = e.elem_of(&GroupElement::perm(3, &[&[1, 2]])?).unwrap();
                let mut section = vec![Elem::IDENTITY; 2];
                section[swap.idx()] = t12;
                let kernel = [GroupElement::perm(3, &[&[1, 2, 3]])?];
                ExtensionData::new(name, e, q, &kernel, projection, section)
            }
            "A4/Z3" => {
                let e = FiniteGroup::make(GroupKind::Alternating(4))?;
                let q = FiniteGroup::make(GroupKind::Cyclic(3))?;
                let kernel = [
                    GroupElement::perm(4, &[&[1, 2], &[3, 4]])?,
                    GroupElement::perm(4, &[&[1, 3], &[2, 4]])?,
                ];
                let v4 = e.subgroup(&kernel)?;
                let v4_set: ElemSet = v4.elements.iter().map(|g| e.elem_of(g).unwrap()).collect();
                let c = e.elem_of(&GroupElement::perm(4, &[&[1, 2, 3]])?).unwrap();
                let powers = [Elem::IDENTITY, c, e.mul(c, c)];
                let projection = e
                    .elems()
                    .map(|g| {
                        let k = (0..3)
                            .find(|&k| v4_set.contains(e.mul(e.inv(powers[k]), g)))
                            .expect("A4 is the union of three V4 cosets");
                        q.elem_of(&GroupElement::residue(k as i64, 3)).unwrap()
                    })
                    .collect();
                let section = (0..3)
                    .map(|k| {
                        let y = q.elem_of(&GroupElement::residue(k, 3)).unwrap();
                        (y, powers[k as usize])
                    })
                    .fold(vec![Elem::IDENTITY; 3], |mut s, (y, x)| {
                        s[y.idx()] = x;
                        s
                    });
                ExtensionData::new(name, e, q, &kernel, projection, section)
            }
            "S4/S3" => {
                let e = FiniteGroup::make(GroupKind::Symmetric(4))?;
                let q = FiniteGroup::make(GroupKind::Symmetric(3))?;
                // S4 permutes the three pairings {i,4}|rest; label a pairing
                // by the partner of 4.
                let projection = e
                    .elems()
                    .map(|g| {
                        let GroupElement::Perm(p) = e.element(g) else { unreachable!() };
                        let images: Vec<usize> = (1..=3)
                            .map(|i| {
                                let gi = p.apply(i);
                                let g4 = p.apply(4);
                                if g4 == 4 {
                                    gi
                                } else if gi == 4 {
                                    g4
                                } else {
                                    (1..=4).find(|&x| x != gi && x != g4 && x != 4).unwrap()
                                }
                            })
                            .collect();
                        q.elem_of(&GroupElement::Perm(Perm::from_images(&images).unwrap()))
                            .unwrap()
                    })
                    .collect();
                let section = q
                    .elems()
                    .map(|y| {
                        let GroupElement::Perm(p) = q.element(y) else { unreachable!() };
                        let mut images = p.images();
                        images.push(4);
                        e.elem_of(&GroupElement::Perm(Perm::from_images(&images).unwrap()))
                            .unwrap()
                    })
                    .collect();
                let kernel = [
                    GroupElement::perm(4, &[&[1, 2], &[3, 4]])?,
                    GroupElement::perm(4, &[&[1, 3], &[2, 4]])?,
                ];
                ExtensionData::new(name, e, q, &kernel, projection, section)
            }
            other => Err(Error::Config(format!(
                "unknown extension '{other}' (expected one of {})",
                STANDARD_EXTENSIONS.join(", ")
            ))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// The middle group E.
    pub fn total(&self) -> &Arc<FiniteGroup> {
        &self.total
    }

    /// The quotient Σ.
    pub fn quotient(&self) -> &Arc<FiniteGroup> {
        &self.quotient
    }

    /// The abelian kernel A as a group in its own right.
    pub fn kernel(&self) -> &Arc<FiniteGroup> {
        &self.kernel
    }

    /// The kernel as a subset of E.
    pub fn kernel_in_total(&self) -> ElemSet {
        self.kernel_set
    }

    pub fn include(&self, a: Elem) -> Elem {
        self.inclusion[a.idx()]
    }

    /// Index of an element of E lying in A, in kernel indices.
    pub fn restrict(&self, g: Elem) -> Option<Elem> {
        self.inclusion.iter().position(|&x| x == g).map(|i| Elem(i as u8))
    }

    pub fn project(&self, g: Elem) -> Elem {
        self.projection[g.idx()]
    }

    pub fn section(&self, y: Elem) -> Elem {
        self.section[y.idx()]
    }

    /// Elements of E lying over `y`.
    pub fn fiber(&self, y: Elem) -> ElemSet {
        self.total
            .elems()
            .filter(|&g| self.projection[g.idx()] == y)
            .collect()
    }

    /// `a^y = s(y) a s(y)⁻¹` with `y ∈ Σ` and `a ∈ A` (kernel indices).
    pub fn twisted_action(&self, y: Elem, a: Elem) -> Elem {
        self.action[y.idx() * self.kernel.order() + a.idx()]
    }

    /// Element-level form of [`ExtensionData::twisted_action`].
    pub fn twisted_action_of(&self, y: &GroupElement, a: &GroupElement) -> Result<GroupElement> {
        let yi = self
            .quotient
            .elem_of(y)
            .ok_or_else(|| Error::Domain(format!("{y} is not in {}", self.quotient.name())))?;
        let ai = self
            .kernel
            .elem_of(a)
            .ok_or_else(|| Error::Domain(format!("{a} is not in the kernel of {}", self.name)))?;
        Ok(self.kernel.element(self.twisted_action(yi, ai)).clone())
    }
}
