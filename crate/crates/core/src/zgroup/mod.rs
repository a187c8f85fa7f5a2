//! Finitely presented Z-groups in two input forms, and the finite base
//! presentations whose homomorphisms into a target group are the edges of a
//! representation-shift graph.
//!
//! A shift-periodic presentation lists generator families `a_j` and relator
//! families closed under `j ↦ j+1`. HNN data gives a base group `B`, a
//! subgroup `U` generated by some base generators, and the amalgamating map
//! `φ: U → V`. Both reduce to a [`BasePresentation`]: a finite presentation
//! plus the words that read off the source and target vertex of an edge.

mod parse;
mod word;

use std::fmt;

pub use parse::parse_presentation;
pub use word::{Letter, Word};

use crate::error::{Error, Result};

/// Largest window (or block order) accepted when materializing a base.
pub const MAX_WINDOW: usize = 64;

/// Shift-periodic presentation `⟨a_j, b_j, … | r_j, s_j, …⟩`. Every relator
/// is stored with its minimal index at 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZGroupPresentation {
    families: Vec<String>,
    relators: Vec<Word>,
    window: usize,
}

impl ZGroupPresentation {
    /// Normalizes each relator to start at index 0 and drops relators that
    /// reduce to the empty word.
    pub fn new(families: Vec<String>, relators: Vec<Word>) -> Self {
        let relators: Vec<Word> = relators
            .into_iter()
            .filter(|w| !w.is_empty())
            .map(|w| {
                let lo = w.min_shift().unwrap_or(0);
                w.shifted(-lo)
            })
            .collect();
        let window = relators
            .iter()
            .filter_map(|w| w.max_shift())
            .max()
            .unwrap_or(0) as usize;
        ZGroupPresentation {
            families,
            relators,
            window,
        }
    }

    pub fn families(&self) -> &[String] {
        &self.families
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// Largest index spread of any relator.
    pub fn window(&self) -> usize {
        self.window
    }
}

/// Explicit HNN data `⟨x, B | x⁻¹ u x = φ(u), u ∈ U⟩`, with `U` generated
/// by a subset of the base generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HnnData {
    gens: Vec<String>,
    relators: Vec<Word>,
    u_gens: Vec<usize>,
    phi: Vec<Word>,
}

impl HnnData {
    pub fn new(gens: Vec<String>, relators: Vec<Word>, u_gens: Vec<usize>, phi: Vec<Word>) -> Self {
        assert_eq!(u_gens.len(), phi.len(), "one φ image per U-generator");
        let relators = relators.into_iter().filter(|w| !w.is_empty()).collect();
        HnnData {
            gens,
            relators,
            u_gens,
            phi,
        }
    }

    pub fn gens(&self) -> &[String] {
        &self.gens
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn u_gens(&self) -> &[usize] {
        &self.u_gens
    }

    pub fn phi(&self) -> &[Word] {
        &self.phi
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Presentation {
    Periodic(ZGroupPresentation),
    Hnn(HnnData),
}

impl Presentation {
    /// Names of the symbol families a periodic point assigns per step:
    /// generator families, or base generators for HNN data.
    pub fn family_names(&self) -> &[String] {
        match self {
            Presentation::Periodic(p) => &p.families,
            Presentation::Hnn(h) => &h.gens,
        }
    }
}

impl std::str::FromStr for Presentation {
    type Err = crate::error::ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        parse_presentation(s)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Presentation::Periodic(p) => {
                writeln!(f, "zgroup")?;
                writeln!(f, "gens {}", p.families.join(" "))?;
                for r in &p.relators {
                    writeln!(f, "rel {}", r.display_with(&p.families, true))?;
                }
            }
            Presentation::Hnn(h) => {
                writeln!(f, "hnn")?;
                writeln!(f, "gens {}", h.gens.join(" "))?;
                for r in &h.relators {
                    writeln!(f, "base-rel {}", r.display_with(&h.gens, false))?;
                }
                let u: Vec<&str> = h.u_gens.iter().map(|&g| h.gens[g].as_str()).collect();
                writeln!(f, "U {}", u.join(" "))?;
                for (&g, w) in h.u_gens.iter().zip(&h.phi) {
                    writeln!(f, "phi {} -> {}", h.gens[g], w.display_with(&h.gens, false))?;
                }
            }
        }
        Ok(())
    }
}

/// Position of a base generator in the infinite generating set of K: family
/// (or base generator) and index (or copy) `j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GenCoord {
    pub family: usize,
    pub index: usize,
}

/// A finite presentation of the window base `B⁽ⁿ⁾` together with the words
/// that define the vertex structure: an edge `ρ̄` runs from the vertex
/// `(ρ̄(u))_u` to the vertex `(ρ̄(v))_v` for the paired lists `u_words`,
/// `v_words`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasePresentation {
    family_names: Vec<String>,
    gen_names: Vec<String>,
    coords: Vec<GenCoord>,
    relators: Vec<Word>,
    u_words: Vec<Word>,
    v_words: Vec<Word>,
    contributions: Vec<usize>,
    eliminated: Vec<(GenCoord, Word)>,
    block: usize,
}

impl BasePresentation {
    pub fn family_names(&self) -> &[String] {
        &self.family_names
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gen_names
    }

    pub fn coords(&self) -> &[GenCoord] {
        &self.coords
    }

    pub fn num_gens(&self) -> usize {
        self.coords.len()
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn u_words(&self) -> &[Word] {
        &self.u_words
    }

    pub fn v_words(&self) -> &[Word] {
        &self.v_words
    }

    /// Generators whose values, read along a bi-infinite path, enumerate
    /// every generator of K exactly once: index 0 of every family.
    pub fn contributions(&self) -> &[usize] {
        &self.contributions
    }

    /// Generators removed by [`BasePresentation::simplified`], with the word
    /// over the remaining generators that they equal.
    pub fn eliminated(&self) -> &[(GenCoord, Word)] {
        &self.eliminated
    }

    pub fn block(&self) -> usize {
        self.block
    }

    pub fn gen_of(&self, coord: GenCoord) -> Option<usize> {
        self.coords.iter().position(|&c| c == coord)
    }

    /// Tietze-simplifies the presentation: a generator that is neither a
    /// U-generator nor a contribution and occurs exactly once, with exponent
    /// ±1, in some relator is solved for and substituted away. Highest
    /// generators go first. The Hom-set (and hence the graph) is unchanged.
    pub fn simplified(&self) -> BasePresentation {
        let mut out = self.clone();
        loop {
            let protected: Vec<bool> = (0..out.coords.len())
                .map(|g| {
                    out.contributions.contains(&g)
                        || out
                            .u_words
                            .iter()
                            .any(|w| w.letters().len() == 1 && w.letters()[0].gen == g && w.letters()[0].exp == 1)
                })
                .collect();
            let candidate = (0..out.coords.len()).rev().filter(|&g| !protected[g]).find_map(|g| {
                out.relators
                    .iter()
                    .position(|r| {
                        let (n, e) = r.occurrences(g);
                        n == 1 && e == 1
                    })
                    .map(|ri| (g, ri))
            });
            let Some((g, ri)) = candidate else { break };
            let rel = out.relators.remove(ri);
            let at = rel.letters().iter().position(|l| l.gen == g).unwrap();
            let eps = rel.letters()[at].exp;
            let before = Word::new(rel.letters()[..at].iter().copied());
            let after = Word::new(rel.letters()[at + 1..].iter().copied());
            // before · g^eps · after = 1  ⇒  g = (before⁻¹ after⁻¹)^eps
            let value = before.inverse().concat(&after.inverse()).pow(eps);
            let subst = |w: &Word| {
                w.substitute(|h, _| if h == g { value.clone() } else { Word::gen(h) })
            };
            out.relators = out.relators.iter().map(subst).filter(|w| !w.is_empty()).collect();
            out.u_words = out.u_words.iter().map(subst).collect();
            out.v_words = out.v_words.iter().map(subst).collect();
            for (_, w) in out.eliminated.iter_mut() {
                *w = subst(w);
            }
            out.eliminated.push((out.coords[g], value));
            // renumber generators above g
            let renumber = |w: &Word| {
                Word::new(w.letters().iter().map(|l| {
                    Letter::new(if l.gen > g { l.gen - 1 } else { l.gen }, 0, l.exp)
                }))
            };
            out.relators = out.relators.iter().map(renumber).collect();
            out.u_words = out.u_words.iter().map(renumber).collect();
            out.v_words = out.v_words.iter().map(renumber).collect();
            for (_, w) in out.eliminated.iter_mut() {
                *w = renumber(w);
            }
            out.contributions = out
                .contributions
                .iter()
                .map(|&c| if c > g { c - 1 } else { c })
                .collect();
            out.coords.remove(g);
            out.gen_names.remove(g);
        }
        out
    }
}

impl fmt::Display for BasePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| r.display_with(&self.gen_names, false).to_string())
            .collect();
        write!(f, "⟨{} | {}⟩", self.gen_names.join(", "), rels.join(", "))?;
        let pairs: Vec<String> = self
            .u_words
            .iter()
            .zip(&self.v_words)
            .map(|(u, v)| {
                format!(
                    "{} ↦ {}",
                    u.display_with(&self.gen_names, false),
                    v.display_with(&self.gen_names, false)
                )
            })
            .collect();
        write!(f, ", φ: {}", pairs.join(", "))
    }
}

/// Materializes the base `B⁽ⁿ⁾` whose homomorphisms into Σ are the edges of
/// the n-block graph of the representation shift.
///
/// Shift-periodic input with window `k` uses generators `a_{f,i}` for
/// `0 ≤ i < n + k`, every relator instance fitting inside, `U` the indices
/// `0..n+k-1` and `φ` the index shift. HNN input uses `n` amalgamated copies
/// of `B`: for `n = 1` the data as given, otherwise `U⁽ⁿ⁾` is generated by
/// copies `0..n-1` and `φ⁽ⁿ⁾` shifts copies. The result is then
/// [simplified](BasePresentation::simplified).
pub fn hnn_window_base(p: &Presentation, n: usize) -> Result<BasePresentation> {
    Ok(raw_window_base(p, n)?.simplified())
}

/// [`hnn_window_base`] without Tietze simplification: every coordinate of the
/// window is a generator.
pub fn raw_window_base(p: &Presentation, n: usize) -> Result<BasePresentation> {
    if n == 0 {
        return Err(Error::Domain("block order n must be at least 1".into()));
    }
    if n > MAX_WINDOW {
        return Err(Error::Config(format!("block order {n} exceeds {MAX_WINDOW}")));
    }
    match p {
        Presentation::Periodic(z) => periodic_base(z, n),
        Presentation::Hnn(h) => Ok(hnn_base(h, n)),
    }
}

fn periodic_base(z: &ZGroupPresentation, n: usize) -> Result<BasePresentation> {
    if z.window > MAX_WINDOW {
        return Err(Error::Config(format!(
            "relator window {} exceeds {MAX_WINDOW}",
            z.window
        )));
    }
    let fams = z.families.len();
    let width = n + z.window;
    let mut coords = Vec::with_capacity(width * fams);
    let mut gen_names = Vec::new();
    for i in 0..width {
        for (f, name) in z.families.iter().enumerate() {
            coords.push(GenCoord { family: f, index: i });
            gen_names.push(format!("{name}[{i}]"));
        }
    }
    let gen = |f: usize, i: i64| Word::gen(i as usize * fams + f);
    let mut relators = Vec::new();
    for r in &z.relators {
        let span = r.max_shift().unwrap_or(0) as usize;
        for s in 0..width.saturating_sub(span) {
            relators.push(r.substitute(|f, i| gen(f, i + s as i64)));
        }
    }
    let vertex_width = width - 1;
    let mut u_words = Vec::new();
    let mut v_words = Vec::new();
    for i in 0..vertex_width {
        for f in 0..fams {
            u_words.push(gen(f, i as i64));
            v_words.push(gen(f, i as i64 + 1));
        }
    }
    Ok(BasePresentation {
        family_names: z.families.clone(),
        gen_names,
        coords,
        relators,
        u_words,
        v_words,
        contributions: (0..fams).collect(),
        eliminated: Vec::new(),
        block: n,
    })
}

fn hnn_base(h: &HnnData, n: usize) -> BasePresentation {
    let b = h.gens.len();
    let mut coords = Vec::with_capacity(n * b);
    let mut gen_names = Vec::new();
    for j in 0..n {
        for (g, name) in h.gens.iter().enumerate() {
            coords.push(GenCoord { family: g, index: j });
            gen_names.push(if n == 1 { name.clone() } else { format!("{name}[{j}]") });
        }
    }
    let in_copy = |w: &Word, j: usize| w.substitute(|g, _| Word::gen(j * b + g));
    let mut relators = Vec::new();
    for j in 0..n {
        for r in &h.relators {
            relators.push(in_copy(r, j));
        }
        if j + 1 < n {
            for (&u, img) in h.u_gens.iter().zip(&h.phi) {
                relators.push(in_copy(img, j).concat(&Word::gen((j + 1) * b + u).inverse()));
            }
        }
    }
    let (u_words, v_words) = if n == 1 {
        (
            h.u_gens.iter().map(|&u| Word::gen(u)).collect(),
            h.phi.clone(),
        )
    } else {
        (
            (0..(n - 1) * b).map(Word::gen).collect(),
            (b..n * b).map(Word::gen).collect(),
        )
    };
    BasePresentation {
        family_names: h.gens.clone(),
        gen_names,
        coords,
        relators: relators.into_iter().filter(|w| !w.is_empty()).collect(),
        u_words,
        v_words,
        contributions: (0..b).collect(),
        eliminated: Vec::new(),
        block: n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EX_2_1: &str = "zgroup; gens a; rel a[1] a[0]^-2";

    fn periodic(text: &str) -> ZGroupPresentation {
        match parse_presentation(text).unwrap() {
            Presentation::Periodic(z) => z,
            _ => panic!("expected zgroup"),
        }
    }

    #[test]
    fn parse_examples() {
        let z = periodic(EX_2_1);
        assert_eq!(z.families(), &["a".to_string()]);
        assert_eq!(z.relators().len(), 1);
        assert_eq!(z.window(), 1);
        let z = periodic("zgroup; gens a; rel a[0]^2; rel a[1] a[0]^-1");
        assert_eq!(z.relators().len(), 2);
        assert_eq!(z.window(), 1);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let e = parse_presentation("zgroup; gens a; rel a[1").unwrap_err();
        assert_eq!(e.line, 1);
        assert!(e.message.contains("expected"), "{e}");
        let e = parse_presentation("zgroup\ngens a\nrel b[0]").unwrap_err();
        assert_eq!((e.line, e.col), (3, 5));
        assert!(e.message.contains("unknown generator"));
        let e = parse_presentation("zgroup\ngens\n").unwrap_err();
        assert!(e.message.contains("empty generator list"));
        let e = parse_presentation("zgroup\nrel a[0]\n").unwrap_err();
        assert!(e.message.contains("'gens' must come first"));
        let e = parse_presentation("group\ngens x a\n").unwrap_err();
        assert!(e.message.contains("not supported"));
        assert!(parse_presentation("").is_err());
        assert!(parse_presentation("hnn; gens a; U a").is_err());
        assert!(parse_presentation("hnn; gens a b; U a; phi a -> b; phi b -> a").is_err());
        assert!(parse_presentation("zgroup; gens a; rel a^2").is_err());
        assert!(parse_presentation("hnn; gens a; base-rel a[0]; U a; phi a -> a").is_err());
    }

    #[test]
    fn relation_and_grouping_syntax() {
        let a = periodic("zgroup; gens a; rel a[1] = a[0]^2");
        let b = periodic(EX_2_1);
        assert_eq!(a, b);
        let h = parse_presentation("hnn; gens a b; base-rel (a b)^2 [a, b]; U a; phi a -> b^2").unwrap();
        let Presentation::Hnn(h) = h else { panic!() };
        assert_eq!(h.relators()[0].letters().len(), 8);
        assert_eq!(h.phi()[0], Word::new([Letter::new(1, 0, 2)]));
    }

    #[test]
    fn window_normalization_is_shift_invariant() {
        let a = periodic("zgroup; gens a b; rel a[3] b[2]^-1 a[2]");
        let b = periodic("zgroup; gens a b; rel a[-1] b[-2]^-1 a[-2]");
        assert_eq!(a, b);
        assert_eq!(a.relators()[0].min_shift(), Some(0));
        assert_eq!(a.window(), 1);
    }

    #[test]
    fn pretty_print_round_trips() {
        for text in [
            EX_2_1,
            "zgroup; gens a b; rel a[0]^2; rel a[2] b[1]^-3 a[0]",
            "hnn; gens a b a' b'; base-rel a^2; base-rel [a, a']; U a b; phi a -> a'; phi b -> b'",
        ] {
            let p = parse_presentation(text).unwrap();
            let printed = p.to_string();
            assert_eq!(parse_presentation(&printed).unwrap(), p, "{printed}");
        }
    }

    #[test]
    fn squaring_relator_bases() {
        let p = parse_presentation(EX_2_1).unwrap();
        let b1 = hnn_window_base(&p, 1).unwrap();
        assert_eq!(b1.gen_names(), &["a[0]".to_string()]);
        assert!(b1.relators().is_empty());
        assert_eq!(b1.u_words(), &[Word::gen(0)]);
        assert_eq!(b1.v_words(), &[Word::new([Letter::new(0, 0, 2)])]);
        assert_eq!(b1.eliminated().len(), 1);

        let b2 = hnn_window_base(&p, 2).unwrap();
        assert_eq!(b2.gen_names(), &["a[0]".to_string(), "a[1]".to_string()]);
        assert_eq!(b2.relators(), &[Word::new([Letter::new(1, 0, 1), Letter::new(0, 0, -2)])]);
        assert_eq!(b2.to_string(), "⟨a[0], a[1] | a[1] a[0]^-2⟩, φ: a[0] ↦ a[1], a[1] ↦ a[1]^2");

        let raw = raw_window_base(&p, 1).unwrap();
        assert_eq!(raw.num_gens(), 2);
        assert_eq!(raw.relators().len(), 1);
        assert!(matches!(hnn_window_base(&p, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn hnn_passthrough_and_copies() {
        let p = parse_presentation(
            "hnn; gens a b; base-rel a^2; U a; phi a -> b",
        )
        .unwrap();
        let b1 = raw_window_base(&p, 1).unwrap();
        assert_eq!(b1.gen_names(), &["a".to_string(), "b".to_string()]);
        assert_eq!(b1.u_words(), &[Word::gen(0)]);
        assert_eq!(b1.v_words(), &[Word::gen(1)]);
        let b3 = raw_window_base(&p, 3).unwrap();
        assert_eq!(b3.num_gens(), 6);
        // 3 copies of a^2, 2 amalgamations b[j] = a[j+1]
        assert_eq!(b3.relators().len(), 5);
        assert_eq!(b3.u_words().len(), 4);
    }
}
