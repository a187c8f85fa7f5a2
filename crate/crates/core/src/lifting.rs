//! Lifting periodic representations through split abelian extensions
//! `A → E → Σ`.
//!
//! All lifts of the shift orbit of a periodic `ρ: K → Σ` form a shift of
//! finite type, presented on the r-window base `B⁽ʳ⁾` (r the least period)
//! by the homomorphisms into E that project onto a window of `ρ`.
//! Two lifts of the same window differ by a twisted cocycle with values in
//! A; lifts conjugate by an element of A differ by a coboundary.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fingroup::{Elem, ElemSet, ExtensionData, FiniteGroup};
use crate::repshift::{BuildOptions, HomSearch, PeriodicRep, RepGraph};
use crate::shiftgraph::CardinalityClass;
use crate::zgroup::{raw_window_base, BasePresentation, Presentation, Word};

/// The preimage of the shift orbit of `rho` under projection E → Σ.
#[derive(Clone, Debug)]
pub struct LiftOrbit {
    pub rho: PeriodicRep,
    pub graph: RepGraph,
    /// For every edge, the rotation `t` of `rho` it projects onto.
    pub rotation: Vec<usize>,
}

impl LiftOrbit {
    pub fn base(&self) -> &BasePresentation {
        &self.graph.base
    }

    /// True if any lift exists at all.
    pub fn has_lift(&self) -> bool {
        self.graph.graph.num_edges() > 0
    }

    pub fn classify(&self) -> CardinalityClass {
        self.graph.classify()
    }

    /// Classes of the irreducible components.
    pub fn component_classes(&self) -> Vec<CardinalityClass> {
        self.graph
            .graph
            .irreducible_components()
            .iter()
            .map(|c| c.classify())
            .collect()
    }

    /// Subgroups of E realized as images of lifts.
    pub fn images(&self) -> Vec<ElemSet> {
        self.graph.realizable_images()
    }

    /// The window of `rho` at rotation `t`, as Σ-values of the base
    /// generators.
    pub fn rho_window(&self, t: usize) -> Vec<Elem> {
        rho_window(self.base(), &self.rho, t)
    }
}

fn rho_window(base: &BasePresentation, rho: &PeriodicRep, t: usize) -> Vec<Elem> {
    base.coords()
        .iter()
        .map(|c| rho.value(c.family, (t + c.index) as i64))
        .collect()
}

fn eval(group: &FiniteGroup, w: &Word, values: &[Elem]) -> Elem {
    w.letters().iter().fold(Elem::IDENTITY, |acc, l| {
        group.mul(acc, group.pow(values[l.gen], l.exp))
    })
}

/// All lifts of the orbit of `rho` through `ext`, as a pruned shift graph.
pub fn lift_orbit_subshift(
    p: &Presentation,
    ext: &ExtensionData,
    rho: &PeriodicRep,
    opts: &BuildOptions,
) -> Result<LiftOrbit> {
    let sigma = ext.quotient();
    let rho = PeriodicRep::new(p, sigma, rho.values().to_vec())?.reduced();
    let r = rho.period();
    let base = raw_window_base(p, r)?;
    let total = ext.total();
    let mut homs = Vec::new();
    for t in 0..r {
        let window = rho_window(&base, &rho, t);
        let mut search = HomSearch::new(total, base.num_gens(), base.relators());
        for (g, &y) in window.iter().enumerate() {
            search.restrict(g, ext.fiber(y));
        }
        homs.extend(search.run(opts.budget)?);
    }
    let graph = RepGraph::from_homs(base, Arc::clone(total), homs)?;
    let windows: Vec<Vec<Elem>> = (0..r).map(|t| rho_window(&graph.base, &rho, t)).collect();
    let rotation = graph
        .edge_values
        .iter()
        .map(|h| {
            let projected: Vec<Elem> = h.iter().map(|&g| ext.project(g)).collect();
            windows
                .iter()
                .position(|w| *w == projected)
                .ok_or_else(|| Error::Invariant("lift edge projects outside the orbit".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LiftOrbit {
        rho,
        graph,
        rotation,
    })
}

/// Whether some lift of `rho` maps onto E.
pub fn exists_surjective_lift(
    p: &Presentation,
    ext: &ExtensionData,
    rho: &PeriodicRep,
    opts: &BuildOptions,
) -> Result<bool> {
    let orbit = lift_orbit_subshift(p, ext, rho, opts)?;
    Ok(orbit.images().contains(&ext.total().all()))
}

/// Values of a twisted cocycle on the generators of a window base, in
/// kernel indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CocycleAssignment {
    pub values: Vec<Elem>,
}

impl CocycleAssignment {
    pub fn trivial(num_gens: usize) -> Self {
        CocycleAssignment {
            values: vec![Elem::IDENTITY; num_gens],
        }
    }

    /// Coordinatewise product.
    pub fn product(&self, other: &CocycleAssignment, ext: &ExtensionData) -> CocycleAssignment {
        let a = ext.kernel();
        CocycleAssignment {
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(&x, &y)| a.mul(x, y))
                .collect(),
        }
    }

    /// `ξ·ρ̃` as E-values.
    pub fn apply(&self, ext: &ExtensionData, lift: &[Elem]) -> Vec<Elem> {
        self.values
            .iter()
            .zip(lift)
            .map(|(&x, &g)| ext.total().mul(ext.include(x), g))
            .collect()
    }
}

/// `ξ(g) = ρ̂(g) ρ̃(g)⁻¹` for two lifts of the same window.
pub fn lift_difference_cocycle(
    base: &BasePresentation,
    ext: &ExtensionData,
    hat: &[Elem],
    tilde: &[Elem],
) -> Result<CocycleAssignment> {
    if hat.len() != base.num_gens() || tilde.len() != base.num_gens() {
        return Err(Error::Domain("lift windows must assign every base generator".into()));
    }
    let e = ext.total();
    let mut values = Vec::with_capacity(hat.len());
    for (&h, &t) in hat.iter().zip(tilde) {
        if ext.project(h) != ext.project(t) {
            return Err(Error::Domain(format!(
                "{} and {} lie over different elements",
                e.display(h),
                e.display(t)
            )));
        }
        let diff = e.mul(h, e.inv(t));
        values.push(ext.restrict(diff).ok_or_else(|| Error::Invariant("difference outside kernel".into()))?);
    }
    let xi = CocycleAssignment { values };
    if !cocycle_check(base, ext, &xi, tilde) {
        return Err(Error::Invariant("difference of lifts is not a cocycle".into()));
    }
    Ok(xi)
}

/// True iff `ξ·ρ̃` satisfies every relator of the base.
pub fn cocycle_check(base: &BasePresentation, ext: &ExtensionData, xi: &CocycleAssignment, tilde: &[Elem]) -> bool {
    if xi.values.len() != base.num_gens() || tilde.len() != base.num_gens() {
        return false;
    }
    let twisted = xi.apply(ext, tilde);
    base.relators()
        .iter()
        .all(|r| eval(ext.total(), r, &twisted) == Elem::IDENTITY)
}

/// Every `a ∈ A` with `ξ(g) = a^{ρ(g)} a⁻¹` on all generators, where `ρ` is
/// the Σ-window and `a^y = s(y) a s(y)⁻¹`.
pub fn coboundary_witnesses(ext: &ExtensionData, xi: &CocycleAssignment, rho: &[Elem]) -> Vec<Elem> {
    let a = ext.kernel();
    a.elems()
        .filter(|&w| {
            xi.values
                .iter()
                .zip(rho)
                .all(|(&x, &y)| x == a.mul(ext.twisted_action(y, w), a.inv(w)))
        })
        .collect()
}

/// First witness in element order, if `ξ` is a coboundary.
pub fn coboundary_witness(ext: &ExtensionData, xi: &CocycleAssignment, rho: &[Elem]) -> Option<Elem> {
    coboundary_witnesses(ext, xi, rho).into_iter().next()
}

/// The lift `g ↦ a⁻¹ ρ̃(g) a` for `a ∈ A`.
pub fn conjugate_lift(ext: &ExtensionData, lift: &[Elem], a: Elem) -> Vec<Elem> {
    let e = ext.total();
    let x = ext.include(a);
    lift.iter().map(|&g| e.mul(e.mul(e.inv(x), g), x)).collect()
}

/// The section lift `s ∘ ρ` of a window.
pub fn section_lift(ext: &ExtensionData, rho: &[Elem]) -> Vec<Elem> {
    rho.iter().map(|&y| ext.section(y)).collect()
}
