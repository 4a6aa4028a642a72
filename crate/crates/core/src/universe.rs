//! Universes `V̇_α -> V_α` as nerves of `Ṡet_α^op -> Set_α^op`, the
//! classification of α-small maps, the direct presheaf-of-presheaves
//! description, the hierarchy, `Ω` and truncation.

use std::collections::HashMap;

use crate::elements::{classify_dfib, elements_to_slice, grothendieck, map_elements, ElementsCategory};
use crate::error::{Error, Result};
use crate::fincat::{FinCategory, FinFunctor, FunctorSearch};
use crate::nerve::{Nerve, NerveAdjunction};
use crate::presheaf::{
    is_pullback_square, pullback, sieve_presheaf, terminal, yoneda_map, HomSearch, Presheaf, PresheafMap,
};
use crate::sets::SkeletalSets;

/// `V̇_α = ν(Ṡet_α^op)`, `V_α = ν(Set_α^op)` and the projection between them.
#[derive(Clone, Debug)]
pub struct Universe {
    adj: NerveAdjunction,
    sets: SkeletalSets,
    v: Nerve,
    vdot: Nerve,
    proj: PresheafMap,
}

impl Universe {
    pub fn adjunction(&self) -> &NerveAdjunction {
        &self.adj
    }

    pub fn base(&self) -> &FinCategory {
        self.adj.base()
    }

    pub fn alpha(&self) -> usize {
        self.sets.alpha()
    }

    pub fn sets(&self) -> &SkeletalSets {
        &self.sets
    }

    pub fn v(&self) -> &Presheaf {
        self.v.presheaf()
    }

    pub fn vdot(&self) -> &Presheaf {
        self.vdot.presheaf()
    }

    pub fn v_nerve(&self) -> &Nerve {
        &self.v
    }

    pub fn vdot_nerve(&self) -> &Nerve {
        &self.vdot
    }

    pub fn proj(&self) -> &PresheafMap {
        &self.proj
    }

    /// The size `A(1_c)` of the family coded by `A ∈ V_α(c)`.
    pub fn code_size(&self, c: usize, a: usize) -> usize {
        self.v.cell(c, a).obj(self.adj.slices().slice(c).terminal)
    }

    /// Every fiber of the projection over a code has the size of that code.
    pub fn check_fibers(&self) -> bool {
        (0..self.base().num_objects()).all(|c| {
            (0..self.v().size(c)).all(|a| {
                let n = self.proj.fiber(c, a).len();
                n == self.code_size(c, a) && n < self.alpha()
            })
        })
    }
}

pub fn build_universe(adj: &NerveAdjunction, alpha: usize) -> Result<Universe> {
    let sets = SkeletalSets::new(alpha)?;
    let v = adj.nerve(sets.set_op())?;
    let vdot = adj.nerve(sets.pointed_op())?;
    let proj = adj.nerve_map(sets.forget_op(), &vdot, &v)?;
    Ok(Universe {
        adj: adj.clone(),
        sets,
        v,
        vdot,
        proj,
    })
}

/// Every fiber `f_c⁻¹(x)` has fewer than `alpha` elements.
pub fn is_small(f: &PresheafMap, alpha: usize) -> bool {
    let base = f.base();
    (0..base.num_objects()).all(|c| {
        let mut counts = vec![0usize; f.target().size(c)];
        for &x in f.component(c) {
            counts[x] += 1;
        }
        counts.into_iter().all(|n| n < alpha)
    })
}

/// The same condition via pullbacks along every element `x: y_c -> X`: the
/// pulled-back family over `y_c` has fewer than `alpha` elements over `1_c`.
pub fn is_small_by_pullbacks(f: &PresheafMap, alpha: usize) -> Result<bool> {
    let x = f.target();
    let base = x.base();
    for c in 0..base.num_objects() {
        let id = base.hom(c, c).position(|m| m == base.identity(c)).expect("identity");
        for e in 0..x.size(c) {
            let pb = pullback(&yoneda_map(x, c, e)?, f)?;
            if pb.left.fiber(c, id).len() >= alpha {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// A classifying map `X -> V_α` together with the top map `Y -> V̇_α`.
#[derive(Clone, Debug)]
pub struct Classification {
    pub map: PresheafMap,
    pub top: PresheafMap,
}

impl Classification {
    /// The square `Y -> V̇`, `Y -> X`, `V̇ -> V`, `X -> V` is a pullback.
    pub fn is_pullback(&self, f: &PresheafMap, u: &Universe) -> bool {
        is_pullback_square(&self.top, f, u.proj(), &self.map)
    }
}

/// Canonical classification: classify `∫f` in Cat and transpose back.
pub fn classify_small(f: &PresheafMap, u: &Universe) -> Result<Classification> {
    if f.base() != u.base() {
        return Err(Error::BaseMismatch);
    }
    if !is_small(f, u.alpha()) {
        return Err(Error::NotSmall { alpha: u.alpha() });
    }
    let (ey, ex) = (grothendieck(f.source()), grothendieck(f.target()));
    let p = crate::elements::DiscreteFibration::new(map_elements(f, &ey, &ex)?)?;
    let cl = classify_dfib(&p, &u.sets)?;
    let adj = &u.adj;
    let map = adj.transpose_to_psh(&cl.bottom, &ex, &u.v)?;
    let top = adj.transpose_to_psh(&cl.top, &ey, &u.vdot)?;
    Ok(Classification { map, top })
}

/// Whether `y: X -> V_α` classifies `f`: the pullback of the projection along
/// `y` is isomorphic to `f` over `X`.
pub fn classifies(y: &PresheafMap, f: &PresheafMap, u: &Universe) -> Result<bool> {
    if y.target() != u.v() || y.source() != f.target() {
        return Ok(false);
    }
    let pb = pullback(y, u.proj())?;
    Ok(crate::presheaf::find_iso_over(&pb.left, f)?.is_some())
}

/// `U(I) = Cat((C/I)^op, Set_α)` and `El(I, A) = A(1_I)` as a presheaf on `∫U`.
#[derive(Clone, Debug)]
pub struct HsUniverse {
    pub u: Presheaf,
    pub elements: ElementsCategory,
    pub el: Presheaf,
    codes: Vec<Vec<FinFunctor>>,
}

impl HsUniverse {
    pub fn code(&self, i: usize, a: usize) -> &FinFunctor {
        &self.codes[i][a]
    }

    /// The family `E -> U` with `E(I) = ∐_{A ∈ U(I)} El(I, A)`.
    pub fn family(&self) -> Result<PresheafMap> {
        elements_to_slice(&self.el, &self.elements)
    }
}

pub fn hs_universe_direct(adj: &NerveAdjunction, alpha: usize) -> Result<HsUniverse> {
    let sets = SkeletalSets::new(alpha)?;
    let base = adj.base();
    let slices = adj.slices();
    let ops: Vec<FinCategory> = (0..base.num_objects())
        .map(|i| slices.slice(i).category().opposite())
        .collect();
    let mut codes = Vec::with_capacity(base.num_objects());
    let mut lookup: Vec<HashMap<Vec<usize>, usize>> = Vec::new();
    for op in &ops {
        let fs = FunctorSearch::new(op, sets.set()).guard(adj.guard()).run()?;
        lookup.push(fs.iter().enumerate().map(|(k, f)| (f.mor_map().to_vec(), k)).collect());
        codes.push(fs);
    }
    let post_op: Vec<FinFunctor> = (0..base.num_morphisms())
        .map(|h| slices.post(h).opposite_between(ops[base.dom(h)].clone(), ops[base.cod(h)].clone()))
        .collect();
    let sets_u = codes
        .iter()
        .map(|v| v.iter().map(FinFunctor::label).collect())
        .collect();
    let u = Presheaf::from_fn(base, sets_u, |h, a| {
        let restricted = codes[base.cod(h)][a].after_unchecked(&post_op[h]);
        lookup[base.dom(h)][restricted.mor_map()]
    });
    let elements = grothendieck(&u);
    let terminal: Vec<usize> = (0..base.num_objects()).map(|i| slices.slice(i).terminal).collect();
    let total = elements.category();
    let el_sets = (0..total.num_objects())
        .map(|o| {
            let (i, a) = elements.element(o);
            (0..codes[i][a].obj(terminal[i])).map(|k| k.to_string()).collect()
        })
        .collect();
    let el = Presheaf::from_fn(total, el_sets, |m, k| {
        let h = elements.projection().mor(m);
        let (i, a) = elements.element(total.cod(m));
        let s = slices.slice(i);
        let to_top = s.to_terminal(s.object_of_arrow(h));
        sets.function(codes[i][a].mor(to_top))[k]
    });
    Ok(HsUniverse {
        u,
        elements,
        el,
        codes,
    })
}

/// The natural isomorphisms `U ≅ V_α` and `E ≅ V̇_α`, commuting with the
/// projections.
#[derive(Clone, Debug)]
pub struct HsComparison {
    pub codes: PresheafMap,
    pub family: PresheafMap,
}

pub fn hs_comparison(hs: &HsUniverse, u: &Universe) -> Result<HsComparison> {
    let base = u.base();
    let slices = u.adj.slices();
    let sets = &u.sets;
    let codes = PresheafMap::new(
        hs.u.clone(),
        u.v().clone(),
        (0..base.num_objects())
            .map(|i| {
                hs.codes[i]
                    .iter()
                    .map(|a| {
                        u.v.index_of(i, a)
                            .ok_or_else(|| Error::InvalidMap("code is not a nerve cell".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?,
    )?;
    let fam = hs.family()?;
    let e = fam.source();
    let mut comps = Vec::with_capacity(base.num_objects());
    for i in 0..base.num_objects() {
        let s = slices.slice(i);
        let sc = s.category();
        let mut row = Vec::with_capacity(e.size(i));
        for idx in 0..e.size(i) {
            let a = fam.apply(i, idx);
            let k = idx - fam.component(i).iter().position(|&x| x == a).expect("fiber is nonempty");
            let code = &hs.codes[i][a];
            let point_at = |o: usize| -> usize { sets.function(code.mor(s.to_terminal(o)))[k] };
            let obj_map: Vec<usize> = (0..sc.num_objects())
                .map(|o| sets.pointed_index(code.obj(o), point_at(o)))
                .collect();
            let mor_map = (0..sc.num_morphisms())
                .map(|m| {
                    sets.pointed_morphism(obj_map[sc.cod(m)], obj_map[sc.dom(m)], sets.function(code.mor(m)))
                        .expect("restriction preserves the point")
                })
                .collect();
            let cell = FinFunctor::new_unchecked(sc.clone(), sets.pointed_op().clone(), obj_map, mor_map);
            row.push(
                u.vdot
                    .index_of(i, &cell)
                    .ok_or_else(|| Error::InvalidMap("pointed code is not a nerve cell".into()))?,
            );
        }
        comps.push(row);
    }
    let family = PresheafMap::new(e.clone(), u.vdot().clone(), comps)?;
    if !codes.is_iso() || !family.is_iso() {
        return Err(Error::NotIso("universe comparison".into()));
    }
    if u.proj().after(&family)? != codes.after(&fam)? {
        return Err(Error::InvalidMap("comparison does not commute with projections".into()));
    }
    Ok(HsComparison { codes, family })
}

/// The square `V̇_α -> V̇_β` over `V_α -> V_β`.
#[derive(Clone, Debug)]
pub struct Hierarchy {
    pub lower: Universe,
    pub upper: Universe,
    pub bottom: PresheafMap,
    pub top: PresheafMap,
}

impl Hierarchy {
    pub fn is_cartesian(&self) -> bool {
        is_pullback_square(&self.top, self.lower.proj(), self.upper.proj(), &self.bottom)
    }

    pub fn all_monic(&self) -> bool {
        self.top.is_mono() && self.bottom.is_mono()
    }

    /// `V_α ↪ V_β` composed with the α-classifier of `f` is its β-classifier.
    pub fn factorization_commutes(&self, f: &PresheafMap) -> Result<bool> {
        let lo = classify_small(f, &self.lower)?;
        let hi = classify_small(f, &self.upper)?;
        Ok(self.bottom.after(&lo.map)? == hi.map && self.top.after(&lo.top)? == hi.top)
    }
}

pub fn hierarchy_square(lower: &Universe, upper: &Universe) -> Result<Hierarchy> {
    if lower.base() != upper.base() {
        return Err(Error::BaseMismatch);
    }
    let (i, idot) = lower.sets.inclusion(&upper.sets)?;
    let i_op = i.opposite_between(lower.sets.set_op().clone(), upper.sets.set_op().clone());
    let idot_op = idot.opposite_between(lower.sets.pointed_op().clone(), upper.sets.pointed_op().clone());
    let adj = &lower.adj;
    let bottom = adj.nerve_map(&i_op, &lower.v, &upper.v)?;
    let top = adj.nerve_map(&idot_op, &lower.vdot, &upper.vdot)?;
    Ok(Hierarchy {
        lower: lower.clone(),
        upper: upper.clone(),
        bottom,
        top,
    })
}

/// `Ω = V_2` with `true: 1 -> Ω`.
#[derive(Clone, Debug)]
pub struct SubobjectClassifier {
    pub universe: Universe,
    pub truth: PresheafMap,
}

impl SubobjectClassifier {
    pub fn omega(&self) -> &Presheaf {
        self.universe.v()
    }

    /// The characteristic map of a mono.
    pub fn classify_sub(&self, m: &PresheafMap) -> Result<PresheafMap> {
        if !m.is_mono() {
            return Err(Error::NotMono);
        }
        Ok(classify_small(m, &self.universe)?.map)
    }

    /// Maps `X -> Ω` whose pullback of `true` is the image of `m`, by search.
    pub fn characteristic_maps(&self, m: &PresheafMap) -> Result<Vec<PresheafMap>> {
        if !m.is_mono() {
            return Err(Error::NotMono);
        }
        let x = m.target();
        let base = x.base();
        let image: Vec<Vec<bool>> = (0..base.num_objects())
            .map(|c| {
                let mut v = vec![false; x.size(c)];
                for &e in m.component(c) {
                    v[e] = true;
                }
                v
            })
            .collect();
        let all = HomSearch::new(x, self.omega()).guard(self.universe.adj.guard()).run()?;
        Ok(all
            .into_iter()
            .filter(|phi| {
                (0..base.num_objects()).all(|c| {
                    (0..x.size(c)).all(|e| (phi.apply(c, e) == self.truth.apply(c, 0)) == image[c][e])
                })
            })
            .collect())
    }

    /// The iso `Ω -> sieves`, `A ↦ {g : A(g) = 1}`.
    pub fn sieve_iso(&self) -> Result<PresheafMap> {
        let u = &self.universe;
        let base = u.base();
        let sp = sieve_presheaf(base);
        let comps = (0..base.num_objects())
            .map(|c| {
                let s = u.adj.slices().slice(c);
                (0..u.v().size(c))
                    .map(|a| {
                        let cell = u.v.cell(c, a);
                        let mut members: Vec<usize> = (0..s.category().num_objects())
                            .filter(|&o| cell.obj(o) == 1)
                            .map(|o| s.arrow(o))
                            .collect();
                        members.sort_unstable();
                        let name = crate::presheaf::set_name(base, &members);
                        sp.element(c, &name).ok_or_else(|| Error::InvalidMap(format!("{name} is not a sieve")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let iso = PresheafMap::new(u.v().clone(), sp, comps)?;
        if !iso.is_iso() {
            return Err(Error::NotIso("sieve comparison".into()));
        }
        Ok(iso)
    }
}

pub fn subobject_classifier(adj: &NerveAdjunction) -> Result<SubobjectClassifier> {
    let universe = build_universe(adj, 2)?;
    let truth = universe.proj().with_source(terminal(adj.base()));
    Ok(SubobjectClassifier { universe, truth })
}

/// `{-}: Ω -> V_α`, `[-]: V_α -> Ω` and `||-|| = {[-]}`.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub omega: Universe,
    pub universe: Universe,
    pub brace: PresheafMap,
    pub support: PresheafMap,
    pub modality: PresheafMap,
    /// `V̇_2 -> V̇_α` over `brace`.
    pub brace_dot: PresheafMap,
}

impl Truncation {
    pub fn is_retraction(&self) -> bool {
        self.support.after_unchecked(&self.brace) == PresheafMap::identity(self.omega.v())
    }

    pub fn is_idempotent(&self) -> bool {
        self.modality.after_unchecked(&self.modality) == self.modality
    }

    pub fn left_square_is_pullback(&self) -> bool {
        is_pullback_square(&self.brace_dot, self.omega.proj(), self.universe.proj(), &self.brace)
    }
}

pub fn truncation(adj: &NerveAdjunction, alpha: usize) -> Result<Truncation> {
    let omega = build_universe(adj, 2)?;
    let universe = build_universe(adj, alpha)?;
    let (s2, sa) = (&omega.sets, &universe.sets);
    let (i, idot) = s2.inclusion(sa)?;
    let p = sa.support(s2)?;
    let i_op = i.opposite_between(s2.set_op().clone(), sa.set_op().clone());
    let idot_op = idot.opposite_between(s2.pointed_op().clone(), sa.pointed_op().clone());
    let p_op = p.opposite_between(sa.set_op().clone(), s2.set_op().clone());
    let brace = adj.nerve_map(&i_op, &omega.v, &universe.v)?;
    let brace_dot = adj.nerve_map(&idot_op, &omega.vdot, &universe.vdot)?;
    let support = adj.nerve_map(&p_op, &universe.v, &omega.v)?;
    let modality = brace.after(&support)?;
    Ok(Truncation {
        omega,
        universe,
        brace,
        support,
        modality,
        brace_dot,
    })
}
