//! Categories of elements, discrete fibrations and their classification.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::fincat::{comma, is_cat_pullback, is_final, pi0, CategoryBuilder, FinCategory, FinFunctor, Guard};
use crate::presheaf::{HomSearch, Presheaf, PresheafMap};
use crate::sets::SkeletalSets;

/// A functor with unique lifts: for every total object `e` and base morphism
/// `h` into `p(e)` there is exactly one total morphism over `h` into `e`.
#[derive(Clone, Debug)]
pub struct DiscreteFibration {
    projection: FinFunctor,
    fibers: Vec<Vec<usize>>,
    position: Vec<usize>,
    lifts: HashMap<(usize, usize), usize>,
}

impl DiscreteFibration {
    pub fn new(projection: FinFunctor) -> Result<Self> {
        let (e, b) = (projection.source(), projection.target());
        let mut fibers = vec![Vec::new(); b.num_objects()];
        let mut position = vec![0; e.num_objects()];
        for x in 0..e.num_objects() {
            let over = projection.obj(x);
            position[x] = fibers[over].len();
            fibers[over].push(x);
        }
        let mut lifts = HashMap::new();
        for k in 0..e.num_morphisms() {
            if lifts.insert((projection.mor(k), e.cod(k)), k).is_some() {
                return Err(Error::NotDiscreteFibration(format!(
                    "two lifts of `{}` into `{}`",
                    b.morphism_name(projection.mor(k)),
                    e.object_name(e.cod(k))
                )));
            }
        }
        for x in 0..e.num_objects() {
            for &h in b.incoming(projection.obj(x)) {
                if !lifts.contains_key(&(h, x)) {
                    return Err(Error::NotDiscreteFibration(format!(
                        "no lift of `{}` into `{}`",
                        b.morphism_name(h),
                        e.object_name(x)
                    )));
                }
            }
        }
        Ok(DiscreteFibration {
            projection,
            fibers,
            position,
            lifts,
        })
    }

    pub fn projection(&self) -> &FinFunctor {
        &self.projection
    }

    pub fn total(&self) -> &FinCategory {
        self.projection.source()
    }

    pub fn base(&self) -> &FinCategory {
        self.projection.target()
    }

    /// Total objects over `b`, in index order.
    pub fn fiber(&self, b: usize) -> &[usize] {
        &self.fibers[b]
    }

    /// Index of a total object within its fiber.
    pub fn position(&self, e: usize) -> usize {
        self.position[e]
    }

    /// The unique total morphism over `h` with codomain `e`.
    pub fn lift(&self, h: usize, e: usize) -> usize {
        self.lifts[&(h, e)]
    }

    /// The presheaf on the base whose value at `b` is the fiber over `b`.
    pub fn to_presheaf(&self) -> Presheaf {
        let (e, b) = (self.total(), self.base());
        let sets = self
            .fibers
            .iter()
            .map(|f| f.iter().map(|&x| e.object_name(x).to_string()).collect())
            .collect();
        Presheaf::from_fn(b, sets, |h, i| {
            let k = self.lift(h, self.fibers[b.cod(h)][i]);
            self.position[e.dom(k)]
        })
    }
}

/// `∫X` with its projection; object `(c,x)` sits at `obj_offset[c] + x` and
/// the morphism over `h: a -> b` into `(b,x)` at `mor_offset[h] + x`.
#[derive(Clone, Debug)]
pub struct ElementsCategory {
    presheaf: Presheaf,
    fibration: DiscreteFibration,
    obj_offset: Vec<usize>,
    mor_offset: Vec<usize>,
}

impl ElementsCategory {
    pub fn presheaf(&self) -> &Presheaf {
        &self.presheaf
    }

    pub fn category(&self) -> &FinCategory {
        self.fibration.total()
    }

    pub fn projection(&self) -> &FinFunctor {
        self.fibration.projection()
    }

    pub fn fibration(&self) -> &DiscreteFibration {
        &self.fibration
    }

    pub fn object(&self, c: usize, x: usize) -> usize {
        self.obj_offset[c] + x
    }

    /// `(c, x)` for an object of `∫X`.
    pub fn element(&self, o: usize) -> (usize, usize) {
        let c = self.projection().obj(o);
        (c, o - self.obj_offset[c])
    }

    /// The morphism `(a, X(h)(x)) -> (b, x)` over `h: a -> b`.
    pub fn morphism(&self, h: usize, x: usize) -> usize {
        self.mor_offset[h] + x
    }
}

/// The Grothendieck construction.
pub fn grothendieck(x: &Presheaf) -> ElementsCategory {
    let base = x.base();
    let mut b = CategoryBuilder::new();
    let mut obj_offset = Vec::with_capacity(base.num_objects());
    for c in 0..base.num_objects() {
        obj_offset.push(b.num_objects());
        for e in x.set(c) {
            b.add_object(format!("({},{e})", base.object_name(c)));
        }
    }
    let name = |c: usize, e: usize| format!("({},{})", base.object_name(c), x.element_name(c, e));
    let mut mor_offset = Vec::with_capacity(base.num_morphisms());
    let mut under: Vec<(usize, usize)> = Vec::new();
    for h in 0..base.num_morphisms() {
        mor_offset.push(under.len());
        let (a, c) = (base.dom(h), base.cod(h));
        for e in 0..x.size(c) {
            let src = obj_offset[a] + x.act(h, e);
            let tgt = obj_offset[c] + e;
            let m = if base.is_identity(h) {
                let m = b.add_morphism(format!("id_{}", name(c, e)), src, tgt);
                b.set_identity(tgt, m);
                m
            } else {
                b.add_morphism(
                    format!("{}:{}->{}", base.morphism_name(h), name(a, x.act(h, e)), name(c, e)),
                    src,
                    tgt,
                )
            };
            debug_assert_eq!(m, under.len());
            under.push((h, e));
        }
    }
    let total = b
        .build(|g, f| {
            let ((k, e), (h, _)) = (under[g], under[f]);
            mor_offset[base.comp(k, h)] + e
        })
        .expect("category of elements");
    let projection = FinFunctor::new_unchecked(
        total.clone(),
        base.clone(),
        (0..base.num_objects())
            .flat_map(|c| std::iter::repeat_n(c, x.size(c)))
            .collect(),
        under.iter().map(|u| u.0).collect(),
    );
    let fibration = DiscreteFibration::new(projection).expect("elements form a discrete fibration");
    ElementsCategory {
        presheaf: x.clone(),
        fibration,
        obj_offset,
        mor_offset,
    }
}

/// `∫f : ∫Y -> ∫X`, `(c,y) ↦ (c, f_c(y))`.
pub fn map_elements(f: &PresheafMap, ey: &ElementsCategory, ex: &ElementsCategory) -> Result<FinFunctor> {
    if ey.presheaf() != f.source() || ex.presheaf() != f.target() {
        return Err(Error::BaseMismatch);
    }
    let base = f.base();
    let (cy, cx) = (ey.category(), ex.category());
    let obj_map = (0..cy.num_objects())
        .map(|o| {
            let (c, y) = ey.element(o);
            ex.object(c, f.apply(c, y))
        })
        .collect();
    let mut mor_map = vec![0; cy.num_morphisms()];
    for h in 0..base.num_morphisms() {
        for y in 0..f.source().size(base.cod(h)) {
            mor_map[ey.morphism(h, y)] = ex.morphism(h, f.apply(base.cod(h), y));
        }
    }
    Ok(FinFunctor::new_unchecked(cy.clone(), cx.clone(), obj_map, mor_map))
}

/// The classifying pair of a discrete fibration `p: E -> B`.
#[derive(Clone, Debug)]
pub struct Classified {
    /// `B -> Set_α^op`.
    pub bottom: FinFunctor,
    /// `E -> Ṡet_α^op`.
    pub top: FinFunctor,
}

/// Canonical classifying functor: the fiber over `b` becomes `{0..n}` in
/// total-object order, and each total object is pointed by its position.
pub fn classify_dfib(p: &DiscreteFibration, sets: &SkeletalSets) -> Result<Classified> {
    let (e, b) = (p.total(), p.base());
    for o in 0..b.num_objects() {
        if p.fiber(o).len() >= sets.alpha() {
            return Err(Error::FiberTooLarge {
                object: b.object_name(o).to_string(),
                size: p.fiber(o).len(),
                alpha: sets.alpha(),
            });
        }
    }
    let restriction = |h: usize| -> Vec<usize> {
        p.fiber(b.cod(h))
            .iter()
            .map(|&x| p.position(e.dom(p.lift(h, x))))
            .collect()
    };
    let bottom = FinFunctor::new(
        b.clone(),
        sets.set_op().clone(),
        (0..b.num_objects()).map(|o| p.fiber(o).len()).collect(),
        (0..b.num_morphisms())
            .map(|h| sets.morphism(p.fiber(b.cod(h)).len(), p.fiber(b.dom(h)).len(), &restriction(h)))
            .collect(),
    )?;
    let point = |x: usize| sets.pointed_index(p.fiber(p.projection().obj(x)).len(), p.position(x));
    let top = FinFunctor::new(
        e.clone(),
        sets.pointed_op().clone(),
        (0..e.num_objects()).map(point).collect(),
        (0..e.num_morphisms())
            .map(|k| {
                let f = restriction(p.projection().mor(k));
                sets.pointed_morphism(point(e.cod(k)), point(e.dom(k)), &f)
                    .expect("lift of a point is pointed")
            })
            .collect(),
    )?;
    Ok(Classified { bottom, top })
}

/// Whether the canonical square of a classification is a strict pullback
/// against `Ṡet_α^op -> Set_α^op`.
pub fn classifies(p: &DiscreteFibration, c: &Classified, sets: &SkeletalSets) -> bool {
    is_cat_pullback(&c.top, p.projection(), sets.forget_op(), &c.bottom)
}

/// The isomorphism `E ≅ ∫(classified presheaf)` over the base.
pub fn reclassify_iso(p: &DiscreteFibration, c: &Classified, sets: &SkeletalSets) -> Result<(ElementsCategory, FinFunctor)> {
    let x = sets.functor_to_presheaf(&c.bottom);
    let el = grothendieck(&x);
    let e = p.total();
    let obj_map: Vec<usize> = (0..e.num_objects())
        .map(|o| el.object(p.projection().obj(o), p.position(o)))
        .collect();
    let mor_map = (0..e.num_morphisms())
        .map(|k| el.morphism(p.projection().mor(k), p.position(e.cod(k))))
        .collect();
    let f = FinFunctor::new(e.clone(), el.category().clone(), obj_map, mor_map)?;
    if !f.is_iso() || el.projection().after(&f)? != *p.projection() {
        return Err(Error::NotIso("reclassification".into()));
    }
    Ok((el, f))
}

/// The family `f: E -> U` as a presheaf on `∫U`: value at `(c,u)` is the
/// fiber of `f_c` over `u`.
pub fn slice_to_elements(f: &PresheafMap, eu: &ElementsCategory) -> Result<Presheaf> {
    if eu.presheaf() != f.target() {
        return Err(Error::BaseMismatch);
    }
    let total = eu.category();
    let fibers: Vec<Vec<usize>> = (0..total.num_objects())
        .map(|o| {
            let (c, u) = eu.element(o);
            f.fiber(c, u)
        })
        .collect();
    let pos: Vec<HashMap<usize, usize>> = fibers
        .iter()
        .map(|v| v.iter().enumerate().map(|(i, &e)| (e, i)).collect())
        .collect();
    let sets = (0..total.num_objects())
        .map(|o| {
            let c = eu.element(o).0;
            fibers[o].iter().map(|&e| f.source().element_name(c, e).to_string()).collect()
        })
        .collect();
    Ok(Presheaf::from_fn(total, sets, |k, i| {
        let h = eu.projection().mor(k);
        let e = fibers[total.cod(k)][i];
        pos[total.dom(k)][&f.source().act(h, e)]
    }))
}

/// The family over `U` with `E(c) = ∐_{u ∈ U(c)} P(c,u)`, elements `(u,p)`.
pub fn elements_to_slice(p: &Presheaf, eu: &ElementsCategory) -> Result<PresheafMap> {
    if p.base() != eu.category() {
        return Err(Error::BaseMismatch);
    }
    let u = eu.presheaf();
    let base = u.base();
    let mut pairs: Vec<Vec<(usize, usize)>> = Vec::with_capacity(base.num_objects());
    let mut lookup: Vec<HashMap<(usize, usize), usize>> = Vec::with_capacity(base.num_objects());
    for c in 0..base.num_objects() {
        let mut v = Vec::new();
        let mut lk = HashMap::new();
        for a in 0..u.size(c) {
            for q in 0..p.size(eu.object(c, a)) {
                lk.insert((a, q), v.len());
                v.push((a, q));
            }
        }
        pairs.push(v);
        lookup.push(lk);
    }
    let sets = (0..base.num_objects())
        .map(|c| {
            pairs[c]
                .iter()
                .map(|&(a, q)| format!("({},{})", u.element_name(c, a), p.element_name(eu.object(c, a), q)))
                .collect()
        })
        .collect();
    let e = Presheaf::from_fn(base, sets, |h, i| {
        let (a, q) = pairs[base.cod(h)][i];
        let k = eu.morphism(h, a);
        lookup[base.dom(h)][&(u.act(h, a), p.act(k, q))]
    });
    let comps = pairs.iter().map(|v| v.iter().map(|pq| pq.0).collect()).collect();
    Ok(PresheafMap::new_unchecked(e, u.clone(), comps))
}

/// The comparison `E' -> E` over `U` after a round trip through `∫U`.
pub fn slice_round_trip_iso(f: &PresheafMap, eu: &ElementsCategory) -> Result<PresheafMap> {
    let back = elements_to_slice(&slice_to_elements(f, eu)?, eu)?;
    let base = f.base();
    let comps = (0..base.num_objects())
        .map(|c| {
            (0..back.source().size(c))
                .map(|i| {
                    let a = back.apply(c, i);
                    let before = (0..i).filter(|&j| back.apply(c, j) == a).count();
                    f.fiber(c, a)[before]
                })
                .collect()
        })
        .collect();
    let iso = PresheafMap::new(back.source().clone(), f.source().clone(), comps)?;
    if !iso.is_iso() || f.after(&iso)? != back {
        return Err(Error::NotIso("slice round trip".into()));
    }
    Ok(iso)
}

/// The comparison `P' -> P` after a round trip through slices over `U`.
pub fn elements_round_trip_iso(p: &Presheaf, eu: &ElementsCategory) -> Result<PresheafMap> {
    let f = elements_to_slice(p, eu)?;
    let p2 = slice_to_elements(&f, eu)?;
    // fibers of `f` are contiguous blocks `(u,0), (u,1), ...`
    let comps = p2.sizes().into_iter().map(|n| (0..n).collect()).collect();
    let iso = PresheafMap::new(p2, p.clone(), comps)?;
    if !iso.is_iso() {
        return Err(Error::NotIso("elements round trip".into()));
    }
    Ok(iso)
}

/// `F = dfib ∘ final` with the middle category `∫P`, `P(d) = π0(d/F)`.
#[derive(Clone, Debug)]
pub struct Comprehensive {
    pub presheaf: Presheaf,
    pub elements: ElementsCategory,
    pub final_part: FinFunctor,
}

impl Comprehensive {
    pub fn dfib(&self) -> &DiscreteFibration {
        self.elements.fibration()
    }
}

pub fn comprehensive_factorization(f: &FinFunctor) -> Result<Comprehensive> {
    let (c, d) = (f.source(), f.target());
    let commas = (0..d.num_objects()).map(|x| comma(f, x)).collect::<Result<Vec<_>>>()?;
    let mut comp_of: Vec<HashMap<(usize, usize), usize>> = Vec::new();
    let mut sets = Vec::new();
    for cm in &commas {
        let comps = pi0(&cm.category);
        let mut lk = HashMap::new();
        for (i, comp) in comps.iter().enumerate() {
            for &o in comp {
                lk.insert((cm.right.obj(o), cm.connecting[o]), i);
            }
        }
        sets.push(comps.iter().map(|v| cm.category.object_name(v[0]).to_string()).collect());
        comp_of.push(lk);
    }
    let reps: Vec<Vec<(usize, usize)>> = commas
        .iter()
        .map(|cm| {
            pi0(&cm.category)
                .iter()
                .map(|v| (cm.right.obj(v[0]), cm.connecting[v[0]]))
                .collect()
        })
        .collect();
    let p = Presheaf::from_fn(d, sets, |h, i| {
        let (x, g) = reps[d.cod(h)][i];
        comp_of[d.dom(h)][&(x, d.comp(g, h))]
    });
    let el = grothendieck(&p);
    let obj_map: Vec<usize> = (0..c.num_objects())
        .map(|o| el.object(f.obj(o), comp_of[f.obj(o)][&(o, d.identity(f.obj(o)))]))
        .collect();
    let mor_map = (0..c.num_morphisms())
        .map(|u| {
            let cod = c.cod(u);
            el.morphism(f.mor(u), el.element(obj_map[cod]).1)
        })
        .collect();
    let final_part = FinFunctor::new(c.clone(), el.category().clone(), obj_map, mor_map)?;
    Ok(Comprehensive {
        presheaf: p,
        elements: el,
        final_part,
    })
}

/// Brute-force uniqueness check: every factorization of `F` through a
/// discrete fibration `∫Q -> D` (values of `Q` below `sets.alpha()`) with
/// final left part is isomorphic over `D` to the comprehensive one. Returns
/// the number of competing factorizations examined.
pub fn factorization_unique_by_search(f: &FinFunctor, sets: &SkeletalSets, guard: Guard) -> Result<Option<usize>> {
    let ours = comprehensive_factorization(f)?;
    let d = f.target();
    let mut examined = 0;
    for q_fun in crate::fincat::FunctorSearch::new(&d.opposite(), sets.set()).guard(guard).run()? {
        let q_op = q_fun.opposite_between(d.clone(), sets.set_op().clone());
        let q = sets.functor_to_presheaf(&q_op);
        let el = grothendieck(&q);
        let c = f.source();
        let lifts = crate::fincat::FunctorSearch::new(c, el.category())
            .objects(|o, t| el.projection().obj(t) == f.obj(o))
            .morphisms(|m, t| el.projection().mor(t) == f.mor(m))
            .guard(guard)
            .run()?;
        for l in lifts {
            if !is_final(&l) {
                continue;
            }
            examined += 1;
            if !iso_over(&ours, &q, &el, &l)? {
                return Ok(None);
            }
        }
    }
    Ok(Some(examined))
}

fn iso_over(ours: &Comprehensive, q: &Presheaf, el: &ElementsCategory, l: &FinFunctor) -> Result<bool> {
    if ours.presheaf.sizes() != q.sizes() {
        return Ok(false);
    }
    for iso in HomSearch::new(&ours.presheaf, q).injective().run()? {
        let phi = map_elements(&iso, &ours.elements, el)?;
        if phi.after(&ours.final_part)? == *l {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::fincat::{enumerate_functors, slice};
    use crate::presheaf::{constant, pullback, subpresheaf, terminal, yoneda};

    #[test]
    fn elements_of_terminal_is_the_base() {
        for c in catalog::default_categories() {
            let el = grothendieck(&terminal(&c));
            assert!(el.projection().is_iso());
        }
    }

    #[test]
    fn elements_of_representable_is_the_slice() {
        for c in catalog::default_categories() {
            for o in 0..c.num_objects() {
                let el = grothendieck(&yoneda(&c, o).unwrap());
                let s = slice(&c, o).unwrap();
                assert_eq!(el.category().num_objects(), s.category().num_objects());
                assert_eq!(el.category().num_morphisms(), s.category().num_morphisms());
                let isos: Vec<_> = enumerate_functors(el.category(), s.category(), Guard::default())
                    .unwrap()
                    .into_iter()
                    .filter(|f| f.is_iso() && s.forgetful().after(f).unwrap() == *el.projection())
                    .collect();
                assert_eq!(isos.len(), 1);
            }
        }
    }

    #[test]
    fn elements_of_constant_two_on_arrow() {
        let two = catalog::arrow();
        let el = grothendieck(&constant(&two, 2));
        assert_eq!(el.category().num_objects(), 4);
        assert_eq!(el.category().non_identity_count(), 2);
        el.category().check_laws().unwrap();
    }

    #[test]
    fn map_elements_of_mono_is_injective() {
        let two = catalog::arrow();
        let x = constant(&two, 3);
        let (s, m) = subpresheaf(&x, &[vec![0, 2], vec![2]]).unwrap();
        let f = map_elements(&m, &grothendieck(&s), &grothendieck(&x)).unwrap();
        f.check().unwrap();
        assert!(f.is_injective());
        let id = PresheafMap::identity(&x);
        let ex = grothendieck(&x);
        assert_eq!(map_elements(&id, &ex, &ex).unwrap(), FinFunctor::identity(ex.category()));
    }

    #[test]
    fn elements_preserve_pullbacks() {
        let tri = catalog::triangle();
        let x = terminal(&tri);
        let y = constant(&tri, 2);
        let z = yoneda(&tri, 2).unwrap();
        let f = PresheafMap::to_terminal(&y).with_target(x.clone());
        let g = PresheafMap::to_terminal(&z).with_target(x.clone());
        let pb = pullback(&f, &g).unwrap();
        let (ep, ey, ez, ex) = (grothendieck(&pb.object), grothendieck(&y), grothendieck(&z), grothendieck(&x));
        let top = map_elements(&pb.right, &ep, &ez).unwrap();
        let left = map_elements(&pb.left, &ep, &ey).unwrap();
        let right = map_elements(&g, &ez, &ex).unwrap();
        let bottom = map_elements(&f, &ey, &ex).unwrap();
        assert!(is_cat_pullback(&top, &left, &right, &bottom));
    }

    #[test]
    fn classification_of_fibrations() {
        let s3 = SkeletalSets::new(3).unwrap();
        for c in catalog::default_categories() {
            let one = grothendieck(&terminal(&c));
            let cl = classify_dfib(one.fibration(), &s3).unwrap();
            assert!(cl.bottom.obj_map().iter().all(|&n| n == 1));
            assert!(classifies(one.fibration(), &cl, &s3));
            for o in 0..c.num_objects() {
                let y = yoneda(&c, o).unwrap();
                let el = grothendieck(&y);
                match classify_dfib(el.fibration(), &s3) {
                    Ok(cl) => {
                        assert!(classifies(el.fibration(), &cl, &s3));
                        assert_eq!(cl.bottom.obj_map(), y.sizes().as_slice());
                        let (_, iso) = reclassify_iso(el.fibration(), &cl, &s3).unwrap();
                        assert!(iso.is_iso());
                    }
                    Err(Error::FiberTooLarge { size, .. }) => assert!(size >= 3),
                    Err(e) => panic!("{e}"),
                }
            }
        }
        let two = catalog::arrow();
        let y0 = grothendieck(&yoneda(&two, 0).unwrap());
        let cl = classify_dfib(y0.fibration(), &s3).unwrap();
        assert_eq!(cl.bottom.obj(1), 0);
        let big = grothendieck(&constant(&two, 3));
        assert!(matches!(classify_dfib(big.fibration(), &s3), Err(Error::FiberTooLarge { .. })));
    }

    #[test]
    fn non_fibration_is_rejected() {
        let two = catalog::arrow();
        // the identity-only category over the arrow has no lift of `f`
        let disc = catalog::discrete(2);
        let q = FinFunctor::new(disc.clone(), two.clone(), vec![0, 1], vec![0, 1]).unwrap();
        assert!(matches!(DiscreteFibration::new(q), Err(Error::NotDiscreteFibration(_))));
    }

    #[test]
    fn slice_elements_round_trips() {
        let two = catalog::arrow();
        let u = constant(&two, 2);
        let eu = grothendieck(&u);
        let id = PresheafMap::identity(&u);
        let p = slice_to_elements(&id, &eu).unwrap();
        assert!(p.sizes().iter().all(|&n| n == 1));
        let iso = slice_round_trip_iso(&id, &eu).unwrap();
        assert!(iso.is_iso());
        let y = constant(&two, 3);
        let f = PresheafMap::new(
            y.clone(),
            u.clone(),
            vec![vec![0, 1, 1], vec![0, 1, 1]],
        )
        .unwrap();
        assert!(slice_round_trip_iso(&f, &eu).unwrap().is_iso());
        let p = slice_to_elements(&f, &eu).unwrap();
        assert!(elements_round_trip_iso(&p, &eu).unwrap().is_iso());
        // coproduct formula: E(c) = ∐_u P(c,u)
        let back = elements_to_slice(&p, &eu).unwrap();
        for c in 0..2 {
            let total: usize = (0..u.size(c)).map(|a| p.size(eu.object(c, a))).sum();
            assert_eq!(back.source().size(c), total);
        }
    }

    #[test]
    fn comprehensive_examples() {
        let two = catalog::arrow();
        let pick0 = FinFunctor::point(&two, 0);
        let cf = comprehensive_factorization(&pick0).unwrap();
        assert_eq!(cf.presheaf.sizes(), vec![1, 0]);
        assert!(cf.final_part.is_iso());
        assert!(is_final(&cf.final_part));
        let id = FinFunctor::identity(&two);
        let cf = comprehensive_factorization(&id).unwrap();
        assert!(cf.dfib().projection().is_iso());
        for c in catalog::default_categories() {
            for d in catalog::default_categories().into_iter().take(4) {
                for f in enumerate_functors(&c, &d, Guard::default()).unwrap() {
                    let cf = comprehensive_factorization(&f).unwrap();
                    assert_eq!(cf.dfib().projection().after(&cf.final_part).unwrap(), f);
                    assert!(is_final(&cf.final_part));
                }
            }
        }
    }

    #[test]
    fn comprehensive_is_unique() {
        let s3 = SkeletalSets::new(3).unwrap();
        let cats = catalog::default_categories();
        for c in cats.iter().take(4) {
            for d in cats.iter().take(4) {
                for f in enumerate_functors(c, d, Guard::default()).unwrap() {
                    let n = factorization_unique_by_search(&f, &s3, Guard::default()).unwrap();
                    let small = comprehensive_factorization(&f).unwrap().presheaf.sizes().iter().all(|&s| s < 3);
                    assert!(n.is_some());
                    assert!(!small || n.unwrap() >= 1);
                }
            }
        }
    }
}
