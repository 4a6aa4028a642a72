//! The nerve `ν_C(A)(c) = Cat(C/c, A)`, right adjoint to `∫_C`.

use std::collections::HashMap;

use crate::elements::{grothendieck, map_elements, ElementsCategory};
use crate::error::{Error, Result};
use crate::fincat::{FinCategory, FinFunctor, FunctorSearch, Guard, SliceFamily};
use crate::presheaf::{Presheaf, PresheafMap};

/// Slices of a base category, cached for building nerves over it.
#[derive(Clone, Debug)]
pub struct NerveAdjunction {
    slices: SliceFamily,
    guard: Guard,
}

/// `ν_C(A)` with its cells kept as functors `C/c -> A`.
#[derive(Clone, Debug)]
pub struct Nerve {
    target: FinCategory,
    presheaf: Presheaf,
    cells: Vec<Vec<FinFunctor>>,
    lookup: Vec<HashMap<Vec<usize>, usize>>,
}

impl Nerve {
    pub fn target(&self) -> &FinCategory {
        &self.target
    }

    pub fn presheaf(&self) -> &Presheaf {
        &self.presheaf
    }

    pub fn cell(&self, c: usize, i: usize) -> &FinFunctor {
        &self.cells[c][i]
    }

    pub fn cells(&self, c: usize) -> &[FinFunctor] {
        &self.cells[c]
    }

    /// Index of a functor `C/c -> A` among the cells at `c`.
    pub fn index_of(&self, c: usize, p: &FinFunctor) -> Option<usize> {
        self.lookup[c].get(p.mor_map()).copied()
    }
}

impl NerveAdjunction {
    pub fn new(base: &FinCategory, guard: Guard) -> Self {
        NerveAdjunction {
            slices: SliceFamily::new(base),
            guard,
        }
    }

    pub fn base(&self) -> &FinCategory {
        self.slices.base()
    }

    pub fn slices(&self) -> &SliceFamily {
        &self.slices
    }

    pub fn guard(&self) -> Guard {
        self.guard
    }

    pub fn nerve(&self, a: &FinCategory) -> Result<Nerve> {
        let base = self.base();
        let mut cells = Vec::with_capacity(base.num_objects());
        let mut lookup = Vec::with_capacity(base.num_objects());
        for c in 0..base.num_objects() {
            let fs = FunctorSearch::new(self.slices.slice(c).category(), a)
                .guard(self.guard)
                .run()?;
            lookup.push(
                fs.iter()
                    .enumerate()
                    .map(|(i, f)| (f.mor_map().to_vec(), i))
                    .collect::<HashMap<_, _>>(),
            );
            cells.push(fs);
        }
        let sets = cells
            .iter()
            .map(|v| v.iter().map(FinFunctor::label).collect())
            .collect();
        let presheaf = Presheaf::from_fn(base, sets, |h, i| {
            let p = cells[base.cod(h)][i].after_unchecked(self.slices.post(h));
            lookup[base.dom(h)][p.mor_map()]
        });
        Ok(Nerve {
            target: a.clone(),
            presheaf,
            cells,
            lookup,
        })
    }

    /// `ν(G): ν(A) -> ν(B)`, post-composition with `G`.
    pub fn nerve_map(&self, g: &FinFunctor, na: &Nerve, nb: &Nerve) -> Result<PresheafMap> {
        if g.source() != &na.target || g.target() != &nb.target {
            return Err(Error::BaseMismatch);
        }
        let comps = (0..self.base().num_objects())
            .map(|c| {
                na.cells[c]
                    .iter()
                    .map(|p| nb.index_of(c, &g.after_unchecked(p)).expect("composite is a cell"))
                    .collect()
            })
            .collect();
        Ok(PresheafMap::new_unchecked(na.presheaf.clone(), nb.presheaf.clone(), comps))
    }

    /// `C/x : C/c -> ∫X` for `x ∈ X(c)`, `(d,g) ↦ (d, X(g)(x))`.
    pub fn unit_cell(&self, el: &ElementsCategory, c: usize, x: usize) -> FinFunctor {
        let s = self.slices.slice(c);
        let sc = s.category();
        let px = el.presheaf();
        let obj_map = (0..sc.num_objects())
            .map(|o| {
                let g = s.arrow(o);
                el.object(s.forgetful().obj(o), px.act(g, x))
            })
            .collect();
        let mor_map = (0..sc.num_morphisms())
            .map(|m| {
                let k = s.forgetful().mor(m);
                el.morphism(k, px.act(s.arrow(sc.cod(m)), x))
            })
            .collect();
        FinFunctor::new_unchecked(sc.clone(), el.category().clone(), obj_map, mor_map)
    }

    /// `η_X : X -> ν(∫X)`.
    pub fn unit(&self, el: &ElementsCategory, nu: &Nerve) -> Result<PresheafMap> {
        if nu.target() != el.category() {
            return Err(Error::BaseMismatch);
        }
        let x = el.presheaf();
        let comps = (0..self.base().num_objects())
            .map(|c| {
                (0..x.size(c))
                    .map(|e| nu.index_of(c, &self.unit_cell(el, c, e)).expect("unit cell is a functor"))
                    .collect()
            })
            .collect();
        Ok(PresheafMap::new_unchecked(x.clone(), nu.presheaf.clone(), comps))
    }

    /// `ε_A : ∫ν(A) -> A`, `(c,P) ↦ P(1_c)`.
    pub fn counit(&self, nu: &Nerve, el: &ElementsCategory) -> Result<FinFunctor> {
        if el.presheaf() != nu.presheaf() {
            return Err(Error::BaseMismatch);
        }
        self.transpose_cells(el, &nu.target, |c, i| &nu.cells[c][i])
    }

    /// `ε ∘ ∫g : ∫X -> A` for `g: X -> ν(A)`.
    pub fn transpose_to_cat(&self, g: &PresheafMap, nu: &Nerve, el: &ElementsCategory) -> Result<FinFunctor> {
        if g.target() != nu.presheaf() || el.presheaf() != g.source() {
            return Err(Error::BaseMismatch);
        }
        self.transpose_cells(el, &nu.target, |c, x| &nu.cells[c][g.apply(c, x)])
    }

    /// The functor `∫X -> A` sending `(c,x)` to `cell(c,x)(1_c)`, for any
    /// assignment of cells `C/c -> A` to elements.
    pub fn transpose_cells<'a>(
        &self,
        el: &ElementsCategory,
        a: &FinCategory,
        cell: impl Fn(usize, usize) -> &'a FinFunctor,
    ) -> Result<FinFunctor> {
        let base = self.base();
        let total = el.category();
        let x = el.presheaf();
        let obj_map = (0..total.num_objects())
            .map(|o| {
                let (c, e) = el.element(o);
                cell(c, e).obj(self.slices.slice(c).terminal)
            })
            .collect();
        let mut mor_map = vec![0; total.num_morphisms()];
        for h in 0..base.num_morphisms() {
            let c = base.cod(h);
            let s = self.slices.slice(c);
            let to_top = s.to_terminal(s.object_of_arrow(h));
            for e in 0..x.size(c) {
                mor_map[el.morphism(h, e)] = cell(c, e).mor(to_top);
            }
        }
        FinFunctor::new(total.clone(), a.clone(), obj_map, mor_map)
    }

    /// The cell `F ∘ C/x` for `F: ∫X -> A`.
    pub fn transpose_cell(&self, f: &FinFunctor, el: &ElementsCategory, c: usize, x: usize) -> FinFunctor {
        f.after_unchecked(&self.unit_cell(el, c, x))
    }

    /// `ν(F) ∘ η : X -> ν(A)` for `F: ∫X -> A`.
    pub fn transpose_to_psh(&self, f: &FinFunctor, el: &ElementsCategory, nu: &Nerve) -> Result<PresheafMap> {
        if f.source() != el.category() || f.target() != nu.target() {
            return Err(Error::BaseMismatch);
        }
        let x = el.presheaf();
        let comps = (0..self.base().num_objects())
            .map(|c| {
                (0..x.size(c))
                    .map(|e| {
                        nu.index_of(c, &self.transpose_cell(f, el, c, e))
                            .ok_or_else(|| Error::InvalidFunctor("transpose is not a cell".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PresheafMap::new_unchecked(x.clone(), nu.presheaf.clone(), comps))
    }

    /// `(ε∫) ∘ (∫η) = id`, evaluated cell by cell.
    pub fn check_left_triangle(&self, el: &ElementsCategory) -> Result<bool> {
        let f = self.transpose_cells_owned(el, |c, x| self.unit_cell(el, c, x))?;
        Ok(f == FinFunctor::identity(el.category()))
    }

    /// `(νε) ∘ (ην) = id`: `ε ∘ C/P = P` for every cell `P` of `ν(A)`.
    pub fn check_right_triangle(&self, nu: &Nerve) -> Result<bool> {
        let el = grothendieck(nu.presheaf());
        let eps = self.counit(nu, &el)?;
        for c in 0..self.base().num_objects() {
            for (i, p) in nu.cells[c].iter().enumerate() {
                if eps.after_unchecked(&self.unit_cell(&el, c, i)) != *p {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn transpose_cells_owned(
        &self,
        el: &ElementsCategory,
        cell: impl Fn(usize, usize) -> FinFunctor,
    ) -> Result<FinFunctor> {
        let x = el.presheaf();
        let cells: Vec<Vec<FinFunctor>> = (0..self.base().num_objects())
            .map(|c| (0..x.size(c)).map(|e| cell(c, e)).collect())
            .collect();
        self.transpose_cells(el, el.category(), |c, e| &cells[c][e])
    }

    /// The unit naturality square at `f: Y -> X` is a pullback, checked
    /// fiberwise: for every `x ∈ X(c)`, `y ↦ C/y` is a bijection from
    /// `f_c⁻¹(x)` onto the functors `P: C/c -> ∫Y` with `∫f ∘ P = C/x`.
    pub fn check_unit_pullback(&self, f: &PresheafMap) -> Result<bool> {
        let (ey, ex) = (grothendieck(f.source()), grothendieck(f.target()));
        let ff = map_elements(f, &ey, &ex)?;
        let base = self.base();
        for c in 0..base.num_objects() {
            let sc = self.slices.slice(c).category();
            for x in 0..f.target().size(c) {
                let cx = self.unit_cell(&ex, c, x);
                let lifts = FunctorSearch::new(sc, ey.category())
                    .objects(|o, t| ff.obj(t) == cx.obj(o))
                    .morphisms(|m, t| ff.mor(t) == cx.mor(m))
                    .guard(self.guard)
                    .run()?;
                let fiber = f.fiber(c, x);
                if lifts.len() != fiber.len() {
                    return Ok(false);
                }
                for y in fiber {
                    let cy = self.unit_cell(&ey, c, y);
                    if ff.after_unchecked(&cy) != cx || !lifts.contains(&cy) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::fincat::enumerate_functors;
    use crate::presheaf::{constant, is_pullback_square, terminal, yoneda, HomSearch};

    #[test]
    fn nerve_sizes() {
        let two = catalog::arrow();
        let adj = NerveAdjunction::new(&two, Guard::default());
        assert_eq!(adj.nerve(&two).unwrap().presheaf().sizes(), vec![2, 3]);
        let one = catalog::terminal();
        for c in catalog::default_categories() {
            let adj = NerveAdjunction::new(&c, Guard::default());
            assert!(adj.nerve(&one).unwrap().presheaf().sizes().iter().all(|&n| n == 1));
        }
        let adj1 = NerveAdjunction::new(&one, Guard::default());
        for a in catalog::default_categories() {
            assert_eq!(adj1.nerve(&a).unwrap().presheaf().sizes(), vec![a.num_objects()]);
        }
    }

    #[test]
    fn nerve_is_a_presheaf() {
        for c in catalog::default_categories().into_iter().take(6) {
            let adj = NerveAdjunction::new(&c, Guard::default());
            for a in catalog::default_categories().into_iter().take(4) {
                let nu = adj.nerve(&a).unwrap();
                let p = nu.presheaf();
                Presheaf::new(c.clone(), p.sets().to_vec(), (0..c.num_morphisms()).map(|m| p.action(m).to_vec()).collect())
                    .unwrap();
            }
        }
    }

    #[test]
    fn unit_of_representable_sends_identity_to_identity() {
        let tri = catalog::triangle();
        let adj = NerveAdjunction::new(&tri, Guard::default());
        for c in 0..3 {
            let y = yoneda(&tri, c).unwrap();
            let el = grothendieck(&y);
            let id_pos = tri.hom(c, c).position(|m| m == tri.identity(c)).unwrap();
            let cell = adj.unit_cell(&el, c, id_pos);
            assert!(cell.is_iso());
            let nu = adj.nerve(el.category()).unwrap();
            let eta = adj.unit(&el, &nu).unwrap();
            assert!(eta.is_mono());
        }
    }

    #[test]
    fn adjunction_bijection_and_triangles() {
        let cats = catalog::default_categories();
        for c in cats.iter().take(6) {
            let adj = NerveAdjunction::new(c, Guard::default());
            let xs = [terminal(c), constant(c, 2), yoneda(c, 0).unwrap()];
            for a in cats.iter().take(4) {
                let nu = adj.nerve(a).unwrap();
                assert!(adj.check_right_triangle(&nu).unwrap());
                for x in &xs {
                    let el = grothendieck(x);
                    assert!(adj.check_left_triangle(&el).unwrap());
                    let Ok(functors) = enumerate_functors(el.category(), a, Guard::default()) else {
                        continue;
                    };
                    let maps = HomSearch::new(x, nu.presheaf()).run().unwrap();
                    assert_eq!(maps.len(), functors.len());
                    for g in &maps {
                        let f = adj.transpose_to_cat(g, &nu, &el).unwrap();
                        assert_eq!(adj.transpose_to_psh(&f, &el, &nu).unwrap(), *g);
                    }
                    for f in &functors {
                        let g = adj.transpose_to_psh(f, &el, &nu).unwrap();
                        assert_eq!(adj.transpose_to_cat(&g, &nu, &el).unwrap(), *f);
                    }
                }
            }
        }
    }

    #[test]
    fn unit_pullback_matches_full_square() {
        let two = catalog::arrow();
        let adj = NerveAdjunction::new(&two, Guard::default());
        let x = terminal(&two);
        let y = constant(&two, 2);
        let f = PresheafMap::to_terminal(&y);
        assert!(adj.check_unit_pullback(&f).unwrap());
        let (ey, ex) = (grothendieck(&y), grothendieck(&x));
        let (ny, nx) = (adj.nerve(ey.category()).unwrap(), adj.nerve(ex.category()).unwrap());
        let top = adj.unit(&ey, &ny).unwrap();
        let bottom = adj.unit(&ex, &nx).unwrap();
        let right = adj.nerve_map(&map_elements(&f, &ey, &ex).unwrap(), &ny, &nx).unwrap();
        assert!(is_pullback_square(&top, &f, &right, &bottom));
        let id = PresheafMap::identity(&y);
        assert!(adj.check_unit_pullback(&id).unwrap());
    }
}
