//! Base change `F_! ⊣ F^* ⊣ F_*` along a functor `F: C -> D`, sliced functors
//! and the comparison of universes.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::fincat::{is_final, FinCategory, FinFunctor, FunctorSearch, Guard};
use crate::nerve::{Nerve, NerveAdjunction};
use crate::presheaf::{is_pullback_square, yoneda, HomSearch, Presheaf, PresheafMap};
use crate::universe::{build_universe, Universe};

#[derive(Clone, Debug)]
pub struct BaseChange {
    functor: FinFunctor,
    adj_c: NerveAdjunction,
    adj_d: NerveAdjunction,
    sliced: Vec<FinFunctor>,
}

/// `F_!X` together with the class of every generator `(c, g: d -> Fc, x)`.
#[derive(Clone, Debug)]
pub struct LeftExtension {
    pub presheaf: Presheaf,
    classes: Vec<HashMap<(usize, usize, usize), usize>>,
}

impl LeftExtension {
    pub fn class(&self, d: usize, c: usize, g: usize, x: usize) -> usize {
        self.classes[d][&(c, g, x)]
    }
}

/// `F_*X` with `(F_*X)(d) = Hom(F^*y_d, X)`.
#[derive(Clone, Debug)]
pub struct RightExtension {
    pub presheaf: Presheaf,
    families: Vec<Vec<PresheafMap>>,
    lookup: Vec<HashMap<Vec<Vec<usize>>, usize>>,
}

impl RightExtension {
    pub fn family(&self, d: usize, i: usize) -> &PresheafMap {
        &self.families[d][i]
    }

    pub fn index_of(&self, d: usize, comps: &[Vec<usize>]) -> Option<usize> {
        self.lookup[d].get(comps).copied()
    }
}

impl BaseChange {
    pub fn new(functor: &FinFunctor, guard: Guard) -> Result<Self> {
        let adj_c = NerveAdjunction::new(functor.source(), guard);
        let adj_d = NerveAdjunction::new(functor.target(), guard);
        let mut out = BaseChange {
            functor: functor.clone(),
            adj_c,
            adj_d,
            sliced: Vec::new(),
        };
        out.sliced = (0..functor.source().num_objects()).map(|c| out.build_sliced(c)).collect();
        Ok(out)
    }

    pub fn functor(&self) -> &FinFunctor {
        &self.functor
    }

    pub fn source_adjunction(&self) -> &NerveAdjunction {
        &self.adj_c
    }

    pub fn target_adjunction(&self) -> &NerveAdjunction {
        &self.adj_d
    }

    fn guard(&self) -> Guard {
        self.adj_c.guard()
    }

    fn build_sliced(&self, c: usize) -> FinFunctor {
        let f = &self.functor;
        let sc = self.adj_c.slices().slice(c);
        let sd = self.adj_d.slices().slice(f.obj(c));
        let (cc, dc) = (sc.category(), sd.category());
        let obj_map: Vec<usize> = (0..cc.num_objects())
            .map(|o| sd.object_of_arrow(f.mor(sc.arrow(o))))
            .collect();
        let mor_map = (0..cc.num_morphisms())
            .map(|m| sd.morphism_over(f.mor(sc.forgetful().mor(m)), obj_map[cc.cod(m)]))
            .collect();
        FinFunctor::new_unchecked(cc.clone(), dc.clone(), obj_map, mor_map)
    }

    /// `F/c : C/c -> D/Fc`.
    pub fn slice_functor(&self, c: usize) -> &FinFunctor {
        &self.sliced[c]
    }

    /// `D/Fh ∘ F/c = F/c' ∘ C/h` for `h: c -> c'`.
    pub fn slice_square_commutes(&self, h: usize) -> bool {
        let base = self.functor.source();
        let (c, c2) = (base.dom(h), base.cod(h));
        let left = self.adj_d.slices().post(self.functor.mor(h)).after_unchecked(&self.sliced[c]);
        let right = self.sliced[c2].after_unchecked(self.adj_c.slices().post(h));
        left.obj_map() == right.obj_map() && left.mor_map() == right.mor_map()
    }

    pub fn sliced_functors_final(&self) -> bool {
        self.sliced.iter().all(is_final)
    }

    /// `F^*X = X∘F^op`.
    pub fn restrict(&self, x: &Presheaf) -> Result<Presheaf> {
        let f = &self.functor;
        if x.base() != f.target() {
            return Err(Error::BaseMismatch);
        }
        let c = f.source();
        let sets = (0..c.num_objects()).map(|o| x.set(f.obj(o)).to_vec()).collect();
        Ok(Presheaf::from_fn(c, sets, |m, e| x.act(f.mor(m), e)))
    }

    pub fn restrict_map(&self, g: &PresheafMap) -> Result<PresheafMap> {
        let f = &self.functor;
        let (s, t) = (self.restrict(g.source())?, self.restrict(g.target())?);
        let comps = (0..f.source().num_objects())
            .map(|o| g.component(f.obj(o)).to_vec())
            .collect();
        Ok(PresheafMap::new_unchecked(s, t, comps))
    }

    /// Pointwise colimit: `∐_{c, g: d -> Fc} X(c)` modulo the zig-zag relation,
    /// each class represented by its least generator.
    pub fn lan(&self, x: &Presheaf) -> Result<LeftExtension> {
        let f = &self.functor;
        let (c, d) = (f.source(), f.target());
        if x.base() != c {
            return Err(Error::BaseMismatch);
        }
        let mut gens: Vec<Vec<(usize, usize, usize)>> = Vec::with_capacity(d.num_objects());
        let mut total: u128 = 0;
        for e in 0..d.num_objects() {
            let mut v = Vec::new();
            for o in 0..c.num_objects() {
                for g in d.hom(e, f.obj(o)) {
                    for xi in 0..x.size(o) {
                        v.push((o, g, xi));
                    }
                }
            }
            total += v.len() as u128;
            gens.push(v);
        }
        self.guard().check(total)?;
        let mut sets: Vec<Vec<String>> = Vec::with_capacity(d.num_objects());
        let mut classes: Vec<HashMap<(usize, usize, usize), usize>> = Vec::with_capacity(d.num_objects());
        let mut reps: Vec<Vec<(usize, usize, usize)>> = Vec::with_capacity(d.num_objects());
        for (e, gs) in gens.iter().enumerate() {
            let index: HashMap<(usize, usize, usize), usize> = gs.iter().enumerate().map(|(i, &t)| (t, i)).collect();
            let mut parent: Vec<usize> = (0..gs.len()).collect();
            fn find(p: &mut [usize], mut i: usize) -> usize {
                while p[i] != i {
                    p[i] = p[p[i]];
                    i = p[i];
                }
                i
            }
            for u in 0..c.num_morphisms() {
                let (a, b) = (c.dom(u), c.cod(u));
                for g in d.hom(e, f.obj(a)) {
                    let fg = d.comp(f.mor(u), g);
                    for xb in 0..x.size(b) {
                        let i = index[&(b, fg, xb)];
                        let j = index[&(a, g, x.act(u, xb))];
                        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                        if ri != rj {
                            parent[ri.max(rj)] = ri.min(rj);
                        }
                    }
                }
            }
            let mut firsts: Vec<usize> = Vec::new();
            let mut slot: HashMap<usize, usize> = HashMap::new();
            let mut cls = HashMap::with_capacity(gs.len());
            for (i, &t) in gs.iter().enumerate() {
                let r = find(&mut parent, i);
                let k = *slot.entry(r).or_insert_with(|| {
                    firsts.push(r);
                    firsts.len() - 1
                });
                cls.insert(t, k);
            }
            reps.push(firsts.iter().map(|&r| gs[r]).collect());
            sets.push(
                firsts
                    .iter()
                    .map(|&r| {
                        let (o, g, xi) = gs[r];
                        format!("({},{},{})", c.object_name(o), d.morphism_name(g), x.element_name(o, xi))
                    })
                    .collect(),
            );
            classes.push(cls);
        }
        let presheaf = Presheaf::from_fn(d, sets, |h, k| {
            let (o, g, xi) = reps[d.cod(h)][k];
            classes[d.dom(h)][&(o, d.comp(g, h), xi)]
        });
        Ok(LeftExtension { presheaf, classes })
    }

    /// Pointwise limit: compatible families `Hom(F^*y_d, X)`.
    pub fn ran(&self, x: &Presheaf) -> Result<RightExtension> {
        let f = &self.functor;
        let (c, d) = (f.source(), f.target());
        if x.base() != c {
            return Err(Error::BaseMismatch);
        }
        let mut families = Vec::with_capacity(d.num_objects());
        let mut lookup = Vec::with_capacity(d.num_objects());
        let mut reps = Vec::with_capacity(d.num_objects());
        for e in 0..d.num_objects() {
            let ry = self.restrict(&yoneda(d, e)?)?;
            let fams = HomSearch::new(&ry, x).guard(self.guard()).run()?;
            lookup.push(
                fams.iter()
                    .enumerate()
                    .map(|(i, p)| (p.components().to_vec(), i))
                    .collect::<HashMap<_, _>>(),
            );
            families.push(fams);
            reps.push(ry);
        }
        let sets = families
            .iter()
            .map(|fams| {
                fams.iter()
                    .map(|p| {
                        let parts: Vec<&str> = (0..c.num_objects())
                            .flat_map(|o| p.component(o).iter().map(move |&v| x.element_name(o, v)))
                            .collect();
                        format!("({})", parts.join(","))
                    })
                    .collect()
            })
            .collect();
        let homs: Vec<Vec<Vec<usize>>> = (0..d.num_objects())
            .map(|e| (0..c.num_objects()).map(|o| d.hom(f.obj(o), e).collect()).collect())
            .collect();
        let pos: Vec<Vec<HashMap<usize, usize>>> = homs
            .iter()
            .map(|per| per.iter().map(|v| v.iter().enumerate().map(|(i, &g)| (g, i)).collect()).collect())
            .collect();
        let presheaf = Presheaf::from_fn(d, sets, |h, k| {
            let (lo, hi) = (d.dom(h), d.cod(h));
            let fam = &families[hi][k];
            let comps: Vec<Vec<usize>> = (0..c.num_objects())
                .map(|o| {
                    homs[lo][o]
                        .iter()
                        .map(|&g| fam.apply(o, pos[hi][o][&d.comp(h, g)]))
                        .collect()
                })
                .collect();
            lookup[lo][&comps]
        });
        Ok(RightExtension {
            presheaf,
            families,
            lookup,
        })
    }

    /// `F_*g : F_*X -> F_*X'`, postcomposing each family with `g`.
    pub fn ran_map(&self, g: &PresheafMap, rx: &RightExtension, rx2: &RightExtension) -> Result<PresheafMap> {
        let d = self.functor.target();
        let comps = (0..d.num_objects())
            .map(|e| {
                rx.families[e]
                    .iter()
                    .map(|fam| {
                        let moved = g.after_unchecked(fam);
                        rx2.index_of(e, moved.components())
                            .ok_or_else(|| Error::InvalidMap("image family missing".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        PresheafMap::new(rx.presheaf.clone(), rx2.presheaf.clone(), comps)
    }

    /// The unit `η_Y : Y -> F_*F^*Y`, `y ↦ (g ↦ Y(g)y)`.
    pub fn ran_unit(&self, y: &Presheaf) -> Result<(RightExtension, PresheafMap)> {
        let f = &self.functor;
        let (c, d) = (f.source(), f.target());
        let ext = self.ran(&self.restrict(y)?)?;
        let comps = (0..d.num_objects())
            .map(|e| {
                (0..y.size(e))
                    .map(|yi| {
                        let fam: Vec<Vec<usize>> = (0..c.num_objects())
                            .map(|o| d.hom(f.obj(o), e).map(|g| y.act(g, yi)).collect())
                            .collect();
                        ext.index_of(e, &fam)
                            .ok_or_else(|| Error::InvalidMap("unit family missing".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let eta = PresheafMap::new(y.clone(), ext.presheaf.clone(), comps)?;
        Ok((ext, eta))
    }

    /// `Hom(F_!X, Z) ≅ Hom(X, F^*Z)`, checked by enumerating both sides and
    /// the two transposes.
    pub fn check_lan_adjunction(&self, x: &Presheaf, z: &Presheaf) -> Result<bool> {
        let f = &self.functor;
        let (c, d) = (f.source(), f.target());
        let lx = self.lan(x)?;
        let rz = self.restrict(z)?;
        let left = HomSearch::new(&lx.presheaf, z).guard(self.guard()).run()?;
        let right = HomSearch::new(x, &rz).guard(self.guard()).run()?;
        if left.len() != right.len() {
            return Ok(false);
        }
        let to_right = |phi: &PresheafMap| -> Result<PresheafMap> {
            let comps = (0..c.num_objects())
                .map(|o| {
                    let fo = f.obj(o);
                    (0..x.size(o))
                        .map(|xi| phi.apply(fo, lx.class(fo, o, d.identity(fo), xi)))
                        .collect()
                })
                .collect();
            PresheafMap::new(x.clone(), rz.clone(), comps)
        };
        let to_left = |psi: &PresheafMap| -> Result<PresheafMap> {
            let mut comps: Vec<Vec<Option<usize>>> =
                (0..d.num_objects()).map(|e| vec![None; lx.presheaf.size(e)]).collect();
            for (e, row) in comps.iter_mut().enumerate() {
                for (&(o, g, xi), &k) in &lx.classes[e] {
                    let v = z.act(g, psi.apply(o, xi));
                    match row[k] {
                        Some(w) if w != v => return Err(Error::InvalidMap("transpose is not well defined".into())),
                        _ => row[k] = Some(v),
                    }
                }
            }
            let comps = comps.into_iter().map(|r| r.into_iter().map(|v| v.unwrap_or(0)).collect()).collect();
            PresheafMap::new(lx.presheaf.clone(), z.clone(), comps)
        };
        for phi in &left {
            let psi = to_right(phi)?;
            if !right.contains(&psi) || to_left(&psi)? != *phi {
                return Ok(false);
            }
        }
        for psi in &right {
            if to_right(&to_left(psi)?)? != *psi {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `Hom(Z, F_*X) ≅ Hom(F^*Z, X)`, checked the same way.
    pub fn check_ran_adjunction(&self, x: &Presheaf, z: &Presheaf) -> Result<bool> {
        let f = &self.functor;
        let (c, d) = (f.source(), f.target());
        let rx = self.ran(x)?;
        let rz = self.restrict(z)?;
        let left = HomSearch::new(z, &rx.presheaf).guard(self.guard()).run()?;
        let right = HomSearch::new(&rz, x).guard(self.guard()).run()?;
        if left.len() != right.len() {
            return Ok(false);
        }
        let id_pos: Vec<usize> = (0..c.num_objects())
            .map(|o| {
                let fo = f.obj(o);
                d.hom(fo, fo).position(|g| g == d.identity(fo)).expect("identity")
            })
            .collect();
        let to_right = |phi: &PresheafMap| -> Result<PresheafMap> {
            let comps = (0..c.num_objects())
                .map(|o| {
                    let fo = f.obj(o);
                    (0..z.size(fo))
                        .map(|zi| rx.family(fo, phi.apply(fo, zi)).apply(o, id_pos[o]))
                        .collect()
                })
                .collect();
            PresheafMap::new(rz.clone(), x.clone(), comps)
        };
        let to_left = |psi: &PresheafMap| -> Result<PresheafMap> {
            let comps = (0..d.num_objects())
                .map(|e| {
                    (0..z.size(e))
                        .map(|zi| {
                            let fam: Vec<Vec<usize>> = (0..c.num_objects())
                                .map(|o| d.hom(f.obj(o), e).map(|g| psi.apply(o, z.act(g, zi))).collect())
                                .collect();
                            rx.index_of(e, &fam)
                                .ok_or_else(|| Error::InvalidMap("family is not compatible".into()))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            PresheafMap::new(z.clone(), rx.presheaf.clone(), comps)
        };
        for phi in &left {
            let psi = to_right(phi)?;
            if !right.contains(&psi) || to_left(&psi)? != *phi {
                return Ok(false);
            }
        }
        for psi in &right {
            if to_right(&to_left(psi)?)? != *psi {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `(ν_F)_A : F^*ν_D(A) -> ν_C(A)`, `P ↦ P∘F/c`.
    pub fn nu_comparison(&self, nd: &Nerve, nc: &Nerve) -> Result<PresheafMap> {
        if nd.target() != nc.target() {
            return Err(Error::BaseMismatch);
        }
        let f = &self.functor;
        let source = self.restrict(nd.presheaf())?;
        let comps = (0..f.source().num_objects())
            .map(|c| {
                nd.cells(f.obj(c))
                    .iter()
                    .map(|p| {
                        nc.index_of(c, &p.after_unchecked(&self.sliced[c]))
                            .ok_or_else(|| Error::InvalidMap("restricted cell is not a nerve cell".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        PresheafMap::new(source, nc.presheaf().clone(), comps)
    }

    pub fn nu_comparison_for(&self, a: &FinCategory) -> Result<PresheafMap> {
        let nd = self.adj_d.nerve(a)?;
        let nc = self.adj_c.nerve(a)?;
        self.nu_comparison(&nd, &nc)
    }

    pub fn universe_square(&self, alpha: usize) -> Result<UniverseSquare> {
        let ud = build_universe(&self.adj_d, alpha)?;
        let uc = build_universe(&self.adj_c, alpha)?;
        let gamma = self.nu_comparison(ud.v_nerve(), uc.v_nerve())?;
        let gamma_dot = self.nu_comparison(ud.vdot_nerve(), uc.vdot_nerve())?;
        let left = self.restrict_map(ud.proj())?;
        Ok(UniverseSquare {
            source: uc,
            target: ud,
            gamma,
            gamma_dot,
            left,
        })
    }

    /// The comparison square for universes is a pointwise pullback.
    pub fn check_universe_basechange(&self, alpha: usize) -> Result<bool> {
        Ok(self.universe_square(alpha)?.is_pullback())
    }

    /// Independent check: every square `C/c -> Ṡet^op`, `D/Fc -> Set^op` over
    /// `F/c` has exactly one diagonal filler.
    pub fn check_lifting(&self, alpha: usize) -> Result<bool> {
        let sq = self.universe_square(alpha)?;
        let (uc, ud) = (&sq.source, &sq.target);
        let sets = uc.sets();
        let forget = sets.forget_op();
        for c in 0..self.functor.source().num_objects() {
            let fc = self.functor.obj(c);
            let sl = &self.sliced[c];
            let (cc, dc) = (sl.source(), sl.target());
            for (bi, b) in ud.v_nerve().cells(fc).iter().enumerate() {
                let image = sq.gamma.apply(c, bi);
                for ti in uc.proj().fiber(c, image) {
                    let t = uc.vdot_nerve().cell(c, ti);
                    let fillers = FunctorSearch::new(dc, sets.pointed_op())
                        .guard(self.guard())
                        .objects(|o, p| {
                            forget.obj(p) == b.obj(o)
                                && (0..cc.num_objects()).all(|k| sl.obj(k) != o || t.obj(k) == p)
                        })
                        .morphisms(|m, p| {
                            forget.mor(p) == b.mor(m)
                                && (0..cc.num_morphisms()).all(|k| sl.mor(k) != m || t.mor(k) == p)
                        })
                        .run()?;
                    if fillers.len() != 1 {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

/// `F^*V̇_D -> V̇_C` over `F^*V_D -> V_C`.
#[derive(Clone, Debug)]
pub struct UniverseSquare {
    pub source: Universe,
    pub target: Universe,
    pub gamma: PresheafMap,
    pub gamma_dot: PresheafMap,
    pub left: PresheafMap,
}

impl UniverseSquare {
    pub fn is_pullback(&self) -> bool {
        is_pullback_square(&self.gamma_dot, &self.left, self.source.proj(), &self.gamma)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::presheaf::{constant, empty, terminal};

    fn point_at(target: &FinCategory, o: usize) -> FinFunctor {
        FinFunctor::point(target, o)
    }

    #[test]
    fn restrict_examples() {
        let two = catalog::arrow();
        let bc = BaseChange::new(&point_at(&two, 1), Guard::default()).unwrap();
        assert_eq!(bc.restrict(&yoneda(&two, 1).unwrap()).unwrap().sizes(), vec![1]);
        assert_eq!(bc.restrict(&terminal(&two)).unwrap(), terminal(&catalog::terminal()));
        let id = BaseChange::new(&FinFunctor::identity(&two), Guard::default()).unwrap();
        let x = yoneda(&two, 0).unwrap();
        assert_eq!(id.restrict(&x).unwrap(), x);
    }

    #[test]
    fn kan_examples() {
        let two = catalog::arrow();
        let collapse = FinFunctor::constant(&two, &catalog::terminal(), 0);
        let bc = BaseChange::new(&collapse, Guard::default()).unwrap();
        let y0 = yoneda(&two, 0).unwrap();
        assert_eq!(bc.lan(&y0).unwrap().presheaf.sizes(), vec![1]);
        assert_eq!(bc.ran(&y0).unwrap().presheaf.sizes(), vec![0]);
        assert_eq!(bc.lan(&empty(&two)).unwrap().presheaf.sizes(), vec![0]);
        assert_eq!(bc.ran(&terminal(&two)).unwrap().presheaf.sizes(), vec![1]);
        let c2 = constant(&two, 2);
        assert_eq!(bc.lan(&c2).unwrap().presheaf.sizes(), vec![2]);
        let id = BaseChange::new(&FinFunctor::identity(&two), Guard::default()).unwrap();
        for x in [y0.clone(), c2.clone(), yoneda(&two, 1).unwrap()] {
            assert_eq!(id.lan(&x).unwrap().presheaf.sizes(), x.sizes());
            assert_eq!(id.ran(&x).unwrap().presheaf.sizes(), x.sizes());
        }
    }

    #[test]
    fn adjunctions() {
        let two = catalog::arrow();
        let one = catalog::terminal();
        let fs = [
            point_at(&two, 0),
            point_at(&two, 1),
            FinFunctor::constant(&two, &one, 0),
            FinFunctor::identity(&two),
        ];
        for f in &fs {
            let bc = BaseChange::new(f, Guard::default()).unwrap();
            let (c, d) = (f.source(), f.target());
            let xs = [terminal(c), constant(c, 2), yoneda(c, 0).unwrap()];
            let zs = [terminal(d), constant(d, 2), yoneda(d, d.num_objects() - 1).unwrap()];
            for x in &xs {
                for z in &zs {
                    assert!(bc.check_lan_adjunction(x, z).unwrap());
                    assert!(bc.check_ran_adjunction(x, z).unwrap());
                }
            }
        }
    }

    #[test]
    fn sliced_functors() {
        let two = catalog::arrow();
        let bc = BaseChange::new(&point_at(&two, 1), Guard::default()).unwrap();
        let s = bc.slice_functor(0);
        let target = bc.target_adjunction().slices().slice(1);
        assert_eq!(s.obj(0), target.terminal);
        assert!(bc.sliced_functors_final());
        for c in catalog::default_categories() {
            let bc = BaseChange::new(&FinFunctor::identity(&c), Guard::default()).unwrap();
            for h in 0..c.num_morphisms() {
                assert!(bc.slice_square_commutes(h));
            }
            assert!(bc.sliced_functors_final());
        }
    }

    #[test]
    fn nu_comparison_examples() {
        let two = catalog::arrow();
        let bc = BaseChange::new(&point_at(&two, 1), Guard::default()).unwrap();
        let sets = crate::sets::SkeletalSets::new(2).unwrap();
        let g = bc.nu_comparison_for(sets.set_op()).unwrap();
        assert_eq!(g.source().sizes(), vec![3]);
        assert_eq!(g.target().sizes(), vec![2]);
        assert!(g.is_epi());
        let one = catalog::terminal();
        let g = bc.nu_comparison_for(&one).unwrap();
        assert_eq!(g.source().sizes(), vec![1]);
    }

    #[test]
    fn universe_basechange() {
        let two = catalog::arrow();
        let one = catalog::terminal();
        let cases = [
            (point_at(&two, 0), vec![2, 3]),
            (point_at(&two, 1), vec![2, 3]),
            (FinFunctor::constant(&two, &one, 0), vec![3]),
            (FinFunctor::identity(&two), vec![2, 3]),
        ];
        for (f, alphas) in cases {
            let bc = BaseChange::new(&f, Guard::default()).unwrap();
            for a in alphas {
                assert!(bc.check_universe_basechange(a).unwrap());
                assert!(bc.check_lifting(a).unwrap());
            }
        }
    }
}
