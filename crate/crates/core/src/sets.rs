//! Skeletal finite sets `Set_α` and pointed sets `Ṡet_α`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::fincat::{CategoryBuilder, FinCategory, FinFunctor};
use crate::presheaf::Presheaf;

/// Largest supported cardinal bound.
pub const MAX_ALPHA: usize = 4;

fn fun_name(m: usize, n: usize, f: &[usize]) -> String {
    let vals: Vec<String> = f.iter().map(usize::to_string).collect();
    format!("{m}->{n}[{}]", vals.join(","))
}

fn all_functions(m: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..n).map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out
}

/// `Set_α` (objects `0..α`, all functions) and `Ṡet_α` (objects `(n,i)`,
/// point-preserving functions) with the forgetful functor and opposites.
#[derive(Clone, Debug)]
pub struct SkeletalSets {
    alpha: usize,
    set: FinCategory,
    pointed: FinCategory,
    forget: FinFunctor,
    set_op: FinCategory,
    pointed_op: FinCategory,
    forget_op: FinFunctor,
    functions: Vec<Vec<usize>>,
    fun_index: HashMap<(usize, usize, Vec<usize>), usize>,
    pointed_objects: Vec<(usize, usize)>,
    pointed_index: HashMap<(usize, usize), usize>,
    pointed_fun_index: HashMap<(usize, usize, Vec<usize>), usize>,
}

impl SkeletalSets {
    pub fn new(alpha: usize) -> Result<Self> {
        if !(2..=MAX_ALPHA).contains(&alpha) {
            return Err(Error::InvalidAlpha(alpha));
        }
        let mut b = CategoryBuilder::new();
        let mut functions = Vec::new();
        let mut sig: Vec<(usize, usize)> = Vec::new();
        let mut fun_index = HashMap::new();
        for n in 0..alpha {
            let id = b.num_morphisms();
            b.add_object_with_identity(n.to_string());
            let f: Vec<usize> = (0..n).collect();
            fun_index.insert((n, n, f.clone()), id);
            functions.push(f);
            sig.push((n, n));
        }
        for m in 0..alpha {
            for n in 0..alpha {
                for f in all_functions(m, n) {
                    if m == n && f.iter().enumerate().all(|(i, &v)| i == v) {
                        continue;
                    }
                    let idx = b.add_morphism(fun_name(m, n, &f), m, n);
                    fun_index.insert((m, n, f.clone()), idx);
                    functions.push(f);
                    sig.push((m, n));
                }
            }
        }
        let set = b
            .build(|g, f| {
                let gf: Vec<usize> = functions[f].iter().map(|&x| functions[g][x]).collect();
                fun_index[&(sig[f].0, sig[g].1, gf)]
            })
            .expect("Set_alpha is a category");

        let pointed_objects: Vec<(usize, usize)> = (1..alpha).flat_map(|n| (0..n).map(move |i| (n, i))).collect();
        let pointed_index: HashMap<(usize, usize), usize> =
            pointed_objects.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        let mut pb = CategoryBuilder::new();
        let mut pfun: Vec<(usize, usize, Vec<usize>)> = Vec::new();
        let mut pointed_fun_index = HashMap::new();
        for (k, &(n, i)) in pointed_objects.iter().enumerate() {
            let id = pb.num_morphisms();
            pb.add_object_with_identity(format!("({n},{i})"));
            let f: Vec<usize> = (0..n).collect();
            pointed_fun_index.insert((k, k, f.clone()), id);
            pfun.push((k, k, f));
        }
        for (k, &(m, i)) in pointed_objects.iter().enumerate() {
            for (l, &(n, j)) in pointed_objects.iter().enumerate() {
                for f in all_functions(m, n) {
                    if f[i] != j || (k == l && f.iter().enumerate().all(|(a, &v)| a == v)) {
                        continue;
                    }
                    let name = format!("({m},{i})->({n},{j})[{}]", join(&f));
                    let idx = pb.add_morphism(name, k, l);
                    pointed_fun_index.insert((k, l, f.clone()), idx);
                    pfun.push((k, l, f));
                }
            }
        }
        let pointed = pb
            .build(|g, f| {
                let (a, _, ref ff) = pfun[f];
                let (_, c, ref gg) = pfun[g];
                let gf: Vec<usize> = ff.iter().map(|&x| gg[x]).collect();
                pointed_fun_index[&(a, c, gf)]
            })
            .expect("pointed sets form a category");
        let forget = FinFunctor::new(
            pointed.clone(),
            set.clone(),
            pointed_objects.iter().map(|p| p.0).collect(),
            pfun.iter()
                .map(|(k, l, f)| fun_index[&(pointed_objects[*k].0, pointed_objects[*l].0, f.clone())])
                .collect(),
        )
        .expect("forgetful functor");
        let set_op = set.opposite();
        let pointed_op = pointed.opposite();
        let forget_op = forget.opposite_between(pointed_op.clone(), set_op.clone());
        Ok(SkeletalSets {
            alpha,
            set,
            pointed,
            forget,
            set_op,
            pointed_op,
            forget_op,
            functions,
            fun_index,
            pointed_objects,
            pointed_index,
            pointed_fun_index,
        })
    }

    pub fn alpha(&self) -> usize {
        self.alpha
    }

    /// `Set_α`.
    pub fn set(&self) -> &FinCategory {
        &self.set
    }

    /// `Ṡet_α`.
    pub fn pointed(&self) -> &FinCategory {
        &self.pointed
    }

    pub fn forget(&self) -> &FinFunctor {
        &self.forget
    }

    pub fn set_op(&self) -> &FinCategory {
        &self.set_op
    }

    pub fn pointed_op(&self) -> &FinCategory {
        &self.pointed_op
    }

    /// `Ṡet_α^op -> Set_α^op`.
    pub fn forget_op(&self) -> &FinFunctor {
        &self.forget_op
    }

    /// The function underlying a morphism of `Set_α`.
    pub fn function(&self, m: usize) -> &[usize] {
        &self.functions[m]
    }

    /// The morphism `m -> n` of `Set_α` given by `f`.
    pub fn morphism(&self, m: usize, n: usize, f: &[usize]) -> usize {
        self.fun_index[&(m, n, f.to_vec())]
    }

    /// `(n, i)` for an object of `Ṡet_α`.
    pub fn pointed_object(&self, k: usize) -> (usize, usize) {
        self.pointed_objects[k]
    }

    pub fn pointed_index(&self, n: usize, i: usize) -> usize {
        self.pointed_index[&(n, i)]
    }

    /// The morphism `(m,i) -> (n,j)` of `Ṡet_α` given by `f`, if `f(i) = j`.
    pub fn pointed_morphism(&self, from: usize, to: usize, f: &[usize]) -> Option<usize> {
        self.pointed_fun_index.get(&(from, to, f.to_vec())).copied()
    }

    /// Inclusions `Set_α ↪ Set_β` and `Ṡet_α ↪ Ṡet_β` for `α ≤ β`.
    pub fn inclusion(&self, bigger: &SkeletalSets) -> Result<(FinFunctor, FinFunctor)> {
        if self.alpha > bigger.alpha {
            return Err(Error::InvalidAlpha(bigger.alpha));
        }
        let set = FinFunctor::new(
            self.set.clone(),
            bigger.set.clone(),
            (0..self.alpha).collect(),
            (0..self.set.num_morphisms())
                .map(|m| bigger.morphism(self.set.dom(m), self.set.cod(m), &self.functions[m]))
                .collect(),
        )?;
        let pointed = FinFunctor::new(
            self.pointed.clone(),
            bigger.pointed.clone(),
            self.pointed_objects
                .iter()
                .map(|&(n, i)| bigger.pointed_index(n, i))
                .collect(),
            (0..self.pointed.num_morphisms())
                .map(|m| bigger.morphism_by_name(&bigger.pointed, self.pointed.morphism_name(m)))
                .collect(),
        )?;
        Ok((set, pointed))
    }

    fn morphism_by_name(&self, cat: &FinCategory, name: &str) -> usize {
        cat.morphism_index(name).expect("shared naming scheme")
    }

    /// `p: Set_α -> Set_2`, sending `0` to `0` and every nonempty set to `1`.
    pub fn support(&self, two: &SkeletalSets) -> Result<FinFunctor> {
        if two.alpha != 2 {
            return Err(Error::InvalidAlpha(two.alpha));
        }
        let p = |n: usize| n.min(1);
        FinFunctor::new(
            self.set.clone(),
            two.set.clone(),
            (0..self.alpha).map(p).collect(),
            (0..self.set.num_morphisms())
                .map(|m| {
                    let (a, b) = (self.set.dom(m), self.set.cod(m));
                    two.morphism(p(a), p(b), &vec![0; p(a)])
                })
                .collect(),
        )
    }

    /// Reads a presheaf with all values below `α` as a functor `C -> Set_α^op`.
    pub fn presheaf_to_functor(&self, x: &Presheaf) -> Result<FinFunctor> {
        let base = x.base();
        for c in 0..base.num_objects() {
            if x.size(c) >= self.alpha {
                return Err(Error::FiberTooLarge {
                    object: base.object_name(c).to_string(),
                    size: x.size(c),
                    alpha: self.alpha,
                });
            }
        }
        let mor_map = (0..base.num_morphisms())
            .map(|m| {
                let (a, b) = (base.dom(m), base.cod(m));
                self.morphism(x.size(b), x.size(a), x.action(m))
            })
            .collect();
        FinFunctor::new(base.clone(), self.set_op.clone(), x.sizes(), mor_map)
    }

    /// The presheaf with values `{0, ..., n-1}` read off a functor `C -> Set_α^op`.
    pub fn functor_to_presheaf(&self, f: &FinFunctor) -> Presheaf {
        let base = f.source();
        let sets = (0..base.num_objects())
            .map(|c| (0..f.obj(c)).map(|i| i.to_string()).collect())
            .collect();
        Presheaf::from_fn(base, sets, |m, x| self.functions[f.mor(m)][x])
    }
}

fn join(f: &[usize]) -> String {
    f.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}
