//! Finite-set-valued presheaves and their maps.
//!
//! A presheaf stores, per object, an ordered list of element names and, per
//! morphism `m: a -> b`, the restriction function `X(b) -> X(a)` as indices.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{FinCategory, Guard};

struct PshData {
    base: FinCategory,
    sets: Vec<Vec<String>>,
    action: Vec<Vec<usize>>,
    index: Vec<HashMap<String, usize>>,
}

#[derive(Clone)]
pub struct Presheaf {
    data: Arc<PshData>,
}

impl fmt::Debug for Presheaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for c in 0..self.base().num_objects() {
            m.entry(&self.base().object_name(c), &self.data.sets[c]);
        }
        m.finish()
    }
}

impl PartialEq for Presheaf {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
            || (self.data.sets == other.data.sets
                && self.data.action == other.data.action
                && self.data.base == other.data.base)
    }
}

impl Eq for Presheaf {}

/// File form: element lists per object name and, per non-identity morphism,
/// the restriction as a name-to-name table.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawPresheaf {
    pub sets: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    pub action: BTreeMap<String, BTreeMap<String, String>>,
}

/// File form of a map: per object name, a name-to-name table.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawPresheafMap {
    pub components: BTreeMap<String, BTreeMap<String, String>>,
}

impl Presheaf {
    pub fn new(base: FinCategory, sets: Vec<Vec<String>>, action: Vec<Vec<usize>>) -> Result<Self> {
        if sets.len() != base.num_objects() || action.len() != base.num_morphisms() {
            return Err(Error::InvalidPresheaf("sizes do not match the base".into()));
        }
        for m in 0..base.num_morphisms() {
            let (a, b) = (base.dom(m), base.cod(m));
            if action[m].len() != sets[b].len() || action[m].iter().any(|&x| x >= sets[a].len()) {
                return Err(Error::InvalidPresheaf(format!(
                    "action of `{}` has the wrong type",
                    base.morphism_name(m)
                )));
            }
        }
        for o in 0..base.num_objects() {
            let id = base.identity(o);
            if action[id].iter().enumerate().any(|(i, &x)| i != x) {
                return Err(Error::InvalidPresheaf(format!(
                    "identity of `{}` acts nontrivially",
                    base.object_name(o)
                )));
            }
        }
        for (g, f) in base.composable_pairs() {
            let gf = base.comp(g, f);
            let ok = (0..sets[base.cod(g)].len()).all(|x| action[gf][x] == action[f][action[g][x]]);
            if !ok {
                return Err(Error::InvalidPresheaf(format!(
                    "action of `{}` is not the composite action of `{}` then `{}`",
                    base.morphism_name(gf),
                    base.morphism_name(g),
                    base.morphism_name(f)
                )));
            }
        }
        Self::with_index(base, sets, action)
    }

    fn with_index(base: FinCategory, sets: Vec<Vec<String>>, action: Vec<Vec<usize>>) -> Result<Self> {
        let mut index = Vec::with_capacity(sets.len());
        for (o, s) in sets.iter().enumerate() {
            let mut h = HashMap::with_capacity(s.len());
            for (i, x) in s.iter().enumerate() {
                if h.insert(x.clone(), i).is_some() {
                    return Err(Error::DuplicateName(format!("{x} in {}", base.object_name(o))));
                }
            }
            index.push(h);
        }
        Ok(Presheaf {
            data: Arc::new(PshData {
                base,
                sets,
                action,
                index,
            }),
        })
    }

    /// Builds without the functoriality check; names must still be distinct.
    pub(crate) fn new_unchecked(base: FinCategory, sets: Vec<Vec<String>>, action: Vec<Vec<usize>>) -> Self {
        Self::with_index(base, sets, action).expect("element names are distinct")
    }

    /// Builds from element lists and the action `act(m, x)`, unchecked.
    pub(crate) fn from_fn(
        base: &FinCategory,
        sets: Vec<Vec<String>>,
        act: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let action = (0..base.num_morphisms())
            .map(|m| (0..sets[base.cod(m)].len()).map(|x| act(m, x)).collect())
            .collect();
        Self::new_unchecked(base.clone(), sets, action)
    }

    pub fn base(&self) -> &FinCategory {
        &self.data.base
    }

    pub fn set(&self, c: usize) -> &[String] {
        &self.data.sets[c]
    }

    pub fn sets(&self) -> &[Vec<String>] {
        &self.data.sets
    }

    pub fn size(&self, c: usize) -> usize {
        self.data.sets[c].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.data.sets.iter().map(Vec::len).collect()
    }

    pub fn total_size(&self) -> usize {
        self.data.sets.iter().map(Vec::len).sum()
    }

    pub fn element_name(&self, c: usize, x: usize) -> &str {
        &self.data.sets[c][x]
    }

    pub fn element(&self, c: usize, name: &str) -> Option<usize> {
        self.data.index[c].get(name).copied()
    }

    /// `X(m)(x)` for `m: a -> b` and `x ∈ X(b)`.
    pub fn act(&self, m: usize, x: usize) -> usize {
        self.data.action[m][x]
    }

    pub fn action(&self, m: usize) -> &[usize] {
        &self.data.action[m]
    }

    pub fn ptr_eq(&self, other: &Presheaf) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
    }

    pub fn from_raw(base: &FinCategory, raw: &RawPresheaf) -> Result<Self> {
        for k in raw.sets.keys() {
            base.object_index(k)?;
        }
        let sets: Vec<Vec<String>> = (0..base.num_objects())
            .map(|o| raw.sets.get(base.object_name(o)).cloned().unwrap_or_default())
            .collect();
        let index: Vec<HashMap<&str, usize>> = sets
            .iter()
            .map(|s| s.iter().enumerate().map(|(i, x)| (x.as_str(), i)).collect())
            .collect();
        for k in raw.action.keys() {
            base.morphism_index(k)?;
        }
        let mut action = Vec::with_capacity(base.num_morphisms());
        for m in 0..base.num_morphisms() {
            let (a, b) = (base.dom(m), base.cod(m));
            if base.is_identity(m) && !raw.action.contains_key(base.morphism_name(m)) {
                action.push((0..sets[b].len()).collect());
                continue;
            }
            let table = raw.action.get(base.morphism_name(m)).ok_or_else(|| {
                Error::InvalidPresheaf(format!("no action given for `{}`", base.morphism_name(m)))
            })?;
            let mut row = Vec::with_capacity(sets[b].len());
            for x in &sets[b] {
                let y = table.get(x).ok_or_else(|| {
                    Error::InvalidPresheaf(format!("`{}` does not act on `{x}`", base.morphism_name(m)))
                })?;
                row.push(*index[a].get(y.as_str()).ok_or_else(|| {
                    Error::InvalidPresheaf(format!("`{y}` is not an element at `{}`", base.object_name(a)))
                })?);
            }
            action.push(row);
        }
        Presheaf::new(base.clone(), sets, action)
    }

    pub fn to_raw(&self) -> RawPresheaf {
        let b = self.base();
        let sets = (0..b.num_objects())
            .map(|o| (b.object_name(o).to_string(), self.set(o).to_vec()))
            .collect();
        let action = (0..b.num_morphisms())
            .filter(|&m| !b.is_identity(m))
            .map(|m| {
                let a = b.dom(m);
                let table = (0..self.size(b.cod(m)))
                    .map(|x| {
                        (
                            self.element_name(b.cod(m), x).to_string(),
                            self.element_name(a, self.act(m, x)).to_string(),
                        )
                    })
                    .collect();
                (b.morphism_name(m).to_string(), table)
            })
            .collect();
        RawPresheaf { sets, action }
    }
}

/// A natural transformation between presheaves on the same base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresheafMap {
    source: Presheaf,
    target: Presheaf,
    components: Vec<Vec<usize>>,
}

impl PresheafMap {
    pub fn new(source: Presheaf, target: Presheaf, components: Vec<Vec<usize>>) -> Result<Self> {
        if source.base() != target.base() {
            return Err(Error::BaseMismatch);
        }
        let base = source.base();
        if components.len() != base.num_objects() {
            return Err(Error::InvalidMap("wrong number of components".into()));
        }
        for c in 0..base.num_objects() {
            if components[c].len() != source.size(c) || components[c].iter().any(|&x| x >= target.size(c)) {
                return Err(Error::InvalidMap(format!(
                    "component at `{}` has the wrong type",
                    base.object_name(c)
                )));
            }
        }
        for m in 0..base.num_morphisms() {
            let (a, b) = (base.dom(m), base.cod(m));
            for y in 0..source.size(b) {
                if components[a][source.act(m, y)] != target.act(m, components[b][y]) {
                    return Err(Error::InvalidMap(format!(
                        "naturality fails at `{}` on `{}`",
                        base.morphism_name(m),
                        source.element_name(b, y)
                    )));
                }
            }
        }
        Ok(PresheafMap {
            source,
            target,
            components,
        })
    }

    pub(crate) fn new_unchecked(source: Presheaf, target: Presheaf, components: Vec<Vec<usize>>) -> Self {
        PresheafMap {
            source,
            target,
            components,
        }
    }

    pub fn identity(x: &Presheaf) -> Self {
        let comps = x.sizes().into_iter().map(|n| (0..n).collect()).collect();
        Self::new_unchecked(x.clone(), x.clone(), comps)
    }

    /// The unique map to the terminal presheaf on the same base.
    pub fn to_terminal(x: &Presheaf) -> Self {
        let comps = x.sizes().into_iter().map(|n| vec![0; n]).collect();
        Self::new_unchecked(x.clone(), terminal(x.base()), comps)
    }

    /// The unique map out of the empty presheaf.
    pub fn from_empty(x: &Presheaf) -> Self {
        let comps = vec![Vec::new(); x.base().num_objects()];
        Self::new_unchecked(empty(x.base()), x.clone(), comps)
    }

    pub fn source(&self) -> &Presheaf {
        &self.source
    }

    pub fn target(&self) -> &Presheaf {
        &self.target
    }

    pub fn base(&self) -> &FinCategory {
        self.source.base()
    }

    pub fn apply(&self, c: usize, x: usize) -> usize {
        self.components[c][x]
    }

    pub fn component(&self, c: usize) -> &[usize] {
        &self.components[c]
    }

    pub fn components(&self) -> &[Vec<usize>] {
        &self.components
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &PresheafMap) -> Result<PresheafMap> {
        if first.target != self.source {
            return Err(Error::InvalidMap("maps are not composable".into()));
        }
        Ok(self.after_unchecked(first))
    }

    pub(crate) fn after_unchecked(&self, first: &PresheafMap) -> PresheafMap {
        let comps = first
            .components
            .iter()
            .enumerate()
            .map(|(c, v)| v.iter().map(|&x| self.components[c][x]).collect())
            .collect();
        PresheafMap::new_unchecked(first.source.clone(), self.target.clone(), comps)
    }

    pub fn with_target(&self, target: Presheaf) -> PresheafMap {
        PresheafMap::new_unchecked(self.source.clone(), target, self.components.clone())
    }

    pub fn with_source(&self, source: Presheaf) -> PresheafMap {
        PresheafMap::new_unchecked(source, self.target.clone(), self.components.clone())
    }

    pub fn is_mono(&self) -> bool {
        self.components.iter().enumerate().all(|(c, v)| {
            let mut seen = vec![false; self.target.size(c)];
            v.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
        })
    }

    pub fn is_epi(&self) -> bool {
        self.components.iter().enumerate().all(|(c, v)| {
            let mut seen = vec![false; self.target.size(c)];
            for &x in v {
                seen[x] = true;
            }
            seen.into_iter().all(|b| b)
        })
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.is_epi()
    }

    pub fn inverse(&self) -> Option<PresheafMap> {
        if !self.is_iso() {
            return None;
        }
        let comps = self
            .components
            .iter()
            .enumerate()
            .map(|(c, v)| {
                let mut inv = vec![0; self.target.size(c)];
                for (y, &x) in v.iter().enumerate() {
                    inv[x] = y;
                }
                inv
            })
            .collect();
        Some(PresheafMap::new_unchecked(self.target.clone(), self.source.clone(), comps))
    }

    /// Elements of the source sent to `x ∈ target(c)`.
    pub fn fiber(&self, c: usize, x: usize) -> Vec<usize> {
        (0..self.source.size(c))
            .filter(|&y| self.components[c][y] == x)
            .collect()
    }

    /// Same source/target by value and equal components, i.e. pointwise
    /// equality on element names.
    pub fn same_as(&self, other: &PresheafMap) -> bool {
        let names = |m: &PresheafMap| -> Vec<Vec<(String, String)>> {
            (0..m.base().num_objects())
                .map(|c| {
                    (0..m.source.size(c))
                        .map(|y| {
                            (
                                m.source.element_name(c, y).to_string(),
                                m.target.element_name(c, m.apply(c, y)).to_string(),
                            )
                        })
                        .collect()
                })
                .collect()
        };
        self.base() == other.base() && names(self) == names(other)
    }

    pub fn from_raw(source: &Presheaf, target: &Presheaf, raw: &RawPresheafMap) -> Result<Self> {
        let base = source.base();
        let mut comps = Vec::with_capacity(base.num_objects());
        for k in raw.components.keys() {
            base.object_index(k)?;
        }
        for c in 0..base.num_objects() {
            let empty = BTreeMap::new();
            let table = raw.components.get(base.object_name(c)).unwrap_or(&empty);
            let mut row = Vec::with_capacity(source.size(c));
            for x in source.set(c) {
                let y = table
                    .get(x)
                    .ok_or_else(|| Error::InvalidMap(format!("no image for `{x}`")))?;
                row.push(target.element(c, y).ok_or_else(|| {
                    Error::InvalidMap(format!("`{y}` is not an element at `{}`", base.object_name(c)))
                })?);
            }
            comps.push(row);
        }
        PresheafMap::new(source.clone(), target.clone(), comps)
    }

    pub fn to_raw(&self) -> RawPresheafMap {
        let base = self.base();
        RawPresheafMap {
            components: (0..base.num_objects())
                .map(|c| {
                    (
                        base.object_name(c).to_string(),
                        (0..self.source.size(c))
                            .map(|y| {
                                (
                                    self.source.element_name(c, y).to_string(),
                                    self.target.element_name(c, self.apply(c, y)).to_string(),
                                )
                            })
                            .collect(),
                    )
                })
                .collect(),
        }
    }
}

/// `y_c`: `Hom(-, c)` with elements named by morphism names.
pub fn yoneda(base: &FinCategory, c: usize) -> Result<Presheaf> {
    if c >= base.num_objects() {
        return Err(Error::UnknownObject(format!("#{c}")));
    }
    let homs: Vec<Vec<usize>> = (0..base.num_objects()).map(|d| base.hom(d, c).collect()).collect();
    let pos: HashMap<usize, usize> = homs
        .iter()
        .flat_map(|v| v.iter().enumerate().map(|(i, &g)| (g, i)))
        .collect();
    let sets = homs
        .iter()
        .map(|v| v.iter().map(|&g| base.morphism_name(g).to_string()).collect())
        .collect();
    Ok(Presheaf::from_fn(base, sets, |m, x| {
        let g = homs[base.cod(m)][x];
        pos[&base.comp(g, m)]
    }))
}

/// The morphism of `C` that an element of `yoneda(C, c)` at `d` stands for.
pub fn yoneda_morphism(base: &FinCategory, c: usize, d: usize, x: usize) -> usize {
    base.hom(d, c).nth(x).expect("element of a representable")
}

pub fn terminal(base: &FinCategory) -> Presheaf {
    let sets = vec![vec!["*".to_string()]; base.num_objects()];
    Presheaf::from_fn(base, sets, |_, _| 0)
}

pub fn empty(base: &FinCategory) -> Presheaf {
    Presheaf::from_fn(base, vec![Vec::new(); base.num_objects()], |_, _| 0)
}

/// Constant presheaf on `{0, ..., n-1}` with identity actions.
pub fn constant(base: &FinCategory, n: usize) -> Presheaf {
    let set: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    Presheaf::from_fn(base, vec![set; base.num_objects()], |_, x| x)
}

/// `X + Y` with elements `(0,x)` and `(1,y)`, plus the two injections.
pub fn coproduct(x: &Presheaf, y: &Presheaf) -> Result<(Presheaf, PresheafMap, PresheafMap)> {
    if x.base() != y.base() {
        return Err(Error::BaseMismatch);
    }
    let base = x.base();
    let sets = (0..base.num_objects())
        .map(|c| {
            x.set(c)
                .iter()
                .map(|e| format!("(0,{e})"))
                .chain(y.set(c).iter().map(|e| format!("(1,{e})")))
                .collect()
        })
        .collect();
    let sum = Presheaf::from_fn(base, sets, |m, e| {
        let b = base.cod(m);
        let a = base.dom(m);
        if e < x.size(b) {
            x.act(m, e)
        } else {
            x.size(a) + y.act(m, e - x.size(b))
        }
    });
    let inl = (0..base.num_objects()).map(|c| (0..x.size(c)).collect()).collect();
    let inr = (0..base.num_objects())
        .map(|c| (0..y.size(c)).map(|e| x.size(c) + e).collect())
        .collect();
    Ok((
        sum.clone(),
        PresheafMap::new_unchecked(x.clone(), sum.clone(), inl),
        PresheafMap::new_unchecked(y.clone(), sum, inr),
    ))
}

/// The map `y_c -> X` corresponding to `x ∈ X(c)`: `g ↦ X(g)(x)`.
pub fn yoneda_map(x: &Presheaf, c: usize, elem: usize) -> Result<PresheafMap> {
    let base = x.base();
    let yc = yoneda(base, c)?;
    if elem >= x.size(c) {
        return Err(Error::InvalidMap("element out of range".into()));
    }
    let comps = (0..base.num_objects())
        .map(|d| base.hom(d, c).map(|g| x.act(g, elem)).collect())
        .collect();
    Ok(PresheafMap::new_unchecked(yc, x.clone(), comps))
}

/// Enumeration of presheaf maps `source -> target` by constraint propagation.
pub struct HomSearch<'a> {
    source: &'a Presheaf,
    target: &'a Presheaf,
    allow: Option<Box<dyn Fn(usize, usize, usize) -> bool + 'a>>,
    injective: bool,
    limit: Option<usize>,
    guard: Guard,
}

impl<'a> HomSearch<'a> {
    pub fn new(source: &'a Presheaf, target: &'a Presheaf) -> Self {
        HomSearch {
            source,
            target,
            allow: None,
            injective: false,
            limit: None,
            guard: Guard::default(),
        }
    }

    /// Only allow `y ∈ source(c)` to go to `x ∈ target(c)` when `f(c, y, x)`.
    pub fn allow(mut self, f: impl Fn(usize, usize, usize) -> bool + 'a) -> Self {
        self.allow = Some(Box::new(f));
        self
    }

    pub fn injective(mut self) -> Self {
        self.injective = true;
        self
    }

    /// Stop after this many results.
    pub fn limit(mut self, n: usize) -> Self {
        self.limit = Some(n);
        self
    }

    /// Fail with `SizeGuardExceeded` once more results than the guard are found.
    pub fn guard(mut self, g: Guard) -> Self {
        self.guard = g;
        self
    }

    pub fn first(self) -> Result<Option<PresheafMap>> {
        Ok(self.limit(1).run()?.into_iter().next())
    }

    pub fn count(self) -> Result<usize> {
        Ok(self.run()?.len())
    }

    /// All maps, in lexicographic order of their components.
    pub fn run(&self) -> Result<Vec<PresheafMap>> {
        let (y, x) = (self.source, self.target);
        if y.base() != x.base() {
            return Err(Error::BaseMismatch);
        }
        let base = y.base();
        let n = base.num_objects();
        let vars: Vec<(usize, usize)> = (0..n).flat_map(|c| (0..y.size(c)).map(move |e| (c, e))).collect();
        let mut st = State {
            assign: (0..n).map(|c| vec![usize::MAX; y.size(c)]).collect(),
            used: (0..n).map(|c| vec![0u32; x.size(c)]).collect(),
            trail: Vec::new(),
        };
        let mut out = Vec::new();
        let mut overflow = false;
        self.go(0, &vars, &mut st, &mut out, &mut overflow);
        if overflow {
            return Err(Error::SizeGuardExceeded {
                estimate: out.len() as u128,
                guard: self.guard.0,
            });
        }
        Ok(out
            .into_iter()
            .map(|c| PresheafMap::new_unchecked(y.clone(), x.clone(), c))
            .collect())
    }

    fn assign(&self, st: &mut State, c: usize, e: usize, v: usize) -> bool {
        let (y, x) = (self.source, self.target);
        let base = y.base();
        let mut stack = vec![(c, e, v)];
        while let Some((c, e, v)) = stack.pop() {
            let cur = st.assign[c][e];
            if cur != usize::MAX {
                if cur != v {
                    return false;
                }
                continue;
            }
            if let Some(f) = &self.allow {
                if !f(c, e, v) {
                    return false;
                }
            }
            if self.injective && st.used[c][v] > 0 {
                return false;
            }
            st.assign[c][e] = v;
            st.used[c][v] += 1;
            st.trail.push((c, e));
            for &m in base.incoming(c) {
                if base.is_identity(m) {
                    continue;
                }
                stack.push((base.dom(m), y.act(m, e), x.act(m, v)));
            }
        }
        true
    }

    fn undo(&self, st: &mut State, mark: usize) {
        while st.trail.len() > mark {
            let (c, e) = st.trail.pop().expect("trail entry");
            let v = st.assign[c][e];
            st.used[c][v] -= 1;
            st.assign[c][e] = usize::MAX;
        }
    }

    fn go(
        &self,
        i: usize,
        vars: &[(usize, usize)],
        st: &mut State,
        out: &mut Vec<Vec<Vec<usize>>>,
        overflow: &mut bool,
    ) {
        if *overflow || self.limit.is_some_and(|l| out.len() >= l) {
            return;
        }
        let Some(&(c, e)) = vars.get(i) else {
            if out.len() as u64 >= self.guard.0 {
                *overflow = true;
                return;
            }
            out.push(st.assign.clone());
            return;
        };
        if st.assign[c][e] != usize::MAX {
            self.go(i + 1, vars, st, out, overflow);
            return;
        }
        for v in 0..self.target.size(c) {
            let mark = st.trail.len();
            if self.assign(st, c, e, v) {
                self.go(i + 1, vars, st, out, overflow);
            }
            self.undo(st, mark);
            if *overflow {
                return;
            }
        }
    }
}

struct State {
    assign: Vec<Vec<usize>>,
    used: Vec<Vec<u32>>,
    trail: Vec<(usize, usize)>,
}

/// All maps `1 -> X`.
pub fn global_elements(x: &Presheaf) -> Result<Vec<PresheafMap>> {
    HomSearch::new(&terminal(x.base()), x).run()
}

/// Some isomorphism `X -> Y`, if one exists.
pub fn find_iso(x: &Presheaf, y: &Presheaf) -> Result<Option<PresheafMap>> {
    if x.base() != y.base() || x.sizes() != y.sizes() {
        return Ok(None);
    }
    HomSearch::new(x, y).injective().first()
}

/// Some isomorphism `X -> Y` commuting with given maps to a common `Z`.
pub fn find_iso_over(p: &PresheafMap, q: &PresheafMap) -> Result<Option<PresheafMap>> {
    let (x, y) = (p.source(), q.source());
    if x.base() != y.base() || x.sizes() != y.sizes() || p.target() != q.target() {
        return Ok(None);
    }
    HomSearch::new(x, y)
        .injective()
        .allow(|c, a, b| p.apply(c, a) == q.apply(c, b))
        .first()
}

/// Pointwise fiber product `Y ×_X Z` with elements named `(y,z)`.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub object: Presheaf,
    pub left: PresheafMap,
    pub right: PresheafMap,
    lookup: Vec<HashMap<(usize, usize), usize>>,
}

impl Pullback {
    pub fn pair(&self, c: usize, y: usize, z: usize) -> Option<usize> {
        self.lookup[c].get(&(y, z)).copied()
    }

    /// The mediating map `W -> P` for a commuting cone `(u: W -> Y, v: W -> Z)`.
    pub fn mediate(&self, u: &PresheafMap, v: &PresheafMap) -> Result<PresheafMap> {
        let base = self.object.base();
        let comps = (0..base.num_objects())
            .map(|c| {
                (0..u.source().size(c))
                    .map(|w| {
                        self.pair(c, u.apply(c, w), v.apply(c, w))
                            .ok_or_else(|| Error::InvalidMap("cone does not commute".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PresheafMap::new_unchecked(u.source().clone(), self.object.clone(), comps))
    }
}

pub fn pullback(f: &PresheafMap, g: &PresheafMap) -> Result<Pullback> {
    if f.target() != g.target() {
        return Err(Error::BaseMismatch);
    }
    let (y, z) = (f.source(), g.source());
    let base = y.base();
    let mut pairs: Vec<Vec<(usize, usize)>> = Vec::with_capacity(base.num_objects());
    let mut lookup = Vec::with_capacity(base.num_objects());
    for c in 0..base.num_objects() {
        let mut by_image: HashMap<usize, Vec<usize>> = HashMap::new();
        for b in 0..z.size(c) {
            by_image.entry(g.apply(c, b)).or_default().push(b);
        }
        let mut ps = Vec::new();
        let mut lk = HashMap::new();
        for a in 0..y.size(c) {
            if let Some(bs) = by_image.get(&f.apply(c, a)) {
                for &b in bs {
                    lk.insert((a, b), ps.len());
                    ps.push((a, b));
                }
            }
        }
        pairs.push(ps);
        lookup.push(lk);
    }
    let sets = (0..base.num_objects())
        .map(|c| {
            pairs[c]
                .iter()
                .map(|&(a, b)| format!("({},{})", y.element_name(c, a), z.element_name(c, b)))
                .collect()
        })
        .collect();
    let object = Presheaf::from_fn(base, sets, |m, p| {
        let (a, b) = pairs[base.cod(m)][p];
        lookup[base.dom(m)][&(y.act(m, a), z.act(m, b))]
    });
    let left = PresheafMap::new_unchecked(
        object.clone(),
        y.clone(),
        pairs.iter().map(|v| v.iter().map(|p| p.0).collect()).collect(),
    );
    let right = PresheafMap::new_unchecked(
        object.clone(),
        z.clone(),
        pairs.iter().map(|v| v.iter().map(|p| p.1).collect()).collect(),
    );
    Ok(Pullback {
        object,
        left,
        right,
        lookup,
    })
}

/// Whether the square
///
/// ```text
/// P --top--> Z
/// |left      |right
/// Y --bottom-> X
/// ```
///
/// commutes and is a pointwise pullback.
pub fn is_pullback_square(top: &PresheafMap, left: &PresheafMap, right: &PresheafMap, bottom: &PresheafMap) -> bool {
    if top.source() != left.source() || top.target() != right.source() || left.target() != bottom.source() {
        return false;
    }
    if right.target() != bottom.target() {
        return false;
    }
    let base = top.base();
    for c in 0..base.num_objects() {
        let p = top.source();
        let mut seen: HashMap<(usize, usize), ()> = HashMap::new();
        for e in 0..p.size(c) {
            let (y, z) = (left.apply(c, e), top.apply(c, e));
            if bottom.apply(c, y) != right.apply(c, z) || seen.insert((y, z), ()).is_some() {
                return false;
            }
        }
        let mut expected = 0usize;
        let mut count_z: HashMap<usize, usize> = HashMap::new();
        for z in 0..right.source().size(c) {
            *count_z.entry(right.apply(c, z)).or_default() += 1;
        }
        for y in 0..bottom.source().size(c) {
            expected += count_z.get(&bottom.apply(c, y)).copied().unwrap_or(0);
        }
        if expected != p.size(c) {
            return false;
        }
    }
    true
}

/// Name of a set of morphisms: `{f,g}` in the given order.
pub fn set_name(base: &FinCategory, ms: &[usize]) -> String {
    let names: Vec<&str> = ms.iter().map(|&m| base.morphism_name(m)).collect();
    format!("{{{}}}", names.join(","))
}

/// Sieves on `c`, each a sorted list of morphisms into `c`, ordered by the
/// bitmask over `incoming(c)`.
pub fn sieves(base: &FinCategory, c: usize) -> Vec<Vec<usize>> {
    let into: Vec<usize> = base.incoming(c).to_vec();
    let pos: HashMap<usize, usize> = into.iter().enumerate().map(|(i, &m)| (m, i)).collect();
    let k = into.len();
    assert!(k < 31, "too many morphisms into one object");
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << k) {
        let closed = into.iter().enumerate().all(|(i, &s)| {
            mask & (1 << i) == 0
                || base
                    .incoming(base.dom(s))
                    .iter()
                    .all(|&m| mask & (1 << pos[&base.comp(s, m)]) != 0)
        });
        if closed {
            let mut v: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| into[i]).collect();
            v.sort_unstable();
            out.push(v);
        }
    }
    out
}

/// The presheaf of sieves; `m: a -> c` pulls a sieve `S` back to `{g : m∘g ∈ S}`.
pub fn sieve_presheaf(base: &FinCategory) -> Presheaf {
    let all: Vec<Vec<Vec<usize>>> = (0..base.num_objects()).map(|c| sieves(base, c)).collect();
    let index: Vec<HashMap<Vec<usize>, usize>> = all
        .iter()
        .map(|v| v.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
        .collect();
    let sets = all
        .iter()
        .map(|v| v.iter().map(|s| set_name(base, s)).collect())
        .collect();
    Presheaf::from_fn(base, sets, |m, s| {
        let a = base.dom(m);
        let sieve = &all[base.cod(m)][s];
        let mut pulled: Vec<usize> = base
            .incoming(a)
            .iter()
            .copied()
            .filter(|&g| sieve.contains(&base.comp(m, g)))
            .collect();
        pulled.sort_unstable();
        index[a][&pulled]
    })
}

/// The subpresheaf on the given element subsets, with its inclusion.
pub fn subpresheaf(x: &Presheaf, subsets: &[Vec<usize>]) -> Result<(Presheaf, PresheafMap)> {
    let base = x.base();
    if subsets.len() != base.num_objects() {
        return Err(Error::InvalidPresheaf("one subset per object required".into()));
    }
    let mut pos: Vec<HashMap<usize, usize>> = Vec::with_capacity(subsets.len());
    for s in subsets {
        let mut sorted = s.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != s.len() {
            return Err(Error::InvalidPresheaf("repeated element in subset".into()));
        }
        pos.push(s.iter().enumerate().map(|(i, &e)| (e, i)).collect());
    }
    for m in 0..base.num_morphisms() {
        for &e in &subsets[base.cod(m)] {
            if e >= x.size(base.cod(m)) || !pos[base.dom(m)].contains_key(&x.act(m, e)) {
                return Err(Error::InvalidPresheaf(format!(
                    "subset not closed under `{}`",
                    base.morphism_name(m)
                )));
            }
        }
    }
    let sets = subsets
        .iter()
        .enumerate()
        .map(|(c, s)| s.iter().map(|&e| x.element_name(c, e).to_string()).collect())
        .collect();
    let sub = Presheaf::from_fn(base, sets, |m, i| {
        pos[base.dom(m)][&x.act(m, subsets[base.cod(m)][i])]
    });
    let incl = PresheafMap::new_unchecked(sub.clone(), x.clone(), subsets.to_vec());
    Ok((sub, incl))
}

/// All subpresheaves of `X`, as closed families of sorted subsets.
pub fn subpresheaves(x: &Presheaf, guard: Guard) -> Result<Vec<Vec<Vec<usize>>>> {
    let base = x.base();
    let vars: Vec<(usize, usize)> = (0..base.num_objects())
        .flat_map(|c| (0..x.size(c)).map(move |e| (c, e)))
        .collect();
    let mut member: Vec<Vec<Option<bool>>> = (0..base.num_objects()).map(|c| vec![None; x.size(c)]).collect();
    let mut out = Vec::new();
    fn closed(x: &Presheaf, member: &[Vec<Option<bool>>]) -> bool {
        let base = x.base();
        (0..base.num_morphisms()).all(|m| {
            (0..x.size(base.cod(m))).all(|e| {
                !(member[base.cod(m)][e] == Some(true) && member[base.dom(m)][x.act(m, e)] == Some(false))
            })
        })
    }
    fn go(
        i: usize,
        vars: &[(usize, usize)],
        x: &Presheaf,
        member: &mut Vec<Vec<Option<bool>>>,
        out: &mut Vec<Vec<Vec<usize>>>,
        guard: Guard,
    ) -> Result<()> {
        let Some(&(c, e)) = vars.get(i) else {
            if out.len() as u64 >= guard.0 {
                return Err(Error::SizeGuardExceeded {
                    estimate: out.len() as u128 + 1,
                    guard: guard.0,
                });
            }
            out.push(
                member
                    .iter()
                    .map(|v| (0..v.len()).filter(|&j| v[j] == Some(true)).collect())
                    .collect(),
            );
            return Ok(());
        };
        for b in [false, true] {
            member[c][e] = Some(b);
            if closed(x, member) {
                go(i + 1, vars, x, member, out, guard)?;
            }
        }
        member[c][e] = None;
        Ok(())
    }
    go(0, &vars, x, &mut member, &mut out, guard)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn representables_of_the_arrow() {
        let two = catalog::arrow();
        let y1 = yoneda(&two, 1).unwrap();
        assert_eq!(y1.set(0), &["f".to_string()]);
        assert_eq!(y1.set(1), &["id_1".to_string()]);
        let y0 = yoneda(&two, 0).unwrap();
        assert_eq!(y0.sizes(), vec![1, 0]);
        let one = catalog::terminal();
        assert_eq!(yoneda(&one, 0).unwrap().sizes(), vec![1]);
        assert!(matches!(yoneda(&two, 4), Err(Error::UnknownObject(_))));
    }

    #[test]
    fn global_elements_counts() {
        let two = catalog::arrow();
        assert_eq!(global_elements(&terminal(&two)).unwrap().len(), 1);
        assert_eq!(global_elements(&yoneda(&two, 0).unwrap()).unwrap().len(), 0);
        let one = catalog::terminal();
        assert_eq!(global_elements(&constant(&one, 2)).unwrap().len(), 2);
    }

    #[test]
    fn yoneda_bijection() {
        for c in catalog::default_categories() {
            let xs = [terminal(&c), constant(&c, 2)]
                .into_iter()
                .chain((0..c.num_objects()).map(|o| yoneda(&c, o).unwrap()))
                .collect::<Vec<_>>();
            for x in &xs {
                for o in 0..c.num_objects() {
                    let yc = yoneda(&c, o).unwrap();
                    let maps = HomSearch::new(&yc, x).run().unwrap();
                    assert_eq!(maps.len(), x.size(o));
                    let id_pos = c.hom(o, o).position(|m| m == c.identity(o)).unwrap();
                    let mut evals: Vec<usize> = maps.iter().map(|m| m.apply(o, id_pos)).collect();
                    evals.sort_unstable();
                    assert_eq!(evals, (0..x.size(o)).collect::<Vec<_>>());
                    for e in 0..x.size(o) {
                        let ym = yoneda_map(x, o, e).unwrap();
                        assert!(maps.contains(&ym));
                    }
                }
            }
        }
    }

    #[test]
    fn sieve_counts() {
        let one = catalog::terminal();
        assert_eq!(sieves(&one, 0).len(), 2);
        let two = catalog::arrow();
        let s1 = sieves(&two, 1);
        assert_eq!(s1.len(), 3);
        let f = two.morphism_index("f").unwrap();
        assert_eq!(s1[0], Vec::<usize>::new());
        assert_eq!(s1[1], vec![f]);
        assert_eq!(sieves(&two, 0).len(), 2);
        let omega = sieve_presheaf(&two);
        assert_eq!(omega.sizes(), vec![2, 3]);
    }

    #[test]
    fn sieve_inclusion_is_mono() {
        let two = catalog::arrow();
        let y1 = yoneda(&two, 1).unwrap();
        let (_, incl) = subpresheaf(&y1, &[vec![0], vec![]]).unwrap();
        assert!(incl.is_mono());
        assert!(subpresheaf(&y1, &[vec![], vec![0]]).is_err());
        let one = catalog::terminal();
        let collapse = PresheafMap::to_terminal(&constant(&one, 2));
        assert!(!collapse.is_mono());
        assert!(PresheafMap::identity(&y1).is_mono());
    }

    #[test]
    fn pullback_along_identity() {
        let two = catalog::arrow();
        let y = constant(&two, 2);
        let f = PresheafMap::to_terminal(&y);
        let id = PresheafMap::identity(f.target());
        let pb = pullback(&f, &id).unwrap();
        assert!(pb.left.is_iso());
        assert!(is_pullback_square(&pb.right, &pb.left, &id, &f));
    }

    #[test]
    fn pullback_of_monos_is_intersection() {
        let two = catalog::arrow();
        let x = constant(&two, 3);
        let (_, a) = subpresheaf(&x, &[vec![0, 1], vec![0, 1]]).unwrap();
        let (_, b) = subpresheaf(&x, &[vec![1, 2], vec![1, 2]]).unwrap();
        let pb = pullback(&a, &b).unwrap();
        assert_eq!(pb.object.sizes(), vec![1, 1]);
        assert_eq!(pb.object.element_name(0, 0), "(1,1)");
    }

    #[test]
    fn pullback_universal_property() {
        let two = catalog::arrow();
        let x = terminal(&two);
        let y = constant(&two, 2);
        let z = yoneda(&two, 1).unwrap();
        let (f, g) = (PresheafMap::to_terminal(&y), PresheafMap::to_terminal(&z));
        let _ = x;
        let pb = pullback(&f, &g).unwrap();
        for w in [terminal(&two), constant(&two, 2), yoneda(&two, 0).unwrap()] {
            for u in HomSearch::new(&w, &y).run().unwrap() {
                for v in HomSearch::new(&w, &z).run().unwrap() {
                    let mediators: Vec<_> = HomSearch::new(&w, &pb.object)
                        .run()
                        .unwrap()
                        .into_iter()
                        .filter(|h| pb.left.after(h).unwrap() == u && pb.right.after(h).unwrap() == v)
                        .collect();
                    assert_eq!(mediators.len(), 1);
                    assert_eq!(mediators[0], pb.mediate(&u, &v).unwrap());
                }
            }
        }
    }

    #[test]
    fn raw_round_trip() {
        let tri = catalog::triangle();
        for o in 0..3 {
            let y = yoneda(&tri, o).unwrap();
            let back = Presheaf::from_raw(&tri, &y.to_raw()).unwrap();
            assert_eq!(back, y);
        }
        let mut raw = yoneda(&tri, 2).unwrap().to_raw();
        raw.action.get_mut("f").unwrap().insert("g".into(), "zzz".into());
        assert!(Presheaf::from_raw(&tri, &raw).is_err());
    }

    #[test]
    fn bad_action_is_rejected() {
        let tri = catalog::triangle();
        let y = yoneda(&tri, 2).unwrap();
        let mut raw = y.to_raw();
        // swap two elements under h only, which breaks h = g∘f
        raw.sets.insert("0".into(), vec!["h".into(), "x".into()]);
        raw.action.get_mut("h").unwrap().insert("id_2".into(), "x".into());
        raw.action.get_mut("f").unwrap().insert("g".into(), "h".into());
        assert!(matches!(Presheaf::from_raw(&tri, &raw), Err(Error::InvalidPresheaf(_))));
    }

    #[test]
    fn subpresheaf_enumeration() {
        let two = catalog::arrow();
        let y1 = yoneda(&two, 1).unwrap();
        // ∅, {f}, everything
        assert_eq!(subpresheaves(&y1, Guard::default()).unwrap().len(), 3);
        let one = catalog::terminal();
        assert_eq!(subpresheaves(&constant(&one, 3), Guard::default()).unwrap().len(), 8);
    }

    #[test]
    fn hom_search_guard() {
        let one = catalog::terminal();
        let x = constant(&one, 3);
        let y = constant(&one, 4);
        assert_eq!(HomSearch::new(&x, &y).count().unwrap(), 64);
        assert_eq!(HomSearch::new(&x, &y).injective().count().unwrap(), 24);
        assert!(matches!(
            HomSearch::new(&x, &y).guard(Guard(10)).run(),
            Err(Error::SizeGuardExceeded { .. })
        ));
    }
}
