//! Finite categories, functors and natural transformations.
//!
//! Objects and morphisms are addressed by dense indices into the category's
//! ordered lists; their string names are what files and reports see. Every
//! category carries an explicit identity per object and a total composition
//! table on composable pairs.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on the raw search space of a functor enumeration.
///
/// The estimate for `S -> T` is `|ob T|^|ob S| * |mor T|^|non-identity mor S|`,
/// with candidate counts substituted when a search is restricted.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guard(pub u64);

impl Default for Guard {
    fn default() -> Self {
        Guard(10_000_000)
    }
}

impl Guard {
    pub fn check(self, estimate: u128) -> Result<()> {
        if estimate > u128::from(self.0) {
            Err(Error::SizeGuardExceeded {
                estimate,
                guard: self.0,
            })
        } else {
            Ok(())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Morphism {
    pub name: String,
    pub dom: usize,
    pub cod: usize,
}

/// Category description as read from JSON: identities are implicit and named
/// `id_<object>`, and `compose` lists `[g, f, g∘f]` for non-identity pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCategory {
    pub objects: Vec<String>,
    #[serde(default)]
    pub morphisms: Vec<RawMorphism>,
    #[serde(default)]
    pub compose: Vec<[String; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawMorphism {
    pub name: String,
    pub dom: String,
    pub cod: String,
}

const NONE: u32 = u32::MAX;

#[derive(Debug)]
enum CompTable {
    Dense { n: usize, table: Vec<u32> },
    Sparse(HashMap<(usize, usize), usize>),
}

impl CompTable {
    fn new(n: usize) -> Self {
        if n <= 512 {
            CompTable::Dense {
                n,
                table: vec![NONE; n * n],
            }
        } else {
            CompTable::Sparse(HashMap::new())
        }
    }

    fn get(&self, g: usize, f: usize) -> Option<usize> {
        match self {
            CompTable::Dense { n, table } => {
                let v = table[g * n + f];
                (v != NONE).then_some(v as usize)
            }
            CompTable::Sparse(map) => map.get(&(g, f)).copied(),
        }
    }

    fn set(&mut self, g: usize, f: usize, gf: usize) {
        match self {
            CompTable::Dense { n, table } => table[g * *n + f] = gf as u32,
            CompTable::Sparse(map) => {
                map.insert((g, f), gf);
            }
        }
    }
}

#[derive(Debug)]
struct CatData {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<usize>,
    table: CompTable,
    obj_index: HashMap<String, usize>,
    mor_index: HashMap<String, usize>,
    outgoing: Vec<Vec<usize>>,
    incoming: Vec<Vec<usize>>,
}

/// A finite category. Cheap to clone; immutable once built.
#[derive(Clone)]
pub struct FinCategory {
    data: Arc<CatData>,
}

impl fmt::Debug for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinCategory")
            .field("objects", &self.data.objects)
            .field(
                "morphisms",
                &self
                    .data
                    .morphisms
                    .iter()
                    .map(|m| format!("{}: {} -> {}", m.name, self.data.objects[m.dom], self.data.objects[m.cod]))
                    .collect::<Vec<_>>(),
            )
            .finish()
    }
}

impl PartialEq for FinCategory {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.data, &other.data) {
            return true;
        }
        let (a, b) = (&self.data, &other.data);
        if a.objects != b.objects || a.morphisms != b.morphisms || a.identities != b.identities {
            return false;
        }
        self.composable_pairs()
            .all(|(g, f)| self.compose(g, f) == other.compose(g, f))
    }
}

impl Eq for FinCategory {}

/// Incremental construction of a category whose composition is computed by a
/// closure over composable pairs.
#[derive(Default)]
pub struct CategoryBuilder {
    objects: Vec<String>,
    morphisms: Vec<Morphism>,
    identities: Vec<Option<usize>>,
}

impl CategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_object(&mut self, name: impl Into<String>) -> usize {
        self.objects.push(name.into());
        self.identities.push(None);
        self.objects.len() - 1
    }

    /// Adds an object together with its identity `id_<name>`.
    pub fn add_object_with_identity(&mut self, name: impl Into<String>) -> usize {
        let name = name.into();
        let id_name = format!("id_{name}");
        let o = self.add_object(name);
        let m = self.add_morphism(id_name, o, o);
        self.identities[o] = Some(m);
        o
    }

    pub fn add_morphism(&mut self, name: impl Into<String>, dom: usize, cod: usize) -> usize {
        self.morphisms.push(Morphism {
            name: name.into(),
            dom,
            cod,
        });
        self.morphisms.len() - 1
    }

    pub fn set_identity(&mut self, object: usize, morphism: usize) {
        self.identities[object] = Some(morphism);
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    /// Fills the composition table with `compose(g, f)` for every composable
    /// pair. Only typing is checked here; the category laws are not.
    pub fn build(self, compose: impl Fn(usize, usize) -> usize) -> Result<FinCategory> {
        let CategoryBuilder {
            objects,
            morphisms,
            identities,
        } = self;
        let mut obj_index = HashMap::with_capacity(objects.len());
        for (i, o) in objects.iter().enumerate() {
            if obj_index.insert(o.clone(), i).is_some() {
                return Err(Error::DuplicateName(o.clone()));
            }
        }
        let mut mor_index = HashMap::with_capacity(morphisms.len());
        for (i, m) in morphisms.iter().enumerate() {
            if m.dom >= objects.len() || m.cod >= objects.len() {
                return Err(Error::UnknownObject(format!("endpoint of {}", m.name)));
            }
            if mor_index.insert(m.name.clone(), i).is_some() {
                return Err(Error::DuplicateName(m.name.clone()));
            }
        }
        let identities = identities
            .into_iter()
            .enumerate()
            .map(|(o, id)| id.ok_or_else(|| Error::IdentityViolation {
                morphism: String::new(),
                identity: format!("missing identity on {}", objects[o]),
            }))
            .collect::<Result<Vec<_>>>()?;
        let mut outgoing = vec![Vec::new(); objects.len()];
        let mut incoming = vec![Vec::new(); objects.len()];
        for (i, m) in morphisms.iter().enumerate() {
            outgoing[m.dom].push(i);
            incoming[m.cod].push(i);
        }
        let mut table = CompTable::new(morphisms.len());
        for b in 0..objects.len() {
            for &f in &incoming[b] {
                for &g in &outgoing[b] {
                    let gf = compose(g, f);
                    let ok = gf < morphisms.len()
                        && morphisms[gf].dom == morphisms[f].dom
                        && morphisms[gf].cod == morphisms[g].cod;
                    if !ok {
                        return Err(Error::CompositeTypeMismatch {
                            g: morphisms[g].name.clone(),
                            f: morphisms[f].name.clone(),
                            gf: morphisms.get(gf).map(|m| m.name.clone()).unwrap_or_default(),
                        });
                    }
                    table.set(g, f, gf);
                }
            }
        }
        Ok(FinCategory {
            data: Arc::new(CatData {
                objects,
                morphisms,
                identities,
                table,
                obj_index,
                mor_index,
                outgoing,
                incoming,
            }),
        })
    }
}

impl FinCategory {
    pub fn num_objects(&self) -> usize {
        self.data.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.data.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.data.objects
    }

    pub fn morphisms(&self) -> &[Morphism] {
        &self.data.morphisms
    }

    pub fn object_name(&self, o: usize) -> &str {
        &self.data.objects[o]
    }

    pub fn morphism_name(&self, m: usize) -> &str {
        &self.data.morphisms[m].name
    }

    pub fn dom(&self, m: usize) -> usize {
        self.data.morphisms[m].dom
    }

    pub fn cod(&self, m: usize) -> usize {
        self.data.morphisms[m].cod
    }

    pub fn identity(&self, o: usize) -> usize {
        self.data.identities[o]
    }

    pub fn is_identity(&self, m: usize) -> bool {
        self.data.identities[self.dom(m)] == m
    }

    /// `g ∘ f`, if `cod f = dom g`.
    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.data.table.get(g, f)
    }

    /// `g ∘ f` for a pair known to be composable.
    pub fn comp(&self, g: usize, f: usize) -> usize {
        self.compose(g, f).unwrap_or_else(|| {
            panic!(
                "`{}` after `{}` is not composable",
                self.morphism_name(g),
                self.morphism_name(f)
            )
        })
    }

    pub fn object_index(&self, name: &str) -> Result<usize> {
        self.data
            .obj_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn morphism_index(&self, name: &str) -> Result<usize> {
        self.data
            .mor_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownMorphism(name.to_string()))
    }

    pub fn outgoing(&self, o: usize) -> &[usize] {
        &self.data.outgoing[o]
    }

    pub fn incoming(&self, o: usize) -> &[usize] {
        &self.data.incoming[o]
    }

    pub fn hom(&self, a: usize, b: usize) -> impl Iterator<Item = usize> + '_ {
        self.data.outgoing[a]
            .iter()
            .copied()
            .filter(move |&m| self.cod(m) == b)
    }

    pub fn non_identity_count(&self) -> usize {
        self.num_morphisms() - self.num_objects()
    }

    pub fn ptr_eq(&self, other: &FinCategory) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
    }

    /// All `(g, f)` with `cod f = dom g`.
    pub fn composable_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.num_objects()).flat_map(move |b| {
            self.incoming(b)
                .iter()
                .flat_map(move |&f| self.outgoing(b).iter().map(move |&g| (g, f)))
        })
    }

    /// The two-sided inverse of `m`, if any.
    pub fn inverse(&self, m: usize) -> Option<usize> {
        let (a, b) = (self.dom(m), self.cod(m));
        self.hom(b, a).find(|&n| {
            self.comp(n, m) == self.identity(a) && self.comp(m, n) == self.identity(b)
        })
    }

    /// Exhaustive check of the identity and associativity laws.
    pub fn check_laws(&self) -> Result<()> {
        for m in 0..self.num_morphisms() {
            let (ia, ib) = (self.identity(self.dom(m)), self.identity(self.cod(m)));
            for (id, ok) in [(ib, self.compose(ib, m) == Some(m)), (ia, self.compose(m, ia) == Some(m))] {
                if !ok {
                    return Err(Error::IdentityViolation {
                        morphism: self.morphism_name(m).to_string(),
                        identity: self.morphism_name(id).to_string(),
                    });
                }
            }
        }
        for (g, f) in self.composable_pairs() {
            let gf = self.comp(g, f);
            for &h in self.outgoing(self.cod(g)) {
                let left = self.comp(self.comp(h, g), f);
                let right = self.comp(h, gf);
                if left != right {
                    return Err(Error::AssocViolation {
                        h: self.morphism_name(h).to_string(),
                        g: self.morphism_name(g).to_string(),
                        f: self.morphism_name(f).to_string(),
                        left: self.morphism_name(left).to_string(),
                        right: self.morphism_name(right).to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    /// Same objects and morphism names, with domain and codomain swapped.
    pub fn opposite(&self) -> FinCategory {
        let mut b = CategoryBuilder::new();
        for o in self.objects() {
            b.add_object(o.clone());
        }
        for m in self.morphisms() {
            b.add_morphism(m.name.clone(), m.cod, m.dom);
        }
        for o in 0..self.num_objects() {
            b.set_identity(o, self.identity(o));
        }
        b.build(|g, f| self.comp(f, g))
            .expect("opposite of a valid category is valid")
    }

    pub fn terminal() -> FinCategory {
        let mut b = CategoryBuilder::new();
        b.add_object_with_identity("*");
        b.build(|g, _| g).expect("terminal category")
    }

    pub fn empty() -> FinCategory {
        CategoryBuilder::new()
            .build(|g, _| g)
            .expect("empty category")
    }

    /// Serializable description; only non-identity morphisms and composites
    /// are listed.
    pub fn to_raw(&self) -> RawCategory {
        let objects = self.objects().to_vec();
        let morphisms = (0..self.num_morphisms())
            .filter(|&m| !self.is_identity(m))
            .map(|m| RawMorphism {
                name: self.morphism_name(m).to_string(),
                dom: self.object_name(self.dom(m)).to_string(),
                cod: self.object_name(self.cod(m)).to_string(),
            })
            .collect();
        let compose = self
            .composable_pairs()
            .filter(|&(g, f)| !self.is_identity(g) && !self.is_identity(f))
            .map(|(g, f)| {
                [
                    self.morphism_name(g).to_string(),
                    self.morphism_name(f).to_string(),
                    self.morphism_name(self.comp(g, f)).to_string(),
                ]
            })
            .collect();
        RawCategory {
            objects,
            morphisms,
            compose,
        }
    }
}

/// Builds a category from its description, generating identities `id_<obj>`
/// and checking the table exhaustively.
pub fn validate_category(raw: &RawCategory) -> Result<FinCategory> {
    let mut names: HashMap<&str, usize> = HashMap::new();
    for (i, o) in raw.objects.iter().enumerate() {
        if names.insert(o.as_str(), i).is_some() {
            return Err(Error::DuplicateName(o.clone()));
        }
    }
    let mut b = CategoryBuilder::new();
    for o in &raw.objects {
        b.add_object_with_identity(o.clone());
    }
    let n = raw.objects.len();
    let mut morphisms: Vec<Morphism> = (0..n)
        .map(|o| Morphism {
            name: format!("id_{}", raw.objects[o]),
            dom: o,
            cod: o,
        })
        .collect();
    let mut mor_index: HashMap<String, usize> = morphisms
        .iter()
        .enumerate()
        .map(|(i, m)| (m.name.clone(), i))
        .collect();
    for m in &raw.morphisms {
        let dom = *names
            .get(m.dom.as_str())
            .ok_or_else(|| Error::UnknownObject(m.dom.clone()))?;
        let cod = *names
            .get(m.cod.as_str())
            .ok_or_else(|| Error::UnknownObject(m.cod.clone()))?;
        if mor_index.contains_key(&m.name) {
            return Err(Error::DuplicateName(m.name.clone()));
        }
        mor_index.insert(m.name.clone(), morphisms.len());
        morphisms.push(Morphism {
            name: m.name.clone(),
            dom,
            cod,
        });
        b.add_morphism(m.name.clone(), dom, cod);
    }
    let lookup = |name: &str| {
        mor_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownMorphism(name.to_string()))
    };
    let is_id = |m: usize| m < n;
    let mut table: HashMap<(usize, usize), usize> = HashMap::new();
    for [g, f, gf] in &raw.compose {
        let (gi, fi, gfi) = (lookup(g)?, lookup(f)?, lookup(gf)?);
        if morphisms[fi].cod != morphisms[gi].dom {
            return Err(Error::NotComposable {
                g: g.clone(),
                f: f.clone(),
            });
        }
        if morphisms[gfi].dom != morphisms[fi].dom || morphisms[gfi].cod != morphisms[gi].cod {
            return Err(Error::CompositeTypeMismatch {
                g: g.clone(),
                f: f.clone(),
                gf: gf.clone(),
            });
        }
        if is_id(gi) && gfi != fi {
            return Err(Error::IdentityViolation {
                morphism: f.clone(),
                identity: g.clone(),
            });
        }
        if is_id(fi) && gfi != gi {
            return Err(Error::IdentityViolation {
                morphism: g.clone(),
                identity: f.clone(),
            });
        }
        if let Some(&prev) = table.get(&(gi, fi)) {
            if prev != gfi {
                return Err(Error::Parse(format!(
                    "conflicting composites for `{g}` after `{f}`: `{}` and `{gf}`",
                    morphisms[prev].name
                )));
            }
        }
        table.insert((gi, fi), gfi);
    }
    let mut full = table.clone();
    for (fi, f) in morphisms.iter().enumerate() {
        for (gi, g) in morphisms.iter().enumerate() {
            if f.cod != g.dom {
                continue;
            }
            let gf = if is_id(gi) {
                fi
            } else if is_id(fi) {
                gi
            } else {
                *table.get(&(gi, fi)).ok_or_else(|| Error::MissingComposite {
                    g: g.name.clone(),
                    f: f.name.clone(),
                })?
            };
            full.insert((gi, fi), gf);
        }
    }
    let cat = b.build(|g, f| full[&(g, f)])?;
    cat.check_laws()?;
    Ok(cat)
}

/// A functor between finite categories, stored as index maps.
#[derive(Clone, Debug)]
pub struct FinFunctor {
    source: FinCategory,
    target: FinCategory,
    obj_map: Vec<usize>,
    mor_map: Vec<usize>,
}

impl PartialEq for FinFunctor {
    fn eq(&self, other: &Self) -> bool {
        self.obj_map == other.obj_map
            && self.mor_map == other.mor_map
            && self.source == other.source
            && self.target == other.target
    }
}

impl Eq for FinFunctor {}

impl FinFunctor {
    pub fn new(
        source: FinCategory,
        target: FinCategory,
        obj_map: Vec<usize>,
        mor_map: Vec<usize>,
    ) -> Result<Self> {
        let f = Self::new_unchecked(source, target, obj_map, mor_map);
        f.check()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(
        source: FinCategory,
        target: FinCategory,
        obj_map: Vec<usize>,
        mor_map: Vec<usize>,
    ) -> Self {
        FinFunctor {
            source,
            target,
            obj_map,
            mor_map,
        }
    }

    pub fn check(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        if self.obj_map.len() != s.num_objects() || self.mor_map.len() != s.num_morphisms() {
            return Err(Error::InvalidFunctor("map sizes do not match source".into()));
        }
        if self.obj_map.iter().any(|&o| o >= t.num_objects())
            || self.mor_map.iter().any(|&m| m >= t.num_morphisms())
        {
            return Err(Error::InvalidFunctor("image out of range".into()));
        }
        for m in 0..s.num_morphisms() {
            let fm = self.mor_map[m];
            if t.dom(fm) != self.obj_map[s.dom(m)] || t.cod(fm) != self.obj_map[s.cod(m)] {
                return Err(Error::InvalidFunctor(format!(
                    "`{}` is sent to `{}` with the wrong endpoints",
                    s.morphism_name(m),
                    t.morphism_name(fm)
                )));
            }
        }
        for o in 0..s.num_objects() {
            if self.mor_map[s.identity(o)] != t.identity(self.obj_map[o]) {
                return Err(Error::InvalidFunctor(format!(
                    "identity of `{}` not preserved",
                    s.object_name(o)
                )));
            }
        }
        for (g, f) in s.composable_pairs() {
            if self.mor_map[s.comp(g, f)] != t.comp(self.mor_map[g], self.mor_map[f]) {
                return Err(Error::InvalidFunctor(format!(
                    "composite of `{}` after `{}` not preserved",
                    s.morphism_name(g),
                    s.morphism_name(f)
                )));
            }
        }
        Ok(())
    }

    pub fn identity(c: &FinCategory) -> Self {
        Self::new_unchecked(
            c.clone(),
            c.clone(),
            (0..c.num_objects()).collect(),
            (0..c.num_morphisms()).collect(),
        )
    }

    pub fn constant(source: &FinCategory, target: &FinCategory, object: usize) -> Self {
        let id = target.identity(object);
        Self::new_unchecked(
            source.clone(),
            target.clone(),
            vec![object; source.num_objects()],
            vec![id; source.num_morphisms()],
        )
    }

    /// The functor `1 -> C` picking `object`.
    pub fn point(target: &FinCategory, object: usize) -> Self {
        Self::constant(&FinCategory::terminal(), target, object)
    }

    pub fn source(&self) -> &FinCategory {
        &self.source
    }

    pub fn target(&self) -> &FinCategory {
        &self.target
    }

    pub fn obj(&self, o: usize) -> usize {
        self.obj_map[o]
    }

    pub fn mor(&self, m: usize) -> usize {
        self.mor_map[m]
    }

    pub fn obj_map(&self) -> &[usize] {
        &self.obj_map
    }

    pub fn mor_map(&self) -> &[usize] {
        &self.mor_map
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &FinFunctor) -> Result<FinFunctor> {
        if first.target != self.source {
            return Err(Error::InvalidFunctor("composite of non-composable functors".into()));
        }
        Ok(self.after_unchecked(first))
    }

    pub(crate) fn after_unchecked(&self, first: &FinFunctor) -> FinFunctor {
        FinFunctor::new_unchecked(
            first.source.clone(),
            self.target.clone(),
            first.obj_map.iter().map(|&o| self.obj_map[o]).collect(),
            first.mor_map.iter().map(|&m| self.mor_map[m]).collect(),
        )
    }

    /// The same index data viewed between opposite categories.
    pub fn opposite(&self) -> FinFunctor {
        self.opposite_between(self.source.opposite(), self.target.opposite())
    }

    /// Opposite functor with caller-supplied opposite categories (avoids
    /// rebuilding them).
    pub fn opposite_between(&self, source_op: FinCategory, target_op: FinCategory) -> FinFunctor {
        FinFunctor::new_unchecked(source_op, target_op, self.obj_map.clone(), self.mor_map.clone())
    }

    pub fn with_target(&self, target: FinCategory) -> FinFunctor {
        FinFunctor::new_unchecked(self.source.clone(), target, self.obj_map.clone(), self.mor_map.clone())
    }

    pub fn is_injective(&self) -> bool {
        let distinct = |v: &[usize]| {
            let mut s = v.to_vec();
            s.sort_unstable();
            s.windows(2).all(|w| w[0] != w[1])
        };
        distinct(&self.obj_map) && distinct(&self.mor_map)
    }

    pub fn is_iso(&self) -> bool {
        self.is_injective()
            && self.obj_map.len() == self.target.num_objects()
            && self.mor_map.len() == self.target.num_morphisms()
    }

    /// Readable rendering `<m0,m1,...>` of the images of all source morphisms.
    pub fn label(&self) -> String {
        let parts: Vec<&str> = self
            .mor_map
            .iter()
            .map(|&m| self.target.morphism_name(m))
            .collect();
        format!("<{}>", parts.join(","))
    }
}

/// A natural transformation between parallel functors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTransform {
    source: FinFunctor,
    target: FinFunctor,
    components: Vec<usize>,
}

impl NatTransform {
    pub fn new(source: FinFunctor, target: FinFunctor, components: Vec<usize>) -> Result<Self> {
        if source.source != target.source || source.target != target.target {
            return Err(Error::InvalidNatTransform("functors are not parallel".into()));
        }
        let (k, t) = (&source.source, &source.target);
        if components.len() != k.num_objects() {
            return Err(Error::InvalidNatTransform("wrong number of components".into()));
        }
        for o in 0..k.num_objects() {
            let c = components[o];
            if c >= t.num_morphisms() || t.dom(c) != source.obj(o) || t.cod(c) != target.obj(o) {
                return Err(Error::InvalidNatTransform(format!(
                    "component at `{}` has the wrong type",
                    k.object_name(o)
                )));
            }
        }
        for h in 0..k.num_morphisms() {
            let (a, b) = (k.dom(h), k.cod(h));
            if t.comp(target.mor(h), components[a]) != t.comp(components[b], source.mor(h)) {
                return Err(Error::InvalidNatTransform(format!(
                    "naturality fails at `{}`",
                    k.morphism_name(h)
                )));
            }
        }
        Ok(NatTransform {
            source,
            target,
            components,
        })
    }

    pub fn identity(f: &FinFunctor) -> Self {
        let comps = (0..f.source.num_objects())
            .map(|o| f.target.identity(f.obj(o)))
            .collect();
        NatTransform {
            source: f.clone(),
            target: f.clone(),
            components: comps,
        }
    }

    pub fn source(&self) -> &FinFunctor {
        &self.source
    }

    pub fn target(&self) -> &FinFunctor {
        &self.target
    }

    pub fn component(&self, o: usize) -> usize {
        self.components[o]
    }

    pub fn components(&self) -> &[usize] {
        &self.components
    }

    pub fn is_iso(&self) -> bool {
        self.components
            .iter()
            .all(|&c| self.source.target.inverse(c).is_some())
    }
}

/// Searches for a natural isomorphism `G ⇒ H`; the first one in
/// lexicographic order of components is returned.
pub fn find_natural_iso(g: &FinFunctor, h: &FinFunctor) -> Option<NatTransform> {
    if g.source != h.source || g.target != h.target {
        return None;
    }
    let k = g.source.clone();
    let t = g.target.clone();
    let n = k.num_objects();
    let candidates: Vec<Vec<usize>> = (0..n)
        .map(|o| {
            t.hom(g.obj(o), h.obj(o))
                .filter(|&m| t.inverse(m).is_some())
                .collect()
        })
        .collect();
    // morphisms checkable once their later endpoint is assigned
    let mut checks: Vec<Vec<usize>> = vec![Vec::new(); n];
    for m in 0..k.num_morphisms() {
        checks[k.dom(m).max(k.cod(m))].push(m);
    }
    let mut comps = vec![usize::MAX; n];
    fn go(
        o: usize,
        comps: &mut Vec<usize>,
        cands: &[Vec<usize>],
        checks: &[Vec<usize>],
        k: &FinCategory,
        t: &FinCategory,
        g: &FinFunctor,
        h: &FinFunctor,
    ) -> bool {
        if o == comps.len() {
            return true;
        }
        for &c in &cands[o] {
            comps[o] = c;
            let ok = checks[o].iter().all(|&m| {
                let (a, b) = (k.dom(m), k.cod(m));
                t.comp(h.mor(m), comps[a]) == t.comp(comps[b], g.mor(m))
            });
            if ok && go(o + 1, comps, cands, checks, k, t, g, h) {
                return true;
            }
        }
        false
    }
    if go(0, &mut comps, &candidates, &checks, &k, &t, g, h) {
        Some(NatTransform {
            source: g.clone(),
            target: h.clone(),
            components: comps,
        })
    } else {
        None
    }
}

/// Restricted enumeration of functors `source -> target`.
pub struct FunctorSearch<'a> {
    source: &'a FinCategory,
    target: &'a FinCategory,
    obj_filter: Option<Box<dyn Fn(usize, usize) -> bool + 'a>>,
    mor_filter: Option<Box<dyn Fn(usize, usize) -> bool + 'a>>,
    guard: Guard,
}

impl<'a> FunctorSearch<'a> {
    pub fn new(source: &'a FinCategory, target: &'a FinCategory) -> Self {
        FunctorSearch {
            source,
            target,
            obj_filter: None,
            mor_filter: None,
            guard: Guard::default(),
        }
    }

    pub fn guard(mut self, guard: Guard) -> Self {
        self.guard = guard;
        self
    }

    /// Only allow `source object -> target object` pairs accepted by `f`.
    pub fn objects(mut self, f: impl Fn(usize, usize) -> bool + 'a) -> Self {
        self.obj_filter = Some(Box::new(f));
        self
    }

    /// Only allow `source morphism -> target morphism` pairs accepted by `f`.
    pub fn morphisms(mut self, f: impl Fn(usize, usize) -> bool + 'a) -> Self {
        self.mor_filter = Some(Box::new(f));
        self
    }

    fn obj_ok(&self, o: usize, t: usize) -> bool {
        self.obj_filter.as_ref().is_none_or(|f| f(o, t))
    }

    fn mor_ok(&self, m: usize, t: usize) -> bool {
        self.mor_filter.as_ref().is_none_or(|f| f(m, t))
    }

    pub fn estimate(&self) -> u128 {
        let (s, t) = (self.source, self.target);
        let mut est: u128 = 1;
        for o in 0..s.num_objects() {
            let n = (0..t.num_objects()).filter(|&x| self.obj_ok(o, x)).count() as u128;
            est = est.saturating_mul(n);
        }
        for m in 0..s.num_morphisms() {
            if s.is_identity(m) {
                continue;
            }
            let n = if self.mor_filter.is_some() {
                (0..t.num_morphisms()).filter(|&x| self.mor_ok(m, x)).count()
            } else {
                t.num_morphisms()
            } as u128;
            est = est.saturating_mul(n);
        }
        est
    }

    /// All functors, sorted by `(obj_map, mor_map)`.
    pub fn run(&self) -> Result<Vec<FinFunctor>> {
        self.guard.check(self.estimate())?;
        let (s, t) = (self.source, self.target);
        enum Step {
            Obj(usize),
            Mor(usize),
        }
        let mut steps = Vec::new();
        let mut step_of_mor = vec![0usize; s.num_morphisms()];
        for o in 0..s.num_objects() {
            steps.push(Step::Obj(o));
            step_of_mor[s.identity(o)] = steps.len() - 1;
            for m in 0..s.num_morphisms() {
                if !s.is_identity(m) && s.dom(m).max(s.cod(m)) == o {
                    steps.push(Step::Mor(m));
                    step_of_mor[m] = steps.len() - 1;
                }
            }
        }
        let mut constraints: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); steps.len()];
        for (g, f) in s.composable_pairs() {
            if s.is_identity(g) || s.is_identity(f) {
                continue;
            }
            let gf = s.comp(g, f);
            let at = step_of_mor[g].max(step_of_mor[f]).max(step_of_mor[gf]);
            constraints[at].push((g, f, gf));
        }
        let mut homs: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for m in 0..t.num_morphisms() {
            homs.entry((t.dom(m), t.cod(m))).or_default().push(m);
        }
        let empty = Vec::new();
        let mut obj_map = vec![usize::MAX; s.num_objects()];
        let mut mor_map = vec![usize::MAX; s.num_morphisms()];
        let mut out = Vec::new();

        struct Ctx<'c, 'a> {
            search: &'c FunctorSearch<'a>,
            steps: &'c [Step],
            constraints: &'c [Vec<(usize, usize, usize)>],
            homs: &'c HashMap<(usize, usize), Vec<usize>>,
            empty: &'c Vec<usize>,
        }
        fn go(
            i: usize,
            cx: &Ctx<'_, '_>,
            obj_map: &mut Vec<usize>,
            mor_map: &mut Vec<usize>,
            out: &mut Vec<(Vec<usize>, Vec<usize>)>,
        ) {
            let (s, t) = (cx.search.source, cx.search.target);
            if i == cx.steps.len() {
                out.push((obj_map.clone(), mor_map.clone()));
                return;
            }
            let holds = |mor_map: &Vec<usize>| {
                cx.constraints[i]
                    .iter()
                    .all(|&(g, f, gf)| t.comp(mor_map[g], mor_map[f]) == mor_map[gf])
            };
            match cx.steps[i] {
                Step::Obj(o) => {
                    for x in 0..t.num_objects() {
                        if !cx.search.obj_ok(o, x) {
                            continue;
                        }
                        let id = t.identity(x);
                        if !cx.search.mor_ok(s.identity(o), id) {
                            continue;
                        }
                        obj_map[o] = x;
                        mor_map[s.identity(o)] = id;
                        if holds(mor_map) {
                            go(i + 1, cx, obj_map, mor_map, out);
                        }
                    }
                    obj_map[o] = usize::MAX;
                    mor_map[s.identity(o)] = usize::MAX;
                }
                Step::Mor(m) => {
                    let key = (obj_map[s.dom(m)], obj_map[s.cod(m)]);
                    for &x in cx.homs.get(&key).unwrap_or(cx.empty) {
                        if !cx.search.mor_ok(m, x) {
                            continue;
                        }
                        mor_map[m] = x;
                        if holds(mor_map) {
                            go(i + 1, cx, obj_map, mor_map, out);
                        }
                    }
                    mor_map[m] = usize::MAX;
                }
            }
        }
        let cx = Ctx {
            search: self,
            steps: &steps,
            constraints: &constraints,
            homs: &homs,
            empty: &empty,
        };
        go(0, &cx, &mut obj_map, &mut mor_map, &mut out);
        out.sort();
        Ok(out
            .into_iter()
            .map(|(o, m)| FinFunctor::new_unchecked(s.clone(), t.clone(), o, m))
            .collect())
    }
}

/// All functors `source -> target` in lexicographic order of `(obj_map, mor_map)`.
pub fn enumerate_functors(source: &FinCategory, target: &FinCategory, guard: Guard) -> Result<Vec<FinFunctor>> {
    FunctorSearch::new(source, target).guard(guard).run()
}

/// Connected components, each sorted, listed by least object.
pub fn pi0(c: &FinCategory) -> Vec<Vec<usize>> {
    let n = c.num_objects();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    for m in 0..c.num_morphisms() {
        let (a, b) = (find(&mut parent, c.dom(m)), find(&mut parent, c.cod(m)));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for o in 0..n {
        let r = find(&mut parent, o);
        groups.entry(r).or_default().push(o);
    }
    let mut comps: Vec<Vec<usize>> = groups.into_values().collect();
    comps.sort_by_key(|v| v[0]);
    comps
}

/// Nonempty with a single component.
pub fn is_connected(c: &FinCategory) -> bool {
    pi0(c).len() == 1
}

/// Comma category `S ↓ T` with its two projections and the connecting
/// morphism of each object.
#[derive(Clone, Debug)]
pub struct CommaCategory {
    pub category: FinCategory,
    pub left: FinFunctor,
    pub right: FinFunctor,
    pub connecting: Vec<usize>,
}

fn build_comma(
    s: &FinFunctor,
    t: &FinFunctor,
    obj_name: impl Fn(usize, usize, usize) -> String,
    mor_label: impl Fn(usize, usize) -> String,
) -> Result<CommaCategory> {
    if s.target != t.target {
        return Err(Error::BaseMismatch);
    }
    let (a_cat, b_cat, c_cat) = (s.source.clone(), t.source.clone(), s.target.clone());
    let mut objs: Vec<(usize, usize, usize)> = Vec::new();
    let mut by_pair: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for a in 0..a_cat.num_objects() {
        for b in 0..b_cat.num_objects() {
            for g in c_cat.hom(s.obj(a), t.obj(b)) {
                by_pair.entry((a, b)).or_default().push(objs.len());
                objs.push((a, b, g));
            }
        }
    }
    let mut builder = CategoryBuilder::new();
    let names: Vec<String> = objs.iter().map(|&(a, b, g)| obj_name(a, b, g)).collect();
    for n in &names {
        builder.add_object(n.clone());
    }
    let mut mors: Vec<(usize, usize)> = Vec::new();
    let mut lookup: HashMap<(usize, usize, usize, usize), usize> = HashMap::new();
    for (i, &(a, b, g)) in objs.iter().enumerate() {
        for &u in a_cat.outgoing(a) {
            for &v in b_cat.outgoing(b) {
                let key = (a_cat.cod(u), b_cat.cod(v));
                let Some(targets) = by_pair.get(&key) else {
                    continue;
                };
                let lhs = c_cat.comp(t.mor(v), g);
                for &j in targets {
                    let g2 = objs[j].2;
                    if c_cat.comp(g2, s.mor(u)) != lhs {
                        continue;
                    }
                    let is_id = i == j && a_cat.is_identity(u) && b_cat.is_identity(v);
                    let name = if is_id {
                        format!("id_{}", names[i])
                    } else {
                        format!("{}:{}->{}", mor_label(u, v), names[i], names[j])
                    };
                    let m = builder.add_morphism(name, i, j);
                    if is_id {
                        builder.set_identity(i, m);
                    }
                    lookup.insert((u, v, i, j), m);
                    mors.push((u, v));
                }
            }
        }
    }
    let mor_ends: Vec<(usize, usize)> = {
        let mut v = vec![(0, 0); mors.len()];
        for (&(_, _, i, j), &m) in &lookup {
            v[m] = (i, j);
        }
        v
    };
    let category = builder.build(|g, f| {
        let (u2, v2) = mors[g];
        let (u1, v1) = mors[f];
        let (i, _) = mor_ends[f];
        let (_, k) = mor_ends[g];
        lookup[&(a_cat.comp(u2, u1), b_cat.comp(v2, v1), i, k)]
    })?;
    let left = FinFunctor::new_unchecked(
        category.clone(),
        a_cat.clone(),
        objs.iter().map(|o| o.0).collect(),
        mors.iter().map(|m| m.0).collect(),
    );
    let right = FinFunctor::new_unchecked(
        category.clone(),
        b_cat.clone(),
        objs.iter().map(|o| o.1).collect(),
        mors.iter().map(|m| m.1).collect(),
    );
    Ok(CommaCategory {
        category,
        left,
        right,
        connecting: objs.iter().map(|o| o.2).collect(),
    })
}

/// The comma category `d/F`: objects `(c, g: d -> Fc)` named `(c,g)`.
pub fn comma(f: &FinFunctor, d: usize) -> Result<CommaCategory> {
    let dcat = f.target();
    if d >= dcat.num_objects() {
        return Err(Error::UnknownObject(format!("#{d}")));
    }
    let point = FinFunctor::point(dcat, d);
    let c = f.source().clone();
    build_comma(
        &point,
        f,
        |_, b, g| format!("({},{})", c.object_name(b), dcat.morphism_name(g)),
        |_, v| c.morphism_name(v).to_string(),
    )
}

/// The comma category `F/d`: objects `(c, g: Fc -> d)` named `(c,g)`.
pub fn comma_over(f: &FinFunctor, d: usize) -> Result<CommaCategory> {
    let dcat = f.target();
    if d >= dcat.num_objects() {
        return Err(Error::UnknownObject(format!("#{d}")));
    }
    let point = FinFunctor::point(dcat, d);
    let c = f.source().clone();
    build_comma(
        f,
        &point,
        |a, _, g| format!("({},{})", c.object_name(a), dcat.morphism_name(g)),
        |u, _| c.morphism_name(u).to_string(),
    )
}

/// The slice `C/c` with its forgetful functor and lookup tables.
#[derive(Clone, Debug)]
pub struct Slice {
    pub comma: CommaCategory,
    pub apex: usize,
    pub terminal: usize,
    object_of_arrow: HashMap<usize, usize>,
    to_terminal: Vec<usize>,
    mor_lookup: HashMap<(usize, usize), usize>,
}

impl Slice {
    pub fn category(&self) -> &FinCategory {
        &self.comma.category
    }

    /// The forgetful functor `U_c : C/c -> C`.
    pub fn forgetful(&self) -> &FinFunctor {
        &self.comma.left
    }

    /// The arrow into the apex that an object of the slice stands for.
    pub fn arrow(&self, object: usize) -> usize {
        self.comma.connecting[object]
    }

    pub fn object_of_arrow(&self, g: usize) -> usize {
        self.object_of_arrow[&g]
    }

    /// The unique morphism from `object` to the terminal object `1_c`.
    pub fn to_terminal(&self, object: usize) -> usize {
        self.to_terminal[object]
    }

    /// The slice morphism over `k` whose codomain is `cod_object`.
    pub fn morphism_over(&self, k: usize, cod_object: usize) -> usize {
        self.mor_lookup[&(k, cod_object)]
    }
}

/// `C/c` for `c ∈ C`, built as the comma of the identity with a point.
pub fn slice(c: &FinCategory, apex: usize) -> Result<Slice> {
    if apex >= c.num_objects() {
        return Err(Error::UnknownObject(format!("#{apex}")));
    }
    let point = FinFunctor::point(c, apex);
    let id = FinFunctor::identity(c);
    let comma = build_comma(
        &id,
        &point,
        |a, _, g| format!("({},{})", c.object_name(a), c.morphism_name(g)),
        |u, _| c.morphism_name(u).to_string(),
    )?;
    let cat = &comma.category;
    let object_of_arrow: HashMap<usize, usize> = comma
        .connecting
        .iter()
        .enumerate()
        .map(|(o, &g)| (g, o))
        .collect();
    let terminal = object_of_arrow[&c.identity(apex)];
    let mut mor_lookup = HashMap::new();
    for m in 0..cat.num_morphisms() {
        mor_lookup.insert((comma.left.mor(m), cat.cod(m)), m);
    }
    let to_terminal = (0..cat.num_objects())
        .map(|o| mor_lookup[&(comma.connecting[o], terminal)])
        .collect();
    Ok(Slice {
        comma,
        apex,
        terminal,
        object_of_arrow,
        to_terminal,
        mor_lookup,
    })
}

/// All slices of a category together with the post-composition functors
/// `C/h : C/d -> C/c` for `h : d -> c`.
#[derive(Clone, Debug)]
pub struct SliceFamily {
    base: FinCategory,
    slices: Vec<Slice>,
    post: Vec<FinFunctor>,
}

impl SliceFamily {
    pub fn new(base: &FinCategory) -> Self {
        let slices: Vec<Slice> = (0..base.num_objects())
            .map(|c| slice(base, c).expect("object in range"))
            .collect();
        let post = (0..base.num_morphisms())
            .map(|h| {
                let (d, c) = (base.dom(h), base.cod(h));
                let (sd, sc) = (&slices[d], &slices[c]);
                let src = sd.category();
                let obj_map: Vec<usize> = (0..src.num_objects())
                    .map(|o| sc.object_of_arrow(base.comp(h, sd.arrow(o))))
                    .collect();
                let mor_map = (0..src.num_morphisms())
                    .map(|m| sc.morphism_over(sd.forgetful().mor(m), obj_map[src.cod(m)]))
                    .collect();
                FinFunctor::new_unchecked(src.clone(), sc.category().clone(), obj_map, mor_map)
            })
            .collect();
        SliceFamily {
            base: base.clone(),
            slices,
            post,
        }
    }

    pub fn base(&self) -> &FinCategory {
        &self.base
    }

    pub fn slice(&self, c: usize) -> &Slice {
        &self.slices[c]
    }

    /// `C/h : C/dom(h) -> C/cod(h)`.
    pub fn post(&self, h: usize) -> &FinFunctor {
        &self.post[h]
    }
}

/// `F` is final iff every comma `d/F` is nonempty and connected.
pub fn is_final(f: &FinFunctor) -> bool {
    (0..f.target().num_objects()).all(|d| {
        comma(f, d)
            .map(|cm| is_connected(&cm.category))
            .unwrap_or(false)
    })
}

/// Strict pullback `A ×_C B` of `F: A -> C` and `G: B -> C` in Cat.
#[derive(Clone, Debug)]
pub struct CatPullback {
    pub category: FinCategory,
    pub left: FinFunctor,
    pub right: FinFunctor,
}

pub fn pullback_cat(f: &FinFunctor, g: &FinFunctor) -> Result<CatPullback> {
    if f.target != g.target {
        return Err(Error::BaseMismatch);
    }
    let (a, b) = (f.source(), g.source());
    let mut builder = CategoryBuilder::new();
    let mut objs = Vec::new();
    let mut obj_idx = HashMap::new();
    for x in 0..a.num_objects() {
        for y in 0..b.num_objects() {
            if f.obj(x) == g.obj(y) {
                obj_idx.insert((x, y), objs.len());
                builder.add_object(format!("({},{})", a.object_name(x), b.object_name(y)));
                objs.push((x, y));
            }
        }
    }
    let mut mors = Vec::new();
    let mut mor_idx = HashMap::new();
    for u in 0..a.num_morphisms() {
        for v in 0..b.num_morphisms() {
            if f.mor(u) != g.mor(v) {
                continue;
            }
            let (i, j) = (obj_idx[&(a.dom(u), b.dom(v))], obj_idx[&(a.cod(u), b.cod(v))]);
            let id = a.is_identity(u) && b.is_identity(v);
            let name = if id {
                format!("id_({},{})", a.object_name(a.dom(u)), b.object_name(b.dom(v)))
            } else {
                format!("({},{})", a.morphism_name(u), b.morphism_name(v))
            };
            let m = builder.add_morphism(name, i, j);
            if id {
                builder.set_identity(i, m);
            }
            mor_idx.insert((u, v), m);
            mors.push((u, v));
        }
    }
    let category = builder.build(|p, q| {
        let ((u2, v2), (u1, v1)) = (mors[p], mors[q]);
        mor_idx[&(a.comp(u2, u1), b.comp(v2, v1))]
    })?;
    Ok(CatPullback {
        left: FinFunctor::new_unchecked(
            category.clone(),
            a.clone(),
            objs.iter().map(|o| o.0).collect(),
            mors.iter().map(|m| m.0).collect(),
        ),
        right: FinFunctor::new_unchecked(
            category.clone(),
            b.clone(),
            objs.iter().map(|o| o.1).collect(),
            mors.iter().map(|m| m.1).collect(),
        ),
        category,
    })
}

/// Whether the commuting square `bottom ∘ left = right ∘ top` is a strict
/// pullback in Cat: the induced functor into `A ×_C B` is an isomorphism.
pub fn is_cat_pullback(top: &FinFunctor, left: &FinFunctor, right: &FinFunctor, bottom: &FinFunctor) -> bool {
    // square:   P --top--> B
    //           |left      |right
    //           A --bottom-> C
    if bottom.after(left).ok() != right.after(top).ok() {
        return false;
    }
    let Ok(pb) = pullback_cat(bottom, right) else {
        return false;
    };
    let p = top.source();
    let obj_lookup: HashMap<(usize, usize), usize> = (0..pb.category.num_objects())
        .map(|o| ((pb.left.obj(o), pb.right.obj(o)), o))
        .collect();
    let mor_lookup: HashMap<(usize, usize), usize> = (0..pb.category.num_morphisms())
        .map(|m| ((pb.left.mor(m), pb.right.mor(m)), m))
        .collect();
    let obj_map: Option<Vec<usize>> = (0..p.num_objects())
        .map(|o| obj_lookup.get(&(left.obj(o), top.obj(o))).copied())
        .collect();
    let mor_map: Option<Vec<usize>> = (0..p.num_morphisms())
        .map(|m| mor_lookup.get(&(left.mor(m), top.mor(m))).copied())
        .collect();
    match (obj_map, mor_map) {
        (Some(o), Some(m)) => {
            FinFunctor::new_unchecked(p.clone(), pb.category.clone(), o, m).is_iso()
        }
        _ => false,
    }
}

/// Result of transporting a functor along a natural isomorphism.
#[derive(Clone, Debug)]
pub struct Transport {
    pub functor: FinFunctor,
    /// `F0 ⇒ F`: `e_c` at objects `M(c)`, identities elsewhere.
    pub iso: NatTransform,
}

/// Given a mono `M: C ↣ D`, a functor `F0: D -> T` and a natural iso
/// `e: F0∘M ⇒ E`, returns `F: D -> T` with `F∘M = E` on the nose and `F ≅ F0`.
pub fn iso_transport(mono: &FinFunctor, f0: &FinFunctor, e: &NatTransform) -> Result<Transport> {
    if !mono.is_injective() {
        return Err(Error::NotMono);
    }
    let t = f0.target().clone();
    let d = mono.target().clone();
    if f0.source() != &d || e.source().source() != mono.source() {
        return Err(Error::BaseMismatch);
    }
    let f0m = f0.after(mono)?;
    if e.source().obj_map() != f0m.obj_map() || e.source().mor_map() != f0m.mor_map() {
        return Err(Error::InvalidNatTransform("source of e is not F0∘M".into()));
    }
    let mut tau: Vec<usize> = (0..d.num_objects()).map(|x| t.identity(f0.obj(x))).collect();
    let mut tau_inv = tau.clone();
    for c in 0..mono.source().num_objects() {
        let comp = e.component(c);
        let inv = t
            .inverse(comp)
            .ok_or_else(|| Error::NotIso(mono.source().object_name(c).to_string()))?;
        tau[mono.obj(c)] = comp;
        tau_inv[mono.obj(c)] = inv;
    }
    let obj_map: Vec<usize> = (0..d.num_objects()).map(|x| t.cod(tau[x])).collect();
    let mor_map: Vec<usize> = (0..d.num_morphisms())
        .map(|k| {
            let (a, b) = (d.dom(k), d.cod(k));
            t.comp(tau[b], t.comp(f0.mor(k), tau_inv[a]))
        })
        .collect();
    let functor = FinFunctor::new(d.clone(), t.clone(), obj_map, mor_map)?;
    let iso = NatTransform::new(f0.clone(), functor.clone(), tau)?;
    Ok(Transport { functor, iso })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn raw(objects: &[&str], morphisms: &[(&str, &str, &str)], compose: &[[&str; 3]]) -> RawCategory {
        RawCategory {
            objects: objects.iter().map(|s| s.to_string()).collect(),
            morphisms: morphisms
                .iter()
                .map(|(n, d, c)| RawMorphism {
                    name: n.to_string(),
                    dom: d.to_string(),
                    cod: c.to_string(),
                })
                .collect(),
            compose: compose
                .iter()
                .map(|[a, b, c]| [a.to_string(), b.to_string(), c.to_string()])
                .collect(),
        }
    }

    #[test]
    fn terminal_description_gets_one_identity() {
        let c = validate_category(&raw(&["*"], &[], &[])).unwrap();
        assert_eq!(c.num_objects(), 1);
        assert_eq!(c.num_morphisms(), 1);
        assert_eq!(c.morphism_name(0), "id_*");
    }

    #[test]
    fn arrow_has_three_morphisms() {
        let c = validate_category(&raw(&["0", "1"], &[("f", "0", "1")], &[])).unwrap();
        assert_eq!(c.num_morphisms(), 3);
        c.check_laws().unwrap();
    }

    #[test]
    fn wrong_composite_breaks_associativity() {
        // f,f2: 0->1, idempotent e on 1, g: 1->2; e∘f = f2 forces g∘f = g∘f2
        let bad = raw(
            &["0", "1", "2"],
            &[
                ("f", "0", "1"),
                ("f2", "0", "1"),
                ("e", "1", "1"),
                ("g", "1", "2"),
                ("h", "0", "2"),
                ("h2", "0", "2"),
            ],
            &[
                ["e", "e", "e"],
                ["e", "f", "f2"],
                ["e", "f2", "f2"],
                ["g", "e", "g"],
                ["g", "f", "h"],
                ["g", "f2", "h2"],
            ],
        );
        assert!(matches!(validate_category(&bad), Err(Error::AssocViolation { .. })));
        let mut missing = bad.clone();
        missing.compose.retain(|c| c[0] != "g" || c[1] != "f");
        assert!(matches!(validate_category(&missing), Err(Error::MissingComposite { .. })));
    }

    #[test]
    fn identity_entries_are_checked() {
        let bad = raw(&["0", "1"], &[("f", "0", "1"), ("k", "0", "1")], &[["id_1", "f", "k"]]);
        assert!(matches!(validate_category(&bad), Err(Error::IdentityViolation { .. })));
        let unknown = raw(&["0"], &[("f", "0", "9")], &[]);
        assert!(matches!(validate_category(&unknown), Err(Error::UnknownObject(_))));
    }

    #[test]
    fn opposite_is_an_involution() {
        for c in catalog::default_categories() {
            assert_eq!(c.opposite().opposite(), c);
            c.opposite().check_laws().unwrap();
        }
        let t = FinCategory::terminal();
        assert_eq!(t.opposite(), t);
        let span = catalog::span();
        let cospan = span.opposite();
        assert_eq!(cospan.num_objects(), 3);
        assert_eq!(cospan.num_morphisms(), 5);
        // the apex becomes a sink
        let m = cospan.object_index("m").unwrap();
        assert_eq!(cospan.incoming(m).len(), 3);
    }

    #[test]
    fn opposite_of_arrow_is_isomorphic_to_arrow() {
        let two = catalog::arrow();
        let op = two.opposite();
        let isos: Vec<_> = enumerate_functors(&two, &op, Guard::default())
            .unwrap()
            .into_iter()
            .filter(|f| f.is_iso())
            .collect();
        assert_eq!(isos.len(), 1);
    }

    #[test]
    fn slices_of_small_categories() {
        let two = catalog::arrow();
        let s1 = slice(&two, 1).unwrap();
        assert_eq!(s1.category().num_objects(), 2);
        assert_eq!(s1.category().num_morphisms(), 3);
        let s0 = slice(&two, 0).unwrap();
        assert_eq!(s0.category().num_objects(), 1);
        assert_eq!(s0.category().num_morphisms(), 1);
        let par = catalog::parallel_pair();
        let sp = slice(&par, 1).unwrap();
        assert_eq!(sp.category().num_objects(), 3);
        assert_eq!(sp.category().non_identity_count(), 2);
        assert!(matches!(slice(&par, 7), Err(Error::UnknownObject(_))));
        for c in catalog::default_categories() {
            for o in 0..c.num_objects() {
                let s = slice(&c, o).unwrap();
                s.category().check_laws().unwrap();
                s.forgetful().check().unwrap();
            }
        }
    }

    #[test]
    fn slice_object_names_are_pairs() {
        let two = catalog::arrow();
        let s1 = slice(&two, 1).unwrap();
        assert_eq!(s1.category().objects(), &["(0,f)".to_string(), "(1,id_1)".to_string()]);
        assert_eq!(s1.terminal, 1);
    }

    #[test]
    fn comma_of_point_functors() {
        let one = FinCategory::terminal();
        let id = FinFunctor::identity(&one);
        assert_eq!(comma(&id, 0).unwrap().category.num_objects(), 1);
        let two = catalog::arrow();
        let pick0 = FinFunctor::point(&two, 0);
        assert_eq!(comma(&pick0, 1).unwrap().category.num_objects(), 0);
        let c0 = comma(&pick0, 0).unwrap();
        assert_eq!(c0.category.num_objects(), 1);
        assert_eq!(c0.category.object_name(0), "(*,id_0)");
        assert!(matches!(comma(&pick0, 5), Err(Error::UnknownObject(_))));
    }

    #[test]
    fn functor_enumeration_counts() {
        let one = FinCategory::terminal();
        let two = catalog::arrow();
        for d in catalog::default_categories() {
            assert_eq!(enumerate_functors(&one, &d, Guard::default()).unwrap().len(), d.num_objects());
        }
        // functors out of the walking arrow are the morphisms of the target
        for d in catalog::default_categories() {
            assert_eq!(enumerate_functors(&two, &d, Guard::default()).unwrap().len(), d.num_morphisms());
        }
        let err = enumerate_functors(&two, &two, Guard(2)).unwrap_err();
        assert!(matches!(err, Error::SizeGuardExceeded { estimate: 12, guard: 2 }));
    }

    /// Brute force over every (obj_map, mor_map) pair, checking the laws.
    fn brute_force_count(s: &FinCategory, t: &FinCategory) -> usize {
        let no = s.num_objects();
        let nm = s.num_morphisms();
        let mut count = 0;
        let total_o = t.num_objects().pow(no as u32);
        let total_m = t.num_morphisms().pow(nm as u32);
        for oi in 0..total_o {
            let mut x = oi;
            let obj: Vec<usize> = (0..no)
                .map(|_| {
                    let r = x % t.num_objects();
                    x /= t.num_objects();
                    r
                })
                .collect();
            for mi in 0..total_m {
                let mut y = mi;
                let mor: Vec<usize> = (0..nm)
                    .map(|_| {
                        let r = y % t.num_morphisms();
                        y /= t.num_morphisms();
                        r
                    })
                    .collect();
                if FinFunctor::new(s.clone(), t.clone(), obj.clone(), mor).is_ok() {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn enumeration_matches_brute_force() {
        let cats = catalog::default_categories();
        let small: Vec<_> = cats.iter().filter(|c| c.num_morphisms() <= 4).collect();
        for s in &small {
            for t in &small {
                if s.num_morphisms() > 3 {
                    continue;
                }
                let listed = enumerate_functors(s, t, Guard::default()).unwrap();
                assert_eq!(listed.len(), brute_force_count(s, t));
                let mut keys: Vec<_> = listed.iter().map(|f| (f.obj_map().to_vec(), f.mor_map().to_vec())).collect();
                let sorted = keys.clone();
                keys.dedup();
                assert_eq!(keys, sorted);
            }
        }
    }

    #[test]
    fn connectivity() {
        assert!(!is_connected(&FinCategory::empty()));
        assert!(pi0(&FinCategory::empty()).is_empty());
        assert!(is_connected(&catalog::arrow()));
        assert_eq!(pi0(&catalog::discrete(2)).len(), 2);
    }

    #[test]
    fn finality() {
        let two = catalog::arrow();
        // the terminal object 1 of the arrow
        assert!(is_final(&FinFunctor::point(&two, 1)));
        assert!(!is_final(&FinFunctor::point(&two, 0)));
        for c in catalog::default_categories() {
            assert!(is_final(&FinFunctor::identity(&c)));
        }
        let tri = catalog::triangle();
        assert!(is_final(&FinFunctor::point(&tri, tri.object_index("2").unwrap())));
    }

    #[test]
    fn cat_pullback_of_identity() {
        let c = catalog::triangle();
        let id = FinFunctor::identity(&c);
        let pb = pullback_cat(&id, &id).unwrap();
        assert_eq!(pb.category.num_objects(), 3);
        assert!(is_cat_pullback(&id, &id, &id, &id));
    }

    #[test]
    fn transport_identity_and_full_mono() {
        let iso = catalog::walking_iso();
        let two = catalog::arrow();
        let m = FinFunctor::point(&two, 0);
        let f0 = FinFunctor::constant(&two, &iso, 0);
        let e = NatTransform::identity(&f0.after(&m).unwrap());
        let tr = iso_transport(&m, &f0, &e).unwrap();
        assert_eq!(tr.functor, f0);

        let id = FinFunctor::identity(&two);
        let e_target = FinFunctor::constant(&two, &iso, 1);
        let i = iso.morphism_index("i").unwrap();
        let e = NatTransform::new(f0.clone(), e_target.clone(), vec![i, i]).unwrap();
        let tr = iso_transport(&id, &f0, &e).unwrap();
        assert_eq!(tr.functor, e_target);
    }

    #[test]
    fn transport_matches_exhaustive_search() {
        // M: 1 -> 2 at 0, F0 constant at 0 in the walking iso, E = point 1
        let iso = catalog::walking_iso();
        let two = catalog::arrow();
        let one = FinCategory::terminal();
        let m = FinFunctor::point(&two, 0);
        let f0 = FinFunctor::constant(&two, &iso, 0);
        let e_fun = FinFunctor::constant(&one, &iso, 1);
        let i = iso.morphism_index("i").unwrap();
        let e = NatTransform::new(f0.after(&m).unwrap(), e_fun.clone(), vec![i]).unwrap();
        let tr = iso_transport(&m, &f0, &e).unwrap();
        assert_eq!(tr.functor.obj(0), 1);
        assert_eq!(tr.functor.obj(1), 0);
        // brute force: functors F with F∘M = E and F ≅ F0
        let all = enumerate_functors(&two, &iso, Guard::default()).unwrap();
        let hits: Vec<_> = all
            .into_iter()
            .filter(|f| f.after(&m).unwrap() == e_fun)
            .filter(|f| find_natural_iso(&f0, f).is_some())
            .filter(|f| f.obj(1) == f0.obj(1))
            .collect();
        assert_eq!(hits, vec![tr.functor.clone()]);
        assert!(tr.iso.is_iso());
    }

    #[test]
    fn transport_rejects_bad_input() {
        let iso = catalog::walking_iso();
        let two = catalog::arrow();
        let collapse = FinFunctor::constant(&two, &FinCategory::terminal(), 0);
        let f0 = FinFunctor::identity(&FinCategory::terminal());
        let e = NatTransform::identity(&f0.after(&collapse).unwrap());
        assert!(matches!(iso_transport(&collapse, &f0, &e), Err(Error::NotMono)));

        let m = FinFunctor::identity(&two);
        let f0 = FinFunctor::new(
            two.clone(),
            two.clone(),
            vec![0, 1],
            (0..3).collect(),
        )
        .unwrap();
        let collapse0 = FinFunctor::constant(&two, &two, 1);
        let f = two.morphism_index("f").unwrap();
        let e = NatTransform::new(f0.clone(), collapse0, vec![f, two.identity(1)]).unwrap();
        assert!(matches!(iso_transport(&m, &f0, &e), Err(Error::NotIso(_))));
        let _ = iso;
    }
}
