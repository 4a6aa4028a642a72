//! JSON file formats. References to categories and presheaves are either a
//! path (relative to the referring file) or an inline object.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context, Result};
use hscat_core::presheaf::{RawPresheaf, RawPresheafMap};
use hscat_core::{validate_category, FinCategory, FinFunctor, Presheaf, PresheafMap, RawCategory};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CategoryRef {
    Path(String),
    Inline(RawCategory),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PresheafFile {
    pub base: CategoryRef,
    #[serde(flatten)]
    pub presheaf: RawPresheaf,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PresheafRef {
    Path(String),
    Inline(Box<PresheafFile>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MapFile {
    pub source: PresheafRef,
    pub target: PresheafRef,
    #[serde(flatten)]
    pub map: RawPresheafMap,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FunctorFile {
    pub source: CategoryRef,
    pub target: CategoryRef,
    pub on_objects: BTreeMap<String, String>,
    #[serde(default)]
    pub on_morphisms: BTreeMap<String, String>,
}

/// A malformed or inconsistent input file.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn input<E: std::fmt::Display>(path: &Path) -> impl FnOnce(E) -> anyhow::Error + '_ {
    move |e| anyhow!(InputError(format!("{}: {e}", path.display())))
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).map_err(input(path))
}

fn resolve(from: &Path, rel: &str) -> PathBuf {
    from.parent().unwrap_or(Path::new(".")).join(rel)
}

pub fn category_from_ref(r: &CategoryRef, from: &Path) -> Result<FinCategory> {
    match r {
        CategoryRef::Path(p) => load_category(&resolve(from, p)),
        CategoryRef::Inline(raw) => validate_category(raw).map_err(input(from)),
    }
}

pub fn load_category(path: &Path) -> Result<FinCategory> {
    let raw: RawCategory = read_json(path)?;
    validate_category(&raw).map_err(input(path))
}

fn presheaf_from_file(file: &PresheafFile, from: &Path) -> Result<Presheaf> {
    let base = category_from_ref(&file.base, from)?;
    Presheaf::from_raw(&base, &file.presheaf).map_err(input(from))
}

pub fn presheaf_from_ref(r: &PresheafRef, from: &Path) -> Result<Presheaf> {
    match r {
        PresheafRef::Path(p) => load_presheaf(&resolve(from, p)),
        PresheafRef::Inline(f) => presheaf_from_file(f, from),
    }
}

pub fn load_presheaf(path: &Path) -> Result<Presheaf> {
    let file: PresheafFile = read_json(path)?;
    presheaf_from_file(&file, path)
}

pub fn load_map(path: &Path) -> Result<PresheafMap> {
    let file: MapFile = read_json(path)?;
    let source = presheaf_from_ref(&file.source, path)?;
    let target = presheaf_from_ref(&file.target, path)?;
    PresheafMap::from_raw(&source, &target, &file.map).map_err(input(path))
}

pub fn functor_from_file(file: &FunctorFile, from: &Path) -> Result<FinFunctor> {
    let s = category_from_ref(&file.source, from)?;
    let t = category_from_ref(&file.target, from)?;
    let err = |m: String| anyhow!(InputError(format!("{}: {m}", from.display())));
    let obj_map = s
        .objects()
        .iter()
        .map(|o| {
            let name = file.on_objects.get(o).ok_or_else(|| err(format!("object {o} is not mapped")))?;
            t.object_index(name).map_err(|_| err(format!("unknown target object {name}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let mor_map = (0..s.num_morphisms())
        .map(|m| {
            let name = s.morphism_name(m);
            match file.on_morphisms.get(name) {
                Some(n) => t.morphism_index(n).map_err(|_| err(format!("unknown target morphism {n}"))),
                None if s.is_identity(m) => Ok(t.identity(obj_map[s.dom(m)])),
                None => Err(err(format!("morphism {name} is not mapped"))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    FinFunctor::new(s, t, obj_map, mor_map).map_err(input(from))
}

pub fn load_functor(path: &Path) -> Result<FinFunctor> {
    let file: FunctorFile = read_json(path)?;
    functor_from_file(&file, path)
}

pub fn presheaf_file(x: &Presheaf) -> PresheafFile {
    PresheafFile {
        base: CategoryRef::Inline(x.base().to_raw()),
        presheaf: x.to_raw(),
    }
}

pub fn map_file(f: &PresheafMap) -> MapFile {
    MapFile {
        source: PresheafRef::Inline(Box::new(presheaf_file(f.source()))),
        target: PresheafRef::Inline(Box::new(presheaf_file(f.target()))),
        map: f.to_raw(),
    }
}

pub fn functor_file(f: &FinFunctor, source: CategoryRef, target: CategoryRef) -> FunctorFile {
    let (s, t) = (f.source(), f.target());
    FunctorFile {
        source,
        target,
        on_objects: (0..s.num_objects())
            .map(|o| (s.object_name(o).to_string(), t.object_name(f.obj(o)).to_string()))
            .collect(),
        on_morphisms: (0..s.num_morphisms())
            .filter(|&m| !s.is_identity(m))
            .map(|m| (s.morphism_name(m).to_string(), t.morphism_name(f.mor(m)).to_string()))
            .collect(),
    }
}

pub fn functor_file_inline(f: &FinFunctor) -> FunctorFile {
    functor_file(
        f,
        CategoryRef::Inline(f.source().to_raw()),
        CategoryRef::Inline(f.target().to_raw()),
    )
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    if let Some(dir) = path.parent() {
        if !dir.as_os_str().is_empty() {
            fs::create_dir_all(dir)?;
        }
    }
    fs::write(path, to_json(value)?).with_context(|| format!("writing {}", path.display()))
}

/// Writes to `path`, or to stdout when absent.
pub fn emit<T: Serialize>(path: Option<&Path>, value: &T) -> Result<()> {
    match path {
        Some(p) => write_json(p, value),
        None => {
            print!("{}", to_json(value)?);
            Ok(())
        }
    }
}
