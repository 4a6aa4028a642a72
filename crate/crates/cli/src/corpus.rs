//! The instance corpus: named categories, presheaves on them, and functors.
//!
//! On disk: `categories/<cat>.json`, `presheaves/<cat>.<name>.json` (base by
//! relative path) and `functors/<src>-<tgt>-<k>.json`.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use hscat_core::presheaf::subpresheaves;
use hscat_core::{
    catalog, constant, enumerate_functors, subpresheaf, terminal, yoneda, FinCategory, FinFunctor, Guard, HomSearch,
    Presheaf, PresheafMap,
};

use crate::io::{self, CategoryRef, PresheafFile};

#[derive(Clone, Debug)]
pub struct Named<T> {
    pub name: String,
    pub value: T,
}

impl<T> Named<T> {
    pub fn new(name: impl Into<String>, value: T) -> Self {
        Named {
            name: name.into(),
            value,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Corpus {
    pub categories: Vec<Named<FinCategory>>,
    pub presheaves: Vec<Named<Presheaf>>,
    pub functors: Vec<Named<FinFunctor>>,
}

/// How many maps per ordered pair and subobjects per presheaf to draw.
pub const MAPS_PER_PAIR: usize = 3;
pub const MONOS_PER_PRESHEAF: usize = 4;

/// Functors are shipped among this many leading categories.
pub const FUNCTOR_CATEGORIES: usize = 4;

impl Corpus {
    pub fn builtin() -> Self {
        let categories: Vec<Named<FinCategory>> = catalog::default_names()
            .into_iter()
            .zip(catalog::default_categories())
            .map(|(n, c)| Named::new(n, c))
            .collect();
        let mut presheaves = Vec::new();
        for cat in &categories {
            let c = &cat.value;
            presheaves.push(Named::new(format!("{}.one", cat.name), terminal(c)));
            presheaves.push(Named::new(format!("{}.two", cat.name), constant(c, 2)));
            for o in 0..c.num_objects() {
                let y = yoneda(c, o).expect("object exists");
                let obj = c.object_name(o);
                let tag = if obj.chars().all(|ch| ch.is_ascii_alphanumeric()) { obj.to_string() } else { o.to_string() };
                presheaves.push(Named::new(format!("{}.y{tag}", cat.name), y));
            }
        }
        let mut functors = Vec::new();
        for s in &categories[..FUNCTOR_CATEGORIES] {
            for t in &categories[..FUNCTOR_CATEGORIES] {
                let all = enumerate_functors(&s.value, &t.value, Guard::default()).expect("small enumeration");
                for (k, f) in all.into_iter().enumerate() {
                    functors.push(Named::new(format!("{}-{}-{k}", s.name, t.name), f));
                }
            }
        }
        Corpus {
            categories,
            presheaves,
            functors,
        }
    }

    pub fn load(dir: &Path) -> Result<Self> {
        let mut corpus = Corpus::default();
        for path in json_files(&dir.join("categories"))? {
            corpus.categories.push(Named::new(stem(&path), io::load_category(&path)?));
        }
        for path in json_files(&dir.join("presheaves"))? {
            corpus.presheaves.push(Named::new(stem(&path), io::load_presheaf(&path)?));
        }
        for path in json_files(&dir.join("functors"))? {
            corpus.functors.push(Named::new(stem(&path), io::load_functor(&path)?));
        }
        Ok(corpus)
    }

    pub fn write(&self, dir: &Path) -> Result<()> {
        for c in &self.categories {
            io::write_json(&dir.join("categories").join(format!("{}.json", c.name)), &c.value.to_raw())?;
        }
        for p in &self.presheaves {
            let base = self.category_name(p.value.base()).context("presheaf over an unlisted base")?;
            let file = PresheafFile {
                base: CategoryRef::Path(format!("../categories/{base}.json")),
                presheaf: p.value.to_raw(),
            };
            io::write_json(&dir.join("presheaves").join(format!("{}.json", p.name)), &file)?;
        }
        for f in &self.functors {
            let s = self.category_name(f.value.source()).context("functor from an unlisted category")?;
            let t = self.category_name(f.value.target()).context("functor into an unlisted category")?;
            let file = io::functor_file(
                &f.value,
                CategoryRef::Path(format!("../categories/{s}.json")),
                CategoryRef::Path(format!("../categories/{t}.json")),
            );
            io::write_json(&dir.join("functors").join(format!("{}.json", f.name)), &file)?;
        }
        Ok(())
    }

    pub fn category_name(&self, c: &FinCategory) -> Option<&str> {
        self.categories.iter().find(|n| &n.value == c).map(|n| n.name.as_str())
    }

    pub fn presheaves_on<'a>(&'a self, base: &'a FinCategory) -> impl Iterator<Item = &'a Named<Presheaf>> + 'a {
        self.presheaves.iter().filter(move |p| p.value.base() == base)
    }

    /// Up to `MAPS_PER_PAIR` maps for every ordered pair of presheaves on `base`.
    pub fn maps(&self, base: &FinCategory) -> Result<Vec<Named<PresheafMap>>> {
        let ps: Vec<_> = self.presheaves_on(base).collect();
        let mut out = Vec::new();
        for y in &ps {
            for x in &ps {
                let found = HomSearch::new(&y.value, &x.value).limit(MAPS_PER_PAIR).run()?;
                for (k, f) in found.into_iter().enumerate() {
                    out.push(Named::new(format!("{}->{}#{k}", y.name, short(&x.name)), f));
                }
            }
        }
        Ok(out)
    }

    /// Inclusions of up to `MONOS_PER_PRESHEAF` subpresheaves of each presheaf
    /// on `base`, always including the empty and the full one.
    pub fn monos(&self, base: &FinCategory) -> Result<Vec<Named<PresheafMap>>> {
        let mut out = Vec::new();
        for x in self.presheaves_on(base) {
            let mut subs = subpresheaves(&x.value, Guard::default())?;
            subs.sort_by_key(|s| s.iter().map(Vec::len).sum::<usize>());
            let n = subs.len();
            let picked: Vec<usize> = if n <= MONOS_PER_PRESHEAF {
                (0..n).collect()
            } else {
                let mut v: Vec<usize> = (0..MONOS_PER_PRESHEAF - 1).map(|i| i * n / MONOS_PER_PRESHEAF).collect();
                v.push(n - 1);
                v
            };
            for k in picked {
                let (_, m) = subpresheaf(&x.value, &subs[k])?;
                out.push(Named::new(format!("{}<sub{k}", x.name), m));
            }
        }
        Ok(out)
    }
}

fn short(name: &str) -> &str {
    name.split_once('.').map_or(name, |(_, r)| r)
}

fn stem(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn json_files(dir: &Path) -> Result<Vec<std::path::PathBuf>> {
    if !dir.exists() {
        return Ok(Vec::new());
    }
    let mut v: Vec<_> = fs::read_dir(dir)
        .with_context(|| format!("listing {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    v.sort();
    Ok(v)
}
