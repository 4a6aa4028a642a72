//! Proposition suites over the corpus. Instances run in parallel; the report
//! is sorted by instance id, so it does not depend on scheduling or `--seed`.

use std::sync::{Arc, OnceLock};

use hscat_core::basechange::BaseChange;
use hscat_core::elements::{comprehensive_factorization, factorization_unique_by_search, map_elements};
use hscat_core::fibration::{
    builtin_fib, check_factorization_bijection, check_recovery, check_stability, sections, universal_fibration,
    FibAssignment, FibKind, TransferredFib, UniversalFibration,
};
use hscat_core::presheaf::pullback;
use hscat_core::realign::{realign, realign_by_search};
use hscat_core::universe::{
    classifies, hierarchy_square, hs_comparison, hs_universe_direct, subobject_classifier, truncation,
};
use hscat_core::{
    build_universe, classify_small, grothendieck, is_final, is_small, Error, FinCategory, FunctorSearch,
    Guard, HomSearch, NerveAdjunction, PresheafMap, SkeletalSets, Universe,
};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, Named};

type CoreResult<T> = hscat_core::Result<T>;

pub const SUITES: [&str; 12] = [
    "adjunction",
    "lemma-natpb",
    "classification",
    "hs-recovery",
    "hierarchy",
    "omega",
    "truncation",
    "realign",
    "basechange",
    "comprehensive",
    "fibration",
    "transfer",
];

/// Above this many maps `X -> V_α` the realignment search oracle is skipped.
pub const REALIGN_SEARCH_CAP: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceReport {
    pub id: String,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub alphas: Vec<usize>,
    pub guard: u64,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub instances: Vec<InstanceReport>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub alphas: Vec<usize>,
    pub guard: Guard,
    pub seed: Option<u64>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            alphas: vec![2, 3],
            guard: Guard::default(),
            seed: None,
        }
    }
}

#[derive(Debug)]
pub struct UnknownSuite(pub String);

impl std::fmt::Display for UnknownSuite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "unknown suite {:?}; expected one of {}", self.0, SUITES.join(", "))
    }
}

impl std::error::Error for UnknownSuite {}

type Checks = Vec<(&'static str, bool)>;

struct Instance {
    id: String,
    run: Box<dyn Fn() -> CoreResult<Checks> + Send + Sync>,
}

impl Instance {
    fn new(id: String, run: impl Fn() -> CoreResult<Checks> + Send + Sync + 'static) -> Self {
        Instance { id, run: Box::new(run) }
    }

    fn execute(&self) -> InstanceReport {
        match (self.run)() {
            Ok(checks) => {
                let failed: Vec<String> = checks.iter().filter(|c| !c.1).map(|c| c.0.to_string()).collect();
                InstanceReport {
                    id: self.id.clone(),
                    verdict: if failed.is_empty() { Verdict::Pass } else { Verdict::Fail },
                    checks: checks.iter().map(|c| c.0.to_string()).collect(),
                    detail: (!failed.is_empty()).then(|| format!("failed: {}", failed.join(", "))),
                }
            }
            Err(e @ Error::SizeGuardExceeded { .. }) => InstanceReport {
                id: self.id.clone(),
                verdict: Verdict::Skip,
                checks: Vec::new(),
                detail: Some(e.to_string()),
            },
            Err(e) => InstanceReport {
                id: self.id.clone(),
                verdict: Verdict::Fail,
                checks: Vec::new(),
                detail: Some(e.to_string()),
            },
        }
    }
}

const STRIDE: usize = 5;

struct Ctx {
    corpus: Corpus,
    alphas: Vec<usize>,
    guard: Guard,
    adjs: Vec<NerveAdjunction>,
    universes: Vec<OnceLock<CoreResult<Universe>>>,
    maps: Vec<Vec<Named<PresheafMap>>>,
    monos: Vec<Vec<Named<PresheafMap>>>,
}

impl Ctx {
    fn new(corpus: Corpus, cfg: &SuiteConfig) -> CoreResult<Self> {
        let adjs: Vec<NerveAdjunction> = corpus
            .categories
            .iter()
            .map(|c| NerveAdjunction::new(&c.value, cfg.guard))
            .collect();
        let n = corpus.categories.len();
        let maps = corpus
            .categories
            .iter()
            .map(|c| corpus.maps(&c.value))
            .collect::<anyhow::Result<Vec<_>>>()
            .map_err(|e| Error::Parse(e.to_string()))?;
        let monos = corpus
            .categories
            .iter()
            .map(|c| corpus.monos(&c.value))
            .collect::<anyhow::Result<Vec<_>>>()
            .map_err(|e| Error::Parse(e.to_string()))?;
        Ok(Ctx {
            corpus,
            alphas: cfg.alphas.clone(),
            guard: cfg.guard,
            adjs,
            universes: (0..n * STRIDE).map(|_| OnceLock::new()).collect(),
            maps,
            monos,
        })
    }

    fn base(&self, b: usize) -> &Named<FinCategory> {
        &self.corpus.categories[b]
    }

    fn base_index(&self, c: &FinCategory) -> Option<usize> {
        self.corpus.categories.iter().position(|n| &n.value == c)
    }

    fn universe(&self, b: usize, alpha: usize) -> CoreResult<&Universe> {
        if !(2..STRIDE).contains(&alpha) {
            return Err(Error::InvalidAlpha(alpha));
        }
        self.universes[b * STRIDE + alpha]
            .get_or_init(|| build_universe(&self.adjs[b], alpha))
            .as_ref()
            .map_err(Clone::clone)
    }

    fn bases(&self) -> std::ops::Range<usize> {
        0..self.corpus.categories.len()
    }
}

pub fn run_suite(name: &str, corpus: &Corpus, cfg: &SuiteConfig) -> anyhow::Result<Report> {
    if !SUITES.contains(&name) {
        return Err(UnknownSuite(name.to_string()).into());
    }
    for &a in &cfg.alphas {
        if !(2..STRIDE).contains(&a) {
            return Err(Error::InvalidAlpha(a).into());
        }
    }
    let ctx = Arc::new(Ctx::new(corpus.clone(), cfg)?);
    let mut instances = match name {
        "adjunction" => adjunction(&ctx),
        "lemma-natpb" => lemma_natpb(&ctx),
        "classification" => classification(&ctx),
        "hs-recovery" => hs_recovery(&ctx),
        "hierarchy" => hierarchy(&ctx),
        "omega" => omega(&ctx),
        "truncation" => truncation_suite(&ctx),
        "realign" => realign_suite(&ctx),
        "basechange" => basechange(&ctx),
        "comprehensive" => comprehensive(&ctx),
        "fibration" => fibration(&ctx),
        "transfer" => transfer(&ctx),
        _ => unreachable!(),
    };
    if let Some(seed) = cfg.seed {
        instances.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    let mut results: Vec<InstanceReport> = instances.par_iter().map(Instance::execute).collect();
    results.sort_by(|a, b| a.id.cmp(&b.id));
    let count = |v: Verdict| results.iter().filter(|r| r.verdict == v).count();
    Ok(Report {
        suite: name.to_string(),
        alphas: cfg.alphas.clone(),
        guard: cfg.guard.0,
        passed: count(Verdict::Pass),
        failed: count(Verdict::Fail),
        skipped: count(Verdict::Skip),
        instances: results,
    })
}

fn adjunction(ctx: &Arc<Ctx>) -> Vec<Instance> {
    let mut targets: Vec<Named<FinCategory>> = ctx.corpus.categories.clone();
    targets.push(Named::new("set2op", SkeletalSets::new(2).expect("alpha 2").set_op().clone()));
    let targets = Arc::new(targets);
    let mut out = Vec::new();
    for b in ctx.bases() {
        let base = &ctx.base(b).value;
        for (xi, x) in ctx.corpus.presheaves_on(base).enumerate() {
            for t in 0..targets.len() {
                let (ctx, targets) = (ctx.clone(), targets.clone());
                let xname = x.name.clone();
                out.push(Instance::new(format!("{}/{}", x.name, targets[t].name), move || {
                    let base = &ctx.base(b).value;
                    let x = &ctx.corpus.presheaves_on(base).nth(xi).expect("presheaf").value;
                    let a = &targets[t].value;
                    let adj = &ctx.adjs[b];
                    let nu = adj.nerve(a)?;
                    let el = grothendieck(x);
                    let homs = HomSearch::new(x, nu.presheaf()).guard(ctx.guard).run()?;
                    let funs = FunctorSearch::new(el.category(), a).guard(ctx.guard).run()?;
                    let mut psh_round = true;
                    let mut to_cat = Vec::with_capacity(homs.len());
                    for g in &homs {
                        let f = adj.transpose_to_cat(g, &nu, &el)?;
                        psh_round &= adj.transpose_to_psh(&f, &el, &nu)? == *g;
                        to_cat.push(f);
                    }
                    let mut cat_round = true;
                    for f in &funs {
                        let g = adj.transpose_to_psh(f, &el, &nu)?;
                        cat_round &= adj.transpose_to_cat(&g, &nu, &el)? == *f;
                    }
                    let mut natural = true;
                    for k in ctx.maps[b].iter().filter(|m| m.value.target() == x && m.name.ends_with("#0")) {
                        let ek = grothendieck(k.value.source());
                        let intk = map_elements(&k.value, &ek, &el)?;
                        for (g, f) in homs.iter().zip(&to_cat).take(8) {
                            let lhs = adj.transpose_to_cat(&g.after(&k.value)?, &nu, &ek)?;
                            natural &= lhs == f.after(&intk)?;
                        }
                    }
                    let _ = &xname;
                    Ok(vec![
                        ("bijection", homs.len() == funs.len()),
                        ("psh_round_trip", psh_round),
                        ("cat_round_trip", cat_round),
                        ("natural", natural),
                        ("left_triangle", adj.check_left_triangle(&el)?),
                        ("right_triangle", adj.check_right_triangle(&nu)?),
                    ])
                }));
            }
        }
    }
    out
}

fn lemma_natpb(ctx: &Arc<Ctx>) -> Vec<Instance> {
    let mut out = Vec::new();
    for b in ctx.bases() {
        for (k, m) in ctx.maps[b].iter().enumerate() {
            let ctx = ctx.clone();
            out.push(Instance::new(m.name.clone(), move || {
                Ok(vec![("unit_pullback", ctx.adjs[b].check_unit_pullback(&ctx.maps[b][k].value)?)])
            }));
        }
    }
    out
}

fn classification(ctx: &Arc<Ctx>) -> Vec<Instance> {
    let mut out = Vec::new();
    for b in ctx.bases() {
        for &alpha in &ctx.alphas {
            for (k, m) in ctx.maps[b].iter().enumerate() {
                let ctx = ctx.clone();
                out.push(Instance::new(format!("a{alpha}/{}", m.name), move || {
                    let f = &ctx.maps[b][k].value;
                    let u = ctx.universe(b, alpha)?;
                    if !is_small(f, alpha) {
                        let rejected = matches!(classify_small(f, u), Err(Error::NotSmall { .. }));
                        return Ok(vec![("rejects_large", rejected)]);
                    }
                    let cl = classify_small(f, u)?;
                    let mut checks = vec![
                        ("pullback", cl.is_pullback(f, u)),
                        ("classifies", classifies(&cl.map, f, u)?),
                    ];
                    for &beta in ctx.alphas.iter().filter(|&&beta| beta > alpha) {
                        let h = hierarchy_square(u, ctx.universe(b, beta)?)?;
                        checks.push(("factors_through_larger", h.factorization_commutes(f)?));
                    }
                    Ok(checks)
                }));
            }
        }
    }
    out
}

fn hs_recovery(ctx: &Arc<Ctx>) -> Vec<Instance> {
    let mut out = Vec::new();
    for b in ctx.bases() {
        for &alpha in &ctx.alphas {
            let ctx = ctx.clone();
            out.push(Instance::new(format!("{}/a{alpha}", ctx.base(b).name), move || {
                let u = ctx.universe(b, alpha)?;
                let hs = hs_universe_direct(&ctx.adjs[b], alpha)?;
                let cmp = hs_comparison(&hs, u)?;
                let base = &ctx.base(b).value;
                let counts = (0..base.num_objects()).all(|c| {
                    let total: usize = (0..u.v().size(c)).map(|a| u.code_size(c, a)).sum();
                    total == u.vdot().size(c)
                });
                Ok(vec![
                    ("codes_iso", cmp.codes.is_iso()),
                    ("family_iso", cmp.family.is_iso()),
                    ("element_counts", counts),
                ])
            }));
        }
    }
    let adj = NerveAdjunction::new(&hscat_core::catalog::terminal(), ctx.guard);
    out.push(Instance::new("example/point-a3".into(), move || {
        let u = build_universe(&adj, 3)?;
        let hs = hs_universe_direct(&adj, 3)?;
        let sizes: Vec<usize> = (0..3).map(|a| u.code_size(0, a)).collect();
        Ok(vec![
            ("codes", u.v().sizes() == vec![3] && hs.u.sizes() == vec![3]),
            ("elements", u.vdot().sizes() == vec![3] && sizes == vec![0, 1, 2]),
            ("comparison", hs_comparison(&hs, &u).is_ok()),
        ])
    }));
    out
}

fn hierarchy(ctx: &Arc<Ctx>) -> Vec<Instance> {
    let mut out = Vec::new();
    for b in ctx.bases() {
        for &lo in &ctx.alphas {
            for &hi in ctx.alphas.iter().filter(|&&hi| hi > lo) {
                let ctx = ctx.clone();
                out.push(Instance::new(format!("{}/a{lo}-a{hi}", ctx.base(b).name), move || {
                    let h = hierarchy_square(ctx.universe(b, lo)?, ctx.universe(b, hi)?)?;
                    Ok(vec![("cartesian", h.is_cartesian()), ("monic", h.all_monic())])
                }));
            }
        }
    }
    out
}

fn omega(ctx: &Arc<Ctx>) -> Vec<Instance> {
    let mut out = Vec::new();
    for b in ctx.bases() {
        let c = ctx.clone();
        out.push(Instance::new(format!("{}/sieves", ctx.base(b).name), move || {
            let sc = subobject_classifier(&c.adjs[b])?;
            let mut checks = vec![("sieve_iso", sc.sieve_iso()?.is_iso())];
            if c.base(b).value == hscat_core::catalog::arrow() {
                checks.push(("sizes_on_arrow", sc.omega().sizes() == vec![2, 3]));
            }
            Ok(checks)
        }));
        for (k, m) in ctx.monos[b].iter().enumerate() {
            let c = ctx.clone();
            out.push(Instance::new(m.name.clone(), move || {
                let sc = subobject_classifier(&c.adjs[b])?;
                let m = &c.monos[b][k].value;
                let chi = sc.classify_sub(m)?;
                let all = sc.characteristic_maps(m)?;
                Ok(vec![("unique_characteristic_map", all == vec![chi])])
            }));
        }
    }
    out
}

fn truncation_suite(ctx: &Arc<Ctx>) -> Vec<Instance> {
    let mut out = Vec::new();
    for b in ctx.bases() {
        for &alpha in &ctx.alphas {
            let ctx = ctx.clone();
            out.push(Instance::new(format!("{}/a{alpha}", ctx.base(b).name), move || {
                let t = truncation(&ctx.adjs[b], alpha)?;
                Ok(vec![
                    ("retraction", t.is_retraction()),
                    ("idempotent", t.is_idempotent()),
                    ("left_square_pullback", t.left_square_is_pullback()),
                ])
            }));
        }
    }
    out
}

fn realign_suite(ctx: &Arc<Ctx>) -> Vec<Instance> {
    let mut out = Vec::new();
    for b in ctx.bases() {
        for &alpha in &ctx.alphas {
            for (mk, m) in ctx.monos[b].iter().enumerate() {
                for (fk, f) in ctx.maps[b].iter().enumerate() {
                    if f.value.target() != m.value.target() || !is_small(&f.value, alpha) {
                        continue;
                    }
                    for variant in ["own", "inherited"] {
                        let ctx = ctx.clone();
                        let id = format!("a{alpha}/{}/{}/{variant}", m.name, f.name);
                        out.push(Instance::new(id, move || {
                            let (c, f) = (&ctx.monos[b][mk].value, &ctx.maps[b][fk].value);
                            let u = ctx.universe(b, alpha)?;
                            let y_c = if variant == "own" {
                                classify_small(&pullback(c, f)?.left, u)?.map
                            } else {
                                classify_small(f, u)?.map.after(c)?
                            };
                            let y = realign(c, f, &y_c, u)?;
                            let mut checks = vec![
                                ("restricts", y.after(c)? == y_c),
                                ("classifies", classifies(&y, f, u)?),
                            ];
                            if let Some(all) = realign_by_search(c, f, &y_c, u, REALIGN_SEARCH_CAP)? {
                                checks.push(("search_agrees", all.contains(&y)));
                            }
                            Ok(checks)
                        }));
                    }
                }
            }
        }
    }
    out
}

fn basechange(ctx: &Arc<Ctx>) -> Vec<Instance> {
    let mut out = Vec::new();
    for (k, f) in ctx.corpus.functors.iter().enumerate() {
        let c = ctx.clone();
        out.push(Instance::new(format!("{}/kan", f.name), move || {
            let f = &c.corpus.functors[k].value;
            let bc = BaseChange::new(f, c.guard)?;
            let mut lan = true;
            let mut ran = true;
            for x in c.corpus.presheaves_on(f.source()) {
                for z in c.corpus.presheaves_on(f.target()) {
                    lan &= bc.check_lan_adjunction(&x.value, &z.value)?;
                    ran &= bc.check_ran_adjunction(&x.value, &z.value)?;
                }
            }
            let squares = (0..f.source().num_morphisms()).all(|h| bc.slice_square_commutes(h));
            Ok(vec![
                ("lan_adjunction", lan),
                ("ran_adjunction", ran),
                ("slice_squares_commute", squares),
                ("sliced_final", bc.sliced_functors_final()),
            ])
        }));
        for &alpha in &ctx.alphas {
            let c = ctx.clone();
            out.push(Instance::new(format!("{}/a{alpha}", f.name), move || {
                let bc = BaseChange::new(&c.corpus.functors[k].value, c.guard)?;
                Ok(vec![
                    ("square_pullback", bc.check_universe_basechange(alpha)?),
                    ("lifting", bc.check_lifting(alpha)?),
                ])
            }));
        }
    }
    out
}

fn comprehensive(ctx: &Arc<Ctx>) -> Vec<Instance> {
    let mut out = Vec::new();
    for (k, f) in ctx.corpus.functors.iter().enumerate() {
        let c = ctx.clone();
        out.push(Instance::new(f.name.clone(), move || {
            let f = &c.corpus.functors[k].value;
            let cf = comprehensive_factorization(f)?;
            let composite = cf.dfib().projection().after(&cf.final_part)?;
            let sets = SkeletalSets::new(*c.alphas.iter().max().unwrap_or(&3))?;
            let unique = factorization_unique_by_search(f, &sets, c.guard)?.is_some();
            Ok(vec![
                ("composes", composite.obj_map() == f.obj_map() && composite.mor_map() == f.mor_map()),
                ("left_final", is_final(&cf.final_part)),
                ("right_discrete_fibration", hscat_core::DiscreteFibration::new(cf.dfib().projection().clone()).is_ok()),
                ("unique_up_to_iso", unique),
            ])
        }));
    }
    out
}

type Shared<T> = Arc<OnceLock<CoreResult<T>>>;

fn family_checks(
    fib: &dyn FibAssignment,
    a: &PresheafMap,
    along: &[&PresheafMap],
    uf: &UniversalFibration,
    u: &Universe,
) -> CoreResult<Checks> {
    let mut stable = true;
    for f in along {
        stable &= check_stability(fib, f, a)?;
    }
    let mut recovered = true;
    for s in sections(&fib.assign(a)?)? {
        recovered &= check_recovery(fib, a, &s, uf, u)?;
    }
    Ok(vec![
        ("stable", stable),
        ("structures_biject_with_factorizations", check_factorization_bijection(fib, a, uf, u)?),
        ("pullback_recovers_structure", recovered),
    ])
}

fn fibration(ctx: &Arc<Ctx>) -> Vec<Instance> {
    let mut out = Vec::new();
    for kind in FibKind::ALL {
        for b in ctx.bases() {
            for &alpha in &ctx.alphas {
                let shared: Shared<UniversalFibration> = Arc::new(OnceLock::new());
                let prefix = format!("{kind}/{}/a{alpha}", ctx.base(b).name);
                {
                    let (c, sh) = (ctx.clone(), shared.clone());
                    out.push(Instance::new(format!("{prefix}/universal"), move || {
                        let u = c.universe(b, alpha)?;
                        let uf = sh
                            .get_or_init(|| universal_fibration(builtin_fib(kind).as_ref(), u))
                            .as_ref()
                            .map_err(Clone::clone)?;
                        Ok(vec![("diagonal_section", uf.diagonal_is_section())])
                    }));
                }
                for (k, m) in ctx.maps[b].iter().enumerate() {
                    if !is_small(&m.value, alpha) {
                        continue;
                    }
                    let (c, sh) = (ctx.clone(), shared.clone());
                    out.push(Instance::new(format!("{prefix}/{}", m.name), move || {
                        let u = c.universe(b, alpha)?;
                        let fib = builtin_fib(kind);
                        let uf = sh
                            .get_or_init(|| universal_fibration(fib.as_ref(), u))
                            .as_ref()
                            .map_err(Clone::clone)?;
                        let a = &c.maps[b][k].value;
                        let along: Vec<&PresheafMap> = c.maps[b]
                            .iter()
                            .filter(|g| g.value.target() == a.target() && g.name.ends_with("#0"))
                            .map(|g| &g.value)
                            .collect();
                        family_checks(fib.as_ref(), a, &along, uf, u)
                    }));
                }
            }
        }
    }
    out
}

fn transfer(ctx: &Arc<Ctx>) -> Vec<Instance> {
    let mut out = Vec::new();
    for kind in FibKind::ALL {
        for (fk, f) in ctx.corpus.functors.iter().enumerate() {
            let Some(d) = ctx.base_index(f.value.target()) else {
                continue;
            };
            for &alpha in &ctx.alphas {
                let shared: Shared<(TransferredFib, UniversalFibration)> = Arc::new(OnceLock::new());
                let prefix = format!("{kind}/{}/a{alpha}", f.name);
                let setup = {
                    let c = ctx.clone();
                    move |sh: &Shared<(TransferredFib, UniversalFibration)>| -> CoreResult<(TransferredFib, UniversalFibration)> {
                        sh.get_or_init(|| {
                            let bc = BaseChange::new(&c.corpus.functors[fk].value, c.guard)?;
                            let tf = TransferredFib::new(bc, builtin_fib(kind));
                            let uf = universal_fibration(&tf, c.universe(d, alpha)?)?;
                            Ok((tf, uf))
                        })
                        .clone()
                    }
                };
                {
                    let (sh, setup) = (shared.clone(), setup.clone());
                    out.push(Instance::new(format!("{prefix}/universal"), move || {
                        let (_, uf) = setup(&sh)?;
                        Ok(vec![("diagonal_section", uf.diagonal_is_section())])
                    }));
                }
                for (k, m) in ctx.maps[d].iter().enumerate() {
                    if !is_small(&m.value, alpha) {
                        continue;
                    }
                    let (c, sh, setup) = (ctx.clone(), shared.clone(), setup.clone());
                    out.push(Instance::new(format!("{prefix}/{}", m.name), move || {
                        let (tf, uf) = setup(&sh)?;
                        let u = c.universe(d, alpha)?;
                        let b = &c.maps[d][k].value;
                        let counts = sections(&tf.assign(b)?)?.len() == sections(&tf.restricted(b)?)?.len();
                        let along: Vec<&PresheafMap> = c.maps[d]
                            .iter()
                            .filter(|g| g.value.target() == b.target() && g.name.ends_with("#0"))
                            .map(|g| &g.value)
                            .collect();
                        let mut checks = vec![("section_counts_match", counts)];
                        checks.extend(family_checks(&tf, b, &along, &uf, u)?);
                        Ok(checks)
                    }));
                }
            }
        }
    }
    out
}
