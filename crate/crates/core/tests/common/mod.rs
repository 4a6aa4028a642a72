#![allow(dead_code)]

use hscat_core::{catalog, enumerate_functors, FinCategory, Guard, Presheaf, SkeletalSets};

/// Every presheaf on `c` with values below `alpha`, up to the skeletal naming.
pub fn presheaves(c: &FinCategory, alpha: usize) -> Vec<Presheaf> {
    let sets = SkeletalSets::new(alpha).unwrap();
    enumerate_functors(c, sets.set_op(), Guard::default())
        .unwrap()
        .iter()
        .map(|f| sets.functor_to_presheaf(f))
        .collect()
}

/// The corpus bases small enough for exhaustive property runs.
pub fn small_bases() -> Vec<FinCategory> {
    vec![
        catalog::terminal(),
        catalog::arrow(),
        catalog::discrete(2),
        catalog::parallel_pair(),
        catalog::span(),
        catalog::walking_iso(),
        catalog::idempotent(),
        catalog::involution(),
    ]
}

/// Naive count of functors `s -> t`: every object and morphism assignment,
/// filtered by the functor laws.
pub fn brute_functor_count(s: &FinCategory, t: &FinCategory) -> usize {
    let (no, nm) = (s.num_objects(), s.num_morphisms());
    let mut count = 0;
    let mut obj = vec![0usize; no];
    loop {
        let mut mor = vec![0usize; nm];
        loop {
            let ok = (0..nm).all(|m| t.dom(mor[m]) == obj[s.dom(m)] && t.cod(mor[m]) == obj[s.cod(m)])
                && (0..no).all(|o| mor[s.identity(o)] == t.identity(obj[o]))
                && (0..nm).all(|g| {
                    (0..nm).all(|f| match s.compose(g, f) {
                        Some(gf) => t.compose(mor[g], mor[f]) == Some(mor[gf]),
                        None => true,
                    })
                });
            if ok {
                count += 1;
            }
            if !odometer(&mut mor, t.num_morphisms()) {
                break;
            }
        }
        if !odometer(&mut obj, t.num_objects()) {
            break;
        }
    }
    count
}

/// Advances a mixed-radix counter; false once it wraps.
pub fn odometer(v: &mut [usize], radix: usize) -> bool {
    if radix == 0 {
        return false;
    }
    for d in v.iter_mut() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

/// Naive count of natural maps `x -> y`: all componentwise functions,
/// filtered by naturality.
pub fn brute_hom_count(x: &Presheaf, y: &Presheaf) -> usize {
    let base = x.base();
    let slots: Vec<(usize, usize)> = (0..base.num_objects())
        .flat_map(|c| (0..x.size(c)).map(move |e| (c, e)))
        .collect();
    if slots.iter().any(|&(c, _)| y.size(c) == 0) {
        return 0;
    }
    let mut assign = vec![0usize; slots.len()];
    let pos = |c: usize, e: usize| slots.iter().position(|&s| s == (c, e)).unwrap();
    let mut count = 0;
    loop {
        let ok = assign.iter().enumerate().all(|(i, &v)| v < y.size(slots[i].0))
            && (0..base.num_morphisms()).all(|m| {
                let (a, b) = (base.dom(m), base.cod(m));
                (0..x.size(b)).all(|e| assign[pos(a, x.act(m, e))] == y.act(m, assign[pos(b, e)]))
            });
        if ok {
            count += 1;
        }
        let radix = (0..base.num_objects()).map(|c| y.size(c)).max().unwrap_or(0);
        if !odometer(&mut assign, radix) {
            break;
        }
    }
    count
}
