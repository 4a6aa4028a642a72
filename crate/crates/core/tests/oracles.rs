//! Brute-force oracles checked against the library, and the values they
//! produce frozen as literals.

mod common;

use common::{brute_functor_count, brute_hom_count, odometer, presheaves, small_bases};
use hscat_core::basechange::BaseChange;
use hscat_core::fibration::{universal_fibration, Pointed};
use hscat_core::presheaf::{sieve_presheaf, HomSearch};
use hscat_core::{
    build_universe, catalog, constant, enumerate_functors, slice, yoneda, FinCategory, FinFunctor, Guard,
    NerveAdjunction, Presheaf, SkeletalSets,
};

fn components_of_elements(x: &Presheaf) -> usize {
    let base = x.base();
    let nodes: Vec<(usize, usize)> = (0..base.num_objects())
        .flat_map(|c| (0..x.size(c)).map(move |e| (c, e)))
        .collect();
    let mut label: Vec<usize> = (0..nodes.len()).collect();
    let idx = |c: usize, e: usize| nodes.iter().position(|&n| n == (c, e)).unwrap();
    let mut changed = true;
    while changed {
        changed = false;
        for m in 0..base.num_morphisms() {
            for e in 0..x.size(base.cod(m)) {
                let (i, j) = (idx(base.cod(m), e), idx(base.dom(m), x.act(m, e)));
                let l = label[i].min(label[j]);
                if label[i] != l || label[j] != l {
                    label[i] = l;
                    label[j] = l;
                    changed = true;
                }
            }
        }
    }
    let mut ls = label;
    ls.sort_unstable();
    ls.dedup();
    ls.len()
}

fn global_sections(x: &Presheaf) -> usize {
    let base = x.base();
    let n = base.num_objects();
    if (0..n).any(|c| x.size(c) == 0) {
        return 0;
    }
    let radix = (0..n).map(|c| x.size(c)).max().unwrap();
    let mut pick = vec![0usize; n];
    let mut count = 0;
    loop {
        if (0..n).all(|c| pick[c] < x.size(c))
            && (0..base.num_morphisms()).all(|m| x.act(m, pick[base.cod(m)]) == pick[base.dom(m)])
        {
            count += 1;
        }
        if !odometer(&mut pick, radix) {
            break;
        }
    }
    count
}

fn brute_sieves(base: &FinCategory, c: usize) -> usize {
    let into: Vec<usize> = (0..base.num_morphisms()).filter(|&m| base.cod(m) == c).collect();
    (0u32..1 << into.len())
        .filter(|mask| {
            let has = |m: usize| into.iter().position(|&g| g == m).is_some_and(|i| mask >> i & 1 == 1);
            into.iter().all(|&g| {
                !has(g)
                    || (0..base.num_morphisms())
                        .filter(|&k| base.cod(k) == base.dom(g))
                        .all(|k| has(base.comp(g, k)))
            })
        })
        .count()
}

#[test]
fn functor_counts_match_naive_enumeration() {
    let s2 = SkeletalSets::new(2).unwrap();
    let two = catalog::arrow();
    assert_eq!(brute_functor_count(&two, s2.set_op()), 3);
    assert_eq!(enumerate_functors(&two, s2.set_op(), Guard::default()).unwrap().len(), 3);
    let bases = small_bases();
    for s in &bases {
        for t in &bases {
            let lib = enumerate_functors(s, t, Guard::default()).unwrap().len();
            assert_eq!(lib, brute_functor_count(s, t));
        }
    }
}

#[test]
fn nerve_sizes_match_slice_enumeration() {
    for base in small_bases() {
        let adj = NerveAdjunction::new(&base, Guard::default());
        for alpha in [2, 3] {
            let u = build_universe(&adj, alpha).unwrap();
            for c in 0..base.num_objects() {
                let sl = slice(&base, c).unwrap();
                assert_eq!(u.v().size(c), brute_functor_count(sl.category(), u.sets().set_op()));
                assert_eq!(u.vdot().size(c), brute_functor_count(sl.category(), u.sets().pointed_op()));
            }
        }
    }
    let one = catalog::terminal();
    let u = build_universe(&NerveAdjunction::new(&one, Guard::default()), 3).unwrap();
    assert_eq!((u.v().sizes(), u.vdot().sizes()), (vec![3], vec![3]));
    let two = catalog::arrow();
    let u = build_universe(&NerveAdjunction::new(&two, Guard::default()), 2).unwrap();
    assert_eq!((u.v().sizes(), u.vdot().sizes()), (vec![2, 3], vec![1, 1]));
}

#[test]
fn sieve_counts() {
    for base in catalog::default_categories() {
        let sp = sieve_presheaf(&base);
        for c in 0..base.num_objects() {
            assert_eq!(sp.size(c), brute_sieves(&base, c));
        }
    }
    assert_eq!(sieve_presheaf(&catalog::arrow()).sizes(), vec![2, 3]);
}

#[test]
fn hom_counts_match_naive_enumeration() {
    for base in [catalog::terminal(), catalog::arrow(), catalog::span(), catalog::idempotent()] {
        let ps = presheaves(&base, 3);
        for x in ps.iter().step_by(3) {
            for y in ps.iter().step_by(4) {
                let lib = HomSearch::new(x, y).count().unwrap();
                assert_eq!(lib, brute_hom_count(x, y));
            }
        }
    }
}

#[test]
fn kan_extensions_to_the_point() {
    let one = catalog::terminal();
    for base in small_bases() {
        let bc = BaseChange::new(&FinFunctor::constant(&base, &one, 0), Guard::default()).unwrap();
        for x in presheaves(&base, 3) {
            assert_eq!(bc.lan(&x).unwrap().presheaf.size(0), components_of_elements(&x));
            assert_eq!(bc.ran(&x).unwrap().presheaf.size(0), global_sections(&x));
        }
    }
    let two = catalog::arrow();
    let bc = BaseChange::new(&FinFunctor::constant(&two, &one, 0), Guard::default()).unwrap();
    let y0 = yoneda(&two, 0).unwrap();
    assert_eq!(bc.lan(&y0).unwrap().presheaf.sizes(), vec![1]);
    assert_eq!(bc.ran(&y0).unwrap().presheaf.sizes(), vec![0]);
}

#[test]
fn nu_comparison_on_arrow() {
    let two = catalog::arrow();
    let bc = BaseChange::new(&FinFunctor::point(&two, 1), Guard::default()).unwrap();
    let sets = SkeletalSets::new(2).unwrap();
    let g = bc.nu_comparison_for(sets.set_op()).unwrap();
    assert_eq!((g.source().size(0), g.target().size(0)), (3, 2));
    let sl = slice(&two, 1).unwrap();
    assert_eq!(brute_functor_count(sl.category(), sets.set_op()), 3);
    assert!(g.is_epi());
}

#[test]
fn pointed_universe_squares_fibers() {
    let one = catalog::terminal();
    let u = build_universe(&NerveAdjunction::new(&one, Guard::default()), 3).unwrap();
    let uf = universal_fibration(&Pointed, &u).unwrap();
    let squares: usize = (0..3).map(|n| n * n).sum();
    assert_eq!(uf.udot.object.sizes(), vec![squares]);
    assert_eq!(squares, 5);
    let x = constant(&one, 2);
    assert_eq!(brute_hom_count(&x, &x), 4);
}
