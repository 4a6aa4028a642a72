//! Extending a classifying map along a mono.

use crate::elements::{classify_dfib, grothendieck, map_elements, DiscreteFibration};
use crate::error::{Error, Result};
use crate::fincat::{find_natural_iso, iso_transport};
use crate::presheaf::{pullback, HomSearch, PresheafMap};
use crate::universe::{classifies, is_small, Universe};

/// `y: X -> V_α` with `y∘c = y_c` that classifies `f`.
pub fn realign(c: &PresheafMap, f: &PresheafMap, y_c: &PresheafMap, u: &Universe) -> Result<PresheafMap> {
    validate(c, f, y_c, u)?;
    let x = f.target();
    let (ec, ex, ey) = (grothendieck(c.source()), grothendieck(x), grothendieck(f.source()));
    let p = DiscreteFibration::new(map_elements(f, &ey, &ex)?)?;
    let f0 = classify_dfib(&p, u.sets())?.bottom;
    let int_c = map_elements(c, &ec, &ex)?;
    let e_fun = u.adjunction().transpose_to_cat(y_c, u.v_nerve(), &ec)?;
    let f0c = f0.after(&int_c)?;
    let e = find_natural_iso(&f0c, &e_fun).ok_or(Error::PartialNotClassifying)?;
    let moved = iso_transport(&int_c, &f0, &e)?;
    let y = u.adjunction().transpose_to_psh(&moved.functor, &ex, u.v_nerve())?;
    if y.after(c)? != *y_c || !classifies(&y, f, u)? {
        return Err(Error::InvalidMap("realigned map failed verification".into()));
    }
    Ok(y)
}

fn validate(c: &PresheafMap, f: &PresheafMap, y_c: &PresheafMap, u: &Universe) -> Result<()> {
    if c.target() != f.target() || y_c.source() != c.source() || y_c.target() != u.v() {
        return Err(Error::BaseMismatch);
    }
    if !c.is_mono() {
        return Err(Error::NotMono);
    }
    if !is_small(f, u.alpha()) {
        return Err(Error::NotSmall { alpha: u.alpha() });
    }
    let restricted = pullback(c, f)?;
    if !classifies(y_c, &restricted.left, u)? {
        return Err(Error::PartialNotClassifying);
    }
    Ok(())
}

/// Every `y: X -> V_α` extending `y_c` and classifying `f`, or `None` when
/// `Hom(X, V_α)` has more than `cap` elements.
pub fn realign_by_search(
    c: &PresheafMap,
    f: &PresheafMap,
    y_c: &PresheafMap,
    u: &Universe,
    cap: usize,
) -> Result<Option<Vec<PresheafMap>>> {
    validate(c, f, y_c, u)?;
    let x = f.target();
    let guard = u.adjunction().guard();
    let total = HomSearch::new(x, u.v()).guard(guard).limit(cap + 1).count()?;
    if total > cap {
        return Ok(None);
    }
    let base = x.base();
    let mut fixed: Vec<Vec<Option<usize>>> = (0..base.num_objects()).map(|o| vec![None; x.size(o)]).collect();
    for (o, row) in fixed.iter_mut().enumerate() {
        for (z, &xi) in c.component(o).iter().enumerate() {
            row[xi] = Some(y_c.apply(o, z));
        }
    }
    let found = HomSearch::new(x, u.v())
        .guard(guard)
        .allow(move |o, xi, v| fixed[o][xi].is_none_or(|w| w == v))
        .run()?;
    let mut out = Vec::new();
    for y in found {
        if classifies(&y, f, u)? {
            out.push(y);
        }
    }
    Ok(Some(out))
}
