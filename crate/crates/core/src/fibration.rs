//! Fibration structures as sections of a pullback-stable `Fib(A) -> X`, the
//! universal small fibration, and transfer along base change.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::basechange::BaseChange;
use crate::error::{Error, Result};
use crate::presheaf::{is_pullback_square, pullback, HomSearch, Presheaf, PresheafMap, Pullback};
use crate::universe::{classify_small, Universe};

/// An assignment `A -> X  ↦  Fib(A) -> X`.
///
/// `compare` receives a pullback square together with `Fib(A)` and `Fib(B)`
/// and returns the map `Fib(A) -> Fib(B)` over the bottom edge.
pub trait FibAssignment: fmt::Debug + Send + Sync {
    fn name(&self) -> &str;

    fn assign(&self, a: &PresheafMap) -> Result<PresheafMap>;

    fn compare(&self, sq: &Square<'_>, fib_a: &PresheafMap, fib_b: &PresheafMap) -> Result<PresheafMap>;
}

/// `top: A -> B`, `left: A -> X`, `right: B -> Z`, `bottom: X -> Z`.
#[derive(Clone, Copy, Debug)]
pub struct Square<'a> {
    pub top: &'a PresheafMap,
    pub left: &'a PresheafMap,
    pub right: &'a PresheafMap,
    pub bottom: &'a PresheafMap,
}

impl Square<'_> {
    pub fn is_pullback(&self) -> bool {
        is_pullback_square(self.top, self.left, self.right, self.bottom)
    }
}

/// Every family carries exactly one structure: `Fib(A) = X`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Trivial;

/// A structure is a section: `Fib(A) = A`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Pointed;

impl FibAssignment for Trivial {
    fn name(&self) -> &str {
        "trivial"
    }

    fn assign(&self, a: &PresheafMap) -> Result<PresheafMap> {
        Ok(PresheafMap::identity(a.target()))
    }

    fn compare(&self, sq: &Square<'_>, _: &PresheafMap, _: &PresheafMap) -> Result<PresheafMap> {
        Ok(sq.bottom.clone())
    }
}

impl FibAssignment for Pointed {
    fn name(&self) -> &str {
        "pointed"
    }

    fn assign(&self, a: &PresheafMap) -> Result<PresheafMap> {
        Ok(a.clone())
    }

    fn compare(&self, sq: &Square<'_>, _: &PresheafMap, _: &PresheafMap) -> Result<PresheafMap> {
        Ok(sq.top.clone())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FibKind {
    Trivial,
    Pointed,
}

impl FibKind {
    pub const ALL: [FibKind; 2] = [FibKind::Trivial, FibKind::Pointed];
}

impl fmt::Display for FibKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FibKind::Trivial => "trivial",
            FibKind::Pointed => "pointed",
        })
    }
}

impl FromStr for FibKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "trivial" => Ok(FibKind::Trivial),
            "pointed" => Ok(FibKind::Pointed),
            other => Err(Error::Parse(format!("unknown fibration kind {other:?}"))),
        }
    }
}

pub fn builtin_fib(kind: FibKind) -> Arc<dyn FibAssignment> {
    match kind {
        FibKind::Trivial => Arc::new(Trivial),
        FibKind::Pointed => Arc::new(Pointed),
    }
}

/// Sections of `p: E -> X`.
pub fn sections(p: &PresheafMap) -> Result<Vec<PresheafMap>> {
    let x = p.target();
    HomSearch::new(x, p.source())
        .allow(|c, xi, e| p.apply(c, e) == xi)
        .run()
}

pub fn is_section(s: &PresheafMap, p: &PresheafMap) -> bool {
    s.target() == p.source() && s.source() == p.target() && p.after_unchecked(s) == PresheafMap::identity(p.target())
}

/// The unique map into the apex of a pullback square `top, left, right,
/// bottom` determined pointwise by `left∘s = u` and `top∘s = v`.
fn lift_into_square(
    top: &PresheafMap,
    left: &PresheafMap,
    u: &PresheafMap,
    v: &PresheafMap,
) -> Result<PresheafMap> {
    let base = u.base();
    let apex = left.source();
    let comps = (0..base.num_objects())
        .map(|c| {
            (0..u.source().size(c))
                .map(|w| {
                    (0..apex.size(c))
                        .find(|&e| left.apply(c, e) == u.apply(c, w) && top.apply(c, e) == v.apply(c, w))
                        .ok_or_else(|| Error::InvalidMap("no point of the pullback over this pair".into()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    PresheafMap::new(u.source().clone(), apex.clone(), comps)
}

/// Both squares are pointwise pullbacks: `f^*A` over `A`, and
/// `Fib(f^*A)` over `Fib(A)`.
pub fn check_stability(fib: &dyn FibAssignment, f: &PresheafMap, a: &PresheafMap) -> Result<bool> {
    let pb = pullback(f, a)?;
    let sq = Square {
        top: &pb.right,
        left: &pb.left,
        right: a,
        bottom: f,
    };
    if !sq.is_pullback() {
        return Ok(false);
    }
    let (fa, fpa) = (fib.assign(a)?, fib.assign(&pb.left)?);
    let k = fib.compare(&sq, &fpa, &fa)?;
    Ok(is_pullback_square(&k, &fpa, &fa, f))
}

/// `U = Fib(V̇)`, `U̇ = U ×_V V̇`, and the diagonal structure on `U̇ -> U`.
#[derive(Clone, Debug)]
pub struct UniversalFibration {
    pub into_v: PresheafMap,
    pub udot: Pullback,
    pub fib_udot: PresheafMap,
    pub diagonal: PresheafMap,
}

impl UniversalFibration {
    pub fn ucal(&self) -> &Presheaf {
        self.into_v.source()
    }

    pub fn proj(&self) -> &PresheafMap {
        &self.udot.left
    }

    pub fn diagonal_is_section(&self) -> bool {
        is_section(&self.diagonal, &self.fib_udot)
    }
}

pub fn universal_fibration(fib: &dyn FibAssignment, u: &Universe) -> Result<UniversalFibration> {
    let into_v = fib.assign(u.proj())?;
    let udot = pullback(&into_v, u.proj())?;
    let fib_udot = fib.assign(&udot.left)?;
    let sq = Square {
        top: &udot.right,
        left: &udot.left,
        right: u.proj(),
        bottom: &into_v,
    };
    let to_fib_vdot = fib.compare(&sq, &fib_udot, &into_v)?;
    let id = PresheafMap::identity(into_v.source());
    let diagonal = lift_into_square(&to_fib_vdot, &fib_udot, &id, &id)?;
    Ok(UniversalFibration {
        into_v,
        udot,
        fib_udot,
        diagonal,
    })
}

/// The factorization `α′: X -> U` of the classifying map of `a` determined
/// by a structure `s`.
pub fn classify_fibration(
    fib: &dyn FibAssignment,
    a: &PresheafMap,
    structure: &PresheafMap,
    uf: &UniversalFibration,
    u: &Universe,
) -> Result<PresheafMap> {
    let fa = fib.assign(a)?;
    if !is_section(structure, &fa) {
        return Err(Error::NotASection);
    }
    let cl = classify_small(a, u)?;
    let sq = Square {
        top: &cl.top,
        left: a,
        right: u.proj(),
        bottom: &cl.map,
    };
    let k = fib.compare(&sq, &fa, &uf.into_v)?;
    k.after(structure)
}

/// The family and structure obtained by pulling `U̇ -> U` and its diagonal
/// back along `α′`, with the canonical iso from the original family.
#[derive(Clone, Debug)]
pub struct Recovered {
    pub family: PresheafMap,
    pub structure: PresheafMap,
    pub iso: PresheafMap,
}

pub fn recover(
    fib: &dyn FibAssignment,
    a: &PresheafMap,
    alpha_prime: &PresheafMap,
    uf: &UniversalFibration,
    u: &Universe,
) -> Result<Recovered> {
    let pb = pullback(alpha_prime, uf.proj())?;
    let fam = pb.left.clone();
    let fib_fam = fib.assign(&fam)?;
    let sq = Square {
        top: &pb.right,
        left: &pb.left,
        right: uf.proj(),
        bottom: alpha_prime,
    };
    let k = fib.compare(&sq, &fib_fam, &uf.fib_udot)?;
    let structure = lift_into_square(
        &k,
        &fib_fam,
        &PresheafMap::identity(fam.target()),
        &uf.diagonal.after(alpha_prime)?,
    )?;
    let cl = classify_small(a, u)?;
    let into_udot = uf.udot.mediate(&alpha_prime.after(a)?, &cl.top)?;
    let iso = pb.mediate(a, &into_udot)?;
    if !iso.is_iso() {
        return Err(Error::NotIso("recovered family".into()));
    }
    Ok(Recovered {
        family: fam,
        structure,
        iso,
    })
}

/// `α′` recovers `(a, s)`: the pulled-back family is `a` up to the canonical
/// iso, and the pulled-back structure is `s` transported along it.
pub fn check_recovery(
    fib: &dyn FibAssignment,
    a: &PresheafMap,
    s: &PresheafMap,
    uf: &UniversalFibration,
    u: &Universe,
) -> Result<bool> {
    let alpha_prime = classify_fibration(fib, a, s, uf, u)?;
    let r = recover(fib, a, &alpha_prime, uf, u)?;
    if r.family.after(&r.iso)? != *a {
        return Ok(false);
    }
    let fa = fib.assign(a)?;
    let id = PresheafMap::identity(a.target());
    let sq = Square {
        top: &r.iso,
        left: a,
        right: &r.family,
        bottom: &id,
    };
    let moved = fib.compare(&sq, &fa, &fib.assign(&r.family)?)?;
    Ok(moved.after(s)? == r.structure)
}

/// Structures on `a` correspond bijectively to maps `X -> U` over the
/// classifying map `X -> V`.
pub fn check_factorization_bijection(
    fib: &dyn FibAssignment,
    a: &PresheafMap,
    uf: &UniversalFibration,
    u: &Universe,
) -> Result<bool> {
    let fa = fib.assign(a)?;
    let structures = sections(&fa)?;
    let chi = classify_small(a, u)?.map;
    let x = a.target();
    let factorizations = HomSearch::new(x, uf.ucal())
        .allow(|c, xi, e| uf.into_v.apply(c, e) == chi.apply(c, xi))
        .run()?;
    let mut images = Vec::with_capacity(structures.len());
    for s in &structures {
        let ap = classify_fibration(fib, a, s, uf, u)?;
        if !factorizations.contains(&ap) || images.contains(&ap) {
            return Ok(false);
        }
        images.push(ap);
    }
    Ok(images.len() == factorizations.len())
}

/// `Fib_D(B) := η^*F_*Fib(F^*B)` for an assignment on the source base.
#[derive(Clone, Debug)]
pub struct TransferredFib {
    name: String,
    base_change: BaseChange,
    inner: Arc<dyn FibAssignment>,
}

impl TransferredFib {
    pub fn new(base_change: BaseChange, inner: Arc<dyn FibAssignment>) -> Self {
        let name = format!("{}*", inner.name());
        TransferredFib {
            name,
            base_change,
            inner,
        }
    }

    pub fn base_change(&self) -> &BaseChange {
        &self.base_change
    }

    pub fn inner(&self) -> &dyn FibAssignment {
        self.inner.as_ref()
    }

    /// `Fib(F^*B) -> F^*Y` on the source base.
    pub fn restricted(&self, b: &PresheafMap) -> Result<PresheafMap> {
        self.inner.assign(&self.base_change.restrict_map(b)?)
    }

    fn assign_parts(&self, b: &PresheafMap) -> Result<(PresheafMap, Pullback)> {
        let bc = &self.base_change;
        let inner_fib = self.restricted(b)?;
        let (ext_y, eta) = bc.ran_unit(b.target())?;
        let ext_fib = bc.ran(inner_fib.source())?;
        let pushed = bc.ran_map(&inner_fib, &ext_fib, &ext_y)?;
        let pb = pullback(&eta, &pushed)?;
        Ok((inner_fib, pb))
    }
}

impl FibAssignment for TransferredFib {
    fn name(&self) -> &str {
        &self.name
    }

    fn assign(&self, b: &PresheafMap) -> Result<PresheafMap> {
        Ok(self.assign_parts(b)?.1.left)
    }

    fn compare(&self, sq: &Square<'_>, fib_a: &PresheafMap, fib_b: &PresheafMap) -> Result<PresheafMap> {
        let bc = &self.base_change;
        let (inner_a, pb_a) = self.assign_parts(sq.left)?;
        let (inner_b, pb_b) = self.assign_parts(sq.right)?;
        if pb_a.left != *fib_a || pb_b.left != *fib_b {
            return Err(Error::InvalidMap("Fib objects were not produced by this assignment".into()));
        }
        let (top, left, right, bottom) = (
            bc.restrict_map(sq.top)?,
            bc.restrict_map(sq.left)?,
            bc.restrict_map(sq.right)?,
            bc.restrict_map(sq.bottom)?,
        );
        let restricted = Square {
            top: &top,
            left: &left,
            right: &right,
            bottom: &bottom,
        };
        let k = self.inner.compare(&restricted, &inner_a, &inner_b)?;
        let ext_a = bc.ran(inner_a.source())?;
        let ext_b = bc.ran(inner_b.source())?;
        let pushed = bc.ran_map(&k, &ext_a, &ext_b)?;
        pb_b.mediate(&sq.bottom.after(&pb_a.left)?, &pushed.after(&pb_a.right)?)
    }
}
