use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown object `{0}`")]
    UnknownObject(String),

    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),

    #[error("duplicate name `{0}`")]
    DuplicateName(String),

    #[error("missing composite for `{g}` after `{f}`")]
    MissingComposite { g: String, f: String },

    #[error("`{g}` after `{f}` is not composable")]
    NotComposable { g: String, f: String },

    #[error("composite of `{g}` after `{f}` is `{gf}`, which has the wrong domain or codomain")]
    CompositeTypeMismatch { g: String, f: String, gf: String },

    #[error("associativity fails for `{h}`, `{g}`, `{f}`: `{left}` versus `{right}`")]
    AssocViolation {
        h: String,
        g: String,
        f: String,
        left: String,
        right: String,
    },

    #[error("identity law fails for `{morphism}` against `{identity}`")]
    IdentityViolation { morphism: String, identity: String },

    #[error("invalid functor: {0}")]
    InvalidFunctor(String),

    #[error("invalid natural transformation: {0}")]
    InvalidNatTransform(String),

    #[error("invalid presheaf: {0}")]
    InvalidPresheaf(String),

    #[error("invalid presheaf map: {0}")]
    InvalidMap(String),

    #[error("not a discrete fibration: {0}")]
    NotDiscreteFibration(String),

    #[error("size guard exceeded: search space {estimate} exceeds guard {guard}")]
    SizeGuardExceeded { estimate: u128, guard: u64 },

    #[error("not a monomorphism")]
    NotMono,

    #[error("component at `{0}` is not invertible")]
    NotIso(String),

    #[error("fiber over `{object}` has {size} elements, which is not below {alpha}")]
    FiberTooLarge {
        object: String,
        size: usize,
        alpha: usize,
    },

    #[error("presheaves or functors live over different base categories")]
    BaseMismatch,

    #[error("family is not {alpha}-small")]
    NotSmall { alpha: usize },

    #[error("partial classifying map does not classify the restricted family")]
    PartialNotClassifying,

    #[error("map is not a section")]
    NotASection,

    #[error("cardinal bound must satisfy 2 <= alpha <= 4, got {0}")]
    InvalidAlpha(usize),

    #[error("parse error: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
