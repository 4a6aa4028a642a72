//! Small named categories used as defaults and in tests.

use crate::fincat::{validate_category, FinCategory, RawCategory, RawMorphism};

fn build(objects: &[&str], morphisms: &[(&str, &str, &str)], compose: &[[&str; 3]]) -> FinCategory {
    let raw = RawCategory {
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
            .map(|[g, f, gf]| [g.to_string(), f.to_string(), gf.to_string()])
            .collect(),
    };
    validate_category(&raw).expect("catalog category is valid")
}

/// One object `*`, identity only.
pub fn terminal() -> FinCategory {
    build(&["*"], &[], &[])
}

/// The walking arrow `f: 0 -> 1`.
pub fn arrow() -> FinCategory {
    build(&["0", "1"], &[("f", "0", "1")], &[])
}

/// Discrete category on objects `a`, `b`, ... (at most 26).
pub fn discrete(n: usize) -> FinCategory {
    let names: Vec<String> = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    build(&refs, &[], &[])
}

/// Two parallel arrows `u, v: 0 -> 1`.
pub fn parallel_pair() -> FinCategory {
    build(&["0", "1"], &[("u", "0", "1"), ("v", "0", "1")], &[])
}

/// `l <-p- m -q-> r`.
pub fn span() -> FinCategory {
    build(&["l", "m", "r"], &[("p", "m", "l"), ("q", "m", "r")], &[])
}

/// `f: 0 -> 1`, `g: 1 -> 2`, `h = g∘f`.
pub fn triangle() -> FinCategory {
    build(
        &["0", "1", "2"],
        &[("f", "0", "1"), ("g", "1", "2"), ("h", "0", "2")],
        &[["g", "f", "h"]],
    )
}

/// `i: 0 -> 1` and its inverse `j`.
pub fn walking_iso() -> FinCategory {
    build(
        &["0", "1"],
        &[("i", "0", "1"), ("j", "1", "0")],
        &[["j", "i", "id_0"], ["i", "j", "id_1"]],
    )
}

/// One object with an idempotent `e∘e = e`.
pub fn idempotent() -> FinCategory {
    build(&["*"], &[("e", "*", "*")], &[["e", "e", "e"]])
}

/// One object with an involution `s∘s = id`.
pub fn involution() -> FinCategory {
    build(&["*"], &[("s", "*", "*")], &[["s", "s", "id_*"]])
}

/// The shipped default corpus, in order.
pub fn default_categories() -> Vec<FinCategory> {
    vec![
        terminal(),
        arrow(),
        discrete(2),
        parallel_pair(),
        span(),
        triangle(),
        walking_iso(),
        idempotent(),
    ]
}

pub fn default_names() -> Vec<&'static str> {
    vec![
        "terminal",
        "arrow",
        "discrete2",
        "parallel",
        "span",
        "triangle",
        "iso",
        "idempotent",
    ]
}
