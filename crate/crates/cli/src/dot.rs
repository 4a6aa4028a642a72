//! Graphviz export. Objects become nodes, non-identity morphisms edges.

use std::fmt::Write;

use hscat_core::{grothendieck, FinCategory, FinFunctor, Presheaf};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn edges(out: &mut String, c: &FinCategory) {
    for m in 0..c.num_morphisms() {
        if c.is_identity(m) {
            continue;
        }
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(c.object_name(c.dom(m))),
            quote(c.object_name(c.cod(m))),
            quote(c.morphism_name(m))
        );
    }
}

pub fn category_dot(c: &FinCategory, name: &str) -> String {
    let mut out = format!("digraph {} {{\n", quote(name));
    for o in c.objects() {
        let _ = writeln!(out, "  {};", quote(o));
    }
    edges(&mut out, c);
    out.push_str("}\n");
    out
}

/// The total category of `p`, one cluster per fiber.
pub fn fibration_dot(p: &FinFunctor, name: &str) -> String {
    let (e, b) = (p.source(), p.target());
    let mut out = format!("digraph {} {{\n", quote(name));
    for base_obj in 0..b.num_objects() {
        let _ = writeln!(out, "  subgraph {} {{", quote(&format!("cluster_{base_obj}")));
        let _ = writeln!(out, "    label={};", quote(b.object_name(base_obj)));
        for o in (0..e.num_objects()).filter(|&o| p.obj(o) == base_obj) {
            let _ = writeln!(out, "    {};", quote(e.object_name(o)));
        }
        out.push_str("  }\n");
    }
    edges(&mut out, e);
    out.push_str("}\n");
    out
}

/// `∫X` clustered over the base.
pub fn presheaf_dot(x: &Presheaf, name: &str) -> String {
    let el = grothendieck(x);
    fibration_dot(el.projection(), name)
}

#[cfg(test)]
mod tests {
    use super::*;
    use hscat_core::{catalog, constant};

    fn count(dot: &str) -> (usize, usize) {
        let edges = dot.lines().filter(|l| l.contains("->")).count();
        let nodes = dot
            .lines()
            .filter(|l| l.trim_end().ends_with(';') && !l.contains("->") && !l.contains("label="))
            .count();
        (nodes, edges)
    }

    #[test]
    fn small_graphs() {
        assert_eq!(count(&category_dot(&catalog::terminal(), "1")), (1, 0));
        assert_eq!(count(&category_dot(&catalog::arrow(), "2")), (2, 1));
        assert_eq!(count(&presheaf_dot(&constant(&catalog::arrow(), 2), "x")), (4, 2));
    }

    #[test]
    fn deterministic() {
        let x = constant(&catalog::span(), 2);
        assert_eq!(presheaf_dot(&x, "x"), presheaf_dot(&x, "x"));
    }
}
