//! Graphviz output of Hasse diagrams.

use ordlat_core::Poset;

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// The Hasse diagram, drawn bottom to top.
pub fn hasse_dot(p: &Poset, name: &str) -> String {
    let mut out = format!(
        "digraph \"{}\" {{\n  rankdir=BT;\n  node [shape=plaintext];\n",
        escape(name)
    );
    for i in 0..p.len() {
        out += &format!("  n{i} [label=\"{}\"];\n", escape(&p.label(i)));
    }
    for (i, j) in p.hasse_covers() {
        out += &format!("  n{i} -> n{j} [arrowhead=none];\n");
    }
    out += "}\n";
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vee() {
        assert_eq!(
            hasse_dot(&Poset::vee(), "v"),
            "digraph \"v\" {\n  rankdir=BT;\n  node [shape=plaintext];\n  n0 [label=\"0\"];\n  n1 [label=\"a\"];\n  n2 [label=\"b\"];\n  n0 -> n1 [arrowhead=none];\n  n0 -> n2 [arrowhead=none];\n}\n"
        );
    }

    #[test]
    fn quotes_are_escaped() {
        let p = Poset::chain(1)
            .unwrap()
            .with_labels(vec!["\"x\"".into()])
            .unwrap();
        assert!(hasse_dot(&p, "q").contains("label=\"\\\"x\\\"\""));
    }
}
