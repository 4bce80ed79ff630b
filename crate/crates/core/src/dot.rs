//! Graphviz output: one edge per parent→child pair, nodes labelled by height.

use std::fmt::Write;

use crate::algebra::CbckAlgebra;

pub fn to_dot(a: &CbckAlgebra, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "digraph \"{}\" {{", name.replace('"', "\\\"")).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    for v in 0..a.len() {
        writeln!(out, "  n{v} [label=\"{}\"];", a.height_of_node(v)).unwrap();
    }
    for v in 1..a.len() {
        let p = a.tree().parent(v).expect("non-root nodes have parents");
        writeln!(out, "  n{p} -> n{v};").unwrap();
    }
    out.push_str("}\n");
    out
}
