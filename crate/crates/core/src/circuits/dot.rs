use std::fmt::Write;

use super::netlist::{Netlist, WireRef};

fn node(r: WireRef) -> String {
    r.to_string()
}

/// Renders a netlist as a Graphviz digraph. Nodes are emitted inputs first,
/// then gates, then outputs; edges follow the same order.
pub fn emit_dot(n: &Netlist) -> String {
    let mut out = String::new();
    out.push_str("digraph netlist {\n");
    out.push_str("  rankdir=LR;\n");
    for i in 0..n.inputs {
        writeln!(out, "  in{i} [shape=circle, label=\"in{i}\"];").unwrap();
    }
    for k in 0..n.gates.len() {
        writeln!(out, "  g{k} [shape=box, label=\"NAND\"];").unwrap();
    }
    for j in 0..n.outputs {
        writeln!(out, "  out{j} [shape=doublecircle, label=\"out{j}\"];").unwrap();
    }
    for (k, g) in n.gates.iter().enumerate() {
        writeln!(out, "  {} -> g{k};", node(g.a)).unwrap();
        writeln!(out, "  {} -> g{k};", node(g.b)).unwrap();
    }
    for (j, r) in n.output_map.iter().enumerate() {
        writeln!(out, "  {} -> out{j};", node(*r)).unwrap();
    }
    out.push_str("}\n");
    out
}
