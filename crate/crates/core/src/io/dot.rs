use std::fmt::Write;

use crate::network::{BooleanNetwork, Decomposition};

fn quote(name: &str) -> String {
    format!("\"{}\"", name.replace('\\', "\\\\").replace('"', "\\\""))
}

/// The wiring diagram in DOT: one vertex per node, one edge per dependency.
pub fn emit_dot(f: &BooleanNetwork) -> String {
    let names = f.names();
    let mut out = String::from("digraph network {\n");
    for name in &names {
        writeln!(out, "  {};", quote(name)).expect("write to string");
    }
    for (i, j) in f.wiring_diagram().edges {
        writeln!(out, "  {} -> {};", quote(&names[i]), quote(&names[j])).expect("write to string");
    }
    out.push_str("}\n");
    out
}

/// The wiring diagram with each simple network drawn as a cluster. Edges
/// inside a component are solid, edges between components dashed, and
/// each edge of `Q` is one bold edge between the two clusters.
pub fn emit_decomposition_dot(f: &BooleanNetwork, d: &Decomposition) -> String {
    let names = f.names();
    let mut comp_of = vec![0; f.len()];
    for (c, members) in d.components.iter().enumerate() {
        for &v in members {
            comp_of[v] = c;
        }
    }
    let mut out = String::from("digraph decomposition {\n  compound=true;\n");
    for (c, members) in d.components.iter().enumerate() {
        writeln!(out, "  subgraph cluster_{} {{", c + 1).expect("write to string");
        writeln!(out, "    label=\"X{}\";", c + 1).expect("write to string");
        for &v in members {
            writeln!(out, "    {};", quote(&names[v])).expect("write to string");
        }
        out.push_str("  }\n");
    }
    for (i, j) in f.wiring_diagram().edges {
        let style = if comp_of[i] == comp_of[j] { "" } else { " [style=dashed]" };
        writeln!(out, "  {} -> {}{style};", quote(&names[i]), quote(&names[j])).expect("write to string");
    }
    for &(a, b) in &d.q_graph {
        let from = &names[d.components[a][0]];
        let to = &names[d.components[b][0]];
        writeln!(
            out,
            "  {} -> {} [style=bold, ltail=cluster_{}, lhead=cluster_{}];",
            quote(from),
            quote(to),
            a + 1,
            b + 1
        )
        .expect("write to string");
    }
    out.push_str("}\n");
    out
}
