//! Graphviz export. Arrows of the first color are drawn thick; the others
//! carry their color as a label.

use std::fmt::Write;

use crystal_core::ColoredGraph;

pub fn to_dot(g: &ColoredGraph, ids: &[u64]) -> String {
    let thick = g.colors().first().copied();
    let mut out = String::new();
    out.push_str("digraph crystal {\n");
    out.push_str("  node [shape=box, fontname=\"monospace\"];\n");
    for v in g.vertices() {
        let label = g.label(v).map_or_else(|| ids[v].to_string(), |m| m.to_string());
        writeln!(out, "  n{} [label=\"{label}\"];", ids[v]).unwrap();
    }
    for e in g.edges() {
        let (from, to) = (ids[e.from], ids[e.to]);
        if Some(e.color) == thick {
            writeln!(out, "  n{from} -> n{to} [penwidth=3];").unwrap();
        } else {
            writeln!(out, "  n{from} -> n{to} [label=\"{}\"];", e.color).unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crystal_core::pbw::generate;
    use crystal_core::HighestWeightB2;

    fn ids(g: &ColoredGraph) -> Vec<u64> {
        g.vertices().map(|v| v as u64).collect()
    }

    #[test]
    fn single_vertex() {
        let g = generate(HighestWeightB2::new(0, 0)).unwrap();
        let dot = to_dot(&g, &ids(&g));
        assert_eq!(dot.matches("[label=").count(), 1);
        assert!(!dot.contains("->"));
    }

    #[test]
    fn thick_first_color() {
        let g = generate(HighestWeightB2::new(1, 1)).unwrap();
        let dot = to_dot(&g, &ids(&g));
        let nodes = dot.lines().filter(|l| l.contains("[label=\"((")).count();
        assert_eq!(nodes, 16);
        let thick = dot.lines().filter(|l| l.contains("penwidth=3")).count();
        let labeled = dot.lines().filter(|l| l.contains("[label=\"2\"]")).count();
        let ones = g.edges().iter().filter(|e| e.color == 1).count();
        assert_eq!(thick, ones);
        assert_eq!(thick + labeled, g.edge_count());
        assert_eq!(dot, to_dot(&g, &ids(&g)));
    }
}
