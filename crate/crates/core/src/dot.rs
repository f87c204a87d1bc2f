//! Graphviz export of Hasse diagrams.

use std::fmt::Write;

use crate::obstruction::CrownPoset;
use crate::reedy::FinCategory;
use crate::semilattice::FiniteSemilattice;

fn render(name: &str, labels: &[String], edges: &[(usize, usize)]) -> String {
    let mut out = format!("digraph \"{name}\" {{\n  rankdir=BT;\n");
    for (i, l) in labels.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", l.replace('"', "\\\""));
    }
    for (a, b) in edges {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}

fn hasse(size: usize, lt: impl Fn(usize, usize) -> bool) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for a in 0..size {
        for b in 0..size {
            if lt(a, b) && !(0..size).any(|c| lt(a, c) && lt(c, b)) {
                edges.push((a, b));
            }
        }
    }
    edges
}

/// Hasse diagram of a semilattice, edges pointing up.
pub fn semilattice_dot(s: &FiniteSemilattice, name: &str) -> String {
    let labels: Vec<String> = (0..s.size()).map(|x| s.label(x)).collect();
    render(name, &labels, &s.covers())
}

pub fn crown_dot(c: &CrownPoset) -> String {
    let labels: Vec<String> = (0..c.size()).map(|i| i.to_string()).collect();
    let mut edges = c.covers();
    edges.sort_unstable();
    render(&format!("C{}", c.n), &labels, &edges)
}

/// Objects ordered by the existence of an injective map, covering edges only.
pub fn category_dot(cat: &FinCategory, name: &str) -> String {
    let n = cat.num_objects();
    let embeds = |a: usize, b: usize| a != b && cat.hom(a, b).iter().any(|&f| cat.is_raising(f));
    let labels: Vec<String> = cat.names().to_vec();
    render(name, &labels, &hasse(n, embeds))
}

/// Number of nodes and edges in DOT text produced here.
pub fn dot_counts(dot: &str) -> (usize, usize) {
    let nodes = dot.lines().filter(|l| l.contains("[label=")).count();
    let edges = dot.lines().filter(|l| l.contains("->")).count();
    (nodes, edges)
}
