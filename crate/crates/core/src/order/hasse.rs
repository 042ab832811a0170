use std::fmt::Write;

use super::Poset;
use crate::bits::Bits;

/// Covering pairs `(a, b)`: `a < b` with nothing strictly between.
pub fn hasse_covers(p: &Poset) -> Vec<(usize, usize)> {
    let n = p.len();
    let strict_up: Vec<Bits> = (0..n)
        .map(|a| Bits::from_indices(n, (0..n).filter(|&x| x != a && p.leq(a, x))))
        .collect();
    let strict_down: Vec<Bits> = (0..n)
        .map(|a| Bits::from_indices(n, (0..n).filter(|&x| x != a && p.leq(x, a))))
        .collect();
    let mut covers = Vec::new();
    for a in 0..n {
        for b in strict_up[a].iter() {
            if strict_up[a].is_disjoint(&strict_down[b]) {
                covers.push((a, b));
            }
        }
    }
    covers
}

/// Graphviz rendering of the Hasse diagram, edges pointing upwards.
pub fn hasse_dot(p: &Poset, label: impl Fn(usize) -> String) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=box];\n");
    for a in 0..p.len() {
        let _ = writeln!(out, "  n{a} [label=\"{}\"];", escape(&label(a)));
    }
    for (a, b) in hasse_covers(p) {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{power_order, Preorder};
    use crate::finrel::FinSet;

    #[test]
    fn chain_covers() {
        let c = Poset::new(Preorder::chain(3)).unwrap();
        assert_eq!(hasse_covers(&c), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn boolean_square() {
        let p = power_order(&FinSet::numbered(2)).unwrap();
        assert_eq!(hasse_covers(p.order()), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        let dot = hasse_dot(p.order(), |i| p.order().label(i));
        assert!(dot.contains("n0 -> n1;") && dot.contains("label=\"{0,1}\""));
    }
}
