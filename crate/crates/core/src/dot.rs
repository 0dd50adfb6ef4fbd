//! Hasse diagrams of preorders on admissible-relation/action pairs, as DOT.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::format::wact_body;
use crate::waction::WActPair;

/// The poset reflection of a preorder on `0..n` and its cover relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hasse {
    /// Equivalence classes, each sorted, ordered by their least member.
    pub classes: Vec<Vec<usize>>,
    /// `(lower, upper)` class indices of each cover, sorted.
    pub covers: Vec<(usize, usize)>,
}

/// Quotient the preorder `leq` on `0..n` by mutual comparability and keep
/// only the covers of the resulting partial order.
pub fn hasse(n: usize, leq: impl Fn(usize, usize) -> bool) -> Hasse {
    let le: Vec<Vec<bool>> = (0..n).map(|a| (0..n).map(|b| a == b || leq(a, b)).collect()).collect();
    let mut class_of = vec![usize::MAX; n];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for a in 0..n {
        if class_of[a] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = (a..n).filter(|&b| le[a][b] && le[b][a]).collect();
        for &b in &members {
            class_of[b] = classes.len();
        }
        classes.push(members);
    }
    let c = classes.len();
    let below = |x: usize, y: usize| le[classes[x][0]][classes[y][0]];
    let mut covers = Vec::new();
    for x in 0..c {
        for y in 0..c {
            if x != y && below(x, y) && !(0..c).any(|z| z != x && z != y && below(x, z) && below(z, y)) {
                covers.push((x, y));
            }
        }
    }
    Hasse { classes, covers }
}

/// Short hex digest of a pair's canonical text.
pub fn fingerprint(p: &WActPair) -> String {
    let digest = Sha256::digest(wact_body(&p.canonical()).as_bytes());
    digest.iter().take(6).map(|b| format!("{b:02x}")).collect()
}

/// DOT digraph of `leq` on `pairs`: one node per equivalence class, labeled
/// with the class size, the size of the corresponding middle term and a
/// fingerprint; one edge per cover, drawn upward from the smaller class.
pub fn emit_dot(pairs: &[WActPair], leq: impl Fn(&WActPair, &WActPair) -> bool) -> String {
    let diagram = hasse(pairs.len(), |a, b| leq(&pairs[a], &pairs[b]));
    let mut out = String::from("digraph wact {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, class) in diagram.classes.iter().enumerate() {
        let prints: Vec<String> = class.iter().map(|&m| fingerprint(&pairs[m])).collect();
        let print = prints.iter().min().expect("classes are non-empty");
        let g = pairs[class[0]].relation().num_classes();
        let _ = writeln!(out, "  c{i} [label=\"size={} |G|={g} fp={print}\"];", class.len());
    }
    for (a, b) in &diagram.covers {
        let _ = writeln!(out, "  c{a} -> c{b};");
    }
    out.push_str("}\n");
    out
}
