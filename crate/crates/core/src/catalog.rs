//! Exhaustive catalogs of small structures: monoids up to isomorphism,
//! frames, and split extensions with a small middle term.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use crate::extension::SplitExtension;
use crate::frame::{check_frame, FiniteFrame};
use crate::monoid::{homomorphisms, inverse_structure, kernel, Elem, FiniteMonoid, InverseStructure};

/// Fill a table with identity 0 cell by cell, pruning on every fully
/// determined associativity triple. `cell_values(a, b, table)` gives the
/// values allowed at `(a, b)`; `a, b ≥ 1`.
fn search_tables(
    n: usize,
    symmetric: bool,
    cell_values: &dyn Fn(Elem, Elem) -> Vec<Elem>,
    out: &mut Vec<Vec<Elem>>,
) {
    const UNSET: usize = usize::MAX;
    let mut table = vec![UNSET; n * n];
    for a in 0..n {
        table[a] = a;
        table[a * n] = a;
    }
    let cells: Vec<(Elem, Elem)> = (1..n)
        .flat_map(|a| (1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| !symmetric || a <= b)
        .collect();

    fn associative_so_far(n: usize, t: &[Elem]) -> bool {
        const UNSET: usize = usize::MAX;
        for a in 1..n {
            for b in 1..n {
                let ab = t[a * n + b];
                if ab == UNSET {
                    continue;
                }
                for c in 1..n {
                    let bc = t[b * n + c];
                    if bc == UNSET {
                        continue;
                    }
                    let (l, r) = (t[ab * n + c], t[a * n + bc]);
                    if l != UNSET && r != UNSET && l != r {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn go(
        n: usize,
        symmetric: bool,
        cells: &[(Elem, Elem)],
        depth: usize,
        table: &mut Vec<Elem>,
        cell_values: &dyn Fn(Elem, Elem) -> Vec<Elem>,
        out: &mut Vec<Vec<Elem>>,
    ) {
        let Some(&(a, b)) = cells.get(depth) else {
            out.push(table.clone());
            return;
        };
        for v in cell_values(a, b) {
            table[a * n + b] = v;
            if symmetric {
                table[b * n + a] = v;
            }
            if associative_so_far(n, table) {
                go(n, symmetric, cells, depth + 1, table, cell_values, out);
            }
        }
        table[a * n + b] = UNSET;
        if symmetric {
            table[b * n + a] = UNSET;
        }
    }

    go(n, symmetric, &cells, 0, &mut table, cell_values, out);
}

fn up_to_isomorphism(tables: Vec<Vec<Elem>>, n: usize) -> Vec<FiniteMonoid> {
    let canonical: BTreeSet<Vec<Elem>> = tables
        .into_iter()
        .map(|t| FiniteMonoid::from_parts(n, 0, t).canonical_form().table().to_vec())
        .collect();
    canonical.into_iter().map(|t| FiniteMonoid::from_parts(n, 0, t)).collect()
}

/// All monoids of order `n` up to isomorphism, identity at index 0, in
/// lexicographic order of their canonical tables.
pub fn monoids_of_order(n: usize) -> Vec<FiniteMonoid> {
    assert!(n >= 1);
    let mut tables = Vec::new();
    search_tables(n, false, &|_, _| (0..n).collect(), &mut tables);
    up_to_isomorphism(tables, n)
        .into_iter()
        .enumerate()
        .map(|(i, m)| m.with_name(format!("M{n}.{i}")))
        .collect()
}

/// Monoids of order at most 4 up to isomorphism, grouped by order.
pub fn monoid_catalog() -> &'static [FiniteMonoid] {
    static CATALOG: OnceLock<Vec<FiniteMonoid>> = OnceLock::new();
    CATALOG.get_or_init(|| (1..=4).flat_map(monoids_of_order).collect())
}

/// Catalog monoids of order at most `max`.
pub fn monoids_up_to(max: usize) -> Vec<FiniteMonoid> {
    assert!(max <= 4, "the catalog stops at order 4");
    monoid_catalog().iter().filter(|m| m.size() <= max).cloned().collect()
}

/// The inverse monoids among [`monoids_up_to`].
pub fn inverse_monoids_up_to(max: usize) -> Vec<InverseStructure> {
    monoids_up_to(max).iter().filter_map(|m| inverse_structure(m).ok()).collect()
}

/// Frames of order `n` up to isomorphism (top at index 0).
pub fn frames_of_order(n: usize) -> Vec<FiniteFrame> {
    assert!(n >= 1);
    let mut tables = Vec::new();
    // below the top, meets stay below the top
    search_tables(n, true, &|a, b| if a == b { vec![a] } else { (1..n).collect() }, &mut tables);
    up_to_isomorphism(tables, n)
        .into_iter()
        .enumerate()
        .filter_map(|(i, m)| check_frame(&m.with_name(format!("F{n}.{i}"))).ok())
        .collect()
}

pub fn frames_up_to(max: usize) -> Vec<FiniteFrame> {
    (1..=max).flat_map(frames_of_order).collect()
}

/// Every split extension whose middle term `G` is a catalog monoid of order
/// at most `max_g`: for each surjection `e: G -> H` onto a catalog monoid and
/// each section `s`, the kernel of `e` with its inclusion, kept when `e` is
/// the cokernel of that inclusion.
pub fn split_extensions_up_to(max_g: usize) -> Vec<SplitExtension> {
    let monoids = monoids_up_to(max_g);
    let mut out = Vec::new();
    for g in &monoids {
        for h in monoids.iter().filter(|h| h.size() <= g.size()) {
            for e in homomorphisms(g, h).into_iter().filter(|e| e.is_surjective()) {
                let (_, k) = kernel(&e);
                for s in homomorphisms(h, g) {
                    if h.elements().all(|x| e.apply(s.apply(x)) == x) {
                        if let Ok(ext) = SplitExtension::from_homs(k.clone(), e.clone(), s) {
                            out.push(ext);
                        }
                    }
                }
            }
        }
    }
    out
}
