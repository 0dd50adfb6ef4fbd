//! Admissible equivalence relations on `N × H`, actions compatible with
//! them, and the passage between such pairs and weakly Schreier extensions.
//!
//! A relation is stored as one partition of `N` per element of `H`, so pairs
//! with different second components can never be related.

use std::fmt;

use itertools::Itertools;
use thiserror::Error;

use crate::extension::{verify_split_extension, ExtensionCandidate, ExtensionError, SchreierRetraction, SplitExtension};
use crate::monoid::{normalize_labeling, Elem, FiniteMonoid};
use crate::EnumerationBound;

/// A set partition of `0..len`, labeled by first occurrence so equal
/// partitions have equal labelings and blocks are ordered by least element.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    class_of: Vec<usize>,
    blocks: usize,
}

impl Partition {
    pub fn from_labels(labels: &[usize]) -> Self {
        let (class_of, blocks) = normalize_labeling(labels);
        Partition { class_of, blocks }
    }

    pub fn discrete(len: usize) -> Self {
        Partition { class_of: (0..len).collect(), blocks: len }
    }

    pub fn total(len: usize) -> Self {
        Partition { class_of: vec![0; len], blocks: len.min(1) }
    }

    /// Build from explicit blocks; every element must appear exactly once.
    pub fn from_blocks(len: usize, blocks: &[Vec<Elem>]) -> Option<Self> {
        let mut labels = vec![usize::MAX; len];
        for (i, block) in blocks.iter().enumerate() {
            for &a in block {
                if a >= len || labels[a] != usize::MAX {
                    return None;
                }
                labels[a] = i;
            }
        }
        if labels.contains(&usize::MAX) {
            return None;
        }
        Some(Partition::from_labels(&labels))
    }

    /// Every partition of `0..len` in lexicographic order of the labeling.
    pub fn all(len: usize) -> Vec<Partition> {
        fn go(len: usize, labels: &mut Vec<usize>, max: usize, out: &mut Vec<Partition>) {
            if labels.len() == len {
                out.push(Partition { class_of: labels.clone(), blocks: if len == 0 { 0 } else { max + 1 } });
                return;
            }
            let upper = if labels.is_empty() { 0 } else { max + 1 };
            for l in 0..=upper {
                labels.push(l);
                go(len, labels, max.max(l), out);
                labels.pop();
            }
        }
        let mut out = Vec::new();
        go(len, &mut Vec::with_capacity(len), 0, &mut out);
        out
    }

    pub fn len(&self) -> usize {
        self.class_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.class_of.is_empty()
    }

    #[inline]
    pub fn block_of(&self, a: Elem) -> usize {
        self.class_of[a]
    }

    #[inline]
    pub fn related(&self, a: Elem, b: Elem) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks
    }

    pub fn labeling(&self) -> &[usize] {
        &self.class_of
    }

    pub fn blocks(&self) -> Vec<Vec<Elem>> {
        let mut out = vec![Vec::new(); self.blocks];
        for (a, &b) in self.class_of.iter().enumerate() {
            out[b].push(a);
        }
        out
    }

    /// Least element of each block, in block order.
    pub fn block_minima(&self) -> Vec<Elem> {
        let mut out = vec![usize::MAX; self.blocks];
        for (a, &b) in self.class_of.iter().enumerate() {
            if out[b] == usize::MAX {
                out[b] = a;
            }
        }
        out
    }

    /// Least element related to `a`.
    pub fn block_min(&self, a: Elem) -> Elem {
        let b = self.class_of[a];
        self.class_of.iter().position(|&c| c == b).expect("a is in its own block")
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks == self.class_of.len()
    }

    /// Every pair related here is related in `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        let mut image = vec![usize::MAX; self.blocks];
        self.class_of.iter().zip(&other.class_of).all(|(&mine, &theirs)| {
            if image[mine] == usize::MAX {
                image[mine] = theirs;
            }
            image[mine] == theirs
        })
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for block in self.blocks() {
            write!(f, "{{{}}}", block.iter().join(" "))?;
        }
        Ok(())
    }
}

/// A table `H × N -> N`, row-major in `h`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ActionTable {
    h_size: usize,
    n_size: usize,
    data: Vec<Elem>,
}

impl ActionTable {
    pub fn from_fn(h_size: usize, n_size: usize, act: impl Fn(Elem, Elem) -> Elem) -> Self {
        let data = (0..h_size).flat_map(|h| (0..n_size).map(move |n| (h, n))).map(|(h, n)| act(h, n)).collect();
        ActionTable { h_size, n_size, data }
    }

    pub fn from_data(h_size: usize, n_size: usize, data: Vec<Elem>) -> Option<Self> {
        (data.len() == h_size * n_size && data.iter().all(|&m| m < n_size)).then_some(ActionTable { h_size, n_size, data })
    }

    /// The action `h · n = n`.
    pub fn trivial(h_size: usize, n_size: usize) -> Self {
        ActionTable::from_fn(h_size, n_size, |_, n| n)
    }

    #[inline]
    pub fn get(&self, h: Elem, n: Elem) -> Elem {
        self.data[h * self.n_size + n]
    }

    pub fn h_size(&self) -> usize {
        self.h_size
    }

    pub fn n_size(&self) -> usize {
        self.n_size
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }
}

impl fmt::Debug for ActionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows = self.data.chunks(self.n_size.max(1)).map(|r| r.iter().join(" ")).join(" | ");
        write!(f, "ActionTable({rows})")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdmissibleViolation {
    #[error("expected one partition of {n} elements per element of H ({h}), got {found}")]
    Shape { n: usize, h: usize, found: usize },
    #[error("fiber over the identity relates {a} and {b}")]
    IdentityFiberNotDiscrete { a: Elem, b: Elem },
    #[error("fiber {h}: {n1} ~ {n2} but not {x}*{n1} ~ {x}*{n2}")]
    NotLeftStable { h: Elem, n1: Elem, n2: Elem, x: Elem },
    #[error("{n1} ~ {n2} in fiber {h} but not in fiber {h}*{y}")]
    NotRightStable { h: Elem, n1: Elem, n2: Elem, y: Elem },
}

/// An admissible equivalence relation on `N × H`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AdmissibleRelation {
    n: FiniteMonoid,
    h: FiniteMonoid,
    fibers: Vec<Partition>,
}

/// The first violated admissibility condition, if any.
pub fn check_admissible(n: &FiniteMonoid, h: &FiniteMonoid, fibers: &[Partition]) -> Result<(), AdmissibleViolation> {
    if fibers.len() != h.size() || fibers.iter().any(|p| p.len() != n.size()) {
        return Err(AdmissibleViolation::Shape { n: n.size(), h: h.size(), found: fibers.len() });
    }
    let unit = &fibers[h.identity()];
    if let Some((a, b)) = n.elements().tuple_combinations().find(|&(a, b)| unit.related(a, b)) {
        return Err(AdmissibleViolation::IdentityFiberNotDiscrete { a, b });
    }
    for hh in h.elements() {
        let fiber = &fibers[hh];
        for (n1, n2) in n.elements().tuple_combinations().filter(|&(a, b)| fiber.related(a, b)) {
            if let Some(x) = n.elements().find(|&x| !fiber.related(n.mul(x, n1), n.mul(x, n2))) {
                return Err(AdmissibleViolation::NotLeftStable { h: hh, n1, n2, x });
            }
        }
        for y in h.elements() {
            let wider = &fibers[h.mul(hh, y)];
            if !fiber.refines(wider) {
                let (n1, n2) = n
                    .elements()
                    .tuple_combinations()
                    .find(|&(a, b)| fiber.related(a, b) && !wider.related(a, b))
                    .expect("refinement fails on some pair");
                return Err(AdmissibleViolation::NotRightStable { h: hh, n1, n2, y });
            }
        }
    }
    Ok(())
}

impl AdmissibleRelation {
    pub fn new(n: &FiniteMonoid, h: &FiniteMonoid, fibers: Vec<Partition>) -> Result<Self, AdmissibleViolation> {
        check_admissible(n, h, &fibers)?;
        Ok(AdmissibleRelation { n: n.clone(), h: h.clone(), fibers })
    }

    /// Only `(n, h) ~ (n, h)`.
    pub fn discrete(n: &FiniteMonoid, h: &FiniteMonoid) -> Self {
        AdmissibleRelation { n: n.clone(), h: h.clone(), fibers: vec![Partition::discrete(n.size()); h.size()] }
    }

    pub fn n(&self) -> &FiniteMonoid {
        &self.n
    }

    pub fn h(&self) -> &FiniteMonoid {
        &self.h
    }

    pub fn fibers(&self) -> &[Partition] {
        &self.fibers
    }

    pub fn fiber(&self, h: Elem) -> &Partition {
        &self.fibers[h]
    }

    /// `(a, h) ~ (b, h)`
    #[inline]
    pub fn related(&self, h: Elem, a: Elem, b: Elem) -> bool {
        self.fibers[h].related(a, b)
    }

    /// Number of equivalence classes, i.e. the size of the extension it
    /// presents.
    pub fn num_classes(&self) -> usize {
        self.fibers.iter().map(Partition::num_blocks).sum()
    }

    /// Fiberwise inclusion of relations.
    pub fn refines(&self, other: &AdmissibleRelation) -> bool {
        self.fibers.iter().zip(&other.fibers).all(|(a, b)| a.refines(b))
    }
}

/// A failed compatibility condition, numbered as in the definition:
/// 1 and 2 are the congruence conditions, 3 to 6 the action laws up to `~`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("compatibility condition {condition} fails at {witness:?}")]
pub struct CompatibilityViolation {
    pub condition: u8,
    pub witness: Vec<Elem>,
}

/// Check the six conditions making `act` compatible with `rel`.
pub fn check_compatible_action(rel: &AdmissibleRelation, act: &ActionTable) -> Result<(), CompatibilityViolation> {
    let (n, h) = (&rel.n, &rel.h);
    let fail = |condition, witness: &[Elem]| Err(CompatibilityViolation { condition, witness: witness.to_vec() });
    if act.h_size() != h.size() || act.n_size() != n.size() {
        return fail(0, &[act.h_size(), act.n_size()]);
    }
    for hh in h.elements() {
        let fiber = rel.fiber(hh);
        for (n1, n2) in n.elements().tuple_combinations().filter(|&(a, b)| fiber.related(a, b)) {
            for x in n.elements() {
                let m = act.get(hh, x);
                if !fiber.related(n.mul(n1, m), n.mul(n2, m)) {
                    return fail(1, &[hh, n1, n2, x]);
                }
            }
        }
    }
    for h2 in h.elements() {
        let fiber = rel.fiber(h2);
        for (a, b) in n.elements().tuple_combinations().filter(|&(a, b)| fiber.related(a, b)) {
            for h1 in h.elements() {
                if !rel.related(h.mul(h1, h2), act.get(h1, a), act.get(h1, b)) {
                    return fail(2, &[h1, h2, a, b]);
                }
            }
        }
    }
    for hh in h.elements() {
        for a in n.elements() {
            for b in n.elements() {
                if !rel.related(hh, act.get(hh, n.mul(a, b)), n.mul(act.get(hh, a), act.get(hh, b))) {
                    return fail(3, &[hh, a, b]);
                }
            }
        }
    }
    for h1 in h.elements() {
        for h2 in h.elements() {
            let p = h.mul(h1, h2);
            for a in n.elements() {
                if !rel.related(p, act.get(p, a), act.get(h1, act.get(h2, a))) {
                    return fail(4, &[h1, h2, a]);
                }
            }
        }
    }
    if let Some(hh) = h.elements().find(|&hh| !rel.related(hh, act.get(hh, n.identity()), n.identity())) {
        return fail(5, &[hh]);
    }
    if let Some(a) = n.elements().find(|&a| !rel.related(h.identity(), act.get(h.identity(), a), a)) {
        return fail(6, &[a]);
    }
    Ok(())
}

/// `(a(h,n), h) ~ (b(h,n), h)` for every `h, n`.
pub fn actions_equivalent(rel: &AdmissibleRelation, a: &ActionTable, b: &ActionTable) -> bool {
    rel.h.elements().all(|h| rel.n.elements().all(|n| rel.related(h, a.get(h, n), b.get(h, n))))
}

/// An admissible relation with a compatible action, standing for its class
/// of equivalent actions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WActPair {
    relation: AdmissibleRelation,
    action: ActionTable,
}

impl WActPair {
    pub fn new(relation: AdmissibleRelation, action: ActionTable) -> Result<Self, CompatibilityViolation> {
        check_compatible_action(&relation, &action)?;
        Ok(WActPair { relation, action })
    }

    pub fn relation(&self) -> &AdmissibleRelation {
        &self.relation
    }

    pub fn action(&self) -> &ActionTable {
        &self.action
    }

    /// The least table equivalent to this action: every entry replaced by
    /// the least element of its block.
    pub fn canonical(&self) -> WActPair {
        let rel = &self.relation;
        let action = ActionTable::from_fn(rel.h.size(), rel.n.size(), |h, n| rel.fiber(h).block_min(self.action.get(h, n)));
        WActPair { relation: rel.clone(), action }
    }

    /// Same relation and equivalent actions.
    pub fn same_class(&self, other: &WActPair) -> bool {
        self.relation == other.relation && actions_equivalent(&self.relation, &self.action, &other.action)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("multiplication is not well defined: [{n1},{h1}]·[{n2},{h2}]")]
    IllDefined { n1: Elem, h1: Elem, n2: Elem, h2: Elem },
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

/// Index of the class of `(n, h)` when classes are listed by `h`, then by
/// block.
fn class_offsets(rel: &AdmissibleRelation) -> Vec<usize> {
    rel.fibers
        .iter()
        .scan(0, |acc, p| {
            let start = *acc;
            *acc += p.num_blocks();
            Some(start)
        })
        .collect()
}

/// The weakly Schreier extension on `(N × H)/E` with
/// `[n,h]·[n',h'] = [n α(h,n'), hh']`, `k(n) = [n,1]`, `e[n,h] = h` and
/// `s(h) = [1,h]`. Classes are ordered by `h`, then by least member.
///
/// Compatibility guarantees a well-defined product; it is re-checked on
/// every pair of representatives anyway.
pub fn build_extension(p: &WActPair) -> Result<SplitExtension, BuildError> {
    let (rel, act) = (&p.relation, &p.action);
    let (n, h) = (&rel.n, &rel.h);
    let offsets = class_offsets(rel);
    let class = |a: Elem, hh: Elem| offsets[hh] + rel.fiber(hh).block_of(a);
    let size = rel.num_classes();

    let mut members: Vec<(Elem, Elem)> = Vec::with_capacity(n.size() * h.size());
    for hh in h.elements() {
        for a in n.elements() {
            members.push((a, hh));
        }
    }
    let mut table = vec![usize::MAX; size * size];
    for &(n1, h1) in &members {
        for &(n2, h2) in &members {
            let product = class(n.mul(n1, act.get(h1, n2)), h.mul(h1, h2));
            let slot = &mut table[class(n1, h1) * size + class(n2, h2)];
            if *slot == usize::MAX {
                *slot = product;
            } else if *slot != product {
                return Err(BuildError::IllDefined { n1, h1, n2, h2 });
            }
        }
    }
    let rows: Vec<Vec<Elem>> = table.chunks(size).map(<[Elem]>::to_vec).collect();
    let identity = class(n.identity(), h.identity());
    let g = crate::monoid::check_monoid(identity, &rows).map_err(|e| BuildError::Inconsistent(e.to_string()))?;

    let mut labels = vec![String::new(); size];
    for &(a, hh) in members.iter().rev() {
        labels[class(a, hh)] = format!("[{},{}]", n.label(a), h.label(hh));
    }
    let g = g.with_labels(labels).expect("one label per class");

    let candidate = ExtensionCandidate {
        n: n.clone(),
        g,
        h: h.clone(),
        k: n.elements().map(|a| class(a, h.identity())).collect(),
        e: h.elements().flat_map(|hh| std::iter::repeat_n(hh, rel.fiber(hh).num_blocks())).collect(),
        s: h.elements().map(|hh| class(n.identity(), hh)).collect(),
    };
    verify_split_extension(&candidate).map_err(|e: ExtensionError| BuildError::Inconsistent(e.to_string()))
}

/// The pair presenting a weakly Schreier extension:
/// `(n,h) ~ (n',h)` iff `k(n)s(h) = k(n')s(h)`, and `α(h,n) = q(s(h)k(n))`.
pub fn extract_waction(ext: &SplitExtension, q: &SchreierRetraction) -> WActPair {
    let (n, h, g) = (ext.n(), ext.h(), ext.g());
    let fibers = h
        .elements()
        .map(|hh| {
            let images: Vec<Elem> = n.elements().map(|a| ext.combine(a, hh)).collect();
            Partition::from_labels(&images)
        })
        .collect();
    let relation = AdmissibleRelation { n: n.clone(), h: h.clone(), fibers };
    let action = ActionTable::from_fn(h.size(), n.size(), |hh, a| q.apply(g.mul(ext.s().apply(hh), ext.k().apply(a))));
    WActPair { relation, action }
}

/// `p1 ≤ p2`: `E₁ ⊆ E₂` fiberwise and `(α₁(h,n),h) ~_{E₂} (α₂(h,n),h)`.
pub fn waction_leq(p1: &WActPair, p2: &WActPair) -> bool {
    assert!(
        p1.relation.n == p2.relation.n && p1.relation.h == p2.relation.h,
        "pairs over different monoids are incomparable"
    );
    p1.relation.refines(&p2.relation) && actions_equivalent(&p2.relation, &p1.action, &p2.action)
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("refusing to enumerate: |N|·|H| = {product} exceeds the bound {bound} (about {estimate:.3e} candidates)")]
pub struct BoundExceeded {
    pub product: usize,
    pub bound: usize,
    pub estimate: f64,
}

fn bell(n: usize) -> f64 {
    // row-by-row Bell triangle
    let mut row = vec![1.0f64];
    for _ in 1..=n {
        let mut next = vec![*row.last().unwrap()];
        for x in &row {
            let v = next.last().unwrap() + x;
            next.push(v);
        }
        row = next;
    }
    row[0]
}

/// All admissible relations on `N × H`, lexicographic in the fiber
/// partitions (taken in `h` order).
pub fn admissible_relations(n: &FiniteMonoid, h: &FiniteMonoid) -> Vec<AdmissibleRelation> {
    let all = Partition::all(n.size());
    let per_fiber: Vec<Vec<Partition>> = h
        .elements()
        .map(|hh| {
            if hh == h.identity() {
                vec![Partition::discrete(n.size())]
            } else {
                all.iter()
                    .filter(|p| {
                        // left stability only involves the fiber itself
                        n.elements().tuple_combinations().filter(|&(a, b)| p.related(a, b)).all(|(a, b)| {
                            n.elements().all(|x| p.related(n.mul(x, a), n.mul(x, b)))
                        })
                    })
                    .cloned()
                    .collect()
            }
        })
        .collect();
    per_fiber
        .into_iter()
        .multi_cartesian_product()
        .filter(|fibers| check_admissible(n, h, fibers).is_ok())
        .map(|fibers| AdmissibleRelation { n: n.clone(), h: h.clone(), fibers })
        .collect()
}

/// One canonical action per class of actions compatible with `rel`, in
/// lexicographic order of the table.
///
/// Equivalence of actions is entrywise, so a class is determined by choosing
/// a block of fiber `h` for each `(h, n)`; the canonical member takes block
/// minima. Over the identity the action is forced to be trivial.
pub fn compatible_action_classes(rel: &AdmissibleRelation) -> Vec<ActionTable> {
    let (n, h) = (&rel.n, &rel.h);
    let choices: Vec<Vec<Elem>> = h
        .elements()
        .flat_map(|hh| n.elements().map(move |a| (hh, a)))
        .map(|(hh, a)| if hh == h.identity() { vec![a] } else { rel.fiber(hh).block_minima() })
        .collect();
    choices
        .into_iter()
        .multi_cartesian_product()
        .map(|data| ActionTable { h_size: h.size(), n_size: n.size(), data })
        .filter(|act| check_compatible_action(rel, act).is_ok())
        .collect()
}

/// Every element of `WAct(H, N)`, one canonical pair per class, ordered by
/// relation and then by action table.
pub fn enumerate_wactions(
    n: &FiniteMonoid,
    h: &FiniteMonoid,
    bound: EnumerationBound,
) -> Result<impl Iterator<Item = WActPair>, BoundExceeded> {
    let product = n.size() * h.size();
    if product > bound.0 {
        let free = h.size().saturating_sub(1) as i32;
        let estimate = bell(n.size()).powi(free) * (n.size() as f64).powi(free * n.size() as i32);
        return Err(BoundExceeded { product, bound: bound.0, estimate });
    }
    Ok(admissible_relations(n, h).into_iter().flat_map(|relation| {
        compatible_action_classes(&relation)
            .into_iter()
            .map(move |action| WActPair { relation: relation.clone(), action })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::find_retraction;
    use crate::fixtures::*;

    fn collapsing_relation() -> AdmissibleRelation {
        AdmissibleRelation::new(&sl3(), &sl2(), vec![Partition::discrete(3), Partition::total(3)]).unwrap()
    }

    /// α_a: the non-identity element of SL2 sends everything to a.
    fn alpha(u: Elem) -> ActionTable {
        ActionTable::from_fn(2, 3, |h, n| if h == 0 { n } else { u })
    }

    #[test]
    fn partitions_are_counted_by_bell_numbers() {
        let counts: Vec<usize> = (0..6).map(|n| Partition::all(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 52]);
        assert_eq!(bell(4), 15.0);
    }

    #[test]
    fn admissibility_examples() {
        assert!(check_admissible(&sl3(), &sl2(), &[Partition::discrete(3), Partition::discrete(3)]).is_ok());
        assert!(check_admissible(&sl3(), &sl2(), &[Partition::discrete(3), Partition::total(3)]).is_ok());
        assert_eq!(
            check_admissible(&sl3(), &sl2(), &[Partition::total(3), Partition::total(3)]),
            Err(AdmissibleViolation::IdentityFiberNotDiscrete { a: 0, b: 1 })
        );
        // {1,0}{a} is not stable under a*-
        let bad = Partition::from_labels(&[0, 1, 0]);
        assert!(matches!(
            check_admissible(&sl3(), &sl2(), &[Partition::discrete(3), bad]),
            Err(AdmissibleViolation::NotLeftStable { .. })
        ));
    }

    #[test]
    fn compatibility_examples() {
        let disc = AdmissibleRelation::discrete(&sl3(), &sl2());
        assert!(check_compatible_action(&disc, &ActionTable::trivial(2, 3)).is_ok());
        assert!(check_compatible_action(&collapsing_relation(), &alpha(1)).is_ok());
        // α_a is not an honest action, so the discrete relation rejects it
        assert!(check_compatible_action(&disc, &alpha(1)).is_err());
    }

    #[test]
    fn equivalence_examples() {
        let rel = collapsing_relation();
        assert!(actions_equivalent(&rel, &alpha(1), &alpha(1)));
        assert!(actions_equivalent(&rel, &alpha(1), &alpha(2)));
        let disc = AdmissibleRelation::discrete(&sl3(), &sl2());
        assert!(!actions_equivalent(&disc, &alpha(1), &ActionTable::trivial(2, 3)));
    }

    #[test]
    fn build_collapsed_extension() {
        let p = WActPair::new(collapsing_relation(), alpha(1)).unwrap();
        let ext = build_extension(&p).unwrap();
        assert_eq!(ext.g().size(), 4);
        assert_eq!(ext.e().map(), &[0, 0, 0, 1]);
        let back = extract_waction(&ext, &find_retraction(&ext).unwrap());
        assert_eq!(back.relation(), p.relation());
        assert!(actions_equivalent(p.relation(), p.action(), back.action()));
    }

    #[test]
    fn trivial_action_on_discrete_relation_is_the_product() {
        let p = WActPair::new(AdmissibleRelation::discrete(&sl2(), &sl2()), ActionTable::trivial(2, 2)).unwrap();
        let ext = build_extension(&p).unwrap();
        assert_eq!(*ext.g(), crate::monoid::direct_product(&sl2(), &sl2()));
        assert!(ext.is_schreier());
    }

    #[test]
    fn waction_order_examples() {
        let top = WActPair::new(collapsing_relation(), alpha(1)).unwrap();
        let bottom = WActPair::new(AdmissibleRelation::discrete(&sl3(), &sl2()), ActionTable::trivial(2, 3)).unwrap();
        assert!(waction_leq(&top, &top));
        assert!(waction_leq(&bottom, &top));
        assert!(!waction_leq(&top, &bottom));
    }

    #[test]
    fn bound_is_enforced() {
        let err = enumerate_wactions(&FiniteMonoid::chain(4), &sl3(), EnumerationBound(9)).err().unwrap();
        assert_eq!(err.product, 12);
        assert!(err.estimate > 1.0);
    }

    #[test]
    fn group_fibers_are_discrete() {
        for p in enumerate_wactions(&c2(), &c2(), EnumerationBound::default()).unwrap() {
            assert!(p.relation().fibers().iter().all(Partition::is_discrete));
        }
    }

    #[test]
    fn trivial_kernel_gives_one_pair() {
        for h in [t1(), c2(), sl3(), r2()] {
            assert_eq!(enumerate_wactions(&t1(), &h, EnumerationBound::default()).unwrap().count(), 1);
        }
    }
}
