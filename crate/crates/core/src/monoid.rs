//! Finite monoids given by Cayley tables, together with homomorphisms,
//! inverse-monoid structure, congruences, quotients, kernels and cokernels.
//!
//! Elements are always the indices `0..size`. Labels and names are carried
//! along for display only and never take part in equality.

use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use petgraph::unionfind::UnionFind;
use thiserror::Error;

/// An element of a finite monoid, identified by its index.
pub type Elem = usize;

#[derive(Clone)]
pub struct FiniteMonoid {
    size: usize,
    identity: Elem,
    table: Arc<[Elem]>,
    labels: Option<Arc<[String]>>,
    name: Option<Arc<str>>,
}

/// Structural problems with a candidate table, as opposed to law violations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableFormatError {
    #[error("a monoid needs at least one element")]
    Empty,
    #[error("row {row} has {found} entries, expected {expected}")]
    NotSquare { row: usize, found: usize, expected: usize },
    #[error("entry ({row},{col}) = {value} is out of range for size {size}")]
    OutOfRange { row: usize, col: usize, value: usize, size: usize },
    #[error("identity {identity} is out of range for size {size}")]
    IdentityOutOfRange { identity: usize, size: usize },
    #[error("{found} labels given for {size} elements")]
    LabelCount { found: usize, size: usize },
}

/// A single failed monoid law together with its witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LawViolation {
    /// `identity * a != a`
    LeftIdentity { element: Elem, identity: Elem },
    /// `a * identity != a`
    RightIdentity { element: Elem, identity: Elem },
    /// `(a*b)*c != a*(b*c)`
    Associativity { a: Elem, b: Elem, c: Elem },
}

impl fmt::Display for LawViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LawViolation::LeftIdentity { element, identity } => {
                write!(f, "left identity fails at ({identity},{element})")
            }
            LawViolation::RightIdentity { element, identity } => {
                write!(f, "right identity fails at ({element},{identity})")
            }
            LawViolation::Associativity { a, b, c } => {
                write!(f, "associativity fails at ({a},{b},{c})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonoidError {
    #[error("malformed table: {0}")]
    Format(#[from] TableFormatError),
    #[error("monoid laws violated: {}", .0.iter().map(|v| v.to_string()).join("; "))]
    Laws(Vec<LawViolation>),
}

/// Validate a raw table and return the monoid it describes.
///
/// Format problems (ragged rows, out-of-range entries) are reported before
/// any law is looked at. Law violations are all collected.
pub fn check_monoid(identity: Elem, rows: &[Vec<Elem>]) -> Result<FiniteMonoid, MonoidError> {
    let size = rows.len();
    if size == 0 {
        return Err(TableFormatError::Empty.into());
    }
    if identity >= size {
        return Err(TableFormatError::IdentityOutOfRange { identity, size }.into());
    }
    let mut table = Vec::with_capacity(size * size);
    for (row, entries) in rows.iter().enumerate() {
        if entries.len() != size {
            return Err(TableFormatError::NotSquare { row, found: entries.len(), expected: size }.into());
        }
        for (col, &value) in entries.iter().enumerate() {
            if value >= size {
                return Err(TableFormatError::OutOfRange { row, col, value, size }.into());
            }
            table.push(value);
        }
    }
    let violations = law_violations(size, identity, &table);
    if violations.is_empty() {
        Ok(FiniteMonoid::from_parts(size, identity, table))
    } else {
        Err(MonoidError::Laws(violations))
    }
}

fn law_violations(size: usize, identity: Elem, table: &[Elem]) -> Vec<LawViolation> {
    let mul = |a: Elem, b: Elem| table[a * size + b];
    let mut out = Vec::new();
    for a in 0..size {
        if mul(identity, a) != a {
            out.push(LawViolation::LeftIdentity { element: a, identity });
        }
        if mul(a, identity) != a {
            out.push(LawViolation::RightIdentity { element: a, identity });
        }
    }
    for a in 0..size {
        for b in 0..size {
            let ab = mul(a, b);
            for c in 0..size {
                if mul(ab, c) != mul(a, mul(b, c)) {
                    out.push(LawViolation::Associativity { a, b, c });
                }
            }
        }
    }
    out
}

impl FiniteMonoid {
    /// Build from rows, checking every law.
    pub fn new(identity: Elem, rows: Vec<Vec<Elem>>) -> Result<Self, MonoidError> {
        check_monoid(identity, &rows)
    }

    /// Build from a multiplication function, checking every law.
    pub fn from_fn(size: usize, identity: Elem, mul: impl Fn(Elem, Elem) -> Elem) -> Result<Self, MonoidError> {
        let rows: Vec<Vec<Elem>> = (0..size).map(|a| (0..size).map(|b| mul(a, b)).collect()).collect();
        check_monoid(identity, &rows)
    }

    /// Caller guarantees the table is in range, associative and unital.
    pub(crate) fn from_parts(size: usize, identity: Elem, table: Vec<Elem>) -> Self {
        debug_assert_eq!(table.len(), size * size);
        FiniteMonoid { size, identity, table: table.into(), labels: None, name: None }
    }

    pub fn with_labels<S: Into<String>>(mut self, labels: impl IntoIterator<Item = S>) -> Result<Self, TableFormatError> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() != self.size {
            return Err(TableFormatError::LabelCount { found: labels.len(), size: self.size });
        }
        self.labels = Some(labels.into());
        Ok(self)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into().into());
        self
    }

    /// The trivial monoid.
    pub fn trivial() -> Self {
        FiniteMonoid::from_parts(1, 0, vec![0]).with_name("T1")
    }

    /// Cyclic group of order `n`, element `i` standing for `g^i`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        FiniteMonoid::from_parts(n, 0, table).with_name(format!("C{n}"))
    }

    /// The `n`-element chain as a meet-semilattice: index 0 is the top
    /// (identity) and larger indices sit lower, so `a * b = max(a, b)`.
    pub fn chain(n: usize) -> Self {
        assert!(n > 0);
        let table = (0..n * n).map(|i| (i / n).max(i % n)).collect();
        FiniteMonoid::from_parts(n, 0, table).with_name(format!("SL{n}"))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.size + b]
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.size
    }

    pub fn row(&self, a: Elem) -> &[Elem] {
        &self.table[a * self.size..(a + 1) * self.size]
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn label(&self, a: Elem) -> String {
        match &self.labels {
            Some(labels) => labels[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn is_idempotent(&self, a: Elem) -> bool {
        self.mul(a, a) == a
    }

    /// All `a` with `a * a = a`.
    pub fn idempotents(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.is_idempotent(a)).collect()
    }

    pub fn is_central(&self, a: Elem) -> bool {
        self.elements().all(|x| self.mul(a, x) == self.mul(x, a))
    }

    /// All `a` commuting with every element.
    pub fn center(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.is_central(a)).collect()
    }

    pub fn is_commutative(&self) -> bool {
        self.center().len() == self.size
    }

    /// Every element has a two-sided inverse.
    pub fn is_group(&self) -> bool {
        self.elements()
            .all(|a| self.elements().any(|b| self.mul(a, b) == self.identity && self.mul(b, a) == self.identity))
    }

    /// Relabel elements: `perm[old] = new`.
    pub fn relabel(&self, perm: &[Elem]) -> FiniteMonoid {
        let n = self.size;
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                table[perm[a] * n + perm[b]] = perm[self.mul(a, b)];
            }
        }
        FiniteMonoid::from_parts(n, perm[self.identity], table)
    }

    /// Least table (lexicographically) over all relabelings that move the
    /// identity to index 0. Two monoids are isomorphic iff their canonical
    /// forms agree. Cost is `(size-1)!`, meant for catalog sizes.
    pub fn canonical_form(&self) -> FiniteMonoid {
        let others: Vec<Elem> = self.elements().filter(|&a| a != self.identity).collect();
        let mut best: Option<Vec<Elem>> = None;
        let mut perm = vec![0; self.size];
        for order in others.iter().copied().permutations(others.len()) {
            perm[self.identity] = 0;
            for (new, &old) in order.iter().enumerate() {
                perm[old] = new + 1;
            }
            let candidate = self.relabel(&perm);
            if best.as_ref().is_none_or(|b| candidate.table[..] < b[..]) {
                best = Some(candidate.table.to_vec());
            }
        }
        FiniteMonoid::from_parts(self.size, 0, best.expect("at least one ordering"))
    }

    /// The submonoid on `elems`, with its inclusion, if `elems` contains the
    /// identity and is closed under multiplication. Elements keep their
    /// relative order.
    pub fn submonoid(&self, elems: &[Elem]) -> Option<(FiniteMonoid, MonoidHom)> {
        let mut sorted = elems.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut position = vec![usize::MAX; self.size];
        for (i, &a) in sorted.iter().enumerate() {
            position[a] = i;
        }
        if position[self.identity] == usize::MAX {
            return None;
        }
        let m = sorted.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &sorted {
            for &b in &sorted {
                let p = position[self.mul(a, b)];
                if p == usize::MAX {
                    return None;
                }
                table.push(p);
            }
        }
        let mut sub = FiniteMonoid::from_parts(m, position[self.identity], table);
        if let Some(labels) = &self.labels {
            sub.labels = Some(sorted.iter().map(|&a| labels[a].clone()).collect::<Vec<_>>().into());
        }
        let inclusion = MonoidHom::from_parts(sub.clone(), self.clone(), sorted);
        Some((sub, inclusion))
    }
}

impl PartialEq for FiniteMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.identity == other.identity && self.table == other.table
    }
}

impl Eq for FiniteMonoid {}

impl std::hash::Hash for FiniteMonoid {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.size.hash(state);
        self.identity.hash(state);
        self.table.hash(state);
    }
}

impl fmt::Debug for FiniteMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteMonoid({}; 1={}; ", self.name().unwrap_or("_"), self.identity)?;
        let rows = self.elements().map(|a| self.row(a).iter().join(" ")).join(" | ");
        write!(f, "{rows})")
    }
}

/// Direct product with the pair `(l, r)` stored at index `r * |left| + l`.
pub fn direct_product(left: &FiniteMonoid, right: &FiniteMonoid) -> FiniteMonoid {
    let (nl, nr) = (left.size(), right.size());
    let n = nl * nr;
    let split = |i: Elem| (i % nl, i / nl);
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let ((la, ra), (lb, rb)) = (split(a), split(b));
            table.push(right.mul(ra, rb) * nl + left.mul(la, lb));
        }
    }
    let labels: Vec<String> = (0..n)
        .map(|i| {
            let (l, r) = split(i);
            format!("({},{})", left.label(l), right.label(r))
        })
        .collect();
    FiniteMonoid::from_parts(n, right.identity() * nl + left.identity(), table)
        .with_labels(labels)
        .expect("label count matches")
}

/// Search for an isomorphism `a -> b` by backtracking over bijections that
/// fix the identity and respect every already-determined product.
pub fn find_isomorphism(a: &FiniteMonoid, b: &FiniteMonoid) -> Option<Vec<Elem>> {
    if a.size() != b.size() {
        return None;
    }
    let n = a.size();
    let signature = |m: &FiniteMonoid, x: Elem| {
        let squares = m.elements().filter(|&y| m.mul(y, y) == x).count();
        let left_fixed = m.elements().filter(|&y| m.mul(x, y) == x).count();
        let right_fixed = m.elements().filter(|&y| m.mul(y, x) == x).count();
        (m.is_idempotent(x), m.is_central(x), squares, left_fixed, right_fixed)
    };
    let sig_a: Vec<_> = a.elements().map(|x| signature(a, x)).collect();
    let sig_b: Vec<_> = b.elements().map(|x| signature(b, x)).collect();
    let mut sorted_a = sig_a.clone();
    let mut sorted_b = sig_b.clone();
    sorted_a.sort_unstable();
    sorted_b.sort_unstable();
    if sorted_a != sorted_b {
        return None;
    }

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[a.identity()] = b.identity();
    used[b.identity()] = true;
    let order: Vec<Elem> = a.elements().filter(|&x| x != a.identity()).collect();

    fn consistent(a: &FiniteMonoid, b: &FiniteMonoid, map: &[Elem], x: Elem) -> bool {
        for y in a.elements() {
            if map[y] == usize::MAX {
                continue;
            }
            for (p, q) in [(x, y), (y, x)] {
                let prod = map[a.mul(p, q)];
                if prod != usize::MAX && prod != b.mul(map[p], map[q]) {
                    return false;
                }
            }
        }
        true
    }

    #[allow(clippy::too_many_arguments)]
    fn extend<S: PartialEq>(
        a: &FiniteMonoid,
        b: &FiniteMonoid,
        order: &[Elem],
        depth: usize,
        sig_a: &[S],
        sig_b: &[S],
        map: &mut [Elem],
        used: &mut [bool],
    ) -> bool {
        let Some(&x) = order.get(depth) else {
            return true;
        };
        for y in b.elements() {
            if used[y] || sig_a[x] != sig_b[y] {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if consistent(a, b, map, x) && extend(a, b, order, depth + 1, sig_a, sig_b, map, used) {
                return true;
            }
            map[x] = usize::MAX;
            used[y] = false;
        }
        false
    }

    if !consistent(a, b, &map, a.identity()) {
        return None;
    }
    extend(a, b, &order, 0, &sig_a, &sig_b, &mut map, &mut used).then_some(map)
}

pub fn is_isomorphic(a: &FiniteMonoid, b: &FiniteMonoid) -> bool {
    find_isomorphism(a, b).is_some()
}

// ---------------------------------------------------------------------------
// Homomorphisms

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonoidHom {
    source: FiniteMonoid,
    target: FiniteMonoid,
    map: Vec<Elem>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomError {
    #[error("map has {found} entries, source has {expected} elements")]
    LengthMismatch { found: usize, expected: usize },
    #[error("map sends {element} to {value}, outside a target of size {size}")]
    OutOfRange { element: Elem, value: Elem, size: usize },
    #[error("identity is sent to {image}, not the target identity")]
    IdentityNotPreserved { image: Elem },
    #[error("product not preserved at ({a},{b})")]
    NotMultiplicative { a: Elem, b: Elem },
}

impl HomError {
    /// Size and range problems, as opposed to failed hom laws.
    pub fn is_format(&self) -> bool {
        matches!(self, HomError::LengthMismatch { .. } | HomError::OutOfRange { .. })
    }
}

/// Check that `map` is a monoid homomorphism `source -> target`.
pub fn check_hom(source: &FiniteMonoid, target: &FiniteMonoid, map: &[Elem]) -> Result<MonoidHom, HomError> {
    if map.len() != source.size() {
        return Err(HomError::LengthMismatch { found: map.len(), expected: source.size() });
    }
    if let Some((element, &value)) = map.iter().enumerate().find(|(_, &v)| v >= target.size()) {
        return Err(HomError::OutOfRange { element, value, size: target.size() });
    }
    let image = map[source.identity()];
    if image != target.identity() {
        return Err(HomError::IdentityNotPreserved { image });
    }
    for a in source.elements() {
        for b in source.elements() {
            if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                return Err(HomError::NotMultiplicative { a, b });
            }
        }
    }
    Ok(MonoidHom::from_parts(source.clone(), target.clone(), map.to_vec()))
}

impl MonoidHom {
    pub fn new(source: &FiniteMonoid, target: &FiniteMonoid, map: Vec<Elem>) -> Result<Self, HomError> {
        check_hom(source, target, &map)
    }

    pub(crate) fn from_parts(source: FiniteMonoid, target: FiniteMonoid, map: Vec<Elem>) -> Self {
        MonoidHom { source, target, map }
    }

    pub fn identity(m: &FiniteMonoid) -> Self {
        MonoidHom::from_parts(m.clone(), m.clone(), m.elements().collect())
    }

    /// The morphism sending everything to the identity.
    pub fn zero(source: &FiniteMonoid, target: &FiniteMonoid) -> Self {
        MonoidHom::from_parts(source.clone(), target.clone(), vec![target.identity(); source.size()])
    }

    pub fn source(&self) -> &FiniteMonoid {
        &self.source
    }

    pub fn target(&self) -> &FiniteMonoid {
        &self.target
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.map[a]
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &MonoidHom) -> MonoidHom {
        assert_eq!(first.target, self.source, "composition of non-composable homs");
        let map = first.map.iter().map(|&a| self.map[a]).collect();
        MonoidHom::from_parts(first.source.clone(), self.target.clone(), map)
    }

    pub fn is_zero(&self) -> bool {
        self.map.iter().all(|&a| a == self.target.identity())
    }

    pub fn is_injective(&self) -> bool {
        self.map.iter().all_unique()
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target.size()];
        for &a in &self.map {
            hit[a] = true;
        }
        hit.into_iter().all(|h| h)
    }

    /// Sorted, deduplicated image.
    pub fn image(&self) -> Vec<Elem> {
        self.map.iter().copied().sorted_unstable().dedup().collect()
    }
}

impl fmt::Debug for MonoidHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MonoidHom{:?}", self.map)
    }
}

/// Every monoid homomorphism `source -> target`, in lexicographic order of
/// the map.
pub fn homomorphisms(source: &FiniteMonoid, target: &FiniteMonoid) -> Vec<MonoidHom> {
    maps_preserving_products(source, target, true)
        .into_iter()
        .map(|map| MonoidHom::from_parts(source.clone(), target.clone(), map))
        .collect()
}

/// Backtracking search for maps with `f(ab) = f(a)f(b)`; when `unital`,
/// the identity must go to the identity.
pub(crate) fn maps_preserving_products(source: &FiniteMonoid, target: &FiniteMonoid, unital: bool) -> Vec<Vec<Elem>> {
    fn go(
        source: &FiniteMonoid,
        target: &FiniteMonoid,
        unital: bool,
        next: Elem,
        map: &mut Vec<Elem>,
        out: &mut Vec<Vec<Elem>>,
    ) {
        if next == source.size() {
            out.push(map.clone());
            return;
        }
        for v in target.elements() {
            if unital && next == source.identity() && v != target.identity() {
                continue;
            }
            map.push(v);
            let ok = (0..=next).all(|a| {
                [(a, next), (next, a)].into_iter().all(|(x, y)| {
                    let p = source.mul(x, y);
                    p > next || map[p] == target.mul(map[x], map[y])
                })
            });
            if ok {
                go(source, target, unital, next + 1, map, out);
            }
            map.pop();
        }
    }
    let mut out = Vec::new();
    go(source, target, unital, 0, &mut Vec::with_capacity(source.size()), &mut out);
    out
}

// ---------------------------------------------------------------------------
// Inverse monoids

/// An inverse monoid: every element `a` has exactly one `a⁻¹` with
/// `a a⁻¹ a = a` and `a⁻¹ a a⁻¹ = a⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InverseStructure {
    base: FiniteMonoid,
    inv: Vec<Elem>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum NotInverse {
    #[error("element {0} has no generalized inverse")]
    NotRegular(Elem),
    #[error("idempotents {0} and {1} do not commute")]
    NonCommutingIdempotents(Elem, Elem),
    #[error("element {element} has several inverses, e.g. {first} and {second}")]
    SeveralInverses { element: Elem, first: Elem, second: Elem },
}

fn generalized_inverses(m: &FiniteMonoid, a: Elem) -> impl Iterator<Item = Elem> + '_ {
    m.elements().filter(move |&b| m.mul(m.mul(a, b), a) == a && m.mul(m.mul(b, a), b) == b)
}

/// Regularity is checked first, then commutation of idempotents, and only
/// then uniqueness of inverses, so a non-inverse regular monoid is reported
/// through a pair of non-commuting idempotents.
pub fn inverse_structure(m: &FiniteMonoid) -> Result<InverseStructure, NotInverse> {
    let mut inv = Vec::with_capacity(m.size());
    for a in m.elements() {
        match generalized_inverses(m, a).next() {
            Some(b) => inv.push(b),
            None => return Err(NotInverse::NotRegular(a)),
        }
    }
    let idem = m.idempotents();
    for (i, &e) in idem.iter().enumerate() {
        for &f in &idem[i + 1..] {
            if m.mul(e, f) != m.mul(f, e) {
                return Err(NotInverse::NonCommutingIdempotents(e, f));
            }
        }
    }
    for a in m.elements() {
        let mut all = generalized_inverses(m, a);
        if let (Some(first), Some(second)) = (all.next(), all.next()) {
            return Err(NotInverse::SeveralInverses { element: a, first, second });
        }
    }
    Ok(InverseStructure { base: m.clone(), inv })
}

impl InverseStructure {
    pub fn base(&self) -> &FiniteMonoid {
        &self.base
    }

    #[inline]
    pub fn inverse(&self, a: Elem) -> Elem {
        self.inv[a]
    }

    pub fn inverses(&self) -> &[Elem] {
        &self.inv
    }

    /// `a a⁻¹`
    #[inline]
    pub fn range_idempotent(&self, a: Elem) -> Elem {
        self.base.mul(a, self.inv[a])
    }
}

// ---------------------------------------------------------------------------
// Congruences

/// A two-sided congruence, stored as a class labeling numbered by first
/// occurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Congruence {
    base: FiniteMonoid,
    class_of: Vec<usize>,
    classes: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongruenceError {
    #[error("labeling has {found} entries for {size} elements")]
    Length { found: usize, size: usize },
    #[error("{a} ~ {b} but {x}*{a} and {x}*{b} are apart")]
    NotLeftStable { a: Elem, b: Elem, x: Elem },
    #[error("{a} ~ {b} but {a}*{x} and {b}*{x} are apart")]
    NotRightStable { a: Elem, b: Elem, x: Elem },
}

/// Renumber an arbitrary labeling so classes appear as 0, 1, 2, ... in order
/// of first occurrence.
pub(crate) fn normalize_labeling(labels: &[usize]) -> (Vec<usize>, usize) {
    let mut seen: Vec<(usize, usize)> = Vec::new();
    let out = labels
        .iter()
        .map(|&l| match seen.iter().find(|(old, _)| *old == l) {
            Some(&(_, new)) => new,
            None => {
                let new = seen.len();
                seen.push((l, new));
                new
            }
        })
        .collect();
    (out, seen.len())
}

impl Congruence {
    pub fn new(base: &FiniteMonoid, labels: &[usize]) -> Result<Self, CongruenceError> {
        if labels.len() != base.size() {
            return Err(CongruenceError::Length { found: labels.len(), size: base.size() });
        }
        let (class_of, classes) = normalize_labeling(labels);
        for a in base.elements() {
            for b in base.elements().filter(|&b| b > a && class_of[a] == class_of[b]) {
                for x in base.elements() {
                    if class_of[base.mul(x, a)] != class_of[base.mul(x, b)] {
                        return Err(CongruenceError::NotLeftStable { a, b, x });
                    }
                    if class_of[base.mul(a, x)] != class_of[base.mul(b, x)] {
                        return Err(CongruenceError::NotRightStable { a, b, x });
                    }
                }
            }
        }
        Ok(Congruence { base: base.clone(), class_of, classes })
    }

    pub fn discrete(base: &FiniteMonoid) -> Self {
        Congruence { base: base.clone(), class_of: base.elements().collect(), classes: base.size() }
    }

    pub fn total(base: &FiniteMonoid) -> Self {
        Congruence { base: base.clone(), class_of: vec![0; base.size()], classes: 1 }
    }

    /// The kernel pair of `f`: `a ~ b` iff `f(a) = f(b)`.
    pub fn kernel_pair(f: &MonoidHom) -> Self {
        let (class_of, classes) = normalize_labeling(f.map());
        Congruence { base: f.source().clone(), class_of, classes }
    }

    pub fn base(&self) -> &FiniteMonoid {
        &self.base
    }

    pub fn class_of(&self, a: Elem) -> usize {
        self.class_of[a]
    }

    pub fn labeling(&self) -> &[usize] {
        &self.class_of
    }

    pub fn num_classes(&self) -> usize {
        self.classes
    }

    pub fn related(&self, a: Elem, b: Elem) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    /// Every pair of `self` is a pair of `other`.
    pub fn is_finer_than(&self, other: &Congruence) -> bool {
        self.base.elements().all(|a| {
            self.base.elements().all(|b| !self.related(a, b) || other.related(a, b))
        })
    }
}

/// The least congruence containing `pairs`: a worklist fixpoint over a
/// union-find partition, pushing left and right translates of every pair
/// that causes a merge.
pub fn congruence_closure(m: &FiniteMonoid, pairs: &[(Elem, Elem)]) -> Congruence {
    let mut uf = UnionFind::<usize>::new(m.size());
    let mut work: Vec<(Elem, Elem)> = pairs.to_vec();
    while let Some((a, b)) = work.pop() {
        if uf.union(a, b) {
            for x in m.elements() {
                work.push((m.mul(x, a), m.mul(x, b)));
                work.push((m.mul(a, x), m.mul(b, x)));
            }
        }
    }
    let roots: Vec<usize> = m.elements().map(|a| uf.find_mut(a)).collect();
    let (class_of, classes) = normalize_labeling(&roots);
    Congruence { base: m.clone(), class_of, classes }
}

/// The quotient monoid on class indices and the projection onto it.
pub fn quotient(m: &FiniteMonoid, c: &Congruence) -> (FiniteMonoid, MonoidHom) {
    let k = c.num_classes();
    let mut rep = vec![usize::MAX; k];
    for a in m.elements() {
        if rep[c.class_of(a)] == usize::MAX {
            rep[c.class_of(a)] = a;
        }
    }
    let table = (0..k * k).map(|i| c.class_of(m.mul(rep[i / k], rep[i % k]))).collect();
    let q = FiniteMonoid::from_parts(k, c.class_of(m.identity()), table);
    let projection = MonoidHom::from_parts(m.clone(), q.clone(), c.labeling().to_vec());
    (q, projection)
}

/// The submonoid `{a : f(a) = 1}` with its inclusion.
pub fn kernel(f: &MonoidHom) -> (FiniteMonoid, MonoidHom) {
    let elems: Vec<Elem> = f.source().elements().filter(|&a| f.apply(a) == f.target().identity()).collect();
    f.source().submonoid(&elems).expect("preimage of the identity is a submonoid")
}

/// Why `e` fails to be the cokernel of `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum CokernelFailure {
    #[error("not surjective, {0} is missed")]
    NotSurjective(Elem),
    #[error("{a} and {b} are identified by one side only")]
    CongruenceMismatch { a: Elem, b: Elem },
}

/// `None` when `e` is the cokernel of `k`, otherwise a witness.
///
/// `e` is the cokernel of `k` iff it is surjective and its kernel pair is
/// the congruence generated by `k(n) ~ 1`.
pub fn cokernel_failure(k: &MonoidHom, e: &MonoidHom) -> Option<CokernelFailure> {
    let g = e.source();
    if let Some(h) = e.target().elements().find(|h| !e.map().contains(h)) {
        return Some(CokernelFailure::NotSurjective(h));
    }
    let generators: Vec<(Elem, Elem)> = k.map().iter().map(|&x| (x, g.identity())).collect();
    let closure = congruence_closure(g, &generators);
    let pair = Congruence::kernel_pair(e);
    for a in g.elements() {
        for b in g.elements().filter(|&b| b > a) {
            if closure.related(a, b) != pair.related(a, b) {
                return Some(CokernelFailure::CongruenceMismatch { a, b });
            }
        }
    }
    None
}

pub fn is_cokernel(k: &MonoidHom, e: &MonoidHom) -> bool {
    cokernel_failure(k, e).is_none()
}
