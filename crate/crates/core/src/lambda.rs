//! Actions of inverse monoids and their λ-semidirect products.
//!
//! For an action `h · n` of `H` on `N` with `(hh')·n = h·(h'·n)`,
//! `h·(nn') = (h·n)(h·n')` and `1·n = n`, the λ-semidirect product lives on
//! `{(n,h) : hh⁻¹·n = n}` with
//!
//! ```text
//! (n,h)(n',h') = (((hh')(hh')⁻¹·n)(h·n'), hh')
//! ```
//!
//! and is a weakly Schreier extension of `H` by `N`.

use thiserror::Error;

use crate::extension::{verify_split_extension, ExtensionCandidate, SchreierRetraction, SplitExtension};
use crate::monoid::{check_hom, maps_preserving_products, Elem, FiniteMonoid, HomError, InverseStructure, MonoidHom};
use crate::waction::ActionTable;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InverseAction {
    n: InverseStructure,
    h: InverseStructure,
    act: ActionTable,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ActionViolation {
    #[error("action table is {found_h}×{found_n}, expected {h}×{n}")]
    Shape { h: usize, n: usize, found_h: usize, found_n: usize },
    #[error("{h}·({a}{b}) ≠ ({h}·{a})({h}·{b})")]
    NotEndomorphism { h: Elem, a: Elem, b: Elem },
    #[error("({h1}{h2})·{n} ≠ {h1}·({h2}·{n})")]
    NotCompatibleWithProduct { h1: Elem, h2: Elem, n: Elem },
    #[error("1·{n} ≠ {n}")]
    IdentityActsNontrivially { n: Elem },
}

/// Check the three laws of an action of inverse monoids.
pub fn check_inverse_action(
    n: &InverseStructure,
    h: &InverseStructure,
    act: ActionTable,
) -> Result<InverseAction, ActionViolation> {
    let (nm, hm) = (n.base(), h.base());
    if act.h_size() != hm.size() || act.n_size() != nm.size() {
        return Err(ActionViolation::Shape {
            h: hm.size(),
            n: nm.size(),
            found_h: act.h_size(),
            found_n: act.n_size(),
        });
    }
    for hh in hm.elements() {
        for a in nm.elements() {
            for b in nm.elements() {
                if act.get(hh, nm.mul(a, b)) != nm.mul(act.get(hh, a), act.get(hh, b)) {
                    return Err(ActionViolation::NotEndomorphism { h: hh, a, b });
                }
            }
        }
    }
    for h1 in hm.elements() {
        for h2 in hm.elements() {
            for a in nm.elements() {
                if act.get(hm.mul(h1, h2), a) != act.get(h1, act.get(h2, a)) {
                    return Err(ActionViolation::NotCompatibleWithProduct { h1, h2, n: a });
                }
            }
        }
    }
    if let Some(a) = nm.elements().find(|&a| act.get(hm.identity(), a) != a) {
        return Err(ActionViolation::IdentityActsNontrivially { n: a });
    }
    Ok(InverseAction { n: n.clone(), h: h.clone(), act })
}

impl InverseAction {
    pub fn new(n: &InverseStructure, h: &InverseStructure, act: ActionTable) -> Result<Self, ActionViolation> {
        check_inverse_action(n, h, act)
    }

    /// `h · n = n`
    pub fn trivial(n: &InverseStructure, h: &InverseStructure) -> Result<Self, ActionViolation> {
        check_inverse_action(n, h, ActionTable::trivial(h.base().size(), n.base().size()))
    }

    pub fn n(&self) -> &InverseStructure {
        &self.n
    }

    pub fn h(&self) -> &InverseStructure {
        &self.h
    }

    pub fn table(&self) -> &ActionTable {
        &self.act
    }

    #[inline]
    pub fn apply(&self, h: Elem, n: Elem) -> Elem {
        self.act.get(h, n)
    }
}

/// A λ-semidirect product with its split extension `k(n) = (n,1)`,
/// `e(n,h) = h`, `s(h) = (hh⁻¹·1, h)`.
#[derive(Clone, Debug)]
pub struct LambdaProduct {
    action: InverseAction,
    carrier: Vec<(Elem, Elem)>,
    index: Vec<usize>,
    extension: SplitExtension,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("internal consistency failure in λ-product: {0}")]
pub struct LambdaError(String);

/// `(hh⁻¹·n, h)`, the canonical representative of the class of `(n, h)`.
pub fn canonicalize(a: &InverseAction, n: Elem, h: Elem) -> (Elem, Elem) {
    (a.apply(a.h.range_idempotent(h), n), h)
}

/// The λ-product of two carrier pairs.
fn lambda_mul(a: &InverseAction, (n1, h1): (Elem, Elem), (n2, h2): (Elem, Elem)) -> (Elem, Elem) {
    let hm = a.h.base();
    let hh = hm.mul(h1, h2);
    let left = a.apply(a.h.range_idempotent(hh), n1);
    (a.n.base().mul(left, a.apply(h1, n2)), hh)
}

/// Multiply the classes of `p1` and `p2` in the quotient presentation,
/// `[n₁,h₁][n₂,h₂] = [n₁(h₁·n₂), h₁h₂]`, and return the canonical
/// representative of the result.
pub fn canonical_multiplication(a: &InverseAction, (n1, h1): (Elem, Elem), (n2, h2): (Elem, Elem)) -> (Elem, Elem) {
    let n = a.n.base().mul(n1, a.apply(h1, n2));
    canonicalize(a, n, a.h.base().mul(h1, h2))
}

/// Build the λ-semidirect product of `a` and check it is a split extension.
///
/// Carrier pairs are ordered by `h`, then `n`.
pub fn lambda_product(a: &InverseAction) -> Result<LambdaProduct, LambdaError> {
    let (nm, hm) = (a.n.base(), a.h.base());
    let mut carrier = Vec::new();
    let mut index = vec![usize::MAX; nm.size() * hm.size()];
    for h in hm.elements() {
        let e = a.h.range_idempotent(h);
        for n in nm.elements() {
            if a.apply(e, n) == n {
                index[h * nm.size() + n] = carrier.len();
                carrier.push((n, h));
            }
        }
    }
    let at = |(n, h): (Elem, Elem)| index[h * nm.size() + n];
    let size = carrier.len();
    let mut rows = Vec::with_capacity(size);
    for &p in &carrier {
        let mut row = Vec::with_capacity(size);
        for &q in &carrier {
            let r = lambda_mul(a, p, q);
            let i = at(r);
            if i == usize::MAX {
                return Err(LambdaError(format!("product {p:?}·{q:?} = {r:?} leaves the carrier")));
            }
            row.push(i);
        }
        rows.push(row);
    }
    let unit = at((nm.identity(), hm.identity()));
    if unit == usize::MAX {
        return Err(LambdaError("(1,1) is not in the carrier".into()));
    }
    let g = crate::monoid::check_monoid(unit, &rows).map_err(|e| LambdaError(e.to_string()))?;
    let labels: Vec<String> = carrier.iter().map(|&(n, h)| format!("({},{})", nm.label(n), hm.label(h))).collect();
    let g = g.with_labels(labels).expect("one label per pair");

    let candidate = ExtensionCandidate {
        n: nm.clone(),
        g,
        h: hm.clone(),
        k: nm.elements().map(|n| at((n, hm.identity()))).collect(),
        e: carrier.iter().map(|&(_, h)| h).collect(),
        s: hm.elements().map(|h| at((a.apply(a.h.range_idempotent(h), nm.identity()), h))).collect(),
    };
    if candidate.k.contains(&usize::MAX) || candidate.s.contains(&usize::MAX) {
        return Err(LambdaError("k or s leaves the carrier".into()));
    }
    let extension = verify_split_extension(&candidate).map_err(|e| LambdaError(e.to_string()))?;
    Ok(LambdaProduct { action: a.clone(), carrier, index, extension })
}

impl LambdaProduct {
    pub fn action(&self) -> &InverseAction {
        &self.action
    }

    pub fn carrier(&self) -> &[(Elem, Elem)] {
        &self.carrier
    }

    pub fn monoid(&self) -> &FiniteMonoid {
        self.extension.g()
    }

    pub fn extension(&self) -> &SplitExtension {
        &self.extension
    }

    pub fn index_of(&self, n: Elem, h: Elem) -> Option<usize> {
        let i = self.index[h * self.action.n.base().size() + n];
        (i != usize::MAX).then_some(i)
    }

    /// Multiply two carrier elements given as pairs.
    pub fn mul_pairs(&self, p: (Elem, Elem), q: (Elem, Elem)) -> Option<(Elem, Elem)> {
        let (i, j) = (self.index_of(p.0, p.1)?, self.index_of(q.0, q.1)?);
        Some(self.carrier[self.monoid().mul(i, j)])
    }

    /// The first projection, which is always a Schreier retraction here.
    pub fn first_projection(&self) -> SchreierRetraction {
        let q = self.carrier.iter().map(|&(n, _)| n).collect();
        SchreierRetraction::new(&self.extension, q).expect("first projection is a Schreier retraction")
    }
}

/// `a ≤ b` in the order induced by the extensions:
/// `b(hh⁻¹, a(h,n)) = b(h,n)` for all `h, n`.
pub fn lambda_action_leq(a: &InverseAction, b: &InverseAction) -> bool {
    assert!(a.n == b.n && a.h == b.h, "actions over different monoids are incomparable");
    a.h.base().elements().all(|h| {
        let e = a.h.range_idempotent(h);
        a.n.base().elements().all(|n| b.apply(e, a.apply(h, n)) == b.apply(h, n))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArtinError {
    #[error("map is not a homomorphism H → N: {0}")]
    NotHom(#[from] HomError),
    #[error("f({h}) = {value} is not a central idempotent")]
    NotCentralIdempotent { h: Elem, value: Elem },
    #[error("maps have different source or target")]
    Mismatch,
}

fn central_idempotent_valued(n: &FiniteMonoid, f: &MonoidHom) -> Result<(), ArtinError> {
    match f.source().elements().find(|&h| {
        let v = f.apply(h);
        !(n.is_idempotent(v) && n.is_central(v))
    }) {
        Some(h) => Err(ArtinError::NotCentralIdempotent { h, value: f.apply(h) }),
        None => Ok(()),
    }
}

/// `α_f(h,n) = f(h)·n` for a homomorphism `f: H -> E(N) ∩ Z(N)`.
pub fn artin_like_action(n: &InverseStructure, h: &InverseStructure, f: &MonoidHom) -> Result<InverseAction, ArtinError> {
    let f = check_hom(h.base(), n.base(), f.map())?;
    central_idempotent_valued(n.base(), &f)?;
    let nm = n.base();
    let act = ActionTable::from_fn(h.base().size(), nm.size(), |hh, x| nm.mul(f.apply(hh), x));
    Ok(check_inverse_action(n, h, act).expect("central idempotent maps give actions"))
}

/// `(f·g)(h) = f(h) g(h)`.
pub fn pointwise_product(f: &MonoidHom, g: &MonoidHom) -> Result<MonoidHom, ArtinError> {
    if f.source() != g.source() || f.target() != g.target() {
        return Err(ArtinError::Mismatch);
    }
    let n = f.target();
    central_idempotent_valued(n, f)?;
    central_idempotent_valued(n, g)?;
    let map: Vec<Elem> = f.source().elements().map(|h| n.mul(f.apply(h), g.apply(h))).collect();
    Ok(check_hom(f.source(), n, &map)?)
}

/// The join of `α_f` and `α_g`, namely `α_{f·g}`.
pub fn artin_join(
    n: &InverseStructure,
    h: &InverseStructure,
    f: &MonoidHom,
    g: &MonoidHom,
) -> Result<InverseAction, ArtinError> {
    artin_like_action(n, h, &pointwise_product(f, g)?)
}

/// All homomorphisms `H -> N` landing in the central idempotents of `N`.
pub fn central_idempotent_homs(h: &FiniteMonoid, n: &FiniteMonoid) -> Vec<MonoidHom> {
    crate::monoid::homomorphisms(h, n)
        .into_iter()
        .filter(|f| central_idempotent_valued(n, f).is_ok())
        .collect()
}

/// Semigroup endomorphisms of `n` (identity not necessarily preserved),
/// lexicographic in the map.
pub fn semigroup_endomorphisms(n: &FiniteMonoid) -> Vec<Vec<Elem>> {
    maps_preserving_products(n, n, false)
}

/// Default cap on the pruned search space `|End(N)|^(|H|-1)`.
pub const DEFAULT_ACTION_SEARCH_LIMIT: f64 = 1e9;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("refusing to enumerate actions: about {estimate:.3e} candidates exceed the limit {limit:.3e}")]
pub struct ActionSearchTooLarge {
    pub estimate: f64,
    pub limit: f64,
}

/// Every action of inverse monoids of `h` on `n`, lexicographic in the
/// table (rows in `h` order).
///
/// An action is a monoid homomorphism from `H` into the semigroup
/// endomorphisms of `N` under composition; the search fixes the identity
/// row and extends over the remaining elements of `H`, pruning as soon as
/// `(h₁h₂)· = h₁·∘h₂·` fails on assigned rows.
pub fn enumerate_inverse_actions(
    n: &InverseStructure,
    h: &InverseStructure,
    limit: f64,
) -> Result<Vec<InverseAction>, ActionSearchTooLarge> {
    let (nm, hm) = (n.base(), h.base());
    let endos = semigroup_endomorphisms(nm);
    let estimate = (endos.len() as f64).powi(hm.size() as i32 - 1);
    if estimate > limit {
        return Err(ActionSearchTooLarge { estimate, limit });
    }
    let identity_row: Vec<Elem> = nm.elements().collect();
    let identity_index = endos.iter().position(|e| *e == identity_row).expect("identity is an endomorphism");

    let mut assigned: Vec<Option<usize>> = vec![None; hm.size()];
    assigned[hm.identity()] = Some(identity_index);
    let order: Vec<Elem> = hm.elements().filter(|&x| x != hm.identity()).collect();

    fn consistent(hm: &FiniteMonoid, endos: &[Vec<Elem>], assigned: &[Option<usize>], x: Elem) -> bool {
        for y in hm.elements() {
            for (a, b) in [(x, y), (y, x)] {
                let (Some(ea), Some(eb), Some(ep)) = (assigned[a], assigned[b], assigned[hm.mul(a, b)]) else {
                    continue;
                };
                let (fa, fb, fp) = (&endos[ea], &endos[eb], &endos[ep]);
                if fb.iter().zip(fp).any(|(&mid, &direct)| fa[mid] != direct) {
                    return false;
                }
            }
        }
        true
    }

    fn go(
        hm: &FiniteMonoid,
        endos: &[Vec<Elem>],
        order: &[Elem],
        depth: usize,
        assigned: &mut Vec<Option<usize>>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let Some(&x) = order.get(depth) else {
            out.push(assigned.iter().map(|a| a.expect("all assigned")).collect());
            return;
        };
        for i in 0..endos.len() {
            assigned[x] = Some(i);
            if consistent(hm, endos, assigned, x) {
                go(hm, endos, order, depth + 1, assigned, out);
            }
        }
        assigned[x] = None;
    }

    let mut found = Vec::new();
    if consistent(hm, &endos, &assigned, hm.identity()) {
        go(hm, &endos, &order, 0, &mut assigned, &mut found);
    }
    let mut actions: Vec<InverseAction> = found
        .into_iter()
        .map(|rows| {
            let data = rows.iter().flat_map(|&i| endos[i].iter().copied()).collect();
            let act = ActionTable::from_data(hm.size(), nm.size(), data).expect("rows have |N| entries");
            InverseAction { n: n.clone(), h: h.clone(), act }
        })
        .collect();
    actions.sort_by(|a, b| a.act.cmp(&b.act));
    Ok(actions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::find_retraction;
    use crate::fixtures::*;
    use crate::monoid::inverse_structure;

    fn inv(m: &FiniteMonoid) -> InverseStructure {
        inverse_structure(m).unwrap()
    }

    /// α_u on (SL3, SL2): the bottom of SL2 sends everything to `u`.
    fn alpha(u: Elem) -> InverseAction {
        let act = ActionTable::from_fn(2, 3, |h, n| if h == 0 { n } else { u });
        InverseAction::new(&inv(&sl3()), &inv(&sl2()), act).unwrap()
    }

    fn artin(f: &[Elem], n: &FiniteMonoid, h: &FiniteMonoid) -> InverseAction {
        let f = MonoidHom::new(h, n, f.to_vec()).unwrap();
        artin_like_action(&inv(n), &inv(h), &f).unwrap()
    }

    #[test]
    fn action_law_examples() {
        assert!(InverseAction::trivial(&inv(&sl3()), &inv(&c2())).is_ok());
        let id = artin(&[0, 1], &sl2(), &sl2());
        assert_eq!(id.table().data(), &[0, 1, 1, 1]);
        // u = g in C2 is not idempotent: g·(1·1) = g but (g·1)(g·1) = 1
        let act = ActionTable::from_fn(2, 2, |h, n| if h == 0 { n } else { 1 });
        assert_eq!(
            InverseAction::new(&inv(&c2()), &inv(&sl2()), act).unwrap_err(),
            ActionViolation::NotEndomorphism { h: 1, a: 0, b: 0 }
        );
    }

    #[test]
    fn trivial_action_over_a_group_is_the_direct_product() {
        let a = InverseAction::trivial(&inv(&sl2()), &inv(&c2())).unwrap();
        let lp = lambda_product(&a).unwrap();
        assert_eq!(lp.carrier(), &[(0, 0), (1, 0), (0, 1), (1, 1)]);
        assert_eq!(*lp.monoid(), crate::monoid::direct_product(&sl2(), &c2()));
        assert_eq!(lp.extension().s().map(), &[0, 2]);
    }

    #[test]
    fn identity_glueing_carrier() {
        let lp = lambda_product(&artin(&[0, 1], &sl2(), &sl2())).unwrap();
        assert_eq!(lp.carrier(), &[(0, 0), (1, 0), (1, 1)]);
        assert_eq!(*lp.monoid(), FiniteMonoid::chain(3));
    }

    #[test]
    fn constant_action_carrier_and_products() {
        let lp = lambda_product(&alpha(1)).unwrap();
        assert_eq!(lp.carrier(), &[(0, 0), (1, 0), (2, 0), (1, 1)]);
        assert_eq!(lp.mul_pairs((1, 1), (1, 1)), Some((1, 1)));
        // (a,e)(0,1) = ((ee⁻¹·a)(e·0), e) = (a·a, e)
        assert_eq!(lp.mul_pairs((1, 1), (2, 0)), Some((1, 1)));
        assert_eq!(canonical_multiplication(&alpha(1), (1, 1), (2, 0)), (1, 1));
        assert_eq!(find_retraction(lp.extension()).unwrap().map(), &[0, 1, 2, 0]);
        assert_eq!(lp.first_projection().map(), &[0, 1, 2, 1]);
    }

    #[test]
    fn canonicalize_examples() {
        let id = artin(&[0, 1], &sl2(), &sl2());
        assert_eq!(canonicalize(&id, 1, 0), (1, 0));
        assert_eq!(canonicalize(&id, 0, 1), (1, 1));
        assert_eq!(canonicalize(&alpha(1), 0, 1), (1, 1));
    }

    #[test]
    fn canonical_multiplication_matches_table() {
        for a in [alpha(1), alpha(2), artin(&[0, 1], &sl2(), &sl2()).clone()] {
            let lp = lambda_product(&a).unwrap();
            for &p in lp.carrier() {
                for &q in lp.carrier() {
                    assert_eq!(Some(canonical_multiplication(&a, p, q)), lp.mul_pairs(p, q));
                }
            }
        }
    }

    #[test]
    fn order_examples() {
        let id = artin(&[0, 1], &sl2(), &sl2());
        let top = artin(&[0, 0], &sl2(), &sl2());
        assert!(lambda_action_leq(&id, &id));
        assert!(!lambda_action_leq(&id, &top));
        assert!(lambda_action_leq(&top, &id));
    }

    #[test]
    fn artin_like_examples() {
        let top = artin(&[0, 0], &sl2(), &sl2());
        assert_eq!(top.table(), InverseAction::trivial(&inv(&sl2()), &inv(&sl2())).unwrap().table());
        let f = MonoidHom::identity(&c2());
        assert_eq!(
            artin_like_action(&inv(&c2()), &inv(&c2()), &f).unwrap_err(),
            ArtinError::NotCentralIdempotent { h: 1, value: 1 }
        );
    }

    #[test]
    fn join_examples() {
        let (n, h) = (inv(&sl2()), inv(&sl2()));
        let id = MonoidHom::identity(&sl2());
        let one = MonoidHom::zero(&sl2(), &sl2());
        assert_eq!(artin_join(&n, &h, &id, &one).unwrap(), artin_like_action(&n, &h, &id).unwrap());
        assert_eq!(pointwise_product(&id, &one).unwrap(), id);

        let f = MonoidHom::new(&sl2(), &sl3(), vec![0, 1]).unwrap();
        let g = MonoidHom::new(&sl2(), &sl3(), vec![0, 2]).unwrap();
        assert_eq!(pointwise_product(&f, &g).unwrap().map(), &[0, 2]);
    }

    #[test]
    fn enumeration_examples() {
        let t = enumerate_inverse_actions(&inv(&t1()), &inv(&sl3()), DEFAULT_ACTION_SEARCH_LIMIT).unwrap();
        assert_eq!(t.len(), 1);
        let onto_group = enumerate_inverse_actions(&inv(&sl2()), &inv(&c2()), DEFAULT_ACTION_SEARCH_LIMIT).unwrap();
        assert_eq!(onto_group.len(), 1);
        assert_eq!(onto_group[0].table(), &ActionTable::trivial(2, 2));
    }

    /// Independent oracle: filter all |N|^(|H||N|) tables by the three laws.
    fn brute_force_actions(n: &FiniteMonoid, h: &FiniteMonoid) -> Vec<ActionTable> {
        let cells = n.size() * h.size();
        let total = n.size().pow(cells as u32);
        let mut out = Vec::new();
        for code in 0..total {
            let mut data = Vec::with_capacity(cells);
            let mut c = code;
            for _ in 0..cells {
                data.push(c % n.size());
                c /= n.size();
            }
            data.reverse();
            let act = ActionTable::from_data(h.size(), n.size(), data).unwrap();
            let ok = h.elements().all(|x| {
                n.elements().all(|a| {
                    n.elements().all(|b| act.get(x, n.mul(a, b)) == n.mul(act.get(x, a), act.get(x, b)))
                })
            }) && h.elements().all(|x| {
                h.elements().all(|y| n.elements().all(|a| act.get(h.mul(x, y), a) == act.get(x, act.get(y, a))))
            }) && n.elements().all(|a| act.get(h.identity(), a) == a);
            if ok {
                out.push(act);
            }
        }
        out
    }

    #[test]
    fn enumeration_agrees_with_brute_force() {
        let monoids = [t1(), c2(), sl2(), sl3(), FiniteMonoid::cyclic(3)];
        for n in &monoids {
            for h in &monoids {
                let fast: Vec<ActionTable> = enumerate_inverse_actions(&inv(n), &inv(h), DEFAULT_ACTION_SEARCH_LIMIT)
                    .unwrap()
                    .into_iter()
                    .map(|a| a.table().clone())
                    .collect();
                assert_eq!(fast, brute_force_actions(n, h), "N = {n:?}, H = {h:?}");
            }
        }
    }

    #[test]
    fn golden_action_count_on_two_chains() {
        // α_id, α_const-1 and the action sending every n to 1 under 0
        let all = enumerate_inverse_actions(&inv(&sl2()), &inv(&sl2()), DEFAULT_ACTION_SEARCH_LIMIT).unwrap();
        let tables: Vec<&[Elem]> = all.iter().map(|a| a.table().data()).collect();
        assert_eq!(tables, vec![&[0, 1, 0, 0][..], &[0, 1, 0, 1], &[0, 1, 1, 1]]);
    }
}
