//! Split extensions `N --k--> G --e--> H` with section `s`, the weakly
//! Schreier condition, Schreier retractions and morphisms of extensions.

use itertools::Itertools;
use thiserror::Error;

use crate::monoid::{check_hom, cokernel_failure, CokernelFailure, Elem, FiniteMonoid, HomError, MonoidHom};

/// The three raw maps of a would-be split extension, before any checking.
#[derive(Clone, Debug)]
pub struct ExtensionCandidate {
    pub n: FiniteMonoid,
    pub g: FiniteMonoid,
    pub h: FiniteMonoid,
    pub k: Vec<Elem>,
    pub e: Vec<Elem>,
    pub s: Vec<Elem>,
}

/// A verified split extension: `k` is the kernel of `e`, `e` the cokernel
/// of `k`, and `s` a section of `e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitExtension {
    k: MonoidHom,
    e: MonoidHom,
    s: MonoidHom,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapName {
    K,
    E,
    S,
}

impl std::fmt::Display for MapName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            MapName::K => "k",
            MapName::E => "e",
            MapName::S => "s",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error("map {map} does not fit its monoids: {source}")]
    Format { map: MapName, source: HomError },
    #[error("maps do not compose: {0}")]
    NotComposable(&'static str),
    #[error("map {map} is not a homomorphism: {source}")]
    NotHom { map: MapName, source: HomError },
    #[error("s is not a section of e: e(s({h})) = {image}")]
    NotSection { h: Elem, image: Elem },
    #[error("e(k({n})) is not the identity")]
    NotZero { n: Elem },
    #[error("{g} lies in the preimage of the identity but not in the image of k")]
    KernelTooSmall { g: Elem },
    #[error("k is not injective: k({a}) = k({b})")]
    NotInjective { a: Elem, b: Elem },
    #[error("e is not the cokernel of k: {0}")]
    NotCokernel(CokernelFailure),
    #[error("not weakly Schreier: {g} is not of the form k(n)se({g})")]
    NotWeaklySchreier { g: Elem },
    #[error("extensions are over different {0}")]
    Incomparable(&'static str),
}

impl ExtensionError {
    pub fn is_format(&self) -> bool {
        matches!(
            self,
            ExtensionError::Format { .. } | ExtensionError::NotComposable(_) | ExtensionError::Incomparable(_)
        )
    }
}

fn hom(map: MapName, source: &FiniteMonoid, target: &FiniteMonoid, values: &[Elem]) -> Result<MonoidHom, ExtensionError> {
    check_hom(source, target, values).map_err(|err| {
        if err.is_format() {
            ExtensionError::Format { map, source: err }
        } else {
            ExtensionError::NotHom { map, source: err }
        }
    })
}

/// Check every split-extension law, returning the first failure.
pub fn verify_split_extension(c: &ExtensionCandidate) -> Result<SplitExtension, ExtensionError> {
    let k = hom(MapName::K, &c.n, &c.g, &c.k)?;
    let e = hom(MapName::E, &c.g, &c.h, &c.e)?;
    let s = hom(MapName::S, &c.h, &c.g, &c.s)?;
    SplitExtension::from_homs(k, e, s)
}

impl SplitExtension {
    pub fn from_homs(k: MonoidHom, e: MonoidHom, s: MonoidHom) -> Result<Self, ExtensionError> {
        if k.target() != e.source() {
            return Err(ExtensionError::NotComposable("k does not land in the source of e"));
        }
        if s.target() != e.source() || s.source() != e.target() {
            return Err(ExtensionError::NotComposable("s does not run from H to G"));
        }

        let (g, h) = (e.source(), e.target());
        if let Some(hh) = h.elements().find(|&x| e.apply(s.apply(x)) != x) {
            return Err(ExtensionError::NotSection { h: hh, image: e.apply(s.apply(hh)) });
        }
        if let Some(n) = k.source().elements().find(|&n| e.apply(k.apply(n)) != h.identity()) {
            return Err(ExtensionError::NotZero { n });
        }
        if let Some(x) = g.elements().find(|&x| e.apply(x) == h.identity() && !k.map().contains(&x)) {
            return Err(ExtensionError::KernelTooSmall { g: x });
        }
        for (a, b) in k.source().elements().tuple_combinations() {
            if k.apply(a) == k.apply(b) {
                return Err(ExtensionError::NotInjective { a, b });
            }
        }
        if let Some(failure) = cokernel_failure(&k, &e) {
            return Err(ExtensionError::NotCokernel(failure));
        }
        Ok(SplitExtension { k, e, s })
    }

    pub fn n(&self) -> &FiniteMonoid {
        self.k.source()
    }

    pub fn g(&self) -> &FiniteMonoid {
        self.e.source()
    }

    pub fn h(&self) -> &FiniteMonoid {
        self.e.target()
    }

    pub fn k(&self) -> &MonoidHom {
        &self.k
    }

    pub fn e(&self) -> &MonoidHom {
        &self.e
    }

    pub fn s(&self) -> &MonoidHom {
        &self.s
    }

    /// `k(n) s(h)`
    #[inline]
    pub fn combine(&self, n: Elem, h: Elem) -> Elem {
        self.g().mul(self.k.apply(n), self.s.apply(h))
    }

    /// For every `g`, the `n` with `k(n) s(e(g)) = g`, in index order.
    pub fn retraction_choices(&self) -> Vec<Vec<Elem>> {
        self.g()
            .elements()
            .map(|g| {
                let h = self.e.apply(g);
                self.n().elements().filter(|&n| self.combine(n, h) == g).collect()
            })
            .collect()
    }

    pub fn is_weakly_schreier(&self) -> bool {
        self.retraction_choices().iter().all(|c| !c.is_empty())
    }

    /// Schreier in the strict sense: the `n` is unique for every `g`.
    pub fn is_schreier(&self) -> bool {
        self.retraction_choices().iter().all(|c| c.len() == 1)
    }
}

/// A function `q: G -> N` with `k(q(g)) s(e(g)) = g`. Need not be a
/// homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchreierRetraction {
    q: Vec<Elem>,
}

impl SchreierRetraction {
    pub fn new(ext: &SplitExtension, q: Vec<Elem>) -> Result<Self, ExtensionError> {
        if q.len() != ext.g().size() {
            return Err(ExtensionError::NotComposable("retraction length differs from |G|"));
        }
        for g in ext.g().elements() {
            if q[g] >= ext.n().size() || ext.combine(q[g], ext.e().apply(g)) != g {
                return Err(ExtensionError::NotWeaklySchreier { g });
            }
        }
        Ok(SchreierRetraction { q })
    }

    #[inline]
    pub fn apply(&self, g: Elem) -> Elem {
        self.q[g]
    }

    pub fn map(&self) -> &[Elem] {
        &self.q
    }
}

/// The retraction choosing the least valid `n` for each `g`, or the first
/// `g` admitting none.
pub fn find_retraction(ext: &SplitExtension) -> Result<SchreierRetraction, ExtensionError> {
    let q = ext
        .retraction_choices()
        .into_iter()
        .enumerate()
        .map(|(g, choices)| choices.first().copied().ok_or(ExtensionError::NotWeaklySchreier { g }))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SchreierRetraction { q })
}

/// Every valid retraction, in lexicographic order.
pub fn all_retractions(ext: &SplitExtension) -> Vec<SchreierRetraction> {
    let choices = ext.retraction_choices();
    if choices.iter().any(|c| c.is_empty()) {
        return Vec::new();
    }
    choices
        .into_iter()
        .multi_cartesian_product()
        .map(|q| SchreierRetraction { q })
        .collect()
}

fn same_base(a: &SplitExtension, b: &SplitExtension) -> Result<(), ExtensionError> {
    if a.n() != b.n() {
        return Err(ExtensionError::Incomparable("kernels N"));
    }
    if a.h() != b.h() {
        return Err(ExtensionError::Incomparable("quotients H"));
    }
    Ok(())
}

/// The unique morphism `G_a -> G_b` commuting with `k`, `e` and `s`, if
/// there is one.
///
/// A morphism must send `k_a(n) s_a(h)` to `k_b(n) s_b(h)`; the candidate is
/// built from a retraction of `a` and then checked against every pair
/// `(n, h)` and the homomorphism laws.
pub fn extension_morphism(a: &SplitExtension, b: &SplitExtension) -> Result<Option<MonoidHom>, ExtensionError> {
    same_base(a, b)?;
    let qa = find_retraction(a)?;
    find_retraction(b)?;
    let map: Vec<Elem> = a.g().elements().map(|g| b.combine(qa.apply(g), a.e().apply(g))).collect();
    for n in a.n().elements() {
        for h in a.h().elements() {
            if map[a.combine(n, h)] != b.combine(n, h) {
                return Ok(None);
            }
        }
    }
    let Ok(f) = check_hom(a.g(), b.g(), &map) else {
        return Ok(None);
    };
    let squares = a.n().elements().all(|n| f.apply(a.k().apply(n)) == b.k().apply(n))
        && a.h().elements().all(|h| f.apply(a.s().apply(h)) == b.s().apply(h))
        && a.g().elements().all(|g| b.e().apply(f.apply(g)) == a.e().apply(g));
    Ok(squares.then_some(f))
}

/// Morphisms exist both ways.
pub fn extensions_equivalent(a: &SplitExtension, b: &SplitExtension) -> Result<bool, ExtensionError> {
    Ok(extension_morphism(a, b)?.is_some() && extension_morphism(b, a)?.is_some())
}
