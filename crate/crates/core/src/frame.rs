//! Finite frames, i.e. finite distributive lattices, viewed as meet-monoids,
//! and Artin glueings along meet-preserving maps.

use thiserror::Error;

use crate::extension::{verify_split_extension, ExtensionCandidate, SplitExtension};
use crate::lambda::{artin_like_action, lambda_product};
use crate::monoid::{check_hom, homomorphisms, inverse_structure, Elem, FiniteMonoid, HomError, InverseStructure, MonoidHom};

/// A finite frame. The order is `a ≤ b ⇔ ab = a`, the identity is the top,
/// joins and the bottom are derived.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteFrame {
    base: FiniteMonoid,
    join: Vec<Elem>,
    bottom: Elem,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum FrameViolation {
    #[error("meet is not commutative at ({0},{1})")]
    NotCommutative(Elem, Elem),
    #[error("{0} is not idempotent")]
    NotIdempotent(Elem),
    #[error("{0} and {1} have no least upper bound")]
    NoJoin(Elem, Elem),
    #[error("no bottom element")]
    NoBottom,
    #[error("distributivity fails: {a}∧({b}∨{c}) ≠ ({a}∧{b})∨({a}∧{c})")]
    NotDistributive { a: Elem, b: Elem, c: Elem },
}

/// Check that a monoid is a frame under its multiplication as meet.
pub fn check_frame(m: &FiniteMonoid) -> Result<FiniteFrame, FrameViolation> {
    for a in m.elements() {
        if !m.is_idempotent(a) {
            return Err(FrameViolation::NotIdempotent(a));
        }
        for b in m.elements().filter(|&b| b > a) {
            if m.mul(a, b) != m.mul(b, a) {
                return Err(FrameViolation::NotCommutative(a, b));
            }
        }
    }
    let leq = |a: Elem, b: Elem| m.mul(a, b) == a;
    let n = m.size();
    let mut join = vec![0; n * n];
    for a in m.elements() {
        for b in m.elements() {
            let upper: Vec<Elem> = m.elements().filter(|&c| leq(a, c) && leq(b, c)).collect();
            let least = upper.iter().copied().find(|&c| upper.iter().all(|&u| leq(c, u)));
            join[a * n + b] = least.ok_or(FrameViolation::NoJoin(a, b))?;
        }
    }
    let bottom = m.elements().find(|&z| m.elements().all(|a| leq(z, a))).ok_or(FrameViolation::NoBottom)?;
    for a in m.elements() {
        for b in m.elements() {
            for c in m.elements() {
                let lhs = m.mul(a, join[b * n + c]);
                let rhs = join[m.mul(a, b) * n + m.mul(a, c)];
                if lhs != rhs {
                    return Err(FrameViolation::NotDistributive { a, b, c });
                }
            }
        }
    }
    Ok(FiniteFrame { base: m.clone(), join, bottom })
}

impl FiniteFrame {
    pub fn base(&self) -> &FiniteMonoid {
        &self.base
    }

    pub fn size(&self) -> usize {
        self.base.size()
    }

    pub fn top(&self) -> Elem {
        self.base.identity()
    }

    pub fn bottom(&self) -> Elem {
        self.bottom
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        self.base.mul(a, b)
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        self.join[a * self.size() + b]
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        self.meet(a, b) == a
    }

    /// Every element is its own inverse.
    pub fn inverse_structure(&self) -> InverseStructure {
        inverse_structure(&self.base).expect("semilattices are inverse monoids")
    }
}

/// A map between frames preserving finite meets, top included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeetHom {
    source: FiniteFrame,
    target: FiniteFrame,
    hom: MonoidHom,
}

impl MeetHom {
    pub fn new(source: &FiniteFrame, target: &FiniteFrame, map: &[Elem]) -> Result<Self, HomError> {
        let hom = check_hom(source.base(), target.base(), map)?;
        Ok(MeetHom { source: source.clone(), target: target.clone(), hom })
    }

    /// The map sending everything to the top.
    pub fn constant_top(source: &FiniteFrame, target: &FiniteFrame) -> Self {
        MeetHom { source: source.clone(), target: target.clone(), hom: MonoidHom::zero(source.base(), target.base()) }
    }

    /// Every meet-preserving map `source -> target`.
    pub fn all(source: &FiniteFrame, target: &FiniteFrame) -> Vec<MeetHom> {
        homomorphisms(source.base(), target.base())
            .into_iter()
            .map(|hom| MeetHom { source: source.clone(), target: target.clone(), hom })
            .collect()
    }

    pub fn source(&self) -> &FiniteFrame {
        &self.source
    }

    pub fn target(&self) -> &FiniteFrame {
        &self.target
    }

    pub fn hom(&self) -> &MonoidHom {
        &self.hom
    }

    pub fn apply(&self, h: Elem) -> Elem {
        self.hom.apply(h)
    }

    /// Pointwise order `self ≤ other`.
    pub fn pointwise_leq(&self, other: &MeetHom) -> bool {
        self.source.base().elements().all(|h| self.target.leq(self.apply(h), other.apply(h)))
    }
}

/// The glueing `Gl(f)` of `f: H -> N`: the frame of pairs `(n, h)` with
/// `n ≤ f(h)`, ordered by `h` then `n`, with its split extension
/// `k(n) = (n, 1)`, `e(n, h) = h`, `s(h) = (f(h), h)`.
#[derive(Clone, Debug)]
pub struct Glueing {
    pub frame: FiniteFrame,
    pub carrier: Vec<(Elem, Elem)>,
    pub extension: SplitExtension,
}

pub fn artin_glueing(f: &MeetHom) -> Glueing {
    let (h, n) = (&f.source, &f.target);
    let carrier: Vec<(Elem, Elem)> = h
        .base
        .elements()
        .flat_map(|y| n.base.elements().filter(move |&x| n.leq(x, f.apply(y))).map(move |x| (x, y)))
        .collect();
    let index = |p: (Elem, Elem)| carrier.iter().position(|&q| q == p).expect("pair lies in the glueing");
    let rows: Vec<Vec<Elem>> = carrier
        .iter()
        .map(|&(x1, y1)| carrier.iter().map(|&(x2, y2)| index((n.meet(x1, x2), h.meet(y1, y2)))).collect())
        .collect();
    let monoid = crate::monoid::check_monoid(index((n.top(), h.top())), &rows)
        .expect("componentwise meet on a glueing is a monoid")
        .with_labels(carrier.iter().map(|&(x, y)| format!("({},{})", n.base.label(x), h.base.label(y))))
        .expect("one label per pair");
    let frame = check_frame(&monoid).expect("glueings of frames are frames");
    let candidate = ExtensionCandidate {
        n: n.base.clone(),
        g: monoid,
        h: h.base.clone(),
        k: n.base.elements().map(|x| index((x, h.top()))).collect(),
        e: carrier.iter().map(|&(_, y)| y).collect(),
        s: h.base.elements().map(|y| index((f.apply(y), y))).collect(),
    };
    let extension = verify_split_extension(&candidate).expect("glueings are split extensions");
    Glueing { frame, carrier, extension }
}

/// Build `Gl(f)` and the λ-semidirect product of `α_f(h, n) = f(h) ∧ n` and
/// compare carriers, tables and the maps `k`, `e`, `s`.
pub fn glueing_equals_lambda(f: &MeetHom) -> bool {
    let gl = artin_glueing(f);
    let Ok(action) = artin_like_action(&f.target.inverse_structure(), &f.source.inverse_structure(), &f.hom) else {
        return false;
    };
    let Ok(lp) = lambda_product(&action) else {
        return false;
    };
    let (a, b) = (&gl.extension, lp.extension());
    gl.carrier == lp.carrier()
        && a.g() == b.g()
        && a.k().map() == b.k().map()
        && a.e().map() == b.e().map()
        && a.s().map() == b.s().map()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("maps have different source or target frames")]
pub struct JoinMismatch;

/// `h ↦ f(h) ∧ g(h)`.
pub fn glueing_join(f: &MeetHom, g: &MeetHom) -> Result<MeetHom, JoinMismatch> {
    if f.source != g.source || f.target != g.target {
        return Err(JoinMismatch);
    }
    let map: Vec<Elem> = f.source.base.elements().map(|h| f.target.meet(f.apply(h), g.apply(h))).collect();
    Ok(MeetHom::new(&f.source, &f.target, &map).expect("pointwise meet of meet-homs preserves meets"))
}
