//! Small named monoids used throughout the examples and tests.

use crate::monoid::FiniteMonoid;

/// One-element monoid.
pub fn t1() -> FiniteMonoid {
    FiniteMonoid::trivial().with_labels(["1"]).unwrap()
}

/// Cyclic group `{1, g}`.
pub fn c2() -> FiniteMonoid {
    FiniteMonoid::cyclic(2).with_labels(["1", "g"]).unwrap()
}

/// Two-element chain `{1, 0}` under meet.
pub fn sl2() -> FiniteMonoid {
    FiniteMonoid::chain(2).with_labels(["1", "0"]).unwrap()
}

/// Three-element chain `{1, a, 0}` under meet.
pub fn sl3() -> FiniteMonoid {
    FiniteMonoid::chain(3).with_labels(["1", "a", "0"]).unwrap()
}

/// `{1, a, b}` with `x * y = y` for `x, y` in `{a, b}`.
pub fn r2() -> FiniteMonoid {
    FiniteMonoid::from_fn(3, 0, |x, y| if x == 0 { y } else if y == 0 { x } else { y })
        .unwrap()
        .with_labels(["1", "a", "b"])
        .unwrap()
        .with_name("R2")
}

/// The diamond lattice M3 as a meet-monoid: top 1, atoms x y z, bottom 0.
pub fn diamond() -> FiniteMonoid {
    FiniteMonoid::from_fn(5, 0, |x, y| match (x, y) {
        (0, y) => y,
        (x, 0) => x,
        (x, y) if x == y => x,
        _ => 4,
    })
    .unwrap()
    .with_labels(["1", "x", "y", "z", "0"])
    .unwrap()
    .with_name("M3")
}

/// The four-element Boolean lattice `{1, p, q, 0}` under meet.
pub fn boolean4() -> FiniteMonoid {
    FiniteMonoid::from_fn(4, 0, |x, y| match (x, y) {
        (0, y) => y,
        (x, 0) => x,
        (x, y) if x == y => x,
        _ => 3,
    })
    .unwrap()
    .with_labels(["1", "p", "q", "0"])
    .unwrap()
    .with_name("B2")
}
