//! The built-in lattice catalog.

use crate::lattice::FiniteLattice;

pub fn chain(n: usize) -> FiniteLattice {
    FiniteLattice::chain(n)
}

/// `2^2`.
pub fn diamond() -> FiniteLattice {
    FiniteLattice::from_covers(
        "diamond",
        &["0", "a", "b", "1"],
        &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
    )
    .expect("diamond")
}

/// `2^3`, elements named by their atoms.
pub fn b3() -> FiniteLattice {
    FiniteLattice::from_covers(
        "B3",
        &["0", "a", "b", "c", "ab", "ac", "bc", "1"],
        &[
            ("0", "a"),
            ("0", "b"),
            ("0", "c"),
            ("a", "ab"),
            ("a", "ac"),
            ("b", "ab"),
            ("b", "bc"),
            ("c", "ac"),
            ("c", "bc"),
            ("ab", "1"),
            ("ac", "1"),
            ("bc", "1"),
        ],
    )
    .expect("B3")
}

pub fn m5() -> FiniteLattice {
    FiniteLattice::from_covers(
        "M5",
        &["0", "a", "b", "c", "1"],
        &[
            ("0", "a"),
            ("0", "b"),
            ("0", "c"),
            ("a", "1"),
            ("b", "1"),
            ("c", "1"),
        ],
    )
    .expect("M5")
}

/// `0 < a < c < 1` with `b` on the side.
pub fn n5() -> FiniteLattice {
    FiniteLattice::from_covers(
        "N5",
        &["0", "a", "b", "c", "1"],
        &[("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")],
    )
    .expect("N5")
}

/// `M5` with the atom `c` replaced by the chain `c1 < c2`.
pub fn m5_arm() -> FiniteLattice {
    FiniteLattice::from_covers(
        "M5arm",
        &["0", "a", "b", "c1", "c2", "1"],
        &[
            ("0", "a"),
            ("0", "b"),
            ("0", "c1"),
            ("c1", "c2"),
            ("a", "1"),
            ("b", "1"),
            ("c2", "1"),
        ],
    )
    .expect("M5arm")
}

/// Two 2-chains between a common bottom and top.
pub fn hexagon() -> FiniteLattice {
    FiniteLattice::from_covers(
        "hexagon",
        &["0", "a1", "a2", "b1", "b2", "1"],
        &[
            ("0", "a1"),
            ("a1", "a2"),
            ("a2", "1"),
            ("0", "b1"),
            ("b1", "b2"),
            ("b2", "1"),
        ],
    )
    .expect("hexagon")
}

fn product(a: &FiniteLattice, b: &FiniteLattice) -> FiniteLattice {
    a.product(b).expect("catalog products stay small")
}

/// Every catalog lattice, in a fixed order.
pub fn catalog() -> Vec<FiniteLattice> {
    let mut out: Vec<FiniteLattice> = (1..=5).map(chain).collect();
    out.extend([diamond(), b3(), m5(), n5(), m5_arm(), hexagon()]);
    out.push(product(&chain(2), &chain(3)));
    out.push(product(&chain(3), &chain(3)));
    out.push(product(&chain(2), &m5()));
    out.push(product(&chain(2), &n5()));
    out
}

/// Catalog lookup by lattice name.
pub fn by_name(name: &str) -> Option<FiniteLattice> {
    catalog().into_iter().find(|l| l.name() == name)
}
