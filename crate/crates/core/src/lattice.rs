//! Finite lattices over an indexed carrier, their ideals, filters and prime
//! ideals, homomorphisms, and distributivity detection.

use std::fmt;

use thiserror::Error;

use crate::bits::{Bits, ElemSet, MAX_CARRIER};

/// Which bound of a pair was missing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bound {
    Meet,
    Join,
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Meet => f.write_str("greatest lower bound"),
            Bound::Join => f.write_str("least upper bound"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    Meet,
    Join,
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Op::Meet => f.write_str("meet"),
            Op::Join => f.write_str("join"),
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("a lattice needs at least one element")]
    Empty,
    #[error("{0} elements exceed the carrier limit of 64")]
    TooLarge(usize),
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("element index {0} out of range")]
    BadIndex(usize),
    #[error("cover relation is cyclic through `{0}`")]
    CyclicCovers(String),
    #[error("order relation is not {0}")]
    NotAnOrder(&'static str),
    #[error("`{x}` and `{y}` have no {bound}")]
    NotALattice { x: String, y: String, bound: Bound },
    #[error("generator set is empty")]
    EmptyGeneratorSet,
    #[error("map is not total: `{0}` has no image")]
    MissingMapping(String),
    #[error("not a homomorphism: {op} of `{x}` and `{y}` is not preserved")]
    NotAHom { x: String, y: String, op: Op },
}

/// A finite lattice on the carrier `0..n` with a display name per element.
///
/// Construction validates every lattice axiom; the meet and join tables are
/// derived from the order, never trusted from input.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteLattice {
    name: String,
    names: Vec<String>,
    up: Vec<Bits>,
    down: Vec<Bits>,
    meet: Vec<usize>,
    join: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl fmt::Debug for FiniteLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteLattice")
            .field("name", &self.name)
            .field("elements", &self.names)
            .field("covers", &self.covers_named())
            .finish()
    }
}

/// Down-closed, join-closed, nonempty subset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ideal(pub ElemSet);

/// Up-closed, meet-closed, nonempty subset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Filter(pub ElemSet);

/// An ideal whose complement is a filter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimeIdeal(pub Ideal);

impl Ideal {
    pub fn set(self) -> ElemSet {
        self.0
    }
}

impl Filter {
    pub fn set(self) -> ElemSet {
        self.0
    }
}

impl PrimeIdeal {
    pub fn set(self) -> ElemSet {
        self.0 .0
    }
}

impl FiniteLattice {
    /// Builds a lattice from element names and cover pairs `(lower, upper)`.
    pub fn build(
        name: impl Into<String>,
        names: Vec<String>,
        covers: &[(usize, usize)],
    ) -> Result<Self, LatticeError> {
        let n = names.len();
        check_carrier(&names)?;
        let mut up: Vec<Bits> = (0..n).map(Bits::singleton).collect();
        for &(lo, hi) in covers {
            if lo >= n {
                return Err(LatticeError::BadIndex(lo));
            }
            if hi >= n {
                return Err(LatticeError::BadIndex(hi));
            }
            up[lo].insert(hi);
        }
        // Warshall closure.
        for k in 0..n {
            for x in 0..n {
                if up[x].contains(k) {
                    let uk = up[k];
                    up[x] |= uk;
                }
            }
        }
        for x in 0..n {
            for y in up[x].iter() {
                if y != x && up[y].contains(x) {
                    return Err(LatticeError::CyclicCovers(names[x].clone()));
                }
            }
        }
        Self::from_up_sets(name, names, up)
    }

    /// Builds a lattice from a full order relation, `up[x] = {y : x <= y}`.
    pub fn from_up_sets(
        name: impl Into<String>,
        names: Vec<String>,
        up: Vec<Bits>,
    ) -> Result<Self, LatticeError> {
        let n = names.len();
        check_carrier(&names)?;
        if up.len() != n {
            return Err(LatticeError::BadIndex(up.len()));
        }
        let full = Bits::full(n);
        let mut down = vec![Bits::EMPTY; n];
        for (x, ux) in up.iter().enumerate() {
            if !ux.is_subset(full) {
                return Err(LatticeError::BadIndex(n));
            }
            if !ux.contains(x) {
                return Err(LatticeError::NotAnOrder("reflexive"));
            }
            for y in ux.iter() {
                down[y].insert(x);
            }
        }
        for x in 0..n {
            for y in up[x].iter() {
                if y != x && up[y].contains(x) {
                    return Err(LatticeError::NotAnOrder("antisymmetric"));
                }
                if !up[y].is_subset(up[x]) {
                    return Err(LatticeError::NotAnOrder("transitive"));
                }
            }
        }
        let mut meet = vec![0; n * n];
        let mut join = vec![0; n * n];
        for x in 0..n {
            for y in x..n {
                let m = greatest_in(&down, down[x] & down[y]).ok_or_else(|| {
                    LatticeError::NotALattice {
                        x: names[x].clone(),
                        y: names[y].clone(),
                        bound: Bound::Meet,
                    }
                })?;
                let j =
                    greatest_in(&up, up[x] & up[y]).ok_or_else(|| LatticeError::NotALattice {
                        x: names[x].clone(),
                        y: names[y].clone(),
                        bound: Bound::Join,
                    })?;
                meet[x * n + y] = m;
                meet[y * n + x] = m;
                join[x * n + y] = j;
                join[y * n + x] = j;
            }
        }
        let bottom = (0..n)
            .find(|&x| up[x] == full)
            .expect("finite lattice has a bottom");
        let top = (0..n)
            .find(|&x| down[x] == full)
            .expect("finite lattice has a top");
        Ok(FiniteLattice {
            name: name.into(),
            names,
            up,
            down,
            meet,
            join,
            bottom,
            top,
        })
    }

    /// Convenience constructor from string names and named cover pairs.
    pub fn from_covers(
        name: &str,
        elems: &[&str],
        covers: &[(&str, &str)],
    ) -> Result<Self, LatticeError> {
        let names: Vec<String> = elems.iter().map(|s| s.to_string()).collect();
        let idx = |s: &str| {
            names
                .iter()
                .position(|n| n == s)
                .ok_or_else(|| LatticeError::MissingMapping(s.to_string()))
        };
        let pairs = covers
            .iter()
            .map(|(a, b)| Ok((idx(a)?, idx(b)?)))
            .collect::<Result<Vec<_>, LatticeError>>()?;
        Self::build(name, names, &pairs)
    }

    /// The chain `0 < 1 < .. < n-1`.
    pub fn chain(n: usize) -> Self {
        let names = (0..n).map(|i| i.to_string()).collect();
        let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::build(format!("chain{n}"), names, &covers).expect("chains are lattices")
    }

    /// Cartesian product with the componentwise order; element names are
    /// `x.y`.
    pub fn product(&self, other: &FiniteLattice) -> Result<Self, LatticeError> {
        let (n, m) = (self.len(), other.len());
        if n * m > MAX_CARRIER {
            return Err(LatticeError::TooLarge(n * m));
        }
        let names = (0..n * m)
            .map(|k| format!("{}.{}", self.names[k / m], other.names[k % m]))
            .collect();
        let up = (0..n * m)
            .map(|k| {
                let (a, b) = (k / m, k % m);
                (0..n * m)
                    .filter(|&l| self.leq(a, l / m) && other.leq(b, l % m))
                    .collect()
            })
            .collect();
        Self::from_up_sets(format!("{}x{}", self.name, other.name), names, up)
    }

    /// A copy whose meet table has the single entry `(x, y)` overwritten with
    /// `z`, bypassing validation. The result is generally not a lattice;
    /// [`FiniteLattice::axiom_violation`] reports the damage.
    pub fn with_corrupted_meet(&self, x: usize, y: usize, z: usize) -> Self {
        let mut out = self.clone();
        let n = self.len();
        out.meet[x * n + y] = z;
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn elem_name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn carrier(&self) -> ElemSet {
        Bits::full(self.len())
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    /// `{y : x <= y}`.
    #[inline]
    pub fn up_set(&self, x: usize) -> ElemSet {
        self.up[x]
    }

    /// `{y : y <= x}`.
    #[inline]
    pub fn down_set(&self, x: usize) -> ElemSet {
        self.down[x]
    }

    #[inline]
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.len() + y]
    }

    #[inline]
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len() + y]
    }

    /// Meet of a nonempty set.
    pub fn meet_all(&self, s: ElemSet) -> Option<usize> {
        let mut it = s.iter();
        let first = it.next()?;
        Some(it.fold(first, |acc, y| self.meet(acc, y)))
    }

    /// Join of a nonempty set.
    pub fn join_all(&self, s: ElemSet) -> Option<usize> {
        let mut it = s.iter();
        let first = it.next()?;
        Some(it.fold(first, |acc, y| self.join(acc, y)))
    }

    /// Union of the down-sets of the members of `s`.
    pub fn down_closure(&self, s: ElemSet) -> ElemSet {
        s.iter().fold(Bits::EMPTY, |acc, x| acc | self.down[x])
    }

    /// Union of the up-sets of the members of `s`.
    pub fn up_closure(&self, s: ElemSet) -> ElemSet {
        s.iter().fold(Bits::EMPTY, |acc, x| acc | self.up[x])
    }

    /// Cover pairs `(lower, upper)` of the Hasse diagram, sorted.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for x in 0..self.len() {
            for y in self.up[x].iter() {
                if y == x {
                    continue;
                }
                let between = (self.up[x] & self.down[y]) - Bits::singleton(x) - Bits::singleton(y);
                if between.is_empty() {
                    out.push((x, y));
                }
            }
        }
        out
    }

    fn covers_named(&self) -> Vec<(&str, &str)> {
        self.covers()
            .into_iter()
            .map(|(a, b)| (self.elem_name(a), self.elem_name(b)))
            .collect()
    }

    /// Renders a set of elements as `{a,b,c}`.
    pub fn set_name(&self, s: ElemSet) -> String {
        let parts: Vec<&str> = s.iter().map(|x| self.elem_name(x)).collect();
        format!("{{{}}}", parts.join(","))
    }

    // --- substructures -------------------------------------------------

    pub fn is_ideal(&self, s: ElemSet) -> bool {
        !s.is_empty()
            && self.down_closure(s) == s
            && s.iter()
                .all(|x| s.iter().all(|y| s.contains(self.join(x, y))))
    }

    pub fn is_filter(&self, s: ElemSet) -> bool {
        !s.is_empty()
            && self.up_closure(s) == s
            && s.iter()
                .all(|x| s.iter().all(|y| s.contains(self.meet(x, y))))
    }

    pub fn is_prime_ideal(&self, s: ElemSet) -> bool {
        self.is_ideal(s) && self.is_filter(s.complement(self.len()))
    }

    /// `(x] = {z : z <= x}`.
    pub fn principal_ideal(&self, x: usize) -> Ideal {
        Ideal(self.down[x])
    }

    /// `[x) = {z : x <= z}`.
    pub fn principal_filter(&self, x: usize) -> Filter {
        Filter(self.up[x])
    }

    /// Least ideal containing `s`: alternate down-closure and join-closure
    /// until nothing changes.
    pub fn generated_ideal(&self, s: ElemSet) -> Result<Ideal, LatticeError> {
        if s.is_empty() {
            return Err(LatticeError::EmptyGeneratorSet);
        }
        let mut cur = s;
        loop {
            let mut next = self.down_closure(cur);
            for x in next.iter() {
                for y in next.iter() {
                    next.insert(self.join(x, y));
                }
            }
            if next == cur {
                return Ok(Ideal(cur));
            }
            cur = next;
        }
    }

    /// Least filter containing `s`, dual to [`FiniteLattice::generated_ideal`].
    pub fn generated_filter(&self, s: ElemSet) -> Result<Filter, LatticeError> {
        if s.is_empty() {
            return Err(LatticeError::EmptyGeneratorSet);
        }
        let mut cur = s;
        loop {
            let mut next = self.up_closure(cur);
            for x in next.iter() {
                for y in next.iter() {
                    next.insert(self.meet(x, y));
                }
            }
            if next == cur {
                return Ok(Filter(cur));
            }
            cur = next;
        }
    }

    /// Every ideal, ordered by generator index. In a finite lattice an ideal
    /// contains the join of its members, so each one is principal.
    pub fn all_ideals(&self) -> Vec<Ideal> {
        (0..self.len()).map(|x| self.principal_ideal(x)).collect()
    }

    /// Every filter, ordered by generator index.
    pub fn all_filters(&self) -> Vec<Filter> {
        (0..self.len()).map(|x| self.principal_filter(x)).collect()
    }

    /// The prime ideals, i.e. the points of the classical spectrum.
    pub fn prime_ideals(&self) -> Vec<PrimeIdeal> {
        self.all_ideals()
            .into_iter()
            .filter(|i| self.is_filter(i.set().complement(self.len())))
            .map(PrimeIdeal)
            .collect()
    }

    // --- distributivity ------------------------------------------------

    /// Distributivity by the triple law, cross-checked against a search for
    /// an embedded `M5` or `N5` sublattice.
    pub fn distributivity(&self) -> Distributivity {
        let n = self.len();
        let mut violating_triple = None;
        'outer: for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let lhs = self.meet(x, self.join(y, z));
                    let rhs = self.join(self.meet(x, y), self.meet(x, z));
                    if lhs != rhs {
                        violating_triple = Some([x, y, z]);
                        break 'outer;
                    }
                }
            }
        }
        Distributivity {
            violating_triple,
            forbidden_sublattice: self.find_m5().or_else(|| self.find_n5()),
        }
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity().is_distributive()
    }

    /// Three pairwise-distinct elements with a common pairwise meet and a
    /// common pairwise join, both outside the triple.
    fn find_m5(&self) -> Option<ForbiddenSublattice> {
        let n = self.len();
        for a in 0..n {
            for b in a + 1..n {
                let (o, i) = (self.meet(a, b), self.join(a, b));
                if o == a || o == b || i == a || i == b {
                    continue;
                }
                for c in b + 1..n {
                    if c == o || c == i {
                        continue;
                    }
                    if self.meet(a, c) == o
                        && self.meet(b, c) == o
                        && self.join(a, c) == i
                        && self.join(b, c) == i
                    {
                        return Some(ForbiddenSublattice {
                            kind: SublatticeKind::M5,
                            elements: [o, a, b, c, i],
                        });
                    }
                }
            }
        }
        None
    }

    /// `a < c` and `b` a complement of both with the same meet and join.
    fn find_n5(&self) -> Option<ForbiddenSublattice> {
        let n = self.len();
        for a in 0..n {
            for c in self.up[a].iter() {
                if c == a {
                    continue;
                }
                for b in 0..n {
                    let (o, i) = (self.meet(a, b), self.join(a, b));
                    if self.meet(c, b) != o || self.join(c, b) != i {
                        continue;
                    }
                    let five = [o, a, b, c, i];
                    if Bits::from_indices(five).len() == 5 {
                        return Some(ForbiddenSublattice {
                            kind: SublatticeKind::N5,
                            elements: five,
                        });
                    }
                }
            }
        }
        None
    }

    // --- axioms --------------------------------------------------------

    /// Re-checks the stored meet and join tables against the order and the
    /// lattice identities. `None` for every validly constructed lattice.
    pub fn axiom_violation(&self) -> Option<AxiomViolation> {
        let n = self.len();
        let nm = |x: usize| {
            self.names
                .get(x)
                .map(String::as_str)
                .unwrap_or("?")
                .to_string()
        };
        let bad = |law: &'static str, els: &[usize]| {
            Some(AxiomViolation {
                law,
                elements: els.iter().map(|&e| nm(e)).collect(),
            })
        };
        if self.meet.iter().chain(&self.join).any(|&v| v >= n) {
            return bad("table entries in carrier", &[]);
        }
        for x in 0..n {
            if self.meet(x, x) != x || self.join(x, x) != x {
                return bad("idempotence", &[x]);
            }
            for y in 0..n {
                if self.meet(x, y) != self.meet(y, x) {
                    return bad("meet commutativity", &[x, y]);
                }
                if self.join(x, y) != self.join(y, x) {
                    return bad("join commutativity", &[x, y]);
                }
                if self.leq(x, y) != (self.meet(x, y) == x) {
                    return bad("order agrees with meet", &[x, y]);
                }
                if self.leq(x, y) != (self.join(x, y) == y) {
                    return bad("order agrees with join", &[x, y]);
                }
                if self.meet(x, self.join(x, y)) != x || self.join(x, self.meet(x, y)) != x {
                    return bad("absorption", &[x, y]);
                }
                for z in 0..n {
                    if self.meet(self.meet(x, y), z) != self.meet(x, self.meet(y, z)) {
                        return bad("meet associativity", &[x, y, z]);
                    }
                    if self.join(self.join(x, y), z) != self.join(x, self.join(y, z)) {
                        return bad("join associativity", &[x, y, z]);
                    }
                }
            }
        }
        None
    }
}

fn check_carrier(names: &[String]) -> Result<(), LatticeError> {
    if names.is_empty() {
        return Err(LatticeError::Empty);
    }
    if names.len() > MAX_CARRIER {
        return Err(LatticeError::TooLarge(names.len()));
    }
    for (i, a) in names.iter().enumerate() {
        if names[..i].contains(a) {
            return Err(LatticeError::DuplicateName(a.clone()));
        }
    }
    Ok(())
}

/// The member `g` of `cands` whose `rel` set contains all of `cands`, if any.
/// With `rel = down` that is the greatest element; with `rel = up` the least.
fn greatest_in(rel: &[Bits], cands: Bits) -> Option<usize> {
    cands.iter().find(|&g| cands.is_subset(rel[g]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SublatticeKind {
    M5,
    N5,
}

impl fmt::Display for SublatticeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SublatticeKind::M5 => f.write_str("M5"),
            SublatticeKind::N5 => f.write_str("N5"),
        }
    }
}

/// An embedded copy of `M5` or `N5`, listed as `[bottom, a, b, c, top]`.
/// For `N5` the chain is `a < c` and `b` is the lone side element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ForbiddenSublattice {
    pub kind: SublatticeKind,
    pub elements: [usize; 5],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Distributivity {
    pub violating_triple: Option<[usize; 3]>,
    pub forbidden_sublattice: Option<ForbiddenSublattice>,
}

impl Distributivity {
    pub fn is_distributive(&self) -> bool {
        self.violating_triple.is_none()
    }

    /// Triple law and sublattice search reach the same verdict.
    pub fn detectors_agree(&self) -> bool {
        self.violating_triple.is_none() == self.forbidden_sublattice.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomViolation {
    pub law: &'static str,
    pub elements: Vec<String>,
}

impl fmt::Display for AxiomViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at ({})", self.law, self.elements.join(", "))
    }
}

// --- homomorphisms -------------------------------------------------------

/// A verified lattice homomorphism `source -> target`.
#[derive(Clone, Debug)]
pub struct LatticeHom<'a> {
    source: &'a FiniteLattice,
    target: &'a FiniteLattice,
    map: Vec<usize>,
}

impl PartialEq for LatticeHom<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.source, other.source)
            && std::ptr::eq(self.target, other.target)
            && self.map == other.map
    }
}

impl<'a> LatticeHom<'a> {
    /// Validates that `map` preserves meet and join on every pair.
    pub fn new(
        source: &'a FiniteLattice,
        target: &'a FiniteLattice,
        map: Vec<usize>,
    ) -> Result<Self, LatticeError> {
        if map.len() < source.len() {
            return Err(LatticeError::MissingMapping(
                source.elem_name(map.len()).to_string(),
            ));
        }
        if map.len() > source.len() {
            return Err(LatticeError::BadIndex(map.len()));
        }
        if let Some(&bad) = map.iter().find(|&&v| v >= target.len()) {
            return Err(LatticeError::BadIndex(bad));
        }
        if let Some((x, y, op)) = hom_violation(source, target, &map) {
            return Err(LatticeError::NotAHom {
                x: source.elem_name(x).to_string(),
                y: source.elem_name(y).to_string(),
                op,
            });
        }
        Ok(LatticeHom {
            source,
            target,
            map,
        })
    }

    pub fn identity(l: &'a FiniteLattice) -> Self {
        LatticeHom {
            source: l,
            target: l,
            map: (0..l.len()).collect(),
        }
    }

    pub fn source(&self) -> &'a FiniteLattice {
        self.source
    }

    pub fn target(&self) -> &'a FiniteLattice {
        self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `f^{-1}(s)` as a subset of the source.
    pub fn preimage(&self, s: ElemSet) -> ElemSet {
        (0..self.map.len())
            .filter(|&x| s.contains(self.map[x]))
            .collect()
    }

    /// `then ∘ self`. `None` when the lattices do not line up.
    pub fn then(&self, then: &LatticeHom<'a>) -> Option<LatticeHom<'a>> {
        if !std::ptr::eq(self.target, then.source) {
            return None;
        }
        Some(LatticeHom {
            source: self.source,
            target: then.target,
            map: self.map.iter().map(|&y| then.map[y]).collect(),
        })
    }

    pub fn is_injective(&self) -> bool {
        Bits::from_indices(self.map.iter().copied()).len() == self.map.len()
    }

    /// `x -> f(x)` with element names.
    pub fn describe(&self) -> String {
        let parts: Vec<String> = (0..self.map.len())
            .map(|x| {
                format!(
                    "{}->{}",
                    self.source.elem_name(x),
                    self.target.elem_name(self.map[x])
                )
            })
            .collect();
        parts.join(" ")
    }
}

/// First pair whose meet or join is not preserved.
pub fn hom_violation(
    source: &FiniteLattice,
    target: &FiniteLattice,
    map: &[usize],
) -> Option<(usize, usize, Op)> {
    for x in 0..source.len() {
        for y in x..source.len() {
            if map[source.meet(x, y)] != target.meet(map[x], map[y]) {
                return Some((x, y, Op::Meet));
            }
            if map[source.join(x, y)] != target.join(map[x], map[y]) {
                return Some((x, y, Op::Join));
            }
        }
    }
    None
}

/// Every homomorphism `source -> target`, in lexicographic order of the map.
pub fn all_homs<'a>(source: &'a FiniteLattice, target: &'a FiniteLattice) -> Vec<LatticeHom<'a>> {
    let n = source.len();
    let mut out = Vec::new();
    let mut map = vec![0usize; n];
    fn extend(
        k: usize,
        map: &mut Vec<usize>,
        s: &FiniteLattice,
        t: &FiniteLattice,
        out: &mut Vec<Vec<usize>>,
    ) {
        if k == s.len() {
            out.push(map.clone());
            return;
        }
        'cand: for v in 0..t.len() {
            map[k] = v;
            // Only pairs whose meet and join are already assigned can be
            // checked; the rest are caught once the result is complete.
            for x in 0..=k {
                let (m, j) = (s.meet(x, k), s.join(x, k));
                if m <= k && map[m] != t.meet(map[x], v) {
                    continue 'cand;
                }
                if j <= k && map[j] != t.join(map[x], v) {
                    continue 'cand;
                }
            }
            extend(k + 1, map, s, t, out);
        }
    }
    let mut raw = Vec::new();
    extend(0, &mut map, source, target, &mut raw);
    for m in raw {
        if hom_violation(source, target, &m).is_none() {
            out.push(LatticeHom {
                source,
                target,
                map: m,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m5() -> FiniteLattice {
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
        .unwrap()
    }

    fn n5() -> FiniteLattice {
        FiniteLattice::from_covers(
            "N5",
            &["0", "a", "b", "c", "1"],
            &[("0", "a"), ("a", "c"), ("c", "1"), ("0", "b"), ("b", "1")],
        )
        .unwrap()
    }

    fn diamond() -> FiniteLattice {
        FiniteLattice::from_covers(
            "2x2",
            &["0", "a", "b", "1"],
            &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")],
        )
        .unwrap()
    }

    fn set(l: &FiniteLattice, els: &[&str]) -> ElemSet {
        els.iter().map(|e| l.index_of(e).unwrap()).collect()
    }

    /// Every subset of the carrier passing `pred`, by direct scan.
    fn scan(l: &FiniteLattice, pred: impl Fn(ElemSet) -> bool) -> Vec<ElemSet> {
        l.carrier().subsets().filter(|&s| pred(s)).collect()
    }

    /// Brute-force ideal test straight from the definition.
    fn oracle_is_ideal(l: &FiniteLattice, s: ElemSet) -> bool {
        if s.is_empty() {
            return false;
        }
        for x in s.iter() {
            for z in 0..l.len() {
                if l.leq(z, x) && !s.contains(z) {
                    return false;
                }
            }
            for y in s.iter() {
                if !s.contains(l.join(x, y)) {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn chain2_bounds_and_tables() {
        let c = FiniteLattice::chain(2);
        assert_eq!((c.bottom(), c.top()), (0, 1));
        assert_eq!(c.meet(0, 1), 0);
        assert_eq!(c.join(0, 1), 1);
        assert!(c.axiom_violation().is_none());
    }

    #[test]
    fn m5_meets_and_joins() {
        let l = m5();
        let (a, b) = (l.index_of("a").unwrap(), l.index_of("b").unwrap());
        assert_eq!(l.elem_name(l.meet(a, b)), "0");
        assert_eq!(l.elem_name(l.join(a, b)), "1");
        assert_eq!(l.covers().len(), 6);
    }

    #[test]
    fn missing_join_is_reported() {
        let err = FiniteLattice::from_covers("v", &["0", "a", "b"], &[("0", "a"), ("0", "b")])
            .unwrap_err();
        assert_eq!(
            err,
            LatticeError::NotALattice {
                x: "a".into(),
                y: "b".into(),
                bound: Bound::Join
            }
        );
    }

    #[test]
    fn cyclic_covers_rejected() {
        let err =
            FiniteLattice::from_covers("c", &["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err();
        assert!(matches!(err, LatticeError::CyclicCovers(_)));
    }

    #[test]
    fn principal_sets() {
        let l = m5();
        assert_eq!(
            l.principal_ideal(l.index_of("a").unwrap()).set(),
            set(&l, &["0", "a"])
        );
        assert_eq!(l.principal_ideal(l.top()).set(), l.carrier());
        let n = n5();
        assert_eq!(
            n.principal_filter(n.index_of("b").unwrap()).set(),
            set(&n, &["b", "1"])
        );
    }

    #[test]
    fn generated_ideal_and_filter() {
        let l = m5();
        assert_eq!(
            l.generated_ideal(set(&l, &["a", "b"])).unwrap().set(),
            l.carrier()
        );
        for x in 0..l.len() {
            assert_eq!(
                l.generated_ideal(Bits::singleton(x)).unwrap(),
                l.principal_ideal(x)
            );
        }
        let n = n5();
        assert_eq!(
            n.generated_filter(set(&n, &["a", "b"])).unwrap().set(),
            n.carrier()
        );
        assert_eq!(
            l.generated_ideal(Bits::EMPTY),
            Err(LatticeError::EmptyGeneratorSet)
        );
    }

    #[test]
    fn generated_ideal_is_least_ideal_above() {
        for l in [m5(), n5(), diamond(), FiniteLattice::chain(4)] {
            let ideals = scan(&l, |s| oracle_is_ideal(&l, s));
            for s in l.carrier().subsets().skip(1) {
                let least = ideals
                    .iter()
                    .filter(|i| s.is_subset(**i))
                    .fold(l.carrier(), |acc, &i| acc & i);
                assert_eq!(l.generated_ideal(s).unwrap().set(), least);
            }
        }
    }

    #[test]
    fn all_ideals_match_subset_scan() {
        for l in [m5(), n5(), diamond(), FiniteLattice::chain(2)] {
            let mut got: Vec<ElemSet> = l.all_ideals().iter().map(|i| i.set()).collect();
            got.sort();
            assert_eq!(got, scan(&l, |s| oracle_is_ideal(&l, s)));
            let mut filters: Vec<ElemSet> = l.all_filters().iter().map(|f| f.set()).collect();
            filters.sort();
            assert_eq!(filters, scan(&l, |s| l.is_filter(s)));
        }
        assert_eq!(m5().all_ideals().len(), 5);
        assert_eq!(n5().all_ideals().len(), 5);
        let c2 = FiniteLattice::chain(2);
        assert_eq!(
            c2.all_ideals().iter().map(|i| i.set()).collect::<Vec<_>>(),
            vec![Bits::from_indices([0]), Bits::from_indices([0, 1])]
        );
    }

    #[test]
    fn prime_ideals_of_small_lattices() {
        assert!(m5().prime_ideals().is_empty());
        let c2 = FiniteLattice::chain(2);
        assert_eq!(
            c2.prime_ideals()
                .iter()
                .map(|p| p.set())
                .collect::<Vec<_>>(),
            vec![Bits::singleton(0)]
        );
        let n = n5();
        let got: Vec<ElemSet> = n.prime_ideals().iter().map(|p| p.set()).collect();
        // (b] = {0,b} and (c] = {0,a,c}
        let mut want = vec![set(&n, &["0", "b"]), set(&n, &["0", "a", "c"])];
        want.sort();
        let mut got_sorted = got.clone();
        got_sorted.sort();
        assert_eq!(got_sorted, want);
        // oracle: x ∧ y ∈ P ⇒ x ∈ P or y ∈ P over all ideals
        let oracle: Vec<ElemSet> = scan(&n, |s| {
            oracle_is_ideal(&n, s)
                && s != n.carrier()
                && (0..5).all(|x| {
                    (0..5).all(|y| !s.contains(n.meet(x, y)) || s.contains(x) || s.contains(y))
                })
        });
        assert_eq!(oracle, want);
    }

    #[test]
    fn distributivity_detection() {
        assert!(diamond().is_distributive());
        let d = m5().distributivity();
        assert!(!d.is_distributive());
        assert_eq!(d.forbidden_sublattice.unwrap().kind, SublatticeKind::M5);
        let d = n5().distributivity();
        assert!(!d.is_distributive() && d.detectors_agree());
        assert_eq!(d.forbidden_sublattice.unwrap().kind, SublatticeKind::N5);
    }

    #[test]
    fn homomorphism_checks() {
        let l = m5();
        let c = FiniteLattice::chain(2);
        assert!(LatticeHom::new(&l, &l, (0..5).collect()).is_ok());
        let a = l.index_of("a").unwrap();
        assert!(LatticeHom::new(&c, &l, vec![0, a]).is_ok());
        let err = LatticeHom::new(&c, &c, vec![1, 0]).unwrap_err();
        assert!(matches!(err, LatticeError::NotAHom { .. }));
        assert!(matches!(
            LatticeHom::new(&c, &l, vec![0]),
            Err(LatticeError::MissingMapping(_))
        ));
    }

    #[test]
    fn all_homs_agrees_with_brute_force() {
        let pairs = [
            (FiniteLattice::chain(2), m5()),
            (diamond(), FiniteLattice::chain(3)),
            (n5(), diamond()),
        ];
        for (s, t) in &pairs {
            let fast: Vec<Vec<usize>> = all_homs(s, t).into_iter().map(|h| h.map).collect();
            let mut brute = Vec::new();
            let total = t.len().pow(s.len() as u32);
            for code in 0..total {
                let map: Vec<usize> = (0..s.len())
                    .map(|k| code / t.len().pow((s.len() - 1 - k) as u32) % t.len())
                    .collect();
                if hom_violation(s, t, &map).is_none() {
                    brute.push(map);
                }
            }
            assert_eq!(fast, brute);
        }
    }

    #[test]
    fn corrupted_meet_is_detected() {
        let l = m5();
        for x in 0..5 {
            for y in 0..5 {
                for z in 0..5 {
                    if z == l.meet(x, y) {
                        continue;
                    }
                    assert!(l.with_corrupted_meet(x, y, z).axiom_violation().is_some());
                }
            }
        }
    }

    #[test]
    fn product_of_chains_is_distributive() {
        let p = FiniteLattice::chain(2)
            .product(&FiniteLattice::chain(3))
            .unwrap();
        assert_eq!(p.len(), 6);
        assert!(p.is_distributive());
        assert!(p.axiom_violation().is_none());
    }
}
