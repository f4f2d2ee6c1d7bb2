//! Finite topological and bitopological spaces.
//!
//! A topology on a finite carrier is determined by the minimal open
//! neighbourhood of each point, so that is what [`FiniteTopology`] stores;
//! the full family of opens is enumerated on demand.
//!
//! Specialization preorder: `x <= y` iff `x` lies in the closure of `{y}`,
//! iff every open containing `x` contains `y`. Opens are exactly the
//! up-sets of this preorder.

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::bits::{Bits, PointSet, MAX_CARRIER};

/// Largest carrier whose open family is materialized.
pub const MAX_EXTENSIONAL: usize = 24;
/// Largest carrier for the brute-force essential-set cross-check.
pub const MAX_BRUTE_FORCE: usize = 12;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TopologyError {
    #[error("carrier of {0} points is too large for this operation (limit {1})")]
    CarrierTooLarge(usize, usize),
    #[error("family is not a topology: {0}")]
    NotATopology(String),
    #[error("not a cover: {0}")]
    NotACover(String),
    #[error("set {0:?} is not increasing for the required preorder")]
    NotIncreasing(PointSet),
    #[error("space is not pairwise Balbes-Dwinger: {0}")]
    NotPairwiseBd(String),
    #[error("topology sizes differ: {0} vs {1} points")]
    CarrierMismatch(usize, usize),
}

/// Duplicate-free family of subsets of a carrier, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SetFamily {
    carrier: usize,
    members: Vec<PointSet>,
}

impl SetFamily {
    pub fn new(carrier: usize, members: impl IntoIterator<Item = PointSet>) -> Self {
        let full = Bits::full(carrier);
        let mut members: Vec<PointSet> = members.into_iter().map(|m| m & full).collect();
        members.sort();
        members.dedup();
        SetFamily { carrier, members }
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    pub fn members(&self) -> &[PointSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: PointSet) -> bool {
        self.members.binary_search(&s).is_ok()
    }

    pub fn position(&self, s: PointSet) -> Option<usize> {
        self.members.binary_search(&s).ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = PointSet> + '_ {
        self.members.iter().copied()
    }
}

/// A topology on `0..carrier`, stored as minimal open neighbourhoods.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteTopology {
    carrier: usize,
    nbhd: Vec<PointSet>,
}

impl fmt::Debug for FiniteTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteTopology")
            .field("carrier", &self.carrier)
            .field("min_nbhd", &self.nbhd)
            .finish()
    }
}

impl FiniteTopology {
    /// Smallest topology containing `family` (the empty family gives the
    /// indiscrete topology).
    pub fn from_subbasis(carrier: usize, family: &[PointSet]) -> Self {
        assert!(carrier <= MAX_CARRIER);
        let full = Bits::full(carrier);
        let nbhd = (0..carrier)
            .map(|x| {
                family
                    .iter()
                    .filter(|s| s.contains(x))
                    .fold(full, |acc, &s| acc & s)
            })
            .collect();
        FiniteTopology { carrier, nbhd }
    }

    /// Validates an explicit open family.
    pub fn from_opens(carrier: usize, opens: &[PointSet]) -> Result<Self, TopologyError> {
        let fam = SetFamily::new(carrier, opens.iter().copied());
        let full = Bits::full(carrier);
        if !fam.contains(Bits::EMPTY) || !fam.contains(full) {
            return Err(TopologyError::NotATopology(
                "missing the empty set or the carrier".into(),
            ));
        }
        for a in fam.iter() {
            for b in fam.iter() {
                if !fam.contains(a | b) {
                    return Err(TopologyError::NotATopology(format!(
                        "{a:?} ∪ {b:?} missing"
                    )));
                }
                if !fam.contains(a & b) {
                    return Err(TopologyError::NotATopology(format!(
                        "{a:?} ∩ {b:?} missing"
                    )));
                }
            }
        }
        Ok(Self::from_subbasis(carrier, fam.members()))
    }

    pub fn discrete(carrier: usize) -> Self {
        FiniteTopology {
            carrier,
            nbhd: (0..carrier).map(Bits::singleton).collect(),
        }
    }

    pub fn indiscrete(carrier: usize) -> Self {
        Self::from_subbasis(carrier, &[])
    }

    pub fn carrier(&self) -> usize {
        self.carrier
    }

    pub fn full(&self) -> PointSet {
        Bits::full(self.carrier)
    }

    /// Intersection of all opens containing `x`.
    #[inline]
    pub fn min_nbhd(&self, x: usize) -> PointSet {
        self.nbhd[x]
    }

    pub fn min_nbhds(&self) -> &[PointSet] {
        &self.nbhd
    }

    pub fn is_open(&self, a: PointSet) -> bool {
        a.is_subset(self.full()) && a.iter().all(|x| self.nbhd[x].is_subset(a))
    }

    /// Specialization preorder.
    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.nbhd[x].contains(y)
    }

    /// `cl({x}) = {y : y <= x}`.
    pub fn closure_of_point(&self, x: usize) -> PointSet {
        (0..self.carrier)
            .filter(|&y| self.nbhd[y].contains(x))
            .collect()
    }

    /// Largest open inside `a`.
    pub fn interior(&self, a: PointSet) -> PointSet {
        (0..self.carrier)
            .filter(|&x| self.nbhd[x].is_subset(a))
            .collect()
    }

    /// Smallest open containing `a`.
    pub fn up_closure(&self, a: PointSet) -> PointSet {
        a.iter().fold(Bits::EMPTY, |acc, x| acc | self.nbhd[x])
    }

    pub fn is_t0(&self) -> bool {
        self.t0_witness().is_none()
    }

    /// Two distinct points with the same neighbourhoods, if any.
    pub fn t0_witness(&self) -> Option<(usize, usize)> {
        for x in 0..self.carrier {
            for y in x + 1..self.carrier {
                if self.leq(x, y) && self.leq(y, x) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    /// Every open set, ascending.
    pub fn opens(&self) -> Result<SetFamily, TopologyError> {
        if self.carrier > MAX_EXTENSIONAL {
            return Err(TopologyError::CarrierTooLarge(
                self.carrier,
                MAX_EXTENSIONAL,
            ));
        }
        let mut out = Vec::new();
        self.each_open(|a| out.push(a));
        Ok(SetFamily::new(self.carrier, out))
    }

    pub fn count_opens(&self) -> Result<usize, TopologyError> {
        if self.carrier > MAX_EXTENSIONAL {
            return Err(TopologyError::CarrierTooLarge(
                self.carrier,
                MAX_EXTENSIONAL,
            ));
        }
        let mut n = 0usize;
        self.each_open(|_| n += 1);
        Ok(n)
    }

    /// Visits every up-set of the specialization preorder exactly once.
    fn each_open(&self, mut visit: impl FnMut(PointSet)) {
        let below: Vec<PointSet> = (0..self.carrier)
            .map(|x| self.closure_of_point(x))
            .collect();
        fn go(
            k: usize,
            inside: PointSet,
            outside: PointSet,
            nbhd: &[PointSet],
            below: &[PointSet],
            visit: &mut dyn FnMut(PointSet),
        ) {
            if k == nbhd.len() {
                visit(inside);
                return;
            }
            if inside.contains(k) || outside.contains(k) {
                go(k + 1, inside, outside, nbhd, below, visit);
                return;
            }
            if !nbhd[k].intersects(outside) {
                go(k + 1, inside | nbhd[k], outside, nbhd, below, visit);
            }
            if !below[k].intersects(inside) {
                go(k + 1, inside, outside | below[k], nbhd, below, visit);
            }
        }
        go(0, Bits::EMPTY, Bits::EMPTY, &self.nbhd, &below, &mut visit);
    }

    /// `true` when `map: self -> target` pulls every open back to an open.
    /// Checked on the minimal neighbourhoods, which form a basis.
    pub fn is_continuous_into(&self, target: &FiniteTopology, map: &[usize]) -> bool {
        target.nbhd.iter().all(|&u| self.is_open(preimage(map, u)))
    }
}

/// `f^{-1}(s)` for a point map given as a table.
pub fn preimage(map: &[usize], s: PointSet) -> PointSet {
    (0..map.len()).filter(|&x| s.contains(map[x])).collect()
}

/// `f(s)` for a point map given as a table.
pub fn image(map: &[usize], s: PointSet) -> PointSet {
    s.iter().map(|x| map[x]).collect()
}

/// Whether `map` is a bijection `0..n -> 0..m`.
pub fn is_bijection(map: &[usize], m: usize) -> bool {
    map.len() == m && Bits::from_indices(map.iter().copied()) == Bits::full(m)
}

// --- classical (single topology) notions ----------------------------------

/// Greedy reduction of `cover` to a finite subcover of `a`. Members are
/// picked by largest gain (ties to the lowest index) and then pruned of
/// redundancy. Returns indices into `cover`, ascending.
pub fn compact_subcover(
    top: &FiniteTopology,
    a: PointSet,
    cover: &[PointSet],
) -> Result<Vec<usize>, TopologyError> {
    if let Some(bad) = cover.iter().find(|&&u| !top.is_open(u)) {
        return Err(TopologyError::NotACover(format!("{bad:?} is not open")));
    }
    let union = cover.iter().fold(Bits::EMPTY, |acc, &u| acc | u);
    if !a.is_subset(union) {
        return Err(TopologyError::NotACover(format!(
            "{:?} left uncovered",
            a - union
        )));
    }
    let mut chosen = Vec::new();
    let mut left = a;
    while !left.is_empty() {
        let (best, _) = cover
            .iter()
            .enumerate()
            .map(|(i, &u)| (i, (u & left).len()))
            .max_by(|x, y| x.1.cmp(&y.1).then(y.0.cmp(&x.0)))
            .expect("cover is nonempty when something is left");
        chosen.push(best);
        left = left - cover[best];
    }
    let mut k = 0;
    while k < chosen.len() {
        let rest = chosen
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .fold(Bits::EMPTY, |acc, (_, &i)| acc | cover[i]);
        if a.is_subset(rest) {
            chosen.remove(k);
        } else {
            k += 1;
        }
    }
    chosen.sort_unstable();
    Ok(chosen)
}

/// Whether the empty set is fundamental: every collection of compact opens
/// with the finite intersection property has nonempty intersection.
///
/// On a finite carrier every collection of opens is finite, so the finite
/// intersection property already asserts that the whole intersection is
/// nonempty; the clause always holds. (Only nonempty collections count: the
/// empty collection has no intersection to speak of.)
pub fn empty_is_fundamental(top: &FiniteTopology) -> bool {
    let _ = top;
    true
}

/// Fundamental subsets: nonempty compact opens (every open, on a finite
/// carrier) and the empty set when [`empty_is_fundamental`] holds.
pub fn fundamental_subsets(top: &FiniteTopology) -> Result<SetFamily, TopologyError> {
    let opens = top.opens()?;
    let mut members: Vec<PointSet> = opens.iter().filter(|a| !a.is_empty()).collect();
    if empty_is_fundamental(top) {
        members.push(Bits::EMPTY);
    }
    Ok(SetFamily::new(top.carrier(), members))
}

/// Outcome of the Balbes-Dwinger space test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BdVerdict {
    Pass,
    NotT0(usize, usize),
    NotCoherent(String),
    NotBirreducible(String),
}

impl BdVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, BdVerdict::Pass)
    }
}

/// T0, coherent (fundamentals form an intersection-closed basis), and the
/// fundamentals birreducible in finite witness form: whenever an
/// intersection of fundamentals lies in a union of fundamentals, the
/// intersection itself is a fundamental set below that union.
pub fn is_bd_space(top: &FiniteTopology) -> Result<BdVerdict, TopologyError> {
    if let Some((x, y)) = top.t0_witness() {
        return Ok(BdVerdict::NotT0(x, y));
    }
    let fund = fundamental_subsets(top)?;
    for a in fund.iter() {
        for b in fund.iter() {
            if !fund.contains(a & b) {
                return Ok(BdVerdict::NotCoherent(format!(
                    "{a:?} ∩ {b:?} is not fundamental"
                )));
            }
        }
    }
    if FiniteTopology::from_subbasis(top.carrier(), fund.members()) != *top {
        return Ok(BdVerdict::NotCoherent(
            "fundamentals do not generate the topology".into(),
        ));
    }
    // On (X, tau, tau) both transition maps are the identity, so the
    // bitopological witness form specializes to the classical one.
    match BitopSpace::doubled(top.clone())
        .birreducible_failure(PbdOptions::default().birreducible_bound)
    {
        Some(PbdFailure::NotBirreducible { v, w }) => {
            Ok(BdVerdict::NotBirreducible(format!("{v:?} / {w:?}")))
        }
        _ => Ok(BdVerdict::Pass),
    }
}

// --- bitopological spaces -------------------------------------------------

/// Which axiom of a pairwise Balbes-Dwinger space failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PbdFailure {
    /// (i) `x <=_tau y` and `y <=_sigma x` for distinct points.
    NotPairwiseT0 { x: usize, y: usize },
    /// (ii) the essential sets do not generate `tau`; `open` is a tau-open
    /// neighbourhood they miss.
    EssentialNotSubbasis { open: PointSet },
    /// (iii) `{d(A)}` is not intersection-closed.
    DImagesNotIntersectionClosed { a: PointSet, b: PointSet },
    /// (iii) `{d(A)}` does not generate `sigma`.
    DImagesNotBasis { open: PointSet },
    /// (iv) `A ∪ B` or `i(d(A ∩ B))` is not essential.
    NotClosed {
        a: PointSet,
        b: PointSet,
        op: &'static str,
    },
    /// (v) witness form of d-birreducibility fails for the families.
    NotBirreducible { v: Vec<PointSet>, w: Vec<PointSet> },
}

impl PbdFailure {
    pub fn axiom(&self) -> &'static str {
        match self {
            PbdFailure::NotPairwiseT0 { .. } => "i",
            PbdFailure::EssentialNotSubbasis { .. } => "ii",
            PbdFailure::DImagesNotIntersectionClosed { .. }
            | PbdFailure::DImagesNotBasis { .. } => "iii",
            PbdFailure::NotClosed { .. } => "iv",
            PbdFailure::NotBirreducible { .. } => "v",
        }
    }
}

impl fmt::Display for PbdFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "axiom ({}): ", self.axiom())?;
        match self {
            PbdFailure::NotPairwiseT0 { x, y } => write!(f, "points {x} and {y} are not separated"),
            PbdFailure::EssentialNotSubbasis { open } => {
                write!(f, "essential sets miss the open {open:?}")
            }
            PbdFailure::DImagesNotIntersectionClosed { a, b } => {
                write!(f, "d({a:?}) ∩ d({b:?}) is not a d-image")
            }
            PbdFailure::DImagesNotBasis { open } => {
                write!(f, "d-images miss the sigma-open {open:?}")
            }
            PbdFailure::NotClosed { a, b, op } => {
                write!(f, "{op} of {a:?} and {b:?} is not essential")
            }
            PbdFailure::NotBirreducible { v, w } => {
                write!(f, "no witness for V = {v:?}, W = {w:?}")
            }
        }
    }
}

/// Tuning for the pairwise Balbes-Dwinger check.
#[derive(Clone, Copy, Debug)]
pub struct PbdOptions {
    /// Largest subfamily size tried in the birreducibility check.
    pub birreducible_bound: usize,
}

impl Default for PbdOptions {
    fn default() -> Self {
        PbdOptions {
            birreducible_bound: 2,
        }
    }
}

/// A set with two topologies.
pub struct BitopSpace {
    tau: FiniteTopology,
    sigma: FiniteTopology,
    labels: Vec<String>,
    essential: OnceLock<SetFamily>,
}

impl Clone for BitopSpace {
    fn clone(&self) -> Self {
        BitopSpace {
            tau: self.tau.clone(),
            sigma: self.sigma.clone(),
            labels: self.labels.clone(),
            essential: self.essential.clone(),
        }
    }
}

impl PartialEq for BitopSpace {
    fn eq(&self, other: &Self) -> bool {
        self.tau == other.tau && self.sigma == other.sigma
    }
}

impl Eq for BitopSpace {}

impl fmt::Debug for BitopSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BitopSpace")
            .field("points", &self.labels)
            .field("tau", &self.tau)
            .field("sigma", &self.sigma)
            .finish()
    }
}

impl BitopSpace {
    pub fn new(tau: FiniteTopology, sigma: FiniteTopology) -> Result<Self, TopologyError> {
        if tau.carrier() != sigma.carrier() {
            return Err(TopologyError::CarrierMismatch(
                tau.carrier(),
                sigma.carrier(),
            ));
        }
        let labels = (0..tau.carrier()).map(|i| format!("p{i}")).collect();
        Ok(BitopSpace {
            tau,
            sigma,
            labels,
            essential: OnceLock::new(),
        })
    }

    /// `(X, tau, tau)`.
    pub fn doubled(tau: FiniteTopology) -> Self {
        BitopSpace::new(tau.clone(), tau).expect("same carrier")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.len());
        self.labels = labels;
        self
    }

    pub fn len(&self) -> usize {
        self.tau.carrier()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn full(&self) -> PointSet {
        self.tau.full()
    }

    pub fn tau(&self) -> &FiniteTopology {
        &self.tau
    }

    pub fn sigma(&self) -> &FiniteTopology {
        &self.sigma
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn set_label(&self, s: PointSet) -> String {
        let parts: Vec<&str> = s.iter().map(|x| self.label(x)).collect();
        format!("{{{}}}", parts.join(", "))
    }

    #[inline]
    pub fn leq_tau(&self, x: usize, y: usize) -> bool {
        self.tau.leq(x, y)
    }

    #[inline]
    pub fn leq_sigma(&self, x: usize, y: usize) -> bool {
        self.sigma.leq(x, y)
    }

    pub fn is_tau_increasing(&self, a: PointSet) -> bool {
        self.tau.is_open(a)
    }

    pub fn is_sigma_increasing(&self, a: PointSet) -> bool {
        self.sigma.is_open(a)
    }

    /// `d(A) = {x : every y with x <=_sigma y lies in A}`.
    pub fn op_d(&self, a: PointSet) -> PointSet {
        self.sigma.interior(a)
    }

    /// `i(A) = {x : some a in A has a <=_tau x}`.
    pub fn op_i(&self, a: PointSet) -> PointSet {
        self.tau.up_closure(a)
    }

    /// `i(d(A)) = A`, for tau-increasing `A`.
    pub fn is_stable(&self, a: PointSet) -> Result<bool, TopologyError> {
        if !self.is_tau_increasing(a) {
            return Err(TopologyError::NotIncreasing(a));
        }
        Ok(self.op_i(self.op_d(a)) == a)
    }

    /// `d(i(B)) = B`, for sigma-increasing `B`.
    pub fn is_costable(&self, b: PointSet) -> Result<bool, TopologyError> {
        if !self.is_sigma_increasing(b) {
            return Err(TopologyError::NotIncreasing(b));
        }
        Ok(self.op_d(self.op_i(b)) == b)
    }

    /// Distinct `x, y` with `x <=_tau y` and `y <=_sigma x`, if any.
    pub fn pairwise_t0_witness(&self) -> Option<(usize, usize)> {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                if x != y && self.leq_tau(x, y) && self.leq_sigma(y, x) {
                    return Some((x, y));
                }
            }
        }
        None
    }

    pub fn is_pairwise_t0(&self) -> bool {
        self.pairwise_t0_witness().is_none()
    }

    pub fn is_prime_point(&self, x: usize) -> bool {
        self.tau.closure_of_point(x) == self.sigma.closure_of_point(x)
    }

    /// Essential subsets: nonempty tau-increasing `A` with `d(A)` sigma-open
    /// and `i(d(A)) = A`, plus the empty set when it is sigma-fundamental.
    ///
    /// A stable set is `i` of the sigma-open `d(A)`, and `i` preserves
    /// unions, so the candidates are the unions of `i(min_sigma_nbhd(x))`.
    pub fn essential_subsets(&self) -> &SetFamily {
        self.essential.get_or_init(|| {
            let gens: Vec<PointSet> = (0..self.len())
                .map(|x| self.op_i(self.sigma.min_nbhd(x)))
                .collect();
            let mut seen = std::collections::BTreeSet::new();
            seen.insert(Bits::EMPTY);
            let mut frontier = vec![Bits::EMPTY];
            while let Some(cur) = frontier.pop() {
                for &g in &gens {
                    let next = cur | g;
                    if seen.insert(next) {
                        frontier.push(next);
                    }
                }
            }
            let mut members: Vec<PointSet> = seen
                .into_iter()
                .filter(|&a| !a.is_empty() && self.is_essential_nonempty(a))
                .collect();
            if empty_is_fundamental(&self.sigma) {
                members.push(Bits::EMPTY);
            }
            SetFamily::new(self.len(), members)
        })
    }

    fn is_essential_nonempty(&self, a: PointSet) -> bool {
        // tau-compactness holds for every subset of a finite carrier
        self.is_tau_increasing(a)
            && self.sigma.is_open(self.op_d(a))
            && self.op_i(self.op_d(a)) == a
    }

    /// The same family by scanning every tau-increasing subset.
    pub fn essential_subsets_brute_force(&self) -> Result<SetFamily, TopologyError> {
        if self.len() > MAX_BRUTE_FORCE {
            return Err(TopologyError::CarrierTooLarge(self.len(), MAX_BRUTE_FORCE));
        }
        let mut members: Vec<PointSet> = self
            .full()
            .subsets()
            .filter(|&a| !a.is_empty() && self.is_essential_nonempty(a))
            .collect();
        if empty_is_fundamental(&self.sigma) {
            members.push(Bits::EMPTY);
        }
        Ok(SetFamily::new(self.len(), members))
    }

    /// Checks axioms (i)-(v) of a pairwise Balbes-Dwinger space in order and
    /// reports the first failure.
    pub fn pairwise_bd_failure(&self, opts: PbdOptions) -> Option<PbdFailure> {
        if let Some((x, y)) = self.pairwise_t0_witness() {
            return Some(PbdFailure::NotPairwiseT0 { x, y });
        }
        let ess = self.essential_subsets();
        let gen_tau = FiniteTopology::from_subbasis(self.len(), ess.members());
        if let Some(x) = (0..self.len()).find(|&x| gen_tau.min_nbhd(x) != self.tau.min_nbhd(x)) {
            return Some(PbdFailure::EssentialNotSubbasis {
                open: self.tau.min_nbhd(x),
            });
        }
        let d_images = SetFamily::new(self.len(), ess.iter().map(|a| self.op_d(a)));
        for a in ess.iter() {
            for b in ess.iter() {
                if !d_images.contains(self.op_d(a) & self.op_d(b)) {
                    return Some(PbdFailure::DImagesNotIntersectionClosed { a, b });
                }
            }
        }
        let covered = d_images.iter().fold(Bits::EMPTY, |acc, s| acc | s);
        let gen_sigma = FiniteTopology::from_subbasis(self.len(), d_images.members());
        if let Some(x) = (0..self.len()).find(|&x| gen_sigma.min_nbhd(x) != self.sigma.min_nbhd(x))
        {
            return Some(PbdFailure::DImagesNotBasis {
                open: self.sigma.min_nbhd(x),
            });
        }
        if covered != self.full() {
            return Some(PbdFailure::DImagesNotBasis { open: self.full() });
        }
        for a in ess.iter() {
            for b in ess.iter() {
                if !ess.contains(a | b) {
                    return Some(PbdFailure::NotClosed { a, b, op: "union" });
                }
                if !ess.contains(self.op_i(self.op_d(a & b))) {
                    return Some(PbdFailure::NotClosed {
                        a,
                        b,
                        op: "i(d(A ∩ B))",
                    });
                }
            }
        }
        self.birreducible_failure(opts.birreducible_bound)
    }

    pub fn is_pairwise_bd(&self) -> bool {
        self.pairwise_bd_failure(PbdOptions::default()).is_none()
    }

    /// Witness form of d-birreducibility over nonempty subfamilies `V, W` of
    /// the essential sets with at most `bound` members each: whenever
    /// `⋂ d(V) ⊆ ⋃ W`, greedily shrink to `V1, W1` keeping the containment
    /// and require `z = i(d(⋂ V1))` to be essential with `z ⊆ ⋃ W1`.
    fn birreducible_failure(&self, bound: usize) -> Option<PbdFailure> {
        let ess = self.essential_subsets().members();
        let subfamilies = small_subfamilies(ess.len(), bound);
        for v in &subfamilies {
            let dv = v
                .iter()
                .fold(self.full(), |acc, &k| acc & self.op_d(ess[k]));
            for w in &subfamilies {
                let uw = w.iter().fold(Bits::EMPTY, |acc, &k| acc | ess[k]);
                if !dv.is_subset(uw) {
                    continue;
                }
                let (v1, w1) = self.shrink_containment(ess, v, w);
                let meet_v1 = v1.iter().fold(self.full(), |acc, &k| acc & ess[k]);
                let z = self.op_i(self.op_d(meet_v1));
                let uw1 = w1.iter().fold(Bits::EMPTY, |acc, &k| acc | ess[k]);
                if !self.essential_subsets().contains(z) || !z.is_subset(uw1) {
                    return Some(PbdFailure::NotBirreducible {
                        v: v.iter().map(|&k| ess[k]).collect(),
                        w: w.iter().map(|&k| ess[k]).collect(),
                    });
                }
            }
        }
        None
    }

    fn shrink_containment(
        &self,
        ess: &[PointSet],
        v: &[usize],
        w: &[usize],
    ) -> (Vec<usize>, Vec<usize>) {
        let holds = |v: &[usize], w: &[usize]| {
            let dv = v
                .iter()
                .fold(self.full(), |acc, &k| acc & self.op_d(ess[k]));
            let uw = w.iter().fold(Bits::EMPTY, |acc, &k| acc | ess[k]);
            dv.is_subset(uw)
        };
        let (mut v, mut w) = (v.to_vec(), w.to_vec());
        let mut k = 0;
        while k < v.len() && v.len() > 1 {
            let mut trial = v.clone();
            trial.remove(k);
            if holds(&trial, &w) {
                v = trial;
            } else {
                k += 1;
            }
        }
        let mut k = 0;
        while k < w.len() && w.len() > 1 {
            let mut trial = w.clone();
            trial.remove(k);
            if holds(&v, &trial) {
                w = trial;
            } else {
                k += 1;
            }
        }
        (v, w)
    }

    /// `tau == sigma`, for a pairwise Balbes-Dwinger space.
    pub fn is_doubly_bd(&self) -> Result<bool, TopologyError> {
        if let Some(f) = self.pairwise_bd_failure(PbdOptions::default()) {
            return Err(TopologyError::NotPairwiseBd(format!(
                "axiom ({}) fails",
                f.axiom()
            )));
        }
        Ok(self.tau == self.sigma)
    }

    /// `(X, tau)` compact and the empty set sigma-fundamental. Both hold on
    /// every finite carrier.
    pub fn is_bounded_pbd(&self) -> Result<bool, TopologyError> {
        if let Some(f) = self.pairwise_bd_failure(PbdOptions::default()) {
            return Err(TopologyError::NotPairwiseBd(format!(
                "axiom ({}) fails",
                f.axiom()
            )));
        }
        let tau_compact = compact_subcover(&self.tau, self.full(), &[self.full()]).is_ok();
        Ok(tau_compact && empty_is_fundamental(&self.sigma))
    }

    /// Bijective, with `map` an isomorphism of both specialization
    /// preorders (equivalently, a homeomorphism for both topologies).
    pub fn is_bihomeomorphism(&self, target: &BitopSpace, map: &[usize]) -> bool {
        if !is_bijection(map, target.len()) || map.len() != self.len() {
            return false;
        }
        (0..self.len()).all(|x| {
            (0..self.len()).all(|y| {
                self.leq_tau(x, y) == target.leq_tau(map[x], map[y])
                    && self.leq_sigma(x, y) == target.leq_sigma(map[x], map[y])
            })
        })
    }

    pub fn is_bicontinuous_into(&self, target: &BitopSpace, map: &[usize]) -> bool {
        self.tau.is_continuous_into(&target.tau, map)
            && self.sigma.is_continuous_into(&target.sigma, map)
    }
}

/// Index lists of every nonempty subfamily of `0..n` with at most `bound`
/// members.
fn small_subfamilies(n: usize, bound: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, bound: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == bound {
            return;
        }
        for k in start..n {
            cur.push(k);
            go(k + 1, n, bound, cur, out);
            cur.pop();
        }
    }
    go(0, n, bound, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(xs: &[usize]) -> PointSet {
        Bits::from_indices(xs.iter().copied())
    }

    /// Topology generated by a subbasis, by closing under finite
    /// intersection and then under union.
    fn oracle_generate(carrier: usize, family: &[PointSet]) -> SetFamily {
        let full = Bits::full(carrier);
        let mut basis: std::collections::BTreeSet<PointSet> = family.iter().copied().collect();
        basis.insert(full);
        loop {
            let cur: Vec<PointSet> = basis.iter().copied().collect();
            let before = basis.len();
            for &x in &cur {
                for &y in &cur {
                    basis.insert(x & y);
                }
            }
            if basis.len() == before {
                break;
            }
        }
        let basis: Vec<PointSet> = basis.into_iter().collect();
        let mut opens = std::collections::BTreeSet::new();
        for pick in Bits::full(basis.len()).subsets() {
            opens.insert(pick.iter().fold(Bits::EMPTY, |acc, k| acc | basis[k]));
        }
        SetFamily::new(carrier, opens)
    }

    fn sierpinski() -> FiniteTopology {
        FiniteTopology::from_opens(2, &[b(&[]), b(&[0]), b(&[0, 1])]).unwrap()
    }

    #[test]
    fn subbasis_examples() {
        let t = FiniteTopology::from_subbasis(2, &[]);
        assert_eq!(t.opens().unwrap().members(), &[b(&[]), b(&[0, 1])]);
        let s = sierpinski();
        assert_eq!(
            FiniteTopology::from_subbasis(2, s.opens().unwrap().members())
                .opens()
                .unwrap(),
            s.opens().unwrap()
        );
    }

    #[test]
    fn generation_matches_closure_oracle() {
        let fams: Vec<(usize, Vec<PointSet>)> = vec![
            (4, vec![b(&[0, 1]), b(&[1, 2]), b(&[3])]),
            (5, vec![b(&[0, 1, 2]), b(&[2, 3, 4]), b(&[1, 3])]),
            (3, vec![]),
            (
                6,
                vec![b(&[0, 1, 2, 3]), b(&[2, 3, 4, 5]), b(&[0, 1, 4, 5])],
            ),
        ];
        for (n, fam) in fams {
            let t = FiniteTopology::from_subbasis(n, &fam);
            assert_eq!(t.opens().unwrap(), oracle_generate(n, &fam));
        }
    }

    #[test]
    fn specialization_examples() {
        let d = FiniteTopology::discrete(3);
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(d.leq(x, y), x == y);
            }
        }
        let s = sierpinski();
        // point 1 ("b") lies in the closure of point 0 ("a")
        assert!(s.leq(1, 0));
        assert!(!s.leq(0, 1));
        assert_eq!(s.closure_of_point(0), b(&[0, 1]));
    }

    #[test]
    fn pairwise_t0_examples() {
        let disc =
            BitopSpace::new(FiniteTopology::discrete(3), FiniteTopology::discrete(3)).unwrap();
        assert!(disc.is_pairwise_t0());
        let ind =
            BitopSpace::new(FiniteTopology::indiscrete(2), FiniteTopology::indiscrete(2)).unwrap();
        assert!(ind.pairwise_t0_witness().is_some());
    }

    #[test]
    fn pairwise_t0_matches_open_set_definition() {
        let tops = [
            FiniteTopology::discrete(3),
            FiniteTopology::indiscrete(3),
            sierpinski(),
        ];
        for t in &tops {
            for s in &tops {
                if t.carrier() != s.carrier() {
                    continue;
                }
                let sp = BitopSpace::new(t.clone(), s.clone()).unwrap();
                let (to, so) = (t.opens().unwrap(), s.opens().unwrap());
                let n = t.carrier();
                let direct = (0..n).all(|x| {
                    (0..n).all(|y| {
                        x == y
                            || to.iter().any(|u| u.contains(x) && !u.contains(y))
                            || so.iter().any(|v| !v.contains(x) && v.contains(y))
                    })
                });
                assert_eq!(sp.is_pairwise_t0(), direct);
            }
        }
    }

    #[test]
    fn compact_subcover_cases() {
        let t = FiniteTopology::discrete(3);
        assert_eq!(
            compact_subcover(&t, Bits::EMPTY, &[b(&[0])]).unwrap(),
            Vec::<usize>::new()
        );
        let cover = [b(&[0]), b(&[0, 1, 2]), b(&[1])];
        assert_eq!(
            compact_subcover(&t, b(&[0, 1, 2]), &cover).unwrap(),
            vec![1]
        );
        assert!(compact_subcover(&t, b(&[2]), &[b(&[0])]).is_err());
        assert!(compact_subcover(&sierpinski(), b(&[1]), &[b(&[1])]).is_err());
    }

    #[test]
    fn fundamental_subsets_cases() {
        let s = sierpinski();
        assert_eq!(
            fundamental_subsets(&s).unwrap().members(),
            &[b(&[]), b(&[0]), b(&[0, 1])]
        );
        let d = FiniteTopology::discrete(2);
        assert!(fundamental_subsets(&d).unwrap().contains(Bits::EMPTY));
    }

    /// Literal reading: scan every nonempty subcollection of compact opens,
    /// test the finite intersection property on all of its finite
    /// subcollections, and demand a nonempty total intersection.
    fn oracle_empty_fundamental(t: &FiniteTopology) -> bool {
        let opens: Vec<PointSet> = t.opens().unwrap().iter().collect();
        assert!(opens.len() <= 10);
        for pick in Bits::full(opens.len()).subsets().skip(1) {
            let fip = pick.subsets().skip(1).all(|sub| {
                !sub.iter()
                    .fold(t.full(), |acc, k| acc & opens[k])
                    .is_empty()
            });
            let total = pick.iter().fold(t.full(), |acc, k| acc & opens[k]);
            if fip && total.is_empty() {
                return false;
            }
        }
        true
    }

    #[test]
    fn empty_set_fundamental_agrees_with_literal_scan() {
        for t in [
            sierpinski(),
            FiniteTopology::discrete(2),
            FiniteTopology::discrete(3),
            FiniteTopology::indiscrete(3),
            FiniteTopology::from_subbasis(3, &[b(&[0, 1]), b(&[1, 2])]),
        ] {
            assert_eq!(empty_is_fundamental(&t), oracle_empty_fundamental(&t));
        }
    }

    #[test]
    fn transition_extremes() {
        let sp = BitopSpace::new(sierpinski(), FiniteTopology::discrete(2)).unwrap();
        assert_eq!(sp.op_d(sp.full()), sp.full());
        assert_eq!(sp.op_i(Bits::EMPTY), Bits::EMPTY);
        assert!(sp.is_stable(sp.full()).unwrap());
        assert!(matches!(
            sp.is_stable(b(&[1])),
            Err(TopologyError::NotIncreasing(_))
        ));
    }

    #[test]
    fn doubled_space_essential_equals_fundamental() {
        for t in [
            sierpinski(),
            FiniteTopology::discrete(3),
            FiniteTopology::from_subbasis(3, &[b(&[0, 1]), b(&[1, 2])]),
        ] {
            let sp = BitopSpace::doubled(t.clone());
            assert_eq!(*sp.essential_subsets(), fundamental_subsets(&t).unwrap());
            for a in t.opens().unwrap().iter() {
                assert_eq!(sp.op_i(a), a);
                assert_eq!(sp.op_d(a), a);
            }
        }
    }

    #[test]
    fn one_point_space() {
        let sp = BitopSpace::doubled(FiniteTopology::indiscrete(1));
        assert_eq!(sp.essential_subsets().members(), &[b(&[]), b(&[0])]);
        assert!(sp.is_pairwise_bd());
        assert!(sp.is_doubly_bd().unwrap());
        assert!(sp.is_bounded_pbd().unwrap());
    }

    #[test]
    fn perturbed_sierpinski_fails_axiom_iii() {
        let sp = BitopSpace::new(sierpinski(), FiniteTopology::discrete(2)).unwrap();
        let f = sp.pairwise_bd_failure(PbdOptions::default()).unwrap();
        assert_eq!(f.axiom(), "iii");
        assert!(matches!(
            sp.is_doubly_bd(),
            Err(TopologyError::NotPairwiseBd(_))
        ));
    }

    #[test]
    fn bd_space_examples() {
        assert!(!is_bd_space(&FiniteTopology::indiscrete(2))
            .unwrap()
            .passed());
        assert!(is_bd_space(&sierpinski()).unwrap().passed());
        assert!(is_bd_space(&FiniteTopology::discrete(3)).unwrap().passed());
    }

    #[test]
    fn essential_search_matches_brute_force() {
        let tops = [
            sierpinski(),
            FiniteTopology::discrete(2),
            FiniteTopology::indiscrete(2),
        ];
        for t in &tops {
            for s in &tops {
                let sp = BitopSpace::new(t.clone(), s.clone()).unwrap();
                assert_eq!(
                    *sp.essential_subsets(),
                    sp.essential_subsets_brute_force().unwrap()
                );
            }
        }
    }

    #[test]
    fn count_opens_matches_enumeration() {
        let t = FiniteTopology::from_subbasis(5, &[b(&[0, 1, 2]), b(&[2, 3, 4]), b(&[1, 3])]);
        assert_eq!(t.count_opens().unwrap(), t.opens().unwrap().len());
        assert_eq!(FiniteTopology::discrete(4).count_opens().unwrap(), 16);
    }
}
