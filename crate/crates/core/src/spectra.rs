//! Classical and bitopological spectra of a finite lattice.
//!
//! The points of the bitopological spectrum are the comaximal pairs
//! `(I, F)`: an ideal and a filter that are disjoint and each maximal with
//! that property relative to the other. Two maps send elements to sets of
//! points:
//!
//! * `delta(x) = {(I, F) : x ∉ I}`, a subbasis for the topology `tau`;
//! * `epsilon(x) = {(I, F) : x ∈ F}`, a basis for the topology `sigma`.
//!
//! With that orientation `(I, F) <=_tau (J, G)` iff `J ⊆ I`, and
//! `(I, F) <=_sigma (J, G)` iff `F ⊆ G`.

use std::fmt;

use thiserror::Error;

use crate::bits::{Bits, ElemSet, PointSet};
use crate::lattice::{Filter, FiniteLattice, Ideal, LatticeError, PrimeIdeal};
use crate::par::{self, Execution};
use crate::topology::{
    compact_subcover, empty_is_fundamental, BitopSpace, FiniteTopology, SetFamily, TopologyError,
};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum SpectraError {
    #[error("ideal {0} and filter {1} are not disjoint")]
    NotDisjoint(String, String),
    #[error("{0} is not an ideal")]
    NotAnIdeal(String),
    #[error("{0} is not a filter")]
    NotAFilter(String),
    #[error("input set is empty")]
    EmptyInput,
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
}

/// A comaximal (ideal, filter) pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComaximalPair {
    pub ideal: Ideal,
    pub filter: Filter,
}

impl ComaximalPair {
    /// Short form `(x];[y)` naming the generators of the (principal) ideal
    /// and filter.
    pub fn label(&self, l: &FiniteLattice) -> String {
        let top = l.join_all(self.ideal.set()).expect("ideals are nonempty");
        let bot = l.meet_all(self.filter.set()).expect("filters are nonempty");
        format!("({}];[{})", l.elem_name(top), l.elem_name(bot))
    }

    /// Long form `({..};{..})` listing both sets.
    pub fn set_label(&self, l: &FiniteLattice) -> String {
        format!(
            "({};{})",
            l.set_name(self.ideal.set()),
            l.set_name(self.filter.set())
        )
    }
}

/// The three comaximality conditions, tested literally against every ideal
/// and filter of `l`.
pub fn is_comaximal(l: &FiniteLattice, ideal: ElemSet, filter: ElemSet) -> bool {
    l.is_ideal(ideal)
        && l.is_filter(filter)
        && !ideal.intersects(filter)
        && l.all_ideals()
            .iter()
            .all(|j| !(ideal.is_subset(j.set()) && ideal != j.set()) || j.set().intersects(filter))
        && l.all_filters()
            .iter()
            .all(|k| !(filter.is_subset(k.set()) && filter != k.set()) || k.set().intersects(ideal))
}

/// All comaximal pairs, sorted by `(ideal, filter)` bit-sets.
pub fn comaximal_pairs(l: &FiniteLattice) -> Vec<ComaximalPair> {
    let exec = if l.len() >= 16 {
        Execution::Parallel
    } else {
        Execution::Sequential
    };
    comaximal_pairs_with(l, exec)
}

/// [`comaximal_pairs`] with explicit scheduling of the candidate tests.
pub fn comaximal_pairs_with(l: &FiniteLattice, exec: Execution) -> Vec<ComaximalPair> {
    let ideals = l.all_ideals();
    let filters = l.all_filters();
    let n = l.len();
    let mut out = par::filter_map_range(exec, n * n, |k| {
        let (i, f) = (ideals[k / n], filters[k % n]);
        if i.set().intersects(f.set()) {
            return None;
        }
        let ideal_max = ideals
            .iter()
            .all(|j| !(i.set().is_subset(j.set()) && i != *j) || j.set().intersects(f.set()));
        let filter_max = filters
            .iter()
            .all(|g| !(f.set().is_subset(g.set()) && f != *g) || g.set().intersects(i.set()));
        (ideal_max && filter_max).then_some(ComaximalPair {
            ideal: i,
            filter: f,
        })
    });
    out.sort();
    out
}

/// Grows a disjoint ideal/filter pair to a comaximal pair: first the ideal,
/// adding elements in index order whenever the generated ideal stays
/// disjoint from the filter, then the filter against the final ideal.
pub fn extend_to_comaximal(
    l: &FiniteLattice,
    ideal: ElemSet,
    filter: ElemSet,
) -> Result<ComaximalPair, SpectraError> {
    if !l.is_ideal(ideal) {
        return Err(SpectraError::NotAnIdeal(l.set_name(ideal)));
    }
    if !l.is_filter(filter) {
        return Err(SpectraError::NotAFilter(l.set_name(filter)));
    }
    if ideal.intersects(filter) {
        return Err(SpectraError::NotDisjoint(
            l.set_name(ideal),
            l.set_name(filter),
        ));
    }
    let mut j = ideal;
    for e in 0..l.len() {
        if j.contains(e) {
            continue;
        }
        let grown = l.generated_ideal(j | Bits::singleton(e))?.set();
        if !grown.intersects(filter) {
            j = grown;
        }
    }
    let mut k = filter;
    for e in 0..l.len() {
        if k.contains(e) {
            continue;
        }
        let grown = l.generated_filter(k | Bits::singleton(e))?.set();
        if !grown.intersects(j) {
            k = grown;
        }
    }
    let pair = ComaximalPair {
        ideal: Ideal(j),
        filter: Filter(k),
    };
    debug_assert!(is_comaximal(l, j, k));
    Ok(pair)
}

/// `spec_B(L)`: comaximal pairs with the topologies generated by `delta`
/// and `epsilon`.
#[derive(Clone, Debug)]
pub struct BitopSpectrum<'a> {
    lattice: &'a FiniteLattice,
    points: Vec<ComaximalPair>,
    delta: Vec<PointSet>,
    epsilon: Vec<PointSet>,
    space: BitopSpace,
}

impl<'a> BitopSpectrum<'a> {
    pub fn build(l: &'a FiniteLattice) -> Self {
        Self::from_points(l, comaximal_pairs(l))
    }

    pub fn build_with(l: &'a FiniteLattice, exec: Execution) -> Self {
        Self::from_points(l, comaximal_pairs_with(l, exec))
    }

    fn from_points(l: &'a FiniteLattice, points: Vec<ComaximalPair>) -> Self {
        let k = points.len();
        let delta: Vec<PointSet> = (0..l.len())
            .map(|x| {
                (0..k)
                    .filter(|&p| !points[p].ideal.set().contains(x))
                    .collect()
            })
            .collect();
        let epsilon: Vec<PointSet> = (0..l.len())
            .map(|x| {
                (0..k)
                    .filter(|&p| points[p].filter.set().contains(x))
                    .collect()
            })
            .collect();
        let tau = FiniteTopology::from_subbasis(k, &delta);
        let sigma = FiniteTopology::from_subbasis(k, &epsilon);
        let labels = points.iter().map(|p| p.label(l)).collect();
        let space = BitopSpace::new(tau, sigma)
            .expect("same carrier")
            .with_labels(labels);
        BitopSpectrum {
            lattice: l,
            points,
            delta,
            epsilon,
            space,
        }
    }

    pub fn lattice(&self) -> &'a FiniteLattice {
        self.lattice
    }

    pub fn points(&self) -> &[ComaximalPair] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point_index(&self, p: &ComaximalPair) -> Option<usize> {
        self.points.binary_search(p).ok()
    }

    pub fn delta(&self, x: usize) -> PointSet {
        self.delta[x]
    }

    pub fn epsilon(&self, x: usize) -> PointSet {
        self.epsilon[x]
    }

    pub fn deltas(&self) -> &[PointSet] {
        &self.delta
    }

    pub fn epsilons(&self) -> &[PointSet] {
        &self.epsilon
    }

    pub fn space(&self) -> &BitopSpace {
        &self.space
    }

    pub fn into_space(self) -> BitopSpace {
        self.space
    }

    /// `Im(delta)` as a family.
    pub fn delta_image(&self) -> SetFamily {
        SetFamily::new(self.len(), self.delta.iter().copied())
    }

    /// Points whose tau- and sigma-closures coincide. Each has a prime
    /// ideal; the converse holds when `L` is distributive but can fail
    /// otherwise (the point `((b],[a))` of `N5`).
    pub fn prime_points(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&p| self.space.is_prime_point(p))
            .collect()
    }

    /// Points whose ideal is a prime ideal.
    pub fn prime_ideal_points(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&p| self.lattice.is_prime_ideal(self.points[p].ideal.set()))
            .collect()
    }

    /// Compares the essential subsets with `Im(delta)`.
    pub fn essential_equals_delta(&self) -> RepresentationVerdict {
        let essential = self.space.essential_subsets().clone();
        let image = self.delta_image();
        let brute_force = self
            .space
            .essential_subsets_brute_force()
            .ok()
            .map(|b| b == essential);
        RepresentationVerdict {
            lattice_size: self.lattice.len(),
            missing_from_image: essential.iter().filter(|a| !image.contains(*a)).collect(),
            missing_from_essential: image.iter().filter(|a| !essential.contains(*a)).collect(),
            essential,
            brute_force_agrees: brute_force,
        }
    }

    /// `gbd_witness` for this spectrum's lattice.
    pub fn gbd_witness(&self, v: ElemSet, w: ElemSet) -> Result<GbdOutcome, SpectraError> {
        gbd_witness(self.lattice, v, w)
    }

    /// Checks `outcome` pointwise: a witness must bound `⋀V1 <= z <= ⋁W1`
    /// and certify `⋂ epsilon(V1) ⊆ ⋃ delta(W1)`; a separating pair must lie
    /// in `⋂ epsilon(V) \ ⋃ delta(W)` with `W ⊆ I`, `V ⊆ F`. Either way the
    /// branch has to match the actual containment.
    pub fn check_gbd(&self, v: ElemSet, w: ElemSet, outcome: &GbdOutcome) -> Result<(), String> {
        let l = self.lattice;
        let contained = self.meet_eps(v).is_subset(self.join_delta(w));
        match *outcome {
            GbdOutcome::Witness { z, v1, w1 } => {
                if !contained {
                    return Err("witness returned although the containment fails".into());
                }
                if v1.is_empty() || w1.is_empty() || !v1.is_subset(v) || !w1.is_subset(w) {
                    return Err("witness subsets are not nonempty subsets of V and W".into());
                }
                let (lo, hi) = (l.meet_all(v1).unwrap(), l.join_all(w1).unwrap());
                if !l.leq(lo, z) || !l.leq(z, hi) {
                    return Err(format!(
                        "{} does not sit between the bounds",
                        l.elem_name(z)
                    ));
                }
                if !self.meet_eps(v1).is_subset(self.join_delta(w1)) {
                    return Err("reduced containment fails".into());
                }
                Ok(())
            }
            GbdOutcome::Separated(p) => {
                if contained {
                    return Err("separating pair returned although the containment holds".into());
                }
                if !is_comaximal(l, p.ideal.set(), p.filter.set()) {
                    return Err(format!("{} is not comaximal", p.set_label(l)));
                }
                if !w.is_subset(p.ideal.set()) || !v.is_subset(p.filter.set()) {
                    return Err(format!("{} does not contain W and V", p.set_label(l)));
                }
                let idx = self.point_index(&p).ok_or("pair is not a point")?;
                if !self.meet_eps(v).contains(idx) || self.join_delta(w).contains(idx) {
                    return Err("pair does not witness non-containment".into());
                }
                Ok(())
            }
        }
    }

    pub fn delta_compactness_check(
        &self,
        x: usize,
        v: ElemSet,
    ) -> Result<DeltaCompactness, SpectraError> {
        delta_compactness_check(self.lattice, x, v)
    }

    /// Pointwise check of a [`DeltaCompactness`] outcome.
    pub fn check_delta_compactness(
        &self,
        x: usize,
        v: ElemSet,
        outcome: &DeltaCompactness,
    ) -> Result<(), String> {
        let l = self.lattice;
        let contained = self.delta[x].is_subset(self.join_delta(v));
        match *outcome {
            DeltaCompactness::Finite(v1) => {
                if !contained {
                    return Err("finite subcover returned although the containment fails".into());
                }
                if v1.is_empty() || !v1.is_subset(v) {
                    return Err("V1 is not a nonempty subset of V".into());
                }
                if !l.leq(x, l.join_all(v1).unwrap())
                    || !self.delta[x].is_subset(self.join_delta(v1))
                {
                    return Err("V1 does not cover".into());
                }
                Ok(())
            }
            DeltaCompactness::Separated(p) => {
                if contained {
                    return Err("separating pair returned although the containment holds".into());
                }
                let idx = self.point_index(&p).ok_or("pair is not a point")?;
                if !self.delta[x].contains(idx) || self.join_delta(v).contains(idx) {
                    return Err("pair does not separate".into());
                }
                Ok(())
            }
        }
    }

    /// `⋂ epsilon(x)` over `v`; the whole space for empty `v`.
    pub fn meet_eps(&self, v: ElemSet) -> PointSet {
        v.iter()
            .fold(self.space.full(), |acc, x| acc & self.epsilon[x])
    }

    /// `⋃ delta(y)` over `w`.
    pub fn join_delta(&self, w: ElemSet) -> PointSet {
        w.iter().fold(Bits::EMPTY, |acc, y| acc | self.delta[y])
    }

    /// Reduces the cover `{delta(x)}` of the whole space to a finite
    /// subcover and reads off the top element as the join of its indices.
    pub fn has_top_via_compactness(&self) -> Result<TopWitness, SpectraError> {
        let sub = compact_subcover(self.space.tau(), self.space.full(), &self.delta)?;
        let subcover: ElemSet = sub.into_iter().collect();
        let witness = self
            .lattice
            .join_all(subcover)
            .unwrap_or(self.lattice.top());
        Ok(TopWitness {
            compact: true,
            subcover,
            witness_top: witness,
            agrees: witness == self.lattice.top(),
        })
    }

    /// Tests the empty set for sigma-fundamentality and extracts a finite
    /// family of elements whose `epsilon` sets have empty intersection; their
    /// meet is the bottom.
    pub fn has_bottom_via_fundamental(&self) -> BottomWitness {
        let l = self.lattice;
        let fundamental = empty_is_fundamental(self.space.sigma());
        let mut family = l.carrier();
        for x in 0..l.len() {
            let trial = family - Bits::singleton(x);
            if !trial.is_empty() && self.meet_eps(trial).is_empty() {
                family = trial;
            }
        }
        let witness = l.meet_all(family).expect("family stays nonempty");
        BottomWitness {
            fundamental,
            family,
            witness_bottom: witness,
            agrees: fundamental && self.meet_eps(family).is_empty() && witness == l.bottom(),
        }
    }
}

/// Result of comparing essential subsets of `spec_B(L)` with `Im(delta)`.
#[derive(Clone, Debug)]
pub struct RepresentationVerdict {
    pub lattice_size: usize,
    pub essential: SetFamily,
    pub missing_from_image: Vec<PointSet>,
    pub missing_from_essential: Vec<PointSet>,
    /// `None` when the carrier is too large for the brute-force scan.
    pub brute_force_agrees: Option<bool>,
}

impl RepresentationVerdict {
    pub fn holds(&self) -> bool {
        self.missing_from_image.is_empty()
            && self.missing_from_essential.is_empty()
            && self.essential.len() == self.lattice_size
            && self.brute_force_agrees != Some(false)
    }
}

/// Either `⋀V1 <= z <= ⋁W1` or a comaximal pair separating `V` from `W`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GbdOutcome {
    Witness { z: usize, v1: ElemSet, w1: ElemSet },
    Separated(ComaximalPair),
}

/// Decides whether `⋂ epsilon(V) ⊆ ⋃ delta(W)` algebraically: it holds iff
/// the ideal generated by `W` meets the filter generated by `V`. In that
/// case `V` and `W` are shrunk greedily (lowest index first) while
/// `⋀V1 <= ⋁W1` survives and `z = ⋀V1`; otherwise the two generated sets
/// are extended to a comaximal pair.
pub fn gbd_witness(l: &FiniteLattice, v: ElemSet, w: ElemSet) -> Result<GbdOutcome, SpectraError> {
    if v.is_empty() || w.is_empty() {
        return Err(SpectraError::EmptyInput);
    }
    let iw = l.generated_ideal(w)?.set();
    let fv = l.generated_filter(v)?.set();
    if !iw.intersects(fv) {
        return Ok(GbdOutcome::Separated(extend_to_comaximal(l, iw, fv)?));
    }
    let bounded =
        |v1: ElemSet, w1: ElemSet| l.leq(l.meet_all(v1).unwrap(), l.join_all(w1).unwrap());
    let mut v1 = v;
    for x in v.iter() {
        let trial = v1 - Bits::singleton(x);
        if !trial.is_empty() && bounded(trial, w) {
            v1 = trial;
        }
    }
    let mut w1 = w;
    for y in w.iter() {
        let trial = w1 - Bits::singleton(y);
        if !trial.is_empty() && bounded(v1, trial) {
            w1 = trial;
        }
    }
    Ok(GbdOutcome::Witness {
        z: l.meet_all(v1).unwrap(),
        v1,
        w1,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaCompactness {
    /// `x <= ⋁V1`.
    Finite(ElemSet),
    /// A point of `delta(x)` outside every `delta(v)`.
    Separated(ComaximalPair),
}

/// Finite reduction for `delta(x) ⊆ ⋃ delta(V)`, or a pair outside the
/// union.
pub fn delta_compactness_check(
    l: &FiniteLattice,
    x: usize,
    v: ElemSet,
) -> Result<DeltaCompactness, SpectraError> {
    if v.is_empty() {
        return Err(SpectraError::EmptyInput);
    }
    if v.contains(x) {
        return Ok(DeltaCompactness::Finite(Bits::singleton(x)));
    }
    let iv = l.generated_ideal(v)?.set();
    if !iv.contains(x) {
        let fx = l.principal_filter(x).set();
        return Ok(DeltaCompactness::Separated(extend_to_comaximal(l, iv, fx)?));
    }
    let mut v1 = v;
    for y in v.iter() {
        let trial = v1 - Bits::singleton(y);
        if !trial.is_empty() && l.leq(x, l.join_all(trial).unwrap()) {
            v1 = trial;
        }
    }
    Ok(DeltaCompactness::Finite(v1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TopWitness {
    pub compact: bool,
    /// Elements whose `delta` sets form the reduced subcover.
    pub subcover: ElemSet,
    pub witness_top: usize,
    pub agrees: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BottomWitness {
    pub fundamental: bool,
    /// Elements whose `epsilon` sets have empty intersection.
    pub family: ElemSet,
    pub witness_bottom: usize,
    pub agrees: bool,
}

// --- classical spectrum ----------------------------------------------------

/// `spec(L)`: prime ideals with the Zariski topology generated by
/// `d(x) = {P : x ∉ P}`.
#[derive(Clone, Debug)]
pub struct ClassicalSpectrum<'a> {
    lattice: &'a FiniteLattice,
    points: Vec<PrimeIdeal>,
    dmap: Vec<PointSet>,
    space: FiniteTopology,
    basis_closed: bool,
}

impl<'a> ClassicalSpectrum<'a> {
    pub fn build(l: &'a FiniteLattice) -> Self {
        let points = l.prime_ideals();
        let k = points.len();
        let dmap: Vec<PointSet> = (0..l.len())
            .map(|x| (0..k).filter(|&p| !points[p].set().contains(x)).collect())
            .collect();
        let image = SetFamily::new(k, dmap.iter().copied());
        let basis_closed = image
            .iter()
            .all(|a| image.iter().all(|b| image.contains(a & b)));
        let space = FiniteTopology::from_subbasis(k, &dmap);
        ClassicalSpectrum {
            lattice: l,
            points,
            dmap,
            space,
            basis_closed,
        }
    }

    pub fn lattice(&self) -> &'a FiniteLattice {
        self.lattice
    }

    pub fn points(&self) -> &[PrimeIdeal] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn d(&self, x: usize) -> PointSet {
        self.dmap[x]
    }

    pub fn dmap(&self) -> &[PointSet] {
        &self.dmap
    }

    pub fn space(&self) -> &FiniteTopology {
        &self.space
    }

    /// Whether `Im(d)` is closed under pairwise intersection. Guaranteed only
    /// for distributive lattices; reported rather than enforced.
    pub fn basis_closed(&self) -> bool {
        self.basis_closed
    }

    pub fn point_label(&self, p: usize) -> String {
        let l = self.lattice;
        format!(
            "({}]",
            l.elem_name(l.join_all(self.points[p].set()).unwrap())
        )
    }

    pub fn point_labels(&self) -> Vec<String> {
        (0..self.len()).map(|p| self.point_label(p)).collect()
    }
}

/// `b_L : P -> (P, P^c)` from the classical to the bitopological spectrum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BMap {
    pub map: Vec<usize>,
    pub injective: bool,
    pub bijective: bool,
    /// Bijective and a homeomorphism onto `(M(L), tau)`.
    pub homeomorphism: bool,
}

impl fmt::Display for BMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "injective={} bijective={} homeomorphism={}",
            self.injective, self.bijective, self.homeomorphism
        )
    }
}

pub fn b_map(classical: &ClassicalSpectrum<'_>, bitop: &BitopSpectrum<'_>) -> BMap {
    let l = classical.lattice;
    let n = l.len();
    let map: Vec<usize> = classical
        .points
        .iter()
        .map(|p| {
            let pair = ComaximalPair {
                ideal: p.0,
                filter: Filter(p.set().complement(n)),
            };
            bitop
                .point_index(&pair)
                .expect("a prime ideal and its complement form a comaximal pair")
        })
        .collect();
    let injective = Bits::from_indices(map.iter().copied()).len() == map.len();
    let bijective = injective && map.len() == bitop.len();
    let homeomorphism = bijective
        && (0..n).all(|x| crate::topology::preimage(&map, bitop.delta(x)) == classical.d(x))
        && (0..map.len()).all(|p| {
            (0..map.len()).all(|q| classical.space.leq(p, q) == bitop.space.leq_tau(map[p], map[q]))
        });
    BMap {
        map,
        injective,
        bijective,
        homeomorphism,
    }
}
