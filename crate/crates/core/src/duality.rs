//! The functorial layer: homomorphism classification, `spec_B` and the
//! essential-set lattice on morphisms, the isomorphisms `delta_L` and `H_X`,
//! the classical map `h_X`, and the bridge between doubly pairwise spaces and
//! ordinary Balbes-Dwinger spaces.
//!
//! Everything is checked extensionally on concrete finite structures.

use thiserror::Error;

use crate::bits::{Bits, ElemSet, PointSet};
use crate::lattice::{all_homs, FiniteLattice, LatticeError, LatticeHom, Op, PrimeIdeal};
use crate::spectra::{
    b_map, is_comaximal, BitopSpectrum, ClassicalSpectrum, ComaximalPair, SpectraError,
};
use crate::topology::{
    fundamental_subsets, is_bd_space, preimage, BdVerdict, BitopSpace, FiniteTopology, PbdOptions,
    TopologyError,
};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum DualityError {
    #[error("homomorphism is not quasi-proper: {0}")]
    NotQuasiProper(String),
    #[error("not a pairwise Balbes-Dwinger space: {0}")]
    NotPairwiseBd(String),
    #[error("not a Balbes-Dwinger space: {0}")]
    NotBdSpace(String),
    #[error("not a doubly Balbes-Dwinger space: the two topologies differ")]
    NotDoublyBd,
    #[error("{op} of {a} and {b} is not the expected essential set")]
    OperationMismatch { a: String, b: String, op: Op },
    #[error("preimage of {0} is not essential")]
    NotStronglyBicontinuous(String),
    #[error("spectrum does not belong to the homomorphism's lattices")]
    SpectrumMismatch,
    #[error("comaximal pair {0} has no matching point")]
    UnmatchedPair(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Spectra(#[from] SpectraError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
}

// --- homomorphism classification ----------------------------------------

/// Proper and quasi-proper verdicts for a homomorphism `f: L -> N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomClassification {
    pub proper: bool,
    /// `N` has no prime ideals, so `proper` holds for want of candidates.
    pub vacuous: bool,
    /// A prime ideal of `N` whose preimage is not prime.
    pub proper_witness: Option<PrimeIdeal>,
    pub quasi_proper: bool,
    /// A comaximal pair of `N` whose preimage is not comaximal.
    pub quasi_proper_witness: Option<ComaximalPair>,
}

impl HomClassification {
    /// Witnesses rendered with element names.
    pub fn describe_witnesses(&self, f: &LatticeHom<'_>) -> Vec<String> {
        let (l, n) = (f.source(), f.target());
        let mut out = Vec::new();
        if let Some(p) = self.proper_witness {
            out.push(format!(
                "prime ideal {} of {} pulls back to {}, which is not prime",
                n.set_name(p.set()),
                n.name(),
                l.set_name(f.preimage(p.set()))
            ));
        }
        if let Some(p) = self.quasi_proper_witness {
            out.push(format!(
                "comaximal pair {} of {} pulls back to ({};{}), which is not comaximal",
                p.label(n),
                n.name(),
                l.set_name(f.preimage(p.ideal.set())),
                l.set_name(f.preimage(p.filter.set()))
            ));
        }
        out
    }
}

pub fn classify_hom(f: &LatticeHom<'_>) -> HomClassification {
    let (l, n) = (f.source(), f.target());
    let primes = n.prime_ideals();
    let proper_witness = primes
        .iter()
        .copied()
        .find(|p| !l.is_prime_ideal(f.preimage(p.set())));
    let quasi_proper_witness = crate::spectra::comaximal_pairs(n)
        .into_iter()
        .find(|p| !is_comaximal(l, f.preimage(p.ideal.set()), f.preimage(p.filter.set())));
    HomClassification {
        proper: proper_witness.is_none(),
        vacuous: primes.is_empty(),
        proper_witness,
        quasi_proper: quasi_proper_witness.is_none(),
        quasi_proper_witness,
    }
}

/// Every homomorphism between every ordered pair of `lattices`.
pub fn hom_corpus(lattices: &[FiniteLattice]) -> Vec<LatticeHom<'_>> {
    lattices
        .iter()
        .flat_map(|s| lattices.iter().flat_map(move |t| all_homs(s, t)))
        .collect()
}

// --- morphisms of pairwise spaces -----------------------------------------

/// The three conditions on a map `f: X -> Y` of pairwise spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PbdMorphismCheck {
    pub bicontinuous: bool,
    /// Preimages of essential sets are essential.
    pub strongly_bicontinuous: bool,
    /// `f^-1(d_Y(A)) = d_X(f^-1(A))`.
    pub commutes_with_d: bool,
    /// `f^-1(i_Y(B)) = i_X(f^-1(B))`.
    pub commutes_with_i: bool,
}

impl PbdMorphismCheck {
    pub fn holds(&self) -> bool {
        self.bicontinuous
            && self.strongly_bicontinuous
            && self.commutes_with_d
            && self.commutes_with_i
    }
}

/// Checks `map: X -> Y` against the morphism conditions. The `d` identity is
/// tested on every essential `A` and every intersection `A ∩ B`, the `i`
/// identity on every essential `A` and every `d(A ∩ B)`: those are the sets
/// the meet-preservation argument feeds through the two maps.
pub fn check_pbd_morphism(x: &BitopSpace, y: &BitopSpace, map: &[usize]) -> PbdMorphismCheck {
    let ex = x.essential_subsets();
    let ey = y.essential_subsets();
    let pre = |s: PointSet| preimage(map, s);
    let strongly = ey.iter().all(|a| ex.contains(pre(a)));
    let mut commutes_d = true;
    let mut commutes_i = true;
    for a in ey.iter() {
        commutes_i &= pre(y.op_i(a)) == x.op_i(pre(a));
        for b in ey.iter() {
            let ab = a & b;
            commutes_d &= pre(y.op_d(ab)) == x.op_d(pre(ab));
            let dab = y.op_d(ab);
            commutes_i &= pre(y.op_i(dab)) == x.op_i(pre(dab));
        }
    }
    PbdMorphismCheck {
        bicontinuous: x.is_bicontinuous_into(y, map),
        strongly_bicontinuous: strongly,
        commutes_with_d: commutes_d,
        commutes_with_i: commutes_i,
    }
}

/// `spec_B(f): spec_B(N) -> spec_B(L)` for `f: L -> N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbdMorphism {
    /// Point map, indexed by the points of `spec_B(N)`.
    pub map: Vec<usize>,
    /// `spec_B(f)^-1(delta_L(x)) = delta_N(f(x))` and the same for
    /// `epsilon`, for every `x`.
    pub preimage_identities: bool,
    pub check: PbdMorphismCheck,
}

impl PbdMorphism {
    pub fn verified(&self) -> bool {
        self.preimage_identities && self.check.holds()
    }
}

pub fn spec_b_on_hom(
    f: &LatticeHom<'_>,
    source: &BitopSpectrum<'_>,
    target: &BitopSpectrum<'_>,
) -> Result<PbdMorphism, DualityError> {
    if !std::ptr::eq(f.source(), source.lattice()) || !std::ptr::eq(f.target(), target.lattice()) {
        return Err(DualityError::SpectrumMismatch);
    }
    let class = classify_hom(f);
    if !class.quasi_proper {
        return Err(DualityError::NotQuasiProper(
            class.describe_witnesses(f).join("; "),
        ));
    }
    let map = target
        .points()
        .iter()
        .map(|q| {
            let p = ComaximalPair {
                ideal: crate::lattice::Ideal(f.preimage(q.ideal.set())),
                filter: crate::lattice::Filter(f.preimage(q.filter.set())),
            };
            source
                .point_index(&p)
                .ok_or_else(|| DualityError::UnmatchedPair(p.set_label(source.lattice())))
        })
        .collect::<Result<Vec<usize>, _>>()?;
    let preimage_identities = (0..source.lattice().len()).all(|x| {
        preimage(&map, source.delta(x)) == target.delta(f.apply(x))
            && preimage(&map, source.epsilon(x)) == target.epsilon(f.apply(x))
    });
    let check = check_pbd_morphism(target.space(), source.space(), &map);
    Ok(PbdMorphism {
        map,
        preimage_identities,
        check,
    })
}

/// `second ∘ first` for point maps.
pub fn compose(first: &[usize], second: &[usize]) -> Vec<usize> {
    first.iter().map(|&y| second[y]).collect()
}

// --- the lattice of essential sets -----------------------------------------

/// `E(X)`: essential subsets ordered by inclusion, as a [`FiniteLattice`]
/// whose element `k` is `sets()[k]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EssentialLattice {
    lattice: FiniteLattice,
    sets: Vec<PointSet>,
}

fn compact_label(space: &BitopSpace, s: PointSet) -> String {
    let parts: Vec<&str> = s.iter().map(|x| space.label(x)).collect();
    format!("{{{}}}", parts.join(","))
}

/// Builds the inclusion order on `sets` and validates it as a lattice.
fn lattice_of_sets(
    name: &str,
    sets: &[PointSet],
    names: Vec<String>,
) -> Result<FiniteLattice, LatticeError> {
    let up = (0..sets.len())
        .map(|a| {
            (0..sets.len())
                .filter(|&b| sets[a].is_subset(sets[b]))
                .collect()
        })
        .collect();
    FiniteLattice::from_up_sets(name, names, up)
}

impl EssentialLattice {
    /// Fails unless inclusion makes the essential sets a lattice with join
    /// `A ∪ B` and meet `i(d(A ∩ B))`.
    pub fn build(space: &BitopSpace, name: &str) -> Result<Self, DualityError> {
        let sets = space.essential_subsets().members().to_vec();
        let names = sets.iter().map(|&s| compact_label(space, s)).collect();
        let lattice = lattice_of_sets(name, &sets, names)?;
        for a in 0..sets.len() {
            for b in a..sets.len() {
                let mismatch = |op| DualityError::OperationMismatch {
                    a: lattice.elem_name(a).to_string(),
                    b: lattice.elem_name(b).to_string(),
                    op,
                };
                if sets[lattice.join(a, b)] != sets[a] | sets[b] {
                    return Err(mismatch(Op::Join));
                }
                if sets[lattice.meet(a, b)] != space.op_i(space.op_d(sets[a] & sets[b])) {
                    return Err(mismatch(Op::Meet));
                }
            }
        }
        Ok(EssentialLattice { lattice, sets })
    }

    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn sets(&self) -> &[PointSet] {
        &self.sets
    }

    pub fn set(&self, a: usize) -> PointSet {
        self.sets[a]
    }

    pub fn position(&self, s: PointSet) -> Option<usize> {
        self.sets.binary_search(&s).ok()
    }
}

/// `E(f) = f^-1 : E(Y) -> E(X)` for a morphism `map: X -> Y`, verified to be
/// a quasi-proper homomorphism.
pub fn essential_functor_on_morphism<'e>(
    map: &[usize],
    ex: &'e EssentialLattice,
    ey: &'e EssentialLattice,
) -> Result<LatticeHom<'e>, DualityError> {
    let images = ey
        .sets()
        .iter()
        .map(|&a| {
            ex.position(preimage(map, a)).ok_or_else(|| {
                DualityError::NotStronglyBicontinuous(
                    ey.lattice().elem_name(ey.position(a).unwrap()).to_string(),
                )
            })
        })
        .collect::<Result<Vec<usize>, _>>()?;
    let h = LatticeHom::new(ey.lattice(), ex.lattice(), images)?;
    let class = classify_hom(&h);
    if !class.quasi_proper {
        return Err(DualityError::NotQuasiProper(
            class.describe_witnesses(&h).join("; "),
        ));
    }
    Ok(h)
}

// --- comaximal pairs of E(X) and the map H_X --------------------------------

/// `x -> (I(x), F(x))` with `I(x) = {A : x ∉ A}` and `F(x) = {A : x ∈ d(A)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharMaxPair {
    pub pairs: Vec<ComaximalPair>,
    pub all_comaximal: bool,
    pub injective: bool,
    /// Comaximal pairs of `E(X)` not of the form `(I(x), F(x))`.
    pub unmatched: Vec<ComaximalPair>,
    /// `⋂ d(A) = ∅` and `⋂ A = ∅` over all essential `A`.
    pub empty_meets: bool,
}

impl CharMaxPair {
    pub fn holds(&self) -> bool {
        self.all_comaximal && self.injective && self.unmatched.is_empty() && self.empty_meets
    }
}

pub fn char_comaximal_of_essential(space: &BitopSpace, e: &EssentialLattice) -> CharMaxPair {
    let l = e.lattice();
    let pairs: Vec<ComaximalPair> = (0..space.len())
        .map(|x| {
            let ideal: ElemSet = (0..l.len()).filter(|&a| !e.set(a).contains(x)).collect();
            let filter: ElemSet = (0..l.len())
                .filter(|&a| space.op_d(e.set(a)).contains(x))
                .collect();
            ComaximalPair {
                ideal: crate::lattice::Ideal(ideal),
                filter: crate::lattice::Filter(filter),
            }
        })
        .collect();
    let all_comaximal = pairs
        .iter()
        .all(|p| is_comaximal(l, p.ideal.set(), p.filter.set()));
    let mut sorted = pairs.clone();
    sorted.sort();
    sorted.dedup();
    let injective = sorted.len() == pairs.len();
    let unmatched = crate::spectra::comaximal_pairs(l)
        .into_iter()
        .filter(|p| sorted.binary_search(p).is_err())
        .collect();
    let empty_meets = e
        .sets()
        .iter()
        .fold(space.full(), |acc, &a| acc & space.op_d(a))
        .is_empty()
        && e.sets()
            .iter()
            .fold(space.full(), |acc, &a| acc & a)
            .is_empty();
    CharMaxPair {
        pairs,
        all_comaximal,
        injective,
        unmatched,
        empty_meets,
    }
}

/// `H_X : X -> spec_B(E(X))` and its verification.
#[derive(Clone, Debug)]
pub struct BigH {
    pub essential: EssentialLattice,
    pub char_pairs: CharMaxPair,
    /// `spec_B(E(X))`.
    pub target: BitopSpace,
    pub map: Vec<usize>,
    /// `H^-1(delta(A)) = A` for every essential `A`.
    pub delta_identity: bool,
    /// `H^-1(epsilon(A)) = d(A)` for every essential `A`.
    pub sigma_identity: bool,
    pub bihomeomorphism: bool,
    pub morphism: PbdMorphismCheck,
}

impl BigH {
    pub fn holds(&self) -> bool {
        self.char_pairs.holds()
            && self.delta_identity
            && self.sigma_identity
            && self.bihomeomorphism
            && self.morphism.holds()
    }
}

fn require_pbd(space: &BitopSpace) -> Result<(), DualityError> {
    match space.pairwise_bd_failure(PbdOptions::default()) {
        Some(f) => Err(DualityError::NotPairwiseBd(f.to_string())),
        None => Ok(()),
    }
}

pub fn big_h_map(space: &BitopSpace) -> Result<BigH, DualityError> {
    require_pbd(space)?;
    let essential = EssentialLattice::build(space, "E(X)")?;
    let char_pairs = char_comaximal_of_essential(space, &essential);
    let (target, map, delta_identity, sigma_identity) = {
        let spec = BitopSpectrum::build(essential.lattice());
        let map = char_pairs
            .pairs
            .iter()
            .map(|p| {
                spec.point_index(p)
                    .ok_or_else(|| DualityError::UnmatchedPair(p.set_label(essential.lattice())))
            })
            .collect::<Result<Vec<usize>, _>>()?;
        let n = essential.sets().len();
        let delta_identity = (0..n).all(|a| preimage(&map, spec.delta(a)) == essential.set(a));
        let sigma_identity =
            (0..n).all(|a| preimage(&map, spec.epsilon(a)) == space.op_d(essential.set(a)));
        (spec.into_space(), map, delta_identity, sigma_identity)
    };
    let bihomeomorphism = space.is_bihomeomorphism(&target, &map);
    let morphism = check_pbd_morphism(space, &target, &map);
    Ok(BigH {
        essential,
        char_pairs,
        target,
        map,
        delta_identity,
        sigma_identity,
        bihomeomorphism,
        morphism,
    })
}

// --- delta_L and naturality -------------------------------------------------

/// `delta_L : L -> E(spec_B(L))` as element indices, checked to be a lattice
/// isomorphism. Errors name the first failing element or pair.
pub fn delta_iso(spec: &BitopSpectrum<'_>, e: &EssentialLattice) -> Result<Vec<usize>, String> {
    let l = spec.lattice();
    let el = e.lattice();
    let map = (0..l.len())
        .map(|x| {
            e.position(spec.delta(x))
                .ok_or_else(|| format!("delta({}) is not essential", l.elem_name(x)))
        })
        .collect::<Result<Vec<usize>, _>>()?;
    if map.len() != el.len() || Bits::from_indices(map.iter().copied()).len() != map.len() {
        return Err(format!(
            "delta is not a bijection onto the {} essential sets",
            el.len()
        ));
    }
    for x in 0..l.len() {
        for y in 0..l.len() {
            let name = || format!("({}, {})", l.elem_name(x), l.elem_name(y));
            if l.leq(x, y) != el.leq(map[x], map[y]) {
                return Err(format!("order not reflected at {}", name()));
            }
            if map[l.join(x, y)] != el.join(map[x], map[y]) {
                return Err(format!("join not preserved at {}", name()));
            }
            if map[l.meet(x, y)] != el.meet(map[x], map[y]) {
                return Err(format!("meet not preserved at {}", name()));
            }
        }
    }
    Ok(map)
}

/// Verdict for the square `E(spec_B(f)) ∘ delta_L = delta_N ∘ f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NaturalityVerdict {
    pub source_iso: Result<(), String>,
    pub target_iso: Result<(), String>,
    pub morphism_verified: bool,
    /// First element of `L` where the square fails.
    pub failing: Option<String>,
}

impl NaturalityVerdict {
    pub fn holds(&self) -> bool {
        self.source_iso.is_ok()
            && self.target_iso.is_ok()
            && self.morphism_verified
            && self.failing.is_none()
    }
}

pub fn delta_natural_iso_check(f: &LatticeHom<'_>) -> Result<NaturalityVerdict, DualityError> {
    let (l, n) = (f.source(), f.target());
    let (sl, sn) = (BitopSpectrum::build(l), BitopSpectrum::build(n));
    let m = spec_b_on_hom(f, &sl, &sn)?;
    let el = EssentialLattice::build(sl.space(), "E(L)")?;
    let en = EssentialLattice::build(sn.space(), "E(N)")?;
    let dl = delta_iso(&sl, &el);
    let dn = delta_iso(&sn, &en);
    let ef = essential_functor_on_morphism(&m.map, &en, &el)?;
    let failing = (0..l.len())
        .find(|&x| {
            ef.apply(el.position(sl.delta(x)).unwrap())
                != en.position(sn.delta(f.apply(x))).unwrap()
        })
        .map(|x| l.elem_name(x).to_string());
    Ok(NaturalityVerdict {
        source_iso: dl.map(|_| ()),
        target_iso: dn.map(|_| ()),
        morphism_verified: m.verified(),
        failing,
    })
}

// --- the classical side -------------------------------------------------------

/// `h_X : X -> spec(F(X))`, `x -> I_x = {A fundamental : x ∉ A}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HClassical {
    pub fundamentals: Vec<PointSet>,
    pub map: Vec<usize>,
    pub all_prime: bool,
    pub bijective: bool,
    pub homeomorphism: bool,
}

impl HClassical {
    pub fn holds(&self) -> bool {
        self.all_prime && self.bijective && self.homeomorphism
    }
}

/// The fundamental subsets of `top` ordered by inclusion.
pub fn fundamental_lattice(
    top: &FiniteTopology,
) -> Result<(FiniteLattice, Vec<PointSet>), DualityError> {
    let fund = fundamental_subsets(top)?.members().to_vec();
    let names = fund
        .iter()
        .map(|s| format!("{s:?}").replace(' ', ""))
        .collect();
    Ok((lattice_of_sets("F(X)", &fund, names)?, fund))
}

pub fn h_map_classical(top: &FiniteTopology) -> Result<HClassical, DualityError> {
    match is_bd_space(top)? {
        BdVerdict::Pass => {}
        v => return Err(DualityError::NotBdSpace(format!("{v:?}"))),
    }
    let (fl, fund) = fundamental_lattice(top)?;
    let spec = ClassicalSpectrum::build(&fl);
    let ideals: Vec<ElemSet> = (0..top.carrier())
        .map(|x| (0..fund.len()).filter(|&a| !fund[a].contains(x)).collect())
        .collect();
    let all_prime = ideals.iter().all(|&i| fl.is_prime_ideal(i));
    let map: Vec<usize> = ideals
        .iter()
        .map(|&i| {
            spec.points()
                .iter()
                .position(|p| p.set() == i)
                .unwrap_or(usize::MAX)
        })
        .collect();
    let bijective = all_prime && crate::topology::is_bijection(&map, spec.len());
    let homeomorphism = bijective
        && (0..fund.len()).all(|a| preimage(&map, spec.d(a)) == fund[a])
        && (0..map.len())
            .all(|x| (0..map.len()).all(|y| top.leq(x, y) == spec.space().leq(map[x], map[y])));
    Ok(HClassical {
        fundamentals: fund,
        map,
        all_prime,
        bijective,
        homeomorphism,
    })
}

/// `D(X, tau) = (X, tau, tau)` for a Balbes-Dwinger space.
pub fn big_d(top: &FiniteTopology) -> Result<BitopSpace, DualityError> {
    match is_bd_space(top)? {
        BdVerdict::Pass => Ok(BitopSpace::doubled(top.clone())),
        v => Err(DualityError::NotBdSpace(format!("{v:?}"))),
    }
}

/// `O(X, tau, sigma) = (X, tau)` for a doubly Balbes-Dwinger space.
pub fn big_o(space: &BitopSpace) -> Result<FiniteTopology, DualityError> {
    require_pbd(space)?;
    if space.tau() != space.sigma() {
        return Err(DualityError::NotDoublyBd);
    }
    Ok(space.tau().clone())
}

/// `D(X)` is pairwise Balbes-Dwinger and doubly so, `O(D(X)) = X` and
/// `D(O(D(X))) = D(X)`.
pub fn o_d_round_trip(top: &FiniteTopology) -> Result<bool, DualityError> {
    let d = big_d(top)?;
    let back = big_o(&d)?;
    Ok(d.is_pairwise_bd() && d.is_doubly_bd()? && back == *top && big_d(&back)? == d)
}

/// A continuous map between Balbes-Dwinger spaces whose preimages keep
/// fundamental sets fundamental, compared with the morphism conditions on the
/// doubled spaces. Returns `(classical, transported)`; the two should agree.
pub fn transport_morphism(
    x: &FiniteTopology,
    y: &FiniteTopology,
    map: &[usize],
) -> Result<(bool, bool), DualityError> {
    let fx = fundamental_subsets(x)?;
    let fy = fundamental_subsets(y)?;
    let classical =
        x.is_continuous_into(y, map) && fy.iter().all(|a| fx.contains(preimage(map, a)));
    let transported = check_pbd_morphism(&big_d(x)?, &big_d(y)?, map).holds();
    Ok((classical, transported))
}

/// For `f: L -> N` between distributive lattices, `b_L ∘ spec(f)` and
/// `spec_B(f) ∘ b_N` agree on every prime ideal of `N`.
pub fn b_naturality(f: &LatticeHom<'_>) -> Result<bool, DualityError> {
    let (l, n) = (f.source(), f.target());
    let (cl, cn) = (ClassicalSpectrum::build(l), ClassicalSpectrum::build(n));
    let (sl, sn) = (BitopSpectrum::build(l), BitopSpectrum::build(n));
    let (bl, bn) = (b_map(&cl, &sl), b_map(&cn, &sn));
    let m = spec_b_on_hom(f, &sl, &sn)?;
    let class = classify_hom(f);
    if !class.proper {
        return Ok(false);
    }
    Ok((0..cn.len()).all(|p| {
        let pulled = f.preimage(cn.points()[p].set());
        let q = cl
            .points()
            .iter()
            .position(|r| r.set() == pulled)
            .expect("proper");
        bl.map[q] == m.map[bn.map[p]]
    }))
}

/// Object-level Stone duality for a distributive `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StoneVerdict {
    pub b_homeomorphism: bool,
    pub fundamental_count: usize,
    /// `d_L` is an order isomorphism onto the fundamental sets of `spec(L)`.
    pub d_iso: bool,
}

impl StoneVerdict {
    pub fn holds(&self, lattice_size: usize) -> bool {
        self.b_homeomorphism && self.fundamental_count == lattice_size && self.d_iso
    }
}

pub fn stone_check(l: &FiniteLattice) -> Result<StoneVerdict, DualityError> {
    let c = ClassicalSpectrum::build(l);
    let b = b_map(&c, &BitopSpectrum::build(l));
    let fund = fundamental_subsets(c.space())?;
    let images: Vec<PointSet> = c.dmap().to_vec();
    let onto = fund.iter().all(|a| images.contains(&a)) && images.iter().all(|&a| fund.contains(a));
    let order = (0..l.len()).all(|x| (0..l.len()).all(|y| l.leq(x, y) == c.d(x).is_subset(c.d(y))));
    Ok(StoneVerdict {
        b_homeomorphism: b.homeomorphism,
        fundamental_count: fund.len(),
        d_iso: onto && order,
    })
}

// --- distributive characterization --------------------------------------------

/// The four clauses for a pairwise Balbes-Dwinger space `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DisChar {
    /// `tau == sigma`.
    pub doubly: bool,
    /// `E(X)` is distributive.
    pub distributive: bool,
    /// `X` is bihomeomorphic to `spec_B(L)` for a distributive `L`
    /// (decided with `L = E(X)`).
    pub reconstructs: bool,
    pub all_prime: bool,
    pub prime_points: Vec<usize>,
}

impl DisChar {
    pub fn agree(&self) -> bool {
        self.doubly == self.distributive
            && self.distributive == self.reconstructs
            && self.reconstructs == self.all_prime
    }

    pub fn clauses(&self) -> [bool; 4] {
        [
            self.doubly,
            self.distributive,
            self.reconstructs,
            self.all_prime,
        ]
    }
}

pub fn dischar_equivalences(space: &BitopSpace) -> Result<DisChar, DualityError> {
    let h = big_h_map(space)?;
    let distributive = h.essential.lattice().is_distributive();
    let prime_points: Vec<usize> = (0..space.len())
        .filter(|&x| space.is_prime_point(x))
        .collect();
    Ok(DisChar {
        doubly: space.tau() == space.sigma(),
        distributive,
        reconstructs: distributive && h.bihomeomorphism,
        all_prime: prime_points.len() == space.len(),
        prime_points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::named;

    fn hom<'a>(
        s: &'a FiniteLattice,
        t: &'a FiniteLattice,
        pairs: &[(&str, &str)],
    ) -> LatticeHom<'a> {
        let mut map = vec![0; s.len()];
        for (a, b) in pairs {
            map[s.index_of(a).unwrap()] = t.index_of(b).unwrap();
        }
        LatticeHom::new(s, t, map).unwrap()
    }

    #[test]
    fn chain_into_m5() {
        let c2 = named::chain(2);
        let m5 = named::m5();
        let homs: Vec<LatticeHom<'_>> = all_homs(&c2, &m5)
            .into_iter()
            .filter(|h| h.is_injective())
            .collect();
        assert_eq!(homs.len(), 7);
        let mut failing = Vec::new();
        for h in &homs {
            let c = classify_hom(h);
            assert!(c.proper && c.vacuous);
            if !c.quasi_proper {
                assert!(c.quasi_proper_witness.is_some());
                assert!(!c.describe_witnesses(h).is_empty());
                failing.push(h.describe());
            }
        }
        // Only 0->0, 1->1 keeps every preimage comaximal.
        assert_eq!(failing.len(), 6);
        let f = hom(&c2, &m5, &[("0", "0"), ("1", "a")]);
        let c = classify_hom(&f);
        assert!(!c.quasi_proper);
        assert!(c.describe_witnesses(&f)[0].contains("(a];[b)"));
    }

    #[test]
    fn identity_and_collapse() {
        let d = named::diamond();
        let id = LatticeHom::identity(&d);
        let c = classify_hom(&id);
        assert!(c.proper && c.quasi_proper && !c.vacuous);
        let sd = BitopSpectrum::build(&d);
        let m = spec_b_on_hom(&id, &sd, &sd).unwrap();
        assert_eq!(m.map, vec![0, 1]);
        assert!(m.verified());

        let c2 = named::chain(2);
        let f = hom(&d, &c2, &[("0", "0"), ("a", "0"), ("b", "1"), ("1", "1")]);
        assert!(classify_hom(&f).quasi_proper);
        let sc = BitopSpectrum::build(&c2);
        let m = spec_b_on_hom(&f, &sd, &sc).unwrap();
        assert_eq!(m.map.len(), 1);
        assert!(m.verified());
        let el = EssentialLattice::build(sd.space(), "E").unwrap();
        let ec = EssentialLattice::build(sc.space(), "E").unwrap();
        let ef = essential_functor_on_morphism(&m.map, &ec, &el).unwrap();
        assert_eq!((ef.source().len(), ef.target().len()), (4, 2));
        let v = delta_natural_iso_check(&f).unwrap();
        assert!(v.holds(), "{v:?}");
        assert!(b_naturality(&f).unwrap());
    }

    #[test]
    fn spec_b_rejects_non_quasi_proper() {
        let c2 = named::chain(2);
        let m5 = named::m5();
        let f = hom(&c2, &m5, &[("0", "0"), ("1", "a")]);
        let err =
            spec_b_on_hom(&f, &BitopSpectrum::build(&c2), &BitopSpectrum::build(&m5)).unwrap_err();
        assert!(matches!(err, DualityError::NotQuasiProper(_)));
    }

    #[test]
    fn essential_lattice_of_m5_spectrum() {
        let m5 = named::m5();
        let s = BitopSpectrum::build(&m5);
        let e = EssentialLattice::build(s.space(), "E").unwrap();
        assert_eq!(e.lattice().len(), 5);
        assert!(delta_iso(&s, &e).is_ok());
        let cm = char_comaximal_of_essential(s.space(), &e);
        assert!(cm.holds());
        assert_eq!(cm.pairs.len(), 6);
        let h = big_h_map(s.space()).unwrap();
        assert!(h.holds());
    }

    #[test]
    fn one_point_space() {
        let c2 = named::chain(2);
        let s = BitopSpectrum::build(&c2);
        let e = EssentialLattice::build(s.space(), "E").unwrap();
        let cm = char_comaximal_of_essential(s.space(), &e);
        assert_eq!(cm.pairs.len(), 1);
        let empty = e.position(Bits::EMPTY).unwrap();
        let full = e.position(s.space().full()).unwrap();
        assert_eq!(cm.pairs[0].ideal.set(), Bits::singleton(empty));
        assert_eq!(cm.pairs[0].filter.set(), Bits::singleton(full));
        assert!(big_h_map(s.space()).unwrap().holds());
    }

    #[test]
    fn big_h_rejects_non_pbd() {
        // Sierpinski tau with discrete sigma on two points.
        let tau = FiniteTopology::from_subbasis(2, &[Bits::singleton(1)]);
        let space = BitopSpace::new(tau, FiniteTopology::discrete(2)).unwrap();
        assert!(matches!(
            big_h_map(&space),
            Err(DualityError::NotPairwiseBd(_))
        ));
    }

    #[test]
    fn dischar_examples() {
        let d = named::diamond();
        assert_eq!(
            dischar_equivalences(BitopSpectrum::build(&d).space())
                .unwrap()
                .clauses(),
            [true; 4]
        );
        let m5 = named::m5();
        assert_eq!(
            dischar_equivalences(BitopSpectrum::build(&m5).space())
                .unwrap()
                .clauses(),
            [false; 4]
        );
        let n5 = named::n5();
        let v = dischar_equivalences(BitopSpectrum::build(&n5).space()).unwrap();
        assert_eq!(v.clauses(), [false; 4]);
        assert_eq!(v.prime_points.len(), 1);
    }

    #[test]
    fn classical_h_map() {
        for l in [
            named::chain(2),
            named::diamond(),
            named::chain(3),
            named::b3(),
        ] {
            let c = ClassicalSpectrum::build(&l);
            let h = h_map_classical(c.space()).unwrap();
            assert!(h.holds(), "{}", l.name());
            assert_eq!(h.map.len(), c.len());
            assert!(o_d_round_trip(c.space()).unwrap());
            let st = stone_check(&l).unwrap();
            assert!(st.holds(l.len()), "{st:?}");
        }
        let d = named::diamond();
        let z = ClassicalSpectrum::build(&d);
        let doubled = big_d(z.space()).unwrap();
        assert!(doubled.is_pairwise_bd());
    }

    #[test]
    fn o_rejects_non_doubly() {
        let m5 = named::m5();
        let s = BitopSpectrum::build(&m5);
        assert_eq!(big_o(s.space()), Err(DualityError::NotDoublyBd));
    }

    #[test]
    fn quasi_proper_implies_proper_on_small_corpus() {
        let lattices: Vec<FiniteLattice> = (1..=4)
            .flat_map(crate::catalog::generate::lattices_of_size)
            .collect();
        for h in hom_corpus(&lattices) {
            let c = classify_hom(&h);
            assert!(!c.quasi_proper || c.proper, "{}", h.describe());
            if h.source().is_distributive() && h.target().is_distributive() {
                assert_eq!(c.proper, c.quasi_proper, "{}", h.describe());
            }
        }
    }
}
