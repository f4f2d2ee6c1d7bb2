//! Property suites run per lattice and over homomorphism corpora, collected
//! into a [`Report`].

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bits::{Bits, ElemSet, PointSet};
use crate::duality::{
    b_naturality, big_h_map, char_comaximal_of_essential, classify_hom, compose, delta_iso,
    delta_natural_iso_check, dischar_equivalences, essential_functor_on_morphism, h_map_classical,
    hom_corpus, o_d_round_trip, spec_b_on_hom, stone_check, EssentialLattice,
};
use crate::lattice::{FiniteLattice, LatticeHom};
use crate::par::{self, Execution};
use crate::spectra::{b_map, BitopSpectrum, ClassicalSpectrum};

/// Random `(V, W)` pairs per lattice in the GBD suite.
pub const GBD_TRIALS: usize = 200;
/// Largest spectrum on which the adjunction is checked on every pair of
/// increasing sets; larger ones are sampled.
pub const ADJUNCTION_EXHAUSTIVE_MAX: usize = 10;
const ADJUNCTION_SAMPLES: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub subject: String,
    pub suite: String,
    pub status: Status,
    pub detail: String,
}

impl Verdict {
    pub fn new(subject: &str, suite: &str, result: Result<String, String>) -> Self {
        let (status, detail) = match result {
            Ok(d) => (Status::Pass, d),
            Err(d) => (Status::Fail, d),
        };
        Verdict {
            subject: subject.to_string(),
            suite: suite.to_string(),
            status,
            detail,
        }
    }

    pub fn skip(subject: &str, suite: &str, why: &str) -> Self {
        Verdict {
            subject: subject.to_string(),
            suite: suite.to_string(),
            status: Status::Skip,
            detail: why.to_string(),
        }
    }

    pub fn line(&self) -> String {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        };
        if self.detail.is_empty() {
            format!("{} {}: {status}", self.subject, self.suite)
        } else {
            format!(
                "{} {}: {status} ({})",
                self.subject, self.suite, self.detail
            )
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub lattices: usize,
    pub checks: usize,
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

/// A `key: value` line reported before any verdicts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fact {
    pub key: String,
    pub value: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub facts: Vec<Fact>,
    pub verdicts: Vec<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<Summary>,
}

impl Report {
    pub fn new(lattices: usize, verdicts: Vec<Verdict>) -> Self {
        let count = |s| verdicts.iter().filter(|v| v.status == s).count();
        let summary = Summary {
            lattices,
            checks: verdicts.len(),
            pass: count(Status::Pass),
            fail: count(Status::Fail),
            skip: count(Status::Skip),
        };
        Report {
            facts: Vec::new(),
            verdicts,
            summary: Some(summary),
        }
    }

    /// Facts followed by verdicts, with no summary line.
    pub fn listing(facts: Vec<Fact>, verdicts: Vec<Verdict>) -> Self {
        Report {
            facts,
            verdicts,
            summary: None,
        }
    }

    pub fn fact(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.facts.push(Fact {
            key: key.into(),
            value: value.into(),
        });
    }

    pub fn failures(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| v.status == Status::Fail)
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn render_text(&self) -> String {
        let mut out: String = self
            .facts
            .iter()
            .map(|f| format!("{}: {}\n", f.key, f.value))
            .collect();
        out.extend(self.verdicts.iter().map(|v| v.line() + "\n"));
        if let Some(s) = &self.summary {
            out.push_str(&format!(
                "lattices: {}, checks: {}, pass: {}, fail: {}, skip: {}\n",
                s.lattices, s.checks, s.pass, s.fail, s.skip
            ));
        }
        out
    }

    pub fn render_structured(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

fn check(
    ok: bool,
    pass: impl Into<String>,
    fail: impl FnOnce() -> String,
) -> Result<String, String> {
    if ok {
        Ok(pass.into())
    } else {
        Err(fail())
    }
}

fn seed_for(name: &str, salt: u64) -> u64 {
    let mut h = DefaultHasher::new();
    name.hash(&mut h);
    salt.hash(&mut h);
    h.finish()
}

fn random_nonempty(rng: &mut ChaCha8Rng, n: usize) -> ElemSet {
    loop {
        let s: ElemSet = (0..n).filter(|_| rng.gen_bool(1.0 / 3.0)).collect();
        if !s.is_empty() {
            return s;
        }
    }
}

/// Runs every per-lattice suite on `l`. If `l` fails the lattice axioms the
/// remaining suites are skipped.
pub fn verify_lattice(l: &FiniteLattice) -> Vec<Verdict> {
    let name = l.name();
    let mut out = Vec::new();
    if let Some(v) = l.axiom_violation() {
        out.push(Verdict::new(name, "LatticeAxioms", Err(v.to_string())));
        for suite in SUITES {
            out.push(Verdict::skip(name, suite, "not a lattice"));
        }
        return out;
    }
    out.push(Verdict::new(
        name,
        "LatticeAxioms",
        Ok(format!("{} elements", l.len())),
    ));

    let dist = l.distributivity();
    let distributive = dist.is_distributive();
    out.push(Verdict::new(
        name,
        "Distributivity",
        check(
            dist.detectors_agree(),
            match dist.forbidden_sublattice {
                None => "distributive: yes".to_string(),
                Some(f) => format!("distributive: no, {} sublattice", f.kind),
            },
            || format!("triple law and sublattice search disagree: {dist:?}"),
        ),
    ));

    let s = BitopSpectrum::build(l);
    let space = s.space();
    let en = |x: usize| l.elem_name(x).to_string();

    out.push(Verdict::new(name, "Copies", copies(&s)));
    out.push(Verdict::new(
        name,
        "TopDis",
        check(
            (s.deltas() == s.epsilons()) == distributive,
            format!("delta == epsilon: {}", yes(s.deltas() == s.epsilons())),
            || "delta == epsilon disagrees with distributivity".into(),
        ),
    ));
    let c = ClassicalSpectrum::build(l);
    let b = b_map(&c, &s);
    out.push(Verdict::new(
        name,
        "PCLat",
        check(
            b.bijective == distributive && b.injective,
            format!("{} prime ideals, {} comaximal pairs", c.len(), s.len()),
            || format!("b_L {b}"),
        ),
    ));
    out.push(Verdict::new(name, "Ord", ord(&s)));
    out.push(Verdict::new(
        name,
        "PairwiseT0",
        match space.pairwise_t0_witness() {
            None => Ok(String::new()),
            Some((x, y)) => Err(format!(
                "{} and {} not separated",
                space.label(x),
                space.label(y)
            )),
        },
    ));
    out.push(Verdict::new(name, "Transition", transition(&s)));
    out.push(Verdict::new(name, "DelComp", delcomp(&s)));
    out.push(Verdict::new(name, "GBD", gbd(&s)));

    let top = s.has_top_via_compactness();
    out.push(Verdict::new(
        name,
        "1IffComp",
        match top {
            Ok(t) => check(
                t.agrees,
                format!(
                    "subcover {} joins to {}",
                    l.set_name(t.subcover),
                    en(t.witness_top)
                ),
                || {
                    format!(
                        "subcover {} joins to {}",
                        l.set_name(t.subcover),
                        en(t.witness_top)
                    )
                },
            ),
            Err(e) => Err(e.to_string()),
        },
    ));
    let bot = s.has_bottom_via_fundamental();
    out.push(Verdict::new(
        name,
        "0IffFun",
        check(
            bot.agrees,
            format!(
                "epsilon family {} meets to {}",
                l.set_name(bot.family),
                en(bot.witness_bottom)
            ),
            || {
                format!(
                    "epsilon family {} meets to {}",
                    l.set_name(bot.family),
                    en(bot.witness_bottom)
                )
            },
        ),
    ));

    let prime = Bits::from_indices(s.prime_points());
    let prime_ideal = Bits::from_indices(s.prime_ideal_points());
    out.push(Verdict::new(
        name,
        "BCPrimal",
        check(
            prime.is_subset(prime_ideal),
            format!(
                "{} prime points, {} points with prime ideal",
                prime.len(),
                prime_ideal.len()
            ),
            || {
                format!(
                    "prime points {} lack a prime ideal",
                    space.set_label(prime - prime_ideal)
                )
            },
        ),
    ));
    out.push(Verdict::new(
        name,
        "PrimeDis",
        check(
            (prime.len() == s.len()) == distributive,
            format!("all points prime: {}", yes(prime.len() == s.len())),
            || "all-points-prime disagrees with distributivity".into(),
        ),
    ));

    let rep = s.essential_equals_delta();
    out.push(Verdict::new(
        name,
        "RepTh",
        check(rep.holds(), format!("{} essential sets = Im(delta)", rep.essential.len()), || {
            format!(
                "essential not in Im(delta): {:?}; Im(delta) not essential: {:?}; brute force agrees: {:?}",
                rep.missing_from_image, rep.missing_from_essential, rep.brute_force_agrees
            )
        }),
    ));
    out.push(Verdict::new(
        name,
        "PBD",
        match space.pairwise_bd_failure(Default::default()) {
            None => Ok(String::new()),
            Some(f) => Err(f.to_string()),
        },
    ));

    match EssentialLattice::build(space, &format!("E({name})")) {
        Ok(e) => {
            let cm = char_comaximal_of_essential(space, &e);
            out.push(Verdict::new(
                name,
                "CharMaxPair",
                check(
                    cm.holds(),
                    format!("{} points = {} comaximal pairs", s.len(), cm.pairs.len()),
                    || format!("{cm:?}"),
                ),
            ));
            out.push(Verdict::new(
                name,
                "Dual",
                delta_iso(&s, &e)
                    .map(|_| format!("delta_L: L = E(spec_B(L)), {} elements", e.lattice().len())),
            ));
        }
        Err(err) => {
            out.push(Verdict::new(name, "CharMaxPair", Err(err.to_string())));
            out.push(Verdict::new(name, "Dual", Err(err.to_string())));
        }
    }
    out.push(Verdict::new(
        name,
        "H_X",
        match big_h_map(space) {
            Ok(h) => check(
                h.holds(),
                format!("bihomeomorphism on {} points", h.map.len()),
                || {
                    format!(
                        "delta identity {}, sigma identity {}, bihomeomorphism {}, morphism {:?}",
                        h.delta_identity, h.sigma_identity, h.bihomeomorphism, h.morphism
                    )
                },
            ),
            Err(e) => Err(e.to_string()),
        },
    ));
    out.push(Verdict::new(
        name,
        "DisChar",
        match dischar_equivalences(space) {
            Ok(d) => check(
                d.agree() && d.doubly == distributive,
                format!(
                    "all four clauses {}",
                    if d.doubly { "true" } else { "false" }
                ),
                || format!("clauses {:?}", d.clauses()),
            ),
            Err(e) => Err(e.to_string()),
        },
    ));
    if distributive {
        out.push(Verdict::new(name, "StoneDual", stone(l, &c)));
    }
    out
}

/// Every suite name after `LatticeAxioms`, in report order.
pub const SUITES: [&str; 20] = [
    "Distributivity",
    "Copies",
    "TopDis",
    "PCLat",
    "Ord",
    "PairwiseT0",
    "Transition",
    "DelComp",
    "GBD",
    "1IffComp",
    "0IffFun",
    "BCPrimal",
    "PrimeDis",
    "RepTh",
    "PBD",
    "CharMaxPair",
    "Dual",
    "H_X",
    "DisChar",
    "StoneDual",
];

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn copies(s: &BitopSpectrum<'_>) -> Result<String, String> {
    let l = s.lattice();
    let n = l.len();
    let en = |x: usize| l.elem_name(x);
    for x in 0..n {
        if !s.epsilon(x).is_subset(s.delta(x)) {
            return Err(format!("epsilon({}) not inside delta({})", en(x), en(x)));
        }
        for y in 0..n {
            if x != y && (s.delta(x) == s.delta(y) || s.epsilon(x) == s.epsilon(y)) {
                return Err(format!(
                    "{} and {} share a delta or epsilon image",
                    en(x),
                    en(y)
                ));
            }
            if s.delta(l.join(x, y)) != s.delta(x) | s.delta(y) {
                return Err(format!("delta({} v {}) is not the union", en(x), en(y)));
            }
            if s.epsilon(l.meet(x, y)) != s.epsilon(x) & s.epsilon(y) {
                return Err(format!(
                    "epsilon({} ^ {}) is not the intersection",
                    en(x),
                    en(y)
                ));
            }
        }
    }
    Ok(format!("{n} elements"))
}

fn ord(s: &BitopSpectrum<'_>) -> Result<String, String> {
    let l = s.lattice();
    let sp = s.space();
    let pts = s.points();
    for p in 0..pts.len() {
        for q in 0..pts.len() {
            let tau = pts[q].ideal.set().is_subset(pts[p].ideal.set());
            let sigma = pts[p].filter.set().is_subset(pts[q].filter.set());
            if sp.leq_tau(p, q) != tau || sp.leq_sigma(p, q) != sigma {
                return Err(format!("at {} <= {}", pts[p].label(l), pts[q].label(l)));
            }
        }
    }
    Ok(format!("{} point pairs", pts.len() * pts.len()))
}

fn transition(s: &BitopSpectrum<'_>) -> Result<String, String> {
    let l = s.lattice();
    let sp = s.space();
    for x in 0..l.len() {
        let en = l.elem_name(x);
        if sp.op_d(s.delta(x)) != s.epsilon(x) {
            return Err(format!("d(delta({en})) != epsilon({en})"));
        }
        if sp.op_i(s.epsilon(x)) != s.delta(x) {
            return Err(format!("i(epsilon({en})) != delta({en})"));
        }
        if sp.is_stable(s.delta(x)) != Ok(true) {
            return Err(format!("delta({en}) not stable"));
        }
        if sp.is_costable(s.epsilon(x)) != Ok(true) {
            return Err(format!("epsilon({en}) not co-stable"));
        }
    }
    let adj = |a: PointSet, b: PointSet| sp.op_i(a).is_subset(b) == a.is_subset(sp.op_d(b));
    let pairs = if sp.len() <= ADJUNCTION_EXHAUSTIVE_MAX {
        let sig = sp.sigma().opens().map_err(|e| e.to_string())?;
        let tau = sp.tau().opens().map_err(|e| e.to_string())?;
        for a in sig.iter() {
            for b in tau.iter() {
                if !adj(a, b) {
                    return Err(format!(
                        "adjunction fails at A = {}, B = {}",
                        sp.set_label(a),
                        sp.set_label(b)
                    ));
                }
            }
        }
        format!("{} increasing pairs", sig.len() * tau.len())
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed_for(l.name(), 5));
        let full = sp.full();
        for _ in 0..ADJUNCTION_SAMPLES {
            let a = sp.sigma().up_closure(Bits(rng.gen::<u64>()) & full);
            let b = sp.tau().up_closure(Bits(rng.gen::<u64>()) & full);
            if !adj(a, b) {
                return Err(format!(
                    "adjunction fails at A = {}, B = {}",
                    sp.set_label(a),
                    sp.set_label(b)
                ));
            }
        }
        format!("{ADJUNCTION_SAMPLES} sampled increasing pairs")
    };
    Ok(pairs)
}

fn delcomp(s: &BitopSpectrum<'_>) -> Result<String, String> {
    let l = s.lattice();
    let n = l.len();
    let families: Vec<ElemSet> = if n <= 10 {
        l.carrier().subsets().filter(|v| !v.is_empty()).collect()
    } else {
        l.carrier()
            .subsets()
            .filter(|v| (1..=3).contains(&v.len()))
            .collect()
    };
    for &v in &families {
        for x in 0..n {
            let out = s.delta_compactness_check(x, v).map_err(|e| e.to_string())?;
            s.check_delta_compactness(x, v, &out)
                .map_err(|e| format!("x = {}, V = {}: {e}", l.elem_name(x), l.set_name(v)))?;
        }
    }
    Ok(format!("{} (x, V) cases", families.len() * n))
}

fn gbd(s: &BitopSpectrum<'_>) -> Result<String, String> {
    let l = s.lattice();
    let mut rng = ChaCha8Rng::seed_from_u64(seed_for(l.name(), 7));
    let mut witnesses = 0;
    for _ in 0..GBD_TRIALS {
        let v = random_nonempty(&mut rng, l.len());
        let w = random_nonempty(&mut rng, l.len());
        let out = s.gbd_witness(v, w).map_err(|e| e.to_string())?;
        s.check_gbd(v, w, &out)
            .map_err(|e| format!("V = {}, W = {}: {e}", l.set_name(v), l.set_name(w)))?;
        witnesses += matches!(out, crate::spectra::GbdOutcome::Witness { .. }) as usize;
    }
    Ok(format!(
        "{GBD_TRIALS} triples, {witnesses} witnesses, {} separating pairs",
        GBD_TRIALS - witnesses
    ))
}

fn stone(l: &FiniteLattice, c: &ClassicalSpectrum<'_>) -> Result<String, String> {
    let st = stone_check(l).map_err(|e| e.to_string())?;
    if !st.holds(l.len()) {
        return Err(format!("{st:?}"));
    }
    let h = h_map_classical(c.space()).map_err(|e| e.to_string())?;
    if !h.holds() {
        return Err(format!("h_X: {h:?}"));
    }
    if !o_d_round_trip(c.space()).map_err(|e| e.to_string())? {
        return Err("O(D(X)) round trip fails".into());
    }
    Ok(format!(
        "{} fundamental sets, b_L homeomorphism",
        st.fundamental_count
    ))
}

/// Verifies each lattice, fanning out per lattice while keeping input order.
pub fn verify_lattices(lattices: &[FiniteLattice], exec: Execution) -> Report {
    let per = par::map(exec, lattices, verify_lattice);
    Report::new(lattices.len(), per.into_iter().flatten().collect())
}

/// Corpus suites over every homomorphism between the given lattices:
/// classification, functor laws for `spec_B` and `E`, and the naturality of
/// `delta` and `b`.
pub fn verify_morphisms(subject: &str, lattices: &[FiniteLattice]) -> Vec<Verdict> {
    let homs = hom_corpus(lattices);
    let spectra: Vec<BitopSpectrum<'_>> = lattices.iter().map(BitopSpectrum::build).collect();
    let idx = |l: &FiniteLattice| lattices.iter().position(|m| std::ptr::eq(m, l)).unwrap();
    let mut out = Vec::new();

    let mut vacuous_only = 0;
    let mut class_err = None;
    let classes: Vec<_> = homs.iter().map(classify_hom).collect();
    for (h, c) in homs.iter().zip(&classes) {
        if c.quasi_proper && !c.proper {
            class_err
                .get_or_insert_with(|| format!("{} is quasi-proper but not proper", h.describe()));
        }
        if h.source().is_distributive()
            && h.target().is_distributive()
            && c.proper != c.quasi_proper
        {
            class_err.get_or_insert_with(|| {
                format!(
                    "{} splits proper/quasi-proper between distributive lattices",
                    h.describe()
                )
            });
        }
        vacuous_only += (c.proper && !c.quasi_proper) as usize;
    }
    out.push(Verdict::new(
        subject,
        "HomClass",
        match class_err {
            None => Ok(format!(
                "{} homs, {vacuous_only} proper but not quasi-proper",
                homs.len()
            )),
            Some(e) => Err(e),
        },
    ));

    let qp: Vec<&LatticeHom<'_>> = homs
        .iter()
        .zip(&classes)
        .filter(|(_, c)| c.quasi_proper)
        .map(|(h, _)| h)
        .collect();
    let morphism =
        |h: &LatticeHom<'_>| spec_b_on_hom(h, &spectra[idx(h.source())], &spectra[idx(h.target())]);

    let mut functor_err = None;
    let mut composable = 0;
    let essentials: Vec<Option<EssentialLattice>> = spectra
        .iter()
        .map(|s| EssentialLattice::build(s.space(), "E").ok())
        .collect();
    for h in &qp {
        let m = match morphism(h) {
            Ok(m) => m,
            Err(e) => {
                functor_err.get_or_insert_with(|| format!("{}: {e}", h.describe()));
                continue;
            }
        };
        if !m.verified() {
            functor_err.get_or_insert_with(|| {
                format!("spec_B({}) fails the morphism conditions", h.describe())
            });
        }
        if h.source() == h.target()
            && h.map().iter().enumerate().all(|(x, &y)| x == y)
            && m.map.iter().enumerate().any(|(p, &q)| p != q)
        {
            functor_err.get_or_insert_with(|| {
                format!(
                    "spec_B of identity on {} is not the identity",
                    h.source().name()
                )
            });
        }
        for g in &qp {
            let Some(gf) = h.then(g) else { continue };
            composable += 1;
            let (Ok(mg), Ok(mgf)) = (morphism(g), morphism(&gf)) else {
                functor_err.get_or_insert_with(|| {
                    format!("composite {} is not quasi-proper", gf.describe())
                });
                continue;
            };
            if mgf.map != compose(&mg.map, &m.map) {
                functor_err.get_or_insert_with(|| {
                    format!(
                        "spec_B({} then {}) breaks contravariance",
                        h.describe(),
                        g.describe()
                    )
                });
            }
            let (Some(el), Some(em), Some(en)) = (
                essentials[idx(h.source())].as_ref(),
                essentials[idx(h.target())].as_ref(),
                essentials[idx(g.target())].as_ref(),
            ) else {
                continue;
            };
            // E(spec_B(f)) : E(L) -> E(M), E(spec_B(g)) : E(M) -> E(N)
            let (Ok(ef), Ok(eg), Ok(egf)) = (
                essential_functor_on_morphism(&m.map, em, el),
                essential_functor_on_morphism(&mg.map, en, em),
                essential_functor_on_morphism(&mgf.map, en, el),
            ) else {
                functor_err.get_or_insert_with(|| {
                    format!("E fails on {} or {}", h.describe(), g.describe())
                });
                continue;
            };
            if ef.then(&eg).map(|c| c.map().to_vec()) != Some(egf.map().to_vec()) {
                functor_err.get_or_insert_with(|| {
                    format!(
                        "E({} then {}) breaks functoriality",
                        h.describe(),
                        g.describe()
                    )
                });
            }
        }
    }
    out.push(Verdict::new(
        subject,
        "FunctorLaws",
        match functor_err {
            None => Ok(format!(
                "{} quasi-proper homs, {composable} composable pairs",
                qp.len()
            )),
            Some(e) => Err(e),
        },
    ));

    let mut nat_err = None;
    let mut b_checked = 0;
    for h in &qp {
        match delta_natural_iso_check(h) {
            Ok(v) if v.holds() => {}
            Ok(v) => {
                nat_err.get_or_insert_with(|| format!("{}: {v:?}", h.describe()));
            }
            Err(e) => {
                nat_err.get_or_insert_with(|| format!("{}: {e}", h.describe()));
            }
        }
        if h.source().is_distributive() && h.target().is_distributive() {
            b_checked += 1;
            if b_naturality(h) != Ok(true) {
                nat_err.get_or_insert_with(|| format!("b naturality fails for {}", h.describe()));
            }
        }
    }
    out.push(Verdict::new(
        subject,
        "Naturality",
        match nat_err {
            None => Ok(format!(
                "delta squares on {} homs, b squares on {b_checked}",
                qp.len()
            )),
            Some(e) => Err(e),
        },
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::named;

    #[test]
    fn m5_report_lines() {
        let v = verify_lattice(&named::m5());
        assert!(v.iter().all(|v| v.status == Status::Pass), "{v:#?}");
        let rep = v.iter().find(|v| v.suite == "RepTh").unwrap();
        assert_eq!(rep.line(), "M5 RepTh: PASS (5 essential sets = Im(delta))");
        assert!(v.iter().all(|v| v.suite != "StoneDual"));
    }

    #[test]
    fn corrupted_meet_fails_with_witness() {
        let d = named::diamond();
        let bad = d.with_corrupted_meet(1, 2, 3);
        let v = verify_lattice(&bad);
        assert_eq!(v[0].status, Status::Fail);
        assert!(!v[0].detail.is_empty());
        let r = Report::new(1, v);
        assert!(!r.passed());
    }

    #[test]
    fn small_morphism_corpus() {
        let ls: Vec<FiniteLattice> = (1..=3)
            .map(named::chain)
            .chain([named::diamond()])
            .collect();
        let v = verify_morphisms("corpus", &ls);
        assert!(v.iter().all(|v| v.status == Status::Pass), "{v:#?}");
    }

    #[test]
    fn structured_output_parses() {
        let r = verify_lattices(&[named::chain(2)], Execution::Sequential);
        let json: serde_json::Value = serde_json::from_str(&r.render_structured()).unwrap();
        assert_eq!(json["summary"]["fail"], 0);
        assert!(json.get("facts").is_none());
        assert_eq!(r, verify_lattices(&[named::chain(2)], Execution::Parallel));
    }
}
