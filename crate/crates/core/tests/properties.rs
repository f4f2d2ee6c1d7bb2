use proptest::prelude::*;

use lattice_spectra::bits::Bits;
use lattice_spectra::catalog::generate::canonical_form;
use lattice_spectra::catalog::{enumerate_lattices, parse_lattice, render, GeneratorConfig};
use lattice_spectra::par::Execution;
use lattice_spectra::spectra::{
    comaximal_pairs, comaximal_pairs_with, extend_to_comaximal, is_comaximal, BitopSpectrum,
};
use lattice_spectra::FiniteLattice;

fn random_lattice(seed: u64, max: usize) -> FiniteLattice {
    enumerate_lattices(&GeneratorConfig::random(seed, max, 1))
        .unwrap()
        .next()
        .unwrap()
}

fn lattice() -> impl Strategy<Value = FiniteLattice> {
    (any::<u64>(), 2usize..=9).prop_map(|(seed, max)| random_lattice(seed, max))
}

fn subset(n: usize, mask: u64) -> Bits {
    Bits(mask) & Bits::full(n)
}

/// Principal ideal/filter pairs that are comaximal, decided with the order
/// alone: `(x]` is maximal among ideals missing `[y)` and `[y)` maximal
/// among filters missing `(x]`.
fn comaximal_oracle(l: &FiniteLattice) -> Vec<(usize, usize)> {
    let n = l.len();
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if l.leq(y, x) {
                continue;
            }
            let ideal_max = (0..n).all(|z| !(l.leq(x, z) && z != x) || l.leq(y, z));
            let filter_max = (0..n).all(|w| !(l.leq(w, y) && w != y) || l.leq(w, x));
            if ideal_max && filter_max {
                out.push((x, y));
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lattice_laws(l in lattice()) {
        let n = l.len();
        for x in 0..n {
            prop_assert_eq!(l.meet(x, x), x);
            for y in 0..n {
                prop_assert_eq!(l.meet(x, y), l.meet(y, x));
                prop_assert_eq!(l.join(x, l.meet(x, y)), x);
                prop_assert_eq!(l.meet(x, l.join(x, y)), x);
                prop_assert_eq!(l.leq(x, y), l.meet(x, y) == x);
                for z in 0..n {
                    prop_assert_eq!(l.meet(x, l.meet(y, z)), l.meet(l.meet(x, y), z));
                    prop_assert_eq!(l.join(x, l.join(y, z)), l.join(l.join(x, y), z));
                }
            }
        }
    }

    #[test]
    fn render_parse_round_trip(l in lattice()) {
        let back = parse_lattice(&render(&l)).unwrap();
        prop_assert_eq!(&back, &l);
    }

    #[test]
    fn canonical_form_survives_relabeling(l in lattice(), rot in 0usize..8) {
        let n = l.len();
        let perm: Vec<usize> = (0..n).map(|i| (i + rot) % n).collect();
        let names: Vec<String> = perm.iter().map(|&i| l.elem_name(i).to_string()).collect();
        let pos = |x: usize| perm.iter().position(|&p| p == x).unwrap();
        let covers: Vec<(usize, usize)> = l.covers().into_iter().map(|(a, b)| (pos(a), pos(b))).collect();
        let relabeled = FiniteLattice::build("r", names, &covers).unwrap();
        prop_assert_eq!(canonical_form(&l), canonical_form(&relabeled));
    }

    #[test]
    fn comaximal_pairs_match_order_oracle(l in lattice()) {
        let got: Vec<(usize, usize)> = comaximal_pairs(&l)
            .iter()
            .map(|p| (l.join_all(p.ideal.set()).unwrap(), l.meet_all(p.filter.set()).unwrap()))
            .collect();
        let mut got_sorted = got.clone();
        got_sorted.sort();
        prop_assert_eq!(got_sorted, comaximal_oracle(&l));
        prop_assert_eq!(comaximal_pairs_with(&l, Execution::Parallel), comaximal_pairs_with(&l, Execution::Sequential));
        prop_assert!(!got.is_empty());
    }

    #[test]
    fn copies_and_distributivity(l in lattice()) {
        let s = BitopSpectrum::build(&l);
        let n = l.len();
        for x in 0..n {
            prop_assert!(s.epsilon(x).is_subset(s.delta(x)));
            for y in 0..n {
                prop_assert_eq!(s.delta(l.join(x, y)), s.delta(x) | s.delta(y));
                prop_assert_eq!(s.epsilon(l.meet(x, y)), s.epsilon(x) & s.epsilon(y));
                if x != y {
                    prop_assert_ne!(s.delta(x), s.delta(y));
                    prop_assert_ne!(s.epsilon(x), s.epsilon(y));
                }
            }
        }
        let d = l.is_distributive();
        prop_assert_eq!(s.deltas() == s.epsilons(), d);
        prop_assert_eq!(s.prime_points().len() == s.len(), d);
        prop_assert!(s.essential_equals_delta().holds());
    }

    #[test]
    fn extension_reaches_a_comaximal_pair(l in lattice(), x in 0usize..16, y in 0usize..16) {
        let (x, y) = (x % l.len(), y % l.len());
        prop_assume!(!l.leq(y, x));
        let i = l.principal_ideal(x).set();
        let f = l.principal_filter(y).set();
        let p = extend_to_comaximal(&l, i, f).unwrap();
        prop_assert!(i.is_subset(p.ideal.set()) && f.is_subset(p.filter.set()));
        prop_assert!(is_comaximal(&l, p.ideal.set(), p.filter.set()));
        if is_comaximal(&l, i, f) {
            prop_assert_eq!(p.ideal.set(), i);
            prop_assert_eq!(p.filter.set(), f);
        }
    }

    #[test]
    fn transition_adjunction(l in lattice(), a in any::<u64>(), b in any::<u64>()) {
        let s = BitopSpectrum::build(&l);
        let sp = s.space();
        let a = sp.sigma().up_closure(subset(sp.len(), a));
        let b = sp.tau().up_closure(subset(sp.len(), b));
        prop_assert_eq!(sp.op_i(a).is_subset(b), a.is_subset(sp.op_d(b)));
        for x in 0..l.len() {
            prop_assert_eq!(sp.op_d(s.delta(x)), s.epsilon(x));
            prop_assert_eq!(sp.op_i(s.epsilon(x)), s.delta(x));
        }
    }

    #[test]
    fn gbd_outcomes_certify_their_branch(l in lattice(), v in 1u64.., w in 1u64..) {
        let (v, w) = (subset(l.len(), v), subset(l.len(), w));
        prop_assume!(!v.is_empty() && !w.is_empty());
        let s = BitopSpectrum::build(&l);
        let out = s.gbd_witness(v, w).unwrap();
        prop_assert_eq!(s.check_gbd(v, w, &out), Ok(()));
        let contained = s.meet_eps(v).is_subset(s.join_delta(w));
        prop_assert_eq!(contained, matches!(out, lattice_spectra::spectra::GbdOutcome::Witness { .. }));
    }
}
