//! Exhaustive and seeded random lattice generation.
//!
//! A finite lattice is a bounded poset with all pairwise bounds, so the
//! generator fixes element `0` as bottom and `n-1` as top and only varies the
//! order among the inner elements. Inner relations are enumerated in a
//! natural labeling (`i <= j` only for `i < j`); every poset has one, so
//! every isomorphism class is reached and duplicates are removed by
//! canonical form.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::Bits;
use crate::catalog::format::CatalogError;
use crate::lattice::FiniteLattice;

/// Largest size accepted by exhaustive mode.
pub const EXHAUSTIVE_MAX: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorMode {
    Exhaustive,
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub mode: GeneratorMode,
    pub max_size: usize,
    pub seed: Option<u64>,
    /// Number of lattices to draw in random mode.
    pub count: usize,
}

impl GeneratorConfig {
    pub fn exhaustive(max_size: usize) -> Self {
        GeneratorConfig {
            mode: GeneratorMode::Exhaustive,
            max_size,
            seed: None,
            count: 0,
        }
    }

    pub fn random(seed: u64, max_size: usize, count: usize) -> Self {
        GeneratorConfig {
            mode: GeneratorMode::Random,
            max_size,
            seed: Some(seed),
            count,
        }
    }
}

/// Lattices described by `config`, deterministically ordered.
///
/// Exhaustive mode yields one representative per isomorphism class, sizes
/// ascending. Random mode yields `count` lattices of size `2..=max_size`
/// (repeats possible).
pub fn enumerate_lattices(
    config: &GeneratorConfig,
) -> Result<Box<dyn Iterator<Item = FiniteLattice>>, CatalogError> {
    match config.mode {
        GeneratorMode::Exhaustive => {
            if config.max_size > EXHAUSTIVE_MAX {
                return Err(CatalogError::SizeBoundExceeded {
                    requested: config.max_size,
                    max: EXHAUSTIVE_MAX,
                });
            }
            Ok(Box::new((1..=config.max_size).flat_map(lattices_of_size)))
        }
        GeneratorMode::Random => {
            let seed = config.seed.ok_or(CatalogError::MissingSeed)?;
            if config.max_size > 16 {
                return Err(CatalogError::SizeBoundExceeded {
                    requested: config.max_size,
                    max: 16,
                });
            }
            Ok(Box::new(RandomLattices {
                rng: ChaCha8Rng::seed_from_u64(seed),
                seed,
                max_size: config.max_size.max(2),
                left: config.count,
                emitted: 0,
            }))
        }
    }
}

/// Every lattice with exactly `n` elements up to isomorphism. Not bounded
/// by [`EXHAUSTIVE_MAX`]; the cost grows as `2^((n-2)(n-3)/2)`.
pub fn lattices_of_size(n: usize) -> Vec<FiniteLattice> {
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![FiniteLattice::chain(1).with_name("L1_1")];
    }
    let m = n - 2;
    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
        .collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let mut inner: Vec<Bits> = (0..m).map(Bits::singleton).collect();
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                inner[i].insert(j);
            }
        }
        if !is_transitive(&inner) {
            continue;
        }
        let Some(l) = bounded_lattice(n, &inner, String::new()) else {
            continue;
        };
        if seen.insert(canonical_form(&l)) {
            let name = format!("L{n}_{}", out.len() + 1);
            out.push(l.with_name(name));
        }
    }
    out
}

fn is_transitive(up: &[Bits]) -> bool {
    (0..up.len()).all(|x| up[x].iter().all(|y| up[y].is_subset(up[x])))
}

fn element_names(n: usize) -> Vec<String> {
    let inner = (0..n.saturating_sub(2)).map(|i| ((b'a' + i as u8) as char).to_string());
    std::iter::once("0".to_string())
        .chain(inner)
        .chain((n > 1).then(|| "1".to_string()))
        .collect()
}

/// Adds a bottom `0` and top `n-1` around the inner order and keeps the
/// result if it is a lattice.
fn bounded_lattice(n: usize, inner: &[Bits], name: String) -> Option<FiniteLattice> {
    let full = Bits::full(n);
    let mut up = vec![full];
    up.extend(
        inner
            .iter()
            .map(|s| Bits(s.0 << 1) | Bits::singleton(n - 1)),
    );
    up.push(Bits::singleton(n - 1));
    FiniteLattice::from_up_sets(name, element_names(n), up).ok()
}

/// Isomorphism-invariant code of the order relation: the least up-set
/// matrix over relabelings that respect the per-element invariants.
pub fn canonical_form(l: &FiniteLattice) -> Vec<u64> {
    let n = l.len();
    let covers = l.covers();
    let inv: Vec<(usize, usize, usize, usize, usize)> = (0..n)
        .map(|x| {
            let lower = covers.iter().filter(|c| c.1 == x).count();
            let upper = covers.iter().filter(|c| c.0 == x).count();
            (
                rank(l, x),
                l.down_set(x).len(),
                l.up_set(x).len(),
                lower,
                upper,
            )
        })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| inv[x]);
    // slot k of the relabeling may only hold elements with invariant inv[order[k]]
    let mut best: Option<Vec<u64>> = None;
    let mut perm = Vec::with_capacity(n);
    let mut used = Bits::EMPTY;
    search(l, &inv, &order, &mut perm, &mut used, &mut best);
    best.expect("at least one relabeling")
}

fn search(
    l: &FiniteLattice,
    inv: &[(usize, usize, usize, usize, usize)],
    order: &[usize],
    perm: &mut Vec<usize>,
    used: &mut Bits,
    best: &mut Option<Vec<u64>>,
) {
    let k = perm.len();
    if k == order.len() {
        let code = encode(l, perm);
        if best.as_ref().is_none_or(|b| code < *b) {
            *best = Some(code);
        }
        return;
    }
    let want = inv[order[k]];
    for x in 0..order.len() {
        if used.contains(x) || inv[x] != want {
            continue;
        }
        perm.push(x);
        used.insert(x);
        search(l, inv, order, perm, used, best);
        used.remove(x);
        perm.pop();
    }
}

/// Row `k` is the up-set of `perm[k]` in new labels.
fn encode(l: &FiniteLattice, perm: &[usize]) -> Vec<u64> {
    let mut pos = vec![0; perm.len()];
    for (k, &x) in perm.iter().enumerate() {
        pos[x] = k;
    }
    perm.iter()
        .map(|&x| l.up_set(x).iter().fold(0u64, |acc, y| acc | 1 << pos[y]))
        .collect()
}

/// Length of the longest chain from the bottom to `x`.
fn rank(l: &FiniteLattice, x: usize) -> usize {
    let below = l.down_set(x) - Bits::singleton(x);
    below.iter().map(|y| rank(l, y) + 1).max().unwrap_or(0)
}

struct RandomLattices {
    rng: ChaCha8Rng,
    seed: u64,
    max_size: usize,
    left: usize,
    emitted: usize,
}

impl Iterator for RandomLattices {
    type Item = FiniteLattice;

    fn next(&mut self) -> Option<FiniteLattice> {
        if self.left == 0 {
            return None;
        }
        loop {
            let n = self.rng.gen_range(2..=self.max_size);
            let m = n - 2;
            let density: f64 = self.rng.gen_range(0.2..0.8);
            let mut inner: Vec<Bits> = (0..m).map(Bits::singleton).collect();
            for i in (0..m).rev() {
                for j in i + 1..m {
                    if !inner[i].contains(j) && self.rng.gen_bool(density) {
                        let uj = inner[j];
                        inner[i] |= uj;
                    }
                }
            }
            let name = format!("R{}_{}", self.seed, self.emitted + 1);
            if let Some(l) = bounded_lattice(n, &inner, name) {
                self.left -= 1;
                self.emitted += 1;
                return Some(l);
            }
        }
    }
}
