//! Brute-force cross-checks for the lattice generator and the
//! distributivity detectors.

use std::collections::BTreeSet;

use lattice_spectra::catalog::generate::lattices_of_size;
use lattice_spectra::FiniteLattice;

/// `rel[i][j]` means `i <= j`.
type Rel = Vec<Vec<bool>>;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

fn is_lattice(rel: &Rel) -> bool {
    let n = rel.len();
    let bound = |x: usize, y: usize, up: bool| {
        let cands: Vec<usize> = (0..n)
            .filter(|&z| {
                if up {
                    rel[x][z] && rel[y][z]
                } else {
                    rel[z][x] && rel[z][y]
                }
            })
            .collect();
        cands
            .iter()
            .filter(|&&z| {
                cands
                    .iter()
                    .all(|&w| if up { rel[z][w] } else { rel[w][z] })
            })
            .count()
            == 1
    };
    (0..n).all(|x| (0..n).all(|y| bound(x, y, true) && bound(x, y, false)))
}

fn encode(rel: &Rel, perm: &[usize]) -> Vec<bool> {
    let n = rel.len();
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            out.push(rel[perm[i]][perm[j]]);
        }
    }
    out
}

/// Isomorphism classes of lattices on `n` labeled points: every pair is
/// incomparable or ordered one of two ways, giving `3^(n choose 2)`
/// candidate relations.
fn oracle_classes(n: usize) -> BTreeSet<Vec<bool>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let perms = permutations(n);
    let mut classes = BTreeSet::new();
    let total = 3usize.pow(pairs.len() as u32);
    for mut code in 0..total {
        let mut rel = vec![vec![false; n]; n];
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(i, j) in &pairs {
            match code % 3 {
                1 => rel[i][j] = true,
                2 => rel[j][i] = true,
                _ => {}
            }
            code /= 3;
        }
        let transitive =
            (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| !(rel[a][b] && rel[b][c]) || rel[a][c])));
        if !transitive || !is_lattice(&rel) {
            continue;
        }
        let canon = perms.iter().map(|p| encode(&rel, p)).min().unwrap();
        classes.insert(canon);
    }
    classes
}

fn relation(l: &FiniteLattice) -> Rel {
    (0..l.len())
        .map(|x| (0..l.len()).map(|y| l.leq(x, y)).collect())
        .collect()
}

#[test]
fn generator_matches_brute_force_up_to_five() {
    for n in 1..=5 {
        let oracle = oracle_classes(n);
        let perms = permutations(n);
        let generated: BTreeSet<Vec<bool>> = lattices_of_size(n)
            .iter()
            .map(|l| {
                let rel = relation(l);
                perms.iter().map(|p| encode(&rel, p)).min().unwrap()
            })
            .collect();
        assert_eq!(
            generated.len(),
            lattices_of_size(n).len(),
            "duplicate classes at n = {n}"
        );
        assert_eq!(generated, oracle, "n = {n}");
    }
}

fn triple_law(l: &FiniteLattice) -> bool {
    let n = l.len();
    (0..n).all(|x| {
        (0..n)
            .all(|y| (0..n).all(|z| l.meet(x, l.join(y, z)) == l.join(l.meet(x, y), l.meet(x, z))))
    })
}

#[test]
fn distributivity_detectors_agree_at_size_seven() {
    let ls = lattices_of_size(7);
    assert_eq!(ls.len(), 53);
    let mut distributive = 0;
    for l in &ls {
        let d = l.distributivity();
        assert!(d.detectors_agree(), "{}", l.name());
        assert_eq!(d.is_distributive(), triple_law(l), "{}", l.name());
        distributive += d.is_distributive() as usize;
    }
    // distributive lattices with 7 elements up to isomorphism
    assert_eq!(distributive, 8);
}
