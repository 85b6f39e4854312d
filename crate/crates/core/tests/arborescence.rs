use std::collections::BTreeSet;
use std::time::Instant;

use bottomless::arborescence::*;
use bottomless::colouring::Colouring;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn trimming_figure() -> (Branching, Colouring) {
    // 1 red over q1 = 3, 2 uncoloured over q1, 4 red over q2 = 5,
    // q = 6 under q1 and q2, blue 7, 8, 10 under q' = 11, blue 9 over 10.
    let mut b = Branching::new();
    for (v, ps) in [
        (1, vec![]),
        (2, vec![]),
        (3, vec![1, 2]),
        (4, vec![]),
        (5, vec![4]),
        (6, vec![3, 5]),
        (7, vec![]),
        (8, vec![]),
        (9, vec![]),
        (10, vec![9]),
        (11, vec![7, 8, 10]),
        (12, vec![6, 11]),
    ] {
        b.present(v, ps);
    }
    let mut c = Colouring::new(2);
    for v in [1, 4] {
        c.assign(v, 1).unwrap();
    }
    for v in [7, 8, 9, 10] {
        c.assign(v, 2).unwrap();
    }
    (b, c)
}

#[test]
fn trimming_figure_output() {
    let (b, c) = trimming_figure();
    assert_eq!(validate_branching(&b), Ok(()));
    let t = trim(&b, &c, 12, 2, 2);
    let kept: BTreeSet<u32> = t.nodes.keys().copied().collect();
    assert_eq!(kept, BTreeSet::from([12, 6, 3, 1, 11, 7, 10, 9]));
    assert_eq!(t.key, "u[u[c2[],c2[c2[]]],u[u[c1[]]]]");
    assert_eq!(type_vector(&b, &c, 12, 2), vec![0, 0]);
    assert_eq!(t.type_of(11, 2), vec![0, 2]);
}

#[test]
fn isomorphic_branches_collapse() {
    let mut b = Branching::new();
    b.present(0, vec![]);
    b.present(1, vec![]);
    b.present(2, vec![0, 1]);
    let mut c = Colouring::new(2);
    c.assign(0, 1).unwrap();
    c.assign(1, 1).unwrap();
    let t = trim(&b, &c, 2, 3, 2);
    assert_eq!(t.nodes.len(), 2);
    let mut single = Branching::new();
    single.present(0, vec![]);
    single.present(2, vec![0]);
    assert_eq!(trim(&single, &c, 2, 3, 2).key, t.key);
}

#[derive(Clone)]
struct Tree {
    colour: Vec<Option<u32>>,
    kids: Vec<Vec<usize>>,
}

fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> Tree {
    let colour = (0..n).map(|_| if rng.random_bool(0.4) { None } else { Some(rng.random_range(1..=2)) }).collect();
    let mut kids = vec![Vec::new(); n];
    for v in 1..n {
        kids[rng.random_range(0..v)].push(v);
    }
    Tree { colour, kids }
}

fn brute_iso(a: &Tree, x: usize, b: &Tree, y: usize) -> bool {
    if a.colour[x] != b.colour[y] || a.kids[x].len() != b.kids[y].len() {
        return false;
    }
    fn matching(a: &Tree, xs: &[usize], b: &Tree, ys: &mut Vec<usize>) -> bool {
        let Some((&first, rest)) = xs.split_first() else { return true };
        for i in 0..ys.len() {
            if brute_iso(a, first, b, ys[i]) {
                let y = ys.remove(i);
                if matching(a, rest, b, ys) {
                    return true;
                }
                ys.insert(i, y);
            }
        }
        false
    }
    matching(a, &a.kids[x], b, &mut b.kids[y].clone())
}

fn key(t: &Tree) -> String {
    canonical_form(0, &|v| t.kids[v as usize].iter().map(|&u| u as u32).collect(), &|v| t.colour[v as usize])
}

#[test]
fn canonical_form_agrees_with_brute_isomorphism() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut agree_equal = 0;
    for _ in 0..10_000 {
        let n = rng.random_range(1..=8);
        let a = random_tree(&mut rng, n);
        let b = if rng.random_bool(0.5) {
            // relabel a by a random permutation of child lists
            let mut b = a.clone();
            for ks in &mut b.kids {
                ks.reverse();
            }
            b
        } else {
            random_tree(&mut rng, n)
        };
        let iso = brute_iso(&a, 0, &b, 0);
        assert_eq!(key(&a) == key(&b), iso);
        agree_equal += iso as usize;
    }
    assert!(agree_equal > 1000);
}

#[test]
fn root_to_leaf_colouring_hits_every_colour() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..500 {
        let n = rng.random_range(1..=200);
        let k = rng.random_range(1..=4);
        let b = random_geometric(&mut rng, n, false).reversed();
        let c = colour_root_to_leaf(&b, k).unwrap();
        assert!(paths_missing_colours(&b, &c, k as usize).is_empty());
    }
}

#[test]
fn realisations_follow_their_contract() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for round in 0..100 {
        let n = rng.random_range(1..=50);
        let general = random_geometric(&mut rng, n, false);
        let suffix = random_geometric(&mut rng, n, true);
        for mode in RealiseMode::ALL {
            let steps = !matches!(mode, RealiseMode::TowersFromAbove | RealiseMode::NestedFromBelow);
            let b = if steps { &suffix } else { &general };
            let real = realise_branching(b, mode).unwrap();
            assert!(real.family.general_position());
            assert_eq!(check_realisation(b, &real, 4), Ok(()), "round {round} mode {mode}");
        }
    }
}

#[test]
fn adversary_defeats_builtin_strategies() {
    for (k, m) in [(2, 2), (2, 3), (3, 2)] {
        for name in STRATEGY_NAMES {
            let start = Instant::now();
            let mut s = strategy_by_name(name, 1).unwrap();
            let t = adversary_run(s.as_mut(), AdversaryConfig::new(k, m, 10_000)).unwrap();
            println!("{name} k={k} m={m}: {:?} after {} vertices in {:?}", t.outcome, t.branching.len(), start.elapsed());
            assert!(t.outcome.is_defeat(), "{name} k={k} m={m}");
            if let Outcome::Defeated { ref path, .. } = t.outcome {
                assert!(check_m_proper(&t.branching, &t.colouring, m).contains(path));
            }
        }
    }
}

#[test]
fn adversary_runs_replay() {
    let run = || {
        let mut s = strategy_by_name("random", 9).unwrap();
        adversary_run(s.as_mut(), AdversaryConfig::new(2, 3, 2_000)).unwrap()
    };
    let (a, b) = (run(), run());
    assert_eq!(a.events, b.events);
    let mut coloured = BTreeSet::new();
    for e in &a.events {
        if let TranscriptEvent::Assign { vertex, .. } = e {
            assert!(coloured.insert(*vertex));
        }
    }
    assert!(a.catalogue_sizes.windows(2).all(|w| w[0] <= w[1]));
}
