use bottomless::colouring::{
    check_aba_free, colour_config_plus_nested, colour_configuration, colour_hanging, colour_tower_free,
    dynamic_colour, hanging_to_dynamic, verify_configuration_property, Direction, DynamicEvent,
    DEFAULT_SEARCH_BUDGET,
};
use bottomless::configurations::PairConfig;
use bottomless::geometry::witness_points;
use bottomless::oracle::verify_polychromatic;
use bottomless::rational::q;
use bottomless::sample;
use bottomless::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn finite_cells() -> Vec<(PairConfig, Direction)> {
    let mut out = Vec::new();
    for c in PairConfig::CHAINS {
        for d in Direction::ALL {
            if colour_configuration(&bottomless::Family::empty(), 1, c, d).is_ok() {
                out.push((c, d));
            }
        }
    }
    out
}

#[test]
fn finite_cells_match_table() {
    assert_eq!(finite_cells().len(), 10);
}

#[test]
fn configuration_property_on_random_families() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cells = finite_cells();
    for _ in 0..150 {
        let n = rng.random_range(1..=8);
        let f = sample::random_family(&mut rng, n);
        let k = rng.random_range(1..=4);
        for &(c, d) in &cells {
            let col = colour_configuration(&f, k, c, d).unwrap();
            let v = verify_configuration_property(&f, &col, c, k as usize);
            assert!(v.is_empty(), "{c} {d} k={k} {:?}", f.to_json().to_string());
        }
    }
}

#[test]
fn configuration_property_on_pure_families() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for &(c, d) in &finite_cells() {
        for _ in 0..30 {
            let n = rng.random_range(1..=10);
            let f = sample::random_pure_config(&mut rng, c, n);
            let col = colour_configuration(&f, n as u32, c, d).unwrap();
            assert!(verify_configuration_property(&f, &col, c, n).is_empty());
        }
    }
}

#[test]
fn config_plus_nested_on_random_families() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..200 {
        let n = rng.random_range(1..=8);
        let f = sample::random_family(&mut rng, n);
        let k = rng.random_range(1..=4);
        for c in [PairConfig::Tower, PairConfig::IncreasingSteps, PairConfig::DecreasingSteps] {
            let col = colour_config_plus_nested(&f, k, c).unwrap();
            for label in [c, PairConfig::Nested] {
                let v = verify_configuration_property(&f, &col, label, k as usize);
                assert!(v.is_empty(), "{c}+nested fails on {label}, k={k} {}", f.to_json());
            }
        }
    }
}

fn brute_aba(f: &bottomless::Family) -> bool {
    let mut order: Vec<_> = f.rects().iter().collect();
    order.sort_by(|a, b| a.l.cmp(&b.l));
    let covers: Vec<Vec<u32>> = witness_points(f).into_iter().map(|w| w.cover).collect();
    for a in &covers {
        for b in &covers {
            for x in 0..order.len() {
                for y in x + 1..order.len() {
                    for z in y + 1..order.len() {
                        let (ix, iy, iz) = (order[x].id, order[y].id, order[z].id);
                        if a.contains(&ix) && !b.contains(&ix) && a.contains(&iz) && !b.contains(&iz)
                            && b.contains(&iy) && !a.contains(&iy)
                        {
                            return true;
                        }
                    }
                }
            }
        }
    }
    false
}

#[test]
fn aba_checker_matches_triple_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..300 {
        let n = rng.random_range(1..=7);
        let f = sample::random_family(&mut rng, n);
        assert_eq!(check_aba_free(&f).is_some(), brute_aba(&f));
        let tf = sample::random_tower_free(&mut rng, n);
        assert!(check_aba_free(&tf).is_none());
    }
}

#[test]
fn tower_free_search_is_polychromatic() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..60 {
        let n = rng.random_range(1..=7);
        let k = rng.random_range(1..=3);
        let f = sample::random_tower_free(&mut rng, n);
        let c = colour_tower_free(&f, k, DEFAULT_SEARCH_BUDGET).unwrap();
        assert!(verify_polychromatic(&f, &c, k as usize, 2 * k as usize - 1).is_empty());
    }
}

#[test]
fn hanging_colouring_is_polychromatic() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..200 {
        let n = rng.random_range(1..=10);
        let k = rng.random_range(1..=3);
        let f = sample::random_hanging(&mut rng, n);
        let c = colour_hanging(&f, k).unwrap();
        assert!(c.is_total_on(&f));
        assert!(verify_polychromatic(&f, &c, k as usize, 2 * k as usize - 1).is_empty(), "{}", f.to_json());
    }
}

#[test]
fn hanging_covers_are_live_prefixes() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..100 {
        let n = rng.random_range(1..=8);
        let f = sample::random_hanging(&mut rng, n);
        let dual = hanging_to_dynamic(&f).unwrap();
        let mut prefixes = std::collections::BTreeSet::new();
        let mut live: Vec<(bottomless::Q, u32)> = Vec::new();
        for e in &dual.events {
            match e {
                DynamicEvent::Appear { x, id } => {
                    let at = live.partition_point(|p| p.0 < *x);
                    live.insert(at, (x.clone(), *id));
                }
                DynamicEvent::DisappearLeftmost => {
                    live.remove(0);
                }
            }
            for len in 1..=live.len() {
                let mut p: Vec<u32> = live[..len].iter().map(|p| p.1).collect();
                p.sort_unstable();
                prefixes.insert(p);
            }
        }
        for w in witness_points(&f) {
            assert!(prefixes.contains(&w.cover), "{:?} not a prefix in {} {:?}", w.cover, f.to_json(), dual.events);
        }
    }
}

#[test]
fn dynamic_invariants_on_long_random_streams() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    for k in 1..=5u32 {
        let mut events = Vec::new();
        let mut live = 0usize;
        for id in 0..2_000u32 {
            if live > 0 && rng.random_bool(0.45) {
                events.push(DynamicEvent::DisappearLeftmost);
                live -= 1;
            } else {
                events.push(DynamicEvent::Appear { x: q(rng.random_range(0..1_000_000)) / q(id as i64 + 1) + q(id as i64) / q(10_000_000), id });
                live += 1;
            }
        }
        // Positions may collide; colliding streams are rejected, not miscoloured.
        match dynamic_colour(&events, k) {
            Ok(trace) => assert_eq!(trace.steps.len(), events.len()),
            Err(Error::Order(_)) => {}
            Err(e) => panic!("{e}"),
        }
    }
}
