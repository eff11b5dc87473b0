mod common;

use proptest::prelude::*;
use rand::Rng;

use common::{random_game, random_lasso, random_machine, rng, Shape};
use reachgames::arena::check_lasso;
use reachgames::io::{parse_game, parse_machine, serialize_game, serialize_machine, Format};
use reachgames::mealy::product_game;
use reachgames::zerosum::{attractor, min_cost_reach_values, ZeroSumView};
use reachgames::{cost_of_history, cost_of_lasso, visit_set, Cost, Lasso, ReachabilityGame, WeightedArena};

const SMALL: Shape = Shape { max_vertices: 6, env: 2, max_weight: 3, max_out: 3 };

fn unit_weights(g: &ReachabilityGame) -> WeightedArena {
    let a = g.arena();
    let mut b = WeightedArena::new(a.players());
    for v in a.vertices() {
        b.add_vertex(a.name(v), a.owner(v));
    }
    for e in a.edges() {
        b.add_edge(e.from, e.to, &vec![1; a.players()]);
    }
    b
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn games_round_trip(seed in any::<u64>()) {
        let g = random_game(&mut rng(seed), SMALL);
        for f in [Format::Text, Format::Json] {
            prop_assert_eq!(&parse_game(&serialize_game(&g, f)).unwrap(), &g);
        }
    }

    #[test]
    fn machines_round_trip(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_game(&mut r, SMALL);
        let m = random_machine(&mut r, &g, 3);
        for f in [Format::Text, Format::Json] {
            prop_assert_eq!(&parse_machine(&serialize_machine(&m, &g, f), &g).unwrap(), &m);
        }
    }

    #[test]
    fn canonical_form_is_the_same_play(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_game(&mut r, SMALL);
        let pi = random_lasso(&mut r, &g, 20);
        let c = pi.canonical();
        prop_assert!(c.is_canonical());
        prop_assert!(c.len() <= pi.len());
        let horizon = 3 * pi.len();
        prop_assert_eq!(c.unrolled(horizon), pi.unrolled(horizon));
        prop_assert_eq!(cost_of_lasso(&g, &c).unwrap(), cost_of_lasso(&g, &pi).unwrap());
    }

    #[test]
    fn unvisited_means_infinite_cost(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_game(&mut r, SMALL);
        let pi = random_lasso(&mut r, &g, 20);
        let costs = cost_of_lasso(&g, &pi).unwrap();
        let seen = visit_set(&g, &pi.head()).unwrap();
        for i in 0..g.players() {
            prop_assert_eq!(costs[i] == Cost::Top, !seen.contains(i));
        }
    }

    #[test]
    fn cost_splits_over_a_target_free_prefix(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_game(&mut r, SMALL);
        let h = random_lasso(&mut r, &g, 20).unrolled(12);
        let k = r.gen_range(1..h.len());
        let a = g.arena();
        for i in 0..g.players() {
            if h[..k].iter().any(|&v| g.in_target(v, i)) {
                continue;
            }
            let step = a.path_weight(&h[..=k], i);
            let want = cost_of_history(&g, &h[k..])[i].plus(step);
            prop_assert_eq!(cost_of_history(&g, &h)[i], want);
        }
    }

    #[test]
    fn removing_a_target_free_cycle_never_raises_costs(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_game(&mut r, SMALL);
        let h = random_lasso(&mut r, &g, 20).unrolled(15);
        let before = cost_of_history(&g, &h);
        for a in 0..h.len() {
            for b in a + 1..h.len() {
                if h[a] == h[b] {
                    let mut cut = h[..a].to_vec();
                    cut.extend_from_slice(&h[b..]);
                    let after = cost_of_history(&g, &cut);
                    for i in 0..g.players() {
                        if h[a..b].iter().any(|&v| g.in_target(v, i)) {
                            continue;
                        }
                        prop_assert!(after[i] <= before[i]);
                    }
                }
            }
        }
    }

    #[test]
    fn attractor_is_where_unit_values_are_finite(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_game(&mut r, SMALL);
        let unit = unit_weights(&g);
        let who = r.gen_range(0..g.players());
        let target: Vec<bool> = unit.vertices().map(|_| r.gen_bool(0.3)).collect();
        let attr = attractor(ZeroSumView::new(&unit, who), &target);
        let vals = min_cost_reach_values(ZeroSumView::new(&unit, who), &target, who);
        for v in unit.vertices() {
            prop_assert_eq!(attr[v], vals[v] != Cost::Top);
        }
    }

    #[test]
    fn product_plays_project_to_plays(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_game(&mut r, SMALL);
        let m = random_machine(&mut r, &g, 2);
        let p = product_game(&g, &m).unwrap();
        let pi = random_lasso(&mut r, &p.game, 20);
        let proj: Lasso = p.project(&pi);
        prop_assert!(check_lasso(&g, &proj).is_ok());
        prop_assert_eq!(proj.first(), g.initial());
        // costs agree: move vertices carry the weights, state vertices none
        prop_assert_eq!(cost_of_lasso(&p.game, &pi).unwrap(), cost_of_lasso(&g, &proj).unwrap());
    }
}
