use proptest::prelude::*;

use spm_core::game::{attractor, scc_decompose};
use spm_core::io::{convert_convention, from_game, generate, parse_pgsolver, to_game, write_pgsolver, Convention, Family};
use spm_core::measure::cmp_upto;
use spm_core::solvers::{espm, solve_with_strategies, spm};
use spm_core::{LiftPolicy, Measure, MeasureDomain, MeasureMap, ParityGame, Player, VertexSet};

fn game() -> impl Strategy<Value = ParityGame> {
    (1usize..=8, 1u32..=6, 1usize..=4, any::<u64>()).prop_map(|(n, d, max_out, seed)| {
        let family = Family::Random {
            n,
            d,
            min_out: 1,
            max_out: max_out.min(n),
        };
        to_game(&generate(family, seed).unwrap()).unwrap().0
    })
}

fn caps() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec(0u32..=3, 1..=6)
}

/// Every element of the domain, top included, in ascending order.
fn elements(domain: &MeasureDomain) -> Vec<Measure> {
    let mut all = vec![Vec::new()];
    for &cap in domain.caps() {
        all = all
            .into_iter()
            .flat_map(|prefix: Vec<u32>| {
                (0..=cap).map(move |x| {
                    let mut t = prefix.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    let mut out: Vec<Measure> = all.into_iter().map(Measure::Finite).collect();
    out.push(Measure::Top);
    out.sort();
    out
}

fn pick(domain: &MeasureDomain, index: usize) -> Measure {
    let all = elements(domain);
    all[index % all.len()].clone()
}

fn random_map(game: &ParityGame, domain: &MeasureDomain, picks: &[usize]) -> MeasureMap {
    let mut map = MeasureMap::for_domain(game, domain);
    for v in game.vertices() {
        map.set(v, &pick(domain, picks[v % picks.len()]));
    }
    map
}

proptest! {
    #[test]
    fn prog_is_least_admissible(caps in caps(), priority in 0usize..6, index in any::<usize>()) {
        let domain = MeasureDomain::from_caps(caps);
        let priority = priority % domain.tuple_len();
        let succ = pick(&domain, index);
        let least = elements(&domain)
            .into_iter()
            .find(|m| {
                if succ.is_top() {
                    m.is_top()
                } else if priority % 2 == 0 {
                    cmp_upto(m, &succ, priority).is_ge()
                } else {
                    cmp_upto(m, &succ, priority).is_gt()
                }
            })
            .unwrap();
        prop_assert_eq!(domain.prog(priority as u32, &succ), least);
    }

    #[test]
    fn lift_is_monotone_and_inflationary(
        game in game(),
        low in prop::collection::vec(any::<usize>(), 1..8),
        high in prop::collection::vec(any::<usize>(), 1..8),
    ) {
        let domain = MeasureDomain::for_game(&game);
        let f = random_map(&game, &domain, &low);
        let h = random_map(&game, &domain, &high);
        let mut g = f.clone();
        for v in game.vertices() {
            g.set(v, &f.get(v).max(h.get(v)));
        }
        prop_assert!(f.le(&g));
        for v in game.vertices() {
            let (mut f1, mut g1) = (f.clone(), g.clone());
            f1.lift(&domain, &game, v);
            g1.lift(&domain, &game, v);
            prop_assert!(f1.get(v) >= f.get(v));
            prop_assert!(f1.le(&g1));
        }
    }

    #[test]
    fn attractor_is_closed_and_forcing(game in game(), bits in any::<u16>(), within_bits in any::<u16>(), odd in any::<bool>()) {
        let n = game.num_vertices();
        let player = if odd { Player::Odd } else { Player::Even };
        let within = VertexSet::from_vertices(n, (0..n).filter(|v| (within_bits | bits) >> v & 1 == 1));
        let target = VertexSet::from_vertices(n, (0..n).filter(|v| bits >> v & 1 == 1));
        let (attr, strategy) = attractor(&game, player, &target, &within);
        prop_assert!(target.is_subset(&attr) && attr.is_subset(&within));

        let inside = |w: &usize| within.contains(*w);
        for v in within.difference(&attr).iter() {
            let mut succs = game.successors(v).iter().filter(|w| inside(w));
            if game.owner(v) == player {
                prop_assert!(succs.all(|&w| !attr.contains(w)), "{v} could join");
            } else {
                prop_assert!(!succs.all(|&w| attr.contains(w)), "{v} is forced");
            }
        }

        let mut forced = target.clone();
        loop {
            let before = forced.len();
            for v in attr.difference(&forced).iter() {
                let ok = if game.owner(v) == player {
                    strategy.get(v).is_some_and(|w| forced.contains(w))
                } else {
                    game.successors(v).iter().filter(|w| inside(w)).all(|&w| forced.contains(w))
                };
                if ok {
                    forced.insert(v);
                }
            }
            if forced.len() == before {
                break;
            }
        }
        prop_assert_eq!(forced, attr);
    }

    #[test]
    fn solutions_do_not_depend_on_policy(game in game(), seed in any::<u64>()) {
        let reference = spm(&game, LiftPolicy::Worklist);
        let measure = reference.measure.as_ref().unwrap();
        for policy in [LiftPolicy::RoundRobin, LiftPolicy::Random { seed }] {
            prop_assert!(spm(&game, policy).measure.unwrap().same_values(measure));
            prop_assert!(solve_with_strategies(&game, policy).measure.unwrap().same_values(measure));
            prop_assert_eq!(&espm(&game, policy).even_region, &reference.even_region);
        }
    }

    #[test]
    fn text_round_trip(game in game(), names in prop::collection::vec("[a-z\"\\\\ ]{0,6}", 8), offset in 0u64..1000) {
        let named: Vec<Option<String>> = game.vertices().map(|v| Some(names[v].clone()).filter(|s| !s.is_empty())).collect();
        let game = game.with_names(named);
        let ids: Vec<u64> = game.vertices().map(|v| offset + 3 * v as u64).collect();
        let doc = from_game(&game, Some(&ids));
        let text = write_pgsolver(&doc);
        let parsed = parse_pgsolver(&text).unwrap();
        prop_assert_eq!(write_pgsolver(&parsed), text.clone());
        let (back, back_ids) = to_game(&parsed).unwrap();
        prop_assert_eq!(back_ids, ids);
        prop_assert_eq!(back.priorities(), game.priorities());
        prop_assert_eq!(back.owners(), game.owners());
        prop_assert_eq!(back.names(), game.names());
        for v in game.vertices() {
            prop_assert_eq!(back.successors(v), game.successors(v));
        }
    }

    #[test]
    fn convention_keeps_parity_and_reverses_order(game in game()) {
        let doc = from_game(&game, None);
        let max = convert_convention(&doc, Convention::Max);
        prop_assert_eq!(convert_convention(&convert_convention(&max, Convention::Min), Convention::Max), max.clone());
        for (a, ma) in doc.vertices.iter().zip(&max.vertices) {
            prop_assert_eq!(a.priority % 2, ma.priority % 2);
            for (b, mb) in doc.vertices.iter().zip(&max.vertices) {
                prop_assert_eq!(a.priority.cmp(&b.priority), mb.priority.cmp(&ma.priority));
            }
        }
    }

    #[test]
    fn sccs_partition_and_are_ordered(game in game(), bits in any::<u16>()) {
        let n = game.num_vertices();
        let members = VertexSet::from_vertices(n, (0..n).filter(|v| bits >> v & 1 == 1 || *v == 0));
        let sccs = scc_decompose(&game, &members);
        let mut component = vec![usize::MAX; n];
        for (c, scc) in sccs.iter().enumerate() {
            for &v in &scc.vertices {
                prop_assert!(members.contains(v) && component[v] == usize::MAX);
                component[v] = c;
            }
        }
        prop_assert!(members.iter().all(|v| component[v] != usize::MAX));

        let reach = |from: usize| {
            let mut seen = VertexSet::from_vertices(n, [from]);
            let mut stack = vec![from];
            while let Some(v) = stack.pop() {
                for &w in game.successors(v) {
                    if members.contains(w) && seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
            seen
        };
        for v in members.iter() {
            let from_v = reach(v);
            for w in members.iter() {
                let same = from_v.contains(w) && reach(w).contains(v);
                prop_assert_eq!(same, component[v] == component[w]);
            }
            for &w in game.successors(v) {
                if members.contains(w) {
                    prop_assert!(component[w] <= component[v], "successor components come first");
                }
            }
        }
        for (c, scc) in sccs.iter().enumerate() {
            let leaves = scc.vertices.iter().any(|&v| game.successors(v).iter().any(|&w| members.contains(w) && component[w] != c));
            prop_assert_eq!(scc.bottom, !leaves);
        }
    }
}
