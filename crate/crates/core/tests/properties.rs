//! Randomised algebraic laws.

use gamefix::epistemic::{Event, EpistemicModel, PossibilityCorrespondence, StateSpace, StrategyAssignment};
use gamefix::format::{parse_game, write_game};
use gamefix::property::{apply_operator, eval_property};
use gamefix::random::{random_game, random_restriction, rng};
use gamefix::rational::ratio;
use gamefix::restriction::all_restrictions;
use gamefix::transfinite::{Bound, Interval, SymbolicSet};
use gamefix::verify::check_property_monotone;
use gamefix::{Game, Limits, PropertyProfile, PropertySpec, Rational, Restriction};
use proptest::prelude::*;

fn game_from(seed: u64, rows: usize, cols: usize) -> Game {
    random_game(&mut rng(seed), "prop", rows, cols)
}

fn arb_game() -> impl Strategy<Value = Game> {
    (any::<u64>(), 1usize..=4, 1usize..=4).prop_map(|(s, r, c)| game_from(s, r, c))
}

fn arb_game_with(k: usize) -> impl Strategy<Value = (Game, Vec<Restriction>)> {
    (any::<u64>(), 1usize..=4, 1usize..=4).prop_map(move |(s, r, c)| {
        let g = game_from(s, r, c);
        let mut rr = rng(s ^ 0x5eed);
        let rs = (0..k).map(|_| random_restriction(&mut rr, &g)).collect();
        (g, rs)
    })
}

fn quarter() -> impl Strategy<Value = Rational> {
    (-8i64..=8).prop_map(|k| ratio(k, 4))
}

fn arb_interval() -> impl Strategy<Value = Interval> {
    (quarter(), quarter(), any::<bool>(), any::<bool>(), 0u8..8).prop_map(|(a, b, lc, hc, shape)| {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        match shape {
            0 => Interval::new(Bound::NegInf, false, Bound::Finite(hi), hc),
            1 => Interval::new(Bound::Finite(lo), lc, Bound::PosInf, false),
            2 => Interval::point(lo),
            _ => Interval::new(Bound::Finite(lo), lc, Bound::Finite(hi), hc),
        }
    })
}

fn arb_set() -> impl Strategy<Value = SymbolicSet> {
    prop::collection::vec(arb_interval(), 0..4).prop_map(SymbolicSet::from_pieces)
}

fn probes() -> Vec<Rational> {
    (-20i64..=20).map(|k| ratio(k, 8)).collect()
}

/// Random correspondence made of per-block targets; `knowledge` makes each target its block.
fn arb_corr(size: usize, knowledge: bool) -> impl Strategy<Value = Vec<Event>> {
    (prop::collection::vec(0..size, size), prop::collection::vec(any::<u64>(), size)).prop_map(
        move |(block_of, picks)| {
            let mut cells = vec![Event::EMPTY; size];
            for b in 0..size {
                let block = Event::from_states((0..size).filter(|&w| block_of[w] == b));
                if block.is_empty() {
                    continue;
                }
                let mut target = Event(block.0 & picks[b]);
                if knowledge || target.is_empty() {
                    target = block;
                }
                for w in block.iter() {
                    cells[w] = target;
                }
            }
            cells
        },
    )
}

fn arb_model(knowledge: bool) -> impl Strategy<Value = (Game, EpistemicModel, u64, u64)> {
    (2usize..=5, any::<u64>())
        .prop_flat_map(move |(size, seed)| {
            (
                Just(size),
                Just(seed),
                arb_corr(size, knowledge),
                arb_corr(size, knowledge),
                prop::collection::vec(0usize..2, size),
                prop::collection::vec(0usize..3, size),
                any::<u64>(),
                any::<u64>(),
            )
        })
        .prop_map(|(size, seed, c1, c2, a1, a2, e, f)| {
            let game = game_from(seed, 2, 3);
            let space = StateSpace::with_size(size).unwrap();
            let assignment = StrategyAssignment::new(&game, &space, vec![a1, a2]).unwrap();
            let corrs = vec![
                PossibilityCorrespondence::new(&space, c1).unwrap(),
                PossibilityCorrespondence::new(&space, c2).unwrap(),
            ];
            let model = EpistemicModel::new(&game, space, assignment, corrs).unwrap();
            let full = (1u64 << size) - 1;
            (game, model, e & full, f & full)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn game_text_round_trips(game in arb_game()) {
        let text = write_game(&game).unwrap();
        let back = parse_game(&text).unwrap();
        prop_assert!(back == game);
        prop_assert_eq!(write_game(&back).unwrap(), text);
    }

    #[test]
    fn restriction_lattice_laws((game, rs) in arb_game_with(3)) {
        let (a, b, c) = (&rs[0], &rs[1], &rs[2]);
        let meet = |x: &Restriction, y: &Restriction| Restriction::meet(&[x.clone(), y.clone()]).unwrap();
        let join = |x: &Restriction, y: &Restriction| Restriction::join(&[x.clone(), y.clone()]).unwrap();
        prop_assert_eq!(meet(a, b), meet(b, a));
        prop_assert_eq!(join(a, b), join(b, a));
        prop_assert_eq!(meet(&meet(a, b), c), meet(a, &meet(b, c)));
        prop_assert_eq!(join(&join(a, b), c), join(a, &join(b, c)));
        prop_assert_eq!(meet(a, &join(a, b)), a.clone());
        prop_assert_eq!(join(a, &meet(a, b)), a.clone());
        prop_assert_eq!(a.leq(b).unwrap(), meet(a, b) == *a);
        prop_assert!(a.leq(&Restriction::top(&game)).unwrap());
        prop_assert!(Restriction::bottom(&game).leq(a).unwrap());
        prop_assert_eq!(Restriction::from_lattice_index(&game, a.lattice_index()), a.clone());
    }

    #[test]
    fn symbolic_set_laws(a in arb_set(), b in arb_set(), c in arb_set()) {
        prop_assert_eq!(a.union(&b), b.union(&a));
        prop_assert_eq!(a.intersection(&b), b.intersection(&a));
        prop_assert_eq!(a.union(&a), a.clone());
        prop_assert_eq!(a.intersection(&a), a.clone());
        prop_assert_eq!(a.union(&b).complement(), a.complement().intersection(&b.complement()));
        prop_assert_eq!(a.intersection(&b).complement(), a.complement().union(&b.complement()));
        prop_assert_eq!(a.complement().complement(), a.clone());
        prop_assert_eq!(a.intersection(&b.union(&c)), a.intersection(&b).union(&a.intersection(&c)));
        prop_assert_eq!(a.is_subset(&b), a.union(&b) == b);
        for x in probes() {
            prop_assert_eq!(a.union(&b).contains(&x), a.contains(&x) || b.contains(&x));
            prop_assert_eq!(a.intersection(&b).contains(&x), a.contains(&x) && b.contains(&x));
            prop_assert_eq!(a.difference(&b).contains(&x), a.contains(&x) && !b.contains(&x));
            prop_assert_eq!(a.complement().contains(&x), !a.contains(&x));
        }
        let parsed: SymbolicSet = a.to_string().parse().unwrap();
        prop_assert_eq!(parsed, a);
    }

    #[test]
    fn global_removes_at_least_local_and_mixed_at_least_pure((game, rs) in arb_game_with(2)) {
        for g in &rs {
            for (strong, weak) in [
                (PropertySpec::SD_G, PropertySpec::SD_L),
                (PropertySpec::MSD_G, PropertySpec::MSD_L),
                (PropertySpec::MSD_G, PropertySpec::SD_G),
                (PropertySpec::MSD_L, PropertySpec::SD_L),
                (PropertySpec::BR_G_CORR, PropertySpec::BR_L_CORR),
                (PropertySpec::BR_G_PURE, PropertySpec::BR_G_CORR),
            ] {
                let s = apply_operator(&PropertyProfile::uniform(strong, 2), &game, g).unwrap();
                let w = apply_operator(&PropertyProfile::uniform(weak, 2), &game, g).unwrap();
                prop_assert!(s.leq(&w).unwrap(), "{} vs {} at {}", strong, weak, g.display(&game));
            }
            for player in 0..2 {
                for s in 0..game.num_strategies(player) {
                    let pure = eval_property(PropertySpec::SD_G, &game, player, s, g).unwrap();
                    let mixed = eval_property(PropertySpec::MSD_G, &game, player, s, g).unwrap();
                    prop_assert!(pure || !mixed);
                }
            }
        }
    }

    #[test]
    fn common_knowledge_laws((_game, model, e, f) in arb_model(true)) {
        let (e, f) = (Event(e), Event(f));
        let ck = model.common_knowledge_event(e).unwrap();
        prop_assert!(ck.is_subset(e));
        prop_assert!(model.is_evident(ck));
        prop_assert!(model.k_event(e).is_subset(e));
        prop_assert_eq!(model.common_knowledge_event(ck).unwrap(), ck);
        prop_assert_eq!(model.common_knowledge_event_via_k(e).unwrap(), ck);
        let ef = e.intersection(f);
        prop_assert!(model.common_knowledge_event(ef).unwrap().is_subset(ck));
        prop_assert!(model.common_belief_event(e).unwrap().is_subset(model.b_event(e)));
        for w in 0..model.space().size() {
            let inside = (1u64..1 << model.space().size())
                .map(Event)
                .any(|g| g.contains(w) && g.is_subset(e) && model.is_evident(g));
            prop_assert_eq!(ck.contains(w), inside);
        }
    }

    #[test]
    fn common_belief_laws((game, model, e, f) in arb_model(false)) {
        let (e, f) = (Event(e), Event(f));
        let cb = model.common_belief_event(e).unwrap();
        prop_assert!(cb.is_subset(model.b_event(e)));
        prop_assert!(model.is_evident(cb));
        prop_assert!(model.common_belief_event(e.intersection(f)).unwrap().is_subset(cb));
        let ge = model.event_restriction(&game, e);
        let gf = model.event_restriction(&game, f);
        let gef = model.event_restriction(&game, e.union(f));
        prop_assert_eq!(gef.clone(), Restriction::join(&[ge.clone(), gf]).unwrap());
        prop_assert!(ge.leq(&gef).unwrap());
        prop_assert!(model.event_restriction(&game, e.intersection(f)).leq(&ge).unwrap());
    }
}

#[test]
fn local_dominance_is_not_monotone_on_some_small_game() {
    let limits = Limits::default();
    let found = (0..400u64).find_map(|seed| {
        let mut r = rng(seed);
        let shape = if seed % 2 == 0 { (2, 2) } else { (3, 2) };
        let game = random_game(&mut r, &format!("search-{seed}"), shape.0, shape.1);
        let report = check_property_monotone(PropertySpec::SD_L, &game, &limits).unwrap();
        (!report.passed).then_some(game)
    });
    let game = found.expect("a 2x2 or 3x2 game where sd:l is not monotone");
    let profile = PropertyProfile::uniform(PropertySpec::SD_L, 2);
    let images: Vec<Restriction> = all_restrictions(&game)
        .map(|g| apply_operator(&profile, &game, &g).unwrap())
        .collect();
    let all: Vec<Restriction> = all_restrictions(&game).collect();
    let broken = all.iter().zip(&images).any(|(a, ia)| {
        all.iter().zip(&images).any(|(b, ib)| a.leq(b).unwrap() && !ia.leq(ib).unwrap())
    });
    assert!(broken);
}
