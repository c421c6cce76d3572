use proptest::prelude::*;

use selection_games::game::{make_game, GameSpec, ItemDomain, ItemSet, SelectionKind, Strategy as Play, Target, Winner};
use selection_games::ground::{min_covers, GroundSpace, SetFamily, Subset};
use selection_games::harness::{
    build_point_open, build_rothberger, build_rothberger_all_covers, Families, Flavor, Params, PointTarget, Scenario,
    SpaceSpec,
};
use selection_games::orders::{relative_cofinality, ExtendedNat, RelPair};
use selection_games::solver::{find_markov_two, find_predetermined_one, solve, verify, DEFAULT_BUDGET};
use selection_games::transforms::{apply_translation, check_tr_axioms, lift_phi, Direction, TranslationPack};

fn subset(n: usize) -> impl Strategy<Value = Subset> {
    (0u16..1 << n).prop_map(Subset::from_bits)
}

fn nonempty(n: usize) -> impl Strategy<Value = ItemSet> {
    (1u32..1 << n).prop_map(move |m| (0..n as u32).filter(|x| m & (1 << x) != 0).collect())
}

fn abstract_game() -> impl Strategy<Value = GameSpec> {
    (1usize..=4, 1usize..=3).prop_flat_map(|(n, h)| {
        (
            prop::collection::vec(nonempty(n), 1..=3),
            prop::collection::vec(nonempty(n), 0..=6),
            any::<bool>(),
        )
            .prop_map(move |(mut fam, sets, negate)| {
                fam.sort();
                fam.dedup();
                let t = Target::explicit(sets);
                let t = if negate { t.not() } else { t };
                make_game(ItemDomain::ground(n), vec![fam; h], SelectionKind::Single, t).unwrap()
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn topology_is_closed_and_contains_subbasis(n in 1usize..=5, sub in prop::collection::vec(subset(5), 0..4)) {
        let sub: Vec<Subset> = sub.into_iter().map(|s| s.intersection(Subset::full(n))).collect();
        let t = GroundSpace::build_topology(n, &sub).unwrap();
        for &b in &sub {
            prop_assert!(t.is_open(b));
        }
        for &a in t.opens() {
            for &b in t.opens() {
                prop_assert!(t.is_open(a.union(b)));
                prop_assert!(t.is_open(a.intersection(b)));
            }
        }
    }

    #[test]
    fn determinacy_and_hierarchy(g in abstract_game()) {
        let det = solve(&g);
        prop_assert!(verify(&g, &det.witness, 0).unwrap().winning);
        if let Some(s) = find_predetermined_one(&g) {
            prop_assert_eq!(det.winner, Winner::One);
            prop_assert!(verify(&g, &s, 0).unwrap().winning);
        }
        if let Some(s) = find_markov_two(&g, DEFAULT_BUDGET).unwrap() {
            prop_assert_eq!(det.winner, Winner::Two);
            prop_assert!(verify(&g, &s, 0).unwrap().winning);
        }
    }

    #[test]
    fn game_json_round_trip(g in abstract_game()) {
        let text = serde_json::to_string(&g).unwrap();
        let back: GameSpec = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn scenario_round_trip(n in 2usize..=4, a in prop::collection::vec(subset(4), 1..4), b in prop::collection::vec(subset(4), 0..4), h in 0usize..4, w in prop::option::of(1usize..3)) {
        let full = Subset::full(n);
        let sc = Scenario {
            name: "p".into(),
            space: SpaceSpec { size: n, subbasis: (0..n).map(Subset::singleton).collect() },
            families: Families {
                a: a.into_iter().map(|s| s.intersection(full)).collect(),
                b: b.into_iter().map(|s| s.intersection(full)).collect(),
            },
            horizon: h,
            flavor: if w.is_some() { Flavor::PointOpenWindow } else { Flavor::PointOpen },
            params: Params { w, ..Params::default() },
        };
        let text = sc.emit();
        let back = Scenario::parse(&text).unwrap();
        prop_assert_eq!(&back, &sc);
        prop_assert_eq!(back.emit(), text);
    }

    #[test]
    fn relpair_round_trip(pairs in prop::collection::vec((0usize..6, 0usize..6), 0..8)) {
        let pairs: Vec<(usize, usize)> = pairs.into_iter().filter(|(i, j)| i < j).collect();
        let p = RelPair::from_pairs(6, &pairs, vec![0, 2, 4, 5], vec![1, 3]).unwrap();
        let back: RelPair = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        prop_assert_eq!(relative_cofinality(&back), relative_cofinality(&p));
        prop_assert_eq!(back, p);
    }

    #[test]
    fn point_open_pre_matches_cofinality(a in prop::collection::vec(subset(3), 1..4), b in prop::collection::vec(subset(3), 0..3), h in 0usize..=3) {
        let full = Subset::full(3);
        let a: Vec<Subset> = a.into_iter().filter(|&s| s != full).collect();
        prop_assume!(!a.is_empty());
        let space = GroundSpace::discrete(3).unwrap();
        let fa = SetFamily::new(3, a).unwrap();
        let fb = SetFamily::new(3, b).unwrap();
        let g = build_point_open(&space, &fa, &fb, h, PointTarget::Cover).unwrap();
        let cof = relative_cofinality(&RelPair::from_families(fa.members(), fb.members()).unwrap());
        prop_assert_eq!(find_predetermined_one(&g).is_some(), cof.is_at_most(h as u64));
    }
}

fn s(items: &[usize]) -> Subset {
    Subset::from_items(items.iter().copied())
}

/// Spaces and families on which the Rothberger game is built both ways.
fn rothberger_cases() -> Vec<(GroundSpace, SetFamily, SetFamily)> {
    let mut out = Vec::new();
    for n in 2..=3 {
        let d = GroundSpace::discrete(n).unwrap();
        out.push((d.clone(), SetFamily::singletons(n), SetFamily::singletons(n)));
        out.push((d, SetFamily::singletons(n), SetFamily::new(n, [s(&[0])]).unwrap()));
    }
    let t = GroundSpace::build_topology(3, &[s(&[0]), s(&[0, 1]), s(&[2])]).unwrap();
    out.push((t.clone(), SetFamily::singletons(3), SetFamily::new(3, [s(&[0]), s(&[2])]).unwrap()));
    out.push((t, SetFamily::new(3, [s(&[0, 1]), s(&[2])]).unwrap(), SetFamily::singletons(3)));
    out
}

/// The pack from the all-covers game onto the minimal-cover game: every
/// minimal cover is itself a cover, replies are the identity.
fn down_pack(all: &GameSpec, min: &GameSpec) -> TranslationPack {
    let phi: Vec<Vec<u32>> = (0..min.horizon()).map(|_| (0..min.domain().len() as u32).collect()).collect();
    lift_phi(&phi, all, min).unwrap()
}

/// The reverse pack: a cover is sent to its least minimal subcover.
fn up_pack(min: &GameSpec, all: &GameSpec) -> TranslationPack {
    let h = all.horizon();
    let mut t_one = Vec::new();
    let mut t_two = Vec::new();
    for r in 0..h {
        let mut one_row = Vec::new();
        let mut two_row = Vec::new();
        for cover in &all.moves()[r] {
            let i = min.moves()[r].iter().position(|m| m.is_subset_of(cover)).expect("a minimal subcover");
            one_row.push(i);
            two_row.push(min.moves()[r][i].items().iter().map(|&x| (x, x)).collect());
        }
        t_one.push(one_row);
        t_two.push(two_row);
    }
    TranslationPack { horizon: h, t_one, t_two }
}

#[test]
fn minimal_cover_restriction_is_justified_by_packs() {
    for (space, a, b) in rothberger_cases() {
        for h in 1..=3 {
            let min = build_rothberger(&space, &a, &b, h, None).unwrap();
            let all = build_rothberger_all_covers(&space, &a, &b, h).unwrap();
            let down = down_pack(&all, &min);
            let up = up_pack(&min, &all);
            assert!(check_tr_axioms(&down, &all, &min).unwrap().holds);
            assert!(check_tr_axioms(&up, &min, &all).unwrap().holds);
            let w_min = solve(&min);
            let w_all = solve(&all);
            assert_eq!(w_min.winner, w_all.winner, "h={h}");
            // Carry the winner's strategy across whichever pack applies.
            let (pack, src, dst, dir, input, home) = match w_all.winner {
                Winner::Two => (&down, &all, &min, Direction::FullTwo, w_all.witness.clone(), &min),
                Winner::One => (&down, &all, &min, Direction::FullOnePullback, w_min.witness.clone(), &all),
            };
            let moved = apply_translation(pack, src, dst, dir, &input).unwrap();
            assert!(verify(home, &moved, 0).unwrap().winning);
            let (pack, src, dst, dir, input, home) = match w_min.winner {
                Winner::Two => (&up, &min, &all, Direction::FullTwo, w_min.witness.clone(), &all),
                Winner::One => (&up, &min, &all, Direction::FullOnePullback, w_all.witness.clone(), &min),
            };
            let moved = apply_translation(pack, src, dst, dir, &input).unwrap();
            assert!(verify(home, &moved, 0).unwrap().winning);
        }
    }
}

#[test]
fn restricted_strategies_embed_into_full_ones() {
    let space = GroundSpace::discrete(2).unwrap();
    let singles = SetFamily::singletons(2);
    for h in 1..=3 {
        let g = build_point_open(&space, &singles, &singles, h, PointTarget::Cover).unwrap();
        if let Some(Play::PreOne { moves }) = find_predetermined_one(&g) {
            assert!(verify(&g, &Play::embed_pre(&moves, &g), 0).unwrap().winning);
        }
        if let Some(Play::MarkovTwo { table }) = find_markov_two(&g, DEFAULT_BUDGET).unwrap() {
            assert!(verify(&g, &Play::embed_markov(&table, &g), 0).unwrap().winning);
        }
    }
}

#[test]
fn ideal_base_covering_has_no_minimal_covers() {
    for t in GroundSpace::enumerate_topologies(3).unwrap() {
        let fam = SetFamily::new(3, [s(&[0]), s(&[1, 2]), s(&[0, 1, 2])]).unwrap();
        assert!(fam.is_ideal_base() && fam.covers_universe());
        assert!(min_covers(&t, &fam, 64).covers.is_empty());
    }
}

#[test]
fn finite_cofinality_never_lifts_to_a_finite_value() {
    let p = RelPair::from_pairs(3, &[(0, 1)], vec![1, 2], vec![0, 2]).unwrap();
    assert_eq!(relative_cofinality(&p), ExtendedNat::Finite(2));
    for m in 1..=5 {
        let t = p.product_truncation(m).unwrap();
        assert_eq!(relative_cofinality(&t), ExtendedNat::Finite(2));
    }
}
