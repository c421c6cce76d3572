//! Built-in scenarios with known outcomes.

use super::scenario::{Expect, Families, Flavor, Params, Scenario, ScenarioPair, SpaceSpec};
use crate::game::{make_game, ItemDomain, ItemSet, SelectionKind, Target, Winner};
use crate::ground::Subset;

fn s(items: &[usize]) -> Subset {
    Subset::from_items(items.iter().copied())
}

fn discrete(size: usize) -> SpaceSpec {
    SpaceSpec {
        size,
        subbasis: (0..size).map(Subset::singleton).collect(),
    }
}

fn singletons(size: usize) -> Vec<Subset> {
    (0..size).map(Subset::singleton).collect()
}

fn expect(winner: Winner, pre_one: bool, markov_two: bool) -> Option<Expect> {
    Some(Expect {
        winner: Some(winner),
        pre_one: Some(pre_one),
        markov_two: Some(markov_two),
    })
}

fn entry(name: &str, space: SpaceSpec, a: Vec<Subset>, b: Vec<Subset>, horizon: usize, flavor: Flavor) -> Scenario {
    Scenario {
        name: name.into(),
        space,
        families: Families { a, b },
        horizon,
        flavor,
        params: Params::default(),
    }
}

/// Every built-in scenario, each carrying its expected outcome.
pub fn corpus() -> Vec<Scenario> {
    let mut out = Vec::new();

    let mut sc = entry("point-open-d2-h1", discrete(2), singletons(2), singletons(2), 1, Flavor::PointOpen);
    sc.params.expect = expect(Winner::Two, false, true);
    out.push(sc);

    let mut sc = entry("point-open-d2-h2", discrete(2), singletons(2), singletons(2), 2, Flavor::PointOpen);
    sc.params.expect = expect(Winner::One, true, false);
    out.push(sc);

    let mut sc = entry("point-open-d3-h2", discrete(3), singletons(3), singletons(3), 2, Flavor::PointOpen);
    sc.params.expect = expect(Winner::Two, false, true);
    out.push(sc);

    let mut sc = entry("point-open-d3-h3", discrete(3), singletons(3), singletons(3), 3, Flavor::PointOpen);
    sc.params.expect = expect(Winner::One, true, false);
    out.push(sc);

    let mut sc = entry(
        "point-open-empty-target",
        discrete(2),
        singletons(2),
        Vec::new(),
        2,
        Flavor::PointOpen,
    );
    sc.params.expect = expect(Winner::One, true, false);
    out.push(sc);

    let mut sc = entry(
        "point-open-window-d3",
        discrete(3),
        vec![s(&[0]), s(&[1]), s(&[0, 1])],
        vec![s(&[0]), s(&[1])],
        2,
        Flavor::PointOpenWindow,
    );
    sc.params.w = Some(1);
    sc.params.expect = expect(Winner::One, true, false);
    out.push(sc);

    let mut sc = entry("rothberger-d2-h1", discrete(2), singletons(2), singletons(2), 1, Flavor::Rothberger);
    sc.params.expect = expect(Winner::One, true, false);
    out.push(sc);

    let mut sc = entry("rothberger-d2-h2", discrete(2), singletons(2), singletons(2), 2, Flavor::Rothberger);
    sc.params.expect = expect(Winner::Two, false, true);
    out.push(sc);

    // The only minimal cover lists each singleton once, so no point is
    // covered twice by distinct opens.
    let mut sc = entry(
        "rothberger-lambda-d2-h3",
        discrete(2),
        singletons(2),
        singletons(2),
        3,
        Flavor::RothbergerLambda,
    );
    sc.params.m = Some(2);
    sc.params.expect = expect(Winner::One, true, false);
    out.push(sc);

    // Non-discrete: opens {∅, {0}, {0,1}, {2}, {0,2}, X} on three points.
    let mut sc = entry(
        "rothberger-t3",
        SpaceSpec {
            size: 3,
            subbasis: vec![s(&[0]), s(&[0, 1]), s(&[2])],
        },
        singletons(3),
        vec![s(&[0]), s(&[2])],
        1,
        Flavor::Rothberger,
    );
    sc.params.expect = expect(Winner::One, true, false);
    out.push(sc);

    let g = make_game(
        ItemDomain::ground(3),
        vec![vec![ItemSet::from_iter([0, 1]), ItemSet::single(2)]; 2],
        SelectionKind::Single,
        Target::explicit([ItemSet::from_iter([0, 2]), ItemSet::from_iter([1, 2])]),
    )
    .expect("valid game");
    let mut sc = Scenario::from_game("abstract-choice", &g);
    sc.params.expect = expect(Winner::One, true, false);
    out.push(sc);

    out
}

/// Dual pairs: the point-open game against the Rothberger game on the same space.
pub fn corpus_pairs() -> Vec<ScenarioPair> {
    [1, 2]
        .into_iter()
        .map(|h| ScenarioPair {
            name: format!("point-open-vs-rothberger-d2-h{h}"),
            first: entry("point-open", discrete(2), singletons(2), singletons(2), h, Flavor::PointOpen),
            second: entry("rothberger", discrete(2), singletons(2), singletons(2), h, Flavor::Rothberger),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::duality::check_duality;
    use crate::solver::{find_markov_two, find_predetermined_one, solve, DEFAULT_BUDGET};

    #[test]
    fn corpus_expectations_hold() {
        for sc in corpus() {
            let g = sc.build(None).unwrap();
            let e = sc.expect();
            assert_eq!(Some(solve(&g).winner), e.winner, "{}", sc.name);
            assert_eq!(Some(find_predetermined_one(&g).is_some()), e.pre_one, "{}", sc.name);
            assert_eq!(
                Some(find_markov_two(&g, DEFAULT_BUDGET).unwrap().is_some()),
                e.markov_two,
                "{}",
                sc.name
            );
        }
    }

    #[test]
    fn corpus_round_trips() {
        for sc in corpus() {
            let text = sc.emit();
            assert_eq!(Scenario::parse(&text).unwrap(), sc, "{}", sc.name);
        }
    }

    #[test]
    fn pairs_are_dual() {
        for p in corpus_pairs() {
            let a = p.first.build(None).unwrap();
            let b = p.second.build(None).unwrap();
            assert!(check_duality(&a, &b, DEFAULT_BUDGET).unwrap().all_hold, "{}", p.name);
        }
    }
}
