//! Reflections, selection bases, and finite-horizon duality checks.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{GameSpec, Item, ItemSet, Winner};
use crate::solver::{find_markov_two, find_predetermined_one, solve, SolverError};

/// Cap on the number of choice functions enumerated.
pub const CHOICE_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DualityError {
    #[error("choice space has {0} functions; the limit is {CHOICE_LIMIT}")]
    ChoiceSpaceTooLarge(u128),
    #[error("member {0} of the reflection is empty")]
    EmptyMember(usize),
    #[error("games have horizons {0} and {1}")]
    HorizonMismatch(usize, usize),
    #[error("targets are not negations of each other over a common domain")]
    NotComplementary,
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// `candidate` is a subfamily of `fam` below every member of `fam`.
pub fn is_selection_basis(candidate: &[ItemSet], fam: &[ItemSet]) -> bool {
    candidate.iter().all(|c| fam.contains(c)) && fam.iter().all(|a| candidate.iter().any(|c| c.is_subset_of(a)))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReflectionReport {
    pub is_reflection: bool,
    /// A choice (one item per member of the reflection) whose range is not in the family.
    pub bad_transversal: Option<Vec<Item>>,
    /// A member of the family containing no transversal range.
    pub uncovered: Option<ItemSet>,
}

/// Lazy odometer over choice functions of `refl`, last member fastest.
struct Choices<'a> {
    refl: &'a [ItemSet],
    idx: Vec<usize>,
    done: bool,
}

impl<'a> Choices<'a> {
    fn new(refl: &'a [ItemSet]) -> Self {
        Choices {
            refl,
            idx: vec![0; refl.len()],
            done: false,
        }
    }
}

impl Iterator for Choices<'_> {
    type Item = Vec<Item>;
    fn next(&mut self) -> Option<Vec<Item>> {
        if self.done {
            return None;
        }
        let out = self.idx.iter().zip(self.refl).map(|(&k, r)| r.items()[k]).collect();
        let mut r = self.refl.len();
        loop {
            if r == 0 {
                self.done = true;
                break;
            }
            r -= 1;
            self.idx[r] += 1;
            if self.idx[r] < self.refl[r].len() {
                break;
            }
            self.idx[r] = 0;
        }
        Some(out)
    }
}

/// Checks that the ranges of choice functions on `refl` lie in `fam` and
/// that every member of `fam` contains one of them.
pub fn is_reflection(refl: &[ItemSet], fam: &[ItemSet]) -> Result<ReflectionReport, DualityError> {
    if let Some(k) = refl.iter().position(ItemSet::is_empty) {
        return Err(DualityError::EmptyMember(k));
    }
    let space: u128 = refl.iter().map(|r| r.len() as u128).product();
    if space > CHOICE_LIMIT as u128 {
        return Err(DualityError::ChoiceSpaceTooLarge(space));
    }
    let bad_transversal = Choices::new(refl).find(|c| !fam.contains(&c.iter().copied().collect()));
    let uncovered = fam
        .iter()
        .find(|a| {
            let by_enumeration = Choices::new(refl).any(|c| c.iter().all(|&x| a.contains(x)));
            let by_meeting = refl.iter().all(|r| r.meets(a));
            assert_eq!(by_enumeration, by_meeting, "transversal criteria disagree on {a:?}");
            !by_meeting
        })
        .cloned();
    Ok(ReflectionReport {
        is_reflection: bad_transversal.is_none() && uncovered.is_none(),
        bad_transversal,
        uncovered,
    })
}

/// Who wins each game, under full information and under restricted strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SideFacts {
    pub one_wins: bool,
    pub two_wins: bool,
    pub one_predetermined: bool,
    pub two_markov: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityReport {
    pub first: SideFacts,
    pub second: SideFacts,
    /// One wins the first ⇔ Two wins the second.
    pub one_first_two_second: bool,
    /// Two wins the first ⇔ One wins the second.
    pub two_first_one_second: bool,
    /// One has a predetermined win in the first ⇔ Two has a Markov win in the second.
    pub pre_first_markov_second: bool,
    /// Two has a Markov win in the first ⇔ One has a predetermined win in the second.
    pub markov_first_pre_second: bool,
    pub all_hold: bool,
}

fn side(game: &GameSpec, budget: u64) -> Result<SideFacts, DualityError> {
    let w = solve(game).winner;
    Ok(SideFacts {
        one_wins: w == Winner::One,
        two_wins: w == Winner::Two,
        one_predetermined: find_predetermined_one(game).is_some(),
        two_markov: find_markov_two(game, budget)?.is_some(),
    })
}

/// Solves both games and compares the four dual clauses.
pub fn check_duality(first: &GameSpec, second: &GameSpec, budget: u64) -> Result<DualityReport, DualityError> {
    if first.horizon() != second.horizon() {
        return Err(DualityError::HorizonMismatch(first.horizon(), second.horizon()));
    }
    if first.domain() != second.domain() || !first.target().body.is_complement_of(&second.target().body) {
        return Err(DualityError::NotComplementary);
    }
    let a = side(first, budget)?;
    let b = side(second, budget)?;
    let c1 = a.one_wins == b.two_wins;
    let c2 = a.two_wins == b.one_wins;
    let c3 = a.one_predetermined == b.two_markov;
    let c4 = a.two_markov == b.one_predetermined;
    Ok(DualityReport {
        first: a,
        second: b,
        one_first_two_second: c1,
        two_first_one_second: c2,
        pre_first_markov_second: c3,
        markov_first_pre_second: c4,
        all_hold: c1 && c2 && c3 && c4,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{make_game, ItemDomain, SelectionKind, Target};
    use crate::ground::{GroundSpace, SetFamily};
    use crate::solver::DEFAULT_BUDGET;

    fn is(items: &[Item]) -> ItemSet {
        items.to_vec().into()
    }

    #[test]
    fn basis_examples() {
        let fam = vec![is(&[0]), is(&[0, 1]), is(&[2])];
        assert!(is_selection_basis(&fam, &fam));
        assert!(is_selection_basis(&[is(&[0]), is(&[2])], &fam));
        assert!(!is_selection_basis(&[is(&[1])], &fam));
    }

    #[test]
    fn reflection_examples() {
        let r = is_reflection(&[is(&[0]), is(&[1])], &[is(&[0, 1])]).unwrap();
        assert!(r.is_reflection);
        let r = is_reflection(&[is(&[0, 1])], &[is(&[0])]).unwrap();
        assert!(!r.is_reflection);
        assert_eq!(r.bad_transversal, Some(vec![1]));
        assert_eq!(r.uncovered, None);
    }

    #[test]
    fn neighbourhoods_reflect_blades_in_discrete_space() {
        let space = GroundSpace::discrete(3).unwrap();
        let x = 1;
        let refl: Vec<ItemSet> = space
            .opens()
            .iter()
            .filter(|o| o.contains(x))
            .map(|&o| ItemSet::from_subset(o))
            .collect();
        let fam: Vec<ItemSet> = SetFamily::blades(&space, x)
            .members()
            .iter()
            .map(|&s| ItemSet::from_subset(s))
            .collect();
        assert!(is_reflection(&refl, &fam).unwrap().is_reflection);
    }

    #[test]
    fn choice_space_cap() {
        let big: Vec<ItemSet> = (0..7).map(|_| (0..10).collect()).collect();
        assert!(matches!(
            is_reflection(&big, &[]),
            Err(DualityError::ChoiceSpaceTooLarge(_))
        ));
    }

    #[test]
    fn abstract_dual_pair() {
        // Family: all ranges of choices on {{0,1},{2}}; target: selection is {0,2}.
        let refl = vec![is(&[0, 1]), is(&[2])];
        let fam = vec![is(&[0, 2]), is(&[1, 2])];
        assert!(is_reflection(&refl, &fam).unwrap().is_reflection);
        let c = Target::explicit([is(&[0, 2])]);
        for h in 1..=3 {
            let g1 = make_game(ItemDomain::ground(3), vec![fam.clone(); h], SelectionKind::Single, c.clone()).unwrap();
            let g2 = make_game(ItemDomain::ground(3), vec![refl.clone(); h], SelectionKind::Single, c.clone().not())
                .unwrap();
            let rep = check_duality(&g1, &g2, DEFAULT_BUDGET).unwrap();
            assert!(rep.all_hold, "horizon {h}: {rep:?}");
        }
    }

    #[test]
    fn mismatches_are_errors() {
        let fam = vec![is(&[0])];
        let c = Target::explicit([is(&[0])]);
        let g1 = make_game(ItemDomain::ground(1), vec![fam.clone()], SelectionKind::Single, c.clone()).unwrap();
        let g2 = make_game(ItemDomain::ground(1), vec![fam.clone(); 2], SelectionKind::Single, c.clone().not()).unwrap();
        assert_eq!(check_duality(&g1, &g2, 10), Err(DualityError::HorizonMismatch(1, 2)));
        let g3 = make_game(ItemDomain::ground(1), vec![fam], SelectionKind::Single, c).unwrap();
        assert_eq!(check_duality(&g1, &g3, 10), Err(DualityError::NotComplementary));
    }
}
