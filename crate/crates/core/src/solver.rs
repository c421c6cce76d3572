//! Exact winner determination, limited-information synthesis, and strategy verification.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{GameSpec, Pick, PlayError, PlayRecord, Strategy, Winner};

/// Default node budget for [`find_markov_two`].
pub const DEFAULT_BUDGET: u64 = 10_000_000;
/// Markov synthesis refuses tables with more than this many cells.
pub const MARKOV_CELL_LIMIT: usize = 24;
/// Default cap on listed counter-plays in a [`VerificationReport`].
pub const DEFAULT_EXHIBITS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("search budget of {0} nodes exhausted")]
    BudgetExceeded(u64),
    #[error("Markov table would have {cells} cells; the limit is {MARKOV_CELL_LIMIT}")]
    CellsLimit { cells: usize },
    #[error("move {index} of round {round} offers {count} replies; Markov synthesis handles at most 64")]
    TooManyOptions { round: usize, index: usize, count: usize },
    #[error(transparent)]
    Play(#[from] PlayError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Determination {
    pub winner: Winner,
    /// FullOne when One wins, FullTwo when Two wins.
    pub witness: Strategy,
    pub nodes_explored: u64,
    pub memo_hits: u64,
}

struct Tree<'g> {
    game: &'g GameSpec,
    options: Vec<Vec<Vec<Pick>>>,
    canonical: bool,
    memo: HashMap<Vec<Pick>, bool>,
    nodes: u64,
    hits: u64,
}

impl<'g> Tree<'g> {
    fn new(game: &'g GameSpec) -> Self {
        let options = (0..game.horizon())
            .map(|r| (0..game.moves()[r].len()).map(|i| game.options(r, i)).collect())
            .collect();
        Tree {
            game,
            options,
            canonical: game.target().hints.order_insensitive,
            memo: HashMap::new(),
            nodes: 0,
            hits: 0,
        }
    }

    fn key(&self, picks: &[Pick]) -> Vec<Pick> {
        let mut k = picks.to_vec();
        if self.canonical {
            k.sort();
        }
        k
    }

    /// Whether Two wins from the position after `picks`.
    fn two_wins(&mut self, picks: &mut Vec<Pick>) -> bool {
        let key = self.key(picks);
        if let Some(&v) = self.memo.get(&key) {
            self.hits += 1;
            return v;
        }
        self.nodes += 1;
        let r = picks.len();
        let v = if r == self.game.horizon() {
            self.game.evaluate(picks)
        } else {
            (0..self.options[r].len()).all(|i| self.two_answers(picks, i).is_some())
        };
        self.memo.insert(key, v);
        v
    }

    /// Least reply to move `i` after `picks` that keeps Two winning.
    fn two_answers(&mut self, picks: &mut Vec<Pick>, i: usize) -> Option<usize> {
        let r = picks.len();
        (0..self.options[r][i].len()).find(|&k| {
            picks.push(self.options[r][i][k].clone());
            let w = self.two_wins(picks);
            picks.pop();
            w
        })
    }

    fn one_table(&mut self, picks: &mut Vec<Pick>, table: &mut BTreeMap<Vec<Pick>, usize>) {
        let r = picks.len();
        if r == self.game.horizon() {
            return;
        }
        let i = (0..self.options[r].len())
            .find(|&i| self.two_answers(picks, i).is_none())
            .expect("One wins this position");
        table.insert(picks.clone(), i);
        for k in 0..self.options[r][i].len() {
            picks.push(self.options[r][i][k].clone());
            self.one_table(picks, table);
            picks.pop();
        }
    }

    fn two_table(&mut self, hist: &mut Vec<usize>, picks: &mut Vec<Pick>, table: &mut BTreeMap<Vec<usize>, Pick>) {
        let r = picks.len();
        if r == self.game.horizon() {
            return;
        }
        for i in 0..self.options[r].len() {
            let k = self.two_answers(picks, i).expect("Two wins this position");
            let pick = self.options[r][i][k].clone();
            hist.push(i);
            table.insert(hist.clone(), pick.clone());
            picks.push(pick);
            self.two_table(hist, picks, table);
            picks.pop();
            hist.pop();
        }
    }
}

/// Decides the game by backward induction and extracts a winning strategy
/// for the winner. Ties always go to the least move index or reply.
pub fn solve(game: &GameSpec) -> Determination {
    let mut tree = Tree::new(game);
    let mut picks = Vec::new();
    let two = tree.two_wins(&mut picks);
    let witness = if two {
        let mut table = BTreeMap::new();
        tree.two_table(&mut Vec::new(), &mut picks, &mut table);
        Strategy::FullTwo { table }
    } else {
        let mut table = BTreeMap::new();
        tree.one_table(&mut picks, &mut table);
        Strategy::FullOne { table }
    };
    Determination {
        winner: if two { Winner::Two } else { Winner::One },
        witness,
        nodes_explored: tree.nodes,
        memo_hits: tree.hits,
    }
}

/// Whether Two can make the target true against the fixed script `moves`.
fn two_beats_script(game: &GameSpec, moves: &[usize], options: &[Vec<Pick>], canonical: bool) -> bool {
    fn go(
        game: &GameSpec,
        options: &[Vec<Pick>],
        canonical: bool,
        picks: &mut Vec<Pick>,
        memo: &mut HashMap<Vec<Pick>, bool>,
    ) -> bool {
        let mut key = picks.clone();
        if canonical {
            key.sort();
        }
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let r = picks.len();
        let v = if r == game.horizon() {
            game.evaluate(picks)
        } else {
            options[r].iter().any(|p| {
                picks.push(p.clone());
                let w = go(game, options, canonical, picks, memo);
                picks.pop();
                w
            })
        };
        memo.insert(key, v);
        v
    }
    debug_assert_eq!(moves.len(), options.len());
    go(game, options, canonical, &mut Vec::new(), &mut HashMap::new())
}

/// Lexicographically least predetermined strategy that wins for One, if any.
pub fn find_predetermined_one(game: &GameSpec) -> Option<Strategy> {
    let h = game.horizon();
    let sizes: Vec<usize> = game.moves().iter().map(Vec::len).collect();
    let canonical = game.target().hints.order_insensitive;
    let mut tuple = vec![0usize; h];
    loop {
        let options: Vec<Vec<Pick>> = (0..h).map(|r| game.options(r, tuple[r])).collect();
        if !two_beats_script(game, &tuple, &options, canonical) {
            return Some(Strategy::PreOne { moves: tuple });
        }
        // Odometer, last round fastest: lexicographic order.
        let mut r = h;
        loop {
            if r == 0 {
                return None;
            }
            r -= 1;
            tuple[r] += 1;
            if tuple[r] < sizes[r] {
                break;
            }
            tuple[r] = 0;
        }
    }
}

/// Exact search for a winning Markov strategy for Two.
///
/// Cells are `(round, move index)`; each cell gets one of Two's replies. Every
/// choice of One's move indices is a constraint over one cell per round.
/// Forward checking filters the last open cell of each constraint, and the
/// open cell with the fewest remaining replies is branched on first.
pub fn find_markov_two(game: &GameSpec, budget: u64) -> Result<Option<Strategy>, SolverError> {
    let h = game.horizon();
    if h == 0 {
        return Ok(game.evaluate(&[]).then(|| Strategy::MarkovTwo { table: Vec::new() }));
    }
    let widest = game.moves().iter().map(Vec::len).max().unwrap_or(0);
    if widest * h > MARKOV_CELL_LIMIT {
        return Err(SolverError::CellsLimit { cells: widest * h });
    }
    let mut cell_of: Vec<Vec<usize>> = Vec::with_capacity(h);
    let mut options: Vec<Vec<Pick>> = Vec::new();
    for r in 0..h {
        let mut row = Vec::new();
        for i in 0..game.moves()[r].len() {
            let opts = game.options(r, i);
            if opts.len() > 64 {
                return Err(SolverError::TooManyOptions {
                    round: r,
                    index: i,
                    count: opts.len(),
                });
            }
            row.push(options.len());
            options.push(opts);
        }
        cell_of.push(row);
    }
    let n_cells = options.len();

    // Every play of One, as the cells it touches.
    let mut tuples: Vec<Vec<usize>> = Vec::new();
    let mut idx = vec![0usize; h];
    'outer: loop {
        tuples.push((0..h).map(|r| cell_of[r][idx[r]]).collect());
        let mut r = h;
        loop {
            if r == 0 {
                break 'outer;
            }
            r -= 1;
            idx[r] += 1;
            if idx[r] < cell_of[r].len() {
                break;
            }
            idx[r] = 0;
        }
    }
    let mut by_cell: Vec<Vec<usize>> = vec![Vec::new(); n_cells];
    for (t, cells) in tuples.iter().enumerate() {
        for &c in cells {
            by_cell[c].push(t);
        }
    }

    let mut search = MarkovSearch {
        game,
        options: &options,
        tuples: &tuples,
        by_cell: &by_cell,
        assigned: vec![None; n_cells],
        domain: options.iter().map(|o| full_mask(o.len())).collect(),
        open_count: vec![h; tuples.len()],
        trail: Vec::new(),
        nodes: 0,
        budget,
    };
    if h == 1 && !search.propagate_initial() {
        return Ok(None);
    }
    if !search.run()? {
        return Ok(None);
    }
    let table = (0..h)
        .map(|r| {
            cell_of[r]
                .iter()
                .map(|&c| options[c][search.assigned[c].unwrap() as usize].clone())
                .collect()
        })
        .collect();
    Ok(Some(Strategy::MarkovTwo { table }))
}

fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

struct MarkovSearch<'a> {
    game: &'a GameSpec,
    options: &'a [Vec<Pick>],
    tuples: &'a [Vec<usize>],
    by_cell: &'a [Vec<usize>],
    assigned: Vec<Option<u8>>,
    domain: Vec<u64>,
    open_count: Vec<usize>,
    /// (cell, previous domain) for undo.
    trail: Vec<(usize, u64)>,
    nodes: u64,
    budget: u64,
}

impl MarkovSearch<'_> {
    fn picks_with(&self, t: usize, open: usize, value: usize) -> Vec<Pick> {
        self.tuples[t]
            .iter()
            .map(|&c| {
                let v = if c == open {
                    value
                } else {
                    self.assigned[c].expect("only one open cell") as usize
                };
                self.options[c][v].clone()
            })
            .collect()
    }

    /// Filters the sole open cell of tuple `t`. Returns false on a wipe-out.
    fn filter(&mut self, t: usize) -> bool {
        let open = *self.tuples[t]
            .iter()
            .find(|&&c| self.assigned[c].is_none())
            .expect("one open cell");
        let before = self.domain[open];
        let mut after = 0u64;
        for v in 0..self.options[open].len() {
            if before & (1 << v) != 0 && self.game.evaluate(&self.picks_with(t, open, v)) {
                after |= 1 << v;
            }
        }
        if after != before {
            self.trail.push((open, before));
            self.domain[open] = after;
        }
        after != 0
    }

    fn propagate_initial(&mut self) -> bool {
        (0..self.tuples.len()).all(|t| self.filter(t))
    }

    fn assign(&mut self, c: usize, v: u8) -> bool {
        self.assigned[c] = Some(v);
        let mut ok = true;
        for k in 0..self.by_cell[c].len() {
            let t = self.by_cell[c][k];
            self.open_count[t] -= 1;
            if !ok {
                continue;
            }
            match self.open_count[t] {
                0 => {
                    let picks: Vec<Pick> = self.tuples[t]
                        .iter()
                        .map(|&c| self.options[c][self.assigned[c].unwrap() as usize].clone())
                        .collect();
                    ok = self.game.evaluate(&picks);
                }
                1 => ok = self.filter(t),
                _ => {}
            }
        }
        ok
    }

    fn unassign(&mut self, c: usize, mark: usize) {
        for &t in &self.by_cell[c] {
            self.open_count[t] += 1;
        }
        self.assigned[c] = None;
        while self.trail.len() > mark {
            let (cell, dom) = self.trail.pop().unwrap();
            self.domain[cell] = dom;
        }
    }

    fn run(&mut self) -> Result<bool, SolverError> {
        let next = (0..self.assigned.len())
            .filter(|&c| self.assigned[c].is_none())
            .min_by_key(|&c| (self.domain[c].count_ones(), c));
        let Some(c) = next else {
            return Ok(true);
        };
        let dom = self.domain[c];
        for v in 0..self.options[c].len() {
            if dom & (1 << v) == 0 {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(SolverError::BudgetExceeded(self.budget));
            }
            let mark = self.trail.len();
            if self.assign(c, v as u8) && self.run()? {
                return Ok(true);
            }
            self.unassign(c, mark);
        }
        Ok(false)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub winning: bool,
    pub plays_checked: u64,
    /// Up to the exhibit cap, in enumeration order.
    pub counterplays: Vec<PlayRecord>,
    pub counterplays_total: u64,
}

/// Plays `strategy` against every adversary line and lists the lines it loses.
pub fn verify(game: &GameSpec, strategy: &Strategy, max_exhibits: usize) -> Result<VerificationReport, SolverError> {
    let mut report = VerificationReport {
        winning: true,
        plays_checked: 0,
        counterplays: Vec::new(),
        counterplays_total: 0,
    };
    let mut moves = Vec::new();
    let mut picks = Vec::new();
    match strategy.player() {
        Winner::One => verify_one(game, strategy, max_exhibits, &mut moves, &mut picks, &mut report)?,
        Winner::Two => verify_two(game, strategy, max_exhibits, &mut moves, &mut picks, &mut report)?,
    }
    report.winning = report.counterplays_total == 0;
    Ok(report)
}

fn record_leaf(
    game: &GameSpec,
    player: Winner,
    max_exhibits: usize,
    moves: &[usize],
    picks: &[Pick],
    report: &mut VerificationReport,
) {
    report.plays_checked += 1;
    let winner = game.winner_of(picks);
    if winner != player {
        report.counterplays_total += 1;
        if report.counterplays.len() < max_exhibits {
            report.counterplays.push(PlayRecord {
                one_moves: moves.to_vec(),
                two_selections: picks.to_vec(),
                winner,
            });
        }
    }
}

fn verify_one(
    game: &GameSpec,
    s: &Strategy,
    cap: usize,
    moves: &mut Vec<usize>,
    picks: &mut Vec<Pick>,
    report: &mut VerificationReport,
) -> Result<(), SolverError> {
    let r = picks.len();
    if r == game.horizon() {
        record_leaf(game, Winner::One, cap, moves, picks, report);
        return Ok(());
    }
    let m = s.one_move(picks).ok_or(PlayError::StrategyIncomplete { round: r })?;
    if m >= game.moves()[r].len() {
        return Err(PlayError::IllegalMove { round: r }.into());
    }
    moves.push(m);
    for p in game.options(r, m) {
        picks.push(p);
        verify_one(game, s, cap, moves, picks, report)?;
        picks.pop();
    }
    moves.pop();
    Ok(())
}

fn verify_two(
    game: &GameSpec,
    s: &Strategy,
    cap: usize,
    moves: &mut Vec<usize>,
    picks: &mut Vec<Pick>,
    report: &mut VerificationReport,
) -> Result<(), SolverError> {
    let r = picks.len();
    if r == game.horizon() {
        record_leaf(game, Winner::Two, cap, moves, picks, report);
        return Ok(());
    }
    for i in 0..game.moves()[r].len() {
        moves.push(i);
        let p = s
            .two_pick(moves)
            .ok_or(PlayError::StrategyIncomplete { round: r })?
            .clone();
        if !game.is_legal_pick(r, i, &p) {
            return Err(PlayError::IllegalMove { round: r }.into());
        }
        picks.push(p);
        verify_two(game, s, cap, moves, picks, report)?;
        picks.pop();
        moves.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{make_game, ItemDomain, ItemSet, Item, SelectionKind, Target};
    use crate::ground::{GroundSpace, Subset};

    fn is(items: &[Item]) -> ItemSet {
        items.to_vec().into()
    }

    fn point_open_01(h: usize) -> (GameSpec, GroundSpace) {
        let space = GroundSpace::discrete(2).unwrap();
        let around = |x: usize| -> ItemSet {
            space
                .proper_neighborhoods(Subset::singleton(x))
                .into_iter()
                .map(|o| space.open_index(o).unwrap() as Item)
                .collect()
        };
        let fam = vec![around(0), around(1)];
        let g = make_game(
            ItemDomain::opens(&space),
            vec![fam; h],
            SelectionKind::Single,
            Target::CoversFamily {
                fam: vec![Subset::singleton(0), Subset::singleton(1)],
            }
            .not(),
        )
        .unwrap();
        (g, space)
    }

    fn trivial(result: bool) -> GameSpec {
        let sets = if result { vec![is(&[])] } else { vec![] };
        make_game(ItemDomain::ground(1), vec![], SelectionKind::Single, Target::explicit(sets)).unwrap()
    }

    #[test]
    fn point_open_solutions() {
        let (g1, _) = point_open_01(1);
        let d = solve(&g1);
        assert_eq!(d.winner, Winner::Two);
        assert!(verify(&g1, &d.witness, 16).unwrap().winning);
        let (g2, _) = point_open_01(2);
        let d = solve(&g2);
        assert_eq!(d.winner, Winner::One);
        assert!(verify(&g2, &d.witness, 16).unwrap().winning);
    }

    #[test]
    fn empty_horizon() {
        assert_eq!(solve(&trivial(true)).winner, Winner::Two);
        assert_eq!(solve(&trivial(false)).winner, Winner::One);
        assert_eq!(
            find_predetermined_one(&trivial(false)),
            Some(Strategy::PreOne { moves: vec![] })
        );
        assert_eq!(find_predetermined_one(&trivial(true)), None);
        assert_eq!(
            find_markov_two(&trivial(true), DEFAULT_BUDGET).unwrap(),
            Some(Strategy::MarkovTwo { table: vec![] })
        );
    }

    #[test]
    fn predetermined_point_open() {
        let (g, _) = point_open_01(2);
        assert_eq!(find_predetermined_one(&g), Some(Strategy::PreOne { moves: vec![0, 1] }));
        let (g1, _) = point_open_01(1);
        assert_eq!(find_predetermined_one(&g1), None);
    }

    #[test]
    fn markov_point_open_horizon_one() {
        let (g, space) = point_open_01(1);
        let m = find_markov_two(&g, DEFAULT_BUDGET).unwrap().expect("Two has a Markov win");
        assert!(verify(&g, &m, 16).unwrap().winning);
        let o = |x: usize| ItemSet::single(space.open_index(Subset::singleton(x)).unwrap() as Item);
        assert_eq!(m, Strategy::MarkovTwo { table: vec![vec![o(0), o(1)]] });
        let (g2, _) = point_open_01(2);
        assert_eq!(find_markov_two(&g2, DEFAULT_BUDGET).unwrap(), None);
    }

    #[test]
    fn bad_script_has_counterplay() {
        let (g, space) = point_open_01(2);
        let r = verify(&g, &Strategy::PreOne { moves: vec![0, 0] }, 16).unwrap();
        assert!(!r.winning);
        let o0 = ItemSet::single(space.open_index(Subset::singleton(0)).unwrap() as Item);
        assert!(r.counterplays.iter().any(|c| c.two_selections == vec![o0.clone(), o0.clone()]));
    }

    #[test]
    fn budget_is_reported() {
        // Two must answer every move with its own item; a large family forces search.
        let dom = ItemDomain::ground(6);
        let fam: Vec<ItemSet> = (0..6).map(|i| is(&[i, (i + 1) % 6])).collect();
        let all: Vec<ItemSet> = (0u32..64)
            .map(|m| (0..6).filter(|i| m & (1 << i) != 0).collect())
            .filter(|s: &ItemSet| s.len() == 3)
            .collect();
        let g = make_game(dom, vec![fam; 3], SelectionKind::Single, Target::explicit(all)).unwrap();
        assert_eq!(find_markov_two(&g, 1), Err(SolverError::BudgetExceeded(1)));
    }

    #[test]
    fn cells_limit() {
        let fam: Vec<ItemSet> = (0..7).map(|i| is(&[i])).collect();
        let g = make_game(
            ItemDomain::ground(7),
            vec![fam; 4],
            SelectionKind::Single,
            Target::explicit([]),
        )
        .unwrap();
        assert_eq!(find_markov_two(&g, DEFAULT_BUDGET), Err(SolverError::CellsLimit { cells: 28 }));
    }

    #[test]
    fn witness_tables_verify_on_finite_kind() {
        let dom = ItemDomain::ground(3);
        let g = make_game(
            dom,
            vec![vec![is(&[0, 1]), is(&[1, 2])]; 2],
            SelectionKind::Finite,
            Target::explicit([is(&[0, 1]), is(&[1, 2]), is(&[1])]),
        )
        .unwrap();
        let d = solve(&g);
        assert!(verify(&g, &d.witness, 16).unwrap().winning);
    }
}
