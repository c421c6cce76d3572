//! Strategy transformers: translation packs between single-selection games,
//! the Γ-strengthening of One's strategies over a filter base, and the
//! intersected predetermined strategy over an ideal base.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::game::{GameSpec, Item, ItemSet, Pick, PlayError, SelectionKind, Strategy, Target};
use crate::ground::SetFamily;
use crate::solver::{verify, SolverError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("translation axioms fail")]
    AxiomsFail,
    #[error("input strategy does not win its game")]
    InputNotWinning,
    #[error("expected a {expected} strategy, got {got}")]
    WrongStrategyClass { expected: &'static str, got: &'static str },
    #[error("translations need single-selection games")]
    KindMismatch,
    #[error("horizons differ: {0} and {1}")]
    HorizonMismatch(usize, usize),
    #[error("malformed pack: {0}")]
    MalformedPack(String),
    #[error("image of move {dst_move} in round {round} is not a move of the source game")]
    ImageNotMove { round: usize, dst_move: usize },
    #[error("move family is not a filter base")]
    NotFilterBase,
    #[error("strategy does not win at horizon {0}")]
    NotUniformlyWinning(usize),
    #[error("move family changes between rounds")]
    NotRoundConstant,
    #[error("target must be a negation")]
    TargetNotNegated,
    #[error("interval [{m}, {n}] is empty")]
    BadInterval { m: usize, n: usize },
    #[error("family is not an ideal base")]
    NotIdealBase,
    #[error("no member contains the running union in round {0}")]
    WitnessMissing(usize),
    #[error("index {0} is outside the family")]
    IndexOutOfRange(usize),
    #[error(transparent)]
    Solver(#[from] SolverError),
}

impl From<PlayError> for TransformError {
    fn from(e: PlayError) -> Self {
        TransformError::Solver(e.into())
    }
}

/// Move and reply translations between a source game G(𝒜, 𝒞) and a
/// destination game G(ℬ, 𝒟).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslationPack {
    pub horizon: usize,
    /// `t_one[round][dst move]` is a source move index.
    pub t_one: Vec<Vec<usize>>,
    /// `t_two[round][dst move]` lists `(source item, destination item)`, sorted.
    pub t_two: Vec<Vec<Vec<(Item, Item)>>>,
}

impl TranslationPack {
    /// Identity on a game paired with itself (or with a copy sharing its moves).
    pub fn identity(game: &GameSpec) -> Self {
        let t_one = game.moves().iter().map(|fam| (0..fam.len()).collect()).collect();
        let t_two = game
            .moves()
            .iter()
            .map(|fam| fam.iter().map(|m| m.items().iter().map(|&x| (x, x)).collect()).collect())
            .collect();
        TranslationPack {
            horizon: game.horizon(),
            t_one,
            t_two,
        }
    }

    pub fn reply(&self, round: usize, dst_move: usize, x: Item) -> Option<Item> {
        let row = &self.t_two[round][dst_move];
        row.binary_search_by_key(&x, |&(a, _)| a).ok().map(|k| row[k].1)
    }

    fn check_shape(&self, src: &GameSpec, dst: &GameSpec) -> Result<(), TransformError> {
        if src.kind() != SelectionKind::Single || dst.kind() != SelectionKind::Single {
            return Err(TransformError::KindMismatch);
        }
        if src.horizon() != dst.horizon() {
            return Err(TransformError::HorizonMismatch(src.horizon(), dst.horizon()));
        }
        if self.horizon != dst.horizon() || self.t_one.len() != self.horizon || self.t_two.len() != self.horizon {
            return Err(TransformError::HorizonMismatch(self.horizon, dst.horizon()));
        }
        for r in 0..self.horizon {
            let n = dst.moves()[r].len();
            if self.t_one[r].len() != n || self.t_two[r].len() != n {
                return Err(TransformError::MalformedPack(format!("round {r} does not match the destination family")));
            }
            if let Some(&bad) = self.t_one[r].iter().find(|&&i| i >= src.moves()[r].len()) {
                return Err(TransformError::MalformedPack(format!("round {r} names source move {bad}")));
            }
            if self.t_two[r].iter().any(|row| row.windows(2).any(|w| w[0].0 >= w[1].0)) {
                return Err(TransformError::MalformedPack(format!("round {r} reply table is not sorted")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum TrViolation {
    /// The reply to `src_item` is missing or outside the destination move.
    Tr1 {
        round: usize,
        dst_move: usize,
        src_item: Item,
        reply: Option<Item>,
    },
    /// A winning source selection translates to a losing destination selection.
    Tr2 { dst_moves: Vec<usize>, src_items: Vec<Item> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrReport {
    pub holds: bool,
    pub tr1_checked: u64,
    pub tr2_checked: u64,
    /// At most 16 exhibits.
    pub violations: Vec<TrViolation>,
    pub violations_total: u64,
}

const EXHIBITS: usize = 16;

/// Checks both translation axioms exhaustively.
pub fn check_tr_axioms(pack: &TranslationPack, src: &GameSpec, dst: &GameSpec) -> Result<TrReport, TransformError> {
    pack.check_shape(src, dst)?;
    let mut rep = TrReport {
        holds: true,
        tr1_checked: 0,
        tr2_checked: 0,
        violations: Vec::new(),
        violations_total: 0,
    };
    let push = |rep: &mut TrReport, v: TrViolation| {
        rep.violations_total += 1;
        if rep.violations.len() < EXHIBITS {
            rep.violations.push(v);
        }
    };
    // Per round: every (dst move, src item, dst item) with a legal reply.
    let mut lines: Vec<Vec<(usize, Item, Item)>> = Vec::with_capacity(pack.horizon);
    for r in 0..pack.horizon {
        let mut row = Vec::new();
        for (j, b) in dst.moves()[r].iter().enumerate() {
            let a = &src.moves()[r][pack.t_one[r][j]];
            for &x in a.items() {
                rep.tr1_checked += 1;
                match pack.reply(r, j, x) {
                    Some(y) if b.contains(y) => row.push((j, x, y)),
                    reply => push(
                        &mut rep,
                        TrViolation::Tr1 {
                            round: r,
                            dst_move: j,
                            src_item: x,
                            reply,
                        },
                    ),
                }
            }
        }
        lines.push(row);
    }
    if rep.violations_total == 0 {
        let mut idx = vec![0usize; pack.horizon];
        if lines.iter().all(|l| !l.is_empty()) {
            loop {
                rep.tr2_checked += 1;
                let xs: Vec<Pick> = (0..pack.horizon).map(|r| ItemSet::single(lines[r][idx[r]].1)).collect();
                if src.evaluate(&xs) {
                    let ys: Vec<Pick> = (0..pack.horizon).map(|r| ItemSet::single(lines[r][idx[r]].2)).collect();
                    if !dst.evaluate(&ys) {
                        push(
                            &mut rep,
                            TrViolation::Tr2 {
                                dst_moves: (0..pack.horizon).map(|r| lines[r][idx[r]].0).collect(),
                                src_items: (0..pack.horizon).map(|r| lines[r][idx[r]].1).collect(),
                            },
                        );
                    }
                }
                let mut r = pack.horizon;
                let mut more = false;
                while r > 0 {
                    r -= 1;
                    idx[r] += 1;
                    if idx[r] < lines[r].len() {
                        more = true;
                        break;
                    }
                    idx[r] = 0;
                }
                if !more {
                    break;
                }
            }
        }
    }
    rep.holds = rep.violations_total == 0;
    Ok(rep)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    /// Markov win for Two in the source ⇒ Markov win for Two in the destination.
    MarkTwo,
    /// Winning strategy for Two in the source ⇒ one in the destination.
    FullTwo,
    /// Winning strategy for One in the destination ⇒ one in the source.
    FullOnePullback,
    /// Predetermined win for One in the destination ⇒ one in the source.
    PreOnePullback,
}

impl Direction {
    pub const ALL: [Direction; 4] = [
        Direction::MarkTwo,
        Direction::FullTwo,
        Direction::FullOnePullback,
        Direction::PreOnePullback,
    ];

    pub fn input_class(self) -> &'static str {
        match self {
            Direction::MarkTwo => "markov_two",
            Direction::FullTwo => "full_two",
            Direction::FullOnePullback => "full_one",
            Direction::PreOnePullback => "pre_one",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Direction::MarkTwo => "mark-two",
            Direction::FullTwo => "full-two",
            Direction::FullOnePullback => "full-one-pullback",
            Direction::PreOnePullback => "pre-one-pullback",
        }
    }

    /// Whether the input strategy lives in the source game.
    pub fn input_on_source(self) -> bool {
        matches!(self, Direction::MarkTwo | Direction::FullTwo)
    }
}

impl std::str::FromStr for Direction {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Direction::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| format!("unknown direction {s:?}"))
    }
}

fn single(p: &Pick) -> Item {
    p.items()[0]
}

/// Transfers a winning strategy across a pack, following the constructions
/// of the translation argument.
pub fn apply_translation(
    pack: &TranslationPack,
    src: &GameSpec,
    dst: &GameSpec,
    direction: Direction,
    input: &Strategy,
) -> Result<Strategy, TransformError> {
    if !check_tr_axioms(pack, src, dst)?.holds {
        return Err(TransformError::AxiomsFail);
    }
    if input.class_name() != direction.input_class() {
        return Err(TransformError::WrongStrategyClass {
            expected: direction.input_class(),
            got: input.class_name(),
        });
    }
    let home = if direction.input_on_source() { src } else { dst };
    if !verify(home, input, 0)?.winning {
        return Err(TransformError::InputNotWinning);
    }
    let h = pack.horizon;
    let reply = |r: usize, j: usize, x: Item| pack.reply(r, j, x).expect("Tr1 holds");
    Ok(match (direction, input) {
        (Direction::MarkTwo, Strategy::MarkovTwo { table }) => Strategy::MarkovTwo {
            table: (0..h)
                .map(|r| {
                    (0..dst.moves()[r].len())
                        .map(|j| ItemSet::single(reply(r, j, single(&table[r][pack.t_one[r][j]]))))
                        .collect()
                })
                .collect(),
        },
        (Direction::FullTwo, tau) => {
            let mut out = BTreeMap::new();
            let mut dst_hist = Vec::new();
            let mut src_hist = Vec::new();
            full_two(pack, dst, tau, &mut dst_hist, &mut src_hist, &mut out)?;
            Strategy::FullTwo { table: out }
        }
        (Direction::FullOnePullback, sigma) => {
            let mut out = BTreeMap::new();
            full_one(pack, src, sigma, &mut Vec::new(), &mut Vec::new(), &mut out)?;
            Strategy::FullOne { table: out }
        }
        (Direction::PreOnePullback, Strategy::PreOne { moves }) => Strategy::PreOne {
            moves: moves.iter().enumerate().map(|(r, &j)| pack.t_one[r][j]).collect(),
        },
        _ => unreachable!("class checked above"),
    })
}

fn full_two(
    pack: &TranslationPack,
    dst: &GameSpec,
    tau: &Strategy,
    dst_hist: &mut Vec<usize>,
    src_hist: &mut Vec<usize>,
    out: &mut BTreeMap<Vec<usize>, Pick>,
) -> Result<(), TransformError> {
    let r = dst_hist.len();
    if r == pack.horizon {
        return Ok(());
    }
    for j in 0..dst.moves()[r].len() {
        dst_hist.push(j);
        src_hist.push(pack.t_one[r][j]);
        let x = tau
            .two_pick(src_hist)
            .ok_or(PlayError::StrategyIncomplete { round: r })?;
        let y = pack.reply(r, j, single(x)).expect("Tr1 holds");
        out.insert(dst_hist.clone(), ItemSet::single(y));
        full_two(pack, dst, tau, dst_hist, src_hist, out)?;
        src_hist.pop();
        dst_hist.pop();
    }
    Ok(())
}

fn full_one(
    pack: &TranslationPack,
    src: &GameSpec,
    sigma: &Strategy,
    xs: &mut Vec<Pick>,
    ys: &mut Vec<Pick>,
    out: &mut BTreeMap<Vec<Pick>, usize>,
) -> Result<(), TransformError> {
    let r = xs.len();
    if r == pack.horizon {
        return Ok(());
    }
    let j = sigma
        .one_move(ys)
        .ok_or(PlayError::StrategyIncomplete { round: r })?;
    let a = pack.t_one[r][j];
    out.insert(xs.clone(), a);
    for &x in src.moves()[r][a].items() {
        let y = pack.reply(r, j, x).expect("Tr1 holds");
        xs.push(ItemSet::single(x));
        ys.push(ItemSet::single(y));
        full_one(pack, src, sigma, xs, ys, out)?;
        ys.pop();
        xs.pop();
    }
    Ok(())
}

/// Builds a pack from a per-round map `phi[round][dst item] = src item`.
/// Moves translate to their images; replies go to the least preimage.
pub fn lift_phi(phi: &[Vec<Item>], src: &GameSpec, dst: &GameSpec) -> Result<TranslationPack, TransformError> {
    let h = dst.horizon();
    if src.horizon() != h {
        return Err(TransformError::HorizonMismatch(src.horizon(), h));
    }
    if phi.len() != h || phi.iter().any(|row| row.len() != dst.domain().len()) {
        return Err(TransformError::MalformedPack("map is not total on the destination items".into()));
    }
    let mut t_one = Vec::with_capacity(h);
    let mut t_two = Vec::with_capacity(h);
    for r in 0..h {
        let mut one_row = Vec::new();
        let mut two_row = Vec::new();
        for (j, b) in dst.moves()[r].iter().enumerate() {
            let image: ItemSet = b.items().iter().map(|&y| phi[r][y as usize]).collect();
            let i = src.moves()[r]
                .iter()
                .position(|a| *a == image)
                .ok_or(TransformError::ImageNotMove { round: r, dst_move: j })?;
            one_row.push(i);
            // b is sorted, so the first preimage seen is the least.
            let mut pairs: Vec<(Item, Item)> = Vec::new();
            for &y in b.items() {
                let x = phi[r][y as usize];
                if !pairs.iter().any(|&(a, _)| a == x) {
                    pairs.push((x, y));
                }
            }
            pairs.sort_unstable();
            two_row.push(pairs);
        }
        t_one.push(one_row);
        t_two.push(two_row);
    }
    Ok(TranslationPack { horizon: h, t_one, t_two })
}

fn is_filter_base(fam: &[ItemSet]) -> bool {
    fam.iter().all(|a| {
        fam.iter().all(|b| {
            let both = a.intersection(b);
            fam.iter().any(|c| c.is_subset_of(&both))
        })
    })
}

fn least_inside(fam: &[ItemSet], bound: &ItemSet) -> Option<usize> {
    fam.iter().position(|c| c.is_subset_of(bound))
}

/// Whether the item sequence `seq` can arise as Two's picks in one run
/// against `s` in `game`.
pub fn in_play_s(s: &Strategy, game: &GameSpec, seq: &[Item]) -> bool {
    if seq.len() > game.horizon() {
        return false;
    }
    let picks: Vec<Pick> = seq.iter().map(|&x| ItemSet::single(x)).collect();
    (0..seq.len()).all(|k| match s.one_move(&picks[..k]) {
        Some(i) => i < game.moves()[k].len() && game.moves()[k][i].contains(seq[k]),
        None => false,
    })
}

/// Strengthens One's strategy `s`, winning the negated target at every
/// horizon in `[m, n]` (`n` the horizon of `game`), into σ whose runs have
/// every subsequence inside the runs of `s`.
pub fn strengthen_gamma_one(s: &Strategy, game: &GameSpec, m: usize) -> Result<Strategy, TransformError> {
    let n = game.horizon();
    if game.kind() != SelectionKind::Single {
        return Err(TransformError::KindMismatch);
    }
    if !matches!(game.target().body, Target::Not { .. }) {
        return Err(TransformError::TargetNotNegated);
    }
    if !game.is_round_constant() {
        return Err(TransformError::NotRoundConstant);
    }
    if m > n {
        return Err(TransformError::BadInterval { m, n });
    }
    let s = match s {
        Strategy::FullOne { .. } => s.clone(),
        Strategy::PreOne { moves } => Strategy::embed_pre(moves, game),
        other => {
            return Err(TransformError::WrongStrategyClass {
                expected: "full_one",
                got: other.class_name(),
            })
        }
    };
    if n == 0 {
        return Ok(Strategy::FullOne { table: BTreeMap::new() });
    }
    let fam = &game.moves()[0];
    if !is_filter_base(fam) {
        return Err(TransformError::NotFilterBase);
    }
    for h in m..=n {
        if !verify(&game.truncated(h), &s, 0)?.winning {
            return Err(TransformError::NotUniformlyWinning(h));
        }
    }

    let mut builder = GammaBuilder {
        s: &s,
        fam,
        gamma: HashMap::new(),
    };
    let first = s.one_move(&[]).ok_or(PlayError::StrategyIncomplete { round: 0 })?;
    let mut table = BTreeMap::new();
    builder.walk(&mut Vec::new(), first, n, &mut table)?;
    Ok(Strategy::FullOne { table })
}

struct GammaBuilder<'a> {
    s: &'a Strategy,
    fam: &'a [ItemSet],
    gamma: HashMap<Vec<Item>, usize>,
}

impl GammaBuilder<'_> {
    fn s_move(&self, seq: &[Item]) -> Result<usize, TransformError> {
        let picks: Vec<Pick> = seq.iter().map(|&x| ItemSet::single(x)).collect();
        Ok(self
            .s
            .one_move(&picks)
            .ok_or(PlayError::StrategyIncomplete { round: seq.len() })?)
    }

    /// Least member inside every `s` move along the nonempty prefixes of `seq`.
    fn gamma(&mut self, seq: &[Item]) -> Result<usize, TransformError> {
        if let Some(&g) = self.gamma.get(seq) {
            return Ok(g);
        }
        let mut bound = self.fam[self.s_move(&seq[..1])?].clone();
        for j in 2..=seq.len() {
            bound = bound.intersection(&self.fam[self.s_move(&seq[..j])?]);
        }
        let g = least_inside(self.fam, &bound).ok_or(TransformError::NotFilterBase)?;
        self.gamma.insert(seq.to_vec(), g);
        Ok(g)
    }

    /// σ after `hist`: least member inside `s(∅)` and every γ of a nonempty
    /// subsequence of `hist`.
    fn sigma(&mut self, hist: &[Item]) -> Result<usize, TransformError> {
        let mut bound = self.fam[self.s_move(&[])?].clone();
        for mask in 1u32..1 << hist.len() {
            let sub: Vec<Item> = (0..hist.len()).filter(|k| mask & (1 << k) != 0).map(|k| hist[k]).collect();
            bound = bound.intersection(&self.fam[self.gamma(&sub)?]);
        }
        least_inside(self.fam, &bound).ok_or(TransformError::NotFilterBase)
    }

    fn walk(
        &mut self,
        hist: &mut Vec<Item>,
        current: usize,
        n: usize,
        table: &mut BTreeMap<Vec<Pick>, usize>,
    ) -> Result<(), TransformError> {
        let picks: Vec<Pick> = hist.iter().map(|&x| ItemSet::single(x)).collect();
        table.insert(picks, current);
        if hist.len() + 1 == n {
            return Ok(());
        }
        let items: Vec<Item> = self.fam[current].items().to_vec();
        for x in items {
            hist.push(x);
            let next = self.sigma(hist)?;
            self.walk(hist, next, n, table)?;
            hist.pop();
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub plays: u64,
    pub subsequences: u64,
    pub failures: u64,
}

/// For every run against `sigma`, checks that every subsequence of Two's
/// picks (all `2^n` of them) is a run against `s`.
pub fn check_subsequence_closure(sigma: &Strategy, s: &Strategy, game: &GameSpec) -> Result<ClosureReport, TransformError> {
    let mut rep = ClosureReport {
        plays: 0,
        subsequences: 0,
        failures: 0,
    };
    fn go(
        sigma: &Strategy,
        s: &Strategy,
        game: &GameSpec,
        hist: &mut Vec<Item>,
        rep: &mut ClosureReport,
    ) -> Result<(), TransformError> {
        let r = hist.len();
        if r == game.horizon() {
            rep.plays += 1;
            for mask in 0u32..1 << r {
                rep.subsequences += 1;
                let sub: Vec<Item> = (0..r).filter(|k| mask & (1 << k) != 0).map(|k| hist[k]).collect();
                if !in_play_s(s, game, &sub) {
                    rep.failures += 1;
                }
            }
            return Ok(());
        }
        let picks: Vec<Pick> = hist.iter().map(|&x| ItemSet::single(x)).collect();
        let i = sigma.one_move(&picks).ok_or(PlayError::StrategyIncomplete { round: r })?;
        let items: Vec<Item> = game.moves()[r][i].items().to_vec();
        for x in items {
            hist.push(x);
            go(sigma, s, game, hist, rep)?;
            hist.pop();
        }
        Ok(())
    }
    go(sigma, s, game, &mut Vec::new(), &mut rep)?;
    Ok(rep)
}

/// Replaces each scripted member by the least-encoding member of `fam`
/// containing everything scripted so far. `s` and the result index `fam`.
pub fn intersect_predetermined(s: &[usize], fam: &SetFamily) -> Result<Vec<usize>, TransformError> {
    let members = fam.members();
    let mut union = crate::ground::Subset::EMPTY;
    let mut out = Vec::with_capacity(s.len());
    for (round, &i) in s.iter().enumerate() {
        let a = *members.get(i).ok_or(TransformError::IndexOutOfRange(i))?;
        union = union.union(a);
        let w = fam.least_superset(union).ok_or(TransformError::WitnessMissing(round))?;
        out.push(members.iter().position(|&m| m == w).unwrap());
    }
    if !fam.is_ideal_base() {
        return Err(TransformError::NotIdealBase);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockReport {
    pub plays: u64,
    pub blocks: u64,
    pub failures: u64,
}

/// For every run of `game` against the script `sigma`, checks that each
/// block of `m` consecutive picks is, re-indexed from round 0, a legal run
/// against the script `s`.
pub fn check_block_decomposition(game: &GameSpec, s: &[usize], sigma: &[usize], m: usize) -> Result<BlockReport, TransformError> {
    let n = game.horizon();
    if m > n || m > s.len() || sigma.len() != n {
        return Err(TransformError::BadInterval { m, n });
    }
    let mut rep = BlockReport {
        plays: 0,
        blocks: 0,
        failures: 0,
    };
    fn go(game: &GameSpec, s: &[usize], sigma: &[usize], m: usize, picks: &mut Vec<Pick>, rep: &mut BlockReport) {
        let r = picks.len();
        if r == game.horizon() {
            rep.plays += 1;
            for start in 0..=r - m {
                rep.blocks += 1;
                let ok = (0..m).all(|k| game.is_legal_pick(k, s[k], &picks[start + k]));
                if !ok {
                    rep.failures += 1;
                }
            }
            return;
        }
        for p in game.options(r, sigma[r]) {
            picks.push(p);
            go(game, s, sigma, m, picks, rep);
            picks.pop();
        }
    }
    for (r, &i) in sigma.iter().enumerate() {
        if i >= game.moves()[r].len() {
            return Err(TransformError::IndexOutOfRange(i));
        }
    }
    for (k, &i) in s.iter().take(m).enumerate() {
        if i >= game.moves()[k].len() {
            return Err(TransformError::IndexOutOfRange(i));
        }
    }
    go(game, s, sigma, m, &mut Vec::new(), &mut rep);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{make_game, ItemDomain, Winner};
    use crate::ground::Subset;
    use crate::solver::{find_markov_two, find_predetermined_one, solve, DEFAULT_BUDGET};

    fn is(items: &[Item]) -> ItemSet {
        items.to_vec().into()
    }

    fn abstract_game(fam: Vec<ItemSet>, h: usize, target: Target, n: usize) -> GameSpec {
        make_game(ItemDomain::ground(n), vec![fam; h], SelectionKind::Single, target).unwrap()
    }

    #[test]
    fn identity_pack_holds_and_copies() {
        let g = abstract_game(vec![is(&[0, 1]), is(&[2])], 2, Target::explicit([is(&[0, 2]), is(&[2])]), 3);
        let pack = TranslationPack::identity(&g);
        assert!(check_tr_axioms(&pack, &g, &g).unwrap().holds);
        if let Some(tau) = find_markov_two(&g, DEFAULT_BUDGET).unwrap() {
            let out = apply_translation(&pack, &g, &g, Direction::MarkTwo, &tau).unwrap();
            assert_eq!(out, tau);
        }
        let d = solve(&g);
        let dir = if d.winner == Winner::Two {
            Direction::FullTwo
        } else {
            Direction::FullOnePullback
        };
        let out = apply_translation(&pack, &g, &g, dir, &d.witness).unwrap();
        assert!(verify(&g, &out, 0).unwrap().winning);
    }

    #[test]
    fn broken_reply_is_reported() {
        let g = abstract_game(vec![is(&[0, 1])], 1, Target::explicit([is(&[0])]), 2);
        let mut pack = TranslationPack::identity(&g);
        pack.t_two[0][0] = vec![(0, 0), (1, 2)];
        let rep = check_tr_axioms(&pack, &g, &g).unwrap();
        assert!(!rep.holds);
        assert_eq!(
            rep.violations[0],
            TrViolation::Tr1 {
                round: 0,
                dst_move: 0,
                src_item: 1,
                reply: Some(2)
            }
        );
        let tau = Strategy::MarkovTwo { table: vec![vec![is(&[0])]] };
        assert_eq!(
            apply_translation(&pack, &g, &g, Direction::MarkTwo, &tau),
            Err(TransformError::AxiomsFail)
        );
    }

    #[test]
    fn collapsing_phi_picks_least_preimage() {
        // dst items 0,1 both map to src item 0.
        let src = abstract_game(vec![is(&[0])], 1, Target::explicit([is(&[0])]), 2);
        let dst = abstract_game(vec![is(&[0, 1])], 1, Target::explicit([is(&[0]), is(&[1])]), 2);
        let pack = lift_phi(&[vec![0, 0]], &src, &dst).unwrap();
        assert_eq!(pack.t_two[0][0], vec![(0, 0)]);
        assert!(check_tr_axioms(&pack, &src, &dst).unwrap().holds);
        // A map whose image is not a source move.
        assert_eq!(
            lift_phi(&[vec![0, 1]], &src, &dst),
            Err(TransformError::ImageNotMove { round: 0, dst_move: 0 })
        );
    }

    #[test]
    fn pre_pullback() {
        let src = abstract_game(vec![is(&[0]), is(&[1])], 2, Target::explicit([is(&[0, 1])]).not(), 2);
        let pack = TranslationPack::identity(&src);
        let pre = find_predetermined_one(&src).unwrap();
        let out = apply_translation(&pack, &src, &src, Direction::PreOnePullback, &pre).unwrap();
        assert_eq!(out, pre);
        assert_eq!(
            apply_translation(&pack, &src, &src, Direction::MarkTwo, &pre),
            Err(TransformError::WrongStrategyClass {
                expected: "markov_two",
                got: "pre_one"
            })
        );
    }

    fn chain_game(h: usize) -> GameSpec {
        // Filter base {0,1,2} ⊇ {0,1} ⊇ {0}; Two wins iff 2 is never picked... negated:
        // One must make the selection meet {0,1}, which every move forces.
        let fam = vec![is(&[0, 1, 2]), is(&[0, 1]), is(&[0])];
        let meets: Vec<ItemSet> = (1u32..8)
            .map(|m| (0..3).filter(|i| m & (1 << i) != 0).collect::<ItemSet>())
            .filter(|s| s.contains(0) || s.contains(1))
            .collect();
        abstract_game(fam, h, Target::explicit(meets).not(), 3)
    }

    #[test]
    fn gamma_strengthening_on_a_chain() {
        let g = chain_game(3);
        // s descends one step per round.
        let s = Strategy::PreOne { moves: vec![0, 1, 2] };
        let sigma = strengthen_gamma_one(&s, &g, 1);
        // s plays {0,1,2} first, so its one-round runs can miss {0,1}.
        assert_eq!(sigma, Err(TransformError::NotUniformlyWinning(1)));
        let sigma = strengthen_gamma_one(&s, &g, 2).unwrap();
        let full = Strategy::embed_pre(&[0, 1, 2], &g);
        let rep = check_subsequence_closure(&sigma, &full, &g).unwrap();
        assert_eq!(rep.failures, 0);
        assert_eq!(rep.subsequences, rep.plays * 8);
        // Round-wise minima: {0,1} after one pick, {0} after two.
        assert_eq!(sigma.one_move(&[is(&[2])]), Some(1));
        assert_eq!(sigma.one_move(&[is(&[2]), is(&[0])]), Some(2));
        let Target::Not { inner } = g.target().body.clone() else { unreachable!() };
        let core = g.with_target(inner.gamma_core(2).not()).unwrap();
        assert!(verify(&core, &sigma, 0).unwrap().winning);
    }

    #[test]
    fn constant_largest_set_is_unchanged() {
        let fam = vec![is(&[0, 1, 2]), is(&[0, 1]), is(&[0])];
        let all: Vec<ItemSet> = (1u32..8).map(|m| (0..3).filter(|i| m & (1 << i) != 0).collect()).collect();
        let g = abstract_game(fam, 2, Target::explicit(all).not(), 3);
        let s = Strategy::PreOne { moves: vec![0, 0] };
        let sigma = strengthen_gamma_one(&s, &g, 1).unwrap();
        assert_eq!(sigma, Strategy::embed_pre(&[0, 0], &g));
    }

    #[test]
    fn singletons_are_not_a_filter_base() {
        let g = abstract_game(vec![is(&[0]), is(&[1])], 1, Target::explicit([]).not(), 2);
        let s = Strategy::PreOne { moves: vec![0] };
        assert_eq!(strengthen_gamma_one(&s, &g, 1), Err(TransformError::NotFilterBase));
    }

    #[test]
    fn intersect_examples() {
        let s = |x: &[usize]| Subset::from_items(x.iter().copied());
        let fam = SetFamily::new(3, [s(&[0]), s(&[1]), s(&[0, 1])]).unwrap();
        assert_eq!(intersect_predetermined(&[0, 1], &fam), Ok(vec![0, 2]));
        let singles = SetFamily::singletons(3);
        assert_eq!(intersect_predetermined(&[0, 1], &singles), Err(TransformError::WitnessMissing(1)));
    }
}
