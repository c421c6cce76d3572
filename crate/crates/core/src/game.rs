//! Finite-horizon selection games: specifications, targets, strategies and plays.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ground::{assess_cover, GroundSpace, Subset, MAX_UNIVERSE};

pub type Item = u32;

/// Hard cap on the number of rounds.
pub const MAX_HORIZON: usize = 8;
/// Largest MoveSet allowed in a [`SelectionKind::Finite`] game (Two then has
/// `2^8 - 1` replies per move).
pub const MAX_FINITE_MOVESET: usize = 8;
const HINT_SAMPLES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("round {round} has an empty move family")]
    EmptyFamily { round: usize },
    #[error("move {index} of round {round} is empty")]
    EmptyMove { round: usize, index: usize },
    #[error("item {item} is outside the domain of {len} items")]
    ItemOutOfRange { item: Item, len: usize },
    #[error("label {0} is outside the ground set")]
    LabelOutOfRange(Subset),
    #[error("horizon {0} exceeds the cap of {MAX_HORIZON}")]
    HorizonTooLarge(usize),
    #[error("move {index} of round {round} has {len} items; finite selection allows at most {MAX_FINITE_MOVESET}")]
    MoveSetTooLarge { round: usize, index: usize, len: usize },
    #[error("hint `{0}` is falsified by a sampled selection")]
    UnsoundHint(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlayError {
    #[error("illegal move in round {round}")]
    IllegalMove { round: usize },
    #[error("strategy has no entry for round {round} of this history")]
    StrategyIncomplete { round: usize },
    #[error("transcript ends before round {round}")]
    ShortTranscript { round: usize },
    #[error("strategy belongs to the other player")]
    WrongPlayer,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Winner {
    One,
    Two,
}

impl Winner {
    pub fn other(self) -> Winner {
        match self {
            Winner::One => Winner::Two,
            Winner::Two => Winner::One,
        }
    }
}

impl fmt::Display for Winner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Winner::One => "One",
            Winner::Two => "Two",
        })
    }
}

/// A sorted set of items without repeats.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<Item>", into = "Vec<Item>")]
pub struct ItemSet(Vec<Item>);

impl From<Vec<Item>> for ItemSet {
    fn from(mut v: Vec<Item>) -> Self {
        v.sort_unstable();
        v.dedup();
        ItemSet(v)
    }
}

impl From<ItemSet> for Vec<Item> {
    fn from(s: ItemSet) -> Self {
        s.0
    }
}

impl FromIterator<Item> for ItemSet {
    fn from_iter<I: IntoIterator<Item = Item>>(iter: I) -> Self {
        ItemSet::from(iter.into_iter().collect::<Vec<_>>())
    }
}

impl ItemSet {
    pub fn single(item: Item) -> Self {
        ItemSet(vec![item])
    }

    pub fn from_subset(s: Subset) -> Self {
        s.items().map(|i| i as Item).collect()
    }

    pub fn items(&self) -> &[Item] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, item: Item) -> bool {
        self.0.binary_search(&item).is_ok()
    }

    pub fn is_subset_of(&self, other: &ItemSet) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }

    pub fn meets(&self, other: &ItemSet) -> bool {
        self.0.iter().any(|&i| other.contains(i))
    }

    pub fn union(&self, other: &ItemSet) -> ItemSet {
        self.0.iter().chain(other.0.iter()).copied().collect()
    }

    pub fn intersection(&self, other: &ItemSet) -> ItemSet {
        ItemSet(self.0.iter().copied().filter(|&i| other.contains(i)).collect())
    }
}

/// What Two picks in one round: one item in single selection, a nonempty
/// finite subset of the offered MoveSet in finite selection.
pub type Pick = ItemSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SelectionKind {
    Single,
    Finite,
}

/// The items a game is played over, each carrying the ground subset it stands for.
///
/// Abstract games use the ground items themselves (`labels[i] = {i}`); cover
/// games use the open sets of a space as items.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ItemDomain {
    pub ground_size: usize,
    pub labels: Vec<Subset>,
}

impl ItemDomain {
    pub fn ground(size: usize) -> Self {
        ItemDomain {
            ground_size: size,
            labels: (0..size).map(Subset::singleton).collect(),
        }
    }

    pub fn opens(space: &GroundSpace) -> Self {
        ItemDomain {
            ground_size: space.size(),
            labels: space.opens().to_vec(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn universe(&self) -> Subset {
        Subset::full(self.ground_size)
    }

    pub fn label(&self, item: Item) -> Subset {
        self.labels[item as usize]
    }
}

/// Two's winning condition on the sequence of picks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Target {
    /// The picked labels form an O-cover of `fam`.
    CoversFamily { fam: Vec<Subset> },
    /// O-cover in which every member of `fam` lies in at least `m` distinct picked labels.
    MultiCover { fam: Vec<Subset>, m: usize },
    /// Every run of `w` consecutive rounds covers `fam`.
    WindowCover { fam: Vec<Subset>, w: usize },
    /// The set of all picked items is one of `sets`.
    ExplicitSet { sets: Vec<ItemSet> },
    /// Every subsequence of rounds of length at least `m` satisfies `inner`.
    GammaCore { inner: Box<Target>, m: usize },
    Not { inner: Box<Target> },
}

impl Target {
    pub fn not(self) -> Target {
        Target::Not { inner: Box::new(self) }
    }

    pub fn gamma_core(self, m: usize) -> Target {
        Target::GammaCore {
            inner: Box::new(self),
            m,
        }
    }

    pub fn explicit<I: IntoIterator<Item = ItemSet>>(sets: I) -> Target {
        let mut sets: Vec<ItemSet> = sets.into_iter().collect();
        sets.sort();
        sets.dedup();
        Target::ExplicitSet { sets }
    }

    /// Whether `self` and `other` are literal negations of each other.
    pub fn is_complement_of(&self, other: &Target) -> bool {
        matches!(self, Target::Not { inner } if **inner == *other)
            || matches!(other, Target::Not { inner } if **inner == *self)
    }

    fn normalize(&mut self) {
        match self {
            Target::ExplicitSet { sets } => {
                sets.sort();
                sets.dedup();
            }
            Target::GammaCore { inner, .. } | Target::Not { inner } => inner.normalize(),
            _ => {}
        }
    }

    fn check(&self, domain: &ItemDomain) -> Result<(), GameError> {
        let full = domain.universe();
        let check_fam = |fam: &[Subset]| match fam.iter().find(|a| !a.is_subset_of(full)) {
            Some(&bad) => Err(GameError::LabelOutOfRange(bad)),
            None => Ok(()),
        };
        match self {
            Target::CoversFamily { fam } | Target::MultiCover { fam, .. } | Target::WindowCover { fam, .. } => {
                check_fam(fam)
            }
            Target::ExplicitSet { sets } => {
                for s in sets {
                    if let Some(&item) = s.items().iter().find(|&&i| i as usize >= domain.len()) {
                        return Err(GameError::ItemOutOfRange {
                            item,
                            len: domain.len(),
                        });
                    }
                }
                Ok(())
            }
            Target::GammaCore { inner, .. } | Target::Not { inner } => inner.check(domain),
        }
    }

    fn inferred_hints(&self, domain: &ItemDomain) -> Hints {
        let universe_is_label = domain.labels.contains(&domain.universe());
        match self {
            Target::CoversFamily { .. } | Target::MultiCover { .. } => Hints {
                order_insensitive: true,
                monotone_up: !universe_is_label,
            },
            Target::WindowCover { .. } => Hints {
                order_insensitive: false,
                monotone_up: !universe_is_label,
            },
            Target::ExplicitSet { .. } => Hints {
                order_insensitive: true,
                monotone_up: false,
            },
            Target::GammaCore { inner, .. } => inner.inferred_hints(domain),
            Target::Not { inner } => Hints {
                order_insensitive: inner.inferred_hints(domain).order_insensitive,
                monotone_up: false,
            },
        }
    }
}

/// Optimization hints. `order_insensitive`: the verdict depends only on the
/// multiset of picks. `monotone_up`: adding items to a pick never turns a win
/// for Two into a loss.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hints {
    pub order_insensitive: bool,
    pub monotone_up: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetPredicate {
    pub body: Target,
    pub hints: Hints,
}

/// Evaluates `target` on a sequence of picks over `domain`.
pub fn evaluate_target(target: &Target, domain: &ItemDomain, selection: &[Pick]) -> bool {
    match target {
        Target::CoversFamily { fam } => cover_verdict(domain, fam, selection).is_o,
        Target::MultiCover { fam, m } => {
            let v = cover_verdict(domain, fam, selection);
            v.is_o && (fam.is_empty() || v.lambda_m >= *m)
        }
        Target::WindowCover { fam, w } => cover_verdict(domain, fam, selection)
            .gamma_window
            .is_some_and(|g| g <= *w),
        Target::ExplicitSet { sets } => {
            let all: ItemSet = selection.iter().flat_map(|p| p.items().iter().copied()).collect();
            sets.binary_search(&all).is_ok()
        }
        Target::GammaCore { inner, m } => {
            let n = selection.len();
            (0u32..1 << n).all(|mask| {
                if (mask.count_ones() as usize) < *m {
                    return true;
                }
                let sub: Vec<Pick> = (0..n)
                    .filter(|k| mask & (1 << k) != 0)
                    .map(|k| selection[k].clone())
                    .collect();
                evaluate_target(inner, domain, &sub)
            })
        }
        Target::Not { inner } => !evaluate_target(inner, domain, selection),
    }
}

fn cover_verdict(domain: &ItemDomain, fam: &[Subset], selection: &[Pick]) -> crate::ground::CoverVerdict {
    let groups: Vec<Vec<Subset>> = selection
        .iter()
        .map(|p| p.items().iter().map(|&i| domain.label(i)).collect())
        .collect();
    assess_cover(domain.universe(), fam, &groups)
}

/// A validated game. One's move in round `r` is an index into `moves[r]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawGame", into = "RawGame")]
pub struct GameSpec {
    domain: ItemDomain,
    moves: Vec<Vec<ItemSet>>,
    kind: SelectionKind,
    target: TargetPredicate,
}

#[derive(Serialize, Deserialize)]
struct RawGame {
    domain: ItemDomain,
    moves: Vec<Vec<ItemSet>>,
    kind: SelectionKind,
    target: Target,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    hints: Option<Hints>,
}

impl TryFrom<RawGame> for GameSpec {
    type Error = GameError;
    fn try_from(raw: RawGame) -> Result<Self, Self::Error> {
        make_game_with_hints(raw.domain, raw.moves, raw.kind, raw.target, raw.hints)
    }
}

impl From<GameSpec> for RawGame {
    fn from(g: GameSpec) -> Self {
        RawGame {
            domain: g.domain,
            moves: g.moves,
            kind: g.kind,
            target: g.target.body,
            hints: Some(g.target.hints),
        }
    }
}

/// Validates a game and infers its target hints. The horizon is `moves.len()`.
pub fn make_game(
    domain: ItemDomain,
    moves: Vec<Vec<ItemSet>>,
    kind: SelectionKind,
    target: Target,
) -> Result<GameSpec, GameError> {
    make_game_with_hints(domain, moves, kind, target, None)
}

/// As [`make_game`], with caller-supplied hints that are spot-checked by sampling.
pub fn make_game_with_hints(
    domain: ItemDomain,
    moves: Vec<Vec<ItemSet>>,
    kind: SelectionKind,
    mut target: Target,
    hints: Option<Hints>,
) -> Result<GameSpec, GameError> {
    if domain.ground_size > MAX_UNIVERSE {
        return Err(GameError::LabelOutOfRange(Subset::full(MAX_UNIVERSE)));
    }
    if let Some(&bad) = domain.labels.iter().find(|l| !l.is_subset_of(domain.universe())) {
        return Err(GameError::LabelOutOfRange(bad));
    }
    if moves.len() > MAX_HORIZON {
        return Err(GameError::HorizonTooLarge(moves.len()));
    }
    for (round, family) in moves.iter().enumerate() {
        if family.is_empty() {
            return Err(GameError::EmptyFamily { round });
        }
        for (index, m) in family.iter().enumerate() {
            if m.is_empty() {
                return Err(GameError::EmptyMove { round, index });
            }
            if let Some(&item) = m.items().iter().find(|&&i| i as usize >= domain.len()) {
                return Err(GameError::ItemOutOfRange {
                    item,
                    len: domain.len(),
                });
            }
            if kind == SelectionKind::Finite && m.len() > MAX_FINITE_MOVESET {
                return Err(GameError::MoveSetTooLarge {
                    round,
                    index,
                    len: m.len(),
                });
            }
        }
    }
    target.normalize();
    target.check(&domain)?;
    let inferred = target.inferred_hints(&domain);
    let mut game = GameSpec {
        domain,
        moves,
        kind,
        target: TargetPredicate {
            body: target,
            hints: inferred,
        },
    };
    if let Some(h) = hints {
        if h.order_insensitive && !inferred.order_insensitive {
            game.spot_check(true)?;
        }
        if h.monotone_up && !inferred.monotone_up {
            game.spot_check(false)?;
        }
        game.target.hints = h;
    }
    Ok(game)
}

impl GameSpec {
    pub fn domain(&self) -> &ItemDomain {
        &self.domain
    }

    pub fn moves(&self) -> &[Vec<ItemSet>] {
        &self.moves
    }

    pub fn horizon(&self) -> usize {
        self.moves.len()
    }

    pub fn kind(&self) -> SelectionKind {
        self.kind
    }

    pub fn target(&self) -> &TargetPredicate {
        &self.target
    }

    pub fn evaluate(&self, selection: &[Pick]) -> bool {
        evaluate_target(&self.target.body, &self.domain, selection)
    }

    pub fn winner_of(&self, selection: &[Pick]) -> Winner {
        if self.evaluate(selection) {
            Winner::Two
        } else {
            Winner::One
        }
    }

    /// Same game with the first `h` rounds only.
    pub fn truncated(&self, h: usize) -> GameSpec {
        let mut g = self.clone();
        g.moves.truncate(h);
        g
    }

    /// Same moves and kind, different target (hints re-inferred).
    pub fn with_target(&self, target: Target) -> Result<GameSpec, GameError> {
        make_game(self.domain.clone(), self.moves.clone(), self.kind, target)
    }

    /// Two's legal replies to move `index` of round `round`, in canonical order.
    pub fn options(&self, round: usize, index: usize) -> Vec<Pick> {
        let m = &self.moves[round][index];
        match self.kind {
            SelectionKind::Single => m.items().iter().map(|&i| ItemSet::single(i)).collect(),
            SelectionKind::Finite => {
                let items = m.items();
                (1u32..1 << items.len())
                    .map(|mask| {
                        items
                            .iter()
                            .enumerate()
                            .filter(|(k, _)| mask & (1 << k) != 0)
                            .map(|(_, &i)| i)
                            .collect()
                    })
                    .collect()
            }
        }
    }

    pub fn is_legal_pick(&self, round: usize, index: usize, pick: &Pick) -> bool {
        let m = &self.moves[round][index];
        let size_ok = match self.kind {
            SelectionKind::Single => pick.len() == 1,
            SelectionKind::Finite => !pick.is_empty(),
        };
        size_ok && pick.is_subset_of(m)
    }

    /// Moves repeat verbatim every round.
    pub fn is_round_constant(&self) -> bool {
        self.moves.windows(2).all(|w| w[0] == w[1])
    }

    fn spot_check(&self, order: bool) -> Result<(), GameError> {
        if self.horizon() == 0 {
            return Ok(());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..HINT_SAMPLES {
            let sel: Vec<Pick> = (0..self.horizon())
                .map(|r| {
                    let idx = rng.gen_range(0..self.moves[r].len());
                    let opts = self.options(r, idx);
                    opts[rng.gen_range(0..opts.len())].clone()
                })
                .collect();
            let base = self.evaluate(&sel);
            if order {
                let mut perm = sel.clone();
                perm.shuffle(&mut rng);
                if self.evaluate(&perm) != base {
                    return Err(GameError::UnsoundHint("order_insensitive"));
                }
            } else if base {
                let mut grown = sel.clone();
                let k = rng.gen_range(0..grown.len());
                let extra = rng.gen_range(0..self.domain.len()) as Item;
                grown[k] = grown[k].union(&ItemSet::single(extra));
                if !self.evaluate(&grown) {
                    return Err(GameError::UnsoundHint("monotone_up"));
                }
            }
        }
        Ok(())
    }
}

mod pairs {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<K: Serialize, V: Serialize, S: Serializer>(
        map: &BTreeMap<K, V>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        s.collect_seq(map.iter())
    }

    pub fn deserialize<'de, K, V, D>(d: D) -> Result<BTreeMap<K, V>, D::Error>
    where
        K: Deserialize<'de> + Ord,
        V: Deserialize<'de>,
        D: Deserializer<'de>,
    {
        Ok(Vec::<(K, V)>::deserialize(d)?.into_iter().collect())
    }
}

/// A tabulated strategy.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum Strategy {
    /// Two's picks so far ↦ One's move index.
    FullOne {
        #[serde(with = "pairs")]
        table: BTreeMap<Vec<Pick>, usize>,
    },
    /// One's move index per round.
    PreOne { moves: Vec<usize> },
    /// One's move indices so far (current one included) ↦ Two's pick.
    FullTwo {
        #[serde(with = "pairs")]
        table: BTreeMap<Vec<usize>, Pick>,
    },
    /// `table[round][move index]` is Two's pick.
    MarkovTwo { table: Vec<Vec<Pick>> },
}

impl Strategy {
    pub fn player(&self) -> Winner {
        match self {
            Strategy::FullOne { .. } | Strategy::PreOne { .. } => Winner::One,
            Strategy::FullTwo { .. } | Strategy::MarkovTwo { .. } => Winner::Two,
        }
    }

    pub fn class_name(&self) -> &'static str {
        match self {
            Strategy::FullOne { .. } => "full_one",
            Strategy::PreOne { .. } => "pre_one",
            Strategy::FullTwo { .. } => "full_two",
            Strategy::MarkovTwo { .. } => "markov_two",
        }
    }

    /// One's move in round `picks.len()` after Two's `picks`.
    pub fn one_move(&self, picks: &[Pick]) -> Option<usize> {
        match self {
            Strategy::FullOne { table } => table.get(picks).copied(),
            Strategy::PreOne { moves } => moves.get(picks.len()).copied(),
            _ => None,
        }
    }

    /// Two's pick in round `moves.len() - 1` after One's `moves`.
    pub fn two_pick(&self, moves: &[usize]) -> Option<&Pick> {
        let round = moves.len().checked_sub(1)?;
        match self {
            Strategy::FullTwo { table } => table.get(moves),
            Strategy::MarkovTwo { table } => table.get(round)?.get(moves[round]),
            _ => None,
        }
    }

    /// A predetermined strategy as a full-information table over `game`.
    pub fn embed_pre(moves: &[usize], game: &GameSpec) -> Strategy {
        fn walk(game: &GameSpec, moves: &[usize], picks: &mut Vec<Pick>, table: &mut BTreeMap<Vec<Pick>, usize>) {
            let r = picks.len();
            if r == game.horizon() || r >= moves.len() || moves[r] >= game.moves[r].len() {
                return;
            }
            table.insert(picks.clone(), moves[r]);
            for p in game.options(r, moves[r]) {
                picks.push(p);
                walk(game, moves, picks, table);
                picks.pop();
            }
        }
        let mut table = BTreeMap::new();
        walk(game, moves, &mut Vec::new(), &mut table);
        Strategy::FullOne { table }
    }

    /// A Markov strategy as a full-information table over `game`.
    pub fn embed_markov(table: &[Vec<Pick>], game: &GameSpec) -> Strategy {
        let mut out = BTreeMap::new();
        let mut hist = Vec::new();
        fn walk(game: &GameSpec, markov: &[Vec<Pick>], hist: &mut Vec<usize>, out: &mut BTreeMap<Vec<usize>, Pick>) {
            let r = hist.len();
            if r == game.horizon() {
                return;
            }
            for i in 0..game.moves[r].len() {
                hist.push(i);
                if let Some(p) = markov.get(r).and_then(|row| row.get(i)) {
                    out.insert(hist.clone(), p.clone());
                }
                walk(game, markov, hist, out);
                hist.pop();
            }
        }
        walk(game, table, &mut hist, &mut out);
        Strategy::FullTwo { table: out }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlayRecord {
    pub one_moves: Vec<usize>,
    pub two_selections: Vec<Pick>,
    pub winner: Winner,
}

pub enum OnePolicy<'a> {
    Strategy(&'a Strategy),
    Moves(&'a [usize]),
}

pub enum TwoPolicy<'a> {
    Strategy(&'a Strategy),
    Picks(&'a [Pick]),
}

/// Plays one run of `game` to the end.
pub fn play(game: &GameSpec, one: OnePolicy<'_>, two: TwoPolicy<'_>) -> Result<PlayRecord, PlayError> {
    if let OnePolicy::Strategy(s) = &one {
        if s.player() != Winner::One {
            return Err(PlayError::WrongPlayer);
        }
    }
    if let TwoPolicy::Strategy(s) = &two {
        if s.player() != Winner::Two {
            return Err(PlayError::WrongPlayer);
        }
    }
    let mut one_moves = Vec::with_capacity(game.horizon());
    let mut picks: Vec<Pick> = Vec::with_capacity(game.horizon());
    for round in 0..game.horizon() {
        let m = match &one {
            OnePolicy::Strategy(s) => s.one_move(&picks).ok_or(PlayError::StrategyIncomplete { round })?,
            OnePolicy::Moves(ms) => *ms.get(round).ok_or(PlayError::ShortTranscript { round })?,
        };
        if m >= game.moves[round].len() {
            return Err(PlayError::IllegalMove { round });
        }
        one_moves.push(m);
        let p = match &two {
            TwoPolicy::Strategy(s) => s
                .two_pick(&one_moves)
                .ok_or(PlayError::StrategyIncomplete { round })?
                .clone(),
            TwoPolicy::Picks(ps) => ps.get(round).ok_or(PlayError::ShortTranscript { round })?.clone(),
        };
        if !game.is_legal_pick(round, m, &p) {
            return Err(PlayError::IllegalMove { round });
        }
        picks.push(p);
    }
    let winner = game.winner_of(&picks);
    Ok(PlayRecord {
        one_moves,
        two_selections: picks,
        winner,
    })
}
