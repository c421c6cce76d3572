//! Scenario files and the point-open / Rothberger game builders.

use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::game::{make_game, GameSpec, Item, ItemDomain, ItemSet, SelectionKind, Target, Winner};
use crate::ground::{min_covers, GroundSpace, SetFamily, Subset};

/// Cap on the number of minimal covers a Rothberger move family may use.
pub const ROTHBERGER_COVER_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceSpec {
    pub size: usize,
    pub subbasis: Vec<Subset>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Families {
    pub a: Vec<Subset>,
    pub b: Vec<Subset>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flavor {
    PointOpen,
    PointOpenWindow,
    Rothberger,
    RothbergerLambda,
    Abstract,
}

/// Expected outcomes, checked by `solve`, `synth` and `corpus run`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Expect {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub winner: Option<Winner>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pre_one: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub markov_two: Option<bool>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub game: Option<GameSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Expect>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scenario {
    pub name: String,
    pub space: SpaceSpec,
    pub families: Families,
    pub horizon: usize,
    pub flavor: Flavor,
    #[serde(default)]
    pub params: Params,
}

/// Two scenarios whose games are checked for duality.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScenarioPair {
    #[serde(default)]
    pub name: String,
    pub first: Scenario,
    pub second: Scenario,
}

impl Scenario {
    pub fn parse(text: &str) -> Result<Self, HarnessError> {
        serde_json::from_str(text).map_err(|e| HarnessError::Parse(e.to_string()))
    }

    /// Canonical text form: pretty JSON with a trailing newline.
    pub fn emit(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("scenario serializes");
        s.push('\n');
        s
    }

    pub fn space(&self) -> Result<GroundSpace, HarnessError> {
        Ok(GroundSpace::build_topology(self.space.size, &self.space.subbasis)?)
    }

    pub fn fam_a(&self) -> Result<SetFamily, HarnessError> {
        Ok(SetFamily::new(self.space.size, self.families.a.iter().copied())?)
    }

    pub fn fam_b(&self) -> Result<SetFamily, HarnessError> {
        Ok(SetFamily::new(self.space.size, self.families.b.iter().copied())?)
    }

    pub fn expect(&self) -> Expect {
        self.params.expect.clone().unwrap_or_default()
    }

    /// The game this scenario describes, optionally at another horizon.
    pub fn build(&self, horizon: Option<usize>) -> Result<GameSpec, HarnessError> {
        let h = horizon.unwrap_or(self.horizon);
        if self.flavor == Flavor::Abstract {
            let g = self.params.game.as_ref().ok_or(HarnessError::MissingParam("game"))?;
            if h > g.horizon() {
                return Err(HarnessError::HorizonMismatch {
                    wanted: h,
                    available: g.horizon(),
                });
            }
            return Ok(g.truncated(h));
        }
        let space = self.space()?;
        let a = self.fam_a()?;
        let b = self.fam_b()?;
        match self.flavor {
            Flavor::PointOpen | Flavor::PointOpenWindow => {
                if !space.points_closed() {
                    return Err(HarnessError::PointsNotClosed);
                }
                let t = if self.flavor == Flavor::PointOpen {
                    PointTarget::Cover
                } else {
                    PointTarget::Window(self.params.w.ok_or(HarnessError::MissingParam("w"))?)
                };
                build_point_open(&space, &a, &b, h, t)
            }
            Flavor::Rothberger => build_rothberger(&space, &a, &b, h, None),
            Flavor::RothbergerLambda => {
                let m = self.params.m.ok_or(HarnessError::MissingParam("m"))?;
                build_rothberger(&space, &a, &b, h, Some(m))
            }
            Flavor::Abstract => unreachable!(),
        }
    }

    /// An abstract scenario wrapping an explicit game.
    pub fn from_game(name: impl Into<String>, game: &GameSpec) -> Self {
        Scenario {
            name: name.into(),
            space: SpaceSpec {
                size: game.domain().ground_size,
                subbasis: Vec::new(),
            },
            families: Families {
                a: Vec::new(),
                b: Vec::new(),
            },
            horizon: game.horizon(),
            flavor: Flavor::Abstract,
            params: Params {
                game: Some(game.clone()),
                ..Params::default()
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointTarget {
    /// Two wins when the picked opens fail to cover `fam_b`.
    Cover,
    /// Two wins when some window of `w` rounds fails to cover `fam_b`.
    Window(usize),
}

fn open_items(space: &GroundSpace, opens: &[Subset]) -> ItemSet {
    opens
        .iter()
        .map(|&o| space.open_index(o).expect("open") as Item)
        .collect()
}

/// One names a member `A` of `fam_a` (the move is every proper open around
/// `A`), Two picks one of those opens. The universe is never offered.
pub fn build_point_open(
    space: &GroundSpace,
    fam_a: &SetFamily,
    fam_b: &SetFamily,
    horizon: usize,
    target: PointTarget,
) -> Result<GameSpec, HarnessError> {
    let mut family = Vec::with_capacity(fam_a.len());
    for &a in fam_a.members() {
        let nbhd = space.proper_neighborhoods(a);
        if nbhd.is_empty() {
            return Err(HarnessError::NoNeighborhood(a));
        }
        family.push(open_items(space, &nbhd));
    }
    let fam = fam_b.members().to_vec();
    let body = match target {
        PointTarget::Cover => Target::CoversFamily { fam },
        PointTarget::Window(w) => Target::WindowCover { fam, w },
    };
    Ok(make_game(
        ItemDomain::opens(space),
        vec![family; horizon],
        SelectionKind::Single,
        body.not(),
    )?)
}

/// One offers a minimal O-cover for `fam_a`, Two picks one open from it.
/// With `lambda = Some(m)` Two must cover every member of `fam_b` `m` times.
pub fn build_rothberger(
    space: &GroundSpace,
    fam_a: &SetFamily,
    fam_b: &SetFamily,
    horizon: usize,
    lambda: Option<usize>,
) -> Result<GameSpec, HarnessError> {
    let covers = min_covers(space, fam_a, ROTHBERGER_COVER_CAP);
    if covers.truncated {
        return Err(HarnessError::TooManyCovers);
    }
    // The empty cover (empty fam_a) is not a legal move.
    let family: Vec<ItemSet> = covers
        .covers
        .iter()
        .filter(|c| !c.is_empty())
        .map(|c| open_items(space, c))
        .collect();
    if family.is_empty() {
        return Err(HarnessError::NoCovers);
    }
    let fam = fam_b.members().to_vec();
    let body = match lambda {
        None => Target::CoversFamily { fam },
        Some(m) => Target::MultiCover { fam, m },
    };
    Ok(make_game(
        ItemDomain::opens(space),
        vec![family; horizon],
        SelectionKind::Single,
        body,
    )?)
}

/// Rothberger game whose moves are all O-covers, not only the minimal ones.
/// Exponential in the number of opens; meant for small spaces.
pub fn build_rothberger_all_covers(
    space: &GroundSpace,
    fam_a: &SetFamily,
    fam_b: &SetFamily,
    horizon: usize,
) -> Result<GameSpec, HarnessError> {
    let proper: Vec<Subset> = space
        .opens()
        .iter()
        .copied()
        .filter(|&o| o != space.universe())
        .collect();
    if proper.len() > 16 {
        return Err(HarnessError::TooManyCovers);
    }
    let mut family = Vec::new();
    for mask in 1u32..1 << proper.len() {
        let listed: Vec<Subset> = (0..proper.len())
            .filter(|k| mask & (1 << k) != 0)
            .map(|k| proper[k])
            .collect();
        let covers = fam_a
            .members()
            .iter()
            .all(|&a| listed.iter().any(|&u| a.is_subset_of(u)));
        if covers {
            family.push(open_items(space, &listed));
        }
    }
    if family.is_empty() {
        return Err(HarnessError::NoCovers);
    }
    family.sort();
    Ok(make_game(
        ItemDomain::opens(space),
        vec![family; horizon],
        SelectionKind::Single,
        Target::CoversFamily {
            fam: fam_b.members().to_vec(),
        },
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::solve;

    fn s(items: &[usize]) -> Subset {
        Subset::from_items(items.iter().copied())
    }

    fn discrete2(h: usize, flavor: Flavor) -> Scenario {
        Scenario {
            name: "t".into(),
            space: SpaceSpec {
                size: 2,
                subbasis: vec![s(&[0]), s(&[1])],
            },
            families: Families {
                a: vec![s(&[0]), s(&[1])],
                b: vec![s(&[0]), s(&[1])],
            },
            horizon: h,
            flavor,
            params: Params::default(),
        }
    }

    #[test]
    fn point_open_and_rothberger_winners() {
        let po = discrete2(2, Flavor::PointOpen).build(None).unwrap();
        assert_eq!(solve(&po).winner, Winner::One);
        let ro = discrete2(2, Flavor::Rothberger).build(None).unwrap();
        assert_eq!(solve(&ro).winner, Winner::Two);
        let ro1 = discrete2(2, Flavor::Rothberger).build(Some(1)).unwrap();
        assert_eq!(solve(&ro1).winner, Winner::One);
    }

    #[test]
    fn empty_target_family_means_one_wins() {
        let mut sc = discrete2(2, Flavor::PointOpen);
        sc.families.b.clear();
        let g = sc.build(None).unwrap();
        assert_eq!(solve(&g).winner, Winner::One);
    }

    #[test]
    fn builder_errors() {
        let ind = GroundSpace::indiscrete(2).unwrap();
        let a = SetFamily::new(2, [s(&[0])]).unwrap();
        assert_eq!(
            build_point_open(&ind, &a, &a, 1, PointTarget::Cover),
            Err(HarnessError::NoNeighborhood(s(&[0])))
        );
        let disc = GroundSpace::discrete(2).unwrap();
        let ib = SetFamily::new(2, [s(&[0]), s(&[1]), s(&[0, 1])]).unwrap();
        assert_eq!(build_rothberger(&disc, &ib, &ib, 1, None), Err(HarnessError::NoCovers));
        let mut sc = discrete2(1, Flavor::PointOpen);
        sc.space.subbasis = vec![s(&[0])];
        assert_eq!(sc.build(None), Err(HarnessError::PointsNotClosed));
        assert_eq!(
            discrete2(1, Flavor::PointOpenWindow).build(None),
            Err(HarnessError::MissingParam("w"))
        );
    }

    #[test]
    fn round_trip_is_identity_on_canonical_text() {
        let mut sc = discrete2(2, Flavor::RothbergerLambda);
        sc.params.m = Some(2);
        sc.params.expect = Some(Expect {
            winner: Some(Winner::One),
            ..Expect::default()
        });
        let text = sc.emit();
        let back = Scenario::parse(&text).unwrap();
        assert_eq!(back, sc);
        assert_eq!(back.emit(), text);
    }
}
