//! Finite preorders with two distinguished subfamilies, relative cofinality,
//! and Tukey maps between such pairs.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::ground::Subset;

/// Carriers are capped so that subfamilies fit a `u128` mask.
pub const MAX_CARRIER: usize = 128;
/// Largest `sub_a` the brute-force Tukey oracle accepts.
pub const ORACLE_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("carrier of {0} elements exceeds the supported size")]
    CarrierTooLarge(usize),
    #[error("index {0} is outside the carrier")]
    IndexOutOfRange(usize),
    #[error("relation is not reflexive at {0}")]
    NotReflexive(usize),
    #[error("relation is not transitive: {0} <= {1} <= {2}")]
    NotTransitive(usize, usize, usize),
    #[error("map has {got} entries for {want} elements")]
    PhiNotTotal { got: usize, want: usize },
    #[error("map sends element {0} outside the target subfamily")]
    PhiOutsideTarget(usize),
}

/// A value of relative cofinality: a count, ω, or absent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtendedNat {
    Finite(u64),
    Omega,
    /// No subfamily dominates; incomparable with everything else.
    Undefined,
}

impl PartialOrd for ExtendedNat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        use ExtendedNat::*;
        match (self, other) {
            (Undefined, Undefined) => Some(Ordering::Equal),
            (Undefined, _) | (_, Undefined) => None,
            (Finite(a), Finite(b)) => a.partial_cmp(b),
            (Finite(_), Omega) => Some(Ordering::Less),
            (Omega, Finite(_)) => Some(Ordering::Greater),
            (Omega, Omega) => Some(Ordering::Equal),
        }
    }
}

impl ExtendedNat {
    pub fn is_at_most(self, n: u64) -> bool {
        self <= ExtendedNat::Finite(n)
    }
}

impl fmt::Display for ExtendedNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedNat::Finite(n) => write!(f, "{n}"),
            ExtendedNat::Omega => f.write_str("omega"),
            ExtendedNat::Undefined => f.write_str("undefined"),
        }
    }
}

impl Serialize for ExtendedNat {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtendedNat::Finite(n) => s.serialize_u64(*n),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for ExtendedNat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) => Ok(ExtendedNat::Finite(n)),
            Raw::S(s) if s == "omega" => Ok(ExtendedNat::Omega),
            Raw::S(s) if s == "undefined" => Ok(ExtendedNat::Undefined),
            Raw::S(s) => Err(serde::de::Error::custom(format!("unknown value {s:?}"))),
        }
    }
}

/// A finite preorder `leq` on `0..n` with subfamilies `sub_a` (the dominating
/// side) and `sub_b` (the side to be dominated).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPair", into = "RawPair")]
pub struct RelPair {
    n: usize,
    leq: Vec<Vec<bool>>,
    sub_a: Vec<usize>,
    sub_b: Vec<usize>,
}

/// File form: strict pairs `[i, j]` meaning `i <= j`; the reflexive and
/// transitive closure is taken on load.
#[derive(Serialize, Deserialize)]
struct RawPair {
    n: usize,
    leq: Vec<(usize, usize)>,
    a: Vec<usize>,
    b: Vec<usize>,
}

impl TryFrom<RawPair> for RelPair {
    type Error = OrderError;
    fn try_from(raw: RawPair) -> Result<Self, Self::Error> {
        RelPair::from_pairs(raw.n, &raw.leq, raw.a, raw.b)
    }
}

impl From<RelPair> for RawPair {
    fn from(p: RelPair) -> Self {
        let mut leq = Vec::new();
        for i in 0..p.n {
            for j in 0..p.n {
                if i != j && p.leq[i][j] {
                    leq.push((i, j));
                }
            }
        }
        RawPair {
            n: p.n,
            leq,
            a: p.sub_a,
            b: p.sub_b,
        }
    }
}

impl RelPair {
    /// Validates an explicit relation matrix.
    pub fn new(leq: Vec<Vec<bool>>, sub_a: Vec<usize>, sub_b: Vec<usize>) -> Result<Self, OrderError> {
        let n = leq.len();
        if n > MAX_CARRIER {
            return Err(OrderError::CarrierTooLarge(n));
        }
        if let Some(row) = leq.iter().position(|row| row.len() != n) {
            return Err(OrderError::IndexOutOfRange(row));
        }
        if let Some(&bad) = sub_a.iter().chain(sub_b.iter()).find(|&&i| i >= n) {
            return Err(OrderError::IndexOutOfRange(bad));
        }
        for i in 0..n {
            if !leq[i][i] {
                return Err(OrderError::NotReflexive(i));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !leq[i][j] {
                    continue;
                }
                for k in 0..n {
                    if leq[j][k] && !leq[i][k] {
                        return Err(OrderError::NotTransitive(i, j, k));
                    }
                }
            }
        }
        Ok(RelPair { n, leq, sub_a, sub_b })
    }

    /// Closes the listed pairs under reflexivity and transitivity.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)], sub_a: Vec<usize>, sub_b: Vec<usize>) -> Result<Self, OrderError> {
        if n > MAX_CARRIER {
            return Err(OrderError::CarrierTooLarge(n));
        }
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(i, j) in pairs {
            if i >= n || j >= n {
                return Err(OrderError::IndexOutOfRange(i.max(j)));
            }
            leq[i][j] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        RelPair::new(leq, sub_a, sub_b)
    }

    /// Elements ordered by `le`; the carrier lists `a` first, then the members
    /// of `b` not already in `a`.
    pub fn from_elements<T: PartialEq>(a: &[T], b: &[T], le: impl Fn(&T, &T) -> bool) -> Result<Self, OrderError> {
        let mut carrier: Vec<&T> = a.iter().collect();
        let mut sub_b = Vec::with_capacity(b.len());
        for x in b {
            match carrier.iter().position(|c| *c == x) {
                Some(p) => sub_b.push(p),
                None => {
                    sub_b.push(carrier.len());
                    carrier.push(x);
                }
            }
        }
        let leq = carrier
            .iter()
            .map(|x| carrier.iter().map(|y| le(x, y)).collect())
            .collect();
        RelPair::new(leq, (0..a.len()).collect(), sub_b)
    }

    /// Families of ground subsets under inclusion.
    pub fn from_families(a: &[Subset], b: &[Subset]) -> Result<Self, OrderError> {
        Self::from_elements(a, b, |x, y| x.is_subset_of(*y))
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn le(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn sub_a(&self) -> &[usize] {
        &self.sub_a
    }

    pub fn sub_b(&self) -> &[usize] {
        &self.sub_b
    }

    /// The pair with the same carrier and different subfamilies.
    pub fn with_subfamilies(&self, sub_a: Vec<usize>, sub_b: Vec<usize>) -> Result<Self, OrderError> {
        RelPair::new(self.leq.clone(), sub_a, sub_b)
    }

    /// Product with the chain `{0..=m}` under the coordinatewise order;
    /// element `(p, k)` has index `p * (m + 1) + k`.
    pub fn product_truncation(&self, m: usize) -> Result<Self, OrderError> {
        let w = m + 1;
        let n = self.n * w;
        if n > MAX_CARRIER {
            return Err(OrderError::CarrierTooLarge(n));
        }
        let leq = (0..n)
            .map(|x| (0..n).map(|y| self.leq[x / w][y / w] && x % w <= y % w).collect())
            .collect();
        let lift = |s: &[usize]| s.iter().flat_map(|&p| (0..w).map(move |k| p * w + k)).collect();
        RelPair::new(leq, lift(&self.sub_a), lift(&self.sub_b))
    }

    /// For each `b`, the positions in `sub_a` of the elements above it.
    fn dominators(&self) -> Vec<u128> {
        self.sub_b
            .iter()
            .map(|&b| {
                self.sub_a
                    .iter()
                    .enumerate()
                    .filter(|(_, &a)| self.leq[b][a])
                    .fold(0u128, |m, (k, _)| m | 1 << k)
            })
            .collect()
    }

    /// Whether the positions in `mask` (into `sub_a`) dominate every member of `sub_b`.
    pub fn is_cofinal(&self, mask: u128) -> bool {
        self.dominators().iter().all(|&d| d & mask != 0)
    }
}

/// Minimal hitting sets over `sets`, each a mask of candidate positions.
struct Hitting {
    sets: Vec<u128>,
}

impl Hitting {
    fn new(mut sets: Vec<u128>) -> Self {
        sets.sort_by_key(|s| (s.count_ones(), *s));
        sets.dedup();
        // A set containing another is hit whenever the smaller one is.
        let keep: Vec<u128> = sets
            .iter()
            .enumerate()
            .filter(|(k, &s)| !sets[..*k].iter().any(|&t| t & !s == 0))
            .map(|(_, &s)| s)
            .collect();
        Hitting { sets: keep }
    }

    fn greedy(&self) -> u32 {
        let mut chosen = 0u128;
        while self.sets.iter().find(|&&s| s & chosen == 0).is_some() {
            let best = (0..128)
                .filter(|&k| self.sets.iter().any(|&s| s & chosen == 0 && s & (1 << k) != 0))
                .max_by_key(|&k| {
                    (
                        self.sets.iter().filter(|&&s| s & chosen == 0 && s & (1 << k) != 0).count(),
                        std::cmp::Reverse(k),
                    )
                })
                .unwrap();
            chosen |= 1 << best;
        }
        chosen.count_ones()
    }

    /// Whether the sets not hit by `chosen` can be hit with `left` more
    /// positions, all of them at least `floor`.
    fn feasible(&self, chosen: u128, left: u32, floor: u32) -> bool {
        let above = if floor >= 128 { 0 } else { !0u128 << floor };
        let open: Vec<u128> = self.sets.iter().copied().filter(|&s| s & chosen == 0).collect();
        if open.is_empty() {
            return true;
        }
        if left == 0 {
            return false;
        }
        let smallest = *open.iter().min_by_key(|&&s| (s & above).count_ones()).unwrap();
        let cands = smallest & above;
        (0..128u32)
            .filter(|&k| cands & (1 << k) != 0)
            .any(|k| self.feasible(chosen | 1 << k, left - 1, floor))
    }

    fn minimum(&self) -> u32 {
        let mut best = self.greedy();
        while best > 0 && self.feasible(0, best - 1, 0) {
            best -= 1;
        }
        best
    }

    /// Lexicographically least sorted hitting set of size `k`.
    fn least_witness(&self, k: u32) -> u128 {
        let mut chosen = 0u128;
        let mut floor = 0u32;
        for slot in 0..k {
            let pick = (floor..128)
                .find(|&e| self.feasible(chosen | 1 << e, k - slot - 1, e + 1))
                .expect("a hitting set of this size exists");
            chosen |= 1 << pick;
            floor = pick + 1;
        }
        chosen
    }
}

/// Least size of a subfamily of `sub_a` dominating every member of `sub_b`.
pub fn relative_cofinality(pair: &RelPair) -> ExtendedNat {
    let doms = pair.dominators();
    if doms.contains(&0) {
        return ExtendedNat::Undefined;
    }
    ExtendedNat::Finite(Hitting::new(doms).minimum() as u64)
}

/// A minimum dominating subfamily as sorted carrier indices, least in
/// lexicographic order among those of minimum size.
pub fn cofinal_witness(pair: &RelPair) -> Option<Vec<usize>> {
    let doms = pair.dominators();
    if doms.contains(&0) {
        return None;
    }
    let h = Hitting::new(doms);
    let mask = h.least_witness(h.minimum());
    Some(
        (0..pair.sub_a.len())
            .filter(|&k| mask & (1 << k) != 0)
            .map(|k| pair.sub_a[k])
            .collect(),
    )
}

fn check_phi(phi: &[usize], src: &RelPair, dst: &RelPair) -> Result<(), OrderError> {
    if phi.len() != src.sub_a.len() {
        return Err(OrderError::PhiNotTotal {
            got: phi.len(),
            want: src.sub_a.len(),
        });
    }
    if let Some(k) = phi.iter().position(|c| !dst.sub_a.contains(c)) {
        return Err(OrderError::PhiOutsideTarget(k));
    }
    Ok(())
}

/// Whether `phi` (position in `src.sub_a` ↦ carrier index in `dst.sub_a`)
/// sends every subfamily cofinal for `src` to one cofinal for `dst`.
///
/// Checked without enumerating subfamilies: the map fails exactly when, for
/// some `d` in `dst.sub_b`, the elements whose image is not above `d` already
/// form a cofinal family.
pub fn check_tukey_map(phi: &[usize], src: &RelPair, dst: &RelPair) -> Result<bool, OrderError> {
    check_phi(phi, src, dst)?;
    let doms = src.dominators();
    for &d in &dst.sub_b {
        let missing = phi
            .iter()
            .enumerate()
            .filter(|(_, &c)| !dst.leq[d][c])
            .fold(0u128, |m, (k, _)| m | 1 << k);
        if doms.iter().all(|&b| b & missing != 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The literal definition: every cofinal subfamily of `src.sub_a` has a
/// cofinal image.
pub fn brute_tukey_oracle(phi: &[usize], src: &RelPair, dst: &RelPair) -> Result<bool, OrderError> {
    if src.sub_a.len() > ORACLE_LIMIT {
        return Err(OrderError::CarrierTooLarge(src.sub_a.len()));
    }
    check_phi(phi, src, dst)?;
    let src_doms = src.dominators();
    let dst_doms = dst.dominators();
    for mask in 0u128..1 << src.sub_a.len() {
        if !src_doms.iter().all(|&d| d & mask != 0) {
            continue;
        }
        let image = (0..src.sub_a.len())
            .filter(|&k| mask & (1 << k) != 0)
            .map(|k| dst.sub_a.iter().position(|&c| c == phi[k]).unwrap())
            .fold(0u128, |m, p| m | 1 << p);
        if !dst_doms.iter().all(|&d| d & image != 0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Cofinality of the pair lifted by a product with ω, from the value of the
/// pair itself. Any finite dominating family only reaches finitely many
/// levels of ω, so a nonempty `sub_b` needs infinitely many members.
pub fn lift_omega_cof(base: ExtendedNat, b_empty: bool) -> ExtendedNat {
    if b_empty {
        return ExtendedNat::Finite(0);
    }
    match base {
        ExtendedNat::Undefined => ExtendedNat::Undefined,
        _ => ExtendedNat::Omega,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(items: &[usize]) -> Subset {
        Subset::from_items(items.iter().copied())
    }

    #[test]
    fn antichain_needs_everything() {
        let f = [s(&[0]), s(&[1]), s(&[2])];
        let p = RelPair::from_families(&f, &f).unwrap();
        assert_eq!(relative_cofinality(&p), ExtendedNat::Finite(3));
    }

    #[test]
    fn pairs_over_singletons() {
        let a = [s(&[0, 1]), s(&[1, 2]), s(&[0, 2])];
        let b = [s(&[0]), s(&[1]), s(&[2])];
        let p = RelPair::from_families(&a, &b).unwrap();
        assert_eq!(relative_cofinality(&p), ExtendedNat::Finite(2));
        assert_eq!(cofinal_witness(&p), Some(vec![0, 1]));
    }

    #[test]
    fn undominated_member() {
        let a = [s(&[0])];
        let b = [s(&[0, 1])];
        let p = RelPair::from_families(&a, &b).unwrap();
        assert_eq!(relative_cofinality(&p), ExtendedNat::Undefined);
        assert_eq!(cofinal_witness(&p), None);
        let p = RelPair::from_families(&a, &[]).unwrap();
        assert_eq!(relative_cofinality(&p), ExtendedNat::Finite(0));
    }

    #[test]
    fn extended_order() {
        use ExtendedNat::*;
        assert!(Finite(3) < Omega);
        assert!(Finite(2) < Finite(3));
        assert_eq!(Undefined.partial_cmp(&Finite(1)), None);
        assert!(!Undefined.is_at_most(100));
    }

    #[test]
    fn validation() {
        assert_eq!(
            RelPair::new(vec![vec![false]], vec![0], vec![0]),
            Err(OrderError::NotReflexive(0))
        );
        let leq = vec![
            vec![true, true, false],
            vec![false, true, true],
            vec![false, false, true],
        ];
        assert_eq!(RelPair::new(leq, vec![], vec![]), Err(OrderError::NotTransitive(0, 1, 2)));
        let closed = RelPair::from_pairs(3, &[(0, 1), (1, 2)], vec![2], vec![0]).unwrap();
        assert!(closed.le(0, 2));
        let text = serde_json::to_string(&closed).unwrap();
        assert_eq!(serde_json::from_str::<RelPair>(&text).unwrap(), closed);
    }

    #[test]
    fn tukey_examples_agree_with_oracle() {
        let a = [s(&[0, 1]), s(&[1, 2]), s(&[0, 2])];
        let b = [s(&[0]), s(&[1]), s(&[2])];
        let p = RelPair::from_families(&a, &b).unwrap();
        let id: Vec<usize> = p.sub_a().to_vec();
        assert!(check_tukey_map(&id, &p, &p).unwrap());
        assert!(brute_tukey_oracle(&id, &p, &p).unwrap());

        // Constant map onto an element below no member of the target's sub_b.
        let dst = RelPair::from_families(&[s(&[0])], &[s(&[1])]).unwrap();
        let dst = dst.with_subfamilies(vec![0], vec![1]).unwrap();
        let konst = vec![0; 3];
        assert!(!check_tukey_map(&konst, &p, &dst).unwrap());
        assert!(!brute_tukey_oracle(&konst, &p, &dst).unwrap());
    }

    #[test]
    fn projection_from_truncated_products() {
        let p = RelPair::from_pairs(4, &[(0, 1), (2, 3)], vec![1, 3], vec![0, 1, 2, 3]).unwrap();
        let base = relative_cofinality(&p);
        for m in 2..=4 {
            let big = p.product_truncation(m).unwrap();
            let w = m + 1;
            let phi: Vec<usize> = big.sub_a().iter().map(|&x| x / w).collect();
            assert!(check_tukey_map(&phi, &big, &p).unwrap());
            assert_eq!(relative_cofinality(&big), base);
        }
    }

    #[test]
    fn lift_values() {
        assert_eq!(lift_omega_cof(ExtendedNat::Finite(3), false), ExtendedNat::Omega);
        assert_eq!(lift_omega_cof(ExtendedNat::Finite(3), true), ExtendedNat::Finite(0));
        assert_eq!(lift_omega_cof(ExtendedNat::Undefined, false), ExtendedNat::Undefined);
    }

    #[test]
    fn oracle_limit() {
        let f: Vec<Subset> = (0..13).map(|i| s(&[i])).collect();
        let p = RelPair::from_families(&f, &f).unwrap();
        let id = p.sub_a().to_vec();
        assert_eq!(brute_tukey_oracle(&id, &p, &p), Err(OrderError::CarrierTooLarge(13)));
    }
}
