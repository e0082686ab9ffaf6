//! Weights of the diagonal subalgebra, dominance on a support set, partitions
//! and the negative root cone.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::SupportSet;
use crate::error::{Error, Result};
use crate::scalar::{self, int, parse_int_list, split_coefficient, split_signed_terms, Scalar};

/// A finitely supported function `Z -> Q`; the value at `m` is the
/// eigenvalue of `E(m,m)`. Zero values are never stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Weight {
    entries: BTreeMap<i64, Scalar>,
}

impl Weight {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The weight `ε_i`.
    pub fn epsilon(i: i64) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(i, Scalar::one());
        Self { entries }
    }

    pub fn from_entries<I: IntoIterator<Item = (i64, Scalar)>>(iter: I) -> Self {
        let mut w = Self::zero();
        for (i, v) in iter {
            w.add_at(i, v);
        }
        w
    }

    pub fn from_ints<I: IntoIterator<Item = (i64, i64)>>(iter: I) -> Self {
        Self::from_entries(iter.into_iter().map(|(i, v)| (i, int(v))))
    }

    /// `Σ ε_i` over the given indices, with repetition.
    pub fn from_indices<'a, I: IntoIterator<Item = &'a i64>>(iter: I) -> Self {
        let mut counts: BTreeMap<i64, i64> = BTreeMap::new();
        for &i in iter {
            *counts.entry(i).or_default() += 1;
        }
        Self::from_ints(counts)
    }

    pub fn get(&self, i: i64) -> Scalar {
        self.entries.get(&i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_at(&mut self, i: i64, v: Scalar) {
        if v.is_zero() {
            return;
        }
        let e = self.entries.entry(i).or_insert_with(Scalar::zero);
        *e += v;
        if e.is_zero() {
            self.entries.remove(&i);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&i64, &Scalar)> {
        self.entries.iter()
    }

    pub fn support(&self) -> Vec<i64> {
        self.entries.keys().copied().collect()
    }

    pub fn support_within(&self, s: &SupportSet) -> bool {
        self.entries.keys().all(|&i| s.contains(i))
    }

    /// Sum of all values, the eigenvalue of `I_∞`.
    pub fn total(&self) -> Scalar {
        self.entries.values().fold(Scalar::zero(), |a, b| a + b)
    }

    /// Integral entries as `(position, value)` pairs, or `None` if some
    /// entry is not an integer.
    pub fn as_ints(&self) -> Option<Vec<(i64, i64)>> {
        self.entries
            .iter()
            .map(|(&i, v)| scalar::to_i64(v).map(|x| (i, x)))
            .collect()
    }

    /// Re-keys every entry by `+c`: the weight twisted by the translation
    /// `n ↦ n + c`.
    pub fn shifted(&self, c: i64) -> Weight {
        Weight {
            entries: self.entries.iter().map(|(i, v)| (i + c, v.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Weight {
        Weight::from_entries(self.entries.iter().map(|(&i, v)| (i, v * c)))
    }
}

impl Add for &Weight {
    type Output = Weight;

    fn add(self, rhs: &Weight) -> Weight {
        let mut out = self.clone();
        for (&i, v) in &rhs.entries {
            out.add_at(i, v.clone());
        }
        out
    }
}

impl Sub for &Weight {
    type Output = Weight;

    fn sub(self, rhs: &Weight) -> Weight {
        self + &(-rhs)
    }
}

impl Neg for &Weight {
    type Output = Weight;

    fn neg(self) -> Weight {
        Weight {
            entries: self.entries.iter().map(|(&i, v)| (i, -v)).collect(),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0");
        }
        for (k, (i, v)) in self.entries.iter().enumerate() {
            scalar::write_term(f, v, &format!("e({i})"), k == 0)?;
        }
        Ok(())
    }
}

impl FromStr for Weight {
    type Err = Error;

    /// Grammar: `2*e(1) + e(2)`, `-3/2*e(0)`, `0`, or the integer pair list
    /// `[[1,2],[2,1]]` used in JSON output.
    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "0" {
            return Ok(Weight::zero());
        }
        if s.trim_start().starts_with('[') {
            return parse_pair_list(s);
        }
        let pieces = split_signed_terms(s)?;
        if pieces.is_empty() {
            return Err(Error::Parse("empty weight literal".into()));
        }
        let mut w = Weight::zero();
        for (negative, body) in pieces {
            let (c, atom) = split_coefficient(&body)?;
            let inner = atom
                .strip_prefix('e')
                .map(str::trim)
                .and_then(|r| r.strip_prefix('('))
                .and_then(|r| r.strip_suffix(')'))
                .ok_or_else(|| Error::Parse(format!("expected `e(i)`, got `{atom}`")))?;
            let i: i64 = inner
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad index in `{atom}`")))?;
            w.add_at(i, if negative { -c } else { c });
        }
        Ok(w)
    }
}

fn parse_pair_list(s: &str) -> Result<Weight> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let inner = scalar::strip_delims(&compact, '[', ']')?;
    if inner.is_empty() {
        return Ok(Weight::zero());
    }
    let body = scalar::strip_delims(inner, '[', ']')?;
    let mut w = Weight::zero();
    for pair in body.split("],[") {
        match parse_int_list(pair)?.as_slice() {
            [i, v] => w.add_at(*i, Scalar::from_integer((*v).into())),
            _ => return Err(Error::Parse(format!("expected `[index,value]`, got `[{pair}]`"))),
        }
    }
    Ok(w)
}

/// A weakly decreasing list of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Parse(format!("parts {parts:?} are not weakly decreasing")));
        }
        if parts.contains(&0) {
            return Err(Error::Parse(format!("parts {parts:?} contain a zero")));
        }
        Ok(Self(parts))
    }

    /// Drops trailing zeros before validating.
    pub fn from_padded(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Self::new(parts)
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero rows.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of boxes.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Row `i` (zero based), zero past the end.
    pub fn row(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Young-diagram containment `other ⊆ self`.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && (0..other.len()).all(|i| self.0[i] >= other.0[i])
    }

    pub fn conjugate(&self) -> Partition {
        let cols = self.row(0) as usize;
        Partition(
            (0..cols)
                .map(|c| self.0.iter().filter(|&&r| r as usize > c).count() as u32)
                .collect(),
        )
    }

    /// Places the parts along the increasing positions of `s`.
    pub fn to_weight(&self, s: &SupportSet) -> Result<Weight> {
        if self.len() > s.len() {
            return Err(Error::RankTooSmall {
                len: self.len(),
                rank: s.len(),
            });
        }
        Ok(Weight::from_ints(
            s.indices()
                .iter()
                .zip(&self.0)
                .map(|(&i, &p)| (i, p as i64)),
        ))
    }

    /// All partitions of `n` with at most `max_len` rows, in decreasing
    /// lexicographic order.
    pub fn all_of(n: u32, max_len: usize) -> Vec<Partition> {
        fn go(n: u32, cap: u32, rows_left: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            if rows_left == 0 {
                return;
            }
            for p in (1..=cap.min(n)).rev() {
                cur.push(p);
                go(n - p, p, rows_left - 1, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, max_len, &mut Vec::new(), &mut out);
        out
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Vec<u32> {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = scalar::strip_delims(s, '[', ']')?;
        let parts = parse_int_list(inner)?
            .into_iter()
            .map(|p| u32::try_from(p).map_err(|_| Error::Parse(format!("negative part {p}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// Membership in `P_+(S)`: natural entries, supported in `s`, weakly
/// decreasing along increasing positions of `s`.
pub fn is_dominant(weight: &Weight, s: &SupportSet) -> bool {
    if !weight.support_within(s) {
        return false;
    }
    let Some(values) = weight.as_ints() else {
        return false;
    };
    if values.iter().any(|&(_, v)| v < 0) {
        return false;
    }
    let along: Vec<i64> = s
        .indices()
        .iter()
        .map(|&i| values.iter().find(|&&(j, _)| j == i).map_or(0, |&(_, v)| v))
        .collect();
    along.windows(2).all(|w| w[0] >= w[1])
}

pub fn to_partition(weight: &Weight, s: &SupportSet) -> Result<Partition> {
    if !is_dominant(weight, s) {
        return Err(Error::NotDominant {
            weight: weight.to_string(),
            support: s.to_string(),
        });
    }
    let parts = s
        .indices()
        .iter()
        .map(|&i| scalar::to_i64(&weight.get(i)).unwrap_or(0) as u32)
        .collect();
    Partition::from_padded(parts)
}

pub fn weight_shift(weight: &Weight, c: i64) -> Weight {
    weight.shifted(c)
}

/// An order-preserving bijection from a support set onto the interval
/// starting at `start`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabeling {
    from: SupportSet,
    start: i64,
}

impl Relabeling {
    pub fn onto_interval(from: &SupportSet, start: i64) -> Self {
        Self {
            from: from.clone(),
            start,
        }
    }

    pub fn target(&self) -> SupportSet {
        SupportSet::interval(self.start, self.start + self.from.len() as i64 - 1)
            .expect("nonempty support")
    }

    pub fn map_index(&self, i: i64) -> Option<i64> {
        self.from.rank_of(i).map(|r| self.start + r as i64)
    }

    pub fn unmap_index(&self, j: i64) -> Option<i64> {
        let r = j - self.start;
        (0..self.from.len() as i64)
            .contains(&r)
            .then(|| self.from.indices()[r as usize])
    }

    /// `λ ∘ σ^{-1}`; fails if the weight has support outside the domain.
    pub fn apply(&self, weight: &Weight) -> Result<Weight> {
        let mut out = Weight::zero();
        for (&i, v) in weight.entries() {
            let j = self.map_index(i).ok_or_else(|| {
                Error::Precondition(format!("index {i} outside relabeling domain {}", self.from))
            })?;
            out.add_at(j, v.clone());
        }
        Ok(out)
    }

    pub fn invert(&self, weight: &Weight) -> Result<Weight> {
        let mut out = Weight::zero();
        for (&j, v) in weight.entries() {
            let i = self.unmap_index(j).ok_or_else(|| {
                Error::Precondition(format!("index {j} outside relabeling range"))
            })?;
            out.add_at(i, v.clone());
        }
        Ok(out)
    }
}

/// A root `ε_a − ε_b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root {
    pub plus: i64,
    pub minus: i64,
}

/// `Δ_−(S)`: the roots `ε_i − ε_j` with `i > j` inside `S` and `ε_p − ε_i`
/// with `i ∈ S`, `p ∉ S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegativeRootCone {
    base: SupportSet,
}

impl NegativeRootCone {
    pub fn new(base: SupportSet) -> Self {
        Self { base }
    }

    pub fn base(&self) -> &SupportSet {
        &self.base
    }

    /// Roots of `gl_S` below the diagonal.
    pub fn inner_roots(&self) -> Vec<Root> {
        let idx = self.base.indices();
        let mut out = Vec::new();
        for (a, &j) in idx.iter().enumerate() {
            for &i in &idx[a + 1..] {
                out.push(Root { plus: i, minus: j });
            }
        }
        out
    }

    /// Roots `ε_p − ε_i` for the given outside indices `p`.
    pub fn outer_roots(&self, outside: &[i64]) -> Vec<Root> {
        let mut out = Vec::new();
        for &p in outside {
            if self.base.contains(p) {
                continue;
            }
            for &i in self.base.indices() {
                out.push(Root { plus: p, minus: i });
            }
        }
        out
    }

    /// Number of ways to write `delta` as an ℕ-combination of the inner roots
    /// and the outer roots with `p` among `outside` (a Kostant partition
    /// function on a finite root list). Zero for non-integral `delta`.
    pub fn partition_count(&self, delta: &Weight, outside: &[i64]) -> u128 {
        let Some(target) = delta.as_ints() else {
            return 0;
        };
        let mut roots = self.outer_roots(outside);
        roots.extend(self.inner_roots());
        let counter = RootCounter {
            base: &self.base,
            roots: &roots,
            first_inner: roots.len() - self.inner_roots().len(),
        };
        let target: BTreeMap<i64, i64> = target.into_iter().collect();
        counter.count(0, &target, &mut HashMap::new())
    }

    /// Membership in `Q_−(S) = ℕ Δ_−(S)`. Only roots whose outside index lies
    /// in the support of `delta` can contribute, so the search is exact.
    pub fn contains(&self, delta: &Weight) -> bool {
        let outside: Vec<i64> = delta
            .support()
            .into_iter()
            .filter(|&i| !self.base.contains(i))
            .collect();
        self.partition_count(delta, &outside) > 0
    }
}

struct RootCounter<'a> {
    base: &'a SupportSet,
    roots: &'a [Root],
    first_inner: usize,
}

impl RootCounter<'_> {
    /// `Σ rank(x) δ_x` over `x ∈ S`; every inner root raises it by at least one.
    fn height(&self, rest: &BTreeMap<i64, i64>) -> i64 {
        rest.iter()
            .filter_map(|(&i, &v)| self.base.rank_of(i).map(|r| r as i64 * v))
            .sum()
    }

    fn root_height(&self, r: &Root) -> i64 {
        self.base.rank_of(r.plus).unwrap() as i64 - self.base.rank_of(r.minus).unwrap() as i64
    }

    fn count(
        &self,
        idx: usize,
        rest: &BTreeMap<i64, i64>,
        memo: &mut HashMap<(usize, Vec<(i64, i64)>), u128>,
    ) -> u128 {
        if idx == self.roots.len() {
            return u128::from(rest.is_empty());
        }
        if idx >= self.first_inner && rest.keys().any(|&i| !self.base.contains(i)) {
            return 0;
        }
        let key = (idx, rest.iter().map(|(&a, &b)| (a, b)).collect::<Vec<_>>());
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let root = self.roots[idx];
        let max_k = if idx < self.first_inner {
            rest.get(&root.plus).copied().unwrap_or(0).max(0)
        } else {
            let h = self.height(rest);
            if h < 0 {
                0
            } else {
                h / self.root_height(&root)
            }
        };
        let mut total = 0u128;
        let mut cur = rest.clone();
        for k in 0..=max_k {
            if k > 0 {
                bump(&mut cur, root.plus, -1);
                bump(&mut cur, root.minus, 1);
            }
            total += self.count(idx + 1, &cur, memo);
        }
        memo.insert(key, total);
        total
    }
}

fn bump(m: &mut BTreeMap<i64, i64>, i: i64, d: i64) {
    let e = m.entry(i).or_insert(0);
    *e += d;
    if *e == 0 {
        m.remove(&i);
    }
}

pub fn in_negative_cone(delta: &Weight, s: &SupportSet) -> bool {
    NegativeRootCone::new(s.clone()).contains(delta)
}

/// True when every value is a nonnegative integer.
pub fn is_natural(weight: &Weight) -> bool {
    weight.entries().all(|(_, v)| v.is_integer() && !v.is_negative())
}
