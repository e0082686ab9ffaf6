//! Elements of gl(infinity), support sets and the triangular decomposition
//! attached to a support set.
//!
//! `E(m,n)` denotes the matrix unit with a single `1` in row `m`, column `n`,
//! with `m, n` ranging over all integers. A [`LieElement`] is a finite exact
//! linear combination of matrix units.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{self, parse_int_list, split_coefficient, split_signed_terms, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MatrixUnit {
    pub row: i64,
    pub col: i64,
}

impl MatrixUnit {
    pub const fn new(row: i64, col: i64) -> Self {
        Self { row, col }
    }

    pub fn is_diagonal(&self) -> bool {
        self.row == self.col
    }
}

impl fmt::Display for MatrixUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E({},{})", self.row, self.col)
    }
}

impl FromStr for MatrixUnit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('E')
            .map(str::trim)
            .and_then(|r| r.strip_prefix('('))
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected `E(m,n)`, got `{t}`")))?;
        match parse_int_list(inner)?.as_slice() {
            [m, n] => Ok(MatrixUnit::new(*m, *n)),
            _ => Err(Error::Parse(format!("expected two indices in `{t}`"))),
        }
    }
}

/// A finite linear combination of matrix units with nonzero rational
/// coefficients, kept in lexicographic `(row, col)` order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LieElement {
    terms: BTreeMap<MatrixUnit, Scalar>,
}

impl LieElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(row: i64, col: i64) -> Self {
        Self::from_unit(MatrixUnit::new(row, col))
    }

    pub fn from_unit(e: MatrixUnit) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(e, Scalar::one());
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (MatrixUnit, Scalar)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in iter {
            out.add_term(e, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MatrixUnit, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &MatrixUnit) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, e: MatrixUnit, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    /// All row and column indices occurring in the element.
    pub fn indices(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.terms.keys().flat_map(|e| [e.row, e.col]).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

impl Add for &LieElement {
    type Output = LieElement;

    fn add(self, rhs: &LieElement) -> LieElement {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LieElement {
    type Output = LieElement;

    fn sub(self, rhs: &LieElement) -> LieElement {
        self + &(-rhs)
    }
}

impl Neg for &LieElement {
    type Output = LieElement;

    fn neg(self) -> LieElement {
        LieElement {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            scalar::write_term(f, c, &e.to_string(), i == 0)?;
        }
        Ok(())
    }
}

impl FromStr for LieElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        let pieces = split_signed_terms(s)?;
        if pieces.is_empty() {
            return Err(Error::Parse("empty Lie element literal".into()));
        }
        for (negative, body) in pieces {
            let (c, atom) = split_coefficient(&body)?;
            let e: MatrixUnit = atom.parse()?;
            out.add_term(e, if negative { -c } else { c });
        }
        Ok(out)
    }
}

/// `[E(m,n), E(r,s)] = δ(n,r) E(m,s) - δ(m,s) E(r,n)` on units.
pub fn bracket_units(a: MatrixUnit, b: MatrixUnit) -> LieElement {
    let mut out = LieElement::zero();
    if a.col == b.row {
        out.add_term(MatrixUnit::new(a.row, b.col), Scalar::one());
    }
    if a.row == b.col {
        out.add_term(MatrixUnit::new(b.row, a.col), -Scalar::one());
    }
    out
}

/// The commutator, extended bilinearly from the matrix units.
pub fn bracket(a: &LieElement, b: &LieElement) -> LieElement {
    let mut out = LieElement::zero();
    for (ea, ca) in a.terms() {
        for (eb, cb) in b.terms() {
            let c = ca * cb;
            for (e, x) in bracket_units(*ea, *eb).terms() {
                out.add_term(*e, x * &c);
            }
        }
    }
    out
}

/// A finite, nonempty, strictly increasing set of integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SupportSet(Vec<i64>);

impl SupportSet {
    pub fn new(mut indices: Vec<i64>) -> Result<Self> {
        indices.sort_unstable();
        let before = indices.len();
        indices.dedup();
        if indices.len() != before {
            return Err(Error::InvalidSupport("duplicate index".into()));
        }
        if indices.is_empty() {
            return Err(Error::InvalidSupport("support set must be nonempty".into()));
        }
        Ok(Self(indices))
    }

    /// The interval `{lo, lo+1, ..., hi}`.
    pub fn interval(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidSupport(format!("empty interval {lo}..{hi}")));
        }
        Ok(Self((lo..=hi).collect()))
    }

    pub fn indices(&self) -> &[i64] {
        &self.0
    }

    pub fn contains(&self, i: i64) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn min(&self) -> i64 {
        self.0[0]
    }

    pub fn max(&self) -> i64 {
        self.0[self.0.len() - 1]
    }

    pub fn is_interval(&self) -> bool {
        self.max() - self.min() + 1 == self.0.len() as i64
    }

    pub fn union(&self, other: &SupportSet) -> SupportSet {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        v.sort_unstable();
        v.dedup();
        SupportSet(v)
    }

    /// The smallest interval containing the set.
    pub fn hull(&self) -> SupportSet {
        SupportSet((self.min()..=self.max()).collect())
    }

    /// Position of `i` inside the set, counted from zero.
    pub fn rank_of(&self, i: i64) -> Option<usize> {
        self.0.binary_search(&i).ok()
    }

    pub fn shifted(&self, c: i64) -> SupportSet {
        SupportSet(self.0.iter().map(|i| i + c).collect())
    }

    pub fn is_subset_of(&self, other: &SupportSet) -> bool {
        self.0.iter().all(|i| other.contains(*i))
    }
}

impl fmt::Display for SupportSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl FromStr for SupportSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = scalar::strip_delims(s, '{', '}')?;
        SupportSet::new(parse_int_list(inner)?)
    }
}

/// A finite integer interval `[lo, hi]` standing in for "all of Z".
///
/// Statements quantifying over all integers are checked on a window that
/// contains every index of the inputs; operations that need a free index
/// outside a support set say so explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidWindow { lo, hi });
        }
        Ok(Self { lo, hi })
    }

    pub fn contains(&self, i: i64) -> bool {
        self.lo <= i && i <= self.hi
    }

    pub fn len(&self) -> usize {
        (self.hi - self.lo + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn indices(&self) -> impl Iterator<Item = i64> + Clone {
        self.lo..=self.hi
    }

    pub fn as_support(&self) -> SupportSet {
        SupportSet((self.lo..=self.hi).collect())
    }

    /// True when `s` lies inside the window with at least one spare index on
    /// each side.
    pub fn strictly_contains(&self, s: &SupportSet) -> bool {
        self.lo < s.min() && s.max() < self.hi
    }

    pub fn shifted(&self, c: i64) -> Window {
        Window {
            lo: self.lo + c,
            hi: self.hi + c,
        }
    }

    /// Every off-diagonal matrix unit with both indices in the window.
    pub fn off_diagonal_units(&self) -> Vec<MatrixUnit> {
        let mut out = Vec::new();
        for p in self.indices() {
            for q in self.indices() {
                if p != q {
                    out.push(MatrixUnit::new(p, q));
                }
            }
        }
        out
    }

    pub fn all_units(&self) -> Vec<MatrixUnit> {
        let mut out = Vec::new();
        for p in self.indices() {
            for q in self.indices() {
                out.push(MatrixUnit::new(p, q));
            }
        }
        out
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

impl FromStr for Window {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let t = t.strip_prefix("window").unwrap_or(t);
        let inner = scalar::strip_delims(t, '[', ']')?;
        match parse_int_list(inner)?.as_slice() {
            [lo, hi] => Window::new(*lo, *hi),
            _ => Err(Error::Parse(format!("expected `[lo,hi]`, got `{s}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TriangularPart {
    /// `E(m,n)` with `n` outside the support set.
    Plus,
    /// Both indices inside the support set: the subalgebra `gl_S`.
    Zero,
    /// Row outside, column inside.
    Minus,
}

pub fn classify(e: MatrixUnit, s: &SupportSet) -> TriangularPart {
    match (s.contains(e.row), s.contains(e.col)) {
        (_, false) => TriangularPart::Plus,
        (true, true) => TriangularPart::Zero,
        (false, true) => TriangularPart::Minus,
    }
}

/// `I_S`, the sum of the diagonal units over `s`.
pub fn i_s(s: &SupportSet) -> LieElement {
    LieElement::from_terms(
        s.indices()
            .iter()
            .map(|&n| (MatrixUnit::new(n, n), Scalar::one())),
    )
}

/// Eigenvalue of `ad(I_S)` on `E(m,n)`.
pub fn ad_degree(e: MatrixUnit, s: &SupportSet) -> i32 {
    match (s.contains(e.row), s.contains(e.col)) {
        (true, false) => 1,
        (false, true) => -1,
        _ => 0,
    }
}
