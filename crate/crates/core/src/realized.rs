//! Concrete integrable modules: tensor products of symmetric powers `A_r`
//! and exterior powers `Λ^k` of the natural module, and finite direct sums
//! of such tensor products, restricted to a window of indices.
//!
//! `E(m,n)` acts on a symmetric factor as `x_m ∂/∂x_n`, on an exterior
//! factor as a derivation of the wedge product, and on tensor products by
//! the Leibniz rule.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::{LieElement, MatrixUnit, SupportSet, Window};
use crate::error::{Error, Result};
use crate::linalg::{kernel, SparseVec, Subspace};
use crate::scalar::{self, int, Scalar};
use crate::weights::Weight;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorSpec {
    Symmetric(u32),
    Exterior(u32),
}

impl FactorSpec {
    pub fn degree(&self) -> u32 {
        match *self {
            FactorSpec::Symmetric(r) | FactorSpec::Exterior(r) => r,
        }
    }

    /// Largest number of rows of a partition labelling a summand of this factor.
    pub fn max_rows(&self) -> u32 {
        match *self {
            FactorSpec::Symmetric(_) => 1,
            FactorSpec::Exterior(k) => k,
        }
    }
}

impl fmt::Display for FactorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorSpec::Symmetric(r) => write!(f, "A({r})"),
            FactorSpec::Exterior(k) => write!(f, "Wedge({k})"),
        }
    }
}

impl FromStr for FactorSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let (ctor, rest): (fn(u32) -> FactorSpec, &str) = if let Some(r) = t.strip_prefix("Wedge") {
            (FactorSpec::Exterior, r)
        } else if let Some(r) = t.strip_prefix('A') {
            (FactorSpec::Symmetric, r)
        } else {
            return Err(Error::Parse(format!("unknown factor `{t}`")));
        };
        let inner = scalar::strip_delims(rest, '(', ')')?;
        let d: u32 = inner
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad degree in `{t}`")))?;
        if d == 0 {
            return Err(Error::Parse(format!(
                "degree-0 factor `{t}`; use `C` for the trivial module"
            )));
        }
        Ok(ctor(d))
    }
}

/// The factor lists of a direct sum of tensor products, without a window.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModuleSpec {
    pub summands: Vec<Vec<FactorSpec>>,
    pub window: Option<Window>,
}

impl ModuleSpec {
    pub fn realize(&self, window: Window) -> Result<RealizedModule> {
        RealizedModule::direct_sum(self.summands.clone(), window)
    }
}

impl FromStr for ModuleSpec {
    type Err = Error;

    /// Grammar: `A(2) (x) Wedge(3) (+) A(5) @ window[0,6]`; `C` is the
    /// empty tensor product and the window part is optional.
    fn from_str(s: &str) -> Result<Self> {
        let (body, window) = match s.split_once('@') {
            Some((b, w)) => (b, Some(w.trim().parse::<Window>()?)),
            None => (s, None),
        };
        let mut summands = Vec::new();
        for part in body.split("(+)") {
            let part = part.trim();
            if part.is_empty() {
                return Err(Error::Parse(format!("empty summand in `{s}`")));
            }
            if part == "C" {
                summands.push(Vec::new());
                continue;
            }
            summands.push(
                part.split("(x)")
                    .map(FactorSpec::from_str)
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        Ok(ModuleSpec { summands, window })
    }
}

/// Index of a basis vector: which summand, and for every tensor factor
/// either a sorted multiset (symmetric factor) or a strictly increasing list
/// (exterior factor) of window indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisIndex {
    pub summand: u32,
    pub slots: Vec<Vec<i64>>,
}

impl BasisIndex {
    pub fn indices(&self) -> impl Iterator<Item = &i64> {
        self.slots.iter().flatten()
    }

    pub fn weight(&self) -> Weight {
        Weight::from_indices(self.indices())
    }
}

pub fn weight_of(b: &BasisIndex) -> Weight {
    b.weight()
}

/// A finite exact linear combination of basis vectors.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ModuleVector(SparseVec<BasisIndex>);

impl ModuleVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: BasisIndex) -> Self {
        let mut m = BTreeMap::new();
        m.insert(b, Scalar::one());
        Self(m)
    }

    pub fn from_sparse(v: SparseVec<BasisIndex>) -> Self {
        Self(v.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    pub fn as_sparse(&self) -> &SparseVec<BasisIndex> {
        &self.0
    }

    pub fn into_sparse(self) -> SparseVec<BasisIndex> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisIndex, &Scalar)> {
        self.0.iter()
    }

    pub fn coefficient(&self, b: &BasisIndex) -> Scalar {
        self.0.get(b).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, b: BasisIndex, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(b) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &ModuleVector, c: &Scalar) {
        for (b, x) in &other.0 {
            let e = self.0.entry(b.clone()).or_insert_with(Scalar::zero);
            *e += x * c;
            if e.is_zero() {
                self.0.remove(b);
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> ModuleVector {
        if c.is_zero() {
            return ModuleVector::zero();
        }
        ModuleVector(self.0.iter().map(|(b, x)| (b.clone(), x * c)).collect())
    }

    pub fn sub(&self, other: &ModuleVector) -> ModuleVector {
        let mut out = self.clone();
        out.add_assign(other, &-Scalar::one());
        out
    }

    /// Every index occurring in some basis vector of the combination.
    pub fn indices(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.0.keys().flat_map(|b| b.indices().copied()).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// The weight if all terms share one, `None` otherwise (or when zero).
    pub fn weight(&self) -> Option<Weight> {
        let mut it = self.0.keys();
        let w = it.next()?.weight();
        it.all(|b| b.weight() == w).then_some(w)
    }

    pub fn weight_components(&self) -> BTreeMap<Weight, ModuleVector> {
        let mut out: BTreeMap<Weight, ModuleVector> = BTreeMap::new();
        for (b, c) in &self.0 {
            out.entry(b.weight())
                .or_default()
                .0
                .insert(b.clone(), c.clone());
        }
        out
    }

    /// Divides by the content so that coefficients are coprime integers with
    /// a positive leading term.
    pub fn primitive(&self) -> ModuleVector {
        use num_integer::Integer;
        use num_traits::Signed;
        if self.is_zero() {
            return self.clone();
        }
        let l = self
            .0
            .values()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let nums: Vec<BigInt> = self
            .0
            .values()
            .map(|x| (x * Scalar::from_integer(l.clone())).to_integer())
            .collect();
        let g = nums.iter().fold(BigInt::zero(), |a, x| a.gcd(x));
        let lead_negative = nums[0].is_negative();
        let mut factor = Scalar::new(l, g);
        if lead_negative {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// `Σ c_j v_j` for integer coefficients.
    pub fn combination(vectors: &[ModuleVector], coeffs: &[BigInt]) -> ModuleVector {
        let mut out = ModuleVector::zero();
        for (v, c) in vectors.iter().zip(coeffs) {
            if !c.is_zero() {
                out.add_assign(v, &Scalar::from_integer(c.clone()));
            }
        }
        out
    }
}

/// A direct sum of tensor products of symmetric and exterior powers, with
/// every index confined to `window`. The natural module is `[Wedge(1)]` and
/// the trivial module is the empty tensor product.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RealizedModule {
    summands: Vec<Vec<FactorSpec>>,
    window: Window,
}

impl RealizedModule {
    pub fn tensor(factors: Vec<FactorSpec>, window: Window) -> Result<Self> {
        Self::direct_sum(vec![factors], window)
    }

    pub fn direct_sum(summands: Vec<Vec<FactorSpec>>, window: Window) -> Result<Self> {
        if summands.is_empty() {
            return Err(Error::Precondition("module needs at least one summand".into()));
        }
        for f in summands.iter().flatten() {
            if f.degree() == 0 {
                return Err(Error::Precondition(format!("degree-0 factor {f}")));
            }
        }
        let levels: Vec<u32> = summands
            .iter()
            .map(|s| s.iter().map(FactorSpec::degree).sum())
            .collect();
        if levels.windows(2).any(|w| w[0] != w[1]) {
            return Err(Error::MixedLevel(levels));
        }
        Ok(Self { summands, window })
    }

    pub fn natural(window: Window) -> Self {
        Self::tensor(vec![FactorSpec::Exterior(1)], window).expect("valid")
    }

    pub fn symmetric(r: u32, window: Window) -> Result<Self> {
        Self::tensor(vec![FactorSpec::Symmetric(r)], window)
    }

    pub fn exterior(k: u32, window: Window) -> Result<Self> {
        Self::tensor(vec![FactorSpec::Exterior(k)], window)
    }

    pub fn trivial(window: Window) -> Self {
        Self::tensor(Vec::new(), window).expect("valid")
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn summands(&self) -> &[Vec<FactorSpec>] {
        &self.summands
    }

    pub fn with_window(&self, window: Window) -> Self {
        Self {
            summands: self.summands.clone(),
            window,
        }
    }

    /// Same factors, reversed order inside every summand.
    pub fn reversed_factors(&self) -> Self {
        Self {
            summands: self
                .summands
                .iter()
                .map(|s| s.iter().rev().copied().collect())
                .collect(),
            window: self.window,
        }
    }

    /// The eigenvalue of `I_∞`: total degree of any summand.
    pub fn level(&self) -> u32 {
        self.summands[0].iter().map(FactorSpec::degree).sum()
    }

    /// Upper bound on the number of rows of any partition labelling an
    /// irreducible summand.
    pub fn max_rows(&self) -> u32 {
        self.summands
            .iter()
            .map(|s| s.iter().map(FactorSpec::max_rows).sum())
            .max()
            .unwrap_or(0)
    }

    /// `(Σ_{n ∈ window} E(n,n)) b = c b`; returns `c`.
    pub fn windowed_i_infinity_eigenvalue(&self, b: &BasisIndex) -> Result<Scalar> {
        let mut total = Scalar::zero();
        let v = ModuleVector::basis(b.clone());
        for n in self.window.indices() {
            let image = self.act_unit(MatrixUnit::new(n, n), &v)?;
            let c = image.coefficient(b);
            if image.len() > 1 || (image.len() == 1 && c.is_zero()) {
                return Err(Error::Precondition(format!("E({n},{n}) is not diagonal")));
            }
            total += c;
        }
        Ok(total)
    }

    /// Tensor product with another module on the same window; summands are
    /// ordered as `self_i ⊗ other_j` with `i` major.
    pub fn tensor_with(&self, other: &RealizedModule) -> Result<RealizedModule> {
        if self.window != other.window {
            return Err(Error::Precondition(format!(
                "tensor factors live on different windows {} and {}",
                self.window, other.window
            )));
        }
        let mut summands = Vec::new();
        for a in &self.summands {
            for b in &other.summands {
                summands.push(a.iter().chain(b).copied().collect());
            }
        }
        RealizedModule::direct_sum(summands, self.window)
    }

    pub fn tensor_index(&self, a: &BasisIndex, other: &RealizedModule, b: &BasisIndex) -> BasisIndex {
        BasisIndex {
            summand: a.summand * other.summands.len() as u32 + b.summand,
            slots: a.slots.iter().chain(&b.slots).cloned().collect(),
        }
    }

    /// `a ⊗ b` inside [`Self::tensor_with`].
    pub fn tensor_vectors(&self, a: &ModuleVector, other: &RealizedModule, b: &ModuleVector) -> ModuleVector {
        let mut out = SparseVec::new();
        for (ia, ca) in a.terms() {
            for (ib, cb) in b.terms() {
                out.insert(self.tensor_index(ia, other, ib), ca * cb);
            }
        }
        ModuleVector::from_sparse(out)
    }

    fn check_index(&self, b: &BasisIndex) -> Result<()> {
        let factors = self
            .summands
            .get(b.summand as usize)
            .ok_or_else(|| Error::Precondition(format!("no summand {}", b.summand)))?;
        if factors.len() != b.slots.len() {
            return Err(Error::Precondition("slot count does not match factors".into()));
        }
        for (f, slot) in factors.iter().zip(&b.slots) {
            let ok = slot.len() == f.degree() as usize
                && match f {
                    FactorSpec::Symmetric(_) => slot.windows(2).all(|w| w[0] <= w[1]),
                    FactorSpec::Exterior(_) => slot.windows(2).all(|w| w[0] < w[1]),
                };
            if !ok {
                return Err(Error::Precondition(format!("slot {slot:?} is not canonical for {f}")));
            }
            if let Some(&i) = slot.iter().find(|&&i| !self.window.contains(i)) {
                return Err(Error::WindowOverflow {
                    index: i,
                    lo: self.window.lo,
                    hi: self.window.hi,
                });
            }
        }
        Ok(())
    }

    /// A single basis vector from explicit slot contents (slots are
    /// canonicalized; an exterior slot with a repeated index is zero).
    pub fn vector_from_slots(&self, summand: u32, slots: Vec<Vec<i64>>) -> Result<ModuleVector> {
        let factors = self
            .summands
            .get(summand as usize)
            .ok_or_else(|| Error::Precondition(format!("no summand {summand}")))?;
        let mut sign = 1i64;
        let mut canon = Vec::with_capacity(slots.len());
        for (f, mut slot) in factors.iter().zip(slots) {
            match f {
                FactorSpec::Symmetric(_) => slot.sort_unstable(),
                FactorSpec::Exterior(_) => {
                    // bubble sort keeps track of the permutation parity
                    for i in 0..slot.len() {
                        for j in 0..slot.len() - 1 - i {
                            if slot[j] > slot[j + 1] {
                                slot.swap(j, j + 1);
                                sign = -sign;
                            }
                        }
                    }
                    if slot.windows(2).any(|w| w[0] == w[1]) {
                        return Ok(ModuleVector::zero());
                    }
                }
            }
            canon.push(slot);
        }
        let b = BasisIndex {
            summand,
            slots: canon,
        };
        self.check_index(&b)?;
        Ok(ModuleVector::basis(b).scale(&int(sign)))
    }

    /// `E(m,n)` applied to a basis vector.
    fn act_on_basis(&self, e: MatrixUnit, b: &BasisIndex, out: &mut ModuleVector, coeff: &Scalar) -> Result<()> {
        let factors = &self.summands[b.summand as usize];
        let (m, n) = (e.row, e.col);
        for (t, (f, slot)) in factors.iter().zip(&b.slots).enumerate() {
            let (new_slot, c) = match f {
                FactorSpec::Symmetric(_) => {
                    let count = slot.iter().filter(|&&i| i == n).count() as i64;
                    if count == 0 {
                        continue;
                    }
                    if m == n {
                        (slot.clone(), count)
                    } else {
                        let mut s = slot.clone();
                        let pos = s.iter().position(|&i| i == n).unwrap();
                        s.remove(pos);
                        let ins = s.partition_point(|&i| i < m);
                        s.insert(ins, m);
                        (s, count)
                    }
                }
                FactorSpec::Exterior(_) => {
                    let Ok(pos) = slot.binary_search(&n) else {
                        continue;
                    };
                    if m == n {
                        (slot.clone(), 1)
                    } else if slot.binary_search(&m).is_ok() {
                        continue;
                    } else {
                        let mut s = slot.clone();
                        s.remove(pos);
                        let ins = s.partition_point(|&i| i < m);
                        s.insert(ins, m);
                        let (lo, hi) = if m < n { (m, n) } else { (n, m) };
                        let passed = slot.iter().filter(|&&i| lo < i && i < hi).count();
                        (s, if passed % 2 == 0 { 1 } else { -1 })
                    }
                }
            };
            if !self.window.contains(m) {
                return Err(Error::WindowOverflow {
                    index: m,
                    lo: self.window.lo,
                    hi: self.window.hi,
                });
            }
            let mut slots = b.slots.clone();
            slots[t] = new_slot;
            out.add_term(
                BasisIndex {
                    summand: b.summand,
                    slots,
                },
                coeff * int(c),
            );
        }
        Ok(())
    }

    pub fn act_unit(&self, e: MatrixUnit, v: &ModuleVector) -> Result<ModuleVector> {
        let mut out = ModuleVector::zero();
        for (b, c) in v.terms() {
            self.act_on_basis(e, b, &mut out, c)?;
        }
        Ok(out)
    }

    pub fn act(&self, a: &LieElement, v: &ModuleVector) -> Result<ModuleVector> {
        let mut out = ModuleVector::zero();
        for (e, c) in a.terms() {
            for (b, x) in v.terms() {
                self.act_on_basis(*e, b, &mut out, &(c * x))?;
            }
        }
        Ok(out)
    }

    /// `e^k v`.
    pub fn act_power(&self, e: MatrixUnit, k: u32, v: &ModuleVector) -> Result<ModuleVector> {
        let mut cur = v.clone();
        for _ in 0..k {
            if cur.is_zero() {
                break;
            }
            cur = self.act_unit(e, &cur)?;
        }
        Ok(cur)
    }

    /// All basis indices on the window, sorted.
    pub fn basis(&self) -> Vec<BasisIndex> {
        let idx: Vec<i64> = self.window.indices().collect();
        let mut out = Vec::new();
        for (s, factors) in self.summands.iter().enumerate() {
            let per_factor: Vec<Vec<Vec<i64>>> = factors
                .iter()
                .map(|f| match f {
                    FactorSpec::Symmetric(r) => multisets(&idx, *r as usize),
                    FactorSpec::Exterior(k) => subsets(&idx, *k as usize),
                })
                .collect();
            let mut acc: Vec<Vec<Vec<i64>>> = vec![Vec::new()];
            for choices in &per_factor {
                let mut next = Vec::with_capacity(acc.len() * choices.len());
                for a in &acc {
                    for c in choices {
                        let mut x = a.clone();
                        x.push(c.clone());
                        next.push(x);
                    }
                }
                acc = next;
            }
            out.extend(acc.into_iter().map(|slots| BasisIndex {
                summand: s as u32,
                slots,
            }));
        }
        out.sort();
        out
    }

    /// Number of basis vectors of every weight on the window.
    pub fn windowed_character(&self) -> BTreeMap<Weight, usize> {
        let mut out = BTreeMap::new();
        for b in self.basis() {
            *out.entry(b.weight()).or_insert(0) += 1;
        }
        out
    }

    /// Basis indices of weight `weight`, sorted. Empty unless the weight is
    /// natural, of total `level`, and supported in the window.
    pub fn weight_space(&self, weight: &Weight) -> Vec<BasisIndex> {
        let Some(entries) = weight.as_ints() else {
            return Vec::new();
        };
        if entries.iter().any(|&(i, v)| v < 0 || !self.window.contains(i)) {
            return Vec::new();
        }
        let counts: Vec<(i64, u32)> = entries.iter().map(|&(i, v)| (i, v as u32)).collect();
        if counts.iter().map(|c| c.1).sum::<u32>() != self.level() {
            return Vec::new();
        }
        let mut out = Vec::new();
        for (s, factors) in self.summands.iter().enumerate() {
            let mut remaining = counts.clone();
            let mut slots = Vec::new();
            distribute(factors, 0, &mut remaining, &mut slots, &mut |slots| {
                out.push(BasisIndex {
                    summand: s as u32,
                    slots: slots.to_vec(),
                })
            });
        }
        out.sort();
        out
    }

    /// Basis of `Ω_S`, the joint kernel of every `E(p,q)` with `q ∉ S`.
    ///
    /// The kernel is computed weight space by weight space against all
    /// `E(p,q)` with `p` in the window and `q` in the window outside `S`;
    /// units with `q` outside the window annihilate every basis vector. On
    /// a weight space whose weight is nonzero at some `q ∉ S`, `E(q,q)` is
    /// an invertible scalar, so only weights supported in `S` are visited.
    pub fn omega(&self, s: &SupportSet) -> Result<Vec<ModuleVector>> {
        if !self.window.strictly_contains(s) {
            return Err(Error::WindowTooSmall(format!(
                "window {} needs a spare index on each side of {s}",
                self.window
            )));
        }
        let outside: Vec<i64> = self.window.indices().filter(|&q| !s.contains(q)).collect();
        let ops: Vec<MatrixUnit> = self
            .window
            .indices()
            .flat_map(|p| outside.iter().map(move |&q| MatrixUnit::new(p, q)))
            .collect();
        let mut out = Vec::new();
        for weight in compositions_on(s, self.level()) {
            let vectors: Vec<ModuleVector> = self
                .weight_space(&weight)
                .into_iter()
                .map(ModuleVector::basis)
                .collect();
            out.extend(joint_kernel(self, &vectors, &ops)?);
        }
        Ok(out)
    }

    /// Smallest `d` with `e^d = 0` on the whole windowed module.
    pub fn nilpotency_degree(&self, e: MatrixUnit) -> Result<u32> {
        if e.is_diagonal() {
            return Err(Error::Precondition(format!("{e} is diagonal")));
        }
        if !self.window.contains(e.row) || !self.window.contains(e.col) {
            return Err(Error::Precondition(format!("{e} leaves window {}", self.window)));
        }
        let mut worst = 0;
        for b in self.basis() {
            let mut v = ModuleVector::basis(b);
            let mut d = 0;
            while !v.is_zero() {
                v = self.act_unit(e, &v)?;
                d += 1;
            }
            worst = worst.max(d);
        }
        Ok(worst)
    }

    /// Closure of `{v}` under repeated action of `gens`. A weight vector is
    /// closed one weight space at a time; anything else in a single space.
    pub fn cyclic_span(&self, v: &ModuleVector, gens: &[MatrixUnit]) -> Result<Vec<ModuleVector>> {
        let by_weight = v.weight().is_some() || v.is_zero();
        let span = close(self, std::slice::from_ref(v), gens, by_weight)?;
        Ok(span.vectors())
    }

    pub fn format_vector(&self, v: &ModuleVector) -> String {
        if v.is_zero() {
            return "0".into();
        }
        v.terms()
            .enumerate()
            .map(|(k, (b, c))| scalar::format_term(c, &self.format_basis(b), k == 0))
            .collect()
    }

    pub fn format_basis(&self, b: &BasisIndex) -> String {
        let factors = &self.summands[b.summand as usize];
        let mut parts = Vec::new();
        for (f, slot) in factors.iter().zip(&b.slots) {
            parts.push(match f {
                FactorSpec::Symmetric(_) => {
                    let mut terms = Vec::new();
                    let mut i = 0;
                    while i < slot.len() {
                        let mut j = i;
                        while j < slot.len() && slot[j] == slot[i] {
                            j += 1;
                        }
                        terms.push(if j - i == 1 {
                            format!("x{}", slot[i])
                        } else {
                            format!("x{}^{}", slot[i], j - i)
                        });
                        i = j;
                    }
                    terms.join("*")
                }
                FactorSpec::Exterior(_) => slot
                    .iter()
                    .map(|i| format!("v{i}"))
                    .collect::<Vec<_>>()
                    .join("^"),
            });
        }
        let body = if parts.is_empty() { "1".to_string() } else { parts.join(" (x) ") };
        if self.summands.len() > 1 {
            format!("#{}:{}", b.summand, body)
        } else {
            body
        }
    }
}

impl fmt::Display for RealizedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.summands.iter().enumerate() {
            if k > 0 {
                write!(f, " (+) ")?;
            }
            if s.is_empty() {
                write!(f, "C")?;
            }
            for (t, factor) in s.iter().enumerate() {
                if t > 0 {
                    write!(f, " (x) ")?;
                }
                write!(f, "{factor}")?;
            }
        }
        write!(f, " @ window{}", self.window)
    }
}

impl FromStr for RealizedModule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let spec: ModuleSpec = s.parse()?;
        let window = spec
            .window
            .ok_or_else(|| Error::Parse(format!("module literal `{s}` needs `@ window[lo,hi]`")))?;
        spec.realize(window)
    }
}

/// Weights `Σ a_i ε_i` with `a_i ∈ ℕ` on the positions of `s` and `Σ a_i = total`.
pub fn compositions_on(s: &SupportSet, total: u32) -> Vec<Weight> {
    fn go(pos: &[i64], left: u32, cur: &mut Vec<(i64, i64)>, out: &mut Vec<Weight>) {
        match pos {
            [] => {
                if left == 0 {
                    out.push(Weight::from_ints(cur.iter().copied()));
                }
            }
            [last] => {
                cur.push((*last, left as i64));
                go(&[], 0, cur, out);
                cur.pop();
            }
            [first, rest @ ..] => {
                for a in (0..=left).rev() {
                    cur.push((*first, a as i64));
                    go(rest, left - a, cur, out);
                    cur.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(s.indices(), total, &mut Vec::new(), &mut out);
    out
}

/// Basis (primitive integer combinations of `vectors`) of the joint kernel
/// of the given units restricted to `span(vectors)`.
pub fn joint_kernel(
    module: &RealizedModule,
    vectors: &[ModuleVector],
    ops: &[MatrixUnit],
) -> Result<Vec<ModuleVector>> {
    if vectors.is_empty() {
        return Ok(Vec::new());
    }
    let mut columns: Vec<SparseVec<(usize, BasisIndex)>> = vec![SparseVec::new(); vectors.len()];
    for (k, e) in ops.iter().enumerate() {
        for (j, v) in vectors.iter().enumerate() {
            for (b, c) in module.act_unit(*e, v)?.into_sparse() {
                columns[j].insert((k, b), c);
            }
        }
    }
    Ok(kernel(&columns)
        .into_iter()
        .map(|c| ModuleVector::combination(vectors, &c).primitive())
        .collect())
}

/// A subspace of a windowed module that is closed under a set of matrix
/// units, organized by weight when every generator is a weight vector.
#[derive(Debug, Clone)]
pub struct WindowedSpan {
    module: RealizedModule,
    spaces: BTreeMap<Option<Weight>, Subspace<BasisIndex>>,
}

impl WindowedSpan {
    /// `U(gl_window) · generators ∩ window`: generators are split into
    /// weight components (the diagonal window units separate them) and closed
    /// under every off-diagonal window unit.
    pub fn generate(module: &RealizedModule, generators: &[ModuleVector]) -> Result<Self> {
        let mut seeds = Vec::new();
        for g in generators {
            seeds.extend(g.weight_components().into_values());
        }
        close(module, &seeds, &module.window().off_diagonal_units(), true)
    }

    pub fn module(&self) -> &RealizedModule {
        &self.module
    }

    pub fn dim(&self) -> usize {
        self.spaces.values().map(Subspace::dim).sum()
    }

    /// Dimension of every weight space; only meaningful for weight-graded spans.
    pub fn dims(&self) -> BTreeMap<Weight, usize> {
        self.spaces
            .iter()
            .filter_map(|(w, s)| w.clone().map(|w| (w, s.dim())))
            .collect()
    }

    pub fn weight_space(&self, w: &Weight) -> Vec<ModuleVector> {
        self.spaces
            .get(&Some(w.clone()))
            .map(|s| s.rows().iter().cloned().map(ModuleVector::from_sparse).collect())
            .unwrap_or_default()
    }

    pub fn weights(&self) -> impl Iterator<Item = &Weight> {
        self.spaces.keys().flatten()
    }

    pub fn vectors(&self) -> Vec<ModuleVector> {
        self.spaces
            .values()
            .flat_map(|s| s.rows().iter().cloned().map(ModuleVector::from_sparse))
            .collect()
    }

    pub fn contains(&self, v: &ModuleVector) -> bool {
        let graded = self.spaces.keys().all(Option::is_some);
        if graded {
            v.weight_components().into_iter().all(|(w, c)| {
                self.spaces
                    .get(&Some(w))
                    .is_some_and(|s| s.contains(c.as_sparse()))
            })
        } else {
            self.spaces
                .get(&None)
                .is_some_and(|s| s.contains(v.as_sparse()))
                || v.is_zero()
        }
    }
}

fn close(
    module: &RealizedModule,
    seeds: &[ModuleVector],
    gens: &[MatrixUnit],
    by_weight: bool,
) -> Result<WindowedSpan> {
    let mut spaces: BTreeMap<Option<Weight>, Subspace<BasisIndex>> = BTreeMap::new();
    let mut queue: Vec<ModuleVector> = Vec::new();
    let key = |v: &ModuleVector| if by_weight { v.weight() } else { None };
    for s in seeds {
        if s.is_zero() {
            continue;
        }
        if spaces.entry(key(s)).or_default().insert(s.as_sparse()) {
            queue.push(s.clone());
        }
    }
    while let Some(v) = queue.pop() {
        for &e in gens {
            let image = module.act_unit(e, &v)?;
            if image.is_zero() {
                continue;
            }
            if spaces.entry(key(&image)).or_default().insert(image.as_sparse()) {
                queue.push(image);
            }
        }
    }
    Ok(WindowedSpan {
        module: module.clone(),
        spaces,
    })
}

fn multisets(idx: &[i64], r: usize) -> Vec<Vec<i64>> {
    fn go(idx: &[i64], r: usize, start: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for k in start..idx.len() {
            cur.push(idx[k]);
            go(idx, r, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(idx, r, 0, &mut Vec::new(), &mut out);
    out
}

fn subsets(idx: &[i64], k: usize) -> Vec<Vec<i64>> {
    fn go(idx: &[i64], k: usize, start: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in start..idx.len() {
            cur.push(idx[j]);
            go(idx, k, j + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(idx, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Splits the multiset `remaining` among the slots of `factors[t..]`.
fn distribute(
    factors: &[FactorSpec],
    t: usize,
    remaining: &mut Vec<(i64, u32)>,
    slots: &mut Vec<Vec<i64>>,
    emit: &mut dyn FnMut(&[Vec<i64>]),
) {
    if t == factors.len() {
        if remaining.iter().all(|r| r.1 == 0) {
            emit(slots);
        }
        return;
    }
    let f = factors[t];
    let cap = match f {
        FactorSpec::Symmetric(_) => u32::MAX,
        FactorSpec::Exterior(_) => 1,
    };
    fn choose(
        pos: usize,
        need: u32,
        cap: u32,
        remaining: &mut Vec<(i64, u32)>,
        cur: &mut Vec<i64>,
        done: &mut dyn FnMut(&mut Vec<(i64, u32)>, Vec<i64>),
    ) {
        if need == 0 {
            done(remaining, cur.clone());
            return;
        }
        if pos == remaining.len() {
            return;
        }
        let (i, avail) = remaining[pos];
        let top = avail.min(need).min(cap);
        for take in (0..=top).rev() {
            remaining[pos].1 -= take;
            for _ in 0..take {
                cur.push(i);
            }
            choose(pos + 1, need - take, cap, remaining, cur, done);
            for _ in 0..take {
                cur.pop();
            }
            remaining[pos].1 += take;
        }
    }
    let mut cur = Vec::new();
    choose(0, f.degree(), cap, remaining, &mut cur, &mut |rem, slot| {
        slots.push(slot);
        distribute(factors, t + 1, rem, slots, emit);
        slots.pop();
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    fn win(lo: i64, hi: i64) -> Window {
        Window::new(lo, hi).unwrap()
    }

    fn vec_of(m: &RealizedModule, slots: Vec<Vec<i64>>) -> ModuleVector {
        m.vector_from_slots(0, slots).unwrap()
    }

    fn e(m: i64, n: i64) -> MatrixUnit {
        MatrixUnit::new(m, n)
    }

    #[test]
    fn symmetric_action() {
        let a2 = RealizedModule::symmetric(2, win(0, 4)).unwrap();
        let x22 = vec_of(&a2, vec![vec![2, 2]]);
        let got = a2.act_unit(e(1, 2), &x22).unwrap();
        assert_eq!(got, vec_of(&a2, vec![vec![1, 2]]).scale(&int(2)));
    }

    #[test]
    fn power_gives_factorial() {
        let a3 = RealizedModule::symmetric(3, win(0, 4)).unwrap();
        let x = vec_of(&a3, vec![vec![2, 2, 2]]);
        let got = a3.act_power(e(1, 2), 3, &x).unwrap();
        assert_eq!(got, vec_of(&a3, vec![vec![1, 1, 1]]).scale(&int(6)));
    }

    #[test]
    fn exterior_action_and_signs() {
        let l2 = RealizedModule::exterior(2, win(0, 4)).unwrap();
        let v12 = vec_of(&l2, vec![vec![1, 2]]);
        assert!(l2.act_unit(e(2, 1), &v12).unwrap().is_zero());
        // v_1 ∧ v_2 with v_2 → v_0 gives v_1 ∧ v_0 = -v_0 ∧ v_1
        assert_eq!(
            l2.act_unit(e(0, 2), &v12).unwrap(),
            vec_of(&l2, vec![vec![0, 1]]).scale(&int(-1))
        );
        let l3 = RealizedModule::exterior(3, win(0, 5)).unwrap();
        let v = vec_of(&l3, vec![vec![1, 2, 3]]);
        // v1^v2^v3, v1 -> v4: v4^v2^v3 = v2^v3^v4
        assert_eq!(l3.act_unit(e(4, 1), &v).unwrap(), vec_of(&l3, vec![vec![2, 3, 4]]));
        assert_eq!(vec_of(&l3, vec![vec![3, 1, 2]]), vec_of(&l3, vec![vec![1, 2, 3]]));
    }

    #[test]
    fn overflow_is_reported() {
        let nat = RealizedModule::natural(win(0, 3));
        let v = vec_of(&nat, vec![vec![2]]);
        assert!(matches!(
            nat.act_unit(e(9, 2), &v),
            Err(Error::WindowOverflow { index: 9, .. })
        ));
        assert!(nat.act_unit(e(9, 1), &v).unwrap().is_zero());
    }

    #[test]
    fn weights_of_basis() {
        let a2 = RealizedModule::symmetric(2, win(0, 4)).unwrap();
        assert_eq!(weight_of(&a2.basis()[0]), Weight::from_ints([(0, 2)]));
        let t = RealizedModule::tensor(vec![FactorSpec::Symmetric(1); 2], win(0, 4)).unwrap();
        let b = BasisIndex {
            summand: 0,
            slots: vec![vec![2], vec![2]],
        };
        assert_eq!(weight_of(&b), Weight::from_ints([(2, 2)]));
        let l2 = RealizedModule::exterior(2, win(0, 8)).unwrap();
        let v = vec_of(&l2, vec![vec![3, 7]]);
        assert_eq!(v.weight().unwrap(), Weight::from_ints([(3, 1), (7, 1)]));
        assert_eq!(t.level(), 2);
    }

    #[test]
    fn levels_and_i_infinity() {
        let a2 = RealizedModule::symmetric(2, win(0, 3)).unwrap();
        assert_eq!(a2.level(), 2);
        let b = &a2.weight_space(&Weight::from_ints([(1, 2)]))[0];
        assert_eq!(a2.windowed_i_infinity_eigenvalue(b).unwrap(), int(2));
        assert_eq!(RealizedModule::natural(win(0, 3)).level(), 1);
        assert_eq!(RealizedModule::trivial(win(0, 3)).level(), 0);
        assert!(matches!(
            RealizedModule::direct_sum(
                vec![vec![FactorSpec::Exterior(1)], vec![FactorSpec::Exterior(2)]],
                win(0, 3)
            ),
            Err(Error::MixedLevel(_))
        ));
    }

    #[test]
    fn weight_space_examples() {
        let a2 = RealizedModule::symmetric(2, win(0, 4)).unwrap();
        assert_eq!(a2.weight_space(&Weight::from_ints([(1, 2)])).len(), 1);
        let l2 = RealizedModule::exterior(2, win(0, 4)).unwrap();
        let ws = l2.weight_space(&Weight::from_ints([(1, 1), (2, 1)]));
        assert_eq!(ws, vec![BasisIndex { summand: 0, slots: vec![vec![1, 2]] }]);
        assert!(l2.weight_space(&Weight::from_ints([(1, 2)])).is_empty());
        let t = RealizedModule::tensor(vec![FactorSpec::Symmetric(1); 2], win(0, 4)).unwrap();
        let ws = t.weight_space(&Weight::from_ints([(1, 1), (2, 1)]));
        assert_eq!(
            ws,
            vec![
                BasisIndex { summand: 0, slots: vec![vec![1], vec![2]] },
                BasisIndex { summand: 0, slots: vec![vec![2], vec![1]] },
            ]
        );
    }

    #[test]
    fn omega_examples() {
        let s1 = SupportSet::new(vec![1]).unwrap();
        let nat = RealizedModule::natural(win(0, 5));
        let om = nat.omega(&s1).unwrap();
        assert_eq!(om, vec![vec_of(&nat, vec![vec![1]])]);

        let a2 = RealizedModule::symmetric(2, win(0, 4)).unwrap();
        assert_eq!(a2.omega(&s1).unwrap(), vec![vec_of(&a2, vec![vec![1, 1]])]);

        let t = RealizedModule::tensor(vec![FactorSpec::Symmetric(1); 2], win(0, 4)).unwrap();
        let s12 = SupportSet::new(vec![1, 2]).unwrap();
        assert_eq!(t.omega(&s12).unwrap().len(), 4);

        let narrow = RealizedModule::natural(win(1, 3));
        let s123 = SupportSet::new(vec![1, 2, 3]).unwrap();
        assert!(matches!(narrow.omega(&s123), Err(Error::WindowTooSmall(_))));
    }

    #[test]
    fn nilpotency_examples() {
        let a3 = RealizedModule::symmetric(3, win(0, 3)).unwrap();
        assert_eq!(a3.nilpotency_degree(e(1, 2)).unwrap(), 4);
        let l2 = RealizedModule::exterior(2, win(0, 3)).unwrap();
        assert_eq!(l2.nilpotency_degree(e(1, 2)).unwrap(), 2);
        let nat = RealizedModule::natural(win(0, 3));
        assert_eq!(nat.nilpotency_degree(e(1, 2)).unwrap(), 2);
        assert!(nat.nilpotency_degree(e(1, 1)).is_err());
    }

    #[test]
    fn cyclic_span_examples() {
        let w = win(0, 3);
        let a2 = RealizedModule::symmetric(2, w).unwrap();
        let x11 = vec_of(&a2, vec![vec![1, 1]]);
        assert_eq!(a2.cyclic_span(&x11, &w.all_units()).unwrap().len(), a2.basis().len());

        let t = RealizedModule::tensor(vec![FactorSpec::Symmetric(1); 2], w).unwrap();
        let anti = vec_of(&t, vec![vec![1], vec![2]]).sub(&vec_of(&t, vec![vec![2], vec![1]]));
        assert_eq!(t.cyclic_span(&anti, &w.all_units()).unwrap().len(), 6);

        let nat = RealizedModule::natural(w);
        let v1 = vec_of(&nat, vec![vec![1]]);
        assert_eq!(nat.cyclic_span(&v1, &[e(1, 1)]).unwrap().len(), 1);
    }

    #[test]
    fn non_weight_vectors_close_in_one_space() {
        let w = win(0, 2);
        let nat = RealizedModule::natural(w);
        let v = vec_of(&nat, vec![vec![0]]).sub(&vec_of(&nat, vec![vec![1]]));
        // E(0,0) keeps only the v_0 part; v_0 and v_1 together span two dimensions.
        assert_eq!(nat.cyclic_span(&v, &[e(0, 0)]).unwrap().len(), 2);
        assert_eq!(nat.cyclic_span(&v, &[e(2, 2)]).unwrap().len(), 1);
    }

    #[test]
    fn module_literals() {
        let m: RealizedModule = "A(2) (x) Wedge(3) @ window[0,6]".parse().unwrap();
        assert_eq!(m.level(), 5);
        assert_eq!(m.to_string(), "A(2) (x) Wedge(3) @ window[0,6]");
        let d: RealizedModule = "Wedge(1) (+) Wedge(1) @ window[0,3]".parse().unwrap();
        assert_eq!(d.summands().len(), 2);
        let c: RealizedModule = "C @ window[0,2]".parse().unwrap();
        assert_eq!(c.level(), 0);
        assert_eq!(c.basis().len(), 1);
        assert!("A(0) @ window[0,2]".parse::<RealizedModule>().is_err());
        assert!("A(2)".parse::<RealizedModule>().is_err());
        let t = RealizedModule::tensor(vec![FactorSpec::Symmetric(2), FactorSpec::Exterior(2)], win(0, 4)).unwrap();
        let v = vec_of(&t, vec![vec![1, 1], vec![1, 3]]);
        assert_eq!(t.format_vector(&v.scale(&int(-2))), "-2*x1^2 (x) v1^v3");
    }
}
