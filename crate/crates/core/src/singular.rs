//! Singular vectors, the left-shifting operators with their recovery
//! scalar, and the complete-reducibility procedure.
//!
//! A module is decomposed through its vacuum space `Ω_S̄` for an interval
//! `S̄`: every `S̄`-singular vector of weight `ν` there generates a copy of
//! `L(S̄, ν)`, and once `S̄` has at least as many positions as the longest
//! partition that can occur, these copies exhaust the module. The answer is
//! certified twice: it must not change when `S̄` grows by one, and the
//! multiplicity-weighted Schur characters must reproduce the windowed
//! character of the module exactly.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::algebra::{MatrixUnit, SupportSet, Window};
use crate::error::{Error, Result};
use crate::lr_tensor::KostkaTable;
use crate::realized::{compositions_on, joint_kernel, ModuleVector, RealizedModule, WindowedSpan};
use crate::scalar::{int, to_i64};
use crate::weights::{Partition, Weight};

/// Singular vectors paired with their weights.
type Highest = Vec<(Weight, ModuleVector)>;

/// A windowed `gl_∞`-module the decomposition engine can work with.
#[derive(Debug, Clone)]
pub enum ModuleView {
    /// Every basis vector of a realized module.
    Full(RealizedModule),
    /// A subspace closed under all window units inside an ambient module.
    Span {
        span: WindowedSpan,
        /// Upper bound on the rows of any partition labelling a summand.
        length_bound: u32,
        /// Indices of the generating vectors.
        seed: Vec<i64>,
    },
    Tensor(Box<ModuleView>, Box<ModuleView>),
}

impl ModuleView {
    pub fn full(m: RealizedModule) -> Self {
        ModuleView::Full(m)
    }

    /// The windowed span of `generators`; the length bound is taken from the
    /// ambient module.
    pub fn generated(m: &RealizedModule, generators: &[ModuleVector]) -> Result<Self> {
        let span = WindowedSpan::generate(m, generators)?;
        let mut seed: Vec<i64> = generators.iter().flat_map(|g| g.indices()).collect();
        seed.sort_unstable();
        seed.dedup();
        Ok(ModuleView::Span {
            span,
            length_bound: m.max_rows(),
            seed,
        })
    }

    pub fn tensor(a: ModuleView, b: ModuleView) -> Self {
        ModuleView::Tensor(Box::new(a), Box::new(b))
    }

    pub fn ambient(&self) -> Result<RealizedModule> {
        match self {
            ModuleView::Full(m) => Ok(m.clone()),
            ModuleView::Span { span, .. } => Ok(span.module().clone()),
            ModuleView::Tensor(a, b) => a.ambient()?.tensor_with(&b.ambient()?),
        }
    }

    pub fn window(&self) -> Window {
        match self {
            ModuleView::Full(m) => m.window(),
            ModuleView::Span { span, .. } => span.module().window(),
            ModuleView::Tensor(a, _) => a.window(),
        }
    }

    pub fn level(&self) -> u32 {
        match self {
            ModuleView::Full(m) => m.level(),
            ModuleView::Span { span, .. } => span.module().level(),
            ModuleView::Tensor(a, b) => a.level() + b.level(),
        }
    }

    pub fn length_bound(&self) -> u32 {
        match self {
            ModuleView::Full(m) => m.max_rows(),
            ModuleView::Span { length_bound, .. } => *length_bound,
            ModuleView::Tensor(a, b) => a.length_bound() + b.length_bound(),
        }
    }

    pub fn seed_indices(&self) -> Vec<i64> {
        match self {
            ModuleView::Full(_) => Vec::new(),
            ModuleView::Span { seed, .. } => seed.clone(),
            ModuleView::Tensor(a, b) => {
                let mut v = a.seed_indices();
                v.extend(b.seed_indices());
                v.sort_unstable();
                v.dedup();
                v
            }
        }
    }

    /// A basis of the weight space, in ambient coordinates.
    pub fn weight_space(&self, weight: &Weight) -> Result<Vec<ModuleVector>> {
        match self {
            ModuleView::Full(m) => Ok(m
                .weight_space(weight)
                .into_iter()
                .map(ModuleVector::basis)
                .collect()),
            ModuleView::Span { span, .. } => Ok(span.weight_space(weight)),
            ModuleView::Tensor(a, b) => {
                let (ma, mb) = (a.ambient()?, b.ambient()?);
                let mut out = Vec::new();
                for left_weight in sub_weights(weight, a.level()) {
                    let right_weight = weight - &left_weight;
                    let left = a.weight_space(&left_weight)?;
                    if left.is_empty() {
                        continue;
                    }
                    let right = b.weight_space(&right_weight)?;
                    for u in &left {
                        for v in &right {
                            out.push(ma.tensor_vectors(u, &mb, v));
                        }
                    }
                }
                Ok(out)
            }
        }
    }

    /// Dimension of every nonzero weight space on the window.
    pub fn windowed_character(&self) -> BTreeMap<Weight, usize> {
        match self {
            ModuleView::Full(m) => m.windowed_character(),
            ModuleView::Span { span, .. } => span.dims(),
            ModuleView::Tensor(a, b) => {
                let (ca, cb) = (a.windowed_character(), b.windowed_character());
                let mut out = BTreeMap::new();
                for (wa, da) in &ca {
                    for (wb, db) in &cb {
                        *out.entry(wa + wb).or_insert(0) += da * db;
                    }
                }
                out
            }
        }
    }
}

/// Natural weights `β ≤ α` (entrywise) with `Σ β = total`.
fn sub_weights(alpha: &Weight, total: u32) -> Vec<Weight> {
    let entries: Vec<(i64, i64)> = alpha.as_ints().unwrap_or_default();
    fn go(e: &[(i64, i64)], left: i64, cur: &mut Vec<(i64, i64)>, out: &mut Vec<Weight>) {
        let Some((&(i, cap), rest)) = e.split_first() else {
            if left == 0 {
                out.push(Weight::from_ints(cur.iter().copied()));
            }
            return;
        };
        let rest_cap: i64 = rest.iter().map(|x| x.1).sum();
        for a in (0..=cap.min(left)).rev() {
            if left - a > rest_cap {
                break;
            }
            cur.push((i, a));
            go(rest, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(&entries, total as i64, &mut Vec::new(), &mut out);
    out
}

/// Raising operators `E(i,j)`, `i < j`, inside `s`.
pub fn raising_units(s: &SupportSet) -> Vec<MatrixUnit> {
    let idx = s.indices();
    let mut out = Vec::new();
    for (a, &i) in idx.iter().enumerate() {
        for &j in &idx[a + 1..] {
            out.push(MatrixUnit::new(i, j));
        }
    }
    out
}

/// `E(s_k, s_{k+1})` for consecutive elements of `s`; they generate all
/// raising operators of `gl_S`.
pub fn simple_raising_units(s: &SupportSet) -> Vec<MatrixUnit> {
    s.indices()
        .windows(2)
        .map(|w| MatrixUnit::new(w[0], w[1]))
        .collect()
}

fn check_window(window: Window, s: &SupportSet) -> Result<()> {
    if window.strictly_contains(s) {
        Ok(())
    } else {
        Err(Error::WindowTooSmall(format!(
            "window {window} needs a spare index on each side of {s}"
        )))
    }
}

/// `S`-singular vectors of a realized module, tagged by weight.
pub fn singular_vectors(m: &RealizedModule, s: &SupportSet) -> Result<Vec<(Weight, ModuleVector)>> {
    singular_vectors_in(&ModuleView::full(m.clone()), s)
}

/// Per weight space, the joint kernel of every `E(p,q)` with `q ∉ S` and
/// every raising operator of `gl_S`. Weight spaces whose weight is nonzero
/// outside `S` are skipped: some diagonal unit acts there by a nonzero scalar.
pub fn singular_vectors_in(view: &ModuleView, s: &SupportSet) -> Result<Vec<(Weight, ModuleVector)>> {
    let window = view.window();
    check_window(window, s)?;
    let ambient = view.ambient()?;
    let mut ops = raising_units(s);
    for q in window.indices().filter(|&q| !s.contains(q)) {
        ops.extend(window.indices().map(|p| MatrixUnit::new(p, q)));
    }
    let mut out = Vec::new();
    for weight in compositions_on(s, view.level()) {
        let basis = view.weight_space(&weight)?;
        for v in joint_kernel(&ambient, &basis, &ops)? {
            out.push((weight.clone(), v));
        }
    }
    Ok(out)
}

/// Values `λ_r, ..., λ_n` as naturals with natural consecutive differences.
fn shift_exponents(weight: &Weight, r: i64, n: i64) -> Result<Vec<u32>> {
    if r > n {
        return Err(Error::HypothesisViolated(format!("empty range {r}..{n}")));
    }
    let values: Vec<i64> = (r..=n)
        .map(|j| {
            to_i64(&weight.get(j)).ok_or_else(|| {
                Error::HypothesisViolated(format!("λ_{j} = {} is not an integer", weight.get(j)))
            })
        })
        .collect::<Result<_>>()?;
    let mut diffs = Vec::with_capacity(values.len());
    for (k, pair) in values.windows(2).enumerate() {
        let d = pair[0] - pair[1];
        if d < 0 {
            return Err(Error::HypothesisViolated(format!(
                "λ_{} - λ_{} = {d} is negative",
                r + k as i64,
                r + k as i64 + 1
            )));
        }
        diffs.push(d as u32);
    }
    let last = *values.last().unwrap();
    if last < 0 {
        return Err(Error::HypothesisViolated(format!("λ_{n} = {last} is negative")));
    }
    diffs.push(last as u32);
    Ok(diffs)
}

/// `α = (λ_n!)^2 ((λ_{n-1} - λ_n)!)^2 ⋯ ((λ_r - λ_{r+1})!)^2`.
pub fn shift_recovery_scalar(weight: &Weight, r: i64, n: i64) -> Result<BigUint> {
    let exps = shift_exponents(weight, r, n)?;
    let mut alpha = BigUint::one();
    for d in exps {
        let f: BigUint = (1..=d).map(BigUint::from).product();
        alpha *= &f * &f;
    }
    Ok(alpha)
}

/// `v' = (E(r-1,r))^{λ_r-λ_{r+1}} ⋯ (E(r-1,n-1))^{λ_{n-1}-λ_n} (E(r-1,n))^{λ_n} v`
/// for a weight vector `v` killed by every `E(p,q)` with `q ∉ {r..n}` and by
/// `E(r,j+1)` for `r ≤ j ≤ n`. The hypotheses are checked on the window.
pub fn shift_left(v: &ModuleVector, m: &RealizedModule, r: i64, n: i64) -> Result<ModuleVector> {
    let (_, exps) = check_shift_hypotheses(v, m, r, n)?;
    let mut cur = v.clone();
    // rightmost factor first: column n, then n-1, ..., r
    for (j, &d) in (r..=n).zip(&exps).collect::<Vec<_>>().into_iter().rev() {
        cur = m.act_power(MatrixUnit::new(r - 1, j), d, &cur)?;
    }
    Ok(cur)
}

/// `(E(n,r-1))^{λ_n} ⋯ (E(r,r-1))^{λ_r-λ_{r+1}} v'`, exponents from `weight`.
pub fn shift_lower(v_prime: &ModuleVector, m: &RealizedModule, weight: &Weight, r: i64, n: i64) -> Result<ModuleVector> {
    let exps = shift_exponents(weight, r, n)?;
    let mut cur = v_prime.clone();
    for (k, j) in (r..=n).enumerate() {
        cur = m.act_power(MatrixUnit::new(j, r - 1), exps[k], &cur)?;
    }
    Ok(cur)
}

fn check_shift_hypotheses(v: &ModuleVector, m: &RealizedModule, r: i64, n: i64) -> Result<(Weight, Vec<u32>)> {
    let window = m.window();
    if !window.contains(r - 1) || !window.contains(n) {
        return Err(Error::HypothesisViolated(format!(
            "window {window} must contain {} through {n}",
            r - 1
        )));
    }
    let weight = v
        .weight()
        .ok_or_else(|| Error::HypothesisViolated("v is zero or not a weight vector".into()))?;
    let exps = shift_exponents(&weight, r, n)?;
    for q in window.indices().filter(|&q| q < r || q > n) {
        for p in window.indices() {
            if !m.act_unit(MatrixUnit::new(p, q), v)?.is_zero() {
                return Err(Error::HypothesisViolated(format!("E({p},{q}) v ≠ 0")));
            }
        }
    }
    for j in r..=n {
        if window.contains(j + 1) && !m.act_unit(MatrixUnit::new(r, j + 1), v)?.is_zero() {
            return Err(Error::HypothesisViolated(format!("E({r},{}) v ≠ 0", j + 1)));
        }
    }
    Ok((weight, exps))
}

/// Outcome of applying the shift and the reverse lowering string.
#[derive(Debug, Clone)]
pub struct ShiftCertificate {
    pub alpha: BigUint,
    pub shifted: ModuleVector,
    /// `v'` is killed by `E(p,q)`, `q ∉ {r-1..n}`, and by `E(r-1,j+1)`, `r-1 ≤ j ≤ n`.
    pub conclusion_holds: bool,
    /// The lowering string returns exactly `α v`.
    pub recovers: bool,
}

pub fn certify_shift(v: &ModuleVector, m: &RealizedModule, r: i64, n: i64) -> Result<ShiftCertificate> {
    let (weight, _) = check_shift_hypotheses(v, m, r, n)?;
    let shifted = shift_left(v, m, r, n)?;
    let alpha = shift_recovery_scalar(&weight, r, n)?;
    let window = m.window();
    let mut conclusion_holds = !shifted.is_zero();
    for q in window.indices().filter(|&q| q < r - 1 || q > n) {
        for p in window.indices() {
            conclusion_holds &= m.act_unit(MatrixUnit::new(p, q), &shifted)?.is_zero();
        }
    }
    for j in (r - 1)..=n {
        if window.contains(j + 1) {
            conclusion_holds &= m.act_unit(MatrixUnit::new(r - 1, j + 1), &shifted)?.is_zero();
        }
    }
    let back = shift_lower(&shifted, m, &weight, r, n)?;
    let expected = v.scale(&crate::scalar::Scalar::from_integer(alpha.clone().into()));
    Ok(ShiftCertificate {
        recovers: back == expected,
        alpha,
        shifted,
        conclusion_holds,
    })
}

/// One summand type `L(S̄, λ)` with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DecompositionRecord {
    pub support: Vec<i64>,
    pub weight: Vec<(i64, i64)>,
    pub partition: Partition,
    pub multiplicity: u64,
}

/// A direct sum `⊕ L(S̄, λ)^{m}`; records are sorted by partition, largest
/// first in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub records: Vec<DecompositionRecord>,
}

impl Decomposition {
    pub fn from_multiset(summands: &BTreeMap<Partition, u64>, support: &SupportSet) -> Result<Self> {
        let mut records = Vec::new();
        for (nu, &mult) in summands.iter().rev() {
            if mult == 0 {
                continue;
            }
            let w = nu.to_weight(support)?;
            records.push(DecompositionRecord {
                support: support.indices().to_vec(),
                weight: w.as_ints().expect("integral"),
                partition: nu.clone(),
                multiplicity: mult,
            });
        }
        Ok(Self { records })
    }

    /// Partition multiset, forgetting the supports.
    pub fn multiset(&self) -> BTreeMap<Partition, u64> {
        let mut out = BTreeMap::new();
        for r in &self.records {
            *out.entry(r.partition.clone()).or_insert(0) += r.multiplicity;
        }
        out
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.records.iter().map(|r| r.multiplicity).sum()
    }
}

/// Everything the engine learned while decomposing.
#[derive(Debug, Clone)]
pub struct DecompositionReport {
    pub decomposition: Decomposition,
    /// The interval on which the decomposition was read off.
    pub sbar: SupportSet,
    /// `S̄`-singular vectors at dominant weights, one per summand.
    pub singular: Vec<(Weight, ModuleVector)>,
    /// Every interval tried, with the partition multiset found there.
    pub runs: Vec<(SupportSet, BTreeMap<Partition, u64>)>,
}

fn singular_at_dominant(
    view: &ModuleView,
    ambient: &RealizedModule,
    sbar: &SupportSet,
) -> Result<(BTreeMap<Partition, u64>, Highest)> {
    let ops = simple_raising_units(sbar);
    let mut mult = BTreeMap::new();
    let mut vectors = Vec::new();
    for nu in Partition::all_of(view.level(), sbar.len()) {
        let weight = nu.to_weight(sbar)?;
        let basis = view.weight_space(&weight)?;
        let found = joint_kernel(ambient, &basis, &ops)?;
        if !found.is_empty() {
            mult.insert(nu, found.len() as u64);
        }
        vectors.extend(found.into_iter().map(|v| (weight.clone(), v)));
    }
    Ok((mult, vectors))
}

/// Complete reduction of a windowed module.
///
/// `start` fixes the first interval tried; by default it is the hull of the
/// generating vectors' indices, or the first inner window index for a full
/// module. The interval then grows to the right one index at a time until it
/// has at least [`ModuleView::length_bound`] positions, and the result there
/// must agree with the next larger interval.
pub fn decompose_view(view: &ModuleView, start: Option<SupportSet>) -> Result<DecompositionReport> {
    let window = view.window();
    let ambient = view.ambient()?;
    let bound = view.length_bound().max(1) as usize;
    let mut sbar = match start {
        Some(s) => s.hull(),
        None => {
            let seed = view.seed_indices();
            if seed.is_empty() {
                SupportSet::interval(window.lo + 1, window.lo + 1)?
            } else {
                SupportSet::new(seed)?.hull()
            }
        }
    };
    let mut runs: Vec<(SupportSet, BTreeMap<Partition, u64>)> = Vec::new();
    let mut accepted: Option<(SupportSet, BTreeMap<Partition, u64>, Highest)> = None;
    loop {
        check_window(window, &sbar)?;
        let (mult, vectors) = singular_at_dominant(view, &ambient, &sbar)?;
        runs.push((sbar.clone(), mult.clone()));
        if let Some((prev_s, prev, _)) = &accepted {
            if *prev != mult {
                return Err(Error::StabilizationFailure(format!(
                    "{prev_s} gives {prev:?} but {sbar} gives {mult:?}"
                )));
            }
            break;
        }
        if sbar.len() >= bound {
            accepted = Some((sbar.clone(), mult, vectors));
        }
        sbar = SupportSet::interval(SupportSet::min(&sbar), SupportSet::max(&sbar) + 1)?;
    }
    let (sbar, mult, singular) = accepted.expect("loop exits after acceptance");
    check_character(view, &mult)?;
    Ok(DecompositionReport {
        decomposition: Decomposition::from_multiset(&mult, &sbar)?,
        sbar,
        singular,
        runs,
    })
}

/// `Σ_ν mult_ν · s_ν(window) = windowed character`, weight by weight.
pub fn check_character(view: &ModuleView, mult: &BTreeMap<Partition, u64>) -> Result<()> {
    let window = view.window().as_support();
    let mut table = KostkaTable::new();
    let mut expected: BTreeMap<Weight, u128> = BTreeMap::new();
    for (nu, &m) in mult {
        for (w, k) in table.character(nu, &window) {
            *expected.entry(w).or_insert(0) += k * m as u128;
        }
    }
    let actual: BTreeMap<Weight, u128> = view
        .windowed_character()
        .into_iter()
        .filter(|(_, d)| *d > 0)
        .map(|(w, d)| (w, d as u128))
        .collect();
    if expected != actual {
        let bad = actual
            .iter()
            .find(|(w, d)| expected.get(*w) != Some(*d))
            .map(|(w, d)| format!("weight {w}: module {d}, summands {}", expected.get(w).copied().unwrap_or(0)))
            .or_else(|| {
                expected
                    .iter()
                    .find(|(w, _)| !actual.contains_key(*w))
                    .map(|(w, d)| format!("weight {w}: module 0, summands {d}"))
            })
            .unwrap_or_default();
        return Err(Error::CharacterMismatch(bad));
    }
    Ok(())
}

/// `m ≅ ⊕ L(S̄, λ)`, read off from singular vectors in `Ω_S̄`.
pub fn decompose_completely(m: &RealizedModule) -> Result<Decomposition> {
    Ok(decompose_view(&ModuleView::full(m.clone()), None)?.decomposition)
}

/// Every weight space of `view` whose weight is supported in `s`, i.e. `Ω_S`.
pub fn vacuum_dims(view: &ModuleView, s: &SupportSet) -> Result<BTreeMap<Weight, usize>> {
    let mut out = BTreeMap::new();
    for w in compositions_on(s, view.level()) {
        let d = view.weight_space(&w)?.len();
        if d > 0 {
            out.insert(w, d);
        }
    }
    Ok(out)
}

/// `E(p,q)^{k}` kills every vector of a span; the smallest such `k` is
/// returned when it is at most `limit`.
pub fn local_nilpotency(m: &RealizedModule, vectors: &[ModuleVector], e: MatrixUnit, limit: u32) -> Result<Option<u32>> {
    let mut worst = 0;
    for v in vectors {
        let mut cur = v.clone();
        let mut d = 0;
        while !cur.is_zero() {
            if d > limit {
                return Ok(None);
            }
            cur = m.act_unit(e, &cur)?;
            d += 1;
        }
        worst = worst.max(d);
    }
    Ok(Some(worst))
}

/// Residual `I_∞ v - level · v` for a sample vector; zero iff the level is
/// the eigenvalue.
pub fn level_residual(m: &RealizedModule, v: &ModuleVector) -> Result<ModuleVector> {
    let mut acc = ModuleVector::zero();
    for n in m.window().indices() {
        acc.add_assign(&m.act_unit(MatrixUnit::new(n, n), v)?, &int(1));
    }
    Ok(acc.sub(&v.scale(&int(m.level() as i64))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::realized::FactorSpec;

    fn win(lo: i64, hi: i64) -> Window {
        Window::new(lo, hi).unwrap()
    }

    fn s(v: &[i64]) -> SupportSet {
        SupportSet::new(v.to_vec()).unwrap()
    }

    fn p(lit: &str) -> Partition {
        lit.parse().unwrap()
    }

    #[test]
    fn singular_vector_examples() {
        let a2 = RealizedModule::symmetric(2, win(0, 3)).unwrap();
        let sv = singular_vectors(&a2, &s(&[1])).unwrap();
        assert_eq!(sv.len(), 1);
        assert_eq!(sv[0].0, Weight::from_ints([(1, 2)]));
        assert_eq!(sv[0].1, a2.vector_from_slots(0, vec![vec![1, 1]]).unwrap());

        let l2 = RealizedModule::exterior(2, win(0, 3)).unwrap();
        let sv = singular_vectors(&l2, &s(&[1, 2])).unwrap();
        assert_eq!(sv.len(), 1);
        assert_eq!(sv[0].1, l2.vector_from_slots(0, vec![vec![1, 2]]).unwrap());

        let t = RealizedModule::tensor(vec![FactorSpec::Symmetric(1); 2], win(0, 3)).unwrap();
        let sv = singular_vectors(&t, &s(&[1, 2])).unwrap();
        assert_eq!(sv.len(), 2);
        assert_eq!(sv[0].0, Weight::from_ints([(1, 2)]));
        assert_eq!(sv[0].1, t.vector_from_slots(0, vec![vec![1], vec![1]]).unwrap());
        assert_eq!(sv[1].0, Weight::from_ints([(1, 1), (2, 1)]));
        let anti = t
            .vector_from_slots(0, vec![vec![1], vec![2]])
            .unwrap()
            .sub(&t.vector_from_slots(0, vec![vec![2], vec![1]]).unwrap());
        assert_eq!(sv[1].1, anti);
    }

    #[test]
    fn shift_examples() {
        let a2 = RealizedModule::symmetric(2, win(0, 3)).unwrap();
        let x11 = a2.vector_from_slots(0, vec![vec![1, 1]]).unwrap();
        let shifted = shift_left(&x11, &a2, 1, 2).unwrap();
        assert_eq!(shifted, a2.vector_from_slots(0, vec![vec![0, 0]]).unwrap().scale(&int(2)));

        let l2 = RealizedModule::exterior(2, win(0, 3)).unwrap();
        let v12 = l2.vector_from_slots(0, vec![vec![1, 2]]).unwrap();
        let shifted = shift_left(&v12, &l2, 1, 2).unwrap();
        assert_eq!(shifted, l2.vector_from_slots(0, vec![vec![0, 1]]).unwrap().scale(&int(-1)));

        let triv = RealizedModule::trivial(win(0, 3));
        let one = ModuleVector::basis(triv.basis()[0].clone());
        assert_eq!(shift_left(&one, &triv, 1, 2).unwrap(), one);
    }

    #[test]
    fn shift_rejects_bad_hypotheses() {
        let a2 = RealizedModule::symmetric(2, win(0, 3)).unwrap();
        let x12 = a2.vector_from_slots(0, vec![vec![1, 2]]).unwrap();
        // E(1,2) x1 x2 = x1^2 ≠ 0
        assert!(matches!(shift_left(&x12, &a2, 1, 2), Err(Error::HypothesisViolated(_))));
        let x11 = a2.vector_from_slots(0, vec![vec![1, 1]]).unwrap();
        let narrow = RealizedModule::symmetric(2, win(1, 3)).unwrap();
        assert!(shift_left(&narrow.vector_from_slots(0, vec![vec![1, 1]]).unwrap(), &narrow, 1, 2).is_err());
        let _ = x11;
    }

    #[test]
    fn recovery_scalar_examples() {
        let w = |v: &[(i64, i64)]| Weight::from_ints(v.iter().copied());
        assert_eq!(shift_recovery_scalar(&w(&[(1, 2)]), 1, 2).unwrap(), BigUint::from(4u32));
        assert_eq!(shift_recovery_scalar(&w(&[(1, 1), (2, 1)]), 1, 2).unwrap(), BigUint::from(1u32));
        assert_eq!(shift_recovery_scalar(&Weight::zero(), 1, 3).unwrap(), BigUint::from(1u32));
        assert!(shift_recovery_scalar(&w(&[(2, 1)]), 1, 2).is_err());
    }

    #[test]
    fn round_trip_on_symmetric_square() {
        let a2 = RealizedModule::symmetric(2, win(0, 3)).unwrap();
        let x11 = a2.vector_from_slots(0, vec![vec![1, 1]]).unwrap();
        let cert = certify_shift(&x11, &a2, 1, 2).unwrap();
        assert!(cert.recovers && cert.conclusion_holds);
        assert_eq!(cert.alpha, BigUint::from(4u32));
    }

    #[test]
    fn decomposition_examples() {
        let t = RealizedModule::tensor(vec![FactorSpec::Symmetric(1); 2], win(0, 4)).unwrap();
        let d = decompose_completely(&t).unwrap();
        assert_eq!(d.multiset(), BTreeMap::from([(p("[2]"), 1), (p("[1,1]"), 1)]));

        let two: RealizedModule = "Wedge(1) (+) Wedge(1) @ window[0,3]".parse().unwrap();
        assert_eq!(decompose_completely(&two).unwrap().multiset(), BTreeMap::from([(p("[1]"), 2)]));

        let triv = RealizedModule::trivial(win(0, 3));
        let d = decompose_completely(&triv).unwrap();
        assert_eq!(d.multiset(), BTreeMap::from([(Partition::empty(), 1)]));
    }

    #[test]
    fn decomposition_reports_a_too_small_window() {
        let l3 = RealizedModule::exterior(3, win(0, 3)).unwrap();
        assert!(matches!(decompose_completely(&l3), Err(Error::WindowTooSmall(_))));
        let l3 = RealizedModule::exterior(3, win(0, 5)).unwrap();
        assert_eq!(decompose_completely(&l3).unwrap().multiset(), BTreeMap::from([(p("[1,1,1]"), 1)]));
    }

    #[test]
    fn sub_weights_enumerates_splits() {
        let alpha = Weight::from_ints([(1, 2), (2, 1)]);
        assert_eq!(sub_weights(&alpha, 1).len(), 2);
        assert_eq!(sub_weights(&alpha, 3).len(), 1);
        assert_eq!(sub_weights(&alpha, 4).len(), 0);
    }
}
