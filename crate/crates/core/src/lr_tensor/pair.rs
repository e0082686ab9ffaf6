//! Explicit tensor products `L(S,λ) ⊗ L(S,μ)`: a cyclic vector, the
//! decomposition by singular vectors, and agreement with the
//! Littlewood-Richardson prediction.

use std::collections::BTreeMap;

use crate::algebra::{MatrixUnit, SupportSet, Window};
use crate::error::{Error, Result};
use crate::realized::{ModuleVector, RealizedModule, WindowedSpan};
use crate::singular::{decompose_view, singular_vectors, Decomposition, ModuleView};
use crate::verma::build_irreducible;
use crate::weights::{to_partition, Partition, Relabeling, Weight};

use super::combinatorics::{stable_tensor, TensorResult};

fn killed_by_column(m: &RealizedModule, v: &ModuleVector, i: i64) -> Result<bool> {
    for p in m.window().indices() {
        if !m.act_unit(MatrixUnit::new(p, i), v)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Applies `E(p,i)` with `p > max(S)`, `i ∈ S`, smallest `p` first, until
/// every `E(q,i)` with `i ∈ S` kills the vector. The result is primitive.
pub fn move_off_support(m: &RealizedModule, v: &ModuleVector, s: &SupportSet) -> Result<ModuleVector> {
    let window = m.window();
    let mut cur = v.clone();
    for &i in s.indices() {
        while !killed_by_column(m, &cur, i)? {
            let mut moved = None;
            for p in (s.max() + 1)..=window.hi {
                let next = m.act_unit(MatrixUnit::new(p, i), &cur)?;
                if !next.is_zero() {
                    moved = Some(next);
                    break;
                }
            }
            cur = moved.ok_or_else(|| {
                Error::WindowTooSmall(format!(
                    "no index above {} in window {window} moves index {i} off the support",
                    s.max()
                ))
            })?;
        }
    }
    Ok(cur.primitive())
}

fn unique_singular(m: &RealizedModule, s: &SupportSet) -> Result<ModuleVector> {
    let mut found = singular_vectors(m, s)?;
    if found.len() != 1 {
        return Err(Error::Precondition(format!(
            "{m} has {} singular lines for {s}, expected one",
            found.len()
        )));
    }
    Ok(found.pop().unwrap().1)
}

/// `u ⊗ v'` generating `m1 ⊗ m2`, where `u` is the `S`-singular vector of
/// `m1` and `v'` comes from that of `m2` by [`move_off_support`]. The span of
/// the result under the window units must be the whole windowed tensor
/// product; otherwise the window is reported as too small.
pub fn cyclic_vector(m1: &RealizedModule, s: &SupportSet, m2: &RealizedModule) -> Result<ModuleVector> {
    let u = unique_singular(m1, s)?;
    let v = unique_singular(m2, s)?;
    let shifted = move_off_support(m2, &v, s)?;
    let tensor = m1.tensor_with(m2)?;
    let w = m1.tensor_vectors(&u, m2, &shifted);
    let span = WindowedSpan::generate(&tensor, std::slice::from_ref(&w))?;
    if span.dims() != tensor.windowed_character() {
        return Err(Error::WindowTooSmall(format!(
            "the span of {} has dimension {} of {}",
            tensor.format_vector(&w),
            span.dim(),
            tensor.basis().len()
        )));
    }
    Ok(w)
}

/// Both computations of `L(S,λ) ⊗ L(S,μ)` side by side.
#[derive(Debug, Clone)]
pub struct PairReport {
    pub decomposition: Decomposition,
    pub lr: TensorResult,
    pub window: Window,
    /// `u ⊗ v'` in the tensor of the two ambient modules.
    pub cyclic: ModuleVector,
    pub ambient: RealizedModule,
    pub runs: Vec<(SupportSet, BTreeMap<Partition, u64>)>,
}

/// Window `[r-1, r+L+1]` for `S = {r..}`, `L = max(|S| + len μ, len λ + len μ)`:
/// room for `v'` and for one enlargement beyond the accepted interval.
pub fn pair_window(s: &SupportSet, lambda: &Partition, mu: &Partition) -> Result<Window> {
    let need = (s.len() + mu.len()).max(lambda.len() + mu.len()) as i64;
    Window::new(s.min() - 1, s.min() + need + 1)
}

pub fn decompose_tensor_pair(s: &SupportSet, lambda: &Weight, mu: &Weight) -> Result<Decomposition> {
    Ok(decompose_tensor_pair_report(s, lambda, mu, None)?.decomposition)
}

/// Realizes `L(S,λ)` and `L(S,μ)`, decomposes their tensor product through
/// singular vectors on the interval spanned by `S` and the cyclic vector, and
/// compares with [`stable_tensor`]. `window` overrides [`pair_window`].
pub fn decompose_tensor_pair_report(
    s: &SupportSet,
    lambda: &Weight,
    mu: &Weight,
    window: Option<Window>,
) -> Result<PairReport> {
    let pl = to_partition(lambda, s)?;
    let pm = to_partition(mu, s)?;
    let (s, lambda, mu) = if s.is_interval() {
        (s.clone(), lambda.clone(), mu.clone())
    } else {
        let relabel = Relabeling::onto_interval(s, s.min());
        (relabel.target(), relabel.apply(lambda)?, relabel.apply(mu)?)
    };
    let lr = stable_tensor(&pl, &pm)?;

    let window = match window {
        Some(w) => w,
        None => pair_window(&s, &pl, &pm)?,
    };
    let left = build_irreducible(&lambda, &s, window)?;
    let right = build_irreducible(&mu, &s, window)?;
    let shifted = move_off_support(&right.module, &right.highest, &s)?;
    let cyclic = left.module.tensor_vectors(&left.highest, &right.module, &shifted);
    let mut seed = s.indices().to_vec();
    seed.extend(cyclic.indices());
    let start = SupportSet::new({
        seed.sort_unstable();
        seed.dedup();
        seed
    })?
    .hull();

    let view = ModuleView::tensor(left.view()?, right.view()?);
    let report = decompose_view(&view, Some(start))?;
    let explicit = report.decomposition.multiset();
    if explicit != lr.summands {
        return Err(Error::OracleMismatch(format!(
            "singular vectors give {explicit:?}, Littlewood-Richardson gives {:?}",
            lr.summands
        )));
    }
    Ok(PairReport {
        decomposition: report.decomposition,
        lr,
        window,
        cyclic,
        ambient: view.ambient()?,
        runs: report.runs,
    })
}
