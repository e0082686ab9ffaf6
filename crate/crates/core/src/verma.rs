//! Generalized Verma characters, irreducible modules `L(S, λ)` realized
//! inside tensor products of exterior powers, and tests on them.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::algebra::{MatrixUnit, SupportSet, Window};
use crate::error::{Error, Result};
use crate::realized::{FactorSpec, ModuleVector, RealizedModule, WindowedSpan};
use crate::singular::{local_nilpotency, singular_vectors_in, ModuleView};
use crate::weights::{is_dominant, to_partition, NegativeRootCone, Partition, Relabeling, Weight};

/// Weight multiplicities of `M(S, λ)` as a function of the offset
/// `δ ∈ Q_−(S)`; lowering operators are limited to a window.
#[derive(Debug, Clone)]
pub struct VermaCharacter {
    base_weight: Weight,
    support: SupportSet,
    window: Window,
    cone: NegativeRootCone,
}

impl VermaCharacter {
    pub fn new(base_weight: Weight, support: SupportSet, window: Window) -> Result<Self> {
        if !base_weight.support_within(&support) {
            return Err(Error::Precondition(format!(
                "weight {base_weight} is not supported in {support}"
            )));
        }
        if !support.is_subset_of(&window.as_support()) {
            return Err(Error::WindowTooSmall(format!("window {window} misses part of {support}")));
        }
        Ok(Self {
            cone: NegativeRootCone::new(support.clone()),
            base_weight,
            support,
            window,
        })
    }

    pub fn base_weight(&self) -> &Weight {
        &self.base_weight
    }

    pub fn support(&self) -> &SupportSet {
        &self.support
    }

    fn outside(&self) -> Vec<i64> {
        self.window.indices().filter(|&p| !self.support.contains(p)).collect()
    }

    /// `dim M(S,λ)_{λ+δ}` with `δ` outside the window counted as zero.
    pub fn dim_at(&self, delta: &Weight) -> u128 {
        if delta.support().iter().any(|&i| !self.window.contains(i)) {
            return 0;
        }
        self.cone.partition_count(delta, &self.outside())
    }

    /// Every offset reachable with at most `depth` negative roots, with its
    /// multiplicity.
    pub fn graded_dims(&self, depth: u32) -> BTreeMap<Weight, u128> {
        let mut roots = self.cone.outer_roots(&self.outside());
        roots.extend(self.cone.inner_roots());
        let mut seen: BTreeSet<Weight> = BTreeSet::from([Weight::zero()]);
        let mut frontier = vec![Weight::zero()];
        for _ in 0..depth {
            let mut next = Vec::new();
            for d in &frontier {
                for r in &roots {
                    let w = &(d + &Weight::epsilon(r.plus)) - &Weight::epsilon(r.minus);
                    if seen.insert(w.clone()) {
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        seen.into_iter().map(|d| {
            let n = self.dim_at(&d);
            (d, n)
        }).collect()
    }
}

/// `dim M(S,λ)_{λ+δ}`: the number of monomials in the abelian lowering
/// part `E(p,i)` (`p` in the window outside `S`, `i ∈ S`) times the
/// `gl_S` Verma monomials in `E(i,j)`, `i > j`, of total weight `δ`.
pub fn verma_weight_dim(lambda: &Weight, s: &SupportSet, delta: &Weight, window: Window) -> Result<u128> {
    Ok(VermaCharacter::new(lambda.clone(), s.clone(), window)?.dim_at(delta))
}

/// `L(S, λ)` as the cyclic span of `w_λ` in `(Λ^1)^{⊗(λ_1-λ_2)} ⊗ ⋯ ⊗ (Λ^n)^{⊗λ_n}`.
#[derive(Debug, Clone)]
pub struct Irreducible {
    pub module: RealizedModule,
    pub highest: ModuleVector,
    pub weight: Weight,
    pub support: SupportSet,
    pub partition: Partition,
}

impl Irreducible {
    pub fn span(&self) -> Result<WindowedSpan> {
        WindowedSpan::generate(&self.module, std::slice::from_ref(&self.highest))
    }

    /// The span as an input to the decomposition engine; no summand has more
    /// rows than `λ` itself.
    pub fn view(&self) -> Result<ModuleView> {
        Ok(ModuleView::Span {
            span: self.span()?,
            length_bound: self.partition.len() as u32,
            seed: self.highest.indices(),
        })
    }
}

fn require_interval(s: &SupportSet) -> Result<()> {
    if s.is_interval() {
        Ok(())
    } else {
        Err(Error::NotInterval(s.to_string()))
    }
}

/// `w_λ = w_1^{⊗(λ_1-λ_2)} ⊗ ⋯ ⊗ w_n^{⊗λ_n}` with `w_k = v_r ∧ ⋯ ∧ v_{r+k-1}`
/// for `S = {r, ..., n}`.
pub fn build_irreducible(lambda: &Weight, s: &SupportSet, window: Window) -> Result<Irreducible> {
    let partition = to_partition(lambda, s)?;
    require_interval(s)?;
    if !window.strictly_contains(s) {
        return Err(Error::WindowTooSmall(format!(
            "window {window} needs a spare index on each side of {s}"
        )));
    }
    let r = s.min();
    let mut factors = Vec::new();
    let mut slots = Vec::new();
    for k in 1..=partition.len() {
        let copies = partition.row(k - 1) - partition.row(k);
        for _ in 0..copies {
            factors.push(FactorSpec::Exterior(k as u32));
            slots.push((r..r + k as i64).collect::<Vec<_>>());
        }
    }
    let module = RealizedModule::tensor(factors, window)?;
    let highest = module.vector_from_slots(0, slots)?;
    Ok(Irreducible {
        module,
        highest,
        weight: lambda.clone(),
        support: s.clone(),
        partition,
    })
}

/// `L(S, λ)` is integrable exactly for dominant `λ`.
pub fn is_integrable(lambda: &Weight, s: &SupportSet) -> bool {
    is_dominant(lambda, s)
}

/// Local nilpotency of every `E(j,j±1)` inside the window on the realized
/// `L(S, λ)`; exponents never exceed `level + 1`.
#[derive(Debug, Clone, Serialize)]
pub struct IntegrabilityCertificate {
    pub level: u32,
    /// `(unit, minimal k with E^k = 0 on the span)`.
    pub exponents: Vec<(MatrixUnit, u32)>,
}

pub fn certify_integrability(lambda: &Weight, s: &SupportSet, window: Window) -> Result<IntegrabilityCertificate> {
    let irr = build_irreducible(lambda, s, window)?;
    let vectors = irr.span()?.vectors();
    let level = irr.partition.size();
    let mut exponents = Vec::new();
    for j in window.indices() {
        for k in [j - 1, j + 1] {
            if !window.contains(k) {
                continue;
            }
            let e = MatrixUnit::new(j, k);
            match local_nilpotency(&irr.module, &vectors, e, level + 1)? {
                Some(d) => exponents.push((e, d)),
                None => {
                    return Err(Error::HypothesisViolated(format!(
                        "{e} is not nilpotent of order ≤ {} on the span",
                        level + 1
                    )))
                }
            }
        }
    }
    Ok(IntegrabilityCertificate { level, exponents })
}

/// Generators of the maximal submodule of `M(S, λ)` for `S = {r..n}`:
/// `E(n+1,n)^{λ_n+1}`, `E(r-1,r)^{λ_r+1}` and `E(i+1,i)^{λ_i-λ_{i+1}+1}`.
pub fn maximal_submodule_generators(lambda: &Weight, s: &SupportSet) -> Result<Vec<(MatrixUnit, u32)>> {
    let p = to_partition(lambda, s)?;
    require_interval(s)?;
    let (r, n) = (s.min(), s.max());
    let len = s.len();
    let mut out = vec![
        (MatrixUnit::new(n + 1, n), p.row(len - 1) + 1),
        (MatrixUnit::new(r - 1, r), p.row(0) + 1),
    ];
    for i in 0..len - 1 {
        let e = MatrixUnit::new(r + i as i64 + 1, r + i as i64);
        out.push((e, p.row(i) - p.row(i + 1) + 1));
    }
    Ok(out)
}

#[derive(Debug, Clone, Serialize)]
pub struct AnnihilationCertificate {
    pub unit: MatrixUnit,
    pub listed: u32,
    /// Smallest `k` with `E^k w_λ = 0`, if it is at most `listed`.
    pub minimal: Option<u32>,
}

impl AnnihilationCertificate {
    pub fn holds(&self) -> bool {
        self.minimal.is_some_and(|k| k <= self.listed)
    }
}

/// Applies each listed generator to the realized highest-weight vector.
pub fn certify_annihilation(lambda: &Weight, s: &SupportSet, window: Window) -> Result<Vec<AnnihilationCertificate>> {
    let irr = build_irreducible(lambda, s, window)?;
    let mut out = Vec::new();
    for (unit, listed) in maximal_submodule_generators(lambda, s)? {
        let mut cur = irr.highest.clone();
        let mut minimal = None;
        for k in 0..=listed {
            if cur.is_zero() {
                minimal = Some(k);
                break;
            }
            cur = irr.module.act_unit(unit, &cur)?;
        }
        out.push(AnnihilationCertificate { unit, listed, minimal });
    }
    Ok(out)
}

/// Places `λ` on an interval starting at `min(S)` when `S` has gaps.
pub fn relabel_onto_interval(lambda: &Weight, s: &SupportSet) -> Result<(Weight, SupportSet)> {
    if s.is_interval() {
        return Ok((lambda.clone(), s.clone()));
    }
    let relabel = Relabeling::onto_interval(s, s.min());
    Ok((relabel.apply(lambda)?, relabel.target()))
}

/// Highest weights of the `S̄`-singular vectors in `Ω_S̄` of a realized
/// `L(S, λ)`.
pub fn omega_highest_weights(lambda: &Weight, s: &SupportSet, sbar: &SupportSet, window: Window) -> Result<Vec<Weight>> {
    let (lambda, s) = relabel_onto_interval(lambda, s)?;
    let irr = build_irreducible(&lambda, &s, window)?;
    Ok(singular_vectors_in(&irr.view()?, sbar)?
        .into_iter()
        .map(|(w, _)| w)
        .collect())
}

/// `L(S_1, λ_1) ≅ L(S_2, λ_2)`, decided by comparing the highest weights
/// of `Ω_S̄` for the covering interval `S̄` of `S_1 ∪ S_2`.
pub fn iso_check(s1: &SupportSet, l1: &Weight, s2: &SupportSet, l2: &Weight) -> Result<bool> {
    let sbar = &s1.union(s2).hull();
    let window = Window::new(sbar.min() - 1, sbar.max() + 1)?;
    iso_check_in(s1, l1, s2, l2, window)
}

pub fn iso_check_in(s1: &SupportSet, l1: &Weight, s2: &SupportSet, l2: &Weight, window: Window) -> Result<bool> {
    let sbar = s1.union(s2).hull();
    if !window.strictly_contains(&sbar) {
        return Err(Error::WindowTooSmall(format!(
            "window {window} needs a spare index on each side of {sbar}"
        )));
    }
    let a = omega_highest_weights(l1, s1, &sbar, window)?;
    let b = omega_highest_weights(l2, s2, &sbar, window)?;
    Ok(a.len() == 1 && a == b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn win(lo: i64, hi: i64) -> Window {
        Window::new(lo, hi).unwrap()
    }

    fn s(v: &[i64]) -> SupportSet {
        SupportSet::new(v.to_vec()).unwrap()
    }

    fn w(lit: &str) -> Weight {
        lit.parse().unwrap()
    }

    #[test]
    fn verma_dim_examples() {
        assert_eq!(verma_weight_dim(&w("e(1)"), &s(&[1]), &Weight::zero(), win(0, 2)).unwrap(), 1);
        assert_eq!(verma_weight_dim(&w("e(1)"), &s(&[1]), &w("e(0) - e(1)"), win(0, 2)).unwrap(), 1);
        assert_eq!(verma_weight_dim(&w("2*e(1)"), &s(&[1, 2]), &w("e(2) - e(1)"), win(1, 2)).unwrap(), 1);
        // only E(0,1) E(2,1)
        assert_eq!(verma_weight_dim(&w("2*e(1)"), &s(&[1]), &w("e(0) + e(2) - 2*e(1)"), win(0, 2)).unwrap(), 1);
        let ch = VermaCharacter::new(w("e(1)"), s(&[1]), win(0, 2)).unwrap();
        let g = ch.graded_dims(1);
        assert_eq!(g[&Weight::zero()], 1);
        assert_eq!(g.len(), 3);
    }

    #[test]
    fn build_irreducible_examples() {
        let irr = build_irreducible(&w("e(1)"), &s(&[1]), win(0, 2)).unwrap();
        assert_eq!(irr.module.to_string(), "Wedge(1) @ window[0,2]");
        assert_eq!(irr.span().unwrap().dim(), 3);

        let irr = build_irreducible(&w("e(1) + e(2)"), &s(&[1, 2]), win(0, 3)).unwrap();
        assert_eq!(irr.module.format_vector(&irr.highest), "v1^v2");

        let irr = build_irreducible(&w("2*e(1)"), &s(&[1]), win(0, 2)).unwrap();
        let a2 = RealizedModule::symmetric(2, win(0, 2)).unwrap();
        let dims = irr.span().unwrap().dims();
        assert_eq!(dims.len(), a2.windowed_character().len());
        assert!(dims.iter().all(|(k, d)| a2.windowed_character()[k] == *d));

        assert!(matches!(
            build_irreducible(&w("e(2)"), &s(&[1, 2]), win(0, 3)),
            Err(Error::NotDominant { .. })
        ));
        assert!(matches!(
            build_irreducible(&w("e(1)"), &s(&[1, 3]), win(0, 4)),
            Err(Error::NotInterval(_))
        ));
    }

    #[test]
    fn integrability_examples() {
        assert!(is_integrable(&w("2*e(1) + e(2)"), &s(&[1, 2])));
        assert!(!is_integrable(&w("e(2)"), &s(&[1, 2])));
        assert!(!is_integrable(&w("-e(1)"), &s(&[1])));
        let c = certify_integrability(&w("2*e(1) + e(2)"), &s(&[1, 2]), win(0, 3)).unwrap();
        assert!(c.exponents.iter().all(|&(_, d)| d <= c.level + 1));
    }

    #[test]
    fn generator_examples() {
        let e = MatrixUnit::new;
        assert_eq!(
            maximal_submodule_generators(&w("2*e(1)"), &s(&[1])).unwrap(),
            vec![(e(2, 1), 3), (e(0, 1), 3)]
        );
        assert_eq!(
            maximal_submodule_generators(&w("e(1) + e(2)"), &s(&[1, 2])).unwrap(),
            vec![(e(3, 2), 2), (e(0, 1), 2), (e(2, 1), 1)]
        );
        assert!(maximal_submodule_generators(&Weight::zero(), &s(&[1]))
            .unwrap()
            .iter()
            .all(|&(_, k)| k == 1));
        for c in certify_annihilation(&w("e(1) + e(2)"), &s(&[1, 2]), win(0, 3)).unwrap() {
            assert!(c.holds());
            assert_eq!(c.minimal, Some(c.listed));
        }
    }

    #[test]
    fn iso_examples() {
        assert!(iso_check(&s(&[1]), &w("e(1)"), &s(&[5]), &w("e(5)")).unwrap());
        assert!(iso_check(&s(&[1]), &w("2*e(1)"), &s(&[3]), &w("2*e(3)")).unwrap());
        assert!(matches!(
            iso_check(&s(&[1, 2]), &w("2*e(1) + e(2)"), &s(&[1, 2]), &w("e(1) + 2*e(2)")),
            Err(Error::NotDominant { .. })
        ));
        assert!(!iso_check(&s(&[1, 2]), &w("2*e(1) + e(2)"), &s(&[1, 2]), &w("e(1) + e(2)")).unwrap());
        assert!(iso_check(&s(&[1, 3]), &w("e(1) + e(3)"), &s(&[2, 3]), &w("e(2) + e(3)")).unwrap());
    }
}
