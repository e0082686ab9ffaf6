//! Acceptance suite: ten exact checks, one report line each. Every check is
//! an exact identity; the only tolerances are the wall-clock budgets below.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use glinf::algebra::{MatrixUnit, SupportSet, Window};
use glinf::lr_tensor::{decompose_tensor_pair, gl_dim, lr_coefficient, stable_tensor, tensor_at_rank};
use glinf::realized::{joint_kernel, RealizedModule};
use glinf::singular::{certify_shift, decompose_completely, shift_recovery_scalar};
use glinf::verma::{build_irreducible, certify_annihilation, iso_check};
use glinf::weights::{Partition, Weight};

const UNDER_1S: Duration = Duration::from_secs(1);
const UNDER_10S: Duration = Duration::from_secs(10);
const UNDER_30S: Duration = Duration::from_secs(30);

type Check = Result<String, String>;

fn win(lo: i64, hi: i64) -> Window {
    Window::new(lo, hi).unwrap()
}

fn interval(len: usize) -> SupportSet {
    SupportSet::interval(1, len as i64).unwrap()
}

fn part(v: &[u32]) -> Partition {
    Partition::from_padded(v.to_vec()).unwrap()
}

fn multiset(entries: &[(&[u32], u64)]) -> BTreeMap<Partition, u64> {
    entries.iter().map(|(p, m)| (part(p), *m)).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Partitions with at most `rows` rows and every part at most `max_part`.
fn boxed_partitions(rows: usize, max_part: u32) -> Vec<Partition> {
    fn go(rows: usize, cap: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        out.push(Partition::from_padded(cur.clone()).unwrap());
        if cur.len() == rows {
            return;
        }
        for x in 1..=cap {
            cur.push(x);
            go(rows, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(rows, max_part, &mut Vec::new(), &mut out);
    out
}

fn partitions_up_to(size: u32, rows: usize) -> Vec<Partition> {
    (0..=size).flat_map(|n| Partition::all_of(n, rows)).collect()
}

fn tensor_example() -> Check {
    let s = SupportSet::new(vec![1]).unwrap();
    let e1: Weight = "e(1)".parse().unwrap();
    let got = decompose_tensor_pair(&s, &e1, &e1).map_err(|e| e.to_string())?.multiset();
    let want = multiset(&[(&[2], 1), (&[1, 1], 1)]);
    ensure(got == want, || format!("got {got:?}"))?;
    Ok("A_1 (x) A_1 = [2] + [1,1]".into())
}

fn symmetric_family() -> Check {
    let s = SupportSet::new(vec![1]).unwrap();
    for m in 1..=5u32 {
        for n in 1..=5u32 {
            let l = Weight::from_ints([(1, m as i64)]);
            let r = Weight::from_ints([(1, n as i64)]);
            let got = decompose_tensor_pair(&s, &l, &r)
                .map_err(|e| format!("[{m}] (x) [{n}]: {e}"))?
                .multiset();
            let want: BTreeMap<Partition, u64> =
                (0..=m.min(n)).map(|j| (part(&[m + n - j, j]), 1)).collect();
            ensure(got == want, || format!("[{m}] (x) [{n}]: got {got:?}"))?;
        }
    }
    Ok("25 pairs, summands [m+n-j,j] for 0 <= j <= min(m,n)".into())
}

fn recovery_scalar() -> Check {
    let mut count = 0;
    for len in 1..=3usize {
        let s = interval(len);
        let window = win(0, len as i64 + 1);
        for p in boxed_partitions(len, 3) {
            let lambda = p.to_weight(&s).unwrap();
            let irr = build_irreducible(&lambda, &s, window).map_err(|e| e.to_string())?;
            let cert = certify_shift(&irr.highest, &irr.module, 1, len as i64)
                .map_err(|e| format!("{p:?} on {s}: {e}"))?;
            let alpha = shift_recovery_scalar(&lambda, 1, len as i64).unwrap();
            ensure(cert.recovers && cert.conclusion_holds && cert.alpha == alpha, || {
                format!("{p:?} on {s}: recovers={} conclusion={}", cert.recovers, cert.conclusion_holds)
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} weights, lowering string returns alpha*v"))
}

fn nilpotency_bound() -> Check {
    let mut checks = 0;
    for size in 1..=6i64 {
        let window = win(0, size - 1);
        for d in 1..=4u32 {
            for m in [RealizedModule::symmetric(d, window).unwrap(), RealizedModule::exterior(d, window).unwrap()] {
                for e in window.off_diagonal_units() {
                    let k = m.nilpotency_degree(e).map_err(|e| e.to_string())?;
                    ensure(k <= m.level() + 1, || format!("{m}: {e} has degree {k}"))?;
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} units, degree <= level + 1"))
}

fn level_one() -> Check {
    let one: RealizedModule = "Wedge(1) @ window[0,3]".parse().unwrap();
    let two: RealizedModule = "Wedge(1) (+) Wedge(1) @ window[0,3]".parse().unwrap();
    let d1 = decompose_completely(&one).map_err(|e| e.to_string())?.multiset();
    let d2 = decompose_completely(&two).map_err(|e| e.to_string())?.multiset();
    ensure(d1 == multiset(&[(&[1], 1)]), || format!("Wedge(1): {d1:?}"))?;
    ensure(d2 == multiset(&[(&[1], 2)]), || format!("Wedge(1)+Wedge(1): {d2:?}"))?;
    Ok("1 and 2 copies of [1]".into())
}

fn omega_suite() -> Vec<(SupportSet, Partition)> {
    let mut out = Vec::new();
    for len in 1..=3usize {
        for p in partitions_up_to(4, len) {
            out.push((interval(len), p));
        }
    }
    out
}

fn omega_identification() -> Check {
    let suite = omega_suite();
    for (s, p) in &suite {
        let window = win(0, s.max() + 1);
        let irr = build_irreducible(&p.to_weight(s).unwrap(), s, window).map_err(|e| e.to_string())?;
        let span = irr.span().map_err(|e| e.to_string())?;
        let ops: Vec<MatrixUnit> = window
            .indices()
            .filter(|q| !s.contains(*q))
            .flat_map(|q| window.indices().map(move |r| MatrixUnit::new(r, q)))
            .collect();
        let omega = joint_kernel(&irr.module, &span.vectors(), &ops).map_err(|e| e.to_string())?;
        let want = gl_dim(p, s.len()).unwrap();
        ensure(omega.len() as u128 == want, || {
            format!("{p:?} on {s}: dim Omega = {}, expected {want}", omega.len())
        })?;
    }
    Ok(format!("{} weights, dim Omega_S = gl_|S| dimension", suite.len()))
}

fn submodule_certificates() -> Check {
    let mut count = 0;
    for (s, p) in omega_suite() {
        let window = win(0, s.max() + 1);
        for c in certify_annihilation(&p.to_weight(&s).unwrap(), &s, window).map_err(|e| e.to_string())? {
            ensure(c.holds(), || format!("{p:?} on {s}: E{}^{} does not annihilate", c.unit, c.listed))?;
            count += 1;
        }
    }
    Ok(format!("{count} generator powers annihilate w_lambda"))
}

fn shift_invariance() -> Check {
    for p in [part(&[1]), part(&[2]), part(&[1, 1])] {
        let s = interval(p.len());
        let lambda = p.to_weight(&s).unwrap();
        for c in 1..=4i64 {
            let ok = iso_check(&s, &lambda, &s.shifted(c), &lambda.shifted(c)).map_err(|e| e.to_string())?;
            ensure(ok, || format!("{p:?} shifted by {c}"))?;
        }
    }
    Ok("12 shifted pairs isomorphic".into())
}

fn lr_consistency() -> Check {
    let small = partitions_up_to(4, 4);
    let mut pairs = 0;
    for l in &small {
        for m in &small {
            let nbar = (l.len() + m.len()).max(1);
            let size = l.size() + m.size();
            let targets = Partition::all_of(size, nbar + 1);
            for nu in &targets {
                let c = lr_coefficient(l, m, nu);
                ensure(c == lr_coefficient(m, l, nu), || format!("symmetry {l:?} {m:?} {nu:?}"))?;
                if c > 0 {
                    ensure(nu.contains(l) && nu.contains(m) && nu.len() <= nbar, || {
                        format!("degree {l:?} {m:?} {nu:?}")
                    })?;
                }
            }
            for n in [nbar, nbar + 1] {
                let lhs = gl_dim(l, n).unwrap() * gl_dim(m, n).unwrap();
                let rhs: u128 = targets
                    .iter()
                    .filter(|nu| nu.len() <= n)
                    .map(|nu| lr_coefficient(l, m, nu) as u128 * gl_dim(nu, n).unwrap())
                    .sum();
                ensure(lhs == rhs, || format!("dimension {l:?} {m:?} rank {n}: {lhs} vs {rhs}"))?;
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs: symmetry, degree, dimension"))
}

fn stabilization() -> Check {
    let small = partitions_up_to(4, 4);
    for l in &small {
        for m in &small {
            let nbar = (l.len() + m.len()).max(1);
            let at = tensor_at_rank(l, m, nbar);
            let later = tensor_at_rank(l, m, nbar + 2);
            let stable = stable_tensor(l, m).map_err(|e| e.to_string())?;
            ensure(at == later && at == stable.summands, || format!("{l:?} (x) {m:?}"))?;
        }
    }
    Ok(format!("{} pairs identical at n and n+2", small.len() * small.len()))
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, Duration, fn() -> Check); 10] = [
        (1, "tensor example", UNDER_1S, tensor_example),
        (2, "symmetric-power tensor family", UNDER_10S, symmetric_family),
        (3, "recovery scalar", UNDER_10S, recovery_scalar),
        (4, "nilpotency bound", UNDER_10S, nilpotency_bound),
        (5, "level-1 structure", UNDER_1S, level_one),
        (6, "Omega identification", UNDER_30S, omega_identification),
        (7, "maximal-submodule certificates", UNDER_30S, submodule_certificates),
        (8, "isomorphism shift-invariance", UNDER_10S, shift_invariance),
        (9, "LR self-consistency", UNDER_10S, lr_consistency),
        (10, "stabilization", UNDER_10S, stabilization),
    ];
    let mut failed = 0;
    for (id, name, budget, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if elapsed < budget => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; took {elapsed:.2?}, budget {budget:?}")),
            Err(e) => ("FAIL", e),
        };
        if status == "FAIL" {
            failed += 1;
        }
        println!("criterion {id:>2} {status} {name} [{:.3}s] {detail}", elapsed.as_secs_f64());
    }
    println!("acceptance: {} of 10 passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
