//! Littlewood–Richardson coefficients, Kostka numbers and `gl_n` dimensions.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::SupportSet;
use crate::error::{Error, Result};
use crate::weights::{Partition, Weight};

/// Memo table for [`lr_coefficient`]; one per call unless shared read-only.
#[derive(Debug, Default)]
pub struct LrCache {
    memo: HashMap<(Partition, Partition, Partition), u64>,
}

impl LrCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn coefficient(&mut self, lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
        let key = (lambda.clone(), mu.clone(), nu.clone());
        if let Some(&c) = self.memo.get(&key) {
            return c;
        }
        let c = count_lr_tableaux(lambda, mu, nu);
        self.memo.insert(key, c);
        c
    }
}

/// Number of LR tableaux of shape `nu / lambda` and content `mu`: semistandard
/// fillings whose reverse reading word (rows right to left, top to bottom)
/// is a lattice word.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    LrCache::new().coefficient(lambda, mu, nu)
}

fn count_lr_tableaux(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if !nu.contains(lambda) || nu.size() != lambda.size() + mu.size() {
        return 0;
    }
    if mu.is_empty() {
        return 1;
    }
    // cells in reading order: row by row, right to left
    let mut cells = Vec::new();
    for i in 0..nu.len() {
        for j in (lambda.row(i)..nu.row(i)).rev() {
            cells.push((i, j as usize));
        }
    }
    let mut grid: Vec<Vec<u32>> = (0..nu.len()).map(|i| vec![0; nu.row(i) as usize]).collect();
    let mut counts = vec![0u32; mu.len() + 1];
    fill(&cells, 0, lambda, mu, &mut grid, &mut counts)
}

fn fill(
    cells: &[(usize, usize)],
    k: usize,
    lambda: &Partition,
    mu: &Partition,
    grid: &mut Vec<Vec<u32>>,
    counts: &mut Vec<u32>,
) -> u64 {
    if k == cells.len() {
        return u64::from((1..=mu.len()).all(|e| counts[e] == mu.row(e - 1)));
    }
    let (i, j) = cells[k];
    // weakly increasing along the row: the cell to the right is already filled
    let max_entry = if (j + 1) < grid[i].len() && (j + 1) as u32 >= lambda.row(i) {
        grid[i][j + 1]
    } else {
        mu.len() as u32
    };
    // strictly increasing down the column
    let min_entry = if i > 0 && j as u32 >= lambda.row(i - 1) {
        grid[i - 1][j] + 1
    } else {
        1
    };
    let mut total = 0;
    for e in min_entry..=max_entry {
        let idx = e as usize;
        if counts[idx] >= mu.row(idx - 1) {
            continue;
        }
        if idx > 1 && counts[idx] + 1 > counts[idx - 1] {
            continue;
        }
        counts[idx] += 1;
        grid[i][j] = e;
        total += fill(cells, k + 1, lambda, mu, grid, counts);
        grid[i][j] = 0;
        counts[idx] -= 1;
    }
    total
}

/// Every `nu ⊇ rho` with `nu / rho` a horizontal strip of `k` boxes.
pub fn horizontal_strips(rho: &Partition, k: u32) -> Vec<Partition> {
    fn go(rho: &Partition, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if i == rho.len() + 1 {
            if left == 0 {
                out.push(Partition::from_padded(cur.clone()).expect("interlacing keeps order"));
            }
            return;
        }
        let base = rho.row(i);
        let cap = if i == 0 { base + left } else { rho.row(i - 1) };
        for row in base..=cap.min(base + left) {
            cur.push(row);
            go(rho, i + 1, left - (row - base), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(rho, 0, k, &mut Vec::new(), &mut out);
    out
}

fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    fn go(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, i64)>) {
        if rest.is_empty() {
            let mut inv = 0;
            for a in 0..cur.len() {
                for b in a + 1..cur.len() {
                    if cur[a] > cur[b] {
                        inv += 1;
                    }
                }
            }
            out.push((cur.clone(), if inv % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for k in 0..rest.len() {
            let x = rest.remove(k);
            cur.push(x);
            go(rest, cur, out);
            cur.pop();
            rest.insert(k, x);
        }
    }
    let mut out = Vec::new();
    go(&mut (0..n).collect(), &mut Vec::new(), &mut out);
    out
}

/// `s_lambda · s_mu` expanded through the Jacobi–Trudi determinant of
/// `s_mu` and repeated Pieri rules. Independent of the tableau count.
pub fn pieri_product(lambda: &Partition, mu: &Partition) -> BTreeMap<Partition, i64> {
    let l = mu.len();
    let mut total: BTreeMap<Partition, i64> = BTreeMap::new();
    for (perm, sign) in permutations(l) {
        let mut degrees = Vec::with_capacity(l);
        let mut valid = true;
        for (i, &s) in perm.iter().enumerate() {
            let d = mu.row(i) as i64 - i as i64 + s as i64;
            if d < 0 {
                valid = false;
                break;
            }
            degrees.push(d as u32);
        }
        if !valid {
            continue;
        }
        let mut current: BTreeMap<Partition, i64> = BTreeMap::new();
        current.insert(lambda.clone(), sign);
        for d in degrees {
            let mut next = BTreeMap::new();
            for (rho, c) in current {
                for nu in horizontal_strips(&rho, d) {
                    *next.entry(nu).or_insert(0) += c;
                }
            }
            current = next;
        }
        for (nu, c) in current {
            *total.entry(nu).or_insert(0) += c;
        }
    }
    total.retain(|_, c| *c != 0);
    total
}

/// Dimension of the irreducible `gl_n`-module of highest weight `nu`, by the
/// hook-content formula.
pub fn gl_dim(nu: &Partition, n: usize) -> Result<u128> {
    if nu.len() > n {
        return Err(Error::RankTooSmall { len: nu.len(), rank: n });
    }
    let conj = nu.conjugate();
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..nu.len() {
        for j in 0..nu.row(i) as usize {
            let content = n as i64 + j as i64 - i as i64;
            let hook = (nu.row(i) as usize - j) + (conj.row(j) as usize - i) - 1;
            num *= content as u128;
            den *= hook as u128;
            let g = gcd(num, den);
            num /= g;
            den /= g;
        }
    }
    debug_assert_eq!(den, 1);
    Ok(num / den)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Kostka numbers `K_{nu, alpha}`: semistandard tableaux of shape `nu` and
/// content `alpha`. Symmetric in `alpha`, which is sorted before lookup.
#[derive(Debug, Default)]
pub struct KostkaTable {
    memo: HashMap<(Partition, Vec<u32>), u128>,
}

impl KostkaTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, nu: &Partition, content: &[u32]) -> u128 {
        let mut alpha: Vec<u32> = content.iter().copied().filter(|&a| a > 0).collect();
        alpha.sort_unstable_by(|a, b| b.cmp(a));
        self.sorted(nu, alpha)
    }

    fn sorted(&mut self, nu: &Partition, alpha: Vec<u32>) -> u128 {
        if alpha.iter().sum::<u32>() != nu.size() {
            return 0;
        }
        if alpha.is_empty() {
            return 1;
        }
        let key = (nu.clone(), alpha.clone());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        // the largest entry occupies a horizontal strip of size alpha.last()
        let mut head = alpha.clone();
        let last = head.pop().unwrap();
        let mut total = 0;
        for rho in removable_horizontal_strips(nu, last) {
            total += self.sorted(&rho, head.clone());
        }
        self.memo.insert(key, total);
        total
    }

    /// Weight multiplicities of the `gl`-irreducible `nu` on the positions
    /// of `s`: the Schur polynomial `s_nu` restricted to `|s|` variables.
    pub fn character(&mut self, nu: &Partition, s: &SupportSet) -> BTreeMap<Weight, u128> {
        let mut out = BTreeMap::new();
        for w in crate::realized::compositions_on(s, nu.size()) {
            let content: Vec<u32> = s
                .indices()
                .iter()
                .map(|&i| crate::scalar::to_i64(&w.get(i)).unwrap_or(0) as u32)
                .collect();
            let k = self.get(nu, &content);
            if k > 0 {
                out.insert(w, k);
            }
        }
        out
    }
}

/// Every `rho ⊆ nu` such that `nu / rho` is a horizontal strip of `k` boxes.
pub fn removable_horizontal_strips(nu: &Partition, k: u32) -> Vec<Partition> {
    fn go(nu: &Partition, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if i == nu.len() {
            if left == 0 {
                out.push(Partition::from_padded(cur.clone()).expect("interlacing keeps order"));
            }
            return;
        }
        let top = nu.row(i);
        let floor = nu.row(i + 1);
        for row in (floor..=top).rev() {
            let used = top - row;
            if used > left {
                break;
            }
            cur.push(row);
            go(nu, i + 1, left - used, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(nu, 0, k, &mut Vec::new(), &mut out);
    out
}

/// `L(lambda) ⊗ L(mu)` for `gl_rank`, via LR coefficients.
pub fn tensor_at_rank(lambda: &Partition, mu: &Partition, rank: usize) -> BTreeMap<Partition, u64> {
    let mut cache = LrCache::new();
    let mut out = BTreeMap::new();
    for nu in Partition::all_of(lambda.size() + mu.size(), rank) {
        if !nu.contains(lambda) || !nu.contains(mu) {
            continue;
        }
        let c = cache.coefficient(lambda, mu, &nu);
        if c > 0 {
            out.insert(nu, c);
        }
    }
    out
}

/// Stable decomposition of a tensor product of two irreducibles of the
/// infinite-rank algebra, labelled by partitions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TensorResult {
    pub summands: BTreeMap<Partition, u64>,
    pub support_used: SupportSet,
    pub stabilized_at: usize,
}

/// Computes `⊕ c^nu_{lambda mu} L(nu)` at rank `len(lambda) + len(mu)`,
/// which no summand can exceed, and confirms the answer one rank higher.
pub fn stable_tensor(lambda: &Partition, mu: &Partition) -> Result<TensorResult> {
    let rank = (lambda.len() + mu.len()).max(1);
    let summands = tensor_at_rank(lambda, mu, rank);
    let check = tensor_at_rank(lambda, mu, rank + 1);
    if check != summands {
        return Err(Error::StabilizationFailure(format!(
            "{lambda} ⊗ {mu} differs between rank {rank} and {}",
            rank + 1
        )));
    }
    Ok(TensorResult {
        summands,
        support_used: SupportSet::interval(1, rank as i64)?,
        stabilized_at: rank,
    })
}
