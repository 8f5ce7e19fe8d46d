//! Brute-force ground truth for small n.
//!
//! Enumerates the whole set of k-regular n×n matrices (rows in any order),
//! groups it into orbits under independent row and column permutations, and
//! checks the counts and the canonical-element test against those orbits.
//! Nothing here uses the enumeration searches except `verify_counts`, which
//! compares against them.

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigUint;
use serde::Serialize;

use crate::bitcore::{k_subset_masks, BitMask};
use crate::enumerate::count_canonical_pruned;
use crate::error::{invalid, Result};
use crate::formulas::{BigCount, Route};
use crate::matrix::RowTuple;

/// Largest n the oracle will enumerate.
pub const MAX_ORACLE_N: u32 = 6;

fn check_params(n: u32, k: u32) -> Result<()> {
    if n == 0 || n > MAX_ORACLE_N {
        return Err(invalid!("oracle supports 1 <= n <= {MAX_ORACLE_N}, got n = {n}"));
    }
    if k == 0 || k > n {
        return Err(invalid!("k = {k} outside 1..={n}"));
    }
    Ok(())
}

/// Every k-regular n×n matrix, in lexicographic order of row tuples.
pub fn enumerate_lambda_set(n: u32, k: u32) -> Result<Vec<RowTuple>> {
    check_params(n, k)?;
    let pool = k_subset_masks(n, k)?;
    let mut out = Vec::new();
    let mut rows = Vec::with_capacity(n as usize);
    let mut colsum = vec![0u32; n as usize];
    fill(pool.masks(), n, k, &mut rows, &mut colsum, &mut out);
    Ok(out)
}

fn fill(
    pool: &[BitMask],
    n: u32,
    k: u32,
    rows: &mut Vec<BitMask>,
    colsum: &mut [u32],
    out: &mut Vec<RowTuple>,
) {
    if rows.len() == n as usize {
        if colsum.iter().all(|&s| s == k) {
            out.push(RowTuple::from_rows_unchecked(n, rows.clone()));
        }
        return;
    }
    for &x in pool {
        if (0..n as usize).any(|b| colsum[b] + ((x >> b) & 1) as u32 > k) {
            continue;
        }
        for (b, s) in colsum.iter_mut().enumerate() {
            *s += ((x >> b) & 1) as u32;
        }
        rows.push(x);
        fill(pool, n, k, rows, colsum, out);
        rows.pop();
        for (b, s) in colsum.iter_mut().enumerate() {
            *s -= ((x >> b) & 1) as u32;
        }
    }
}

/// The set partitioned into orbits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    pub n: u32,
    pub k: u32,
    /// Each class sorted; classes ordered by their smallest member.
    pub classes: Vec<Vec<RowTuple>>,
    pub total: usize,
}

impl OrbitPartition {
    fn from_classes(n: u32, k: u32, mut classes: Vec<Vec<RowTuple>>) -> Self {
        for c in &mut classes {
            c.sort();
        }
        classes.sort_by(|a, b| a[0].cmp(&b[0]));
        let total = classes.iter().map(Vec::len).sum();
        OrbitPartition { n, k, classes, total }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

fn swap_adjacent_columns(x: BitMask, bit: u32) -> BitMask {
    let lo = (x >> bit) & 1;
    let hi = (x >> (bit + 1)) & 1;
    (x & !(0b11 << bit)) | (lo << (bit + 1)) | (hi << bit)
}

/// Orbits by breadth-first closure under adjacent row swaps and adjacent
/// column swaps, which generate the full permutation group on each side.
pub fn orbit_partition(n: u32, k: u32) -> Result<OrbitPartition> {
    let members = enumerate_lambda_set(n, k)?;
    let mut seen: HashSet<Vec<BitMask>> = HashSet::with_capacity(members.len());
    let mut classes = Vec::new();
    for start in &members {
        if seen.contains(start.rows()) {
            continue;
        }
        let mut class = Vec::new();
        let mut queue = VecDeque::new();
        seen.insert(start.rows().to_vec());
        queue.push_back(start.rows().to_vec());
        while let Some(rows) = queue.pop_front() {
            for i in 0..n as usize - 1 {
                let mut r = rows.clone();
                r.swap(i, i + 1);
                if seen.insert(r.clone()) {
                    queue.push_back(r);
                }
                let c: Vec<BitMask> = rows.iter().map(|&x| swap_adjacent_columns(x, i as u32)).collect();
                if seen.insert(c.clone()) {
                    queue.push_back(c);
                }
            }
            class.push(RowTuple::from_rows_unchecked(n, rows));
        }
        classes.push(class);
    }
    Ok(OrbitPartition::from_classes(n, k, classes))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Smallest row tuple reachable from `m` by any row and column permutation.
pub fn orbit_min_key(m: &RowTuple, column_perms: &[Vec<usize>]) -> Vec<BitMask> {
    column_perms
        .iter()
        .map(|p| {
            // the smallest row arrangement is the sorted one
            let mut rows = m.permute_columns(p).into_rows();
            rows.sort_unstable();
            rows
        })
        .min()
        .expect("at least the identity permutation")
}

/// Orbits by bucketing every member under its orbit-minimum key. Independent
/// of the closure in [`orbit_partition`].
pub fn orbit_partition_by_key(n: u32, k: u32) -> Result<OrbitPartition> {
    let members = enumerate_lambda_set(n, k)?;
    let perms = permutations(n as usize);
    let mut buckets: HashMap<Vec<BitMask>, Vec<RowTuple>> = HashMap::new();
    for m in members {
        buckets.entry(orbit_min_key(&m, &perms)).or_default().push(m);
    }
    Ok(OrbitPartition::from_classes(n, k, buckets.into_values().collect()))
}

/// A class that does not contain exactly one canonical element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Position of the class in the partition.
    pub class_index: usize,
    pub class_size: usize,
    /// Smallest member of the class.
    pub representative: Vec<BitMask>,
    /// Members passing the canonical-element test.
    pub canonical_members: Vec<Vec<BitMask>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniquenessReport {
    pub n: u32,
    pub k: u32,
    pub classes: usize,
    pub holds: bool,
    pub witnesses: Vec<Witness>,
}

/// Checks that every orbit holds exactly one canonical element.
pub fn verify_canonical_uniqueness(n: u32, k: u32) -> Result<UniquenessReport> {
    let partition = orbit_partition(n, k)?;
    Ok(uniqueness_of(&partition))
}

fn uniqueness_of(partition: &OrbitPartition) -> UniquenessReport {
    let (n, k) = (partition.n, partition.k);
    let witnesses: Vec<Witness> = partition
        .classes
        .iter()
        .enumerate()
        .filter_map(|(i, class)| {
            let canon: Vec<Vec<BitMask>> = class
                .iter()
                .filter(|m| m.is_canonical(k))
                .map(|m| m.rows().to_vec())
                .collect();
            (canon.len() != 1).then(|| Witness {
                class_index: i,
                class_size: class.len(),
                representative: class[0].rows().to_vec(),
                canonical_members: canon,
            })
        })
        .collect();
    UniquenessReport {
        n,
        k,
        classes: partition.len(),
        holds: witnesses.is_empty(),
        witnesses,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountReport {
    pub n: u32,
    pub k: u32,
    /// Size of the enumerated set.
    pub lambda_oracle: u64,
    /// λ(n, k) from the formulas, when one exists for k.
    #[serde(serialize_with = "opt_decimal")]
    pub lambda_formula: Option<BigCount>,
    /// Number of orbits.
    pub mu_oracle: u64,
    /// Canonical elements found by the pruned search.
    pub mu_enumerated: u64,
}

fn opt_decimal<S: serde::Serializer>(v: &Option<BigCount>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(b) => s.serialize_str(&b.to_str_radix(10)),
        None => s.serialize_none(),
    }
}

impl CountReport {
    pub fn lambda_ok(&self) -> bool {
        self.lambda_formula
            .as_ref()
            .is_none_or(|f| *f == BigUint::from(self.lambda_oracle))
    }

    pub fn mu_ok(&self) -> bool {
        self.mu_oracle == self.mu_enumerated
    }

    pub fn holds(&self) -> bool {
        self.lambda_ok() && self.mu_ok()
    }
}

/// Compares the oracle's set size with the formula value (k ≤ 3) and the
/// oracle's orbit count with the number of canonical elements.
pub fn verify_counts(n: u32, k: u32) -> Result<CountReport> {
    let partition = orbit_partition(n, k)?;
    counts_of(&partition)
}

fn counts_of(partition: &OrbitPartition) -> Result<CountReport> {
    let (n, k) = (partition.n, partition.k);
    let lambda_formula = match Route::for_k(k).first() {
        Some(route) => Some(route.evaluate(n)?),
        None => None,
    };
    Ok(CountReport {
        n,
        k,
        lambda_oracle: partition.total as u64,
        lambda_formula,
        mu_oracle: partition.len() as u64,
        mu_enumerated: count_canonical_pruned(n, k)?.mu,
    })
}

/// Both checks from a single orbit computation.
pub fn verify(n: u32, k: u32) -> Result<(CountReport, UniquenessReport)> {
    let partition = orbit_partition(n, k)?;
    Ok((counts_of(&partition)?, uniqueness_of(&partition)))
}
