//! Counting and listing canonical elements.
//!
//! A canonical element is a k-regular matrix whose rows and columns are both
//! nondecreasing as integers (see [`crate::matrix::is_canonical_rows`]). Two
//! searches are provided:
//!
//! * the baseline walks every nondecreasing n-tuple over the mask pool and
//!   tests each one;
//! * the pruned search builds the tuple one row at a time and abandons a
//!   prefix as soon as some column is over-full, can no longer be filled, or
//!   is already known to compare greater than the column to its right.
//!
//! Both emit tuples in lexicographic order of pool indices.

use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::bitcore::{full_mask, k_subset_masks, BitMask, MaskPool};
use crate::error::{invalid, Error, Result};
use crate::formulas::binomial;
use crate::matrix::{is_canonical_rows, RowTuple};

/// Largest dimension accepted by the searches.
pub const MAX_SEARCH_N: u32 = 12;

/// Which search produced a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Baseline,
    Pruned,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Baseline => "baseline",
            Method::Pruned => "pruned",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumerationReport {
    pub n: u32,
    pub k: u32,
    /// Number of canonical elements found.
    pub mu: u64,
    /// Complete n-tuples that were examined.
    pub tuples_visited: u64,
    pub method: Method,
    #[serde(rename = "elapsed_seconds", serialize_with = "as_seconds")]
    pub elapsed: Duration,
}

fn as_seconds<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

/// Toggles for the three pruning rules of the row-by-row search.
///
/// Turning rules off never changes the result, only the amount of work.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PruneRules {
    /// Reject a row that pushes some column past `k` ones.
    pub column_overflow: bool,
    /// Reject a row that leaves some column needing more ones than rows remain.
    pub column_deficit: bool,
    /// Reject a row that makes a column's prefix exceed its right neighbour's.
    pub column_order: bool,
}

impl PruneRules {
    pub const ALL: PruneRules = PruneRules {
        column_overflow: true,
        column_deficit: true,
        column_order: true,
    };
    pub const NONE: PruneRules = PruneRules {
        column_overflow: false,
        column_deficit: false,
        column_order: false,
    };
}

impl Default for PruneRules {
    fn default() -> Self {
        PruneRules::ALL
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub rules: PruneRules,
    /// Worker threads. `1` runs on the calling thread.
    pub jobs: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            rules: PruneRules::ALL,
            jobs: 1,
        }
    }
}

fn check_params(n: u32, k: u32) -> Result<()> {
    if n == 0 || n > MAX_SEARCH_N {
        return Err(invalid!("n = {n} outside 1..={MAX_SEARCH_N}"));
    }
    if k == 0 || k > n {
        return Err(invalid!("k = {k} outside 1..={n}"));
    }
    Ok(())
}

/// Visits every nondecreasing `n`-tuple of pool indices in lexicographic
/// order, handing the visitor the corresponding masks. Returns the number of
/// tuples visited, which is C(c + n - 1, n) for a pool of size c.
pub fn multiset_tuples<F>(pool: &MaskPool, n: usize, visitor: F) -> Result<u64>
where
    F: FnMut(&[BitMask]),
{
    multiset_tuples_over(pool.masks(), n, visitor)
}

pub(crate) fn multiset_tuples_over<F>(pool: &[BitMask], n: usize, mut visitor: F) -> Result<u64>
where
    F: FnMut(&[BitMask]),
{
    if pool.is_empty() {
        return Err(invalid!("empty mask pool"));
    }
    if n == 0 {
        return Err(invalid!("tuple length must be at least 1"));
    }
    let c = pool.len();
    let mut idx = vec![0usize; n];
    let mut tuple = vec![pool[0]; n];
    let mut changed = 0;
    let mut count = 0u64;
    loop {
        // positions after the one that was just advanced restart at its value
        let base = idx[changed];
        for i in changed..n {
            idx[i] = base;
            tuple[i] = pool[base];
        }
        visitor(&tuple);
        count += 1;

        let mut j = n - 1;
        loop {
            idx[j] += 1;
            if idx[j] < c {
                break;
            }
            if j == 0 {
                return Ok(count);
            }
            j -= 1;
        }
        changed = j;
    }
}

/// C(C(n, k) + n - 1, n), the number of tuples the baseline examines.
pub fn predicted_baseline_visits(n: u32, k: u32) -> Result<BigUint> {
    let c = binomial(n as u64, k as u64)?;
    let c: u64 = c
        .try_into()
        .map_err(|_| Error::TooLarge(format!("pool size C({n},{k})")))?;
    binomial(c + n as u64 - 1, n as u64)
}

/// Baseline count: every nondecreasing tuple over the pool is tested.
pub fn count_canonical(n: u32, k: u32) -> Result<EnumerationReport> {
    check_params(n, k)?;
    let start = Instant::now();
    let pool = k_subset_masks(n, k)?;
    let mut mu = 0u64;
    let visited = multiset_tuples(&pool, n as usize, |rows| {
        if is_canonical_rows(rows, n, k) {
            mu += 1;
        }
    })?;
    Ok(EnumerationReport {
        n,
        k,
        mu,
        tuples_visited: visited,
        method: Method::Baseline,
        elapsed: start.elapsed(),
    })
}

/// Pruned count with all rules on, single-threaded.
pub fn count_canonical_pruned(n: u32, k: u32) -> Result<EnumerationReport> {
    count_canonical_pruned_with(n, k, &SearchOptions::default())
}

pub fn count_canonical_pruned_with(
    n: u32,
    k: u32,
    opts: &SearchOptions,
) -> Result<EnumerationReport> {
    check_params(n, k)?;
    let start = Instant::now();
    let pool = k_subset_masks(n, k)?;
    let search = Search::new(pool.masks(), n, k, opts.rules);
    let (mu, visited) = if opts.jobs <= 1 {
        let mut mu = 0u64;
        let visited = search.run(&Node::root(n), &mut |_| mu += 1);
        (mu, visited)
    } else {
        let frontier = search.frontier(opts.jobs * 16);
        with_pool(opts.jobs, || {
            frontier
                .par_iter()
                .map(|node| {
                    let mut mu = 0u64;
                    let visited = search.run(node, &mut |_| mu += 1);
                    (mu, visited)
                })
                .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1))
        })?
    };
    Ok(EnumerationReport {
        n,
        k,
        mu,
        tuples_visited: visited,
        method: Method::Pruned,
        elapsed: start.elapsed(),
    })
}

/// Calls `sink` once per canonical element, in lexicographic order, and
/// returns how many there were.
pub fn stream_representatives<F>(n: u32, k: u32, mut sink: F) -> Result<u64>
where
    F: FnMut(&RowTuple),
{
    stream_representatives_while(n, k, |t| {
        sink(t);
        true
    })
}

/// Like [`stream_representatives`], but stops as soon as `sink` returns
/// false. The returned count includes the element that stopped the walk.
pub fn stream_representatives_while<F>(n: u32, k: u32, mut sink: F) -> Result<u64>
where
    F: FnMut(&RowTuple) -> bool,
{
    check_params(n, k)?;
    let pool = k_subset_masks(n, k)?;
    let search = Search::new(pool.masks(), n, k, PruneRules::ALL);
    let mut count = 0u64;
    search.run_while(&Node::root(n), &mut |rows| {
        count += 1;
        if sink(&RowTuple::from_rows_unchecked(n, rows.to_vec())) {
            ControlFlow::Continue(())
        } else {
            ControlFlow::Break(())
        }
    });
    Ok(count)
}

/// Collects every canonical element in lexicographic order. With more than
/// one job the search is split across threads and the pieces are joined back
/// in order, so the output does not depend on `opts.jobs`.
pub fn collect_representatives(n: u32, k: u32, opts: &SearchOptions) -> Result<Vec<RowTuple>> {
    check_params(n, k)?;
    let pool = k_subset_masks(n, k)?;
    let search = Search::new(pool.masks(), n, k, opts.rules);
    let gather = |node: &Node| {
        let mut out = Vec::new();
        search.run(node, &mut |rows| {
            out.push(RowTuple::from_rows_unchecked(n, rows.to_vec()))
        });
        out
    };
    if opts.jobs <= 1 {
        return Ok(gather(&Node::root(n)));
    }
    let frontier = search.frontier(opts.jobs * 16);
    let parts: Vec<Vec<RowTuple>> = with_pool(opts.jobs, || frontier.par_iter().map(gather).collect())?;
    Ok(parts.into_iter().flatten().collect())
}

fn with_pool<T: Send>(jobs: usize, op: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    Ok(pool.install(op))
}

const MAX_COLS: usize = MAX_SEARCH_N as usize;

/// A partial assignment of the top rows.
#[derive(Debug, Clone)]
struct Node {
    rows: Vec<BitMask>,
    /// Smallest pool index the next row may use.
    next: usize,
    /// Ones placed so far in each column, indexed by bit position.
    colsum: [u8; MAX_COLS],
    /// Bit `j` set while the columns at bits `j + 1` and `j` have equal
    /// prefixes, so their order is still undecided.
    tied: BitMask,
}

impl Node {
    fn root(n: u32) -> Node {
        Node {
            rows: Vec::with_capacity(n as usize),
            next: 0,
            colsum: [0; MAX_COLS],
            tied: full_mask(n - 1),
        }
    }
}

struct Search<'a> {
    pool: &'a [BitMask],
    n: usize,
    k: u8,
    rules: PruneRules,
}

impl<'a> Search<'a> {
    fn new(pool: &'a [BitMask], n: u32, k: u32, rules: PruneRules) -> Self {
        Search {
            pool,
            n: n as usize,
            k: k as u8,
            rules,
        }
    }

    /// Columns that cannot take another one, and columns that must take one
    /// in the next row, for a node at the given depth.
    fn gates(&self, colsum: &[u8; MAX_COLS], depth: usize) -> (BitMask, BitMask) {
        let remaining = (self.n - depth) as u8;
        let mut full = 0;
        let mut urgent = 0;
        for (bit, &s) in colsum.iter().enumerate().take(self.n) {
            if s >= self.k {
                full |= 1 << bit;
            }
            if self.k.saturating_sub(s) >= remaining {
                urgent |= 1 << bit;
            }
        }
        (full, urgent)
    }

    #[inline]
    fn admits(&self, x: BitMask, full: BitMask, urgent: BitMask, tied: BitMask) -> bool {
        if self.rules.column_overflow && x & full != 0 {
            return false;
        }
        if self.rules.column_deficit && urgent & !x != 0 {
            return false;
        }
        // a tied pair with a 1 on the left and a 0 on the right is decided the
        // wrong way
        if self.rules.column_order && (x >> 1) & !x & tied != 0 {
            return false;
        }
        true
    }

    #[inline]
    fn untie(x: BitMask, tied: BitMask) -> BitMask {
        tied & !(x & !(x >> 1))
    }

    fn is_leaf(&self, rows: &[BitMask]) -> bool {
        rows.len() == self.n
    }

    /// Surviving nodes at the shallowest depth with at least `target` of
    /// them (or at full depth), in lexicographic order.
    fn frontier(&self, target: usize) -> Vec<Node> {
        let mut level = vec![Node::root(self.n as u32)];
        while level.len() < target && level.iter().any(|nd| !self.is_leaf(&nd.rows)) {
            let mut next_level = Vec::new();
            for node in level {
                if self.is_leaf(&node.rows) {
                    next_level.push(node);
                    continue;
                }
                let (full, urgent) = self.gates(&node.colsum, node.rows.len());
                for idx in node.next..self.pool.len() {
                    let x = self.pool[idx];
                    if !self.admits(x, full, urgent, node.tied) {
                        continue;
                    }
                    let mut child = node.clone();
                    child.rows.push(x);
                    child.next = idx;
                    add_row(&mut child.colsum, x, self.n);
                    child.tied = Self::untie(x, node.tied);
                    next_level.push(child);
                }
            }
            level = next_level;
        }
        level
    }

    /// Runs the search below `node`, returning the number of complete tuples
    /// examined.
    fn run(&self, node: &Node, sink: &mut dyn FnMut(&[BitMask])) -> u64 {
        self.run_while(node, &mut |rows| {
            sink(rows);
            ControlFlow::Continue(())
        })
    }

    fn run_while(&self, node: &Node, sink: &mut Sink<'_>) -> u64 {
        let mut rows = node.rows.clone();
        let mut colsum = node.colsum;
        let mut visited = 0;
        let _ = self.descend(&mut rows, &mut colsum, node.next, node.tied, &mut visited, sink);
        visited
    }

    fn descend(
        &self,
        rows: &mut Vec<BitMask>,
        colsum: &mut [u8; MAX_COLS],
        start: usize,
        tied: BitMask,
        visited: &mut u64,
        sink: &mut Sink<'_>,
    ) -> ControlFlow<()> {
        if self.is_leaf(rows) {
            *visited += 1;
            if is_canonical_rows(rows, self.n as u32, self.k as u32) {
                return sink(rows);
            }
            return ControlFlow::Continue(());
        }
        let (full, urgent) = self.gates(colsum, rows.len());
        for idx in start..self.pool.len() {
            let x = self.pool[idx];
            if !self.admits(x, full, urgent, tied) {
                continue;
            }
            rows.push(x);
            add_row(colsum, x, self.n);
            let flow = self.descend(rows, colsum, idx, Self::untie(x, tied), visited, sink);
            remove_row(colsum, x, self.n);
            rows.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }
}

type Sink<'s> = dyn FnMut(&[BitMask]) -> ControlFlow<()> + 's;

#[inline]
fn add_row(colsum: &mut [u8; MAX_COLS], x: BitMask, n: usize) {
    for (bit, s) in colsum.iter_mut().enumerate().take(n) {
        *s += ((x >> bit) & 1) as u8;
    }
}

#[inline]
fn remove_row(colsum: &mut [u8; MAX_COLS], x: BitMask, n: usize) {
    for (bit, s) in colsum.iter_mut().enumerate().take(n) {
        *s -= ((x >> bit) & 1) as u8;
    }
}
